//! Exact solvers for `u_1(x_1) + ⋯ + u_n(x_n) = f(x)` on a good set.
//!
//! Four routes are offered: direct pinned elimination, the geodesic-matrix
//! procedure for a single related component, its componentwise extension
//! when components share no coordinate, and the boundary route that works
//! for every good set.

use std::fmt;

use num::Zero;

use crate::error::{Error, Result};
use crate::goodness::{associated_full_set, require_good};
use crate::linalg::{self, IncidenceSystem, KernelBasis, Matrix, Solution, Witness};
use crate::model::{Coordinate, Decomposition, FunctionTable, PinSet, Point, PointSet, Scalar};
use crate::structure::{geodesic, is_boundary, related_components, Geodesic};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Method {
    Direct,
    Geodesic,
    Componentwise,
    Boundary,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::Geodesic => "geodesic",
            Method::Componentwise => "componentwise",
            Method::Boundary => "boundary",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "direct" => Ok(Method::Direct),
            "geodesic" => Ok(Method::Geodesic),
            "componentwise" => Ok(Method::Componentwise),
            "boundary" => Ok(Method::Boundary),
            other => Err(Error::Parse(format!("unknown method {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Unique,
    Underdetermined,
    Inconsistent,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Unique => "unique",
            Verdict::Underdetermined => "underdetermined",
            Verdict::Inconsistent => "inconsistent",
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Diagnostics {
    /// Longest geodesic used, for the geodesic-based methods.
    pub max_geodesic_length: Option<usize>,
    /// Largest absolute value in the returned decomposition.
    pub max_abs_value: Scalar,
    /// Which route the boundary method took.
    pub route: Option<&'static str>,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub method: Method,
    pub verdict: Verdict,
    pub decomposition: Option<Decomposition>,
    pub kernel: Option<KernelBasis>,
    pub witness: Option<Witness>,
    pub diagnostics: Diagnostics,
}

impl SolveReport {
    fn from_solution(method: Method, solution: Solution) -> Self {
        let (verdict, decomposition, kernel, witness) = match solution {
            Solution::Unique(d) => (Verdict::Unique, Some(d), None, None),
            Solution::Underdetermined {
                decomposition,
                kernel,
            } => (Verdict::Underdetermined, Some(decomposition), Some(kernel), None),
            Solution::Inconsistent(w) => (Verdict::Inconsistent, None, None, Some(w)),
        };
        let max_abs_value = decomposition
            .as_ref()
            .map(Decomposition::max_abs)
            .unwrap_or_else(Scalar::zero);
        Self {
            method,
            verdict,
            decomposition,
            kernel,
            witness,
            diagnostics: Diagnostics {
                max_abs_value,
                ..Diagnostics::default()
            },
        }
    }

    fn unique(method: Method, d: Decomposition, max_geodesic_length: Option<usize>) -> Self {
        let max_abs_value = d.max_abs();
        Self {
            method,
            verdict: Verdict::Unique,
            decomposition: Some(d),
            kernel: None,
            witness: None,
            diagnostics: Diagnostics {
                max_geodesic_length,
                max_abs_value,
                route: None,
            },
        }
    }
}

/// The square 0/1 matrix of a geodesic against its coordinates, with the
/// base point's first `n − 1` coordinates removed.
#[derive(Debug, Clone)]
pub struct GeodesicMatrix {
    /// Base point first, then the rest in canonical order.
    pub points: Vec<Point>,
    pub columns: Vec<Coordinate>,
    pub matrix: Matrix,
    pinned: Vec<Coordinate>,
}

impl GeodesicMatrix {
    pub fn new(g: &Geodesic, base: &Point) -> Result<Self> {
        if !g.points.contains(base) {
            return Err(Error::NotInSet(g.points.space().format_point(base)));
        }
        let n = g.points.n();
        let pinned: Vec<Coordinate> = (0..n - 1).map(|i| base.coordinate(i)).collect();
        let mut points = vec![base.clone()];
        let mut rest: Vec<Point> = g.points.iter().filter(|p| *p != base).cloned().collect();
        rest.sort();
        points.extend(rest);
        let columns: Vec<Coordinate> = g
            .points
            .coordinates()
            .into_iter()
            .filter(|c| !pinned.contains(c))
            .collect();
        let mut matrix = Matrix::zeros(0, columns.len());
        for p in &points {
            let row = columns
                .iter()
                .map(|c| {
                    if p.coord(c.axis) == c.value {
                        Scalar::from_integer(1.into())
                    } else {
                        Scalar::zero()
                    }
                })
                .collect();
            matrix.push_row(row)?;
        }
        Ok(Self {
            points,
            columns,
            matrix,
            pinned,
        })
    }

    pub fn is_square(&self) -> bool {
        self.matrix.n_rows() == self.matrix.n_cols()
    }

    pub fn inverse(&self) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::Internal(format!(
                "geodesic matrix is {}x{}",
                self.matrix.n_rows(),
                self.matrix.n_cols()
            )));
        }
        self.matrix
            .inverse()
            .ok_or_else(|| Error::Internal("geodesic matrix is singular".into()))
    }

    /// `g = M⁻¹ f|_G`, returned with zeros at the pinned coordinates.
    pub fn solve(&self, f: &FunctionTable) -> Result<Decomposition> {
        let rhs: Vec<Scalar> = self
            .points
            .iter()
            .map(|p| f.at(p).cloned())
            .collect::<Result<_>>()?;
        let g = self.inverse()?.mul_vec(&rhs);
        if self.matrix.mul_vec(&g) != rhs {
            return Err(Error::Internal("geodesic solve does not reproduce f".into()));
        }
        let mut d = Decomposition::new(self.points[0].arity());
        for c in &self.pinned {
            d.set(*c, Scalar::zero());
        }
        for (c, v) in self.columns.iter().zip(g) {
            d.set(*c, v);
        }
        Ok(d)
    }
}

fn check_reproduces(s: &PointSet, f: &FunctionTable, d: &Decomposition) -> Result<()> {
    for p in s.iter() {
        if &d.evaluate(p)? != f.at(p)? {
            return Err(Error::Internal(format!(
                "decomposition does not reproduce f at {}",
                s.space().format_point(p)
            )));
        }
    }
    Ok(())
}

fn merge(into: &mut Decomposition, from: &Decomposition) -> Result<()> {
    for (c, v) in from.iter() {
        match into.get(c) {
            Some(old) if old != v => {
                return Err(Error::Internal(format!(
                    "conflicting values at (axis {}, value {})",
                    c.axis, c.value
                )))
            }
            Some(_) => {}
            None => into.set(c, v.clone()),
        }
    }
    Ok(())
}

/// Pinned elimination on the whole incidence system.
pub fn solve_direct(s: &PointSet, f: &FunctionTable, pins: &PinSet) -> Result<SolveReport> {
    s.require_nonempty()?;
    f.check_domain(s)?;
    let sys = IncidenceSystem::new(s);
    let solution = linalg::solve_pinned(&sys, f, pins)?;
    Ok(SolveReport::from_solution(Method::Direct, solution))
}

/// Geodesic-matrix procedure. Every point must be related to `base`; the
/// result is pinned to zero at the base's first `n − 1` coordinates.
pub fn solve_via_geodesics(s: &PointSet, f: &FunctionTable, base: &Point) -> Result<SolveReport> {
    require_good(s)?;
    s.require_member(base)?;
    f.check_domain(s)?;
    let mut d = Decomposition::new(s.n());
    let mut longest = 0;
    for y in s.iter() {
        let g = geodesic(s, base, y)?.ok_or_else(|| {
            Error::NotRelated(format!(
                "{} and {}",
                s.space().format_point(base),
                s.space().format_point(y)
            ))
        })?;
        longest = longest.max(g.length());
        let m = GeodesicMatrix::new(&g, base)?;
        merge(&mut d, &m.solve(&f.restrict(&g.points)?)?)?;
    }
    check_reproduces(s, f, &d)?;
    Ok(SolveReport::unique(Method::Geodesic, d, Some(longest)))
}

/// One geodesic solve per related component. `bases` gives one base per
/// component in partition order; `None` uses each component's first point.
pub fn solve_componentwise(
    s: &PointSet,
    f: &FunctionTable,
    bases: Option<&[Point]>,
) -> Result<SolveReport> {
    require_good(s)?;
    f.check_domain(s)?;
    let partition = related_components(s)?;
    let comps = &partition.components;
    for a in 0..comps.len() {
        let ca = comps[a].coordinates();
        for (b, cb) in comps.iter().enumerate().skip(a + 1) {
            if cb.coordinates().iter().any(|c| ca.binary_search(c).is_ok()) {
                return Err(Error::SharedCoordinate(a, b));
            }
        }
    }
    let bases: Vec<Point> = match bases {
        Some(b) => {
            if b.len() != comps.len() {
                return Err(Error::LengthMismatch {
                    expected: comps.len(),
                    found: b.len(),
                });
            }
            b.to_vec()
        }
        None => partition.cross_section(),
    };
    let mut d = Decomposition::new(s.n());
    let mut longest = 0;
    for (comp, base) in comps.iter().zip(&bases) {
        let part = solve_via_geodesics(comp, &f.restrict(comp)?, base)?;
        longest = longest.max(part.diagnostics.max_geodesic_length.unwrap_or(0));
        merge(&mut d, part.decomposition.as_ref().expect("unique solve"))?;
    }
    check_reproduces(s, f, &d)?;
    Ok(SolveReport::unique(Method::Componentwise, d, Some(longest)))
}

/// Solve with prescribed values on a boundary of `s`, for instance the one
/// built by [`boundary`](crate::structure::boundary).
///
/// When the boundary meets every axis, `f` is extended to the associated
/// full set `F = S ∪ R` and solved there. On a comb point every coordinate
/// is a boundary coordinate, so `f` is set to the sum of the prescribed
/// values there; this is zero for zero boundary data and is the only
/// extension compatible with non-zero data. Otherwise the boundary pins are
/// imposed directly.
pub fn solve_with_boundary(s: &PointSet, f: &FunctionTable, values: &PinSet) -> Result<SolveReport> {
    require_good(s)?;
    f.check_domain(s)?;
    let b = values.coordinates();
    if !is_boundary(s, &b)? {
        return Err(Error::NotABoundary);
    }

    let meets_every_axis = (0..s.n()).all(|i| b.iter().any(|c| c.axis == i));
    let (solution, route) = if meets_every_axis {
        let full = associated_full_set(s, &b)?;
        let extended = FunctionTable::from_fn(&full, |p| match f.get(p) {
            Some(v) => v.clone(),
            None => p
                .incidence()
                .into_iter()
                .map(|c| values.get(c).cloned().expect("comb coordinates lie in B"))
                .sum(),
        });
        let sys = IncidenceSystem::new(&full);
        let sol = linalg::solve_pinned(&sys, &extended, values)?;
        let sol = match sol {
            Solution::Unique(d) => Solution::Unique(d.restrict(s)),
            other => {
                return Err(Error::Internal(format!(
                    "associated full set solve is not unique: {other:?}"
                )))
            }
        };
        (sol, "associated-full-set")
    } else {
        let sys = IncidenceSystem::new(s);
        (linalg::solve_pinned(&sys, f, values)?, "direct")
    };
    if !solution.is_unique() {
        return Err(Error::Internal("boundary pins did not give a unique solution".into()));
    }
    let d = solution.decomposition().expect("unique").clone();
    check_reproduces(s, f, &d)?;
    let mut report = SolveReport::unique(Method::Boundary, d, None);
    report.diagnostics.route = Some(route);
    Ok(report)
}

/// Finite-scale boundedness diagnostics of a single related component.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundDiagnostics {
    pub base: Point,
    pub max_geodesic_length: usize,
    /// Mean over all points of the geodesic length from the base.
    pub mean_geodesic_length: Scalar,
    /// Largest `|u_i(a)|` over indicator right-hand sides, pinned to zero at
    /// the base's first `n − 1` coordinates.
    pub max_abs_value: Scalar,
    /// The indicator attaining it (first in set order).
    pub argmax: Point,
}

pub fn bound_diagnostics(s: &PointSet) -> Result<BoundDiagnostics> {
    require_good(s)?;
    let components = related_components(s)?.len();
    if components != 1 {
        return Err(Error::MultipleComponents(components));
    }
    let base = s.points()[0].clone();
    let mut lengths = Vec::with_capacity(s.len());
    for y in s.iter() {
        let g = geodesic(s, &base, y)?.expect("single component");
        lengths.push(g.length());
    }
    let total: usize = lengths.iter().sum();

    let sys = IncidenceSystem::new(s);
    let pins = PinSet::base(&base);
    let mut max_abs_value = Scalar::zero();
    let mut argmax = base.clone();
    for p in s.iter() {
        let f = FunctionTable::indicator(s, p);
        let sol = linalg::solve_pinned(&sys, &f, &pins)?;
        let d = sol
            .decomposition()
            .ok_or_else(|| Error::Internal("good set gave an inconsistent solve".into()))?;
        let m = d.max_abs();
        if m > max_abs_value {
            max_abs_value = m;
            argmax = p.clone();
        }
    }
    Ok(BoundDiagnostics {
        base,
        max_geodesic_length: lengths.into_iter().max().unwrap_or(0),
        mean_geodesic_length: Scalar::new(total.into(), s.len().into()),
        max_abs_value,
        argmax,
    })
}

/// Whether `d` is pinned to `pins` and reproduces `f` on `s`.
pub fn verifies(s: &PointSet, f: &FunctionTable, pins: &PinSet, d: &Decomposition) -> bool {
    pins.iter().all(|(c, v)| d.get(c) == Some(v)) && check_reproduces(s, f, d).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{int, Axis, Space};
    use crate::structure::boundary;
    use std::sync::Arc;

    fn set(n: usize, labels: &[&str], rows: &[&[&str]]) -> PointSet {
        let space = Arc::new(Space::uniform(n, labels).unwrap());
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        PointSet::from_labels(space, &rows).unwrap()
    }

    fn t4() -> PointSet {
        set(
            3,
            &["0", "1"],
            &[&["1", "0", "1"], &["1", "1", "0"], &["0", "1", "1"], &["0", "0", "0"]],
        )
    }

    fn ex10(depth: usize) -> (PointSet, Vec<Coordinate>) {
        let names = |p: &str, k: usize| (0..k).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
        let space = Arc::new(
            Space::new(vec![
                Axis::new("x", names("x", depth + 1)).unwrap(),
                Axis::new("y", names("y", depth + 1)).unwrap(),
                Axis::new("z", names("z", depth + 1)).unwrap(),
            ])
            .unwrap(),
        );
        let mut pts = vec![Point::new(vec![0, 0, 0])];
        for m in 1..=depth {
            pts.push(Point::new(vec![m, 0, m - 1]));
            pts.push(Point::new(vec![0, m, m - 1]));
            pts.push(Point::new(vec![m, m, m]));
        }
        let s = PointSet::new(space, pts).unwrap();
        (s, vec![Coordinate::new(0, 0), Coordinate::new(1, 0)])
    }

    #[test]
    fn ex10_depth2_direct() {
        let (s, pins) = ex10(2);
        let f = FunctionTable::indicator(&s, &s.points()[0]);
        let r = solve_direct(&s, &f, &PinSet::zeros(pins)).unwrap();
        assert_eq!(r.verdict, Verdict::Unique);
        let d = r.decomposition.unwrap();
        assert_eq!(d.get(Coordinate::new(2, 0)), Some(&int(1)));
        assert_eq!(d.get(Coordinate::new(0, 1)), Some(&int(-1)));
        assert_eq!(d.get(Coordinate::new(1, 1)), Some(&int(-1)));
        assert_eq!(d.get(Coordinate::new(2, 1)), Some(&int(2)));
        assert_eq!(d.get(Coordinate::new(0, 2)), Some(&int(-2)));
        assert_eq!(d.get(Coordinate::new(1, 2)), Some(&int(-2)));
        assert_eq!(d.get(Coordinate::new(2, 2)), Some(&int(4)));
    }

    #[test]
    fn t4_zero_rhs_is_trivial() {
        let s = t4();
        let pins = PinSet::zeros([Coordinate::new(0, 1), Coordinate::new(1, 1)]);
        let r = solve_direct(&s, &FunctionTable::zero(&s), &pins).unwrap();
        assert_eq!(r.verdict, Verdict::Unique);
        assert!(r.decomposition.unwrap().iter().all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn geodesic_method_matches_direct_on_t4() {
        let s = t4();
        let f = FunctionTable::indicator(&s, &Point::new(vec![0, 0, 0]));
        let base = Point::new(vec![1, 1, 0]);
        let via = solve_via_geodesics(&s, &f, &base).unwrap();
        let direct = solve_direct(&s, &f, &PinSet::base(&base)).unwrap();
        assert_eq!(via.decomposition, direct.decomposition);
        assert_eq!(via.diagnostics.max_geodesic_length, Some(4));
    }

    #[test]
    fn geodesic_matrices_are_square_and_invertible() {
        let s = t4();
        let base = s.points()[0].clone();
        for y in s.iter() {
            let g = geodesic(&s, &base, y).unwrap().unwrap();
            let m = GeodesicMatrix::new(&g, &base).unwrap();
            assert!(m.is_square());
            assert!(m.inverse().is_ok());
        }
    }

    #[test]
    fn staircase_is_unique_with_two_pins() {
        let rows: &[&[&str]] = &[
            &["0", "0", "0"],
            &["1", "0", "0"],
            &["1", "1", "0"],
            &["1", "1", "1"],
            &["2", "1", "1"],
            &["2", "2", "1"],
            &["2", "2", "2"],
        ];
        let s = set(3, &["0", "1", "2"], rows);
        let f = FunctionTable::from_fn(&s, |p| int(p.coords().iter().sum::<usize>() as i64 * 3 - 1));
        let pins = PinSet::zeros([Coordinate::new(0, 0), Coordinate::new(1, 0)]);
        let direct = solve_direct(&s, &f, &pins).unwrap();
        assert_eq!(direct.verdict, Verdict::Unique);
        let via = solve_via_geodesics(&s, &f, &s.points()[0]).unwrap();
        assert_eq!(via.decomposition, direct.decomposition);
    }

    #[test]
    fn componentwise_on_the_diagonal() {
        let s = set(3, &["0", "1"], &[&["0", "0", "0"], &["1", "1", "1"]]);
        let f = FunctionTable::new(&s, vec![int(5), int(7)]).unwrap();
        let r = solve_componentwise(&s, &f, None).unwrap();
        let d = r.decomposition.unwrap();
        assert_eq!(d.get(Coordinate::new(2, 0)), Some(&int(5)));
        assert_eq!(d.get(Coordinate::new(2, 1)), Some(&int(7)));
        assert_eq!(d.get(Coordinate::new(0, 1)), Some(&int(0)));
    }

    #[test]
    fn componentwise_rejects_shared_coordinates() {
        let space = Arc::new(
            Space::new(vec![
                Axis::new("x", ["a"]).unwrap(),
                Axis::new("y", ["b", "b'"]).unwrap(),
                Axis::new("z", ["c", "c'"]).unwrap(),
            ])
            .unwrap(),
        );
        let s = PointSet::from_labels(space, &[vec!["a", "b", "c"], vec!["a", "b'", "c'"]]).unwrap();
        let f = FunctionTable::zero(&s);
        assert!(matches!(
            solve_componentwise(&s, &f, None),
            Err(Error::SharedCoordinate(0, 1))
        ));
        // the boundary route still works
        let b = boundary(&s).unwrap().boundary;
        let r = solve_with_boundary(&s, &f, &PinSet::zeros(b)).unwrap();
        assert_eq!(r.verdict, Verdict::Unique);
    }

    #[test]
    fn boundary_solve_on_the_diagonal() {
        let s = set(3, &["0", "1"], &[&["0", "0", "0"], &["1", "1", "1"]]);
        let f = FunctionTable::indicator(&s, &s.points()[0]);
        let b = boundary(&s).unwrap().boundary;
        let r = solve_with_boundary(&s, &f, &PinSet::zeros(b)).unwrap();
        assert_eq!(r.diagnostics.route, Some("direct"));
        let d = r.decomposition.unwrap();
        assert_eq!(d.get(Coordinate::new(0, 0)), Some(&int(1)));
        assert_eq!(d.get(Coordinate::new(0, 1)), Some(&int(0)));
        assert!(d.iter().filter(|(c, _)| c.axis > 0).all(|(_, v)| v.is_zero()));
    }

    #[test]
    fn boundary_solve_via_associated_full_set() {
        // good, not full, boundary meets every axis
        let s = set(
            2,
            &["0", "1", "2", "3"],
            &[&["0", "0"], &["1", "1"], &["2", "2"]],
        );
        // the constructed boundary sits on axis 2 only; this one meets both
        let b = [Coordinate::new(0, 0), Coordinate::new(1, 1), Coordinate::new(1, 2)];
        assert!(is_boundary(&s, &b).unwrap());
        let pins: PinSet = b.iter().enumerate().map(|(i, c)| (*c, int(i as i64 + 3))).collect();
        let f = FunctionTable::new(&s, vec![int(1), int(-2), int(10)]).unwrap();
        let r = solve_with_boundary(&s, &f, &pins).unwrap();
        assert_eq!(r.diagnostics.route, Some("associated-full-set"));
        let direct = solve_direct(&s, &f, &pins).unwrap();
        assert_eq!(direct.verdict, Verdict::Unique);
        assert_eq!(r.decomposition, direct.decomposition);
    }

    #[test]
    fn boundary_solve_rejects_other_pins() {
        let s = t4();
        // two pins on one axis leave the gauge along the other two free
        let pins = PinSet::zeros([Coordinate::new(0, 0), Coordinate::new(0, 1)]);
        assert!(matches!(
            solve_with_boundary(&s, &FunctionTable::zero(&s), &pins),
            Err(Error::NotABoundary)
        ));
    }

    #[test]
    fn diagnostics() {
        let d = bound_diagnostics(&t4()).unwrap();
        assert_eq!(d.max_geodesic_length, 4);
        let (s, _) = ex10(5);
        let d = bound_diagnostics(&s).unwrap();
        assert_eq!(d.max_abs_value, int(32));
        assert_eq!(d.argmax, s.points()[0]);
        let edge = set(2, &["a"], &[&["a", "a"]]);
        let d = bound_diagnostics(&edge).unwrap();
        assert_eq!((d.max_geodesic_length, d.max_abs_value), (1, int(1)));
    }

    #[test]
    fn solution_map_is_linear() {
        let s = t4();
        let pins = PinSet::base(&s.points()[0]);
        let f = FunctionTable::new(&s, vec![int(1), int(2), int(3), int(4)]).unwrap();
        let g = FunctionTable::new(&s, vec![int(-1), int(0), int(5), int(1)]).unwrap();
        let (a, b) = (int(3), Scalar::new(1.into(), 2.into()));
        let solve = |h: &FunctionTable| solve_direct(&s, h, &pins).unwrap().decomposition.unwrap();
        let lhs = solve(&f.combine(&a, &g, &b).unwrap());
        assert_eq!(lhs, solve(&f).combine(&a, &solve(&g), &b));
    }
}
