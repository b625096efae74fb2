//! Goodness, fullness and the constructions that enlarge a good set.
//!
//! A set is good exactly when its incidence vectors are linearly independent;
//! a dependent set always contains a loop, which is returned as the
//! certificate. A good set is full when it is maximal among good subsets of
//! the product of its own projections.

use std::ops::Deref;

use num::Zero;

use crate::error::{Error, Result};
use crate::linalg::{self, extract_circuit, CircuitVector, IncidenceSystem, IncrementalBasis};
use crate::model::{Coordinate, PinSet, Point, PointSet};

/// A loop inside a queried set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Loop(pub CircuitVector);

impl Deref for Loop {
    type Target = CircuitVector;

    fn deref(&self) -> &CircuitVector {
        &self.0
    }
}

impl Loop {
    /// Indices of the loop's points within `s`.
    pub fn indices_in(&self, s: &PointSet) -> Option<Vec<usize>> {
        self.points.iter().map(|p| s.index_of(p)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GoodnessVerdict {
    pub good: bool,
    pub certificate: Option<Loop>,
}

pub fn is_good(s: &PointSet) -> Result<GoodnessVerdict> {
    s.require_nonempty()?;
    if linalg::independent(s.points()) {
        return Ok(GoodnessVerdict {
            good: true,
            certificate: None,
        });
    }
    let circuit = extract_circuit(s.points())?;
    Ok(GoodnessVerdict {
        good: false,
        certificate: Some(Loop(circuit)),
    })
}

/// Goodness without building a certificate.
pub fn good(s: &PointSet) -> Result<bool> {
    s.require_nonempty()?;
    Ok(linalg::independent(s.points()))
}

pub(crate) fn require_good(s: &PointSet) -> Result<()> {
    if good(s)? {
        Ok(())
    } else {
        Err(Error::NotGood)
    }
}

/// Fast fullness test: good and `deficiency = n − 1`.
pub fn is_full(s: &PointSet) -> Result<bool> {
    s.require_nonempty()?;
    Ok(full_points(s.points()))
}

pub(crate) fn full_points(points: &[Point]) -> bool {
    !points.is_empty()
        && crate::model::deficiency_of(points) == points[0].arity() as i64 - 1
        && linalg::independent(points)
}

/// Fullness straight from the definition: good, and every point of
/// `Π_1 S × ⋯ × Π_n S` outside `S` has its incidence vector in the row span.
pub fn is_full_definitional(s: &PointSet) -> Result<bool> {
    if !good(s)? {
        return Ok(false);
    }
    let sys = IncidenceSystem::new(s);
    Ok(s
        .product_of_projections()
        .filter(|p| !s.contains(p))
        .all(|p| linalg::point_in_span(&sys, &p)))
}

/// Incremental independence over a fixed column set.
struct Grower {
    sys: IncidenceSystem,
    basis: IncrementalBasis,
}

impl Grower {
    /// Columns are the coordinates of `universe`; `start` seeds the basis.
    fn new(n: usize, universe: &[Point], start: &[Point]) -> Self {
        let sys = IncidenceSystem::from_points(n, universe);
        let mut basis = IncrementalBasis::new(sys.columns().len());
        for p in start {
            basis.insert(sys.vector_of(p).expect("start lies in the universe"));
        }
        Self { sys, basis }
    }

    fn try_add(&mut self, p: &Point) -> bool {
        let v = self.sys.vector_of(p).expect("candidate lies in the universe");
        self.basis.insert(v)
    }
}

/// Greedily adds points of `Ω` in lexicographic order while goodness holds.
/// The result is maximal in `Ω` and projects onto every axis entirely.
pub fn extend_to_maximal(s: &PointSet) -> Result<PointSet> {
    require_good(s)?;
    let space = s.space();
    let universe: Vec<Point> = space.points().collect();
    let mut grower = Grower::new(s.n(), &universe, s.points());
    let mut points = s.points().to_vec();
    for p in universe {
        if !s.contains(&p) && grower.try_add(&p) {
            points.push(p);
        }
    }
    s.with_points(points)
}

/// Lexicographic greedy closure inside `Π_1 S × ⋯ × Π_n S`: the result is
/// full, contains `S`, and has the same projections.
pub fn full_closure(s: &PointSet) -> Result<PointSet> {
    require_good(s)?;
    let n = s.n() as i64;
    let mut deficiency = s.deficiency()?;
    let mut grower = Grower::new(s.n(), s.points(), s.points());
    let mut points = s.points().to_vec();
    for p in s.product_of_projections() {
        if deficiency == n - 1 {
            break;
        }
        if !s.contains(&p) && grower.try_add(&p) {
            points.push(p);
            deficiency -= 1;
        }
    }
    let closure = s.with_points(points)?;
    if !is_full(&closure)? {
        return Err(Error::Internal("full closure is not full".into()));
    }
    Ok(closure)
}

/// Builds a full `F ⊇ S` with the same projections such that `F ∖ S` is also
/// full.
///
/// Seeds `F = S ∪ {b}` with the first addable point `b`. While `F` is not
/// full, takes a nonzero homogeneous solution on `F` that vanishes on the
/// first `n − 1` coordinates of `b`, picks the first coordinate `a_j` where it
/// is nonzero, and adds `b` with its `j`-th coordinate replaced by `a_j`.
/// Each step lowers the deficiency by exactly one.
pub fn full_split(s: &PointSet) -> Result<PointSet> {
    require_good(s)?;
    if is_full(s)? {
        return Err(Error::AlreadyFull);
    }
    let n = s.n();
    let target = n as i64 - 1;
    let start_deficiency = s.deficiency()?;

    let sys = IncidenceSystem::new(s);
    let seed = s
        .product_of_projections()
        .find(|p| !s.contains(p) && !linalg::point_in_span(&sys, p))
        .ok_or_else(|| Error::Internal("good non-full set without an addable point".into()))?;

    let mut f = s.points().to_vec();
    f.push(seed.clone());
    let pins = PinSet::base(&seed);
    let mut deficiency = start_deficiency - 1;

    while deficiency > target {
        let fsys = IncidenceSystem::from_points(n, &f);
        let kernel = linalg::column_kernel(&fsys, &pins)?;
        let witness = kernel
            .vectors
            .first()
            .ok_or_else(|| Error::Internal("non-full set with trivial pinned kernel".into()))?;
        let Coordinate { axis, value } = fsys
            .columns()
            .iter()
            .zip(witness)
            .find(|(_, x)| !x.is_zero())
            .map(|(c, _)| *c)
            .ok_or_else(|| Error::Internal("zero kernel vector".into()))?;
        let b = seed.with_coord(axis, value);
        if f.contains(&b) {
            return Err(Error::Internal(format!("split step revisits {b}")));
        }
        f.push(b);
        deficiency -= 1;
        if crate::model::deficiency_of(&f) != deficiency {
            return Err(Error::Internal("split step changed the projections".into()));
        }
    }

    let full = s.with_points(f)?;
    let rest = full.difference(s)?;
    let ok = is_full(&full)?
        && is_full(&rest)?
        && (0..n).all(|i| full.projection_values(i) == s.projection_values(i))
        && rest.len() as i64 == start_deficiency - target;
    if !ok {
        return Err(Error::Internal("split postconditions failed".into()));
    }
    Ok(full)
}

/// `F(S, B) = S ∪ R`, where `R` is the comb through `(b_1, …, b_n)`,
/// `b_i = min B_i`, with teeth `B_i` along axis `i`.
pub fn associated_full_set(s: &PointSet, boundary: &[Coordinate]) -> Result<PointSet> {
    let comb = comb(s, boundary)?;
    let f = s.union(&comb)?;
    let ok = is_full(&comb)?
        && is_full(&f)?
        && (0..s.n()).all(|i| f.projection_values(i) == s.projection_values(i));
    if !ok {
        return Err(Error::Internal(
            "associated set is not full; the boundary is inconsistent with the set".into(),
        ));
    }
    Ok(f)
}

/// The comb `R = ∪_i {b_1}×⋯×B_i×⋯×{b_n}` of a coordinate set meeting
/// every axis.
pub fn comb(s: &PointSet, boundary: &[Coordinate]) -> Result<PointSet> {
    let n = s.n();
    let mut per_axis: Vec<Vec<usize>> = vec![Vec::new(); n];
    for c in boundary {
        if c.axis >= n {
            return Err(Error::AxisOutOfRange { axis: c.axis, n });
        }
        per_axis[c.axis].push(c.value);
    }
    for (i, vals) in per_axis.iter_mut().enumerate() {
        if vals.is_empty() {
            return Err(Error::BoundaryMissesAxis(i));
        }
        vals.sort_unstable();
        vals.dedup();
    }
    let base = Point::new(per_axis.iter().map(|v| v[0]).collect());
    let mut points = vec![base.clone()];
    for (i, vals) in per_axis.iter().enumerate() {
        for &v in &vals[1..] {
            points.push(base.with_coord(i, v));
        }
    }
    s.with_points(points)
}
