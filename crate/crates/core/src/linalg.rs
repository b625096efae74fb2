//! Exact rational linear algebra over the point/coordinate incidence system.
//!
//! Rows of an [`IncidenceSystem`] are incidence vectors of points, columns are
//! the coordinates of `∪_i Π_i S` in canonical order. A decomposition
//! `u_1 + ⋯ + u_n = f` is a column vector `g` with `M g = f`, so goodness,
//! fullness and boundaries all reduce to exact rank and kernel questions here.

use std::collections::BTreeMap;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::model::{coordinates_of, Coordinate, Decomposition, FunctionTable, PinSet, Point, PointSet, Scalar};

/// Dense rational matrix, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    cols: usize,
    rows: Vec<Vec<Scalar>>,
}

/// Reduced row echelon form together with its pivot columns.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<usize>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            cols,
            rows: vec![vec![Scalar::zero(); cols]; rows],
        }
    }

    pub fn from_rows(cols: usize, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(Error::LengthMismatch {
                expected: cols,
                found: bad.len(),
            });
        }
        Ok(Self { cols, rows })
    }

    pub fn n_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn n_cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Scalar) {
        self.rows[i][j] = value;
    }

    pub fn push_row(&mut self, row: Vec<Scalar>) -> Result<()> {
        if row.len() != self.cols {
            return Err(Error::LengthMismatch {
                expected: self.cols,
                found: row.len(),
            });
        }
        self.rows.push(row);
        Ok(())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                if !v.is_zero() {
                    t.rows[j][i] = v.clone();
                }
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Scalar::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Gauss-Jordan elimination with first-nonzero pivoting.
    pub fn rref(&self) -> Echelon {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == m.len() {
                break;
            }
            let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for v in m[r][c..].iter_mut() {
                if !v.is_zero() {
                    *v *= &inv;
                }
            }
            let pivot_row = m[r].clone();
            for (i, row) in m.iter_mut().enumerate() {
                if i == r || row[c].is_zero() {
                    continue;
                }
                let factor = row[c].clone();
                for j in c..self.cols {
                    if !pivot_row[j].is_zero() {
                        row[j] -= &factor * &pivot_row[j];
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon {
            reduced: Matrix {
                cols: self.cols,
                rows: m,
            },
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of `{x : M x = 0}`, one vector per free column.
    pub fn kernel(&self) -> Vec<Vec<Scalar>> {
        let Echelon { reduced, pivots } = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = vec![Scalar::zero(); self.cols];
                v[f] = Scalar::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.rows[r][f].clone();
                }
                v
            })
            .collect()
    }

    /// Basis of `{y : yᵀ M = 0}`.
    pub fn left_kernel(&self) -> Vec<Vec<Scalar>> {
        self.transpose().kernel()
    }

    /// Exact inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        let k = self.rows.len();
        if k != self.cols {
            return None;
        }
        let mut aug = Matrix::zeros(k, 2 * k);
        for i in 0..k {
            for j in 0..k {
                aug.rows[i][j] = self.rows[i][j].clone();
            }
            aug.rows[i][k + i] = Scalar::one();
        }
        let Echelon { reduced, pivots } = aug.rref();
        if pivots.len() < k || pivots[k - 1] >= k {
            return None;
        }
        let rows = reduced
            .rows
            .into_iter()
            .map(|row| row[k..].to_vec())
            .collect();
        Some(Matrix { cols: k, rows })
    }
}

/// Row space built one vector at a time; stored rows are kept reduced
/// against every earlier pivot.
#[derive(Debug, Clone)]
pub struct IncrementalBasis {
    width: usize,
    rows: Vec<(usize, Vec<Scalar>)>,
}

impl IncrementalBasis {
    pub fn new(width: usize) -> Self {
        Self {
            width,
            rows: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<Scalar>) -> Vec<Scalar> {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x -= &factor * r;
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.reduce(v.to_vec()).iter().all(Zero::is_zero)
    }

    /// Adds `v` if it is independent of the current rows; reports whether it was.
    pub fn insert(&mut self, v: Vec<Scalar>) -> bool {
        debug_assert_eq!(v.len(), self.width);
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x *= &inv;
            }
        }
        self.rows.push((p, v));
        true
    }
}

/// The point-by-coordinate 0/1 system of a finite point list.
#[derive(Debug, Clone)]
pub struct IncidenceSystem {
    n: usize,
    rows: Vec<Point>,
    columns: Vec<Coordinate>,
    column_index: BTreeMap<Coordinate, usize>,
}

impl IncidenceSystem {
    pub fn new(s: &PointSet) -> Self {
        Self::from_points(s.n(), s.points())
    }

    pub fn from_points(n: usize, points: &[Point]) -> Self {
        let columns = coordinates_of(points);
        let column_index = columns.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        Self {
            n,
            rows: points.to_vec(),
            columns,
            column_index,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[Point] {
        &self.rows
    }

    pub fn columns(&self) -> &[Coordinate] {
        &self.columns
    }

    pub fn column_of(&self, c: Coordinate) -> Option<usize> {
        self.column_index.get(&c).copied()
    }

    /// Dense incidence vector over this system's columns; `None` if the
    /// point uses a coordinate outside the columns.
    pub fn vector_of(&self, p: &Point) -> Option<Vec<Scalar>> {
        let mut v = vec![Scalar::zero(); self.columns.len()];
        for c in p.incidence() {
            v[self.column_of(c)?] = Scalar::one();
        }
        Some(v)
    }

    pub fn matrix(&self) -> Matrix {
        let rows = self
            .rows
            .iter()
            .map(|p| self.vector_of(p).expect("row coordinates are columns"))
            .collect();
        Matrix {
            cols: self.columns.len(),
            rows,
        }
    }

    fn pinned_matrix(&self, pins: &PinSet) -> Result<Matrix> {
        let mut m = self.matrix();
        for (c, _) in pins.iter() {
            let j = self.column_of(c).ok_or(Error::PinOutsideSystem {
                axis: c.axis,
                value: c.value,
            })?;
            let mut row = vec![Scalar::zero(); self.columns.len()];
            row[j] = Scalar::one();
            m.rows.push(row);
        }
        Ok(m)
    }

    fn basis(&self) -> IncrementalBasis {
        let mut b = IncrementalBasis::new(self.columns.len());
        for p in &self.rows {
            b.insert(self.vector_of(p).expect("row coordinates are columns"));
        }
        b
    }

    fn decomposition_from(&self, values: &[Scalar]) -> Decomposition {
        let mut d = Decomposition::new(self.n);
        for (c, v) in self.columns.iter().zip(values) {
            d.set(*c, v.clone());
        }
        d
    }
}

/// Null space vectors indexed by the system's columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub columns: Vec<Coordinate>,
    pub vectors: Vec<Vec<Scalar>>,
}

impl KernelBasis {
    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Each basis vector as a per-axis decomposition.
    pub fn decompositions(&self, n: usize) -> Vec<Decomposition> {
        self.vectors
            .iter()
            .map(|v| {
                let mut d = Decomposition::new(n);
                for (c, x) in self.columns.iter().zip(v) {
                    d.set(*c, x.clone());
                }
                d
            })
            .collect()
    }
}

/// A minimal dependency among incidence vectors: a loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CircuitVector {
    pub points: Vec<Point>,
    pub coefficients: Vec<i64>,
}

impl CircuitVector {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The formal sum `Σ n_i x_i` vanishes on every coordinate.
    pub fn sum_vanishes(&self) -> bool {
        let mut totals: BTreeMap<Coordinate, i64> = BTreeMap::new();
        for (p, &k) in self.points.iter().zip(&self.coefficients) {
            for c in p.incidence() {
                *totals.entry(c).or_default() += k;
            }
        }
        totals.values().all(|&t| t == 0)
    }

    /// Every coefficient nonzero, gcd 1, first coefficient positive, the sum
    /// vanishes, and dropping any one point leaves an independent set.
    pub fn verify(&self) -> bool {
        if self.points.is_empty() || self.points.len() != self.coefficients.len() {
            return false;
        }
        if self.coefficients.contains(&0) || self.coefficients[0] < 0 {
            return false;
        }
        let g = self
            .coefficients
            .iter()
            .fold(0i64, |g, &k| g.gcd(&k));
        if g != 1 || !self.sum_vanishes() {
            return false;
        }
        (0..self.points.len()).all(|skip| {
            let rest: Vec<Point> = self
                .points
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, p)| p.clone())
                .collect();
            independent(&rest)
        })
    }
}

/// A row combination proving `M g = f` (with pins) has no solution:
/// `Σ y_p · row_p + Σ y_c · e_c = 0` while `Σ y_p f(p) + Σ y_c pin_c = residual ≠ 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub rows: Vec<(Point, Scalar)>,
    pub pins: Vec<(Coordinate, Scalar)>,
    pub residual: Scalar,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Unique(Decomposition),
    Underdetermined {
        decomposition: Decomposition,
        kernel: KernelBasis,
    },
    Inconsistent(Witness),
}

impl Solution {
    pub fn decomposition(&self) -> Option<&Decomposition> {
        match self {
            Solution::Unique(d) | Solution::Underdetermined { decomposition: d, .. } => Some(d),
            Solution::Inconsistent(_) => None,
        }
    }

    pub fn is_unique(&self) -> bool {
        matches!(self, Solution::Unique(_))
    }
}

pub fn rank(sys: &IncidenceSystem) -> usize {
    sys.basis().rank()
}

/// True iff the incidence vectors of `points` are linearly independent.
pub fn independent(points: &[Point]) -> bool {
    if points.is_empty() {
        return true;
    }
    let sys = IncidenceSystem::from_points(points[0].arity(), points);
    rank(&sys) == points.len()
}

/// Basis of `{g : M g = 0, g = 0 on pinned columns}`.
pub fn column_kernel(sys: &IncidenceSystem, pins: &PinSet) -> Result<KernelBasis> {
    let m = sys.pinned_matrix(pins)?;
    Ok(KernelBasis {
        columns: sys.columns.clone(),
        vectors: m.kernel(),
    })
}

/// Solves `Σ_i u_i(p_i) = rhs(p)` for every row `p`, with pins as extra
/// unit equations. Free variables are set to zero.
pub fn solve_pinned(sys: &IncidenceSystem, rhs: &FunctionTable, pins: &PinSet) -> Result<Solution> {
    let a = sys.pinned_matrix(pins)?;
    let mut b: Vec<Scalar> = sys
        .rows
        .iter()
        .map(|p| rhs.at(p).cloned())
        .collect::<Result<_>>()?;
    b.extend(pins.iter().map(|(_, v)| v.clone()));

    let cols = sys.columns.len();
    let mut aug = Matrix::zeros(0, cols + 1);
    for (row, rhs_v) in a.rows.iter().zip(&b) {
        let mut r = row.clone();
        r.push(rhs_v.clone());
        aug.rows.push(r);
    }
    let Echelon { reduced, pivots } = aug.rref();

    if pivots.last() == Some(&cols) {
        return Ok(Solution::Inconsistent(witness(sys, pins, &a, &b)?));
    }

    let mut x = vec![Scalar::zero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = reduced.rows[r][cols].clone();
    }
    let decomposition = sys.decomposition_from(&x);
    check_solution(sys, rhs, pins, &decomposition)?;

    if pivots.len() == cols {
        Ok(Solution::Unique(decomposition))
    } else {
        Ok(Solution::Underdetermined {
            decomposition,
            kernel: KernelBasis {
                columns: sys.columns.clone(),
                vectors: a.kernel(),
            },
        })
    }
}

fn check_solution(
    sys: &IncidenceSystem,
    rhs: &FunctionTable,
    pins: &PinSet,
    d: &Decomposition,
) -> Result<()> {
    for p in &sys.rows {
        if &d.evaluate(p)? != rhs.at(p)? {
            return Err(Error::Internal(format!(
                "solution does not reproduce the right-hand side at {p}"
            )));
        }
    }
    for (c, v) in pins.iter() {
        if d.get(c) != Some(v) {
            return Err(Error::Internal(format!("solution ignores the pin at {c:?}")));
        }
    }
    Ok(())
}

fn witness(sys: &IncidenceSystem, pins: &PinSet, a: &Matrix, b: &[Scalar]) -> Result<Witness> {
    let y = a
        .left_kernel()
        .into_iter()
        .find(|y| !dot(y, b).is_zero())
        .ok_or_else(|| Error::Internal("inconsistent system without a witness".into()))?;
    let y = integer_normalize(&y)
        .into_iter()
        .map(BigRational::from_integer)
        .collect::<Vec<_>>();
    let residual = dot(&y, b);
    let k = sys.rows.len();
    Ok(Witness {
        rows: sys
            .rows
            .iter()
            .cloned()
            .zip(y[..k].iter().cloned())
            .filter(|(_, v)| !v.is_zero())
            .collect(),
        pins: pins
            .coordinates()
            .into_iter()
            .zip(y[k..].iter().cloned())
            .filter(|(_, v)| !v.is_zero())
            .collect(),
        residual,
    })
}

fn dot(a: &[Scalar], b: &[Scalar]) -> Scalar {
    a.iter().zip(b).fold(Scalar::zero(), |acc, (x, y)| acc + x * y)
}

/// True iff `v` (indexed by the system's columns) is a combination of rows.
pub fn in_span(sys: &IncidenceSystem, v: &[Scalar]) -> Result<bool> {
    if v.len() != sys.columns.len() {
        return Err(Error::LengthMismatch {
            expected: sys.columns.len(),
            found: v.len(),
        });
    }
    Ok(sys.basis().contains(v))
}

/// Whether the incidence vector of `p` lies in the row span of `sys`.
/// A point using a coordinate outside the columns never does.
pub fn point_in_span(sys: &IncidenceSystem, p: &Point) -> bool {
    match sys.vector_of(p) {
        Some(v) => sys.basis().contains(&v),
        None => false,
    }
}

/// Scales a rational vector to coprime integers with the first nonzero
/// entry positive.
fn integer_normalize(v: &[Scalar]) -> Vec<BigInt> {
    let lcm = v
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(first) if first.is_negative() => -BigInt::one(),
        _ => BigInt::one(),
    };
    ints.into_iter().map(|x| x / &g * &sign).collect()
}

/// Finds a minimal dependent subset of `points` and its integer coefficients.
///
/// Points are scanned in the given order; a point is dropped whenever the
/// remaining support is still dependent. After one pass every remaining
/// point is essential, so the support is a circuit with a one-dimensional
/// dependency space.
pub fn extract_circuit(points: &[Point]) -> Result<CircuitVector> {
    if independent(points) {
        return Err(Error::Independent);
    }
    let mut support: Vec<Point> = points.to_vec();
    for p in points {
        let Some(pos) = support.iter().position(|q| q == p) else {
            continue;
        };
        let mut rest = support.clone();
        rest.remove(pos);
        if !rest.is_empty() && !independent(&rest) {
            support = rest;
        }
    }

    let sys = IncidenceSystem::from_points(support[0].arity(), &support);
    let deps = sys.matrix().left_kernel();
    if deps.len() != 1 {
        return Err(Error::Internal(format!(
            "circuit dependency space has dimension {}",
            deps.len()
        )));
    }
    let coefficients = integer_normalize(&deps[0])
        .into_iter()
        .map(|k| {
            k.to_i64()
                .ok_or_else(|| Error::Internal("circuit coefficient exceeds i64".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let circuit = CircuitVector {
        points: support,
        coefficients,
    };
    if !circuit.verify() {
        return Err(Error::Internal("extracted circuit failed verification".into()));
    }
    Ok(circuit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{int, Space};
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

    fn rectangle() -> PointSet {
        let space = Arc::new(
            Space::new(vec![
                crate::model::Axis::new("x", ["a", "c"]).unwrap(),
                crate::model::Axis::new("y", ["b", "d"]).unwrap(),
            ])
            .unwrap(),
        );
        PointSet::from_labels(
            space,
            &[vec!["a", "b"], vec!["a", "d"], vec!["c", "b"], vec!["c", "d"]],
        )
        .unwrap()
    }

    fn e5plus() -> PointSet {
        set(
            3,
            &["0", "1"],
            &[
                &["0", "0", "0"],
                &["1", "0", "0"],
                &["0", "1", "0"],
                &["0", "0", "1"],
                &["1", "1", "1"],
            ],
        )
    }

    fn diagonal() -> PointSet {
        set(3, &["0", "1"], &[&["0", "0", "0"], &["1", "1", "1"]])
    }

    #[test]
    fn ranks() {
        assert_eq!(rank(&IncidenceSystem::new(&t4())), 4);
        assert_eq!(rank(&IncidenceSystem::new(&rectangle())), 3);
        let single = set(2, &["0"], &[&["0", "0"]]);
        assert_eq!(rank(&IncidenceSystem::new(&single)), 1);
        // both elimination routes agree
        assert_eq!(IncidenceSystem::new(&rectangle()).matrix().rank(), 3);
    }

    #[test]
    fn column_kernels() {
        let s = t4();
        let sys = IncidenceSystem::new(&s);
        let pins = PinSet::zeros([Coordinate::new(0, 1), Coordinate::new(1, 1)]);
        assert!(column_kernel(&sys, &pins).unwrap().is_trivial());

        let k = column_kernel(&sys, &PinSet::new()).unwrap();
        assert_eq!(k.dim(), 2);
        for d in k.decompositions(3) {
            // constant per axis, constants sum to zero
            let consts: Vec<Scalar> = (0..3)
                .map(|i| {
                    let vals: Vec<&Scalar> = d.axis(i).values().collect();
                    assert!(vals.windows(2).all(|w| w[0] == w[1]));
                    vals[0].clone()
                })
                .collect();
            assert!(consts.iter().fold(Scalar::zero(), |a, c| a + c).is_zero());
        }

        let k = column_kernel(&IncidenceSystem::new(&diagonal()), &PinSet::new()).unwrap();
        assert_eq!(k.dim(), 4);
    }

    #[test]
    fn solve_unique_zero() {
        let s = t4();
        let sys = IncidenceSystem::new(&s);
        let pins = PinSet::zeros([Coordinate::new(0, 1), Coordinate::new(1, 1)]);
        match solve_pinned(&sys, &FunctionTable::zero(&s), &pins).unwrap() {
            Solution::Unique(d) => assert!(d.iter().all(|(_, v)| v.is_zero())),
            other => panic!("expected unique, got {other:?}"),
        }
    }

    #[test]
    fn solve_underdetermined() {
        let s = t4();
        let sys = IncidenceSystem::new(&s);
        match solve_pinned(&sys, &FunctionTable::zero(&s), &PinSet::new()).unwrap() {
            Solution::Underdetermined { kernel, .. } => assert_eq!(kernel.dim(), 2),
            other => panic!("expected underdetermined, got {other:?}"),
        }
    }

    #[test]
    fn solve_inconsistent_on_rectangle() {
        let s = rectangle();
        let sys = IncidenceSystem::new(&s);
        let f = FunctionTable::indicator(&s, &s.points()[0]);
        match solve_pinned(&sys, &f, &PinSet::new()).unwrap() {
            Solution::Inconsistent(w) => {
                assert_eq!(w.rows.len(), 4);
                assert!(w.pins.is_empty());
                assert!(!w.residual.is_zero());
                let coeffs: Vec<Scalar> = w.rows.iter().map(|(_, v)| v.clone()).collect();
                assert_eq!(coeffs, vec![int(1), int(-1), int(-1), int(1)]);
            }
            other => panic!("expected inconsistent, got {other:?}"),
        }
    }

    #[test]
    fn pin_outside_system_is_rejected() {
        let s = diagonal();
        let sys = IncidenceSystem::new(&s);
        let mut pins = PinSet::new();
        pins.insert(Coordinate::new(0, 7), int(0));
        assert!(matches!(
            solve_pinned(&sys, &FunctionTable::zero(&s), &pins),
            Err(Error::PinOutsideSystem { axis: 0, value: 7 })
        ));
    }

    #[test]
    fn span_membership() {
        let s = t4();
        let sys = IncidenceSystem::new(&s);
        let v = sys.vector_of(&Point::new(vec![1, 1, 1])).unwrap();
        assert!(in_span(&sys, &v).unwrap());
        let first = sys.vector_of(&s.points()[0]).unwrap();
        assert!(in_span(&sys, &first).unwrap());

        let d = diagonal();
        let sys = IncidenceSystem::new(&d);
        let v = sys.vector_of(&Point::new(vec![0, 0, 1])).unwrap();
        assert!(!in_span(&sys, &v).unwrap());
        assert!(matches!(
            in_span(&sys, &v[1..]),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn rectangle_circuit() {
        let c = extract_circuit(rectangle().points()).unwrap();
        assert_eq!(c.coefficients, vec![1, -1, -1, 1]);
        assert!(c.verify());
    }

    #[test]
    fn e5plus_circuit() {
        let s = e5plus();
        let c = extract_circuit(s.points()).unwrap();
        assert_eq!(c.points, s.points().to_vec());
        assert_eq!(c.coefficients, vec![2, -1, -1, -1, 1]);
    }

    #[test]
    fn circuit_is_pruned_to_the_rectangle() {
        // rectangle in the (x1, x2) plane at x3 = 0, padded with points
        // that each carry a fresh coordinate
        let s = set(
            3,
            &["0", "1", "2", "3"],
            &[
                &["2", "2", "1"],
                &["0", "0", "0"],
                &["3", "0", "2"],
                &["0", "1", "0"],
                &["1", "0", "0"],
                &["1", "1", "0"],
            ],
        );
        let c = extract_circuit(s.points()).unwrap();
        assert_eq!(c.points, s.points()[1..].iter().filter(|p| p.coord(2) == 0).cloned().collect::<Vec<_>>());
        assert_eq!(c.coefficients, vec![1, -1, -1, 1]);
    }

    #[test]
    fn independent_input_has_no_circuit() {
        assert!(matches!(
            extract_circuit(t4().points()),
            Err(Error::Independent)
        ));
    }

    #[test]
    fn inverse_roundtrip() {
        let m = Matrix::from_rows(
            2,
            vec![vec![int(1), int(1)], vec![int(0), int(1)]],
        )
        .unwrap();
        let inv = m.inverse().unwrap();
        assert_eq!(inv.row(0), &[int(1), int(-1)]);
        let singular = Matrix::from_rows(2, vec![vec![int(1), int(1)], vec![int(1), int(1)]]).unwrap();
        assert!(singular.inverse().is_none());
    }
}
