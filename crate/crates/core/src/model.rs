//! Spaces, points, point sets, functions on point sets and additive
//! decompositions.
//!
//! A [`Space`] is a finite product `X_1 × ⋯ × X_n` of labelled axes. Points
//! store value *indices* rather than labels, so the derived `Ord` on
//! [`Point`] is the canonical lexicographic order (axis-major, values in
//! declaration order). Coordinates are namespaced by their axis, which makes
//! the axes pairwise disjoint as sets of coordinates.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use num::{BigRational, Signed, Zero};

use crate::error::{Error, Result};

/// Exact rational scalar. Every value in this crate is computed exactly.
pub type Scalar = BigRational;

/// Parses `"p/q"`, `"p"` or `"-p/q"` into a [`Scalar`] in lowest terms.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let text = text.trim();
    text.parse::<BigRational>()
        .map_err(|e| Error::Parse(format!("invalid rational {text:?}: {e}")))
}

pub fn scalar(numer: i64, denom: i64) -> Scalar {
    BigRational::new(numer.into(), denom.into())
}

pub fn int(value: i64) -> Scalar {
    BigRational::from_integer(value.into())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Axis {
    name: String,
    values: Vec<String>,
    lookup: HashMap<String, usize>,
}

impl Axis {
    pub fn new<S: Into<String>, V: Into<String>>(
        name: S,
        values: impl IntoIterator<Item = V>,
    ) -> Result<Self> {
        let name = name.into();
        let values: Vec<String> = values.into_iter().map(Into::into).collect();
        if values.is_empty() {
            return Err(Error::InvalidSpace(format!("axis {name:?} has no values")));
        }
        let mut lookup = HashMap::with_capacity(values.len());
        for (i, v) in values.iter().enumerate() {
            if lookup.insert(v.clone(), i).is_some() {
                return Err(Error::InvalidSpace(format!(
                    "axis {name:?} repeats the value {v:?}"
                )));
            }
        }
        Ok(Self {
            name,
            values,
            lookup,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn values(&self) -> &[String] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn label(&self, value: usize) -> &str {
        &self.values[value]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.lookup.get(label).copied()
    }
}

/// The ambient product `Ω = X_1 × ⋯ × X_n`, `n ≥ 2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Space {
    axes: Vec<Axis>,
}

impl Space {
    pub fn new(axes: Vec<Axis>) -> Result<Self> {
        if axes.len() < 2 {
            return Err(Error::InvalidSpace(format!(
                "need at least 2 axes, got {}",
                axes.len()
            )));
        }
        let mut names = BTreeSet::new();
        for axis in &axes {
            if !names.insert(axis.name()) {
                return Err(Error::InvalidSpace(format!(
                    "duplicate axis name {:?}",
                    axis.name()
                )));
            }
        }
        Ok(Self { axes })
    }

    /// `n` axes named `x1..xn`, every axis carrying the same labels.
    pub fn uniform<V: AsRef<str>>(n: usize, labels: &[V]) -> Result<Self> {
        let axes = (1..=n)
            .map(|i| Axis::new(format!("x{i}"), labels.iter().map(|l| l.as_ref().to_owned())))
            .collect::<Result<Vec<_>>>()?;
        Self::new(axes)
    }

    pub fn n(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[Axis] {
        &self.axes
    }

    pub fn axis(&self, i: usize) -> Result<&Axis> {
        self.axes.get(i).ok_or(Error::AxisOutOfRange {
            axis: i,
            n: self.n(),
        })
    }

    pub fn axis_index(&self, name: &str) -> Option<usize> {
        self.axes.iter().position(|a| a.name() == name)
    }

    /// Builds a point from value labels, one per axis.
    pub fn point<S: AsRef<str>>(&self, labels: &[S]) -> Result<Point> {
        if labels.len() != self.n() {
            return Err(Error::InvalidPoint(format!(
                "expected {} coordinates, got {}",
                self.n(),
                labels.len()
            )));
        }
        let coords = labels
            .iter()
            .zip(&self.axes)
            .map(|(l, axis)| {
                axis.index_of(l.as_ref()).ok_or_else(|| {
                    Error::InvalidPoint(format!(
                        "value {:?} is not on axis {:?}",
                        l.as_ref(),
                        axis.name()
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Point(coords))
    }

    pub fn coordinate(&self, axis: usize, label: &str) -> Result<Coordinate> {
        let value = self.axis(axis)?.index_of(label).ok_or_else(|| {
            Error::InvalidPoint(format!("value {label:?} is not on axis {axis}"))
        })?;
        Ok(Coordinate { axis, value })
    }

    pub fn validate(&self, p: &Point) -> Result<()> {
        if p.arity() != self.n() {
            return Err(Error::InvalidPoint(format!(
                "arity {} does not match the space's {} axes",
                p.arity(),
                self.n()
            )));
        }
        for (i, &v) in p.coords().iter().enumerate() {
            if v >= self.axes[i].len() {
                return Err(Error::InvalidPoint(format!(
                    "value index {v} out of range on axis {i}"
                )));
            }
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.axes.iter().map(Axis::len).product()
    }

    /// Every point of `Ω` in lexicographic order.
    pub fn points(&self) -> impl Iterator<Item = Point> {
        product(self.axes.iter().map(|a| (0..a.len()).collect()).collect())
    }

    pub fn format_point(&self, p: &Point) -> String {
        let labels: Vec<&str> = p
            .coords()
            .iter()
            .zip(&self.axes)
            .map(|(&v, a)| a.label(v))
            .collect();
        format!("({})", labels.join(","))
    }

    pub fn format_coordinate(&self, c: &Coordinate) -> String {
        let axis = &self.axes[c.axis];
        format!("{}:{}", axis.name(), axis.label(c.value))
    }
}

/// An element of `Ω`, stored as one value index per axis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(Vec<usize>);

impl Point {
    pub fn new(coords: Vec<usize>) -> Self {
        Self(coords)
    }

    pub fn coords(&self) -> &[usize] {
        &self.0
    }

    pub fn coord(&self, axis: usize) -> usize {
        self.0[axis]
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn coordinate(&self, axis: usize) -> Coordinate {
        Coordinate {
            axis,
            value: self.0[axis],
        }
    }

    /// The sparse 0/1 incidence vector: exactly one coordinate per axis.
    pub fn incidence(&self) -> Vec<Coordinate> {
        (0..self.arity()).map(|i| self.coordinate(i)).collect()
    }

    /// A copy with the coordinate on `axis` replaced.
    pub fn with_coord(&self, axis: usize, value: usize) -> Self {
        let mut coords = self.0.clone();
        coords[axis] = value;
        Self(coords)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A value on a specific axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coordinate {
    pub axis: usize,
    pub value: usize,
}

impl Coordinate {
    pub fn new(axis: usize, value: usize) -> Self {
        Self { axis, value }
    }
}

/// Lexicographic odometer over a product of index lists.
pub(crate) fn product(factors: Vec<Vec<usize>>) -> impl Iterator<Item = Point> {
    let done = factors.iter().any(Vec::is_empty);
    let mut state: Option<Vec<usize>> = if done {
        None
    } else {
        Some(vec![0; factors.len()])
    };
    std::iter::from_fn(move || {
        let cur = state.as_mut()?;
        let out = Point(cur.iter().zip(&factors).map(|(&i, f)| f[i]).collect());
        let mut axis = factors.len();
        loop {
            if axis == 0 {
                state = None;
                break;
            }
            axis -= 1;
            cur[axis] += 1;
            if cur[axis] < factors[axis].len() {
                break;
            }
            cur[axis] = 0;
        }
        Some(out)
    })
}

/// A finite set of distinct points of a space, kept in insertion order.
///
/// Insertion order is the order used for point indices in reports and for
/// every deterministic scan in this crate.
#[derive(Debug, Clone)]
pub struct PointSet {
    space: Arc<Space>,
    points: Vec<Point>,
    index: BTreeMap<Point, usize>,
}

impl PartialEq for PointSet {
    fn eq(&self, other: &Self) -> bool {
        self.space == other.space && self.points == other.points
    }
}

impl Eq for PointSet {}

impl PointSet {
    pub fn new(space: Arc<Space>, points: Vec<Point>) -> Result<Self> {
        let mut index = BTreeMap::new();
        for (i, p) in points.iter().enumerate() {
            space.validate(p)?;
            if index.insert(p.clone(), i).is_some() {
                return Err(Error::DuplicatePoint(space.format_point(p)));
            }
        }
        Ok(Self {
            space,
            points,
            index,
        })
    }

    pub fn empty(space: Arc<Space>) -> Self {
        Self {
            space,
            points: Vec::new(),
            index: BTreeMap::new(),
        }
    }

    /// Builds a set from label tuples.
    pub fn from_labels<S: AsRef<str>>(space: Arc<Space>, rows: &[Vec<S>]) -> Result<Self> {
        let points = rows
            .iter()
            .map(|r| space.point(r))
            .collect::<Result<Vec<_>>>()?;
        Self::new(space, points)
    }

    /// Another set over the same space.
    pub fn with_points(&self, points: Vec<Point>) -> Result<Self> {
        Self::new(self.space.clone(), points)
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn shared_space(&self) -> Arc<Space> {
        self.space.clone()
    }

    pub fn n(&self) -> usize {
        self.space.n()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Point> {
        self.points.iter()
    }

    pub fn contains(&self, p: &Point) -> bool {
        self.index.contains_key(p)
    }

    pub fn index_of(&self, p: &Point) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn get(&self, i: usize) -> Option<&Point> {
        self.points.get(i)
    }

    pub fn require_nonempty(&self) -> Result<()> {
        if self.is_empty() {
            Err(Error::EmptySet)
        } else {
            Ok(())
        }
    }

    pub fn require_member(&self, p: &Point) -> Result<()> {
        if self.contains(p) {
            Ok(())
        } else {
            Err(Error::NotInSet(self.space.format_point(p)))
        }
    }

    /// `Π_i S`: the distinct `i`-th coordinates, in declaration order.
    pub fn projection(&self, axis: usize) -> Result<Vec<Coordinate>> {
        self.space.axis(axis)?;
        Ok(self
            .projection_values(axis)
            .into_iter()
            .map(|value| Coordinate { axis, value })
            .collect())
    }

    pub(crate) fn projection_values(&self, axis: usize) -> Vec<usize> {
        self.points
            .iter()
            .map(|p| p.coord(axis))
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// All projections as one sorted coordinate list (axis-major).
    pub fn coordinates(&self) -> Vec<Coordinate> {
        coordinates_of(&self.points)
    }

    /// `c(S) = Σ_i |Π_i S|`.
    pub fn coordinate_count(&self) -> usize {
        self.coordinates().len()
    }

    /// `c(S) − |S|`.
    pub fn deficiency(&self) -> Result<i64> {
        self.require_nonempty()?;
        Ok(deficiency_of(&self.points))
    }

    /// Points of `Π_1 S × ⋯ × Π_n S` in lexicographic order.
    pub fn product_of_projections(&self) -> impl Iterator<Item = Point> {
        product((0..self.n()).map(|i| self.projection_values(i)).collect())
    }

    pub fn union(&self, other: &PointSet) -> Result<Self> {
        let mut points = self.points.clone();
        points.extend(other.iter().filter(|p| !self.contains(p)).cloned());
        self.with_points(points)
    }

    pub fn difference(&self, other: &PointSet) -> Result<Self> {
        self.with_points(
            self.iter()
                .filter(|p| !other.contains(p))
                .cloned()
                .collect(),
        )
    }

    pub fn intersection(&self, other: &PointSet) -> Result<Self> {
        self.with_points(self.iter().filter(|p| other.contains(p)).cloned().collect())
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    /// The subset picked by point indices, kept in the given order.
    pub fn select(&self, indices: &[usize]) -> Result<Self> {
        let points = indices
            .iter()
            .map(|&i| {
                self.points.get(i).cloned().ok_or_else(|| {
                    Error::InvalidPoint(format!("point index {i} out of range"))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        self.with_points(points)
    }

    pub fn format(&self) -> String {
        let parts: Vec<String> = self.iter().map(|p| self.space.format_point(p)).collect();
        format!("{{{}}}", parts.join(", "))
    }
}

pub(crate) fn coordinates_of(points: &[Point]) -> Vec<Coordinate> {
    points
        .iter()
        .flat_map(Point::incidence)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect()
}

pub(crate) fn deficiency_of(points: &[Point]) -> i64 {
    coordinates_of(points).len() as i64 - points.len() as i64
}

/// A total function `S → Scalar`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionTable {
    values: BTreeMap<Point, Scalar>,
}

impl FunctionTable {
    /// Values in the set's point order.
    pub fn new(domain: &PointSet, values: Vec<Scalar>) -> Result<Self> {
        if values.len() != domain.len() {
            return Err(Error::LengthMismatch {
                expected: domain.len(),
                found: values.len(),
            });
        }
        Ok(Self {
            values: domain.iter().cloned().zip(values).collect(),
        })
    }

    pub fn from_fn(domain: &PointSet, mut f: impl FnMut(&Point) -> Scalar) -> Self {
        Self {
            values: domain.iter().map(|p| (p.clone(), f(p))).collect(),
        }
    }

    pub fn zero(domain: &PointSet) -> Self {
        Self::from_fn(domain, |_| Scalar::zero())
    }

    pub fn indicator(domain: &PointSet, at: &Point) -> Self {
        Self::from_fn(domain, |p| if p == at { int(1) } else { Scalar::zero() })
    }

    pub fn from_map(values: BTreeMap<Point, Scalar>) -> Self {
        Self { values }
    }

    pub fn get(&self, p: &Point) -> Option<&Scalar> {
        self.values.get(p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &Scalar)> {
        self.values.iter()
    }

    /// Checks that the table is defined on exactly `domain`.
    pub fn check_domain(&self, domain: &PointSet) -> Result<()> {
        if self.values.len() != domain.len() || !domain.iter().all(|p| self.values.contains_key(p)) {
            return Err(Error::InvalidPoint(
                "function table is not total on the point set".into(),
            ));
        }
        Ok(())
    }

    /// The value at `p`, or an error naming the point.
    pub fn at(&self, p: &Point) -> Result<&Scalar> {
        self.values
            .get(p)
            .ok_or_else(|| Error::NotInSet(p.to_string()))
    }

    pub fn restrict(&self, domain: &PointSet) -> Result<Self> {
        let values = domain
            .iter()
            .map(|p| Ok((p.clone(), self.at(p)?.clone())))
            .collect::<Result<_>>()?;
        Ok(Self { values })
    }

    /// `alpha * self + beta * other` on a shared domain.
    pub fn combine(&self, alpha: &Scalar, other: &Self, beta: &Scalar) -> Result<Self> {
        let values = self
            .values
            .iter()
            .map(|(p, v)| Ok((p.clone(), alpha * v + beta * other.at(p)?)))
            .collect::<Result<_>>()?;
        Ok(Self { values })
    }
}

/// Per-axis functions `u_i` on coordinate values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    axes: Vec<BTreeMap<usize, Scalar>>,
}

impl Decomposition {
    pub fn new(n: usize) -> Self {
        Self {
            axes: vec![BTreeMap::new(); n],
        }
    }

    /// All-zero decomposition on the coordinates of `s`.
    pub fn zero_on(s: &PointSet) -> Self {
        let mut d = Self::new(s.n());
        for c in s.coordinates() {
            d.set(c, Scalar::zero());
        }
        d
    }

    pub fn n(&self) -> usize {
        self.axes.len()
    }

    pub fn set(&mut self, c: Coordinate, value: Scalar) {
        self.axes[c.axis].insert(c.value, value);
    }

    pub fn get(&self, c: Coordinate) -> Option<&Scalar> {
        self.axes.get(c.axis)?.get(&c.value)
    }

    pub fn axis(&self, i: usize) -> &BTreeMap<usize, Scalar> {
        &self.axes[i]
    }

    pub fn iter(&self) -> impl Iterator<Item = (Coordinate, &Scalar)> {
        self.axes.iter().enumerate().flat_map(|(axis, m)| {
            m.iter()
                .map(move |(&value, s)| (Coordinate { axis, value }, s))
        })
    }

    pub fn len(&self) -> usize {
        self.axes.iter().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn covers(&self, s: &PointSet) -> bool {
        s.coordinates().into_iter().all(|c| self.get(c).is_some())
    }

    /// `Σ_i u_i(p_i)`.
    pub fn evaluate(&self, p: &Point) -> Result<Scalar> {
        if p.arity() != self.n() {
            return Err(Error::InvalidPoint(format!(
                "arity {} does not match decomposition arity {}",
                p.arity(),
                self.n()
            )));
        }
        p.incidence().into_iter().try_fold(Scalar::zero(), |acc, c| {
            self.get(c)
                .map(|v| acc + v)
                .ok_or(Error::MissingCoordinate {
                    axis: c.axis,
                    value: c.value,
                })
        })
    }

    /// Keeps only the coordinates of `s`.
    pub fn restrict(&self, s: &PointSet) -> Self {
        let mut d = Self::new(self.n());
        for c in s.coordinates() {
            if let Some(v) = self.get(c) {
                d.set(c, v.clone());
            }
        }
        d
    }

    /// `alpha * self + beta * other`; a coordinate missing on one side
    /// counts as zero there.
    pub fn combine(&self, alpha: &Scalar, other: &Self, beta: &Scalar) -> Self {
        let mut d = Self::new(self.n());
        for (c, v) in self.iter() {
            d.set(c, alpha * v);
        }
        for (c, v) in other.iter() {
            let prev = d.get(c).cloned().unwrap_or_else(Scalar::zero);
            d.set(c, prev + beta * v);
        }
        d
    }

    pub fn max_abs(&self) -> Scalar {
        self.iter()
            .map(|(_, v)| v.abs())
            .max()
            .unwrap_or_else(Scalar::zero)
    }
}

/// Prescribed values on selected coordinates.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PinSet {
    pins: BTreeMap<Coordinate, Scalar>,
}

impl PinSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn zeros(coords: impl IntoIterator<Item = Coordinate>) -> Self {
        Self {
            pins: coords.into_iter().map(|c| (c, Scalar::zero())).collect(),
        }
    }

    /// Zero pins on the first `n − 1` coordinates of `p`.
    pub fn base(p: &Point) -> Self {
        Self::zeros((0..p.arity() - 1).map(|i| p.coordinate(i)))
    }

    pub fn insert(&mut self, c: Coordinate, value: Scalar) -> Option<Scalar> {
        self.pins.insert(c, value)
    }

    pub fn get(&self, c: Coordinate) -> Option<&Scalar> {
        self.pins.get(&c)
    }

    pub fn remove(&mut self, c: Coordinate) -> Option<Scalar> {
        self.pins.remove(&c)
    }

    pub fn len(&self) -> usize {
        self.pins.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pins.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Coordinate, &Scalar)> {
        self.pins.iter().map(|(c, v)| (*c, v))
    }

    pub fn coordinates(&self) -> Vec<Coordinate> {
        self.pins.keys().copied().collect()
    }
}

impl FromIterator<(Coordinate, Scalar)> for PinSet {
    fn from_iter<T: IntoIterator<Item = (Coordinate, Scalar)>>(iter: T) -> Self {
        Self {
            pins: iter.into_iter().collect(),
        }
    }
}
