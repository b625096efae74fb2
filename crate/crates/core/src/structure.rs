//! Relatedness, geodesics, related components, the `E_i` relations and
//! boundary sets of a good set.
//!
//! Two points of a good set are related when some full subset contains both;
//! the smallest such subset is their geodesic, and it is unique. Geodesics are
//! found by exhaustive search (iterative deepening on cardinality), which is
//! exponential in the worst case and intended for small sets.

use num::{One, Zero};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};
use crate::goodness::{full_points, is_full, require_good};
use crate::linalg::{self, IncidenceSystem, Matrix};
use crate::model::{Coordinate, PinSet, Point, PointSet, Scalar};

/// The unique smallest full subset containing two related points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Geodesic {
    pub from: Point,
    pub to: Point,
    pub points: PointSet,
}

impl Geodesic {
    pub fn length(&self) -> usize {
        self.points.len()
    }
}

/// Per-axis coordinate counts, for incremental deficiency.
struct CoordinateCounts {
    counts: Vec<Vec<u32>>,
    distinct: i64,
    points: i64,
}

impl CoordinateCounts {
    fn new(s: &PointSet) -> Self {
        Self {
            counts: s.space().axes().iter().map(|a| vec![0; a.len()]).collect(),
            distinct: 0,
            points: 0,
        }
    }

    fn add(&mut self, p: &Point) {
        for (axis, &v) in p.coords().iter().enumerate() {
            if self.counts[axis][v] == 0 {
                self.distinct += 1;
            }
            self.counts[axis][v] += 1;
        }
        self.points += 1;
    }

    fn remove(&mut self, p: &Point) {
        for (axis, &v) in p.coords().iter().enumerate() {
            self.counts[axis][v] -= 1;
            if self.counts[axis][v] == 0 {
                self.distinct -= 1;
            }
        }
        self.points -= 1;
    }

    fn deficiency(&self) -> i64 {
        self.distinct - self.points
    }
}

/// Points of `s` reachable from `x` through shared coordinates. A full set
/// is always coordinate-connected (two separated parts would each bring
/// deficiency at least `n − 1`), so paths from `x` live inside this pool.
fn coordinate_connected(s: &PointSet, x: &Point) -> Vec<Point> {
    let pts = s.points();
    let mut seen = vec![false; pts.len()];
    let start = s.index_of(x).expect("member");
    seen[start] = true;
    let mut stack = vec![start];
    while let Some(i) = stack.pop() {
        for (j, q) in pts.iter().enumerate() {
            if !seen[j] && (0..s.n()).any(|a| q.coord(a) == pts[i].coord(a)) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    pts.iter()
        .zip(seen)
        .filter(|(_, s)| *s)
        .map(|(p, _)| p.clone())
        .collect()
}

/// All full subsets of size `2 + need` that contain `x`, `y` and `need`
/// points of `others`.
fn full_subsets_of_size(
    s: &PointSet,
    x: &Point,
    y: &Point,
    others: &[Point],
    need: usize,
) -> Vec<Vec<Point>> {
    let target = s.n() as i64 - 1;
    let mut counts = CoordinateCounts::new(s);
    counts.add(x);
    counts.add(y);
    let mut chosen: Vec<usize> = Vec::with_capacity(need);
    let mut found = Vec::new();

    fn walk(
        others: &[Point],
        start: usize,
        need: usize,
        target: i64,
        counts: &mut CoordinateCounts,
        chosen: &mut Vec<usize>,
        found: &mut Vec<Vec<usize>>,
    ) {
        let remaining = need - chosen.len();
        // each further point lowers the deficiency by at most one
        if counts.deficiency() - remaining as i64 > target {
            return;
        }
        if remaining == 0 {
            if counts.deficiency() == target {
                found.push(chosen.clone());
            }
            return;
        }
        for i in start..others.len() {
            if others.len() - i < remaining {
                break;
            }
            counts.add(&others[i]);
            chosen.push(i);
            walk(others, i + 1, need, target, counts, chosen, found);
            chosen.pop();
            counts.remove(&others[i]);
        }
    }

    let mut picks = Vec::new();
    walk(others, 0, need, target, &mut counts, &mut chosen, &mut picks);
    for pick in picks {
        let mut pts = vec![x.clone(), y.clone()];
        pts.extend(pick.into_iter().map(|i| others[i].clone()));
        found.push(pts);
    }
    found
}

/// The geodesic joining `x` and `y`, or `None` when they are unrelated.
///
/// Cardinalities are tried in increasing order; at the first cardinality
/// that admits a full subset containing both points, every such subset is
/// enumerated and exactly one must exist.
pub fn geodesic(s: &PointSet, x: &Point, y: &Point) -> Result<Option<Geodesic>> {
    require_good(s)?;
    s.require_member(x)?;
    s.require_member(y)?;
    if x == y {
        return Ok(Some(Geodesic {
            from: x.clone(),
            to: y.clone(),
            points: s.with_points(vec![x.clone()])?,
        }));
    }
    let pool = coordinate_connected(s, x);
    if !pool.contains(y) {
        return Ok(None);
    }
    let others: Vec<Point> = pool.into_iter().filter(|p| p != x && p != y).collect();
    for need in 0..=others.len() {
        let found = full_subsets_of_size(s, x, y, &others, need);
        match found.len() {
            0 => continue,
            1 => {
                let chosen = found.into_iter().next().expect("one subset");
                // report in the set's own order
                let points = s
                    .iter()
                    .filter(|p| chosen.contains(p))
                    .cloned()
                    .collect();
                return Ok(Some(Geodesic {
                    from: x.clone(),
                    to: y.clone(),
                    points: s.with_points(points)?,
                }));
            }
            k => {
                return Err(Error::Internal(format!(
                    "{k} distinct minimal full subsets join {} and {}",
                    s.space().format_point(x),
                    s.space().format_point(y)
                )))
            }
        }
    }
    Ok(None)
}

pub fn related(s: &PointSet, x: &Point, y: &Point) -> Result<bool> {
    Ok(geodesic(s, x, y)?.is_some())
}

/// A partition of a set into related components.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComponentPartition {
    pub components: Vec<PointSet>,
    /// Component index of every point, in the set's point order.
    pub assignment: Vec<usize>,
}

impl ComponentPartition {
    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// First point of each component, the canonical cross-section.
    pub fn cross_section(&self) -> Vec<Point> {
        self.components.iter().map(|c| c.points()[0].clone()).collect()
    }

    /// Pairs of components with the number of coordinate kinds they share.
    pub fn shared_kinds(&self) -> Vec<(usize, usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.components.len() {
            for b in a + 1..self.components.len() {
                let (ca, cb) = (&self.components[a], &self.components[b]);
                let kinds = (0..ca.n())
                    .filter(|&i| {
                        let pb = cb.projection_values(i);
                        ca.projection_values(i).iter().any(|v| pb.contains(v))
                    })
                    .count();
                out.push((a, b, kinds));
            }
        }
        out
    }
}

/// Related components by pairwise geodesic search and transitive closure.
pub fn related_components(s: &PointSet) -> Result<ComponentPartition> {
    require_good(s)?;
    let pts = s.points();
    let m = pts.len();
    let mut rel = vec![vec![false; m]; m];
    let mut dsu = DisjointSets::new(m);
    for i in 0..m {
        rel[i][i] = true;
        for j in i + 1..m {
            if related(s, &pts[i], &pts[j])? {
                rel[i][j] = true;
                rel[j][i] = true;
                dsu.union(i, j);
            }
        }
    }

    let groups = dsu.groups();
    let mut assignment = vec![0; m];
    let mut components = Vec::with_capacity(groups.len());
    for (k, group) in groups.iter().enumerate() {
        for &i in group {
            assignment[i] = k;
            if let Some(&j) = group.iter().find(|&&j| !rel[i][j]) {
                return Err(Error::Internal(format!(
                    "relatedness is not transitive between points {i} and {j}"
                )));
            }
        }
        let comp = s.select(group)?;
        if !is_full(&comp)? {
            return Err(Error::Internal(format!("related component {k} is not full")));
        }
        components.push(comp);
    }

    let partition = ComponentPartition {
        components,
        assignment,
    };
    let n = s.n();
    if let Some((a, b, k)) = partition
        .shared_kinds()
        .into_iter()
        .find(|&(_, _, k)| k + 2 > n)
    {
        return Err(Error::Internal(format!(
            "components {a} and {b} share {k} coordinate kinds"
        )));
    }
    Ok(partition)
}

/// For every axis, the partition of `Π_i S` into `E_i` classes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EiClasses {
    /// `classes[i]` lists the classes on axis `i`; each class is a sorted list
    /// of value indices, classes ordered by their least value.
    pub classes: Vec<Vec<Vec<usize>>>,
}

impl EiClasses {
    pub fn class_of(&self, c: Coordinate) -> Option<usize> {
        self.classes
            .get(c.axis)?
            .iter()
            .position(|cls| cls.binary_search(&c.value).is_ok())
    }

    pub fn total(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }
}

/// `E_i` classes from an already computed partition: values are joined when
/// they occur in the same related component; chains of overlapping
/// components then follow from transitivity of union-find.
pub fn ei_classes_from(s: &PointSet, partition: &ComponentPartition) -> EiClasses {
    let classes = (0..s.n())
        .map(|axis| {
            let values = s.projection_values(axis);
            let local = |v: usize| values.binary_search(&v).expect("projected value");
            let mut dsu = DisjointSets::new(values.len());
            for comp in &partition.components {
                let vals = comp.projection_values(axis);
                for w in vals.windows(2) {
                    dsu.union(local(w[0]), local(w[1]));
                }
            }
            dsu.groups()
                .into_iter()
                .map(|g| g.into_iter().map(|i| values[i]).collect())
                .collect()
        })
        .collect();
    EiClasses { classes }
}

pub fn ei_classes(s: &PointSet) -> Result<EiClasses> {
    let partition = related_components(s)?;
    Ok(ei_classes_from(s, &partition))
}

/// The generator/relation construction of a boundary set.
#[derive(Debug, Clone)]
pub struct BoundaryConstruction {
    pub components: ComponentPartition,
    pub cross_section: Vec<Point>,
    pub classes: EiClasses,
    /// One generator per `E_i` class, as `(axis, class index)`, axis-major.
    pub generators: Vec<(usize, usize)>,
    /// One row per component: the sum of its `n` class variables is zero.
    pub relations: Matrix,
    /// Generator indices eliminated as pivots.
    pub pivots: Vec<usize>,
    /// Generator indices of the free columns: the chosen basis.
    pub basis: Vec<usize>,
    /// The least coordinate of every basis class.
    pub boundary: Vec<Coordinate>,
}

/// Builds a boundary of a good set and verifies it.
pub fn boundary(s: &PointSet) -> Result<BoundaryConstruction> {
    boundary_with(s, true)
}

/// As [`boundary`]; `verify = false` skips the final solver check.
pub fn boundary_with(s: &PointSet, verify: bool) -> Result<BoundaryConstruction> {
    require_good(s)?;
    let components = related_components(s)?;
    let classes = ei_classes_from(s, &components);
    let cross_section = components.cross_section();

    let generators: Vec<(usize, usize)> = classes
        .classes
        .iter()
        .enumerate()
        .flat_map(|(axis, cls)| (0..cls.len()).map(move |k| (axis, k)))
        .collect();
    let column = |c: Coordinate| {
        let k = classes.class_of(c).expect("coordinate of S has a class");
        generators
            .iter()
            .position(|&g| g == (c.axis, k))
            .expect("generator exists")
    };

    let mut relations = Matrix::zeros(0, generators.len());
    for x in &cross_section {
        let mut row = vec![Scalar::zero(); generators.len()];
        for c in x.incidence() {
            row[column(c)] += Scalar::one();
        }
        relations.push_row(row)?;
    }

    let pivots = relations.rref().pivots;
    let basis: Vec<usize> = (0..generators.len())
        .filter(|j| !pivots.contains(j))
        .collect();
    let boundary: Vec<Coordinate> = basis
        .iter()
        .map(|&g| {
            let (axis, k) = generators[g];
            Coordinate::new(axis, classes.classes[axis][k][0])
        })
        .collect();

    let construction = BoundaryConstruction {
        components,
        cross_section,
        classes,
        generators,
        relations,
        pivots,
        basis,
        boundary,
    };
    if verify && !is_boundary(s, &construction.boundary)? {
        return Err(Error::Internal(
            "constructed coordinate set is not a boundary".into(),
        ));
    }
    Ok(construction)
}

/// `b` is a boundary of the good set `s`: for all values on `b` and every
/// `f`, the pinned equation has exactly one solution. Equivalently the
/// incidence rows stacked with unit rows at `b` form an invertible matrix.
pub fn is_boundary(s: &PointSet, b: &[Coordinate]) -> Result<bool> {
    require_good(s)?;
    let sys = IncidenceSystem::new(s);
    if b.iter().any(|&c| sys.column_of(c).is_none()) {
        return Ok(false);
    }
    let pins = PinSet::zeros(b.iter().copied());
    if pins.len() != b.len() || s.len() + b.len() != sys.columns().len() {
        return Ok(false);
    }
    Ok(linalg::column_kernel(&sys, &pins)?.is_trivial())
}

/// Whether `points` is a full subset (helper for property checks).
pub fn is_full_subset(points: &[Point]) -> bool {
    full_points(points)
}
