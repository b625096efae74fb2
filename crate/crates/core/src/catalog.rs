//! Ready-made instances: the classical small examples of good, full and
//! non-good sets, each with optional right-hand side, pins and measure.

use std::sync::Arc;

use crate::model::{int, Axis, Coordinate, FunctionTable, PinSet, Point, PointSet, Space};
use crate::measures::FiniteMeasure;

/// A point set bundled with the data commands may need.
#[derive(Debug, Clone)]
pub struct Instance {
    pub name: String,
    pub set: PointSet,
    pub f: Option<FunctionTable>,
    pub pins: PinSet,
    pub measure: Option<FiniteMeasure>,
}

impl Instance {
    fn bare(name: &str, set: PointSet) -> Self {
        Self {
            name: name.to_string(),
            set,
            f: None,
            pins: PinSet::new(),
            measure: None,
        }
    }
}

fn binary_set(n: usize, rows: &[&[usize]]) -> PointSet {
    let space = Arc::new(Space::uniform(n, &["0", "1"]).expect("valid space"));
    let points = rows.iter().map(|r| Point::new(r.to_vec())).collect();
    PointSet::new(space, points).expect("valid set")
}

/// `{(1,0,1), (1,1,0), (0,1,1), (0,0,0)}`: full, every two points at
/// geodesic distance four.
pub fn t4() -> Instance {
    let set = binary_set(3, &[&[1, 0, 1], &[1, 1, 0], &[0, 1, 1], &[0, 0, 0]]);
    let f = FunctionTable::indicator(&set, &Point::new(vec![0, 0, 0]));
    Instance {
        f: Some(f),
        pins: PinSet::zeros([Coordinate::new(0, 1), Coordinate::new(1, 1)]),
        ..Instance::bare("t4", set)
    }
}

/// `{(0,0,0), (1,0,0), (0,1,0), (0,0,1)}`: good and full.
pub fn e5() -> Instance {
    Instance::bare(
        "e5",
        binary_set(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]),
    )
}

/// `e5` with `(1,1,1)` added: carries a five-point loop.
pub fn e5plus() -> Instance {
    let set = binary_set(3, &[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]);
    let measure = FiniteMeasure::uniform(set.clone()).ok();
    Instance {
        measure,
        ..Instance::bare("e5plus", set)
    }
}

/// `{(0,0), (1,0), (0,1)}`: unique once `u_1(0)` is fixed.
pub fn ex02() -> Instance {
    let set = binary_set(2, &[&[0, 0], &[1, 0], &[0, 1]]);
    let f = FunctionTable::new(&set, vec![int(1), int(2), int(3)]).expect("three values");
    Instance {
        f: Some(f),
        pins: PinSet::zeros([Coordinate::new(0, 0)]),
        ..Instance::bare("ex02", set)
    }
}

/// The staircase walking one unit at a time along x, then y, then z.
pub fn ex04() -> Instance {
    let space = Arc::new(Space::uniform(3, &["0", "1", "2"]).expect("valid space"));
    let mut p = vec![0, 0, 0];
    let mut points = vec![Point::new(p.clone())];
    for step in 0..6 {
        p[step % 3] += 1;
        points.push(Point::new(p.clone()));
    }
    let set = PointSet::new(space, points).expect("valid set");
    let f = FunctionTable::new(&set, (1..=7).map(int).collect()).expect("seven values");
    Instance {
        f: Some(f),
        pins: PinSet::zeros([Coordinate::new(0, 0), Coordinate::new(1, 0)]),
        ..Instance::bare("ex04", set)
    }
}

/// `{(1,2,3), (4,5,6), (7,8,9), (1,5,9)}`.
pub fn ex07() -> Instance {
    let space = Arc::new(
        Space::new(vec![
            Axis::new("x1", ["1", "4", "7"]).expect("axis"),
            Axis::new("x2", ["2", "5", "8"]).expect("axis"),
            Axis::new("x3", ["3", "6", "9"]).expect("axis"),
        ])
        .expect("valid space"),
    );
    let rows = [
        vec!["1", "2", "3"],
        vec!["4", "5", "6"],
        vec!["7", "8", "9"],
        vec!["1", "5", "9"],
    ];
    Instance::bare("ex07", PointSet::from_labels(space, &rows).expect("valid set"))
}

/// The cross `X_1×{a}×{a} ∪ {a}×X_2×{a} ∪ {a}×{a}×X_3` with `|X_i| = 3`
/// and `a` the value `0` on every axis.
pub fn ex08() -> Instance {
    let space = Arc::new(Space::uniform(3, &["0", "1", "2"]).expect("valid space"));
    let mut points = Vec::new();
    for axis in 0..3 {
        for v in 0..3 {
            let p = Point::new(vec![0; 3]).with_coord(axis, v);
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    Instance::bare("ex08", PointSet::new(space, points).expect("valid set"))
}

/// The depth-`k` prefix of `(x_0,y_0,z_0)`, then for `m = 1..k` the points
/// `(x_m,y_0,z_{m-1}), (x_0,y_m,z_{m-1}), (x_m,y_m,z_m)`, with `f` the
/// indicator of the first point and pins `u(x_0) = v(y_0) = 0`.
///
/// The axes also declare `x_{k+1}` and `y_{k+1}`, the fresh values the
/// pattern introduces next.
pub fn ex10(depth: usize) -> Instance {
    let labels = |p: &str, k: usize| (0..k).map(|i| format!("{p}{i}")).collect::<Vec<_>>();
    let space = Arc::new(
        Space::new(vec![
            Axis::new("x", labels("x", depth + 2)).expect("axis"),
            Axis::new("y", labels("y", depth + 2)).expect("axis"),
            Axis::new("z", labels("z", depth + 1)).expect("axis"),
        ])
        .expect("valid space"),
    );
    let mut points = vec![Point::new(vec![0, 0, 0])];
    for m in 1..=depth {
        points.push(Point::new(vec![m, 0, m - 1]));
        points.push(Point::new(vec![0, m, m - 1]));
        points.push(Point::new(vec![m, m, m]));
    }
    let set = PointSet::new(space, points).expect("valid set");
    let f = FunctionTable::indicator(&set, &set.points()[0]);
    Instance {
        f: Some(f),
        pins: PinSet::zeros([Coordinate::new(0, 0), Coordinate::new(1, 0)]),
        ..Instance::bare(&format!("ex10_depth{depth}"), set)
    }
}

/// `{(0,0), (0,1), (1,0), (1,1)}` with the uniform measure.
pub fn rectangle() -> Instance {
    let set = binary_set(2, &[&[0, 0], &[0, 1], &[1, 0], &[1, 1]]);
    let f = FunctionTable::indicator(&set, &set.points()[0]);
    let measure = FiniteMeasure::uniform(set.clone()).ok();
    Instance {
        f: Some(f),
        measure,
        ..Instance::bare("rectangle", set)
    }
}

/// Every shipped instance, in a fixed order.
pub fn all() -> Vec<Instance> {
    let mut out = vec![ex02(), ex04(), e5(), e5plus(), t4(), ex07(), ex08()];
    out.extend((1..=6).map(ex10));
    out.push(rectangle());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::goodness::{good, is_full};

    #[test]
    fn shapes() {
        let e = ex04();
        assert_eq!(e.set.len(), 7);
        assert_eq!(e.set.points()[6], Point::new(vec![2, 2, 2]));
        assert_eq!(ex08().set.len(), 7);
        let d6 = ex10(6);
        assert_eq!(d6.set.len(), 19);
        let sizes: Vec<usize> = d6.set.space().axes().iter().map(Axis::len).collect();
        assert_eq!(sizes, vec![8, 8, 7]);
    }

    #[test]
    fn goodness_of_the_catalog() {
        for inst in all() {
            let expect = !matches!(inst.name.as_str(), "e5plus" | "rectangle");
            assert_eq!(good(&inst.set).unwrap(), expect, "{}", inst.name);
        }
        for inst in [t4(), e5(), ex04(), ex08(), ex10(3)] {
            assert!(is_full(&inst.set).unwrap(), "{}", inst.name);
        }
    }
}
