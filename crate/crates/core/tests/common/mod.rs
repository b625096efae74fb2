//! Independent oracles and random instance generators shared by the
//! integration tests and the acceptance harness. Nothing here calls the
//! library's linear algebra: ranks use fraction-free integer elimination.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::sync::Arc;

use goodset::model::{Axis, Coordinate, Point, PointSet, Scalar, Space};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank of an integer matrix by Bareiss elimination.
pub fn bareiss_rank(mut a: Vec<Vec<i128>>) -> usize {
    let m = a.len();
    if m == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        if r == m {
            break;
        }
        let Some(p) = (r..m).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, p);
        for i in r + 1..m {
            for j in c + 1..cols {
                let v = a[r][c] * a[i][j] - a[i][c] * a[r][j];
                debug_assert_eq!(v % prev, 0);
                a[i][j] = v / prev;
            }
            a[i][c] = 0;
        }
        prev = a[r][c];
        r += 1;
    }
    r
}

/// Column offset of every axis in the full `Ω` coordinate list.
fn offsets(space: &Space) -> Vec<usize> {
    let mut out = Vec::with_capacity(space.n());
    let mut acc = 0;
    for a in space.axes() {
        out.push(acc);
        acc += a.len();
    }
    out
}

pub fn incidence_rows(space: &Space, points: &[Point]) -> Vec<Vec<i128>> {
    let off = offsets(space);
    let width: usize = space.axes().iter().map(Axis::len).sum();
    points
        .iter()
        .map(|p| {
            let mut row = vec![0; width];
            for (i, &v) in p.coords().iter().enumerate() {
                row[off[i] + v] = 1;
            }
            row
        })
        .collect()
}

pub fn rank_of(space: &Space, points: &[Point]) -> usize {
    bareiss_rank(incidence_rows(space, points))
}

pub fn good_oracle(space: &Space, points: &[Point]) -> bool {
    rank_of(space, points) == points.len()
}

pub fn projections(points: &[Point], n: usize) -> Vec<BTreeSet<usize>> {
    let mut out = vec![BTreeSet::new(); n];
    for p in points {
        for (i, &v) in p.coords().iter().enumerate() {
            out[i].insert(v);
        }
    }
    out
}

/// Every point of `Π_1 × ⋯ × Π_n`.
pub fn product_of_projections(points: &[Point], n: usize) -> Vec<Point> {
    let mut acc: Vec<Vec<usize>> = vec![vec![]];
    for proj in projections(points, n) {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                proj.iter().map(move |&v| {
                    let mut p = prefix.clone();
                    p.push(v);
                    p
                })
            })
            .collect();
    }
    acc.into_iter().map(Point::new).collect()
}

/// Good and no candidate of the product of projections adds rank.
pub fn full_oracle(space: &Space, points: &[Point]) -> bool {
    if points.is_empty() || !good_oracle(space, points) {
        return false;
    }
    let r = points.len();
    product_of_projections(points, space.n())
        .into_iter()
        .filter(|c| !points.contains(c))
        .all(|c| {
            let mut with = points.to_vec();
            with.push(c);
            rank_of(space, &with) == r
        })
}

/// All full subsets of `s` as bitmasks (|S| ≤ 16).
pub fn full_subsets(s: &PointSet) -> Vec<u32> {
    let pts = s.points();
    assert!(pts.len() <= 16);
    (1u32..(1 << pts.len()))
        .filter(|&mask| full_oracle(s.space(), &select(pts, mask)))
        .collect()
}

pub fn select(pts: &[Point], mask: u32) -> Vec<Point> {
    pts.iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, p)| p.clone())
        .collect()
}

pub fn distinct_kinds(a: &[Point], b: &[Point], n: usize) -> usize {
    let (pa, pb) = (projections(a, n), projections(b, n));
    (0..n).filter(|&i| !pa[i].is_disjoint(&pb[i])).count()
}

pub fn space(n: usize, sizes: &[usize]) -> Arc<Space> {
    let axes = (0..n)
        .map(|i| Axis::new(format!("x{}", i + 1), (0..sizes[i]).map(|v| v.to_string())).unwrap())
        .collect();
    Arc::new(Space::new(axes).unwrap())
}

pub fn all_points(space: &Space) -> Vec<Point> {
    space.points().collect()
}

/// A random set of at most `max_points` distinct points in a random space.
pub fn random_set(rng: &mut ChaCha8Rng, ns: &[usize], max_values: usize, max_points: usize) -> PointSet {
    let n = *ns.choose(rng).unwrap();
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_values)).collect();
    let sp = space(n, &sizes);
    let mut omega = all_points(&sp);
    omega.shuffle(rng);
    let k = rng.gen_range(1..=max_points.min(omega.len()));
    omega.truncate(k);
    PointSet::new(sp, omega).unwrap()
}

/// A random good set: a shuffled walk through `Ω`, keeping independent points.
pub fn random_good_set(rng: &mut ChaCha8Rng, ns: &[usize], max_values: usize, max_points: usize) -> PointSet {
    let n = *ns.choose(rng).unwrap();
    let sizes: Vec<usize> = (0..n).map(|_| rng.gen_range(1..=max_values)).collect();
    let sp = space(n, &sizes);
    let mut omega = all_points(&sp);
    omega.shuffle(rng);
    let target = rng.gen_range(1..=max_points);
    let mut pts: Vec<Point> = Vec::new();
    for p in omega {
        if pts.len() == target {
            break;
        }
        pts.push(p);
        if !good_oracle(&sp, &pts) {
            pts.pop();
        }
    }
    PointSet::new(sp, pts).unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::new(rng.gen_range(-9i64..=9).into(), rng.gen_range(1i64..=5).into())
}

/// Connected components of the bipartite graph with one edge per point
/// (n = 2), as sorted point-index lists ordered by least index.
pub fn graph_components(s: &PointSet) -> Vec<Vec<usize>> {
    let pts = s.points();
    let mut label: Vec<Option<usize>> = vec![None; pts.len()];
    let mut out = Vec::new();
    for start in 0..pts.len() {
        if label[start].is_some() {
            continue;
        }
        let id = out.len();
        let mut comp = vec![start];
        label[start] = Some(id);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..pts.len() {
                if label[j].is_none()
                    && (pts[i].coord(0) == pts[j].coord(0) || pts[i].coord(1) == pts[j].coord(1))
                {
                    label[j] = Some(id);
                    comp.push(j);
                    stack.push(j);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// A forest has `|E| = |V| − #components`.
pub fn acyclic(s: &PointSet) -> bool {
    let comps = graph_components(s).len();
    let vertices: usize = (0..2).map(|i| projections(s.points(), 2)[i].len()).sum();
    s.len() + comps == vertices
}

/// Whether the stacked system of `s`'s incidence rows and unit rows at `b`
/// is square and of full rank over the coordinates of `s`.
pub fn boundary_oracle(s: &PointSet, b: &[Coordinate]) -> bool {
    let coords: Vec<Coordinate> = s.coordinates();
    let index: BTreeMap<Coordinate, usize> = coords.iter().enumerate().map(|(i, c)| (*c, i)).collect();
    if b.iter().any(|c| !index.contains_key(c)) || s.len() + b.len() != coords.len() {
        return false;
    }
    let mut rows: Vec<Vec<i128>> = s
        .iter()
        .map(|p| {
            let mut r = vec![0; coords.len()];
            for c in p.incidence() {
                r[index[&c]] = 1;
            }
            r
        })
        .collect();
    for c in b {
        let mut r = vec![0; coords.len()];
        r[index[c]] = 1;
        rows.push(r);
    }
    bareiss_rank(rows) == coords.len()
}
