//! Finite probability measures, their one-dimensional marginals, and
//! certification of extremality among measures with the same marginals.
//!
//! A finite measure is extreme (simplicial) exactly when its support is good.
//! When the support carries a loop, `μ ± εν` with `ν = Σ n_i δ_{x_i}` are two
//! distinct probability measures with the marginals of `μ`.

use std::collections::BTreeMap;

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::goodness::{is_good, Loop};
use crate::model::{Coordinate, Point, PointSet, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMeasure {
    support: PointSet,
    weights: Vec<Scalar>,
}

impl FiniteMeasure {
    /// Weights aligned with the support's points; all positive, total 1.
    pub fn new(support: PointSet, weights: Vec<Scalar>) -> Result<Self> {
        support.require_nonempty()?;
        if weights.len() != support.len() {
            return Err(Error::LengthMismatch {
                expected: support.len(),
                found: weights.len(),
            });
        }
        if let Some(w) = weights.iter().find(|w| !w.is_positive()) {
            return Err(Error::InvalidMeasure(format!("non-positive weight {w}")));
        }
        let total: Scalar = weights.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMeasure(format!("total mass {total}")));
        }
        Ok(Self { support, weights })
    }

    pub fn uniform(support: PointSet) -> Result<Self> {
        let w = Scalar::new(1.into(), support.len().max(1).into());
        let weights = vec![w; support.len()];
        Self::new(support, weights)
    }

    pub fn support(&self) -> &PointSet {
        &self.support
    }

    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    pub fn weight(&self, p: &Point) -> Scalar {
        self.support
            .index_of(p)
            .map(|i| self.weights[i].clone())
            .unwrap_or_else(Scalar::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Point, &Scalar)> {
        self.support.iter().zip(&self.weights)
    }
}

/// Per-axis marginal masses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MarginalVector {
    pub axes: Vec<BTreeMap<usize, Scalar>>,
}

impl MarginalVector {
    pub fn get(&self, c: Coordinate) -> Scalar {
        self.axes
            .get(c.axis)
            .and_then(|m| m.get(&c.value))
            .cloned()
            .unwrap_or_else(Scalar::zero)
    }

    /// Drops zero entries so that marginals of signed combinations compare
    /// by value.
    fn normalized(mut self) -> Self {
        for m in &mut self.axes {
            m.retain(|_, v| !v.is_zero());
        }
        self
    }
}

/// Marginals of an arbitrary signed weighting of points.
pub fn marginals_of<'a>(
    n: usize,
    weights: impl IntoIterator<Item = (&'a Point, &'a Scalar)>,
) -> MarginalVector {
    let mut axes = vec![BTreeMap::new(); n];
    for (p, w) in weights {
        for c in p.incidence() {
            let e: &mut Scalar = axes[c.axis].entry(c.value).or_insert_with(Scalar::zero);
            *e += w;
        }
    }
    MarginalVector { axes }.normalized()
}

pub fn marginals(m: &FiniteMeasure) -> MarginalVector {
    marginals_of(m.support.n(), m.iter())
}

/// `ν = Σ n_i δ_{x_i}` scaled by `ε`, with `μ ± εν` both probability measures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Perturbation {
    pub cycle: Loop,
    pub epsilon: Scalar,
}

impl Perturbation {
    /// The weights of `μ + sign·εν` on the support of `μ` (zeros kept).
    pub fn apply(&self, m: &FiniteMeasure, sign: i64) -> Vec<(Point, Scalar)> {
        let scale = &self.epsilon * Scalar::from_integer(sign.into());
        m.iter()
            .map(|(p, w)| {
                let k = self
                    .cycle
                    .points
                    .iter()
                    .position(|q| q == p)
                    .map(|i| self.cycle.coefficients[i])
                    .unwrap_or(0);
                (p.clone(), w + &scale * Scalar::from_integer(k.into()))
            })
            .collect()
    }

    /// Both perturbations are nonnegative, have mass 1 and the marginals of `m`.
    pub fn verify(&self, m: &FiniteMeasure) -> bool {
        if !self.epsilon.is_positive() || !self.cycle.sum_vanishes() {
            return false;
        }
        let target = marginals(m);
        [1, -1].into_iter().all(|sign| {
            let w = self.apply(m, sign);
            let total: Scalar = w.iter().map(|(_, x)| x).sum();
            w.iter().all(|(_, x)| !x.is_negative())
                && total.is_one()
                && marginals_of(m.support.n(), w.iter().map(|(p, x)| (p, x))) == target
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialVerdict {
    pub simplicial: bool,
    pub certificate: Option<Perturbation>,
}

pub fn is_simplicial(m: &FiniteMeasure) -> Result<SimplicialVerdict> {
    let verdict = is_good(m.support())?;
    let Some(cycle) = verdict.certificate else {
        return Ok(SimplicialVerdict {
            simplicial: true,
            certificate: None,
        });
    };
    let epsilon = cycle
        .points
        .iter()
        .zip(&cycle.coefficients)
        .map(|(p, &k)| m.weight(p) / Scalar::from_integer(k.abs().into()))
        .min()
        .ok_or_else(|| Error::Internal("empty loop".into()))?;
    let certificate = Perturbation { cycle, epsilon };
    if !certificate.verify(m) {
        return Err(Error::Internal("perturbation certificate failed to verify".into()));
    }
    Ok(SimplicialVerdict {
        simplicial: false,
        certificate: Some(certificate),
    })
}

/// Every probability measure supported on `s` is simplicial. For finite sets
/// this is goodness; the uniform measure is a counterexample otherwise.
pub fn is_mu_set(s: &PointSet) -> Result<bool> {
    Ok(is_simplicial(&FiniteMeasure::uniform(s.clone())?)?.simplicial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{scalar, Space};
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
        set(2, &["0", "1"], &[&["0", "0"], &["0", "1"], &["1", "0"], &["1", "1"]])
    }

    #[test]
    fn marginals_of_uniform_t4() {
        let m = marginals(&FiniteMeasure::uniform(t4()).unwrap());
        for axis in 0..3 {
            for v in 0..2 {
                assert_eq!(m.get(Coordinate::new(axis, v)), scalar(1, 2));
            }
        }
    }

    #[test]
    fn point_mass() {
        let s = set(3, &["a"], &[&["a", "a", "a"]]);
        let m = FiniteMeasure::uniform(s).unwrap();
        assert_eq!(marginals(&m).get(Coordinate::new(1, 0)), scalar(1, 1));
        assert!(is_simplicial(&m).unwrap().simplicial);
    }

    #[test]
    fn rectangle_is_not_simplicial() {
        let m = FiniteMeasure::uniform(rectangle()).unwrap();
        let v = is_simplicial(&m).unwrap();
        assert!(!v.simplicial);
        let cert = v.certificate.unwrap();
        assert_eq!(cert.cycle.coefficients, vec![1, -1, -1, 1]);
        assert_eq!(cert.epsilon, scalar(1, 4));
        assert!(cert.verify(&m));
        assert!(!is_mu_set(&rectangle()).unwrap());
    }

    #[test]
    fn t4_is_simplicial() {
        assert!(is_simplicial(&FiniteMeasure::uniform(t4()).unwrap()).unwrap().simplicial);
        assert!(is_mu_set(&t4()).unwrap());
    }

    #[test]
    fn invalid_measures() {
        assert!(matches!(
            FiniteMeasure::new(t4(), vec![scalar(1, 2); 4]),
            Err(Error::InvalidMeasure(_))
        ));
        assert!(matches!(
            FiniteMeasure::new(t4(), vec![scalar(1, 1), scalar(0, 1), scalar(0, 1), scalar(0, 1)]),
            Err(Error::InvalidMeasure(_))
        ));
    }
}
