//! Quiver Grassmannians over finite fields: subrepresentations, strata by
//! (quotient, sub) class, generic pairs and the component criterion.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::lab::Lab;
use crate::linalg::{enumerate_subspaces, gaussian_binomial, FFMatrix, Field};
use crate::partition::KostantPartition;
use crate::quiver::DimVector;
use crate::rep::Rep;

/// A (quotient, sub) pair of classes.
pub type Pair = (KostantPartition, KostantPartition);

/// Upper bound on `|Gr_beta(M)|` before any stability pruning.
pub fn grassmannian_bound(dim: &DimVector, beta: &DimVector, q: u64) -> u128 {
    dim.coords()
        .iter()
        .zip(beta.coords())
        .map(|(&n, &d)| gaussian_binomial(n as usize, d as usize, q))
        .fold(1u128, |acc, x| acc.saturating_mul(x))
}

/// Every subrepresentation of `m` with dimension vector `beta`, each as one
/// RREF basis per vertex. Vertices are visited in topological order and
/// `W_t` is chosen among subspaces containing the images of earlier `W_s`.
pub fn subreps(m: &Rep, beta: &DimVector, cap: u128) -> Result<Vec<Vec<FFMatrix>>> {
    let dim = m.dim();
    if beta.len() != dim.len() {
        return Err(Error::DimensionMismatch("sub dimension of the wrong length".into()));
    }
    if !beta.le(dim) {
        return Ok(Vec::new());
    }
    let f = m.field();
    let bound = grassmannian_bound(dim, beta, f.order() as u64);
    if bound > cap {
        return Err(Error::CapExceeded {
            what: format!("quiver Grassmannian over {f}"),
            required: bound,
            cap,
        });
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(dim.len());
    extend_subreps(m, beta, 0, &mut current, &mut out);
    Ok(out)
}

fn extend_subreps(
    m: &Rep,
    beta: &DimVector,
    t: usize,
    current: &mut Vec<FFMatrix>,
    out: &mut Vec<Vec<FFMatrix>>,
) {
    let q = m.quiver();
    if t == q.rank() {
        out.push(current.clone());
        return;
    }
    let f = m.field();
    let nt = m.dim().get(t) as usize;
    let dt = beta.get(t) as usize;
    // Span of the images of the already chosen subspaces.
    let mut rows: Vec<u8> = Vec::new();
    let mut count = 0;
    for (h, &(s, tt)) in q.arrows().iter().enumerate() {
        if tt != t {
            continue;
        }
        for r in 0..current[s].rows() {
            rows.extend(m.map(h).apply(current[s].row(r)));
            count += 1;
        }
    }
    let forced = FFMatrix::from_data(f, count, nt, rows).expect("shape").rref();
    let (forced, pivots) = forced;
    let k = pivots.len();
    if k > dt {
        return;
    }
    let free: Vec<usize> = (0..nt).filter(|c| !pivots.contains(c)).collect();
    let choices = enumerate_subspaces(nt - k, dt - k, f, u128::MAX).expect("uncapped");
    for extra in choices {
        let mut data: Vec<u8> = (0..k).flat_map(|r| forced.row(r).to_vec()).collect();
        for r in 0..extra.rows() {
            let mut v = vec![0u8; nt];
            for (j, &c) in free.iter().enumerate() {
                v[c] = extra.get(r, j);
            }
            data.extend(v);
        }
        let (w, _) = FFMatrix::from_data(f, dt, nt, data).expect("shape").rref();
        current.push(w);
        extend_subreps(m, beta, t + 1, current, out);
        current.pop();
    }
}

/// One stratum of `Gr_beta(M_lambda)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumEntry {
    /// Quotient class.
    pub mu: KostantPartition,
    /// Sub class.
    pub nu: KostantPartition,
    pub count: u128,
    /// `[M_nu, M_lambda] - [M_nu, M_nu]`.
    pub dim: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrataReport {
    pub lambda: KostantPartition,
    pub beta: DimVector,
    pub q: u8,
    pub strata: Vec<StratumEntry>,
    pub total: u128,
}

impl StrataReport {
    pub fn pairs(&self) -> BTreeSet<Pair> {
        self.strata.iter().map(|e| (e.mu.clone(), e.nu.clone())).collect()
    }

    pub fn to_json(&self, lab: &Lab) -> Value {
        json!({
            "lambda": lab.format(&self.lambda),
            "beta": lab.format_dim(&self.beta),
            "q": self.q,
            "strata": self.strata.iter().map(|e| json!({
                "mu": lab.format(&e.mu),
                "nu": lab.format(&e.nu),
                "count": e.count as u64,
                "dim": e.dim,
            })).collect::<Vec<_>>(),
            "total": self.total as u64,
        })
    }
}

/// Realized pairs of `Gr_beta(M_lambda)`, merged over the configured fields.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedPairs {
    pub pairs: BTreeSet<Pair>,
    pub fields: Vec<u8>,
    /// Whether every field gave the same pair set.
    pub stable: bool,
}

impl Lab {
    /// Dimension of the open stratum of subs isomorphic to `nu`:
    /// `[M_nu, M_lambda] - [M_nu, M_nu]`.
    pub fn stratum_dim(&self, lambda: &KostantPartition, nu: &KostantPartition) -> i64 {
        self.hom_dim(nu, lambda) - self.hom_dim(nu, nu)
    }

    /// The hom equality `[M_nu, M_lambda] = [M_nu, M_nu] + [M_nu, M_mu]`.
    pub fn hom_equality(&self, lambda: &KostantPartition, mu: &KostantPartition, nu: &KostantPartition) -> bool {
        self.hom_dim(nu, lambda) == self.hom_dim(nu, nu) + self.hom_dim(nu, mu)
    }

    /// Realized pairs that cannot be degenerated on one side with the other fixed.
    pub fn generic_among(&self, realized: &BTreeSet<Pair>) -> BTreeSet<Pair> {
        realized
            .iter()
            .filter(|(mu, nu)| {
                !realized
                    .iter()
                    .any(|(m2, n2)| (m2 == mu && self.lt(n2, nu)) || (n2 == nu && self.lt(m2, mu)))
            })
            .cloned()
            .collect()
    }

    /// Minimal pairs under the product order.
    pub fn minimal_pairs(&self, realized: &BTreeSet<Pair>) -> BTreeSet<Pair> {
        realized
            .iter()
            .filter(|(mu, nu)| {
                !realized.iter().any(|(m2, n2)| {
                    (m2, n2) != (mu, nu) && self.leq(m2, mu) && self.leq(n2, nu)
                })
            })
            .cloned()
            .collect()
    }
}

impl Engine {
    pub fn subreps_of(&self, lambda: &KostantPartition, beta: &DimVector, field: Field) -> Result<Vec<Vec<FFMatrix>>> {
        let m = self.build(lambda, field)?;
        subreps(&m, beta, self.config().cap)
    }

    pub fn point_count(&self, lambda: &KostantPartition, beta: &DimVector, field: Field) -> Result<u128> {
        Ok(self.strata(lambda, beta, field)?.total)
    }

    /// Strata of `Gr_beta(M_lambda)` over one field, cached.
    pub fn strata(&self, lambda: &KostantPartition, beta: &DimVector, field: Field) -> Result<std::sync::Arc<StrataReport>> {
        self.check_sub_dim(lambda, beta)?;
        self.cached_strata((lambda.clone(), beta.clone(), field), || {
            let m = self.build(lambda, field)?;
            let subs = subreps(&m, beta, self.config().cap)?;
            let mut counts: BTreeMap<Pair, u128> = BTreeMap::new();
            for w in &subs {
                let (sub, quot) = m.sub_quotient(w)?;
                let nu = self.identify(&sub)?;
                let mu = self.identify(&quot)?;
                *counts.entry((mu, nu)).or_default() += 1;
            }
            let strata = counts
                .into_iter()
                .map(|((mu, nu), count)| {
                    let dim = self.stratum_dim(lambda, &nu);
                    StratumEntry { mu, nu, count, dim }
                })
                .collect();
            Ok(StrataReport {
                lambda: lambda.clone(),
                beta: beta.clone(),
                q: field.order(),
                strata,
                total: subs.len() as u128,
            })
        })
    }

    fn check_sub_dim(&self, lambda: &KostantPartition, beta: &DimVector) -> Result<()> {
        if beta.len() != self.rank() {
            return Err(Error::DimensionMismatch(format!(
                "sub dimension has length {}, expected {}",
                beta.len(),
                self.rank()
            )));
        }
        if !beta.le(lambda.total()) {
            return Err(Error::Precondition(format!(
                "{} is not below {}",
                self.format_dim(beta),
                self.format_dim(lambda.total())
            )));
        }
        Ok(())
    }

    pub fn realized_pairs(&self, lambda: &KostantPartition, beta: &DimVector) -> Result<RealizedPairs> {
        let mut union = BTreeSet::new();
        let mut per_field = Vec::new();
        for &f in &self.config().fields {
            let p = self.strata(lambda, beta, f)?.pairs();
            union.extend(p.iter().cloned());
            per_field.push(p);
        }
        let stable = per_field.windows(2).all(|w| w[0] == w[1]);
        Ok(RealizedPairs {
            pairs: union,
            fields: self.config().field_orders(),
            stable,
        })
    }

    pub fn generic_pairs(&self, lambda: &KostantPartition, beta: &DimVector) -> Result<BTreeSet<Pair>> {
        Ok(self.generic_among(&self.realized_pairs(lambda, beta)?.pairs))
    }

    /// Generic pairs satisfying the hom equality; these index the irreducible
    /// components of `Gr_beta(M_lambda)`.
    pub fn ext_ger(&self, lambda: &KostantPartition, beta: &DimVector) -> Result<BTreeSet<Pair>> {
        Ok(self
            .generic_pairs(lambda, beta)?
            .into_iter()
            .filter(|(mu, nu)| self.hom_equality(lambda, mu, nu))
            .collect())
    }

    /// Stratum dimension, checked against realization.
    pub fn realized_stratum_dim(&self, lambda: &KostantPartition, nu: &KostantPartition) -> Result<i64> {
        let realized = self.realized_pairs(lambda, nu.total())?;
        if !realized.pairs.iter().any(|(_, n)| n == nu) {
            return Err(Error::Precondition(format!(
                "{} is not a sub of {}",
                self.format(nu),
                self.format(lambda)
            )));
        }
        Ok(self.stratum_dim(lambda, nu))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn engine(name: &str) -> Engine {
        Engine::from_name(name).unwrap()
    }

    #[test]
    fn trivial_grassmannians() {
        let e = engine("A3");
        let l = e.parse("[1,2]+[2,3]").unwrap();
        for f in [Field::F2, Field::F3] {
            assert_eq!(e.point_count(&l, &DimVector::zero(3), f).unwrap(), 1);
            assert_eq!(e.point_count(&l, l.total(), f).unwrap(), 1);
        }
    }

    #[test]
    fn a3_projective_line() {
        let e = engine("A3");
        let l = e.parse("[1,2]+[2,3]").unwrap();
        let beta = e.parse_dim("0,1,1").unwrap();
        assert_eq!(e.point_count(&l, &beta, Field::F2).unwrap(), 3);
        assert_eq!(e.point_count(&l, &beta, Field::F3).unwrap(), 4);
        let point = e.parse_dim("1,1,0").unwrap();
        assert_eq!(e.point_count(&l, &point, Field::F2).unwrap(), 1);
        assert_eq!(e.point_count(&l, &point, Field::F3).unwrap(), 1);
    }

    #[test]
    fn semisimple_counts_are_gaussian() {
        let e = engine("A2");
        let l = e.parse("2[1,1]+2[2,2]").unwrap();
        let beta = e.parse_dim("1,1").unwrap();
        assert_eq!(e.point_count(&l, &beta, Field::F3).unwrap(), 16);
        let r = e.strata(&l, &beta, Field::F3).unwrap();
        assert_eq!(r.strata.len(), 1);
    }

    #[test]
    fn a2_single_stratum() {
        let e = engine("A2");
        let l = e.parse("[1,2]").unwrap();
        let r = e.strata(&l, &e.parse_dim("0,1").unwrap(), Field::F2).unwrap();
        assert_eq!(r.strata.len(), 1);
        assert_eq!(e.format(&r.strata[0].mu), "[1,1]");
        assert_eq!(e.format(&r.strata[0].nu), "[2,2]");
        assert_eq!(r.strata[0].count, 1);
        let ger = e.ext_ger(&l, &e.parse_dim("0,1").unwrap()).unwrap();
        assert_eq!(ger.len(), 1);
    }

    #[test]
    fn cap_is_reported() {
        let lab = std::sync::Arc::new(Lab::from_name("A2").unwrap());
        let e = Engine::new(lab, crate::engine::EnumConfig::new(vec![Field::F2], 2).unwrap());
        let l = e.parse("2[1,1]+2[2,2]").unwrap();
        let err = e.strata(&l, &e.parse_dim("1,1").unwrap(), Field::F2).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { required: 9, .. }));
    }
}
