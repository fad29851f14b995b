//! Combinatorial tests on pairs of Kostant partitions that predict the shape of
//! the induced KLR module `L(mu) o L(nu)`.

use std::collections::BTreeSet;

use serde_json::{json, Value};

use crate::engine::Engine;
use crate::error::{Error, Result};
use crate::grassmann::Pair;
use crate::lab::Lab;
use crate::partition::KostantPartition;
use crate::quiver::DimVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    CannotBeSimple,
    PassesNecessaryTest,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::CannotBeSimple => "cannot_be_simple",
            Verdict::PassesNecessaryTest => "passes_necessary_test",
        }
    }
}

/// `([M_nu, M_split], [M_nu, M_lambda], [M_mu, M_split], [M_mu, M_lambda])` for one middle term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InequalityRow {
    pub lambda: KostantPartition,
    pub nu_split: i64,
    pub nu_lambda: i64,
    pub mu_split: i64,
    pub mu_lambda: i64,
}

impl InequalityRow {
    /// Both hom values drop strictly below the split ones.
    pub fn strict(&self) -> bool {
        self.nu_split > self.nu_lambda && self.mu_split > self.mu_lambda
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicityVerdict {
    pub mu: KostantPartition,
    pub nu: KostantPartition,
    pub verdict: Verdict,
    pub witness: Option<KostantPartition>,
    pub table: Vec<InequalityRow>,
}

impl SimplicityVerdict {
    pub fn to_json(&self, lab: &Lab) -> Value {
        json!({
            "mu": lab.format(&self.mu),
            "nu": lab.format(&self.nu),
            "verdict": self.verdict.as_str(),
            "witness": self.witness.as_ref().map(|w| lab.format(w)),
            "table": self.table.iter().map(|r| json!({
                "lambda": lab.format(&r.lambda),
                "hom_nu_split": r.nu_split,
                "hom_nu_lambda": r.nu_lambda,
                "hom_mu_split": r.mu_split,
                "hom_mu_lambda": r.mu_lambda,
                "strict": r.strict(),
            })).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SupportPair {
    pub is_support: bool,
    pub witness: Option<KostantPartition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SoclePrediction {
    Predicted(KostantPartition),
    Abstain,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthTwo {
    pub socle: KostantPartition,
    pub head: KostantPartition,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeadSocleBounds {
    /// `nu * mu`.
    pub reverse_generic: KostantPartition,
    /// `mu * nu`.
    pub generic: KostantPartition,
    pub split: KostantPartition,
    pub head: Vec<KostantPartition>,
    pub socle: Vec<KostantPartition>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeRow {
    pub lambda: KostantPartition,
    pub d: i64,
    pub e: i64,
    pub bound: i64,
    pub generic_pair: bool,
    pub ext_ger: bool,
    pub epsilon: Option<i64>,
}

impl Engine {
    /// Whether no proper middle term `lambda` has `(mu, nu)` in `ext_ger(lambda)`.
    pub fn is_support_pair(&self, mu: &KostantPartition, nu: &KostantPartition) -> Result<SupportPair> {
        let split = mu.sum(nu);
        let set = self.ext_set(mu, nu)?;
        let pair: Pair = (mu.clone(), nu.clone());
        for lambda in set.classes.iter().filter(|l| **l != split) {
            if self.ext_ger(lambda, nu.total())?.contains(&pair) {
                return Ok(SupportPair {
                    is_support: false,
                    witness: Some(lambda.clone()),
                });
            }
        }
        Ok(SupportPair {
            is_support: true,
            witness: None,
        })
    }

    pub fn simplicity_necessary(&self, mu: &KostantPartition, nu: &KostantPartition) -> Result<SimplicityVerdict> {
        let support = self.is_support_pair(mu, nu)?;
        let split = mu.sum(nu);
        let set = self.ext_set(mu, nu)?;
        let table = set
            .classes
            .iter()
            .map(|l| InequalityRow {
                lambda: l.clone(),
                nu_split: self.hom_dim(nu, &split),
                nu_lambda: self.hom_dim(nu, l),
                mu_split: self.hom_dim(mu, &split),
                mu_lambda: self.hom_dim(mu, l),
            })
            .collect();
        Ok(SimplicityVerdict {
            mu: mu.clone(),
            nu: nu.clone(),
            verdict: if support.is_support {
                Verdict::PassesNecessaryTest
            } else {
                Verdict::CannotBeSimple
            },
            witness: support.witness,
            table,
        })
    }

    /// For rigid `mu`, `nu`: simple iff both extension groups between them vanish.
    pub fn rigid_simplicity(&self, mu: &KostantPartition, nu: &KostantPartition) -> Result<bool> {
        for x in [mu, nu] {
            if !self.is_rigid(x) {
                return Err(Error::Precondition(format!("{} is not rigid", self.format(x))));
            }
        }
        Ok(self.ext_dim(mu, nu) == 0 && self.ext_dim(nu, mu) == 0)
    }

    /// `mu * nu` when `(mu, nu)` lies in `ext_ger(mu * nu)`, otherwise abstain.
    pub fn socle_prediction(&self, mu: &KostantPartition, nu: &KostantPartition) -> Result<SoclePrediction> {
        let generic = self.generic_ext(mu, nu)?;
        let pair: Pair = (mu.clone(), nu.clone());
        if self.ext_ger(&generic, nu.total())?.contains(&pair) {
            Ok(SoclePrediction::Predicted(generic))
        } else {
            Ok(SoclePrediction::Abstain)
        }
    }

    pub fn length_two_report(&self, mu: &KostantPartition, nu: &KostantPartition) -> Result<LengthTwo> {
        let ext = self.ext_dim(mu, nu);
        if ext != 1 {
            return Err(Error::Precondition(format!(
                "[{}, {}]^1 = {ext}, expected 1",
                self.format(mu),
                self.format(nu)
            )));
        }
        let socle = self.generic_ext(mu, nu)?;
        let head = mu.sum(nu);
        let set = self.ext_set(mu, nu)?;
        let expected: BTreeSet<_> = [socle.clone(), head.clone()].into_iter().collect();
        let found: BTreeSet<_> = set.classes.iter().cloned().collect();
        if expected != found {
            return Err(Error::Internal(format!(
                "extension set of a one-dimensional Ext has {} classes",
                found.len()
            )));
        }
        Ok(LengthTwo { socle, head })
    }

    pub fn head_socle_bounds(&self, mu: &KostantPartition, nu: &KostantPartition) -> Result<HeadSocleBounds> {
        let generic = self.generic_ext(mu, nu)?;
        let reverse_generic = self.generic_ext(nu, mu)?;
        let split = mu.sum(nu);
        Ok(HeadSocleBounds {
            head: self.interval(&reverse_generic, &split),
            socle: self.interval(&generic, &split),
            reverse_generic,
            generic,
            split,
        })
    }

    /// Pairs with `mu * nu = alpha`, every part of `mu` before `alpha` and every
    /// part of `nu` after it in the root order.
    pub fn semicuspidal_pairs(&self, alpha: &DimVector) -> Result<Vec<Pair>> {
        let k = self
            .roots()
            .index_of(alpha)
            .ok_or_else(|| Error::Precondition(format!("{} is not a positive root", self.format_dim(alpha))))?;
        let target = self.root_kp(k);
        let mut out = Vec::new();
        for beta in DimVector::all_up_to(self.rank(), alpha.total()) {
            if beta.is_zero() || &beta == alpha || !beta.le(alpha) {
                continue;
            }
            let rest = alpha.checked_sub(&beta).expect("beta <= alpha");
            let mus: Vec<_> = self
                .kps(&rest)
                .into_iter()
                .filter(|m| m.parts().iter().all(|&p| p < k))
                .collect();
            if mus.is_empty() {
                continue;
            }
            let nus: Vec<_> = self
                .kps(&beta)
                .into_iter()
                .filter(|n| n.parts().iter().all(|&p| p > k))
                .collect();
            for mu in &mus {
                for nu in &nus {
                    if self.generic_ext(mu, nu)? == target {
                        out.push((mu.clone(), nu.clone()));
                    }
                }
            }
        }
        out.sort();
        Ok(out)
    }

    /// One row per middle term with the degree bound `2 e + d`; the split row
    /// also carries the exponent from the repetition quiver.
    pub fn degree_report(&self, mu: &KostantPartition, nu: &KostantPartition) -> Result<Vec<DegreeRow>> {
        let split = mu.sum(nu);
        let set = self.ext_set(mu, nu)?;
        let epsilon = self.split_epsilon(mu, nu)?;
        let mut rows = Vec::new();
        for lambda in &set.classes {
            let d = self.d_lambda(lambda, mu, nu)?.via_homs;
            let e = self.e_lambda(lambda, mu, nu)?;
            let pair: Pair = (mu.clone(), nu.clone());
            rows.push(DegreeRow {
                lambda: lambda.clone(),
                d,
                e,
                bound: 2 * e + d,
                generic_pair: self.generic_pairs(lambda, nu.total())?.contains(&pair),
                ext_ger: self.ext_ger(lambda, nu.total())?.contains(&pair),
                epsilon: (lambda == &split).then_some(epsilon),
            });
        }
        Ok(rows)
    }

    /// `epsilon(v_mu, w^{dim mu}; v_nu, w^{dim nu})`.
    pub fn split_epsilon(&self, mu: &KostantPartition, nu: &KostantPartition) -> Result<i64> {
        let rq = self.repetition()?;
        let v1 = self.v_lambda(&rq, mu)?;
        let w1 = self.w_gamma(&rq, mu.total())?;
        let v2 = self.v_lambda(&rq, nu)?;
        let w2 = self.w_gamma(&rq, nu.total())?;
        rq.epsilon(self.quiver(), &v1, &w1, &v2, &w2)
    }
}
