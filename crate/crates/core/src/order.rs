//! Degeneration order on Kostant partitions.
//!
//! `a <= b` means the orbit of `b` lies in the closure of the orbit of `a`, so
//! the semisimple class is the maximum. For Dynkin quivers this is the hom
//! order: `[X, M_a] <= [X, M_b]` for every indecomposable `X`.

use crate::error::{Error, Result};
use crate::lab::Lab;
use crate::partition::{segment_rank, KostantPartition};

impl Lab {
    /// `[M_beta, M_lambda]` for every root, in root order.
    pub fn hom_vector(&self, lambda: &KostantPartition) -> Vec<i64> {
        (0..self.roots().len())
            .map(|k| {
                lambda
                    .parts()
                    .iter()
                    .map(|&b| self.hom_table().hom(k, b) as i64)
                    .sum()
            })
            .collect()
    }

    /// Whether `a <= b`. Partitions of different dimension are incomparable.
    pub fn leq(&self, a: &KostantPartition, b: &KostantPartition) -> bool {
        if a.total() != b.total() {
            return false;
        }
        let t = self.hom_table();
        (0..self.roots().len()).all(|k| {
            let ha: i64 = a.parts().iter().map(|&x| t.hom(k, x) as i64).sum();
            let hb: i64 = b.parts().iter().map(|&x| t.hom(k, x) as i64).sum();
            ha <= hb
        })
    }

    /// Strict order.
    pub fn lt(&self, a: &KostantPartition, b: &KostantPartition) -> bool {
        a != b && self.leq(a, b)
    }

    /// Type-A rank criterion: `a <= b` iff `r_ij(a) >= r_ij(b)` for all `i <= j`.
    pub fn type_a_leq(&self, a: &KostantPartition, b: &KostantPartition) -> Result<bool> {
        if self.quiver().kind() != crate::quiver::DiagramType::A {
            return Err(Error::Precondition("the rank criterion needs type A".into()));
        }
        if a.total() != b.total() {
            return Ok(false);
        }
        let n = self.rank();
        let (q, r) = (self.quiver(), self.roots());
        for i in 1..=n {
            for j in i..=n {
                if segment_rank(a, q, r, i, j) < segment_rank(b, q, r, i, j) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Elements of `set` with nothing strictly below them in `set`.
    pub fn minimal_elements(&self, set: &[KostantPartition]) -> Vec<KostantPartition> {
        let mut out: Vec<KostantPartition> = set
            .iter()
            .filter(|x| !set.iter().any(|y| self.lt(y, x)))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    /// Elements of `set` with nothing strictly above them in `set`.
    pub fn maximal_elements(&self, set: &[KostantPartition]) -> Vec<KostantPartition> {
        let mut out: Vec<KostantPartition> = set
            .iter()
            .filter(|x| !set.iter().any(|y| self.lt(x, y)))
            .cloned()
            .collect();
        out.sort();
        out.dedup();
        out
    }

    pub fn is_rigid(&self, lambda: &KostantPartition) -> bool {
        self.ext_dim(lambda, lambda) == 0
    }

    /// The partition of the dense orbit in `E_gamma`.
    pub fn rigid_class(&self, gamma: &crate::quiver::DimVector) -> Result<KostantPartition> {
        let all = self.kps(gamma);
        let mins = self.minimal_elements(&all);
        match mins.as_slice() {
            [one] => Ok(one.clone()),
            _ => Err(Error::Internal(format!(
                "{} minimal classes in dimension {}",
                mins.len(),
                self.format_dim(gamma)
            ))),
        }
    }

    /// Partitions `x` of the same dimension with `lo <= x <= hi`, sorted.
    pub fn interval(&self, lo: &KostantPartition, hi: &KostantPartition) -> Vec<KostantPartition> {
        self.kps(lo.total())
            .into_iter()
            .filter(|x| self.leq(lo, x) && self.leq(x, hi))
            .collect()
    }
}
