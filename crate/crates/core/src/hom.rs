//! Closed-form Hom and Ext dimensions from the Euler form and the root order.

use crate::error::{Error, Result};
use crate::lab::Lab;
use crate::partition::KostantPartition;
use crate::quiver::{DimVector, DynkinQuiver};
use crate::roots::RootTable;

/// `hom[a][b] = dim Hom(M_a, M_b)` and `ext[a][b] = dim Ext^1(M_a, M_b)` on
/// indecomposables. Hom vanishes from an earlier root to a later one and Ext
/// vanishes otherwise, so each entry is a single Euler form value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomTable {
    hom: Vec<Vec<u32>>,
    ext: Vec<Vec<u32>>,
}

impl HomTable {
    pub fn new(q: &DynkinQuiver, roots: &RootTable) -> Self {
        let m = roots.len();
        let mut hom = vec![vec![0u32; m]; m];
        let mut ext = vec![vec![0u32; m]; m];
        for a in 0..m {
            for b in 0..m {
                let e = q.euler_unchecked(roots.root(a).coords(), roots.root(b).coords());
                match a.cmp(&b) {
                    std::cmp::Ordering::Equal => hom[a][b] = 1,
                    std::cmp::Ordering::Less => {
                        ext[a][b] = u32::try_from(-e).expect("Ext is nonnegative")
                    }
                    std::cmp::Ordering::Greater => {
                        hom[a][b] = u32::try_from(e).expect("Hom is nonnegative")
                    }
                }
            }
        }
        HomTable { hom, ext }
    }

    #[inline]
    pub fn hom(&self, a: usize, b: usize) -> u32 {
        self.hom[a][b]
    }

    #[inline]
    pub fn ext(&self, a: usize, b: usize) -> u32 {
        self.ext[a][b]
    }

    pub fn size(&self) -> usize {
        self.hom.len()
    }

    pub fn hom_matrix(&self) -> &[Vec<u32>] {
        &self.hom
    }

    pub fn ext_matrix(&self) -> &[Vec<u32>] {
        &self.ext
    }
}

impl Lab {
    /// `[M_mu, M_nu]`.
    pub fn hom_dim(&self, mu: &KostantPartition, nu: &KostantPartition) -> i64 {
        let t = self.hom_table();
        mu.parts()
            .iter()
            .map(|&a| nu.parts().iter().map(|&b| t.hom(a, b) as i64).sum::<i64>())
            .sum()
    }

    /// `[M_mu, M_nu]^1`.
    pub fn ext_dim(&self, mu: &KostantPartition, nu: &KostantPartition) -> i64 {
        let t = self.hom_table();
        mu.parts()
            .iter()
            .map(|&a| nu.parts().iter().map(|&b| t.ext(a, b) as i64).sum::<i64>())
            .sum()
    }

    pub fn euler(&self, a: &DimVector, b: &DimVector) -> i64 {
        self.quiver().euler_unchecked(a.coords(), b.coords())
    }

    /// Segment formula for `[M[i,j], M[k,l]]`, valid for `1 -> 2 -> ... -> n`.
    pub fn type_a_hom_dim(&self, mu: &KostantPartition, nu: &KostantPartition) -> Result<i64> {
        self.type_a_pairs(mu, nu, |(i, j), (k, l)| k <= i && i <= l && l <= j)
    }

    /// Segment formula for `[M[k,l], M[i,j]]^1`, valid for `1 -> 2 -> ... -> n`.
    pub fn type_a_ext_dim(&self, mu: &KostantPartition, nu: &KostantPartition) -> Result<i64> {
        self.type_a_pairs(mu, nu, |(k, l), (i, j)| k < i && i <= l + 1 && l < j)
    }

    fn type_a_pairs(
        &self,
        mu: &KostantPartition,
        nu: &KostantPartition,
        rule: impl Fn((usize, usize), (usize, usize)) -> bool,
    ) -> Result<i64> {
        if !self.quiver().is_linear_a() {
            return Err(Error::Precondition(
                "segment formulas need the orientation 1 -> 2 -> ... -> n".into(),
            ));
        }
        let q = self.quiver();
        let r = self.roots();
        let mut total = 0;
        for &a in mu.parts() {
            for &b in nu.parts() {
                let sa = r.segment(q, a).expect("type A");
                let sb = r.segment(q, b).expect("type A");
                total += rule(sa, sb) as i64;
            }
        }
        Ok(total)
    }

    /// Root index of the indecomposable projective at internal vertex `v`.
    pub fn projective_index(&self, v: usize) -> usize {
        self.roots()
            .index_of(&self.quiver().projective_dim(v))
            .expect("projectives are roots")
    }

    pub fn is_projective_root(&self, k: usize) -> bool {
        (0..self.rank()).any(|v| self.projective_index(v) == k)
    }

    /// Minimal projective resolution `0 -> P -> Q -> M_beta -> 0` of the root
    /// at position `k`, both terms as partitions into projective roots. For a
    /// projective root the answer is `(M_beta, 0)`.
    pub fn projective_resolution(&self, k: usize) -> Result<(KostantPartition, KostantPartition)> {
        if k >= self.roots().len() {
            return Err(Error::Precondition(format!("no root at position {k}")));
        }
        let rank = self.rank();
        let beta = self.root_kp(k);
        if self.is_projective_root(k) {
            return Ok((beta, self.empty_kp()));
        }
        let mut top = Vec::new();
        for v in 0..rank {
            let mult = self.hom_dim(&beta, &self.simple_kp(v));
            top.extend(std::iter::repeat_n(self.projective_index(v), mult as usize));
        }
        let cover = KostantPartition::from_parts(self.roots(), top)?;
        let kernel_dim = cover
            .total()
            .checked_sub(beta.total())
            .ok_or_else(|| Error::Internal("projective cover is too small".into()))?;
        let kernel = self.projective_decomposition(&kernel_dim)?;
        Ok((cover, kernel))
    }

    /// Write a dimension vector as a sum of projective dimension vectors.
    /// Projectives are unitriangular in the topological order, so the
    /// multiplicities are read off vertex by vertex.
    pub fn projective_decomposition(&self, dim: &DimVector) -> Result<KostantPartition> {
        let mut rest: Vec<i64> = dim.coords().to_vec();
        let mut parts = Vec::new();
        for v in 0..self.rank() {
            let c = rest[v];
            if c < 0 {
                return Err(Error::Precondition(format!(
                    "{} is not a sum of projectives",
                    self.format_dim(dim)
                )));
            }
            let p = self.quiver().projective_dim(v);
            for (r, pv) in rest.iter_mut().zip(p.coords()) {
                *r -= c * pv;
            }
            parts.extend(std::iter::repeat_n(self.projective_index(v), c as usize));
        }
        KostantPartition::from_parts(self.roots(), parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a3_examples() {
        let lab = Lab::from_name("A3").unwrap();
        let p = |s: &str| lab.parse(s).unwrap();
        assert_eq!(lab.hom_dim(&p("[2,3]"), &p("[1,2]")), 1);
        assert_eq!(lab.ext_dim(&p("[1,2]"), &p("[2,3]")), 1);
        assert_eq!(lab.type_a_hom_dim(&p("[1,2]"), &p("[2,3]")).unwrap(), 0);
        assert_eq!(lab.type_a_hom_dim(&p("[2,3]"), &p("[1,2]")).unwrap(), 1);
        assert_eq!(lab.type_a_ext_dim(&p("[1,2]"), &p("[2,3]")).unwrap(), 1);
    }

    #[test]
    fn table_invariants() {
        for name in ["A4", "D5", "E6"] {
            let lab = Lab::from_name(name).unwrap();
            let t = lab.hom_table();
            let r = lab.roots();
            for a in 0..t.size() {
                assert_eq!(t.hom(a, a), 1);
                for b in 0..t.size() {
                    if a < b {
                        assert_eq!(t.hom(a, b), 0);
                    } else {
                        assert_eq!(t.ext(a, b), 0);
                    }
                    let e = lab.euler(r.root(a), r.root(b));
                    assert_eq!(t.hom(a, b) as i64 - t.ext(a, b) as i64, e);
                }
            }
        }
    }

    #[test]
    fn type_a_needs_linear_orientation() {
        let q = DynkinQuiver::new(crate::quiver::DiagramType::A, 3, &[(2, 1), (2, 3)]).unwrap();
        let lab = Lab::new(q);
        let s = lab.simple_kp(0);
        assert!(lab.type_a_hom_dim(&s, &s).is_err());
    }

    #[test]
    fn resolutions() {
        let a2 = Lab::from_name("A2").unwrap();
        let s1 = a2.parse("[1,1]").unwrap();
        let k = s1.parts()[0];
        let (q, p) = a2.projective_resolution(k).unwrap();
        assert_eq!(a2.format(&q), "[1,2]");
        assert_eq!(a2.format(&p), "[2,2]");
        let m12 = a2.parse("[1,2]").unwrap().parts()[0];
        let (q, p) = a2.projective_resolution(m12).unwrap();
        assert_eq!(a2.format(&q), "[1,2]");
        assert!(p.is_empty());

        let a3 = Lab::from_name("A3").unwrap();
        let k = a3.parse("[2,2]").unwrap().parts()[0];
        let (q, p) = a3.projective_resolution(k).unwrap();
        assert_eq!(a3.format(&q), "[2,3]");
        assert_eq!(a3.format(&p), "[3,3]");
    }

    #[test]
    fn resolutions_are_exact_in_dimension() {
        for name in ["A4", "D4", "D5", "E6"] {
            let lab = Lab::from_name(name).unwrap();
            for k in 0..lab.roots().len() {
                let (q, p) = lab.projective_resolution(k).unwrap();
                let beta = lab.roots().root(k);
                assert_eq!(q.total(), &(beta + p.total()), "{name} root {k}");
            }
        }
    }
}
