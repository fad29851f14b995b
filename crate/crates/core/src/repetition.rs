//! Repetition quiver, its labeling by roots and the graded dimension calculus.

use std::collections::{BTreeMap, HashMap};

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::error::{Error, Result};
use crate::lab::Lab;
use crate::partition::KostantPartition;
use crate::quiver::{DimVector, DynkinQuiver};

/// Offset from a vertex `(i, p)` of the labeled copy of the AR quiver to the
/// coordinate `(i, p + V_SHIFT)` where a `v` entry for that root is stored.
/// The `v` vectors live on the shifted vertex set, one step below.
pub const V_SHIFT: i32 = -1;

/// Finitely supported integer function on `I x Z`, keyed by internal vertex.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GradedDimVector(BTreeMap<(usize, i32), i64>);

impl GradedDimVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn delta(i: usize, p: i32) -> Self {
        let mut v = Self::new();
        v.add_at(i, p, 1);
        v
    }

    pub fn get(&self, i: usize, p: i32) -> i64 {
        self.0.get(&(i, p)).copied().unwrap_or(0)
    }

    pub fn add_at(&mut self, i: usize, p: i32, value: i64) {
        if value == 0 {
            return;
        }
        let e = self.0.entry((i, p)).or_insert(0);
        *e += value;
        if *e == 0 {
            self.0.remove(&(i, p));
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, i32), i64)> + '_ {
        self.0.iter().map(|(&k, &v)| (k, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_nonnegative(&self) -> bool {
        self.0.values().all(|&v| v >= 0)
    }

    /// Sum of all values.
    pub fn mass(&self) -> i64 {
        self.0.values().sum()
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, p), v) in other.entries() {
            out.add_at(i, p, v);
        }
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.plus(&other.scaled(-1))
    }

    pub fn scaled(&self, k: i64) -> Self {
        let mut out = Self::new();
        for ((i, p), v) in self.entries() {
            out.add_at(i, p, k * v);
        }
        out
    }

    /// `(q^s V)(i, p) = V(i, p + s)`.
    pub fn q_shift(&self, s: i32) -> Self {
        let mut out = Self::new();
        for ((i, p), v) in self.entries() {
            out.add_at(i, p - s, v);
        }
        out
    }

    /// `sum V(i, a) W(i, a)`.
    pub fn pairing(&self, other: &Self) -> i64 {
        self.entries().map(|((i, p), v)| v * other.get(i, p)).sum()
    }

    /// `V >= W` pointwise.
    pub fn dominates(&self, other: &Self) -> bool {
        self.minus(other).is_nonnegative()
    }

    /// Triples `[label, p, value]` in user labels.
    pub fn to_triples(&self, q: &DynkinQuiver) -> Vec<(usize, i32, i64)> {
        let mut t: Vec<_> = self.entries().map(|((i, p), v)| (q.label(i), p, v)).collect();
        t.sort_unstable();
        t
    }

    pub fn from_triples(q: &DynkinQuiver, triples: &[(usize, i32, i64)]) -> Result<Self> {
        let mut out = Self::new();
        for &(l, p, v) in triples {
            out.add_at(q.index(l)?, p, v);
        }
        Ok(out)
    }
}

/// Serializes as a list of `[i, p, value]` with internal vertex indices; use
/// [`GradedDimVector::to_triples`] for user labels.
impl Serialize for GradedDimVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.0.len()))?;
        for ((i, p), v) in self.entries() {
            seq.serialize_element(&(i, p, v))?;
        }
        seq.end()
    }
}

/// Integer matrix helpers for the Coxeter transformation.
fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n)
        .map(|r| (0..n).map(|c| (0..n).map(|k| a[r][k] * b[k][c]).sum()).collect())
        .collect()
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = a.len();
    (0..n).map(|r| (0..n).map(|c| a[c][r]).collect()).collect()
}

/// Inverse of an upper unitriangular integer matrix.
fn unitriangular_inverse(e: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = e.len();
    let mut inv = vec![vec![0i64; n]; n];
    for c in 0..n {
        for r in (0..n).rev() {
            let target = (r == c) as i64;
            let acc: i64 = (r + 1..n).map(|k| e[r][k] * inv[k][c]).sum();
            inv[r][c] = target - acc;
        }
    }
    inv
}

fn apply(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// The repetition quiver restricted to `p` in a window, labeled by `(root, m)`.
#[derive(Debug, Clone)]
pub struct RepetitionQuiver {
    heights: Vec<i32>,
    window: (i32, i32),
    labels: BTreeMap<(usize, i32), (usize, i32)>,
    position: HashMap<(usize, i32), (usize, i32)>,
    coxeter: Vec<Vec<i64>>,
    coxeter_inv: Vec<Vec<i64>>,
}

impl RepetitionQuiver {
    /// Height function with `xi_s = xi_t + 1` on every arrow and minimum zero.
    pub fn heights(q: &DynkinQuiver) -> Vec<i32> {
        let n = q.rank();
        let mut xi: Vec<Option<i32>> = vec![None; n];
        xi[0] = Some(0);
        // The diagram is a tree; propagate until everything is assigned.
        while xi.iter().any(Option::is_none) {
            for &(s, t) in q.arrows() {
                match (xi[s], xi[t]) {
                    (Some(a), None) => xi[t] = Some(a - 1),
                    (None, Some(b)) => xi[s] = Some(b + 1),
                    _ => {}
                }
            }
        }
        let xi: Vec<i32> = xi.into_iter().map(|x| x.expect("assigned")).collect();
        let lo = *xi.iter().min().expect("nonempty");
        xi.into_iter().map(|x| x - lo).collect()
    }

    pub fn default_window(q: &DynkinQuiver) -> (i32, i32) {
        let xi = Self::heights(q);
        let h = q.coxeter_number() as i32;
        (xi.iter().min().copied().unwrap_or(0) - 2 * h, xi.iter().max().copied().unwrap_or(0) + 2)
    }

    pub fn new(lab: &Lab) -> Result<Self> {
        Self::with_window(lab, Self::default_window(lab.quiver()))
    }

    pub fn with_window(lab: &Lab, window: (i32, i32)) -> Result<Self> {
        let q = lab.quiver();
        let roots = lab.roots();
        let heights = Self::heights(q);
        let (lo, hi) = window;
        if lo > hi {
            return Err(Error::Window(format!("empty window [{lo}, {hi}]")));
        }
        let e = q.euler_matrix();
        let e_inv = unitriangular_inverse(&e);
        let et = transpose(&e);
        let e_inv_t = transpose(&e_inv);
        let neg = |m: Vec<Vec<i64>>| -> Vec<Vec<i64>> {
            m.into_iter().map(|r| r.into_iter().map(|x| -x).collect()).collect()
        };
        let coxeter = neg(mat_mul(&e_inv, &et));
        let coxeter_inv = neg(mat_mul(&e_inv_t, &e));

        let signed_root = |v: Vec<i64>| -> Result<(usize, bool)> {
            let positive = v.iter().all(|&c| c >= 0);
            let abs: Vec<i64> = v.iter().map(|c| c.abs()).collect();
            let k = DimVector::new(abs)
                .ok()
                .and_then(|d| roots.index_of(&d))
                .filter(|_| positive || v.iter().all(|&c| c <= 0))
                .ok_or_else(|| Error::Internal(format!("{v:?} is not a root")))?;
            Ok((k, positive))
        };

        let mut labels = BTreeMap::new();
        for i in 0..q.rank() {
            let start = heights[i];
            if start < lo || start > hi {
                return Err(Error::Window(format!(
                    "window [{lo}, {hi}] misses the height {start} of vertex {}",
                    q.label(i)
                )));
            }
            let injective = roots.index_of(&q.injective_dim(i)).expect("injectives are roots");
            labels.insert((i, start), (injective, 0));
            let (mut k, mut m, mut p) = (injective, 0i32, start);
            while p - 2 >= lo {
                let (k2, pos) = signed_root(apply(&coxeter, roots.root(k).coords()))?;
                m -= (!pos) as i32;
                k = k2;
                p -= 2;
                labels.insert((i, p), (k, m));
            }
            let (mut k, mut m, mut p) = (injective, 0i32, start);
            while p + 2 <= hi {
                let (k2, pos) = signed_root(apply(&coxeter_inv, roots.root(k).coords()))?;
                m += (!pos) as i32;
                k = k2;
                p += 2;
                labels.insert((i, p), (k, m));
            }
        }
        let mut position = HashMap::new();
        for (&vertex, &label) in &labels {
            if position.insert(label, vertex).is_some() {
                return Err(Error::Internal(format!("label {label:?} occurs twice")));
            }
        }
        let rq = RepetitionQuiver {
            heights,
            window,
            labels,
            position,
            coxeter,
            coxeter_inv,
        };
        let found = (0..roots.len()).filter(|&k| rq.position.contains_key(&(k, 0))).count();
        if found != roots.len() {
            return Err(Error::Window(format!(
                "window [{lo}, {hi}] holds {found} of the {} vertices of the AR quiver",
                roots.len()
            )));
        }
        Ok(rq)
    }

    pub fn heights_of(&self) -> &[i32] {
        &self.heights
    }

    pub fn window(&self) -> (i32, i32) {
        self.window
    }

    /// Vertices `(i, p)` with `p - xi_i` even inside the window, with labels.
    pub fn labels(&self) -> &BTreeMap<(usize, i32), (usize, i32)> {
        &self.labels
    }

    pub fn label(&self, i: usize, p: i32) -> Option<(usize, i32)> {
        self.labels.get(&(i, p)).copied()
    }

    /// The vertex labeled `(root k, m)`.
    pub fn vertex_of(&self, k: usize, m: i32) -> Option<(usize, i32)> {
        self.position.get(&(k, m)).copied()
    }

    pub fn contains(&self, i: usize, p: i32) -> bool {
        (p - self.heights[i]).rem_euclid(2) == 0 && self.window.0 <= p && p <= self.window.1
    }

    /// Vertices labeled with `m = 0`, sorted by root.
    pub fn ar_vertices(&self) -> Vec<(usize, (usize, i32))> {
        let mut v: Vec<_> = self
            .labels
            .iter()
            .filter(|(_, &(_, m))| m == 0)
            .map(|(&vertex, &(k, _))| (k, vertex))
            .collect();
        v.sort_unstable();
        v
    }

    pub fn coxeter_matrix(&self) -> &[Vec<i64>] {
        &self.coxeter
    }

    pub fn coxeter_inverse(&self) -> &[Vec<i64>] {
        &self.coxeter_inv
    }

    fn check_support(&self, v: &GradedDimVector) -> Result<()> {
        let (lo, hi) = self.window;
        if let Some(((i, p), _)) = v.entries().find(|&((_, p), _)| p < lo || p > hi) {
            return Err(Error::Window(format!(
                "entry at ({}, {p}) leaves the window [{lo}, {hi}]",
                i + 1
            )));
        }
        Ok(())
    }

    /// `C_q(V)(i, p) = V(i, p - 1) + V(i, p + 1) - sum_{j ~ i} V(j, p)`.
    pub fn cartan_q(&self, q: &DynkinQuiver, v: &GradedDimVector) -> Result<GradedDimVector> {
        let mut out = GradedDimVector::new();
        for ((i, p), x) in v.entries() {
            out.add_at(i, p + 1, x);
            out.add_at(i, p - 1, x);
            for j in q.neighbors(i) {
                out.add_at(j, p, -x);
            }
        }
        self.check_support(&out)?;
        Ok(out)
    }

    /// `d(V1, W1; V2, W2) = <V1, q^{-1}(W2 - C_q V2)> + <V2, q W1>`.
    pub fn d(
        &self,
        q: &DynkinQuiver,
        v1: &GradedDimVector,
        w1: &GradedDimVector,
        v2: &GradedDimVector,
        w2: &GradedDimVector,
    ) -> Result<i64> {
        for x in [v1, w1, v2, w2] {
            self.check_support(x)?;
        }
        let inner = w2.minus(&self.cartan_q(q, v2)?);
        Ok(v1.pairing(&inner.q_shift(-1)) + v2.pairing(&w1.q_shift(1)))
    }

    pub fn epsilon(
        &self,
        q: &DynkinQuiver,
        v1: &GradedDimVector,
        w1: &GradedDimVector,
        v2: &GradedDimVector,
        w2: &GradedDimVector,
    ) -> Result<i64> {
        Ok(self.d(q, v1, w1, v2, w2)? - self.d(q, v2, w2, v1, w1)?)
    }
}

impl Lab {
    pub fn repetition(&self) -> Result<RepetitionQuiver> {
        RepetitionQuiver::new(self)
    }

    /// `W_j(p) = gamma_i` at the vertex `(j, p)` labeled `(alpha_i, 0)`.
    pub fn w_gamma(&self, rq: &RepetitionQuiver, gamma: &DimVector) -> Result<GradedDimVector> {
        let mut w = GradedDimVector::new();
        for i in 0..self.rank() {
            let k = self.roots().simple_index(i);
            let (j, p) = rq
                .vertex_of(k, 0)
                .ok_or_else(|| Error::Window(format!("no vertex labeled by alpha_{}", self.quiver().label(i))))?;
            w.add_at(j, p, gamma.get(i));
        }
        Ok(w)
    }

    /// `v_U = [Q_U, M_lambda] - [M_U, M_lambda]` for every non-projective root `U`,
    /// stored at the AR vertex of `U` shifted by [`V_SHIFT`].
    pub fn v_lambda(&self, rq: &RepetitionQuiver, lambda: &KostantPartition) -> Result<GradedDimVector> {
        let mut v = GradedDimVector::new();
        for k in 0..self.roots().len() {
            if self.is_projective_root(k) {
                continue;
            }
            let (cover, _) = self.projective_resolution(k)?;
            let value = self.hom_dim(&cover, lambda) - self.hom_dim(&self.root_kp(k), lambda);
            let (i, p) = rq
                .vertex_of(k, 0)
                .ok_or_else(|| Error::Window("AR vertex outside the window".into()))?;
            v.add_at(i, p + V_SHIFT, value);
        }
        Ok(v)
    }

    /// `beta -> [M_beta, M_lambda]^1` on non-projective roots.
    pub fn ck_dims(&self, lambda: &KostantPartition) -> BTreeMap<usize, i64> {
        (0..self.roots().len())
            .filter(|&k| !self.is_projective_root(k))
            .map(|k| (k, self.ext_dim(&self.root_kp(k), lambda)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a2_labeling() {
        let lab = Lab::from_name("A2").unwrap();
        let rq = lab.repetition().unwrap();
        assert_eq!(rq.heights_of(), &[1, 0]);
        let s1 = lab.roots().simple_index(0);
        let s2 = lab.roots().simple_index(1);
        let top = lab.parse("[1,2]").unwrap().parts()[0];
        assert_eq!(rq.vertex_of(top, 0), Some((1, 0)));
        assert_eq!(rq.vertex_of(s1, 0), Some((0, 1)));
        assert_eq!(rq.vertex_of(s2, 0), Some((0, -1)));
        assert_eq!(rq.ar_vertices().len(), 3);
    }

    #[test]
    fn tau_of_s1_is_s2() {
        let lab = Lab::from_name("A2").unwrap();
        let rq = lab.repetition().unwrap();
        assert_eq!(apply(rq.coxeter_matrix(), &[1, 0]), vec![0, 1]);
        assert_eq!(apply(rq.coxeter_inverse(), &[0, 1]), vec![1, 0]);
    }

    #[test]
    fn window_too_small() {
        let lab = Lab::from_name("A3").unwrap();
        assert!(matches!(RepetitionQuiver::with_window(&lab, (0, 2)), Err(Error::Window(_))));
    }

    #[test]
    fn a2_vectors() {
        let lab = Lab::from_name("A2").unwrap();
        let rq = lab.repetition().unwrap();
        let w = lab.w_gamma(&rq, &lab.parse_dim("1,1").unwrap()).unwrap();
        assert_eq!(w.get(0, 1), 1);
        assert_eq!(w.get(0, -1), 1);
        assert_eq!(w.mass(), 2);
        let v = lab.v_lambda(&rq, &lab.parse("[1,2]").unwrap()).unwrap();
        assert_eq!(v.mass(), 1);
        assert_eq!(v.get(0, 1 + V_SHIFT), 1);
        assert!(lab.v_lambda(&rq, &lab.parse("[1,1]+[2,2]").unwrap()).unwrap().is_zero());
        let ck = lab.ck_dims(&lab.parse("[1,1]+[2,2]").unwrap());
        assert_eq!(ck[&lab.roots().simple_index(0)], 1);
    }

    #[test]
    fn cartan_q_on_delta() {
        let lab = Lab::from_name("A3").unwrap();
        let rq = lab.repetition().unwrap();
        let c = rq.cartan_q(lab.quiver(), &GradedDimVector::delta(1, 0)).unwrap();
        assert_eq!(c.get(1, 1), 1);
        assert_eq!(c.get(1, -1), 1);
        assert_eq!(c.get(0, 0), -1);
        assert_eq!(c.get(2, 0), -1);
        let far = GradedDimVector::delta(0, 100);
        assert!(matches!(rq.cartan_q(lab.quiver(), &far), Err(Error::Window(_))));
    }

    #[test]
    fn pairing_and_epsilon_basics() {
        let lab = Lab::from_name("A2").unwrap();
        let rq = lab.repetition().unwrap();
        let d = GradedDimVector::delta(0, 1);
        assert_eq!(d.pairing(&d), 1);
        assert_eq!(d.pairing(&GradedDimVector::delta(1, 1)), 0);
        let q = lab.quiver();
        assert_eq!(rq.epsilon(q, &d, &d, &d, &d).unwrap(), 0);
    }

    #[test]
    fn unitriangular_inverse_is_inverse() {
        let lab = Lab::from_name("D5").unwrap();
        let e = lab.quiver().euler_matrix();
        let inv = unitriangular_inverse(&e);
        let id = mat_mul(&e, &inv);
        for (r, row) in id.iter().enumerate() {
            for (c, &x) in row.iter().enumerate() {
                assert_eq!(x, (r == c) as i64);
            }
        }
    }
}
