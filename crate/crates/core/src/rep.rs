//! Explicit representations over a prime field.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{rank_of, FFMatrix, Field};
use crate::quiver::{DimVector, DynkinQuiver};
use crate::roots::RootTable;

/// A representation: one matrix of shape `dim[t] x dim[s]` per arrow `s -> t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rep {
    quiver: Arc<DynkinQuiver>,
    field: Field,
    dim: DimVector,
    maps: Vec<FFMatrix>,
}

impl Rep {
    pub fn new(quiver: Arc<DynkinQuiver>, field: Field, dim: DimVector, maps: Vec<FFMatrix>) -> Result<Self> {
        if dim.len() != quiver.rank() {
            return Err(Error::DimensionMismatch(format!(
                "dimension vector of length {} for rank {}",
                dim.len(),
                quiver.rank()
            )));
        }
        if maps.len() != quiver.arrows().len() {
            return Err(Error::Shape(format!(
                "{} matrices for {} arrows",
                maps.len(),
                quiver.arrows().len()
            )));
        }
        for (h, (&(s, t), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.field() != field {
                return Err(Error::Shape(format!("arrow {h} is over {}", m.field())));
            }
            if m.rows() as i64 != dim.get(t) || m.cols() as i64 != dim.get(s) {
                return Err(Error::Shape(format!(
                    "arrow {h} has a {}x{} matrix, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dim.get(t),
                    dim.get(s)
                )));
            }
        }
        Ok(Rep {
            quiver,
            field,
            dim,
            maps,
        })
    }

    /// All arrows act by zero.
    pub fn zero_maps(quiver: Arc<DynkinQuiver>, field: Field, dim: DimVector) -> Result<Self> {
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| FFMatrix::zeros(field, dim.get(t) as usize, dim.get(s) as usize))
            .collect();
        Self::new(quiver, field, dim, maps)
    }

    pub fn zero(quiver: Arc<DynkinQuiver>, field: Field) -> Self {
        let n = quiver.rank();
        Self::zero_maps(quiver, field, DimVector::zero(n)).expect("shapes match")
    }

    pub fn simple(quiver: Arc<DynkinQuiver>, field: Field, v: usize) -> Self {
        let n = quiver.rank();
        Self::zero_maps(quiver, field, DimVector::unit(n, v)).expect("shapes match")
    }

    /// Interval module of a type-A segment `[a, b]` (user labels) with identity maps.
    pub fn chain_module(quiver: Arc<DynkinQuiver>, field: Field, a: usize, b: usize) -> Result<Self> {
        if quiver.kind() != crate::quiver::DiagramType::A {
            return Err(Error::Precondition("chain modules need type A".into()));
        }
        let coords: Vec<i64> = (1..=quiver.rank()).map(|l| (a <= l && l <= b) as i64).collect();
        let dim = quiver.from_user(&coords)?;
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| {
                let (ds, dt) = (dim.get(s) as usize, dim.get(t) as usize);
                if ds == 1 && dt == 1 {
                    FFMatrix::identity(field, 1)
                } else {
                    FFMatrix::zeros(field, dt, ds)
                }
            })
            .collect();
        Self::new(quiver, field, dim, maps)
    }

    pub fn quiver(&self) -> &Arc<DynkinQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> &DimVector {
        &self.dim
    }

    pub fn maps(&self) -> &[FFMatrix] {
        &self.maps
    }

    pub fn map(&self, h: usize) -> &FFMatrix {
        &self.maps[h]
    }

    fn check_compatible(&self, other: &Rep) -> Result<()> {
        if self.field != other.field {
            return Err(Error::Precondition(format!(
                "representations over {} and {}",
                self.field, other.field
            )));
        }
        if self.quiver != other.quiver {
            return Err(Error::Precondition("representations of different quivers".into()));
        }
        Ok(())
    }

    /// Block-diagonal direct sum.
    pub fn direct_sum(&self, other: &Rep) -> Result<Rep> {
        self.check_compatible(other)?;
        let dim = &self.dim + &other.dim;
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| {
                let mut m = FFMatrix::zeros(self.field, a.rows() + b.rows(), a.cols() + b.cols());
                for r in 0..a.rows() {
                    for c in 0..a.cols() {
                        m.set(r, c, a.get(r, c));
                    }
                }
                for r in 0..b.rows() {
                    for c in 0..b.cols() {
                        m.set(a.rows() + r, a.cols() + c, b.get(r, c));
                    }
                }
                m
            })
            .collect();
        Rep::new(self.quiver.clone(), self.field, dim, maps)
    }

    /// Transport by invertible matrices `g_v`: `x_h -> g_t x_h g_s^{-1}`.
    pub fn base_change(&self, g: &[FFMatrix]) -> Result<Rep> {
        if g.len() != self.quiver.rank() {
            return Err(Error::Shape("one matrix per vertex required".into()));
        }
        let inverses: Vec<FFMatrix> = g.iter().map(FFMatrix::inverse).collect::<Result<_>>()?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .zip(&self.maps)
            .map(|(&(s, t), x)| g[t].mul(x)?.mul(&inverses[s]))
            .collect::<Result<_>>()?;
        Rep::new(self.quiver.clone(), self.field, self.dim.clone(), maps)
    }

    /// Whether `w` (one basis matrix per vertex, rows spanning `W_v`) is stable
    /// under every arrow.
    pub fn is_stable(&self, w: &[FFMatrix]) -> bool {
        self.quiver.arrows().iter().enumerate().all(|(h, &(s, t))| {
            let ws = &w[s];
            let wt = &w[t];
            let base = wt.rank();
            (0..ws.rows()).all(|r| {
                let img = self.maps[h].apply(ws.row(r));
                let mut data: Vec<u8> = (0..wt.rows()).flat_map(|k| wt.row(k).to_vec()).collect();
                data.extend_from_slice(&img);
                rank_of(self.field, data, wt.rows() + 1, wt.cols()) == base
            })
        })
    }

    /// Subrepresentation on `w` and the induced quotient. Bases of `w` are put in
    /// RREF; the quotient uses the standard vectors at non-pivot columns.
    pub fn sub_quotient(&self, w: &[FFMatrix]) -> Result<(Rep, Rep)> {
        let n = self.quiver.rank();
        if w.len() != n {
            return Err(Error::Shape("one subspace per vertex required".into()));
        }
        let mut bases = Vec::with_capacity(n);
        for (v, wv) in w.iter().enumerate() {
            if wv.cols() as i64 != self.dim.get(v) || wv.field() != self.field {
                return Err(Error::Shape(format!("subspace at vertex {v} has the wrong shape")));
            }
            let (red, piv) = wv.rref();
            let basis = FFMatrix::from_data(
                self.field,
                piv.len(),
                wv.cols(),
                (0..piv.len()).flat_map(|r| red.row(r).to_vec()).collect(),
            )?;
            let free: Vec<usize> = (0..wv.cols()).filter(|c| !piv.contains(c)).collect();
            bases.push((basis, piv, free));
        }
        let f = self.field;
        let sub_dim = DimVector::new(bases.iter().map(|b| b.1.len() as i64).collect())?;
        let quot_dim = DimVector::new(bases.iter().map(|b| b.2.len() as i64).collect())?;
        let mut sub_maps = Vec::new();
        let mut quot_maps = Vec::new();
        for (h, &(s, t)) in self.quiver.arrows().iter().enumerate() {
            let x = &self.maps[h];
            let (bs, _, free_s) = &bases[s];
            let (bt, piv_t, free_t) = &bases[t];
            // Express x(v) = sum a_r w_r + residual, residual supported off the pivots.
            let split = |v: Vec<u8>| -> (Vec<u8>, Vec<u8>) {
                let coeffs: Vec<u8> = piv_t.iter().map(|&p| v[p]).collect();
                let mut resid = v;
                for (r, &a) in coeffs.iter().enumerate() {
                    if a != 0 {
                        for (c, e) in resid.iter_mut().enumerate() {
                            *e = f.sub(*e, f.mul(a, bt.get(r, c)));
                        }
                    }
                }
                (coeffs, resid)
            };
            let mut y = FFMatrix::zeros(f, piv_t.len(), bs.rows());
            for r in 0..bs.rows() {
                let (coeffs, resid) = split(x.apply(bs.row(r)));
                if resid.iter().any(|&e| e != 0) {
                    return Err(Error::Precondition(format!(
                        "subspace is not stable under arrow {}->{}",
                        self.quiver.label(s),
                        self.quiver.label(t)
                    )));
                }
                for (k, &a) in coeffs.iter().enumerate() {
                    y.set(k, r, a);
                }
            }
            let mut z = FFMatrix::zeros(f, free_t.len(), free_s.len());
            for (col, &c) in free_s.iter().enumerate() {
                let (_, resid) = split(x.column(c));
                for (k, &fc) in free_t.iter().enumerate() {
                    z.set(k, col, resid[fc]);
                }
            }
            sub_maps.push(y);
            quot_maps.push(z);
        }
        Ok((
            Rep::new(self.quiver.clone(), f, sub_dim, sub_maps)?,
            Rep::new(self.quiver.clone(), f, quot_dim, quot_maps)?,
        ))
    }
}

/// Dimension of `Hom(M, N)`: the nullity of the system `N_h f_s = f_t M_h`.
pub fn hom_space_dim(m: &Rep, n: &Rep) -> Result<usize> {
    m.check_compatible(n)?;
    let q = &m.quiver;
    let rank = q.rank();
    let md: Vec<usize> = (0..rank).map(|v| m.dim.get(v) as usize).collect();
    let nd: Vec<usize> = (0..rank).map(|v| n.dim.get(v) as usize).collect();
    let mut offset = vec![0; rank + 1];
    for v in 0..rank {
        offset[v + 1] = offset[v] + nd[v] * md[v];
    }
    let vars = offset[rank];
    if vars == 0 {
        return Ok(0);
    }
    let eqs: usize = q.arrows().iter().map(|&(s, t)| nd[t] * md[s]).sum();
    let f = m.field;
    let mut data = vec![0u8; eqs * vars];
    let mut row = 0;
    for (h, &(s, t)) in q.arrows().iter().enumerate() {
        let (xm, xn) = (&m.maps[h], &n.maps[h]);
        for r in 0..nd[t] {
            for c in 0..md[s] {
                let base = row * vars;
                // (N_h f_s)[r][c] = sum_k N_h[r][k] f_s[k][c]
                for k in 0..nd[s] {
                    let idx = base + offset[s] + k * md[s] + c;
                    data[idx] = f.add(data[idx], xn.get(r, k));
                }
                // (f_t M_h)[r][c] = sum_k f_t[r][k] M_h[k][c]
                for k in 0..md[t] {
                    let idx = base + offset[t] + r * md[t] + k;
                    data[idx] = f.sub(data[idx], xm.get(k, c));
                }
                row += 1;
            }
        }
    }
    Ok(vars - rank_of(f, data, eqs, vars))
}

/// Representation with arbitrary orientation used while applying reflection functors.
struct FreeRep {
    arrows: Vec<(usize, usize)>,
    dim: Vec<usize>,
    maps: Vec<FFMatrix>,
}

impl FreeRep {
    /// Sink reflection at `i`: the new space is the kernel of `(x_h)_h : + V_j -> V_i`.
    fn reflect_at_sink(&mut self, f: Field, i: usize) {
        let incoming: Vec<usize> = (0..self.arrows.len()).filter(|&h| self.arrows[h].1 == i).collect();
        let widths: Vec<usize> = incoming.iter().map(|&h| self.dim[self.arrows[h].0]).collect();
        let total: usize = widths.iter().sum();
        let mut phi = FFMatrix::zeros(f, self.dim[i], total);
        let mut col = 0;
        for (&h, &w) in incoming.iter().zip(&widths) {
            for r in 0..self.dim[i] {
                for c in 0..w {
                    phi.set(r, col + c, self.maps[h].get(r, c));
                }
            }
            col += w;
        }
        let kernel = phi.kernel_basis();
        let k = kernel.rows();
        let mut col = 0;
        for (&h, &w) in incoming.iter().zip(&widths) {
            let (j, _) = self.arrows[h];
            let mut m = FFMatrix::zeros(f, w, k);
            for c in 0..k {
                for r in 0..w {
                    m.set(r, c, kernel.get(c, col + r));
                }
            }
            self.arrows[h] = (i, j);
            self.maps[h] = m;
            col += w;
        }
        self.dim[i] = k;
    }
}

/// Indecomposable of a root via sink reflection functors applied to a simple.
pub fn indecomposable(quiver: &Arc<DynkinQuiver>, roots: &RootTable, field: Field, k: usize) -> Result<Rep> {
    let word = roots.word();
    let n = quiver.rank();
    // orientations[j] is the quiver reflected at sources word[0..j].
    let mut orientations = vec![quiver.arrows().to_vec()];
    for &i in &word[..k] {
        let mut next = orientations.last().expect("nonempty").clone();
        for a in next.iter_mut() {
            if a.0 == i || a.1 == i {
                *a = (a.1, a.0);
            }
        }
        orientations.push(next);
    }
    let arrows = orientations[k].clone();
    let mut dim = vec![0; n];
    dim[word[k]] = 1;
    let maps = arrows
        .iter()
        .map(|&(s, t)| FFMatrix::zeros(field, dim[t], dim[s]))
        .collect();
    let mut rep = FreeRep { arrows, dim, maps };
    for j in (0..k).rev() {
        if rep.arrows.iter().any(|&(s, _)| s == word[j]) {
            return Err(Error::Precondition(
                "reduced word is not adapted to the orientation".into(),
            ));
        }
        rep.reflect_at_sink(field, word[j]);
        debug_assert_eq!(rep.arrows, orientations[j]);
    }
    let dim = DimVector::new(rep.dim.iter().map(|&d| d as i64).collect())?;
    if &dim != roots.root(k) {
        return Err(Error::Internal(format!(
            "reflection functors produced dimension {:?} for root {:?}",
            dim.coords(),
            roots.root(k).coords()
        )));
    }
    Rep::new(quiver.clone(), field, dim, rep.maps)
}
