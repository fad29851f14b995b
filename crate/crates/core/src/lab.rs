//! Shared context for one quiver: roots, closed-form hom tables and a cache of
//! explicit indecomposables per field.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::hom::HomTable;
use crate::linalg::Field;
use crate::partition::KostantPartition;
use crate::quiver::{DimVector, DynkinQuiver};
use crate::rep::{self, hom_space_dim, Rep};
use crate::roots::RootTable;

#[derive(Debug)]
pub struct Lab {
    quiver: Arc<DynkinQuiver>,
    roots: RootTable,
    hom: HomTable,
    indecomposables: Mutex<HashMap<Field, Arc<Vec<Rep>>>>,
}

impl Lab {
    pub fn new(quiver: DynkinQuiver) -> Self {
        let roots = RootTable::new(&quiver);
        Self::from_parts(quiver, roots)
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(Self::new(DynkinQuiver::from_name(name)?))
    }

    /// Use an explicit reduced word (it must be adapted for `build` to work).
    pub fn with_word(quiver: DynkinQuiver, word: Vec<usize>) -> Result<Self> {
        let roots = RootTable::with_word(&quiver, word)?;
        Ok(Self::from_parts(quiver, roots))
    }

    fn from_parts(quiver: DynkinQuiver, roots: RootTable) -> Self {
        let hom = HomTable::new(&quiver, &roots);
        Lab {
            quiver: Arc::new(quiver),
            roots,
            hom,
            indecomposables: Mutex::new(HashMap::new()),
        }
    }

    pub fn quiver(&self) -> &Arc<DynkinQuiver> {
        &self.quiver
    }

    pub fn roots(&self) -> &RootTable {
        &self.roots
    }

    pub fn hom_table(&self) -> &HomTable {
        &self.hom
    }

    pub fn rank(&self) -> usize {
        self.quiver.rank()
    }

    pub fn parse(&self, text: &str) -> Result<KostantPartition> {
        KostantPartition::parse(text, &self.quiver, &self.roots)
    }

    pub fn format(&self, lambda: &KostantPartition) -> String {
        lambda.format(&self.quiver, &self.roots)
    }

    pub fn parse_dim(&self, text: &str) -> Result<DimVector> {
        self.quiver.parse_dim(text)
    }

    pub fn format_dim(&self, v: &DimVector) -> String {
        self.quiver.format_dim(v)
    }

    pub fn kps(&self, gamma: &DimVector) -> Vec<KostantPartition> {
        KostantPartition::enumerate(&self.roots, gamma)
    }

    /// Every Kostant partition whose total has coordinate sum at most `max_total`.
    pub fn kps_up_to(&self, max_total: i64) -> Vec<KostantPartition> {
        DimVector::all_up_to(self.rank(), max_total)
            .iter()
            .flat_map(|g| self.kps(g))
            .collect()
    }

    pub fn root_kp(&self, k: usize) -> KostantPartition {
        KostantPartition::single(&self.roots, k)
    }

    pub fn simple_kp(&self, v: usize) -> KostantPartition {
        self.root_kp(self.roots.simple_index(v))
    }

    pub fn empty_kp(&self) -> KostantPartition {
        KostantPartition::empty(self.rank())
    }

    /// Indecomposables over `field`, indexed by root position.
    pub fn indecomposables(&self, field: Field) -> Result<Arc<Vec<Rep>>> {
        if let Some(v) = self.indecomposables.lock().expect("cache lock").get(&field) {
            return Ok(v.clone());
        }
        let built: Vec<Rep> = (0..self.roots.len())
            .map(|k| rep::indecomposable(&self.quiver, &self.roots, field, k))
            .collect::<Result<_>>()?;
        let built = Arc::new(built);
        self.indecomposables
            .lock()
            .expect("cache lock")
            .insert(field, built.clone());
        Ok(built)
    }

    pub fn indecomposable(&self, k: usize, field: Field) -> Result<Rep> {
        Ok(self.indecomposables(field)?[k].clone())
    }

    /// Direct sum of the indecomposables of the parts, in increasing root order.
    pub fn build(&self, lambda: &KostantPartition, field: Field) -> Result<Rep> {
        if lambda.total().len() != self.rank() {
            return Err(Error::DimensionMismatch("partition from another quiver".into()));
        }
        let inds = self.indecomposables(field)?;
        let mut out = Rep::zero(self.quiver.clone(), field);
        for &k in lambda.parts().iter().rev() {
            out = out.direct_sum(&inds[k])?;
        }
        Ok(out)
    }

    /// Isomorphism class of `m`, recovered from `dim Hom(M_beta, M)` for every
    /// root by forward substitution in the unitriangular hom table.
    pub fn identify(&self, m: &Rep) -> Result<KostantPartition> {
        let inds = self.indecomposables(m.field())?;
        let n = self.roots.len();
        let mut mult = vec![0usize; n];
        for a in 0..n {
            let h = hom_space_dim(&inds[a], m)? as i64;
            let mut rest = h;
            for (b, &mb) in mult.iter().enumerate().take(a) {
                rest -= self.hom.hom(a, b) as i64 * mb as i64;
            }
            if rest < 0 {
                return Err(Error::Internal(format!(
                    "negative multiplicity {rest} for root {}",
                    self.quiver.format_dim(self.roots.root(a))
                )));
            }
            mult[a] = rest as usize;
        }
        let lambda = KostantPartition::from_multiplicities(&self.roots, &mult);
        if lambda.total() != m.dim() {
            return Err(Error::Internal(format!(
                "identified class has dimension {} but the representation has {}",
                self.quiver.format_dim(lambda.total()),
                self.quiver.format_dim(m.dim())
            )));
        }
        Ok(lambda)
    }
}
