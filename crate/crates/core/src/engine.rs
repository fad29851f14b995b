//! Enumeration context: a [`Lab`] plus the fields, the cap and result caches
//! shared by the Grassmannian and extension engines.

use std::collections::HashMap;
use std::ops::Deref;
use std::sync::{Arc, Mutex};

use crate::error::{Error, Result};
use crate::ext::{ExtMethod, ExtSetResult};
use crate::grassmann::StrataReport;
use crate::lab::Lab;
use crate::linalg::Field;
use crate::partition::KostantPartition;
use crate::quiver::DimVector;

pub const DEFAULT_CAP: u128 = 1 << 24;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumConfig {
    pub fields: Vec<Field>,
    pub cap: u128,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            fields: vec![Field::F2, Field::F3],
            cap: DEFAULT_CAP,
        }
    }
}

impl EnumConfig {
    pub fn new(fields: Vec<Field>, cap: u128) -> Result<Self> {
        if fields.is_empty() {
            return Err(Error::Precondition("at least one field is required".into()));
        }
        if cap == 0 {
            return Err(Error::Precondition("the cap must be positive".into()));
        }
        let mut fields = fields;
        fields.sort();
        fields.dedup();
        Ok(EnumConfig { fields, cap })
    }

    pub fn field_orders(&self) -> Vec<u8> {
        self.fields.iter().map(|f| f.order()).collect()
    }
}

type StrataKey = (KostantPartition, DimVector, Field);
type ExtKey = (KostantPartition, KostantPartition, ExtMethod);

#[derive(Debug)]
pub struct Engine {
    lab: Arc<Lab>,
    config: EnumConfig,
    strata: Mutex<HashMap<StrataKey, Arc<StrataReport>>>,
    ext_sets: Mutex<HashMap<ExtKey, Arc<ExtSetResult>>>,
}

impl Engine {
    pub fn new(lab: Arc<Lab>, config: EnumConfig) -> Self {
        Engine {
            lab,
            config,
            strata: Mutex::new(HashMap::new()),
            ext_sets: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_name(name: &str) -> Result<Self> {
        Ok(Self::new(Arc::new(Lab::from_name(name)?), EnumConfig::default()))
    }

    pub fn lab(&self) -> &Arc<Lab> {
        &self.lab
    }

    pub fn config(&self) -> &EnumConfig {
        &self.config
    }

    pub(crate) fn cached_strata(
        &self,
        key: StrataKey,
        compute: impl FnOnce() -> Result<StrataReport>,
    ) -> Result<Arc<StrataReport>> {
        if let Some(r) = self.strata.lock().expect("cache lock").get(&key) {
            return Ok(r.clone());
        }
        let r = Arc::new(compute()?);
        self.strata.lock().expect("cache lock").insert(key, r.clone());
        Ok(r)
    }

    pub(crate) fn cached_ext_set(
        &self,
        key: ExtKey,
        compute: impl FnOnce() -> Result<ExtSetResult>,
    ) -> Result<Arc<ExtSetResult>> {
        if let Some(r) = self.ext_sets.lock().expect("cache lock").get(&key) {
            return Ok(r.clone());
        }
        let r = Arc::new(compute()?);
        self.ext_sets.lock().expect("cache lock").insert(key, r.clone());
        Ok(r)
    }
}

impl Deref for Engine {
    type Target = Lab;

    fn deref(&self) -> &Lab {
        &self.lab
    }
}
