//! Shared computation context: quiver data, settings and memo tables.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::{Arc, Mutex};

use crate::cache::CharacterCache;
use crate::error::Result;
use crate::generic::CertifiedCones;
use crate::laurent::LaurentPoly;
use crate::quiver::{EulerData, Quiver};
use crate::rep::{derive_seed, DecomposeOptions, QRep};

/// Tunables shared by every randomized computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub rng_seed: u64,
    /// Rational samples are nonzero integers in [-sample_bound, sample_bound].
    pub sample_bound: i64,
    /// Certification rounds before giving up.
    pub retries: usize,
    /// Seeds that must agree for a generic value to be certified.
    pub certify_runs: usize,
    /// Upper bound on enumerated subspace tuples per point count.
    pub enumeration_cap: u64,
}

impl Default for Settings {
    fn default() -> Self {
        Settings {
            rng_seed: 1,
            sample_bound: 10,
            retries: 3,
            certify_runs: 5,
            enumeration_cap: 10_000_000,
        }
    }
}

pub(crate) struct MemoPiece {
    pub rep: QRep,
    pub conjugates: usize,
    pub cc: LaurentPoly,
}

/// Everything tied to one quiver. Methods live next to the algorithms in
/// `characters` and `generic`.
pub struct Engine {
    pub(crate) quiver: Arc<Quiver>,
    pub(crate) euler: EulerData,
    pub(crate) settings: Settings,
    /// Indecomposable pieces with known characters, grouped by dimension vector.
    pub(crate) pieces: Mutex<BTreeMap<Vec<usize>, Vec<MemoPiece>>>,
    pub(crate) characters: Mutex<BTreeMap<Vec<i64>, LaurentPoly>>,
    /// Certified cones keyed by (gamma0, gamma1).
    pub(crate) cones: Mutex<BTreeMap<Vec<i64>, CertifiedCones>>,
    pub(crate) cache: Option<CharacterCache>,
}

impl Engine {
    pub fn new(quiver: Quiver, settings: Settings) -> Self {
        Engine {
            euler: quiver.euler_data(),
            quiver: Arc::new(quiver),
            settings,
            pieces: Mutex::new(BTreeMap::new()),
            characters: Mutex::new(BTreeMap::new()),
            cones: Mutex::new(BTreeMap::new()),
            cache: None,
        }
    }

    /// Attach a persistent character cache stored at `path`.
    pub fn with_cache_file(mut self, path: &Path) -> Result<Self> {
        self.cache = Some(CharacterCache::open(path)?);
        Ok(self)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn euler(&self) -> &EulerData {
        &self.euler
    }

    pub fn settings(&self) -> &Settings {
        &self.settings
    }

    pub fn cache(&self) -> Option<&CharacterCache> {
        self.cache.as_ref()
    }

    /// Persist the character cache, if one is attached.
    pub fn flush_cache(&self) -> Result<()> {
        match &self.cache {
            Some(c) => c.save(),
            None => Ok(()),
        }
    }

    pub(crate) fn decompose_options(&self, stream: u64) -> DecomposeOptions {
        DecomposeOptions {
            seed: derive_seed(self.settings.rng_seed, stream),
            ..DecomposeOptions::default()
        }
    }

    /// Seed for repetition `k` of a computation identified by `key`.
    pub(crate) fn seed_for(&self, key: &[i64], k: u64) -> u64 {
        let mut s = derive_seed(self.settings.rng_seed, 0xC0FFEE);
        for &x in key {
            s = derive_seed(s, x as u64);
        }
        derive_seed(s, k)
    }
}
