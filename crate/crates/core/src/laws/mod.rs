//! Seeded law suites over the bang coalgebra, the residue pairing, the
//! semantics and the bundled encodings.
//!
//! Every law is a [`Law`] trait object registered by name in a
//! [`LawRegistry`]. A run draws each trial from its own RNG stream, derived
//! from the seed, the law name and the trial index, so results do not depend
//! on scheduling. Trials run on the rayon pool and are reported in index
//! order.

mod bang;
mod gen;
mod pairing;
mod semantic;

use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bang::{DerivingRule, Prepend};
use crate::error::Result;
use crate::semantics::observe::fnv;
use crate::semantics::ProbeConfig;

pub use gen::{random_element, random_polynomial, random_vec, Sample};

#[derive(Clone)]
pub struct LawConfig {
    pub seed: u64,
    /// Trials per randomized law.
    pub trials: usize,
    /// Largest base dimension drawn for random elements. The semantic laws
    /// always work over `A = k²`.
    pub dim: usize,
    /// Largest tangent count of a random ket.
    pub max_tangents: usize,
    pub probe: ProbeConfig,
    pub deriving: Arc<dyn DerivingRule>,
}

impl Default for LawConfig {
    fn default() -> Self {
        LawConfig {
            seed: crate::semantics::observe::DEFAULT_SEED,
            trials: 200,
            dim: 2,
            max_tangents: 3,
            probe: ProbeConfig::default(),
            deriving: Arc::new(Prepend),
        }
    }
}

/// One checkable law.
pub trait Law: Send + Sync {
    fn name(&self) -> &'static str;

    fn group(&self) -> &'static str;

    fn summary(&self) -> &'static str;

    /// Number of trials under `cfg`. Enumerative laws fix their own count.
    fn trials(&self, cfg: &LawConfig) -> usize {
        cfg.trials
    }

    /// Run trial `index`; `None` on success, a witness on failure.
    fn check(&self, index: usize, rng: &mut ChaCha8Rng, cfg: &LawConfig) -> Result<Option<String>>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub trial: usize,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LawReport {
    pub name: &'static str,
    pub group: &'static str,
    pub trials: usize,
    pub passed: usize,
    /// The failure with the smallest trial index.
    pub first_failure: Option<Failure>,
}

impl LawReport {
    pub fn ok(&self) -> bool {
        self.first_failure.is_none()
    }
}

fn trial_rng(cfg: &LawConfig, name: &str, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ fnv(name));
    rng.set_stream(index as u64);
    rng
}

pub fn run_law(law: &dyn Law, cfg: &LawConfig) -> LawReport {
    let n = law.trials(cfg);
    let outcomes: Vec<Option<String>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = trial_rng(cfg, law.name(), i);
            match law.check(i, &mut rng, cfg) {
                Ok(w) => w,
                Err(e) => Some(format!("error: {e}")),
            }
        })
        .collect();
    let first_failure = outcomes
        .iter()
        .enumerate()
        .find_map(|(trial, w)| w.clone().map(|witness| Failure { trial, witness }));
    LawReport {
        name: law.name(),
        group: law.group(),
        trials: n,
        passed: outcomes.iter().filter(|w| w.is_none()).count(),
        first_failure,
    }
}

/// Laws registered by name, kept in registration order.
#[derive(Clone, Default)]
pub struct LawRegistry {
    laws: Vec<Arc<dyn Law>>,
}

impl LawRegistry {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        bang::register(&mut r);
        pairing::register(&mut r);
        semantic::register(&mut r);
        r
    }

    pub fn register(&mut self, law: Arc<dyn Law>) {
        self.laws.retain(|l| l.name() != law.name());
        self.laws.push(law);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn Law>> {
        self.laws.iter().find(|l| l.name() == name).cloned()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Arc<dyn Law>> {
        self.laws.iter()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.laws.iter().map(|l| l.name())
    }

    /// Laws whose name or group equals `key`.
    pub fn select(&self, key: &str) -> Vec<Arc<dyn Law>> {
        self.laws
            .iter()
            .filter(|l| l.name() == key || l.group() == key)
            .cloned()
            .collect()
    }

    pub fn run(&self, cfg: &LawConfig) -> Vec<LawReport> {
        self.laws.iter().map(|l| run_law(l.as_ref(), cfg)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bang::AppendNegated;

    fn quick() -> LawConfig {
        LawConfig {
            trials: 25,
            ..LawConfig::default()
        }
    }

    #[test]
    fn names_are_unique() {
        let r = LawRegistry::standard();
        let mut names: Vec<_> = r.names().collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
        assert_eq!(n, 38);
        assert!(r.get("d4-chain-rule").is_some());
        assert_eq!(r.select("deriving").len(), 4);
    }

    #[test]
    fn element_laws_pass() {
        let r = LawRegistry::standard();
        for group in ["coalgebra", "deriving", "hopf", "comonad", "pairing"] {
            for law in r.select(group) {
                let report = run_law(law.as_ref(), &quick());
                assert!(report.ok(), "{}: {:?}", report.name, report.first_failure);
                assert_eq!(report.passed, report.trials);
            }
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let r = LawRegistry::standard();
        let law = r.get("d2-product-rule").unwrap();
        let cfg = LawConfig {
            deriving: Arc::new(AppendNegated),
            ..quick()
        };
        let chain = r.get("d4-chain-rule").unwrap();
        let a = run_law(chain.as_ref(), &cfg);
        let b = run_law(chain.as_ref(), &cfg);
        assert_eq!(a, b);
        assert!(!a.ok());
        assert!(run_law(law.as_ref(), &cfg).ok());
    }
}
