use std::collections::BTreeMap;
use std::sync::Arc;

use crate::exact::Scalar;

/// How the deriving transformation places the new tangent into a ket.
///
/// The standard rule prepends; alternative rules exist so the law suite can
/// be run against deliberately broken variants and shown to catch them.
pub trait DerivingRule: Send + Sync {
    fn name(&self) -> &'static str;

    /// Given a ket with `existing` tangents, the insertion index of the new
    /// tangent and the coefficient applied to the result.
    fn arrange(&self, existing: usize) -> (usize, Scalar);
}

/// `D(|ν₁,…,ν_s⟩_P ⊗ ν) = |ν,ν₁,…,ν_s⟩_P`.
#[derive(Debug, Default, Clone, Copy)]
pub struct Prepend;

impl DerivingRule for Prepend {
    fn name(&self) -> &'static str {
        "prepend"
    }

    fn arrange(&self, _existing: usize) -> (usize, Scalar) {
        (0, Scalar::one())
    }
}

/// Mutant: appends the new tangent and flips the sign.
#[derive(Debug, Default, Clone, Copy)]
pub struct AppendNegated;

impl DerivingRule for AppendNegated {
    fn name(&self) -> &'static str {
        "append-negated"
    }

    fn arrange(&self, existing: usize) -> (usize, Scalar) {
        (existing, Scalar::from_int(-1))
    }
}

/// Deriving rules registered by name.
pub struct DerivingRegistry {
    rules: BTreeMap<&'static str, Arc<dyn DerivingRule>>,
}

impl DerivingRegistry {
    pub fn empty() -> Self {
        DerivingRegistry { rules: BTreeMap::new() }
    }

    pub fn standard() -> Self {
        let mut r = Self::empty();
        r.register(Arc::new(Prepend));
        r.register(Arc::new(AppendNegated));
        r
    }

    pub fn register(&mut self, rule: Arc<dyn DerivingRule>) {
        self.rules.insert(rule.name(), rule);
    }

    pub fn get(&self, name: &str) -> Option<Arc<dyn DerivingRule>> {
        self.rules.get(name).cloned()
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.rules.keys().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let r = DerivingRegistry::standard();
        assert_eq!(r.names().collect::<Vec<_>>(), vec!["append-negated", "prepend"]);
        assert_eq!(r.get("prepend").unwrap().arrange(3), (0, Scalar::one()));
        assert_eq!(r.get("append-negated").unwrap().arrange(3), (3, Scalar::from_int(-1)));
        assert!(r.get("nope").is_none());
    }
}
