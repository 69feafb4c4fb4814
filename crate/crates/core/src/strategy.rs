//! Named isomorphism deciders, selectable at runtime.
//!
//! `profile` compares dimension profiles and builds the chain-pairing
//! witness; `brute-force` scans GL(n, p) directly. Both answer the same
//! question, so either can stand in for the other (or check it).

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::fuzzy::FuzzyFlag;
use crate::morphism::{are_isomorphic, witness_isomorphism, LinearMap};
use crate::oracle::{brute_force_iso, EnumerationBudget};

pub trait IsoDecider: Send + Sync {
    fn name(&self) -> &'static str;

    /// `Some(f)` with `f(μ) = η` when the flags are isomorphic.
    fn decide(&self, mu: &FuzzyFlag, eta: &FuzzyFlag) -> Result<Option<LinearMap>>;
}

pub struct ProfileDecider;

impl IsoDecider for ProfileDecider {
    fn name(&self) -> &'static str {
        "profile"
    }

    fn decide(&self, mu: &FuzzyFlag, eta: &FuzzyFlag) -> Result<Option<LinearMap>> {
        if !are_isomorphic(mu, eta)? {
            return Ok(None);
        }
        witness_isomorphism(mu, eta).map(Some)
    }
}

pub struct BruteForceDecider {
    pub budget: EnumerationBudget,
}

impl IsoDecider for BruteForceDecider {
    fn name(&self) -> &'static str {
        "brute-force"
    }

    fn decide(&self, mu: &FuzzyFlag, eta: &FuzzyFlag) -> Result<Option<LinearMap>> {
        brute_force_iso(mu, eta, &self.budget)
    }
}

type Factory = Box<dyn Fn(&EnumerationBudget) -> Box<dyn IsoDecider> + Send + Sync>;

pub struct DeciderRegistry {
    factories: BTreeMap<&'static str, Factory>,
}

impl DeciderRegistry {
    pub fn empty() -> Self {
        DeciderRegistry {
            factories: BTreeMap::new(),
        }
    }

    pub fn register<F>(&mut self, name: &'static str, factory: F)
    where
        F: Fn(&EnumerationBudget) -> Box<dyn IsoDecider> + Send + Sync + 'static,
    {
        self.factories.insert(name, Box::new(factory));
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.factories.keys().copied().collect()
    }

    pub fn get(&self, name: &str, budget: &EnumerationBudget) -> Result<Box<dyn IsoDecider>> {
        self.factories
            .get(name)
            .map(|make| make(budget))
            .ok_or_else(|| Error::UnknownMethod(name.to_string()))
    }
}

impl Default for DeciderRegistry {
    fn default() -> Self {
        let mut r = DeciderRegistry::empty();
        r.register("profile", |_| Box::new(ProfileDecider));
        r.register("brute-force", |b| Box::new(BruteForceDecider { budget: *b }));
        r
    }
}
