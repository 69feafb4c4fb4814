//! Exhaustive cross-check of the profile criterion against direct search.

use std::fmt;

use crate::arith::{FieldSpec, Rational};
use crate::error::Result;
use crate::fuzzy::FuzzyFlag;
use crate::morphism::{are_isomorphic, check_isomorphism, witness_isomorphism, zadeh_image};
use crate::oracle::{enumerate_flags, EnumerationBudget, IsoSearch};

#[derive(Clone, Debug, Default)]
pub struct Certificate {
    pub flags: usize,
    pub pairs: usize,
    pub isomorphic_pairs: usize,
    /// `(i, j)` where the profile test and the GL(n, p) search disagree.
    pub disagreements: Vec<(usize, usize)>,
    /// `(i, j)` declared isomorphic whose constructed witness fails.
    pub witness_failures: Vec<(usize, usize)>,
    /// Flags with more than `n + 1` levels.
    pub oversized_images: Vec<usize>,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty() && self.witness_failures.is_empty() && self.oversized_images.is_empty()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "flags: {}", self.flags)?;
        writeln!(f, "pairs: {}", self.pairs)?;
        writeln!(f, "isomorphic pairs: {}", self.isomorphic_pairs)?;
        writeln!(f, "disagreements: {}", self.disagreements.len())?;
        writeln!(f, "witness failures: {}", self.witness_failures.len())?;
        writeln!(f, "image-set bound violations: {}", self.oversized_images.len())?;
        writeln!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

/// Runs every ordered pair of `flags` through both deciders.
pub fn certify_flags(flags: &[FuzzyFlag], budget: &EnumerationBudget) -> Result<Certificate> {
    let mut cert = Certificate {
        flags: flags.len(),
        ..Default::default()
    };
    for (i, mu) in flags.iter().enumerate() {
        if mu.len() > mu.ambient() + 1 {
            cert.oversized_images.push(i);
        }
        let search = IsoSearch::new(mu, budget)?;
        for (j, eta) in flags.iter().enumerate() {
            cert.pairs += 1;
            let by_profile = are_isomorphic(mu, eta)?;
            let by_search = search.find(eta)?.is_some();
            if by_profile != by_search {
                cert.disagreements.push((i, j));
            }
            if !by_profile {
                continue;
            }
            cert.isomorphic_pairs += 1;
            let sound = witness_isomorphism(mu, eta).is_ok_and(|w| {
                check_isomorphism(&w, mu, eta).is_ok()
                    && zadeh_image(&w, mu).is_ok_and(|img| img.equals(eta).unwrap_or(false))
            });
            if !sound {
                cert.witness_failures.push((i, j));
            }
        }
    }
    Ok(cert)
}

pub fn certify(field: FieldSpec, n: usize, grid: &[Rational], budget: &EnumerationBudget) -> Result<Certificate> {
    let flags = enumerate_flags(field, n, grid, budget)?;
    certify_flags(&flags, budget)
}
