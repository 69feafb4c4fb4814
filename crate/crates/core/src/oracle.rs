//! Brute-force reference computations over small prime fields.
//!
//! Everything here works straight from the definitions (enumerate every
//! vector, every pair, every invertible matrix) and is used to cross-check
//! the flag-based algorithms.

use std::collections::BTreeSet;

use crate::arith::{FieldScalar, FieldSpec, Rational};
use crate::error::{Error, Result};
use crate::fuzzy::{vector_to_index, FuzzyBasis, FuzzyFlag, PointwiseTable, Violation};
use crate::linalg::{Matrix, Subspace, Vector};
use crate::morphism::{zadeh_image, LinearMap};

/// Limits on brute-force enumeration.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct EnumerationBudget {
    /// Cap on `p^n`.
    pub max_vectors: u64,
    /// Cap on `p^(n²)`, the number of candidate matrices scanned for GL(n, p).
    pub max_maps: u64,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_vectors: 4096,
            max_maps: 300_000,
        }
    }
}

impl EnumerationBudget {
    fn prime(field: FieldSpec) -> Result<u64> {
        field.prime().ok_or(Error::RequiresPrimeField)
    }

    fn check_vectors(&self, field: FieldSpec, n: usize) -> Result<u64> {
        let p = Self::prime(field)?;
        match p.checked_pow(n as u32) {
            Some(c) if c <= self.max_vectors => Ok(c),
            _ => Err(Error::BudgetExceeded {
                what: "vectors",
                needed: format!("{p}^{n}"),
                limit: self.max_vectors,
            }),
        }
    }

    fn check_maps(&self, field: FieldSpec, n: usize) -> Result<u64> {
        let p = Self::prime(field)?;
        match p.checked_pow((n * n) as u32) {
            Some(c) if c <= self.max_maps => Ok(c),
            _ => Err(Error::BudgetExceeded {
                what: "matrices",
                needed: format!("{p}^{}", n * n),
                limit: self.max_maps,
            }),
        }
    }
}

/// Odometer over `GF(p)^n`, last coordinate fastest.
fn odometer(field: FieldSpec, n: usize, count: u64) -> Vec<Vec<FieldScalar>> {
    let p = field.prime().expect("prime field");
    let mut out = Vec::with_capacity(count as usize);
    let mut digits = vec![0u64; n];
    for _ in 0..count {
        out.push(digits.iter().map(|&d| field.residue(d)).collect());
        for d in digits.iter_mut().rev() {
            *d += 1;
            if *d < p {
                break;
            }
            *d = 0;
        }
    }
    out
}

/// All `p^n` vectors in lexicographic order.
pub fn enumerate_vectors(field: FieldSpec, n: usize, budget: &EnumerationBudget) -> Result<Vec<Vector>> {
    let count = budget.check_vectors(field, n)?;
    odometer(field, n, count)
        .into_iter()
        .map(|e| Vector::new(field, e))
        .collect()
}

/// Exhaustive check of `μ(x − y) ≥ min(μ(x), μ(y))` and `μ(αx) ≥ μ(x)`.
///
/// Returns the first violation: difference pairs are scanned with `y` in the
/// outer loop and `x` in the inner loop, both lexicographically, then scalar
/// pairs `(α, x)`.
pub fn check_axioms(tbl: &PointwiseTable, budget: &EnumerationBudget) -> Result<Option<Violation>> {
    let field = tbl.field();
    let vectors = enumerate_vectors(field, tbl.ambient(), budget)?;
    let grade = |v: &Vector| &tbl.grades()[vector_to_index(v) as usize];
    for y in &vectors {
        for x in &vectors {
            let bound = grade(x).min(grade(y));
            if grade(&x.sub(y)?) < bound {
                return Ok(Some(Violation::Difference {
                    x: x.clone(),
                    y: y.clone(),
                }));
            }
        }
    }
    for alpha in field.elements().expect("prime field") {
        for x in &vectors {
            if grade(&x.scale(&alpha)?) < grade(x) {
                return Ok(Some(Violation::Scalar { alpha, x: x.clone() }));
            }
        }
    }
    Ok(None)
}

/// Pointwise Zadeh image: the maximum of `tbl` over each fiber, 0 on empty
/// fibers.
pub fn zadeh_pointwise(f: &LinearMap, tbl: &PointwiseTable, budget: &EnumerationBudget) -> Result<PointwiseTable> {
    let field = tbl.field();
    if f.field() != field {
        return Err(Error::field_mismatch(f.field(), field));
    }
    if f.domain_dim() != tbl.ambient() {
        return Err(Error::dims(tbl.ambient(), f.domain_dim()));
    }
    let domain = enumerate_vectors(field, tbl.ambient(), budget)?;
    let size = budget.check_vectors(field, f.codomain_dim())?;
    let mut out = vec![Rational::zero(); size as usize];
    for (i, x) in domain.iter().enumerate() {
        let y = vector_to_index(&f.apply(x)?) as usize;
        if tbl.grades()[i] > out[y] {
            out[y] = tbl.grades()[i].clone();
        }
    }
    PointwiseTable::new(field, f.codomain_dim(), out)
}

/// Every subspace of `GF(p)^n`, ordered by dimension then echelon basis.
pub fn enumerate_subspaces(field: FieldSpec, n: usize, budget: &EnumerationBudget) -> Result<Vec<Subspace>> {
    let vectors = enumerate_vectors(field, n, budget)?;
    let mut seen = BTreeSet::new();
    let mut frontier = vec![Subspace::zero(field, n)];
    seen.insert(Subspace::zero(field, n));
    while let Some(s) = frontier.pop() {
        for v in &vectors {
            if s.contains(v)? {
                continue;
            }
            let mut gens = s.basis_vectors();
            gens.push(v.clone());
            let bigger = Subspace::span(field, n, &gens)?;
            if seen.insert(bigger.clone()) {
                frontier.push(bigger);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Strictly increasing chains of `subspaces` that end at the full space.
fn chains(subspaces: &[Subspace]) -> Result<Vec<Vec<Subspace>>> {
    fn grow(
        subspaces: &[Subspace],
        chain: &mut Vec<Subspace>,
        out: &mut Vec<Vec<Subspace>>,
    ) -> Result<()> {
        let last = chain.last().expect("nonempty chain").clone();
        if last.is_full() {
            out.push(chain.clone());
            return Ok(());
        }
        for s in subspaces {
            if s.dim() > last.dim() && last.is_subset(s)? {
                chain.push(s.clone());
                grow(subspaces, chain, out)?;
                chain.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    for s in subspaces {
        grow(subspaces, &mut vec![s.clone()], &mut out)?;
    }
    Ok(out)
}

/// All `k`-element subsets of `0..n`, lexicographic.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if k > n {
        return vec![];
    }
    let mut out = Vec::new();
    for first in 0..=n - k {
        for rest in combinations(n - first - 1, k - 1) {
            let mut c = vec![first];
            c.extend(rest.into_iter().map(|r| r + first + 1));
            out.push(c);
        }
    }
    out
}

/// Every flag over `GF(p)^n` whose levels come from `grid` (strictly
/// decreasing, inside `[0, 1]`): each subspace chain ending at `F^n`, paired
/// with each decreasing choice of grid levels of the right length.
pub fn enumerate_flags(
    field: FieldSpec,
    n: usize,
    grid: &[Rational],
    budget: &EnumerationBudget,
) -> Result<Vec<FuzzyFlag>> {
    for (i, t) in grid.iter().enumerate() {
        if !t.in_unit_interval() {
            return Err(Error::LevelOutOfRange { level: t.to_string() });
        }
        if i > 0 && *t >= grid[i - 1] {
            return Err(Error::LevelsNotDecreasing { index: i });
        }
    }
    let subspaces = enumerate_subspaces(field, n, budget)?;
    let mut flags = Vec::new();
    for chain in chains(&subspaces)? {
        for pick in combinations(grid.len(), chain.len()) {
            let entries = pick
                .iter()
                .zip(&chain)
                .map(|(&i, s)| (grid[i].clone(), s.clone()))
                .collect();
            flags.push(FuzzyFlag::new(field, n, entries)?);
        }
    }
    Ok(flags)
}

/// GL(n, p): the identity first, then every other invertible matrix in
/// lexicographic order of its row-major entries.
pub fn enumerate_invertible(field: FieldSpec, n: usize, budget: &EnumerationBudget) -> Result<Vec<LinearMap>> {
    let count = budget.check_maps(field, n)?;
    let identity = Matrix::identity(field, n);
    let mut maps = vec![LinearMap::new(identity.clone())];
    for entries in odometer(field, n * n, count) {
        let m = Matrix::new(field, n, n, entries)?;
        if m != identity && m.is_invertible() {
            maps.push(LinearMap::new(m));
        }
    }
    Ok(maps)
}

/// The orbit of one flag under GL(n, p), kept for repeated searches.
pub struct IsoSearch {
    images: Vec<(LinearMap, FuzzyFlag)>,
    field: FieldSpec,
    ambient: usize,
}

impl IsoSearch {
    pub fn new(mu: &FuzzyFlag, budget: &EnumerationBudget) -> Result<Self> {
        let images = enumerate_invertible(mu.field(), mu.ambient(), budget)?
            .into_iter()
            .map(|f| {
                let img = zadeh_image(&f, mu)?;
                Ok((f, img))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(IsoSearch {
            images,
            field: mu.field(),
            ambient: mu.ambient(),
        })
    }

    /// First map in enumeration order with `f(μ) = η`.
    pub fn find(&self, eta: &FuzzyFlag) -> Result<Option<&LinearMap>> {
        if eta.field() != self.field {
            return Err(Error::field_mismatch(self.field, eta.field()));
        }
        if eta.ambient() != self.ambient {
            return Ok(None);
        }
        for (f, img) in &self.images {
            if img.equals(eta)? {
                return Ok(Some(f));
            }
        }
        Ok(None)
    }
}

/// Direct search for an isomorphism `f` with `f(μ) = η`.
pub fn brute_force_iso(
    mu: &FuzzyFlag,
    eta: &FuzzyFlag,
    budget: &EnumerationBudget,
) -> Result<Option<LinearMap>> {
    if mu.field() != eta.field() {
        return Err(Error::field_mismatch(mu.field(), eta.field()));
    }
    if mu.ambient() != eta.ambient() {
        return Ok(None);
    }
    Ok(IsoSearch::new(mu, budget)?.find(eta)?.cloned())
}

/// Checks `μ(Σ c_i x_i) = min{μ(x_i) : c_i ≠ 0}` for every nonzero coefficient
/// tuple, plus that the grades are the memberships and the vectors a basis.
pub fn check_fuzzy_independence(mu: &FuzzyFlag, beta: &FuzzyBasis, budget: &EnumerationBudget) -> Result<bool> {
    let (field, n) = (mu.field(), mu.ambient());
    let vectors = beta.vectors();
    if vectors.len() != n || Matrix::from_rows(field, n, &vectors)?.rank() != n {
        return Ok(false);
    }
    for (v, g) in beta.elements() {
        if mu.membership(v)? != *g {
            return Ok(false);
        }
    }
    let count = budget.check_vectors(field, n)?;
    for coeffs in odometer(field, n, count).into_iter().skip(1) {
        let expected = coeffs
            .iter()
            .zip(beta.elements())
            .filter(|(c, _)| !c.is_zero())
            .map(|(_, (_, g))| g)
            .min()
            .expect("nonzero tuple");
        let z = Vector::combination(field, n, &coeffs, &vectors)?;
        if mu.membership(&z)? != *expected {
            return Ok(false);
        }
    }
    Ok(true)
}
