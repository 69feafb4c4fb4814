//! Fuzzy subspaces with finite image, stored as level flags.
//!
//! A [`FuzzyFlag`] pairs strictly decreasing levels `t_0 > … > t_m` with a
//! strictly increasing chain `V_0 ⊊ … ⊊ V_m = F^n`. The membership grade of
//! `x` is `t_i` for the first `V_i` containing `x`, so the level set at `t` is
//! the last `V_i` with `t_i ≥ t`. Every such function satisfies the fuzzy
//! subspace axioms, and every fuzzy subspace of a finite-dimensional space
//! has this shape.

use std::fmt;

use crate::arith::{FieldScalar, FieldSpec, Rational};
use crate::error::{Error, Result};
use crate::linalg::{extend_basis, Subspace, Vector};

/// Largest `p^n` accepted for pointwise tables.
pub const MAX_TABLE_SIZE: u64 = 1_000_000;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FlagEntry {
    pub level: Rational,
    pub space: Subspace,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct FuzzyFlag {
    field: FieldSpec,
    ambient: usize,
    entries: Vec<FlagEntry>,
}

impl FuzzyFlag {
    /// Validates raw `(level, subspace)` pairs into a flag.
    pub fn new(field: FieldSpec, ambient: usize, entries: Vec<(Rational, Subspace)>) -> Result<Self> {
        validate_flag(field, ambient, entries)
    }

    /// The fuzzy subspace that grades every vector `level`.
    pub fn constant(field: FieldSpec, ambient: usize, level: Rational) -> Result<Self> {
        Self::new(field, ambient, vec![(level, Subspace::full(field, ambient))])
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn entries(&self) -> &[FlagEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `μ(0)`, the largest grade.
    pub fn top_level(&self) -> &Rational {
        &self.entries[0].level
    }

    pub fn levels(&self) -> impl Iterator<Item = &Rational> {
        self.entries.iter().map(|e| &e.level)
    }

    pub fn spaces(&self) -> impl Iterator<Item = &Subspace> {
        self.entries.iter().map(|e| &e.space)
    }

    /// The image set `t_0 > t_1 > … > t_m`.
    pub fn image_set(&self) -> Vec<Rational> {
        self.levels().cloned().collect()
    }

    pub fn membership(&self, x: &Vector) -> Result<Rational> {
        for e in &self.entries {
            if e.space.contains(x)? {
                return Ok(e.level.clone());
            }
        }
        unreachable!("the last level subspace is the whole space")
    }

    /// The level set `μ_t = {x : μ(x) ≥ t}`, or `None` when `t > μ(0)`.
    pub fn level_subspace(&self, t: &Rational) -> Result<Option<&Subspace>> {
        if !t.in_unit_interval() {
            return Err(Error::LevelOutOfRange {
                level: t.to_string(),
            });
        }
        Ok(self
            .entries
            .iter()
            .take_while(|e| &e.level >= t)
            .last()
            .map(|e| &e.space))
    }

    /// The restriction `μ|A`, as a flag on `F^{dim A}` in the coordinates of
    /// `A`'s canonical basis.
    pub fn restrict(&self, a: &Subspace) -> Result<FuzzyFlag> {
        if a.field() != self.field {
            return Err(Error::field_mismatch(self.field, a.field()));
        }
        if a.ambient() != self.ambient {
            return Err(Error::dims(self.ambient, a.ambient()));
        }
        let mut entries: Vec<(Rational, Subspace)> = Vec::new();
        for e in &self.entries {
            let cut = a.relative(&e.space.intersect(a)?)?;
            if entries.last().is_some_and(|(_, prev)| *prev == cut) {
                continue;
            }
            entries.push((e.level.clone(), cut));
        }
        FuzzyFlag::new(self.field, a.dim(), entries)
    }

    /// The flag's canonical fuzzy basis: `V_0`'s echelon rows, then the
    /// [`extend_basis`] completion through each `V_i`, graded `t_i`.
    pub fn fuzzy_basis(&self) -> FuzzyBasis {
        let mut elements = Vec::with_capacity(self.ambient);
        let mut prev = Subspace::zero(self.field, self.ambient);
        for e in &self.entries {
            let added = extend_basis(&prev, &e.space).expect("flag chain is nested");
            elements.extend(added.into_iter().map(|v| (v, e.level.clone())));
            prev = e.space.clone();
        }
        FuzzyBasis { elements }
    }

    /// Sum of the grades of a fuzzy basis.
    pub fn dimension(&self) -> Rational {
        self.fuzzy_basis().grade_sum()
    }

    /// `Σ t_i · (dim V_i − dim V_{i−1})`.
    pub fn dimension_closed_form(&self) -> Rational {
        let mut prev = 0usize;
        let mut total = Rational::zero();
        for e in &self.entries {
            let d = e.space.dim();
            total = total + &e.level * &Rational::from((d - prev) as i64);
            prev = d;
        }
        total
    }

    fn check_same_space(&self, other: &FuzzyFlag) -> Result<()> {
        if self.field != other.field {
            return Err(Error::field_mismatch(self.field, other.field));
        }
        if self.ambient != other.ambient {
            return Err(Error::dims(self.ambient, other.ambient));
        }
        Ok(())
    }

    /// Equality as fuzzy sets. Flags are canonical, so this is structural.
    pub fn equals(&self, other: &FuzzyFlag) -> Result<bool> {
        self.check_same_space(other)?;
        Ok(self.entries == other.entries)
    }

    /// Grades of every vector of `GF(p)^n`, in lexicographic vector order.
    pub fn to_pointwise(&self) -> Result<PointwiseTable> {
        let size = table_size(self.field, self.ambient)?;
        let grades = (0..size)
            .map(|i| self.membership(&index_to_vector(self.field, self.ambient, i)))
            .collect::<Result<Vec<_>>>()?;
        PointwiseTable::new(self.field, self.ambient, grades)
    }
}

impl fmt::Display for FuzzyFlag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, e) in self.entries.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "({}, {})", e.level, e.space)?;
        }
        write!(f, "]")
    }
}

/// Checks the flag invariants: levels in `[0, 1]` and strictly decreasing,
/// subspaces strictly increasing, and the last one equal to `F^n`.
pub fn validate_flag(
    field: FieldSpec,
    ambient: usize,
    raw: Vec<(Rational, Subspace)>,
) -> Result<FuzzyFlag> {
    for (i, (level, space)) in raw.iter().enumerate() {
        if space.field() != field {
            return Err(Error::field_mismatch(field, space.field()));
        }
        if space.ambient() != ambient {
            return Err(Error::dims(ambient, space.ambient()));
        }
        if !level.in_unit_interval() {
            return Err(Error::LevelOutOfRange {
                level: level.to_string(),
            });
        }
        if i == 0 {
            continue;
        }
        let (prev_level, prev_space) = &raw[i - 1];
        if level >= prev_level {
            return Err(Error::LevelsNotDecreasing { index: i });
        }
        if prev_space.dim() >= space.dim() || !prev_space.is_subset(space)? {
            return Err(Error::ChainNotStrict { index: i });
        }
    }
    match raw.last() {
        Some((_, top)) if top.is_full() => {}
        _ => return Err(Error::TopNotAmbient),
    }
    // A strict chain from dimension ≥ 0 up to n has at most n + 1 links.
    debug_assert!(raw.len() <= ambient + 1);
    Ok(FuzzyFlag {
        field,
        ambient,
        entries: raw
            .into_iter()
            .map(|(level, space)| FlagEntry { level, space })
            .collect(),
    })
}

/// A graded ordinary basis, grades weakly decreasing.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FuzzyBasis {
    elements: Vec<(Vector, Rational)>,
}

impl FuzzyBasis {
    /// Sorts `elements` by decreasing grade (stable).
    pub fn new(mut elements: Vec<(Vector, Rational)>) -> Self {
        elements.sort_by(|a, b| b.1.cmp(&a.1));
        FuzzyBasis { elements }
    }

    pub fn elements(&self) -> &[(Vector, Rational)] {
        &self.elements
    }

    pub fn vectors(&self) -> Vec<Vector> {
        self.elements.iter().map(|(v, _)| v.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn grade_sum(&self) -> Rational {
        self.elements.iter().map(|(_, g)| g.clone()).sum()
    }

    /// Whether this is a fuzzy basis of `mu`: an ordinary basis whose grades
    /// are the memberships of its vectors, and whose vectors graded at least
    /// `t_i` span `V_i` for every level. The span condition is equivalent to
    /// `μ(Σ α_i x_i) = min μ(x_i)` over every nonzero combination.
    pub fn is_fuzzy_basis_of(&self, mu: &FuzzyFlag) -> Result<bool> {
        let (field, n) = (mu.field(), mu.ambient());
        let vectors = self.vectors();
        if vectors.len() != n || !Subspace::span(field, n, &vectors)?.is_full() {
            return Ok(false);
        }
        for (v, g) in &self.elements {
            if mu.membership(v)? != *g {
                return Ok(false);
            }
        }
        for e in mu.entries() {
            let upper: Vec<Vector> = self
                .elements
                .iter()
                .filter(|(_, g)| *g >= e.level)
                .map(|(v, _)| v.clone())
                .collect();
            if Subspace::span(field, n, &upper)? != e.space {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl fmt::Display for FuzzyBasis {
    /// One `vector | grade` line per element.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (v, g) in &self.elements {
            writeln!(f, "{v} | {g}")?;
        }
        Ok(())
    }
}

/// A concrete counterexample to one of the fuzzy subspace axioms.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Violation {
    /// `μ(x − y) < min(μ(x), μ(y))`.
    Difference { x: Vector, y: Vector },
    /// `μ(αx) < μ(x)`.
    Scalar { alpha: FieldScalar, x: Vector },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Difference { x, y } => {
                write!(f, "mu(x - y) < min(mu(x), mu(y)) for x=({x}) y=({y})")
            }
            Violation::Scalar { alpha, x } => {
                write!(f, "mu(a x) < mu(x) for a={alpha} x=({x})")
            }
        }
    }
}

fn table_size(field: FieldSpec, ambient: usize) -> Result<u64> {
    let p = field.prime().ok_or(Error::RequiresPrimeField)?;
    match p.checked_pow(ambient as u32) {
        Some(s) if s <= MAX_TABLE_SIZE => Ok(s),
        _ => Err(Error::BudgetExceeded {
            what: "vectors",
            needed: format!("{p}^{ambient}"),
            limit: MAX_TABLE_SIZE,
        }),
    }
}

/// The `i`-th vector of `GF(p)^n` in lexicographic order (first coordinate
/// most significant).
pub fn index_to_vector(field: FieldSpec, n: usize, mut i: u64) -> Vector {
    let p = field.prime().expect("prime field");
    let mut digits = vec![0u64; n];
    for d in digits.iter_mut().rev() {
        *d = i % p;
        i /= p;
    }
    let entries = digits.into_iter().map(|d| field.residue(d)).collect();
    Vector::new(field, entries).expect("entries share the field")
}

pub fn vector_to_index(x: &Vector) -> u64 {
    let p = x.field().prime().expect("prime field");
    x.entries()
        .iter()
        .fold(0, |acc, e| acc * p + e.residue().expect("residue"))
}

/// A raw fuzzy set on `GF(p)^n`: one grade per vector, indexed as in
/// [`index_to_vector`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointwiseTable {
    field: FieldSpec,
    ambient: usize,
    grades: Vec<Rational>,
}

impl PointwiseTable {
    pub fn new(field: FieldSpec, ambient: usize, grades: Vec<Rational>) -> Result<Self> {
        let size = table_size(field, ambient)?;
        if grades.len() as u64 != size {
            return Err(Error::dims(size as usize, grades.len()));
        }
        if let Some(bad) = grades.iter().find(|g| !g.in_unit_interval()) {
            return Err(Error::LevelOutOfRange {
                level: bad.to_string(),
            });
        }
        Ok(PointwiseTable {
            field,
            ambient,
            grades,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn grades(&self) -> &[Rational] {
        &self.grades
    }

    pub fn grade(&self, x: &Vector) -> &Rational {
        &self.grades[vector_to_index(x) as usize]
    }

    pub fn vector(&self, i: usize) -> Vector {
        index_to_vector(self.field, self.ambient, i as u64)
    }

    pub fn len(&self) -> usize {
        self.grades.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grades.is_empty()
    }
}

/// Builds the flag of a pointwise fuzzy set, checking that every level set is
/// a subspace. On failure the error carries a pair or scalar witnessing the
/// violated axiom inside the offending level set.
pub fn from_pointwise(tbl: &PointwiseTable) -> Result<FuzzyFlag> {
    let (field, n) = (tbl.field, tbl.ambient);
    let mut levels = tbl.grades.clone();
    levels.sort_by(|a, b| b.cmp(a));
    levels.dedup();

    let mut entries = Vec::with_capacity(levels.len());
    for t in levels {
        let members: Vec<usize> = (0..tbl.len()).filter(|&i| tbl.grades[i] >= t).collect();
        let vectors: Vec<Vector> = members.iter().map(|&i| tbl.vector(i)).collect();
        let space = Subspace::span(field, n, &vectors)?;
        if space.cardinality() != Some(members.len() as u64) {
            return Err(closure_witness(tbl, &t, &vectors).unwrap_or(Error::LevelSetNotSubspace {
                level: t.to_string(),
            }));
        }
        entries.push((t, space));
    }
    FuzzyFlag::new(field, n, entries)
}

/// Searches a level set `{x : μ(x) ≥ t}` for a failure of closure under
/// differences or scalar multiples.
fn closure_witness(tbl: &PointwiseTable, t: &Rational, members: &[Vector]) -> Option<Error> {
    let inside = |v: &Vector| tbl.grade(v) >= t;
    for y in members {
        for x in members {
            let d = x.sub(y).expect("same ambient");
            if !inside(&d) {
                return Some(Error::AxiomViolation(Violation::Difference {
                    x: x.clone(),
                    y: y.clone(),
                }));
            }
        }
    }
    for alpha in tbl.field.elements()? {
        for x in members {
            if !inside(&x.scale(&alpha).expect("same field")) {
                return Some(Error::AxiomViolation(Violation::Scalar {
                    alpha,
                    x: x.clone(),
                }));
            }
        }
    }
    None
}
