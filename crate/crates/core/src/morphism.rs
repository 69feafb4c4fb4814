//! Linear maps acting on fuzzy subspaces, and the isomorphism decision.
//!
//! Two fuzzy subspaces of finite-dimensional spaces are isomorphic exactly
//! when their dimension profiles `t ↦ dim(μ|μ_t)` agree. [`are_isomorphic`]
//! decides this by comparing profiles; [`witness_isomorphism`] then builds an
//! explicit map by pairing compatible basis chains of the two flags.

use std::fmt;

use crate::arith::{FieldSpec, Rational};
use crate::error::{Error, Result};
use crate::fuzzy::{FuzzyBasis, FuzzyFlag};
use crate::linalg::{apply_to_subspace, extend_basis_preferring, Matrix, Subspace, Vector};

/// A linear map `F^domain_dim → F^codomain_dim`; matrix column `j` is the
/// image of the `j`-th standard basis vector.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct LinearMap {
    matrix: Matrix,
}

impl LinearMap {
    pub fn new(matrix: Matrix) -> Self {
        LinearMap { matrix }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        LinearMap::new(Matrix::identity(field, n))
    }

    pub fn field(&self) -> FieldSpec {
        self.matrix.field()
    }

    pub fn domain_dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn codomain_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn apply(&self, x: &Vector) -> Result<Vector> {
        self.matrix.mul_vec(x)
    }

    pub fn image_of(&self, s: &Subspace) -> Result<Subspace> {
        apply_to_subspace(&self.matrix, s)
    }

    pub fn is_invertible(&self) -> bool {
        self.matrix.is_invertible()
    }

    pub fn is_surjective(&self) -> bool {
        self.matrix.rank() == self.codomain_dim()
    }
}

impl From<Matrix> for LinearMap {
    fn from(m: Matrix) -> Self {
        LinearMap::new(m)
    }
}

impl fmt::Display for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.matrix.fmt(f)
    }
}

fn check_domain(f: &LinearMap, mu: &FuzzyFlag) -> Result<()> {
    if f.field() != mu.field() {
        return Err(Error::field_mismatch(f.field(), mu.field()));
    }
    if f.domain_dim() != mu.ambient() {
        return Err(Error::dims(mu.ambient(), f.domain_dim()));
    }
    Ok(())
}

/// The Zadeh image `f(μ)(y) = sup{μ(x) : f(x) = y}`, with `sup ∅ = 0`.
///
/// Computed on the flag: `f(μ)_t = f(μ_t)` for the attained levels, with
/// consecutive equal images merged under the larger level. Vectors outside
/// `f(U)` have empty fibers and get grade 0.
pub fn zadeh_image(f: &LinearMap, mu: &FuzzyFlag) -> Result<FuzzyFlag> {
    check_domain(f, mu)?;
    let (field, r) = (f.field(), f.codomain_dim());
    let mut entries: Vec<(Rational, Subspace)> = Vec::with_capacity(mu.len() + 1);
    for e in mu.entries() {
        let img = f.image_of(&e.space)?;
        if entries.last().is_some_and(|(_, prev)| *prev == img) {
            continue;
        }
        entries.push((e.level.clone(), img));
    }
    if !f.is_surjective() {
        let full = Subspace::full(field, r);
        let last = entries.last_mut().expect("flags are nonempty");
        if last.0.is_zero() {
            last.1 = full;
        } else {
            entries.push((Rational::zero(), full));
        }
    }
    FuzzyFlag::new(field, r, entries)
}

/// Pushes a fuzzy basis through an invertible map, keeping the grades.
pub fn transport_basis(f: &LinearMap, beta: &FuzzyBasis) -> Result<FuzzyBasis> {
    if !f.is_invertible() {
        return Err(Error::NotInvertible);
    }
    let elements = beta
        .elements()
        .iter()
        .map(|(v, g)| Ok((f.apply(v)?, g.clone())))
        .collect::<Result<Vec<_>>>()?;
    Ok(FuzzyBasis::new(elements))
}

/// Value of a dimension profile at some level.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum ProfileValue {
    /// The level set is empty (`t > μ(0)`); rendered as `-1`.
    Empty,
    Dim(Rational),
}

impl fmt::Display for ProfileValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileValue::Empty => f.write_str("-1"),
            ProfileValue::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// The step function `t ↦ dim(μ|μ_t)`. Entry `(t_i, d_i)` holds on
/// `(t_{i+1}, t_i]`; above `t_0` the value is [`ProfileValue::Empty`].
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DimProfile {
    entries: Vec<(Rational, Rational)>,
}

impl DimProfile {
    pub fn entries(&self) -> &[(Rational, Rational)] {
        &self.entries
    }

    pub fn top_level(&self) -> &Rational {
        &self.entries[0].0
    }

    pub fn value_at(&self, t: &Rational) -> ProfileValue {
        match self.entries.iter().take_while(|(level, _)| level >= t).last() {
            Some((_, d)) => ProfileValue::Dim(d.clone()),
            None => ProfileValue::Empty,
        }
    }
}

impl fmt::Display for DimProfile {
    /// `t -> d` lines from the top level down, preceded by `1 -> -1` when the
    /// top level is below 1.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.top_level().is_one() {
            writeln!(f, "1 -> {}", ProfileValue::Empty)?;
        }
        for (t, d) in &self.entries {
            writeln!(f, "{t} -> {d}")?;
        }
        Ok(())
    }
}

/// `dim(μ|V_i) = Σ_{j≤i} t_j·(dim V_j − dim V_{j−1})` at each level `t_i`.
pub fn dim_profile(mu: &FuzzyFlag) -> DimProfile {
    let mut prev = 0usize;
    let mut running = Rational::zero();
    let entries = mu
        .entries()
        .iter()
        .map(|e| {
            let d = e.space.dim();
            running = &running + &(&e.level * &Rational::from((d - prev) as i64));
            prev = d;
            (e.level.clone(), running.clone())
        })
        .collect();
    DimProfile { entries }
}

/// Decides `μ ≈ η` by comparing dimension profiles.
pub fn are_isomorphic(mu: &FuzzyFlag, eta: &FuzzyFlag) -> Result<bool> {
    if mu.field() != eta.field() {
        return Err(Error::field_mismatch(mu.field(), eta.field()));
    }
    if mu.ambient() != eta.ambient() {
        return Ok(false);
    }
    Ok(dim_profile(mu) == dim_profile(eta))
}

/// Compatible basis chain of `mu`: for each level, the vectors completing
/// the previous level subspace's basis to `V_i`.
fn basis_chain(mu: &FuzzyFlag, preferred: &[Vec<Vector>]) -> Result<Vec<Vec<Vector>>> {
    let mut prev = Subspace::zero(mu.field(), mu.ambient());
    let mut chain = Vec::with_capacity(mu.len());
    for (i, e) in mu.entries().iter().enumerate() {
        let pref = preferred.get(i).map(Vec::as_slice).unwrap_or(&[]);
        chain.push(extend_basis_preferring(&prev, &e.space, pref)?);
        prev = e.space.clone();
    }
    Ok(chain)
}

/// An invertible `f` with `f(μ) = η`, built by pairing basis chains level by
/// level.
///
/// `μ`'s chain is its canonical fuzzy basis. `η`'s chain at each level first
/// tries the vectors `μ` added at that level, then `η`'s echelon rows, so
/// the witness fixes as much as possible and is the identity when `μ = η`.
pub fn witness_isomorphism(mu: &FuzzyFlag, eta: &FuzzyFlag) -> Result<LinearMap> {
    if !are_isomorphic(mu, eta)? {
        return Err(Error::NotIsomorphic);
    }
    let field = mu.field();
    let n = mu.ambient();
    let source = basis_chain(mu, &[])?;
    let target = basis_chain(eta, &source)?;
    let xs: Vec<Vector> = source.into_iter().flatten().collect();
    let ys: Vec<Vector> = target.into_iter().flatten().collect();
    debug_assert_eq!(xs.len(), n);
    debug_assert_eq!(ys.len(), n);
    // f X = Y  ⇒  f = Y X⁻¹
    let x = Matrix::from_columns(field, n, &xs)?;
    let y = Matrix::from_columns(field, n, &ys)?;
    let x_inv = x.inverse().ok_or(Error::NotInvertible)?;
    Ok(LinearMap::new(y.mul(&x_inv)?))
}

/// Why a candidate map fails to be an isomorphism `μ → η`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Mismatch {
    Field,
    Shape {
        rows: usize,
        cols: usize,
        domain: usize,
        codomain: usize,
    },
    Singular,
    Image(FuzzyFlag),
}

impl fmt::Display for Mismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mismatch::Field => f.write_str("map and flags are over different fields"),
            Mismatch::Shape {
                rows,
                cols,
                domain,
                codomain,
            } => write!(
                f,
                "map is {rows}x{cols} but flags need {codomain}x{domain}"
            ),
            Mismatch::Singular => f.write_str("map is not invertible"),
            Mismatch::Image(img) => write!(f, "image differs from target: {img}"),
        }
    }
}

/// `Ok(())` iff `f` is invertible and `f(μ_t) = η_t` at every level.
pub fn check_isomorphism(
    f: &LinearMap,
    mu: &FuzzyFlag,
    eta: &FuzzyFlag,
) -> std::result::Result<(), Mismatch> {
    if f.field() != mu.field() || f.field() != eta.field() {
        return Err(Mismatch::Field);
    }
    if f.domain_dim() != mu.ambient() || f.codomain_dim() != eta.ambient() {
        return Err(Mismatch::Shape {
            rows: f.codomain_dim(),
            cols: f.domain_dim(),
            domain: mu.ambient(),
            codomain: eta.ambient(),
        });
    }
    if !f.is_invertible() {
        return Err(Mismatch::Singular);
    }
    let img = zadeh_image(f, mu).expect("shapes checked");
    if img.entries() != eta.entries() {
        return Err(Mismatch::Image(img));
    }
    Ok(())
}

pub fn verify_isomorphism(f: &LinearMap, mu: &FuzzyFlag, eta: &FuzzyFlag) -> bool {
    check_isomorphism(f, mu, eta).is_ok()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf2() -> FieldSpec {
        FieldSpec::gf(2).unwrap()
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d).unwrap()
    }

    fn sp(field: FieldSpec, n: usize, vs: &[&[i64]]) -> Subspace {
        let vs: Vec<Vector> = vs.iter().map(|x| Vector::from_i64(field, x)).collect();
        Subspace::span(field, n, &vs).unwrap()
    }

    fn two_level(first: &[i64]) -> FuzzyFlag {
        let f = gf2();
        FuzzyFlag::new(
            f,
            2,
            vec![(q(1, 1), sp(f, 2, &[first])), (q(1, 2), Subspace::full(f, 2))],
        )
        .unwrap()
    }

    fn mu_star() -> FuzzyFlag {
        two_level(&[1, 0])
    }

    fn eta_star() -> FuzzyFlag {
        two_level(&[1, 1])
    }

    fn eta_c() -> FuzzyFlag {
        FuzzyFlag::constant(gf2(), 2, q(3, 4)).unwrap()
    }

    fn map(rows: &[&[i64]]) -> LinearMap {
        LinearMap::new(Matrix::from_i64(gf2(), rows).unwrap())
    }

    #[test]
    fn zadeh_image_examples() {
        let f = gf2();
        assert_eq!(zadeh_image(&LinearMap::identity(f, 2), &mu_star()).unwrap(), mu_star());

        let proj = map(&[&[1, 0]]);
        assert_eq!(
            zadeh_image(&proj, &mu_star()).unwrap(),
            FuzzyFlag::constant(f, 1, q(1, 1)).unwrap()
        );

        let incl = map(&[&[1], &[0]]);
        let c = FuzzyFlag::constant(f, 1, q(2, 3)).unwrap();
        assert_eq!(
            zadeh_image(&incl, &c).unwrap(),
            FuzzyFlag::new(
                f,
                2,
                vec![(q(2, 3), sp(f, 2, &[&[1, 0]])), (q(0, 1), Subspace::full(f, 2))]
            )
            .unwrap()
        );
        assert!(zadeh_image(&incl, &mu_star()).is_err());
    }

    #[test]
    fn non_surjective_image_with_zero_bottom_level() {
        let f = gf2();
        let mu = FuzzyFlag::new(f, 1, vec![(q(1, 1), Subspace::zero(f, 1)), (q(0, 1), Subspace::full(f, 1))])
            .unwrap();
        let incl = map(&[&[1], &[0]]);
        let img = zadeh_image(&incl, &mu).unwrap();
        assert_eq!(
            img,
            FuzzyFlag::new(f, 2, vec![(q(1, 1), Subspace::zero(f, 2)), (q(0, 1), Subspace::full(f, 2))])
                .unwrap()
        );
    }

    #[test]
    fn transport_basis_examples() {
        let f = gf2();
        let beta = mu_star().fuzzy_basis();
        assert_eq!(transport_basis(&LinearMap::identity(f, 2), &beta).unwrap(), beta);
        let g = map(&[&[1, 0], &[1, 1]]);
        let moved = transport_basis(&g, &beta).unwrap();
        assert_eq!(
            moved.elements(),
            &[
                (Vector::from_i64(f, &[1, 1]), q(1, 1)),
                (Vector::from_i64(f, &[0, 1]), q(1, 2))
            ]
        );
        assert!(moved.is_fuzzy_basis_of(&zadeh_image(&g, &mu_star()).unwrap()).unwrap());
        assert_eq!(
            transport_basis(&map(&[&[1, 0], &[1, 0]]), &beta),
            Err(Error::NotInvertible)
        );
    }

    #[test]
    fn profile_examples() {
        let p = dim_profile(&mu_star());
        assert_eq!(p.entries(), &[(q(1, 1), q(1, 1)), (q(1, 2), q(3, 2))]);
        assert_eq!(p.value_at(&q(3, 4)), ProfileValue::Dim(q(1, 1)));
        assert_eq!(p.value_at(&q(0, 1)), ProfileValue::Dim(q(3, 2)));
        assert_eq!(p.to_string(), "1 -> 1\n1/2 -> 3/2\n");

        let c = dim_profile(&FuzzyFlag::constant(gf2(), 2, q(1, 1)).unwrap());
        assert_eq!(c.entries(), &[(q(1, 1), q(2, 1))]);

        let pc = dim_profile(&eta_c());
        assert_eq!(pc.entries(), &[(q(3, 4), q(3, 2))]);
        assert_eq!(pc.value_at(&q(1, 1)), ProfileValue::Empty);
        assert_eq!(pc.to_string(), "1 -> -1\n3/4 -> 3/2\n");
    }

    #[test]
    fn profile_of_zero_bottom_is_zero_not_empty() {
        let f = gf2();
        let mu = FuzzyFlag::new(f, 1, vec![(q(1, 1), Subspace::zero(f, 1)), (q(1, 3), Subspace::full(f, 1))])
            .unwrap();
        let p = dim_profile(&mu);
        assert_eq!(p.value_at(&q(1, 1)), ProfileValue::Dim(q(0, 1)));
        assert_eq!(p.value_at(&q(1, 3)), ProfileValue::Dim(q(1, 3)));
    }

    #[test]
    fn profile_matches_restricted_dimensions() {
        for mu in [mu_star(), eta_star(), eta_c()] {
            for (e, (t, d)) in mu.entries().iter().zip(dim_profile(&mu).entries()) {
                assert_eq!(&e.level, t);
                assert_eq!(&mu.restrict(&e.space).unwrap().dimension(), d);
            }
        }
    }

    #[test]
    fn isomorphism_decisions() {
        assert!(are_isomorphic(&mu_star(), &eta_star()).unwrap());
        assert!(!are_isomorphic(&mu_star(), &eta_c()).unwrap());
        assert_eq!(mu_star().dimension(), eta_c().dimension());
        assert!(are_isomorphic(&mu_star(), &mu_star()).unwrap());
        let other = FuzzyFlag::constant(FieldSpec::gf(3).unwrap(), 2, q(1, 1)).unwrap();
        assert!(matches!(are_isomorphic(&mu_star(), &other), Err(Error::FieldMismatch { .. })));
        let bigger = FuzzyFlag::constant(gf2(), 3, q(1, 2)).unwrap();
        assert!(!are_isomorphic(&mu_star(), &bigger).unwrap());
    }

    #[test]
    fn witness_examples() {
        let f = gf2();
        let w = witness_isomorphism(&mu_star(), &eta_star()).unwrap();
        assert_eq!(w.matrix(), &Matrix::from_i64(f, &[&[1, 0], &[1, 1]]).unwrap());
        assert!(verify_isomorphism(&w, &mu_star(), &eta_star()));

        let id = witness_isomorphism(&mu_star(), &mu_star()).unwrap();
        assert_eq!(id, LinearMap::identity(f, 2));

        assert_eq!(witness_isomorphism(&mu_star(), &eta_c()), Err(Error::NotIsomorphic));
    }

    #[test]
    fn verify_examples() {
        let f = gf2();
        assert!(!verify_isomorphism(&LinearMap::identity(f, 2), &mu_star(), &eta_star()));
        let singular = map(&[&[1, 0], &[1, 0]]);
        assert_eq!(
            check_isomorphism(&singular, &mu_star(), &mu_star()),
            Err(Mismatch::Singular)
        );
        let wrong_shape = map(&[&[1, 0]]);
        assert!(matches!(
            check_isomorphism(&wrong_shape, &mu_star(), &mu_star()),
            Err(Mismatch::Shape { .. })
        ));
    }

    #[test]
    fn witness_over_rationals() {
        let qf = FieldSpec::rationals();
        let line = |v: &[i64]| Subspace::span(qf, 3, &[Vector::from_i64(qf, v)]).unwrap();
        let plane = |a: &[i64], b: &[i64]| {
            Subspace::span(qf, 3, &[Vector::from_i64(qf, a), Vector::from_i64(qf, b)]).unwrap()
        };
        let mu = FuzzyFlag::new(
            qf,
            3,
            vec![
                (q(5, 6), line(&[1, 2, 3])),
                (q(1, 2), plane(&[1, 2, 3], &[0, 1, -1])),
                (q(1, 7), Subspace::full(qf, 3)),
            ],
        )
        .unwrap();
        let eta = FuzzyFlag::new(
            qf,
            3,
            vec![
                (q(5, 6), line(&[0, 0, 1])),
                (q(1, 2), plane(&[0, 0, 1], &[3, -1, 0])),
                (q(1, 7), Subspace::full(qf, 3)),
            ],
        )
        .unwrap();
        assert!(are_isomorphic(&mu, &eta).unwrap());
        let w = witness_isomorphism(&mu, &eta).unwrap();
        assert!(verify_isomorphism(&w, &mu, &eta));
        assert_eq!(mu.dimension(), eta.dimension());
    }
}
