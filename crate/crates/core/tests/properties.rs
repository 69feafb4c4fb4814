use fuzzy_subspace::oracle::{
    brute_force_iso, check_axioms, check_fuzzy_independence, enumerate_flags, enumerate_invertible, enumerate_vectors,
    zadeh_pointwise, EnumerationBudget,
};
use fuzzy_subspace::{
    are_isomorphic, dim_profile, from_pointwise, transport_basis, zadeh_image, FieldSpec, FuzzyFlag, LinearMap,
    Matrix, ProfileValue, Rational,
};
use proptest::prelude::*;

fn grid(levels: &[&str]) -> Vec<Rational> {
    levels.iter().map(|s| s.parse().unwrap()).collect()
}

fn flags(p: u64, n: usize, levels: &[&str]) -> Vec<FuzzyFlag> {
    enumerate_flags(FieldSpec::gf(p).unwrap(), n, &grid(levels), &EnumerationBudget::default()).unwrap()
}

fn gf3_flags() -> Vec<FuzzyFlag> {
    flags(3, 2, &["1", "1/2", "0"])
}

fn gl(p: u64, n: usize) -> Vec<LinearMap> {
    enumerate_invertible(FieldSpec::gf(p).unwrap(), n, &EnumerationBudget::default()).unwrap()
}

#[test]
fn flags_satisfy_membership_axioms() {
    let budget = EnumerationBudget::default();
    for mu in flags(2, 2, &["1", "2/3", "1/3", "0"]).iter().chain(&gf3_flags()) {
        let tbl = mu.to_pointwise().unwrap();
        assert_eq!(check_axioms(&tbl, &budget).unwrap(), None, "{mu}");
        assert_eq!(&from_pointwise(&tbl).unwrap(), mu);
    }
}

#[test]
fn membership_is_highest_containing_level() {
    let budget = EnumerationBudget::default();
    for mu in gf3_flags() {
        for x in enumerate_vectors(mu.field(), 2, &budget).unwrap() {
            let g = mu.membership(&x).unwrap();
            let above: Vec<&Rational> = mu
                .entries()
                .iter()
                .filter(|e| e.space.contains(&x).unwrap())
                .map(|e| &e.level)
                .collect();
            assert_eq!(above.iter().max(), Some(&&g));
        }
    }
}

#[test]
fn level_sets_are_monotone() {
    let levels = grid(&["1", "3/4", "1/2", "1/4", "0"]);
    for mu in gf3_flags() {
        for w in levels.windows(2) {
            let (hi, lo) = (mu.level_subspace(&w[0]).unwrap(), mu.level_subspace(&w[1]).unwrap());
            match (hi, lo) {
                (Some(a), Some(b)) => assert!(a.is_subset(b).unwrap()),
                (Some(_), None) => panic!("level set vanished going down in {mu}"),
                _ => {}
            }
        }
    }
}

#[test]
fn basis_sum_matches_closed_form_and_oracle() {
    let budget = EnumerationBudget::default();
    for mu in flags(2, 3, &["1", "2/3", "1/3", "0"]) {
        let beta = mu.fuzzy_basis();
        assert_eq!(beta.grade_sum(), mu.dimension_closed_form());
        assert!(beta.is_fuzzy_basis_of(&mu).unwrap());
        assert!(check_fuzzy_independence(&mu, &beta, &budget).unwrap());
    }
}

#[test]
fn images_agree_with_pointwise_sup() {
    let budget = EnumerationBudget::default();
    let maps = gl(3, 2);
    for mu in gf3_flags().iter().step_by(3) {
        let tbl = mu.to_pointwise().unwrap();
        for f in maps.iter().step_by(7) {
            let pointwise = zadeh_pointwise(f, &tbl, &budget).unwrap();
            assert_eq!(zadeh_image(f, mu).unwrap().to_pointwise().unwrap(), pointwise);
        }
    }
}

#[test]
fn singular_images_get_a_zero_level() {
    let f = FieldSpec::gf(2).unwrap();
    let project = LinearMap::new(Matrix::from_i64(f, &[&[1, 0], &[0, 0]]).unwrap());
    let budget = EnumerationBudget::default();
    for mu in flags(2, 2, &["1", "1/2", "0"]) {
        let img = zadeh_image(&project, &mu).unwrap();
        let pointwise = zadeh_pointwise(&project, &mu.to_pointwise().unwrap(), &budget).unwrap();
        assert_eq!(img.to_pointwise().unwrap(), pointwise);
    }
}

#[test]
fn transport_preserves_fuzzy_bases() {
    let maps = gl(3, 2);
    for mu in gf3_flags().iter().step_by(2) {
        for f in maps.iter().step_by(5) {
            let image = zadeh_image(f, mu).unwrap();
            let moved = transport_basis(f, &mu.fuzzy_basis()).unwrap();
            assert!(moved.is_fuzzy_basis_of(&image).unwrap());
            assert_eq!(moved.grade_sum(), mu.dimension());
            assert_eq!(image.dimension(), mu.dimension());
        }
    }
}

#[test]
fn isomorphism_is_an_equivalence() {
    let all = flags(2, 2, &["1", "1/2", "0"]);
    for a in &all {
        assert!(are_isomorphic(a, a).unwrap());
        for b in &all {
            let ab = are_isomorphic(a, b).unwrap();
            assert_eq!(ab, are_isomorphic(b, a).unwrap());
            if !ab {
                continue;
            }
            for c in &all {
                if are_isomorphic(b, c).unwrap() {
                    assert!(are_isomorphic(a, c).unwrap());
                }
            }
        }
    }
}

#[test]
fn profile_values_never_decrease() {
    for mu in gf3_flags() {
        let p = dim_profile(&mu);
        for w in p.entries().windows(2) {
            assert!(w[0].1 <= w[1].1);
        }
        assert_eq!(p.value_at(&Rational::zero()), ProfileValue::Dim(mu.dimension()));
        if !p.top_level().is_one() {
            assert_eq!(p.value_at(&Rational::one()), ProfileValue::Empty);
        }
    }
}

#[test]
fn identity_search_returns_identity() {
    let budget = EnumerationBudget::default();
    for mu in flags(2, 2, &["1", "1/2", "0"]) {
        let f = brute_force_iso(&mu, &mu, &budget).unwrap().unwrap();
        assert_eq!(f, LinearMap::identity(mu.field(), 2));
    }
}

proptest! {
    #[test]
    fn dimension_is_invariant_under_gl(i in 0usize..78, j in 0usize..48) {
        let all = gf3_flags();
        let maps = gl(3, 2);
        let mu = &all[i % all.len()];
        let f = &maps[j];
        let image = zadeh_image(f, mu).unwrap();
        prop_assert_eq!(image.dimension(), mu.dimension());
        prop_assert!(are_isomorphic(mu, &image).unwrap());
        prop_assert_eq!(dim_profile(&image), dim_profile(mu));
    }
}
