use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use waring_core::apolarity::{annihilator_generators, apolar_space, rank_lower_bound_certificate};
use waring_core::decompose::{choose_operators, split_difference_of_squares};
use waring_core::forms::{apply, operator_product, power_form, DiffOperator, LinearForm};
use waring_core::harmonic::omega_kernel_basis;
use waring_core::linalg::rank;
use waring_core::oracle::{random_forms, random_harmonic, random_power_sum};
use waring_core::{classify, decompose, verify, BinaryForm, Classification, DecomposeOptions, Scalar};

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn small_rational() -> impl Strategy<Value = Scalar> {
    (-7i64..=7, 1i64..=5).prop_map(|(n, d)| Scalar::from_ratio(n, d))
}

fn rational_form() -> impl Strategy<Value = LinearForm> {
    (small_rational(), small_rational()).prop_filter_map("nonzero", |(a, b)| LinearForm::new(a, b).ok())
}

fn span_rank(ops: &[DiffOperator]) -> usize {
    rank(&ops.iter().map(|o| o.coeffs().to_vec()).collect::<Vec<_>>())
}

#[test]
fn power_matrix_is_invertible() {
    for d in 1..=12 {
        for seed in 0..5 {
            let forms = random_forms(d + 1, &mut rng(seed * 100 + d as u64));
            let rows: Vec<Vec<Scalar>> = forms.iter().map(|l| power_form(l, d).coeffs().to_vec()).collect();
            assert_eq!(rank(&rows), d + 1, "d = {d}");
        }
    }
}

#[test]
fn top_degree_space_is_laplacian_multiples_plus_nabla() {
    for d in 3..=12 {
        let f = random_harmonic(d, &mut rng(d as u64)).unwrap();
        let space = apolar_space(&f, d);
        let nabla = annihilator_generators(&f).unwrap().nabla;
        let mut gens: Vec<DiffOperator> = (0..=d - 2)
            .map(|k| DiffOperator::laplacian().mul(&DiffOperator::dx_dy(d - 2 - k, k)))
            .collect();
        gens.push(nabla);
        let mut both = gens.clone();
        both.extend(space.basis.iter().cloned());
        assert_eq!(span_rank(&gens), d);
        assert_eq!(span_rank(&both), d);
        assert_eq!(space.dim(), d);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dimension_profile(seed in any::<u64>(), d in 2usize..=14) {
        let f = random_harmonic(d, &mut rng(seed)).unwrap();
        for r in 0..=d + 2 {
            let want = match r {
                0 | 1 => 0,
                r if r < d => r - 1,
                r if r == d => d,
                r => r + 1,
            };
            prop_assert_eq!(apolar_space(&f, r).dim(), want, "r = {}", r);
        }
    }

    #[test]
    fn residual_quadratic_is_indefinite(seed in any::<u64>(), d in 3usize..=12, w in (1i64..5, -3i64..4, 1i64..5)) {
        // omega = a dx^2 + 2b dx dy + c dy^2, forced definite
        let (a, b, c) = w;
        prop_assume!(b * b < a * c);
        let omega = DiffOperator::from_ints(&[a, 2 * b, c]);
        let basis = omega_kernel_basis(&omega, d).unwrap();
        let mut g = rng(seed);
        let (s, t) = loop {
            let s: i64 = rand::Rng::gen_range(&mut g, -9..=9);
            let t: i64 = rand::Rng::gen_range(&mut g, -9..=9);
            if s != 0 || t != 0 { break (s, t); }
        };
        let f = &basis[0].scale(&Scalar::from_int(s)) + &basis[1].scale(&Scalar::from_int(t));
        let ops = choose_operators(d, None, &[], seed % 16);
        let q = apply(&operator_product(&ops), &f);
        if !q.is_zero() {
            let two = Scalar::from_int(2);
            let half = q.coeff(1) / &two;
            let disc = &(&half * &half) - &(q.coeff(0) * q.coeff(2));
            prop_assert_eq!(disc.signum(), std::cmp::Ordering::Greater);
            prop_assert!(split_difference_of_squares(&q, &[]).is_ok());
        }
    }

    #[test]
    fn apolarity_round_trip(seed in any::<u64>(), d in 2usize..=10, r in 1usize..=10) {
        prop_assume!(r <= d);
        let (f, truth) = random_power_sum(d, r, &mut rng(seed)).unwrap();
        prop_assert!(verify(&f, &truth, Some(r), true).passed());
    }

    #[test]
    fn harmonic_decomposition_has_rank_d(seed in any::<u64>(), d in 2usize..=16) {
        let f = random_harmonic(d, &mut rng(seed)).unwrap();
        let cert = classify(&f).unwrap();
        let out = decompose(&f, &DecomposeOptions { seed: seed % 8, ..Default::default() }).unwrap();
        prop_assert_eq!(out.certificate.rank, Some(d));
        prop_assert_eq!(cert.rank, Some(out.decomposition.len()));
        prop_assert!(verify(&f, &out.decomposition, Some(d), false).passed());
        prop_assert!(rank_lower_bound_certificate(&f, &DiffOperator::laplacian()).is_ok());
    }

    #[test]
    fn through_any_rational_form(seed in any::<u64>(), d in 3usize..=12, l in rational_form()) {
        let f = random_harmonic(d, &mut rng(seed)).unwrap();
        let out = decompose(&f, &DecomposeOptions { through: Some(l.clone()), ..Default::default() }).unwrap();
        prop_assert!(out.decomposition.contains_direction(&l));
        prop_assert!(verify(&f, &out.decomposition, Some(d), false).passed());
    }

    #[test]
    fn scaling_equivariance(seed in any::<u64>(), d in 2usize..=10, c in small_rational()) {
        prop_assume!(!c.is_zero());
        let f = random_harmonic(d, &mut rng(seed)).unwrap();
        let opts = DecomposeOptions { seed: seed % 4, ..Default::default() };
        let a = decompose(&f, &opts).unwrap().decomposition;
        let b = decompose(&f.scale(&c), &opts).unwrap().decomposition;
        prop_assert_eq!(a.len(), b.len());
        for (ta, tb) in a.terms.iter().zip(&b.terms) {
            prop_assert_eq!(&ta.form, &tb.form);
            prop_assert_eq!(&(&ta.lambda * &c), &tb.lambda);
        }
    }

    #[test]
    fn every_class_matches_its_rank(seed in any::<u64>(), d in 2usize..=12, kind in 0u8..3) {
        let f = match kind {
            0 => random_harmonic(d, &mut rng(seed)).unwrap(),
            1 => random_power_sum(d, 2, &mut rng(seed)).unwrap().0,
            _ => {
                // (a x + b y) y^(d-1) after a random rational change of coordinates
                let mut g = rng(seed);
                let forms = random_forms(2, &mut g);
                let l0 = forms[0].to_form();
                l0.mul(&power_form(&forms[1], d - 1))
            }
        };
        let cert = classify(&f).unwrap();
        prop_assert_ne!(cert.classification, Classification::NoQuadraticAnnihilator);
        let out = decompose(&f, &DecomposeOptions::default()).unwrap();
        prop_assert_eq!(Some(out.decomposition.len()), cert.rank);
        prop_assert!(verify(&f, &out.decomposition, cert.rank, true).passed());
    }
}

#[test]
fn generic_quintic_is_out_of_family() {
    let f = BinaryForm::from_ints(&[1, 2, 0, 3, 0, 7]);
    assert_eq!(classify(&f).unwrap().classification, Classification::NoQuadraticAnnihilator);
}
