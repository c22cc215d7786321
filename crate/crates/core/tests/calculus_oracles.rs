mod common;

use common::*;
use oresmooth::sample::Sampler;
use oresmooth::{Algebra, Calculus, IntegralForm1, OneForm, Scalar};

fn calculi() -> Vec<Calculus> {
    admissible_grid()
        .into_iter()
        .map(|spec| Calculus::new(&Algebra::new(spec)).unwrap())
        .collect()
}

fn random_form(s: &mut Sampler, alg: &Algebra, bound: i64) -> OneForm {
    OneForm::new(s.ore_element(alg, bound, 3), s.ore_element(alg, bound, 3)).unwrap()
}

#[test]
fn left_multiplication_matches_generator_pushing() {
    let mut s = Sampler::from_env(11);
    for calc in calculi() {
        let alg = calc.algebra();
        for _ in 0..30 {
            let a = s.ore_element(alg, 3, 3);
            let w = random_form(&mut s, alg, 2);
            assert_eq!(
                calc.left_mul_oneform(&a, &w).unwrap(),
                push_left(&a, &w),
                "{} a = {a}, w = {w}",
                alg.spec()
            );
        }
    }
}

#[test]
fn differential_matches_word_leibniz() {
    let mut s = Sampler::from_env(12);
    for calc in calculi() {
        let alg = calc.algebra();
        for _ in 0..30 {
            let a = s.ore_element(alg, 4, 4);
            assert_eq!(calc.differential(&a).unwrap(), d_by_words(&a), "{} a = {a}", alg.spec());
        }
    }
}

#[test]
fn minus_kind_partial_y_closed_form() {
    // ∂_y(x^k y^l) = l q^k x^-k y^(l-1)
    let calc = Calculus::new(&Algebra::new(laurent_minus("3", "2"))).unwrap();
    let alg = calc.algebra();
    for k in -4..=4 {
        for l in 0..=4u32 {
            let m = alg.monomial(Scalar::one(), k, l).unwrap();
            let expected = if l == 0 {
                alg.zero()
            } else {
                let c = &Scalar::from(l as i64) * &s("3").pow(k).unwrap();
                alg.monomial(c, -k, l - 1).unwrap()
            };
            assert_eq!(calc.partial_y(&m).unwrap(), expected);
            assert_eq!(calc.differential(&m).unwrap(), d_by_words(&m));
        }
    }
}

#[test]
fn wedge_matches_relation_pushing() {
    let mut s = Sampler::from_env(13);
    for calc in calculi() {
        let alg = calc.algebra();
        for _ in 0..50 {
            let u = random_form(&mut s, alg, 3);
            let v = random_form(&mut s, alg, 3);
            assert_eq!(
                calc.wedge(&u, &v).unwrap().coeff,
                wedge_by_pushing(&u, &v),
                "{} u = {u}, v = {v}",
                alg.spec()
            );
        }
    }
}

#[test]
fn coefficients_move_across_the_wedge() {
    let mut s = Sampler::from_env(14);
    for calc in calculi() {
        let alg = calc.algebra();
        for _ in 0..20 {
            let u = random_form(&mut s, alg, 2);
            let v = random_form(&mut s, alg, 2);
            let c = s.ore_element(alg, 2, 2);
            let lhs = calc.wedge(&u.right_mul(&c).unwrap(), &v).unwrap();
            let rhs = calc.wedge(&u, &calc.left_mul_oneform(&c, &v).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{}", alg.spec());
        }
    }
}

#[test]
fn volume_form_relation_on_monomials() {
    for calc in calculi() {
        let alg = calc.algebra();
        let (first, second) = match calc.volume() {
            oresmooth::VolumeForm::DxDy => (OneForm::dx(alg), OneForm::dy(alg)),
            oresmooth::VolumeForm::DyDx => (OneForm::dy(alg), OneForm::dx(alg)),
        };
        for (k, l) in oresmooth::ore::monomial_exponents(alg.base_kind(), 8) {
            let a = alg.monomial(Scalar::one(), k, l).unwrap();
            // a ω = (a first) ∧ second
            let moved = wedge_by_pushing(&push_left(&a, &first), &second);
            let nu = calc.volume_automorphism().apply(&a).unwrap();
            assert_eq!(moved, nu, "{} a = {a}", alg.spec());
            let back = calc.volume_automorphism_inverse().apply(&nu).unwrap();
            assert_eq!(back, a);
        }
    }
}

#[test]
fn d_is_a_derivation() {
    let mut s = Sampler::from_env(15);
    for calc in calculi() {
        let alg = calc.algebra();
        for _ in 0..40 {
            let a = s.ore_element(alg, 4, 3);
            let b = s.ore_element(alg, 4, 3);
            let lhs = calc.differential(&(&a * &b)).unwrap();
            let rhs = calc
                .differential(&a)
                .unwrap()
                .right_mul(&b)
                .unwrap()
                .try_add(&calc.left_mul_oneform(&a, &calc.differential(&b).unwrap()).unwrap())
                .unwrap();
            assert_eq!(lhs, rhs, "{} a = {a}, b = {b}", alg.spec());
        }
    }
}

#[test]
fn divergence_leibniz_rule() {
    let mut s = Sampler::from_env(16);
    for calc in calculi() {
        let alg = calc.algebra();
        for _ in 0..15 {
            let phi = IntegralForm1 {
                a: s.ore_element(alg, 3, 3),
                b: s.ore_element(alg, 3, 3),
            };
            let a = s.ore_element(alg, 3, 3);
            let lhs = calc.divergence(&phi.right_mul(&a).unwrap()).unwrap();
            let rhs = &(&calc.divergence(&phi).unwrap() * &a)
                + &calc.eval_integral_form(&phi, &calc.differential(&a).unwrap()).unwrap();
            assert_eq!(lhs, rhs, "{} phi = {phi}, a = {a}", alg.spec());
        }
    }
}

#[test]
fn every_single_dual_basis_corruption_is_detected() {
    for calc in calculi() {
        let two = Scalar::from(2);
        for idx in 0..4 {
            let mut dual = calc.dual_basis().clone();
            let form = dual.forms_mut().nth(idx).unwrap();
            *form = form.scalar_mul(&two);
            let report = calc.check_dual_basis_with(&dual, 2).unwrap();
            assert!(!report.pass, "{} slot {idx}", calc.algebra().spec());
            assert!(report.counterexample.is_some());
        }
    }
}

#[test]
fn preimages_cover_all_low_monomials() {
    for calc in calculi() {
        let alg = calc.algebra();
        for (k, l) in oresmooth::ore::monomial_exponents(alg.base_kind(), 6) {
            let c = s("-5/3");
            let pre = calc.divergence_preimage(&c, k, l).unwrap();
            let m = alg.monomial(c, k, l).unwrap();
            assert_eq!(calc.divergence(&pre).unwrap(), m, "{}", alg.spec());
        }
    }
}
