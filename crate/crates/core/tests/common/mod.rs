//! Shared fixtures: the admissible spec grid and an oracle that moves
//! coefficients across `dx`, `dy` one generator at a time using the
//! relations of the calculus as written, without the twisting maps.

#![allow(dead_code)]

use oresmooth::basering::{BaseKind, BasePoly, SigmaSpec};
use oresmooth::morphisms::minus_family_p;
use oresmooth::{Algebra, AlgebraSpec, OneForm, OreElement, Scalar};

pub fn s(t: &str) -> Scalar {
    t.parse().unwrap()
}

pub fn poly(q: &str, r: &str, p: &[(i64, &str)]) -> AlgebraSpec {
    let p = BasePoly::from_terms(BaseKind::Poly, p.iter().map(|(e, c)| (*e, s(c)))).unwrap();
    AlgebraSpec::poly(s(q), s(r), p).unwrap()
}

pub fn laurent_plus(q: &str, p: &[(i64, &str)]) -> AlgebraSpec {
    let p = BasePoly::from_terms(BaseKind::Laurent, p.iter().map(|(e, c)| (*e, s(c)))).unwrap();
    AlgebraSpec::laurent_plus(s(q), p).unwrap()
}

pub fn laurent_minus(q: &str, c: &str) -> AlgebraSpec {
    AlgebraSpec::laurent_minus(s(q), minus_family_p(&s(q), &s(c))).unwrap()
}

/// `c (x + r/(q-1))`.
pub fn poly_c(q: &str, r: &str, c: &str) -> AlgebraSpec {
    let (qv, rv, cv) = (s(q), s(r), s(c));
    let shift = &rv / &(&qv - &Scalar::one());
    let p = BasePoly::from_terms(BaseKind::Poly, [(1, cv.clone()), (0, &cv * &shift)]).unwrap();
    AlgebraSpec::poly(qv, rv, p).unwrap()
}

/// Every admissible presentation exercised by the calculus checks.
pub fn admissible_grid() -> Vec<AlgebraSpec> {
    vec![
        poly("1", "0", &[]),
        poly("1", "0", &[(1, "1")]),
        poly("1", "0", &[(2, "1"), (0, "1")]),
        poly("1", "1", &[]),
        poly("1", "1", &[(0, "1")]),
        poly_c("2", "1", "1"),
        poly_c("3", "6", "5"),
        poly_c("1/2", "0", "-1"),
        laurent_plus("1", &[(2, "1"), (-1, "3")]),
        laurent_plus("2", &[(1, "3")]),
        laurent_plus("1/2", &[]),
        laurent_minus("2", "1"),
        laurent_minus("3", "0"),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Gen {
    X,
    XInv,
    Y,
}

/// `x^k y^l` as a word in the generators.
pub fn word(k: i64, l: u32) -> Vec<Gen> {
    let xg = if k >= 0 { Gen::X } else { Gen::XInv };
    std::iter::repeat(xg)
        .take(k.unsigned_abs() as usize)
        .chain(std::iter::repeat(Gen::Y).take(l as usize))
        .collect()
}

pub fn gen_element(alg: &Algebra, g: Gen) -> OreElement {
    match g {
        Gen::X => alg.x(),
        Gen::XInv => alg.x_inv().unwrap(),
        Gen::Y => alg.y(),
    }
}

fn is_minus(alg: &Algebra) -> bool {
    matches!(alg.spec().sigma(), SigmaSpec::LaurentMinus { .. })
}

/// `g dx = dx T_x(g)` and `g dy = dy T_y(g)` for a single generator,
/// straight from the printed relations.
pub fn generator_table(alg: &Algebra, g: Gen) -> (OreElement, OreElement) {
    let spec = alg.spec();
    let q = spec.q().clone();
    let q_inv = q.inv().unwrap();
    let mon = |c: Scalar, k: i64, l: u32| alg.monomial(c, k, l).unwrap();
    if is_minus(alg) {
        let c = spec.p().coeff(1);
        match g {
            Gen::X => (alg.x(), mon(q, -1, 0)),
            Gen::XInv => (mon(Scalar::one(), -1, 0), mon(q_inv, 1, 0)),
            // y dx = -q dx x^-2 y + c dx (1 + q x^-2)
            Gen::Y => (
                alg.element([
                    (-2, 1, -&q),
                    (0, 0, c.clone()),
                    (-2, 0, &c * &q),
                ])
                .unwrap(),
                alg.y(),
            ),
        }
    } else {
        let r = spec.r();
        let p_prime = alg.from_base(&spec.p().derivative()).unwrap();
        match g {
            // x dy = q^-1 dy x - q^-1 r dy
            Gen::X => (
                alg.x(),
                alg.element([(1, 0, q_inv.clone()), (0, 0, -(&q_inv * &r))]).unwrap(),
            ),
            Gen::XInv => (mon(Scalar::one(), -1, 0), mon(q, -1, 0)),
            // y dx = q dx y + dx p'
            Gen::Y => (&mon(q, 0, 1) + &p_prime, alg.y()),
        }
    }
}

/// `a w` computed by pushing each generator of each monomial of `a` past
/// `dx`, `dy` in turn, innermost first.
pub fn push_left(a: &OreElement, w: &OneForm) -> OneForm {
    let alg = a.algebra();
    let mut total = OneForm::zero(alg);
    for (k, l, c) in a.terms() {
        let mut form = w.clone();
        for g in word(k, l).into_iter().rev() {
            let (tx, ty) = generator_table(alg, g);
            form = OneForm::new(&tx * &form.a, &ty * &form.b).unwrap();
        }
        total = total.try_add(&form.scalar_mul(c)).unwrap();
    }
    total
}

/// `d a` by the Leibniz rule on generator words, `d(x^-1) = -dx x^-2`.
pub fn d_by_words(a: &OreElement) -> OneForm {
    let alg = a.algebra();
    let mut total = OneForm::zero(alg);
    for (k, l, c) in a.terms() {
        let w = word(k, l);
        for i in 0..w.len() {
            let prefix = w[..i]
                .iter()
                .fold(alg.one(), |acc, &g| &acc * &gen_element(alg, g));
            let suffix = w[i + 1..]
                .iter()
                .fold(alg.one(), |acc, &g| &acc * &gen_element(alg, g));
            let dg = match w[i] {
                Gen::X => OneForm::dx(alg),
                Gen::Y => OneForm::dy(alg),
                Gen::XInv => OneForm::new(alg.monomial(-Scalar::one(), -2, 0).unwrap(), alg.zero())
                    .unwrap(),
            };
            let moved = push_left(&prefix, &dg).right_mul(&suffix).unwrap();
            total = total.try_add(&moved.scalar_mul(c)).unwrap();
        }
    }
    total
}

/// Coefficient of `u ∧ v` on the volume form, using only `push_left` and
/// the wedge table of the generators.
pub fn wedge_by_pushing(u: &OneForm, v: &OneForm) -> OreElement {
    let alg = u.algebra();
    let q = alg.spec().q().clone();
    // u∧v = dx∧(a v) + dy∧(b v)
    let av = push_left(&u.a, v);
    let bv = push_left(&u.b, v);
    if is_minus(alg) {
        // dy∧dx = ω̄, dx∧dy = ω̄ q x^-2
        let twist = alg.monomial(q, -2, 0).unwrap();
        &(&twist * &av.b) + &bv.a
    } else {
        // dx∧dy = ω, dy∧dx = -q ω
        &av.b - &bv.a.scalar_mul(&q)
    }
}
