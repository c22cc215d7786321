//! The automorphisms that twist the first-order calculus, and which
//! presentations admit them.
//!
//! Over `K[x]` (and the `+` Laurent kind) the maps are
//!
//! ```text
//! nu_x: x -> x,               y -> q y + p'(x)
//! nu_y: x -> sigma^-1(x),     y -> y
//! ```
//!
//! and over the `-` Laurent kind
//!
//! ```text
//! nu_x: x -> x,               y -> -q x^-2 y + p'(x)
//! nu_y: x -> q x^-1,          y -> y
//! ```
//!
//! They extend to automorphisms exactly when `p` satisfies the two
//! constraints checked by [`check_nu_x_constraint`] and
//! [`check_nu_y_constraint`]; [`classify`] names the resulting cases.

use std::fmt;

use serde::Serialize;

use crate::basering::{apply_sigma_inverse, BaseKind, BasePoly, SigmaSpec};
use crate::error::{Error, Result};
use crate::ore::{monomial_exponents, Algebra, AlgebraSpec, Endomorphism};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// `q = 1, r = 0`, any `p`.
    PolyA,
    /// `q = 1, r != 0`, `p = c`.
    PolyB,
    /// `q != 1`, `p = c (x + r/(q-1))`.
    PolyC,
    /// Laurent `+` kind with `q = 1`, any `p`.
    LaurentPlusQ1,
    /// Laurent `+` kind with `q != 1`, `p = c x`.
    LaurentPlusLinear,
    /// Laurent `-` kind with `p = c (x - q x^-1)`.
    LaurentMinus,
    NotAdmissible,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Admissibility {
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Scalar>,
}

impl Admissibility {
    pub fn is_admissible(&self) -> bool {
        self.verdict != Verdict::NotAdmissible
    }

    fn with(verdict: Verdict, witness: Option<Scalar>) -> Self {
        Admissibility { verdict, witness }
    }

    fn not_admissible() -> Self {
        Self::with(Verdict::NotAdmissible, None)
    }
}

/// Decides on which presentations both twisting maps extend to algebra
/// automorphisms.
///
/// Over the `+` Laurent kind, `q != 1` admits `p = c*x` only; a nonzero
/// constant `p` is not admissible. The witness `c` is read off the
/// coefficient of `x` and the whole identity is then verified.
pub fn classify(spec: &AlgebraSpec) -> Admissibility {
    let p = spec.p();
    let kind = spec.base_kind();
    match spec.sigma() {
        SigmaSpec::Affine { q, r } => {
            if q.is_one() && r.is_zero() {
                Admissibility::with(Verdict::PolyA, None)
            } else if q.is_one() {
                if p.is_constant() {
                    Admissibility::with(Verdict::PolyB, Some(p.coeff(0)))
                } else {
                    Admissibility::not_admissible()
                }
            } else {
                let c = p.coeff(1);
                let shift = r / &(q - &Scalar::one());
                let candidate =
                    BasePoly::from_terms(kind, [(1, c.clone()), (0, &c * &shift)]).unwrap();
                if *p == candidate {
                    Admissibility::with(Verdict::PolyC, Some(c))
                } else {
                    Admissibility::not_admissible()
                }
            }
        }
        SigmaSpec::LaurentPlus { q } => {
            if q.is_one() {
                Admissibility::with(Verdict::LaurentPlusQ1, None)
            } else {
                let c = p.coeff(1);
                let candidate = BasePoly::monomial(kind, c.clone(), 1).unwrap();
                if *p == candidate {
                    Admissibility::with(Verdict::LaurentPlusLinear, Some(c))
                } else {
                    Admissibility::not_admissible()
                }
            }
        }
        SigmaSpec::LaurentMinus { q } => {
            let c = p.coeff(1);
            if *p == minus_family_p(q, &c) {
                Admissibility::with(Verdict::LaurentMinus, Some(c))
            } else {
                Admissibility::not_admissible()
            }
        }
    }
}

/// `c (x - q x^-1)`.
pub fn minus_family_p(q: &Scalar, c: &Scalar) -> BasePoly {
    BasePoly::from_terms(BaseKind::Laurent, [(1, c.clone()), (-1, -(c * q))]).unwrap()
}

/// The differential equation making the `nu_x` images respect the relation:
/// `((q-1)x + r) p' = (q-1) p`, or `(x - q x^-1) p' = (1 + q x^-2) p` over the
/// `-` Laurent kind.
pub fn check_nu_x_constraint(spec: &AlgebraSpec) -> bool {
    let p = spec.p();
    let kind = spec.base_kind();
    let dp = p.derivative();
    let q = spec.q();
    let (lhs_factor, rhs_factor) = match spec.sigma() {
        SigmaSpec::LaurentMinus { .. } => (
            BasePoly::from_terms(kind, [(1, Scalar::one()), (-1, -q)]).unwrap(),
            BasePoly::from_terms(kind, [(0, Scalar::one()), (-2, q.clone())]).unwrap(),
        ),
        _ => {
            let qm1 = q - &Scalar::one();
            (
                BasePoly::from_terms(kind, [(1, qm1.clone()), (0, spec.r())]).unwrap(),
                BasePoly::constant(kind, qm1),
            )
        }
    };
    &lhs_factor * &dp == &rhs_factor * p
}

/// The substitution identity making the `nu_y` images respect the relation:
/// `p(q^-1 (x - r)) = q^-1 p(x)`, or `p(q x^-1) = -p(x)` over the `-`
/// Laurent kind.
pub fn check_nu_y_constraint(spec: &AlgebraSpec) -> bool {
    let p = spec.p();
    let substituted = apply_sigma_inverse(spec.sigma(), p).expect("spec is well formed");
    match spec.sigma() {
        SigmaSpec::LaurentMinus { .. } => substituted == -p,
        _ => substituted == p.scale(&spec.q().inv().unwrap()),
    }
}

/// Whether `p` lies in the span of `x^i - q^i x^-i` (`i >= 1`), the
/// condition for the `-` Laurent `nu_y` alone to extend.
pub fn check_bar_nu_y_only(p: &BasePoly, q: &Scalar) -> bool {
    let mut rebuilt = BasePoly::zero(BaseKind::Laurent);
    for (i, a) in p.terms().filter(|(i, _)| *i >= 1) {
        let qi = q.pow(i).unwrap();
        let term = BasePoly::from_terms(BaseKind::Laurent, [(i, a.clone()), (-i, -(a * &qi))])
            .unwrap();
        rebuilt = &rebuilt + &term;
    }
    p.with_kind(BaseKind::Laurent).map(|p| p == rebuilt).unwrap_or(false)
}

/// The two twisting automorphisms and their inverses.
#[derive(Debug, Clone)]
pub struct NuPair {
    pub nu_x: Endomorphism,
    pub nu_y: Endomorphism,
    pub nu_x_inv: Endomorphism,
    pub nu_y_inv: Endomorphism,
    pub admissibility: Admissibility,
}

impl NuPair {
    /// True for the `-` Laurent kind, where the maps commute only up to the
    /// twist by `x^2`.
    pub fn is_twisted(&self) -> bool {
        self.admissibility.verdict == Verdict::LaurentMinus
    }
}

/// Whether `phi(y) phi(x)` equals `phi` applied to the normal form of `yx`.
/// Since `phi` is evaluated term by term on normal forms, this is exactly
/// the condition for the generator images to define an algebra map.
pub fn respects_relation(phi: &Endomorphism) -> Result<bool> {
    let algebra = phi.algebra();
    let yx = &algebra.y() * &algebra.x();
    let lhs = phi.image_of_y() * phi.image_of_x();
    let rhs = phi.apply(&yx)?;
    if algebra.base_kind() == BaseKind::Laurent {
        // x must stay invertible
        phi.image_of_x().unit_inverse()?;
    }
    Ok(lhs == rhs)
}

fn is_inverse_pair(f: &Endomorphism, g: &Endomorphism) -> Result<bool> {
    let a = f.algebra();
    for gen in [a.x(), a.y()] {
        if f.apply(&g.apply(&gen)?)? != gen || g.apply(&f.apply(&gen)?)? != gen {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Builds the four maps, verifying relation preservation and the inverse
/// laws before returning.
pub fn build_nu_pair(algebra: &Algebra) -> Result<NuPair> {
    let spec = algebra.spec();
    let admissibility = classify(spec);
    if !admissibility.is_admissible() {
        return Err(Error::NotAdmissibleSpec(spec.to_string()));
    }
    let q = spec.q().clone();
    let q_inv = q.inv()?;
    let (x, y) = (algebra.x(), algebra.y());
    let dp = algebra.from_base(&spec.p().derivative())?;

    let (nu_x, nu_x_inv, nu_y, nu_y_inv) = match spec.sigma() {
        SigmaSpec::LaurentMinus { .. } => {
            let c = admissibility.witness.clone().expect("minus kind has a witness");
            // -q x^-2 y + p'
            let img = &algebra.monomial(-&q, -2, 1)? + &dp;
            // q^-1 (c (x^2 + q) - x^2 y)
            let inv_img = algebra.element([
                (2, 0, &c * &q_inv),
                (0, 0, c.clone()),
                (2, 1, -&q_inv),
            ])?;
            let flip = algebra.monomial(q.clone(), -1, 0)?;
            (
                Endomorphism::new(x.clone(), img)?,
                Endomorphism::new(x.clone(), inv_img)?,
                Endomorphism::new(flip.clone(), y.clone())?,
                Endomorphism::new(flip, y.clone())?,
            )
        }
        sigma => {
            let img = &y.scalar_mul(&q) + &dp;
            let inv_img = (&y - &dp).scalar_mul(&q_inv);
            let sx = algebra.from_base(&crate::basering::apply_sigma(
                sigma,
                &BasePoly::x(spec.base_kind()),
            )?)?;
            let sx_inv = algebra.from_base(&apply_sigma_inverse(
                sigma,
                &BasePoly::x(spec.base_kind()),
            )?)?;
            (
                Endomorphism::new(x.clone(), img)?,
                Endomorphism::new(x.clone(), inv_img)?,
                Endomorphism::new(sx_inv, y.clone())?,
                Endomorphism::new(sx, y.clone())?,
            )
        }
    };

    for (name, map) in [
        ("nu_x", &nu_x),
        ("nu_y", &nu_y),
        ("nu_x^-1", &nu_x_inv),
        ("nu_y^-1", &nu_y_inv),
    ] {
        if !respects_relation(map)? {
            return Err(Error::Inconsistent(format!(
                "{name} = {map:?} does not respect the relation of {spec}"
            )));
        }
    }
    if !is_inverse_pair(&nu_x, &nu_x_inv)? || !is_inverse_pair(&nu_y, &nu_y_inv)? {
        return Err(Error::Inconsistent(format!(
            "inverse laws fail for the twisting maps of {spec}"
        )));
    }
    Ok(NuPair {
        nu_x,
        nu_y,
        nu_x_inv,
        nu_y_inv,
        admissibility,
    })
}

/// `nu_y(nu_x(a)) = nu_x(nu_y(a))` on every monomial with `|k| + l <= bound`;
/// over the `-` Laurent kind the twisted form
/// `nu_y(nu_x(a)) x^2 = x^2 nu_x(nu_y(a))`.
pub fn check_commutation(pair: &NuPair, bound: u32) -> Result<Report> {
    let algebra = pair.nu_x.algebra();
    let twisted = pair.is_twisted();
    let name = if twisted {
        "twisted-commutation"
    } else {
        "commutation"
    };
    let mut report = Report::new(name, algebra.spec(), Some(bound));
    let x2 = algebra.x().pow(2);
    for (k, l) in monomial_exponents(algebra.base_kind(), bound) {
        let a = algebra.monomial(Scalar::one(), k, l)?;
        let yx = pair.nu_y.apply(&pair.nu_x.apply(&a)?)?;
        let xy = pair.nu_x.apply(&pair.nu_y.apply(&a)?)?;
        let (lhs, rhs) = if twisted {
            (&yx * &x2, &x2 * &xy)
        } else {
            (yx, xy)
        };
        report.case(lhs == rhs, || format!("a = {a}: {lhs} != {rhs}"));
    }
    Ok(report)
}
