//! The commutative base rings `K[x]` and `K[x, x^-1]`, their automorphisms
//! and the twisted derivations determined by a value at `x`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::text;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BaseKind {
    /// `K[x]`
    Poly,
    /// `K[x, x^-1]`
    Laurent,
}

impl BaseKind {
    fn join(self, other: BaseKind) -> BaseKind {
        if self == BaseKind::Laurent || other == BaseKind::Laurent {
            BaseKind::Laurent
        } else {
            BaseKind::Poly
        }
    }
}

/// A polynomial or Laurent polynomial in `x`.
///
/// Zero coefficients are never stored, and a `Poly` value never carries a
/// negative exponent.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BasePoly {
    kind: BaseKind,
    coeffs: BTreeMap<i64, Scalar>,
}

impl BasePoly {
    pub fn zero(kind: BaseKind) -> Self {
        BasePoly {
            kind,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(kind: BaseKind) -> Self {
        Self::constant(kind, Scalar::one())
    }

    pub fn constant(kind: BaseKind, c: Scalar) -> Self {
        let mut p = Self::zero(kind);
        p.add_term(0, c);
        p
    }

    pub fn monomial(kind: BaseKind, c: Scalar, exp: i64) -> Result<Self> {
        if kind == BaseKind::Poly && exp < 0 {
            return Err(Error::IncompatibleBaseRing(format!(
                "x^{exp} is not an element of K[x]"
            )));
        }
        let mut p = Self::zero(kind);
        p.add_term(exp, c);
        Ok(p)
    }

    pub fn x(kind: BaseKind) -> Self {
        Self::monomial(kind, Scalar::one(), 1).unwrap()
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms<I>(kind: BaseKind, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (i64, Scalar)>,
    {
        let mut p = Self::zero(kind);
        for (e, c) in terms {
            if kind == BaseKind::Poly && e < 0 {
                return Err(Error::IncompatibleBaseRing(format!(
                    "x^{e} is not an element of K[x]"
                )));
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    /// Integer-coefficient shorthand: `from_ints(Poly, &[(2, 1), (0, 3)])` is `x^2 + 3`.
    pub fn from_ints(kind: BaseKind, terms: &[(i64, i64)]) -> Result<Self> {
        Self::from_terms(kind, terms.iter().map(|&(e, c)| (e, Scalar::from(c))))
    }

    pub(crate) fn add_term(&mut self, exp: i64, c: Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert!(self.kind == BaseKind::Laurent || exp >= 0);
        let entry = self.coeffs.entry(exp).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.coeffs.remove(&exp);
        }
    }

    pub fn kind(&self) -> BaseKind {
        self.kind
    }

    /// Same coefficients viewed in another ring; fails when a negative
    /// exponent would land in `K[x]`.
    pub fn with_kind(&self, kind: BaseKind) -> Result<Self> {
        if kind == BaseKind::Poly && self.min_exp().is_some_and(|e| e < 0) {
            return Err(Error::IncompatibleBaseRing(format!(
                "{self} is not an element of K[x]"
            )));
        }
        Ok(BasePoly {
            kind,
            coeffs: self.coeffs.clone(),
        })
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    pub fn coeff(&self, exp: i64) -> Scalar {
        self.coeffs.get(&exp).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &Scalar)> + '_ {
        self.coeffs.iter().map(|(&e, c)| (e, c))
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn leading_coeff(&self) -> Option<&Scalar> {
        self.coeffs.values().next_back()
    }

    /// `Some((c, k))` when the value is a single term `c*x^k`.
    pub fn as_monomial(&self) -> Option<(&Scalar, i64)> {
        if self.coeffs.len() == 1 {
            self.coeffs.iter().next().map(|(&e, c)| (c, e))
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.kind);
        }
        BasePoly {
            kind: self.kind,
            coeffs: self.coeffs.iter().map(|(&e, v)| (e, v * c)).collect(),
        }
    }

    /// Multiplies by `x^shift`.
    pub fn shift(&self, shift: i64) -> Result<Self> {
        Self::from_terms(self.kind, self.terms().map(|(e, c)| (e + shift, c.clone())))
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.kind);
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Integer power, allowing negative exponents for units `c*x^k` of the
    /// Laurent ring.
    pub fn pow_int(&self, exp: i64) -> Result<Self> {
        if exp >= 0 {
            return Ok(self.pow(exp as u32));
        }
        let inv = self.unit_inverse()?;
        Ok(inv.pow((-exp) as u32))
    }

    /// Inverse of a unit. In `K[x]` the units are the nonzero constants; in
    /// the Laurent ring they are the nonzero monomials.
    pub fn unit_inverse(&self) -> Result<Self> {
        match self.as_monomial() {
            Some((c, e)) if self.kind == BaseKind::Laurent || e == 0 => {
                Self::monomial(self.kind, c.inv()?, -e)
            }
            _ => Err(Error::IncompatibleBaseRing(format!("{self} is not a unit"))),
        }
    }

    /// Formal derivative `d/dx`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::zero(self.kind);
        for (e, c) in self.terms() {
            if e != 0 {
                out.add_term(e - 1, c * &Scalar::from(e));
            }
        }
        out
    }

    /// Substitutes `x := g`. Negative exponents need `g` to be a unit.
    pub fn compose(&self, g: &BasePoly) -> Result<Self> {
        let kind = self.kind.join(g.kind);
        let mut out = Self::zero(kind);
        let max = self.max_exp().unwrap_or(0).max(0);
        let min = self.min_exp().unwrap_or(0).min(0);
        // powers g^0..=g^max, and g^-1..=g^min when needed
        let mut pos = vec![Self::one(kind)];
        for _ in 0..max {
            let next = &pos[pos.len() - 1] * g;
            pos.push(next);
        }
        let mut neg = Vec::new();
        if min < 0 {
            let ginv = g.unit_inverse()?;
            let mut acc = ginv.clone();
            neg.push(acc.clone());
            for _ in 1..(-min) {
                acc = &acc * &ginv;
                neg.push(acc.clone());
            }
        }
        for (e, c) in self.terms() {
            let power = if e >= 0 {
                &pos[e as usize]
            } else {
                &neg[(-e - 1) as usize]
            };
            out = &out + &power.scale(c);
        }
        Ok(out)
    }

    /// Evaluates at a scalar point. Negative exponents need a nonzero point.
    pub fn eval(&self, at: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (e, c) in self.terms() {
            acc += &(c * &at.pow(e)?);
        }
        Ok(acc)
    }

    /// Polynomial long division in `K[x]`: returns `(quotient, remainder)`
    /// with `deg remainder < deg divisor`.
    pub fn div_rem(&self, divisor: &BasePoly) -> Result<(Self, Self)> {
        if self.kind != BaseKind::Poly || divisor.kind != BaseKind::Poly {
            return Err(Error::IncompatibleBaseRing(
                "long division is only defined in K[x]".into(),
            ));
        }
        let dmax = divisor.max_exp().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.leading_coeff().unwrap().inv()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(BaseKind::Poly);
        while let Some(rmax) = rem.max_exp() {
            if rmax < dmax {
                break;
            }
            let factor = rem.leading_coeff().unwrap() * &lead_inv;
            let shift = rmax - dmax;
            quot.add_term(shift, factor.clone());
            let sub = divisor.shift(shift)?.scale(&factor);
            rem = &rem - &sub;
        }
        Ok((quot, rem))
    }
}

impl fmt::Display for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_sum(f, self.terms().map(|(e, c)| (c, text::power("x", e))))
    }
}

impl fmt::Debug for BasePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BasePoly[{:?}]({})", self.kind, self)
    }
}

impl Add for &BasePoly {
    type Output = BasePoly;
    fn add(self, rhs: &BasePoly) -> BasePoly {
        let mut out = BasePoly {
            kind: self.kind.join(rhs.kind),
            coeffs: self.coeffs.clone(),
        };
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl Sub for &BasePoly {
    type Output = BasePoly;
    fn sub(self, rhs: &BasePoly) -> BasePoly {
        let mut out = BasePoly {
            kind: self.kind.join(rhs.kind),
            coeffs: self.coeffs.clone(),
        };
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Neg for &BasePoly {
    type Output = BasePoly;
    fn neg(self) -> BasePoly {
        self.scale(&-Scalar::one())
    }
}

impl Mul for &BasePoly {
    type Output = BasePoly;
    fn mul(self, rhs: &BasePoly) -> BasePoly {
        let mut out = BasePoly::zero(self.kind.join(rhs.kind));
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

/// An automorphism of the base ring, given by its value on `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SigmaSpec {
    /// `x -> q*x + r` on `K[x]` (and on the Laurent ring when `r = 0`).
    Affine { q: Scalar, r: Scalar },
    /// `x -> q*x` on `K[x, x^-1]`.
    LaurentPlus { q: Scalar },
    /// `x -> q*x^-1` on `K[x, x^-1]`.
    LaurentMinus { q: Scalar },
}

impl SigmaSpec {
    pub fn affine(q: Scalar, r: Scalar) -> Result<Self> {
        Self::nonzero(&q)?;
        Ok(SigmaSpec::Affine { q, r })
    }

    pub fn laurent_plus(q: Scalar) -> Result<Self> {
        Self::nonzero(&q)?;
        Ok(SigmaSpec::LaurentPlus { q })
    }

    pub fn laurent_minus(q: Scalar) -> Result<Self> {
        Self::nonzero(&q)?;
        Ok(SigmaSpec::LaurentMinus { q })
    }

    fn nonzero(q: &Scalar) -> Result<()> {
        if q.is_zero() {
            Err(Error::InvalidSpec("q must be nonzero".into()))
        } else {
            Ok(())
        }
    }

    pub fn q(&self) -> &Scalar {
        match self {
            SigmaSpec::Affine { q, .. }
            | SigmaSpec::LaurentPlus { q }
            | SigmaSpec::LaurentMinus { q } => q,
        }
    }

    /// The translation part; zero for the Laurent kinds.
    pub fn r(&self) -> Scalar {
        match self {
            SigmaSpec::Affine { r, .. } => r.clone(),
            _ => Scalar::zero(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            SigmaSpec::Affine { q, r } => q.is_one() && r.is_zero(),
            SigmaSpec::LaurentPlus { q } => q.is_one(),
            SigmaSpec::LaurentMinus { .. } => false,
        }
    }

    pub fn inverse(&self) -> SigmaSpec {
        match self {
            SigmaSpec::Affine { q, r } => {
                let qi = q.inv().expect("q is nonzero");
                SigmaSpec::Affine {
                    r: -(r * &qi),
                    q: qi,
                }
            }
            SigmaSpec::LaurentPlus { q } => SigmaSpec::LaurentPlus {
                q: q.inv().expect("q is nonzero"),
            },
            // q*(q*x^-1)^-1 = x
            SigmaSpec::LaurentMinus { q } => SigmaSpec::LaurentMinus { q: q.clone() },
        }
    }

    fn check_compatible(&self, f: &BasePoly) -> Result<()> {
        match self {
            SigmaSpec::Affine { r, .. } if !r.is_zero() && f.kind() == BaseKind::Laurent => {
                Err(Error::IncompatibleBaseRing(
                    "x -> q*x + r with r != 0 does not extend to K[x, x^-1]".into(),
                ))
            }
            SigmaSpec::LaurentPlus { .. } | SigmaSpec::LaurentMinus { .. }
                if f.kind() == BaseKind::Poly =>
            {
                Err(Error::IncompatibleBaseRing(
                    "Laurent automorphisms act on K[x, x^-1], not K[x]".into(),
                ))
            }
            _ => Ok(()),
        }
    }

    /// `sigma(x)` as an element of the ring `f` lives in.
    fn image_of_x(&self, kind: BaseKind) -> BasePoly {
        let terms = match self {
            SigmaSpec::Affine { q, r } => vec![(1, q.clone()), (0, r.clone())],
            SigmaSpec::LaurentPlus { q } => vec![(1, q.clone())],
            SigmaSpec::LaurentMinus { q } => vec![(-1, q.clone())],
        };
        BasePoly::from_terms(kind, terms).expect("checked compatible")
    }
}

impl fmt::Display for SigmaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SigmaSpec::Affine { q, r } => write!(f, "x -> {q}*x + {r}"),
            SigmaSpec::LaurentPlus { q } => write!(f, "x -> {q}*x"),
            SigmaSpec::LaurentMinus { q } => write!(f, "x -> {q}*x^-1"),
        }
    }
}

/// `f(sigma(x))`.
pub fn apply_sigma(s: &SigmaSpec, f: &BasePoly) -> Result<BasePoly> {
    s.check_compatible(f)?;
    match s {
        // monomials map to monomials, so skip the general substitution
        SigmaSpec::LaurentPlus { q } | SigmaSpec::Affine { q, .. } if s.r().is_zero() => {
            BasePoly::from_terms(
                f.kind(),
                f.terms().map(|(e, c)| (e, c * &q.pow(e).unwrap())),
            )
        }
        SigmaSpec::LaurentMinus { q } => BasePoly::from_terms(
            f.kind(),
            f.terms().map(|(e, c)| (-e, c * &q.pow(e).unwrap())),
        ),
        SigmaSpec::Affine { .. } => f.compose(&s.image_of_x(f.kind())),
        SigmaSpec::LaurentPlus { .. } => unreachable!(),
    }
}

/// `f(sigma^-1(x))`.
pub fn apply_sigma_inverse(s: &SigmaSpec, f: &BasePoly) -> Result<BasePoly> {
    s.check_compatible(f)?;
    apply_sigma(&s.inverse(), f)
}

/// The `sigma`-derivation `delta_p` with `delta_p(x) = p`, applied to `f`.
///
/// On `K[x]` with a non-identity affine `sigma` this is the divided
/// difference `(f(sigma(x)) - f(x)) / (sigma(x) - x) * p`. When `sigma` is
/// the identity it is `f' * p`. On the Laurent ring it is the extension
/// through the twisted Leibniz rule, see [`apply_delta_leibniz`].
pub fn apply_delta(s: &SigmaSpec, p: &BasePoly, f: &BasePoly) -> Result<BasePoly> {
    s.check_compatible(f)?;
    s.check_compatible(p)?;
    if s.is_identity() {
        return Ok(&f.derivative() * p);
    }
    if f.kind() == BaseKind::Poly && matches!(s, SigmaSpec::Affine { .. }) {
        let numerator = &apply_sigma(s, f)? - f;
        let step = &s.image_of_x(BaseKind::Poly) - &BasePoly::x(BaseKind::Poly);
        let (quot, rem) = numerator.div_rem(&step)?;
        assert!(
            rem.is_zero(),
            "f(sigma(x)) - f(x) must be divisible by sigma(x) - x"
        );
        return Ok(&quot * p);
    }
    apply_delta_leibniz(s, p, f)
}

/// `delta_p(f)` computed monomial by monomial from `delta(x) = p` and
/// `delta(ab) = delta(a) b + sigma(a) delta(b)`:
///
/// - `delta(x^k) = sum_{i<k} sigma(x)^i p x^(k-1-i)` for `k > 0`,
/// - `delta(x^-1) = -sigma(x^-1) p x^-1`, extended to `x^-m` the same way.
pub fn apply_delta_leibniz(s: &SigmaSpec, p: &BasePoly, f: &BasePoly) -> Result<BasePoly> {
    s.check_compatible(f)?;
    s.check_compatible(p)?;
    let kind = f.kind().join(p.kind());
    let mut out = BasePoly::zero(kind);
    let max = f.max_exp().unwrap_or(0);
    let min = f.min_exp().unwrap_or(0);

    if max > 0 {
        let sx = s.image_of_x(kind);
        let mut sigma_pows = vec![BasePoly::one(kind)];
        for _ in 1..max {
            let next = &sigma_pows[sigma_pows.len() - 1] * &sx;
            sigma_pows.push(next);
        }
        for (e, c) in f.terms().filter(|(e, _)| *e > 0) {
            let mut d = BasePoly::zero(kind);
            for (i, sp) in sigma_pows.iter().enumerate().take(e as usize) {
                let rest = BasePoly::monomial(kind, Scalar::one(), e - 1 - i as i64)?;
                d = &d + &(&(sp * p) * &rest);
            }
            out = &out + &d.scale(c);
        }
    }
    if min < 0 {
        let x_inv = BasePoly::monomial(kind, Scalar::one(), -1)?;
        let sx_inv = apply_sigma(s, &x_inv)?;
        let delta_x_inv = -&(&(&sx_inv * p) * &x_inv);
        let mut sigma_pows = vec![BasePoly::one(kind)];
        for _ in 1..(-min) {
            let next = &sigma_pows[sigma_pows.len() - 1] * &sx_inv;
            sigma_pows.push(next);
        }
        for (e, c) in f.terms().filter(|(e, _)| *e < 0) {
            let m = -e;
            let mut d = BasePoly::zero(kind);
            for (i, sp) in sigma_pows.iter().enumerate().take(m as usize) {
                let rest = BasePoly::monomial(kind, Scalar::one(), -(m - 1 - i as i64))?;
                d = &d + &(&(sp * &delta_x_inv) * &rest);
            }
            out = &out + &d.scale(c);
        }
    }
    Ok(out)
}

/// Formal derivative, Laurent exponents included.
pub fn derivative(f: &BasePoly) -> BasePoly {
    f.derivative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sample::Sampler;

    use BaseKind::{Laurent, Poly};

    fn q(t: &str) -> Scalar {
        t.parse().unwrap()
    }

    fn poly(terms: &[(i64, i64)]) -> BasePoly {
        BasePoly::from_ints(Poly, terms).unwrap()
    }

    fn laurent(terms: &[(i64, i64)]) -> BasePoly {
        BasePoly::from_ints(Laurent, terms).unwrap()
    }

    #[test]
    fn sigma_examples() {
        let s = SigmaSpec::affine(q("2"), q("1")).unwrap();
        assert_eq!(
            apply_sigma(&s, &poly(&[(2, 1)])).unwrap(),
            poly(&[(2, 4), (1, 4), (0, 1)])
        );
        let s = SigmaSpec::laurent_minus(q("5")).unwrap();
        assert_eq!(apply_sigma(&s, &laurent(&[(1, 1)])).unwrap(), laurent(&[(-1, 5)]));
        let id = SigmaSpec::affine(q("1"), q("0")).unwrap();
        let f = poly(&[(3, 2), (1, -1), (0, 7)]);
        assert_eq!(apply_sigma(&id, &f).unwrap(), f);
    }

    #[test]
    fn sigma_inverse_examples() {
        let s = SigmaSpec::affine(q("2"), q("2")).unwrap();
        let expected =
            BasePoly::from_terms(Poly, [(1, q("1/2")), (0, q("-1"))]).unwrap();
        assert_eq!(apply_sigma_inverse(&s, &BasePoly::x(Poly)).unwrap(), expected);
        let s = SigmaSpec::laurent_minus(q("3")).unwrap();
        assert_eq!(
            apply_sigma_inverse(&s, &BasePoly::x(Laurent)).unwrap(),
            laurent(&[(-1, 3)])
        );
        let id = SigmaSpec::affine(q("1"), q("0")).unwrap();
        let f = poly(&[(4, 1), (0, -2)]);
        assert_eq!(apply_sigma_inverse(&id, &f).unwrap(), f);
    }

    #[test]
    fn incompatible_rings_are_rejected() {
        let minus = SigmaSpec::laurent_minus(q("2")).unwrap();
        assert!(matches!(
            apply_sigma(&minus, &poly(&[(1, 1)])),
            Err(Error::IncompatibleBaseRing(_))
        ));
        let shift = SigmaSpec::affine(q("1"), q("1")).unwrap();
        assert!(matches!(
            apply_sigma(&shift, &laurent(&[(-1, 1)])),
            Err(Error::IncompatibleBaseRing(_))
        ));
        assert!(SigmaSpec::affine(q("0"), q("1")).is_err());
        assert!(SigmaSpec::laurent_plus(q("0")).is_err());
    }

    #[test]
    fn delta_examples() {
        let id = SigmaSpec::affine(q("1"), q("0")).unwrap();
        assert_eq!(
            apply_delta(&id, &poly(&[(1, 1)]), &poly(&[(3, 1)])).unwrap(),
            poly(&[(3, 3)])
        );
        let p = poly(&[(4, 2), (0, -1)]);
        let s = SigmaSpec::affine(q("3"), q("0")).unwrap();
        assert_eq!(apply_delta(&s, &p, &BasePoly::x(Poly)).unwrap(), p);
        // (f(2x) - f(x)) / (2x - x) with f = x^2 is 3x
        let s = SigmaSpec::affine(q("2"), q("0")).unwrap();
        assert_eq!(
            apply_delta(&s, &poly(&[(0, 1)]), &poly(&[(2, 1)])).unwrap(),
            poly(&[(1, 3)])
        );
    }

    #[test]
    fn delta_of_x_inverse_solves_leibniz_on_x_times_x_inverse() {
        // 0 = delta(x x^-1) = delta(x) x^-1 + sigma(x) delta(x^-1)
        for s in [
            SigmaSpec::laurent_minus(q("3")).unwrap(),
            SigmaSpec::laurent_plus(q("-2/5")).unwrap(),
        ] {
            let p = laurent(&[(2, 1), (-1, 4), (0, -3)]);
            let x = BasePoly::x(Laurent);
            let x_inv = laurent(&[(-1, 1)]);
            let d_inv = apply_delta(&s, &p, &x_inv).unwrap();
            let sx = apply_sigma(&s, &x).unwrap();
            let lhs = &(&p * &x_inv) + &(&sx * &d_inv);
            assert!(lhs.is_zero(), "{s}: {lhs}");
        }
        // closed form for the minus kind: -q^-1 * x * p * x^-1 = -q^-1 p
        let s = SigmaSpec::laurent_minus(q("3")).unwrap();
        let p = laurent(&[(1, 1), (-1, -3)]);
        let got = apply_delta(&s, &p, &laurent(&[(-1, 1)])).unwrap();
        assert_eq!(got, p.scale(&q("-1/3")));
    }

    #[test]
    fn derivative_examples() {
        assert_eq!(derivative(&poly(&[(3, 1), (1, 2)])), poly(&[(2, 3), (0, 2)]));
        assert!(derivative(&poly(&[(0, 9)])).is_zero());
        assert_eq!(derivative(&laurent(&[(-1, 1)])), laurent(&[(-2, -1)]));
    }

    #[test]
    fn divided_difference_agrees_with_leibniz_extension_on_polynomials() {
        let mut rng = Sampler::with_seed(11);
        for _ in 0..100 {
            let s = SigmaSpec::affine(rng.nonzero_scalar(), rng.scalar()).unwrap();
            let p = rng.base_poly(Poly, 4);
            let f = rng.base_poly(Poly, 5);
            assert_eq!(
                apply_delta(&s, &p, &f).unwrap(),
                apply_delta_leibniz(&s, &p, &f).unwrap()
            );
        }
    }

    fn sigma_cases() -> Vec<(SigmaSpec, BaseKind)> {
        vec![
            (SigmaSpec::affine(q("1"), q("0")).unwrap(), Poly),
            (SigmaSpec::affine(q("1"), q("3")).unwrap(), Poly),
            (SigmaSpec::affine(q("2"), q("-1")).unwrap(), Poly),
            (SigmaSpec::affine(q("-1/3"), q("0")).unwrap(), Poly),
            (SigmaSpec::affine(q("5/2"), q("0")).unwrap(), Laurent),
            (SigmaSpec::laurent_plus(q("1")).unwrap(), Laurent),
            (SigmaSpec::laurent_plus(q("3")).unwrap(), Laurent),
            (SigmaSpec::laurent_minus(q("2")).unwrap(), Laurent),
            (SigmaSpec::laurent_minus(q("-3/4")).unwrap(), Laurent),
        ]
    }

    #[test]
    fn sigma_is_a_ring_map_with_inverse() {
        let mut rng = Sampler::with_seed(12);
        for (s, kind) in sigma_cases() {
            assert_eq!(
                apply_sigma(&s, &BasePoly::one(kind)).unwrap(),
                BasePoly::one(kind)
            );
            for _ in 0..30 {
                let f = rng.base_poly(kind, 5);
                let g = rng.base_poly(kind, 5);
                let sf = apply_sigma(&s, &f).unwrap();
                let sg = apply_sigma(&s, &g).unwrap();
                assert_eq!(apply_sigma(&s, &(&f * &g)).unwrap(), &sf * &sg);
                let back = apply_sigma(&s, &apply_sigma_inverse(&s, &f).unwrap()).unwrap();
                assert_eq!(back, f);
            }
        }
    }

    #[test]
    fn delta_is_a_sigma_derivation() {
        let mut rng = Sampler::with_seed(13);
        for (s, kind) in sigma_cases() {
            let p = rng.base_poly(kind, 3);
            for _ in 0..40 {
                let f = rng.base_poly(kind, 5);
                let g = rng.base_poly(kind, 5);
                let lhs = apply_delta(&s, &p, &(&f * &g)).unwrap();
                let rhs = &(&apply_delta(&s, &p, &f).unwrap() * &g)
                    + &(&apply_sigma(&s, &f).unwrap() * &apply_delta(&s, &p, &g).unwrap());
                assert_eq!(lhs, rhs, "{s}, p = {p}, f = {f}, g = {g}");
            }
        }
    }

    #[test]
    fn display_is_ascending() {
        assert_eq!(laurent(&[(2, 1), (0, -3), (-1, 2)]).to_string(), "2*x^-1 - 3 + x^2");
        assert_eq!(BasePoly::zero(Poly).to_string(), "0");
        assert_eq!(
            BasePoly::from_terms(Poly, [(1, q("-1/2"))]).unwrap().to_string(),
            "-1/2*x"
        );
    }

    #[test]
    fn long_division() {
        let f = poly(&[(3, 1), (0, -1)]);
        let g = poly(&[(1, 1), (0, -1)]);
        let (quot, rem) = f.div_rem(&g).unwrap();
        assert_eq!(quot, poly(&[(2, 1), (1, 1), (0, 1)]));
        assert!(rem.is_zero());
        let (_, rem) = poly(&[(2, 1)]).div_rem(&g).unwrap();
        assert_eq!(rem, poly(&[(0, 1)]));
    }
}
