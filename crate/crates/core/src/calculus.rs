//! The two-dimensional calculus over an admissible Ore extension.
//!
//! `Ω¹` is free as a right module on `dx, dy`, with left multiplication
//! twisted by the automorphisms of [`crate::morphisms`]:
//! `a dx = dx nu_x(a)`, `a dy = dy nu_y(a)`. `Ω²` is free of rank one on the
//! volume form, `dx∧dy` in the untwisted cases and `dy∧dx` over the `-`
//! Laurent kind, with
//!
//! ```text
//! dx∧dx = dy∧dy = 0
//! dy∧dx = -q dx∧dy          (untwisted)
//! dx∧dy = q dy∧dx x^-2      (- Laurent kind)
//! ```

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::nullspace;
use crate::morphisms::{build_nu_pair, NuPair};
use crate::ore::{monomial_exponents, Algebra, Endomorphism, OreElement};
use crate::report::Report;
use crate::scalar::Scalar;

/// `dx·a + dy·b`.
#[derive(Clone, PartialEq, Eq)]
pub struct OneForm {
    pub a: OreElement,
    pub b: OreElement,
}

impl OneForm {
    pub fn new(a: OreElement, b: OreElement) -> Result<Self> {
        a.try_add(&b.algebra().zero())?;
        if !a.algebra().same_as(b.algebra()) {
            return Err(Error::SpecMismatch(
                a.algebra().spec().to_string(),
                b.algebra().spec().to_string(),
            ));
        }
        Ok(OneForm { a, b })
    }

    pub fn zero(algebra: &Algebra) -> Self {
        OneForm {
            a: algebra.zero(),
            b: algebra.zero(),
        }
    }

    pub fn dx(algebra: &Algebra) -> Self {
        OneForm {
            a: algebra.one(),
            b: algebra.zero(),
        }
    }

    pub fn dy(algebra: &Algebra) -> Self {
        OneForm {
            a: algebra.zero(),
            b: algebra.one(),
        }
    }

    pub fn algebra(&self) -> &Algebra {
        self.a.algebra()
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn try_add(&self, other: &OneForm) -> Result<OneForm> {
        Ok(OneForm {
            a: self.a.try_add(&other.a)?,
            b: self.b.try_add(&other.b)?,
        })
    }

    pub fn try_sub(&self, other: &OneForm) -> Result<OneForm> {
        Ok(OneForm {
            a: self.a.try_sub(&other.a)?,
            b: self.b.try_sub(&other.b)?,
        })
    }

    /// `(dx·a + dy·b)·c = dx·(ac) + dy·(bc)`.
    pub fn right_mul(&self, c: &OreElement) -> Result<OneForm> {
        Ok(OneForm {
            a: self.a.try_mul(c)?,
            b: self.b.try_mul(c)?,
        })
    }

    pub fn scalar_mul(&self, s: &Scalar) -> OneForm {
        OneForm {
            a: self.a.scalar_mul(s),
            b: self.b.scalar_mul(s),
        }
    }
}

impl fmt::Display for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "dx*({})", self.a),
            (true, false) => write!(f, "dy*({})", self.b),
            (false, false) => write!(f, "dx*({}) + dy*({})", self.a, self.b),
        }
    }
}

impl fmt::Debug for OneForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Which wedge of the generators freely spans `Ω²`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize)]
pub enum VolumeForm {
    /// `dx∧dy`
    DxDy,
    /// `dy∧dx`
    DyDx,
}

impl fmt::Display for VolumeForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            VolumeForm::DxDy => "dx*dy",
            VolumeForm::DyDx => "dy*dx",
        })
    }
}

/// `ω·c` for the volume form `ω`.
#[derive(Clone, PartialEq, Eq)]
pub struct TwoForm {
    pub coeff: OreElement,
    pub volume: VolumeForm,
}

impl TwoForm {
    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    pub fn try_add(&self, other: &TwoForm) -> Result<TwoForm> {
        debug_assert_eq!(self.volume, other.volume);
        Ok(TwoForm {
            coeff: self.coeff.try_add(&other.coeff)?,
            volume: self.volume,
        })
    }

    pub fn right_mul(&self, c: &OreElement) -> Result<TwoForm> {
        Ok(TwoForm {
            coeff: self.coeff.try_mul(c)?,
            volume: self.volume,
        })
    }
}

impl fmt::Display for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "{}*({})", self.volume, self.coeff)
        }
    }
}

impl fmt::Debug for TwoForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// `φ_x·a + φ_y·b` in the module of right-linear maps `Ω¹ -> A`, where
/// `φ_x(dx·u + dy·v) = u`, `φ_y(dx·u + dy·v) = v`, and
/// `(φ·a)(w) = φ(a w)`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegralForm1 {
    pub a: OreElement,
    pub b: OreElement,
}

impl IntegralForm1 {
    pub fn phi_x(algebra: &Algebra) -> Self {
        IntegralForm1 {
            a: algebra.one(),
            b: algebra.zero(),
        }
    }

    pub fn phi_y(algebra: &Algebra) -> Self {
        IntegralForm1 {
            a: algebra.zero(),
            b: algebra.one(),
        }
    }

    pub fn right_mul(&self, c: &OreElement) -> Result<Self> {
        Ok(IntegralForm1 {
            a: self.a.try_mul(c)?,
            b: self.b.try_mul(c)?,
        })
    }

    pub fn try_add(&self, other: &IntegralForm1) -> Result<Self> {
        Ok(IntegralForm1 {
            a: self.a.try_add(&other.a)?,
            b: self.b.try_add(&other.b)?,
        })
    }
}

impl fmt::Display for IntegralForm1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (true, true) => f.write_str("0"),
            (false, true) => write!(f, "phi_x*({})", self.a),
            (true, false) => write!(f, "phi_y*({})", self.b),
            (false, false) => write!(f, "phi_x*({}) + phi_y*({})", self.a, self.b),
        }
    }
}

impl fmt::Debug for IntegralForm1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Forms `ω_i`, `ω̄_i` for the integrability criterion: for every one-form
/// `w`,
///
/// ```text
/// w = Σ ω_i π(ω̄_i ∧ w) = Σ ν_ω^-1(π(w ∧ ω_i)) ω̄_i
/// ```
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualBasis {
    pub omega: Vec<OneForm>,
    pub omega_bar: Vec<OneForm>,
}

impl DualBasis {
    /// `ω_1 = dx, ω̄_1 = -q^-1 dy, ω_2 = dy, ω̄_2 = dx`.
    pub fn untwisted(algebra: &Algebra) -> Self {
        let q_inv = algebra.spec().q().inv().unwrap();
        DualBasis {
            omega: vec![OneForm::dx(algebra), OneForm::dy(algebra)],
            omega_bar: vec![OneForm::dy(algebra).scalar_mul(&-q_inv), OneForm::dx(algebra)],
        }
    }

    /// `ω_1 = dx, ω̄_1 = dy, ω_2 = dy, ω̄_2 = q dx x^-2`.
    pub fn twisted(algebra: &Algebra) -> Self {
        let q = algebra.spec().q().clone();
        let bar2 = OneForm {
            a: algebra.monomial(q, -2, 0).unwrap(),
            b: algebra.zero(),
        };
        DualBasis {
            omega: vec![OneForm::dx(algebra), OneForm::dy(algebra)],
            omega_bar: vec![OneForm::dy(algebra), bar2],
        }
    }

    /// All four forms, `ω_1, ω_2, ω̄_1, ω̄_2`, for mutation sweeps.
    pub fn forms_mut(&mut self) -> impl Iterator<Item = &mut OneForm> {
        self.omega.iter_mut().chain(self.omega_bar.iter_mut())
    }
}

/// An integrable two-dimensional calculus over an admissible algebra.
#[derive(Debug, Clone)]
pub struct Calculus {
    algebra: Algebra,
    nu: NuPair,
    volume: VolumeForm,
    nu_omega: Endomorphism,
    nu_omega_inv: Endomorphism,
    dual: DualBasis,
}

impl Calculus {
    /// Builds the calculus; fails with `NotAdmissibleSpec` when the twisting
    /// automorphisms do not exist. Construction cross-checks the general
    /// divergence formula against `∂_x a + ∂_y b` on low-degree forms.
    pub fn new(algebra: &Algebra) -> Result<Self> {
        let nu = build_nu_pair(algebra)?;
        let (volume, nu_omega, nu_omega_inv, dual) = if nu.is_twisted() {
            (
                VolumeForm::DyDx,
                nu.nu_x.compose(&nu.nu_y)?,
                nu.nu_y_inv.compose(&nu.nu_x_inv)?,
                DualBasis::twisted(algebra),
            )
        } else {
            (
                VolumeForm::DxDy,
                nu.nu_y.compose(&nu.nu_x)?,
                nu.nu_x_inv.compose(&nu.nu_y_inv)?,
                DualBasis::untwisted(algebra),
            )
        };
        let calculus = Calculus {
            algebra: algebra.clone(),
            nu,
            volume,
            nu_omega,
            nu_omega_inv,
            dual,
        };
        calculus.cross_check_divergence(2)?;
        Ok(calculus)
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn nu_pair(&self) -> &NuPair {
        &self.nu
    }

    pub fn volume(&self) -> VolumeForm {
        self.volume
    }

    pub fn dual_basis(&self) -> &DualBasis {
        &self.dual
    }

    /// `ν_ω` with `a ω = ω ν_ω(a)`.
    pub fn volume_automorphism(&self) -> &Endomorphism {
        &self.nu_omega
    }

    pub fn volume_automorphism_inverse(&self) -> &Endomorphism {
        &self.nu_omega_inv
    }

    /// `a·(dx·u + dy·v) = dx·(ν_x(a) u) + dy·(ν_y(a) v)`.
    pub fn left_mul_oneform(&self, a: &OreElement, w: &OneForm) -> Result<OneForm> {
        Ok(OneForm {
            a: self.nu.nu_x.apply(a)?.try_mul(&w.a)?,
            b: self.nu.nu_y.apply(a)?.try_mul(&w.b)?,
        })
    }

    /// `a·ω·c = ω·ν_ω(a) c`.
    pub fn left_mul_twoform(&self, a: &OreElement, w: &TwoForm) -> Result<TwoForm> {
        Ok(TwoForm {
            coeff: self.nu_omega.apply(a)?.try_mul(&w.coeff)?,
            volume: self.volume,
        })
    }

    /// `∂_x(x^k y^l) = k x^(k-1) y^l`.
    pub fn partial_x(&self, a: &OreElement) -> Result<OreElement> {
        self.algebra.element(
            a.terms()
                .filter(|(k, _, _)| *k != 0)
                .map(|(k, l, c)| (k - 1, l, c * &Scalar::from(k))),
        )
    }

    /// `∂_y(x^k y^l) = l ν_y(x^k) y^(l-1)`, the coefficient forced by
    /// `x^k dy = dy ν_y(x^k)` in the Leibniz expansion.
    pub fn partial_y(&self, a: &OreElement) -> Result<OreElement> {
        let mut out = self.algebra.zero();
        for (k, l, c) in a.terms().filter(|(_, l, _)| *l > 0) {
            let xk = self
                .algebra
                .monomial(c * &Scalar::from(l as i64), k, 0)?;
            let moved = self.nu.nu_y.apply(&xk)?;
            let y_rest = self.algebra.monomial(Scalar::one(), 0, l - 1)?;
            out = out.try_add(&moved.try_mul(&y_rest)?)?;
        }
        Ok(out)
    }

    /// `d(a) = dx ∂_x(a) + dy ∂_y(a)`.
    pub fn differential(&self, a: &OreElement) -> Result<OneForm> {
        Ok(OneForm {
            a: self.partial_x(a)?,
            b: self.partial_y(a)?,
        })
    }

    /// Product of one-forms in the volume basis. For `u = dx·a + dy·b`,
    /// `v = dx·a' + dy·b'`, the coefficient is
    /// `ν_y(a) b' - q ν_x(b) a'` on `dx∧dy`, or
    /// `q x^-2 ν_y(a) b' + ν_x(b) a'` on `dy∧dx` over the `-` Laurent kind.
    pub fn wedge(&self, u: &OneForm, v: &OneForm) -> Result<TwoForm> {
        let q = self.algebra.spec().q();
        let ya = self.nu.nu_y.apply(&u.a)?.try_mul(&v.b)?;
        let xb = self.nu.nu_x.apply(&u.b)?.try_mul(&v.a)?;
        let coeff = match self.volume {
            VolumeForm::DxDy => ya.try_sub(&xb.scalar_mul(q))?,
            VolumeForm::DyDx => {
                let twist = self.algebra.monomial(q.clone(), -2, 0)?;
                twist.try_mul(&ya)?.try_add(&xb)?
            }
        };
        Ok(TwoForm {
            coeff,
            volume: self.volume,
        })
    }

    /// `π_ω(ω a) = a`.
    pub fn pi_omega(&self, w: &TwoForm) -> OreElement {
        w.coeff.clone()
    }

    /// Evaluates `φ` on a one-form.
    pub fn eval_integral_form(&self, phi: &IntegralForm1, w: &OneForm) -> Result<OreElement> {
        let left = self.left_mul_oneform(&phi.a, w)?;
        let right = self.left_mul_oneform(&phi.b, w)?;
        left.a.try_add(&right.b)
    }

    /// `∇φ = -Σ_i π_ω(d(ν_ω^-1(φ(ω_i))) ∧ ω̄_i)`, evaluated on the dual basis.
    pub fn divergence(&self, phi: &IntegralForm1) -> Result<OreElement> {
        self.divergence_with(&self.dual, phi)
    }

    fn divergence_with(&self, dual: &DualBasis, phi: &IntegralForm1) -> Result<OreElement> {
        let mut sum = self.algebra.zero();
        for (w, w_bar) in dual.omega.iter().zip(&dual.omega_bar) {
            let value = self.eval_integral_form(phi, w)?;
            let pulled = self.nu_omega_inv.apply(&value)?;
            let two = self.wedge(&self.differential(&pulled)?, w_bar)?;
            sum = sum.try_add(&self.pi_omega(&two))?;
        }
        Ok(-&sum)
    }

    /// `∂_x(a) + ∂_y(b)` for `φ = φ_x·a + φ_y·b`.
    pub fn divergence_closed_form(&self, phi: &IntegralForm1) -> Result<OreElement> {
        self.partial_x(&phi.a)?.try_add(&self.partial_y(&phi.b)?)
    }

    fn cross_check_divergence(&self, bound: u32) -> Result<()> {
        for (k, l) in monomial_exponents(self.algebra.base_kind(), bound) {
            let m = self.algebra.monomial(Scalar::one(), k, l)?;
            for phi in [
                IntegralForm1::phi_x(&self.algebra).right_mul(&m)?,
                IntegralForm1::phi_y(&self.algebra).right_mul(&m)?,
            ] {
                let general = self.divergence(&phi)?;
                let closed = self.divergence_closed_form(&phi)?;
                if general != closed {
                    return Err(Error::Inconsistent(format!(
                        "divergence of {phi}: general formula gives {general}, closed form {closed}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// A form `φ` with `∇φ = c x^k y^l`.
    ///
    /// Uses `φ_x·x^(k+1) y^l / (k+1)` unless `k = -1`; then `∂_x` cannot reach
    /// `x^-1` and `φ_y·x^j y^(l+1)` is scaled instead, with `j = ±1` chosen so
    /// that `ν_y(x^j)` is a multiple of `x^-1`.
    pub fn divergence_preimage(&self, c: &Scalar, k: i64, l: u32) -> Result<IntegralForm1> {
        let alg = &self.algebra;
        if k != -1 {
            let s = c.checked_div(&Scalar::from(k + 1))?;
            return Ok(IntegralForm1 {
                a: alg.monomial(s, k + 1, l)?,
                b: alg.zero(),
            });
        }
        for j in [-1, 1] {
            let candidate = alg.monomial(Scalar::one(), j, l + 1)?;
            let hit = self.partial_y(&candidate)?;
            if let Some((s, kk)) = single_term(&hit) {
                if kk == (-1, l) {
                    return Ok(IntegralForm1 {
                        a: alg.zero(),
                        b: candidate.scalar_mul(&c.checked_div(s)?),
                    });
                }
            }
        }
        Err(Error::NoPreimage(format!("{c}*x^{k}*y^{l}")))
    }

    /// Preimage of an arbitrary element, term by term.
    pub fn divergence_preimage_of(&self, a: &OreElement) -> Result<IntegralForm1> {
        let mut out = IntegralForm1 {
            a: self.algebra.zero(),
            b: self.algebra.zero(),
        };
        for (k, l, c) in a.terms() {
            out = out.try_add(&self.divergence_preimage(c, k, l)?)?;
        }
        Ok(out)
    }

    /// Verifies both dual-basis identities on every `dx·x^k y^l` and
    /// `dy·x^k y^l` with `|k| + l <= bound`.
    pub fn check_dual_basis(&self, bound: u32) -> Result<Report> {
        self.check_dual_basis_with(&self.dual, bound)
    }

    /// Same sweep with caller-supplied forms, e.g. a deliberately corrupted set.
    pub fn check_dual_basis_with(&self, dual: &DualBasis, bound: u32) -> Result<Report> {
        let alg = &self.algebra;
        let mut report = Report::new("dual-basis", alg.spec(), Some(bound));
        report.detail("volume", self.volume);
        for (k, l) in monomial_exponents(alg.base_kind(), bound) {
            let m = alg.monomial(Scalar::one(), k, l)?;
            for w in [
                OneForm::dx(alg).right_mul(&m)?,
                OneForm::dy(alg).right_mul(&m)?,
            ] {
                let mut first = OneForm::zero(alg);
                let mut second = OneForm::zero(alg);
                for (om, om_bar) in dual.omega.iter().zip(&dual.omega_bar) {
                    let t = self.pi_omega(&self.wedge(om_bar, &w)?);
                    first = first.try_add(&om.right_mul(&t)?)?;
                    let s = self.pi_omega(&self.wedge(&w, om)?);
                    let s = self.nu_omega_inv.apply(&s)?;
                    second = second.try_add(&self.left_mul_oneform(&s, om_bar)?)?;
                }
                report.case(first == w, || format!("w = {w}: first sum gives {first}"));
                report.case(second == w, || format!("w = {w}: second sum gives {second}"));
            }
        }
        Ok(report)
    }

    /// Whether the only elements supported on `|k| + l <= bound` with
    /// `d(a) = 0` are the scalars, computed as the kernel of the matrix of
    /// `(∂_x, ∂_y)` on the monomial basis.
    pub fn check_kernel_of_d(&self, bound: u32) -> Result<Report> {
        let alg = &self.algebra;
        let mut report = Report::new("kernel-d", alg.spec(), Some(bound));
        let columns = monomial_exponents(alg.base_kind(), bound);
        let mut row_index: HashMap<(u8, i64, u32), usize> = HashMap::new();
        let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
        for (col, &(k, l)) in columns.iter().enumerate() {
            let m = alg.monomial(Scalar::one(), k, l)?;
            let d = self.differential(&m)?;
            for (which, part) in [(0u8, &d.a), (1u8, &d.b)] {
                for (kk, ll, c) in part.terms() {
                    let next = row_index.len();
                    let row = *row_index.entry((which, kk, ll)).or_insert(next);
                    entries.push((row, col, c.clone()));
                }
            }
        }
        let mut matrix = vec![vec![Scalar::zero(); columns.len()]; row_index.len()];
        for (r, c, v) in entries {
            matrix[r][c] += &v;
        }
        let kernel = nullspace(matrix, columns.len());
        let constant_col = columns.iter().position(|&e| e == (0, 0)).unwrap();
        report.detail("kernel_dim", kernel.len());
        report.cases = columns.len();
        let ok = kernel.len() == 1
            && kernel[0]
                .iter()
                .enumerate()
                .all(|(i, v)| (i == constant_col) != v.is_zero());
        if !ok {
            let described: Vec<String> = kernel
                .iter()
                .map(|v| {
                    let terms = columns
                        .iter()
                        .zip(v)
                        .map(|(&(k, l), c)| (k, l, c.clone()));
                    alg.element(terms).map(|e| e.to_string()).unwrap_or_default()
                })
                .collect();
            report.fail(format!("kernel of d is spanned by [{}]", described.join(", ")));
        }
        Ok(report)
    }

    /// `∇(φ_x) = ∇(φ_y) = 0`, the general formula against the closed form on
    /// `φ_x·m`, `φ_y·m`, and surjectivity of `∇` on every monomial `m` with
    /// `|k| + l <= bound`.
    pub fn check_divergence(&self, bound: u32) -> Result<Report> {
        let alg = &self.algebra;
        let mut report = Report::new("divergence", alg.spec(), Some(bound));
        for phi in [IntegralForm1::phi_x(alg), IntegralForm1::phi_y(alg)] {
            let d = self.divergence(&phi)?;
            report.case(d.is_zero(), || format!("divergence of {phi} is {d}"));
        }
        for (k, l) in monomial_exponents(alg.base_kind(), bound) {
            let m = alg.monomial(Scalar::one(), k, l)?;
            for phi in [
                IntegralForm1::phi_x(alg).right_mul(&m)?,
                IntegralForm1::phi_y(alg).right_mul(&m)?,
            ] {
                let general = self.divergence(&phi)?;
                let closed = self.divergence_closed_form(&phi)?;
                report.case(general == closed, || {
                    format!("{phi}: general {general} vs closed form {closed}")
                });
            }
            match self.divergence_preimage(&Scalar::one(), k, l) {
                Ok(pre) => {
                    let back = self.divergence(&pre)?;
                    report.case(back == m, || format!("preimage {pre} of {m} maps to {back}"));
                }
                Err(e) => report.case(false, || e.to_string()),
            }
        }
        Ok(report)
    }
}

fn single_term(e: &OreElement) -> Option<(&Scalar, (i64, u32))> {
    let mut it = e.terms();
    let (k, l, c) = it.next()?;
    it.next().is_none().then_some((c, (k, l)))
}
