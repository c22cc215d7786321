//! The three Hopf families of Gelfand-Kirillov dimension two and the checks
//! that their coproducts and counits are compatible with the relations.
//!
//! * (a) `A[1,0;x]` with `x`, `y` primitive.
//! * (b) `A[q,+;0]` with `x` grouplike and `Δ(y) = y⊗1 + x^n⊗y`.
//! * (c) `A[1,+;x^n - x]` with `x` grouplike and `Δ(y) = y⊗x^(n-1) + 1⊗y`.
//!
//! Counits: `ε(x) = 0` for primitive `x`, `ε(x) = 1` for grouplike `x`,
//! and `ε(y) = 0` throughout.

use std::collections::BTreeMap;
use std::fmt;

use crate::basering::{BaseKind, BasePoly};
use crate::calculus::Calculus;
use crate::error::{Error, Result};
use crate::morphisms::classify;
use crate::ore::{monomial_exponents, Algebra, AlgebraSpec, OreElement};
use crate::report::Report;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HopfFamily {
    /// (a)
    EnvelopingSolvable,
    /// (b)
    QuantumTorusType { q: Scalar, n: u32 },
    /// (c)
    LaurentDerivationType { n: u32 },
}

impl HopfFamily {
    /// Family (b); `q = ±1` (the rational roots of unity) and `n = 0` are rejected.
    pub fn quantum_torus(q: Scalar, n: u32) -> Result<Self> {
        if q.is_one() || (-&q).is_one() || q.is_zero() {
            return Err(Error::InvalidSpec(format!(
                "family (b) needs q outside {{0, 1, -1}}, got {q}"
            )));
        }
        if n == 0 {
            return Err(Error::InvalidSpec("family (b) needs n >= 1".into()));
        }
        Ok(HopfFamily::QuantumTorusType { q, n })
    }

    pub fn laurent_derivation(n: u32) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSpec("family (c) needs n >= 1".into()));
        }
        Ok(HopfFamily::LaurentDerivationType { n })
    }

    pub fn label(&self) -> &'static str {
        match self {
            HopfFamily::EnvelopingSolvable => "a",
            HopfFamily::QuantumTorusType { .. } => "b",
            HopfFamily::LaurentDerivationType { .. } => "c",
        }
    }

    pub fn spec(&self) -> AlgebraSpec {
        match self {
            HopfFamily::EnvelopingSolvable => {
                AlgebraSpec::poly(Scalar::one(), Scalar::zero(), BasePoly::x(BaseKind::Poly))
            }
            HopfFamily::QuantumTorusType { q, .. } => {
                AlgebraSpec::laurent_plus(q.clone(), BasePoly::zero(BaseKind::Laurent))
            }
            HopfFamily::LaurentDerivationType { n } => AlgebraSpec::laurent_plus(
                Scalar::one(),
                BasePoly::from_ints(BaseKind::Laurent, &[(*n as i64, 1), (1, -1)]).unwrap(),
            ),
        }
        .expect("family parameters are validated on construction")
    }
}

impl fmt::Display for HopfFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HopfFamily::EnvelopingSolvable => write!(f, "family (a) {}", self.spec()),
            HopfFamily::QuantumTorusType { n, .. } => {
                write!(f, "family (b) {} n={n}", self.spec())
            }
            HopfFamily::LaurentDerivationType { n } => {
                write!(f, "family (c) {} n={n}", self.spec())
            }
        }
    }
}

/// An element of the `arity`-fold tensor power `A⊗...⊗A`, keyed by the
/// exponents `(k, l)` of each factor's monomial. Multiplication is
/// componentwise, with no signs.
#[derive(Clone, PartialEq, Eq)]
pub struct Tensor {
    algebra: Algebra,
    arity: usize,
    terms: BTreeMap<Vec<(i64, u32)>, Scalar>,
}

impl Tensor {
    pub fn zero(algebra: &Algebra, arity: usize) -> Self {
        Tensor {
            algebra: algebra.clone(),
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(algebra: &Algebra, arity: usize) -> Self {
        let mut t = Self::zero(algebra, arity);
        t.terms.insert(vec![(0, 0); arity], Scalar::one());
        t
    }

    /// `a` viewed in the first tensor power.
    pub fn from_element(a: &OreElement) -> Self {
        let mut t = Self::zero(a.algebra(), 1);
        for (k, l, c) in a.terms() {
            t.terms.insert(vec![(k, l)], c.clone());
        }
        t
    }

    /// `f_1 ⊗ f_2 ⊗ ... ⊗ f_n`.
    pub fn pure(factors: &[OreElement]) -> Result<Self> {
        let Some(first) = factors.first() else {
            return Err(Error::InvalidSpec("empty tensor product".into()));
        };
        let mut acc = Tensor::one(first.algebra(), 0);
        for f in factors {
            acc = acc.outer(&Tensor::from_element(f))?;
        }
        Ok(acc)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, key: &[(i64, u32)]) -> Scalar {
        self.terms.get(key).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[(i64, u32)], &Scalar)> + '_ {
        self.terms.iter().map(|(k, c)| (k.as_slice(), c))
    }

    fn add_term(&mut self, key: Vec<(i64, u32)>, c: Scalar) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(key) {
            Entry::Vacant(e) => {
                if !c.is_zero() {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check(&self, other: &Tensor) -> Result<()> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(Error::SpecMismatch(
                self.algebra.spec().to_string(),
                other.algebra.spec().to_string(),
            ));
        }
        if self.arity != other.arity {
            return Err(Error::InvalidSpec(format!(
                "tensor arities {} and {} differ",
                self.arity, other.arity
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Tensor) -> Result<Tensor> {
        self.check(other)?;
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(k.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Tensor) -> Result<Tensor> {
        self.try_add(&other.scalar_mul(&-Scalar::one()))
    }

    pub fn scalar_mul(&self, s: &Scalar) -> Tensor {
        let mut out = Tensor::zero(&self.algebra, self.arity);
        if !s.is_zero() {
            for (k, c) in &self.terms {
                out.terms.insert(k.clone(), c * s);
            }
        }
        out
    }

    /// `(a_1⊗...⊗a_n)(b_1⊗...⊗b_n) = a_1 b_1 ⊗ ... ⊗ a_n b_n`.
    pub fn try_mul(&self, other: &Tensor) -> Result<Tensor> {
        self.check(other)?;
        let alg = &self.algebra;
        let mut out = Tensor::zero(alg, self.arity);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut partial = Tensor::one(alg, 0);
                for (&(k1, l1), &(k2, l2)) in ka.iter().zip(kb) {
                    let m1 = alg.monomial(Scalar::one(), k1, l1)?;
                    let m2 = alg.monomial(Scalar::one(), k2, l2)?;
                    partial = partial.outer(&Tensor::from_element(&m1.try_mul(&m2)?))?;
                }
                let c = ca * cb;
                for (k, v) in partial.terms {
                    out.add_term(k, &v * &c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Result<Tensor> {
        let mut acc = Tensor::one(&self.algebra, self.arity);
        for _ in 0..exp {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    /// Inverse of a pure tensor of units `c x^k1 ⊗ ... ⊗ x^kn`.
    pub fn unit_inverse(&self) -> Result<Tensor> {
        let mut it = self.terms.iter();
        match (it.next(), it.next()) {
            (Some((key, c)), None) if key.iter().all(|&(_, l)| l == 0) => {
                let alg = &self.algebra;
                let mut out = Tensor::zero(alg, self.arity);
                let inv_key = key.iter().map(|&(k, _)| (-k, 0)).collect::<Vec<_>>();
                for &(k, _) in &inv_key {
                    alg.monomial(Scalar::one(), k, 0)
                        .map_err(|_| Error::NonInvertibleImage(self.to_string()))?;
                }
                out.terms.insert(inv_key, c.inv()?);
                Ok(out)
            }
            _ => Err(Error::NonInvertibleImage(self.to_string())),
        }
    }

    /// `self ⊗ other`.
    pub fn outer(&self, other: &Tensor) -> Result<Tensor> {
        if !self.algebra.same_as(&other.algebra) {
            return Err(Error::SpecMismatch(
                self.algebra.spec().to_string(),
                other.algebra.spec().to_string(),
            ));
        }
        let mut out = Tensor::zero(&self.algebra, self.arity + other.arity);
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let key: Vec<(i64, u32)> = ka.iter().chain(kb).copied().collect();
                out.add_term(key, ca * cb);
            }
        }
        Ok(out)
    }

    /// Applies `f` to tensor factor `index`, leaving the others in place;
    /// `f` may change the arity of that slot (e.g. `Δ` or `ε`).
    pub fn map_factor<F>(&self, index: usize, f: F) -> Result<Tensor>
    where
        F: Fn(&OreElement) -> Result<Tensor>,
    {
        let alg = &self.algebra;
        let mut out: Option<Tensor> = None;
        for (key, c) in &self.terms {
            let mut piece = Tensor::one(alg, 0).scalar_mul(c);
            for (i, &(k, l)) in key.iter().enumerate() {
                let m = alg.monomial(Scalar::one(), k, l)?;
                let t = if i == index {
                    f(&m)?
                } else {
                    Tensor::from_element(&m)
                };
                piece = piece.outer(&t)?;
            }
            out = Some(match out {
                None => piece,
                Some(acc) => acc.try_add(&piece)?,
            });
        }
        match out {
            Some(t) => Ok(t),
            // An empty sum: the arity of the mapped slot is probed on 1.
            None => {
                let slot = f(&alg.one())?.arity;
                Ok(Tensor::zero(alg, self.arity - 1 + slot))
            }
        }
    }

    /// Collapses a first tensor power back to an element.
    pub fn to_element(&self) -> Result<OreElement> {
        if self.arity != 1 {
            return Err(Error::InvalidSpec(format!(
                "tensor of arity {} is not an element",
                self.arity
            )));
        }
        self.algebra
            .element(self.terms.iter().map(|(k, c)| (k[0].0, k[0].1, c.clone())))
    }
}

impl fmt::Display for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (key, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if c.is_negative() {
                ("-", -c)
            } else {
                ("+", c.clone())
            };
            match (i, sign) {
                (0, "-") => f.write_str("-")?,
                (0, _) => {}
                _ => write!(f, " {sign} ")?,
            }
            if !mag.is_one() {
                write!(f, "{mag}*")?;
            }
            let factors: Vec<String> = key
                .iter()
                .map(|&(k, l)| {
                    let m = self.algebra.monomial(Scalar::one(), k, l).unwrap();
                    m.to_string()
                })
                .collect();
            if factors.is_empty() {
                f.write_str("1")?;
            } else {
                write!(f, "{}", factors.join("⊗"))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Tensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Coproduct and counit on generators, extended multiplicatively. The fields
/// are public so that checks can be run against altered structure maps.
#[derive(Debug, Clone)]
pub struct Bialgebra {
    pub family: HopfFamily,
    pub algebra: Algebra,
    pub delta_x: Tensor,
    pub delta_y: Tensor,
    pub eps_x: Scalar,
    pub eps_y: Scalar,
}

impl Bialgebra {
    pub fn new(family: HopfFamily) -> Self {
        let algebra = Algebra::new(family.spec());
        let (x, y, one) = (algebra.x(), algebra.y(), algebra.one());
        let pure = |a: &OreElement, b: &OreElement| Tensor::pure(&[a.clone(), b.clone()]).unwrap();
        let xn = |n: i64| algebra.monomial(Scalar::one(), n, 0).unwrap();
        let (delta_x, delta_y, eps_x) = match &family {
            HopfFamily::EnvelopingSolvable => (
                pure(&x, &one).try_add(&pure(&one, &x)).unwrap(),
                pure(&y, &one).try_add(&pure(&one, &y)).unwrap(),
                Scalar::zero(),
            ),
            HopfFamily::QuantumTorusType { n, .. } => (
                pure(&x, &x),
                pure(&y, &one).try_add(&pure(&xn(*n as i64), &y)).unwrap(),
                Scalar::one(),
            ),
            HopfFamily::LaurentDerivationType { n } => (
                pure(&x, &x),
                pure(&y, &xn(*n as i64 - 1)).try_add(&pure(&one, &y)).unwrap(),
                Scalar::one(),
            ),
        };
        Bialgebra {
            family,
            algebra,
            delta_x,
            delta_y,
            eps_x,
            eps_y: Scalar::zero(),
        }
    }

    fn is_laurent(&self) -> bool {
        self.algebra.base_kind() == BaseKind::Laurent
    }

    /// `Δ(x^k y^l) = Δ(x)^k Δ(y)^l`, extended linearly.
    pub fn coproduct(&self, a: &OreElement) -> Result<Tensor> {
        let mut out = Tensor::zero(&self.algebra, 2);
        for (k, l, c) in a.terms() {
            let dx = if k >= 0 {
                self.delta_x.pow(k as u32)?
            } else {
                self.delta_x.unit_inverse()?.pow((-k) as u32)?
            };
            let t = dx.try_mul(&self.delta_y.pow(l)?)?;
            out = out.try_add(&t.scalar_mul(c))?;
        }
        Ok(out)
    }

    /// `ε(x^k y^l) = ε(x)^k ε(y)^l`, extended linearly.
    pub fn counit(&self, a: &OreElement) -> Result<Scalar> {
        let mut sum = Scalar::zero();
        for (k, l, c) in a.terms() {
            let ex = self.eps_x.pow(k)?;
            let ey = self.eps_y.pow(l as i64)?;
            sum += &(c * &(&ex * &ey));
        }
        Ok(sum)
    }

    fn counit_tensor(&self, a: &OreElement) -> Result<Tensor> {
        Ok(Tensor::one(&self.algebra, 0).scalar_mul(&self.counit(a)?))
    }

    fn generators(&self) -> Result<Vec<OreElement>> {
        let mut g = vec![self.algebra.x(), self.algebra.y()];
        if self.is_laurent() {
            g.push(self.algebra.x_inv()?);
        }
        Ok(g)
    }

    /// `Δ(y)Δ(x) - [q Δ(x)Δ(y) + r Δ(y) + Δ(p)] = 0`, and
    /// `Δ(x)Δ(x^-1) = 1⊗1` over the Laurent families.
    pub fn verify_coproduct_respects_relation(&self) -> Result<Report> {
        let spec = self.algebra.spec();
        let mut report = Report::new("hopf-relation", &self.family, None);
        let (dx, dy) = (&self.delta_x, &self.delta_y);
        let p = self.coproduct(&self.algebra.from_base(spec.p())?)?;
        let rhs = dx
            .try_mul(dy)?
            .scalar_mul(spec.q())
            .try_add(&dy.scalar_mul(&spec.r()))?
            .try_add(&p)?;
        let defect = dy.try_mul(dx)?.try_sub(&rhs)?;
        report.detail("defect", &defect);
        report.case(defect.is_zero(), || {
            format!("Δ(y)Δ(x) - Δ(yx) = {defect}")
        });
        if self.is_laurent() {
            let inv = self.coproduct(&self.algebra.x_inv()?)?;
            let prod = dx.try_mul(&inv)?;
            report.case(prod == Tensor::one(&self.algebra, 2), || {
                format!("Δ(x)Δ(x^-1) = {prod}")
            });
        }
        Ok(report)
    }

    /// `(ε⊗id)Δ(g) = g = (id⊗ε)Δ(g)` for the generators and every monomial
    /// of total degree at most 3, and `ε` compatible with the relation.
    pub fn verify_counit(&self) -> Result<Report> {
        let alg = &self.algebra;
        let mut report = Report::new("hopf-counit", &self.family, Some(3));
        report.detail("eps_x", &self.eps_x);
        report.detail("eps_y", &self.eps_y);
        let mut elements = self.generators()?;
        for (k, l) in monomial_exponents(alg.base_kind(), 3) {
            elements.push(alg.monomial(Scalar::one(), k, l)?);
        }
        for g in &elements {
            let d = self.coproduct(g)?;
            for (slot, label) in [(0, "(ε⊗id)"), (1, "(id⊗ε)")] {
                // A non-invertible ε(x) cannot be evaluated on x^-1.
                match d
                    .map_factor(slot, |m| self.counit_tensor(m))
                    .and_then(|t| t.to_element())
                {
                    Ok(v) => report.case(&v == g, || format!("{label}Δ({g}) = {v}")),
                    Err(e) => report.case(false, || format!("{label}Δ({g}): {e}")),
                }
            }
        }
        let yx = &alg.y() * &alg.x();
        let lhs = &self.eps_y * &self.eps_x;
        match self.counit(&yx) {
            Ok(rhs) => report.case(lhs == rhs, || format!("ε(y)ε(x) = {lhs} but ε(yx) = {rhs}")),
            Err(e) => report.case(false, || format!("ε(yx): {e}")),
        }
        Ok(report)
    }

    /// `(Δ⊗id)Δ(g) = (id⊗Δ)Δ(g)` for `g = x, y`.
    pub fn verify_coassociativity(&self) -> Result<Report> {
        let mut report = Report::new("hopf-coassociativity", &self.family, None);
        for g in [self.algebra.x(), self.algebra.y()] {
            let d = self.coproduct(&g)?;
            let left = d.map_factor(0, |m| self.coproduct(m))?;
            let right = d.map_factor(1, |m| self.coproduct(m))?;
            report.case(left == right, || {
                format!("g = {g}: (Δ⊗id)Δ(g) = {left}, (id⊗Δ)Δ(g) = {right}")
            });
        }
        Ok(report)
    }

    /// `Δ(x^k) = x^k ⊗ x^k` for `k` in `-3..=3` (`0..=3` over `K[x]`); only
    /// meaningful when `x` is grouplike.
    pub fn verify_grouplike(&self) -> Result<Report> {
        let mut report = Report::new("hopf-grouplike", &self.family, Some(3));
        let lo = match self.algebra.base_kind() {
            BaseKind::Poly => 0,
            BaseKind::Laurent => -3,
        };
        for k in lo..=3 {
            let xk = self.algebra.monomial(Scalar::one(), k, 0)?;
            let d = self.coproduct(&xk)?;
            let expected = Tensor::pure(&[xk.clone(), xk.clone()])?;
            report.case(d == expected, || format!("Δ(x^{k}) = {d}"));
        }
        Ok(report)
    }

    /// Coproduct checks followed by the full smoothness chain for the
    /// family's algebra: classification, twisting automorphisms, dual basis,
    /// kernel of `d` and divergence, each to degree `bound`.
    pub fn smoothness_pipeline(&self, bound: u32) -> Result<Report> {
        let mut report = Report::new("hopf", &self.family, Some(bound));
        report.push(self.verify_coproduct_respects_relation()?);
        report.push(self.verify_counit()?);
        report.push(self.verify_coassociativity()?);
        if self.eps_x.is_one() {
            report.push(self.verify_grouplike()?);
        }
        let adm = classify(self.algebra.spec());
        report.detail("verdict", adm.verdict);
        if !adm.is_admissible() {
            report.fail(format!("{} is not admissible", self.algebra.spec()));
            return Ok(report);
        }
        match Calculus::new(&self.algebra) {
            Ok(calc) => {
                report.push(calc.check_dual_basis(bound)?);
                report.push(calc.check_kernel_of_d(bound)?);
                report.push(calc.check_divergence(bound)?);
            }
            Err(e) => report.fail(e.to_string()),
        }
        Ok(report)
    }
}
