//! Normal-form arithmetic in the Ore extensions `A[q,r;p]` over `K[x]` and
//! `A[q,+;p]`, `A[q,-;p]` over `K[x, x^-1]`.
//!
//! Elements are kept as `sum c_{k,l} x^k y^l` with x-powers on the left. The
//! single defining relation is `y f(x) = sigma(f) y + delta_p(f)`; every
//! product reduces to the table of normal forms of `y^l x^k`, which each
//! [`Algebra`] memoizes.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, RwLock};

use crate::basering::{apply_delta, apply_sigma, BaseKind, BasePoly, SigmaSpec};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::text;

/// Presentation data of an Ore extension: the automorphism, the value
/// `p = delta(x)`, and the base ring.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AlgebraSpec {
    sigma: SigmaSpec,
    p: BasePoly,
    base_kind: BaseKind,
}

impl AlgebraSpec {
    /// `A[q,r;p]`: `yx = qxy + ry + p(x)` over `K[x]`.
    pub fn poly(q: Scalar, r: Scalar, p: BasePoly) -> Result<Self> {
        Self::new(SigmaSpec::affine(q, r)?, p)
    }

    /// `A[q,+;p]`: `yx = qxy + p(x)` over `K[x, x^-1]`.
    pub fn laurent_plus(q: Scalar, p: BasePoly) -> Result<Self> {
        Self::new(SigmaSpec::laurent_plus(q)?, p)
    }

    /// `A[q,-;p]`: `yx = qx^-1 y + p(x)` over `K[x, x^-1]`.
    pub fn laurent_minus(q: Scalar, p: BasePoly) -> Result<Self> {
        Self::new(SigmaSpec::laurent_minus(q)?, p)
    }

    /// Affine `sigma` means `K[x]`; the two Laurent kinds mean `K[x, x^-1]`.
    pub fn new(sigma: SigmaSpec, p: BasePoly) -> Result<Self> {
        let base_kind = match sigma {
            SigmaSpec::Affine { .. } => BaseKind::Poly,
            _ => BaseKind::Laurent,
        };
        let p = p.with_kind(base_kind).map_err(|_| {
            Error::InvalidSpec(format!("p = {p} has negative powers of x but the base is K[x]"))
        })?;
        Ok(AlgebraSpec {
            sigma,
            p,
            base_kind,
        })
    }

    pub fn sigma(&self) -> &SigmaSpec {
        &self.sigma
    }

    pub fn p(&self) -> &BasePoly {
        &self.p
    }

    pub fn base_kind(&self) -> BaseKind {
        self.base_kind
    }

    pub fn q(&self) -> &Scalar {
        self.sigma.q()
    }

    pub fn r(&self) -> Scalar {
        self.sigma.r()
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.sigma {
            SigmaSpec::Affine { q, r } => write!(f, "A[{q},{r};{}]", self.p),
            SigmaSpec::LaurentPlus { q } => write!(f, "A[{q},+;{}]", self.p),
            SigmaSpec::LaurentMinus { q } => write!(f, "A[{q},-;{}]", self.p),
        }
    }
}

/// Normal forms of `y^l x^k`, indexed by the resulting power of `y`.
type CommutationRow = Arc<Vec<BasePoly>>;

struct AlgebraInner {
    spec: AlgebraSpec,
    commutations: RwLock<HashMap<(u32, i64), CommutationRow>>,
}

/// A handle on one Ore extension. Cloning is cheap and clones share the
/// commutation table.
#[derive(Clone)]
pub struct Algebra(Arc<AlgebraInner>);

impl Algebra {
    pub fn new(spec: AlgebraSpec) -> Self {
        Algebra(Arc::new(AlgebraInner {
            spec,
            commutations: RwLock::new(HashMap::new()),
        }))
    }

    pub fn spec(&self) -> &AlgebraSpec {
        &self.0.spec
    }

    pub fn base_kind(&self) -> BaseKind {
        self.0.spec.base_kind
    }

    pub fn same_as(&self, other: &Algebra) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.spec == other.0.spec
    }

    fn ensure_same(&self, other: &Algebra) -> Result<()> {
        if self.same_as(other) {
            Ok(())
        } else {
            Err(Error::SpecMismatch(self.spec().to_string(), other.spec().to_string()))
        }
    }

    pub fn zero(&self) -> OreElement {
        OreElement {
            algebra: self.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(&self, c: Scalar) -> OreElement {
        let mut e = self.zero();
        e.add_term(0, 0, c);
        e
    }

    pub fn one(&self) -> OreElement {
        self.constant(Scalar::one())
    }

    pub fn x(&self) -> OreElement {
        self.monomial(Scalar::one(), 1, 0).unwrap()
    }

    pub fn y(&self) -> OreElement {
        self.monomial(Scalar::one(), 0, 1).unwrap()
    }

    pub fn x_inv(&self) -> Result<OreElement> {
        self.monomial(Scalar::one(), -1, 0)
    }

    /// `c * x^k * y^l`; negative `k` only over the Laurent ring.
    pub fn monomial(&self, c: Scalar, k: i64, l: u32) -> Result<OreElement> {
        self.check_exponent(k)?;
        let mut e = self.zero();
        e.add_term(k, l, c);
        Ok(e)
    }

    /// Builds from `(k, l, c)` triples meaning `c x^k y^l`.
    pub fn element<I>(&self, terms: I) -> Result<OreElement>
    where
        I: IntoIterator<Item = (i64, u32, Scalar)>,
    {
        let mut e = self.zero();
        for (k, l, c) in terms {
            self.check_exponent(k)?;
            e.add_term(k, l, c);
        }
        Ok(e)
    }

    /// Embeds an element of the base ring.
    pub fn from_base(&self, f: &BasePoly) -> Result<OreElement> {
        self.element(f.terms().map(|(k, c)| (k, 0, c.clone())))
    }

    /// `f(x) * y^l`.
    pub fn from_base_times_y(&self, f: &BasePoly, l: u32) -> Result<OreElement> {
        self.element(f.terms().map(|(k, c)| (k, l, c.clone())))
    }

    fn check_exponent(&self, k: i64) -> Result<()> {
        if k < 0 && self.base_kind() == BaseKind::Poly {
            Err(Error::IncompatibleBaseRing(format!(
                "x^{k} does not exist in {}",
                self.spec()
            )))
        } else {
            Ok(())
        }
    }

    /// Normal form of `y^l x^k` as coefficients of `y^0, ..., y^l`.
    pub fn commute(&self, l: u32, k: i64) -> Result<CommutationRow> {
        if let Some(row) = self.0.commutations.read().unwrap().get(&(l, k)) {
            return Ok(row.clone());
        }
        let row = if l == 0 {
            Arc::new(vec![BasePoly::monomial(self.base_kind(), Scalar::one(), k)?])
        } else {
            let prev = self.commute(l - 1, k)?;
            let spec = self.spec();
            let mut next = vec![BasePoly::zero(self.base_kind()); l as usize + 1];
            // y * f_j y^j = sigma(f_j) y^(j+1) + delta(f_j) y^j
            for (j, f) in prev.iter().enumerate() {
                if f.is_zero() {
                    continue;
                }
                next[j + 1] = &next[j + 1] + &apply_sigma(&spec.sigma, f)?;
                next[j] = &next[j] + &apply_delta(&spec.sigma, &spec.p, f)?;
            }
            Arc::new(next)
        };
        self.0
            .commutations
            .write()
            .unwrap()
            .insert((l, k), row.clone());
        Ok(row)
    }
}

impl PartialEq for Algebra {
    fn eq(&self, other: &Self) -> bool {
        self.same_as(other)
    }
}

impl Eq for Algebra {}

impl fmt::Debug for Algebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra({})", self.spec())
    }
}

/// An element of an Ore extension in normal form `sum c x^k y^l`.
#[derive(Clone, PartialEq, Eq)]
pub struct OreElement {
    algebra: Algebra,
    // keyed (l, k) so iteration is ascending in y, then in x
    terms: BTreeMap<(u32, i64), Scalar>,
}

impl OreElement {
    pub fn algebra(&self) -> &Algebra {
        &self.algebra
    }

    fn add_term(&mut self, k: i64, l: u32, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((l, k)).or_insert_with(Scalar::zero);
        *entry += &c;
        if entry.is_zero() {
            self.terms.remove(&(l, k));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `(k, l, c)` in canonical order: ascending `l`, then ascending `k`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32, &Scalar)> + '_ {
        self.terms.iter().map(|(&(l, k), c)| (k, l, c))
    }

    pub fn coeff(&self, k: i64, l: u32) -> Scalar {
        self.terms.get(&(l, k)).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Highest power of `y`, `None` for zero.
    pub fn y_degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|&(l, _)| l)
    }

    /// The coefficient of `y^l` as an element of the base ring.
    pub fn y_coefficient(&self, l: u32) -> BasePoly {
        let mut f = BasePoly::zero(self.algebra.base_kind());
        for (&(ll, k), c) in self.terms.range((l, i64::MIN)..=(l, i64::MAX)) {
            debug_assert_eq!(ll, l);
            f.add_term(k, c.clone());
        }
        f
    }

    /// Returns the element as a base-ring value if no `y` occurs.
    pub fn as_base(&self) -> Option<BasePoly> {
        match self.y_degree() {
            None | Some(0) => Some(self.y_coefficient(0)),
            _ => None,
        }
    }

    /// `Some((c, k))` when the element is `c x^k` with `c != 0`.
    pub fn as_x_monomial(&self) -> Option<(&Scalar, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (&(l, k), c) = self.terms.iter().next().unwrap();
        (l == 0).then_some((c, k))
    }

    pub fn is_scalar(&self) -> bool {
        self.terms.keys().all(|&(l, k)| l == 0 && k == 0)
    }

    pub fn scalar_mul(&self, s: &Scalar) -> OreElement {
        if s.is_zero() {
            return self.algebra.zero();
        }
        OreElement {
            algebra: self.algebra.clone(),
            terms: self.terms.iter().map(|(key, c)| (*key, c * s)).collect(),
        }
    }

    pub fn try_add(&self, other: &OreElement) -> Result<OreElement> {
        self.algebra.ensure_same(&other.algebra)?;
        let mut out = self.clone();
        for (&(l, k), c) in &other.terms {
            out.add_term(k, l, c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &OreElement) -> Result<OreElement> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &OreElement) -> Result<OreElement> {
        self.algebra.ensure_same(&other.algebra)?;
        let mut out = self.algebra.zero();
        for (&(l1, k1), c1) in &self.terms {
            for (&(l2, k2), c2) in &other.terms {
                let row = self.algebra.commute(l1, k2)?;
                let c12 = c1 * c2;
                for (j, f) in row.iter().enumerate() {
                    for (e, c) in f.terms() {
                        out.add_term(k1 + e, j as u32 + l2, &c12 * c);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> OreElement {
        let mut acc = self.algebra.one();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Inverse of a unit `c x^k` (a nonzero constant over `K[x]`).
    pub fn unit_inverse(&self) -> Result<OreElement> {
        match self.as_x_monomial() {
            Some((c, k)) => self.algebra.monomial(c.inv()?, -k, 0).map_err(|_| {
                Error::NonInvertibleImage(self.to_string())
            }),
            None => Err(Error::NonInvertibleImage(self.to_string())),
        }
    }

    /// Integer power; negative exponents need a unit.
    pub fn pow_int(&self, exp: i64) -> Result<OreElement> {
        if exp >= 0 {
            Ok(self.pow(exp as u32))
        } else {
            Ok(self.unit_inverse()?.pow((-exp) as u32))
        }
    }
}

impl fmt::Display for OreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        text::write_sum(
            f,
            self.terms().map(|(k, l, c)| {
                let xs = text::power("x", k);
                let ys = text::power("y", l as i64);
                let monomial = match (xs.is_empty(), ys.is_empty()) {
                    (true, _) => ys,
                    (_, true) => xs,
                    _ => format!("{xs}*{ys}"),
                };
                (c, monomial)
            }),
        )
    }
}

impl fmt::Debug for OreElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in {}", self, self.algebra.spec())
    }
}

// The operator forms panic on elements of different algebras; the `try_*`
// methods report `SpecMismatch` instead.
impl Add for &OreElement {
    type Output = OreElement;
    fn add(self, rhs: &OreElement) -> OreElement {
        self.try_add(rhs).unwrap()
    }
}

impl Sub for &OreElement {
    type Output = OreElement;
    fn sub(self, rhs: &OreElement) -> OreElement {
        self.try_sub(rhs).unwrap()
    }
}

impl Mul for &OreElement {
    type Output = OreElement;
    fn mul(self, rhs: &OreElement) -> OreElement {
        self.try_mul(rhs).unwrap()
    }
}

impl Neg for &OreElement {
    type Output = OreElement;
    fn neg(self) -> OreElement {
        self.scalar_mul(&-Scalar::one())
    }
}

/// Exponents `(k, l)` of the monomials `x^k y^l` with `|k| + l <= bound`
/// (and `k >= 0` over `K[x]`), in canonical order.
pub fn monomial_exponents(kind: BaseKind, bound: u32) -> Vec<(i64, u32)> {
    let b = bound as i64;
    let mut out = Vec::new();
    for l in 0..=bound {
        let rest = b - l as i64;
        let lo = if kind == BaseKind::Poly { 0 } else { -rest };
        for k in lo..=rest {
            out.push((k, l));
        }
    }
    out
}

/// Exact product in normal form.
pub fn normalize_product(a: &OreElement, b: &OreElement) -> Result<OreElement> {
    a.try_mul(b)
}

struct PowerCache {
    x_pos: Vec<OreElement>,
    x_neg: Vec<OreElement>,
    y_pos: Vec<OreElement>,
}

struct EndoInner {
    img_x: OreElement,
    img_y: OreElement,
    img_x_inv: Option<OreElement>,
    powers: Mutex<PowerCache>,
}

/// The algebra map determined by images of `x` and `y`, evaluated term by
/// term on normal forms: `x^k y^l -> img_x^k img_y^l`.
///
/// Construction does not check that the images respect the defining
/// relation; [`crate::morphisms`] does that for the maps it builds.
#[derive(Clone)]
pub struct Endomorphism(Arc<EndoInner>);

impl Endomorphism {
    pub fn new(img_x: OreElement, img_y: OreElement) -> Result<Self> {
        img_x.algebra.ensure_same(&img_y.algebra)?;
        let one = img_x.algebra.one();
        let img_x_inv = img_x.unit_inverse().ok();
        Ok(Endomorphism(Arc::new(EndoInner {
            powers: Mutex::new(PowerCache {
                x_pos: vec![one.clone()],
                x_neg: vec![one.clone()],
                y_pos: vec![one],
            }),
            img_x,
            img_y,
            img_x_inv,
        })))
    }

    pub fn identity(algebra: &Algebra) -> Self {
        Self::new(algebra.x(), algebra.y()).unwrap()
    }

    pub fn algebra(&self) -> &Algebra {
        self.0.img_x.algebra()
    }

    pub fn image_of_x(&self) -> &OreElement {
        &self.0.img_x
    }

    pub fn image_of_y(&self) -> &OreElement {
        &self.0.img_y
    }

    fn x_power(&self, cache: &mut PowerCache, k: i64) -> Result<OreElement> {
        let (list, base) = if k >= 0 {
            (&mut cache.x_pos, self.0.img_x.clone())
        } else {
            let inv = self.0.img_x_inv.clone().ok_or_else(|| {
                Error::NonInvertibleImage(self.0.img_x.to_string())
            })?;
            (&mut cache.x_neg, inv)
        };
        let n = k.unsigned_abs() as usize;
        while list.len() <= n {
            let next = &list[list.len() - 1] * &base;
            list.push(next);
        }
        Ok(list[n].clone())
    }

    fn y_power(&self, cache: &mut PowerCache, l: u32) -> OreElement {
        let n = l as usize;
        while cache.y_pos.len() <= n {
            let next = &cache.y_pos[cache.y_pos.len() - 1] * &self.0.img_y;
            cache.y_pos.push(next);
        }
        cache.y_pos[n].clone()
    }

    pub fn apply(&self, a: &OreElement) -> Result<OreElement> {
        self.algebra().ensure_same(a.algebra())?;
        let mut out = a.algebra.zero();
        let mut cache = self.0.powers.lock().unwrap();
        for (k, l, c) in a.terms() {
            let xk = self.x_power(&mut cache, k)?;
            let yl = self.y_power(&mut cache, l);
            out = &out + &(&xk * &yl).scalar_mul(c);
        }
        Ok(out)
    }

    /// `self ∘ other`: first `other`, then `self`.
    pub fn compose(&self, other: &Endomorphism) -> Result<Endomorphism> {
        Endomorphism::new(
            self.apply(other.image_of_x())?,
            self.apply(other.image_of_y())?,
        )
    }
}

impl PartialEq for Endomorphism {
    fn eq(&self, other: &Self) -> bool {
        self.0.img_x == other.0.img_x && self.0.img_y == other.0.img_y
    }
}

impl fmt::Debug for Endomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{x -> {}, y -> {}}}", self.0.img_x, self.0.img_y)
    }
}

/// Evaluates the algebra map with the given generator images on `a`.
pub fn apply_endo(img_x: &OreElement, img_y: &OreElement, a: &OreElement) -> Result<OreElement> {
    Endomorphism::new(img_x.clone(), img_y.clone())?.apply(a)
}
