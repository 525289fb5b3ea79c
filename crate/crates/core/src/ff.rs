//! Finite fields `F_p` and `F_{p^k}` presented as `F_p[t]/(modulus)`.
//!
//! Elements are dense residue vectors, lowest degree first. A [`Field`] is a
//! cheap shared handle; elements of different fields never mix, and every
//! binary operation checks that both operands share one presentation.
//!
//! The *residue order* used for every deterministic choice in this crate
//! (auto-selected moduli, square roots, least non-squares) compares residue
//! vectors lexicographically starting from the constant coefficient.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigUint;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ffpoly::Polynomial;

/// Largest field order handled (keeps products of residues inside `u64`).
const MAX_ORDER: u64 = 1 << 40;

/// Exhaustive root searches (tower maps) are limited to fields of this size.
const MAX_SEARCH_ORDER: u64 = 1 << 22;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// Decomposes `q = p^k`, returning `(p, k)` when `q` is a prime power.
pub fn prime_power(q: u64) -> Option<(u64, usize)> {
    if q < 2 {
        return None;
    }
    let mut p = 2u64;
    while p.saturating_mul(p) <= q && q % p != 0 {
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut rest = q;
    let mut k = 0;
    while rest % p == 0 {
        rest /= p;
        k += 1;
    }
    (rest == 1).then_some((p, k))
}

/// Validated presentation of a finite field.
#[derive(Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    p: u32,
    k: usize,
    /// Monic modulus of degree `k`, lowest coefficient first. Absent for prime fields.
    modulus: Option<Vec<u32>>,
}

/// Shared handle to a [`FieldSpec`].
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl Eq for Field {}

impl Hash for Field {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.hash(state)
    }
}

impl Field {
    /// Builds `F_{p^k}`. With `modulus = None` and `k > 1` the lexicographically
    /// least monic irreducible of degree `k` is selected.
    pub fn new(p: u64, k: usize, modulus: Option<&[u32]>) -> Result<Field> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("field degree must be at least 1".into()));
        }
        let order = (p as u128).checked_pow(k as u32).ok_or(Error::FieldTooLarge)?;
        if order > MAX_ORDER as u128 {
            return Err(Error::FieldTooLarge);
        }
        let p32 = p as u32;
        if k == 1 {
            if let Some(m) = modulus {
                validate_modulus_shape(p32, 1, m)?;
            }
            return Ok(Field(Arc::new(FieldSpec { p: p32, k: 1, modulus: None })));
        }
        let prime = Field(Arc::new(FieldSpec { p: p32, k: 1, modulus: None }));
        let modulus = match modulus {
            Some(m) => {
                validate_modulus_shape(p32, k, m)?;
                let poly = Polynomial::from_ints(&prime, &m.iter().map(|&c| c as i64).collect::<Vec<_>>());
                if !poly.is_irreducible()? {
                    return Err(Error::InvalidModulus(format!("{poly} is reducible over F_{p}")));
                }
                m.to_vec()
            }
            None => {
                let poly = Polynomial::monic_of_degree(&prime, k)
                    .find(|f| f.is_irreducible().unwrap_or(false))
                    .expect("irreducible polynomials exist in every degree");
                poly.coeffs().iter().map(|c| c.coeffs()[0]).collect()
            }
        };
        Ok(Field(Arc::new(FieldSpec { p: p32, k, modulus: Some(modulus) })))
    }

    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, 1, None)
    }

    /// The field with `q` elements, using the auto-selected modulus.
    pub fn with_order(q: u64) -> Result<Field> {
        let (p, k) = prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Field::new(p, k, None)
    }

    pub fn characteristic(&self) -> u32 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.k
    }

    pub fn order(&self) -> u64 {
        (self.0.p as u64).pow(self.0.k as u32)
    }

    pub fn modulus(&self) -> Option<&[u32]> {
        self.0.modulus.as_deref()
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement { field: self.clone(), c: vec![0; self.0.k] }
    }

    pub fn one(&self) -> FieldElement {
        self.from_int(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, v: i64) -> FieldElement {
        let mut e = self.zero();
        e.c[0] = v.rem_euclid(self.0.p as i64) as u32;
        e
    }

    /// Element from residue coefficients (lowest degree first, at most `k` of them).
    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<FieldElement> {
        if coeffs.len() > self.0.k {
            return Err(Error::Parse(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.0.k
            )));
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.0.p) {
            return Err(Error::Parse(format!("coefficient {bad} not in [0, {})", self.0.p)));
        }
        let mut e = self.zero();
        e.c[..coeffs.len()].copy_from_slice(coeffs);
        Ok(e)
    }

    /// Parses a JSON integer (prime-subfield constant) or coefficient array.
    pub fn element_from_json(&self, v: &serde_json::Value) -> Result<FieldElement> {
        match v {
            serde_json::Value::Number(n) => {
                let n = n.as_i64().ok_or_else(|| Error::Parse(format!("bad integer {n}")))?;
                Ok(self.from_int(n))
            }
            serde_json::Value::Array(items) => {
                let coeffs = items
                    .iter()
                    .map(|x| {
                        x.as_u64()
                            .and_then(|c| u32::try_from(c).ok())
                            .ok_or_else(|| Error::Parse(format!("bad coefficient {x}")))
                    })
                    .collect::<Result<Vec<_>>>()?;
                self.from_coeffs(&coeffs)
            }
            other => Err(Error::Parse(format!("expected integer or array, got {other}"))),
        }
    }

    /// Residue class of the presentation variable `t`; `None` for prime fields.
    pub fn generator(&self) -> Option<FieldElement> {
        (self.0.k > 1).then(|| {
            let mut e = self.zero();
            e.c[1] = 1;
            e
        })
    }

    /// Least generator of the multiplicative group in residue order.
    pub fn primitive_element(&self) -> FieldElement {
        let q1 = self.order() - 1;
        let mut factors = Vec::new();
        let mut rest = q1;
        let mut r = 2;
        while r * r <= rest {
            if rest % r == 0 {
                factors.push(r);
                while rest % r == 0 {
                    rest /= r;
                }
            }
            r += 1;
        }
        if rest > 1 {
            factors.push(rest);
        }
        self.elements()
            .skip(1)
            .find(|x| factors.iter().all(|&r| !x.pow((q1 / r) as u128).is_one()))
            .expect("multiplicative group is cyclic")
    }

    /// The `index`-th element in residue order.
    pub fn element_at(&self, mut index: u64) -> FieldElement {
        let p = self.0.p as u64;
        let mut e = self.zero();
        for slot in e.c.iter_mut().rev() {
            *slot = (index % p) as u32;
            index /= p;
        }
        e
    }

    /// All elements in residue order.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        (0..self.order()).map(move |i| self.element_at(i))
    }

    /// Least non-square in residue order (`None` in characteristic 2).
    pub fn least_non_square(&self) -> Option<FieldElement> {
        self.elements().find(|e| !e.is_square())
    }

    fn check(&self, other: &Field) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0.modulus {
            None => write!(f, "F_{}", self.0.p),
            Some(m) => {
                let ints: Vec<i64> = m.iter().map(|&c| c as i64).collect();
                let prime = Field(Arc::new(FieldSpec { p: self.0.p, k: 1, modulus: None }));
                write!(f, "F_{}[t]/({})", self.0.p, Polynomial::from_ints(&prime, &ints).display_with("t"))
            }
        }
    }
}

fn validate_modulus_shape(p: u32, k: usize, m: &[u32]) -> Result<()> {
    if m.len() != k + 1 {
        return Err(Error::InvalidModulus(format!("expected {} coefficients, got {}", k + 1, m.len())));
    }
    if m[k] != 1 {
        return Err(Error::InvalidModulus("modulus is not monic".into()));
    }
    if m.iter().any(|&c| c >= p) {
        return Err(Error::InvalidModulus(format!("coefficients must lie in [0, {p})")));
    }
    Ok(())
}

/// Element of a finite field: a fully reduced residue vector.
#[derive(Clone, Debug)]
pub struct FieldElement {
    field: Field,
    c: Vec<u32>,
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && self.field == other.field
    }
}

impl Eq for FieldElement {}

impl Hash for FieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.c.hash(state)
    }
}

impl PartialOrd for FieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Residue order: lexicographic on coefficients, constant term first.
impl Ord for FieldElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.cmp(&other.c)
    }
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }

    pub fn is_one(&self) -> bool {
        self.c[0] == 1 && self.c[1..].iter().all(|&x| x == 0)
    }

    /// True when the element lies in the prime subfield.
    pub fn is_prime_subfield(&self) -> bool {
        self.c[1..].iter().all(|&x| x == 0)
    }

    /// Position in residue order (inverse of [`Field::element_at`]).
    pub fn index(&self) -> u64 {
        let p = self.field.0.p as u64;
        self.c.iter().fold(0u64, |acc, &x| acc * p + x as u64)
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        self.field.check(&other.field)?;
        let p = self.field.0.p as u64;
        let c = self.c.iter().zip(&other.c).map(|(&a, &b)| ((a as u64 + b as u64) % p) as u32).collect();
        Ok(FieldElement { field: self.field.clone(), c })
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        self.field.check(&other.field)?;
        let p = self.field.0.p as u64;
        let c = self.c.iter().zip(&other.c).map(|(&a, &b)| ((a as u64 + p - b as u64) % p) as u32).collect();
        Ok(FieldElement { field: self.field.clone(), c })
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.field.check(&other.field)?;
        Ok(FieldElement { field: self.field.clone(), c: self.mul_residues(&other.c) })
    }

    pub fn checked_div(&self, other: &Self) -> Result<Self> {
        self.checked_mul(&other.inv()?)
    }

    fn mul_residues(&self, other: &[u32]) -> Vec<u32> {
        let p = self.field.0.p as u64;
        let k = self.field.0.k;
        if k == 1 {
            return vec![((self.c[0] as u64 * other[0] as u64) % p) as u32];
        }
        let mut r = vec![0u64; 2 * k - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.iter().enumerate() {
                r[i + j] = (r[i + j] + a as u64 * b as u64) % p;
            }
        }
        let m = self.field.0.modulus.as_ref().expect("extension field has a modulus");
        for d in (k..2 * k - 1).rev() {
            let lead = r[d];
            if lead == 0 {
                continue;
            }
            for j in 0..k {
                r[d - k + j] = (r[d - k + j] + (p - lead) * m[j] as u64) % p;
            }
            r[d] = 0;
        }
        r.truncate(k);
        r.into_iter().map(|x| x as u32).collect()
    }

    pub fn square(&self) -> Self {
        FieldElement { field: self.field.clone(), c: self.mul_residues(&self.c) }
    }

    /// Square-and-multiply exponentiation.
    pub fn pow(&self, mut e: u128) -> Self {
        let mut base = self.clone();
        let mut acc = self.field.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = base.square();
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, e: &BigUint) -> Self {
        let mut acc = self.field.one();
        for i in (0..e.bits()).rev() {
            acc = acc.square();
            if e.bit(i) {
                acc = &acc * self;
            }
        }
        acc
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow(self.field.order() as u128 - 2))
    }

    /// Frobenius `x ↦ x^p`.
    pub fn frobenius(&self) -> Self {
        self.pow(self.field.0.p as u128)
    }

    /// Euler's criterion `a^{(Q-1)/2} = 1`; zero counts as a square.
    pub fn is_square(&self) -> bool {
        if self.is_zero() || self.field.0.p == 2 {
            return true;
        }
        self.pow((self.field.order() as u128 - 1) / 2).is_one()
    }

    /// A square root, choosing the lexicographically least of `±r`.
    pub fn sqrt(&self) -> Result<Self> {
        if self.is_zero() {
            return Ok(self.clone());
        }
        let order = self.field.order() as u128;
        if self.field.0.p == 2 {
            return Ok(self.pow(order / 2));
        }
        if !self.is_square() {
            return Err(Error::NotASquare);
        }
        // Tonelli-Shanks in the cyclic group of order Q - 1 = 2^s * t.
        let mut t = order - 1;
        let mut s = 0u32;
        while t % 2 == 0 {
            t /= 2;
            s += 1;
        }
        let z = self.field.least_non_square().expect("odd field has non-squares");
        let mut m = s;
        let mut c = z.pow(t);
        let mut x = self.pow((t + 1) / 2);
        let mut b = self.pow(t);
        while !b.is_one() {
            let mut i = 1;
            let mut b2 = b.square();
            while !b2.is_one() {
                b2 = b2.square();
                i += 1;
            }
            let mut g = c.clone();
            for _ in 0..(m - i - 1) {
                g = g.square();
            }
            x = &x * &g;
            c = g.square();
            b = &b * &c;
            m = i;
        }
        let neg = -&x;
        Ok(if neg < x { neg } else { x })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.len() == 1 {
            return write!(f, "{}", self.c[0]);
        }
        for (i, c) in self.c.iter().enumerate() {
            match i {
                0 => write!(f, "{c}")?,
                1 => write!(f, "+{c}t")?,
                _ => write!(f, "+{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

/// Serialized as the residue coefficient list, lowest degree first.
impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.c.len()))?;
        for c in &self.c {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

macro_rules! forward_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&FieldElement> for &FieldElement {
            type Output = FieldElement;
            /// Panics when the operands belong to different fields.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                self.$checked(rhs).expect("field mismatch")
            }
        }
    };
}

forward_op!(Add, add, checked_add);
forward_op!(Sub, sub, checked_sub);
forward_op!(Mul, mul, checked_mul);

impl Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        self.field.zero().checked_sub(self).expect("same field")
    }
}

/// A ring embedding between two presentations with the same characteristic.
#[derive(Clone, Debug)]
pub struct TowerMap {
    source: Field,
    target: Field,
    kind: TowerKind,
}

#[derive(Clone, Debug)]
enum TowerKind {
    Identity,
    /// Source is the prime field: constants map to constants.
    PrimeSubfield,
    /// Image of the source presentation variable.
    Generator(FieldElement),
}

impl TowerMap {
    /// Builds the embedding. For non-prime sources the source generator is
    /// sent to the least root (residue order) of the source modulus in the target.
    pub fn new(source: &Field, target: &Field) -> Result<TowerMap> {
        if source == target {
            return Ok(TowerMap { source: source.clone(), target: target.clone(), kind: TowerKind::Identity });
        }
        if source.characteristic() != target.characteristic() {
            return Err(Error::IncompatibleTower("characteristics differ".into()));
        }
        if target.degree() % source.degree() != 0 {
            return Err(Error::IncompatibleTower(format!(
                "degree {} does not divide {}",
                source.degree(),
                target.degree()
            )));
        }
        if source.degree() == 1 {
            return Ok(TowerMap { source: source.clone(), target: target.clone(), kind: TowerKind::PrimeSubfield });
        }
        if target.order() > MAX_SEARCH_ORDER {
            return Err(Error::IncompatibleTower("target too large for root search".into()));
        }
        let root = target
            .elements()
            .find(|r| eval_prime_poly(source.modulus().expect("extension"), r).is_zero())
            .ok_or_else(|| Error::IncompatibleTower("source modulus has no root in target".into()))?;
        Ok(TowerMap { source: source.clone(), target: target.clone(), kind: TowerKind::Generator(root) })
    }

    /// Embedding with an explicitly chosen image of the source generator.
    pub fn with_generator_image(source: &Field, target: &Field, image: FieldElement) -> Result<TowerMap> {
        target.check(image.field())?;
        let modulus = source
            .modulus()
            .ok_or_else(|| Error::IncompatibleTower("prime source has no generator".into()))?;
        if source.characteristic() != target.characteristic() || !eval_prime_poly(modulus, &image).is_zero() {
            return Err(Error::IncompatibleTower("image is not a root of the source modulus".into()));
        }
        Ok(TowerMap { source: source.clone(), target: target.clone(), kind: TowerKind::Generator(image) })
    }

    pub fn source(&self) -> &Field {
        &self.source
    }

    pub fn target(&self) -> &Field {
        &self.target
    }

    pub fn apply(&self, a: &FieldElement) -> Result<FieldElement> {
        self.source.check(a.field())?;
        Ok(match &self.kind {
            TowerKind::Identity => a.clone(),
            TowerKind::PrimeSubfield => self.target.from_int(a.c[0] as i64),
            TowerKind::Generator(root) => {
                let mut acc = self.target.zero();
                for &c in a.c.iter().rev() {
                    acc = &(&acc * root) + &self.target.from_int(c as i64);
                }
                acc
            }
        })
    }
}

/// Embeds `a` along `map`.
pub fn embed(a: &FieldElement, map: &TowerMap) -> Result<FieldElement> {
    map.apply(a)
}

/// Evaluates a polynomial with prime-field integer coefficients at `x`.
fn eval_prime_poly(coeffs: &[u32], x: &FieldElement) -> FieldElement {
    let f = x.field();
    let mut acc = f.zero();
    for &c in coeffs.iter().rev() {
        acc = &(&acc * x) + &f.from_int(c as i64);
    }
    acc
}
