//! Polynomials over finite fields and the function-field arithmetic used to
//! choose construction parameters: irreducibility, quadratic residue symbols,
//! reciprocity, Möbius changes of variable and the inert-prime search.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ff::{Field, FieldElement};

/// Dense polynomial, lowest coefficient first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl Polynomial {
    pub fn new(field: &Field, coeffs: Vec<FieldElement>) -> Result<Polynomial> {
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::FieldMismatch);
        }
        Ok(Polynomial { field: field.clone(), coeffs }.normalized())
    }

    /// Polynomial with prime-subfield integer coefficients.
    pub fn from_ints(field: &Field, coeffs: &[i64]) -> Polynomial {
        Polynomial { field: field.clone(), coeffs: coeffs.iter().map(|&c| field.from_int(c)).collect() }
            .normalized()
    }

    pub fn zero(field: &Field) -> Polynomial {
        Polynomial { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Polynomial {
        Polynomial::constant(field.one())
    }

    /// The polynomial `x`.
    pub fn x(field: &Field) -> Polynomial {
        Polynomial::monomial(field.one(), 1)
    }

    pub fn constant(c: FieldElement) -> Polynomial {
        Polynomial { field: c.field().clone(), coeffs: vec![c] }.normalized()
    }

    pub fn monomial(c: FieldElement, degree: usize) -> Polynomial {
        let field = c.field().clone();
        let mut coeffs = vec![field.zero(); degree];
        coeffs.push(c);
        Polynomial { field, coeffs }.normalized()
    }

    /// Monic polynomials of exact degree `degree` in lexicographic order of
    /// `(c_0, …, c_{degree-1})`, each coefficient in residue order.
    pub fn monic_of_degree(field: &Field, degree: usize) -> impl Iterator<Item = Polynomial> + '_ {
        let q = field.order();
        let total = (q as u128).pow(degree as u32);
        (0..total).map(move |mut idx| {
            let mut coeffs = vec![field.zero(); degree + 1];
            for slot in (0..degree).rev() {
                coeffs[slot] = field.element_at((idx % q as u128) as u64);
                idx /= q as u128;
            }
            coeffs[degree] = field.one();
            Polynomial { field: field.clone(), coeffs }
        })
    }

    fn normalized(mut self) -> Polynomial {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        self
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the degree).
    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) + &other.coeff(i)).collect();
        Ok(Polynomial { field: self.field.clone(), coeffs }.normalized())
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| &self.coeff(i) - &other.coeff(i)).collect();
        Ok(Polynomial { field: self.field.clone(), coeffs }.normalized())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Polynomial::zero(&self.field));
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = &coeffs[i + j] + &(a * b);
            }
        }
        Ok(Polynomial { field: self.field.clone(), coeffs }.normalized())
    }

    pub fn scale(&self, c: &FieldElement) -> Polynomial {
        let coeffs = self.coeffs.iter().map(|x| x * c).collect();
        Polynomial { field: self.field.clone(), coeffs }.normalized()
    }

    /// Euclidean division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &Polynomial) -> Result<(Polynomial, Polynomial)> {
        self.check(divisor)?;
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = divisor.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let Some(nd) = self.degree().filter(|&n| n >= dd) else {
            return Ok((Polynomial::zero(&self.field), self.clone()));
        };
        let mut quot = vec![self.field.zero(); nd - dd + 1];
        for i in (dd..=nd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let c = &rem[i] * &lead_inv;
            for (j, d) in divisor.coeffs.iter().enumerate() {
                rem[i - dd + j] = &rem[i - dd + j] - &(&c * d);
            }
            quot[i - dd] = c;
        }
        rem.truncate(dd);
        Ok((
            Polynomial { field: self.field.clone(), coeffs: quot }.normalized(),
            Polynomial { field: self.field.clone(), coeffs: rem }.normalized(),
        ))
    }

    pub fn rem(&self, divisor: &Polynomial) -> Result<Polynomial> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Monic associate (zero stays zero).
    pub fn monic(&self) -> Polynomial {
        match self.leading() {
            Some(l) => self.scale(&l.inv().expect("leading coefficient is nonzero")),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &FieldElement) -> Result<FieldElement> {
        if x.field() != &self.field {
            return Err(Error::FieldMismatch);
        }
        let mut acc = self.field.zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * x) + c;
        }
        Ok(acc)
    }

    /// `self^e mod modulus` by square-and-multiply on residues.
    pub fn mod_pow(&self, e: &BigUint, modulus: &Polynomial) -> Result<Polynomial> {
        let base = self.rem(modulus)?;
        let mut acc = Polynomial::one(&self.field).rem(modulus)?;
        for i in (0..e.bits()).rev() {
            acc = acc.checked_mul(&acc)?.rem(modulus)?;
            if e.bit(i) {
                acc = acc.checked_mul(&base)?.rem(modulus)?;
            }
        }
        Ok(acc)
    }

    /// `f(x^k)`.
    pub fn inflate(&self, k: usize) -> Polynomial {
        assert!(k >= 1);
        let mut coeffs = vec![self.field.zero(); self.degree().map_or(0, |d| d * k + 1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * k] = c.clone();
        }
        Polynomial { field: self.field.clone(), coeffs }.normalized()
    }

    /// True iff irreducible over the coefficient field: for `1 ≤ i ≤ deg/2`,
    /// `gcd(x^{q^i} - x mod f, f) = 1`.
    pub fn is_irreducible(&self) -> Result<bool> {
        let n = match self.degree() {
            Some(n) if n >= 1 => n,
            _ => return Err(Error::ConstantPolynomial),
        };
        if n == 1 {
            return Ok(true);
        }
        let q = BigUint::from(self.field.order());
        let x = Polynomial::x(&self.field);
        let mut power = x.rem(self)?;
        for _ in 1..=n / 2 {
            power = power.mod_pow(&q, self)?;
            let g = power.checked_sub(&x)?.gcd(self)?;
            if !g.is_constant() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Keeps the coefficients of degree `< n`.
    pub fn truncate(&self, n: usize) -> Polynomial {
        let mut coeffs = self.coeffs.clone();
        coeffs.truncate(n);
        Polynomial { field: self.field.clone(), coeffs }.normalized()
    }

    /// Order of vanishing at zero (`None` for the zero polynomial).
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Divides by `x^v`, dropping the lowest `v` coefficients.
    pub fn shift_down(&self, v: usize) -> Polynomial {
        let coeffs = self.coeffs.iter().skip(v).cloned().collect();
        Polynomial { field: self.field.clone(), coeffs }.normalized()
    }

    /// Multiplies by `x^v`.
    pub fn shift_up(&self, v: usize) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); v];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial { field: self.field.clone(), coeffs }
    }

    /// Applies a coefficient map (e.g. a field embedding) termwise.
    pub fn map_coeffs<F>(&self, target: &Field, f: F) -> Result<Polynomial>
    where
        F: Fn(&FieldElement) -> Result<FieldElement>,
    {
        let coeffs = self.coeffs.iter().map(f).collect::<Result<Vec<_>>>()?;
        Polynomial::new(target, coeffs)
    }

    pub fn display_with(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                out.push('+');
            }
            let cs = if c.coeffs().len() == 1 { c.to_string() } else { format!("[{}]", join_coeffs(c)) };
            match i {
                0 => out.push_str(&cs),
                1 => out.push_str(&format!("{cs}*{var}")),
                _ => out.push_str(&format!("{cs}*{var}^{i}")),
            }
        }
        out
    }

    /// Parses `c0+c1*x+c2*x^2`. Coefficients are integers (prime subfield) or
    /// bracketed residue lists such as `[1,2]`; the variable name is free.
    pub fn parse(field: &Field, s: &str) -> Result<Polynomial> {
        let mut acc = Polynomial::zero(field);
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        for term in split_terms(&compact) {
            acc = acc.checked_add(&parse_term(field, term)?)?;
        }
        Ok(acc)
    }

    pub fn from_json(field: &Field, v: &serde_json::Value) -> Result<Polynomial> {
        let items = v.as_array().ok_or_else(|| Error::Parse("polynomial must be a JSON array".into()))?;
        let coeffs = items.iter().map(|c| field.element_from_json(c)).collect::<Result<Vec<_>>>()?;
        Polynomial::new(field, coeffs)
    }
}

fn join_coeffs(c: &FieldElement) -> String {
    c.coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn split_terms(s: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (i, ch) in s.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            '+' if depth == 0 => {
                out.push(&s[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

fn parse_term(field: &Field, term: &str) -> Result<Polynomial> {
    let bad = || Error::Parse(format!("bad term '{term}'"));
    let (coeff_part, var_part) = match term.find(|c: char| c.is_ascii_alphabetic()) {
        Some(pos) => match term[..pos].strip_suffix('*') {
            Some("") => return Err(bad()),
            Some(c) => (c, Some(&term[pos..])),
            None => (&term[..pos], Some(&term[pos..])),
        },
        None => (term, None),
    };
    let coeff = if coeff_part.is_empty() {
        field.one()
    } else if let Some(inner) = coeff_part.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
        let digits = inner
            .split(',')
            .map(|d| d.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        field.from_coeffs(&digits)?
    } else {
        field.from_int(coeff_part.parse::<i64>().map_err(|_| bad())?)
    };
    let degree = match var_part {
        None => 0,
        Some(v) => match v.split_once('^') {
            None if v.chars().all(|c| c.is_ascii_alphabetic()) => 1,
            Some((name, e)) if name.chars().all(|c| c.is_ascii_alphabetic()) => {
                e.parse::<usize>().map_err(|_| bad())?
            }
            _ => return Err(bad()),
        },
    };
    Ok(Polynomial::monomial(coeff, degree))
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.display_with("x"))
    }
}

/// Prime-field polynomials serialize as flat integer arrays; extension-field
/// polynomials as arrays of residue arrays.
impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if self.field.degree() == 1 {
            let ints: Vec<u32> = self.coeffs.iter().map(|c| c.coeffs()[0]).collect();
            ints.serialize(serializer)
        } else {
            self.coeffs.serialize(serializer)
        }
    }
}

macro_rules! forward_poly_op {
    ($trait:ident, $method:ident, $checked:ident) => {
        impl $trait<&Polynomial> for &Polynomial {
            type Output = Polynomial;
            /// Panics when the operands have different coefficient fields.
            fn $method(self, rhs: &Polynomial) -> Polynomial {
                self.$checked(rhs).expect("field mismatch")
            }
        }
    };
}

forward_poly_op!(Add, add, checked_add);
forward_poly_op!(Sub, sub, checked_sub);
forward_poly_op!(Mul, mul, checked_mul);

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::zero(&self.field).checked_sub(self).expect("same field")
    }
}

/// Value of a quadratic residue symbol.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LegendreValue {
    MinusOne,
    Zero,
    PlusOne,
}

impl LegendreValue {
    pub fn value(self) -> i8 {
        match self {
            LegendreValue::MinusOne => -1,
            LegendreValue::Zero => 0,
            LegendreValue::PlusOne => 1,
        }
    }

    fn times_sign(self, negate: bool) -> LegendreValue {
        match (self, negate) {
            (LegendreValue::PlusOne, true) => LegendreValue::MinusOne,
            (LegendreValue::MinusOne, true) => LegendreValue::PlusOne,
            (v, _) => v,
        }
    }
}

fn require_odd(field: &Field) -> Result<()> {
    if field.characteristic() == 2 {
        Err(Error::EvenCharacteristic(field.order()))
    } else {
        Ok(())
    }
}

fn require_monic_irreducible(g: &Polynomial) -> Result<()> {
    if !g.is_monic() {
        return Err(Error::NotMonic);
    }
    if !g.is_irreducible()? {
        return Err(Error::Reducible(g.to_string()));
    }
    Ok(())
}

/// Quadratic residue symbol `(f/g) ≡ f^{(q^{deg g} - 1)/2} mod g`.
pub fn legendre(f: &Polynomial, g: &Polynomial) -> Result<LegendreValue> {
    f.check(g)?;
    require_odd(g.field())?;
    require_monic_irreducible(g)?;
    let r = f.rem(g)?;
    if r.is_zero() {
        return Ok(LegendreValue::Zero);
    }
    let deg = g.degree().expect("non-constant") as u32;
    let e = (BigUint::from(g.field().order()).pow(deg) - 1u32) / 2u32;
    let power = r.mod_pow(&e, g)?;
    if power.is_constant() {
        let c = power.coeff(0);
        if c.is_one() {
            return Ok(LegendreValue::PlusOne);
        }
        if (&c + &g.field().one()).is_zero() {
            return Ok(LegendreValue::MinusOne);
        }
    }
    Err(Error::IdentityViolation(format!("Euler power of {f} mod {g} is {power}, not ±1")))
}

/// Checks `(f/g) = (-1)^{(q-1)/2 · deg f · deg g} (g/f)` for distinct monic irreducibles.
pub fn reciprocity_check(f: &Polynomial, g: &Polynomial) -> Result<bool> {
    f.check(g)?;
    require_odd(f.field())?;
    require_monic_irreducible(f)?;
    require_monic_irreducible(g)?;
    if f == g {
        return Err(Error::Precondition("reciprocity needs distinct polynomials".into()));
    }
    let half = (f.field().order() - 1) / 2;
    let exponent = half * f.degree().unwrap() as u64 * g.degree().unwrap() as u64;
    let lhs = legendre(f, g)?;
    let rhs = legendre(g, f)?.times_sign(exponent % 2 == 1);
    Ok(lhs == rhs)
}

/// Monic associate of `(c u + d)^{deg h} · h((a u + b)/(c u + d))`.
pub fn mobius_substitute(
    h: &Polynomial,
    a: &FieldElement,
    b: &FieldElement,
    c: &FieldElement,
    d: &FieldElement,
) -> Result<Polynomial> {
    let field = h.field();
    if [a, b, c, d].iter().any(|x| x.field() != field) {
        return Err(Error::FieldMismatch);
    }
    if (&(a * d) - &(b * c)).is_zero() {
        return Err(Error::SingularMatrix);
    }
    let n = h.degree().ok_or_else(|| Error::InvalidParameter("cannot substitute into zero".into()))?;
    let num = Polynomial::new(field, vec![b.clone(), a.clone()])?;
    let den = Polynomial::new(field, vec![d.clone(), c.clone()])?;
    let mut num_pows = vec![Polynomial::one(field)];
    let mut den_pows = vec![Polynomial::one(field)];
    for _ in 0..n {
        num_pows.push(&num * num_pows.last().unwrap());
        den_pows.push(&den * den_pows.last().unwrap());
    }
    let mut acc = Polynomial::zero(field);
    for (i, hi) in h.coeffs().iter().enumerate() {
        if hi.is_zero() {
            continue;
        }
        acc = &acc + &(&num_pows[i] * &den_pows[n - i]).scale(hi);
    }
    Ok(acc.monic())
}

/// Whether `h̃(s)` stays irreducible under `s ↦ t²`, i.e. `(s/h̃) = -1`.
pub fn inert_test(htilde: &Polynomial) -> Result<bool> {
    require_odd(htilde.field())?;
    require_monic_irreducible(htilde)?;
    Ok(legendre(&Polynomial::x(htilde.field()), htilde)? == LegendreValue::MinusOne)
}

/// Isomorphism type of the big Cayley graph for a parameter `h̃`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GraphType {
    /// Group `PGL₂(F_{q^{2m}})`, bipartite Cayley graph.
    #[serde(rename = "pgl")]
    PglBipartite,
    /// Group `PSL₂(F_{q^{2m}})`, non-bipartite Cayley graph.
    #[serde(rename = "psl")]
    PslNonbipartite,
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GraphType::PglBipartite => "pgl",
            GraphType::PslNonbipartite => "psl",
        })
    }
}

impl std::str::FromStr for GraphType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pgl" => Ok(GraphType::PglBipartite),
            "psl" => Ok(GraphType::PslNonbipartite),
            other => Err(Error::Parse(format!("unknown graph type '{other}' (expected pgl or psl)"))),
        }
    }
}

/// Product of the square classes of `h̃(0)` and `h̃(1)` in `F_q^*`.
pub fn square_class_product(htilde: &Polynomial) -> Result<i8> {
    require_odd(htilde.field())?;
    let field = htilde.field();
    let mut sign = 1i8;
    for point in [field.zero(), field.one()] {
        let v = htilde.eval(&point)?;
        if v.is_zero() {
            return Err(Error::InvalidParameter(format!("h̃({point}) = 0")));
        }
        if !v.is_square() {
            sign = -sign;
        }
    }
    Ok(sign)
}

/// Classifies an inert `h̃`: product `-1` gives the bipartite PGL case.
pub fn classify_graph_type(htilde: &Polynomial) -> Result<GraphType> {
    let sign = square_class_product(htilde)?;
    if !inert_test(htilde)? {
        return Err(Error::Precondition(format!("{htilde} is not inert")));
    }
    Ok(if sign < 0 { GraphType::PglBipartite } else { GraphType::PslNonbipartite })
}

/// All monic irreducible inert `h̃` of degree `m` over `F_q` with the requested
/// classification, in lexicographic order. An empty result is valid.
pub fn search_parameters(q: u64, m: usize, want: GraphType) -> Result<Vec<Polynomial>> {
    if q % 2 == 0 {
        return Err(Error::EvenCharacteristic(q));
    }
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let field = Field::with_order(q)?;
    let mut out = Vec::new();
    for cand in Polynomial::monic_of_degree(&field, m) {
        if !cand.is_irreducible()? || !inert_test(&cand)? {
            continue;
        }
        if matches!(classify_graph_type(&cand), Ok(t) if t == want) {
            out.push(cand);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn poly(field: &Field, c: &[i64]) -> Polynomial {
        Polynomial::from_ints(field, c)
    }

    fn big(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn poly_suite_examples() {
        let f3 = f(3);
        assert_eq!(poly(&f3, &[1, 0, 1]).gcd(&poly(&f3, &[1, 1])).unwrap(), Polynomial::one(&f3));
        assert_eq!(poly(&f3, &[1, 0, 1]).eval(&f3.one()).unwrap(), f3.from_int(2));
        let t = Polynomial::x(&f3);
        assert_eq!(t.mod_pow(&big(4), &poly(&f3, &[1, 0, 1])).unwrap(), Polynomial::one(&f3));
        assert_eq!(t.divmod(&Polynomial::zero(&f3)), Err(Error::DivisionByZero));
        assert_eq!(t.checked_add(&Polynomial::x(&f(5))), Err(Error::FieldMismatch));
    }

    #[test]
    fn divmod_reconstructs() {
        let f5 = f(5);
        let a = poly(&f5, &[3, 1, 4, 1, 2]);
        let b = poly(&f5, &[2, 0, 3]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(&(&q * &b) + &r, a);
        assert!(r.degree().unwrap() < 2);
    }

    #[test]
    fn irreducibility_examples() {
        let f3 = f(3);
        assert!(poly(&f3, &[1, 0, 1]).is_irreducible().unwrap());
        assert!(!poly(&f3, &[2, 0, 1]).is_irreducible().unwrap());
        assert!(Polynomial::x(&f3).is_irreducible().unwrap());
        assert_eq!(Polynomial::one(&f3).is_irreducible(), Err(Error::ConstantPolynomial));
    }

    /// Brute-force factorization oracle: a polynomial of degree n is reducible
    /// iff some monic polynomial of degree 1..=n/2 divides it.
    fn irreducible_by_trial_division(p: &Polynomial) -> bool {
        let n = p.degree().unwrap();
        (1..=n / 2).all(|d| Polynomial::monic_of_degree(p.field(), d).all(|g| !p.rem(&g).unwrap().is_zero()))
    }

    #[test]
    fn irreducibility_matches_trial_division() {
        for (q, max_deg) in [(2u64, 6usize), (3, 4), (5, 3), (9, 2)] {
            let field = Field::with_order(q).unwrap();
            for d in 1..=max_deg {
                for p in Polynomial::monic_of_degree(&field, d) {
                    assert_eq!(p.is_irreducible().unwrap(), irreducible_by_trial_division(&p), "{p} over F_{q}");
                }
            }
        }
    }

    #[test]
    fn irreducible_counts_match_necklace_formula() {
        // Number of monic irreducibles of degree 4 over F_3: (3^4 - 3^2)/4 = 18.
        let f3 = f(3);
        let n = Polynomial::monic_of_degree(&f3, 4).filter(|p| p.is_irreducible().unwrap()).count();
        assert_eq!(n, 18);
    }

    #[test]
    fn legendre_examples() {
        let f3 = f(3);
        let t = Polynomial::x(&f3);
        let h = poly(&f3, &[1, 0, 1]);
        assert_eq!(legendre(&t, &h).unwrap(), LegendreValue::PlusOne);
        assert_eq!(legendre(&t, &poly(&f3, &[1, 1])).unwrap(), LegendreValue::MinusOne);
        assert_eq!(legendre(&h, &h).unwrap(), LegendreValue::Zero);
        assert!(matches!(legendre(&t, &poly(&f3, &[2, 0, 1])), Err(Error::Reducible(_))));
        let f2 = f(2);
        assert!(matches!(
            legendre(&Polynomial::x(&f2), &poly(&f2, &[1, 1, 1])),
            Err(Error::EvenCharacteristic(_))
        ));
    }

    /// Legendre via exhaustive squares in the residue field `F_q[x]/(g)`.
    fn legendre_by_enumeration(fp: &Polynomial, g: &Polynomial) -> i8 {
        let r = fp.rem(g).unwrap();
        if r.is_zero() {
            return 0;
        }
        let d = g.degree().unwrap();
        let field = g.field();
        let residues: Vec<Polynomial> = (0..field.order().pow(d as u32))
            .map(|mut i| {
                let coeffs = (0..d)
                    .map(|_| {
                        let c = field.element_at(i % field.order());
                        i /= field.order();
                        c
                    })
                    .collect();
                Polynomial::new(field, coeffs).unwrap()
            })
            .collect();
        if residues.iter().any(|x| (x * x).rem(g).unwrap() == r) {
            1
        } else {
            -1
        }
    }

    #[test]
    fn legendre_matches_enumeration() {
        for q in [3u64, 5] {
            let field = f(q);
            for d in 1..=2 {
                for g in Polynomial::monic_of_degree(&field, d).filter(|g| g.is_irreducible().unwrap()) {
                    for num in Polynomial::monic_of_degree(&field, 2).take(12) {
                        assert_eq!(legendre(&num, &g).unwrap().value(), legendre_by_enumeration(&num, &g));
                    }
                }
            }
        }
    }

    #[test]
    fn legendre_is_multiplicative_in_numerator() {
        for q in [3u64, 5] {
            let field = f(q);
            let g = Polynomial::monic_of_degree(&field, 3).find(|g| g.is_irreducible().unwrap()).unwrap();
            let mut numerators = vec![];
            for d in 0..=2 {
                numerators.extend(Polynomial::monic_of_degree(&field, d));
            }
            for a in &numerators {
                for b in &numerators {
                    let lhs = legendre(&(a * b), &g).unwrap().value();
                    let rhs = legendre(a, &g).unwrap().value() * legendre(b, &g).unwrap().value();
                    assert_eq!(lhs, rhs, "({a})({b}) mod {g}");
                }
            }
        }
    }

    #[test]
    fn reciprocity_examples() {
        let f3 = f(3);
        let t = Polynomial::x(&f3);
        assert!(reciprocity_check(&t, &poly(&f3, &[1, 1])).unwrap());
        assert!(reciprocity_check(&t, &poly(&f3, &[1, 0, 1])).unwrap());
        let f5 = f(5);
        assert!(reciprocity_check(&poly(&f5, &[1, 1]), &poly(&f5, &[2, 1])).unwrap());
        assert!(reciprocity_check(&t, &t).is_err());
    }

    #[test]
    fn reciprocity_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [3u64, 5] {
            let field = f(q);
            let irreducibles: Vec<Polynomial> = (1..=4)
                .flat_map(|d| Polynomial::monic_of_degree(&field, d).filter(|p| p.is_irreducible().unwrap()))
                .collect();
            for _ in 0..100 {
                let a = &irreducibles[rng.gen_range(0..irreducibles.len())];
                let b = &irreducibles[rng.gen_range(0..irreducibles.len())];
                if a != b {
                    assert!(reciprocity_check(a, b).unwrap(), "{a} vs {b}");
                }
            }
        }
    }

    #[test]
    fn mobius_examples() {
        let f3 = f(3);
        let h = poly(&f3, &[1, 0, 1]);
        let e = |v| f3.from_int(v);
        // u/(2-u): a=1, b=0, c=-1, d=2.
        let g = mobius_substitute(&h, &e(1), &e(0), &e(2), &e(2)).unwrap();
        assert_eq!(g, poly(&f3, &[2, 1, 1]));
        assert_eq!(mobius_substitute(&h, &e(1), &e(0), &e(0), &e(1)).unwrap(), h);
        let t = Polynomial::x(&f3);
        assert_eq!(mobius_substitute(&t, &e(2), &e(0), &e(1), &e(1)).unwrap(), poly(&f3, &[0, 2]).monic());
        assert_eq!(mobius_substitute(&h, &e(1), &e(1), &e(1), &e(1)), Err(Error::SingularMatrix));
    }

    #[test]
    fn mobius_inverse_round_trip() {
        for q in [3u64, 5, 7] {
            let field = f(q);
            let e = |v| field.from_int(v);
            // u/(2-u) and its inverse 2t/(t+1).
            let fwd = [e(1), e(0), e(-1), e(2)];
            let back = [e(2), e(0), e(1), e(1)];
            for d in 1..=3 {
                for h in Polynomial::monic_of_degree(&field, d) {
                    // Degree is preserved iff h does not vanish at a/c = -1.
                    if h.eval(&e(-1)).unwrap().is_zero() {
                        continue;
                    }
                    let g = mobius_substitute(&h, &fwd[0], &fwd[1], &fwd[2], &fwd[3]).unwrap();
                    assert_eq!(g.degree(), h.degree());
                    let back_h = mobius_substitute(&g, &back[0], &back[1], &back[2], &back[3]).unwrap();
                    assert_eq!(back_h, h.monic(), "{h} over F_{q}");
                }
            }
        }
    }

    #[test]
    fn inert_examples() {
        let f3 = f(3);
        assert!(inert_test(&poly(&f3, &[1, 1])).unwrap());
        assert!(!inert_test(&poly(&f3, &[2, 1])).unwrap());
        assert!(matches!(inert_test(&poly(&f3, &[2, 0, 1])), Err(Error::Reducible(_))));
    }

    #[test]
    fn inert_iff_inflation_irreducible() {
        for q in [3u64, 5] {
            let field = f(q);
            for d in 1..=3 {
                for h in Polynomial::monic_of_degree(&field, d).filter(|h| h.is_irreducible().unwrap()) {
                    assert_eq!(inert_test(&h).unwrap(), h.inflate(2).is_irreducible().unwrap(), "{h} over F_{q}");
                }
            }
        }
    }

    #[test]
    fn classification_examples() {
        let f3 = f(3);
        assert_eq!(classify_graph_type(&poly(&f3, &[1, 1])).unwrap(), GraphType::PglBipartite);
        assert!(matches!(classify_graph_type(&Polynomial::x(&f3)), Err(Error::InvalidParameter(_))));
        // An inert h̃ with h̃(0), h̃(1) both squares: scan the quadratics over F_3.
        let psl = Polynomial::monic_of_degree(&f3, 2)
            .filter(|h| h.is_irreducible().unwrap() && inert_test(h).unwrap())
            .find(|h| square_class_product(h).ok() == Some(1));
        if let Some(h) = psl {
            assert_eq!(classify_graph_type(&h).unwrap(), GraphType::PslNonbipartite);
        }
    }

    #[test]
    fn search_examples() {
        let f3 = f(3);
        assert_eq!(search_parameters(3, 1, GraphType::PglBipartite).unwrap(), vec![poly(&f3, &[1, 1])]);
        assert!(search_parameters(3, 1, GraphType::PslNonbipartite).unwrap().is_empty());
        let five = search_parameters(5, 1, GraphType::PglBipartite).unwrap();
        assert!(!five.is_empty());
        for h in &five {
            assert!(inert_test(h).unwrap());
            assert_eq!(classify_graph_type(h).unwrap(), GraphType::PglBipartite);
        }
        assert_eq!(search_parameters(4, 1, GraphType::PglBipartite), Err(Error::EvenCharacteristic(4)));
    }

    #[test]
    fn search_results_satisfy_filters() {
        for (q, m) in [(3u64, 2usize), (3, 3), (5, 2), (7, 1), (9, 1)] {
            for want in [GraphType::PglBipartite, GraphType::PslNonbipartite] {
                let found = search_parameters(q, m, want).unwrap();
                for h in &found {
                    assert!(h.is_monic() && h.degree() == Some(m) && h.is_irreducible().unwrap());
                    assert!(inert_test(h).unwrap());
                    assert_eq!(classify_graph_type(h).unwrap(), want);
                }
                assert!(found.windows(2).all(|w| {
                    let key = |p: &Polynomial| p.coeffs().to_vec();
                    key(&w[0]) < key(&w[1])
                }));
            }
        }
    }

    #[test]
    fn parse_and_print() {
        let f3 = f(3);
        let p = Polynomial::parse(&f3, "1+0*x+1*x^2").unwrap();
        assert_eq!(p, poly(&f3, &[1, 0, 1]));
        assert_eq!(p.to_string(), "1+0*x+1*x^2");
        assert_eq!(Polynomial::parse(&f3, "s^2 + 2*s + 1").unwrap(), poly(&f3, &[1, 2, 1]));
        assert_eq!(serde_json::to_string(&p).unwrap(), "[1,0,1]");
        let f9 = Field::with_order(9).unwrap();
        let q = Polynomial::parse(&f9, "[0,1]+x").unwrap();
        assert_eq!(q.coeff(0), f9.generator().unwrap());
        assert_eq!(serde_json::to_string(&q).unwrap(), "[[0,1],[1,0]]");
        assert!(Polynomial::parse(&f3, "1+*x").is_err());
        assert_eq!(Polynomial::from_json(&f3, &serde_json::json!([1, 0, 1])).unwrap(), p);
    }

    proptest! {
        #[test]
        fn parse_inverts_display(coeffs in proptest::collection::vec(0i64..5, 0..7)) {
            let f5 = Field::prime(5).unwrap();
            let p = Polynomial::from_ints(&f5, &coeffs);
            prop_assert_eq!(Polynomial::parse(&f5, &p.to_string()).unwrap(), p);
        }

        #[test]
        fn gcd_divides_both(a in proptest::collection::vec(0i64..3, 1..7), b in proptest::collection::vec(0i64..3, 1..7)) {
            let f3 = Field::prime(3).unwrap();
            let (a, b) = (Polynomial::from_ints(&f3, &a), Polynomial::from_ints(&f3, &b));
            let g = a.gcd(&b).unwrap();
            if !g.is_zero() {
                prop_assert!(a.rem(&g).unwrap().is_zero());
                prop_assert!(b.rem(&g).unwrap().is_zero());
                prop_assert!(g.is_monic());
            }
        }
    }
}
