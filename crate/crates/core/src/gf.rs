//! Exact arithmetic in finite fields `F_q = F_p[z]/(m(z))`.
//!
//! Elements are stored as their canonical integer encoding: the coefficients
//! of the reduced representative, read as base-`p` digits with the constant
//! coefficient least significant. The encoding is unique per element, so
//! equality, hashing and ordering of [`Fq`] values are all plain integer
//! operations. Arithmetic goes through a shared [`Field`] handle.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest field order for which log/antilog tables are built.
const TABLE_LIMIT: u64 = 1 << 16;

/// Raw field element: canonical base-`p` encoding, meaningful only together
/// with the [`Field`] it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Fq(pub u64);

impl Fq {
    pub const ZERO: Fq = Fq(0);
    pub const ONE: Fq = Fq(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

#[derive(Debug)]
struct Tables {
    exp: Vec<u32>,
    log: Vec<u32>,
}

/// Characteristic, optional irreducible modulus and derived order of a
/// finite field.
#[derive(Debug)]
pub struct FieldSpec {
    p: u64,
    modulus: Option<Vec<u64>>,
    degree: usize,
    order: u64,
    tables: Option<Tables>,
}

impl FieldSpec {
    pub fn characteristic(&self) -> u64 {
        self.p
    }

    /// Ascending coefficients of the monic modulus, if this is an extension.
    pub fn modulus(&self) -> Option<&[u64]> {
        self.modulus.as_deref()
    }

    /// Extension degree `d` over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order
    }
}

/// Shared handle to a [`FieldSpec`]; cheap to clone.
#[derive(Clone, Debug)]
pub struct Field(Arc<FieldSpec>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl std::ops::Deref for Field {
    type Target = FieldSpec;

    fn deref(&self) -> &FieldSpec {
        &self.0
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Distinct prime divisors by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut old_r, mut r) = (a as i64, p as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    old_s.rem_euclid(p as i64) as u64
}

// Dense polynomial helpers over the prime field, used for the modulus
// (irreducibility test and the slow multiplication path).

fn fp_trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    fp_rem(prod, m, p)
}

/// Remainder modulo a monic polynomial.
fn fp_rem(mut a: Vec<u64>, m: &[u64], p: u64) -> Vec<u64> {
    let dm = m.len() - 1;
    fp_trim(&mut a);
    while a.len() > dm {
        let lead = *a.last().unwrap();
        let shift = a.len() - 1 - dm;
        for (k, &c) in m.iter().enumerate() {
            let idx = shift + k;
            a[idx] = (a[idx] + p - (lead * c) % p) % p;
        }
        fp_trim(&mut a);
    }
    a
}

fn fp_gcd(mut a: Vec<u64>, mut b: Vec<u64>, p: u64) -> Vec<u64> {
    fp_trim(&mut a);
    fp_trim(&mut b);
    while !b.is_empty() {
        let inv = inv_mod(*b.last().unwrap(), p);
        let monic: Vec<u64> = b.iter().map(|&c| c * inv % p).collect();
        let r = fp_rem(a, &monic, p);
        a = monic;
        b = r;
    }
    a
}

fn fp_powmod(base: &[u64], mut e: u64, m: &[u64], p: u64) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut b = fp_rem(base.to_vec(), m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = fp_mulmod(&result, &b, m, p);
        }
        b = fp_mulmod(&b, &b, m, p);
        e >>= 1;
    }
    result
}

/// Ben-Or style test: `m` is irreducible iff `gcd(m, x^{p^i} - x) = 1` for
/// `i = 1..=deg(m)/2`.
fn fp_is_irreducible(m: &[u64], p: u64) -> bool {
    let d = m.len() - 1;
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = fp_powmod(&h, p, m, p);
        let mut diff = h.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = (diff[1] + p - 1) % p;
        let g = fp_gcd(m.to_vec(), diff, p);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

impl Field {
    /// Prime field `F_p`.
    pub fn prime(p: u64) -> Result<Field> {
        Field::new(p, None)
    }

    /// `F_p` or `F_p[z]/(modulus)`; the modulus is given as ascending
    /// coefficients and must be monic and irreducible of degree at least 2.
    pub fn new(p: u64, modulus: Option<Vec<u64>>) -> Result<Field> {
        if p >= (1 << 31) || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let (modulus, degree) = match modulus {
            None => (None, 1),
            Some(m) => {
                let mut m: Vec<u64> = m.into_iter().map(|c| c % p).collect();
                fp_trim(&mut m);
                if m.len() < 3 {
                    return Err(Error::InvalidModulus("degree must be at least 2".into()));
                }
                if *m.last().unwrap() != 1 {
                    return Err(Error::InvalidModulus("modulus must be monic".into()));
                }
                if !fp_is_irreducible(&m, p) {
                    return Err(Error::InvalidModulus("modulus is reducible".into()));
                }
                let d = m.len() - 1;
                (Some(m), d)
            }
        };
        let mut order: u64 = 1;
        for _ in 0..degree {
            order = order
                .checked_mul(p)
                .filter(|&q| q < (1 << 62))
                .ok_or_else(|| Error::InvalidModulus("field order exceeds 2^62".into()))?;
        }
        let mut spec = FieldSpec { p, modulus, degree, order, tables: None };
        if degree > 1 && order <= TABLE_LIMIT {
            spec.tables = Some(build_tables(&spec));
        }
        Ok(Field(Arc::new(spec)))
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.0
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    pub fn zero(&self) -> Fq {
        Fq::ZERO
    }

    pub fn one(&self) -> Fq {
        Fq::ONE
    }

    /// Image of an integer in the prime subfield.
    pub fn from_i64(&self, n: i64) -> Fq {
        Fq(n.rem_euclid(self.p as i64) as u64)
    }

    pub fn from_u64(&self, n: u64) -> Fq {
        Fq(n % self.p)
    }

    /// Element from ascending coordinates over the prime field.
    pub fn from_coeffs(&self, coeffs: &[i64]) -> Result<Fq> {
        if coeffs.len() > self.degree {
            return Err(Error::Parse(format!(
                "field element has {} coordinates, field degree is {}",
                coeffs.len(),
                self.degree
            )));
        }
        let mut enc = 0u64;
        for &c in coeffs.iter().rev() {
            enc = enc * self.p + c.rem_euclid(self.p as i64) as u64;
        }
        Ok(Fq(enc))
    }

    /// Element with the given canonical encoding.
    pub fn from_encoding(&self, enc: u64) -> Result<Fq> {
        if enc >= self.order {
            return Err(Error::Parse(format!("encoding {enc} out of range for F_{}", self.order)));
        }
        Ok(Fq(enc))
    }

    /// Ascending coordinates, always of length `d`.
    pub fn coeffs(&self, a: Fq) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.degree);
        let mut v = a.0;
        for _ in 0..self.degree {
            out.push(v % self.p);
            v /= self.p;
        }
        out
    }

    fn encode(&self, coeffs: &[u64]) -> Fq {
        Fq(coeffs.iter().rev().fold(0, |acc, &c| acc * self.p + c))
    }

    /// The class of `z` in an extension field; `1` in a prime field.
    pub fn generator_z(&self) -> Fq {
        if self.degree == 1 {
            Fq::ONE
        } else {
            Fq(self.p)
        }
    }

    /// True iff the element lies in the prime subfield.
    pub fn in_prime_field(&self, a: Fq) -> bool {
        a.0 < self.p
    }

    #[inline]
    pub fn add(&self, a: Fq, b: Fq) -> Fq {
        let p = self.p;
        if self.degree == 1 {
            let s = a.0 + b.0;
            return Fq(if s >= p { s - p } else { s });
        }
        let (mut x, mut y) = (a.0, b.0);
        let mut out = 0u64;
        let mut w = 1u64;
        while x > 0 || y > 0 {
            let s = (x % p + y % p) % p;
            out += s * w;
            w = w.wrapping_mul(p);
            x /= p;
            y /= p;
        }
        Fq(out)
    }

    #[inline]
    pub fn neg(&self, a: Fq) -> Fq {
        let p = self.p;
        if self.degree == 1 {
            return Fq(if a.0 == 0 { 0 } else { p - a.0 });
        }
        let mut x = a.0;
        let mut out = 0u64;
        let mut w = 1u64;
        while x > 0 {
            let c = x % p;
            out += ((p - c) % p) * w;
            w = w.wrapping_mul(p);
            x /= p;
        }
        Fq(out)
    }

    #[inline]
    pub fn sub(&self, a: Fq, b: Fq) -> Fq {
        if self.degree == 1 {
            let p = self.p;
            return Fq(if a.0 >= b.0 { a.0 - b.0 } else { a.0 + p - b.0 });
        }
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Fq, b: Fq) -> Fq {
        if self.degree == 1 {
            return Fq(a.0 * b.0 % self.p);
        }
        if a.is_zero() || b.is_zero() {
            return Fq::ZERO;
        }
        match &self.tables {
            Some(t) => {
                let q1 = self.order as usize - 1;
                let s = t.log[a.0 as usize] as usize + t.log[b.0 as usize] as usize;
                Fq(t.exp[s % q1] as u64)
            }
            None => self.mul_slow(a, b),
        }
    }

    fn mul_slow(&self, a: Fq, b: Fq) -> Fq {
        let m = self.modulus.as_ref().expect("extension field");
        let mut ca = self.coeffs(a);
        let mut cb = self.coeffs(b);
        fp_trim(&mut ca);
        fp_trim(&mut cb);
        let mut r = fp_mulmod(&ca, &cb, m, self.p);
        r.resize(self.degree, 0);
        self.encode(&r)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: Fq) -> Option<Fq> {
        if a.is_zero() {
            return None;
        }
        if self.degree == 1 {
            return Some(Fq(inv_mod(a.0, self.p)));
        }
        match &self.tables {
            Some(t) => {
                let q1 = self.order as usize - 1;
                let l = t.log[a.0 as usize] as usize;
                Some(Fq(t.exp[(q1 - l) % q1] as u64))
            }
            None => Some(self.pow_u(a, self.order - 2)),
        }
    }

    pub fn div(&self, a: Fq, b: Fq) -> Result<Fq> {
        let inv = self.inv(b).ok_or(Error::DivisionByZero)?;
        Ok(self.mul(a, inv))
    }

    pub fn pow_u(&self, a: Fq, mut e: u64) -> Fq {
        let mut result = Fq::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        result
    }

    /// `a^e` for any integer `e`; negative exponents invert first.
    pub fn pow(&self, a: Fq, e: i64) -> Result<Fq> {
        if e >= 0 {
            Ok(self.pow_u(a, e as u64))
        } else {
            let inv = self.inv(a).ok_or(Error::DivisionByZero)?;
            Ok(self.pow_u(inv, e.unsigned_abs()))
        }
    }

    /// Exact multiplicative order of a nonzero element.
    pub fn multiplicative_order(&self, a: Fq) -> Option<u64> {
        if a.is_zero() {
            return None;
        }
        let mut ord = self.order - 1;
        for l in prime_factors(self.order - 1) {
            while ord.is_multiple_of(l) && self.pow_u(a, ord / l) == Fq::ONE {
                ord /= l;
            }
        }
        Some(ord)
    }

    /// Primitive `n`-th root of unity with the smallest canonical encoding.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<Fq> {
        if n < 2 || !(self.order - 1).is_multiple_of(n) {
            return Err(Error::NoRootOfUnity { n, order: self.order });
        }
        let cofactor = (self.order - 1) / n;
        let primes = prime_factors(n);
        let has_order_n =
            |b: Fq| self.pow_u(b, n) == Fq::ONE && primes.iter().all(|&l| self.pow_u(b, n / l) != Fq::ONE);
        // Any element of order n generates all of them; the answer is the
        // smallest encoding among its powers coprime to n.
        let seed = (1..self.order)
            .map(|c| self.pow_u(Fq(c), cofactor))
            .find(|&b| has_order_n(b))
            .expect("cyclic group of order q-1 has elements of every order dividing q-1");
        let mut best = seed;
        let mut cur = Fq::ONE;
        for k in 1..n {
            cur = self.mul(cur, seed);
            if gcd_u64(k, n) == 1 && cur < best {
                best = cur;
            }
        }
        Ok(best)
    }

    /// `a^{1/p}`, the inverse of Frobenius.
    pub fn pth_root(&self, a: Fq) -> Fq {
        if self.degree == 1 {
            a
        } else {
            self.pow_u(a, self.order / self.p)
        }
    }

    /// Wraps a raw value in a [`FieldElement`].
    pub fn element(&self, raw: Fq) -> FieldElement {
        FieldElement { field: self.clone(), raw }
    }

    /// Human-readable rendering: the integer for prime-field values, otherwise
    /// a parenthesised polynomial in `z`.
    pub fn render(&self, a: Fq) -> String {
        if self.in_prime_field(a) {
            return a.0.to_string();
        }
        let terms: Vec<String> = self
            .coeffs(a)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(k, &c)| match (k, c) {
                (0, c) => c.to_string(),
                (1, 1) => "z".to_string(),
                (1, c) => format!("{c}*z"),
                (k, 1) => format!("z^{k}"),
                (k, c) => format!("{c}*z^{k}"),
            })
            .collect();
        format!("({})", terms.join(" + "))
    }

    /// JSON encoding: an integer for prime fields, the coordinate list otherwise.
    pub fn to_json(&self, a: Fq) -> serde_json::Value {
        if self.degree == 1 {
            serde_json::Value::from(a.0)
        } else {
            serde_json::Value::from(self.coeffs(a))
        }
    }
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn build_tables(spec: &FieldSpec) -> Tables {
    let tmp = Field(Arc::new(FieldSpec {
        p: spec.p,
        modulus: spec.modulus.clone(),
        degree: spec.degree,
        order: spec.order,
        tables: None,
    }));
    let q = spec.order;
    let gen = (2..q).find(|&c| tmp.multiplicative_order(Fq(c)) == Some(q - 1)).expect("multiplicative group is cyclic");
    let mut exp = vec![0u32; q as usize - 1];
    let mut log = vec![0u32; q as usize];
    let mut cur = Fq::ONE;
    for (i, slot) in exp.iter_mut().enumerate() {
        *slot = cur.0 as u32;
        log[cur.0 as usize] = i as u32;
        cur = tmp.mul_slow(cur, Fq(gen));
    }
    Tables { exp, log }
}

/// Binary operation selector for [`field_op`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// A field element bundled with its field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    raw: Fq,
}

impl FieldElement {
    pub fn new(field: &Field, raw: Fq) -> Self {
        field.element(raw)
    }

    pub fn from_i64(field: &Field, n: i64) -> Self {
        field.element(field.from_i64(n))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn raw(&self) -> Fq {
        self.raw
    }

    pub fn coeffs(&self) -> Vec<u64> {
        self.field.coeffs(self.raw)
    }

    pub fn is_zero(&self) -> bool {
        self.raw.is_zero()
    }

    pub fn pow(&self, e: i64) -> Result<FieldElement> {
        Ok(self.field.element(self.field.pow(self.raw, e)?))
    }

    pub fn inv(&self) -> Result<FieldElement> {
        let raw = self.field.inv(self.raw).ok_or(Error::DivisionByZero)?;
        Ok(self.field.element(raw))
    }
}

/// Checked binary arithmetic: mismatched fields and division by zero are errors.
pub fn field_op(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let raw = match op {
        FieldOp::Add => f.add(a.raw, b.raw),
        FieldOp::Sub => f.sub(a.raw, b.raw),
        FieldOp::Mul => f.mul(a.raw, b.raw),
        FieldOp::Div => f.div(a.raw, b.raw)?,
    };
    Ok(f.element(raw))
}

macro_rules! forward_op {
    ($tr:ident, $method:ident, $op:expr) => {
        impl std::ops::$tr<&FieldElement> for &FieldElement {
            type Output = FieldElement;

            /// Panics on mismatched fields (and on division by zero); use
            /// [`field_op`] for the checked form.
            fn $method(self, rhs: &FieldElement) -> FieldElement {
                field_op(self, rhs, $op).expect("field arithmetic")
            }
        }
    };
}

forward_op!(Add, add, FieldOp::Add);
forward_op!(Sub, sub, FieldOp::Sub);
forward_op!(Mul, mul, FieldOp::Mul);
forward_op!(Div, div, FieldOp::Div);

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;

    fn neg(self) -> FieldElement {
        self.field.element(self.field.neg(self.raw))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.render(self.raw))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(f: &Field, n: i64) -> FieldElement {
        FieldElement::from_i64(f, n)
    }

    #[test]
    fn prime_field_ops() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(field_op(&el(&f7, 1), &el(&f7, 3), FieldOp::Div).unwrap(), el(&f7, 5));
        let f5 = Field::prime(5).unwrap();
        assert_eq!(&el(&f5, 2) * &el(&f5, 3), el(&f5, 1));
        assert_eq!(&el(&f5, 2) - &el(&f5, 3), el(&f5, 4));
        assert_eq!(-&el(&f5, 0), el(&f5, 0));
    }

    #[test]
    fn extension_square_of_z() {
        let f9 = Field::new(3, Some(vec![1, 0, 1])).unwrap();
        let z = f9.element(f9.generator_z());
        assert_eq!((&z * &z).coeffs(), vec![2, 0]);
    }

    #[test]
    fn division_by_zero_and_mismatch() {
        let f7 = Field::prime(7).unwrap();
        let f5 = Field::prime(5).unwrap();
        assert!(matches!(field_op(&el(&f7, 1), &el(&f7, 0), FieldOp::Div), Err(Error::DivisionByZero)));
        assert!(matches!(field_op(&el(&f7, 1), &el(&f5, 1), FieldOp::Add), Err(Error::FieldMismatch)));
        assert!(matches!(el(&f7, 0).pow(-1), Err(Error::DivisionByZero)));
    }

    #[test]
    fn powers() {
        let f5 = Field::prime(5).unwrap();
        let f7 = Field::prime(7).unwrap();
        assert_eq!(el(&f5, 2).pow(4).unwrap(), el(&f5, 1));
        assert_eq!(el(&f7, 3).pow(6).unwrap(), el(&f7, 1));
        assert_eq!(el(&f7, 2).pow(-1).unwrap(), el(&f7, 4));
        assert_eq!(el(&f7, 0).pow(0).unwrap(), el(&f7, 1));
    }

    /// Brute-force oracle: smallest encoding of exact order n.
    fn smallest_of_order(f: &Field, n: u64) -> Option<Fq> {
        (1..f.order()).map(Fq).find(|&a| (1..=n).find(|&k| f.pow_u(a, k) == Fq::ONE) == Some(n))
    }

    #[test]
    fn roots_of_unity() {
        let f5 = Field::prime(5).unwrap();
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f5.nth_root_of_unity(4).unwrap(), Fq(2));
        assert_eq!(f7.nth_root_of_unity(3).unwrap(), Fq(2));
        assert!(matches!(f5.nth_root_of_unity(3), Err(Error::NoRootOfUnity { .. })));
        let f25 = Field::new(5, Some(vec![2, 0, 1])).unwrap();
        let f49 = Field::new(7, Some(vec![1, 0, 1])).unwrap();
        for (f, ns) in [(&f25, vec![3u64, 4, 6, 8, 12, 24]), (&f49, vec![3, 4, 6, 8, 16, 48])] {
            for n in ns {
                assert_eq!(Some(f.nth_root_of_unity(n).unwrap()), smallest_of_order(f, n), "n={n}");
            }
        }
    }

    #[test]
    fn modulus_validation() {
        assert!(matches!(Field::prime(9), Err(Error::NotPrime(9))));
        // x^2 + 1 = (x + 2)(x + 3) over F_5
        assert!(matches!(Field::new(5, Some(vec![1, 0, 1])), Err(Error::InvalidModulus(_))));
        assert!(matches!(Field::new(3, Some(vec![1, 0, 2])), Err(Error::InvalidModulus(_))));
        // x^4 + 1 = (x^2 + x + 2)(x^2 + 2x + 2) over F_3: no roots, still reducible
        assert!(matches!(Field::new(3, Some(vec![1, 0, 0, 0, 1])), Err(Error::InvalidModulus(_))));
        assert!(Field::new(2, Some(vec![1, 1, 0, 0, 1])).is_ok());
    }

    #[test]
    fn slow_path_agrees_with_tables() {
        // F_{2^20}: beyond the table limit, exercises the schoolbook path.
        let big = Field::new(2, Some(vec![1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        let a = Fq(123_457);
        let inv = big.inv(a).unwrap();
        assert_eq!(big.mul(a, inv), Fq::ONE);
        assert_eq!(big.pow_u(a, big.order() - 1), Fq::ONE);
        let f81 = Field::new(3, Some(vec![2, 1, 0, 0, 1])).unwrap();
        for a in 0..81 {
            for b in 0..81 {
                assert_eq!(f81.mul(Fq(a), Fq(b)), f81.mul_slow_checked(Fq(a), Fq(b)));
            }
        }
    }

    impl Field {
        fn mul_slow_checked(&self, a: Fq, b: Fq) -> Fq {
            if a.is_zero() || b.is_zero() {
                Fq::ZERO
            } else {
                self.mul_slow(a, b)
            }
        }
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn fields() -> Vec<Field> {
            vec![
                Field::prime(7).unwrap(),
                Field::new(3, Some(vec![1, 0, 1])).unwrap(),
                Field::new(5, Some(vec![2, 0, 1])).unwrap(),
            ]
        }

        proptest! {
            #[test]
            fn ring_axioms(k in 0usize..3, a in 0u64..1000, b in 0u64..1000, c in 0u64..1000) {
                let f = &fields()[k];
                let (a, b, c) = (Fq(a % f.order()), Fq(b % f.order()), Fq(c % f.order()));
                prop_assert_eq!(f.add(a, b), f.add(b, a));
                prop_assert_eq!(f.mul(a, b), f.mul(b, a));
                prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                prop_assert_eq!(f.sub(f.add(a, b), b), a);
            }

            #[test]
            fn fermat(k in 0usize..3, a in 1u64..1000) {
                let f = &fields()[k];
                let a = Fq(1 + a % (f.order() - 1));
                prop_assert_eq!(f.pow_u(a, f.order() - 1), Fq::ONE);
                prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Fq::ONE);
                prop_assert_eq!(f.pow_u(f.pth_root(a), f.characteristic()), a);
            }
        }
    }
}
