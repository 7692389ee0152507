//! Univariate polynomials and reduced rational functions over a finite field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::gf::{Field, Fq};

/// Dense polynomial with ascending coefficients and no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Fq>,
}

impl Poly {
    pub fn from_coeffs(field: &Field, mut coeffs: Vec<Fq>) -> Poly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    /// Polynomial from small integer coefficients (reduced into the prime field).
    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Poly {
        Poly::from_coeffs(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, Fq::ONE)
    }

    pub fn constant(field: &Field, c: Fq) -> Poly {
        Poly::from_coeffs(field, vec![c])
    }

    pub fn x(field: &Field) -> Poly {
        Poly::monomial(field, Fq::ONE, 1)
    }

    pub fn monomial(field: &Field, c: Fq, k: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(field);
        }
        let mut coeffs = vec![Fq::ZERO; k + 1];
        coeffs[k] = c;
        Poly { field: field.clone(), coeffs }
    }

    /// `x - rho`
    pub fn x_minus(field: &Field, rho: Fq) -> Poly {
        Poly::from_coeffs(field, vec![field.neg(rho), Fq::ONE])
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Fq] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Fq {
        self.coeffs.get(k).copied().unwrap_or(Fq::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == Fq::ONE
    }

    /// Degree, with `None` standing for the `-inf` degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> Fq {
        self.coeffs.last().copied().unwrap_or(Fq::ZERO)
    }

    pub fn scale(&self, c: Fq) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.field);
        }
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    /// Multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Fq::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn monic(&self) -> Poly {
        match self.field.inv(self.lead()) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut result = Poly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    pub fn eval(&self, at: Fq) -> Fq {
        let f = &self.field;
        self.coeffs.iter().rev().fold(Fq::ZERO, |acc, &c| f.add(f.mul(acc, at), c))
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self.coeffs.iter().enumerate().skip(1).map(|(k, &c)| f.mul(c, f.from_u64(k as u64))).collect();
        Poly::from_coeffs(f, coeffs)
    }

    /// Long division `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divrem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        let f = &self.field;
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        let Some(da) = self.degree() else {
            return Ok((Poly::zero(f), Poly::zero(f)));
        };
        if da < db {
            return Ok((Poly::zero(f), self.clone()));
        }
        let inv = f.inv(divisor.lead()).expect("nonzero leading coefficient");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Fq::ZERO; da - db + 1];
        for k in (0..=da - db).rev() {
            let c = f.mul(rem[k + db], inv);
            if c.is_zero() {
                continue;
            }
            quot[k] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[k + j] = f.sub(rem[k + j], f.mul(c, d));
            }
        }
        rem.truncate(db);
        Ok((Poly::from_coeffs(f, quot), Poly::from_coeffs(f, rem)))
    }

    /// Quotient of a division known to be exact.
    pub fn exact_div(&self, divisor: &Poly) -> Poly {
        let (q, r) = self.divrem(divisor).expect("nonzero divisor");
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor (`gcd(0, 0) = 0`).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).expect("nonzero").1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(low, high)` with `low + high = self`; `low` holds the monomials of
    /// degree `<= m` when `inclusive`, `< m` otherwise.
    pub fn split_at_degree(&self, m: usize, inclusive: bool) -> (Poly, Poly) {
        let cut = if inclusive { m + 1 } else { m }.min(self.coeffs.len());
        let low = Poly::from_coeffs(&self.field, self.coeffs[..cut].to_vec());
        let mut high = vec![Fq::ZERO; cut];
        high.extend_from_slice(&self.coeffs[cut..]);
        (low, Poly::from_coeffs(&self.field, high))
    }

    /// Multiplicity of `rho` as a root of a nonzero polynomial.
    pub fn root_multiplicity(&self, rho: Fq) -> u32 {
        debug_assert!(!self.is_zero());
        let f = &self.field;
        let mut cur = self.coeffs.clone();
        let mut mult = 0;
        loop {
            // synthetic division by (x - rho)
            let n = cur.len();
            if n < 2 {
                return mult;
            }
            let mut q = vec![Fq::ZERO; n - 1];
            let mut carry = Fq::ZERO;
            for k in (0..n).rev() {
                let v = f.add(cur[k], f.mul(carry, rho));
                if k == 0 {
                    if !v.is_zero() {
                        return mult;
                    }
                } else {
                    q[k - 1] = v;
                    carry = v;
                }
            }
            cur = q;
            mult += 1;
        }
    }

    /// Coefficient-wise `p`-th root of a polynomial in `x^p`.
    fn pth_root(&self) -> Poly {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let coeffs = self.coeffs.iter().step_by(p).map(|&c| f.pth_root(c)).collect();
        Poly::from_coeffs(f, coeffs)
    }

    /// Square-free factorisation `self = lead * prod a_i^{m_i}` (factors monic,
    /// pairwise coprime, square-free).
    pub fn squarefree_factorization(&self) -> Vec<(Poly, u32)> {
        let f = &self.field;
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let a = self.monic();
        let mut c = a.gcd(&a.derivative());
        let mut w = a.exact_div(&c);
        let mut i = 1;
        while !w.is_one() {
            let y = w.gcd(&c);
            let fac = w.exact_div(&y);
            if !fac.is_one() {
                out.push((fac, i));
            }
            w = y;
            c = c.exact_div(&w);
            i += 1;
        }
        if !c.is_one() {
            let p = f.characteristic() as u32;
            for (fac, m) in c.pth_root().squarefree_factorization() {
                out.push((fac, m * p));
            }
        }
        out
    }

    /// Largest multiplicity of any root over the algebraic closure (0 for
    /// constants).
    pub fn max_root_multiplicity(&self) -> u32 {
        self.squarefree_factorization().into_iter().map(|(_, m)| m).max().unwrap_or(0)
    }

    /// `prod (x - rho_i)^{e_i}`
    pub fn from_roots(field: &Field, roots: impl IntoIterator<Item = (Fq, u32)>) -> Poly {
        roots.into_iter().fold(Poly::one(field), |acc, (rho, e)| &acc * &Poly::x_minus(field, rho).pow(e))
    }

    fn zip_with(&self, other: &Poly, op: impl Fn(Fq, Fq) -> Fq) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| op(self.coeff(k), other.coeff(k))).collect();
        Poly::from_coeffs(&self.field, coeffs)
    }
}

impl Add for &Poly {
    type Output = Poly;

    fn add(self, rhs: &Poly) -> Poly {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.add(a, b))
    }
}

impl Sub for &Poly {
    type Output = Poly;

    fn sub(self, rhs: &Poly) -> Poly {
        let f = self.field.clone();
        self.zip_with(rhs, |a, b| f.sub(a, b))
    }
}

impl Neg for &Poly {
    type Output = Poly;

    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::from_coeffs(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;

    fn mul(self, rhs: &Poly) -> Poly {
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![Fq::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::from_coeffs(f, out)
    }
}

impl fmt::Display for Poly {
    /// Ascending rendering `c0 + c1*x + c2*x^2`, zero terms omitted.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return out.write_str("0");
        }
        let f = &self.field;
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, &c)| {
                let cs = f.render(c);
                match (k, c == Fq::ONE) {
                    (0, _) => cs,
                    (1, true) => "x".into(),
                    (1, false) => format!("{cs}*x"),
                    (k, true) => format!("x^{k}"),
                    (k, false) => format!("{cs}*x^{k}"),
                }
            })
            .collect();
        out.write_str(&terms.join(" + "))
    }
}

/// Rational function in lowest terms with monic denominator; zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFn {
    num: Poly,
    den: Poly,
}

impl RatFn {
    pub fn new(num: Poly, den: Poly) -> Result<RatFn> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(RatFn::reduce(num, den))
    }

    fn reduce(num: Poly, den: Poly) -> RatFn {
        if num.is_zero() {
            let field = den.field.clone();
            return RatFn::zero(&field);
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.exact_div(&g), den.exact_div(&g)) };
        let inv = den.field.inv(den.lead()).expect("nonzero");
        if inv == Fq::ONE {
            RatFn { num, den }
        } else {
            RatFn { num: num.scale(inv), den: den.scale(inv) }
        }
    }

    pub fn zero(field: &Field) -> RatFn {
        RatFn { num: Poly::zero(field), den: Poly::one(field) }
    }

    pub fn one(field: &Field) -> RatFn {
        RatFn::from_poly(Poly::one(field))
    }

    pub fn constant(field: &Field, c: Fq) -> RatFn {
        RatFn::from_poly(Poly::constant(field, c))
    }

    pub fn from_poly(p: Poly) -> RatFn {
        let field = p.field.clone();
        RatFn { num: p, den: Poly::one(&field) }
    }

    /// `x^k` for any integer `k`.
    pub fn x_pow(field: &Field, k: i64) -> RatFn {
        let m = Poly::monomial(field, Fq::ONE, k.unsigned_abs() as usize);
        if k >= 0 {
            RatFn::from_poly(m)
        } else {
            RatFn { num: Poly::one(field), den: m }
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn field(&self) -> &Field {
        &self.num.field
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn scale(&self, c: Fq) -> RatFn {
        if c.is_zero() {
            return RatFn::zero(self.field());
        }
        RatFn { num: self.num.scale(c), den: self.den.clone() }
    }

    pub fn inv(&self) -> Result<RatFn> {
        RatFn::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &RatFn) -> Result<RatFn> {
        Ok(self * &other.inv()?)
    }

    pub fn derivative(&self) -> RatFn {
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        RatFn::reduce(top, &self.den * &self.den)
    }

    /// Order of vanishing at `x = rho` (negative for a pole).
    pub fn root_multiplicity(&self, rho: Fq) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroValuation);
        }
        Ok(self.num.root_multiplicity(rho) as i64 - self.den.root_multiplicity(rho) as i64)
    }

    /// Valuation at `x = infinity`: `deg den - deg num`.
    pub fn degree_valuation(&self) -> Result<i64> {
        let dn = self.num.degree().ok_or(Error::ZeroValuation)?;
        Ok(self.den.degree().expect("nonzero den") as i64 - dn as i64)
    }

    /// `Res_{x=inf}(self dx)`: minus the `x^{-1}` coefficient of the
    /// descending expansion at infinity.
    pub fn residue_at_infinity(&self) -> Fq {
        let f = self.field();
        if self.is_zero() {
            return Fq::ZERO;
        }
        let dd = self.den.degree().expect("nonzero den");
        if dd == 0 {
            return Fq::ZERO;
        }
        // The polynomial part carries no x^{-1} term; the proper part
        // rem/den = c_1 x^{-1} + ..., with c_1 = [x^{dd-1}] rem / lead(den).
        let (_, rem) = self.num.divrem(&self.den).expect("nonzero den");
        let c1 = f.div(rem.coeff(dd - 1), self.den.lead()).expect("monic den");
        f.neg(c1)
    }
}

impl Add for &RatFn {
    type Output = RatFn;

    fn add(self, rhs: &RatFn) -> RatFn {
        if rhs.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return rhs.clone();
        }
        if self.den == rhs.den {
            return RatFn::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = self.den.gcd(&rhs.den);
        let a_cof = rhs.den.exact_div(&g);
        let b_cof = self.den.exact_div(&g);
        let num = &(&self.num * &a_cof) + &(&rhs.num * &b_cof);
        RatFn::reduce(num, &self.den * &a_cof)
    }
}

impl Neg for &RatFn {
    type Output = RatFn;

    fn neg(self) -> RatFn {
        RatFn { num: -&self.num, den: self.den.clone() }
    }
}

impl Sub for &RatFn {
    type Output = RatFn;

    fn sub(self, rhs: &RatFn) -> RatFn {
        self + &(-rhs)
    }
}

impl Mul for &RatFn {
    type Output = RatFn;

    fn mul(self, rhs: &RatFn) -> RatFn {
        if self.is_zero() || rhs.is_zero() {
            return RatFn::zero(self.field());
        }
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.exact_div(&g1) * &rhs.num.exact_div(&g2);
        let den = &self.den.exact_div(&g2) * &rhs.den.exact_div(&g1);
        RatFn::reduce_coprime(num, den)
    }
}

impl RatFn {
    fn reduce_coprime(num: Poly, den: Poly) -> RatFn {
        let inv = den.field.inv(den.lead()).expect("nonzero");
        if inv == Fq::ONE {
            RatFn { num, den }
        } else {
            RatFn { num: num.scale(inv), den: den.scale(inv) }
        }
    }
}

impl fmt::Display for RatFn {
    /// `num` alone for polynomials, otherwise `num/den` with multi-term
    /// parts parenthesised.
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(out, "{}", self.num);
        }
        let wrap = |p: &Poly| {
            if p.coeffs.iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({p})")
            } else {
                p.to_string()
            }
        };
        write!(out, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> Field {
        Field::prime(p).unwrap()
    }

    fn poly(field: &Field, c: &[i64]) -> Poly {
        Poly::from_i64s(field, c)
    }

    #[test]
    fn core_ops() {
        let f5 = f(5);
        assert_eq!(&poly(&f5, &[4, 0, 1]) * &poly(&f5, &[1, 0, 1]), poly(&f5, &[4, 0, 0, 0, 1]));
        let f7 = f(7);
        assert_eq!(poly(&f7, &[-1, 0, 1]).gcd(&poly(&f7, &[-1, 1])), poly(&f7, &[-1, 1]));
        let (q, r) = poly(&f7, &[0, 0, 0, 1]).divrem(&poly(&f7, &[0, 1])).unwrap();
        assert_eq!((q, r), (poly(&f7, &[0, 0, 1]), Poly::zero(&f7)));
        assert!(matches!(poly(&f7, &[1]).divrem(&Poly::zero(&f7)), Err(Error::DivisionByZero)));
        assert_eq!(Poly::zero(&f7).degree(), None);
        assert!(Poly::zero(&f7).degree() < Poly::one(&f7).degree());
    }

    #[test]
    fn derivatives() {
        let f5 = f(5);
        assert_eq!(poly(&f5, &[4, 0, 0, 0, 1]).derivative(), poly(&f5, &[0, 0, 0, 4]));
        let f3 = f(3);
        assert_eq!(poly(&f3, &[0, 1, 0, 1]).derivative(), poly(&f3, &[1]));
        assert!(poly(&f3, &[2]).derivative().is_zero());
    }

    #[test]
    fn splits() {
        let f5 = f(5);
        let h = poly(&f5, &[2, 0, 0, 0, 2]);
        assert_eq!(h.split_at_degree(2, true), (poly(&f5, &[2]), poly(&f5, &[0, 0, 0, 0, 2])));
        let g = poly(&f5, &[1, 2, 0, 1]);
        assert_eq!(g.split_at_degree(1, true), (poly(&f5, &[1, 2]), poly(&f5, &[0, 0, 0, 1])));
        assert_eq!(g.split_at_degree(1, false), (poly(&f5, &[1]), poly(&f5, &[0, 2, 0, 1])));
        assert_eq!(g.split_at_degree(3, true), (g.clone(), Poly::zero(&f5)));
        assert_eq!(g.split_at_degree(10, false), (g.clone(), Poly::zero(&f5)));
    }

    #[test]
    fn multiplicities() {
        let f7 = f(7);
        let a = RatFn::new(poly(&f7, &[-1, 1]).pow(2), poly(&f7, &[-2, 1])).unwrap();
        assert_eq!(a.root_multiplicity(Fq(1)).unwrap(), 2);
        assert_eq!(a.root_multiplicity(Fq(2)).unwrap(), -1);
        assert_eq!(a.root_multiplicity(Fq(3)).unwrap(), 0);
        let f5 = f(5);
        let b = RatFn::new(Poly::one(&f5), poly(&f5, &[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(b.root_multiplicity(Fq(1)).unwrap(), -1);
        assert!(matches!(RatFn::zero(&f5).root_multiplicity(Fq(1)), Err(Error::ZeroValuation)));
    }

    #[test]
    fn valuation_at_infinity() {
        let f7 = f(7);
        assert_eq!(RatFn::x_pow(&f7, 1).degree_valuation().unwrap(), -1);
        assert_eq!(RatFn::x_pow(&f7, -2).degree_valuation().unwrap(), 2);
        let c = RatFn::new(poly(&f7, &[1, 0, 1]), poly(&f7, &[3, 0, 1])).unwrap();
        assert_eq!(c.degree_valuation().unwrap(), 0);
        assert!(matches!(RatFn::zero(&f7).degree_valuation(), Err(Error::ZeroValuation)));
    }

    #[test]
    fn residues() {
        let f5 = f(5);
        for k in 0..5 {
            assert_eq!(RatFn::x_pow(&f5, k).residue_at_infinity(), Fq::ZERO);
        }
        assert_eq!(RatFn::x_pow(&f5, -1).residue_at_infinity(), Fq(4));
        // 4x^3/(x^4+4) = f'/f: residue -deg f = -4 = 1
        let h = RatFn::new(poly(&f5, &[0, 0, 0, 4]), poly(&f5, &[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(h.residue_at_infinity(), Fq(1));
        assert_eq!(RatFn::zero(&f5).residue_at_infinity(), Fq::ZERO);
        // Non-monic numerator and an improper fraction: (3x^3 + 1)/(x^2 + 2)
        // = 3x + (1 - 6x)/(x^2+2) -> x^{-1} coefficient -6 = 4, residue 1.
        let g = RatFn::new(poly(&f5, &[1, 0, 0, 3]), poly(&f5, &[2, 0, 1])).unwrap();
        assert_eq!(g.residue_at_infinity(), Fq(1));
    }

    #[test]
    fn rational_arithmetic_normalises() {
        let f7 = f(7);
        let a = RatFn::new(poly(&f7, &[0, 2]), poly(&f7, &[0, 0, 4])).unwrap();
        assert_eq!(a, RatFn::new(poly(&f7, &[4]), poly(&f7, &[0, 1])).unwrap());
        assert_eq!(a.den().lead(), Fq::ONE);
        let b = &a - &a;
        assert!(b.is_zero());
        assert_eq!(b.den(), &Poly::one(&f7));
        assert!(RatFn::new(Poly::one(&f7), Poly::zero(&f7)).is_err());
        let c = RatFn::new(poly(&f7, &[1, 1]), poly(&f7, &[-1, 1])).unwrap();
        assert_eq!(&(&c * &c.inv().unwrap()), &RatFn::one(&f7));
    }

    #[test]
    fn squarefree() {
        let f3 = f(3);
        // (x-1)^4 (x-2)^3 (x^2+1): multiplicity 3 collapses the derivative
        let p = &Poly::from_roots(&f3, [(Fq(1), 4), (Fq(2), 3)]) * &poly(&f3, &[1, 0, 1]);
        assert_eq!(p.max_root_multiplicity(), 4);
        assert_eq!(Poly::x_minus(&f3, Fq(2)).pow(9).max_root_multiplicity(), 9);
        assert_eq!(poly(&f3, &[1, 0, 1]).max_root_multiplicity(), 1);
        assert_eq!(poly(&f3, &[2]).max_root_multiplicity(), 0);
        let f9 = Field::new(3, Some(vec![1, 0, 1])).unwrap();
        let z = f9.generator_z();
        let q = Poly::from_roots(&f9, [(z, 6), (Fq(1), 2)]);
        let sff = q.squarefree_factorization();
        assert_eq!(q.max_root_multiplicity(), 6);
        let rebuilt = sff.iter().fold(Poly::one(&f9), |acc, (fac, m)| &acc * &fac.pow(*m));
        assert_eq!(rebuilt, q);
    }

    #[test]
    fn rendering() {
        let f5 = f(5);
        assert_eq!(poly(&f5, &[4, 0, 0, 0, 1]).to_string(), "4 + x^4");
        assert_eq!(poly(&f5, &[0, 2, 1]).to_string(), "2*x + x^2");
        let r = RatFn::new(Poly::one(&f5), poly(&f5, &[4, 0, 0, 0, 1])).unwrap();
        assert_eq!(r.to_string(), "1/(4 + x^4)");
        assert_eq!(RatFn::x_pow(&f5, -2).to_string(), "1/x^2");
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_poly() -> impl Strategy<Value = Vec<i64>> {
            prop::collection::vec(0i64..7, 0..9)
        }

        proptest! {
            #[test]
            fn split_partitions_monomials(c in arb_poly(), m in 0usize..10, inc in any::<bool>()) {
                let f7 = f(7);
                let h = poly(&f7, &c);
                let (lo, hi) = h.split_at_degree(m, inc);
                prop_assert_eq!(&(&lo + &hi), &h);
                let bound = if inc { m + 1 } else { m };
                prop_assert!(lo.coeffs().len() <= bound);
                prop_assert!(hi.coeffs().iter().take(bound).all(|c| c.is_zero()));
            }

            #[test]
            fn multiplicity_is_additive(a in arb_poly(), b in arb_poly(), c in arb_poly(), rho in 0u64..7) {
                let f7 = f(7);
                let (pa, pb, pc) = (poly(&f7, &a), poly(&f7, &b), poly(&f7, &c));
                prop_assume!(!pa.is_zero() && !pb.is_zero() && !pc.is_zero());
                let r1 = RatFn::new(pa.clone(), pb.clone()).unwrap();
                let r2 = RatFn::new(pc.clone(), pa.clone()).unwrap();
                let prod = &r1 * &r2;
                prop_assert_eq!(
                    prod.root_multiplicity(Fq(rho)).unwrap(),
                    r1.root_multiplicity(Fq(rho)).unwrap() + r2.root_multiplicity(Fq(rho)).unwrap()
                );
            }

            #[test]
            fn residue_is_linear(a in arb_poly(), b in arb_poly(), c in arb_poly(), d in arb_poly(), s in 0u64..7) {
                let f7 = f(7);
                let (pb, pd) = (poly(&f7, &b), poly(&f7, &d));
                prop_assume!(!pb.is_zero() && !pd.is_zero());
                let r1 = RatFn::new(poly(&f7, &a), pb).unwrap();
                let r2 = RatFn::new(poly(&f7, &c), pd).unwrap();
                let lhs = (&r1.scale(Fq(s)) + &r2).residue_at_infinity();
                let rhs = f7.add(f7.mul(Fq(s), r1.residue_at_infinity()), r2.residue_at_infinity());
                prop_assert_eq!(lhs, rhs);
            }

            #[test]
            fn field_operations_on_ratfns(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
                let f7 = f(7);
                let (pa, pb) = (poly(&f7, &a), poly(&f7, &b));
                prop_assume!(!pb.is_zero());
                let r = RatFn::new(pa.clone(), pb.clone()).unwrap();
                let s = RatFn::from_poly(poly(&f7, &c));
                prop_assert_eq!(&(&(&r + &s) - &s), &r);
                prop_assert_eq!(&(&r * &s), &(&s * &r));
                // quotient rule against a direct evaluation
                let d = (&r * &s).derivative();
                let e = &(&r.derivative() * &s) + &(&r * &s.derivative());
                prop_assert_eq!(d, e);
            }
        }
    }
}
