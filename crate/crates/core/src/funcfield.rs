//! Arithmetic in the function field `k(x)[y]/(relation)` of a cover.
//!
//! Elements are coefficient vectors over `k(x)` in the basis
//! `1, y, ..., y^{D-1}` where `D` is the degree of the cover; differentials
//! are elements times `dx`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::curve::Cover;
use crate::error::{Error, Result};
use crate::gf::Fq;
use crate::polyrat::{Poly, RatFn};

#[derive(Clone, Debug)]
pub struct FFElem {
    cover: Arc<Cover>,
    coeffs: Vec<RatFn>,
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        same_cover(&self.cover, &other.cover) && self.coeffs == other.coeffs
    }
}

fn same_cover(a: &Arc<Cover>, b: &Arc<Cover>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl FFElem {
    /// Builds `sum coeffs[j] y^j`, reducing any `y`-degree at or above `D`.
    pub fn new(cover: &Arc<Cover>, coeffs: Vec<RatFn>) -> FFElem {
        let d = cover.degree() as usize;
        let field = cover.field();
        let mut coeffs = coeffs;
        if coeffs.len() > d {
            reduce(cover, &mut coeffs);
        }
        coeffs.resize_with(d, || RatFn::zero(field));
        FFElem { cover: cover.clone(), coeffs }
    }

    pub fn zero(cover: &Arc<Cover>) -> FFElem {
        FFElem::new(cover, Vec::new())
    }

    pub fn one(cover: &Arc<Cover>) -> FFElem {
        FFElem::from_ratfn(cover, RatFn::one(cover.field()))
    }

    pub fn from_ratfn(cover: &Arc<Cover>, a: RatFn) -> FFElem {
        FFElem::new(cover, vec![a])
    }

    pub fn from_poly(cover: &Arc<Cover>, a: Poly) -> FFElem {
        FFElem::from_ratfn(cover, RatFn::from_poly(a))
    }

    /// `a * y^k`; `k` may exceed the cover degree.
    pub fn monomial(cover: &Arc<Cover>, a: RatFn, k: usize) -> FFElem {
        let mut coeffs = vec![RatFn::zero(cover.field()); k + 1];
        coeffs[k] = a;
        FFElem::new(cover, coeffs)
    }

    pub fn y(cover: &Arc<Cover>) -> FFElem {
        FFElem::monomial(cover, RatFn::one(cover.field()), 1)
    }

    pub fn cover(&self) -> &Arc<Cover> {
        &self.cover
    }

    pub fn coeffs(&self) -> &[RatFn] {
        &self.coeffs
    }

    pub fn coeff(&self, j: usize) -> &RatFn {
        &self.coeffs[j]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFn::is_zero)
    }

    /// Number of nonzero `y`-terms.
    pub fn term_count(&self) -> usize {
        self.coeffs.iter().filter(|c| !c.is_zero()).count()
    }

    pub fn scale(&self, c: &RatFn) -> FFElem {
        let coeffs = self.coeffs.iter().map(|a| a * c).collect();
        FFElem { cover: self.cover.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u32) -> FFElem {
        let mut acc = FFElem::one(&self.cover);
        let mut base = self.clone();
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

    fn check(&self, other: &FFElem) -> Result<()> {
        if same_cover(&self.cover, &other.cover) {
            Ok(())
        } else {
            Err(Error::CurveMismatch)
        }
    }

    pub fn checked_add(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        Ok(FFElem { cover: self.cover.clone(), coeffs })
    }

    pub fn checked_sub(&self, other: &FFElem) -> Result<FFElem> {
        self.checked_add(&-other)
    }

    pub fn checked_mul(&self, other: &FFElem) -> Result<FFElem> {
        self.check(other)?;
        let field = self.cover.field();
        let d = self.coeffs.len();
        let mut out = vec![RatFn::zero(field); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (j, b) in other.coeffs.iter().enumerate().filter(|(_, b)| !b.is_zero()) {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(FFElem::new(&self.cover, out))
    }

    /// Image under the `j`-th power of the generator of the Galois group:
    /// `y -> zeta^j y` (Kummer) or `y -> y + j` (Artin-Schreier).
    pub fn galois(&self, j: u64) -> FFElem {
        let field = self.cover.field();
        let d = self.coeffs.len();
        if let Some(zeta) = self.cover.zeta() {
            let step = field.pow_u(zeta, j);
            let mut c = Fq::ONE;
            let coeffs = self
                .coeffs
                .iter()
                .map(|a| {
                    let out = a.scale(c);
                    c = field.mul(c, step);
                    out
                })
                .collect();
            return FFElem { cover: self.cover.clone(), coeffs };
        }
        // (y + j)^k = sum_i C(k, i) j^{k-i} y^i with binomials mod p
        let shift = field.from_u64(j);
        let binom = binomials(d, field.characteristic());
        let mut out = vec![RatFn::zero(field); d];
        for (k, a) in self.coeffs.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
            for (i, slot) in out.iter_mut().enumerate().take(k + 1) {
                let c = field.mul(field.from_u64(binom[k][i]), field.pow_u(shift, (k - i) as u64));
                if !c.is_zero() {
                    *slot = &*slot + &a.scale(c);
                }
            }
        }
        FFElem { cover: self.cover.clone(), coeffs: out }
    }

    /// Trace to `k(x)`: `n a_0` (Kummer) or `-a_{p-1}` (Artin-Schreier).
    pub fn trace(&self) -> RatFn {
        let field = self.cover.field();
        if self.cover.is_kummer() {
            self.coeffs[0].scale(field.from_u64(self.cover.degree() as u64))
        } else {
            -self.coeffs.last().expect("p >= 3")
        }
    }

    /// Trace as the sum of all Galois conjugates.
    pub fn trace_by_orbit(&self) -> RatFn {
        let mut acc = FFElem::zero(&self.cover);
        for j in 0..self.cover.degree() as u64 {
            acc = &acc + &self.galois(j);
        }
        debug_assert!(acc.coeffs[1..].iter().all(RatFn::is_zero));
        acc.coeffs[0].clone()
    }

    /// Exterior derivative `d(self)`.
    pub fn exterior_d(&self) -> FFDiff {
        let dy = self.cover.dy_coeff();
        let field = self.cover.field();
        let mut out: Vec<RatFn> = self.coeffs.iter().map(RatFn::derivative).collect();
        for (j, a) in self.coeffs.iter().enumerate().skip(1).filter(|(_, a)| !a.is_zero()) {
            let ja = a.scale(field.from_u64(j as u64));
            if self.cover.is_kummer() {
                // d(y^j) = j (dy/y) y^j
                out[j] = &out[j] + &(&ja * dy);
            } else {
                // d(y^j) = j y^{j-1} dy
                out[j - 1] = &out[j - 1] + &(&ja * dy);
            }
        }
        FFDiff::new(FFElem { cover: self.cover.clone(), coeffs: out })
    }

    /// Lower bound for the valuation at every point of `place`.
    pub fn valuation_bound(&self, place: PlaceClass) -> Result<Bound> {
        valuation_bound(self, place, 0)
    }
}

fn binomials(d: usize, p: u64) -> Vec<Vec<u64>> {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(d);
    for k in 0..d {
        let mut row = vec![1u64; k + 1];
        for i in 1..k {
            row[i] = (rows[k - 1][i - 1] + rows[k - 1][i]) % p;
        }
        rows.push(row);
    }
    rows
}

/// Reduces a coefficient vector modulo the defining relation.
fn reduce(cover: &Cover, coeffs: &mut Vec<RatFn>) {
    let d = cover.degree() as usize;
    let field = cover.field();
    match cover.r() {
        None => {
            // y^n = f
            let f = RatFn::from_poly(cover.f().clone());
            for k in (d..coeffs.len()).rev() {
                if coeffs[k].is_zero() {
                    continue;
                }
                let top = std::mem::replace(&mut coeffs[k], RatFn::zero(field));
                coeffs[k - d] = &coeffs[k - d] + &(&top * &f);
            }
        }
        Some(r) => {
            // y^p = y + r
            for k in (d..coeffs.len()).rev() {
                if coeffs[k].is_zero() {
                    continue;
                }
                let top = std::mem::replace(&mut coeffs[k], RatFn::zero(field));
                coeffs[k - d + 1] = &coeffs[k - d + 1] + &top;
                coeffs[k - d] = &coeffs[k - d] + &(&top * r);
            }
        }
    }
    coeffs.truncate(d);
}

impl Add for &FFElem {
    type Output = FFElem;

    fn add(self, rhs: &FFElem) -> FFElem {
        self.checked_add(rhs).expect("elements of different function fields")
    }
}

impl Sub for &FFElem {
    type Output = FFElem;

    fn sub(self, rhs: &FFElem) -> FFElem {
        self.checked_sub(rhs).expect("elements of different function fields")
    }
}

impl Mul for &FFElem {
    type Output = FFElem;

    fn mul(self, rhs: &FFElem) -> FFElem {
        self.checked_mul(rhs).expect("elements of different function fields")
    }
}

impl Neg for &FFElem {
    type Output = FFElem;

    fn neg(self) -> FFElem {
        FFElem { cover: self.cover.clone(), coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }
}

impl fmt::Display for FFElem {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .map(|(j, a)| match j {
                0 => format!("({a})"),
                1 => format!("({a})*y"),
                _ => format!("({a})*y^{j}"),
            })
            .collect();
        if terms.is_empty() {
            out.write_str("0")
        } else {
            out.write_str(&terms.join(" + "))
        }
    }
}

/// A meromorphic differential `coeff * dx`.
#[derive(Clone, Debug, PartialEq)]
pub struct FFDiff {
    coeff: FFElem,
}

impl FFDiff {
    pub fn new(coeff: FFElem) -> FFDiff {
        FFDiff { coeff }
    }

    pub fn zero(cover: &Arc<Cover>) -> FFDiff {
        FFDiff::new(FFElem::zero(cover))
    }

    pub fn coeff(&self) -> &FFElem {
        &self.coeff
    }

    pub fn cover(&self) -> &Arc<Cover> {
        self.coeff.cover()
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// `a * self` for a function `a`.
    pub fn times(&self, a: &FFElem) -> FFDiff {
        FFDiff::new(a * &self.coeff)
    }

    pub fn scale(&self, c: &RatFn) -> FFDiff {
        FFDiff::new(self.coeff.scale(c))
    }

    pub fn valuation_bound(&self, place: PlaceClass) -> Result<Bound> {
        let v_dx = local_data(self.cover(), place).v_dx;
        valuation_bound(&self.coeff, place, v_dx)
    }
}

impl Add for &FFDiff {
    type Output = FFDiff;

    fn add(self, rhs: &FFDiff) -> FFDiff {
        FFDiff::new(&self.coeff + &rhs.coeff)
    }
}

impl Sub for &FFDiff {
    type Output = FFDiff;

    fn sub(self, rhs: &FFDiff) -> FFDiff {
        FFDiff::new(&self.coeff - &rhs.coeff)
    }
}

impl Neg for &FFDiff {
    type Output = FFDiff;

    fn neg(self) -> FFDiff {
        FFDiff::new(-&self.coeff)
    }
}

impl fmt::Display for FFDiff {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            out.write_str("0")
        } else {
            write!(out, "{} * dx", self.coeff)
        }
    }
}

/// A set of points of the cover lying over one kind of point of the line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PlaceClass {
    /// Points above the `i`-th branch point.
    Branch(usize),
    /// Points above `x = 0`; the same as the matching `Branch` when 0 is a
    /// branch point.
    OverZero,
    OverInfinity,
    /// Every other point of the cover (all unramified).
    Generic,
}

impl PlaceClass {
    /// Every class of `cover`, each point of the curve lying in exactly one.
    pub fn all(cover: &Cover) -> Vec<PlaceClass> {
        let mut out: Vec<PlaceClass> = (0..cover.branch().len()).map(PlaceClass::Branch).collect();
        if cover.zero_branch().is_none() {
            out.push(PlaceClass::OverZero);
        }
        out.push(PlaceClass::OverInfinity);
        out.push(PlaceClass::Generic);
        out
    }

    /// The class above `x = 0`.
    pub fn zero(cover: &Cover) -> PlaceClass {
        cover.zero_branch().map_or(PlaceClass::OverZero, PlaceClass::Branch)
    }

    fn resolve(self, cover: &Cover) -> PlaceClass {
        match self {
            PlaceClass::OverZero => PlaceClass::zero(cover),
            other => other,
        }
    }
}

impl fmt::Display for PlaceClass {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlaceClass::Branch(i) => write!(out, "branch({})", i + 1),
            PlaceClass::OverZero => out.write_str("over-zero"),
            PlaceClass::OverInfinity => out.write_str("over-infinity"),
            PlaceClass::Generic => out.write_str("generic"),
        }
    }
}

/// Local data shared by every point of a class.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalData {
    /// Ramification index, i.e. the valuation of a local parameter of the
    /// line.
    pub e: u32,
    /// Number of points in the class (0 for `Generic`, which is infinite).
    pub points: u32,
    /// Valuation of `y` (a lower bound for `Generic`).
    pub v_y: i64,
    pub v_dx: i64,
}

pub fn local_data(cover: &Cover, place: PlaceClass) -> LocalData {
    let ram = cover.ram_data();
    let n = cover.degree();
    let kummer = cover.is_kummer();
    match place.resolve(cover) {
        PlaceClass::Branch(i) => {
            let b = ram.branch[i];
            let l = cover.branch()[i].l as i64;
            if kummer {
                LocalData { e: b.e, points: b.g, v_y: b.lambda.expect("kummer") as i64, v_dx: b.e as i64 - 1 }
            } else {
                LocalData { e: n, points: 1, v_y: -l, v_dx: (n as i64 - 1) * (l + 1) }
            }
        }
        PlaceClass::OverInfinity => {
            let v_y = if kummer { -(cover.curve().total_degree() as i64 / n as i64) } else { 0 };
            LocalData { e: 1, points: n, v_y, v_dx: -2 }
        }
        PlaceClass::OverZero => LocalData { e: 1, points: n, v_y: 0, v_dx: 0 },
        PlaceClass::Generic => LocalData { e: 1, points: 0, v_y: 0, v_dx: 0 },
    }
}

/// Result of [`FFElem::valuation_bound`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bound {
    /// Lower bound for the valuation at each point of the class.
    pub value: i64,
    /// The valuation equals `value` at every point of the class. Only ever
    /// claimed at branch classes, where the terms have pairwise distinct
    /// valuations.
    pub exact: bool,
    /// Some point of the class has valuation exactly `value`. Away from the
    /// branch locus the powers of `y` (scaled by `x^t` at infinity for
    /// Kummer covers) form a local integral basis, so the termwise minimum
    /// is always attained there.
    pub attained: bool,
}

fn coeff_valuation(cover: &Cover, a: &RatFn, place: PlaceClass) -> i64 {
    match place {
        PlaceClass::Branch(i) => {
            let e = local_data(cover, place).e as i64;
            e * a.root_multiplicity(cover.branch()[i].rho).expect("nonzero")
        }
        PlaceClass::OverZero => a.root_multiplicity(Fq::ZERO).expect("nonzero"),
        PlaceClass::OverInfinity => a.degree_valuation().expect("nonzero"),
        PlaceClass::Generic => {
            let mut den = a.den().clone();
            let field = cover.field();
            let special = cover.branch().iter().map(|b| b.rho).chain(std::iter::once(Fq::ZERO));
            for rho in special {
                let m = den.root_multiplicity(rho);
                if m > 0 {
                    den = den.exact_div(&Poly::x_minus(field, rho).pow(m));
                }
            }
            -(den.max_root_multiplicity() as i64)
        }
    }
}

fn valuation_bound(a: &FFElem, place: PlaceClass, v_dx: i64) -> Result<Bound> {
    if a.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let cover = a.cover();
    let place = place.resolve(cover);
    let local = local_data(cover, place);
    let values: Vec<i64> = a
        .coeffs
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(j, c)| coeff_valuation(cover, c, place) + j as i64 * local.v_y)
        .collect();
    let value = *values.iter().min().expect("nonzero element");
    let branch = matches!(place, PlaceClass::Branch(_));
    let unique = values.iter().filter(|&&v| v == value).count() == 1;
    Ok(Bound { value: value + v_dx, exact: branch && unique, attained: !branch || unique })
}

/// Serre duality pairing `<omega, [h]>`: `-1/n Res_inf Tr(h omega)` for
/// Kummer covers and `Res_inf Tr(h omega)` for Artin-Schreier covers.
pub fn pairing(h: &FFElem, omega: &FFDiff) -> Result<Fq> {
    let prod = h.checked_mul(omega.coeff())?;
    let cover = h.cover();
    let field = cover.field();
    let res = prod.trace().residue_at_infinity();
    if cover.is_kummer() {
        let n = field.from_u64(cover.degree() as u64);
        Ok(field.neg(field.div(res, n)?))
    } else {
        Ok(res)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{BranchPoint, Curve};
    use crate::gf::Field;
    use proptest::prelude::*;

    fn bp(rho: u64, l: u32) -> BranchPoint {
        BranchPoint { rho: Fq(rho), l }
    }

    fn quartic() -> Arc<Cover> {
        let f5 = Field::prime(5).unwrap();
        Cover::new(Curve::kummer(&f5, 2, vec![bp(1, 1), bp(2, 1), bp(3, 1), bp(4, 1)])).unwrap()
    }

    fn as_f3() -> Arc<Cover> {
        let f3 = Field::prime(3).unwrap();
        Cover::new(Curve::artin_schreier(&f3, Poly::from_i64s(&f3, &[1, 0, 1]), vec![bp(1, 1), bp(2, 1)])).unwrap()
    }

    fn rat(c: &Arc<Cover>, num: &[i64], den: &[i64]) -> RatFn {
        let f = c.field();
        RatFn::new(Poly::from_i64s(f, num), Poly::from_i64s(f, den)).unwrap()
    }

    #[test]
    fn reduction_rules() {
        let c = quartic();
        let y = FFElem::y(&c);
        let yy = &y * &y;
        assert_eq!(yy.coeff(0), &rat(&c, &[4, 0, 0, 0, 1], &[1]));
        assert!(yy.coeff(1).is_zero());

        let a = as_f3();
        let y = FFElem::y(&a);
        let y3 = &(&y * &y) * &y;
        assert_eq!(y3.coeff(0), &rat(&a, &[1, 0, 1], &[2, 0, 1]));
        assert_eq!(y3.coeff(1), &RatFn::one(a.field()));
        assert!(y3.coeff(2).is_zero());

        assert_eq!(&y + &FFElem::zero(&a), y);
        assert!(matches!(y.checked_add(&FFElem::y(&c)), Err(Error::CurveMismatch)));
    }

    #[test]
    fn galois_action() {
        let c = quartic();
        let y = FFElem::y(&c);
        let zeta = c.zeta().unwrap();
        assert_eq!(y.galois(1), FFElem::monomial(&c, RatFn::constant(c.field(), zeta), 1));
        assert_eq!(y.galois(0), y);
        let a = as_f3();
        let y = FFElem::y(&a);
        assert_eq!(y.galois(1), &y + &FFElem::one(&a));
    }

    #[test]
    fn traces() {
        let c = quartic();
        assert_eq!(FFElem::one(&c).trace(), RatFn::constant(c.field(), Fq(2)));
        let a = as_f3();
        let y = FFElem::y(&a);
        assert_eq!((&y * &y).trace(), RatFn::constant(a.field(), Fq(2)));
        assert!(y.trace().is_zero());
        assert_eq!((&y * &y).trace_by_orbit(), (&y * &y).trace());
    }

    #[test]
    fn derivatives() {
        let c = quartic();
        let y_over_x = FFElem::monomial(&c, RatFn::x_pow(c.field(), -1), 1);
        let d = y_over_x.exterior_d();
        assert_eq!(d.coeff().coeff(1), &rat(&c, &[1, 0, 0, 0, 1], &[0, 0, 4, 0, 0, 0, 1]));
        assert!(d.coeff().coeff(0).is_zero());
        assert!(FFElem::one(&c).exterior_d().is_zero());

        let a = as_f3();
        let dy = FFElem::y(&a).exterior_d();
        let r = a.r().unwrap();
        assert_eq!(dy.coeff().coeff(0), &-&r.derivative());
        assert!(dy.coeff().coeff(1).is_zero());
    }

    #[test]
    fn defining_relation_is_differentiated_consistently() {
        // Kummer: n y^{n-1} dy - f' dx = 0
        let c = quartic();
        let y = FFElem::y(&c);
        let lhs = FFDiff::new(&y.scale(&RatFn::constant(c.field(), Fq(2))) * y.exterior_d().coeff());
        let fp = FFDiff::new(FFElem::from_poly(&c, c.f().derivative()));
        assert!((&lhs - &fp).is_zero());
        // Artin-Schreier: (p y^{p-1} - 1) dy - r' dx = -dy - r' dx = 0
        let a = as_f3();
        let dy = FFElem::y(&a).exterior_d();
        let rp = FFDiff::new(FFElem::from_ratfn(&a, a.r().unwrap().derivative()));
        assert!((&(-&dy) - &rp).is_zero());
    }

    #[test]
    fn valuation_bounds() {
        let c = quartic();
        let y = FFElem::y(&c);
        assert_eq!(y.valuation_bound(PlaceClass::Branch(0)).unwrap(), Bound { value: 1, exact: true, attained: true });
        let inf = y.valuation_bound(PlaceClass::OverInfinity).unwrap();
        assert_eq!((inf.value, inf.exact), (-2, false));

        let a = as_f3();
        let w = FFDiff::new(FFElem::from_ratfn(&a, rat(&a, &[1], &[2, 0, 1])));
        assert_eq!(w.valuation_bound(PlaceClass::Branch(0)).unwrap().value, 1);
        assert!(w.valuation_bound(PlaceClass::Branch(0)).unwrap().exact);

        let odd = FFElem::from_ratfn(&c, rat(&c, &[1], &[0, 1, 0, 0, 1]));
        // x^3 + 1 = (x + 1)(x^2 - x + 1) over F_5 and the quadratic is irreducible
        assert_eq!(odd.valuation_bound(PlaceClass::Generic).unwrap().value, -1);
        // (x^2 + 2)^3 with x^2 + 2 irreducible over F_5
        let cube = rat(&c, &[1], &[3, 0, 2, 0, 1, 0, 1]);
        let generic = FFElem::from_ratfn(&c, cube);
        assert_eq!(generic.valuation_bound(PlaceClass::Generic).unwrap().value, -3);
        assert!(matches!(FFElem::zero(&c).valuation_bound(PlaceClass::Generic), Err(Error::ZeroValuation)));
    }

    #[test]
    fn pairings() {
        let c = quartic();
        let f = c.field();
        let h = FFElem::monomial(&c, RatFn::x_pow(f, -1), 1);
        let dx_over_y = FFDiff::new(FFElem::monomial(&c, RatFn::new(Poly::one(f), c.f().clone()).unwrap(), 1));
        assert_eq!(pairing(&h, &dx_over_y).unwrap(), Fq(1));
        assert_eq!(pairing(&FFElem::one(&c), &dx_over_y).unwrap(), Fq(0));

        let a = as_f3();
        let h = FFElem::monomial(&a, rat(&a, &[2, 0, 1], &[0, 1]), 1);
        let w = FFDiff::new(FFElem::monomial(&a, rat(&a, &[1], &[2, 0, 1]), 1));
        assert_eq!(pairing(&h, &w).unwrap(), Fq(1));
        assert!(pairing(&FFElem::one(&c), &FFDiff::zero(&a)).is_err());
    }

    #[test]
    fn rendering() {
        let c = quartic();
        let w = FFDiff::new(FFElem::monomial(&c, RatFn::new(Poly::one(c.field()), c.f().clone()).unwrap(), 1));
        assert_eq!(w.to_string(), "(1/(4 + x^4))*y * dx");
        assert_eq!(FFElem::zero(&c).to_string(), "0");
    }

    fn covers() -> Vec<Arc<Cover>> {
        let f7 = Field::prime(7).unwrap();
        let f5 = Field::prime(5).unwrap();
        let f9 = Field::new(3, Some(vec![1, 0, 1])).unwrap();
        vec![
            quartic(),
            as_f3(),
            Cover::new(Curve::kummer(&f7, 3, vec![bp(0, 1), bp(2, 2), bp(3, 1), bp(5, 2)])).unwrap(),
            Cover::new(Curve::artin_schreier(&f5, Poly::from_i64s(&f5, &[1, 0, 2, 1]), vec![bp(2, 1), bp(3, 2)]))
                .unwrap(),
            Cover::new(Curve::kummer(&f9, 4, vec![bp(1, 1), bp(2, 1), bp(3, 3), bp(4, 3)])).unwrap(),
            Cover::new(Curve::artin_schreier(&f7, Poly::from_i64s(&f7, &[3, 1, 0, 1]), vec![bp(1, 3)])).unwrap(),
        ]
    }

    fn small_ratfn(c: &Arc<Cover>, num: &[u64], den: &[u64]) -> RatFn {
        let f = c.field();
        let to = |v: &[u64]| Poly::from_coeffs(f, v.iter().map(|&e| Fq(e % f.order())).collect());
        let mut d = to(den);
        if d.is_zero() {
            d = Poly::one(f);
        }
        // keep denominators supported on x and the branch points
        let shift = Poly::from_roots(f, c.branch().iter().map(|b| (b.rho, (d.degree().unwrap_or(0) % 2) as u32)));
        let den = &Poly::x(f).pow(d.degree().unwrap_or(0) as u32) * &shift;
        RatFn::new(to(num), den).unwrap()
    }

    /// Numerator and denominator coefficient lists for each power of `y`.
    type Terms = Vec<(Vec<u64>, Vec<u64>)>;

    fn element() -> impl Strategy<Value = (usize, Terms)> {
        (
            0..6usize,
            prop::collection::vec((prop::collection::vec(0..50u64, 0..4), prop::collection::vec(0..50u64, 0..3)), 7),
        )
    }

    fn build(c: &Arc<Cover>, spec: &Terms) -> FFElem {
        let coeffs = spec.iter().take(c.degree() as usize).map(|(n, d)| small_ratfn(c, n, d)).collect();
        FFElem::new(c, coeffs)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn trace_rules_agree((k, a) in element()) {
            let c = &covers()[k];
            let a = build(c, &a);
            prop_assert_eq!(a.trace(), a.trace_by_orbit());
        }

        #[test]
        fn d_is_a_derivation((k, a) in element(), (_, b) in element()) {
            let c = &covers()[k];
            let (a, b) = (build(c, &a), build(c, &b));
            let lhs = (&a * &b).exterior_d();
            let rhs = &a.exterior_d().times(&b) + &b.exterior_d().times(&a);
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn galois_is_an_automorphism((k, a) in element(), (_, b) in element(), j in 0..7u64) {
            let c = &covers()[k];
            let (a, b) = (build(c, &a), build(c, &b));
            let j = j % c.degree() as u64;
            prop_assert_eq!((&a * &b).galois(j), &a.galois(j) * &b.galois(j));
            let k = FFElem::from_ratfn(c, a.coeff(0).clone());
            prop_assert_eq!(k.galois(j), k);
        }

        #[test]
        fn p_th_powers_are_closed((k, a) in element()) {
            let c = &covers()[k];
            if !c.is_kummer() {
                let a = build(c, &a);
                prop_assert!(a.pow(c.characteristic()).exterior_d().is_zero());
            }
        }
    }
}
