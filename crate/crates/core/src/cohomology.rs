//! Bases of `H^0(X, Omega)`, `H^1(X, O)` and `H^1_dR(X/k)`, the auxiliary
//! polynomials behind the de Rham classes, and the maps of the Hodge-de Rham
//! short exact sequence.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::curve::{Cover, MuRange};
use crate::error::{Error, Result};
use crate::funcfield::{pairing, FFDiff, FFElem, PlaceClass};
use crate::gf::Fq;
use crate::polyrat::{Poly, RatFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BasisIndex {
    pub mu: u32,
    pub nu: u32,
}

impl fmt::Display for BasisIndex {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "[{},{}]", self.mu, self.nu)
    }
}

/// Sign of the `omega_inf` slot of the `a` classes.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignConvention {
    /// The slot as printed, which satisfies `d f = omega_0 + omega_inf`.
    Paper,
    /// The printed slot negated, so that `d f = omega_0 - omega_inf`.
    #[default]
    NegatedInfty,
}

impl SignConvention {
    pub fn as_str(self) -> &'static str {
        match self {
            SignConvention::Paper => "paper",
            SignConvention::NegatedInfty => "negated-infty",
        }
    }
}

/// Where the Kummer `psi_{mu,nu}` is cut between the two differential slots.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum KummerSplit {
    /// Monomials of degree `<= nu + 1` go to `omega_0`, as printed. The
    /// `x^{nu+1}` term then has a pole above infinity whenever
    /// `t^(n-mu) = 1`.
    Paper,
    /// Monomials of degree `<= nu` go to `omega_0`; always regular.
    #[default]
    Lowered,
}

impl KummerSplit {
    pub fn as_str(self) -> &'static str {
        match self {
            KummerSplit::Paper => "paper",
            KummerSplit::Lowered => "lowered",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
pub struct BasisOptions {
    pub mu_range: MuRange,
    pub sign: SignConvention,
    pub kummer_split: KummerSplit,
}

/// Cech representative `(omega_0, omega_inf, f_0inf)` of a de Rham class.
#[derive(Clone, Debug, PartialEq)]
pub struct DeRhamTriple {
    pub omega0: FFDiff,
    pub omega_inf: FFDiff,
    pub f: FFElem,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    /// Lift of an `H^1(X, O)` basis class.
    A,
    /// Image of a holomorphic differential.
    Delta,
}

#[derive(Clone, Debug, PartialEq)]
pub struct DeRhamClass {
    pub kind: ClassKind,
    pub index: BasisIndex,
    pub triple: DeRhamTriple,
}

impl DeRhamClass {
    pub fn label(&self) -> String {
        match self.kind {
            ClassKind::A => format!("a{}", self.index),
            ClassKind::Delta => format!("delta{}", self.index),
        }
    }
}

fn rat(num: Poly, den: Poly) -> RatFn {
    RatFn::new(num, den).expect("nonzero denominator")
}

fn x_pow(cover: &Cover, k: usize) -> Poly {
    Poly::x(cover.field()).pow(k as u32)
}

fn entry_t(cover: &Cover, mu: u32) -> u32 {
    cover.entry(mu).map_or(0, |e| e.t)
}

/// `mu` whose `t` bounds `nu` on the `H^1` side.
fn h1_t(cover: &Cover, mu: u32) -> u32 {
    if cover.is_kummer() {
        entry_t(cover, mu)
    } else {
        entry_t(cover, cover.degree() - mu)
    }
}

fn indices(mus: impl Iterator<Item = u32>, t_of: impl Fn(u32) -> u32) -> Vec<BasisIndex> {
    mus.flat_map(|mu| (1..t_of(mu).max(1)).map(move |nu| BasisIndex { mu, nu })).collect()
}

/// Admissible indices of the holomorphic differentials, `mu` ascending.
pub fn omega_indices(cover: &Cover, range: MuRange) -> Vec<BasisIndex> {
    indices(cover.omega_mu_range(range), |mu| entry_t(cover, mu))
}

/// Admissible indices of the `H^1(X, O)` classes, `mu` ascending.
pub fn h1_indices(cover: &Cover, range: MuRange) -> Vec<BasisIndex> {
    indices(cover.h1_mu_range(range), |mu| h1_t(cover, mu))
}

fn check_h1_index(cover: &Cover, mu: u32, nu: u32) -> Result<()> {
    let in_range =
        if cover.is_kummer() { (1..cover.degree()).contains(&mu) } else { (1..=cover.degree()).contains(&mu) };
    if in_range && nu >= 1 && nu < h1_t(cover, mu) {
        Ok(())
    } else {
        Err(Error::Inadmissible { mu, nu })
    }
}

fn g(cover: &Cover, mu: u32) -> &Poly {
    &cover.entry(mu).expect("mu within table").g
}

/// Holomorphic differential `omega_{mu,nu}`.
pub fn omega(cover: &Arc<Cover>, idx: BasisIndex) -> FFDiff {
    let nu1 = idx.nu as usize - 1;
    let gmu = g(cover, idx.mu);
    if cover.is_kummer() {
        // x^{nu-1} g_mu / y^mu dx = x^{nu-1} g_mu y^{n-mu} / f dx
        let a = rat(&x_pow(cover, nu1) * gmu, cover.f().clone());
        FFDiff::new(FFElem::monomial(cover, a, (cover.degree() - idx.mu) as usize))
    } else {
        // x^{nu-1} y^mu / g_mu dx
        let a = rat(x_pow(cover, nu1), gmu.clone());
        FFDiff::new(FFElem::monomial(cover, a, idx.mu as usize))
    }
}

/// Representative of the `H^1(X, O)` class `h_{mu,nu}`.
pub fn h1_rep(cover: &Arc<Cover>, idx: BasisIndex) -> FFElem {
    let xnu = x_pow(cover, idx.nu as usize);
    if cover.is_kummer() {
        // y^mu / (x^nu g_mu)
        let a = rat(Poly::one(cover.field()), &xnu * g(cover, idx.mu));
        FFElem::monomial(cover, a, idx.mu as usize)
    } else {
        // g_{p-mu} y^{mu-1} / x^nu
        let a = rat(g(cover, cover.degree() - idx.mu).clone(), xnu);
        FFElem::monomial(cover, a, idx.mu as usize - 1)
    }
}

pub fn omega_basis(cover: &Arc<Cover>, range: MuRange) -> Vec<(BasisIndex, FFDiff)> {
    omega_indices(cover, range).into_iter().map(|i| (i, omega(cover, i))).collect()
}

pub fn h1_basis(cover: &Arc<Cover>, range: MuRange) -> Vec<(BasisIndex, FFElem)> {
    h1_indices(cover, range).into_iter().map(|i| (i, h1_rep(cover, i))).collect()
}

/// The `H^1` index dual to the differential `omega_{mu,nu}`.
pub fn dual_h1_index(cover: &Cover, idx: BasisIndex) -> BasisIndex {
    if cover.is_kummer() {
        idx
    } else {
        BasisIndex { mu: cover.degree() - idx.mu, nu: idx.nu }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KummerAux {
    /// Branch indices with `upsilon_i^(mu) != 0`.
    pub support: Vec<usize>,
    pub psi: Poly,
    /// `prod (x - rho_i)^{upsilon_i g_i}`, the `n`-th power of `y^mu / g_mu`.
    pub phi: Poly,
    /// `f / prod_{i in I} (x - rho_i)`, which must equal `g_mu g_{n-mu}`.
    pub gg_product: Poly,
}

pub fn kummer_aux(cover: &Cover, mu: u32, nu: u32) -> Result<KummerAux> {
    if !cover.is_kummer() {
        return Err(Error::Inadmissible { mu, nu });
    }
    check_h1_index(cover, mu, nu)?;
    let field = cover.field();
    let e = cover.entry(mu).expect("checked");
    let ram = &cover.ram_data().branch;
    let rho = |i: usize| cover.branch()[i].rho;
    let prod_except = |skip: Option<usize>| {
        Poly::from_roots(field, e.support.iter().filter(|&&i| Some(i) != skip).map(|&i| (rho(i), 1)))
    };
    let x = Poly::x(field);
    let mut psi = prod_except(None).scale(field.neg(field.from_u64(nu as u64 * cover.degree() as u64)));
    for &i in &e.support {
        let c = field.from_u64(ram[i].g as u64 * e.upsilon[i] as u64);
        psi = &psi + &(&x * &prod_except(Some(i))).scale(c);
    }
    let phi = Poly::from_roots(field, (0..ram.len()).map(|i| (rho(i), e.upsilon[i] * ram[i].g)));
    let (gg_product, rem) = cover.f().divrem(&prod_except(None))?;
    debug_assert!(rem.is_zero());
    Ok(KummerAux { support: e.support.clone(), psi, phi, gg_product })
}

#[derive(Clone, Debug, PartialEq)]
pub struct AsAux {
    pub phi: Poly,
    pub psi: Poly,
    /// `(mu - 1) g_{p-mu} y^{mu-2} / prod (x - rho_i)^{l_i + 1} dx`
    pub omega_mu: FFDiff,
    /// `y^{mu-1} / g_{mu-1} dx`
    pub omega_prev: FFDiff,
}

/// `psi(x) = f sum_i l_i prod_{j != i} (x - rho_j) - f' prod (x - rho_i)`.
pub fn as_psi(cover: &Cover) -> Poly {
    let field = cover.field();
    let branch = cover.branch();
    let mut sum = Poly::zero(field);
    for (i, b) in branch.iter().enumerate() {
        let rest = Poly::from_roots(field, branch.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, c)| (c.rho, 1)));
        sum = &sum + &rest.scale(field.from_u64(b.l as u64));
    }
    &(cover.f() * &sum) - &(&cover.f().derivative() * cover.radical())
}

pub fn as_aux(cover: &Arc<Cover>, mu: u32, nu: u32) -> Result<AsAux> {
    if cover.is_kummer() {
        return Err(Error::Inadmissible { mu, nu });
    }
    check_h1_index(cover, mu, nu)?;
    let field = cover.field();
    let p = cover.degree();
    let g_top = g(cover, p - mu);
    let g_prev = g(cover, mu - 1);
    let x = Poly::x(field);
    let phi = &(&(&x * &g_top.derivative()) * g_prev) - &(g_top * g_prev).scale(field.from_u64(nu as u64));
    let psi = as_psi(cover);
    let omega_mu = if mu < 2 {
        FFDiff::zero(cover)
    } else {
        let den = cover.branch_poly() * cover.radical();
        let a = rat(g_top.scale(field.from_u64(mu as u64 - 1)), den);
        FFDiff::new(FFElem::monomial(cover, a, mu as usize - 2))
    };
    let omega_prev = FFDiff::new(FFElem::monomial(cover, rat(Poly::one(field), g_prev.clone()), mu as usize - 1));
    Ok(AsAux { phi, psi, omega_mu, omega_prev })
}

fn over_x(cover: &Cover, a: Poly, k: usize) -> RatFn {
    rat(a, x_pow(cover, k))
}

/// The `a_{mu,nu}` triple; its `f` slot is `h_{mu,nu}`.
pub fn a_triple(cover: &Arc<Cover>, idx: BasisIndex, opts: BasisOptions) -> Result<DeRhamTriple> {
    let BasisIndex { mu, nu } = idx;
    let f = h1_rep(cover, idx);
    let nu = nu as usize;
    let (omega0, omega_inf) = if cover.is_kummer() {
        let aux = kummer_aux(cover, mu, idx.nu)?;
        let field = cover.field();
        let cut = match opts.kummer_split {
            KummerSplit::Paper => nu + 1,
            KummerSplit::Lowered => nu,
        };
        let (low, high) = aux.psi.split_at_degree(cut, true);
        let n_inv = field.inv(field.from_u64(cover.degree() as u64)).expect("p does not divide n");
        // g_{n-mu} / y^{n-mu} dx = g_{n-mu} y^mu / f dx
        let w = omega(cover, BasisIndex { mu: cover.degree() - mu, nu: 1 });
        let part = |h: Poly| w.scale(&over_x(cover, h.scale(n_inv), nu + 1));
        (part(low), part(high))
    } else {
        let aux = as_aux(cover, mu, idx.nu)?;
        let (phi_low, phi_high) = aux.phi.split_at_degree(nu + 1, false);
        let (psi_low, psi_high) = aux.psi.split_at_degree(nu, false);
        let part = |ph: Poly, ps: Poly| {
            &aux.omega_prev.scale(&over_x(cover, ph, nu + 1)) + &aux.omega_mu.scale(&over_x(cover, ps, nu))
        };
        (part(phi_low, psi_low), part(phi_high, psi_high))
    };
    let omega_inf = match opts.sign {
        SignConvention::Paper => omega_inf,
        SignConvention::NegatedInfty => -&omega_inf,
    };
    Ok(DeRhamTriple { omega0, omega_inf, f })
}

/// The `a` classes (in `H^1` order) followed by the `delta` classes (in
/// differential order).
pub fn derham_basis(cover: &Arc<Cover>, opts: BasisOptions) -> Vec<DeRhamClass> {
    let mut out: Vec<DeRhamClass> = h1_indices(cover, opts.mu_range)
        .into_iter()
        .map(|index| DeRhamClass {
            kind: ClassKind::A,
            index,
            triple: a_triple(cover, index, opts).expect("admissible index"),
        })
        .collect();
    out.extend(omega_basis(cover, opts.mu_range).into_iter().map(|(index, w)| DeRhamClass {
        kind: ClassKind::Delta,
        index,
        triple: map_i(&w),
    }));
    out
}

/// `omega -> (omega, omega, 0)`
pub fn map_i(omega: &FFDiff) -> DeRhamTriple {
    DeRhamTriple { omega0: omega.clone(), omega_inf: omega.clone(), f: FFElem::zero(omega.cover()) }
}

/// `(omega_0, omega_inf, f) -> f`
pub fn map_p(t: &DeRhamTriple) -> FFElem {
    t.f.clone()
}

/// Coordinates of `[f]` in the `H^1` basis, read off as pairings with the
/// differential basis (entry `k` pairs with the `k`-th differential).
pub fn h1_coordinates(f: &FFElem, range: MuRange) -> Result<Vec<Fq>> {
    let cover = f.cover();
    if !f.is_zero() {
        let zero = PlaceClass::zero(cover);
        for place in PlaceClass::all(cover) {
            if place == zero || place == PlaceClass::OverInfinity {
                continue;
            }
            let b = f.valuation_bound(place)?;
            if b.value < 0 {
                return Err(Error::PoleOutsideLocus(format!("pole of order {} at {place}", -b.value)));
            }
        }
    }
    omega_basis(cover, range).iter().map(|(_, w)| pairing(f, w)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curve::{BranchPoint, Curve};
    use crate::gf::Field;

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

    fn idx(mu: u32, nu: u32) -> BasisIndex {
        BasisIndex { mu, nu }
    }

    fn poly(c: &Cover, v: &[i64]) -> Poly {
        Poly::from_i64s(c.field(), v)
    }

    #[test]
    fn quartic_bases() {
        let c = quartic();
        let w = omega_basis(&c, MuRange::Extended);
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].0, idx(1, 1));
        assert_eq!(w[0].1.coeff().coeff(1), &rat(Poly::one(c.field()), poly(&c, &[4, 0, 0, 0, 1])));
        let h = h1_basis(&c, MuRange::Extended);
        assert_eq!(h.len(), 1);
        assert_eq!(h[0].1, FFElem::monomial(&c, RatFn::x_pow(c.field(), -1), 1));
    }

    #[test]
    fn as_bases() {
        let c = as_f3();
        let den = poly(&c, &[2, 0, 1]);
        let w = omega_basis(&c, MuRange::Extended);
        assert_eq!(w.iter().map(|(i, _)| *i).collect::<Vec<_>>(), vec![idx(0, 1), idx(1, 1)]);
        assert_eq!(w[0].1, FFDiff::new(FFElem::from_ratfn(&c, rat(Poly::one(c.field()), den.clone()))));
        assert_eq!(w[1].1, FFDiff::new(FFElem::monomial(&c, rat(Poly::one(c.field()), den.clone()), 1)));

        let h = h1_basis(&c, MuRange::Extended);
        assert_eq!(h.iter().map(|(i, _)| *i).collect::<Vec<_>>(), vec![idx(2, 1), idx(3, 1)]);
        assert_eq!(h[0].1, FFElem::monomial(&c, rat(den.clone(), poly(&c, &[0, 1])), 1));
        assert_eq!(h[1].1, FFElem::monomial(&c, rat(den, poly(&c, &[0, 1])), 2));
        assert_eq!(h1_basis(&c, MuRange::Paper).len(), 1);

        let f3 = Field::prime(3).unwrap();
        let rational = Cover::new(Curve::artin_schreier(&f3, Poly::from_i64s(&f3, &[2, 1]), vec![bp(2, 1)])).unwrap();
        assert!(omega_basis(&rational, MuRange::Extended).is_empty());
    }

    #[test]
    fn kummer_auxiliaries() {
        let c = quartic();
        let aux = kummer_aux(&c, 1, 1).unwrap();
        assert_eq!(aux.psi, poly(&c, &[2, 0, 0, 0, 2]));
        assert_eq!(aux.psi.split_at_degree(2, true), (poly(&c, &[2]), poly(&c, &[0, 0, 0, 0, 2])));
        assert_eq!(aux.phi, *c.f());
        assert!(aux.gg_product.is_one());
        assert_eq!(aux.support, vec![0, 1, 2, 3]);
        assert!(matches!(kummer_aux(&c, 1, 2), Err(Error::Inadmissible { mu: 1, nu: 2 })));
        assert!(kummer_aux(&as_f3(), 1, 1).is_err());
    }

    #[test]
    fn as_auxiliaries() {
        let c = as_f3();
        let aux = as_aux(&c, 2, 1).unwrap();
        // g_1 = x^2 + 2, phi = x (2x) (x^2 + 2) - (x^2 + 2)^2
        let g1 = poly(&c, &[2, 0, 1]);
        let expected = &(&poly(&c, &[0, 0, 2]) * &g1) - &(&g1 * &g1);
        assert_eq!(aux.phi, expected);
        let f = poly(&c, &[1, 0, 1]);
        let psi = &(&f * &(&poly(&c, &[-2, 1]) + &poly(&c, &[-1, 1]))) - &(&poly(&c, &[0, 2]) * &g1);
        assert_eq!(aux.psi, psi);
        // dy = psi / prod (x - rho_i)^{l_i + 1} dx
        let dy = FFElem::y(&c).exterior_d();
        let den = c.branch_poly() * c.radical();
        assert_eq!(dy.coeff().coeff(0), &rat(psi, den));
        assert!(as_aux(&c, 1, 1).is_err());
        assert!(as_aux(&c, 3, 1).unwrap().omega_mu.coeff().term_count() == 1);
    }

    #[test]
    fn quartic_derham() {
        let c = quartic();
        let basis = derham_basis(&c, BasisOptions::default());
        let labels: Vec<String> = basis.iter().map(DeRhamClass::label).collect();
        assert_eq!(labels, vec!["a[1,1]", "delta[1,1]"]);
        let a = &basis[0].triple;
        let f = c.field();
        let f_poly = c.f().clone();
        // omega_0 = dx / (x^2 y) = y / (x^2 f) dx
        assert_eq!(a.omega0.coeff().coeff(1), &rat(Poly::one(f), &poly(&c, &[0, 0, 1]) * &f_poly));
        // omega_inf = -x^2 dx / y
        assert_eq!(a.omega_inf.coeff().coeff(1), &rat(poly(&c, &[0, 0, -1]), f_poly));
        let df = a.f.exterior_d();
        assert_eq!(df, &a.omega0 - &a.omega_inf);
        assert_eq!(basis[1].triple, map_i(&omega(&c, idx(1, 1))));
        assert!(map_p(&map_i(&omega(&c, idx(1, 1)))).is_zero());
        assert_eq!(map_p(a), h1_rep(&c, idx(1, 1)));
    }

    #[test]
    fn coordinates() {
        let c = quartic();
        let h = h1_rep(&c, idx(1, 1));
        assert_eq!(h1_coordinates(&h, MuRange::Extended).unwrap(), vec![Fq(1)]);
        assert_eq!(h1_coordinates(&FFElem::one(&c), MuRange::Extended).unwrap(), vec![Fq(0)]);
        let twice = &h + &h;
        assert_eq!(h1_coordinates(&twice, MuRange::Extended).unwrap(), vec![Fq(2)]);
        let bad = FFElem::from_ratfn(&c, rat(Poly::one(c.field()), poly(&c, &[4, 1])));
        assert!(matches!(h1_coordinates(&bad, MuRange::Extended), Err(Error::PoleOutsideLocus(_))));
    }
}
