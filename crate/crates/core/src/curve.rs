//! Kummer covers `y^n = prod (x - rho_i)^{l_i}` and Artin-Schreier covers
//! `y^p - y = f(x) / prod (x - rho_i)^{l_i}` of the projective line, with
//! their ramification data and the per-`mu` Euclidean tables.

use std::ops::RangeInclusive;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{gcd_u64, Field, Fq};
use crate::polyrat::{Poly, RatFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub rho: Fq,
    pub l: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    Kummer { n: u32 },
    ArtinSchreier { f: Poly },
}

/// Unvalidated curve definition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Curve {
    field: Field,
    family: Family,
    branch: Vec<BranchPoint>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ViolationCode {
    NTooSmall,
    CharacteristicTooSmall,
    NoBranchPoints,
    ZeroExponent,
    DuplicateBranchPoint,
    RhoOutOfRange,
    DegreeNotDivisible,
    CharacteristicDividesN,
    NoRootOfUnity,
    Reducible,
    DegreeMismatch,
    ExponentDivisibleByP,
    FVanishesAtBranchPoint,
    FVanishesAtZero,
    FieldMismatch,
}

impl ViolationCode {
    pub fn as_str(self) -> &'static str {
        match self {
            ViolationCode::NTooSmall => "n-too-small",
            ViolationCode::CharacteristicTooSmall => "characteristic-too-small",
            ViolationCode::NoBranchPoints => "no-branch-points",
            ViolationCode::ZeroExponent => "zero-exponent",
            ViolationCode::DuplicateBranchPoint => "duplicate-branch-point",
            ViolationCode::RhoOutOfRange => "rho-out-of-range",
            ViolationCode::DegreeNotDivisible => "degree-not-divisible",
            ViolationCode::CharacteristicDividesN => "characteristic-divides-n",
            ViolationCode::NoRootOfUnity => "no-root-of-unity",
            ViolationCode::Reducible => "reducible",
            ViolationCode::DegreeMismatch => "degree-mismatch",
            ViolationCode::ExponentDivisibleByP => "exponent-divisible-by-p",
            ViolationCode::FVanishesAtBranchPoint => "f-vanishes-at-branch-point",
            ViolationCode::FVanishesAtZero => "f-vanishes-at-zero",
            ViolationCode::FieldMismatch => "field-mismatch",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub code: ViolationCode,
    pub message: String,
}

fn violation(code: ViolationCode, message: impl Into<String>) -> Violation {
    Violation { code, message: message.into() }
}

/// Which `mu` indices feed the differential family.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MuRange {
    /// Artin-Schreier `mu` in `1..=p-1` exactly as printed.
    Paper,
    /// Artin-Schreier `mu` in `0..=p-1`, plus the `mu = p` partner on the
    /// `H^1` side. Identical to `Paper` for Kummer covers.
    #[default]
    Extended,
}

impl MuRange {
    pub fn as_str(self) -> &'static str {
        match self {
            MuRange::Paper => "paper",
            MuRange::Extended => "extended",
        }
    }
}

impl Curve {
    pub fn kummer(field: &Field, n: u32, branch: Vec<BranchPoint>) -> Curve {
        Curve { field: field.clone(), family: Family::Kummer { n }, branch }
    }

    pub fn artin_schreier(field: &Field, f: Poly, branch: Vec<BranchPoint>) -> Curve {
        Curve { field: field.clone(), family: Family::ArtinSchreier { f }, branch }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn branch(&self) -> &[BranchPoint] {
        &self.branch
    }

    pub fn is_kummer(&self) -> bool {
        matches!(self.family, Family::Kummer { .. })
    }

    /// Total branch degree `l = sum l_i`.
    pub fn total_degree(&self) -> u64 {
        self.branch.iter().map(|b| b.l as u64).sum()
    }

    /// All violated standing hypotheses; empty means valid.
    pub fn validate(&self) -> Vec<Violation> {
        use ViolationCode as V;
        let mut out = Vec::new();
        let p = self.field.characteristic();
        let q = self.field.order();
        if self.branch.is_empty() {
            out.push(violation(V::NoBranchPoints, "at least one branch point is required"));
        }
        for (i, b) in self.branch.iter().enumerate() {
            if b.l == 0 {
                out.push(violation(V::ZeroExponent, format!("branch point {i} has exponent 0")));
            }
            if b.rho.0 >= q {
                out.push(violation(V::RhoOutOfRange, format!("branch point {i} is not a field element")));
            }
            if self.branch[..i].iter().any(|c| c.rho == b.rho) {
                out.push(violation(
                    V::DuplicateBranchPoint,
                    format!("branch point {i} repeats {}", self.field.render(b.rho)),
                ));
            }
        }
        let l = self.total_degree();
        match &self.family {
            Family::Kummer { n } => {
                let n = *n as u64;
                if n < 2 {
                    out.push(violation(V::NTooSmall, "n must be at least 2"));
                    return out;
                }
                if !l.is_multiple_of(n) {
                    out.push(violation(V::DegreeNotDivisible, "l not ≡ 0 mod n"));
                }
                if n.is_multiple_of(p) {
                    out.push(violation(V::CharacteristicDividesN, "gcd(n, p) ≠ 1"));
                }
                if !(q - 1).is_multiple_of(n) {
                    out.push(violation(V::NoRootOfUnity, "n ∤ q−1"));
                }
                let common = self.branch.iter().fold(n, |g, b| gcd_u64(g, b.l as u64));
                if !self.branch.is_empty() && common > 1 {
                    out.push(violation(
                        V::Reducible,
                        format!("gcd(n, l_1, ..., l_r) = {common}: y^n - f(x) is reducible"),
                    ));
                }
            }
            Family::ArtinSchreier { f } => {
                if p < 3 {
                    out.push(violation(V::CharacteristicTooSmall, "p must be at least 3"));
                }
                if f.field() != &self.field {
                    out.push(violation(V::FieldMismatch, "f is defined over a different field"));
                    return out;
                }
                if f.degree().map(|d| d as u64) != Some(l) {
                    out.push(violation(V::DegreeMismatch, "deg f ≠ l"));
                }
                for (i, b) in self.branch.iter().enumerate() {
                    if (b.l as u64).is_multiple_of(p) {
                        out.push(violation(V::ExponentDivisibleByP, format!("gcd(l_{i}, p) ≠ 1 for branch point {i}")));
                    }
                    if !f.is_zero() && f.eval(b.rho).is_zero() {
                        out.push(violation(V::FVanishesAtBranchPoint, format!("f vanishes at branch point {i}")));
                    }
                }
                if f.eval(Fq::ZERO).is_zero() {
                    out.push(violation(V::FVanishesAtZero, "x divides f"));
                }
            }
        }
        out
    }
}

/// Ramification of one branch point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct BranchRam {
    /// Ramification index.
    pub e: u32,
    /// Number of points above the branch point.
    pub g: u32,
    /// Valuation of `y` at those points (Kummer only).
    pub lambda: Option<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RamData {
    pub branch: Vec<BranchRam>,
    pub l0: Option<u32>,
    pub e0: u32,
    pub g0: u32,
    pub points_over_infinity: u32,
}

/// Euclidean data for one `mu`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuEntry {
    pub mu: u32,
    pub m: Vec<u32>,
    pub upsilon: Vec<u32>,
    /// `g_mu = prod (x - rho_i)^{m_i}`
    pub g: Poly,
    pub t: u32,
    /// Indices with nonzero `upsilon` (the set `I^(mu)`).
    pub support: Vec<usize>,
}

/// A validated cover together with everything derived from its definition.
#[derive(Debug)]
pub struct Cover {
    curve: Curve,
    degree: u32,
    f: Poly,
    branch_poly: Poly,
    radical: Poly,
    r: Option<RatFn>,
    dy: RatFn,
    ram: RamData,
    table: Vec<MuEntry>,
    zeta: Option<Fq>,
    zero_branch: Option<usize>,
}

impl PartialEq for Cover {
    fn eq(&self, other: &Self) -> bool {
        self.curve == other.curve
    }
}

impl Cover {
    pub fn new(curve: Curve) -> Result<Arc<Cover>> {
        let violations = curve.validate();
        if !violations.is_empty() {
            return Err(Error::InvalidCurve(violations));
        }
        let field = curve.field.clone();
        let roots = || curve.branch.iter().map(|b| (b.rho, b.l));
        let branch_poly = Poly::from_roots(&field, roots());
        let radical = Poly::from_roots(&field, curve.branch.iter().map(|b| (b.rho, 1)));
        let zero_branch = curve.branch.iter().position(|b| b.rho.is_zero());
        let p = field.characteristic() as u32;
        let (degree, f, r, zeta, ram, table) = match &curve.family {
            Family::Kummer { n } => {
                let n = *n;
                let branch: Vec<BranchRam> = curve
                    .branch
                    .iter()
                    .map(|b| {
                        let g = gcd_u64(n as u64, b.l as u64) as u32;
                        BranchRam { e: n / g, g, lambda: Some(b.l / g) }
                    })
                    .collect();
                let (l0, e0, g0) = match zero_branch {
                    Some(i) => (curve.branch[i].l, branch[i].e, branch[i].g),
                    None => (n, 1, n),
                };
                let ram = RamData { branch, l0: Some(l0), e0, g0, points_over_infinity: n };
                let table = (1..n).map(|mu| kummer_entry(&curve, &ram, n, mu)).collect();
                let zeta = field.nth_root_of_unity(n as u64)?;
                (n, branch_poly.clone(), None, Some(zeta), ram, table)
            }
            Family::ArtinSchreier { f } => {
                let branch = vec![BranchRam { e: p, g: 1, lambda: None }; curve.branch.len()];
                let (l0, e0, g0) = match zero_branch {
                    Some(i) => (Some(curve.branch[i].l), p, 1),
                    None => (None, 1, p),
                };
                let ram = RamData { branch, l0, e0, g0, points_over_infinity: p };
                let table = (0..p).map(|mu| as_entry(&curve, p, mu)).collect();
                let r = RatFn::new(f.clone(), branch_poly.clone())?;
                (p, f.clone(), Some(r), None, ram, table)
            }
        };
        let dy = match &r {
            // dy = f'/(n f) * y dx
            None => {
                let n_inv = field.inv(field.from_u64(degree as u64)).expect("p does not divide n");
                RatFn::new(f.derivative().scale(n_inv), f.clone())?
            }
            // dy = -r' dx
            Some(r) => -&r.derivative(),
        };
        Ok(Arc::new(Cover { curve, degree, f, branch_poly, radical, r, dy, ram, table, zeta, zero_branch }))
    }

    pub fn curve(&self) -> &Curve {
        &self.curve
    }

    pub fn field(&self) -> &Field {
        &self.curve.field
    }

    pub fn is_kummer(&self) -> bool {
        self.curve.is_kummer()
    }

    /// Degree of the cover (`n`, resp. `p`), also the length of element
    /// coefficient vectors.
    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn characteristic(&self) -> u32 {
        self.field().characteristic() as u32
    }

    /// Kummer: `f = prod (x - rho_i)^{l_i}`; Artin-Schreier: the numerator `f`.
    pub fn f(&self) -> &Poly {
        &self.f
    }

    /// `prod (x - rho_i)^{l_i}`
    pub fn branch_poly(&self) -> &Poly {
        &self.branch_poly
    }

    /// `prod (x - rho_i)`
    pub fn radical(&self) -> &Poly {
        &self.radical
    }

    /// Artin-Schreier right-hand side `r(x)`.
    pub fn r(&self) -> Option<&RatFn> {
        self.r.as_ref()
    }

    /// Kummer: `c` with `dy = c * y dx`. Artin-Schreier: `c` with `dy = c dx`.
    pub fn dy_coeff(&self) -> &RatFn {
        &self.dy
    }

    /// Canonical primitive `n`-th root of unity (Kummer only).
    pub fn zeta(&self) -> Option<Fq> {
        self.zeta
    }

    pub fn branch(&self) -> &[BranchPoint] {
        &self.curve.branch
    }

    /// Index of the branch point at `x = 0`, if any.
    pub fn zero_branch(&self) -> Option<usize> {
        self.zero_branch
    }

    pub fn ram_data(&self) -> &RamData {
        &self.ram
    }

    /// Table entry for `mu` (Kummer `1..n`, Artin-Schreier `0..p`).
    pub fn entry(&self, mu: u32) -> Option<&MuEntry> {
        self.table.iter().find(|e| e.mu == mu)
    }

    /// Differential-side `mu` range for a policy.
    pub fn omega_mu_range(&self, policy: MuRange) -> RangeInclusive<u32> {
        match (self.is_kummer(), policy) {
            (true, _) => 1..=self.degree - 1,
            (false, MuRange::Paper) => 1..=self.degree - 1,
            (false, MuRange::Extended) => 0..=self.degree - 1,
        }
    }

    /// `H^1`-side `mu` range for a policy.
    pub fn h1_mu_range(&self, policy: MuRange) -> RangeInclusive<u32> {
        match (self.is_kummer(), policy) {
            (true, _) => 1..=self.degree - 1,
            (false, MuRange::Paper) => 1..=self.degree - 1,
            (false, MuRange::Extended) => 1..=self.degree,
        }
    }

    /// The table restricted to the active differential range.
    pub fn mu_table(&self, policy: MuRange) -> Vec<&MuEntry> {
        let range = self.omega_mu_range(policy);
        self.table.iter().filter(|e| range.contains(&e.mu)).collect()
    }

    /// Genus from the degree of the canonical divisor (Riemann-Hurwitz).
    pub fn genus_rh(&self) -> u64 {
        let twice_g_minus_2: i64 = match &self.curve.family {
            Family::Kummer { n } => {
                let ram: i64 = self.ram.branch.iter().map(|b| (b.g * (b.e - 1)) as i64).sum();
                ram - 2 * *n as i64
            }
            Family::ArtinSchreier { .. } => {
                let p = self.degree as i64;
                let ram: i64 = self.curve.branch.iter().map(|b| (p - 1) * (b.l as i64 + 1)).sum();
                ram - 2 * p
            }
        };
        debug_assert!(twice_g_minus_2 % 2 == 0 && twice_g_minus_2 >= -2);
        (twice_g_minus_2 / 2 + 1) as u64
    }

    /// `sum max(t^(mu) - 1, 0)` over the active differential range.
    pub fn genus_from_basis(&self, policy: MuRange) -> u64 {
        self.mu_table(policy).iter().map(|e| e.t.saturating_sub(1) as u64).sum()
    }
}

fn kummer_entry(curve: &Curve, ram: &RamData, n: u32, mu: u32) -> MuEntry {
    let mut m = Vec::new();
    let mut upsilon = Vec::new();
    for b in &ram.branch {
        let lambda = b.lambda.expect("kummer");
        m.push(mu * lambda / b.e);
        upsilon.push(mu * lambda % b.e);
    }
    let weighted: u32 = ram.branch.iter().zip(&upsilon).map(|(b, u)| b.g * u).sum();
    debug_assert_eq!(weighted % n, 0, "t^(mu) must be integral");
    finish_entry(curve, mu, m, upsilon, weighted / n)
}

fn as_entry(curve: &Curve, p: u32, mu: u32) -> MuEntry {
    let (m, upsilon): (Vec<u32>, Vec<u32>) = curve
        .branch
        .iter()
        .map(|b| {
            let v = (p - 1 - mu) * b.l + (p - 1);
            (v / p, v % p)
        })
        .unzip();
    let t = m.iter().sum();
    finish_entry(curve, mu, m, upsilon, t)
}

fn finish_entry(curve: &Curve, mu: u32, m: Vec<u32>, upsilon: Vec<u32>, t: u32) -> MuEntry {
    let g = Poly::from_roots(&curve.field, curve.branch.iter().zip(&m).map(|(b, &mi)| (b.rho, mi)));
    let support = upsilon.iter().enumerate().filter(|(_, &u)| u != 0).map(|(i, _)| i).collect();
    MuEntry { mu, m, upsilon, g, t, support }
}
