//! Exact verification of the constructed bases: divisors, polynomial
//! identities, dimension counts, the duality pairing, the cocycle condition,
//! pole loci and exactness of the Hodge-de Rham sequence.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;
use serde_json::{json, Value};

use crate::cohomology::{
    dual_h1_index, h1_basis, h1_coordinates, map_i, map_p, omega_basis, BasisOptions, ClassKind, DeRhamClass,
    DeRhamTriple,
};
use crate::curve::{Cover, Curve, MuRange};
use crate::funcfield::{local_data, pairing, FFDiff, FFElem, PlaceClass};
use crate::gf::Fq;
use crate::polyrat::{Poly, RatFn};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A negative valuation bound that is not known to be attained.
    Inconclusive,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        out.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub details: String,
    /// Machine-readable evidence (offending indices, residuals, counts).
    #[serde(skip)]
    pub payload: Value,
}

impl CheckResult {
    fn new(name: impl Into<String>, status: CheckStatus, details: impl Into<String>, payload: Value) -> CheckResult {
        CheckResult { name: name.into(), status, details: details.into(), payload }
    }

    fn from_failures(name: impl Into<String>, failures: Vec<String>, ok_details: String) -> CheckResult {
        if failures.is_empty() {
            CheckResult::new(name, CheckStatus::Pass, ok_details, Value::Null)
        } else {
            let details = failures.join("; ");
            CheckResult::new(name, CheckStatus::Fail, details, json!(failures))
        }
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// Pairings of the differential basis (rows) against the `H^1` basis
/// (columns, reordered so that the dual of row `k` is column `k`).
pub fn duality_matrix(cover: &Arc<Cover>, range: MuRange) -> (Vec<Vec<Fq>>, CheckResult) {
    let omegas = omega_basis(cover, range);
    let mut hs = h1_basis(cover, range);
    let mut ordered = Vec::with_capacity(hs.len());
    for (idx, _) in &omegas {
        let want = dual_h1_index(cover, *idx);
        if let Some(pos) = hs.iter().position(|(h, _)| *h == want) {
            ordered.push(hs.remove(pos));
        }
    }
    ordered.extend(hs);
    let matrix: Vec<Vec<Fq>> =
        omegas.iter().map(|(_, w)| ordered.iter().map(|(_, h)| pairing(h, w).expect("same cover")).collect()).collect();
    let mut failures = Vec::new();
    if omegas.len() != ordered.len() {
        failures.push(format!("{} differentials against {} classes", omegas.len(), ordered.len()));
    }
    for (r, row) in matrix.iter().enumerate() {
        for (c, &v) in row.iter().enumerate() {
            let want = if r == c { Fq::ONE } else { Fq::ZERO };
            if v != want {
                failures.push(format!("<omega{}, h{}> = {}", omegas[r].0, ordered[c].0, cover.field().render(v)));
            }
        }
    }
    let n = omegas.len();
    let check = CheckResult::from_failures("duality", failures, format!("{n}x{n} identity"));
    (matrix, check)
}

/// `d f - omega_0 + omega_inf`, zero exactly when the cocycle condition holds.
pub fn cocycle_residual(t: &DeRhamTriple) -> FFDiff {
    &(&t.f.exterior_d() - &t.omega0) + &t.omega_inf
}

pub fn cocycle_check(label: &str, t: &DeRhamTriple) -> CheckResult {
    let residual = cocycle_residual(t);
    let name = format!("cocycle:{label}");
    if residual.is_zero() {
        CheckResult::new(name, CheckStatus::Pass, "d f = omega_0 - omega_inf", Value::Null)
    } else {
        let r = residual.to_string();
        CheckResult::new(name, CheckStatus::Fail, format!("residual {r}"), json!({ "residual": r }))
    }
}

enum Slot<'a> {
    Diff(&'a FFDiff),
    Func(&'a FFElem),
}

/// Regularity of each slot off its allowed polar fiber.
pub fn locus_check(label: &str, t: &DeRhamTriple) -> CheckResult {
    let cover = t.f.cover();
    let zero = PlaceClass::zero(cover);
    let mut failures = Vec::new();
    let mut unsure = Vec::new();
    let slots = [("omega_0", Slot::Diff(&t.omega0)), ("omega_inf", Slot::Diff(&t.omega_inf)), ("f", Slot::Func(&t.f))];
    for (name, slot) in &slots {
        for place in PlaceClass::all(cover) {
            let allowed = match *name {
                "omega_0" => place == zero,
                "omega_inf" => place == PlaceClass::OverInfinity,
                _ => place == zero || place == PlaceClass::OverInfinity,
            };
            if allowed {
                continue;
            }
            let bound = match slot {
                Slot::Diff(w) if !w.is_zero() => w.valuation_bound(place),
                Slot::Func(f) if !f.is_zero() => f.valuation_bound(place),
                _ => continue,
            }
            .expect("nonzero");
            if bound.value < 0 {
                let msg = format!("{name} has valuation {} at {place}", bound.value);
                if bound.attained {
                    failures.push(msg);
                } else {
                    unsure.push(msg);
                }
            }
        }
    }
    let name = format!("locus:{label}");
    if !failures.is_empty() {
        CheckResult::new(name, CheckStatus::Fail, failures.join("; "), json!(failures))
    } else if !unsure.is_empty() {
        CheckResult::new(name, CheckStatus::Inconclusive, unsure.join("; "), json!(unsure))
    } else {
        CheckResult::new(name, CheckStatus::Pass, "poles confined to the allowed fibers", Value::Null)
    }
}

struct DivisorAudit<'a> {
    cover: &'a Arc<Cover>,
    failures: Vec<String>,
    compared: usize,
}

/// Expected valuations of one function or differential at the classes
/// `Branch(i)`, over zero, over infinity, plus the degree of the part of
/// the divisor supported elsewhere.
struct Expected {
    branch: Vec<i64>,
    zero: i64,
    infinity: i64,
    elsewhere: i64,
    degree: i64,
}

impl DivisorAudit<'_> {
    fn check(
        &mut self,
        what: &str,
        value: Result<crate::funcfield::Bound, crate::Error>,
        place: PlaceClass,
        want: i64,
    ) {
        self.compared += 1;
        match value {
            Ok(b) if b.value == want && (b.exact || !matches!(place, PlaceClass::Branch(_))) => {}
            Ok(b) => self.failures.push(format!(
                "v({what}) at {place}: found {}{}, expected {want}",
                b.value,
                if b.exact { "" } else { " (bound)" }
            )),
            Err(e) => self.failures.push(format!("v({what}) at {place}: {e}")),
        }
    }

    fn audit(
        &mut self,
        what: &str,
        valuation: impl Fn(PlaceClass) -> crate::Result<crate::funcfield::Bound>,
        e: Expected,
    ) {
        let cover = self.cover.clone();
        let mut degree = e.elsewhere;
        for (i, &want) in e.branch.iter().enumerate() {
            let place = PlaceClass::Branch(i);
            self.check(what, valuation(place), place, want);
            degree += local_data(&cover, place).points as i64 * want;
        }
        if cover.zero_branch().is_none() {
            self.check(what, valuation(PlaceClass::OverZero), PlaceClass::OverZero, e.zero);
            degree += cover.degree() as i64 * e.zero;
        }
        self.check(what, valuation(PlaceClass::OverInfinity), PlaceClass::OverInfinity, e.infinity);
        self.check(what, valuation(PlaceClass::Generic), PlaceClass::Generic, 0);
        degree += cover.degree() as i64 * e.infinity;
        self.compared += 1;
        if degree != e.degree {
            self.failures.push(format!("deg({what}) = {degree}, expected {}", e.degree));
        }
    }

    fn function(&mut self, what: &str, a: &FFElem, e: Expected) {
        self.audit(what, |p| a.valuation_bound(p), e);
    }

    fn differential(&mut self, what: &str, w: &FFDiff, e: Expected) {
        self.audit(what, |p| w.valuation_bound(p), e);
    }
}

/// Divisors of `x`, `y`, `dx` and the `g_mu` family recomputed from the
/// function field and compared with their closed forms.
pub fn divisor_checks(cover: &Arc<Cover>) -> CheckResult {
    let mut audit = DivisorAudit { cover, failures: Vec::new(), compared: 0 };
    let field = cover.field();
    let branch = cover.branch();
    let ram = cover.ram_data();
    let deg = cover.degree() as i64;
    let r = branch.len();
    let zero_index = cover.zero_branch();
    let canonical = 2 * cover.genus_rh() as i64 - 2;
    let x = FFElem::from_poly(cover, Poly::x(field));
    let dx = FFDiff::new(FFElem::one(cover));
    let y = FFElem::y(cover);

    let at_zero = |v: i64| (0..r).map(|i| if Some(i) == zero_index { v } else { 0 }).collect::<Vec<_>>();
    let e0 = ram.e0 as i64;
    audit.function("x", &x, Expected { branch: at_zero(e0), zero: 1, infinity: -1, elsewhere: 0, degree: 0 });

    if cover.is_kummer() {
        let t = cover.curve().total_degree() as i64 / deg;
        let lambda: Vec<i64> = ram.branch.iter().map(|b| b.lambda.expect("kummer") as i64).collect();
        audit.function("y", &y, Expected { branch: lambda, zero: 0, infinity: -t, elsewhere: 0, degree: 0 });
        let ramified: Vec<i64> = ram.branch.iter().map(|b| b.e as i64 - 1).collect();
        audit.differential(
            "dx",
            &dx,
            Expected { branch: ramified, zero: 0, infinity: -2, elsewhere: 0, degree: canonical },
        );
        for mu in 1..cover.degree() {
            let e = cover.entry(mu).expect("table");
            let a = FFElem::monomial(cover, RatFn::new(Poly::one(field), e.g.clone()).expect("monic"), mu as usize);
            let ups = e.upsilon.iter().map(|&u| u as i64).collect();
            let what = format!("y^{mu}/g_{mu}");
            audit.function(
                &what,
                &a,
                Expected { branch: ups, zero: 0, infinity: -(e.t as i64), elsewhere: 0, degree: 0 },
            );
        }
    } else {
        let p = deg;
        let l: Vec<i64> = branch.iter().map(|b| b.l as i64).collect();
        let total: i64 = l.iter().sum();
        let neg_l = l.iter().map(|v| -v).collect();
        // zeros of y lie over the roots of f, with total multiplicity deg f
        audit.function("y", &y, Expected { branch: neg_l, zero: 0, infinity: 0, elsewhere: total, degree: 0 });
        let bp = FFElem::from_poly(cover, cover.branch_poly().clone());
        let pl = l.iter().map(|v| p * v).collect();
        audit.function(
            "prod (x - rho_i)^l_i",
            &bp,
            Expected { branch: pl, zero: 0, infinity: -total, elsewhere: 0, degree: 0 },
        );
        let wild = l.iter().map(|v| (p - 1) * (v + 1)).collect();
        audit.differential(
            "dx",
            &dx,
            Expected { branch: wild, zero: 0, infinity: -2, elsewhere: 0, degree: canonical },
        );
        for mu in 0..cover.degree() {
            let e = cover.entry(mu).expect("table");
            let gdeg = e.g.degree().expect("nonzero") as i64;
            let g = FFElem::from_poly(cover, e.g.clone());
            let pm = e.m.iter().map(|&m| p * m as i64).collect();
            audit.function(
                &format!("g_{mu}"),
                &g,
                Expected { branch: pm, zero: 0, infinity: -gdeg, elsewhere: 0, degree: 0 },
            );
            let w = FFDiff::new(FFElem::monomial(
                cover,
                RatFn::new(Poly::one(field), e.g.clone()).expect("monic"),
                mu as usize,
            ));
            let ups = e.upsilon.iter().map(|&u| u as i64).collect();
            let expected = Expected {
                branch: ups,
                zero: 0,
                infinity: e.t as i64 - 2,
                elsewhere: mu as i64 * total,
                degree: canonical,
            };
            audit.differential(&format!("y^{mu}/g_{mu} dx"), &w, expected);
        }
        // g_{p-mu} y^{mu-1}: p m_i^(p-mu) - (mu-1) l_i = p - 1 - upsilon_i^(p-mu) >= 0
        for mu in 1..=cover.degree() {
            let e = cover.entry(cover.degree() - mu).expect("table");
            let mut closed = Vec::with_capacity(r);
            for (i, &li) in l.iter().enumerate() {
                let lhs = p * e.m[i] as i64 - (mu as i64 - 1) * li;
                let rhs = p - 1 - e.upsilon[i] as i64;
                audit.compared += 1;
                if lhs != rhs || rhs < 0 {
                    audit
                        .failures
                        .push(format!("exponent identity fails for mu = {mu}, i = {}: {lhs} vs {rhs}", i + 1));
                }
                closed.push(rhs);
            }
            let a = FFElem::monomial(cover, RatFn::from_poly(e.g.clone()), mu as usize - 1);
            let gdeg = e.g.degree().expect("nonzero") as i64;
            let expected =
                Expected { branch: closed, zero: 0, infinity: -gdeg, elsewhere: (mu as i64 - 1) * total, degree: 0 };
            audit.function(&format!("g_{}y^{}", cover.degree() - mu, mu - 1), &a, expected);
        }
    }
    let ok = format!("{} valuations and degrees agree", audit.compared);
    CheckResult::from_failures("divisors", audit.failures, ok)
}

/// Polynomial identities used by the constructions.
pub fn identity_checks(cover: &Arc<Cover>) -> CheckResult {
    let field = cover.field();
    let mut failures = Vec::new();
    let mut count = 0;
    if cover.is_kummer() {
        let n = cover.degree();
        let ram = &cover.ram_data().branch;
        let rho = |i: usize| cover.branch()[i].rho;
        for mu in 1..n {
            let e = cover.entry(mu).expect("table");
            let support_prod = |skip: Option<usize>| {
                Poly::from_roots(field, e.support.iter().filter(|&&i| Some(i) != skip).map(|&i| (rho(i), 1)))
            };
            let prod = support_prod(None);
            let partner = &cover.entry(n - mu).expect("table").g;
            count += 2;
            if &(&e.g * partner) * &prod != *cover.f() {
                failures.push(format!("g_{mu} g_{} prod_I (x - rho_i) != f", n - mu));
            }
            let phi = Poly::from_roots(field, (0..ram.len()).map(|i| (rho(i), e.upsilon[i] * ram[i].g)));
            let mut sum = Poly::zero(field);
            for &i in &e.support {
                let c = field.from_u64(e.upsilon[i] as u64 * ram[i].g as u64);
                sum = &sum + &support_prod(Some(i)).scale(c);
            }
            if &phi.derivative() * &prod != &phi * &sum {
                failures.push(format!("log-derivative identity fails for mu = {mu}"));
            }
        }
    } else {
        let psi = crate::cohomology::as_psi(cover);
        let den = cover.branch_poly() * cover.radical();
        let dy = FFElem::y(cover).exterior_d();
        count += 1;
        let expected = FFDiff::new(FFElem::from_ratfn(cover, RatFn::new(psi, den).expect("monic")));
        if dy != expected {
            failures.push("dy != psi / prod (x - rho_i)^(l_i + 1) dx".to_string());
        }
    }
    CheckResult::from_failures("identities", failures, format!("{count} polynomial identities hold"))
}

pub fn dimension_check(cover: &Arc<Cover>, range: MuRange, derham: usize) -> CheckResult {
    let g = cover.genus_rh() as usize;
    let w = omega_basis(cover, range).len();
    let h = h1_basis(cover, range).len();
    let payload = json!({ "omega": w, "h1": h, "derham": derham, "genus": g });
    let counts = format!("omega {w}, h1 {h}, derham {derham}, genus {g}");
    if w == g && h == g && derham == 2 * g {
        CheckResult::new("dimension", CheckStatus::Pass, counts, payload)
    } else {
        CheckResult::new("dimension", CheckStatus::Fail, format!("{counts}: expected {g}, {g}, {}", 2 * g), payload)
    }
}

/// Exactness of `0 -> H^0(Omega) -> H^1_dR -> H^1(O) -> 0` on the bases.
/// Coordinates in `H^1(O)` are read through the pairing, so this check is
/// only meaningful once `duality` has passed.
pub fn exactness_check(cover: &Arc<Cover>, range: MuRange, classes: &[DeRhamClass], duality_ok: bool) -> CheckResult {
    if !duality_ok {
        return CheckResult::new("exactness", CheckStatus::Fail, "skipped: duality check failed", Value::Null);
    }
    let mut failures = Vec::new();
    let omegas = omega_basis(cover, range);
    // (a) p o i = 0
    for (idx, w) in &omegas {
        match h1_coordinates(&map_p(&map_i(w)), range) {
            Ok(c) if c.iter().all(|v| v.is_zero()) => {}
            _ => failures.push(format!("p(i(omega{idx})) is not zero")),
        }
    }
    // (b) p maps the a family onto the unit vectors
    let g = omegas.len();
    let mut hit = BTreeSet::new();
    for class in classes.iter().filter(|c| c.kind == ClassKind::A) {
        match h1_coordinates(&map_p(&class.triple), range) {
            Ok(c) => {
                let ones: Vec<usize> = (0..c.len()).filter(|&k| !c[k].is_zero()).collect();
                if ones.len() == 1 && c[ones[0]] == Fq::ONE {
                    hit.insert(ones[0]);
                } else {
                    failures.push(format!("p({}) is not a basis vector", class.label()));
                }
            }
            Err(e) => failures.push(format!("p({}): {e}", class.label())),
        }
    }
    if hit.len() != g {
        failures.push(format!("p hits {} of {g} basis classes", hit.len()));
    }
    // (c) i lands in the kernel of p
    for class in classes.iter().filter(|c| c.kind == ClassKind::Delta) {
        if !class.triple.f.is_zero() {
            failures.push(format!("{} has a nonzero function slot", class.label()));
        }
    }
    CheckResult::from_failures("exactness", failures, format!("i injective, p surjective onto {g} classes"))
}

/// Everything `full_report` computed for one curve.
#[derive(Clone, Debug)]
pub struct Report {
    pub curve: Curve,
    /// `None` when the curve failed validation.
    pub cover: Option<Arc<Cover>>,
    pub options: BasisOptions,
    pub classes: Vec<DeRhamClass>,
    pub pairing_matrix: Vec<Vec<Fq>>,
    pub checks: Vec<CheckResult>,
    pub all_pass: bool,
}

impl Report {
    pub fn failing(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed())
    }
}

pub fn full_report(curve: &Curve, options: BasisOptions) -> Report {
    let violations = curve.validate();
    let mut report = Report {
        curve: curve.clone(),
        cover: None,
        options,
        classes: Vec::new(),
        pairing_matrix: Vec::new(),
        checks: Vec::new(),
        all_pass: false,
    };
    if !violations.is_empty() {
        let messages: Vec<String> = violations.iter().map(|v| format!("{}: {}", v.code.as_str(), v.message)).collect();
        report.checks.push(CheckResult::new("validate", CheckStatus::Fail, messages.join("; "), json!(violations)));
        return report;
    }
    let cover = Cover::new(curve.clone()).expect("validated");
    let range = options.mu_range;
    let classes = crate::cohomology::derham_basis(&cover, options);
    let mut checks = vec![CheckResult::new("validate", CheckStatus::Pass, "standing hypotheses hold", Value::Null)];
    checks.push(divisor_checks(&cover));
    checks.push(identity_checks(&cover));
    checks.push(dimension_check(&cover, range, classes.len()));
    let (matrix, duality) = duality_matrix(&cover, range);
    let duality_ok = duality.passed();
    checks.push(duality);
    for class in &classes {
        let label = class.label();
        checks.push(cocycle_check(&label, &class.triple));
        checks.push(locus_check(&label, &class.triple));
    }
    checks.push(exactness_check(&cover, range, &classes, duality_ok));
    report.all_pass = checks.iter().all(CheckResult::passed);
    report.cover = Some(cover);
    report.classes = classes;
    report.pairing_matrix = matrix;
    report.checks = checks;
    report
}
