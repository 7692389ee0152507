//! Deterministic corpus sweeps over small Kummer and Artin-Schreier covers.

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cohomology::BasisOptions;
use crate::curve::{BranchPoint, Curve};
use crate::gf::{gcd_u64, is_prime, Field, Fq};
use crate::polyrat::Poly;
use crate::report::Policy;
use crate::spec::CurveSpecFile;
use crate::verify::{full_report, Report};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepFamily {
    Kummer,
    ArtinSchreier,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SweepParams {
    pub family: SweepFamily,
    /// Largest characteristic.
    pub p_max: u64,
    /// Largest Kummer degree `n`.
    pub n_max: u32,
    /// Kummer: largest total degree `sum l_i`. Artin-Schreier: largest `l_i`.
    pub l_max: u32,
    /// Largest number of branch points.
    pub r_max: usize,
    /// At most this many curves are kept, chosen by the seeded generator.
    pub count_cap: usize,
    pub seed: u64,
    pub options: BasisOptions,
}

impl SweepParams {
    pub fn kummer() -> SweepParams {
        SweepParams {
            family: SweepFamily::Kummer,
            p_max: 13,
            n_max: 6,
            l_max: 12,
            r_max: 12,
            count_cap: COUNT_CAP_LIMIT,
            seed: 1,
            options: BasisOptions::default(),
        }
    }

    pub fn artin_schreier() -> SweepParams {
        SweepParams {
            family: SweepFamily::ArtinSchreier,
            p_max: 7,
            n_max: 0,
            l_max: 4,
            r_max: 3,
            count_cap: COUNT_CAP_LIMIT,
            seed: 1,
            options: BasisOptions::default(),
        }
    }
}

/// Hard limits keeping a sweep at desk scale.
pub const P_MAX_LIMIT: u64 = 31;
pub const N_MAX_LIMIT: u32 = 12;
pub const L_MAX_LIMIT: u32 = 24;
pub const R_MAX_LIMIT: usize = 12;
pub const COUNT_CAP_LIMIT: usize = 5000;

impl SweepParams {
    pub fn check_bounds(&self) -> Result<(), String> {
        if self.p_max > P_MAX_LIMIT {
            return Err(format!("p-max must be at most {P_MAX_LIMIT}"));
        }
        if self.n_max > N_MAX_LIMIT {
            return Err(format!("n-max must be at most {N_MAX_LIMIT}"));
        }
        if self.l_max > L_MAX_LIMIT {
            return Err(format!("l-max must be at most {L_MAX_LIMIT}"));
        }
        if self.r_max > R_MAX_LIMIT {
            return Err(format!("r-max must be at most {R_MAX_LIMIT}"));
        }
        if self.count_cap > COUNT_CAP_LIMIT {
            return Err(format!("count-cap must be at most {COUNT_CAP_LIMIT}"));
        }
        Ok(())
    }
}

/// Smallest field `F_p` or `F_{p^2}` containing the `n`-th roots of unity;
/// the quadratic modulus is the irreducible `z^2 + b z + c` with the
/// smallest `(b, c)`.
pub fn field_with_roots(p: u64, n: u32) -> Option<Field> {
    let n = n as u64;
    if (p - 1).is_multiple_of(n) {
        return Field::prime(p).ok();
    }
    if !(p * p - 1).is_multiple_of(n) {
        return None;
    }
    (0..p).flat_map(|b| (0..p).map(move |c| (b, c))).find_map(|(b, c)| Field::new(p, Some(vec![c, b, 1])).ok())
}

/// Non-increasing sequences of parts in `1..=max_part` summing to `total`.
fn partitions(total: u32, max_part: u32, max_len: usize) -> Vec<Vec<u32>> {
    fn go(rest: u32, cap: u32, max_len: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        if cur.len() == max_len {
            return;
        }
        for part in (1..=cap.min(rest)).rev() {
            cur.push(part);
            go(rest - part, part, max_len, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(total, max_part, max_len, &mut Vec::new(), &mut out);
    out
}

fn pick_points(field: &Field, r: usize, rng: &mut ChaCha8Rng) -> Vec<Fq> {
    let mut all: Vec<Fq> = (0..field.order()).map(Fq).collect();
    all.shuffle(rng);
    all.truncate(r);
    all
}

fn kummer_curves(params: &SweepParams, rng: &mut ChaCha8Rng) -> Vec<Curve> {
    let mut out = Vec::new();
    for p in (2..=params.p_max).filter(|&p| is_prime(p)) {
        for n in (2..=params.n_max).filter(|&n| !(n as u64).is_multiple_of(p)) {
            let Some(field) = field_with_roots(p, n) else { continue };
            let max_r = params.r_max.min(field.order() as usize);
            for l in (n..=params.l_max).step_by(n as usize) {
                for parts in partitions(l, l, max_r) {
                    if parts.iter().fold(n as u64, |g, &x| gcd_u64(g, x as u64)) != 1 {
                        continue;
                    }
                    let rhos = pick_points(&field, parts.len(), rng);
                    let branch = rhos.into_iter().zip(parts).map(|(rho, l)| BranchPoint { rho, l }).collect();
                    out.push(Curve::kummer(&field, n, branch));
                }
            }
        }
    }
    out
}

/// Up to two numerators from the fixed family `a x^l + b x + c`, in
/// lexicographic order of `(a, b, c)`, that avoid `0` and every branch point.
fn numerators(field: &Field, l: u32, rhos: &[Fq]) -> Vec<Poly> {
    let p = field.characteristic();
    let mut out = Vec::new();
    for a in 1..p {
        for b in 0..p {
            for c in 1..p {
                let mut coeffs = vec![Fq::ZERO; l as usize + 1];
                coeffs[0] = Fq(c);
                coeffs[1] = field.add(coeffs[1], Fq(b));
                coeffs[l as usize] = field.add(coeffs[l as usize], Fq(a));
                let f = Poly::from_coeffs(field, coeffs);
                if f.degree() == Some(l as usize) && rhos.iter().all(|&r| !f.eval(r).is_zero()) {
                    out.push(f);
                    if out.len() == 2 {
                        return out;
                    }
                }
            }
        }
    }
    out
}

fn as_curves(params: &SweepParams, rng: &mut ChaCha8Rng) -> Vec<Curve> {
    let mut out = Vec::new();
    for p in (3..=params.p_max).filter(|&p| is_prime(p)) {
        let field = Field::prime(p).expect("prime");
        let exps: Vec<u32> = (1..=params.l_max).filter(|&l| !(l as u64).is_multiple_of(p)).collect();
        for r in 1..=params.r_max.min(p as usize) {
            for combo in multisets(&exps, r) {
                let rhos = pick_points(&field, r, rng);
                let l: u32 = combo.iter().sum();
                for f in numerators(&field, l, &rhos) {
                    let branch = rhos.iter().zip(&combo).map(|(&rho, &l)| BranchPoint { rho, l }).collect();
                    out.push(Curve::artin_schreier(&field, f, branch));
                }
            }
        }
    }
    out
}

/// Non-increasing length-`r` sequences drawn from `items`.
fn multisets(items: &[u32], r: usize) -> Vec<Vec<u32>> {
    if r == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        for mut rest in multisets(&items[i..], r - 1) {
            rest.insert(0, x);
            out.push(rest);
        }
    }
    out
}

/// The valid curves a sweep visits, in enumeration order.
pub fn enumerate(params: &SweepParams) -> Vec<Curve> {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    let mut curves = match params.family {
        SweepFamily::Kummer => kummer_curves(params, &mut rng),
        SweepFamily::ArtinSchreier => as_curves(params, &mut rng),
    };
    curves.retain(|c| c.validate().is_empty());
    if curves.len() > params.count_cap {
        let mut keep = index::sample(&mut rng, curves.len(), params.count_cap).into_vec();
        keep.sort_unstable();
        curves = keep.into_iter().map(|i| curves[i].clone()).collect();
    }
    curves
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepFailure {
    pub index: usize,
    pub spec: CurveSpecFile,
    pub failing: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SweepSummary {
    pub family: SweepFamily,
    pub policy: Policy,
    pub seed: u64,
    pub curves: usize,
    pub passed: usize,
    pub failed: usize,
    pub failures: Vec<SweepFailure>,
}

/// Runs `full_report` on every curve of the sweep, using `jobs` worker
/// threads. The summary does not depend on `jobs`.
pub fn run_sweep(params: &SweepParams, jobs: usize) -> SweepSummary {
    let curves = enumerate(params);
    let reports = run_all(&curves, params.options, jobs.max(1));
    summarize(params, &reports)
}

pub fn run_all(curves: &[Curve], options: BasisOptions, jobs: usize) -> Vec<Report> {
    if jobs <= 1 || curves.len() < 2 {
        return curves.iter().map(|c| full_report(c, options)).collect();
    }
    let chunk = curves.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = curves
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(|c| full_report(c, options)).collect::<Vec<_>>()))
            .collect();
        handles.into_iter().flat_map(|h| h.join().expect("sweep worker panicked")).collect()
    })
}

pub fn summarize(params: &SweepParams, reports: &[Report]) -> SweepSummary {
    let failures: Vec<SweepFailure> = reports
        .iter()
        .enumerate()
        .filter(|(_, r)| !r.all_pass)
        .map(|(index, r)| SweepFailure {
            index,
            spec: CurveSpecFile::from_curve(&r.curve),
            failing: r.failing().map(|c| c.name.clone()).collect(),
        })
        .collect();
    SweepSummary {
        family: params.family,
        policy: params.options.into(),
        seed: params.seed,
        curves: reports.len(),
        passed: reports.len() - failures.len(),
        failed: failures.len(),
        failures,
    }
}
