//! Deterministic JSON and text renderings of verification reports.

use std::sync::Arc;

use serde::Serialize;
use serde_json::Value;

use crate::cohomology::{h1_basis, omega_basis, BasisOptions, DeRhamClass};
use crate::curve::{Cover, Curve};
use crate::spec::CurveSpecFile;
use crate::verify::{CheckResult, Report};

#[derive(Clone, Debug, Serialize)]
pub struct RamRow {
    pub rho: Value,
    pub l: u32,
    pub e: u32,
    pub g: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda: Option<u32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroConventions {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l0: Option<u32>,
    pub e0: u32,
    pub g0: u32,
}

#[derive(Clone, Debug, Serialize)]
pub struct MuRow {
    pub mu: u32,
    pub m: Vec<u32>,
    pub upsilon: Vec<u32>,
    pub g: String,
    pub t: u32,
    /// 1-based branch indices with nonzero `upsilon`.
    pub support: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CurveSection {
    pub input: CurveSpecFile,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub field_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<u64>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub ramification: Vec<RamRow>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub zero: Option<ZeroConventions>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub points_over_infinity: Option<u32>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub mu_table: Vec<MuRow>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Labelled {
    pub label: String,
    pub value: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct RenderedTriple {
    pub label: String,
    pub omega0: String,
    pub omega_inf: String,
    pub f: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct BasesSection {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<Vec<Labelled>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h1: Option<Vec<Labelled>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub derham: Option<Vec<RenderedTriple>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Policy {
    pub mu_range: &'static str,
    pub sign_convention: &'static str,
    pub kummer_split: &'static str,
}

impl From<BasisOptions> for Policy {
    fn from(o: BasisOptions) -> Policy {
        Policy {
            mu_range: o.mu_range.as_str(),
            sign_convention: o.sign.as_str(),
            kummer_split: o.kummer_split.as_str(),
        }
    }
}

/// The machine-readable report. Field order is the serialisation order.
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub curve: CurveSection,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bases: Option<BasesSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pairing_matrix: Option<Vec<Vec<Value>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub checks: Option<Vec<CheckResult>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub policy: Option<Policy>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub all_pass: Option<bool>,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

pub fn curve_section(curve: &Curve, cover: Option<&Cover>) -> CurveSection {
    let mut out = CurveSection {
        input: CurveSpecFile::from_curve(curve),
        field_order: None,
        genus: None,
        ramification: Vec::new(),
        zero: None,
        points_over_infinity: None,
        mu_table: Vec::new(),
    };
    let Some(cover) = cover else {
        return out;
    };
    let field = cover.field();
    let ram = cover.ram_data();
    out.field_order = Some(field.order());
    out.genus = Some(cover.genus_rh());
    out.ramification = cover
        .branch()
        .iter()
        .zip(&ram.branch)
        .map(|(b, r)| RamRow { rho: field.to_json(b.rho), l: b.l, e: r.e, g: r.g, lambda: r.lambda })
        .collect();
    out.zero = Some(ZeroConventions { l0: ram.l0, e0: ram.e0, g0: ram.g0 });
    out.points_over_infinity = Some(ram.points_over_infinity);
    let mus = if cover.is_kummer() { 1..cover.degree() } else { 0..cover.degree() };
    out.mu_table = mus
        .map(|mu| {
            let e = cover.entry(mu).expect("table");
            MuRow {
                mu,
                m: e.m.clone(),
                upsilon: e.upsilon.clone(),
                g: e.g.to_string(),
                t: e.t,
                support: e.support.iter().map(|i| i + 1).collect(),
            }
        })
        .collect();
    out
}

pub fn render_omega(cover: &Arc<Cover>, options: BasisOptions) -> Vec<Labelled> {
    omega_basis(cover, options.mu_range)
        .into_iter()
        .map(|(i, w)| Labelled { label: format!("omega{i}"), value: w.to_string() })
        .collect()
}

pub fn render_h1(cover: &Arc<Cover>, options: BasisOptions) -> Vec<Labelled> {
    h1_basis(cover, options.mu_range)
        .into_iter()
        .map(|(i, h)| Labelled { label: format!("h{i}"), value: h.to_string() })
        .collect()
}

pub fn render_derham(classes: &[DeRhamClass]) -> Vec<RenderedTriple> {
    classes
        .iter()
        .map(|c| RenderedTriple {
            label: c.label(),
            omega0: c.triple.omega0.to_string(),
            omega_inf: c.triple.omega_inf.to_string(),
            f: c.triple.f.to_string(),
        })
        .collect()
}

/// Full document for a `verify` run.
pub fn report_document(report: &Report) -> ReportDocument {
    let cover = report.cover.as_ref();
    let bases = cover.map(|c| BasesSection {
        omega: Some(render_omega(c, report.options)),
        h1: Some(render_h1(c, report.options)),
        derham: Some(render_derham(&report.classes)),
    });
    let pairing_matrix = cover.map(|c| {
        let field = c.field();
        report.pairing_matrix.iter().map(|row| row.iter().map(|&v| field.to_json(v)).collect()).collect()
    });
    ReportDocument {
        curve: curve_section(&report.curve, cover.map(|c| &**c)),
        bases,
        pairing_matrix,
        checks: Some(report.checks.clone()),
        policy: Some(report.options.into()),
        all_pass: Some(report.all_pass),
    }
}

/// Aligned plain-text table of check results.
pub fn checks_table(checks: &[CheckResult]) -> String {
    let width = checks.iter().map(|c| c.name.len()).max().unwrap_or(0);
    let mut out = String::new();
    for c in checks {
        out.push_str(&format!("{:<width$}  {:<12}  {}\n", c.name, c.status.to_string(), c.details));
    }
    out
}
