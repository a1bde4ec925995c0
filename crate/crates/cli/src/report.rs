//! Bound sweeps as flat report rows.

use std::io::Write;

use anyon_core::alpha::gcd;
use anyon_core::bounds::{collect_bounds, fractionality, TAG_ALPHA_N};
use anyon_core::{Alpha, BoundValue, BoundaryCondition};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;

/// One bound on one (α, N, bc). Field names are the CSV header.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub alpha: f64,
    #[serde(rename = "n")]
    pub n_particles: u64,
    pub bc: &'static str,
    pub source: &'static str,
    pub direction: &'static str,
    pub value: Option<f64>,
    pub valid: bool,
    pub note: String,
}

pub const CSV_HEADER: &str = "alpha,n,bc,source,direction,value,valid,note";

fn fraction_text(num: u64, den: u64) -> String {
    if num == 0 {
        return "0".into();
    }
    let g = gcd(num, den);
    if den / g == 1 {
        format!("{}", num / g)
    } else {
        format!("{}/{}", num / g, den / g)
    }
}

fn fractionality_note(alpha: &Alpha, n: u64) -> String {
    let Ok(f) = fractionality(alpha, n) else {
        return String::new();
    };
    let mut note = match alpha.rational() {
        Some(r) => {
            let alpha_n = fraction_text((f.alpha_n * r.den() as f64).round() as u64, r.den());
            let star = if f.alpha_star > 0.0 {
                fraction_text(1, (1.0 / f.alpha_star).round() as u64)
            } else {
                "0".into()
            };
            format!("alpha_N = {alpha_n}; alpha_star = {star}")
        }
        None => format!("alpha_N = {}; alpha_star = {}", f.alpha_n, f.alpha_star),
    };
    if let Some(extra) = f.note {
        note.push_str("; ");
        note.push_str(&extra);
    }
    note
}

fn to_row(alpha: &Alpha, b: BoundValue) -> ReportRow {
    let note = if !b.valid {
        b.validity_reason.clone()
    } else if b.source == TAG_ALPHA_N && b.n_particles >= 2 {
        fractionality_note(alpha, b.n_particles)
    } else {
        String::new()
    };
    ReportRow {
        alpha: alpha.value(),
        n_particles: b.n_particles,
        bc: b.bc.as_str(),
        source: b.source,
        direction: b.direction.as_str(),
        value: b.valid.then_some(b.energy),
        valid: b.valid,
        note,
    }
}

/// Every applicable bound on the product grid, sorted by (alpha, n, source).
pub fn bounds_rows(alphas: &[Alpha], ns: &[u64], bcs: &[BoundaryCondition]) -> Vec<ReportRow> {
    let points: Vec<(Alpha, u64)> = alphas
        .iter()
        .flat_map(|a| ns.iter().map(move |&n| (*a, n)))
        .collect();
    let mut rows: Vec<ReportRow> = points
        .par_iter()
        .flat_map_iter(|(a, n)| {
            bcs.iter()
                .flat_map(|&bc| collect_bounds(*n, a, bc))
                .map(|b| to_row(a, b))
                .collect::<Vec<_>>()
        })
        .collect();
    rows.sort_by(|x, y| {
        x.alpha
            .total_cmp(&y.alpha)
            .then(x.n_particles.cmp(&y.n_particles))
            .then(x.source.cmp(y.source))
    });
    rows
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    if rows.is_empty() {
        w.write_record(CSV_HEADER.split(','))?;
    }
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    writeln!(out)?;
    Ok(())
}
