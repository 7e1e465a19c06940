use serde::Serialize;

use sdwitness_core::region::{
    deterministic_boundary, nc_boundary, quantum_boundary, BoundaryPoint,
};
use sdwitness_core::{Model, RegionCurve};

use super::{to_json, SCHEMA_VERSION};
use crate::args::{Format, RegionArgs, RegionModel};
use crate::error::{CliError, CliResult};
use crate::fmt::{num, sig9};
use crate::svg::{Plot, Series, PALETTE};

pub const CSV_HEADER: &str = "p_inc,p_suc,p_err,branch";

#[derive(Debug, Serialize)]
struct PointRow {
    p_inc: f64,
    p_suc: f64,
    p_err: f64,
    branch: &'static str,
}

#[derive(Debug, Serialize)]
struct CurveReport {
    schema_version: u32,
    command: &'static str,
    model: &'static str,
    delta_or_c: f64,
    r_s: f64,
    points: Vec<PointRow>,
}

fn row(p: &BoundaryPoint) -> PointRow {
    PointRow {
        p_inc: sig9(p.p_inc),
        p_suc: sig9(p.p_suc),
        p_err: sig9(p.p_err),
        branch: p.branch.label(),
    }
}

pub fn to_csv(curve: &RegionCurve) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for p in &curve.points {
        s.push_str(&format!(
            "{},{},{},{}\n",
            num(p.p_inc),
            num(p.p_suc),
            num(p.p_err),
            p.branch.label()
        ));
    }
    s
}

fn series(curve: &RegionCurve, label: String, color: &'static str, dashed: bool) -> Series {
    Series {
        label,
        color,
        dashed,
        segments: vec![curve.points.iter().map(|p| (p.p_err, p.p_suc)).collect()],
        closed: true,
    }
}

fn label(curve: &RegionCurve) -> String {
    match curve.model {
        Model::Quantum => format!("quantum δ={}", num(curve.delta_or_c)),
        Model::Noncontextual => format!("noncontextual c={}", num(curve.delta_or_c)),
        Model::Deterministic => "deterministic".into(),
    }
}

pub fn to_svg(curves: &[RegionCurve], r_s: f64) -> String {
    let colors = [PALETTE[0], PALETTE[1], PALETTE[2]];
    let series = curves
        .iter()
        .enumerate()
        .map(|(i, c)| {
            series(
                c,
                label(c),
                colors[i % colors.len()],
                c.model == Model::Deterministic,
            )
        })
        .collect();
    Plot {
        title: format!("Feasible behaviours, r_s = {}", num(r_s)),
        x_label: "p_err".into(),
        y_label: "p_suc".into(),
        x_range: (0.0, 1.0),
        y_range: (0.0, 1.0),
        series,
    }
    .render()
}

fn delta(args: &RegionArgs) -> CliResult<f64> {
    args.delta
        .ok_or_else(|| CliError::Usage("--delta is required for this model".into()))
}

fn c(args: &RegionArgs) -> CliResult<f64> {
    match (args.c, args.delta) {
        (Some(c), _) => Ok(c),
        (None, Some(d)) => Ok(d * d),
        (None, None) => Err(CliError::Usage(
            "--c or --delta is required for the noncontextual model".into(),
        )),
    }
}

pub fn curves(args: &RegionArgs) -> CliResult<Vec<RegionCurve>> {
    let n = args.points as usize;
    Ok(match args.model {
        RegionModel::Quantum => vec![quantum_boundary(delta(args)?, args.r_s, n)?],
        RegionModel::Noncontextual => vec![nc_boundary(c(args)?, args.r_s, n)?],
        RegionModel::Deterministic => vec![deterministic_boundary(n)?],
        RegionModel::Both => vec![
            quantum_boundary(delta(args)?, args.r_s, n)?,
            nc_boundary(c(args)?, args.r_s, n)?,
            deterministic_boundary(n)?,
        ],
    })
}

pub fn run(args: &RegionArgs) -> CliResult<String> {
    let curves = curves(args)?;
    match (args.format, args.model) {
        (Format::Svg, RegionModel::Both | RegionModel::Deterministic) => {
            Ok(to_svg(&curves, args.r_s))
        }
        (Format::Svg, _) => {
            let mut all = curves;
            all.push(deterministic_boundary(args.points as usize)?);
            Ok(to_svg(&all, args.r_s))
        }
        (_, RegionModel::Both) => Err(CliError::Usage(
            "--model both overlays several curves and needs --format svg".into(),
        )),
        (Format::Csv, _) => Ok(to_csv(&curves[0])),
        (Format::Json, _) => {
            let curve = &curves[0];
            Ok(to_json(&CurveReport {
                schema_version: SCHEMA_VERSION,
                command: "region",
                model: curve.model.name(),
                delta_or_c: sig9(curve.delta_or_c),
                r_s: sig9(curve.r_s),
                points: curve.points.iter().map(row).collect(),
            }))
        }
    }
}
