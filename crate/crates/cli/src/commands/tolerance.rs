use serde::Serialize;

use sdwitness_core::witness::tolerance_curve_with;
use sdwitness_core::ToleranceCurve;

use super::{form, form_name, to_json, SCHEMA_VERSION};
use crate::args::{Format, ToleranceArgs};
use crate::error::{CliError, CliResult};
use crate::fmt::{num, opt_num, sig9};
use crate::svg::{Plot, Series, PALETTE};

pub const CSV_HEADER: &str = "delta,p_inc,r_min";

#[derive(Debug, Serialize)]
struct Row {
    delta: f64,
    p_inc: f64,
    r_min: Option<f64>,
}

#[derive(Debug, Serialize)]
struct ToleranceReport {
    schema_version: u32,
    command: &'static str,
    w_star_form: &'static str,
    rows: Vec<Row>,
}

pub fn curves(args: &ToleranceArgs) -> CliResult<Vec<ToleranceCurve>> {
    let grid = match &args.p_incs {
        Some(g) => g.clone(),
        None => {
            let n = args.points - 1;
            (0..=n).map(|i| f64::from(i) / f64::from(n)).collect()
        }
    };
    args.deltas
        .iter()
        .map(|&d| {
            tolerance_curve_with(form(args.form), d, &grid)
                .ok_or_else(|| CliError::Usage("--pincs must be strictly increasing".into()))
        })
        .collect()
}

pub fn to_csv(curves: &[ToleranceCurve]) -> String {
    let mut s = String::from(CSV_HEADER);
    s.push('\n');
    for c in curves {
        for &(p, r) in &c.points {
            s.push_str(&format!("{},{},{}\n", num(c.delta), num(p), opt_num(r)));
        }
    }
    s
}

/// Each curve is split wherever `r_min` is absent.
pub fn to_svg(curves: &[ToleranceCurve]) -> String {
    let series = curves
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let mut segments = vec![Vec::new()];
            for &(p, r) in &c.points {
                match r {
                    Some(r) => segments.last_mut().expect("nonempty").push((p, r)),
                    None if !segments.last().expect("nonempty").is_empty() => {
                        segments.push(Vec::new())
                    }
                    None => {}
                }
            }
            Series {
                label: format!("δ = {}", num(c.delta)),
                color: PALETTE[i % PALETTE.len()],
                dashed: false,
                segments,
                closed: false,
            }
        })
        .collect();
    Plot {
        title: "Tolerable depolarising noise".into(),
        x_label: "p_inc".into(),
        y_label: "r_min".into(),
        x_range: (0.0, 1.0),
        y_range: (0.0, 1.0),
        series,
    }
    .render()
}

pub fn run(args: &ToleranceArgs) -> CliResult<String> {
    let curves = curves(args)?;
    Ok(match args.format {
        Format::Csv => to_csv(&curves),
        Format::Svg => to_svg(&curves),
        Format::Json => to_json(&ToleranceReport {
            schema_version: SCHEMA_VERSION,
            command: "tolerance",
            w_star_form: form_name(args.form),
            rows: curves
                .iter()
                .flat_map(|c| {
                    c.points.iter().map(|&(p, r)| Row {
                        delta: sig9(c.delta),
                        p_inc: sig9(p),
                        r_min: r.map(sig9),
                    })
                })
                .collect(),
        }),
    })
}
