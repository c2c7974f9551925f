//! `qgue asym` — scaled moments against the two-term expansion, including
//! the residual `(q^p m_{N,2p} - M0 N) N` that converges to M1.

use clap::Args;
use serde_json::json;

use qgue_core::moments::scaled_moment;
use qgue_core::spectral::asym::asym_coeffs;

use crate::output::{meta_for, svg_plot, Series, SeriesKind, Sink, Table, SERIES_COLORS};
use crate::{CliError, FloatList, Format, GlobalOpts, IndexList};

#[derive(Clone, Debug, Args)]
pub struct AsymArgs {
    /// Half-orders p to scan.
    #[arg(long, default_value = "1..4")]
    pub p: IndexList,
    /// Scaling parameters lambda (`log2` is accepted).
    #[arg(long, default_value = "0.3,log2,2")]
    pub lambda: FloatList,
    /// Matrix sizes N.
    #[arg(long = "N", visible_alias = "n", default_value = "10,20,40")]
    pub n: IndexList,
}

struct Row {
    n: u64,
    p: u64,
    lambda: f64,
    scaled: f64,
    two_term: f64,
    abs_error: f64,
    residual: f64,
    m1: f64,
}

fn scan(args: &AsymArgs) -> Result<Vec<Row>, CliError> {
    let mut rows = Vec::new();
    for &p in &args.p.0 {
        if p == 0 {
            return Err(CliError::Config("p must be >= 1 for the expansion".into()));
        }
        for &lambda in &args.lambda.0 {
            if lambda < 0.0 {
                return Err(CliError::Config(format!("lambda = {lambda} must be >= 0")));
            }
            for &n in &args.n.0 {
                if n == 0 {
                    return Err(CliError::Config("N must be >= 1".into()));
                }
                if lambda == 0.0 {
                    // q = 1: every scaled moment vanishes for p >= 1
                    rows.push(Row {
                        n,
                        p,
                        lambda,
                        scaled: 0.0,
                        two_term: 0.0,
                        abs_error: 0.0,
                        residual: 0.0,
                        m1: 0.0,
                    });
                    continue;
                }
                let c = asym_coeffs(p as u32, lambda)?;
                let scaled = scaled_moment(n as usize, p as usize, lambda);
                let two_term = c.m0 * n as f64 + c.m1 / n as f64;
                rows.push(Row {
                    n,
                    p,
                    lambda,
                    scaled,
                    two_term,
                    abs_error: (scaled - two_term).abs(),
                    residual: (scaled - c.m0 * n as f64) * n as f64,
                    m1: c.m1,
                });
            }
        }
    }
    Ok(rows)
}

pub fn run(args: &AsymArgs, global: &GlobalOpts) -> Result<(), CliError> {
    let rows = scan(args)?;
    let sink = Sink::new(global.out.clone());
    if global.format == Format::Svg {
        // Figure-1(C)-style: M1 as a curve over p, residual dots per N,
        // one plot per lambda stacked vertically is overkill — emit the
        // first lambda only and say so in the title
        let lambda = args.lambda.0[0];
        let mut series = Vec::new();
        let m1_curve: Vec<(f64, f64)> = args
            .p
            .0
            .iter()
            .map(|&p| {
                let c = asym_coeffs(p as u32, lambda).expect("validated above");
                (p as f64, c.m1)
            })
            .collect();
        series.push(Series {
            label: "M1(p)".into(),
            kind: SeriesKind::Line,
            points: m1_curve,
            color: SERIES_COLORS[0],
        });
        for (i, &n) in args.n.0.iter().enumerate() {
            let pts: Vec<(f64, f64)> = rows
                .iter()
                .filter(|r| r.n == n && r.lambda == lambda)
                .map(|r| (r.p as f64, r.residual))
                .collect();
            series.push(Series {
                label: format!("N = {n}"),
                kind: SeriesKind::Dots,
                points: pts,
                color: SERIES_COLORS[(i + 1) % SERIES_COLORS.len()],
            });
        }
        let svg = svg_plot(
            &series,
            &[],
            &format!("residual (q^p m - M0 N) N vs M1, lambda = {lambda}"),
        );
        return sink.write_str(&svg);
    }

    let mut table = Table::new(&[
        "N",
        "p",
        "lambda",
        "scaled_moment",
        "M0N_plus_M1_over_N",
        "abs_error",
        "residual_times_N",
        "M1",
    ]);
    for r in &rows {
        table.push(vec![
            r.n.to_string(),
            r.p.to_string(),
            r.lambda.to_string(),
            format!("{:.15e}", r.scaled),
            format!("{:.15e}", r.two_term),
            format!("{:.3e}", r.abs_error),
            format!("{:.15e}", r.residual),
            format!("{:.15e}", r.m1),
        ]);
    }
    match global.format {
        Format::Text => sink.write_str(&table.to_text()),
        Format::Csv => sink.write_str(&table.to_csv()?),
        Format::Json => sink.write_str(&table.to_json(meta_for(
            "asym",
            json!({"p": args.p.0, "lambda": args.lambda.0, "N": args.n.0}),
        ))),
        Format::Svg => unreachable!("handled above"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn residuals_approach_m1() {
        let args = AsymArgs {
            p: crate::IndexList(vec![3]),
            lambda: FloatList(vec![2.0]),
            n: crate::IndexList(vec![10, 20, 40]),
        };
        let rows = scan(&args).unwrap();
        let gaps: Vec<f64> = rows.iter().map(|r| (r.residual - r.m1).abs()).collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
        assert!(gaps[2] / rows[2].m1.abs() < 5e-2);
    }

    #[test]
    fn lambda_zero_rows_vanish() {
        let args = AsymArgs {
            p: crate::IndexList(vec![1, 2]),
            lambda: FloatList(vec![0.0]),
            n: crate::IndexList(vec![5]),
        };
        let rows = scan(&args).unwrap();
        assert!(rows.iter().all(|r| r.scaled == 0.0 && r.residual == 0.0));
    }
}
