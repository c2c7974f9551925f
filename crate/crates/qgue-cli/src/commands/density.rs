//! `qgue density` — sampled limiting density profiles, CSV or SVG with the
//! support marker at |x| = 1.

use clap::Args;
use serde_json::json;

use qgue_core::spectral::sample_profile;

use crate::output::{meta_for, svg_plot, Series, SeriesKind, Sink, Table, SERIES_COLORS};
use crate::{CliError, FloatList, Format, GlobalOpts};

#[derive(Clone, Debug, Args)]
pub struct DensityArgs {
    /// Scaling parameters lambda (`log2` accepted).
    #[arg(long, default_value = "0.3,log2,2")]
    pub lambda: FloatList,
    /// Density order: 0 for the limit, 1 for the genus-one correction.
    #[arg(long, default_value_t = 0)]
    pub order: u8,
    /// Number of grid points on (-1, 1).
    #[arg(long, default_value_t = 401)]
    pub grid: usize,
}

pub fn run(args: &DensityArgs, global: &GlobalOpts) -> Result<(), CliError> {
    let mut profiles = Vec::new();
    for &lambda in &args.lambda.0 {
        if lambda <= 0.0 {
            return Err(CliError::Config(format!("lambda = {lambda} must be > 0")));
        }
        profiles.push(sample_profile(lambda, args.order, args.grid)?);
    }
    let sink = Sink::new(global.out.clone());

    if global.format == Format::Svg {
        let series: Vec<Series> = profiles
            .iter()
            .enumerate()
            .map(|(i, p)| Series {
                label: format!("lambda = {:.4}", p.lambda),
                kind: SeriesKind::Line,
                points: p.grid.clone(),
                color: SERIES_COLORS[i % SERIES_COLORS.len()],
            })
            .collect();
        let svg = svg_plot(
            &series,
            &[-1.0, 1.0],
            &format!("limiting density, order {}", args.order),
        );
        return sink.write_str(&svg);
    }

    let mut table = Table::new(&["x", "value", "order", "lambda"]);
    for p in &profiles {
        for &(x, v) in &p.grid {
            table.push(vec![
                format!("{x:.12}"),
                format!("{v:.15e}"),
                args.order.to_string(),
                p.lambda.to_string(),
            ]);
        }
    }
    match global.format {
        Format::Text => sink.write_str(&table.to_text()),
        Format::Csv => sink.write_str(&table.to_csv()?),
        Format::Json => sink.write_str(&table.to_json(meta_for(
            "density",
            json!({
                "lambda": args.lambda.0,
                "order": args.order,
                "grid": args.grid,
                "support_edges": profiles.iter().map(|p| p.support_edge).collect::<Vec<_>>(),
                "regularized": profiles.iter().any(|p| p.regularized),
            }),
        ))),
        Format::Svg => unreachable!("handled above"),
    }
}
