//! `qgue lattice` — finite-N density on the q-lattice plus normalization
//! and moment-consistency summary lines.

use clap::Args;
use serde_json::json;

use qgue_core::moments::qgue_moment_positive;
use qgue_core::spectral::lattice_density;

use crate::output::{meta_for, Sink, Table};
use crate::{CliError, Format, GlobalOpts};

#[derive(Clone, Debug, Args)]
pub struct LatticeArgs {
    /// Matrix size.
    #[arg(long = "N", visible_alias = "n")]
    pub n: usize,
    /// Lattice base q in (0, 1).
    #[arg(long)]
    pub q: f64,
    /// Truncation index: lattice points are ±q^k for k = 0..=K.
    #[arg(long, default_value_t = 220)]
    pub k: usize,
    /// Largest half-order p for the moment consistency summary.
    #[arg(long = "p-max", default_value_t = 3)]
    pub p_max: usize,
}

pub fn run(args: &LatticeArgs, global: &GlobalOpts) -> Result<(), CliError> {
    if args.n == 0 {
        return Err(CliError::Config("N must be >= 1".into()));
    }
    if !(0.0 < args.q && args.q < 1.0) {
        return Err(CliError::Config(format!("q = {} must lie in (0, 1)", args.q)));
    }
    let tol = global.tol.unwrap_or(1e-10);
    let ld = lattice_density(args.n, args.q, args.k, tol)?;

    let mut table = Table::new(&["k", "x", "weight", "density"]);
    for row in &ld.rows {
        table.push(vec![
            row.k.to_string(),
            format!("{:.15e}", row.x),
            format!("{:.15e}", row.weight),
            format!("{:.15e}", row.density),
        ]);
    }

    // consistency summaries: mass against N, Jackson moments against the
    // exact symbolic values at the same q
    let norm = ld.normalization();
    let mut summaries = vec![format!(
        "normalization: {:.12} (target {}, gap {:.3e}, tail bound {:.3e})",
        norm,
        args.n,
        (norm - args.n as f64).abs(),
        ld.tail_bound,
    )];
    for p in 1..=args.p_max {
        let got = ld.jackson_moment(p);
        let want = (1.0 - args.q).powi(p as i32) * qgue_moment_positive(args.n, p).eval_f64(args.q);
        summaries.push(format!(
            "moment 2p={}: jackson {:.12} vs exact {:.12} (gap {:.3e})",
            2 * p,
            got,
            want,
            (got - want).abs()
        ));
    }

    let sink = Sink::new(global.out.clone());
    match global.format {
        Format::Text => {
            let mut out = table.to_text();
            for s in &summaries {
                out.push_str(s);
                out.push('\n');
            }
            sink.write_str(&out)
        }
        Format::Csv => {
            // keep the CSV body strictly tabular; summaries go to stderr
            for s in &summaries {
                eprintln!("{s}");
            }
            sink.write_str(&table.to_csv()?)
        }
        Format::Json => sink.write_str(&table.to_json(meta_for(
            "lattice",
            json!({
                "N": args.n,
                "q": args.q,
                "K": ld.truncation,
                "tail_bound": ld.tail_bound,
                "summaries": summaries,
            }),
        ))),
        Format::Svg => Err(CliError::Config("lattice has no svg form".into())),
    }
}
