//! `qgue moments` — exact moment tables with provenance.

use clap::Args;
use serde_json::json;

use qgue_core::moments::{
    gue_moment_positive, qgue_moment_alternating, qgue_moment_positive, Kind, MomentTable,
    Provenance, Value,
};
use qgue_core::moments::gue_moment_alternating;

use crate::output::{meta_for, Sink, Table};
use crate::{CliError, Format, GlobalOpts, IndexList, Rational};

#[derive(Clone, Debug, Args)]
pub struct MomentsArgs {
    /// Ensemble: gue or qgue.
    #[arg(long, value_parser = ["gue", "qgue"])]
    pub kind: String,
    /// Matrix sizes, e.g. `4` or `1..8`.
    #[arg(long = "N", visible_alias = "n")]
    pub n: IndexList,
    /// Half moment orders p (the moment is of order 2p).
    #[arg(long)]
    pub p: IndexList,
    /// Evaluate q-symbolic values exactly at this rational q, e.g. `1/2`.
    #[arg(long = "at-q")]
    pub at_q: Option<Rational>,
}

pub fn run(args: &MomentsArgs, global: &GlobalOpts) -> Result<(), CliError> {
    if args.kind == "gue" && args.at_q.is_some() {
        return Err(CliError::Config("--at-q applies only to --kind qgue".into()));
    }
    let kind = if args.kind == "gue" { Kind::Gue } else { Kind::QGueSymbolic };
    let mut table = MomentTable::new(kind);
    for &n in &args.n.0 {
        if n == 0 {
            return Err(CliError::Config("N must be >= 1".into()));
        }
        for &p in &args.p.0 {
            // positive route fills the table; the alternating route re-inserts
            // and is cross-checked by the table's consistency rule
            let (value, alt) = match kind {
                Kind::Gue => (
                    Value::Int(gue_moment_positive(n, p)),
                    (p >= 1).then(|| Value::Int(gue_moment_alternating(n, p))),
                ),
                _ => (
                    Value::Poly(qgue_moment_positive(n as usize, p as usize)),
                    (p >= 1).then(|| Value::Poly(qgue_moment_alternating(n as usize, p as usize))),
                ),
            };
            table
                .insert(n, p, value, Provenance::Positive)
                .map_err(|e| CliError::Verification(e.to_string()))?;
            if let Some(alt) = alt {
                table
                    .insert(n, p, alt, Provenance::Alternating)
                    .map_err(|e| CliError::Verification(e.to_string()))?;
            }
        }
    }

    let mut out = Table::new(&["kind", "N", "p", "provenance", "value"]);
    for (n, p, value, prov) in table.iter() {
        let rendered = match (value, &args.at_q) {
            (Value::Poly(poly), Some(q)) => poly.eval_rat(&q.0).to_string(),
            (v, _) => v.to_string(),
        };
        out.push(vec![
            kind.to_string(),
            n.to_string(),
            p.to_string(),
            prov.to_string(),
            rendered,
        ]);
    }

    let sink = Sink::new(global.out.clone());
    match global.format {
        Format::Text => {
            // a single requested value prints bare, larger requests as a table
            if out.rows.len() == 1 {
                sink.write_str(&format!("{}\n", out.rows[0][4]))
            } else {
                sink.write_str(&out.to_text())
            }
        }
        Format::Csv => sink.write_str(&out.to_csv()?),
        Format::Json => {
            let meta = meta_for(
                "moments",
                json!({
                    "kind": args.kind,
                    "N": args.n.0,
                    "p": args.p.0,
                    "at_q": args.at_q.as_ref().map(|r| r.0.to_string()),
                }),
            );
            sink.write_str(&out.to_json(meta))
        }
        Format::Svg => Err(CliError::Config("moments has no svg form".into())),
    }
}
