//! `qgue genus` — tables of the genus coefficients E_g(p).

use clap::Args;
use serde_json::json;

use qgue_core::moments::genus_table;

use crate::output::{meta_for, Sink, Table};
use crate::{CliError, Format, GlobalOpts};

#[derive(Clone, Debug, Args)]
pub struct GenusArgs {
    /// Largest half-order p.
    #[arg(long = "p-max", default_value_t = 8)]
    pub p_max: u64,
    /// Largest genus (default: everything nonzero, g <= (p+1)/2).
    #[arg(long = "g-max")]
    pub g_max: Option<u64>,
}

pub fn run(args: &GenusArgs, global: &GlobalOpts) -> Result<(), CliError> {
    let mut table = Table::new(&["g", "p", "value"]);
    for e in genus_table(args.p_max, args.g_max) {
        table.push(vec![e.g.to_string(), e.p.to_string(), e.value.to_string()]);
    }
    let sink = Sink::new(global.out.clone());
    match global.format {
        Format::Text => sink.write_str(&table.to_text()),
        Format::Csv => sink.write_str(&table.to_csv()?),
        Format::Json => sink.write_str(
            &table.to_json(meta_for("genus", json!({"p_max": args.p_max, "g_max": args.g_max}))),
        ),
        Format::Svg => Err(CliError::Config("genus has no svg form".into())),
    }
}
