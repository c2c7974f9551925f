//! `qgue verify` — run the exact-identity suite and the numeric suite,
//! reporting one line per check. Exit 0 only when everything passed;
//! identity violations exit 1, budget/tolerance infeasibility exits 3.

use std::f64::consts::LN_2;
use std::time::Instant;

use clap::Args;
use num_traits::ToPrimitive;
use rayon::prelude::*;

use qgue_core::enumor::{marked_closer_check, matching_sum, refined_identity_check};
use qgue_core::moments::{
    genus_expansion_check, gue_moment_alternating, gue_moment_hypergeometric, gue_moment_positive,
    gue_partial_alternating, gue_partial_positive, harer_zagier_check, odd_vanishing_check,
    qgue_alternative_forms, qgue_cohen_total, qgue_moment_alternating, qgue_moment_positive,
    qgue_partial_alternating, qgue_partial_positive, scaled_moment, topological_recursion_check,
    AlternativeForm,
};
use qgue_core::qcore::number::BigRat;
use qgue_core::spectral::asym::asym_coeffs;
use qgue_core::spectral::{density_moment_check, lattice_density, Tolerances};

use crate::output::{meta_with_globals, Sink};
use crate::report::{CheckResult, CheckStatus, VerifyReport};
use crate::{CliError, Format, GlobalOpts};

#[derive(Clone, Debug, Args)]
pub struct VerifyArgs {
    /// Which suite to run.
    #[arg(long, value_parser = ["exact", "numeric", "all"], default_value = "all")]
    pub suite: String,
    /// Largest half-order p for the exact identities.
    #[arg(long = "max-p", default_value_t = 4)]
    pub max_p: usize,
    /// Largest polynomial index j for the per-index identities.
    #[arg(long = "max-j", default_value_t = 5)]
    pub max_j: usize,
    /// Largest matrix size N for degeneration checks.
    #[arg(long = "max-n", default_value_t = 8)]
    pub max_n: usize,
}

/// A check either finds a counterexample (the identity fails) or cannot run
/// within the configured resources.
pub enum CheckError {
    Mismatch(String),
    Infeasible(String),
}

impl CheckError {
    fn infeasible(e: impl std::fmt::Display) -> Self {
        CheckError::Infeasible(e.to_string())
    }
}

type CheckFn = Box<dyn Fn() -> Result<(), CheckError> + Send + Sync>;

struct Check {
    name: &'static str,
    params: String,
    run: CheckFn,
}

fn exact_suite(args: &VerifyArgs, budget: u64) -> Vec<Check> {
    let mut checks = Vec::new();
    let (max_p, max_j, max_n) = (args.max_p, args.max_j, args.max_n);

    checks.push(Check {
        name: "triple identity (pos = alt = oracle)",
        params: format!("p<={max_p} j<={max_j}"),
        run: Box::new(move || {
            for p in 1..=max_p {
                for j in 0..=max_j {
                    let pos = qgue_partial_positive(p, j);
                    let alt = qgue_partial_alternating(p, j);
                    let ora = matching_sum(p, j, budget).map_err(CheckError::infeasible)?;
                    if pos != alt || pos != ora {
                        return Err(CheckError::Mismatch(format!(
                            "(p={p}, j={j}): pos {pos}; alt {alt}; oracle {ora}"
                        )));
                    }
                }
            }
            Ok(())
        }),
    });

    checks.push(Check {
        name: "q = 1 degeneration",
        params: format!("N<={max_n} p<={max_p}"),
        run: Box::new(move || {
            for n in 1..=max_n {
                for p in 1..=max_p {
                    let gue = BigRat::from_integer(gue_moment_positive(n as u64, p as u64));
                    let qpos = qgue_moment_positive(n, p).eval_at_one();
                    let qalt = qgue_moment_alternating(n, p).eval_at_one();
                    if qpos != gue || qalt != gue {
                        return Err(CheckError::Mismatch(format!(
                            "(N={n}, p={p}): {qpos} / {qalt} vs GUE {gue}"
                        )));
                    }
                }
            }
            Ok(())
        }),
    });

    checks.push(Check {
        name: "GUE route agreement (pos/alt/2F1, per-j)",
        params: format!("N<={max_n} p<={max_p} j<={max_j}"),
        run: Box::new(move || {
            for n in 1..=max_n as u64 {
                for p in 1..=max_p as u64 {
                    let a = gue_moment_positive(n, p);
                    let b = gue_moment_alternating(n, p);
                    let c = gue_moment_hypergeometric(n, p);
                    if a != b || a != c {
                        return Err(CheckError::Mismatch(format!(
                            "(N={n}, p={p}): {a} / {b} / {c}"
                        )));
                    }
                }
            }
            for p in 0..=max_p as u64 {
                for j in 0..=max_j as u64 {
                    let a = gue_partial_positive(p, j);
                    let b = gue_partial_alternating(p, j);
                    if a != b {
                        return Err(CheckError::Mismatch(format!(
                            "per-j (p={p}, j={j}): {a} vs {b}"
                        )));
                    }
                }
            }
            Ok(())
        }),
    });

    checks.push(Check {
        name: "Harer-Zagier recurrence",
        params: "p<=20 N<=20".into(),
        run: Box::new(|| {
            if harer_zagier_check(20, 20) {
                Ok(())
            } else {
                Err(CheckError::Mismatch("recurrence violated on the 20 x 20 grid".into()))
            }
        }),
    });

    checks.push(Check {
        name: "genus expansion + odd vanishing",
        params: "p<=12".into(),
        run: Box::new(|| {
            for p in 0..=12 {
                if !genus_expansion_check(p) {
                    return Err(CheckError::Mismatch(format!("expansion mismatch at p={p}")));
                }
                if !odd_vanishing_check(p) {
                    return Err(CheckError::Mismatch(format!("odd coefficient at p={p}")));
                }
            }
            Ok(())
        }),
    });

    checks.push(Check {
        name: "topological recursion",
        params: "g<=4 p<=10".into(),
        run: Box::new(|| {
            if topological_recursion_check(4, 10) {
                Ok(())
            } else {
                Err(CheckError::Mismatch("recursion violated".into()))
            }
        }),
    });

    checks.push(Check {
        name: "refined class identity",
        params: format!("p<={} j<={max_j}", max_p.min(3)),
        run: Box::new(move || {
            for p in 1..=max_p.min(3) {
                for j in 0..=max_j {
                    for i in 0..=p.min(j) {
                        let chk = refined_identity_check(p, j, i, budget)
                            .map_err(CheckError::infeasible)?;
                        if !chk.ok() {
                            return Err(CheckError::Mismatch(format!(
                                "(p={p}, j={j}, i={i}): {} vs {}",
                                chk.lhs, chk.rhs
                            )));
                        }
                    }
                }
            }
            Ok(())
        }),
    });

    checks.push(Check {
        name: "marked-closer identity (conjectural)",
        params: "p+j<=8 r<=2".into(),
        run: Box::new(move || {
            for p in 1..=7usize {
                for j in 0..=(8 - p) {
                    for r in 0..=2usize {
                        let chk = marked_closer_check(p, j, r, budget)
                            .map_err(CheckError::infeasible)?;
                        if !chk.ok() {
                            return Err(CheckError::Mismatch(format!(
                                "(p={p}, j={j}, r={r}): {} vs {}",
                                chk.lhs, chk.rhs
                            )));
                        }
                    }
                }
            }
            Ok(())
        }),
    });

    checks.push(Check {
        name: "alternative numeric forms",
        params: "flsy + cohen at q in {0.3, 0.5}".into(),
        run: Box::new(move || {
            for &q in &[0.3f64, 0.5] {
                for p in 1..=max_p.min(3) {
                    for j in 0..=max_j.min(4) {
                        let sym = qgue_partial_positive(p, j).eval_f64(q);
                        for mode in [AlternativeForm::FlsyDoubleSum, AlternativeForm::Cohen3Phi2] {
                            let alt = qgue_alternative_forms(p, j, mode, q)
                                .map_err(CheckError::infeasible)?;
                            if (alt - sym).abs() > 1e-10 * sym.abs().max(1.0) {
                                return Err(CheckError::Mismatch(format!(
                                    "{mode} at (p={p}, j={j}, q={q}): {alt} vs {sym}"
                                )));
                            }
                        }
                    }
                    let n = 4.min(max_n.max(1));
                    let sym = qgue_moment_positive(n, p).eval_f64(q);
                    let coh = qgue_cohen_total(n, p, q).map_err(CheckError::infeasible)?;
                    if (coh - sym).abs() > 1e-10 * sym.abs().max(1.0) {
                        return Err(CheckError::Mismatch(format!(
                            "cohen total at (N={n}, p={p}, q={q}): {coh} vs {sym}"
                        )));
                    }
                }
            }
            Ok(())
        }),
    });

    checks
}

fn numeric_suite(args: &VerifyArgs, tol: f64) -> Vec<Check> {
    let mut checks = Vec::new();
    let max_p = args.max_p;

    checks.push(Check {
        name: "two-term expansion convergence",
        params: "p<=4, lambda in {0.3, log2, 2}".into(),
        run: Box::new(|| {
            for p in 1..=4u32 {
                for &lambda in &[0.3, LN_2, 2.0] {
                    let c = asym_coeffs(p, lambda).map_err(CheckError::infeasible)?;
                    let err = |n: usize| {
                        (scaled_moment(n, p as usize, lambda) - c.m0 * n as f64 - c.m1 / n as f64)
                            .abs()
                    };
                    let (e1, e2) = (err(100), err(200));
                    if e1 / e2 < 6.0 {
                        return Err(CheckError::Mismatch(format!(
                            "(p={p}, lambda={lambda}): E(100)/E(200) = {} < 6",
                            e1 / e2
                        )));
                    }
                }
            }
            Ok(())
        }),
    });

    checks.push(Check {
        name: "density moments vs M0",
        params: format!("p<={} lambda in {{0.3, log2, 2}}", max_p.min(4)),
        run: Box::new(move || {
            let tols = Tolerances::default();
            for &lambda in &[0.3, LN_2, 2.0] {
                let d = density_moment_check(0.0, lambda, &tols).map_err(CheckError::infeasible)?;
                if d >= 1e-10 {
                    return Err(CheckError::Mismatch(format!(
                        "normalization gap {d:e} at lambda={lambda}"
                    )));
                }
                for p in 1..=max_p.min(4) {
                    let d = density_moment_check(p as f64, lambda, &tols)
                        .map_err(CheckError::infeasible)?;
                    if d >= tol {
                        return Err(CheckError::Mismatch(format!(
                            "(p={p}, lambda={lambda}): gap {d:e}"
                        )));
                    }
                }
            }
            Ok(())
        }),
    });

    checks.push(Check {
        name: "lattice density consistency",
        params: "N<=4 p<=3 q in {0.3, 0.5}".into(),
        run: Box::new(|| {
            for &q in &[0.3f64, 0.5] {
                for n in 1..=4usize {
                    let ld = lattice_density(n, q, 220, 1e-11).map_err(CheckError::infeasible)?;
                    let gap = (ld.normalization() - n as f64).abs();
                    if gap >= 1e-10 {
                        return Err(CheckError::Mismatch(format!(
                            "(N={n}, q={q}): normalization gap {gap:e}"
                        )));
                    }
                    for p in 1..=3usize {
                        let got = ld.jackson_moment(p);
                        let want =
                            (1.0 - q).powi(p as i32) * qgue_moment_positive(n, p).eval_f64(q);
                        if (got - want).abs() >= 1e-10 * want.max(1.0) {
                            return Err(CheckError::Mismatch(format!(
                                "(N={n}, p={p}, q={q}): {got} vs {want}"
                            )));
                        }
                    }
                }
            }
            Ok(())
        }),
    });

    checks.push(Check {
        name: "continuum limits (Catalan / genus-one)",
        params: "p<=5 at lambda=1e-3".into(),
        run: Box::new(|| {
            use qgue_core::moments::genus_coefficient;
            use qgue_core::spectral::continuum_limit_check;
            for p in 1..=5u32 {
                let (e0, e1) = continuum_limit_check(p, 1e-3).map_err(CheckError::infeasible)?;
                let cp = genus_coefficient(0, p as u64).to_f64().unwrap();
                let g1 = genus_coefficient(1, p as u64).to_f64().unwrap();
                if ((e0 - cp) / cp).abs() >= 1e-2 || (e1 - g1).abs() >= 1e-2 * g1.abs().max(1.0) {
                    return Err(CheckError::Mismatch(format!(
                        "p={p}: ({e0}, {e1}) vs ({cp}, {g1})"
                    )));
                }
            }
            Ok(())
        }),
    });

    checks
}

/// Verbose debugging aid: dump small enumerations line by line, e.g.
/// `n=3 arcs=(1,3) cros=1 nest=0`.
fn dump_small_enumerations(max_p: usize, max_j: usize) {
    use qgue_core::enumor::{enumerate_matchings, matching_count};
    for p in 1..=max_p {
        for j in 0..=max_j {
            let a = 2 * p + j;
            if matching_count(a, p) > 200.into() {
                continue;
            }
            let mut it = enumerate_matchings(a, p, Some(j));
            let mut count = 0usize;
            while let Some(m) = it.next() {
                let s = it.current_stats();
                eprintln!("{m} cros={} nest={}", s.cros, s.nest);
                count += 1;
            }
            eprintln!("# Mat({a},{p}) with no closer <= {j}: {count} matchings");
        }
    }
}

pub fn run(args: &VerifyArgs, global: &GlobalOpts) -> Result<(), CliError> {
    let tol = global.tol.unwrap_or(1e-8);
    if global.verbose > 0 && (args.suite == "exact" || args.suite == "all") {
        dump_small_enumerations(args.max_p, args.max_j);
    }
    let mut checks = Vec::new();
    if args.suite == "exact" || args.suite == "all" {
        checks.extend(exact_suite(args, global.budget));
    }
    if args.suite == "numeric" || args.suite == "all" {
        checks.extend(numeric_suite(args, tol));
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(global.jobs)
        .build()
        .map_err(|e| CliError::Config(e.to_string()))?;
    // checks fan out over the pool; report assembly stays single-threaded
    // and in declaration order
    let results: Vec<CheckResult> = pool.install(|| {
        checks
            .par_iter()
            .map(|check| {
                let start = Instant::now();
                let (status, witness) = match (check.run)() {
                    Ok(()) => (CheckStatus::Pass, None),
                    Err(CheckError::Mismatch(w)) => (CheckStatus::Fail, Some(w)),
                    Err(CheckError::Infeasible(w)) => (CheckStatus::Infeasible, Some(w)),
                };
                CheckResult {
                    name: check.name.to_string(),
                    params: check.params.clone(),
                    status,
                    witness,
                    elapsed: start.elapsed(),
                }
            })
            .collect()
    });

    let report = VerifyReport { checks: results };
    let sink = Sink::new(global.out.clone());
    match global.format {
        Format::Json => {
            let doc = serde_json::json!({
                "meta": meta_with_globals("verify", serde_json::json!({
                    "suite": args.suite,
                    "max_p": args.max_p,
                    "max_j": args.max_j,
                    "max_n": args.max_n,
                }), global),
                "report": report.to_json(),
            });
            sink.write_str(&format!("{}\n", serde_json::to_string_pretty(&doc).unwrap()))?;
        }
        _ => sink.write_str(&report.to_text())?,
    }
    if let Some(infeasible) = report.any_infeasible() {
        return Err(CliError::Infeasible(format!(
            "{} [{}]: {}",
            infeasible.name,
            infeasible.params,
            infeasible.witness.clone().unwrap_or_default()
        )));
    }
    if let Some(fail) = report.first_failure() {
        return Err(CliError::Verification(format!(
            "{} [{}]: {}",
            fail.name,
            fail.params,
            fail.witness.clone().unwrap_or_default()
        )));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use qgue_core::QPoly;

    /// Harness sanity: a deliberately corrupted comparison must fail and
    /// carry a witness.
    #[test]
    fn injected_fault_is_caught() {
        let start = Instant::now();
        let lhs = qgue_partial_positive(2, 1);
        let rhs = &lhs + &QPoly::q().pow(9); // flip one coefficient
        let outcome: Result<(), CheckError> = if lhs == rhs {
            Ok(())
        } else {
            Err(CheckError::Mismatch(format!("(p=2, j=1): {lhs} vs {rhs}")))
        };
        let (status, witness) = match outcome {
            Ok(()) => (CheckStatus::Pass, None),
            Err(CheckError::Mismatch(w)) => (CheckStatus::Fail, Some(w)),
            Err(CheckError::Infeasible(w)) => (CheckStatus::Infeasible, Some(w)),
        };
        let report = VerifyReport {
            checks: vec![CheckResult {
                name: "injected fault".into(),
                params: "p=2 j=1".into(),
                status,
                witness,
                elapsed: start.elapsed(),
            }],
        };
        assert!(!report.all_passed());
        let w = report.first_failure().unwrap().witness.as_ref().unwrap();
        assert!(w.contains("(p=2, j=1)"), "witness: {w}");
        assert!(report.any_infeasible().is_none());
    }

    #[test]
    fn default_exact_suite_passes_at_small_ranges() {
        let args = VerifyArgs {
            suite: "exact".into(),
            max_p: 1,
            max_j: 1,
            max_n: 2,
        };
        for check in exact_suite(&args, qgue_core::enumor::DEFAULT_BUDGET) {
            assert!((check.run)().is_ok(), "{} failed", check.name);
        }
    }

    #[test]
    fn budget_exhaustion_is_infeasible_not_failure() {
        let args = VerifyArgs {
            suite: "exact".into(),
            max_p: 5,
            max_j: 5,
            max_n: 2,
        };
        let checks = exact_suite(&args, 10);
        let triple = &checks[0];
        match (triple.run)() {
            Err(CheckError::Infeasible(_)) => {}
            _ => panic!("expected infeasible outcome"),
        }
    }
}
