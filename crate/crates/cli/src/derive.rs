//! `septic derive`.

use std::fmt::Write as _;
use std::io::Write;

use anyhow::Result;
use clap::Args;
use septic_core::derivation::{derive_all, DerivationError, DerivationTranscript};
use septic_core::groebner::Budget;
use septic_core::known::KNOWN_ROWS;
use serde::Serialize;

use crate::{emit, exit, OutputArgs};

#[derive(Debug, Clone, Args)]
pub struct DeriveArgs {
    /// Evaluate the condition at every (p, alpha) of the known parameter table.
    #[arg(long)]
    pub check_table1: bool,
    /// Report both branches of the conic through (0:0:1).
    #[arg(long)]
    pub both_signs: bool,
    /// Pair reductions per Groebner basis.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Degree the condition is expected to have.
    #[arg(long, default_value_t = 150)]
    pub expect_degree: usize,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeriveResult {
    pub transcript: DerivationTranscript,
    pub expected_degree: usize,
    pub degree_matches: bool,
    pub divisible: bool,
    pub table1_vanishes: Option<bool>,
}

fn text(r: &DeriveResult) -> String {
    let t = &r.transcript;
    let mut s = String::new();
    let _ = writeln!(s, "C0 = {}", t.c0);
    let _ = writeln!(s, "C0 matches closed form: {}", t.c0_matches_closed_form);
    let _ = writeln!(s, "beta^2 = {}", t.beta_squared);
    let _ = writeln!(s, "beta^2 on the locus: {}", t.beta_squared_on_locus);
    for b in &t.branches {
        let _ = writeln!(s, "branch {}: k = {}", b.sign.symbol(), b.k);
        let _ = writeln!(s, "  q vanishes on the locus: {:?}", b.q_vanishes_on_locus);
    }
    let _ = writeln!(
        s,
        "cond degree {} (expected {}), repeated part degree {}",
        t.cond_degree, r.expected_degree, t.cond_repeated_part_degree
    );
    let _ = writeln!(
        s,
        "cond mod {} remainder: {}",
        crate::MINPOLY,
        t.minpoly_remainder
    );
    if let Some(v) = r.table1_vanishes {
        let _ = writeln!(s, "cond vanishes at every table row: {v}");
    }
    s
}

pub fn run(args: &DeriveArgs, out: &mut dyn Write) -> Result<i32> {
    let rows: Vec<(u64, i64)> = if args.check_table1 {
        KNOWN_ROWS.iter().map(|r| (r.p, r.alpha)).collect()
    } else {
        Vec::new()
    };
    let budget = args.budget.map_or(Budget::UNLIMITED, Budget::pairs);
    let mut transcript = match derive_all(&rows, &budget) {
        Ok(d) => d.transcript,
        Err(DerivationError::Mismatch(m)) => {
            eprintln!("error: {m}");
            return Ok(exit::FORMULA_MISMATCH);
        }
        Err(DerivationError::Groebner(e)) => {
            eprintln!("error: {e}");
            return Ok(exit::BUDGET_EXHAUSTED);
        }
        Err(e) => return Err(e.into()),
    };
    if !args.both_signs {
        transcript.branches.truncate(1);
    }
    let table1_vanishes = args
        .check_table1
        .then(|| transcript.rows_vanishing.iter().all(|r| r.cond_vanishes));
    let result = DeriveResult {
        degree_matches: transcript.cond_degree == args.expect_degree,
        divisible: transcript.minpoly_remainder == "0",
        expected_degree: args.expect_degree,
        table1_vanishes,
        transcript,
    };
    let ok = result.degree_matches && result.divisible && result.table1_vanishes != Some(false);
    let code = if ok { exit::OK } else { exit::FORMULA_MISMATCH };
    emit(out, &args.output, "derive", code, &result, &text(&result))?;
    Ok(code)
}
