//! `septic search`.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use septic_core::search::{
    hits_tsv, run_search, validate_prime, Checkpoint, RunOptions, SearchMode, SearchReport,
    SearchTask,
};

use crate::{emit, exit, write_file, OutputArgs};

#[derive(Debug, Clone, Args)]
pub struct SearchArgs {
    #[arg(long)]
    pub prime: u64,
    /// Every tuple of the field (the default).
    #[arg(long, conflicts_with = "sample")]
    pub exhaustive: bool,
    /// A seeded random subset of this many tuples.
    #[arg(long, value_name = "N")]
    pub sample: Option<u64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Worker threads; defaults to all cores.
    #[arg(long, env = "SEPTIC_THREADS")]
    pub threads: Option<usize>,
    /// Pair reductions allowed per Groebner basis.
    #[arg(long)]
    pub budget: Option<u64>,
    /// Record hits from this plane node count upward.
    #[arg(long, default_value_t = 15)]
    pub min_nodes: i64,
    /// Resume from this checkpoint and keep updating it.
    #[arg(long)]
    pub resume: Option<PathBuf>,
    /// Print the JSON envelope instead of the text summary.
    #[arg(long)]
    pub json: bool,
    /// Directory for `report.json`, `hits.tsv` and `checkpoint.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl SearchArgs {
    pub fn task(&self) -> SearchTask {
        let mode = match self.sample {
            Some(n) => SearchMode::Sample { n, seed: self.seed },
            None => SearchMode::Exhaustive,
        };
        let mut task = SearchTask::new(self.prime, mode);
        task.min_nodes = self.min_nodes;
        if let Some(b) = self.budget {
            task.budget = b;
        }
        task
    }
}

pub fn summary(report: &SearchReport) -> String {
    let t = &report.tally;
    let mut s = String::new();
    let max = report.max_nodes.map_or("-".to_string(), |m| m.to_string());
    let _ = writeln!(
        s,
        "F{}: {} tuples, max plane nodes {max}",
        report.p, t.tuples
    );
    let _ = writeln!(
        s,
        "degenerate {}, budget exhausted {}",
        t.degenerate, t.budget_exhausted
    );
    let hist: Vec<String> = t
        .histogram
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    let _ = writeln!(s, "histogram {}", hist.join(" "));
    if report.flagged_prime {
        let _ = writeln!(s, "note: p = 5 is a special prime; counts may not lift");
    }
    s.push_str(&hits_tsv(report));
    s
}

pub fn run(args: &SearchArgs, out: &mut dyn Write) -> Result<i32> {
    if let Err(e) = validate_prime(args.prime) {
        eprintln!("error: {e}");
        return Ok(exit::INVALID_PRIME);
    }
    let task = args.task();
    let resume = args.resume.as_deref().map(Checkpoint::load).transpose()?;
    let checkpoint_path = match (&args.resume, &args.out) {
        (Some(p), _) => Some(p.clone()),
        (None, Some(dir)) => {
            std::fs::create_dir_all(dir)?;
            Some(dir.join("checkpoint.json"))
        }
        (None, None) => None,
    };
    let opts = RunOptions {
        threads: args.threads,
        checkpoint: checkpoint_path.as_deref(),
        resume,
    };
    let report = run_search(&task, opts)?;
    let code = if report.tally.budget_exhausted > 0 {
        exit::BUDGET_EXHAUSTED
    } else {
        exit::OK
    };
    let output = OutputArgs {
        json: args.json,
        out: None,
    };
    emit(out, &output, "search", code, &report, &summary(&report))?;
    if let Some(dir) = &args.out {
        std::fs::create_dir_all(dir)?;
        write_file(
            &dir.join("report.json"),
            &crate::envelope_json("search", code, &report)?,
        )?;
        write_file(&dir.join("hits.tsv"), &hits_tsv(&report))?;
    }
    Ok(code)
}
