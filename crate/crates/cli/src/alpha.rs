//! `septic alpha-real`.

use std::fmt::Write as _;
use std::io::Write;

use anyhow::{anyhow, Result};
use clap::Args;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use septic_core::arith::{parse_rational, real_root_isolate, to_decimal, IsolatingInterval};
use septic_core::derivation::minpoly;
use serde::Serialize;

use crate::{emit, exit, OutputArgs};

#[derive(Debug, Clone, Args)]
pub struct AlphaArgs {
    /// Interval width: a decimal such as `1e-8` or a fraction such as `1/100`.
    #[arg(long, default_value = "1e-8")]
    pub tol: String,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Clone, Serialize)]
pub struct AlphaResult {
    pub tol: String,
    pub real_roots: usize,
    pub intervals: Vec<IsolatingInterval>,
    pub decimal: Vec<[String; 2]>,
}

/// Parses `n`, `n/d`, `1.25`, `1e-8` or `2.5E3` into an exact rational.
pub fn parse_tolerance(s: &str) -> Option<BigRational> {
    if s.contains('/') {
        return parse_rational(s);
    }
    let (mant, exp) = match s.split_once(['e', 'E']) {
        Some((m, e)) => (m, e.parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mant.split_once('.').unwrap_or((mant, ""));
    let digits: BigInt = format!("{int}{frac}").parse().ok()?;
    let shift = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    Some(if shift >= 0 {
        BigRational::from_integer(digits * ten.pow(shift as u32))
    } else {
        BigRational::new(digits, ten.pow((-shift) as u32))
    })
}

pub fn isolate(tol: &BigRational) -> AlphaResult {
    let intervals = real_root_isolate(&minpoly(), tol);
    let digits = 10;
    AlphaResult {
        tol: tol.to_string(),
        real_roots: intervals.len(),
        decimal: intervals
            .iter()
            .map(|i| [to_decimal(&i.lo, digits), to_decimal(&i.hi, digits)])
            .collect(),
        intervals,
    }
}

pub fn run(args: &AlphaArgs, out: &mut dyn Write) -> Result<i32> {
    let tol = parse_tolerance(&args.tol)
        .filter(|t| t.is_positive())
        .ok_or_else(|| anyhow!("tolerance must be a positive number, got {}", args.tol))?;
    let result = isolate(&tol);
    let mut s = String::new();
    let _ = writeln!(s, "real roots of {}: {}", crate::MINPOLY, result.real_roots);
    for (i, d) in result.intervals.iter().zip(&result.decimal) {
        let _ = writeln!(s, "[{}, {}]  ({} .. {})", i.lo, i.hi, d[0], d[1]);
    }
    emit(out, &args.output, "alpha-real", exit::OK, &result, &s)?;
    Ok(exit::OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tolerance_forms() {
        let q = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(parse_tolerance("1e-8"), Some(q(1, 100_000_000)));
        assert_eq!(parse_tolerance("0.25"), Some(q(1, 4)));
        assert_eq!(parse_tolerance("1/3"), Some(q(1, 3)));
        assert_eq!(parse_tolerance("2.5E2"), Some(q(250, 1)));
        assert_eq!(parse_tolerance("x"), None);
    }

    #[test]
    fn unit_tolerance_brackets_between_minus_one_and_zero() {
        let r = isolate(&BigRational::from_integer(1.into()));
        assert_eq!(r.real_roots, 1);
        let i = &r.intervals[0];
        assert!(i.lo >= BigRational::from_integer((-1).into()));
        assert!(i.hi <= BigRational::from_integer(0.into()));
    }
}
