use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::{ArithError, Field, PrimeField, Rationals, UniPoly};

/// All residues `r` in `0..p` with `minpoly(r) = 0 mod p`, by exhaustive
/// evaluation. Coefficients are reduced mod `p` first, so denominators coprime
/// to `p` are allowed.
pub fn roots_mod_p(minpoly: &UniPoly<BigRational>, p: u64) -> Result<Vec<u64>, ArithError> {
    let f = PrimeField::new(p)?;
    let lc = minpoly
        .leading()
        .ok_or_else(|| ArithError::InvalidMinpoly("zero polynomial".into()))?;
    let lc_mod = f
        .from_rational(lc)
        .map_err(|_| ArithError::LeadingCoefficientDivisible(p))?;
    if lc_mod == 0 {
        return Err(ArithError::LeadingCoefficientDivisible(p));
    }
    let reduced = minpoly.map(&f, |c| f.from_rational(c))?;
    Ok(f.elements().filter(|r| reduced.eval(&f, r) == 0).collect())
}

/// An interval `[lo, hi]` with exact rational endpoints.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IsolatingInterval {
    #[serde(serialize_with = "ser_rat")]
    pub lo: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub hi: BigRational,
}

fn ser_rat<S: serde::Serializer>(q: &BigRational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&q.to_string())
}

impl IsolatingInterval {
    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn midpoint_f64(&self) -> f64 {
        ((&self.lo + &self.hi) / BigRational::from_integer(2.into()))
            .to_f64()
            .unwrap_or(f64::NAN)
    }
}

/// Isolates every real root of a squarefree polynomial to width `<= tol`.
///
/// Roots are first separated with a Sturm sequence inside the Cauchy bound,
/// then each sign-changing bracket is bisected. Roots that land exactly on a
/// bisection point yield a degenerate interval.
pub fn real_root_isolate(
    minpoly: &UniPoly<BigRational>,
    tol: &BigRational,
) -> Vec<IsolatingInterval> {
    let q = Rationals;
    assert!(tol.is_positive(), "tolerance must be positive");
    let deg = match minpoly.degree() {
        None | Some(0) => return Vec::new(),
        Some(d) => d,
    };
    let sturm = sturm_sequence(minpoly);
    // Cauchy bound 1 + max |a_i / a_n|, rounded up to an integer
    let lc = minpoly.leading().unwrap().abs();
    let bound = minpoly.coeffs()[..deg]
        .iter()
        .map(|c| c.abs() / &lc)
        .fold(BigRational::zero(), |m, c| if c > m { c } else { m });
    let bound = BigRational::from_integer(bound.ceil().to_integer() + BigInt::from(1));

    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&sturm, &lo) as i64 - sign_changes(&sturm, &hi) as i64;
        if n == 0 {
            continue;
        }
        if n == 1 {
            out.push(bisect(minpoly, lo, hi, tol));
            continue;
        }
        let mid = (&lo + &hi) / BigRational::from_integer(2.into());
        if q.is_zero(&minpoly.eval(&q, &mid)) {
            out.push(IsolatingInterval {
                lo: mid.clone(),
                hi: mid.clone(),
            });
            // nudge both halves off the exact root
            let eps = (&hi - &lo) / BigRational::from_integer(1_000_000.into());
            stack.push((&mid + &eps, hi));
            stack.push((lo, &mid - &eps));
        } else {
            stack.push((mid.clone(), hi));
            stack.push((lo, mid));
        }
    }
    out.sort_by(|a, b| a.lo.cmp(&b.lo));
    out
}

fn bisect(
    f: &UniPoly<BigRational>,
    mut lo: BigRational,
    mut hi: BigRational,
    tol: &BigRational,
) -> IsolatingInterval {
    let q = Rationals;
    let two = BigRational::from_integer(2.into());
    let mut flo = f.eval(&q, &lo);
    if flo.is_zero() {
        return IsolatingInterval {
            lo: lo.clone(),
            hi: lo,
        };
    }
    if f.eval(&q, &hi).is_zero() {
        return IsolatingInterval { lo: hi.clone(), hi };
    }
    while &(&hi - &lo) > tol {
        let mid = (&lo + &hi) / &two;
        let fm = f.eval(&q, &mid);
        if fm.is_zero() {
            return IsolatingInterval {
                lo: mid.clone(),
                hi: mid,
            };
        }
        if fm.is_negative() == flo.is_negative() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    IsolatingInterval { lo, hi }
}

fn sturm_sequence(f: &UniPoly<BigRational>) -> Vec<UniPoly<BigRational>> {
    let q = Rationals;
    let mut seq = vec![f.clone(), f.derivative(&q)];
    loop {
        let n = seq.len();
        if seq[n - 1].is_zero() {
            seq.pop();
            break;
        }
        let r = seq[n - 2].rem(&q, &seq[n - 1]).expect("nonzero divisor");
        if r.is_zero() {
            break;
        }
        seq.push(r.neg(&q));
    }
    seq
}

fn sign_changes(seq: &[UniPoly<BigRational>], x: &BigRational) -> usize {
    let q = Rationals;
    let signs: Vec<bool> = seq
        .iter()
        .map(|p| p.eval(&q, x))
        .filter(|v| !v.is_zero())
        .map(|v| v.is_positive())
        .collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// `q` rounded down to `digits` decimal places.
pub fn to_decimal(q: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10).pow(digits as u32);
    let scaled = (q.numer() * &scale).div_floor(q.denom());
    let neg = scaled.is_negative();
    let s = scaled.abs().to_string();
    let s = format!("{:0>width$}", s, width = digits + 1);
    let (int, frac) = s.split_at(s.len() - digits);
    format!("{}{}.{}", if neg { "-" } else { "" }, int, frac)
}
