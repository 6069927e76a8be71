use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{ArithError, Field, FieldDescriptor, PrimeField, UniPoly};

/// The rational numbers, backed by `num_rational::BigRational` (always
/// reduced, positive denominator).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn is_one(&self, a: &BigRational) -> bool {
        a.is_one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational, ArithError> {
        if a.is_zero() {
            Err(ArithError::DivisionByZero)
        } else {
            Ok(a.recip())
        }
    }
    fn from_rational(&self, q: &BigRational) -> Result<BigRational, ArithError> {
        Ok(q.clone())
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::Q
    }
    fn format_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn uni_gcd(&self, a: &UniPoly<BigRational>, b: &UniPoly<BigRational>) -> UniPoly<BigRational> {
        if a.is_zero() || b.is_zero() {
            return a.add(self, b).monic(self);
        }
        let (a, b) = (primitive(a), primitive(b));
        if coprime_mod_p(&a, &b) {
            return UniPoly::one(self);
        }
        let g = primitive_prs_gcd(a, b);
        UniPoly::from_coeffs(self, g.into_iter().map(BigRational::from_integer).collect())
            .monic(self)
    }
}

/// Primes below `2^31` used to detect coprime pairs quickly.
const GCD_PRIMES: [u64; 2] = [2_147_483_647, 2_147_483_629];

/// Integer coefficients of a positive multiple of `a` with content 1.
fn primitive(a: &UniPoly<BigRational>) -> Vec<BigInt> {
    let den = a
        .coeffs()
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = a
        .coeffs()
        .iter()
        .map(|c| c.numer() * (&den / c.denom()))
        .collect();
    content_free(ints)
}

fn content_free(v: Vec<BigInt>) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    if g.is_zero() || g.is_one() {
        return v;
    }
    v.into_iter().map(|c| c / &g).collect()
}

/// True when the images modulo some prime not dividing either leading
/// coefficient are coprime. Such a prime can only raise the gcd degree, so a
/// constant image gcd proves the pair coprime over `Q`.
fn coprime_mod_p(a: &[BigInt], b: &[BigInt]) -> bool {
    GCD_PRIMES.iter().any(|&p| {
        let f = PrimeField::new(p).expect("prime");
        let image =
            |v: &[BigInt]| UniPoly::from_coeffs(&f, v.iter().map(|c| f.reduce_bigint(c)).collect());
        let (ia, ib) = (image(a), image(b));
        ia.degree() == Some(a.len() - 1)
            && ib.degree() == Some(b.len() - 1)
            && ia.euclid_gcd(&f, &ib).degree() == Some(0)
    })
}

/// Gcd of two primitive integer polynomials by the primitive remainder
/// sequence, lowest degree first.
fn primitive_prs_gcd(mut a: Vec<BigInt>, mut b: Vec<BigInt>) -> Vec<BigInt> {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_empty() {
        let r = content_free(pseudo_rem(&a, &b));
        a = b;
        b = r;
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        a = a.into_iter().map(|c| -c).collect();
    }
    a
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`, trimmed.
fn pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    let db = b.len() - 1;
    let lc = &b[db];
    while r.len() > db {
        let top = r.pop().expect("nonempty");
        let shift = r.len() - db;
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, bj) in b[..db].iter().enumerate() {
            r[shift + j] -= &top * bj;
        }
        while r.last().is_some_and(|c| c.is_zero()) {
            r.pop();
        }
    }
    r
}

/// Parses `n` or `n/d` into a reduced rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(BigRational::new(n, d))
            }
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn third_plus_sixth_is_half() {
        assert_eq!(Rationals.add(&q(1, 3), &q(1, 6)), q(1, 2));
    }

    #[test]
    fn canonical_form() {
        let a = q(6, -4);
        assert_eq!(a.numer(), &BigInt::from(-3));
        assert_eq!(a.denom(), &BigInt::from(2));
        assert_eq!(Rationals.sub(&q(1, 2), &q(1, 2)), q(0, 1));
        assert_eq!(q(0, 5).denom(), &BigInt::from(1));
    }

    #[test]
    fn parsing() {
        assert_eq!(parse_rational("-12/7"), Some(q(-12, 7)));
        assert_eq!(parse_rational("5"), Some(q(5, 1)));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("abc"), None);
    }

    fn poly(c: &[i64]) -> UniPoly<BigRational> {
        UniPoly::from_i64s(&Rationals, c)
    }

    #[test]
    fn gcd_of_shared_factor() {
        let g = poly(&[1, 7, 0, 7]);
        let a = g.mul(&Rationals, &poly(&[3, -2, 5]));
        let b = g.mul(&Rationals, &poly(&[-1, 4]));
        assert_eq!(a.gcd(&Rationals, &b), g.monic(&Rationals));
    }

    proptest! {
        #[test]
        fn fast_gcd_matches_euclid(
            a in proptest::collection::vec(-20i64..20, 1..7),
            b in proptest::collection::vec(-20i64..20, 1..7),
            c in proptest::collection::vec(-20i64..20, 1..4),
        ) {
            let (a, b, c) = (poly(&a), poly(&b), poly(&c));
            let (a, b) = (a.mul(&Rationals, &c), b.mul(&Rationals, &c));
            prop_assert_eq!(a.gcd(&Rationals, &b), a.euclid_gcd(&Rationals, &b));
        }
    }
}
