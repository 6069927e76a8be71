//! The characteristic-zero condition on `α`.
//!
//! Over `Q(α)` the nine generic singular points of the split sextic are cut
//! out by `(C, Lprod)`. Removing the three on the split line leaves six
//! points on a conic `C0`. A second conic `C1` through `(0:0:1)` is fixed by
//! one of the two points of `C0` on `{x = 0}`. Requiring the `z`-coordinates
//! of `C1 ∩ Lprod` to lie among those of `C0 ∩ Lprod` gives a polynomial
//! condition on `α`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{
    ArithError, Field, NumberField, PrimeField, QuadElem, QuadraticExt, RatFun, RationalFunctions,
    Rationals, UniPoly,
};
use crate::family::{self, FamilyError};
use crate::groebner::{ideal_quotient, Budget, GroebnerError, Ideal};
use crate::poly::{resultant, PolyError, Polynomial, Ring, RingExt};

pub const MINPOLY: [i64; 4] = [1, 7, 0, 7];

#[derive(Debug, Error)]
pub enum DerivationError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
    #[error("derivation mismatch: {0}")]
    Mismatch(String),
    #[error("degenerate denominator: {0}")]
    Degenerate(String),
}

/// Which of the two points of `C0 ∩ {x = 0}` fixes `C1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn symbol(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }
}

/// `Q(α)`.
pub type AlphaField = RationalFunctions<Rationals>;
/// `Q(α)(β)`.
pub type BetaField = QuadraticExt<AlphaField>;

pub fn alpha_field() -> AlphaField {
    RationalFunctions::new(Rationals, "alpha")
}

pub fn minpoly() -> UniPoly<BigRational> {
    UniPoly::from_i64s(&Rationals, &MINPOLY)
}

/// Integer polynomial in `α`, lowest degree first.
fn ints<F: Field>(field: &F, coeffs: &[i64], alpha: &F::Elem) -> F::Elem {
    coeffs.iter().rev().fold(field.zero(), |acc, &c| {
        field.add(&field.mul(&acc, alpha), &field.from_i64(c))
    })
}

/// `(C, Lprod)` in `(x, z, w)` with the line-split parameters at `alpha`.
pub fn generic_singular_ideal<F: Field>(
    field: &F,
    alpha: &F::Elem,
) -> Result<Ideal<F>, DerivationError> {
    let params = family::section4_params(field, alpha)?;
    let ring = family::plane_ring(field);
    let c = family::build_cubic(&ring, &params)?;
    let l = family::line_product(&ring)?;
    Ok(Ideal::new(&ring, vec![c, l])?)
}

/// The split line `z - x/(1+α²) + w`.
pub fn split_line<F: Field>(
    ring: &Ring<F>,
    alpha: &F::Elem,
) -> Result<Polynomial<F>, DerivationError> {
    let f = ring.field();
    let s = f.add(&f.one(), &f.mul(alpha, alpha));
    let t = f.neg(&f.inv(&s)?);
    Ok(&(&ring.var("z") + &(&ring.constant(t) * &ring.var("x"))) + &ring.var("w"))
}

/// Checks the line-split relation at the parametrized point: with
/// `t = -1/(1+α²)` and the parametrized `a4`, `α = -(a4 t³ + t)` and
/// `t α² + t + 1 = 0`.
pub fn split_relation_holds<F: Field>(field: &F, alpha: &F::Elem) -> Result<bool, DerivationError> {
    let params = family::section4_params(field, alpha)?;
    let s = field.add(&field.one(), &field.mul(alpha, alpha));
    let t = field.neg(&field.inv(&s)?);
    let t3 = field.mul(&t, &field.mul(&t, &t));
    let a = field.neg(&field.add(&field.mul(params.a(4), &t3), &t));
    let rel = field.add(
        &field.add(&field.mul(&t, &field.mul(&a, &a)), &t),
        &field.one(),
    );
    Ok(a == *alpha && field.is_zero(&rel))
}

/// The conic through the six generic singular points off the split line:
/// the degree-2 element of the reduced basis of `(C, Lprod) : line`, monic.
pub fn derive_c0<F: Field>(
    field: &F,
    alpha: &F::Elem,
    budget: &Budget,
) -> Result<Polynomial<F>, DerivationError> {
    let ideal = generic_singular_ideal(field, alpha)?;
    let line = split_line(ideal.ring(), alpha)?;
    let gb = ideal_quotient(&ideal, &line, budget)?.groebner(budget)?;
    let conics: Vec<_> = gb
        .polys()
        .iter()
        .filter(|g| g.degree() == Some(2))
        .collect();
    match conics.as_slice() {
        [c0] => Ok(c0.monic()),
        _ => Err(DerivationError::Mismatch(format!(
            "expected one conic in the quotient basis, found {}",
            conics.len()
        ))),
    }
}

/// The closed form of `C0` scaled so that the `x²` coefficient is `α`.
pub fn closed_form_c0<F: Field>(ring: &Ring<F>, alpha: &F::Elem) -> Polynomial<F> {
    let f = ring.field();
    let (x, z, w) = (ring.var("x"), ring.var("z"), ring.var("w"));
    let k = |c: &[i64]| ring.constant(ints(f, c, alpha));
    let terms = [
        (k(&[0, 1]), &x * &x),
        (k(&[-1, 5, 0, 1]), &x * &z),
        (k(&[-1, 1, 0, 1]), &x * &w),
        (k(&[-1, 1, -1, 6, 0, 1]), &z * &z),
        (k(&[-2, 6, -2, 8, 0, 2]), &z * &w),
        (k(&[-1, 1, -1, 2, 0, 1]), &w * &w),
    ];
    terms
        .iter()
        .fold(ring.zero(), |acc, (c, m)| &acc + &(c * m))
}

/// Equality up to a nonzero scalar.
pub fn projectively_equal<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>) -> bool {
    match (f.leading_coeff(), g.leading_coeff()) {
        (Some(a), Some(b)) => f.scale(b) == g.scale(a),
        (None, None) => true,
        _ => false,
    }
}

/// Coefficients `(a, b, c)` of `C0|_{x=0} = a z² + b zw + c w²`, with `C0`
/// scaled so that its `x²` coefficient is `α`.
fn axis_quadratic<F: Field>(
    c0: &Polynomial<F>,
    alpha: &F::Elem,
) -> Result<[F::Elem; 3], DerivationError> {
    let ring = c0.ring();
    let f = ring.field();
    let (x, z, w) = (ring.var("x"), ring.var("z"), ring.var("w"));
    let coeff = |m: &Polynomial<F>| c0.coeff_of(m.leading_monomial().unwrap());
    let lead = coeff(&(&x * &x));
    if f.is_zero(&lead) {
        return Err(DerivationError::Mismatch("C0 has no x^2 term".into()));
    }
    let scale = f.div(alpha, &lead)?;
    Ok([&z * &z, &z * &w, &w * &w].map(|m| f.mul(&scale, &coeff(&m))))
}

/// The discriminant `b² - 4ac` of `C0|_{x=0}` in the normalization of
/// [`closed_form_c0`].
pub fn beta_squared<F: Field>(
    c0: &Polynomial<F>,
    alpha: &F::Elem,
) -> Result<F::Elem, DerivationError> {
    let f = c0.field();
    let [a, b, c] = axis_quadratic(c0, alpha)?;
    Ok(f.sub(&f.mul(&b, &b), &f.mul(&f.from_i64(4), &f.mul(&a, &c))))
}

/// `16α(2α⁵ + 4α³ - α² + 2α - 1)`.
pub fn beta_squared_closed<F: Field>(field: &F, alpha: &F::Elem) -> F::Elem {
    ints(field, &[0, -16, 32, -16, 64, 0, 32], alpha)
}

/// The conic `x² + k z(z+w) + 4zw` through `(0:0:1)` and the point
/// `(0 : P_z : 1)` of `C0` selected by `sign`, where
/// `P_z = (-b ± β)/(2a)` and `k = -4 P_z / (P_z (P_z + 1))`.
///
/// `c0` must be defined over the base of `ext`, and `ext`'s discriminant
/// must be [`beta_squared`] of `c0`.
pub fn build_c1<K: Field>(
    ext: &QuadraticExt<K>,
    c0: &Polynomial<K>,
    alpha: &K::Elem,
    sign: Sign,
) -> Result<(QuadElem<K::Elem>, Polynomial<QuadraticExt<K>>), DerivationError> {
    let k = ext.base();
    let [a, b, _] = axis_quadratic(c0, alpha)?;
    let beta = match sign {
        Sign::Plus => ext.generator(),
        Sign::Minus => ext.neg(&ext.generator()),
    };
    let num = ext.add(&ext.from_base(k.neg(&b)), &beta);
    let pz = ext.div(&num, &ext.from_base(k.add(&a, &a)))?;
    let pz1 = ext.add(&pz, &ext.one());
    if ext.is_zero(&pz) || ext.is_zero(&pz1) {
        return Err(DerivationError::Degenerate(format!(
            "P_z{} is 0 or -1",
            sign.symbol()
        )));
    }
    let kk = ext
        .div(&ext.mul(&ext.from_i64(-4), &pz), &ext.mul(&pz, &pz1))
        .map_err(|_| {
            DerivationError::Degenerate(format!(
                "P_z{} (P_z{} + 1) is not invertible",
                sign.symbol(),
                sign.symbol()
            ))
        })?;
    let ring = family::plane_ring(ext);
    let (x, z, w) = (ring.var("x"), ring.var("z"), ring.var("w"));
    let c1 = &(&(&x * &x) + &(&ring.constant(kk.clone()) * &(&z * &(&z + &w))))
        + &(&ring.from_i64(4) * &(&z * &w));
    Ok((kk, c1))
}

/// `res_x(f, g)` at `w = 1`, as a univariate polynomial in `z`.
fn resultant_in_z<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
) -> Result<UniPoly<F::Elem>, DerivationError> {
    let ring = f.ring();
    let field = ring.field();
    let (ix, iz, iw) = (
        ring.var_index("x")?,
        ring.var_index("z")?,
        ring.var_index("w")?,
    );
    let r = resultant(f, g, ix)?.substitute_const(iw, &field.one());
    let mut coeffs = vec![field.zero(); r.degree_in(iz) as usize + 1];
    for (m, c) in r.terms() {
        if m.get(ix) != 0 {
            return Err(DerivationError::Mismatch(
                "resultant still involves x".into(),
            ));
        }
        coeffs[m.get(iz) as usize] = c.clone();
    }
    Ok(UniPoly::from_coeffs(field, coeffs))
}

/// The remainder `q(z)` of `res_x(C0, Lprod)` divided by
/// `res_x(C1, Lprod) / z³`, coefficients lowest degree first (padded to 3).
pub fn remainder_q<K: Field>(
    ext: &QuadraticExt<K>,
    c0: &Polynomial<K>,
    c1: &Polynomial<QuadraticExt<K>>,
) -> Result<Vec<QuadElem<K::Elem>>, DerivationError> {
    let l = family::line_product(c0.ring())?;
    let r0 = resultant_in_z(c0, &l)?.map(ext, |c| Ok(ext.from_base(c.clone())))?;
    let l_ext = family::line_product(c1.ring())?;
    let r1 = resultant_in_z(c1, &l_ext)?;
    let coeffs = r1.coeffs();
    if coeffs.len() < 4 || coeffs[..3].iter().any(|c| !ext.is_zero(c)) {
        return Err(DerivationError::Mismatch(
            "z^3 does not divide res_x(C1, Lprod)".into(),
        ));
    }
    let g = UniPoly::from_coeffs(ext, coeffs[3..].to_vec());
    let (_, q) = r0.divrem(ext, &g)?;
    if q.degree().is_some_and(|d| d > 2) {
        return Err(DerivationError::Mismatch(
            "remainder of degree above 2".into(),
        ));
    }
    Ok((0..3)
        .map(|i| q.coeff(i).cloned().unwrap_or_else(|| ext.zero()))
        .collect())
}

/// `cond = c² - β² d²` together with its components, all in `Q[α]`.
#[derive(Debug, Clone, PartialEq)]
pub struct AlphaCondition {
    pub sign: Sign,
    pub c: UniPoly<BigRational>,
    pub d: UniPoly<BigRational>,
    pub cond: UniPoly<BigRational>,
}

impl AlphaCondition {
    pub fn degree(&self) -> usize {
        self.cond.degree().unwrap_or(0)
    }
}

/// Scales `c + βd ∈ Q(α)(β)` to the primitive integer pair `(c, d)` in
/// `Z[α]` with positive leading coefficient of `c` (or `d` if `c = 0`).
pub fn clear_denominators(
    e: &QuadElem<RatFun<BigRational>>,
) -> (UniPoly<BigRational>, UniPoly<BigRational>) {
    let q = &Rationals;
    let g = e.c.den.gcd(q, &e.d.den);
    let lcm =
        e.c.den
            .mul(q, &e.d.den)
            .divrem(q, &g)
            .expect("gcd is nonzero")
            .0;
    let cofactor = |den: &UniPoly<BigRational>| lcm.divrem(q, den).expect("den is nonzero").0;
    let c = e.c.num.mul(q, &cofactor(&e.c.den));
    let d = e.d.num.mul(q, &cofactor(&e.d.den));
    let all: Vec<&BigRational> = c.coeffs().iter().chain(d.coeffs()).collect();
    let den_lcm = all.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let num_gcd = all.iter().fold(BigInt::zero(), |acc, r| {
        acc.gcd(&(r.numer() * (&den_lcm / r.denom())))
    });
    if num_gcd.is_zero() {
        return (c, d);
    }
    let lead = c.leading().or(d.leading()).expect("nonzero");
    let sign = if lead.is_negative() {
        -BigInt::one()
    } else {
        BigInt::one()
    };
    let s = BigRational::new(den_lcm * sign, num_gcd);
    (c.scale(q, &s), d.scale(q, &s))
}

/// `cond` for one sign choice, from the `z²` coefficient of `q`.
pub fn condition_from(sign: Sign, z2: &QuadElem<RatFun<BigRational>>) -> AlphaCondition {
    let q = &Rationals;
    let (c, d) = clear_denominators(z2);
    let b2 = beta_squared_closed(&alpha_field(), &alpha_field().generator()).num;
    let cond = c.mul(q, &c).sub(q, &b2.mul(q, &d.mul(q, &d)));
    AlphaCondition { sign, c, d, cond }
}

/// `cond(α0) mod p` for an integer polynomial.
pub fn eval_mod_p(poly: &UniPoly<BigRational>, p: u64, alpha0: i64) -> Result<u64, ArithError> {
    let f = PrimeField::new(p)?;
    let reduced = poly.map(&f, |c| f.from_rational(c))?;
    Ok(reduced.eval(&f, &f.reduce_i64(alpha0)))
}

/// Whether `c + βd` vanishes in `Q[α]/(7α³+7α+1)` with `β = 12/7`.
pub fn vanishes_on_locus(e: &QuadElem<RatFun<BigRational>>) -> Result<bool, ArithError> {
    let nf = NumberField::new(Rationals, minpoly(), "alpha")?;
    let at = |r: &RatFun<BigRational>| -> Result<Vec<BigRational>, ArithError> {
        nf.div(&nf.reduce(&r.num), &nf.reduce(&r.den))
    };
    let beta = nf.from_base(BigRational::new(12.into(), 7.into()));
    let v = nf.add(&at(&e.c)?, &nf.mul(&beta, &at(&e.d)?));
    Ok(nf.is_zero(&v))
}

/// Audit record of the full derivation.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DerivationTranscript {
    pub c0: String,
    pub c0_matches_closed_form: bool,
    pub beta_squared: String,
    pub beta_squared_matches_closed_form: bool,
    pub beta_squared_on_locus: String,
    pub branches: Vec<BranchRecord>,
    pub cond_degree: usize,
    pub cond_common_factor_degree: usize,
    /// Degree of `gcd(cond, cond')`: the repeated part of `cond`.
    pub cond_repeated_part_degree: usize,
    /// How often some low-degree polynomials built from the data divide
    /// `cond`, largest power first found by repeated exact division.
    pub cond_factor_multiplicities: Vec<FactorMultiplicity>,
    pub minpoly_remainder: String,
    pub rows_vanishing: Vec<RowCheck>,
    pub cofactor_nonzero_somewhere: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BranchRecord {
    pub sign: Sign,
    pub k: String,
    /// `(c, d)` per coefficient of `q`, lowest degree first, after clearing
    /// denominators.
    pub q: Vec<[String; 2]>,
    /// Whether each coefficient of `q` vanishes on `7α³+7α+1 = 0`, `β = 12/7`.
    pub q_vanishes_on_locus: Vec<bool>,
    pub cond_degree: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FactorMultiplicity {
    pub factor: String,
    pub multiplicity: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RowCheck {
    pub p: u64,
    pub alpha: i64,
    pub cond_vanishes: bool,
    pub cofactor_vanishes: bool,
}

/// Everything computed by [`derive_all`].
#[derive(Debug, Clone)]
pub struct Derivation {
    pub c0: Polynomial<AlphaField>,
    pub beta_squared: RatFun<BigRational>,
    pub conditions: Vec<AlphaCondition>,
    pub transcript: DerivationTranscript,
}

/// Runs the whole chain over `Q(α)`, checking each closed form on the way.
/// The sextic data attached to `rows` (pairs `(p, α0)`) is used for the
/// modular vanishing check.
pub fn derive_all(rows: &[(u64, i64)], budget: &Budget) -> Result<Derivation, DerivationError> {
    let field = alpha_field();
    let alpha = field.generator();
    let c0 = derive_c0(&field, &alpha, budget)?;
    let closed = closed_form_c0(c0.ring(), &alpha);
    let c0_matches = projectively_equal(&c0, &closed);
    if !c0_matches {
        return Err(DerivationError::Mismatch(
            "C0 differs from the closed form".into(),
        ));
    }
    let b2 = beta_squared(&c0, &alpha)?;
    let b2_matches = b2 == beta_squared_closed(&field, &alpha);
    if !b2_matches {
        return Err(DerivationError::Mismatch(
            "beta^2 differs from the closed form".into(),
        ));
    }
    let nf = NumberField::new(Rationals, minpoly(), "alpha")?;
    let b2_locus = nf.div(&nf.reduce(&b2.num), &nf.reduce(&b2.den))?;
    let ext = QuadraticExt::new(field.clone(), b2.clone(), "beta");

    let mut conditions = Vec::new();
    let mut branches = Vec::new();
    for sign in Sign::BOTH {
        let (k, c1) = build_c1(&ext, &c0, &alpha, sign)?;
        let q = remainder_q(&ext, &c0, &c1)?;
        let cond = condition_from(sign, &q[2]);
        let q_strings = q
            .iter()
            .map(|e| {
                let (c, d) = clear_denominators(e);
                [c.format(&Rationals, "alpha"), d.format(&Rationals, "alpha")]
            })
            .collect();
        let vanish = q.iter().map(vanishes_on_locus).collect::<Result<_, _>>()?;
        branches.push(BranchRecord {
            sign,
            k: ext.format_elem(&k),
            q: q_strings,
            q_vanishes_on_locus: vanish,
            cond_degree: cond.degree(),
        });
        conditions.push(cond);
    }

    let cond = &conditions[0];
    let q = &Rationals;
    let (cofactor, rem) = cond.cond.divrem(q, &minpoly())?;
    let common = cond.c.gcd(q, &cond.d).degree().unwrap_or(0);
    let mut rows_vanishing = Vec::new();
    for &(p, a0) in rows {
        rows_vanishing.push(RowCheck {
            p,
            alpha: a0,
            cond_vanishes: eval_mod_p(&cond.cond, p, a0)? == 0,
            cofactor_vanishes: eval_mod_p(&cofactor, p, a0)? == 0,
        });
    }
    let transcript = DerivationTranscript {
        c0: c0.to_string(),
        c0_matches_closed_form: c0_matches,
        beta_squared: field.format_elem(&b2),
        beta_squared_matches_closed_form: b2_matches,
        beta_squared_on_locus: nf.format_elem(&b2_locus),
        branches,
        cond_degree: cond.degree(),
        cond_common_factor_degree: common,
        cond_repeated_part_degree: cond
            .cond
            .gcd(q, &cond.cond.derivative(q))
            .degree()
            .unwrap_or(0),
        cond_factor_multiplicities: candidate_factors()
            .iter()
            .map(|f| FactorMultiplicity {
                factor: f.format(q, "alpha"),
                multiplicity: multiplicity(&cond.cond, f),
            })
            .collect(),
        minpoly_remainder: rem.format(q, "alpha"),
        cofactor_nonzero_somewhere: rows_vanishing.iter().any(|r| !r.cofactor_vanishes),
        rows_vanishing,
    };
    Ok(Derivation {
        c0,
        beta_squared: b2,
        conditions,
        transcript,
    })
}

/// Largest `k` with `factor^k | poly` (`poly` nonzero, `factor` of positive
/// degree).
pub fn multiplicity(poly: &UniPoly<BigRational>, factor: &UniPoly<BigRational>) -> usize {
    let q = &Rationals;
    let mut k = 0;
    let mut rest = poly.clone();
    while let Ok((quot, rem)) = rest.divrem(q, factor) {
        if !rem.is_zero() || quot.is_zero() {
            break;
        }
        rest = quot;
        k += 1;
    }
    k
}

/// Candidate factors: `α`, `1 + α²`, the minimal polynomial and the
/// coefficients of `C0` in the normalization of [`closed_form_c0`].
fn candidate_factors() -> Vec<UniPoly<BigRational>> {
    [
        &[0, 1][..],
        &[1, 0, 1],
        &MINPOLY,
        &[-1, 5, 0, 1],
        &[-1, 1, 0, 1],
        &[-1, 1, -1, 6, 0, 1],
        &[-1, 3, -1, 4, 0, 1],
        &[-1, 1, -1, 2, 0, 1],
        &[-1, 2, -1, 4, 0, 2],
    ]
    .iter()
    .map(|c| UniPoly::from_i64s(&Rationals, c))
    .collect()
}

/// Specializes a polynomial over `Q(α)` at `α = α0` in `F_p`.
pub fn specialize(
    f: &Polynomial<AlphaField>,
    ring: &Ring<PrimeField>,
    alpha0: i64,
) -> Result<Polynomial<PrimeField>, DerivationError> {
    let fp = *ring.field();
    let a0 = fp.reduce_i64(alpha0);
    let ev = |u: &UniPoly<BigRational>| -> Result<u64, ArithError> {
        Ok(u.map(&fp, |c| fp.from_rational(c))?.eval(&fp, &a0))
    };
    let idx: Vec<usize> = (0..f.ring().nvars()).collect();
    Ok(f.map_into(ring, &idx, |r| fp.div(&ev(&r.num)?, &ev(&r.den)?))?)
}
