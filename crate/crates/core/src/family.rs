//! The D7-symmetric septic family `S = P - U`, its restriction to the plane
//! `y = 0` and the closed-form parameter families.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{ArithError, Field, FieldDescriptor};
use crate::poly::{MonomialOrder, PolyError, PolyRing, Polynomial, Ring, RingExt};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("characteristic {0} is not supported (2, 3 and 7 are special)")]
    UnsupportedCharacteristic(u64),
    #[error("parameter formula has a vanishing denominator: {0}")]
    NotInvertible(String),
    #[error("internal identity failed: {0}")]
    IdentityFailure(String),
    #[error("node counts out of range: n = {n}, n_xy = {n_xy}")]
    Range { n: i64, n_xy: i64 },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Characteristics 2, 3 and 7 divide coefficients or exponents of `P`.
pub fn check_characteristic<F: Field>(field: &F) -> Result<(), FamilyError> {
    match field.characteristic() {
        c @ (2 | 3 | 7) => Err(FamilyError::UnsupportedCharacteristic(c)),
        _ => Ok(()),
    }
}

/// The ring `F[x, y, z, w]` with degrevlex.
pub fn surface_ring<F: Field>(field: &F) -> Ring<F> {
    PolyRing::new(
        field.clone(),
        &["x", "y", "z", "w"],
        MonomialOrder::DegRevLex,
    )
    .expect("four variables")
}

/// The ring `F[x, z, w]` of the plane `y = 0`.
pub fn plane_ring<F: Field>(field: &F) -> Ring<F> {
    PolyRing::new(field.clone(), &["x", "z", "w"], MonomialOrder::DegRevLex)
        .expect("three variables")
}

/// Parameters `a1..a7` over one field.
#[derive(Debug, Clone, PartialEq)]
pub struct FamilyParams<F: Field> {
    field: F,
    a: [F::Elem; 7],
}

/// Serializable form of [`FamilyParams`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamsRecord {
    pub field: FieldDescriptor,
    pub a: Vec<String>,
}

impl<F: Field> FamilyParams<F> {
    /// `a1..a5` with `a6 = a7 = 1`.
    pub fn new(field: &F, a: [F::Elem; 5]) -> Result<Self, FamilyError> {
        let [a1, a2, a3, a4, a5] = a;
        Self::with_all(field, [a1, a2, a3, a4, a5, field.one(), field.one()])
    }

    pub fn with_all(field: &F, a: [F::Elem; 7]) -> Result<Self, FamilyError> {
        check_characteristic(field)?;
        Ok(FamilyParams {
            field: field.clone(),
            a,
        })
    }

    pub fn from_i64s(field: &F, a: [i64; 5]) -> Result<Self, FamilyError> {
        Self::new(field, a.map(|v| field.from_i64(v)))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    /// `a_i` for `i` in `1..=7`.
    pub fn a(&self, i: usize) -> &F::Elem {
        &self.a[i - 1]
    }

    pub fn all(&self) -> &[F::Elem; 7] {
        &self.a
    }

    /// Parameters of `S(x, y, z, λw)`: `(a1, λa2, λ²a3, λ³a4, λa5, a6, λa7)`.
    pub fn rescaled(&self, lambda: &F::Elem) -> Self {
        let f = &self.field;
        let l2 = f.mul(lambda, lambda);
        let l3 = f.mul(&l2, lambda);
        let a = &self.a;
        FamilyParams {
            field: f.clone(),
            a: [
                a[0].clone(),
                f.mul(lambda, &a[1]),
                f.mul(&l2, &a[2]),
                f.mul(&l3, &a[3]),
                f.mul(lambda, &a[4]),
                a[5].clone(),
                f.mul(lambda, &a[6]),
            ],
        }
    }

    pub fn record(&self) -> ParamsRecord {
        ParamsRecord {
            field: self.field.descriptor(),
            a: self.a.iter().map(|c| self.field.format_elem(c)).collect(),
        }
    }
}

fn index<F: Field>(ring: &Ring<F>, name: &str) -> Result<usize, FamilyError> {
    Ok(ring.var_index(name)?)
}

/// `P` in a ring with variables named `x, y, z` (any others allowed).
pub fn build_p<F: Field>(ring: &Ring<F>) -> Result<Polynomial<F>, FamilyError> {
    check_characteristic(ring.field())?;
    let x = ring.var_at(index(ring, "x")?);
    let y = ring.var_at(index(ring, "y")?);
    let z = ring.var_at(index(ring, "z")?);
    let r2 = &(&x * &x) + &(&y * &y);
    let heptagon = &x
        * &(&(&(&x.pow(6) - &(&ring.from_i64(21) * &(&x.pow(4) * &y.pow(2))))
            + &(&ring.from_i64(35) * &(&x.pow(2) * &y.pow(4))))
            - &(&ring.from_i64(7) * &y.pow(6)));
    let radial = &(&(&r2.pow(3) - &(&ring.from_i64(8) * &(&z.pow(2) * &r2.pow(2))))
        + &(&ring.from_i64(16) * &(&z.pow(4) * &r2)));
    Ok(&(&heptagon + &(&ring.from_i64(7) * &(&z * radial))) - &(&ring.from_i64(64) * &z.pow(7)))
}

/// `P|_{y=0} = x^7 + 7x^6z - 56x^4z^3 + 112x^2z^5 - 64z^7` in a ring with
/// variables `x, z`.
pub fn build_p_plane<F: Field>(ring: &Ring<F>) -> Result<Polynomial<F>, FamilyError> {
    check_characteristic(ring.field())?;
    let x = ring.var_at(index(ring, "x")?);
    let z = ring.var_at(index(ring, "z")?);
    let c = |n: i64| ring.from_i64(n);
    let terms = [(1, 7, 0), (7, 6, 1), (-56, 4, 3), (112, 2, 5), (-64, 0, 7)];
    Ok(terms.iter().fold(ring.zero(), |acc, &(k, ex, ez)| {
        &acc + &(&c(k) * &(&x.pow(ex) * &z.pow(ez)))
    }))
}

/// The cubic `a1z³ + a2z²w + a3zw² + a4w³ + (a6z + a7w)(x² + y²)`; the `y`
/// term is omitted when the ring has no `y`.
pub fn build_cubic<F: Field>(
    ring: &Ring<F>,
    params: &FamilyParams<F>,
) -> Result<Polynomial<F>, FamilyError> {
    let x = ring.var_at(index(ring, "x")?);
    let z = ring.var_at(index(ring, "z")?);
    let w = ring.var_at(index(ring, "w")?);
    let mut r2 = &x * &x;
    if let Ok(iy) = ring.var_index("y") {
        let y = ring.var_at(iy);
        r2 = &r2 + &(&y * &y);
    }
    let k = |i: usize| ring.constant(params.a(i).clone());
    let cubic = &(&(&(&k(1) * &z.pow(3)) + &(&k(2) * &(&z.pow(2) * &w)))
        + &(&k(3) * &(&z * &w.pow(2))))
        + &(&k(4) * &w.pow(3));
    Ok(&cubic + &(&(&(&k(6) * &z) + &(&k(7) * &w)) * &r2))
}

/// `U = (z + a5 w) * cubic²`.
pub fn build_u<F: Field>(
    ring: &Ring<F>,
    params: &FamilyParams<F>,
) -> Result<Polynomial<F>, FamilyError> {
    check_characteristic(ring.field())?;
    let z = ring.var_at(index(ring, "z")?);
    let w = ring.var_at(index(ring, "w")?);
    let c = build_cubic(ring, params)?;
    Ok(&(&z + &(&ring.constant(params.a(5).clone()) * &w)) * &(&c * &c))
}

/// `S = P - U` in `F[x, y, z, w]`.
pub fn build_s<F: Field>(
    ring: &Ring<F>,
    params: &FamilyParams<F>,
) -> Result<Polynomial<F>, FamilyError> {
    Ok(&build_p(ring)? - &build_u(ring, params)?)
}

/// `S|_{y=0}` built directly in `F[x, z, w]`.
pub fn build_s_plane<F: Field>(
    ring: &Ring<F>,
    params: &FamilyParams<F>,
) -> Result<Polynomial<F>, FamilyError> {
    Ok(&build_p_plane(ring)? - &build_u(ring, params)?)
}

/// The rational product of the three doubled lines of `P|_{y=0}`,
/// `4(x³ + 4x²z - 4xz² - 8z³)`, checked against `(x - z) L² = 16 P|_{y=0}`.
pub fn line_product<F: Field>(ring: &Ring<F>) -> Result<Polynomial<F>, FamilyError> {
    let x = ring.var_at(index(ring, "x")?);
    let z = ring.var_at(index(ring, "z")?);
    let cubic = &(&(&x.pow(3) + &(&ring.from_i64(4) * &(&x.pow(2) * &z)))
        - &(&ring.from_i64(4) * &(&x * &z.pow(2))))
        - &(&ring.from_i64(8) * &z.pow(3));
    let l = &ring.from_i64(4) * &cubic;
    let lhs = &(&x - &z) * &(&l * &l);
    let rhs = &ring.from_i64(16) * &build_p_plane(ring)?;
    if lhs != rhs {
        return Err(FamilyError::IdentityFailure(
            "(x-z)*Lprod^2 != 16*P|_{y=0}".into(),
        ));
    }
    Ok(l)
}

/// Horner evaluation of integer coefficients, lowest degree first.
fn eval_ints<F: Field>(field: &F, coeffs: &[i64], x: &F::Elem) -> F::Elem {
    coeffs.iter().rev().fold(field.zero(), |acc, &c| {
        field.add(&field.mul(&acc, x), &field.from_i64(c))
    })
}

/// Parameters on the line-split locus parametrized by `α`:
/// `t = -1/(1+α²)`, `a4 = (α(1+α²) - 1)(1+α²)²`, and `a5 = (1+α²)/α²`.
pub fn section4_params<F: Field>(
    field: &F,
    alpha: &F::Elem,
) -> Result<FamilyParams<F>, FamilyError> {
    check_characteristic(field)?;
    let s = field.add(&field.one(), &field.mul(alpha, alpha));
    let a_sq = field.mul(alpha, alpha);
    if field.is_zero(&s) {
        return Err(FamilyError::NotInvertible("1 + alpha^2".into()));
    }
    if field.is_zero(&a_sq) {
        return Err(FamilyError::NotInvertible("alpha^2".into()));
    }
    let a1 = eval_ints(field, &[-1, -7, -2, 7, -1, 7, 0, 1], alpha);
    let a2 = field.mul(&s, &eval_ints(field, &[-3, 7, -3, 14, 0, 3], alpha));
    let a3 = field.mul(&field.mul(&s, &s), &eval_ints(field, &[-3, 7, 0, 3], alpha));
    let a4 = field.mul(
        &field.sub(&field.mul(alpha, &s), &field.one()),
        &field.mul(&s, &s),
    );
    let a5 = field.div(&s, &a_sq)?;
    FamilyParams::new(field, [a1, a2, a3, a4, a5])
}

/// The closed-form parameters on `7α³ + 7α + 1 = 0`.
pub fn theorem_params<F: Field>(
    field: &F,
    alpha: &F::Elem,
) -> Result<FamilyParams<F>, FamilyError> {
    check_characteristic(field)?;
    let q = |n: i64, d: i64| -> Result<F::Elem, FamilyError> {
        let r = num_rational::BigRational::new(n.into(), d.into());
        Ok(field.from_rational(&r)?)
    };
    let quad = |c0: F::Elem, c1: F::Elem, c2: F::Elem| {
        let a2 = field.mul(alpha, alpha);
        field.add(
            &field.add(&field.mul(&c2, &a2), &field.mul(&c1, alpha)),
            &c0,
        )
    };
    let a1 = quad(q(-8, 7)?, q(-384, 49)?, q(-12, 7)?);
    let a2 = quad(q(-4, 1)?, q(24, 49)?, q(-32, 7)?);
    let a3 = quad(q(-4, 1)?, q(24, 49)?, q(-4, 1)?);
    let a4 = quad(q(-8, 7)?, q(8, 49)?, q(-8, 7)?);
    let a5 = quad(q(50, 1)?, q(-7, 1)?, q(49, 1)?);
    FamilyParams::new(field, [a1, a2, a3, a4, a5])
}

/// Lift of a plane count to the surface: `n_xy + 7 (n - n_xy)`.
pub fn lemma_lift(n: i64, n_xy: i64) -> Result<i64, FamilyError> {
    if n_xy < 0 || n_xy > n {
        return Err(FamilyError::Range { n, n_xy });
    }
    Ok(n_xy + 7 * (n - n_xy))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{NumberField, PrimeField, Rationals, UniPoly};
    use proptest::prelude::*;

    fn minpoly_field() -> NumberField<Rationals> {
        let m = UniPoly::from_i64s(&Rationals, &[1, 7, 0, 7]);
        NumberField::new(Rationals, m, "alpha").unwrap()
    }

    #[test]
    fn p_restricts_to_the_plane_form() {
        let r = surface_ring(&Rationals);
        let p = build_p(&r).unwrap();
        let py = p.substitute_const(1, &Rationals.zero());
        assert_eq!(
            py,
            r.parse("x^7+7*x^6*z-56*x^4*z^3+112*x^2*z^5-64*z^7")
                .unwrap()
        );
        assert_eq!(py, build_p_plane(&r).unwrap());
        assert_eq!(
            p.coeff_of(&crate::poly::Monomial::var(2, 7)),
            Rationals.from_i64(-64)
        );
        assert!(p.is_homogeneous() && p.degree() == Some(7));
    }

    /// Oracle: `P` vanishes on the seven planes `x cos θ + y sin θ = z`
    /// for `θ = 2πj/7`, so it is tiny at sampled points of them.
    #[test]
    fn p_vanishes_on_the_seven_planes() {
        let r = surface_ring(&Rationals);
        let p = build_p(&r).unwrap();
        for j in 0..7 {
            let th = 2.0 * std::f64::consts::PI * j as f64 / 7.0;
            for (x, y) in [(0.3, -1.2), (2.0, 0.7)] {
                let z = x * th.cos() + y * th.sin();
                let mut v = 0.0;
                for (m, c) in p.terms() {
                    let c: f64 = c.numer().to_string().parse::<f64>().unwrap()
                        / c.denom().to_string().parse::<f64>().unwrap();
                    v += c
                        * x.powi(m.get(0) as i32)
                        * y.powi(m.get(1) as i32)
                        * z.powi(m.get(2) as i32);
                }
                assert!(v.abs() < 1e-9, "plane {j}: {v}");
            }
        }
    }

    #[test]
    fn special_characteristics_rejected() {
        for p in [2, 3, 7] {
            let f = PrimeField::new(p).unwrap();
            assert_eq!(
                build_p(&surface_ring(&f)).unwrap_err(),
                FamilyError::UnsupportedCharacteristic(p)
            );
            assert!(FamilyParams::from_i64s(&f, [1, 1, 1, 1, 1]).is_err());
        }
        assert!(build_p(&surface_ring(&PrimeField::new(5).unwrap())).is_ok());
    }

    #[test]
    fn u_with_trivial_params() {
        let r = surface_ring(&Rationals);
        let params = FamilyParams::from_i64s(&Rationals, [0, 0, 0, 0, 0]).unwrap();
        let u = build_u(&r, &params).unwrap();
        assert_eq!(u, r.parse("z*((z+w)*(x^2+y^2))^2").unwrap());
    }

    #[test]
    fn u_restricts_to_linear_times_cubic_squared() {
        let f = PrimeField::new(11).unwrap();
        let params = FamilyParams::from_i64s(&f, [2, 3, 5, 2, -5]).unwrap();
        let r4 = surface_ring(&f);
        let r3 = plane_ring(&f);
        let s4 = build_s(&r4, &params).unwrap();
        let s3 = build_s_plane(&r3, &params).unwrap();
        let restricted = s4
            .substitute_const(1, &0)
            .map_into(&r3, &[0, usize::MAX, 1, 2], |c| Ok(*c))
            .unwrap();
        assert_eq!(restricted, s3);
        let c = build_cubic(&r3, &params).unwrap();
        assert_eq!(
            c,
            r3.parse("(z+w)*x^2+2*z^3+3*z^2*w+5*z*w^2+2*w^3").unwrap()
        );
    }

    #[test]
    fn line_product_identity_and_roots() {
        let r = plane_ring(&Rationals);
        let l = line_product(&r).unwrap();
        assert_eq!(
            l.coeff_of(&crate::poly::Monomial::var(0, 3)),
            Rationals.from_i64(4)
        );
        // a root ρ of ρ³+4ρ²-4ρ-8 mod 13 kills the cubic at x = ρz
        let f = PrimeField::new(13).unwrap();
        let rf = plane_ring(&f);
        let lf = line_product(&rf).unwrap();
        let roots: Vec<u64> = (0..13i64)
            .filter(|&t| (t * t * t + 4 * t * t - 4 * t - 8).rem_euclid(13) == 0)
            .map(|t| t as u64)
            .collect();
        assert!(!roots.is_empty());
        for t in roots {
            assert_eq!(lf.eval(&[t, 1, 0]), 0);
        }
    }

    #[test]
    fn lemma_lift_values() {
        assert_eq!(lemma_lift(15, 1).unwrap(), 99);
        assert_eq!(lemma_lift(9, 0).unwrap(), 63);
        assert_eq!(lemma_lift(16, 2).unwrap(), 100);
        assert_eq!(lemma_lift(4, 4).unwrap(), 4);
        assert!(lemma_lift(3, 4).is_err());
        assert!(lemma_lift(3, -1).is_err());
    }

    fn balanced(f: &PrimeField, p: &FamilyParams<PrimeField>) -> Vec<i64> {
        (1..=5).map(|i| f.balanced(*p.a(i))).collect()
    }

    #[test]
    fn locus_and_closed_form_agree_on_known_row() {
        let f = PrimeField::new(11).unwrap();
        let alpha = f.reduce_i64(-3);
        assert_eq!(
            balanced(&f, &section4_params(&f, &alpha).unwrap()),
            vec![2, 3, 5, 2, -5]
        );
        assert_eq!(
            balanced(&f, &theorem_params(&f, &alpha).unwrap()),
            vec![2, 3, 5, 2, -5]
        );
        let f19 = PrimeField::new(19).unwrap();
        let p = section4_params(&f19, &7).unwrap();
        assert_eq!(balanced(&f19, &p), vec![-7, -2, 7, 1, 8]);
    }

    #[test]
    fn alpha_one_parameters_mod_five() {
        let f = PrimeField::new(5).unwrap();
        let p = theorem_params(&f, &1).unwrap();
        // -12/7-384/49-8/7 etc. reduced mod 5
        let expect = [
            f.from_rational(&"-524/49".parse().unwrap()).unwrap(),
            f.from_rational(&"-396/49".parse().unwrap()).unwrap(),
            f.from_rational(&"-368/49".parse().unwrap()).unwrap(),
            f.from_rational(&"-104/49".parse().unwrap()).unwrap(),
            f.from_i64(92),
        ];
        assert_eq!(&p.all()[..5], &expect);
    }

    #[test]
    fn locus_params_reduce_to_closed_form() {
        let k = minpoly_field();
        let alpha = k.generator();
        let s4 = section4_params(&k, &alpha).unwrap();
        let th = theorem_params(&k, &alpha).unwrap();
        assert_eq!(s4, th);
    }

    #[test]
    fn locus_params_check_denominators() {
        let f = PrimeField::new(13).unwrap();
        // 5² = -1 mod 13
        assert!(matches!(
            section4_params(&f, &5),
            Err(FamilyError::NotInvertible(_))
        ));
        assert!(matches!(
            section4_params(&f, &0),
            Err(FamilyError::NotInvertible(_))
        ));
    }

    #[test]
    fn parameter_record_serializes() {
        let f = PrimeField::new(11).unwrap();
        let p = FamilyParams::from_i64s(&f, [2, 3, 5, 2, -5]).unwrap();
        let json = serde_json::to_value(p.record()).unwrap();
        assert_eq!(json["field"]["kind"], "fp");
        assert_eq!(json["a"][4], "6");
        assert_eq!(json["a"][6], "1");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn surface_homogeneous_and_even_in_y(a in prop::array::uniform5(0u64..31)) {
            let f = PrimeField::new(31).unwrap();
            let r = surface_ring(&f);
            let s = build_s(&r, &FamilyParams::new(&f, a).unwrap()).unwrap();
            prop_assert!(s.is_homogeneous());
            prop_assert_eq!(s.degree(), Some(7));
            let minus_y = s.substitute(1, &r.var("y").neg()).unwrap();
            prop_assert_eq!(minus_y, s);
        }

        #[test]
        fn weight_identity(a in prop::array::uniform7(0u64..31), lambda in 1u64..31) {
            let f = PrimeField::new(31).unwrap();
            let r = surface_ring(&f);
            let p = FamilyParams::with_all(&f, a).unwrap();
            let lw = r.constant(lambda) * r.var("w");
            let lhs = build_s(&r, &p).unwrap().substitute(3, &lw).unwrap();
            let rhs = build_s(&r, &p.rescaled(&lambda)).unwrap();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn line_product_identity_mod_p(p in prop::sample::select(vec![5u64, 11, 13, 17, 19, 23, 29, 31, 101])) {
            let f = PrimeField::new(p).unwrap();
            prop_assert!(line_product(&plane_ring(&f)).is_ok());
        }
    }
}
