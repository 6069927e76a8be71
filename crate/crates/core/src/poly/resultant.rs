use super::{PolyError, PolyMatrix, Polynomial, RingExt};
use crate::arith::Field;

/// Sylvester matrix of `f` and `g` with respect to `var`: `deg g` shifted
/// rows of `f`'s coefficients followed by `deg f` shifted rows of `g`'s,
/// highest power first.
pub fn sylvester_matrix<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    var: usize,
) -> Result<PolyMatrix<F>, PolyError> {
    if !f.same_ring(g) {
        return Err(PolyError::RingMismatch);
    }
    let name = || f.ring().vars()[var].clone();
    let (m, n) = (f.degree_in(var) as usize, g.degree_in(var) as usize);
    if f.is_zero() || g.is_zero() || m == 0 || n == 0 {
        return Err(PolyError::ZeroDegree(name()));
    }
    let fc = f.coefficients_in(var);
    let gc = g.coefficients_in(var);
    let zero = f.ring().zero();
    let size = m + n;
    let mut rows = Vec::with_capacity(size);
    for i in 0..n {
        let mut row = vec![zero.clone(); size];
        for k in 0..=m {
            row[i + k] = fc[m - k].clone();
        }
        rows.push(row);
    }
    for i in 0..m {
        let mut row = vec![zero.clone(); size];
        for k in 0..=n {
            row[i + k] = gc[n - k].clone();
        }
        rows.push(row);
    }
    PolyMatrix::new(rows)
}

/// Resultant with respect to `var`: the determinant of the Sylvester matrix
/// (rows of `f` first), computed by fraction-free Bareiss elimination.
/// Swapping the arguments multiplies the result by `(-1)^(deg f * deg g)`.
pub fn resultant<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    var: usize,
) -> Result<Polynomial<F>, PolyError> {
    let s = sylvester_matrix(f, g, var)?;
    bareiss_det(s.into_rows())
}

fn bareiss_det<F: Field>(mut a: Vec<Vec<Polynomial<F>>>) -> Result<Polynomial<F>, PolyError> {
    let n = a.len();
    let ring = a[0][0].ring().clone();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n.saturating_sub(1) {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    negate = !negate;
                }
                None => return Ok(ring.zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.exact_div(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { det.neg() } else { det })
}

/// Division with remainder in one variable: `f = q*g + r` with
/// `deg_var r < deg_var g`. The leading coefficient of `g` in `var` must be
/// a nonzero constant; other variables ride along in the coefficients.
pub fn divide_univariate<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    var: usize,
) -> Result<(Polynomial<F>, Polynomial<F>), PolyError> {
    if !f.same_ring(g) {
        return Err(PolyError::RingMismatch);
    }
    if g.is_zero() {
        return Err(PolyError::DivisionByZero);
    }
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let dg = g.degree_in(var);
    let gc = g.coefficients_in(var);
    let lead = &gc[dg as usize];
    if !lead.is_constant() {
        return Err(PolyError::NonConstantLeadingCoefficient(
            ring.vars()[var].clone(),
        ));
    }
    let lc_inv = field.inv(lead.leading_coeff().unwrap())?;
    let mut rem = f.clone();
    let mut quot = ring.zero();
    while !rem.is_zero() && rem.degree_in(var) >= dg {
        let dr = rem.degree_in(var);
        let top = rem.coefficients_in(var).swap_remove(dr as usize);
        let shift = super::Monomial::var(var, dr - dg);
        let t = top.mul_term(&lc_inv, &shift);
        rem = &rem - &(&t * g);
        quot = &quot + &t;
    }
    Ok((quot, rem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};
    use crate::poly::{determinant, MonomialOrder, PolyRing, Ring};
    use proptest::prelude::*;

    fn qring() -> Ring<Rationals> {
        PolyRing::new(Rationals, &["x", "a", "b"], MonomialOrder::DegRevLex).unwrap()
    }

    #[test]
    fn linear_resultant() {
        let r = qring();
        let res = resultant(&r.parse("x-a").unwrap(), &r.parse("x-b").unwrap(), 0).unwrap();
        // det [[1, -a], [1, -b]] = a - b
        assert_eq!(res, r.parse("a-b").unwrap());
    }

    #[test]
    fn bareiss_agrees_with_cofactor_expansion() {
        let r = qring();
        let f = r.parse("a*x^2+b*x+1").unwrap();
        let g = r.parse("x^3-a*x+b^2").unwrap();
        let s = sylvester_matrix(&f, &g, 0).unwrap();
        assert_eq!(resultant(&f, &g, 0).unwrap(), determinant(&s).unwrap());
    }

    #[test]
    fn zero_degree_rejected() {
        let r = qring();
        assert!(matches!(
            resultant(&r.parse("a").unwrap(), &r.parse("x").unwrap(), 0),
            Err(PolyError::ZeroDegree(_))
        ));
    }

    #[test]
    fn univariate_division() {
        let r = PolyRing::new(Rationals, &["z"], MonomialOrder::DegRevLex).unwrap();
        let (q, rem) =
            divide_univariate(&r.parse("z^2+1").unwrap(), &r.parse("z+1").unwrap(), 0).unwrap();
        assert_eq!(q, r.parse("z-1").unwrap());
        assert_eq!(rem, r.from_i64(2));
        assert!(matches!(
            divide_univariate(&r.one(), &r.zero(), 0),
            Err(PolyError::DivisionByZero)
        ));
    }

    fn f101() -> Ring<PrimeField> {
        PolyRing::new(
            PrimeField::new(101).unwrap(),
            &["x", "y"],
            MonomialOrder::DegRevLex,
        )
        .unwrap()
    }

    fn arb_xpoly(maxdeg: u16) -> impl Strategy<Value = Polynomial<PrimeField>> {
        prop::collection::vec(((0u16..=maxdeg, 0u16..3), 0u64..101), 1..6).prop_map(|ts| {
            let r = f101();
            let terms = ts
                .into_iter()
                .map(|((a, b), c)| (crate::poly::Monomial::from_exps(&[a, b]), c))
                .collect();
            Polynomial::from_terms(&r, terms)
        })
    }

    proptest! {
        #[test]
        fn resultant_symmetry(f in arb_xpoly(3), g in arb_xpoly(3)) {
            prop_assume!(f.degree_in(0) > 0 && g.degree_in(0) > 0);
            let fg = resultant(&f, &g, 0).unwrap();
            let gf = resultant(&g, &f, 0).unwrap();
            let sign = (f.degree_in(0) as u32 * g.degree_in(0) as u32) % 2 == 1;
            prop_assert_eq!(fg, if sign { gf.neg() } else { gf });
        }

        #[test]
        fn common_factor_iff_zero_resultant(
            f in arb_xpoly(2), g in arb_xpoly(2), root in 0u64..101,
        ) {
            let r = f101();
            let field = *r.field();
            // constant-coefficient polys in x only, so "common factor" means common root
            let fx = f.substitute_const(1, &1);
            let gx = g.substitute_const(1, &1);
            prop_assume!(fx.degree_in(0) > 0 && gx.degree_in(0) > 0);
            let lin = &r.var("x") - &r.constant(root);
            let (a, b) = (&fx * &lin, &gx * &lin);
            prop_assert!(resultant(&a, &b, 0).unwrap().is_zero());
            // resultant nonzero iff no common root over the prime field and
            // gcd trivial; compare against a univariate gcd oracle
            let to_uni = |p: &Polynomial<PrimeField>| {
                let mut v = vec![0u64; p.degree_in(0) as usize + 1];
                for (m, c) in p.terms() { v[m.get(0) as usize] = *c; }
                crate::arith::UniPoly::from_coeffs(&field, v)
            };
            let gcd = to_uni(&fx).gcd(&field, &to_uni(&gx));
            let res = resultant(&fx, &gx, 0).unwrap();
            prop_assert_eq!(res.is_zero(), gcd.degree().unwrap_or(0) > 0);
        }

        #[test]
        fn univariate_division_reconstructs(f in arb_xpoly(5), g in arb_xpoly(3)) {
            let gx = g.substitute_const(1, &1);
            prop_assume!(!gx.is_zero());
            let (q, rem) = divide_univariate(&f, &gx, 0).unwrap();
            prop_assert_eq!(&(&q * &gx) + &rem, f);
            prop_assert!(rem.is_zero() || rem.degree_in(0) < gx.degree_in(0));
        }
    }
}
