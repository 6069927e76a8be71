use std::sync::Arc;

use num_rational::BigRational;

use super::{ArithError, Field, FieldDescriptor, UniPoly};

/// `K[t]/(m(t))` for a univariate `m` over a base field `K`.
///
/// Elements are coefficient vectors of length `deg m` (constant term first).
/// The minimal polynomial is stored monic; the caller's original form is
/// kept only for printing. If `m` is reducible over `K` the quotient ring has
/// zero divisors and inverting one of them fails with `NotInvertible`.
#[derive(Debug, Clone)]
pub struct NumberField<K: Field> {
    inner: Arc<Inner<K>>,
}

#[derive(Debug)]
struct Inner<K: Field> {
    base: K,
    monic: UniPoly<K::Elem>,
    original: UniPoly<K::Elem>,
    variable: String,
}

impl<K: Field> PartialEq for NumberField<K> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner)
            || (self.inner.base == other.inner.base
                && self.inner.monic == other.inner.monic
                && self.inner.variable == other.inner.variable)
    }
}

impl<K: Field> NumberField<K> {
    pub fn new(base: K, minpoly: UniPoly<K::Elem>, variable: &str) -> Result<Self, ArithError> {
        match minpoly.degree() {
            None | Some(0) => {
                return Err(ArithError::InvalidMinpoly(
                    "minimal polynomial must have degree >= 1".into(),
                ))
            }
            _ => {}
        }
        let monic = minpoly.monic(&base);
        Ok(NumberField {
            inner: Arc::new(Inner {
                base,
                monic,
                original: minpoly,
                variable: variable.to_string(),
            }),
        })
    }

    pub fn base(&self) -> &K {
        &self.inner.base
    }

    pub fn degree(&self) -> usize {
        self.inner.monic.degree().unwrap()
    }

    pub fn variable(&self) -> &str {
        &self.inner.variable
    }

    /// The minimal polynomial in the form it was given.
    pub fn minpoly(&self) -> &UniPoly<K::Elem> {
        &self.inner.original
    }

    pub fn minpoly_string(&self) -> String {
        self.inner
            .original
            .format(&self.inner.base, &self.inner.variable)
    }

    /// The generator `t`.
    pub fn generator(&self) -> Vec<K::Elem> {
        let k = self.base();
        self.reduce(&UniPoly::monomial(k, k.one(), 1))
    }

    pub fn from_base(&self, c: K::Elem) -> Vec<K::Elem> {
        self.reduce(&UniPoly::constant(self.base(), c))
    }

    /// Canonical representative of an arbitrary polynomial in `t`.
    pub fn reduce(&self, p: &UniPoly<K::Elem>) -> Vec<K::Elem> {
        let k = self.base();
        let r = p.rem(k, &self.inner.monic).expect("monic modulus");
        self.pad(r)
    }

    fn pad(&self, r: UniPoly<K::Elem>) -> Vec<K::Elem> {
        let mut v = r.into_coeffs();
        v.resize(self.degree(), self.base().zero());
        v
    }

    pub fn to_poly(&self, a: &[K::Elem]) -> UniPoly<K::Elem> {
        UniPoly::from_coeffs(self.base(), a.to_vec())
    }

    /// Reduces an element already in canonical form; a no-op by construction.
    pub fn reduce_elem(&self, a: &[K::Elem]) -> Vec<K::Elem> {
        self.reduce(&self.to_poly(a))
    }
}

impl<K: Field> Field for NumberField<K> {
    type Elem = Vec<K::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base().zero(); self.degree()]
    }
    fn one(&self) -> Self::Elem {
        self.from_base(self.base().one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.iter().all(|c| self.base().is_zero(c))
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.base().add(x, y))
            .collect()
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter()
            .zip(b)
            .map(|(x, y)| self.base().sub(x, y))
            .collect()
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.base().neg(x)).collect()
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = self.base();
        let prod = self.to_poly(a).mul(k, &self.to_poly(b));
        self.reduce(&prod)
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError> {
        if self.is_zero(a) {
            return Err(ArithError::DivisionByZero);
        }
        let k = self.base();
        let (g, s, _) = self.to_poly(a).ext_gcd(k, &self.inner.monic);
        if g.degree() != Some(0) {
            return Err(ArithError::NotInvertible(self.descriptor().to_string()));
        }
        Ok(self.pad(s))
    }
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, ArithError> {
        Ok(self.from_base(self.base().from_rational(q)?))
    }
    fn characteristic(&self) -> u64 {
        self.base().characteristic()
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::NumberField {
            base: Box::new(self.base().descriptor()),
            variable: self.inner.variable.clone(),
            minpoly: self.minpoly_string(),
        }
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        self.to_poly(a).format(self.base(), &self.inner.variable)
    }
    fn is_compound(&self, a: &Self::Elem) -> bool {
        a.iter().skip(1).any(|c| !self.base().is_zero(c)) || self.base().is_compound(&a[0])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};

    fn qalpha() -> NumberField<Rationals> {
        NumberField::new(
            Rationals,
            UniPoly::from_i64s(&Rationals, &[1, 7, 0, 7]),
            "alpha",
        )
        .unwrap()
    }

    #[test]
    fn alpha_cubed_reduces() {
        let k = qalpha();
        let a = k.generator();
        let a3 = k.pow(&a, 3);
        // alpha^3 = -alpha - 1/7
        let q = Rationals;
        let expected = vec![
            BigRational::new((-1).into(), 7.into()),
            q.from_i64(-1),
            q.zero(),
        ];
        assert_eq!(a3, expected);
        assert_eq!(k.reduce_elem(&a3), a3);
        assert_eq!(k.minpoly_string(), "7*alpha^3+7*alpha+1");
    }

    #[test]
    fn beta_squared_is_twelve_sevenths_squared() {
        let k = qalpha();
        let a = k.generator();
        // 16 a (2a^5 + 4a^3 - a^2 + 2a - 1)
        let inner = k.reduce(&UniPoly::from_i64s(&Rationals, &[-1, 2, -1, 4, 0, 2]));
        let b2 = k.mul(&k.mul(&k.from_i64(16), &a), &inner);
        let expected = k
            .from_rational(&BigRational::new(144.into(), 49.into()))
            .unwrap();
        assert_eq!(b2, expected);
    }

    #[test]
    fn inverse_over_rationals() {
        let k = qalpha();
        let x = k.add(&k.generator(), &k.from_i64(3));
        let y = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
    }

    #[test]
    fn zero_divisors_mod_p() {
        // 7a^3+7a+1 has the root 1 mod 5, so (a - 1) is a zero divisor
        let f5 = PrimeField::new(5).unwrap();
        let k = NumberField::new(f5, UniPoly::from_i64s(&f5, &[1, 7, 0, 7]), "alpha").unwrap();
        let x = k.sub(&k.generator(), &k.one());
        assert!(matches!(k.inv(&x), Err(ArithError::NotInvertible(_))));
    }

    #[test]
    fn constant_minpoly_rejected() {
        assert!(NumberField::new(Rationals, UniPoly::from_i64s(&Rationals, &[3]), "a").is_err());
    }
}
