use num_rational::BigRational;

use super::{ArithError, Field, FieldDescriptor, UniPoly};

/// A reduced fraction `num/den` with `gcd(num, den) = 1` and `den` monic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RatFun<E> {
    pub num: UniPoly<E>,
    pub den: UniPoly<E>,
}

/// The rational function field `K(t)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RationalFunctions<K: Field> {
    base: K,
    variable: String,
}

impl<K: Field> RationalFunctions<K> {
    pub fn new(base: K, variable: &str) -> Self {
        RationalFunctions {
            base,
            variable: variable.to_string(),
        }
    }

    pub fn base(&self) -> &K {
        &self.base
    }

    pub fn variable(&self) -> &str {
        &self.variable
    }

    pub fn generator(&self) -> RatFun<K::Elem> {
        self.from_poly(UniPoly::monomial(&self.base, self.base.one(), 1))
    }

    pub fn from_poly(&self, p: UniPoly<K::Elem>) -> RatFun<K::Elem> {
        RatFun {
            num: p,
            den: UniPoly::one(&self.base),
        }
    }

    pub fn from_base(&self, c: K::Elem) -> RatFun<K::Elem> {
        self.from_poly(UniPoly::constant(&self.base, c))
    }

    /// Builds `num/den` in canonical form.
    pub fn fraction(
        &self,
        num: UniPoly<K::Elem>,
        den: UniPoly<K::Elem>,
    ) -> Result<RatFun<K::Elem>, ArithError> {
        if den.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(self.zero());
        }
        let k = &self.base;
        let g = num.gcd(k, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (num.divrem(k, &g)?.0, den.divrem(k, &g)?.0)
        };
        let lc = k.inv(den.leading().unwrap())?;
        if !k.is_one(&lc) {
            num = num.scale(k, &lc);
            den = den.scale(k, &lc);
        }
        Ok(RatFun { num, den })
    }

    /// Evaluates at a point of the base field; fails if the denominator
    /// vanishes there.
    pub fn eval(&self, a: &RatFun<K::Elem>, t: &K::Elem) -> Result<K::Elem, ArithError> {
        let k = &self.base;
        k.div(&a.num.eval(k, t), &a.den.eval(k, t))
    }

    pub fn is_polynomial(&self, a: &RatFun<K::Elem>) -> bool {
        a.den.degree() == Some(0)
    }
}

impl<K: Field> Field for RationalFunctions<K> {
    type Elem = RatFun<K::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_poly(UniPoly::zero())
    }
    fn one(&self) -> Self::Elem {
        self.from_base(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.num.is_zero()
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        if a.den == b.den {
            return self
                .fraction(a.num.add(k, &b.num), a.den.clone())
                .expect("nonzero denominator");
        }
        let num = a.num.mul(k, &b.den).add(k, &b.num.mul(k, &a.den));
        self.fraction(num, a.den.mul(k, &b.den))
            .expect("nonzero denominator")
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        RatFun {
            num: a.num.neg(&self.base),
            den: a.den.clone(),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        if a.num.is_zero() || b.num.is_zero() {
            return self.zero();
        }
        let k = &self.base;
        // cross-cancel before multiplying to keep degrees small
        let g1 = a.num.gcd(k, &b.den);
        let g2 = b.num.gcd(k, &a.den);
        let div = |p: &UniPoly<K::Elem>, g: &UniPoly<K::Elem>| {
            if g.degree() == Some(0) {
                p.clone()
            } else {
                p.divrem(k, g).expect("gcd divides").0
            }
        };
        let num = div(&a.num, &g1).mul(k, &div(&b.num, &g2));
        let den = div(&a.den, &g2).mul(k, &div(&b.den, &g1));
        let lc = k.inv(den.leading().unwrap()).unwrap();
        RatFun {
            num: num.scale(k, &lc),
            den: den.scale(k, &lc),
        }
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError> {
        if a.num.is_zero() {
            return Err(ArithError::DivisionByZero);
        }
        self.fraction(a.den.clone(), a.num.clone())
    }
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, ArithError> {
        Ok(self.from_base(self.base.from_rational(q)?))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::RationalFunctions {
            base: Box::new(self.base.descriptor()),
            variable: self.variable.clone(),
        }
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        let num = a.num.format(&self.base, &self.variable);
        if self.is_polynomial(a) {
            num
        } else {
            let den = a.den.format(&self.base, &self.variable);
            format!("({num})/({den})")
        }
    }
    fn is_compound(&self, a: &Self::Elem) -> bool {
        !self.is_polynomial(a)
            || a.num
                .coeffs()
                .iter()
                .filter(|c| !self.base.is_zero(c))
                .count()
                > 1
            || a.num.coeffs().iter().any(|c| self.base.is_compound(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::Rationals;

    #[test]
    fn canonical_fractions() {
        let k = RationalFunctions::new(Rationals, "alpha");
        let q = Rationals;
        // (2a+2)/(4a^2-4) = (1/2)/(a-1)
        let f = k
            .fraction(
                UniPoly::from_i64s(&q, &[2, 2]),
                UniPoly::from_i64s(&q, &[-4, 0, 4]),
            )
            .unwrap();
        assert_eq!(f.den, UniPoly::from_i64s(&q, &[-1, 1]));
        assert_eq!(
            f.num,
            UniPoly::constant(&q, BigRational::new(1.into(), 2.into()))
        );
        let a = k.generator();
        let one = k.one();
        let g = k
            .div(&one, &k.sub(&k.mul(&k.from_i64(2), &a), &k.from_i64(2)))
            .unwrap();
        assert_eq!(f, g);
        assert_eq!(k.format_elem(&f), "(1/2)/(alpha-1)");
    }

    #[test]
    fn inverse_round_trip() {
        let k = RationalFunctions::new(Rationals, "alpha");
        let a = k.generator();
        let x = k.add(&k.mul(&a, &a), &k.one());
        let y = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
        assert_eq!(k.sub(&x, &x), k.zero());
        assert!(k.inv(&k.zero()).is_err());
    }
}
