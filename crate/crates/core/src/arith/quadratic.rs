use num_rational::BigRational;

use super::{ArithError, Field, FieldDescriptor};

/// `c + b*d` with `b^2` equal to the extension's discriminant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadElem<E> {
    pub c: E,
    pub d: E,
}

/// Formal adjunction of a square root `b` of `disc` to `K`.
///
/// Whether `disc` is a square in `K` is not checked. If it is, some nonzero
/// elements have zero norm and inverting them fails with `NotInvertible`.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticExt<K: Field> {
    base: K,
    disc: K::Elem,
    generator: String,
}

impl<K: Field> QuadraticExt<K> {
    pub fn new(base: K, disc: K::Elem, generator: &str) -> Self {
        QuadraticExt {
            base,
            disc,
            generator: generator.to_string(),
        }
    }

    pub fn base(&self) -> &K {
        &self.base
    }

    pub fn discriminant(&self) -> &K::Elem {
        &self.disc
    }

    pub fn generator(&self) -> QuadElem<K::Elem> {
        QuadElem {
            c: self.base.zero(),
            d: self.base.one(),
        }
    }

    pub fn from_base(&self, c: K::Elem) -> QuadElem<K::Elem> {
        QuadElem {
            c,
            d: self.base.zero(),
        }
    }

    pub fn conjugate(&self, a: &QuadElem<K::Elem>) -> QuadElem<K::Elem> {
        QuadElem {
            c: a.c.clone(),
            d: self.base.neg(&a.d),
        }
    }

    /// `c^2 - disc*d^2`, the product of an element with its conjugate.
    pub fn norm(&self, a: &QuadElem<K::Elem>) -> K::Elem {
        let k = &self.base;
        k.sub(&k.mul(&a.c, &a.c), &k.mul(&self.disc, &k.mul(&a.d, &a.d)))
    }
}

impl<K: Field> Field for QuadraticExt<K> {
    type Elem = QuadElem<K::Elem>;

    fn zero(&self) -> Self::Elem {
        self.from_base(self.base.zero())
    }
    fn one(&self) -> Self::Elem {
        self.from_base(self.base.one())
    }
    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.base.is_zero(&a.c) && self.base.is_zero(&a.d)
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        QuadElem {
            c: self.base.add(&a.c, &b.c),
            d: self.base.add(&a.d, &b.d),
        }
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        QuadElem {
            c: self.base.sub(&a.c, &b.c),
            d: self.base.sub(&a.d, &b.d),
        }
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        QuadElem {
            c: self.base.neg(&a.c),
            d: self.base.neg(&a.d),
        }
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let k = &self.base;
        let dd = k.mul(&a.d, &b.d);
        QuadElem {
            c: k.add(&k.mul(&a.c, &b.c), &k.mul(&self.disc, &dd)),
            d: k.add(&k.mul(&a.c, &b.d), &k.mul(&a.d, &b.c)),
        }
    }
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError> {
        if self.is_zero(a) {
            return Err(ArithError::DivisionByZero);
        }
        let k = &self.base;
        let n = self.norm(a);
        if k.is_zero(&n) {
            return Err(ArithError::NotInvertible(self.descriptor().to_string()));
        }
        let ninv = k.inv(&n)?;
        Ok(QuadElem {
            c: k.mul(&a.c, &ninv),
            d: k.neg(&k.mul(&a.d, &ninv)),
        })
    }
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, ArithError> {
        Ok(self.from_base(self.base.from_rational(q)?))
    }
    fn characteristic(&self) -> u64 {
        self.base.characteristic()
    }
    fn descriptor(&self) -> FieldDescriptor {
        FieldDescriptor::QuadraticExt {
            base: Box::new(self.base.descriptor()),
            generator: self.generator.clone(),
            discriminant: self.base.format_elem(&self.disc),
        }
    }
    fn format_elem(&self, a: &Self::Elem) -> String {
        let k = &self.base;
        let c = k.format_elem(&a.c);
        if k.is_zero(&a.d) {
            return c;
        }
        let d = if k.is_one(&a.d) {
            self.generator.clone()
        } else {
            format!("({})*{}", k.format_elem(&a.d), self.generator)
        };
        if k.is_zero(&a.c) {
            d
        } else {
            format!("{c}+{d}")
        }
    }
    fn is_compound(&self, a: &Self::Elem) -> bool {
        !self.base.is_zero(&a.d) || self.base.is_compound(&a.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{PrimeField, Rationals};

    #[test]
    fn sqrt_two_arithmetic() {
        let q = Rationals;
        let k = QuadraticExt::new(q, q.from_i64(2), "beta");
        let b = k.generator();
        assert_eq!(k.mul(&b, &b), k.from_i64(2));
        let x = k.add(&k.one(), &b);
        let y = k.inv(&x).unwrap();
        assert_eq!(k.mul(&x, &y), k.one());
        assert_eq!(k.norm(&x), q.from_i64(-1));
    }

    #[test]
    fn square_discriminant_has_zero_divisors() {
        let f = PrimeField::new(11).unwrap();
        // 9 = 3^2, so 3 - beta has norm 0
        let k = QuadraticExt::new(f, 9, "beta");
        let x = k.sub(&k.from_i64(3), &k.generator());
        assert!(matches!(k.inv(&x), Err(ArithError::NotInvertible(_))));
    }
}
