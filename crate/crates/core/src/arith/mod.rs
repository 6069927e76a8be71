//! Exact coefficient fields.
//!
//! Every field used by the pipeline implements [`Field`]. Elements are plain
//! values in canonical form; the field object carries the context (modulus,
//! minimal polynomial, discriminant) and performs all arithmetic.

mod number_field;
mod prime;
mod quadratic;
mod rational;
mod rational_function;
mod roots;
mod unipoly;

use std::fmt::Debug;
use std::hash::Hash;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use number_field::NumberField;
pub use prime::{is_prime, PrimeField};
pub use quadratic::{QuadElem, QuadraticExt};
pub use rational::{parse_rational, Rationals};
pub use rational_function::{RatFun, RationalFunctions};
pub use roots::{real_root_isolate, roots_mod_p, to_decimal, IsolatingInterval};
pub use unipoly::UniPoly;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element is a zero divisor in {0}")]
    NotInvertible(String),
    #[error("field descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(String, String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {0} divides the leading coefficient")]
    LeadingCoefficientDivisible(u64),
    #[error("invalid minimal polynomial: {0}")]
    InvalidMinpoly(String),
    #[error("cannot map {0} into {1}")]
    NotRepresentable(String, String),
}

/// Describes a coefficient field for reports and serialization.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FieldDescriptor {
    Q,
    Fp {
        p: u64,
    },
    NumberField {
        base: Box<FieldDescriptor>,
        variable: String,
        minpoly: String,
    },
    RationalFunctions {
        base: Box<FieldDescriptor>,
        variable: String,
    },
    QuadraticExt {
        base: Box<FieldDescriptor>,
        generator: String,
        discriminant: String,
    },
}

impl std::fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldDescriptor::Q => write!(f, "QQ"),
            FieldDescriptor::Fp { p } => write!(f, "GF({p})"),
            FieldDescriptor::NumberField {
                base,
                variable,
                minpoly,
            } => write!(f, "{base}[{variable}]/({minpoly})"),
            FieldDescriptor::RationalFunctions { base, variable } => {
                write!(f, "{base}({variable})")
            }
            FieldDescriptor::QuadraticExt {
                base,
                generator,
                discriminant,
            } => write!(f, "{base}({generator}), {generator}^2 = {discriminant}"),
        }
    }
}

/// Arithmetic interface shared by every coefficient field.
///
/// Elements never carry their field; mixing elements of two different fields
/// is caught one level up, where polynomial rings compare their contexts.
pub trait Field: Clone + Debug + PartialEq + Send + Sync + 'static {
    type Elem: Clone + Debug + PartialEq + Eq + Hash + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem, ArithError>;

    /// Image of a rational number; fails when the denominator vanishes.
    fn from_rational(&self, q: &BigRational) -> Result<Self::Elem, ArithError>;

    /// 0 for characteristic zero.
    fn characteristic(&self) -> u64;
    fn descriptor(&self) -> FieldDescriptor;
    fn format_elem(&self, a: &Self::Elem) -> String;

    /// True when the printed form needs parentheses inside a product.
    fn is_compound(&self, _a: &Self::Elem) -> bool {
        false
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem, ArithError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(n.into()))
            .expect("integers always map into a field")
    }

    /// Monic gcd of univariate polynomials over this field. Fields with a
    /// faster method than the Euclidean algorithm override it.
    fn uni_gcd(&self, a: &UniPoly<Self::Elem>, b: &UniPoly<Self::Elem>) -> UniPoly<Self::Elem> {
        a.euclid_gcd(self, b)
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Checked binary operation on two elements that are each tagged with the
/// descriptor of the field they came from.
pub fn field_arith<F: Field>(
    field: &F,
    (a, a_field): (&F::Elem, &FieldDescriptor),
    (b, b_field): (&F::Elem, &FieldDescriptor),
    op: FieldOp,
) -> Result<F::Elem, ArithError> {
    let own = field.descriptor();
    for d in [a_field, b_field] {
        if *d != own {
            return Err(ArithError::DescriptorMismatch(
                own.to_string(),
                d.to_string(),
            ));
        }
    }
    Ok(match op {
        FieldOp::Add => field.add(a, b),
        FieldOp::Sub => field.sub(a, b),
        FieldOp::Mul => field.mul(a, b),
        FieldOp::Div => field.div(a, b)?,
    })
}

/// Sum of products, used by determinant and resultant code.
pub fn dot<F: Field>(field: &F, a: &[F::Elem], b: &[F::Elem]) -> F::Elem {
    a.iter().zip(b).fold(field.zero(), |acc, (x, y)| {
        field.add(&acc, &field.mul(x, y))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn descriptor_mismatch_is_reported() {
        let f11 = PrimeField::new(11).unwrap();
        let f13 = PrimeField::new(13).unwrap().descriptor();
        let own = f11.descriptor();
        let err = field_arith(&f11, (&3, &own), (&4, &f13), FieldOp::Add).unwrap_err();
        assert!(matches!(err, ArithError::DescriptorMismatch(..)));
        let ok = field_arith(&f11, (&3, &own), (&4, &own), FieldOp::Mul).unwrap();
        assert_eq!(ok, 1);
    }

    #[test]
    fn division_by_zero_is_an_error() {
        let q = Rationals;
        let own = q.descriptor();
        let one = q.one();
        let zero = q.zero();
        assert_eq!(
            field_arith(&q, (&one, &own), (&zero, &own), FieldOp::Div),
            Err(ArithError::DivisionByZero)
        );
    }

    #[test]
    fn descriptors_serialize() {
        let d = FieldDescriptor::NumberField {
            base: Box::new(FieldDescriptor::Q),
            variable: "alpha".into(),
            minpoly: "7*alpha^3+7*alpha+1".into(),
        };
        let s = serde_json::to_string(&d).unwrap();
        assert!(s.contains("7*alpha^3+7*alpha+1"));
        let back: FieldDescriptor = serde_json::from_str(&s).unwrap();
        assert_eq!(back, d);
        assert_eq!(d.to_string(), "QQ[alpha]/(7*alpha^3+7*alpha+1)");
    }
}
