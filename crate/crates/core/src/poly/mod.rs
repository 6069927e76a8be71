//! Sparse multivariate polynomials over any [`Field`].

mod calculus;
mod monomial;
mod parse;
mod resultant;

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::arith::{ArithError, Field};

pub use calculus::{determinant, hessian_det, jacobian, PolyMatrix};
pub use monomial::{Monomial, MonomialOrder, MAX_VARS};
pub use resultant::{divide_univariate, resultant, sylvester_matrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("polynomials live in different rings")]
    RingMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("too many variables ({0}); at most {MAX_VARS} are supported")]
    TooManyVariables(usize),
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("division is not exact")]
    NotExact,
    #[error("polynomial must have positive degree in `{0}`")]
    ZeroDegree(String),
    #[error("leading coefficient in `{0}` is not a constant")]
    NonConstantLeadingCoefficient(String),
    #[error("matrix is not square")]
    NotSquare,
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Arith(#[from] ArithError),
}

/// Variables, coefficient field and monomial order of a polynomial ring.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyRing<F: Field> {
    field: F,
    vars: Vec<String>,
    order: MonomialOrder,
}

pub type Ring<F> = Arc<PolyRing<F>>;

impl<F: Field> PolyRing<F> {
    pub fn new(field: F, vars: &[&str], order: MonomialOrder) -> Result<Ring<F>, PolyError> {
        if vars.len() > MAX_VARS {
            return Err(PolyError::TooManyVariables(vars.len()));
        }
        Ok(Arc::new(PolyRing {
            field,
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order,
        }))
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Result<usize, PolyError> {
        self.vars
            .iter()
            .position(|v| v == name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))
    }

    #[inline]
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        self.order.cmp(a, b, self.vars.len())
    }

    /// Same variables and field with another order.
    pub fn with_order(&self, order: MonomialOrder) -> Ring<F> {
        Arc::new(PolyRing {
            field: self.field.clone(),
            vars: self.vars.clone(),
            order,
        })
    }
}

pub trait RingExt<F: Field> {
    fn zero(&self) -> Polynomial<F>;
    fn one(&self) -> Polynomial<F>;
    fn constant(&self, c: F::Elem) -> Polynomial<F>;
    fn from_i64(&self, n: i64) -> Polynomial<F>;
    fn var(&self, name: &str) -> Polynomial<F>;
    fn var_at(&self, i: usize) -> Polynomial<F>;
    fn term(&self, c: F::Elem, m: Monomial) -> Polynomial<F>;
    fn parse(&self, s: &str) -> Result<Polynomial<F>, PolyError>;
}

impl<F: Field> RingExt<F> for Ring<F> {
    fn zero(&self) -> Polynomial<F> {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }
    fn one(&self) -> Polynomial<F> {
        self.constant(self.field.one())
    }
    fn constant(&self, c: F::Elem) -> Polynomial<F> {
        self.term(c, Monomial::ONE)
    }
    fn from_i64(&self, n: i64) -> Polynomial<F> {
        self.constant(self.field.from_i64(n))
    }
    /// Panics on an unknown name; use [`PolyRing::var_index`] to check first.
    fn var(&self, name: &str) -> Polynomial<F> {
        let i = self.var_index(name).expect("known variable");
        self.var_at(i)
    }
    fn var_at(&self, i: usize) -> Polynomial<F> {
        self.term(self.field.one(), Monomial::var(i, 1))
    }
    fn term(&self, c: F::Elem, m: Monomial) -> Polynomial<F> {
        let terms = if self.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }
    fn parse(&self, s: &str) -> Result<Polynomial<F>, PolyError> {
        parse::parse(self, s)
    }
}

/// A polynomial: terms sorted strictly descending in the ring's order, no
/// zero coefficients.
#[derive(Clone)]
pub struct Polynomial<F: Field> {
    ring: Ring<F>,
    terms: Vec<(Monomial, F::Elem)>,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.terms == other.terms
    }
}

impl<F: Field> fmt::Debug for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<F: Field> Polynomial<F> {
    /// Builds a polynomial from arbitrary terms, merging duplicates.
    pub fn from_terms(ring: &Ring<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let field = ring.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
        for (m, c) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = field.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| ring.cmp(&b.0, &a.0));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    /// Takes already sorted, zero-free terms.
    pub(crate) fn from_sorted(ring: &Ring<F>, terms: Vec<(Monomial, F::Elem)>) -> Self {
        let p = Polynomial {
            ring: ring.clone(),
            terms,
        };
        debug_assert!(p.is_canonical());
        p
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[(Monomial, F::Elem)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, F::Elem)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    pub fn is_canonical(&self) -> bool {
        let field = self.field();
        self.terms.iter().all(|(_, c)| !field.is_zero(c))
            && self
                .terms
                .windows(2)
                .all(|w| self.ring.cmp(&w[0].0, &w[1].0) == Ordering::Greater)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|(m, _)| m)
    }

    pub fn leading_coeff(&self) -> Option<&F::Elem> {
        self.terms.first().map(|(_, c)| c)
    }

    /// Total degree; `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms
            .iter()
            .map(|(m, _)| m.get(var))
            .max()
            .unwrap_or(0)
    }

    pub fn is_homogeneous(&self) -> bool {
        match self.terms.first() {
            None => true,
            Some((m0, _)) => {
                let d = m0.degree();
                self.terms.iter().all(|(m, _)| m.degree() == d)
            }
        }
    }

    pub fn coeff_of(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(mm, _)| mm == m)
            .map(|(_, c)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    /// Homogeneous component of the given total degree.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(m, _)| m.degree() == d)
            .cloned()
            .collect();
        Self::from_sorted(&self.ring, terms)
    }

    pub fn neg(&self) -> Self {
        let field = self.field();
        let terms = self.terms.iter().map(|(m, c)| (*m, field.neg(c))).collect();
        Self::from_sorted(&self.ring, terms)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (*m, field.mul(a, c)))
            .collect();
        Self::from_sorted(&self.ring, terms)
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) if self.field().is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field().inv(lc).expect("nonzero")),
        }
    }

    /// `self * c * m`.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let field = self.field();
        if field.is_zero(c) {
            return self.ring.zero();
        }
        let terms = self
            .terms
            .iter()
            .map(|(mm, a)| (mm.mul(m), field.mul(a, c)))
            .collect();
        Self::from_sorted(&self.ring, terms)
    }

    /// `self - c * m * g`, merging sorted term lists.
    pub fn sub_mul_term(&self, c: &F::Elem, m: &Monomial, g: &Self) -> Self {
        let field = self.field();
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = g.terms.iter().map(|(gm, gc)| (gm.mul(m), gc)).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let (bm, bc) = b.next().unwrap();
                    out.push((bm, field.neg(&field.mul(c, bc))));
                }
                (Some((am, _)), Some((bm, _))) => match ring.cmp(am, bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let (bm, bc) = b.next().unwrap();
                        out.push((bm, field.neg(&field.mul(c, bc))));
                    }
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap();
                        let (_, bc) = b.next().unwrap();
                        let v = field.sub(ac, &field.mul(c, bc));
                        if !field.is_zero(&v) {
                            out.push((*am, v));
                        }
                    }
                },
            }
        }
        Self::from_sorted(ring, out)
    }

    fn merge(&self, other: &Self, negate_other: bool) -> Self {
        let field = self.field();
        let minus_one = field.neg(&field.one());
        let one = field.one();
        self.sub_mul_term(
            if negate_other { &one } else { &minus_one },
            &Monomial::ONE,
            other,
        )
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(self.ring.zero());
        }
        let (small, large) = if self.len() <= other.len() {
            (self, other)
        } else {
            (other, self)
        };
        if small.len() == 1 {
            let (m, c) = &small.terms[0];
            return Ok(large.mul_term(c, m));
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let v = field.mul(ca, cb);
                match acc.get_mut(&m) {
                    Some(e) => *e = field.add(e, &v),
                    None => {
                        acc.insert(m, v);
                    }
                }
            }
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !field.is_zero(c)).collect();
        terms.sort_unstable_by(|a, b| self.ring.cmp(&b.0, &a.0));
        Ok(Self::from_sorted(&self.ring, terms))
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = self.ring.one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Replaces `var` by `value` (a polynomial of the same ring).
    pub fn substitute(&self, var: usize, value: &Self) -> Result<Self, PolyError> {
        self.check_ring(value)?;
        if var >= self.ring.nvars() {
            return Err(PolyError::UnknownVariable(format!("#{var}")));
        }
        let mut powers = vec![self.ring.one()];
        let mut parts: HashMap<u16, Vec<(Monomial, F::Elem)>> = HashMap::new();
        for (m, c) in &self.terms {
            let e = m.get(var);
            let mut rest = *m;
            rest.set(var, 0);
            parts.entry(e).or_default().push((rest, c.clone()));
        }
        let mut out = self.ring.zero();
        let mut keys: Vec<u16> = parts.keys().copied().collect();
        keys.sort_unstable();
        for e in keys {
            while powers.len() <= e as usize {
                let next = powers.last().unwrap() * value;
                powers.push(next);
            }
            let coeff = Self::from_terms(&self.ring, parts.remove(&e).unwrap());
            out = &out + &(&coeff * &powers[e as usize]);
        }
        Ok(out)
    }

    pub fn substitute_named(&self, var: &str, value: &Self) -> Result<Self, PolyError> {
        let i = self.ring.var_index(var)?;
        self.substitute(i, value)
    }

    /// Substitutes a field constant for `var`.
    pub fn substitute_const(&self, var: usize, value: &F::Elem) -> Self {
        let field = self.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.get(var) as u64;
            let mut rest = *m;
            rest.set(var, 0);
            terms.push((rest, field.mul(c, &field.pow(value, e))));
        }
        Self::from_terms(&self.ring, terms)
    }

    /// Evaluates at a point of the coefficient field.
    pub fn eval(&self, point: &[F::Elem]) -> F::Elem {
        let field = self.field();
        let n = self.ring.nvars();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, x) in point.iter().enumerate().take(n) {
                let e = m.get(i);
                if e > 0 {
                    t = field.mul(&t, &field.pow(x, e as u64));
                }
            }
            acc = field.add(&acc, &t);
        }
        acc
    }

    /// Partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let field = self.field();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let e = m.get(var);
            if e == 0 {
                continue;
            }
            let v = field.mul(c, &field.from_i64(e as i64));
            if field.is_zero(&v) {
                continue;
            }
            let mut mm = *m;
            mm.set(var, e - 1);
            terms.push((mm, v));
        }
        // differentiation preserves the relative order for degrevlex but not
        // for every order, so re-sort
        Self::from_terms(&self.ring, terms)
    }

    /// Moves the polynomial into another ring, mapping variable `i` to
    /// `var_map[i]` and coefficients through `coeff_map`.
    pub fn map_into<G: Field>(
        &self,
        target: &Ring<G>,
        var_map: &[usize],
        coeff_map: impl Fn(&F::Elem) -> Result<G::Elem, ArithError>,
    ) -> Result<Polynomial<G>, PolyError> {
        let n = self.ring.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut mm = Monomial::ONE;
            for (i, &j) in var_map.iter().enumerate().take(n) {
                if j >= target.nvars() {
                    if m.get(i) != 0 {
                        return Err(PolyError::UnknownVariable(self.ring.vars[i].clone()));
                    }
                    continue;
                }
                mm.set(j, mm.get(j) + m.get(i));
            }
            terms.push((mm, coeff_map(c)?));
        }
        Ok(Polynomial::from_terms(target, terms))
    }

    /// Same polynomial viewed in a ring that differs only in its order.
    pub fn reorder(&self, target: &Ring<F>) -> Self {
        Polynomial::from_terms(target, self.terms.clone())
    }

    /// Coefficients with respect to `var`: entry `k` is the coefficient of
    /// `var^k`, a polynomial free of `var`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Self> {
        let d = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Monomial, F::Elem)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let mut rest = *m;
            let e = m.get(var) as usize;
            rest.set(var, 0);
            parts[e].push((rest, c.clone()));
        }
        parts
            .into_iter()
            .map(|t| Polynomial::from_terms(&self.ring, t))
            .collect()
    }

    /// Multivariate division by a single divisor: returns `(q, r)` with
    /// `self = q*g + r` and no term of `r` divisible by `LM(g)`.
    pub fn div_rem(&self, g: &Self) -> Result<(Self, Self), PolyError> {
        self.check_ring(g)?;
        let (glm, glc) = g.terms.first().ok_or(PolyError::DivisionByZero)?;
        let field = self.field();
        let glc_inv = field.inv(glc)?;
        let mut rest = self.clone();
        let mut quot = Vec::new();
        let mut rem = Vec::new();
        while let Some((m, c)) = rest.terms.first().cloned() {
            match m.div(glm) {
                Some(t) => {
                    let q = field.mul(&c, &glc_inv);
                    rest = rest.sub_mul_term(&q, &t, g);
                    quot.push((t, q));
                }
                None => {
                    rem.push((m, c));
                    rest.terms.remove(0);
                }
            }
        }
        Ok((
            Self::from_sorted(&self.ring, quot),
            Self::from_sorted(&self.ring, rem),
        ))
    }

    pub fn exact_div(&self, g: &Self) -> Result<Self, PolyError> {
        let (q, r) = self.div_rem(g)?;
        if r.is_zero() {
            Ok(q)
        } else {
            Err(PolyError::NotExact)
        }
    }

    /// Variables that actually occur.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.ring.nvars())
            .filter(|&i| self.terms.iter().any(|(m, _)| m.get(i) > 0))
            .collect()
    }
}

impl<F: Field> fmt::Display for Polynomial<F> {
    /// Canonical text form: descending terms, `*` products, `^` powers.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        let n = self.ring.nvars();
        let mut out = String::new();
        for (m, c) in &self.terms {
            let mut coeff = field.format_elem(c);
            let compound = field.is_compound(c);
            let neg = !compound && coeff.starts_with('-');
            if neg {
                coeff.remove(0);
            }
            if !out.is_empty() || neg {
                out.push(if neg { '-' } else { '+' });
            }
            let mono: Vec<String> = (0..n)
                .filter(|&i| m.get(i) > 0)
                .map(|i| match m.get(i) {
                    1 => self.ring.vars[i].clone(),
                    e => format!("{}^{}", self.ring.vars[i], e),
                })
                .collect();
            if mono.is_empty() {
                out.push_str(&if compound {
                    format!("({coeff})")
                } else {
                    coeff
                });
            } else {
                if coeff != "1" {
                    if compound {
                        out.push_str(&format!("({coeff})*"));
                    } else {
                        out.push_str(&coeff);
                        out.push('*');
                    }
                }
                out.push_str(&mono.join("*"));
            }
        }
        write!(f, "{out}")
    }
}

macro_rules! impl_op {
    ($tr:ident, $m:ident, $try:ident) => {
        impl<F: Field> std::ops::$tr<&Polynomial<F>> for &Polynomial<F> {
            type Output = Polynomial<F>;
            /// Panics if the operands live in different rings; see the `try_`
            /// variants for a checked version.
            fn $m(self, rhs: &Polynomial<F>) -> Polynomial<F> {
                self.$try(rhs).expect("ring mismatch")
            }
        }
        impl<F: Field> std::ops::$tr<Polynomial<F>> for Polynomial<F> {
            type Output = Polynomial<F>;
            fn $m(self, rhs: Polynomial<F>) -> Polynomial<F> {
                self.$try(&rhs).expect("ring mismatch")
            }
        }
    };
}

impl_op!(Add, add, try_add);
impl_op!(Sub, sub, try_sub);
impl_op!(Mul, mul, try_mul);

impl<F: Field> std::ops::Neg for &Polynomial<F> {
    type Output = Polynomial<F>;
    fn neg(self) -> Polynomial<F> {
        Polynomial::neg(self)
    }
}
