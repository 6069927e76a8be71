//! Groebner bases, normal forms, dimension and multiplicity, ideal quotients
//! and elimination.

mod buchberger;
mod hilbert;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::Field;
use crate::poly::{Monomial, MonomialOrder, PolyError, PolyRing, Polynomial, Ring, RingExt};

pub use buchberger::buchberger;
pub use hilbert::{dimension_and_degree, hilbert_numerator};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("work budget of {reductions} pair reductions exhausted")]
    BudgetExceeded { reductions: u64 },
    #[error("ideal has dimension {0}; expected {1}")]
    WrongDimension(i64, i64),
    #[error("generators live in different rings")]
    RingMismatch,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Upper bound on the number of S-pair reductions one basis computation may
/// perform.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    pub max_pair_reductions: u64,
}

impl Budget {
    pub const UNLIMITED: Budget = Budget {
        max_pair_reductions: u64::MAX,
    };

    pub fn pairs(n: u64) -> Budget {
        Budget {
            max_pair_reductions: n,
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Budget::UNLIMITED
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GbStats {
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub basis_size: usize,
}

/// Finitely generated ideal of a polynomial ring.
#[derive(Debug, Clone)]
pub struct Ideal<F: Field> {
    ring: Ring<F>,
    gens: Vec<Polynomial<F>>,
}

impl<F: Field> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Ring<F>, gens: Vec<Polynomial<F>>) -> Result<Self, GroebnerError> {
        let probe = ring.zero();
        if gens.iter().any(|g| !g.same_ring(&probe)) {
            return Err(GroebnerError::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn gens(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn groebner(&self, budget: &Budget) -> Result<GroebnerBasis<F>, GroebnerError> {
        buchberger(self, budget)
    }

    /// The ideal with the generators moved to an order on the same variables.
    pub fn with_order(&self, order: MonomialOrder) -> Ideal<F> {
        let ring = self.ring.with_order(order);
        let gens = self.gens.iter().map(|g| g.reorder(&ring)).collect();
        Ideal { ring, gens }
    }

    /// `I + <more>`.
    pub fn extend(&self, more: &[Polynomial<F>]) -> Result<Ideal<F>, GroebnerError> {
        let mut gens = self.gens.clone();
        gens.extend(more.iter().cloned());
        Ideal::new(&self.ring, gens)
    }
}

/// Reduced Groebner basis, sorted by descending leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis<F: Field> {
    ring: Ring<F>,
    polys: Vec<Polynomial<F>>,
    stats: GbStats,
}

impl<F: Field> GroebnerBasis<F> {
    pub(crate) fn from_parts(ring: Ring<F>, polys: Vec<Polynomial<F>>, stats: GbStats) -> Self {
        GroebnerBasis { ring, polys, stats }
    }

    pub fn ring(&self) -> &Ring<F> {
        &self.ring
    }

    pub fn polys(&self) -> &[Polynomial<F>] {
        &self.polys
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.polys
            .iter()
            .map(|g| *g.leading_monomial().unwrap())
            .collect()
    }

    pub fn is_unit(&self) -> bool {
        self.polys.iter().any(|g| g.is_constant())
    }

    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>, GroebnerError> {
        if !f.same_ring(&self.ring.zero()) {
            return Err(GroebnerError::RingMismatch);
        }
        let reducers: Vec<&Polynomial<F>> = self.polys.iter().collect();
        Ok(buchberger::reduce_by(f, &reducers))
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool, GroebnerError> {
        Ok(self.normal_form(f)?.is_zero())
    }

    /// Buchberger's criterion: every S-polynomial reduces to zero.
    pub fn is_groebner(&self) -> bool {
        let reducers: Vec<&Polynomial<F>> = self.polys.iter().collect();
        for i in 0..self.polys.len() {
            for j in i + 1..self.polys.len() {
                let (a, b) = (&self.polys[i], &self.polys[j]);
                let lcm = a
                    .leading_monomial()
                    .unwrap()
                    .lcm(b.leading_monomial().unwrap());
                let s = buchberger::spoly(a, b, &lcm);
                if !buchberger::reduce_by(&s, &reducers).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Krull dimension of the quotient ring and its multiplicity (degree).
    /// For a degree-compatible order and a homogeneous ideal these are the
    /// projective dimension plus one and the projective degree; for a
    /// zero-dimensional ideal the degree is the vector-space dimension.
    pub fn dimension_and_degree(&self) -> (i64, i64) {
        hilbert::dimension_and_degree(&self.leading_monomials(), self.ring.nvars())
    }

    /// Vector-space dimension of the quotient of a zero-dimensional ideal.
    pub fn affine_multiplicity(&self) -> Result<i64, GroebnerError> {
        match self.dimension_and_degree() {
            (-1, _) => Ok(0),
            (0, d) => Ok(d),
            (dim, _) => Err(GroebnerError::WrongDimension(dim, 0)),
        }
    }

    /// Degree of a homogeneous ideal whose projective zero set is finite,
    /// counted with multiplicity. An irrelevant ideal gives 0.
    pub fn projective_multiplicity(&self) -> Result<i64, GroebnerError> {
        match self.dimension_and_degree() {
            (-1, _) | (0, _) => Ok(0),
            (1, d) => Ok(d),
            (dim, _) => Err(GroebnerError::WrongDimension(dim, 1)),
        }
    }
}

/// `I : f`, computed as `(I ∩ <f>) / f`, with the intersection found by
/// eliminating a tag variable `t` from `t*I + (1-t)*<f>`.
pub fn ideal_quotient<F: Field>(
    ideal: &Ideal<F>,
    f: &Polynomial<F>,
    budget: &Budget,
) -> Result<Ideal<F>, GroebnerError> {
    let ring = ideal.ring();
    if !f.same_ring(&ring.zero()) {
        return Err(GroebnerError::RingMismatch);
    }
    if f.is_zero() {
        return Ideal::new(ring, vec![ring.one()]);
    }
    let n = ring.nvars();
    let tag = fresh_name(ring.vars(), "t");
    let mut names: Vec<&str> = vec![tag.as_str()];
    names.extend(ring.vars().iter().map(|s| s.as_str()));
    let big = PolyRing::new(
        ring.field().clone(),
        &names,
        MonomialOrder::Block { first: 1 },
    )?;
    let shift: Vec<usize> = (1..=n).collect();
    let lift = |p: &Polynomial<F>| p.map_into(&big, &shift, |c| Ok(c.clone()));
    let t = big.var_at(0);
    let one_minus_t = &big.one() - &t;
    let mut gens = Vec::with_capacity(ideal.gens().len() + 1);
    for g in ideal.gens() {
        gens.push(&t * &lift(g)?);
    }
    gens.push(&one_minus_t * &lift(f)?);
    let gb = Ideal::new(&big, gens)?.groebner(budget)?;
    let back: Vec<usize> = std::iter::once(usize::MAX).chain(0..n).collect();
    let mut out = Vec::new();
    for g in gb.polys() {
        if g.degree_in(0) == 0 {
            let g = g.map_into(ring, &back, |c| Ok(c.clone()))?;
            out.push(g.exact_div(f)?);
        }
    }
    Ideal::new(ring, out)
}

/// Generators of `I ∩ K[remaining vars]`, as polynomials of the original
/// ring that do not involve `vars`.
pub fn eliminate<F: Field>(
    ideal: &Ideal<F>,
    vars: &[usize],
    budget: &Budget,
) -> Result<Ideal<F>, GroebnerError> {
    let ring = ideal.ring();
    let n = ring.nvars();
    // permutation: eliminated variables first
    let mut perm: Vec<usize> = vars.to_vec();
    perm.extend((0..n).filter(|i| !vars.contains(i)));
    let names: Vec<&str> = perm.iter().map(|&i| ring.vars()[i].as_str()).collect();
    let order = if vars.is_empty() {
        ring.order()
    } else {
        MonomialOrder::Block { first: vars.len() }
    };
    let big = PolyRing::new(ring.field().clone(), &names, order)?;
    // old index i goes to the position of i in perm
    let mut to_big = vec![0; n];
    for (pos, &i) in perm.iter().enumerate() {
        to_big[i] = pos;
    }
    let gens = ideal
        .gens()
        .iter()
        .map(|g| g.map_into(&big, &to_big, |c| Ok(c.clone())))
        .collect::<Result<Vec<_>, _>>()?;
    let gb = Ideal::new(&big, gens)?.groebner(budget)?;
    let mut out = Vec::new();
    for g in gb.polys() {
        if (0..vars.len()).all(|k| g.degree_in(k) == 0) {
            out.push(g.map_into(ring, &perm, |c| Ok(c.clone()))?);
        }
    }
    Ideal::new(ring, out)
}

fn fresh_name(taken: &[String], base: &str) -> String {
    let mut name = base.to_string();
    while taken.contains(&name) {
        name.push('_');
    }
    name
}
