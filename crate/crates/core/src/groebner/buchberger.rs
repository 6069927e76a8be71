use std::cmp::Ordering;

use super::{Budget, GbStats, GroebnerBasis, GroebnerError, Ideal};
use crate::arith::Field;
use crate::poly::{Monomial, Polynomial, Ring, RingExt};

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

struct State<F: Field> {
    ring: Ring<F>,
    polys: Vec<Polynomial<F>>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GbStats,
}

/// Buchberger's algorithm with the Gebauer-Moeller installation of the
/// product and chain criteria and the normal selection strategy.
pub fn buchberger<F: Field>(
    ideal: &Ideal<F>,
    budget: &Budget,
) -> Result<GroebnerBasis<F>, GroebnerError> {
    let ring = ideal.ring().clone();
    let mut st = State {
        ring: ring.clone(),
        polys: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GbStats::default(),
    };

    let mut input: Vec<Polynomial<F>> = ideal.gens().to_vec();
    input.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    for f in input {
        let h = st.reduce(&f);
        if !h.is_zero() {
            st.insert(h.monic());
        }
    }

    while let Some(pair) = st.select() {
        st.stats.pairs_reduced += 1;
        if st.stats.pairs_reduced > budget.max_pair_reductions {
            return Err(GroebnerError::BudgetExceeded {
                reductions: budget.max_pair_reductions,
            });
        }
        let s = spoly(&st.polys[pair.i], &st.polys[pair.j], &pair.lcm);
        let h = st.reduce(&s);
        if h.is_zero() {
            st.stats.zero_reductions += 1;
            continue;
        }
        let h = h.monic();
        if h.leading_monomial().unwrap().is_one() {
            // unit ideal
            st.polys = vec![h.clone()];
            st.lms = vec![Monomial::ONE];
            st.active = vec![true];
            st.pairs.clear();
            break;
        }
        st.insert(h);
    }

    let basis = st.finish();
    let mut stats = st.stats;
    stats.basis_size = basis.len();
    Ok(GroebnerBasis::from_parts(ring, basis, stats))
}

/// `lcm/LT(f) * f - lcm/LT(g) * g` for monic `f`, `g`.
pub(super) fn spoly<F: Field>(
    f: &Polynomial<F>,
    g: &Polynomial<F>,
    lcm: &Monomial,
) -> Polynomial<F> {
    let field = f.field();
    let mf = lcm.div(f.leading_monomial().unwrap()).unwrap();
    let mg = lcm.div(g.leading_monomial().unwrap()).unwrap();
    let cf = field.inv(f.leading_coeff().unwrap()).unwrap();
    let cg = field.inv(g.leading_coeff().unwrap()).unwrap();
    f.mul_term(&cf, &mf).sub_mul_term(&cg, &mg, g)
}

/// Full reduction of `f` by `reducers` (any order of reducer selection).
pub(super) fn reduce_by<F: Field>(f: &Polynomial<F>, reducers: &[&Polynomial<F>]) -> Polynomial<F> {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut rest = f.clone();
    let mut done: Vec<(Monomial, F::Elem)> = Vec::new();
    // `rest` keeps only the not-yet-examined tail; examined terms go to `done`
    loop {
        let Some((m, c)) = rest.terms().first().cloned() else {
            break;
        };
        let reducer = reducers
            .iter()
            .filter(|g| g.leading_monomial().unwrap().divides(&m))
            .min_by_key(|g| g.len());
        match reducer {
            Some(g) => {
                let t = m.div(g.leading_monomial().unwrap()).unwrap();
                let q = field.div(&c, g.leading_coeff().unwrap()).unwrap();
                rest = rest.sub_mul_term(&q, &t, g);
            }
            None => {
                done.push((m, c));
                let mut terms = rest.into_terms();
                terms.remove(0);
                rest = Polynomial::from_sorted(&ring, terms);
            }
        }
    }
    Polynomial::from_sorted(&ring, done)
}

impl<F: Field> State<F> {
    fn reduce(&self, f: &Polynomial<F>) -> Polynomial<F> {
        let reducers: Vec<&Polynomial<F>> = self.polys.iter().collect();
        reduce_by(f, &reducers)
    }

    fn insert(&mut self, h: Polynomial<F>) {
        let hlm = *h.leading_monomial().unwrap();
        let k = self.polys.len();

        // candidate pairs (g, h) for active g
        let mut cands: Vec<Pair> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| {
                let lcm = self.lms[i].lcm(&hlm);
                Pair {
                    i,
                    j: k,
                    degree: lcm.degree(),
                    lcm,
                }
            })
            .collect();

        // chain criterion among the new pairs: drop (g1,h) if some other
        // (g2,h) has lcm properly dividing lcm(g1,h); coprime pairs survive
        // this step so they can shadow others, then go in the product step
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            if self.lms[cands[a].i].is_coprime(&hlm) {
                continue;
            }
            for b in 0..cands.len() {
                if a == b || !keep[b] {
                    continue;
                }
                if cands[b].lcm.divides(&cands[a].lcm) && (cands[b].lcm != cands[a].lcm || b < a) {
                    keep[a] = false;
                    break;
                }
            }
        }
        let mut kept: Vec<Pair> = cands
            .drain(..)
            .zip(keep)
            .filter(|(_, k)| *k)
            .map(|(p, _)| p)
            .collect();
        // product criterion
        kept.retain(|p| !self.lms[p.i].is_coprime(&hlm));

        // Gebauer-Moeller on old pairs
        let lms = &self.lms;
        self.pairs.retain(|p| {
            !(hlm.divides(&p.lcm) && lms[p.i].lcm(&hlm) != p.lcm && lms[p.j].lcm(&hlm) != p.lcm)
        });
        self.pairs.extend(kept);

        for i in 0..k {
            if self.active[i] && hlm.divides(&self.lms[i]) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.lms.push(hlm);
        self.active.push(true);
    }

    /// Normal strategy: smallest lcm first.
    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ring = &self.ring;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let ord = a
                .degree
                .cmp(&b.degree)
                .then_with(|| ring.cmp(&a.lcm, &b.lcm));
            if ord == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    /// Minimal basis from the active elements, then inter-reduction.
    fn finish(&mut self) -> Vec<Polynomial<F>> {
        let mut idx: Vec<usize> = (0..self.polys.len()).filter(|&i| self.active[i]).collect();
        idx.sort_by(|&a, &b| self.ring.cmp(&self.lms[a], &self.lms[b]));
        let mut minimal: Vec<usize> = Vec::new();
        for &i in &idx {
            if !minimal.iter().any(|&j| self.lms[j].divides(&self.lms[i])) {
                minimal.push(i);
            }
        }
        let mut basis: Vec<Polynomial<F>> =
            minimal.iter().map(|&i| self.polys[i].clone()).collect();
        for k in 0..basis.len() {
            let others: Vec<&Polynomial<F>> = basis
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != k)
                .map(|(_, p)| p)
                .collect();
            let (head, tail) = split_head(&basis[k]);
            let red_tail = reduce_by(&tail, &others);
            basis[k] = (&head + &red_tail).monic();
        }
        // descending by leading monomial
        basis.sort_by(|a, b| {
            self.ring
                .cmp(b.leading_monomial().unwrap(), a.leading_monomial().unwrap())
        });
        basis
    }
}

fn split_head<F: Field>(p: &Polynomial<F>) -> (Polynomial<F>, Polynomial<F>) {
    let ring = p.ring();
    let mut terms = p.terms().to_vec();
    let head = terms.remove(0);
    (
        ring.term(head.1, head.0),
        Polynomial::from_sorted(ring, terms),
    )
}
