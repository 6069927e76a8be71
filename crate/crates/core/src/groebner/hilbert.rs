//! Hilbert series of monomial ideals, for dimension and multiplicity.

use crate::poly::Monomial;

/// Numerator `N(t)` of the Hilbert series `N(t) / (1 - t)^n` of `S/I` for the
/// monomial ideal `I` generated by `gens`, coefficients from `t^0` up.
pub fn hilbert_numerator(gens: &[Monomial], nvars: usize) -> Vec<i64> {
    let gens = minimalize(gens.to_vec());
    numerator(gens, nvars)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator(gens: Vec<Monomial>, nvars: usize) -> Vec<i64> {
    if gens.iter().any(|m| m.is_one()) {
        return vec![0];
    }
    if gens.is_empty() {
        return vec![1];
    }
    // find a variable shared by two generators
    let mut pivot = None;
    'outer: for i in 0..nvars {
        let mut holders = gens.iter().filter(|m| m.get(i) > 0);
        if let (Some(_), Some(_)) = (holders.next(), holders.next()) {
            let e = gens
                .iter()
                .map(|m| m.get(i))
                .filter(|&e| e > 0)
                .min()
                .unwrap();
            pivot = Some(Monomial::var(i, e));
            break 'outer;
        }
    }
    let Some(p) = pivot else {
        // pairwise coprime: product of (1 - t^deg m)
        let mut acc = vec![1i64];
        for m in &gens {
            acc = mul_one_minus_power(&acc, m.degree() as usize);
        }
        return acc;
    };
    // N(I) = N(I + p) + t^deg(p) * N(I : p)
    let mut plus = gens.clone();
    plus.push(p);
    let plus = numerator(minimalize(plus), nvars);
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut q = *m;
            for i in 0..nvars {
                q.set(i, m.get(i).saturating_sub(p.get(i)));
            }
            q
        })
        .collect();
    let colon = numerator(minimalize(colon), nvars);
    let shift = p.degree() as usize;
    let mut out = vec![0i64; plus.len().max(colon.len() + shift)];
    for (i, c) in plus.iter().enumerate() {
        out[i] += c;
    }
    for (i, c) in colon.iter().enumerate() {
        out[i + shift] += c;
    }
    trim(out)
}

fn mul_one_minus_power(a: &[i64], d: usize) -> Vec<i64> {
    let mut out = vec![0i64; a.len() + d];
    for (i, c) in a.iter().enumerate() {
        out[i] += c;
        out[i + d] -= c;
    }
    trim(out)
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
    v
}

/// Krull dimension of `S/I` and the multiplicity `h(1)` where
/// `N(t) = (1 - t)^(n - dim) h(t)`. The unit ideal gives `(-1, 0)`.
pub fn dimension_and_degree(gens: &[Monomial], nvars: usize) -> (i64, i64) {
    let mut n = hilbert_numerator(gens, nvars);
    if n.iter().all(|&c| c == 0) {
        return (-1, 0);
    }
    let mut codim = 0;
    // divide by (1 - t) while N(1) = 0
    while n.iter().sum::<i64>() == 0 {
        // synthetic division by (1 - t): q_k = sum_{i<=k} n_i
        let mut q = Vec::with_capacity(n.len() - 1);
        let mut acc = 0;
        for c in &n[..n.len() - 1] {
            acc += c;
            q.push(acc);
        }
        n = trim(q);
        codim += 1;
    }
    (nvars as i64 - codim, n.iter().sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn staircase_counts() {
        // <x, y, z> in 3 vars: one point
        assert_eq!(
            dimension_and_degree(&[m(&[1, 0, 0]), m(&[0, 1, 0]), m(&[0, 0, 1])], 3),
            (0, 1)
        );
        // <x^2, y^2, z>: {1, x, y, xy}
        assert_eq!(
            dimension_and_degree(&[m(&[2, 0, 0]), m(&[0, 2, 0]), m(&[0, 0, 1])], 3),
            (0, 4)
        );
        // <x, y> in 4 vars: a plane
        assert_eq!(
            dimension_and_degree(&[m(&[1, 0, 0, 0]), m(&[0, 1, 0, 0])], 4).0,
            2
        );
        // unit ideal
        assert_eq!(dimension_and_degree(&[m(&[0, 0])], 2), (-1, 0));
        // zero ideal
        assert_eq!(dimension_and_degree(&[], 3), (3, 1));
    }

    #[test]
    fn non_coprime_staircase() {
        // <x^2, xy, y^3> in 2 vars: {1, x, y, y^2} -> 4
        assert_eq!(
            dimension_and_degree(&[m(&[2, 0]), m(&[1, 1]), m(&[0, 3])], 2),
            (0, 4)
        );
        // cone over 3 points: <x*y, x*z, y*z> has dim 1, degree 3
        assert_eq!(
            dimension_and_degree(&[m(&[1, 1, 0]), m(&[1, 0, 1]), m(&[0, 1, 1])], 3),
            (1, 3)
        );
    }

    /// Brute-force oracle: count monomials in a box that avoid the ideal.
    fn count_standard(gens: &[Monomial], bound: u16) -> i64 {
        let mut n = 0;
        for a in 0..bound {
            for b in 0..bound {
                for c in 0..bound {
                    let mm = m(&[a, b, c]);
                    if !gens.iter().any(|g| g.divides(&mm)) {
                        n += 1;
                    }
                }
            }
        }
        n
    }

    #[test]
    fn agrees_with_enumeration_on_artinian_ideals() {
        let cases: Vec<Vec<Monomial>> = vec![
            vec![m(&[3, 0, 0]), m(&[0, 4, 0]), m(&[0, 0, 2]), m(&[1, 1, 1])],
            vec![
                m(&[2, 0, 0]),
                m(&[1, 2, 0]),
                m(&[0, 5, 0]),
                m(&[0, 0, 3]),
                m(&[1, 0, 1]),
            ],
            vec![
                m(&[5, 0, 0]),
                m(&[0, 5, 0]),
                m(&[0, 0, 5]),
                m(&[2, 2, 0]),
                m(&[0, 2, 2]),
                m(&[2, 0, 2]),
            ],
        ];
        for g in cases {
            let (d, deg) = dimension_and_degree(&g, 3);
            assert_eq!(d, 0);
            assert_eq!(deg, count_standard(&g, 12));
        }
    }
}
