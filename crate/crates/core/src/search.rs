//! Parameter search over prime fields: plane node counts, exhaustive and
//! sampled scans, line-split detection, checkpoints and TSV output.

use std::collections::BTreeMap;
use std::fs;
use std::io;
use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Field, PrimeField};
use crate::family::{self, FamilyError, FamilyParams};
use crate::groebner::{Budget, GroebnerError, Ideal};
use crate::poly::{divide_univariate, jacobian, Polynomial, Ring, RingExt};

pub const CHECKPOINT_VERSION: u32 = 1;
/// Work is split by the `(a1, a2)` prefix.
pub const CHUNKING: &str = "a1,a2";

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("checkpoint does not match this search: {0}")]
    CheckpointMismatch(String),
    #[error("checkpoint i/o: {0}")]
    Io(#[from] io::Error),
    #[error("checkpoint format: {0}")]
    Format(#[from] serde_json::Error),
    #[error("invalid search: {0}")]
    Invalid(String),
}

/// Plane node count of one tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlaneCount {
    /// Singular points that are nodes.
    pub nodes: i64,
    /// Nodes on the axis `x = 0`.
    pub axis_nodes: i64,
    /// Degree of the singular scheme, i.e. singularities with multiplicity.
    pub singular_mult: i64,
    pub degenerate: bool,
}

/// Precomputed data for counting many tuples over one prime.
pub struct PlaneCounter {
    field: PrimeField,
    ring: Ring<PrimeField>,
    p_plane: Polynomial<PrimeField>,
    budget: Budget,
}

impl PlaneCounter {
    pub fn new(field: &PrimeField, budget: Budget) -> Result<Self, SearchError> {
        let ring = family::plane_ring(field);
        let p_plane = family::build_p_plane(&ring)?;
        Ok(PlaneCounter {
            field: *field,
            ring,
            p_plane,
            budget,
        })
    }

    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    pub fn ring(&self) -> &Ring<PrimeField> {
        &self.ring
    }

    pub fn curve(
        &self,
        params: &FamilyParams<PrimeField>,
    ) -> Result<Polynomial<PrimeField>, SearchError> {
        Ok(&self.p_plane - &family::build_u(&self.ring, params)?)
    }

    /// Counts the nodes of `S|_{y=0}` and those on the axis `x = 0`.
    ///
    /// When every singular point is a node (the 2x2 minors of the Hessian
    /// do not all vanish at any of them) the counts are the degrees of the
    /// singular scheme and of its axis part. Otherwise each chart is
    /// localized at the points where the affine Hessian is nonzero.
    pub fn count(&self, params: &FamilyParams<PrimeField>) -> Result<PlaneCount, GroebnerError> {
        let s = self.curve(params).expect("valid parameters");
        let jac = jacobian(&s);
        let gb = Ideal::new(&self.ring, jac.clone())?.groebner(&self.budget)?;
        let (dim, deg) = gb.dimension_and_degree();
        if dim > 1 {
            return Ok(PlaneCount {
                nodes: 0,
                axis_nodes: 0,
                singular_mult: 0,
                degenerate: true,
            });
        }
        let singular_mult = if dim < 1 { 0 } else { deg };
        if singular_mult == 0 {
            return Ok(PlaneCount {
                nodes: 0,
                axis_nodes: 0,
                singular_mult,
                degenerate: false,
            });
        }

        let hess: Vec<Vec<Polynomial<PrimeField>>> = jac.iter().map(jacobian).collect();
        let mut bad: Vec<Polynomial<PrimeField>> = gb.polys().to_vec();
        for (i, j) in [(0, 1), (0, 2), (1, 2)] {
            for (k, l) in [(0, 1), (0, 2), (1, 2)] {
                if (k, l) < (i, j) {
                    continue;
                }
                bad.push(&(&hess[i][k] * &hess[j][l]) - &(&hess[i][l] * &hess[j][k]));
            }
        }
        let (bdim, _) = Ideal::new(&self.ring, bad)?
            .groebner(&self.budget)?
            .dimension_and_degree();
        if bdim < 1 {
            let mut axis = vec![self.ring.var("x")];
            axis.extend(gb.polys().iter().cloned());
            let (adim, adeg) = Ideal::new(&self.ring, axis)?
                .groebner(&self.budget)?
                .dimension_and_degree();
            return Ok(PlaneCount {
                nodes: singular_mult,
                axis_nodes: if adim < 1 { 0 } else { adeg },
                singular_mult,
                degenerate: false,
            });
        }
        let (nodes, axis_nodes) = self.count_nodes_by_charts(&s)?;
        Ok(PlaneCount {
            nodes,
            axis_nodes,
            singular_mult,
            degenerate: false,
        })
    }

    /// Nodes in the chart `w = 1`, on the line `w = 0` inside `z = 1`, and
    /// at `(1:0:0)`.
    fn count_nodes_by_charts(
        &self,
        s: &Polynomial<PrimeField>,
    ) -> Result<(i64, i64), GroebnerError> {
        let f = &self.field;
        let (w_nodes, w_axis) = self.chart_nodes(s, 2, &[])?;
        let (z_nodes, z_axis) = self.chart_nodes(s, 1, &["w"])?;
        // (1:0:0) is off the axis
        let fx = s.substitute_const(0, &f.one());
        let g = jacobian(&fx);
        let origin = [0, 0, 0];
        let singular = fx.eval(&origin) == 0 && g[1].eval(&origin) == 0 && g[2].eval(&origin) == 0;
        let h = |a: usize, b: usize| g[a].derivative(b).eval(&origin);
        let node = singular && f.sub(&f.mul(&h(1, 1), &h(2, 2)), &f.mul(&h(1, 2), &h(1, 2))) != 0;
        Ok((w_nodes + z_nodes + node as i64, w_axis + z_axis))
    }

    /// Localizes the affine singular ideal of the chart `var = 1` at the
    /// points where the 2x2 Hessian is nonzero, via an extra variable `u`
    /// with `1 - u*h`. Each node contributes exactly 1.
    fn chart_nodes(
        &self,
        s: &Polynomial<PrimeField>,
        var: usize,
        extra: &[&str],
    ) -> Result<(i64, i64), GroebnerError> {
        let f = &self.field;
        let names: Vec<&str> = ["x", "z", "w"]
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != var)
            .map(|(_, n)| *n)
            .chain(std::iter::once("u"))
            .collect();
        let ring = crate::poly::PolyRing::new(*f, &names, crate::poly::MonomialOrder::DegRevLex)?;
        let map: Vec<usize> = (0..3)
            .map(|i| match i.cmp(&var) {
                std::cmp::Ordering::Less => i,
                std::cmp::Ordering::Equal => usize::MAX,
                std::cmp::Ordering::Greater => i - 1,
            })
            .collect();
        let fa = s
            .substitute_const(var, &f.one())
            .map_into(&ring, &map, |c| Ok(*c))?;
        let (d0, d1) = (fa.derivative(0), fa.derivative(1));
        let h = &(&d0.derivative(0) * &d1.derivative(1)) - &(&d0.derivative(1) * &d0.derivative(1));
        let u = ring.var("u");
        let mut gens = vec![fa.clone(), d0, d1, &ring.one() - &(&u * &h)];
        for e in extra {
            gens.push(ring.var(e));
        }
        let count = |gens: Vec<Polynomial<PrimeField>>| -> Result<i64, GroebnerError> {
            let (dim, deg) = Ideal::new(&ring, gens)?
                .groebner(&self.budget)?
                .dimension_and_degree();
            Ok(if dim < 0 { 0 } else { deg })
        };
        let nodes = count(gens.clone())?;
        gens.push(ring.var("x"));
        let axis = count(gens)?;
        Ok((nodes, axis))
    }
}

/// Convenience wrapper around [`PlaneCounter::count`].
pub fn plane_node_count(params: &FamilyParams<PrimeField>) -> Result<PlaneCount, SearchError> {
    let counter = PlaneCounter::new(params.field(), Budget::UNLIMITED)?;
    counter
        .count(params)
        .map_err(|e| SearchError::Invalid(e.to_string()))
}

/// A line `z + t*x + w` dividing the plane curve, with `α = -(a4 t³ + t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineSplit {
    pub t: i64,
    pub alpha: i64,
    /// `t α² + t + 1 = 0`, the relation tying the line to `α`.
    pub relation_holds: bool,
}

/// True iff `z + t*x + w` divides the plane curve.
pub fn line_divides(curve: &Polynomial<PrimeField>, t: u64) -> bool {
    let ring = curve.ring();
    let line = &(&ring.var("z") + &(&ring.constant(t) * &ring.var("x"))) + &ring.var("w");
    let iz = ring.var_index("z").expect("plane ring");
    let (_, rem) = divide_univariate(curve, &line, iz).expect("monic in z");
    rem.is_zero()
}

/// Scans `t` over the field for a line `z + t*x + w` dividing `S|_{y=0}`.
pub fn detect_line_split(
    counter: &PlaneCounter,
    params: &FamilyParams<PrimeField>,
) -> Option<LineSplit> {
    let f = counter.field();
    let curve = counter.curve(params).ok()?;
    let t = f.elements().find(|&t| line_divides(&curve, t))?;
    let a4 = *params.a(4);
    let t3 = f.pow(&t, 3);
    let alpha = f.neg(&f.add(&f.mul(&a4, &t3), &t));
    let rel = f.add(&f.add(&f.mul(&t, &f.mul(&alpha, &alpha)), &t), &f.one());
    Some(LineSplit {
        t: f.balanced(t),
        alpha: f.balanced(alpha),
        relation_holds: f.is_zero(&rel),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Sample { n: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchTask {
    pub p: u64,
    /// Allowed values of `a1..a5` as balanced residues; empty means the
    /// whole field.
    pub ranges: [Vec<i64>; 5],
    pub mode: SearchMode,
    /// Hits are recorded from this plane count upward.
    pub min_nodes: i64,
    pub budget: u64,
}

impl SearchTask {
    pub fn new(p: u64, mode: SearchMode) -> Self {
        SearchTask {
            p,
            ranges: Default::default(),
            mode,
            min_nodes: 15,
            budget: u64::MAX,
        }
    }

    fn values(&self, field: &PrimeField) -> [Vec<u64>; 5] {
        std::array::from_fn(|k| {
            if self.ranges[k].is_empty() {
                field.elements().collect()
            } else {
                let mut v: Vec<u64> = self.ranges[k]
                    .iter()
                    .map(|&a| field.reduce_i64(a))
                    .collect();
                v.sort_unstable();
                v.dedup();
                v
            }
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchHit {
    pub a: [i64; 5],
    pub plane_nodes: i64,
    pub axis_nodes: i64,
    pub line_split: Option<LineSplit>,
}

/// Mergeable partial result for a set of chunks.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub tuples: u64,
    pub degenerate: u64,
    pub budget_exhausted: u64,
    pub histogram: BTreeMap<i64, u64>,
    pub hits: Vec<SearchHit>,
}

impl Tally {
    fn merge(&mut self, other: Tally) {
        self.tuples += other.tuples;
        self.degenerate += other.degenerate;
        self.budget_exhausted += other.budget_exhausted;
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self.hits.extend(other.hits);
    }

    /// Plane count descending, then tuple order.
    fn canonicalize(&mut self) {
        self.hits
            .sort_by(|a, b| b.plane_nodes.cmp(&a.plane_nodes).then(a.a.cmp(&b.a)));
        self.hits.dedup();
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchReport {
    pub schema_version: u32,
    pub p: u64,
    pub mode: SearchMode,
    pub flagged_prime: bool,
    pub max_nodes: Option<i64>,
    #[serde(flatten)]
    pub tally: Tally,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Checkpoint {
    pub version: u32,
    pub p: u64,
    pub chunking: String,
    pub task: SearchTask,
    /// Sorted ids of finished chunks.
    pub completed: Vec<u64>,
    pub partial: Tally,
}

impl Checkpoint {
    pub fn load(path: &Path) -> Result<Self, SearchError> {
        let cp: Checkpoint = serde_json::from_str(&fs::read_to_string(path)?)?;
        if cp.version != CHECKPOINT_VERSION {
            return Err(SearchError::CheckpointMismatch(format!(
                "version {}",
                cp.version
            )));
        }
        Ok(cp)
    }

    pub fn save(&self, path: &Path) -> Result<(), SearchError> {
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, serde_json::to_string_pretty(self)?)?;
        fs::rename(tmp, path)?;
        Ok(())
    }
}

/// Options that do not affect the result.
#[derive(Debug, Clone, Default)]
pub struct RunOptions<'a> {
    pub threads: Option<usize>,
    pub checkpoint: Option<&'a Path>,
    pub resume: Option<Checkpoint>,
}

/// Rejects 2, 3, 7 and non-primes; 5 is allowed but flagged.
pub fn validate_prime(p: u64) -> Result<PrimeField, SearchError> {
    if matches!(p, 2 | 3 | 7) {
        return Err(SearchError::Invalid(format!("{p} is a special prime")));
    }
    PrimeField::new(p).map_err(|e| SearchError::Invalid(e.to_string()))
}

type Tuple = [u64; 5];

/// Tuples grouped by chunk id `i1 * |range2| + i2`.
fn chunk_tuples(task: &SearchTask, values: &[Vec<u64>; 5]) -> BTreeMap<u64, Vec<Tuple>> {
    let n2 = values[1].len() as u64;
    let mut chunks: BTreeMap<u64, Vec<Tuple>> = BTreeMap::new();
    match &task.mode {
        SearchMode::Exhaustive => {
            for (i1, &a1) in values[0].iter().enumerate() {
                for (i2, &a2) in values[1].iter().enumerate() {
                    let mut v = Vec::new();
                    for &a3 in &values[2] {
                        for &a4 in &values[3] {
                            for &a5 in &values[4] {
                                v.push([a1, a2, a3, a4, a5]);
                            }
                        }
                    }
                    chunks.insert(i1 as u64 * n2 + i2 as u64, v);
                }
            }
        }
        SearchMode::Sample { n, seed } => {
            let sizes: Vec<u64> = values.iter().map(|v| v.len() as u64).collect();
            let total: u64 = sizes.iter().product();
            let take = (*n).min(total) as usize;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let picks = rand::seq::index::sample(&mut rng, total as usize, take);
            for idx in picks.iter() {
                let mut rest = idx as u64;
                let mut ix = [0usize; 5];
                for k in (0..5).rev() {
                    ix[k] = (rest % sizes[k]) as usize;
                    rest /= sizes[k];
                }
                let t: Tuple = std::array::from_fn(|k| values[k][ix[k]]);
                chunks
                    .entry(ix[0] as u64 * n2 + ix[1] as u64)
                    .or_default()
                    .push(t);
            }
            for v in chunks.values_mut() {
                v.sort_unstable();
            }
        }
    }
    chunks
}

fn run_chunk(counter: &PlaneCounter, task: &SearchTask, tuples: &[Tuple]) -> Tally {
    let f = counter.field();
    let mut tally = Tally::default();
    for t in tuples {
        tally.tuples += 1;
        let params = FamilyParams::new(f, *t).expect("admissible prime");
        match counter.count(&params) {
            Ok(c) if c.degenerate => tally.degenerate += 1,
            Ok(c) => {
                *tally.histogram.entry(c.nodes).or_default() += 1;
                if c.nodes >= task.min_nodes {
                    let line_split = if c.nodes >= 15 {
                        detect_line_split(counter, &params)
                    } else {
                        None
                    };
                    tally.hits.push(SearchHit {
                        a: t.map(|v| f.balanced(v)),
                        plane_nodes: c.nodes,
                        axis_nodes: c.axis_nodes,
                        line_split,
                    });
                }
            }
            Err(_) => tally.budget_exhausted += 1,
        }
    }
    tally
}

/// Runs a search. The result depends only on the task; thread count and
/// checkpointing do not change it.
pub fn run_search(task: &SearchTask, opts: RunOptions<'_>) -> Result<SearchReport, SearchError> {
    let field = validate_prime(task.p)?;
    let counter = PlaneCounter::new(&field, Budget::pairs(task.budget))?;
    let values = task.values(&field);
    let chunks = chunk_tuples(task, &values);

    let mut checkpoint = match opts.resume {
        Some(cp) => {
            if cp.p != task.p || cp.chunking != CHUNKING || cp.task != *task {
                return Err(SearchError::CheckpointMismatch(format!(
                    "checkpoint is for p = {}, chunking {}",
                    cp.p, cp.chunking
                )));
            }
            cp
        }
        None => Checkpoint {
            version: CHECKPOINT_VERSION,
            p: task.p,
            chunking: CHUNKING.to_string(),
            task: task.clone(),
            completed: Vec::new(),
            partial: Tally::default(),
        },
    };

    let pending: Vec<(u64, &Vec<Tuple>)> = chunks
        .iter()
        .filter(|(id, _)| checkpoint.completed.binary_search(id).is_err())
        .map(|(id, v)| (*id, v))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.unwrap_or(0))
        .build()
        .map_err(|e| SearchError::Invalid(e.to_string()))?;
    let batch = pool.current_num_threads().max(1) * 4;
    for group in pending.chunks(batch) {
        let results: Vec<(u64, Tally)> = pool.install(|| {
            group
                .par_iter()
                .map(|(id, tuples)| (*id, run_chunk(&counter, task, tuples)))
                .collect()
        });
        for (id, t) in results {
            checkpoint.partial.merge(t);
            checkpoint.completed.push(id);
        }
        checkpoint.completed.sort_unstable();
        checkpoint.partial.canonicalize();
        if let Some(path) = opts.checkpoint {
            checkpoint.save(path)?;
        }
    }

    let mut tally = checkpoint.partial;
    tally.canonicalize();
    Ok(SearchReport {
        schema_version: crate::singular::SCHEMA_VERSION,
        p: task.p,
        mode: task.mode.clone(),
        flagged_prime: task.p == 5,
        max_nodes: tally.histogram.keys().next_back().copied(),
        tally,
    })
}

/// Tab-separated hits: field, `a1..a5`, the split line, `α`, plane nodes.
pub fn hits_tsv(report: &SearchReport) -> String {
    let mut out = String::from("Field\ta1\ta2\ta3\ta4\ta5\tS_y1\talpha\tplane_nodes\n");
    for h in &report.tally.hits {
        let (line, alpha) = match &h.line_split {
            Some(ls) => (format_line(ls.t), format!("alpha={}", ls.alpha)),
            None => ("-".to_string(), "-".to_string()),
        };
        out.push_str(&format!(
            "F{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            report.p, h.a[0], h.a[1], h.a[2], h.a[3], h.a[4], line, alpha, h.plane_nodes
        ));
    }
    out
}

/// `z + t*x + w` written as `z=<-t>x-w`.
pub fn format_line(t: i64) -> String {
    match -t {
        1 => "z=x-w".to_string(),
        -1 => "z=-x-w".to_string(),
        s => format!("z={s}x-w"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::known::{F11_ACTUAL_SLOPE, KNOWN_ROWS};

    fn counter(p: u64) -> PlaneCounter {
        PlaneCounter::new(&PrimeField::new(p).unwrap(), Budget::UNLIMITED).unwrap()
    }

    #[test]
    fn known_rows_have_fifteen_plane_nodes() {
        for row in KNOWN_ROWS {
            let c = counter(row.p);
            let params = FamilyParams::from_i64s(c.field(), row.a).unwrap();
            let n = c.count(&params).unwrap();
            assert_eq!(
                (n.nodes, n.axis_nodes, n.singular_mult, n.degenerate),
                (15, 1, 15, false),
                "{row:?}"
            );
            let ls = detect_line_split(&c, &params).unwrap();
            assert!(ls.relation_holds);
            assert_eq!(ls.alpha, row.alpha, "{row:?}");
            let slope = if row.p == 11 {
                F11_ACTUAL_SLOPE
            } else {
                row.printed_slope
            };
            assert_eq!(-ls.t, slope, "{row:?}");
        }
    }

    #[test]
    fn chart_count_agrees_with_multiplicity_on_nodal_curves() {
        for row in KNOWN_ROWS.iter().take(6) {
            let c = counter(row.p);
            let params = FamilyParams::from_i64s(c.field(), row.a).unwrap();
            let s = c.curve(&params).unwrap();
            assert_eq!(c.count_nodes_by_charts(&s).unwrap(), (15, 1), "{row:?}");
        }
    }

    #[test]
    fn printed_f11_line_does_not_divide() {
        let c = counter(11);
        let params = FamilyParams::from_i64s(c.field(), [2, 3, 5, 2, -5]).unwrap();
        let curve = c.curve(&params).unwrap();
        assert!(!line_divides(
            &curve,
            c.field().reduce_i64(KNOWN_ROWS[0].printed_t())
        ));
        assert!(line_divides(
            &curve,
            c.field().reduce_i64(-F11_ACTUAL_SLOPE)
        ));
    }

    /// Oracle: singular points of the curve with coordinates in the prime
    /// field, found by evaluating the gradient everywhere.
    fn rational_singular_points(c: &PlaneCounter, params: &FamilyParams<PrimeField>) -> usize {
        let s = c.curve(params).unwrap();
        let jac = jacobian(&s);
        let p = c.field().modulus();
        let mut pts = vec![];
        for x in 0..p {
            for z in 0..p {
                pts.push([x, z, 1]);
            }
            pts.push([x, 1, 0]);
        }
        pts.push([1, 0, 0]);
        pts.iter()
            .filter(|pt| jac.iter().all(|g| g.eval(*pt) == 0))
            .count()
    }

    #[test]
    fn counts_bound_rational_points() {
        let c = counter(11);
        for a in [
            [2, 3, 5, 2, -5],
            [1, 0, 0, 0, 1],
            [4, -2, 3, 1, 0],
            [0, 0, 0, 1, 2],
        ] {
            let params = FamilyParams::from_i64s(c.field(), a).unwrap();
            let n = c.count(&params).unwrap();
            if !n.degenerate {
                assert!(
                    rational_singular_points(&c, &params) as i64 <= n.nodes,
                    "{a:?}"
                );
            }
        }
    }

    #[test]
    fn generic_member_has_nine_nodes() {
        let c = counter(11);
        let params = FamilyParams::from_i64s(c.field(), [1, 2, -3, 4, 5]).unwrap();
        let n = c.count(&params).unwrap();
        assert!(!n.degenerate);
        assert!(n.nodes >= 9);
    }

    #[test]
    fn singleton_range_search() {
        let mut task = SearchTask::new(11, SearchMode::Exhaustive);
        task.ranges = [vec![2], vec![3], vec![5], vec![2], vec![-5]];
        let rep = run_search(&task, RunOptions::default()).unwrap();
        assert_eq!(rep.tally.tuples, 1);
        assert_eq!(rep.tally.hits.len(), 1);
        assert_eq!(rep.max_nodes, Some(15));
        let tsv = hits_tsv(&rep);
        assert!(
            tsv.contains("F11\t2\t3\t5\t2\t-5\tz=-x-w\talpha=-3\t15"),
            "{tsv}"
        );
    }

    #[test]
    fn special_primes_rejected() {
        for p in [2, 3, 7, 9] {
            assert!(run_search(
                &SearchTask::new(p, SearchMode::Exhaustive),
                RunOptions::default()
            )
            .is_err());
        }
    }

    #[test]
    fn sample_is_reproducible_and_thread_independent() {
        let task = SearchTask {
            min_nodes: 12,
            ..SearchTask::new(11, SearchMode::Sample { n: 300, seed: 1 })
        };
        let one = run_search(
            &task,
            RunOptions {
                threads: Some(1),
                ..Default::default()
            },
        )
        .unwrap();
        let three = run_search(
            &task,
            RunOptions {
                threads: Some(3),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(one, three);
        assert_eq!(one.tally.tuples, 300);
        assert_eq!(
            serde_json::to_string(&one).unwrap(),
            serde_json::to_string(&three).unwrap()
        );
    }

    #[test]
    fn resume_matches_uninterrupted_run() {
        let dir = std::env::temp_dir().join(format!("septic-cp-{}", std::process::id()));
        fs::create_dir_all(&dir).unwrap();
        let path = dir.join("cp.json");
        let mut task = SearchTask::new(13, SearchMode::Exhaustive);
        task.ranges = [vec![1, 2, 3], vec![0, 5], vec![], vec![1], vec![2, 3]];
        task.min_nodes = 10;
        let full = run_search(&task, RunOptions::default()).unwrap();

        // a checkpoint holding only the first chunk's work
        let field = PrimeField::new(13).unwrap();
        let c = PlaneCounter::new(&field, Budget::UNLIMITED).unwrap();
        let chunks = chunk_tuples(&task, &task.values(&field));
        let (id, tuples) = chunks.iter().next().unwrap();
        let cp = Checkpoint {
            version: CHECKPOINT_VERSION,
            p: 13,
            chunking: CHUNKING.into(),
            task: task.clone(),
            completed: vec![*id],
            partial: run_chunk(&c, &task, tuples),
        };
        cp.save(&path).unwrap();
        let resumed = run_search(
            &task,
            RunOptions {
                resume: Some(Checkpoint::load(&path).unwrap()),
                checkpoint: Some(&path),
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(full, resumed);
        let done = Checkpoint::load(&path).unwrap();
        assert_eq!(done.completed.len(), chunks.len());

        let mut other = task.clone();
        other.p = 17;
        assert!(matches!(
            run_search(
                &other,
                RunOptions {
                    resume: Some(done),
                    ..Default::default()
                }
            ),
            Err(SearchError::CheckpointMismatch(_))
        ));
        fs::remove_dir_all(dir).unwrap();
    }
}
