//! Node counting for family members: the six-step verification pipeline and
//! its JSON report.

use std::collections::BTreeMap;
use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{Field, FieldDescriptor};
use crate::family::{self, FamilyError, FamilyParams, ParamsRecord};
use crate::groebner::{ideal_quotient, Budget, GbStats, GroebnerError, Ideal};
use crate::poly::{hessian_det, jacobian, MonomialOrder, PolyRing, Polynomial, Ring, RingExt};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// Outcome of the Hessian check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Nodality {
    Verified,
    Failed,
    Unverified,
    Skipped,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StepResults {
    pub point_check: Option<bool>,
    pub axis_mult: Option<i64>,
    pub axis_projective_dim: Option<i64>,
    pub plane_mult_projective: Option<i64>,
    pub plane_projective_dim: Option<i64>,
    pub plane_mult_affine: Option<i64>,
    /// Singularities on `w = 0`, counted in the chart `z = 1`; only computed
    /// when the affine count falls short of the projective one.
    pub plane_mult_w0: Option<i64>,
    pub nonnode_mult: Option<i64>,
    pub nonnode_mult_w0: Option<i64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeCountReport {
    pub schema_version: u32,
    pub field: FieldDescriptor,
    pub minpoly: Option<String>,
    pub alpha: Option<String>,
    pub params: ParamsRecord,
    pub steps: StepResults,
    pub plane_nodes: Option<i64>,
    pub axis_nodes: Option<i64>,
    /// Surface count `axis + 7 (plane - axis)`, with multiplicity. Equals the
    /// number of nodes whenever `all_nodes` holds.
    pub lifted_total: Option<i64>,
    pub all_nodes: bool,
    pub nodality: Nodality,
    pub degenerate: bool,
    /// Name of the step whose Groebner budget ran out, if any.
    pub budget_exhausted: Option<String>,
    pub gb_stats: BTreeMap<String, GbStats>,
    pub timings_ms: BTreeMap<String, u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineOptions {
    /// Budget for each Groebner computation of steps 1 to 5.
    pub budget: Budget,
    /// Budget for the Hessian step.
    pub nonnode_budget: Budget,
    pub run_nonnodes: bool,
}

impl Default for PipelineOptions {
    fn default() -> Self {
        PipelineOptions {
            budget: Budget::UNLIMITED,
            nonnode_budget: Budget::UNLIMITED,
            run_nonnodes: true,
        }
    }
}

/// True iff `(1 : i : 0 : 0)` is not on `S`: `S(1, y, 0, 0) mod y² + 1 ≠ 0`.
pub fn check_point_not_on_surface<F: Field>(s: &Polynomial<F>) -> Result<bool, PipelineError> {
    let ring = s.ring();
    let field = ring.field();
    let (ix, iz, iw) = (idx(ring, "x")?, idx(ring, "z")?, idx(ring, "w")?);
    let si = s
        .substitute_const(ix, &field.one())
        .substitute_const(iz, &field.zero())
        .substitute_const(iw, &field.zero());
    let y = ring.var("y");
    let gb = Ideal::new(ring, vec![&(&y * &y) + &ring.one()])?.groebner(&Budget::UNLIMITED)?;
    Ok(!gb.normal_form(&si)?.is_zero())
}

fn idx<F: Field>(ring: &Ring<F>, name: &str) -> Result<usize, PipelineError> {
    ring.var_index(name)
        .map_err(|e| PipelineError::Family(FamilyError::Poly(e)))
}

/// Multiplicity and projective dimension of a homogeneous ideal.
fn projective_count<F: Field>(
    ideal: &Ideal<F>,
    budget: &Budget,
) -> Result<(i64, i64, GbStats), GroebnerError> {
    let gb = ideal.groebner(budget)?;
    let (dim, deg) = gb.dimension_and_degree();
    let pdim = dim - 1;
    let mult = if pdim < 0 { 0 } else { deg };
    Ok((mult, pdim, gb.stats()))
}

/// Multiplicity and dimension of an affine ideal.
fn affine_count<F: Field>(
    ideal: &Ideal<F>,
    budget: &Budget,
) -> Result<(i64, i64, GbStats), GroebnerError> {
    let gb = ideal.groebner(budget)?;
    let (dim, deg) = gb.dimension_and_degree();
    let mult = if dim < 0 { 0 } else { deg };
    Ok((mult, dim, gb.stats()))
}

/// `(x, y, jac S)` in the surface ring: multiplicity and projective dimension.
pub fn count_axis_nodes<F: Field>(
    s: &Polynomial<F>,
    budget: &Budget,
) -> Result<(i64, i64), PipelineError> {
    let (m, d, _) = projective_count(&axis_ideal(s)?, budget)?;
    Ok((m, d))
}

fn axis_ideal<F: Field>(s: &Polynomial<F>) -> Result<Ideal<F>, PipelineError> {
    let ring = s.ring();
    let mut gens = vec![ring.var("x"), ring.var("y")];
    gens.extend(jacobian(s));
    Ok(Ideal::new(ring, gens)?)
}

fn plane_ideal<F: Field>(s: &Polynomial<F>) -> Result<Ideal<F>, PipelineError> {
    let ring = s.ring();
    let mut gens = vec![ring.var("y")];
    gens.extend(jacobian(s));
    Ok(Ideal::new(ring, gens)?)
}

/// Multiplicity of `(y, jac S)` and its projective dimension.
pub fn plane_milnor_projective<F: Field>(
    s: &Polynomial<F>,
    budget: &Budget,
) -> Result<(i64, i64), PipelineError> {
    let (m, d, _) = projective_count(&plane_ideal(s)?, budget)?;
    Ok((m, d))
}

/// `S` dehomogenized at `var = 1`, in a ring on the remaining variables.
pub fn affine_chart<F: Field>(
    s: &Polynomial<F>,
    var: &str,
) -> Result<Polynomial<F>, PipelineError> {
    let ring = s.ring();
    let iv = idx(ring, var)?;
    let names: Vec<&str> = ring
        .vars()
        .iter()
        .map(|v| v.as_str())
        .filter(|v| *v != var)
        .collect();
    let target = PolyRing::new(ring.field().clone(), &names, MonomialOrder::DegRevLex)
        .map_err(FamilyError::from)?;
    let mut map = Vec::with_capacity(ring.nvars());
    let mut k = 0;
    for i in 0..ring.nvars() {
        if i == iv {
            map.push(usize::MAX);
        } else {
            map.push(k);
            k += 1;
        }
    }
    let one = ring.field().one();
    Ok(s.substitute_const(iv, &one)
        .map_into(&target, &map, |c| Ok(c.clone()))
        .map_err(FamilyError::from)?)
}

fn affine_singular_ideal<F: Field>(
    s_aff: &Polynomial<F>,
    extra: &[&str],
) -> Result<Ideal<F>, PipelineError> {
    let ring = s_aff.ring();
    let mut gens = vec![ring.var("y")];
    for v in extra {
        gens.push(ring.var(v));
    }
    gens.push(s_aff.clone());
    gens.extend(jacobian(s_aff));
    Ok(Ideal::new(ring, gens)?)
}

/// Multiplicity of `(y, S, jac S)` in the chart `w = 1`.
pub fn plane_milnor_affine<F: Field>(
    s: &Polynomial<F>,
    budget: &Budget,
) -> Result<i64, PipelineError> {
    let s_aff = affine_chart(s, "w")?;
    let (m, _, _) = affine_count(&affine_singular_ideal(&s_aff, &[])?, budget)?;
    Ok(m)
}

/// True iff `(y, S, jac S, hess S)` is the unit ideal in the chart `w = 1`.
pub fn check_all_nodes<F: Field>(
    s: &Polynomial<F>,
    budget: &Budget,
) -> Result<bool, PipelineError> {
    let s_aff = affine_chart(s, "w")?;
    let mut ideal = affine_singular_ideal(&s_aff, &[])?;
    ideal = ideal.extend(&[hessian_det(&s_aff)])?;
    Ok(affine_count(&ideal, budget)?.0 == 0)
}

struct Recorder {
    timings: BTreeMap<String, u64>,
    stats: BTreeMap<String, GbStats>,
}

impl Recorder {
    fn run<T>(
        &mut self,
        name: &str,
        f: impl FnOnce() -> Result<(T, Option<GbStats>), PipelineError>,
    ) -> Result<T, PipelineError> {
        let start = Instant::now();
        let out = f();
        self.timings
            .insert(name.to_string(), start.elapsed().as_millis() as u64);
        let (v, st) = out?;
        if let Some(st) = st {
            self.stats.insert(name.to_string(), st);
        }
        Ok(v)
    }
}

/// Runs the pipeline: point check, axis count, projective and affine plane
/// counts, the `w = 0` complement when needed, and the Hessian check.
pub fn run_pipeline<F: Field>(
    params: &FamilyParams<F>,
    opts: &PipelineOptions,
) -> Result<NodeCountReport, PipelineError> {
    let field = params.field();
    let ring = family::surface_ring(field);
    let s = family::build_s(&ring, params)?;
    let mut steps = StepResults::default();
    let mut rec = Recorder {
        timings: BTreeMap::new(),
        stats: BTreeMap::new(),
    };
    let mut exhausted: Option<String> = None;
    let mut degenerate = false;
    let budget = opts.budget;

    // a budget error ends the pipeline; anything else propagates
    macro_rules! step {
        ($name:expr, $body:expr) => {
            match rec.run($name, $body) {
                Ok(v) => Some(v),
                Err(PipelineError::Groebner(GroebnerError::BudgetExceeded { .. })) => {
                    exhausted = Some($name.to_string());
                    None
                }
                Err(e) => return Err(e),
            }
        };
    }

    let s_ref = &s;
    steps.point_check = step!("point_check", || Ok((
        check_point_not_on_surface(s_ref)?,
        None
    )));

    if exhausted.is_none() {
        if let Some((m, d)) = step!("axis", || {
            let (m, d, st) = projective_count(&axis_ideal(s_ref)?, &budget)?;
            Ok(((m, d), Some(st)))
        }) {
            steps.axis_mult = Some(m);
            steps.axis_projective_dim = Some(d);
            degenerate |= d > 0;
        }
    }
    if exhausted.is_none() {
        if let Some((m, d)) = step!("plane_projective", || {
            let (m, d, st) = projective_count(&plane_ideal(s_ref)?, &budget)?;
            Ok(((m, d), Some(st)))
        }) {
            steps.plane_mult_projective = Some(m);
            steps.plane_projective_dim = Some(d);
            degenerate |= d > 0;
        }
    }
    let s_w = affine_chart(&s, "w")?;
    let s_w_ref = &s_w;
    if exhausted.is_none() && !degenerate {
        if let Some((m, d)) = step!("plane_affine", || {
            let (m, d, st) = affine_count(&affine_singular_ideal(s_w_ref, &[])?, &budget)?;
            Ok(((m, d), Some(st)))
        }) {
            steps.plane_mult_affine = Some(m);
            degenerate |= d > 0;
        }
    }
    let need_w0 = matches!(
        (steps.plane_mult_affine, steps.plane_mult_projective),
        (Some(a), Some(p)) if a < p
    );
    let s_z = affine_chart(&s, "z")?;
    let s_z_ref = &s_z;
    if exhausted.is_none() && !degenerate && need_w0 {
        if let Some(m) = step!("plane_w0", || {
            // points of the z = 1 chart minus those with w != 0
            let j = affine_singular_ideal(s_z_ref, &[])?;
            let (all, _, st) = affine_count(&j, &budget)?;
            let w = s_z_ref.ring().var("w");
            let sat = saturate(&j, &w, &budget)?;
            let (away, _, _) = affine_count(&sat, &budget)?;
            Ok((all - away, Some(st)))
        }) {
            steps.plane_mult_w0 = Some(m);
        }
    }

    let mut nodality = Nodality::Skipped;
    if exhausted.is_none() && !degenerate && opts.run_nonnodes {
        let nb = opts.nonnode_budget;
        let res = rec.run("nonnodes", || {
            let mut i = affine_singular_ideal(s_w_ref, &[])?;
            i = i.extend(&[hessian_det(s_w_ref)])?;
            let (m, _, st) = affine_count(&i, &nb)?;
            Ok((m, Some(st)))
        });
        match res {
            Ok(m) => {
                steps.nonnode_mult = Some(m);
                nodality = if m == 0 {
                    Nodality::Verified
                } else {
                    Nodality::Failed
                };
            }
            Err(PipelineError::Groebner(GroebnerError::BudgetExceeded { .. })) => {
                nodality = Nodality::Unverified;
            }
            Err(e) => return Err(e),
        }
        if need_w0 && nodality == Nodality::Verified {
            let res = rec.run("nonnodes_w0", || {
                let mut i = affine_singular_ideal(s_z_ref, &["w"])?;
                i = i.extend(&[hessian_det(s_z_ref)])?;
                let (m, _, st) = affine_count(&i, &nb)?;
                Ok((m, Some(st)))
            });
            match res {
                Ok(m) => {
                    steps.nonnode_mult_w0 = Some(m);
                    if m != 0 {
                        nodality = Nodality::Failed;
                    }
                }
                Err(PipelineError::Groebner(GroebnerError::BudgetExceeded { .. })) => {
                    nodality = Nodality::Unverified;
                }
                Err(e) => return Err(e),
            }
        }
    }

    let plane_nodes = steps.plane_mult_projective.filter(|_| !degenerate);
    let axis_nodes = steps.axis_mult.filter(|_| !degenerate);
    let lifted_total = match (plane_nodes, axis_nodes) {
        (Some(n), Some(a)) => family::lemma_lift(n, a).ok(),
        _ => None,
    };
    // the charts must account for every projective singularity
    let charts_consistent = match (steps.plane_mult_projective, steps.plane_mult_affine) {
        (Some(p), Some(a)) => a + steps.plane_mult_w0.unwrap_or(0) == p,
        _ => false,
    };
    let all_nodes =
        nodality == Nodality::Verified && charts_consistent && steps.point_check == Some(true);

    Ok(NodeCountReport {
        schema_version: SCHEMA_VERSION,
        field: field.descriptor(),
        minpoly: None,
        alpha: None,
        params: params.record(),
        steps,
        plane_nodes,
        axis_nodes,
        lifted_total,
        all_nodes,
        nodality,
        degenerate,
        budget_exhausted: exhausted,
        gb_stats: rec.stats,
        timings_ms: rec.timings,
    })
}

/// `I : f^∞` by repeated quotients.
pub fn saturate<F: Field>(
    ideal: &Ideal<F>,
    f: &Polynomial<F>,
    budget: &Budget,
) -> Result<Ideal<F>, GroebnerError> {
    let mut current = ideal.groebner(budget)?;
    loop {
        let next = ideal_quotient(
            &Ideal::new(current.ring(), current.polys().to_vec())?,
            f,
            budget,
        )?
        .groebner(budget)?;
        if next.polys() == current.polys() {
            return Ideal::new(next.ring(), next.polys().to_vec());
        }
        current = next;
    }
}
