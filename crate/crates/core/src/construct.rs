//! Explicit optimal labelings for the family, each given as a vertex
//! ordering plus the gaps between consecutive labels.
//!
//! Every construction is a pair of generators in `(k, s)`; nothing is a
//! stored label list. Small even spires with the spire far from the middle
//! (`n` in `{8, 10, 12}`) and `n = 5` have no table and are recovered by
//! targeted exact search.

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{is_center_case, rn_formula};
use crate::graph::Graph;
use crate::labeling::{verify, LabelingError, OrderingPlan};
use crate::solver::{rn_exact, SolveOptions};
use crate::spire::{build_spire, SpecError, SpireSpec, Variant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanError {
    #[error("construction {table} needs {requirement}; got k={k}, s={s}")]
    OutOfRange {
        table: &'static str,
        requirement: &'static str,
        k: usize,
        s: usize,
    },
    #[error("{0} has no explicit construction; use exact search")]
    FallbackRequired(SpireSpec),
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Labeling(#[from] LabelingError),
    #[error("exact search found span {found} for {spec}, above the target {target}")]
    SearchFailed {
        spec: SpireSpec,
        found: u32,
        target: u64,
    },
    #[error("plan for {spec} fails the radio condition on {violations} pairs")]
    Unverified { spec: SpireSpec, violations: usize },
}

/// Where a plan came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlanSource {
    EvenSmallS,
    EvenSmallSK7,
    EvenSNearMiddle,
    EvenSMiddle,
    Odd,
    S1CenterOdd,
    S2CenterOdd,
    S12CenterEven,
    S2CenterEven,
    ExactSearch,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Construction {
    pub spec: SpireSpec,
    pub source: PlanSource,
    /// True when the plan of the spire `S_{n,s}` is read on a variant.
    pub induced: bool,
    pub plan: OrderingPlan,
}

fn out_of_range(table: &'static str, requirement: &'static str, k: usize, s: usize) -> PlanError {
    PlanError::OutOfRange {
        table,
        requirement,
        k,
        s,
    }
}

fn plan(order: Vec<usize>, gaps: Vec<usize>) -> OrderingPlan {
    let gaps = gaps.into_iter().map(|g| g as u32).collect();
    OrderingPlan::new(order, gaps, 1).expect("constructions emit valid plans")
}

/// Vertex counts of the three groups of [`plan_even_small_s`].
pub fn even_small_s_groups(k: usize) -> [usize; 3] {
    [8, 2 * k - 14, 6]
}

/// `S_{2k,s}` with `k >= 7` and `2 <= s <= k - 2`; span `2k² - 4k + 2s + 3`.
///
/// At `k = 7` the middle group is empty and `v_4`, `v_2` end up too close
/// (short by 2), so the plan is only a radio labeling for `k >= 8`; use
/// [`plan_even_small_s_k7`] there. The group sums hold for every `k >= 7`.
pub fn plan_even_small_s(k: usize, s: usize) -> Result<OrderingPlan, PlanError> {
    if k < 7 || s < 2 || s + 2 > k {
        return Err(out_of_range(
            "even-small-s",
            "k >= 7 and 2 <= s <= k-2",
            k,
            s,
        ));
    }
    let mut order = vec![k, 2 * k, k + 4, 5, k + 3, 3, k + 2, 4];
    let mut gaps = vec![k + s - 2, k + s - 6, k, k + 1, k - 1, k, k + 1, k - 2];
    for m in 5..=k - 3 {
        order.extend([k + m, m + 1]);
        gaps.extend([k, k - 1]);
    }
    order.extend([2 * k - 2, 2, k + 1, 1, 2 * k - 1, k - 1]);
    gaps.extend([4, k, k - 1, 2, k - 1]);
    Ok(plan(order, gaps))
}

/// `S_{14,s}` with `2 <= s <= 5`; span `2s + 73`.
pub fn plan_even_small_s_k7(s: usize) -> Result<OrderingPlan, PlanError> {
    if !(2..=5).contains(&s) {
        return Err(out_of_range("even-small-s-k7", "2 <= s <= 5", 7, s));
    }
    let order = vec![7, 14, 9, 3, 10, 4, 12, 6, 13, 1, 8, 2, 11, 5];
    let gaps = vec![s + 5, s + 3, 7, 6, 7, 5, 7, 6, 2, 6, 7, 4, 7];
    Ok(plan(order, gaps))
}

/// `S_{2k,k-1}` with `k >= 3`; span `2k² - 2k`.
pub fn plan_even_s_km1(k: usize) -> Result<OrderingPlan, PlanError> {
    if k < 3 {
        return Err(out_of_range(
            "even-s-near-middle",
            "k >= 3",
            k,
            k.saturating_sub(1),
        ));
    }
    let mut order = vec![k - 1, 2 * k - 1, 2 * k];
    let mut gaps = vec![k - 1, k - 1, k - 1];
    for m in 2..k {
        order.extend([2 * k - m, k - m]);
        gaps.extend([k - 1, k]);
    }
    order.push(k);
    Ok(plan(order, gaps))
}

/// `S_{2k,k}` with `k >= 2`; span `2k² - 2k + 1`.
pub fn plan_even_s_k(k: usize) -> Result<OrderingPlan, PlanError> {
    if k < 2 {
        return Err(out_of_range("even-s-middle", "k >= 2", k, k));
    }
    let mut order = vec![k];
    let mut gaps = vec![k];
    for m in 1..=k - 2 {
        order.extend([m, k + m]);
        gaps.extend([k - 1, k]);
    }
    order.extend([k - 1, 2 * k - 1, 2 * k]);
    gaps.extend([k - 1, k - 1]);
    Ok(plan(order, gaps))
}

/// `S_{2k+1,s}` with `k >= 3` and `2 <= s <= k`; span `2k² - 2k + 2s`.
pub fn plan_odd(k: usize, s: usize) -> Result<OrderingPlan, PlanError> {
    if k < 3 || s < 2 || s > k {
        return Err(out_of_range("odd", "k >= 3 and 2 <= s <= k", k, s));
    }
    let mut order = Vec::with_capacity(2 * k + 1);
    let mut gaps = Vec::with_capacity(2 * k);
    for m in 1..=k - 2 {
        order.extend([k - m, 2 * k - m]);
        gaps.extend([k, k - 1]);
    }
    // the last alternating vertex v(k+2) leads into the spire
    *gaps.last_mut().expect("k >= 3") = k + s - 3;
    order.extend([2 * k + 1, k + 1, 1, 2 * k, k]);
    gaps.extend([k + s - 2, k, 1, k]);
    Ok(plan(order, gaps))
}

fn center_odd(k: usize, first_gap: usize) -> OrderingPlan {
    let mut order = vec![k, 2 * k + 1];
    let mut gaps = vec![first_gap, k];
    for m in 0..=k - 2 {
        order.extend([2 * k - m, k - 1 - m]);
        gaps.extend([k - 1, k]);
    }
    order.push(k + 1);
    plan(order, gaps)
}

// Valid on S^{1,2}_{2k,k+1} and, having fewer edges, on S^2_{2k,k+1}.
fn center_even(k: usize) -> OrderingPlan {
    match k {
        2 => plan(vec![4, 1, 3, 2], vec![2, 1, 2]),
        3 => plan(vec![3, 1, 4, 2, 5, 6], vec![3, 2, 3, 2, 3]),
        _ => {
            let mut order = vec![k, 1, 2 * k - 2, k - 1, 2 * k - 3];
            let mut gaps = vec![k, 2, k, k + 1, 4];
            for m in 2..k - 2 {
                order.extend([m, k + m - 1]);
                gaps.extend([k, k + 1]);
            }
            order.extend([k - 2, 2 * k - 1, 2 * k]);
            gaps.extend([k - 2, k]);
            plan(order, gaps)
        }
    }
}

/// `S^1_{2k+1,k+1}` (also valid on `S^{1,2}_{2k+1,k+1}`); span `2k² + 1`.
pub fn plan_s1_center(k: usize) -> Result<OrderingPlan, PlanError> {
    if k < 2 {
        return Err(out_of_range("s1-center-odd", "k >= 2", k, k + 1));
    }
    Ok(center_odd(k, 2 * k - 1))
}

/// `S^2_{2k+1,k+1}`; span `2k²`.
pub fn plan_s2_center_odd(k: usize) -> Result<OrderingPlan, PlanError> {
    if k < 2 {
        return Err(out_of_range("s2-center-odd", "k >= 2", k, k + 1));
    }
    Ok(center_odd(k, 2 * k - 2))
}

/// `S^{1,2}_{2k,k+1}`; span `2k² - 2k + 2`.
pub fn plan_s12_center_even(k: usize) -> Result<OrderingPlan, PlanError> {
    if k < 2 {
        return Err(out_of_range("s12-center-even", "k >= 2", k, k + 1));
    }
    Ok(center_even(k))
}

/// `S^2_{2k,k+1}`; span `5` for `k = 2` (the 4-cycle) and `2k² - 2k + 2`
/// otherwise, which is optimal (the lower bound `2k² - 2k + 1` is not
/// attained for `k >= 3`).
pub fn plan_s2_center_even(k: usize) -> Result<OrderingPlan, PlanError> {
    match k {
        0 | 1 => Err(out_of_range("s2-center-even", "k >= 2", k, k + 1)),
        2 => Ok(plan(vec![1, 3, 2, 4], vec![1, 2, 1])),
        _ => Ok(center_even(k)),
    }
}

/// Table plan for the spire `S_{n,s}` with `s <= n / 2`.
fn plain_table(n: usize, s: usize) -> Result<(OrderingPlan, PlanSource), PlanError> {
    let k = n / 2;
    let spec = SpireSpec::plain(n, s)?;
    if n % 2 == 1 {
        if k < 3 {
            return Err(PlanError::FallbackRequired(spec));
        }
        return Ok((plan_odd(k, s)?, PlanSource::Odd));
    }
    match s {
        s if s == k => Ok((plan_even_s_k(k)?, PlanSource::EvenSMiddle)),
        s if s + 1 == k => Ok((plan_even_s_km1(k)?, PlanSource::EvenSNearMiddle)),
        _ if k < 7 => Err(PlanError::FallbackRequired(spec)),
        _ if k == 7 => Ok((plan_even_small_s_k7(s)?, PlanSource::EvenSmallSK7)),
        _ => Ok((plan_even_small_s(k, s)?, PlanSource::EvenSmallS)),
    }
}

/// The plan of `S_{n,s}` read on a variant `S^*_{n,s}` with `s <= n / 2`.
pub fn plan_variant_induced(spec: &SpireSpec) -> Result<OrderingPlan, PlanError> {
    spec.validate()?;
    if spec.variant == Variant::Plain || spec.s > spec.n / 2 {
        return Err(out_of_range(
            "variant-induced",
            "a variant with s <= n/2",
            spec.half(),
            spec.s,
        ));
    }
    plain_table(spec.n, spec.s).map(|(p, _)| p)
}

/// Explicit (non-search) plan for `spec`, if one exists.
pub fn table_plan(spec: &SpireSpec) -> Result<Construction, PlanError> {
    let spec = spec.normalize()?;
    let k = spec.half();
    let (plan, source) = if !is_center_case(&spec) {
        plain_table(spec.n, spec.s).map_err(|e| match e {
            PlanError::FallbackRequired(_) => PlanError::FallbackRequired(spec),
            other => other,
        })?
    } else {
        match (spec.variant, spec.is_even()) {
            (Variant::S1 | Variant::S12, false) => (plan_s1_center(k)?, PlanSource::S1CenterOdd),
            (Variant::S2, false) => (plan_s2_center_odd(k)?, PlanSource::S2CenterOdd),
            (Variant::S12, true) => (plan_s12_center_even(k)?, PlanSource::S12CenterEven),
            (Variant::S2, true) => (plan_s2_center_even(k)?, PlanSource::S2CenterEven),
            _ => unreachable!("normalized {spec} is not a center case"),
        }
    };
    Ok(Construction {
        spec,
        source,
        induced: spec.variant != Variant::Plain && !is_center_case(&spec),
        plan,
    })
}

/// Optimal plan for any family member: a table when one applies, otherwise
/// exact search with the closed-form span as target. The result always
/// satisfies the radio condition. Its span is `rn_formula(spec)` except on
/// `S^2_{2k,k+1}` with `k >= 3`, where no labeling reaches the formula and
/// the plan is one above it (see [`plan_s2_center_even`]).
pub fn construct(spec: &SpireSpec) -> Result<Construction, PlanError> {
    spec.validate()?;
    let normal = spec.normalize()?;
    let target = rn_formula(&normal)?;
    let mut built = match table_plan(&normal) {
        Ok(c) => c,
        Err(PlanError::FallbackRequired(_)) => {
            search_plan(&normal, &build_spire(&normal)?, target)?
        }
        Err(e) => return Err(e),
    };
    if normal != *spec {
        // the reflection is an involution, so it maps the plan back as well
        built.plan = built.plan.relabeled(&spec.mirror_map());
        built.spec = *spec;
    }
    let violations = verify(&build_spire(spec)?, &built.plan.labeling())?.len();
    if violations > 0 {
        return Err(PlanError::Unverified {
            spec: *spec,
            violations,
        });
    }
    Ok(built)
}

/// See [`construct`].
pub fn plan_any(spec: &SpireSpec) -> Result<OrderingPlan, PlanError> {
    construct(spec).map(|c| c.plan)
}

fn search_plan(spec: &SpireSpec, g: &Graph, target: u64) -> Result<Construction, PlanError> {
    let result = rn_exact(g, &SolveOptions::with_target(target as u32))
        .expect("family graphs are small enough for the search");
    if result.rn as u64 > target {
        return Err(PlanError::SearchFailed {
            spec: *spec,
            found: result.rn,
            target,
        });
    }
    Ok(Construction {
        spec: *spec,
        source: PlanSource::ExactSearch,
        induced: false,
        plan: result.witness.to_plan()?,
    })
}
