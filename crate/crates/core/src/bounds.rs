//! Closed-form radio numbers for the family, the distance-sum lower bound
//! built from per-edge usage caps, and bound-consistency reports.
//!
//! For an ordering `x1, ..., xn` fix a shortest path `Pj` between each
//! consecutive pair and let `n(e)` count the paths through edge `e`. Then
//! `Σ d(xj, x(j+1)) = Σ n(e)`, so any admissible caps `N(e) >= n(e)` give
//! `rn(G) >= (n - 1)(diam + 1) + 1 - Σ N(e)`.
//!
//! Caps come from four rules:
//! * a bridge splitting `V1 + V2` vertices is crossed at most `2 min(V1, V2)` times;
//! * no edge is used by more than the `n - 1` paths;
//! * an edge is used at most once per vertex pair it lies on a geodesic of;
//! * the edges used an odd number of times form a subgraph whose odd-degree
//!   vertices are exactly `x1` and `xn`, which forces some caps down by one.
//!
//! Groups of edges that no single path uses twice share one joint cap.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::construct::{construct, PlanError};
use crate::graph::{edge, Edge, Graph, GraphError};
use crate::labeling::verify;
use crate::solver::{rn_exact, rn_exact_with_symmetry, SolveError, SolveOptions, SolveStatus};
use crate::spire::{build_spire, SpecError, SpireSpec, Variant};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BoundError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("cut group {index} is invalid: {reason}")]
    BadCutGroup { index: usize, reason: &'static str },
    #[error(transparent)]
    Plan(#[from] PlanError),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

/// Which rule produced a cap.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CapRule {
    /// `2 min(V1, V2)` for a bridge or a two-component edge cut.
    Cut,
    /// `n - 1`: one use per consecutive pair.
    PathCount,
    /// Number of vertex pairs with the edge on one of their geodesics.
    Geodesic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupRule {
    /// Removing the group leaves exactly two components; the joint cap is
    /// `2 min(V1, V2)`.
    TwoCut,
    /// No path uses two members; the joint cap is `n - 1`.
    PathDisjoint,
}

/// Edges sharing a joint usage cap. The caller asserts that no chosen
/// shortest path uses two members (up to `adjustment` extra uses).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CutGroup {
    pub edges: Vec<Edge>,
    pub rule: GroupRule,
    /// Signed correction to the joint cap, with its justification in `note`.
    pub adjustment: i64,
    pub note: &'static str,
}

impl CutGroup {
    pub fn new(edges: Vec<Edge>, rule: GroupRule) -> Self {
        CutGroup {
            edges: edges.into_iter().map(|(u, v)| edge(u, v)).collect(),
            rule,
            adjustment: 0,
            note: "",
        }
    }

    pub fn adjusted(mut self, adjustment: i64, note: &'static str) -> Self {
        self.adjustment = adjustment;
        self.note = note;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeCap {
    pub edge: Edge,
    pub cap: u64,
    pub rule: CapRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GroupCap {
    pub edges: Vec<Edge>,
    pub cap: u64,
    pub rule: CapRule,
    pub adjustment: i64,
    pub note: &'static str,
}

/// Per-edge and per-group caps on path usage, and the resulting bound on the
/// largest consecutive-distance sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeUsageBound {
    pub edges: Vec<EdgeCap>,
    pub groups: Vec<GroupCap>,
    /// Subtracted because of the odd-usage parity constraint.
    pub parity_reduction: u64,
    pub total: u64,
}

impl EdgeUsageBound {
    pub fn cap_of(&self, e: Edge) -> Option<u64> {
        let e = edge(e.0, e.1);
        self.edges.iter().find(|c| c.edge == e).map(|c| c.cap)
    }
}

/// Number of unordered vertex pairs having `e` on at least one geodesic.
pub fn geodesic_pairs(g: &Graph, e: Edge) -> u64 {
    let (a, b) = e;
    let mut count = 0;
    for x in g.vertices() {
        for y in x + 1..=g.order() {
            let d = g.dist(x, y);
            if g.dist(x, a) + 1 + g.dist(b, y) == d || g.dist(x, b) + 1 + g.dist(a, y) == d {
                count += 1;
            }
        }
    }
    count
}

fn tightest(options: &[(u64, CapRule)]) -> (u64, CapRule) {
    options
        .iter()
        .copied()
        .min_by_key(|&(cap, _)| cap)
        .expect("at least one rule applies")
}

/// Usage caps for every edge of `g`, with `groups` sharing joint caps.
pub fn edge_usage_caps(g: &Graph, groups: &[CutGroup]) -> Result<EdgeUsageBound, BoundError> {
    let n = g.order();
    let paths = n.saturating_sub(1) as u64;

    let mut grouped = BTreeSet::new();
    let mut group_caps = Vec::with_capacity(groups.len());
    for (index, group) in groups.iter().enumerate() {
        if group.edges.is_empty() {
            return Err(BoundError::BadCutGroup {
                index,
                reason: "empty group",
            });
        }
        for &(u, v) in &group.edges {
            g.check_vertex(u)?;
            g.check_vertex(v)?;
            if !g.has_edge(u, v) {
                return Err(BoundError::BadCutGroup {
                    index,
                    reason: "member is not an edge",
                });
            }
            if !grouped.insert(edge(u, v)) {
                return Err(BoundError::BadCutGroup {
                    index,
                    reason: "edge belongs to two groups",
                });
            }
        }
        let geodesic: u64 = group.edges.iter().map(|&e| geodesic_pairs(g, e)).sum();
        let mut options = vec![(paths, CapRule::PathCount), (geodesic, CapRule::Geodesic)];
        if group.rule == GroupRule::TwoCut {
            match g.edge_cut_components(&group.edges)? {
                Some((small, _)) => options.insert(0, (2 * small as u64, CapRule::Cut)),
                None => {
                    return Err(BoundError::BadCutGroup {
                        index,
                        reason: "removal does not leave two components",
                    })
                }
            }
        }
        let (base, rule) = tightest(&options);
        group_caps.push(GroupCap {
            edges: group.edges.clone(),
            cap: (base as i64 + group.adjustment).max(0) as u64,
            rule,
            adjustment: group.adjustment,
            note: group.note,
        });
    }

    let mut edges = Vec::new();
    for e in g.edges().filter(|e| !grouped.contains(e)) {
        let mut options = Vec::with_capacity(3);
        if let Some((small, _)) = g.edge_cut_components(&[e])? {
            options.push((2 * small as u64, CapRule::Cut));
        }
        options.push((paths, CapRule::PathCount));
        options.push((geodesic_pairs(g, e), CapRule::Geodesic));
        let (cap, rule) = tightest(&options);
        edges.push(EdgeCap { edge: e, cap, rule });
    }

    let parity_reduction = if groups.is_empty() && n >= 2 {
        parity_deficit(n, &edges)
    } else {
        0
    };
    let total = edges.iter().map(|c| c.cap).sum::<u64>()
        + group_caps.iter().map(|c| c.cap).sum::<u64>()
        - parity_reduction;
    Ok(EdgeUsageBound {
        edges,
        groups: group_caps,
        parity_reduction,
        total,
    })
}

/// Least number of unit decrements of the caps needed so that the odd-usage
/// subgraph has exactly two odd-degree vertices.
fn parity_deficit(n: usize, caps: &[EdgeCap]) -> u64 {
    let mut degree = vec![0u32; n];
    for c in caps.iter().filter(|c| c.cap % 2 == 1) {
        degree[c.edge.0 - 1] += 1;
        degree[c.edge.1 - 1] += 1;
    }
    let odd = degree.iter().filter(|&&d| d % 2 == 1).count() as u64;
    if odd == 0 {
        1
    } else {
        (odd - 2) / 2
    }
}

/// `(n - 1)(diam + 1) + 1 - total`, floored at `n` (labels are distinct).
pub fn lower_bound_distance(g: &Graph, bound: &EdgeUsageBound) -> u64 {
    let n = g.order() as u64;
    let raw = (n - 1) * (g.diameter() as u64 + 1) + 1;
    raw.saturating_sub(bound.total).max(n)
}

/// The joint-cap groups used for the center cases whose lower bound is
/// proved by edge counting: `S^1_{2k+1,k+1}`, `S^{1,2}_{2k,k+1}` and
/// `S^2_{2k,k+1}`.
pub fn center_case_groups(spec: &SpireSpec) -> Option<Vec<CutGroup>> {
    let spec = spec.normalize().ok()?;
    let (n, k) = (spec.n, spec.half());
    if spec.s != k + 1 {
        return None;
    }
    match (spec.variant, spec.is_even()) {
        (Variant::S1, false) => Some(vec![CutGroup::new(
            vec![(k, k + 1), (k, n), (k + 1, n)],
            GroupRule::PathDisjoint,
        )]),
        (Variant::S12, true) => Some(vec![
            CutGroup::new(vec![(k - 1, k), (k - 1, n)], GroupRule::TwoCut).adjusted(
                -1,
                "both joint caps and the single use of {vk, vn} cannot all be attained: \
                 vk and vn would have to be the two ends of the ordering and also consecutive",
            ),
            CutGroup::new(vec![(k, k + 1), (k + 1, n)], GroupRule::TwoCut),
        ]),
        (Variant::S2, true) => Some(vec![
            CutGroup::new(vec![(k - 1, k), (k - 1, n)], GroupRule::TwoCut)
                .adjusted(1, "the geodesic between vk and vn may use both members"),
            CutGroup::new(vec![(k, k + 1), (k + 1, n)], GroupRule::TwoCut),
        ]),
        _ => None,
    }
}

/// Closed-form radio number of a family member `S_{n,s}` with `n = 2k` or `2k + 1`.
pub fn rn_plain(n: usize, s: usize) -> u64 {
    let (k, s) = ((n / 2) as u64, s as u64);
    if n % 2 == 1 {
        2 * k * k - 2 * k + 2 * s
    } else if s + 2 <= k {
        2 * k * k - 4 * k + 2 * s + 3
    } else if s + 1 == k {
        2 * k * k - 2 * k
    } else {
        2 * k * k - 2 * k + 1
    }
}

/// Whether the normalized spec has the spire one step past the middle, the
/// cases not covered by the edge-addition argument.
pub fn is_center_case(spec: &SpireSpec) -> bool {
    spec.variant != Variant::Plain && spec.s > spec.n / 2
}

/// Radio number of any family member.
pub fn rn_formula(spec: &SpireSpec) -> Result<u64, SpecError> {
    let spec = spec.normalize()?;
    if !is_center_case(&spec) {
        return Ok(rn_plain(spec.n, spec.s));
    }
    let k = spec.half() as u64;
    Ok(match (spec.variant, spec.is_even()) {
        (Variant::S1 | Variant::S12, false) => 2 * k * k + 1,
        (Variant::S2, false) => 2 * k * k,
        (Variant::S12, true) => 2 * k * k - 2 * k + 2,
        (Variant::S2, true) => 2 * k * k - 2 * k + 1,
        // normalized S1 on an even order has s <= n / 2
        _ => unreachable!("normalized {spec} is not a center case"),
    })
}

/// The best lower bound the edge-counting machinery alone gives for `spec`.
pub fn lower_bound_generic(spec: &SpireSpec) -> Result<u64, BoundError> {
    let g = build_spire(spec)?;
    let groups = center_case_groups(spec).unwrap_or_default();
    Ok(lower_bound_distance(&g, &edge_usage_caps(&g, &groups)?))
}

/// Proven lower bound for `spec`. Even spires with `s <= k - 2` add the
/// two units of forced slack to the distance bound; the edge-counted center
/// cases use their joint caps; edge-removal monotonicity carries bounds from
/// a subgraph of the same diameter; odd spires and near-center even spires
/// use the known closed forms for spiders.
pub fn lower_bound_closed(spec: &SpireSpec) -> Result<u64, BoundError> {
    let spec = spec.normalize()?;
    let (n, s, k) = (spec.n, spec.s, spec.half());
    if spec.variant == Variant::Plain {
        if spec.is_even() && s + 2 <= k {
            let g = build_spire(&spec)?;
            return Ok(lower_bound_distance(&g, &edge_usage_caps(&g, &[])?) + 2);
        }
        return Ok(rn_plain(n, s));
    }
    if !is_center_case(&spec) {
        // S_{n,s} is a spanning subgraph with the same diameter
        return lower_bound_closed(&SpireSpec::plain(n, s)?);
    }
    match (spec.variant, spec.is_even()) {
        // S^1_{2k+1,k+1} is a subgraph
        (Variant::S12, false) => lower_bound_closed(&SpireSpec::new(Variant::S1, n, s)?),
        // S_{2k+1,k+1}, the mirror of S_{2k+1,k}, is a subgraph
        (Variant::S2, false) => lower_bound_closed(&SpireSpec::plain(n, k + 1)?),
        _ => lower_bound_generic(&spec),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ConsistencyFlags {
    pub generic_le_closed: bool,
    pub closed_eq_formula: bool,
    pub formula_eq_constructive: bool,
    pub constructive_verified: bool,
    pub exact_eq_formula: Option<bool>,
}

impl ConsistencyFlags {
    pub fn all(&self) -> bool {
        self.generic_le_closed
            && self.closed_eq_formula
            && self.formula_eq_constructive
            && self.constructive_verified
            && self.exact_eq_formula.unwrap_or(true)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub spec: SpireSpec,
    pub lb_generic: u64,
    pub lb_closed: u64,
    pub ub_constructive: u64,
    pub formula: u64,
    pub exact: Option<u64>,
    pub exact_status: Option<SolveStatus>,
    pub flags: ConsistencyFlags,
    pub consistent: bool,
}

/// All bounds for `spec`; `exact` runs the solver with `opts`.
pub fn bound_report(
    spec: &SpireSpec,
    exact: Option<&SolveOptions>,
) -> Result<BoundReport, BoundError> {
    let spec = spec.normalize()?;
    let g = build_spire(&spec)?;
    let formula = rn_formula(&spec)?;
    let lb_generic = lower_bound_generic(&spec)?;
    let lb_closed = lower_bound_closed(&spec)?;
    let built = construct(&spec)?;
    let constructive_verified = verify(&g, &built.plan.labeling())
        .map(|v| v.is_empty())
        .unwrap_or(false);
    let ub_constructive = built.plan.span() as u64;

    let solved = match exact {
        Some(opts) => Some(match spec.mirror_automorphism() {
            Some(m) => rn_exact_with_symmetry(&g, &[m], opts)?,
            None => rn_exact(&g, opts)?,
        }),
        None => None,
    };
    let exact_value = solved.as_ref().map(|r| r.rn as u64);
    let flags = ConsistencyFlags {
        generic_le_closed: lb_generic <= lb_closed,
        closed_eq_formula: lb_closed == formula,
        formula_eq_constructive: formula == ub_constructive,
        constructive_verified,
        exact_eq_formula: solved
            .as_ref()
            .map(|r| r.rn as u64 == formula && r.status == SolveStatus::Optimal),
    };
    Ok(BoundReport {
        spec,
        lb_generic,
        lb_closed,
        ub_constructive,
        formula,
        exact: exact_value,
        exact_status: solved.map(|r| r.status),
        consistent: flags.all(),
        flags,
    })
}
