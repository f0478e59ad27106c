//! Radio labelings, the pairwise radio-condition check, greedy completion of
//! a vertex ordering, and ordering plans with their slack accounting.
//!
//! A labeling `c` is a radio labeling of `G` when
//! `d(u, v) + |c(u) - c(v)| >= diam(G) + 1` for every pair of distinct
//! vertices. Sorting the vertices by label gives an ordering `x1, ..., xn`,
//! and with `ji = d(xi, x(i+1)) + c(x(i+1)) - c(xi) - (diam + 1)` the span
//! telescopes to
//!
//! ```text
//! c(xn) = (n - 1)(diam + 1) + c(x1) - Σ d(xi, x(i+1)) + Σ ji
//! ```

use std::collections::BTreeMap;

use serde::de::Error as _;
use serde::ser::SerializeMap;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LabelingError {
    #[error("labeling covers {labeled} vertices but the graph has {n}")]
    PartialLabeling { labeled: usize, n: usize },
    #[error("label 0 at vertex {0}; labels are positive")]
    ZeroLabel(usize),
    #[error("order is not a permutation of 1..={0}")]
    NotAPermutation(usize),
    #[error("plan has {gaps} gaps for {vertices} vertices")]
    GapCount { gaps: usize, vertices: usize },
    #[error("gap {index} is zero; gaps must be positive")]
    ZeroGap { index: usize },
    #[error("consecutive pair {index} ({u}, {v}) has negative slack {slack}")]
    NegativeSlack {
        index: usize,
        u: usize,
        v: usize,
        slack: i64,
    },
    #[error("labels are not distinct")]
    DuplicateLabel,
}

/// Total map from vertices `1..=n` to positive labels.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RadioLabeling {
    labels: Vec<u32>,
}

impl RadioLabeling {
    /// `labels[v - 1]` is the label of `v`.
    pub fn new(labels: Vec<u32>) -> Result<Self, LabelingError> {
        if let Some(pos) = labels.iter().position(|&c| c == 0) {
            return Err(LabelingError::ZeroLabel(pos + 1));
        }
        Ok(RadioLabeling { labels })
    }

    pub fn label(&self, v: usize) -> u32 {
        self.labels[v - 1]
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Largest label.
    pub fn span(&self) -> u32 {
        self.labels.iter().copied().max().unwrap_or(0)
    }

    /// Adds `t` to every label.
    pub fn shifted(&self, t: u32) -> RadioLabeling {
        RadioLabeling {
            labels: self.labels.iter().map(|c| c + t).collect(),
        }
    }

    /// Vertices sorted by increasing label (ties by vertex id).
    pub fn label_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (1..=self.labels.len()).collect();
        order.sort_by_key(|&v| (self.labels[v - 1], v));
        order
    }

    /// The ordering plan induced by sorting labels. Fails on repeated labels.
    pub fn to_plan(&self) -> Result<OrderingPlan, LabelingError> {
        let order = self.label_order();
        let gaps: Vec<u32> = order
            .windows(2)
            .map(|w| self.label(w[1]) - self.label(w[0]))
            .collect();
        if gaps.contains(&0) {
            return Err(LabelingError::DuplicateLabel);
        }
        let base = order.first().map_or(1, |&v| self.label(v));
        OrderingPlan::new(order, gaps, base)
    }
}

impl Serialize for RadioLabeling {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Wire<'a> {
            labels: Ordered<'a>,
        }
        struct Ordered<'a>(&'a [u32]);
        impl Serialize for Ordered<'_> {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                let mut map = serializer.serialize_map(Some(self.0.len()))?;
                for (i, c) in self.0.iter().enumerate() {
                    map.serialize_entry(&(i + 1).to_string(), c)?;
                }
                map.end()
            }
        }
        Wire {
            labels: Ordered(&self.labels),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RadioLabeling {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Wire {
            labels: BTreeMap<String, u32>,
        }
        let wire = Wire::deserialize(deserializer)?;
        let mut by_vertex = BTreeMap::new();
        for (k, c) in wire.labels {
            let v: usize = k
                .parse()
                .map_err(|_| D::Error::custom(format!("vertex key {k:?} is not an integer")))?;
            by_vertex.insert(v, c);
        }
        let n = by_vertex.len();
        if by_vertex.keys().copied().ne(1..=n) {
            return Err(D::Error::custom("labels must cover vertices 1..=n exactly"));
        }
        RadioLabeling::new(by_vertex.into_values().collect()).map_err(D::Error::custom)
    }
}

/// A pair breaking the radio condition; `deficit` is how far short it falls.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub deficit: u32,
}

/// Every pair `u < v` violating the radio condition, sorted by `(u, v)`.
pub fn verify(g: &Graph, c: &RadioLabeling) -> Result<Vec<Violation>, LabelingError> {
    let n = g.order();
    if c.len() != n {
        return Err(LabelingError::PartialLabeling {
            labeled: c.len(),
            n,
        });
    }
    let need = g.diameter() + 1;
    let mut out = Vec::new();
    for u in 1..=n {
        for v in u + 1..=n {
            let have = g.dist(u, v) + c.label(u).abs_diff(c.label(v));
            if have < need {
                out.push(Violation {
                    u,
                    v,
                    deficit: need - have,
                });
            }
        }
    }
    Ok(out)
}

/// Convenience: `true` iff `c` is a radio labeling of `g`.
pub fn is_radio_labeling(g: &Graph, c: &RadioLabeling) -> bool {
    matches!(verify(g, c), Ok(v) if v.is_empty())
}

fn check_permutation(n: usize, order: &[usize]) -> Result<(), LabelingError> {
    let mut seen = vec![false; n];
    if order.len() != n {
        return Err(LabelingError::NotAPermutation(n));
    }
    for &v in order {
        if v == 0 || v > n || std::mem::replace(&mut seen[v - 1], true) {
            return Err(LabelingError::NotAPermutation(n));
        }
    }
    Ok(())
}

/// Smallest labeling whose label order is `order`: each vertex gets the least
/// label above its predecessor that satisfies the radio condition against
/// every earlier vertex. `order[0]` gets label 1.
pub fn greedy_complete(g: &Graph, order: &[usize]) -> Result<RadioLabeling, LabelingError> {
    check_permutation(g.order(), order)?;
    let need = g.diameter() + 1;
    let mut labels = vec![0u32; g.order()];
    let mut prev = 0u32;
    for (i, &x) in order.iter().enumerate() {
        let mut c = prev + 1;
        for &y in &order[..i] {
            let bound = labels[y - 1] + need - g.dist(x, y);
            c = c.max(bound);
        }
        labels[x - 1] = c;
        prev = c;
    }
    RadioLabeling::new(labels)
}

/// A vertex ordering with the label gaps between consecutive vertices.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingPlan {
    pub order: Vec<usize>,
    pub gaps: Vec<u32>,
    pub base: u32,
}

impl OrderingPlan {
    pub fn new(order: Vec<usize>, gaps: Vec<u32>, base: u32) -> Result<Self, LabelingError> {
        let plan = OrderingPlan { order, gaps, base };
        plan.validate()?;
        Ok(plan)
    }

    pub fn validate(&self) -> Result<(), LabelingError> {
        check_permutation(self.order.len(), &self.order)?;
        if self.gaps.len() + 1 != self.order.len() {
            return Err(LabelingError::GapCount {
                gaps: self.gaps.len(),
                vertices: self.order.len(),
            });
        }
        if let Some(index) = self.gaps.iter().position(|&g| g == 0) {
            return Err(LabelingError::ZeroGap { index });
        }
        if self.base == 0 {
            return Err(LabelingError::ZeroLabel(self.order[0]));
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Label of the last vertex.
    pub fn span(&self) -> u32 {
        self.base + self.gaps.iter().sum::<u32>()
    }

    pub fn labeling(&self) -> RadioLabeling {
        let mut labels = vec![0u32; self.order.len()];
        let mut c = self.base;
        labels[self.order[0] - 1] = c;
        for (&v, &gap) in self.order[1..].iter().zip(&self.gaps) {
            c += gap;
            labels[v - 1] = c;
        }
        RadioLabeling { labels }
    }

    /// Gap sums over consecutive groups of `sizes` vertices. A group's rows
    /// are its vertices; the final vertex has no outgoing gap.
    pub fn group_gap_sums(&self, sizes: &[usize]) -> Vec<u32> {
        let mut out = Vec::with_capacity(sizes.len());
        let mut start = 0;
        for &size in sizes {
            let end = (start + size).min(self.gaps.len());
            out.push(self.gaps[start.min(end)..end].iter().sum());
            start += size;
        }
        out
    }

    /// The same plan read on a graph whose vertices are renamed by `map`
    /// (`map[v - 1]` is the new name of `v`).
    pub fn relabeled(&self, map: &[usize]) -> OrderingPlan {
        OrderingPlan {
            order: self.order.iter().map(|&v| map[v - 1]).collect(),
            gaps: self.gaps.clone(),
            base: self.base,
        }
    }
}

/// `ji` for each consecutive pair of a plan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlackVector(pub Vec<u32>);

impl SlackVector {
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&j| j as u64).sum()
    }
}

/// Slack of every consecutive pair; errors if one is negative.
pub fn slack(g: &Graph, plan: &OrderingPlan) -> Result<SlackVector, LabelingError> {
    plan.validate()?;
    if plan.len() != g.order() {
        return Err(LabelingError::PartialLabeling {
            labeled: plan.len(),
            n: g.order(),
        });
    }
    let need = g.diameter() as i64 + 1;
    plan.order
        .windows(2)
        .zip(&plan.gaps)
        .enumerate()
        .map(|(index, (w, &gap))| {
            let j = g.dist(w[0], w[1]) as i64 + gap as i64 - need;
            if j < 0 {
                Err(LabelingError::NegativeSlack {
                    index,
                    u: w[0],
                    v: w[1],
                    slack: j,
                })
            } else {
                Ok(j as u32)
            }
        })
        .collect::<Result<Vec<_>, _>>()
        .map(SlackVector)
}

/// Sum of consecutive distances `Σ d(xi, x(i+1))` along `order`.
pub fn consecutive_distance_sum(g: &Graph, order: &[usize]) -> u64 {
    order.windows(2).map(|w| g.dist(w[0], w[1]) as u64).sum()
}

/// Right-hand side of the telescoping identity for `plan`.
pub fn telescoped_span(g: &Graph, plan: &OrderingPlan, j: &SlackVector) -> i64 {
    let n = plan.len() as i64;
    (n - 1) * (g.diameter() as i64 + 1) + plan.base as i64
        - consecutive_distance_sum(g, &plan.order) as i64
        + j.total() as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;
    use proptest::prelude::*;

    fn star() -> Graph {
        Graph::new(4, [(1, 2), (2, 3), (2, 4)]).unwrap()
    }

    #[test]
    fn verify_star() {
        let g = star();
        let ok = RadioLabeling::new(vec![1, 5, 2, 3]).unwrap();
        assert_eq!(verify(&g, &ok).unwrap(), vec![]);
        assert_eq!(ok.span(), 5);

        let bad = RadioLabeling::new(vec![1, 4, 2, 3]).unwrap();
        assert_eq!(
            verify(&g, &bad).unwrap(),
            vec![Violation {
                u: 2,
                v: 4,
                deficit: 1
            }]
        );
    }

    #[test]
    fn verify_reports_all_pairs_sorted() {
        let g = star();
        let c = RadioLabeling::new(vec![1, 2, 3, 4]).unwrap();
        let v = verify(&g, &c).unwrap();
        let pairs: Vec<_> = v.iter().map(|x| (x.u, x.v, x.deficit)).collect();
        assert_eq!(pairs, vec![(1, 2, 1), (2, 3, 1)]);
    }

    #[test]
    fn verify_p2_and_partial() {
        let g = path(2);
        assert!(is_radio_labeling(
            &g,
            &RadioLabeling::new(vec![1, 2]).unwrap()
        ));
        assert_eq!(
            verify(&g, &RadioLabeling::new(vec![1]).unwrap()).unwrap_err(),
            LabelingError::PartialLabeling { labeled: 1, n: 2 }
        );
        assert_eq!(
            RadioLabeling::new(vec![0, 1]).unwrap_err(),
            LabelingError::ZeroLabel(1)
        );
    }

    #[test]
    fn greedy_examples() {
        let c = greedy_complete(&star(), &[1, 3, 4, 2]).unwrap();
        assert_eq!(c.span(), 5);
        let p = greedy_complete(&path(2), &[1, 2]).unwrap();
        assert_eq!(p.labels(), &[1, 2]);
        assert!(greedy_complete(&path(3), &[1, 1, 2]).is_err());
    }

    #[test]
    fn slack_p2() {
        let g = path(2);
        let plan = OrderingPlan::new(vec![1, 2], vec![1], 1).unwrap();
        let j = slack(&g, &plan).unwrap();
        assert_eq!(j, SlackVector(vec![0]));
        assert_eq!(telescoped_span(&g, &plan, &j), 2);
        assert_eq!(plan.span(), 2);
    }

    #[test]
    fn negative_slack_rejected() {
        let plan = OrderingPlan::new(vec![1, 3, 4, 2], vec![1, 1, 1], 1).unwrap();
        assert!(matches!(
            slack(&star(), &plan),
            Err(LabelingError::NegativeSlack { index: 2, .. })
        ));
    }

    #[test]
    fn plan_validation() {
        assert!(OrderingPlan::new(vec![1, 2], vec![0], 1).is_err());
        assert!(OrderingPlan::new(vec![1, 2], vec![1, 1], 1).is_err());
        assert!(OrderingPlan::new(vec![1, 1], vec![1], 1).is_err());
    }

    #[test]
    fn json_shape() {
        let c = RadioLabeling::new((1..=11).collect()).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        assert!(s.starts_with(r#"{"labels":{"1":1,"2":2,"#));
        let back: RadioLabeling = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        assert!(serde_json::from_str::<RadioLabeling>(r#"{"labels":{"1":1,"3":2}}"#).is_err());
    }

    fn graph_and_order() -> impl Strategy<Value = (Graph, Vec<usize>)> {
        (2usize..=9)
            .prop_flat_map(|n| {
                let parents = proptest::collection::vec(any::<proptest::sample::Index>(), n - 1);
                let extra = proptest::collection::vec((1..=n, 1..=n), 0..n);
                let order = Just((1..=n).collect::<Vec<_>>()).prop_shuffle();
                (Just(n), parents, extra, order)
            })
            .prop_map(|(n, parents, extra, order)| {
                let mut edges: Vec<_> = parents
                    .iter()
                    .enumerate()
                    .map(|(i, p)| (i + 2, p.index(i + 1) + 1))
                    .collect();
                edges.extend(extra.into_iter().filter(|(u, v)| u != v));
                (Graph::new(n, edges).unwrap(), order)
            })
    }

    proptest! {
        #[test]
        fn greedy_is_valid_and_keeps_order((g, order) in graph_and_order()) {
            let c = greedy_complete(&g, &order).unwrap();
            prop_assert!(verify(&g, &c).unwrap().is_empty());
            prop_assert_eq!(c.label_order(), order.clone());
            prop_assert_eq!(c.label(order[0]), 1);
            // labels are pairwise distinct
            let mut sorted = c.labels().to_vec();
            sorted.sort_unstable();
            sorted.dedup();
            prop_assert_eq!(sorted.len(), g.order());
        }

        #[test]
        fn greedy_cannot_be_lowered((g, order) in graph_and_order()) {
            // decreasing any single label (keeping the order) breaks validity
            let c = greedy_complete(&g, &order).unwrap();
            for (i, &v) in order.iter().enumerate().skip(1) {
                let mut labels = c.labels().to_vec();
                labels[v - 1] -= 1;
                let lowered = RadioLabeling::new(labels).unwrap();
                let keeps_order = lowered.label(v) > lowered.label(order[i - 1]);
                prop_assert!(!keeps_order || !verify(&g, &lowered).unwrap().is_empty());
            }
        }

        #[test]
        fn translation_invariance((g, order) in graph_and_order(), t in 0u32..50) {
            let c = greedy_complete(&g, &order).unwrap();
            let shifted = c.shifted(t);
            prop_assert!(verify(&g, &shifted).unwrap().is_empty());
            prop_assert_eq!(shifted.span(), c.span() + t);
        }

        #[test]
        fn telescoping_identity((g, order) in graph_and_order(), base in 1u32..5) {
            let plan = greedy_complete(&g, &order).unwrap().to_plan().unwrap();
            let plan = OrderingPlan { base, ..plan };
            let j = slack(&g, &plan).unwrap();
            prop_assert_eq!(telescoped_span(&g, &plan, &j), plan.span() as i64);
        }
    }
}
