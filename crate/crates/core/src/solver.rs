//! Exact radio numbers by branch and bound over vertex orderings.
//!
//! Any radio labeling sorted by label yields an ordering, and greedy
//! completion is pointwise minimal for a fixed ordering, so the minimum
//! greedy span over all orderings is `rn(G)`. The search extends orderings
//! depth first, keeping for every unplaced vertex the least label the radio
//! condition allows against the placed prefix.
//!
//! Work is split on two-vertex prefixes. Workers share an atomic incumbent,
//! a node counter and a stop flag; the reported `rn` is a min-reduction and
//! does not depend on the schedule.

use std::sync::atomic::{AtomicBool, AtomicU32, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;

use serde::Serialize;
use thiserror::Error;

use crate::bounds::{edge_usage_caps, lower_bound_distance};
use crate::graph::Graph;
use crate::labeling::{greedy_complete, RadioLabeling};

pub const DEFAULT_BUDGET: u64 = 100_000_000;

/// Largest graph the search accepts.
pub const MAX_ORDER: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SolveStatus {
    /// `rn` is the radio number.
    Optimal,
    /// Stopped at the first labeling with span at most the target.
    TargetMet,
    /// Node budget ran out; `rn` is the best span found so far.
    BudgetExhausted,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub rn: u32,
    pub status: SolveStatus,
    pub explored: u64,
    /// Lower bound used to stop the search early.
    pub floor: u32,
    pub witness: RadioLabeling,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolveError {
    #[error("permutation {0} is not an automorphism of the graph")]
    NotAnAutomorphism(usize),
    #[error("graph has {0} vertices; the search supports at most {MAX_ORDER}")]
    TooLarge(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SolveOptions {
    /// Node limit across all workers. Workers report in batches, so the
    /// final count can overshoot it by a few thousand.
    pub budget: u64,
    /// Stop as soon as a labeling with span at most this is found.
    pub target: Option<u32>,
    pub threads: usize,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            budget: DEFAULT_BUDGET,
            target: None,
            threads: 1,
        }
    }
}

impl SolveOptions {
    pub fn with_target(target: u32) -> Self {
        SolveOptions {
            target: Some(target),
            ..Self::default()
        }
    }
}

/// Exact radio number of `g`.
pub fn rn_exact(g: &Graph, opts: &SolveOptions) -> Result<SolveResult, SolveError> {
    let all: Vec<usize> = (0..g.order()).collect();
    solve(g, opts, &all)
}

/// As [`rn_exact`], with the first vertex restricted to one representative
/// per orbit of the group generated by `automorphisms`.
pub fn rn_exact_with_symmetry(
    g: &Graph,
    automorphisms: &[Vec<usize>],
    opts: &SolveOptions,
) -> Result<SolveResult, SolveError> {
    let n = g.order();
    for (i, perm) in automorphisms.iter().enumerate() {
        if !is_automorphism(g, perm) {
            return Err(SolveError::NotAnAutomorphism(i));
        }
    }
    // orbits of the generated group = components of the generator action
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        parent[x] = r;
        r
    }
    for perm in automorphisms {
        for v in 0..n {
            let (a, b) = (find(&mut parent, v), find(&mut parent, perm[v] - 1));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let reps: Vec<usize> = (0..n).filter(|&v| find(&mut parent, v) == v).collect();
    solve(g, opts, &reps)
}

pub fn is_automorphism(g: &Graph, perm: &[usize]) -> bool {
    let n = g.order();
    if perm.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &p in perm {
        if p == 0 || p > n || std::mem::replace(&mut seen[p - 1], true) {
            return false;
        }
    }
    g.edges().all(|(u, v)| g.has_edge(perm[u - 1], perm[v - 1]))
}

struct Shared {
    best: AtomicU32,
    nodes: AtomicU64,
    stop: AtomicBool,
    exhausted: AtomicBool,
    reached_floor: AtomicBool,
    target_hit: AtomicBool,
    next_item: AtomicUsize,
}

struct Problem<'a> {
    n: usize,
    dist: &'a [u32],
    need: u32,
    /// Least possible gap into each vertex: `max(1, diam + 1 - ecc(v))`.
    min_gap: Vec<u32>,
    floor: u32,
    target: Option<u32>,
    budget: u64,
}

#[derive(Clone)]
struct Incumbent {
    span: u32,
    item: usize,
    order: Vec<usize>,
}

fn solve(g: &Graph, opts: &SolveOptions, first: &[usize]) -> Result<SolveResult, SolveError> {
    let n = g.order();
    if n > MAX_ORDER {
        return Err(SolveError::TooLarge(n));
    }
    let floor = root_floor(g);
    let need = g.diameter() + 1;
    let problem = Problem {
        n,
        dist: g.distance_matrix(),
        need,
        min_gap: g
            .vertices()
            .map(|v| need.saturating_sub(g.eccentricity(v)).max(1))
            .collect(),
        floor,
        target: opts.target,
        budget: opts.budget.max(1),
    };

    // two-vertex prefixes, most distant second vertex first
    let mut items: Vec<(usize, Option<usize>)> = Vec::new();
    for &a in first {
        if n == 1 {
            items.push((a, None));
            continue;
        }
        let mut seconds: Vec<usize> = (0..n).filter(|&b| b != a).collect();
        seconds.sort_by_key(|&b| (std::cmp::Reverse(problem.dist[a * n + b]), b));
        items.extend(seconds.into_iter().map(|b| (a, Some(b))));
    }

    let shared = Shared {
        best: AtomicU32::new(u32::MAX),
        nodes: AtomicU64::new(0),
        stop: AtomicBool::new(false),
        exhausted: AtomicBool::new(false),
        reached_floor: AtomicBool::new(false),
        target_hit: AtomicBool::new(false),
        next_item: AtomicUsize::new(0),
    };
    let results: Mutex<Vec<Incumbent>> = Mutex::new(Vec::new());
    let threads = opts.threads.max(1).min(items.len().max(1));

    let work = || {
        let mut worker = Worker::new(&problem, &shared);
        loop {
            if shared.stop.load(Ordering::Relaxed) {
                break;
            }
            let idx = shared.next_item.fetch_add(1, Ordering::Relaxed);
            let Some(&(a, b)) = items.get(idx) else {
                break;
            };
            worker.run_prefix(idx, a, b);
        }
        worker.flush_nodes();
        if let Some(inc) = worker.incumbent.take() {
            results.lock().expect("poisoned").push(inc);
        }
    };
    if threads == 1 {
        work();
    } else {
        std::thread::scope(|scope| {
            for _ in 0..threads {
                scope.spawn(work);
            }
        });
    }

    let explored = shared.nodes.load(Ordering::Relaxed);
    let best = results
        .into_inner()
        .expect("poisoned")
        .into_iter()
        .min_by_key(|inc| (inc.span, inc.item));
    let witness = match &best {
        Some(inc) => greedy_complete(g, &inc.order).expect("search emits permutations"),
        None => {
            let identity: Vec<usize> = g.vertices().collect();
            greedy_complete(g, &identity).expect("identity is a permutation")
        }
    };
    let rn = witness.span();
    let status = if shared.reached_floor.load(Ordering::Relaxed) {
        SolveStatus::Optimal
    } else if shared.target_hit.load(Ordering::Relaxed) {
        SolveStatus::TargetMet
    } else if shared.exhausted.load(Ordering::Relaxed) {
        SolveStatus::BudgetExhausted
    } else {
        SolveStatus::Optimal
    };
    Ok(SolveResult {
        rn,
        status,
        explored,
        floor,
        witness,
    })
}

/// Distance-sum lower bound with per-edge caps, and at least `n`.
fn root_floor(g: &Graph) -> u32 {
    let caps = edge_usage_caps(g, &[]).expect("no groups supplied");
    lower_bound_distance(g, &caps).max(g.order() as u64) as u32
}

struct Worker<'a> {
    p: &'a Problem<'a>,
    shared: &'a Shared,
    order: Vec<usize>,
    /// `req[depth * n + v]`: least label for `v` given the first `depth` placements.
    req: Vec<u32>,
    placed: u64,
    local_nodes: u64,
    item: usize,
    incumbent: Option<Incumbent>,
    scratch: Vec<Vec<(u32, usize)>>,
}

const FLUSH_EVERY: u64 = 1 << 12;

impl<'a> Worker<'a> {
    fn new(p: &'a Problem<'a>, shared: &'a Shared) -> Self {
        Worker {
            p,
            shared,
            order: Vec::with_capacity(p.n),
            req: vec![0; (p.n + 1) * p.n],
            placed: 0,
            local_nodes: 0,
            item: 0,
            incumbent: None,
            scratch: vec![Vec::with_capacity(p.n); p.n + 1],
        }
    }

    fn flush_nodes(&mut self) {
        if self.local_nodes > 0 {
            let total = self
                .shared
                .nodes
                .fetch_add(self.local_nodes, Ordering::Relaxed)
                + self.local_nodes;
            self.local_nodes = 0;
            if total >= self.p.budget {
                self.shared.exhausted.store(true, Ordering::Relaxed);
                self.shared.stop.store(true, Ordering::Relaxed);
            }
        }
    }

    /// Places `v` with label `c` at `depth`, filling level `depth + 1` of `req`.
    fn place(&mut self, depth: usize, v: usize, c: u32) {
        let n = self.p.n;
        let (cur, next) = self.req.split_at_mut((depth + 1) * n);
        let cur = &cur[depth * n..];
        let next = &mut next[..n];
        let row = &self.p.dist[v * n..(v + 1) * n];
        for w in 0..n {
            next[w] = cur[w].max(c + self.p.need - row[w]);
        }
        self.order.push(v);
        self.placed |= 1 << v;
    }

    fn unplace(&mut self, v: usize) {
        self.order.pop();
        self.placed &= !(1 << v);
    }

    fn run_prefix(&mut self, item: usize, a: usize, b: Option<usize>) {
        self.item = item;
        self.order.clear();
        self.placed = 0;
        self.req[..self.p.n].fill(0);
        self.place(0, a, 1);
        match b {
            None => self.dfs(1, 1),
            Some(b) => {
                let c = self.req[self.p.n + b].max(2);
                if c + self.rest_min_gap(b) < self.shared.best.load(Ordering::Relaxed) {
                    self.place(1, b, c);
                    self.dfs(2, c);
                    self.unplace(b);
                }
            }
        }
        self.unplace(a);
    }

    fn rest_min_gap(&self, except: usize) -> u32 {
        (0..self.p.n)
            .filter(|&w| w != except && self.placed & (1 << w) == 0)
            .map(|w| self.p.min_gap[w])
            .sum()
    }

    fn dfs(&mut self, depth: usize, last: u32) {
        self.local_nodes += 1;
        if self.local_nodes >= FLUSH_EVERY {
            self.flush_nodes();
        }
        if self.shared.stop.load(Ordering::Relaxed) {
            return;
        }
        let n = self.p.n;
        if depth == n {
            self.record(last);
            return;
        }
        let best = self.shared.best.load(Ordering::Relaxed);
        let req = &self.req[depth * n..(depth + 1) * n];
        let mut total_gap = 0u32;
        let mut cands = std::mem::take(&mut self.scratch[depth]);
        cands.clear();
        for w in 0..n {
            if self.placed & (1 << w) == 0 {
                total_gap += self.p.min_gap[w];
                cands.push((req[w].max(last + 1), w));
            }
        }
        cands.sort_unstable();
        for &(c, w) in &cands {
            // every later vertex adds at least its least possible gap
            if c + total_gap - self.p.min_gap[w] >= self.shared.best.load(Ordering::Relaxed) {
                // candidates are sorted by label, so the rest are no better
                if c >= best {
                    break;
                }
                continue;
            }
            self.place(depth, w, c);
            self.dfs(depth + 1, c);
            self.unplace(w);
            if self.shared.stop.load(Ordering::Relaxed) {
                break;
            }
        }
        self.scratch[depth] = cands;
    }

    fn record(&mut self, span: u32) {
        let prev = self.shared.best.fetch_min(span, Ordering::Relaxed);
        let improves_local = self
            .incumbent
            .as_ref()
            .is_none_or(|inc| (span, self.item) < (inc.span, inc.item));
        if span <= prev && improves_local {
            self.incumbent = Some(Incumbent {
                span,
                item: self.item,
                order: self.order.iter().map(|&v| v + 1).collect(),
            });
        }
        if span <= self.p.floor {
            self.shared.reached_floor.store(true, Ordering::Relaxed);
            self.shared.stop.store(true, Ordering::Relaxed);
        } else if self.p.target.is_some_and(|t| span <= t) {
            self.shared.target_hit.store(true, Ordering::Relaxed);
            self.shared.stop.store(true, Ordering::Relaxed);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::path;
    use crate::labeling::verify;
    use crate::spire::{build_spire, SpireSpec};

    fn exact(g: &Graph) -> SolveResult {
        rn_exact(g, &SolveOptions::default()).unwrap()
    }

    /// All n! orderings, greedy completion, minimum span.
    fn enumerate_orderings(g: &Graph) -> u32 {
        fn rec(g: &Graph, order: &mut Vec<usize>, used: &mut [bool], best: &mut u32) {
            if order.len() == g.order() {
                *best = (*best).min(greedy_complete(g, order).unwrap().span());
                return;
            }
            for v in g.vertices() {
                if !used[v - 1] {
                    used[v - 1] = true;
                    order.push(v);
                    rec(g, order, used, best);
                    order.pop();
                    used[v - 1] = false;
                }
            }
        }
        let mut best = u32::MAX;
        rec(g, &mut Vec::new(), &mut vec![false; g.order()], &mut best);
        best
    }

    #[test]
    fn small_spires() {
        let s42 = build_spire(&SpireSpec::plain(4, 2).unwrap()).unwrap();
        assert_eq!(enumerate_orderings(&s42), 5);
        let r = exact(&s42);
        assert_eq!((r.rn, r.status), (5, SolveStatus::Optimal));

        let s52 = build_spire(&SpireSpec::plain(5, 2).unwrap()).unwrap();
        assert_eq!(enumerate_orderings(&s52), 8);
        assert_eq!(exact(&s52).rn, 8);

        let p2 = exact(&path(2));
        assert_eq!(p2.rn, 2);
        assert_eq!(exact(&path(1)).rn, 1);
    }

    #[test]
    fn matches_full_enumeration() {
        for n in 4..=7 {
            for spec in SpireSpec::all_of_order(n) {
                let g = build_spire(&spec).unwrap();
                let r = exact(&g);
                assert_eq!(r.rn, enumerate_orderings(&g), "{spec}");
                assert!(verify(&g, &r.witness).unwrap().is_empty());
                assert_eq!(r.witness.span(), r.rn);
            }
        }
    }

    #[test]
    fn symmetry_reduction() {
        let spec = SpireSpec::plain(8, 4).unwrap();
        let g = build_spire(&spec).unwrap();
        let mirror = spec.mirror_automorphism().unwrap();
        let r = rn_exact_with_symmetry(&g, &[mirror], &SolveOptions::default()).unwrap();
        assert_eq!((r.rn, r.status), (25, SolveStatus::Optimal));

        let identity: Vec<usize> = g.vertices().collect();
        let plain = exact(&g);
        let same = rn_exact_with_symmetry(&g, &[identity], &SolveOptions::default()).unwrap();
        assert_eq!(same.rn, plain.rn);

        let s63 = build_spire(&SpireSpec::plain(6, 3).unwrap()).unwrap();
        let m = SpireSpec::plain(6, 3)
            .unwrap()
            .mirror_automorphism()
            .unwrap();
        assert_eq!(
            rn_exact_with_symmetry(&s63, &[m], &SolveOptions::default())
                .unwrap()
                .rn,
            13
        );
    }

    #[test]
    fn rejects_non_automorphism() {
        let g = build_spire(&SpireSpec::plain(8, 3).unwrap()).unwrap();
        let bogus = SpireSpec::plain(8, 3).unwrap().mirror_map();
        assert_eq!(
            rn_exact_with_symmetry(&g, &[bogus], &SolveOptions::default()).unwrap_err(),
            SolveError::NotAnAutomorphism(0)
        );
    }

    #[test]
    fn target_and_budget() {
        let g = build_spire(&SpireSpec::plain(8, 2).unwrap()).unwrap();
        let r = rn_exact(&g, &SolveOptions::with_target(30)).unwrap();
        assert!(r.rn <= 30);
        assert!(verify(&g, &r.witness).unwrap().is_empty());

        let tiny = SolveOptions {
            budget: 5,
            ..SolveOptions::default()
        };
        let r = rn_exact(&g, &tiny).unwrap();
        assert_eq!(r.status, SolveStatus::BudgetExhausted);
        assert!(verify(&g, &r.witness).unwrap().is_empty());
    }

    #[test]
    fn threads_agree() {
        for (n, s) in [(8, 2), (8, 3), (9, 4)] {
            let g = build_spire(&SpireSpec::plain(n, s).unwrap()).unwrap();
            let single = exact(&g);
            let multi = rn_exact(
                &g,
                &SolveOptions {
                    threads: 4,
                    ..SolveOptions::default()
                },
            )
            .unwrap();
            assert_eq!(single.rn, multi.rn);
            assert!(verify(&g, &multi.witness).unwrap().is_empty());
        }
    }
}
