// Acceptance run: one line per criterion, non-zero exit if any fails.
// Runs without the libtest harness so the summary is always printed.

use std::process::ExitCode;
use std::time::Instant;

use radiolab::construct::{
    even_small_s_groups, plan_even_small_s, plan_s12_center_even, plan_s1_center,
    plan_s2_center_even, plan_s2_center_odd,
};
use radiolab::labeling::telescoped_span;
use radiolab::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Check = (&'static str, fn() -> Outcome);

fn threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn opts(target: Option<u32>) -> SolveOptions {
    SolveOptions {
        target,
        threads: threads(),
        ..SolveOptions::default()
    }
}

fn small_even_values() -> Outcome {
    let cases = [
        (8, 2, 23),
        (10, 2, 37),
        (10, 3, 39),
        (12, 2, 55),
        (12, 3, 57),
        (12, 4, 59),
    ];
    let mut bad = Vec::new();
    for (n, s, value) in cases {
        let spec = SpireSpec::plain(n, s).unwrap();
        let g = build_spire(&spec).unwrap();
        let (target, want) = if n == 12 {
            (Some(value), SolveStatus::TargetMet)
        } else {
            (None, SolveStatus::Optimal)
        };
        let r = rn_exact(&g, &opts(target)).unwrap();
        let witness_ok = verify(&g, &r.witness).unwrap().is_empty() && r.witness.span() == value;
        let closed = lower_bound_closed(&spec).unwrap();
        if r.status != want || r.rn != value || !witness_ok || closed != value as u64 {
            bad.push(format!(
                "{spec}: rn={} {:?} closed={closed} want {value}",
                r.rn, r.status
            ));
        }
    }
    if bad.is_empty() {
        Ok(format!("{} small even spires certified", cases.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn formula_vs_oracle() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 4..=9 {
        for spec in SpireSpec::all_of_order(n) {
            let g = build_spire(&spec).unwrap();
            let r = rn_exact(&g, &opts(None)).unwrap();
            let f = rn_formula(&spec).unwrap();
            count += 1;
            if r.status != SolveStatus::Optimal || r.rn as u64 != f {
                bad.push(format!(
                    "{spec}: exact {} ({:?}) formula {f}",
                    r.rn, r.status
                ));
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{count} family members agree"))
    } else {
        Err(format!(
            "{} of {count} disagree: {}",
            bad.len(),
            bad.join("; ")
        ))
    }
}

fn check_plan(spec: &SpireSpec, plan: &OrderingPlan, bad: &mut Vec<String>) {
    let g = build_spire(spec).unwrap();
    let violations = verify(&g, &plan.labeling()).unwrap().len();
    let f = rn_formula(spec).unwrap();
    if violations > 0 || plan.span() as u64 != f {
        bad.push(format!(
            "{spec}: span {} formula {f} violations {violations}",
            plan.span()
        ));
    }
}

fn constructive_optimality() -> Outcome {
    let mut bad = Vec::new();
    let mut count = 0;
    for n in 13..=40 {
        for s in 2..=n - 2 {
            let spec = SpireSpec::plain(n, s).unwrap();
            match plan_any(&spec) {
                Ok(p) => check_plan(&spec, &p, &mut bad),
                Err(e) => bad.push(format!("{spec}: {e}")),
            }
            count += 1;
        }
    }
    for k in 2..=20 {
        let odd = [
            (Variant::S1, plan_s1_center(k)),
            (Variant::S12, plan_s1_center(k)),
            (Variant::S2, plan_s2_center_odd(k)),
        ];
        for (variant, plan) in odd {
            check_plan(
                &SpireSpec::new(variant, 2 * k + 1, k + 1).unwrap(),
                &plan.unwrap(),
                &mut bad,
            );
            count += 1;
        }
        let even = [
            (Variant::S12, plan_s12_center_even(k)),
            (Variant::S2, plan_s2_center_even(k)),
        ];
        for (variant, plan) in even {
            check_plan(
                &SpireSpec::new(variant, 2 * k, k + 1).unwrap(),
                &plan.unwrap(),
                &mut bad,
            );
            count += 1;
        }
    }
    for n in 4..=40 {
        for spec in SpireSpec::normalized_of_order(n) {
            if spec.variant == Variant::Plain || spec.s > n / 2 {
                continue;
            }
            match plan_variant_induced(&spec) {
                Ok(p) => {
                    check_plan(&spec, &p, &mut bad);
                    count += 1;
                }
                Err(PlanError::FallbackRequired(_)) => {}
                Err(e) => bad.push(format!("{spec}: {e}")),
            }
        }
    }
    if bad.is_empty() {
        Ok(format!("{count} plans verified at the formula span"))
    } else {
        Err(format!("{} of {count} fail: {}", bad.len(), bad.join("; ")))
    }
}

fn edge_caps() -> Outcome {
    let mut bad = Vec::new();
    for k in 4..=50u64 {
        for s in 2..=k {
            let g = build_spire(&SpireSpec::plain(2 * k as usize, s as usize).unwrap()).unwrap();
            let caps = edge_usage_caps(&g, &[]).unwrap();
            let lb = lower_bound_distance(&g, &caps);
            if caps.total != 2 * k * k - 2 * s + 1 || lb != 2 * k * k - 4 * k + 2 * s + 1 {
                bad.push(format!("k={k} s={s}: total {} bound {lb}", caps.total));
            }
        }
    }
    if bad.is_empty() {
        Ok("caps and distance bound match for 4 <= k <= 50".into())
    } else {
        Err(bad.join("; "))
    }
}

fn telescoping() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x7e1e);
    let specs: Vec<SpireSpec> = (4..=9).flat_map(SpireSpec::all_of_order).collect();
    for trial in 0..1000 {
        let spec = specs[rng.gen_range(0..specs.len())];
        let g = build_spire(&spec).unwrap();
        let n = g.order();
        let mut order: Vec<usize> = (1..=n).collect();
        for i in (1..n).rev() {
            order.swap(i, rng.gen_range(0..=i));
        }
        // least gaps for this order, then random padding (still a radio labeling)
        let tight = greedy_complete(&g, &order).unwrap();
        let gaps: Vec<u32> = order
            .windows(2)
            .map(|w| tight.label(w[1]) - tight.label(w[0]) + rng.gen_range(0..3))
            .collect();
        let plan = OrderingPlan::new(order, gaps, rng.gen_range(1..4)).unwrap();
        if !verify(&g, &plan.labeling()).unwrap().is_empty() {
            return Err(format!(
                "trial {trial}: padded plan on {spec} is not a radio labeling"
            ));
        }
        let j = slack(&g, &plan).unwrap();
        let diam = g.diameter() as i64;
        let dsum: i64 = plan
            .order
            .windows(2)
            .map(|w| g.dist(w[0], w[1]) as i64)
            .sum();
        let jsum: i64 = j.0.iter().map(|&x| x as i64).sum();
        let rhs = (n as i64 - 1) * (diam + 1) + plan.base as i64 - dsum + jsum;
        let span = plan.span() as i64;
        if rhs != span || telescoped_span(&g, &plan, &j) != span {
            return Err(format!(
                "trial {trial} on {spec}: span {span} identity {rhs}"
            ));
        }
    }
    Ok("1000 random plans satisfy the identity".into())
}

fn monotonicity() -> Outcome {
    let mut bad = Vec::new();
    let mut pairs = 0;
    for n in 4..=8 {
        for spec in SpireSpec::all_of_order(n) {
            let g = build_spire(&spec).unwrap();
            let rn_g = rn_exact(&g, &opts(None)).unwrap();
            for e in g.edges() {
                let rest: Vec<(usize, usize)> = g.edges().filter(|&f| f != e).collect();
                let Ok(h) = Graph::new(n, rest) else { continue };
                if h.diameter() != g.diameter() {
                    continue;
                }
                let rn_h = rn_exact(&h, &opts(None)).unwrap();
                pairs += 1;
                let exact =
                    rn_g.status == SolveStatus::Optimal && rn_h.status == SolveStatus::Optimal;
                if !exact || rn_h.rn > rn_g.rn {
                    bad.push(format!("{spec} minus {e:?}: {} vs {}", rn_h.rn, rn_g.rn));
                }
            }
        }
    }
    if pairs == 0 {
        return Err("no edge-removal pairs found".into());
    }
    if bad.is_empty() {
        Ok(format!("{pairs} edge-removal pairs are monotone"))
    } else {
        Err(bad.join("; "))
    }
}

fn group_sums() -> Outcome {
    for k in 7..=20u32 {
        for s in 2..=k - 2 {
            let p = plan_even_small_s(k as usize, s as usize).unwrap();
            let got = p.group_gap_sums(&even_small_s_groups(k as usize));
            let want = vec![8 * k + 2 * s - 9, (k - 7) * (2 * k - 1), 3 * k + 4];
            if got != want {
                return Err(format!("k={k} s={s}: {got:?} want {want:?}"));
            }
            if 1 + got.iter().sum::<u32>() != 2 * k * k - 4 * k + 2 * s + 3 {
                return Err(format!("k={k} s={s}: sums do not add up to the span"));
            }
        }
    }
    Ok("group sums match for 7 <= k <= 20".into())
}

/// All-pairs distances by repeated relaxation, independent of `Graph`.
fn distances(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<u32>> {
    let inf = u32::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for (i, row) in d.iter_mut().enumerate() {
        row[i] = 0;
    }
    for &(u, v) in edges {
        d[u][v] = 1;
        d[v][u] = 1;
    }
    for m in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][m] + d[m][j] < d[i][j] {
                    d[i][j] = d[i][m] + d[m][j];
                }
            }
        }
    }
    d
}

/// Smallest span by assigning labels vertex by vertex.
fn enumerate_rn(d: &[Vec<u32>]) -> u32 {
    let n = d.len();
    let diam = d.iter().flatten().copied().max().unwrap();
    fn place(v: usize, d: &[Vec<u32>], need: u32, span: u32, labels: &mut Vec<u32>) -> bool {
        if v == d.len() {
            return true;
        }
        for c in 1..=span {
            if labels
                .iter()
                .enumerate()
                .all(|(u, &l)| d[u][v] + l.abs_diff(c) >= need)
            {
                labels.push(c);
                if place(v + 1, d, need, span, labels) {
                    return true;
                }
                labels.pop();
            }
        }
        false
    }
    (n as u32..)
        .find(|&span| place(0, d, diam + 1, span, &mut Vec::with_capacity(n)))
        .unwrap()
}

fn oracle_cross_validation() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0bac1e);
    let graphs = 120;
    for trial in 0..graphs {
        let n = rng.gen_range(2..=7);
        let p = rng.gen_range(0.0..0.6);
        let mut edges = Vec::new();
        for v in 1..n {
            edges.push((rng.gen_range(0..v), v));
        }
        for u in 0..n {
            for v in u + 1..n {
                if !edges.contains(&(u, v)) && rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        let oracle = enumerate_rn(&distances(n, &edges));
        let g = Graph::new(n, edges.iter().map(|&(u, v)| (u + 1, v + 1))).unwrap();
        let r = rn_exact(&g, &opts(None)).unwrap();
        if r.status != SolveStatus::Optimal || r.rn != oracle {
            return Err(format!(
                "graph {trial} {edges:?}: exact {} ({:?}) oracle {oracle}",
                r.rn, r.status
            ));
        }
    }
    Ok(format!("{graphs} random graphs agree"))
}

fn main() -> ExitCode {
    let criteria: [Check; 8] = [
        ("small even spire values", small_even_values),
        ("formula vs oracle", formula_vs_oracle),
        ("constructive optimality", constructive_optimality),
        ("edge-cap closed form", edge_caps),
        ("telescoping identity", telescoping),
        ("edge-removal monotonicity", monotonicity),
        ("group-sum decomposition", group_sums),
        ("oracle cross-validation", oracle_cross_validation),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {} {name}: PASS ({msg}; {secs:.1}s)", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({msg}; {secs:.1}s)", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria pass",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
