//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any failure.

mod common;

use hpq::census::{cycle_class_table, h22_ideal_census, ClassKind};
use hpq::cohomology::{classes_equal, cycle_basis, Cochain1};
use hpq::estimate::{mc_volume_estimate, VolumeEstimate};
use hpq::forms::{circ, Signature};
use hpq::graph::Graph;
use hpq::named;
use hpq::rational::{int, Rational};
use hpq::simplex::{convex_hull_count, isometric, realize_from_cochain, MarkedSimplex, SimplexError};
use hpq::volume::{brute_force_weight_oracle, cone_slice_bounded, decide_finiteness, decide_graph, slice_bounded_graph, weight_oracle_graph};
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::process::Command;
use std::time::{Duration, Instant};

const MC_SEED: u64 = 0xC0FFEE;
const MC_SAMPLES: u64 = 1_000_000;
const MC_Z: f64 = 3.0;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn fact_signature(a: &[Rational]) -> Signature {
    let n = a.len();
    let h = n / 2;
    if n % 4 == 0 {
        let even = a.iter().skip(1).step_by(2).fold(Rational::one(), |p, x| p * x);
        let odd = a.iter().step_by(2).fold(Rational::one(), |p, x| p * x);
        if even == odd {
            return Signature::new(h - 1, h - 1, 2);
        }
    }
    match n % 4 {
        0 | 2 => Signature::nondegenerate(h, h),
        1 => Signature::nondegenerate(h, h + 1),
        _ => Signature::nondegenerate(h + 1, h),
    }
}

fn negative<R: Rng>(rng: &mut R) -> Rational {
    -common::random_positive(rng)
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut cases, mut wrong, mut degenerate) = (0, 0, 0);
    for n in 3..=12 {
        let mut tuples: Vec<Vec<Rational>> = (0..100).map(|_| (0..n).map(|_| negative(&mut rng)).collect()).collect();
        if n % 4 == 0 {
            for _ in 0..20 {
                let mut a: Vec<Rational> = (0..n - 1).map(|_| negative(&mut rng)).collect();
                let odd = a.iter().step_by(2).fold(Rational::one(), |p, x| p * x);
                let even = a.iter().skip(1).step_by(2).fold(Rational::one(), |p, x| p * x);
                a.push(odd / even);
                tuples.push(a);
            }
        }
        for a in tuples {
            let expected = fact_signature(&a);
            degenerate += usize::from(expected.is_degenerate());
            cases += 1;
            if circ(&a).unwrap().signature() != expected {
                wrong += 1;
            }
        }
    }
    outcome(wrong == 0 && degenerate >= 60, format!("{cases} tuples, {degenerate} degenerate, {wrong} mismatches"))
}

fn criterion_2() -> Outcome {
    let mut wrong = Vec::new();
    for n in 1..=12usize {
        let t = cycle_class_table(n);
        let h = n / 2;
        let expected: Vec<(ClassKind, Signature)> = match n {
            1 => vec![(ClassKind::Unique, Signature::nondegenerate(0, 1))],
            2 => vec![(ClassKind::Unique, Signature::nondegenerate(1, 1))],
            _ if n % 4 == 0 => vec![(ClassKind::Zero, Signature::new(h - 1, h - 1, 2)), (ClassKind::NonZero, Signature::nondegenerate(h, h))],
            _ if n % 4 == 1 => vec![(ClassKind::Unique, Signature::nondegenerate(h, h + 1))],
            _ if n % 4 == 2 => vec![(ClassKind::Zero, Signature::nondegenerate(h, h)), (ClassKind::NonZero, Signature::nondegenerate(h, h))],
            _ => vec![(ClassKind::Unique, Signature::nondegenerate(h + 1, h))],
        };
        let dim = usize::from(n >= 4 && n % 2 == 0);
        let got: Vec<(ClassKind, Signature)> = t.strata.iter().map(|s| (s.kind, s.signature)).collect();
        let graph = if n == 1 { Graph::new(1, [(0, 0)]).unwrap() } else { Graph::cycle(n) };
        let representatives_ok = t.strata.iter().all(|s| {
            let values: Vec<Rational> = s.representative.iter().map(|r| r.0.clone()).collect();
            let f = Cochain1::from_fn(&graph, |e| {
                let (a, b) = e.endpoints();
                let k = if b == a + 1 || a == b { a } else { b };
                values[k].clone()
            })
            .unwrap();
            let zero = Cochain1::constant(&graph, int(1));
            let class_ok = match s.kind {
                ClassKind::Unique => true,
                ClassKind::Zero => classes_equal(&f, &zero).unwrap().is_some(),
                ClassKind::NonZero => classes_equal(&f, &zero).unwrap().is_none(),
            };
            s.verified && class_ok && hpq::cohomology::mat(&f).signature() == s.signature
        });
        if t.h1_dimension != dim || got != expected || !representatives_ok {
            wrong.push(n);
        }
    }
    outcome(wrong.is_empty(), format!("n = 1..12, mismatches at {wrong:?}"))
}

fn triangle(g: &Graph) -> bool {
    let v = decide_graph(g).unwrap();
    let w = weight_oracle_graph(g).unwrap();
    v.finite == w.finite && v.finite == slice_bounded_graph(g)
}

fn criterion_3() -> Outcome {
    let mut graphs = 0;
    let mut disagreements = 0;
    for n in 1..=5 {
        for g in Graph::enumerate(n, true) {
            graphs += 1;
            disagreements += usize::from(!triangle(&g));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut infinite = 0;
    for k in 0..200 {
        let s = common::random_simplex(&mut rng, 6 + k % 7);
        let v = decide_finiteness(&s).unwrap();
        infinite += usize::from(!v.finite);
        let agree = v.finite == brute_force_weight_oracle(&s).unwrap().finite && v.finite == cone_slice_bounded(&s);
        disagreements += usize::from(!agree);
    }
    outcome(
        disagreements == 0,
        format!("{graphs} graphs + 200 random simplices ({infinite} infinite), {disagreements} disagreements"),
    )
}

fn criterion_4() -> Outcome {
    let mut failures = Vec::new();
    let p = named::pentagon();
    let pv = decide_finiteness(&p).unwrap();
    if !(pv.finite && p.is_ideal() && p.gram().signature() == Signature::nondegenerate(2, 3)) {
        failures.push("pentagon".to_string());
    }
    for k in 1..=5 {
        let v = decide_finiteness(&named::crown(k)).unwrap();
        let ok = !v.finite && v.stable.as_ref().is_some_and(|s| s.inner.len() == k && s.boundary.len() == k);
        if !ok {
            failures.push(format!("crown({k})"));
        }
    }
    for k in 2..=6 {
        if !decide_finiteness(&named::ideal_hp(k)).unwrap().finite {
            failures.push(format!("ideal_hp({k})"));
        }
    }
    let h = named::h22_nonideal_infinite();
    if decide_finiteness(&h).unwrap().finite || h.is_ideal() || (h.p(), h.q()) != (2, 2) {
        failures.push("h22_nonideal_infinite".into());
    }
    outcome(failures.is_empty(), format!("failures: {failures:?}"))
}

fn criterion_5() -> Outcome {
    let (report, _) = h22_ideal_census();
    outcome(
        report.graphs == 1024 && report.counterexamples.is_empty(),
        format!(
            "{} graphs, {} pass the 5-cycle filter, {} counterexamples",
            report.graphs,
            report.passing_filter,
            report.counterexamples.len()
        ),
    )
}

fn criterion_6() -> Outcome {
    let p = named::pentagon();
    let pe: Vec<VolumeEstimate> = [8.0, 16.0, 32.0].iter().map(|&r| mc_volume_estimate(&p, r, MC_SAMPLES, MC_SEED).unwrap()).collect();
    let mut worst_pair: f64 = 0.0;
    for a in 0..pe.len() {
        for b in a + 1..pe.len() {
            worst_pair = worst_pair.max(pe[a].z_score(&pe[b]));
        }
    }
    let c = named::crown(2);
    let ce: Vec<VolumeEstimate> =
        [2.0, 4.0, 8.0, 16.0, 32.0].iter().map(|&r| mc_volume_estimate(&c, r, MC_SAMPLES, MC_SEED).unwrap()).collect();
    let growth: Vec<f64> = ce.windows(2).map(|w| (w[1].estimate - w[0].estimate) / w[0].std_error.hypot(w[1].std_error)).collect();
    let min_growth = growth.iter().cloned().fold(f64::INFINITY, f64::min);
    let fmt = |v: &[VolumeEstimate]| v.iter().map(|e| format!("{:.3}±{:.3}", e.estimate, e.std_error)).collect::<Vec<_>>().join(" ");
    outcome(
        worst_pair < MC_Z && min_growth > MC_Z,
        format!(
            "pentagon [{}] max pairwise z {worst_pair:.2} < {MC_Z}; crown(2) [{}] min growth z {min_growth:.2} > {MC_Z}",
            fmt(&pe),
            fmt(&ce)
        ),
    )
}

fn alternating_product(f: &Cochain1<Rational>, cycle: &[hpq::graph::Edge]) -> Rational {
    cycle.iter().enumerate().fold(Rational::one(), |acc, (k, e)| if k % 2 == 0 { acc * f.get(e) } else { acc / f.get(e) })
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut errors = 0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let s = common::random_simplex(&mut rng, n);
        let gauge: Vec<Rational> = (0..n).map(|_| common::random_nonzero(&mut rng)).collect();
        let moved = MarkedSimplex::from_point_set(s.points().rescaled(&gauge)).unwrap();
        let ok = isometric(&s, &moved).is_some_and(|w| w.verify(&s.cocycle(), &moved.cocycle()));
        errors += usize::from(!ok);
    }
    let mut perturbed = 0;
    while perturbed < 100 {
        let n = rng.gen_range(4..=8);
        let s = common::random_simplex(&mut rng, n);
        let g = s.graph();
        let basis = cycle_basis(&g);
        // non-tree edges closing an even cycle
        let even: Vec<&Vec<hpq::graph::Edge>> = basis
            .cycles
            .iter()
            .filter(|c| {
                let (i, j) = c[0].endpoints();
                (basis.depth[i] + basis.depth[j]) % 2 == 1
            })
            .collect();
        let Some(cycle) = even.first() else { continue };
        let f = s.cocycle();
        let bumped = f.with_value(cycle[0], f.get(&cycle[0]) * int(2)).unwrap();
        let Ok(t) = realize_from_cochain(&bumped) else { continue };
        perturbed += 1;
        let invariant_changed = alternating_product(&f, cycle) != alternating_product(&bumped, cycle);
        if isometric(&s, &t).is_some() || !invariant_changed {
            errors += 1;
        }
    }
    outcome(errors == 0, format!("100 rescalings + {perturbed} even-cycle perturbations, {errors} errors"))
}

fn criterion_8() -> Outcome {
    let crowns: Vec<u64> = (1..=5).map(|p| convex_hull_count(named::crown(p).points()).unwrap()).collect();
    let pentagon = convex_hull_count(named::pentagon().points()).unwrap();
    outcome(crowns == [1, 2, 4, 8, 16] && pentagon == 1, format!("crowns {crowns:?}, pentagon {pentagon}"))
}

fn criterion_9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let (mut done, mut wrong) = (0, 0);
    while done < 500 {
        let n = rng.gen_range(2..=9);
        let (density, loops) = (rng.gen_range(0.2..0.8), rng.gen_range(0.0..0.5));
        let g = common::random_graph(&mut rng, n, density, loops);
        let f = common::random_cochain(&mut rng, &g);
        if hpq::cohomology::mat(&f).signature().is_degenerate() {
            continue;
        }
        done += 1;
        match realize_from_cochain(&f) {
            Ok(s) if s.cocycle() == f => {}
            _ => wrong += 1,
        }
    }
    let mut degenerate_ok = 0;
    for _ in 0..20 {
        let a = common::random_positive(&mut rng);
        let b = common::random_positive(&mut rng);
        let c = common::random_positive(&mut rng);
        // products of alternate edges agree: a·c = b·(a c / b)
        let d = &a * &c / &b;
        let values = [a, b, c, d];
        let f = Cochain1::from_fn(&Graph::cycle(4), |e| match e.endpoints() {
            (0, 1) => values[0].clone(),
            (1, 2) => values[1].clone(),
            (2, 3) => values[2].clone(),
            _ => values[3].clone(),
        })
        .unwrap();
        if matches!(realize_from_cochain(&f), Err(SimplexError::NotASimplex(_))) {
            degenerate_ok += 1;
        }
    }
    outcome(wrong == 0 && degenerate_ok == 20, format!("500 round trips, {wrong} mismatches; {degenerate_ok}/20 degenerate C4 rejected"))
}

fn hpq(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_hpq")).args(args).output().expect("run hpq");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10() -> Outcome {
    let dir = std::env::temp_dir().join(format!("hpq-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = |name: &str| {
        let (_, json) = hpq(&["example", name, "--json"]);
        let path = dir.join(format!("{}.json", name.replace(':', "_")));
        std::fs::write(&path, json).unwrap();
        path.to_string_lossy().into_owned()
    };
    let pentagon = file("pentagon");
    let crown = file("crown:2");
    let h22 = file("h22-nonideal");
    let commands: Vec<Vec<String>> = [
        vec!["analyze", &pentagon, "--samples", "200000"],
        vec!["analyze", &crown, "--samples", "200000", "--radius", "16"],
        vec!["estimate", &pentagon, "--samples", "200000", "--seed", "99"],
        vec!["estimate", &crown, "--delta", "--sampler", "box", "--samples", "200000"],
        vec!["isometric", &pentagon, &pentagon],
        vec!["isometric", &h22, &crown, "--unmarked"],
        vec!["example", "ideal-infinite:4:2"],
        vec!["example", "nonideal-infinite:3:2"],
        vec!["census", "--n", "3", "--seed", "5"],
        vec!["h22-census"],
        vec!["cycles", "--n", "12"],
    ]
    .iter()
    .map(|c| c.iter().map(|s| s.to_string()).collect())
    .collect();
    let mut differing = Vec::new();
    for c in &commands {
        let mut outputs = Vec::new();
        for threads in ["1", "8"] {
            for _ in 0..2 {
                let mut args: Vec<&str> = c.iter().map(String::as_str).collect();
                args.extend(["--json", "--threads", threads]);
                outputs.push(hpq(&args));
            }
        }
        if outputs.iter().any(|o| *o != outputs[0]) || outputs[0].1.is_empty() {
            differing.push(c[0].clone());
        }
    }
    std::fs::remove_dir_all(&dir).unwrap();
    outcome(differing.is_empty(), format!("{} commands x 4 runs, differing: {differing:?}", commands.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Option<Duration>); 10] = [
        ("cycle signature fact", criterion_1, Some(Duration::from_secs(10))),
        ("cycle class table", criterion_2, Some(Duration::from_secs(1))),
        ("oracle triangle", criterion_3, Some(Duration::from_secs(120))),
        ("named examples", criterion_4, Some(Duration::from_secs(1))),
        ("H22 ideal census", criterion_5, Some(Duration::from_secs(10))),
        ("Monte Carlo corroboration", criterion_6, Some(Duration::from_secs(120))),
        ("isometry classification", criterion_7, Some(Duration::from_secs(5))),
        ("convex hull count", criterion_8, None),
        ("realization round trip", criterion_9, Some(Duration::from_secs(5))),
        ("CLI determinism", criterion_10, None),
    ];
    let mut failed = 0;
    for (k, (name, run, limit)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let in_time = limit.is_none_or(|l| elapsed <= l);
        let ok = result.ok && in_time;
        failed += usize::from(!ok);
        let budget = limit.map(|l| format!(" (limit {:.0?})", l)).unwrap_or_default();
        println!(
            "{} {:>2} {name}: {} [{:.2?}{budget}]",
            if ok { "PASS" } else { "FAIL" },
            k + 1,
            result.detail,
            elapsed
        );
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
