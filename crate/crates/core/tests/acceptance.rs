//! Acceptance suite: one line per criterion, nonzero exit on any failure.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use deltasg::congruence::{all_congruences, is_delta};
use deltasg::enumerate::{count_semigroups, search_t2r, search_t2r_with, PruneRules, RunOptions, SearchCheckpoint};
use deltasg::families::t2r_near_miss;
use deltasg::properties::{is_permutative, is_weakly_exponential, satisfies_identity, IdentitySpec};
use deltasg::structure::{classify_we_delta, t2r_necessary_propositions, T2Decomposition, T2Kind, Template};
use deltasg::table::validate_table;
use deltasg::{CayleyTable, Error};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn delta_equivalence() -> Outcome {
    let corpus = common::corpus(4);
    let mut deltas = 0;
    for t in &corpus {
        let fast = is_delta(t).is_delta;
        let lattice = all_congruences(t).map_err(|e| e.to_string())?;
        let lattice_chain = lattice
            .iter()
            .tuple_combinations()
            .all(|(p, q)| p.refines(q) || q.refines(p));
        let brute = common::brute_is_delta(t);
        ensure(fast == lattice_chain && fast == brute, || {
            format!("{t:?}: fast {fast}, lattice {lattice_chain}, partition scan {brute}")
        })?;
        deltas += usize::from(fast);
    }
    Ok(format!("{} tables, {deltas} are Δ", corpus.len()))
}

fn enumeration_counts() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=3 {
        let ours = count_semigroups(n, true).map_err(|e| e.to_string())? as usize;
        let naive = common::naive_iso_count(n);
        ensure(ours == naive, || format!("order {n}: enumerated {ours}, naive {naive}"))?;
        counts.push(ours);
    }
    ensure(counts[..2] == [1, 5], || format!("counts {counts:?}"))?;
    Ok(format!("counts {counts:?} match the naive oracle"))
}

fn t2r_absent() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("t2r.json");
    let mut cp = SearchCheckpoint::default();
    let pruned = search_t2r_with(7, PruneRules::ALL, 7, &RunOptions::default(), &mut cp, &mut |c| c.save(&path))
        .map_err(|e| e.to_string())?;
    ensure(pruned.complete() && pruned.witness().is_none(), || format!("pruned ≤ 7: {:?}", pruned.witness()))?;
    let saved = SearchCheckpoint::load(&path).map_err(|e| e.to_string())?;
    ensure(saved.stages.iter().all(|s| s.is_complete()), || "checkpoint incomplete".into())?;

    let all = search_t2r(5, PruneRules::ALL).map_err(|e| e.to_string())?;
    let none = search_t2r(5, PruneRules::NONE).map_err(|e| e.to_string())?;
    ensure(none.complete() && none.witness().is_none() && all.witness() == none.witness(), || {
        "pruned and unpruned order ≤ 5 searches differ".into()
    })?;
    let nodes: Vec<u64> = pruned.orders.iter().map(|o| o.counters.nodes).collect();
    Ok(format!("absent up to order 7 (nodes per order {nodes:?}); unpruned ≤ 5 also absent"))
}

fn classification() -> Outcome {
    let mut seen: BTreeMap<String, usize> = BTreeMap::new();
    let corpus = common::corpus(5);
    for t in &corpus {
        let r = match classify_we_delta(t) {
            Ok(r) => r,
            Err(e @ (Error::ClassificationGap { .. } | Error::AmbiguousClassification { .. })) => {
                return Err(e.to_string())
            }
            Err(e) => return Err(format!("unexpected error {e}")),
        };
        ensure(!matches!(r.template, Template::T2R | Template::T2L), || format!("{t:?} is {}", r.template))?;
        let we_delta = is_weakly_exponential(t).is_ok() && is_delta(t).is_delta;
        ensure(we_delta == (r.template != Template::NotWeDelta), || format!("{t:?}: {}", r.template))?;
        *seen.entry(r.template.to_string()).or_default() += 1;
    }
    Ok(format!("{} tables, no gaps: {seen:?}", corpus.len()))
}

fn weakly_exponential_bound() -> Outcome {
    let corpus = common::corpus(4);
    let mut we = 0;
    for t in &corpus {
        let bounded = is_weakly_exponential(t).is_ok();
        let long = common::we_oracle(t, 50);
        ensure(bounded == long, || format!("{t:?}: bounded {bounded}, 50-step {long}"))?;
        we += usize::from(bounded);
    }
    Ok(format!("{} tables agree, {we} weakly exponential", corpus.len()))
}

fn rees_samples() -> Outcome {
    let corpus = common::corpus(5);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for i in 0..1000 {
        let t = &corpus[rng.random_range(0..corpus.len())];
        let n = t.order();
        let mut ideal = BTreeSet::new();
        for _ in 0..rng.random_range(1..=n) {
            ideal.extend(common::brute_principal_ideal(t, rng.random_range(0..n)));
        }
        let (q, map) = t.rees_quotient(&ideal).map_err(|e| format!("sample {i}: {e}"))?;
        ensure(validate_table(q.order(), &common::flat(&q)).is_ok(), || format!("sample {i}: not associative"))?;
        ensure(q.order() == n - ideal.len() + 1, || format!("sample {i}: order {}", q.order()))?;
        let hom = t
            .elements()
            .all(|x| t.elements().all(|y| map[t.mul(x, y)] == q.mul(map[x], map[y])));
        ensure(hom, || format!("sample {i}: map is not a homomorphism"))?;
    }
    Ok("1000 samples, 0 failures".into())
}

fn implication_ladder() -> Outcome {
    let corpus = common::corpus(4);
    let (mut comm, mut medial, mut leftcomm) = (0, 0, 0);
    for t in &corpus {
        let c = t.is_commutative();
        let m = satisfies_identity(t, &IdentitySpec::medial()).is_ok();
        let l = satisfies_identity(t, &IdentitySpec::left_commutative()).is_ok();
        let p = is_permutative(t, 4).holds();
        ensure(!c || m, || format!("{t:?} commutative but not medial"))?;
        ensure(!m || p, || format!("{t:?} medial but not permutative"))?;
        ensure(!l || p, || format!("{t:?} left-commutative but not permutative"))?;
        comm += usize::from(c);
        medial += usize::from(m);
        leftcomm += usize::from(l);
    }
    Ok(format!(
        "0 counterexamples over {} tables ({comm} commutative, {medial} medial, {leftcomm} left-commutative)",
        corpus.len()
    ))
}

/// Manual evaluation of the near miss, independent of the battery.
fn proposition_battery() -> Outcome {
    let t: CayleyTable = t2r_near_miss();
    let s0: BTreeSet<usize> = [0, 1, 2].into();
    let (u, v) = (3, 4);
    let d = T2Decomposition::new(s0.clone(), vec![u, v], T2Kind::T2R);
    let report = t2r_necessary_propositions(&t, &d).map_err(|e| e.to_string())?;
    let get = |name: &str| report.get(name).ok_or_else(|| format!("{name} missing"));

    let square: BTreeSet<usize> = s0.iter().flat_map(|&a| s0.iter().map(move |&b| (a, b))).map(|(a, b)| t.mul(a, b)).collect();
    ensure(square == [0, 2].into(), || format!("S0^2 = {square:?}"))?;
    let p7 = get("P7")?;
    ensure(!p7.holds && p7.witness == vec![1], || format!("P7 {p7:?}"))?;

    let p6_witness: Vec<usize> = s0.iter().copied().filter(|&b| t.mul(u, b) != b && t.mul(v, b) != b).take(1).collect();
    ensure(p6_witness == vec![1], || format!("manual P6 witness {p6_witness:?}"))?;
    let p6 = get("P6")?;
    ensure(p6.holds && p6.witness == p6_witness, || format!("P6 {p6:?}"))?;

    let ideal = |a: usize| common::brute_principal_ideal(&t, a);
    let j_len = |b: usize| t.elements().filter(|&s| ideal(s) == ideal(b)).count();
    let j_sizes: Vec<usize> = t.elements().map(j_len).collect();
    ensure(j_sizes == vec![1, 1, 1, 2, 2], || format!("|J_b| = {j_sizes:?}"))?;
    let p4 = get("P4")?;
    ensure(!p4.holds, || format!("P4 {p4:?}"))?;
    let c3 = get("C3")?;
    ensure(c3.holds && c3.vacuous, || format!("C3 {c3:?}"))?;

    // P2 concerns b = 3 (J_3 = {3, 4}, I(3) = {0}): the sandwiches xJ_3y over
    // S¹ are {3, 4}, {3}, {4} or {0}; J_3S0 = S0J_3 = {0}; S1J_3 = J_3.
    let j3: BTreeSet<usize> = [3, 4].into();
    let i3: BTreeSet<usize> = ideal(3).difference(&j3).copied().collect();
    ensure(i3 == [0].into(), || format!("I(3) = {i3:?}"))?;
    let side: Vec<Option<usize>> = std::iter::once(None).chain(t.elements().map(Some)).collect();
    for &x in &side {
        for &y in &side {
            let img: BTreeSet<usize> = j3
                .iter()
                .map(|&b| {
                    let l = x.map_or(b, |x| t.mul(x, b));
                    y.map_or(l, |y| t.mul(l, y))
                })
                .collect();
            ensure(!img.contains(&0) || img == [0].into(), || format!("x={x:?} y={y:?}: {img:?}"))?;
        }
    }
    let p2 = get("P2")?;
    ensure(p2.holds && !p2.vacuous, || format!("P2 {p2:?}"))?;
    Ok("P2 holds (b = 3), C3 vacuous, P4 fails, P6 holds at b = 1, P7 fails with S0^2 = {0, 2}".into())
}

fn main() {
    let criteria: [(&str, Criterion); 8] = [
        ("1 Δ test agrees with the congruence lattice (order ≤ 4)", delta_equivalence),
        ("2 enumeration counts match the naive oracle (order ≤ 3)", enumeration_counts),
        ("3 no T2R semigroup up to order 7; pruning is sound (order ≤ 5)", t2r_absent),
        ("4 classification complete on the order ≤ 5 corpus", classification),
        ("5 bounded weakly exponential test matches 50-step search (order ≤ 4)", weakly_exponential_bound),
        ("6 Rees quotients of 1000 sampled ideals (order ≤ 5)", rees_samples),
        ("7 implication ladder (order ≤ 4)", implication_ladder),
        ("8 proposition battery on the order-5 near miss", proposition_battery),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let start = Instant::now();
        let outcome = run();
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(detail) => println!("[PASS] {name}: {detail} ({ms} ms)"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] {name}: {detail} ({ms} ms)");
            }
        }
    }
    if failed > 0 {
        println!("{failed} of 8 criteria failed");
        std::process::exit(1);
    }
    println!("all 8 criteria passed");
}
