//! Brute-force oracles shared by the integration tests. None of them call
//! into the algorithms they check.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use deltasg::enumerate::enumerate_semigroups;
use deltasg::CayleyTable;
use itertools::Itertools;

pub fn corpus(max_order: usize) -> Vec<CayleyTable> {
    (1..=max_order)
        .flat_map(|n| enumerate_semigroups(n, true).unwrap())
        .collect()
}

pub fn flat(t: &CayleyTable) -> Vec<usize> {
    t.cells().iter().map(|&c| c as usize).collect()
}

pub fn associative(n: usize, c: &[usize]) -> bool {
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|d| c[c[a * n + b] * n + d] == c[a * n + c[b * n + d]])))
}

/// Minimum over all `n!` relabelings, computed without pruning.
pub fn naive_canonical(n: usize, c: &[usize]) -> Vec<usize> {
    (0..n)
        .permutations(n)
        .map(|p| {
            let mut out = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    out[p[x] * n + p[y]] = p[c[x * n + y]];
                }
            }
            out
        })
        .min()
        .unwrap()
}

/// Every associative table on `0..n` (all `n^(n²)` tables scanned).
pub fn naive_semigroups(n: usize) -> Vec<Vec<usize>> {
    let cells = n * n;
    let total = n.pow(cells as u32);
    let mut out = Vec::new();
    let mut c = vec![0usize; cells];
    for mut code in 0..total {
        for cell in c.iter_mut().rev() {
            *cell = code % n;
            code /= n;
        }
        if associative(n, &c) {
            out.push(c.clone());
        }
    }
    out
}

pub fn naive_iso_count(n: usize) -> usize {
    naive_semigroups(n)
        .iter()
        .map(|c| naive_canonical(n, c))
        .collect::<HashSet<_>>()
        .len()
}

/// All set partitions of `0..n` as restricted growth strings.
pub fn set_partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for label in 0..=max {
            cur.push(label);
            go(i + 1, n, if label == max { max + 1 } else { max }, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, 0, &mut Vec::new(), &mut out);
    out
}

pub fn is_congruence_labels(t: &CayleyTable, l: &[usize]) -> bool {
    let n = t.order();
    for x in 0..n {
        for y in 0..n {
            if l[x] != l[y] {
                continue;
            }
            for s in 0..n {
                if l[t.mul(s, x)] != l[t.mul(s, y)] || l[t.mul(x, s)] != l[t.mul(y, s)] {
                    return false;
                }
            }
        }
    }
    true
}

/// Partition `p` refines `q` (as label vectors).
pub fn refines(p: &[usize], q: &[usize]) -> bool {
    (0..p.len()).all(|x| (0..p.len()).all(|y| p[x] != p[y] || q[x] == q[y]))
}

/// Every congruence, found by testing every set partition.
pub fn brute_congruences(t: &CayleyTable) -> Vec<Vec<usize>> {
    set_partitions(t.order())
        .into_iter()
        .filter(|l| is_congruence_labels(t, l))
        .collect()
}

pub fn brute_is_delta(t: &CayleyTable) -> bool {
    let all = brute_congruences(t);
    all.iter()
        .tuple_combinations()
        .all(|(p, q)| refines(p, q) || refines(q, p))
}

/// `S¹aS¹` by direct products.
pub fn brute_principal_ideal(t: &CayleyTable, a: usize) -> BTreeSet<usize> {
    let n = t.order();
    let mut out = BTreeSet::from([a]);
    for x in 0..n {
        out.insert(t.mul(x, a));
        out.insert(t.mul(a, x));
        for y in 0..n {
            out.insert(t.mul(t.mul(x, a), y));
        }
    }
    out
}

/// Whether the nonempty two-sided ideals form a chain, by scanning all subsets.
pub fn brute_ideals_chain(t: &CayleyTable) -> bool {
    let n = t.order();
    let ideals: Vec<u32> = (1u32..1 << n)
        .filter(|&m| {
            (0..n).filter(|&a| m >> a & 1 == 1).all(|a| {
                (0..n).all(|s| m >> t.mul(a, s) & 1 == 1 && m >> t.mul(s, a) & 1 == 1)
            })
        })
        .collect();
    ideals
        .iter()
        .tuple_combinations()
        .all(|(&p, &q)| p & q == p || p & q == q)
}

/// Product of a word of elements; `None` for the empty word.
pub fn word(t: &CayleyTable, w: &[usize]) -> Option<usize> {
    w.iter().copied().reduce(|x, y| t.mul(x, y))
}

pub fn naive_power(t: &CayleyTable, a: usize, k: usize) -> Option<usize> {
    word(t, &vec![a; k])
}

/// Weakly exponential, with `n` and `m` both searched up to `steps`.
pub fn we_oracle(t: &CayleyTable, steps: usize) -> bool {
    let n = t.order();
    let join = |x: Option<usize>, y: Option<usize>| match (x, y) {
        (Some(x), Some(y)) => Some(t.mul(x, y)),
        (x, None) => x,
        (None, y) => y,
    };
    (0..n).all(|a| {
        (0..n).all(|b| {
            let ab = t.mul(a, b);
            (1..=steps).all(|k| {
                let anbn = join(naive_power(t, a, k), naive_power(t, b, k));
                (0..=steps).any(|m| {
                    let abm = naive_power(t, ab, m);
                    let lhs = naive_power(t, ab, k + m);
                    lhs == join(anbn, abm) && lhs == join(abm, anbn)
                })
            })
        })
    })
}

/// Whether `w1 = w2` holds for every assignment of the variables.
pub fn brute_identity(t: &CayleyTable, vars: usize, w1: &[usize], w2: &[usize]) -> bool {
    let n = t.order();
    (0..vars).map(|_| 0..n).multi_cartesian_product().all(|asg| {
        let l: Vec<usize> = w1.iter().map(|&v| asg[v]).collect();
        let r: Vec<usize> = w2.iter().map(|&v| asg[v]).collect();
        word(t, &l) == word(t, &r)
    })
}

/// Any non-identity permutational identity `x_1…x_k = x_σ(1)…x_σ(k)` with `k ≤ max_degree`.
pub fn brute_permutative(t: &CayleyTable, max_degree: usize) -> bool {
    (2..=max_degree).any(|k| {
        let id: Vec<usize> = (0..k).collect();
        (0..k)
            .permutations(k)
            .filter(|p| *p != id)
            .any(|p| brute_identity(t, k, &id, &p))
    })
}
