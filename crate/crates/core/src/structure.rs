//! Semilattice decompositions `S = S₀ ∪ S₁` over the two-element chain,
//! the T2R characterization conditions, the necessary conditions every T2R
//! semigroup must satisfy, and the classification of weakly exponential
//! Δ-semigroups.
//!
//! T2L questions are answered on the transposed table: a T2L semigroup is
//! exactly the dual of a T2R semigroup.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::congruence::{is_delta, DeltaWitness};
use crate::error::{Error, Result};
use crate::green::JStructure;
use crate::properties::{cyclic_p_group_on, is_weakly_exponential, CyclicPGroup, WeWitness};
use crate::table::{CayleyTable, ElemSet, MonoidView};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum T2Kind {
    T1,
    T2R,
    T2L,
}

impl fmt::Display for T2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            T2Kind::T1 => "T1",
            T2Kind::T2R => "T2R",
            T2Kind::T2L => "T2L",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct DecompositionFlags {
    pub s0_nil: bool,
    pub s0_nontrivial: bool,
    pub s1_law_ok: bool,
    pub products_into_s0: bool,
    pub is_delta: bool,
}

impl DecompositionFlags {
    pub fn all(&self) -> bool {
        self.s0_nil && self.s0_nontrivial && self.s1_law_ok && self.products_into_s0 && self.is_delta
    }
}

/// A candidate `S = S₀ ∪ S₁`. For two-element `S₁` the pair is `(u, v)` with `u < v`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct T2Decomposition {
    pub s0: ElemSet,
    pub s1: Vec<usize>,
    pub kind: T2Kind,
    pub flags: DecompositionFlags,
}

impl T2Decomposition {
    /// An unevaluated decomposition; flags are all false until [`evaluate_flags`] runs.
    pub fn new(s0: ElemSet, s1: Vec<usize>, kind: T2Kind) -> Self {
        T2Decomposition {
            s0,
            s1,
            kind,
            flags: DecompositionFlags::default(),
        }
    }

    fn check_partition(&self, order: usize) -> Result<()> {
        let mut seen = vec![false; order];
        for &x in self.s0.iter().chain(&self.s1) {
            if x >= order || std::mem::replace(&mut seen[x], true) {
                return Err(Error::PartitionMismatch { order });
            }
        }
        if seen.iter().all(|&s| s) {
            Ok(())
        } else {
            Err(Error::PartitionMismatch { order })
        }
    }
}

/// Whether `set` is a nil subsemigroup: closed, with a zero that some power
/// of each member reaches. The empty set is not.
pub fn is_nil_subsemigroup(table: &CayleyTable, set: &ElemSet) -> bool {
    nil_zero_of(table, set).is_some()
}

fn nil_zero_of(table: &CayleyTable, set: &ElemSet) -> Option<usize> {
    if set.is_empty() || !table.is_subsemigroup(set) {
        return None;
    }
    let z = *set
        .iter()
        .find(|&&z| set.iter().all(|&s| table.mul(z, s) == z && table.mul(s, z) == z))?;
    set.iter()
        .all(|&a| {
            let p = table.power_profile(a);
            table.power(a, p.index) == z
        })
        .then_some(z)
}

fn s1_law(table: &CayleyTable, s1: &[usize], kind: T2Kind) -> bool {
    match (kind, s1) {
        (T2Kind::T1, &[e]) => table.is_idempotent(e),
        (T2Kind::T2R, &[u, v]) => {
            u != v
                && table.mul(u, u) == u
                && table.mul(v, v) == v
                && table.mul(u, v) == v
                && table.mul(v, u) == u
        }
        (T2Kind::T2L, &[u, v]) => {
            u != v
                && table.mul(u, u) == u
                && table.mul(v, v) == v
                && table.mul(u, v) == u
                && table.mul(v, u) == v
        }
        _ => false,
    }
}

/// Fills in every flag of `d`; `delta` is the Δ verdict of the whole table.
pub fn evaluate_flags(table: &CayleyTable, d: &mut T2Decomposition, delta: bool) {
    d.flags = DecompositionFlags {
        s0_nil: is_nil_subsemigroup(table, &d.s0),
        s0_nontrivial: d.s0.len() >= 2,
        s1_law_ok: s1_law(table, &d.s1, d.kind),
        products_into_s0: table.is_ideal(&d.s0),
        is_delta: delta,
    };
}

fn structural_candidates(table: &CayleyTable) -> Vec<T2Decomposition> {
    let n = table.order();
    let complement = |s1: &[usize]| -> ElemSet { table.elements().filter(|x| !s1.contains(x)).collect() };
    let mut out = Vec::new();
    for e in table.idempotents() {
        out.push(T2Decomposition::new(complement(&[e]), vec![e], T2Kind::T1));
    }
    for kind in [T2Kind::T2R, T2Kind::T2L] {
        for u in 0..n {
            for v in u + 1..n {
                if s1_law(table, &[u, v], kind) {
                    out.push(T2Decomposition::new(complement(&[u, v]), vec![u, v], kind));
                }
            }
        }
    }
    out
}

/// Every split with `S₁` a single idempotent (T1), a right-zero pair (T2R)
/// or a left-zero pair (T2L), and `S₀` its complement, with all flags evaluated.
pub fn find_t2_decompositions(table: &CayleyTable) -> Vec<T2Decomposition> {
    let mut out = structural_candidates(table);
    if out.is_empty() {
        return out;
    }
    let delta = is_delta(table).is_delta;
    for d in &mut out {
        evaluate_flags(table, d, delta);
    }
    out
}

/// A decomposition of the given kind with every flag true, including Δ.
pub fn recognize_t2(table: &CayleyTable, kind: T2Kind) -> Option<T2Decomposition> {
    let mut delta: Option<bool> = None;
    for mut d in structural_candidates(table).into_iter().filter(|d| d.kind == kind) {
        // Δ is by far the most expensive flag; skip it when the structure already fails.
        evaluate_flags(table, &mut d, false);
        let f = d.flags;
        if !(f.s0_nil && f.s0_nontrivial && f.s1_law_ok && f.products_into_s0) {
            continue;
        }
        let is_d = *delta.get_or_insert_with(|| is_delta(table).is_delta);
        d.flags.is_delta = is_d;
        if is_d {
            return Some(d);
        }
    }
    None
}

/// Which guard the fifth condition uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Cond5Guard {
    /// `|J_b| = 2` and `I(b) ≠ {0}`.
    #[default]
    Corrected,
    /// `|J_b| = 2` only.
    Uncorrected,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionResult {
    pub condition: u8,
    pub holds: bool,
    pub vacuous: bool,
    /// Violating elements; empty when the condition holds.
    pub witness: Vec<usize>,
    pub detail: String,
}

/// The five characterization conditions evaluated for one decomposition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub kind: T2Kind,
    pub s0: ElemSet,
    pub s1: Vec<usize>,
    pub guard: Cond5Guard,
    /// True when the conditions were evaluated on the transposed table (T2L).
    pub dual: bool,
    /// Index of the synthetic identity in `x, y ∈ S¹` witnesses, if one was added.
    pub synthetic_identity: Option<usize>,
    pub conditions: Vec<ConditionResult>,
}

impl ConditionReport {
    pub fn all_hold(&self) -> bool {
        self.conditions.iter().all(|c| c.holds)
    }

    pub fn vacuous(&self) -> Vec<u8> {
        self.conditions.iter().filter(|c| c.vacuous).map(|c| c.condition).collect()
    }
}

fn result(condition: u8, holds: bool, vacuous: bool, witness: Vec<usize>, detail: impl Into<String>) -> ConditionResult {
    ConditionResult {
        condition,
        holds,
        vacuous,
        witness,
        detail: detail.into(),
    }
}

/// Products `X·b·Y` with `X, Y ⊆ S¹`.
fn sandwich(s1: &MonoidView, xs: &[usize], mid: &ElemSet, ys: &[usize]) -> ElemSet {
    let mut out = ElemSet::new();
    for &x in xs {
        for &m in mid {
            let xm = s1.mul(x, m);
            for &y in ys {
                out.insert(s1.mul(xm, y));
            }
        }
    }
    out
}

fn fmt_set(set: &ElemSet) -> String {
    let items: Vec<String> = set.iter().map(ToString::to_string).collect();
    format!("{{{}}}", items.join(", "))
}

/// Evaluates the five conditions characterizing T2R semigroups for `d`.
/// T2L decompositions are evaluated on the transposed table.
pub fn theorem1_conditions(table: &CayleyTable, d: &T2Decomposition, guard: Cond5Guard) -> Result<ConditionReport> {
    d.check_partition(table.order())?;
    let dual = d.kind == T2Kind::T2L;
    let t = if dual { table.transpose() } else { table.clone() };
    let s0 = &d.s0;
    let s1: ElemSet = d.s1.iter().copied().collect();
    let one = t.adjoin_identity();
    let with_one: Vec<usize> = one.elements().collect();
    let s0_list: Vec<usize> = s0.iter().copied().collect();
    let js = JStructure::new(&t);
    let zero = t.find_zero();

    let mut conditions = Vec::with_capacity(5);

    // (1) S is a semilattice of a non-trivial nil S₀ and a right-zero pair S₁, S₀S₁ ⊆ S₀.
    let c1 = if !s1_law(&t, &d.s1, T2Kind::T2R) {
        result(1, false, false, d.s1.clone(), "S1 is not a two-element right zero semigroup")
    } else if s0.len() < 2 {
        result(1, false, false, s0_list.clone(), format!("S0 is trivial (|S0| = {})", s0.len()))
    } else if !is_nil_subsemigroup(&t, s0) {
        let bad: Vec<usize> = match nil_zero_of_closed(&t, s0) {
            Some(bad) => bad,
            None => s0_list.clone(),
        };
        result(1, false, false, bad, "S0 is not a nil semigroup")
    } else if let Some((x, y)) = first_escape(&t, s0) {
        result(1, false, false, vec![x, y], format!("{x}·{y} leaves S0, so S0 is not an ideal"))
    } else {
        result(1, true, false, vec![], "semilattice of nil S0 and right zero S1")
    };
    conditions.push(c1);

    // (2) ideals form a chain.
    let chain = js.ideals_form_chain();
    conditions.push(match chain.witness {
        None => result(2, true, false, vec![], "principal ideals are totally ordered"),
        Some(((a, ja), (b, jb))) => result(
            2,
            false,
            false,
            vec![a, b],
            format!("J({a}) = {} and J({b}) = {} are incomparable", fmt_set(&ja), fmt_set(&jb)),
        ),
    });

    // (3) for b ∈ S₀: b ∈ bS₁ or bS₁ ⊆ S¹bS₀.
    let c3 = s0.iter().find_map(|&b| {
        let b_s1: ElemSet = s1.iter().map(|&e| t.mul(b, e)).collect();
        if b_s1.contains(&b) {
            return None;
        }
        let one_b_s0 = sandwich(&one, &with_one, &ElemSet::from([b]), &s0_list);
        (!b_s1.is_subset(&one_b_s0)).then(|| {
            result(
                3,
                false,
                false,
                vec![b],
                format!("b = {b}: bS1 = {} is not inside S1·b·S0 = {}", fmt_set(&b_s1), fmt_set(&one_b_s0)),
            )
        })
    });
    conditions.push(c3.unwrap_or_else(|| result(3, true, s0.is_empty(), vec![], "every b in S0 passes")));

    // (4) for b ∈ S₀: {b} = S₁b or S₁b ∩ (S₀bS¹ ∪ S¹bS₀) ≠ ∅.
    let c4 = s0.iter().find_map(|&b| {
        let s1_b: ElemSet = s1.iter().map(|&e| t.mul(e, b)).collect();
        if s1_b == ElemSet::from([b]) {
            return None;
        }
        let bset = ElemSet::from([b]);
        let mut around = sandwich(&one, &s0_list, &bset, &with_one);
        around.extend(sandwich(&one, &with_one, &bset, &s0_list));
        s1_b.is_disjoint(&around).then(|| {
            result(
                4,
                false,
                false,
                vec![b],
                format!("b = {b}: S1b = {} misses S0bS¹ ∪ S¹bS0 = {}", fmt_set(&s1_b), fmt_set(&around)),
            )
        })
    });
    conditions.push(c4.unwrap_or_else(|| result(4, true, s0.is_empty(), vec![], "every b in S0 passes")));

    // (5) for b with |J_b| = 2 [and I(b) ≠ {0}], every a ∈ I(b) admits x, y ∈ S¹
    // with xJ_by meeting J_a but not inside it.
    let mut examined = 0usize;
    let mut c5 = None;
    'outer: for b in t.elements() {
        if js.j_class_len(b) != 2 {
            continue;
        }
        let ib = js.i_set(b);
        if guard == Cond5Guard::Corrected {
            if let Some(z) = zero {
                if ib == ElemSet::from([z]) {
                    continue;
                }
            }
        }
        let jb = js.j_class(b);
        for &a in &ib {
            examined += 1;
            let ja = js.j_class(a);
            let ok = with_one.iter().any(|&x| {
                with_one.iter().any(|&y| {
                    let img = sandwich(&one, &[x], &jb, &[y]);
                    !img.is_disjoint(&ja) && !img.is_subset(&ja)
                })
            });
            if !ok {
                c5 = Some(result(
                    5,
                    false,
                    false,
                    vec![b, a],
                    format!(
                        "b = {b}, a = {a}: no x, y in S¹ with xJ_by meeting J_a = {} without lying inside it",
                        fmt_set(&ja)
                    ),
                ));
                break 'outer;
            }
        }
    }
    conditions.push(c5.unwrap_or_else(|| {
        result(5, true, examined == 0, vec![], format!("{examined} (b, a) pairs examined"))
    }));

    Ok(ConditionReport {
        kind: d.kind,
        s0: d.s0.clone(),
        s1: d.s1.clone(),
        guard,
        dual,
        synthetic_identity: one.identity,
        conditions,
    })
}

/// For a closed set with a zero, the members whose powers never reach it.
fn nil_zero_of_closed(table: &CayleyTable, set: &ElemSet) -> Option<Vec<usize>> {
    if !table.is_subsemigroup(set) {
        return None;
    }
    let z = *set
        .iter()
        .find(|&&z| set.iter().all(|&s| table.mul(z, s) == z && table.mul(s, z) == z))?;
    Some(
        set.iter()
            .copied()
            .filter(|&a| table.power(a, table.power_profile(a).index) != z)
            .collect(),
    )
}

/// First product with one factor in `set` that leaves it.
fn first_escape(table: &CayleyTable, set: &ElemSet) -> Option<(usize, usize)> {
    for &i in set {
        for s in table.elements() {
            if !set.contains(&table.mul(s, i)) {
                return Some((s, i));
            }
            if !set.contains(&table.mul(i, s)) {
                return Some((i, s));
            }
        }
    }
    None
}

/// Verdict of one necessary condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionVerdict {
    pub name: String,
    pub holds: bool,
    pub vacuous: bool,
    pub witness: Vec<usize>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropositionReport {
    pub s0: ElemSet,
    pub s1: Vec<usize>,
    pub zero: Option<usize>,
    pub synthetic_identity: Option<usize>,
    pub verdicts: Vec<PropositionVerdict>,
}

impl PropositionReport {
    pub fn get(&self, name: &str) -> Option<&PropositionVerdict> {
        self.verdicts.iter().find(|v| v.name == name)
    }
}

fn verdict(name: &str, holds: bool, vacuous: bool, witness: Vec<usize>, detail: impl Into<String>) -> PropositionVerdict {
    PropositionVerdict {
        name: name.into(),
        holds,
        vacuous,
        witness,
        detail: detail.into(),
    }
}

/// Evaluates the conclusions every T2R semigroup must satisfy:
///
/// * `P2`: for `b` with `|J_b| = 2` and `I(b) = {0}`: each `xJ_by` either avoids 0
///   or equals `{0}`; `J_bS₀ = S₀J_b = {0}`; `S₁J_b` is `{0}` or `J_b`.
/// * `C3`: for `b ∈ S₀` with `|J_b| = 2`: `S₀J_b ⊆ I(b)`, `J_bS₀ ⊆ I(b)`, and
///   `S₁J_b ⊆ I(b)` or `S₁J_b = J_b`.
/// * `P4`: some `b ∈ S₀` has `|J_b| = 2`.
/// * `P6`: some `b ∈ S₀` has `ub ≠ b` and `vb ≠ b`.
/// * `P7`: `S₀² = S₀`.
///
/// On a genuine T2R semigroup all of them hold; on finite near misses they
/// show which consequence breaks first.
pub fn t2r_necessary_propositions(table: &CayleyTable, d: &T2Decomposition) -> Result<PropositionReport> {
    d.check_partition(table.order())?;
    if d.kind != T2Kind::T2R {
        return Err(Error::NotT2RShaped {
            reason: format!("decomposition kind is {}", d.kind),
        });
    }
    if !s1_law(table, &d.s1, T2Kind::T2R) {
        return Err(Error::NotT2RShaped {
            reason: "S1 is not a two-element right zero semigroup".into(),
        });
    }
    let t = table;
    let (u, v) = (d.s1[0], d.s1[1]);
    let s0 = &d.s0;
    let s1_list = d.s1.clone();
    let one = t.adjoin_identity();
    let with_one: Vec<usize> = one.elements().collect();
    let js = JStructure::new(t);
    let zero = t.find_zero();
    let mut verdicts = Vec::new();

    // P2
    {
        let mut examined = 0;
        let mut failure = None;
        if let Some(z) = zero {
            let zset = ElemSet::from([z]);
            'b: for b in t.elements() {
                if js.j_class_len(b) != 2 || js.i_set(b) != zset {
                    continue;
                }
                examined += 1;
                let jb = js.j_class(b);
                for &x in &with_one {
                    for &y in &with_one {
                        let img = sandwich(&one, &[x], &jb, &[y]);
                        if img.contains(&z) && img != zset {
                            failure = Some((vec![b, x, y], format!("b = {b}: x = {x}, y = {y} gives xJ_by = {}", fmt_set(&img))));
                            break 'b;
                        }
                    }
                }
                let right = t.set_times(&jb, s0);
                let left = t.set_times(s0, &jb);
                if right != zset {
                    failure = Some((vec![b], format!("b = {b}: J_bS0 = {}", fmt_set(&right))));
                    break;
                }
                if left != zset {
                    failure = Some((vec![b], format!("b = {b}: S0J_b = {}", fmt_set(&left))));
                    break;
                }
                let s1jb = t.set_times(&d.s1.iter().copied().collect(), &jb);
                if s1jb != zset && s1jb != jb {
                    failure = Some((vec![b], format!("b = {b}: S1J_b = {}", fmt_set(&s1jb))));
                    break;
                }
            }
        }
        verdicts.push(match failure {
            Some((w, detail)) => verdict("P2", false, false, w, detail),
            None => verdict("P2", true, examined == 0, vec![], format!("{examined} elements b with |J_b| = 2, I(b) = {{0}}")),
        });
    }

    // C3
    {
        let mut examined = 0;
        let mut failure = None;
        for &b in s0 {
            if js.j_class_len(b) != 2 {
                continue;
            }
            examined += 1;
            let jb = js.j_class(b);
            let ib = js.i_set(b);
            let left = t.set_times(s0, &jb);
            let right = t.set_times(&jb, s0);
            let s1jb = t.set_times(&s1_list.iter().copied().collect(), &jb);
            if !left.is_subset(&ib) {
                failure = Some((vec![b], format!("b = {b}: S0J_b = {} not inside I(b) = {}", fmt_set(&left), fmt_set(&ib))));
            } else if !right.is_subset(&ib) {
                failure = Some((vec![b], format!("b = {b}: J_bS0 = {} not inside I(b) = {}", fmt_set(&right), fmt_set(&ib))));
            } else if !s1jb.is_subset(&ib) && s1jb != jb {
                failure = Some((vec![b], format!("b = {b}: S1J_b = {}", fmt_set(&s1jb))));
            }
            if failure.is_some() {
                break;
            }
        }
        verdicts.push(match failure {
            Some((w, detail)) => verdict("C3", false, false, w, detail),
            None => verdict("C3", true, examined == 0, vec![], format!("{examined} elements b in S0 with |J_b| = 2")),
        });
    }

    // P4
    verdicts.push(match s0.iter().find(|&&b| js.j_class_len(b) == 2) {
        Some(&b) => verdict("P4", true, false, vec![b], format!("|J_{b}| = 2")),
        None => verdict("P4", false, false, vec![], "every b in S0 has |J_b| ≠ 2"),
    });

    // P6
    verdicts.push(
        match s0.iter().find(|&&b| t.mul(u, b) != b && t.mul(v, b) != b) {
            Some(&b) => verdict("P6", true, false, vec![b], format!("u·{b} = {}, v·{b} = {}", t.mul(u, b), t.mul(v, b))),
            None => verdict("P6", false, false, vec![], "every b in S0 has ub = b or vb = b"),
        },
    );

    // P7
    {
        let square = t.set_times(s0, s0);
        let missing: Vec<usize> = s0.difference(&square).copied().collect();
        verdicts.push(if missing.is_empty() {
            verdict("P7", true, false, vec![], format!("S0^2 = S0 = {}", fmt_set(s0)))
        } else {
            verdict(
                "P7",
                false,
                false,
                missing,
                format!("S0^2 = {} is a proper subset of S0 = {}", fmt_set(&square), fmt_set(s0)),
            )
        });
    }

    Ok(PropositionReport {
        s0: d.s0.clone(),
        s1: d.s1.clone(),
        zero,
        synthetic_identity: one.identity,
        verdicts,
    })
}

/// Rees quotient `S/I(b)` together with the image of `b`.
pub fn reduce_by_i_set(table: &CayleyTable, b: usize) -> Result<(CayleyTable, Vec<usize>)> {
    table.check_element(b)?;
    let ib = JStructure::new(table).i_set(b);
    table.rees_quotient(&ib)
}

/// Templates of the classification of weakly exponential Δ-semigroups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Template {
    G,
    G0,
    B,
    B0,
    B1,
    #[serde(rename = "NIL_CHAIN")]
    NilChain,
    T1,
    T2R,
    T2L,
    #[serde(rename = "NOT_WE_DELTA")]
    NotWeDelta,
}

impl fmt::Display for Template {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("template serializes");
        f.write_str(s.as_str().expect("unit variant"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BandSide {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TemplateWitness {
    CyclicPGroup {
        group: CyclicPGroup,
        zero: Option<usize>,
    },
    Band {
        side: BandSide,
        pair: (usize, usize),
        zero: Option<usize>,
        identity: Option<usize>,
    },
    NilChain {
        zero: usize,
    },
    Decomposition(T2Decomposition),
    NotWeDelta {
        we_failure: Option<WeWitness>,
        delta_failure: Option<DeltaWitness>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationResult {
    pub template: Template,
    pub witness: TemplateWitness,
}

/// Two-element rectangular band on `pair`, if it is one.
fn band_on(table: &CayleyTable, x: usize, y: usize) -> Option<BandSide> {
    if s1_law(table, &[x, y], T2Kind::T2R) {
        Some(BandSide::Right)
    } else if s1_law(table, &[x, y], T2Kind::T2L) {
        Some(BandSide::Left)
    } else {
        None
    }
}

fn others(table: &CayleyTable, skip: usize) -> Vec<usize> {
    table.elements().filter(|&x| x != skip).collect()
}

/// Every template whose structural description matches, ignoring the
/// weakly exponential and Δ requirements.
pub fn matching_templates(table: &CayleyTable) -> Vec<(Template, TemplateWitness)> {
    let n = table.order();
    let all: ElemSet = table.elements().collect();
    let mut out = Vec::new();

    if let Some(group) = cyclic_p_group_on(table, &all) {
        out.push((Template::G, TemplateWitness::CyclicPGroup { group, zero: None }));
    }
    let zero = table.find_zero();
    if let (Some(z), true) = (zero, n >= 2) {
        let rest: ElemSet = others(table, z).into_iter().collect();
        if let Some(group) = cyclic_p_group_on(table, &rest) {
            out.push((Template::G0, TemplateWitness::CyclicPGroup { group, zero: Some(z) }));
        }
    }
    if n == 2 {
        if let Some(side) = band_on(table, 0, 1) {
            out.push((Template::B, TemplateWitness::Band { side, pair: (0, 1), zero: None, identity: None }));
        }
    }
    if n == 3 {
        if let Some(z) = zero {
            let r = others(table, z);
            if let Some(side) = band_on(table, r[0], r[1]) {
                out.push((Template::B0, TemplateWitness::Band { side, pair: (r[0], r[1]), zero: Some(z), identity: None }));
            }
        }
        if let Some(e) = table.find_identity() {
            let r = others(table, e);
            if let Some(side) = band_on(table, r[0], r[1]) {
                out.push((Template::B1, TemplateWitness::Band { side, pair: (r[0], r[1]), zero: None, identity: Some(e) }));
            }
        }
    }
    if let (Some(z), true) = (zero, n >= 2) {
        if crate::properties::is_nil(table) && crate::green::ideals_form_chain(table).chain {
            out.push((Template::NilChain, TemplateWitness::NilChain { zero: z }));
        }
    }
    for (kind, template) in [(T2Kind::T1, Template::T1), (T2Kind::T2R, Template::T2R), (T2Kind::T2L, Template::T2L)] {
        if let Some(d) = recognize_t2(table, kind) {
            out.push((template, TemplateWitness::Decomposition(d)));
        }
    }
    out
}

/// Classifies a weakly exponential Δ-semigroup, or reports `NOT_WE_DELTA`.
///
/// A weakly exponential Δ-semigroup matching no template is reported as
/// [`Error::ClassificationGap`]; one matching several as
/// [`Error::AmbiguousClassification`]. Either would contradict the
/// classification.
pub fn classify_we_delta(table: &CayleyTable) -> Result<ClassificationResult> {
    let we = is_weakly_exponential(table).err();
    let delta = is_delta(table);
    if we.is_some() || !delta.is_delta {
        return Ok(ClassificationResult {
            template: Template::NotWeDelta,
            witness: TemplateWitness::NotWeDelta {
                we_failure: we,
                delta_failure: delta.witness,
            },
        });
    }
    let mut matches = matching_templates(table);
    match matches.len() {
        1 => {
            let (template, witness) = matches.pop().expect("one match");
            Ok(ClassificationResult { template, witness })
        }
        0 => Err(Error::ClassificationGap {
            table: format!("{:?}", table.rows()),
            diagnostics: serde_json::json!({
                "special": crate::properties::recognize_special(table),
                "nil": crate::properties::is_nil(table),
                "ideal_chain": crate::green::ideals_form_chain(table).chain,
                "decompositions": find_t2_decompositions(table),
            })
            .to_string(),
        }),
        _ => Err(Error::AmbiguousClassification {
            table: format!("{:?}", table.rows()),
            templates: matches.iter().map(|(t, _)| t.to_string()).collect(),
        }),
    }
}
