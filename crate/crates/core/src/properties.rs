//! Identity-based predicates and recognizers for the special small classes
//! (bands, groups, groups with zero).

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::{CayleyTable, ElemSet, PowerProfile};

/// Default degree bound for [`is_permutative`].
pub const DEFAULT_PERMUTATIVE_DEGREE: usize = 4;

/// Nil: a zero exists and some power of every element equals it.
pub fn is_nil(table: &CayleyTable) -> bool {
    match table.find_zero() {
        Some(z) => table.elements().all(|a| {
            let p = table.power_profile(a);
            table.power(a, p.index) == z
        }),
        None => false,
    }
}

/// Failure witness for the weakly exponential law: no `m` works for this `(a, b, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeWitness {
    pub a: usize,
    pub b: usize,
    pub n: usize,
}

/// Powers of every element, stored up to one full cycle.
struct PowerTable {
    profiles: Vec<PowerProfile>,
    /// `powers[x][k - 1] = x^k` for `1 ≤ k < index + period`.
    powers: Vec<Vec<usize>>,
}

impl PowerTable {
    fn new(table: &CayleyTable) -> Self {
        let profiles: Vec<PowerProfile> = table.elements().map(|a| table.power_profile(a)).collect();
        let powers = profiles
            .iter()
            .map(|p| {
                let mut v = Vec::with_capacity(p.index + p.period - 1);
                let mut x = p.element;
                for _ in 1..p.index + p.period {
                    v.push(x);
                    x = table.mul(x, p.element);
                }
                v
            })
            .collect();
        PowerTable { profiles, powers }
    }

    fn pow(&self, x: usize, k: usize) -> usize {
        self.powers[x][self.profiles[x].reduce(k) - 1]
    }
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

/// For all `a, b` and `n ≥ 1` there is `m ≥ 0` with
/// `(ab)^{n+m} = aⁿbⁿ(ab)^m = (ab)^m aⁿbⁿ`, where `(ab)^0` is the empty factor.
///
/// The triple `(aⁿ, bⁿ, (ab)ⁿ)` is periodic in `n` from the largest index on,
/// with period dividing the lcm of the three periods; both sides are periodic
/// in `m` from `index(ab)` on with period `period(ab)`. The searched ranges
/// cover one full period past the indices, so the check is exact.
pub fn is_weakly_exponential(table: &CayleyTable) -> std::result::Result<(), WeWitness> {
    let pt = PowerTable::new(table);
    for a in table.elements() {
        for b in table.elements() {
            let c = table.mul(a, b);
            let (pa, pb, pc) = (pt.profiles[a], pt.profiles[b], pt.profiles[c]);
            let n_max = pa.index.max(pb.index).max(pc.index) + lcm(lcm(pa.period, pb.period), pc.period);
            let m_max = pc.index + pc.period;
            for n in 1..=n_max {
                let anbn = table.mul(pt.pow(a, n), pt.pow(b, n));
                let found = (0..=m_max).any(|m| {
                    let lhs = pt.pow(c, n + m);
                    if m == 0 {
                        lhs == anbn
                    } else {
                        let cm = pt.pow(c, m);
                        lhs == table.mul(anbn, cm) && lhs == table.mul(cm, anbn)
                    }
                });
                if !found {
                    return Err(WeWitness { a, b, n });
                }
            }
        }
    }
    Ok(())
}

/// For all `s, t` there is `r ∈ S¹` with `st = tsr`. Fails with the first `(s, t)`.
pub fn is_r_commutative(table: &CayleyTable) -> std::result::Result<(), (usize, usize)> {
    for s in table.elements() {
        for t in table.elements() {
            let st = table.mul(s, t);
            let ts = table.mul(t, s);
            if ts != st && !table.elements().any(|r| table.mul(ts, r) == st) {
                return Err((s, t));
            }
        }
    }
    Ok(())
}

/// An identity `u = v` between two nonempty words over `k` variables.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentitySpec {
    pub variables: Vec<char>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl IdentitySpec {
    pub fn new(variables: Vec<char>, left: Vec<usize>, right: Vec<usize>) -> Result<Self> {
        if left.is_empty() || right.is_empty() {
            return Err(Error::InvalidIdentity("both sides must be nonempty".into()));
        }
        if let Some(&v) = left.iter().chain(&right).find(|&&v| v >= variables.len()) {
            return Err(Error::InvalidIdentity(format!("variable {v} is undeclared")));
        }
        Ok(IdentitySpec {
            variables,
            left,
            right,
        })
    }

    /// `axyb = ayxb`
    pub fn medial() -> Self {
        "axyb=ayxb".parse().expect("preset parses")
    }

    /// `xya = yxa`
    pub fn left_commutative() -> Self {
        "xya=yxa".parse().expect("preset parses")
    }

    /// `axy = ayx`
    pub fn right_commutative() -> Self {
        "axy=ayx".parse().expect("preset parses")
    }

    pub fn commutative() -> Self {
        "xy=yx".parse().expect("preset parses")
    }

    /// Looks up a named preset, falling back to parsing the argument as an identity.
    pub fn preset_or_parse(s: &str) -> Result<Self> {
        match s {
            "medial" => Ok(Self::medial()),
            "left-commutative" | "leftcomm" => Ok(Self::left_commutative()),
            "right-commutative" | "rightcomm" => Ok(Self::right_commutative()),
            "commutative" => Ok(Self::commutative()),
            other => other.parse(),
        }
    }

    pub fn variable_count(&self) -> usize {
        self.variables.len()
    }

    /// Both sides use each variable equally often.
    pub fn is_permutational(&self) -> bool {
        self.left.iter().sorted().eq(self.right.iter().sorted())
    }
}

impl FromStr for IdentitySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (l, r) = s
            .split_once('=')
            .ok_or_else(|| Error::InvalidIdentity(format!("`{s}` has no `=`")))?;
        let mut variables: Vec<char> = Vec::new();
        let mut word = |side: &str| -> Result<Vec<usize>> {
            side.trim()
                .chars()
                .map(|c| {
                    if !c.is_ascii_alphabetic() {
                        return Err(Error::InvalidIdentity(format!("`{c}` is not a variable")));
                    }
                    Ok(match variables.iter().position(|&v| v == c) {
                        Some(i) => i,
                        None => {
                            variables.push(c);
                            variables.len() - 1
                        }
                    })
                })
                .collect()
        };
        let left = word(l)?;
        let right = word(r)?;
        IdentitySpec::new(variables, left, right)
    }
}

impl fmt::Display for IdentitySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let w = |word: &[usize]| word.iter().map(|&v| self.variables[v]).collect::<String>();
        write!(f, "{}={}", w(&self.left), w(&self.right))
    }
}

fn eval_word(table: &CayleyTable, word: &[usize], assignment: &[usize]) -> usize {
    word[1..]
        .iter()
        .fold(assignment[word[0]], |acc, &v| table.mul(acc, assignment[v]))
}

/// Checks `spec` under every assignment, in lexicographic order.
/// Fails with the first assignment (indexed by variable) that separates the sides.
pub fn satisfies_identity(table: &CayleyTable, spec: &IdentitySpec) -> std::result::Result<(), Vec<usize>> {
    let k = spec.variable_count();
    let n = table.order();
    let mut assignment = vec![0usize; k];
    loop {
        if eval_word(table, &spec.left, &assignment) != eval_word(table, &spec.right, &assignment) {
            return Err(assignment);
        }
        // Odometer, last variable fastest.
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            assignment[i] += 1;
            if assignment[i] < n {
                break;
            }
            assignment[i] = 0;
        }
    }
}

/// Result of the bounded permutativity search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutativeVerdict {
    pub max_degree: usize,
    /// First `(k, σ)` such that `x₁⋯x_k = x_{σ(1)}⋯x_{σ(k)}` holds.
    pub identity: Option<(usize, Vec<usize>)>,
}

impl PermutativeVerdict {
    pub fn holds(&self) -> bool {
        self.identity.is_some()
    }
}

/// Searches non-identity permutational identities of degree `2..=max_degree`,
/// degrees ascending and permutations in lexicographic order.
pub fn is_permutative(table: &CayleyTable, max_degree: usize) -> PermutativeVerdict {
    const NAMES: &[u8] = b"abcdefghijklmnopqrstuvwxyz";
    for k in 2..=max_degree.min(NAMES.len()) {
        let variables: Vec<char> = NAMES[..k].iter().map(|&c| c as char).collect();
        for sigma in (0..k).permutations(k) {
            if sigma.iter().enumerate().all(|(i, &s)| i == s) {
                continue;
            }
            let spec = IdentitySpec {
                variables: variables.clone(),
                left: (0..k).collect(),
                right: sigma.clone(),
            };
            if satisfies_identity(table, &spec).is_ok() {
                return PermutativeVerdict {
                    max_degree,
                    identity: Some((k, sigma)),
                };
            }
        }
    }
    PermutativeVerdict {
        max_degree,
        identity: None,
    }
}

/// Flags for the small classes appearing in the classification of weakly
/// exponential Δ-semigroups.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SpecialFlags {
    pub left_zero: bool,
    pub right_zero: bool,
    pub rectangular_band: bool,
    pub group: bool,
    /// `(p, k)` with order `p^k`; `None` for the trivial group.
    pub cyclic_p_group: Option<CyclicPGroup>,
    pub group_with_zero: bool,
    pub commutative: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicPGroup {
    /// `None` for the trivial group, which is a `p`-group for every prime.
    pub p: Option<usize>,
    pub k: u32,
}

/// Whether `set` is a subgroup (nonempty, closed, with identity and inverses).
pub fn is_group_on(table: &CayleyTable, set: &ElemSet) -> bool {
    if set.is_empty() || !table.is_subsemigroup(set) {
        return false;
    }
    let Some(&e) = set
        .iter()
        .find(|&&e| set.iter().all(|&s| table.mul(e, s) == s && table.mul(s, e) == s))
    else {
        return false;
    };
    set.iter()
        .all(|&a| set.iter().any(|&b| table.mul(a, b) == e && table.mul(b, a) == e))
}

/// `n = p^k` for a prime `p`, with `k ≥ 1`.
fn prime_power(n: usize) -> Option<(usize, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n).find(|d| n.is_multiple_of(*d))?;
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

/// Cyclic p-group structure of the subgroup on `set`, if it is one.
pub fn cyclic_p_group_on(table: &CayleyTable, set: &ElemSet) -> Option<CyclicPGroup> {
    if !is_group_on(table, set) {
        return None;
    }
    let n = set.len();
    if n == 1 {
        return Some(CyclicPGroup { p: None, k: 0 });
    }
    let (p, k) = prime_power(n)?;
    let cyclic = set
        .iter()
        .any(|&g| table.power_profile(g).period == n);
    cyclic.then_some(CyclicPGroup { p: Some(p), k })
}

pub fn recognize_special(table: &CayleyTable) -> SpecialFlags {
    let all: ElemSet = table.elements().collect();
    let els = || table.elements();
    let left_zero = els().all(|x| els().all(|y| table.mul(x, y) == x));
    let right_zero = els().all(|x| els().all(|y| table.mul(x, y) == y));
    let rectangular_band = els().all(|x| table.is_idempotent(x))
        && els().all(|x| els().all(|y| els().all(|z| table.mul(table.mul(x, y), z) == table.mul(x, z))));
    let group = is_group_on(table, &all);
    let cyclic_p_group = cyclic_p_group_on(table, &all);
    let group_with_zero = match table.find_zero() {
        Some(z) if table.order() >= 2 => {
            let rest: ElemSet = els().filter(|&x| x != z).collect();
            is_group_on(table, &rest)
        }
        _ => false,
    };
    SpecialFlags {
        left_zero,
        right_zero,
        rectangular_band,
        group,
        cyclic_p_group,
        group_with_zero,
        commutative: table.is_commutative(),
    }
}
