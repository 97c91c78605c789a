//! Congruences: principal congruences, joins, the full lattice, and the
//! chain (Δ) test.

use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::table::CayleyTable;

/// Largest order accepted by [`all_congruences`] unless a larger cap is passed.
pub const DEFAULT_LATTICE_CAP: usize = 8;

/// An equivalence on `0..n` stored as class representatives, where the
/// representative of a class is its smallest member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    class_of: Vec<usize>,
}

/// Refinement comparison between two partitions of the same set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Refinement {
    Equal,
    Finer,
    Coarser,
    Incomparable,
}

impl Partition {
    pub fn identity(n: usize) -> Self {
        Partition {
            class_of: (0..n).collect(),
        }
    }

    pub fn universal(n: usize) -> Self {
        Partition {
            class_of: vec![0; n],
        }
    }

    /// Canonicalizes arbitrary class labels (`labels[x]` is any class id).
    pub fn from_labels<T: Eq + std::hash::Hash + Copy>(labels: &[T]) -> Self {
        let mut first: std::collections::HashMap<T, usize> = std::collections::HashMap::new();
        let class_of = labels
            .iter()
            .enumerate()
            .map(|(x, l)| *first.entry(*l).or_insert(x))
            .collect();
        Partition { class_of }
    }

    pub fn from_classes(n: usize, classes: &[Vec<usize>]) -> Result<Self> {
        let mut labels: Vec<Option<usize>> = vec![None; n];
        for (id, class) in classes.iter().enumerate() {
            for &x in class {
                if x >= n {
                    return Err(Error::ElementOutOfRange { element: x, order: n });
                }
                labels[x] = Some(id);
            }
        }
        let labels: Vec<usize> = labels
            .into_iter()
            .enumerate()
            .map(|(x, l)| l.unwrap_or(classes.len() + x))
            .collect();
        Ok(Self::from_labels(&labels))
    }

    pub fn order(&self) -> usize {
        self.class_of.len()
    }

    /// Representative (smallest member) of the class of `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }

    pub fn representatives(&self) -> &[usize] {
        &self.class_of
    }

    pub fn same(&self, x: usize, y: usize) -> bool {
        self.class_of[x] == self.class_of[y]
    }

    pub fn num_classes(&self) -> usize {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(x, &r)| x == r)
            .count()
    }

    pub fn is_identity(&self) -> bool {
        self.class_of.iter().enumerate().all(|(x, &r)| x == r)
    }

    pub fn is_universal(&self) -> bool {
        self.class_of.iter().all(|&r| r == 0)
    }

    /// Classes as sorted lists, ordered by representative.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        let mut slot = vec![usize::MAX; self.order()];
        for (x, &r) in self.class_of.iter().enumerate() {
            if slot[r] == usize::MAX {
                slot[r] = out.len();
                out.push(Vec::new());
            }
            out[slot[r]].push(x);
        }
        out
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Partition) -> bool {
        self.class_of
            .iter()
            .enumerate()
            .all(|(x, &r)| other.class_of[x] == other.class_of[r])
    }

    pub fn compare(&self, other: &Partition) -> Result<Refinement> {
        if self.order() != other.order() {
            return Err(Error::OrderMismatch {
                left: self.order(),
                right: other.order(),
            });
        }
        Ok(match (self.refines(other), other.refines(self)) {
            (true, true) => Refinement::Equal,
            (true, false) => Refinement::Finer,
            (false, true) => Refinement::Coarser,
            (false, false) => Refinement::Incomparable,
        })
    }

    /// First `(x, y, s)` with `x ~ y` but `sx ≁ sy` or `xs ≁ ys`.
    pub fn congruence_violation(&self, table: &CayleyTable) -> Option<(usize, usize, usize)> {
        let n = table.order();
        for x in 0..n {
            let y = self.class_of[x];
            if x == y {
                continue;
            }
            for s in 0..n {
                if !self.same(table.mul(s, x), table.mul(s, y))
                    || !self.same(table.mul(x, s), table.mul(y, s))
                {
                    return Some((y, x, s));
                }
            }
        }
        None
    }

    pub fn is_congruence(&self, table: &CayleyTable) -> bool {
        self.order() == table.order() && self.congruence_violation(table).is_none()
    }

    /// Pairs `(x, rep(x))` whose equivalence closure is this partition.
    fn generating_pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.class_of
            .iter()
            .enumerate()
            .filter(|&(x, &r)| x != r)
            .map(|(x, &r)| (r, x))
    }
}

impl Serialize for Partition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.classes().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let classes = Vec::<Vec<usize>>::deserialize(d)?;
        let n = classes.iter().map(Vec::len).sum();
        let mut seen = vec![false; n];
        for &x in classes.iter().flatten() {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(serde::de::Error::custom(
                    "classes must partition 0..n without repeats",
                ));
            }
        }
        Partition::from_classes(n, &classes).map_err(serde::de::Error::custom)
    }
}

/// Union-find whose unions are closed under left and right translation.
struct CongruenceClosure<'t> {
    table: &'t CayleyTable,
    parent: Vec<usize>,
    queue: VecDeque<(usize, usize)>,
}

impl<'t> CongruenceClosure<'t> {
    fn new(table: &'t CayleyTable) -> Self {
        CongruenceClosure {
            table,
            parent: (0..table.order()).collect(),
            queue: VecDeque::new(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn push(&mut self, a: usize, b: usize) {
        self.queue.push_back((a, b));
    }

    fn close(mut self) -> Partition {
        let n = self.table.order();
        while let Some((x, y)) = self.queue.pop_front() {
            let (rx, ry) = (self.find(x), self.find(y));
            if rx == ry {
                continue;
            }
            // Keep the smaller root so the final roots are class minima.
            let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
            self.parent[hi] = lo;
            for s in 0..n {
                self.queue.push_back((self.table.mul(s, x), self.table.mul(s, y)));
                self.queue.push_back((self.table.mul(x, s), self.table.mul(y, s)));
            }
        }
        let class_of = (0..n).map(|x| self.find(x)).collect();
        Partition { class_of }
    }
}

/// Smallest congruence identifying `a` and `b`.
pub fn principal_congruence(table: &CayleyTable, a: usize, b: usize) -> Result<Partition> {
    congruence_generated_by(table, &[(a, b)])
}

/// Smallest congruence containing every pair.
pub fn congruence_generated_by(table: &CayleyTable, pairs: &[(usize, usize)]) -> Result<Partition> {
    let mut closure = CongruenceClosure::new(table);
    for &(a, b) in pairs {
        table.check_element(a)?;
        table.check_element(b)?;
        closure.push(a, b);
    }
    Ok(closure.close())
}

/// Join of two congruences of `table`.
pub fn join(table: &CayleyTable, p: &Partition, q: &Partition) -> Partition {
    let mut closure = CongruenceClosure::new(table);
    for (a, b) in p.generating_pairs().chain(q.generating_pairs()) {
        closure.push(a, b);
    }
    closure.close()
}

/// Principal congruences of all pairs `a < b`, in lexicographic pair order.
pub fn principal_congruences(table: &CayleyTable) -> Vec<((usize, usize), Partition)> {
    let n = table.order();
    let mut out = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for a in 0..n {
        for b in a + 1..n {
            let c = principal_congruence(table, a, b).expect("indices are in range");
            out.push(((a, b), c));
        }
    }
    out
}

/// Every congruence of `table`, sorted by decreasing class count and then by
/// representative array. Fails above [`DEFAULT_LATTICE_CAP`].
pub fn all_congruences(table: &CayleyTable) -> Result<Vec<Partition>> {
    all_congruences_capped(table, DEFAULT_LATTICE_CAP)
}

pub fn all_congruences_capped(table: &CayleyTable, cap: usize) -> Result<Vec<Partition>> {
    let n = table.order();
    if n > cap {
        return Err(Error::SizeLimitExceeded { order: n, cap });
    }
    let mut generators: Vec<Partition> = Vec::new();
    {
        let mut seen = HashSet::new();
        for (_, c) in principal_congruences(table) {
            if seen.insert(c.clone()) {
                generators.push(c);
            }
        }
    }
    let mut found: HashSet<Partition> = HashSet::new();
    let mut queue: VecDeque<Partition> = VecDeque::new();
    for c in std::iter::once(Partition::identity(n)).chain(generators.iter().cloned()) {
        if found.insert(c.clone()) {
            queue.push_back(c);
        }
    }
    while let Some(c) = queue.pop_front() {
        for g in &generators {
            if g.refines(&c) {
                continue;
            }
            let j = join(table, &c, g);
            if found.insert(j.clone()) {
                queue.push_back(j);
            }
        }
    }
    let mut all: Vec<Partition> = found.into_iter().collect();
    all.sort_by(|a, b| {
        b.num_classes()
            .cmp(&a.num_classes())
            .then_with(|| a.class_of.cmp(&b.class_of))
    });
    Ok(all)
}

/// Outcome of the Δ test. On failure, two incomparable principal congruences.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaVerdict {
    pub is_delta: bool,
    pub witness: Option<DeltaWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeltaWitness {
    pub first_generator: (usize, usize),
    pub first: Partition,
    pub second_generator: (usize, usize),
    pub second: Partition,
}

/// Whether the congruence lattice is a chain.
///
/// Every congruence of a finite semigroup is a join of principal ones, and a
/// join of members of a chain is the largest of them, so it is enough that
/// the principal congruences are pairwise comparable.
pub fn is_delta(table: &CayleyTable) -> DeltaVerdict {
    let principals = principal_congruences(table);
    // Distinct congruences seen so far; comparing against duplicates is wasted work.
    let mut distinct: Vec<&((usize, usize), Partition)> = Vec::new();
    for entry in &principals {
        if distinct.iter().any(|d| d.1 == entry.1) {
            continue;
        }
        for d in &distinct {
            let (first, second) = (&d.1, &entry.1);
            if !first.refines(second) && !second.refines(first) {
                return DeltaVerdict {
                    is_delta: false,
                    witness: Some(DeltaWitness {
                        first_generator: d.0,
                        first: first.clone(),
                        second_generator: entry.0,
                        second: second.clone(),
                    }),
                };
            }
        }
        distinct.push(entry);
    }
    DeltaVerdict {
        is_delta: true,
        witness: None,
    }
}

/// `a ϱ b` iff `s·a = s·b` for every `s`.
pub fn left_kernel_congruence(table: &CayleyTable) -> Partition {
    let n = table.order();
    let columns: Vec<Vec<u8>> = (0..n)
        .map(|a| (0..n).map(|s| table.mul(s, a) as u8).collect())
        .collect();
    Partition::from_labels(&columns.iter().collect::<Vec<_>>())
}

/// Factor semigroup `S/c`. Class `k` (in representative order) becomes index `k`.
pub fn quotient_by_congruence(table: &CayleyTable, c: &Partition) -> Result<(CayleyTable, Vec<usize>)> {
    if c.order() != table.order() {
        return Err(Error::OrderMismatch {
            left: table.order(),
            right: c.order(),
        });
    }
    if let Some((x, y, s)) = c.congruence_violation(table) {
        return Err(Error::NotACongruence { x, y, s });
    }
    let n = table.order();
    let mut index_of_rep = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if c.class_of(x) == x {
            index_of_rep[x] = reps.len();
            reps.push(x);
        }
    }
    let map: Vec<usize> = (0..n).map(|x| index_of_rep[c.class_of(x)]).collect();
    let m = reps.len();
    let cells = (0..m * m)
        .map(|k| map[table.mul(reps[k / m], reps[k % m])] as u8)
        .collect();
    Ok((CayleyTable::from_cells_unchecked(m, cells), map))
}
