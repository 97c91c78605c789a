//! Finite semigroups as Cayley tables, and the basic constructions on them.
//!
//! Elements are the dense indices `0..n`. Row is the left factor, column the
//! right factor.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Sets of elements. Ordered so that witnesses and serializations are stable.
pub type ElemSet = BTreeSet<usize>;

/// Largest supported order. One index is kept free for the synthetic identity of `S¹`.
pub const MAX_ORDER: usize = 254;

/// A validated finite semigroup: closed and associative.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CayleyTable {
    order: usize,
    cells: Vec<u8>,
}

impl CayleyTable {
    /// Validates a row-major table given as nested rows.
    pub fn new(rows: &[Vec<usize>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|row| row.len() != order) {
            return Err(Error::ShapeMismatch {
                order,
                expected: order * order,
                found: rows.iter().map(Vec::len).sum(),
            });
        }
        let flat: Vec<usize> = rows.concat();
        Self::from_flat(order, &flat)
    }

    /// Validates a row-major table given as a flat slice of `order * order` entries.
    pub fn from_flat(order: usize, entries: &[usize]) -> Result<Self> {
        validate_table(order, entries)
    }

    /// Builds a table from a product function and validates it.
    pub fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> Result<Self> {
        let entries: Vec<usize> = (0..order * order).map(|k| f(k / order, k % order)).collect();
        validate_table(order, &entries)
    }

    /// Wraps cells that the caller has already certified closed and associative.
    pub(crate) fn from_cells_unchecked(order: usize, cells: Vec<u8>) -> Self {
        debug_assert_eq!(cells.len(), order * order);
        CayleyTable { order, cells }
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.cells[a * self.order + b] as usize
    }

    /// Row-major cells.
    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub(crate) fn check_element(&self, a: usize) -> Result<()> {
        if a < self.order {
            Ok(())
        } else {
            Err(Error::ElementOutOfRange {
                element: a,
                order: self.order,
            })
        }
    }

    /// The dual semigroup: `x ∘ y = y · x`.
    pub fn transpose(&self) -> CayleyTable {
        let n = self.order;
        let mut cells = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[a * n + b] = self.cells[b * n + a];
            }
        }
        CayleyTable { order: n, cells }
    }

    /// Renames element `x` to `perm[x]`. `perm` must be a permutation of `0..n`.
    pub fn relabel(&self, perm: &[usize]) -> CayleyTable {
        let n = self.order;
        assert_eq!(perm.len(), n, "relabeling has wrong length");
        let mut cells = vec![0u8; n * n];
        for a in 0..n {
            for b in 0..n {
                cells[perm[a] * n + perm[b]] = perm[self.mul(a, b)] as u8;
            }
        }
        CayleyTable { order: n, cells }
    }

    /// `a^k` for `k ≥ 1`.
    pub fn power(&self, a: usize, k: usize) -> usize {
        assert!(k >= 1, "powers start at 1");
        let mut x = a;
        for _ in 1..k {
            x = self.mul(x, a);
        }
        x
    }

    /// Index and period of the monogenic subsemigroup generated by `a`.
    pub fn power_profile(&self, a: usize) -> PowerProfile {
        let mut first_seen = vec![0usize; self.order];
        let mut x = a;
        let mut k = 1;
        loop {
            if first_seen[x] != 0 {
                let index = first_seen[x];
                return PowerProfile {
                    element: a,
                    index,
                    period: k - index,
                };
            }
            first_seen[x] = k;
            x = self.mul(x, a);
            k += 1;
        }
    }

    pub fn is_commutative(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_idempotent(&self, a: usize) -> bool {
        self.mul(a, a) == a
    }

    pub fn idempotents(&self) -> Vec<usize> {
        self.elements().filter(|&a| self.is_idempotent(a)).collect()
    }

    /// The unique two-sided zero, if any.
    pub fn find_zero(&self) -> Option<usize> {
        self.elements()
            .find(|&z| self.elements().all(|s| self.mul(z, s) == z && self.mul(s, z) == z))
    }

    /// The unique two-sided identity, if any.
    pub fn find_identity(&self) -> Option<usize> {
        self.elements()
            .find(|&e| self.elements().all(|s| self.mul(e, s) == s && self.mul(s, e) == s))
    }

    /// `S¹`: reuses an existing identity, otherwise adds the synthetic index `n`.
    pub fn adjoin_identity(&self) -> MonoidView {
        let identity = match self.find_identity() {
            Some(_) => None,
            None => Some(self.order),
        };
        MonoidView {
            base: self.clone(),
            identity,
        }
    }

    /// `S⁰`: a new index `n` acting as a two-sided zero.
    pub fn adjoin_zero(&self) -> CayleyTable {
        let n = self.order;
        let m = n + 1;
        let mut cells = vec![n as u8; m * m];
        for a in 0..n {
            for b in 0..n {
                cells[a * m + b] = self.cells[a * n + b];
            }
        }
        CayleyTable { order: m, cells }
    }

    /// Smallest product-closed superset of `seed`.
    pub fn subsemigroup_closure(&self, seed: &ElemSet) -> ElemSet {
        let mut members = vec![false; self.order];
        let mut list: Vec<usize> = Vec::new();
        for &s in seed {
            if !members[s] {
                members[s] = true;
                list.push(s);
            }
        }
        let mut done = 0;
        while done < list.len() {
            let x = list[done];
            done += 1;
            for i in 0..done {
                let y = list[i];
                for p in [self.mul(x, y), self.mul(y, x)] {
                    if !members[p] {
                        members[p] = true;
                        list.push(p);
                    }
                }
            }
        }
        list.into_iter().collect()
    }

    /// Whether `set` is closed under products.
    pub fn is_subsemigroup(&self, set: &ElemSet) -> bool {
        set.iter()
            .all(|&x| set.iter().all(|&y| set.contains(&self.mul(x, y))))
    }

    /// Two-sided ideal test: `S·I ∪ I·S ⊆ I`. The empty set is not an ideal.
    pub fn is_ideal(&self, candidate: &ElemSet) -> bool {
        self.ideal_violation(candidate).is_none() && !candidate.is_empty()
    }

    /// First `(s, i)` with `s·i ∉ I` or `i·s ∉ I`.
    fn ideal_violation(&self, candidate: &ElemSet) -> Option<(usize, usize)> {
        for &i in candidate {
            for s in self.elements() {
                if !candidate.contains(&self.mul(s, i)) {
                    return Some((s, i));
                }
                if !candidate.contains(&self.mul(i, s)) {
                    return Some((i, s));
                }
            }
        }
        None
    }

    /// Rees quotient `S/I`. The collapsed ideal becomes index 0; the remaining
    /// elements keep their relative order. Returns the table and the old→new map.
    pub fn rees_quotient(&self, ideal: &ElemSet) -> Result<(CayleyTable, Vec<usize>)> {
        if let Some(&bad) = ideal.iter().find(|&&i| i >= self.order) {
            return Err(Error::ElementOutOfRange {
                element: bad,
                order: self.order,
            });
        }
        if ideal.is_empty() {
            return Err(Error::NotAnIdeal { witness: (0, 0) });
        }
        if let Some(witness) = self.ideal_violation(ideal) {
            return Err(Error::NotAnIdeal { witness });
        }
        let mut map = vec![0usize; self.order];
        let mut next = 1;
        for a in self.elements() {
            if !ideal.contains(&a) {
                map[a] = next;
                next += 1;
            }
        }
        let m = next;
        let mut cells = vec![0u8; m * m];
        for a in self.elements().filter(|a| !ideal.contains(a)) {
            for b in self.elements().filter(|b| !ideal.contains(b)) {
                cells[map[a] * m + map[b]] = map[self.mul(a, b)] as u8;
            }
        }
        Ok((CayleyTable { order: m, cells }, map))
    }

    /// Direct product; element `(a, b)` has index `a * other.order() + b`.
    pub fn direct_product(&self, other: &CayleyTable) -> Result<CayleyTable> {
        let m = other.order;
        let order = self.order * m;
        if order > MAX_ORDER {
            return Err(Error::OrderTooLarge {
                order,
                max: MAX_ORDER,
            });
        }
        Ok(CayleyTable::from_cells_unchecked(
            order,
            (0..order * order)
                .map(|k| {
                    let (x, y) = (k / order, k % order);
                    let a = self.mul(x / m, y / m);
                    let b = other.mul(x % m, y % m);
                    (a * m + b) as u8
                })
                .collect(),
        ))
    }

    /// Product of a set with an element on either side, collected.
    pub fn set_times(&self, left: &ElemSet, right: &ElemSet) -> ElemSet {
        left.iter()
            .flat_map(|&x| right.iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.mul(x, y))
            .collect()
    }
}

/// Certifies closure and associativity of a flat row-major table.
pub fn validate_table(order: usize, entries: &[usize]) -> Result<CayleyTable> {
    if order == 0 {
        return Err(Error::EmptyTable);
    }
    if order > MAX_ORDER {
        return Err(Error::OrderTooLarge {
            order,
            max: MAX_ORDER,
        });
    }
    if entries.len() != order * order {
        return Err(Error::ShapeMismatch {
            order,
            expected: order * order,
            found: entries.len(),
        });
    }
    if let Some(k) = entries.iter().position(|&v| v >= order) {
        return Err(Error::ClosureViolation {
            row: k / order,
            col: k % order,
            value: entries[k],
            order,
        });
    }
    let t = CayleyTable {
        order,
        cells: entries.iter().map(|&v| v as u8).collect(),
    };
    for a in 0..order {
        for b in 0..order {
            let ab = t.mul(a, b);
            for c in 0..order {
                let lhs = t.mul(ab, c);
                let rhs = t.mul(a, t.mul(b, c));
                if lhs != rhs {
                    return Err(Error::AssociativityViolation { a, b, c, lhs, rhs });
                }
            }
        }
    }
    Ok(t)
}

impl fmt::Debug for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CayleyTable{:?}", self.rows())
    }
}

impl fmt::Display for CayleyTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.order)?;
        for row in self.rows() {
            let row: Vec<String> = row.iter().map(ToString::to_string).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

impl Serialize for CayleyTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("CayleyTable", 2)?;
        st.serialize_field("order", &self.order)?;
        st.serialize_field("table", &self.rows())?;
        st.end()
    }
}

impl<'de> Deserialize<'de> for CayleyTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            order: usize,
            table: Vec<Vec<usize>>,
        }
        let raw = Raw::deserialize(d)?;
        if raw.table.len() != raw.order {
            return Err(serde::de::Error::custom(format!(
                "order {} but {} rows",
                raw.order,
                raw.table.len()
            )));
        }
        CayleyTable::new(&raw.table).map_err(serde::de::Error::custom)
    }
}

/// `S¹` without copying `S`. When `identity` is `Some(n)`, index `n` is a
/// synthetic identity; otherwise `S` already had one and `S¹ = S`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonoidView {
    pub base: CayleyTable,
    pub identity: Option<usize>,
}

impl MonoidView {
    pub fn size(&self) -> usize {
        self.base.order() + usize::from(self.identity.is_some())
    }

    /// The identity of `S¹`, whether reused or synthetic.
    pub fn one(&self) -> usize {
        match self.identity {
            Some(e) => e,
            None => self
                .base
                .find_identity()
                .expect("view without synthetic identity wraps a monoid"),
        }
    }

    #[inline]
    pub fn mul(&self, x: usize, y: usize) -> usize {
        match self.identity {
            Some(e) if x == e => y,
            Some(e) if y == e => x,
            _ => self.base.mul(x, y),
        }
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.size()
    }

    pub fn flatten(&self) -> CayleyTable {
        let m = self.size();
        CayleyTable::from_cells_unchecked(
            m,
            (0..m * m).map(|k| self.mul(k / m, k % m) as u8).collect(),
        )
    }
}

/// `a^{index + period} = a^{index}`, both minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerProfile {
    pub element: usize,
    pub index: usize,
    pub period: usize,
}

impl PowerProfile {
    /// Reduces an exponent `k ≥ 1` into `1..index + period` without changing `a^k`.
    pub fn reduce(&self, k: usize) -> usize {
        if k < self.index + self.period {
            k
        } else {
            self.index + (k - self.index) % self.period
        }
    }
}
