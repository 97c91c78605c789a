//! Canonical forms: the row-major lexicographically smallest relabeling.

use serde::Serialize;

use crate::table::CayleyTable;

/// A table in canonical form.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CanonicalTable {
    pub table: CayleyTable,
    pub automorphism_count: usize,
    /// `relabeling[x]` is the canonical index of original element `x`.
    pub relabeling: Vec<usize>,
}

struct Search<'t> {
    t: &'t CayleyTable,
    n: usize,
    /// `order[i]` is the original element placed at canonical position `i`.
    order: Vec<usize>,
    /// `pos[x]` is the canonical position of `x`, or `usize::MAX`.
    pos: Vec<usize>,
    best: Option<Vec<u8>>,
    best_relabeling: Vec<usize>,
    ties: usize,
}

enum Cmp {
    Less,
    Greater,
    Undecided,
}

impl<'t> Search<'t> {
    /// Compares the partially relabeled table against `best` in row-major order.
    /// A product whose value has no position yet is known to be `≥ k`.
    fn compare_prefix(&self, k: usize) -> Cmp {
        let Some(best) = &self.best else {
            return Cmp::Undecided;
        };
        let n = self.n;
        for cell in 0..n * n {
            let (i, j) = (cell / n, cell % n);
            if i >= k || j >= k {
                return Cmp::Undecided;
            }
            let value = self.t.mul(self.order[i], self.order[j]);
            let b = best[cell] as usize;
            match self.pos[value] {
                usize::MAX => {
                    if b < k {
                        return Cmp::Greater;
                    }
                    return Cmp::Undecided;
                }
                p if p < b => return Cmp::Less,
                p if p > b => return Cmp::Greater,
                _ => {}
            }
        }
        Cmp::Undecided
    }

    fn full(&self) -> Vec<u8> {
        let n = self.n;
        (0..n * n)
            .map(|cell| self.pos[self.t.mul(self.order[cell / n], self.order[cell % n])] as u8)
            .collect()
    }

    fn extend(&mut self, k: usize) {
        if k == self.n {
            let cand = self.full();
            match &self.best {
                Some(b) if cand > *b => {}
                Some(b) if cand == *b => self.ties += 1,
                _ => {
                    self.best = Some(cand);
                    self.best_relabeling = self.pos.clone();
                    self.ties = 1;
                }
            }
            return;
        }
        for x in 0..self.n {
            if self.pos[x] != usize::MAX {
                continue;
            }
            self.order.push(x);
            self.pos[x] = k;
            if !matches!(self.compare_prefix(k + 1), Cmp::Greater) {
                self.extend(k + 1);
            }
            self.pos[x] = usize::MAX;
            self.order.pop();
        }
    }
}

/// Branch-and-bound over relabelings: a partial relabeling is abandoned as
/// soon as the cells it determines already exceed the best table found.
pub fn canonical_form(table: &CayleyTable) -> CanonicalTable {
    let n = table.order();
    let mut s = Search {
        t: table,
        n,
        order: Vec::with_capacity(n),
        pos: vec![usize::MAX; n],
        best: None,
        best_relabeling: Vec::new(),
        ties: 0,
    };
    s.extend(0);
    CanonicalTable {
        table: CayleyTable::from_cells_unchecked(n, s.best.expect("at least one relabeling")),
        automorphism_count: s.ties,
        relabeling: s.best_relabeling,
    }
}

/// Isomorphism test. The witness `phi` satisfies `phi[t1[x][y]] = t2[phi[x]][phi[y]]`.
pub fn are_isomorphic(t1: &CayleyTable, t2: &CayleyTable) -> Option<Vec<usize>> {
    if t1.order() != t2.order() {
        return None;
    }
    let c1 = canonical_form(t1);
    let c2 = canonical_form(t2);
    if c1.table != c2.table {
        return None;
    }
    let mut back = vec![0usize; t2.order()];
    for (x, &p) in c2.relabeling.iter().enumerate() {
        back[p] = x;
    }
    Some(c1.relabeling.iter().map(|&p| back[p]).collect())
}
