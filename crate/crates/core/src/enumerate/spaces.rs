//! The two search spaces: all semigroups of a given order, and T2R-shaped tables.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::search::{Rule, SearchSpace, SpaceDescriptor, UNSET};
use crate::structure::{recognize_t2, T2Kind};
use crate::table::CayleyTable;

#[inline]
fn triple_ok(c: &[u8], n: usize, x: usize, y: usize, z: usize) -> bool {
    let xy = c[x * n + y];
    if xy == UNSET {
        return true;
    }
    let yz = c[y * n + z];
    if yz == UNSET {
        return true;
    }
    let l = c[xy as usize * n + z];
    if l == UNSET {
        return true;
    }
    let r = c[x * n + yz as usize];
    r == UNSET || l == r
}

/// Checks every triple in which cell `(a, b)` takes part and whose four
/// products are all assigned. Applied after each assignment, this certifies
/// associativity of the complete table.
pub(crate) fn associative_after(c: &[u8], n: usize, a: usize, b: usize) -> bool {
    for z in 0..n {
        if !triple_ok(c, n, a, b, z) || !triple_ok(c, n, z, a, b) {
            return false;
        }
    }
    for x in 0..n {
        for y in 0..n {
            let v = c[x * n + y];
            if v as usize == a && !triple_ok(c, n, x, y, b) {
                return false;
            }
            if v as usize == b && !triple_ok(c, n, a, x, y) {
                return false;
            }
        }
    }
    true
}

/// All semigroups on `0..order`, optionally one per isomorphism class
/// (the row-major lexicographically smallest member).
pub struct FullSpace {
    order: usize,
    up_to_iso: bool,
    free: Vec<usize>,
    values: Vec<u8>,
    /// Non-identity relabelings as `(sigma, sigma_inverse)`.
    perms: Vec<(Vec<u8>, Vec<u8>)>,
}

impl FullSpace {
    pub fn new(order: usize, up_to_iso: bool) -> Self {
        let perms = if up_to_iso {
            (0..order)
                .permutations(order)
                .filter(|p| p.iter().enumerate().any(|(i, &x)| i != x))
                .map(|p| {
                    let mut inv = vec![0u8; order];
                    for (i, &x) in p.iter().enumerate() {
                        inv[x] = i as u8;
                    }
                    (p.into_iter().map(|x| x as u8).collect(), inv)
                })
                .collect()
        } else {
            Vec::new()
        };
        FullSpace {
            order,
            up_to_iso,
            free: (0..order * order).collect(),
            values: (0..order as u8).collect(),
            perms,
        }
    }

    /// Whether some relabeling is already known to produce a smaller table,
    /// given that cells `0..=last` are assigned.
    fn beaten(&self, c: &[u8], last: usize) -> bool {
        let n = self.order;
        'perm: for (sigma, inv) in &self.perms {
            for k in 0..=last {
                let (i, j) = (k / n, k % n);
                let src = inv[i] as usize * n + inv[j] as usize;
                if src > last {
                    continue 'perm;
                }
                let relabeled = sigma[c[src] as usize];
                let own = c[k];
                if relabeled < own {
                    return true;
                }
                if relabeled > own {
                    continue 'perm;
                }
            }
        }
        false
    }
}

impl SearchSpace for FullSpace {
    fn order(&self) -> usize {
        self.order
    }

    fn descriptor(&self) -> SpaceDescriptor {
        SpaceDescriptor::Enumerate {
            order: self.order,
            up_to_iso: self.up_to_iso,
        }
    }

    fn fixed_cells(&self) -> Vec<(usize, u8)> {
        Vec::new()
    }

    fn free_cells(&self) -> &[usize] {
        &self.free
    }

    fn candidates(&self, _depth: usize) -> &[u8] {
        &self.values
    }

    fn partition_depth(&self) -> usize {
        self.order
    }

    fn check(&self, cells: &[u8], depth: usize) -> Result<(), Rule> {
        let n = self.order;
        if !associative_after(cells, n, depth / n, depth % n) {
            return Err(Rule::Associativity);
        }
        if self.up_to_iso && self.beaten(cells, depth) {
            return Err(Rule::Canonicity);
        }
        Ok(())
    }

    fn leaf(&self, _cells: &[u8]) -> Result<(), Rule> {
        Ok(())
    }
}

/// Which sound pruning rules the T2R-shaped search applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PruneRules {
    pub p6: bool,
    pub p7: bool,
}

impl PruneRules {
    pub const ALL: PruneRules = PruneRules { p6: true, p7: true };
    pub const NONE: PruneRules = PruneRules { p6: false, p7: false };
}

impl Default for PruneRules {
    fn default() -> Self {
        Self::ALL
    }
}

/// Tables of order `n ≥ 4` shaped like a T2R semigroup: `S₀ = {0, …, n-3}` with
/// zero 0, `S₁ = {u, v} = {n-2, n-1}` right zero, and every product with a
/// factor in `S₀` landing in `S₀`.
///
/// Free cells are filled in three blocks: `S₀ × S₀`, then `S₁ × S₀`, then
/// `S₀ × S₁`, so the P7 rule fires when the first block completes and the P6
/// rule when the second does.
pub struct T2rSpace {
    order: usize,
    rules: PruneRules,
    free: Vec<usize>,
    values: Vec<u8>,
    /// Depth of the last cell of the `S₀ × S₀` block.
    s0_block_end: usize,
    /// Depth of the last cell of the `S₁ × S₀` block.
    left_block_end: usize,
}

impl T2rSpace {
    pub fn new(order: usize, rules: PruneRules) -> Self {
        assert!(order >= 4, "T2R-shaped tables need at least four elements");
        let n = order;
        let (u, v) = (n - 2, n - 1);
        let nonzero: Vec<usize> = (1..n - 2).collect();
        let mut free = Vec::new();
        for &a in &nonzero {
            for &b in &nonzero {
                free.push(a * n + b);
            }
        }
        let s0_block_end = free.len() - 1;
        for e in [u, v] {
            for &b in &nonzero {
                free.push(e * n + b);
            }
        }
        let left_block_end = free.len() - 1;
        for &b in &nonzero {
            for e in [u, v] {
                free.push(b * n + e);
            }
        }
        T2rSpace {
            order,
            rules,
            free,
            values: (0..(n - 2) as u8).collect(),
            s0_block_end,
            left_block_end,
        }
    }

    fn nonzero_s0(&self) -> std::ops::Range<usize> {
        1..self.order - 2
    }
}

impl SearchSpace for T2rSpace {
    fn order(&self) -> usize {
        self.order
    }

    fn descriptor(&self) -> SpaceDescriptor {
        SpaceDescriptor::T2rShaped {
            order: self.order,
            prune_p6: self.rules.p6,
            prune_p7: self.rules.p7,
        }
    }

    fn fixed_cells(&self) -> Vec<(usize, u8)> {
        let n = self.order;
        let (u, v) = (n - 2, n - 1);
        let mut out = Vec::new();
        for x in 0..n {
            out.push((x, 0));
            out.push((x * n, 0));
        }
        for a in [u, v] {
            for b in [u, v] {
                out.push((a * n + b, b as u8));
            }
        }
        out
    }

    fn free_cells(&self) -> &[usize] {
        &self.free
    }

    fn candidates(&self, _depth: usize) -> &[u8] {
        &self.values
    }

    fn partition_depth(&self) -> usize {
        (self.order - 3).min(self.free.len())
    }

    fn check(&self, cells: &[u8], depth: usize) -> Result<(), Rule> {
        let n = self.order;
        let cell = self.free[depth];
        let (a, b) = (cell / n, cell % n);
        // A finite semigroup with zero is nil iff the zero is its only idempotent.
        if a == b && cells[cell] as usize == a {
            return Err(Rule::Nil);
        }
        if !associative_after(cells, n, a, b) {
            return Err(Rule::Associativity);
        }
        if self.rules.p7 && depth <= self.s0_block_end {
            // Every nonzero element of S₀ must still be able to appear in S₀ × S₀.
            let mut hit = vec![false; n];
            for x in self.nonzero_s0() {
                for y in self.nonzero_s0() {
                    let p = cells[x * n + y];
                    if p != UNSET {
                        hit[p as usize] = true;
                    }
                }
            }
            let missing = self.nonzero_s0().filter(|&x| !hit[x]).count();
            let open = self.s0_block_end - depth;
            if missing > open {
                return Err(Rule::P7);
            }
        }
        if self.rules.p6 && depth == self.left_block_end {
            let (u, v) = (n - 2, n - 1);
            let witness = self
                .nonzero_s0()
                .any(|x| cells[u * n + x] as usize != x && cells[v * n + x] as usize != x);
            if !witness {
                return Err(Rule::P6);
            }
        }
        Ok(())
    }

    fn leaf(&self, cells: &[u8]) -> Result<(), Rule> {
        let table = CayleyTable::from_cells_unchecked(self.order, cells.to_vec());
        match recognize_t2(&table, T2Kind::T2R) {
            Some(_) => Ok(()),
            None => Err(Rule::NotT2r),
        }
    }
}
