//! Named small semigroups used throughout the tests and the CLI examples.

use crate::table::CayleyTable;

/// The one-element semigroup.
pub fn trivial() -> CayleyTable {
    CayleyTable::from_cells_unchecked(1, vec![0])
}

/// `Z_n` under addition.
pub fn cyclic_group(n: usize) -> CayleyTable {
    assert!(n >= 1);
    CayleyTable::from_fn(n, |a, b| (a + b) % n).expect("cyclic group is a semigroup")
}

/// `x·y = y`.
pub fn right_zero(n: usize) -> CayleyTable {
    assert!(n >= 1);
    CayleyTable::from_fn(n, |_, b| b).expect("right-zero band is a semigroup")
}

/// `x·y = x`.
pub fn left_zero(n: usize) -> CayleyTable {
    assert!(n >= 1);
    CayleyTable::from_fn(n, |a, _| a).expect("left-zero band is a semigroup")
}

/// `{0, a, a², …, a^{n-1}}` with `a^n = 0`; element `i ≥ 1` is `a^i`, element 0 the zero.
pub fn monogenic_nil(n: usize) -> CayleyTable {
    assert!(n >= 1);
    CayleyTable::from_fn(n, |a, b| if a == 0 || b == 0 || a + b >= n { 0 } else { a + b })
        .expect("monogenic nil semigroup is a semigroup")
}

/// Null semigroup of order `n`: every product is 0.
pub fn null_semigroup(n: usize) -> CayleyTable {
    assert!(n >= 1);
    CayleyTable::from_fn(n, |_, _| 0).expect("null semigroup is a semigroup")
}

/// Chain semilattice `{0 < 1 < … < n-1}` under min.
pub fn chain_semilattice(n: usize) -> CayleyTable {
    assert!(n >= 1);
    CayleyTable::from_fn(n, usize::min).expect("min is associative")
}

/// Order-5 near miss used to exercise the T2R proposition battery:
/// `S₀ = {0, 1, 2}` is the monogenic nil semigroup (`1·1 = 2`), `S₁ = {3, 4}`
/// is right zero, and every product between `S₀` and `S₁` is 0.
pub fn t2r_near_miss() -> CayleyTable {
    CayleyTable::from_fn(5, |a, b| match (a, b) {
        (1, 1) => 2,
        (3 | 4, 3 | 4) => b,
        _ => 0,
    })
    .expect("near-miss table is a semigroup")
}
