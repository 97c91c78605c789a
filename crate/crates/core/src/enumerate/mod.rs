//! Exhaustive generation of semigroups, canonical forms, and the T2R-shaped search.

pub mod canonical;
pub mod search;
pub mod spaces;

use serde::{Deserialize, Serialize};

pub use canonical::{are_isomorphic, canonical_form, CanonicalTable};
pub use search::{
    Counters, Cursor, Dfs, Flow, Rule, RunOptions, RunSummary, SearchCheckpoint, SearchSpace, SpaceDescriptor,
    StageCheckpoint, Status,
};
pub use spaces::{FullSpace, PruneRules, T2rSpace};

use crate::error::{Error, Result};
use crate::table::CayleyTable;

pub const DEFAULT_ENUMERATION_CAP: usize = 6;
pub const DEFAULT_T2R_CAP: usize = 7;

fn table_from_cells(order: usize, cells: &[u8]) -> CayleyTable {
    CayleyTable::from_cells_unchecked(order, cells.to_vec())
}

/// Streams semigroups of order `n` to `on_table` in deterministic
/// (row-major lexicographic) order, resuming from `stage` where it left off.
#[allow(clippy::too_many_arguments)]
pub fn enumerate_with(
    n: usize,
    up_to_iso: bool,
    cap: usize,
    opts: &RunOptions,
    stage: &mut StageCheckpoint,
    keep_output: bool,
    on_table: &mut dyn FnMut(CayleyTable),
    on_progress: &mut dyn FnMut(&StageCheckpoint) -> Result<()>,
) -> Result<RunSummary> {
    if n == 0 {
        return Err(Error::EmptyTable);
    }
    if n > cap {
        return Err(Error::SizeLimitExceeded { order: n, cap });
    }
    let space = FullSpace::new(n, up_to_iso);
    search::run_stage(
        &space,
        stage,
        opts,
        keep_output,
        &mut |_, found| {
            for cells in found {
                on_table(table_from_cells(n, cells));
            }
        },
        on_progress,
    )
}

/// All semigroups on `0..n`, or one per isomorphism class when `up_to_iso`.
pub fn enumerate_semigroups(n: usize, up_to_iso: bool) -> Result<Vec<CayleyTable>> {
    let mut out = Vec::new();
    let mut stage = StageCheckpoint::new(SpaceDescriptor::Enumerate { order: n, up_to_iso });
    enumerate_with(
        n,
        up_to_iso,
        DEFAULT_ENUMERATION_CAP,
        &RunOptions::default(),
        &mut stage,
        true,
        &mut |t| out.push(t),
        &mut |_| Ok(()),
    )?;
    Ok(out)
}

/// Number of semigroups of order `n`, without keeping the tables.
pub fn count_semigroups(n: usize, up_to_iso: bool) -> Result<u64> {
    let mut stage = StageCheckpoint::new(SpaceDescriptor::Enumerate { order: n, up_to_iso });
    let summary = enumerate_with(
        n,
        up_to_iso,
        DEFAULT_ENUMERATION_CAP,
        &RunOptions::default(),
        &mut stage,
        false,
        &mut |_| {},
        &mut |_| Ok(()),
    )?;
    Ok(summary.counters.emitted)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct T2rOrderReport {
    pub order: usize,
    pub complete: bool,
    pub counters: Counters,
    pub witness: Option<CayleyTable>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct T2rSearchReport {
    pub max_order: usize,
    pub rules: PruneRules,
    pub orders: Vec<T2rOrderReport>,
}

impl T2rSearchReport {
    /// First T2R semigroup found, smallest order first.
    pub fn witness(&self) -> Option<&CayleyTable> {
        self.orders.iter().find_map(|o| o.witness.as_ref())
    }

    /// Whether any order accepted a table, including in earlier resumed runs
    /// whose witnesses are no longer at hand.
    pub fn found(&self) -> bool {
        self.orders.iter().any(|o| o.counters.emitted > 0)
    }

    pub fn complete(&self) -> bool {
        self.orders.iter().all(|o| o.complete)
    }
}

/// Searches T2R-shaped tables of orders `4..=max_order` for a T2R semigroup.
pub fn search_t2r(max_order: usize, rules: PruneRules) -> Result<T2rSearchReport> {
    search_t2r_with(
        max_order,
        rules,
        DEFAULT_T2R_CAP,
        &RunOptions::default(),
        &mut SearchCheckpoint::default(),
        &mut |_| Ok(()),
    )
}

/// Like [`search_t2r`], resuming from and updating `checkpoint`. `on_progress`
/// is called with the whole checkpoint after every finished partition.
pub fn search_t2r_with(
    max_order: usize,
    rules: PruneRules,
    cap: usize,
    opts: &RunOptions,
    checkpoint: &mut SearchCheckpoint,
    on_progress: &mut dyn FnMut(&SearchCheckpoint) -> Result<()>,
) -> Result<T2rSearchReport> {
    if max_order > cap {
        return Err(Error::SizeLimitExceeded { order: max_order, cap });
    }
    let mut orders = Vec::new();
    let mut budget = opts.partition_budget;
    for order in 4..=max_order {
        let space = T2rSpace::new(order, rules);
        let descriptor = space.descriptor();
        let mut stage = checkpoint.stage_mut(&descriptor).clone();
        let mut witness = None;
        let before = stage.done.len();
        let stage_opts = RunOptions {
            threads: opts.threads,
            partition_budget: budget,
        };
        let summary = {
            let checkpoint_ref = &mut *checkpoint;
            search::run_stage(
                &space,
                &mut stage,
                &stage_opts,
                true,
                &mut |_, found| {
                    if witness.is_none() {
                        witness = found.first().map(|c| table_from_cells(order, c));
                    }
                },
                &mut |st| {
                    *checkpoint_ref.stage_mut(&descriptor) = st.clone();
                    on_progress(checkpoint_ref)
                },
            )?
        };
        *checkpoint.stage_mut(&descriptor) = stage.clone();
        if let Some(b) = budget.as_mut() {
            *b = b.saturating_sub(stage.done.len() - before);
        }
        // Witnesses flushed in an earlier run are not kept; the recorded count still shows them.
        orders.push(T2rOrderReport {
            order,
            complete: summary.complete,
            counters: summary.counters,
            witness,
        });
    }
    Ok(T2rSearchReport {
        max_order,
        rules,
        orders,
    })
}

/// Every T2R-shaped table of the given order, without the recognition step:
/// the right-zero pair, nil `S₀` and closure constraints only.
pub fn t2r_shaped_tables(order: usize) -> Vec<CayleyTable> {
    struct Shapes(T2rSpace);
    impl SearchSpace for Shapes {
        fn order(&self) -> usize {
            self.0.order()
        }
        fn descriptor(&self) -> SpaceDescriptor {
            self.0.descriptor()
        }
        fn fixed_cells(&self) -> Vec<(usize, u8)> {
            self.0.fixed_cells()
        }
        fn free_cells(&self) -> &[usize] {
            self.0.free_cells()
        }
        fn candidates(&self, depth: usize) -> &[u8] {
            self.0.candidates(depth)
        }
        fn partition_depth(&self) -> usize {
            self.0.partition_depth()
        }
        fn check(&self, cells: &[u8], depth: usize) -> std::result::Result<(), Rule> {
            self.0.check(cells, depth)
        }
        fn leaf(&self, _cells: &[u8]) -> std::result::Result<(), Rule> {
            Ok(())
        }
    }
    let space = Shapes(T2rSpace::new(order, PruneRules::NONE));
    let mut out = Vec::new();
    Dfs::new(&space, &[]).run(None, &mut |cells| {
        out.push(table_from_cells(order, cells));
        Flow::Continue
    });
    out
}
