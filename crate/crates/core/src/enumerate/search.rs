//! Resumable depth-first search over partially filled Cayley tables, and a
//! parallel driver that splits the tree into partitions and merges their
//! results in partition order.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Marker for an unassigned cell.
pub const UNSET: u8 = u8::MAX;

/// Reasons a node or leaf is rejected.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    Associativity,
    Canonicity,
    /// A nonzero idempotent inside the nil part.
    Nil,
    /// Every `b ∈ S₀` has `ub = b` or `vb = b`.
    P6,
    /// `S₀² ≠ S₀` is forced.
    P7,
    /// Leaf failed T2R recognition (Δ or ideal structure).
    NotT2r,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::Associativity,
        Rule::Canonicity,
        Rule::Nil,
        Rule::P6,
        Rule::P7,
        Rule::NotT2r,
    ];
}

/// Deterministic search statistics.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counters {
    /// Cell assignments attempted.
    pub nodes: u64,
    /// Complete tables reached.
    pub leaves: u64,
    /// Leaves accepted by the space.
    pub emitted: u64,
    pub pruned: BTreeMap<Rule, u64>,
}

impl Counters {
    fn prune(&mut self, rule: Rule) {
        *self.pruned.entry(rule).or_insert(0) += 1;
    }

    pub fn pruned_by(&self, rule: Rule) -> u64 {
        self.pruned.get(&rule).copied().unwrap_or(0)
    }

    pub fn add(&mut self, other: &Counters) {
        self.nodes += other.nodes;
        self.leaves += other.leaves;
        self.emitted += other.emitted;
        for (&r, &c) in &other.pruned {
            *self.pruned.entry(r).or_insert(0) += c;
        }
    }
}

/// Identifies a search so that checkpoints cannot be resumed against the wrong one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpaceDescriptor {
    Enumerate { order: usize, up_to_iso: bool },
    T2rShaped { order: usize, prune_p6: bool, prune_p7: bool },
}

/// A search tree over table cells. Cells are row-major indices into an
/// `order × order` array holding [`UNSET`] where nothing is assigned.
pub trait SearchSpace: Sync {
    fn order(&self) -> usize;
    fn descriptor(&self) -> SpaceDescriptor;
    /// Cells assigned before the search starts.
    fn fixed_cells(&self) -> Vec<(usize, u8)>;
    /// Free cells in assignment order.
    fn free_cells(&self) -> &[usize];
    /// Values tried, in order, for the free cell at `depth`.
    fn candidates(&self, depth: usize) -> &[u8];
    /// Number of leading free cells whose values select a partition.
    fn partition_depth(&self) -> usize;
    /// Called right after the free cell at `depth` was assigned.
    fn check(&self, cells: &[u8], depth: usize) -> std::result::Result<(), Rule>;
    /// Called on complete tables that passed every `check`.
    fn leaf(&self, cells: &[u8]) -> std::result::Result<(), Rule>;

    fn initial_cells(&self) -> Vec<u8> {
        let n = self.order();
        let mut cells = vec![UNSET; n * n];
        for (c, v) in self.fixed_cells() {
            cells[c] = v;
        }
        cells
    }
}

/// Position of a paused search: the accepted candidate indices along the
/// current path and the next candidate index to try below it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cursor {
    pub base: usize,
    pub path: Vec<u8>,
    pub next: u32,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flow {
    Continue,
    Stop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Finished,
    /// The node budget ran out; [`Dfs::cursor`] resumes exactly here.
    Paused,
    /// The leaf callback asked to stop.
    Stopped,
}

/// Depth-first search below a fixed root path.
pub struct Dfs<'s, S: SearchSpace + ?Sized> {
    space: &'s S,
    cells: Vec<u8>,
    path: Vec<u8>,
    next: usize,
    base: usize,
    done: bool,
    pub counters: Counters,
}

impl<'s, S: SearchSpace + ?Sized> Dfs<'s, S> {
    /// Searches the subtree below `root` (candidate indices of the first free cells).
    pub fn new(space: &'s S, root: &[u8]) -> Self {
        Self::resume(
            space,
            &Cursor {
                base: root.len(),
                path: root.to_vec(),
                next: 0,
            },
            Counters::default(),
        )
    }

    pub fn resume(space: &'s S, cursor: &Cursor, counters: Counters) -> Self {
        let mut cells = space.initial_cells();
        let free = space.free_cells();
        for (d, &idx) in cursor.path.iter().enumerate() {
            cells[free[d]] = space.candidates(d)[idx as usize];
        }
        Dfs {
            space,
            cells,
            path: cursor.path.clone(),
            next: cursor.next as usize,
            base: cursor.base,
            done: false,
            counters,
        }
    }

    pub fn cursor(&self) -> Cursor {
        Cursor {
            base: self.base,
            path: self.path.clone(),
            next: self.next as u32,
        }
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    fn backtrack(&mut self) {
        if self.path.len() == self.base {
            self.done = true;
            return;
        }
        let d = self.path.len() - 1;
        let idx = self.path.pop().expect("path is deeper than base");
        self.cells[self.space.free_cells()[d]] = UNSET;
        self.next = idx as usize + 1;
    }

    /// Runs until finished, paused after `budget` more nodes, or stopped by `on_leaf`.
    pub fn run(&mut self, budget: Option<u64>, on_leaf: &mut dyn FnMut(&[u8]) -> Flow) -> Status {
        let free = self.space.free_cells();
        let mut spent = 0u64;
        loop {
            if self.done {
                return Status::Finished;
            }
            let d = self.path.len();
            if d == free.len() {
                self.counters.leaves += 1;
                let flow = match self.space.leaf(&self.cells) {
                    Ok(()) => {
                        self.counters.emitted += 1;
                        on_leaf(&self.cells)
                    }
                    Err(rule) => {
                        self.counters.prune(rule);
                        Flow::Continue
                    }
                };
                self.backtrack();
                if flow == Flow::Stop {
                    return Status::Stopped;
                }
                continue;
            }
            let candidates = self.space.candidates(d);
            if self.next >= candidates.len() {
                self.backtrack();
                continue;
            }
            if budget.is_some_and(|b| spent >= b) {
                return Status::Paused;
            }
            spent += 1;
            self.counters.nodes += 1;
            self.cells[free[d]] = candidates[self.next];
            match self.space.check(&self.cells, d) {
                Ok(()) => {
                    self.path.push(self.next as u8);
                    self.next = 0;
                }
                Err(rule) => {
                    self.counters.prune(rule);
                    self.cells[free[d]] = UNSET;
                    self.next += 1;
                }
            }
        }
    }
}

/// Accepted root paths of the partition level, with the counters spent finding them.
pub fn partition_roots<S: SearchSpace + ?Sized>(space: &S) -> (Vec<Vec<u8>>, Counters) {
    fn walk<S: SearchSpace + ?Sized>(
        space: &S,
        cells: &mut Vec<u8>,
        path: &mut Vec<u8>,
        limit: usize,
        out: &mut Vec<Vec<u8>>,
        counters: &mut Counters,
    ) {
        let d = path.len();
        if d == limit {
            out.push(path.clone());
            return;
        }
        let cell = space.free_cells()[d];
        for (i, &v) in space.candidates(d).iter().enumerate() {
            counters.nodes += 1;
            cells[cell] = v;
            match space.check(cells, d) {
                Ok(()) => {
                    path.push(i as u8);
                    walk(space, cells, path, limit, out, counters);
                    path.pop();
                }
                Err(rule) => counters.prune(rule),
            }
            cells[cell] = UNSET;
        }
    }
    let limit = space.partition_depth().min(space.free_cells().len());
    let mut out = Vec::new();
    let mut counters = Counters::default();
    let mut cells = space.initial_cells();
    walk(space, &mut cells, &mut Vec::new(), limit, &mut out, &mut counters);
    (out, counters)
}

pub const CHECKPOINT_VERSION: u32 = 1;

/// Completed partition: its counters and, until flushed to the consumer, its output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionRecord {
    pub counters: Counters,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub found: Option<Vec<Vec<u8>>>,
}

/// Progress of one search space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCheckpoint {
    pub space: SpaceDescriptor,
    /// Number of partitions, known once the partition level has been expanded.
    pub partitions: Option<usize>,
    /// Partitions `0..flushed` have been handed to the consumer.
    pub flushed: usize,
    pub done: BTreeMap<usize, PartitionRecord>,
}

impl StageCheckpoint {
    pub fn new(space: SpaceDescriptor) -> Self {
        StageCheckpoint {
            space,
            partitions: None,
            flushed: 0,
            done: BTreeMap::new(),
        }
    }

    pub fn is_complete(&self) -> bool {
        self.partitions == Some(self.done.len())
    }
}

/// Versioned, self-describing checkpoint file holding one stage per search space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchCheckpoint {
    pub version: u32,
    pub stages: Vec<StageCheckpoint>,
}

impl Default for SearchCheckpoint {
    fn default() -> Self {
        SearchCheckpoint {
            version: CHECKPOINT_VERSION,
            stages: Vec::new(),
        }
    }
}

impl SearchCheckpoint {
    pub fn stage_mut(&mut self, space: &SpaceDescriptor) -> &mut StageCheckpoint {
        let i = match self.stages.iter().position(|s| &s.space == space) {
            Some(i) => i,
            None => {
                self.stages.push(StageCheckpoint::new(space.clone()));
                self.stages.len() - 1
            }
        };
        &mut self.stages[i]
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| Error::CheckpointMismatch(e.to_string()))?;
        let found = value
            .get("version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| Error::CheckpointMismatch("missing version".into()))?;
        if found != u64::from(CHECKPOINT_VERSION) {
            return Err(Error::CheckpointVersionMismatch {
                found: found as u32,
                expected: CHECKPOINT_VERSION,
            });
        }
        serde_json::from_value(value).map_err(|e| Error::CheckpointMismatch(e.to_string()))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("checkpoint serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    /// Writes to a sibling temporary file, then renames it over `path`.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut tmp = path.as_os_str().to_owned();
        tmp.push(".tmp");
        let tmp = std::path::PathBuf::from(tmp);
        std::fs::write(&tmp, self.to_json())?;
        std::fs::rename(&tmp, path)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Worker threads; `None` uses the global rayon pool.
    pub threads: Option<usize>,
    /// Start at most this many new partitions in this run.
    pub partition_budget: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunSummary {
    pub counters: Counters,
    pub complete: bool,
    pub partitions: usize,
    pub partitions_done: usize,
}

/// Runs every pending partition of `space`, updating `stage` as partitions
/// finish. Outputs are passed to `on_flush` strictly in partition order, so
/// the stream is the same for any thread count. `on_progress` sees the stage
/// after each completed partition (for checkpoint writes).
pub fn run_stage<S: SearchSpace + ?Sized>(
    space: &S,
    stage: &mut StageCheckpoint,
    opts: &RunOptions,
    keep_output: bool,
    on_flush: &mut dyn FnMut(usize, &[Vec<u8>]),
    on_progress: &mut dyn FnMut(&StageCheckpoint) -> Result<()>,
) -> Result<RunSummary> {
    if stage.space != space.descriptor() {
        return Err(Error::CheckpointMismatch(format!(
            "checkpoint is for {:?}, search is {:?}",
            stage.space,
            space.descriptor()
        )));
    }
    let (roots, root_counters) = partition_roots(space);
    match stage.partitions {
        None => stage.partitions = Some(roots.len()),
        Some(p) if p != roots.len() => {
            return Err(Error::CheckpointMismatch(format!(
                "checkpoint has {p} partitions, search has {}",
                roots.len()
            )))
        }
        Some(_) => {}
    }

    let pending: Vec<usize> = (0..roots.len()).filter(|i| !stage.done.contains_key(i)).collect();
    let started = AtomicUsize::new(0);
    let budget = opts.partition_budget.unwrap_or(usize::MAX);

    let flush = |stage: &mut StageCheckpoint, on_flush: &mut dyn FnMut(usize, &[Vec<u8>])| {
        while let Some(rec) = stage.done.get_mut(&stage.flushed) {
            let found = rec.found.take().unwrap_or_default();
            on_flush(stage.flushed, &found);
            stage.flushed += 1;
        }
    };
    flush(stage, on_flush);

    let mut failure: Option<Error> = None;
    std::thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<(usize, PartitionRecord)>();
        let roots = &roots;
        let pending = &pending;
        let started = &started;
        let worker = move || {
            pending.par_iter().for_each_with(tx, |tx, &i| {
                if started.fetch_add(1, Ordering::SeqCst) >= budget {
                    return;
                }
                let mut found = Vec::new();
                let mut dfs = Dfs::new(space, &roots[i]);
                dfs.run(None, &mut |cells| {
                    if keep_output {
                        found.push(cells.to_vec());
                    }
                    Flow::Continue
                });
                // A send only fails once the receiver gave up after an error.
                let _ = tx.send((
                    i,
                    PartitionRecord {
                        counters: dfs.counters,
                        found: Some(found),
                    },
                ));
            });
        };
        let threads = opts.threads;
        scope.spawn(move || match threads {
            Some(t) => rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .expect("thread pool builds")
                .install(worker),
            None => worker(),
        });
        for (i, rec) in rx {
            stage.done.insert(i, rec);
            flush(stage, on_flush);
            if failure.is_none() {
                if let Err(e) = on_progress(stage) {
                    failure = Some(e);
                }
            }
        }
    });
    if let Some(e) = failure {
        return Err(e);
    }

    let mut counters = root_counters;
    for rec in stage.done.values() {
        counters.add(&rec.counters);
    }
    Ok(RunSummary {
        counters,
        complete: stage.done.len() == roots.len(),
        partitions: roots.len(),
        partitions_done: stage.done.len(),
    })
}
