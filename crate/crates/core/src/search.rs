//! Exhaustive search for `M(n, r)`, the largest `m` such that every
//! `r`-coloring of `K_n` has a monochromatic component with at least `m`
//! edges, together with random colorings and a soundness scan of the
//! cover bound.
//!
//! Edges are placed in colex order `(0,1), (0,2), (1,2), (0,3), ...`, so after
//! `C(m,2)` placements the prefix is a complete coloring of `K_m`. At each
//! such checkpoint the prefix must be the lexicographically least image of
//! itself under vertex permutations (and color permutations when enabled);
//! the least representative of every isomorphism class passes all
//! checkpoints. Branches are cut once the largest component reaches the
//! incumbent.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering as AtomicOrdering};

use num_bigint::BigUint;
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::bounds::{best_provable_bound_with, main_inequality_holds, z_lower_bound, BoundQuery, SweepOptions};
use crate::coloring::{pair_count, ColoringError, EdgeColoring, MAX_COLORS};
use crate::components::{decompose, ComponentDecomposition};
use crate::dsu::RollbackDsu;
use crate::quadratic::QuadIrrational;
use crate::structure::detect_gyarfas_grid;
use crate::Rational;

/// Largest `n` accepted by [`exact_m`].
pub const MAX_SEARCH_N: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Symmetry {
    None,
    #[default]
    Vertex,
    VertexColor,
}

impl Symmetry {
    pub fn name(self) -> &'static str {
        match self {
            Symmetry::None => "none",
            Symmetry::Vertex => "vertex",
            Symmetry::VertexColor => "vertex+color",
        }
    }
}

impl std::str::FromStr for Symmetry {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Symmetry::None),
            "vertex" => Ok(Symmetry::Vertex),
            "vertex+color" | "vertex-color" => Ok(Symmetry::VertexColor),
            other => Err(format!("unknown symmetry `{other}` (none, vertex, vertex+color)")),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub n: usize,
    pub r: usize,
    pub symmetry: Symmetry,
    /// Cut branches whose largest component already reaches the incumbent.
    pub cutoff: bool,
    /// Refuse when the estimated cost exceeds this, and abort once this
    /// many nodes have been visited.
    pub budget_nodes: u64,
    /// Worker threads; `0` uses the rayon default.
    pub jobs: usize,
    /// Number of leading colex edges expanded sequentially before the
    /// remaining subtrees are searched in parallel. `None` picks `C(min(n,5),2)`.
    pub split_depth: Option<usize>,
    pub seed: u64,
}

impl SearchConfig {
    pub fn new(n: usize, r: usize) -> Self {
        Self {
            n,
            r,
            symmetry: Symmetry::default(),
            cutoff: true,
            budget_nodes: 1_000_000_000,
            jobs: 0,
            split_depth: None,
            seed: 0,
        }
    }

    pub fn with_symmetry(mut self, symmetry: Symmetry) -> Self {
        self.symmetry = symmetry;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search needs 2 <= n <= {MAX_SEARCH_N} and 1 <= r <= {MAX_COLORS}, got n = {n}, r = {r}")]
    BadParameters { n: usize, r: usize },
    #[error("estimated cost {estimated} exceeds the budget of {budget} nodes")]
    BudgetExceeded { estimated: String, budget: u64 },
    #[error("aborted after visiting {visited} nodes (budget {budget})")]
    NodeLimit { visited: u64, budget: u64 },
    #[error("witness has a component with {found} edges, expected {expected}")]
    WitnessMismatch { expected: u64, found: u64 },
    #[error("could not start worker pool: {0}")]
    ThreadPool(String),
}

#[derive(Debug, Clone)]
pub struct SearchResult {
    /// `min` over colorings of the largest component's edge count.
    pub value: u64,
    /// Lexicographically least canonical coloring (colex edge order) that
    /// attains `value`.
    pub witness: EdgeColoring,
    /// Nodes of the value pass.
    pub nodes: u64,
    /// Nodes of the witness pass.
    pub witness_nodes: u64,
    /// Complete colorings reached in the value pass.
    pub leaves: u64,
    /// Subtrees handed to the parallel phase.
    pub prefixes: usize,
}

/// `r^{C(n,2)} / |G|` plus the `n!` permutations scanned by the final
/// canonical test, rounded up.
pub fn estimated_cost(n: usize, r: usize, symmetry: Symmetry) -> BigUint {
    let space = BigUint::from(r).pow(pair_count(n) as u32);
    let factorial = |k: usize| (1..=k).fold(BigUint::from(1u32), |acc, i| acc * BigUint::from(i));
    let group = match symmetry {
        Symmetry::None => BigUint::from(1u32),
        Symmetry::Vertex => factorial(n),
        Symmetry::VertexColor => factorial(n) * factorial(r),
    };
    let leaves = (&space + &group - BigUint::from(1u32)) / &group;
    match symmetry {
        Symmetry::None => leaves,
        _ => leaves + factorial(n),
    }
}

/// Computes `M(n, r)` exactly, with a witness coloring.
pub fn exact_m(config: &SearchConfig) -> Result<SearchResult, SearchError> {
    let (n, r) = (config.n, config.r);
    if !(2..=MAX_SEARCH_N).contains(&n) || r == 0 || r > MAX_COLORS {
        return Err(SearchError::BadParameters { n, r });
    }
    let estimate = estimated_cost(n, r, config.symmetry);
    if estimate > BigUint::from(config.budget_nodes) {
        return Err(SearchError::BudgetExceeded {
            estimated: estimate.to_string(),
            budget: config.budget_nodes,
        });
    }

    let pool = {
        let mut builder = rayon::ThreadPoolBuilder::new();
        if config.jobs > 0 {
            builder = builder.num_threads(config.jobs);
        }
        builder.build().map_err(|e| SearchError::ThreadPool(e.to_string()))?
    };

    let edges = pair_count(n);
    let shared = Shared {
        incumbent: AtomicU64::new(edges as u64 + 1),
        nodes: AtomicU64::new(0),
        leaves: AtomicU64::new(0),
        aborted: AtomicBool::new(false),
        budget: config.budget_nodes,
    };
    let split = config
        .split_depth
        .unwrap_or_else(|| pair_count(n.min(5)))
        .min(edges);

    let mut root = State::new(n, r, config.symmetry);
    let mut prefixes = Vec::new();
    root.collect_prefixes(split, &mut prefixes, &shared);
    let prefix_count = prefixes.len();

    pool.install(|| {
        prefixes.par_iter().for_each(|prefix| {
            if shared.aborted.load(AtomicOrdering::Relaxed) {
                return;
            }
            let mut state = State::new(n, r, config.symmetry);
            state.replay(prefix);
            let mut search = Dfs {
                shared: &shared,
                cutoff: config.cutoff,
                local_nodes: 0,
                bound: Bound::Incumbent,
                witness: None,
            };
            search.run(&mut state);
            search.flush();
        });
    });
    if shared.aborted.load(AtomicOrdering::Relaxed) {
        return Err(SearchError::NodeLimit {
            visited: shared.nodes.load(AtomicOrdering::Relaxed),
            budget: config.budget_nodes,
        });
    }
    let value = shared.incumbent.load(AtomicOrdering::Relaxed);
    let nodes = shared.nodes.load(AtomicOrdering::Relaxed);
    let leaves = shared.leaves.load(AtomicOrdering::Relaxed);

    // Sequential pass for a deterministic witness.
    shared.nodes.store(0, AtomicOrdering::Relaxed);
    let mut state = State::new(n, r, config.symmetry);
    let mut search = Dfs {
        shared: &shared,
        cutoff: true,
        local_nodes: 0,
        bound: Bound::Fixed(value + 1),
        witness: None,
    };
    search.run(&mut state);
    search.flush();
    if shared.aborted.load(AtomicOrdering::Relaxed) {
        return Err(SearchError::NodeLimit {
            visited: shared.nodes.load(AtomicOrdering::Relaxed),
            budget: config.budget_nodes,
        });
    }
    let witness_colex = search.witness.expect("a coloring attaining the minimum exists");
    let witness_nodes = shared.nodes.load(AtomicOrdering::Relaxed);

    let edge_list = colex_edges(n);
    let mut lex = vec![0usize; edges];
    for (k, &(u, v)) in edge_list.iter().enumerate() {
        lex[crate::coloring::pair_index(n, u, v)] = witness_colex[k] as usize;
    }
    let witness = EdgeColoring::from_fn(n, r, |u, v| lex[crate::coloring::pair_index(n, u, v)])
        .expect("search produces valid colors");
    let found = decompose(&witness).max_edges();
    if found != value {
        return Err(SearchError::WitnessMismatch { expected: value, found });
    }
    Ok(SearchResult {
        value,
        witness,
        nodes,
        witness_nodes,
        leaves,
        prefixes: prefix_count,
    })
}

/// Colex edge order: `(u, v)` with `u < v`, sorted by `v` then `u`.
fn colex_edges(n: usize) -> Vec<(usize, usize)> {
    (1..n).flat_map(|v| (0..v).map(move |u| (u, v))).collect()
}

fn colex_index(u: usize, v: usize) -> usize {
    let (u, v) = if u < v { (u, v) } else { (v, u) };
    v * (v - 1) / 2 + u
}

struct Shared {
    incumbent: AtomicU64,
    nodes: AtomicU64,
    leaves: AtomicU64,
    aborted: AtomicBool,
    budget: u64,
}

struct State {
    r: usize,
    symmetry: Symmetry,
    edges: Vec<(usize, usize)>,
    colors: Vec<u8>,
    dsus: Vec<RollbackDsu>,
    /// `max_stack[d]` = largest component edge count after `d` placements.
    max_stack: Vec<u64>,
    /// `top_color[d]` = largest color used among the first `d` placements
    /// plus one.
    top_color: Vec<usize>,
    /// `checkpoint[d]` = `Some(m)` when `d = C(m, 2)` with `m >= 3`.
    checkpoint: Vec<Option<usize>>,
}

impl State {
    fn new(n: usize, r: usize, symmetry: Symmetry) -> Self {
        let edges = colex_edges(n);
        let mut checkpoint = vec![None; edges.len() + 1];
        for m in 3..=n {
            checkpoint[pair_count(m)] = Some(m);
        }
        Self {
            r,
            symmetry,
            colors: Vec::with_capacity(edges.len()),
            dsus: (0..r).map(|_| RollbackDsu::new(n)).collect(),
            max_stack: vec![0],
            top_color: vec![0],
            checkpoint,
            edges,
        }
    }

    fn depth(&self) -> usize {
        self.colors.len()
    }

    fn color_limit(&self) -> usize {
        match self.symmetry {
            Symmetry::VertexColor => (self.top_color[self.depth()] + 1).min(self.r),
            _ => self.r,
        }
    }

    /// Places the next edge in `color` and returns the new largest
    /// component edge count.
    fn push(&mut self, color: usize) -> u64 {
        let d = self.depth();
        let (u, v) = self.edges[d];
        let size = self.dsus[color].add_edge(u, v) as u64;
        let max = self.max_stack[d].max(size);
        self.colors.push(color as u8);
        self.max_stack.push(max);
        self.top_color.push(self.top_color[d].max(color + 1));
        max
    }

    fn pop(&mut self) {
        let color = self.colors.pop().expect("pop on empty prefix") as usize;
        self.dsus[color].undo();
        self.max_stack.pop();
        self.top_color.pop();
    }

    fn replay(&mut self, prefix: &[u8]) {
        for &c in prefix {
            self.push(c as usize);
        }
    }

    fn passes_checkpoint(&self) -> bool {
        match (self.symmetry, self.checkpoint[self.depth()]) {
            (Symmetry::None, _) | (_, None) => true,
            (symmetry, Some(m)) => {
                is_canonical(&self.colors, m, self.r, symmetry == Symmetry::VertexColor)
            }
        }
    }

    fn collect_prefixes(&mut self, split: usize, out: &mut Vec<Vec<u8>>, shared: &Shared) {
        if self.depth() == split {
            out.push(self.colors.clone());
            return;
        }
        for c in 0..self.color_limit() {
            self.push(c);
            shared.nodes.fetch_add(1, AtomicOrdering::Relaxed);
            if self.passes_checkpoint() {
                self.collect_prefixes(split, out, shared);
            }
            self.pop();
        }
    }
}

enum Bound {
    /// Prune at the shared incumbent and lower it at leaves.
    Incumbent,
    /// Prune at a fixed bound and stop at the first leaf.
    Fixed(u64),
}

struct Dfs<'a> {
    shared: &'a Shared,
    cutoff: bool,
    local_nodes: u64,
    bound: Bound,
    witness: Option<Vec<u8>>,
}

impl Dfs<'_> {
    const FLUSH: u64 = 1 << 14;

    fn flush(&mut self) {
        let total = self.shared.nodes.fetch_add(self.local_nodes, AtomicOrdering::Relaxed) + self.local_nodes;
        self.local_nodes = 0;
        if total > self.shared.budget {
            self.shared.aborted.store(true, AtomicOrdering::Relaxed);
        }
    }

    fn bound(&self) -> u64 {
        match self.bound {
            Bound::Incumbent => self.shared.incumbent.load(AtomicOrdering::Relaxed),
            Bound::Fixed(b) => b,
        }
    }

    /// Returns `true` to stop the whole search.
    fn run(&mut self, state: &mut State) -> bool {
        if state.depth() == state.edges.len() {
            let value = state.max_stack[state.depth()];
            match self.bound {
                Bound::Incumbent => {
                    self.shared.leaves.fetch_add(1, AtomicOrdering::Relaxed);
                    self.shared.incumbent.fetch_min(value, AtomicOrdering::Relaxed);
                    return false;
                }
                Bound::Fixed(b) => {
                    if value < b {
                        self.witness = Some(state.colors.clone());
                        return true;
                    }
                    return false;
                }
            }
        }
        for c in 0..state.color_limit() {
            let max = state.push(c);
            self.local_nodes += 1;
            if self.local_nodes >= Self::FLUSH {
                self.flush();
            }
            if self.shared.aborted.load(AtomicOrdering::Relaxed) {
                state.pop();
                return true;
            }
            let keep = (!self.cutoff || max < self.bound()) && state.passes_checkpoint();
            if keep && self.run(state) {
                state.pop();
                return true;
            }
            state.pop();
        }
        false
    }
}

/// Whether the complete coloring of `K_m` stored in the first `C(m,2)`
/// colex positions of `colors` is the least among its images.
///
/// Images are built vertex by vertex: once the preimages of `0..=b` are
/// fixed, the image is known on every edge `(a, b')` with `b' <= b`, so a
/// partial image that is already larger is abandoned and one that is
/// already smaller proves the prefix is not canonical. With color symmetry
/// each image is relabeled so that colors appear in first-occurrence order,
/// which yields the least image over all color permutations.
fn is_canonical(colors: &[u8], m: usize, r: usize, with_colors: bool) -> bool {
    let mut ctx = CanonCtx {
        colors,
        m,
        with_colors,
        preimage: vec![0; m],
        used: vec![false; m],
        color_map: vec![u8::MAX; r],
        next_label: 0,
    };
    ctx.extend(0)
}

struct CanonCtx<'a> {
    colors: &'a [u8],
    m: usize,
    with_colors: bool,
    preimage: Vec<usize>,
    used: Vec<bool>,
    color_map: Vec<u8>,
    next_label: u8,
}

impl CanonCtx<'_> {
    /// `false` if some completion of the current partial map gives a
    /// smaller image.
    fn extend(&mut self, b: usize) -> bool {
        if b == self.m {
            return true;
        }
        for x in 0..self.m {
            if self.used[x] {
                continue;
            }
            self.preimage[b] = x;
            let mut assigned: Vec<u8> = Vec::new();
            let mut order = std::cmp::Ordering::Equal;
            for a in 0..b {
                let orig = self.colors[colex_index(self.preimage[a], x)];
                let image = if self.with_colors {
                    if self.color_map[orig as usize] == u8::MAX {
                        self.color_map[orig as usize] = self.next_label;
                        self.next_label += 1;
                        assigned.push(orig);
                    }
                    self.color_map[orig as usize]
                } else {
                    orig
                };
                order = image.cmp(&self.colors[colex_index(a, b)]);
                if order != std::cmp::Ordering::Equal {
                    break;
                }
            }
            let result = match order {
                std::cmp::Ordering::Less => false,
                std::cmp::Ordering::Greater => true,
                std::cmp::Ordering::Equal => {
                    self.used[x] = true;
                    let ok = self.extend(b + 1);
                    self.used[x] = false;
                    ok
                }
            };
            for &c in &assigned {
                self.color_map[c as usize] = u8::MAX;
                self.next_label -= 1;
            }
            if !result {
                return false;
            }
        }
        true
    }
}

/// Independent uniform colors per edge, drawn in lexicographic pair order
/// from a ChaCha8 stream seeded with `seed`.
pub fn random_coloring(n: usize, r: usize, seed: u64) -> Result<EdgeColoring, ColoringError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_coloring_with(n, r, &mut rng)
}

fn random_coloring_with(n: usize, r: usize, rng: &mut impl Rng) -> Result<EdgeColoring, ColoringError> {
    if r == 0 || r > MAX_COLORS {
        return Err(ColoringError::BadColorCount(r));
    }
    let colors: Vec<usize> = (0..pair_count(n)).map(|_| rng.gen_range(0..r)).collect();
    let mut next = colors.into_iter();
    EdgeColoring::from_fn(n, r, |_, _| next.next().expect("one color per pair"))
}

/// Colorings checked by [`scan_bound_soundness`].
#[derive(Debug, Clone)]
pub struct ScanConfig {
    /// `(n, r)` pairs whose colorings are all enumerated.
    pub exhaustive: Vec<(usize, usize)>,
    pub random: Vec<RandomBatch>,
    /// Check every subset when there are at most this many components,
    /// otherwise draw `subsets_per_coloring` random subsets.
    pub subset_exhaustive_limit: usize,
    pub subsets_per_coloring: usize,
    /// Also compare `max_edge_fraction` against the LP sweep bound. Applied
    /// to exhaustive colorings only.
    pub lp_check: bool,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct RandomBatch {
    pub n_min: usize,
    pub n_max: usize,
    pub r: usize,
    pub colorings: usize,
    pub subsets: usize,
}

impl Default for ScanConfig {
    fn default() -> Self {
        Self {
            exhaustive: vec![(2, 1), (2, 2), (3, 2), (3, 3), (4, 2), (4, 3)],
            random: Vec::new(),
            subset_exhaustive_limit: 12,
            subsets_per_coloring: 1000,
            lp_check: true,
            seed: 0,
        }
    }
}

/// A failed check, with the offending coloring.
#[derive(Debug, Clone)]
pub struct ScanViolation {
    pub coloring: EdgeColoring,
    pub kind: ViolationKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ViolationKind {
    /// The main inequality fails for this component subset.
    MainInequality { subset: Vec<usize> },
    /// The LP sweep claims more than the coloring has.
    LpBound { bound: String, actual: Rational },
    /// An `r = 4` coloring below the 1/12 floor.
    BelowTwelfth { actual: Rational },
    /// An `r = 4` coloring below `2/(14+√96)` without the grid structure.
    UndetectedGrid { actual: Rational },
    /// A classifier or solver returned an error.
    Error(String),
}

#[derive(Debug, Clone, Default)]
pub struct ScanReport {
    pub colorings: u64,
    pub subsets: u64,
    /// Subsets where both sides of the main inequality agree.
    pub equalities: u64,
    pub lp_checks: u64,
    /// LP sweep bounds met exactly by `max_edge_fraction`.
    pub lp_tight: u64,
    /// `r = 4` colorings checked against the 1/12 and grid statements.
    pub r4_checks: u64,
    /// Of those, colorings below `2/(14+√96)`.
    pub r4_below_threshold: u64,
    pub grid_detected: u64,
    pub violations: Vec<ScanViolation>,
}

impl ScanReport {
    fn merge(mut self, other: ScanReport) -> ScanReport {
        self.colorings += other.colorings;
        self.subsets += other.subsets;
        self.equalities += other.equalities;
        self.lp_checks += other.lp_checks;
        self.lp_tight += other.lp_tight;
        self.r4_checks += other.r4_checks;
        self.r4_below_threshold += other.r4_below_threshold;
        self.grid_detected += other.grid_detected;
        self.violations.extend(other.violations);
        self
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Largest number of colorings enumerated for one `(n, r)` pair.
const EXHAUSTIVE_LIMIT: u64 = 1 << 24;

/// Runs the main inequality over component subsets and the structural
/// checks over every coloring described by `config`.
pub fn scan_bound_soundness(config: &ScanConfig) -> Result<ScanReport, SearchError> {
    let mut report = ScanReport::default();
    for &(n, r) in &config.exhaustive {
        if n < 2 || r == 0 || r > MAX_COLORS {
            return Err(SearchError::BadParameters { n, r });
        }
        let total = (r as u64)
            .checked_pow(pair_count(n) as u32)
            .filter(|&t| t <= EXHAUSTIVE_LIMIT)
            .ok_or_else(|| SearchError::BudgetExceeded {
                estimated: BigUint::from(r).pow(pair_count(n) as u32).to_string(),
                budget: EXHAUSTIVE_LIMIT,
            })?;
        let part = (0..total)
            .into_par_iter()
            .map(|index| {
                let coloring = coloring_from_index(n, r, index);
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(index);
                scan_coloring(&coloring, config.subset_exhaustive_limit, config.subsets_per_coloring, config.lp_check, &mut rng)
            })
            .reduce(ScanReport::default, ScanReport::merge);
        report = report.merge(part);
    }
    for (batch_index, batch) in config.random.iter().enumerate() {
        if batch.n_min < 2 || batch.n_min > batch.n_max || batch.r == 0 || batch.r > MAX_COLORS {
            return Err(SearchError::BadParameters { n: batch.n_min, r: batch.r });
        }
        let part = (0..batch.colorings as u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ ((batch_index as u64 + 1) << 48));
                rng.set_stream(i);
                let n = rng.gen_range(batch.n_min..=batch.n_max);
                let coloring = random_coloring_with(n, batch.r, &mut rng).expect("validated parameters");
                scan_coloring(&coloring, config.subset_exhaustive_limit, batch.subsets, false, &mut rng)
            })
            .reduce(ScanReport::default, ScanReport::merge);
        report = report.merge(part);
    }
    Ok(report)
}

/// The `index`-th coloring in base-`r` order over lexicographic pairs.
fn coloring_from_index(n: usize, r: usize, mut index: u64) -> EdgeColoring {
    let colors: Vec<usize> = (0..pair_count(n))
        .map(|_| {
            let c = (index % r as u64) as usize;
            index /= r as u64;
            c
        })
        .collect();
    let mut next = colors.into_iter();
    EdgeColoring::from_fn(n, r, |_, _| next.next().expect("one color per pair")).expect("valid colors")
}

/// All checks on a single coloring.
pub fn scan_coloring(
    coloring: &EdgeColoring,
    exhaustive_limit: usize,
    random_subsets: usize,
    lp_check: bool,
    rng: &mut impl Rng,
) -> ScanReport {
    let decomp = decompose(coloring);
    let mut report = ScanReport {
        colorings: 1,
        ..ScanReport::default()
    };
    let mut violation = |kind: ViolationKind, report: &mut ScanReport| {
        report.violations.push(ScanViolation {
            coloring: coloring.clone(),
            kind,
        });
    };
    let (n, r) = (decomp.n() as u64, decomp.r() as u64);
    let max_edges = decomp.max_edges();
    let sizes: Vec<u64> = decomp.components().iter().map(|c| c.len() as u64).collect();
    let k = sizes.len();

    let check = |subset_size: u64, incidence: u64, members: &dyn Fn() -> Vec<usize>, report: &mut ScanReport| {
        report.subsets += 1;
        if !main_inequality_holds(n, r, max_edges, subset_size, incidence) {
            violation(ViolationKind::MainInequality { subset: members() }, report);
        } else if is_equality(n, r, max_edges, subset_size, incidence) {
            report.equalities += 1;
        }
    };

    if k <= exhaustive_limit {
        // Gray code walk over all subsets
        let mut mask = 0u64;
        let mut incidence = 0u64;
        let mut count = 0u64;
        check(0, 0, &Vec::new, &mut report);
        for step in 1u64..(1u64 << k) {
            let bit = step.trailing_zeros() as usize;
            mask ^= 1 << bit;
            if mask & (1 << bit) != 0 {
                incidence += sizes[bit];
                count += 1;
            } else {
                incidence -= sizes[bit];
                count -= 1;
            }
            let current = mask;
            check(count, incidence, &|| (0..k).filter(|&i| current & (1 << i) != 0).collect(), &mut report);
        }
    } else {
        for _ in 0..random_subsets {
            let size = rng.gen_range(0..=k);
            let chosen: Vec<usize> = sample(rng, k, size).into_vec();
            let incidence: u64 = chosen.iter().map(|&i| sizes[i]).sum();
            let members = || {
                let mut v = chosen.clone();
                v.sort_unstable();
                v
            };
            check(size as u64, incidence, &members, &mut report);
        }
    }

    let fraction = match decomp.max_edge_fraction() {
        Ok(f) => f,
        Err(e) => {
            violation(ViolationKind::Error(e.to_string()), &mut report);
            return report;
        }
    };

    if lp_check && decomp.n() >= 2 {
        let options = SweepOptions {
            grid_step: None,
            ..SweepOptions::default()
        };
        match best_provable_bound_with(&decomp, &options) {
            Ok(best) => {
                report.lp_checks += 1;
                let actual = QuadIrrational::from_rational(fraction.clone());
                if best.z > actual {
                    violation(
                        ViolationKind::LpBound {
                            bound: best.z.to_string(),
                            actual: fraction.clone(),
                        },
                        &mut report,
                    );
                } else if best.z == actual {
                    report.lp_tight += 1;
                }
            }
            Err(e) => violation(ViolationKind::Error(e.to_string()), &mut report),
        }
    }

    if r == 4 {
        report.r4_checks += 1;
        check_r4(&decomp, &fraction, &mut report, &mut violation);
    }
    report
}

fn check_r4(
    decomp: &ComponentDecomposition,
    fraction: &Rational,
    report: &mut ScanReport,
    violation: &mut impl FnMut(ViolationKind, &mut ScanReport),
) {
    let twelfth = Rational::new(1.into(), 12.into());
    if *fraction < twelfth {
        violation(ViolationKind::BelowTwelfth { actual: fraction.clone() }, report);
    }
    let threshold = r4_threshold();
    if QuadIrrational::from_rational(fraction.clone()) < threshold {
        report.r4_below_threshold += 1;
        match detect_gyarfas_grid(decomp) {
            Ok(Some(_)) => report.grid_detected += 1,
            Ok(None) => violation(ViolationKind::UndetectedGrid { actual: fraction.clone() }, report),
            Err(e) => violation(ViolationKind::Error(e.to_string()), report),
        }
    }
}

/// `2/(14+√96)`, the bound at `(r, γ, x) = (4, 2, 5)`.
pub fn r4_threshold() -> QuadIrrational {
    z_lower_bound(&BoundQuery::integers(4, 2, 5).expect("valid query")).expect("defined")
}

fn is_equality(n: u64, r: u64, max_edges: u64, subset_size: u64, incidence: u64) -> bool {
    let pairs = (n * n.saturating_sub(1) / 2) as i128;
    let deficit = r as i128 * n as i128 - incidence as i128;
    let slack = (pairs - subset_size as i128 * max_edges as i128).max(0);
    max_edges as i128 * pairs * deficit * deficit == slack * slack * (n as i128) * (n as i128)
}

/// Convenience for callers that only need the value.
pub fn exact_m_value(n: usize, r: usize, symmetry: Symmetry) -> Result<u64, SearchError> {
    exact_m(&SearchConfig::new(n, r).with_symmetry(symmetry)).map(|res| res.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{gyarfas_coloring, two_color_extremal};

    fn brute_force(n: usize, r: usize) -> u64 {
        let total = (r as u64).pow(pair_count(n) as u32);
        (0..total)
            .map(|i| decompose(&coloring_from_index(n, r, i)).max_edges())
            .min()
            .unwrap()
    }

    #[test]
    fn small_values_match_brute_force() {
        for (n, r) in [(2, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 2), (4, 3), (5, 2)] {
            let expected = brute_force(n, r);
            for symmetry in [Symmetry::None, Symmetry::Vertex, Symmetry::VertexColor] {
                let mut config = SearchConfig::new(n, r).with_symmetry(symmetry);
                let result = exact_m(&config).unwrap();
                assert_eq!(result.value, expected, "n = {n}, r = {r}, {symmetry:?}");
                assert_eq!(decompose(&result.witness).max_edges(), expected);
                config.cutoff = false;
                assert_eq!(exact_m(&config).unwrap().value, expected, "no cutoff");
            }
        }
    }

    #[test]
    fn known_values() {
        assert_eq!(exact_m_value(3, 2, Symmetry::Vertex).unwrap(), 2);
        assert_eq!(exact_m_value(4, 2, Symmetry::Vertex).unwrap(), 3);
        let res = exact_m(&SearchConfig::new(4, 3)).unwrap();
        assert_eq!(res.value, 1);
        // perfect matchings in every color
        let d = decompose(&res.witness);
        assert!(d.components().iter().all(|c| c.edge_count <= 1));
        assert_eq!(decompose(&gyarfas_coloring(3).unwrap()).max_edges(), 1);
    }

    #[test]
    fn symmetry_prunes() {
        let plain = exact_m(&SearchConfig::new(5, 2).with_symmetry(Symmetry::None)).unwrap();
        let reduced = exact_m(&SearchConfig::new(5, 2).with_symmetry(Symmetry::VertexColor)).unwrap();
        assert!(reduced.leaves < plain.leaves);
        assert_eq!(plain.value, reduced.value);
    }

    #[test]
    fn canonical_counts_match_graph_counts() {
        // number of graphs on m vertices up to isomorphism: 1, 2, 4, 11, 34
        for (m, expected) in [(2, 2), (3, 4), (4, 11), (5, 34)] {
            let edges = pair_count(m);
            let count = (0..1u64 << edges)
                .filter(|&mask| {
                    let colors: Vec<u8> = (0..edges).map(|i| ((mask >> i) & 1) as u8).collect();
                    (3..=m).all(|k| is_canonical(&colors, k, 2, false))
                })
                .count();
            assert_eq!(count, expected, "m = {m}");
        }
    }

    #[test]
    fn witness_is_deterministic() {
        let mut a = SearchConfig::new(5, 2);
        a.jobs = 1;
        let mut b = SearchConfig::new(5, 2);
        b.jobs = 4;
        assert_eq!(exact_m(&a).unwrap().witness, exact_m(&b).unwrap().witness);
    }

    #[test]
    fn budget_refusal() {
        let mut config = SearchConfig::new(9, 4);
        config.budget_nodes = 1000;
        assert!(matches!(exact_m(&config), Err(SearchError::BudgetExceeded { .. })));
        let mut config = SearchConfig::new(6, 2);
        config.budget_nodes = 800;
        assert!(matches!(exact_m(&config), Err(SearchError::NodeLimit { .. })));
        assert!(matches!(exact_m(&SearchConfig::new(1, 2)), Err(SearchError::BadParameters { .. })));
    }

    #[test]
    fn two_color_lower_bound_attained() {
        let value = exact_m_value(7, 2, Symmetry::VertexColor).unwrap();
        assert_eq!(value, decompose(&two_color_extremal(7).unwrap()).max_edges());
    }

    #[test]
    fn random_colorings_are_seeded() {
        let a = random_coloring(10, 3, 7).unwrap();
        assert_eq!(a, random_coloring(10, 3, 7).unwrap());
        assert_ne!(a, random_coloring(10, 3, 8).unwrap());
        assert_eq!(random_coloring(6, 1, 99).unwrap(), EdgeColoring::monochromatic(6, 1).unwrap());
        assert!(random_coloring(4, 0, 1).is_err());
    }

    #[test]
    fn scan_small_exhaustive_is_clean() {
        let report = scan_bound_soundness(&ScanConfig::default()).unwrap();
        assert!(report.is_clean(), "{:?}", report.violations.first());
        assert!(report.lp_checks > 0);
        assert!(report.equalities > 0);
    }

    #[test]
    fn gyarfas_bound_is_tight() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let report = scan_coloring(&gyarfas_coloring(4).unwrap(), 12, 0, true, &mut rng);
        assert!(report.is_clean());
        assert_eq!(report.subsets, 1 << 12);
        assert_eq!(report.lp_tight, 1);
        assert_eq!(report.r4_below_threshold, 1);
        assert_eq!(report.grid_detected, 1);
    }
}
