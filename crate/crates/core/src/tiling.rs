//! Box tilings of a layer of a cobweb poset.
//!
//! The layer `⟨Φ_k → Φ_n⟩` is flattened to an `m`-dimensional grid with
//! `m = n - k` axes of sizes `F_{k+1}, .., F_n`; a cell is one choice of
//! vertex per level.  A *block* is an axis-aligned sub-product — one subset
//! of positions per axis, not necessarily contiguous — whose side lengths
//! are `F_1, .., F_m` up to the block's own permutation.  A tiling is an
//! exact disjoint cover by such blocks; whether one exists for every
//! admissible sequence is open, so this module provides decision,
//! counting, and enumeration tools rather than a formula.
//!
//! Two permutation policies are supported: `Identity` pins side `i` of every
//! block to `F_i`, while `Any` lets each block permute its sides freely.
//!
//! Enumeration output is canonical: tilings appear in lexicographic order of
//! their block lists, blocks in order of their least cell, and this order is
//! independent of the rayon thread count.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::combinatorics::{equal_block_count, f_factorial, is_integral};
use crate::error::{Error, Result};
use crate::sequence::FSequence;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SigmaPolicy {
    /// Every block has side `F_i` along axis `i`.
    Identity,
    /// Each block may permute the prescribed side lengths independently.
    Any,
}

impl SigmaPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            SigmaPolicy::Identity => "identity",
            SigmaPolicy::Any => "any",
        }
    }
}

impl std::fmt::Display for SigmaPolicy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A tiling instance: the grid together with the prescribed block shape.
///
/// All quantities are kept exact; `expected_blocks` is the F-nomial
/// `(n over k)_F = eta / lambda`, which is a positive integer precisely when
/// the cell count is divisible by the block volume.
#[derive(Debug, Clone)]
pub struct LayerGrid {
    seq_name: String,
    k: u64,
    n: u64,
    dims: Vec<BigInt>,
    profile: Vec<BigInt>,
    eta: BigInt,
    lambda: BigInt,
    kappa: BigRational,
}

pub fn make_problem(f: &FSequence, k: u64, n: u64) -> Result<LayerGrid> {
    if k >= n {
        return Err(Error::EmptyLayer { k, n });
    }
    let m = n - k;
    let mut dims = Vec::with_capacity(m as usize);
    for s in k + 1..=n {
        dims.push(f.term(s)?);
    }
    let mut profile = Vec::with_capacity(m as usize);
    for s in 1..=m {
        profile.push(f.term(s)?);
    }
    let eta: BigInt = dims.iter().product();
    let lambda = f_factorial(f, m)?;
    let kappa = BigRational::new(eta.clone(), lambda.clone());
    Ok(LayerGrid {
        seq_name: f.name(),
        k,
        n,
        dims,
        profile,
        eta,
        lambda,
        kappa,
    })
}

impl LayerGrid {
    pub fn sequence_name(&self) -> &str {
        &self.seq_name
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn axis_count(&self) -> usize {
        self.dims.len()
    }

    /// Axis sizes `F_{k+1}, .., F_n`.
    pub fn dims(&self) -> &[BigInt] {
        &self.dims
    }

    /// Prescribed block side lengths `F_1, .., F_m` in axis order.
    pub fn profile(&self) -> &[BigInt] {
        &self.profile
    }

    /// Total cell count `eta`.
    pub fn cell_count(&self) -> &BigInt {
        &self.eta
    }

    /// Block volume `lambda = m_F!`.
    pub fn block_volume(&self) -> &BigInt {
        &self.lambda
    }

    /// `eta / lambda` as an exact rational.
    pub fn expected_blocks(&self) -> &BigRational {
        &self.kappa
    }

    /// Does the block volume divide the cell count?  A necessary condition
    /// for any tiling to exist.
    pub fn is_divisible(&self) -> bool {
        is_integral(&self.kappa)
    }

    /// Axis sizes as machine integers, provided the grid fits `cap` cells.
    pub fn dims_usize(&self, cap: usize) -> Result<Vec<usize>> {
        if self.eta > BigInt::from(cap) {
            return Err(Error::CellBudgetExceeded {
                cells: self.eta.clone(),
                budget: cap as u64,
            });
        }
        Ok(self
            .dims
            .iter()
            .map(|d| d.to_usize().expect("axis size bounded by cell cap"))
            .collect())
    }

    /// Block side lengths as machine integers, when they fit.
    pub fn profile_usize(&self) -> Option<Vec<usize>> {
        self.profile.iter().map(|p| p.to_usize()).collect()
    }
}

/// One subset of positions (1-based, strictly increasing) per axis.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BoxBlock {
    pub subsets: Vec<Vec<usize>>,
}

impl BoxBlock {
    pub fn sizes(&self) -> Vec<usize> {
        self.subsets.iter().map(|s| s.len()).collect()
    }

    pub fn volume(&self) -> usize {
        self.subsets.iter().map(|s| s.len()).product()
    }
}

impl std::fmt::Display for BoxBlock {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (i, sub) in self.subsets.iter().enumerate() {
            if i > 0 {
                f.write_str("x")?;
            }
            let parts: Vec<String> = sub.iter().map(|v| v.to_string()).collect();
            write!(f, "{{{}}}", parts.join(","))?;
        }
        Ok(())
    }
}

/// Blocks listed in order of their least cell.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Tiling {
    pub blocks: Vec<BoxBlock>,
}

pub const DEFAULT_CELL_BUDGET: usize = 64;

/// Hard ceiling on explicit grid work.  Counting and bounds beyond it stay
/// symbolic ([`tiling_upper_bound`]) or are reported unresolved.
#[derive(Debug, Clone, Copy)]
pub struct EnumerationBudget {
    pub max_cells: usize,
}

impl Default for EnumerationBudget {
    fn default() -> Self {
        EnumerationBudget {
            max_cells: DEFAULT_CELL_BUDGET,
        }
    }
}

#[derive(Debug, Clone)]
pub struct EnumerationResult {
    pub tilings: Vec<Tiling>,
    /// False when a `limit` stopped the search before the full list.
    pub complete: bool,
}

enum SolveMode {
    Collect { limit: Option<usize> },
    Count,
    Exists,
}

struct Solver {
    dims: Vec<usize>,
    strides: Vec<usize>,
    arrangements: Vec<Vec<usize>>,
    cover: Vec<bool>,
    stack: Vec<BoxBlock>,
    mode: SolveMode,
    tilings: Vec<Tiling>,
    count: u64,
    stopped: bool,
}

impl Solver {
    fn new(dims: Vec<usize>, arrangements: Vec<Vec<usize>>, mode: SolveMode) -> Self {
        let eta: usize = dims.iter().product();
        let mut strides = vec![1usize; dims.len()];
        for i in (0..dims.len().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * dims[i + 1];
        }
        Solver {
            dims,
            strides,
            arrangements,
            cover: vec![false; eta],
            stack: Vec::new(),
            mode,
            tilings: Vec::new(),
            count: 0,
            stopped: false,
        }
    }

    fn decode(&self, rank: usize) -> Vec<usize> {
        let mut rest = rank;
        let mut coord = vec![0usize; self.dims.len()];
        for axis in (0..self.dims.len()).rev() {
            coord[axis] = rest % self.dims[axis] + 1;
            rest /= self.dims[axis];
        }
        coord
    }

    fn block_cell_ranks(&self, block: &BoxBlock) -> Vec<usize> {
        let mut ranks = vec![0usize];
        for (axis, subset) in block.subsets.iter().enumerate() {
            let mut next = Vec::with_capacity(ranks.len() * subset.len());
            for &base in &ranks {
                for &v in subset {
                    next.push(base + (v - 1) * self.strides[axis]);
                }
            }
            ranks = next;
        }
        ranks
    }

    /// All placeable blocks containing `cell` whose cells are currently
    /// uncovered, in lexicographic block order.
    fn candidates(&self, cell: usize) -> Vec<BoxBlock> {
        let coord = self.decode(cell);
        let axes = self.dims.len();
        let mut found = Vec::new();
        for arrangement in &self.arrangements {
            let mut per_axis: Vec<Vec<Vec<usize>>> = Vec::with_capacity(axes);
            let mut feasible = true;
            for axis in 0..axes {
                let subs = subsets_containing(self.dims[axis], arrangement[axis], coord[axis]);
                if subs.is_empty() {
                    feasible = false;
                    break;
                }
                per_axis.push(subs);
            }
            if !feasible {
                continue;
            }
            let mut idx = vec![0usize; axes];
            'odometer: loop {
                let block = BoxBlock {
                    subsets: (0..axes).map(|a| per_axis[a][idx[a]].clone()).collect(),
                };
                if self.block_cell_ranks(&block).iter().all(|&r| !self.cover[r]) {
                    found.push(block);
                }
                let mut axis = axes;
                loop {
                    if axis == 0 {
                        break 'odometer;
                    }
                    axis -= 1;
                    idx[axis] += 1;
                    if idx[axis] < per_axis[axis].len() {
                        break;
                    }
                    idx[axis] = 0;
                }
            }
        }
        found.sort_unstable();
        found
    }

    fn record(&mut self) {
        match self.mode {
            SolveMode::Collect { limit } => {
                self.tilings.push(Tiling {
                    blocks: self.stack.clone(),
                });
                if limit.is_some_and(|l| self.tilings.len() >= l) {
                    self.stopped = true;
                }
            }
            SolveMode::Count => self.count += 1,
            SolveMode::Exists => {
                self.count = 1;
                self.stopped = true;
            }
        }
    }

    fn dfs(&mut self) {
        let Some(cell) = self.cover.iter().position(|&c| !c) else {
            self.record();
            return;
        };
        for block in self.candidates(cell) {
            let ranks = self.block_cell_ranks(&block);
            for &r in &ranks {
                self.cover[r] = true;
            }
            self.stack.push(block);
            self.dfs();
            self.stack.pop();
            for &r in &ranks {
                self.cover[r] = false;
            }
            if self.stopped {
                return;
            }
        }
    }
}

/// All `k`-subsets of `{1..=dim}` containing `must`: `must` is fixed and the
/// remaining `k - 1` values are chosen from the rest.
fn subsets_containing(dim: usize, k: usize, must: usize) -> Vec<Vec<usize>> {
    if k == 0 || k > dim || must < 1 || must > dim {
        return Vec::new();
    }
    fn rec(
        others: &[usize],
        need: usize,
        start: usize,
        must: usize,
        current: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if need == 0 {
            let mut subset = current.clone();
            subset.push(must);
            subset.sort_unstable();
            out.push(subset);
            return;
        }
        for i in start..others.len() {
            if others.len() - i < need {
                break;
            }
            current.push(others[i]);
            rec(others, need - 1, i + 1, must, current, out);
            current.pop();
        }
    }
    let others: Vec<usize> = (1..=dim).filter(|&v| v != must).collect();
    let mut out = Vec::new();
    rec(&others, k - 1, 0, must, &mut Vec::with_capacity(k), &mut out);
    out
}

fn arrangements_for(profile: &[usize], policy: SigmaPolicy) -> Vec<Vec<usize>> {
    match policy {
        SigmaPolicy::Identity => vec![profile.to_vec()],
        SigmaPolicy::Any => {
            let mut out = permutations_of(profile);
            out.sort_unstable();
            out.dedup();
            out
        }
    }
}

fn permutations_of(values: &[usize]) -> Vec<Vec<usize>> {
    if values.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (i, &v) in values.iter().enumerate() {
        let mut rest: Vec<usize> = values.to_vec();
        rest.remove(i);
        for mut tail in permutations_of(&rest) {
            tail.insert(0, v);
            out.push(tail);
        }
    }
    out
}

fn solve(
    grid: &LayerGrid,
    policy: SigmaPolicy,
    budget: &EnumerationBudget,
    mode: SolveMode,
) -> Result<Solver> {
    let dims = grid.dims_usize(budget.max_cells)?;
    if !grid.is_divisible() {
        // lambda does not divide eta: no tiling can exist
        return Ok(Solver::new(dims, Vec::new(), mode));
    }
    let profile = grid
        .profile_usize()
        .expect("divisibility bounds the block volume by the cell budget");
    let arrangements = arrangements_for(&profile, policy);
    let mut solver = Solver::new(dims, arrangements, mode);

    let parallel = matches!(solver.mode, SolveMode::Count)
        || matches!(solver.mode, SolveMode::Collect { limit: None });
    if !parallel {
        solver.dfs();
        return Ok(solver);
    }

    // Fan out over the root branches only; concatenating the per-branch
    // results in branch order keeps the output independent of scheduling.
    let root_candidates = solver.candidates(0);
    if root_candidates.len() <= 1 {
        solver.dfs();
        return Ok(solver);
    }
    let collect = matches!(solver.mode, SolveMode::Collect { .. });
    let branches: Vec<(Vec<Tiling>, u64)> = root_candidates
        .into_par_iter()
        .map(|block| {
            let mut local = Solver::new(
                solver.dims.clone(),
                solver.arrangements.clone(),
                if collect {
                    SolveMode::Collect { limit: None }
                } else {
                    SolveMode::Count
                },
            );
            for r in local.block_cell_ranks(&block) {
                local.cover[r] = true;
            }
            local.stack.push(block);
            local.dfs();
            (local.tilings, local.count)
        })
        .collect();
    for (tilings, count) in branches {
        solver.tilings.extend(tilings);
        solver.count += count;
    }
    Ok(solver)
}

/// Lists tilings in canonical order.  `limit` truncates the list (and then
/// `complete` is false unless the list ended anyway).
pub fn enumerate_tilings(
    grid: &LayerGrid,
    policy: SigmaPolicy,
    limit: Option<usize>,
    budget: &EnumerationBudget,
) -> Result<EnumerationResult> {
    let solver = solve(grid, policy, budget, SolveMode::Collect { limit })?;
    let complete = !solver.stopped;
    Ok(EnumerationResult {
        tilings: solver.tilings,
        complete,
    })
}

pub fn count_tilings(grid: &LayerGrid, policy: SigmaPolicy, budget: &EnumerationBudget) -> Result<BigInt> {
    let solver = solve(grid, policy, budget, SolveMode::Count)?;
    Ok(BigInt::from(solver.count))
}

pub fn exists_tiling(grid: &LayerGrid, policy: SigmaPolicy, budget: &EnumerationBudget) -> Result<bool> {
    if !grid.is_divisible() {
        return Ok(false);
    }
    let solver = solve(grid, policy, budget, SolveMode::Exists)?;
    Ok(solver.count > 0)
}

/// Checks a proposed tiling.  Structurally broken blocks (wrong axis count,
/// empty or unsorted subsets, positions off the grid) are errors; a
/// well-formed list that fails to tile — wrong shape, overlap, or gap —
/// returns `Ok(false)`.
pub fn verify_tiling(
    grid: &LayerGrid,
    policy: SigmaPolicy,
    blocks: &[BoxBlock],
    budget: &EnumerationBudget,
) -> Result<bool> {
    let dims = grid.dims_usize(budget.max_cells)?;
    let axes = dims.len();
    for (bi, block) in blocks.iter().enumerate() {
        if block.subsets.len() != axes {
            return Err(Error::MalformedBlock(format!(
                "block {bi} has {} axes, grid has {axes}",
                block.subsets.len()
            )));
        }
        for (axis, subset) in block.subsets.iter().enumerate() {
            if subset.is_empty() {
                return Err(Error::MalformedBlock(format!(
                    "block {bi} has an empty subset on axis {axis}"
                )));
            }
            if !subset.windows(2).all(|w| w[0] < w[1]) {
                return Err(Error::MalformedBlock(format!(
                    "block {bi} axis {axis} subset is not strictly increasing"
                )));
            }
            if *subset.last().unwrap() > dims[axis] || subset[0] < 1 {
                return Err(Error::MalformedBlock(format!(
                    "block {bi} axis {axis} leaves the grid (size {})",
                    dims[axis]
                )));
            }
        }
    }

    let Some(profile) = grid.profile_usize() else {
        return Ok(false); // a prescribed side exceeds any axis
    };
    let mut sorted_profile = profile.clone();
    sorted_profile.sort_unstable();
    for block in blocks {
        let sizes = block.sizes();
        let ok = match policy {
            SigmaPolicy::Identity => sizes == profile,
            SigmaPolicy::Any => {
                let mut s = sizes;
                s.sort_unstable();
                s == sorted_profile
            }
        };
        if !ok {
            return Ok(false);
        }
    }

    let helper = Solver::new(dims, Vec::new(), SolveMode::Count);
    let mut seen = vec![false; helper.cover.len()];
    for block in blocks {
        for r in helper.block_cell_ranks(block) {
            if seen[r] {
                return Ok(false); // overlap
            }
            seen[r] = true;
        }
    }
    Ok(seen.iter().all(|&c| c))
}

/// Ceiling for the closed-form bound: `eta!` is computed explicitly.
pub const BOUND_CELL_CEILING: u64 = 2_000;

/// Count of partitions of the cell set into `kappa` unordered blocks of
/// `lambda` cells each, ignoring all grid geometry — an upper bound on the
/// number of tilings, exact for one-dimensional grids.
pub fn tiling_upper_bound(grid: &LayerGrid) -> Result<BigInt> {
    if !grid.is_divisible() {
        return Ok(BigInt::zero());
    }
    let eta = grid.cell_count().to_u64().filter(|&e| e <= BOUND_CELL_CEILING);
    let Some(eta) = eta else {
        return Err(Error::CeilingExceeded(format!(
            "closed-form bound needs at most {BOUND_CELL_CEILING} cells, grid has {}",
            grid.cell_count()
        )));
    };
    let lambda = grid
        .block_volume()
        .to_u64()
        .expect("block volume divides the bounded cell count");
    let kappa = (grid.cell_count() / grid.block_volume())
        .to_u64()
        .expect("block count bounded by cell count");
    Ok(equal_block_count(eta, kappa, lambda))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TriangleMode {
    /// Geometry-free partition-count upper bound.
    Bound,
    /// Exact tiling count where the budget allows, `?` elsewhere.
    Count,
    /// Existence verdict where decidable within budget, `?` elsewhere.
    Exists,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TriangleCell {
    Value(BigInt),
    Exists(bool),
    Unresolved,
}

impl TriangleCell {
    pub fn render(&self) -> String {
        match self {
            TriangleCell::Value(v) => v.to_string(),
            TriangleCell::Exists(true) => "yes".to_string(),
            TriangleCell::Exists(false) => "no".to_string(),
            TriangleCell::Unresolved => "?".to_string(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct TriangleTable {
    pub mode: TriangleMode,
    pub policy: SigmaPolicy,
    pub cells: Vec<Vec<TriangleCell>>,
}

impl TriangleTable {
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in &self.cells {
            let rendered: Vec<String> = row.iter().map(TriangleCell::render).collect();
            out.push_str(&rendered.join(","));
            out.push('\n');
        }
        out
    }
}

/// Tiling triangle over `0 <= k <= n <= top_row`.  The `k = n` diagonal is
/// the empty layer, which carries exactly one (empty) tiling by convention.
pub fn tiling_triangle(
    f: &FSequence,
    top_row: u64,
    mode: TriangleMode,
    policy: SigmaPolicy,
    budget: &EnumerationBudget,
) -> Result<TriangleTable> {
    let mut cells = Vec::with_capacity(top_row as usize + 1);
    for n in 0..=top_row {
        let mut row = Vec::with_capacity(n as usize + 1);
        for k in 0..=n {
            if k == n {
                row.push(match mode {
                    TriangleMode::Bound | TriangleMode::Count => TriangleCell::Value(BigInt::one()),
                    TriangleMode::Exists => TriangleCell::Exists(true),
                });
                continue;
            }
            let grid = make_problem(f, k, n)?;
            let within = grid.cell_count() <= &BigInt::from(budget.max_cells);
            row.push(match mode {
                TriangleMode::Bound => TriangleCell::Value(tiling_upper_bound(&grid)?),
                TriangleMode::Count => {
                    if !grid.is_divisible() {
                        TriangleCell::Value(BigInt::zero())
                    } else if within {
                        TriangleCell::Value(count_tilings(&grid, policy, budget)?)
                    } else {
                        TriangleCell::Unresolved
                    }
                }
                TriangleMode::Exists => {
                    if !grid.is_divisible() {
                        TriangleCell::Exists(false)
                    } else if within {
                        TriangleCell::Exists(exists_tiling(&grid, policy, budget)?)
                    } else {
                        TriangleCell::Unresolved
                    }
                }
            });
        }
        cells.push(row);
    }
    Ok(TriangleTable {
        mode,
        policy,
        cells,
    })
}
