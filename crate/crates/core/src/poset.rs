//! Cobweb posets: the layered digraphs designated by a positive sequence.
//!
//! Level 0 always carries the single root `(1,0)`; level `s >= 1` carries the
//! vertices `(1,s) ... (F_s,s)`; consecutive levels are joined by every
//! possible upward arc (a chain of complete bipartite "di-bicliques").  The
//! partial order is reachability, so `x <= y` iff `x == y` or `x` lies on a
//! strictly lower level.
//!
//! The canonical vertex order used by all matrices is level-major,
//! position-minor.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::combinatorics::{f_factorial, f_falling, fnomial};
use crate::error::{Error, Result};
use crate::sequence::FSequence;

/// Position `j` (1-based) on level `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub j: usize,
    pub s: usize,
}

impl Vertex {
    pub fn new(j: usize, s: usize) -> Self {
        Vertex { j, s }
    }
}

impl PartialOrd for Vertex {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Vertex {
    /// Canonical order: by level, then by position.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.s, self.j).cmp(&(other.s, other.j))
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.j, self.s)
    }
}

pub const DEFAULT_VERTEX_BUDGET: usize = 100_000;

/// Explicit materialization is bounded; the counting entry points
/// ([`edge_count`], [`count_chains`] in its formula and dp modes) stay
/// symbolic and work far past this.
#[derive(Debug, Clone, Copy)]
pub struct BuildOptions {
    pub vertex_budget: usize,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions {
            vertex_budget: DEFAULT_VERTEX_BUDGET,
        }
    }
}

/// A materialized cobweb poset with levels `0..=top`.  Arcs are implied by
/// the level structure and iterated on demand rather than stored.
#[derive(Debug, Clone)]
pub struct CobwebPoset {
    seq: FSequence,
    sizes: Vec<usize>,
    offsets: Vec<usize>,
}

pub fn build(f: &FSequence, n: usize) -> Result<CobwebPoset> {
    build_with(f, n, &BuildOptions::default())
}

pub fn build_with(f: &FSequence, n: usize, opts: &BuildOptions) -> Result<CobwebPoset> {
    let mut total = BigInt::one();
    for s in 1..=n as u64 {
        total += f.term(s)?;
    }
    if total > BigInt::from(opts.vertex_budget) {
        return Err(Error::VertexBudgetExceeded {
            needed: total,
            budget: opts.vertex_budget,
        });
    }
    let mut sizes = Vec::with_capacity(n + 1);
    sizes.push(1usize);
    for s in 1..=n as u64 {
        let size = usize::try_from(f.term(s)?).expect("level size fits usize under budget");
        sizes.push(size);
    }
    let mut offsets = Vec::with_capacity(n + 2);
    offsets.push(0);
    for &sz in &sizes {
        offsets.push(offsets.last().unwrap() + sz);
    }
    Ok(CobwebPoset {
        seq: f.clone(),
        sizes,
        offsets,
    })
}

impl CobwebPoset {
    pub fn sequence(&self) -> &FSequence {
        &self.seq
    }

    /// Index of the highest level, so the poset has `top_level() + 1` levels.
    pub fn top_level(&self) -> usize {
        self.sizes.len() - 1
    }

    /// `|Φ_s|` for `s = 0..=top_level()`.
    pub fn level_sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn vertex_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn arc_count(&self) -> BigInt {
        let mut acc = BigInt::zero();
        for w in self.sizes.windows(2) {
            acc += BigInt::from(w[0]) * BigInt::from(w[1]);
        }
        acc
    }

    pub fn contains(&self, v: Vertex) -> bool {
        v.s < self.sizes.len() && v.j >= 1 && v.j <= self.sizes[v.s]
    }

    /// Reachability order: `x <= y` iff `x == y` or `x` is on a lower level.
    pub fn leq(&self, x: Vertex, y: Vertex) -> bool {
        debug_assert!(self.contains(x) && self.contains(y));
        x == y || x.s < y.s
    }

    /// Canonical (level-major, position-minor) index of a vertex.
    pub fn index_of(&self, v: Vertex) -> Result<usize> {
        if !self.contains(v) {
            return Err(Error::UnknownVertex { j: v.j, s: v.s });
        }
        Ok(self.offsets[v.s] + v.j - 1)
    }

    pub fn vertex_at(&self, index: usize) -> Vertex {
        let s = self.level_of_index(index);
        Vertex::new(index - self.offsets[s] + 1, s)
    }

    pub fn level_of_index(&self, index: usize) -> usize {
        debug_assert!(index < self.vertex_count());
        self.offsets.partition_point(|&off| off <= index) - 1
    }

    /// All vertices in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.sizes
            .iter()
            .enumerate()
            .flat_map(|(s, &sz)| (1..=sz).map(move |j| Vertex::new(j, s)))
    }

    /// Every arc, lower endpoint first, in canonical order.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.arcs_between(0, self.top_level())
    }

    /// Arcs of the sub-layer spanning levels `lo..=hi`.
    pub fn arcs_between(&self, lo: usize, hi: usize) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        let hi = hi.min(self.top_level());
        (lo..hi).flat_map(move |s| {
            let a = self.sizes[s];
            let b = self.sizes[s + 1];
            (1..=a).flat_map(move |j| (1..=b).map(move |q| (Vertex::new(j, s), Vertex::new(q, s + 1))))
        })
    }
}

/// Arc count of the layer `⟨Φ_k → Φ_{k+m}⟩` in closed form:
/// the sum of `|Φ_{k+i}| * |Φ_{k+i+1}|` over `i = 0..m`.  Level 0 counts one
/// vertex regardless of the sequence's root convention.
pub fn edge_count(f: &FSequence, k: u64, m: u64) -> Result<BigInt> {
    let level_size = |s: u64| -> Result<BigInt> {
        if s == 0 {
            Ok(BigInt::one())
        } else {
            f.term(s)
        }
    };
    let mut acc = BigInt::zero();
    for i in 0..m {
        acc += level_size(k + i)? * level_size(k + i + 1)?;
    }
    Ok(acc)
}

/// 0/1 incidence matrix of the reachability order under the canonical
/// vertex order.  Always upper triangular with a unit diagonal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    order: usize,
    data: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.data[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[u8] {
        &self.data[row * self.order..(row + 1) * self.order]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.order {
            let cells: Vec<String> = self.row(r).iter().map(|b| b.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

pub fn incidence_matrix(p: &CobwebPoset) -> IncidenceMatrix {
    let n = p.vertex_count();
    let levels: Vec<usize> = (0..n).map(|i| p.level_of_index(i)).collect();
    let mut data = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == j || levels[i] < levels[j] {
                data[i * n + j] = 1;
            }
        }
    }
    IncidenceMatrix { order: n, data }
}

/// Exact inverse of the incidence matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MobiusMatrix {
    order: usize,
    data: Vec<BigInt>,
}

impl MobiusMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, row: usize, col: usize) -> &BigInt {
        &self.data[row * self.order + col]
    }

    pub fn row(&self, row: usize) -> &[BigInt] {
        &self.data[row * self.order..(row + 1) * self.order]
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.order {
            let cells: Vec<String> = self.row(r).iter().map(|b| b.to_string()).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// Inverts the incidence matrix by back-substitution along the canonical
/// order.  Within one row every vertex of a given higher level receives the
/// same value, so the row is swept level by level with a running sum.
pub fn mobius_matrix(p: &CobwebPoset) -> MobiusMatrix {
    let n = p.vertex_count();
    let top = p.top_level();
    let mut data = vec![BigInt::zero(); n * n];
    for x in 0..n {
        let p_level = p.level_of_index(x);
        data[x * n + x] = BigInt::one();
        // running = sum of mu(x, z) over x itself and all levels <= r - 1
        let mut running = BigInt::one();
        for r in (p_level + 1)..=top {
            let val = -running.clone();
            let start = p.offsets[r];
            for idx in start..start + p.sizes[r] {
                data[x * n + idx] = val.clone();
            }
            running += BigInt::from(p.sizes[r]) * val;
        }
    }
    MobiusMatrix { order: n, data }
}

pub const BRUTE_CHAIN_LIMIT: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChainMode {
    /// Falling F-factorial in closed form.
    Formula,
    /// Per-level accumulation walking the layer upward.
    Dp,
    /// Depth-first enumeration of every maximal chain in the built digraph.
    Brute,
}

/// Number of maximal chains from one fixed vertex of `Φ_k` to level `Φ_n`.
///
/// All three modes agree; they exist to check each other.  Brute mode
/// materializes the poset (default vertex budget) and refuses instances over
/// [`BRUTE_CHAIN_LIMIT`] chains.
pub fn count_chains(f: &FSequence, k: u64, n: u64, mode: ChainMode) -> Result<BigInt> {
    count_chains_with(f, k, n, mode, &BuildOptions::default())
}

pub fn count_chains_with(
    f: &FSequence,
    k: u64,
    n: u64,
    mode: ChainMode,
    opts: &BuildOptions,
) -> Result<BigInt> {
    if k > n {
        return Err(Error::FallingRange { n, k });
    }
    match mode {
        ChainMode::Formula => f_falling(f, n, n - k),
        ChainMode::Dp => {
            let mut level_total = BigInt::one();
            for s in k + 1..=n {
                level_total = f.term(s)? * level_total;
            }
            Ok(level_total)
        }
        ChainMode::Brute => {
            let expected = f_falling(f, n, n - k)?;
            if expected > BigInt::from(BRUTE_CHAIN_LIMIT) {
                return Err(Error::ChainInstanceTooLarge {
                    count: expected,
                    limit: BRUTE_CHAIN_LIMIT,
                });
            }
            let poset = build_with(f, n as usize, opts)?;
            let mut count = 0u64;
            dfs_chains(&poset, k as usize, n as usize, &mut count);
            Ok(BigInt::from(count))
        }
    }
}

fn dfs_chains(p: &CobwebPoset, s: usize, n: usize, count: &mut u64) {
    if s == n {
        *count += 1;
        return;
    }
    for _q in 1..=p.sizes[s + 1] {
        dfs_chains(p, s + 1, n, count);
    }
}

/// Checks `(n over k)_F * (n-k)_F! = n_F^(n-k)` exactly.
pub fn verify_chain_count_identity(f: &FSequence, k: u64, n: u64) -> Result<bool> {
    let lhs = fnomial(f, n, k)? * BigRational::from(f_factorial(f, n - k)?);
    let rhs = BigRational::from(f_falling(f, n, n - k)?);
    Ok(lhs == rhs)
}

/// `rho_n(x) = sum over vertices of mu(root, v) * x^(n - level(v))`,
/// stored lowest-degree-first.  Monic of degree `n` by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharPolynomial {
    coeffs: Vec<BigInt>,
}

impl CharPolynomial {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients lowest-degree-first.
    pub fn coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

impl fmt::Display for CharPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for i in (0..self.coeffs.len()).rev() {
            let c = &self.coeffs[i];
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if wrote {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let unit = mag.is_one();
            match (i, unit) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => f.write_str("λ")?,
                (1, false) => write!(f, "{mag}λ")?,
                (_, true) => write!(f, "λ^{i}")?,
                (_, false) => write!(f, "{mag}λ^{i}")?,
            }
            wrote = true;
        }
        if !wrote {
            f.write_str("0")?;
        }
        Ok(())
    }
}

pub fn characteristic_polynomial(p: &CobwebPoset) -> CharPolynomial {
    let n = p.top_level();
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut running = BigInt::one();
    for r in 1..=n {
        let val = -running.clone();
        coeffs[n - r] = BigInt::from(p.sizes[r]) * &val;
        running += BigInt::from(p.sizes[r]) * val;
    }
    CharPolynomial { coeffs }
}

/// Does `dominators` dominate the poset when arc direction is ignored?
/// Because consecutive levels are completely joined, a vertex is adjacent to
/// a set exactly when the set touches a neighboring level.
pub fn is_dominating(p: &CobwebPoset, dominators: &BTreeSet<Vertex>) -> Result<bool> {
    let top = p.top_level();
    let mut occupied = vec![false; top + 1];
    for v in dominators {
        if !p.contains(*v) {
            return Err(Error::UnknownVertex { j: v.j, s: v.s });
        }
        occupied[v.s] = true;
    }
    for v in p.vertices() {
        let near = (v.s >= 1 && occupied[v.s - 1]) || (v.s < top && occupied[v.s + 1]);
        if !near && !dominators.contains(&v) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomaticWitness {
    pub class_index: usize,
    pub vertex: Vertex,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomaticVerdict {
    pub modulus: usize,
    pub domatic: bool,
    pub witness: Option<DomaticWitness>,
}

/// Partitions the levels by index mod `modulus` and asks whether every class
/// is a dominating set.  The witness on failure is the canonically smallest
/// uncovered vertex over all classes (ties broken by class index).
pub fn domatic_mod_check(p: &CobwebPoset, modulus: usize) -> Result<DomaticVerdict> {
    if modulus < 2 {
        return Err(Error::InvalidParameter(format!(
            "domatic modulus must be at least 2, got {modulus}"
        )));
    }
    let top = p.top_level();
    if top + 1 < modulus + 1 {
        return Err(Error::TooFewLevels {
            modulus,
            levels: top + 1,
        });
    }
    let mut witness: Option<(usize, usize)> = None; // (level, class)
    for class in 0..modulus {
        for s in 0..=top {
            let in_class = s % modulus == class;
            let below = s >= 1 && (s - 1) % modulus == class;
            let above = s < top && (s + 1) % modulus == class;
            if !(in_class || below || above) {
                let cand = (s, class);
                if witness.map_or(true, |best| cand < best) {
                    witness = Some(cand);
                }
                break; // lowest uncovered level identifies this class
            }
        }
    }
    Ok(DomaticVerdict {
        modulus,
        domatic: witness.is_none(),
        witness: witness.map(|(s, class)| DomaticWitness {
            class_index: class,
            vertex: Vertex::new(1, s),
        }),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PosetExportFormat {
    Dot,
    Json,
    CsvMatrix,
}

#[derive(Serialize)]
struct PosetJson<'a> {
    sequence: String,
    top_level: usize,
    level_sizes: &'a [usize],
    arc_count: String,
    arcs: Vec<((usize, usize), (usize, usize))>,
}

/// Renders the poset to a textual interchange format.  All three formats are
/// deterministic byte-for-byte for a given poset.
pub fn export(p: &CobwebPoset, format: PosetExportFormat) -> String {
    match format {
        PosetExportFormat::Dot => {
            let mut out = String::from("digraph cobweb {\n  rankdir=BT;\n  node [shape=circle];\n");
            for v in p.vertices() {
                out.push_str(&format!("  v{}_{} [label=\"({},{})\"];\n", v.s, v.j, v.j, v.s));
            }
            for s in 0..=p.top_level() {
                let ids: Vec<String> = (1..=p.sizes[s]).map(|j| format!("v{s}_{j}")).collect();
                out.push_str(&format!("  {{ rank=same; {}; }}\n", ids.join("; ")));
            }
            for (a, b) in p.arcs() {
                out.push_str(&format!("  v{}_{} -> v{}_{};\n", a.s, a.j, b.s, b.j));
            }
            out.push_str("}\n");
            out
        }
        PosetExportFormat::Json => {
            let payload = PosetJson {
                sequence: p.seq.name(),
                top_level: p.top_level(),
                level_sizes: &p.sizes,
                arc_count: p.arc_count().to_string(),
                arcs: p.arcs().map(|(a, b)| ((a.j, a.s), (b.j, b.s))).collect(),
            };
            let mut s = serde_json::to_string(&payload).expect("poset serializes");
            s.push('\n');
            s
        }
        PosetExportFormat::CsvMatrix => incidence_matrix(p).to_csv(),
    }
}
