//! Block designs for the controls (the primal), their augmentation with
//! unreplicated test treatments, and the constructions used to obtain
//! primals: complete k-subset designs, affine-plane lattices, duals, and
//! block deletion or repetition.
//!
//! Treatment labels inside blocks are 1-based, matching the text format.
//! Index arguments (`i` for a treatment, `j` for a block) are 0-based.

use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A block design on `v` treatments. Blocks are multisets stored as sorted
/// label lists; the incidence matrix is derived once at construction.
#[derive(Debug, Clone)]
pub struct BlockDesign {
    v: usize,
    blocks: Vec<Vec<usize>>,
    /// `v × b`, row-major: `incidence[i * b + j] = n_ij`.
    incidence: Vec<u32>,
}

/// Equality is on the incidence matrix, so block order matters but the order
/// of labels within a block does not.
impl PartialEq for BlockDesign {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && self.b() == other.b() && self.incidence == other.incidence
    }
}

impl Eq for BlockDesign {}

impl BlockDesign {
    pub fn from_blocks(v: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        if v == 0 || blocks.is_empty() {
            return Err(Error::EmptyDesign);
        }
        let b = blocks.len();
        let mut incidence = vec![0u32; v * b];
        let mut sorted = Vec::with_capacity(b);
        for (j, mut block) in blocks.into_iter().enumerate() {
            if block.is_empty() {
                return Err(Error::EmptyBlock(j));
            }
            for &label in &block {
                if label == 0 || label > v {
                    return Err(Error::LabelOutOfRange { label, v });
                }
                incidence[(label - 1) * b + j] += 1;
            }
            block.sort_unstable();
            sorted.push(block);
        }
        Ok(Self {
            v,
            blocks: sorted,
            incidence,
        })
    }

    /// Builds a design from a `v × b` incidence matrix given row by row.
    pub fn from_incidence(v: usize, b: usize, n: &[u32]) -> Result<Self> {
        if n.len() != v * b {
            return Err(Error::InvalidParameters(format!(
                "incidence has {} entries, expected {}",
                n.len(),
                v * b
            )));
        }
        let blocks = (0..b)
            .map(|j| {
                (0..v)
                    .flat_map(|i| std::iter::repeat_n(i + 1, n[i * b + j] as usize))
                    .collect()
            })
            .collect();
        Self::from_blocks(v, blocks)
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn b(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, j: usize) -> &[usize] {
        &self.blocks[j]
    }

    #[inline]
    pub fn n(&self, i: usize, j: usize) -> u32 {
        self.incidence[i * self.b() + j]
    }

    pub fn incidence(&self) -> &[u32] {
        &self.incidence
    }

    /// Replication numbers `r_i`, the row sums of N.
    pub fn replication(&self) -> Vec<usize> {
        let b = self.b();
        (0..self.v)
            .map(|i| {
                self.incidence[i * b..(i + 1) * b]
                    .iter()
                    .map(|&x| x as usize)
                    .sum()
            })
            .collect()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }

    /// The common block size `k`, if every block has the same size.
    pub fn block_size(&self) -> Option<usize> {
        let k = self.blocks[0].len();
        self.blocks.iter().all(|bl| bl.len() == k).then_some(k)
    }

    pub fn is_binary(&self) -> bool {
        self.incidence.iter().all(|&x| x <= 1)
    }

    pub fn is_equireplicate(&self) -> bool {
        let r = self.replication();
        r.iter().all(|&x| x == r[0])
    }

    /// True when the treatment-block incidence graph is connected and every
    /// treatment occurs somewhere.
    pub fn is_connected(&self) -> bool {
        let b = self.b();
        let mut uf = UnionFind::new(self.v + b);
        for (j, block) in self.blocks.iter().enumerate() {
            for &label in block {
                uf.union(label - 1, self.v + j);
            }
        }
        let root = uf.find(0);
        (1..self.v + b).all(|x| uf.find(x) == root)
    }

    /// Number of treatment pairs `(i, i*)` concurrence: `Σ_j n_ij n_i*j`.
    pub fn concurrence(&self, i: usize, i_star: usize) -> u32 {
        (0..self.b())
            .map(|j| self.n(i, j) * self.n(i_star, j))
            .sum()
    }

    /// Size of the multiset intersection of blocks `j` and `j*`.
    pub fn block_overlap(&self, j: usize, j_star: usize) -> u32 {
        (0..self.v)
            .map(|i| self.n(i, j).min(self.n(i, j_star)))
            .sum()
    }

    /// The dual design, with incidence matrix Nᵀ. Fails with `EmptyBlock`
    /// when some treatment never occurs, since its dual block would be empty.
    pub fn dual(&self) -> Result<Self> {
        let blocks = (0..self.v)
            .map(|i| {
                (0..self.b())
                    .flat_map(|j| std::iter::repeat_n(j + 1, self.n(i, j) as usize))
                    .collect()
            })
            .collect();
        Self::from_blocks(self.b(), blocks)
    }

    /// Removes the blocks at the given 0-based indices.
    pub fn delete_blocks(&self, indices: &[usize]) -> Result<Self> {
        let b = self.b();
        let mut drop = vec![false; b];
        for &j in indices {
            if j >= b {
                return Err(Error::IndexOutOfRange { index: j, limit: b });
            }
            drop[j] = true;
        }
        let remaining = drop.iter().filter(|&&d| !d).count();
        if remaining < 2 {
            return Err(Error::TooFewBlocksRemain { remaining });
        }
        let blocks = self
            .blocks
            .iter()
            .zip(&drop)
            .filter(|(_, &d)| !d)
            .map(|(bl, _)| bl.clone())
            .collect();
        Self::from_blocks(self.v, blocks)
    }

    /// Appends copies of the blocks at the given 0-based indices, in the
    /// order given.
    pub fn repeat_blocks(&self, indices: &[usize]) -> Result<Self> {
        let b = self.b();
        let mut blocks = self.blocks.clone();
        for &j in indices {
            if j >= b {
                return Err(Error::IndexOutOfRange { index: j, limit: b });
            }
            blocks.push(self.blocks[j].clone());
        }
        Self::from_blocks(self.v, blocks)
    }

    /// Greedy low-overlap choice of `n` blocks: each step picks the block
    /// whose largest overlap with the blocks already chosen is smallest,
    /// lowest index first on ties. Returned indices are 0-based, in pick order.
    pub fn low_overlap_blocks(&self, n: usize) -> Result<Vec<usize>> {
        let b = self.b();
        if n > b {
            return Err(Error::IndexOutOfRange { index: n, limit: b });
        }
        let mut chosen: Vec<usize> = Vec::with_capacity(n);
        for _ in 0..n {
            let pick = (0..b)
                .filter(|j| !chosen.contains(j))
                .min_by_key(|&j| {
                    chosen
                        .iter()
                        .map(|&c| self.block_overlap(j, c))
                        .max()
                        .unwrap_or(0)
                })
                .expect("n <= b leaves a candidate");
            chosen.push(pick);
        }
        Ok(chosen)
    }

    /// Same blocks as `other`, ignoring block order.
    pub fn same_blocks(&self, other: &Self) -> bool {
        if self.v != other.v || self.b() != other.b() {
            return false;
        }
        let mut a = self.blocks.clone();
        let mut c = other.blocks.clone();
        a.sort();
        c.sort();
        a == c
    }

    /// Serializes to the `v` / `block` text format with LF line endings.
    pub fn to_text(&self) -> String {
        let mut out = format!("v {}\n", self.v);
        for block in &self.blocks {
            out.push_str("block");
            for label in block {
                write!(out, " {label}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

impl FromStr for BlockDesign {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut v = None;
        let mut blocks = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let mut words = line.split_whitespace();
            let keyword = words.next().unwrap_or_default();
            let parse_err = |msg: String| Error::Parse { line: line_no, msg };
            let numbers = words
                .map(|w| {
                    w.parse::<usize>().map_err(|_| {
                        parse_err(format!("expected a nonnegative integer, got {w:?}"))
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            match keyword {
                "v" => {
                    if v.is_some() {
                        return Err(parse_err("duplicate `v` line".into()));
                    }
                    if !blocks.is_empty() {
                        return Err(parse_err("`v` must precede all blocks".into()));
                    }
                    match numbers.as_slice() {
                        [n] if *n > 0 => v = Some(*n),
                        _ => return Err(parse_err("`v` takes one positive integer".into())),
                    }
                }
                "block" => {
                    if v.is_none() {
                        return Err(parse_err("`block` before `v`".into()));
                    }
                    if numbers.is_empty() {
                        return Err(Error::EmptyBlock(blocks.len()));
                    }
                    blocks.push(numbers);
                }
                other => return Err(parse_err(format!("unknown keyword {other:?}"))),
            }
        }
        let v = v.ok_or(Error::Parse {
            line: 0,
            msg: "missing `v` line".into(),
        })?;
        if blocks.is_empty() {
            return Err(Error::Parse {
                line: 0,
                msg: "no blocks".into(),
            });
        }
        Self::from_blocks(v, blocks)
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// The complete design of all `C(v, k)` k-subsets of `{1..v}`, in
/// lexicographic order.
pub fn all_k_subsets(v: usize, k: usize) -> Result<BlockDesign> {
    if k == 0 || k > v {
        return Err(Error::InvalidSize { v, k });
    }
    let mut blocks = Vec::new();
    let mut cur: Vec<usize> = (1..=k).collect();
    loop {
        blocks.push(cur.clone());
        // advance to the next combination
        let mut pos = k;
        while pos > 0 && cur[pos - 1] == v - k + pos {
            pos -= 1;
        }
        if pos == 0 {
            break;
        }
        cur[pos - 1] += 1;
        for t in pos..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
    BlockDesign::from_blocks(v, blocks)
}

/// Lines of the affine plane over Z_q for prime `q <= 13`: `q²` points,
/// `q(q+1)` lines of size `q`, every pair of points on exactly one line.
///
/// Point `(x, y)` has label `x·q + y + 1`. Blocks come in parallel classes:
/// first the `q` classes `y = m·x + c`, then the vertical class `x = c`.
pub fn lattice_bib(q: usize) -> Result<BlockDesign> {
    if !matches!(q, 2 | 3 | 5 | 7 | 11 | 13) {
        return Err(Error::NotSupportedOrder(q));
    }
    let label = |x: usize, y: usize| x * q + y + 1;
    let mut blocks = Vec::with_capacity(q * (q + 1));
    for m in 0..q {
        for c in 0..q {
            blocks.push((0..q).map(|x| label(x, (m * x + c) % q)).collect());
        }
    }
    for c in 0..q {
        blocks.push((0..q).map(|y| label(c, y)).collect());
    }
    BlockDesign::from_blocks(q * q, blocks)
}

/// Number of test treatments in each block of an augmented design.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AugmentationSpec {
    /// The same `s` tests in every block.
    Common(usize),
    /// `s_j` tests in block `j`.
    PerBlock(Vec<usize>),
}

impl AugmentationSpec {
    pub fn validate(&self, b: usize) -> Result<()> {
        match self {
            Self::Common(0) => Err(Error::ZeroAugmentation),
            Self::Common(_) => Ok(()),
            Self::PerBlock(s) if s.len() != b => Err(Error::AugmentationLength {
                expected: b,
                got: s.len(),
            }),
            Self::PerBlock(s) if s.contains(&0) => Err(Error::ZeroAugmentation),
            Self::PerBlock(_) => Ok(()),
        }
    }

    /// `s_j`.
    pub fn count(&self, j: usize) -> usize {
        match self {
            Self::Common(s) => *s,
            Self::PerBlock(s) => s[j],
        }
    }

    pub fn counts(&self, b: usize) -> Vec<usize> {
        (0..b).map(|j| self.count(j)).collect()
    }

    /// `S = Σ s_j`.
    pub fn total(&self, b: usize) -> usize {
        match self {
            Self::Common(s) => s * b,
            Self::PerBlock(s) => s.iter().sum(),
        }
    }

    /// `s₀ = min s_j`.
    pub fn min(&self) -> usize {
        match self {
            Self::Common(s) => *s,
            Self::PerBlock(s) => s.iter().copied().min().unwrap_or(0),
        }
    }

    /// `φ_jj* = s_j s_j* − s₀²`.
    pub fn phi(&self, j: usize, j_star: usize) -> usize {
        let s0 = self.min();
        self.count(j) * self.count(j_star) - s0 * s0
    }

    /// `Σ_{j<j*} φ_jj*`.
    pub fn phi_sum(&self, b: usize) -> usize {
        let mut acc = 0;
        for j in 0..b {
            for js in (j + 1)..b {
                acc += self.phi(j, js);
            }
        }
        acc
    }
}
