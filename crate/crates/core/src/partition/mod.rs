//! Two-row colored set partitions and the four category operations.
//!
//! Points are numbered from zero: the `k` upper points come first (left to
//! right), followed by the `l` lower points (left to right). The text format
//! (see [`ColoredPartition::from_str`](std::str::FromStr)) numbers the same
//! points from one.

mod category;
mod enumerate;
mod oneline;
mod text;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use category::{generate_category, k_param, CategoryConfig, KParam, PartitionCategorySample};
pub use enumerate::{noncrossing, noncrossing_colored, noncrossing_pairings};
pub use oneline::OneLine;
pub use text::ParsePartitionError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("color mismatch: lower colors {lower} of the upper factor do not match upper colors {upper} of the lower factor")]
    ColorMismatch { lower: String, upper: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("cannot rotate from an empty row")]
    EmptyRow,
    #[error("invalid block structure: {0}")]
    InvalidBlocks(String),
    #[error("seed partition with {points} points exceeds max_points = {max_points}")]
    BoundTooSmall { points: usize, max_points: usize },
    #[error("max_points = {0} is outside the supported range 2..={max}", max = oneline::MAX_POINTS)]
    BoundOutOfRange(usize),
}

/// Point color. White corresponds to `u`, black to its conjugate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Color {
    White,
    Black,
}

impl Color {
    pub fn inverted(self) -> Self {
        match self {
            Color::White => Color::Black,
            Color::Black => Color::White,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Color::White => 'w',
            Color::Black => 'b',
        }
    }

    pub fn from_letter(c: char) -> Option<Self> {
        match c {
            'w' => Some(Color::White),
            'b' => Some(Color::Black),
            _ => None,
        }
    }
}

pub(crate) fn color_string(colors: &[Color]) -> String {
    colors.iter().map(|c| c.letter()).collect()
}

/// The corner a point is rotated from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Corner {
    /// Leftmost upper point moves to the left end of the lower row.
    UpperLeft,
    /// Rightmost upper point moves to the right end of the lower row.
    UpperRight,
    /// Leftmost lower point moves to the left end of the upper row.
    LowerLeft,
    /// Rightmost lower point moves to the right end of the upper row.
    LowerRight,
}

impl Corner {
    pub const ALL: [Corner; 4] = [
        Corner::UpperLeft,
        Corner::UpperRight,
        Corner::LowerLeft,
        Corner::LowerRight,
    ];

    /// The rotation undoing this one.
    pub fn inverse(self) -> Self {
        match self {
            Corner::UpperLeft => Corner::LowerLeft,
            Corner::LowerLeft => Corner::UpperLeft,
            Corner::UpperRight => Corner::LowerRight,
            Corner::LowerRight => Corner::UpperRight,
        }
    }
}

/// A partition of `k` upper and `l` lower colored points, kept in canonical
/// form: blocks sorted by their smallest point, points ascending within each
/// block.
///
/// The derived ordering (sizes, then colors, then blocks) is the canonical
/// order used whenever a search has to pick "the first" partition.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ColoredPartition {
    k: usize,
    l: usize,
    upper: Vec<Color>,
    lower: Vec<Color>,
    blocks: Vec<Vec<usize>>,
}

/// `(c_white, c_black, c)` with `c = c_white - c_black`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ColorCounts {
    pub c_white: usize,
    pub c_black: usize,
    pub c: i64,
}

impl ColoredPartition {
    /// Builds a partition from zero-based blocks, validating that they are
    /// nonempty, disjoint and cover every point.
    pub fn new(
        upper: Vec<Color>,
        lower: Vec<Color>,
        blocks: Vec<Vec<usize>>,
    ) -> Result<Self, PartitionError> {
        let total = upper.len() + lower.len();
        let mut seen = vec![false; total];
        for block in &blocks {
            if block.is_empty() {
                return Err(PartitionError::InvalidBlocks("empty block".into()));
            }
            for &i in block {
                if i >= total {
                    return Err(PartitionError::InvalidBlocks(format!(
                        "point {} out of range for {total} points",
                        i + 1
                    )));
                }
                if seen[i] {
                    return Err(PartitionError::InvalidBlocks(format!(
                        "point {} occurs twice",
                        i + 1
                    )));
                }
                seen[i] = true;
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(PartitionError::InvalidBlocks(format!(
                "point {} is not covered",
                missing + 1
            )));
        }
        Ok(Self::from_parts_unchecked(upper, lower, blocks))
    }

    /// Builds a partition from a block label per point (labels arbitrary).
    pub fn from_labels(upper: Vec<Color>, lower: Vec<Color>, labels: &[usize]) -> Self {
        assert_eq!(labels.len(), upper.len() + lower.len());
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut slot: Vec<Option<usize>> = Vec::new();
        for (i, &lab) in labels.iter().enumerate() {
            if lab >= slot.len() {
                slot.resize(lab + 1, None);
            }
            match slot[lab] {
                Some(b) => blocks[b].push(i),
                None => {
                    slot[lab] = Some(blocks.len());
                    blocks.push(vec![i]);
                }
            }
        }
        // first-appearance order already yields blocks sorted by minimum
        Self {
            k: upper.len(),
            l: lower.len(),
            upper,
            lower,
            blocks,
        }
    }

    pub(crate) fn from_parts_unchecked(
        upper: Vec<Color>,
        lower: Vec<Color>,
        mut blocks: Vec<Vec<usize>>,
    ) -> Self {
        for b in &mut blocks {
            b.sort_unstable();
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Self {
            k: upper.len(),
            l: lower.len(),
            upper,
            lower,
            blocks,
        }
    }

    /// The partition with no points.
    pub fn empty() -> Self {
        Self::from_parts_unchecked(vec![], vec![], vec![])
    }

    /// The identity partition on one point of the given color.
    pub fn identity(color: Color) -> Self {
        Self::from_parts_unchecked(vec![color], vec![color], vec![vec![0, 1]])
    }

    /// Identity with independently chosen upper and lower colors, e.g. the
    /// white/black identity generating the free orthogonal category.
    pub fn identity_colored(upper: Color, lower: Color) -> Self {
        Self::from_parts_unchecked(vec![upper], vec![lower], vec![vec![0, 1]])
    }

    /// `id^{⊗m}` with all points white.
    pub fn identity_power(m: usize) -> Self {
        let colors = vec![Color::White; m];
        Self::from_parts_unchecked(
            colors.clone(),
            colors,
            (0..m).map(|i| vec![i, m + i]).collect(),
        )
    }

    /// Pair partition in `P(0,2)` (a "cup").
    pub fn pair(first: Color, second: Color) -> Self {
        Self::from_parts_unchecked(vec![], vec![first, second], vec![vec![0, 1]])
    }

    /// Pair partition in `P(2,0)` (a "cap").
    pub fn cap(first: Color, second: Color) -> Self {
        Self::from_parts_unchecked(vec![first, second], vec![], vec![vec![0, 1]])
    }

    /// A single lower point.
    pub fn singleton(color: Color) -> Self {
        Self::from_parts_unchecked(vec![], vec![color], vec![vec![0]])
    }

    /// One block on lower points with the given colors.
    pub fn block(colors: &[Color]) -> Self {
        let blocks = if colors.is_empty() {
            vec![]
        } else {
            vec![(0..colors.len()).collect()]
        };
        Self::from_parts_unchecked(vec![], colors.to_vec(), blocks)
    }

    /// `b_s`: a single block on `s` white lower points.
    pub fn b(s: usize) -> Self {
        Self::block(&vec![Color::White; s])
    }

    /// One block on `k` upper and `l` lower points, all white.
    pub fn full_block(k: usize, l: usize) -> Self {
        let blocks = if k + l == 0 {
            vec![]
        } else {
            vec![(0..k + l).collect()]
        };
        Self::from_parts_unchecked(vec![Color::White; k], vec![Color::White; l], blocks)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn points(&self) -> usize {
        self.k + self.l
    }

    pub fn upper_colors(&self) -> &[Color] {
        &self.upper
    }

    pub fn lower_colors(&self) -> &[Color] {
        &self.lower
    }

    /// Zero-based blocks in canonical order.
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn color_of(&self, point: usize) -> Color {
        if point < self.k {
            self.upper[point]
        } else {
            self.lower[point - self.k]
        }
    }

    pub fn is_all_white(&self) -> bool {
        self.upper
            .iter()
            .chain(&self.lower)
            .all(|&c| c == Color::White)
    }

    /// Block index for every point.
    pub fn block_labels(&self) -> Vec<usize> {
        let mut labels = vec![0; self.points()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                labels[i] = b;
            }
        }
        labels
    }

    /// Side-by-side placement, `p` on the left.
    pub fn tensor(&self, q: &ColoredPartition) -> ColoredPartition {
        let (k1, l1, k2) = (self.k, self.l, q.k);
        let k = k1 + k2;
        let map_p = |i: usize| if i < k1 { i } else { k2 + i };
        let map_q = |i: usize| if i < k2 { k1 + i } else { k + l1 + (i - k2) };
        let mut blocks: Vec<Vec<usize>> = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| map_p(i)).collect())
            .collect();
        blocks.extend(q.blocks.iter().map(|b| b.iter().map(|&i| map_q(i)).collect()));
        let mut upper = self.upper.clone();
        upper.extend_from_slice(&q.upper);
        let mut lower = self.lower.clone();
        lower.extend_from_slice(&q.lower);
        Self::from_parts_unchecked(upper, lower, blocks)
    }

    /// Tensor power; `p^{⊗0}` is the empty partition.
    pub fn tensor_power(&self, m: usize) -> ColoredPartition {
        (0..m).fold(Self::empty(), |acc, _| acc.tensor(self))
    }

    /// `qp`: places `p` (here `upper`) above `self` and returns the result
    /// together with the number of blocks that lie entirely in the middle row.
    pub fn compose(&self, upper: &ColoredPartition) -> Result<(ColoredPartition, usize), PartitionError> {
        let (p, q) = (upper, self);
        if p.lower != q.upper {
            return Err(PartitionError::ColorMismatch {
                lower: color_string(&p.lower),
                upper: color_string(&q.upper),
            });
        }
        let (k, mid, m) = (p.k, p.l, q.l);
        let nodes = k + mid + m;
        let mut uf = UnionFind::new(nodes);
        for block in &p.blocks {
            for w in block.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        // q's upper points are the middle row k..k+mid, its lower points follow
        for block in &q.blocks {
            let ids: Vec<usize> = block.iter().map(|&i| k + i).collect();
            for w in ids.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        let mut outer: Vec<Option<usize>> = vec![None; nodes];
        let mut touched = vec![false; nodes];
        let mut labels = Vec::with_capacity(k + m);
        let mut next = 0;
        for node in (0..k).chain(k + mid..nodes) {
            let root = uf.find(node);
            touched[root] = true;
            let lab = *outer[root].get_or_insert_with(|| {
                next += 1;
                next - 1
            });
            labels.push(lab);
        }
        let mut removed = 0;
        let mut counted = vec![false; nodes];
        for node in k..k + mid {
            let root = uf.find(node);
            if !touched[root] && !counted[root] {
                counted[root] = true;
                removed += 1;
            }
        }
        let result = Self::from_labels(p.upper.clone(), q.lower.clone(), &labels);
        Ok((result, removed))
    }

    /// Reflection at the horizontal axis.
    pub fn involute(&self) -> ColoredPartition {
        let (k, l) = (self.k, self.l);
        let map = |i: usize| if i < k { l + i } else { i - k };
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| map(i)).collect())
            .collect();
        Self::from_parts_unchecked(self.lower.clone(), self.upper.clone(), blocks)
    }

    /// Moves one corner point to the other row, inverting its color.
    pub fn rotate(&self, corner: Corner) -> Result<ColoredPartition, PartitionError> {
        let (k, l) = (self.k, self.l);
        let mut upper = self.upper.clone();
        let mut lower = self.lower.clone();
        let map: Box<dyn Fn(usize) -> usize> = match corner {
            Corner::UpperLeft => {
                if k == 0 {
                    return Err(PartitionError::EmptyRow);
                }
                let c = upper.remove(0);
                lower.insert(0, c.inverted());
                Box::new(move |i| if i == 0 { k - 1 } else if i < k { i - 1 } else { i })
            }
            Corner::UpperRight => {
                if k == 0 {
                    return Err(PartitionError::EmptyRow);
                }
                let c = upper.pop().expect("nonempty");
                lower.push(c.inverted());
                Box::new(move |i| if i + 1 == k { k - 1 + l } else if i < k { i } else { i - 1 })
            }
            Corner::LowerLeft => {
                if l == 0 {
                    return Err(PartitionError::EmptyRow);
                }
                let c = lower.remove(0);
                upper.insert(0, c.inverted());
                Box::new(move |i| if i < k { i + 1 } else if i == k { 0 } else { i })
            }
            Corner::LowerRight => {
                if l == 0 {
                    return Err(PartitionError::EmptyRow);
                }
                let c = lower.pop().expect("nonempty");
                upper.push(c.inverted());
                Box::new(move |i| if i < k { i } else if i == k + l - 1 { k } else { i + 1 })
            }
        };
        let blocks = self
            .blocks
            .iter()
            .map(|b| b.iter().map(|&i| map(i)).collect())
            .collect();
        Ok(Self::from_parts_unchecked(upper, lower, blocks))
    }

    /// Position of each point in the cyclic boundary order: upper row left to
    /// right, then lower row right to left.
    pub(crate) fn cyclic_positions(&self) -> Vec<usize> {
        let (k, l) = (self.k, self.l);
        (0..k + l)
            .map(|i| if i < k { i } else { k + (l - 1 - (i - k)) })
            .collect()
    }

    pub fn is_noncrossing(&self) -> bool {
        let pos = self.cyclic_positions();
        let mut by_pos = vec![0usize; self.points()];
        for (b, block) in self.blocks.iter().enumerate() {
            for &i in block {
                by_pos[pos[i]] = b;
            }
        }
        labels_noncrossing(&by_pos)
    }

    /// `p = p* = p²`.
    pub fn is_projective(&self) -> bool {
        if self.k != self.l || self.upper != self.lower {
            return false;
        }
        if self.involute() != *self {
            return false;
        }
        match self.compose(self) {
            Ok((pp, _)) => pp == *self,
            Err(_) => false,
        }
    }

    /// `self ≺ p`: `p·self = self·p = self` and `self ≠ p`.
    pub fn precedes(&self, p: &ColoredPartition) -> Result<bool, PartitionError> {
        let q = self;
        if q.k != p.k || q.l != p.l || q.upper != p.upper || q.lower != p.lower {
            return Err(PartitionError::ShapeMismatch(format!(
                "{q} and {p} differ in size or colors"
            )));
        }
        if !q.is_projective() || !p.is_projective() {
            return Err(PartitionError::ShapeMismatch(
                "precedence is only defined between projective partitions".into(),
            ));
        }
        if q == p {
            return Ok(false);
        }
        let (pq, _) = p.compose(q)?;
        let (qp, _) = q.compose(p)?;
        Ok(pq == *q && qp == *q)
    }

    pub fn color_counts(&self) -> ColorCounts {
        let count = |row: &[Color], c: Color| row.iter().filter(|&&x| x == c).count();
        let c_white = count(&self.lower, Color::White) + count(&self.upper, Color::Black);
        let c_black = count(&self.lower, Color::Black) + count(&self.upper, Color::White);
        ColorCounts {
            c_white,
            c_black,
            c: c_white as i64 - c_black as i64,
        }
    }
}

/// True iff no two labels interleave as `a .. b .. a .. b` in the sequence.
pub(crate) fn labels_noncrossing(seq: &[usize]) -> bool {
    // a label that is reopened after another label was opened inside it
    // without that inner label being finished is a crossing
    let mut last = vec![0usize; seq.iter().copied().max().map_or(0, |m| m + 1)];
    for (i, &x) in seq.iter().enumerate() {
        last[x] = i;
    }
    let mut stack: Vec<usize> = Vec::new();
    for (i, &x) in seq.iter().enumerate() {
        if stack.last() == Some(&x) {
            if last[x] == i {
                stack.pop();
            }
            continue;
        }
        if stack.contains(&x) {
            return false;
        }
        if last[x] != i {
            stack.push(x);
        }
    }
    true
}

impl fmt::Display for ColoredPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "P({},{};{};{};{{",
            self.k,
            self.l,
            color_string(&self.upper),
            color_string(&self.lower)
        )?;
        for (bi, block) in self.blocks.iter().enumerate() {
            if bi > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, &i) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", i + 1)?;
            }
            f.write_str("}")?;
        }
        f.write_str("})")
    }
}

impl Serialize for ColoredPartition {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
