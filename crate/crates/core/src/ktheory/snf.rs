//! Smith normal form and presentations of cokernels.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::linear::IntMatrix;

/// `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_m` with `1 < d_1 | d_2 | … | d_m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FGAbelianGroup {
    #[serde(rename = "rank")]
    pub free_rank: usize,
    #[serde(serialize_with = "serialize_ints")]
    pub torsion: Vec<BigInt>,
}

pub(crate) fn serialize_ints<S: serde::Serializer>(v: &[BigInt], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        match i64::try_from(x) {
            Ok(small) => seq.serialize_element(&small)?,
            Err(_) => seq.serialize_element(&x.to_string())?,
        }
    }
    seq.end()
}

impl FGAbelianGroup {
    pub fn free(rank: usize) -> Self {
        Self { free_rank: rank, torsion: vec![] }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Number of elements, or `None` for an infinite group.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion.iter().product())
    }

    /// `#{g : kg = 0}`, or `None` when infinite.
    pub fn killed_by(&self, k: u64) -> Option<BigInt> {
        if self.free_rank > 0 && k == 0 {
            return None;
        }
        let k = BigInt::from(k);
        Some(
            self.torsion
                .iter()
                .map(|d| if k.is_zero() { d.clone() } else { k.gcd(d) })
                .product(),
        )
    }
}

impl fmt::Display for FGAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

type Dense = Vec<Vec<BigInt>>;

fn dense(m: &IntMatrix) -> Dense {
    let mut a = vec![vec![BigInt::zero(); m.cols()]; m.rows()];
    for (r, c, v) in m.entries() {
        a[r][c] = v.clone();
    }
    a
}

fn identity(n: usize) -> Dense {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect()
}

fn to_matrix(a: &Dense, rows: usize, cols: usize) -> IntMatrix {
    IntMatrix::from_entries(
        rows,
        cols,
        a.iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone()))),
    )
}

/// Dense reduction state; `u·m·v = a` and `u·uinv = 1` hold after every step.
struct Reduction {
    a: Dense,
    u: Dense,
    uinv: Dense,
    v: Dense,
    rows: usize,
    cols: usize,
}

impl Reduction {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            self.u.swap(i, j);
            for row in &mut self.uinv {
                row.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in self.a.iter_mut().chain(self.v.iter_mut()) {
                row.swap(i, j);
            }
        }
    }

    /// row_i ← row_i + q·row_t
    fn add_row(&mut self, i: usize, t: usize, q: &BigInt) {
        for c in 0..self.cols {
            let x = &self.a[t][c] * q;
            self.a[i][c] += x;
        }
        for c in 0..self.rows {
            let x = &self.u[t][c] * q;
            self.u[i][c] += x;
        }
        // inverse operation on columns: col_t ← col_t − q·col_i
        for row in &mut self.uinv {
            let x = &row[i] * q;
            row[t] -= x;
        }
    }

    /// col_j ← col_j + q·col_t
    fn add_col(&mut self, j: usize, t: usize, q: &BigInt) {
        for row in self.a.iter_mut().chain(self.v.iter_mut()) {
            let x = &row[t] * q;
            row[j] += x;
        }
    }

    fn negate_row(&mut self, t: usize) {
        self.a[t].iter_mut().chain(self.u[t].iter_mut()).for_each(|x| *x = -x.clone());
        for row in &mut self.uinv {
            row[t] = -row[t].clone();
        }
    }

    /// Smallest absolute nonzero entry of the trailing block, ties by
    /// row-major position.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a[bi][bj].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) -> usize {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((i, j)) = self.pivot(t) else { break };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let mut dirty = false;
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let q = -(&self.a[i][t] / &self.a[t][t]);
                        self.add_row(i, t, &q);
                        dirty |= !self.a[i][t].is_zero();
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let q = -(&self.a[t][j] / &self.a[t][t]);
                        self.add_col(j, t, &q);
                        dirty |= !self.a[t][j].is_zero();
                    }
                }
                if dirty {
                    // a remainder smaller than the pivot survived
                    let (i, j) = self.pivot(t).expect("nonzero pivot");
                    self.swap_rows(t, i);
                    self.swap_cols(t, j);
                    continue;
                }
                let bad = (t + 1..self.rows).find(|&i| {
                    (t + 1..self.cols).any(|j| !self.a[i][j].is_multiple_of(&self.a[t][t]))
                });
                match bad {
                    Some(i) => self.add_row(t, i, &BigInt::one()),
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            t += 1;
        }
        t
    }
}

fn reduce(m: &IntMatrix) -> (Reduction, usize) {
    let mut red = Reduction {
        a: dense(m),
        u: identity(m.rows()),
        uinv: identity(m.rows()),
        v: identity(m.cols()),
        rows: m.rows(),
        cols: m.cols(),
    };
    let rank = red.run();
    (red, rank)
}

/// `(U, D, V)` with `U·M·V = D`, `U` and `V` unimodular and the diagonal of
/// `D` nonnegative with `d_1 | d_2 | …`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (red, _) = reduce(m);
    (
        to_matrix(&red.u, m.rows(), m.rows()),
        to_matrix(&red.a, m.rows(), m.cols()),
        to_matrix(&red.v, m.cols(), m.cols()),
    )
}

/// `Z^rows / M·Z^cols`.
pub fn cokernel(m: &IntMatrix) -> FGAbelianGroup {
    Presentation::new(m).group().clone()
}

pub fn kernel_rank(m: &IntMatrix) -> usize {
    Presentation::new(m).kernel_rank()
}

/// The cokernel of `M` with a chosen generating set, able to express the
/// class of any vector of `Z^rows` in that generating set.
///
/// Relations with a unit entry are used first (lowest Markowitz cost, then
/// column and row index) to eliminate a generator; the remaining block is put
/// in Smith form.
#[derive(Debug, Clone)]
pub struct Presentation {
    rows: usize,
    cols: usize,
    /// `(r, e)`: generator `r` was replaced by the combination `e`.
    steps: Vec<(usize, BTreeMap<usize, BigInt>)>,
    /// Surviving generators untouched by the remaining relations; each is a
    /// free generator on its own.
    idle: Vec<usize>,
    idle_index: BTreeMap<usize, usize>,
    /// Surviving generators met by the remaining relations, reduced densely.
    active: Vec<usize>,
    active_index: BTreeMap<usize, usize>,
    u: Dense,
    uinv: Dense,
    /// Dense rows carrying a generator: torsion rows with their orders, then
    /// free rows.
    torsion_rows: Vec<(usize, BigInt)>,
    free_rows: Vec<usize>,
    free_signs: Vec<bool>,
    rank: usize,
    group: FGAbelianGroup,
}

impl Presentation {
    pub fn new(m: &IntMatrix) -> Self {
        let (rows, cols) = (m.rows(), m.cols());
        let mut col_data: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); cols];
        let mut row_cols: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); rows];
        for (r, c, v) in m.entries() {
            col_data[c].insert(r, v.clone());
            row_cols[r].insert(c);
        }
        let mut alive_rows: BTreeSet<usize> = (0..rows).collect();
        let mut alive_cols: BTreeSet<usize> = (0..cols).filter(|&c| !col_data[c].is_empty()).collect();
        let mut steps = Vec::new();

        loop {
            let mut best: Option<(usize, usize, usize)> = None;
            for &c in &alive_cols {
                let clen = col_data[c].len() - 1;
                for (&r, x) in &col_data[c] {
                    if !x.abs().is_one() {
                        continue;
                    }
                    let cost = clen * (row_cols[r].len() - 1);
                    if best.is_none_or(|(b, _, _)| cost < b) {
                        best = Some((cost, c, r));
                    }
                }
                if best.is_some_and(|(b, _, _)| b == 0) {
                    break;
                }
            }
            let Some((_, c, r)) = best else { break };
            let pivot_col = std::mem::take(&mut col_data[c]);
            let p = pivot_col[&r].clone();
            // e_r = −p · Σ_{i≠r} M[i][c] e_i since p = ±1
            let expr: BTreeMap<usize, BigInt> = pivot_col
                .iter()
                .filter(|(&i, _)| i != r)
                .map(|(&i, x)| (i, -(&p * x)))
                .collect();
            for &i in pivot_col.keys() {
                row_cols[i].remove(&c);
            }
            let touched: Vec<usize> = row_cols[r].iter().copied().collect();
            for j in touched {
                let a = col_data[j][&r].clone();
                let q = &a * &p;
                for (&i, x) in &pivot_col {
                    let e = col_data[j].entry(i).or_insert_with(BigInt::zero);
                    *e -= &q * x;
                    if e.is_zero() {
                        col_data[j].remove(&i);
                        row_cols[i].remove(&j);
                    } else {
                        row_cols[i].insert(j);
                    }
                }
                debug_assert!(!col_data[j].contains_key(&r));
                if col_data[j].is_empty() {
                    alive_cols.remove(&j);
                }
            }
            alive_cols.remove(&c);
            alive_rows.remove(&r);
            steps.push((r, expr));
        }

        let residual_cols: Vec<usize> = alive_cols.into_iter().collect();
        let (active, idle): (Vec<usize>, Vec<usize>) =
            alive_rows.into_iter().partition(|r| !row_cols[*r].is_empty());
        let active_index: BTreeMap<usize, usize> = active.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let idle_index: BTreeMap<usize, usize> = idle.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let residual = IntMatrix::from_entries(
            active.len(),
            residual_cols.len(),
            residual_cols
                .iter()
                .enumerate()
                .flat_map(|(j, &c)| col_data[c].iter().map(move |(&r, x)| (r, j, x.clone())))
                .map(|(r, j, x)| (active_index[&r], j, x)),
        );
        let (red, rank) = reduce(&residual);
        let torsion_rows: Vec<(usize, BigInt)> = (0..rank)
            .filter(|&t| !red.a[t][t].is_one())
            .map(|t| (t, red.a[t][t].clone()))
            .collect();
        let free_rows: Vec<usize> = (rank..active.len()).collect();
        let free_rank = idle.len() + free_rows.len();
        let group = FGAbelianGroup {
            free_rank,
            torsion: torsion_rows.iter().map(|(_, d)| d.clone()).collect(),
        };
        Presentation {
            rows,
            cols,
            rank: steps.len() + rank,
            steps,
            idle,
            idle_index,
            active,
            active_index,
            free_signs: vec![false; free_rank],
            u: red.u,
            uinv: red.uinv,
            torsion_rows,
            free_rows,
            group,
        }
    }

    pub fn group(&self) -> &FGAbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn kernel_rank(&self) -> usize {
        self.cols - self.rank
    }

    /// Number of coordinates: free generators first, then torsion.
    pub fn generators(&self) -> usize {
        self.group.free_rank + self.torsion_rows.len()
    }

    /// `v` rewritten over the surviving generators: idle part, active part.
    fn residual(&self, v: &BTreeMap<usize, BigInt>) -> (Vec<BigInt>, Vec<BigInt>) {
        let mut v = v.clone();
        for (r, expr) in &self.steps {
            if let Some(a) = v.remove(r) {
                for (&i, x) in expr {
                    let e = v.entry(i).or_insert_with(BigInt::zero);
                    *e += &a * x;
                }
            }
        }
        let mut idle = vec![BigInt::zero(); self.idle.len()];
        let mut active = vec![BigInt::zero(); self.active.len()];
        for (i, x) in v {
            assert!(i < self.rows, "vector index {i} outside 0..{}", self.rows);
            if let Some(&k) = self.idle_index.get(&i) {
                idle[k] += x;
            } else {
                active[self.active_index[&i]] += x;
            }
        }
        (idle, active)
    }

    /// Coordinates of the class of `v`: free coordinates, then torsion
    /// coordinates reduced into `0..d`.
    pub fn coordinates(&self, v: &BTreeMap<usize, BigInt>) -> Vec<BigInt> {
        let (idle, w) = self.residual(v);
        let dot = |row: usize| -> BigInt { self.u[row].iter().zip(&w).map(|(a, b)| a * b).sum() };
        let mut out = Vec::with_capacity(self.generators());
        out.extend(idle);
        out.extend(self.free_rows.iter().map(|&row| dot(row)));
        for (k, sign) in self.free_signs.iter().enumerate() {
            if *sign {
                out[k] = -out[k].clone();
            }
        }
        for (row, d) in &self.torsion_rows {
            out.push(dot(*row).mod_floor(d));
        }
        out
    }

    /// A vector of `Z^rows` whose class is generator `k`.
    pub fn lift(&self, k: usize) -> BTreeMap<usize, BigInt> {
        let sign = |x: BigInt| if k < self.free_signs.len() && self.free_signs[k] { -x } else { x };
        if k < self.idle.len() {
            return [(self.idle[k], sign(BigInt::one()))].into();
        }
        let row = if k < self.group.free_rank {
            self.free_rows[k - self.idle.len()]
        } else {
            self.torsion_rows[k - self.group.free_rank].0
        };
        self.active
            .iter()
            .enumerate()
            .filter(|(i, _)| !self.uinv[*i][row].is_zero())
            .map(|(i, &r)| (r, sign(self.uinv[i][row].clone())))
            .collect()
    }

    /// Flips free generators so the class of `v` has nonnegative free
    /// coordinates.
    pub fn orient(&mut self, v: &BTreeMap<usize, BigInt>) {
        self.free_signs.iter_mut().for_each(|s| *s = false);
        let c = self.coordinates(v);
        for (sign, x) in self.free_signs.iter_mut().zip(&c) {
            *sign = x.is_negative();
        }
    }

    /// Torsion orders in coordinate order, `0` marking a free coordinate.
    pub fn orders(&self) -> Vec<BigInt> {
        std::iter::repeat_n(BigInt::zero(), self.group.free_rank)
            .chain(self.torsion_rows.iter().map(|(_, d)| d.clone()))
            .collect()
    }
}
