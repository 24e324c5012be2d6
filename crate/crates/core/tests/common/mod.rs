//! Brute-force oracles shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::{HashSet, VecDeque};

use easyqg::linear::IntMatrix;
use easyqg::partition::ColoredPartition;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

pub type Dense = Vec<Vec<i128>>;

/// `T_p` straight from the definition: entry `(j, i)` is 1 when every block
/// carries a single index value. Upper index `i`, lower index `j`, both
/// big-endian.
pub fn brute_t(p: &ColoredPartition, n: usize) -> Dense {
    let (k, l) = (p.k(), p.l());
    let pts = k + l;
    let label = p.block_labels();
    let cols = n.pow(k as u32);
    let rows = n.pow(l as u32);
    let mut out = vec![vec![0i128; cols]; rows];
    // odometer over all index tuples, upper points first
    let mut idx = vec![0usize; pts];
    let mut first = vec![usize::MAX; pts];
    loop {
        first.iter_mut().for_each(|f| *f = usize::MAX);
        let mut ok = true;
        for (x, &b) in idx.iter().zip(&label) {
            if first[b] == usize::MAX {
                first[b] = *x;
            } else if first[b] != *x {
                ok = false;
                break;
            }
        }
        if ok {
            let c = idx[..k].iter().fold(0, |a, &d| a * n + d);
            let r = idx[k..].iter().fold(0, |a, &d| a * n + d);
            out[r][c] = 1;
        }
        let mut t = pts;
        loop {
            if t == 0 {
                return out;
            }
            t -= 1;
            idx[t] += 1;
            if idx[t] < n {
                break;
            }
            idx[t] = 0;
        }
    }
}

pub fn to_dense(m: &IntMatrix) -> Dense {
    let mut d = vec![vec![0i128; m.cols()]; m.rows()];
    for (r, c, v) in m.entries() {
        d[r][c] = v.to_i128().expect("small entry");
    }
    d
}

pub fn mul(a: &Dense, b: &Dense, inner: usize) -> Dense {
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| (0..inner).map(|t| row[t] * b[t][c]).sum())
                .collect()
        })
        .collect()
}

pub fn kron(a: &Dense, b: &Dense) -> Dense {
    let (br, bc) = (b.len(), b.first().map_or(0, Vec::len));
    let (ar, ac) = (a.len(), a.first().map_or(0, Vec::len));
    let mut out = vec![vec![0i128; ac * bc]; ar * br];
    for i in 0..ar {
        for j in 0..ac {
            for x in 0..br {
                for y in 0..bc {
                    out[i * br + x][j * bc + y] = a[i][j] * b[x][y];
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Dense, rows: usize, cols: usize) -> Dense {
    (0..cols).map(|c| (0..rows).map(|r| a[r][c]).collect()).collect()
}

const PRIME: i128 = 2_305_843_009_213_693_951; // 2^61 − 1

fn pow_mod(mut b: i128, mut e: i128) -> i128 {
    let mut acc = 1i128;
    b = b.rem_euclid(PRIME);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, b);
        }
        b = mulmod(b, b);
        e >>= 1;
    }
    acc
}

fn mulmod(a: i128, b: i128) -> i128 {
    // operands below 2^61; split b to stay inside i128
    let (hi, lo) = (b >> 31, b & ((1 << 31) - 1));
    ((a * hi % PRIME) * (1 << 31) % PRIME + a * lo % PRIME) % PRIME
}

/// Rank of the given rows modulo `2^61 − 1`.
pub fn rank_mod_p(mut rows: Vec<Vec<i128>>) -> usize {
    let cols = rows.first().map_or(0, Vec::len);
    for r in rows.iter_mut() {
        for x in r.iter_mut() {
            *x = x.rem_euclid(PRIME);
        }
    }
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = pow_mod(rows[rank][c], PRIME - 2);
        for x in rows[rank].iter_mut() {
            *x = mulmod(*x, inv);
        }
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c];
                for cc in 0..cols {
                    let v = mulmod(f, rows[rank][cc]);
                    rows[r][cc] = (rows[r][cc] - v).rem_euclid(PRIME);
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn catalan(k: u64) -> u64 {
    (0..k).fold(1u64, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

/// The quotient `Z^m / M Z^m` for a nonsingular square `M`, enumerated as
/// the cosets reachable from 0 by unit steps. A coset is identified by the
/// fractional part of `M^{-1} v`.
pub struct BruteQuotient {
    pub elements: Vec<Vec<BigRational>>,
}

fn inverse(m: &[Vec<i64>]) -> Option<Vec<Vec<BigRational>>> {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row.iter().map(|&x| BigRational::from_integer(x.into())).collect();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&r| !a[r][c].is_zero())?;
        a.swap(c, p);
        let inv = a[c][c].recip();
        for x in a[c].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != c && !a[r][c].is_zero() {
                let f = a[r][c].clone();
                for cc in 0..2 * n {
                    let v = &f * &a[c][cc];
                    a[r][cc] = &a[r][cc] - v;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn frac(x: &BigRational) -> BigRational {
    x - x.floor()
}

impl BruteQuotient {
    /// `None` when `M` is singular or the quotient exceeds `limit`.
    pub fn new(m: &[Vec<i64>], limit: usize) -> Option<Self> {
        let n = m.len();
        let inv = inverse(m)?;
        let zero = vec![BigRational::zero(); n];
        let mut seen: HashSet<Vec<BigRational>> = HashSet::from([zero.clone()]);
        let mut queue = VecDeque::from([zero]);
        let mut elements = Vec::new();
        while let Some(f) = queue.pop_front() {
            for e in 0..n {
                // f + M^{-1} e_e
                let g: Vec<BigRational> = (0..n).map(|i| frac(&(&f[i] + &inv[i][e]))).collect();
                if seen.insert(g.clone()) {
                    if seen.len() > limit {
                        return None;
                    }
                    queue.push_back(g);
                }
            }
            elements.push(f);
        }
        Some(Self { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// `#{g : kg = 0}`.
    pub fn killed_by(&self, k: u64) -> usize {
        let k = BigRational::from_integer(BigInt::from(k));
        self.elements
            .iter()
            .filter(|f| f.iter().all(|x| (x * &k).is_integer()))
            .count()
    }
}

pub fn int_matrix(rows: &[Vec<i64>]) -> IntMatrix {
    let v: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
    if v.is_empty() {
        return IntMatrix::zeros(0, 0);
    }
    IntMatrix::from_rows(&v)
}

pub fn abs_det_small(m: &IntMatrix) -> BigInt {
    m.determinant().abs()
}

/// The all-white partition with the same blocks; `T_p` depends only on it.
pub fn shadow(p: &ColoredPartition) -> ColoredPartition {
    use easyqg::partition::Color::White;
    ColoredPartition::from_labels(vec![White; p.k()], vec![White; p.l()], &p.block_labels())
}

fn scaled(m: Dense, s: i128) -> Dense {
    m.into_iter().map(|r| r.into_iter().map(|x| x * s).collect()).collect()
}

#[derive(Debug, Default)]
pub struct SuiteStats {
    pub partitions: usize,
    pub tensor_pairs: usize,
    pub compose_pairs: usize,
    pub shapes: usize,
}

/// Every noncrossing colored partition with at most `max_points` points,
/// grouped by point count.
pub fn nc_by_points(max_points: usize) -> Vec<Vec<ColoredPartition>> {
    (0..=max_points)
        .map(|total| (0..=total).flat_map(|k| easyqg::partition::noncrossing(k, total - k)).collect())
        .collect()
}

/// `T_{p*} = T_p^t` for all partitions, `T_{p⊗q} = T_p ⊗ T_q` for all pairs
/// with at most `max_points` points together, and `T_q T_p = n^b T_{qp}` for
/// all composable pairs with `k + m + l ≤ max_points`.
///
/// `t_map` is compared with the definition on every colored partition.
/// The identities are verified, with the library and with dense oracle
/// products, once per pair of block structures; every colored pair is then
/// checked to reduce to its block structures.
pub fn functoriality_suite(max_points: usize, ns: &[usize]) -> Result<SuiteStats, String> {
    use easyqg::linear::{check_composition, check_involution, check_tensor, t_map};
    use std::collections::HashMap;

    let sized = nc_by_points(max_points);
    let mut stats = SuiteStats::default();
    let mut brute: HashMap<(ColoredPartition, usize), Dense> = HashMap::new();
    let mut oracle = |p: &ColoredPartition, n: usize| -> Dense {
        brute.entry((shadow(p), n)).or_insert_with(|| brute_t(&shadow(p), n)).clone()
    };

    for p in sized.iter().flatten() {
        for &n in ns {
            let t = oracle(p, n);
            if to_dense(&t_map(p, n).map_err(|e| e.to_string())?) != t {
                return Err(format!("T_p differs from the definition for {p}, n={n}"));
            }
            let (rows, cols) = (n.pow(p.l() as u32), n.pow(p.k() as u32));
            if oracle(&p.involute(), n) != transpose(&t, rows, cols) || !check_involution(p, n).map_err(|e| e.to_string())? {
                return Err(format!("involution fails for {p}, n={n}"));
            }
        }
        stats.partitions += 1;
    }

    let mut tensor_seen: HashMap<(ColoredPartition, ColoredPartition), ColoredPartition> = HashMap::new();
    for a in 0..=max_points {
        for b in 0..=max_points - a {
            for p in &sized[a] {
                for q in &sized[b] {
                    let key = (shadow(p), shadow(q));
                    if !tensor_seen.contains_key(&key) {
                        let (sp, sq) = &key;
                        for &n in ns {
                            let direct = oracle(&sp.tensor(sq), n);
                            if direct != kron(&oracle(sp, n), &oracle(sq, n))
                                || !check_tensor(sp, sq, n).map_err(|e| e.to_string())?
                            {
                                return Err(format!("tensor fails for {sp} ⊗ {sq}, n={n}"));
                            }
                        }
                        tensor_seen.insert(key.clone(), sp.tensor(sq));
                        stats.shapes += 1;
                    }
                    if shadow(&p.tensor(q)) != tensor_seen[&key] {
                        return Err(format!("{p} ⊗ {q} has other blocks than its shadow"));
                    }
                    stats.tensor_pairs += 1;
                }
            }
        }
    }

    let all: Vec<&ColoredPartition> = sized.iter().flatten().collect();
    let mut by_upper: HashMap<Vec<easyqg::partition::Color>, Vec<&ColoredPartition>> = HashMap::new();
    for q in &all {
        by_upper.entry(q.upper_colors().to_vec()).or_default().push(q);
    }
    let mut compose_seen: HashMap<(ColoredPartition, ColoredPartition), (ColoredPartition, usize)> = HashMap::new();
    for p in &all {
        let Some(qs) = by_upper.get(p.lower_colors()) else { continue };
        for q in qs.iter().filter(|q| p.points() + q.l() <= max_points) {
            let key = (shadow(q), shadow(p));
            if !compose_seen.contains_key(&key) {
                let (sq, sp) = &key;
                let (qp, b) = sq.compose(sp).map_err(|e| e.to_string())?;
                for &n in ns {
                    let lhs = mul(&oracle(sq, n), &oracle(sp, n), n.pow(sp.l() as u32));
                    let rhs = scaled(oracle(&qp, n), (n as i128).pow(b as u32));
                    if lhs != rhs || !check_composition(sq, sp, n).map_err(|e| e.to_string())? {
                        return Err(format!("composition fails for {sq} ∘ {sp}, n={n}"));
                    }
                }
                compose_seen.insert(key.clone(), (qp, b));
                stats.shapes += 1;
            }
            let (qp, b) = q.compose(p).map_err(|e| e.to_string())?;
            let (sqp, sb) = &compose_seen[&key];
            if &shadow(&qp) != sqp || b != *sb {
                return Err(format!("{q} ∘ {p} differs from its shadow"));
            }
            stats.compose_pairs += 1;
        }
    }
    Ok(stats)
}
