//! The linear maps `T_p : (C^n)^{⊗k} → (C^n)^{⊗l}`.
//!
//! Basis vectors `e_{i(1)} ⊗ … ⊗ e_{i(k)}` are indexed big-endian with
//! zero-based digits, so `T_{p⊗q}` is the Kronecker product `T_p ⊗ T_q`.

use num_bigint::BigInt;
use num_traits::{One, Pow};

use super::matrix::IntMatrix;
use super::LinearError;
use crate::partition::ColoredPartition;

const DEFAULT_MAX_ENTRIES: u128 = 10_000_000;

/// The size cap on `n^max(k,l)`; overridable through `EASYQG_MAX_ENTRIES`.
pub fn max_entries() -> u128 {
    std::env::var("EASYQG_MAX_ENTRIES")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_MAX_ENTRIES)
}

fn checked_pow(n: usize, e: usize) -> Option<u128> {
    (0..e).try_fold(1u128, |acc, _| acc.checked_mul(n as u128))
}

/// 1 iff every block of `p` carries a single index value. Indices run over
/// `1..=n`; `i` labels the upper points, `j` the lower ones.
pub fn delta_p(p: &ColoredPartition, i: &[usize], j: &[usize], n: usize) -> Result<u8, LinearError> {
    if i.len() != p.k() || j.len() != p.l() {
        return Err(LinearError::ShapeMismatch(format!(
            "multi-indices of lengths {} and {} for {p}",
            i.len(),
            j.len()
        )));
    }
    if let Some(&bad) = i.iter().chain(j).find(|&&x| x == 0 || x > n) {
        return Err(LinearError::IndexOutOfRange { index: bad, n });
    }
    let value = |pt: usize| if pt < p.k() { i[pt] } else { j[pt - p.k()] };
    let constant = p
        .blocks()
        .iter()
        .all(|b| b.iter().all(|&pt| value(pt) == value(b[0])));
    Ok(constant as u8)
}

/// The 0/1 matrix of `T_p` with `n^l` rows and `n^k` columns.
pub fn t_map(p: &ColoredPartition, n: usize) -> Result<IntMatrix, LinearError> {
    if n == 0 {
        return Err(LinearError::ShapeMismatch("n must be at least 1".into()));
    }
    let cap = max_entries();
    let side = checked_pow(n, p.k().max(p.l())).filter(|&s| s <= cap);
    let Some(_) = side else {
        return Err(LinearError::SizeOverflow {
            n,
            exponent: p.k().max(p.l()),
            cap,
        });
    };
    let (k, l) = (p.k(), p.l());
    let rows = n.pow(l as u32);
    let cols = n.pow(k as u32);
    let labels = p.block_labels();
    let blocks = p.blocks().len();
    // every assignment of a value to each block yields one nonzero entry
    let mut entries = Vec::new();
    let mut values = vec![0usize; blocks];
    loop {
        let col = (0..k).fold(0, |acc, pt| acc * n + values[labels[pt]]);
        let row = (k..k + l).fold(0, |acc, pt| acc * n + values[labels[pt]]);
        entries.push((row, col, BigInt::one()));
        let mut b = 0;
        while b < blocks {
            values[b] += 1;
            if values[b] < n {
                break;
            }
            values[b] = 0;
            b += 1;
        }
        if b == blocks {
            break;
        }
    }
    Ok(IntMatrix::from_entries(rows, cols, entries))
}

/// `T_{p⊗q} = T_p ⊗ T_q`.
pub fn check_tensor(p: &ColoredPartition, q: &ColoredPartition, n: usize) -> Result<bool, LinearError> {
    Ok(t_map(&p.tensor(q), n)? == t_map(p, n)?.kron(&t_map(q, n)?))
}

/// `T_q T_p = n^{b(p,q)} T_{qp}`.
pub fn check_composition(q: &ColoredPartition, p: &ColoredPartition, n: usize) -> Result<bool, LinearError> {
    let (qp, b) = q.compose(p)?;
    let lhs = t_map(q, n)?.mul(&t_map(p, n)?);
    let factor: BigInt = Pow::pow(BigInt::from(n), b);
    Ok(lhs == t_map(&qp, n)?.scale(&factor))
}

/// `T_{p*} = (T_p)^t`.
pub fn check_involution(p: &ColoredPartition, n: usize) -> Result<bool, LinearError> {
    Ok(t_map(&p.involute(), n)? == t_map(p, n)?.transpose())
}

/// All three identities for a composable pair (`p` above `q`).
pub fn check_functoriality(p: &ColoredPartition, q: &ColoredPartition, n: usize) -> Result<bool, LinearError> {
    Ok(check_composition(q, p, n)?
        && check_tensor(p, q, n)?
        && check_involution(p, n)?
        && check_involution(q, n)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::Color::{Black as B, White as W};

    fn lit(s: &str) -> ColoredPartition {
        s.parse().unwrap()
    }

    #[test]
    fn delta_examples() {
        let id = ColoredPartition::identity(W);
        assert_eq!(delta_p(&id, &[3], &[3], 3).unwrap(), 1);
        assert_eq!(delta_p(&ColoredPartition::pair(W, W), &[], &[1, 2], 2).unwrap(), 0);
        assert_eq!(delta_p(&ColoredPartition::b(4), &[], &[2, 2, 2, 2], 3).unwrap(), 1);
        assert!(matches!(
            delta_p(&id, &[4], &[1], 3),
            Err(LinearError::IndexOutOfRange { index: 4, n: 3 })
        ));
    }

    #[test]
    fn identity_and_cup() {
        assert_eq!(t_map(&ColoredPartition::identity(W), 3).unwrap(), IntMatrix::identity(3));
        let cup = t_map(&ColoredPartition::pair(W, W), 2).unwrap();
        // one column: e1⊗e1 + e2⊗e2, i.e. rows 0 and 3
        assert_eq!((cup.rows(), cup.cols()), (4, 1));
        let support: Vec<usize> = cup.entries().map(|(r, _, _)| r).collect();
        assert_eq!(support, vec![0, 3]);
    }

    #[test]
    fn t_map_agrees_with_delta() {
        let p = lit("P(2,2;wb;bw;{{1,4},{2},{3}})");
        let n = 3;
        let t = t_map(&p, n).unwrap();
        for col in 0..9 {
            for row in 0..9 {
                let i = [col / 3 + 1, col % 3 + 1];
                let j = [row / 3 + 1, row % 3 + 1];
                assert_eq!(t.get(row, col), BigInt::from(delta_p(&p, &i, &j, n).unwrap()));
            }
        }
    }

    #[test]
    fn loop_factor() {
        let cup = ColoredPartition::pair(W, W);
        let cap = ColoredPartition::cap(W, W);
        let v = t_map(&cap, 2).unwrap().mul(&t_map(&cup, 2).unwrap());
        assert_eq!(v.get(0, 0), BigInt::from(2));
        assert!(check_composition(&cap, &cup, 2).unwrap());
    }

    #[test]
    fn functoriality_examples() {
        let p = lit("P(1,2;w;wb;{{1,2},{3}})");
        let q = lit("P(2,3;wb;bww;{{1,3},{2,4,5}})");
        assert!(check_functoriality(&p, &q, 2).unwrap());
        assert!(check_functoriality(&p, &q, 3).unwrap());
        assert!(check_involution(&ColoredPartition::b(3), 2).unwrap());
        let bad = ColoredPartition::identity(B);
        assert!(matches!(
            check_composition(&bad, &ColoredPartition::identity(W), 2),
            Err(LinearError::Partition(_))
        ));
    }

    #[test]
    fn size_cap() {
        assert!(matches!(
            t_map(&ColoredPartition::b(30), 4),
            Err(LinearError::SizeOverflow { .. })
        ));
    }
}
