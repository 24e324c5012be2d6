//! Exhaustive lists of small noncrossing partitions.

use super::{labels_noncrossing, Color, ColoredPartition};

/// Restricted-growth labelings of `m` points that are noncrossing in the
/// given linear order.
pub(crate) fn noncrossing_labelings(m: usize, pairings_only: bool) -> Vec<Vec<usize>> {
    fn rec(m: usize, cur: &mut Vec<usize>, pairs: bool, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            let ok = !pairs || {
                let mut sizes = vec![0; m];
                cur.iter().for_each(|&x| sizes[x] += 1);
                sizes.iter().all(|&s| s == 0 || s == 2)
            };
            if ok && labels_noncrossing(cur) {
                out.push(cur.clone());
            }
            return;
        }
        let next = cur.iter().copied().max().map_or(0, |x| x + 1);
        for lab in 0..=next {
            cur.push(lab);
            rec(m, cur, pairs, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(m, &mut Vec::with_capacity(m), pairings_only, &mut out);
    out
}

fn build(k: usize, l: usize, pairings_only: bool, colors: Option<(&[Color], &[Color])>) -> Vec<ColoredPartition> {
    let m = k + l;
    // labelings are generated along the cyclic order, then mapped to points
    let cyc: Vec<usize> = (0..m).map(|i| if i < k { i } else { k + (l - 1 - (i - k)) }).collect();
    let mut out = Vec::new();
    for lab in noncrossing_labelings(m, pairings_only) {
        let mut by_point = vec![0; m];
        for (point, &pos) in cyc.iter().enumerate() {
            by_point[point] = lab[pos];
        }
        match colors {
            Some((u, d)) => out.push(ColoredPartition::from_labels(u.to_vec(), d.to_vec(), &by_point)),
            None => {
                for mask in 0u32..(1 << m) {
                    let c = |i: usize| if mask >> i & 1 == 1 { Color::Black } else { Color::White };
                    let upper = (0..k).map(c).collect();
                    let lower = (k..m).map(c).collect();
                    out.push(ColoredPartition::from_labels(upper, lower, &by_point));
                }
            }
        }
    }
    out.sort();
    out
}

/// Every noncrossing partition in `P(k, l)` with every coloring.
pub fn noncrossing(k: usize, l: usize) -> Vec<ColoredPartition> {
    build(k, l, false, None)
}

/// Every noncrossing pair partition in `P(k, l)` with every coloring.
pub fn noncrossing_pairings(k: usize, l: usize) -> Vec<ColoredPartition> {
    build(k, l, true, None)
}

/// Noncrossing partitions in `P(k, l)` with fixed colors.
pub fn noncrossing_colored(upper: &[Color], lower: &[Color], pairings_only: bool) -> Vec<ColoredPartition> {
    build(upper.len(), lower.len(), pairings_only, Some((upper, lower)))
}
