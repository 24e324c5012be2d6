//! Bounded closures of categories of partitions.
//!
//! Every partition in a category is a composite of layers `id ⊗ g ⊗ id`
//! with `g` a rotated generator or a base pair partition. In one-line form a
//! layer juxtaposes a rotation of `g` after a cyclic shift of the current
//! partition and caps `j` nested mixed-color pairs across the seam. The
//! engine closes the set of one-line forms under these layer steps, cyclic
//! shifts and the involution, discarding anything longer than the bound.
//! Every intermediate stays within the bound, so a fixed point is a closed
//! sample in the bounded sense.

use std::collections::{BTreeSet, HashSet};

use rayon::prelude::*;
use serde::Serialize;

use super::oneline::{OneLine, MAX_POINTS};
use super::{Color, ColoredPartition, PartitionError, UnionFind};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CategoryConfig {
    pub max_points: usize,
    /// Closure passes before giving up; the sample is then unsaturated.
    pub max_passes: usize,
}

impl CategoryConfig {
    pub fn new(max_points: usize) -> Self {
        Self {
            max_points,
            max_passes: 64,
        }
    }
}

/// The members of `⟨generators⟩` with at most `max_points` points.
#[derive(Debug, Clone)]
pub struct PartitionCategorySample {
    generators: Vec<ColoredPartition>,
    max_points: usize,
    one_line: BTreeSet<OneLine>,
    saturated: bool,
    passes: usize,
}

impl PartitionCategorySample {
    pub fn generators(&self) -> &[ColoredPartition] {
        &self.generators
    }

    pub fn max_points(&self) -> usize {
        self.max_points
    }

    /// Whether the last closure pass produced nothing new.
    pub fn saturated(&self) -> bool {
        self.saturated
    }

    pub fn passes(&self) -> usize {
        self.passes
    }

    /// Members in `P(0, m)`; every other member is a rotation of one of them.
    pub fn one_line_members(&self) -> impl Iterator<Item = OneLine> + '_ {
        self.one_line.iter().copied()
    }

    /// Number of two-row members.
    pub fn len(&self) -> usize {
        self.one_line.iter().map(|o| o.len() + 1).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.one_line.is_empty()
    }

    pub fn contains(&self, p: &ColoredPartition) -> bool {
        p.points() <= self.max_points && self.one_line.contains(&OneLine::from_partition(p))
    }

    /// Members in `P(k, l)` in canonical order.
    pub fn members_at(&self, k: usize, l: usize) -> Vec<ColoredPartition> {
        let mut out: Vec<ColoredPartition> = self
            .one_line
            .iter()
            .filter(|o| o.len() == k + l)
            .map(|o| o.to_partition(k))
            .collect();
        out.sort();
        out
    }

    /// All-white members in `P(k, l)` in canonical order.
    pub fn white_members_at(&self, k: usize, l: usize) -> Vec<ColoredPartition> {
        let mut out = self.members_at(k, l);
        out.retain(ColoredPartition::is_all_white);
        out
    }

    /// All two-row members, grouped by point count, then by `k`.
    pub fn iter(&self) -> impl Iterator<Item = ColoredPartition> + '_ {
        (0..=self.max_points).flat_map(move |m| {
            (0..=m).flat_map(move |k| self.members_at(k, m - k))
        })
    }
}

fn base_pairs() -> [ColoredPartition; 4] {
    use Color::{Black as B, White as W};
    [
        ColoredPartition::identity(W),
        ColoredPartition::identity(B),
        ColoredPartition::pair(W, B),
        ColoredPartition::pair(B, W),
    ]
}

/// Closes `generators` together with the identity and mixed pair partitions.
pub fn generate_category(
    generators: &[ColoredPartition],
    config: CategoryConfig,
) -> Result<PartitionCategorySample, PartitionError> {
    let bound = config.max_points;
    if !(2..=MAX_POINTS).contains(&bound) {
        return Err(PartitionError::BoundOutOfRange(bound));
    }
    let mut gens = generators.to_vec();
    gens.sort();
    gens.dedup();
    let mut seed: BTreeSet<OneLine> = BTreeSet::new();
    for p in gens.iter().chain(base_pairs().iter()) {
        if p.points() > bound {
            return Err(PartitionError::BoundTooSmall {
                points: p.points(),
                max_points: bound,
            });
        }
        let o = OneLine::from_partition(p);
        for base in [o, o.involute()] {
            let mut r = base;
            for _ in 0..base.len().max(1) {
                seed.insert(r);
                r = r.shift();
            }
        }
    }
    let layers: Vec<OneLine> = seed.iter().copied().collect();

    let mut members: HashSet<OneLine> = seed.iter().copied().collect();
    members.insert(OneLine::from_partition(&ColoredPartition::empty()));
    let mut frontier: Vec<OneLine> = members.iter().copied().collect();
    frontier.sort();
    let mut passes = 0;
    while !frontier.is_empty() && passes < config.max_passes {
        passes += 1;
        let produced: Vec<Vec<OneLine>> = frontier
            .par_iter()
            .map(|&a| {
                let mut out = vec![a.shift(), a.involute()];
                for &g in &layers {
                    layer_steps(a, g, bound, &mut out);
                }
                out
            })
            .collect();
        let mut next: Vec<OneLine> = produced
            .into_iter()
            .flatten()
            .filter(|o| members.insert(*o))
            .collect();
        next.sort();
        frontier = next;
    }
    Ok(PartitionCategorySample {
        generators: gens,
        max_points: bound,
        one_line: members.into_iter().collect(),
        saturated: frontier.is_empty(),
        passes,
    })
}

/// Juxtapose `a` and `g`, then cap `j` nested pairs across the seam, for
/// every `j` keeping the result within `bound`.
fn layer_steps(a: OneLine, g: OneLine, bound: usize, out: &mut Vec<OneLine>) {
    let (la, lg) = (a.len(), g.len());
    let total = la + lg;
    let min_j = total.saturating_sub(bound).div_ceil(2);
    if min_j > la.min(lg) || total > MAX_POINTS {
        return;
    }
    let ag = a.juxtapose(g).expect("within the packing limit");
    let colors = ag.colors();
    let labels = ag.labels();
    let mut caps = 0;
    while caps < min_j {
        if colors[la - 1 - caps] == colors[la + caps] {
            return;
        }
        caps += 1;
    }
    for j in min_j..=la.min(lg) {
        if j > caps {
            if colors[la - 1 - caps] == colors[la + caps] {
                return;
            }
            caps += 1;
        }
        let mut uf = UnionFind::new(total);
        for t in 0..j {
            uf.union(labels[la - 1 - t] as usize, labels[la + t] as usize);
        }
        let keep: Vec<usize> = (0..la - j).chain(la + j..total).collect();
        let kept_colors: Vec<Color> = keep.iter().map(|&i| colors[i]).collect();
        let kept_labels: Vec<usize> = keep
            .iter()
            .map(|&i| uf.find(labels[i] as usize))
            .collect();
        out.push(OneLine::from_parts(&kept_colors, &kept_labels));
    }
}

/// `k(C)` computed on a sample.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KParam {
    pub value: u64,
    /// True when the sample is not saturated, so larger members might
    /// still lower the value.
    pub within_bound: bool,
}

/// The gcd of `|c(p)|` over the members; it is the least positive `c(p)`
/// because every `c(p)` is a multiple of it.
pub fn k_param(sample: &PartitionCategorySample) -> KParam {
    let value = sample
        .one_line
        .iter()
        .fold(0u64, |acc, o| num_integer::gcd(acc, o.c().unsigned_abs()));
    KParam {
        value,
        within_bound: !sample.saturated,
    }
}
