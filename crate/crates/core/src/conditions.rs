//! Conditions (C1)/(C2) on fusion rings and (C_P1)/(C_P2) on categories.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::fusion::{Family, FusionRing, IrrepLabel, Reach};
use crate::linear::{cp1_witness_check, LinearError};
use crate::partition::{
    k_param, Color, ColoredPartition, KParam, PartitionCategorySample,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Undetermined,
}

/// Generators of the category of each family.
pub fn category_generators(family: Family) -> Vec<ColoredPartition> {
    use Color::{Black as B, White as W};
    match family {
        Family::Orthogonal => vec![ColoredPartition::identity_colored(W, B)],
        Family::Symmetric => vec![
            ColoredPartition::identity_colored(W, B),
            ColoredPartition::singleton(W),
            ColoredPartition::full_block(2, 2),
        ],
        Family::Reflection(s) => vec![ColoredPartition::b(s as usize), ColoredPartition::block(&[W, W, B, B])],
        Family::Unitary => vec![],
    }
}

/// The labels in `u^{⊗ℓ}` for some `ℓ ≤ cap`, in label order.
pub fn labels_up_to(ring: &FusionRing, cap: usize) -> Vec<IrrepLabel> {
    let set: BTreeSet<IrrepLabel> = (0..=cap).flat_map(|l| ring.power(l).support().cloned().collect::<Vec<_>>()).collect();
    set.into_iter().collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C1Witness {
    pub v: IrrepLabel,
    /// `v'` with `1 ≤ v ⊗ v'`, if one was found.
    pub v_prime: Option<IrrepLabel>,
    /// A level `ℓ` with `v' ≤ u^{⊗ℓ}`, certifying `v' ∈ CatInd`.
    pub v_prime_degree: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C1Report {
    pub status: Status,
    pub degree_cap: usize,
    pub witnesses: Vec<C1Witness>,
}

/// For every irreducible `v` of degree at most `degree_cap`, looks for `v'`
/// in `CatInd` with `1 ≤ v ⊗ v'`. The contragredient is tried first, its
/// degree taken from the closed form; without one, labels of degree at most
/// `degree_cap` are searched.
pub fn check_c1(ring: &FusionRing, degree_cap: usize) -> C1Report {
    let labels = labels_up_to(ring, degree_cap);
    let trivial = ring.trivial();
    let works = |v: &IrrepLabel, w: &IrrepLabel| {
        ring.decompose(v, w).map(|d| d.contains(&trivial)).unwrap_or(false)
    };
    let mut status = Status::Holds;
    let mut witnesses = Vec::with_capacity(labels.len());
    for v in &labels {
        let conj = ring.conjugate(v);
        let hint = ring.degree_hint(&conj);
        let found = match hint {
            Some(Reach::Degree(d)) if works(v, &conj) => Some((conj.clone(), d)),
            _ => labels
                .iter()
                .find(|w| works(v, w))
                .map(|w| (w.clone(), ring.degree(w, degree_cap).expect("label taken from the powers"))),
        };
        if found.is_none() {
            // only the contragredient can contain the trivial label
            let verdict = match hint {
                Some(Reach::Never) => Status::Fails,
                _ => Status::Undetermined,
            };
            if status != Status::Fails {
                status = verdict;
            }
        }
        witnesses.push(C1Witness {
            v: v.clone(),
            v_prime_degree: found.as_ref().map(|f| f.1),
            v_prime: found.map(|f| f.0),
        });
    }
    C1Report {
        status,
        degree_cap,
        witnesses,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct C2Report {
    pub status: Status,
    pub level_cap: usize,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    pub k0: Option<u64>,
}

/// `k_0` is the least `t > 0` with `Hom(u^{⊗ℓ}, u^{⊗(ℓ+t)}) ≠ 0` for some
/// `ℓ`, i.e. with intersecting supports; `N ≥ 1` is the least level with
/// `u^{⊗N} ≤ u^{⊗(N+k_0)}` counted with multiplicity.
pub fn check_c2(ring: &FusionRing, level_cap: usize) -> C2Report {
    let supports: Vec<BTreeSet<IrrepLabel>> = (0..=level_cap)
        .map(|l| ring.power(l).support().cloned().collect())
        .collect();
    let k0 = (1..=level_cap).find(|&t| {
        (0..=level_cap - t).any(|l| !supports[l].is_disjoint(&supports[l + t]))
    });
    let Some(k0) = k0 else {
        // no k_0 within the cap
        return C2Report {
            status: Status::Fails,
            level_cap,
            n: None,
            k0: None,
        };
    };
    let n = (1..=level_cap.saturating_sub(k0)).find(|&n| ring.power(n + k0).dominates(&ring.power(n)));
    C2Report {
        status: if n.is_some() { Status::Holds } else { Status::Undetermined },
        level_cap,
        n: n.map(|x| x as u64),
        k0: Some(k0 as u64),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CpClassification {
    pub k: KParam,
    /// Clauses of the characterization that applied, among `a`..`d`.
    pub clauses: Vec<char>,
    pub cp1: Status,
    pub cp2: Status,
    #[serde(rename = "N")]
    pub n: Option<u64>,
    pub k0: Option<u64>,
    pub max_points: usize,
    pub saturated: bool,
}

/// Applies the four clauses: `k = 0` refutes both conditions; otherwise a
/// member `⊓ww ⊗ ⊓bb` or the `wwbb` block gives (C_P1), and (C_P2) holds
/// with `N = 1`, `k_0 = k`.
pub fn classify_cp(sample: &PartitionCategorySample) -> CpClassification {
    use Color::{Black as B, White as W};
    let k = k_param(sample);
    let mut clauses = Vec::new();
    let (cp1, cp2, n, k0);
    if k.value == 0 {
        let verdict = if sample.saturated() { Status::Fails } else { Status::Undetermined };
        clauses.push('a');
        (cp1, cp2, n, k0) = (verdict, verdict, None, None);
    } else {
        let double_pair = ColoredPartition::pair(W, W).tensor(&ColoredPartition::pair(B, B));
        if sample.contains(&double_pair) {
            clauses.push('b');
        }
        if sample.contains(&ColoredPartition::block(&[W, W, B, B])) {
            clauses.push('c');
        }
        clauses.push('d');
        let c1 = if clauses.len() > 1 { Status::Holds } else { Status::Undetermined };
        (cp1, cp2, n, k0) = (c1, Status::Holds, Some(1), Some(k.value));
    }
    CpClassification {
        k,
        clauses,
        cp1,
        cp2,
        n,
        k0,
        max_points: sample.max_points(),
        saturated: sample.saturated(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cp2Witness {
    pub r: ColoredPartition,
    #[serde(rename = "N")]
    pub n: u64,
    pub k0: u64,
}

/// The first all-white `r ∈ C(N + k_0, N)` (smallest `N ≥ 1`, then
/// canonical order) with `r r^* = id^{⊗N}`.
pub fn cp2_witness(sample: &PartitionCategorySample) -> Option<Cp2Witness> {
    let k0 = k_param(sample).value as usize;
    if k0 == 0 {
        return None;
    }
    let mut n = 1;
    while 2 * n + k0 <= sample.max_points() {
        let id = ColoredPartition::identity_power(n);
        for r in sample.white_members_at(n + k0, n) {
            if matches!(r.compose(&r.involute()), Ok((rr, _)) if rr == id) {
                return Some(Cp2Witness {
                    r,
                    n: n as u64,
                    k0: k0 as u64,
                });
            }
        }
        n += 1;
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cp1Witness {
    pub p: ColoredPartition,
    pub q: ColoredPartition,
    pub r: ColoredPartition,
    pub n: usize,
}

/// Searches projective all-white `q` and all-white `r ∈ C(0, a + b)` with
/// `(P_p ⊗ P_q) T_r ≠ 0`, smallest `q` first.
pub fn cp1_search(
    sample: &PartitionCategorySample,
    p: &ColoredPartition,
    n: usize,
) -> Result<Option<Cp1Witness>, LinearError> {
    let a = p.k();
    for b in 0..=(sample.max_points() / 2) {
        if a + b > sample.max_points() {
            break;
        }
        let rs = sample.white_members_at(0, a + b);
        if rs.is_empty() {
            continue;
        }
        for q in sample.white_members_at(b, b).into_iter().filter(ColoredPartition::is_projective) {
            if 2 * b > sample.max_points() {
                continue;
            }
            for r in &rs {
                if cp1_witness_check(sample, p, &q, r, n)? {
                    return Ok(Some(Cp1Witness {
                        p: p.clone(),
                        q,
                        r: r.clone(),
                        n,
                    }));
                }
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bounds {
    pub degree_cap: usize,
    pub level_cap: usize,
    pub max_points: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub family: String,
    pub c1: C1Report,
    pub c2: C2Report,
    pub cp: CpClassification,
    pub cp2_witness: Option<Cp2Witness>,
    pub cp1_witness: Option<Cp1Witness>,
    /// Fusion-level and partition-level verdicts coincide.
    pub consistent: bool,
    pub bounds_used: Bounds,
}

/// Everything for one family. The direct (C_P1) search uses `p = id` at
/// size `n`.
pub fn condition_report(
    ring: &FusionRing,
    sample: &PartitionCategorySample,
    bounds: Bounds,
    n: usize,
) -> Result<ConditionReport, LinearError> {
    let c1 = check_c1(ring, bounds.degree_cap);
    let c2 = check_c2(ring, bounds.level_cap);
    let cp = classify_cp(sample);
    let cp2_witness = cp2_witness(sample);
    let cp1_witness = cp1_search(sample, &ColoredPartition::identity(Color::White), n)?;
    let agree = |a: Status, b: Status| a == b || a == Status::Undetermined || b == Status::Undetermined;
    let consistent = agree(c1.status, cp.cp1)
        && agree(c2.status, cp.cp2)
        && (c2.status != Status::Holds || cp.cp2 != Status::Holds || (c2.k0 == cp.k0 && c2.n == cp.n));
    Ok(ConditionReport {
        family: ring.family().to_string(),
        c1,
        c2,
        cp,
        cp2_witness,
        cp1_witness,
        consistent,
        bounds_used: bounds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::{generate_category, CategoryConfig};

    fn sample(family: Family, bound: usize) -> PartitionCategorySample {
        generate_category(&category_generators(family), CategoryConfig::new(bound)).unwrap()
    }

    #[test]
    fn c1_by_family() {
        for family in [Family::Orthogonal, Family::Symmetric, Family::Reflection(2), Family::Reflection(3)] {
            let ring = FusionRing::new(family);
            let rep = check_c1(&ring, 6);
            assert_eq!(rep.status, Status::Holds, "{family}");
            for w in &rep.witnesses {
                let vp = w.v_prime.as_ref().unwrap();
                assert_eq!(vp, &ring.conjugate(&w.v));
                assert!(ring.decompose(&w.v, vp).unwrap().contains(&ring.trivial()));
                let d = w.v_prime_degree.unwrap() as usize;
                if d <= 8 {
                    assert!(ring.power(d).contains(vp));
                }
            }
        }
        let u = FusionRing::new(Family::Unitary);
        assert_eq!(check_c1(&u, 6).status, Status::Fails);
    }

    #[test]
    fn c2_by_family() {
        let expect = [
            (Family::Orthogonal, 2),
            (Family::Symmetric, 1),
            (Family::Reflection(2), 2),
            (Family::Reflection(3), 3),
            (Family::Reflection(4), 4),
        ];
        for (family, k0) in expect {
            let rep = check_c2(&FusionRing::new(family), 10);
            assert_eq!(rep.status, Status::Holds, "{family}");
            assert_eq!((rep.n, rep.k0), (Some(1), Some(k0)), "{family}");
        }
        let rep = check_c2(&FusionRing::new(Family::Unitary), 10);
        assert_eq!((rep.status, rep.k0), (Status::Fails, None));
    }

    #[test]
    fn partition_level_classification() {
        let o = classify_cp(&sample(Family::Orthogonal, 8));
        assert_eq!((o.cp1, o.cp2), (Status::Holds, Status::Holds));
        assert!(o.clauses.contains(&'b'));
        let u = classify_cp(&sample(Family::Unitary, 8));
        assert_eq!((u.cp1, u.cp2, u.clauses.clone()), (Status::Fails, Status::Fails, vec!['a']));
        let h3 = classify_cp(&sample(Family::Reflection(3), 8));
        assert_eq!(h3.clauses, vec!['c', 'd']);
        assert_eq!((h3.n, h3.k0), (Some(1), Some(3)));
        let h2 = classify_cp(&sample(Family::Reflection(2), 8));
        assert_eq!(h2.clauses, vec!['b', 'c', 'd']);
    }

    #[test]
    fn cp2_witnesses_compose_to_identity() {
        for (family, k0) in [(Family::Orthogonal, 2), (Family::Symmetric, 1), (Family::Reflection(3), 3)] {
            let w = cp2_witness(&sample(family, 8)).unwrap();
            assert_eq!((w.n, w.k0), (1, k0));
            assert_eq!((w.r.k(), w.r.l()), (1 + k0 as usize, 1));
            let (rr, _) = w.r.compose(&w.r.involute()).unwrap();
            assert_eq!(rr, ColoredPartition::identity(Color::White));
        }
        assert!(cp2_witness(&sample(Family::Unitary, 8)).is_none());
    }

    #[test]
    fn full_reports_are_consistent() {
        let bounds = Bounds {
            degree_cap: 6,
            level_cap: 10,
            max_points: 8,
        };
        for family in [Family::Orthogonal, Family::Symmetric, Family::Reflection(2), Family::Unitary] {
            let rep = condition_report(&FusionRing::new(family), &sample(family, 8), bounds, 2).unwrap();
            assert!(rep.consistent, "{family}");
            assert_eq!(rep.cp1_witness.is_some(), family != Family::Unitary, "{family}");
        }
    }
}
