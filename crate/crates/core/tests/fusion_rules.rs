use std::collections::BTreeMap;

use easyqg::fusion::{Family, FreeWord, FusionRing, FusionVector, IrrepLabel, Word};
use easyqg::partition::Color;
use num_bigint::BigInt;
use num_traits::ToPrimitive;

/// Letters in `0..s`, zero kept as 0.
type Raw = Vec<u32>;

fn raw_product(x: &Raw, y: &Raw, s: u32) -> BTreeMap<Raw, i64> {
    let mut out = BTreeMap::new();
    for t in 0..=x.len().min(y.len()) {
        let v = &x[..x.len() - t];
        let z = &x[x.len() - t..];
        let zbar = &y[..t];
        let w = &y[t..];
        let ok = z.iter().rev().zip(zbar).all(|(a, b)| (a + b) % s == 0);
        if !ok {
            continue;
        }
        *out.entry([v, w].concat()).or_insert(0) += 1;
        if let (Some((&a, vh)), Some((&b, wt))) = (v.split_last(), w.split_first()) {
            *out.entry([vh, &[(a + b) % s], wt].concat()).or_insert(0) += 1;
        }
    }
    out
}

fn to_word(raw: &Raw, s: u32) -> IrrepLabel {
    IrrepLabel::R(Word::new(raw.iter().map(|&a| if a == 0 { s } else { a }).collect(), s).unwrap())
}

fn raw_words(max_len: usize, s: u32) -> Vec<Raw> {
    let mut all = vec![vec![]];
    let mut frontier = vec![vec![]];
    for _ in 0..max_len {
        frontier = frontier
            .iter()
            .flat_map(|w: &Raw| (0..s).map(move |a| [w.as_slice(), &[a]].concat()))
            .collect();
        all.extend(frontier.iter().cloned());
    }
    all
}

fn as_map(v: &FusionVector) -> BTreeMap<IrrepLabel, i64> {
    v.iter().map(|(l, m)| (l.clone(), m.to_i64().unwrap())).collect()
}

#[test]
fn reflection_rule_matches_independent_splitting() {
    for s in 1..=4 {
        let ring = FusionRing::new(Family::Reflection(s));
        let words = raw_words(if s <= 2 { 4 } else { 3 }, s);
        for x in &words {
            for y in &words {
                let expected: BTreeMap<IrrepLabel, i64> =
                    raw_product(x, y, s).iter().map(|(w, m)| (to_word(w, s), *m)).collect();
                let got = ring.decompose(&to_word(x, s), &to_word(y, s)).unwrap();
                assert_eq!(as_map(&got), expected, "s={s} {x:?}⊗{y:?}");
            }
        }
    }
}

/// Highest-weight peeling of the weight multiset of `u_k ⊗ u_l`.
fn su2_by_weights(k: i64, l: i64) -> BTreeMap<u64, i64> {
    let mut weights: BTreeMap<i64, i64> = BTreeMap::new();
    for a in (-k..=k).step_by(2) {
        for b in (-l..=l).step_by(2) {
            *weights.entry(a + b).or_insert(0) += 1;
        }
    }
    let mut out = BTreeMap::new();
    while let Some((&top, _)) = weights.iter().rev().find(|(_, &m)| m > 0) {
        *out.entry(top as u64).or_insert(0) += 1;
        for w in (-top..=top).step_by(2) {
            *weights.get_mut(&w).unwrap() -= 1;
        }
    }
    out
}

#[test]
fn clebsch_gordan_matches_weight_peeling() {
    let o = FusionRing::new(Family::Orthogonal);
    let so = FusionRing::new(Family::Symmetric);
    for k in 0..=9u64 {
        for l in 0..=9u64 {
            let expected: BTreeMap<IrrepLabel, i64> =
                su2_by_weights(k as i64, l as i64).into_iter().map(|(m, c)| (IrrepLabel::U(m), c)).collect();
            assert_eq!(as_map(&o.decompose(&IrrepLabel::U(k), &IrrepLabel::U(l)).unwrap()), expected);
            if k % 2 == 0 && l % 2 == 0 {
                assert_eq!(as_map(&so.decompose(&IrrepLabel::U(k), &IrrepLabel::U(l)).unwrap()), expected);
            } else {
                assert!(so.decompose(&IrrepLabel::U(k), &IrrepLabel::U(l)).is_err());
            }
        }
    }
}

fn free_words(max_len: usize) -> Vec<IrrepLabel> {
    raw_words(max_len, 2)
        .into_iter()
        .map(|w| IrrepLabel::F(FreeWord(w.iter().map(|&a| if a == 0 { Color::White } else { Color::Black }).collect())))
        .collect()
}

fn sample_labels(ring: &FusionRing) -> Vec<IrrepLabel> {
    match ring.family() {
        Family::Orthogonal => (0..=6).map(IrrepLabel::U).collect(),
        Family::Symmetric => (0..=6).step_by(2).map(IrrepLabel::U).collect(),
        Family::Reflection(s) => raw_words(3, s).iter().map(|w| to_word(w, s)).collect(),
        Family::Unitary => free_words(3),
    }
}

fn families() -> Vec<Family> {
    vec![
        Family::Orthogonal,
        Family::Symmetric,
        Family::Reflection(2),
        Family::Reflection(3),
        Family::Unitary,
    ]
}

#[test]
fn products_are_associative() {
    for family in families() {
        let ring = FusionRing::new(family);
        let labels = sample_labels(&ring);
        let small: Vec<_> = labels.iter().take(10).collect();
        for a in &small {
            for b in &small {
                for c in &small {
                    let va = FusionVector::single((*a).clone());
                    let vb = FusionVector::single((*b).clone());
                    let vc = FusionVector::single((*c).clone());
                    let left = ring.multiply(&ring.multiply(&va, &vb).unwrap(), &vc).unwrap();
                    let right = ring.multiply(&va, &ring.multiply(&vb, &vc).unwrap()).unwrap();
                    assert_eq!(left, right, "{family}: ({a}{b}){c}");
                }
            }
        }
    }
}

#[test]
fn frobenius_reciprocity() {
    for family in families() {
        let ring = FusionRing::new(family);
        let labels = sample_labels(&ring);
        for x in &labels {
            for y in &labels {
                let xy = ring.decompose(x, y).unwrap();
                for (z, m) in xy.iter() {
                    let back = ring.decompose(z, &ring.conjugate(y)).unwrap();
                    assert_eq!(&back.get(x), m, "{family}: {z} in {x}⊗{y}");
                }
                let trivial = ring.decompose(x, &ring.conjugate(y)).unwrap().get(&ring.trivial());
                assert_eq!(trivial, BigInt::from((x == y) as i64), "{family}: {x}, {y}");
            }
        }
    }
}

#[test]
fn dimensions_are_multiplicative() {
    for family in families() {
        let ring = FusionRing::new(family);
        let n = 5;
        let labels = sample_labels(&ring);
        for x in labels.iter().take(12) {
            for y in labels.iter().take(12) {
                let lhs = ring.dim(x, n).unwrap() * ring.dim(y, n).unwrap();
                let rhs: BigInt = ring
                    .decompose(x, y)
                    .unwrap()
                    .iter()
                    .map(|(z, m)| m * ring.dim(z, n).unwrap())
                    .sum();
                assert_eq!(lhs, rhs, "{family}: {x}⊗{y}");
            }
        }
    }
    let h = FusionRing::new(Family::Reflection(2));
    for n in 2..=6usize {
        let nb = BigInt::from(n);
        assert_eq!(h.dim(&h.parse_label("r[2]").unwrap(), n).unwrap(), &nb - 1);
        assert_eq!(h.dim(&h.parse_label("r[1,1]").unwrap(), n).unwrap(), &nb * &nb - &nb);
    }
    let s = FusionRing::new(Family::Symmetric);
    assert_eq!(s.dim(&IrrepLabel::U(4), 5).unwrap(), BigInt::from(25 - 15 + 1));
}

#[test]
fn degree_is_letter_sum() {
    for s in 2..=4u32 {
        let ring = FusionRing::new(Family::Reflection(s));
        for total in 0..=8u64 {
            for w in Word::with_letter_sum(total, s) {
                let label = IrrepLabel::R(w);
                assert_eq!(ring.degree(&label, 10).unwrap(), total, "s={s} {label}");
            }
        }
    }
}

#[test]
fn power_support_is_congruent_letter_sums() {
    for s in 2..=4u32 {
        let ring = FusionRing::new(Family::Reflection(s));
        for l in 0..=9u64 {
            let mut expected: Vec<IrrepLabel> = (0..=l)
                .filter(|t| (l - t) % s as u64 == 0)
                .flat_map(|t| Word::with_letter_sum(t, s))
                .map(IrrepLabel::R)
                .collect();
            expected.sort();
            let got: Vec<IrrepLabel> = ring.power(l as usize).support().cloned().collect();
            assert_eq!(got, expected, "s={s} ℓ={l}");
        }
    }
}

#[test]
fn reflection_levels_at_least_double() {
    for s in 2..=3u32 {
        let ring = FusionRing::new(Family::Reflection(s));
        for l in 0..=12usize {
            let a = ring.power(l).len();
            let b = ring.power(l + s as usize).len();
            assert!(b >= 2 * a, "s={s} ℓ={l}: {a} → {b}");
        }
    }
}

#[test]
fn orthogonal_and_symmetric_powers_are_explicit() {
    let o = FusionRing::new(Family::Orthogonal);
    let so = FusionRing::new(Family::Symmetric);
    let catalan = [1i64, 1, 2, 5, 14, 42];
    for l in 0..=10usize {
        let support: Vec<IrrepLabel> = o.power(l).support().cloned().collect();
        let expected: Vec<IrrepLabel> = (0..=l as u64).filter(|k| (l as u64 - k).is_multiple_of(2)).map(IrrepLabel::U).collect();
        assert_eq!(support, expected);
        let s_support: Vec<IrrepLabel> = so.power(l).support().cloned().collect();
        assert_eq!(s_support, (0..=l as u64).map(|k| IrrepLabel::U(2 * k)).collect::<Vec<_>>());
    }
    for (k, &c) in catalan.iter().enumerate() {
        assert_eq!(o.power(2 * k).get(&IrrepLabel::U(0)), BigInt::from(c));
        // multiplicity of the trivial label in (u_0 + u_2)^k
        assert_eq!(so.power(k).get(&IrrepLabel::U(0)), BigInt::from(c));
    }
}
