//! Fusion rings of the free easy quantum groups.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::label::{FusionVector, IrrepLabel};
use super::word::{FreeWord, Word};
use super::FusionError;
use crate::partition::{Color, UnionFind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `O_n^+`: `u_k ⊗ u_l` by the Clebsch–Gordan rule, fundamental `u_1`.
    Orthogonal,
    /// `S_n^+`: even labels only, fundamental `u_0 + u_2`.
    Symmetric,
    /// `H_n^{s+}`: words over `Z/sZ`, fundamental `r_1`.
    Reflection(u32),
    /// `U_n^+`: words over `{α, ᾱ}` with no product term, fundamental `α`.
    Unitary,
}

impl Family {
    /// Accepts `O+`, `S+`, `U+`, `H+` (with `s` supplied separately).
    pub fn parse(name: &str, s: Option<u32>) -> Result<Self, FusionError> {
        match (name, s) {
            ("O+", _) => Ok(Family::Orthogonal),
            ("S+", _) => Ok(Family::Symmetric),
            ("U+", _) => Ok(Family::Unitary),
            ("H+", Some(s)) if s >= 1 => Ok(Family::Reflection(s)),
            ("H+", _) => Err(FusionError::InvalidLabel("H+ needs s ≥ 1".into())),
            _ => Err(FusionError::InvalidLabel(format!("unknown family {name:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Orthogonal => f.write_str("O+"),
            Family::Symmetric => f.write_str("S+"),
            Family::Reflection(s) => write!(f, "H+(s={s})"),
            Family::Unitary => f.write_str("U+"),
        }
    }
}

/// `u_k ⊗ u_l = u_{|k−l|} + u_{|k−l|+2} + … + u_{k+l}`.
pub fn su2_decompose(k: u64, l: u64) -> FusionVector {
    let lo = k.abs_diff(l);
    (0..=k.min(l))
        .map(|i| (IrrepLabel::U(lo + 2 * i), BigInt::one()))
        .collect()
}

pub fn so3_decompose(k: u64, l: u64) -> Result<FusionVector, FusionError> {
    if k % 2 == 1 || l % 2 == 1 {
        return Err(FusionError::OddLabel(if k % 2 == 1 { k } else { l }));
    }
    Ok(su2_decompose(k, l))
}

/// `r_x ⊗ r_y = Σ_{x = vz, y = z̄w} (r_{vw} + r_{v·w})`, the product term
/// present only when `v` and `w` are both nonempty.
pub fn h_decompose(x: &Word, y: &Word) -> Result<FusionVector, FusionError> {
    if x.modulus() != y.modulus() {
        return Err(FusionError::ModulusMismatch(x.modulus(), y.modulus()));
    }
    let mut out = FusionVector::new();
    for t in 0..=x.len().min(y.len()) {
        let (v, z) = x.split_at(x.len() - t);
        let (zbar, w) = y.split_at(t);
        if z.involution() != zbar {
            continue;
        }
        out.add_term(IrrepLabel::R(v.concat(&w)), BigInt::one());
        if let Some(vw) = v.fuse(&w) {
            out.add_term(IrrepLabel::R(vw), BigInt::one());
        }
    }
    Ok(out)
}

/// `r_x ⊗ r_y = Σ_{x = vz, y = z̄w} r_{vw}` in the free monoid on two letters.
pub fn free_decompose(x: &FreeWord, y: &FreeWord) -> FusionVector {
    let mut out = FusionVector::new();
    for t in 0..=x.len().min(y.len()) {
        let (v, z) = x.0.split_at(x.len() - t);
        let (zbar, w) = y.0.split_at(t);
        if FreeWord(z.to_vec()).involution().0 != zbar {
            continue;
        }
        let mut vw = v.to_vec();
        vw.extend_from_slice(w);
        out.add_term(IrrepLabel::F(FreeWord(vw)), BigInt::one());
    }
    out
}

/// Where a closed form for the degree is known.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reach {
    Degree(u64),
    Never,
}

/// The co-occurrence classes of the powers of the fundamental.
#[derive(Debug, Clone, PartialEq, Eq, serde::Serialize)]
pub struct ChainGroup {
    /// Number of classes, or 0 when the last level still opened a new class.
    pub order: u64,
    /// Class index of each level `0..=level_cap`.
    pub level_class: Vec<usize>,
    /// Whether `[ℓ] + [ℓ'] = [ℓ + ℓ']` is well defined on the computed range.
    pub additive: bool,
    pub labels_seen: usize,
}

pub struct FusionRing {
    family: Family,
    powers: RwLock<Vec<Arc<FusionVector>>>,
}

impl fmt::Debug for FusionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FusionRing").field("family", &self.family).finish()
    }
}

impl FusionRing {
    pub fn new(family: Family) -> Self {
        Self {
            family,
            powers: RwLock::new(Vec::new()),
        }
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn trivial(&self) -> IrrepLabel {
        match self.family {
            Family::Orthogonal | Family::Symmetric => IrrepLabel::U(0),
            Family::Reflection(s) => IrrepLabel::R(Word::empty(s)),
            Family::Unitary => IrrepLabel::F(FreeWord(vec![])),
        }
    }

    pub fn fundamental(&self) -> FusionVector {
        match self.family {
            Family::Orthogonal => FusionVector::single(IrrepLabel::U(1)),
            Family::Symmetric => FusionVector::from_terms([(IrrepLabel::U(0), 1), (IrrepLabel::U(2), 1)]),
            Family::Reflection(s) => FusionVector::single(IrrepLabel::R(Word::letter(1, s))),
            Family::Unitary => FusionVector::single(IrrepLabel::F(FreeWord(vec![Color::White]))),
        }
    }

    pub fn check_label(&self, label: &IrrepLabel) -> Result<(), FusionError> {
        match (self.family, label) {
            (Family::Orthogonal, IrrepLabel::U(_)) => Ok(()),
            (Family::Symmetric, IrrepLabel::U(k)) if k % 2 == 0 => Ok(()),
            (Family::Symmetric, IrrepLabel::U(k)) => Err(FusionError::OddLabel(*k)),
            (Family::Reflection(s), IrrepLabel::R(w)) if w.modulus() == s => Ok(()),
            (Family::Reflection(s), IrrepLabel::R(w)) => Err(FusionError::ModulusMismatch(s, w.modulus())),
            (Family::Unitary, IrrepLabel::F(_)) => Ok(()),
            (family, l) => Err(FusionError::WrongFamily(format!("{l} is not a label of {family}"))),
        }
    }

    /// Parses `u<k>`, `r[a,b,...]` (optionally suffixed `@s`) or `f[wb...]`.
    pub fn parse_label(&self, text: &str) -> Result<IrrepLabel, FusionError> {
        let bad = || FusionError::InvalidLabel(format!("cannot parse label {text:?}"));
        let label = if let Some(k) = text.strip_prefix('u') {
            IrrepLabel::U(k.parse().map_err(|_| bad())?)
        } else if let Some(rest) = text.strip_prefix("r[") {
            let (body, suffix) = rest.split_once(']').ok_or_else(bad)?;
            let s = match (suffix.strip_prefix('@'), self.family) {
                (Some(m), _) => m.parse().map_err(|_| bad())?,
                (None, Family::Reflection(s)) if suffix.is_empty() => s,
                _ => return Err(bad()),
            };
            let letters = if body.is_empty() {
                vec![]
            } else {
                body.split(',')
                    .map(|a| a.trim().parse::<u32>().map_err(|_| bad()))
                    .collect::<Result<_, _>>()?
            };
            IrrepLabel::R(Word::new(letters, s)?)
        } else if let Some(body) = text.strip_prefix("f[").and_then(|r| r.strip_suffix(']')) {
            let colors = body
                .chars()
                .map(|c| Color::from_letter(c).ok_or_else(bad))
                .collect::<Result<_, _>>()?;
            IrrepLabel::F(FreeWord(colors))
        } else {
            return Err(bad());
        };
        self.check_label(&label)?;
        Ok(label)
    }

    /// Contragredient label.
    pub fn conjugate(&self, label: &IrrepLabel) -> IrrepLabel {
        match label {
            IrrepLabel::U(k) => IrrepLabel::U(*k),
            IrrepLabel::R(w) => IrrepLabel::R(w.involution()),
            IrrepLabel::F(w) => IrrepLabel::F(w.involution()),
        }
    }

    pub fn decompose(&self, a: &IrrepLabel, b: &IrrepLabel) -> Result<FusionVector, FusionError> {
        self.check_label(a)?;
        self.check_label(b)?;
        Ok(match (a, b) {
            (IrrepLabel::U(k), IrrepLabel::U(l)) => su2_decompose(*k, *l),
            (IrrepLabel::R(x), IrrepLabel::R(y)) => h_decompose(x, y)?,
            (IrrepLabel::F(x), IrrepLabel::F(y)) => free_decompose(x, y),
            _ => unreachable!("labels checked against the family"),
        })
    }

    pub fn multiply(&self, a: &FusionVector, b: &FusionVector) -> Result<FusionVector, FusionError> {
        let mut out = FusionVector::new();
        for (x, m) in a.iter() {
            for (y, k) in b.iter() {
                for (z, c) in self.decompose(x, y)?.iter() {
                    out.add_term(z.clone(), m * k * c);
                }
            }
        }
        Ok(out)
    }

    /// `g^{⊗ℓ}` for an arbitrary element `g`.
    pub fn power_of(&self, g: &FusionVector, l: usize) -> Result<FusionVector, FusionError> {
        let mut acc = FusionVector::single(self.trivial());
        for _ in 0..l {
            acc = self.multiply(&acc, g)?;
        }
        Ok(acc)
    }

    /// `u^{⊗ℓ}` for the fundamental `u`, memoized by level.
    pub fn power(&self, l: usize) -> Arc<FusionVector> {
        if let Some(p) = self.powers.read().expect("memo lock").get(l) {
            return Arc::clone(p);
        }
        let mut memo = self.powers.write().expect("memo lock");
        if memo.is_empty() {
            memo.push(Arc::new(FusionVector::single(self.trivial())));
        }
        let u = self.fundamental();
        while memo.len() <= l {
            let last = memo.last().expect("nonempty");
            let next = self.multiply(last, &u).expect("labels of the ring");
            memo.push(Arc::new(next));
        }
        Arc::clone(&memo[l])
    }

    /// Closed-form degree, where one is known.
    pub fn degree_hint(&self, label: &IrrepLabel) -> Option<Reach> {
        match label {
            IrrepLabel::U(k) => match self.family {
                Family::Orthogonal => Some(Reach::Degree(*k)),
                Family::Symmetric => Some(Reach::Degree(k / 2)),
                _ => None,
            },
            IrrepLabel::R(w) => Some(Reach::Degree(w.letter_sum())),
            IrrepLabel::F(w) => Some(if w.0.iter().all(|&c| c == Color::White) {
                Reach::Degree(w.len() as u64)
            } else {
                Reach::Never
            }),
        }
    }

    /// Smallest `ℓ ≤ level_cap` with `label ≤ u^{⊗ℓ}`, found by scanning the
    /// powers in order.
    pub fn degree(&self, label: &IrrepLabel, level_cap: usize) -> Result<u64, FusionError> {
        self.check_label(label)?;
        (0..=level_cap)
            .find(|&l| self.power(l).contains(label))
            .map(|l| l as u64)
            .ok_or_else(|| FusionError::NotReachable {
                label: label.to_string(),
                level_cap,
            })
    }

    /// Number of letters of a reflection-family label.
    pub fn length(&self, label: &IrrepLabel) -> Result<usize, FusionError> {
        match (self.family, label) {
            (Family::Reflection(_), IrrepLabel::R(w)) => {
                self.check_label(label)?;
                Ok(w.len())
            }
            _ => Err(FusionError::WrongFamily(format!(
                "length is defined for reflection-family words, not {label} in {}",
                self.family
            ))),
        }
    }

    /// Labels co-occurring in one power of the fundamental are identified;
    /// the classes are then read off level by level.
    pub fn chain_group(&self, level_cap: usize) -> ChainGroup {
        let mut index: BTreeMap<IrrepLabel, usize> = BTreeMap::new();
        let mut first_of_level = Vec::with_capacity(level_cap + 1);
        let mut edges = Vec::new();
        for l in 0..=level_cap {
            let power = self.power(l);
            let ids: Vec<usize> = power
                .support()
                .map(|lab| {
                    let next = index.len();
                    *index.entry(lab.clone()).or_insert(next)
                })
                .collect();
            first_of_level.push(ids[0]);
            edges.extend(ids.windows(2).map(|w| (w[0], w[1])));
        }
        let mut uf = UnionFind::new(index.len());
        for (a, b) in edges {
            uf.union(a, b);
        }
        let mut class_ids: BTreeMap<usize, usize> = BTreeMap::new();
        let level_class: Vec<usize> = first_of_level
            .iter()
            .map(|&id| {
                let root = uf.find(id);
                let next = class_ids.len();
                *class_ids.entry(root).or_insert(next)
            })
            .collect();
        let last = level_class[level_cap];
        let opened_last = level_class[..level_cap].iter().all(|&c| c != last);
        let order = if opened_last { 0 } else { class_ids.len() as u64 };
        let additive = (0..=level_cap).all(|a| {
            (0..=level_cap).all(|b| {
                (0..=level_cap - a.max(b)).all(|c| {
                    level_class[a] != level_class[b] || level_class[a + c] == level_class[b + c]
                })
            })
        });
        ChainGroup {
            order,
            level_class,
            additive,
            labels_seen: index.len(),
        }
    }

    /// Smallest `n` for which dimensions are defined.
    pub fn min_n(&self) -> usize {
        match self.family {
            Family::Symmetric => 4,
            _ => 2,
        }
    }

    /// Size of a label used to bound the dimension solver.
    fn weight(label: &IrrepLabel) -> u64 {
        match label {
            IrrepLabel::U(k) => *k,
            IrrepLabel::R(w) => w.letter_sum(),
            IrrepLabel::F(w) => w.len() as u64,
        }
    }

    fn dim_seeds(&self, n: &BigInt) -> Result<Vec<(IrrepLabel, BigInt)>, FusionError> {
        let one = BigInt::one();
        Ok(match self.family {
            Family::Orthogonal => vec![(IrrepLabel::U(0), one), (IrrepLabel::U(1), n.clone())],
            Family::Symmetric => vec![(IrrepLabel::U(0), one), (IrrepLabel::U(2), n - 1)],
            Family::Reflection(s) if s >= 2 => {
                let mut v = vec![(IrrepLabel::R(Word::empty(s)), one)];
                for a in 1..s {
                    v.push((IrrepLabel::R(Word::letter(a, s)), n.clone()));
                }
                v.push((IrrepLabel::R(Word::letter(s, s)), n - 1));
                v
            }
            Family::Reflection(_) => {
                return Err(FusionError::WrongFamily(
                    "dimensions need s ≥ 2: for s = 1 the letter r_1 is not the fundamental".into(),
                ))
            }
            Family::Unitary => vec![
                (IrrepLabel::F(FreeWord(vec![])), one),
                (IrrepLabel::F(FreeWord(vec![Color::White])), n.clone()),
                (IrrepLabel::F(FreeWord(vec![Color::Black])), n.clone()),
            ],
        })
    }

    /// `dim` fixed by multiplicativity: each product `x ⊗ g` of a known label
    /// with a seed label with exactly one unknown summand determines it.
    pub fn dim(&self, label: &IrrepLabel, n: usize) -> Result<BigInt, FusionError> {
        self.check_label(label)?;
        if n < self.min_n() {
            return Err(FusionError::DimensionPrecondition { n, min: self.min_n() });
        }
        let nb = BigInt::from(n);
        let seeds = self.dim_seeds(&nb)?;
        let mut known: BTreeMap<IrrepLabel, BigInt> = seeds.iter().cloned().collect();
        let bound = Self::weight(label);
        let mut done: BTreeSet<IrrepLabel> = BTreeSet::new();
        // passes over the known labels until the target is found or a pass
        // determines nothing new
        while !known.contains_key(label) {
            let mut progress = false;
            let pending: Vec<IrrepLabel> = known.keys().filter(|x| !done.contains(*x)).cloned().collect();
            for x in pending {
                let mut settled = true;
                for (g, dg) in &seeds {
                    let prod = self.decompose(&x, g)?;
                    let lhs = &known[&x] * dg;
                    let mut rest = lhs.clone();
                    let mut unknown = Vec::new();
                    for (y, m) in prod.iter() {
                        match known.get(y) {
                            Some(dy) => rest -= m * dy,
                            None => unknown.push((y.clone(), m.clone())),
                        }
                    }
                    match unknown.as_slice() {
                        [] if !rest.is_zero() => {
                            return Err(FusionError::InconsistentDimension(format!(
                                "dim({x})·dim({g}) = {lhs} disagrees with the decomposition {prod}"
                            )))
                        }
                        [] => {}
                        [(y, m)] if Self::weight(y) <= bound => {
                            let (q, r) = rest.div_rem(m);
                            if !r.is_zero() || !q.is_positive() {
                                return Err(FusionError::InconsistentDimension(format!(
                                    "solving {x} ⊗ {g} gives dim({y}) = {rest}/{m}"
                                )));
                            }
                            known.insert(y.clone(), q);
                            progress = true;
                        }
                        _ => settled = false,
                    }
                }
                if settled {
                    done.insert(x);
                }
            }
            if !progress {
                break;
            }
        }
        known.get(label).cloned().ok_or_else(|| {
            FusionError::InconsistentDimension(format!("no determining equation reached {label}"))
        })
    }
}
