//! Irreducible labels and finitely supported combinations of them.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use super::word::{FreeWord, Word};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrrepLabel {
    /// `u_k` of the Clebsch–Gordan families.
    U(u64),
    /// `r_x` of a reflection family.
    R(Word),
    /// A word in the free unitary family.
    F(FreeWord),
}

impl IrrepLabel {
    pub fn is_trivial(&self) -> bool {
        match self {
            IrrepLabel::U(k) => *k == 0,
            IrrepLabel::R(w) => w.is_empty(),
            IrrepLabel::F(w) => w.is_empty(),
        }
    }
}

impl fmt::Display for IrrepLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IrrepLabel::U(k) => write!(f, "u{k}"),
            IrrepLabel::R(w) => write!(f, "{w}"),
            IrrepLabel::F(w) => write!(f, "{w}"),
        }
    }
}

impl Serialize for IrrepLabel {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// An integer combination of irreducible labels with no zero terms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FusionVector {
    terms: BTreeMap<IrrepLabel, BigInt>,
}

impl FusionVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn single(label: IrrepLabel) -> Self {
        let mut v = Self::new();
        v.add_term(label, BigInt::from(1));
        v
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (IrrepLabel, i64)>) -> Self {
        let mut v = Self::new();
        for (l, m) in terms {
            v.add_term(l, BigInt::from(m));
        }
        v
    }

    pub fn add_term(&mut self, label: IrrepLabel, m: BigInt) {
        if m.is_zero() {
            return;
        }
        let e = self.terms.entry(label.clone()).or_insert_with(BigInt::zero);
        *e += m;
        if e.is_zero() {
            self.terms.remove(&label);
        }
    }

    pub fn get(&self, label: &IrrepLabel) -> BigInt {
        self.terms.get(label).cloned().unwrap_or_default()
    }

    /// Labels with nonzero coefficient.
    pub fn support(&self) -> impl Iterator<Item = &IrrepLabel> {
        self.terms.keys()
    }

    pub fn contains(&self, label: &IrrepLabel) -> bool {
        self.terms.contains_key(label)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&IrrepLabel, &BigInt)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FusionVector) -> FusionVector {
        let mut out = self.clone();
        for (l, m) in &other.terms {
            out.add_term(l.clone(), m.clone());
        }
        out
    }

    pub fn sub(&self, other: &FusionVector) -> FusionVector {
        let mut out = self.clone();
        for (l, m) in &other.terms {
            out.add_term(l.clone(), -m.clone());
        }
        out
    }

    /// `other ≤ self` coefficientwise.
    pub fn dominates(&self, other: &FusionVector) -> bool {
        other.terms.iter().all(|(l, m)| &self.get(l) >= m)
    }

    pub fn total_multiplicity(&self) -> BigInt {
        self.terms.values().sum()
    }
}

impl FromIterator<(IrrepLabel, BigInt)> for FusionVector {
    fn from_iter<I: IntoIterator<Item = (IrrepLabel, BigInt)>>(iter: I) -> Self {
        let mut v = Self::new();
        for (l, m) in iter {
            v.add_term(l, m);
        }
        v
    }
}

impl fmt::Display for FusionVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (l, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            if m == &BigInt::from(1) {
                write!(f, "{l}")?;
            } else {
                write!(f, "{m}·{l}")?;
            }
        }
        Ok(())
    }
}

/// A JSON map from label strings (sorted as strings) to multiplicities;
/// multiplicities beyond `i64` are written as decimal strings.
impl Serialize for FusionVector {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let sorted: BTreeMap<String, serde_json::Value> = self
            .terms
            .iter()
            .map(|(l, m)| {
                let v = match m.to_i64() {
                    Some(x) => serde_json::Value::from(x),
                    None => serde_json::Value::from(m.to_string()),
                };
                (l.to_string(), v)
            })
            .collect();
        sorted.serialize(s)
    }
}
