//! Integer linear algebra and the inductive system `R_ℓ → R_{ℓ+1}` whose
//! cokernels of `φ` and kernels give the fusion-level K-data.

mod snf;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::fusion::{Family, FusionError, FusionRing, FusionVector, IrrepLabel, Reach, Word};
use crate::linear::IntMatrix;

pub use snf::{cokernel, kernel_rank, smith_normal_form, FGAbelianGroup, Presentation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KTheoryError {
    #[error(transparent)]
    Fusion(#[from] FusionError),
    #[error("invalid levels: {0}")]
    InvalidLevels(String),
    #[error("{label} lies outside the basis of level {level}")]
    BasisEscape { label: String, level: usize },
}

/// The free module on the support of `β^level`, `β = fundamental^{⊗k_0}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelModule {
    pub level: usize,
    /// Tensor power of the fundamental, `level · k_0`.
    pub power: usize,
    /// Sorted by degree, then label.
    pub basis: Vec<IrrepLabel>,
    /// Basis labels of degree exactly `power`.
    pub boundary_basis: Vec<IrrepLabel>,
    #[serde(skip)]
    index: BTreeMap<IrrepLabel, usize>,
}

impl LevelModule {
    pub fn position(&self, label: &IrrepLabel) -> Option<usize> {
        self.index.get(label).copied()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// Coefficient vector of `v` in this basis.
    pub fn vector(&self, v: &FusionVector) -> Result<BTreeMap<usize, BigInt>, KTheoryError> {
        v.iter()
            .map(|(l, m)| {
                self.position(l).map(|i| (i, m.clone())).ok_or_else(|| KTheoryError::BasisEscape {
                    label: l.to_string(),
                    level: self.level,
                })
            })
            .collect()
    }
}

/// Degree for the ring's own fundamental: closed form where known.
fn label_degree(ring: &FusionRing, label: &IrrepLabel, cap: usize) -> Result<u64, FusionError> {
    match ring.degree_hint(label) {
        Some(Reach::Degree(d)) => Ok(d),
        _ => ring.degree(label, cap),
    }
}

/// Levels `0..=levels`, level `j` spanned by the support of
/// `fundamental^{⊗ j·k_0}`.
pub fn build_levels(
    ring: &FusionRing,
    fundamental: &FusionVector,
    k0: usize,
    levels: usize,
) -> Result<Vec<LevelModule>, KTheoryError> {
    if k0 == 0 {
        return Err(KTheoryError::InvalidLevels("k_0 must be positive".into()));
    }
    let own = *fundamental == ring.fundamental();
    let beta = ring.power_of(fundamental, k0)?;
    let mut acc = FusionVector::single(ring.trivial());
    let mut out = Vec::with_capacity(levels + 1);
    for level in 0..=levels {
        if level > 0 {
            acc = ring.multiply(&acc, &beta)?;
        }
        let power = level * k0;
        let mut keyed = Vec::with_capacity(acc.len());
        for l in acc.support() {
            let d = if own {
                label_degree(ring, l, power)?
            } else {
                ring.degree(l, power)?
            };
            keyed.push((d, l.clone()));
        }
        keyed.sort();
        let boundary_basis = keyed
            .iter()
            .filter(|(d, _)| *d == power as u64)
            .map(|(_, l)| l.clone())
            .collect();
        let basis: Vec<IrrepLabel> = keyed.into_iter().map(|(_, l)| l).collect();
        let index = basis.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();
        out.push(LevelModule {
            level,
            power,
            basis,
            boundary_basis,
            index,
        });
    }
    Ok(out)
}

/// Matrix of `a ↦ a·g` from `from` to `to`.
fn right_multiplication(
    ring: &FusionRing,
    from: &LevelModule,
    to: &LevelModule,
    g: &FusionVector,
) -> Result<IntMatrix, KTheoryError> {
    let mut entries = Vec::new();
    for (c, x) in from.basis.iter().enumerate() {
        let image = ring.multiply(&FusionVector::single(x.clone()), g)?;
        for (r, m) in to.vector(&image)? {
            entries.push((r, c, m));
        }
    }
    Ok(IntMatrix::from_entries(to.len(), from.len(), entries))
}

/// `φ_j: a ↦ a(β − 1)` and `ψ_j: a ↦ aβ` for each consecutive pair.
#[derive(Debug, Clone)]
pub struct InductiveSystem {
    pub family: Family,
    pub k0: usize,
    pub levels: Vec<LevelModule>,
    pub phi: Vec<IntMatrix>,
    pub psi: Vec<IntMatrix>,
}

impl InductiveSystem {
    pub fn new(ring: &FusionRing, fundamental: &FusionVector, k0: usize, levels: usize) -> Result<Self, KTheoryError> {
        let mods = build_levels(ring, fundamental, k0, levels)?;
        let beta = ring.power_of(fundamental, k0)?;
        let beta_minus_one = beta.sub(&FusionVector::single(ring.trivial()));
        let mut phi = Vec::new();
        let mut psi = Vec::new();
        for w in mods.windows(2) {
            phi.push(right_multiplication(ring, &w[0], &w[1], &beta_minus_one)?);
            psi.push(right_multiplication(ring, &w[0], &w[1], &beta)?);
        }
        Ok(Self {
            family: ring.family(),
            k0,
            levels: mods,
            phi,
            psi,
        })
    }
}

/// `ψ_{j+1}·φ_j = φ_{j+1}·ψ_j` for every pair of consecutive squares.
pub fn check_diagram_commutes(system: &InductiveSystem) -> bool {
    (0..system.phi.len().saturating_sub(1))
        .all(|j| system.psi[j + 1].mul(&system.phi[j]) == system.phi[j + 1].mul(&system.psi[j]))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LevelReport {
    pub level: usize,
    pub basis_size: usize,
    /// `R_0` itself at level 0, else `R_j / φ(R_{j−1})`.
    pub coker: FGAbelianGroup,
    /// Kernel rank of `φ_{j−1}`; 0 at level 0.
    pub ker_rank: usize,
    /// Kernel rank of `ψ_{j−1}`; 0 at level 0.
    pub psi_ker_rank: usize,
}

/// The map `coker_j → coker_{j+1}` induced by `ψ_j`, in generator coordinates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConnectingMap {
    pub from_level: usize,
    pub matrix: IntMatrix,
    pub isomorphism: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InductiveLimitReport {
    pub family: String,
    pub k0: usize,
    pub levels: Vec<LevelReport>,
    pub connecting_maps: Vec<ConnectingMap>,
    /// Kernel of the last `φ`, a free group.
    #[serde(rename = "K1")]
    pub k1: FGAbelianGroup,
    #[serde(rename = "K0_stabilized")]
    pub k0_stabilized: bool,
    /// The last cokernel, present only when stabilized.
    #[serde(rename = "K0")]
    pub k0_group: Option<FGAbelianGroup>,
    /// Coordinates of the class of the trivial label in the last cokernel.
    #[serde(serialize_with = "snf::serialize_ints")]
    pub unit_class: Vec<BigInt>,
    /// Every cokernel torsion-free with strictly increasing rank.
    pub free_increasing: bool,
    /// Outputs are inductive-limit data of the fusion ring; they are
    /// operator-algebraic K-groups only for the families where the two are
    /// known to agree.
    pub scope: &'static str,
}

impl InductiveLimitReport {
    pub fn non_stabilizing(&self) -> bool {
        !self.k0_stabilized
    }
}

fn unit_vector(i: usize) -> BTreeMap<usize, BigInt> {
    [(i, BigInt::one())].into()
}

/// Columns of `m` as sparse maps, for repeated products `m·v`.
struct Columns(Vec<BTreeMap<usize, BigInt>>);

impl Columns {
    fn new(m: &IntMatrix) -> Self {
        let mut cols = vec![BTreeMap::new(); m.cols()];
        for (r, c, x) in m.entries() {
            cols[c].insert(r, x.clone());
        }
        Columns(cols)
    }

    fn apply(&self, v: &BTreeMap<usize, BigInt>) -> BTreeMap<usize, BigInt> {
        let mut out: BTreeMap<usize, BigInt> = BTreeMap::new();
        for (&c, x) in v {
            for (&r, y) in &self.0[c] {
                *out.entry(r).or_insert_with(BigInt::zero) += x * y;
            }
        }
        out.retain(|_, x| !x.is_zero());
        out
    }
}

/// Square with trivial cokernel and zero kernel.
fn is_unimodular_sparse(m: &IntMatrix) -> bool {
    if m.rows() != m.cols() {
        return false;
    }
    let p = Presentation::new(m);
    p.group().is_trivial() && p.kernel_rank() == 0
}

fn trivial_position(system: &InductiveSystem, level: usize) -> usize {
    let lm = &system.levels[level];
    lm.basis
        .iter()
        .position(IrrepLabel::is_trivial)
        .expect("the trivial label lies in every level")
}

/// Presentations of every cokernel, oriented so the unit class has
/// nonnegative free coordinates.
pub fn presentations(system: &InductiveSystem) -> Vec<Presentation> {
    let mut out = Vec::with_capacity(system.levels.len());
    for (j, lm) in system.levels.iter().enumerate() {
        let rel = if j == 0 {
            IntMatrix::zeros(lm.len(), 0)
        } else {
            system.phi[j - 1].clone()
        };
        let mut p = Presentation::new(&rel);
        p.orient(&unit_vector(trivial_position(system, j)));
        out.push(p);
    }
    out
}

fn reduce(c: Vec<BigInt>, orders: &[BigInt]) -> Vec<BigInt> {
    c.into_iter()
        .zip(orders)
        .map(|(x, d)| if d.is_zero() { x } else { num_integer::Integer::mod_floor(&x, d) })
        .collect()
}

fn connecting(system: &InductiveSystem, pres: &[Presentation], j: usize) -> ConnectingMap {
    let (src, dst) = (&pres[j], &pres[j + 1]);
    let psi = Columns::new(&system.psi[j]);
    let mut entries = Vec::new();
    for k in 0..src.generators() {
        let image = psi.apply(&src.lift(k));
        for (r, x) in dst.coordinates(&image).into_iter().enumerate() {
            entries.push((r, k, x));
        }
    }
    let matrix = IntMatrix::from_entries(dst.generators(), src.generators(), entries);
    // surjective between isomorphic finitely generated groups ⇒ bijective
    let orders = dst.orders();
    let mut with_relations: Vec<(usize, usize, BigInt)> = matrix.entries().map(|(r, c, x)| (r, c, x.clone())).collect();
    let mut extra = 0;
    for (r, d) in orders.iter().enumerate() {
        if !d.is_zero() {
            with_relations.push((r, src.generators() + extra, d.clone()));
            extra += 1;
        }
    }
    let surj = IntMatrix::from_entries(dst.generators(), src.generators() + extra, with_relations);
    let isomorphism = src.group() == dst.group() && cokernel(&surj).is_trivial();
    ConnectingMap {
        from_level: j,
        matrix,
        isomorphism,
    }
}

/// Runs the inductive system for levels `0..=levels`. Stabilization means
/// the last two cokernels are isomorphic through the connecting map.
pub fn k_groups(
    ring: &FusionRing,
    fundamental: &FusionVector,
    k0: usize,
    levels: usize,
) -> Result<InductiveLimitReport, KTheoryError> {
    if levels < 1 {
        return Err(KTheoryError::InvalidLevels("at least two levels are needed".into()));
    }
    let system = InductiveSystem::new(ring, fundamental, k0, levels)?;
    Ok(report(&system))
}

pub fn report(system: &InductiveSystem) -> InductiveLimitReport {
    let pres = presentations(system);
    let level_reports: Vec<LevelReport> = system
        .levels
        .iter()
        .enumerate()
        .map(|(j, lm)| LevelReport {
            level: j,
            basis_size: lm.len(),
            coker: pres[j].group().clone(),
            ker_rank: pres[j].kernel_rank(),
            psi_ker_rank: if j == 0 { 0 } else { kernel_rank(&system.psi[j - 1]) },
        })
        .collect();
    let maps: Vec<ConnectingMap> = (0..system.phi.len()).map(|j| connecting(system, &pres, j)).collect();
    let last = system.levels.len() - 1;
    let k0_stabilized = maps.last().is_some_and(|m| m.isomorphism);
    let free_increasing = level_reports.iter().all(|l| l.coker.is_free())
        && level_reports.windows(2).all(|w| w[0].coker.free_rank < w[1].coker.free_rank);
    let unit = reduce(
        pres[last].coordinates(&unit_vector(trivial_position(system, last))),
        &pres[last].orders(),
    );
    InductiveLimitReport {
        family: system.family.to_string(),
        k0: system.k0,
        k1: FGAbelianGroup::free(level_reports[last].ker_rank),
        k0_stabilized,
        k0_group: k0_stabilized.then(|| level_reports[last].coker.clone()),
        unit_class: unit,
        free_increasing,
        levels: level_reports,
        connecting_maps: maps,
        scope: "fusion-level inductive-limit data",
    }
}

fn ones(s: u32) -> Word {
    Word::new(vec![1; s as usize], s).expect("letter 1 is valid")
}

/// Whether a reflection-family label ends in `s` consecutive letters 1.
pub fn ends_in_ones(w: &Word) -> bool {
    let s = w.modulus() as usize;
    w.len() >= s && w.letters()[w.len() - s..].iter().all(|&a| a == 1)
}

/// Labels of level `j` outside the leading terms `x·1…1` of `φ_{j−1}`: all
/// of level 0, then the labels not ending in `s` ones. For the
/// Clebsch–Gordan families the complement is the trivial label alone.
pub fn complement(system: &InductiveSystem, j: usize) -> Vec<IrrepLabel> {
    let lm = &system.levels[j];
    if j == 0 {
        return lm.basis.clone();
    }
    lm.basis
        .iter()
        .filter(|l| match l {
            IrrepLabel::R(w) => !ends_in_ones(w),
            other => other.is_trivial(),
        })
        .cloned()
        .collect()
}

/// Checks at each level that the complement labels form a basis of the
/// cokernel, and that the connecting map sends each complement class of
/// level `j` to the class of the same label at level `j+1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComplementCheck {
    pub level: usize,
    pub complement_size: usize,
    pub is_basis: bool,
    pub identity_on_persisting: bool,
}

pub fn complement_checks(system: &InductiveSystem) -> Vec<ComplementCheck> {
    let pres = presentations(system);
    let mut out = Vec::new();
    for j in 0..system.levels.len() {
        let lm = &system.levels[j];
        let comp = complement(system, j);
        let p = &pres[j];
        let coords: Vec<Vec<BigInt>> = comp
            .iter()
            .map(|l| reduce(p.coordinates(&unit_vector(lm.position(l).expect("basis label"))), &p.orders()))
            .collect();
        let is_basis = p.group().is_free()
            && coords.len() == p.generators()
            && is_unimodular_sparse(&IntMatrix::from_entries(
                coords.len(),
                coords.len(),
                coords
                    .iter()
                    .enumerate()
                    .flat_map(|(c, col)| col.iter().enumerate().map(move |(r, x)| (r, c, x.clone()))),
            ));
        let identity_on_persisting = if j + 1 < system.levels.len() {
            let next = &system.levels[j + 1];
            let q = &pres[j + 1];
            let psi = Columns::new(&system.psi[j]);
            comp.iter().all(|l| {
                let image = psi.apply(&unit_vector(lm.position(l).expect("basis label")));
                let same = unit_vector(next.position(l).expect("levels are nested"));
                reduce(q.coordinates(&image), &q.orders()) == reduce(q.coordinates(&same), &q.orders())
            })
        } else {
            true
        };
        out.push(ComplementCheck {
            level: j,
            complement_size: comp.len(),
            is_basis,
            identity_on_persisting,
        });
    }
    out
}

/// Expands `φ(r_x) = r_x(r_1^{⊗s} − 1)` and checks that `r_{x1…1}` and
/// `r_{xs}` occur with coefficient exactly 1, and that no other term of
/// top degree ends in `s` ones.
pub fn phi_structure_check(ring: &FusionRing, word: &Word) -> Result<bool, FusionError> {
    let Family::Reflection(s) = ring.family() else {
        return Err(FusionError::WrongFamily(format!("{} has no word labels", ring.family())));
    };
    if word.modulus() != s {
        return Err(FusionError::ModulusMismatch(s, word.modulus()));
    }
    let x = IrrepLabel::R(word.clone());
    let beta = ring.power(s as usize);
    let phi = ring
        .multiply(&FusionVector::single(x.clone()), &beta)?
        .sub(&FusionVector::single(x));
    let lead = IrrepLabel::R(word.concat(&ones(s)));
    let xs = IrrepLabel::R(word.concat(&Word::letter(s, s)));
    let top = word.letter_sum() + s as u64;
    let one = BigInt::one();
    let others_clean = phi.iter().all(|(l, m)| {
        let IrrepLabel::R(w) = l else { return false };
        m.is_positive() && (l == &lead || w.letter_sum() < top || !ends_in_ones(w))
    });
    Ok(phi.get(&lead) == one && phi.get(&xs) == one && others_clean)
}

/// Number of irreducibles of degree exactly `l`, read off `u^{⊗ℓ}`.
pub fn boundary_count(ring: &FusionRing, l: usize) -> Result<usize, FusionError> {
    let mut n = 0;
    for label in ring.power(l).support() {
        if label_degree(ring, label, l)? == l as u64 {
            n += 1;
        }
    }
    Ok(n)
}
