//! Packed partitions with no upper points.
//!
//! Every partition is a rotation of exactly one partition in `P(0, k+l)`:
//! rotate the upper row down point by point from the left. A category is
//! therefore determined by its one-line members, and the closure engine works
//! on those alone. One-line members of a category are closed under cyclic
//! shifts (two rotations), so the cyclic boundary order is all that matters.

use super::{Color, ColoredPartition};

pub(crate) const MAX_POINTS: usize = 16;

const LEN_BITS: u32 = 5;
const COLOR_SHIFT: u32 = LEN_BITS;
const LABEL_SHIFT: u32 = COLOR_SHIFT + MAX_POINTS as u32;

/// A colored partition in `P(0, m)`, `m ≤ 16`, packed into a `u128`:
/// length, a black-point bitmask and a restricted-growth block labeling.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneLine(u128);

#[derive(Clone, Copy)]
struct Unpacked {
    len: usize,
    black: u16,
    labels: [u8; MAX_POINTS],
}

impl Unpacked {
    fn pack(mut self) -> OneLine {
        // relabel blocks by first appearance
        let mut map = [u8::MAX; MAX_POINTS];
        let mut next = 0u8;
        for i in 0..self.len {
            let lab = self.labels[i] as usize;
            if map[lab] == u8::MAX {
                map[lab] = next;
                next += 1;
            }
            self.labels[i] = map[lab];
        }
        let mut bits = self.len as u128 | ((self.black as u128) << COLOR_SHIFT);
        for i in 0..self.len {
            bits |= (self.labels[i] as u128) << (LABEL_SHIFT + 4 * i as u32);
        }
        OneLine(bits)
    }

    fn color(&self, i: usize) -> Color {
        if self.black >> i & 1 == 1 {
            Color::Black
        } else {
            Color::White
        }
    }
}

impl OneLine {
    fn unpack(self) -> Unpacked {
        let len = (self.0 & ((1 << LEN_BITS) - 1)) as usize;
        let black = (self.0 >> COLOR_SHIFT) as u16;
        let mut labels = [0u8; MAX_POINTS];
        for (i, lab) in labels.iter_mut().enumerate().take(len) {
            *lab = ((self.0 >> (LABEL_SHIFT + 4 * i as u32)) & 0xf) as u8;
        }
        Unpacked { len, black, labels }
    }

    /// The one-line rotation of `p`. Panics if `p` has more than 16 points.
    pub fn from_partition(p: &ColoredPartition) -> Self {
        let (k, m) = (p.k(), p.points());
        assert!(m <= MAX_POINTS, "one-line form supports at most {MAX_POINTS} points");
        let labels = p.block_labels();
        let mut u = Unpacked {
            len: m,
            black: 0,
            labels: [0; MAX_POINTS],
        };
        // upper points reversed and color-inverted, then the lower row
        for pos in 0..m {
            let (point, color) = if pos < k {
                let i = k - 1 - pos;
                (i, p.upper_colors()[i].inverted())
            } else {
                (pos, p.lower_colors()[pos - k])
            };
            u.labels[pos] = labels[point] as u8;
            if color == Color::Black {
                u.black |= 1 << pos;
            }
        }
        u.pack()
    }

    /// The rotation of this partition with `k` upper points.
    pub fn to_partition(self, k: usize) -> ColoredPartition {
        let u = self.unpack();
        assert!(k <= u.len);
        let upper: Vec<Color> = (0..k).map(|i| u.color(k - 1 - i).inverted()).collect();
        let lower: Vec<Color> = (k..u.len).map(|i| u.color(i)).collect();
        let labels: Vec<usize> = (0..u.len)
            .map(|point| {
                let pos = if point < k { k - 1 - point } else { point };
                u.labels[pos] as usize
            })
            .collect();
        ColoredPartition::from_labels(upper, lower, &labels)
    }

    /// Builds a form from colors and arbitrary block labels below 16.
    pub(crate) fn from_parts(colors: &[Color], labels: &[usize]) -> Self {
        debug_assert_eq!(colors.len(), labels.len());
        let mut u = Unpacked {
            len: colors.len(),
            black: 0,
            labels: [0; MAX_POINTS],
        };
        for (i, (&c, &lab)) in colors.iter().zip(labels).enumerate() {
            u.labels[i] = lab as u8;
            if c == Color::Black {
                u.black |= 1 << i;
            }
        }
        u.pack()
    }

    pub fn colors(self) -> Vec<Color> {
        let u = self.unpack();
        (0..u.len).map(|i| u.color(i)).collect()
    }

    /// Restricted-growth block labels.
    pub fn labels(self) -> Vec<u8> {
        let u = self.unpack();
        u.labels[..u.len].to_vec()
    }

    pub fn len(self) -> usize {
        (self.0 & ((1 << LEN_BITS) - 1)) as usize
    }

    pub fn is_empty(self) -> bool {
        self.len() == 0
    }

    /// Whites minus blacks; equals `c(p)` for every rotation `p`.
    pub fn c(self) -> i64 {
        let u = self.unpack();
        let blacks = u.black.count_ones() as i64;
        u.len as i64 - 2 * blacks
    }

    pub fn is_all_white(self) -> bool {
        self.unpack().black == 0
    }

    /// Cyclic shift: the first point moves to the end.
    pub fn shift(self) -> Self {
        let u = self.unpack();
        if u.len < 2 {
            return self;
        }
        let mut v = u;
        for i in 0..u.len {
            v.labels[i] = u.labels[(i + 1) % u.len];
        }
        let first = u.black & 1;
        v.black = (u.black >> 1) | (first << (u.len - 1));
        v.pack()
    }

    /// One-line form of the involution: reversed order, inverted colors.
    pub fn involute(self) -> Self {
        let u = self.unpack();
        let mut v = u;
        v.black = 0;
        for i in 0..u.len {
            let j = u.len - 1 - i;
            v.labels[i] = u.labels[j];
            if u.black >> j & 1 == 0 {
                v.black |= 1 << i;
            }
        }
        v.pack()
    }

    /// Side-by-side placement.
    pub fn juxtapose(self, other: OneLine) -> Option<Self> {
        let (a, b) = (self.unpack(), other.unpack());
        if a.len + b.len > MAX_POINTS {
            return None;
        }
        let offset = a.labels[..a.len].iter().copied().max().map_or(0, |m| m + 1);
        let mut v = a;
        v.len = a.len + b.len;
        v.black = a.black | (b.black << a.len);
        for i in 0..b.len {
            v.labels[a.len + i] = b.labels[i] + offset;
        }
        Some(v.pack())
    }

    /// All results of capping two neighboring points of different colors:
    /// their blocks merge and both points disappear. This is composition
    /// with `id ⊗ … ⊗ cap ⊗ … ⊗ id` for a mixed-color cap.
    pub fn erasures(self) -> impl Iterator<Item = OneLine> {
        let u = self.unpack();
        (0..u.len.saturating_sub(1)).filter_map(move |i| {
            if u.color(i) == u.color(i + 1) {
                return None;
            }
            let (keep, gone) = (u.labels[i], u.labels[i + 1]);
            let mut v = Unpacked {
                len: u.len - 2,
                black: 0,
                labels: [0; MAX_POINTS],
            };
            for (t, j) in (0..u.len).filter(|&j| j != i && j != i + 1).enumerate() {
                let lab = u.labels[j];
                v.labels[t] = if lab == gone { keep } else { lab };
                if u.black >> j & 1 == 1 {
                    v.black |= 1 << t;
                }
            }
            Some(v.pack())
        })
    }
}
