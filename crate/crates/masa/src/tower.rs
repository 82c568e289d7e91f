//! The tower of cyclic groups G_i = C_{2^i} in the self-similar labeling.
//!
//! Each level doubles the previous one. The multiplication table is built
//! by a block recursion: the top-left quadrant is the previous table, the
//! off-diagonal quadrants are the previous table shifted by 2^{i-1}, and
//! the bottom-right quadrant is the previous table with its rows permuted
//! by the twist permutation of the previous level. The group generator of
//! G_i is the element 2^{i-1}; its iterated action visits every element
//! once, and the position of an element along that cycle turns out to be
//! the i-bit reversal of its label (tested exhaustively against the dense
//! tables). All constant-time element arithmetic goes through that fact.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Group elements are labels in `[0, 2^level)`.
pub type Element = u32;
pub type Level = u32;

/// Hard cap when `MASA_MAX_LEVEL` is unset: dense tables stay comfortably
/// in memory and every element fits in u16.
pub const DEFAULT_MAX_LEVEL: u32 = 12;

/// Configured maximum tower level. Read once from `MASA_MAX_LEVEL`.
pub fn max_level() -> u32 {
    static LIMIT: OnceLock<u32> = OnceLock::new();
    *LIMIT.get_or_init(|| {
        std::env::var("MASA_MAX_LEVEL")
            .ok()
            .and_then(|v| v.parse::<u32>().ok())
            .map(|v| v.min(16))
            .unwrap_or(DEFAULT_MAX_LEVEL)
    })
}

fn check_level(level: Level) -> Result<()> {
    if level > max_level() {
        return Err(Error::LevelLimit { requested: level, limit: max_level() });
    }
    Ok(())
}

fn check_element(level: Level, x: Element) -> Result<()> {
    let order = 1u64 << level;
    if (x as u64) < order {
        Ok(())
    } else {
        Err(Error::ElementRange { element: x as u64, level, order })
    }
}

/// Reverse the low `level` bits of `x`.
fn bit_reverse(level: Level, x: Element) -> Element {
    if level == 0 {
        return x;
    }
    x.reverse_bits() >> (32 - level)
}

/// Constant-time arithmetic handle for one tower level.
///
/// The cycle position of an element under the generator action is its
/// bit-reversed label, so products reduce to addition of positions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Group {
    level: Level,
}

impl Group {
    pub fn new(level: Level) -> Result<Self> {
        check_level(level)?;
        Ok(Group { level })
    }

    pub fn level(&self) -> Level {
        self.level
    }

    /// Group order 2^level.
    pub fn order(&self) -> u64 {
        1u64 << self.level
    }

    /// The generator element 2^{level-1}; the identity at level 0.
    pub fn generator_element(&self) -> Element {
        if self.level == 0 {
            0
        } else {
            1 << (self.level - 1)
        }
    }

    /// Index of `x` along the generator cycle starting at the identity.
    pub fn position(&self, x: Element) -> Result<u64> {
        check_element(self.level, x)?;
        Ok(bit_reverse(self.level, x) as u64)
    }

    /// Element sitting at cycle position `pos` (taken mod the order).
    pub fn element_at(&self, pos: u64) -> Element {
        let mask = self.order() - 1;
        bit_reverse(self.level, (pos & mask) as Element)
    }

    pub fn mul(&self, a: Element, b: Element) -> Result<Element> {
        let pa = self.position(a)?;
        let pb = self.position(b)?;
        Ok(self.element_at(pa + pb))
    }

    pub fn inverse(&self, a: Element) -> Result<Element> {
        let pa = self.position(a)?;
        Ok(self.element_at(self.order() - pa))
    }
}

/// Permutation matrix from the twist recursion: the identity block sits
/// top-right, the previous twist bottom-left.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistMatrix {
    level: Level,
    /// perm[r] = column holding the single 1 of row r.
    perm: Vec<Element>,
}

impl TwistMatrix {
    pub fn level(&self) -> Level {
        self.level
    }

    pub fn size(&self) -> usize {
        1 << self.level
    }

    /// Column of the 1 in row `r`.
    pub fn column_of(&self, r: usize) -> Element {
        self.perm[r]
    }

    pub fn entry(&self, r: usize, c: usize) -> u8 {
        u8::from(self.perm[r] as usize == c)
    }

    /// Dense 0/1 rows, for emission and tests.
    pub fn rows(&self) -> Vec<Vec<u8>> {
        let n = self.size();
        (0..n).map(|r| (0..n).map(|c| self.entry(r, c)).collect()).collect()
    }
}

/// Twist matrix of the given level.
pub fn twist(level: Level) -> Result<TwistMatrix> {
    check_level(level)?;
    let mut perm: Vec<Element> = vec![0];
    for i in 1..=level {
        let half = 1u32 << (i - 1);
        let mut next = Vec::with_capacity(1 << i);
        next.extend(half..2 * half);
        next.extend(perm.iter().map(|&p| p));
        perm = next;
    }
    Ok(TwistMatrix { level, perm })
}

/// Dense multiplication table of G_level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    level: Level,
    entries: Vec<u16>,
}

impl GroupTable {
    pub fn level(&self) -> Level {
        self.level
    }

    pub fn size(&self) -> usize {
        1 << self.level
    }

    pub fn at(&self, a: usize, b: usize) -> Element {
        self.entries[a * self.size() + b] as Element
    }

    pub fn row(&self, a: usize) -> Vec<Element> {
        let n = self.size();
        self.entries[a * n..(a + 1) * n].iter().map(|&e| e as Element).collect()
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        (0..self.size()).map(|a| self.row(a)).collect()
    }
}

/// Build the multiplication table by the block recursion.
pub fn group_table(level: Level) -> Result<GroupTable> {
    check_level(level)?;
    let mut entries: Vec<u16> = vec![0];
    for i in 1..=level {
        let half = 1usize << (i - 1);
        let n = 2 * half;
        let sigma = twist(i - 1)?;
        let mut next = vec![0u16; n * n];
        for a in 0..half {
            for b in 0..half {
                let e = entries[a * half + b];
                let shifted = e + half as u16;
                next[a * n + b] = e;
                next[a * n + (b + half)] = shifted;
                next[(a + half) * n + b] = shifted;
                // bottom-right: rows of the previous table permuted by the twist
                let src = sigma.column_of(a) as usize;
                next[(a + half) * n + (b + half)] = entries[src * half + b];
            }
        }
        entries = next;
    }
    Ok(GroupTable { level, entries })
}

/// Generator row of G_level from the concatenation recurrence:
/// mu_1 = (1,0) and mu_{i+1} = (2^i .. 2^{i+1}-1) ++ mu_i.
///
/// This is an independent route from the table; `generator(i)` must equal
/// row 2^{i-1} of `group_table(i)`.
pub fn generator(level: Level) -> Result<Vec<Element>> {
    check_level(level)?;
    if level == 0 {
        return Err(Error::DegenerateLevel);
    }
    let mut row: Vec<Element> = vec![1, 0];
    for i in 1..level {
        let half = 1u32 << i;
        let mut next = Vec::with_capacity(2 * half as usize);
        next.extend(half..2 * half);
        next.extend(row.iter().copied());
        row = next;
    }
    Ok(row)
}

/// Product of two elements at the given level.
pub fn multiply(level: Level, a: Element, b: Element) -> Result<Element> {
    Group::new(level)?.mul(a, b)
}

/// One full generator cycle starting at `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    pub level: Level,
    pub start: Element,
    pub elements: Vec<Element>,
}

pub fn orbit(level: Level, x: Element) -> Result<Orbit> {
    let group = Group::new(level)?;
    let start_pos = group.position(x)?;
    let elements = (0..group.order()).map(|t| group.element_at(start_pos + t)).collect();
    Ok(Orbit { level, start: x, elements })
}
