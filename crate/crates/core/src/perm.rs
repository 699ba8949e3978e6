//! Permutations of `{1..n}`.
//!
//! Points are labelled `1..=n` at every public boundary (constructors,
//! accessors, text and JSON forms). Internally the map is stored zero-based,
//! and crate-internal helpers work on the raw slice directly.
//!
//! Composition is right-to-left: `p.compose(&q)` maps `x` to `p(q(x))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    map: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn is_even(self) -> bool {
        self == Parity::Even
    }

    fn flip_if(self, odd: bool) -> Parity {
        match (self, odd) {
            (p, false) => p,
            (Parity::Even, true) => Parity::Odd,
            (Parity::Odd, true) => Parity::Even,
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl Permutation {
    pub fn identity(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        Ok(Self::identity_raw(n))
    }

    /// Builds a permutation from image notation: `images[x - 1]` is the image of `x`.
    pub fn from_images(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n == 0 {
            return Err(Error::ZeroOrder);
        }
        let mut seen = vec![false; n];
        let mut map = Vec::with_capacity(n);
        for (x, &y) in images.iter().enumerate() {
            if y == 0 || y > n {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("image {y} of {} is out of range", x + 1),
                });
            }
            if std::mem::replace(&mut seen[y - 1], true) {
                return Err(Error::NotAPermutation {
                    n,
                    reason: format!("{y} appears more than once"),
                });
            }
            map.push(y - 1);
        }
        Ok(Permutation { map })
    }

    /// Builds a permutation of order `n` from disjoint cycles. Points not
    /// mentioned are fixed.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Self> {
        let mut images: Vec<usize> = (1..=n).collect();
        let mut seen = vec![false; n];
        for cycle in cycles {
            for (pos, &x) in cycle.iter().enumerate() {
                if x == 0 || x > n {
                    return Err(Error::NotAPermutation {
                        n,
                        reason: format!("cycle point {x} out of range"),
                    });
                }
                if std::mem::replace(&mut seen[x - 1], true) {
                    return Err(Error::NotAPermutation {
                        n,
                        reason: format!("point {x} appears in more than one cycle"),
                    });
                }
                images[x - 1] = cycle[(pos + 1) % cycle.len()];
            }
        }
        Self::from_images(&images)
    }

    /// The transposition swapping `a` and `b` (identity when `a == b`).
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self> {
        let mut p = Self::identity(n)?;
        for x in [a, b] {
            if x == 0 || x > n {
                return Err(Error::IndexOutOfRange { index: x, n });
            }
        }
        p.map.swap(a - 1, b - 1);
        Ok(p)
    }

    pub fn order(&self) -> usize {
        self.map.len()
    }

    /// Image of the point `x` (1-based).
    ///
    /// # Panics
    /// Panics if `x` is not in `1..=n`.
    pub fn apply(&self, x: usize) -> usize {
        assert!(x >= 1 && x <= self.order(), "point {x} out of range");
        self.map[x - 1] + 1
    }

    /// Image notation, 1-based.
    pub fn images(&self) -> Vec<usize> {
        self.map.iter().map(|&y| y + 1).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.map.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// `self ∘ other`, i.e. `x ↦ self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        check_orders(self.order(), other.order())?;
        Ok(self.then_raw(other))
    }

    pub fn inverse(&self) -> Permutation {
        Permutation {
            map: invert_raw(&self.map),
        }
    }

    /// `a ∘ self ∘ a⁻¹`. Relabels every cycle `(x1, .., xt)` as `(a(x1), .., a(xt))`.
    pub fn conjugate(&self, a: &Permutation) -> Result<Permutation> {
        check_orders(self.order(), a.order())?;
        let mut map = vec![0; self.order()];
        for (x, &y) in self.map.iter().enumerate() {
            map[a.map[x]] = a.map[y];
        }
        Ok(Permutation { map })
    }

    pub fn cycles(&self) -> CycleDecomposition {
        CycleDecomposition {
            n: self.order(),
            cycles: raw_cycles(&self.map)
                .into_iter()
                .map(|c| c.into_iter().map(|x| x + 1).collect())
                .collect(),
        }
    }

    pub fn cycle_structure(&self) -> CycleStructure {
        cycle_structure_raw(&self.map)
    }

    /// Number of cycles, counting fixed points.
    pub fn num_cycles(&self) -> usize {
        num_cycles_raw(&self.map)
    }

    pub fn parity(&self) -> Parity {
        Parity::Even.flip_if((self.order() - self.num_cycles()) % 2 == 1)
    }

    pub(crate) fn identity_raw(n: usize) -> Self {
        Permutation {
            map: (0..n).collect(),
        }
    }

    pub(crate) fn from_raw(map: Vec<usize>) -> Self {
        debug_assert!(is_bijection_raw(&map));
        Permutation { map }
    }

    pub(crate) fn raw(&self) -> &[usize] {
        &self.map
    }

    /// Unchecked composition for equal-order permutations.
    pub(crate) fn then_raw(&self, other: &Permutation) -> Permutation {
        debug_assert_eq!(self.order(), other.order());
        Permutation {
            map: other.map.iter().map(|&y| self.map[y]).collect(),
        }
    }
}

fn check_orders(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::OrderMismatch { left, right })
    }
}

pub(crate) fn is_bijection_raw(map: &[usize]) -> bool {
    let mut seen = vec![false; map.len()];
    map.iter()
        .all(|&y| y < map.len() && !std::mem::replace(&mut seen[y], true))
}

pub(crate) fn invert_raw(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; map.len()];
    for (x, &y) in map.iter().enumerate() {
        inv[y] = x;
    }
    inv
}

/// Canonical zero-based cycles: each rotated to start at its minimum,
/// sorted by minimum. Fixed points are included.
pub(crate) fn raw_cycles(map: &[usize]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; map.len()];
    let mut cycles = Vec::new();
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            cycle.push(x);
            x = map[x];
        }
        cycles.push(cycle);
    }
    cycles
}

pub(crate) fn num_cycles_raw(map: &[usize]) -> usize {
    let mut seen = vec![false; map.len()];
    let mut count = 0;
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        count += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = map[x];
        }
    }
    count
}

pub(crate) fn cycle_structure_raw(map: &[usize]) -> CycleStructure {
    let mut seen = vec![false; map.len()];
    let mut parts = Vec::new();
    for start in 0..map.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = map[x];
        }
        parts.push(len);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    CycleStructure(parts)
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation{:?}", self.images())
    }
}

/// Cycle notation, fixed points included: `(1,2)(3)`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.cycles(), f)
    }
}

/// Parses image notation: `n` whitespace-separated 1-based images.
impl FromStr for Permutation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let images = s
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::NotAPermutation {
                    n: 0,
                    reason: format!("`{tok}` is not a positive integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Permutation::from_images(&images)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let images = Vec::<usize>::deserialize(deserializer)?;
        Permutation::from_images(&images).map_err(serde::de::Error::custom)
    }
}

/// Disjoint cycles of a permutation in canonical form, 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CycleDecomposition {
    n: usize,
    cycles: Vec<Vec<usize>>,
}

impl CycleDecomposition {
    pub fn cycles(&self) -> &[Vec<usize>] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    /// The cycle containing `x`.
    pub fn cycle_of(&self, x: usize) -> Option<&[usize]> {
        self.cycles
            .iter()
            .find(|c| c.contains(&x))
            .map(Vec::as_slice)
    }

    /// Evaluates the decomposition as a function.
    pub fn to_permutation(&self) -> Permutation {
        Permutation::from_cycles(self.n, &self.cycles).expect("cycles partition 1..=n")
    }

    /// Cycles as sets, ignoring rotation and order. Used to compare with
    /// cycle lists written in discovery order.
    pub fn same_cycles_as(&self, cycles: &[Vec<usize>]) -> bool {
        let mut other: Vec<Vec<usize>> = cycles.iter().map(|c| canonical_rotation(c)).collect();
        other.sort();
        let mine: Vec<Vec<usize>> = self
            .cycles
            .iter()
            .filter(|c| c.len() > 1)
            .cloned()
            .collect();
        other.retain(|c| c.len() > 1);
        mine == other
    }
}

fn canonical_rotation(cycle: &[usize]) -> Vec<usize> {
    let Some(start) = cycle
        .iter()
        .enumerate()
        .min_by_key(|(_, &x)| x)
        .map(|(i, _)| i)
    else {
        return Vec::new();
    };
    cycle[start..]
        .iter()
        .chain(&cycle[..start])
        .copied()
        .collect()
}

impl fmt::Display for CycleDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for cycle in &self.cycles {
            f.write_str("(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// Cycle lengths in descending order; a partition of `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleStructure(Vec<usize>);

impl CycleStructure {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn num_cycles(&self) -> usize {
        self.0.len()
    }

    pub fn order(&self) -> usize {
        self.0.iter().sum()
    }
}

impl From<Vec<usize>> for CycleStructure {
    fn from(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleStructure(parts)
    }
}

impl fmt::Display for CycleStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}
