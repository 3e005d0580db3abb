//! Partitions and strict partitions used as coordinate labels.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::indexset::IndexSet;

/// Weakly decreasing positive parts; zeros are never stored.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Accepts trailing zeros and drops them; anything else out of order is rejected.
    pub fn new(parts: Vec<usize>) -> Result<Partition> {
        let end = parts.iter().rposition(|&p| p > 0).map_or(0, |i| i + 1);
        if parts[..end].contains(&0) {
            return Err(Error::InvalidPartition(parts, "zero before a positive part"));
        }
        if parts[..end].windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(parts, "parts must be weakly decreasing"));
        }
        let mut parts = parts;
        parts.truncate(end);
        Ok(Partition { parts })
    }

    pub fn empty() -> Partition {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// `λ_i` for 1-based `i`, zero past the end.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let first = self.part(1);
        let parts = (1..=first).map(|j| self.parts.iter().filter(|&&p| p >= j).count()).collect();
        Partition { parts }
    }

    pub fn fits_box(&self, n: usize) -> bool {
        self.len() <= n && self.part(1) <= n
    }

    /// `l_j = λ_j - j + N + 1` for `j = 1..N`, strictly decreasing in `1..2N`.
    pub fn particle_positions(&self, n: usize) -> Result<Vec<usize>> {
        if !self.fits_box(n) {
            return Err(Error::BoxOverflow(self.parts.clone(), n));
        }
        Ok((1..=n).map(|j| self.part(j) + n + 1 - j).collect())
    }

    /// The particle positions as a subset of `{1..2N}`.
    pub fn particle_set(&self, n: usize) -> Result<IndexSet> {
        IndexSet::new(2 * n, self.particle_positions(n)?)
    }

    /// Inverse of `particle_set`: the partition whose particles are `set`, `|set| = N`.
    pub fn from_particle_set(set: &IndexSet, n: usize) -> Result<Partition> {
        if set.ambient() != 2 * n || set.len() != n {
            return Err(Error::ShapeMismatch(format!("{set:?} is not an {n}-subset of 1..{}", 2 * n)));
        }
        let pos = set.to_vec_decreasing();
        Partition::new((1..=n).map(|j| pos[j - 1] + j - n - 1).collect())
    }

    /// All partitions in the `N × N` box, ordered by their particle sets.
    pub fn box_partitions(n: usize) -> Vec<Partition> {
        IndexSet::subsets_of_size(2 * n, n)
            .iter()
            .map(|s| Partition::from_particle_set(s, n).expect("N-subsets label box partitions"))
            .collect()
    }

    /// Length of the main diagonal.
    pub fn frobenius_rank(&self) -> usize {
        self.parts.iter().enumerate().filter(|(i, &p)| p > *i).count()
    }

    pub fn frobenius_split(&self) -> FrobeniusCoords {
        let r = self.frobenius_rank();
        let conj = self.conjugate();
        let alpha = (1..=r).map(|i| self.part(i) - i).collect();
        let beta = (1..=r).map(|i| conj.part(i) - i).collect();
        FrobeniusCoords { alpha: StrictPartition { parts: alpha }, beta: StrictPartition { parts: beta } }
    }

    /// Removal surgery: `(λ_1+1, …, λ_{i-1}+1, λ_{i+1}, …)`, for `1 ≤ i ≤ ℓ(λ)`.
    pub fn plucker_remove(&self, i: usize) -> Result<Partition> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        Ok(self.plucker_remove_padded(i))
    }

    /// Removal surgery with `λ` read as padded by zeros, so any `i ≥ 1` is allowed.
    pub fn plucker_remove_padded(&self, i: usize) -> Partition {
        assert!(i >= 1, "part index is 1-based");
        let mut parts: Vec<usize> = (1..i).map(|j| self.part(j) + 1).collect();
        parts.extend(self.parts.iter().skip(i).copied());
        Partition::new(parts).expect("removal keeps the parts decreasing")
    }

    /// Insertion surgery `[μ⁺, u]`: returns the new partition and the insert
    /// position `k`, or `None` when `u = μ_k - k - 1` for some `k`.
    pub fn plucker_insert(&self, u: i64) -> Option<(Partition, usize)> {
        let mut k = 1usize;
        loop {
            let threshold = self.part(k) as i64 - k as i64 - 1;
            if u == threshold {
                return None;
            }
            if u > threshold {
                break;
            }
            k += 1;
        }
        let mut parts: Vec<usize> = (1..k).map(|j| self.part(j) - 1).collect();
        parts.push((u + k as i64) as usize);
        parts.extend(self.parts.iter().skip(k - 1).copied());
        Some((Partition::new(parts).expect("insertion keeps the parts decreasing"), k))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

/// Strictly decreasing nonnegative parts; a final 0 is a genuine part.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct StrictPartition {
    parts: Vec<usize>,
}

impl StrictPartition {
    pub fn new(parts: Vec<usize>) -> Result<StrictPartition> {
        if parts.windows(2).any(|w| w[0] <= w[1]) {
            return Err(Error::InvalidPartition(parts, "parts must be strictly decreasing"));
        }
        Ok(StrictPartition { parts })
    }

    pub fn empty() -> StrictPartition {
        StrictPartition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn contains(&self, m: usize) -> bool {
        self.parts.contains(&m)
    }

    /// `I(α) = {α_i + 1}` inside `{1..N}`.
    pub fn index_set(&self, n: usize) -> Result<IndexSet> {
        if let Some(&p) = self.parts.iter().find(|&&p| p >= n) {
            return Err(Error::RangeError { part: p, n });
        }
        IndexSet::new(n, self.parts.iter().map(|p| p + 1))
    }

    pub fn from_index_set(set: &IndexSet) -> StrictPartition {
        StrictPartition { parts: set.to_vec_decreasing().into_iter().map(|i| i - 1).collect() }
    }

    /// Every strict partition with parts `≤ N-1`.
    pub fn all_in_range(n: usize) -> Vec<StrictPartition> {
        IndexSet::all_subsets(n).iter().map(StrictPartition::from_index_set).collect()
    }

    /// Adds part `m`, returning the result and the 1-based position of `m`.
    pub fn insert(&self, m: usize) -> Result<(StrictPartition, usize)> {
        if self.contains(m) {
            return Err(Error::DuplicatePart(m));
        }
        let pos = self.count_greater(m);
        let mut parts = self.parts.clone();
        parts.insert(pos, m);
        Ok((StrictPartition { parts }, pos + 1))
    }

    /// Omits the part at 1-based position `i`.
    pub fn remove(&self, i: usize) -> Result<StrictPartition> {
        if i == 0 || i > self.len() {
            return Err(Error::IndexOutOfRange { index: i, len: self.len() });
        }
        let mut parts = self.parts.clone();
        parts.remove(i - 1);
        Ok(StrictPartition { parts })
    }

    /// Number of parts greater than `m`.
    pub fn count_greater(&self, m: usize) -> usize {
        self.parts.iter().filter(|&&p| p > m).count()
    }

    /// `α'_i = N - 1 - α_{r-i+1}`, the complement in the `r × N` rectangle read backwards.
    pub fn rectangle_complement(&self, n: usize) -> Result<StrictPartition> {
        if let Some(&p) = self.parts.iter().find(|&&p| p >= n) {
            return Err(Error::RangeError { part: p, n });
        }
        Ok(StrictPartition { parts: self.parts.iter().rev().map(|p| n - 1 - p).collect() })
    }
}

impl fmt::Debug for StrictPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.parts)
    }
}

/// Frobenius coordinates `(α | β)` with `ℓ(α) = ℓ(β)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FrobeniusCoords {
    pub alpha: StrictPartition,
    pub beta: StrictPartition,
}

impl FrobeniusCoords {
    pub fn new(alpha: StrictPartition, beta: StrictPartition) -> Result<FrobeniusCoords> {
        if alpha.len() != beta.len() {
            return Err(Error::CardinalityMismatch(format!(
                "Frobenius arms {:?} and legs {:?} differ in length",
                alpha, beta
            )));
        }
        Ok(FrobeniusCoords { alpha, beta })
    }

    pub fn rank(&self) -> usize {
        self.alpha.len()
    }

    /// The partition with these arms and legs.
    pub fn join(&self) -> Partition {
        let r = self.rank();
        let a = self.alpha.parts();
        let b = self.beta.parts();
        let mut parts: Vec<usize> = (0..r).map(|i| a[i] + i + 1).collect();
        let depth = b.first().map_or(0, |&b0| b0 + 1);
        for i in r + 1..=depth {
            parts.push((0..r).filter(|&j| b[j] + j + 1 >= i).count());
        }
        Partition::new(parts).expect("Frobenius join is a partition")
    }
}

/// The single hook `(a | b)`.
pub fn hook(a: usize, b: usize) -> Partition {
    FrobeniusCoords { alpha: StrictPartition { parts: vec![a] }, beta: StrictPartition { parts: vec![b] } }.join()
}

/// `λ(α) = (α | α')`, with `α'` the rectangle complement.
pub fn pseudosymmetric(alpha: &StrictPartition, n: usize) -> Result<Partition> {
    let beta = alpha.rectangle_complement(n)?;
    Ok(FrobeniusCoords { alpha: alpha.clone(), beta }.join())
}

impl Serialize for Partition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Partition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Partition, D::Error> {
        Partition::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}

impl Serialize for StrictPartition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(s)
    }
}

impl<'de> Deserialize<'de> for StrictPartition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<StrictPartition, D::Error> {
        StrictPartition::new(Vec::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
