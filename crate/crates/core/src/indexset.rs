//! Index sets over `{1..M}` and the sign combinatorics built on them.
//!
//! Sets are stored as bitmasks and always iterate in increasing order. Signs
//! that the decreasing convention needs are computed explicitly where they
//! arise (`split_sign`, Hodge star, partition adapters).

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{det_exact, Matrix};
use crate::rational::{self, Rational};

pub const MAX_AMBIENT: usize = 63;

/// A sign `±1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^n`.
    pub fn from_parity(n: usize) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn to_rational(self) -> Rational {
        rational::int(self.to_i64())
    }

    pub fn apply(self, q: Rational) -> Rational {
        match self {
            Sign::Plus => q,
            Sign::Minus => -q,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

/// Sign of a permutation given in one-line notation, by inversion count.
/// Entries only need to be distinct.
pub fn permutation_sign(seq: &[usize]) -> Sign {
    let mut inv = 0;
    for i in 0..seq.len() {
        for j in i + 1..seq.len() {
            if seq[i] > seq[j] {
                inv += 1;
            }
        }
    }
    Sign::from_parity(inv)
}

/// A subset of `{1..ambient}`.
///
/// `Ord` is graded-lexicographic: first by cardinality, then by comparing the
/// increasing element sequences lexicographically. Sets in different ambients
/// order by ambient first.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct IndexSet {
    bits: u64,
    ambient: u8,
}

impl IndexSet {
    pub fn new(ambient: usize, elements: impl IntoIterator<Item = usize>) -> Result<IndexSet> {
        check_ambient(ambient)?;
        let mut bits = 0u64;
        for e in elements {
            if e == 0 || e > ambient {
                return Err(Error::ElementOutOfRange { element: e, ambient });
            }
            bits |= 1 << (e - 1);
        }
        Ok(IndexSet { bits, ambient: ambient as u8 })
    }

    /// Bit `k` stands for element `k + 1`.
    pub fn from_bits(ambient: usize, bits: u64) -> Result<IndexSet> {
        check_ambient(ambient)?;
        if bits >> ambient != 0 {
            let element = 64 - bits.leading_zeros() as usize;
            return Err(Error::ElementOutOfRange { element, ambient });
        }
        Ok(IndexSet { bits, ambient: ambient as u8 })
    }

    pub fn empty(ambient: usize) -> IndexSet {
        assert!(ambient <= MAX_AMBIENT, "ambient {ambient} too large");
        IndexSet { bits: 0, ambient: ambient as u8 }
    }

    pub fn full(ambient: usize) -> IndexSet {
        assert!(ambient <= MAX_AMBIENT, "ambient {ambient} too large");
        IndexSet { bits: low_mask(ambient), ambient: ambient as u8 }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn ambient(&self) -> usize {
        self.ambient as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, i: usize) -> bool {
        i >= 1 && i <= self.ambient() && self.bits >> (i - 1) & 1 == 1
    }

    /// Elements in increasing order.
    pub fn iter(&self) -> Elements {
        Elements { bits: self.bits }
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn to_vec_decreasing(&self) -> Vec<usize> {
        let mut v = self.to_vec();
        v.reverse();
        v
    }

    /// Number of elements strictly smaller than `i`.
    pub fn count_below(&self, i: usize) -> usize {
        (self.bits & low_mask(i.saturating_sub(1).min(63))).count_ones() as usize
    }

    /// Number of elements strictly larger than `i`.
    pub fn count_above(&self, i: usize) -> usize {
        if i >= 64 {
            return 0;
        }
        (self.bits & !low_mask(i)).count_ones() as usize
    }

    pub fn complement(&self) -> IndexSet {
        IndexSet { bits: !self.bits & low_mask(self.ambient()), ambient: self.ambient }
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        self.same_ambient(other);
        IndexSet { bits: self.bits | other.bits, ambient: self.ambient }
    }

    pub fn intersection(&self, other: &IndexSet) -> IndexSet {
        self.same_ambient(other);
        IndexSet { bits: self.bits & other.bits, ambient: self.ambient }
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        self.same_ambient(other);
        IndexSet { bits: self.bits & !other.bits, ambient: self.ambient }
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.bits & !other.bits == 0
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.bits & other.bits == 0
    }

    pub fn insert(&self, i: usize) -> Result<IndexSet> {
        if i == 0 || i > self.ambient() {
            return Err(Error::ElementOutOfRange { element: i, ambient: self.ambient() });
        }
        Ok(IndexSet { bits: self.bits | 1 << (i - 1), ambient: self.ambient })
    }

    pub fn remove(&self, i: usize) -> IndexSet {
        if i == 0 || i > 63 {
            return *self;
        }
        IndexSet { bits: self.bits & !(1 << (i - 1)), ambient: self.ambient }
    }

    /// Shifts every element by `offset` into a new ambient (e.g. `J + N` inside `{1..2N}`).
    pub fn shifted(&self, offset: usize, ambient: usize) -> Result<IndexSet> {
        IndexSet::new(ambient, self.iter().map(|i| i + offset))
    }

    /// The same elements viewed in another ambient.
    pub fn with_ambient(&self, ambient: usize) -> Result<IndexSet> {
        IndexSet::from_bits(ambient, self.bits)
    }

    /// All `k`-subsets of `{1..ambient}` in increasing graded-lex order.
    pub fn subsets_of_size(ambient: usize, k: usize) -> Vec<IndexSet> {
        let mut out = Vec::new();
        let mut cur = Vec::with_capacity(k);
        fn rec(start: usize, ambient: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<IndexSet>) {
            if cur.len() == k {
                out.push(IndexSet::new(ambient, cur.iter().copied()).unwrap());
                return;
            }
            for i in start..=ambient {
                if ambient - i + 1 < k - cur.len() {
                    break;
                }
                cur.push(i);
                rec(i + 1, ambient, k, cur, out);
                cur.pop();
            }
        }
        if k <= ambient {
            rec(1, ambient, k, &mut cur, &mut out);
        }
        out
    }

    /// Every subset of `{1..ambient}`, graded-lex.
    pub fn all_subsets(ambient: usize) -> Vec<IndexSet> {
        (0..=ambient).flat_map(|k| IndexSet::subsets_of_size(ambient, k)).collect()
    }

    /// Every subset of `self`, as sets in the same ambient. Order follows the bitmask.
    pub fn subsets(&self) -> Vec<IndexSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mut sub = 0u64;
        loop {
            out.push(IndexSet { bits: sub, ambient: self.ambient });
            if sub == self.bits {
                break;
            }
            sub = (sub.wrapping_sub(self.bits)) & self.bits;
        }
        out
    }

    fn same_ambient(&self, other: &IndexSet) {
        assert_eq!(self.ambient, other.ambient, "index sets from different ambients");
    }
}

fn low_mask(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

fn check_ambient(ambient: usize) -> Result<()> {
    if ambient > MAX_AMBIENT {
        Err(Error::AmbientTooLarge(ambient))
    } else {
        Ok(())
    }
}

pub struct Elements {
    bits: u64,
}

impl Iterator for Elements {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.bits == 0 {
            return None;
        }
        let tz = self.bits.trailing_zeros() as usize;
        self.bits &= self.bits - 1;
        Some(tz + 1)
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.len().cmp(&other.len()))
            .then_with(|| {
                let diff = self.bits ^ other.bits;
                if diff == 0 {
                    Ordering::Equal
                } else if self.bits & diff & diff.wrapping_neg() != 0 {
                    // `self` holds the smallest element where they differ.
                    Ordering::Less
                } else {
                    Ordering::Greater
                }
            })
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}/{}", self.to_vec(), self.ambient)
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// Sign of the permutation `(I, Ĩ)` of `(1..N)` with both blocks listed in
/// DECREASING order, `N` being the ambient of `I`.
pub fn split_sign(set: &IndexSet) -> Sign {
    let mut seq = set.to_vec_decreasing();
    seq.extend(set.complement().to_vec_decreasing());
    permutation_sign(&seq)
}

/// `#{(i, j) : i ∈ E, j ∈ F, i > j}` for disjoint `E`, `F`.
pub fn mu_count(e: &IndexSet, f: &IndexSet) -> Result<usize> {
    if !e.is_disjoint(f) {
        return Err(Error::NonDisjoint);
    }
    Ok(e.iter().map(|i| f.count_below(i)).sum())
}

/// The disjoint blocks behind a quadruple with `K∪L = I∪J`, `K∩L = I∩J`:
/// `I = A∪B∪S`, `J = C∪D∪S`, `K = A∪C∪S`, `L = B∪D∪S`, `T = I∪J`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbcdsDecomposition {
    pub a: IndexSet,
    pub b: IndexSet,
    pub c: IndexSet,
    pub d: IndexSet,
    pub s: IndexSet,
    pub t: IndexSet,
}

pub fn decompose_abcds(i: &IndexSet, j: &IndexSet, k: &IndexSet, l: &IndexSet) -> Result<AbcdsDecomposition> {
    check_same_ambient(&[i, j, k, l])?;
    let t = i.union(j);
    let s = i.intersection(j);
    if k.union(l) != t || k.intersection(l) != s {
        return Err(Error::IncompatibleQuadruple);
    }
    Ok(AbcdsDecomposition {
        a: i.intersection(k).difference(&s),
        b: i.intersection(l).difference(&s),
        c: j.intersection(k).difference(&s),
        d: j.intersection(l).difference(&s),
        s,
        t,
    })
}

/// `L = ((I∪J) \ K) ∪ (I∩J)`, the unique partner of `K`.
pub fn partner_set(i: &IndexSet, j: &IndexSet, k: &IndexSet) -> Result<IndexSet> {
    check_same_ambient(&[i, j, k])?;
    let t = i.union(j);
    let s = i.intersection(j);
    if !k.is_subset(&t) || !s.is_subset(k) {
        return Err(Error::NoPartner);
    }
    Ok(t.difference(k).union(&s))
}

/// `ν = μ(A,B) + μ(A,C) + μ(C,D) + μ(B,D)`.
pub fn nu_exponent(i: &IndexSet, j: &IndexSet, k: &IndexSet, l: &IndexSet) -> Result<usize> {
    let q = decompose_abcds(i, j, k, l)?;
    Ok(mu_count(&q.a, &q.b)? + mu_count(&q.a, &q.c)? + mu_count(&q.c, &q.d)? + mu_count(&q.b, &q.d)?)
}

/// Sign of the permutation carrying the signed sequence `(K⁺ | L⁻)` onto
/// `(I^ε | J^ε)`. Members of `S = I∩J` are `+` in the `I` block and `-` in the
/// `J` block; every other element gets the sign of the block of `K`/`L` it
/// came from.
pub fn signed_perm_sign(i: &IndexSet, j: &IndexSet, k: &IndexSet, l: &IndexSet) -> Result<Sign> {
    if i.len() + j.len() != k.len() + l.len() {
        return Err(Error::CardinalityMismatch("|I|+|J| must equal |K|+|L|".into()));
    }
    let q = decompose_abcds(i, j, k, l)?;
    let source: Vec<(usize, bool)> = k.iter().map(|x| (x, true)).chain(l.iter().map(|x| (x, false))).collect();
    let eps = |x: usize, in_i: bool| {
        if q.s.contains(x) {
            in_i
        } else {
            k.contains(x)
        }
    };
    let target = i.iter().map(|x| (x, eps(x, true))).chain(j.iter().map(|x| (x, eps(x, false))));
    let positions: Vec<usize> = target
        .map(|t| source.iter().position(|s| *s == t).expect("signed sequences carry the same entries"))
        .collect();
    Ok(permutation_sign(&positions))
}

/// Which backend `delta_bracket` uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DeltaMode {
    /// Determinant of the `2r × 2r` submatrix of `[[1, 1], [1, -1]]`.
    Oracle,
    /// `(-1)^{jd+ν} 2^s` on the compatible locus, `0` elsewhere.
    Closed,
}

/// `Δ_{(IJ|KL)}`.
pub fn delta_bracket(i: &IndexSet, j: &IndexSet, k: &IndexSet, l: &IndexSet, mode: DeltaMode) -> Result<Rational> {
    check_same_ambient(&[i, j, k, l])?;
    if i.len() + j.len() != k.len() + l.len() {
        return Err(Error::CardinalityMismatch("|I|+|J| must equal |K|+|L|".into()));
    }
    match mode {
        DeltaMode::Oracle => {
            let rows: Vec<(usize, bool)> = i.iter().map(|x| (x, true)).chain(j.iter().map(|x| (x, false))).collect();
            let cols: Vec<(usize, bool)> = k.iter().map(|x| (x, true)).chain(l.iter().map(|x| (x, false))).collect();
            let m = Matrix::from_fn(rows.len(), cols.len(), |r, c| {
                let (x, top) = rows[r];
                let (y, left) = cols[c];
                if x != y {
                    rational::zero()
                } else if !top && !left {
                    rational::int(-1)
                } else {
                    rational::one()
                }
            });
            det_exact(&m)
        }
        DeltaMode::Closed => {
            if k.len() % 2 == 1 || l.len() % 2 == 1 {
                return Err(Error::OddCardinality);
            }
            let q = match decompose_abcds(i, j, k, l) {
                Ok(q) => q,
                Err(Error::IncompatibleQuadruple) => return Ok(rational::zero()),
                Err(e) => return Err(e),
            };
            let nu = nu_exponent(i, j, k, l)?;
            let exp = j.len() * q.d.len() + nu;
            Ok(Sign::from_parity(exp).apply(rational::pow2(q.s.len() as i64)))
        }
    }
}

fn check_same_ambient(sets: &[&IndexSet]) -> Result<()> {
    let m = sets[0].ambient();
    for s in sets {
        if s.ambient() != m {
            return Err(Error::AmbientMismatch(m, s.ambient()));
        }
    }
    Ok(())
}
