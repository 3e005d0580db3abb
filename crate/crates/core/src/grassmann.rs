//! Frames of `N`-planes in `V ⊕ V*`, their Plücker and Cartan coordinates,
//! big-cell charts and the tautological embedding of `Gr_k(V)`.
//!
//! Rows `1..N` of a frame are `e`-coordinates and rows `N+1..2N` are
//! `f`-coordinates, so key `N+i` stands for `f_i` throughout.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exterior::{gamma_linear, hodge_sign, GeneratorIndex, Multivector, NFormVector};
use crate::indexset::{IndexSet, Sign};
use crate::linalg::{det_exact, Matrix, SkewMatrix};
use crate::partition::{FrobeniusCoords, Partition, StrictPartition};
use crate::rational::{self, Rational};

/// A basis of an `N`-dimensional subspace, as the columns of a `2N × N` matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Frame {
    n: usize,
    w: Matrix,
}

impl Frame {
    pub fn new(n: usize, w: Matrix) -> Result<Frame> {
        if w.rows() != 2 * n || w.cols() != n {
            return Err(Error::ShapeMismatch(format!("frame for N = {n} must be {}x{n}, got {}x{}", 2 * n, w.rows(), w.cols())));
        }
        let rank = w.rank();
        if rank != n {
            return Err(Error::RankDeficient { rank, expected: n });
        }
        Ok(Frame { n, w })
    }

    /// `[1_N; M]` for any square `M`.
    pub fn big_cell(m: &Matrix) -> Result<Frame> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.rows(), m.cols()));
        }
        Ok(Frame { n: m.rows(), w: Matrix::identity(m.rows()).vstack(m)? })
    }

    /// The point `V = span(e_1, …, e_N)`.
    pub fn canonical_v(n: usize) -> Frame {
        Frame { n, w: Matrix::identity(n).vstack(&Matrix::zeros(n, n)).expect("same width") }
    }

    /// `span(e_1, …, e_{N-1}, f_N)`, the canonical point of the other component.
    pub fn canonical_odd(n: usize) -> Frame {
        assert!(n >= 1);
        let mut w = Frame::canonical_v(n).w;
        w.set(n - 1, n - 1, Rational::zero());
        w.set(2 * n - 1, n - 1, Rational::one());
        Frame { n, w }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.w
    }

    /// Exchanges the `e_i` and `f_i` rows for every `i ∈ set`. This map
    /// preserves `Q`, so isotropic frames stay isotropic; it moves the
    /// coordinate chart around the point labelled by `set` onto the big cell.
    pub fn swap_rows(&self, set: &IndexSet) -> Result<Frame> {
        if set.ambient() != self.n {
            return Err(Error::AmbientMismatch(self.n, set.ambient()));
        }
        let order: Vec<usize> = (1..=2 * self.n)
            .map(|r| match r {
                r if r <= self.n && set.contains(r) => r + self.n,
                r if r > self.n && set.contains(r - self.n) => r - self.n,
                r => r,
            })
            .collect();
        let cols: Vec<usize> = (1..=self.n).collect();
        Ok(Frame { n: self.n, w: self.w.select(&order, &cols)? })
    }

    /// The same subspace in another basis, `W · G`.
    pub fn rebased(&self, g: &Matrix) -> Result<Frame> {
        Frame::new(self.n, self.w.mul(g)?)
    }
}

/// Gram matrix `[[0, 1], [1, 0]]` of `Q((X, μ), (Y, ν)) = ν(X) + μ(Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GramQ(Matrix);

impl GramQ {
    pub fn new(n: usize) -> GramQ {
        GramQ(Matrix::from_fn(2 * n, 2 * n, |i, j| {
            if i + n == j || j + n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        }))
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }
}

/// `Wᵀ Q W = 0` exactly.
pub fn is_isotropic(frame: &Frame) -> bool {
    let q = GramQ::new(frame.n);
    let qw = q.matrix().mul(&frame.w).expect("shapes agree");
    frame.w.transpose().mul(&qw).expect("shapes agree").is_zero()
}

/// Values shared by coordinate maps and multivectors for projective comparison.
pub trait CoordinateVector {
    type Key: Ord + Clone;
    /// Whether the two vectors live in the same space.
    fn same_shape(&self, other: &Self) -> bool;
    /// Nonzero coordinates.
    fn nonzero(&self) -> Vec<(Self::Key, Rational)>;
}

/// `x = c·y` for some nonzero `c`. Two zero vectors compare equal.
pub fn projective_equal<T: CoordinateVector>(x: &T, y: &T) -> Result<bool> {
    if !x.same_shape(y) {
        return Err(Error::ShapeMismatch("projective comparison of different shapes".into()));
    }
    let xs: BTreeMap<_, _> = x.nonzero().into_iter().collect();
    let ys: BTreeMap<_, _> = y.nonzero().into_iter().collect();
    if xs.len() != ys.len() || xs.keys().ne(ys.keys()) {
        return Ok(false);
    }
    let Some((k, x0)) = xs.iter().next() else {
        return Ok(true);
    };
    let c = x0 / &ys[k];
    Ok(xs.iter().all(|(k, v)| *v == &c * &ys[k]))
}

/// The scalar `c` with `x = c·y`, when one exists.
pub fn projective_ratio<T: CoordinateVector>(x: &T, y: &T) -> Result<Option<Rational>> {
    if !projective_equal(x, y)? {
        return Ok(None);
    }
    let xs = x.nonzero();
    let ys: BTreeMap<_, _> = y.nonzero().into_iter().collect();
    Ok(xs.first().map(|(k, v)| v / &ys[k]))
}

impl CoordinateVector for Multivector {
    type Key = IndexSet;
    fn same_shape(&self, other: &Self) -> bool {
        self.ambient() == other.ambient()
    }
    fn nonzero(&self) -> Vec<(IndexSet, Rational)> {
        self.terms().map(|(k, q)| (*k, q.clone())).collect()
    }
}

impl CoordinateVector for NFormVector {
    type Key = IndexSet;
    fn same_shape(&self, other: &Self) -> bool {
        self.n() == other.n() && self.grade() == other.grade()
    }
    fn nonzero(&self) -> Vec<(IndexSet, Rational)> {
        self.terms().map(|(k, q)| (*k, q.clone())).collect()
    }
}

/// `π_λ` for every `λ` in the `N × N` box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerCoordinates {
    n: usize,
    coords: BTreeMap<Partition, Rational>,
}

impl PluckerCoordinates {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// `π_λ`; partitions outside the box read as 0.
    pub fn get(&self, lambda: &Partition) -> Rational {
        self.coords.get(lambda).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &Rational)> {
        self.coords.iter()
    }

    /// `Σ_λ π_λ |λ⟩` with `|λ⟩ = e_{l_1} ∧ … ∧ e_{l_N}` (decreasing particle
    /// positions), written in the increasing key basis.
    pub fn to_nform(&self) -> NFormVector {
        let n = self.n;
        let flip = Sign::from_parity(n * n.saturating_sub(1) / 2);
        let mut v = NFormVector::zero(n, n);
        for (lambda, q) in &self.coords {
            let key = lambda.particle_set(n).expect("box partition");
            v.set(key, flip.apply(q.clone())).expect("grade N key");
        }
        v
    }
}

impl CoordinateVector for PluckerCoordinates {
    type Key = Partition;
    fn same_shape(&self, other: &Self) -> bool {
        self.n == other.n
    }
    fn nonzero(&self) -> Vec<(Partition, Rational)> {
        self.coords.iter().filter(|(_, q)| !q.is_zero()).map(|(k, q)| (k.clone(), q.clone())).collect()
    }
}

/// `det(W_λ)` with rows at the particle positions of `λ`, in decreasing order.
pub fn plucker_coordinate(frame: &Frame, lambda: &Partition) -> Result<Rational> {
    let rows = lambda.particle_positions(frame.n)?;
    let cols: Vec<usize> = (1..=frame.n).collect();
    det_exact(&frame.w.select(&rows, &cols)?)
}

pub fn plucker_coordinates(frame: &Frame) -> PluckerCoordinates {
    let coords = Partition::box_partitions(frame.n)
        .into_iter()
        .map(|lambda| {
            let q = plucker_coordinate(frame, &lambda).expect("box partition");
            (lambda, q)
        })
        .collect();
    PluckerCoordinates { n: frame.n, coords }
}

/// The partition labelling `f_{I(α)} ∧ *e_{I(β)}`: Frobenius arms `α`, legs the
/// rectangle complement of `β`.
pub fn frobenius_label(alpha: &StrictPartition, beta: &StrictPartition, n: usize) -> Result<Partition> {
    Ok(FrobeniusCoords::new(alpha.clone(), beta.rectangle_complement(n)?)?.join())
}

/// The sign `s` with `f_{I(α)} ∧ *e_{I(β)} = s |λ(α|β')⟩`, where `f_I`, `e_I`
/// are taken with `I` decreasing and `|λ⟩` is the decreasing wedge over the
/// particle positions. Computed from index arithmetic alone.
pub fn frobenius_basis_sign(alpha: &StrictPartition, beta: &StrictPartition, n: usize) -> Result<Sign> {
    let (key, sign) = frobenius_basis_key(alpha, beta, n)?;
    let lambda = frobenius_label(alpha, beta, n)?;
    if lambda.particle_set(n)? != key {
        return Err(Error::ShapeMismatch(format!("labels {alpha:?}, {beta:?} do not match {lambda:?}")));
    }
    Ok(sign * Sign::from_parity(n * n.saturating_sub(1) / 2))
}

/// Key and sign of `f_{I(α)} ∧ *e_{I(β)}` in the increasing basis of `Λ^N(V ⊕ V*)`.
fn frobenius_basis_key(alpha: &StrictPartition, beta: &StrictPartition, n: usize) -> Result<(IndexSet, Sign)> {
    let i = alpha.index_set(n)?;
    let j = beta.index_set(n)?;
    if i.len() != j.len() {
        return Err(Error::CardinalityMismatch("α and β need equal lengths".into()));
    }
    let r = i.len();
    // f_I and e_J decreasing each give (-1)^{r(r-1)/2}; they cancel. Moving the r
    // f's past the N-r e's of *e_J costs (-1)^{r(N-r)}.
    let sign = hodge_sign(&j) * Sign::from_parity(r * (n - r));
    let key = j.complement().with_ambient(2 * n)?.union(&i.shifted(n, 2 * n)?);
    Ok((key, sign))
}

/// `⟨f_{I(α)} ∧ *e_{I(β)} | Pl⟩`, the Plücker coordinate in the basis adapted to
/// Cartan coordinates.
pub fn cartan_frame_plucker(pl: &PluckerCoordinates, alpha: &StrictPartition, beta: &StrictPartition) -> Result<Rational> {
    let n = pl.n;
    let lambda = frobenius_label(alpha, beta, n)?;
    Ok(frobenius_basis_sign(alpha, beta, n)?.apply(pl.get(&lambda)))
}

/// Grade parity of a Cartan image: even grades span `Λ_+`, odd grades `Λ_-`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn of(k: usize) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    /// `'+'` for the component mapping into `Λ_+`, `'-'` otherwise.
    pub fn component_label(self) -> char {
        match self {
            Parity::Even => '+',
            Parity::Odd => '-',
        }
    }

    /// Parity of `ℓ(α)` for the labels carrying this component: `N - ℓ(α)`
    /// is the grade of `*e_{I(α)}`.
    pub fn label_parity(self, n: usize) -> Parity {
        match self {
            Parity::Even => Parity::of(n),
            Parity::Odd => Parity::of(n + 1),
        }
    }
}

/// `κ_α` for every strict partition of the populated parity, parts `≤ N-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanCoordinates {
    n: usize,
    parity: Parity,
    coords: BTreeMap<StrictPartition, Rational>,
}

impl CartanCoordinates {
    fn from_fn(n: usize, parity: Parity, mut f: impl FnMut(&StrictPartition) -> Result<Rational>) -> Result<CartanCoordinates> {
        let want = parity.label_parity(n);
        let mut coords = BTreeMap::new();
        for alpha in StrictPartition::all_in_range(n) {
            if Parity::of(alpha.len()) == want {
                let q = f(&alpha)?;
                coords.insert(alpha, q);
            }
        }
        Ok(CartanCoordinates { n, parity, coords })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parity(&self) -> Parity {
        self.parity
    }

    /// The `±` component label, derived from the grade parity.
    pub fn component_label(&self) -> char {
        self.parity.component_label()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// `κ_α`; labels of the other parity or out of range read as 0.
    pub fn get(&self, alpha: &StrictPartition) -> Rational {
        self.coords.get(alpha).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&StrictPartition, &Rational)> {
        self.coords.iter()
    }

    pub fn scale(&self, c: &Rational) -> CartanCoordinates {
        CartanCoordinates {
            n: self.n,
            parity: self.parity,
            coords: self.coords.iter().map(|(k, q)| (k.clone(), q * c)).collect(),
        }
    }
}

impl CoordinateVector for CartanCoordinates {
    type Key = StrictPartition;
    fn same_shape(&self, other: &Self) -> bool {
        self.n == other.n && self.parity == other.parity
    }
    fn nonzero(&self) -> Vec<(StrictPartition, Rational)> {
        self.coords.iter().filter(|(_, q)| !q.is_zero()).map(|(k, q)| (k.clone(), q.clone())).collect()
    }
}

/// `Γ_w` for a column of a frame.
fn gamma_column(frame: &Frame, j: usize, v: &Multivector) -> Multivector {
    let n = frame.n;
    let mut out = Multivector::zero(n);
    for x in 0..2 * n {
        let c = frame.w.get(x, j);
        if c.is_zero() {
            continue;
        }
        let g = if x < n { GeneratorIndex::e(x + 1) } else { GeneratorIndex::f(x + 1 - n) };
        let part = gamma_linear(g, v).expect("generator in range");
        out = out.add(&part.scale(c)).expect("same ambient");
    }
    out
}

/// `Γ_{w_1} ⋯ Γ_{w_N} v`.
pub fn frame_operator(frame: &Frame, v: &Multivector) -> Multivector {
    let mut w = v.clone();
    for j in (0..frame.n).rev() {
        w = gamma_column(frame, j, &w);
        if w.is_zero() {
            break;
        }
    }
    w
}

/// The rank-one image of `Γ_{w_1} ⋯ Γ_{w_N}`: the first nonzero image of a
/// basis monomial in graded-lex order, scaled so its leading coefficient is 1.
pub fn cartan_image(frame: &Frame) -> Result<Multivector> {
    if !is_isotropic(frame) {
        return Err(Error::NotIsotropic);
    }
    for key in IndexSet::all_subsets(frame.n) {
        let image = frame_operator(frame, &Multivector::basis(key));
        if let Some((_, lead)) = image.leading_term() {
            let c = lead.recip();
            return Ok(image.scale(&c));
        }
    }
    Err(Error::RankCollapse)
}

/// `cartan_image` plus a check that the images of all basis monomials are
/// proportional to it. Slow; meant for debugging.
pub fn cartan_image_checked(frame: &Frame) -> Result<Multivector> {
    let c = cartan_image(frame)?;
    for key in IndexSet::all_subsets(frame.n) {
        let image = frame_operator(frame, &Multivector::basis(key));
        if !image.is_zero() && !projective_equal(&image, &c)? {
            return Err(Error::RankCollapse);
        }
    }
    Ok(c)
}

/// `(c, *e_{I(α)})` with `e_{I(α)}` in decreasing order.
fn pair_with_star(c: &Multivector, alpha: &StrictPartition) -> Result<Rational> {
    let n = c.ambient();
    let i = alpha.index_set(n)?;
    let r = i.len();
    let s = hodge_sign(&i) * Sign::from_parity(r * r.saturating_sub(1) / 2);
    Ok(s.apply(c.coefficient(&i.complement())))
}

fn parity_of(c: &Multivector) -> Result<Parity> {
    let mut grades = c.terms().map(|(k, _)| Parity::of(k.len()));
    let p = grades.next().ok_or(Error::RankCollapse)?;
    if grades.any(|q| q != p) {
        return Err(Error::NotIsotropic);
    }
    Ok(p)
}

/// Coordinates of a given image multivector against `*e_{I(α)}`.
pub fn cartan_coordinates_of(c: &Multivector) -> Result<CartanCoordinates> {
    let parity = parity_of(c)?;
    CartanCoordinates::from_fn(c.ambient(), parity, |alpha| pair_with_star(c, alpha))
}

/// `κ_α = (Ca(F), *e_{I(α)})` on the normalized Cartan image.
pub fn cartan_coordinates(frame: &Frame) -> Result<CartanCoordinates> {
    cartan_coordinates_of(&cartan_image(frame)?)
}

/// `exp(Σ_{i<j} A_ij ψ†_i ψ†_j) Ω`, summed until the series terminates.
pub fn big_cell_spinor(a: &SkewMatrix) -> Multivector {
    let n = a.n();
    let step = |v: &Multivector| {
        let mut out = Multivector::zero(n);
        for i in 1..=n {
            for j in i + 1..=n {
                let c = a.entry(i, j);
                if c.is_zero() {
                    continue;
                }
                let inner = gamma_linear(GeneratorIndex::f(j), v).expect("in range");
                let outer = gamma_linear(GeneratorIndex::f(i), &inner).expect("in range");
                out = out.add(&outer.scale(c)).expect("same ambient");
            }
        }
        out
    };
    let mut term = Multivector::basis(IndexSet::full(n));
    let mut total = term.clone();
    let mut k = 1;
    loop {
        term = step(&term).scale(&rational::int(k).recip());
        if term.is_zero() {
            return total;
        }
        total = total.add(&term).expect("same ambient");
        k += 1;
    }
}

/// Cartan coordinates on the big cell, read off the exponential expansion.
pub fn cartan_big_cell(a: &SkewMatrix) -> CartanCoordinates {
    let spinor = big_cell_spinor(a);
    let parity = Parity::of(a.n());
    CartanCoordinates::from_fn(a.n(), parity, |alpha| pair_with_star(&spinor, alpha)).expect("labels in range")
}

/// `(-1)^{r/2} Pf(A(α))`, with `A(α)` the principal minor on `I(α)` listed in
/// decreasing order.
pub fn cartan_pfaffian_coordinates(a: &SkewMatrix) -> CartanCoordinates {
    let n = a.n();
    CartanCoordinates::from_fn(n, Parity::of(n), |alpha| {
        let order = alpha.index_set(n)?.to_vec_decreasing();
        let pf = crate::linalg::pfaffian(&a.principal_ordered(&order)?);
        Ok(Sign::from_parity(order.len() / 2).apply(pf))
    })
    .expect("labels in range")
}

/// `[1_N; A]`.
pub fn big_cell_frame(a: &SkewMatrix) -> Frame {
    Frame::big_cell(a.matrix()).expect("skew matrices are square")
}

/// Bottom block of `W · (top block)⁻¹`.
pub fn affine_matrix(frame: &Frame) -> Result<Matrix> {
    let n = frame.n;
    let cols: Vec<usize> = (1..=n).collect();
    let top = frame.w.select(&(1..=n).collect::<Vec<_>>(), &cols)?;
    let bottom = frame.w.select(&(n + 1..=2 * n).collect::<Vec<_>>(), &cols)?;
    let inv = top.inverse()?.ok_or(Error::NotInBigCell)?;
    bottom.mul(&inv)
}

/// The affine coordinate matrix `A^∅`; skew exactly when the frame is isotropic.
pub fn affine_chart(frame: &Frame) -> Result<SkewMatrix> {
    SkewMatrix::new(affine_matrix(frame)?)
}

/// The frame of `v ⊕ v^⊥` for a `k`-plane `v ⊆ V` given by an `N × k` matrix,
/// with `v^⊥ ⊆ V*` the exact annihilator.
pub fn iota_embed(v: &Matrix) -> Result<Frame> {
    let n = v.rows();
    let k = v.cols();
    let rank = v.rank();
    if rank != k {
        return Err(Error::RankDeficient { rank, expected: k });
    }
    let ann = v.transpose().nullspace();
    let w = Matrix::from_fn(2 * n, n, |i, j| match (i < n, j < k) {
        (true, true) => v.get(i, j).clone(),
        (false, false) => ann.get(i - n, j - k).clone(),
        _ => Rational::zero(),
    });
    Frame::new(n, w)
}

/// `v_1 ∧ … ∧ v_k` in `Λ(V)` for the columns of an `N × k` matrix.
pub fn column_wedge(v: &Matrix) -> Multivector {
    let n = v.rows();
    let mut acc = Multivector::scalar(n, Rational::one());
    for j in 0..v.cols() {
        let col = Multivector::from_terms(
            n,
            (0..n).map(|i| (IndexSet::new(n, [i + 1]).expect("in range"), v.get(i, j).clone())),
        )
        .expect("same ambient");
        acc = acc.wedge(&col).expect("same ambient");
    }
    acc
}

#[derive(Serialize)]
struct FrameOut<'a> {
    n: usize,
    w: &'a Matrix,
}

#[derive(Deserialize)]
struct FrameIn {
    n: usize,
    w: Matrix,
}

impl Serialize for Frame {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        FrameOut { n: self.n, w: &self.w }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Frame {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Frame, D::Error> {
        let f = FrameIn::deserialize(d)?;
        Frame::new(f.n, f.w).map_err(serde::de::Error::custom)
    }
}

/// One labelled coordinate, as written to JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Labelled<L> {
    pub label: L,
    #[serde(serialize_with = "rational::serde_str::serialize")]
    pub value: Rational,
}

impl Serialize for PluckerCoordinates {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Labelled<&Partition>> = self.coords.iter().map(|(k, q)| Labelled { label: k, value: q.clone() }).collect();
        v.serialize(s)
    }
}

impl Serialize for CartanCoordinates {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<Labelled<&StrictPartition>> =
            self.coords.iter().map(|(k, q)| Labelled { label: k, value: q.clone() }).collect();
        v.serialize(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_skew;
    use num_traits::Signed;

    fn sp(v: &[usize]) -> StrictPartition {
        StrictPartition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn isotropy_examples() {
        assert!(is_isotropic(&Frame::canonical_v(3)));
        assert!(is_isotropic(&big_cell_frame(&random_skew(4, 1, 9))));
        let s = Matrix::from_ints(&[[1, 2], [2, 0]]).unwrap();
        assert!(!is_isotropic(&Frame::big_cell(&s).unwrap()));
    }

    #[test]
    fn frame_validation() {
        assert!(matches!(Frame::new(2, Matrix::zeros(4, 2)), Err(Error::RankDeficient { rank: 0, expected: 2 })));
        assert!(matches!(Frame::new(2, Matrix::zeros(3, 2)), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn canonical_points() {
        for n in 1..5 {
            let omega = Multivector::basis(IndexSet::full(n));
            assert_eq!(cartan_image(&Frame::canonical_v(n)).unwrap(), omega);
            let low = IndexSet::new(n, 1..n).unwrap();
            assert_eq!(cartan_image(&Frame::canonical_odd(n)).unwrap(), Multivector::basis(low));
            let pl = plucker_coordinates(&Frame::canonical_v(n));
            assert_eq!(pl.nonzero().len(), 1);
            assert!(pl.get(&Partition::empty()).abs() == Rational::one());
        }
    }

    #[test]
    fn big_cell_agrees_with_pfaffians() {
        let a = random_skew(5, 3, 9);
        assert_eq!(cartan_big_cell(&a), cartan_pfaffian_coordinates(&a));
        let zero = cartan_big_cell(&SkewMatrix::zero(4));
        assert_eq!(zero.get(&StrictPartition::empty()), Rational::one());
        assert_eq!(zero.nonzero().len(), 1);
    }

    #[test]
    fn chart_round_trip() {
        let a = random_skew(4, 5, 9);
        let f = big_cell_frame(&a);
        assert_eq!(affine_chart(&f).unwrap(), a);
        let g = Matrix::from_ints(&[[1, 2, 0, 0], [0, 1, 0, 3], [0, 0, 1, 0], [1, 0, 0, 1]]).unwrap();
        assert_eq!(affine_chart(&f.rebased(&g).unwrap()).unwrap(), a);
        assert_eq!(affine_chart(&Frame::canonical_odd(3)), Err(Error::NotInBigCell));
        let s = Matrix::from_ints(&[[1, 0], [0, 0]]).unwrap();
        assert_eq!(affine_chart(&Frame::big_cell(&s).unwrap()), Err(Error::NotSkew));
    }

    #[test]
    fn cartan_coordinates_odd_point() {
        let c = cartan_coordinates(&Frame::canonical_odd(3)).unwrap();
        assert_eq!(c.parity(), Parity::Even);
        let v = cartan_coordinates(&Frame::canonical_v(3)).unwrap();
        assert_eq!(v.parity(), Parity::Odd);
        let nz = c.nonzero();
        assert_eq!(nz.len(), 1);
        assert_eq!(nz[0].0, sp(&[2]));
        assert_eq!(c.len(), 4);
    }

    #[test]
    fn not_isotropic_rejected() {
        let s = Matrix::from_ints(&[[1, 0], [0, 0]]).unwrap();
        let f = Frame::big_cell(&s).unwrap();
        assert_eq!(cartan_image(&f), Err(Error::NotIsotropic));
    }

    #[test]
    fn iota_examples() {
        let f = iota_embed(&Matrix::identity(3)).unwrap();
        assert_eq!(f, Frame::canonical_v(3));
        let v = Matrix::from_ints(&[[1], [0], [0]]).unwrap();
        let f = iota_embed(&v).unwrap();
        assert!(is_isotropic(&f));
        assert_eq!(cartan_image(&f).unwrap(), Multivector::basis(IndexSet::new(3, [1]).unwrap()));
        assert!(matches!(iota_embed(&Matrix::zeros(3, 1)), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn projective_examples() {
        let x = cartan_big_cell(&random_skew(4, 9, 9));
        assert!(projective_equal(&x, &x.scale(&rational::int(3))).unwrap());
        assert!(!projective_equal(&x, &x.scale(&Rational::zero())).unwrap());
        let y = cartan_big_cell(&random_skew(3, 9, 9));
        assert!(projective_equal(&x, &y).is_err());
    }

    #[test]
    fn basis_sign_key_matches_particles() {
        for n in 1..6 {
            for alpha in StrictPartition::all_in_range(n) {
                for beta in StrictPartition::all_in_range(n) {
                    if alpha.len() == beta.len() {
                        assert!(frobenius_basis_sign(&alpha, &beta, n).is_ok());
                    }
                }
            }
        }
    }
}
