//! Dense exact linear algebra over the rationals.

use std::collections::HashMap;
use std::fmt;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::indexset::IndexSet;
use crate::rational::{self, serde_str::RawRational, Rational};

/// Row-major rational matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Rational>) -> Result<Matrix> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!("{} entries for a {rows}x{cols} matrix", data.len())));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Matrix {
        Matrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Matrix {
        Matrix::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// Builds a matrix from a 0-based entry function.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Matrix {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    /// Integer matrix from nested rows; all rows must share a length.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Result<Matrix> {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.as_ref().len() != cols {
                return Err(Error::ShapeMismatch("ragged rows".into()));
            }
            data.extend(r.as_ref().iter().map(|&x| rational::int(x)));
        }
        Ok(Matrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// Entry at 0-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = Rational::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if !a.is_zero() {
                    acc += a * other.get(k, j);
                }
            }
            acc
        }))
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|x| x * c).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Rows and columns picked by 1-based index lists, in the given order.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Result<Matrix> {
        for &r in rows {
            if r == 0 || r > self.rows {
                return Err(Error::IndexOutOfRange { index: r, len: self.rows });
            }
        }
        for &c in cols {
            if c == 0 || c > self.cols {
                return Err(Error::IndexOutOfRange { index: c, len: self.cols });
            }
        }
        Ok(Matrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i] - 1, cols[j] - 1).clone()))
    }

    /// Stacks `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::ShapeMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix { rows: self.rows + other.rows, cols: self.cols, data })
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : M x = 0}` as columns of the returned `cols × d` matrix.
    pub fn nullspace(&self) -> Matrix {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        Matrix::from_fn(self.cols, free.len(), |i, k| {
            let f = free[k];
            if i == f {
                Rational::one()
            } else if let Some(row) = pivots.iter().position(|&p| p == i) {
                -r.get(row, f).clone()
            } else {
                Rational::zero()
            }
        })
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Some(Matrix::zeros(0, 0)));
        }
        let mut aug = Matrix::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Rational::one());
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(n, n, |i, j| r.get(i, n + j).clone())))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(rational::format).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Exact determinant by Bareiss fraction-free elimination with row pivoting.
/// The empty matrix has determinant 1.
pub fn det_exact(m: &Matrix) -> Result<Rational> {
    if !m.is_square() {
        return Err(Error::NotSquare(m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(Rational::one());
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = Rational::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&i| !a.get(i, k).is_zero()) else {
            return Ok(Rational::zero());
        };
        if p != k {
            a.swap_rows(p, k);
            negate = !negate;
        }
        let pivot = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (a.get(i, j) * &pivot - a.get(i, k) * a.get(k, j)) / &prev;
                a.set(i, j, v);
            }
        }
        prev = pivot;
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if negate { -d } else { d })
}

/// Rows and columns selected by index sets, both in increasing order.
pub fn submatrix(m: &Matrix, rows: &IndexSet, cols: &IndexSet) -> Result<Matrix> {
    m.select(&rows.to_vec(), &cols.to_vec())
}

/// Square matrix with `Aᵀ = -A`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SkewMatrix(Matrix);

impl SkewMatrix {
    pub fn new(m: Matrix) -> Result<SkewMatrix> {
        if !m.is_square() {
            return Err(Error::NotSquare(m.rows, m.cols));
        }
        for i in 0..m.rows {
            for j in i..m.rows {
                if *m.get(i, j) != -m.get(j, i).clone() {
                    return Err(Error::NotSkew);
                }
            }
        }
        Ok(SkewMatrix(m))
    }

    pub fn zero(n: usize) -> SkewMatrix {
        SkewMatrix(Matrix::zeros(n, n))
    }

    /// Skew matrix with the given strict upper triangle, listed row by row.
    pub fn from_upper(n: usize, upper: &[Rational]) -> Result<SkewMatrix> {
        if upper.len() != n * n.saturating_sub(1) / 2 {
            return Err(Error::ShapeMismatch(format!("{} upper entries for n = {n}", upper.len())));
        }
        let mut m = Matrix::zeros(n, n);
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().unwrap().clone();
                m.set(j, i, -v.clone());
                m.set(i, j, v);
            }
        }
        Ok(SkewMatrix(m))
    }

    pub fn n(&self) -> usize {
        self.0.rows
    }

    pub fn matrix(&self) -> &Matrix {
        &self.0
    }

    pub fn into_matrix(self) -> Matrix {
        self.0
    }

    /// Entry at 1-based `(i, j)`.
    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        self.0.get(i - 1, j - 1)
    }

    /// Principal minor on `set`, in increasing order.
    pub fn principal(&self, set: &IndexSet) -> Result<SkewMatrix> {
        self.principal_ordered(&set.to_vec())
    }

    /// Principal minor with rows and columns in the given 1-based order.
    pub fn principal_ordered(&self, order: &[usize]) -> Result<SkewMatrix> {
        Ok(SkewMatrix(self.0.select(order, order)?))
    }
}

impl fmt::Debug for SkewMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Skew{:?}", self.0)
    }
}

/// Pfaffian by first-row expansion, memoized over the remaining index set.
///
/// `Pf([[0, a], [-a, 0]]) = a`, the empty matrix gives 1 and odd sizes give 0.
pub fn pfaffian(a: &SkewMatrix) -> Rational {
    let n = a.n();
    if n % 2 == 1 {
        return Rational::zero();
    }
    assert!(n <= 63, "pfaffian limited to n <= 63");
    let mut memo = HashMap::new();
    pf_rec(a.matrix(), low_bits(n), &mut memo)
}

fn low_bits(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

fn pf_rec(a: &Matrix, mask: u64, memo: &mut HashMap<u64, Rational>) -> Rational {
    if mask == 0 {
        return Rational::one();
    }
    if let Some(v) = memo.get(&mask) {
        return v.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let mut rest = mask & (mask - 1);
    let mut acc = Rational::zero();
    let mut odd = false;
    while rest != 0 {
        let j = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let x = a.get(first, j);
        if !x.is_zero() {
            let sub = pf_rec(a, mask & !(1 << first) & !(1 << j), memo);
            let term = x * sub;
            if odd {
                acc -= term;
            } else {
                acc += term;
            }
        }
        odd = !odd;
    }
    memo.insert(mask, acc.clone());
    acc
}

/// Pfaffians of every principal minor of a skew matrix, keyed by index set.
///
/// Each entry uses the minor in increasing index order; odd sets are 0.
#[derive(Clone, Debug)]
pub struct PfaffianTable {
    n: usize,
    values: Vec<Rational>,
}

impl PfaffianTable {
    pub fn new(a: &SkewMatrix) -> PfaffianTable {
        let n = a.n();
        assert!(n <= 24, "principal Pfaffian table limited to n <= 24");
        let m = a.matrix();
        let size = 1usize << n;
        let mut values = vec![Rational::zero(); size];
        values[0] = Rational::one();
        for mask in 1..size as u64 {
            if mask.count_ones() % 2 == 1 {
                continue;
            }
            let first = mask.trailing_zeros() as usize;
            let mut rest = mask & (mask - 1);
            let mut acc = Rational::zero();
            let mut odd = false;
            while rest != 0 {
                let j = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                let x = m.get(first, j);
                if !x.is_zero() {
                    let sub = &values[(mask & !(1 << first) & !(1 << j)) as usize];
                    if odd {
                        acc -= x * sub;
                    } else {
                        acc += x * sub;
                    }
                }
                odd = !odd;
            }
            values[mask as usize] = acc;
        }
        PfaffianTable { n, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, set: &IndexSet) -> &Rational {
        &self.values[set.bits() as usize]
    }
}

/// Deterministic generator used for every random instance: ChaCha8 seeded
/// from the 64-bit seed.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Mixes a base seed with a stream index (splitmix64 finalizer), so that
/// trial `t` of a suite has its own reproducible seed.
pub fn derive_seed(seed: u64, stream: u64) -> u64 {
    let mut z = seed.wrapping_add(stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Random skew matrix with strict-upper entries uniform in `[-bound, bound]`.
pub fn random_skew(n: usize, seed: u64, bound: i64) -> SkewMatrix {
    let mut rng = seeded_rng(seed);
    random_skew_with(n, &mut rng, bound)
}

pub fn random_skew_with(n: usize, rng: &mut impl Rng, bound: i64) -> SkewMatrix {
    let upper: Vec<Rational> = (0..n * n.saturating_sub(1) / 2)
        .map(|_| rational::int(rng.random_range(-bound..=bound)))
        .collect();
    SkewMatrix::from_upper(n, &upper).expect("upper triangle has the right length")
}

/// Random integer matrix with entries uniform in `[-bound, bound]`.
pub fn random_matrix_with(rows: usize, cols: usize, rng: &mut impl Rng, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| rational::int(rng.random_range(-bound..=bound)))
}

#[derive(Serialize)]
struct MatrixOut {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<String>>,
}

#[derive(Deserialize)]
struct MatrixIn {
    rows: usize,
    cols: usize,
    entries: Vec<Vec<RawRational>>,
}

impl Serialize for Matrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MatrixOut {
            rows: self.rows,
            cols: self.cols,
            entries: (0..self.rows).map(|i| self.row(i).iter().map(rational::format).collect()).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Matrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Matrix, D::Error> {
        use serde::de::Error as _;
        let repr = MatrixIn::deserialize(d)?;
        if repr.entries.len() != repr.rows || repr.entries.iter().any(|r| r.len() != repr.cols) {
            return Err(D::Error::custom(format!("entries do not form a {}x{} grid", repr.rows, repr.cols)));
        }
        let data = repr
            .entries
            .into_iter()
            .flatten()
            .map(RawRational::into_rational)
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        Ok(Matrix { rows: repr.rows, cols: repr.cols, data })
    }
}

impl Serialize for SkewMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<SkewMatrix, D::Error> {
        use serde::de::Error as _;
        SkewMatrix::new(Matrix::deserialize(d)?).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;

    fn q(s: &str) -> Rational {
        rational::parse(s).unwrap()
    }

    #[test]
    fn det_small_cases() {
        assert_eq!(det_exact(&Matrix::zeros(0, 0)).unwrap(), rational::one());
        assert_eq!(det_exact(&Matrix::identity(4)).unwrap(), rational::one());
        let swap = Matrix::from_ints(&[[0, 1, 0], [1, 0, 0], [0, 0, 1]]).unwrap();
        assert_eq!(det_exact(&swap).unwrap(), rational::int(-1));
        let m = Matrix::from_ints(&[[2, 0, 1], [1, 3, 2], [1, 1, 2]]).unwrap();
        assert_eq!(det_exact(&m).unwrap(), rational::int(6));
        assert_eq!(det_exact(&Matrix::zeros(2, 3)), Err(Error::NotSquare(2, 3)));
        let singular = Matrix::from_ints(&[[1, 2], [2, 4]]).unwrap();
        assert_eq!(det_exact(&singular).unwrap(), rational::zero());
    }

    #[test]
    fn det_with_fractions() {
        let m = Matrix::new(2, 2, vec![q("1/2"), q("1/3"), q("1/4"), q("1/5")]).unwrap();
        assert_eq!(det_exact(&m).unwrap(), q("1/10") - q("1/12"));
    }

    #[test]
    fn pfaffian_small_cases() {
        assert_eq!(pfaffian(&SkewMatrix::zero(0)), rational::one());
        let a = SkewMatrix::from_upper(2, &[rational::int(5)]).unwrap();
        assert_eq!(pfaffian(&a), rational::int(5));
        assert_eq!(pfaffian(&random_skew(5, 3, 9)), rational::zero());
        // Pf of 4x4 = a12 a34 - a13 a24 + a14 a23
        let a = SkewMatrix::from_upper(4, &[1, 2, 3, 4, 5, 6].map(rational::int)).unwrap();
        assert_eq!(pfaffian(&a), rational::int(6 - 2 * 5 + 3 * 4));
    }

    #[test]
    fn pfaffian_table_matches_direct() {
        let a = random_skew(6, 11, 9);
        let t = PfaffianTable::new(&a);
        for s in IndexSet::all_subsets(6) {
            assert_eq!(t.get(&s), &pfaffian(&a.principal(&s).unwrap()));
        }
    }

    #[test]
    fn skew_validation() {
        let not_skew = Matrix::from_ints(&[[0, 1], [1, 0]]).unwrap();
        assert_eq!(SkewMatrix::new(not_skew), Err(Error::NotSkew));
        let diag = Matrix::from_ints(&[[1, 0], [0, -1]]).unwrap();
        assert_eq!(SkewMatrix::new(diag), Err(Error::NotSkew));
        assert_eq!(SkewMatrix::new(Matrix::zeros(1, 2)), Err(Error::NotSquare(1, 2)));
    }

    #[test]
    fn random_skew_contract() {
        assert_eq!(random_skew(5, 42, 9), random_skew(5, 42, 9));
        assert_ne!(random_skew(5, 42, 9), random_skew(5, 43, 9));
        let a = random_skew(6, 1, 3);
        assert_eq!(a.matrix().transpose().scale(&rational::int(-1)), *a.matrix());
        for i in 0..6 {
            for j in 0..6 {
                assert!(a.matrix().get(i, j).abs() <= rational::int(3));
            }
        }
        assert_eq!(random_skew(0, 1, 9).n(), 0);
    }

    #[test]
    fn submatrix_selection() {
        let m = Matrix::from_ints(&[[1, 2, 3], [4, 5, 6], [7, 8, 9]]).unwrap();
        let full = IndexSet::full(3);
        assert_eq!(submatrix(&m, &full, &full).unwrap(), m);
        let one = IndexSet::new(3, [1]).unwrap();
        assert_eq!(submatrix(&m, &one, &one).unwrap(), Matrix::from_ints(&[[1]]).unwrap());
        let big = IndexSet::new(4, [4]).unwrap();
        assert!(matches!(submatrix(&m, &big, &one), Err(Error::IndexOutOfRange { .. })));
        let a = random_skew(5, 2, 9);
        let s = IndexSet::new(5, [1, 3, 4]).unwrap();
        assert!(SkewMatrix::new(submatrix(a.matrix(), &s, &s).unwrap()).is_ok());
    }

    #[test]
    fn rref_nullspace_inverse() {
        let m = Matrix::from_ints(&[[1, 2, 3], [2, 4, 6]]).unwrap();
        assert_eq!(m.rank(), 1);
        let ns = m.nullspace();
        assert_eq!(ns.cols(), 2);
        assert!(m.mul(&ns).unwrap().is_zero());
        let a = Matrix::from_ints(&[[2, 1], [7, 4]]).unwrap();
        let inv = a.inverse().unwrap().unwrap();
        assert_eq!(a.mul(&inv).unwrap(), Matrix::identity(2));
        assert_eq!(Matrix::from_ints(&[[1, 2], [2, 4]]).unwrap().inverse().unwrap(), None);
        assert_eq!(Matrix::zeros(0, 0).inverse().unwrap(), Some(Matrix::zeros(0, 0)));
    }

    #[test]
    fn json_round_trip() {
        let m = Matrix::new(1, 2, vec![q("-1/2"), q("3")]).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert_eq!(text, r#"{"rows":1,"cols":2,"entries":[["-1/2","3"]]}"#);
        assert_eq!(serde_json::from_str::<Matrix>(&text).unwrap(), m);
        let parsed: Matrix = serde_json::from_str(r#"{"rows":1,"cols":2,"entries":[[1,"2/4"]]}"#).unwrap();
        assert_eq!(parsed, Matrix::new(1, 2, vec![q("1"), q("1/2")]).unwrap());
        assert!(serde_json::from_str::<Matrix>(r#"{"rows":2,"cols":2,"entries":[["1","2"]]}"#).is_err());
        assert!(serde_json::from_str::<SkewMatrix>(r#"{"rows":2,"cols":2,"entries":[["0","1"],["1","0"]]}"#).is_err());
    }
}
