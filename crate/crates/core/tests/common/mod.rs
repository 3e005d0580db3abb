//! Slow, independently written reference implementations used only by tests.
#![allow(dead_code)]

use num_traits::{One, Zero};
use spinor_grass::{Matrix, Rational};

/// Pfaffian as a signed sum over perfect matchings of `0..n`. The sign of a
/// matching is `(-1)^{crossings}`.
pub fn pfaffian_by_matchings(m: &Matrix) -> Rational {
    let n = m.rows();
    if n % 2 == 1 {
        return Rational::zero();
    }
    let mut total = Rational::zero();
    let mut pairs = Vec::new();
    let mut used = vec![false; n];
    matchings(m, &mut used, &mut pairs, &mut total);
    total
}

fn matchings(m: &Matrix, used: &mut [bool], pairs: &mut Vec<(usize, usize)>, total: &mut Rational) {
    let Some(first) = used.iter().position(|u| !u) else {
        let crossings = pairs
            .iter()
            .enumerate()
            .flat_map(|(x, &(a, b))| pairs[x + 1..].iter().map(move |&(c, d)| (a, b, c, d)))
            .filter(|&(a, b, c, d)| (a < c && c < b && b < d) || (c < a && a < d && d < b))
            .count();
        let mut term = Rational::one();
        for &(a, b) in pairs.iter() {
            term *= m.get(a, b);
        }
        if crossings % 2 == 1 {
            term = -term;
        }
        *total += term;
        return;
    };
    used[first] = true;
    for partner in first + 1..used.len() {
        if used[partner] {
            continue;
        }
        used[partner] = true;
        pairs.push((first, partner));
        matchings(m, used, pairs, total);
        pairs.pop();
        used[partner] = false;
    }
    used[first] = false;
}

/// Determinant by Laplace expansion along the first row.
pub fn det_by_cofactors(m: &Matrix) -> Rational {
    let n = m.rows();
    assert_eq!(n, m.cols());
    if n == 0 {
        return Rational::one();
    }
    let rows: Vec<usize> = (0..n).collect();
    let cols: Vec<usize> = (0..n).collect();
    laplace(m, &rows, &cols)
}

fn laplace(m: &Matrix, rows: &[usize], cols: &[usize]) -> Rational {
    if rows.is_empty() {
        return Rational::one();
    }
    let r = rows[0];
    let mut acc = Rational::zero();
    for (x, &c) in cols.iter().enumerate() {
        let entry = m.get(r, c);
        if entry.is_zero() {
            continue;
        }
        let rest: Vec<usize> = cols.iter().copied().filter(|&y| y != c).collect();
        let minor = laplace(m, &rows[1..], &rest);
        if x % 2 == 0 {
            acc += entry * minor;
        } else {
            acc -= entry * minor;
        }
    }
    acc
}

/// Parity of a permutation of distinct values via its cycle decomposition:
/// odd iff `len - #cycles` is odd.
pub fn permutation_is_odd(seq: &[usize]) -> bool {
    let mut sorted: Vec<usize> = seq.to_vec();
    sorted.sort_unstable();
    let rank: Vec<usize> = seq.iter().map(|v| sorted.binary_search(v).unwrap()).collect();
    let mut seen = vec![false; rank.len()];
    let mut cycles = 0;
    for start in 0..rank.len() {
        if seen[start] {
            continue;
        }
        cycles += 1;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = rank[x];
        }
    }
    (rank.len() - cycles) % 2 == 1
}

/// Submatrix on 1-based row and column lists, in the given order.
pub fn pick(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    Matrix::from_fn(rows.len(), cols.len(), |i, j| m.get(rows[i] - 1, cols[j] - 1).clone())
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}
