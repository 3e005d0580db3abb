//! Exterior algebra over bitmask keys, the Clifford action of `V ⊕ V*` on
//! `Λ(V)`, the Hodge star, the `C` operator and the forms `β_k`.
//!
//! Keys iterate in increasing order and `ε_I` denotes the increasing-order
//! basis element. The decreasing-order element `e_I` used for labels is
//! `(-1)^{r(r-1)/2} ε_I`; see [`decreasing_basis`].

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::indexset::{mu_count, permutation_sign, split_sign, IndexSet, Sign};
use crate::rational::{self, serde_str::RawRational, Rational};

/// Sparse element of an exterior algebra on `ambient` generators.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Multivector {
    ambient: usize,
    terms: BTreeMap<IndexSet, Rational>,
}

impl Multivector {
    pub fn zero(ambient: usize) -> Multivector {
        Multivector { ambient, terms: BTreeMap::new() }
    }

    pub fn scalar(ambient: usize, q: Rational) -> Multivector {
        let mut v = Multivector::zero(ambient);
        v.add_term(IndexSet::empty(ambient), q);
        v
    }

    /// The increasing-order basis element `ε_key`.
    pub fn basis(key: IndexSet) -> Multivector {
        let mut v = Multivector::zero(key.ambient());
        v.terms.insert(key, Rational::one());
        v
    }

    pub fn from_terms(ambient: usize, terms: impl IntoIterator<Item = (IndexSet, Rational)>) -> Result<Multivector> {
        let mut v = Multivector::zero(ambient);
        for (k, q) in terms {
            if k.ambient() != ambient {
                return Err(Error::AmbientMismatch(ambient, k.ambient()));
            }
            v.add_term(k, q);
        }
        Ok(v)
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Nonzero terms in graded-lex key order.
    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Rational)> {
        self.terms.iter()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &IndexSet) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    /// First nonzero term in graded-lex order.
    pub fn leading_term(&self) -> Option<(&IndexSet, &Rational)> {
        self.terms.iter().next()
    }

    pub fn add_term(&mut self, key: IndexSet, q: Rational) {
        if q.is_zero() {
            return;
        }
        debug_assert_eq!(key.ambient(), self.ambient);
        let slot = self.terms.entry(key).or_insert_with(Rational::zero);
        *slot += q;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    /// The common grade, if every term has the same one. Zero has none.
    pub fn grade(&self) -> Option<usize> {
        let mut it = self.terms.keys().map(IndexSet::len);
        let g = it.next()?;
        it.all(|h| h == g).then_some(g)
    }

    pub fn grade_part(&self, grade: usize) -> Multivector {
        Multivector {
            ambient: self.ambient,
            terms: self.terms.iter().filter(|(k, _)| k.len() == grade).map(|(k, q)| (*k, q.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> Multivector {
        if c.is_zero() {
            return Multivector::zero(self.ambient);
        }
        Multivector { ambient: self.ambient, terms: self.terms.iter().map(|(k, q)| (*k, q * c)).collect() }
    }

    pub fn add(&self, other: &Multivector) -> Result<Multivector> {
        self.check_ambient(other)?;
        let mut out = self.clone();
        for (k, q) in &other.terms {
            out.add_term(*k, q.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Multivector) -> Result<Multivector> {
        self.add(&other.scale(&-Rational::one()))
    }

    /// Exterior product.
    pub fn wedge(&self, other: &Multivector) -> Result<Multivector> {
        self.check_ambient(other)?;
        let mut out = Multivector::zero(self.ambient);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Ok(mu) = mu_count(a, b) {
                    out.add_term(a.union(b), Sign::from_parity(mu).apply(x * y));
                }
            }
        }
        Ok(out)
    }

    /// Applies a key-wise operator `key -> Σ coeff·key'` linearly.
    pub fn map_terms(&self, ambient: usize, mut f: impl FnMut(&IndexSet, &Rational, &mut Multivector)) -> Multivector {
        let mut out = Multivector::zero(ambient);
        for (k, q) in &self.terms {
            f(k, q, &mut out);
        }
        out
    }

    fn check_ambient(&self, other: &Multivector) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch(self.ambient, other.ambient));
        }
        Ok(())
    }
}

impl fmt::Debug for Multivector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> =
            self.terms.iter().map(|(k, q)| format!("{}·e{:?}", rational::format(q), k.to_vec())).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// The decreasing-order basis element `e_{I_1} ∧ … ∧ e_{I_r}` with `I` decreasing.
pub fn decreasing_basis(key: IndexSet) -> Multivector {
    let r = key.len();
    Multivector::basis(key).scale(&rational::neg_one_pow(r * r.saturating_sub(1) / 2))
}

/// Vector of `V ⊕ V*` (or its dual) that a generator names.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeneratorKind {
    /// `e_i ∈ V`, acting by `ψ_i`.
    E,
    /// `f_i ∈ V*`, acting by `ψ†_i`.
    F,
    /// `g_i = e_i + f_i`.
    G,
    /// `h_i = e_i - f_i`.
    H,
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GeneratorIndex {
    pub kind: GeneratorKind,
    pub i: usize,
}

impl GeneratorIndex {
    pub fn e(i: usize) -> GeneratorIndex {
        GeneratorIndex { kind: GeneratorKind::E, i }
    }

    pub fn f(i: usize) -> GeneratorIndex {
        GeneratorIndex { kind: GeneratorKind::F, i }
    }

    pub fn g(i: usize) -> GeneratorIndex {
        GeneratorIndex { kind: GeneratorKind::G, i }
    }

    pub fn h(i: usize) -> GeneratorIndex {
        GeneratorIndex { kind: GeneratorKind::H, i }
    }

    /// Expansion into `e`/`f` generators.
    pub fn expand(&self) -> Vec<(GeneratorIndex, Rational)> {
        let i = self.i;
        match self.kind {
            GeneratorKind::E | GeneratorKind::F => vec![(*self, Rational::one())],
            GeneratorKind::G => vec![(Self::e(i), Rational::one()), (Self::f(i), Rational::one())],
            GeneratorKind::H => vec![(Self::e(i), Rational::one()), (Self::f(i), -Rational::one())],
        }
    }

    /// The vector in `Λ¹(V ⊕ V*)`, keys `1..2N` with `e_{N+i} = f_i`.
    pub fn as_vector(&self, n: usize) -> Result<Multivector> {
        self.check(n)?;
        let mut v = Multivector::zero(2 * n);
        for (x, q) in self.expand() {
            let slot = if x.kind == GeneratorKind::E { x.i } else { n + x.i };
            v.add_term(IndexSet::new(2 * n, [slot])?, q);
        }
        Ok(v)
    }

    fn check(&self, n: usize) -> Result<()> {
        if self.i == 0 || self.i > n {
            return Err(Error::AmbientMismatch(n, self.i));
        }
        Ok(())
    }
}

impl fmt::Debug for GeneratorIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.kind {
            GeneratorKind::E => 'e',
            GeneratorKind::F => 'f',
            GeneratorKind::G => 'g',
            GeneratorKind::H => 'h',
        };
        write!(f, "{c}{}", self.i)
    }
}

/// A decomposable element `x_1 ∧ … ∧ x_m` of `Λ(V ⊕ V*)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CliffordMonomial {
    factors: Vec<GeneratorIndex>,
}

impl CliffordMonomial {
    pub fn new(factors: Vec<GeneratorIndex>) -> Result<CliffordMonomial> {
        for (a, x) in factors.iter().enumerate() {
            if factors[..a].contains(x) {
                return Err(Error::RepeatedFactor(format!("{x:?}")));
            }
        }
        Ok(CliffordMonomial { factors })
    }

    /// `e_K ∧ f_L` read off a key of `{1..2N}` (`e` part then `f` part, each increasing).
    pub fn from_key(key: &IndexSet, n: usize) -> CliffordMonomial {
        let factors = key
            .iter()
            .map(|x| if x <= n { GeneratorIndex::e(x) } else { GeneratorIndex::f(x - n) })
            .collect();
        CliffordMonomial { factors }
    }

    pub fn factors(&self) -> &[GeneratorIndex] {
        &self.factors
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Multilinear expansion into `e`/`f` monomials; terms repeating a basis vector vanish.
    pub fn expand(&self) -> Vec<(Vec<GeneratorIndex>, Rational)> {
        let mut acc: Vec<(Vec<GeneratorIndex>, Rational)> = vec![(Vec::new(), Rational::one())];
        for x in &self.factors {
            let mut next = Vec::new();
            for (mono, q) in &acc {
                for (y, c) in x.expand() {
                    if mono.contains(&y) {
                        continue;
                    }
                    let mut m = mono.clone();
                    m.push(y);
                    next.push((m, q * &c));
                }
            }
            acc = next;
        }
        acc
    }

    /// Key in `{1..2N}` and the sign relating `x_1 ∧ … ∧ x_m` to the
    /// increasing basis element, for an `e`/`f` monomial.
    pub fn key(&self, n: usize) -> Result<(IndexSet, Sign)> {
        let mut slots = Vec::with_capacity(self.factors.len());
        for x in &self.factors {
            x.check(n)?;
            slots.push(match x.kind {
                GeneratorKind::E => x.i,
                GeneratorKind::F => n + x.i,
                _ => return Err(Error::ShapeMismatch("key needs an e/f monomial".into())),
            });
        }
        Ok((IndexSet::new(2 * n, slots.iter().copied())?, permutation_sign(&slots)))
    }

    /// The element of `Λ(V ⊕ V*)` this monomial names.
    pub fn as_multivector(&self, n: usize) -> Result<Multivector> {
        let mut acc = Multivector::scalar(2 * n, Rational::one());
        for x in &self.factors {
            acc = acc.wedge(&x.as_vector(n)?)?;
        }
        Ok(acc)
    }
}

fn psi(i: usize, v: &Multivector) -> Multivector {
    v.map_terms(v.ambient, |k, q, out| {
        if !k.contains(i) {
            out.add_term(k.insert(i).expect("index checked"), Sign::from_parity(k.count_below(i)).apply(q.clone()));
        }
    })
}

fn psi_dag(i: usize, v: &Multivector) -> Multivector {
    v.map_terms(v.ambient, |k, q, out| {
        if k.contains(i) {
            out.add_term(k.remove(i), Sign::from_parity(k.count_below(i)).apply(q.clone()));
        }
    })
}

/// `Γ_x v`: `e_i` wedges, `f_i` contracts, `g`/`h` by linearity.
pub fn gamma_linear(x: GeneratorIndex, v: &Multivector) -> Result<Multivector> {
    x.check(v.ambient)?;
    let mut out = Multivector::zero(v.ambient);
    for (y, c) in x.expand() {
        let part = if y.kind == GeneratorKind::E { psi(y.i, v) } else { psi_dag(y.i, v) };
        out = out.add(&part.scale(&c))?;
    }
    Ok(out)
}

/// How `gamma_monomial` evaluates the antisymmetrized product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GammaMode {
    /// Full `S_m` sum.
    Naive,
    /// Reorder into per-index blocks; an `e_i, f_i` pair acts as `(ψ_iψ†_i - ψ†_iψ_i)/2`.
    Fastpath,
}

/// `Γ_σ v` for `σ = x_1 ∧ … ∧ x_m`, the antisymmetrized operator product
/// `(1/m!) Σ_τ sgn(τ) Γ_{x_τ(1)} ⋯ Γ_{x_τ(m)}`.
pub fn gamma_monomial(sigma: &CliffordMonomial, v: &Multivector, mode: GammaMode) -> Result<Multivector> {
    for x in sigma.factors() {
        x.check(v.ambient)?;
    }
    match mode {
        GammaMode::Naive => gamma_naive(sigma.factors(), v),
        GammaMode::Fastpath => {
            let mut out = Multivector::zero(v.ambient);
            for (mono, c) in sigma.expand() {
                out = out.add(&gamma_ef_fast(&mono, v).scale(&c))?;
            }
            Ok(out)
        }
    }
}

fn gamma_naive(factors: &[GeneratorIndex], v: &Multivector) -> Result<Multivector> {
    let m = factors.len();
    let mut out = Multivector::zero(v.ambient);
    let mut perm: Vec<usize> = (0..m).collect();
    let mut result = Ok(());
    for_each_permutation(&mut perm, 0, &mut |p| {
        if result.is_err() {
            return;
        }
        let mut w = v.clone();
        for &idx in p.iter().rev() {
            match gamma_linear(factors[idx], &w) {
                Ok(x) => w = x,
                Err(e) => {
                    result = Err(e);
                    return;
                }
            }
        }
        let sign = permutation_sign(p);
        out = out.add(&w.scale(&sign.to_rational())).expect("same ambient");
    });
    result?;
    Ok(out.scale(&rational::factorial(m).recip()))
}

fn for_each_permutation(p: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        for_each_permutation(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Fast evaluation for a monomial of distinct `e`/`f` factors.
fn gamma_ef_fast(mono: &[GeneratorIndex], v: &Multivector) -> Multivector {
    let rank = |x: &GeneratorIndex| 2 * x.i + usize::from(x.kind == GeneratorKind::F);
    let sign = permutation_sign(&mono.iter().map(rank).collect::<Vec<_>>());
    let mut sorted = mono.to_vec();
    sorted.sort_by_key(rank);
    let mut blocks: Vec<(usize, bool, bool)> = Vec::new();
    for x in &sorted {
        match blocks.last_mut() {
            Some(b) if b.0 == x.i => b.2 = true,
            _ => blocks.push((x.i, x.kind == GeneratorKind::E, x.kind == GeneratorKind::F)),
        }
    }
    let half = rational::pow2(-1);
    let mut w = v.scale(&sign.to_rational());
    for &(i, has_e, has_f) in blocks.iter().rev() {
        w = match (has_e, has_f) {
            (true, true) => w.map_terms(w.ambient, |k, q, out| {
                let s = if k.contains(i) { half.clone() } else { -half.clone() };
                out.add_term(*k, q * s);
            }),
            (true, false) => psi(i, &w),
            _ => psi_dag(i, &w),
        };
    }
    w
}

/// `*ε_I` on each key, extending `*e_I = sgn(I) e_Ĩ` from the decreasing basis.
pub fn hodge_star(v: &Multivector) -> Multivector {
    let n = v.ambient;
    v.map_terms(n, |k, q, out| out.add_term(k.complement(), hodge_sign(k).apply(q.clone())))
}

/// Sign `s` with `*ε_I = s ε_Ĩ`.
pub fn hodge_sign(key: &IndexSet) -> Sign {
    let r = key.len();
    let c = key.ambient() - r;
    Sign::from_parity(r * r.saturating_sub(1) / 2 + c * c.saturating_sub(1) / 2) * split_sign(key)
}

/// `C = (ψ_1 - ψ†_1) ⋯ (ψ_N - ψ†_N)`.
pub fn c_operator(v: &Multivector) -> Multivector {
    let mut w = v.clone();
    for i in (1..=v.ambient).rev() {
        w = gamma_linear(GeneratorIndex::h(i), &w).expect("index in range");
    }
    w
}

/// `(v, w)` with `(ε_I, ε_J) = δ_IJ`.
pub fn scalar_product(v: &Multivector, w: &Multivector) -> Result<Rational> {
    v.check_ambient(w)?;
    let (small, large) = if v.len() <= w.len() { (v, w) } else { (w, v) };
    let mut acc = Rational::zero();
    for (k, q) in &small.terms {
        if let Some(p) = large.terms.get(k) {
            acc += q * p;
        }
    }
    Ok(acc)
}

/// Element of a single graded slice `Λ^grade(V ⊕ V*)`, keys in `{1..2N}`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct NFormVector {
    n: usize,
    grade: usize,
    terms: BTreeMap<IndexSet, Rational>,
}

impl NFormVector {
    pub fn zero(n: usize, grade: usize) -> NFormVector {
        NFormVector { n, grade, terms: BTreeMap::new() }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    pub fn set(&mut self, key: IndexSet, q: Rational) -> Result<()> {
        if key.ambient() != 2 * self.n || key.len() != self.grade {
            return Err(Error::ShapeMismatch(format!("{key:?} is not a grade-{} key over 1..{}", self.grade, 2 * self.n)));
        }
        if q.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, q);
        }
        Ok(())
    }

    pub fn coefficient(&self, key: &IndexSet) -> Rational {
        self.terms.get(key).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&IndexSet, &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Image under the isomorphism induced by `Q`: `e_K ∧ f_L ↦ f_K ∧ e_L`,
    /// i.e. key `K ∪ (L+N)` to `L ∪ (K+N)` with sign `(-1)^{|K||L|}`.
    pub fn q_dual(&self) -> NFormVector {
        let n = self.n;
        let low = IndexSet::full(n).with_ambient(2 * n).expect("n <= 2n");
        let mut out = NFormVector::zero(n, self.grade);
        for (key, q) in &self.terms {
            let k = key.intersection(&low);
            let l = key.difference(&low);
            let swapped = IndexSet::from_bits(2 * n, l.bits() >> n | k.bits() << n).expect("stays in 1..2N");
            out.terms.insert(swapped, Sign::from_parity(k.len() * l.len()).apply(q.clone()));
        }
        out
    }

    pub fn to_multivector(&self) -> Multivector {
        Multivector { ambient: 2 * self.n, terms: self.terms.clone() }
    }
}

impl fmt::Debug for NFormVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "NForm(n={}, grade={}) {:?}", self.n, self.grade, self.to_multivector())
    }
}

/// Value of `β_k`: a scalar for `k = 0`, a grade-`k` form otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BetaValue {
    Scalar(Rational),
    Form(NFormVector),
}

/// `β_0(v, w) = (v, C w)` and, for `k ≥ 1`, the grade-`k` form whose
/// coefficient on `e_K ∧ f_L` is `β_0(v, Γ_{e_K ∧ f_L} w)`.
pub fn beta_form(v: &Multivector, w: &Multivector, k: usize) -> Result<BetaValue> {
    v.check_ambient(w)?;
    let n = v.ambient;
    if k > 2 * n {
        return Err(Error::GradeOutOfRange { grade: k, max: 2 * n });
    }
    if k == 0 {
        return Ok(BetaValue::Scalar(scalar_product(v, &c_operator(w))?));
    }
    // (v, C x) = (Cᵀ v, x) and Cᵀ = C⁻¹ = (-1)^{N(N+1)/2} C.
    let ct_v = c_operator(v).scale(&rational::neg_one_pow(n * (n + 1) / 2));
    let mut out = NFormVector::zero(n, k);
    for key in IndexSet::subsets_of_size(2 * n, k) {
        let sigma = CliffordMonomial::from_key(&key, n);
        let image = gamma_monomial(&sigma, w, GammaMode::Fastpath)?;
        out.set(key, scalar_product(&ct_v, &image)?)?;
    }
    Ok(BetaValue::Form(out))
}

#[derive(Serialize)]
struct TermOut {
    key: Vec<usize>,
    coeff: String,
}

#[derive(Deserialize)]
struct TermIn {
    key: Vec<usize>,
    coeff: RawRational,
}

#[derive(Serialize)]
struct MultivectorOut {
    ambient: usize,
    terms: Vec<TermOut>,
}

#[derive(Deserialize)]
struct MultivectorIn {
    ambient: usize,
    terms: Vec<TermIn>,
}

impl Serialize for Multivector {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        MultivectorOut {
            ambient: self.ambient,
            terms: self.terms.iter().map(|(k, q)| TermOut { key: k.to_vec(), coeff: rational::format(q) }).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Multivector {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Multivector, D::Error> {
        use serde::de::Error as _;
        let repr = MultivectorIn::deserialize(d)?;
        let mut v = Multivector::zero(repr.ambient);
        for t in repr.terms {
            if t.key.windows(2).any(|w| w[0] >= w[1]) {
                return Err(D::Error::custom(format!("key {:?} is not increasing", t.key)));
            }
            let key = IndexSet::new(repr.ambient, t.key).map_err(D::Error::custom)?;
            v.add_term(key, t.coeff.into_rational().map_err(D::Error::custom)?);
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn key(n: usize, e: &[usize]) -> IndexSet {
        IndexSet::new(n, e.iter().copied()).unwrap()
    }

    #[test]
    fn generator_examples() {
        let one = Multivector::scalar(3, Rational::one());
        assert_eq!(gamma_linear(GeneratorIndex::e(1), &one).unwrap(), Multivector::basis(key(3, &[1])));
        let e12 = Multivector::basis(key(3, &[1, 2]));
        assert_eq!(gamma_linear(GeneratorIndex::f(1), &e12).unwrap(), Multivector::basis(key(3, &[2])));
        assert_eq!(
            gamma_linear(GeneratorIndex::f(2), &e12).unwrap(),
            Multivector::basis(key(3, &[1])).scale(&rational::int(-1))
        );
        assert!(gamma_linear(GeneratorIndex::e(4), &e12).is_err());
    }

    #[test]
    fn hodge_examples() {
        for n in 1..6 {
            let omega = Multivector::basis(IndexSet::full(n));
            let one = Multivector::scalar(n, Rational::one());
            assert_eq!(hodge_star(&one), omega);
            assert_eq!(hodge_star(&omega), one);
        }
    }

    #[test]
    fn repeated_factor_rejected() {
        let err = CliffordMonomial::new(vec![GeneratorIndex::e(1), GeneratorIndex::e(1)]);
        assert!(matches!(err, Err(Error::RepeatedFactor(_))));
        assert!(CliffordMonomial::new(vec![GeneratorIndex::g(1), GeneratorIndex::e(1)]).is_ok());
    }

    #[test]
    fn pair_block_value() {
        // Γ_{e1∧f1} = (ψψ† - ψ†ψ)/2
        let sigma = CliffordMonomial::new(vec![GeneratorIndex::e(1), GeneratorIndex::f(1)]).unwrap();
        let v = Multivector::basis(key(2, &[1]));
        let half = rational::pow2(-1);
        for mode in [GammaMode::Naive, GammaMode::Fastpath] {
            assert_eq!(gamma_monomial(&sigma, &v, mode).unwrap(), v.scale(&half));
        }
        let sigma = CliffordMonomial::new(vec![GeneratorIndex::f(1), GeneratorIndex::e(1)]).unwrap();
        for mode in [GammaMode::Naive, GammaMode::Fastpath] {
            assert_eq!(gamma_monomial(&sigma, &v, mode).unwrap(), v.scale(&-half.clone()));
        }
    }

    #[test]
    fn wedge_signs() {
        let a = Multivector::basis(key(3, &[2]));
        let b = Multivector::basis(key(3, &[1]));
        assert_eq!(a.wedge(&b).unwrap(), Multivector::basis(key(3, &[1, 2])).scale(&rational::int(-1)));
        assert!(a.wedge(&a).unwrap().is_zero());
        assert!(a.wedge(&Multivector::zero(4)).is_err());
    }

    #[test]
    fn beta_grade_bounds() {
        let one = Multivector::scalar(2, Rational::one());
        assert!(matches!(beta_form(&one, &one, 5), Err(Error::GradeOutOfRange { grade: 5, max: 4 })));
        assert!(beta_form(&one, &Multivector::zero(3), 0).is_err());
    }

    #[test]
    fn q_dual_is_an_involution_up_to_sign() {
        let mut v = NFormVector::zero(2, 2);
        v.set(key(4, &[1, 4]), rational::int(3)).unwrap();
        let d = v.q_dual();
        assert_eq!(d.coefficient(&key(4, &[2, 3])), rational::int(-3));
        assert_eq!(d.q_dual(), v);
        assert!(v.set(key(4, &[1]), rational::one()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let v = Multivector::from_terms(3, [(key(3, &[1, 3]), rational::parse("2/3").unwrap())]).unwrap();
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"ambient":3,"terms":[{"key":[1,3],"coeff":"2/3"}]}"#);
        assert_eq!(serde_json::from_str::<Multivector>(&text).unwrap(), v);
        assert!(serde_json::from_str::<Multivector>(r#"{"ambient":3,"terms":[{"key":[3,1],"coeff":"1"}]}"#).is_err());
    }
}
