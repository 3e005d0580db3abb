//! Checks for the bilinear identities between determinants, Pfaffians,
//! Plücker and Cartan coordinates. Every check returns both sides exactly.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exterior::{
    beta_form, gamma_monomial, hodge_sign, BetaValue, CliffordMonomial, GammaMode, GeneratorIndex, Multivector,
    NFormVector,
};
use crate::grassmann::{
    cartan_big_cell, cartan_image, is_isotropic, plucker_coordinates, projective_equal, CartanCoordinates, Frame,
    PluckerCoordinates,
};
use crate::indexset::{
    decompose_abcds, delta_bracket, nu_exponent, partner_set, signed_perm_sign, DeltaMode, IndexSet, Sign,
};
use crate::linalg::{det_exact, submatrix, Matrix, PfaffianTable, SkewMatrix};
use crate::partition::{hook, Partition, StrictPartition};
use crate::rational::{self, Rational};

/// A side of a check: a scalar or a labelled list of coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CheckValue {
    Scalar(Rational),
    Coords(Vec<(Value, Rational)>),
}

impl Serialize for CheckValue {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            CheckValue::Scalar(q) => s.serialize_str(&rational::format(q)),
            CheckValue::Coords(v) => {
                let items: Vec<Value> =
                    v.iter().map(|(l, q)| json!({"label": l, "value": rational::format(q)})).collect();
                items.serialize(s)
            }
        }
    }
}

/// Outcome of one check. `passed` is exact equality, or projective equality
/// where the check says so.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub instance: Value,
    pub lhs: CheckValue,
    pub rhs: CheckValue,
    pub passed: bool,
}

impl CheckReport {
    /// Adds a field to the instance descriptor.
    pub fn with(mut self, key: &str, value: impl Into<Value>) -> CheckReport {
        if let Value::Object(map) = &mut self.instance {
            map.insert(key.to_string(), value.into());
        }
        self
    }
}

fn set_json(s: &IndexSet) -> Value {
    json!(s.to_vec())
}

fn key_coords(v: &BTreeMap<IndexSet, Rational>) -> CheckValue {
    CheckValue::Coords(v.iter().map(|(k, q)| (set_json(k), q.clone())).collect())
}

fn nform_by_partition(v: &NFormVector) -> CheckValue {
    let n = v.n();
    CheckValue::Coords(
        v.terms()
            .map(|(k, q)| {
                let label = Partition::from_particle_set(k, n).map(|p| json!(p)).unwrap_or_else(|_| set_json(k));
                (label, q.clone())
            })
            .collect(),
    )
}

/// Right-hand sides of the Pfaffian Cauchy–Binet identity for one skew matrix,
/// with every principal Pfaffian precomputed.
pub struct CauchyBinetPfaffian {
    a: SkewMatrix,
    pf: PfaffianTable,
}

/// The quadruples `(K, L)` entering the bilinear sums: `K` ranges over
/// even subsets of `I∪J` containing `I∩J`, and `L` is its partner, kept
/// only when even. Order follows the bitmask enumeration of `K`.
pub fn even_quadruples(i: &IndexSet, j: &IndexSet) -> Vec<(IndexSet, IndexSet)> {
    let t = i.union(j);
    let s = i.intersection(j);
    let mut out = Vec::new();
    for free in t.difference(&s).subsets() {
        let k = free.union(&s);
        if k.len() % 2 == 1 {
            continue;
        }
        let l = partner_set(i, j, &k).expect("K built inside I∪J");
        if l.len().is_multiple_of(2) {
            out.push((k, l));
        }
    }
    out
}

impl CauchyBinetPfaffian {
    pub fn new(a: &SkewMatrix) -> CauchyBinetPfaffian {
        CauchyBinetPfaffian { a: a.clone(), pf: PfaffianTable::new(a) }
    }

    pub fn pfaffians(&self) -> &PfaffianTable {
        &self.pf
    }

    /// `det(A_(I|J))`.
    pub fn determinant(&self, i: &IndexSet, j: &IndexSet) -> Result<Rational> {
        det_exact(&submatrix(self.a.matrix(), i, j)?)
    }

    /// `(-1)^{r(r-1)/2} 2^{-r} Σ (-1)^{l/2} Δ_(IJ|KL) Pf(A_KK) Pf(A_LL)`.
    pub fn theorem_rhs(&self, i: &IndexSet, j: &IndexSet) -> Result<Rational> {
        let r = self.check_pair(i, j)?;
        let mut acc = Rational::zero();
        for (k, l) in even_quadruples(i, j) {
            let pf = self.pf.get(&k) * self.pf.get(&l);
            if pf.is_zero() {
                continue;
            }
            let delta = delta_bracket(i, j, &k, &l, DeltaMode::Closed)?;
            acc += Sign::from_parity(l.len() / 2).apply(delta * pf);
        }
        Ok(Sign::from_parity(r * r.saturating_sub(1) / 2).apply(acc * rational::pow2(-(r as i64))))
    }

    /// Single-sum form: `(-1)^{r(r-1)/2} 2^{-(r-s)} Σ (-1)^{l/2 + rd + ν} Pf(A_KK) Pf(A_LL)`.
    pub fn corollary_rhs(&self, i: &IndexSet, j: &IndexSet) -> Result<Rational> {
        let r = self.check_pair(i, j)?;
        let s = i.intersection(j).len();
        let mut acc = Rational::zero();
        for (k, l) in even_quadruples(i, j) {
            let pf = self.pf.get(&k) * self.pf.get(&l);
            if pf.is_zero() {
                continue;
            }
            let q = decompose_abcds(i, j, &k, &l)?;
            let nu = nu_exponent(i, j, &k, &l)?;
            acc += Sign::from_parity(l.len() / 2 + r * q.d.len() + nu).apply(pf);
        }
        Ok(Sign::from_parity(r * r.saturating_sub(1) / 2).apply(acc * rational::pow2(s as i64 - r as i64)))
    }

    pub fn check(&self, i: &IndexSet, j: &IndexSet) -> Result<CheckReport> {
        self.check_pair(i, j)?;
        let lhs = self.determinant(i, j)?;
        let rhs = self.theorem_rhs(i, j)?;
        let corollary = self.corollary_rhs(i, j)?;
        let passed = lhs == rhs && rhs == corollary;
        Ok(CheckReport {
            name: "cauchy-binet-pfaffian".into(),
            instance: json!({"n": self.a.n(), "i": set_json(i), "j": set_json(j), "corollary": rational::format(&corollary)}),
            lhs: CheckValue::Scalar(lhs),
            rhs: CheckValue::Scalar(rhs),
            passed,
        })
    }

    /// `Σ (-1)^{l/2 + b} sgn(I,J,K,L) Pf(A_KK) Pf(A_LL)` for `|I| ≠ |J|`.
    pub fn null_sum(&self, i: &IndexSet, j: &IndexSet) -> Result<Rational> {
        if (i.len() + j.len()) % 2 == 1 || i.len() == j.len() {
            return Err(Error::CardinalityMismatch("null relations need |I| ≠ |J| with |I|+|J| even".into()));
        }
        let mut acc = Rational::zero();
        for (k, l) in even_quadruples(i, j) {
            let pf = self.pf.get(&k) * self.pf.get(&l);
            if pf.is_zero() {
                continue;
            }
            let q = decompose_abcds(i, j, &k, &l)?;
            let sgn = signed_perm_sign(i, j, &k, &l)?;
            acc += (Sign::from_parity(l.len() / 2 + q.b.len()) * sgn).apply(pf);
        }
        Ok(acc)
    }

    pub fn check_null(&self, i: &IndexSet, j: &IndexSet) -> Result<CheckReport> {
        let lhs = self.null_sum(i, j)?;
        Ok(CheckReport {
            name: "null-relations".into(),
            instance: json!({"n": self.a.n(), "i": set_json(i), "j": set_json(j)}),
            passed: lhs.is_zero(),
            lhs: CheckValue::Scalar(lhs),
            rhs: CheckValue::Scalar(Rational::zero()),
        })
    }

    fn check_pair(&self, i: &IndexSet, j: &IndexSet) -> Result<usize> {
        if i.len() != j.len() {
            return Err(Error::CardinalityMismatch(format!("|I| = {} but |J| = {}", i.len(), j.len())));
        }
        if i.ambient() != self.a.n() || j.ambient() != self.a.n() {
            return Err(Error::AmbientMismatch(self.a.n(), i.ambient().max(j.ambient())));
        }
        Ok(i.len())
    }
}

/// `det(A_(I|J))` against the Pfaffian bilinear sum, in both stated forms.
pub fn check_cauchy_binet_pfaffian(a: &SkewMatrix, i: &IndexSet, j: &IndexSet) -> Result<CheckReport> {
    CauchyBinetPfaffian::new(a).check(i, j)
}

/// The vanishing bilinear Pfaffian sums for `|I| ≠ |J|`, `|I|+|J|` even.
pub fn check_null_relations(a: &SkewMatrix, i: &IndexSet, j: &IndexSet) -> Result<CheckReport> {
    CauchyBinetPfaffian::new(a).check_null(i, j)
}

/// `β_N(c, c)` for `c = Ca(F)`, read through the pairing on `Λ^N(V ⊕ V*)`
/// induced by `Q`, against the Plücker vector `Σ π_λ |λ⟩`. Projective.
pub fn check_main_theorem(frame: &Frame) -> Result<CheckReport> {
    let c = cartan_image(frame)?;
    let n = frame.n();
    let BetaValue::Form(beta) = beta_form(&c, &c, n)? else {
        unreachable!("grade N >= 1 gives a form")
    };
    let lhs = beta.q_dual();
    let rhs = plucker_coordinates(frame).to_nform();
    let passed = projective_equal(&lhs, &rhs)? && !rhs.is_zero();
    Ok(CheckReport {
        name: "main-theorem".into(),
        instance: json!({"n": n, "pairing": "Q-dual"}),
        lhs: nform_by_partition(&lhs),
        rhs: nform_by_partition(&rhs),
        passed,
    })
}

/// Left side of the Cartan relation for labels `α`, `β`; zero when it holds.
pub fn cartan_relation_value(kappa: &CartanCoordinates, alpha: &StrictPartition, beta: &StrictPartition) -> Result<Rational> {
    let n = kappa.n();
    alpha.index_set(n)?;
    beta.index_set(n)?;
    let mut acc = Rational::zero();
    for (x, y) in [(alpha, beta), (beta, alpha)] {
        for (pos, &part) in x.parts().iter().enumerate() {
            let Ok((inserted, _)) = y.insert(part) else {
                continue;
            };
            let removed = x.remove(pos + 1)?;
            let term = kappa.get(&removed) * kappa.get(&inserted);
            acc += Sign::from_parity(pos + 1 + y.count_greater(part)).apply(term);
        }
    }
    if (alpha.len() + beta.len()) % 2 == 1 {
        // -½((-1)^{ℓα+ℓβ} - 1) = 1 for odd total length.
        acc += kappa.get(alpha) * kappa.get(beta);
    }
    Ok(acc)
}

/// The Cartan relation for `(α, β)` on the big-cell point `[1; A]`.
pub fn check_cartan_relations(a: &SkewMatrix, alpha: &StrictPartition, beta: &StrictPartition) -> Result<CheckReport> {
    let kappa = cartan_big_cell(a);
    cartan_relation_report(&kappa, alpha, beta)
}

pub fn cartan_relation_report(kappa: &CartanCoordinates, alpha: &StrictPartition, beta: &StrictPartition) -> Result<CheckReport> {
    let lhs = cartan_relation_value(kappa, alpha, beta)?;
    Ok(CheckReport {
        name: "cartan-relations".into(),
        instance: json!({"n": kappa.n(), "alpha": alpha, "beta": beta}),
        passed: lhs.is_zero(),
        lhs: CheckValue::Scalar(lhs),
        rhs: CheckValue::Scalar(Rational::zero()),
    })
}

/// `β_k(c, c) = 0` for every `k ≡ N (mod 4)` with `0 ≤ k ≤ N-1`.
pub fn check_cartan_quadrics(frame: &Frame) -> Result<CheckReport> {
    let c = cartan_image(frame)?;
    let n = frame.n();
    let mut residue = Vec::new();
    let mut grades = Vec::new();
    for k in (n % 4..n).step_by(4) {
        grades.push(k);
        match beta_form(&c, &c, k)? {
            BetaValue::Scalar(q) => {
                if !q.is_zero() {
                    residue.push((json!({"k": k, "key": []}), q));
                }
            }
            BetaValue::Form(f) => {
                for (key, q) in f.terms() {
                    residue.push((json!({"k": k, "key": key.to_vec()}), q.clone()));
                }
            }
        }
    }
    Ok(CheckReport {
        name: "cartan-quadrics".into(),
        instance: json!({"n": n, "grades": grades}),
        passed: residue.is_empty(),
        lhs: CheckValue::Coords(residue),
        rhs: CheckValue::Coords(Vec::new()),
    })
}

/// `det` of the rows of `W` listed in increasing order, for every `N`-subset.
fn increasing_minors(frame: &Frame) -> BTreeMap<IndexSet, Rational> {
    let n = frame.n();
    let cols: Vec<usize> = (1..=n).collect();
    IndexSet::subsets_of_size(2 * n, n)
        .into_iter()
        .map(|x| {
            let d = det_exact(&frame.matrix().select(&x.to_vec(), &cols).expect("rows in range")).expect("square");
            (x, d)
        })
        .collect()
}

/// Terms of the exchange relation for `(R, S)`: entry `j` belongs to `s_j`
/// (`S` increasing) and is zero when `s_j ∈ R`.
pub fn exchange_terms(minors: &BTreeMap<IndexSet, Rational>, r: &IndexSet, s: &IndexSet) -> Vec<Rational> {
    s.iter()
        .enumerate()
        .map(|(pos, x)| {
            if r.contains(x) {
                return Rational::zero();
            }
            let with = r.insert(x).expect("in range");
            let without = s.remove(x);
            let sign = Sign::from_parity(pos + 1 + r.count_above(x));
            sign.apply(&minors[&with] * &minors[&without])
        })
        .collect()
}

/// Terms of the partition-labelled relation
/// `Σ_i (-1)^{i+k} π_{[λ⁻,λ_i]} π_{[μ⁺, λ_i - i + 1]}`, `i = 1..N+1`, with `λ`
/// padded by zeros; `None` marks an undefined insertion.
pub fn partition_plucker_terms(pl: &PluckerCoordinates, lambda: &Partition, mu: &Partition) -> Vec<Option<Rational>> {
    let n = pl.n();
    (1..=n + 1)
        .map(|i| {
            let u = lambda.part(i) as i64 - i as i64 + 1;
            let (inserted, k) = mu.plucker_insert(u)?;
            let removed = lambda.plucker_remove_padded(i);
            Some(Sign::from_parity(i + k).apply(pl.get(&removed) * pl.get(&inserted)))
        })
        .collect()
}

/// `λ` labelling an `(N+1)`-set by `s_j = λ_j - j + N + 2`.
pub fn upper_label(s: &IndexSet, n: usize) -> Partition {
    let v = s.to_vec_decreasing();
    Partition::new((1..=n + 1).map(|j| v[j - 1] + j - n - 2).collect()).expect("decreasing positions")
}

/// `μ` labelling an `(N-1)`-set by `r_j = μ_j - j + N`.
pub fn lower_label(r: &IndexSet, n: usize) -> Partition {
    let v = r.to_vec_decreasing();
    Partition::new((1..n).map(|j| v[j - 1] + j - n).collect()).expect("decreasing positions")
}

/// Exchange relations `Σ_j ± p(R ∪ s_j) p(S \ s_j) = 0` over all `(R, S)`, and the
/// partition-labelled form compared term by term on the same labels.
pub fn check_plucker_relations(frame: &Frame) -> Result<CheckReport> {
    let n = frame.n();
    let minors = increasing_minors(frame);
    let pl = plucker_coordinates(frame);
    let mut residue = Vec::new();
    let mut relations = 0usize;
    let mut mismatched = Vec::new();
    if n >= 1 {
        let rs = IndexSet::subsets_of_size(2 * n, n - 1);
        let ss = IndexSet::subsets_of_size(2 * n, n + 1);
        for r in &rs {
            let mu = lower_label(r, n);
            for s in &ss {
                relations += 1;
                let terms = exchange_terms(&minors, r, s);
                let total: Rational = terms.iter().sum();
                if !total.is_zero() {
                    residue.push((json!({"r": r.to_vec(), "s": s.to_vec()}), total));
                }
                let lambda = upper_label(s, n);
                let part_terms = partition_plucker_terms(&pl, &lambda, &mu);
                if !terms_agree(&terms, &part_terms) {
                    mismatched.push(json!({"lambda": lambda, "mu": mu}));
                }
            }
        }
    }
    Ok(CheckReport {
        name: "plucker-relations".into(),
        instance: json!({"n": n, "relations": relations, "partition_form_mismatches": mismatched}),
        passed: residue.is_empty() && mismatched.is_empty(),
        lhs: CheckValue::Coords(residue),
        rhs: CheckValue::Coords(Vec::new()),
    })
}

/// Exchange terms use `S` increasing, partition terms `λ_1, λ_2, …`, i.e. `S`
/// decreasing. They must agree up to one overall sign; undefined partition
/// terms must face zero exchange terms.
fn terms_agree(exchange: &[Rational], partition: &[Option<Rational>]) -> bool {
    let m = exchange.len();
    let mut ratio: Option<Rational> = None;
    for (idx, p) in partition.iter().enumerate() {
        let e = &exchange[m - 1 - idx];
        match p {
            None => {
                if !e.is_zero() {
                    return false;
                }
            }
            Some(p) => {
                if p.is_zero() != e.is_zero() {
                    return false;
                }
                if p.is_zero() {
                    continue;
                }
                let q = p / e;
                if q.clone() * &q != Rational::one() {
                    return false;
                }
                match &ratio {
                    None => ratio = Some(q),
                    Some(r) if *r != q => return false,
                    _ => {}
                }
            }
        }
    }
    let partition_sum: Rational = partition.iter().flatten().sum();
    partition_sum.is_zero() == exchange.iter().sum::<Rational>().is_zero()
}

/// `π_∅^{r-1} π_λ = det(π_{(α_i|β_j)})` over the Frobenius hooks of `λ`.
pub fn check_giambelli(frame: &Frame, lambda: &Partition) -> Result<CheckReport> {
    let pl = plucker_coordinates(frame);
    giambelli_report(&pl, lambda)
}

pub fn giambelli_report(pl: &PluckerCoordinates, lambda: &Partition) -> Result<CheckReport> {
    let n = pl.n();
    if !lambda.fits_box(n) {
        return Err(Error::BoxOverflow(lambda.parts().to_vec(), n));
    }
    let p0 = pl.get(&Partition::empty());
    if p0.is_zero() {
        return Err(Error::NotInBigCell);
    }
    let f = lambda.frobenius_split();
    let r = f.rank();
    let mut lhs = pl.get(lambda);
    if r == 0 {
        lhs /= &p0;
    } else {
        for _ in 1..r {
            lhs *= &p0;
        }
    }
    let (a, b) = (f.alpha.parts(), f.beta.parts());
    let hooks = Matrix::from_fn(r, r, |x, y| pl.get(&hook(a[x], b[y])));
    let rhs = det_exact(&hooks)?;
    Ok(CheckReport {
        name: "giambelli".into(),
        instance: json!({"n": n, "lambda": lambda}),
        passed: lhs == rhs,
        lhs: CheckValue::Scalar(lhs),
        rhs: CheckValue::Scalar(rhs),
    })
}

/// `ω = Σ_{k,l} A_kl g_k ∧ h_l` in `Λ²(V ⊕ V*)`.
pub fn omega_form(a: &SkewMatrix) -> Result<Multivector> {
    let n = a.n();
    let mut omega = Multivector::zero(2 * n);
    for k in 1..=n {
        for l in 1..=n {
            let c = a.entry(k, l);
            if c.is_zero() {
                continue;
            }
            let gh = GeneratorIndex::g(k).as_vector(n)?.wedge(&GeneratorIndex::h(l).as_vector(n)?)?;
            omega = omega.add(&gh.scale(c))?;
        }
    }
    Ok(omega)
}

/// `g_I ∧ h_J` with `I`, `J` increasing.
pub fn gh_monomial(i: &IndexSet, j: &IndexSet) -> Result<Multivector> {
    let n = i.ambient();
    let factors: Vec<GeneratorIndex> =
        i.iter().map(GeneratorIndex::g).chain(j.iter().map(GeneratorIndex::h)).collect();
    CliffordMonomial::new(factors)?.as_multivector(n)
}

/// `e_K ∧ f_L` as a key of `{1..2N}`.
pub fn ef_key(k: &IndexSet, l: &IndexSet) -> Result<IndexSet> {
    let n = k.ambient();
    Ok(k.with_ambient(2 * n)?.union(&l.shifted(n, 2 * n)?))
}

/// `g_I ∧ h_J = Σ_{K,L} Δ_(IJ|KL) e_K ∧ f_L`, with `Δ` from the determinant backend.
pub fn check_change_of_basis(i: &IndexSet, j: &IndexSet) -> Result<CheckReport> {
    let n = i.ambient();
    let lhs = gh_monomial(i, j)?;
    let mut rhs = Multivector::zero(2 * n);
    let m = i.len() + j.len();
    for k in IndexSet::all_subsets(n) {
        if k.len() > m || m - k.len() > n {
            continue;
        }
        for l in IndexSet::subsets_of_size(n, m - k.len()) {
            let d = delta_bracket(i, j, &k, &l, DeltaMode::Oracle)?;
            rhs.add_term(ef_key(&k, &l)?, d);
        }
    }
    Ok(CheckReport {
        name: "change-of-basis".into(),
        instance: json!({"n": n, "i": set_json(i), "j": set_json(j)}),
        passed: lhs == rhs,
        lhs: key_coords(&lhs.terms().map(|(k, q)| (*k, q.clone())).collect()),
        rhs: key_coords(&rhs.terms().map(|(k, q)| (*k, q.clone())).collect()),
    })
}

/// `Δ̂_(IJ|KL) = (Γ_{f_I ∧ *e_J} e_K, *e_L)` with all sets increasing.
pub fn delta_hat(i: &IndexSet, j: &IndexSet, k: &IndexSet, l: &IndexSet) -> Result<Rational> {
    let n = i.ambient();
    let jc = j.complement();
    let factors: Vec<GeneratorIndex> =
        i.iter().map(GeneratorIndex::f).chain(jc.iter().map(GeneratorIndex::e)).collect();
    let sigma = CliffordMonomial::new(factors)?;
    let image = gamma_monomial(&sigma, &Multivector::basis(*k), GammaMode::Fastpath)?;
    let star_l = Multivector::basis(l.complement()).scale(&hodge_sign(l).to_rational());
    let value = crate::exterior::scalar_product(&image, &star_l)?;
    let _ = n;
    Ok(hodge_sign(j).apply(value))
}

/// Replays the wedge-power argument: `ω^{∧r}` directly, through `g_I ∧ h_J`
/// with determinant coefficients, and through `e_K ∧ f_L` with Pfaffian
/// coefficients; then recovers every `det(A_(I|J))` (and the vanishing
/// `|I| ≠ |J|` coefficients) from the direct power via the dual basis
/// `(g_I ∧ h_J)^* = 2^{-2r} Σ Δ_(IJ|KL) (e_K ∧ f_L)^*`.
pub fn check_wedge_power_replay(a: &SkewMatrix, r: usize) -> Result<CheckReport> {
    let n = a.n();
    if r == 0 || r > n {
        return Err(Error::GradeOutOfRange { grade: r, max: n });
    }
    let omega = omega_form(a)?;
    let mut direct = Multivector::scalar(2 * n, Rational::one());
    for _ in 0..r {
        direct = direct.wedge(&omega)?;
    }
    let fact = rational::factorial(r);
    let sign = Sign::from_parity(r * (r - 1) / 2);

    let mut via_gh = Multivector::zero(2 * n);
    for i in IndexSet::subsets_of_size(n, r) {
        for j in IndexSet::subsets_of_size(n, r) {
            let d = det_exact(&submatrix(a.matrix(), &i, &j)?)?;
            if d.is_zero() {
                continue;
            }
            via_gh = via_gh.add(&gh_monomial(&i, &j)?.scale(&sign.apply(&fact * d)))?;
        }
    }

    let pf = PfaffianTable::new(a);
    let mut via_ef = Multivector::zero(2 * n);
    let prefactor = rational::pow2(r as i64) * &fact;
    for k in IndexSet::all_subsets(n) {
        if k.len() % 2 == 1 || k.len() > 2 * r || 2 * r - k.len() > n {
            continue;
        }
        for l in IndexSet::subsets_of_size(n, 2 * r - k.len()) {
            let term = pf.get(&k) * pf.get(&l);
            if term.is_zero() {
                continue;
            }
            let coeff = Sign::from_parity(l.len() / 2).apply(&prefactor * term);
            via_ef.add_term(ef_key(&k, &l)?, coeff);
        }
    }

    let mut coefficient_mismatches = Vec::new();
    let scale = rational::pow2(-2 * r as i64) / sign.apply(fact.clone());
    for ilen in 0..=2 * r {
        if ilen > n || 2 * r - ilen > n {
            continue;
        }
        for i in IndexSet::subsets_of_size(n, ilen) {
            for j in IndexSet::subsets_of_size(n, 2 * r - ilen) {
                let mut acc = Rational::zero();
                for (key, q) in direct.terms() {
                    let k = IndexSet::from_bits(n, key.bits() & ((1 << n) - 1))?;
                    let l = IndexSet::from_bits(n, key.bits() >> n)?;
                    acc += delta_bracket(&i, &j, &k, &l, DeltaMode::Oracle)? * q;
                }
                let recovered = acc * &scale;
                let expected = if i.len() == j.len() {
                    det_exact(&submatrix(a.matrix(), &i, &j)?)?
                } else {
                    Rational::zero()
                };
                if recovered != expected {
                    coefficient_mismatches.push(json!({"i": set_json(&i), "j": set_json(&j)}));
                }
            }
        }
    }

    let passed = direct == via_gh && direct == via_ef && coefficient_mismatches.is_empty();
    Ok(CheckReport {
        name: "wedge-power-replay".into(),
        instance: json!({"n": n, "r": r, "coefficient_mismatches": coefficient_mismatches,
                         "gh_route_matches": direct == via_gh}),
        lhs: key_coords(&direct.terms().map(|(k, q)| (*k, q.clone())).collect()),
        rhs: key_coords(&via_ef.terms().map(|(k, q)| (*k, q.clone())).collect()),
        passed,
    })
}

/// `NotIsotropic` unless the frame spans an isotropic subspace.
pub fn require_isotropic(frame: &Frame) -> Result<()> {
    if is_isotropic(frame) {
        Ok(())
    } else {
        Err(Error::NotIsotropic)
    }
}

/// `Ca(v ⊕ v^⊥)` against `v_1 ∧ … ∧ v_k`. Projective.
pub fn check_factorization(v: &Matrix) -> Result<CheckReport> {
    let frame = crate::grassmann::iota_embed(v)?;
    let lhs = cartan_image(&frame)?;
    let rhs = crate::grassmann::column_wedge(v);
    let passed = projective_equal(&lhs, &rhs)?;
    Ok(CheckReport {
        name: "factorization".into(),
        instance: json!({"n": v.rows(), "k": v.cols(), "v": v}),
        lhs: key_coords(&lhs.terms().map(|(k, q)| (*k, q.clone())).collect()),
        rhs: key_coords(&rhs.terms().map(|(k, q)| (*k, q.clone())).collect()),
        passed,
    })
}

/// Squares of Cartan coordinates against the Plücker coordinates of the
/// pseudosymmetric labels, both normalized at the empty label, in the
/// Cartan-adapted frame `f_{I(α)} ∧ *e_{I(α)}`. Also compares the bare ratio
/// `π_{λ(α)}/π_∅` with `κ_α²/κ_∅²` up to sign.
pub fn check_shadow(a: &SkewMatrix, alpha: &StrictPartition) -> Result<CheckReport> {
    let pl = plucker_coordinates(&crate::grassmann::big_cell_frame(a));
    shadow_report(&pl, &cartan_big_cell(a), alpha)
}

/// `check_shadow` on precomputed coordinates of one point.
pub fn shadow_report(pl: &PluckerCoordinates, kappa: &CartanCoordinates, alpha: &StrictPartition) -> Result<CheckReport> {
    let n = pl.n();
    let empty = StrictPartition::empty();
    let framed = crate::grassmann::cartan_frame_plucker(pl, alpha, alpha)?;
    let framed0 = crate::grassmann::cartan_frame_plucker(pl, &empty, &empty)?;
    let k0 = kappa.get(&empty);
    if framed0.is_zero() || k0.is_zero() {
        return Err(Error::NotInBigCell);
    }
    let lhs = framed / &framed0;
    let k = kappa.get(alpha);
    let rhs = &k * &k / (&k0 * &k0);
    let label = crate::partition::pseudosymmetric(alpha, n)?;
    let bare = pl.get(&label) / pl.get(&Partition::empty());
    let passed = lhs == rhs && (bare == rhs || -bare.clone() == rhs);
    Ok(CheckReport {
        name: "shadow".into(),
        instance: json!({"n": n, "alpha": alpha, "label": label, "bare_ratio": rational::format(&bare)}),
        lhs: CheckValue::Scalar(lhs),
        rhs: CheckValue::Scalar(rhs),
        passed,
    })
}

/// `π_{λ(α|β')}/π_∅ = (-1)^{|β'| + r(r-1)/2} det(A_(I(α)|I(β)))` on `[1; A]`,
/// where `β` is the rectangle complement of `β'`.
pub fn check_affine_minor(a: &SkewMatrix, alpha: &StrictPartition, beta_prime: &StrictPartition) -> Result<CheckReport> {
    let pl = plucker_coordinates(&crate::grassmann::big_cell_frame(a));
    affine_minor_report(a, &pl, alpha, beta_prime)
}

/// `check_affine_minor` with the Plücker coordinates of `[1; A]` precomputed.
pub fn affine_minor_report(
    a: &SkewMatrix,
    pl: &PluckerCoordinates,
    alpha: &StrictPartition,
    beta_prime: &StrictPartition,
) -> Result<CheckReport> {
    let n = a.n();
    if alpha.len() != beta_prime.len() {
        return Err(Error::CardinalityMismatch("α and β' need equal length".into()));
    }
    let r = alpha.len();
    let label = crate::partition::FrobeniusCoords::new(alpha.clone(), beta_prime.clone())?.join();
    let lhs = pl.get(&label) / pl.get(&Partition::empty());
    let beta = beta_prime.rectangle_complement(n)?;
    let minor = det_exact(&submatrix(a.matrix(), &alpha.index_set(n)?, &beta.index_set(n)?)?)?;
    let rhs = Sign::from_parity(beta_prime.weight() + r * r.saturating_sub(1) / 2).apply(minor);
    Ok(CheckReport {
        name: "affine-minor".into(),
        instance: json!({"n": n, "alpha": alpha, "beta_prime": beta_prime, "label": label}),
        passed: lhs == rhs,
        lhs: CheckValue::Scalar(lhs),
        rhs: CheckValue::Scalar(rhs),
    })
}
