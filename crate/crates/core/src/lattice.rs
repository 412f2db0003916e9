//! Weighted ℓ^p sequence lattices: weight families, norms, duality, the
//! dilation operators D_n and restriction operators R_σ.
//!
//! A space is a pair (p, w) with p ∈ [1, ∞] and a positive weight w_α on
//! multi-indices; it holds the sequences x with (x_α w_α) ∈ ℓ^p. Dilation
//! by n shifts the index by α(n); its operator norm is sup_β
//! w_{α(n)+β}/w_β, measured here over a degree truncation and paired with
//! a closed-form upper bound when the family admits one.

use std::collections::{BTreeMap, BTreeSet};

use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::index::{self, MultiIndex};
use crate::numeric::{compositions_at_most, lnfact, Kahan};
use crate::{Error, Result};

/// p ∈ [1, ∞], with ∞ represented explicitly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Exponent {
    Finite(f64),
    Infinity,
}

impl Exponent {
    pub fn finite(p: f64) -> Self {
        assert!(p >= 1.0 && p.is_finite(), "p must lie in [1, inf)");
        Exponent::Finite(p)
    }

    /// The dual exponent p′ with 1/p + 1/p′ = 1; p = 1 ↔ p′ = ∞.
    pub fn dual(self) -> Self {
        match self {
            Exponent::Finite(p) if p == 1.0 => Exponent::Infinity,
            Exponent::Finite(p) => Exponent::Finite(p / (p - 1.0)),
            Exponent::Infinity => Exponent::Finite(1.0),
        }
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            Exponent::Finite(p) => Some(p),
            Exponent::Infinity => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Exponent::Infinity)
    }
}

impl std::fmt::Display for Exponent {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Exponent::Finite(p) => write!(f, "{p}"),
            Exponent::Infinity => write!(f, "inf"),
        }
    }
}

/// Built-in weight families. All have w_0 = 1.
///
/// * `DirichletProduct`: w_α = ∏_j (1+α_j)^{s_j}, with a default exponent
///   for every position beyond the explicit list, so infinite-variable
///   product weights have a finite description.
/// * `DruryArveson`: w_α = (α!/|α|!)^t (|α|+1)^s.
/// * `Table`: explicit values; lookups outside the table are an error,
///   never a silent default.
#[derive(Clone, Debug, PartialEq)]
pub enum WeightFamily {
    Unweighted,
    DirichletProduct { exponents: Vec<f64>, default: f64 },
    DruryArveson { t: f64, s: f64 },
    Table(BTreeMap<MultiIndex, f64>),
}

impl WeightFamily {
    /// Dirichlet exponent at a 1-based position.
    pub fn dirichlet_exponent(&self, position: u32) -> Option<f64> {
        match self {
            WeightFamily::DirichletProduct { exponents, default } => Some(
                exponents
                    .get(position as usize - 1)
                    .copied()
                    .unwrap_or(*default),
            ),
            _ => None,
        }
    }

    pub fn weight(&self, alpha: &MultiIndex) -> Option<f64> {
        match self {
            WeightFamily::Unweighted => Some(1.0),
            WeightFamily::DirichletProduct { .. } => {
                let mut w = 1.0;
                for &(pos, e) in alpha.entries() {
                    let s = self.dirichlet_exponent(pos).unwrap();
                    w *= (1.0 + e as f64).powf(s);
                }
                Some(w)
            }
            WeightFamily::DruryArveson { t, s } => {
                Some(drury_arveson_weight(alpha.entries(), *t, *s))
            }
            WeightFamily::Table(map) => map.get(alpha).copied(),
        }
    }
}

/// (α!/|α|!)^t (|α|+1)^s from exact multinomials, one rounding at the end.
pub(crate) fn drury_arveson_weight(entries: &[(u32, u32)], t: f64, s: f64) -> f64 {
    let degree: u64 = entries.iter().map(|&(_, e)| e as u64).sum();
    let head = ((degree + 1) as f64).powf(s);
    if t == 0.0 {
        return head;
    }
    let mut m = num_bigint::BigUint::from(1u32);
    let mut running = 0u64;
    for &(_, e) in entries {
        running += e as u64;
        m *= index::binomial(running, e as u64);
    }
    let mf = m.to_f64().unwrap_or(f64::INFINITY);
    if mf.is_finite() {
        mf.powf(-t) * head
    } else {
        // multinomial exceeds f64 range; evaluate the log exactly enough
        let mut ln_m = lnfact(degree as usize);
        for &(_, e) in entries {
            ln_m -= lnfact(e as usize);
        }
        (-t * ln_m).exp() * head
    }
}

/// A weighted ℓ^p lattice.
#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSpace {
    pub p: Exponent,
    pub weight: WeightFamily,
}

impl LatticeSpace {
    pub fn unweighted(p: Exponent) -> Self {
        LatticeSpace {
            p,
            weight: WeightFamily::Unweighted,
        }
    }

    pub fn dirichlet(p: Exponent, exponents: Vec<f64>, default: f64) -> Self {
        LatticeSpace {
            p,
            weight: WeightFamily::DirichletProduct { exponents, default },
        }
    }

    pub fn drury_arveson(p: Exponent, t: f64, s: f64) -> Self {
        LatticeSpace {
            p,
            weight: WeightFamily::DruryArveson { t, s },
        }
    }

    pub fn dual_exponent(&self) -> Exponent {
        self.p.dual()
    }

    pub fn weight_at(&self, alpha: &MultiIndex) -> Result<f64> {
        self.weight
            .weight(alpha)
            .ok_or_else(|| Error::MissingTableWeight {
                index: alpha.to_string(),
            })
    }

    /// (Σ |x_α|^p w_α^p)^{1/p}, or sup |x_α| w_α for p = ∞. Exact on the
    /// finite support.
    pub fn norm(&self, x: &SparseSeries) -> Result<f64> {
        match self.p {
            Exponent::Infinity => {
                let mut best = 0.0f64;
                for (alpha, c) in x.terms() {
                    best = best.max(c.norm() * self.weight_at(alpha)?);
                }
                Ok(best)
            }
            Exponent::Finite(p) => {
                let mut acc = Kahan::new();
                for (alpha, c) in x.terms() {
                    acc.add((c.norm() * self.weight_at(alpha)?).powf(p));
                }
                Ok(acc.value().max(0.0).powf(1.0 / p))
            }
        }
    }

    /// Measured dilation norm sup_{|β| ≤ cap} w_{α(n)+β}/w_β together
    /// with the attaining β and a closed-form upper bound where one
    /// exists. The measured value is a certified lower bound for the
    /// true operator norm.
    pub fn dilation_norm(&self, n: u64, degree_cap: u32) -> Result<DilationBound> {
        self.dilation_norm_index(&index::lift_u64(n), degree_cap)
    }

    pub fn dilation_norm_index(&self, alpha: &MultiIndex, degree_cap: u32) -> Result<DilationBound> {
        let mut best = f64::NEG_INFINITY;
        let mut argmax = MultiIndex::zero();
        let mut consider = |beta: &MultiIndex, ratio: f64| {
            if ratio > best {
                best = ratio;
                argmax = beta.clone();
            }
        };

        let closed_form = match &self.weight {
            WeightFamily::Unweighted => {
                consider(&MultiIndex::zero(), 1.0);
                Some(1.0)
            }
            WeightFamily::DirichletProduct { .. } => {
                let positions: Vec<u32> = alpha.support().collect();
                let w_of = |beta: &MultiIndex| self.weight.weight(beta).unwrap();
                let mut visit = |exps: &[u32]| {
                    let beta = sparse_from(&positions, exps);
                    let ratio = w_of(&alpha.add(&beta)) / w_of(&beta);
                    consider(&beta, ratio);
                };
                compositions_at_most(degree_cap, positions.len(), &mut visit);
                let mut bound = 1.0;
                for &(pos, e) in alpha.entries() {
                    let s = self.weight.dirichlet_exponent(pos).unwrap();
                    bound *= ((1.0 + e as f64).powf(s)).max(1.0);
                }
                Some(bound)
            }
            WeightFamily::DruryArveson { t, s } => {
                let positions: Vec<u32> = alpha.support().collect();
                let off_position = alpha.max_position().unwrap_or(0) + 1;
                let mut visit = |exps: &[u32]| {
                    let used: u32 = exps.iter().sum();
                    for m_out in 0..=(degree_cap - used) {
                        let mut beta = sparse_from(&positions, exps);
                        if m_out > 0 {
                            beta = beta.add(&MultiIndex::unit(off_position, m_out));
                        }
                        let num = drury_arveson_weight(alpha.add(&beta).entries(), *t, *s);
                        let den = drury_arveson_weight(beta.entries(), *t, *s);
                        consider(&beta, num / den);
                    }
                };
                compositions_at_most(degree_cap, positions.len(), &mut visit);
                if *t >= 0.0 {
                    Some(2f64.powf(s.max(0.0) * alpha.degree() as f64))
                } else {
                    None
                }
            }
            WeightFamily::Table(map) => {
                for (beta, &wb) in map.iter() {
                    if beta.degree() > degree_cap as u64 {
                        continue;
                    }
                    let shifted = alpha.add(beta);
                    if let Some(&wn) = map.get(&shifted) {
                        consider(beta, wn / wb);
                    }
                }
                None
            }
        };

        if best == f64::NEG_INFINITY {
            return Err(Error::MissingTableWeight {
                index: alpha.to_string(),
            });
        }
        Ok(DilationBound {
            value: best,
            argmax,
            degree_cap,
            closed_form,
        })
    }
}

fn sparse_from(positions: &[u32], exps: &[u32]) -> MultiIndex {
    let pairs: Vec<(u32, u32)> = positions
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(&p, &e)| (p, e))
        .collect();
    MultiIndex::from_pairs(&pairs).unwrap()
}

/// Result of a truncated dilation-norm scan.
#[derive(Clone, Debug)]
pub struct DilationBound {
    /// sup of the weight ratios over the scanned truncation — a lower
    /// bound for the operator norm.
    pub value: f64,
    /// β attaining the sup.
    pub argmax: MultiIndex,
    pub degree_cap: u32,
    /// Closed-form upper bound for the true norm, when the family has one.
    pub closed_form: Option<f64>,
}

/// Finitely supported series/sequence: a map α ↦ coefficient with no
/// stored zeros. Doubles as a sequence on ℕ through n ↔ α(n).
#[derive(Clone, Debug, PartialEq, Default)]
pub struct SparseSeries {
    coeffs: BTreeMap<MultiIndex, Complex64>,
}

impl SparseSeries {
    pub fn zero() -> Self {
        SparseSeries::default()
    }

    /// δ₁: the multiplicative unit (coefficient 1 at α = 0).
    pub fn unit() -> Self {
        SparseSeries::monomial(MultiIndex::zero(), Complex64::new(1.0, 0.0))
    }

    pub fn monomial(alpha: MultiIndex, c: Complex64) -> Self {
        let mut s = SparseSeries::zero();
        s.set(alpha, c);
        s
    }

    pub fn from_terms<I: IntoIterator<Item = (MultiIndex, Complex64)>>(terms: I) -> Self {
        let mut s = SparseSeries::zero();
        for (a, c) in terms {
            s.add_to(a, c);
        }
        s
    }

    /// Builds from n-indexed coefficients via the Bohr lift.
    pub fn from_n_terms<I: IntoIterator<Item = (u64, Complex64)>>(terms: I) -> Self {
        SparseSeries::from_terms(
            terms
                .into_iter()
                .map(|(n, c)| (index::lift_u64(n), c)),
        )
    }

    pub fn coeff(&self, alpha: &MultiIndex) -> Complex64 {
        self.coeffs
            .get(alpha)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn constant_term(&self) -> Complex64 {
        self.coeff(&MultiIndex::zero())
    }

    pub fn set(&mut self, alpha: MultiIndex, c: Complex64) {
        if c == Complex64::new(0.0, 0.0) {
            self.coeffs.remove(&alpha);
        } else {
            self.coeffs.insert(alpha, c);
        }
    }

    pub fn add_to(&mut self, alpha: MultiIndex, c: Complex64) {
        let v = self.coeff(&alpha) + c;
        self.set(alpha, v);
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &Complex64)> {
        self.coeffs.iter()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn support_positions(&self) -> BTreeSet<u32> {
        self.coeffs.keys().flat_map(|a| a.support()).collect()
    }

    pub fn max_degree(&self) -> u64 {
        self.coeffs.keys().map(|a| a.degree()).max().unwrap_or(0)
    }

    pub fn scale(&self, c: Complex64) -> SparseSeries {
        SparseSeries::from_terms(self.terms().map(|(a, v)| (a.clone(), v * c)))
    }

    pub fn add(&self, other: &SparseSeries) -> SparseSeries {
        let mut out = self.clone();
        for (a, c) in other.terms() {
            out.add_to(a.clone(), *c);
        }
        out
    }

    pub fn sub(&self, other: &SparseSeries) -> SparseSeries {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    /// D_n: moves the coefficient at α to α + α(n); on the Bohr side,
    /// multiplication by ζ^{α(n)}.
    pub fn dilate(&self, n: u64) -> SparseSeries {
        self.dilate_index(&index::lift_u64(n))
    }

    pub fn dilate_index(&self, shift: &MultiIndex) -> SparseSeries {
        SparseSeries::from_terms(self.terms().map(|(a, c)| (a.add(shift), *c)))
    }

    /// R_σ: keeps exactly the coefficients with supp(α) ⊆ σ.
    pub fn restrict(&self, positions: &BTreeSet<u32>) -> SparseSeries {
        SparseSeries::from_terms(
            self.terms()
                .filter(|(a, _)| a.support().all(|p| positions.contains(&p)))
                .map(|(a, c)| (a.clone(), *c)),
        )
    }

    /// Keeps the coefficients supported entirely on positions > n.
    pub fn restrict_above(&self, n: u32) -> SparseSeries {
        SparseSeries::from_terms(
            self.terms()
                .filter(|(a, _)| a.support().all(|p| p > n))
                .map(|(a, c)| (a.clone(), *c)),
        )
    }

    /// Splits an affine series 1·a + Σ a_i ζ_i into (a, [(position, a_i)]);
    /// None if any term has degree ≥ 2.
    pub fn affine_parts(&self) -> Option<(Complex64, Vec<(u32, Complex64)>)> {
        let mut linear = Vec::new();
        for (alpha, c) in self.terms() {
            match alpha.degree() {
                0 => {}
                1 => linear.push((alpha.min_position().unwrap(), *c)),
                _ => return None,
            }
        }
        Some((self.constant_term(), linear))
    }
}

/// The bilinear pairing ⟨x, y⟩ = Σ_α x_α y_α (no conjugation).
pub fn pairing(x: &SparseSeries, y: &SparseSeries) -> Complex64 {
    let (small, big) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut acc = Complex64::new(0.0, 0.0);
    for (a, c) in small.terms() {
        acc += c * big.coeff(a);
    }
    acc
}
