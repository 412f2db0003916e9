//! Dirichlet convolution, Möbius inversion, Neumann-series inversion,
//! convolution-algebra constants W_γ, and monomial multiplier norms.
//!
//! Convolution on ℕ (multiplicative) and addition of multi-indices on
//! Z₊(∞) are the same operation under the Bohr lift; everything here
//! works on the lifted side. Truncations are exact on the retained
//! range: degree, position and index caps are all stable under
//! convolution, so no partially accumulated coefficient ever survives
//! inside the cap.

use std::collections::{BTreeMap, HashMap};

use num_complex::Complex64;

use crate::index::{self, MultiIndex};
use crate::lattice::{drury_arveson_weight, DilationBound, Exponent, LatticeSpace, SparseSeries, WeightFamily};
use crate::numeric::{compositions_exact, Kahan, KahanComplex};
use crate::{Error, Result};

/// Retention window for truncated operations. `None` caps are unbounded.
#[derive(Clone, Debug, Default)]
pub struct Truncation {
    pub degree_cap: Option<u64>,
    pub position_cap: Option<u32>,
    pub n_cap: Option<u64>,
}

impl Truncation {
    pub fn none() -> Self {
        Truncation::default()
    }

    pub fn degree(cap: u64) -> Self {
        Truncation {
            degree_cap: Some(cap),
            ..Truncation::default()
        }
    }

    pub fn indices_up_to(n_cap: u64) -> Self {
        Truncation {
            n_cap: Some(n_cap),
            ..Truncation::default()
        }
    }

    pub fn admits(&self, alpha: &MultiIndex) -> bool {
        if let Some(d) = self.degree_cap {
            if alpha.degree() > d {
                return false;
            }
        }
        if let Some(p) = self.position_cap {
            if alpha.max_position().map_or(false, |m| m > p) {
                return false;
            }
        }
        if let Some(n) = self.n_cap {
            if index::value_within(alpha, n).is_none() {
                return false;
            }
        }
        true
    }
}

/// Exact convolution product: (x·y)_γ = Σ_{α+β=γ} x_α y_β.
pub fn multiply(x: &SparseSeries, y: &SparseSeries) -> SparseSeries {
    multiply_truncated(x, y, &Truncation::none())
}

/// Convolution with every output index filtered through the truncation;
/// coefficients inside the window are exact.
pub fn multiply_truncated(x: &SparseSeries, y: &SparseSeries, trunc: &Truncation) -> SparseSeries {
    let mut acc: BTreeMap<MultiIndex, KahanComplex> = BTreeMap::new();
    for (a, ca) in x.terms() {
        for (b, cb) in y.terms() {
            let gamma = a.add(b);
            if !trunc.admits(&gamma) {
                continue;
            }
            acc.entry(gamma).or_default().add(ca * cb);
        }
    }
    SparseSeries::from_terms(acc.into_iter().map(|(g, k)| (g, k.value())))
}

/// Möbius inversion on ℕ: returns b with b_n = Σ_{d|n} μ(n/d) a_d, the
/// unique solution of a_n = Σ_{d|n} b_d for n ≤ n_max.
pub fn mobius_invert(a: &SparseSeries, n_max: u64) -> SparseSeries {
    let avals = dense(a, n_max);
    let mu = index::mobius_table(n_max as usize);
    let mut b = vec![Complex64::new(0.0, 0.0); n_max as usize + 1];
    for d in 1..=n_max as usize {
        let ad = avals[d];
        if ad == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut m = d;
        while m <= n_max as usize {
            let factor = mu[m / d];
            if factor != 0 {
                b[m] += ad * factor as f64;
            }
            m += d;
        }
    }
    collect(&b)
}

/// Divisor-sum transform: a_n = Σ_{d|n} b_d, the inverse of
/// [`mobius_invert`].
pub fn divisor_sums(b: &SparseSeries, n_max: u64) -> SparseSeries {
    let bvals = dense(b, n_max);
    let mut a = vec![Complex64::new(0.0, 0.0); n_max as usize + 1];
    for d in 1..=n_max as usize {
        let bd = bvals[d];
        if bd == Complex64::new(0.0, 0.0) {
            continue;
        }
        let mut m = d;
        while m <= n_max as usize {
            a[m] += bd;
            m += d;
        }
    }
    collect(&a)
}

fn dense(x: &SparseSeries, n_max: u64) -> Vec<Complex64> {
    let mut vals = vec![Complex64::new(0.0, 0.0); n_max as usize + 1];
    for (alpha, c) in x.terms() {
        if let Some(n) = index::value_within(alpha, n_max) {
            vals[n as usize] = *c;
        }
    }
    vals
}

fn collect(vals: &[Complex64]) -> SparseSeries {
    SparseSeries::from_n_terms(
        vals.iter()
            .enumerate()
            .skip(1)
            .filter(|(_, z)| **z != Complex64::new(0.0, 0.0))
            .map(|(n, z)| (n as u64, *z)),
    )
}

/// Σ_{k=0}^{order} (1 − f)^k under the truncation. Requires f̂(0) = 1;
/// multiplying back by f leaves the unit plus terms of order beyond
/// min(order, cap).
pub fn neumann_inverse(f: &SparseSeries, order: u32, trunc: &Truncation) -> Result<SparseSeries> {
    let c0 = f.constant_term();
    if (c0 - Complex64::new(1.0, 0.0)).norm() > 1e-12 {
        return Err(Error::NotNormalized { re: c0.re, im: c0.im });
    }
    let mut g = SparseSeries::unit().sub(f);
    g.set(MultiIndex::zero(), Complex64::new(0.0, 0.0));
    let mut acc = SparseSeries::unit();
    let mut power = SparseSeries::unit();
    for _ in 1..=order {
        power = multiply_truncated(&power, &g, trunc);
        if power.is_empty() {
            break;
        }
        acc = acc.add(&power);
    }
    Ok(acc)
}

/// The convolution-algebra constant
/// W_γ = (Σ_{α+β=γ} (w_γ/(w_α w_β))^{p′})^{1/p′}, with the max reading
/// for p = 1 (p′ = ∞).
pub fn algebra_constant(space: &LatticeSpace, gamma: &MultiIndex) -> Result<f64> {
    let mut ctx = ScanContext::new(space);
    let positions: Vec<u32> = gamma.support().collect();
    let caps: Vec<u32> = gamma.entries().iter().map(|&(_, e)| e).collect();
    ctx.constant(&positions, &caps)
}

struct ScanContext<'a> {
    space: &'a LatticeSpace,
    da_cache: HashMap<Vec<u32>, f64>,
}

impl<'a> ScanContext<'a> {
    fn new(space: &'a LatticeSpace) -> Self {
        ScanContext {
            space,
            da_cache: HashMap::new(),
        }
    }

    fn weight(&mut self, positions: &[u32], exps: &[u32]) -> Result<f64> {
        match &self.space.weight {
            WeightFamily::Unweighted => Ok(1.0),
            WeightFamily::DirichletProduct { .. } => {
                let mut w = 1.0;
                for (&pos, &e) in positions.iter().zip(exps) {
                    if e > 0 {
                        let s = self.space.weight.dirichlet_exponent(pos).unwrap();
                        w *= (1.0 + e as f64).powf(s);
                    }
                }
                Ok(w)
            }
            WeightFamily::DruryArveson { t, s } => {
                // depends only on the multiset of nonzero exponents
                let mut key: Vec<u32> = exps.iter().copied().filter(|&e| e > 0).collect();
                key.sort_unstable();
                if let Some(&w) = self.da_cache.get(&key) {
                    return Ok(w);
                }
                let entries: Vec<(u32, u32)> = key
                    .iter()
                    .enumerate()
                    .map(|(i, &e)| (i as u32 + 1, e))
                    .collect();
                let w = drury_arveson_weight(&entries, *t, *s);
                self.da_cache.insert(key, w);
                Ok(w)
            }
            WeightFamily::Table(_) => {
                let pairs: Vec<(u32, u32)> = positions
                    .iter()
                    .zip(exps)
                    .filter(|(_, &e)| e > 0)
                    .map(|(&p, &e)| (p, e))
                    .collect();
                let alpha = MultiIndex::from_pairs(&pairs).unwrap();
                self.space.weight_at(&alpha)
            }
        }
    }

    fn constant(&mut self, positions: &[u32], caps: &[u32]) -> Result<f64> {
        let w_gamma = self.weight(positions, caps)?;
        let pprime = self.space.dual_exponent();
        let mut sum = Kahan::new();
        let mut sup = 0.0f64;
        let mut alpha = vec![0u32; caps.len()];
        let mut beta: Vec<u32> = caps.to_vec();
        loop {
            let wa = self.weight(positions, &alpha)?;
            let wb = self.weight(positions, &beta)?;
            let ratio = w_gamma / (wa * wb);
            match pprime {
                Exponent::Infinity => sup = sup.max(ratio),
                Exponent::Finite(q) => sum.add(ratio.powf(q)),
            }
            // odometer over alpha <= caps
            let mut i = alpha.len();
            loop {
                if i == 0 {
                    return Ok(match pprime {
                        Exponent::Infinity => sup,
                        Exponent::Finite(q) => sum.value().max(0.0).powf(1.0 / q),
                    });
                }
                i -= 1;
                if alpha[i] < caps[i] {
                    alpha[i] += 1;
                    beta[i] -= 1;
                    break;
                }
                beta[i] = caps[i];
                alpha[i] = 0;
            }
        }
    }
}

/// Per-shell maximum of W_γ.
#[derive(Clone, Debug)]
pub struct ShellStat {
    pub degree: u32,
    pub max: f64,
    pub argmax: MultiIndex,
}

/// Result of sweeping W_γ over degree shells.
#[derive(Clone, Debug)]
pub struct AlgebraScan {
    pub shells: Vec<ShellStat>,
    pub sup: f64,
    pub max_positions: u32,
}

/// γ-range for [`algebra_scan`]: every γ supported on the first
/// `max_positions` positions, swept shell by shell up to `max_degree`.
#[derive(Clone, Copy, Debug)]
pub struct ScanBudget {
    pub max_degree: u32,
    pub max_positions: u32,
}

impl Default for ScanBudget {
    fn default() -> Self {
        ScanBudget {
            max_degree: 20,
            max_positions: 3,
        }
    }
}

/// Sweeps W_γ over the budgeted γ-range and records the maximum per
/// degree shell together with the running sup. A bounded sup across
/// shells is the computational shadow of the convolution-algebra
/// criterion; steadily growing shell maxima refute it on the range.
pub fn algebra_scan(space: &LatticeSpace, budget: &ScanBudget) -> Result<AlgebraScan> {
    let mut ctx = ScanContext::new(space);
    let positions: Vec<u32> = (1..=budget.max_positions).collect();
    let mut shells = Vec::with_capacity(budget.max_degree as usize + 1);
    let mut sup = 0.0f64;
    for d in 0..=budget.max_degree {
        let mut best = f64::NEG_INFINITY;
        let mut arg = MultiIndex::zero();
        let mut err: Option<Error> = None;
        compositions_exact(d, positions.len(), &mut |caps: &[u32]| {
            if err.is_some() {
                return;
            }
            match ctx.constant(&positions, caps) {
                Ok(w) => {
                    if w > best {
                        best = w;
                        let pairs: Vec<(u32, u32)> = positions
                            .iter()
                            .zip(caps)
                            .filter(|(_, &e)| e > 0)
                            .map(|(&p, &e)| (p, e))
                            .collect();
                        arg = MultiIndex::from_pairs(&pairs).unwrap();
                    }
                }
                Err(e) => err = Some(e),
            }
        });
        if let Some(e) = err {
            return Err(e);
        }
        sup = sup.max(best);
        shells.push(ShellStat {
            degree: d,
            max: best,
            argmax: arg,
        });
    }
    Ok(AlgebraScan {
        shells,
        sup,
        max_positions: budget.max_positions,
    })
}

/// Multiplier norm of the monomial ζ^α: identical to the dilation norm of
/// n = unlift(α), exposed on the Bohr side.
pub fn monomial_multiplier_norm(
    space: &LatticeSpace,
    alpha: &MultiIndex,
    degree_cap: u32,
) -> Result<DilationBound> {
    space.dilation_norm_index(alpha, degree_cap)
}

/// The closed-form tail constant 2 Σ_{k≥0} (2/(k+1))^e (finite for e > 1):
/// the shell-uniform bound produced by the Vandermonde chain for W_γ.
pub fn algebra_tail_bound(e: f64) -> Option<f64> {
    if e <= 1.0 {
        return None;
    }
    Some(2.0 * 2f64.powf(e) * zeta(e))
}

/// ζ(e) for e > 1 by Euler–Maclaurin with a power-tail correction.
fn zeta(e: f64) -> f64 {
    let cut = 2000u64;
    let mut acc = Kahan::new();
    for k in 1..cut {
        acc.add((k as f64).powf(-e));
    }
    let k = cut as f64;
    // ∫_cut^∞ + midpoint and curvature corrections
    acc.add(k.powf(1.0 - e) / (e - 1.0));
    acc.add(0.5 * k.powf(-e));
    acc.add(e / 12.0 * k.powf(-e - 1.0));
    acc.value()
}
