//! The cyclicity laboratory: the prime sieve recursion, the 1/f_r
//! norm-growth scheme, least-squares cyclicity distance, and the
//! decidable cyclicity predicates assembled into a verdict engine.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::index::{self, MultiIndex};
use crate::lattice::{Exponent, LatticeSpace, SparseSeries, WeightFamily};
use crate::numeric::{self, compositions_at_most, halton, least_squares_qr, Kahan, LogSum};
use crate::series::{domain_contains, evaluate, DomainStatus, DomainVerdict, Point};
use crate::{Error, Result};

const ONE: Complex64 = Complex64::new(1.0, 0.0);
const ZERO: Complex64 = Complex64::new(0.0, 0.0);

// ---------------------------------------------------------------------------
// Sieve recursion
// ---------------------------------------------------------------------------

/// One step of the recursion x(s) = (id − x_{p_s} D_{p_s}) x(s−1).
#[derive(Clone, Debug)]
pub struct SieveStep {
    pub prime_index: usize,
    pub prime: u64,
    pub series: SparseSeries,
    pub sup_norm: f64,
    /// Nonzero coordinates at indices 2..p_s; zero for healthy runs.
    pub nonzero_below_prime: usize,
}

#[derive(Clone, Debug)]
pub struct SieveTrace {
    pub steps: Vec<SieveStep>,
    pub n_max: u64,
    /// max_{j ≥ 2} |x(last)_j| — the coordinatewise gap to δ₁.
    pub delta1_deviation: f64,
}

/// Runs `steps` sieve steps on the window n ≤ n_max. Coordinate 1 must be
/// 1. For totally multiplicative inputs the zeroing of each p_s·ℕ is
/// exact and the sup norm never grows.
pub fn sieve_run(x: &SparseSeries, n_max: u64, steps: usize) -> Result<SieveTrace> {
    let nm = n_max as usize;
    let mut v = vec![ZERO; nm + 1];
    for (alpha, c) in x.terms() {
        if let Some(n) = index::value_within(alpha, n_max) {
            v[n as usize] = *c;
        }
    }
    if (v[1] - ONE).norm() > 1e-12 {
        return Err(Error::LeadingTermNotOne {
            re: v[1].re,
            im: v[1].im,
        });
    }
    let original = v.clone();
    let primes = index::primes(steps.max(1));
    let mut trace = Vec::with_capacity(steps);
    for (s, &p) in primes.iter().enumerate().take(steps) {
        let xp = if p <= n_max { original[p as usize] } else { ZERO };
        if p <= n_max && xp != ZERO {
            // descending so v[j/p] is still the previous step's value
            let mut j = (nm / p as usize) * p as usize;
            while j >= p as usize {
                let prev = v[j / p as usize];
                v[j] -= xp * prev;
                j -= p as usize;
            }
        }
        let mut sup = 0.0f64;
        for z in v.iter().skip(1) {
            sup = sup.max(z.norm());
        }
        let below = v[2..(p as usize).min(nm + 1).max(2)]
            .iter()
            .filter(|z| **z != ZERO)
            .count();
        let series = SparseSeries::from_n_terms(
            v.iter()
                .enumerate()
                .skip(1)
                .filter(|(_, z)| **z != ZERO)
                .map(|(n, z)| (n as u64, *z)),
        );
        trace.push(SieveStep {
            prime_index: s + 1,
            prime: p,
            series,
            sup_norm: sup,
            nonzero_below_prime: below,
        });
    }
    let delta1_deviation = v.iter().skip(2).map(|z| z.norm()).fold(0.0, f64::max);
    Ok(SieveTrace {
        steps: trace,
        n_max,
        delta1_deviation,
    })
}

// ---------------------------------------------------------------------------
// f_r family and norm growth
// ---------------------------------------------------------------------------

/// f_r = 1 + r(f − 1): the constant term stays 1, every other
/// coefficient is scaled by r.
pub fn fr_family(f: &SparseSeries, r: f64) -> Result<SparseSeries> {
    let c0 = f.constant_term();
    if (c0 - ONE).norm() > 1e-12 {
        return Err(Error::NotNormalized { re: c0.re, im: c0.im });
    }
    Ok(SparseSeries::from_terms(f.terms().map(|(a, c)| {
        if a.is_zero() {
            (a.clone(), *c)
        } else {
            (a.clone(), c * r)
        }
    })))
}

#[derive(Clone, Debug)]
pub struct GrowthSample {
    pub r: f64,
    pub norm: f64,
    /// Neumann order actually accumulated.
    pub order: usize,
    /// Estimated truncation tail relative to the norm.
    pub tail_rel: f64,
    pub admitted: bool,
}

#[derive(Clone, Debug)]
pub struct GrowthReport {
    pub samples: Vec<GrowthSample>,
    /// Log-log slope of the norm against 1/(1−r), over admitted radii.
    pub fitted_exponent: Option<f64>,
    /// 1/p + |s| for product weights, 1/p + s for the row family.
    pub theoretical_exponent: Option<f64>,
    /// fitted ≤ theoretical + 0.1
    pub within_theory: Option<bool>,
}

/// Measures ‖1/f_r‖ over a radius grid for affine f = 1 − Σ a_i ζ_i.
///
/// Each Neumann term r^k l^k is homogeneous of degree k, so the p-th
/// powers of the term norms add exactly; the per-shell norms are
/// evaluated in log space (raw coefficients overflow doubles long before
/// the weighted shell norms do). A radius is admitted once the geometric
/// tail estimate drops below 1e-6 of the accumulated norm; otherwise it
/// is reported excluded.
pub fn growth_measure(
    f: &SparseSeries,
    space: &LatticeSpace,
    r_grid: &[f64],
    max_order: usize,
) -> Result<GrowthReport> {
    let p = match space.p {
        Exponent::Finite(p) => p,
        Exponent::Infinity => {
            return Err(Error::RequiresFiniteExponent {
                op: "growth_measure",
            })
        }
    };
    let c0 = f.constant_term();
    if (c0 - ONE).norm() > 1e-12 {
        return Err(Error::NotNormalized { re: c0.re, im: c0.im });
    }
    let (_, linear) = f
        .affine_parts()
        .ok_or(Error::NotAffine { degree: f.max_degree() })?;
    // f = 1 - l, so l has the negated coefficients
    let moduli: Vec<f64> = linear.iter().map(|(_, c)| c.norm()).collect();
    let positions: Vec<u32> = linear.iter().map(|(pos, _)| *pos).collect();

    let m = moduli.len();
    let effective_order = match m {
        0 | 1 => max_order,
        2 => max_order.min(80_000),
        _ => max_order.min(800),
    };
    let lnf = numeric::lnfact_snapshot(effective_order + 2);
    let shell_ln = |k: usize| shell_ln_norm_p(space, &positions, &moduli, k, p, &lnf);

    let mut samples = Vec::with_capacity(r_grid.len());
    for &r in r_grid {
        if !(r > 0.0 && r < 1.0) {
            return Err(Error::InvalidRadius { r });
        }
        if m == 0 {
            samples.push(GrowthSample {
                r,
                norm: 1.0,
                order: 0,
                tail_rel: 0.0,
                admitted: true,
            });
            continue;
        }
        let ln_r = r.ln();
        let mut acc = Kahan::new();
        let mut u_prev = f64::NAN;
        let mut q_prev = f64::NAN;
        let mut sample = GrowthSample {
            r,
            norm: f64::NAN,
            order: effective_order,
            tail_rel: f64::INFINITY,
            admitted: false,
        };
        for k in 0..=effective_order {
            let ln_u = p * k as f64 * ln_r + shell_ln(k)?;
            if ln_u > 600.0 {
                break; // norm is blowing up; the radius cannot be admitted
            }
            let u = ln_u.exp();
            acc.add(u);
            let s = acc.value();
            if u == 0.0 {
                sample = GrowthSample {
                    r,
                    norm: s.max(0.0).powf(1.0 / p),
                    order: k,
                    tail_rel: 0.0,
                    admitted: true,
                };
                break;
            }
            if k >= 4 && u_prev > 0.0 {
                let q = u / u_prev;
                if q_prev.is_finite() && q < 1.0 {
                    // ratios drift monotonically like q*(1 + θ/k); extrapolate
                    // the limit when they are still rising
                    let q_hat = if q <= q_prev {
                        q_prev
                    } else {
                        (q + (q - q_prev) * k as f64).min(0.999_999_9)
                    };
                    if q_hat < 1.0 {
                        let tail = u * q_hat / (1.0 - q_hat);
                        let tail_rel = tail / (p * s);
                        if tail_rel <= 1e-6 {
                            sample = GrowthSample {
                                r,
                                norm: s.max(0.0).powf(1.0 / p),
                                order: k,
                                tail_rel,
                                admitted: true,
                            };
                            break;
                        }
                    }
                }
                q_prev = q;
            } else if u_prev > 0.0 {
                q_prev = u / u_prev;
            }
            u_prev = u;
        }
        if !sample.admitted {
            sample.norm = acc.value().max(0.0).powf(1.0 / p);
        }
        samples.push(sample);
    }

    let theoretical_exponent = match &space.weight {
        WeightFamily::Unweighted => Some(1.0 / p),
        WeightFamily::DirichletProduct { .. } => {
            let total: f64 = positions
                .iter()
                .map(|&pos| space.weight.dirichlet_exponent(pos).unwrap())
                .sum();
            Some(1.0 / p + total)
        }
        WeightFamily::DruryArveson { s, .. } => Some(1.0 / p + s),
        WeightFamily::Table(_) => None,
    };

    let admitted: Vec<&GrowthSample> = samples.iter().filter(|s| s.admitted).collect();
    let fitted_exponent = if admitted.len() >= 2 {
        let xs: Vec<f64> = admitted.iter().map(|s| (1.0 / (1.0 - s.r)).ln()).collect();
        let ys: Vec<f64> = admitted.iter().map(|s| s.norm.ln()).collect();
        Some(slope(&xs, &ys))
    } else {
        None
    };
    let within_theory = match (fitted_exponent, theoretical_exponent) {
        (Some(f), Some(t)) => Some(f <= t + 0.1),
        _ => None,
    };
    Ok(GrowthReport {
        samples,
        fitted_exponent,
        theoretical_exponent,
        within_theory,
    })
}

/// ln ‖l^k‖^p where l = Σ a_i ζ_i: log-sum over the degree-k shell of
/// p·(ln |a^α| + ln(k!/α!) + ln w_α).
fn shell_ln_norm_p(
    space: &LatticeSpace,
    positions: &[u32],
    moduli: &[f64],
    k: usize,
    p: f64,
    lnf: &[f64],
) -> Result<f64> {
    if k == 0 {
        return Ok(0.0); // w_0 = 1 for every built-in family
    }
    let ln_moduli: Vec<f64> = moduli.iter().map(|a| a.ln()).collect();
    let dirichlet_exps: Option<Vec<f64>> = match &space.weight {
        WeightFamily::DirichletProduct { .. } => Some(
            positions
                .iter()
                .map(|&pos| space.weight.dirichlet_exponent(pos).unwrap())
                .collect(),
        ),
        _ => None,
    };
    let mut acc = LogSum::new();
    let mut err: Option<Error> = None;
    numeric::compositions_exact(k as u32, moduli.len(), &mut |exps: &[u32]| {
        if err.is_some() {
            return;
        }
        let mut ln_coeff = lnf[k];
        for (i, &e) in exps.iter().enumerate() {
            ln_coeff += e as f64 * ln_moduli[i] - lnf[e as usize];
        }
        let ln_w = match &space.weight {
            WeightFamily::Unweighted => 0.0,
            WeightFamily::DirichletProduct { .. } => {
                let s = dirichlet_exps.as_ref().unwrap();
                exps.iter()
                    .enumerate()
                    .map(|(i, &e)| s[i] * (1.0 + e as f64).ln())
                    .sum()
            }
            WeightFamily::DruryArveson { t, s } => {
                let mut ln_ratio = -lnf[k];
                for &e in exps {
                    ln_ratio += lnf[e as usize];
                }
                t * ln_ratio + s * ((k + 1) as f64).ln()
            }
            WeightFamily::Table(_) => {
                let pairs: Vec<(u32, u32)> = positions
                    .iter()
                    .zip(exps)
                    .filter(|(_, &e)| e > 0)
                    .map(|(&pos, &e)| (pos, e))
                    .collect();
                let alpha = MultiIndex::from_pairs(&pairs).unwrap();
                match space.weight_at(&alpha) {
                    Ok(w) => w.ln(),
                    Err(e) => {
                        err = Some(e);
                        return;
                    }
                }
            }
        };
        acc.add(p * (ln_coeff + ln_w));
    });
    if let Some(e) = err {
        return Err(e);
    }
    Ok(acc.ln_value())
}

fn slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

// ---------------------------------------------------------------------------
// Least-squares cyclicity distance (p = 2)
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct DistanceReport {
    /// min over polynomials q of ‖q f − 1‖ in the weighted ℓ² norm.
    pub distance: f64,
    pub condition: f64,
    pub rank_deficient: bool,
    pub unknowns: usize,
    pub rows: usize,
}

/// Distance from the unit to {q·f : deg q ≤ max_degree} in weighted ℓ².
/// The polynomial variables default to the positions of f.
pub fn cyclicity_distance(
    f: &SparseSeries,
    space: &LatticeSpace,
    max_degree: u32,
    positions: Option<&[u32]>,
) -> Result<DistanceReport> {
    match space.p {
        Exponent::Finite(p) if p == 2.0 => {}
        _ => {
            return Err(Error::RequiresHilbert {
                op: "cyclicity_distance",
            })
        }
    }
    let pos: Vec<u32> = match positions {
        Some(s) => s.to_vec(),
        None => f.support_positions().into_iter().collect(),
    };
    let mut basis: Vec<MultiIndex> = Vec::new();
    compositions_at_most(max_degree, pos.len(), &mut |exps: &[u32]| {
        let pairs: Vec<(u32, u32)> = pos
            .iter()
            .zip(exps)
            .filter(|(_, &e)| e > 0)
            .map(|(&p, &e)| (p, e))
            .collect();
        basis.push(MultiIndex::from_pairs(&pairs).unwrap());
    });

    let mut rows: std::collections::BTreeMap<MultiIndex, usize> = std::collections::BTreeMap::new();
    rows.insert(MultiIndex::zero(), 0);
    for beta in &basis {
        for (delta, _) in f.terms() {
            let gamma = beta.add(delta);
            let next = rows.len();
            rows.entry(gamma).or_insert(next);
        }
    }
    let m = rows.len();
    let mut row_weight = vec![0.0f64; m];
    for (gamma, &i) in rows.iter() {
        row_weight[i] = space.weight_at(gamma)?;
    }

    let mut cols = Vec::with_capacity(basis.len());
    for beta in &basis {
        let mut col = vec![ZERO; m];
        for (delta, c) in f.terms() {
            let gamma = beta.add(delta);
            let i = rows[&gamma];
            col[i] = c * row_weight[i];
        }
        cols.push(col);
    }
    let mut rhs = vec![ZERO; m];
    rhs[rows[&MultiIndex::zero()]] = Complex64::new(row_weight[rows[&MultiIndex::zero()]], 0.0);

    let out = least_squares_qr(cols, rhs);
    Ok(DistanceReport {
        distance: out.residual,
        condition: out.condition,
        rank_deficient: out.rank_deficient,
        unknowns: basis.len(),
        rows: m,
    })
}

/// The distance for every degree cap 0..=max_degree.
pub fn distance_curve(
    f: &SparseSeries,
    space: &LatticeSpace,
    max_degree: u32,
    positions: Option<&[u32]>,
) -> Result<Vec<(u32, f64)>> {
    (0..=max_degree)
        .map(|m| Ok((m, cyclicity_distance(f, space, m, positions)?.distance)))
        .collect()
}

// ---------------------------------------------------------------------------
// Affine predicates
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domination {
    Strict,
    Equality,
    Fails,
}

#[derive(Clone, Debug)]
pub struct FreeTermReport {
    pub verdict: Domination,
    /// |f̂(0)| − Σ_{α≠0} |f̂(α)|.
    pub margin: f64,
}

/// Compares the free term against the total mass of the rest.
pub fn free_term_dominates(f: &SparseSeries) -> FreeTermReport {
    if f.is_empty() {
        return FreeTermReport {
            verdict: Domination::Fails,
            margin: 0.0,
        };
    }
    let head = f.constant_term().norm();
    let mut tail = Kahan::new();
    for (alpha, c) in f.terms() {
        if !alpha.is_zero() {
            tail.add(c.norm());
        }
    }
    let margin = head - tail.value();
    let tol = 1e-12 * (head + tail.value()).max(1.0);
    let verdict = if margin.abs() <= tol {
        Domination::Equality
    } else if margin > 0.0 {
        Domination::Strict
    } else {
        Domination::Fails
    };
    FreeTermReport { verdict, margin }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geometry {
    Polydisc,
    /// ℓ^p coefficient test for the dual ℓ^{p′}-ball domain.
    Ball(f64),
}

#[derive(Clone, Debug)]
pub struct AffineReport {
    pub holds: bool,
    pub margin: f64,
}

/// Nonvanishing test for an affine function a + Σ a_i ζ_i on the open
/// polydisc (|a| ≥ Σ |a_i|) or the open unit ℓ^{p′}-ball
/// (|a| ≥ (Σ |a_i|^p)^{1/p}).
pub fn affine_nonvanishing(f: &SparseSeries, geometry: Geometry) -> Result<AffineReport> {
    let (a, linear) = f
        .affine_parts()
        .ok_or(Error::NotAffine { degree: f.max_degree() })?;
    let mass = match geometry {
        Geometry::Polydisc => linear.iter().map(|(_, c)| c.norm()).sum::<f64>(),
        Geometry::Ball(p) => linear
            .iter()
            .map(|(_, c)| c.norm().powf(p))
            .sum::<f64>()
            .powf(1.0 / p),
    };
    let margin = a.norm() - mass;
    let tol = 1e-12 * (a.norm() + mass).max(1.0);
    Ok(AffineReport {
        holds: margin >= -tol,
        margin,
    })
}

/// Explicit zero of a + Σ a_i ζ_i strictly inside the polydisc or
/// ℓ^{p′}-ball whenever the nonvanishing margin is strictly negative.
fn affine_zero_inside(a: Complex64, linear: &[(u32, Complex64)], geometry: Geometry) -> Point {
    if a == ZERO {
        return Point::origin();
    }
    match geometry {
        Geometry::Polydisc => {
            let mass: f64 = linear.iter().map(|(_, c)| c.norm()).sum();
            let tau = a.norm() / mass;
            Point::from_coords(linear.iter().map(|&(pos, c)| {
                (pos, -(a / a.norm()) * (c.conj() / c.norm()) * tau)
            }))
        }
        Geometry::Ball(p) => {
            let total: f64 = linear.iter().map(|(_, c)| c.norm().powf(p)).sum();
            Point::from_coords(
                linear
                    .iter()
                    .map(|&(pos, c)| (pos, -a * c.conj() * c.norm().powf(p - 2.0) / total)),
            )
        }
    }
}

// ---------------------------------------------------------------------------
// Zero search
// ---------------------------------------------------------------------------

/// A candidate zero: the point, |f| there, and its domain status.
#[derive(Clone, Debug)]
pub struct Witness {
    pub point: Point,
    pub value: f64,
    pub domain: DomainVerdict,
}

/// Quasi-random search for a zero of the lifted series inside its domain,
/// restricted to the positions of f. Returns the first point where |f|
/// falls below 1e-9 of the norm of f after a derivative-free polish.
/// Absence of a witness certifies nothing.
///
/// The search keeps a small safety margin to the domain boundary so that
/// an infimum approached only at the boundary is not mistaken for a zero.
pub fn beurling_search(
    f: &SparseSeries,
    space: &LatticeSpace,
    samples: usize,
    seed: u64,
) -> Result<Option<Witness>> {
    search_for_zero(f, space, samples, seed, 1e-3, false)
}

fn is_ball_domain(space: &LatticeSpace) -> bool {
    matches!(space.weight, WeightFamily::DruryArveson { .. })
        && !matches!(space.p, Exponent::Finite(p) if p == 1.0)
}

pub(crate) fn search_for_zero(
    f: &SparseSeries,
    space: &LatticeSpace,
    samples: usize,
    seed: u64,
    interior_margin: f64,
    include_boundary: bool,
) -> Result<Option<Witness>> {
    let positions: Vec<u32> = f.support_positions().into_iter().collect();
    let scale = space.norm(f)?;
    if scale == 0.0 {
        return Ok(None);
    }
    let threshold = 1e-9 * scale;
    if positions.is_empty() {
        return Ok(None); // nonzero constant
    }
    let d = positions.len();
    let ball = is_ball_domain(space);
    let q = space
        .dual_exponent()
        .as_finite()
        .unwrap_or(f64::INFINITY);
    let cap = if include_boundary {
        1.0
    } else {
        1.0 - interior_margin
    };

    let in_region = |pt: &Point| -> bool {
        if ball && q.is_finite() {
            let total: f64 = positions.iter().map(|&p| pt.coord(p).norm().powf(q)).sum();
            total <= cap + 1e-15
        } else {
            positions.iter().all(|&p| pt.coord(p).norm() <= cap + 1e-15)
        }
    };

    let bases = index::primes(2 * d + 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let offsets: Vec<f64> = (0..2 * d + 1).map(|_| rng.gen::<f64>()).collect();
    let coord = |i: u64, dim: usize| -> f64 {
        let u = halton(i, bases[dim]) + offsets[dim];
        u - u.floor()
    };

    let make_point = |i: u64| -> Point {
        let boundary_sample = include_boundary && i % 4 == 0;
        if ball && q.is_finite() {
            let radial = if boundary_sample {
                1.0
            } else {
                cap * coord(i, 2 * d)
            };
            let weights: Vec<f64> = (0..d)
                .map(|j| -(1.0 - coord(i, j)).max(1e-12).ln())
                .collect();
            let total: f64 = weights.iter().sum();
            Point::from_coords(positions.iter().enumerate().map(|(j, &pos)| {
                let share = radial * weights[j] / total;
                let modulus = share.max(0.0).powf(1.0 / q);
                let theta = 2.0 * std::f64::consts::PI * coord(i, d + j);
                (pos, Complex64::from_polar(modulus, theta))
            }))
        } else {
            Point::from_coords(positions.iter().enumerate().map(|(j, &pos)| {
                let modulus = if boundary_sample {
                    1.0
                } else {
                    cap * coord(i, j).sqrt()
                };
                let theta = 2.0 * std::f64::consts::PI * coord(i, d + j);
                (pos, Complex64::from_polar(modulus, theta))
            }))
        }
    };

    let coarse = 1e-2 * scale;
    let mut best: Option<(f64, Point)> = None;
    let mut polishes = 0usize;
    for i in 1..=samples as u64 {
        let pt = make_point(i);
        let v = evaluate(f, &pt).norm();
        if best.as_ref().map_or(true, |(bv, _)| v < *bv) {
            best = Some((v, pt.clone()));
        }
        if v < coarse && polishes < 8 {
            polishes += 1;
            let (polished, pv) = polish(f, &positions, &in_region, pt);
            if pv < threshold {
                return Ok(Some(Witness {
                    value: pv,
                    domain: domain_contains(space, &polished)?,
                    point: polished,
                }));
            }
            if best.as_ref().map_or(true, |(bv, _)| pv < *bv) {
                best = Some((pv, polished));
            }
        }
    }
    if let Some((_, pt)) = best {
        let (polished, pv) = polish(f, &positions, &in_region, pt);
        if pv < threshold {
            return Ok(Some(Witness {
                value: pv,
                domain: domain_contains(space, &polished)?,
                point: polished,
            }));
        }
    }
    Ok(None)
}

/// Deterministic coordinate pattern search on |f|², confined to the
/// admissible region.
fn polish(
    f: &SparseSeries,
    positions: &[u32],
    in_region: &dyn Fn(&Point) -> bool,
    start: Point,
) -> (Point, f64) {
    let mut current = start;
    let mut best = evaluate(f, &current).norm_sqr();
    let mut step = 0.05f64;
    let mut evals = 0usize;
    while step > 1e-13 && evals < 40_000 {
        let mut improved = false;
        for &pos in positions {
            for delta in [
                Complex64::new(step, 0.0),
                Complex64::new(-step, 0.0),
                Complex64::new(0.0, step),
                Complex64::new(0.0, -step),
            ] {
                let mut cand = current.clone();
                cand.set(pos, cand.coord(pos) + delta);
                if !in_region(&cand) {
                    continue;
                }
                evals += 1;
                let v = evaluate(f, &cand).norm_sqr();
                if v < best {
                    best = v;
                    current = cand;
                    improved = true;
                }
            }
        }
        if !improved {
            step *= 0.5;
        }
    }
    (current, best.sqrt())
}

// ---------------------------------------------------------------------------
// Verdict engine
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VerdictStatus {
    CertifiedCyclic,
    CertifiedNonCyclic,
    Inconclusive,
}

impl std::fmt::Display for VerdictStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VerdictStatus::CertifiedCyclic => write!(f, "CertifiedCyclic"),
            VerdictStatus::CertifiedNonCyclic => write!(f, "CertifiedNonCyclic"),
            VerdictStatus::Inconclusive => write!(f, "Inconclusive"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub status: VerdictStatus,
    /// Identifier of the rule that fired.
    pub rule: &'static str,
    /// Set when the conclusion holds for the weakened topology only.
    pub weak: bool,
    /// Set when the conclusion relies on sampling the domain for zeros.
    pub modulo_sampling: bool,
    pub margin: Option<f64>,
    pub witness: Option<Witness>,
    /// (degree cap, distance) pairs; empty when not computed.
    pub distance_curve: Vec<(u32, f64)>,
    pub notes: Vec<String>,
}

#[derive(Clone, Copy, Debug)]
pub struct VerdictBudget {
    pub samples: usize,
    pub seed: u64,
    /// Degree cap of the attached distance curve (p = 2 spaces).
    pub distance_degree: u32,
}

impl Default for VerdictBudget {
    fn default() -> Self {
        VerdictBudget {
            samples: 2048,
            seed: 0,
            distance_degree: 6,
        }
    }
}

fn weak_exponent(space: &LatticeSpace) -> bool {
    match space.p {
        Exponent::Finite(p) => p == 1.0,
        Exponent::Infinity => true,
    }
}

/// Open or closed one-variable disc of the space restricted to a single
/// position, as (radius, closed). None when the family has no rule.
fn one_variable_domain(space: &LatticeSpace, position: u32) -> Option<(f64, bool)> {
    let q = space.dual_exponent().as_finite();
    match &space.weight {
        WeightFamily::Unweighted => {
            Some((1.0, matches!(space.p, Exponent::Finite(p) if p == 1.0)))
        }
        WeightFamily::DirichletProduct { .. } => {
            let s = space.weight.dirichlet_exponent(position).unwrap();
            let closed = match q {
                Some(q) => s * q > 1.0,
                None => s >= 0.0, // p = 1
            };
            Some((1.0, closed))
        }
        WeightFamily::DruryArveson { s, .. } => {
            let closed = match q {
                Some(q) => s * q > 1.0,
                None => *s >= 0.0,
            };
            Some((1.0, closed))
        }
        WeightFamily::Table(_) => None,
    }
}

/// Whether the lifted space restricted to the positions of f satisfies
/// the closed-form convolution-algebra criterion, so that cyclicity is
/// equivalent to nonvanishing on the closed domain.
fn algebra_regime(space: &LatticeSpace, f: &SparseSeries) -> bool {
    let q = space.dual_exponent().as_finite();
    match &space.weight {
        WeightFamily::Unweighted => matches!(space.p, Exponent::Finite(p) if p == 1.0),
        WeightFamily::DirichletProduct { .. } => {
            let positions = f.support_positions();
            positions.iter().all(|&pos| {
                let s = space.weight.dirichlet_exponent(pos).unwrap();
                match q {
                    Some(q) => s * q > 1.0,
                    None => s >= 0.0,
                }
            })
        }
        WeightFamily::DruryArveson { t, s } => match q {
            Some(q) => s * q > 1.0 && *t >= 1.0 / q - 1e-12,
            None => *t >= 0.0 && *s >= 0.0,
        },
        WeightFamily::Table(_) => false,
    }
}

/// Decision cascade for dilation cyclicity of f in the given space:
/// a zero found inside the domain refutes cyclicity; a one-variable
/// polynomial is decided by its roots against the disc of the restricted
/// space; free-term domination and nonvanishing affine functions in the
/// admissible weight regimes certify cyclicity; convolution-algebra
/// regimes are decided up to zero sampling on the closed domain; anything
/// else is inconclusive and ships the distance curve as evidence.
pub fn verdict(f: &SparseSeries, space: &LatticeSpace, budget: &VerdictBudget) -> Result<Verdict> {
    let mut notes = Vec::new();

    if f.is_empty() {
        return Ok(Verdict {
            status: VerdictStatus::CertifiedNonCyclic,
            rule: "zero-series",
            weak: false,
            modulo_sampling: false,
            margin: None,
            witness: Some(Witness {
                point: Point::origin(),
                value: 0.0,
                domain: DomainVerdict {
                    status: DomainStatus::Inside,
                    rule: "origin",
                },
            }),
            distance_curve: Vec::new(),
            notes,
        });
    }

    let curve_for = |notes: &mut Vec<String>| -> Vec<(u32, f64)> {
        if !matches!(space.p, Exponent::Finite(p) if p == 2.0) {
            return Vec::new();
        }
        match distance_curve(f, space, budget.distance_degree, None) {
            Ok(c) => c,
            Err(e) => {
                notes.push(format!("distance curve unavailable: {e}"));
                Vec::new()
            }
        }
    };

    // (1) zero hunt inside the open domain
    if let Some(w) = beurling_search(f, space, budget.samples, budget.seed)? {
        return Ok(Verdict {
            status: VerdictStatus::CertifiedNonCyclic,
            rule: "beurling-zero-found",
            weak: false,
            modulo_sampling: false,
            margin: None,
            witness: Some(w),
            distance_curve: Vec::new(),
            notes,
        });
    }

    // (2) one-variable polynomial: decided by roots against the disc
    let positions = f.support_positions();
    if positions.len() == 1 && f.max_degree() >= 1 {
        let j = *positions.iter().next().unwrap();
        if let Some((radius, closed)) = one_variable_domain(space, j) {
            let deg = f.max_degree() as u32;
            let coeffs: Vec<Complex64> =
                (0..=deg).map(|e| f.coeff(&MultiIndex::unit(j, e))).collect();
            let roots = numeric::polynomial_roots(&coeffs);
            let tol = 1e-9 * radius.max(1.0);
            let inside = roots.iter().find(|z| {
                if closed {
                    z.norm() <= radius + tol
                } else {
                    z.norm() < radius - tol
                }
            });
            if let Some(&z) = inside {
                let point = Point::from_coords([(j, z)]);
                let value = evaluate(f, &point).norm();
                let domain = domain_contains(space, &point)?;
                return Ok(Verdict {
                    status: VerdictStatus::CertifiedNonCyclic,
                    rule: "one-variable-zero-in-domain",
                    weak: false,
                    modulo_sampling: false,
                    margin: None,
                    witness: Some(Witness { point, value, domain }),
                    distance_curve: Vec::new(),
                    notes,
                });
            }
            let margin = roots
                .iter()
                .map(|z| z.norm() - radius)
                .fold(f64::INFINITY, f64::min);
            let curve = curve_for(&mut notes);
            return Ok(Verdict {
                status: VerdictStatus::CertifiedCyclic,
                rule: "one-variable-polynomial",
                weak: weak_exponent(space),
                modulo_sampling: false,
                margin: Some(margin),
                witness: None,
                distance_curve: curve,
                notes,
            });
        }
        notes.push("no one-variable domain rule for this weight family".into());
    }

    // (3) free-term domination
    let ft = free_term_dominates(f);
    if ft.verdict != Domination::Fails {
        let curve = curve_for(&mut notes);
        return Ok(Verdict {
            status: VerdictStatus::CertifiedCyclic,
            rule: "free-term-domination",
            weak: ft.verdict == Domination::Equality || weak_exponent(space),
            modulo_sampling: false,
            margin: Some(ft.margin),
            witness: None,
            distance_curve: curve,
            notes,
        });
    }

    // (4) affine functions against the polydisc / ball criteria
    if let Some((a, linear)) = f.affine_parts() {
        if !linear.is_empty() {
            let plan = match (&space.weight, space.p) {
                (WeightFamily::Unweighted, _) => Some((Geometry::Polydisc, true)),
                (WeightFamily::DirichletProduct { .. }, _) => {
                    let q = space.dual_exponent().as_finite();
                    let total: f64 = linear
                        .iter()
                        .map(|(pos, _)| space.weight.dirichlet_exponent(*pos).unwrap())
                        .sum();
                    let regime = match q {
                        Some(q) => total <= 1.0 / q + 1e-12,
                        None => total <= 1e-12,
                    };
                    Some((Geometry::Polydisc, regime))
                }
                (WeightFamily::DruryArveson { t, s }, Exponent::Finite(pv)) => {
                    let q = space.dual_exponent().as_finite();
                    let regime = match q {
                        Some(q) => (*t - 1.0 / q).abs() <= 1e-12 && *s <= 1.0 / q + 1e-12,
                        None => *t <= 1e-12 && *s <= 1e-12,
                    };
                    Some((Geometry::Ball(pv), regime))
                }
                _ => None,
            };
            if let Some((geometry, regime)) = plan {
                let rep = affine_nonvanishing(f, geometry)?;
                if !rep.holds {
                    let point = affine_zero_inside(a, &linear, geometry);
                    let value = evaluate(f, &point).norm();
                    let domain = domain_contains(space, &point)?;
                    return Ok(Verdict {
                        status: VerdictStatus::CertifiedNonCyclic,
                        rule: "affine-zero-inside",
                        weak: false,
                        modulo_sampling: false,
                        margin: Some(rep.margin),
                        witness: Some(Witness { point, value, domain }),
                        distance_curve: Vec::new(),
                        notes,
                    });
                }
                if regime {
                    let curve = curve_for(&mut notes);
                    return Ok(Verdict {
                        status: VerdictStatus::CertifiedCyclic,
                        rule: "affine-factorable",
                        weak: weak_exponent(space),
                        modulo_sampling: false,
                        margin: Some(rep.margin),
                        witness: None,
                        distance_curve: curve,
                        notes,
                    });
                }
                notes.push("affine nonvanishing holds but the weight regime is too heavy".into());
            }
        }
    }

    // (5) convolution-algebra regime: decide by sampling the closed domain
    if algebra_regime(space, f) {
        match search_for_zero(f, space, budget.samples, budget.seed, 0.0, true)? {
            Some(w) => {
                return Ok(Verdict {
                    status: VerdictStatus::CertifiedNonCyclic,
                    rule: "algebra-zero-on-spectrum",
                    weak: false,
                    modulo_sampling: true,
                    margin: None,
                    witness: Some(w),
                    distance_curve: Vec::new(),
                    notes,
                });
            }
            None => {
                let curve = curve_for(&mut notes);
                return Ok(Verdict {
                    status: VerdictStatus::CertifiedCyclic,
                    rule: "algebra-invertible",
                    weak: false,
                    modulo_sampling: true,
                    margin: None,
                    witness: None,
                    distance_curve: curve,
                    notes,
                });
            }
        }
    }

    let curve = curve_for(&mut notes);
    Ok(Verdict {
        status: VerdictStatus::Inconclusive,
        rule: "inconclusive",
        weak: false,
        modulo_sampling: false,
        margin: None,
        witness: None,
        distance_curve: curve,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolve::{self, Truncation};
    use crate::series::semicharacter;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    fn one_minus_z1() -> SparseSeries {
        SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (MultiIndex::unit(1, 1), c(-1.0)),
        ])
    }

    fn ones(n_max: u64) -> SparseSeries {
        SparseSeries::from_n_terms((1..=n_max).map(|n| (n, c(1.0))))
    }

    #[test]
    fn sieve_fixed_point_on_unit() {
        let trace = sieve_run(&SparseSeries::unit(), 100, 5).unwrap();
        for step in &trace.steps {
            assert_eq!(step.series, SparseSeries::unit());
            assert_eq!(step.sup_norm, 1.0);
        }
        assert_eq!(trace.delta1_deviation, 0.0);
    }

    #[test]
    fn sieve_on_all_ones_matches_coprimality() {
        let trace = sieve_run(&ones(30), 30, 3).unwrap();
        let last = trace.steps.last().unwrap();
        let survivors: Vec<u64> = (1..=30u64)
            .filter(|&n| last.series.coeff(&index::lift_u64(n)) != ZERO)
            .collect();
        assert_eq!(survivors, vec![1, 7, 11, 13, 17, 19, 23, 29]);
        assert_eq!(last.nonzero_below_prime, 0);
    }

    #[test]
    fn sieve_zeroes_exactly_for_semicharacters() {
        let om = Point::from_coords([
            (1, Complex64::new(0.6, 0.3)),
            (2, Complex64::new(-0.4, 0.2)),
            (3, Complex64::new(0.1, -0.8)),
        ]);
        let x = semicharacter(&om, 2000);
        let trace = sieve_run(&x, 2000, 6).unwrap();
        let mut prev_sup = f64::INFINITY;
        for (s, step) in trace.steps.iter().enumerate() {
            for (alpha, _) in step.series.terms() {
                if let Some(p) = alpha.min_position() {
                    assert!(p as usize > s + 1, "step {} kept position {}", s + 1, p);
                }
            }
            assert_eq!(step.series.coeff(&MultiIndex::zero()), ONE);
            assert!(step.sup_norm <= prev_sup + 1e-15);
            prev_sup = step.sup_norm;
        }
    }

    #[test]
    fn sieve_rejects_bad_leading_term() {
        let x = SparseSeries::from_n_terms([(1, c(2.0)), (2, c(1.0))]);
        assert!(matches!(
            sieve_run(&x, 10, 2),
            Err(Error::LeadingTermNotOne { .. })
        ));
    }

    #[test]
    fn fr_family_examples() {
        assert_eq!(
            fr_family(&SparseSeries::unit(), 0.3).unwrap(),
            SparseSeries::unit()
        );
        let f = one_minus_z1();
        let fr = fr_family(&f, 0.5).unwrap();
        assert_eq!(fr.coeff(&MultiIndex::unit(1, 1)), c(-0.5));
        assert_eq!(fr.constant_term(), ONE);

        // ‖f − f_r‖₁ = (1−r)·Σ_{α≠0}|f̂(α)|
        let f = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (MultiIndex::unit(1, 1), Complex64::new(0.3, 0.4)),
            (MultiIndex::unit(2, 2), c(-0.7)),
        ]);
        let r = 0.25;
        let l1 = LatticeSpace::unweighted(Exponent::finite(1.0));
        let lhs = l1.norm(&f.sub(&fr_family(&f, r).unwrap())).unwrap();
        assert!((lhs - (1.0 - r) * (0.5 + 0.7)).abs() < 1e-12);
    }

    #[test]
    fn growth_closed_forms() {
        let grid = [0.5, 0.9, 0.99];
        let f = one_minus_z1();

        let u2 = LatticeSpace::unweighted(Exponent::finite(2.0));
        let rep = growth_measure(&f, &u2, &grid, 50_000).unwrap();
        for s in &rep.samples {
            assert!(s.admitted);
            let exact = (1.0 - s.r * s.r).powf(-0.5);
            assert!((s.norm - exact).abs() < 1e-5 * exact, "r = {}", s.r);
        }

        let dir = LatticeSpace::dirichlet(Exponent::finite(2.0), vec![0.5], 0.5);
        let rep = growth_measure(&f, &dir, &grid, 50_000).unwrap();
        for s in &rep.samples {
            let exact = 1.0 / (1.0 - s.r * s.r);
            assert!((s.norm - exact).abs() < 1e-5 * exact);
        }

        let da = LatticeSpace::drury_arveson(Exponent::finite(2.0), 0.5, 0.0);
        let g = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (MultiIndex::unit(1, 1), c(-1.0 / 2f64.sqrt())),
            (MultiIndex::unit(2, 1), c(-1.0 / 2f64.sqrt())),
        ]);
        let rep = growth_measure(&g, &da, &grid, 50_000).unwrap();
        for s in &rep.samples {
            let exact = (1.0 - s.r * s.r).powf(-0.5);
            assert!((s.norm - exact).abs() < 1e-5 * exact);
        }
    }

    #[test]
    fn growth_matches_materialized_neumann() {
        let f = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (MultiIndex::unit(1, 1), c(-0.3)),
            (MultiIndex::unit(2, 1), Complex64::new(0.0, -0.2)),
        ]);
        let sp = LatticeSpace::dirichlet(Exponent::finite(2.0), vec![0.5, 0.25], 0.0);
        let r = 0.7;
        let rep = growth_measure(&f, &sp, &[r], 10_000).unwrap();
        let fr = fr_family(&f, r).unwrap();
        let inv = convolve::neumann_inverse(&fr, 120, &Truncation::degree(120)).unwrap();
        let direct = sp.norm(&inv).unwrap();
        assert!((rep.samples[0].norm - direct).abs() < 1e-8 * direct);
    }

    #[test]
    fn distance_examples() {
        let u2 = LatticeSpace::unweighted(Exponent::finite(2.0));
        let d = cyclicity_distance(&SparseSeries::unit(), &u2, 0, None).unwrap();
        assert!(d.distance < 1e-14);

        for m in 0..=12u32 {
            let d = cyclicity_distance(&one_minus_z1(), &u2, m, None).unwrap();
            let exact = 1.0 / (m as f64 + 2.0);
            assert!((d.distance * d.distance - exact).abs() < 1e-10);
        }

        let z1 = SparseSeries::monomial(MultiIndex::unit(1, 1), c(1.0));
        for m in [0u32, 3, 7] {
            let d = cyclicity_distance(&z1, &u2, m, None).unwrap();
            assert!((d.distance - 1.0).abs() < 1e-12);
        }

        let l1 = LatticeSpace::unweighted(Exponent::finite(1.0));
        assert!(matches!(
            cyclicity_distance(&z1, &l1, 2, None),
            Err(Error::RequiresHilbert { .. })
        ));
    }

    #[test]
    fn distance_monotone_and_scale_invariant() {
        let u2 = LatticeSpace::unweighted(Exponent::finite(2.0));
        let f = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (MultiIndex::unit(1, 1), c(-0.8)),
            (MultiIndex::unit(2, 1), c(0.3)),
        ]);
        let mut prev = f64::INFINITY;
        for m in 0..=5u32 {
            let d = cyclicity_distance(&f, &u2, m, None).unwrap().distance;
            assert!(d <= prev + 1e-12);
            prev = d;
        }
        // scaling f is absorbed by the optimizer
        let scaled = f.scale(Complex64::new(-3.0, 1.5));
        let d1 = cyclicity_distance(&f, &u2, 4, None).unwrap().distance;
        let d2 = cyclicity_distance(&scaled, &u2, 4, None).unwrap().distance;
        assert!((d1 - d2).abs() < 1e-10);
        // widening the position set can only help
        let df = cyclicity_distance(&f, &u2, 4, Some(&[1, 2, 3])).unwrap().distance;
        assert!(df <= d1 + 1e-12);
    }

    #[test]
    fn free_term_examples() {
        let f = SparseSeries::from_terms([
            (MultiIndex::zero(), c(2.0)),
            (MultiIndex::unit(1, 1), c(-1.0)),
            (MultiIndex::unit(2, 1), c(-1.0)),
        ]);
        assert_eq!(free_term_dominates(&f).verdict, Domination::Equality);

        let g = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (MultiIndex::unit(1, 1), c(-0.3)),
            (MultiIndex::unit(2, 1), c(-0.3)),
        ]);
        let rep = free_term_dominates(&g);
        assert_eq!(rep.verdict, Domination::Strict);
        assert!((rep.margin - 0.4).abs() < 1e-12);

        let h = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (MultiIndex::unit(1, 1), c(-2.0)),
        ]);
        assert_eq!(free_term_dominates(&h).verdict, Domination::Fails);
    }

    #[test]
    fn affine_examples() {
        let f = one_minus_z1();
        assert!(affine_nonvanishing(&f, Geometry::Polydisc).unwrap().holds);

        let g = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (MultiIndex::unit(1, 1), c(-1.0 / 2f64.sqrt())),
            (MultiIndex::unit(2, 1), c(-1.0 / 2f64.sqrt())),
        ]);
        assert!(affine_nonvanishing(&g, Geometry::Ball(2.0)).unwrap().holds);

        let h = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (MultiIndex::unit(1, 1), c(-1.0)),
            (MultiIndex::unit(2, 1), c(-1.0)),
        ]);
        assert!(!affine_nonvanishing(&h, Geometry::Ball(2.0)).unwrap().holds);

        let quad = SparseSeries::monomial(MultiIndex::unit(1, 2), c(1.0));
        assert!(matches!(
            affine_nonvanishing(&quad, Geometry::Polydisc),
            Err(Error::NotAffine { .. })
        ));
    }

    #[test]
    fn beurling_finds_product_zero() {
        let f = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (
                MultiIndex::from_pairs(&[(1, 1), (2, 1)]).unwrap(),
                c(-4.0),
            ),
        ]);
        let u2 = LatticeSpace::unweighted(Exponent::finite(2.0));
        let w = beurling_search(&f, &u2, 512, 7).unwrap().expect("witness");
        assert_eq!(w.domain.status, DomainStatus::Inside);
        assert!(w.value < 1e-9 * u2.norm(&f).unwrap());
        assert!(evaluate(&f, &w.point).norm() < 1e-8);
    }

    #[test]
    fn beurling_finds_nothing_for_dominated_series() {
        let f = SparseSeries::from_terms([
            (MultiIndex::zero(), c(2.0)),
            (MultiIndex::unit(1, 1), c(-1.0)),
        ]);
        let u2 = LatticeSpace::unweighted(Exponent::finite(2.0));
        assert!(beurling_search(&f, &u2, 256, 11).unwrap().is_none());
    }

    #[test]
    fn beurling_ball_blocks_deep_product_zero() {
        // the ball constrains |ζ₁…ζ₄| ≤ 4^{-2}, so 1 − 4ζ₁ζ₂ζ₃ζ₄ has no
        // zero inside
        let f = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (
                MultiIndex::from_pairs(&[(1, 1), (2, 1), (3, 1), (4, 1)]).unwrap(),
                c(-4.0),
            ),
        ]);
        let da = LatticeSpace::drury_arveson(Exponent::finite(2.0), 0.5, 0.0);
        assert!(beurling_search(&f, &da, 512, 3).unwrap().is_none());
    }

    #[test]
    fn strict_domination_never_yields_witness() {
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let u2 = LatticeSpace::unweighted(Exponent::finite(2.0));
        for _ in 0..5 {
            let mut f = SparseSeries::unit();
            let mut mass = 0.0;
            for pos in 1..=3u32 {
                let re = rng.gen_range(-0.2..0.2);
                let im = rng.gen_range(-0.2..0.2);
                mass += Complex64::new(re, im).norm();
                f.add_to(MultiIndex::unit(pos, 1), Complex64::new(re, im));
            }
            assert!(mass < 1.0);
            assert_eq!(free_term_dominates(&f).verdict, Domination::Strict);
            assert!(beurling_search(&f, &u2, 128, 5).unwrap().is_none());
        }
    }

    #[test]
    fn verdict_one_minus_z1_is_cyclic() {
        let u2 = LatticeSpace::unweighted(Exponent::finite(2.0));
        let v = verdict(&one_minus_z1(), &u2, &VerdictBudget::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedCyclic);
        assert!(!v.weak);
        // the attached curve is the closed-form 1/(M+2) family
        for &(m, d) in &v.distance_curve {
            assert!((d * d - 1.0 / (m as f64 + 2.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn verdict_finds_zero_of_expanding_factor() {
        let f = SparseSeries::from_terms([
            (MultiIndex::zero(), c(1.0)),
            (MultiIndex::unit(1, 1), c(-2.0)),
        ]);
        let u2 = LatticeSpace::unweighted(Exponent::finite(2.0));
        let v = verdict(&f, &u2, &VerdictBudget::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedNonCyclic);
        let w = v.witness.expect("witness");
        assert_eq!(w.domain.status, DomainStatus::Inside);
        assert!((w.point.coord(1) - c(0.5)).norm() < 1e-6);
    }

    #[test]
    fn verdict_algebra_regime_certifies_invertible() {
        let d = LatticeSpace::dirichlet(Exponent::finite(2.0), vec![], 1.0);
        let f = SparseSeries::from_terms([
            (MultiIndex::zero(), c(3.0)),
            (MultiIndex::unit(1, 2), c(-1.0)),
            (MultiIndex::unit(2, 1), c(-1.0)),
        ]);
        // free term dominates strictly, so the cascade certifies earlier;
        // force the algebra path with a non-dominated nonvanishing sample
        let g = SparseSeries::from_terms([
            (MultiIndex::zero(), c(3.0)),
            (MultiIndex::unit(1, 1), c(-2.0)),
            (MultiIndex::unit(1, 2), c(-1.2)),
            (MultiIndex::unit(2, 1), c(-0.5)),
        ]);
        let v = verdict(&f, &d, &VerdictBudget::default()).unwrap();
        assert_eq!(v.status, VerdictStatus::CertifiedCyclic);
        let v = verdict(&g, &d, &VerdictBudget { samples: 512, seed: 1, distance_degree: 3 })
            .unwrap();
        // |g| >= 3 - 2 - 1.2 - 0.5 > 0 fails, so the verdict relies on
        // sampling; it must come back either algebra-certified or with a
        // genuine witness on the closed bidisc
        match v.status {
            VerdictStatus::CertifiedCyclic => {
                assert_eq!(v.rule, "algebra-invertible");
                assert!(v.modulo_sampling);
            }
            VerdictStatus::CertifiedNonCyclic => {
                let w = v.witness.expect("witness");
                assert!(w.value < 1e-9 * d.norm(&g).unwrap());
            }
            VerdictStatus::Inconclusive => panic!("algebra regime must decide"),
        }
    }
}
