//! Bohr-side semantics of sparse series: point evaluation, membership in
//! the natural domain of the lifted series, semicharacter generation,
//! Euler products, multiplicativity analysis and factorization.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::index::{self, MultiIndex};
use crate::lattice::{Exponent, LatticeSpace, SparseSeries, WeightFamily};
use crate::{Error, Result};

const REL_TOL: f64 = 1e-9;
const ABS_TOL: f64 = 1e-12;

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= ABS_TOL.max(REL_TOL * a.norm().max(b.norm()))
}

/// Finitely supported point λ ∈ ℂ^∞; missing coordinates are zero.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct Point {
    coords: BTreeMap<u32, Complex64>,
}

impl Point {
    pub fn origin() -> Self {
        Point::default()
    }

    pub fn from_coords<I: IntoIterator<Item = (u32, Complex64)>>(coords: I) -> Self {
        let mut p = Point::origin();
        for (pos, z) in coords {
            p.set(pos, z);
        }
        p
    }

    pub fn from_reals<I: IntoIterator<Item = (u32, f64)>>(coords: I) -> Self {
        Point::from_coords(
            coords
                .into_iter()
                .map(|(pos, re)| (pos, Complex64::new(re, 0.0))),
        )
    }

    pub fn set(&mut self, position: u32, z: Complex64) {
        assert!(position >= 1, "positions are 1-based");
        if z == Complex64::new(0.0, 0.0) {
            self.coords.remove(&position);
        } else {
            self.coords.insert(position, z);
        }
    }

    pub fn coord(&self, position: u32) -> Complex64 {
        self.coords
            .get(&position)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn coords(&self) -> impl Iterator<Item = (u32, Complex64)> + '_ {
        self.coords.iter().map(|(&p, &z)| (p, z))
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.coords.keys().copied()
    }

    pub fn is_origin(&self) -> bool {
        self.coords.is_empty()
    }

    /// λ^α = ∏ λ_j^{α_j} with the convention 0^0 = 1.
    pub fn monomial(&self, alpha: &MultiIndex) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &(pos, e) in alpha.entries() {
            let z = self.coord(pos);
            if z == Complex64::new(0.0, 0.0) {
                return Complex64::new(0.0, 0.0);
            }
            acc *= z.powu(e);
        }
        acc
    }
}

/// Evaluation of the lifted series: Σ x_α λ^α (a finite sum).
pub fn evaluate(x: &SparseSeries, lambda: &Point) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (alpha, c) in x.terms() {
        acc += c * lambda.monomial(alpha);
    }
    acc
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DomainStatus {
    Inside,
    Boundary,
    Outside,
}

impl std::fmt::Display for DomainStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            DomainStatus::Inside => write!(f, "Inside"),
            DomainStatus::Boundary => write!(f, "Boundary"),
            DomainStatus::Outside => write!(f, "Outside"),
        }
    }
}

/// Membership verdict together with the criterion that decided it.
#[derive(Clone, Debug, PartialEq)]
pub struct DomainVerdict {
    pub status: DomainStatus,
    pub rule: &'static str,
}

const TIE_TOL: f64 = 1e-12;

fn side(value: f64, threshold: f64, closed: bool) -> DomainStatus {
    if (value - threshold).abs() <= TIE_TOL * threshold.max(1.0) {
        if closed {
            DomainStatus::Inside
        } else {
            DomainStatus::Boundary
        }
    } else if value < threshold {
        DomainStatus::Inside
    } else {
        DomainStatus::Outside
    }
}

fn merge(acc: DomainStatus, next: DomainStatus) -> DomainStatus {
    use DomainStatus::*;
    match (acc, next) {
        (Outside, _) | (_, Outside) => Outside,
        (Boundary, _) | (_, Boundary) => Boundary,
        _ => Inside,
    }
}

/// Decides whether a finitely supported point lies in the domain where
/// every lifted series of the space converges absolutely.
///
/// Unweighted spaces give multidiscs (open coordinate discs for p > 1,
/// closed for p = 1, the ℓ^{p′} summability being automatic on finite
/// support). Dirichlet product weights open or close each coordinate disc
/// according to the exponent; the row-weight family gives the open or
/// closed unit ℓ^{p′} ball.
pub fn domain_contains(space: &LatticeSpace, lambda: &Point) -> Result<DomainVerdict> {
    let pprime = space.dual_exponent();
    match &space.weight {
        WeightFamily::Unweighted => {
            let closed = matches!(space.p, Exponent::Finite(p) if p == 1.0);
            let mut status = DomainStatus::Inside;
            for (_, z) in lambda.coords() {
                status = merge(status, side(z.norm(), 1.0, closed));
            }
            Ok(DomainVerdict {
                status,
                rule: if closed {
                    "multidisc-closed"
                } else {
                    "multidisc-open"
                },
            })
        }
        WeightFamily::DirichletProduct { .. } => {
            let mut status = DomainStatus::Inside;
            for (pos, z) in lambda.coords() {
                let s = space.weight.dirichlet_exponent(pos).unwrap();
                let closed = match space.p {
                    Exponent::Finite(p) if p == 1.0 => s >= 0.0,
                    _ => match pprime {
                        Exponent::Finite(q) => s * q > 1.0,
                        Exponent::Infinity => unreachable!("dual of p > 1 is finite"),
                    },
                };
                status = merge(status, side(z.norm(), 1.0, closed));
            }
            Ok(DomainVerdict {
                status,
                rule: "dirichlet-coordinatewise",
            })
        }
        WeightFamily::DruryArveson { s, .. } => match pprime {
            Exponent::Finite(q) => {
                let total: f64 = lambda.coords().map(|(_, z)| z.norm().powf(q)).sum();
                let closed = s * q > 1.0;
                Ok(DomainVerdict {
                    status: side(total, 1.0, closed),
                    rule: if closed { "ball-closed" } else { "ball-open" },
                })
            }
            Exponent::Infinity => {
                // p = 1: sup-type condition, closed polydisc for s >= 0
                let sup = lambda.coords().map(|(_, z)| z.norm()).fold(0.0, f64::max);
                let closed = *s >= 0.0;
                Ok(DomainVerdict {
                    status: side(sup, 1.0, closed),
                    rule: "sup-ball",
                })
            }
        },
        WeightFamily::Table(_) => Err(Error::UnsupportedWeight {
            op: "domain_contains",
        }),
    }
}

/// The totally multiplicative sequence x_n = ω^{α(n)} for n ≤ n_max.
///
/// Coordinates of ω outside its stored support are zero, so any n with a
/// prime factor off the support gets x_n = 0; ω = 0 yields δ₁. Values
/// are built by the smallest-prime-factor recursion x_n = ω_j · x_{n/p_j},
/// which makes x_{p k} = x_p · x_k hold bit-exactly whenever p is the
/// smallest prime factor of p·k.
pub fn semicharacter(omega: &Point, n_max: u64) -> SparseSeries {
    let nm = n_max as usize;
    let mut vals = vec![Complex64::new(0.0, 0.0); nm + 1];
    if nm >= 1 {
        vals[1] = Complex64::new(1.0, 0.0);
    }
    if nm >= 2 {
        let spf = index::smallest_prime_factor_table(nm);
        let plist = index::primes_up_to(n_max);
        let rank: BTreeMap<u64, u32> = plist
            .iter()
            .enumerate()
            .map(|(i, &p)| (p, i as u32 + 1))
            .collect();
        for n in 2..=nm {
            let p = spf[n] as usize;
            let w = omega.coord(rank[&(p as u64)]);
            if w != Complex64::new(0.0, 0.0) {
                let prev = vals[n / p];
                if prev != Complex64::new(0.0, 0.0) {
                    vals[n] = w * prev;
                }
            }
        }
    }
    SparseSeries::from_n_terms(
        vals.iter()
            .enumerate()
            .skip(1)
            .filter(|(_, z)| **z != Complex64::new(0.0, 0.0))
            .map(|(n, z)| (n as u64, *z)),
    )
}

/// Finite Euler product ∏ 1/(1 − ζ_j ω_j) over the common support.
pub fn euler_eval(omega: &Point, zeta: &Point) -> Result<Complex64> {
    let mut acc = Complex64::new(1.0, 0.0);
    for (pos, w) in omega.coords() {
        let z = zeta.coord(pos);
        let zw = z * w;
        if zw.norm() >= 1.0 {
            return Err(Error::EulerPole {
                position: pos,
                modulus: zw.norm(),
            });
        }
        acc *= (Complex64::new(1.0, 0.0) - zw).inv();
    }
    Ok(acc)
}

#[derive(Clone, Debug, PartialEq)]
pub enum Multiplicativity {
    /// x_{nk} = x_n x_k for all pairs.
    Total,
    /// Multiplicative on coprime pairs only; carries the first pair
    /// violating total multiplicativity.
    Relative { violation: (u64, u64) },
    Neither(NeitherReason),
}

#[derive(Clone, Debug, PartialEq)]
pub enum NeitherReason {
    LeadingTermNotOne,
    /// First coprime pair with x_{nk} != x_n x_k.
    Violation { pair: (u64, u64) },
}

/// Checks every pair n ≤ k with nk ≤ n_max (tolerance-based equality,
/// relative 1e-9 with absolute floor 1e-12).
pub fn classify_multiplicative(x: &SparseSeries, n_max: u64) -> Multiplicativity {
    let vals = dense_values(x, n_max);
    if !close(vals[1], Complex64::new(1.0, 0.0)) {
        return Multiplicativity::Neither(NeitherReason::LeadingTermNotOne);
    }
    let mut total_violation: Option<(u64, u64)> = None;
    let mut n = 2u64;
    while n * n <= n_max {
        let mut k = n;
        while n * k <= n_max {
            let lhs = vals[(n * k) as usize];
            let rhs = vals[n as usize] * vals[k as usize];
            if !close(lhs, rhs) {
                if num_integer::gcd(n, k) == 1 {
                    return Multiplicativity::Neither(NeitherReason::Violation { pair: (n, k) });
                }
                if total_violation.is_none() {
                    total_violation = Some((n, k));
                }
            }
            k += 1;
        }
        n += 1;
    }
    match total_violation {
        None => Multiplicativity::Total,
        Some(pair) => Multiplicativity::Relative { violation: pair },
    }
}

fn dense_values(x: &SparseSeries, n_max: u64) -> Vec<Complex64> {
    let mut vals = vec![Complex64::new(0.0, 0.0); n_max as usize + 1];
    for (alpha, c) in x.terms() {
        if let Some(n) = index::value_within(alpha, n_max) {
            vals[n as usize] = *c;
        }
    }
    vals
}

/// One-variable factors f_j = B(R_{{j}} x) and the tail carrying the
/// positions beyond the requested window.
#[derive(Clone, Debug)]
pub struct Factorization {
    pub factors: Vec<(u32, SparseSeries)>,
    pub tail: SparseSeries,
}

/// Factors a multiplicative sequence as f_1(ζ_1)…f_N(ζ_N)·F_N.
///
/// The input must classify as Total or Relative on n ≤ n_max; the product
/// of the returned factors is verified to reproduce x on every index with
/// unlift(α) ≤ n_max.
pub fn factor_multiplicative(
    x: &SparseSeries,
    positions: &[u32],
    n_max: u64,
) -> Result<Factorization> {
    match classify_multiplicative(x, n_max) {
        Multiplicativity::Total | Multiplicativity::Relative { .. } => {}
        Multiplicativity::Neither(NeitherReason::LeadingTermNotOne) => {
            let c = x.constant_term();
            return Err(Error::LeadingTermNotOne { re: c.re, im: c.im });
        }
        Multiplicativity::Neither(NeitherReason::Violation { pair }) => {
            return Err(Error::NotMultiplicative {
                n: pair.0,
                k: pair.1,
            });
        }
    }

    let max_pos = positions.iter().copied().max().unwrap_or(0);
    let factors: Vec<(u32, SparseSeries)> = positions
        .iter()
        .map(|&j| (j, x.restrict(&[j].into_iter().collect())))
        .collect();
    let tail = x.restrict_above(max_pos);

    // Verify: each x_α with unlift(α) <= n_max splits uniquely across the
    // one-variable factors and the tail.
    for (alpha, &c) in x.terms() {
        if index::value_within(alpha, n_max).is_none() {
            continue;
        }
        let mut prod = Complex64::new(1.0, 0.0);
        let mut ok = true;
        for &(pos, e) in alpha.entries() {
            let part = if pos <= max_pos {
                if positions.contains(&pos) {
                    factors
                        .iter()
                        .find(|(j, _)| *j == pos)
                        .unwrap()
                        .1
                        .coeff(&MultiIndex::unit(pos, e))
                } else {
                    // position inside the window but not requested: the
                    // factorization cannot represent it
                    ok = false;
                    break;
                }
            } else {
                Complex64::new(1.0, 0.0)
            };
            prod *= part;
        }
        if ok {
            let tail_part = alpha_tail(alpha, max_pos);
            prod *= tail.coeff(&tail_part);
        }
        if !ok || !close(prod, c) {
            return Err(Error::FactorizationMismatch {
                index: alpha.to_string(),
            });
        }
    }
    Ok(Factorization { factors, tail })
}

fn alpha_tail(alpha: &MultiIndex, max_pos: u32) -> MultiIndex {
    let pairs: Vec<(u32, u32)> = alpha
        .entries()
        .iter()
        .copied()
        .filter(|&(p, _)| p > max_pos)
        .collect();
    MultiIndex::from_pairs(&pairs).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::convolve;
    use proptest::prelude::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn evaluate_examples() {
        assert_eq!(evaluate(&SparseSeries::unit(), &Point::origin()), c(1.0));
        let x = SparseSeries::from_terms([
            (MultiIndex::unit(1, 1), c(1.0)),
            (MultiIndex::unit(1, 2), c(1.0)),
        ]);
        let lam = Point::from_reals([(1, 0.5)]);
        assert!((evaluate(&x, &lam) - c(0.75)).norm() < 1e-15);
    }

    #[test]
    fn domain_examples() {
        let u2 = LatticeSpace::unweighted(Exponent::finite(2.0));
        let lam = Point::from_reals([(1, 0.9), (2, 0.9)]);
        assert_eq!(domain_contains(&u2, &lam).unwrap().status, DomainStatus::Inside);

        let da = LatticeSpace::drury_arveson(Exponent::finite(2.0), 0.5, 0.0);
        let out = Point::from_reals([(1, 0.8), (2, 0.7)]);
        assert_eq!(domain_contains(&da, &out).unwrap().status, DomainStatus::Outside);
        let inp = Point::from_reals([(1, 0.6), (2, 0.6)]);
        assert_eq!(domain_contains(&da, &inp).unwrap().status, DomainStatus::Inside);
    }

    #[test]
    fn domain_boundary_and_closed_cases() {
        let u2 = LatticeSpace::unweighted(Exponent::finite(2.0));
        let edge = Point::from_reals([(1, 1.0)]);
        assert_eq!(domain_contains(&u2, &edge).unwrap().status, DomainStatus::Boundary);

        let l1 = LatticeSpace::unweighted(Exponent::finite(1.0));
        assert_eq!(domain_contains(&l1, &edge).unwrap().status, DomainStatus::Inside);

        // Dirichlet: s p' > 1 closes the coordinate disc
        let d = LatticeSpace::dirichlet(Exponent::finite(2.0), vec![1.0, 0.25], 0.25);
        let e1 = Point::from_reals([(1, 1.0)]);
        assert_eq!(domain_contains(&d, &e1).unwrap().status, DomainStatus::Inside);
        let e2 = Point::from_reals([(2, 1.0)]);
        assert_eq!(domain_contains(&d, &e2).unwrap().status, DomainStatus::Boundary);

        let da = LatticeSpace::drury_arveson(Exponent::finite(2.0), 0.5, 0.0);
        let ball_edge = Point::from_reals([(1, 0.6), (2, 0.8)]);
        assert_eq!(
            domain_contains(&da, &ball_edge).unwrap().status,
            DomainStatus::Boundary
        );
    }

    #[test]
    fn semicharacter_examples() {
        assert_eq!(semicharacter(&Point::origin(), 10), SparseSeries::unit());

        // omega = (1/2, 1, 1, 1): powers of two scale, other primes pass through
        let om = Point::from_reals([(1, 0.5), (2, 1.0), (3, 1.0), (4, 1.0)]);
        let x = semicharacter(&om, 8);
        let vals = dense_values(&x, 8);
        let expect = [0.0, 1.0, 0.5, 1.0, 0.25, 1.0, 0.5, 1.0, 0.125];
        for n in 1..=8 {
            assert!((vals[n] - c(expect[n])).norm() < 1e-15, "n = {n}");
        }

        // omega_j = 1/p_j on the first three primes: x_n = 1/n on 5-smooth n
        let om = Point::from_reals([(1, 0.5), (2, 1.0 / 3.0), (3, 0.2)]);
        let x = semicharacter(&om, 10);
        let vals = dense_values(&x, 10);
        for n in [1u64, 2, 3, 4, 5, 6, 8, 9, 10] {
            assert!((vals[n as usize] - c(1.0 / n as f64)).norm() < 1e-15);
        }
        assert_eq!(vals[7], c(0.0));
    }

    #[test]
    fn euler_eval_examples() {
        assert_eq!(
            euler_eval(&Point::origin(), &Point::from_reals([(1, 0.3)])).unwrap(),
            c(1.0)
        );
        let om = Point::from_reals([(1, 0.5)]);
        let ze = Point::from_reals([(1, 0.5)]);
        assert!((euler_eval(&om, &ze).unwrap() - c(4.0 / 3.0)).norm() < 1e-15);

        let pole = Point::from_reals([(1, 2.0)]);
        assert!(matches!(
            euler_eval(&om, &pole),
            Err(Error::EulerPole { position: 1, .. })
        ));
    }

    #[test]
    fn semicharacter_sum_approaches_euler_product() {
        let om = Point::from_reals([(1, 0.5)]);
        let ze = Point::from_reals([(1, 0.5)]);
        let x = semicharacter(&om, 1 << 20);
        let partial = evaluate(&x, &ze);
        let full = euler_eval(&om, &ze).unwrap();
        assert!((partial - full).norm() < 1e-6);
    }

    #[test]
    fn classify_examples() {
        let x = SparseSeries::from_n_terms((1..=20).map(|n| (n, c(1.0 / n as f64))));
        assert_eq!(classify_multiplicative(&x, 20), Multiplicativity::Total);

        let mu = index::mobius_table(30);
        let bmu =
            SparseSeries::from_n_terms((1..=30u64).map(|n| (n, c(mu[n as usize] as f64))));
        assert_eq!(
            classify_multiplicative(&bmu, 30),
            Multiplicativity::Relative { violation: (2, 2) }
        );

        let bad = SparseSeries::from_n_terms([
            (1, c(1.0)),
            (2, c(2.0)),
            (3, c(3.0)),
            (4, c(4.0)),
            (6, c(5.0)),
        ]);
        assert_eq!(
            classify_multiplicative(&bad, 6),
            Multiplicativity::Neither(NeitherReason::Violation { pair: (2, 3) })
        );

        let nonunit = SparseSeries::from_n_terms([(1, c(2.0))]);
        assert_eq!(
            classify_multiplicative(&nonunit, 4),
            Multiplicativity::Neither(NeitherReason::LeadingTermNotOne)
        );
    }

    #[test]
    fn factor_examples() {
        let f = factor_multiplicative(&SparseSeries::unit(), &[1, 2], 10).unwrap();
        for (_, fj) in &f.factors {
            assert_eq!(*fj, SparseSeries::unit());
        }

        let mu = index::mobius_table(30);
        let bmu =
            SparseSeries::from_n_terms((1..=30u64).map(|n| (n, c(mu[n as usize] as f64))));
        let f = factor_multiplicative(&bmu, &[1, 2, 3], 30).unwrap();
        for (j, fj) in &f.factors {
            let expect = SparseSeries::from_terms([
                (MultiIndex::zero(), c(1.0)),
                (MultiIndex::unit(*j, 1), c(-1.0)),
            ]);
            assert_eq!(fj, &expect);
        }

        // semicharacter factors into geometric series
        let om = Point::from_reals([(1, 0.5), (2, 0.25)]);
        let x = semicharacter(&om, 64);
        let f = factor_multiplicative(&x, &[1, 2], 64).unwrap();
        let g1 = &f.factors[0].1;
        for e in 0..=6u32 {
            assert!((g1.coeff(&MultiIndex::unit(1, e)) - c(0.5f64.powi(e as i32))).norm() < 1e-12);
        }

        let bad = SparseSeries::from_n_terms([
            (1, c(1.0)),
            (2, c(2.0)),
            (3, c(3.0)),
            (4, c(4.0)),
            (6, c(5.0)),
        ]);
        assert!(matches!(
            factor_multiplicative(&bad, &[1, 2], 6),
            Err(Error::NotMultiplicative { n: 2, k: 3 })
        ));
    }

    #[test]
    fn factorization_reproduces_series_by_convolution() {
        let mu = index::mobius_table(30);
        let bmu =
            SparseSeries::from_n_terms((1..=30u64).map(|n| (n, c(mu[n as usize] as f64))));
        let f = factor_multiplicative(&bmu, &[1, 2, 3], 30).unwrap();
        let mut prod = SparseSeries::unit();
        for (_, fj) in &f.factors {
            prod = convolve::multiply(&prod, fj);
        }
        prod = convolve::multiply(&prod, &f.tail);
        for (alpha, &coeff) in bmu.terms() {
            if index::value_within(alpha, 30).is_some() {
                assert!((prod.coeff(alpha) - coeff).norm() < 1e-12);
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn evaluate_intertwines_dilation(
            terms in proptest::collection::vec((1u64..40, -2.0f64..2.0), 1..6),
            n in 1u64..50,
            re in -0.9f64..0.9,
            im in -0.5f64..0.5,
        ) {
            let x = SparseSeries::from_n_terms(terms.iter().map(|&(n, v)| (n, c(v))));
            let positions: Vec<u32> = x.dilate(n).support_positions().into_iter().collect();
            let lam = Point::from_coords(
                positions.iter().enumerate().map(|(i, &p)| {
                    (p, Complex64::new(re, im).powu(i as u32 % 3 + 1))
                }),
            );
            let lhs = evaluate(&x.dilate(n), &lam);
            let rhs = lam.monomial(&index::lift_u64(n)) * evaluate(&x, &lam);
            prop_assert!((lhs - rhs).norm() <= 1e-12 * (1.0 + lhs.norm().max(rhs.norm())));
        }

        #[test]
        fn semicharacters_are_totally_multiplicative(
            mods in proptest::collection::vec(0.0f64..0.95, 1..4),
            n_max in 20u64..200,
        ) {
            let om = Point::from_coords(
                mods.iter().enumerate().map(|(i, &m)| {
                    (i as u32 + 1, Complex64::from_polar(m, 0.7 * (i as f64 + 1.0)))
                }),
            );
            let x = semicharacter(&om, n_max);
            prop_assert_eq!(classify_multiplicative(&x, n_max), Multiplicativity::Total);
        }

        #[test]
        fn domain_is_complete_reinhardt(
            m1 in 0.0f64..1.5,
            m2 in 0.0f64..1.5,
            shrink in 0.0f64..1.0,
        ) {
            for sp in [
                LatticeSpace::unweighted(Exponent::finite(2.0)),
                LatticeSpace::unweighted(Exponent::finite(1.0)),
                LatticeSpace::dirichlet(Exponent::finite(2.0), vec![1.0], 0.25),
                LatticeSpace::drury_arveson(Exponent::finite(2.0), 0.5, 0.0),
                LatticeSpace::drury_arveson(Exponent::finite(2.0), 0.5, 1.0),
            ] {
                let lam = Point::from_reals([(1, m1), (2, m2)]);
                let mu = Point::from_reals([(1, m1 * shrink), (2, m2 * shrink)]);
                if domain_contains(&sp, &lam).unwrap().status == DomainStatus::Inside {
                    prop_assert_eq!(
                        domain_contains(&sp, &mu).unwrap().status,
                        DomainStatus::Inside
                    );
                }
            }
        }
    }
}
