//! Shared numeric machinery: compensated summation, cached log-factorials,
//! composition enumeration, complex least squares and a root finder.

use std::sync::RwLock;

use num_complex::Complex64;

/// Neumaier-compensated accumulator for f64 sums with many near-equal terms.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Kahan {
    sum: f64,
    comp: f64,
}

impl Kahan {
    pub fn new() -> Self {
        Kahan::default()
    }

    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// Componentwise compensated accumulator for complex sums.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct KahanComplex {
    re: Kahan,
    im: Kahan,
}

impl KahanComplex {
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

struct LnFactTable {
    vals: Vec<f64>,
    acc: Kahan,
}

static LNFACT: RwLock<LnFactTable> = RwLock::new(LnFactTable {
    vals: Vec::new(),
    acc: Kahan { sum: 0.0, comp: 0.0 },
});

/// ln(n!) from a shared cumulative table (compensated build).
pub(crate) fn lnfact(n: usize) -> f64 {
    {
        let t = LNFACT.read().unwrap();
        if n < t.vals.len() {
            return t.vals[n];
        }
    }
    let mut t = LNFACT.write().unwrap();
    if t.vals.is_empty() {
        t.vals.push(0.0); // ln 0! = 0
    }
    while t.vals.len() <= n {
        let k = t.vals.len() as f64;
        t.acc.add(k.ln());
        let v = t.acc.value();
        t.vals.push(v);
    }
    t.vals[n]
}

/// Fills the shared table up to n and hands back a private copy for
/// lock-free hot loops.
pub(crate) fn lnfact_snapshot(n: usize) -> Vec<f64> {
    lnfact(n);
    let t = LNFACT.read().unwrap();
    t.vals[..=n].to_vec()
}

/// Streaming log-sum-exp: accumulates ln(Σ exp(l_i)) without overflow.
#[derive(Clone, Copy, Debug)]
pub(crate) struct LogSum {
    max: f64,
    scaled: f64,
}

impl LogSum {
    pub fn new() -> Self {
        LogSum {
            max: f64::NEG_INFINITY,
            scaled: 0.0,
        }
    }

    pub fn add(&mut self, l: f64) {
        if l == f64::NEG_INFINITY {
            return;
        }
        if l > self.max {
            self.scaled = self.scaled * (self.max - l).exp() + 1.0;
            self.max = l;
        } else if l - self.max > -45.0 {
            // terms below e^-45 of the running max cannot move an f64 sum
            self.scaled += (l - self.max).exp();
        }
    }

    pub fn ln_value(&self) -> f64 {
        if self.max == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.max + self.scaled.ln()
        }
    }
}

/// Visits every vector of `parts` non-negative exponents summing exactly to `total`.
pub(crate) fn compositions_exact(total: u32, parts: usize, f: &mut impl FnMut(&[u32])) {
    let mut buf = vec![0u32; parts];
    fn rec(idx: usize, rest: u32, buf: &mut [u32], f: &mut impl FnMut(&[u32])) {
        if idx + 1 == buf.len() {
            buf[idx] = rest;
            f(buf);
            return;
        }
        for e in 0..=rest {
            buf[idx] = e;
            rec(idx + 1, rest - e, buf, f);
        }
    }
    if parts == 0 {
        if total == 0 {
            f(&[]);
        }
        return;
    }
    rec(0, total, &mut buf, f);
}

/// Visits every vector of `parts` non-negative exponents with sum <= `cap`.
pub(crate) fn compositions_at_most(cap: u32, parts: usize, f: &mut impl FnMut(&[u32])) {
    for d in 0..=cap {
        compositions_exact(d, parts, f);
    }
}

pub(crate) struct LeastSquares {
    pub residual: f64,
    pub condition: f64,
    pub rank_deficient: bool,
    pub solution: Vec<Complex64>,
}

/// Complex linear least squares min ‖Ax − b‖₂ via Householder QR.
/// `cols` holds the columns of A (all of length m >= cols.len()).
pub(crate) fn least_squares_qr(mut cols: Vec<Vec<Complex64>>, mut rhs: Vec<Complex64>) -> LeastSquares {
    let n = cols.len();
    let m = rhs.len();
    debug_assert!(cols.iter().all(|c| c.len() == m));
    debug_assert!(m >= n);
    let mut diag = Vec::with_capacity(n);

    for k in 0..n {
        // Householder vector from the k-th column below the diagonal.
        let mut normx2 = 0.0;
        for i in k..m {
            normx2 += cols[k][i].norm_sqr();
        }
        let normx = normx2.sqrt();
        if normx == 0.0 {
            diag.push(0.0);
            continue;
        }
        let x0 = cols[k][k];
        let phase = if x0 == Complex64::new(0.0, 0.0) {
            Complex64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * normx;
        let mut v: Vec<Complex64> = (k..m).map(|i| cols[k][i]).collect();
        v[0] -= alpha;
        let vnorm2: f64 = v.iter().map(|z| z.norm_sqr()).sum();
        if vnorm2 > 0.0 {
            for col in cols.iter_mut().skip(k + 1) {
                let mut dot = Complex64::new(0.0, 0.0);
                for (i, vi) in v.iter().enumerate() {
                    dot += vi.conj() * col[k + i];
                }
                let scale = dot * (2.0 / vnorm2);
                for (i, vi) in v.iter().enumerate() {
                    col[k + i] -= vi * scale;
                }
            }
            let mut dot = Complex64::new(0.0, 0.0);
            for (i, vi) in v.iter().enumerate() {
                dot += vi.conj() * rhs[k + i];
            }
            let scale = dot * (2.0 / vnorm2);
            for (i, vi) in v.iter().enumerate() {
                rhs[k + i] -= vi * scale;
            }
        }
        cols[k][k] = alpha;
        for i in k + 1..m {
            cols[k][i] = Complex64::new(0.0, 0.0);
        }
        diag.push(alpha.norm());
    }

    let rmax = diag.iter().cloned().fold(0.0f64, f64::max);
    let rmin = diag.iter().cloned().fold(f64::INFINITY, f64::min);
    let rank_deficient = !(rmin > rmax * 1e-14) || diag.is_empty();
    let condition = if rmin > 0.0 { rmax / rmin } else { f64::INFINITY };

    // Back substitution on the triangular part (rank-deficient pivots get 0).
    let mut solution = vec![Complex64::new(0.0, 0.0); n];
    for k in (0..n).rev() {
        let mut acc = rhs[k];
        for j in k + 1..n {
            acc -= cols[j][k] * solution[j];
        }
        let piv = cols[k][k];
        solution[k] = if piv.norm() > 0.0 {
            acc / piv
        } else {
            Complex64::new(0.0, 0.0)
        };
    }

    let mut res2 = Kahan::new();
    for z in rhs.iter().skip(n) {
        res2.add(z.norm_sqr());
    }
    // Rank-deficient pivots leave their rhs component in the residual.
    for k in 0..n {
        if diag[k] == 0.0 {
            res2.add(rhs[k].norm_sqr());
        }
    }
    LeastSquares {
        residual: res2.value().max(0.0).sqrt(),
        condition,
        rank_deficient,
        solution,
    }
}

/// All complex roots of c_0 + c_1 z + … + c_d z^d (Durand–Kerner with
/// Newton polish). The leading coefficient must be nonzero.
pub(crate) fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let d = coeffs.len() - 1;
    if d == 0 {
        return Vec::new();
    }
    let lead = coeffs[d];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    let eval = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let deriv = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in monic.iter().enumerate().skip(1).rev() {
            acc = acc * z + c * (k as f64);
        }
        acc
    };

    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for k in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if j != k {
                    denom *= roots[k] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                continue;
            }
            let step = eval(roots[k]) / denom;
            roots[k] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    for r in roots.iter_mut() {
        for _ in 0..8 {
            let dp = deriv(*r);
            if dp.norm() == 0.0 {
                break;
            }
            let step = eval(*r) / dp;
            *r -= step;
            if step.norm() < 1e-16 * (1.0 + r.norm()) {
                break;
            }
        }
    }
    roots.sort_by(|a, b| {
        a.norm()
            .partial_cmp(&b.norm())
            .unwrap()
            .then(a.re.partial_cmp(&b.re).unwrap())
            .then(a.im.partial_cmp(&b.im).unwrap())
    });
    roots
}

/// i-th element of the van der Corput sequence in the given base (i >= 0).
pub(crate) fn halton(mut i: u64, base: u64) -> f64 {
    let mut f = 1.0;
    let mut r = 0.0;
    while i > 0 {
        f /= base as f64;
        r += f * (i % base) as f64;
        i /= base;
    }
    r
}
