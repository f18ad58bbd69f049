//! Lowest eigenpairs of complex Hermitian band matrices.
//!
//! Eigenvalues come from bisection on the inertia of H − σI, read off a banded
//! LDLᴴ factorization in O(n·b²) per shift. Eigenvectors come from inverse
//! iteration on the band. A Givens bulge-chasing reduction to real tridiagonal
//! form is also provided as an independent cross-check.

#![allow(clippy::needless_range_loop)]

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Hermitian matrix with `bandwidth` super-diagonals.
///
/// `upper[d - 1][i]` holds H[i][i + d]; the lower triangle is implied.
#[derive(Debug, Clone, PartialEq)]
pub struct HermitianBand {
    diag: Vec<f64>,
    upper: Vec<Vec<Complex64>>,
}

impl HermitianBand {
    pub fn new(diag: Vec<f64>, upper: Vec<Vec<Complex64>>) -> Result<Self> {
        let n = diag.len();
        if n == 0 {
            return Err(Error::InvalidGrid("empty matrix".into()));
        }
        for (d, band) in upper.iter().enumerate() {
            if band.len() != n.saturating_sub(d + 1) {
                return Err(Error::InvalidGrid(format!(
                    "super-diagonal {} has length {}, expected {}",
                    d + 1,
                    band.len(),
                    n.saturating_sub(d + 1)
                )));
            }
        }
        Ok(Self { diag, upper })
    }

    /// Builds from a dense row-major matrix, reading the upper triangle only.
    pub fn from_dense(rows: &[Vec<Complex64>], bandwidth: usize) -> Result<Self> {
        let n = rows.len();
        let diag = (0..n).map(|i| rows[i][i].re).collect();
        let upper = (1..=bandwidth)
            .map(|d| (0..n.saturating_sub(d)).map(|i| rows[i][i + d]).collect())
            .collect();
        Self::new(diag, upper)
    }

    pub fn dimension(&self) -> usize {
        self.diag.len()
    }

    pub fn bandwidth(&self) -> usize {
        self.upper.len()
    }

    pub fn diagonal(&self) -> &[f64] {
        &self.diag
    }

    /// Entry H[i][j], zero outside the band.
    pub fn get(&self, i: usize, j: usize) -> Complex64 {
        if i == j {
            return Complex64::new(self.diag[i], 0.0);
        }
        let (lo, hi, conj) = if i < j { (i, j, false) } else { (j, i, true) };
        let d = hi - lo;
        if d > self.bandwidth() {
            return Complex64::new(0.0, 0.0);
        }
        let v = self.upper[d - 1][lo];
        if conj {
            v.conj()
        } else {
            v
        }
    }

    /// y = H x.
    pub fn apply(&self, x: &[Complex64]) -> Vec<Complex64> {
        let n = self.dimension();
        let mut y: Vec<Complex64> = (0..n).map(|i| x[i] * self.diag[i]).collect();
        for (dm1, band) in self.upper.iter().enumerate() {
            let d = dm1 + 1;
            for (i, &h) in band.iter().enumerate() {
                y[i] += h * x[i + d];
                y[i + d] += h.conj() * x[i];
            }
        }
        y
    }

    /// Gershgorin interval containing the spectrum.
    pub fn gershgorin(&self) -> (f64, f64) {
        let n = self.dimension();
        let mut radius = vec![0.0; n];
        for (dm1, band) in self.upper.iter().enumerate() {
            for (i, h) in band.iter().enumerate() {
                radius[i] += h.norm();
                radius[i + dm1 + 1] += h.norm();
            }
        }
        let lo = (0..n)
            .map(|i| self.diag[i] - radius[i])
            .fold(f64::INFINITY, f64::min);
        let hi = (0..n)
            .map(|i| self.diag[i] + radius[i])
            .fold(f64::NEG_INFINITY, f64::max);
        (lo, hi)
    }
}

/// Working storage for the reduction: upper band of width `b + 1`.
struct Work {
    n: usize,
    width: usize,
    w: Vec<Vec<Complex64>>, // w[d][i] = H[i][i + d], d = 0..=width
}

impl Work {
    fn from_band(h: &HermitianBand) -> Self {
        let n = h.dimension();
        let width = h.bandwidth() + 1;
        let mut w = vec![vec![Complex64::new(0.0, 0.0); n]; width + 1];
        for (i, &d) in h.diag.iter().enumerate() {
            w[0][i] = Complex64::new(d, 0.0);
        }
        for (dm1, band) in h.upper.iter().enumerate() {
            w[dm1 + 1][..band.len()].copy_from_slice(band);
        }
        Self { n, width, w }
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> Complex64 {
        if j >= i {
            let d = j - i;
            if d <= self.width {
                self.w[d][i]
            } else {
                Complex64::new(0.0, 0.0)
            }
        } else {
            let d = i - j;
            if d <= self.width {
                self.w[d][j].conj()
            } else {
                Complex64::new(0.0, 0.0)
            }
        }
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, v: Complex64) {
        if j >= i {
            let d = j - i;
            if d <= self.width {
                self.w[d][i] = v;
            } else {
                debug_assert!(v.norm() < 1e-6, "fill outside working band");
            }
        } else {
            let d = i - j;
            if d <= self.width {
                self.w[d][j] = v.conj();
            } else {
                debug_assert!(v.norm() < 1e-6, "fill outside working band");
            }
        }
    }

    /// Applies G H G^H with G = [[c, s], [-s̄, c]] acting on rows/cols (p, p+1),
    /// choosing the rotation so that H[r][p+1] becomes zero.
    fn annihilate(&mut self, r: usize, p: usize) {
        let q = p + 1;
        let f = self.get(r, p);
        let g = self.get(r, q);
        if g.norm() == 0.0 {
            return;
        }
        let (c, s) = if f.norm() == 0.0 {
            (0.0, Complex64::new(1.0, 0.0))
        } else {
            let rr = f.norm().hypot(g.norm());
            (f.norm() / rr, g * f.conj() / (f.norm() * rr))
        };
        let lo = p.saturating_sub(self.width);
        let hi = (q + self.width).min(self.n - 1);
        for k in lo..=hi {
            if k == p || k == q {
                continue;
            }
            let hp = self.get(p, k);
            let hq = self.get(q, k);
            self.set(p, k, hp * c + s * hq);
            self.set(q, k, -s.conj() * hp + hq * c);
        }
        let a = self.get(p, p);
        let b = self.get(p, q);
        let d = self.get(q, q);
        let m00 = a * c + s * b.conj();
        let m01 = b * c + s * d;
        let m10 = -s.conj() * a + b.conj() * c;
        let m11 = -s.conj() * b + d * c;
        let a2 = m00 * c + m01 * s.conj();
        let b2 = -m00 * s + m01 * c;
        let d2 = -m10 * s + m11 * c;
        self.set(p, p, Complex64::new(a2.re, 0.0));
        self.set(p, q, b2);
        self.set(q, q, Complex64::new(d2.re, 0.0));
        self.set(r, q, Complex64::new(0.0, 0.0));
    }
}

/// Real symmetric tridiagonal matrix unitarily similar to `h`:
/// (diagonal, |off-diagonal|).
pub fn tridiagonalize(h: &HermitianBand) -> (Vec<f64>, Vec<f64>) {
    let n = h.dimension();
    let b = h.bandwidth();
    if b <= 1 {
        let off = if b == 1 {
            h.upper[0].iter().map(|z| z.norm()).collect()
        } else {
            vec![0.0; n.saturating_sub(1)]
        };
        return (h.diag.clone(), off);
    }
    let mut work = Work::from_band(h);
    for j in 0..n.saturating_sub(2) {
        for d in (2..=b).rev() {
            if j + d >= n {
                continue;
            }
            // zero H[j][j+d] with a rotation in (j+d-1, j+d), then chase the bulge
            work.annihilate(j, j + d - 1);
            let mut row = j + d - 1;
            let mut col = j + d + b;
            while col < n {
                work.annihilate(row, col - 1);
                row = col - 1;
                col += b;
            }
        }
    }
    let diag = (0..n).map(|i| work.w[0][i].re).collect();
    let off = (0..n - 1).map(|i| work.w[1][i].norm()).collect();
    (diag, off)
}

/// Number of eigenvalues of the symmetric tridiagonal (d, e) below `sigma`.
pub fn sturm_count(d: &[f64], e: &[f64], sigma: f64) -> usize {
    let tiny = f64::MIN_POSITIVE.sqrt();
    let mut count = 0;
    let mut q = d[0] - sigma;
    if q == 0.0 {
        q = -tiny;
    }
    if q < 0.0 {
        count += 1;
    }
    for i in 1..d.len() {
        q = d[i] - sigma - e[i - 1] * e[i - 1] / q;
        if q == 0.0 {
            q = -tiny;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues of a symmetric tridiagonal, ascending.
pub fn tridiagonal_lowest(d: &[f64], e: &[f64], k: usize) -> Vec<f64> {
    let n = d.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { e[i - 1].abs() } else { 0.0 } + if i + 1 < n { e[i].abs() } else { 0.0 };
        lo = lo.min(d[i] - r);
        hi = hi.max(d[i] + r);
    }
    bisect_lowest(lo, hi, k.min(n), |sigma| sturm_count(d, e, sigma))
}

/// Number of eigenvalues of `h` below `sigma`, from the signs of the LDLᴴ pivots of h − σI.
pub fn band_inertia(h: &HermitianBand, sigma: f64) -> usize {
    let n = h.dimension();
    let b = h.bandwidth();
    let (glo, ghi) = h.gershgorin();
    let tiny = f64::EPSILON * glo.abs().max(ghi.abs()).max(1.0) * 1e-3;
    // l[i * b + (d - 1)] = L[i][i - d]
    let mut l = vec![Complex64::new(0.0, 0.0); n * b.max(1)];
    let mut piv = vec![0.0f64; n];
    let mut count = 0;
    for i in 0..n {
        let first = i.saturating_sub(b);
        for j in first..i {
            let mut acc = h.get(i, j);
            for k in first..j {
                acc -= l[i * b + (i - k - 1)] * piv[k] * l[j * b + (j - k - 1)].conj();
            }
            l[i * b + (i - j - 1)] = acc / piv[j];
        }
        let mut di = h.diag[i] - sigma;
        for k in first..i {
            di -= l[i * b + (i - k - 1)].norm_sqr() * piv[k];
        }
        if di.abs() < tiny {
            di = -tiny;
        }
        if di < 0.0 {
            count += 1;
        }
        piv[i] = di;
    }
    count
}

/// Bisects for the `k` smallest points where `count` steps up, inside [lo, hi].
fn bisect_lowest(mut lo: f64, mut hi: f64, k: usize, count: impl Fn(f64) -> usize) -> Vec<f64> {
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    lo -= 1e-12 * span;
    hi += 1e-12 * span;
    let mut out = Vec::with_capacity(k);
    let mut floor = lo;
    for idx in 0..k {
        let (mut a, mut b) = (floor, hi);
        // the idx-th eigenvalue is the smallest sigma with count(sigma) > idx
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if count(mid) > idx {
                b = mid;
            } else {
                a = mid;
            }
            if b - a <= 2.0 * f64::EPSILON * a.abs().max(b.abs()) {
                break;
            }
        }
        out.push(0.5 * (a + b));
        floor = a;
    }
    out
}

/// Dense-band LU with partial pivoting for complex matrices.
struct BandLu {
    n: usize,
    kl: usize,
    width: usize, // stored columns per row: columns i - kl ..= i + ku + kl
    rows: Vec<Complex64>,
    pivots: Vec<usize>,
}

impl BandLu {
    fn factor(h: &HermitianBand, shift: f64) -> Self {
        let n = h.dimension();
        let kl = h.bandwidth();
        let ku = h.bandwidth();
        let width = 2 * kl + ku + 1;
        let mut rows = vec![Complex64::new(0.0, 0.0); n * width];
        // element (i, j) lives at rows[i * width + (j + kl - i)]
        let idx = |i: usize, j: usize| i * width + (j + kl - i);
        for i in 0..n {
            let lo = i.saturating_sub(kl);
            let hi = (i + ku).min(n - 1);
            for j in lo..=hi {
                let mut v = h.get(i, j);
                if i == j {
                    v -= shift;
                }
                rows[idx(i, j)] = v;
            }
        }
        let scale = h.gershgorin().1.abs().max(h.gershgorin().0.abs()).max(1.0);
        let mut pivots = vec![0; n];
        for col in 0..n {
            let last = (col + kl).min(n - 1);
            let mut best = col;
            let mut best_abs = rows[idx(col, col)].norm();
            for r in col + 1..=last {
                let v = rows[idx(r, col)].norm();
                if v > best_abs {
                    best = r;
                    best_abs = v;
                }
            }
            pivots[col] = best;
            let row_end = (col + ku + kl).min(n - 1);
            if best != col {
                for j in col..=row_end {
                    rows.swap(idx(col, j), idx(best, j));
                }
            }
            if rows[idx(col, col)].norm() == 0.0 {
                rows[idx(col, col)] = Complex64::new(f64::EPSILON * scale, 0.0);
            }
            let pivot = rows[idx(col, col)];
            for r in col + 1..=last {
                let factor = rows[idx(r, col)] / pivot;
                rows[idx(r, col)] = factor;
                if factor.norm() == 0.0 {
                    continue;
                }
                for j in col + 1..=row_end {
                    let u = rows[idx(col, j)];
                    rows[idx(r, j)] -= factor * u;
                }
            }
        }
        Self {
            n,
            kl,
            width,
            rows,
            pivots,
        }
    }

    fn solve(&self, b: &mut [Complex64]) {
        let n = self.n;
        let kl = self.kl;
        let width = self.width;
        let idx = |i: usize, j: usize| i * width + (j + kl - i);
        for col in 0..n {
            let p = self.pivots[col];
            if p != col {
                b.swap(p, col);
            }
            let last = (col + kl).min(n - 1);
            let bc = b[col];
            for r in col + 1..=last {
                b[r] -= self.rows[idx(r, col)] * bc;
            }
        }
        let reach = width - kl - 1;
        for i in (0..n).rev() {
            let mut acc = b[i];
            let end = (i + reach).min(n - 1);
            for j in i + 1..=end {
                acc -= self.rows[idx(i, j)] * b[j];
            }
            b[i] = acc / self.rows[idx(i, i)];
        }
    }
}

/// Eigenvalue with its unit-norm (Euclidean) eigenvector.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixEigenpair {
    pub value: f64,
    pub vector: Vec<Complex64>,
}

/// The `k` smallest eigenvalues, ascending.
pub fn lowest_eigenvalues(h: &HermitianBand, k: usize) -> Result<Vec<f64>> {
    let n = h.dimension();
    if k == 0 || k > n {
        return Err(Error::EigenRange {
            requested: k,
            dimension: n,
        });
    }
    let (lo, hi) = h.gershgorin();
    Ok(bisect_lowest(lo, hi, k, |sigma| band_inertia(h, sigma)))
}

fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// The `k` smallest eigenpairs, ascending, with orthonormal eigenvectors.
pub fn lowest_eigenpairs(h: &HermitianBand, k: usize) -> Result<Vec<MatrixEigenpair>> {
    let values = lowest_eigenvalues(h, k)?;
    let n = h.dimension();
    let (glo, ghi) = h.gershgorin();
    let scale = glo.abs().max(ghi.abs()).max(1.0);
    let mut pairs: Vec<MatrixEigenpair> = Vec::with_capacity(k);
    for (idx, &value) in values.iter().enumerate() {
        let lu = BandLu::factor(h, value);
        // deterministic start vector
        let mut state: u64 =
            0x9E37_79B9_7F4A_7C15 ^ (idx as u64).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        let mut x: Vec<Complex64> = (0..n)
            .map(|_| {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                Complex64::new((state >> 11) as f64 / (1u64 << 53) as f64 - 0.5, 0.0)
            })
            .collect();
        let mut residual = f64::INFINITY;
        for _ in 0..6 {
            // keep clear of already-converged neighbours in a cluster
            for prev in &pairs {
                if (prev.value - value).abs() <= 1e-7 * scale {
                    let overlap: Complex64 =
                        prev.vector.iter().zip(&x).map(|(a, b)| a.conj() * b).sum();
                    for (xi, pi) in x.iter_mut().zip(&prev.vector) {
                        *xi -= overlap * pi;
                    }
                }
            }
            let nx = norm(&x);
            x.iter_mut().for_each(|z| *z /= nx);
            lu.solve(&mut x);
            let nx = norm(&x);
            if !nx.is_finite() || nx == 0.0 {
                return Err(Error::NoConvergence {
                    routine: "inverse_iteration",
                    iterations: idx,
                    residual: f64::NAN,
                });
            }
            x.iter_mut().for_each(|z| *z /= nx);
            let hx = h.apply(&x);
            residual = norm(
                &hx.iter()
                    .zip(&x)
                    .map(|(a, b)| a - b * value)
                    .collect::<Vec<_>>(),
            );
            if residual <= 1e-10 * scale {
                break;
            }
        }
        if residual > 1e-7 * scale {
            return Err(Error::NoConvergence {
                routine: "inverse_iteration",
                iterations: 6,
                residual,
            });
        }
        pairs.push(MatrixEigenpair { value, vector: x });
    }
    Ok(pairs)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn diagonal_two_by_two() {
        let h = HermitianBand::new(vec![3.0, -1.0], vec![vec![c(0.0, 0.0)]]).unwrap();
        let pairs = lowest_eigenpairs(&h, 2).unwrap();
        assert!((pairs[0].value + 1.0).abs() < 1e-14);
        assert!((pairs[1].value - 3.0).abs() < 1e-14);
        assert!((pairs[0].vector[1].norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn complex_two_by_two() {
        // [[2, i], [-i, 2]] has eigenvalues 1 and 3
        let h = HermitianBand::new(vec![2.0, 2.0], vec![vec![c(0.0, 1.0)]]).unwrap();
        let v = lowest_eigenvalues(&h, 2).unwrap();
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] - 3.0).abs() < 1e-14);
    }

    /// Deterministic pseudo-random Hermitian band matrix.
    fn random_band(n: usize, b: usize, seed: u64) -> HermitianBand {
        let mut s = seed;
        let mut next = || {
            s = s
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let diag = (0..n).map(|_| 4.0 * next()).collect();
        let upper = (1..=b)
            .map(|d| (0..n - d).map(|_| c(next(), next())).collect())
            .collect();
        HermitianBand::new(diag, upper).unwrap()
    }

    /// Jacobi eigenvalues of the real 2n×2n embedding [[Re, -Im], [Im, Re]].
    fn jacobi_reference(h: &HermitianBand) -> Vec<f64> {
        let n = h.dimension();
        let m = 2 * n;
        let mut a = vec![vec![0.0; m]; m];
        for i in 0..n {
            for j in 0..n {
                let z = h.get(i, j);
                a[i][j] = z.re;
                a[i + n][j + n] = z.re;
                a[i][j + n] = -z.im;
                a[i + n][j] = z.im;
            }
        }
        for _sweep in 0..100 {
            let mut off = 0.0;
            for p in 0..m {
                for q in p + 1..m {
                    off += a[p][q] * a[p][q];
                }
            }
            if off < 1e-30 {
                break;
            }
            for p in 0..m {
                for q in p + 1..m {
                    if a[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (a[q][q] - a[p][p]) / (2.0 * a[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let cs = 1.0 / (t * t + 1.0).sqrt();
                    let sn = t * cs;
                    for k in 0..m {
                        let akp = a[k][p];
                        let akq = a[k][q];
                        a[k][p] = cs * akp - sn * akq;
                        a[k][q] = sn * akp + cs * akq;
                    }
                    for k in 0..m {
                        let apk = a[p][k];
                        let aqk = a[q][k];
                        a[p][k] = cs * apk - sn * aqk;
                        a[q][k] = sn * apk + cs * aqk;
                    }
                }
            }
        }
        let mut ev: Vec<f64> = (0..m).map(|i| a[i][i]).collect();
        ev.sort_by(f64::total_cmp);
        // every eigenvalue appears twice in the embedding
        ev.into_iter().step_by(2).collect()
    }

    #[test]
    fn band_reduction_preserves_spectrum() {
        for (n, b) in [(12, 2), (17, 3), (9, 1), (20, 2)] {
            let h = random_band(n, b, 7 + n as u64);
            let want = jacobi_reference(&h);
            let (d, e) = tridiagonalize(&h);
            let reduced = tridiagonal_lowest(&d, &e, n);
            let direct = lowest_eigenvalues(&h, n).unwrap();
            for ((r, g), w) in reduced.iter().zip(&direct).zip(&want) {
                assert!((r - w).abs() < 1e-11, "reduction n={n} b={b}: {r} vs {w}");
                assert!((g - w).abs() < 1e-11, "inertia n={n} b={b}: {g} vs {w}");
            }
        }
    }

    #[test]
    fn inertia_agrees_with_the_tridiagonal_reduction() {
        for (n, b) in [(30, 2), (25, 3), (40, 1)] {
            let h = random_band(n, b, 3 + n as u64);
            let (d, e) = tridiagonalize(&h);
            let via_reduction = tridiagonal_lowest(&d, &e, n);
            let via_inertia = lowest_eigenvalues(&h, n).unwrap();
            for (a, c) in via_reduction.iter().zip(&via_inertia) {
                assert!((a - c).abs() < 1e-11, "n={n} b={b}: {a} vs {c}");
            }
        }
    }

    #[test]
    fn eigenvectors_satisfy_the_eigen_equation() {
        let h = random_band(40, 2, 99);
        let pairs = lowest_eigenpairs(&h, 6).unwrap();
        for (i, p) in pairs.iter().enumerate() {
            let hx = h.apply(&p.vector);
            let r: f64 = hx
                .iter()
                .zip(&p.vector)
                .map(|(a, b)| (a - b * p.value).norm_sqr())
                .sum();
            assert!(r.sqrt() < 1e-10, "pair {i}: residual {}", r.sqrt());
            for q in &pairs[..i] {
                let ov: Complex64 = q
                    .vector
                    .iter()
                    .zip(&p.vector)
                    .map(|(a, b)| a.conj() * b)
                    .sum();
                assert!(ov.norm() < 1e-9);
            }
        }
    }

    #[test]
    fn degenerate_pair_gets_orthogonal_vectors() {
        let h =
            HermitianBand::new(vec![1.0, 1.0, 5.0], vec![vec![c(0.0, 0.0), c(0.0, 0.0)]]).unwrap();
        let pairs = lowest_eigenpairs(&h, 2).unwrap();
        let ov: Complex64 = pairs[0]
            .vector
            .iter()
            .zip(&pairs[1].vector)
            .map(|(a, b)| a.conj() * b)
            .sum();
        assert!(ov.norm() < 1e-9);
    }

    #[test]
    fn out_of_range_request() {
        let h = HermitianBand::new(vec![1.0], vec![]).unwrap();
        assert!(matches!(
            lowest_eigenvalues(&h, 2),
            Err(Error::EigenRange { .. })
        ));
        assert!(lowest_eigenvalues(&h, 0).is_err());
    }
}
