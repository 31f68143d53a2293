//! Symmetric tridiagonal eigenvalues by Sturm-sequence bisection, plus
//! inverse iteration for eigenvectors.
//!
//! Bisection on the negative-pivot count of the shifted LDL^T factorization
//! is immune to the extreme grading of the x-space mass matrices (diagonal
//! entries spanning ~17 orders of magnitude), where QL/QR shift strategies
//! lose the small eigenvalues.

#[derive(Debug, Clone)]
pub(crate) struct SymTridiag {
    pub diag: Vec<f64>,
    /// Sub/super diagonal, length `diag.len() - 1`.
    pub off: Vec<f64>,
}

impl SymTridiag {
    /// Number of eigenvalues below `lambda` (non-positive pivots of
    /// T - lambda I in the LDL^T recurrence; an exact tie at `lambda` may
    /// land on either side, which bisection tolerates).
    ///
    /// Each pivot is floored *before* its sign is tallied: a zero pivot
    /// means a leading principal block is exactly singular at `lambda`, and
    /// skipping its sign (or flooring only the previous pivot) silently
    /// drops those eigenvalues from the count. The floor is scaled so that
    /// `b^2 / pivot` can never overflow.
    pub fn count_below(&self, lambda: f64) -> usize {
        let emax2 = self.off.iter().fold(0.0f64, |a, &b| a.max(b * b));
        let pivmin = f64::MIN_POSITIVE * emax2.max(1.0);
        let mut count = 0usize;
        let mut d = self.diag[0] - lambda;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d <= 0.0 {
            count += 1;
        }
        for i in 1..self.diag.len() {
            let b = self.off[i - 1];
            d = (self.diag[i] - lambda) - b * b / d;
            if d.abs() < pivmin {
                d = -pivmin;
            }
            if d <= 0.0 {
                count += 1;
            }
        }
        count
    }

    /// k-th smallest eigenvalue (0-based) by bisection.
    pub fn eigenvalue(&self, k: usize) -> f64 {
        let n = self.diag.len();
        assert!(k < n);
        // Gershgorin enclosure
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let r = if i > 0 { self.off[i - 1].abs() } else { 0.0 }
                + if i < n - 1 { self.off[i].abs() } else { 0.0 };
            lo = lo.min(self.diag[i] - r);
            hi = hi.max(self.diag[i] + r);
        }
        for _ in 0..300 {
            let mid = 0.5 * (lo + hi);
            if mid == lo || mid == hi {
                break; // interval at floating-point resolution
            }
            if self.count_below(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-14 * mid.abs().max(1.0) {
                break;
            }
        }
        0.5 * (lo + hi)
    }

    /// Lowest `k` eigenvalues, ascending.
    pub fn lowest(&self, k: usize) -> Vec<f64> {
        (0..k).map(|i| self.eigenvalue(i)).collect()
    }

    /// Eigenvector for an eigenvalue estimate, by inverse iteration with a
    /// slightly shifted LU factorization. Returned with unit L2 norm.
    /// Only the closed-form cross-checks need discrete eigenvectors, so this
    /// ships in test builds alone.
    #[cfg(test)]
    pub fn eigenvector(&self, lambda: f64) -> Vec<f64> {
        let n = self.diag.len();
        // shift off the exact eigenvalue so T - shift stays invertible
        let shift = lambda + lambda.abs().max(1.0) * 1e-11;
        let lu = LuTridiag::factor(
            &self.diag.iter().map(|d| d - shift).collect::<Vec<_>>(),
            &self.off,
        );
        let mut v = vec![1.0; n];
        for _ in 0..3 {
            lu.solve(&mut v);
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            for x in v.iter_mut() {
                *x /= norm;
            }
        }
        v
    }
}

/// LU factorization of a tridiagonal matrix with partial pivoting
/// (adjacent-row swaps introduce one extra superdiagonal of fill-in).
#[cfg(test)]
struct LuTridiag {
    dl: Vec<f64>,
    d: Vec<f64>,
    du: Vec<f64>,
    du2: Vec<f64>,
    swapped: Vec<bool>,
}

#[cfg(test)]
impl LuTridiag {
    fn factor(diag: &[f64], off: &[f64]) -> Self {
        let n = diag.len();
        let mut d = diag.to_vec();
        let mut dl = off.to_vec();
        let mut du = off.to_vec();
        let mut du2 = vec![0.0; n.saturating_sub(2)];
        let mut swapped = vec![false; n.saturating_sub(1)];
        for i in 0..n - 1 {
            if d[i].abs() >= dl[i].abs() {
                if d[i].abs() < 1e-300 {
                    d[i] = 1e-300;
                }
                let fact = dl[i] / d[i];
                dl[i] = fact;
                d[i + 1] -= fact * du[i];
                if i < n - 2 {
                    du2[i] = 0.0;
                }
            } else {
                let fact = d[i] / dl[i];
                d[i] = dl[i];
                dl[i] = fact;
                let tmp = du[i];
                du[i] = d[i + 1];
                d[i + 1] = tmp - fact * d[i + 1];
                if i < n - 2 {
                    du2[i] = du[i + 1];
                    du[i + 1] = -fact * du[i + 1];
                }
                swapped[i] = true;
            }
        }
        if d[n - 1].abs() < 1e-300 {
            d[n - 1] = 1e-300;
        }
        LuTridiag { dl, d, du, du2, swapped }
    }

    fn solve(&self, b: &mut [f64]) {
        let n = b.len();
        for i in 0..n - 1 {
            if self.swapped[i] {
                b.swap(i, i + 1);
            }
            b[i + 1] -= self.dl[i] * b[i];
        }
        b[n - 1] /= self.d[n - 1];
        if n >= 2 {
            b[n - 2] = (b[n - 2] - self.du[n - 2] * b[n - 1]) / self.d[n - 2];
        }
        for i in (0..n.saturating_sub(2)).rev() {
            b[i] = (b[i] - self.du[i] * b[i + 1] - self.du2[i] * b[i + 2]) / self.d[i];
        }
    }
}
