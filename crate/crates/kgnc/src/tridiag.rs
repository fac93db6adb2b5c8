//! Symmetric tridiagonal eigenvalue machinery: Sturm-sequence counting,
//! index-targeted bisection, and inverse iteration for single eigenvectors.
//!
//! Shared by the quadrature node generator and the finite-difference
//! radial solver; both only ever need the lowest few eigenvalues, so
//! bisection on the Sturm count beats a full-spectrum decomposition.

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly
/// below `x`, via the LDLᵀ pivot signs (Sturm sequence).
///
/// `diag` is the main diagonal, `off` the sub/super-diagonal
/// (`off.len() == diag.len() - 1`).
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let n = diag.len();
    if n == 0 {
        return 0;
    }
    debug_assert_eq!(off.len(), n - 1);

    let mut count = 0usize;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..n {
        let q_safe = if q.abs() < f64::MIN_POSITIVE * 4.0 {
            if q >= 0.0 {
                f64::MIN_POSITIVE * 4.0
            } else {
                -f64::MIN_POSITIVE * 4.0
            }
        } else {
            q
        };
        q = (diag[i] - x) - off[i - 1] * off[i - 1] / q_safe;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// Gershgorin bounds `(lo, hi)` containing the whole spectrum.
fn gershgorin(diag: &[f64], off: &[f64]) -> (f64, f64) {
    let n = diag.len();
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let left = if i > 0 { off[i - 1].abs() } else { 0.0 };
        let right = if i < n - 1 { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - left - right);
        hi = hi.max(diag[i] + left + right);
    }
    (lo - 1.0, hi + 1.0)
}

/// The `count` smallest eigenvalues, ascending, via index-targeted bisection.
pub fn lowest_eigenvalues(diag: &[f64], off: &[f64], count: usize) -> Vec<f64> {
    let n = diag.len();
    let count = count.min(n);
    if count == 0 {
        return Vec::new();
    }
    if n == 1 {
        return vec![diag[0]];
    }
    let (glo, ghi) = gershgorin(diag, off);

    let mut out = Vec::with_capacity(count);
    for k in 0..count {
        // eigenvalues are ordered; the previous one is a valid lower bound
        let mut a = if k == 0 { glo } else { out[k - 1] };
        let mut b = ghi;
        for _ in 0..120 {
            let mid = 0.5 * (a + b);
            if (b - a) <= 4.0 * f64::EPSILON * mid.abs().max(1e-3) {
                break;
            }
            if sturm_count(diag, off, mid) <= k {
                a = mid;
            } else {
                b = mid;
            }
        }
        out.push(0.5 * (a + b));
    }
    out
}

/// Eigenvector for the eigenvalue nearest `lambda`, by inverse iteration
/// with a partially pivoted tridiagonal LU. Returned vector has unit
/// Euclidean norm and a deterministic overall sign (first sizable
/// component positive).
pub fn eigenvector(diag: &[f64], off: &[f64], lambda: f64) -> Vec<f64> {
    let n = diag.len();
    // small shift off the exact eigenvalue keeps the factorization usable
    let scale = diag.iter().fold(0.0f64, |m, &d| m.max(d.abs()));
    let sigma = lambda + 1e-12 * scale.max(1.0);

    let mut v = vec![1.0 / (n as f64).sqrt(); n];
    for _ in 0..3 {
        v = solve_shifted(diag, off, sigma, &v);
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if !norm.is_finite() || norm == 0.0 {
            // singular to working precision; restart from a skewed vector
            v = (0..n).map(|i| ((i as f64) * 0.37).sin() + 0.5).collect();
            continue;
        }
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    // fix the sign for determinism
    if let Some(&first) = v.iter().find(|x| x.abs() > 1e-8) {
        if first < 0.0 {
            for x in v.iter_mut() {
                *x = -*x;
            }
        }
    }
    v
}

/// Solve (T - sigma I) x = b with partial pivoting (Gaussian elimination
/// on the three bands; row swaps create a second superdiagonal of fill-in).
fn solve_shifted(diag: &[f64], off: &[f64], sigma: f64, b: &[f64]) -> Vec<f64> {
    let n = diag.len();
    let guard = |p: f64| {
        if p.abs() < f64::MIN_POSITIVE * 4.0 {
            f64::MIN_POSITIVE * 4.0
        } else {
            p
        }
    };
    if n == 1 {
        return vec![b[0] / guard(diag[0] - sigma)];
    }

    let mut dl: Vec<f64> = off.to_vec(); // entry (i+1, i)
    let mut d: Vec<f64> = diag.iter().map(|&x| x - sigma).collect();
    let mut du: Vec<f64> = off.to_vec(); // entry (i, i+1)
    let mut du2 = vec![0.0f64; n.saturating_sub(2)]; // entry (i, i+2) fill-in
    let mut x: Vec<f64> = b.to_vec();

    for i in 0..n - 1 {
        // row i is (d[i], du[i], du2[i]); row i+1 is (dl[i], d[i+1], du[i+1])
        if dl[i].abs() > d[i].abs() {
            // swap rows i and i+1 across columns i, i+1, i+2
            let (old_d, old_du) = (d[i], du[i]);
            let old_du_next = if i + 1 < n - 1 { du[i + 1] } else { 0.0 };
            d[i] = dl[i];
            du[i] = d[i + 1];
            if i < n - 2 {
                du2[i] = old_du_next;
            }
            d[i + 1] = old_du;
            if i + 1 < n - 1 {
                du[i + 1] = 0.0;
            }
            dl[i] = old_d; // column-i entry of the new row i+1
            x.swap(i, i + 1);
        }
        let m = dl[i] / guard(d[i]);
        d[i + 1] -= m * du[i];
        if i < n - 2 {
            du[i + 1] -= m * du2[i];
        }
        x[i + 1] -= m * x[i];
    }

    // back substitution
    for i in (0..n).rev() {
        let mut rhs = x[i];
        if i + 1 < n {
            rhs -= du[i] * x[i + 1];
        }
        if i + 2 < n {
            rhs -= du2[i] * x[i + 2];
        }
        x[i] = rhs / guard(d[i]);
    }
    x
}

/// Count strict sign changes of `v`, skipping entries below
/// `1e-10 * max|v|` (grid noise near the boundaries).
pub fn sign_changes(v: &[f64]) -> usize {
    let max = v.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
    let floor = 1e-10 * max;
    let mut changes = 0usize;
    let mut prev = 0.0f64;
    for &x in v {
        if x.abs() <= floor {
            continue;
        }
        if prev != 0.0 && x.signum() != prev.signum() {
            changes += 1;
        }
        prev = x;
    }
    changes
}
