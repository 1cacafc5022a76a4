//! Dense symmetric eigensolver: Householder tridiagonalization followed by
//! implicit-shift QL iterations.

use ndarray::Array2;

use crate::error::{invalid, Error, Result};

/// Dense real symmetric matrix, stored row-major with both triangles populated.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self { dim, data: vec![0.0; dim * dim] }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.data[i * dim + i] = 1.0;
        }
        m
    }

    /// Builds the matrix from `f(i, j)` evaluated on the upper triangle (`i <= j`).
    pub fn from_upper_fn(dim: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in i..dim {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Symmetrizes a square array as `(A + Aᵀ)/2`.
    pub fn from_array(a: &Array2<f64>) -> Result<Self> {
        let (r, c) = a.dim();
        if r != c {
            return Err(invalid(format!("matrix is {r}x{c}, not square")));
        }
        Ok(Self::from_upper_fn(r, |i, j| 0.5 * (a[[i, j]] + a[[j, i]])))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    /// Sets both `(i, j)` and `(j, i)`.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
        self.data[j * self.dim + i] = v;
    }

    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn trace(&self) -> f64 {
        (0..self.dim).map(|i| self.get(i, i)).sum()
    }

    pub fn to_array(&self) -> Array2<f64> {
        Array2::from_shape_vec((self.dim, self.dim), self.data.clone()).expect("square storage")
    }
}

/// Eigen-decomposition with eigenvalues ascending; `vectors` holds the
/// eigenvectors as columns in the same order.
#[derive(Debug, Clone)]
pub struct Eigen {
    pub values: Vec<f64>,
    pub vectors: Option<Array2<f64>>,
}

/// Eigenvalues (and optionally eigenvectors) of a dense symmetric matrix.
pub fn sym_eigen(a: &SymmetricMatrix, want_vectors: bool) -> Result<Eigen> {
    let n = a.dim();
    if n == 0 {
        return Err(invalid("matrix dimension must be at least 1"));
    }
    if a.data.iter().any(|x| !x.is_finite()) {
        return Err(invalid("matrix has non-finite entries"));
    }
    let mut z = a.data.clone();
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];
    householder_tridiagonalize(&mut z, n, &mut d, &mut e, want_vectors);
    // tred2 leaves e[i] coupling i-1 and i; the QL routine wants e[i] coupling i and i+1.
    e.rotate_left(1);
    e[n - 1] = 0.0;
    if want_vectors {
        tridiagonal_ql(&mut d, &mut e, Some((&mut z, n)))?;
        Ok(sorted(d, Some((z, n))))
    } else {
        tridiagonal_ql(&mut d, &mut e, None)?;
        Ok(sorted(d, None))
    }
}

/// Eigenvalues of the symmetric tridiagonal matrix with the given diagonal and
/// off-diagonal, ascending.
pub fn symtridiag_eigen(diag: &[f64], offdiag: &[f64]) -> Result<Vec<f64>> {
    let (mut d, mut e) = tridiag_input(diag, offdiag)?;
    tridiagonal_ql(&mut d, &mut e, None)?;
    Ok(sorted(d, None).values)
}

/// Eigenvalues and eigenvectors of a symmetric tridiagonal matrix.
pub fn symtridiag_eigh(diag: &[f64], offdiag: &[f64]) -> Result<Eigen> {
    let (mut d, mut e) = tridiag_input(diag, offdiag)?;
    let n = d.len();
    let mut z = SymmetricMatrix::identity(n).data;
    tridiagonal_ql(&mut d, &mut e, Some((&mut z, n)))?;
    Ok(sorted(d, Some((z, n))))
}

/// The `count` smallest eigenvalues of a symmetric tridiagonal matrix by
/// Sturm-sequence bisection, ascending. `O(dim · count)` per bisection step.
pub fn symtridiag_lowest(diag: &[f64], offdiag: &[f64], count: usize) -> Result<Vec<f64>> {
    tridiag_input(diag, offdiag)?;
    let n = diag.len();
    if count > n {
        return Err(invalid(format!("requested {count} eigenvalues of a {n}x{n} matrix")));
    }
    // Gershgorin interval
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for i in 0..n {
        let r = if i > 0 { offdiag[i - 1].abs() } else { 0.0 } + if i + 1 < n { offdiag[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    let span = (hi - lo).max(f64::MIN_POSITIVE);
    lo -= 1e-12 * span;
    hi += 1e-12 * span;
    let off_sq: Vec<f64> = offdiag.iter().map(|e| e * e).collect();
    let count_below = |x: f64| -> usize {
        let mut below = 0;
        let mut q = 1.0;
        for i in 0..n {
            let coupling = if i > 0 { off_sq[i - 1] / q } else { 0.0 };
            q = diag[i] - x - coupling;
            if q == 0.0 {
                q = -f64::EPSILON * span;
            }
            if q < 0.0 {
                below += 1;
            }
        }
        below
    };
    let mut out = Vec::with_capacity(count);
    let mut left = lo;
    for k in 0..count {
        let (mut a, mut b) = (left, hi);
        for _ in 0..200 {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break;
            }
            if count_below(mid) > k {
                b = mid;
            } else {
                a = mid;
            }
        }
        let value = 0.5 * (a + b);
        out.push(value);
        left = a;
    }
    Ok(out)
}

/// Eigenvalues together with the first component of each normalized
/// eigenvector (Golub–Welsch needs nothing else).
pub(crate) fn symtridiag_first_components(diag: &[f64], offdiag: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let (mut d, mut e) = tridiag_input(diag, offdiag)?;
    let n = d.len();
    let mut row = vec![0.0; n];
    row[0] = 1.0;
    tridiagonal_ql(&mut d, &mut e, Some((&mut row, 1)))?;
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    Ok((order.iter().map(|&i| d[i]).collect(), order.iter().map(|&i| row[i]).collect()))
}

fn tridiag_input(diag: &[f64], offdiag: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    if diag.is_empty() {
        return Err(invalid("tridiagonal matrix must have at least one diagonal entry"));
    }
    if offdiag.len() + 1 != diag.len() {
        return Err(invalid(format!(
            "off-diagonal length {} does not match diagonal length {}",
            offdiag.len(),
            diag.len()
        )));
    }
    if diag.iter().chain(offdiag).any(|x| !x.is_finite()) {
        return Err(invalid("tridiagonal matrix has non-finite entries"));
    }
    let mut e = offdiag.to_vec();
    e.push(0.0);
    Ok((diag.to_vec(), e))
}

fn sorted(d: Vec<f64>, z: Option<(Vec<f64>, usize)>) -> Eigen {
    let n = d.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].total_cmp(&d[j]));
    let values = order.iter().map(|&i| d[i]).collect();
    let vectors = z.map(|(z, rows)| Array2::from_shape_fn((rows, n), |(r, c)| z[r * n + order[c]]));
    Eigen { values, vectors }
}

/// Householder reduction of the row-major symmetric `z` to tridiagonal form.
/// On exit `d` holds the diagonal, `e[i]` the coupling between `i-1` and `i`,
/// and `z` the accumulated orthogonal transform when `vectors` is set.
fn householder_tridiagonalize(z: &mut [f64], n: usize, d: &mut [f64], e: &mut [f64], vectors: bool) {
    let at = |i: usize, j: usize| i * n + j;
    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..i).map(|k| z[at(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = z[at(i, l)];
            } else {
                for k in 0..i {
                    z[at(i, k)] /= scale;
                    h += z[at(i, k)] * z[at(i, k)];
                }
                let f = z[at(i, l)];
                let g = if f >= 0.0 { -h.sqrt() } else { h.sqrt() };
                e[i] = scale * g;
                h -= f * g;
                z[at(i, l)] = f - g;
                let mut f = 0.0;
                for j in 0..i {
                    if vectors {
                        z[at(j, i)] = z[at(i, j)] / h;
                    }
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += z[at(j, k)] * z[at(i, k)];
                    }
                    for k in j + 1..i {
                        g += z[at(k, j)] * z[at(i, k)];
                    }
                    e[j] = g / h;
                    f += e[j] * z[at(i, j)];
                }
                let hh = f / (h + h);
                for j in 0..i {
                    let f = z[at(i, j)];
                    let g = e[j] - hh * f;
                    e[j] = g;
                    for k in 0..=j {
                        z[at(j, k)] -= f * e[k] + g * z[at(i, k)];
                    }
                }
            }
        } else {
            e[i] = z[at(i, l)];
        }
        d[i] = h;
    }
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if vectors {
            if d[i] != 0.0 {
                for j in 0..i {
                    let mut g = 0.0;
                    for k in 0..i {
                        g += z[at(i, k)] * z[at(k, j)];
                    }
                    for k in 0..i {
                        z[at(k, j)] -= g * z[at(k, i)];
                    }
                }
            }
            d[i] = z[at(i, i)];
            z[at(i, i)] = 1.0;
            for j in 0..i {
                z[at(j, i)] = 0.0;
                z[at(i, j)] = 0.0;
            }
        } else {
            d[i] = z[at(i, i)];
        }
    }
}

/// Implicit-shift QL on a symmetric tridiagonal matrix (`e[i]` couples `i` and
/// `i+1`, `e[n-1]` ignored). Rotations are applied to the columns of the
/// row-major `rows x n` block in `z`, if given.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], mut z: Option<(&mut [f64], usize)>) -> Result<()> {
    let n = d.len();
    if n == 1 {
        return Ok(());
    }
    e[n - 1] = 0.0;
    let max_iter = 50 * n;
    let mut iterations = 0;
    for l in 0..n {
        loop {
            let mut m = l;
            while m < n - 1 {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iterations += 1;
            if iterations > max_iter {
                return Err(Error::ConvergenceFailure { iterations: max_iter });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut underflow = false;
            for i in (l..m).rev() {
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                if let Some((z, rows)) = z.as_mut() {
                    for k in 0..*rows {
                        let zi = z[k * n + i];
                        let f = z[k * n + i + 1];
                        z[k * n + i + 1] = s * zi + c * f;
                        z[k * n + i] = c * zi - s * f;
                    }
                }
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}
