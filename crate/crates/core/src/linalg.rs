//! Dense linear algebra kernels: symmetric eigendecomposition
//! (Householder tridiagonalization + implicit-shift QL), eigenvalues of an
//! upper-Hessenberg matrix (Francis double-shift QR, used for
//! companion-matrix polynomial roots), LU determinants and null-direction
//! extraction.
//!
//! Everything here targets the small dense problems this crate produces
//! (sector blocks and recurrence systems, n <= a few hundred).

use crate::error::{Error, Result};

/// Row-major dense real matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![0.0; rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = 1.0;
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn matmul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0.0 {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[f64]) -> Vec<f64> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self[(i, j)] * v[j]).sum())
            .collect()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scale_row(&mut self, i: usize, s: f64) {
        for j in 0..self.cols {
            self[(i, j)] *= s;
        }
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = f64;
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        &mut self.data[i * self.cols + j]
    }
}

const QL_MAX_ITER: usize = 50;
const HQR_MAX_ITER: usize = 60;

/// Eigendecomposition of a real symmetric matrix.
///
/// Returns eigenvalues in ascending order and the matching eigenvectors as
/// matrix columns. The input is symmetrized as (A + A^T)/2 before reduction,
/// so tiny asymmetries from upstream floating arithmetic are harmless.
pub fn symmetric_eigen(a: &Matrix) -> Result<(Vec<f64>, Matrix)> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return Ok((Vec::new(), Matrix::zeros(0, 0)));
    }
    let mut z = Matrix::from_fn(n, n, |i, j| 0.5 * (a[(i, j)] + a[(j, i)]));
    let (mut d, mut e) = tridiagonalize(&mut z);
    ql_implicit(&mut d, &mut e, &mut z)?;

    // sort ascending, permuting eigenvector columns along
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| d[i].partial_cmp(&d[j]).unwrap());
    let values: Vec<f64> = order.iter().map(|&i| d[i]).collect();
    let vectors = Matrix::from_fn(n, n, |i, j| z[(i, order[j])]);
    Ok((values, vectors))
}

/// Householder reduction of a symmetric matrix to tridiagonal form, with the
/// accumulated orthogonal transform left in `a`. Returns (diagonal, subdiagonal)
/// where subdiagonal[i] couples rows i-1 and i.
fn tridiagonalize(a: &mut Matrix) -> (Vec<f64>, Vec<f64>) {
    let n = a.rows;
    let mut d = vec![0.0; n];
    let mut e = vec![0.0; n];

    for i in (1..n).rev() {
        let l = i - 1;
        let mut h = 0.0;
        if l > 0 {
            let scale: f64 = (0..=l).map(|k| a[(i, k)].abs()).sum();
            if scale == 0.0 {
                e[i] = a[(i, l)];
            } else {
                for k in 0..=l {
                    a[(i, k)] /= scale;
                    h += a[(i, k)] * a[(i, k)];
                }
                let f = a[(i, l)];
                let g = -h.sqrt().copysign(f);
                e[i] = scale * g;
                h -= f * g;
                a[(i, l)] = f - g;
                let mut fsum = 0.0;
                for j in 0..=l {
                    a[(j, i)] = a[(i, j)] / h;
                    let mut g = 0.0;
                    for k in 0..=j {
                        g += a[(j, k)] * a[(i, k)];
                    }
                    for k in j + 1..=l {
                        g += a[(k, j)] * a[(i, k)];
                    }
                    e[j] = g / h;
                    fsum += e[j] * a[(i, j)];
                }
                let hh = fsum / (h + h);
                for j in 0..=l {
                    let f = a[(i, j)];
                    e[j] -= hh * f;
                    let g = e[j];
                    for k in 0..=j {
                        a[(j, k)] -= f * e[k] + g * a[(i, k)];
                    }
                }
            }
        } else {
            e[i] = a[(i, l)];
        }
        d[i] = h;
    }

    // accumulate the transformation
    d[0] = 0.0;
    e[0] = 0.0;
    for i in 0..n {
        if d[i] != 0.0 {
            for j in 0..i {
                let mut g = 0.0;
                for k in 0..i {
                    g += a[(i, k)] * a[(k, j)];
                }
                for k in 0..i {
                    a[(k, j)] -= g * a[(k, i)];
                }
            }
        }
        d[i] = a[(i, i)];
        a[(i, i)] = 1.0;
        for j in 0..i {
            a[(j, i)] = 0.0;
            a[(i, j)] = 0.0;
        }
    }
    (d, e)
}

/// Implicit-shift QL iteration on a symmetric tridiagonal matrix, rotating
/// the columns of `z` so they end up as eigenvectors.
fn ql_implicit(d: &mut [f64], e: &mut [f64], z: &mut Matrix) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = 0.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > QL_MAX_ITER {
                return Err(Error::EigenNonConvergence {
                    iterations: QL_MAX_ITER,
                    n,
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let mut s = 1.0;
            let mut c = 1.0;
            let mut p = 0.0;
            let mut underflow = false;
            for i in (l..m).rev() {
                let mut f = s * e[i];
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
                for k in 0..n {
                    f = z[(k, i + 1)];
                    z[(k, i + 1)] = s * z[(k, i)] + c * f;
                    z[(k, i)] = c * z[(k, i)] - s * f;
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

/// One eigenvalue of a real matrix, possibly complex.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize)]
pub struct ComplexRoot {
    pub re: f64,
    pub im: f64,
}

/// Eigenvalues of an upper-Hessenberg matrix by the Francis double-shift QR
/// iteration. The matrix is consumed. Rows below the first subdiagonal are
/// assumed zero.
pub fn hessenberg_eigenvalues(mut a: Matrix) -> Result<Vec<ComplexRoot>> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut roots = Vec::with_capacity(n);
    if n == 0 {
        return Ok(roots);
    }

    balance(&mut a);

    let mut anorm = 0.0;
    for i in 0..n {
        for j in i.saturating_sub(1)..n {
            anorm += a[(i, j)].abs();
        }
    }
    if anorm == 0.0 {
        for _ in 0..n {
            roots.push(ComplexRoot { re: 0.0, im: 0.0 });
        }
        return Ok(roots);
    }

    let mut nn = n - 1;
    let mut t = 0.0;
    'next_root: loop {
        let mut its = 0;
        loop {
            // find small subdiagonal element
            let mut l = nn;
            while l >= 1 {
                let mut s = a[(l - 1, l - 1)].abs() + a[(l, l)].abs();
                if s == 0.0 {
                    s = anorm;
                }
                if a[(l, l - 1)].abs() + s == s {
                    a[(l, l - 1)] = 0.0;
                    break;
                }
                l -= 1;
            }
            let x = a[(nn, nn)];
            if l == nn {
                // one real root
                roots.push(ComplexRoot { re: x + t, im: 0.0 });
                if nn == 0 {
                    break 'next_root;
                }
                nn -= 1;
                continue 'next_root;
            }
            let y = a[(nn - 1, nn - 1)];
            let w = a[(nn, nn - 1)] * a[(nn - 1, nn)];
            if l == nn - 1 {
                // a 2x2 block: two roots
                let p = 0.5 * (y - x);
                let q = p * p + w;
                let z = q.abs().sqrt();
                let x = x + t;
                if q >= 0.0 {
                    let z = p + z.copysign(p);
                    roots.push(ComplexRoot { re: x + z, im: 0.0 });
                    let second = if z != 0.0 { x - w / z } else { x + z };
                    roots.push(ComplexRoot {
                        re: second,
                        im: 0.0,
                    });
                } else {
                    roots.push(ComplexRoot { re: x + p, im: z });
                    roots.push(ComplexRoot { re: x + p, im: -z });
                }
                if nn == 1 {
                    break 'next_root;
                }
                nn -= 2;
                continue 'next_root;
            }
            // no convergence yet: QR step
            if its == HQR_MAX_ITER {
                return Err(Error::EigenNonConvergence {
                    iterations: HQR_MAX_ITER,
                    n,
                });
            }
            let (mut x, mut y, mut w) = (x, y, w);
            if its % 10 == 0 && its > 0 {
                // exceptional shift
                t += x;
                for i in 0..=nn {
                    a[(i, i)] -= x;
                }
                let s = a[(nn, nn - 1)].abs() + a[(nn - 1, nn - 2)].abs();
                x = 0.75 * s;
                y = x;
                w = -0.4375 * s * s;
            }
            its += 1;
            // two consecutive small subdiagonals
            let mut m = nn - 2;
            let (mut p, mut q, mut r);
            loop {
                let z = a[(m, m)];
                let rr = x - z;
                let ss = y - z;
                p = (rr * ss - w) / a[(m + 1, m)] + a[(m, m + 1)];
                q = a[(m + 1, m + 1)] - z - rr - ss;
                r = a[(m + 2, m + 1)];
                let s = p.abs() + q.abs() + r.abs();
                p /= s;
                q /= s;
                r /= s;
                if m == l {
                    break;
                }
                let u = a[(m, m - 1)].abs() * (q.abs() + r.abs());
                let v = p.abs() * (a[(m - 1, m - 1)].abs() + z.abs() + a[(m + 1, m + 1)].abs());
                if u + v == v {
                    break;
                }
                m -= 1;
            }
            for i in m + 2..=nn {
                a[(i, i - 2)] = 0.0;
                if i > m + 2 {
                    a[(i, i - 3)] = 0.0;
                }
            }
            // double QR step on rows l..=nn, columns m..=nn
            for k in m..nn {
                if k != m {
                    p = a[(k, k - 1)];
                    q = a[(k + 1, k - 1)];
                    r = if k != nn - 1 { a[(k + 2, k - 1)] } else { 0.0 };
                    x = p.abs() + q.abs() + r.abs();
                    if x != 0.0 {
                        p /= x;
                        q /= x;
                        r /= x;
                    }
                }
                let s = (p * p + q * q + r * r).sqrt().copysign(p);
                if s == 0.0 {
                    continue;
                }
                if k == m {
                    if l != m {
                        a[(k, k - 1)] = -a[(k, k - 1)];
                    }
                } else {
                    a[(k, k - 1)] = -s * x;
                }
                p += s;
                x = p / s;
                y = q / s;
                let z = r / s;
                q /= p;
                r /= p;
                for j in k..=nn {
                    let mut pp = a[(k, j)] + q * a[(k + 1, j)];
                    if k != nn - 1 {
                        pp += r * a[(k + 2, j)];
                        a[(k + 2, j)] -= pp * z;
                    }
                    a[(k + 1, j)] -= pp * y;
                    a[(k, j)] -= pp * x;
                }
                let mmin = if nn < k + 3 { nn } else { k + 3 };
                for i in l..=mmin {
                    let mut pp = x * a[(i, k)] + y * a[(i, k + 1)];
                    if k != nn - 1 {
                        pp += z * a[(i, k + 2)];
                        a[(i, k + 2)] -= pp * r;
                    }
                    a[(i, k + 1)] -= pp * q;
                    a[(i, k)] -= pp;
                }
            }
        }
    }
    Ok(roots)
}

/// Diagonal-similarity balancing (powers of two, so it is exact); reduces the
/// norm spread of badly scaled companion matrices before QR.
fn balance(a: &mut Matrix) {
    const RADIX: f64 = 2.0;
    let n = a.rows;
    let mut done = false;
    while !done {
        done = true;
        for i in 0..n {
            let mut r = 0.0;
            let mut c = 0.0;
            for j in 0..n {
                if j != i {
                    c += a[(j, i)].abs();
                    r += a[(i, j)].abs();
                }
            }
            if c != 0.0 && r != 0.0 {
                let mut g = r / RADIX;
                let mut f = 1.0;
                let s = c + r;
                let mut c2 = c;
                while c2 < g {
                    f *= RADIX;
                    c2 *= RADIX * RADIX;
                }
                g = r * RADIX;
                while c2 > g {
                    f /= RADIX;
                    c2 /= RADIX * RADIX;
                }
                if (c2 + r) / f < 0.95 * s {
                    done = false;
                    let ginv = 1.0 / f;
                    for j in 0..n {
                        a[(i, j)] *= ginv;
                    }
                    for j in 0..n {
                        a[(j, i)] *= f;
                    }
                }
            }
        }
    }
}

/// Determinant by partial-pivot LU.
pub fn lu_det(m: &Matrix) -> f64 {
    assert_eq!(m.rows, m.cols);
    let n = m.rows;
    let mut a = m.clone();
    let mut det = 1.0;
    for k in 0..n {
        let mut piv = k;
        for i in k + 1..n {
            if a[(i, k)].abs() > a[(piv, k)].abs() {
                piv = i;
            }
        }
        if a[(piv, k)] == 0.0 {
            return 0.0;
        }
        if piv != k {
            for j in 0..n {
                let tmp = a[(k, j)];
                a[(k, j)] = a[(piv, j)];
                a[(piv, j)] = tmp;
            }
            det = -det;
        }
        det *= a[(k, k)];
        let inv = 1.0 / a[(k, k)];
        for i in k + 1..n {
            let f = a[(i, k)] * inv;
            if f == 0.0 {
                continue;
            }
            for j in k..n {
                a[(i, j)] -= f * a[(k, j)];
            }
        }
    }
    det
}

/// Partial-pivot LU factorization kept for repeated solves. Exact zero
/// pivots are replaced by a tiny value so inverse iteration on a singular
/// matrix stays finite.
struct LuFactors {
    n: usize,
    lu: Matrix,
    perm: Vec<usize>,
}

impl LuFactors {
    fn new(m: &Matrix) -> LuFactors {
        let n = m.rows;
        let mut lu = m.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let scale = lu.max_abs().max(1.0);
        for k in 0..n {
            let mut piv = k;
            for i in k + 1..n {
                if lu[(i, k)].abs() > lu[(piv, k)].abs() {
                    piv = i;
                }
            }
            if piv != k {
                for j in 0..n {
                    let tmp = lu[(k, j)];
                    lu[(k, j)] = lu[(piv, j)];
                    lu[(piv, j)] = tmp;
                }
                perm.swap(k, piv);
            }
            if lu[(k, k)] == 0.0 {
                lu[(k, k)] = 1e-100 * scale;
            }
            let inv = 1.0 / lu[(k, k)];
            for i in k + 1..n {
                let f = lu[(i, k)] * inv;
                lu[(i, k)] = f;
                for j in k + 1..n {
                    lu[(i, j)] -= f * lu[(k, j)];
                }
            }
        }
        LuFactors { n, lu, perm }
    }

    fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut x: Vec<f64> = self.perm.iter().map(|&p| b[p]).collect();
        for i in 1..n {
            for j in 0..i {
                x[i] -= self.lu[(i, j)] * x[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                x[i] -= self.lu[(i, j)] * x[j];
            }
            x[i] /= self.lu[(i, i)];
        }
        x
    }
}

/// Smallest singular value of `m` together with the corresponding right
/// singular vector (the best null direction). The direction comes from the
/// symmetric eigendecomposition of M^T M and is then refined by inverse
/// iteration on M itself, since normal equations alone lose half the digits
/// near a null direction.
pub fn smallest_singular_direction(m: &Matrix) -> Result<(f64, Vec<f64>)> {
    let mtm = m.transpose().matmul(m);
    let (_, vecs) = symmetric_eigen(&mtm)?;
    let mut v: Vec<f64> = (0..mtm.rows).map(|i| vecs[(i, 0)]).collect();

    let lu = LuFactors::new(m);
    for _ in 0..2 {
        let x = lu.solve(&v);
        let n = norm2(&x);
        if !n.is_finite() || n == 0.0 {
            break;
        }
        let candidate: Vec<f64> = x.into_iter().map(|t| t / n).collect();
        if norm2(&m.apply(&candidate)) <= norm2(&m.apply(&v)) {
            v = candidate;
        } else {
            break;
        }
    }
    // deterministic sign: largest-magnitude entry positive
    if let Some(lead) = v
        .iter()
        .cloned()
        .max_by(|a, b| a.abs().partial_cmp(&b.abs()).unwrap())
    {
        if lead < 0.0 {
            for t in &mut v {
                *t = -*t;
            }
        }
    }
    let sigma = norm2(&m.apply(&v)) / norm2(&v).max(1e-300);
    Ok((sigma, v))
}

pub fn norm2(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
