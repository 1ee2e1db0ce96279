//! Dense real polynomials in one variable, ascending-degree coefficients.
//!
//! Shared by the Bargmann-space differential operators (variable x) and the
//! determinant machinery (variable E). Trailing zeros are normalized away;
//! the zero polynomial has degree -1.

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: Vec::new() }
    }

    pub fn new(coeffs: Vec<f64>) -> Self {
        let mut p = Polynomial { coeffs };
        p.normalize();
        p
    }

    /// c * x^n
    pub fn monomial(c: f64, n: usize) -> Self {
        if c == 0.0 {
            return Self::zero();
        }
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = c;
        Polynomial { coeffs }
    }

    pub fn constant(c: f64) -> Self {
        Self::monomial(c, 0)
    }

    fn normalize(&mut self) {
        while matches!(self.coeffs.last(), Some(&c) if c == 0.0) {
            self.coeffs.pop();
        }
    }

    /// Degree, with the zero polynomial at -1.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    /// Coefficient of x^n (zero beyond the stored degree).
    pub fn coeff(&self, n: usize) -> f64 {
        self.coeffs.get(n).copied().unwrap_or(0.0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        Polynomial::new(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(-1.0))
    }

    pub fn scale(&self, s: f64) -> Polynomial {
        Polynomial::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![0.0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::new(coeffs)
    }

    pub fn derivative(&self) -> Polynomial {
        if self.coeffs.len() <= 1 {
            return Polynomial::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(n, &c)| n as f64 * c)
            .collect();
        Polynomial::new(coeffs)
    }

    /// Multiply by x^n.
    pub fn shift_up(&self, n: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![0.0; n];
        coeffs.extend_from_slice(&self.coeffs);
        Polynomial { coeffs }
    }

    /// Largest absolute coefficient.
    pub fn max_abs(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// Synthetic division by (x - root). Returns (quotient, remainder).
    pub fn div_linear(&self, root: f64) -> (Polynomial, f64) {
        if self.is_zero() {
            return (Polynomial::zero(), 0.0);
        }
        let n = self.coeffs.len();
        let mut q = vec![0.0; n - 1];
        let mut carry = 0.0;
        for i in (0..n).rev() {
            let v = self.coeffs[i] + carry;
            if i == 0 {
                return (Polynomial::new(q), v);
            }
            q[i - 1] = v;
            carry = v * root;
        }
        unreachable!()
    }

    /// Interpolating polynomial through (xs[i], ys[i]) via Newton divided
    /// differences, expanded to monomial coefficients.
    pub fn interpolate(xs: &[f64], ys: &[f64]) -> Polynomial {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        if n == 0 {
            return Polynomial::zero();
        }
        // divided-difference table, in place
        let mut dd = ys.to_vec();
        for level in 1..n {
            for i in (level..n).rev() {
                dd[i] = (dd[i] - dd[i - 1]) / (xs[i] - xs[i - level]);
            }
        }
        // expand Newton form: p = dd[n-1]; p = p*(x - xs[i]) + dd[i]
        let mut p = Polynomial::constant(dd[n - 1]);
        for i in (0..n - 1).rev() {
            let factor = Polynomial::new(vec![-xs[i], 1.0]);
            p = p.mul(&factor).add(&Polynomial::constant(dd[i]));
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_degree_is_minus_one() {
        assert_eq!(Polynomial::zero().degree(), -1);
        assert_eq!(Polynomial::new(vec![0.0, 0.0]).degree(), -1);
        assert_eq!(Polynomial::new(vec![1.0, 0.0]).degree(), 0);
    }

    #[test]
    fn horner_eval() {
        // 2 - 3x + x^2 at x = 5: 2 - 15 + 25 = 12
        let p = Polynomial::new(vec![2.0, -3.0, 1.0]);
        assert_eq!(p.eval(5.0), 12.0);
    }

    #[test]
    fn derivative_and_shift() {
        let p = Polynomial::new(vec![1.0, 2.0, 3.0]); // 1 + 2x + 3x^2
        assert_eq!(p.derivative().coeffs(), &[2.0, 6.0]);
        assert_eq!(p.shift_up(2).coeffs(), &[0.0, 0.0, 1.0, 2.0, 3.0]);
    }

    #[test]
    fn linear_division_exact() {
        // (x - 2)(x^2 + 1) = x^3 - 2x^2 + x - 2
        let p = Polynomial::new(vec![-2.0, 1.0, -2.0, 1.0]);
        let (q, r) = p.div_linear(2.0);
        assert_eq!(r, 0.0);
        assert_eq!(q.coeffs(), &[1.0, 0.0, 1.0]);
    }

    #[test]
    fn interpolation_recovers_cubic() {
        let target = Polynomial::new(vec![1.0, -4.0, 0.5, 2.0]);
        let xs: Vec<f64> = (0..4).map(|i| i as f64).collect();
        let ys: Vec<f64> = xs.iter().map(|&x| target.eval(x)).collect();
        let p = Polynomial::interpolate(&xs, &ys);
        assert_eq!(p.degree(), 3);
        for (a, b) in p.coeffs().iter().zip(target.coeffs()) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
