use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::poly::{int, rational_to_f64};

/// Central finite-difference weights for `d^k/dx^k` on a unit grid.
#[derive(Clone, Debug, PartialEq)]
pub struct Stencil {
    pub derivative: u32,
    pub accuracy: u32,
    /// Weights for offsets `-p..=p`.
    pub exact: Vec<BigRational>,
    pub weights: Vec<f64>,
}

impl Stencil {
    /// Weights are the exact solution of the moment conditions
    /// `sum_j w_j j^m = k! [m = k]`, `m = 0..2p`.
    pub fn central(derivative: u32, accuracy: u32) -> Result<Self> {
        if derivative == 0 || accuracy == 0 || !accuracy.is_multiple_of(2) {
            return Err(Error::InvalidArgument(format!(
                "central stencil needs derivative >= 1 and even accuracy, got ({derivative}, {accuracy})"
            )));
        }
        let p = ((derivative + accuracy - 1) / 2) as i64;
        let n = (2 * p + 1) as usize;
        let mut m: Vec<Vec<BigRational>> = (0..n)
            .map(|row| {
                let mut r: Vec<BigRational> = (-p..=p)
                    .map(|j| num_traits::pow(int(j), row))
                    .collect();
                let rhs = if row == derivative as usize {
                    (1..=derivative as i64).fold(BigRational::one(), |acc, k| acc * int(k))
                } else {
                    BigRational::zero()
                };
                r.push(rhs);
                r
            })
            .collect();
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| !m[r][col].is_zero())
                .ok_or_else(|| Error::LinearSolve("singular moment matrix".into()))?;
            m.swap(col, piv);
            let inv = m[col][col].recip();
            for v in m[col].iter_mut() {
                *v *= &inv;
            }
            let pivot = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (x, p) in row.iter_mut().zip(&pivot).skip(col) {
                        *x -= &f * p;
                    }
                }
            }
        }
        let exact: Vec<BigRational> = m.into_iter().map(|r| r[n].clone()).collect();
        let weights = exact.iter().map(rational_to_f64).collect();
        Ok(Stencil {
            derivative,
            accuracy,
            exact,
            weights,
        })
    }

    pub fn half_width(&self) -> usize {
        self.weights.len() / 2
    }

    /// Periodic application with spacing `dx`.
    pub fn apply(&self, u: &[f64], dx: f64) -> Result<Vec<f64>> {
        let n = u.len();
        let p = self.half_width();
        if 2 * p + 1 > n {
            return Err(Error::StencilTooWide {
                half_width: p,
                points: n,
            });
        }
        let scale = dx.powi(self.derivative as i32).recip();
        Ok((0..n)
            .map(|i| {
                let mut s = 0.0;
                for (k, w) in self.weights.iter().enumerate() {
                    if *w != 0.0 {
                        s += w * u[(i + n + k - p) % n];
                    }
                }
                s * scale
            })
            .collect())
    }

    /// Imaginary part of the Fourier symbol of an odd-order stencil at
    /// `theta = kappa dx`, scaled by `dx^-derivative`: the stencil maps
    /// `exp(i kappa x)` to `i * s * exp(i kappa x)`.
    pub fn odd_symbol(&self, theta: f64, dx: f64) -> f64 {
        let p = self.half_width();
        let s: f64 = (1..=p)
            .map(|j| self.weights[p + j] * (j as f64 * theta).sin())
            .sum();
        2.0 * s / dx.powi(self.derivative as i32)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn classic_weights() {
        let s = Stencil::central(1, 2).unwrap();
        assert_eq!(s.exact, vec![rat(-1, 2), int(0), rat(1, 2)]);
        let s = Stencil::central(1, 4).unwrap();
        assert_eq!(s.exact, vec![rat(1, 12), rat(-2, 3), int(0), rat(2, 3), rat(-1, 12)]);
        let s = Stencil::central(3, 2).unwrap();
        assert_eq!(s.exact, vec![rat(-1, 2), int(1), int(0), int(-1), rat(1, 2)]);
    }

    #[test]
    fn widths() {
        for (d, acc, p) in [(1, 4, 2), (3, 4, 3), (5, 4, 4), (5, 8, 6), (3, 8, 5)] {
            assert_eq!(Stencil::central(d, acc).unwrap().half_width(), p);
        }
    }

    #[test]
    fn weights_sum_to_zero() {
        for d in [1, 3, 5] {
            for acc in [4, 6, 8] {
                let s = Stencil::central(d, acc).unwrap();
                assert!(s.exact.iter().fold(int(0), |a, w| a + w).is_zero());
            }
        }
    }

    #[test]
    fn too_wide() {
        let s = Stencil::central(5, 8).unwrap();
        assert!(matches!(
            s.apply(&[0.0; 12], 1.0),
            Err(Error::StencilTooWide { half_width: 6, points: 12 })
        ));
    }
}
