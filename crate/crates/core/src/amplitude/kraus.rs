//! Operator-sum form of the single-atom dissipative channel.
//!
//! Basis order (|g>, |e>): the no-jump operator keeps the ground state fixed
//! and scales the excited amplitude by c(t); the jump operator transfers
//! excited population to the ground state.

use num_complex::Complex64;

use crate::error::{CoreError, CoreResult};

pub type Matrix2 = [[Complex64; 2]; 2];

#[derive(Debug, Clone, Copy)]
pub struct KrausPair {
    /// K0 = diag(1, c) in (|g>, |e>) order.
    pub k0: Matrix2,
    /// K1 = sqrt(1 - |c|^2) |g><e|.
    pub k1: Matrix2,
}

fn zero2() -> Matrix2 {
    [[Complex64::new(0.0, 0.0); 2]; 2]
}

fn matmul(a: &Matrix2, b: &Matrix2) -> Matrix2 {
    let mut out = zero2();
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn adjoint(a: &Matrix2) -> Matrix2 {
    [
        [a[0][0].conj(), a[1][0].conj()],
        [a[0][1].conj(), a[1][1].conj()],
    ]
}

impl KrausPair {
    /// Max entrywise deviation of K0†K0 + K1†K1 from the identity.
    pub fn completeness_defect(&self) -> f64 {
        let s0 = matmul(&adjoint(&self.k0), &self.k0);
        let s1 = matmul(&adjoint(&self.k1), &self.k1);
        let mut defect = 0.0f64;
        for i in 0..2 {
            for j in 0..2 {
                let expected = if i == j {
                    Complex64::new(1.0, 0.0)
                } else {
                    Complex64::new(0.0, 0.0)
                };
                defect = defect.max((s0[i][j] + s1[i][j] - expected).norm());
            }
        }
        defect
    }

    /// Channel action: rho -> K0 rho K0† + K1 rho K1†.
    pub fn apply(&self, rho: &Matrix2) -> Matrix2 {
        let a = matmul(&matmul(&self.k0, rho), &adjoint(&self.k0));
        let b = matmul(&matmul(&self.k1, rho), &adjoint(&self.k1));
        let mut out = zero2();
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = a[i][j] + b[i][j];
            }
        }
        out
    }
}

/// Kraus pair of the amplitude channel at amplitude c(t).
pub fn kraus_channel(c_t: Complex64) -> CoreResult<KrausPair> {
    let modulus = c_t.norm();
    if modulus > 1.0 + 1e-9 {
        return Err(CoreError::AmplitudeBound {
            index: 0,
            modulus,
        });
    }
    let decay = (1.0 - modulus * modulus).max(0.0).sqrt();
    let mut k0 = zero2();
    k0[0][0] = Complex64::new(1.0, 0.0);
    k0[1][1] = c_t;
    let mut k1 = zero2();
    k1[0][1] = Complex64::new(decay, 0.0);
    Ok(KrausPair { k0, k1 })
}
