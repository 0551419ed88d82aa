//! Division polynomials over `F_ell` in the x-only normalisation.
//!
//! `f_n` equals `psi_n` for odd `n` and `psi_n / psi_2` for even `n`, so every
//! `f_n` lies in `F_ell[x]`, with `psi_2^2 = B = 4x^3 + b2 x^2 + 2 b4 x + b6`.

use std::collections::HashMap;

use num_bigint::BigInt;

use crate::arith::PolyFp;
use crate::curve::CurveQ;

pub struct DivisionPolynomials {
    ell: u64,
    b: PolyFp,
    b_sq: PolyFp,
    memo: HashMap<usize, PolyFp>,
}

impl DivisionPolynomials {
    pub fn new(e: &CurveQ, ell: u64) -> Self {
        let (b2, b4, b6, b8) = (&e.b2, &e.b4, &e.b6, &e.b8);
        let f3 = PolyFp::from_big(
            &[b8.clone(), 3 * b6, 3 * b4, b2.clone(), BigInt::from(3)],
            ell,
        );
        let f4 = PolyFp::from_big(
            &[
                b4 * b8 - b6 * b6,
                b2 * b8 - b4 * b6,
                10 * b8,
                10 * b6,
                5 * b4,
                b2.clone(),
                BigInt::from(2),
            ],
            ell,
        );
        let b = e.two_torsion_poly(ell);
        let b_sq = b.mul(&b);
        let mut memo = HashMap::new();
        memo.insert(0, PolyFp::zero(ell));
        memo.insert(1, PolyFp::constant(1, ell));
        memo.insert(2, PolyFp::constant(1, ell));
        memo.insert(3, f3);
        memo.insert(4, f4);
        DivisionPolynomials { ell, b, b_sq, memo }
    }

    /// The normalised division polynomial `f_n`.
    pub fn f(&mut self, n: usize) -> PolyFp {
        if let Some(p) = self.memo.get(&n) {
            return p.clone();
        }
        let k = n / 2;
        let out = if n % 2 == 1 {
            let a = self.f(k + 2).mul(&cube(&self.f(k)));
            let b = self.f(k - 1).mul(&cube(&self.f(k + 1)));
            if k.is_multiple_of(2) {
                self.b_sq.mul(&a).sub(&b)
            } else {
                a.sub(&self.b_sq.mul(&b))
            }
        } else {
            let fk1 = self.f(k - 1);
            let fk_1 = self.f(k + 1);
            let inner = self
                .f(k + 2)
                .mul(&fk1.mul(&fk1))
                .sub(&self.f(k - 2).mul(&fk_1.mul(&fk_1)));
            self.f(k).mul(&inner)
        };
        self.memo.insert(n, out.clone());
        out
    }

    /// `psi_n^2` as a polynomial in `x`.
    pub fn psi_squared(&mut self, n: usize) -> PolyFp {
        let fnn = self.f(n);
        let sq = fnn.mul(&fnn);
        if n.is_multiple_of(2) {
            sq.mul(&self.b)
        } else {
            sq
        }
    }

    /// `phi_n = x psi_n^2 - psi_{n-1} psi_{n+1}`, so `x([n]P) = phi_n / psi_n^2`.
    pub fn phi(&mut self, n: usize) -> PolyFp {
        assert!(n >= 1);
        let x = PolyFp::x(self.ell);
        let cross = self.f(n - 1).mul(&self.f(n + 1));
        let head = x.mul(&self.psi_squared(n));
        if n % 2 == 1 {
            head.sub(&self.b.mul(&cross))
        } else {
            head.sub(&cross)
        }
    }
}

fn cube(p: &PolyFp) -> PolyFp {
    p.mul(p).mul(p)
}
