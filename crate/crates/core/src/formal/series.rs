//! Truncated power series over `Z/p^N`: univariate, dense bivariate, and
//! sparse multivariate, plus the ring abstraction used to evaluate a formal
//! group law on elements of any of them (or of a local field).

use std::collections::BTreeMap;

use super::padic::Zpn;

/// A commutative ring in which a formal group law can be evaluated: it must
/// be a `Z/p^N`-algebra with a valuation that bounds the order of each term.
pub trait FgRing {
    type Elem: Clone;

    fn zero(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn scale(&self, a: &Self::Elem, c: u64) -> Self::Elem;
    /// `None` for zero.
    fn val(&self, a: &Self::Elem) -> Option<u32>;
}

/// Univariate series `sum c_k t^k`, `k < prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Uni(pub Vec<u64>);

#[derive(Clone, Copy, Debug)]
pub struct UniRing {
    pub z: Zpn,
    pub prec: usize,
}

impl UniRing {
    pub fn t(&self) -> Uni {
        let mut c = vec![0; self.prec];
        if self.prec > 1 {
            c[1] = 1;
        }
        Uni(c)
    }

    pub fn monomial(&self, k: usize, c: u64) -> Uni {
        let mut v = vec![0; self.prec];
        if k < self.prec {
            v[k] = c % self.z.modulus;
        }
        Uni(v)
    }

    pub fn sub(&self, a: &Uni, b: &Uni) -> Uni {
        Uni(a.0.iter().zip(&b.0).map(|(&x, &y)| self.z.sub(x, y)).collect())
    }

    /// `g(f(t))` for `f` without constant term.
    pub fn compose(&self, g: &Uni, f: &Uni) -> Uni {
        assert_eq!(f.0.first().copied().unwrap_or(0), 0);
        let mut acc = self.zero();
        for &c in g.0.iter().rev() {
            acc = self.mul(&acc, f);
            acc.0[0] = self.z.add(acc.0[0], c);
        }
        acc
    }
}

impl FgRing for UniRing {
    type Elem = Uni;

    fn zero(&self) -> Uni {
        Uni(vec![0; self.prec])
    }

    fn add(&self, a: &Uni, b: &Uni) -> Uni {
        Uni(a.0.iter().zip(&b.0).map(|(&x, &y)| self.z.add(x, y)).collect())
    }

    fn mul(&self, a: &Uni, b: &Uni) -> Uni {
        let n = self.prec;
        let m = self.z.modulus as u128;
        let mut out = vec![0u128; n];
        for (i, &x) in a.0.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.0[..n - i].iter().enumerate() {
                if y != 0 {
                    out[i + j] = (out[i + j] + x as u128 * y as u128) % m;
                }
            }
        }
        Uni(out.into_iter().map(|c| c as u64).collect())
    }

    fn scale(&self, a: &Uni, c: u64) -> Uni {
        Uni(a.0.iter().map(|&x| self.z.mul(x, c)).collect())
    }

    fn val(&self, a: &Uni) -> Option<u32> {
        a.0.iter().position(|&c| c != 0).map(|k| k as u32)
    }
}

/// Dense bivariate series with total degree below `prec`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bi {
    pub prec: usize,
    c: Vec<u64>,
}

#[inline]
fn idx(i: usize, j: usize) -> usize {
    let d = i + j;
    d * (d + 1) / 2 + j
}

impl Bi {
    pub fn zero(prec: usize) -> Self {
        Bi { prec, c: vec![0; prec * (prec + 1) / 2] }
    }

    pub fn get(&self, i: usize, j: usize) -> u64 {
        if i + j < self.prec {
            self.c[idx(i, j)]
        } else {
            0
        }
    }

    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        if i + j < self.prec {
            self.c[idx(i, j)] = v;
        }
    }

    /// Nonzero terms `(i, j, c)`.
    pub fn terms(&self) -> impl Iterator<Item = (usize, usize, u64)> + '_ {
        (0..self.prec).flat_map(move |d| {
            (0..=d).filter_map(move |j| {
                let c = self.c[idx(d - j, j)];
                (c != 0).then_some((d - j, j, c))
            })
        })
    }
}

#[derive(Clone, Copy, Debug)]
pub struct BiRing {
    pub z: Zpn,
    pub prec: usize,
}

impl BiRing {
    pub fn x(&self) -> Bi {
        let mut b = self.zero();
        b.set(1, 0, 1);
        b
    }

    pub fn y(&self) -> Bi {
        let mut b = self.zero();
        b.set(0, 1, 1);
        b
    }

    pub fn constant(&self, c: u64) -> Bi {
        let mut b = self.zero();
        b.set(0, 0, c % self.z.modulus);
        b
    }

    pub fn sub(&self, a: &Bi, b: &Bi) -> Bi {
        Bi { prec: self.prec, c: a.c.iter().zip(&b.c).map(|(&x, &y)| self.z.sub(x, y)).collect() }
    }

    pub fn neg(&self, a: &Bi) -> Bi {
        self.sub(&self.zero(), a)
    }

    /// `1 / a` for `a` with unit constant term.
    pub fn inv(&self, a: &Bi) -> Bi {
        let a0 = a.get(0, 0);
        let inv0 = self.z.inv(a0);
        // 1/a = inv0 / (1 + e) with e = inv0 * a - 1 of order >= 1
        let mut e = self.scale(a, inv0);
        e.set(0, 0, 0);
        let mut acc = self.constant(1);
        let neg_e = self.neg(&e);
        for _ in 1..self.prec {
            acc = self.add(&self.constant(1), &self.mul(&neg_e, &acc));
        }
        self.scale(&acc, inv0)
    }

    /// `g(f(X, Y))` for univariate `g` and `f` without constant term.
    pub fn compose_uni(&self, g: &Uni, f: &Bi) -> Bi {
        assert_eq!(f.get(0, 0), 0);
        let mut acc = self.zero();
        for &c in g.0.iter().take(self.prec).rev() {
            acc = self.mul(&acc, f);
            let c0 = self.z.add(acc.get(0, 0), c);
            acc.set(0, 0, c0);
        }
        acc
    }

    /// The series `f(X)` viewed as a bivariate series.
    pub fn from_uni_x(&self, f: &Uni) -> Bi {
        let mut b = self.zero();
        for (k, &c) in f.0.iter().enumerate() {
            b.set(k, 0, c);
        }
        b
    }

    pub fn swap(&self, a: &Bi) -> Bi {
        let mut b = self.zero();
        for (i, j, c) in a.terms() {
            b.set(j, i, c);
        }
        b
    }
}

impl FgRing for BiRing {
    type Elem = Bi;

    fn zero(&self) -> Bi {
        Bi::zero(self.prec)
    }

    fn add(&self, a: &Bi, b: &Bi) -> Bi {
        Bi { prec: self.prec, c: a.c.iter().zip(&b.c).map(|(&x, &y)| self.z.add(x, y)).collect() }
    }

    fn mul(&self, a: &Bi, b: &Bi) -> Bi {
        let p = self.prec;
        let m = self.z.modulus as u128;
        let mut out = vec![0u128; p * (p + 1) / 2];
        let bt: Vec<(usize, usize, u64)> = b.terms().collect();
        for (i1, j1, x) in a.terms() {
            let room = p - (i1 + j1);
            for &(i2, j2, y) in &bt {
                if i2 + j2 >= room {
                    break;
                }
                let k = idx(i1 + i2, j1 + j2);
                out[k] = (out[k] + x as u128 * y as u128) % m;
            }
        }
        Bi { prec: p, c: out.into_iter().map(|c| c as u64).collect() }
    }

    fn scale(&self, a: &Bi, c: u64) -> Bi {
        Bi { prec: self.prec, c: a.c.iter().map(|&x| self.z.mul(x, c)).collect() }
    }

    fn val(&self, a: &Bi) -> Option<u32> {
        a.terms().next().map(|(i, j, _)| (i + j) as u32)
    }
}

/// Sparse multivariate series: exponent vector to coefficient.
pub type Multi = BTreeMap<Vec<u32>, u64>;

/// Multivariate series in `nvars` variables, truncated at total degree
/// `prec` and, optionally, at exponent `cap` in each variable.
#[derive(Clone, Copy, Debug)]
pub struct MultiRing {
    pub z: Zpn,
    pub nvars: usize,
    pub prec: usize,
    pub cap: Option<u32>,
}

impl MultiRing {
    pub fn var(&self, k: usize) -> Multi {
        let mut e = vec![0u32; self.nvars];
        e[k] = 1;
        let mut out = Multi::new();
        if self.keeps(&e) {
            out.insert(e, 1);
        }
        out
    }

    fn keeps(&self, e: &[u32]) -> bool {
        let deg: u32 = e.iter().sum();
        (deg as usize) < self.prec && self.cap.is_none_or(|c| e.iter().all(|&x| x <= c))
    }
}

impl FgRing for MultiRing {
    type Elem = Multi;

    fn zero(&self) -> Multi {
        Multi::new()
    }

    fn add(&self, a: &Multi, b: &Multi) -> Multi {
        let mut out = a.clone();
        for (e, &c) in b {
            let slot = out.entry(e.clone()).or_insert(0);
            *slot = self.z.add(*slot, c);
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn mul(&self, a: &Multi, b: &Multi) -> Multi {
        let mut out = Multi::new();
        for (ea, &ca) in a {
            for (eb, &cb) in b {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                if !self.keeps(&e) {
                    continue;
                }
                let slot = out.entry(e).or_insert(0);
                *slot = self.z.add(*slot, self.z.mul(ca, cb));
            }
        }
        out.retain(|_, c| *c != 0);
        out
    }

    fn scale(&self, a: &Multi, c: u64) -> Multi {
        let mut out: Multi = a.iter().map(|(e, &x)| (e.clone(), self.z.mul(x, c))).collect();
        out.retain(|_, c| *c != 0);
        out
    }

    fn val(&self, a: &Multi) -> Option<u32> {
        a.keys().map(|e| e.iter().sum()).min()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> Zpn {
        Zpn::new(3, 10).unwrap()
    }

    #[test]
    fn bivariate_inverse() {
        let r = BiRing { z: z(), prec: 12 };
        let a = r.add(&r.constant(2), &r.mul(&r.x(), &r.y()));
        let a = r.add(&a, &r.x());
        let prod = r.mul(&a, &r.inv(&a));
        assert_eq!(prod, r.constant(1));
    }

    #[test]
    fn composition_matches_powers() {
        let u = UniRing { z: z(), prec: 10 };
        // g = 1/(1 - t) truncated, f = t + t^2
        let g = Uni(vec![1; 10]);
        let f = u.add(&u.t(), &u.monomial(2, 1));
        let lhs = u.compose(&g, &f);
        let mut rhs = u.zero();
        let mut pw = u.monomial(0, 1);
        for _ in 0..10 {
            rhs = u.add(&rhs, &pw);
            pw = u.mul(&pw, &f);
        }
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn multivariate_cap() {
        let r = MultiRing { z: z(), nvars: 2, prec: 10, cap: Some(1) };
        let x = r.var(0);
        assert!(r.mul(&x, &x).is_empty());
    }
}
