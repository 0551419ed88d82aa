//! Brute-force reference computations over small finite fields.
//!
//! Everything here works by explicit enumeration inside `F_{l^f}`, built as
//! `F_l[t]/(g)` for a primitive polynomial `g`. None of it shares code with
//! the fast paths in `selmer-core`; the test suites compare the two.

use std::fmt;

/// Element of a [`SmallField`], stored as a discrete logarithm with respect
/// to the primitive element `t`. Zero has its own sentinel.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Elem(u32);

impl Elem {
    pub const ZERO: Elem = Elem(u32::MAX);

    pub fn is_zero(self) -> bool {
        self == Elem::ZERO
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "t^{}", self.0)
        }
    }
}

/// The finite field with `l^f` elements, using Zech logarithms for addition.
pub struct SmallField {
    ell: u64,
    degree: u32,
    order: u64,
    /// `exp[k]` = base-`l` digit encoding of `t^k`.
    exp: Vec<u32>,
    /// `log[enc]` = discrete log of the element with that encoding.
    log: Vec<u32>,
    /// `zech[k]` = log(1 + t^k), or `u32::MAX` when `1 + t^k = 0`.
    zech: Vec<u32>,
}

impl SmallField {
    /// Builds `F_{ell^degree}`. Panics if `ell` is not prime or the field has
    /// more than 2^24 elements.
    pub fn new(ell: u64, degree: u32) -> Self {
        assert!(degree >= 1);
        assert!(ell >= 2 && (2..ell).take_while(|d| d * d <= ell).all(|d| !ell.is_multiple_of(d)));
        let order = ell.checked_pow(degree).expect("field too large");
        assert!(order <= 1 << 24, "field too large for the oracle");
        let f = degree as usize;
        let q1 = (order - 1) as usize;

        // Search monic g = t^f + c_{f-1} t^{f-1} + ... + c_0 such that t has
        // multiplicative order exactly q - 1 in F_l[t]/(g).
        let mut coeffs = vec![0u64; f];
        loop {
            if coeffs[0] != 0 {
                if let Some(exp) = Self::try_primitive(ell, &coeffs, q1) {
                    let mut log = vec![u32::MAX; order as usize];
                    for (k, &e) in exp.iter().enumerate() {
                        log[e as usize] = k as u32;
                    }
                    let mut field = SmallField {
                        ell,
                        degree,
                        order,
                        exp,
                        log,
                        zech: Vec::new(),
                    };
                    field.zech = (0..q1)
                        .map(|k| {
                            let enc = field.add_encodings(1, field.exp[k]);
                            if enc == 0 {
                                u32::MAX
                            } else {
                                field.log[enc as usize]
                            }
                        })
                        .collect();
                    return field;
                }
            }
            // next coefficient vector (odometer)
            let mut i = 0;
            loop {
                assert!(i < f, "no primitive polynomial found");
                coeffs[i] += 1;
                if coeffs[i] < ell {
                    break;
                }
                coeffs[i] = 0;
                i += 1;
            }
        }
    }

    fn try_primitive(ell: u64, coeffs: &[u64], q1: usize) -> Option<Vec<u32>> {
        let f = coeffs.len();
        let mut digits = vec![0u64; f];
        digits[0] = 1;
        let mut exp = Vec::with_capacity(q1);
        for k in 0..q1 {
            let enc = digits.iter().rev().fold(0u64, |acc, &d| acc * ell + d);
            if k > 0 && enc == 1 {
                return None;
            }
            exp.push(enc as u32);
            // multiply by t, then reduce t^f = -sum c_i t^i
            let top = digits[f - 1];
            for i in (1..f).rev() {
                digits[i] = digits[i - 1];
            }
            digits[0] = 0;
            for i in 0..f {
                digits[i] = (digits[i] + (ell - coeffs[i]) * top) % ell;
            }
        }
        let enc = digits.iter().rev().fold(0u64, |acc, &d| acc * ell + d);
        (enc == 1).then_some(exp)
    }

    fn add_encodings(&self, a: u32, b: u32) -> u32 {
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        for _ in 0..self.degree {
            out += ((a % self.ell + b % self.ell) % self.ell) * place;
            a /= self.ell;
            b /= self.ell;
            place *= self.ell;
        }
        out as u32
    }

    pub fn characteristic(&self) -> u64 {
        self.ell
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn one(&self) -> Elem {
        Elem(0)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        let r = n.rem_euclid(self.ell as i64) as usize;
        if r == 0 {
            Elem::ZERO
        } else {
            Elem(self.log[r])
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        std::iter::once(Elem::ZERO).chain((0..self.order as u32 - 1).map(Elem))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() || b.is_zero() {
            return Elem::ZERO;
        }
        Elem(((a.0 as u64 + b.0 as u64) % (self.order - 1)) as u32)
    }

    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        Elem(((self.order - 1 - a.0 as u64) % (self.order - 1)) as u32)
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if a.is_zero() {
            return b;
        }
        if b.is_zero() {
            return a;
        }
        let q1 = self.order - 1;
        let k = (b.0 as u64 + q1 - a.0 as u64) % q1;
        let z = self.zech[k as usize];
        if z == u32::MAX {
            Elem::ZERO
        } else {
            Elem(((a.0 as u64 + z as u64) % q1) as u32)
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        if a.is_zero() || self.ell == 2 {
            return a;
        }
        Elem(((a.0 as u64 + (self.order - 1) / 2) % (self.order - 1)) as u32)
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return self.one();
        }
        if a.is_zero() {
            return Elem::ZERO;
        }
        let q1 = (self.order - 1) as u128;
        Elem(((a.0 as u128 * e as u128) % q1) as u32)
    }

    /// All `y` with `y^2 + h*y = r`.
    fn solve_quadratic(&self, h: Elem, r: Elem, artin: &[Option<Elem>]) -> Vec<Elem> {
        if self.ell == 2 {
            if h.is_zero() {
                // Frobenius is bijective: unique square root.
                let y = if r.is_zero() {
                    Elem::ZERO
                } else {
                    let half = self.order / 2; // inverse of 2 mod (q - 1)
                    Elem(((r.0 as u64 * half) % (self.order - 1)) as u32)
                };
                return vec![y];
            }
            // y = h z with z^2 + z = r / h^2
            let w = self.div(r, self.mul(h, h));
            match artin[self.index(w)] {
                Some(z) => {
                    let z2 = self.add(z, self.one());
                    vec![self.mul(h, z), self.mul(h, z2)]
                }
                None => vec![],
            }
        } else {
            // (2y + h)^2 = 4r + h^2
            let four = self.from_int(4);
            let disc = self.add(self.mul(four, r), self.mul(h, h));
            let two_inv = self.inv(self.from_int(2));
            if disc.is_zero() {
                return vec![self.mul(self.neg(h), two_inv)];
            }
            if disc.0 % 2 == 1 {
                return vec![];
            }
            let s = Elem(disc.0 / 2);
            vec![
                self.mul(self.sub(s, h), two_inv),
                self.mul(self.sub(self.neg(s), h), two_inv),
            ]
        }
    }

    fn index(&self, a: Elem) -> usize {
        if a.is_zero() {
            0
        } else {
            a.0 as usize + 1
        }
    }
}

/// An affine point or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Point {
    Infinity,
    Affine(Elem, Elem),
}

/// A Weierstrass curve `y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6` reduced
/// into a [`SmallField`].
pub struct FieldCurve<'a> {
    field: &'a SmallField,
    a1: Elem,
    a2: Elem,
    a3: Elem,
    a4: Elem,
    a6: Elem,
}

impl<'a> FieldCurve<'a> {
    pub fn new(field: &'a SmallField, a: [i64; 5]) -> Self {
        FieldCurve {
            field,
            a1: field.from_int(a[0]),
            a2: field.from_int(a[1]),
            a3: field.from_int(a[2]),
            a4: field.from_int(a[3]),
            a6: field.from_int(a[4]),
        }
    }

    /// Every point of the curve over the field, including infinity.
    pub fn points(&self) -> Vec<Point> {
        let k = self.field;
        let artin = if k.ell == 2 {
            let mut table = vec![None; k.order as usize];
            for z in k.elements() {
                let w = k.add(k.mul(z, z), z);
                table[k.index(w)] = Some(z);
            }
            table
        } else {
            Vec::new()
        };
        let mut pts = vec![Point::Infinity];
        for x in k.elements() {
            let h = k.add(k.mul(self.a1, x), self.a3);
            let x2 = k.mul(x, x);
            let r = k.add(
                k.add(k.mul(x2, x), k.mul(self.a2, x2)),
                k.add(k.mul(self.a4, x), self.a6),
            );
            for y in k.solve_quadratic(h, r, &artin) {
                pts.push(Point::Affine(x, y));
            }
        }
        pts
    }

    pub fn is_on_curve(&self, pt: Point) -> bool {
        let k = self.field;
        match pt {
            Point::Infinity => true,
            Point::Affine(x, y) => {
                let lhs = k.add(k.mul(y, y), k.mul(y, k.add(k.mul(self.a1, x), self.a3)));
                let x2 = k.mul(x, x);
                let rhs = k.add(
                    k.add(k.mul(x2, x), k.mul(self.a2, x2)),
                    k.add(k.mul(self.a4, x), self.a6),
                );
                lhs == rhs
            }
        }
    }

    pub fn neg(&self, pt: Point) -> Point {
        let k = self.field;
        match pt {
            Point::Infinity => Point::Infinity,
            Point::Affine(x, y) => {
                let s = k.add(k.add(y, k.mul(self.a1, x)), self.a3);
                Point::Affine(x, k.neg(s))
            }
        }
    }

    pub fn add(&self, p: Point, q: Point) -> Point {
        let k = self.field;
        let (x1, y1, x2, y2) = match (p, q) {
            (Point::Infinity, _) => return q,
            (_, Point::Infinity) => return p,
            (Point::Affine(x1, y1), Point::Affine(x2, y2)) => (x1, y1, x2, y2),
        };
        let lambda = if x1 != x2 {
            k.div(k.sub(y2, y1), k.sub(x2, x1))
        } else {
            if self.neg(p) == q {
                return Point::Infinity;
            }
            // doubling
            let three = k.from_int(3);
            let two = k.from_int(2);
            let num = k.sub(
                k.add(
                    k.add(k.mul(three, k.mul(x1, x1)), k.mul(two, k.mul(self.a2, x1))),
                    self.a4,
                ),
                k.mul(self.a1, y1),
            );
            let den = k.add(k.add(k.mul(two, y1), k.mul(self.a1, x1)), self.a3);
            k.div(num, den)
        };
        let nu = k.sub(y1, k.mul(lambda, x1));
        let x3 = k.sub(
            k.sub(
                k.sub(k.add(k.mul(lambda, lambda), k.mul(self.a1, lambda)), self.a2),
                x1,
            ),
            x2,
        );
        let y3 = k.sub(
            k.sub(k.neg(k.mul(k.add(lambda, self.a1), x3)), nu),
            self.a3,
        );
        Point::Affine(x3, y3)
    }

    pub fn mul(&self, n: u64, p: Point) -> Point {
        let mut acc = Point::Infinity;
        let mut base = p;
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            n >>= 1;
        }
        acc
    }
}

/// `#E(F_{l^f})` by enumeration.
pub fn point_count(a: [i64; 5], ell: u64, f: u32) -> u64 {
    let field = SmallField::new(ell, f);
    FieldCurve::new(&field, a).points().len() as u64
}

/// `dim_{F_p} E(F_{l^f})[p]`, found by enumerating the group and counting the
/// points killed by `p`.
pub fn p_torsion_dimension(a: [i64; 5], ell: u64, f: u32, p: u64) -> u32 {
    let field = SmallField::new(ell, f);
    p_torsion_dimension_in(&field, a, p)
}

/// Same as [`p_torsion_dimension`] but reuses a prebuilt field.
pub fn p_torsion_dimension_in(field: &SmallField, a: [i64; 5], p: u64) -> u32 {
    let curve = FieldCurve::new(field, a);
    let pts = curve.points();
    if !(pts.len() as u64).is_multiple_of(p) {
        return 0;
    }
    let killed = pts
        .iter()
        .filter(|&&pt| curve.mul(p, pt) == Point::Infinity)
        .count() as u64;
    let mut dim = 0;
    let mut n = killed;
    while n.is_multiple_of(p) {
        n /= p;
        dim += 1;
    }
    assert_eq!(n, 1, "p-torsion subgroup order is not a power of p");
    dim
}

/// Whether `x^p = m` has a solution in `F_{l^f}`, by trying every `x`.
pub fn has_pth_root(m: i64, ell: u64, f: u32, p: u64) -> bool {
    let field = SmallField::new(ell, f);
    let target = field.from_int(m);
    let found = field.elements().any(|x| field.pow(x, p) == target);
    found
}

/// Whether `u^e = 1` in `F_{l^f}` where `u` is the image of an integer,
/// computed by square-and-multiply on field elements.
pub fn power_is_one(u: i64, ell: u64, f: u32, e: u128) -> bool {
    let field = SmallField::new(ell, f);
    let mut base = field.from_int(u);
    assert!(!base.is_zero());
    let mut acc = field.one();
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            acc = field.mul(acc, base);
        }
        base = field.mul(base, base);
        e >>= 1;
    }
    acc == field.one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small() {
        for &(ell, f) in &[(2u64, 1u32), (2, 3), (3, 2), (5, 2), (7, 1), (2, 4)] {
            let k = SmallField::new(ell, f);
            let elems: Vec<_> = k.elements().collect();
            assert_eq!(elems.len() as u64, ell.pow(f));
            for &a in &elems {
                assert_eq!(k.add(a, k.neg(a)), Elem::ZERO);
                // characteristic
                let mut s = Elem::ZERO;
                for _ in 0..ell {
                    s = k.add(s, a);
                }
                assert_eq!(s, Elem::ZERO);
                for &b in elems.iter().take(9) {
                    for &c in elems.iter().take(9) {
                        let lhs = k.mul(a, k.add(b, c));
                        let rhs = k.add(k.mul(a, b), k.mul(a, c));
                        assert_eq!(lhs, rhs);
                    }
                }
            }
        }
    }

    #[test]
    fn prime_field_matches_integers() {
        let k = SmallField::new(13, 1);
        for a in 0..13i64 {
            for b in 0..13i64 {
                assert_eq!(k.add(k.from_int(a), k.from_int(b)), k.from_int(a + b));
                assert_eq!(k.mul(k.from_int(a), k.from_int(b)), k.from_int(a * b));
            }
        }
    }

    #[test]
    fn group_law_is_associative() {
        let k = SmallField::new(2, 3);
        let e = FieldCurve::new(&k, [1, -1, 1, -1, -14]);
        let pts = e.points();
        for &p in &pts {
            assert!(e.is_on_curve(p));
            for &q in &pts {
                assert!(e.is_on_curve(e.add(p, q)));
                for &r in pts.iter().take(5) {
                    assert_eq!(e.add(e.add(p, q), r), e.add(p, e.add(q, r)));
                }
            }
        }
    }

    #[test]
    fn hasse_bound_holds() {
        for ell in [3u64, 5, 7, 11, 13] {
            let n = point_count([0, 0, 0, -1, 0], ell, 1) as i64;
            let a = ell as i64 + 1 - n;
            assert!(a * a <= 4 * ell as i64);
        }
    }
}
