//! Cyclic and two-generator abelian quotient singularities of surfaces, and
//! their Hirzebruch-Jung resolutions.
//!
//! A type `(d; a, b)` denotes the quotient of the plane, with coordinates
//! `(x, y)` in that order, by `xi . (x, y) = (xi^a x, xi^b y)` for `xi` a
//! primitive `d`-th root of unity.

use num_integer::Integer;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::arith::{int, mod_inverse, modulo, ratio};
use crate::{Int, IntMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuotientError {
    #[error("type ({d}; {a}, {b}) is not normalized")]
    NotNormalized { d: Int, a: Int, b: Int },
    #[error("no Hirzebruch-Jung chain for d = {d}, q = {q}")]
    BadInput { d: Int, q: Int },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicType {
    pub d: Int,
    pub a: Int,
    pub b: Int,
}

impl CyclicType {
    pub fn new(d: impl Into<Int>, a: impl Into<Int>, b: impl Into<Int>) -> Self {
        Self { d: d.into(), a: a.into(), b: b.into() }
    }

    pub fn is_normalized(&self) -> bool {
        self.d.gcd(&self.a).is_one() && self.d.gcd(&self.b).is_one()
    }
}

/// A normalized type together with the coordinate change that produced it:
/// the new coordinates are `(x^first_power, y^second_power)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Normalized {
    pub ty: CyclicType,
    pub first_power: Int,
    pub second_power: Int,
}

/// Normal form of a cyclic type: weights reduced into `[0, d)`, the
/// ineffective part of the action removed and pseudo-reflections divided out.
pub fn normalize_cyclic(t: &CyclicType) -> CyclicType {
    normalize_with_coordinates(t).ty
}

/// [`normalize_cyclic`], also reporting the coordinate powers.
pub fn normalize_with_coordinates(t: &CyclicType) -> Normalized {
    let (mut d, mut a, mut b) = (t.d.clone(), modulo(&t.a, &t.d), modulo(&t.b, &t.d));
    let (mut fp, mut sp) = (Int::one(), Int::one());
    loop {
        let k = d.gcd(&a).gcd(&b);
        d /= &k;
        a /= &k;
        b /= &k;
        let (s, t) = (d.gcd(&a), d.gcd(&b));
        if s.is_one() && t.is_one() {
            break;
        }
        d = &d / (&s * &t);
        a = modulo(&(&a / &s), &d);
        b = modulo(&(&b / &t), &d);
        fp *= &t;
        sp *= &s;
    }
    if d.is_one() {
        a = Int::zero();
        b = Int::zero();
    }
    Normalized { ty: CyclicType { d, a, b }, first_power: fp, second_power: sp }
}

/// Which coordinate vanishes along a curve through a quotient point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    /// The curve `{first coordinate = 0}`.
    FirstZero,
    /// The curve `{second coordinate = 0}`.
    SecondZero,
}

/// `1/d (1, q)` with `q q' = 1 mod d`; `d = 1` is the smooth point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HJType {
    pub d: Int,
    pub q: Int,
    pub q_prime: Int,
}

impl HJType {
    pub fn smooth() -> Self {
        Self { d: Int::one(), q: Int::zero(), q_prime: Int::zero() }
    }

    pub fn is_smooth(&self) -> bool {
        self.d.is_one()
    }

    /// The same point with the two coordinates exchanged.
    pub fn swapped(&self) -> Self {
        Self { d: self.d.clone(), q: self.q_prime.clone(), q_prime: self.q.clone() }
    }

    /// Resolution chain, listed from the end meeting the `SecondZero`
    /// curve to the end meeting the `FirstZero` curve.
    pub fn chain(&self) -> BambooChain {
        hj_continued_fraction(&self.d, &self.q).expect("HJType invariants guarantee a chain")
    }

    /// Chain position adjacent to a curve through the point.
    pub fn attaching_index(&self, branch: Branch) -> usize {
        match branch {
            Branch::SecondZero => 0,
            Branch::FirstZero => self.chain().len() - 1,
        }
    }

    /// Difference between the self-intersection of a curve through the
    /// point and that of its strict transform on the resolution.
    pub fn correction(&self, branch: Branch) -> Rational {
        if self.is_smooth() {
            return Rational::zero();
        }
        match branch {
            Branch::SecondZero => ratio(&self.q, &self.d),
            Branch::FirstZero => ratio(&self.q_prime, &self.d),
        }
    }

    /// Toric rays of the chain curves, in chain order. The pair holds the
    /// vanishing orders of the first and second coordinates along the curve.
    pub fn rays(&self) -> Vec<(Rational, Rational)> {
        let kappas = self.chain().kappas;
        if kappas.is_empty() {
            return Vec::new();
        }
        let mut prev = (Rational::zero(), Rational::one());
        let mut cur = (ratio(&int(1), &self.d), ratio(&self.q, &self.d));
        let mut out = vec![cur.clone()];
        for k in &kappas[..kappas.len() - 1] {
            let k = Rational::from_integer(k.clone());
            let next = (&k * &cur.0 - &prev.0, &k * &cur.1 - &prev.1);
            prev = std::mem::replace(&mut cur, next);
            out.push(cur.clone());
        }
        out
    }
}

/// Hirzebruch-Jung type of a normalized cyclic type.
pub fn to_hj(t: &CyclicType) -> Result<HJType, QuotientError> {
    if !t.is_normalized() {
        return Err(QuotientError::NotNormalized { d: t.d.clone(), a: t.a.clone(), b: t.b.clone() });
    }
    if t.d.is_one() {
        return Ok(HJType::smooth());
    }
    let a_inv = mod_inverse(&t.a, &t.d).expect("normalized weight is a unit");
    let q = modulo(&(a_inv * &t.b), &t.d);
    let q_prime = mod_inverse(&q, &t.d).expect("normalized weight is a unit");
    Ok(HJType { d: t.d.clone(), q, q_prime })
}

/// Normalizes and converts in one step.
pub fn hj_of(t: &CyclicType) -> HJType {
    to_hj(&normalize_cyclic(t)).expect("normal form is normalized")
}

/// A quotient by a group with two generators of orders `d1`, `d2`; row `i`
/// of `weights` gives the exponents of generator `i` on `(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoRowType {
    pub d1: Int,
    pub d2: Int,
    pub weights: [[Int; 2]; 2],
}

impl TwoRowType {
    /// Both generators rewritten as powers of a primitive root of the
    /// common order `lcm(d1, d2)`.
    pub fn equalized(&self) -> (Int, [[Int; 2]; 2]) {
        let d = self.d1.lcm(&self.d2);
        let (s1, s2) = (&d / &self.d1, &d / &self.d2);
        let w = &self.weights;
        let row = |r: &[Int; 2], s: &Int| [modulo(&(&r[0] * s), &d), modulo(&(&r[1] * s), &d)];
        (d.clone(), [row(&w[0], &s1), row(&w[1], &s2)])
    }
}

/// Reduces a two-generator type to a cyclic one by making the weight
/// matrix upper triangular and dividing out the generator that acts on the
/// second coordinate alone.
pub fn reduce_two_row(t: &TwoRowType) -> CyclicType {
    let (d, [[a1, a2], [a3, a4]]) = t.equalized();
    let (a1, a2, a4) = if a3.is_zero() {
        (a1, a2, a4)
    } else if a1.is_zero() {
        (a3, a4, a2)
    } else {
        let g = a1.gcd(&a3);
        let (alpha, beta) = bezout_with_bounded_beta(&a1, &a3);
        let top = modulo(&(&alpha * &a2 + &beta * &a4), &d);
        let bottom = modulo(&((&a1 * &a4 - &a2 * &a3) / &g), &d);
        (g, top, bottom)
    };
    let b = &a2 * (&d / d.gcd(&a4));
    CyclicType { d, a: a1, b }
}

/// `(alpha, beta)` with `alpha a + beta c = gcd(a, c)` and
/// `0 <= beta < a / gcd(a, c)`; requires `a > 0`.
fn bezout_with_bounded_beta(a: &Int, c: &Int) -> (Int, Int) {
    let e = a.extended_gcd(c);
    let step = a / &e.gcd;
    let beta = modulo(&e.y, &step);
    let alpha = (&e.gcd - &beta * c) / a;
    (alpha, beta)
}

/// Linear chain of smooth rational curves with self-intersections
/// `-kappas[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BambooChain {
    pub kappas: Vec<Int>,
}

impl BambooChain {
    pub fn len(&self) -> usize {
        self.kappas.len()
    }

    pub fn is_empty(&self) -> bool {
        self.kappas.is_empty()
    }

    /// Tridiagonal intersection matrix of the chain.
    pub fn intersection_matrix(&self) -> IntMatrix {
        let r = self.len();
        let mut m = IntMatrix::zeros(r, r);
        for (i, k) in self.kappas.iter().enumerate() {
            m[(i, i)] = -k;
            if i + 1 < r {
                m[(i, i + 1)] = Int::one();
                m[(i + 1, i)] = Int::one();
            }
        }
        m
    }
}

/// Continued fraction `d/q = k_1 - 1/(k_2 - 1/(...))` with every `k_i >= 2`.
pub fn hj_continued_fraction(d: &Int, q: &Int) -> Result<BambooChain, QuotientError> {
    let bad = || QuotientError::BadInput { d: d.clone(), q: q.clone() };
    if d.is_one() {
        return if q.is_zero() { Ok(BambooChain { kappas: Vec::new() }) } else { Err(bad()) };
    }
    if *d < Int::one() || *q <= Int::zero() || q >= d || !d.gcd(q).is_one() {
        return Err(bad());
    }
    let (mut x, mut y) = (d.clone(), q.clone());
    let mut kappas = Vec::new();
    while !y.is_zero() {
        let k = x.div_ceil(&y);
        let next = &k * &y - &x;
        kappas.push(k);
        x = std::mem::replace(&mut y, next);
    }
    Ok(BambooChain { kappas })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalize_cyclic(&CyclicType::new(6, 2, 3)), CyclicType::new(1, 0, 0));
        assert_eq!(normalize_cyclic(&CyclicType::new(4, 2, 2)), CyclicType::new(2, 1, 1));
        assert_eq!(normalize_cyclic(&CyclicType::new(7, 1, 3)), CyclicType::new(7, 1, 3));
        assert_eq!(normalize_cyclic(&CyclicType::new(12, 8, -1)), CyclicType::new(3, 2, 2));
        let n = normalize_with_coordinates(&CyclicType::new(12, 8, -1));
        assert_eq!((n.first_power, n.second_power), (int(1), int(4)));
    }

    #[test]
    fn hj_types() {
        let t = to_hj(&CyclicType::new(3, 2, 2)).unwrap();
        assert_eq!((t.d.clone(), t.q.clone(), t.q_prime.clone()), (int(3), int(1), int(1)));
        let t = to_hj(&CyclicType::new(9, 1, 4)).unwrap();
        assert_eq!((t.q, t.q_prime), (int(4), int(7)));
        assert!(matches!(to_hj(&CyclicType::new(4, 2, 1)), Err(QuotientError::NotNormalized { .. })));
        assert!(to_hj(&CyclicType::new(1, 0, 0)).unwrap().is_smooth());
    }

    #[test]
    fn two_row_reduction() {
        let t = TwoRowType {
            d1: int(56),
            d2: int(56),
            weights: [[int(4), int(-4)], [int(-26), int(12)]],
        };
        let c = reduce_two_row(&t);
        assert_eq!(c.d, int(56));
        let hj = hj_of(&c);
        assert_eq!((hj.d, hj.q), (int(7), int(3)));
        let diag = TwoRowType { d1: int(6), d2: int(6), weights: [[int(1), int(2)], [int(0), int(3)]] };
        assert_eq!(reduce_two_row(&diag), CyclicType::new(6, 1, 4));
        let (a, c) = (int(4), int(30));
        let (alpha, beta) = bezout_with_bounded_beta(&a, &c);
        assert_eq!(&alpha * &a + &beta * &c, int(2));
        assert!(beta >= int(0) && beta < int(2));
    }

    #[test]
    fn continued_fractions() {
        assert_eq!(hj_continued_fraction(&int(7), &int(3)).unwrap().kappas, ints(&[3, 2, 2]));
        assert_eq!(hj_continued_fraction(&int(5), &int(1)).unwrap().kappas, ints(&[5]));
        assert_eq!(hj_continued_fraction(&int(5), &int(4)).unwrap().kappas, ints(&[2, 2, 2, 2]));
        assert!(hj_continued_fraction(&int(1), &int(0)).unwrap().is_empty());
        assert!(hj_continued_fraction(&int(6), &int(4)).is_err());
        assert!(hj_continued_fraction(&int(6), &int(0)).is_err());
    }

    #[test]
    fn rays_end_on_the_first_axis() {
        let t = to_hj(&CyclicType::new(7, 1, 3)).unwrap();
        let rays = t.rays();
        assert_eq!(rays.len(), 3);
        let last = rays.last().unwrap();
        let k = Rational::from_integer(t.chain().kappas[2].clone());
        assert_eq!((&k * &last.0 - &rays[1].0, &k * &last.1 - &rays[1].1), (Rational::one(), Rational::zero()));
        assert_eq!(t.correction(Branch::SecondZero), ratio(&int(3), &int(7)));
        assert_eq!(t.correction(Branch::FirstZero), ratio(&int(5), &int(7)));
    }
}
