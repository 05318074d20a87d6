//! Small number-theoretic helpers on arbitrary precision integers.

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::{Int, Rational};

/// Shorthand for building an [`Int`] from a machine integer.
pub fn int(v: i64) -> Int {
    Int::from(v)
}

/// Greatest common divisor of a list; `0` for the empty list.
pub fn gcd_all<'a, I: IntoIterator<Item = &'a Int>>(values: I) -> Int {
    values.into_iter().fold(Int::zero(), |acc, v| acc.gcd(v))
}

/// Least common multiple of a list; `1` for the empty list.
pub fn lcm_all<'a, I: IntoIterator<Item = &'a Int>>(values: I) -> Int {
    values.into_iter().fold(Int::one(), |acc, v| acc.lcm(v))
}

/// Non-negative remainder of `a` modulo a positive `m`.
pub fn modulo(a: &Int, m: &Int) -> Int {
    a.mod_floor(m)
}

/// Inverse of `a` modulo `m`, when it exists. Modulo 1 the inverse is 0.
pub fn mod_inverse(a: &Int, m: &Int) -> Option<Int> {
    if m.is_one() {
        return Some(Int::zero());
    }
    let e = modulo(a, m).extended_gcd(m);
    e.gcd.is_one().then(|| modulo(&e.x, m))
}

/// Exact quotient `a / b`, or `None` when `b` does not divide `a`.
pub fn exact_div(a: &Int, b: &Int) -> Option<Int> {
    if b.is_zero() {
        return None;
    }
    let (q, r) = a.div_rem(b);
    r.is_zero().then_some(q)
}

/// `base^exp` for a non-negative exponent given as an [`Int`].
pub fn pow_int(base: &Int, exp: &Int) -> Int {
    num_traits::pow(base.clone(), exp.to_usize().expect("exponent fits usize"))
}

/// `base^exp` over the rationals, allowing negative exponents.
pub fn pow_rational(base: &Rational, exp: &Int) -> Rational {
    let e = exp.abs().to_usize().expect("exponent fits usize");
    let p = num_traits::pow(base.clone(), e);
    if exp.is_negative() {
        p.recip()
    } else {
        p
    }
}

/// Returns the integer value of a rational, if it has denominator 1.
pub fn as_integer(r: &Rational) -> Option<Int> {
    r.is_integer().then(|| r.to_integer())
}

/// Builds the rational `n / d`.
pub fn ratio(n: &Int, d: &Int) -> Rational {
    Rational::new(n.clone(), d.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_and_lcm_of_lists() {
        let v = [int(12), int(18), int(30)];
        assert_eq!(gcd_all(&v), int(6));
        assert_eq!(lcm_all(&v), int(180));
        assert_eq!(gcd_all(&[]), int(0));
        assert_eq!(lcm_all(&[]), int(1));
    }

    #[test]
    fn inverses() {
        assert_eq!(mod_inverse(&int(3), &int(7)), Some(int(5)));
        assert_eq!(mod_inverse(&int(-1), &int(7)), Some(int(6)));
        assert_eq!(mod_inverse(&int(2), &int(4)), None);
        assert_eq!(mod_inverse(&int(5), &int(1)), Some(int(0)));
    }

    #[test]
    fn exact_division() {
        assert_eq!(exact_div(&int(12), &int(4)), Some(int(3)));
        assert_eq!(exact_div(&int(12), &int(5)), None);
        assert_eq!(exact_div(&int(12), &int(0)), None);
    }

    #[test]
    fn rational_powers() {
        let half = ratio(&int(1), &int(2));
        assert_eq!(pow_rational(&half, &int(-3)), ratio(&int(8), &int(1)));
        assert_eq!(pow_rational(&half, &int(0)), ratio(&int(1), &int(1)));
    }
}
