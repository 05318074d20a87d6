//! Intersection matrix of the Q-resolution, its determinant by elimination
//! and in closed form, the determinant of the singularity, and the
//! classification of the link as a rational or integral homology sphere.

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::{as_integer, gcd_all, lcm_all, pow_int, pow_rational, ratio};
use crate::linalg::{det_ratio, Matrix};
use crate::qres::{compute_qresolution, PointKind, QResolutionData, QresError};
use crate::semigroup::CharacteristicData;
use crate::{Int, Rational, RationalMatrix};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DetError {
    #[error("this computation needs g >= 3")]
    RequiresG3,
    #[error("index {s} outside 1..={max}")]
    IndexOutOfRange { s: usize, max: usize },
    #[error("inconsistent input lengths: {detail}")]
    MismatchedLengths { detail: String },
    #[error("internal consistency check failed: {check} ({detail})")]
    Inconsistent { check: &'static str, detail: String },
    #[error(transparent)]
    Qres(#[from] QresError),
}

fn inconsistent(check: &'static str, detail: String) -> DetError {
    DetError::Inconsistent { check, detail }
}

/// Vertex order used by [`build_intersection_matrix`]: the components of
/// `E_1`, then those of `E_2`, and so on. Returns `(level, component)`.
pub fn matrix_vertices(qr: &QResolutionData) -> Vec<(usize, usize)> {
    (1..qr.g())
        .flat_map(|k| (0..to_usize(&qr.r[k])).map(move |j| (k, j)))
        .collect()
}

fn to_usize(x: &Int) -> usize {
    x.to_usize().expect("component count fits usize")
}

/// Rational intersection matrix of the exceptional components of the
/// Q-resolution. Component `j` of `E_k` meets component `j / p_k` of
/// `E_(k+1)`.
pub fn build_intersection_matrix(qr: &QResolutionData) -> RationalMatrix {
    let verts = matrix_vertices(qr);
    let index = |k: usize, j: usize| verts.iter().position(|&v| v == (k, j)).expect("vertex exists");
    let mut m = RationalMatrix::zeros(verts.len(), verts.len());
    for (i, &(k, j)) in verts.iter().enumerate() {
        m[(i, i)] = -qr.a_at(k).clone();
        if k + 1 < qr.g() {
            let partner = index(k + 1, j / to_usize(qr.p_at(k)));
            let w = ratio(&Int::one(), qr.d_edge_at(k));
            m[(i, partner)] = w.clone();
            m[(partner, i)] = w;
        }
    }
    m
}

/// Exact determinant of a rational matrix.
pub fn det_exact(m: &RationalMatrix) -> Rational {
    det_ratio(m)
}

/// `R_0, ..., R_m` for inputs `a_1..a_m`, `p_1..p_(m-1)`, `d_1..d_(m-1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RSequence<T> {
    pub values: Vec<T>,
}

impl<T> RSequence<T> {
    pub fn get(&self, l: usize) -> &T {
        &self.values[l]
    }
}

fn check_lengths<T>(a: &[T], p: &[T], d: &[T]) -> Result<(), DetError> {
    if a.is_empty() || p.len() + 1 != a.len() || d.len() != p.len() {
        return Err(DetError::MismatchedLengths {
            detail: format!("a: {}, p: {}, d: {}", a.len(), p.len(), d.len()),
        });
    }
    Ok(())
}

/// Three-term recurrence `R_(l+1) = a_(l+1) R_l - p_l R_(l-1) / d_l^2`.
pub fn r_by_recurrence<T: Clone + Num>(a: &[T], p: &[T], d: &[T]) -> Result<Vec<T>, DetError> {
    check_lengths(a, p, d)?;
    let mut r = vec![T::one(), a[0].clone()];
    for l in 1..a.len() {
        let next = a[l].clone() * r[l].clone() - p[l - 1].clone() * r[l - 1].clone() / (d[l - 1].clone() * d[l - 1].clone());
        r.push(next);
    }
    Ok(r)
}

/// Signed sum over sets of pairwise non-adjacent edges `(k, k+1)`, each
/// weighted by `p_k / d_k^2` times the product of `a` over the untouched
/// indices.
pub fn r_by_subsets<T: Clone + Num>(a: &[T], p: &[T], d: &[T]) -> Result<Vec<T>, DetError> {
    check_lengths(a, p, d)?;
    let mut out = vec![T::one()];
    for l in 1..=a.len() {
        let edges = l - 1;
        let mut total = T::zero();
        for mask in 0u64..(1u64 << edges) {
            if mask & (mask >> 1) != 0 {
                continue;
            }
            let mut term = T::one();
            let mut covered = vec![false; l];
            for k in (0..edges).filter(|k| mask >> k & 1 == 1) {
                term = term * p[k].clone() / (d[k].clone() * d[k].clone());
                covered[k] = true;
                covered[k + 1] = true;
            }
            for (k, _) in covered.iter().enumerate().filter(|(_, c)| !**c) {
                term = term * a[k].clone();
            }
            if mask.count_ones() % 2 == 1 {
                total = total - term;
            } else {
                total = total + term;
            }
        }
        out.push(total);
    }
    Ok(out)
}

/// Both routes for the R-sequence, asserted equal.
pub fn r_sequence<T: Clone + Num + Debug>(a: &[T], p: &[T], d: &[T]) -> Result<RSequence<T>, DetError> {
    let rec = r_by_recurrence(a, p, d)?;
    let direct = r_by_subsets(a, p, d)?;
    if rec != direct {
        return Err(inconsistent("R-sequence routes agree", format!("{rec:?} vs {direct:?}")));
    }
    Ok(RSequence { values: rec })
}

fn q(x: &Int) -> Rational {
    Rational::from_integer(x.clone())
}

fn sign(exp: &Int) -> Rational {
    if exp.is_odd() {
        -Rational::one()
    } else {
        Rational::one()
    }
}

/// Closed-form determinant of the Q-resolution intersection matrix, by the
/// R-sequence product and by the explicit quotient of multiplicities and
/// orders; the two are asserted equal.
pub fn det_closed_form(qr: &QResolutionData) -> Result<Rational, DetError> {
    let g = qr.g();
    if g < 3 {
        return Err(DetError::RequiresG3);
    }
    let sum_r: Int = qr.r[1..].iter().sum();
    let ps: Vec<Rational> = qr.p.iter().map(q).collect();
    let ds: Vec<Rational> = qr.d_edge.iter().map(q).collect();
    let rs = r_sequence(&qr.a, &ps, &ds)?;
    let mut product = sign(&sum_r) * rs.get(g - 1);
    for l in 1..g - 1 {
        product *= pow_rational(rs.get(l), &(&qr.r[l] - &qr.r[l + 1]));
    }

    let cd = &qr.cd;
    let mut num = q(&cd.n[g]);
    for k in 2..g {
        num *= pow_rational(&q(qr.n_mult(k)), &(&qr.r[k - 1] - &qr.r[k]));
    }
    let mut den = pow_rational(&q(qr.n_mult(1)), &qr.r[1]) * q(&qr.d_last);
    for k in 1..g - 1 {
        den *= pow_rational(&q(qr.d_edge_at(k)), &qr.r[k]);
    }
    let quotient = sign(&sum_r) * num / den;
    if product != quotient {
        return Err(inconsistent("determinant closed forms agree", format!("{product} vs {quotient}")));
    }
    Ok(product)
}

/// Tridiagonal matrix with diagonal `-a` and off-diagonal `1/d`.
fn tridiagonal(a: &[Rational], d: &[Int]) -> RationalMatrix {
    let n = a.len();
    let mut m = RationalMatrix::zeros(n, n);
    for i in 0..n {
        m[(i, i)] = -a[i].clone();
        if i + 1 < n {
            m[(i, i + 1)] = ratio(&Int::one(), &d[i]);
            m[(i + 1, i)] = ratio(&Int::one(), &d[i]);
        }
    }
    m
}

/// Determinants of the tail block `B_s` (levels `s..=g-1`) and of the head
/// block `B'_s` (levels `1..=s`) of the tridiagonal matrix built from the
/// `a_k` and edge orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BDeterminants {
    pub tail: Rational,
    pub head: Rational,
}

pub fn det_b_matrices(qr: &QResolutionData, s: usize) -> Result<BDeterminants, DetError> {
    let g = qr.g();
    if s == 0 || s > g - 1 {
        return Err(DetError::IndexOutOfRange { s, max: g - 1 });
    }
    let tail = det_exact(&tridiagonal(&qr.a[s - 1..], &qr.d_edge[s - 1..]));
    let head = det_exact(&tridiagonal(&qr.a[..s], &qr.d_edge[..s.min(qr.d_edge.len())]));
    Ok(BDeterminants { tail, head })
}

/// Determinant of the singularity: the order of the torsion of the first
/// homology of the link.
///
/// For `g >= 3` it is the product over levels of powers of `N_k / M_k` and
/// `N_k / lcm(n_k, ..., n_g)`, cross-checked against
/// `|det A| * d_P * prod(orders of all quotient points)`. For `g = 2` the
/// surface is a Brieskorn-Pham surface and the cross-check uses its
/// determinant formula instead.
pub fn det_s(cd: &CharacteristicData) -> Result<Int, DetError> {
    let qr = compute_qresolution(cd)?;
    det_s_of(&qr)
}

/// [`det_s`] on an already computed Q-resolution.
pub fn det_s_of(qr: &QResolutionData) -> Result<Int, DetError> {
    let cd = &qr.cd;
    let g = cd.g;
    let orders = census_order_product(qr);
    if g == 2 {
        let via_blowup = qr.a_at(1) * q(&orders);
        let bp = classify_brieskorn_pham(&cd.n[0], &cd.n[1], &cd.n[2]).determinant;
        if via_blowup != q(&bp) {
            return Err(inconsistent("determinant routes agree", format!("{via_blowup} vs {bp}")));
        }
        return Ok(bp);
    }
    let mut product = Int::one();
    for k in 1..g {
        let nk = qr.n_mult(k);
        let base1 = nk / &qr.m[k];
        let exp1 = &cd.beta[k] / &qr.m[k] - &qr.r[k];
        let base2 = nk / lcm_all(&cd.n[k..]);
        let exp2 = &qr.r[k - 1] - &qr.r[k];
        product *= pow_int(&base1, &exp1) * pow_int(&base2, &exp2);
    }
    let via_matrix = det_closed_form(qr)?.abs() * q(&orders);
    let via_matrix = as_integer(&via_matrix)
        .ok_or_else(|| inconsistent("determinant is an integer", via_matrix.to_string()))?;
    if via_matrix != product {
        return Err(inconsistent("determinant routes agree", format!("{product} vs {via_matrix}")));
    }
    Ok(product)
}

/// Product of the orders of every quotient point of the Q-resolution,
/// each counted with multiplicity.
pub fn census_order_product(qr: &QResolutionData) -> Int {
    qr.census.iter().map(|c| pow_int(&c.hj.d, &c.count)).product()
}

/// Homology type of the link.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LinkKind {
    /// Not a rational homology sphere.
    NotQHS,
    /// Rational but not integral homology sphere.
    QHS,
    /// Integral homology sphere.
    ZHS,
}

impl std::fmt::Display for LinkKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            LinkKind::NotQHS => "NotQHS",
            LinkKind::QHS => "QHS",
            LinkKind::ZHS => "ZHS",
        })
    }
}

/// A gcd evaluated while classifying.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GcdWitness {
    pub label: String,
    pub left: Int,
    pub right: Int,
    pub value: Int,
}

impl GcdWitness {
    fn new(label: String, left: &Int, right: &Int) -> Self {
        Self { label, left: left.clone(), right: right.clone(), value: left.gcd(right) }
    }

    pub fn is_one(&self) -> bool {
        self.value.is_one()
    }
}

impl std::fmt::Display for GcdWitness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: gcd({}, {}) = {}", self.label, self.left, self.right, self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkClass {
    pub kind: LinkKind,
    /// Per-level gcds deciding rationality.
    pub rational_witnesses: Vec<(GcdWitness, GcdWitness)>,
    /// Gcds deciding integrality.
    pub integral_witnesses: Vec<GcdWitness>,
}

/// Classification from the characteristic integers alone.
///
/// Rational iff at every level `k` one of `gcd(n_k, L_k)` and
/// `gcd(beta_k / e_k, L_k)` is 1, with `L_k = lcm(n_(k+1), ..., n_g)`.
/// Integral iff `n_0, ..., n_g` are pairwise coprime and
/// `gcd(beta_k / e_k, e_k) = 1` for `2 <= k <= g-1`.
pub fn classify_link(cd: &CharacteristicData) -> LinkClass {
    let g = cd.g;
    let rational_witnesses: Vec<_> = (1..g)
        .map(|k| {
            let lk = lcm_all(&cd.n[k + 1..]);
            (
                GcdWitness::new(format!("gcd(n_{k}, L_{k})"), &cd.n[k], &lk),
                GcdWitness::new(format!("gcd(beta_{k}/e_{k}, L_{k})"), &cd.reduced_beta(k), &lk),
            )
        })
        .collect();
    let mut integral_witnesses = Vec::new();
    for i in 0..=g {
        for j in i + 1..=g {
            integral_witnesses.push(GcdWitness::new(format!("gcd(n_{i}, n_{j})"), &cd.n[i], &cd.n[j]));
        }
    }
    for k in 2..g {
        integral_witnesses.push(GcdWitness::new(format!("gcd(beta_{k}/e_{k}, e_{k})"), &cd.reduced_beta(k), &cd.e[k]));
    }
    let rational = rational_witnesses.iter().all(|(a, b)| a.is_one() || b.is_one());
    let integral = integral_witnesses.iter().all(GcdWitness::is_one);
    let kind = match (rational, integral) {
        (true, true) => LinkKind::ZHS,
        (true, false) => LinkKind::QHS,
        (false, true) => unreachable!("integral criterion implies the rational one"),
        (false, false) => LinkKind::NotQHS,
    };
    LinkClass { kind, rational_witnesses, integral_witnesses }
}

/// Invariants of the Brieskorn-Pham surface `x^a1 + y^a2 + z^a3 = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrieskornPham {
    pub kind: LinkKind,
    pub genus: Int,
    pub determinant: Int,
    pub e: Int,
    pub alpha: [Int; 3],
    pub d: [Int; 3],
}

/// Genus of the central curve, determinant and link type of a
/// Brieskorn-Pham surface. Requires every exponent to be at least 2.
pub fn classify_brieskorn_pham(a1: &Int, a2: &Int, a3: &Int) -> BrieskornPham {
    let a = [a1.clone(), a2.clone(), a3.clone()];
    assert!(a.iter().all(|x| *x >= Int::from(2)), "exponents must be at least 2");
    let e = gcd_all(&a);
    let pair = |i: usize, j: usize| a[i].gcd(&a[j]) / &e;
    let alpha = [pair(1, 2), pair(0, 2), pair(0, 1)];
    let d: [Int; 3] = std::array::from_fn(|i| &a[i] / (&e * &alpha[(i + 1) % 3] * &alpha[(i + 2) % 3]));
    let sum: Int = alpha.iter().sum();
    let genus = (&e * &e * &alpha[0] * &alpha[1] * &alpha[2] - &e * sum + 2) / 2;
    let determinant = (0..3).fold(e.clone(), |acc, i| acc * pow_int(&d[i], &(&e * &alpha[i] - 1)));

    let all_one = alpha.iter().all(One::is_one);
    let two_ones = (0..3).any(|i| alpha[(i + 1) % 3].is_one() && alpha[(i + 2) % 3].is_one());
    let rational = (all_one && e == Int::from(2)) || (e.is_one() && two_ones);
    let integral = (0..3).all(|i| a[i].gcd(&a[(i + 1) % 3]).is_one());
    let kind = if integral {
        LinkKind::ZHS
    } else if rational {
        LinkKind::QHS
    } else {
        LinkKind::NotQHS
    };
    BrieskornPham { kind, genus, determinant, e, alpha, d }
}

/// Number of quotient points of a given kind, for reporting.
pub fn census_count(qr: &QResolutionData, kind: PointKind) -> Int {
    qr.entry(kind).count.clone()
}

/// Leading-minor test of negative definiteness for a rational matrix.
pub fn is_negative_definite(m: &RationalMatrix) -> bool {
    crate::linalg::is_negative_definite(m)
}

/// The `(k, k)` diagonal block size pattern `r_1, ..., r_(g-1)`.
pub fn block_sizes(qr: &QResolutionData) -> Vec<Int> {
    qr.r[1..].to_vec()
}

/// Entrywise check that a matrix only links adjacent levels.
pub fn couples_only_adjacent_levels(qr: &QResolutionData, m: &Matrix<Rational>) -> bool {
    let verts = matrix_vertices(qr);
    (0..verts.len()).all(|i| {
        (0..verts.len()).all(|j| {
            let (ki, kj) = (verts[i].0, verts[j].0);
            m[(i, j)].is_zero() || i == j || ki.abs_diff(kj) == 1
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::semigroup::derive_from_u64;

    fn qr(beta: &[u64]) -> QResolutionData {
        compute_qresolution(&derive_from_u64(beta).unwrap()).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        ratio(&int(n), &int(d))
    }

    #[test]
    fn matrix_of_the_three_exponent_example() {
        let q = qr(&[8, 12, 26, 53]);
        let m = build_intersection_matrix(&q);
        let expected = Matrix::from_rows(vec![
            vec![r(-13, 21), r(0, 1), r(1, 7)],
            vec![r(0, 1), r(-13, 21), r(1, 7)],
            vec![r(1, 7), r(1, 7), r(-1, 7)],
        ]);
        assert_eq!(m, expected);
        assert_eq!(det_exact(&m), r(-13, 441));
        assert_eq!(det_closed_form(&q).unwrap(), r(-13, 441));
        assert!(is_negative_definite(&m));
        assert!(couples_only_adjacent_levels(&q, &m));
    }

    #[test]
    fn r_sequence_small_cases() {
        let a = [r(2, 3), r(5, 7), r(3, 2)];
        let p = [r(2, 1), r(3, 1)];
        let d = [r(5, 1), r(4, 1)];
        let rs = r_sequence(&a, &p, &d).unwrap();
        assert_eq!(rs.get(1), &a[0]);
        assert_eq!(rs.get(2), &(&a[0] * &a[1] - &p[0] / (&d[0] * &d[0])));
        let r3 = &a[0] * &a[1] * &a[2] - &p[0] * &a[2] / (&d[0] * &d[0]) - &p[1] * &a[0] / (&d[1] * &d[1]);
        assert_eq!(rs.get(3), &r3);
        assert!(matches!(r_sequence(&a, &p[..1], &d), Err(DetError::MismatchedLengths { .. })));
    }

    #[test]
    fn b_blocks() {
        let q = qr(&[70, 105, 215, 1511]);
        let b = det_b_matrices(&q, 2).unwrap();
        assert_eq!(b.tail, -q.a_at(2).clone());
        let d12 = q.d_edge_at(1);
        assert_eq!(b.tail.abs(), ratio(&int(1), d12));
        let b1 = det_b_matrices(&q, 1).unwrap();
        assert_eq!(b1.head, -q.a_at(1).clone());
        assert_eq!(b1.head, -ratio(q.n_mult(2), &(q.n_mult(1) * d12)));
        assert!(matches!(det_b_matrices(&q, 3), Err(DetError::IndexOutOfRange { .. })));
    }

    #[test]
    fn determinant_of_the_singularity() {
        assert_eq!(det_s(&derive_from_u64(&[8, 12, 26, 53]).unwrap()).unwrap(), int(117));
        assert_eq!(det_s(&derive_from_u64(&[70, 105, 215, 1511]).unwrap()).unwrap(), int(1));
        assert!(det_s(&derive_from_u64(&[70, 105, 225, 1579]).unwrap()).unwrap() > int(1));
        assert_eq!(det_s(&derive_from_u64(&[6, 15, 31]).unwrap()).unwrap(), int(1));
        assert_eq!(det_s(&derive_from_u64(&[6, 9, 19]).unwrap()).unwrap(), int(4));
    }

    #[test]
    fn link_classes() {
        let c = classify_link(&derive_from_u64(&[70, 105, 215, 1511]).unwrap());
        assert_eq!(c.kind, LinkKind::ZHS);
        assert!(c.integral_witnesses.iter().any(|w| w.left == int(43) && w.right == int(5) && w.is_one()));
        let c = classify_link(&derive_from_u64(&[70, 105, 225, 1579]).unwrap());
        assert_eq!(c.kind, LinkKind::QHS);
        assert!(c.integral_witnesses.iter().any(|w| w.left == int(45) && w.right == int(5) && w.value == int(5)));
        let c = classify_link(&derive_from_u64(&[24, 36, 75, 311]).unwrap());
        assert_eq!(c.kind, LinkKind::NotQHS);
        let (a, b) = &c.rational_witnesses[0];
        assert_eq!((a.value.clone(), b.value.clone()), (int(2), int(3)));
    }

    #[test]
    fn brieskorn_pham_examples() {
        let bp = classify_brieskorn_pham(&int(2), &int(3), &int(5));
        assert_eq!((bp.kind, bp.genus.clone(), bp.determinant.clone()), (LinkKind::ZHS, int(0), int(1)));
        let bp = classify_brieskorn_pham(&int(2), &int(2), &int(2));
        assert_eq!((bp.kind, bp.determinant.clone()), (LinkKind::QHS, int(2)));
        let bp = classify_brieskorn_pham(&int(6), &int(10), &int(15));
        assert_eq!(bp.alpha, [int(5), int(3), int(2)]);
        assert_eq!((bp.kind, bp.genus), (LinkKind::NotQHS, int(11)));
    }
}
