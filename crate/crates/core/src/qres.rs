//! Combinatorics of the good Q-resolution: exceptional divisors, their
//! multiplicities, the quotient points sitting on them, genera and rational
//! self-intersection numbers.
//!
//! Levels are numbered `k = 1..=g-1`; accessors taking a level are
//! 1-based, matching the indexing of the exceptional divisors `E_k`.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::arith::{as_integer, exact_div, gcd_all, lcm_all, ratio};
use crate::quotient::{
    normalize_with_coordinates, reduce_two_row, to_hj, Branch, CyclicType, HJType, TwoRowType,
};
use crate::semigroup::CharacteristicData;
use crate::{Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QresError {
    #[error("internal consistency check failed: {check} ({detail})")]
    Inconsistent { check: &'static str, detail: String },
    #[error("this computation needs g >= 3")]
    RequiresG3,
}

fn inconsistent(check: &'static str, detail: String) -> QresError {
    QresError::Inconsistent { check, detail }
}

/// Position of a singular point of the Q-resolved surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PointKind {
    /// On `E_1`, where the strict transform of `{x_0 = 0}` crosses it.
    Q0,
    /// On `E_level`, where the strict transform of `{x_level = 0}` crosses it.
    Q { level: usize },
    /// Intersection of `E_level` with `E_(level+1)`.
    Edge { level: usize },
    /// Where the strict transform of the curve meets `E_(g-1)`.
    P,
}

impl PointKind {
    /// The exceptional curves through such a point, with the local
    /// coordinate vanishing on each.
    pub fn curves(&self, g: usize) -> Vec<(usize, Branch)> {
        match *self {
            PointKind::Q0 => vec![(1, Branch::SecondZero)],
            PointKind::Q { level } => vec![(level, Branch::FirstZero)],
            PointKind::Edge { level } => vec![(level, Branch::FirstZero), (level + 1, Branch::SecondZero)],
            PointKind::P => vec![(g - 1, Branch::FirstZero)],
        }
    }

    pub fn label(&self) -> String {
        match self {
            PointKind::Q0 => "Q0".into(),
            PointKind::Q { level } => format!("Q{level}"),
            PointKind::Edge { level } => format!("Q{level}{}", level + 1),
            PointKind::P => "P".into(),
        }
    }
}

/// One class of equivalent singular points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CensusEntry {
    pub kind: PointKind,
    /// Total number of such points.
    pub count: Int,
    /// Number of such points on each component of the carrying level.
    /// For an edge point this is one per component of the lower level.
    pub per_component: Int,
    /// Local type, with the first coordinate as listed by [`PointKind::curves`].
    pub hj: HJType,
}

/// The strict transform of the curve near `P`, written in the normalized
/// local coordinates `(u, v)` as `v^second_exponent = u^first_exponent`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrictCurve {
    pub second_exponent: Int,
    pub first_exponent: Int,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QResolutionData {
    pub cd: CharacteristicData,
    /// `lcm(n_{k+1}, ..., n_g)` for `k = 0..=g`.
    pub l: Vec<Int>,
    /// `r_k` for `k = 0..g`.
    pub r: Vec<Int>,
    /// `M_k` for `k = 0..g`.
    pub m: Vec<Int>,
    /// `N_k` stored at `k - 1`.
    pub mult: Vec<Int>,
    /// `p_k = r_k / r_{k+1}` stored at `k - 1`, `k = 1..=g-2`.
    pub p: Vec<Int>,
    pub census: Vec<CensusEntry>,
    /// Genus of every component of `E_k`, stored at `k - 1`.
    pub genus: Vec<Int>,
    /// `a_k = -E_kj^2`, stored at `k - 1`.
    pub a: Vec<Rational>,
    /// Order at the edge points between levels `k` and `k+1`, stored at `k - 1`.
    pub d_edge: Vec<Int>,
    /// Order at `P`.
    pub d_last: Int,
    pub strict_curve: StrictCurve,
}

impl QResolutionData {
    pub fn g(&self) -> usize {
        self.cd.g
    }

    pub fn n_mult(&self, k: usize) -> &Int {
        &self.mult[k - 1]
    }

    pub fn r_at(&self, k: usize) -> &Int {
        &self.r[k]
    }

    pub fn p_at(&self, k: usize) -> &Int {
        &self.p[k - 1]
    }

    pub fn d_edge_at(&self, k: usize) -> &Int {
        &self.d_edge[k - 1]
    }

    pub fn a_at(&self, k: usize) -> &Rational {
        &self.a[k - 1]
    }

    pub fn entry(&self, kind: PointKind) -> &CensusEntry {
        self.census.iter().find(|c| c.kind == kind).expect("census covers every point kind")
    }

    /// Number of components of `E_k` in total over all levels.
    pub fn component_count(&self) -> Int {
        self.r[1..].iter().sum()
    }
}

/// Builds the full Q-resolution description and cross-checks every quantity
/// that admits two derivations.
pub fn compute_qresolution(cd: &CharacteristicData) -> Result<QResolutionData, QresError> {
    let g = cd.g;
    let (beta, e, n) = (&cd.beta, &cd.e, &cd.n);
    let l: Vec<Int> = (0..=g).map(|k| lcm_all(&n[k + 1..])).collect();
    let r: Vec<Int> = (0..g).map(|k| &e[k] / &l[k]).collect();
    let m: Vec<Int> = (0..g)
        .map(|k| {
            let mut v = vec![cd.reduced_beta(k)];
            v.extend(n[k + 1..].iter().cloned());
            lcm_all(&v)
        })
        .collect();
    let mult: Vec<Int> = (1..g)
        .map(|k| {
            let mut v = vec![cd.reduced_beta(k)];
            v.extend(n[k..].iter().cloned());
            lcm_all(&v)
        })
        .collect();
    let big_n = |k: usize| &mult[k - 1];

    if !r[g - 1].is_one() {
        return Err(inconsistent("last divisor irreducible", format!("r_(g-1) = {}", r[g - 1])));
    }
    if r[0] != &beta[0] / &m[0] {
        return Err(inconsistent("r_0 = beta_0 / M_0", format!("{} vs {}", r[0], &beta[0] / &m[0])));
    }
    let mut p = Vec::new();
    for k in 1..g.saturating_sub(1) {
        p.push(exact_div(&r[k], &r[k + 1]).ok_or_else(|| {
            inconsistent("r_(k+1) divides r_k", format!("k = {k}: {} / {}", r[k], r[k + 1]))
        })?);
    }

    let mut census = Vec::new();

    // Q_0 on E_1, coordinates (x_0, x_1); E_1 is {x_1 = 0}.
    let q0_order = gcd_all(&(1..=g).map(|j| &n[0] * &beta[0] / &n[j]).collect::<Vec<_>>());
    let q0 = hj_checked(&CyclicType { d: q0_order, a: beta[0].clone(), b: Int::from(-1) })?;
    expect_eq("d_0 = N_1 / M_0", &q0.d, &ratio_int(big_n(1), &m[0])?)?;
    let q0_count = &beta[0] / &m[0];
    census.push(CensusEntry {
        kind: PointKind::Q0,
        per_component: divide("Q_0 points spread over E_1", &q0_count, &r[1])?,
        count: q0_count,
        hj: q0,
    });

    // Q_k on E_k, coordinates (x_0, x_k); E_k is {x_0 = 0}.
    for k in 1..g {
        let mut parts = vec![e[k - 1].clone()];
        parts.extend((k + 1..=g).map(|j| &n[k] * &beta[k] / &n[j]));
        let hj = hj_checked(&CyclicType { d: gcd_all(&parts), a: Int::from(-1), b: beta[k].clone() })?;
        let d1 = ratio_int(big_n(k), &m[k])?;
        let d2 = ratio_int(&(&n[k] * &r[k]), &r[k - 1])?;
        let d3 = &n[k] / n[k].gcd(&l[k]);
        expect_eq("d_k = N_k / M_k", &hj.d, &d1)?;
        expect_eq("d_k = n_k r_k / r_(k-1)", &d1, &d2)?;
        expect_eq("d_k = n_k / gcd(n_k, L_k)", &d1, &d3)?;
        let count = &beta[k] / &m[k];
        census.push(CensusEntry {
            kind: PointKind::Q { level: k },
            per_component: divide("Q_k points spread over E_k", &count, &r[k])?,
            count,
            hj,
        });
    }

    // Q_{k(k+1)}, coordinates (x_0, x_{k+1}); E_k is {x_0 = 0}.
    let mut d_edge = Vec::new();
    for k in 1..g - 1 {
        let diff = &n[k + 1] * &beta[k + 1] - &n[k] * &beta[k];
        let two_row = TwoRowType {
            d1: divide("L_k divides the edge difference", &diff, &l[k])?,
            d2: &diff * &e[k + 1],
            weights: [
                [Int::one(), Int::from(-1)],
                [-beta[k + 1].clone(), &n[k] * &beta[k] / &n[k + 1]],
            ],
        };
        let hj = to_hj(&crate::quotient::normalize_cyclic(&reduce_two_row(&two_row)))
            .map_err(|err| inconsistent("edge type normalizes", err.to_string()))?;
        let closed = ratio(&(&r[k] * big_n(k) * big_n(k + 1) * &diff), &(&n[k] * &n[k + 1] * &beta[k] * &beta[k + 1]));
        let closed = as_integer(&closed)
            .ok_or_else(|| inconsistent("edge order is an integer", closed.to_string()))?;
        expect_eq("edge order: closed form vs two-row reduction", &closed, &hj.d)?;
        d_edge.push(closed);
        census.push(CensusEntry {
            kind: PointKind::Edge { level: k },
            count: r[k].clone(),
            per_component: Int::one(),
            hj,
        });
    }

    // P on E_(g-1), coordinates (x_0, x_g); E_(g-1) is {x_0 = 0}.
    let c = &n[g - 1] * &beta[g - 1] / &n[g];
    let norm = normalize_with_coordinates(&CyclicType { d: n[g].clone(), a: Int::from(-1), b: c });
    let hj_p = to_hj(&norm.ty).map_err(|err| inconsistent("P type normalizes", err.to_string()))?;
    let d_formula = &n[g] / (n[g - 1].gcd(&n[g]) * (&beta[g - 1] / &n[g]).gcd(&n[g]));
    expect_eq("order at P", &hj_p.d, &d_formula)?;
    let tail_exp = &n[g] * &beta[g] - &n[g - 1] * &beta[g - 1];
    let strict_curve = StrictCurve {
        second_exponent: divide("curve exponent of x_g", &n[g], &norm.second_power)?,
        first_exponent: divide("curve exponent of x_0", &tail_exp, &norm.first_power)?,
    };
    let d_last = hj_p.d.clone();
    census.push(CensusEntry { kind: PointKind::P, count: Int::one(), per_component: Int::one(), hj: hj_p });

    let mut qr = QResolutionData {
        cd: cd.clone(),
        l,
        r,
        m,
        mult,
        p,
        census,
        genus: Vec::new(),
        a: Vec::new(),
        d_edge,
        d_last,
        strict_curve,
    };
    qr.genus = (1..g).map(|k| exceptional_genus(&qr, k)).collect::<Result<_, _>>()?;
    qr.a = self_intersections(&qr);
    Ok(qr)
}

fn hj_checked(t: &CyclicType) -> Result<HJType, QresError> {
    to_hj(&crate::quotient::normalize_cyclic(t)).map_err(|err| inconsistent("local type normalizes", err.to_string()))
}

fn ratio_int(a: &Int, b: &Int) -> Result<Int, QresError> {
    exact_div(a, b).ok_or_else(|| inconsistent("exact quotient", format!("{a} / {b}")))
}

fn divide(check: &'static str, a: &Int, b: &Int) -> Result<Int, QresError> {
    exact_div(a, b).ok_or_else(|| inconsistent(check, format!("{a} / {b}")))
}

fn expect_eq(check: &'static str, left: &Int, right: &Int) -> Result<(), QresError> {
    if left == right {
        Ok(())
    } else {
        Err(inconsistent(check, format!("{left} != {right}")))
    }
}

/// Genus of each component of `E_k`, from the gcd formula, checked against
/// the Euler characteristic obtained by counting the special points.
pub fn exceptional_genus(qr: &QResolutionData, k: usize) -> Result<Int, QresError> {
    let cd = &qr.cd;
    let g = cd.g;
    let (n, beta) = (&cd.n, &cd.beta);
    let lk = &qr.l[k];
    let twice = (n[k].gcd(lk) - 1) * (cd.reduced_beta(k).gcd(lk) - 1);
    let genus = divide("genus is an integer", &twice, &Int::from(2))?;

    let mut chi = -ratio(&(&n[k] * &beta[k]), qr.n_mult(k));
    let mut add = |x: &Int| chi += Rational::from_integer(x.clone());
    if k == 1 {
        add(&(&beta[0] / &qr.m[0]));
    }
    add(&(&beta[k] / &qr.m[k]));
    if k > 1 {
        add(&qr.r[k - 1]);
    }
    if k < g - 1 {
        add(&qr.r[k]);
    } else {
        add(&Int::one());
    }
    let per_component = chi / Rational::from_integer(qr.r[k].clone());
    let from_chi = (Rational::from_integer(Int::from(2)) - per_component) / Rational::from_integer(Int::from(2));
    if from_chi != Rational::from_integer(genus.clone()) {
        return Err(inconsistent("genus from Euler characteristic", format!("k = {k}: {from_chi} vs {genus}")));
    }
    Ok(genus)
}

/// `a_k = -E_kj^2` from the vanishing of the pull-back of the curve against
/// every exceptional component.
pub fn self_intersections(qr: &QResolutionData) -> Vec<Rational> {
    let g = qr.g();
    let n = &qr.cd.n;
    let nk = |k: usize| Rational::from_integer(qr.n_mult(k).clone());
    let de = |k: usize| Rational::from_integer(qr.d_edge_at(k).clone());
    let y_term = ratio(&n[g], &qr.d_last);
    (1..g)
        .map(|k| {
            let lower = if k > 1 {
                ratio(&qr.r[k - 1], &qr.r[k]) * nk(k - 1) / de(k - 1)
            } else {
                Rational::zero()
            };
            let upper = if k < g - 1 { nk(k + 1) / de(k) } else { y_term.clone() };
            (lower + upper) / nk(k)
        })
        .collect()
}

/// Whether the last exceptional curve can be blown down.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LastCurve {
    /// Rupture curve; never contractible.
    Rupture,
    /// Two neighbours; contractibility depends on the full resolution.
    Possible,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuptureCensus {
    /// Components guaranteed to be rupture curves.
    pub rupture_count: Int,
    pub last: LastCurve,
}

/// Counts the rupture components predicted by the Q-resolution alone.
pub fn rupture_census(qr: &QResolutionData) -> Result<RuptureCensus, QresError> {
    let g = qr.g();
    if g < 3 {
        return Err(QresError::RequiresG3);
    }
    let mut count: Int = qr.r[1..g - 1].iter().sum();
    let last = if qr.r[g - 2] == Int::from(2) && qr.genus[g - 2].is_zero() {
        LastCurve::Possible
    } else {
        count += 1;
        LastCurve::Rupture
    };
    debug_assert!(!count.is_negative());
    Ok(RuptureCensus { rupture_count: count, last })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::semigroup::derive_from_u64;

    fn qr(beta: &[u64]) -> QResolutionData {
        compute_qresolution(&derive_from_u64(beta).unwrap()).unwrap()
    }

    #[test]
    fn three_exponent_example() {
        let q = qr(&[8, 12, 26, 53]);
        assert_eq!(q.r, vec![int(4), int(2), int(1)]);
        assert_eq!(q.mult, vec![int(6), int(26)]);
        let q0 = q.entry(PointKind::Q0);
        assert_eq!((q0.count.clone(), q0.per_component.clone()), (int(4), int(2)));
        assert_eq!((q0.hj.d.clone(), q0.hj.q.clone()), (int(3), int(1)));
        assert!(q.entry(PointKind::Q { level: 1 }).hj.is_smooth());
        assert!(q.entry(PointKind::Q { level: 2 }).hj.is_smooth());
        assert!(q.entry(PointKind::P).hj.is_smooth());
        let edge = q.entry(PointKind::Edge { level: 1 });
        assert_eq!((edge.hj.d.clone(), edge.hj.q.clone(), edge.count.clone()), (int(7), int(3), int(2)));
        assert_eq!(q.a, vec![ratio(&int(13), &int(21)), ratio(&int(1), &int(7))]);
        assert_eq!(q.genus, vec![int(0), int(0)]);
        assert_eq!(q.d_edge, vec![int(7)]);
        assert_eq!(q.p, vec![int(2)]);
    }

    #[test]
    fn integral_family_has_irreducible_levels() {
        let q = qr(&[70, 105, 215, 1511]);
        assert!(q.r[1..].iter().all(|r| r.is_one()));
        let cd = &q.cd;
        for k in 1..3 {
            assert_eq!(q.n_mult(k), &(&cd.n[k] * &cd.beta[k]));
            let entry = q.entry(PointKind::Q { level: k });
            assert_eq!(entry.hj.d, cd.n[k]);
        }
        for k in 1..2 {
            assert_eq!(q.d_edge_at(k), &(q.n_mult(k + 1) - q.n_mult(k)));
        }
        assert_eq!(q.a_at(2), &ratio(&int(1), q.d_edge_at(1)));
    }

    #[test]
    fn genus_one_curve() {
        let q = qr(&[24, 36, 75, 311]);
        assert_eq!(q.genus[0], int(1));
    }

    #[test]
    fn rupture() {
        let q = qr(&[8, 12, 26, 53]);
        let rc = rupture_census(&q).unwrap();
        assert_eq!(rc.rupture_count, int(2));
        assert_eq!(rc.last, LastCurve::Possible);
        let q = qr(&[70, 105, 215, 1511]);
        assert_eq!(rupture_census(&q).unwrap().last, LastCurve::Rupture);
        let q = qr(&[4, 6, 13]);
        assert_eq!(rupture_census(&q), Err(QresError::RequiresG3));
    }

    #[test]
    fn g_two_surface() {
        let q = qr(&[4, 6, 13]);
        assert_eq!(q.a.len(), 1);
        assert!(q.d_edge.is_empty());
        assert!(q.a[0].is_positive());
    }
}
