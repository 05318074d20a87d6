//! Plane-branch semigroups and their characteristic integers.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::arith::{exact_div, gcd_all};
use crate::Int;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("at least three generators are required (got {len})")]
    TooFewGenerators { len: usize },
    #[error("generator {index} is not positive ({value})")]
    NonPositive { index: usize, value: Int },
    #[error("generators must be strictly increasing (position {index})")]
    NotIncreasing { index: usize },
    #[error("not a plane-branch semigroup: {invariant} fails ({witness})")]
    NotAPlaneSemigroup { invariant: &'static str, witness: String },
    #[error("generator {index} lies in the semigroup of its predecessors: {}", fmt_list(.representation))]
    NotMinimal { index: usize, representation: Vec<Int> },
    #[error("no bounded representation of n_{index}*beta_{index}")]
    NoRepresentation { index: usize },
    #[error("bounded representation of n_{index}*beta_{index} is not unique")]
    NonUnique { index: usize },
    #[error("index {index} outside 1..={g}")]
    IndexOutOfRange { index: usize, g: usize },
}

fn fmt_list(v: &[Int]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
}

/// Minimal generators of a plane-branch semigroup together with every
/// characteristic integer derived from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicData {
    /// Number of generators after the first.
    pub g: usize,
    /// `beta[0] < beta[1] < ... < beta[g]`.
    pub beta: Vec<Int>,
    /// `e[i] = gcd(beta[0], ..., beta[i])`, so `e[g] = 1`.
    pub e: Vec<Int>,
    /// `n[i] = e[i-1] / e[i]` for `i >= 1`, and `n[0] = beta[1] / e[1]`.
    pub n: Vec<Int>,
    /// `b[i-1]` holds `(b_{i0}, ..., b_{i(i-1)})` for `i = 1..=g`.
    pub b: Vec<Vec<Int>>,
}

impl CharacteristicData {
    /// `beta[k] / e[k]`.
    pub fn reduced_beta(&self, k: usize) -> Int {
        &self.beta[k] / &self.e[k]
    }

    /// The row `(b_{i0}, ..., b_{i(i-1)})`, `1 <= i <= g`.
    pub fn b_row(&self, i: usize) -> &[Int] {
        &self.b[i - 1]
    }
}

/// Validates a list of generators and derives all characteristic data.
pub fn derive_from_generators(beta: &[Int]) -> Result<CharacteristicData, SemigroupError> {
    if beta.len() < 3 {
        return Err(SemigroupError::TooFewGenerators { len: beta.len() });
    }
    if let Some((index, value)) = beta.iter().enumerate().find(|(_, b)| !b.is_positive()) {
        return Err(SemigroupError::NonPositive { index, value: value.clone() });
    }
    if let Some(index) = (1..beta.len()).find(|&i| beta[i] <= beta[i - 1]) {
        return Err(SemigroupError::NotIncreasing { index });
    }
    let g = beta.len() - 1;
    let e: Vec<Int> = (0..=g).map(|i| gcd_all(&beta[..=i])).collect();
    if !e[g].is_one() {
        return Err(SemigroupError::NotAPlaneSemigroup {
            invariant: "gcd of all generators equals 1",
            witness: format!("gcd = {}", e[g]),
        });
    }
    let mut n = vec![&beta[1] / &e[1]];
    n.extend((1..=g).map(|i| &e[i - 1] / &e[i]));

    for i in 1..=g {
        if n[i].is_one() {
            return Err(match bounded_representation(beta, &n, i, &beta[i]) {
                Found::Unique(representation) | Found::Several(representation) => {
                    SemigroupError::NotMinimal { index: i, representation }
                }
                Found::None => SemigroupError::NotAPlaneSemigroup {
                    invariant: "n_i >= 2",
                    witness: format!("e_{} = e_{} = {}", i - 1, i, e[i]),
                },
            });
        }
    }
    for i in 1..g {
        if &n[i] * &beta[i] >= beta[i + 1] {
            return Err(SemigroupError::NotAPlaneSemigroup {
                invariant: "n_i * beta_i < beta_(i+1)",
                witness: format!("n_{i}*beta_{i} = {} >= {}", &n[i] * &beta[i], beta[i + 1]),
            });
        }
    }
    for i in 1..=g {
        let r = (&beta[i] / &e[i]).gcd(&n[i]);
        if !r.is_one() {
            return Err(SemigroupError::NotAPlaneSemigroup {
                invariant: "gcd(beta_i / e_i, n_i) = 1",
                witness: format!("i = {i}, gcd = {r}"),
            });
        }
    }
    if !n[0].gcd(&n[1]).is_one() {
        return Err(SemigroupError::NotAPlaneSemigroup {
            invariant: "gcd(n_0, n_1) = 1",
            witness: format!("gcd({}, {})", n[0], n[1]),
        });
    }

    let mut data = CharacteristicData { g, beta: beta.to_vec(), e, n, b: Vec::new() };
    for i in 1..=g {
        let row = compute_b_coefficients(&data, i).map_err(|err| match err {
            SemigroupError::NoRepresentation { index } => SemigroupError::NotAPlaneSemigroup {
                invariant: "n_i * beta_i lies in the semigroup of beta_0..beta_(i-1)",
                witness: format!("i = {index}"),
            },
            other => other,
        })?;
        data.b.push(row);
    }
    if data.b[0][0] != data.n[0] {
        return Err(SemigroupError::NotAPlaneSemigroup {
            invariant: "n_0 = b_10",
            witness: format!("n_0 = {}, b_10 = {}", data.n[0], data.b[0][0]),
        });
    }
    Ok(data)
}

/// Convenience wrapper over [`derive_from_generators`] for machine integers.
pub fn derive_from_u64(beta: &[u64]) -> Result<CharacteristicData, SemigroupError> {
    derive_from_generators(&beta.iter().map(|&b| Int::from(b)).collect::<Vec<_>>())
}

/// The unique `(b_{i0}, ..., b_{i(i-1)})` with
/// `n_i beta_i = sum_j b_{ij} beta_j`, `0 <= b_{ij} < n_j` for `j >= 1`.
pub fn compute_b_coefficients(data: &CharacteristicData, i: usize) -> Result<Vec<Int>, SemigroupError> {
    if i == 0 || i > data.g {
        return Err(SemigroupError::IndexOutOfRange { index: i, g: data.g });
    }
    let target = &data.n[i] * &data.beta[i];
    match bounded_representation(&data.beta, &data.n, i, &target) {
        Found::Unique(v) => Ok(v),
        Found::Several(_) => Err(SemigroupError::NonUnique { index: i }),
        Found::None => Err(SemigroupError::NoRepresentation { index: i }),
    }
}

enum Found {
    None,
    Unique(Vec<Int>),
    Several(Vec<Int>),
}

/// Exhaustive search for `target = sum_{j<i} c_j beta_j` over the box
/// `0 <= c_j < n_j` (`j >= 1`), with `c_0 >= 0` free.
fn bounded_representation(beta: &[Int], n: &[Int], i: usize, target: &Int) -> Found {
    let bounds: Vec<Int> = (1..i).map(|j| n[j].clone()).collect();
    let mut c = vec![Int::zero(); bounds.len()];
    let mut first: Option<Vec<Int>> = None;
    loop {
        let partial: Int = c.iter().zip(&beta[1..i]).map(|(cj, bj)| cj * bj).sum();
        let rest = target - partial;
        if !rest.is_negative() {
            if let Some(c0) = exact_div(&rest, &beta[0]) {
                let mut rep = vec![c0];
                rep.extend(c.iter().cloned());
                if let Some(prev) = first {
                    return Found::Several(prev);
                }
                first = Some(rep);
            }
        }
        // odometer step
        let mut pos = 0;
        loop {
            if pos == c.len() {
                return first.map_or(Found::None, Found::Unique);
            }
            c[pos] += 1;
            if c[pos] < bounds[pos] {
                break;
            }
            c[pos] = Int::zero();
            pos += 1;
        }
    }
}

/// A binomial `x_i^{n_i} - prod_j x_j^{b_ij}` recorded by exponent vectors
/// over the variables `x_0, ..., x_g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Binomial {
    pub index: usize,
    pub lead: Vec<Int>,
    pub tail: Vec<Int>,
}

impl Binomial {
    /// Degree of an exponent vector when `x_j` has weight `beta_j`.
    pub fn weighted_degree(exponents: &[Int], beta: &[Int]) -> Int {
        exponents.iter().zip(beta).map(|(a, b)| a * b).sum()
    }
}

fn fmt_monomial(f: &mut fmt::Formatter<'_>, exps: &[Int]) -> fmt::Result {
    let mut any = false;
    for (j, a) in exps.iter().enumerate().filter(|(_, a)| !a.is_zero()) {
        if any {
            write!(f, "*")?;
        }
        any = true;
        if a.is_one() {
            write!(f, "x{j}")?;
        } else {
            write!(f, "x{j}^{a}")?;
        }
    }
    if !any {
        write!(f, "1")?;
    }
    Ok(())
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_monomial(f, &self.lead)?;
        write!(f, " - ")?;
        fmt_monomial(f, &self.tail)
    }
}

/// The `g` binomials cutting out the monomial curve of the semigroup.
pub fn monomial_curve_equations(data: &CharacteristicData) -> Vec<Binomial> {
    (1..=data.g)
        .map(|i| {
            let mut lead = vec![Int::zero(); data.g + 1];
            lead[i] = data.n[i].clone();
            let mut tail = vec![Int::zero(); data.g + 1];
            for (j, b) in data.b_row(i).iter().enumerate() {
                tail[j] = b.clone();
            }
            Binomial { index: i, lead, tail }
        })
        .collect()
}

/// Random valid generator list with `g` generators after the first and
/// every `n_i` drawn from `2..=max_n`. Deterministic in `seed`.
///
/// # Panics
/// If `g < 2` or `max_n < 2`.
pub fn random_plane_semigroup(g: usize, max_n: u64, seed: u64) -> Vec<Int> {
    assert!(g >= 2 && max_n >= 2, "need g >= 2 and max_n >= 2");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n: Vec<Int> = std::iter::once(Int::zero())
        .chain((1..=g).map(|_| Int::from(rng.gen_range(2..=max_n))))
        .collect();
    let e: Vec<Int> = (0..=g).map(|i| n[i + 1..].iter().product()).collect();
    let spread = 2 * max_n;

    let mut beta = vec![e[0].clone()];
    let mut m: Int = &n[1] + 1u32 + rng.gen_range(0..=spread);
    while !m.gcd(&n[1]).is_one() {
        m += 1;
    }
    beta.push(m * &e[1]);
    for i in 1..g {
        let floor = (&n[i] * &beta[i]) / &e[i + 1];
        let mut t: Int = floor + 1u32 + rng.gen_range(0..=spread);
        while !t.gcd(&n[i + 1]).is_one() {
            t += 1;
        }
        beta.push(t * &e[i + 1]);
    }
    beta
}

/// Generators as machine integers, when they fit.
pub fn to_u64(beta: &[Int]) -> Option<Vec<u64>> {
    beta.iter().map(ToPrimitive::to_u64).collect()
}
