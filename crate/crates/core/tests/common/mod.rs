//! Test-side oracles recomputed from the generators alone, and samplers.
#![allow(dead_code)]

use std::collections::VecDeque;

use branchlink::detcalc::LinkKind;
use branchlink::plumbing::{assemble_full_resolution, PlumbingGraph};
use branchlink::qres::QResolutionData;
use branchlink::semigroup::{derive_from_generators, random_plane_semigroup, CharacteristicData};
use branchlink::{compute_qresolution, Int, Rational};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn ints(v: &[i64]) -> Vec<Int> {
    v.iter().map(|&x| Int::from(x)).collect()
}

pub fn rat(n: &Int, d: &Int) -> Rational {
    Rational::new(n.clone(), d.clone())
}

pub fn lcm(v: &[Int]) -> Int {
    v.iter().fold(Int::one(), |acc, x| acc.lcm(x))
}

fn pow(base: &Rational, exp: &Int) -> Rational {
    let e = exp.to_i32().expect("small exponent");
    num_traits::Pow::pow(base, e)
}

fn exact(a: &Int, b: &Int) -> Int {
    let (q, r) = a.div_rem(b);
    assert!(r.is_zero(), "{a} is not divisible by {b}");
    q
}

/// Q-resolution quantities of the family, straight from the closed formulas.
#[derive(Debug, Clone)]
pub struct Family {
    pub g: usize,
    pub beta: Vec<Int>,
    pub e: Vec<Int>,
    /// `n_0, ..., n_g`.
    pub n: Vec<Int>,
    /// `r_0, ..., r_(g-1)`.
    pub r: Vec<Int>,
    /// `N_k` at index `k`; index 0 unused.
    pub big_n: Vec<Int>,
    /// `M_0, ..., M_(g-1)`.
    pub big_m: Vec<Int>,
    /// `d_(k(k+1))` at index `k`; index 0 unused.
    pub d_edge: Vec<Int>,
    pub d_last: Int,
    /// `a_k` at index `k`; index 0 unused.
    pub a: Vec<Rational>,
}

impl Family {
    pub fn new(beta: &[Int]) -> Self {
        let g = beta.len() - 1;
        let mut e = vec![beta[0].clone()];
        for i in 1..=g {
            e.push(e[i - 1].gcd(&beta[i]));
        }
        assert!(e[g].is_one());
        let mut n = vec![exact(&beta[1], &e[1])];
        for i in 1..=g {
            n.push(exact(&e[i - 1], &e[i]));
        }
        let reduced = |k: usize| exact(&beta[k], &e[k]);
        let tail = |k: usize| lcm(&n[k + 1..]);
        let mut r = vec![exact(&e[0], &lcm(&n[1..]))];
        for k in 1..g {
            r.push(exact(&e[k], &tail(k)));
        }
        let mut big_n = vec![Int::zero()];
        for k in 1..g {
            let mut v = n[k..].to_vec();
            v.push(reduced(k));
            big_n.push(lcm(&v));
        }
        let big_m: Vec<Int> = (0..g)
            .map(|k| {
                let mut v = n[k + 1..].to_vec();
                v.push(reduced(k));
                lcm(&v)
            })
            .collect();
        let mut d_edge = vec![Int::zero()];
        for k in 1..g.saturating_sub(1) {
            let num = &r[k] * &big_n[k] * &big_n[k + 1] * (&n[k + 1] * &beta[k + 1] - &n[k] * &beta[k]);
            d_edge.push(exact(&num, &(&n[k] * &n[k + 1] * &beta[k] * &beta[k + 1])));
        }
        let ng = &n[g];
        let d_last = exact(ng, &(n[g - 1].gcd(ng) * exact(&beta[g - 1], ng).gcd(ng)));
        let q = |x: &Int| Rational::from_integer(x.clone());
        let mut a = vec![Rational::zero()];
        if g >= 3 {
            a.push(q(&big_n[2]) / (q(&d_edge[1]) * q(&big_n[1])));
            for k in 2..g - 1 {
                let left = q(&r[k - 1]) * q(&big_n[k - 1]) / (q(&r[k]) * q(&d_edge[k - 1]));
                let right = q(&big_n[k + 1]) / q(&d_edge[k]);
                a.push((left + right) / q(&big_n[k]));
            }
            let left = q(&r[g - 2]) * q(&big_n[g - 2]) / q(&d_edge[g - 2]);
            a.push((left + rat(ng, &d_last)) / q(&big_n[g - 1]));
        }
        Family { g, beta: beta.to_vec(), e, n, r, big_n, big_m, d_edge, d_last, a }
    }

    pub fn p(&self, k: usize) -> Int {
        exact(&self.r[k], &self.r[k + 1])
    }

    pub fn sum_r(&self) -> Int {
        self.r[1..].iter().sum()
    }

    /// Block intersection matrix of the Q-resolution, `g >= 3`.
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let g = self.g;
        let mut verts = Vec::new();
        for k in 1..g {
            for j in 0..self.r[k].to_usize().unwrap() {
                verts.push((k, j));
            }
        }
        let size = verts.len();
        let mut m = vec![vec![Rational::zero(); size]; size];
        for (i, &(k, j)) in verts.iter().enumerate() {
            m[i][i] = -self.a[k].clone();
            if k + 1 < g {
                let p = self.p(k).to_usize().unwrap();
                let t = verts.iter().position(|&v| v == (k + 1, j / p)).unwrap();
                let w = rat(&Int::one(), &self.d_edge[k]);
                m[i][t] = w.clone();
                m[t][i] = w;
            }
        }
        m
    }

    /// Explicit quotient for `det A`.
    pub fn det_a_quotient(&self) -> Rational {
        let g = self.g;
        let mut num = Rational::from_integer(self.n[g].clone());
        for k in 2..g {
            num *= pow(&Rational::from_integer(self.big_n[k].clone()), &(&self.r[k - 1] - &self.r[k]));
        }
        let mut den = pow(&Rational::from_integer(self.big_n[1].clone()), &self.r[1]) * Rational::from_integer(self.d_last.clone());
        for k in 1..g - 1 {
            den *= pow(&Rational::from_integer(self.d_edge[k].clone()), &self.r[k]);
        }
        let sign = if self.sum_r().is_odd() { -Rational::one() } else { Rational::one() };
        sign * num / den
    }

    /// `R_l` in closed form.
    pub fn r_closed(&self, l: usize) -> Rational {
        let g = self.g;
        let mut den = Rational::from_integer(self.big_n[1].clone());
        for k in 1..l.min(g - 2) + 1 {
            den *= Rational::from_integer(self.d_edge[k].clone());
        }
        if l <= g - 2 {
            Rational::from_integer(self.big_n[l + 1].clone()) / den
        } else {
            Rational::from_integer(self.n[g].clone()) / (den * Rational::from_integer(self.d_last.clone()))
        }
    }

    /// `det S` as a product over levels.
    pub fn det_s_product(&self) -> Rational {
        let mut out = Rational::one();
        for k in 1..self.g {
            let nk = Rational::from_integer(self.big_n[k].clone());
            let mk = Rational::from_integer(self.big_m[k].clone());
            let e1 = exact(&self.beta[k], &self.big_m[k]) - &self.r[k];
            let e2 = &self.r[k - 1] - &self.r[k];
            out *= pow(&(&nk / &mk), &e1) * pow(&(nk / Rational::from_integer(lcm(&self.n[k..]))), &e2);
        }
        out
    }

    /// Product of the orders of all quotient points, from the counts
    /// `beta_0/M_0`, `beta_k/M_k`, `r_k` and the point `P`.
    pub fn order_product(&self) -> Rational {
        let q = |x: &Int| Rational::from_integer(x.clone());
        let mut out = q(&self.d_last);
        out *= pow(&(q(&self.big_n[1]) / q(&self.big_m[0])), &exact(&self.beta[0], &self.big_m[0]));
        for k in 1..self.g {
            out *= pow(&(q(&self.big_n[k]) / q(&self.big_m[k])), &exact(&self.beta[k], &self.big_m[k]));
        }
        for k in 1..self.g - 1 {
            out *= pow(&q(&self.d_edge[k]), &self.r[k]);
        }
        out
    }

    /// Rationality and integrality by gcds.
    pub fn gcd_class(&self) -> LinkKind {
        let mut rational = true;
        let mut unit = true;
        for k in 1..self.g {
            let lk = lcm(&self.n[k + 1..]);
            let a = self.n[k].gcd(&lk).is_one();
            let b = exact(&self.beta[k], &self.e[k]).gcd(&lk).is_one();
            rational &= a || b;
            unit &= a && b;
        }
        match (rational, unit) {
            (true, true) => LinkKind::ZHS,
            (true, false) => LinkKind::QHS,
            _ => LinkKind::NotQHS,
        }
    }

    /// Generators of a valid plane-branch semigroup.
    pub fn is_valid(&self) -> bool {
        (1..=self.g).all(|i| self.n[i] >= int(2))
            && (1..self.g).all(|i| &self.n[i] * &self.beta[i] < self.beta[i + 1])
            && self.beta[0] < self.beta[1]
    }
}

/// Gaussian elimination with row swaps.
pub fn det(mut m: Vec<Vec<Rational>>) -> Rational {
    let size = m.len();
    let mut out = Rational::one();
    for c in 0..size {
        let Some(p) = (c..size).find(|&r| !m[r][c].is_zero()) else {
            return Rational::zero();
        };
        if p != c {
            m.swap(p, c);
            out = -out;
        }
        let pivot = m[c][c].clone();
        out *= &pivot;
        for r in c + 1..size {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..size {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
    }
    out
}

/// Pivots of elimination without swaps; `None` at a zero pivot.
pub fn pivots(mut m: Vec<Vec<Rational>>) -> Option<Vec<Rational>> {
    let size = m.len();
    let mut out = Vec::new();
    for c in 0..size {
        let pivot = m[c][c].clone();
        if pivot.is_zero() {
            return None;
        }
        for r in c + 1..size {
            if m[r][c].is_zero() {
                continue;
            }
            let f = &m[r][c] / &pivot;
            for k in c..size {
                let v = &f * &m[c][k];
                m[r][k] -= v;
            }
        }
        out.push(pivot);
    }
    Some(out)
}

pub fn negative_definite(m: Vec<Vec<Rational>>) -> bool {
    pivots(m).is_some_and(|p| p.iter().all(Signed::is_negative))
}

/// Determinant of a tridiagonal matrix with `diag` and a constant
/// off-diagonal entry, by the three-term continuant.
pub fn continuant(diag: &[Rational], off: &[Rational]) -> Rational {
    let (mut prev, mut cur) = (Rational::one(), Rational::one());
    for (i, x) in diag.iter().enumerate() {
        let next = if i == 0 { x.clone() } else { x * &cur - &off[i - 1] * &off[i - 1] * &prev };
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Connected with `|E| = |V| - 1`.
pub fn is_tree(pg: &PlumbingGraph) -> bool {
    let size = pg.vertices.len();
    if pg.edges.len() + 1 != size {
        return false;
    }
    let mut parent: Vec<usize> = (0..size).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for &(a, b) in &pg.edges {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        if ra == rb {
            return false;
        }
        parent[ra] = rb;
    }
    true
}

/// Leaf-first elimination of a tree's intersection matrix: the pivots,
/// whose product is the determinant.
pub fn tree_pivots(pg: &PlumbingGraph) -> Vec<Rational> {
    let size = pg.vertices.len();
    let mut adj = vec![Vec::new(); size];
    for &(a, b) in &pg.edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut order = Vec::with_capacity(size);
    let mut parent = vec![usize::MAX; size];
    let mut seen = vec![false; size];
    let mut queue = VecDeque::from([0]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        order.push(v);
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut val: Vec<Rational> = pg.vertices.iter().map(|v| Rational::from_integer(v.self_int.clone())).collect();
    for &v in order.iter().rev() {
        if parent[v] != usize::MAX {
            let inv = val[v].recip();
            val[parent[v]] -= inv;
        }
    }
    val
}

/// Rationality and integrality read off the graph.
pub fn graph_class(pg: &PlumbingGraph) -> (LinkKind, Option<Int>) {
    if !is_tree(pg) || pg.vertices.iter().any(|v| !v.genus.is_zero()) {
        return (LinkKind::NotQHS, None);
    }
    let d: Rational = tree_pivots(pg).iter().product();
    assert!(d.is_integer());
    let d = d.to_integer().abs();
    (if d.is_one() { LinkKind::ZHS } else { LinkKind::QHS }, Some(d))
}

/// Brieskorn-Pham invariants from the case formulas.
pub struct Bp {
    pub e: Int,
    pub alpha: [Int; 3],
    pub genus: Int,
    pub det: Int,
}

pub fn bp(a: [i64; 3]) -> Bp {
    let a = a.map(Int::from);
    let e = a[0].gcd(&a[1]).gcd(&a[2]);
    let pair = |i: usize, j: usize| exact(&a[i].gcd(&a[j]), &e);
    let alpha = [pair(1, 2), pair(0, 2), pair(0, 1)];
    let sum: Int = alpha.iter().sum();
    let genus = exact(&(&e * &e * &alpha[0] * &alpha[1] * &alpha[2] - &e * sum + 2u32), &int(2));
    let mut det = e.clone();
    for i in 0..3 {
        let (j, l) = ((i + 1) % 3, (i + 2) % 3);
        let d = exact(&a[i], &(&e * &alpha[j] * &alpha[l]));
        det *= num_traits::pow(d, (&e * &alpha[i] - 1u32).to_usize().unwrap());
    }
    Bp { e, alpha, genus, det }
}

pub struct Sample {
    pub beta: Vec<Int>,
    pub cd: CharacteristicData,
    pub qr: QResolutionData,
    pub pg: PlumbingGraph,
}

pub const MAX_MATRIX: usize = 128;
pub const MAX_VERTICES: usize = 6000;

fn admit(beta: Vec<Int>) -> Option<Sample> {
    let cd = derive_from_generators(&beta).expect("sampler emits valid generators");
    let qr = compute_qresolution(&cd).expect("Q-resolution");
    if qr.r[1..].iter().sum::<Int>() > Int::from(MAX_MATRIX) {
        return None;
    }
    let pg = assemble_full_resolution(&qr).expect("full resolution");
    (pg.vertices.len() <= MAX_VERTICES).then_some(Sample { beta, cd, qr, pg })
}

/// `count` random semigroups with `g` cycling through 3..=6, skipping
/// those whose resolution exceeds the size caps. Returns the samples and
/// the number skipped.
pub fn random_samples(count: usize, seed: u64) -> (Vec<Sample>, usize) {
    let mut out = Vec::with_capacity(count);
    let mut skipped = 0;
    let mut i = 0u64;
    while out.len() < count {
        let g = 3 + (i % 4) as usize;
        let max_n = [3, 4, 5][(i / 4 % 3) as usize];
        let beta = random_plane_semigroup(g, max_n, seed.wrapping_add(i));
        i += 1;
        match admit(beta) {
            Some(s) => out.push(s),
            None => skipped += 1,
        }
    }
    (out, skipped)
}

/// Random semigroups with integral homology sphere links: pairwise coprime
/// `n_0, ..., n_g` and `beta_k / e_k` prime to `e_k`.
pub fn zhs_samples(count: usize, seed: u64) -> (Vec<Sample>, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let primes = [2i64, 3, 5, 7, 11, 13];
    let mut out = Vec::with_capacity(count);
    let mut skipped = 0;
    while out.len() < count {
        let g = rng.gen_range(3..=5usize);
        let mut pick: Vec<i64> = primes.to_vec();
        pick.shuffle(&mut rng);
        let mut n: Vec<Int> = pick[..=g].iter().map(|&p| Int::from(p)).collect();
        if n[0] < n[1] {
            n.swap(0, 1);
        }
        let e: Vec<Int> = (0..=g).map(|i| n[i + 1..].iter().product()).collect();
        let mut beta = vec![e[0].clone(), &n[0] * &e[1]];
        for k in 1..g {
            let floor = (&n[k] * &beta[k]) / &e[k + 1];
            let mut t: Int = floor + 1u32 + rng.gen_range(0u32..6);
            while !t.gcd(&e[k]).is_one() {
                t += 1;
            }
            beta.push(t * &e[k + 1]);
        }
        match admit(beta) {
            Some(s) => out.push(s),
            None => skipped += 1,
        }
    }
    (out, skipped)
}
