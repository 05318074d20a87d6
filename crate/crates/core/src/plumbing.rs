//! The decorated dual graph of the good resolution obtained by resolving
//! every quotient point of the Q-resolution with its Hirzebruch-Jung chain.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;

use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::arith::as_integer;
use crate::detcalc::LinkKind;
use crate::linalg::{det_bareiss, SparseSymmetric};
use crate::qres::{PointKind, QResolutionData};
use crate::quotient::Branch;
use crate::{Int, IntMatrix, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlumbingError {
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("self-intersection of {vertex} is not an integer: {value}")]
    NonIntegralSelfIntersection { vertex: String, value: Rational },
    #[error("pull-back system is singular")]
    SingularSystem,
    #[error("internal consistency check failed: {check} ({detail})")]
    Inconsistent { check: &'static str, detail: String },
}

fn inconsistent(check: &'static str, detail: String) -> PlumbingError {
    PlumbingError::Inconsistent { check, detail }
}

/// Where a vertex of the resolution graph comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Origin {
    /// Strict transform of component `component` of `E_level`.
    Exceptional { level: usize, component: usize },
    /// Curve `position` of the chain resolving one quotient point of the
    /// given kind; `instance` distinguishes points of the same kind.
    Chain { point: PointKind, instance: usize, position: usize },
}

impl Origin {
    pub fn label(&self) -> String {
        match self {
            Origin::Exceptional { level, component } => format!("E{level}.{component}"),
            Origin::Chain { point, instance, position } => {
                format!("{}#{instance}.{position}", point.label())
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub genus: Int,
    pub self_int: Int,
    pub origin: Origin,
}

/// Plumbing graph with an optional arrow decoration: `arrows` lists the
/// nonzero intersection numbers of the strict transform of the curve with
/// the vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlumbingGraph {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<(usize, usize)>,
    pub arrows: Vec<(usize, Int)>,
}

impl PlumbingGraph {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter_map(|&(a, b)| if a == v { Some(b) } else if b == v { Some(a) } else { None })
            .collect()
    }

    /// Neighbour lists of every vertex, built in one pass.
    pub fn adjacency(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    pub fn valency(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    pub fn find(&self, origin: Origin) -> Option<usize> {
        self.vertices.iter().position(|v| v.origin == origin)
    }

    pub fn connected_components(&self) -> usize {
        let adj = self.adjacency();
        let mut seen = vec![false; self.len()];
        let mut count = 0;
        for s in 0..self.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    /// First Betti number of the graph.
    pub fn loops(&self) -> usize {
        self.edges.len() + self.connected_components() - self.len()
    }

    pub fn is_tree(&self) -> bool {
        self.connected_components() == 1 && self.edges.len() + 1 == self.len()
    }

    pub fn total_genus(&self) -> Int {
        self.vertices.iter().map(|v| &v.genus).sum()
    }

    /// Graphviz rendering. Vertices are labelled `[genus, self-intersection]`,
    /// the strict transform of the curve is drawn as arrows.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph plumbing {\n  node [shape=circle];\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(s, "  v{i} [label=\"[{}, {}]\", tooltip=\"{}\"];", v.genus, v.self_int, v.origin.label());
        }
        for (a, b) in &self.edges {
            let _ = writeln!(s, "  v{a} -- v{b};");
        }
        for (k, (v, m)) in self.arrows.iter().enumerate() {
            let _ = writeln!(s, "  y{k} [shape=plaintext, label=\"\"];");
            let _ = writeln!(s, "  v{v} -- y{k} [dir=forward, label=\"{m}\"];");
        }
        s.push_str("}\n");
        s
    }
}

fn usize_of(x: &Int) -> usize {
    x.to_usize().expect("count fits usize")
}

/// Builds the resolution graph from the Q-resolution: one vertex per
/// exceptional component, plus the resolution chain of every quotient
/// point attached at the ends prescribed by the local coordinates.
pub fn assemble_full_resolution(qr: &QResolutionData) -> Result<PlumbingGraph, PlumbingError> {
    let g = qr.g();
    let mut pg = PlumbingGraph { vertices: Vec::new(), edges: Vec::new(), arrows: Vec::new() };
    let mut level_start = vec![0; g];
    for k in 1..g {
        level_start[k] = pg.len();
        for j in 0..usize_of(&qr.r[k]) {
            pg.vertices.push(Vertex {
                genus: qr.genus[k - 1].clone(),
                self_int: Int::zero(),
                origin: Origin::Exceptional { level: k, component: j },
            });
        }
    }
    let e_vertex = |k: usize, j: usize| level_start[k] + j;
    let mut corrections = vec![Rational::zero(); pg.len()];

    for entry in &qr.census {
        let carriers: Vec<Vec<usize>> = match entry.kind {
            PointKind::Q0 => points_per_component(usize_of(&qr.r[1]), usize_of(&entry.per_component))
                .map(|j| vec![e_vertex(1, j)])
                .collect(),
            PointKind::Q { level } => points_per_component(usize_of(&qr.r[level]), usize_of(&entry.per_component))
                .map(|j| vec![e_vertex(level, j)])
                .collect(),
            PointKind::Edge { level } => {
                let p = usize_of(qr.p_at(level));
                (0..usize_of(&qr.r[level]))
                    .map(|j| vec![e_vertex(level, j), e_vertex(level + 1, j / p)])
                    .collect()
            }
            PointKind::P => vec![vec![e_vertex(g - 1, 0)]],
        };
        let branches: Vec<Branch> = entry.kind.curves(g).into_iter().map(|(_, b)| b).collect();
        let hj = &entry.hj;
        let kappas = hj.chain().kappas;
        for (instance, carrier) in carriers.iter().enumerate() {
            if kappas.is_empty() {
                if let [a, b] = carrier[..] {
                    pg.edges.push((a, b));
                }
                continue;
            }
            let first = pg.len();
            for (position, kappa) in kappas.iter().enumerate() {
                pg.vertices.push(Vertex {
                    genus: Int::zero(),
                    self_int: -kappa.clone(),
                    origin: Origin::Chain { point: entry.kind, instance, position },
                });
                if position > 0 {
                    pg.edges.push((first + position - 1, first + position));
                }
            }
            for (&ev, &branch) in carrier.iter().zip(&branches) {
                pg.edges.push((ev, first + hj.attaching_index(branch)));
                corrections[ev] += hj.correction(branch);
            }
        }
    }

    for (i, corr) in corrections.iter().enumerate() {
        let Origin::Exceptional { level, .. } = pg.vertices[i].origin else { unreachable!() };
        let value = -qr.a_at(level).clone() - corr;
        pg.vertices[i].self_int = as_integer(&value).ok_or_else(|| PlumbingError::NonIntegralSelfIntersection {
            vertex: pg.vertices[i].origin.label(),
            value: value.clone(),
        })?;
    }

    pg.arrows = strict_transform_intersections(&pg, qr)?;
    Ok(pg)
}

fn points_per_component(components: usize, per: usize) -> impl Iterator<Item = usize> {
    (0..components).flat_map(move |j| std::iter::repeat_n(j, per))
}

/// Vanishing order of the curve's local equation `v^A - u^B` along a ray.
fn curve_order(qr: &QResolutionData, ray: &(Rational, Rational)) -> Rational {
    let sc = &qr.strict_curve;
    let along_v = Rational::from_integer(sc.second_exponent.clone()) * &ray.1;
    let along_u = Rational::from_integer(sc.first_exponent.clone()) * &ray.0;
    along_v.min(along_u)
}

fn strict_transform_intersections(pg: &PlumbingGraph, qr: &QResolutionData) -> Result<Vec<(usize, Int)>, PlumbingError> {
    let g = qr.g();
    let hj = &qr.entry(PointKind::P).hj;
    let e_last = pg
        .find(Origin::Exceptional { level: g - 1, component: 0 })
        .expect("last exceptional curve exists");
    let a_exp = Rational::from_integer(qr.strict_curve.second_exponent.clone());
    if hj.is_smooth() {
        return Ok(vec![(e_last, qr.strict_curve.second_exponent.clone())]);
    }
    let rays = hj.rays();
    let ords: Vec<Rational> = rays.iter().map(|r| curve_order(qr, r)).collect();
    let chain = hj.chain().intersection_matrix().map(|x| Rational::from_integer(x.clone()));
    let products = chain.mul_vec(&ords);
    let mut arrows = Vec::new();
    let first = pg
        .find(Origin::Chain { point: PointKind::P, instance: 0, position: 0 })
        .expect("chain at P exists");
    for (i, prod) in products.iter().enumerate() {
        let y = as_integer(&-prod).ok_or_else(|| inconsistent("arrow weight is an integer", prod.to_string()))?;
        if y.is_negative() {
            return Err(inconsistent("arrow weight is non-negative", y.to_string()));
        }
        if !y.is_zero() {
            arrows.push((first + i, y));
        }
    }
    let at_e = a_exp / Rational::from_integer(hj.d.clone()) - ords.last().expect("non-empty chain");
    let y_e = as_integer(&at_e).ok_or_else(|| inconsistent("arrow weight is an integer", at_e.to_string()))?;
    if y_e.is_negative() {
        return Err(inconsistent("arrow weight is non-negative", y_e.to_string()));
    }
    if !y_e.is_zero() {
        arrows.insert(0, (e_last, y_e));
    }
    Ok(arrows)
}

/// Symmetric integer intersection matrix of a plumbing graph.
pub fn integer_intersection_matrix(pg: &PlumbingGraph) -> IntMatrix {
    let n = pg.len();
    let mut m = IntMatrix::zeros(n, n);
    for (i, v) in pg.vertices.iter().enumerate() {
        m[(i, i)] = v.self_int.clone();
    }
    for &(a, b) in &pg.edges {
        m[(a, b)] += Int::one();
        m[(b, a)] += Int::one();
    }
    m
}

/// The intersection matrix in sparse form, for graphs with long chains.
pub fn sparse_intersection_matrix(pg: &PlumbingGraph) -> SparseSymmetric<Int> {
    let mut m = SparseSymmetric::new(pg.len());
    for (i, v) in pg.vertices.iter().enumerate() {
        m.add(i, i, v.self_int.clone());
    }
    for &(a, b) in &pg.edges {
        m.add(a, b, Int::one());
    }
    m
}

/// Determinant of the intersection matrix restricted to `subset`, or of
/// the whole matrix when `subset` is `None`.
pub fn intersection_det(pg: &PlumbingGraph, subset: Option<&[usize]>) -> Int {
    let full = sparse_intersection_matrix(pg);
    let m = match subset {
        Some(idx) => full.restrict(idx),
        None => full,
    };
    match m.map(|x| Rational::from_integer(x.clone())).eliminate() {
        Some(e) => as_integer(&e.det()).expect("integer matrix has integer determinant"),
        None => det_bareiss(&m.to_dense()),
    }
}

/// First homology of the link: `Z^free_rank` plus the finite group with the
/// listed invariant factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Decomposition {
    pub free_rank: Int,
    pub torsion: Vec<Int>,
}

impl H1Decomposition {
    pub fn torsion_order(&self) -> Int {
        self.torsion.iter().product()
    }
}

/// Computes `H_1` of the link from the Smith normal form of `-A`.
pub fn h1_link(pg: &PlumbingGraph) -> Result<H1Decomposition, PlumbingError> {
    let m = sparse_intersection_matrix(pg);
    let elimination = m
        .map(|x| Rational::from_integer(x.clone()))
        .eliminate()
        .filter(|e| e.is_negative_definite())
        .ok_or(PlumbingError::NotNegativeDefinite)?;
    let det = as_integer(&elimination.det().abs()).expect("integer matrix has integer determinant");
    let snf = m.map(|x| -x.clone()).smith_normal_form();
    let h1 = H1Decomposition {
        free_rank: pg.total_genus() * 2 + Int::from(pg.loops()),
        torsion: snf.torsion(),
    };
    if h1.torsion_order() != det {
        return Err(inconsistent("torsion order equals |det|", format!("{} vs {det}", h1.torsion_order())));
    }
    Ok(h1)
}

/// Rational homology sphere iff the graph is a tree of rational curves;
/// integral iff moreover the intersection matrix is unimodular.
pub fn classify_topologically(pg: &PlumbingGraph) -> LinkKind {
    if !pg.is_tree() || pg.vertices.iter().any(|v| !v.genus.is_zero()) {
        return LinkKind::NotQHS;
    }
    if intersection_det(pg, None).abs().is_one() {
        LinkKind::ZHS
    } else {
        LinkKind::QHS
    }
}

/// Multiplicities of the total transform of the curve along every vertex,
/// from the linear system `(pi^* Y) . C = 0`. The exceptional entries are
/// checked against `N_k`, the chain entries against their toric values.
pub fn pullback_on_full_resolution(pg: &PlumbingGraph, qr: &QResolutionData) -> Result<Vec<Int>, PlumbingError> {
    let elimination = sparse_intersection_matrix(pg)
        .map(|x| Rational::from_integer(x.clone()))
        .eliminate()
        .ok_or(PlumbingError::SingularSystem)?;
    let mut rhs = vec![Rational::zero(); pg.len()];
    for (v, y) in &pg.arrows {
        rhs[*v] = -Rational::from_integer(y.clone());
    }
    let sol = elimination.solve(&rhs);
    let rays: Vec<_> = qr.census.iter().map(|c| c.hj.rays()).collect();
    let mut out = Vec::with_capacity(sol.len());
    for (i, x) in sol.iter().enumerate() {
        let label = pg.vertices[i].origin.label();
        let xi = as_integer(x).ok_or_else(|| inconsistent("multiplicity is an integer", format!("{label}: {x}")))?;
        if !xi.is_positive() {
            return Err(inconsistent("multiplicity is positive", format!("{label}: {xi}")));
        }
        let expected = match pg.vertices[i].origin {
            Origin::Chain { point, position, .. } => {
                let at = qr.census.iter().position(|c| c.kind == point).expect("point in census");
                chain_multiplicity(qr, point, &rays[at][position])
            }
            origin => toric_multiplicity(qr, origin),
        };
        if Rational::from_integer(xi.clone()) != expected {
            return Err(inconsistent("multiplicity matches local prediction", format!("{label}: {xi} vs {expected}")));
        }
        out.push(xi);
    }
    Ok(out)
}

/// Multiplicity predicted locally: `N_k` on exceptional curves, and on a
/// chain curve the valuation of the pulled-back divisors through the
/// point along the curve's ray.
pub fn toric_multiplicity(qr: &QResolutionData, origin: Origin) -> Rational {
    match origin {
        Origin::Exceptional { level, .. } => Rational::from_integer(qr.n_mult(level).clone()),
        Origin::Chain { point, position, .. } => chain_multiplicity(qr, point, &qr.entry(point).hj.rays()[position]),
    }
}

fn chain_multiplicity(qr: &QResolutionData, point: PointKind, ray: &(Rational, Rational)) -> Rational {
    let mut total = Rational::zero();
    for (level, branch) in point.curves(qr.g()) {
        let n = Rational::from_integer(qr.n_mult(level).clone());
        total += n * match branch {
            Branch::FirstZero => &ray.0,
            Branch::SecondZero => &ray.1,
        };
    }
    if point == PointKind::P {
        total += curve_order(qr, ray);
    }
    total
}

/// Result of blowing down rational `(-1)`-curves of valency at most 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Minimized {
    pub graph: PlumbingGraph,
    pub contracted: Vec<Origin>,
}

fn contractible(pg: &PlumbingGraph, v: usize) -> bool {
    let x = &pg.vertices[v];
    x.genus.is_zero() && x.self_int == -Int::one() && pg.valency(v) <= 2 && pg.len() > 1
}

/// Repeatedly contracts rational `(-1)`-curves meeting at most two others,
/// which keeps the exceptional locus a normal crossing divisor.
pub fn minimize(pg: &PlumbingGraph) -> Minimized {
    let n = pg.len();
    let mut adj: Vec<BTreeSet<usize>> = pg.adjacency().into_iter().map(|a| a.into_iter().collect()).collect();
    let mut self_int: Vec<Int> = pg.vertices.iter().map(|v| v.self_int.clone()).collect();
    let mut arrows: BTreeMap<usize, Int> = BTreeMap::new();
    for (v, y) in &pg.arrows {
        *arrows.entry(*v).or_insert_with(Int::zero) += y;
    }
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut contracted = Vec::new();
    let mut work: Vec<usize> = (0..n).rev().collect();
    while let Some(v) = work.pop() {
        let rational = pg.vertices[v].genus.is_zero();
        if !alive[v] || !rational || self_int[v] != -Int::one() || adj[v].len() > 2 || remaining <= 1 {
            continue;
        }
        let nb: Vec<usize> = std::mem::take(&mut adj[v]).into_iter().collect();
        let y = arrows.remove(&v);
        for &w in &nb {
            self_int[w] += Int::one();
            adj[w].remove(&v);
            if let Some(y) = &y {
                *arrows.entry(w).or_insert_with(Int::zero) += y;
            }
        }
        if let [a, b] = nb[..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        alive[v] = false;
        remaining -= 1;
        contracted.push(pg.vertices[v].origin);
        work.extend(nb.into_iter().rev());
    }

    let index: Vec<Option<usize>> = alive
        .iter()
        .scan(0, |next, &a| {
            let out = a.then_some(*next);
            *next += usize::from(a);
            Some(out)
        })
        .collect();
    let mut vertices = Vec::with_capacity(remaining);
    for v in (0..n).filter(|&v| alive[v]) {
        vertices.push(Vertex { self_int: self_int[v].clone(), ..pg.vertices[v].clone() });
    }
    let mut edges = Vec::new();
    for (v, nb) in adj.iter().enumerate().filter(|(v, _)| alive[*v]) {
        for &w in nb.iter().filter(|&&w| w > v) {
            edges.push((index[v].unwrap(), index[w].unwrap()));
        }
    }
    edges.sort_unstable();
    let arrows = arrows.into_iter().map(|(v, y)| (index[v].unwrap(), y)).collect();
    Minimized { graph: PlumbingGraph { vertices, edges, arrows }, contracted }
}

/// Whether the strict transform of `E_(g-1)` can be blown down in the
/// resolution graph.
pub fn last_curve_contractible(pg: &PlumbingGraph, g: usize) -> bool {
    pg.find(Origin::Exceptional { level: g - 1, component: 0 })
        .is_some_and(|v| contractible(pg, v))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::int;
    use crate::qres::compute_qresolution;
    use crate::semigroup::derive_from_u64;

    fn build(beta: &[u64]) -> (QResolutionData, PlumbingGraph) {
        let qr = compute_qresolution(&derive_from_u64(beta).unwrap()).unwrap();
        let pg = assemble_full_resolution(&qr).unwrap();
        (qr, pg)
    }

    #[test]
    fn three_exponent_example_graph() {
        let (qr, pg) = build(&[8, 12, 26, 53]);
        assert_eq!(pg.len(), 13);
        assert!(pg.is_tree());
        let e2 = pg.find(Origin::Exceptional { level: 2, component: 0 }).unwrap();
        assert_eq!(pg.vertices[e2].self_int, int(-1));
        assert_eq!(pg.arrows, vec![(e2, int(2))]);
        for j in 0..2 {
            let e1 = pg.find(Origin::Exceptional { level: 1, component: j }).unwrap();
            assert_eq!(pg.vertices[e1].self_int, int(-2));
            assert_eq!(pg.valency(e1), 3);
        }
        let mult = pullback_on_full_resolution(&pg, &qr).unwrap();
        assert_eq!(mult[e2], int(26));
        let mut chain: Vec<(usize, Int)> = pg
            .vertices
            .iter()
            .zip(&mult)
            .filter_map(|(v, m)| match v.origin {
                Origin::Chain { point: PointKind::Edge { .. }, position, .. } => Some((position, m.clone())),
                _ => None,
            })
            .collect();
        chain.sort();
        assert_eq!(chain.iter().map(|(_, m)| m.clone()).collect::<Vec<_>>(), vec![int(12), int(12), int(10), int(10), int(8), int(8)]);
        let h1 = h1_link(&pg).unwrap();
        assert_eq!(h1.free_rank, int(0));
        assert_eq!(h1.torsion_order(), int(117));
        assert!(last_curve_contractible(&pg, 3));
    }

    #[test]
    fn minimize_blows_down_the_last_curve() {
        let (_, pg) = build(&[8, 12, 26, 53]);
        let min = minimize(&pg);
        assert_eq!(min.contracted[0], Origin::Exceptional { level: 2, component: 0 });
        assert_eq!(min.graph.len(), pg.len() - min.contracted.len());
        let before = det_bareiss(&integer_intersection_matrix(&pg)).abs();
        let after = det_bareiss(&integer_intersection_matrix(&min.graph)).abs();
        assert_eq!(before, after);
    }

    #[test]
    fn classes_from_the_graph() {
        let (_, pg) = build(&[70, 105, 215, 1511]);
        assert_eq!(classify_topologically(&pg), LinkKind::ZHS);
        assert_eq!(h1_link(&pg).unwrap(), H1Decomposition { free_rank: int(0), torsion: vec![] });
        let (_, pg) = build(&[70, 105, 225, 1579]);
        assert_eq!(classify_topologically(&pg), LinkKind::QHS);
        let (_, pg) = build(&[24, 36, 75, 311]);
        assert_eq!(classify_topologically(&pg), LinkKind::NotQHS);
    }

    #[test]
    fn single_genus_one_vertex() {
        let pg = PlumbingGraph {
            vertices: vec![Vertex {
                genus: int(1),
                self_int: int(-1),
                origin: Origin::Exceptional { level: 1, component: 0 },
            }],
            edges: vec![],
            arrows: vec![],
        };
        assert_eq!(h1_link(&pg).unwrap(), H1Decomposition { free_rank: int(2), torsion: vec![] });
        assert_eq!(classify_topologically(&pg), LinkKind::NotQHS);
        let mut bad = pg.clone();
        bad.vertices[0].self_int = int(1);
        assert_eq!(h1_link(&bad), Err(PlumbingError::NotNegativeDefinite));
    }

    #[test]
    fn dot_rendering() {
        let (_, pg) = build(&[8, 12, 26, 53]);
        let dot = pg.to_dot();
        assert!(dot.starts_with("graph plumbing {"));
        assert!(dot.contains("[label=\"[0, -1]\""));
        assert!(dot.contains("dir=forward"));
    }
}
