//! Splice diagrams of integral homology sphere links, their semigroup
//! condition and splice-type equations.

use std::collections::{HashMap, VecDeque};
use std::fmt::{self, Write as _};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::detcalc::{classify_link, LinkKind};
use crate::arith::as_integer;
use crate::plumbing::{classify_topologically, Origin, PlumbingGraph};
use crate::qres::PointKind;
use crate::semigroup::CharacteristicData;
use crate::{Int, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpliceError {
    #[error("link is {0}, not an integral homology sphere")]
    NotZhs(LinkKind),
    #[error("graph has no node of valency at least 3")]
    Degenerate,
    #[error("Eisenbud-Neumann condition ({condition}) fails at {location}")]
    EnViolation { condition: &'static str, location: String },
    #[error("semigroup condition fails at node {node}: {target} not generated")]
    SemigroupConditionFails { node: usize, target: Int },
    #[error("intersection matrix is not negative definite")]
    NotNegativeDefinite,
    #[error("splice equations differ from the family form: {0}")]
    FamilyMismatch(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SpliceVertexKind {
    Node,
    Leaf,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceVertex {
    pub kind: SpliceVertexKind,
    /// For a leaf: index `w` of the variable `z_w` attached to it, when known.
    pub label: Option<usize>,
}

/// An edge with the weight carried at each end; leaf ends carry none.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceEdge {
    pub ends: [usize; 2],
    pub weights: [Option<Int>; 2],
}

impl SpliceEdge {
    pub fn other(&self, v: usize) -> usize {
        if self.ends[0] == v {
            self.ends[1]
        } else {
            self.ends[0]
        }
    }

    pub fn weight_at(&self, v: usize) -> Option<&Int> {
        let i = if self.ends[0] == v { 0 } else { 1 };
        self.weights[i].as_ref()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceDiagram {
    pub vertices: Vec<SpliceVertex>,
    pub edges: Vec<SpliceEdge>,
}

impl SpliceDiagram {
    pub fn nodes(&self) -> Vec<usize> {
        self.of_kind(SpliceVertexKind::Node)
    }

    pub fn leaves(&self) -> Vec<usize> {
        self.of_kind(SpliceVertexKind::Leaf)
    }

    fn of_kind(&self, kind: SpliceVertexKind) -> Vec<usize> {
        (0..self.vertices.len()).filter(|&v| self.vertices[v].kind == kind).collect()
    }

    /// Indices of the edges at `v`.
    pub fn incident(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&e| self.edges[e].ends.contains(&v)).collect()
    }

    /// Weight at node `v` on edge `e`.
    pub fn weight(&self, v: usize, e: usize) -> &Int {
        self.edges[e].weight_at(v).expect("node ends carry weights")
    }

    /// Product of all weights around node `v`.
    pub fn node_weight(&self, v: usize) -> Int {
        self.incident(v).iter().map(|&e| self.weight(v, e)).product()
    }

    /// Vertices and edges of the unique path from `v` to `w`.
    pub fn path(&self, v: usize, w: usize) -> (Vec<usize>, Vec<usize>) {
        let n = self.vertices.len();
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut seen = vec![false; n];
        seen[v] = true;
        let mut queue = VecDeque::from([v]);
        while let Some(x) = queue.pop_front() {
            for e in self.incident(x) {
                let y = self.edges[e].other(x);
                if !seen[y] {
                    seen[y] = true;
                    prev[y] = Some((x, e));
                    queue.push_back(y);
                }
            }
        }
        let (mut verts, mut edges) = (vec![w], Vec::new());
        let mut cur = w;
        while let Some((p, e)) = prev[cur] {
            verts.push(p);
            edges.push(e);
            cur = p;
        }
        verts.reverse();
        edges.reverse();
        (verts, edges)
    }

    /// Leaves reached from `v` by leaving through edge `e`.
    pub fn leaves_beyond(&self, v: usize, e: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut stack = vec![(self.edges[e].other(v), e)];
        while let Some((x, from)) = stack.pop() {
            if self.vertices[x].kind == SpliceVertexKind::Leaf {
                out.push(x);
            }
            for f in self.incident(x).into_iter().filter(|&f| f != from) {
                stack.push((self.edges[f].other(x), f));
            }
        }
        out.sort_by_key(|&l| (self.vertices[l].label, l));
        out
    }

    /// Edge determinant of an edge joining two nodes.
    pub fn edge_determinant(&self, e: usize) -> Option<Int> {
        let [a, b] = self.edges[e].ends;
        let wa = self.edges[e].weight_at(a)?;
        let wb = self.edges[e].weight_at(b)?;
        let others = |v: usize| -> Int {
            self.incident(v).into_iter().filter(|&f| f != e).map(|f| self.weight(v, f).clone()).product()
        };
        Some(wa * wb - others(a) * others(b))
    }

    /// Node adjacent to the leaf labelled `w`.
    pub fn node_of_leaf(&self, w: usize) -> Option<usize> {
        let leaf = (0..self.vertices.len()).find(|&v| self.vertices[v].label == Some(w))?;
        let e = *self.incident(leaf).first()?;
        Some(self.edges[e].other(leaf))
    }

    /// Graphviz rendering with the weights drawn at the node ends.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph splice {\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = match (v.kind, v.label) {
                (SpliceVertexKind::Node, _) => writeln!(s, "  s{i} [shape=point, width=0.15];"),
                (SpliceVertexKind::Leaf, Some(w)) => writeln!(s, "  s{i} [shape=plaintext, label=\"z{w}\"];"),
                (SpliceVertexKind::Leaf, None) => writeln!(s, "  s{i} [shape=plaintext, label=\"\"];"),
            };
        }
        for e in &self.edges {
            let [a, b] = e.ends;
            let lab = |w: &Option<Int>| w.as_ref().map(ToString::to_string).unwrap_or_default();
            let _ = writeln!(
                s,
                "  s{a} -- s{b} [taillabel=\"{}\", headlabel=\"{}\"];",
                lab(&e.weights[0]),
                lab(&e.weights[1])
            );
        }
        s.push_str("}\n");
        s
    }
}

/// Splice diagram of the link of a plumbing graph with integral homology
/// sphere link: valency-2 vertices are suppressed and the weight at node
/// `v` towards a branch is `|det|` of that branch of the graph cut at `v`.
pub fn splice_from_plumbing(pg: &PlumbingGraph) -> Result<SpliceDiagram, SpliceError> {
    let kind = classify_topologically(pg);
    if kind != LinkKind::ZHS {
        return Err(SpliceError::NotZhs(kind));
    }
    let adj = pg.adjacency();
    let valency: Vec<usize> = adj.iter().map(Vec::len).collect();
    if !valency.iter().any(|&d| d >= 3) {
        return Err(SpliceError::Degenerate);
    }
    let g = pg
        .vertices
        .iter()
        .filter_map(|v| match v.origin {
            Origin::Exceptional { level, .. } => Some(level + 1),
            Origin::Chain { .. } => None,
        })
        .max()
        .unwrap_or(2);

    let mut branches = BranchDets { pg, adj: &adj, memo: HashMap::new() };
    let mut index = vec![None; pg.len()];
    let mut sd = SpliceDiagram { vertices: Vec::new(), edges: Vec::new() };
    for v in 0..pg.len() {
        let kind = match valency[v] {
            1 => SpliceVertexKind::Leaf,
            d if d >= 3 => SpliceVertexKind::Node,
            _ => continue,
        };
        let label = match (kind, pg.vertices[v].origin) {
            (SpliceVertexKind::Leaf, Origin::Chain { point, .. }) => Some(match point {
                PointKind::Q0 => 0,
                PointKind::Q { level } => level,
                PointKind::P => g,
                PointKind::Edge { .. } => usize::MAX,
            })
            .filter(|&w| w != usize::MAX),
            _ => None,
        };
        index[v] = Some(sd.vertices.len());
        sd.vertices.push(SpliceVertex { kind, label });
    }

    for v in (0..pg.len()).filter(|&v| valency[v] >= 3) {
        for &u in &adj[v] {
            let weight = branches.det(u, v)?.abs();
            let target = walk_to_essential(&adj, v, u);
            let (a, b) = (index[v].unwrap(), index[target].unwrap());
            let existing = sd.edges.iter().position(|e| e.ends == [b, a] || e.ends == [a, b]);
            match existing {
                Some(e) => {
                    let slot = if sd.edges[e].ends[0] == a { 0 } else { 1 };
                    sd.edges[e].weights[slot] = Some(weight);
                }
                None => sd.edges.push(SpliceEdge { ends: [a, b], weights: [Some(weight), None] }),
            }
        }
    }
    check_en_conditions(&sd)?;
    Ok(sd)
}

/// Determinants of the branches of a tree, seen across directed edges.
/// Eliminating a branch from its leaves inwards leaves the Schur
/// complement `s(u|p) = a_u - sum 1/s(c|u)` at its root, and the branch
/// determinant is `s(u|p)` times those of the sub-branches. Results are
/// shared between all requests.
struct BranchDets<'a> {
    pg: &'a PlumbingGraph,
    adj: &'a [Vec<usize>],
    memo: HashMap<(usize, usize), (Rational, Int)>,
}

impl BranchDets<'_> {
    /// Determinant of the component of the graph minus `parent` that
    /// contains `root`.
    fn det(&mut self, root: usize, parent: usize) -> Result<Int, SpliceError> {
        let mut stack = vec![(root, parent, false)];
        while let Some((x, p, expanded)) = stack.pop() {
            if self.memo.contains_key(&(x, p)) {
                continue;
            }
            let children = self.adj[x].iter().copied().filter(|&c| c != p);
            if !expanded {
                stack.push((x, p, true));
                stack.extend(children.filter(|&c| !self.memo.contains_key(&(c, x))).map(|c| (c, x, false)));
                continue;
            }
            let mut schur = Rational::from_integer(self.pg.vertices[x].self_int.clone());
            let mut det = Rational::one();
            for c in children {
                let (sc, dc) = &self.memo[&(c, x)];
                schur -= sc.recip();
                det *= Rational::from_integer(dc.clone());
            }
            if !schur.is_negative() {
                return Err(SpliceError::NotNegativeDefinite);
            }
            let det = as_integer(&(det * &schur)).expect("integer matrix has integer determinant");
            self.memo.insert((x, p), (schur, det));
        }
        Ok(self.memo[&(root, parent)].1.clone())
    }
}

fn walk_to_essential(adj: &[Vec<usize>], from: usize, first: usize) -> usize {
    let (mut prev, mut cur) = (from, first);
    while adj[cur].len() == 2 {
        let next = adj[cur].iter().copied().find(|&x| x != prev).expect("valency two");
        prev = cur;
        cur = next;
    }
    cur
}

/// Pairwise coprime weights around every node, leaf-edge weights above 1,
/// positive edge determinants.
pub fn check_en_conditions(sd: &SpliceDiagram) -> Result<(), SpliceError> {
    for v in sd.nodes() {
        let inc = sd.incident(v);
        let ws: Vec<&Int> = inc.iter().map(|&e| sd.weight(v, e)).collect();
        if ws.iter().any(|w| !w.is_positive()) {
            return Err(SpliceError::EnViolation { condition: "i", location: format!("node {v}: non-positive weight") });
        }
        for i in 0..ws.len() {
            for j in i + 1..ws.len() {
                if !ws[i].gcd(ws[j]).is_one() {
                    return Err(SpliceError::EnViolation {
                        condition: "i",
                        location: format!("node {v}: weights {} and {}", ws[i], ws[j]),
                    });
                }
            }
        }
        for (&e, w) in inc.iter().zip(&ws) {
            let other = sd.edges[e].other(v);
            if sd.vertices[other].kind == SpliceVertexKind::Leaf && **w <= Int::one() {
                return Err(SpliceError::EnViolation { condition: "ii", location: format!("node {v}, leaf {other}") });
            }
        }
    }
    for e in 0..sd.edges.len() {
        if let Some(det) = sd.edge_determinant(e) {
            if !det.is_positive() {
                return Err(SpliceError::EnViolation {
                    condition: "iii",
                    location: format!("edge {e}: determinant {det}"),
                });
            }
        }
    }
    Ok(())
}

/// Closed-form splice diagram of a family member with integral homology
/// sphere link: a row of nodes `E_1, ..., E_(g-1)`, leaf weights `n_w`,
/// weight `e_k` to the right of node `k` and `beta_k / e_k` to its left.
pub fn expected_splice_diagram(cd: &CharacteristicData) -> Result<SpliceDiagram, SpliceError> {
    let kind = classify_link(cd).kind;
    if kind != LinkKind::ZHS {
        return Err(SpliceError::NotZhs(kind));
    }
    let g = cd.g;
    let nodes = g - 1;
    let mut sd = SpliceDiagram {
        vertices: vec![SpliceVertex { kind: SpliceVertexKind::Node, label: None }; nodes],
        edges: Vec::new(),
    };
    let leaf = |sd: &mut SpliceDiagram, node: usize, w: usize| {
        sd.vertices.push(SpliceVertex { kind: SpliceVertexKind::Leaf, label: Some(w) });
        let l = sd.vertices.len() - 1;
        sd.edges.push(SpliceEdge { ends: [node, l], weights: [Some(cd.n[w].clone()), None] });
    };
    leaf(&mut sd, 0, 0);
    for w in 1..g {
        leaf(&mut sd, w - 1, w);
    }
    leaf(&mut sd, nodes - 1, g);
    for k in 1..nodes {
        sd.edges.push(SpliceEdge {
            ends: [k - 1, k],
            weights: [Some(cd.e[k].clone()), Some(cd.reduced_beta(k + 1))],
        });
    }
    Ok(sd)
}

/// `(l_vw, l'_vw)`: products of the weights adjacent to, but not on, the
/// path from `v` to `w`; the primed version skips the weights at `v` and `w`.
pub fn linking_numbers(sd: &SpliceDiagram, v: usize, w: usize) -> (Int, Int) {
    if v == w {
        return (Int::one(), Int::one());
    }
    let (verts, path_edges) = sd.path(v, w);
    let (mut l, mut l_prime) = (Int::one(), Int::one());
    for (i, &x) in verts.iter().enumerate() {
        if sd.vertices[x].kind != SpliceVertexKind::Node {
            continue;
        }
        let off: Int = sd
            .incident(x)
            .into_iter()
            .filter(|e| !path_edges.contains(e))
            .map(|e| sd.weight(x, e).clone())
            .product();
        l *= &off;
        if i != 0 && i != verts.len() - 1 {
            l_prime *= off;
        }
    }
    (l, l_prime)
}

/// Semigroup-condition data for one node and one of its edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupEntry {
    pub node: usize,
    pub edge: usize,
    /// The weight `d_ve` to be generated.
    pub target: Int,
    /// Leaves beyond the edge, ordered by label.
    pub leaves: Vec<usize>,
    /// `l'_vw` for each of those leaves.
    pub generators: Vec<Int>,
    /// Lexicographically largest `alpha` with `sum alpha_w l'_vw = d_ve`.
    pub witness: Option<Vec<Int>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupReport {
    pub entries: Vec<SemigroupEntry>,
}

impl SemigroupReport {
    pub fn satisfied(&self) -> bool {
        self.entries.iter().all(|e| e.witness.is_some())
    }
}

/// Checks that every edge weight `d_ve` lies in the semigroup generated by
/// the `l'_vw` of the leaves beyond `e`.
pub fn check_semigroup_condition(sd: &SpliceDiagram) -> SemigroupReport {
    let mut entries = Vec::new();
    for v in sd.nodes() {
        for e in sd.incident(v) {
            let leaves = sd.leaves_beyond(v, e);
            let generators: Vec<Int> = leaves.iter().map(|&w| linking_numbers(sd, v, w).1).collect();
            let target = sd.weight(v, e).clone();
            let witness = largest_representation(&target, &generators);
            entries.push(SemigroupEntry { node: v, edge: e, target, leaves, generators, witness });
        }
    }
    SemigroupReport { entries }
}

fn largest_representation(target: &Int, gens: &[Int]) -> Option<Vec<Int>> {
    let (first, rest) = gens.split_first()?;
    if rest.is_empty() {
        return target.is_multiple_of(first).then(|| vec![target / first]);
    }
    let step = rest.iter().fold(Int::zero(), |acc, x| acc.gcd(x));
    let mut a = target / first;
    while !a.is_negative() {
        let remainder = target - &a * first;
        if remainder.is_multiple_of(&step) {
            if let Some(mut tail) = largest_representation(&remainder, rest) {
                tail.insert(0, a);
                return Some(tail);
            }
        }
        a -= 1;
    }
    None
}

/// A monomial in the leaf variables with a coefficient slot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Term {
    pub coefficient: String,
    pub exponents: Vec<Int>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceEquation {
    pub node: usize,
    pub terms: Vec<Term>,
}

/// Splice-type equations: `leaves - 2` equations in one variable per leaf.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpliceEquations {
    /// Label `w` of the variable in each exponent slot.
    pub variables: Vec<usize>,
    pub equations: Vec<SpliceEquation>,
    /// Condition on the coefficient slots.
    pub constraint: String,
}

impl SpliceEquations {
    pub fn render(&self) -> Vec<String> {
        self.equations.iter().map(|eq| render_equation(&self.variables, eq)).collect()
    }
}

fn render_equation(vars: &[usize], eq: &SpliceEquation) -> String {
    let mut s = String::new();
    for (i, t) in eq.terms.iter().enumerate() {
        if i > 0 {
            s.push_str(" + ");
        }
        let mut parts = Vec::new();
        if t.coefficient != "1" {
            parts.push(t.coefficient.clone());
        }
        for (w, a) in vars.iter().zip(&t.exponents).filter(|(_, a)| !a.is_zero()) {
            parts.push(if a.is_one() { format!("z{w}") } else { format!("z{w}^{a}") });
        }
        if parts.is_empty() {
            parts.push("1".into());
        }
        s.push_str(&parts.join("*"));
    }
    s.push_str(" = 0");
    s
}

impl fmt::Display for SpliceEquations {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.render() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Equations of splice type for a diagram satisfying the semigroup
/// condition. Each node `v` of valency `d` contributes `d - 2` generic
/// combinations of one admissible monomial per incident edge; every
/// monomial is checked to have `v`-weight equal to the product of the
/// weights at `v`. When the characteristic data is supplied, the equations
/// are emitted in the family form `z_0^n_0 + z_1^n_1 + z_2^n_2` and
/// `z_k^n_k + z_(k+1)^n_(k+1) + prod_j z_j^b_kj`, after verifying that this
/// form consists of the same admissible monomials.
pub fn splice_equations(sd: &SpliceDiagram, cd: Option<&CharacteristicData>) -> Result<SpliceEquations, SpliceError> {
    let report = check_semigroup_condition(sd);
    if let Some(bad) = report.entries.iter().find(|e| e.witness.is_none()) {
        return Err(SpliceError::SemigroupConditionFails { node: bad.node, target: bad.target.clone() });
    }
    let mut leaves = sd.leaves();
    leaves.sort_by_key(|&l| (sd.vertices[l].label, l));
    let variables: Vec<usize> = leaves
        .iter()
        .enumerate()
        .map(|(i, &l)| sd.vertices[l].label.unwrap_or(i))
        .collect();
    let slot = |leaf: usize| leaves.iter().position(|&l| l == leaf).expect("leaf is listed");

    let mut generic = Vec::new();
    for v in sd.nodes() {
        let dv = sd.node_weight(v);
        let mut monomials = Vec::new();
        for entry in report.entries.iter().filter(|e| e.node == v) {
            let mut exps = vec![Int::zero(); leaves.len()];
            let witness = entry.witness.as_ref().expect("checked above");
            for (&w, a) in entry.leaves.iter().zip(witness) {
                exps[slot(w)] = a.clone();
            }
            let vw: Int = entry
                .leaves
                .iter()
                .zip(witness)
                .map(|(&w, a)| a * linking_numbers(sd, v, w).0)
                .sum();
            if vw != dv {
                return Err(SpliceError::FamilyMismatch(format!("node {v}: v-weight {vw} differs from {dv}")));
            }
            monomials.push(exps);
        }
        let count = monomials.len() - 2;
        for i in 0..count {
            let terms = monomials
                .iter()
                .enumerate()
                .map(|(e, exps)| Term {
                    coefficient: if count == 1 { "1".into() } else { format!("a{v}_{}_{}", i + 1, e + 1) },
                    exponents: exps.clone(),
                })
                .collect();
            generic.push(SpliceEquation { node: v, terms });
        }
    }
    let constraint = "for every node, all maximal minors of its coefficient matrix are nonzero".to_string();

    let Some(cd) = cd else {
        return Ok(SpliceEquations { variables, equations: generic, constraint });
    };
    let family = family_equations(cd, sd, &variables)?;
    for eq in &family {
        let mut want: Vec<&Vec<Int>> = eq.terms.iter().map(|t| &t.exponents).collect();
        let mut have: Vec<&Vec<Int>> = generic
            .iter()
            .filter(|g| g.node == eq.node)
            .flat_map(|g| g.terms.iter().map(|t| &t.exponents))
            .collect();
        want.sort();
        have.sort();
        if want != have {
            return Err(SpliceError::FamilyMismatch(format!("node {}", eq.node)));
        }
    }
    Ok(SpliceEquations { variables, equations: family, constraint })
}

fn family_equations(cd: &CharacteristicData, sd: &SpliceDiagram, vars: &[usize]) -> Result<Vec<SpliceEquation>, SpliceError> {
    let g = cd.g;
    let pos = |w: usize| {
        vars.iter()
            .position(|&x| x == w)
            .ok_or_else(|| SpliceError::FamilyMismatch(format!("no leaf for z{w}")))
    };
    let power = |w: usize| -> Result<Vec<Int>, SpliceError> {
        let mut e = vec![Int::zero(); vars.len()];
        e[pos(w)?] = cd.n[w].clone();
        Ok(e)
    };
    let unit = |exponents| Term { coefficient: "1".into(), exponents };
    let mut out = Vec::new();
    let node1 = sd.node_of_leaf(1).ok_or_else(|| SpliceError::FamilyMismatch("no node at z1".into()))?;
    out.push(SpliceEquation { node: node1, terms: vec![unit(power(0)?), unit(power(1)?), unit(power(2)?)] });
    for k in 2..g {
        let node = sd.node_of_leaf(k).ok_or_else(|| SpliceError::FamilyMismatch(format!("no node at z{k}")))?;
        let mut mixed = vec![Int::zero(); vars.len()];
        for (j, b) in cd.b_row(k).iter().enumerate() {
            mixed[pos(j)?] = b.clone();
        }
        out.push(SpliceEquation { node, terms: vec![unit(power(k)?), unit(power(k + 1)?), unit(mixed)] });
    }
    Ok(out)
}

/// Canonical string of a splice diagram as a weighted tree; two diagrams
/// are isomorphic iff their canonical strings agree. With `labelled`, leaf
/// labels must match as well.
pub fn canonical_form(sd: &SpliceDiagram, labelled: bool) -> String {
    (0..sd.vertices.len())
        .map(|root| rooted(sd, root, None, labelled))
        .min()
        .unwrap_or_default()
}

fn rooted(sd: &SpliceDiagram, v: usize, parent: Option<usize>, labelled: bool) -> String {
    let mut children: Vec<String> = sd
        .incident(v)
        .into_iter()
        .filter(|&e| Some(e) != parent)
        .map(|e| {
            let c = sd.edges[e].other(v);
            let w = |x: usize| sd.edges[e].weight_at(x).map(ToString::to_string).unwrap_or_default();
            format!("<{},{}>{}", w(v), w(c), rooted(sd, c, Some(e), labelled))
        })
        .collect();
    children.sort();
    let tag = match (sd.vertices[v].kind, labelled, sd.vertices[v].label) {
        (SpliceVertexKind::Node, _, _) => "N".to_string(),
        (SpliceVertexKind::Leaf, true, Some(w)) => format!("L{w}"),
        (SpliceVertexKind::Leaf, _, _) => "L".to_string(),
    };
    format!("{tag}({})", children.join(","))
}

pub fn is_isomorphic(a: &SpliceDiagram, b: &SpliceDiagram) -> bool {
    canonical_form(a, false) == canonical_form(b, false)
}

/// Number of leaves, used for the equation count.
pub fn leaf_count(sd: &SpliceDiagram) -> usize {
    sd.leaves().len()
}
