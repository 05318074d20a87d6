//! Serializable reports. Every integer is a decimal string and every
//! rational is `p/q`, so values of any size survive a JSON round trip.

use std::fmt::{self, Display, Formatter};

use serde::{Deserialize, Serialize};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct AnalysisReport {
    pub generators: Vec<String>,
    pub characteristic: CharacteristicReport,
    pub qresolution: QresReport,
    #[serde(rename = "detA")]
    pub det_a: String,
    #[serde(rename = "detS")]
    pub det_s: String,
    pub link: LinkReport,
    pub h1: H1Report,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rupture: Option<RuptureReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub brieskorn_pham: Option<BpReport>,
    pub graph: GraphReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub minimized: Option<MinimizedReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub splice: Option<SpliceReport>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CharacteristicReport {
    pub g: usize,
    pub beta: Vec<String>,
    pub e: Vec<String>,
    pub n: Vec<String>,
    /// Row `i` holds `b_i0, ..., b_i(i-1)`.
    pub b: Vec<Vec<String>>,
    pub equations: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct QresReport {
    /// `N_1, ..., N_(g-1)`.
    pub multiplicities: Vec<String>,
    /// `r_0, ..., r_g`.
    pub r: Vec<String>,
    /// `p_1, ..., p_(g-1)`.
    pub p: Vec<String>,
    /// Genus of a component of `E_1, ..., E_(g-1)`.
    pub genus: Vec<String>,
    /// `-E_k^2` for one component of each `E_k`.
    pub self_intersections: Vec<String>,
    pub census: Vec<CensusReport>,
    pub strict_curve: [String; 2],
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct CensusReport {
    pub point_kind: String,
    pub count: String,
    pub d: String,
    pub q: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct WitnessReport {
    pub label: String,
    pub left: String,
    pub right: String,
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct LinkReport {
    pub class: String,
    pub rational_witnesses: Vec<[WitnessReport; 2]>,
    pub integral_witnesses: Vec<WitnessReport>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct H1Report {
    pub free_rank: String,
    pub torsion: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct RuptureReport {
    pub rupture_count: String,
    pub last_curve: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct BpReport {
    pub exponents: [String; 3],
    pub class: String,
    pub genus: String,
    pub determinant: String,
    pub e: String,
    pub alpha: [String; 3],
    pub d: [String; 3],
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphVertex {
    pub id: usize,
    pub genus: String,
    pub selfint: String,
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicity: Option<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphReport {
    pub vertices: Vec<GraphVertex>,
    pub edges: Vec<[usize; 2]>,
    /// `(vertex, intersection with the strict transform)`.
    pub arrows: Vec<(usize, String)>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct MinimizedReport {
    pub contracted: Vec<String>,
    pub graph: GraphReport,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SpliceLeaf {
    pub id: usize,
    pub variable: Option<usize>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SpliceWeight {
    pub node: usize,
    pub towards: usize,
    pub weight: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct EdgeDeterminant {
    pub ends: [usize; 2],
    pub determinant: String,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SemigroupWitness {
    pub node: usize,
    pub towards: usize,
    pub target: String,
    pub leaves: Vec<usize>,
    pub generators: Vec<String>,
    pub alpha: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct TermReport {
    pub coefficient: String,
    pub exponents: Vec<String>,
}

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct SpliceReport {
    pub nodes: Vec<usize>,
    pub leaves: Vec<SpliceLeaf>,
    pub weights: Vec<SpliceWeight>,
    pub edge_determinants: Vec<EdgeDeterminant>,
    pub semigroup: Vec<SemigroupWitness>,
    /// Variable index `w` of each exponent slot.
    pub variables: Vec<usize>,
    pub equations: Vec<Vec<TermReport>>,
    pub text: Vec<String>,
    pub constraint: String,
}

fn join(v: &[String]) -> String {
    v.join(", ")
}

impl Display for AnalysisReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let c = &self.characteristic;
        writeln!(f, "generators: {}", join(&self.generators))?;
        writeln!(f, "g = {}", c.g)?;
        writeln!(f, "e: {}", join(&c.e))?;
        writeln!(f, "n: {}", join(&c.n))?;
        for (i, row) in c.b.iter().enumerate() {
            writeln!(f, "b_{}: {}", i + 1, join(row))?;
        }
        for eq in &c.equations {
            writeln!(f, "curve: {eq}")?;
        }
        write!(f, "{}", self.qresolution)?;
        writeln!(f, "detA = {}", self.det_a)?;
        writeln!(f, "detS = {}", self.det_s)?;
        write!(f, "{}", self.link)?;
        writeln!(f, "H1: free rank {}, torsion [{}]", self.h1.free_rank, join(&self.h1.torsion))?;
        if let Some(r) = &self.rupture {
            writeln!(f, "rupture components: {} (last curve: {})", r.rupture_count, r.last_curve)?;
        }
        if let Some(bp) = &self.brieskorn_pham {
            write!(f, "{bp}")?;
        }
        writeln!(f, "resolution graph:")?;
        write!(f, "{}", self.graph)?;
        if let Some(m) = &self.minimized {
            writeln!(f, "minimized graph (contracted: {}):", join(&m.contracted))?;
            write!(f, "{}", m.graph)?;
        }
        if let Some(s) = &self.splice {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

impl Display for QresReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "N: {}", join(&self.multiplicities))?;
        writeln!(f, "r: {}", join(&self.r))?;
        writeln!(f, "p: {}", join(&self.p))?;
        writeln!(f, "genus: {}", join(&self.genus))?;
        writeln!(f, "-E^2: {}", join(&self.self_intersections))?;
        for c in &self.census {
            writeln!(f, "point {}: count {}, type 1/{}(1, {})", c.point_kind, c.count, c.d, c.q)?;
        }
        writeln!(f, "strict transform at P: v^{} = u^{}", self.strict_curve[0], self.strict_curve[1])
    }
}

impl Display for LinkReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "class: {}", self.class)?;
        for [a, b] in &self.rational_witnesses {
            writeln!(f, "  {a}; {b}")?;
        }
        for w in &self.integral_witnesses {
            writeln!(f, "  {w}")?;
        }
        Ok(())
    }
}

impl Display for WitnessReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} = gcd({}, {}) = {}", self.label, self.left, self.right, self.value)
    }
}

impl Display for BpReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "Brieskorn-Pham ({}): {}", join(&self.exponents), self.class)?;
        writeln!(f, "  genus {}, determinant {}, e {}", self.genus, self.determinant, self.e)?;
        writeln!(f, "  alpha: {}; d: {}", join(&self.alpha), join(&self.d))
    }
}

impl Display for GraphReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        for v in &self.vertices {
            write!(f, "  v{} {} [{}, {}]", v.id, v.label, v.genus, v.selfint)?;
            match &v.multiplicity {
                Some(m) => writeln!(f, " mult {m}")?,
                None => writeln!(f)?,
            }
        }
        let edges: Vec<String> = self.edges.iter().map(|[a, b]| format!("v{a}-v{b}")).collect();
        writeln!(f, "  edges: {}", join(&edges))?;
        for (v, y) in &self.arrows {
            writeln!(f, "  arrow at v{v}: {y}")?;
        }
        Ok(())
    }
}

impl Display for SpliceReport {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        writeln!(f, "splice diagram:")?;
        for w in &self.weights {
            writeln!(f, "  node s{} towards s{}: {}", w.node, w.towards, w.weight)?;
        }
        for l in &self.leaves {
            match l.variable {
                Some(w) => writeln!(f, "  leaf s{}: z{w}", l.id)?,
                None => writeln!(f, "  leaf s{}", l.id)?,
            }
        }
        for d in &self.edge_determinants {
            writeln!(f, "  edge determinant s{}-s{}: {}", d.ends[0], d.ends[1], d.determinant)?;
        }
        for s in &self.semigroup {
            writeln!(
                f,
                "  semigroup at s{} towards s{}: {} = alpha [{}] . l' [{}]",
                s.node,
                s.towards,
                s.target,
                join(&s.alpha),
                join(&s.generators)
            )?;
        }
        writeln!(f, "splice equations:")?;
        for line in &self.text {
            writeln!(f, "  {line}")?;
        }
        writeln!(f, "  ({})", self.constraint)
    }
}
