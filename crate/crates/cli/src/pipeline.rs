use branchlink::detcalc::{
    build_intersection_matrix, classify_brieskorn_pham, classify_link, det_closed_form, det_exact, det_s_of,
    GcdWitness, LinkKind,
};
use branchlink::plumbing::{
    assemble_full_resolution, classify_topologically, h1_link, minimize, pullback_on_full_resolution, PlumbingGraph,
};
use branchlink::qres::{compute_qresolution, rupture_census, LastCurve};
use branchlink::semigroup::{derive_from_generators, monomial_curve_equations, CharacteristicData};
use branchlink::splice::{
    check_semigroup_condition, expected_splice_diagram, splice_equations, splice_from_plumbing, SpliceDiagram
};
use branchlink::{Error, Int};

use crate::report::*;
use crate::CliError;

/// A finished analysis with the graph and splice diagram kept for drawing.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub report: AnalysisReport,
    /// Full resolution graph, or its minimization when requested.
    pub graph: PlumbingGraph,
    pub splice: Option<SpliceDiagram>,
}

fn strings<T: ToString>(v: &[T]) -> Vec<String> {
    v.iter().map(ToString::to_string).collect()
}

fn internal(e: impl Into<Error>) -> CliError {
    CliError::from(e.into())
}

fn check(ok: bool, what: impl FnOnce() -> String) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Internal(what()))
    }
}

/// Runs the whole pipeline and cross-checks every quantity that is
/// computed by two routes.
pub fn analyze(generators: &[Int], minimize_graph: bool) -> Result<Analysis, CliError> {
    let cd = derive_from_generators(generators).map_err(internal)?;
    let qr = compute_qresolution(&cd).map_err(internal)?;
    let g = cd.g;

    let det_a = det_exact(&build_intersection_matrix(&qr));
    if g >= 3 {
        let closed = det_closed_form(&qr).map_err(internal)?;
        check(closed == det_a, || format!("det A: closed form {closed} vs elimination {det_a}"))?;
    }
    let det_s = det_s_of(&qr).map_err(internal)?;
    let link = classify_link(&cd);

    let pg = assemble_full_resolution(&qr).map_err(internal)?;
    let mult = pullback_on_full_resolution(&pg, &qr).map_err(internal)?;
    let h1 = h1_link(&pg).map_err(internal)?;
    check(h1.torsion_order() == det_s, || format!("|H1 torsion| {} vs det S {det_s}", h1.torsion_order()))?;
    let topological = classify_topologically(&pg);
    check(topological == link.kind, || format!("class: gcd criterion {} vs graph {topological}", link.kind))?;

    let rupture = if g >= 3 {
        let rc = rupture_census(&qr).map_err(internal)?;
        Some(RuptureReport {
            rupture_count: rc.rupture_count.to_string(),
            last_curve: match rc.last {
                LastCurve::Rupture => "rupture",
                LastCurve::Possible => "possibly contractible",
            }
            .into(),
        })
    } else {
        None
    };
    let brieskorn_pham = if g == 2 {
        let bp = bp_report(&cd.n[0], &cd.n[1], &cd.n[2])?;
        check(bp.class == link.kind.to_string(), || format!("class: family {} vs Brieskorn-Pham {}", link.kind, bp.class))?;
        Some(bp)
    } else {
        None
    };

    let (minimized, drawn) = if minimize_graph {
        let m = minimize(&pg);
        let report = MinimizedReport {
            contracted: m.contracted.iter().map(|o| o.label()).collect(),
            graph: graph_report(&m.graph, None),
        };
        (Some(report), m.graph)
    } else {
        (None, pg.clone())
    };

    let (splice, diagram) = if link.kind == LinkKind::ZHS {
        let (report, sd) = splice_section(&cd, &pg)?;
        (Some(report), Some(sd))
    } else {
        (None, None)
    };

    let report = AnalysisReport {
        generators: strings(&cd.beta),
        characteristic: CharacteristicReport {
            g,
            beta: strings(&cd.beta),
            e: strings(&cd.e),
            n: strings(&cd.n),
            b: cd.b.iter().map(|row| strings(row)).collect(),
            equations: strings(&monomial_curve_equations(&cd)),
        },
        qresolution: QresReport {
            multiplicities: strings(&qr.mult),
            r: strings(&qr.r),
            p: strings(&qr.p),
            genus: strings(&qr.genus),
            self_intersections: strings(&qr.a),
            census: qr
                .census
                .iter()
                .map(|c| CensusReport {
                    point_kind: c.kind.label(),
                    count: c.count.to_string(),
                    d: c.hj.d.to_string(),
                    q: c.hj.q.to_string(),
                })
                .collect(),
            strict_curve: [qr.strict_curve.second_exponent.to_string(), qr.strict_curve.first_exponent.to_string()],
        },
        det_a: det_a.to_string(),
        det_s: det_s.to_string(),
        link: LinkReport {
            class: link.kind.to_string(),
            rational_witnesses: link.rational_witnesses.iter().map(|(a, b)| [witness(a), witness(b)]).collect(),
            integral_witnesses: link.integral_witnesses.iter().map(witness).collect(),
        },
        h1: H1Report { free_rank: h1.free_rank.to_string(), torsion: strings(&h1.torsion) },
        rupture,
        brieskorn_pham,
        graph: graph_report(&pg, Some(&mult)),
        minimized,
        splice,
    };
    Ok(Analysis { report, graph: drawn, splice: diagram })
}

fn witness(w: &GcdWitness) -> WitnessReport {
    WitnessReport {
        label: w.label.clone(),
        left: w.left.to_string(),
        right: w.right.to_string(),
        value: w.value.to_string(),
    }
}

pub fn graph_report(pg: &PlumbingGraph, mult: Option<&[Int]>) -> GraphReport {
    GraphReport {
        vertices: pg
            .vertices
            .iter()
            .enumerate()
            .map(|(id, v)| GraphVertex {
                id,
                genus: v.genus.to_string(),
                selfint: v.self_int.to_string(),
                label: v.origin.label(),
                multiplicity: mult.map(|m| m[id].to_string()),
            })
            .collect(),
        edges: pg.edges.iter().map(|&(a, b)| [a, b]).collect(),
        arrows: pg.arrows.iter().map(|(v, y)| (*v, y.to_string())).collect(),
    }
}

/// Brieskorn-Pham invariants; every exponent must be at least 2.
pub fn bp_report(a1: &Int, a2: &Int, a3: &Int) -> Result<BpReport, CliError> {
    let two = Int::from(2);
    if [a1, a2, a3].iter().any(|a| **a < two) {
        return Err(CliError::Invalid("Brieskorn-Pham exponents must be at least 2".into()));
    }
    let bp = classify_brieskorn_pham(a1, a2, a3);
    Ok(BpReport {
        exponents: [a1.to_string(), a2.to_string(), a3.to_string()],
        class: bp.kind.to_string(),
        genus: bp.genus.to_string(),
        determinant: bp.determinant.to_string(),
        e: bp.e.to_string(),
        alpha: bp.alpha.each_ref().map(ToString::to_string),
        d: bp.d.each_ref().map(ToString::to_string),
    })
}

/// Splice diagram read off the resolution graph, compared with the closed
/// form, together with its semigroup witnesses and equations.
pub fn splice_section(cd: &CharacteristicData, pg: &PlumbingGraph) -> Result<(SpliceReport, SpliceDiagram), CliError> {
    let sd = splice_from_plumbing(pg).map_err(internal)?;
    let expected = expected_splice_diagram(cd).map_err(internal)?;
    check(
        branchlink::splice::canonical_form(&sd, true) == branchlink::splice::canonical_form(&expected, true),
        || "splice diagram differs from the closed form".into(),
    )?;
    let eqs = splice_equations(&sd, Some(cd)).map_err(internal)?;
    let sg = check_semigroup_condition(&sd);

    let mut weights = Vec::new();
    let mut dets = Vec::new();
    for (i, e) in sd.edges.iter().enumerate() {
        for (end, w) in e.ends.iter().zip(&e.weights) {
            if let Some(w) = w {
                weights.push(SpliceWeight { node: *end, towards: e.other(*end), weight: w.to_string() });
            }
        }
        if let Some(d) = sd.edge_determinant(i) {
            dets.push(EdgeDeterminant { ends: e.ends, determinant: d.to_string() });
        }
    }
    let report = SpliceReport {
        nodes: sd.nodes(),
        leaves: sd
            .leaves()
            .into_iter()
            .map(|id| SpliceLeaf { id, variable: sd.vertices[id].label })
            .collect(),
        weights,
        edge_determinants: dets,
        semigroup: sg
            .entries
            .iter()
            .map(|en| SemigroupWitness {
                node: en.node,
                towards: sd.edges[en.edge].other(en.node),
                target: en.target.to_string(),
                leaves: en.leaves.clone(),
                generators: strings(&en.generators),
                alpha: en.witness.as_deref().map(strings).unwrap_or_default(),
            })
            .collect(),
        variables: eqs.variables.clone(),
        equations: eqs
            .equations
            .iter()
            .map(|eq| {
                eq.terms
                    .iter()
                    .map(|t| TermReport { coefficient: t.coefficient.clone(), exponents: strings(&t.exponents) })
                    .collect()
            })
            .collect(),
        text: eqs.render(),
        constraint: eqs.constraint.clone(),
    };
    Ok((report, sd))
}
