use simplex_core::faces::{
    absolutely_incoming_faces, absolutely_outgoing_faces, binomial, enumerate_faces, face_order, EquationGraph,
    FaceCode, FaceGraph, Vertex,
};

use crate::report::list;
use crate::{Absolute, CliResult, FacesArgs, Output, RunReport};

pub(super) fn faces(args: &FacesArgs, echo: String) -> CliResult<Output> {
    let mut report = RunReport::new(echo);
    report.field("dim", args.dim);
    match (args.absolute, args.arity) {
        (Some(which), Some(arity)) => {
            let faces = match which {
                Absolute::In => absolutely_incoming_faces(args.dim, arity)?,
                Absolute::Out => absolutely_outgoing_faces(args.dim, arity)?,
            };
            let orders = faces
                .iter()
                .map(|f| face_order(f, arity))
                .collect::<Result<Vec<_>, _>>()?;
            let expected = binomial(args.dim, arity - 1);
            report
                .field("arity", arity)
                .field("absolute", if which == Absolute::In { "incoming" } else { "outgoing" })
                .field("count", faces.len())
                .field("expected_count", expected)
                .field("faces", list(&faces))
                .field("orders", list(&orders));
            report.verdict(faces.len() == expected);
        }
        _ => {
            let k = args.k.expect("clap requires --k without --absolute");
            let faces = enumerate_faces(args.dim, k)?;
            report.field("k", k).field("count", faces.len()).field("faces", list(&faces));
        }
    }
    Ok(report.into())
}

fn vertex_word(g: &FaceGraph, v: Vertex) -> String {
    match v {
        Vertex::Cell(_) => format!("c:{}", g.face(v)),
        Vertex::Wall(_) => format!("w:{}", g.face(v)),
    }
}

pub(super) fn graph(dim: usize, arity: usize, echo: String) -> CliResult<Output> {
    let mut report = RunReport::new(echo);
    let g = FaceGraph::build(dim, arity)?;
    let words = |ws: Vec<usize>| -> Vec<FaceCode> { ws.into_iter().map(|w| g.walls()[w].clone()).collect() };
    let mut sources = words(g.sources());
    let mut sinks = words(g.sinks());
    sources.sort();
    sinks.sort();
    let mut abs_in = absolutely_incoming_faces(dim, arity)?;
    let mut abs_out = absolutely_outgoing_faces(dim, arity)?;
    abs_in.sort();
    abs_out.sort();
    report
        .field("dim", dim)
        .field("arity", arity)
        .field("cells", g.cells().len())
        .field("walls", g.walls().len())
        .field("edges", g.edge_count())
        .field("acyclic", true)
        .field("sources", list(&sources))
        .field("sinks", list(&sinks))
        .field("sources_are_absolutely_incoming", sources == abs_in)
        .field("sinks_are_absolutely_outgoing", sinks == abs_out)
        .field(
            "topological_order",
            list(g.topological_order().iter().map(|&v| vertex_word(&g, v))),
        );
    report.verdict(sources == abs_in && sinks == abs_out);
    Ok(report.into())
}

pub(super) fn equation_graph(arity: usize, echo: String) -> CliResult<Output> {
    let mut report = RunReport::new(echo);
    let g = EquationGraph::build(arity)?;
    let tournament = |side: &[FaceCode]| {
        (0..side.len()).all(|i| (i + 1..side.len()).all(|j| g.has_edge(&side[i], &side[j]) && !g.has_edge(&side[j], &side[i])))
    };
    let cross = g
        .lhs()
        .iter()
        .any(|a| g.rhs().iter().any(|b| g.has_edge(a, b) || g.has_edge(b, a)));
    let lhs_ok = tournament(g.lhs());
    let rhs_ok = tournament(&g.rhs_application_order());
    report
        .field("arity", arity)
        .field("lhs", list(g.lhs()))
        .field("rhs", list(g.rhs()))
        .field("edges", g.edges().len())
        .field("lhs_tournament_in_order", lhs_ok)
        .field("rhs_tournament_in_order", rhs_ok)
        .field("cross_component_edges", cross);
    for (i, e) in g.edges().iter().enumerate() {
        report.field(format!("edge.{i}"), format!("{} -> {} via {}", e.from, e.to, e.via));
    }
    report.verdict(lhs_ok && rhs_ok && !cross);
    Ok(report.into())
}
