//! Graph dumps in DOT and JSON. Vertices appear in rank order and edges
//! follow each tail vertex's outgoing list, so output is deterministic.

use onion_debruijn::{format_word, LayerGraph, Symbol};
use serde::Serialize;

#[derive(Serialize)]
struct GraphExport {
    n: usize,
    k: u64,
    vertices: Vec<Vec<Symbol>>,
    edges: Vec<EdgeExport>,
}

#[derive(Serialize)]
struct EdgeExport {
    word: Vec<Symbol>,
    from: usize,
    to: usize,
}

pub fn export_dot(graph: &LayerGraph) -> String {
    let mut out = String::from("digraph layer {\n");
    for vertex in 0..graph.vertex_count() {
        let label = format_word(&graph.vertex_word(vertex));
        out.push_str(&format!("  v{vertex} [label=\"{label}\"];\n"));
    }
    for tail in 0..graph.vertex_count() {
        for &edge in graph.out_edges(tail) {
            let (from, to) = graph.edge_endpoints(edge);
            let word = graph.edge_word(edge);
            let last = word.last().copied().unwrap_or(0);
            out.push_str(&format!("  v{from} -> v{to} [label=\"{last}\"];\n"));
        }
    }
    out.push_str("}\n");
    out
}

pub fn export_json(graph: &LayerGraph) -> serde_json::Result<String> {
    let vertices: Vec<Vec<Symbol>> = (0..graph.vertex_count())
        .map(|v| graph.vertex_word(v))
        .collect();
    let mut edges = Vec::with_capacity(graph.edge_count());
    for tail in 0..graph.vertex_count() {
        for &edge in graph.out_edges(tail) {
            let (from, to) = graph.edge_endpoints(edge);
            edges.push(EdgeExport {
                word: graph.edge_word(edge),
                from,
                to,
            });
        }
    }
    let export = GraphExport {
        n: graph.n(),
        k: graph.k(),
        vertices,
        edges,
    };
    let mut text = serde_json::to_string_pretty(&export)?;
    text.push('\n');
    Ok(text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use onion_debruijn::build_layer_graph;

    #[test]
    fn dot_lists_every_vertex_and_edge() {
        let graph = build_layer_graph(2, 2).unwrap();
        let dot = export_dot(&graph);
        assert_eq!(
            dot,
            "digraph layer {\n  v0 [label=\"0\"];\n  v1 [label=\"1\"];\n  v0 -> v1 [label=\"1\"];\n  v1 -> v1 [label=\"1\"];\n  v1 -> v0 [label=\"0\"];\n}\n"
        );
    }

    #[test]
    fn dot_handles_the_order_one_self_loop() {
        let graph = build_layer_graph(2, 1).unwrap();
        let dot = export_dot(&graph);
        assert_eq!(
            dot,
            "digraph layer {\n  v0 [label=\"\u{03b5}\"];\n  v0 -> v0 [label=\"1\"];\n}\n"
        );
    }

    #[test]
    fn json_shape_matches_the_graph() {
        let graph = build_layer_graph(2, 2).unwrap();
        let text = export_json(&graph).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["n"], 2);
        assert_eq!(value["k"], 2);
        assert_eq!(value["vertices"], serde_json::json!([[0], [1]]));
        let edges = value["edges"].as_array().unwrap();
        assert_eq!(edges.len(), 3);
        assert_eq!(
            edges[0],
            serde_json::json!({"word": [0, 1], "from": 0, "to": 1})
        );
        assert_eq!(
            edges[1],
            serde_json::json!({"word": [1, 1], "from": 1, "to": 1})
        );
        assert_eq!(
            edges[2],
            serde_json::json!({"word": [1, 0], "from": 1, "to": 0})
        );
    }

    #[test]
    fn json_counts_for_the_three_symbol_graph() {
        let graph = build_layer_graph(3, 2).unwrap();
        let text = export_json(&graph).unwrap();
        let value: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(value["vertices"].as_array().unwrap().len(), 3);
        assert_eq!(value["edges"].as_array().unwrap().len(), 5);
    }
}
