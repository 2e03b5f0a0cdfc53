//! Alphabet layers as Eulerian graphs, and onion streams stitched from
//! their circuits.
//!
//! The layer graph of (k, n) has the (n-1)-words over [k] as vertices and
//! the n-words that mention the top symbol k-1 as edges; the edge
//! σ1...σn runs from σ1...σ(n-1) to σ2...σn. Every vertex is balanced
//! (out-degree k when it mentions k-1, otherwise 1), so each layer carries
//! Eulerian circuits. Walking a circuit from the all-zero vertex and
//! emitting the last symbol of every edge appends exactly the windows of
//! that layer to a stream that already ends in n-1 zeros, which is how
//! [`layered_onion_stream`] builds an onion De Bruijn stream layer by
//! layer.

use crate::error::{Error, Result};
use crate::prefer_max::OnionStream;
use crate::verify::{Counterexample, VerificationReport, VerifyStats};
use crate::words::{rank_contains, unrank_digits, Params, Symbol};

/// Rule for choosing among the remaining out-edges during a circuit walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EdgePolicy {
    /// Largest last symbol first.
    #[default]
    MaxSymbolFirst,
    /// Smallest last symbol first.
    MinSymbolFirst,
    /// Uniform choice from a deterministic generator with the given seed.
    SeededRandom(u64),
}

/// One alphabet layer of the order-n De Bruijn structure over [k].
///
/// Vertices and edges are addressed by their base-k ranks. Out-edge lists
/// are kept in canonical order, last symbol descending.
#[derive(Debug, Clone)]
pub struct LayerGraph {
    params: Params,
    adjacency: Vec<Vec<usize>>,
    edge_count: usize,
}

impl LayerGraph {
    pub fn params(&self) -> Params {
        self.params
    }

    pub fn n(&self) -> usize {
        self.params.n()
    }

    pub fn k(&self) -> u64 {
        self.params.k()
    }

    /// Number of vertices, k^(n-1).
    pub fn vertex_count(&self) -> usize {
        self.adjacency.len()
    }

    /// Number of edges, k^n - (k-1)^n.
    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// The (n-1)-word labelling vertex `vertex`.
    pub fn vertex_word(&self, vertex: usize) -> Vec<Symbol> {
        unrank_digits(vertex, self.params.k_usize(), self.params.n() - 1)
    }

    /// Rank of the vertex labelled by `word`.
    pub fn vertex_rank(&self, word: &[Symbol]) -> Result<usize> {
        if word.len() != self.params.n() - 1 {
            return Err(Error::WordLength {
                expected: self.params.n() - 1,
                found: word.len(),
            });
        }
        let mut rank = 0usize;
        for &symbol in word {
            if symbol >= self.params.k() {
                return Err(Error::SymbolOutOfRange {
                    symbol,
                    k: self.params.k(),
                });
            }
            rank = rank * self.params.k_usize() + symbol as usize;
        }
        Ok(rank)
    }

    /// Out-edges of `vertex` as edge-word ranks, last symbol descending.
    pub fn out_edges(&self, vertex: usize) -> &[usize] {
        &self.adjacency[vertex]
    }

    /// The n-word labelling edge `edge`.
    pub fn edge_word(&self, edge: usize) -> Vec<Symbol> {
        unrank_digits(edge, self.params.k_usize(), self.params.n())
    }

    /// Tail and head vertex ranks of edge `edge`.
    pub fn edge_endpoints(&self, edge: usize) -> (usize, usize) {
        let k = self.params.k_usize();
        (edge / k, edge % self.params.context_count())
    }

    /// All edge words in canonical adjacency order.
    pub fn edge_words(&self) -> Vec<Vec<Symbol>> {
        self.adjacency
            .iter()
            .flatten()
            .map(|&edge| self.edge_word(edge))
            .collect()
    }

    /// Removes one edge by its word. Useful for probing the balance and
    /// connectivity checks with broken graphs.
    pub fn remove_edge(&mut self, word: &[Symbol]) -> Result<()> {
        let rank = crate::words::word_rank(word, &self.params)?;
        let (tail, _) = self.edge_endpoints(rank);
        let list = &mut self.adjacency[tail];
        match list.iter().position(|&e| e == rank) {
            Some(slot) => {
                list.remove(slot);
                self.edge_count -= 1;
                Ok(())
            }
            None => Err(Error::NoSuchEdge {
                word: word.to_vec(),
            }),
        }
    }

    fn in_degrees(&self) -> Vec<usize> {
        let mut degrees = vec![0usize; self.vertex_count()];
        for list in &self.adjacency {
            for &edge in list {
                degrees[edge % self.params.context_count()] += 1;
            }
        }
        degrees
    }
}

/// Builds the (k, n) layer graph. Requires k >= 2: the layer is what [k]
/// adds over [k-1].
pub fn build_layer_graph(k: u64, n: usize) -> Result<LayerGraph> {
    if k < 2 {
        return Err(Error::AlphabetTooSmallForLayer { k });
    }
    let params = Params::new(n, k)?;
    let inner = Params::new(n, k - 1)?;
    let ku = params.k_usize();
    let top = k - 1;
    let mut adjacency = Vec::with_capacity(params.context_count());
    let mut edge_count = 0usize;
    for tail in 0..params.context_count() {
        let list: Vec<usize> = if rank_contains(tail, ku, n - 1, top) {
            (0..ku).rev().map(|tau| tail * ku + tau).collect()
        } else {
            vec![tail * ku + top as usize]
        };
        edge_count += list.len();
        adjacency.push(list);
    }
    debug_assert_eq!(edge_count, params.word_count() - inner.word_count());
    Ok(LayerGraph {
        params,
        adjacency,
        edge_count,
    })
}

/// Checks that every vertex has equal in- and out-degree and that all
/// edges sit in one weakly connected component.
pub fn check_balanced(g: &LayerGraph) -> VerificationReport {
    const PROP: &str = "balanced";
    let stats = VerifyStats {
        windows_checked: g.edge_count() as u64,
        layers_checked: 1,
    };
    for (vertex, &in_degree) in g.in_degrees().iter().enumerate() {
        let out = g.out_edges(vertex).len();
        if out != in_degree {
            return VerificationReport::fail(
                PROP,
                Counterexample {
                    word: Some(g.vertex_word(vertex)),
                    expected: Some("in-degree = out-degree".into()),
                    found: Some(format!("out {out}, in {in_degree}")),
                    ..Counterexample::default()
                },
                stats,
            );
        }
    }
    // Undirected reachability over vertices that touch at least one edge.
    let mut neighbours = vec![Vec::new(); g.vertex_count()];
    for vertex in 0..g.vertex_count() {
        for &edge in g.out_edges(vertex) {
            let (tail, head) = g.edge_endpoints(edge);
            neighbours[tail].push(head);
            neighbours[head].push(tail);
        }
    }
    let active: Vec<usize> = (0..g.vertex_count())
        .filter(|&v| !neighbours[v].is_empty())
        .collect();
    if let Some(&first) = active.first() {
        let mut visited = vec![false; g.vertex_count()];
        let mut queue = vec![first];
        visited[first] = true;
        while let Some(vertex) = queue.pop() {
            for &next in &neighbours[vertex] {
                if !visited[next] {
                    visited[next] = true;
                    queue.push(next);
                }
            }
        }
        if let Some(&stranded) = active.iter().find(|&&v| !visited[v]) {
            return VerificationReport::fail(
                PROP,
                Counterexample {
                    word: Some(g.vertex_word(stranded)),
                    expected: Some("one connected component".into()),
                    found: Some("vertex unreachable from the component of the first edge".into()),
                    ..Counterexample::default()
                },
                stats,
            );
        }
    }
    VerificationReport::pass(PROP, stats)
}

/// An Eulerian circuit through a layer graph: every edge exactly once,
/// starting and ending at `start`.
#[derive(Debug, Clone)]
pub struct EulerCircuit {
    params: Params,
    start: Vec<Symbol>,
    edges: Vec<usize>,
    emitted: Vec<Symbol>,
}

impl EulerCircuit {
    pub fn params(&self) -> Params {
        self.params
    }

    pub fn start(&self) -> &[Symbol] {
        &self.start
    }

    /// Edge-word ranks in walk order.
    pub fn edge_ranks(&self) -> &[usize] {
        &self.edges
    }

    /// Edge words in walk order.
    pub fn edge_words(&self) -> Vec<Vec<Symbol>> {
        let k = self.params.k_usize();
        self.edges
            .iter()
            .map(|&e| unrank_digits(e, k, self.params.n()))
            .collect()
    }

    /// Last symbol of each edge in walk order. Appending these to a
    /// sequence ending in the start word walks exactly this circuit.
    pub fn emitted_symbols(&self) -> &[Symbol] {
        &self.emitted
    }

    pub fn into_emitted(self) -> Vec<Symbol> {
        self.emitted
    }
}

struct SplitMix64(u64);

impl SplitMix64 {
    fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    fn below(&mut self, bound: usize) -> usize {
        (self.next() % bound as u64) as usize
    }
}

/// Hierholzer's algorithm with an explicit stack. The walk consumes the
/// adjacency lists in place, choosing at every branch according to
/// `policy`; identical inputs and seed give identical circuits. Starting
/// the walk at the requested vertex makes rotation unnecessary.
pub fn hierholzer_circuit(
    g: &LayerGraph,
    start: &[Symbol],
    policy: EdgePolicy,
) -> Result<EulerCircuit> {
    let start_rank = g.vertex_rank(start)?;
    if g.out_edges(start_rank).is_empty() {
        return Err(Error::NoOutgoingEdges {
            vertex: start.to_vec(),
        });
    }
    for (vertex, &in_degree) in g.in_degrees().iter().enumerate() {
        if g.out_edges(vertex).len() != in_degree {
            return Err(Error::Unbalanced {
                vertex: g.vertex_word(vertex),
            });
        }
    }
    // Remaining out-edges per vertex, arranged so that the policy's pick is
    // always a pop from the back.
    let mut remaining: Vec<Vec<usize>> = g
        .adjacency
        .iter()
        .map(|list| match policy {
            EdgePolicy::MaxSymbolFirst => list.iter().rev().copied().collect(),
            EdgePolicy::MinSymbolFirst => list.clone(),
            EdgePolicy::SeededRandom(_) => list.clone(),
        })
        .collect();
    let mut rng = match policy {
        EdgePolicy::SeededRandom(seed) => Some(SplitMix64(seed)),
        _ => None,
    };
    let context_count = g.params.context_count();
    let mut vertex_stack = vec![start_rank];
    let mut edge_stack: Vec<usize> = Vec::new();
    let mut circuit: Vec<usize> = Vec::with_capacity(g.edge_count());
    while let Some(&vertex) = vertex_stack.last() {
        let list = &mut remaining[vertex];
        if list.is_empty() {
            vertex_stack.pop();
            if let Some(edge) = edge_stack.pop() {
                circuit.push(edge);
            }
        } else {
            let edge = match &mut rng {
                Some(rng) => list.swap_remove(rng.below(list.len())),
                None => list.pop().expect("list checked non-empty"),
            };
            vertex_stack.push(edge % context_count);
            edge_stack.push(edge);
        }
    }
    if circuit.len() != g.edge_count() {
        return Err(Error::DisconnectedGraph {
            remaining: g.edge_count() - circuit.len(),
        });
    }
    circuit.reverse();
    let k = g.params.k();
    let emitted = circuit.iter().map(|&e| e as u64 % k).collect();
    Ok(EulerCircuit {
        params: g.params,
        start: start.to_vec(),
        edges: circuit,
        emitted,
    })
}

/// An onion De Bruijn stream assembled from per-layer Eulerian circuits:
/// n zeros for layer one, then for each k >= 2 the emission of a circuit
/// of the (k, n) layer graph based at the all-zero vertex.
pub fn layered_onion_stream(n: usize, policy: EdgePolicy) -> Result<OnionStream> {
    if n == 0 {
        return Err(Error::ZeroOrder);
    }
    Ok(OnionStream::new(
        n,
        Box::new(move |k| {
            if k == 1 {
                Ok(vec![0; n])
            } else {
                let g = build_layer_graph(k, n)?;
                let basepoint = vec![0; n - 1];
                Ok(hierholzer_circuit(&g, &basepoint, policy)?.into_emitted())
            }
        }),
    ))
}
