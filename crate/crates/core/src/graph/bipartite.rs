use super::DiGraph;

/// Split-node representation: every node `v` becomes `v+` (out side) and
/// `v-` (in side); a link `v -> w` becomes the undirected edge `(v+, w-)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BipartiteGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    plus_adj: Vec<Vec<usize>>,
    minus_adj: Vec<Vec<usize>>,
}

impl BipartiteGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut plus_adj = vec![Vec::new(); n];
        let mut minus_adj = vec![Vec::new(); n];
        for (e, &(p, m)) in edges.iter().enumerate() {
            plus_adj[p].push(e);
            minus_adj[m].push(e);
        }
        BipartiteGraph {
            n,
            edges,
            plus_adj,
            minus_adj,
        }
    }

    /// Vertices per side.
    pub fn side_len(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(plus_id, minus_id)`, indexed by edge id.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Edge ids incident to `p+`.
    pub fn plus_edges(&self, p: usize) -> &[usize] {
        &self.plus_adj[p]
    }

    /// Edge ids incident to `m-`.
    pub fn minus_edges(&self, m: usize) -> &[usize] {
        &self.minus_adj[m]
    }

    /// `+` neighbours of `m-`, i.e. the predecessors of `m`.
    pub fn minus_neighbors(&self, m: usize) -> impl Iterator<Item = usize> + '_ {
        self.minus_adj[m].iter().map(move |&e| self.edges[e].0)
    }
}

pub fn bipartite_repr(g: &DiGraph) -> BipartiteGraph {
    BipartiteGraph::new(g.node_count(), g.links().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_edges() {
        let b = bipartite_repr(&DiGraph::chain(3));
        assert_eq!(b.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(b.side_len(), 3);
    }

    #[test]
    fn self_loop_edge() {
        let g = DiGraph::from_links(1, [(0, 0)], true).unwrap();
        assert_eq!(bipartite_repr(&g).edges(), &[(0, 0)]);
    }

    #[test]
    fn empty_graph() {
        let b = bipartite_repr(&DiGraph::new(3));
        assert_eq!(b.edge_count(), 0);
        assert_eq!(b.side_len(), 3);
    }

    #[test]
    fn adjacency_indexes_edges() {
        let b = bipartite_repr(&DiGraph::star(4));
        assert_eq!(b.plus_edges(0).len(), 3);
        assert_eq!(b.minus_neighbors(2).collect::<Vec<_>>(), vec![0]);
    }
}
