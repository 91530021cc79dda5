use std::collections::VecDeque;

use super::{ChainBound, DiGraph, InputSet};
use crate::error::{Error, Result};

/// Graph linking `v -> w` (for `v != w`) whenever `w` is reachable from `v`
/// in at most `bound` hops. Never contains self-loops.
pub fn accessibility_graph(g: &DiGraph, bound: ChainBound) -> DiGraph {
    let n = g.node_count();
    let limit = bound.as_steps().unwrap_or(usize::MAX);
    let mut seen = vec![usize::MAX; n];
    let mut frontier = Vec::new();
    let mut next = Vec::new();
    let mut out_adj = Vec::with_capacity(n);

    for src in 0..n {
        seen[src] = src;
        frontier.clear();
        frontier.push(src);
        let mut reached = Vec::new();
        let mut depth = 0;
        while !frontier.is_empty() && depth < limit {
            next.clear();
            for &v in &frontier {
                for &w in g.successors(v) {
                    if seen[w] != src {
                        seen[w] = src;
                        reached.push(w);
                        next.push(w);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            depth += 1;
        }
        reached.sort_unstable();
        out_adj.push(reached);
    }
    DiGraph::from_sorted_out_adj(out_adj, false)
}

/// Hop distances from `src`; `None` for unreachable nodes.
pub fn distances_from(g: &DiGraph, src: usize) -> Vec<Option<usize>> {
    multi_source_distances(g, std::iter::once(src))
}

fn multi_source_distances<I: IntoIterator<Item = usize>>(g: &DiGraph, srcs: I) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.node_count()];
    let mut queue = VecDeque::new();
    for s in srcs {
        if dist[s].is_none() {
            dist[s] = Some(0);
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let d = dist[v].unwrap() + 1;
        for &w in g.successors(v) {
            if dist[w].is_none() {
                dist[w] = Some(d);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Length of the longest control chain: the largest distance from the
/// nearest input to any node. `Ok(None)` means some node is unreachable
/// from every input.
pub fn lcc_length(g: &DiGraph, inputs: &InputSet) -> Result<Option<usize>> {
    if inputs.is_empty() {
        return Err(Error::EmptyInputSet);
    }
    if let Some(&id) = inputs.as_slice().last() {
        if id >= g.node_count() {
            return Err(Error::IdOutOfRange { id, n: g.node_count() });
        }
    }
    let dist = multi_source_distances(g, inputs.iter());
    Ok(dist.into_iter().try_fold(0, |acc, d| d.map(|d| acc.max(d))))
}

/// Nodes with no incoming link.
pub fn sources(g: &DiGraph) -> InputSet {
    (0..g.node_count()).filter(|&v| g.in_degree(v) == 0).collect()
}

/// Largest finite shortest-path distance over all ordered pairs.
pub fn diameter(g: &DiGraph) -> usize {
    (0..g.node_count())
        .map(|s| distances_from(g, s).into_iter().flatten().max().unwrap_or(0))
        .max()
        .unwrap_or(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn links(g: &DiGraph) -> Vec<(usize, usize)> {
        g.links().collect()
    }

    #[test]
    fn chain_closure() {
        let g = DiGraph::chain(3);
        assert_eq!(
            links(&accessibility_graph(&g, ChainBound::Steps(2))),
            vec![(0, 1), (0, 2), (1, 2)]
        );
        assert_eq!(
            accessibility_graph(&g, ChainBound::Unbounded),
            accessibility_graph(&g, ChainBound::Steps(2))
        );
    }

    #[test]
    fn one_step_drops_self_loops() {
        let g = DiGraph::from_links(3, [(0, 0), (0, 1), (1, 2), (2, 2)], true).unwrap();
        assert_eq!(accessibility_graph(&g, ChainBound::Steps(1)), g.without_self_loops());
    }

    #[test]
    fn cycle_closure_is_complete_without_loops() {
        let g = DiGraph::cycle(4);
        let closure = accessibility_graph(&g, ChainBound::Unbounded);
        assert_eq!(closure.link_count(), 12);
        assert_eq!(closure.self_loop_count(), 0);
    }

    #[test]
    fn lcc_examples() {
        let chain = DiGraph::chain(5);
        assert_eq!(lcc_length(&chain, &InputSet::new([0])).unwrap(), Some(4));
        assert_eq!(lcc_length(&chain, &InputSet::new(0..5)).unwrap(), Some(0));
        assert_eq!(lcc_length(&DiGraph::new(2), &InputSet::new([0])).unwrap(), None);
        assert_eq!(lcc_length(&chain, &InputSet::default()), Err(Error::EmptyInputSet));
    }

    #[test]
    fn source_sets() {
        assert_eq!(sources(&DiGraph::chain(3)).as_slice(), &[0]);
        assert!(sources(&DiGraph::cycle(3)).is_empty());
        assert_eq!(sources(&DiGraph::new(2)).as_slice(), &[0, 1]);
    }

    #[test]
    fn diameters() {
        assert_eq!(diameter(&DiGraph::chain(6)), 5);
        assert_eq!(diameter(&DiGraph::cycle(4)), 3);
        assert_eq!(diameter(&DiGraph::new(3)), 0);
    }
}
