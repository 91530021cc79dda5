//! Plain-text edge lists.
//!
//! One link per line as `tail head` (or `tail head weight` for the weighted
//! reader). `#` starts a comment. An optional `n=<count>` line fixes the node
//! count so trailing isolated nodes survive a round trip.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::DiGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, Default)]
pub struct EdgeListOptions {
    pub allow_self_loops: bool,
    /// Ids in the file start at 1 and are shifted down on ingest.
    pub one_based: bool,
}

/// Link weights keyed by `(tail, head)`.
pub type LinkWeights = BTreeMap<(usize, usize), f64>;

struct RawList {
    declared_n: Option<usize>,
    links: Vec<(usize, usize, Option<f64>, usize)>,
}

fn parse_lines(text: &str, opts: EdgeListOptions, allow_weight: bool) -> Result<RawList> {
    let mut raw = RawList {
        declared_n: None,
        links: Vec::new(),
    };
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let body = line.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("n=") {
            let n = rest.trim().parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad node count {rest:?}"),
            })?;
            raw.declared_n = Some(n);
            continue;
        }
        let fields: Vec<&str> = body.split_whitespace().collect();
        let max_fields = if allow_weight { 3 } else { 2 };
        if fields.len() < 2 || fields.len() > max_fields {
            return Err(Error::Parse {
                line: lineno,
                message: format!(
                    "expected {max_fields} fields at most and 2 at least, got {}",
                    fields.len()
                ),
            });
        }
        let id = |s: &str| -> Result<usize> {
            let v = s.parse::<usize>().map_err(|_| Error::Parse {
                line: lineno,
                message: format!("bad node id {s:?}"),
            })?;
            if opts.one_based {
                v.checked_sub(1).ok_or(Error::Parse {
                    line: lineno,
                    message: "node id 0 in a one-based file".into(),
                })
            } else {
                Ok(v)
            }
        };
        let t = id(fields[0])?;
        let h = id(fields[1])?;
        let w = match fields.get(2) {
            Some(s) => Some(
                s.parse::<f64>()
                    .ok()
                    .filter(|w| w.is_finite())
                    .ok_or_else(|| Error::Parse {
                        line: lineno,
                        message: format!("bad weight {s:?}"),
                    })?,
            ),
            None => None,
        };
        raw.links.push((t, h, w, lineno));
    }
    Ok(raw)
}

fn build(raw: &RawList, opts: EdgeListOptions) -> Result<DiGraph> {
    let max_id = raw.links.iter().map(|&(t, h, _, _)| t.max(h) + 1).max().unwrap_or(0);
    let n = match raw.declared_n {
        Some(n) => {
            if max_id > n {
                return Err(Error::IdOutOfRange { id: max_id - 1, n });
            }
            n
        }
        None => max_id,
    };
    DiGraph::from_links(n, raw.links.iter().map(|&(t, h, _, _)| (t, h)), opts.allow_self_loops)
}

pub fn read_edge_list(text: &str, opts: EdgeListOptions) -> Result<DiGraph> {
    let raw = parse_lines(text, opts, false)?;
    build(&raw, opts)
}

/// Reads `tail head [weight]` lines; a missing weight defaults to 1.0.
/// Repeated links keep the last weight.
pub fn read_weighted_edge_list(text: &str, opts: EdgeListOptions) -> Result<(DiGraph, LinkWeights)> {
    let raw = parse_lines(text, opts, true)?;
    let g = build(&raw, opts)?;
    let weights = raw
        .links
        .iter()
        .map(|&(t, h, w, _)| ((t, h), w.unwrap_or(1.0)))
        .collect();
    Ok((g, weights))
}

pub fn write_edge_list(g: &DiGraph) -> String {
    write_edge_list_with(g, EdgeListOptions::default())
}

/// Same, shifting ids up by one when `opts.one_based` is set.
pub fn write_edge_list_with(g: &DiGraph, opts: EdgeListOptions) -> String {
    let shift = usize::from(opts.one_based);
    let mut out = String::new();
    writeln!(out, "n={}", g.node_count()).unwrap();
    for (t, h) in g.links() {
        writeln!(out, "{} {}", t + shift, h + shift).unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_chain() {
        let g = read_edge_list("0 1\n1 2", EdgeListOptions::default()).unwrap();
        assert_eq!(g, DiGraph::chain(3));
    }

    #[test]
    fn comment_and_self_loop() {
        let opts = EdgeListOptions {
            allow_self_loops: true,
            ..Default::default()
        };
        let g = read_edge_list("# c\n0 0", opts).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.self_loop_count(), 1);
        assert!(read_edge_list("0 0", EdgeListOptions::default()).is_err());
    }

    #[test]
    fn parse_error_carries_line() {
        let err = read_edge_list("0 x", EdgeListOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        let err = read_edge_list("0 1\n\n1 2 3", EdgeListOptions::default()).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
    }

    #[test]
    fn header_sets_node_count() {
        let g = read_edge_list("n=5\n0 1", EdgeListOptions::default()).unwrap();
        assert_eq!(g.node_count(), 5);
        assert_eq!(
            read_edge_list("n=2\n0 2", EdgeListOptions::default()),
            Err(Error::IdOutOfRange { id: 2, n: 2 })
        );
    }

    #[test]
    fn one_based_shift() {
        let opts = EdgeListOptions {
            one_based: true,
            ..Default::default()
        };
        assert_eq!(read_edge_list("1 2\n2 3", opts).unwrap(), DiGraph::chain(3));
        assert!(read_edge_list("0 1", opts).is_err());
    }

    #[test]
    fn weighted_lines() {
        let (g, w) = read_weighted_edge_list("0 1 2.5\n1 2", EdgeListOptions::default()).unwrap();
        assert_eq!(g.link_count(), 2);
        assert_eq!(w[&(0, 1)], 2.5);
        assert_eq!(w[&(1, 2)], 1.0);
        assert!(read_weighted_edge_list("0 1 nan", EdgeListOptions::default()).is_err());
    }

    #[test]
    fn duplicates_collapse() {
        let g = read_edge_list("0 1\n0 1\n", EdgeListOptions::default()).unwrap();
        assert_eq!(g.link_count(), 1);
    }
}
