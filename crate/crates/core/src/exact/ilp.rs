//! 0/1 integer programs for the minimum input problem.
//!
//! Two formulations are provided. The naive one picks matching links
//! `e_i_j` directly; the cycling one adds an auxiliary node `x` (index `n`)
//! linked to and from every node and asks for a cover of the augmented graph
//! by disjoint cycles, where each cycle entering a node from `x` marks an
//! input. Both read the coverage set of a node as itself plus every node
//! that reaches it within `ell` steps.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::graph::{accessibility_graph, ChainBound, DiGraph};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn symbol(self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }

    fn holds(self, lhs: i64, rhs: i64) -> bool {
        match self {
            Sense::Le => lhs <= rhs,
            Sense::Ge => lhs >= rhs,
            Sense::Eq => lhs == rhs,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constraint {
    pub name: String,
    /// `(variable index, coefficient)` pairs, each variable at most once.
    pub terms: Vec<(usize, i64)>,
    pub sense: Sense,
    pub rhs: i64,
}

/// Minimisation model over binary variables with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct IlpModel {
    pub variables: Vec<String>,
    pub objective: Vec<(usize, i64)>,
    pub objective_constant: i64,
    pub constraints: Vec<Constraint>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IlpOptimum {
    pub value: i64,
    pub assignment: Vec<bool>,
}

impl IlpModel {
    fn add_var(&mut self, name: String) -> usize {
        self.variables.push(name);
        self.variables.len() - 1
    }

    fn add_row(&mut self, name: String, terms: Vec<(usize, i64)>, sense: Sense, rhs: i64) {
        self.constraints.push(Constraint {
            name,
            terms,
            sense,
            rhs,
        });
    }

    /// Every variable is binary.
    pub fn binaries(&self) -> &[String] {
        &self.variables
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    pub fn constraint(&self, name: &str) -> Option<&Constraint> {
        self.constraints.iter().find(|c| c.name == name)
    }

    pub fn objective_value(&self, x: &[bool]) -> i64 {
        self.objective_constant + activity(&self.objective, x)
    }

    /// Names of the constraints `x` violates.
    pub fn violations(&self, x: &[bool]) -> Vec<&str> {
        self.constraints
            .iter()
            .filter(|c| !c.sense.holds(activity(&c.terms, x), c.rhs))
            .map(|c| c.name.as_str())
            .collect()
    }

    pub fn is_feasible(&self, x: &[bool]) -> bool {
        x.len() == self.variables.len() && self.violations(x).is_empty()
    }

    /// Turns named solver output into an assignment. Missing variables are
    /// zero; unknown names and non-binary values are errors.
    pub fn assignment_from(&self, values: &BTreeMap<String, f64>) -> Result<Vec<bool>> {
        let index: HashMap<&str, usize> = self
            .variables
            .iter()
            .enumerate()
            .map(|(i, v)| (v.as_str(), i))
            .collect();
        let mut x = vec![false; self.variables.len()];
        for (name, &value) in values {
            let &i = index
                .get(name.as_str())
                .ok_or_else(|| Error::InvalidSpec(format!("unknown variable {name}")))?;
            x[i] = match value {
                v if v.abs() < 1e-6 => false,
                v if (v - 1.0).abs() < 1e-6 => true,
                v => return Err(Error::InvalidSpec(format!("{name} = {v} is not binary"))),
            };
        }
        Ok(x)
    }

    /// Exact optimum by depth-first search with bound propagation. Meant for
    /// small models (a few dozen variables); returns `None` if infeasible.
    pub fn solve_small(&self) -> Option<IlpOptimum> {
        BinarySearch::new(self).run()
    }
}

fn activity(terms: &[(usize, i64)], x: &[bool]) -> i64 {
    terms.iter().filter(|&&(i, _)| x[i]).map(|&(_, a)| a).sum()
}

/// Naive model: `e_i_j` marks link `i -> j` as a matching link. A node with
/// no incoming matching link is an input.
pub fn build_ilp_naive(g: &DiGraph, ell: ChainBound) -> IlpModel {
    let n = g.node_count();
    let access = accessibility_graph(g, ell);
    let mut m = IlpModel::default();
    let mut outgoing = vec![Vec::new(); n];
    let mut incoming = vec![Vec::new(); n];
    for (t, h) in g.links() {
        let e = m.add_var(format!("e_{t}_{h}"));
        outgoing[t].push(e);
        incoming[h].push(e);
    }
    // sum over nodes of (1 - incoming matching links)
    m.objective = (0..m.variables.len()).map(|e| (e, -1)).collect();
    m.objective_constant = n as i64;

    for (v, links) in outgoing.iter().enumerate() {
        if !links.is_empty() {
            m.add_row(
                format!("out_{v}"),
                links.iter().map(|&e| (e, 1)).collect(),
                Sense::Le,
                1,
            );
        }
    }
    for (v, links) in incoming.iter().enumerate() {
        if !links.is_empty() {
            m.add_row(format!("in_{v}"), links.iter().map(|&e| (e, 1)).collect(), Sense::Le, 1);
        }
    }
    for v in 0..n {
        let reach: Vec<usize> = std::iter::once(v)
            .chain(access.predecessors(v).iter().copied())
            .collect();
        let terms = reach
            .iter()
            .flat_map(|&k| incoming[k].iter().map(|&e| (e, -1)))
            .collect();
        m.add_row(format!("dom_{v}"), terms, Sense::Ge, 1 - reach.len() as i64);
    }
    m
}

/// Cycling model over the graph augmented with node `x = n`.
pub fn build_ilp_cycling(g: &DiGraph, ell: ChainBound) -> IlpModel {
    let n = g.node_count();
    let access = accessibility_graph(g, ell);
    let mut m = IlpModel::default();
    let mut outgoing = vec![Vec::new(); n];
    let mut incoming = vec![Vec::new(); n];
    for (t, h) in g.links() {
        let y = m.add_var(format!("y_{t}_{h}"));
        outgoing[t].push(y);
        incoming[h].push(y);
    }
    let from_x: Vec<usize> = (0..n).map(|j| m.add_var(format!("y_{n}_{j}"))).collect();
    let into_x: Vec<usize> = (0..n).map(|i| m.add_var(format!("y_{i}_{n}"))).collect();
    m.objective = from_x.iter().map(|&y| (y, 1)).collect();

    for v in 0..n {
        let terms = outgoing[v].iter().chain([&into_x[v]]).map(|&y| (y, 1)).collect();
        m.add_row(format!("out_{v}"), terms, Sense::Eq, 1);
    }
    for v in 0..n {
        let terms = incoming[v].iter().chain([&from_x[v]]).map(|&y| (y, 1)).collect();
        m.add_row(format!("in_{v}"), terms, Sense::Eq, 1);
    }
    for v in 0..n {
        let terms = std::iter::once(v)
            .chain(access.predecessors(v).iter().copied())
            .map(|j| (from_x[j], 1))
            .collect();
        m.add_row(format!("cover_{v}"), terms, Sense::Ge, 1);
    }
    let balance = from_x
        .iter()
        .map(|&y| (y, 1))
        .chain(into_x.iter().map(|&y| (y, -1)))
        .collect();
    m.add_row("balance".to_string(), balance, Sense::Eq, 0);
    m
}

const TERMS_PER_LINE: usize = 8;

fn write_terms(out: &mut String, m: &IlpModel, terms: &[(usize, i64)]) {
    for (k, &(i, a)) in terms.iter().enumerate() {
        if k > 0 && k % TERMS_PER_LINE == 0 {
            out.push_str("\n   ");
        }
        let sign = if a < 0 { '-' } else { '+' };
        if k == 0 && a >= 0 {
            out.push(' ');
        } else {
            let _ = write!(out, " {sign} ");
        }
        if a.abs() != 1 {
            let _ = write!(out, "{} ", a.abs());
        }
        out.push_str(&m.variables[i]);
    }
}

/// LP text (Minimize / Subject To / Binary / End). Rows without variables
/// are always satisfied by construction and appear only as comments.
pub fn write_lp(m: &IlpModel) -> String {
    let mut out = String::from("Minimize\n obj:");
    write_terms(&mut out, m, &m.objective);
    match (m.objective.is_empty(), m.objective_constant) {
        (true, c) => {
            let _ = write!(out, " {c}");
        }
        (false, 0) => {}
        (false, c) => {
            let _ = write!(out, " {} {}", if c < 0 { '-' } else { '+' }, c.abs());
        }
    }
    out.push_str("\nSubject To\n");
    for c in &m.constraints {
        if c.terms.is_empty() {
            let _ = writeln!(out, "\\ {}: 0 {} {}", c.name, c.sense.symbol(), c.rhs);
            continue;
        }
        let _ = write!(out, " {}:", c.name);
        write_terms(&mut out, m, &c.terms);
        let _ = writeln!(out, " {} {}", c.sense.symbol(), c.rhs);
    }
    out.push_str("Binary\n");
    for v in &m.variables {
        let _ = writeln!(out, " {v}");
    }
    out.push_str("End\n");
    out
}

/// Reads `name value` lines as written by common solvers. Blank lines and
/// lines starting with `#` are skipped.
pub fn read_solution(text: &str) -> Result<BTreeMap<String, f64>> {
    let mut values = BTreeMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: i + 1, message };
        let mut parts = line.split_whitespace();
        let (Some(name), Some(value), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(parse_err(format!("expected `name value`, got {line:?}")));
        };
        let value: f64 = value.parse().map_err(|_| parse_err(format!("bad value {value:?}")))?;
        values.insert(name.to_string(), value);
    }
    Ok(values)
}

/// Depth-first search over binary assignments. Each row tracks the least
/// and greatest activity reachable from the current partial assignment;
/// rows that pin a free variable fix it immediately.
struct BinarySearch<'a> {
    m: &'a IlpModel,
    rows_of: Vec<Vec<(usize, i64)>>,
    value: Vec<Option<bool>>,
    min_act: Vec<i64>,
    max_act: Vec<i64>,
    trail: Vec<usize>,
    best: Option<IlpOptimum>,
}

impl<'a> BinarySearch<'a> {
    fn new(m: &'a IlpModel) -> Self {
        let mut rows_of = vec![Vec::new(); m.variables.len()];
        let mut min_act = Vec::with_capacity(m.constraints.len());
        let mut max_act = Vec::with_capacity(m.constraints.len());
        for (r, c) in m.constraints.iter().enumerate() {
            for &(i, a) in &c.terms {
                rows_of[i].push((r, a));
            }
            min_act.push(c.terms.iter().map(|&(_, a)| a.min(0)).sum());
            max_act.push(c.terms.iter().map(|&(_, a)| a.max(0)).sum());
        }
        BinarySearch {
            m,
            rows_of,
            value: vec![None; m.variables.len()],
            min_act,
            max_act,
            trail: Vec::new(),
            best: None,
        }
    }

    fn row_ok(&self, r: usize) -> bool {
        let c = &self.m.constraints[r];
        match c.sense {
            Sense::Le => self.min_act[r] <= c.rhs,
            Sense::Ge => self.max_act[r] >= c.rhs,
            Sense::Eq => self.min_act[r] <= c.rhs && self.max_act[r] >= c.rhs,
        }
    }

    fn assign(&mut self, i: usize, v: bool) {
        self.value[i] = Some(v);
        self.trail.push(i);
        for &(r, a) in &self.rows_of[i] {
            // the free range [min(a,0), max(a,0)] collapses to a or 0
            let taken = if v { a } else { 0 };
            self.min_act[r] += taken - a.min(0);
            self.max_act[r] += taken - a.max(0);
        }
    }

    fn undo_to(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let i = self.trail.pop().expect("trail above mark");
            let v = self.value[i].take().expect("trailed variable is set");
            for &(r, a) in &self.rows_of[i] {
                let taken = if v { a } else { 0 };
                self.min_act[r] -= taken - a.min(0);
                self.max_act[r] -= taken - a.max(0);
            }
        }
    }

    /// Fixes `i = v` and everything it forces. False on conflict.
    fn propagate(&mut self, i: usize, v: bool) -> bool {
        let mut queue = vec![(i, v)];
        while let Some((i, v)) = queue.pop() {
            match self.value[i] {
                Some(cur) if cur == v => continue,
                Some(_) => return false,
                None => self.assign(i, v),
            }
            for k in 0..self.rows_of[i].len() {
                let r = self.rows_of[i][k].0;
                if !self.row_ok(r) {
                    return false;
                }
                let c = &self.m.constraints[r];
                for &(j, a) in &c.terms {
                    if self.value[j].is_some() {
                        continue;
                    }
                    let span = a.abs();
                    let up = matches!(c.sense, Sense::Le | Sense::Eq) && self.min_act[r] + span > c.rhs;
                    let down = matches!(c.sense, Sense::Ge | Sense::Eq) && self.max_act[r] - span < c.rhs;
                    // `up`: moving j away from its minimising value overshoots
                    if up {
                        queue.push((j, a < 0));
                    }
                    if down {
                        queue.push((j, a > 0));
                    }
                }
            }
        }
        true
    }

    fn objective_floor(&self) -> i64 {
        self.m.objective_constant
            + self
                .m
                .objective
                .iter()
                .map(|&(i, a)| match self.value[i] {
                    Some(true) => a,
                    Some(false) => 0,
                    None => a.min(0),
                })
                .sum::<i64>()
    }

    fn dfs(&mut self) {
        if self.best.as_ref().is_some_and(|b| self.objective_floor() >= b.value) {
            return;
        }
        let Some(i) = self.value.iter().position(Option::is_none) else {
            let assignment: Vec<bool> = self.value.iter().map(|v| v.expect("all set")).collect();
            debug_assert!(self.m.is_feasible(&assignment));
            self.best = Some(IlpOptimum {
                value: self.m.objective_value(&assignment),
                assignment,
            });
            return;
        };
        let cost = self.m.objective.iter().find(|&&(j, _)| j == i).map_or(0, |&(_, a)| a);
        let first = cost < 0;
        for v in [first, !first] {
            let mark = self.trail.len();
            if self.propagate(i, v) {
                self.dfs();
            }
            self.undo_to(mark);
        }
    }

    fn run(mut self) -> Option<IlpOptimum> {
        if (0..self.m.constraints.len()).all(|r| self.row_ok(r)) {
            self.dfs();
        }
        self.best
    }
}
