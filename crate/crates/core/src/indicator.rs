//! Indicator digraphs for the two-edge path gadget, smoothness, and the
//! periods of strongly connected components.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::EdgeColouredGraph;

/// The digraph on `V(S)` with an arc `x -> y` whenever `xz` has colour `i`
/// and `zy` has colour `j` for some `z`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IndicatorDigraph {
    n: usize,
    arcs: BTreeSet<(usize, usize)>,
    /// Vertices with at least one incident edge in the source graph.
    relevant: Vec<bool>,
}

pub fn indicator_construction(
    s: &EdgeColouredGraph,
    i: usize,
    j: usize,
) -> Result<IndicatorDigraph> {
    for c in [i, j] {
        if c == 0 || c > s.m() {
            return Err(Error::ColourOutOfRange {
                colour: c,
                m: s.m(),
            });
        }
    }
    let mut arcs = BTreeSet::new();
    for z in 0..s.n() {
        let by_colour = |c: usize| {
            s.neighbours(z)
                .iter()
                .filter(move |&&(_, e)| s.edges()[e].colour == c)
                .map(|&(y, _)| y)
        };
        for x in by_colour(i) {
            for y in by_colour(j) {
                arcs.insert((x, y));
            }
        }
    }
    Ok(IndicatorDigraph {
        n: s.n(),
        arcs,
        relevant: (0..s.n()).map(|v| s.degree(v) > 0).collect(),
    })
}

impl IndicatorDigraph {
    /// A digraph in which every vertex counts for smoothness.
    pub fn from_arcs(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let arcs: BTreeSet<(usize, usize)> = arcs.into_iter().collect();
        if let Some(&(x, y)) = arcs.iter().find(|&&(x, y)| x >= n || y >= n) {
            return Err(Error::VertexOutOfRange {
                vertex: x.max(y),
                n,
            });
        }
        Ok(IndicatorDigraph {
            n,
            arcs,
            relevant: vec![true; n],
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.arcs.iter().copied()
    }

    pub fn arc_count(&self) -> usize {
        self.arcs.len()
    }

    pub fn has_arc(&self, x: usize, y: usize) -> bool {
        self.arcs.contains(&(x, y))
    }

    pub fn loops(&self) -> Vec<usize> {
        self.arcs
            .iter()
            .filter(|(x, y)| x == y)
            .map(|&(x, _)| x)
            .collect()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n];
        for &(x, y) in &self.arcs {
            out[x].push(y);
        }
        out
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("digraph {}\n", self.n);
        for &(x, y) in &self.arcs {
            let _ = writeln!(out, "{x} {y}");
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentPeriod {
    /// Sorted vertices of the component.
    pub vertices: Vec<usize>,
    /// gcd of the directed cycle lengths in the component.
    pub period: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PeriodReport {
    pub is_smooth: bool,
    /// Strongly connected components containing at least one arc, ordered by
    /// least vertex.
    pub components: Vec<ComponentPeriod>,
    pub has_coprime_cycles: bool,
    pub loops: Vec<usize>,
}

impl PeriodReport {
    pub fn component_of(&self, v: usize) -> Option<&ComponentPeriod> {
        self.components
            .iter()
            .find(|c| c.vertices.binary_search(&v).is_ok())
    }
}

/// Strongly connected components (Kosaraju, iterative), each sorted, ordered
/// by least vertex.
pub fn strongly_connected_components(n: usize, succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut pred = vec![Vec::new(); n];
    for (x, ys) in succ.iter().enumerate() {
        for &y in ys {
            pred[y].push(x);
        }
    }
    // finishing order on the forward graph
    let mut visited = vec![false; n];
    let mut finish = Vec::with_capacity(n);
    for s in 0..n {
        if visited[s] {
            continue;
        }
        visited[s] = true;
        let mut stack = vec![(s, 0usize)];
        while let Some(&mut (x, ref mut k)) = stack.last_mut() {
            if *k < succ[x].len() {
                let y = succ[x][*k];
                *k += 1;
                if !visited[y] {
                    visited[y] = true;
                    stack.push((y, 0));
                }
            } else {
                finish.push(x);
                stack.pop();
            }
        }
    }
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for &s in finish.iter().rev() {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        comp[s] = id;
        let mut members = vec![s];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &y in &pred[x] {
                if comp[y] == usize::MAX {
                    comp[y] = id;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out.sort_by_key(|c| c[0]);
    out
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Smoothness over the relevant vertices, and the period of every strongly
/// connected component that contains an arc.
///
/// The period is computed from BFS levels inside the component: it is the
/// gcd of `level(x) + 1 - level(y)` over all arcs `x -> y` of the component.
pub fn smooth_and_periods(d: &IndicatorDigraph) -> PeriodReport {
    let succ = d.successors();
    let mut indeg = vec![0usize; d.n];
    for &(_, y) in &d.arcs {
        indeg[y] += 1;
    }
    let is_smooth = (0..d.n).all(|v| !d.relevant[v] || (indeg[v] > 0 && !succ[v].is_empty()));

    let sccs = strongly_connected_components(d.n, &succ);
    let mut comp_id = vec![0usize; d.n];
    for (k, c) in sccs.iter().enumerate() {
        for &v in c {
            comp_id[v] = k;
        }
    }
    let mut components = Vec::new();
    for (k, vertices) in sccs.into_iter().enumerate() {
        let root = vertices[0];
        let mut level = vec![usize::MAX; d.n];
        level[root] = 0;
        let mut queue = VecDeque::from([root]);
        let mut period = 0usize;
        let mut has_arc = false;
        while let Some(x) = queue.pop_front() {
            for &y in &succ[x] {
                if comp_id[y] != k {
                    continue;
                }
                has_arc = true;
                if level[y] == usize::MAX {
                    level[y] = level[x] + 1;
                    queue.push_back(y);
                } else {
                    period = gcd(period, (level[x] + 1).abs_diff(level[y]));
                }
            }
        }
        if has_arc {
            components.push(ComponentPeriod { vertices, period });
        }
    }
    let has_coprime_cycles = components.iter().any(|c| c.period == 1);
    PeriodReport {
        is_smooth,
        components,
        has_coprime_cycles,
        loops: d.loops(),
    }
}
