//! Simple graphs whose edges carry colours from `{1, .., m}`.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::BlockSystem;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub colour: usize,
}

impl Edge {
    pub fn other(&self, x: usize) -> usize {
        if x == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// An `m`-edge-coloured simple graph on vertices `0..n`.
///
/// Edges are stored with `u < v`, sorted by `(u, v)`; the position of an edge
/// in that order is its edge index.
#[derive(Debug, Clone)]
pub struct EdgeColouredGraph {
    n: usize,
    m: usize,
    edges: Vec<Edge>,
    // (neighbour, edge index), sorted by neighbour
    adj: Vec<Vec<(usize, usize)>>,
    lookup: HashMap<(usize, usize), usize>,
}

impl PartialEq for EdgeColouredGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.edges == other.edges
    }
}

impl Eq for EdgeColouredGraph {}

impl EdgeColouredGraph {
    pub fn new(
        n: usize,
        m: usize,
        edges: impl IntoIterator<Item = (usize, usize, usize)>,
    ) -> Result<Self> {
        let mut list = Vec::new();
        for (a, b, c) in edges {
            list.push(Self::check_edge(n, m, a, b, c)?);
        }
        Self::from_checked(n, m, list)
    }

    fn check_edge(n: usize, m: usize, a: usize, b: usize, colour: usize) -> Result<Edge> {
        for x in [a, b] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if a == b {
            return Err(Error::Loop(a));
        }
        if colour == 0 || colour > m {
            return Err(Error::ColourOutOfRange { colour, m });
        }
        Ok(Edge {
            u: a.min(b),
            v: a.max(b),
            colour,
        })
    }

    fn from_checked(n: usize, m: usize, mut edges: Vec<Edge>) -> Result<Self> {
        edges.sort();
        for w in edges.windows(2) {
            if (w[0].u, w[0].v) == (w[1].u, w[1].v) {
                return Err(Error::DuplicateEdge(w[0].u, w[0].v));
            }
        }
        let mut adj = vec![Vec::new(); n];
        let mut lookup = HashMap::with_capacity(edges.len());
        for (k, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, k));
            adj[e.v].push((e.u, k));
            lookup.insert((e.u, e.v), k);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(EdgeColouredGraph {
            n,
            m,
            edges,
            adj,
            lookup,
        })
    }

    pub fn edgeless(n: usize, m: usize) -> Self {
        Self::from_checked(n, m, Vec::new()).expect("edgeless graph is valid")
    }

    /// `K_2^i`: a single edge `0-1` of colour `i`.
    pub fn single_edge(m: usize, colour: usize) -> Result<Self> {
        Self::new(2, m, [(0, 1, colour)])
    }

    /// The cycle `0-1-..-(k-1)-0` where edge `t-(t+1)` has `colours[t]`.
    pub fn cycle(m: usize, colours: &[usize]) -> Result<Self> {
        let k = colours.len();
        if k < 3 {
            return Err(Error::Precondition(
                "a cycle needs at least 3 vertices".into(),
            ));
        }
        Self::new(
            k,
            m,
            colours
                .iter()
                .enumerate()
                .map(|(t, &c)| (t, (t + 1) % k, c)),
        )
    }

    /// The path `0-1-..-k` where edge `t-(t+1)` has `colours[t]`.
    pub fn path(m: usize, colours: &[usize]) -> Result<Self> {
        Self::new(
            colours.len() + 1,
            m,
            colours.iter().enumerate().map(|(t, &c)| (t, t + 1, c)),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edgeless(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn neighbours(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.lookup.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn colour(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_index(a, b).map(|k| self.edges[k].colour)
    }

    /// Edge colours in edge-index order.
    pub fn colours(&self) -> Vec<usize> {
        self.edges.iter().map(|e| e.colour).collect()
    }

    /// Same underlying graph, colours replaced in edge-index order.
    pub fn with_colours(&self, colours: &[usize]) -> Result<Self> {
        self.recoloured(self.m, colours)
    }

    /// Same underlying graph with a new colour count and colours.
    pub fn recoloured(&self, m: usize, colours: &[usize]) -> Result<Self> {
        if colours.len() != self.edges.len() {
            return Err(Error::Precondition(format!(
                "expected {} colours, got {}",
                self.edges.len(),
                colours.len()
            )));
        }
        let mut g = self.clone();
        g.m = m;
        for (e, &c) in g.edges.iter_mut().zip(colours) {
            if c == 0 || c > m {
                return Err(Error::ColourOutOfRange { colour: c, m });
            }
            e.colour = c;
        }
        Ok(g)
    }

    pub(crate) fn set_colour(&mut self, edge: usize, colour: usize) {
        self.edges[edge].colour = colour;
    }

    pub fn same_underlying(&self, other: &Self) -> bool {
        self.n == other.n
            && self.edges.len() == other.edges.len()
            && self
                .edges
                .iter()
                .zip(&other.edges)
                .all(|(a, b)| (a.u, a.v) == (b.u, b.v))
    }

    /// Connected components, each sorted, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut k = 0;
            while k < comp.len() {
                let x = comp[k];
                k += 1;
                for &(y, _) in &self.adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        comp.push(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Parses the `ecg <m> <n>` file format.
    pub fn parse(text: &str) -> Result<Self> {
        let mut header: Option<(usize, usize)> = None;
        let mut edges = Vec::new();
        let mut seen: HashMap<(usize, usize), usize> = HashMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            match header {
                None => {
                    if tokens.len() != 3 || tokens[0] != "ecg" {
                        return Err(Error::parse(line_no, "expected header `ecg <m> <n>`"));
                    }
                    let m = tokens[1]
                        .parse()
                        .map_err(|_| Error::parse(line_no, "invalid colour count"))?;
                    let n = tokens[2]
                        .parse()
                        .map_err(|_| Error::parse(line_no, "invalid vertex count"))?;
                    header = Some((m, n));
                }
                Some((m, n)) => {
                    if tokens.len() != 3 {
                        return Err(Error::parse(line_no, "expected edge line `<u> <v> <c>`"));
                    }
                    let nums = tokens
                        .iter()
                        .map(|t| t.parse::<usize>())
                        .collect::<std::result::Result<Vec<_>, _>>()
                        .map_err(|_| Error::parse(line_no, "non-numeric token in edge line"))?;
                    let e = Self::check_edge(n, m, nums[0], nums[1], nums[2])
                        .map_err(|e| e.at_line(line_no))?;
                    if let Some(first) = seen.insert((e.u, e.v), line_no) {
                        return Err(Error::parse(
                            line_no,
                            format!("duplicate edge {}-{} (first on line {first})", e.u, e.v),
                        ));
                    }
                    edges.push(e);
                }
            }
        }
        let (m, n) = header.ok_or_else(|| Error::parse(1, "missing `ecg <m> <n>` header"))?;
        Self::from_checked(n, m, edges)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("ecg {} {}\n", self.m, self.n);
        for e in &self.edges {
            let _ = writeln!(out, "{} {} {}", e.u, e.v, e.colour);
        }
        out
    }
}

/// Breadth-first spanning forest, rooted at the least vertex of each
/// component, exploring neighbours in ascending order.
#[derive(Debug, Clone)]
pub struct SpanningForest {
    pub roots: Vec<usize>,
    /// `(parent vertex, edge index)` for every non-root vertex.
    pub parent: Vec<Option<(usize, usize)>>,
    pub depth: Vec<usize>,
    pub component: Vec<usize>,
    /// Vertices in BFS order; every parent precedes its children.
    pub order: Vec<usize>,
    pub tree_edge: Vec<bool>,
    /// Co-tree edge indices, ascending.
    pub cotree: Vec<usize>,
}

impl SpanningForest {
    pub fn new(g: &EdgeColouredGraph) -> Self {
        let n = g.n();
        let mut parent = vec![None; n];
        let mut depth = vec![0; n];
        let mut component = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut roots = Vec::new();
        let mut tree_edge = vec![false; g.edge_count()];
        for r in 0..n {
            if component[r] != usize::MAX {
                continue;
            }
            let id = roots.len();
            roots.push(r);
            component[r] = id;
            let mut queue = VecDeque::from([r]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for &(y, e) in g.neighbours(x) {
                    if component[y] == usize::MAX {
                        component[y] = id;
                        parent[y] = Some((x, e));
                        depth[y] = depth[x] + 1;
                        tree_edge[e] = true;
                        queue.push_back(y);
                    }
                }
            }
        }
        let cotree = (0..g.edge_count()).filter(|&e| !tree_edge[e]).collect();
        SpanningForest {
            roots,
            parent,
            depth,
            component,
            order,
            tree_edge,
            cotree,
        }
    }

    /// Tree path from `a` to `b` (same component), both ends included.
    pub fn tree_path(&self, a: usize, b: usize) -> Vec<usize> {
        let (mut x, mut y) = (a, b);
        let mut left = vec![];
        let mut right = vec![];
        while self.depth[x] > self.depth[y] {
            left.push(x);
            x = self.parent[x].expect("non-root").0;
        }
        while self.depth[y] > self.depth[x] {
            right.push(y);
            y = self.parent[y].expect("non-root").0;
        }
        while x != y {
            left.push(x);
            right.push(y);
            x = self.parent[x].expect("non-root").0;
            y = self.parent[y].expect("non-root").0;
        }
        left.push(x);
        left.extend(right.into_iter().rev());
        left
    }

    /// The cycle closed by co-tree edge `edge = uv` with `u < v`, listed as
    /// the tree path from `u` to `v`. The closing edge joins the last vertex
    /// back to the first.
    pub fn fundamental_cycle(&self, g: &EdgeColouredGraph, edge: usize) -> Vec<usize> {
        let e = g.edges()[edge];
        self.tree_path(e.u, e.v)
    }
}

impl Serialize for EdgeColouredGraph {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = serializer.serialize_struct("EdgeColouredGraph", 3)?;
        st.serialize_field("m", &self.m())?;
        st.serialize_field("n", &self.n())?;
        st.serialize_field("edges", self.edges())?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Bipartition {
    /// Side (0 or 1) of every vertex.
    Bipartite(Vec<u8>),
    /// An odd cycle as a vertex list; consecutive vertices (and last-first)
    /// are adjacent.
    OddCycle(Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct Structure {
    pub bipartition: Bipartition,
    pub forest: SpanningForest,
}

impl Structure {
    pub fn is_bipartite(&self) -> bool {
        matches!(self.bipartition, Bipartition::Bipartite(_))
    }
}

pub fn structure(g: &EdgeColouredGraph) -> Structure {
    let forest = SpanningForest::new(g);
    let odd = forest.cotree.iter().copied().find(|&k| {
        let e = g.edges()[k];
        forest.depth[e.u] % 2 == forest.depth[e.v] % 2
    });
    let bipartition = match odd {
        Some(k) => Bipartition::OddCycle(forest.fundamental_cycle(g, k)),
        None => Bipartition::Bipartite(forest.depth.iter().map(|d| (d % 2) as u8).collect()),
    };
    Structure {
        bipartition,
        forest,
    }
}

/// Replaces every colour by the label of its block.
pub fn abelianize_graph(g: &EdgeColouredGraph, blocks: &BlockSystem) -> Result<EdgeColouredGraph> {
    if g.m() != blocks.degree() {
        return Err(Error::DegreeMismatch {
            expected: blocks.degree(),
            found: g.m(),
        });
    }
    let colours: Vec<usize> = g.edges().iter().map(|e| blocks.label(e.colour)).collect();
    g.recoloured(blocks.count(), &colours)
}
