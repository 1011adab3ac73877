//! Colour-preserving homomorphisms and switchable homomorphisms with
//! checkable witnesses.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{abelianize_graph, EdgeColouredGraph};
use crate::group::{Abelianization, PermGroup};
use crate::switch_graph::SwitchGraph;
use crate::switching::{apply_sequence, lift_assignment, parse_switch_line, SwitchSequence};

/// A vertex map `V(G) -> V(H)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct Mapping(pub Vec<usize>);

impl Mapping {
    pub fn is_homomorphism(&self, g: &EdgeColouredGraph, h: &EdgeColouredGraph) -> bool {
        self.0.len() == g.n()
            && self.0.iter().all(|&x| x < h.n())
            && g.edges()
                .iter()
                .all(|e| h.colour(self.0[e.u], self.0[e.v]) == Some(e.colour))
    }
}

#[derive(Debug, Clone, Copy)]
struct Bits<'a>(&'a [u64]);

fn words_for(n: usize) -> usize {
    n.div_ceil(64).max(1)
}

impl Bits<'_> {
    fn iter(self) -> impl Iterator<Item = usize> + 'static {
        let words: Vec<u64> = self.0.to_vec();
        words.into_iter().enumerate().flat_map(|(k, mut w)| {
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + b)
                }
            })
        })
    }
}

/// Backtracking homomorphism search with forward checking. Connected
/// components of the source are searched independently.
struct HomSearch<'a> {
    g: &'a EdgeColouredGraph,
    words: usize,
    // neighbour sets of the target, indexed [x * m + (c - 1)]
    target_nbrs: Vec<Vec<u64>>,
    // BFS order of each component, components by least vertex
    components: Vec<Vec<usize>>,
    assigned: Vec<Option<usize>>,
}

impl<'a> HomSearch<'a> {
    fn new(g: &'a EdgeColouredGraph, h: &EdgeColouredGraph) -> Self {
        let words = words_for(h.n());
        let m = h.m();
        let mut target_nbrs = vec![vec![0u64; words]; h.n() * m];
        for e in h.edges() {
            target_nbrs[e.u * m + e.colour - 1][e.v / 64] |= 1 << (e.v % 64);
            target_nbrs[e.v * m + e.colour - 1][e.u / 64] |= 1 << (e.u % 64);
        }
        let mut components = Vec::new();
        let mut seen = vec![false; g.n()];
        for s in 0..g.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut order = Vec::new();
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                order.push(x);
                for &(y, _) in g.neighbours(x) {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            components.push(order);
        }
        HomSearch {
            g,
            words,
            target_nbrs,
            components,
            assigned: vec![None; g.n()],
        }
    }

    fn initial_domains(&self, h: &EdgeColouredGraph) -> Vec<Vec<u64>> {
        let m = h.m();
        let mut domains = Vec::with_capacity(self.g.n());
        for u in 0..self.g.n() {
            let mut d = vec![0u64; self.words];
            'cand: for x in 0..h.n() {
                for &(_, e) in self.g.neighbours(u) {
                    let c = self.g.edges()[e].colour;
                    if self.target_nbrs[x * m + c - 1].iter().all(|&w| w == 0) {
                        continue 'cand;
                    }
                }
                d[x / 64] |= 1 << (x % 64);
            }
            domains.push(d);
        }
        domains
    }

    fn search(&mut self, comp: usize, pos: usize, domains: &mut [Vec<u64>], m: usize) -> bool {
        if pos == self.components[comp].len() {
            return true;
        }
        let u = self.components[comp][pos];
        let candidates: Vec<usize> = Bits(&domains[u]).iter().collect();
        for x in candidates {
            let mut next = domains.to_vec();
            let mut dead = false;
            for &(v, e) in self.g.neighbours(u) {
                if self.assigned[v].is_some() {
                    continue;
                }
                let c = self.g.edges()[e].colour;
                let allowed = &self.target_nbrs[x * m + c - 1];
                let mut any = 0u64;
                for (d, a) in next[v].iter_mut().zip(allowed) {
                    *d &= a;
                    any |= *d;
                }
                if any == 0 {
                    dead = true;
                    break;
                }
            }
            if dead {
                continue;
            }
            self.assigned[u] = Some(x);
            if self.search(comp, pos + 1, &mut next, m) {
                return true;
            }
            self.assigned[u] = None;
        }
        false
    }
}

/// Finds a colour-preserving homomorphism `g -> h`. Each component of `g` is
/// searched in BFS order with candidates tried in ascending order, so the
/// result is the first mapping in that search order.
pub fn find_hom(g: &EdgeColouredGraph, h: &EdgeColouredGraph) -> Result<Option<Mapping>> {
    if g.m() != h.m() {
        return Err(Error::DegreeMismatch {
            expected: h.m(),
            found: g.m(),
        });
    }
    if g.n() == 0 {
        return Ok(Some(Mapping(Vec::new())));
    }
    if h.n() == 0 {
        return Ok(None);
    }
    let mut search = HomSearch::new(g, h);
    let mut domains = search.initial_domains(h);
    if domains.iter().any(|d| d.iter().all(|&w| w == 0)) {
        return Ok(None);
    }
    for comp in 0..search.components.len() {
        if !search.search(comp, 0, &mut domains, h.m()) {
            return Ok(None);
        }
    }
    let f = search
        .assigned
        .iter()
        .map(|x| x.expect("complete"))
        .collect();
    Ok(Some(Mapping(f)))
}

/// A switch sequence for `G` and a homomorphism from the switched graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub sequence: SwitchSequence,
    pub mapping: Mapping,
}

impl Witness {
    /// Parses switch lines, then `map <u> <x>` lines. Blank lines and `#`
    /// comments are ignored.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut sequence = SwitchSequence::new();
        let mut pairs: Vec<(usize, usize)> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("map") {
                let nums: Vec<usize> = rest
                    .split_whitespace()
                    .map(|t| t.parse::<usize>())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::parse(line_no, "expected `map <u> <x>`"))?;
                if nums.len() != 2 {
                    return Err(Error::parse(line_no, "expected `map <u> <x>`"));
                }
                pairs.push((nums[0], nums[1]));
            } else {
                if !pairs.is_empty() {
                    return Err(Error::parse(line_no, "switch line after mapping lines"));
                }
                let (v, p) = parse_switch_line(line, degree).map_err(|e| e.at_line(line_no))?;
                sequence.push(v, p);
            }
        }
        let mut mapping = vec![None; pairs.len()];
        for (u, x) in pairs {
            match mapping.get_mut(u) {
                Some(slot @ None) => *slot = Some(x),
                Some(Some(_)) => return Err(Error::parse(0, format!("vertex {u} mapped twice"))),
                None => {
                    return Err(Error::parse(
                        0,
                        format!("mapping has a gap before vertex {u}"),
                    ))
                }
            }
        }
        let mapping = mapping
            .into_iter()
            .map(|x| x.ok_or_else(|| Error::parse(0, "incomplete mapping")))
            .collect::<Result<Vec<_>>>()?;
        Ok(Witness {
            sequence,
            mapping: Mapping(mapping),
        })
    }

    pub fn to_file_string(&self) -> String {
        let mut out = self.sequence.to_file_string();
        out.push('\n');
        for (u, x) in self.mapping.0.iter().enumerate() {
            let _ = writeln!(out, "map {u} {x}");
        }
        out
    }
}

/// Verifies a witness: every switch is by an element of `group` at a valid
/// vertex, and the mapping is a homomorphism from the switched graph.
pub fn check_witness(
    g: &EdgeColouredGraph,
    h: &EdgeColouredGraph,
    group: &PermGroup,
    w: &Witness,
) -> bool {
    if g.m() != h.m() || group.degree() != g.m() {
        return false;
    }
    let well_formed = w
        .sequence
        .steps()
        .iter()
        .all(|s| s.vertex < g.n() && s.perm.degree() == g.m() && group.contains(&s.perm));
    if !well_formed {
        return false;
    }
    match apply_sequence(g, &w.sequence) {
        Ok(switched) => w.mapping.is_homomorphism(&switched, h),
        Err(_) => false,
    }
}

/// `n(G) + 4·K·|E(G)|`, where `K` is the longest commutator word for the
/// group: one representative switch per vertex plus a bounded repair per
/// edge.
pub fn witness_length_bound(g: &EdgeColouredGraph, ab: &Abelianization) -> usize {
    g.n() + 4 * ab.words().max_len() * g.edge_count()
}

/// Decides switchable homomorphisms to a fixed target, caching the work that
/// depends only on the target and the group.
#[derive(Debug, Clone)]
pub struct SwitchHomDecider {
    target: EdgeColouredGraph,
    ab: Abelianization,
    switch_graph: SwitchGraph,
}

impl SwitchHomDecider {
    pub fn new(h: &EdgeColouredGraph, group: &PermGroup) -> Result<Self> {
        if group.degree() != h.m() {
            return Err(Error::DegreeMismatch {
                expected: h.m(),
                found: group.degree(),
            });
        }
        let ab = group.abelianization()?;
        Self::with_abelianization(h, ab)
    }

    pub fn with_abelianization(h: &EdgeColouredGraph, ab: Abelianization) -> Result<Self> {
        let ha = abelianize_graph(h, ab.blocks())?;
        let switch_graph = SwitchGraph::build(&ha, ab.quotient())?;
        Ok(SwitchHomDecider {
            target: h.clone(),
            ab,
            switch_graph,
        })
    }

    pub fn abelianization(&self) -> &Abelianization {
        &self.ab
    }

    pub fn decide(&self, g: &EdgeColouredGraph) -> Result<Option<Witness>> {
        let m = self.target.m();
        if g.m() != m {
            return Err(Error::DegreeMismatch {
                expected: m,
                found: g.m(),
            });
        }
        let ga = abelianize_graph(g, self.ab.blocks())?;
        let Some(lifted) = find_hom(&ga, self.switch_graph.graph())? else {
            return Ok(None);
        };
        // u -> (x, π') means u must be switched by π'^{-1} and mapped to x
        let quotient = self.ab.quotient();
        let mut assignment = Vec::with_capacity(g.n());
        let mut mapping = Vec::with_capacity(g.n());
        for &id in &lifted.0 {
            let (x, q) = self.switch_graph.label(id);
            let inv = quotient
                .index_of(&quotient.element(q).inverse())
                .expect("closed group");
            assignment.push(inv);
            mapping.push(x);
        }
        let target: Vec<usize> = g
            .edges()
            .iter()
            .map(|e| {
                self.target
                    .colour(mapping[e.u], mapping[e.v])
                    .ok_or_else(|| {
                        Error::Internal(format!("edge {}-{} not mapped onto an edge", e.u, e.v))
                    })
            })
            .collect::<Result<_>>()?;
        let sequence = lift_assignment(g, &self.ab, &assignment, &target)?;
        let witness = Witness {
            sequence,
            mapping: Mapping(mapping),
        };
        if !check_witness(g, &self.target, self.ab.group(), &witness) {
            return Err(Error::Internal(
                "constructed witness fails verification".into(),
            ));
        }
        Ok(Some(witness))
    }
}

/// Decides whether some switching of `g` maps homomorphically to `h`.
pub fn decide_switch_hom(
    g: &EdgeColouredGraph,
    h: &EdgeColouredGraph,
    group: &PermGroup,
) -> Result<Option<Witness>> {
    SwitchHomDecider::new(h, group)?.decide(g)
}
