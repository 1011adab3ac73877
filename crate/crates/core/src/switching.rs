//! Vertex switching, switch sequences, and the decision procedures built on
//! the regularity of Abelian transitive groups.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{abelianize_graph, EdgeColouredGraph, SpanningForest};
use crate::group::{Abelianization, CommutatorWords, PermGroup, RegularAction};
use crate::perm::Permutation;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Switch {
    pub vertex: usize,
    pub perm: Permutation,
}

/// Switches applied first to last.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct SwitchSequence {
    steps: Vec<Switch>,
}

impl SwitchSequence {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, vertex: usize, perm: Permutation) {
        self.steps.push(Switch { vertex, perm });
    }

    pub fn extend(&mut self, other: &SwitchSequence) {
        self.steps.extend(other.steps.iter().cloned());
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[Switch] {
        &self.steps
    }

    /// The sequence that undoes this one.
    pub fn inverse(&self) -> SwitchSequence {
        SwitchSequence {
            steps: self
                .steps
                .iter()
                .rev()
                .map(|s| Switch {
                    vertex: s.vertex,
                    perm: s.perm.inverse(),
                })
                .collect(),
        }
    }

    /// Parses lines `<vertex> <permutation>`; blank lines and `#` comments
    /// are skipped.
    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let mut seq = SwitchSequence::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (v, p) = parse_switch_line(line, degree).map_err(|e| e.at_line(lineno + 1))?;
            seq.push(v, p);
        }
        Ok(seq)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for s in &self.steps {
            let _ = writeln!(out, "{} {}", s.vertex, s.perm);
        }
        out
    }
}

pub(crate) fn parse_switch_line(line: &str, degree: usize) -> Result<(usize, Permutation)> {
    let (v, rest) = line
        .split_once(char::is_whitespace)
        .ok_or_else(|| Error::parse(0, "expected `<vertex> <permutation>`"))?;
    let v = v
        .parse::<usize>()
        .map_err(|_| Error::parse(0, format!("invalid vertex {v:?}")))?;
    Ok((v, Permutation::parse(rest, degree)?))
}

impl FromIterator<(usize, Permutation)> for SwitchSequence {
    fn from_iter<I: IntoIterator<Item = (usize, Permutation)>>(iter: I) -> Self {
        SwitchSequence {
            steps: iter
                .into_iter()
                .map(|(vertex, perm)| Switch { vertex, perm })
                .collect(),
        }
    }
}

fn check_switch(g: &EdgeColouredGraph, v: usize, p: &Permutation) -> Result<()> {
    if p.degree() != g.m() {
        return Err(Error::DegreeMismatch {
            expected: g.m(),
            found: p.degree(),
        });
    }
    if v >= g.n() {
        return Err(Error::VertexOutOfRange {
            vertex: v,
            n: g.n(),
        });
    }
    Ok(())
}

fn switch_in_place(g: &mut EdgeColouredGraph, v: usize, p: &Permutation) {
    let incident: Vec<usize> = g.neighbours(v).iter().map(|&(_, e)| e).collect();
    for e in incident {
        let c = g.edges()[e].colour;
        g.set_colour(e, p.apply(c));
    }
}

/// Recolours every edge `vu` of colour `i` with `π(i)`.
pub fn switch_vertex(
    g: &EdgeColouredGraph,
    v: usize,
    p: &Permutation,
) -> Result<EdgeColouredGraph> {
    check_switch(g, v, p)?;
    let mut out = g.clone();
    switch_in_place(&mut out, v, p);
    Ok(out)
}

pub fn apply_sequence(g: &EdgeColouredGraph, seq: &SwitchSequence) -> Result<EdgeColouredGraph> {
    let mut out = g.clone();
    for s in seq.steps() {
        check_switch(g, s.vertex, &s.perm)?;
        switch_in_place(&mut out, s.vertex, &s.perm);
    }
    Ok(out)
}

fn require_abelian_transitive(group: &PermGroup, m: usize) -> Result<()> {
    if group.degree() != m {
        return Err(Error::DegreeMismatch {
            expected: m,
            found: group.degree(),
        });
    }
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(())
}

/// Finds one group element per vertex (indices into `action`) so that after
/// switching, edge `k` has colour `target[k]`.
///
/// For each component the root switch is tried over all group elements; the
/// rest of the assignment is then forced along the spanning tree because the
/// action is regular.
pub(crate) fn regular_assignment(
    g: &EdgeColouredGraph,
    forest: &SpanningForest,
    target: &[usize],
    action: &RegularAction,
) -> Option<Vec<usize>> {
    let n = g.n();
    let mut assignment = vec![0usize; n];
    let mut comp_vertices: Vec<Vec<usize>> = vec![Vec::new(); forest.roots.len()];
    for &v in &forest.order {
        comp_vertices[forest.component[v]].push(v);
    }
    let mut comp_edges: Vec<Vec<usize>> = vec![Vec::new(); forest.roots.len()];
    for (k, e) in g.edges().iter().enumerate() {
        comp_edges[forest.component[e.u]].push(k);
    }
    for (c, vertices) in comp_vertices.iter().enumerate() {
        let mut found = false;
        for root_choice in 0..action.order() {
            for &v in vertices {
                assignment[v] = match forest.parent[v] {
                    None => root_choice,
                    Some((p, e)) => {
                        let now = action.apply(assignment[p], g.edges()[e].colour);
                        action.transporter(now, target[e])
                    }
                };
            }
            let ok = comp_edges[c].iter().all(|&k| {
                let e = g.edges()[k];
                action.apply(assignment[e.u], action.apply(assignment[e.v], e.colour)) == target[k]
            });
            if ok {
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    Some(assignment)
}

pub(crate) fn sequence_from_assignment(
    assignment: &[usize],
    elements: impl Fn(usize) -> Permutation,
) -> SwitchSequence {
    assignment
        .iter()
        .enumerate()
        .map(|(v, &a)| (v, elements(a)))
        .filter(|(_, p)| !p.is_identity())
        .collect()
}

/// The outcome of normalising a cycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CycleClass {
    /// Even cycle that switches to monochromatic in every colour.
    MonoEven,
    /// Even cycle that switches to all colour `i` except one edge of colour `j`.
    NearlyMonoEven { i: usize, j: usize },
    /// Odd cycle, switched to monochromatic of `colour`.
    MonoOdd { colour: usize },
}

#[derive(Debug, Clone, Serialize)]
pub struct CycleClassification {
    pub class: CycleClass,
    /// `v_0, .., v_{n-1}` in cycle order, starting at the least vertex.
    pub cycle: Vec<usize>,
    /// Realises the normal form: all edges colour 1 except possibly
    /// `v_0 v_{n-1}` (colour `j` in the nearly monochromatic case), or all
    /// edges of the achieved colour for odd cycles.
    pub sequence: SwitchSequence,
}

/// Vertex order of a graph whose underlying graph is a single cycle.
pub fn cycle_order(c: &EdgeColouredGraph) -> Result<Vec<usize>> {
    let n = c.n();
    if n < 3 || c.edge_count() != n || (0..n).any(|v| c.degree(v) != 2) {
        return Err(Error::NotACycle);
    }
    let mut order = vec![0];
    let mut prev = usize::MAX;
    let mut cur = 0;
    loop {
        let next = c
            .neighbours(cur)
            .iter()
            .map(|&(y, _)| y)
            .find(|&y| y != prev)
            .expect("degree 2");
        if next == 0 {
            break;
        }
        prev = cur;
        cur = next;
        order.push(cur);
        if order.len() > n {
            return Err(Error::NotACycle);
        }
    }
    if order.len() != n {
        return Err(Error::NotACycle);
    }
    Ok(order)
}

/// Classifies a cycle under an Abelian transitive group.
pub fn classify_cycle(c: &EdgeColouredGraph, group: &PermGroup) -> Result<CycleClassification> {
    require_abelian_transitive(group, c.m())?;
    let cycle = cycle_order(c)?;
    let action = group.regular_action()?;
    let n = cycle.len();
    let mut s = vec![0usize; n];
    for t in 0..n - 1 {
        let colour = c.colour(cycle[t], cycle[t + 1]).expect("cycle edge");
        s[t + 1] = action.transporter(action.apply(s[t], colour), 1);
    }
    let closing_colour = c.colour(cycle[n - 1], cycle[0]).expect("cycle edge");
    let closing = action.apply(s[n - 1], action.apply(s[0], closing_colour));

    let class = if n % 2 == 0 {
        if closing == 1 {
            CycleClass::MonoEven
        } else {
            CycleClass::NearlyMonoEven { i: 1, j: closing }
        }
    } else {
        if closing != 1 {
            // switch every odd-indexed vertex with some π, π(1) = closing
            let pi = action.transporter(1, closing);
            for t in (1..n).step_by(2) {
                s[t] = action.compose(pi, s[t]);
            }
        }
        CycleClass::MonoOdd { colour: closing }
    };
    let mut assignment = vec![0; c.n()];
    for (t, &v) in cycle.iter().enumerate() {
        assignment[v] = s[t];
    }
    let sequence = sequence_from_assignment(&assignment, |a| action.element(a).clone());
    Ok(CycleClassification {
        class,
        cycle,
        sequence,
    })
}

/// Searches for switches making `g` monochromatic under an Abelian transitive
/// group. Colours are tried in increasing order, so colour 1 is reported
/// whenever it is reachable.
pub fn can_switch_monochromatic(
    g: &EdgeColouredGraph,
    group: &PermGroup,
) -> Result<Option<(usize, SwitchSequence)>> {
    require_abelian_transitive(group, g.m())?;
    let action = group.regular_action()?;
    let forest = SpanningForest::new(g);
    for colour in 1..=g.m() {
        let target = vec![colour; g.edge_count()];
        if let Some(a) = regular_assignment(g, &forest, &target, &action) {
            return Ok(Some((
                colour,
                sequence_from_assignment(&a, |x| action.element(x).clone()),
            )));
        }
    }
    Ok(None)
}

/// The commutator switches at `u` and `w` that multiply the colour of edge
/// `uw` by `[π_1, φ_1] ∘ .. ∘ [π_k, φ_k]` and leave every other edge alone.
pub fn commutator_switches(
    u: usize,
    w: usize,
    word: &[(Permutation, Permutation)],
) -> SwitchSequence {
    let mut seq = SwitchSequence::new();
    for (pi, phi) in word.iter().rev() {
        seq.push(w, phi.inverse());
        seq.push(u, pi.inverse());
        seq.push(w, phi.clone());
        seq.push(u, pi.clone());
    }
    seq
}

/// Changes the colour `i` of edge `uw` to `τ(i)` for `τ ∈ [Γ,Γ]`, leaving all
/// other edges unchanged.
pub fn single_edge_recolour(
    g: &EdgeColouredGraph,
    (u, w): (usize, usize),
    tau: &Permutation,
    words: &CommutatorWords,
) -> Result<(EdgeColouredGraph, SwitchSequence)> {
    if tau.degree() != g.m() {
        return Err(Error::DegreeMismatch {
            expected: g.m(),
            found: tau.degree(),
        });
    }
    g.edge_index(u, w).ok_or(Error::NoSuchEdge(u, w))?;
    let word = words
        .word(tau)
        .ok_or_else(|| Error::NotInCommutator(tau.to_string()))?;
    let seq = commutator_switches(u, w, word);
    Ok((apply_sequence(g, &seq)?, seq))
}

/// Turns a switch assignment over `Γ^ab` into switches over `Γ` that give
/// every edge exactly the colour `target[k]`.
///
/// Each vertex is switched once by the coset representative of its assigned
/// element; every edge left with the wrong colour inside the right block is
/// then repaired on its own with commutator switches.
pub(crate) fn lift_assignment(
    g: &EdgeColouredGraph,
    ab: &Abelianization,
    assignment: &[usize],
    target: &[usize],
) -> Result<SwitchSequence> {
    let mut seq = sequence_from_assignment(assignment, |q| ab.representative(q).clone());
    let current = apply_sequence(g, &seq)?;
    let words = ab.words();
    for (k, e) in current.edges().iter().enumerate() {
        if e.colour == target[k] {
            continue;
        }
        let tau = words.transporter(e.colour, target[k]).ok_or_else(|| {
            Error::Internal(format!(
                "colours {} and {} of edge {}-{} lie in different blocks",
                e.colour, target[k], e.u, e.v
            ))
        })?;
        let word = words
            .word(tau)
            .expect("transporter lies in commutator subgroup");
        seq.extend(&commutator_switches(e.u, e.v, word));
    }
    Ok(seq)
}

/// Decides whether `h` is obtained from `g` by switching; on success the
/// returned sequence turns `g` into `h` exactly.
pub fn switch_equivalent(
    g: &EdgeColouredGraph,
    h: &EdgeColouredGraph,
    group: &PermGroup,
) -> Result<Option<SwitchSequence>> {
    switch_equivalent_with(g, h, &group.abelianization()?)
}

/// [`switch_equivalent`] with a precomputed Abelianization.
pub fn switch_equivalent_with(
    g: &EdgeColouredGraph,
    h: &EdgeColouredGraph,
    ab: &Abelianization,
) -> Result<Option<SwitchSequence>> {
    if g.m() != ab.group().degree() || h.m() != ab.group().degree() {
        return Err(Error::DegreeMismatch {
            expected: ab.group().degree(),
            found: if g.m() != ab.group().degree() {
                g.m()
            } else {
                h.m()
            },
        });
    }
    if !g.same_underlying(h) {
        return Err(Error::UnderlyingMismatch);
    }
    let ga = abelianize_graph(g, ab.blocks())?;
    let ha = abelianize_graph(h, ab.blocks())?;
    let action = ab.quotient().regular_action()?;
    let forest = SpanningForest::new(g);
    let Some(assignment) = regular_assignment(&ga, &forest, &ha.colours(), &action) else {
        return Ok(None);
    };
    let seq = lift_assignment(g, ab, &assignment, &h.colours())?;
    if apply_sequence(g, &seq)? != *h {
        return Err(Error::Internal(
            "lifted switch sequence does not reach target".into(),
        ));
    }
    Ok(Some(seq))
}

/// Switches `g` to monochromatic under any transitive group. The reported
/// colour is the least colour of the least reachable block.
pub fn switch_to_monochromatic(
    g: &EdgeColouredGraph,
    group: &PermGroup,
) -> Result<Option<(usize, SwitchSequence)>> {
    let ab = group.abelianization()?;
    let ga = abelianize_graph(g, ab.blocks())?;
    let Some((label, _)) = can_switch_monochromatic(&ga, ab.quotient())? else {
        return Ok(None);
    };
    let colour = ab.blocks().block(label)[0];
    let mono = g.with_colours(&vec![colour; g.edge_count()])?;
    let seq = switch_equivalent_with(g, &mono, &ab)?
        .ok_or_else(|| Error::Internal("block-level solution does not lift".into()))?;
    Ok(Some((colour, seq)))
}

/// Abelian-level equivalence of `g` and `h` under an Abelian transitive group.
pub fn switch_equivalent_abelian(
    g: &EdgeColouredGraph,
    h: &EdgeColouredGraph,
    group: &PermGroup,
) -> Result<Option<SwitchSequence>> {
    require_abelian_transitive(group, g.m())?;
    if !g.same_underlying(h) || g.m() != h.m() {
        return Err(Error::UnderlyingMismatch);
    }
    let action = group.regular_action()?;
    let forest = SpanningForest::new(g);
    Ok(regular_assignment(g, &forest, &h.colours(), &action)
        .map(|a| sequence_from_assignment(&a, |x| action.element(x).clone())))
}
