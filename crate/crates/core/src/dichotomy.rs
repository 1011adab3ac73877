//! Classification of targets as polynomial or NP-complete, the polynomial
//! solver, and the alternating-cycle construction behind the hardness
//! certificates.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{abelianize_graph, structure, Bipartition, EdgeColouredGraph, SpanningForest};
use crate::group::{Abelianization, PermGroup, RegularAction};
use crate::hom::{check_witness, Mapping, Witness};
use crate::indicator::{
    indicator_construction, smooth_and_periods, IndicatorDigraph, PeriodReport,
};
use crate::perm::Permutation;
use crate::switch_graph::SwitchGraph;
use crate::switching::{
    apply_sequence, can_switch_monochromatic, lift_assignment, parse_switch_line,
    regular_assignment, sequence_from_assignment, SwitchSequence,
};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum PolynomialReason {
    Edgeless,
    /// `H^Γ` switches (under `Γ^ab`) to monochromatic of block label
    /// `colour` via `sequence`.
    MonoBipartite {
        colour: usize,
        sequence: SwitchSequence,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "certificate", rename_all = "kebab-case")]
pub enum Certificate {
    /// An odd cycle of `H`.
    OddCycle { cycle: Vec<usize> },
    /// A fundamental cycle `v_0 .. v_{2k-1}` of `H^Γ` whose closing edge is
    /// the co-tree edge `v_{2k-1} v_0`. After `sequence` (switches over
    /// `Γ^ab` on `H^Γ`) the path has block colour `colours.0` and the closing
    /// edge block colour `colours.1`.
    NearlyMonoEvenCycle {
        cycle: Vec<usize>,
        cotree_edge: (usize, usize),
        colours: (usize, usize),
        sequence: SwitchSequence,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum Verdict {
    Polynomial(PolynomialReason),
    NpComplete(Certificate),
}

impl Verdict {
    pub fn is_polynomial(&self) -> bool {
        matches!(self, Verdict::Polynomial(_))
    }

    /// One-line summary, e.g. `NP-COMPLETE nearly-monochromatic (Δ1,Δ2)`.
    pub fn headline(&self) -> String {
        match self {
            Verdict::Polynomial(PolynomialReason::Edgeless) => "POLYNOMIAL edgeless".into(),
            Verdict::Polynomial(PolynomialReason::MonoBipartite { colour, .. }) => {
                format!("POLYNOMIAL mono-bipartite (Δ{colour})")
            }
            Verdict::NpComplete(Certificate::OddCycle { .. }) => "NP-COMPLETE odd-cycle".into(),
            Verdict::NpComplete(Certificate::NearlyMonoEvenCycle {
                colours: (k, l), ..
            }) => {
                format!("NP-COMPLETE nearly-monochromatic (Δ{k},Δ{l})")
            }
        }
    }

    /// Checks the attached evidence against the target.
    pub fn replay(&self, h: &EdgeColouredGraph, group: &PermGroup) -> Result<bool> {
        match self {
            Verdict::Polynomial(PolynomialReason::Edgeless) => Ok(h.is_edgeless()),
            Verdict::Polynomial(PolynomialReason::MonoBipartite { colour, sequence }) => {
                check_degree(h, group)?;
                let ab = group.abelianization()?;
                let ha = abelianize_graph(h, ab.blocks())?;
                let q = ab.quotient();
                if !structure(h).is_bipartite()
                    || !sequence.steps().iter().all(|s| {
                        s.vertex < ha.n() && s.perm.degree() == q.degree() && q.contains(&s.perm)
                    })
                {
                    return Ok(false);
                }
                let switched = apply_sequence(&ha, sequence)?;
                Ok(switched.edges().iter().all(|e| e.colour == *colour))
            }
            Verdict::NpComplete(cert) => cert.replay(h, group),
        }
    }

    /// Text form: a headline token line, then `cycle`/`cotree-edge` lines
    /// and switch lines over the quotient group.
    pub fn to_file_string(&self) -> String {
        let join = |vs: &[usize]| {
            vs.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(" ")
        };
        match self {
            Verdict::Polynomial(PolynomialReason::Edgeless) => "POLYNOMIAL edgeless\n".into(),
            Verdict::Polynomial(PolynomialReason::MonoBipartite { colour, sequence }) => {
                format!(
                    "POLYNOMIAL mono-bipartite {colour}\n{}",
                    sequence.to_file_string()
                )
            }
            Verdict::NpComplete(Certificate::OddCycle { cycle }) => {
                format!("NP-COMPLETE odd-cycle\ncycle {}\n", join(cycle))
            }
            Verdict::NpComplete(Certificate::NearlyMonoEvenCycle {
                cycle,
                cotree_edge: (u, v),
                colours: (k, l),
                sequence,
            }) => format!(
                "NP-COMPLETE nearly-monochromatic {k} {l}\ncycle {}\ncotree-edge {u} {v}\n{}",
                join(cycle),
                sequence.to_file_string()
            ),
        }
    }

    /// Parses [`Verdict::to_file_string`] output; `block_count` is the
    /// degree of the quotient group the switches act on.
    pub fn parse(text: &str, block_count: usize) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (first_no, first) = lines
            .next()
            .ok_or_else(|| Error::parse(1, "empty verdict file"))?;
        let head: Vec<&str> = first.split_whitespace().collect();
        let nums = |toks: &[&str], line: usize| -> Result<Vec<usize>> {
            toks.iter()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| Error::parse(line, format!("invalid number {t:?}")))
                })
                .collect()
        };
        let mut keyed = |key: &str| -> Result<Vec<usize>> {
            let (no, line) = lines
                .next()
                .ok_or_else(|| Error::parse(first_no, format!("missing `{key}` line")))?;
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.first() != Some(&key) {
                return Err(Error::parse(no, format!("expected `{key}`")));
            }
            nums(&toks[1..], no)
        };
        let verdict = match head.as_slice() {
            ["POLYNOMIAL", "edgeless"] => Verdict::Polynomial(PolynomialReason::Edgeless),
            ["POLYNOMIAL", "mono-bipartite", c] => {
                let colour = nums(&[c], first_no)?[0];
                let mut sequence = SwitchSequence::new();
                for (no, line) in lines {
                    let (v, p) = parse_switch_line(line, block_count).map_err(|e| e.at_line(no))?;
                    sequence.push(v, p);
                }
                Verdict::Polynomial(PolynomialReason::MonoBipartite { colour, sequence })
            }
            ["NP-COMPLETE", "odd-cycle"] => Verdict::NpComplete(Certificate::OddCycle {
                cycle: keyed("cycle")?,
            }),
            ["NP-COMPLETE", "nearly-monochromatic", k, l] => {
                let kl = nums(&[k, l], first_no)?;
                let cycle = keyed("cycle")?;
                let edge = keyed("cotree-edge")?;
                if edge.len() != 2 {
                    return Err(Error::parse(first_no, "`cotree-edge` needs two vertices"));
                }
                let mut sequence = SwitchSequence::new();
                for (no, line) in lines {
                    let (v, p) = parse_switch_line(line, block_count).map_err(|e| e.at_line(no))?;
                    sequence.push(v, p);
                }
                Verdict::NpComplete(Certificate::NearlyMonoEvenCycle {
                    cycle,
                    cotree_edge: (edge[0], edge[1]),
                    colours: (kl[0], kl[1]),
                    sequence,
                })
            }
            _ => {
                return Err(Error::parse(
                    first_no,
                    format!("unrecognised verdict {first:?}"),
                ))
            }
        };
        Ok(verdict)
    }
}

fn check_degree(h: &EdgeColouredGraph, group: &PermGroup) -> Result<()> {
    if group.degree() != h.m() {
        return Err(Error::DegreeMismatch {
            expected: h.m(),
            found: group.degree(),
        });
    }
    if !group.is_transitive() {
        return Err(Error::NotTransitive);
    }
    Ok(())
}

/// Switches every spanning tree edge to colour 1, roots left unswitched.
fn tree_to_colour_one(
    g: &EdgeColouredGraph,
    forest: &SpanningForest,
    action: &RegularAction,
) -> Vec<usize> {
    let mut assignment = vec![0; g.n()];
    for &v in &forest.order {
        if let Some((p, e)) = forest.parent[v] {
            let now = action.apply(assignment[p], g.edges()[e].colour);
            assignment[v] = action.transporter(now, 1);
        }
    }
    assignment
}

pub fn classify_target(h: &EdgeColouredGraph, group: &PermGroup) -> Result<Verdict> {
    check_degree(h, group)?;
    classify_with(h, &group.abelianization()?)
}

pub fn classify_with(h: &EdgeColouredGraph, ab: &Abelianization) -> Result<Verdict> {
    if h.is_edgeless() {
        return Ok(Verdict::Polynomial(PolynomialReason::Edgeless));
    }
    let st = structure(h);
    if let Bipartition::OddCycle(cycle) = st.bipartition {
        return Ok(Verdict::NpComplete(Certificate::OddCycle { cycle }));
    }
    let ha = abelianize_graph(h, ab.blocks())?;
    if let Some((colour, sequence)) = can_switch_monochromatic(&ha, ab.quotient())? {
        return Ok(Verdict::Polynomial(PolynomialReason::MonoBipartite {
            colour,
            sequence,
        }));
    }
    let action = ab.quotient().regular_action()?;
    let assignment = tree_to_colour_one(&ha, &st.forest, &action);
    let sequence = sequence_from_assignment(&assignment, |x| action.element(x).clone());
    let switched = apply_sequence(&ha, &sequence)?;
    let edge = st
        .forest
        .cotree
        .iter()
        .copied()
        .find(|&k| switched.edges()[k].colour != 1)
        .ok_or_else(|| Error::Internal("no co-tree edge breaks monochromaticity".into()))?;
    let e = switched.edges()[edge];
    Ok(Verdict::NpComplete(Certificate::NearlyMonoEvenCycle {
        cycle: st.forest.fundamental_cycle(&ha, edge),
        cotree_edge: (e.u, e.v),
        colours: (1, e.colour),
        sequence,
    }))
}

fn is_closed_walk_of_distinct(g: &EdgeColouredGraph, cycle: &[usize]) -> bool {
    let mut sorted = cycle.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    sorted.len() == cycle.len()
        && cycle.len() >= 3
        && cycle.iter().all(|&v| v < g.n())
        && (0..cycle.len()).all(|t| {
            g.edge_index(cycle[t], cycle[(t + 1) % cycle.len()])
                .is_some()
        })
}

impl Certificate {
    /// Re-checks the certificate against the target and group.
    pub fn replay(&self, h: &EdgeColouredGraph, group: &PermGroup) -> Result<bool> {
        match self {
            Certificate::OddCycle { cycle } => {
                Ok(cycle.len() % 2 == 1 && is_closed_walk_of_distinct(h, cycle))
            }
            Certificate::NearlyMonoEvenCycle {
                cycle,
                cotree_edge,
                colours: (k, l),
                sequence,
            } => {
                check_degree(h, group)?;
                let ab = group.abelianization()?;
                let ha = abelianize_graph(h, ab.blocks())?;
                let n = cycle.len();
                if n % 2 == 1 || !is_closed_walk_of_distinct(&ha, cycle) || k == l {
                    return Ok(false);
                }
                let (a, b) = (cycle[n - 1].min(cycle[0]), cycle[n - 1].max(cycle[0]));
                if (a, b) != *cotree_edge {
                    return Ok(false);
                }
                // recorded switches
                let quotient = ab.quotient();
                if !sequence.steps().iter().all(|s| {
                    s.vertex < ha.n()
                        && s.perm.degree() == quotient.degree()
                        && quotient.contains(&s.perm)
                }) {
                    return Ok(false);
                }
                let switched = apply_sequence(&ha, sequence)?;
                let path_ok = cycle
                    .windows(2)
                    .all(|w| switched.colour(w[0], w[1]) == Some(*k));
                let closing_ok = switched.colour(cycle[n - 1], cycle[0]) == Some(*l);
                if !(path_ok && closing_ok) {
                    return Ok(false);
                }
                // independent normalisation along the path from v_0
                let action = quotient.regular_action()?;
                let mut s = 0;
                for w in cycle.windows(2) {
                    let c = ha.colour(w[0], w[1]).expect("checked");
                    s = action.transporter(action.apply(s, c), *k);
                }
                let closing = ha.colour(cycle[n - 1], cycle[0]).expect("checked");
                Ok(action.apply(s, closing) == *l)
            }
        }
    }
}

/// Decides `G →_Γ K_2^i` in polynomial time: `G` must be bipartite and
/// `G^Γ` must switch to monochromatic.
pub fn solve_mono_bipartite_target(
    g: &EdgeColouredGraph,
    group: &PermGroup,
    colour: usize,
) -> Result<Option<Witness>> {
    check_degree(g, group)?;
    solve_mono_with(g, &group.abelianization()?, colour)
}

fn solve_mono_with(
    g: &EdgeColouredGraph,
    ab: &Abelianization,
    colour: usize,
) -> Result<Option<Witness>> {
    let m = ab.group().degree();
    if g.m() != m {
        return Err(Error::DegreeMismatch {
            expected: m,
            found: g.m(),
        });
    }
    if colour == 0 || colour > m {
        return Err(Error::ColourOutOfRange { colour, m });
    }
    let st = structure(g);
    let Bipartition::Bipartite(side) = &st.bipartition else {
        return Ok(None);
    };
    let ga = abelianize_graph(g, ab.blocks())?;
    let action = ab.quotient().regular_action()?;
    let label = ab.blocks().label(colour);
    let Some(assignment) =
        regular_assignment(&ga, &st.forest, &vec![label; ga.edge_count()], &action)
    else {
        return Ok(None);
    };
    let sequence = lift_assignment(g, ab, &assignment, &vec![colour; g.edge_count()])?;
    Ok(Some(Witness {
        sequence,
        mapping: Mapping(side.iter().map(|&s| s as usize).collect()),
    }))
}

/// Polynomial-time solver for a fixed target whose verdict is polynomial.
#[derive(Debug, Clone)]
pub struct PolynomialSolver {
    target: EdgeColouredGraph,
    ab: Abelianization,
    plan: Plan,
}

#[derive(Debug, Clone)]
enum Plan {
    Edgeless,
    Mono {
        colour: usize,
        /// Switches making the target monochromatic of `colour`.
        target_switches: SwitchSequence,
        edge: (usize, usize),
    },
}

impl PolynomialSolver {
    /// Fails with a precondition error if the target is NP-complete.
    pub fn new(h: &EdgeColouredGraph, group: &PermGroup) -> Result<Self> {
        check_degree(h, group)?;
        let ab = group.abelianization()?;
        let plan = match classify_with(h, &ab)? {
            Verdict::NpComplete(_) => {
                return Err(Error::Precondition(
                    "target is NP-complete; no polynomial solver applies".into(),
                ))
            }
            Verdict::Polynomial(PolynomialReason::Edgeless) => Plan::Edgeless,
            Verdict::Polynomial(PolynomialReason::MonoBipartite { colour: label, .. }) => {
                let ha = abelianize_graph(h, ab.blocks())?;
                let action = ab.quotient().regular_action()?;
                let forest = SpanningForest::new(&ha);
                let assignment =
                    regular_assignment(&ha, &forest, &vec![label; ha.edge_count()], &action)
                        .ok_or_else(|| Error::Internal("verdict not reproducible".into()))?;
                let colour = ab.blocks().block(label)[0];
                let target_switches =
                    lift_assignment(h, &ab, &assignment, &vec![colour; h.edge_count()])?;
                let e = h.edges()[0];
                Plan::Mono {
                    colour,
                    target_switches,
                    edge: (e.u, e.v),
                }
            }
        };
        Ok(PolynomialSolver {
            target: h.clone(),
            ab,
            plan,
        })
    }

    pub fn solve(&self, g: &EdgeColouredGraph) -> Result<Option<Witness>> {
        let h = &self.target;
        if g.m() != h.m() {
            return Err(Error::DegreeMismatch {
                expected: h.m(),
                found: g.m(),
            });
        }
        let witness = match &self.plan {
            Plan::Edgeless => {
                if !g.is_edgeless() || (h.n() == 0 && g.n() > 0) {
                    return Ok(None);
                }
                Witness {
                    sequence: SwitchSequence::new(),
                    mapping: Mapping(vec![0; g.n()]),
                }
            }
            Plan::Mono {
                colour,
                target_switches,
                edge,
            } => {
                let Some(w) = solve_mono_with(g, &self.ab, *colour)? else {
                    return Ok(None);
                };
                let f: Vec<usize> = w
                    .mapping
                    .0
                    .iter()
                    .map(|&s| if s == 0 { edge.0 } else { edge.1 })
                    .collect();
                // undo the target switches on the preimages of each vertex
                let mut sequence = w.sequence;
                for s in target_switches.inverse().steps() {
                    for (u, _) in f.iter().enumerate().filter(|(_, &x)| x == s.vertex) {
                        sequence.push(u, s.perm.clone());
                    }
                }
                Witness {
                    sequence,
                    mapping: Mapping(f),
                }
            }
        };
        if !check_witness(g, h, self.ab.group(), &witness) {
            return Err(Error::Internal(
                "polynomial solver produced an invalid witness".into(),
            ));
        }
        Ok(Some(witness))
    }
}

/// Solves `G →_Γ H` for a polynomial target `H`; NP-complete targets are
/// rejected.
pub fn solve_polynomial_target(
    g: &EdgeColouredGraph,
    h: &EdgeColouredGraph,
    group: &PermGroup,
) -> Result<Option<Witness>> {
    PolynomialSolver::new(h, group)?.solve(g)
}

/// Two alternating cycles through `(v_0, e)` in the switch graph of a graph
/// containing a nearly monochromatic even cycle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlternatingCycles {
    pub i: usize,
    pub j: usize,
    /// Order of the chosen element `π` with `π(i) = j`.
    pub d: usize,
    /// Half the length of the base cycle.
    pub k: usize,
    /// Length `2d`, flat ids in the switch graph.
    pub c1: Vec<usize>,
    /// Length `2d(k-1) + 2`, flat ids in the switch graph.
    pub c2: Vec<usize>,
}

impl AlternatingCycles {
    /// Vertices at even positions; consecutive ones are joined by arcs of
    /// the `(i, j)` indicator digraph.
    pub fn directed_c1(&self) -> Vec<usize> {
        self.c1.iter().step_by(2).copied().collect()
    }

    pub fn directed_c2(&self) -> Vec<usize> {
        self.c2.iter().step_by(2).copied().collect()
    }
}

/// True if `cycle` is a simple cycle of `g` whose edges, starting with
/// `cycle[0] cycle[1]`, alternate colours `i` and `j`.
pub fn is_alternating_cycle(g: &EdgeColouredGraph, cycle: &[usize], i: usize, j: usize) -> bool {
    cycle.len().is_multiple_of(2)
        && is_closed_walk_of_distinct(g, cycle)
        && (0..cycle.len()).all(|t| {
            let want = if t % 2 == 0 { i } else { j };
            g.colour(cycle[t], cycle[(t + 1) % cycle.len()]) == Some(want)
        })
}

/// Builds the cycles `C_1` (length `2d`) and `C_2` (length `2d(k-1)+2`) in
/// `sw`, whose base must contain `cycle = v_0 .. v_{2k-1}` with every path
/// edge of colour `i` and the closing edge `v_{2k-1} v_0` of colour
/// `j = π(i) ≠ i`.
pub fn build_alternating_cycles(
    sw: &SwitchGraph,
    pi: &Permutation,
    cycle: &[usize],
) -> Result<AlternatingCycles> {
    let h = sw.base();
    let n = cycle.len();
    if n < 4 || n % 2 == 1 {
        return Err(Error::Precondition(
            "base cycle must be even of length at least 4".into(),
        ));
    }
    if !is_closed_walk_of_distinct(h, cycle) {
        return Err(Error::Precondition(
            "base cycle is not a cycle of the graph".into(),
        ));
    }
    let i = h.colour(cycle[0], cycle[1]).expect("checked");
    if cycle.windows(2).any(|w| h.colour(w[0], w[1]) != Some(i)) {
        return Err(Error::Precondition(format!(
            "path edges are not all colour {i}"
        )));
    }
    let j = h.colour(cycle[n - 1], cycle[0]).expect("checked");
    if j == i {
        return Err(Error::Precondition(
            "closing edge has the path colour".into(),
        ));
    }
    if pi.degree() != h.m() || !sw.group().contains(pi) {
        return Err(Error::NotInGroup(pi.to_string()));
    }
    if pi.apply(i) != j {
        return Err(Error::Precondition(format!(
            "{pi} does not send {i} to {j}"
        )));
    }
    let d = pi.order();
    let k = n / 2;
    let power: Vec<usize> = (0..d)
        .map(|s| sw.group().index_of(&pi.pow(s)).expect("closed group"))
        .collect();
    let at = |v: usize, s: usize| sw.id(cycle[v], power[s % d]);

    let mut c1 = Vec::with_capacity(2 * d);
    for l in 0..d {
        c1.push(at(0, l));
        c1.push(at(1, d - l));
    }

    let mut c2 = vec![at(0, 0)];
    for t in (1..=2 * k - 3).step_by(2) {
        if t == 1 {
            c2.push(at(t, 0));
        }
        for l in 1..d {
            c2.push(at(t + 1, l));
            c2.push(at(t, d - l));
        }
        c2.push(at(t + 1, 0));
        c2.push(at(t + 2, 0));
    }

    let built = AlternatingCycles { i, j, d, k, c1, c2 };
    let g = sw.graph();
    if built.c1.len() != 2 * d
        || built.c2.len() != 2 * d * (k - 1) + 2
        || !is_alternating_cycle(g, &built.c1, i, j)
        || !is_alternating_cycle(g, &built.c2, i, j)
    {
        return Err(Error::Internal(
            "alternating cycle construction failed".into(),
        ));
    }
    Ok(built)
}

/// Everything needed to re-check why a bipartite target that does not
/// switch to monochromatic is hard.
#[derive(Debug, Clone, Serialize)]
pub struct HardnessWitness {
    /// `H^Γ` after the certificate's switches.
    pub switched: EdgeColouredGraph,
    pub cycle: Vec<usize>,
    pub pi: Permutation,
    pub cycles: AlternatingCycles,
    /// `C_1` and `C_2` as `(vertex, element)` labels.
    pub c1_labels: Vec<(usize, Permutation)>,
    pub c2_labels: Vec<(usize, Permutation)>,
    #[serde(skip)]
    pub indicator: IndicatorDigraph,
    pub periods: PeriodReport,
    /// Lengths of the directed cycles induced in the indicator digraph.
    pub directed_lengths: (usize, usize),
    /// Whether both directed cycles are present and lie in one strongly
    /// connected component.
    pub directed_cycles_ok: bool,
}

/// For a target with a nearly monochromatic certificate, builds the switch
/// graph of the switched `H^Γ`, the alternating cycles, the `(i, j)`
/// indicator digraph and its period report. Returns `None` for targets with
/// any other verdict.
pub fn hardness_witness(
    h: &EdgeColouredGraph,
    group: &PermGroup,
) -> Result<Option<HardnessWitness>> {
    check_degree(h, group)?;
    let ab = group.abelianization()?;
    let Verdict::NpComplete(Certificate::NearlyMonoEvenCycle {
        cycle,
        colours: (i, j),
        sequence,
        ..
    }) = classify_with(h, &ab)?
    else {
        return Ok(None);
    };
    let ha = abelianize_graph(h, ab.blocks())?;
    let switched = apply_sequence(&ha, &sequence)?;
    let quotient = ab.quotient();
    let pi = quotient
        .elements()
        .iter()
        .find(|p| p.apply(i) == j)
        .cloned()
        .ok_or_else(|| Error::Internal("no element sends i to j".into()))?;
    let sw = SwitchGraph::build(&switched, quotient)?;
    let cycles = build_alternating_cycles(&sw, &pi, &cycle)?;
    let indicator = indicator_construction(sw.graph(), i, j)?;
    let periods = smooth_and_periods(&indicator);

    let d1 = cycles.directed_c1();
    let d2 = cycles.directed_c2();
    let closed = |c: &[usize]| (0..c.len()).all(|t| indicator.has_arc(c[t], c[(t + 1) % c.len()]));
    let same_component = periods.component_of(d1[0]).is_some_and(|comp| {
        d1.iter()
            .chain(&d2)
            .all(|v| comp.vertices.binary_search(v).is_ok())
    });
    let directed_cycles_ok = closed(&d1) && closed(&d2) && same_component;
    let label = |id: usize| {
        let (v, e) = sw.label(id);
        (v, quotient.element(e).clone())
    };
    Ok(Some(HardnessWitness {
        c1_labels: cycles.c1.iter().map(|&x| label(x)).collect(),
        c2_labels: cycles.c2.iter().map(|&x| label(x)).collect(),
        directed_lengths: (d1.len(), d2.len()),
        switched,
        cycle,
        pi,
        cycles,
        indicator,
        periods,
        directed_cycles_ok,
    }))
}
