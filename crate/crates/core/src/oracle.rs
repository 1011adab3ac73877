//! Brute-force reference implementations: the full switching class by
//! exhaustive search, and switch-homomorphism by enumerating that class.
//!
//! Deliberately independent of the structural algorithms so that tests can
//! compare the two.

use std::collections::{HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::EdgeColouredGraph;
use crate::group::PermGroup;

pub const DEFAULT_CLASS_CAP: usize = 2_000_000;

/// All colourings of a fixed underlying graph reachable by switching, as
/// colour vectors in edge-index order.
#[derive(Debug, Clone)]
pub struct SwitchClass {
    base: EdgeColouredGraph,
    members: HashSet<Vec<usize>>,
}

impl SwitchClass {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// True if `h` has the same underlying graph and lies in the class.
    pub fn contains(&self, h: &EdgeColouredGraph) -> bool {
        self.base.same_underlying(h) && self.members.contains(&h.colours())
    }

    pub fn colourings(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.members.iter()
    }

    pub fn graphs(&self) -> impl Iterator<Item = EdgeColouredGraph> + '_ {
        self.members
            .iter()
            .map(|c| self.base.with_colours(c).expect("same shape"))
    }
}

/// Breadth-first search over colourings, switching one vertex by one
/// generator at a time.
pub fn enumerate_switch_class(
    g: &EdgeColouredGraph,
    group: &PermGroup,
    cap: usize,
) -> Result<SwitchClass> {
    if group.degree() != g.m() {
        return Err(Error::DegreeMismatch {
            expected: g.m(),
            found: group.degree(),
        });
    }
    let incident: Vec<Vec<usize>> = (0..g.n())
        .map(|v| {
            g.edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.u == v || e.v == v)
                .map(|(k, _)| k)
                .collect()
        })
        .collect();
    let start = g.colours();
    let mut members = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        for edges in &incident {
            if edges.is_empty() {
                continue;
            }
            for p in group.generators() {
                let mut next = cur.clone();
                for &k in edges {
                    next[k] = p.apply(next[k]);
                }
                if !members.contains(&next) {
                    if members.len() >= cap {
                        return Err(Error::CapExceeded { cap });
                    }
                    members.insert(next.clone());
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(SwitchClass {
        base: g.clone(),
        members,
    })
}

/// Plain coloured homomorphism search: every edge of `g` must map onto an
/// edge of `h` of the same colour.
pub fn naive_hom_exists(g: &EdgeColouredGraph, colours: &[usize], h: &EdgeColouredGraph) -> bool {
    let nh = h.n();
    let mut table = vec![0usize; nh * nh];
    for e in h.edges() {
        table[e.u * nh + e.v] = e.colour;
        table[e.v * nh + e.u] = e.colour;
    }
    if g.n() == 0 {
        return true;
    }
    if nh == 0 {
        return false;
    }
    // constraints checked once both endpoints are placed
    let mut back: Vec<Vec<(usize, usize)>> = vec![Vec::new(); g.n()];
    for (k, e) in g.edges().iter().enumerate() {
        back[e.v].push((e.u, colours[k]));
    }
    let mut f = vec![0usize; g.n()];
    fn go(
        v: usize,
        f: &mut Vec<usize>,
        back: &[Vec<(usize, usize)>],
        table: &[usize],
        nh: usize,
    ) -> bool {
        if v == f.len() {
            return true;
        }
        for x in 0..nh {
            if back[v].iter().all(|&(u, c)| table[f[u] * nh + x] == c) {
                f[v] = x;
                if go(v + 1, f, back, table, nh) {
                    return true;
                }
            }
        }
        false
    }
    go(0, &mut f, &back, &table, nh)
}

/// Decides `G →_Γ H` by trying every graph switching equivalent to `G`.
pub fn brute_decide(
    g: &EdgeColouredGraph,
    h: &EdgeColouredGraph,
    group: &PermGroup,
    cap: usize,
) -> Result<bool> {
    if g.m() != h.m() {
        return Err(Error::DegreeMismatch {
            expected: h.m(),
            found: g.m(),
        });
    }
    let class = enumerate_switch_class(g, group, cap)?;
    let found = class.colourings().any(|c| naive_hom_exists(g, c, h));
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(m: usize, colours: &[usize]) -> EdgeColouredGraph {
        EdgeColouredGraph::cycle(m, colours).unwrap()
    }

    #[test]
    fn class_sizes_under_z2() {
        let z2 = PermGroup::cyclic(2).unwrap();
        // a tree with e edges reaches all 2^e colourings
        let p = EdgeColouredGraph::path(2, &[1, 1, 1]).unwrap();
        assert_eq!(enumerate_switch_class(&p, &z2, 100).unwrap().len(), 8);
        // a cycle keeps the parity of colour-2 edges
        let class = enumerate_switch_class(&c(2, &[1, 1, 1, 1]), &z2, 100).unwrap();
        assert_eq!(class.len(), 8);
        assert!(class.contains(&c(2, &[2, 2, 1, 1])));
        assert!(!class.contains(&c(2, &[1, 1, 1, 2])));
    }

    #[test]
    fn triangle_and_single_vertex() {
        let z2 = PermGroup::cyclic(2).unwrap();
        let class = enumerate_switch_class(&c(2, &[1, 1, 1]), &z2, 100).unwrap();
        assert_eq!(class.len(), 4);
        assert!(class
            .colourings()
            .all(|v| v.iter().filter(|&&x| x == 2).count() % 2 == 0));
        for g in [z2, PermGroup::symmetric(3).unwrap()] {
            let one = EdgeColouredGraph::edgeless(1, g.degree());
            assert_eq!(enumerate_switch_class(&one, &g, 1).unwrap().len(), 1);
        }
    }

    #[test]
    fn class_of_triangle_under_s3_is_everything() {
        let s3 = PermGroup::symmetric(3).unwrap();
        let class = enumerate_switch_class(&c(3, &[1, 1, 1]), &s3, 100).unwrap();
        assert_eq!(class.len(), 27);
    }

    #[test]
    fn cap_is_enforced() {
        let z2 = PermGroup::cyclic(2).unwrap();
        let p = EdgeColouredGraph::path(2, &[1; 6]).unwrap();
        assert_eq!(
            enumerate_switch_class(&p, &z2, 10).unwrap_err(),
            Error::CapExceeded { cap: 10 }
        );
    }

    #[test]
    fn naive_hom_examples() {
        let k2 = EdgeColouredGraph::single_edge(2, 1).unwrap();
        let sq = c(2, &[1, 1, 1, 1]);
        assert!(naive_hom_exists(&sq, &sq.colours(), &k2));
        assert!(!naive_hom_exists(&sq, &[1, 1, 1, 2], &k2));
        let tri = c(2, &[1, 1, 1]);
        assert!(!naive_hom_exists(&tri, &tri.colours(), &k2));
    }

    #[test]
    fn brute_decide_examples() {
        let z2 = PermGroup::cyclic(2).unwrap();
        let k2 = EdgeColouredGraph::single_edge(2, 1).unwrap();
        assert!(brute_decide(&c(2, &[1, 1, 2, 2]), &k2, &z2, 1000).unwrap());
        assert!(!brute_decide(&c(2, &[1, 1, 1, 2]), &k2, &z2, 1000).unwrap());
        assert!(!brute_decide(&c(2, &[1, 1, 1]), &k2, &z2, 1000).unwrap());
    }
}
