//! The switch graph of an edge-coloured graph under an Abelian group: vertex
//! set `V(H) × Γ`, where an edge `xy` of colour `i` lifts to edges
//! `(x, π_r)(y, π_s)` of colour `π_r π_s(i)`.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::EdgeColouredGraph;
use crate::group::PermGroup;
use crate::perm::Permutation;

#[derive(Debug, Clone)]
pub struct SwitchGraph {
    base: EdgeColouredGraph,
    group: PermGroup,
    graph: EdgeColouredGraph,
}

impl SwitchGraph {
    /// Flat ids are `vertex * |Γ| + element index` with elements in the
    /// group's canonical order.
    pub fn build(h: &EdgeColouredGraph, group: &PermGroup) -> Result<Self> {
        if group.degree() != h.m() {
            return Err(Error::DegreeMismatch {
                expected: h.m(),
                found: group.degree(),
            });
        }
        if !group.is_abelian() {
            return Err(Error::NotAbelian);
        }
        let k = group.order();
        let mut edges = Vec::with_capacity(h.edge_count() * k * k);
        for e in h.edges() {
            for (r, pr) in group.elements().iter().enumerate() {
                for (s, ps) in group.elements().iter().enumerate() {
                    let colour = pr.apply(ps.apply(e.colour));
                    edges.push((e.u * k + r, e.v * k + s, colour));
                }
            }
        }
        let graph = EdgeColouredGraph::new(h.n() * k, h.m(), edges)?;
        Ok(SwitchGraph {
            base: h.clone(),
            group: group.clone(),
            graph,
        })
    }

    pub fn base(&self) -> &EdgeColouredGraph {
        &self.base
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn graph(&self) -> &EdgeColouredGraph {
        &self.graph
    }

    pub fn id(&self, vertex: usize, element: usize) -> usize {
        vertex * self.group.order() + element
    }

    /// Flat id of `(vertex, π)`, if `π ∈ Γ`.
    pub fn id_of(&self, vertex: usize, p: &Permutation) -> Option<usize> {
        self.group.index_of(p).map(|e| self.id(vertex, e))
    }

    /// `(vertex, element index)` of a flat id.
    pub fn label(&self, id: usize) -> (usize, usize) {
        (id / self.group.order(), id % self.group.order())
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for id in 0..self.graph.n() {
            let (v, e) = self.label(id);
            let _ = writeln!(out, "# {id} = ({v}, {})", self.group.element(e));
        }
        out.push_str(&self.graph.to_file_string());
        out
    }
}
