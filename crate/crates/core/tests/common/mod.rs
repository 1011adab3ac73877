//! Shared fixtures and independent reference computations for the
//! integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, VecDeque};

use ecswitch::{EdgeColouredGraph, PermGroup, Permutation};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn perm(text: &str, m: usize) -> Permutation {
    Permutation::parse(text, m).unwrap()
}

pub fn group(gens: &[&str], m: usize) -> PermGroup {
    let gens: Vec<Permutation> = gens.iter().map(|g| perm(g, m)).collect();
    PermGroup::generate(&gens, m).unwrap()
}

pub fn z(m: usize) -> PermGroup {
    PermGroup::cyclic(m).unwrap()
}

pub fn klein() -> PermGroup {
    group(&["(1 2)(3 4)", "(1 3)(2 4)"], 4)
}

pub fn s3() -> PermGroup {
    PermGroup::symmetric(3).unwrap()
}

pub fn d8() -> PermGroup {
    group(&["(1 2 3 4)", "(1 3)"], 4)
}

/// Abelian transitive groups of order at most 4.
pub fn small_abelian() -> Vec<(&'static str, PermGroup)> {
    vec![
        ("Z1", PermGroup::trivial(1).unwrap()),
        ("Z2", z(2)),
        ("Z3", z(3)),
        ("Z4", z(4)),
        ("V4", klein()),
    ]
}

pub fn non_abelian() -> Vec<(&'static str, PermGroup)> {
    vec![("S3", s3()), ("D8", d8())]
}

pub fn random_graph<R: Rng>(rng: &mut R, n: usize, m: usize, p: f64) -> EdgeColouredGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, rng.gen_range(1..=m)));
            }
        }
    }
    EdgeColouredGraph::new(n, m, edges).unwrap()
}

/// Random colouring of a random labelled tree plus `extra` further edges.
pub fn random_sparse_graph<R: Rng>(
    rng: &mut R,
    n: usize,
    m: usize,
    extra: usize,
) -> EdgeColouredGraph {
    let mut pairs = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        pairs.insert((u, v));
    }
    for _ in 0..extra {
        if n < 2 {
            break;
        }
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v {
            pairs.insert((u.min(v), u.max(v)));
        }
    }
    let edges: Vec<(usize, usize, usize)> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, rng.gen_range(1..=m)))
        .collect();
    EdgeColouredGraph::new(n, m, edges).unwrap()
}

pub fn random_recolouring<R: Rng>(rng: &mut R, g: &EdgeColouredGraph) -> EdgeColouredGraph {
    let colours: Vec<usize> = (0..g.edge_count())
        .map(|_| rng.gen_range(1..=g.m()))
        .collect();
    g.with_colours(&colours).unwrap()
}

/// A random switching of `g`, computed directly on the colour vector.
pub fn random_switching<R: Rng>(
    rng: &mut R,
    g: &EdgeColouredGraph,
    grp: &PermGroup,
    steps: usize,
) -> EdgeColouredGraph {
    let mut colours = g.colours();
    for _ in 0..steps {
        if g.n() == 0 {
            break;
        }
        let v = rng.gen_range(0..g.n());
        let p = grp.elements().choose(rng).unwrap();
        for (k, e) in g.edges().iter().enumerate() {
            if e.u == v || e.v == v {
                colours[k] = p.apply(colours[k]);
            }
        }
    }
    g.with_colours(&colours).unwrap()
}

pub fn relabel(g: &EdgeColouredGraph, sigma: &[usize]) -> EdgeColouredGraph {
    EdgeColouredGraph::new(
        g.n(),
        g.m(),
        g.edges().iter().map(|e| (sigma[e.u], sigma[e.v], e.colour)),
    )
    .unwrap()
}

/// Two-colouring by breadth-first search, written independently of the
/// library's spanning forest.
pub fn is_bipartite(g: &EdgeColouredGraph) -> bool {
    let mut side = vec![u8::MAX; g.n()];
    for s in 0..g.n() {
        if side[s] != u8::MAX {
            continue;
        }
        side[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(x) = queue.pop_front() {
            for e in g.edges() {
                if e.u != x && e.v != x {
                    continue;
                }
                let y = if e.u == x { e.v } else { e.u };
                if side[y] == u8::MAX {
                    side[y] = 1 - side[x];
                    queue.push_back(y);
                } else if side[y] == side[x] {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_connected(g: &EdgeColouredGraph) -> bool {
    if g.n() == 0 {
        return true;
    }
    let mut seen = vec![false; g.n()];
    seen[0] = true;
    let mut stack = vec![0];
    while let Some(x) = stack.pop() {
        for e in g.edges() {
            for (a, b) in [(e.u, e.v), (e.v, e.u)] {
                if a == x && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

type Images = Vec<usize>;

fn mul(a: &Images, b: &Images) -> Images {
    b.iter().map(|&x| a[x]).collect()
}

fn inv(a: &Images) -> Images {
    let mut out = vec![0; a.len()];
    for (i, &x) in a.iter().enumerate() {
        out[x] = i;
    }
    out
}

fn closure(gens: &[Images], degree: usize) -> BTreeSet<Images> {
    let id: Images = (0..degree).collect();
    let mut seen = BTreeSet::from([id.clone()]);
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(g, &x);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen
}

/// Reference Abelianization computed on raw image vectors: block of each
/// colour (labels by least member) and the quotient group.
pub struct RefAbelianization {
    pub label: Vec<usize>,
    pub blocks: usize,
    pub quotient: PermGroup,
}

pub fn reference_abelianization(grp: &PermGroup) -> RefAbelianization {
    let m = grp.degree();
    let elems: Vec<Images> = grp
        .generators()
        .iter()
        .map(|p| p.images().iter().map(|&x| x - 1).collect())
        .collect();
    let all = closure(&elems, m);
    let mut comms = Vec::new();
    for a in &all {
        for b in &all {
            comms.push(mul(&mul(a, b), &mul(&inv(a), &inv(b))));
        }
    }
    let derived = closure(&comms, m);
    // orbits of the derived subgroup, labelled by increasing least member
    let mut label = vec![0usize; m];
    let mut next = 0;
    for c in 0..m {
        if label[c] != 0 {
            continue;
        }
        next += 1;
        for d in &derived {
            label[d[c]] = next;
        }
    }
    let gens: Vec<Permutation> = elems
        .iter()
        .map(|g| {
            let mut img = vec![0; next];
            for c in 0..m {
                img[label[c] - 1] = label[g[c]];
            }
            Permutation::from_images(&img).unwrap()
        })
        .collect();
    RefAbelianization {
        label,
        blocks: next,
        quotient: PermGroup::generate(&gens, next).unwrap(),
    }
}

pub fn reference_abelianize_graph(
    g: &EdgeColouredGraph,
    r: &RefAbelianization,
) -> EdgeColouredGraph {
    EdgeColouredGraph::new(
        g.n(),
        r.blocks,
        g.edges().iter().map(|e| (e.u, e.v, r.label[e.colour - 1])),
    )
    .unwrap()
}

/// All colour vectors of length `len` over `1..=m` in restricted-growth
/// form: the first occurrence of each colour is in increasing order.
pub fn restricted_growth(len: usize, m: usize) -> Vec<Vec<usize>> {
    fn go(cur: &mut Vec<usize>, len: usize, m: usize, max: usize, out: &mut Vec<Vec<usize>>) {
        if cur.len() == len {
            out.push(cur.clone());
            return;
        }
        for c in 1..=(max + 1).min(m) {
            cur.push(c);
            go(cur, len, m, max.max(c), out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), len, m, 0, &mut out);
    out
}

/// All colour vectors of length `len` over `1..=m`.
pub fn all_colourings(len: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (1..=m).map(move |c| {
                    let mut w = v.clone();
                    w.push(c);
                    w
                })
            })
            .collect();
    }
    out
}
