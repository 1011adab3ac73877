//! Finite permutation groups acting on the colours `{1, .., m}`.
//!
//! Groups are small, so everything here works with the full element list:
//! closure is a breadth-first product over the generators and the commutator
//! subgroup is generated from commutators of all element pairs.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::Permutation;

/// Default bound on the number of elements a generated group may have.
pub const DEFAULT_ELEMENT_CAP: usize = 100_000;

/// A permutation group given by generators, with its full element list.
///
/// Elements are stored in canonical order (lexicographic by image sequence),
/// so index 0 is always the identity.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    transitive: bool,
    abelian: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GroupProperties {
    pub order: usize,
    pub is_transitive: bool,
    pub is_abelian: bool,
    pub is_regular: bool,
}

impl PermGroup {
    pub fn generate(generators: &[Permutation], degree: usize) -> Result<Self> {
        Self::generate_with_cap(generators, degree, DEFAULT_ELEMENT_CAP)
    }

    pub fn generate_with_cap(
        generators: &[Permutation],
        degree: usize,
        cap: usize,
    ) -> Result<Self> {
        if degree == 0 {
            return Err(Error::Precondition("group degree must be positive".into()));
        }
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }
        let identity = Permutation::identity(degree);
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        seen.insert(identity.clone(), ());
        let mut queue = VecDeque::from([identity]);
        while let Some(x) = queue.pop_front() {
            for g in generators {
                let y = g.compose(&x);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_keys().collect();
        elements.sort();
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let abelian = generators.iter().enumerate().all(|(i, a)| {
            generators[i + 1..]
                .iter()
                .all(|b| a.compose(b) == b.compose(a))
        });
        let mut group = PermGroup {
            degree,
            generators: generators.to_vec(),
            elements,
            index,
            transitive: false,
            abelian,
        };
        group.transitive = group.orbits().len() == 1;
        Ok(group)
    }

    pub fn trivial(degree: usize) -> Result<Self> {
        Self::generate(&[], degree)
    }

    /// The cyclic group generated by `(1 2 .. m)`.
    pub fn cyclic(degree: usize) -> Result<Self> {
        let images: Vec<usize> = (0..degree).map(|i| (i + 1) % degree + 1).collect();
        Self::generate(&[Permutation::from_images(&images)?], degree)
    }

    /// The full symmetric group on `{1, .., m}`.
    pub fn symmetric(degree: usize) -> Result<Self> {
        let mut gens = Vec::new();
        if degree >= 2 {
            let images: Vec<usize> = (0..degree).map(|i| (i + 1) % degree + 1).collect();
            gens.push(Permutation::from_images(&images)?);
            gens.push(Permutation::from_cycles(degree, &[vec![1, 2]])?);
        }
        Self::generate(&gens, degree)
    }

    /// Parses the group file format: a `group <m>` header followed by one
    /// generator per line in cycle notation. `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut degree = None;
        let mut gens = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line_no = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match degree {
                None => {
                    let mut tokens = line.split_whitespace();
                    if tokens.next() != Some("group") {
                        return Err(Error::parse(line_no, "expected header `group <m>`"));
                    }
                    let m = tokens
                        .next()
                        .and_then(|t| t.parse::<usize>().ok())
                        .filter(|&m| m > 0)
                        .ok_or_else(|| Error::parse(line_no, "invalid degree in header"))?;
                    if tokens.next().is_some() {
                        return Err(Error::parse(line_no, "trailing tokens in header"));
                    }
                    degree = Some(m);
                }
                Some(m) => {
                    let p =
                        Permutation::parse(line, m).map_err(|e| Error::from(e).at_line(line_no))?;
                    gens.push(p);
                }
            }
        }
        let m = degree.ok_or_else(|| Error::parse(1, "missing `group <m>` header"))?;
        Self::generate(&gens, m)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = format!("group {}\n", self.degree);
        for g in &self.generators {
            let _ = writeln!(out, "{g}");
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements in canonical order; the identity comes first.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_transitive(&self) -> bool {
        self.transitive
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    pub fn is_regular(&self) -> bool {
        self.transitive && self.order() == self.degree
    }

    pub fn properties(&self) -> GroupProperties {
        GroupProperties {
            order: self.order(),
            is_transitive: self.is_transitive(),
            is_abelian: self.is_abelian(),
            is_regular: self.is_regular(),
        }
    }

    /// Orbits on `{1, .., m}`, each sorted, ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut label = vec![usize::MAX; self.degree + 1];
        let mut orbits = Vec::new();
        for start in 1..=self.degree {
            if label[start] != usize::MAX {
                continue;
            }
            let id = orbits.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                k += 1;
                for g in &self.generators {
                    let y = g.apply(x);
                    if label[y] == usize::MAX {
                        label[y] = id;
                        orbit.push(y);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits
    }

    /// Every distinct commutator `[π, φ]`, paired with the first element pair
    /// (in canonical order) that produces it.
    pub fn commutators(&self) -> Vec<(Permutation, usize, usize)> {
        let mut seen: HashMap<Permutation, (usize, usize)> = HashMap::new();
        for (a, p) in self.elements.iter().enumerate() {
            for (b, q) in self.elements.iter().enumerate() {
                seen.entry(p.commutator(q)).or_insert((a, b));
            }
        }
        let mut out: Vec<_> = seen.into_iter().map(|(c, (a, b))| (c, a, b)).collect();
        out.sort();
        out
    }

    /// The subgroup generated by all commutators of element pairs.
    pub fn commutator_subgroup(&self) -> Result<PermGroup> {
        let gens: Vec<Permutation> = self
            .commutators()
            .into_iter()
            .map(|(c, _, _)| c)
            .filter(|c| !c.is_identity())
            .collect();
        PermGroup::generate(&gens, self.degree)
    }

    /// Orbits of the commutator subgroup, as a block system for this group.
    pub fn block_system(&self) -> Result<BlockSystem> {
        if !self.transitive {
            return Err(Error::NotTransitive);
        }
        let commutator = self.commutator_subgroup()?;
        Ok(BlockSystem::from_orbits(self.degree, commutator.orbits()))
    }

    pub fn abelianization(&self) -> Result<Abelianization> {
        Abelianization::new(self)
    }

    /// Lookup tables for a regular action. Abelian transitive groups are
    /// always regular.
    pub fn regular_action(&self) -> Result<RegularAction> {
        RegularAction::new(self)
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

/// The orbits of the commutator subgroup, labelled `1..=m'` in increasing
/// order of their least colour.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BlockSystem {
    degree: usize,
    blocks: Vec<Vec<usize>>,
    // indexed by colour - 1, holds 1-based labels
    label: Vec<usize>,
}

impl BlockSystem {
    fn from_orbits(degree: usize, mut blocks: Vec<Vec<usize>>) -> Self {
        blocks.sort_by_key(|b| b[0]);
        let mut label = vec![0; degree];
        for (k, block) in blocks.iter().enumerate() {
            for &c in block {
                label[c - 1] = k + 1;
            }
        }
        BlockSystem {
            degree,
            blocks,
            label,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of blocks, `m'`.
    pub fn count(&self) -> usize {
        self.blocks.len()
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// The 1-based label of the block containing `colour`.
    pub fn label(&self, colour: usize) -> usize {
        self.label[colour - 1]
    }

    /// Colours in block `label`, ascending.
    pub fn block(&self, label: usize) -> &[usize] {
        &self.blocks[label - 1]
    }

    pub fn same_block(&self, a: usize, b: usize) -> bool {
        self.label(a) == self.label(b)
    }
}

/// A shortest product of single commutators for every element of the
/// commutator subgroup.
#[derive(Debug, Clone)]
pub struct CommutatorWords {
    words: HashMap<Permutation, Vec<(Permutation, Permutation)>>,
    max_len: usize,
}

impl CommutatorWords {
    /// Breadth-first search over the Cayley graph of `[Γ,Γ]` whose generators
    /// are the single commutators of `group`.
    pub fn new(group: &PermGroup) -> Self {
        let singles: Vec<(Permutation, Permutation, Permutation)> = group
            .commutators()
            .into_iter()
            .filter(|(c, _, _)| !c.is_identity())
            .map(|(c, a, b)| (c, group.element(a).clone(), group.element(b).clone()))
            .collect();
        let identity = Permutation::identity(group.degree());
        let mut words = HashMap::new();
        words.insert(identity.clone(), Vec::new());
        let mut queue = VecDeque::from([identity]);
        let mut max_len = 0;
        while let Some(x) = queue.pop_front() {
            let word: Vec<(Permutation, Permutation)> = words[&x].clone();
            for (c, p, q) in &singles {
                let y = x.compose(c);
                if !words.contains_key(&y) {
                    let mut w = word.clone();
                    w.push((p.clone(), q.clone()));
                    max_len = max_len.max(w.len());
                    words.insert(y.clone(), w);
                    queue.push_back(y);
                }
            }
        }
        CommutatorWords { words, max_len }
    }

    /// Pairs `(π_1, φ_1), .., (π_k, φ_k)` with
    /// `τ = [π_1, φ_1] ∘ .. ∘ [π_k, φ_k]`, or `None` when `τ ∉ [Γ,Γ]`.
    pub fn word(&self, tau: &Permutation) -> Option<&[(Permutation, Permutation)]> {
        self.words.get(tau).map(Vec::as_slice)
    }

    /// The longest word needed for any element (`K`).
    pub fn max_len(&self) -> usize {
        self.max_len
    }

    /// Elements of the commutator subgroup in canonical order.
    pub fn elements(&self) -> Vec<&Permutation> {
        let mut v: Vec<&Permutation> = self.words.keys().collect();
        v.sort();
        v
    }

    /// Shortest-word element `τ` with `τ(from) = to`, ties broken by
    /// canonical order.
    pub fn transporter(&self, from: usize, to: usize) -> Option<&Permutation> {
        self.words
            .iter()
            .filter(|(t, _)| t.apply(from) == to)
            .min_by(|(t1, w1), (t2, w2)| w1.len().cmp(&w2.len()).then_with(|| t1.cmp(t2)))
            .map(|(t, _)| t)
    }
}

/// The Abelianization `Γ^ab` together with the block system and the
/// projection from `Γ`.
#[derive(Debug, Clone)]
pub struct Abelianization {
    group: PermGroup,
    commutator: PermGroup,
    blocks: BlockSystem,
    quotient: PermGroup,
    // Γ element index -> quotient element index
    projection: Vec<usize>,
    // quotient element index -> first Γ element index with that block action
    representatives: Vec<usize>,
    words: CommutatorWords,
}

impl Abelianization {
    pub fn new(group: &PermGroup) -> Result<Self> {
        if !group.is_transitive() {
            return Err(Error::NotTransitive);
        }
        let commutator = group.commutator_subgroup()?;
        let blocks = BlockSystem::from_orbits(group.degree(), commutator.orbits());
        let m_prime = blocks.count();

        let mut actions: Vec<Permutation> = Vec::with_capacity(group.order());
        for p in group.elements() {
            let mut images = Vec::with_capacity(m_prime);
            for block in blocks.blocks() {
                let target = blocks.label(p.apply(block[0]));
                if block.iter().any(|&c| blocks.label(p.apply(c)) != target) {
                    return Err(Error::Internal(format!(
                        "{p} does not map blocks onto blocks"
                    )));
                }
                images.push(target);
            }
            actions.push(Permutation::from_images(&images).map_err(|e| {
                Error::Internal(format!("induced block action is not a permutation: {e}"))
            })?);
        }

        let mut distinct = actions.clone();
        distinct.sort();
        distinct.dedup();
        let quotient = PermGroup::generate(&distinct, m_prime)?;
        if quotient.order() != distinct.len() {
            return Err(Error::Internal(
                "induced block actions are not closed under composition".into(),
            ));
        }
        if !quotient.is_abelian() || !quotient.is_transitive() {
            return Err(Error::Internal(
                "Abelianized group is not Abelian and transitive".into(),
            ));
        }
        let projection: Vec<usize> = actions
            .iter()
            .map(|a| quotient.index_of(a).expect("action lies in quotient"))
            .collect();
        let mut representatives = vec![usize::MAX; quotient.order()];
        for (g, &q) in projection.iter().enumerate() {
            if representatives[q] == usize::MAX {
                representatives[q] = g;
            }
        }
        let words = CommutatorWords::new(group);
        Ok(Abelianization {
            group: group.clone(),
            commutator,
            blocks,
            quotient,
            projection,
            representatives,
            words,
        })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn commutator(&self) -> &PermGroup {
        &self.commutator
    }

    pub fn blocks(&self) -> &BlockSystem {
        &self.blocks
    }

    /// `Γ^ab`, acting on the `m'` block labels.
    pub fn quotient(&self) -> &PermGroup {
        &self.quotient
    }

    pub fn project(&self, p: &Permutation) -> Option<&Permutation> {
        self.group
            .index_of(p)
            .map(|i| self.quotient.element(self.projection[i]))
    }

    pub fn project_index(&self, group_index: usize) -> usize {
        self.projection[group_index]
    }

    /// The first element of `Γ` (canonical order) projecting onto the
    /// quotient element with the given index.
    pub fn representative(&self, quotient_index: usize) -> &Permutation {
        self.group.element(self.representatives[quotient_index])
    }

    pub fn words(&self) -> &CommutatorWords {
        &self.words
    }
}

/// Multiplication and transporter tables for a regular permutation group.
#[derive(Debug, Clone)]
pub struct RegularAction {
    degree: usize,
    // transport[a][b]: index of the unique element sending colour a+1 to b+1
    transport: Vec<Vec<usize>>,
    mul: Vec<Vec<usize>>,
    inv: Vec<usize>,
    elements: Vec<Permutation>,
}

impl RegularAction {
    pub fn new(group: &PermGroup) -> Result<Self> {
        if !group.is_transitive() {
            return Err(Error::NotTransitive);
        }
        if !group.is_regular() {
            return Err(Error::NotAbelian);
        }
        let m = group.degree();
        let mut transport = vec![vec![usize::MAX; m]; m];
        for (k, p) in group.elements().iter().enumerate() {
            for a in 1..=m {
                transport[a - 1][p.apply(a) - 1] = k;
            }
        }
        let n = group.order();
        let mut mul = vec![vec![0; n]; n];
        let mut inv = vec![0; n];
        for (i, row) in mul.iter_mut().enumerate() {
            for (j, slot) in row.iter_mut().enumerate() {
                let c = group.element(i).compose(group.element(j));
                *slot = group.index_of(&c).expect("closed group");
            }
            inv[i] = group
                .index_of(&group.element(i).inverse())
                .expect("closed group");
        }
        Ok(RegularAction {
            degree: m,
            transport,
            mul,
            inv,
            elements: group.elements().to_vec(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    /// Index of the unique element sending colour `from` to colour `to`.
    pub fn transporter(&self, from: usize, to: usize) -> usize {
        self.transport[from - 1][to - 1]
    }

    pub fn compose(&self, a: usize, b: usize) -> usize {
        self.mul[a][b]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn apply(&self, element: usize, colour: usize) -> usize {
        self.elements[element].apply(colour)
    }

    pub fn element(&self, index: usize) -> &Permutation {
        &self.elements[index]
    }
}
