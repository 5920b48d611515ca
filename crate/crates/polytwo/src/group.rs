//! Automorphisms as flag permutations, explicit-element groups, orbits,
//! subgroup closure, and coset intersection tests.
//!
//! Composition is left-to-right: `a.compose(&b)` applies `a` first, matching
//! right-action bookkeeping on flags. Groups are stored as explicit ordered
//! element sets; a configurable cap (`POLYTWO_GROUP_CAP`, default 10^6) turns
//! runaway closures into a hard error instead of silent truncation.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::flags::FlagGraph;
use crate::poset::Rank;

/// A polytope automorphism, recorded by its action on flag indices.
///
/// The face action is recoverable through any flag graph built from the same
/// polytope; see [`FlagGraph::flag_containing`] and [`face_image`].
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Automorphism {
    perm: Vec<u32>,
}

impl Automorphism {
    pub fn identity(flag_count: usize) -> Self {
        Automorphism { perm: (0..flag_count as u32).collect() }
    }

    pub fn from_images(perm: Vec<u32>) -> Self {
        Automorphism { perm }
    }

    pub fn degree(&self) -> usize {
        self.perm.len()
    }

    pub fn act(&self, flag: usize) -> usize {
        self.perm[flag] as usize
    }

    /// `self` then `other` (the product `self * other` under right action).
    pub fn compose(&self, other: &Automorphism) -> Automorphism {
        Automorphism { perm: self.perm.iter().map(|&f| other.perm[f as usize]).collect() }
    }

    pub fn inverse(&self) -> Automorphism {
        let mut inv = vec![0u32; self.perm.len()];
        for (i, &f) in self.perm.iter().enumerate() {
            inv[f as usize] = i as u32;
        }
        Automorphism { perm: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &f)| i as u32 == f)
    }

    /// Multiplicative order.
    pub fn order(&self) -> usize {
        let mut cur = self.clone();
        let mut k = 1;
        while !cur.is_identity() {
            cur = cur.compose(self);
            k += 1;
        }
        k
    }
}

/// The image of a face under an automorphism, computed through a flag that
/// contains it. Improper faces are fixed by every automorphism.
pub fn face_image(g: &FlagGraph, a: &Automorphism, face: usize, bot: usize, top: usize) -> usize {
    if face == bot || face == top {
        return face;
    }
    let r = g.face_rank(face) as usize;
    let flag = g.flag_containing(face);
    g.flag(a.act(flag))[r]
}

/// A group of automorphisms held as an explicit, closed element set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    elements: BTreeSet<Automorphism>,
    generators: Vec<Automorphism>,
    base_flag: usize,
}

impl Group {
    pub fn trivial(flag_count: usize, base_flag: usize) -> Group {
        let mut elements = BTreeSet::new();
        elements.insert(Automorphism::identity(flag_count));
        Group { elements, generators: Vec::new(), base_flag }
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, a: &Automorphism) -> bool {
        self.elements.contains(a)
    }

    pub fn elements(&self) -> impl Iterator<Item = &Automorphism> {
        self.elements.iter()
    }

    pub fn element_set(&self) -> &BTreeSet<Automorphism> {
        &self.elements
    }

    pub fn generators(&self) -> &[Automorphism] {
        &self.generators
    }

    pub fn base_flag(&self) -> usize {
        self.base_flag
    }

    pub fn identity(&self) -> Automorphism {
        Automorphism::identity(self.elements.iter().next().map(|a| a.degree()).unwrap_or(0))
    }

    /// Set intersection as a subgroup (shared base flag).
    pub fn intersect(&self, other: &Group) -> Group {
        let elements: BTreeSet<Automorphism> =
            self.elements.intersection(&other.elements).cloned().collect();
        Group { generators: elements.iter().cloned().collect(), elements, base_flag: self.base_flag }
    }

    pub fn same_elements(&self, other: &Group) -> bool {
        self.elements == other.elements
    }
}

/// Element cap for explicit group storage; overridable per run.
pub fn group_cap() -> usize {
    std::env::var("POLYTWO_GROUP_CAP")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1_000_000)
}

/// Tries to extend `source |-> target` to a full automorphism of the flag
/// graph. The empty return means no automorphism takes `source` to `target`.
pub fn extend_flag_map(g: &FlagGraph, source: usize, target: usize) -> Option<Automorphism> {
    crate::flags::flag_map_between(g, source, g, target)
        .map(|image| Automorphism { perm: image.into_iter().map(|f| f as u32).collect() })
}

/// The full automorphism group, found by extending the base flag onto every
/// flag in turn. The action is free, so the order equals the number of
/// successful targets.
pub fn automorphism_group(g: &FlagGraph) -> Result<Group> {
    let cap = group_cap();
    let mut elements = BTreeSet::new();
    for target in 0..g.flag_count() {
        if let Some(a) = extend_flag_map(g, 0, target) {
            elements.insert(a);
            if elements.len() > cap {
                return Err(Error::GroupCapExceeded(cap));
            }
        }
    }
    if elements.is_empty() {
        elements.insert(Automorphism::identity(g.flag_count()));
    }
    let generators = elements.iter().cloned().collect();
    Ok(Group { elements, generators, base_flag: 0 })
}

/// Closure of `gens` inside `parent` under products and inverses.
pub fn generate_subgroup(parent: &Group, gens: &[Automorphism]) -> Result<Group> {
    for a in gens {
        if !parent.contains(a) {
            return Err(Error::NotInParent);
        }
    }
    let cap = group_cap();
    let id = parent.identity();
    let mut elements = BTreeSet::new();
    elements.insert(id.clone());
    let mut step: Vec<Automorphism> = gens.to_vec();
    for a in gens {
        step.push(a.inverse());
    }
    let mut queue: VecDeque<Automorphism> = VecDeque::new();
    queue.push_back(id);
    while let Some(cur) = queue.pop_front() {
        for s in &step {
            let next = cur.compose(s);
            if !elements.contains(&next) {
                if elements.len() + 1 > cap {
                    return Err(Error::GroupCapExceeded(cap));
                }
                elements.insert(next.clone());
                queue.push_back(next);
            }
        }
    }
    Ok(Group { elements, generators: gens.to_vec(), base_flag: parent.base_flag })
}

/// Orbit partition of `0..domain` under a set of permutation moves given by
/// `image(element, point)`. Orbits are sorted by least member.
fn orbit_partition<F>(domain: usize, moves: usize, image: F) -> Vec<Vec<usize>>
where
    F: Fn(usize, usize) -> usize,
{
    let mut seen = vec![false; domain];
    let mut orbits = Vec::new();
    for start in 0..domain {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for m in 0..moves {
                let y = image(m, x);
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                    queue.push_back(y);
                }
            }
        }
        orbit.sort_unstable();
        orbits.push(orbit);
    }
    orbits
}

/// Orbits of the group on flags.
pub fn flag_orbits(group: &Group, flag_count: usize) -> Vec<Vec<usize>> {
    let els: Vec<&Automorphism> = group.elements().collect();
    orbit_partition(flag_count, els.len(), |m, x| els[m].act(x))
}

/// Orbits of the group on the faces of rank `r` (improper ranks allowed).
pub fn face_orbits(
    group: &Group,
    g: &FlagGraph,
    p: &crate::poset::RankedPoset,
    r: Rank,
) -> Result<Vec<Vec<usize>>> {
    if r < -1 || r > p.rank() {
        return Err(Error::BadRank(r));
    }
    let range = p.rank_indices(r);
    let offset = range.start;
    let faces: Vec<usize> = range.collect();
    let els: Vec<&Automorphism> = group.elements().collect();
    let (bot, top) = (p.bot(), p.top());
    let orbits = orbit_partition(faces.len(), els.len(), |m, x| {
        face_image(g, els[m], faces[x], bot, top) - offset
    });
    Ok(orbits
        .into_iter()
        .map(|o| o.into_iter().map(|x| x + offset).collect())
        .collect())
}

/// Orbits of the group on the incident `(i-face, j-face)` pairs.
pub fn section_orbits(
    group: &Group,
    g: &FlagGraph,
    p: &crate::poset::RankedPoset,
    i: Rank,
    j: Rank,
) -> Result<Vec<Vec<(usize, usize)>>> {
    if i < -1 || j > p.rank() || i > j {
        return Err(Error::BadRank(if i < -1 { i } else { j }));
    }
    let mut pairs = Vec::new();
    for a in p.rank_indices(i) {
        for b in p.rank_indices(j) {
            if p.leq(a, b) {
                pairs.push((a, b));
            }
        }
    }
    let index: std::collections::HashMap<(usize, usize), usize> =
        pairs.iter().enumerate().map(|(k, &pr)| (pr, k)).collect();
    let els: Vec<&Automorphism> = group.elements().collect();
    let (bot, top) = (p.bot(), p.top());
    let orbits = orbit_partition(pairs.len(), els.len(), |m, x| {
        let (a, b) = pairs[x];
        index[&(face_image(g, els[m], a, bot, top), face_image(g, els[m], b, bot, top))]
    });
    Ok(orbits
        .into_iter()
        .map(|o| o.into_iter().map(|k| pairs[k]).collect())
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A coset of a subgroup, `rep * H` or `H * rep`.
#[derive(Debug, Clone)]
pub struct Coset<'a> {
    pub subgroup: &'a Group,
    pub rep: Automorphism,
    pub side: Side,
}

impl<'a> Coset<'a> {
    pub fn right(subgroup: &'a Group, rep: Automorphism) -> Self {
        Coset { subgroup, rep, side: Side::Right }
    }

    pub fn left(subgroup: &'a Group, rep: Automorphism) -> Self {
        Coset { subgroup, rep, side: Side::Left }
    }

    /// Exact membership: `x` is in `H * g` iff `x * g^-1` is in `H`.
    pub fn contains(&self, x: &Automorphism) -> bool {
        match self.side {
            Side::Right => self.subgroup.contains(&x.compose(&self.rep.inverse())),
            Side::Left => self.subgroup.contains(&self.rep.inverse().compose(x)),
        }
    }

    pub fn elements(&self) -> Vec<Automorphism> {
        self.subgroup
            .elements()
            .map(|h| match self.side {
                Side::Right => h.compose(&self.rep),
                Side::Left => self.rep.compose(h),
            })
            .collect()
    }

    /// Least element under the permutation order; a canonical name for the
    /// coset.
    pub fn canonical_rep(&self) -> Automorphism {
        self.elements().into_iter().min().expect("cosets are nonempty")
    }
}

/// Whether two cosets meet, by enumerating the smaller one.
pub fn coset_intersects(a: &Coset, b: &Coset) -> bool {
    let (small, large) = if a.subgroup.order() <= b.subgroup.order() { (a, b) } else { (b, a) };
    small.elements().iter().any(|x| large.contains(x))
}
