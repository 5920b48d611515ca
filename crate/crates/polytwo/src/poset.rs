//! Finite ranked posets with the abstract-polytope axioms.
//!
//! A poset of rank `n` holds faces of ranks `-1..=n`, with the two improper
//! faces stored explicitly under the reserved ids `BOT` and `TOP`. The order
//! is the transitive closure of the cover relation, which only connects
//! consecutive ranks. [`validate_polytope`] checks the four polytope axioms;
//! [`RankedPoset::section`] and [`dual`] derive new posets; [`is_isomorphic`]
//! decides rank- and order-preserving equivalence.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};

pub type Rank = i32;

pub const BOT_ID: &str = "BOT";
pub const TOP_ID: &str = "TOP";

/// A single face: a stable id plus its rank.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub id: String,
    pub rank: Rank,
}

/// A finite ranked poset, intended to satisfy the abstract-polytope axioms.
///
/// Faces are kept sorted by `(rank, id)`; that order fixes every canonical
/// choice made downstream (base flags, serializations, reports).
#[derive(Debug, Clone)]
pub struct RankedPoset {
    rank: Rank,
    faces: Vec<Face>,
    by_id: HashMap<String, usize>,
    covers: Vec<Vec<usize>>,
    covered_by: Vec<Vec<usize>>,
    rank_start: BTreeMap<Rank, (usize, usize)>,
    below: Vec<Vec<bool>>,
}

fn valid_id(id: &str) -> bool {
    !id.is_empty() && id.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl RankedPoset {
    /// Builds a poset of rank `n` from its proper faces.
    ///
    /// Each entry is `(rank, id, covered_ids)` where `covered_ids` lists the
    /// faces of rank one lower covered by this face; rank-0 faces list nothing
    /// (they cover the implicit least face). The improper faces are added
    /// automatically.
    pub fn new(rank: Rank, proper: Vec<(Rank, String, Vec<String>)>) -> Result<Self> {
        if rank < -1 {
            return Err(Error::MalformedInput(format!("rank {rank} below -1")));
        }
        let mut faces: Vec<Face> = Vec::new();
        faces.push(Face { id: BOT_ID.to_string(), rank: -1 });
        if rank >= 0 {
            faces.push(Face { id: TOP_ID.to_string(), rank });
        }
        for (r, id, _) in &proper {
            if *r < 0 || *r > rank - 1 {
                return Err(Error::MalformedInput(format!(
                    "face `{id}` has rank {r}, outside 0..={}",
                    rank - 1
                )));
            }
            if !valid_id(id) || id == BOT_ID || id == TOP_ID {
                return Err(Error::MalformedInput(format!("invalid face id `{id}`")));
            }
            faces.push(Face { id: id.clone(), rank: *r });
        }
        faces.sort();
        faces.sort_by(|a, b| (a.rank, &a.id).cmp(&(b.rank, &b.id)));
        let mut by_id = HashMap::new();
        for (idx, f) in faces.iter().enumerate() {
            if by_id.insert(f.id.clone(), idx).is_some() {
                return Err(Error::MalformedInput(format!("duplicate face id `{}`", f.id)));
            }
        }
        let mut covers: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
        for (r, id, below_ids) in &proper {
            let idx = by_id[id];
            if *r == 0 {
                if !below_ids.is_empty() {
                    return Err(Error::MalformedInput(format!(
                        "rank-0 face `{id}` must not list covered faces"
                    )));
                }
                covers[idx].push(by_id[BOT_ID]);
                continue;
            }
            for cid in below_ids {
                let cidx = *by_id.get(cid).ok_or_else(|| {
                    Error::MalformedInput(format!("face `{id}` covers unknown id `{cid}`"))
                })?;
                if faces[cidx].rank != r - 1 {
                    return Err(Error::MalformedInput(format!(
                        "face `{id}` (rank {r}) covers `{cid}` of rank {}",
                        faces[cidx].rank
                    )));
                }
                covers[idx].push(cidx);
            }
        }
        if rank >= 0 {
            let top = by_id[TOP_ID];
            if rank == 0 {
                covers[top].push(by_id[BOT_ID]);
            } else {
                for (idx, f) in faces.iter().enumerate() {
                    if f.rank == rank - 1 {
                        covers[top].push(idx);
                    }
                }
            }
        }
        for c in covers.iter_mut() {
            c.sort_unstable();
            c.dedup();
        }
        let mut covered_by: Vec<Vec<usize>> = vec![Vec::new(); faces.len()];
        for (idx, c) in covers.iter().enumerate() {
            for &d in c {
                covered_by[d].push(idx);
            }
        }
        for c in covered_by.iter_mut() {
            c.sort_unstable();
        }
        let mut rank_start = BTreeMap::new();
        let mut i = 0;
        while i < faces.len() {
            let r = faces[i].rank;
            let mut j = i;
            while j < faces.len() && faces[j].rank == r {
                j += 1;
            }
            rank_start.insert(r, (i, j));
            i = j;
        }
        // Reachability along covers, filled rank by rank.
        let m = faces.len();
        let mut below = vec![vec![false; m]; m];
        for a in 0..m {
            below[a][a] = true;
        }
        let mut order: Vec<usize> = (0..m).collect();
        order.sort_by_key(|&i| faces[i].rank);
        for &g in &order {
            let row = covers[g].clone();
            for f in row {
                for a in 0..m {
                    if below[a][f] {
                        below[a][g] = true;
                    }
                }
            }
        }
        Ok(RankedPoset { rank, faces, by_id, covers, covered_by, rank_start, below })
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face(&self, idx: usize) -> &Face {
        &self.faces[idx]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.by_id.get(id).copied()
    }

    pub fn bot(&self) -> usize {
        self.by_id[BOT_ID]
    }

    pub fn top(&self) -> usize {
        if self.rank == -1 {
            self.bot()
        } else {
            self.by_id[TOP_ID]
        }
    }

    /// Index range of the faces of rank `r`; faces are contiguous per rank
    /// and sorted by id within it.
    pub fn rank_indices(&self, r: Rank) -> std::ops::Range<usize> {
        match self.rank_start.get(&r) {
            Some(&(a, b)) => a..b,
            None => 0..0,
        }
    }

    pub fn covers(&self, idx: usize) -> &[usize] {
        &self.covers[idx]
    }

    pub fn covered_by(&self, idx: usize) -> &[usize] {
        &self.covered_by[idx]
    }

    /// Order test: `a <= b` in the transitive closure of covers.
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[a][b]
    }

    /// The faces `H` with `bottom <= H <= top`, re-ranked so that `bottom`
    /// becomes the least face. The extracted poset has rank
    /// `rank(top) - rank(bottom) - 1`.
    pub fn section(&self, bottom: usize, top: usize) -> Result<RankedPoset> {
        if !self.leq(bottom, top) {
            return Err(Error::NotComparable(
                self.faces[bottom].id.clone(),
                self.faces[top].id.clone(),
            ));
        }
        let shift = self.faces[bottom].rank + 1;
        let new_rank = self.faces[top].rank - shift;
        let mut proper = Vec::new();
        for (idx, f) in self.faces.iter().enumerate() {
            if idx == bottom || idx == top || !self.leq(bottom, idx) || !self.leq(idx, top) {
                continue;
            }
            let nr = f.rank - shift;
            let ids: Vec<String> = if nr == 0 {
                Vec::new()
            } else {
                self.covers[idx]
                    .iter()
                    .copied()
                    .filter(|&d| self.leq(bottom, d))
                    .map(|d| self.faces[d].id.clone())
                    .collect()
            };
            proper.push((nr, f.id.clone(), ids));
        }
        RankedPoset::new(new_rank, proper)
    }

    /// f-vector over proper ranks `0..=rank-1`.
    pub fn face_counts(&self) -> Vec<usize> {
        (0..self.rank)
            .map(|r| self.rank_indices(r).len())
            .collect()
    }
}

/// Outcome of checking the four abstract-polytope axioms.
#[derive(Debug, Clone, Serialize)]
pub struct ValidationReport {
    /// (P1) a unique least and a unique greatest face, comparable to all.
    pub unique_extremes: bool,
    /// (P2) every maximal chain runs through every rank.
    pub full_length_chains: bool,
    /// (P3) every rank-2 gap contains exactly two middle faces.
    pub diamond: bool,
    /// (P4) the flag graph of every section of rank >= 2 is connected.
    pub strongly_flag_connected: bool,
    /// Witnesses for P3 failures: `(lower id, upper id)` pairs.
    pub diamond_failures: Vec<(String, String)>,
    /// Witnesses for P4 failures: `(bottom id, top id)` of disconnected sections.
    pub disconnected_sections: Vec<(String, String)>,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.unique_extremes
            && self.full_length_chains
            && self.diamond
            && self.strongly_flag_connected
    }

    pub fn summary(&self) -> String {
        let mut fails = Vec::new();
        if !self.unique_extremes {
            fails.push("unique-extremes");
        }
        if !self.full_length_chains {
            fails.push("chain-length");
        }
        if !self.diamond {
            fails.push("diamond");
        }
        if !self.strongly_flag_connected {
            fails.push("flag-connectivity");
        }
        if fails.is_empty() {
            "all axioms pass".to_string()
        } else {
            format!("failing: {}", fails.join(", "))
        }
    }
}

/// All maximal chains from `bottom` to `top` that move one rank per step,
/// listed by their middle faces. For a valid polytope these are the flags of
/// the section.
fn cover_paths(p: &RankedPoset, bottom: usize, top: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn go(
        p: &RankedPoset,
        cur: usize,
        top: usize,
        stack: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if cur == top {
            out.push(stack.clone());
            return;
        }
        for &up in p.covered_by(cur) {
            if p.leq(up, top) {
                if up != top {
                    stack.push(up);
                }
                go(p, up, top, stack, out);
                if up != top {
                    stack.pop();
                }
            }
        }
    }
    go(p, bottom, top, &mut stack, &mut out);
    out
}

/// Checks the polytope axioms on `candidate` and reports each as pass/fail.
pub fn validate_polytope(candidate: &RankedPoset) -> ValidationReport {
    let p = candidate;
    let n = p.rank();

    // P1: unique extremes, and every face sits between them.
    let bot_count = p.rank_indices(-1).len();
    let top_count = if n == -1 { bot_count } else { p.rank_indices(n).len() };
    let mut unique_extremes = bot_count == 1 && top_count == 1;
    if unique_extremes {
        let (b, t) = (p.bot(), p.top());
        unique_extremes = (0..p.face_count()).all(|f| p.leq(b, f) && p.leq(f, t));
    }

    // P2: no maximal chain stops early, i.e. every face of rank >= 0 covers
    // something and every face of rank < n is covered by something.
    let mut full_length_chains = true;
    for idx in 0..p.face_count() {
        let r = p.face(idx).rank;
        if r >= 0 && p.covers(idx).is_empty() {
            full_length_chains = false;
        }
        if r < n && p.covered_by(idx).is_empty() {
            full_length_chains = false;
        }
    }

    // P3: count the cover paths of length two across each rank-2 gap.
    let mut gap_counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for g in 0..p.face_count() {
        for &h in p.covers(g) {
            for &f in p.covers(h) {
                *gap_counts.entry((f, g)).or_insert(0) += 1;
            }
        }
    }
    let mut diamond_failures = Vec::new();
    for (&(f, g), &c) in &gap_counts {
        if c != 2 {
            diamond_failures.push((p.face(f).id.clone(), p.face(g).id.clone()));
        }
    }
    let diamond = diamond_failures.is_empty();

    // P4: flag-graph connectivity of every section of rank >= 2, the whole
    // poset included. Adjacency here is "differs in exactly one face", which
    // stays meaningful even when the diamond condition fails.
    let mut disconnected_sections = Vec::new();
    if unique_extremes && full_length_chains {
        for b in 0..p.face_count() {
            for t in 0..p.face_count() {
                if !p.leq(b, t) || p.face(t).rank - p.face(b).rank - 1 < 2 {
                    continue;
                }
                let chains = cover_paths(p, b, t);
                if !chains_connected(&chains) {
                    disconnected_sections.push((p.face(b).id.clone(), p.face(t).id.clone()));
                }
            }
        }
    }
    let strongly_flag_connected =
        unique_extremes && full_length_chains && disconnected_sections.is_empty();

    ValidationReport {
        unique_extremes,
        full_length_chains,
        diamond,
        strongly_flag_connected,
        diamond_failures,
        disconnected_sections,
    }
}

fn chains_connected(chains: &[Vec<usize>]) -> bool {
    let m = chains.len();
    if m <= 1 {
        return true;
    }
    let mut parent: Vec<usize> = (0..m).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for i in 0..m {
        for j in i + 1..m {
            if chains[i].len() == chains[j].len() {
                let diff = chains[i]
                    .iter()
                    .zip(&chains[j])
                    .filter(|(a, b)| a != b)
                    .count();
                if diff == 1 {
                    let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                    parent[ri] = rj;
                }
            }
        }
    }
    let r0 = find(&mut parent, 0);
    (1..m).all(|i| find(&mut parent, i) == r0)
}

/// The order-reversed poset: rank `r` becomes `n - 1 - r`.
pub fn dual(p: &RankedPoset) -> RankedPoset {
    let n = p.rank();
    if n <= 0 {
        return p.clone();
    }
    let mut proper = Vec::new();
    for (idx, f) in p.faces().iter().enumerate() {
        if f.rank < 0 || f.rank >= n {
            continue;
        }
        let nr = n - 1 - f.rank;
        let ids: Vec<String> = if nr == 0 {
            Vec::new()
        } else {
            p.covered_by(idx)
                .iter()
                .map(|&u| {
                    let uf = p.face(u);
                    if uf.rank == n {
                        unreachable!("proper face of rank < n-1 covered by TOP")
                    }
                    uf.id.clone()
                })
                .collect()
        };
        proper.push((nr, f.id.clone(), ids));
    }
    RankedPoset::new(n, proper).expect("dual of a well-formed poset is well-formed")
}

/// Rank- and order-preserving equivalence, decided by fixing a base flag of
/// `a` and attempting a flag-map extension onto every flag of `b`.
pub fn is_isomorphic(a: &RankedPoset, b: &RankedPoset) -> bool {
    if a.rank() != b.rank() || a.face_counts() != b.face_counts() {
        return false;
    }
    let ga = crate::flags::build_flag_graph(a);
    let gb = crate::flags::build_flag_graph(b);
    if ga.flag_count() != gb.flag_count() {
        return false;
    }
    (0..gb.flag_count()).any(|t| crate::flags::flag_map_between(&ga, 0, &gb, t).is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn cube_passes_all_axioms() {
        let cube = catalog::cube(3).unwrap();
        let rep = validate_polytope(&cube);
        assert!(rep.unique_extremes);
        assert!(rep.full_length_chains);
        assert!(rep.diamond);
        assert!(rep.strongly_flag_connected);
    }

    #[test]
    fn cube_with_deleted_face_breaks_diamond_at_its_edges() {
        let cube = catalog::cube(3).unwrap();
        // Drop one 2-face and keep the rest as is.
        let victim = cube.rank_indices(2).start;
        let victim_id = cube.face(victim).id.clone();
        let victim_edges: Vec<String> = cube
            .covers(victim)
            .iter()
            .map(|&e| cube.face(e).id.clone())
            .collect();
        let proper: Vec<(Rank, String, Vec<String>)> = cube
            .faces()
            .iter()
            .enumerate()
            .filter(|(_, f)| f.rank >= 0 && f.rank < 3 && f.id != victim_id)
            .map(|(idx, f)| {
                (
                    f.rank,
                    f.id.clone(),
                    if f.rank == 0 {
                        Vec::new()
                    } else {
                        cube.covers(idx).iter().map(|&d| cube.face(d).id.clone()).collect()
                    },
                )
            })
            .collect();
        let broken = RankedPoset::new(3, proper).unwrap();
        let rep = validate_polytope(&broken);
        assert!(!rep.diamond);
        let failing: Vec<&String> = rep.diamond_failures.iter().map(|(f, _)| f).collect();
        for e in &victim_edges {
            assert!(failing.contains(&e), "edge {e} should fail the diamond check");
        }
        assert_eq!(rep.diamond_failures.len(), 4);
    }

    #[test]
    fn disjoint_squares_fail_flag_connectivity() {
        // Two 4-gons sharing only the improper faces.
        let mut proper = Vec::new();
        for s in ["a", "b"] {
            for i in 0..4u32 {
                proper.push((0, format!("{s}v{i}"), vec![]));
                proper.push((
                    1,
                    format!("{s}e{i}"),
                    vec![format!("{s}v{i}"), format!("{s}v{}", (i + 1) % 4)],
                ));
            }
        }
        let p = RankedPoset::new(2, proper).unwrap();
        let rep = validate_polytope(&p);
        assert!(rep.unique_extremes && rep.full_length_chains && rep.diamond);
        assert!(!rep.strongly_flag_connected);
    }

    #[test]
    fn sections_of_cube() {
        let cube = catalog::cube(3).unwrap();
        // A 2-face as a section over BOT is a 4-gon.
        let sq = cube.rank_indices(2).start;
        let s = cube.section(cube.bot(), sq).unwrap();
        assert_eq!(s.rank(), 2);
        assert!(is_isomorphic(&s, &catalog::polygon(4).unwrap()));
        // A vertex figure is a triangle.
        let v = cube.rank_indices(0).start;
        let vf = cube.section(v, cube.top()).unwrap();
        assert_eq!(vf.rank(), 2);
        assert_eq!(vf.face_counts(), vec![3, 3]);
        assert!(is_isomorphic(&vf, &catalog::polygon(3).unwrap()));
        // Degenerate: bottom == top.
        let d = cube.section(v, v).unwrap();
        assert_eq!(d.rank(), -1);
        assert_eq!(d.face_count(), 1);
    }

    #[test]
    fn section_not_comparable() {
        let cube = catalog::cube(3).unwrap();
        let v0 = cube.rank_indices(0).start;
        let v1 = v0 + 1;
        assert!(matches!(cube.section(v0, v1), Err(Error::NotComparable(_, _))));
    }

    #[test]
    fn dual_counts_and_involution() {
        let cube = catalog::cube(3).unwrap();
        let oct = dual(&cube);
        assert_eq!(oct.face_counts(), vec![6, 12, 8]);
        assert!(validate_polytope(&oct).all_pass());
        let cubocta = catalog::medial(&cube).unwrap();
        assert!(is_isomorphic(&dual(&dual(&cubocta)), &cubocta));
        let pent = catalog::polygon(5).unwrap();
        assert!(is_isomorphic(&dual(&pent), &pent));
    }

    #[test]
    fn isomorphism_examples() {
        let cube = catalog::cube(3).unwrap();
        assert!(!is_isomorphic(&cube, &catalog::simplex(3).unwrap()));
        assert!(is_isomorphic(&cube, &dual(&dual(&cube))));
        let m = catalog::medial(&cube).unwrap();
        let m2 = catalog::medial(&dual(&dual(&cube))).unwrap();
        assert!(is_isomorphic(&m, &m2));
    }

    #[test]
    fn malformed_inputs_are_rejected() {
        assert!(matches!(
            RankedPoset::new(1, vec![(0, "v".into(), vec!["nope".into()])]),
            Err(Error::MalformedInput(_))
        ));
        let r = RankedPoset::new(
            2,
            vec![
                (0, "v".into(), vec![]),
                (1, "e".into(), vec!["w".into()]),
            ],
        );
        assert!(matches!(r, Err(Error::MalformedInput(_))));
        let r = RankedPoset::new(2, vec![(0, "v".into(), vec![]), (0, "v".into(), vec![])]);
        assert!(matches!(r, Err(Error::MalformedInput(_))));
    }
}
