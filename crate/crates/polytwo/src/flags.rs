//! Flag enumeration and the edge-colored flag graph.
//!
//! A flag is written by its proper faces, one per rank `0..n-1`. The flag
//! graph carries one involutive adjacency map per rank; walking words of
//! ranks moves between flags. Flags are listed in canonical order
//! (lexicographic by id sequence), so flag index 0 is the canonical base flag.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::poset::{RankedPoset, Rank};

/// The flag graph of a validated polytope.
#[derive(Debug, Clone)]
pub struct FlagGraph {
    n: Rank,
    flags: Vec<Vec<usize>>,
    adjacency: Vec<Vec<usize>>,
    flag_with_face: HashMap<usize, usize>,
    face_rank: Vec<Rank>,
}

/// Enumerates all flags of `p` and the `n` adjacency involutions.
///
/// Requires `p` to pass [`crate::poset::validate_polytope`]; adjacency is not
/// total otherwise.
pub fn build_flag_graph(p: &RankedPoset) -> FlagGraph {
    let n = p.rank();
    let mut flags: Vec<Vec<usize>> = Vec::new();
    if n <= 0 {
        flags.push(Vec::new());
    } else {
        let mut stack = Vec::new();
        collect_flags(p, p.bot(), n, &mut stack, &mut flags);
        flags.sort_by(|a, b| {
            let ka: Vec<&str> = a.iter().map(|&f| p.face(f).id.as_str()).collect();
            let kb: Vec<&str> = b.iter().map(|&f| p.face(f).id.as_str()).collect();
            ka.cmp(&kb)
        });
    }
    let index: HashMap<Vec<usize>, usize> =
        flags.iter().enumerate().map(|(i, f)| (f.clone(), i)).collect();

    let colors = if n > 0 { n as usize } else { 0 };
    let mut adjacency = vec![vec![0usize; flags.len()]; colors];
    for (fi, flag) in flags.iter().enumerate() {
        for i in 0..colors {
            let lower = if i == 0 { p.bot() } else { flag[i - 1] };
            let upper = if i + 1 == colors { p.top() } else { flag[i + 1] };
            // The diamond condition gives exactly one other middle face.
            let other = p
                .covered_by(lower)
                .iter()
                .copied()
                .find(|&h| h != flag[i] && p.leq(h, upper))
                .expect("diamond condition: a second middle face exists");
            let mut adj = flag.clone();
            adj[i] = other;
            adjacency[i][fi] = index[&adj];
        }
    }

    let mut flag_with_face = HashMap::new();
    for (fi, flag) in flags.iter().enumerate() {
        for &f in flag {
            flag_with_face.entry(f).or_insert(fi);
        }
    }
    let face_rank = p.faces().iter().map(|f| f.rank).collect();
    FlagGraph { n, flags, adjacency, flag_with_face, face_rank }
}

fn collect_flags(
    p: &RankedPoset,
    cur: usize,
    n: Rank,
    stack: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if p.face(cur).rank == n - 1 {
        out.push(stack.clone().into_iter().chain([cur]).collect::<Vec<_>>()[1..].to_vec());
        return;
    }
    stack.push(cur);
    for &up in p.covered_by(cur) {
        collect_flags(p, up, n, stack, out);
    }
    stack.pop();
}

impl FlagGraph {
    pub fn rank(&self) -> Rank {
        self.n
    }

    pub fn flag_count(&self) -> usize {
        self.flags.len()
    }

    /// Proper face indices of a flag, by rank `0..n-1`.
    pub fn flag(&self, idx: usize) -> &[usize] {
        &self.flags[idx]
    }

    /// Number of adjacency colors (the rank, clamped at 0).
    pub fn colors(&self) -> usize {
        self.adjacency.len()
    }

    /// The i-adjacent flag.
    pub fn adjacent(&self, flag: usize, i: usize) -> usize {
        self.adjacency[i][flag]
    }

    /// Some flag containing the given proper face.
    pub fn flag_containing(&self, face: usize) -> usize {
        self.flag_with_face[&face]
    }

    pub fn face_rank(&self, face: usize) -> Rank {
        self.face_rank[face]
    }

    /// Walks `word` from `start` through successive adjacencies.
    pub fn apply_word(&self, start: usize, word: &[usize]) -> Result<usize> {
        let mut cur = start;
        for &i in word {
            if i >= self.colors() {
                return Err(Error::BadLetter(i, self.colors()));
            }
            cur = self.adjacency[i][cur];
        }
        Ok(cur)
    }

    /// Shortest word over ranks outside `forbidden` taking `from` to `to`,
    /// found by breadth-first search with letters tried in ascending order.
    pub fn connecting_word(
        &self,
        from: usize,
        to: usize,
        forbidden: &BTreeSet<usize>,
    ) -> Result<Vec<usize>> {
        if from == to {
            return Ok(Vec::new());
        }
        let mut prev: Vec<Option<(usize, usize)>> = vec![None; self.flag_count()];
        let mut seen = vec![false; self.flag_count()];
        seen[from] = true;
        let mut queue = VecDeque::new();
        queue.push_back(from);
        while let Some(u) = queue.pop_front() {
            for i in 0..self.colors() {
                if forbidden.contains(&i) {
                    continue;
                }
                let v = self.adjacency[i][u];
                if !seen[v] {
                    seen[v] = true;
                    prev[v] = Some((u, i));
                    if v == to {
                        let mut word = Vec::new();
                        let mut cur = to;
                        while let Some((u, i)) = prev[cur] {
                            word.push(i);
                            cur = u;
                        }
                        word.reverse();
                        return Ok(word);
                    }
                    queue.push_back(v);
                }
            }
        }
        Err(Error::NoPath)
    }

    /// Edge-colored adjacency lists, one line per flag:
    /// `<index> : <adj_0> <adj_1> ... <adj_{n-1}>`.
    pub fn adjacency_lines(&self) -> String {
        let mut out = String::new();
        for f in 0..self.flag_count() {
            let row: Vec<String> =
                (0..self.colors()).map(|i| self.adjacency[i][f].to_string()).collect();
            let _ = writeln!(out, "{} : {}", f, row.join(" "));
        }
        out
    }
}

/// Extends `source |-> target` across two flag graphs into a full flag map,
/// propagating images along adjacencies. Returns the image vector iff the
/// assignment is single-valued, total, and bijective.
pub fn flag_map_between(
    ga: &FlagGraph,
    source: usize,
    gb: &FlagGraph,
    target: usize,
) -> Option<Vec<usize>> {
    if ga.colors() != gb.colors() || ga.flag_count() != gb.flag_count() {
        return None;
    }
    let count = ga.flag_count();
    let mut map: Vec<Option<usize>> = vec![None; count];
    map[source] = Some(target);
    let mut queue = VecDeque::new();
    queue.push_back(source);
    while let Some(u) = queue.pop_front() {
        let mu = map[u].unwrap();
        for i in 0..ga.colors() {
            let v = ga.adjacent(u, i);
            let mv = gb.adjacent(mu, i);
            match map[v] {
                None => {
                    map[v] = Some(mv);
                    queue.push_back(v);
                }
                Some(existing) if existing != mv => return None,
                _ => {}
            }
        }
    }
    if map.iter().any(|m| m.is_none()) {
        return None;
    }
    let image: Vec<usize> = map.into_iter().map(Option::unwrap).collect();
    let mut hit = vec![false; count];
    for &t in &image {
        if hit[t] {
            return None;
        }
        hit[t] = true;
    }
    Some(image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    #[test]
    fn flag_counts() {
        let cube = catalog::cube(3).unwrap();
        assert_eq!(build_flag_graph(&cube).flag_count(), 48);
        let cubocta = catalog::medial(&cube).unwrap();
        assert_eq!(build_flag_graph(&cubocta).flag_count(), 96);
        for p in [3usize, 5, 7] {
            let poly = catalog::polygon(p as u32).unwrap();
            assert_eq!(build_flag_graph(&poly).flag_count(), 2 * p);
        }
    }

    #[test]
    fn words_involution_and_commutation() {
        let cube = catalog::cube(3).unwrap();
        let g = build_flag_graph(&cube);
        for f in 0..g.flag_count() {
            for i in 0..3 {
                assert_eq!(g.apply_word(f, &[i, i]).unwrap(), f);
                assert_ne!(g.adjacent(f, i), f, "adjacency must be fixed-point-free");
            }
            assert_eq!(g.apply_word(f, &[0, 2]).unwrap(), g.apply_word(f, &[2, 0]).unwrap());
        }
        assert!(matches!(g.apply_word(0, &[3]), Err(Error::BadLetter(3, 3))));
    }

    #[test]
    fn base_square_walk() {
        // Walking 0,1,0 from the base flag stays inside the base 2-face and
        // moves two steps around it: same 2-face, different vertex and edge.
        let cube = catalog::cube(3).unwrap();
        let g = build_flag_graph(&cube);
        let end = g.apply_word(0, &[0, 1, 0]).unwrap();
        let (start_flag, end_flag) = (g.flag(0), g.flag(end));
        assert_eq!(start_flag[2], end_flag[2]);
        assert_ne!(start_flag[0], end_flag[0]);
        assert_ne!(start_flag[1], end_flag[1]);
        // Independent trace through the poset: vertex flip, edge flip at the
        // new vertex, vertex flip again, inside the base square.
        let sq = start_flag[2];
        let e0 = start_flag[1];
        let v0 = start_flag[0];
        let v1 = *cube.covers(e0).iter().find(|&&v| v != v0).unwrap();
        let e1 = *cube
            .covered_by(v1)
            .iter()
            .find(|&&e| e != e0 && cube.leq(e, sq))
            .unwrap();
        let v2 = *cube.covers(e1).iter().find(|&&v| v != v1).unwrap();
        assert_eq!(end_flag, &[v2, e1, sq]);
    }

    #[test]
    fn connecting_words() {
        let cube = catalog::cube(3).unwrap();
        let g = build_flag_graph(&cube);
        assert!(g.connecting_word(5, 5, &BTreeSet::new()).unwrap().is_empty());
        let adj = g.adjacent(0, 0);
        assert_eq!(g.connecting_word(0, adj, &BTreeSet::new()).unwrap(), vec![0]);

        let cubocta = catalog::medial(&cube).unwrap();
        let gm = build_flag_graph(&cubocta);
        // Two flags sharing the base vertex, connected while avoiding rank 0.
        let from = 0;
        let to = gm.apply_word(0, &[1, 2, 1]).unwrap();
        assert_eq!(gm.flag(from)[0], gm.flag(to)[0]);
        let forbidden: BTreeSet<usize> = [0].into_iter().collect();
        let w = gm.connecting_word(from, to, &forbidden).unwrap();
        assert!(w.iter().all(|&i| i != 0));
        assert_eq!(gm.apply_word(from, &w).unwrap(), to);
    }

    #[test]
    fn no_path_when_restricted() {
        let cube = catalog::cube(3).unwrap();
        let g = build_flag_graph(&cube);
        let to = g.adjacent(0, 0);
        let forbidden: BTreeSet<usize> = [0].into_iter().collect();
        assert!(matches!(g.connecting_word(0, to, &forbidden), Err(Error::NoPath)));
    }
}
