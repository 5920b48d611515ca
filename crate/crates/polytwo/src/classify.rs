//! Symmetry classification: flag-orbit count, class type set, reflection
//! deficiency, chirality, double Schläfli symbols, and the transitivity
//! batteries for two-orbit polytopes.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::flags::FlagGraph;
use crate::group::{face_orbits, section_orbits};
use crate::poset::{RankedPoset, Rank};

/// Two-row Schläfli symbol; the top row is aligned with the orbit of the
/// canonical base flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DoubleSchlafli {
    pub top: Vec<u32>,
    pub bottom: Vec<u32>,
}

impl DoubleSchlafli {
    pub fn equal_rows(&self) -> bool {
        self.top == self.bottom
    }

    /// Class-invariant form: lexicographically smaller row on top.
    pub fn canonical(&self) -> (Vec<u32>, Vec<u32>) {
        if self.top <= self.bottom {
            (self.top.clone(), self.bottom.clone())
        } else {
            (self.bottom.clone(), self.top.clone())
        }
    }
}

/// Symmetry class summary of a polytope with any number of flag orbits.
/// Class fields are populated only when the orbit count is at most two.
#[derive(Debug, Clone, Serialize)]
pub struct ClassProfile {
    pub orbit_count: usize,
    pub class_type_set: Option<BTreeSet<usize>>,
    pub reflection_deficiency: Option<usize>,
    pub chirality: bool,
    pub symbol: Option<DoubleSchlafli>,
}

/// Number of rank-i faces in the 2-section of `flag` at level `i`
/// (between its faces of ranks i-2 and i+1).
fn two_section_size(p: &RankedPoset, g: &FlagGraph, flag: usize, i: usize) -> u32 {
    let chain = g.flag(flag);
    let n = g.colors();
    let lower = if i >= 2 { chain[i - 2] } else { p.bot() };
    let upper = if i + 1 < n { chain[i + 1] } else { p.top() };
    p.rank_indices(i as Rank)
        .filter(|&h| p.leq(lower, h) && p.leq(h, upper))
        .count() as u32
}

fn symbol_row(p: &RankedPoset, g: &FlagGraph, flag: usize) -> Vec<u32> {
    (1..g.colors()).map(|i| two_section_size(p, g, flag, i)).collect()
}

/// Computes the class profile from the flag-orbit partition.
pub fn profile(
    p: &RankedPoset,
    g: &FlagGraph,
    flag_orbit: &[usize],
    orbit_count: usize,
) -> ClassProfile {
    let n = g.colors();
    if orbit_count > 2 {
        return ClassProfile {
            orbit_count,
            class_type_set: None,
            reflection_deficiency: None,
            chirality: false,
            symbol: None,
        };
    }
    let base = 0usize;
    let class: BTreeSet<usize> =
        (0..n).filter(|&i| flag_orbit[g.adjacent(base, i)] == flag_orbit[base]).collect();
    let rd = n - class.len();
    let chirality = orbit_count == 2 && class.is_empty();
    let top = symbol_row(p, g, base);
    let bottom = if orbit_count == 2 {
        let other = (0..g.flag_count())
            .find(|&f| flag_orbit[f] != flag_orbit[base])
            .expect("two orbits imply a flag outside the base orbit");
        symbol_row(p, g, other)
    } else {
        top.clone()
    };
    ClassProfile {
        orbit_count,
        class_type_set: Some(class),
        reflection_deficiency: Some(rd),
        chirality,
        symbol: Some(DoubleSchlafli { top, bottom }),
    }
}

/// Classifies a poset from scratch. Orbit counts above two yield a degraded
/// profile rather than an error.
pub fn classify(p: &RankedPoset) -> Result<ClassProfile> {
    Ok(Analysis::new(p.clone())?.profile)
}

/// The double Schläfli symbol of a polytope with at most two flag orbits.
pub fn double_schlafli(p: &RankedPoset) -> Result<DoubleSchlafli> {
    let an = Analysis::new(p.clone())?;
    an.profile.symbol.ok_or(Error::NotTwoOrbit(an.orbit_count))
}

/// Per-rank face-orbit counts plus the transitivity-theorem verdict.
#[derive(Debug, Clone, Serialize)]
pub struct FaceTransitivityReport {
    pub face_orbit_counts: Vec<usize>,
    /// Ranks where two orbits are expected (empty unless the class complement
    /// is a single rank).
    pub doubled_ranks: Vec<usize>,
    pub representatives_split: bool,
    pub pass: bool,
}

/// Checks the face-transitivity pattern of a two-orbit polytope: fully
/// transitive when the reflection deficiency exceeds one, otherwise two
/// orbits exactly at the missing rank, represented by the faces of any pair
/// of adjacent flags at that rank.
pub fn face_transitivity_report(an: &Analysis) -> Result<FaceTransitivityReport> {
    if an.orbit_count != 2 {
        return Err(Error::NotTwoOrbit(an.orbit_count));
    }
    let n = an.levels();
    let comp = an.class_complement().expect("two orbits define a class");
    let mut counts = Vec::new();
    for r in 0..n {
        counts.push(face_orbits(&an.group, &an.graph, &an.poset, r as Rank)?.len());
    }
    let (expected, doubled): (Vec<usize>, Vec<usize>) = if comp.len() > 1 {
        (vec![1; n], Vec::new())
    } else {
        let j = comp[0];
        ((0..n).map(|i| if i == j { 2 } else { 1 }).collect(), vec![j])
    };
    let mut representatives_split = true;
    if comp.len() == 1 {
        let j = comp[0];
        let base = an.base_flag();
        let adj = an.graph.adjacent(base, j);
        let f1 = an.graph.flag(base)[j];
        let f2 = an.graph.flag(adj)[j];
        let orbits = face_orbits(&an.group, &an.graph, &an.poset, j as Rank)?;
        let o1 = orbits.iter().position(|o| o.contains(&f1));
        let o2 = orbits.iter().position(|o| o.contains(&f2));
        representatives_split = o1 != o2;
    }
    let pass = counts == expected && representatives_split;
    Ok(FaceTransitivityReport {
        face_orbit_counts: counts,
        doubled_ranks: doubled,
        representatives_split,
        pass,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionOrbitReport {
    pub i: Rank,
    pub j: Rank,
    pub orbit_count: usize,
    pub expected: usize,
    pub representatives_split: bool,
    pub pass: bool,
}

/// Orbit count on the incident (i-face, j-face) pairs, checked against the
/// two-orbit section theorem: one orbit unless the class complement sits
/// inside `{i, j}`, in which case exactly two, split by any adjacent flag
/// pair at a missing rank.
pub fn section_orbit_report(an: &Analysis, i: Rank, j: Rank) -> Result<SectionOrbitReport> {
    if an.orbit_count != 2 {
        return Err(Error::NotTwoOrbit(an.orbit_count));
    }
    let n = an.poset.rank();
    if i < -1 || j > n || i > j {
        return Err(Error::BadRank(if i < -1 { i } else { j }));
    }
    let comp = an.class_complement().expect("two orbits define a class");
    let inside = comp.iter().all(|&k| (k as Rank) == i || (k as Rank) == j);
    let expected = if inside { 2 } else { 1 };
    let orbits = section_orbits(&an.group, &an.graph, &an.poset, i, j)?;
    let mut representatives_split = true;
    if inside {
        let k = comp[0];
        let base = an.base_flag();
        let adj = an.graph.adjacent(base, k);
        let pair_of = |flag: usize| -> (usize, usize) {
            let chain = an.graph.flag(flag);
            let a = if i == -1 { an.poset.bot() } else { chain[i as usize] };
            let b = if j == n { an.poset.top() } else { chain[j as usize] };
            (a, b)
        };
        let pa = pair_of(base);
        let pb = pair_of(adj);
        let oa = orbits.iter().position(|o| o.contains(&pa));
        let ob = orbits.iter().position(|o| o.contains(&pb));
        representatives_split = oa != ob;
    }
    let pass = orbits.len() == expected && representatives_split;
    Ok(SectionOrbitReport { i, j, orbit_count: orbits.len(), expected, representatives_split, pass })
}

#[derive(Debug, Clone, Serialize)]
pub struct SectionClassReport {
    pub sections_checked: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Classifies every section and checks the prediction: each is regular or a
/// two-orbit polytope whose class type set is the visible part of the parent
/// class, shifted to the section's own rank scale.
pub fn section_class_check(an: &Analysis) -> Result<SectionClassReport> {
    if an.orbit_count != 2 {
        return Err(Error::NotTwoOrbit(an.orbit_count));
    }
    let p = &an.poset;
    let n = p.rank();
    let class = an.class_set().expect("two orbits define a class");
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for r in -1..=n {
        for s in r..=n {
            let expected_class: BTreeSet<usize> = class
                .iter()
                .copied()
                .filter(|&i| (i as Rank) > r && (i as Rank) < s)
                .map(|i| (i as Rank - (r + 1)) as usize)
                .collect();
            for a in p.rank_indices(r) {
                for b in p.rank_indices(s) {
                    if !p.leq(a, b) {
                        continue;
                    }
                    checked += 1;
                    let q = p.section(a, b)?;
                    if q.rank() <= 1 {
                        continue; // degenerate sections are trivially regular
                    }
                    let sub = Analysis::new(q)?;
                    match sub.orbit_count {
                        1 => {}
                        2 => {
                            let got: BTreeSet<usize> =
                                sub.class_set().unwrap().into_iter().collect();
                            if got != expected_class {
                                failures.push(format!(
                                    "section {}/{} has class {:?}, expected {:?}",
                                    p.face(b).id,
                                    p.face(a).id,
                                    got,
                                    expected_class
                                ));
                            }
                        }
                        k => failures.push(format!(
                            "section {}/{} has {k} flag orbits",
                            p.face(b).id,
                            p.face(a).id
                        )),
                    }
                }
            }
        }
    }
    Ok(SectionClassReport { sections_checked: checked, pass: failures.is_empty(), failures })
}

/// True iff every flag containing the chain lies in one flag orbit.
pub fn chain_orbit_check(an: &Analysis, chain: &[usize]) -> Result<bool> {
    let p = &an.poset;
    for (k, &a) in chain.iter().enumerate() {
        for &b in &chain[k + 1..] {
            if !p.leq(a, b) && !p.leq(b, a) {
                return Err(Error::NotAChain(p.face(a).id.clone(), p.face(b).id.clone()));
            }
        }
    }
    let proper: Vec<usize> = chain
        .iter()
        .copied()
        .filter(|&f| {
            let r = p.face(f).rank;
            r >= 0 && r < p.rank()
        })
        .collect();
    let mut orbit_seen: Option<usize> = None;
    for f in 0..an.graph.flag_count() {
        let fl = an.graph.flag(f);
        if proper.iter().all(|&c| fl.contains(&c)) {
            match orbit_seen {
                None => orbit_seen = Some(an.flag_orbit[f]),
                Some(o) if o != an.flag_orbit[f] => return Ok(false),
                _ => {}
            }
        }
    }
    Ok(true)
}

/// All chains of proper faces (the empty chain included).
pub fn all_chains(p: &RankedPoset) -> Vec<Vec<usize>> {
    let proper: Vec<usize> = (0..p.face_count())
        .filter(|&f| p.face(f).rank >= 0 && p.face(f).rank < p.rank())
        .collect();
    let mut out = vec![Vec::new()];
    fn extend(
        p: &RankedPoset,
        proper: &[usize],
        last: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        out.push(cur.clone());
        for &next in proper {
            if p.face(next).rank > p.face(last).rank && p.leq(last, next) {
                cur.push(next);
                extend(p, proper, next, cur, out);
                cur.pop();
            }
        }
    }
    for &start in &proper {
        let mut cur = vec![start];
        extend(p, &proper, start, &mut cur, &mut out);
    }
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct ClassifierSuiteReport {
    pub orbit_count: usize,
    pub class_well_defined: bool,
    pub parity_pass: bool,
    pub parity_instances: usize,
    pub equivelar_consistent: bool,
    pub face_transitivity: Option<FaceTransitivityReport>,
    pub section_orbit_pairs: usize,
    pub section_orbit_pass: bool,
    pub section_classes: Option<SectionClassReport>,
    pub chain_lemma_cases: usize,
    pub chain_lemma_pass: bool,
    pub pass: bool,
}

/// Runs the full classification battery on one polytope.
pub fn classifier_suite(an: &Analysis) -> Result<ClassifierSuiteReport> {
    let n = an.levels();
    // Well-definedness: per rank, "same orbit as its i-adjacent flag" is a
    // constant predicate over all flags.
    let mut class_well_defined = true;
    for i in 0..n {
        let first = an.flag_orbit[an.graph.adjacent(0, i)] == an.flag_orbit[0];
        for f in 1..an.graph.flag_count() {
            let here = an.flag_orbit[an.graph.adjacent(f, i)] == an.flag_orbit[f];
            if here != first {
                class_well_defined = false;
            }
        }
    }

    // Parity: a symbol entry spanning one rank inside and one outside the
    // class type set must be even; both rows are constrained.
    let mut parity_pass = true;
    let mut parity_instances = 0usize;
    if an.orbit_count <= 2 {
        let class = an.class_set().unwrap_or_default();
        if let Some(symbol) = &an.profile.symbol {
            for l in 1..n {
                let mixed = class.contains(&(l - 1)) != class.contains(&l);
                if mixed {
                    parity_instances += 1;
                    if symbol.top[l - 1] % 2 != 0 || symbol.bottom[l - 1] % 2 != 0 {
                        parity_pass = false;
                    }
                }
            }
        }
    }

    // Equivelar iff the two symbol rows agree, cross-checked against direct
    // 2-section counts over every flag.
    let mut equivelar_consistent = true;
    if let Some(symbol) = &an.profile.symbol {
        let mut all_agree = true;
        for i in 1..n {
            let first = two_section_size(&an.poset, &an.graph, 0, i);
            for f in 1..an.graph.flag_count() {
                if two_section_size(&an.poset, &an.graph, f, i) != first {
                    all_agree = false;
                }
            }
        }
        equivelar_consistent = all_agree == symbol.equal_rows();
    }

    let two_orbit = an.orbit_count == 2;
    let face_transitivity = if two_orbit { Some(face_transitivity_report(an)?) } else { None };

    let mut section_orbit_pairs = 0usize;
    let mut section_orbit_pass = true;
    if two_orbit {
        for i in -1..=an.poset.rank() {
            for j in i..=an.poset.rank() {
                let rep = section_orbit_report(an, i, j)?;
                section_orbit_pairs += 1;
                if !rep.pass {
                    section_orbit_pass = false;
                }
            }
        }
    }

    let section_classes = if two_orbit { Some(section_class_check(an)?) } else { None };

    let mut chain_lemma_cases = 0usize;
    let mut chain_lemma_pass = true;
    if two_orbit {
        let comp = an.class_complement().unwrap();
        for chain in all_chains(&an.poset) {
            let ranks: BTreeSet<usize> =
                chain.iter().map(|&f| an.poset.face(f).rank as usize).collect();
            if comp.iter().all(|r| ranks.contains(r)) {
                chain_lemma_cases += 1;
                if !chain_orbit_check(an, &chain)? {
                    chain_lemma_pass = false;
                }
            }
        }
    }

    let pass = class_well_defined
        && parity_pass
        && equivelar_consistent
        && face_transitivity.as_ref().map(|r| r.pass).unwrap_or(true)
        && section_orbit_pass
        && section_classes.as_ref().map(|r| r.pass).unwrap_or(true)
        && chain_lemma_pass;
    Ok(ClassifierSuiteReport {
        orbit_count: an.orbit_count,
        class_well_defined,
        parity_pass,
        parity_instances,
        equivelar_consistent,
        face_transitivity,
        section_orbit_pairs,
        section_orbit_pass,
        section_classes,
        chain_lemma_cases,
        chain_lemma_pass,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn analyze(p: RankedPoset) -> Analysis {
        Analysis::new(p).unwrap()
    }

    #[test]
    fn classify_named_examples() {
        let cube = analyze(catalog::cube(3).unwrap());
        assert_eq!(cube.orbit_count, 1);
        assert_eq!(cube.class_set().unwrap(), vec![0, 1, 2]);
        assert_eq!(cube.profile.reflection_deficiency, Some(0));
        let sym = cube.profile.symbol.clone().unwrap();
        assert_eq!(sym.top, vec![4, 3]);
        assert!(sym.equal_rows());

        let cubocta = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        assert_eq!(cubocta.orbit_count, 2);
        assert_eq!(cubocta.class_set().unwrap(), vec![0, 1]);
        assert_eq!(cubocta.profile.reflection_deficiency, Some(1));
        assert!(!cubocta.profile.chirality);
        let sym = cubocta.profile.symbol.clone().unwrap();
        assert_eq!(sym.canonical(), (vec![3, 4], vec![4, 4]));

        let torus = analyze(catalog::torus_44(2, 1).unwrap());
        assert_eq!(torus.orbit_count, 2);
        assert_eq!(torus.class_set().unwrap(), Vec::<usize>::new());
        assert!(torus.profile.chirality);
    }

    #[test]
    fn rhombic_symbols() {
        let rd = analyze(crate::poset::dual(
            &catalog::medial(&catalog::cube(3).unwrap()).unwrap(),
        ));
        let sym = rd.profile.symbol.clone().unwrap();
        assert_eq!(sym.canonical(), (vec![4, 3], vec![4, 4]));
        assert_eq!(rd.class_set().unwrap(), vec![1, 2]);
    }

    #[test]
    fn face_transitivity_examples() {
        let cubocta = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        let rep = face_transitivity_report(&cubocta).unwrap();
        assert_eq!(rep.face_orbit_counts, vec![1, 1, 2]);
        assert!(rep.pass);

        let rhombic = analyze(crate::poset::dual(
            &catalog::medial(&catalog::cube(3).unwrap()).unwrap(),
        ));
        let rep = face_transitivity_report(&rhombic).unwrap();
        assert_eq!(rep.face_orbit_counts, vec![2, 1, 1]);
        assert!(rep.pass);

        let torus = analyze(catalog::torus_44(2, 1).unwrap());
        let rep = face_transitivity_report(&torus).unwrap();
        assert_eq!(rep.face_orbit_counts, vec![1, 1, 1]);
        assert!(rep.pass);
    }

    #[test]
    fn section_orbit_examples() {
        let cubocta = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        let r = section_orbit_report(&cubocta, -1, 2).unwrap();
        assert_eq!(r.orbit_count, 2);
        assert!(r.pass);
        let r = section_orbit_report(&cubocta, 0, 3).unwrap();
        assert_eq!(r.orbit_count, 1);
        assert!(r.pass);
        let torus = analyze(catalog::torus_44(2, 1).unwrap());
        let r = section_orbit_report(&torus, 0, 2).unwrap();
        assert_eq!(r.orbit_count, 1);
        assert!(r.pass);
        assert!(matches!(section_orbit_report(&torus, -2, 1), Err(Error::BadRank(_))));
    }

    #[test]
    fn chain_orbit_examples() {
        let cubocta = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        let base_face = cubocta.graph.flag(0)[2];
        assert!(chain_orbit_check(&cubocta, &[base_face]).unwrap());
        let base_vertex = cubocta.graph.flag(0)[0];
        assert!(!chain_orbit_check(&cubocta, &[base_vertex]).unwrap());
        let full: Vec<usize> = cubocta.graph.flag(0).to_vec();
        assert!(chain_orbit_check(&cubocta, &full).unwrap());
        // Incomparable faces are not a chain.
        let v2 = cubocta.poset.rank_indices(0).start + 1;
        let v1 = cubocta.poset.rank_indices(0).start;
        assert!(matches!(
            chain_orbit_check(&cubocta, &[v1, v2]),
            Err(Error::NotAChain(_, _))
        ));
    }

    #[test]
    fn suites_pass_on_small_entries() {
        for p in [
            catalog::cube(3).unwrap(),
            catalog::medial(&catalog::cube(3).unwrap()).unwrap(),
            catalog::torus_44(2, 1).unwrap(),
            catalog::medial(&catalog::hemi_cube().unwrap()).unwrap(),
        ] {
            let an = analyze(p);
            let rep = classifier_suite(&an).unwrap();
            assert!(rep.pass, "suite failed: {rep:?}");
        }
    }

    #[test]
    fn section_class_example() {
        let cubocta = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        let rep = section_class_check(&cubocta).unwrap();
        assert!(rep.pass, "{:?}", rep.failures);
        // The identity section keeps the full class.
        let whole = cubocta.poset.section(cubocta.poset.bot(), cubocta.poset.top()).unwrap();
        let sub = analyze(whole);
        assert_eq!(sub.class_set().unwrap(), vec![0, 1]);
    }
}
