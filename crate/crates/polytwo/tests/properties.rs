//! Property-level invariants across the catalog: word identities on flag
//! graphs, connecting words under forbidden rank sets, the subgroup
//! transitivity lemma for flags over a fixed subchain, and canonical
//! serialization.

use std::collections::BTreeSet;

use polytwo::analysis::Analysis;
use polytwo::apf::{parse_apf, serialize_apf};
use polytwo::catalog;
use polytwo::group::generate_subgroup;

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn standard_analyses() -> Vec<(String, Analysis)> {
    catalog::standard_entries()
        .into_iter()
        .map(|e| {
            let p = (e.build)().unwrap();
            (e.name, Analysis::new(p).unwrap())
        })
        .collect()
}

proptest! {
    // Walking i,i returns to the start, and far-apart letters commute,
    // whatever the flag and the word prefix.
    #[test]
    fn word_identities(prefix in proptest::collection::vec(0usize..3, 0..8), i in 0usize..3, j in 0usize..3) {
        let p = catalog::medial(&catalog::cube(3).unwrap()).unwrap();
        let an = Analysis::new(p).unwrap();
        let g = &an.graph;
        let start = g.apply_word(0, &prefix).unwrap();
        prop_assert_eq!(g.apply_word(start, &[i, i]).unwrap(), start);
        if i.abs_diff(j) > 1 {
            prop_assert_eq!(
                g.apply_word(start, &[i, j]).unwrap(),
                g.apply_word(start, &[j, i]).unwrap()
            );
        }
    }

    // Valid torus quotients have eight flags per vertex.
    #[test]
    fn torus_flag_counts(b in -4i64..=4, c in -4i64..=4) {
        if let Ok(p) = catalog::torus_44(b, c) {
            let m = (b * b + c * c) as usize;
            prop_assert_eq!(p.face_counts(), vec![m, 2 * m, m]);
            let an = Analysis::new(p).unwrap();
            prop_assert_eq!(an.graph.flag_count(), 8 * m);
        }
    }
}

#[test]
fn connecting_words_random_pairs() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, an) in standard_analyses() {
        let g = &an.graph;
        if g.colors() == 0 {
            continue;
        }
        for _ in 0..1000 {
            let from = rng.gen_range(0..g.flag_count());
            let to = rng.gen_range(0..g.flag_count());
            // Forbid the ranks where the two flags already agree only if they
            // agree there; the shared-face precondition picks the forbidden
            // set as the ranks carrying identical faces.
            let forbidden: BTreeSet<usize> = (0..g.colors())
                .filter(|&r| g.flag(from)[r] == g.flag(to)[r])
                .collect();
            let word = g
                .connecting_word(from, to, &forbidden)
                .unwrap_or_else(|e| panic!("{name}: no path: {e}"));
            assert!(word.iter().all(|l| !forbidden.contains(l)), "{name}: word uses a forbidden rank");
            assert_eq!(g.apply_word(from, &word).unwrap(), to, "{name}: word misses the target");
        }
    }
}

#[test]
fn subgroup_transitive_on_flags_over_subchain() {
    // For every rank subset containing the class complement, the reflections
    // outside it act transitively on the flags through the base subchain.
    for (name, an) in standard_analyses() {
        if an.orbit_count > 2 {
            continue;
        }
        let gs = polytwo::generators::distinguished_generators(&an).unwrap();
        let comp_mask: usize = gs.complement().iter().fold(0, |m, &r| m | (1 << r));
        let n = an.levels();
        let base = an.base_flag();
        for mask in 0..(1usize << n) {
            if mask & comp_mask != comp_mask {
                continue;
            }
            let gens: Vec<_> = (0..n)
                .filter(|&i| mask & (1 << i) == 0)
                .map(|i| gs.refl(i).expect("rank in the class type set").clone())
                .collect();
            let sub = generate_subgroup(&an.group, &gens).unwrap();
            let with_subchain: BTreeSet<usize> = (0..an.graph.flag_count())
                .filter(|&f| {
                    (0..n).filter(|&j| mask & (1 << j) != 0).all(|j| {
                        an.graph.flag(f)[j] == an.graph.flag(base)[j]
                    })
                })
                .collect();
            let orbit: BTreeSet<usize> = sub.elements().map(|a| a.act(base)).collect();
            assert_eq!(orbit, with_subchain, "{name}: subset mask {mask:#b}");
        }
    }
}

#[test]
fn serialization_is_canonical_everywhere() {
    for e in catalog::standard_entries() {
        let p = (e.build)().unwrap();
        let text = serialize_apf(&p);
        let reparsed = parse_apf(&text).unwrap();
        assert_eq!(serialize_apf(&reparsed), text, "{}: canonical form unstable", e.name);
        assert!(polytwo::is_isomorphic(&p, &reparsed), "{}: round trip broke the poset", e.name);
    }
}

#[test]
fn sections_of_valid_polytopes_are_valid() {
    // Exhaustive over all comparable pairs on the rank-3 catalog entries.
    for (name, an) in standard_analyses() {
        if an.poset.rank() > 3 {
            continue;
        }
        let p = &an.poset;
        for a in 0..p.face_count() {
            for b in 0..p.face_count() {
                if p.leq(a, b) {
                    let s = p.section(a, b).unwrap();
                    assert!(
                        polytwo::validate_polytope(&s).all_pass(),
                        "{name}: section {}..{} invalid",
                        p.face(a).id,
                        p.face(b).id
                    );
                }
            }
        }
    }
}

#[test]
fn dual_is_an_involution_on_the_catalog() {
    for e in catalog::standard_entries() {
        let p = (e.build)().unwrap();
        assert!(
            polytwo::is_isomorphic(&polytwo::dual(&polytwo::dual(&p)), &p),
            "{}: double dual differs",
            e.name
        );
    }
}
