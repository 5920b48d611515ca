//! Distinguished subgroups indexed by rank subsets: their identification with
//! subchain stabilizers, the intersection property, the intertwining of the
//! base and adjacent-flag families, flag-transitivity on sections, the
//! split of a face stabilizer into commuting halves, and the extra
//! small-deficiency intersection identities.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::generators::{rebase, GenRef, GeneratorSystem};
use crate::group::{face_image, generate_subgroup, Automorphism, Group};

/// All distinguished subgroups for one base flag, indexed by the bitmask of
/// the avoided rank set.
#[derive(Debug, Clone)]
pub struct SubgroupFamily {
    /// The flag whose subchains these subgroups stabilize.
    pub base_flag: usize,
    pub levels: usize,
    by_mask: Vec<Group>,
}

impl SubgroupFamily {
    pub fn subgroup(&self, mask: usize) -> &Group {
        &self.by_mask[mask]
    }

    pub fn subgroup_for(&self, avoided: &[usize]) -> &Group {
        let mask = avoided.iter().fold(0usize, |m, &r| m | (1 << r));
        self.subgroup(mask)
    }

    pub fn full(&self) -> &Group {
        self.subgroup(0)
    }

    pub fn mask_count(&self) -> usize {
        self.by_mask.len()
    }
}

fn kept_generators(gs: &GeneratorSystem, avoid_mask: usize) -> Vec<Automorphism> {
    let keep = |x: usize| avoid_mask & (1 << x) == 0;
    gs.all()
        .into_iter()
        .filter(|(r, _)| match *r {
            GenRef::Refl(i) => keep(i),
            GenRef::TwoStep(j, k) => keep(j) && keep(k),
            GenRef::ConjRefl(j, i) => keep(j) && keep(i),
        })
        .map(|(_, a)| a.clone())
        .collect()
}

/// Builds the subgroup for every subset of ranks: generators whose indices
/// all avoid the subset, closed inside the full group.
pub fn build_family(an: &Analysis, gs: &GeneratorSystem) -> Result<SubgroupFamily> {
    let n = gs.levels;
    if n > 8 {
        return Err(Error::BadParameter(format!(
            "subgroup family capped at rank 8, got {n}"
        )));
    }
    let mut by_mask = Vec::with_capacity(1 << n);
    for mask in 0..(1usize << n) {
        by_mask.push(generate_subgroup(&an.group, &kept_generators(gs, mask))?);
    }
    Ok(SubgroupFamily { base_flag: gs.base_flag, levels: n, by_mask })
}

/// Outcome of comparing each family member with the matching subchain
/// stabilizer, computed independently by filtering the full group.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizerReport {
    pub subsets_checked: usize,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

pub fn verify_stabilizers(an: &Analysis, family: &SubgroupFamily) -> StabilizerReport {
    let g = &an.graph;
    let chain = g.flag(family.base_flag).to_vec();
    let (bot, top) = (an.poset.bot(), an.poset.top());
    let mut mismatches = Vec::new();
    for mask in 0..family.mask_count() {
        let stab: BTreeSet<Automorphism> = an
            .group
            .elements()
            .filter(|a| {
                (0..family.levels)
                    .filter(|j| mask & (1 << j) != 0)
                    .all(|j| face_image(g, a, chain[j], bot, top) == chain[j])
            })
            .cloned()
            .collect();
        if &stab != family.subgroup(mask).element_set() {
            mismatches.push(format!(
                "subset mask {mask:#b}: subgroup order {} vs stabilizer order {}",
                family.subgroup(mask).order(),
                stab.len()
            ));
        }
    }
    StabilizerReport {
        subsets_checked: family.mask_count(),
        pass: mismatches.is_empty(),
        mismatches,
    }
}

/// Intersections inside one family: the subgroup for a union of subsets is
/// the intersection of the subgroups.
#[derive(Debug, Clone, Serialize)]
pub struct IntersectionReport {
    pub pairs_checked: usize,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

pub fn verify_intersection_property(family: &SubgroupFamily) -> IntersectionReport {
    let count = family.mask_count();
    let mut mismatches = Vec::new();
    for a in 0..count {
        for b in 0..count {
            let meet = family.subgroup(a).intersect(family.subgroup(b));
            if !meet.same_elements(family.subgroup(a | b)) {
                mismatches.push(format!(
                    "masks {a:#b} and {b:#b}: intersection order {} differs from union-subset order {}",
                    meet.order(),
                    family.subgroup(a | b).order()
                ));
            }
        }
    }
    IntersectionReport { pairs_checked: count * count, pass: mismatches.is_empty(), mismatches }
}

/// The base and adjacent-flag families agree away from the moved rank, and
/// meet it through an intersection at the moved rank.
#[derive(Debug, Clone, Serialize)]
pub struct IntertwineReport {
    pub moved_rank: usize,
    pub subsets_checked: usize,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

pub fn verify_intertwine(
    base: &SubgroupFamily,
    adjacent: &SubgroupFamily,
    j0: usize,
) -> IntertwineReport {
    let mut mismatches = Vec::new();
    for mask in 0..base.mask_count() {
        let expected = if mask & (1 << j0) == 0 {
            base.subgroup(mask).clone()
        } else {
            base.subgroup(mask & !(1 << j0)).intersect(adjacent.subgroup(1 << j0))
        };
        if !expected.same_elements(adjacent.subgroup(mask)) {
            mismatches.push(format!("subset mask {mask:#b}"));
        }
    }
    IntertwineReport {
        moved_rank: j0,
        subsets_checked: base.mask_count(),
        pass: mismatches.is_empty(),
        mismatches,
    }
}

/// Flag-transitivity of the rank-window subgroups on the base-flag sections.
#[derive(Debug, Clone, Serialize)]
pub struct SectionTransitivityReport {
    pub windows_checked: usize,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

/// For every window `r < s`, the subgroup avoiding the window interior is
/// flag-transitive on the base section exactly when the interior lies inside
/// the class type set; a transitive action makes the section regular, with
/// group order equal to its flag count.
pub fn verify_section_transitivity(
    an: &Analysis,
    gs: &GeneratorSystem,
    family: &SubgroupFamily,
) -> SectionTransitivityReport {
    let n = an.poset.rank();
    let g = &an.graph;
    let base = family.base_flag;
    let mut mismatches = Vec::new();
    let mut windows = 0usize;
    for r in -1..=n {
        for s in r..=n {
            windows += 1;
            let interior: Vec<usize> = (0..gs.levels)
                .filter(|&x| (x as i32) > r && (x as i32) < s)
                .collect();
            let avoided: Vec<usize> =
                (0..gs.levels).filter(|x| !interior.contains(x)).collect();
            let sub = family.subgroup_for(&avoided);
            let fixed: Vec<usize> = avoided.iter().map(|&j| g.flag(base)[j]).collect();
            let with_subchain: BTreeSet<usize> = (0..g.flag_count())
                .filter(|&f| {
                    avoided.iter().zip(&fixed).all(|(&j, &face)| g.flag(f)[j] == face)
                })
                .collect();
            let orbit: BTreeSet<usize> = sub.elements().map(|a| a.act(base)).collect();
            let transitive = orbit == with_subchain;
            let expected = interior.iter().all(|x| gs.class_set.contains(x));
            if transitive != expected {
                mismatches.push(format!(
                    "window ({r},{s}): transitive={transitive}, expected {expected}"
                ));
            } else if transitive && sub.order() != with_subchain.len() {
                mismatches.push(format!(
                    "window ({r},{s}): transitive but order {} differs from {} section flags",
                    sub.order(),
                    with_subchain.len()
                ));
            }
        }
    }
    SectionTransitivityReport {
        windows_checked: windows,
        pass: mismatches.is_empty(),
        mismatches,
    }
}

/// The stabilizer of the level-`l` face of the base flag, split into the
/// halves generated below and above the level, plus the straddling
/// generators that connect them.
#[derive(Debug, Clone)]
pub struct FaceStabilizerSplit {
    pub level: usize,
    pub whole: Group,
    pub below: Group,
    pub above: Group,
    /// `(j, k)` with `j < level < k`, both outside the class type set.
    pub straddling: Vec<(usize, usize)>,
    pub index: usize,
    pub checks: Vec<(String, bool)>,
    pub pass: bool,
}

/// Builds the split at `level` and verifies: the halves commute elementwise
/// and meet trivially, their product is a direct-product subgroup, its index
/// in the face stabilizer is 2 exactly when a straddling generator exists
/// (with the coset identity), straddling products contract, and conjugation
/// by a straddling generator transports each half's generators as predicted.
pub fn face_stabilizer_split(
    an: &Analysis,
    gs: &GeneratorSystem,
    level: usize,
) -> Result<FaceStabilizerSplit> {
    if level >= gs.levels {
        return Err(Error::BadRank(level as i32));
    }
    let side = |lo: bool| -> Vec<Automorphism> {
        gs.all()
            .into_iter()
            .filter(|(r, _)| {
                let idxs: Vec<usize> = match *r {
                    GenRef::Refl(i) => vec![i],
                    GenRef::TwoStep(j, k) => vec![j, k],
                    GenRef::ConjRefl(j, i) => vec![j, i],
                };
                idxs.iter().all(|&x| if lo { x < level } else { x > level })
            })
            .map(|(_, a)| a.clone())
            .collect()
    };
    let below = generate_subgroup(&an.group, &side(true))?;
    let above = generate_subgroup(&an.group, &side(false))?;
    let whole = generate_subgroup(&an.group, &kept_generators(gs, 1 << level))?;
    let outside = gs.complement();
    let straddling: Vec<(usize, usize)> = outside
        .iter()
        .flat_map(|&j| outside.iter().map(move |&k| (j, k)))
        .filter(|&(j, k)| j < level && level < k)
        .collect();

    let mut checks: Vec<(String, bool)> = Vec::new();
    let commute = below.elements().all(|a| {
        above.elements().all(|b| a.compose(b) == b.compose(a))
    });
    checks.push(("halves commute elementwise".into(), commute));
    let trivial_meet = below.intersect(&above).order() == 1;
    checks.push(("halves meet trivially".into(), trivial_meet));

    let mut product: BTreeSet<Automorphism> = BTreeSet::new();
    for a in below.elements() {
        for b in above.elements() {
            product.insert(a.compose(b));
        }
    }
    checks.push((
        "product subgroup has direct-product order".into(),
        product.len() == below.order() * above.order(),
    ));
    checks.push((
        "product sits inside the face stabilizer".into(),
        product.iter().all(|x| whole.contains(x)),
    ));
    let index = whole.order() / product.len();
    let expected_index = if straddling.is_empty() { 1 } else { 2 };
    checks.push((
        format!("index in the face stabilizer is {expected_index}"),
        index == expected_index && whole.order() % product.len() == 0,
    ));
    for &(j, k) in &straddling {
        let alpha = gs.two_step(j, k).unwrap();
        let mut union = product.clone();
        for x in &product {
            union.insert(x.compose(alpha));
        }
        checks.push((
            format!("coset identity with two_step({j},{k})"),
            union == *whole.element_set(),
        ));
    }

    // Straddling products contract to a below * above product.
    for &(j, k) in &straddling {
        for &(j2, k2) in &straddling {
            let lhs = gs.two_step(j, k).unwrap().compose(gs.two_step(j2, k2).unwrap());
            let mid1 = gs.two_step(k2, k).unwrap().compose(gs.two_step(j2, j).unwrap());
            let mid2 = gs.two_step(j2, j).unwrap().compose(gs.two_step(k2, k).unwrap());
            checks.push((
                format!("two_step({j},{k})*two_step({j2},{k2}) contracts"),
                lhs == mid1 && lhs == mid2 && product.contains(&lhs),
            ));
        }
    }

    // Conjugation transport of the below half by a straddling generator, and
    // of the above half by its inverse.
    let class: Vec<usize> = gs.class_set.iter().copied().collect();
    for &(j, k) in &straddling {
        let alpha = gs.two_step(j, k).unwrap();
        let alpha_inv = gs.two_step(k, j).unwrap();
        let conj = |x: &Automorphism| alpha_inv.compose(x).compose(alpha);
        let conj_inv = |x: &Automorphism| alpha.compose(x).compose(alpha_inv);
        for &i in &class {
            if i < level {
                checks.push((
                    format!("two_step({j},{k}) conjugates refl({i}) to conj_refl({j},{i})"),
                    conj(gs.refl(i).unwrap()) == *gs.conj_refl(j, i).unwrap(),
                ));
            }
            if i > level {
                checks.push((
                    format!("two_step({k},{j}) conjugates refl({i}) to conj_refl({k},{i})"),
                    conj_inv(gs.refl(i).unwrap()) == *gs.conj_refl(k, i).unwrap(),
                ));
            }
        }
        for &s in &outside {
            for &t in &outside {
                if s < level && t < level {
                    let rhs =
                        gs.two_step(t, j).unwrap().compose(gs.two_step(j, s).unwrap());
                    checks.push((
                        format!("two_step({j},{k}) conjugates two_step({s},{t})"),
                        conj(gs.two_step(s, t).unwrap()) == rhs,
                    ));
                }
                if s > level && t > level {
                    let rhs =
                        gs.two_step(t, k).unwrap().compose(gs.two_step(k, s).unwrap());
                    checks.push((
                        format!("two_step({k},{j}) conjugates two_step({s},{t})"),
                        conj_inv(gs.two_step(s, t).unwrap()) == rhs,
                    ));
                }
            }
            for &i in &class {
                if s < level && i < level {
                    let rhs = gs
                        .two_step(s, j)
                        .unwrap()
                        .compose(gs.refl(i).unwrap())
                        .compose(gs.two_step(j, s).unwrap());
                    checks.push((
                        format!("two_step({j},{k}) conjugates conj_refl({s},{i})"),
                        conj(gs.conj_refl(s, i).unwrap()) == rhs,
                    ));
                }
                if s > level && i > level {
                    let rhs = gs
                        .two_step(s, k)
                        .unwrap()
                        .compose(gs.refl(i).unwrap())
                        .compose(gs.two_step(k, s).unwrap());
                    checks.push((
                        format!("two_step({k},{j}) conjugates conj_refl({s},{i})"),
                        conj_inv(gs.conj_refl(s, i).unwrap()) == rhs,
                    ));
                }
            }
        }
    }

    let pass = checks.iter().all(|(_, ok)| *ok);
    Ok(FaceStabilizerSplit { level, whole, below, above, straddling, index, checks, pass })
}

/// One small-deficiency intersection identity with its verdict and the
/// generator lists that entered it.
#[derive(Debug, Clone, Serialize)]
pub struct DeficiencyCheck {
    pub name: String,
    pub generators_used: Vec<String>,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct DeficiencyReport {
    pub applicable: bool,
    pub reason: String,
    pub checks: Vec<DeficiencyCheck>,
    pub pass: bool,
}

/// The extra intersection identities available at reflection deficiency one
/// (both one-sided identities at the missing rank) and at deficiency two
/// with the missing ranks two apart.
pub fn verify_deficiency_lemmas(an: &Analysis, gs: &GeneratorSystem) -> Result<DeficiencyReport> {
    if an.orbit_count != 2 {
        return Ok(DeficiencyReport {
            applicable: false,
            reason: format!("needs two flag orbits, found {}", an.orbit_count),
            checks: Vec::new(),
            pass: true,
        });
    }
    let n = gs.levels;
    let comp = gs.complement();
    let mut checks = Vec::new();
    match comp.as_slice() {
        [j0] => {
            let j0 = *j0;
            let primed = rebase(an, gs, j0)?;
            let split = face_stabilizer_split(an, &primed, j0)?;
            let base_family_gens = |ranks: [usize; 2]| -> Vec<Automorphism> {
                let avoid = (0..n).filter(|r| !ranks.contains(r)).fold(0, |m, r| m | (1 << r));
                kept_generators(gs, avoid)
            };
            if j0 != 0 {
                let lhs_a = generate_subgroup(&an.group, &base_family_gens([j0 - 1, j0]))?;
                let meet = lhs_a.intersect(&split.below);
                let target = generate_subgroup(
                    &an.group,
                    &[gs.conj_refl(j0, j0 - 1).unwrap().clone()],
                )?;
                checks.push(DeficiencyCheck {
                    name: format!(
                        "subchain stabilizer at ranks {{{},{}}} meets the lower primed half in the order-2 group",
                        j0 - 1,
                        j0
                    ),
                    generators_used: primed_side_labels(&primed, j0, true),
                    pass: meet.same_elements(&target),
                });
            }
            if j0 + 1 != n {
                let lhs_a = generate_subgroup(&an.group, &base_family_gens([j0, j0 + 1]))?;
                let meet = lhs_a.intersect(&split.above);
                let target = generate_subgroup(
                    &an.group,
                    &[gs.conj_refl(j0, j0 + 1).unwrap().clone()],
                )?;
                checks.push(DeficiencyCheck {
                    name: format!(
                        "subchain stabilizer at ranks {{{},{}}} meets the upper primed half in the order-2 group",
                        j0,
                        j0 + 1
                    ),
                    generators_used: primed_side_labels(&primed, j0, false),
                    pass: meet.same_elements(&target),
                });
            }
            Ok(DeficiencyReport {
                applicable: true,
                reason: format!("reflection deficiency 1, missing rank {j0}"),
                pass: checks.iter().all(|c| c.pass),
                checks,
            })
        }
        [j0, k0] if *k0 == j0 + 2 => {
            let (j0, k0) = (*j0, *k0);
            let split_lo = face_stabilizer_split(an, gs, j0)?;
            let split_hi = face_stabilizer_split(an, gs, k0)?;
            let alpha = gs.two_step(j0, k0).unwrap();
            let alpha_inv = gs.two_step(k0, j0).unwrap();
            let coset: BTreeSet<Automorphism> =
                split_lo.above.elements().map(|x| x.compose(alpha)).collect();
            let empty_meet = split_hi.below.elements().all(|x| !coset.contains(x));
            checks.push(DeficiencyCheck {
                name: "lower half at the upper rank misses the shifted upper half".into(),
                generators_used: vec![format!("two_step({j0},{k0})")],
                pass: empty_meet,
            });
            let conj: BTreeSet<Automorphism> = split_lo
                .above
                .elements()
                .map(|x| alpha_inv.compose(x).compose(alpha))
                .collect();
            let meet: BTreeSet<Automorphism> = split_hi
                .below
                .elements()
                .filter(|x| conj.contains(x))
                .cloned()
                .collect();
            let target = generate_subgroup(
                &an.group,
                &[gs.conj_refl(j0, j0 + 1).unwrap().clone()],
            )?;
            checks.push(DeficiencyCheck {
                name: "lower half at the upper rank meets the conjugated upper half in the order-2 group"
                    .into(),
                generators_used: vec![format!("conj_refl({j0},{})", j0 + 1)],
                pass: meet == *target.element_set(),
            });
            Ok(DeficiencyReport {
                applicable: true,
                reason: format!("reflection deficiency 2 with missing ranks {j0} and {k0}"),
                pass: checks.iter().all(|c| c.pass),
                checks,
            })
        }
        _ => Ok(DeficiencyReport {
            applicable: false,
            reason: format!("complement {comp:?} matches no small-deficiency case"),
            checks: Vec::new(),
            pass: true,
        }),
    }
}

fn primed_side_labels(primed: &GeneratorSystem, level: usize, lower: bool) -> Vec<String> {
    primed
        .all()
        .into_iter()
        .filter(|(r, _)| {
            let idxs: Vec<usize> = match *r {
                GenRef::Refl(i) => vec![i],
                GenRef::TwoStep(j, k) => vec![j, k],
                GenRef::ConjRefl(j, i) => vec![j, i],
            };
            idxs.iter().all(|&x| if lower { x < level } else { x > level })
        })
        .map(|(r, _)| format!("adjacent-flag {}", r.label()))
        .collect()
}

/// Summary of the stabilizer battery for one polytope.
#[derive(Debug, Clone, Serialize)]
pub struct StabilizerSuiteReport {
    pub base_stabilizers: StabilizerReport,
    pub base_intersections: IntersectionReport,
    /// One entry per rank outside the class type set.
    pub adjacent_families: Vec<AdjacentFamilyReport>,
    pub splits_pass: bool,
    pub split_checks: usize,
    pub section_transitivity: SectionTransitivityReport,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct AdjacentFamilyReport {
    pub moved_rank: usize,
    pub stabilizers: StabilizerReport,
    pub intersections: IntersectionReport,
    pub intertwine: IntertwineReport,
}

/// Runs the full stabilizer battery: both families against their subchain
/// stabilizers, the intersection property in each, the intertwine lemma, all
/// face-stabilizer splits, and section transitivity.
pub fn stabilizer_suite(an: &Analysis) -> Result<StabilizerSuiteReport> {
    let gs = crate::generators::distinguished_generators(an)?;
    let base_family = build_family(an, &gs)?;
    let base_stabilizers = verify_stabilizers(an, &base_family);
    let base_intersections = verify_intersection_property(&base_family);

    let mut adjacent_families = Vec::new();
    for j0 in gs.complement() {
        let primed = rebase(an, &gs, j0)?;
        let fam = build_family(an, &primed)?;
        adjacent_families.push(AdjacentFamilyReport {
            moved_rank: j0,
            stabilizers: verify_stabilizers(an, &fam),
            intersections: verify_intersection_property(&fam),
            intertwine: verify_intertwine(&base_family, &fam, j0),
        });
    }

    let mut splits_pass = true;
    let mut split_checks = 0usize;
    for l in 0..gs.levels {
        let split = face_stabilizer_split(an, &gs, l)?;
        split_checks += split.checks.len();
        if !split.pass {
            splits_pass = false;
        }
    }

    let section_transitivity = verify_section_transitivity(an, &gs, &base_family);

    let pass = base_stabilizers.pass
        && base_intersections.pass
        && adjacent_families
            .iter()
            .all(|f| f.stabilizers.pass && f.intersections.pass && f.intertwine.pass)
        && splits_pass
        && section_transitivity.pass;
    Ok(StabilizerSuiteReport {
        base_stabilizers,
        base_intersections,
        adjacent_families,
        splits_pass,
        split_checks,
        section_transitivity,
        pass,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;
    use crate::generators::distinguished_generators;

    fn analyze(p: crate::poset::RankedPoset) -> Analysis {
        Analysis::new(p).unwrap()
    }

    #[test]
    fn family_extremes_and_orders() {
        let an = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        let gs = distinguished_generators(&an).unwrap();
        let fam = build_family(&an, &gs).unwrap();
        assert_eq!(fam.full().order(), 48);
        assert_eq!(fam.subgroup_for(&[0, 1, 2]).order(), 1);
        // Base 2-face stabilizer.
        assert_eq!(fam.subgroup_for(&[2]).order(), 6);
        // Base vertex and edge stabilizers.
        assert_eq!(fam.subgroup_for(&[0]).order(), 4);
        assert_eq!(fam.subgroup_for(&[1]).order(), 2);
    }

    #[test]
    fn stabilizers_and_intersections() {
        let an = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        let gs = distinguished_generators(&an).unwrap();
        let fam = build_family(&an, &gs).unwrap();
        assert!(verify_stabilizers(&an, &fam).pass);
        assert!(verify_intersection_property(&fam).pass);
        // Vertex and face stabilizers meet in the base-edge reflection group.
        let meet = fam.subgroup_for(&[0]).intersect(fam.subgroup_for(&[2]));
        assert!(meet.same_elements(fam.subgroup_for(&[0, 2])));
        assert_eq!(meet.order(), 2);
    }

    #[test]
    fn intertwine_examples() {
        let an = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        let gs = distinguished_generators(&an).unwrap();
        let base = build_family(&an, &gs).unwrap();
        let primed_gs = rebase(&an, &gs, 2).unwrap();
        let primed = build_family(&an, &primed_gs).unwrap();
        let rep = verify_intertwine(&base, &primed, 2);
        assert!(rep.pass, "{:?}", rep.mismatches);
        // Adjacent-family face stabilizer is the base-square stabilizer.
        assert_eq!(primed.subgroup_for(&[2]).order(), 8);
        // Away from the moved rank both families coincide.
        assert!(primed.subgroup_for(&[0]).same_elements(base.subgroup_for(&[0])));
    }

    #[test]
    fn section_transitivity_examples() {
        let an = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        let gs = distinguished_generators(&an).unwrap();
        let fam = build_family(&an, &gs).unwrap();
        let rep = verify_section_transitivity(&an, &gs, &fam);
        assert!(rep.pass, "{:?}", rep.mismatches);
    }

    #[test]
    fn splits() {
        let an = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        let gs = distinguished_generators(&an).unwrap();
        let split = face_stabilizer_split(&an, &gs, 1).unwrap();
        assert_eq!(split.below.order(), 2);
        assert_eq!(split.above.order(), 1);
        assert!(split.straddling.is_empty());
        assert_eq!(split.index, 1);
        assert!(split.pass, "{:?}", split.checks);

        let an = analyze(catalog::torus_44(2, 1).unwrap());
        let gs = distinguished_generators(&an).unwrap();
        let split = face_stabilizer_split(&an, &gs, 1).unwrap();
        assert_eq!(split.below.order(), 1);
        assert_eq!(split.above.order(), 1);
        assert_eq!(split.straddling, vec![(0, 2)]);
        assert_eq!(split.index, 2);
        assert_eq!(split.whole.order(), 2);
        assert!(split.pass, "{:?}", split.checks);
    }

    #[test]
    fn deficiency_examples() {
        // Missing rank at the top: only the lower-side identity applies.
        let an = analyze(catalog::medial(&catalog::cube(3).unwrap()).unwrap());
        let gs = distinguished_generators(&an).unwrap();
        let rep = verify_deficiency_lemmas(&an, &gs).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.checks.len(), 1);
        assert!(rep.pass, "{:?}", rep.checks);

        // Missing rank at the bottom (dual): only the upper-side identity.
        let an = analyze(crate::poset::dual(
            &catalog::medial(&catalog::cube(3).unwrap()).unwrap(),
        ));
        let gs = distinguished_generators(&an).unwrap();
        let rep = verify_deficiency_lemmas(&an, &gs).unwrap();
        assert!(rep.applicable);
        assert_eq!(rep.checks.len(), 1);
        assert!(rep.pass, "{:?}", rep.checks);

        // Chiral: no small-deficiency case applies.
        let an = analyze(catalog::torus_44(2, 1).unwrap());
        let gs = distinguished_generators(&an).unwrap();
        let rep = verify_deficiency_lemmas(&an, &gs).unwrap();
        assert!(!rep.applicable);
    }

    #[test]
    fn suite_passes_on_small_entries() {
        for p in [
            catalog::cube(3).unwrap(),
            catalog::medial(&catalog::cube(3).unwrap()).unwrap(),
            catalog::medial(&catalog::hemi_cube().unwrap()).unwrap(),
            catalog::torus_44(2, 1).unwrap(),
        ] {
            let an = analyze(p);
            let rep = stabilizer_suite(&an).unwrap();
            assert!(rep.pass, "{rep:?}");
        }
    }
}
