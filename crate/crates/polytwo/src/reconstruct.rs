//! Rebuilding the face order from group data alone.
//!
//! Faces are realized as right cosets of the face stabilizers of the base
//! flag (plus, when exactly one rank is missing from the class type set,
//! cosets of the adjacent-flag stabilizer at that rank, covering the second
//! face orbit). Incidence between cosets goes through the coset-intersection
//! criteria; the assembled poset must reproduce the original up to
//! isomorphism.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::generators::{distinguished_generators, rebase, GeneratorSystem};
use crate::group::{generate_subgroup, Automorphism, Group};
use crate::poset::{validate_polytope, RankedPoset, Rank};
use crate::stabilizers::{build_family, SubgroupFamily};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum FaceFamily {
    /// Coset of the base-flag face stabilizer at this rank.
    Base,
    /// Coset of the adjacent-flag face stabilizer at the special rank.
    Adjacent,
}

/// A face materialized as a canonical right-coset representative.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CosetFace {
    pub rank: Rank,
    pub family: FaceFamily,
    pub rep: Automorphism,
}

/// Incidence decisions between coset faces, for one analyzed polytope.
pub struct OrderOracle<'a> {
    pub an: &'a Analysis,
    pub gs: GeneratorSystem,
    base_family: SubgroupFamily,
    /// `(special rank, adjacent-flag stabilizer)` when exactly one rank is
    /// missing from the class type set.
    special: Option<(usize, Group)>,
    complement: Vec<usize>,
}

impl<'a> OrderOracle<'a> {
    pub fn new(an: &'a Analysis) -> Result<Self> {
        if an.orbit_count > 2 {
            return Err(Error::NotTwoOrbit(an.orbit_count));
        }
        let gs = distinguished_generators(an)?;
        let base_family = build_family(an, &gs)?;
        let complement = gs.complement();
        let special = if complement.len() == 1 {
            let j0 = complement[0];
            let primed = rebase(an, &gs, j0)?;
            let gens: Vec<Automorphism> = primed
                .all()
                .into_iter()
                .filter(|(r, _)| !r.superscripts().contains(&j0))
                .map(|(_, a)| a.clone())
                .collect();
            Some((j0, generate_subgroup(&an.group, &gens)?))
        } else {
            None
        };
        Ok(OrderOracle { an, gs, base_family, special, complement })
    }

    /// The stabilizer backing one family at one rank.
    pub fn stabilizer(&self, rank: usize, family: FaceFamily) -> &Group {
        match family {
            FaceFamily::Base => self.base_family.subgroup_for(&[rank]),
            FaceFamily::Adjacent => {
                &self.special.as_ref().expect("adjacent family requires a special rank").1
            }
        }
    }

    /// Canonicalizes an element into the coset face it names.
    pub fn coset_face(&self, rank: usize, family: FaceFamily, element: &Automorphism) -> CosetFace {
        let stab = self.stabilizer(rank, family);
        let rep = stab.elements().map(|h| h.compose(element)).min().expect("nonempty");
        CosetFace { rank: rank as Rank, family, rep }
    }

    fn right_cosets_meet(&self, h1: &Group, g1: &Automorphism, h2: &Group, g2: &Automorphism) -> bool {
        // x = h*g1 lies in H2*g2 iff x*g2^-1 lies in H2; enumerate the
        // smaller stabilizer.
        let (ha, ga, hb, gb) =
            if h1.order() <= h2.order() { (h1, g1, h2, g2) } else { (h2, g2, h1, g1) };
        let gb_inv = gb.inverse();
        ha.elements().any(|h| hb.contains(&h.compose(ga).compose(&gb_inv)))
    }

    /// Applies the incidence criterion for `a <= b`. Ranks must satisfy
    /// `rank(a) <= rank(b)`; equal ranks decide equality of the faces.
    pub fn incident(&self, a: &CosetFace, b: &CosetFace) -> Result<bool> {
        let (i, j) = (a.rank, b.rank);
        if i > j {
            return Err(Error::CaseUndefined { i, j });
        }
        for f in [a, b] {
            if f.family == FaceFamily::Adjacent {
                match &self.special {
                    Some((j0, _)) if f.rank == *j0 as Rank => {}
                    _ => return Err(Error::CaseUndefined { i, j }),
                }
            }
        }
        if i == j {
            if a.family != b.family {
                // The two families sit in different face orbits, so equality
                // is impossible; incidence at equal rank means equality.
                return Ok(false);
            }
            let stab = self.stabilizer(i as usize, a.family);
            return Ok(self.right_cosets_meet(stab, &a.rep, stab, &b.rep));
        }
        match (a.family, b.family) {
            (FaceFamily::Base, FaceFamily::Base) => {
                let comp_is_pair = self.complement.len() == 2
                    && self.complement[0] as Rank == i
                    && self.complement[1] as Rank == j;
                let hi = self.base_family.subgroup_for(&[i as usize]);
                let hj = self.base_family.subgroup_for(&[j as usize]);
                if comp_is_pair {
                    // Missing-pair case: the face below may also meet the
                    // shifted coset of the face above.
                    if self.right_cosets_meet(hi, &a.rep, hj, &b.rep) {
                        return Ok(true);
                    }
                    let alpha = self
                        .gs
                        .two_step(i as usize, j as usize)
                        .expect("both ranks outside the class type set");
                    // x in (alpha * Hj) * b.rep iff alpha^-1 * x * b.rep^-1 in Hj.
                    let alpha_inv = alpha.inverse();
                    let brep_inv = b.rep.inverse();
                    return Ok(hi.elements().any(|h| {
                        let x = h.compose(&a.rep);
                        hj.contains(&alpha_inv.compose(&x).compose(&brep_inv))
                    }));
                }
                Ok(self.right_cosets_meet(hi, &a.rep, hj, &b.rep))
            }
            (FaceFamily::Adjacent, FaceFamily::Base) => {
                let (_, special) = self.special.as_ref().expect("validated above");
                let hj = self.base_family.subgroup_for(&[j as usize]);
                Ok(self.right_cosets_meet(special, &a.rep, hj, &b.rep))
            }
            (FaceFamily::Base, FaceFamily::Adjacent) => {
                let (_, special) = self.special.as_ref().expect("validated above");
                let hi = self.base_family.subgroup_for(&[i as usize]);
                Ok(self.right_cosets_meet(hi, &a.rep, special, &b.rep))
            }
            (FaceFamily::Adjacent, FaceFamily::Adjacent) => Err(Error::CaseUndefined { i, j }),
        }
    }

    /// All faces of one rank, as canonical coset representatives.
    pub fn faces_at(&self, rank: usize) -> Vec<CosetFace> {
        let mut out = BTreeSet::new();
        for g in self.an.group.elements() {
            out.insert(self.coset_face(rank, FaceFamily::Base, g));
        }
        if let Some((j0, _)) = &self.special {
            if *j0 == rank {
                for g in self.an.group.elements() {
                    out.insert(self.coset_face(rank, FaceFamily::Adjacent, g));
                }
            }
        }
        out.into_iter().collect()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct RankCosetCount {
    pub rank: usize,
    pub base_cosets: usize,
    pub adjacent_cosets: usize,
    pub actual_faces: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct RebuildReport {
    pub per_rank: Vec<RankCosetCount>,
    pub counts_match: bool,
    pub closure_consistent: bool,
    pub rebuilt_valid: bool,
    pub roundtrip: bool,
}

impl RebuildReport {
    pub fn pass(&self) -> bool {
        self.counts_match && self.closure_consistent && self.rebuilt_valid && self.roundtrip
    }
}

/// Rebuilds the face poset from cosets and the incidence criteria, then
/// checks it: per-rank counts obey the index formula, the transitive closure
/// agrees with the criteria on every face pair, the result validates, and it
/// is isomorphic to the original.
pub fn rebuild_order(an: &Analysis) -> Result<(RankedPoset, RebuildReport)> {
    let oracle = OrderOracle::new(an)?;
    let n = an.poset.rank();
    let levels = an.levels();

    let mut faces_by_rank: Vec<Vec<CosetFace>> = Vec::new();
    let mut per_rank = Vec::new();
    let mut counts_match = true;
    for r in 0..levels {
        let faces = oracle.faces_at(r);
        let base = faces.iter().filter(|f| f.family == FaceFamily::Base).count();
        let adjacent = faces.len() - base;
        let actual = an.poset.rank_indices(r as Rank).len();
        // Index formula per family.
        let order = an.group.order();
        if base != order / oracle.stabilizer(r, FaceFamily::Base).order() {
            counts_match = false;
        }
        if adjacent > 0
            && adjacent != order / oracle.stabilizer(r, FaceFamily::Adjacent).order()
        {
            counts_match = false;
        }
        if base + adjacent != actual {
            counts_match = false;
        }
        per_rank.push(RankCosetCount {
            rank: r,
            base_cosets: base,
            adjacent_cosets: adjacent,
            actual_faces: actual,
        });
        faces_by_rank.push(faces);
    }

    let face_id = |rank: usize, family: FaceFamily, seq: usize| -> String {
        match family {
            FaceFamily::Base => format!("f{rank}_{seq}"),
            FaceFamily::Adjacent => format!("g{rank}_{seq}"),
        }
    };
    let mut proper: Vec<(Rank, String, Vec<String>)> = Vec::new();
    for (r, faces) in faces_by_rank.iter().enumerate() {
        let mut base_seq = 0usize;
        let mut adj_seq = 0usize;
        for face in faces {
            let seq = match face.family {
                FaceFamily::Base => {
                    base_seq += 1;
                    base_seq - 1
                }
                FaceFamily::Adjacent => {
                    adj_seq += 1;
                    adj_seq - 1
                }
            };
            let id = face_id(r, face.family, seq);
            let mut covered = Vec::new();
            if r > 0 {
                let mut lo_base = 0usize;
                let mut lo_adj = 0usize;
                for below in &faces_by_rank[r - 1] {
                    let lo_seq = match below.family {
                        FaceFamily::Base => {
                            lo_base += 1;
                            lo_base - 1
                        }
                        FaceFamily::Adjacent => {
                            lo_adj += 1;
                            lo_adj - 1
                        }
                    };
                    if oracle.incident(below, face)? {
                        covered.push(face_id(r - 1, below.family, lo_seq));
                    }
                }
            }
            proper.push((r as Rank, id, covered));
        }
    }
    let rebuilt = RankedPoset::new(n, proper)
        .map_err(|e| Error::ReconstructionMismatch(e.to_string()))?;

    // Closure consistency: the incidence criteria on arbitrary rank pairs
    // must agree with the transitive closure of the consecutive-rank data.
    let mut closure_consistent = true;
    'outer: for (ra, fa) in faces_by_rank.iter().enumerate() {
        for (rb, fb) in faces_by_rank.iter().enumerate().skip(ra) {
            let mut idx_a = (0usize, 0usize);
            for a in fa {
                let ia = pick_seq(&mut idx_a, a.family);
                let mut idx_b = (0usize, 0usize);
                for b in fb {
                    let ib = pick_seq(&mut idx_b, b.family);
                    let want = oracle.incident(a, b)?;
                    let ia_id = face_id(ra, a.family, ia);
                    let ib_id = face_id(rb, b.family, ib);
                    let got = if ra == rb {
                        ia_id == ib_id
                    } else {
                        let x = rebuilt.index_of(&ia_id).unwrap();
                        let y = rebuilt.index_of(&ib_id).unwrap();
                        rebuilt.leq(x, y)
                    };
                    if want != got {
                        closure_consistent = false;
                        break 'outer;
                    }
                }
            }
        }
    }

    let rebuilt_valid = validate_polytope(&rebuilt).all_pass();
    let roundtrip = rebuilt_valid && crate::poset::is_isomorphic(&an.poset, &rebuilt);
    let report =
        RebuildReport { per_rank, counts_match, closure_consistent, rebuilt_valid, roundtrip };
    Ok((rebuilt, report))
}

fn pick_seq(counter: &mut (usize, usize), family: FaceFamily) -> usize {
    match family {
        FaceFamily::Base => {
            counter.0 += 1;
            counter.0 - 1
        }
        FaceFamily::Adjacent => {
            counter.1 += 1;
            counter.1 - 1
        }
    }
}

/// Round trip: the rebuilt poset is isomorphic to the original.
pub fn roundtrip_check(an: &Analysis) -> Result<bool> {
    Ok(rebuild_order(an)?.1.roundtrip)
}

#[derive(Debug, Clone, Serialize)]
pub struct OracleCrossCheck {
    pub pairs_checked: usize,
    pub mismatches: Vec<String>,
    pub pass: bool,
}

/// Exhaustive agreement between the coset criteria and the actual incidence:
/// every proper face is located as a coset face through a flag that contains
/// it, then every face pair is compared.
pub fn oracle_matches_incidence(an: &Analysis) -> Result<OracleCrossCheck> {
    let oracle = OrderOracle::new(an)?;
    let p = &an.poset;
    let g = &an.graph;
    let base = an.base_flag();
    let adjacent_base = oracle.special.as_ref().map(|(j0, _)| g.adjacent(base, *j0));

    // Locate each proper face as a coset face.
    let mut located: Vec<(usize, CosetFace)> = Vec::new();
    for r in 0..an.levels() {
        for face in p.rank_indices(r as Rank) {
            let holders: Vec<usize> =
                (0..g.flag_count()).filter(|&f| g.flag(f)[r] == face).collect();
            let in_base_orbit = holders.iter().find(|&&f| an.flag_orbit[f] == 0);
            let coset_face = if let Some(&flag) = in_base_orbit {
                let phi = an
                    .element_taking_base_to(flag)
                    .expect("flags of the base orbit are reachable")
                    .clone();
                oracle.coset_face(r, FaceFamily::Base, &phi)
            } else {
                let ab = adjacent_base.expect("a second face orbit needs a special rank");
                let flag = holders[0];
                let psi = an
                    .group
                    .elements()
                    .find(|a| a.act(ab) == flag)
                    .expect("flags of the other orbit are reachable from the adjacent base")
                    .clone();
                oracle.coset_face(r, FaceFamily::Adjacent, &psi)
            };
            located.push((face, coset_face));
        }
    }

    let mut pairs_checked = 0usize;
    let mut mismatches = Vec::new();
    for (fa, ca) in &located {
        for (fb, cb) in &located {
            if ca.rank > cb.rank {
                continue;
            }
            pairs_checked += 1;
            let actual =
                if ca.rank == cb.rank { fa == fb } else { p.leq(*fa, *fb) };
            let predicted = oracle.incident(ca, cb)?;
            if actual != predicted {
                mismatches.push(format!(
                    "faces {} and {}: actual {actual}, criterion {predicted}",
                    p.face(*fa).id,
                    p.face(*fb).id
                ));
            }
        }
    }
    Ok(OracleCrossCheck { pairs_checked, pass: mismatches.is_empty(), mismatches })
}
