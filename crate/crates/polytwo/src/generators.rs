//! The distinguished generating set of the automorphism group of a polytope
//! with at most two flag orbits, its relations, the constructive
//! factorization of arbitrary elements over it, and the change of generators
//! under moving the base flag to an adjacent flag of the other orbit.
//!
//! Three kinds of generators, each defined by its action on the base flag:
//! `refl(i)` sends the base flag to its i-adjacent flag (`i` in the class
//! type set), `two_step(j, k)` walks two adjacencies at ranks outside the
//! class type set, and `conj_refl(j, i)` walks `j, i, j`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::analysis::Analysis;
use crate::error::{Error, Result};
use crate::group::{extend_flag_map, generate_subgroup, Automorphism};

/// A reference to one distinguished generator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub enum GenRef {
    Refl(usize),
    TwoStep(usize, usize),
    ConjRefl(usize, usize),
}

impl GenRef {
    /// The adjacency word this generator traces from the base flag.
    pub fn superscripts(&self) -> Vec<usize> {
        match *self {
            GenRef::Refl(i) => vec![i],
            GenRef::TwoStep(j, k) => vec![j, k],
            GenRef::ConjRefl(j, i) => vec![j, i, j],
        }
    }

    pub fn label(&self) -> String {
        match *self {
            GenRef::Refl(i) => format!("refl({i})"),
            GenRef::TwoStep(j, k) => format!("two_step({j},{k})"),
            GenRef::ConjRefl(j, i) => format!("conj_refl({j},{i})"),
        }
    }
}

/// The distinguished generators attached to one base flag.
#[derive(Debug, Clone)]
pub struct GeneratorSystem {
    pub base_flag: usize,
    /// The class type set; all ranks when the polytope is regular.
    pub class_set: BTreeSet<usize>,
    /// Number of proper ranks.
    pub levels: usize,
    refl: BTreeMap<usize, Automorphism>,
    two_step: BTreeMap<(usize, usize), Automorphism>,
    conj_refl: BTreeMap<(usize, usize), Automorphism>,
}

impl GeneratorSystem {
    pub fn refl(&self, i: usize) -> Option<&Automorphism> {
        self.refl.get(&i)
    }

    pub fn two_step(&self, j: usize, k: usize) -> Option<&Automorphism> {
        self.two_step.get(&(j, k))
    }

    pub fn conj_refl(&self, j: usize, i: usize) -> Option<&Automorphism> {
        self.conj_refl.get(&(j, i))
    }

    pub fn get(&self, r: GenRef) -> Option<&Automorphism> {
        match r {
            GenRef::Refl(i) => self.refl(i),
            GenRef::TwoStep(j, k) => self.two_step(j, k),
            GenRef::ConjRefl(j, i) => self.conj_refl(j, i),
        }
    }

    /// Every generator with its reference, in a fixed order.
    pub fn all(&self) -> Vec<(GenRef, &Automorphism)> {
        let mut out = Vec::new();
        for (&i, a) in &self.refl {
            out.push((GenRef::Refl(i), a));
        }
        for (&(j, k), a) in &self.two_step {
            out.push((GenRef::TwoStep(j, k), a));
        }
        for (&(j, i), a) in &self.conj_refl {
            out.push((GenRef::ConjRefl(j, i), a));
        }
        out
    }

    /// Ranks outside the class type set, ascending.
    pub fn complement(&self) -> Vec<usize> {
        (0..self.levels).filter(|i| !self.class_set.contains(i)).collect()
    }
}

/// Extracts the distinguished generators at the given base flag by flag-map
/// extension. The class type set is global, so extraction works at any flag.
pub fn extract_at(an: &Analysis, base: usize) -> Result<GeneratorSystem> {
    if an.orbit_count > 2 {
        return Err(Error::NotTwoOrbit(an.orbit_count));
    }
    let class: BTreeSet<usize> = an.class_set().expect("at most two orbits").into_iter().collect();
    let n = an.levels();
    let g = &an.graph;
    let extend = |target: usize| -> Result<Automorphism> {
        extend_flag_map(g, base, target).ok_or(Error::MissingAutomorphism(base, target))
    };
    let mut refl = BTreeMap::new();
    for &i in &class {
        refl.insert(i, extend(g.adjacent(base, i))?);
    }
    let outside: Vec<usize> = (0..n).filter(|i| !class.contains(i)).collect();
    let mut two_step = BTreeMap::new();
    for &j in &outside {
        for &k in &outside {
            let t = g.apply_word(base, &[j, k])?;
            two_step.insert((j, k), extend(t)?);
        }
    }
    let mut conj_refl = BTreeMap::new();
    for &j in &outside {
        for &i in &class {
            let t = g.apply_word(base, &[j, i, j])?;
            conj_refl.insert((j, i), extend(t)?);
        }
    }
    Ok(GeneratorSystem { base_flag: base, class_set: class, levels: n, refl, two_step, conj_refl })
}

/// The distinguished generators at the canonical base flag.
pub fn distinguished_generators(an: &Analysis) -> Result<GeneratorSystem> {
    extract_at(an, an.base_flag())
}

/// Defining actions and the immediate identities: each generator realizes its
/// adjacency word on the base flag, `two_step(j, j)` is the identity,
/// `two_step(j, k)` inverts to `two_step(k, j)`, and `conj_refl(j, i)`
/// collapses to `refl(i)` when `j` and `i` are far apart.
pub fn verify_defining_actions(an: &Analysis, gs: &GeneratorSystem) -> bool {
    let g = &an.graph;
    let base = gs.base_flag;
    let mut ok = true;
    for (r, a) in gs.all() {
        let expected = g.apply_word(base, &r.superscripts()).expect("letters in range");
        ok &= a.act(base) == expected;
    }
    for (&(j, k), a) in &gs.two_step {
        if j == k {
            ok &= a.is_identity();
        }
        ok &= a.inverse() == *gs.two_step(k, j).expect("mirror pair present");
    }
    for (&(j, i), a) in &gs.conj_refl {
        if j.abs_diff(i) >= 2 {
            ok &= a == gs.refl(i).expect("class rank present");
        }
    }
    ok
}

/// The closure of the distinguished generators equals the full group.
pub fn verify_generation(an: &Analysis, gs: &GeneratorSystem) -> Result<bool> {
    let gens: Vec<Automorphism> = gs.all().into_iter().map(|(_, a)| a.clone()).collect();
    let closure = generate_subgroup(&an.group, &gens)?;
    Ok(closure.same_elements(&an.group))
}

/// One factor of a factorization: a labeled subproduct of generators.
#[derive(Debug, Clone)]
pub struct Factor {
    pub label: String,
    pub gens: Vec<GenRef>,
    pub element: Automorphism,
}

/// A factorization of a group element over the distinguished generators,
/// produced from a connecting word for its base-flag image.
#[derive(Debug, Clone)]
pub struct FactorizationTrace {
    pub word: Vec<usize>,
    /// Positions (0-based) of the word letters outside the class type set;
    /// always of even length.
    pub split_points: Vec<usize>,
    pub factors: Vec<Factor>,
}

impl FactorizationTrace {
    /// The product of the factors in listed order (leftmost acts first).
    pub fn product(&self, flag_count: usize) -> Automorphism {
        let mut acc = Automorphism::identity(flag_count);
        for f in &self.factors {
            acc = acc.compose(&f.element);
        }
        acc
    }
}

fn make_factor(gs: &GeneratorSystem, label: String, gens: Vec<GenRef>, degree: usize) -> Factor {
    let mut element = Automorphism::identity(degree);
    for &r in &gens {
        element = element.compose(gs.get(r).expect("generator present"));
    }
    Factor { label, gens, element }
}

/// Factorizes `psi` over the distinguished generators.
///
/// The shortest connecting word from the base flag to its image is split at
/// the letters outside the class type set; in-class stretches become products
/// of `refl`, and each consecutive pair of outside letters becomes one
/// bridging factor of a `two_step` followed by `conj_refl`s.
pub fn factorize(
    an: &Analysis,
    gs: &GeneratorSystem,
    psi: &Automorphism,
) -> Result<FactorizationTrace> {
    let g = &an.graph;
    let degree = g.flag_count();
    let base = gs.base_flag;
    let target = psi.act(base);
    let word = g.connecting_word(base, target, &BTreeSet::new())?;
    let outside: Vec<usize> =
        (0..word.len()).filter(|&m| !gs.class_set.contains(&word[m])).collect();
    debug_assert!(outside.len() % 2 == 0, "automorphism images stay in the base orbit");
    let s = outside.len() / 2;
    let len = word.len();

    let mut factors: Vec<Factor> = Vec::new();
    let push_refl_run = |factors: &mut Vec<Factor>, label: String, hi: isize, lo: isize| {
        // refl product over word positions hi down to lo (inclusive)
        if hi < lo {
            return;
        }
        let gens: Vec<GenRef> =
            (lo..=hi).rev().map(|m| GenRef::Refl(word[m as usize])).collect();
        factors.push(make_factor(gs, label, gens, degree));
    };

    // Trailing in-class stretch.
    let tail_start = if s > 0 { outside[2 * s - 1] as isize + 1 } else { 0 };
    push_refl_run(&mut factors, format!("gamma_{}", 2 * s), len as isize - 1, tail_start);

    for t in (0..s).rev() {
        let a = outside[2 * t];
        let b = outside[2 * t + 1];
        let mut gens = vec![GenRef::TwoStep(word[a], word[b])];
        for m in (a + 1..b).rev() {
            gens.push(GenRef::ConjRefl(word[a], word[m]));
        }
        factors.push(make_factor(gs, format!("beta_{}", 2 * t + 1), gens, degree));
        let lo = if t > 0 { outside[2 * t - 1] as isize + 1 } else { 0 };
        push_refl_run(&mut factors, format!("gamma_{}", 2 * t), a as isize - 1, lo);
    }

    let trace = FactorizationTrace { word, split_points: outside, factors };
    debug_assert_eq!(trace.product(degree), *psi, "factorization must reproduce the element");
    Ok(trace)
}

/// One relation instance with its verdict.
#[derive(Debug, Clone, Serialize)]
pub struct RelationCheck {
    pub family: char,
    pub witness: String,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub checks: Vec<RelationCheck>,
    pub pass: bool,
}

/// Verifies the relation families satisfied by the distinguished generators:
///
/// (a) involutions and the periods of `two_step`;
/// (b) dihedral periods of `refl` pairs (top symbol row) and of `conj_refl`
///     pairs at a fixed outside rank (bottom row);
/// (c) conjugating a `conj_refl` across `two_step` moves its outer rank;
/// (d) derived specials of (c) at neighbouring outside ranks;
/// (e) far-apart `conj_refl`s at one outside rank commute;
/// (f) a `refl`/`conj_refl` pair spanning a class boundary generates a
///     dihedral group of order equal to the symbol entry.
pub fn verify_relations(an: &Analysis, gs: &GeneratorSystem) -> Result<RelationReport> {
    let symbol = an
        .profile
        .symbol
        .as_ref()
        .ok_or(Error::NotTwoOrbit(an.orbit_count))?;
    let n = gs.levels;
    let class: Vec<usize> = gs.class_set.iter().copied().collect();
    let outside = gs.complement();
    let top = |l: usize| symbol.top[l - 1] as usize;
    let bottom = |l: usize| symbol.bottom[l - 1] as usize;
    let mut checks: Vec<RelationCheck> = Vec::new();
    let mut check = |family: char, witness: String, pass: bool| {
        checks.push(RelationCheck { family, witness, pass });
    };

    // (a) involutions and periods.
    for &i in &class {
        check('a', format!("refl({i}) is an involution"), gs.refl(i).unwrap().order() == 2);
    }
    for (&(j, i), a) in &gs.conj_refl {
        check('a', format!("conj_refl({j},{i}) is an involution"), a.order() == 2);
    }
    for (&(j, k), a) in &gs.two_step {
        check(
            'a',
            format!("two_step({j},{k}) inverts to two_step({k},{j})"),
            a.inverse() == *gs.two_step(k, j).unwrap(),
        );
        if j == k {
            continue;
        }
        let expected = if j.abs_diff(k) >= 2 {
            2
        } else if j + 1 == k {
            top(k)
        } else {
            top(j)
        };
        check(
            'a',
            format!("two_step({j},{k}) has period {expected}"),
            a.order() == expected,
        );
    }

    // (b) pair periods; the top row governs refl pairs, the bottom row the
    // conj_refl pairs seen from an adjacent flag of the other orbit.
    for (x, &i) in class.iter().enumerate() {
        for &l in &class[x + 1..] {
            let expected = if i.abs_diff(l) >= 2 { 2 } else { top(l.max(i)) };
            let prod = gs.refl(i).unwrap().compose(gs.refl(l).unwrap());
            check(
                'b',
                format!("refl({i})*refl({l}) has period {expected} [top row]"),
                prod.order() == expected,
            );
            for &j in &outside {
                let expected_q = if i.abs_diff(l) >= 2 { 2 } else { bottom(l.max(i)) };
                let prod =
                    gs.conj_refl(j, i).unwrap().compose(gs.conj_refl(j, l).unwrap());
                check(
                    'b',
                    format!(
                        "conj_refl({j},{i})*conj_refl({j},{l}) has period {expected_q} [bottom row]"
                    ),
                    prod.order() == expected_q,
                );
            }
        }
    }

    // (c) two_step conjugation transports conj_refl between outside ranks.
    for &i in &class {
        for &j in &outside {
            for &k in &outside {
                let lhs = gs
                    .two_step(j, k)
                    .unwrap()
                    .compose(gs.conj_refl(j, i).unwrap())
                    .compose(gs.two_step(k, j).unwrap());
                check(
                    'c',
                    format!("two_step({j},{k})*conj_refl({j},{i})*two_step({k},{j}) = conj_refl({k},{i})"),
                    lhs == *gs.conj_refl(k, i).unwrap(),
                );
            }
        }
    }

    // (d) derived specials.
    for &i in &class {
        if i + 1 < n && !gs.class_set.contains(&(i + 1)) {
            for &j in &outside {
                if j.abs_diff(i) < 2 {
                    continue;
                }
                let lhs = gs
                    .two_step(j, i + 1)
                    .unwrap()
                    .compose(gs.refl(i).unwrap())
                    .compose(gs.two_step(i + 1, j).unwrap());
                check(
                    'd',
                    format!("two_step({j},{}) conjugates refl({i}) to conj_refl({},{i})", i + 1, i + 1),
                    lhs == *gs.conj_refl(i + 1, i).unwrap(),
                );
            }
        }
        for &j in &outside {
            if j == 0 || gs.class_set.contains(&(j - 1)) || !outside.contains(&j) {
                continue;
            }
            let near = i + 2 >= j && i <= j + 1;
            if near {
                continue;
            }
            let a = gs.two_step(j - 1, j).unwrap();
            let r = gs.refl(i).unwrap();
            check(
                'd',
                format!("two_step({},{j}) commutes with refl({i})", j - 1),
                a.compose(r) == r.compose(a),
            );
        }
    }

    // (e) far-apart conj_refls at one outside rank commute.
    for &j in &outside {
        for (x, &i) in class.iter().enumerate() {
            for &l in &class[x + 1..] {
                if i.abs_diff(l) < 2 {
                    continue;
                }
                let a = gs.conj_refl(j, i).unwrap();
                let b = gs.conj_refl(j, l).unwrap();
                check(
                    'e',
                    format!("conj_refl({j},{i}) commutes with conj_refl({j},{l})"),
                    a.compose(b) == b.compose(a),
                );
            }
        }
    }

    // (f) dihedral groups across a class boundary: order equals the symbol
    // entry (half of it on each side of the boundary reflection).
    for l in 1..n {
        let lo = gs.class_set.contains(&(l - 1));
        let hi = gs.class_set.contains(&l);
        if lo == hi {
            continue;
        }
        let (g1, g2, name) = if lo {
            (
                gs.refl(l - 1).unwrap().clone(),
                gs.conj_refl(l, l - 1).unwrap().clone(),
                format!("refl({}), conj_refl({l},{})", l - 1, l - 1),
            )
        } else {
            (
                gs.refl(l).unwrap().clone(),
                gs.conj_refl(l - 1, l).unwrap().clone(),
                format!("refl({l}), conj_refl({},{l})", l - 1),
            )
        };
        let sub = generate_subgroup(&an.group, &[g1, g2])?;
        check(
            'f',
            format!("<{name}> is dihedral of order {}", top(l)),
            sub.order() == top(l),
        );
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(RelationReport { checks, pass })
}

/// Moves the base flag to its `j0`-adjacent flag (the other orbit) and
/// returns the generator system there, computed two ways: by the change of
/// generators formulas and by direct extraction. The two routes must agree
/// element by element.
pub fn rebase(an: &Analysis, gs: &GeneratorSystem, j0: usize) -> Result<GeneratorSystem> {
    if gs.class_set.contains(&j0) || j0 >= gs.levels {
        return Err(Error::BadParameter(format!(
            "rebase rank {j0} must lie outside the class type set"
        )));
    }
    let new_base = an.graph.adjacent(gs.base_flag, j0);
    let direct = extract_at(an, new_base)?;

    for (&i, want) in &direct.refl {
        let formula = gs.conj_refl(j0, i).unwrap();
        if formula != want {
            return Err(Error::FormulaMismatch(format!("refl({i}) at the rebased flag")));
        }
    }
    for (&(j, k), want) in &direct.two_step {
        let formula =
            gs.two_step(k, j0).unwrap().compose(gs.two_step(j0, j).unwrap());
        if formula != *want {
            return Err(Error::FormulaMismatch(format!("two_step({j},{k}) at the rebased flag")));
        }
    }
    for (&(j, i), want) in &direct.conj_refl {
        let formula = gs
            .two_step(j, j0)
            .unwrap()
            .compose(gs.refl(i).unwrap())
            .compose(gs.two_step(j0, j).unwrap());
        if formula != *want {
            return Err(Error::FormulaMismatch(format!("conj_refl({j},{i}) at the rebased flag")));
        }
    }
    Ok(direct)
}

/// Left multiplication by a generator appends its adjacency word to the
/// base-flag image: base*(g*a) = (base*a) walked by the word of `g`.
pub fn append_rule_holds(an: &Analysis, gs: &GeneratorSystem, sample: &[&Automorphism]) -> bool {
    let base = gs.base_flag;
    let g = &an.graph;
    gs.all().iter().all(|(r, gen)| {
        sample.iter().all(|alpha| {
            let lhs = gen.compose(alpha).act(base);
            let rhs = g
                .apply_word(alpha.act(base), &r.superscripts())
                .expect("letters in range");
            lhs == rhs
        })
    })
}

/// Summary of the generator battery for one polytope.
#[derive(Debug, Clone, Serialize)]
pub struct GeneratorSuiteReport {
    pub defining_actions: bool,
    pub generation: bool,
    pub relations: RelationReport,
    pub factorized_elements: usize,
    pub factorization_pass: bool,
    /// `(rank, agreed)` per rank outside the class type set.
    pub rebase_checks: Vec<(usize, bool)>,
    pub append_rule: bool,
    pub pass: bool,
}

/// Runs extraction, generation, relations, exhaustive factorization, rebasing
/// along every outside rank, and the append bookkeeping rule.
pub fn generator_suite(an: &Analysis) -> Result<GeneratorSuiteReport> {
    let gs = distinguished_generators(an)?;
    let defining_actions = verify_defining_actions(an, &gs);
    let generation = verify_generation(an, &gs)?;
    let relations = verify_relations(an, &gs)?;

    let mut factorization_pass = true;
    let mut factorized_elements = 0usize;
    for psi in an.group.elements() {
        let trace = factorize(an, &gs, psi)?;
        factorized_elements += 1;
        if trace.product(an.graph.flag_count()) != *psi {
            factorization_pass = false;
        }
    }

    let mut rebase_checks = Vec::new();
    for j0 in gs.complement() {
        let agreed = match rebase(an, &gs, j0) {
            Ok(re) => {
                // Rebasing twice along the same rank restores the original.
                let back = rebase(an, &re, j0)?;
                back.all()
                    .into_iter()
                    .zip(gs.all())
                    .all(|((r1, a1), (r2, a2))| r1 == r2 && a1 == a2)
            }
            Err(Error::FormulaMismatch(_)) => false,
            Err(e) => return Err(e),
        };
        rebase_checks.push((j0, agreed));
    }

    let sample: Vec<&Automorphism> = an.group.elements().step_by(1.max(an.group.order() / 50)).collect();
    let append_rule = append_rule_holds(an, &gs, &sample);

    let pass = defining_actions
        && generation
        && relations.pass
        && factorization_pass
        && rebase_checks.iter().all(|(_, ok)| *ok)
        && append_rule;
    Ok(GeneratorSuiteReport {
        defining_actions,
        generation,
        relations,
        factorized_elements,
        factorization_pass,
        rebase_checks,
        append_rule,
        pass,
    })
}
