//! A validated polytope bundled with its flag graph, automorphism group,
//! flag-orbit partition, and symmetry-class profile. Most verification
//! batteries take this as their starting point.

use crate::classify::{profile, ClassProfile};
use crate::error::{Error, Result};
use crate::flags::{build_flag_graph, FlagGraph};
use crate::group::{automorphism_group, flag_orbits, Group};
use crate::poset::{validate_polytope, RankedPoset};

#[derive(Debug, Clone)]
pub struct Analysis {
    pub poset: RankedPoset,
    pub graph: FlagGraph,
    pub group: Group,
    /// Flag index -> orbit id; the canonical base flag (index 0) has orbit 0.
    pub flag_orbit: Vec<usize>,
    pub orbit_count: usize,
    pub profile: ClassProfile,
}

impl Analysis {
    /// Validates the poset, then computes the group and class profile.
    pub fn new(poset: RankedPoset) -> Result<Self> {
        let report = validate_polytope(&poset);
        if !report.all_pass() {
            return Err(Error::NotAPolytope(report.summary()));
        }
        let graph = build_flag_graph(&poset);
        let group = automorphism_group(&graph)?;
        let orbits = flag_orbits(&group, graph.flag_count());
        let mut flag_orbit = vec![0usize; graph.flag_count()];
        for (oid, orbit) in orbits.iter().enumerate() {
            for &f in orbit {
                flag_orbit[f] = oid;
            }
        }
        let orbit_count = orbits.len();
        let profile = profile(&poset, &graph, &flag_orbit, orbit_count);
        Ok(Analysis { poset, graph, group, flag_orbit, orbit_count, profile })
    }

    /// The canonical base flag: lexicographically least id sequence.
    pub fn base_flag(&self) -> usize {
        0
    }

    /// Rank as a nonnegative count of proper levels.
    pub fn levels(&self) -> usize {
        self.graph.colors()
    }

    /// The class type set as a sorted vector, when defined.
    pub fn class_set(&self) -> Option<Vec<usize>> {
        self.profile.class_type_set.as_ref().map(|s| s.iter().copied().collect())
    }

    /// Ranks outside the class type set, ascending.
    pub fn class_complement(&self) -> Option<Vec<usize>> {
        self.class_set().map(|s| (0..self.levels()).filter(|i| !s.contains(i)).collect())
    }

    /// The unique group element with the given action on the base flag, if
    /// the action is free and the image is reachable.
    pub fn element_taking_base_to(&self, flag: usize) -> Option<&crate::group::Automorphism> {
        self.group.elements().find(|a| a.act(self.base_flag()) == flag)
    }
}
