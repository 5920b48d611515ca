//! Witness polytopes: regular baselines, medials, hemi quotients, torus maps,
//! duals, and a bounded search over small torus quotients.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::poset::{dual, validate_polytope, RankedPoset, Rank};

/// Builds the face lattice of a convex p-gon.
pub fn polygon(p: u32) -> Result<RankedPoset> {
    if p < 3 {
        return Err(Error::BadParameter(format!("polygon needs p >= 3, got {p}")));
    }
    let mut proper = Vec::new();
    for i in 0..p {
        proper.push((0, format!("v{i}"), vec![]));
        proper.push((1, format!("e{i}"), vec![format!("v{i}"), format!("v{}", (i + 1) % p)]));
    }
    RankedPoset::new(2, proper)
}

/// The n-simplex: faces are the nonempty vertex subsets.
pub fn simplex(n: u32) -> Result<RankedPoset> {
    if n < 1 || n > 5 {
        return Err(Error::BadParameter(format!("simplex rank {n} outside 1..=5")));
    }
    let verts: Vec<u32> = (0..=n).collect();
    let mut proper = Vec::new();
    for mask in 1u32..(1 << (n + 1)) {
        let size = mask.count_ones();
        if size as usize == verts.len() {
            continue; // the full set is the greatest face
        }
        let id = subset_id(mask);
        let r = size as Rank - 1;
        let below: Vec<String> = if r == 0 {
            Vec::new()
        } else {
            (0..=n)
                .filter(|&v| mask & (1 << v) != 0)
                .map(|v| subset_id(mask & !(1 << v)))
                .collect()
        };
        proper.push((r, id, below));
    }
    RankedPoset::new(n as Rank, proper)
}

fn subset_id(mask: u32) -> String {
    let mut s = String::from("s");
    for v in 0..32 {
        if mask & (1 << v) != 0 {
            s.push_str(&v.to_string());
        }
    }
    s
}

/// The n-cube: faces are words over {0, 1, x}, with `x` marking free axes.
pub fn cube(n: u32) -> Result<RankedPoset> {
    if n < 1 || n > 5 {
        return Err(Error::BadParameter(format!("cube rank {n} outside 1..=5")));
    }
    let mut proper = Vec::new();
    let mut words: Vec<Vec<u8>> = vec![Vec::new()];
    for _ in 0..n {
        words = words
            .into_iter()
            .flat_map(|w| {
                [b'0', b'1', b'x'].into_iter().map(move |c| {
                    let mut w2 = w.clone();
                    w2.push(c);
                    w2
                })
            })
            .collect();
    }
    for w in &words {
        let free = w.iter().filter(|&&c| c == b'x').count() as Rank;
        if free == n as Rank {
            continue;
        }
        let id = cube_id(w);
        let below: Vec<String> = if free == 0 {
            Vec::new()
        } else {
            w.iter()
                .enumerate()
                .filter(|(_, &c)| c == b'x')
                .flat_map(|(i, _)| {
                    [b'0', b'1'].into_iter().map(move |c| {
                        let mut w2 = w.clone();
                        w2[i] = c;
                        cube_id(&w2)
                    })
                })
                .collect()
        };
        proper.push((free, id, below));
    }
    RankedPoset::new(n as Rank, proper)
}

fn cube_id(w: &[u8]) -> String {
    format!("c{}", std::str::from_utf8(w).unwrap())
}

/// The icosahedron, assembled as a gyroelongated pentagonal bipyramid.
pub fn icosahedron() -> Result<RankedPoset> {
    let tri = |a: &str, b: &str, c: &str| -> (String, [String; 3]) {
        let mut vs = [a.to_string(), b.to_string(), c.to_string()];
        vs.sort();
        (format!("t{}_{}_{}", vs[0], vs[1], vs[2]), vs)
    };
    let mut triangles: Vec<(String, [String; 3])> = Vec::new();
    for i in 0..5usize {
        let j = (i + 1) % 5;
        triangles.push(tri("N", &format!("u{i}"), &format!("u{j}")));
        triangles.push(tri(&format!("u{i}"), &format!("u{j}"), &format!("w{i}")));
        triangles.push(tri(&format!("w{i}"), &format!("w{j}"), &format!("u{j}")));
        triangles.push(tri("S", &format!("w{i}"), &format!("w{j}")));
    }
    poset_from_vertex_cycles(3, &triangles.iter().map(|(id, vs)| (id.clone(), vs.to_vec())).collect::<Vec<_>>())
}

pub fn dodecahedron() -> Result<RankedPoset> {
    Ok(dual(&icosahedron()?))
}

/// Builds a polyhedron from 2-faces given as unsorted vertex sets, deriving
/// the edges as vertex pairs shared by exactly two faces. Only correct when
/// every face is determined by its vertex set and edges are vertex pairs;
/// the hardcoded catalog solids satisfy this.
fn poset_from_vertex_cycles(rank: Rank, faces: &[(String, Vec<String>)]) -> Result<RankedPoset> {
    assert_eq!(rank, 3);
    let mut vertices: Vec<String> = faces.iter().flat_map(|(_, vs)| vs.clone()).collect();
    vertices.sort();
    vertices.dedup();
    // Edges: vertex pairs contained in exactly two faces.
    let mut edges: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for (fid, vs) in faces {
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                let key = if vs[a] < vs[b] {
                    (vs[a].clone(), vs[b].clone())
                } else {
                    (vs[b].clone(), vs[a].clone())
                };
                edges.entry(key).or_default().push(fid.clone());
            }
        }
    }
    edges.retain(|_, fs| fs.len() == 2);
    let mut proper = Vec::new();
    for v in &vertices {
        proper.push((0, v.clone(), vec![]));
    }
    let mut edge_ids: BTreeMap<(String, String), String> = BTreeMap::new();
    for (k, _) in &edges {
        let id = format!("{}_{}", k.0, k.1);
        edge_ids.insert(k.clone(), id.clone());
        proper.push((1, id, vec![k.0.clone(), k.1.clone()]));
    }
    for (fid, vs) in faces {
        let mut below = Vec::new();
        for a in 0..vs.len() {
            for b in a + 1..vs.len() {
                let key = if vs[a] < vs[b] {
                    (vs[a].clone(), vs[b].clone())
                } else {
                    (vs[b].clone(), vs[a].clone())
                };
                if edges.get(&key).map(|fs| fs.contains(fid)).unwrap_or(false) {
                    below.push(edge_ids[&key].clone());
                }
            }
        }
        proper.push((2, fid.clone(), below));
    }
    RankedPoset::new(3, proper)
}

/// The medial of a polyhedron: its vertices are the edges of `p`, its edges
/// the incident (vertex, 2-face) pairs, and its 2-faces the old 2-faces plus
/// the old vertices.
pub fn medial(p: &RankedPoset) -> Result<RankedPoset> {
    if p.rank() != 3 {
        return Err(Error::BadParameter(format!("medial needs rank 3, got {}", p.rank())));
    }
    let mut proper = Vec::new();
    for e in p.rank_indices(1) {
        proper.push((0, p.face(e).id.clone(), vec![]));
    }
    for v in p.rank_indices(0) {
        for f in p.rank_indices(2) {
            if !p.leq(v, f) {
                continue;
            }
            let ends: Vec<String> = p
                .rank_indices(1)
                .filter(|&e| p.leq(v, e) && p.leq(e, f))
                .map(|e| p.face(e).id.clone())
                .collect();
            proper.push((1, format!("{}_{}", p.face(v).id, p.face(f).id), ends));
        }
    }
    for f in p.rank_indices(2) {
        let below: Vec<String> = p
            .rank_indices(0)
            .filter(|&v| p.leq(v, f))
            .map(|v| format!("{}_{}", p.face(v).id, p.face(f).id))
            .collect();
        proper.push((2, p.face(f).id.clone(), below));
    }
    for v in p.rank_indices(0) {
        let below: Vec<String> = p
            .rank_indices(2)
            .filter(|&f| p.leq(v, f))
            .map(|f| format!("{}_{}", p.face(v).id, p.face(f).id))
            .collect();
        proper.push((2, p.face(v).id.clone(), below));
    }
    RankedPoset::new(3, proper)
}

/// The antipodal quotient of the cube: 4 vertices, 6 edges, 3 squares.
pub fn hemi_cube() -> Result<RankedPoset> {
    let squares = vec![
        ("q0".to_string(), cyc(&["a", "b", "d", "c"])),
        ("q1".to_string(), cyc(&["a", "b", "c", "d"])),
        ("q2".to_string(), cyc(&["a", "c", "b", "d"])),
    ];
    poset_from_cycles_with_multiplicity(&squares)
}

/// The antipodal quotient of the dodecahedron: the pentagonal embedding of
/// the Petersen graph in the projective plane.
pub fn hemi_dodecahedron() -> Result<RankedPoset> {
    let mut faces = vec![("Pout".to_string(), cyc(&["o0", "o1", "o2", "o3", "o4"]))];
    for j in 0..5usize {
        let f = vec![
            format!("o{j}"),
            format!("o{}", (j + 1) % 5),
            format!("i{}", (j + 1) % 5),
            format!("i{}", (j + 3) % 5),
            format!("i{j}"),
        ];
        faces.push((format!("P{j}"), f));
    }
    poset_from_cycles_with_multiplicity(&faces)
}

fn cyc(vs: &[&str]) -> Vec<String> {
    vs.iter().map(|s| s.to_string()).collect()
}

/// Like [`poset_from_vertex_cycles`] but the faces are explicit vertex
/// CYCLES, so edges come from consecutive pairs; needed when a face visits
/// few vertices more than once around distinct edges is impossible but the
/// pair-counting shortcut would overcount (hemi quotients).
fn poset_from_cycles_with_multiplicity(faces: &[(String, Vec<String>)]) -> Result<RankedPoset> {
    let mut vertices: Vec<String> = faces.iter().flat_map(|(_, vs)| vs.clone()).collect();
    vertices.sort();
    vertices.dedup();
    let mut edge_faces: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for (fid, vs) in faces {
        for k in 0..vs.len() {
            let (a, b) = (&vs[k], &vs[(k + 1) % vs.len()]);
            let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            edge_faces.entry(key).or_default().push(fid.clone());
        }
    }
    let mut proper = Vec::new();
    for v in &vertices {
        proper.push((0, v.clone(), vec![]));
    }
    for (k, fs) in &edge_faces {
        if fs.len() != 2 {
            return Err(Error::MalformedInput(format!(
                "edge {}_{} lies in {} faces",
                k.0,
                k.1,
                fs.len()
            )));
        }
        proper.push((1, format!("{}_{}", k.0, k.1), vec![k.0.clone(), k.1.clone()]));
    }
    for (fid, vs) in faces {
        let mut below = Vec::new();
        for k in 0..vs.len() {
            let (a, b) = (&vs[k], &vs[(k + 1) % vs.len()]);
            let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
            below.push(format!("{}_{}", key.0, key.1));
        }
        below.sort();
        below.dedup();
        proper.push((2, fid.clone(), below));
    }
    RankedPoset::new(3, proper)
}

/// A sublattice of Z^2, spanned by two integer vectors.
#[derive(Debug, Clone, Copy)]
pub struct Lattice {
    pub u: (i64, i64),
    pub v: (i64, i64),
}

impl Lattice {
    pub fn index(&self) -> i64 {
        (self.u.0 * self.v.1 - self.u.1 * self.v.0).abs()
    }

    /// Whether `(x, y)` lies in the lattice.
    pub fn contains(&self, x: i64, y: i64) -> bool {
        let det = self.u.0 * self.v.1 - self.u.1 * self.v.0;
        debug_assert!(det != 0);
        let s = x * self.v.1 - y * self.v.0;
        let t = -x * self.u.1 + y * self.u.0;
        s % det == 0 && t % det == 0
    }
}

/// The square tessellation quotient by `lattice`: vertices are Z^2 mod the
/// lattice, edges the unit steps, 2-faces the unit squares. Returns
/// `DegenerateQuotient` when the result fails the polytope axioms.
pub fn torus_44_lattice(lattice: Lattice, name_hint: &str) -> Result<RankedPoset> {
    let m = lattice.index();
    if m == 0 {
        return Err(Error::BadParameter("lattice vectors are collinear".into()));
    }
    // Canonical vertex labels via BFS over unit steps from the origin.
    let mut labels: Vec<(i64, i64)> = vec![(0, 0)];
    let mut queue = std::collections::VecDeque::from([(0i64, 0i64)]);
    let find = |labels: &[(i64, i64)], x: i64, y: i64| -> Option<usize> {
        labels.iter().position(|&(a, b)| lattice.contains(x - a, y - b))
    };
    while let Some((x, y)) = queue.pop_front() {
        for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
            let (nx, ny) = (x + dx, y + dy);
            if find(&labels, nx, ny).is_none() {
                labels.push((nx, ny));
                queue.push_back((nx, ny));
            }
        }
    }
    debug_assert_eq!(labels.len() as i64, m);
    let vid = |k: usize| format!("v{k}");
    let mut proper = Vec::new();
    for k in 0..labels.len() {
        proper.push((0, vid(k), vec![]));
    }
    // Horizontal and vertical unit edges, one pair per vertex.
    let mut edge_id: BTreeMap<(usize, u8), String> = BTreeMap::new();
    for (k, &(x, y)) in labels.iter().enumerate() {
        for (dir, tag, dx, dy) in [(0u8, "h", 1i64, 0i64), (1u8, "x", 0, 1)] {
            let other = find(&labels, x + dx, y + dy).unwrap();
            let id = format!("e{tag}{k}");
            edge_id.insert((k, dir), id.clone());
            let mut ends = vec![vid(k), vid(other)];
            ends.sort();
            ends.dedup();
            if ends.len() != 2 {
                return Err(Error::DegenerateQuotient(format!(
                    "{name_hint}: unit edge collapses to a loop"
                )));
            }
            proper.push((1, id, ends));
        }
    }
    // Unit squares anchored at their lower-left corner.
    for (k, &(x, y)) in labels.iter().enumerate() {
        let up = find(&labels, x, y + 1).unwrap();
        let right = find(&labels, x + 1, y).unwrap();
        let mut below = vec![
            edge_id[&(k, 0)].clone(),
            edge_id[&(up, 0)].clone(),
            edge_id[&(k, 1)].clone(),
            edge_id[&(right, 1)].clone(),
        ];
        below.sort();
        below.dedup();
        if below.len() != 4 {
            return Err(Error::DegenerateQuotient(format!(
                "{name_hint}: unit square has repeated edges"
            )));
        }
        proper.push((2, format!("f{k}"), below));
    }
    let p = RankedPoset::new(3, proper)?;
    let report = validate_polytope(&p);
    if !report.all_pass() {
        return Err(Error::DegenerateQuotient(format!("{name_hint}: {}", report.summary())));
    }
    Ok(p)
}

/// Quotient of the square tessellation by the lattice spanned by `(b, c)`
/// and `(-c, b)`.
pub fn torus_44(b: i64, c: i64) -> Result<RankedPoset> {
    torus_44_lattice(Lattice { u: (b, c), v: (-c, b) }, &format!("torus 4 4 ({b},{c})"))
}

/// A catalog entry: a named builder plus optional expectations used by the
/// verification batteries.
pub struct CatalogEntry {
    pub name: String,
    pub build: Box<dyn Fn() -> Result<RankedPoset>>,
    pub expected: Option<Expected>,
}

/// Expectation fragments recorded for acceptance checks.
#[derive(Debug, Clone, Default)]
pub struct Expected {
    pub orbit_count: Option<usize>,
    pub class_type_set: Option<Vec<usize>>,
    pub chiral: Option<bool>,
    /// Canonical symbol rows (lexicographically smaller row first).
    pub symbol: Option<(Vec<u32>, Vec<u32>)>,
    pub face_counts: Option<Vec<usize>>,
    pub flag_count: Option<usize>,
    pub group_order: Option<usize>,
}

fn entry<F>(name: &str, build: F, expected: Option<Expected>) -> CatalogEntry
where
    F: Fn() -> Result<RankedPoset> + 'static,
{
    CatalogEntry { name: name.to_string(), build: Box::new(build), expected }
}

/// The fixed catalog: regular baselines plus the named two-orbit witnesses.
pub fn standard_entries() -> Vec<CatalogEntry> {
    vec![
        entry(
            "polygon-5",
            || polygon(5),
            Some(Expected {
                orbit_count: Some(1),
                face_counts: Some(vec![5, 5]),
                flag_count: Some(10),
                group_order: Some(10),
                ..Default::default()
            }),
        ),
        entry(
            "simplex-3",
            || simplex(3),
            Some(Expected {
                orbit_count: Some(1),
                face_counts: Some(vec![4, 6, 4]),
                flag_count: Some(24),
                group_order: Some(24),
                ..Default::default()
            }),
        ),
        entry(
            "cube",
            || cube(3),
            Some(Expected {
                orbit_count: Some(1),
                face_counts: Some(vec![8, 12, 6]),
                flag_count: Some(48),
                group_order: Some(48),
                symbol: Some((vec![4, 3], vec![4, 3])),
                ..Default::default()
            }),
        ),
        entry(
            "tesseract",
            || cube(4),
            Some(Expected {
                orbit_count: Some(1),
                face_counts: Some(vec![16, 32, 24, 8]),
                flag_count: Some(384),
                group_order: Some(384),
                ..Default::default()
            }),
        ),
        entry(
            "dodecahedron",
            dodecahedron,
            Some(Expected {
                orbit_count: Some(1),
                face_counts: Some(vec![20, 30, 12]),
                flag_count: Some(120),
                group_order: Some(120),
                symbol: Some((vec![5, 3], vec![5, 3])),
                ..Default::default()
            }),
        ),
        entry(
            "hemi-cube",
            hemi_cube,
            Some(Expected {
                orbit_count: Some(1),
                face_counts: Some(vec![4, 6, 3]),
                flag_count: Some(24),
                group_order: Some(24),
                ..Default::default()
            }),
        ),
        entry(
            "hemi-dodecahedron",
            hemi_dodecahedron,
            Some(Expected {
                orbit_count: Some(1),
                face_counts: Some(vec![10, 15, 6]),
                flag_count: Some(60),
                group_order: Some(60),
                ..Default::default()
            }),
        ),
        entry(
            "cuboctahedron",
            || medial(&cube(3)?),
            Some(Expected {
                orbit_count: Some(2),
                class_type_set: Some(vec![0, 1]),
                chiral: Some(false),
                symbol: Some((vec![3, 4], vec![4, 4])),
                face_counts: Some(vec![12, 24, 14]),
                flag_count: Some(96),
                group_order: Some(48),
            }),
        ),
        entry(
            "icosidodecahedron",
            || medial(&dodecahedron()?),
            Some(Expected {
                orbit_count: Some(2),
                class_type_set: Some(vec![0, 1]),
                chiral: Some(false),
                symbol: Some((vec![3, 4], vec![5, 4])),
                face_counts: Some(vec![30, 60, 32]),
                flag_count: Some(240),
                group_order: Some(120),
            }),
        ),
        entry(
            "hemi-cuboctahedron",
            || medial(&hemi_cube()?),
            Some(Expected {
                orbit_count: Some(2),
                chiral: Some(false),
                face_counts: Some(vec![6, 12, 7]),
                ..Default::default()
            }),
        ),
        entry(
            "hemi-icosidodecahedron",
            || medial(&hemi_dodecahedron()?),
            Some(Expected {
                orbit_count: Some(2),
                chiral: Some(false),
                face_counts: Some(vec![15, 30, 16]),
                ..Default::default()
            }),
        ),
        entry(
            "rhombic-dodecahedron",
            || Ok(dual(&medial(&cube(3)?)?)),
            Some(Expected {
                orbit_count: Some(2),
                chiral: Some(false),
                symbol: Some((vec![4, 3], vec![4, 4])),
                face_counts: Some(vec![14, 24, 12]),
                flag_count: Some(96),
                group_order: Some(48),
                ..Default::default()
            }),
        ),
        entry(
            "rhombic-triacontahedron",
            || Ok(dual(&medial(&dodecahedron()?)?)),
            Some(Expected {
                orbit_count: Some(2),
                chiral: Some(false),
                symbol: Some((vec![4, 3], vec![4, 5])),
                face_counts: Some(vec![32, 60, 30]),
                flag_count: Some(240),
                group_order: Some(120),
                ..Default::default()
            }),
        ),
        entry(
            "torus-4-4-2-1",
            || torus_44(2, 1),
            Some(Expected {
                orbit_count: Some(2),
                class_type_set: Some(vec![]),
                chiral: Some(true),
                symbol: Some((vec![4, 4], vec![4, 4])),
                face_counts: Some(vec![5, 10, 5]),
                flag_count: Some(40),
                group_order: Some(20),
            }),
        ),
        entry(
            "torus-4-4-3-0",
            || torus_44(3, 0),
            Some(Expected {
                orbit_count: Some(1),
                face_counts: Some(vec![9, 18, 9]),
                flag_count: Some(72),
                group_order: Some(72),
                ..Default::default()
            }),
        ),
    ]
}

/// Outcome of the bounded search over small torus quotients.
#[derive(Debug, Clone, Serialize)]
pub struct SearchReport {
    pub max_index: i64,
    pub lattices_tested: usize,
    pub valid_quotients: usize,
    pub two_orbit_quotients: usize,
    /// Names of quotients whose class type set has complement `{0, 2}`.
    pub gap_two_specimens: Vec<String>,
}

/// Enumerates the sublattices of Z^2 of index <= `max_index` (in Hermite
/// normal form), keeps every quotient that validates, classifies it, and
/// registers any specimen whose class type set complement equals `{0, 2}`.
pub fn search_torus_quotients(max_index: i64) -> (Vec<CatalogEntry>, SearchReport) {
    let mut specimens = Vec::new();
    let mut report = SearchReport {
        max_index,
        lattices_tested: 0,
        valid_quotients: 0,
        two_orbit_quotients: 0,
        gap_two_specimens: Vec::new(),
    };
    for m in 1..=max_index {
        for a in 1..=m {
            if m % a != 0 {
                continue;
            }
            let d = m / a;
            for b in 0..a {
                report.lattices_tested += 1;
                let lat = Lattice { u: (a, 0), v: (b, d) };
                let name = format!("torus-l-{a}-{b}-{d}");
                let p = match torus_44_lattice(lat, &name) {
                    Ok(p) => p,
                    Err(_) => continue,
                };
                report.valid_quotients += 1;
                let analysis = match crate::analysis::Analysis::new(p) {
                    Ok(an) => an,
                    Err(_) => continue,
                };
                if analysis.orbit_count == 2 {
                    report.two_orbit_quotients += 1;
                    if let Some(class) = analysis.profile.class_type_set.clone() {
                        let comp: Vec<usize> =
                            (0..3).filter(|i| !class.contains(i)).collect();
                        if comp == vec![0, 2] {
                            report.gap_two_specimens.push(name.clone());
                            specimens.push(entry(
                                &name,
                                move || torus_44_lattice(lat, "search specimen"),
                                Some(Expected {
                                    orbit_count: Some(2),
                                    class_type_set: Some(vec![1]),
                                    ..Default::default()
                                }),
                            ));
                        }
                    }
                }
            }
        }
    }
    (specimens, report)
}

/// The fixed catalog plus the search specimens.
pub fn all_entries(search_index: i64) -> (Vec<CatalogEntry>, SearchReport) {
    let mut entries = standard_entries();
    let (specimens, report) = search_torus_quotients(search_index);
    entries.extend(specimens);
    (entries, report)
}

/// Resolves a fixed catalog entry by name.
pub fn by_name(name: &str) -> Result<RankedPoset> {
    for e in standard_entries() {
        if e.name == name {
            return (e.build)();
        }
    }
    // Search specimens are addressable by their HNF parameters.
    if let Some(rest) = name.strip_prefix("torus-l-") {
        let parts: Vec<&str> = rest.split('-').collect();
        if parts.len() == 3 {
            if let (Ok(a), Ok(b), Ok(d)) =
                (parts[0].parse(), parts[1].parse(), parts[2].parse())
            {
                return torus_44_lattice(Lattice { u: (a, 0i64), v: (b, d) }, name);
            }
        }
    }
    Err(Error::UnknownCatalogEntry(name.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn regular_counts() {
        assert_eq!(cube(3).unwrap().face_counts(), vec![8, 12, 6]);
        assert_eq!(simplex(3).unwrap().face_counts(), vec![4, 6, 4]);
        assert_eq!(polygon(5).unwrap().face_counts(), vec![5, 5]);
        assert!(polygon(2).is_err());
        assert!(cube(6).is_err());
    }

    #[test]
    fn platonic_and_medial_counts() {
        let ico = icosahedron().unwrap();
        assert_eq!(ico.face_counts(), vec![12, 30, 20]);
        assert!(validate_polytope(&ico).all_pass());
        let dod = dodecahedron().unwrap();
        assert_eq!(dod.face_counts(), vec![20, 30, 12]);
        let cubocta = medial(&cube(3).unwrap()).unwrap();
        assert_eq!(cubocta.face_counts(), vec![12, 24, 14]);
        let icosidod = medial(&dod).unwrap();
        assert_eq!(icosidod.face_counts(), vec![30, 60, 32]);
        assert!(validate_polytope(&icosidod).all_pass());
    }

    #[test]
    fn hemi_quotients() {
        let hc = hemi_cube().unwrap();
        assert_eq!(hc.face_counts(), vec![4, 6, 3]);
        assert_eq!(4 - 6 + 3, 1);
        assert!(validate_polytope(&hc).all_pass());
        let hd = hemi_dodecahedron().unwrap();
        assert_eq!(hd.face_counts(), vec![10, 15, 6]);
        assert_eq!(10 - 15 + 6, 1);
        assert!(validate_polytope(&hd).all_pass());
        let hcm = medial(&hc).unwrap();
        assert!(validate_polytope(&hcm).all_pass());
        assert_eq!(hcm.face_counts(), vec![6, 12, 7]);
    }

    #[test]
    fn torus_quotients() {
        let t21 = torus_44(2, 1).unwrap();
        assert_eq!(t21.face_counts(), vec![5, 10, 5]);
        let t30 = torus_44(3, 0).unwrap();
        assert_eq!(t30.face_counts(), vec![9, 18, 9]);
        assert!(matches!(torus_44(1, 0), Err(Error::DegenerateQuotient(_))));
        assert!(matches!(torus_44(1, 1), Err(Error::DegenerateQuotient(_))));
    }

    #[test]
    fn medial_respects_isomorphism() {
        let a = medial(&cube(3).unwrap()).unwrap();
        let b = medial(&dual(&dual(&cube(3).unwrap()))).unwrap();
        assert!(crate::poset::is_isomorphic(&a, &b));
    }
}
