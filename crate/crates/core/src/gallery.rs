//! Worked examples with their expected analyses, runnable as a regression
//! suite. Every check goes through the public API of the other modules.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::graph::{enumerate_automorphisms_bounded, Direction, Multigraph, Walk};
use crate::groups::{cube_rotation_group, GroupDescriptor, GroupElement, Homomorphism, TableGroup};
use crate::limits::Limits;
use crate::paradox::{
    are_isomorphic, check_morphism, classify_tree_boundary, fiber_equivalent, parse_word,
    search_fiber_equivalence, validate_presentation_rep, GraphMap, IsoVerdict, Paradox, ParadoxMorphism, Word,
};
use crate::sheaf::{boundary_obstruction, holonomy, is_coboundary, BoundaryOutcome, Cochain1, NetworkSheaf};
use crate::torsor::{torsor_from_cocycle, transport};

/// One expected fact about an example.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum Check {
    /// Holonomies of a constant-sheaf cocycle at basepoint 0.
    Holonomy { sheaf: NetworkSheaf, cocycle: Cochain1, expected: Vec<GroupElement> },
    Trivial { sheaf: NetworkSheaf, cocycle: Cochain1, expected: bool },
    /// gcd of all holonomy coordinates of a `Z^n` paradox.
    HolonomyGcd { paradox: Paradox, expected: u64 },
    /// `k`-th power of the first holonomy.
    HolonomyPower { sheaf: NetworkSheaf, cocycle: Cochain1, power: i64, expected: GroupElement },
    /// Torsor transport of `start` along a walk.
    Transport { sheaf: NetworkSheaf, cocycle: Cochain1, walk: Walk, start: GroupElement, expected: GroupElement },
    Presentation {
        group: GroupDescriptor,
        relator: Word,
        images: BTreeMap<String, GroupElement>,
        expected: bool,
    },
    /// `None` when the boundary values extend, else the relative invariant.
    Boundary {
        graph: Multigraph,
        group: GroupDescriptor,
        boundary: Vec<usize>,
        beta: Vec<GroupElement>,
        expected: Option<Vec<GroupElement>>,
    },
    /// Orbits of non-trivial leaf data under all tree automorphisms.
    TreeOrbits { tree: Multigraph, group: GroupDescriptor, expected: usize },
    /// Number of isomorphism classes, by pairwise comparison.
    IsoClasses { paradoxes: Vec<Paradox>, expected: usize },
    Isomorphic { a: Paradox, b: Paradox, expected: bool },
    FiberEquivalent { a: Paradox, b: Paradox, phi: Homomorphism, psi: Homomorphism, expected: bool },
    /// Whether exhaustive search finds a fiber-equivalence pair.
    FiberSearch { a: Paradox, b: Paradox, expected: bool },
    Morphism { morphism: ParadoxMorphism, source: Paradox, target: Paradox, expected: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub label: String,
    pub expected: String,
    pub computed: String,
    pub passed: bool,
}

fn outcome(label: String, expected: String, computed: Result<String>) -> CheckOutcome {
    match computed {
        Ok(c) => CheckOutcome { passed: c == expected, label, expected, computed: c },
        Err(e) => CheckOutcome { label, expected, computed: format!("error: {e}"), passed: false },
    }
}

fn yes_no(b: bool, yes: &str, no: &str) -> String {
    if b { yes } else { no }.to_string()
}

fn gcd_of(xs: &[GroupElement]) -> u64 {
    use num_integer::Integer;
    xs.iter()
        .flat_map(|x| match x {
            GroupElement::Vector(v) => v.clone(),
            _ => vec![],
        })
        .fold(0u64, |g, c| g.gcd(&c.unsigned_abs()))
}

impl Check {
    pub fn run(&self, limits: &Limits) -> CheckOutcome {
        match self {
            Check::Holonomy { sheaf, cocycle, expected } => {
                let g = sheaf.group().expect("constant sheaf");
                outcome(
                    "holonomy".into(),
                    g.render_all(expected),
                    holonomy(sheaf, cocycle, 0).map(|h| g.render_all(&h.holonomies)),
                )
            }
            Check::Trivial { sheaf, cocycle, expected } => outcome(
                "triviality".into(),
                yes_no(*expected, "trivial", "non-trivial"),
                is_coboundary(sheaf, cocycle).map(|w| yes_no(w.is_some(), "trivial", "non-trivial")),
            ),
            Check::HolonomyGcd { paradox, expected } => outcome(
                "holonomy gcd".into(),
                expected.to_string(),
                Ok(paradox.holonomy().map_or("no holonomy".into(), |h| gcd_of(&h.holonomies).to_string())),
            ),
            Check::HolonomyPower { sheaf, cocycle, power, expected } => {
                let g = sheaf.group().expect("constant sheaf");
                let computed = holonomy(sheaf, cocycle, 0).and_then(|h| {
                    let first = h.holonomies.first().cloned().unwrap_or_else(|| g.identity());
                    Ok(g.render(&g.pow(&first, *power)?))
                });
                outcome(format!("holonomy^{power}"), g.render(expected), computed)
            }
            Check::Transport { sheaf, cocycle, walk, start, expected } => {
                let g = sheaf.vertex_stalk(walk.start);
                let computed = torsor_from_cocycle(sheaf, cocycle)
                    .and_then(|t| transport(&t, walk, start))
                    .map(|p| g.render(&p));
                outcome(
                    format!("transport {} from {}", walk.display(sheaf.graph()), g.render(start)),
                    g.render(expected),
                    computed,
                )
            }
            Check::Presentation { group, relator, images, expected } => outcome(
                format!("relator {relator}"),
                yes_no(*expected, "satisfied", "violated"),
                validate_presentation_rep(group, std::slice::from_ref(relator), images)
                    .map(|ok| yes_no(ok, "satisfied", "violated")),
            ),
            Check::Boundary { graph, group, boundary, beta, expected } => {
                let render = |inv: &Option<Vec<GroupElement>>| match inv {
                    None => "extends".to_string(),
                    Some(xs) => format!("obstructed {}", group.render_all(xs)),
                };
                let computed = boundary_obstruction(graph, group, boundary, beta).map(|o| match o {
                    BoundaryOutcome::Extends(_) => render(&None),
                    BoundaryOutcome::Obstructed { invariant, .. } => render(&Some(invariant)),
                });
                outcome(format!("boundary {}", group.render_all(beta)), render(expected), computed)
            }
            Check::TreeOrbits { tree, group, expected } => {
                let computed = enumerate_automorphisms_bounded(tree, limits.automorphism_vertices)
                    .and_then(|auts| classify_tree_boundary(tree, &tree.leaves(), group, &auts, limits))
                    .map(|c| c.orbit_count.to_string());
                outcome("non-trivial orbits".into(), expected.to_string(), computed)
            }
            Check::IsoClasses { paradoxes, expected } => {
                outcome("isomorphism classes".into(), expected.to_string(), iso_class_count(paradoxes, limits))
            }
            Check::Isomorphic { a, b, expected } => {
                let computed = match are_isomorphic(a, b, limits) {
                    IsoVerdict::Isomorphic { .. } => Ok("isomorphic".to_string()),
                    IsoVerdict::NotIsomorphic { .. } => Ok("not isomorphic".to_string()),
                    IsoVerdict::Undecided { reason } => Ok(format!("undecided ({reason})")),
                };
                outcome(
                    format!("{} vs {}", a.name(), b.name()),
                    yes_no(*expected, "isomorphic", "not isomorphic"),
                    computed,
                )
            }
            Check::FiberEquivalent { a, b, phi, psi, expected } => outcome(
                format!("{} ~ {} via {} / {}", a.name(), b.name(), phi.describe(), psi.describe()),
                yes_no(*expected, "fiber-equivalent", "not fiber-equivalent"),
                fiber_equivalent(a, b, phi, psi).map(|ok| yes_no(ok, "fiber-equivalent", "not fiber-equivalent")),
            ),
            Check::FiberSearch { a, b, expected } => outcome(
                format!("search {} ~ {}", a.name(), b.name()),
                yes_no(*expected, "pair found", "no pair"),
                search_fiber_equivalence(a, b, limits).map(|s| yes_no(s.pair.is_some(), "pair found", "no pair")),
            ),
            Check::Morphism { morphism, source, target, expected } => outcome(
                format!("{} -> {}: {}", source.name(), target.name(), morphism),
                yes_no(*expected, "coherent", "incoherent"),
                check_morphism(morphism, source, target).map(|c| yes_no(c.holds(), "coherent", "incoherent")),
            ),
        }
    }
}

fn iso_class_count(paradoxes: &[Paradox], limits: &Limits) -> Result<String> {
    let mut reps: Vec<&Paradox> = Vec::new();
    for p in paradoxes {
        let mut placed = false;
        for r in &reps {
            match are_isomorphic(p, r, limits) {
                IsoVerdict::Isomorphic { .. } => {
                    placed = true;
                    break;
                }
                IsoVerdict::NotIsomorphic { .. } => {}
                IsoVerdict::Undecided { reason } => return Ok(format!("undecided ({reason})")),
            }
        }
        if !placed {
            reps.push(p);
        }
    }
    Ok(reps.len().to_string())
}

#[derive(Clone, Debug)]
pub struct GalleryEntry {
    pub name: String,
    /// Source example and modeling choices.
    pub note: String,
    pub checks: Vec<Check>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryReport {
    pub name: String,
    pub note: String,
    pub checks: Vec<CheckOutcome>,
}

impl EntryReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GalleryReport {
    pub entries: Vec<EntryReport>,
}

impl GalleryReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(EntryReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &EntryReport> {
        self.entries.iter().filter(|e| !e.passed())
    }
}

impl fmt::Display for GalleryReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for e in &self.entries {
            writeln!(f, "{} {}", if e.passed() { "PASS" } else { "FAIL" }, e.name)?;
            for c in &e.checks {
                if c.passed {
                    writeln!(f, "    ok   {}: {}", c.label, c.computed)?;
                } else {
                    writeln!(f, "    FAIL {}: expected {}, computed {}", c.label, c.expected, c.computed)?;
                }
            }
        }
        let failed = self.failures().count();
        write!(f, "{} entries, {} failed", self.entries.len(), failed)
    }
}

pub fn run_gallery(entries: &[GalleryEntry], limits: &Limits) -> GalleryReport {
    GalleryReport {
        entries: entries
            .iter()
            .map(|e| EntryReport {
                name: e.name.clone(),
                note: e.note.clone(),
                checks: e.checks.iter().map(|c| c.run(limits)).collect(),
            })
            .collect(),
    }
}

// ---------------------------------------------------------------------------
// Built-in examples

fn z() -> GroupDescriptor {
    GroupDescriptor::integers()
}

fn ints(values: &[i64]) -> Cochain1 {
    Cochain1(values.iter().map(|&n| GroupElement::scalar(n)).collect())
}

fn signs(values: &[i64]) -> Cochain1 {
    Cochain1(values.iter().map(|&s| GroupElement::Residue(u64::from(s < 0))).collect())
}

fn dihedral(h: i64, eps: i64) -> GroupElement {
    GroupElement::dihedral(h, eps)
}

fn constant(graph: &Multigraph, group: &GroupDescriptor) -> NetworkSheaf {
    NetworkSheaf::constant(graph, group).expect("valid group")
}

fn paradox(name: &str, graph: &Multigraph, group: &GroupDescriptor, cocycle: Cochain1) -> Paradox {
    Paradox::constant(name, graph, group, cocycle).expect("built-in example is non-trivial")
}

fn loop_walk(petals: &[(usize, Direction)]) -> Walk {
    Walk {
        start: 0,
        steps: petals.to_vec(),
    }
}

/// Holonomy and non-triviality of a constant-sheaf paradox.
fn loop_checks(p: &Paradox, expected: Vec<GroupElement>) -> Vec<Check> {
    let sheaf = p.sheaf().clone();
    let cocycle = p.cocycle().clone();
    vec![
        Check::Holonomy { sheaf: sheaf.clone(), cocycle: cocycle.clone(), expected },
        Check::Trivial { sheaf, cocycle, expected: false },
    ]
}

fn penrose_paradox() -> Paradox {
    paradox("penrose_staircase", &Multigraph::cycle(4), &z(), ints(&[1, 1, 1, 1]))
}

/// Closed walk of unit steps in `Z^3` whose net displacement is `h`.
pub fn cubic_staircase(name: &str, h: [i64; 3]) -> Paradox {
    let mut steps = Vec::new();
    for (axis, &c) in h.iter().enumerate() {
        for _ in 0..c.unsigned_abs() {
            let mut v = vec![0; 3];
            v[axis] = c.signum();
            steps.push(GroupElement::Vector(v));
        }
    }
    let graph = Multigraph::cycle(steps.len());
    paradox(name, &graph, &GroupDescriptor::FreeAbelian(3), Cochain1(steps))
}

pub const CUBIC_HOLONOMIES: [[i64; 3]; 8] = [
    [2, 2, 2],
    [1, 1, 1],
    [1, 1, 1],
    [4, 4, 4],
    [-2, -2, -1],
    [-2, -2, -1],
    [2, 2, 1],
    [2, 2, 1],
];

pub fn cubic_staircases() -> Vec<Paradox> {
    CUBIC_HOLONOMIES
        .iter()
        .enumerate()
        .map(|(i, h)| cubic_staircase(&format!("cubic_staircase_{}", i + 1), *h))
        .collect()
}

pub fn torus(da: i64, db: i64) -> Paradox {
    paradox(&format!("torus_{da}_{db}"), &Multigraph::rose(2), &z(), ints(&[da, db]))
}

/// Three flights of stairs: two level ones and a descent that flips
/// orientation, closing after one twisted step of height `delta`.
pub fn mobius(delta: i64) -> Paradox {
    paradox(
        &format!("mobius_{delta}"),
        &Multigraph::cycle(3),
        &GroupDescriptor::InfiniteDihedral,
        Cochain1(vec![dihedral(0, 1), dihedral(delta, 1), dihedral(0, -1)]),
    )
}

/// Same class on the representative loop through the cross-cap, drawn
/// with the reflection on the first flight instead of the last.
pub fn rp2(delta: i64) -> Paradox {
    paradox(
        &format!("rp2_{delta}"),
        &Multigraph::cycle(3),
        &GroupDescriptor::InfiniteDihedral,
        Cochain1(vec![dihedral(0, -1), dihedral(-delta, 1), dihedral(0, 1)]),
    )
}

pub fn klein(delta: i64) -> Paradox {
    paradox(
        &format!("klein_{delta}"),
        &Multigraph::rose(2),
        &GroupDescriptor::InfiniteDihedral,
        Cochain1(vec![dihedral(delta, -1), dihedral(delta, 1)]),
    )
}

/// Generator images `a ↦ (Δ, -1)`, `b ↦ (Δ, +1)`.
pub fn klein_images(delta: i64) -> BTreeMap<String, GroupElement> {
    BTreeMap::from([("a".to_string(), dihedral(delta, -1)), ("b".to_string(), dihedral(delta, 1))])
}

pub fn klein_relator() -> Word {
    parse_word("a b a^-1 b").expect("well-formed")
}

pub fn torus_relator() -> Word {
    parse_word("a b a^-1 b^-1").expect("well-formed")
}

/// Cycle of `n` flights each flipping the `Z/2` orientation.
pub fn zigzag(n: usize) -> (NetworkSheaf, Cochain1) {
    let graph = Multigraph::cycle(n);
    (constant(&graph, &GroupDescriptor::Cyclic(2)), signs(&vec![-1; n]))
}

fn zigzag_entry(n: usize) -> GalleryEntry {
    let (sheaf, cocycle) = zigzag(n);
    let sign = if n.is_multiple_of(2) { 0 } else { 1 };
    GalleryEntry {
        name: format!("zigzag_{n}"),
        note: format!("C{n} over Z/2, every edge reverses orientation; trivial iff n is even"),
        checks: vec![
            Check::Holonomy {
                sheaf: sheaf.clone(),
                cocycle: cocycle.clone(),
                expected: vec![GroupElement::Residue(sign)],
            },
            Check::Trivial { sheaf, cocycle, expected: n.is_multiple_of(2) },
        ],
    }
}

fn necker_entry(n: usize) -> GalleryEntry {
    let graph = Multigraph::path(n);
    let group = GroupDescriptor::Cyclic(2);
    let boundary = vec![0, n - 1];
    let beta = vec![GroupElement::Residue(0), GroupElement::Residue(1)];
    let p = Paradox::from_boundary(format!("necker_path_{n}"), &graph, &group, &boundary, &beta)
        .expect("opposite endpoint readings are obstructed");
    GalleryEntry {
        name: format!("necker_path_{n}"),
        note: format!("P{n} over Z/2, endpoints read +1 and -1"),
        checks: vec![
            Check::Boundary {
                graph: graph.clone(),
                group: group.clone(),
                boundary: boundary.clone(),
                beta: vec![GroupElement::Residue(1); 2],
                expected: None,
            },
            Check::Boundary {
                graph,
                group,
                boundary,
                beta,
                expected: Some(vec![GroupElement::Residue(1)]),
            },
            Check::Trivial { sheaf: p.sheaf().clone(), cocycle: p.cocycle().clone(), expected: false },
        ],
    }
}

fn impossible_bar_entry() -> GalleryEntry {
    let cube: TableGroup = cube_rotation_group();
    let quarter = GroupElement::Index(cube.index_of("(-y,x,z)").expect("quarter turn"));
    let identity = GroupElement::Index(cube.identity());
    let group = GroupDescriptor::table(cube);
    GalleryEntry {
        name: "impossible_bar".into(),
        note: "P3 with end viewpoints in the rotation group of the cube, a finite stand-in for SO(3); \
               the ends differ by a quarter turn about z"
            .into(),
        checks: vec![Check::Boundary {
            graph: Multigraph::path(3),
            group,
            boundary: vec![0, 2],
            beta: vec![identity, quarter.clone()],
            expected: Some(vec![quarter]),
        }],
    }
}

fn star_entry(n: usize) -> GalleryEntry {
    GalleryEntry {
        name: format!("star_tree_{n}"),
        note: format!("star with {n} leaves over Z/2 up to tree automorphisms; floor(N/2) orbits"),
        checks: vec![Check::TreeOrbits {
            tree: Multigraph::star(n),
            group: GroupDescriptor::Cyclic(2),
            expected: n / 2,
        }],
    }
}

fn penrose_triangle_entry() -> GalleryEntry {
    let c3 = Multigraph::cycle(3);
    let c4 = Multigraph::cycle(4);
    let z3 = GroupDescriptor::FreeAbelian(3);
    let v = |x: &[i64]| GroupElement::Vector(x.to_vec());
    let triple = paradox("triangle_z3", &c3, &z3, Cochain1(vec![v(&[2, 4, 6]), v(&[0, 0, 0]), v(&[0, 0, 0])]));
    let height = paradox("triangle_height", &c3, &z(), ints(&[2, 0, 0]));
    let phi = Homomorphism::from_matrix(3, 1, &[vec![-1, 1, 0]]).expect("valid matrix");
    let psi = Homomorphism::from_matrix(1, 3, &[vec![1], vec![2], vec![3]]).expect("valid matrix");
    // Scale lattice {e^k}: multiplication of scales is addition of exponents.
    let scale = paradox("triangle_scale", &c3, &GroupDescriptor::FreeAbelian(1), ints(&[0, 2, 0]));
    let occlusion = paradox("triangle_occlusion", &c3, &GroupDescriptor::Cyclic(2), signs(&[-1, 1, 1]));
    let z2 = paradox("loop_z2", &c4, &GroupDescriptor::Cyclic(2), signs(&[-1, 1, 1, 1]));
    let z3_loop = paradox(
        "loop_z3",
        &c4,
        &GroupDescriptor::Cyclic(3),
        Cochain1(vec![GroupElement::Residue(1), GroupElement::Residue(0), GroupElement::Residue(0), GroupElement::Residue(0)]),
    );
    let z4_loop = paradox(
        "loop_z4",
        &c4,
        &GroupDescriptor::Cyclic(4),
        Cochain1(vec![GroupElement::Residue(2), GroupElement::Residue(0), GroupElement::Residue(0), GroupElement::Residue(0)]),
    );
    let double = Homomorphism::new(GroupDescriptor::Cyclic(2), GroupDescriptor::Cyclic(4), vec![GroupElement::Residue(2)])
        .expect("order divides 2");
    let parity = Homomorphism::new(GroupDescriptor::Cyclic(4), GroupDescriptor::Cyclic(2), vec![GroupElement::Residue(1)])
        .expect("reduction mod 2");
    GalleryEntry {
        name: "penrose_triangle_family".into(),
        note: "Z^3 holonomy (2,4,6) against Z holonomy 2; height against the multiplicative scale lattice \
               written by exponents; Z/2 occlusion against Z and Z/3. The Z/2 and Z/4 loops are not \
               fiber-equivalent: every map Z/4 -> Z/2 kills 2."
            .into(),
        checks: vec![
            Check::FiberEquivalent {
                a: triple,
                b: height.clone(),
                phi,
                psi,
                expected: true,
            },
            Check::Isomorphic { a: height.clone(), b: scale, expected: true },
            Check::FiberSearch { a: occlusion, b: height, expected: false },
            Check::FiberSearch { a: z2.clone(), b: z3_loop, expected: false },
            Check::FiberEquivalent { a: z2.clone(), b: z4_loop.clone(), phi: double, psi: parity, expected: false },
            Check::FiberSearch { a: z2, b: z4_loop, expected: false },
        ],
    }
}

fn star_fiber_entry() -> GalleryEntry {
    let star = Multigraph::star(4);
    let leaves = star.leaves();
    let r = GroupElement::Residue;
    let z2 = GroupDescriptor::Cyclic(2);
    let z4 = GroupDescriptor::Cyclic(4);
    let a = Paradox::from_boundary("star_z2", &star, &z2, &leaves, &[r(0), r(0), r(1), r(1)]).expect("obstructed");
    let b = Paradox::from_boundary("star_z4", &star, &z4, &leaves, &[r(0), r(1), r(2), r(3)]).expect("obstructed");
    let double = Homomorphism::new(z2.clone(), z4.clone(), vec![r(2)]).expect("order divides 2");
    let parity = Homomorphism::new(z4, z2, vec![r(1)]).expect("reduction mod 2");
    GalleryEntry {
        name: "star_fiber_z2_z4".into(),
        note: "star T4 with Z/2 data (+1,+1,-1,-1) against Z/4 data (0,1,2,3); doubling and parity do not \
               carry the classes onto each other and no other pair does"
            .into(),
        checks: vec![
            Check::FiberEquivalent { a: a.clone(), b: b.clone(), phi: double, psi: parity, expected: false },
            Check::FiberSearch { a, b, expected: false },
        ],
    }
}

pub fn builtin_gallery() -> Vec<GalleryEntry> {
    let mut entries = Vec::new();

    let penrose = penrose_paradox();
    entries.push(GalleryEntry {
        name: "penrose_staircase".into(),
        note: "C4 over Z, step heights pinned to 1 each; class k = 4".into(),
        checks: loop_checks(&penrose, vec![GroupElement::scalar(4)]),
    });

    let cubics = cubic_staircases();
    for (p, h) in cubics.iter().zip(CUBIC_HOLONOMIES) {
        let mut checks = loop_checks(p, vec![GroupElement::Vector(h.to_vec())]);
        checks.push(Check::HolonomyGcd {
            paradox: p.clone(),
            expected: h.iter().fold(0, |g, c| num_integer::gcd(g, c.unsigned_abs())),
        });
        entries.push(GalleryEntry {
            name: p.name().to_string(),
            note: "cycle of unit steps in Z^3 with the listed net displacement".into(),
            checks,
        });
    }
    entries.push(GalleryEntry {
        name: "cubic_classification".into(),
        note: "the eight cubic staircases up to isomorphism; gcds 1, 2 and 4".into(),
        checks: vec![
            Check::IsoClasses { paradoxes: cubics.clone(), expected: 3 },
            Check::Isomorphic { a: cubics[6].clone(), b: cubics[4].clone(), expected: true },
            Check::Isomorphic { a: cubics[0].clone(), b: cubics[3].clone(), expected: false },
        ],
    });

    // Four climbing flights and a level seam where the cylinder is glued.
    let cylindrical = paradox("cylindrical", &Multigraph::cycle(5), &z(), ints(&[1, 1, 1, 1, 0]));
    let mut checks = loop_checks(&cylindrical, vec![GroupElement::scalar(4)]);
    checks.push(Check::Isomorphic { a: cylindrical, b: penrose.clone(), expected: true });
    entries.push(GalleryEntry {
        name: "cylindrical".into(),
        note: "C5 over Z: four unit climbs and a level seam; same class as the Penrose staircase".into(),
        checks,
    });

    for n in [3, 4, 5] {
        entries.push(zigzag_entry(n));
    }

    for (da, db, note) in [
        (1, 1, "rose(2) over Z, one unit along each loop"),
        (3, 2, "rose(2) over Z; loop a is the vertical loop (3 units), loop b the horizontal one (2 units)"),
        (1, 0, "rose(2) over Z, only loop a climbs"),
    ] {
        let t = torus(da, db);
        let mut checks = loop_checks(&t, vec![GroupElement::scalar(da), GroupElement::scalar(db)]);
        if (da, db) == (1, 0) {
            let rose = Multigraph::rose(2);
            let circle = paradox("circle", &Multigraph::rose(1), &z(), ints(&[1]));
            let petal = GraphMap::new(&Multigraph::rose(1), &rose, vec![0], vec![loop_walk(&[(0, Direction::Forward)])])
                .expect("petal inclusion");
            checks.push(Check::Morphism {
                morphism: ParadoxMorphism { map: petal, hom: Homomorphism::identity(&z()) },
                source: circle,
                target: t.clone(),
                expected: true,
            });
            let wrap = GraphMap::new(
                penrose.graph(),
                &rose,
                vec![0; 4],
                vec![loop_walk(&[(0, Direction::Forward)]); 4],
            )
            .expect("every flight onto the first petal");
            checks.push(Check::Morphism {
                morphism: ParadoxMorphism { map: wrap, hom: Homomorphism::identity(&z()) },
                source: penrose.clone(),
                target: t.clone(),
                expected: true,
            });
        }
        entries.push(GalleryEntry { name: t.name().to_string(), note: note.into(), checks });
    }

    let (m, r) = (mobius(1), rp2(1));
    for p in [&m, &r] {
        let mut checks = loop_checks(p, vec![dihedral(1, -1)]);
        checks.push(Check::HolonomyPower {
            sheaf: p.sheaf().clone(),
            cocycle: p.cocycle().clone(),
            power: 2,
            expected: dihedral(0, 1),
        });
        let once = Walk {
            start: 0,
            steps: (0..3).map(|e| (e, Direction::Forward)).collect(),
        };
        let twice = once.concat(&once, p.graph()).expect("closed walk");
        checks.push(Check::Transport {
            sheaf: p.sheaf().clone(),
            cocycle: p.cocycle().clone(),
            walk: twice,
            start: dihedral(5, -1),
            expected: dihedral(5, -1),
        });
        entries.push(GalleryEntry {
            name: p.name().to_string(),
            note: "C3 over Z ⋊ Z/2, holonomy (1,-1): one unit of height with a reflection".into(),
            checks,
        });
    }
    entries.push(GalleryEntry {
        name: "mobius_rp2".into(),
        note: "the Mobius and projective plane staircases carry the same class".into(),
        checks: vec![Check::Isomorphic { a: m, b: r, expected: true }],
    });

    let k = klein(1);
    let (ab, ba) = (
        loop_walk(&[(0, Direction::Forward), (1, Direction::Forward)]),
        loop_walk(&[(1, Direction::Forward), (0, Direction::Forward)]),
    );
    let g = GroupDescriptor::InfiniteDihedral;
    let mut checks = loop_checks(&k, vec![dihedral(1, -1), dihedral(1, 1)]);
    checks.extend([
        Check::Transport {
            sheaf: k.sheaf().clone(),
            cocycle: k.cocycle().clone(),
            walk: ab,
            start: g.identity(),
            expected: dihedral(0, -1),
        },
        Check::Transport {
            sheaf: k.sheaf().clone(),
            cocycle: k.cocycle().clone(),
            walk: ba,
            start: g.identity(),
            expected: dihedral(2, -1),
        },
        Check::Presentation { group: g.clone(), relator: klein_relator(), images: klein_images(1), expected: true },
        Check::Presentation { group: g, relator: torus_relator(), images: klein_images(1), expected: false },
    ]);
    entries.push(GalleryEntry {
        name: "klein_1".into(),
        note: "rose(2) over Z ⋊ Z/2 with a ↦ (1,-1), b ↦ (1,+1)".into(),
        checks,
    });

    entries.push(necker_entry(5));
    entries.push(impossible_bar_entry());
    for n in 2..=6 {
        entries.push(star_entry(n));
    }
    entries.push(star_fiber_entry());
    entries.push(penrose_triangle_entry());
    entries
}
