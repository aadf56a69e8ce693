//! Library side of the `paradox` command: spec parsing and one function per
//! subcommand, each producing a [`Report`] with human and machine forms.

pub mod spec;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_integer::Integer;
use paradox_core::gallery::{builtin_gallery, run_gallery, GalleryReport};
use paradox_core::graph::{enumerate_automorphisms_bounded, Walk};
use paradox_core::groups::{GroupDescriptor, GroupElement, Sign};
use paradox_core::limits::Limits;
use paradox_core::paradox::{
    are_isomorphic, check_morphism, classify_tree_boundary, fiber_equivalent, search_fiber_equivalence,
    IsoVerdict, Paradox,
};
use paradox_core::sheaf::{
    abelian_cohomology, boundary_obstruction, holonomy, tree_relative_invariant, BoundaryOutcome, NetworkSheaf,
};
use paradox_core::torsor::{global_sections, torsor_from_cocycle, transport};
use paradox_core::{AbelianCohomology, Int};
use serde_json::{json, Value};
use thiserror::Error;

use spec::{encode_element, load_comparison, load_spec, Comparison, ParadoxSpec};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: serde_json::Error },
    #[error("{}: field `{field}`: {message}", path.display())]
    Invalid { path: PathBuf, field: String, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] paradox_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        2
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Machine,
}

/// Rendered result of one command.
#[derive(Clone, Debug)]
pub struct Report {
    pub human: String,
    pub machine: Value,
    /// 0 on success, 1 when the gallery has mismatches, 3 when a required
    /// decision came back undecided.
    pub exit_code: i32,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human.clone(),
            Format::Machine => serde_json::to_string_pretty(&self.machine).expect("JSON values serialize"),
        }
    }
}

fn encode_all(g: &GroupDescriptor, xs: &[GroupElement]) -> Value {
    Value::Array(xs.iter().map(|x| encode_element(g, x)).collect())
}

fn section_json(sheaf: &NetworkSheaf, xs: &[GroupElement]) -> Value {
    let graph = sheaf.graph();
    xs.iter()
        .enumerate()
        .map(|(v, x)| (graph.vertex_id(v).to_string(), encode_element(sheaf.vertex_stalk(v), x)))
        .collect::<serde_json::Map<_, _>>()
        .into()
}

fn gcd(xs: &[GroupElement]) -> u64 {
    xs.iter()
        .flat_map(|x| match x {
            GroupElement::Vector(v) => v.clone(),
            _ => vec![],
        })
        .fold(0, |g: u64, c| g.gcd(&c.unsigned_abs()))
}

pub fn analyze(path: &Path, basepoint: Option<&str>) -> Result<Report, CliError> {
    let spec = load_spec(path)?;
    match (&spec.cocycle, &spec.boundary_values) {
        (Some(_), None) => analyze_cocycle(&spec, basepoint),
        (None, Some(beta)) => analyze_boundary(&spec, beta),
        _ => Err(CliError::Invalid {
            path: path.to_path_buf(),
            field: "cocycle".into(),
            message: "give exactly one of `cocycle` and `boundary_values`".into(),
        }),
    }
}

fn analyze_cocycle(spec: &ParadoxSpec, basepoint: Option<&str>) -> Result<Report, CliError> {
    let sheaf = &spec.sheaf;
    let eta = spec.cocycle.as_ref().expect("checked by caller");
    let graph = sheaf.graph();
    let g = &spec.group;
    let b1 = graph.betti_number();
    let mut out = String::new();
    let mut machine = json!({ "command": "analyze", "name": spec.name, "b1": b1 });
    writeln!(out, "{}: {} over {}", spec.name, graph_summary(spec), g).unwrap();
    writeln!(out, "b1 = {b1}").unwrap();

    let torsor = torsor_from_cocycle(sheaf, eta)?;
    let section = global_sections(&torsor)?;
    let trivial = section.is_some();

    let mut summary = if trivial { "trivial".to_string() } else { "non-trivial".to_string() };
    if sheaf.boundary().is_empty() {
        let root = match basepoint {
            Some(id) => graph.vertex(id)?,
            None => 0,
        };
        let hol = holonomy(sheaf, eta, root)?;
        let names: Vec<String> = hol
            .tree
            .non_tree_edges(graph)
            .into_iter()
            .map(|e| graph.edge(e).id.clone())
            .collect();
        writeln!(out, "holonomy at {}:", graph.vertex_id(root)).unwrap();
        let mut cycles = Vec::new();
        for ((name, walk), h) in names.iter().zip(&hol.cycles).zip(&hol.holonomies) {
            writeln!(out, "  {name}: {}  along {}", g.render(h), walk.display(graph)).unwrap();
            cycles.push(json!({ "cycle": name, "walk": walk.display(graph).to_string(), "holonomy": encode_element(g, h) }));
        }
        machine["basepoint"] = json!(graph.vertex_id(root));
        machine["holonomy"] = Value::Array(cycles);

        let mut invariants = serde_json::Map::new();
        match g {
            GroupDescriptor::FreeAbelian(n) => {
                let d = gcd(&hol.holonomies);
                invariants.insert("gcd".into(), json!(d));
                writeln!(out, "gcd of holonomy coordinates = {d}").unwrap();
                if *n == 1 && b1 == 1 && !trivial {
                    summary = format!("non-trivial, class k = {} in H¹(S¹;ℤ)", g.render(&hol.holonomies[0]));
                } else if !trivial {
                    summary = format!("non-trivial, class {} in H¹ ≅ ℤ^{}", g.render_all(&hol.holonomies), n * b1);
                }
            }
            GroupDescriptor::Cyclic(2) => {
                let parity: Vec<&str> = hol
                    .holonomies
                    .iter()
                    .map(|h| if g.is_identity(h) { "even" } else { "odd" })
                    .collect();
                writeln!(out, "parity of orientation flips: {}", parity.join(", ")).unwrap();
                invariants.insert("parity".into(), json!(parity));
            }
            GroupDescriptor::InfiniteDihedral => {
                let mut parts = Vec::new();
                for (name, h) in names.iter().zip(&hol.holonomies) {
                    if let GroupElement::Dihedral { h: height, eps } = h {
                        let orientation = if *eps == Sign::Plus { "preserved" } else { "reversed" };
                        writeln!(out, "  {name}: height {height}, orientation {orientation}").unwrap();
                        parts.push(json!({ "cycle": name, "height": height, "orientation": orientation }));
                    }
                }
                invariants.insert("decomposition".into(), Value::Array(parts));
            }
            _ => {}
        }
        if !g.is_abelian() && b1 >= 2 {
            if let Some(w) = noncommuting_pair(sheaf, &torsor, &hol.cycles, &names, g)? {
                writeln!(out, "non-abelian: {}", w.0).unwrap();
                invariants.insert("noncommuting".into(), w.1);
            } else {
                writeln!(out, "holonomies commute").unwrap();
            }
        }
        machine["invariants"] = Value::Object(invariants);
    } else if graph.is_tree() && sheaf.boundary() == graph.leaves().as_slice() {
        let inv = tree_relative_invariant(sheaf, eta)?;
        let root = graph.vertex_id(sheaf.boundary()[0]);
        writeln!(out, "relative invariant from {root}: {}", g.render_all(&inv)).unwrap();
        machine["relative_invariant"] = json!({ "root": root, "values": encode_all(g, &inv) });
    }

    match &section {
        Some(s) => {
            writeln!(out, "trivial, global section: {}", sheaf.render_c0(s)).unwrap();
            machine["global_section"] = section_json(sheaf, &s.0);
        }
        None => writeln!(out, "no global section").unwrap(),
    }
    writeln!(out, "{summary}").unwrap();
    machine["trivial"] = json!(trivial);
    machine["summary"] = json!(summary);
    Ok(Report { human: out, machine, exit_code: 0 })
}

/// First pair of fundamental cycles whose transports from the identity
/// disagree in the two orders.
fn noncommuting_pair(
    sheaf: &NetworkSheaf,
    torsor: &paradox_core::torsor::Torsor,
    cycles: &[Walk],
    names: &[String],
    g: &GroupDescriptor,
) -> Result<Option<(String, Value)>, CliError> {
    let graph = sheaf.graph();
    for i in 0..cycles.len() {
        for j in i + 1..cycles.len() {
            let ij = cycles[i].concat(&cycles[j], graph)?;
            let ji = cycles[j].concat(&cycles[i], graph)?;
            let p = g.identity();
            let (x, y) = (transport(torsor, &ij, &p)?, transport(torsor, &ji, &p)?);
            if x != y {
                let (a, b) = (&names[i], &names[j]);
                let text = format!(
                    "transport({a}{b}) = {} ≠ transport({b}{a}) = {}",
                    g.render(&x),
                    g.render(&y)
                );
                let record = json!({
                    "first": a, "second": b,
                    "forward": encode_element(g, &x), "backward": encode_element(g, &y),
                });
                return Ok(Some((text, record)));
            }
        }
    }
    Ok(None)
}

fn graph_summary(spec: &ParadoxSpec) -> String {
    let graph = spec.graph();
    let kind = if spec.sheaf.boundary().is_empty() { "constant sheaf" } else { "boundary-trivialized sheaf" };
    format!("{} vertices, {} edges, {kind}", graph.vertex_count(), graph.edge_count())
}

fn analyze_boundary(spec: &ParadoxSpec, beta: &[GroupElement]) -> Result<Report, CliError> {
    let graph = spec.graph();
    let g = &spec.group;
    let boundary = spec.sheaf.boundary();
    let mut out = String::new();
    writeln!(out, "{}: {} over {}", spec.name, graph_summary(spec), g).unwrap();
    let mut machine = json!({ "command": "analyze", "name": spec.name, "b1": graph.betti_number() });
    match boundary_obstruction(graph, g, boundary, beta)? {
        BoundaryOutcome::Extends(section) => {
            let constant = NetworkSheaf::constant(graph, g)?;
            writeln!(out, "trivial, global section: {}", constant.render_c0(&section)).unwrap();
            machine["trivial"] = json!(true);
            machine["global_section"] = section_json(&constant, &section.0);
            machine["summary"] = json!("trivial");
        }
        BoundaryOutcome::Obstructed { invariant, .. } => {
            let root = boundary.iter().copied().min().expect("at least one boundary vertex");
            writeln!(out, "obstructed, relative invariant from {}: {}", graph.vertex_id(root), g.render_all(&invariant))
                .unwrap();
            writeln!(out, "non-trivial").unwrap();
            machine["trivial"] = json!(false);
            machine["relative_invariant"] = json!({ "root": graph.vertex_id(root), "values": encode_all(g, &invariant) });
            machine["summary"] = json!("non-trivial");
        }
    }
    Ok(Report { human: out, machine, exit_code: 0 })
}

fn iso_record(v: &IsoVerdict) -> (String, Value) {
    match v {
        IsoVerdict::Isomorphic { witness, method } => (
            format!("isomorphic ({}) [decided by {method}]", witness.description),
            json!({
                "verdict": "isomorphic",
                "witness": { "description": witness.description, "morphism": witness.morphism.to_string() },
                "decider": method.to_string(),
            }),
        ),
        IsoVerdict::NotIsomorphic { invariant, method } => (
            format!("not isomorphic: {invariant} [decided by {method}]"),
            json!({ "verdict": "not_isomorphic", "invariant": invariant, "decider": method.to_string() }),
        ),
        IsoVerdict::Undecided { reason } => (
            format!("undecided: {reason}"),
            json!({ "verdict": "undecided", "reason": reason }),
        ),
    }
}

pub fn compare(a: &Path, b: &Path, morphism: Option<&Path>, limits: &Limits) -> Result<Report, CliError> {
    let (sa, sb) = (load_spec(a)?, load_spec(b)?);
    let pa = sa.paradox().map_err(|e| spec::at_path(e, a))?;
    let pb = sb.paradox().map_err(|e| spec::at_path(e, b))?;
    let mut out = String::new();
    writeln!(out, "{} vs {}", pa.name(), pb.name()).unwrap();
    let mut records = Vec::new();
    let mut exit_code = 0;
    match morphism.map(|m| load_comparison(m, &sa, &sb)).transpose()? {
        None => {
            let verdict = are_isomorphic(&pa, &pb, limits);
            let (text, record) = iso_record(&verdict);
            writeln!(out, "{text}").unwrap();
            records.push(record);
            if !verdict.is_decided() {
                exit_code = 3;
            }
            if pa.graph() == pb.graph() {
                let (text, record) = fiber_search_record(&pa, &pb, limits);
                writeln!(out, "{text}").unwrap();
                records.push(record);
            }
        }
        Some(Comparison::Fiber { phi, psi }) => {
            let ok = fiber_equivalent(&pa, &pb, &phi, &psi)?;
            let verdict = if ok { "fiber_equivalent" } else { "not_fiber_equivalent" };
            writeln!(out, "{} via {} and {}", verdict.replace('_', "-"), phi, psi).unwrap();
            records.push(json!({
                "verdict": verdict,
                "witness": { "phi": phi.to_string(), "psi": psi.to_string() },
                "decider": "supplied homomorphisms",
            }));
        }
        Some(Comparison::Path { forward, backward }) => {
            let f = check_morphism(&forward, &pa, &pb)?.holds();
            writeln!(out, "{} -> {}: {} ({forward})", pa.name(), pb.name(), coherent(f)).unwrap();
            let mut witness = json!({ "forward": forward.to_string() });
            let verdict = match &backward {
                Some(m) => {
                    let r = check_morphism(m, &pb, &pa)?.holds();
                    writeln!(out, "{} -> {}: {} ({m})", pb.name(), pa.name(), coherent(r)).unwrap();
                    witness["backward"] = json!(m.to_string());
                    if f && r { "path_equivalent" } else { "not_path_equivalent" }
                }
                None => if f { "coherent" } else { "incoherent" },
            };
            writeln!(out, "{}", verdict.replace('_', "-")).unwrap();
            records.push(json!({ "verdict": verdict, "witness": witness, "decider": "supplied morphisms" }));
        }
    }
    Ok(Report {
        human: out,
        machine: json!({ "command": "compare", "a": pa.name(), "b": pb.name(), "verdicts": records }),
        exit_code,
    })
}

fn coherent(ok: bool) -> &'static str {
    if ok { "coherent" } else { "incoherent" }
}

fn fiber_search_record(pa: &Paradox, pb: &Paradox, limits: &Limits) -> (String, Value) {
    match search_fiber_equivalence(pa, pb, limits) {
        Ok(s) => match &s.pair {
            Some((phi, psi)) => (
                format!("fiber-equivalent via {phi} and {psi} [decided by brute-force]"),
                json!({
                    "verdict": "fiber_equivalent",
                    "witness": { "phi": phi.to_string(), "psi": psi.to_string() },
                    "decider": "brute-force",
                }),
            ),
            None => {
                let count = |n: Option<usize>| n.map_or("not enumerable".to_string(), |n| n.to_string());
                let invariant = format!(
                    "homomorphisms examined: {} forward ({} carry the class), {} backward ({} carry the class)",
                    count(s.forward_examined),
                    count(s.forward_hits),
                    count(s.backward_examined),
                    count(s.backward_hits)
                );
                (
                    format!("not fiber-equivalent: {invariant} [decided by brute-force]"),
                    json!({ "verdict": "not_fiber_equivalent", "invariant": invariant, "decider": "brute-force" }),
                )
            }
        },
        Err(e) => {
            let reason = match e {
                paradox_core::Error::Undecided(r) => r,
                other => other.to_string(),
            };
            (
                format!("fiber equivalence undecided: {reason}"),
                json!({ "verdict": "undecided", "reason": reason }),
            )
        }
    }
}

pub fn cohomology(path: &Path) -> Result<Report, CliError> {
    let spec = load_spec(path)?;
    if !spec.sheaf.is_abelian() {
        return Err(CliError::Usage(format!(
            "{}: stalks of {} are non-abelian, so H¹ is only a pointed set; use `paradox analyze` for holonomy",
            path.display(),
            spec.group
        )));
    }
    let c: AbelianCohomology = abelian_cohomology::<Int>(&spec.sheaf)?;
    let mut out = String::new();
    writeln!(out, "{}: {}", spec.name, graph_summary(&spec)).unwrap();
    writeln!(out, "H0 = {}", c.h0).unwrap();
    writeln!(out, "H1 = {}", c.h1).unwrap();
    writeln!(out, "coboundary matrix: {} x {}", c.coboundary.rows(), c.coboundary.cols()).unwrap();
    let machine = json!({
        "command": "cohomology",
        "name": spec.name,
        "h0": { "rank": c.h0.rank, "torsion": c.h0.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(), "text": c.h0.to_string() },
        "h1": { "rank": c.h1.rank, "torsion": c.h1.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(), "text": c.h1.to_string() },
        "coboundary": { "rows": c.coboundary.rows(), "cols": c.coboundary.cols() },
    });
    Ok(Report { human: out, machine, exit_code: 0 })
}

pub fn classify_tree(path: &Path, limits: &Limits) -> Result<Report, CliError> {
    let spec = load_spec(path)?;
    let graph = spec.graph();
    let boundary = spec.sheaf.boundary();
    if boundary.is_empty() {
        return Err(CliError::Invalid {
            path: path.to_path_buf(),
            field: "sheaf".into(),
            message: "classify-tree needs a boundary_trivial sheaf listing the leaves".into(),
        });
    }
    let auts = enumerate_automorphisms_bounded(graph, limits.automorphism_vertices)?;
    let c = classify_tree_boundary(graph, boundary, &spec.group, &auts, limits)?;
    let g = &spec.group;
    let mut out = String::new();
    writeln!(out, "{}: {} boundary vertices over {}", spec.name, boundary.len(), g).unwrap();
    writeln!(out, "{} non-trivial orbits ({} assignments examined)", c.orbit_count, c.examined).unwrap();
    let mut reps = Vec::new();
    for (beta, size) in c.representatives.iter().zip(&c.orbit_sizes) {
        let parts: Vec<String> = boundary
            .iter()
            .zip(beta)
            .map(|(&v, x)| format!("{}={}", graph.vertex_id(v), g.render(x)))
            .collect();
        writeln!(out, "  {}  (orbit size {size})", parts.join(" ")).unwrap();
        let values: serde_json::Map<String, Value> = boundary
            .iter()
            .zip(beta)
            .map(|(&v, x)| (graph.vertex_id(v).to_string(), encode_element(g, x)))
            .collect();
        reps.push(json!({ "values": values, "orbit_size": size }));
    }
    let machine = json!({
        "command": "classify-tree",
        "name": spec.name,
        "orbit_count": c.orbit_count,
        "examined": c.examined,
        "representatives": reps,
    });
    Ok(Report { human: out, machine, exit_code: 0 })
}

pub fn gallery(only: Option<&str>, limits: &Limits) -> Result<Report, CliError> {
    let mut entries = builtin_gallery();
    if let Some(name) = only {
        entries.retain(|e| e.name == name);
        if entries.is_empty() {
            return Err(CliError::Usage(format!("no gallery entry named `{name}`")));
        }
    }
    let report = run_gallery(&entries, limits);
    Ok(Report {
        human: format!("{report}\n"),
        machine: gallery_json(&report),
        exit_code: if report.passed() { 0 } else { 1 },
    })
}

fn gallery_json(report: &GalleryReport) -> Value {
    let entries: Vec<Value> = report
        .entries
        .iter()
        .map(|e| {
            json!({
                "name": e.name,
                "note": e.note,
                "passed": e.passed(),
                "checks": e.checks.iter().map(|c| json!({
                    "label": c.label, "expected": c.expected, "computed": c.computed, "passed": c.passed,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    json!({ "command": "gallery", "passed": report.passed(), "entries": entries })
}
