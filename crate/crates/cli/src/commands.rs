//! Command dispatch and human-readable output.

use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;

use qcohom::arrangement::{indecomposable_components, HyperplaneSource};
use qcohom::decimal::parse_rational;
use qcohom::invariants::{Auxiliary, ObstructionVerdict, RankReport};
use qcohom::io::{parse_input, parse_vector};
use qcohom::pattern::{export, generate_pattern, ExportFormat};
use qcohom::pipeline::{prepare, Derived, OrbitSummary, Prepared};

use crate::report::{to_json, ArrangementReport, HyperplaneEntry, InputInfo, ObstructionReport, Report, SCHEMA_VERSION, TOOL_VERSION};
use crate::{selftest, Command, Format};

/// A domain error, printed to stderr as one JSON object.
#[derive(Debug, Serialize)]
pub struct CliError {
    pub error: &'static str,
    pub message: String,
}

impl CliError {
    fn new(error: &'static str, message: impl ToString) -> Self {
        CliError { error, message: message.to_string() }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("errors serialize")
    }
}

struct Loaded {
    prepared: Prepared,
    info: InputInfo,
}

fn load(path: &Path) -> Result<Loaded, CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::new("io", format!("cannot read {}: {e}", path.display())))?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| CliError::new("parse", "input is not UTF-8"))?;
    let input = parse_input(&text).map_err(|e| {
        let kind = match e {
            qcohom::io::InputError::Parse { .. } => "parse",
            qcohom::io::InputError::VersionMismatch { .. } => "version",
            _ => "invalid_input",
        };
        CliError::new(kind, e)
    })?;
    let prepared = prepare(&input).map_err(|e| CliError::new("invalid_input", e))?;
    let info = InputInfo::new(prepared.kind, &prepared.label, &bytes);
    Ok(Loaded { prepared, info })
}

pub fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Validate { file } => validate(&file),
        Command::Invariants { file, json, out, cap } => invariants(&file, json, out.as_deref(), cap),
        Command::Arrangement { file, json, cap } => arrangement(&file, json, cap),
        Command::Obstruction { file, json, cap } => obstruction(&file, json, cap),
        Command::Pattern { file, radius, offset, format, axes, out } => {
            pattern(&file, &radius, offset.as_deref(), format, (axes[0], axes[1]), &out)
        }
        Command::Selftest { seed, threads } => selftest::run(seed, threads),
    }
}

fn describe_derived(d: &Derived) -> String {
    let mut s = String::new();
    if let (Some(n), Some(dd), Some(rk)) = (d.n, d.d, d.rk_delta) {
        let _ = write!(s, "N = {n}, d = {dd}, rk Δ = {rk}, ");
    }
    let _ = write!(s, "dim V = {}, rk Γ = {}, ν = {}", d.dim_v, d.rk_gamma, d.nu);
    if let Some(h) = d.hyperplane_classes {
        let _ = write!(s, ", hyperplane classes = {h}");
    }
    if d.unverified_offset {
        s.push_str("\nnote: irrational offset with Δ ≠ 0; orbit classes are not checked against a reference table");
    }
    s
}

fn validate(path: &Path) -> Result<(), CliError> {
    let l = load(path)?;
    println!("ok: {} input{}", l.info.kind, if l.info.label.is_empty() { String::new() } else { format!(" \"{}\"", l.info.label) });
    println!("{}", describe_derived(&l.prepared.derived()));
    if let Some(e) = &l.prepared.arrangement_error {
        println!("note: {e}");
    }
    Ok(())
}

fn joined<T: std::fmt::Display>(name: &str, start: usize, xs: &[T]) -> String {
    xs.iter().enumerate().map(|(i, x)| format!("{name}{} = {x}", i + start)).collect::<Vec<_>>().join("  ")
}

fn render_invariants(derived: &Derived, orbits: &OrbitSummary, r: &RankReport, v: &ObstructionVerdict) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{}", describe_derived(derived));
    let _ = writeln!(s, "\ncounts");
    let _ = writeln!(s, "  {}", joined("L", 0, &orbits.counts));
    for rel in &orbits.relative {
        let spread = if rel.min == rel.max { format!("each {}", rel.min) } else { format!("{}..{}", rel.min, rel.max) };
        let _ = writeln!(
            s,
            "  Σ over {}-dim classes of L{}^Θ = {} ({spread})",
            rel.parent_dim, rel.level, rel.sum
        );
    }
    match &r.aux {
        Auxiliary::Codim1 { l0 } => {
            let _ = writeln!(s, "  k = {l0}");
        }
        Auxiliary::Codim2 { r: small_r, .. } => {
            let _ = writeln!(s, "\nR\n  {}", joined("r", 1, small_r));
        }
        Auxiliary::Codim3 { l1_tilde, big_r, .. } => {
            let _ = writeln!(s, "  L̃1 = {l1_tilde}");
            let _ = writeln!(s, "\nR\n  {}", joined("R", 1, big_r));
        }
        Auxiliary::NoClosedFormula => {
            let _ = writeln!(s, "\nno closed rank formula in codimension {}", r.codim);
        }
    }
    if !r.d.is_empty() {
        let _ = writeln!(s, "\nD\n  {}", joined("D", 0, &r.d));
    }
    let _ = writeln!(s, "  e = {}", r.e);
    if let Some(h) = &r.cohomology {
        let _ = writeln!(s, "  {}", joined("H", 0, h));
    }
    if let (Some(k0), Some(k1)) = (&r.k0_rank, &r.k1_rank) {
        let _ = writeln!(s, "\nK\n  rk K0 = {k0}  rk K1 = {k1}");
    }
    let _ = writeln!(s, "\nrules: {}", r.rules.join(", "));
    let _ = write!(s, "{}", render_verdict(v));
    s
}

fn render_verdict(v: &ObstructionVerdict) -> String {
    let mut s = String::new();
    let tag = serde_json::to_value(v.verdict).ok().and_then(|x| x.as_str().map(String::from)).unwrap_or_default();
    let _ = writeln!(s, "obstruction: {tag}");
    for r in &v.reasons {
        let _ = writeln!(s, "  [{}] {}", r.rule, r.witness);
    }
    for n in &v.notes {
        let _ = writeln!(s, "  note: {n}");
    }
    let _ = writeln!(s, "  {}", v.implication);
    s
}

fn invariants(path: &Path, json: bool, out: Option<&Path>, cap: usize) -> Result<(), CliError> {
    let l = load(path)?;
    let derived = l.prepared.derived();
    let (orbits, rank_report) = l.prepared.invariants(cap).map_err(|e| CliError::new("invariants", e))?;
    let obstruction = l.prepared.obstruction(cap);
    let report = Report {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        input: l.info,
        derived,
        flags: rank_report.flags.clone(),
        orbit_summary: orbits,
        rank_report,
        obstruction,
    };
    let text = to_json(&report);
    if let Some(p) = out {
        std::fs::write(p, &text).map_err(|e| CliError::new("io", format!("cannot write {}: {e}", p.display())))?;
    }
    if json {
        print!("{text}");
    } else {
        print!("{}", render_invariants(&report.derived, &report.orbit_summary, &report.rank_report, &report.obstruction));
    }
    Ok(())
}

fn source_label(s: &HyperplaneSource) -> String {
    match s {
        HyperplaneSource::Orientation(j) => format!("orientation {j:?}"),
        HyperplaneSource::Input(i) => format!("input {i}"),
    }
}

fn arrangement(path: &Path, json: bool, cap: usize) -> Result<(), CliError> {
    let l = load(path)?;
    let derived = l.prepared.derived();
    let Some(arr) = l.prepared.arrangement.as_ref() else {
        return Err(CliError::new(
            "infinite_arrangement",
            l.prepared.arrangement_error.clone().unwrap_or_default(),
        ));
    };
    let stabs = l.prepared.stabilizer_ranks();
    let hyperplanes: Vec<HyperplaneEntry> = arr
        .hyperplanes()
        .iter()
        .zip(stabs)
        .map(|(h, stabilizer_rank)| HyperplaneEntry {
            normal: h.normal.iter().map(ToString::to_string).collect(),
            offset: h.offset.to_string(),
            stabilizer_rank,
            sources: h.provenance.iter().map(source_label).collect(),
        })
        .collect();
    let components = indecomposable_components(&arr.normals()).map_err(|e| CliError::new("arrangement", e))?;
    let (orbit_summary, orbit_error) = match qcohom::arrangement::compute_tables(arr, cap) {
        Ok(t) => (Some(OrbitSummary::from_tables(&t)), None),
        Err(e) => (None, Some(e.to_string())),
    };
    let report = ArrangementReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        input: l.info,
        derived,
        components,
        hyperplanes,
        orbit_summary,
        orbit_error,
    };
    if json {
        print!("{}", to_json(&report));
        return Ok(());
    }
    println!("{}", describe_derived(&report.derived));
    println!("components: {:?}", report.components);
    println!("\nhyperplane classes (normal · y = offset)");
    for (i, h) in report.hyperplanes.iter().enumerate() {
        println!("  {i:>3}  ({}) · y = {}   stabilizer rank {}   {}", h.normal.join(", "), h.offset, h.stabilizer_rank, h.sources.join("; "));
    }
    match (&report.orbit_summary, &report.orbit_error) {
        (Some(o), _) => println!("\norbit counts: {}", joined("L", 0, &o.counts)),
        (None, Some(e)) => println!("\norbit tables: {e}"),
        _ => {}
    }
    Ok(())
}

fn obstruction(path: &Path, json: bool, cap: usize) -> Result<(), CliError> {
    let l = load(path)?;
    let report = ObstructionReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        obstruction: l.prepared.obstruction(cap),
        derived: l.prepared.derived(),
        input: l.info,
    };
    if json {
        print!("{}", to_json(&report));
    } else {
        println!("{}", describe_derived(&report.derived));
        print!("{}", render_verdict(&report.obstruction));
    }
    Ok(())
}

fn pattern(path: &Path, radius: &str, offset: Option<&str>, format: Format, axes: (usize, usize), out: &Path) -> Result<(), CliError> {
    let l = load(path)?;
    let Some((scheme, _)) = l.prepared.scheme.as_ref() else {
        return Err(CliError::new("invalid_input", "the pattern command needs a [scheme] input"));
    };
    let r = parse_rational(radius).map_err(|e| CliError::new("invalid_argument", format!("radius: {e}")))?;
    let u = match offset {
        Some(text) => {
            let u = parse_vector(&scheme.field, text).map_err(|e| CliError::new("invalid_argument", format!("offset: {e}")))?;
            if u.len() != scheme.n {
                return Err(CliError::new("invalid_argument", format!("offset has {} entries, expected {}", u.len(), scheme.n)));
            }
            u
        }
        None => scheme.u.clone(),
    };
    let p = generate_pattern(scheme, &u, &r).map_err(|e| CliError::new("pattern", e))?;
    let fmt = match format {
        Format::Csv => ExportFormat::Csv,
        Format::Svg => ExportFormat::Svg { axes },
    };
    export(&p, fmt, out).map_err(|e| CliError::new("pattern", e))?;
    println!("wrote {} points to {}", p.strip_points.len(), out.display());
    Ok(())
}
