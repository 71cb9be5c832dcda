//! `cohom`: compute cohomology rings and spectral sequences from the
//! command line and check them against known answers.
//!
//! Exit codes: 0 success, 1 a check failed, 2 usage or input error.

pub mod suite;

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use cohom_core::catalog::{self, poincare_polynomial, space_data, SpaceId, SpaceSpec, Variant};
use cohom_core::distinguish::full_report_with_bound;
use cohom_core::grading::{
    lint_odd_squares, parse_presentation, validate_degrees, validate_homogeneous, GradedRing, RingPresentation,
};
use cohom_core::gysin::{required_d2_profile, run_catalog, GysinError, Verdict};
use cohom_core::homotopy::FibrationSpec;
use cohom_core::{FgAbelianGroup, Provenance};
use serde::Serialize;

pub use suite::{paper_suite, paper_suite_with, CheckResult, ReportDocument, SuiteInputs};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GysinMode {
    Verify,
    DeriveD2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VariantArg {
    Corrected,
    Verbatim,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Corrected => Variant::Corrected,
            VariantArg::Verbatim => Variant::Verbatim,
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "cohom", version, about = "Cohomology rings, circle-bundle spectral sequences and homotopy comparisons")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_spec(s: &str) -> Result<SpaceSpec, String> {
    let spec: SpaceSpec = s.parse().map_err(|e: catalog::CatalogError| e.to_string())?;
    spec.space.validate().map_err(|e| e.to_string())?;
    Ok(spec)
}

fn parse_fibration(s: &str) -> Result<FibrationSpec, String> {
    FibrationSpec::parse(s).map_err(|e| e.to_string())
}

fn parse_k_range(s: &str) -> Result<(u32, u32), String> {
    let bad = || format!("expected N or A..B with 2 <= A <= B, got {s:?}");
    let (a, b) = match s.split_once("..") {
        Some((a, b)) => (a.parse().map_err(|_| bad())?, b.trim_start_matches('=').parse().map_err(|_| bad())?),
        None => {
            let k = s.parse().map_err(|_| bad())?;
            (k, k)
        }
    };
    if a < 2 || a > b {
        return Err(bad());
    }
    Ok((a, b))
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Additive cohomology groups, degree 0 through the dimension.
    Cohomology {
        #[arg(value_parser = parse_spec, required_unless_present = "presentation")]
        space: Option<SpaceSpec>,
        /// Read a presentation file instead of a catalog space.
        #[arg(long, conflicts_with = "space")]
        presentation: Option<String>,
    },
    /// Groups, basis and products of the ring.
    Ring {
        #[arg(value_parser = parse_spec, required_unless_present = "presentation")]
        space: Option<SpaceSpec>,
        #[arg(long, conflicts_with = "space")]
        presentation: Option<String>,
    },
    /// Circle-bundle spectral sequence with Euler class x2.
    Gysin {
        #[arg(long, value_parser = parse_spec)]
        total: SpaceSpec,
        #[arg(long, value_parser = parse_spec)]
        base: SpaceSpec,
        #[arg(long, value_enum, default_value_t = GysinMode::Verify)]
        mode: GysinMode,
        /// Print the E_2 and E_inf pages.
        #[arg(long)]
        print_pages: bool,
    },
    /// Base homotopy groups from a circle bundle (`hopf:<n>`, `grass:<n>`).
    Homotopy {
        #[arg(value_parser = parse_fibration)]
        fibration: FibrationSpec,
        #[arg(long, default_value_t = 11)]
        max_level: usize,
    },
    /// Compare two spaces by groups, cup powers and homotopy.
    Compare {
        #[arg(value_parser = parse_spec)]
        a: SpaceSpec,
        #[arg(value_parser = parse_spec)]
        b: SpaceSpec,
        #[arg(long, default_value_t = 2)]
        bound: u32,
        /// Defaults to one more than the larger dimension.
        #[arg(long)]
        max_level: Option<usize>,
    },
    /// Lint a presentation and compare its ranks with the Poincare polynomial.
    Validate {
        #[arg(value_parser = parse_spec)]
        space: SpaceSpec,
    },
    /// Run the reproduction suite.
    Report {
        #[arg(long, value_parser = parse_k_range, default_value = "2..8")]
        k: (u32, u32),
        #[arg(long, value_enum, default_value_t = VariantArg::Corrected)]
        variant: VariantArg,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Output {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

type Res = Result<(u8, String), Failure>;

pub fn run<I, T>(argv: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Output { code, stdout: text, ..Default::default() }
            } else {
                Output { code, stderr: text, ..Default::default() }
            };
        }
    };
    let mut out = Output::default();
    for spec in specs_of(&cli.command) {
        if let Some(b) = banner(spec) {
            out.stderr.push_str(&b);
        }
    }
    let result = match &cli.command {
        Command::Cohomology { space, presentation } => cohomology(*space, presentation.as_deref(), cli.format),
        Command::Ring { space, presentation } => ring(*space, presentation.as_deref(), cli.format),
        Command::Gysin { total, base, mode, print_pages } => gysin(*total, *base, *mode, *print_pages, cli.format),
        Command::Homotopy { fibration, max_level } => homotopy(fibration, *max_level, cli.format),
        Command::Compare { a, b, bound, max_level } => compare(*a, *b, *bound, *max_level, cli.format),
        Command::Validate { space } => validate(*space, cli.format),
        Command::Report { k, variant } => report(*k, (*variant).into(), cli.format),
    };
    match result {
        Ok((code, text)) => {
            out.code = code;
            out.stdout = text;
        }
        Err(Failure(msg)) => {
            out.code = 2;
            out.stderr.push_str(&format!("error: {msg}\n"));
        }
    }
    out
}

fn specs_of(c: &Command) -> Vec<SpaceSpec> {
    match c {
        Command::Cohomology { space, .. } | Command::Ring { space, .. } => space.iter().copied().collect(),
        Command::Gysin { base, .. } => vec![*base],
        Command::Compare { a, b, .. } => vec![*a, *b],
        Command::Validate { .. } | Command::Homotopy { .. } | Command::Report { .. } => vec![],
    }
}

/// Printed whenever a corrected presentation differs from the printed one.
fn banner(spec: SpaceSpec) -> Option<String> {
    let d = space_data(spec.space, spec.variant).ok()?;
    let fixed = d.provenance.iter().filter(|p| matches!(p, Provenance::Corrected { .. })).count();
    (fixed > 0).then(|| {
        format!(
            "note: {spec} uses a corrected presentation ({fixed} relations differ from the printed ones; `cohom validate {}@verbatim` shows why)\n",
            spec.space
        )
    })
}

fn json<T: Serialize>(v: &T) -> Result<String, Failure> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

fn tuple(groups: &[FgAbelianGroup]) -> String {
    let parts: Vec<String> = groups.iter().map(|g| g.short_form()).collect();
    format!("({})", parts.join(","))
}

fn read_presentation(path: &str) -> Result<RingPresentation, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure(format!("{path}: {e}")))?;
    Ok(parse_presentation(&text)?)
}

// Groups through the dimension for a catalog space, or the top degree for
// a presentation file.
fn groups_for(space: Option<SpaceSpec>, presentation: Option<&str>) -> Result<(String, Vec<FgAbelianGroup>), Failure> {
    match (space, presentation) {
        (Some(s), _) => {
            let d = space_data(s.space, s.variant)?;
            Ok((s.to_string(), d.groups(d.dimension)?))
        }
        (None, Some(path)) => {
            let r = GradedRing::compute(&read_presentation(path)?)?;
            Ok((path.to_string(), r.groups()))
        }
        (None, None) => Err(Failure("no space given".into())),
    }
}

#[derive(Serialize)]
struct CohomologyJson<'a> {
    space: &'a str,
    variant: Option<Variant>,
    groups: &'a [FgAbelianGroup],
}

fn cohomology(space: Option<SpaceSpec>, presentation: Option<&str>, format: Format) -> Res {
    let (name, groups) = groups_for(space, presentation)?;
    Ok((
        0,
        match format {
            Format::Text => tuple(&groups) + "\n",
            Format::Json => json(&CohomologyJson {
                space: &name,
                variant: space.map(|s| s.variant),
                groups: &groups,
            })?,
        },
    ))
}

fn ring(space: Option<SpaceSpec>, presentation: Option<&str>, format: Format) -> Res {
    let (r, limit) = match (space, presentation) {
        (Some(s), _) => {
            let d = space_data(s.space, s.variant)?;
            (GradedRing::compute(&d.presentation)?, d.dimension)
        }
        (None, Some(path)) => {
            let r = GradedRing::compute(&read_presentation(path)?)?;
            let top = r.top_degree();
            (r, top)
        }
        (None, None) => return Err(Failure("no space given".into())),
    };
    if format == Format::Json {
        return Ok((0, json(&r.dump())?));
    }
    let p = r.presentation();
    let mut out = String::new();
    let gens: Vec<String> = p.generators().iter().map(|g| format!("{} ({})", g.name, g.degree)).collect();
    writeln!(out, "generators: {}", gens.join(", "))?;
    for rel in p.relations() {
        writeln!(out, "relation: {}", p.show(rel))?;
    }
    for d in 0..=limit {
        let g = r.group(d);
        if g.is_trivial() {
            continue;
        }
        let basis: Vec<String> = (0..g.num_generators()).map(|i| r.show(&r.basis_element(d, i))).collect();
        writeln!(out, "H^{d} = {}  basis: {}", g.short_form(), basis.join(", "))?;
    }
    writeln!(out, "products:")?;
    for a in 1..=limit {
        for b in a..=limit - a {
            for i in 0..r.group(a).num_generators() {
                for j in 0..r.group(b).num_generators() {
                    if a == b && j < i {
                        continue;
                    }
                    let (x, y) = (r.basis_element(a, i), r.basis_element(b, j));
                    writeln!(out, "  {} * {} = {}", r.show(&x), r.show(&y), r.show(&r.cup(&x, &y)?))?;
                }
            }
        }
    }
    Ok((0, out))
}

#[derive(Serialize)]
struct GysinRow {
    degree: usize,
    expected: FgAbelianGroup,
    verdict: Verdict,
}

#[derive(Serialize)]
struct ProfileRow {
    p: usize,
    required: String,
    actual: String,
    satisfied: bool,
}

#[derive(Serialize)]
struct GysinJson {
    base: String,
    total: String,
    mode: &'static str,
    ok: bool,
    degrees: Vec<GysinRow>,
    profile: Vec<ProfileRow>,
    error: Option<String>,
    pages: Option<[String; 2]>,
}

fn gysin(total: SpaceSpec, base: SpaceSpec, mode: GysinMode, print_pages: bool, format: Format) -> Res {
    let run = run_catalog(base.space, base.variant, total.space)?;
    let mut doc = GysinJson {
        base: base.to_string(),
        total: total.to_string(),
        mode: match mode {
            GysinMode::Verify => "verify",
            GysinMode::DeriveD2 => "derive-d2",
        },
        ok: true,
        degrees: Vec::new(),
        profile: Vec::new(),
        error: None,
        pages: print_pages.then(|| [run.e2.render(), run.limit.render()]),
    };
    match mode {
        GysinMode::Verify => {
            doc.ok = run.report.ok;
            doc.degrees = run
                .report
                .degrees
                .iter()
                .map(|(d, v)| GysinRow {
                    degree: *d,
                    expected: run.expected.get(*d).cloned().unwrap_or_default(),
                    verdict: v.clone(),
                })
                .collect();
        }
        GysinMode::DeriveD2 => match required_d2_profile(&run.ring.groups(), &run.expected) {
            Ok(profile) => {
                for (p, c) in profile.iter().enumerate() {
                    let actual = cohom_core::D2Constraint::of(run.d2.at(p));
                    let satisfied = c.is_satisfied_by(run.d2.at(p));
                    doc.ok &= satisfied;
                    doc.profile.push(ProfileRow {
                        p,
                        required: c.to_string(),
                        actual: actual.to_string(),
                        satisfied,
                    });
                }
            }
            Err(e @ GysinError::Contradiction { .. }) => {
                doc.ok = false;
                doc.error = Some(e.to_string());
            }
            Err(e) => return Err(e.into()),
        },
    }
    let code = if doc.ok { 0 } else { 1 };
    if format == Format::Json {
        return Ok((code, json(&doc)?));
    }
    let mut out = String::new();
    writeln!(out, "base {}, total {}, Euler class x2", doc.base, doc.total)?;
    if let Some([e2, einf]) = &doc.pages {
        out.push_str(e2);
        out.push('\n');
        out.push_str(einf);
        out.push('\n');
    }
    match mode {
        GysinMode::Verify => {
            let rows: Vec<[String; 3]> = doc
                .degrees
                .iter()
                .map(|r| {
                    let (got, verdict) = match &r.verdict {
                        Verdict::Match => (r.expected.short_form(), "match".to_string()),
                        Verdict::Mismatch { got, .. } => (
                            got.iter().map(|g| g.short_form()).collect::<Vec<_>>().join(" | "),
                            "MISMATCH".to_string(),
                        ),
                        Verdict::AmbiguousConsistent { candidates } => (
                            candidates.iter().map(|g| g.short_form()).collect::<Vec<_>>().join(" | "),
                            "consistent (extension ambiguous)".to_string(),
                        ),
                    };
                    [r.expected.short_form(), got, verdict]
                })
                .collect();
            let w1 = rows.iter().map(|r| r[0].len()).max().unwrap_or(0).max("expected".len());
            let w2 = rows.iter().map(|r| r[1].len()).max().unwrap_or(0).max("spectral".len());
            writeln!(out, "degree  {:<w1$}  {:<w2$}  verdict", "expected", "spectral")?;
            for (r, row) in doc.degrees.iter().zip(&rows) {
                writeln!(out, "{:<6}  {:<w1$}  {:<w2$}  {}", r.degree, row[0], row[1], row[2])?;
            }
        }
        GysinMode::DeriveD2 => {
            if let Some(e) = &doc.error {
                writeln!(out, "contradiction: {e}")?;
            }
            for r in &doc.profile {
                let mark = if r.satisfied { "ok" } else { "VIOLATED" };
                writeln!(out, "d2 at {:<3} required: {:<24} actual: {:<24} {mark}", r.p, r.required, r.actual)?;
            }
        }
    }
    writeln!(out, "result: {}", if doc.ok { "verified" } else { "FAILED" })?;
    Ok((code, out))
}

#[derive(Serialize)]
struct HomotopyJson {
    fibration: String,
    fiber: String,
    total: String,
    base: String,
    max_level: usize,
    tables: [cohom_core::PiTable; 3],
}

fn homotopy(f: &FibrationSpec, max_level: usize, format: Format) -> Res {
    let fiber = catalog::homotopy_table_of(f.fiber, max_level)?;
    let total = catalog::homotopy_table_of(f.total, max_level)?;
    let mut base = f.base_table(max_level)?;
    if let SpaceId::Sphere(m) = f.total {
        base = base.with_sphere_marker(m);
    }
    if format == Format::Json {
        let doc = HomotopyJson {
            fibration: f.name.clone(),
            fiber: f.fiber.to_string(),
            total: f.total.to_string(),
            base: f.base.to_string(),
            max_level,
            tables: [fiber, total, base],
        };
        return Ok((0, json(&doc)?));
    }
    let mut out = String::new();
    writeln!(out, "fibration {}: {} -> {} -> {}", f.name, f.fiber, f.total, f.base)?;
    let w = [f.fiber, f.total, f.base].iter().map(|s| s.to_string().len()).max().unwrap_or(0);
    for (s, t) in [(f.fiber, &fiber), (f.total, &total), (f.base, &base)] {
        writeln!(out, "pi({s}){:pad$} = {t}", "", pad = w - s.to_string().len())?;
    }
    if let Some(m) = base.sphere_marker() {
        writeln!(out, "levels above {m} agree with pi(s:{m})")?;
    }
    Ok((0, out))
}

fn compare(a: SpaceSpec, b: SpaceSpec, bound: u32, max_level: Option<usize>, format: Format) -> Res {
    let level = max_level.unwrap_or(a.space.dimension().max(b.space.dimension()) as usize + 1);
    let r = full_report_with_bound(a, b, level, bound)?;
    if format == Format::Json {
        return Ok((0, json(&r)?));
    }
    let show = |m: &Option<std::collections::BTreeMap<u32, cohom_core::PowerIndex>>| match m {
        None => "undefined".to_string(),
        Some(m) => m.iter().map(|(j, i)| format!("{j}:{i}")).collect::<Vec<_>>().join(" "),
    };
    let mut out = String::new();
    writeln!(out, "spaces: {} vs {}", r.spaces[0], r.spaces[1])?;
    match r.first_group_mismatch {
        None => writeln!(out, "groups equal: yes")?,
        Some(d) => writeln!(out, "groups equal: no, first difference in degree {d}")?,
    }
    writeln!(out, "power indices {}: {}", r.spaces[0], show(&r.power_indices.a))?;
    writeln!(out, "power indices {}: {}", r.spaces[1], show(&r.power_indices.b))?;
    writeln!(out, "isomorphism search (bound {}): {}", r.iso_search.bound, r.iso_search.result)?;
    for line in r.iso_search.witness.iter().flatten() {
        writeln!(out, "  {line}")?;
    }
    match r.pi_first_difference {
        None => writeln!(out, "homotopy through level {level}: no known difference")?,
        Some(l) => writeln!(out, "homotopy: first known difference at level {l}")?,
    }
    if !r.certificates.is_empty() {
        writeln!(out, "certificates:")?;
        for c in &r.certificates {
            writeln!(out, "  {c}")?;
        }
    }
    writeln!(out, "verdict: {}", r.verdict)?;
    Ok((0, out))
}

#[derive(Serialize)]
struct ValidateJson {
    space: String,
    dimension: u32,
    inhomogeneous: Vec<cohom_core::grading::HomogeneityViolation>,
    above_dimension: Vec<cohom_core::grading::DegreeViolation>,
    odd_square_lints: Vec<String>,
    rank_mismatches: Vec<RankMismatch>,
    notes: Vec<String>,
    ok: bool,
}

#[derive(Serialize)]
struct RankMismatch {
    degree: u32,
    rank: usize,
    expected: usize,
}

fn validate(spec: SpaceSpec, format: Format) -> Res {
    let d = space_data(spec.space, spec.variant)?;
    let p = &d.presentation;
    let inhomogeneous = validate_homogeneous(p);
    let above_dimension = validate_degrees(p, d.dimension);
    let odd_square_lints = lint_odd_squares(p);
    let (r, _) = GradedRing::compute_homogeneous_part(p)?;
    let rank_mismatches: Vec<RankMismatch> = poincare_polynomial(spec.space)?
        .into_iter()
        .enumerate()
        .map(|(deg, expected)| RankMismatch {
            degree: deg as u32,
            rank: r.group(deg as u32).free_rank(),
            expected,
        })
        .filter(|m| m.rank != m.expected)
        .collect();
    let doc = ValidateJson {
        space: spec.to_string(),
        dimension: d.dimension,
        ok: inhomogeneous.is_empty() && rank_mismatches.is_empty(),
        inhomogeneous,
        above_dimension,
        odd_square_lints,
        rank_mismatches,
        notes: d.notes.clone(),
    };
    let code = if doc.ok { 0 } else { 1 };
    if format == Format::Json {
        return Ok((code, json(&doc)?));
    }
    let mut out = String::new();
    writeln!(out, "validate {} (dimension {})", doc.space, doc.dimension)?;
    writeln!(out, "inhomogeneous relations: {}", doc.inhomogeneous.len())?;
    for v in &doc.inhomogeneous {
        let degs: Vec<String> = v.degrees.iter().map(|d| d.to_string()).collect();
        writeln!(out, "  relation {}: {} has terms in degrees {}", v.index + 1, v.relation, degs.join(", "))?;
    }
    writeln!(out, "relations above the dimension: {}", doc.above_dimension.len())?;
    for v in &doc.above_dimension {
        writeln!(out, "  relation {}: {} in degree {}", v.index + 1, v.relation, v.degree)?;
    }
    for l in &doc.odd_square_lints {
        writeln!(out, "lint: {l}")?;
    }
    writeln!(out, "ranks against the Poincare polynomial: {} mismatches", doc.rank_mismatches.len())?;
    for m in &doc.rank_mismatches {
        writeln!(out, "  degree {}: rank {}, expected {}", m.degree, m.rank, m.expected)?;
    }
    for n in &doc.notes {
        writeln!(out, "note: {n}")?;
    }
    writeln!(out, "result: {}", if doc.ok { "ok" } else { "FAILED" })?;
    Ok((code, out))
}

fn report(k: (u32, u32), variant: Variant, format: Format) -> Res {
    let doc = paper_suite_with(SuiteInputs {
        k_min: k.0,
        k_max: k.1,
        variant,
        ..SuiteInputs::default()
    });
    let code = if doc.ok() { 0 } else { 1 };
    Ok((
        code,
        match format {
            Format::Text => doc.render_text(),
            Format::Json => json(&doc)?,
        },
    ))
}
