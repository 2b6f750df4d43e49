use std::fmt;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use aholo::calculus::{
    cauchy_directional_derivative, check_pointwise_locality, frechet_matrix, is_a_differentiable, HolomorphicMapSpec,
    LocalityOutcome,
};
use aholo::cohomology::{build_cech_complex, cohomology_ranks, CoverKind, CoverSpec, Sheaf, VANISHING_NOTE};
use aholo::manifold::{build_manifold_n, build_projective_line, componentwise_glue_report, validate_atlas, Atlas};
use aholo::multilinear::{norm_bracket, pullback, pullback_invert, ALinearMap, AVector, AntisymForm, MultilinearMap};
use aholo::{Algebra, Error};
use serde::Serialize;

use crate::format;
use crate::{Command, CoverArg, ExampleKind, SheafArg};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_pass(pass: bool) -> Self {
        if pass {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

#[derive(Debug)]
pub enum CliError {
    Core(Error),
    Io { path: PathBuf, source: io::Error },
    Usage(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{}: {source}", path.display()),
            CliError::Usage(msg) => f.write_str(msg),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Core(Error::from(e))
    }
}

impl From<io::Error> for CliError {
    fn from(source: io::Error) -> Self {
        CliError::Io {
            path: PathBuf::from("<output>"),
            source,
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn read(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

/// Contents of the file at `arg`, or `arg` itself when no such file exists.
fn read_inline(arg: &str) -> CliResult<String> {
    let path = Path::new(arg);
    if path.is_file() {
        read(path)
    } else {
        Ok(arg.to_string())
    }
}

fn write_json<T: Serialize>(out: &mut dyn Write, value: &T) -> CliResult<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn point(arg: &str, spec: &HolomorphicMapSpec) -> CliResult<AVector> {
    let v: AVector = serde_json::from_str(&read_inline(arg)?)?;
    if v.rank() != spec.n() || v.m() != spec.algebra().m() {
        return Err(CliError::Usage(format!(
            "point must lie in A^{} with m = {}, got rank {} with m = {}",
            spec.n(),
            spec.algebra().m(),
            v.rank(),
            v.m()
        )));
    }
    Ok(v)
}

fn component_arg(component: usize, m: usize) -> CliResult<usize> {
    if component == 0 || component > m {
        return Err(CliError::Usage(format!("component must be in 1..={m}, got {component}")));
    }
    Ok(component - 1)
}

pub fn execute(command: Command, out: &mut dyn Write) -> CliResult<Outcome> {
    match command {
        Command::VerifyAtlas {
            file,
            samples,
            tol,
            seed,
            out: o,
        } => verify_atlas(&file, samples, tol, seed, o.json, out),
        Command::Example { which } => example(which, out),
        Command::GlueReport { file, component, out: o } => glue_report(&file, component, o.json, out),
        Command::Differentiate {
            map,
            at,
            direction,
            nodes,
            out: o,
        } => differentiate(&map, &at, direction.as_deref(), nodes, o.json, out),
        Command::IsADiff {
            map,
            samples,
            tol,
            seed,
            nodes,
            out: o,
        } => is_a_diff(&map, samples, tol, seed, nodes, o.json, out),
        Command::Pullback { form, map, invert } => pullback_cmd(&form, &map, invert, out),
        Command::Norm { file, out: o } => norm(&file, o.json, out),
        Command::Cech {
            cover,
            sheaf,
            trunc,
            m,
            n,
            out: o,
        } => cech(cover, sheaf, trunc, m, n, o.json, out),
        Command::Locality {
            map,
            u0,
            u1,
            component,
            tol,
            nodes,
            out: o,
        } => locality(&map, &u0, &u1, component, tol, nodes, o.json, out),
    }
}

fn verify_atlas(file: &Path, samples: usize, tol: f64, seed: u64, json: bool, out: &mut dyn Write) -> CliResult<Outcome> {
    let atlas = Atlas::from_json(&read(file)?)?;
    let report = validate_atlas(&atlas, samples, tol, seed)?;
    if json {
        write_json(out, &report)?;
    } else {
        writeln!(
            out,
            "atlas: {} charts, {} transitions, {} triples (m = {}, n = {})",
            atlas.charts().len(),
            atlas.transitions().len(),
            atlas.triples().len(),
            atlas.algebra().m(),
            atlas.n()
        )?;
        writeln!(out, "samples per overlap {samples}, tol {}", format::real(tol))?;
        for t in &report.transitions {
            writeln!(
                out,
                "transition {} ({} -> {}): {}  samples {}  a-linearity {}  round-trip {}",
                t.name,
                t.from,
                t.to,
                if t.pass { "pass" } else { "FAIL" },
                t.samples,
                format::real(t.worst_a_linearity),
                format::real(t.worst_round_trip)
            )?;
            if !t.image_failures.is_empty() {
                writeln!(out, "  image outside target chart at samples {:?}", t.image_failures)?;
            }
            if !t.inverse_domain_failures.is_empty() {
                writeln!(out, "  image outside inverse overlap at samples {:?}", t.inverse_domain_failures)?;
            }
            if let Some(w) = &t.non_holomorphic {
                writeln!(
                    out,
                    "  not holomorphic: sample {}, input (var {}, comp {}), output (coord {}, comp {}), defect {}",
                    w.sample,
                    w.input.0,
                    w.input.1 + 1,
                    w.output.0,
                    w.output.1 + 1,
                    format::real(w.size)
                )?;
            } else if let Some(w) = t.block_witness.as_ref().filter(|_| !t.pass) {
                writeln!(
                    out,
                    "  character coupling: sample {}, input comp {} -> output comp {}, size {}",
                    w.sample,
                    w.input.1 + 1,
                    w.output.1 + 1,
                    format::real(w.size)
                )?;
            }
        }
        for t in &report.triples {
            writeln!(
                out,
                "triple ({}, {}, {}): {}  samples {}  cocycle {}",
                t.charts[0],
                t.charts[1],
                t.charts[2],
                if t.pass { "pass" } else { "FAIL" },
                t.samples,
                format::real(t.worst_cocycle)
            )?;
        }
        writeln!(out, "result: {}", if report.pass { "pass" } else { "FAIL" })?;
    }
    Ok(Outcome::from_pass(report.pass))
}

fn example(which: ExampleKind, out: &mut dyn Write) -> CliResult<Outcome> {
    let (atlas, emit) = match which {
        ExampleKind::ManifoldN { c1, c2, emit } => (build_manifold_n(c1, c2)?, emit),
        ExampleKind::P1 { m, emit } => (build_projective_line(m)?, emit),
    };
    let text = atlas.to_json() + "\n";
    match emit {
        Some(path) => {
            std::fs::write(&path, text).map_err(|source| CliError::Io { path: path.clone(), source })?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(Outcome::Pass)
}

fn glue_report(file: &Path, component: Option<usize>, json: bool, out: &mut dyn Write) -> CliResult<Outcome> {
    let atlas = Atlas::from_json(&read(file)?)?;
    let mut report = componentwise_glue_report(&atlas)?;
    if let Some(c) = component {
        let j = component_arg(c, atlas.algebra().m())?;
        report.components.retain(|r| r.component == j);
    }
    if json {
        write_json(out, &report)?;
        return Ok(Outcome::Pass);
    }
    writeln!(out, "note: {}", report.note)?;
    for comp in &report.components {
        writeln!(out, "component {}", comp.component + 1)?;
        for chart in &comp.charts {
            writeln!(out, "  chart {}: {}", chart.name, serde_json::to_string(&chart.region)?)?;
        }
        for g in &comp.gluings {
            let map = match g.map {
                aholo::manifold::OneVarMap::Affine { scale, shift } => format::affine(scale, shift),
                aholo::manifold::OneVarMap::Inversion => "z -> 1/z".into(),
            };
            writeln!(
                out,
                "  gluing {} -> {} on {}: {}",
                g.from,
                g.to,
                serde_json::to_string(&g.source)?,
                map
            )?;
        }
        writeln!(out, "  candidate non-separated pairs: {}", comp.candidates.len())?;
        for cand in &comp.candidates {
            writeln!(
                out,
                "    {} {} ~ {} {} via {}",
                cand.charts.0,
                format::complex(cand.p),
                cand.charts.1,
                format::complex(cand.q),
                cand.via.join(", ")
            )?;
        }
    }
    Ok(Outcome::Pass)
}

fn load_map(path: &Path) -> CliResult<HolomorphicMapSpec> {
    Ok(HolomorphicMapSpec::from_json(&read(path)?)?)
}

fn differentiate(
    map: &Path,
    at: &str,
    direction: Option<&str>,
    nodes: usize,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<Outcome> {
    let f = load_map(map)?;
    let z = point(at, &f)?;
    match direction {
        Some(dir) => {
            let d = cauchy_directional_derivative(&f, &z, &point(dir, &f)?, nodes)?;
            if json {
                write_json(out, &d)?;
            } else {
                writeln!(out, "{}", format::vector(&d))?;
            }
        }
        None => {
            let d = frechet_matrix(&f, &z, nodes)?;
            if json {
                write_json(out, &d)?;
            } else {
                writeln!(out, "{}", format::matrix(&d))?;
            }
        }
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct ADiffJson {
    a_differentiable: bool,
    holomorphic: bool,
    samples: usize,
    worst_violation: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    witness: Option<aholo::manifold::WitnessRecord>,
}

fn is_a_diff(
    map: &Path,
    samples: usize,
    tol: f64,
    seed: u64,
    nodes: usize,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<Outcome> {
    let f = load_map(map)?;
    let points = f.domain().samples(samples, seed);
    let result = match is_a_differentiable(&f, &points, tol, nodes) {
        Ok(r) => ADiffJson {
            a_differentiable: r.verdict,
            holomorphic: true,
            samples: r.samples,
            worst_violation: r.worst_violation,
            witness: r.witness.as_ref().map(Into::into),
        },
        Err(Error::NonHolomorphic(w)) => ADiffJson {
            a_differentiable: false,
            holomorphic: false,
            samples: points.len(),
            worst_violation: f64::INFINITY,
            witness: Some((&w).into()),
        },
        Err(e) => return Err(e.into()),
    };
    if json {
        write_json(out, &result)?;
    } else {
        writeln!(
            out,
            "{} ({} samples, worst off-diagonal {})",
            if result.a_differentiable { "A-differentiable" } else { "not A-differentiable" },
            result.samples,
            format::real(result.worst_violation)
        )?;
        if let Some(w) = result.witness.as_ref().filter(|_| !result.a_differentiable) {
            let what = if result.holomorphic { "off-diagonal block" } else { "anti-holomorphic mode" };
            writeln!(
                out,
                "witness: {what} at sample {}, output (coord {}, comp {}), input (var {}, comp {}), size {}",
                w.sample,
                w.output.0 + 1,
                w.output.1 + 1,
                w.input.0 + 1,
                w.input.1 + 1,
                format::real(w.size)
            )?;
        }
    }
    Ok(Outcome::from_pass(result.a_differentiable))
}

fn pullback_cmd(form: &Path, map: &Path, invert: bool, out: &mut dyn Write) -> CliResult<Outcome> {
    let f: AntisymForm = serde_json::from_str(&read(form)?)?;
    let map: ALinearMap = serde_json::from_str(&read(map)?)?;
    let g = if invert { pullback_invert(&map, &f)? } else { pullback(&map, &f)? };
    write_json(out, &g)?;
    Ok(Outcome::Pass)
}

fn norm(file: &Path, json: bool, out: &mut dyn Write) -> CliResult<Outcome> {
    let text = read(file)?;
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let map = if value.get("entries").is_some() {
        MultilinearMap::from_linear(&serde_json::from_value::<ALinearMap>(value)?)
    } else {
        MultilinearMap::from_form(&serde_json::from_value::<AntisymForm>(value)?)
    };
    let bracket = norm_bracket(&map);
    if json {
        write_json(out, &bracket)?;
    } else {
        writeln!(out, "bracket [{}, {}]", format::real(bracket.lower), format::real(bracket.upper))?;
        if let Some(e) = bracket.exact {
            writeln!(out, "exact {}", format::real(e))?;
        }
    }
    Ok(Outcome::Pass)
}

#[derive(Serialize)]
struct CechJson<'a> {
    cover: &'static str,
    sheaf: &'static str,
    trunc: usize,
    m: usize,
    n: usize,
    #[serde(flatten)]
    report: &'a aholo::cohomology::CohomologyReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
}

fn cech(cover: CoverArg, sheaf: SheafArg, trunc: usize, m: usize, n: usize, json: bool, out: &mut dyn Write) -> CliResult<Outcome> {
    let (kind, cover_name) = match cover {
        CoverArg::P1 => (CoverKind::P1TwoChart, "p1"),
        CoverArg::Single => (CoverKind::SingleChart, "single"),
        CoverArg::Polydisk => (CoverKind::PolydiskTwoCover, "polydisk"),
    };
    let (sheaf, sheaf_name) = match sheaf {
        SheafArg::O => (Sheaf::O, "O"),
        SheafArg::Omega1 => (Sheaf::Omega(1), "omega1"),
    };
    let spec = CoverSpec::new(kind, Algebra::new(m)?, n, trunc)?;
    let report = cohomology_ranks(&build_cech_complex(&spec, sheaf)?)?;
    let note = (kind == CoverKind::PolydiskTwoCover).then_some(VANISHING_NOTE);
    if json {
        write_json(
            out,
            &CechJson {
                cover: cover_name,
                sheaf: sheaf_name,
                trunc,
                m,
                n: spec.n(),
                report: &report,
                note,
            },
        )?;
    } else {
        writeln!(out, "cover {cover_name}, sheaf {sheaf_name}, D = {trunc}, m = {m}, n = {}", spec.n())?;
        match &report.ranks {
            Some(r) => writeln!(out, "ranks {}", format::list(r))?,
            None => writeln!(out, "ranks differ by component (not a free module)")?,
        }
        for (j, h) in report.per_component.iter().enumerate() {
            writeln!(out, "component {}: {}", j + 1, format::list(h))?;
        }
        writeln!(out, "cochain ranks {}", format::list(&report.cochain_ranks))?;
        writeln!(
            out,
            "euler {} ({})",
            report.euler,
            if report.euler_consistent { "consistent" } else { "INCONSISTENT" }
        )?;
        let windows = |w: &[[i64; 2]]| w.iter().map(|[a, b]| format!("[{a}, {b}]")).collect::<Vec<_>>().join(" ");
        writeln!(out, "chart windows {}", windows(&report.windows.charts))?;
        if !report.windows.overlaps.is_empty() {
            writeln!(out, "overlap windows {}", windows(&report.windows.overlaps))?;
        }
        writeln!(out, "rank method {}", if report.exact { "exact" } else { "svd" })?;
        if let Some(note) = note {
            writeln!(out, "note: {note}")?;
        }
    }
    Ok(Outcome::from_pass(report.euler_consistent))
}

#[allow(clippy::too_many_arguments)]
fn locality(
    map: &Path,
    u0: &str,
    u1: &str,
    component: usize,
    tol: f64,
    nodes: usize,
    json: bool,
    out: &mut dyn Write,
) -> CliResult<Outcome> {
    let f = load_map(map)?;
    let (u0, u1) = (point(u0, &f)?, point(u1, &f)?);
    let x = component_arg(component, f.algebra().m())?;
    let report = check_pointwise_locality(&f, &u0, &u1, x, tol, nodes)?;
    let pass = report.outcome == LocalityOutcome::Holds;
    if json {
        write_json(out, &report)?;
    } else {
        let verdict = match &report.outcome {
            LocalityOutcome::Holds => "holds".to_string(),
            LocalityOutcome::Violated => "VIOLATED (derivative was C(X)-linear but values differ)".to_string(),
            LocalityOutcome::HypothesisFailed { t, witness } => format!(
                "hypothesis failed: derivative couples components {} -> {} at t = {}",
                witness.input.1 + 1,
                witness.output.1 + 1,
                format::real(*t)
            ),
        };
        writeln!(out, "locality at component {component}: {verdict}")?;
        writeln!(out, "|F(u0)(x) - F(u1)(x)| = {}", format::real(report.direct_difference))?;
        writeln!(out, "|integral of F'(u_t)(u1 - u0) at x| = {}", format::real(report.integral_difference))?;
    }
    Ok(Outcome::from_pass(pass))
}
