//! Command-line surface: argument parsing, dispatch and reports.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyinv::{
    build_sequence, extract_invariants, filtration_level, invert, is_quasi_translation, iteration_cap,
    max_inverse_degree, FiltrationLevel, InversionReport, InversionStatus, InvertError, InvertOptions, MapError,
    PolyError, PolynomialMap, Rational, RationalMatrix, SequenceOptions, StopIndex, Truncation,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::bind::{bind, resolve, BindError, BindSpec, RandomBinding};
use crate::document::MapDocument;
use crate::parser::{parse_map, parse_rational, ParseError};
use crate::render::{
    default_names, inverse_names, map_json, map_text, polynomial_json, polynomial_text, rational_string,
};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

pub const DEFAULT_MAX_TERMS: usize = 1_000_000;

#[derive(Parser, Debug)]
#[command(
    name = "polyinv",
    version,
    about = "Invert polynomial maps Id + H by iterated composition"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Args, Debug, Clone)]
struct Input {
    /// Parameter value, e.g. `--bind c2=3/4`; repeatable.
    #[arg(long = "bind", value_name = "P=V", action = clap::ArgAction::Append)]
    bind: Vec<String>,
    /// Draw every parameter from a seeded generator.
    #[arg(long)]
    random_bind: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Numerators in [-R, R], denominators in [1, R].
    #[arg(long, default_value_t = 10)]
    range: u32,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Abort once any intermediate polynomial exceeds this many terms.
    #[arg(long, default_value_t = DEFAULT_MAX_TERMS)]
    max_terms: usize,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Compute and verify the inverse of a map.
    Invert {
        file: PathBuf,
        #[command(flatten)]
        input: Input,
        /// Treat a definitive NotInvertible verdict as success.
        #[arg(long)]
        expect_noninvertible: bool,
        /// `adaptive`, `none`, or a fixed degree.
        #[arg(long, default_value = "adaptive")]
        truncation: String,
        /// Stop adaptive doubling at this degree.
        #[arg(long)]
        max_truncation: Option<u32>,
        /// Solve coordinates as Y_i - H_i(G) once their dependencies are known.
        #[arg(long)]
        back_substitution: bool,
        /// Also record the stop indices of the untruncated sequences.
        #[arg(long)]
        record_untruncated: bool,
    },
    /// Is det J(F) = 1?
    CheckKeller {
        file: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Compare both quasi-translation criteria.
    CheckQuasi {
        file: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Smallest k <= K with every untruncated P_k^i = 0.
    Filtration {
        file: PathBuf,
        #[arg(long)]
        cap: usize,
        #[command(flatten)]
        input: Input,
    },
    /// Dump the sequence P_0, P_1, ... for one coordinate.
    Sequence {
        file: PathBuf,
        /// 1-based coordinate.
        #[arg(long)]
        coord: usize,
        #[arg(long)]
        truncate: Option<u32>,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
    /// Check that G is a two-sided inverse of F.
    Verify {
        f: PathBuf,
        g: PathBuf,
        #[command(flatten)]
        input: Input,
    },
    /// Emit X + (AX)^3 for the matrix in a file.
    Druzkowski {
        #[arg(long)]
        matrix: PathBuf,
        /// Accept A with A^2 != 0.
        #[arg(long)]
        force: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Invariant polynomials P_(m-1)^i from untruncated sequences.
    Invariants {
        file: PathBuf,
        #[arg(long)]
        cap: Option<usize>,
        #[command(flatten)]
        input: Input,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{path}: {source}")]
    Bind { path: String, source: BindError },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Map(#[from] MapError),
    #[error(transparent)]
    Invert(#[from] InvertError),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Invert(InvertError::ResourceLimit { .. })
            | CliError::Invert(InvertError::Poly(PolyError::TooLarge { .. })) => EXIT_RESOURCE,
            CliError::Invert(InvertError::QuasiTranslationDisagreement { .. }) => EXIT_NEGATIVE,
            _ => EXIT_INPUT,
        }
    }
}

/// Result of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Loaded {
    path: String,
    doc: MapDocument,
    values: BTreeMap<String, Rational>,
    map: PolynomialMap,
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

impl Input {
    fn spec(&self) -> Result<BindSpec, CliError> {
        let explicit = self
            .bind
            .iter()
            .flat_map(|b| b.split(','))
            .map(|b| {
                b.split_once('=')
                    .and_then(|(k, v)| Some((k.trim().to_string(), parse_rational(v.trim())?)))
                    .ok_or_else(|| CliError::Usage(format!("malformed --bind `{b}`, expected name=rational")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(BindSpec {
            random: self.random_bind.then_some(RandomBinding {
                seed: self.seed,
                range: self.range,
            }),
            explicit,
        })
    }

    fn load(&self, path: &Path) -> Result<Loaded, CliError> {
        let mut spec = self.spec()?;
        self.load_with(path, &mut spec, true)
    }

    fn load_with(&self, path: &Path, spec: &mut BindSpec, strict: bool) -> Result<Loaded, CliError> {
        let name = path.display().to_string();
        let doc = parse_map(&read(path)?).map_err(|source| CliError::Parse {
            path: name.clone(),
            source,
        })?;
        if !strict {
            spec.explicit.retain(|(p, _)| doc.parameters.contains(p));
        }
        let bind_err = |source| CliError::Bind {
            path: name.clone(),
            source,
        };
        let values = resolve(&doc, spec).map_err(bind_err)?;
        let map = bind(&doc, &values).map_err(bind_err)?;
        Ok(Loaded {
            path: name,
            doc,
            values,
            map,
        })
    }

    fn header(&self, command: &str, loaded: &Loaded) -> Value {
        json!({
            "schema": 1,
            "command": command,
            "input": input_json(self, loaded),
        })
    }
}

fn input_json(input: &Input, loaded: &Loaded) -> Value {
    let bindings: serde_json::Map<String, Value> = loaded
        .values
        .iter()
        .map(|(k, v)| (k.clone(), Value::String(rational_string(v))))
        .collect();
    json!({
        "file": loaded.path,
        "dimension": loaded.doc.dimension(),
        "variables": loaded.doc.variables,
        "parameters": loaded.doc.parameters,
        "bindings": bindings,
        "random_binding": input.random_bind.then(|| json!({
            "seed": input.seed.to_string(),
            "range": input.range.to_string(),
        })),
    })
}

fn extend(mut base: Value, extra: Value) -> Value {
    if let (Value::Object(b), Value::Object(e)) = (&mut base, extra) {
        b.extend(e);
    }
    base
}

fn to_json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn stop_json(s: &StopIndex) -> Value {
    match s {
        StopIndex::Stopped(m) => json!(m),
        StopIndex::Exhausted => json!("exhausted"),
    }
}

fn opt_list(v: &[Option<usize>]) -> String {
    v.iter()
        .map(|m| m.map_or_else(|| "-".to_string(), |m| m.to_string()))
        .collect::<Vec<_>>()
        .join(" ")
}

fn parse_truncation(s: &str) -> Result<Truncation, CliError> {
    match s {
        "adaptive" => Ok(Truncation::Adaptive),
        "none" => Ok(Truncation::Untruncated),
        d => d
            .parse()
            .map(Truncation::Fixed)
            .map_err(|_| CliError::Usage(format!("--truncation expects adaptive, none or a degree, got `{d}`"))),
    }
}

fn status_name(status: InversionStatus) -> (&'static str, Option<&'static str>) {
    match status {
        InversionStatus::Inverted => ("Inverted", None),
        InversionStatus::NotInvertible(r) => ("NotInvertible", Some(r.as_str())),
        InversionStatus::BoundExhausted => ("BoundExhausted", None),
    }
}

fn inversion_json(report: &InversionReport, names: &[String]) -> Value {
    let (status, reason) = status_name(report.status);
    let target = inverse_names(names);
    let d = &report.diagnostics;
    json!({
        "status": status,
        "reason": reason,
        "verification": report.verification,
        "stop_indices": report.stop_indices,
        "truncation": report.truncation_used,
        "inverse": report.inverse.as_ref().map(|g| json!({
            "variables": target,
            "components": map_json(g, &target),
        })),
        "diagnostics": {
            "jacobian_determinant": polynomial_json(&d.jacobian_determinant, names),
            "normalized": d.normalized,
            "degree": d.degree,
            "inverse_degree_bound": d.inverse_degree_bound.map(|b| b.to_string()),
            "attempts": d.attempts.iter().map(|a| json!({
                "truncation": a.truncation,
                "iteration_cap": a.iteration_cap,
                "stop_indices": a.stop_indices,
                "verified": a.verified,
            })).collect::<Vec<_>>(),
            "sequence_steps": d.sequence_steps,
            "back_substituted": d.back_substituted.iter().map(|i| i + 1).collect::<Vec<_>>(),
            "coordinates": d.coordinates.iter().map(|c| json!({
                "max_degree": c.max_degree,
                "max_terms": c.max_terms,
                "inverse_degree": c.inverse_degree,
                "inverse_terms": c.inverse_terms,
            })).collect::<Vec<_>>(),
            "untruncated_stop_indices": d.untruncated_stop_indices.as_ref().map(|v| {
                v.iter().map(|s| s.as_ref().map_or(Value::Null, stop_json)).collect::<Vec<_>>()
            }),
        },
    })
}

fn inversion_text(report: &InversionReport, names: &[String]) -> String {
    let (status, reason) = status_name(report.status);
    let mut out = String::new();
    match reason {
        Some(r) => writeln!(out, "status: {status} ({r})").unwrap(),
        None => writeln!(out, "status: {status}").unwrap(),
    }
    writeln!(out, "stop indices: {}", opt_list(&report.stop_indices)).unwrap();
    if let Some(b) = report.truncation_used {
        writeln!(out, "truncation: {b}").unwrap();
    }
    writeln!(out, "verification: {}", report.verification).unwrap();
    writeln!(
        out,
        "det J: {}",
        polynomial_text(&report.diagnostics.jacobian_determinant, names)
    )
    .unwrap();
    if let Some(g) = &report.inverse {
        let target = inverse_names(names);
        for (k, gk) in g.components().iter().enumerate() {
            writeln!(out, "G{} = {}", k + 1, polynomial_text(gk, &target)).unwrap();
        }
    }
    out
}

fn cmd_invert(
    file: &Path,
    input: &Input,
    expect_noninvertible: bool,
    options: InvertOptions,
) -> Result<(i32, String), CliError> {
    let loaded = input.load(file)?;
    let report = invert(&loaded.map, &options)?;
    let code = match (report.status, expect_noninvertible) {
        (InversionStatus::Inverted, false) => EXIT_SUCCESS,
        (InversionStatus::NotInvertible(_), true) => EXIT_SUCCESS,
        (InversionStatus::BoundExhausted, _) => EXIT_RESOURCE,
        _ => EXIT_NEGATIVE,
    };
    let names = &loaded.doc.variables;
    let out = match input.format {
        Format::Json => to_json_text(&extend(input.header("invert", &loaded), inversion_json(&report, names))),
        Format::Text => inversion_text(&report, names),
    };
    Ok((code, out))
}

fn cmd_check_keller(file: &Path, input: &Input) -> Result<(i32, String), CliError> {
    let loaded = input.load(file)?;
    let det = loaded.map.jacobian().determinant();
    let keller = det.is_one();
    let names = &loaded.doc.variables;
    let out = match input.format {
        Format::Json => to_json_text(&extend(
            input.header("check-keller", &loaded),
            json!({
                "keller": keller,
                "jacobian_determinant": polynomial_json(&det, names),
                "constant_determinant": det.as_constant().map(|c| rational_string(&c)),
            }),
        )),
        Format::Text => format!("keller: {keller}\ndet J: {}\n", polynomial_text(&det, names)),
    };
    Ok((if keller { EXIT_SUCCESS } else { EXIT_NEGATIVE }, out))
}

fn cmd_check_quasi(file: &Path, input: &Input) -> Result<(i32, String), CliError> {
    let loaded = input.load(file)?;
    let report = is_quasi_translation(&loaded.map)?;
    let yes = report.is_quasi_translation();
    let out = match input.format {
        Format::Json => to_json_text(&extend(
            input.header("check-quasi", &loaded),
            json!({
                "quasi_translation": yes,
                "via_sequence": report.via_sequence,
                "via_jacobian": report.via_jacobian,
                "agree": report.agree,
                "inverse_is_id_minus_h": report.inverse_is_id_minus_h,
            }),
        )),
        Format::Text => format!(
            "quasi-translation: {yes}\nP_2 = 0: {}\nJH*H = 0: {}\n",
            report.via_sequence, report.via_jacobian
        ),
    };
    Ok((if yes { EXIT_SUCCESS } else { EXIT_NEGATIVE }, out))
}

fn cmd_filtration(file: &Path, cap: usize, input: &Input) -> Result<(i32, String), CliError> {
    let loaded = input.load(file)?;
    let level = filtration_level(&loaded.map, cap, Some(input.max_terms))?;
    let (value, code) = match level {
        FiltrationLevel::Level(k) => (json!(k), EXIT_SUCCESS),
        FiltrationLevel::AboveCap => (Value::Null, EXIT_NEGATIVE),
    };
    let out = match input.format {
        Format::Json => to_json_text(&extend(
            input.header("filtration", &loaded),
            json!({ "cap": cap, "level": value, "above_cap": level == FiltrationLevel::AboveCap }),
        )),
        Format::Text => format!("filtration level: {level}\n"),
    };
    Ok((code, out))
}

fn cmd_sequence(
    file: &Path,
    coord: usize,
    truncate: Option<u32>,
    cap: Option<usize>,
    input: &Input,
) -> Result<(i32, String), CliError> {
    let loaded = input.load(file)?;
    let n = loaded.map.dimension();
    if coord == 0 || coord > n {
        return Err(CliError::Usage(format!("--coord must be between 1 and {n}")));
    }
    let cap = match cap {
        Some(c) => c,
        None => {
            let target = match truncate {
                Some(b) => u64::from(b),
                None => max_inverse_degree(&loaded.map)?,
            };
            iteration_cap(&loaded.map, target)?
        }
    };
    let opts = SequenceOptions {
        truncation: truncate,
        cap,
        max_terms: Some(input.max_terms),
    };
    let record = build_sequence(&loaded.map, coord - 1, &opts)?;
    let code = match record.stop {
        StopIndex::Stopped(_) => EXIT_SUCCESS,
        StopIndex::Exhausted => EXIT_NEGATIVE,
    };
    let names = &loaded.doc.variables;
    let out = match input.format {
        Format::Json => to_json_text(&extend(
            input.header("sequence", &loaded),
            json!({
                "coordinate": coord,
                "truncation": truncate,
                "iteration_cap": cap,
                "stop": stop_json(&record.stop),
                "terms": record.terms.iter().map(|p| polynomial_json(p, names)).collect::<Vec<_>>(),
            }),
        )),
        Format::Text => {
            let mut s = format!("stop: {}\n", record.stop);
            for (k, p) in record.terms.iter().enumerate() {
                writeln!(s, "P{k} = {}", polynomial_text(p, names)).unwrap();
            }
            s
        }
    };
    Ok((code, out))
}

fn cmd_verify(f_path: &Path, g_path: &Path, input: &Input) -> Result<(i32, String), CliError> {
    let spec = input.spec()?;
    let mut f_spec = spec.clone();
    let mut g_spec = spec.clone();
    let f = input.load_with(f_path, &mut f_spec, false)?;
    let g = input.load_with(g_path, &mut g_spec, false)?;
    let known = |p: &String| f.doc.parameters.contains(p) || g.doc.parameters.contains(p);
    if let Some((p, _)) = spec.explicit.iter().find(|(p, _)| !known(p)) {
        return Err(CliError::Usage(format!("--bind names undeclared parameter `{p}`")));
    }
    if f.map.dimension() != g.map.dimension() {
        return Err(CliError::Usage(format!(
            "dimension mismatch: {} vs {}",
            f.map.dimension(),
            g.map.dimension()
        )));
    }
    let forward = f.map.compose(&g.map)?.is_identity();
    let backward = g.map.compose(&f.map)?.is_identity();
    let ok = forward && backward;
    let out = match input.format {
        Format::Json => to_json_text(&json!({
            "schema": 1,
            "command": "verify",
            "input": { "f": input_json(input, &f), "g": input_json(input, &g) },
            "f_after_g_is_identity": forward,
            "g_after_f_is_identity": backward,
            "inverse": ok,
        })),
        Format::Text => format!("F o G = Id: {forward}\nG o F = Id: {backward}\ninverse: {ok}\n"),
    };
    Ok((if ok { EXIT_SUCCESS } else { EXIT_NEGATIVE }, out))
}

/// First non-comment line is `n`, then `n` rows of `n` rationals.
pub fn parse_matrix(text: &str) -> Result<RationalMatrix, String> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line, first) = lines.next().ok_or("empty matrix file")?;
    let n: usize = first
        .parse()
        .map_err(|_| format!("line {line}: expected the dimension, found `{first}`"))?;
    if n == 0 {
        return Err(format!("line {line}: dimension must be positive"));
    }
    let mut rows = Vec::with_capacity(n);
    for (line, text) in lines {
        let row = text
            .split_whitespace()
            .map(|t| parse_rational(t).ok_or_else(|| format!("line {line}: `{t}` is not a rational")))
            .collect::<Result<Vec<_>, _>>()?;
        if row.len() != n {
            return Err(format!("line {line}: expected {n} entries, found {}", row.len()));
        }
        rows.push(row);
    }
    if rows.len() != n {
        return Err(format!("expected {n} rows, found {}", rows.len()));
    }
    RationalMatrix::from_rows(rows).map_err(|e| e.to_string())
}

fn cmd_druzkowski(matrix: &Path, force: bool, format: Format) -> Result<(i32, String), CliError> {
    let a = parse_matrix(&read(matrix)?).map_err(|message| CliError::Io {
        path: matrix.display().to_string(),
        message,
    })?;
    let f = PolynomialMap::druzkowski(&a, force)?;
    let names = default_names(f.dimension());
    let out = match format {
        Format::Text => map_text(&f, &names),
        Format::Json => to_json_text(&json!({
            "schema": 1,
            "command": "druzkowski",
            "matrix": (0..a.rows()).map(|i| a.row(i).iter().map(rational_string).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "square_zero": a.mul(&a)?.is_zero(),
            "keller": f.is_keller(),
            "map": { "variables": names, "components": map_json(&f, &names) },
        })),
    };
    Ok((EXIT_SUCCESS, out))
}

fn cmd_invariants(file: &Path, cap: Option<usize>, input: &Input) -> Result<(i32, String), CliError> {
    let loaded = input.load(file)?;
    let f = &loaded.map;
    let cap = match cap {
        Some(c) => c,
        None => iteration_cap(f, max_inverse_degree(f)?)?,
    };
    let opts = SequenceOptions {
        truncation: None,
        cap,
        max_terms: Some(input.max_terms),
    };
    let records = (0..f.dimension())
        .map(|i| build_sequence(f, i, &opts))
        .collect::<Result<Vec<_>, _>>()?;
    let invariants = extract_invariants(f, &records)?;
    let stopped: Vec<_> = records
        .iter()
        .filter_map(|r| r.stop.index().map(|m| (r.coordinate, m)))
        .collect();
    let exhausted: Vec<usize> = records
        .iter()
        .filter(|r| r.stop == StopIndex::Exhausted)
        .map(|r| r.coordinate + 1)
        .collect();
    let names = &loaded.doc.variables;
    let out = match input.format {
        Format::Json => to_json_text(&extend(
            input.header("invariants", &loaded),
            json!({
                "cap": cap,
                "invariants": stopped.iter().zip(&invariants).map(|((i, m), p)| json!({
                    "coordinate": i + 1,
                    "stop": m,
                    "polynomial": polynomial_json(p, names),
                })).collect::<Vec<_>>(),
                "exhausted": exhausted,
            }),
        )),
        Format::Text => {
            let mut s = String::new();
            for ((i, m), p) in stopped.iter().zip(&invariants) {
                writeln!(s, "P{}^{} = {}", m - 1, i + 1, polynomial_text(p, names)).unwrap();
            }
            for i in &exhausted {
                writeln!(s, "coordinate {i}: exhausted").unwrap();
            }
            s
        }
    };
    Ok((
        if exhausted.is_empty() {
            EXIT_SUCCESS
        } else {
            EXIT_NEGATIVE
        },
        out,
    ))
}

fn dispatch(command: Command) -> Result<(i32, String), CliError> {
    match command {
        Command::Invert {
            file,
            input,
            expect_noninvertible,
            truncation,
            max_truncation,
            back_substitution,
            record_untruncated,
        } => {
            let options = InvertOptions {
                truncation: parse_truncation(&truncation)?,
                max_truncation,
                back_substitution,
                record_untruncated,
                max_terms: Some(input.max_terms),
            };
            cmd_invert(&file, &input, expect_noninvertible, options)
        }
        Command::CheckKeller { file, input } => cmd_check_keller(&file, &input),
        Command::CheckQuasi { file, input } => cmd_check_quasi(&file, &input),
        Command::Filtration { file, cap, input } => cmd_filtration(&file, cap, &input),
        Command::Sequence {
            file,
            coord,
            truncate,
            cap,
            input,
        } => cmd_sequence(&file, coord, truncate, cap, &input),
        Command::Verify { f, g, input } => cmd_verify(&f, &g, &input),
        Command::Druzkowski { matrix, force, format } => cmd_druzkowski(&matrix, force, format),
        Command::Invariants { file, cap, input } => cmd_invariants(&file, cap, &input),
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_SUCCESS };
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match dispatch(cli.command) {
        Ok((code, stdout)) => Outcome {
            code,
            stdout,
            stderr: String::new(),
        },
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
