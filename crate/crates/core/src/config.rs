//! Flat INI-style scenario files.
//!
//! Sections `[problem] [datum] [numerics] [analysis]` hold `key = value`
//! lines. Keys may be written in full (`numerics.N`) or, inside their own
//! section, bare (`N`). `#` and `;` start comment lines. Complex numbers are
//! written `re,im`; a lone real is accepted as well.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use num_complex::Complex64;

use crate::analysis::JumpSettings;
use crate::boundary::{BoundaryFamily, BoundarySpec, TraceRow};
use crate::datum::{InitialDatum, Regularity};
use crate::error::{AiryError, Result};

pub const SECTIONS: [&str; 4] = ["problem", "datum", "numerics", "analysis"];

/// Keys each boundary family requires beyond `bc.family`.
pub fn family_keys(family: &str) -> Option<&'static [&'static str]> {
    Some(match family {
        "periodic" | "dirichlet" => &[],
        "mixed" => &["bc.gamma"],
        "pseudo_periodic" => &["bc.beta0", "bc.beta1", "bc.beta2"],
        "quasi_periodic" => &["bc.theta"],
        "quasi_coupled" => &["bc.theta", "bc.row1", "bc.row2"],
        _ => return None,
    })
}

pub const FAMILIES: [&str; 6] = [
    "periodic",
    "dirichlet",
    "mixed",
    "pseudo_periodic",
    "quasi_periodic",
    "quasi_coupled",
];

/// Keys each datum kind requires beyond `datum.kind`.
pub fn datum_keys(kind: &str) -> Option<&'static [&'static str]> {
    Some(match kind {
        "fourier_mode" => &["datum.mode"],
        "step" => &["datum.start", "datum.end"],
        "bump" => &["datum.power"],
        "poly" => &["datum.coeffs"],
        "samples_file" => &["datum.file"],
        _ => return None,
    })
}

pub const DATUM_KINDS: [&str; 5] = ["fourier_mode", "step", "bump", "poly", "samples_file"];

const KNOWN_KEYS: &[&str] = &[
    "bc.family",
    "bc.gamma",
    "bc.theta",
    "bc.beta0",
    "bc.beta1",
    "bc.beta2",
    "bc.row1",
    "bc.row2",
    "bc.wellposed",
    "problem.reference",
    "datum.kind",
    "datum.mode",
    "datum.amplitude",
    "datum.start",
    "datum.end",
    "datum.power",
    "datum.coeffs",
    "datum.file",
    "datum.regularity",
    "numerics.N",
    "numerics.P",
    "numerics.dt",
    "numerics.T",
    "numerics.snapshots",
    "numerics.levels",
    "numerics.cesaro",
    "analysis.q_max",
    "analysis.n_lo",
    "analysis.n_hi",
    "analysis.jump_ratio",
    "analysis.jump_floor",
    "analysis.jump_window",
];

fn section_of(key: &str) -> &str {
    match key.split('.').next().unwrap_or("") {
        "bc" | "problem" => "problem",
        other => other,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum DatumSpec {
    FourierMode {
        mode: i64,
        amplitude: Complex64,
    },
    Step {
        start: f64,
        end: f64,
    },
    Bump {
        power: u32,
    },
    Poly {
        coeffs: Vec<f64>,
    },
    SamplesFile {
        path: PathBuf,
        regularity: Regularity,
    },
}

impl DatumSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            DatumSpec::FourierMode { .. } => "fourier_mode",
            DatumSpec::Step { .. } => "step",
            DatumSpec::Bump { .. } => "bump",
            DatumSpec::Poly { .. } => "poly",
            DatumSpec::SamplesFile { .. } => "samples_file",
        }
    }

    /// Relative sample-file paths resolve against `base_dir`.
    pub fn build(&self, base_dir: &Path) -> Result<InitialDatum> {
        match self {
            DatumSpec::FourierMode { mode, amplitude } => {
                Ok(InitialDatum::fourier_mode(*mode, *amplitude))
            }
            DatumSpec::Step { start, end } => InitialDatum::step(*start, *end),
            DatumSpec::Bump { power } => InitialDatum::bump(*power),
            DatumSpec::Poly { coeffs } => InitialDatum::polynomial(coeffs.clone()),
            DatumSpec::SamplesFile { path, regularity } => {
                let full = if path.is_absolute() {
                    path.clone()
                } else {
                    base_dir.join(path)
                };
                let text = std::fs::read_to_string(&full)
                    .map_err(|e| AiryError::Io(format!("{}: {e}", full.display())))?;
                let mut samples = Vec::new();
                for (idx, raw) in text.lines().enumerate() {
                    let line = raw.trim();
                    if line.is_empty() || line.starts_with('#') {
                        continue;
                    }
                    samples.push(parse_complex(line).map_err(|message| AiryError::Config {
                        line: idx + 1,
                        message: format!("{}: {message}", full.display()),
                    })?);
                }
                InitialDatum::sampled(samples, *regularity)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Numerics {
    pub max_index: usize,
    pub points: usize,
    pub dt: f64,
    pub final_time: f64,
    pub snapshots: usize,
    pub levels: usize,
    pub cesaro: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AnalysisSettings {
    pub q_max: u64,
    pub n_lo: usize,
    pub n_hi: usize,
    pub jumps: JumpSettings,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub boundary: BoundarySpec,
    pub reference: bool,
    pub datum: DatumSpec,
    pub numerics: Numerics,
    pub analysis: AnalysisSettings,
}

struct Entry {
    line: usize,
    value: String,
}

struct Entries {
    map: BTreeMap<String, Entry>,
    last_line: usize,
}

impl Entries {
    fn raw(&self, key: &str) -> Option<&Entry> {
        self.map.get(key)
    }

    fn required(&self, key: &str) -> Result<&Entry> {
        self.raw(key).ok_or_else(|| AiryError::Config {
            line: self.last_line,
            message: format!("missing required key `{key}`"),
        })
    }

    fn parsed<T>(
        &self,
        key: &str,
        parse: impl Fn(&str) -> std::result::Result<T, String>,
    ) -> Result<Option<T>> {
        match self.raw(key) {
            None => Ok(None),
            Some(entry) => parse(&entry.value)
                .map(Some)
                .map_err(|message| AiryError::Config {
                    line: entry.line,
                    message: format!("`{key}`: {message}"),
                }),
        }
    }

    fn need<T>(
        &self,
        key: &str,
        parse: impl Fn(&str) -> std::result::Result<T, String>,
    ) -> Result<T> {
        self.required(key)?;
        Ok(self.parsed(key, parse)?.expect("checked above"))
    }

    fn line_of(&self, key: &str) -> usize {
        self.raw(key).map_or(self.last_line, |e| e.line)
    }

    fn fail(&self, key: &str, message: impl Into<String>) -> AiryError {
        AiryError::Config {
            line: self.line_of(key),
            message: format!("`{key}`: {}", message.into()),
        }
    }
}

fn tokenize(text: &str) -> Result<Entries> {
    let mut map = BTreeMap::new();
    let mut section: Option<String> = None;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with(';') {
            continue;
        }
        let err = |message: String| AiryError::Config {
            line: line_no,
            message,
        };
        if let Some(rest) = line.strip_prefix('[') {
            let name = rest
                .strip_suffix(']')
                .ok_or_else(|| err(format!("malformed section header `{line}`")))?
                .trim();
            if !SECTIONS.contains(&name) {
                return Err(err(format!("unknown section `[{name}]`")));
            }
            section = Some(name.to_string());
            continue;
        }
        let (key, value) = line
            .split_once('=')
            .ok_or_else(|| err(format!("expected `key = value`, found `{line}`")))?;
        let key = key.trim();
        let current = section
            .as_deref()
            .ok_or_else(|| err(format!("key `{key}` appears before any section header")))?;
        let full = if key.contains('.') {
            key.to_string()
        } else {
            format!("{current}.{key}")
        };
        if !KNOWN_KEYS.contains(&full.as_str()) {
            return Err(err(format!("unknown key `{full}`")));
        }
        if section_of(&full) != current {
            return Err(err(format!(
                "key `{full}` belongs in section `[{}]`",
                section_of(&full)
            )));
        }
        if let Some(previous) = map.get(&full) {
            let Entry { line, .. } = previous;
            return Err(err(format!(
                "duplicate key `{full}` (first set on line {line})"
            )));
        }
        map.insert(
            full,
            Entry {
                line: line_no,
                value: value.trim().to_string(),
            },
        );
    }
    Ok(Entries { map, last_line })
}

fn parse_f64(s: &str) -> std::result::Result<f64, String> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

fn parse_usize(s: &str) -> std::result::Result<usize, String> {
    s.trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a non-negative integer"))
}

fn parse_bool(s: &str) -> std::result::Result<bool, String> {
    match s.trim() {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        other => Err(format!("`{other}` is not a boolean")),
    }
}

fn parse_complex(s: &str) -> std::result::Result<Complex64, String> {
    match s.split_once(',') {
        Some((re, im)) => Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?)),
        None => Ok(Complex64::new(parse_f64(s)?, 0.0)),
    }
}

fn parse_row(s: &str) -> std::result::Result<TraceRow, String> {
    let parts: Vec<&str> = s.split(';').collect();
    if parts.len() != 6 {
        return Err(format!(
            "expected 6 `;`-separated complex entries, found {}",
            parts.len()
        ));
    }
    let mut row = [Complex64::new(0.0, 0.0); 6];
    for (slot, part) in row.iter_mut().zip(parts) {
        *slot = parse_complex(part)?;
    }
    Ok(TraceRow(row))
}

fn fmt_complex(c: Complex64) -> String {
    format!("{:?},{:?}", c.re, c.im)
}

fn fmt_row(row: &TraceRow) -> String {
    row.0
        .iter()
        .map(|c| fmt_complex(*c))
        .collect::<Vec<_>>()
        .join("; ")
}

fn parse_boundary(entries: &Entries) -> Result<BoundarySpec> {
    let family = entries.required("bc.family")?.value.clone();
    let required = family_keys(&family).ok_or_else(|| {
        entries.fail(
            "bc.family",
            format!(
                "unknown family `{family}`; expected one of {}",
                FAMILIES.join(", ")
            ),
        )
    })?;
    for key in required {
        entries.required(key)?;
    }
    let bc_keys = [
        "bc.gamma", "bc.theta", "bc.beta0", "bc.beta1", "bc.beta2", "bc.row1", "bc.row2",
    ];
    if let Some(extra) = bc_keys
        .iter()
        .find(|k| entries.raw(k).is_some() && !required.contains(k))
    {
        return Err(entries.fail(extra, format!("not used by family `{family}`")));
    }
    let kind = match family.as_str() {
        "periodic" => BoundaryFamily::Periodic,
        "dirichlet" => BoundaryFamily::DirichletType,
        "mixed" => BoundaryFamily::MixedDirichlet {
            gamma: entries.need("bc.gamma", parse_f64)?,
        },
        "pseudo_periodic" => BoundaryFamily::PseudoPeriodic {
            betas: [
                entries.need("bc.beta0", parse_complex)?,
                entries.need("bc.beta1", parse_complex)?,
                entries.need("bc.beta2", parse_complex)?,
            ],
        },
        "quasi_periodic" => BoundaryFamily::QuasiPeriodic {
            theta: entries.need("bc.theta", parse_f64)?,
        },
        _ => BoundaryFamily::QuasiCoupled {
            theta: entries.need("bc.theta", parse_f64)?,
            rows: [
                entries.need("bc.row1", parse_row)?,
                entries.need("bc.row2", parse_row)?,
            ],
        },
    };
    let wellposed = entries.parsed("bc.wellposed", parse_bool)?.unwrap_or(true);
    BoundarySpec::new(kind, wellposed).map_err(|e| entries.fail("bc.family", e.to_string()))
}

fn parse_datum(entries: &Entries) -> Result<DatumSpec> {
    let kind = entries.required("datum.kind")?.value.clone();
    let required = datum_keys(&kind).ok_or_else(|| {
        entries.fail(
            "datum.kind",
            format!(
                "unknown kind `{kind}`; expected one of {}",
                DATUM_KINDS.join(", ")
            ),
        )
    })?;
    for key in required {
        entries.required(key)?;
    }
    let optional: &[&str] = match kind.as_str() {
        "fourier_mode" => &["datum.amplitude"],
        "samples_file" => &["datum.regularity"],
        _ => &[],
    };
    let datum_keys_all = KNOWN_KEYS
        .iter()
        .filter(|k| k.starts_with("datum.") && **k != "datum.kind");
    for key in datum_keys_all {
        if entries.raw(key).is_some() && !required.contains(key) && !optional.contains(key) {
            return Err(entries.fail(key, format!("not used by datum kind `{kind}`")));
        }
    }
    let spec = match kind.as_str() {
        "fourier_mode" => DatumSpec::FourierMode {
            mode: entries.need("datum.mode", |s| {
                s.trim()
                    .parse::<i64>()
                    .map_err(|_| format!("`{s}` is not an integer"))
            })?,
            amplitude: entries
                .parsed("datum.amplitude", parse_complex)?
                .unwrap_or(Complex64::new(1.0, 0.0)),
        },
        "step" => DatumSpec::Step {
            start: entries.need("datum.start", parse_f64)?,
            end: entries.need("datum.end", parse_f64)?,
        },
        "bump" => DatumSpec::Bump {
            power: entries.need("datum.power", |s| {
                s.trim()
                    .parse::<u32>()
                    .map_err(|_| format!("`{s}` is not a non-negative integer"))
            })?,
        },
        "poly" => DatumSpec::Poly {
            coeffs: entries.need("datum.coeffs", |s| s.split(',').map(parse_f64).collect())?,
        },
        _ => DatumSpec::SamplesFile {
            path: PathBuf::from(&entries.required("datum.file")?.value),
            regularity: entries
                .parsed("datum.regularity", |s| {
                    Regularity::parse(s.trim()).ok_or_else(|| format!("unknown regularity `{s}`"))
                })?
                .unwrap_or(Regularity::BoundedVariation),
        },
    };
    // Validate eagerly where no file access is needed.
    if !matches!(spec, DatumSpec::SamplesFile { .. }) {
        spec.build(Path::new("."))
            .map_err(|e| entries.fail("datum.kind", e.to_string()))?;
    }
    Ok(spec)
}

fn parse_numerics(entries: &Entries) -> Result<Numerics> {
    let final_time = entries.need("numerics.T", parse_f64)?;
    if final_time <= 0.0 {
        return Err(entries.fail("numerics.T", "must be positive"));
    }
    let max_index = entries.need("numerics.N", parse_usize)?;
    if max_index == 0 {
        return Err(entries.fail("numerics.N", "must be at least 1"));
    }
    let points = entries.parsed("numerics.P", parse_usize)?.unwrap_or(256);
    if points < 64 {
        return Err(entries.fail("numerics.P", "must be at least 64"));
    }
    let dt = entries
        .parsed("numerics.dt", parse_f64)?
        .unwrap_or(final_time / 1000.0);
    if dt <= 0.0 {
        return Err(entries.fail("numerics.dt", "must be positive"));
    }
    let snapshots = entries
        .parsed("numerics.snapshots", parse_usize)?
        .unwrap_or(4);
    if snapshots == 0 {
        return Err(entries.fail("numerics.snapshots", "must be at least 1"));
    }
    let levels = entries.parsed("numerics.levels", parse_usize)?.unwrap_or(3);
    if !(1..=3).contains(&levels) {
        return Err(entries.fail("numerics.levels", "must be 1, 2 or 3"));
    }
    Ok(Numerics {
        max_index,
        points,
        dt,
        final_time,
        snapshots,
        levels,
        cesaro: entries
            .parsed("numerics.cesaro", parse_bool)?
            .unwrap_or(false),
    })
}

fn parse_analysis(entries: &Entries, numerics: &Numerics) -> Result<AnalysisSettings> {
    let defaults = JumpSettings::default();
    let q_max = entries.parsed("analysis.q_max", parse_usize)?.unwrap_or(8) as u64;
    if q_max == 0 {
        return Err(entries.fail("analysis.q_max", "must be at least 1"));
    }
    let n_hi = entries
        .parsed("analysis.n_hi", parse_usize)?
        .unwrap_or(numerics.max_index);
    let n_lo = entries
        .parsed("analysis.n_lo", parse_usize)?
        .unwrap_or((n_hi / 8).max(1));
    if n_hi > numerics.max_index {
        return Err(entries.fail("analysis.n_hi", "exceeds numerics.N"));
    }
    if n_lo == 0 || n_hi < n_lo + 8 {
        return Err(entries.fail(
            "analysis.n_lo",
            format!(
                "decay fits need 1 <= n_lo and n_hi >= n_lo + 8 (n_lo = {n_lo}, n_hi = {n_hi})"
            ),
        ));
    }
    let jumps = JumpSettings {
        ratio: entries
            .parsed("analysis.jump_ratio", parse_f64)?
            .unwrap_or(defaults.ratio),
        floor: entries
            .parsed("analysis.jump_floor", parse_f64)?
            .unwrap_or(defaults.floor),
        window: entries
            .parsed("analysis.jump_window", parse_usize)?
            .unwrap_or(defaults.window),
        ..defaults
    };
    Ok(AnalysisSettings {
        q_max,
        n_lo,
        n_hi,
        jumps,
    })
}

impl ScenarioConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let entries = tokenize(text)?;
        let boundary = parse_boundary(&entries)?;
        let reference = entries
            .parsed("problem.reference", parse_bool)?
            .unwrap_or(false);
        let datum = parse_datum(&entries)?;
        let numerics = parse_numerics(&entries)?;
        let analysis = parse_analysis(&entries, &numerics)?;
        Ok(Self {
            boundary,
            reference,
            datum,
            numerics,
            analysis,
        })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AiryError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Canonical text form; floats use the shortest representation that
    /// parses back to the same bits.
    pub fn to_ini(&self) -> String {
        let mut out = String::from("[problem]\n");
        out.push_str(&boundary_to_ini(&self.boundary));
        let _ = writeln!(out, "reference = {}", self.reference);
        out.push_str("\n[datum]\n");
        let _ = writeln!(out, "kind = {}", self.datum.kind());
        match &self.datum {
            DatumSpec::FourierMode { mode, amplitude } => {
                let _ = writeln!(
                    out,
                    "mode = {mode}\namplitude = {}",
                    fmt_complex(*amplitude)
                );
            }
            DatumSpec::Step { start, end } => {
                let _ = writeln!(out, "start = {start:?}\nend = {end:?}");
            }
            DatumSpec::Bump { power } => {
                let _ = writeln!(out, "power = {power}");
            }
            DatumSpec::Poly { coeffs } => {
                let list: Vec<String> = coeffs.iter().map(|c| format!("{c:?}")).collect();
                let _ = writeln!(out, "coeffs = {}", list.join(", "));
            }
            DatumSpec::SamplesFile { path, regularity } => {
                let _ = writeln!(
                    out,
                    "file = {}\nregularity = {}",
                    path.display(),
                    regularity.as_str()
                );
            }
        }
        let n = &self.numerics;
        let _ = writeln!(
            out,
            "\n[numerics]\nN = {}\nP = {}\ndt = {:?}\nT = {:?}\nsnapshots = {}\nlevels = {}\ncesaro = {}",
            n.max_index, n.points, n.dt, n.final_time, n.snapshots, n.levels, n.cesaro
        );
        let a = &self.analysis;
        let _ = writeln!(
            out,
            "\n[analysis]\nq_max = {}\nn_lo = {}\nn_hi = {}\njump_ratio = {:?}\njump_floor = {:?}\njump_window = {}",
            a.q_max, a.n_lo, a.n_hi, a.jumps.ratio, a.jumps.floor, a.jumps.window
        );
        out
    }
}

/// `bc.*` lines for boundary conditions, without a section header.
pub fn boundary_to_ini(bc: &BoundarySpec) -> String {
    let mut out = format!("bc.family = {}\n", bc.name());
    match bc.family() {
        BoundaryFamily::Periodic | BoundaryFamily::DirichletType => {}
        BoundaryFamily::MixedDirichlet { gamma } => {
            let _ = writeln!(out, "bc.gamma = {gamma:?}");
        }
        BoundaryFamily::PseudoPeriodic { betas } => {
            for (j, b) in betas.iter().enumerate() {
                let _ = writeln!(out, "bc.beta{j} = {}", fmt_complex(*b));
            }
        }
        BoundaryFamily::QuasiPeriodic { theta } => {
            let _ = writeln!(out, "bc.theta = {theta:?}");
        }
        BoundaryFamily::QuasiCoupled { theta, rows } => {
            let _ = writeln!(out, "bc.theta = {theta:?}");
            let _ = writeln!(
                out,
                "bc.row1 = {}\nbc.row2 = {}",
                fmt_row(&rows[0]),
                fmt_row(&rows[1])
            );
        }
    }
    let _ = writeln!(out, "bc.wellposed = {}", bc.wellposed_assumed());
    out
}

/// Parses a `[problem]` block holding only `bc.*` keys.
pub fn boundary_from_ini(text: &str) -> Result<BoundarySpec> {
    let entries = tokenize(text)?;
    if let Some((key, _)) = entries.map.iter().find(|(k, _)| !k.starts_with("bc.")) {
        return Err(entries.fail(key, "only `bc.*` keys are allowed here"));
    }
    parse_boundary(&entries)
}

#[cfg(test)]
mod tests {
    use super::*;

    const DIRICHLET: &str = "\
[problem]
bc.family = dirichlet
reference = true

[datum]
kind = poly
coeffs = 0, 0, 1, -2, 1

[numerics]
N = 128
P = 256
dt = 1e-5
T = 0.01
";

    fn line_of(err: AiryError) -> usize {
        match err {
            AiryError::Config { line, .. } => line,
            other => panic!("expected config error, got {other:?}"),
        }
    }

    #[test]
    fn parses_a_dirichlet_scenario() {
        let cfg = ScenarioConfig::parse(DIRICHLET).unwrap();
        assert_eq!(cfg.boundary, BoundarySpec::dirichlet_type());
        assert!(cfg.reference);
        assert_eq!(
            cfg.datum,
            DatumSpec::Poly {
                coeffs: vec![0.0, 0.0, 1.0, -2.0, 1.0]
            }
        );
        assert_eq!(cfg.numerics.max_index, 128);
        assert_eq!(cfg.analysis.n_hi, 128);
        assert_eq!(cfg.analysis.n_lo, 16);
    }

    #[test]
    fn canonical_form_round_trips() {
        let cfg = ScenarioConfig::parse(DIRICHLET).unwrap();
        assert_eq!(ScenarioConfig::parse(&cfg.to_ini()).unwrap(), cfg);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let bad = DIRICHLET.replace("N = 128", "N = many");
        assert_eq!(line_of(ScenarioConfig::parse(&bad).unwrap_err()), 10);
        let unknown = DIRICHLET.replace("P = 256", "Q = 256");
        assert_eq!(line_of(ScenarioConfig::parse(&unknown).unwrap_err()), 11);
        let misplaced = DIRICHLET.replace("reference = true", "numerics.T = 1");
        assert_eq!(line_of(ScenarioConfig::parse(&misplaced).unwrap_err()), 3);
    }

    #[test]
    fn family_parameters_are_validated() {
        let text = "[problem]\nbc.family = mixed\nbc.gamma = 1.5\n";
        let err = boundary_from_ini(text).unwrap_err();
        assert_eq!(line_of(err), 2);
        let missing = "[problem]\nbc.family = quasi_periodic\n";
        assert!(boundary_from_ini(missing).is_err());
        let stray = "[problem]\nbc.family = periodic\nbc.theta = 1\n";
        assert_eq!(line_of(boundary_from_ini(stray).unwrap_err()), 3);
    }

    #[test]
    fn coupled_rows_round_trip_bit_exactly() {
        let theta = std::f64::consts::PI / 3.0;
        let phase = Complex64::from_polar(1.0, theta);
        let rows = [
            TraceRow::coupling(1, Complex64::new(1.0, 0.0), -2.0 * phase),
            TraceRow::coupling(2, Complex64::new(1.0, 0.0), -phase),
        ];
        let bc = BoundarySpec::quasi_coupled(theta, rows).unwrap();
        let back = boundary_from_ini(&format!("[problem]\n{}", boundary_to_ini(&bc))).unwrap();
        assert_eq!(back, bc);
    }
}
