//! Command implementations behind the `fourfold` binary and their
//! serializers.
//!
//! Every command returns a [`ReportEnvelope`]. Envelopes are converted to a
//! `serde_json::Value` tree before rendering, which gives sorted keys and
//! therefore byte-stable JSON.

use std::fmt::Write as _;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::hirzebruch::{self, HirzebruchError, HorikawaAmpleness, SurfaceRecord};
use crate::obstruction::{self, ObstructionCertificate, ObstructionError, SwManifold};
use crate::pairfinder::{
    self, EinsteinPair, GeographyPredicateSet, PairError, PairFinder, PerssonRegion,
};
use crate::topo::{self, CharNumbers, ChernNumbers, Parity, TopoError, TopologicalType};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error(transparent)]
    Topo(#[from] TopoError),
    #[error(transparent)]
    Hirzebruch(#[from] HirzebruchError),
    #[error(transparent)]
    Obstruction(#[from] ObstructionError),
    #[error(transparent)]
    Pair(#[from] PairError),
    #[error("serialization failed: {0}")]
    Serialize(String),
}

impl CliError {
    /// 2 for usage errors, 1 for domain errors.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Csv,
}

pub const PERSSON_CAVEAT: &str = "existence of the minimal surfaces Y is assumed throughout the configured geography region; the region is a configuration, not a theorem";
pub const I_MIN_CAVEAT: &str = "companions Y are asserted only for i large enough; every mechanical check passes from i = 0, which is the default i_min";
pub const BRANCH_AMPLENESS_CAVEAT: &str = "the Nakai criterion a > 0, b > a*i rejects the branch class 6S + 2(2i+3)F for i >= 3; simple connectivity of Z_i is recorded regardless";
pub const SW_AXIOM_CAVEAT: &str =
    "non-vanishing of a Seiberg-Witten invariant is an input axiom, not computed";
pub const LATTICE_CAVEAT: &str = "Z at each scanned lattice point is assumed simply connected, non-spin, with ample canonical bundle";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub inputs: Value,
    pub result: Value,
    pub caveats: Vec<String>,
}

impl ReportEnvelope {
    fn new(
        command: &str,
        inputs: Value,
        result: impl Serialize,
        caveats: &[&str],
    ) -> Result<Self, CliError> {
        Ok(Self {
            command: command.to_string(),
            inputs,
            result: to_value(result)?,
            caveats: caveats.iter().map(|c| c.to_string()).collect(),
        })
    }

    pub fn to_value(&self) -> Result<Value, CliError> {
        to_value(self)
    }
}

fn to_value(v: impl Serialize) -> Result<Value, CliError> {
    serde_json::to_value(v).map_err(|e| CliError::Serialize(e.to_string()))
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct InvariantsArgs {
    pub e: Option<i64>,
    pub sigma: Option<i64>,
    pub c1sq: Option<i64>,
    pub chi: Option<i64>,
    pub b2plus: Option<i64>,
    pub b2minus: Option<i64>,
    pub parity: Option<Parity>,
}

#[derive(Debug, Serialize)]
struct HitchinThorpe {
    non_strict: bool,
    strict: bool,
    equality: bool,
    margin: i64,
}

impl HitchinThorpe {
    fn of(c: CharNumbers) -> Self {
        Self {
            non_strict: topo::hitchin_thorpe(c, false),
            strict: topo::hitchin_thorpe(c, true),
            equality: topo::hitchin_thorpe_equality(c),
            margin: c.hitchin_thorpe_margin(),
        }
    }
}

pub fn cmd_invariants(args: &InvariantsArgs) -> Result<ReportEnvelope, CliError> {
    let count = |flags: &[bool]| flags.iter().filter(|f| **f).count();
    // (name, fields supplied, fields required)
    let groups = [
        (
            "e/sigma",
            count(&[args.e.is_some(), args.sigma.is_some()]),
            2,
        ),
        (
            "c1sq/chi",
            count(&[args.c1sq.is_some(), args.chi.is_some()]),
            2,
        ),
        (
            "b2plus/b2minus/parity",
            count(&[
                args.b2plus.is_some(),
                args.b2minus.is_some(),
                args.parity.is_some(),
            ]),
            3,
        ),
    ];
    let complete: Vec<&str> = groups
        .iter()
        .filter(|(_, given, need)| given == need)
        .map(|(n, _, _)| *n)
        .collect();
    let partial: Vec<&str> = groups
        .iter()
        .filter(|(_, given, need)| *given > 0 && given < need)
        .map(|(n, _, _)| *n)
        .collect();
    match (complete.len(), partial.len()) {
        (1, 0) => {}
        (0, _) => {
            return Err(CliError::Usage(format!(
                "underdetermined input: supply exactly one of --e/--sigma, --c1sq/--chi, --b2plus/--b2minus/--parity{}",
                if partial.is_empty() { String::new() } else { format!(" (incomplete: {})", partial.join(", ")) }
            )))
        }
        _ => {
            return Err(CliError::Usage(format!(
                "overdetermined input: got {} coordinate groups",
                complete.len() + partial.len()
            )))
        }
    }

    let (source, char_numbers, chern, topological) = match complete[0] {
        "e/sigma" => {
            let c = CharNumbers::new(args.e.unwrap_or_default(), args.sigma.unwrap_or_default());
            ("e/sigma", c, Some(topo::char_to_chern(c)?), None)
        }
        "c1sq/chi" => {
            let ch = ChernNumbers::new(args.c1sq.unwrap_or_default(), args.chi.unwrap_or_default());
            ("c1sq/chi", topo::chern_to_char(ch), Some(ch), None)
        }
        _ => {
            let t = TopologicalType::new(
                args.b2plus.unwrap_or_default(),
                args.b2minus.unwrap_or_default(),
                args.parity.unwrap_or(Parity::Odd),
            )?;
            let c = t.char_numbers();
            (
                "b2plus/b2minus/parity",
                c,
                topo::char_to_chern(c).ok(),
                Some(t),
            )
        }
    };

    let (b2_plus, b2_minus) = match topological {
        Some(t) => (Some(t.b2_plus()), Some(t.b2_minus())),
        None => match TopologicalType::from_char(char_numbers, Parity::Odd) {
            Ok(t) => (Some(t.b2_plus()), Some(t.b2_minus())),
            Err(_) => (None, None),
        },
    };

    let inputs = json!({
        "e": args.e, "sigma": args.sigma, "c1sq": args.c1sq, "chi": args.chi,
        "b2plus": args.b2plus, "b2minus": args.b2minus, "parity": args.parity,
    });
    let ht = HitchinThorpe::of(char_numbers);
    let mut caveats = Vec::new();
    if chern.is_none() {
        caveats.push("e + sigma is not divisible by 4: no complex surface has this type");
    }
    if ht.equality {
        caveats.push("Hitchin-Thorpe equality: Einstein metrics here are flat or K3 quotients");
    }
    let result = json!({
        "source": source,
        "char": char_numbers,
        "chern": chern,
        "b2_plus": b2_plus,
        "b2_minus": b2_minus,
        "parity": topological.map(|t| t.parity()),
        "hitchin_thorpe": ht,
    });
    ReportEnvelope::new("invariants", inputs, result, &caveats)
}

#[derive(Debug, Serialize)]
struct PairReport<'a> {
    verified: bool,
    margin_line: String,
    obstruction_margin: i64,
    hitchin_thorpe_margin: i64,
    x_char: CharNumbers,
    z_char: CharNumbers,
    y_char: CharNumbers,
    pair: &'a EinsteinPair,
}

impl<'a> PairReport<'a> {
    fn of(pair: &'a EinsteinPair) -> Self {
        Self {
            verified: pair.is_verified(),
            margin_line: pair.certificate.margin_line(),
            obstruction_margin: pair.certificate.margin(),
            hitchin_thorpe_margin: pair.hitchin_thorpe_margin(),
            x_char: pair.x_topo.char_numbers(),
            z_char: topo::chern_to_char(pair.z.chern),
            y_char: topo::chern_to_char(pair.y_chern),
            pair,
        }
    }
}

fn non_negative(name: &str, v: i64) -> Result<u32, CliError> {
    u32::try_from(v)
        .map_err(|_| CliError::Usage(format!("--{name} must be a non-negative integer, got {v}")))
}

pub fn cmd_pair(i: i64, i_min: i64, region: PerssonRegion) -> Result<ReportEnvelope, CliError> {
    let idx = non_negative("i", i)?;
    let finder = PairFinder::new(
        GeographyPredicateSet::new(region),
        non_negative("i-min", i_min)?,
    );
    let pair = finder.horikawa_pair(idx)?;
    let mut caveats = vec![PERSSON_CAVEAT, I_MIN_CAVEAT];
    if !hirzebruch::horikawa_ampleness(idx).branch_ample {
        caveats.push(BRANCH_AMPLENESS_CAVEAT);
    }
    let inputs = json!({ "i": i, "i_min": i_min, "region": region });
    ReportEnvelope::new("pair", inputs, PairReport::of(&pair), &caveats)
}

#[derive(Debug, Serialize)]
struct HorikawaReport {
    i: u32,
    record: SurfaceRecord,
    char: CharNumbers,
    ampleness: HorikawaAmpleness,
    branch_ampleness_discrepancy: bool,
}

pub fn cmd_horikawa(i: i64) -> Result<ReportEnvelope, CliError> {
    let idx = non_negative("i", i)?;
    let record = hirzebruch::horikawa(idx);
    let ampleness = hirzebruch::horikawa_ampleness(idx);
    let mut caveats = Vec::new();
    if !ampleness.branch_ample {
        caveats.push(BRANCH_AMPLENESS_CAVEAT);
    }
    let result = HorikawaReport {
        i: idx,
        char: topo::chern_to_char(record.chern),
        branch_ampleness_discrepancy: !ampleness.branch_ample,
        record,
        ampleness,
    };
    ReportEnvelope::new("horikawa", json!({ "i": i }), result, &caveats)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ObstructArgs {
    pub e: i64,
    pub sigma: i64,
    pub k: i64,
    pub b2plus: Option<i64>,
    pub parity: Parity,
    pub has_nonzero_sw: bool,
}

#[derive(Debug, Serialize)]
struct ObstructReport {
    y_topo: TopologicalType,
    margin_line: String,
    obstruction_margin: i64,
    certificate: ObstructionCertificate,
}

pub fn cmd_obstruct(args: &ObstructArgs) -> Result<ReportEnvelope, CliError> {
    let k = non_negative("k", args.k)?;
    let t = TopologicalType::from_char(CharNumbers::new(args.e, args.sigma), args.parity)?;
    if let Some(b) = args.b2plus {
        if b != t.b2_plus() {
            return Err(CliError::Usage(format!(
                "--b2plus {b} disagrees with (e, sigma), which give b2+ = {}",
                t.b2_plus()
            )));
        }
    }
    let y = SwManifold {
        topo: t,
        has_nonzero_sw: args.has_nonzero_sw,
        provenance: "supplied on the command line".into(),
    };
    let certificate = obstruction::einstein_obstructed(&y, k)?;
    let inputs = json!({
        "e": args.e, "sigma": args.sigma, "k": args.k, "b2plus": args.b2plus,
        "parity": args.parity, "sw": args.has_nonzero_sw,
    });
    let result = ObstructReport {
        y_topo: t,
        margin_line: certificate.margin_line(),
        obstruction_margin: certificate.margin(),
        certificate,
    };
    ReportEnvelope::new("obstruct", inputs, result, &[SW_AXIOM_CAVEAT])
}

pub fn cmd_homeo(first: &str, second: &str) -> Result<ReportEnvelope, CliError> {
    let a: TopologicalType = first.parse()?;
    let b: TopologicalType = second.parse()?;
    let result = json!({
        "first": a,
        "second": b,
        "first_char": a.char_numbers(),
        "second_char": b.char_numbers(),
        "homeomorphic": topo::freedman_homeomorphic(&a, &b),
    });
    ReportEnvelope::new(
        "homeo",
        json!({ "first": first, "second": second }),
        result,
        &[],
    )
}

/// Column order of `scan` CSV output.
pub const SCAN_COLUMNS: [&str; 8] = [
    "chi",
    "c1sq_z",
    "c1sq_y",
    "k",
    "e",
    "sigma",
    "ht_margin",
    "obstruction_margin",
];

#[derive(
    Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, serde::Deserialize,
)]
pub struct ScanRow {
    pub chi: i64,
    pub c1sq_z: i64,
    pub c1sq_y: i64,
    pub k: u32,
    pub e: i64,
    pub sigma: i64,
    pub ht_margin: i64,
    pub obstruction_margin: i64,
}

impl ScanRow {
    pub fn of(pair: &EinsteinPair) -> Self {
        let x = pair.x_topo.char_numbers();
        Self {
            chi: pair.z.chern.chi,
            c1sq_z: pair.z.chern.c1sq,
            c1sq_y: pair.y_chern.c1sq,
            k: pair.k,
            e: x.e,
            sigma: x.sigma,
            ht_margin: x.hitchin_thorpe_margin(),
            obstruction_margin: pair.certificate.margin(),
        }
    }
}

pub fn cmd_scan(
    chi_min: i64,
    chi_max: i64,
    region: PerssonRegion,
) -> Result<ReportEnvelope, CliError> {
    if chi_min < 1 || chi_max < chi_min {
        return Err(CliError::Usage(format!(
            "invalid range: need 1 <= chi-min <= chi-max, got {chi_min}..{chi_max}"
        )));
    }
    let finder = PairFinder::new(GeographyPredicateSet::new(region), 0);
    let rows: Vec<ScanRow> = finder
        .general_search(chi_min, chi_max)?
        .iter()
        .map(ScanRow::of)
        .collect();
    let inputs = json!({ "chi_min": chi_min, "chi_max": chi_max, "region": region });
    let result = json!({ "count": rows.len(), "rows": rows });
    ReportEnvelope::new("scan", inputs, result, &[PERSSON_CAVEAT, LATTICE_CAVEAT])
}

pub fn cmd_godeaux() -> Result<ReportEnvelope, CliError> {
    let p = pairfinder::positive_negative_pair()?;
    ReportEnvelope::new("godeaux", json!({}), p, &[])
}

pub fn render(env: &ReportEnvelope, format: Format) -> Result<String, CliError> {
    match format {
        Format::Json => render_json(env),
        Format::Csv => render_csv(env),
        Format::Text => Ok(render_text(env)),
    }
}

pub fn render_json(env: &ReportEnvelope) -> Result<String, CliError> {
    let mut out = serde_json::to_string_pretty(&env.to_value()?)
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    out.push('\n');
    Ok(out)
}

/// Caveats become leading `# ` comment lines, followed by the fixed header.
pub fn render_csv(env: &ReportEnvelope) -> Result<String, CliError> {
    if env.command != "scan" {
        return Err(CliError::Usage(format!(
            "csv output is only available for scan, not {}",
            env.command
        )));
    }
    let rows: Vec<ScanRow> = serde_json::from_value(env.result["rows"].clone())
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    let mut out = String::new();
    for c in &env.caveats {
        let _ = writeln!(out, "# {c}");
    }
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(SCAN_COLUMNS)
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    for row in &rows {
        w.write_record(&[
            row.chi.to_string(),
            row.c1sq_z.to_string(),
            row.c1sq_y.to_string(),
            row.k.to_string(),
            row.e.to_string(),
            row.sigma.to_string(),
            row.ht_margin.to_string(),
            row.obstruction_margin.to_string(),
        ])
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::Serialize(e.to_string()))?;
    out.push_str(&String::from_utf8_lossy(&bytes));
    Ok(out)
}

pub fn render_text(env: &ReportEnvelope) -> String {
    let mut out = format!("command: {}\n", env.command);
    out.push_str("inputs:\n");
    write_value(&mut out, &env.inputs, 1);
    out.push_str("result:\n");
    match env.result.get("rows").and_then(Value::as_array) {
        Some(rows) if env.command == "scan" => {
            let _ = writeln!(out, "  count: {}", rows.len());
            let _ = writeln!(out, "  {}", SCAN_COLUMNS.join("\t"));
            for r in rows {
                let cells: Vec<String> = SCAN_COLUMNS.iter().map(|c| scalar(&r[*c])).collect();
                let _ = writeln!(out, "  {}", cells.join("\t"));
            }
        }
        _ => write_value(&mut out, &env.result, 1),
    }
    if !env.caveats.is_empty() {
        out.push_str("caveats:\n");
        for c in &env.caveats {
            let _ = writeln!(out, "  - {c}");
        }
    }
    out
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn write_value(out: &mut String, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    match v {
        Value::Object(map) => {
            for (key, val) in map {
                match val {
                    Value::Object(m) if !m.is_empty() => {
                        let _ = writeln!(out, "{pad}{key}:");
                        write_value(out, val, depth + 1);
                    }
                    Value::Array(a) if !a.is_empty() => {
                        let _ = writeln!(out, "{pad}{key}:");
                        write_value(out, val, depth + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}{key}: {}", scalar(val));
                    }
                }
            }
        }
        Value::Array(items) => {
            for item in items {
                match item {
                    Value::Object(_) | Value::Array(_) => {
                        let _ = writeln!(out, "{pad}-");
                        write_value(out, item, depth + 1);
                    }
                    _ => {
                        let _ = writeln!(out, "{pad}- {}", scalar(item));
                    }
                }
            }
        }
        other => {
            let _ = writeln!(out, "{pad}{}", scalar(other));
        }
    }
}
