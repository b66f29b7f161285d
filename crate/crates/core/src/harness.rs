//! Named verification pipelines, their JSON records, and the golden-file
//! regression driver shared by the command-line tool.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::fock::{
    or_formula_lhs, or_formula_rhs, plane_partition_sum, refined_closed_form, DiagonalSpec,
    FockError,
};
use crate::hilbert::{
    c3_vars, cohomological_limit, hilb_c2_check, nekrasov_rhs, rigidity_vanish_check,
    star_closed, star_extract, surface_closed_form, surface_vars, z_series_c3, z_series_hilb_c2,
    HilbertError, SeriesComparison,
};
use crate::identities::{
    mtheory_identity_check, qbinomial_check, qbinomial_difference_equation, spinor_characters,
    spinor_difference_product, spinor_vars, IdentityError, IdentityReport,
};
use crate::lattice::text::{format_factored, format_polynomial};
use crate::lattice::{
    AlgebraError, LaurentPolynomial, Monomial, RationalSum, TruncatedSeries, VariableSet,
    ZeroTestConfig, DEFAULT_CLEARING_THRESHOLD,
};
use crate::partition::{enumerate_plane_partitions, PartitionError};
use crate::plethystic::{pleth_exp, pleth_log, PlethError};
use crate::stable::{
    degree_axiom_check, diagonal_decomposition_check, r_matrix, r_matrix_entries_check,
    stab_matrix, unitarity_check, yang_baxter_check, Chamber, FixedPointMatrix, StableError,
};

pub const SCHEMA_VERSION: u32 = 1;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("invalid command: {0}")]
    InvalidCommand(String),
    #[error("bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("module error: {0}")]
    Module(String),
    #[error("golden mismatch in {name}: {detail}")]
    GoldenMismatch { name: String, detail: String },
    #[error("io error: {0}")]
    Io(String),
}

impl HarnessError {
    /// Process exit status; 1 is reserved for a false verdict.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::InvalidCommand(_) => 2,
            HarnessError::BoundExceeded(_) => 3,
            HarnessError::Module(_) => 4,
            HarnessError::GoldenMismatch { .. } => 5,
            HarnessError::Io(_) => 6,
        }
    }
}

impl From<std::io::Error> for HarnessError {
    fn from(e: std::io::Error) -> Self {
        HarnessError::Io(e.to_string())
    }
}

impl From<HilbertError> for HarnessError {
    fn from(e: HilbertError) -> Self {
        match e {
            HilbertError::SizeLimitExceeded { .. }
            | HilbertError::Partition(PartitionError::SizeLimitExceeded { .. })
            | HilbertError::Pleth(PlethError::OrderTooLarge { .. }) => {
                HarnessError::BoundExceeded(e.to_string())
            }
            e => HarnessError::Module(e.to_string()),
        }
    }
}

impl From<FockError> for HarnessError {
    fn from(e: FockError) -> Self {
        match e {
            FockError::WindowTooSmall { .. }
            | FockError::CutoffTooLarge { .. }
            | FockError::Partition(PartitionError::SizeLimitExceeded { .. })
            | FockError::Pleth(PlethError::OrderTooLarge { .. }) => {
                HarnessError::BoundExceeded(e.to_string())
            }
            e => HarnessError::Module(e.to_string()),
        }
    }
}

impl From<IdentityError> for HarnessError {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::OrderTooLarge { .. } | IdentityError::Pleth(PlethError::OrderTooLarge { .. }) => {
                HarnessError::BoundExceeded(e.to_string())
            }
            e => HarnessError::Module(e.to_string()),
        }
    }
}

impl From<PlethError> for HarnessError {
    fn from(e: PlethError) -> Self {
        match e {
            PlethError::OrderTooLarge { .. } => HarnessError::BoundExceeded(e.to_string()),
            e => HarnessError::Module(e.to_string()),
        }
    }
}

impl From<StableError> for HarnessError {
    fn from(e: StableError) -> Self {
        HarnessError::Module(e.to_string())
    }
}

impl From<AlgebraError> for HarnessError {
    fn from(e: AlgebraError) -> Self {
        HarnessError::Module(e.to_string())
    }
}

impl From<PartitionError> for HarnessError {
    fn from(e: PartitionError) -> Self {
        match e {
            PartitionError::SizeLimitExceeded { .. } => HarnessError::BoundExceeded(e.to_string()),
            e => HarnessError::Module(e.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SpecKind {
    Macmahon,
    Refined,
    Generic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RCheck {
    Entries,
    Unitarity,
    Yb,
    Degree,
    Diag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum IdentityKind {
    Qbinomial,
    QbinomialDiff,
    Spinor,
    Mtheory,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    Pleth { expr: String, order: usize, log: bool },
    NekrasovCheck { order: usize },
    Hilb2Series { order: usize },
    StarExtract { order: usize },
    Rigidity { order: usize, trials: usize },
    CohLimit { order: usize },
    Macmahon { cutoff: usize, spec: SpecKind },
    Rmatrix { check: RCheck },
    Identities { which: IdentityKind, order: usize },
    Golden { suite: PathBuf, update: bool },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Pleth { .. } => "pleth",
            Command::NekrasovCheck { .. } => "nekrasov-check",
            Command::Hilb2Series { .. } => "hilb2-series",
            Command::StarExtract { .. } => "star-extract",
            Command::Rigidity { .. } => "rigidity",
            Command::CohLimit { .. } => "coh-limit",
            Command::Macmahon { .. } => "macmahon",
            Command::Rmatrix { .. } => "rmatrix",
            Command::Identities { .. } => "identities",
            Command::Golden { .. } => "golden",
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: Command,
    pub seed: u64,
    pub clearing_threshold: u64,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(command: Command) -> Self {
        RunConfig {
            command,
            seed: DEFAULT_SEED,
            clearing_threshold: DEFAULT_CLEARING_THRESHOLD,
            output: None,
        }
    }

    pub fn zero_test(&self) -> ZeroTestConfig {
        ZeroTestConfig {
            clearing_threshold: self.clearing_threshold,
            seed: self.seed,
            ..ZeroTestConfig::default()
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerdictRecord {
    pub identity: String,
    pub parameters: Value,
    pub verdict: bool,
    /// Wall time, not serialized.
    #[serde(skip)]
    pub elapsed_ms: u128,
    pub lhs_digest: String,
    pub rhs_digest: String,
    pub details: Value,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub schema: u32,
    pub command: String,
    pub seed: u64,
    pub records: Vec<VerdictRecord>,
    pub all_true: bool,
}

impl Report {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn digest(s: &str) -> String {
    hex::encode(Sha256::digest(s.as_bytes()))
}

fn record(
    identity: &str,
    parameters: Value,
    verdict: bool,
    lhs: &str,
    rhs: &str,
    details: Value,
    started: Instant,
) -> VerdictRecord {
    VerdictRecord {
        identity: identity.to_string(),
        parameters,
        verdict,
        elapsed_ms: started.elapsed().as_millis(),
        lhs_digest: digest(lhs),
        rhs_digest: digest(rhs),
        details,
    }
}

pub fn rational_series_lines(vars: &VariableSet, s: &TruncatedSeries<RationalSum>) -> Vec<String> {
    s.coeffs()
        .iter()
        .map(|c| format_factored(vars, &c.to_factored()))
        .collect()
}

pub fn polynomial_series_lines(vars: &VariableSet, s: &TruncatedSeries<LaurentPolynomial>) -> Vec<String> {
    s.coeffs().iter().map(|c| format_polynomial(vars, c)).collect()
}

fn canonical(lines: &[String]) -> String {
    lines
        .iter()
        .enumerate()
        .map(|(k, l)| format!("[{k}] {l}\n"))
        .collect()
}

fn comparison_details(c: &SeriesComparison) -> Value {
    json!({
        "mismatches": c.mismatches,
        "routes": c.routes.iter().map(|r| format!("{r:?}")).collect::<Vec<_>>(),
    })
}

/// Identifiers occurring in an expression, in order of appearance.
fn identifiers(expr: &str) -> Vec<String> {
    let mut out: Vec<String> = Vec::new();
    let mut cur = String::new();
    let flush = |cur: &mut String, out: &mut Vec<String>| {
        if !cur.is_empty() {
            if cur.chars().next().is_some_and(|c| c.is_ascii_alphabetic()) && !out.contains(cur) {
                out.push(cur.clone());
            }
            cur.clear();
        }
    };
    for ch in expr.chars() {
        if ch.is_ascii_alphanumeric() || ch == '_' {
            cur.push(ch);
        } else {
            flush(&mut cur, &mut out);
        }
    }
    flush(&mut cur, &mut out);
    out
}

/// `S•` (or its inverse) of a polynomial in `z` and other variables.
pub fn pleth_command(expr: &str, order: usize, log: bool) -> Result<(VariableSet, Vec<LaurentPolynomial>), HarnessError> {
    let mut names = identifiers(expr);
    names.retain(|n| n != "z");
    names.push("z".to_string());
    let vars = VariableSet::new(&names);
    let p = vars.parse(expr)?;
    let zi = names.len() - 1;
    let coeff_vars = VariableSet::new(&names[..zi]);
    let mut coeffs = vec![LaurentPolynomial::zero(zi); order + 1];
    for (m, c) in p.terms() {
        let e = m.doubled()[zi];
        if e < 0 || e % 2 != 0 {
            return Err(HarnessError::InvalidCommand(format!(
                "`z` must appear with nonnegative integer exponents in `{expr}`"
            )));
        }
        let k = (e / 2) as usize;
        if k <= order {
            let rest = Monomial::from_doubled(m.doubled()[..zi].iter().copied());
            coeffs[k].add_term(rest, c.clone());
        }
    }
    let series = TruncatedSeries::from_coeffs(&LaurentPolynomial::zero(zi), order, coeffs);
    let out = if log { pleth_log(&series)? } else { pleth_exp(&series)? };
    Ok((coeff_vars, out.coeffs().to_vec()))
}

fn matrix_lines(m: &FixedPointMatrix) -> Vec<String> {
    let vars = VariableSet::new(&crate::stable::MATRIX_VARS);
    m.entries_factored()
        .iter()
        .map(|f| format_factored(&vars, f))
        .collect()
}

pub fn run(config: &RunConfig) -> Result<Report, HarnessError> {
    let cfg = config.zero_test();
    let params = serde_json::to_value(&config.command).expect("command serializes");
    let started = Instant::now();
    let mut records = Vec::new();
    match &config.command {
        Command::Pleth { expr, order, log } => {
            let (vars, coeffs) = pleth_command(expr, *order, *log)?;
            let lines: Vec<String> = coeffs.iter().map(|c| format_polynomial(&vars, c)).collect();
            let text = canonical(&lines);
            records.push(record(
                if *log { "pleth-log" } else { "pleth-exp" },
                params,
                true,
                expr,
                &text,
                json!({ "coefficients": lines }),
                started,
            ));
        }
        Command::NekrasovCheck { order } => {
            let vars = c3_vars();
            let lhs = z_series_c3(*order)?;
            let rhs = nekrasov_rhs(*order)?;
            let cmp = SeriesComparison::compare(&lhs, &rhs, &cfg);
            let (l, r) = (rational_series_lines(&vars, &lhs), rational_series_lines(&vars, &rhs));
            records.push(record(
                "nekrasov-c3",
                params,
                cmp.verdict(),
                &canonical(&l),
                &canonical(&r),
                comparison_details(&cmp),
                started,
            ));
        }
        Command::Hilb2Series { order } => {
            let vars = surface_vars();
            let cmp = hilb_c2_check(*order, &cfg)?;
            let lhs = z_series_hilb_c2(*order)?;
            let rhs = surface_closed_form(*order)?;
            let (l, r) = (rational_series_lines(&vars, &lhs), rational_series_lines(&vars, &rhs));
            let mut details = comparison_details(&cmp);
            details["closed_form"] = json!(r);
            records.push(record(
                "surface-c2",
                params,
                cmp.verdict(),
                &canonical(&l),
                &canonical(&r),
                details,
                started,
            ));
        }
        Command::StarExtract { order } => {
            let vars = VariableSet::new(&["kappa"]);
            let star = star_extract(*order)?;
            let closed = star_closed(*order);
            let (l, r) = (polynomial_series_lines(&vars, &star), polynomial_series_lines(&vars, &closed));
            records.push(record(
                "star",
                params,
                star == closed,
                &canonical(&l),
                &canonical(&r),
                json!({ "star": l, "note": "exponents of kappa count powers of kappa^(1/2)" }),
                started,
            ));
        }
        Command::Rigidity { order, trials } => {
            let mut rows = Vec::new();
            let mut all = true;
            let mut text = String::new();
            for n in 1..=*order {
                for pi in enumerate_plane_partitions(n)? {
                    let r = rigidity_vanish_check(&pi, *trials, config.seed)?;
                    all &= r.verdict();
                    text.push_str(&format!("{:?} {} {:?}\n", pi.heights(), r.vanishing_order, r.values));
                    rows.push(json!({
                        "plane_partition": pi.heights(),
                        "vanishing_order": r.vanishing_order,
                        "zeros": r.values.iter().filter(|v| num_traits::Zero::is_zero(*v)).count(),
                        "off_locus": r.off_locus.to_string(),
                    }));
                }
            }
            records.push(record("rigidity", params, all, &text, "", json!({ "fixed_points": rows }), started));
        }
        Command::CohLimit { order } => {
            let c = cohomological_limit(*order)?;
            let l: Vec<String> = c.limits.iter().map(|x| format_factored(&c.vars, &x.to_factored())).collect();
            let r: Vec<String> = c.predicted.iter().map(|x| format_factored(&c.vars, &x.to_factored())).collect();
            records.push(record(
                "cohomological-limit",
                params,
                c.verdict(),
                &canonical(&l),
                &canonical(&r),
                json!({ "exponent": l.get(1), "mismatches": c.mismatches }),
                started,
            ));
        }
        Command::Macmahon { cutoff, spec } => {
            let window = cutoff.saturating_sub(1);
            let (ds, vars) = match spec {
                SpecKind::Macmahon => (DiagonalSpec::macmahon(window), VariableSet::new(&["q"])),
                SpecKind::Refined => (DiagonalSpec::refined(window), VariableSet::new(&["z", "kappa"])),
                SpecKind::Generic => {
                    let names: Vec<String> = (-(window as i64)..=window as i64)
                        .map(|d| if d < 0 { format!("qm{}", -d) } else { format!("q{d}") })
                        .collect();
                    (DiagonalSpec::generic(window), VariableSet::new(&names))
                }
            };
            let lhs = or_formula_lhs(&ds, *cutoff)?;
            let rhs = match spec {
                SpecKind::Refined => refined_closed_form(*cutoff)?,
                _ => or_formula_rhs(&ds, *cutoff)?,
            };
            let mut verdict = lhs == rhs;
            let mut details = json!({ "lhs": format_polynomial(&vars, &lhs), "rhs": format_polynomial(&vars, &rhs) });
            if *spec == SpecKind::Generic {
                let brute = plane_partition_sum(&ds, *cutoff)?;
                verdict &= brute == lhs;
                details["brute_force_agrees"] = json!(brute == lhs);
            }
            records.push(record(
                "macmahon",
                params,
                verdict,
                &format_polynomial(&vars, &lhs),
                &format_polynomial(&vars, &rhs),
                details,
                started,
            ));
        }
        Command::Rmatrix { check } => {
            let r = r_matrix()?;
            let lines = matrix_lines(&r);
            let (verdict, details) = match check {
                RCheck::Entries => (r_matrix_entries_check(&cfg)?, json!({ "r": lines })),
                RCheck::Unitarity => (unitarity_check(&cfg)?, json!({ "r": lines })),
                RCheck::Yb => {
                    let ordering = yang_baxter_check(&cfg);
                    match ordering {
                        Ok(o) => (true, json!({ "r": lines, "block_ordering": o })),
                        Err(StableError::BasisOrderMismatch) => (false, json!({ "r": lines })),
                        Err(e) => return Err(e.into()),
                    }
                }
                RCheck::Degree => {
                    let mut rows = Vec::new();
                    let mut ok = true;
                    for chamber in [Chamber::Plus, Chamber::Minus] {
                        for (n, d, expect) in [(1, 4, true), (1, 2, true), (3, 4, true), (0, 1, false), (1, 1, false)] {
                            let eps = crate::lattice::q_frac(n, d);
                            let got = degree_axiom_check(chamber, &eps)?;
                            ok &= got == expect;
                            rows.push(json!({ "chamber": chamber, "eps": eps.to_string(), "holds": got }));
                        }
                    }
                    (ok, json!({ "cases": rows }))
                }
                RCheck::Diag => (diagonal_decomposition_check(&cfg)?, json!({
                    "stab_plus": matrix_lines(&stab_matrix(Chamber::Plus)?),
                    "stab_minus": matrix_lines(&stab_matrix(Chamber::Minus)?),
                })),
            };
            records.push(record("rmatrix", params, verdict, &canonical(&lines), "", details, started));
        }
        Command::Identities { which, order } => {
            let report = match which {
                IdentityKind::Qbinomial => qbinomial_check(*order)?,
                IdentityKind::QbinomialDiff => qbinomial_difference_equation(*order)?,
                IdentityKind::Mtheory => mtheory_identity_check(),
                IdentityKind::Spinor => spinor_report(),
            };
            records.push(identity_record(report, params, started));
        }
        Command::Golden { suite, update } => {
            let g = golden_regression(suite, *update)?;
            records.push(record("golden", params, true, &g.join("\n"), "", json!({ "series": g }), started));
        }
    }
    let all_true = records.iter().all(|r| r.verdict);
    Ok(Report {
        schema: SCHEMA_VERSION,
        command: config.command.name().to_string(),
        seed: config.seed,
        records,
        all_true,
    })
}

fn spinor_report() -> IdentityReport {
    let vars = spinor_vars();
    let (p, m) = spinor_characters();
    let diff = &p - &m;
    let prod = spinor_difference_product();
    let checks = [diff == prod, p.bar() == m, p.len() == 16 && m.len() == 16];
    IdentityReport {
        name: "spinor".into(),
        order: 0,
        lhs: vec![format_polynomial(&vars, &p), format_polynomial(&vars, &m)],
        rhs: vec![format_polynomial(&vars, &prod)],
        verdict: checks.iter().all(|c| *c),
        first_mismatch: checks.iter().position(|c| !c),
    }
}

fn identity_record(r: IdentityReport, params: Value, started: Instant) -> VerdictRecord {
    let lhs = canonical(&r.lhs);
    let rhs = canonical(&r.rhs);
    record(
        &r.name.clone(),
        params,
        r.verdict,
        &lhs,
        &rhs,
        json!({ "order": r.order, "first_mismatch": r.first_mismatch }),
        started,
    )
}

/// Canonical serializations checked by the golden suite.
pub fn golden_series() -> Result<BTreeMap<&'static str, String>, HarnessError> {
    let mut out = BTreeMap::new();
    let c3 = c3_vars();
    out.insert("nekrasov_lhs_z2", canonical(&rational_series_lines(&c3, &z_series_c3(2)?)));
    out.insert(
        "star_z4",
        canonical(&polynomial_series_lines(&VariableSet::new(&["kappa"]), &star_extract(4)?)),
    );
    out.insert(
        "surface_closed_z3",
        canonical(&rational_series_lines(&surface_vars(), &surface_closed_form(3)?)),
    );
    out.insert(
        "macmahon_cutoff6",
        format_polynomial(&VariableSet::new(&["q"]), &or_formula_lhs(&DiagonalSpec::macmahon(5), 6)?) + "\n",
    );
    out.insert(
        "refined_cutoff4",
        format_polynomial(&VariableSet::new(&["z", "kappa"]), &refined_closed_form(4)?) + "\n",
    );
    out.insert("qbinomial_z4", canonical(&qbinomial_check(4)?.lhs));
    out.insert("r_matrix", canonical(&matrix_lines(&r_matrix()?)));
    out.insert("mtheory", canonical(&mtheory_identity_check().lhs));
    out.insert("spinor", canonical(&spinor_report().lhs));
    Ok(out)
}

/// Recomputes every golden series and compares byte for byte; with
/// `update` the files are rewritten instead.
pub fn golden_regression(suite: &Path, update: bool) -> Result<Vec<String>, HarnessError> {
    let series = golden_series()?;
    if update {
        fs::create_dir_all(suite)?;
    }
    let mut checked = Vec::new();
    for (name, text) in series {
        let path = suite.join(format!("{name}.txt"));
        if update {
            fs::write(&path, &text)?;
        } else {
            let stored = fs::read_to_string(&path).map_err(|_| HarnessError::GoldenMismatch {
                name: name.to_string(),
                detail: format!("missing golden file {}", path.display()),
            })?;
            if stored != text {
                let line = stored
                    .lines()
                    .zip(text.lines())
                    .position(|(a, b)| a != b)
                    .unwrap_or_else(|| stored.lines().count().min(text.lines().count()));
                return Err(HarnessError::GoldenMismatch {
                    name: name.to_string(),
                    detail: format!("first difference at line {}", line + 1),
                });
            }
        }
        checked.push(name.to_string());
    }
    Ok(checked)
}

/// Size of the global worker pool.
#[cfg(feature = "parallel")]
pub fn configure_threads(n: usize) -> Result<(), HarnessError> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| HarnessError::InvalidCommand(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pleth_of_single_weight() {
        let (_, c) = pleth_command("z*t", 3, false).unwrap();
        let vars = VariableSet::new(&["t"]);
        let s: Vec<String> = c.iter().map(|p| format_polynomial(&vars, p)).collect();
        assert_eq!(s, vec!["1", "t", "t^2", "t^3"]);
        let (_, back) = pleth_command("1 + z*t + z^2*t^2 + z^3*t^3", 3, true).unwrap();
        assert_eq!(format_polynomial(&vars, &back[1]), "t");
        assert!(back[2].is_zero() && back[3].is_zero());
    }

    #[test]
    fn exit_codes_are_distinct() {
        let errs = [
            HarnessError::InvalidCommand(String::new()),
            HarnessError::BoundExceeded(String::new()),
            HarnessError::Module(String::new()),
            HarnessError::GoldenMismatch { name: String::new(), detail: String::new() },
            HarnessError::Io(String::new()),
        ];
        let mut codes: Vec<i32> = errs.iter().map(|e| e.exit_code()).collect();
        codes.push(1);
        codes.sort();
        codes.dedup();
        assert_eq!(codes.len(), 6);
    }

    #[test]
    fn report_is_reproducible() {
        let cfg = RunConfig::new(Command::Macmahon { cutoff: 4, spec: SpecKind::Generic });
        let a = run(&cfg).unwrap().to_json();
        let b = run(&cfg).unwrap().to_json();
        assert_eq!(a, b);
        assert!(a.contains("\"schema\": 1"));
    }
}
