//! Run configuration: JSON file first, then command-line overrides, then
//! validation. Every error names the offending field.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use rbaudit_core::audit::{AuditConfig, Boundary, ClaimId, MAX_SEARCH_SPACE};
use rbaudit_core::operator::{Profile1D, ProfileSpec};
use rbaudit_core::printed::EquationId;
use rbaudit_core::scalar::{Rational, Scalar};
use rbaudit_core::verdict::{Window, DEFAULT_WITNESS_CAP};

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("invalid `{field}`: {reason}")]
    Field { field: String, reason: String },
    #[error("{0}")]
    Usage(String),
}

fn field_err(field: &str, reason: impl fmt::Display) -> ConfigError {
    ConfigError::Field {
        field: field.to_string(),
        reason: reason.to_string(),
    }
}

/// `q`, `alpha` or `beta`: an exact rational or the literal `symbolic`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum QValue {
    Symbolic,
    Value(Rational),
}

impl QValue {
    pub fn to_scalar(&self) -> Scalar {
        match self {
            QValue::Symbolic => Scalar::q(),
            QValue::Value(r) => Scalar::constant(r.clone()),
        }
    }
}

impl fmt::Display for QValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QValue::Symbolic => f.write_str("symbolic"),
            QValue::Value(r) => write!(f, "{r}"),
        }
    }
}

impl FromStr for QValue {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("symbolic") || s == "q" {
            return Ok(QValue::Symbolic);
        }
        s.parse::<Rational>()
            .map(QValue::Value)
            .map_err(|_| format!("expected a rational like 1/2 or `symbolic`, got `{s}`"))
    }
}

impl Serialize for QValue {
    fn serialize<S: Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        ser.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for QValue {
    fn deserialize<D: Deserializer<'de>>(de: D) -> Result<Self, D::Error> {
        String::deserialize(de)?
            .parse()
            .map_err(serde::de::Error::custom)
    }
}

fn claims_or_all<'de, D: Deserializer<'de>>(de: D) -> Result<Vec<ClaimId>, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Sel {
        Word(String),
        List(Vec<ClaimId>),
    }
    match Sel::deserialize(de)? {
        Sel::List(l) => Ok(l),
        Sel::Word(w) => parse_claims(&w).map_err(serde::de::Error::custom),
    }
}

pub fn parse_claims(text: &str) -> Result<Vec<ClaimId>, String> {
    if text.trim().eq_ignore_ascii_case("all") {
        return Ok(ClaimId::ALL.to_vec());
    }
    split_list(text).map(str::parse).collect()
}

fn split_list(text: &str) -> impl Iterator<Item = &str> {
    text.split(',').map(str::trim).filter(|s| !s.is_empty())
}

/// Everything a run needs. The JSON form of this struct is the config file
/// format and the config echo in reports.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub q: QValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<QValue>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<QValue>,
    pub k: i64,
    pub kprime: i64,
    pub window: i64,
    /// Profile shorthand, `spec[@m0]|...`; entries without `@m0` sit on
    /// `m = -k`.
    pub profile: String,
    pub variants: Vec<EquationId>,
    #[serde(deserialize_with = "claims_or_all")]
    pub claims: Vec<ClaimId>,
    pub values: Vec<Rational>,
    pub search_window: [i64; 2],
    pub witness_cap: usize,
    pub boundary: Boundary,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

impl Default for RunConfig {
    fn default() -> Self {
        let a = AuditConfig::default();
        RunConfig {
            q: QValue::Symbolic,
            alpha: None,
            beta: None,
            k: a.k,
            kprime: a.kprime,
            window: a.window,
            profile: "constant:1".into(),
            variants: a.variants,
            claims: a.claims,
            values: a.values,
            search_window: a.search_window,
            witness_cap: DEFAULT_WITNESS_CAP,
            boundary: Boundary::SkipOutside,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.window < 1 {
            return Err(field_err(
                "window",
                format!("must be >= 1, got {}", self.window),
            ));
        }
        if self.witness_cap < 1 {
            return Err(field_err("witness_cap", "must be >= 1"));
        }
        self.profile_spec()?;
        if self.variants.is_empty() {
            return Err(field_err(
                "variant",
                "at least one equation variant is required",
            ));
        }
        let [lo, hi] = self.search_window;
        if lo > hi {
            return Err(field_err(
                "search_window",
                format!("empty range {lo}..{hi}"),
            ));
        }
        if self.values.is_empty() {
            return Err(field_err("values", "must be nonempty"));
        }
        let mut vals = self.values.clone();
        vals.sort();
        vals.dedup();
        let space = (vals.len() as u128)
            .checked_pow((hi - lo + 1) as u32)
            .unwrap_or(u128::MAX);
        if space > MAX_SEARCH_SPACE {
            return Err(field_err(
                "values",
                format!("search space {space} exceeds 4^9"),
            ));
        }
        Ok(())
    }

    pub fn profile_spec(&self) -> Result<ProfileSpec, ConfigError> {
        ProfileSpec::parse_shorthand(&self.profile, -self.k).map_err(|e| field_err("profile", e))
    }

    /// The one-line profile used by the claim audit: the line on `m = -k`
    /// if present, otherwise the first line.
    pub fn profile_1d(&self) -> Result<Profile1D, ConfigError> {
        let spec = self.profile_spec()?;
        let lines = spec.lines();
        Ok(lines
            .iter()
            .find(|l| l.m0 == -self.k)
            .or_else(|| lines.first())
            .map(|l| l.g.clone())
            .unwrap_or_else(Profile1D::zero))
    }

    pub fn q_scalar(&self) -> Scalar {
        self.q.to_scalar()
    }

    pub fn window_box(&self) -> Window {
        Window::square(self.window)
    }

    pub fn audit_config(&self) -> Result<AuditConfig, ConfigError> {
        self.validate()?;
        Ok(AuditConfig {
            q: self.q_scalar(),
            alpha: self.alpha.as_ref().map(QValue::to_scalar),
            beta: self.beta.as_ref().map(QValue::to_scalar),
            k: self.k,
            kprime: self.kprime,
            window: self.window,
            profile: self.profile_1d()?,
            variants: self.variants.clone(),
            claims: self.claims.clone(),
            search_window: self.search_window,
            values: self.values.clone(),
            witness_cap: self.witness_cap,
            boundary: self.boundary,
        })
    }

    /// Config as echoed in reports: output path dropped so the echo does not
    /// depend on where the report is written.
    pub fn echo(&self) -> serde_json::Value {
        let mut c = self.clone();
        c.out = None;
        serde_json::to_value(c).expect("config serializes")
    }

    /// Flags reproducing this config when passed to the parser.
    pub fn to_args(&self) -> Vec<String> {
        let join = |v: Vec<String>| v.join(",");
        let mut args = vec![
            format!("--q={}", self.q),
            format!("--k={}", self.k),
            format!("--kprime={}", self.kprime),
            format!("--window={}", self.window),
            format!("--profile={}", self.profile),
            format!(
                "--variant={}",
                join(self.variants.iter().map(|v| v.to_string()).collect())
            ),
            format!(
                "--claims={}",
                join(self.claims.iter().map(|c| c.to_string()).collect())
            ),
            format!(
                "--values={}",
                join(self.values.iter().map(|v| v.to_string()).collect())
            ),
            format!(
                "--search-window={}..{}",
                self.search_window[0], self.search_window[1]
            ),
            format!("--witness-cap={}", self.witness_cap),
            format!("--boundary={}", boundary_name(self.boundary)),
        ];
        if let Some(a) = &self.alpha {
            args.push(format!("--alpha={a}"));
        }
        if let Some(b) = &self.beta {
            args.push(format!("--beta={b}"));
        }
        if let Some(o) = &self.out {
            args.push(format!("--out={}", o.display()));
        }
        args
    }
}

fn boundary_name(b: Boundary) -> &'static str {
    match b {
        Boundary::SkipOutside => "skip-outside",
        Boundary::ZeroOutside => "zero-outside",
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "rbaudit",
    version,
    about = "Exact audit of Rota-Baxter operators on Block-type Lie algebras"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub flags: Flags,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Kernel identity on every basis pair of the window.
    Sweep,
    /// Run the claim registry.
    Audit,
    /// Admissibility matrices of the canonical profile families.
    Table,
    /// Brute-force search for solutions of the profile equation.
    SolveFeq,
    /// Printed scalar equation against the kernel, pair by pair.
    CrossCheck,
    /// Structure constants of the pre-Lie product and deformed bracket.
    Derived,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Flags {
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub q: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub beta: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub k: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub kprime: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub window: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub profile: Option<String>,
    /// Comma-separated equation ids; may be repeated.
    #[arg(long, global = true)]
    pub variant: Vec<String>,
    /// Comma-separated claim ids, or `all`.
    #[arg(long, global = true)]
    pub claims: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub values: Option<String>,
    /// `lo..hi` (or `lo,hi`).
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub search_window: Option<String>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub witness_cap: Option<String>,
    /// `skip-outside` or `zero-outside`.
    #[arg(long, global = true)]
    pub boundary: Option<String>,
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

fn parse_field<T: FromStr>(field: &str, text: &str) -> Result<T, ConfigError>
where
    T::Err: fmt::Display,
{
    text.trim()
        .parse::<T>()
        .map_err(|e| field_err(field, format!("`{text}`: {e}")))
}

fn parse_range(text: &str) -> Result<[i64; 2], ConfigError> {
    let (a, b) = text
        .split_once("..")
        .or_else(|| text.split_once(','))
        .ok_or_else(|| field_err("search_window", format!("expected lo..hi, got `{text}`")))?;
    Ok([
        parse_field("search_window", a)?,
        parse_field("search_window", b)?,
    ])
}

pub fn load_config_file(path: &Path) -> Result<RunConfig, ConfigError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| field_err("config", format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| field_err("config", format!("{}: {e}", path.display())))
}

/// File values, then flag overrides, then validation.
pub fn merge(flags: &Flags) -> Result<RunConfig, ConfigError> {
    let mut c = match &flags.config {
        Some(p) => load_config_file(p)?,
        None => RunConfig::default(),
    };
    if let Some(v) = &flags.q {
        c.q = parse_field("q", v)?;
    }
    if let Some(v) = &flags.alpha {
        c.alpha = Some(parse_field("alpha", v)?);
    }
    if let Some(v) = &flags.beta {
        c.beta = Some(parse_field("beta", v)?);
    }
    if let Some(v) = &flags.k {
        c.k = parse_field("k", v)?;
    }
    if let Some(v) = &flags.kprime {
        c.kprime = parse_field("kprime", v)?;
    }
    if let Some(v) = &flags.window {
        c.window = parse_field("window", v)?;
    }
    if let Some(v) = &flags.profile {
        c.profile = v.clone();
    }
    if !flags.variant.is_empty() {
        c.variants = flags
            .variant
            .iter()
            .flat_map(|v| split_list(v).map(str::to_string).collect::<Vec<_>>())
            .map(|v| parse_field::<EquationId>("variant", &v))
            .collect::<Result<_, _>>()?;
    }
    if let Some(v) = &flags.claims {
        c.claims = parse_claims(v).map_err(|e| field_err("claims", e))?;
    }
    if let Some(v) = &flags.values {
        c.values = split_list(v)
            .map(|x| parse_field("values", x))
            .collect::<Result<_, _>>()?;
    }
    if let Some(v) = &flags.search_window {
        c.search_window = parse_range(v)?;
    }
    if let Some(v) = &flags.witness_cap {
        c.witness_cap = parse_field("witness_cap", v)?;
    }
    if let Some(v) = &flags.boundary {
        c.boundary = match v.trim() {
            "skip-outside" => Boundary::SkipOutside,
            "zero-outside" => Boundary::ZeroOutside,
            other => {
                return Err(field_err(
                    "boundary",
                    format!("unknown convention `{other}`"),
                ))
            }
        };
    }
    if let Some(o) = &flags.out {
        c.out = Some(o.clone());
    }
    c.validate()?;
    Ok(c)
}

/// Parses a full argument vector (program name first).
pub fn parse_config<I, T>(args: I) -> Result<(Command, RunConfig), ConfigError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(args).map_err(|e| ConfigError::Usage(e.to_string()))?;
    Ok((cli.command, merge(&cli.flags)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, ConfigError> {
        let mut v = vec!["rbaudit", "audit"];
        v.extend_from_slice(args);
        parse_config(v).map(|(_, c)| c)
    }

    #[test]
    fn direct_parse() {
        let c = parse(&[
            "--q",
            "1/2",
            "--k",
            "1",
            "--kprime",
            "0",
            "--window",
            "4",
            "--profile",
            "constant:1",
        ])
        .unwrap();
        assert_eq!(c.q, QValue::Value(Rational::new(1, 2)));
        assert_eq!(c.window, 4);
        assert_eq!(c.profile_1d().unwrap(), Profile1D::constant(1));
    }

    #[test]
    fn symbolic_and_claims() {
        let c = parse(&["--q", "symbolic", "--claims", "TABLE_1"]).unwrap();
        assert_eq!(c.q, QValue::Symbolic);
        assert_eq!(c.claims, vec![ClaimId::Table1]);
        assert_eq!(
            parse(&["--claims", "all"]).unwrap().claims,
            ClaimId::ALL.to_vec()
        );
    }

    #[test]
    fn negative_numbers() {
        let c = parse(&["--k", "-2", "--kprime", "-1", "--search-window", "-2..1"]).unwrap();
        assert_eq!((c.k, c.kprime, c.search_window), (-2, -1, [-2, 1]));
    }

    #[test]
    fn invalid_fields_are_named() {
        for (args, field) in [
            (vec!["--window", "0"], "window"),
            (vec!["--witness-cap", "0"], "witness_cap"),
            (vec!["--q", "x/"], "q"),
            (vec!["--profile", "wobble:3"], "profile"),
            (vec!["--variant", "NOPE"], "variant"),
            (
                vec!["--values", "0,1,2,3,4", "--search-window", "-4..4"],
                "values",
            ),
        ] {
            match parse(&args) {
                Err(ConfigError::Field { field: f, .. }) => assert_eq!(f, field, "{args:?}"),
                other => panic!("{args:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn flags_override_file() {
        let dir = std::env::temp_dir().join(format!("rbaudit-cfg-{}", std::process::id()));
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("c.json");
        std::fs::write(&path, r#"{"q": "3", "k": 2, "claims": "all", "window": 2}"#).unwrap();
        let c = parse(&["--config", path.to_str().unwrap(), "--window", "3"]).unwrap();
        assert_eq!(c.q, QValue::Value(Rational::from_int(3)));
        assert_eq!(c.k, 2);
        assert_eq!(c.window, 3);
        std::fs::write(&path, r#"{"q": "3", "bogus": 1}"#).unwrap();
        assert!(matches!(
            parse(&["--config", path.to_str().unwrap()]),
            Err(ConfigError::Field { field, .. }) if field == "config"
        ));
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn round_trip_through_args_and_json() {
        let c = RunConfig {
            q: QValue::Value(Rational::new(-3, 2)),
            alpha: Some(QValue::Symbolic),
            k: -1,
            kprime: 2,
            window: 3,
            profile: "poly:1,-2|kronecker:0:1@3".into(),
            variants: vec![EquationId::Kernel, EquationId::FeqPlus],
            claims: vec![ClaimId::Table1, ClaimId::DeformA2],
            values: vec![Rational::zero(), Rational::new(1, 2)],
            search_window: [-2, 2],
            witness_cap: 7,
            boundary: Boundary::ZeroOutside,
            ..RunConfig::default()
        };
        let mut args = vec!["rbaudit".to_string(), "sweep".to_string()];
        args.extend(c.to_args());
        assert_eq!(parse_config(args).unwrap().1, c);
        let json = serde_json::to_string(&c).unwrap();
        assert_eq!(serde_json::from_str::<RunConfig>(&json).unwrap(), c);
    }
}
