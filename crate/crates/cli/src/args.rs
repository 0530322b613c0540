use std::fmt;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

pub const PRECISION_VAR: &str = "TDUAL_PRECISION";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Verb {
    Group,
    Cohomology,
    Twist,
    Dualize,
    Langlands,
    Extension,
    Contcheck,
}

impl Verb {
    pub fn name(self) -> &'static str {
        match self {
            Verb::Group => "group",
            Verb::Cohomology => "cohomology",
            Verb::Twist => "twist",
            Verb::Dualize => "dualize",
            Verb::Langlands => "langlands",
            Verb::Extension => "extension",
            Verb::Contcheck => "contcheck",
        }
    }

    pub fn needs_group(self) -> bool {
        self != Verb::Contcheck
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

/// Where the group comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupSpec {
    Named(String),
    /// Path to a root-datum JSON file.
    File(PathBuf),
    /// Root-datum JSON given inline.
    Inline(String),
}

impl GroupSpec {
    pub fn parse(s: &str) -> GroupSpec {
        let t = s.trim();
        if t.starts_with('{') {
            GroupSpec::Inline(t.to_string())
        } else if t.ends_with(".json") {
            GroupSpec::File(PathBuf::from(t))
        } else {
            GroupSpec::Named(t.to_string())
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwistSpec {
    Matrix(Vec<Vec<String>>),
    Langlands,
    /// `None` means "use --level".
    Level(Option<i64>),
}

impl TwistSpec {
    pub fn parse(s: &str) -> Result<TwistSpec, UsageError> {
        let t = s.trim();
        match t {
            "langlands" => return Ok(TwistSpec::Langlands),
            "level" => return Ok(TwistSpec::Level(None)),
            _ => {}
        }
        if let Some(k) = t.strip_prefix("level:") {
            let k: i64 = k
                .trim()
                .parse()
                .map_err(|_| UsageError(format!("bad level in twist spec {t:?}")))?;
            return Ok(TwistSpec::Level(Some(k)));
        }
        Ok(TwistSpec::Matrix(parse_matrix_entries(t, "twist")?))
    }
}

/// A JSON array of rows; entries are integers, or strings for big or rational values.
pub fn parse_matrix_entries(s: &str, what: &str) -> Result<Vec<Vec<String>>, UsageError> {
    let bad = || UsageError(format!("malformed {what} matrix {s:?}"));
    let v: serde_json::Value = serde_json::from_str(s).map_err(|_| bad())?;
    let rows = v.as_array().ok_or_else(bad)?;
    let mut out = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(bad)?;
        let mut r = Vec::with_capacity(row.len());
        for x in row {
            match x {
                serde_json::Value::Number(n) if n.is_i64() || n.is_u64() => r.push(n.to_string()),
                serde_json::Value::String(s) => r.push(s.trim().to_string()),
                _ => return Err(bad()),
            }
        }
        out.push(r);
    }
    if out.windows(2).any(|w| w[0].len() != w[1].len()) {
        return Err(UsageError(format!("ragged {what} matrix {s:?}")));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

#[derive(Debug, Parser)]
#[command(
    name = "tdual",
    version,
    about = "T-duality data for compact semisimple Lie groups over their flag manifolds"
)]
struct Cli {
    #[arg(value_enum)]
    verb: Verb,
    /// Named group (SU(3), SO(3), Spin(8), G2, E6_adj, SU(2)xSU(2), ...) or root-datum JSON (path or inline).
    #[arg(long)]
    group: Option<String>,
    /// Comma- or semicolon-separated named groups, run as a batch.
    #[arg(long, conflicts_with = "group")]
    group_list: Option<String>,
    /// Level of the basic form.
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    level: i64,
    /// Twist: a JSON matrix with columns u(λ_a), "langlands", "level" or "level:k".
    #[arg(long)]
    twist: Option<String>,
    /// Strictly upper triangular integer matrix B for the B-field shift.
    #[arg(long)]
    shift: Option<String>,
    /// Explicit commutator map b as a JSON matrix of rationals ("1/2").
    #[arg(long)]
    b: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Finding that must hold, e.g. trivializable or not-trivializable; repeatable.
    #[arg(long)]
    expect: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub verb: Verb,
    pub groups: Vec<GroupSpec>,
    pub level: i64,
    pub twist: Option<TwistSpec>,
    pub shift: Option<Vec<Vec<String>>>,
    pub b: Option<Vec<Vec<String>>>,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub expect: Vec<String>,
    /// Grid size for `contcheck`, from `TDUAL_PRECISION`.
    pub precision: Option<usize>,
}

/// Outcome of argument parsing that is not a config.
#[derive(Debug)]
pub enum ParseOutcome {
    /// `--help` or `--version`; print and exit 0.
    Display(String),
    Usage(UsageError),
}

pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, ParseOutcome>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let argv =
        std::iter::once(std::ffi::OsString::from("tdual")).chain(argv.into_iter().map(Into::into));
    let cli = Cli::try_parse_from(argv).map_err(|e| match e.kind() {
        clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
            ParseOutcome::Display(e.to_string())
        }
        _ => {
            let msg = e.to_string();
            let msg = msg
                .strip_prefix("error: ")
                .unwrap_or(&msg)
                .trim_end()
                .to_string();
            ParseOutcome::Usage(UsageError(msg))
        }
    })?;
    config_from(cli).map_err(ParseOutcome::Usage)
}

fn config_from(cli: Cli) -> Result<RunConfig, UsageError> {
    let groups: Vec<GroupSpec> = match (&cli.group, &cli.group_list) {
        (Some(g), None) => vec![GroupSpec::parse(g)],
        (None, Some(list)) => list
            .split([',', ';'])
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(GroupSpec::parse)
            .collect(),
        (None, None) => Vec::new(),
        (Some(_), Some(_)) => {
            return Err(UsageError("give --group or --group-list, not both".into()))
        }
    };
    if cli.verb.needs_group() && groups.is_empty() {
        return Err(UsageError(format!("{} needs --group", cli.verb.name())));
    }
    if cli.level < 0 {
        return Err(UsageError(format!("negative level {}", cli.level)));
    }
    let twist = cli.twist.as_deref().map(TwistSpec::parse).transpose()?;
    if twist.is_some() && !matches!(cli.verb, Verb::Twist | Verb::Dualize) {
        return Err(UsageError(format!(
            "--twist does not apply to {}",
            cli.verb.name()
        )));
    }
    let shift = cli
        .shift
        .as_deref()
        .map(|s| parse_matrix_entries(s, "shift"))
        .transpose()?;
    if shift.is_some() && cli.verb != Verb::Dualize {
        return Err(UsageError("--shift applies to dualize only".into()));
    }
    let b = cli
        .b
        .as_deref()
        .map(|s| parse_matrix_entries(s, "commutator"))
        .transpose()?;
    if b.is_some() && cli.verb != Verb::Extension {
        return Err(UsageError("--b applies to extension only".into()));
    }
    let known = crate::run::findings_for(cli.verb);
    for e in &cli.expect {
        let name = e.strip_prefix("not-").unwrap_or(e);
        if !known.contains(&name) {
            return Err(UsageError(format!(
                "unknown expectation {e:?} for {}; known: {}",
                cli.verb.name(),
                known.join(", ")
            )));
        }
    }
    let precision = match std::env::var(PRECISION_VAR) {
        Ok(v) => Some(
            v.trim()
                .parse::<usize>()
                .map_err(|_| UsageError(format!("{PRECISION_VAR}={v:?} is not a grid size")))?,
        ),
        Err(_) => None,
    };
    Ok(RunConfig {
        verb: cli.verb,
        groups,
        level: cli.level,
        twist,
        shift,
        b,
        format: cli.format,
        output: cli.output,
        expect: cli.expect,
        precision,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(args: &[&str]) -> Result<RunConfig, ParseOutcome> {
        parse_args(args.iter().copied())
    }

    #[test]
    fn cohomology_su3() {
        let c = parse(&["cohomology", "--group", "SU(3)"]).unwrap();
        assert_eq!(c.verb, Verb::Cohomology);
        assert_eq!(c.groups, vec![GroupSpec::Named("SU(3)".into())]);
        assert_eq!(c.format, Format::Text);
    }

    #[test]
    fn twist_specs() {
        let c = parse(&["dualize", "--group", "SU(2)", "--twist", "level:1"]).unwrap();
        assert_eq!(c.twist, Some(TwistSpec::Level(Some(1))));
        assert_eq!(TwistSpec::parse("langlands").unwrap(), TwistSpec::Langlands);
        assert_eq!(
            TwistSpec::parse("[[2,-1],[-1,2]]").unwrap(),
            TwistSpec::Matrix(vec![
                vec!["2".into(), "-1".into()],
                vec!["-1".into(), "2".into()]
            ])
        );
    }

    #[test]
    fn usage_errors() {
        for args in [
            vec!["frobnicate", "--group", "SU(2)"],
            vec!["cohomology"],
            vec!["twist", "--group", "SU(2)", "--twist", "[[1,2]"],
            vec!["twist", "--group", "SU(2)", "--twist", "[[1],[2,3]]"],
            vec!["extension", "--group", "SU(2)", "--expect", "dualizable"],
            vec!["cohomology", "--group", "SU(2)", "--shift", "[[0]]"],
        ] {
            assert!(
                matches!(parse(&args), Err(ParseOutcome::Usage(_))),
                "{args:?}"
            );
        }
    }

    #[test]
    fn group_sources() {
        assert_eq!(GroupSpec::parse("g.json"), GroupSpec::File("g.json".into()));
        assert!(matches!(
            GroupSpec::parse(" {\"components\":[]}"),
            GroupSpec::Inline(_)
        ));
        let c = parse(&["group", "--group-list", "SU(2), SO(3);G2"]).unwrap();
        assert_eq!(c.groups.len(), 3);
    }

    #[test]
    fn contcheck_needs_no_group() {
        let c = parse(&["contcheck", "--format", "json"]).unwrap();
        assert!(c.groups.is_empty());
        assert_eq!(c.format, Format::Json);
    }
}
