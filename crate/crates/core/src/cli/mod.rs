//! Command-line front end: table generation, identity verification,
//! pointwise evaluation, and basis conversion.
//!
//! Output is deterministic: the same flags produce byte-identical output
//! (stable JSON key order, no timestamps, LF line endings). Exit codes:
//! 0 success / verification pass, 1 verification failure, 2 usage error.
//! No floating point appears in any format; every number is an exact
//! rational string.

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::degen::{stirling_lambda, StirlingKind};
use crate::exact::display::{lpoly_string, qpoly_string, rat_string, xpoly_string, Style};
use crate::exact::{LPoly, QPoly, Rat, XPoly};
use crate::families::{self, Family};
use crate::identities::{self, IdentityId, ParamGrid, VerificationReport, VerificationSummary};
use crate::umbral::{connection_coefficients, ShefferPair};

#[cfg(test)]
mod tests;

/// A finished invocation: the document to print and the process exit code.
#[derive(Debug)]
pub struct CliOutcome {
    pub stdout: String,
    pub exit_code: i32,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    /// Rejected before any computation; exits 2 without partial output.
    #[error("{0}")]
    Usage(String),
    /// Unexpected internal failure; exits 3.
    #[error("{0}")]
    Internal(String),
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

#[derive(Parser)]
#[command(
    name = "lumbral",
    version,
    about = "Exact λ-umbral calculus: degenerate polynomial families and identity verification over Q[λ][x]",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a table of family polynomials or a degenerate Stirling triangle
    Table(TableArgs),
    /// Verify one identity (or the whole catalog) over a parameter grid
    Verify(VerifyArgs),
    /// Evaluate one family member at rational λ (and x)
    Eval(EvalArgs),
    /// Print one row of connection coefficients between two Sheffer bases
    Basis(BasisArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FamilyName {
    /// B_{n,λ}^{(k)}(x) — requires -k
    PolyBernoulli,
    /// β_{n,λ}^{(r)}(x) — requires -r
    Bernoulli,
    /// d_{n,λ}^{(r)}(x) — requires -r
    Derangement,
    /// S_{1,λ}(n,k) triangle (table only)
    Stirling1,
    /// S_{2,λ}(n,k) triangle (table only)
    Stirling2,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Latex,
    Text,
}

#[derive(Args)]
struct TableArgs {
    /// Which family or triangle to tabulate
    #[arg(long)]
    family: FamilyName,
    /// Polylogarithm order for poly-bernoulli
    #[arg(short, allow_hyphen_values = true)]
    k: Option<i64>,
    /// Order for bernoulli / derangement (positive)
    #[arg(short)]
    r: Option<u32>,
    /// Largest degree / row to emit
    #[arg(long)]
    n_max: usize,
    /// Evaluate λ at this rational
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<Rat>,
    /// Evaluate x at this rational
    #[arg(long, allow_hyphen_values = true)]
    x: Option<Rat>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Identity id (e.g. thm5, eq7, stirling_inversion) or `all`
    #[arg(long)]
    id: String,
    /// Largest degree in the grid
    #[arg(long)]
    n_max: usize,
    /// Polylogarithm orders, as `a..b` (inclusive) or a single integer
    #[arg(short, default_value = "-2..3", allow_hyphen_values = true)]
    k: SignedRange,
    /// Family orders r, as `a..b` or a single positive integer
    #[arg(short, default_value = "1..3")]
    r: OrderRange,
    /// Family orders s, as `a..b` or a single positive integer
    #[arg(short, default_value = "1..3")]
    s: OrderRange,
    /// Randomized polynomials for the reconstruction identities
    #[arg(long, default_value_t = 100)]
    samples: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Args)]
struct EvalArgs {
    /// Which family to evaluate (poly-bernoulli, bernoulli, derangement)
    #[arg(long)]
    family: FamilyName,
    #[arg(short, allow_hyphen_values = true)]
    k: Option<i64>,
    #[arg(short)]
    r: Option<u32>,
    /// Degree of the member
    #[arg(short)]
    n: usize,
    /// Rational value for λ (required)
    #[arg(long, allow_hyphen_values = true)]
    lambda: Rat,
    /// Rational value for x (defaults to 0, the "number" variant)
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    x: Rat,
}

#[derive(Args)]
struct BasisArgs {
    /// Source basis, e.g. `poly-bernoulli:k=2`, `bernoulli:r=1`,
    /// `derangement:r=3`, or `falling`
    #[arg(long)]
    from: String,
    /// Target basis, same grammar as --from
    #[arg(long)]
    to: String,
    /// Row of the connection matrix to print
    #[arg(short)]
    n: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

/// Inclusive integer range argument: `a..b` or a single value.
#[derive(Clone, Debug)]
struct SignedRange(Vec<i64>);

fn parse_range(s: &str) -> Result<Vec<i64>, String> {
    let parse_int = |v: &str| -> Result<i64, String> {
        v.parse::<i64>().map_err(|_| format!("`{v}` is not an integer"))
    };
    if let Some((a, b)) = s.split_once("..") {
        let (a, b) = (parse_int(a)?, parse_int(b)?);
        if a > b {
            return Err(format!("empty range `{s}`"));
        }
        Ok((a..=b).collect())
    } else {
        Ok(vec![parse_int(s)?])
    }
}

impl std::str::FromStr for SignedRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(SignedRange(parse_range(s)?))
    }
}

/// Inclusive positive range argument for family orders.
#[derive(Clone, Debug)]
struct OrderRange(Vec<u32>);

impl std::str::FromStr for OrderRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let values = parse_range(s)?;
        values
            .into_iter()
            .map(|v| u32::try_from(v).ok().filter(|v| *v >= 1).ok_or_else(|| {
                format!("order `{v}` must be a positive integer")
            }))
            .collect::<Result<Vec<u32>, String>>()
            .map(OrderRange)
    }
}

/// Parses and runs a full argv (including the program name).
pub fn execute<I, S>(args: I) -> Result<CliOutcome, CliError>
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version are successful output, not usage errors.
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Ok(CliOutcome {
                    stdout: e.render().to_string(),
                    exit_code: 0,
                }),
                _ => Err(usage(e.render().to_string())),
            };
        }
    };
    match cli.command {
        Command::Table(args) => run_table(&args),
        Command::Verify(args) => run_verify(&args),
        Command::Eval(args) => run_eval(&args),
        Command::Basis(args) => run_basis(&args),
    }
}

/// Resolves the family flags, rejecting inconsistent combinations.
fn family_from_flags(
    name: FamilyName,
    k: Option<i64>,
    r: Option<u32>,
) -> Result<Family, CliError> {
    match name {
        FamilyName::PolyBernoulli => {
            if r.is_some() {
                return Err(usage("-r does not apply to poly-bernoulli (use -k)"));
            }
            let k = k.ok_or_else(|| usage("poly-bernoulli requires -k <integer>"))?;
            Ok(Family::PolyBernoulli { k })
        }
        FamilyName::Bernoulli | FamilyName::Derangement => {
            if k.is_some() {
                return Err(usage("-k only applies to poly-bernoulli (use -r)"));
            }
            let r = r.ok_or_else(|| usage("this family requires -r <positive integer>"))?;
            if r == 0 {
                return Err(usage("-r must be a positive integer"));
            }
            Ok(match name {
                FamilyName::Bernoulli => Family::BernoulliOrder { r },
                _ => Family::DerangementOrder { r },
            })
        }
        FamilyName::Stirling1 | FamilyName::Stirling2 => {
            Err(usage("stirling triangles are tables, not polynomial families"))
        }
    }
}

/// The display name of a family member, e.g. `B_{3,\lambda}^{(2)}(x)`.
fn member_symbol(family: &Family, n: usize, style: Style) -> String {
    match (family, style) {
        (Family::PolyBernoulli { k }, Style::Latex) => format!("B_{{{n},\\lambda}}^{{({k})}}(x)"),
        (Family::PolyBernoulli { k }, Style::Text) => format!("B_({n};k={k})(x)"),
        (Family::BernoulliOrder { r: 1 }, Style::Latex) => format!("\\beta_{{{n},\\lambda}}(x)"),
        (Family::BernoulliOrder { r }, Style::Latex) => {
            format!("\\beta_{{{n},\\lambda}}^{{({r})}}(x)")
        }
        (Family::BernoulliOrder { r }, Style::Text) => format!("beta_({n};r={r})(x)"),
        (Family::DerangementOrder { r: 1 }, Style::Latex) => format!("d_{{{n},\\lambda}}(x)"),
        (Family::DerangementOrder { r }, Style::Latex) => {
            format!("d_{{{n},\\lambda}}^{{({r})}}(x)")
        }
        (Family::DerangementOrder { r }, Style::Text) => format!("d_({n};r={r})(x)"),
    }
}

/// One table row after optional λ/x evaluation.
#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum RowValue {
    Symbolic(XPoly),
    LambdaEvaluated(QPoly),
    XEvaluated(LPoly),
    Value(Rat),
}

impl RowValue {
    fn render(&self, style: Style) -> String {
        match self {
            RowValue::Symbolic(p) => xpoly_string(p, style),
            RowValue::LambdaEvaluated(p) => qpoly_string(p, style),
            RowValue::XEvaluated(p) => lpoly_string(p, style),
            RowValue::Value(r) => rat_string(r, style),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct FamilyTableDoc {
    #[serde(flatten)]
    family: Family,
    n_max: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<Rat>,
    #[serde(skip_serializing_if = "Option::is_none")]
    x: Option<Rat>,
    rows: Vec<RowValue>,
}

fn evaluate_row(member: &XPoly, lambda: &Option<Rat>, x: &Option<Rat>) -> RowValue {
    match (lambda, x) {
        (None, None) => RowValue::Symbolic(member.clone()),
        (Some(l), None) => RowValue::LambdaEvaluated(member.eval_lambda(l)),
        (None, Some(a)) => RowValue::XEvaluated(member.eval_x(a)),
        (Some(l), Some(a)) => RowValue::Value(member.eval_lambda(l).eval(a)),
    }
}

fn run_table(args: &TableArgs) -> Result<CliOutcome, CliError> {
    match args.family {
        FamilyName::Stirling1 | FamilyName::Stirling2 => stirling_table(args),
        _ => family_table(args),
    }
}

fn family_table(args: &TableArgs) -> Result<CliOutcome, CliError> {
    let family = family_from_flags(args.family, args.k, args.r)?;
    if args.format == Format::Csv && (args.lambda.is_some() ^ args.x.is_some()) {
        return Err(usage("numeric CSV needs both --lambda and --x (or neither)"));
    }
    let members = families::members_up_to(&family, args.n_max);
    let rows: Vec<RowValue> =
        members.iter().map(|m| evaluate_row(m, &args.lambda, &args.x)).collect();

    let stdout = match args.format {
        Format::Json => {
            let doc = FamilyTableDoc {
                family,
                n_max: args.n_max,
                lambda: args.lambda.clone(),
                x: args.x.clone(),
                rows,
            };
            to_json(&doc)?
        }
        Format::Csv => {
            let header = if args.lambda.is_some() && args.x.is_some() {
                "n,value"
            } else {
                "n,polynomial"
            };
            let mut out = String::from(header);
            out.push('\n');
            for (n, row) in rows.iter().enumerate() {
                out.push_str(&format!("{n},{}\n", row.render(Style::Text)));
            }
            out
        }
        Format::Latex => {
            let mut out = String::new();
            for (n, row) in rows.iter().enumerate() {
                out.push_str(&format!(
                    "{} = {}\n",
                    member_symbol(&family, n, Style::Latex),
                    row.render(Style::Latex)
                ));
            }
            out
        }
        Format::Text => {
            let mut out = String::new();
            for (n, row) in rows.iter().enumerate() {
                out.push_str(&format!(
                    "{} = {}\n",
                    member_symbol(&family, n, Style::Text),
                    row.render(Style::Text)
                ));
            }
            out
        }
    };
    Ok(CliOutcome { stdout, exit_code: 0 })
}

fn stirling_table(args: &TableArgs) -> Result<CliOutcome, CliError> {
    if args.k.is_some() || args.r.is_some() {
        return Err(usage("stirling tables take no -k or -r"));
    }
    if args.x.is_some() {
        return Err(usage("--x does not apply to stirling tables"));
    }
    let kind = match args.family {
        FamilyName::Stirling1 => StirlingKind::First,
        _ => StirlingKind::Second,
    };
    let table = stirling_lambda(kind, args.n_max);
    let entry_string = |entry: &LPoly| -> String {
        match &args.lambda {
            Some(l) => entry.eval_rat(l).to_string(),
            None => lpoly_string(entry, Style::Text),
        }
    };
    let stdout = match args.format {
        Format::Json => match &args.lambda {
            None => to_json(&*table)?,
            Some(l) => {
                #[derive(Serialize)]
                struct EvaluatedTable<'a> {
                    kind: StirlingKind,
                    n_max: usize,
                    lambda: &'a Rat,
                    rows: Vec<Vec<Rat>>,
                }
                let rows = table
                    .rows
                    .iter()
                    .map(|row| row.iter().map(|e| e.eval_rat(l)).collect())
                    .collect();
                to_json(&EvaluatedTable { kind, n_max: args.n_max, lambda: l, rows })?
            }
        },
        Format::Csv => {
            let mut out = String::from("n");
            for k in 0..=args.n_max {
                out.push_str(&format!(",{k}"));
            }
            out.push('\n');
            for n in 0..=args.n_max {
                out.push_str(&n.to_string());
                for k in 0..=args.n_max {
                    out.push(',');
                    out.push_str(&entry_string(&table.entry(n, k)));
                }
                out.push('\n');
            }
            out
        }
        Format::Text => {
            let name = match kind {
                StirlingKind::First => "S1",
                StirlingKind::Second => "S2",
            };
            let mut out = String::new();
            for n in 0..=args.n_max {
                for k in 0..=n {
                    out.push_str(&format!("{name}({n},{k}) = {}\n", entry_string(&table.entry(n, k))));
                }
            }
            out
        }
        Format::Latex => {
            return Err(usage("stirling tables support json, csv, and text output"))
        }
    };
    Ok(CliOutcome { stdout, exit_code: 0 })
}

fn run_verify(args: &VerifyArgs) -> Result<CliOutcome, CliError> {
    if args.format == Format::Csv || args.format == Format::Latex {
        return Err(usage("verify reports support json and text output"));
    }
    let grid = ParamGrid {
        n_max: args.n_max,
        k_set: args.k.0.clone(),
        r_set: args.r.0.clone(),
        s_set: args.s.0.clone(),
        samples: args.samples,
    };
    if args.id == "all" {
        let summary = identities::verify_all(&grid);
        let exit_code = if summary.aggregate_pass { 0 } else { 1 };
        let stdout = match args.format {
            Format::Json => to_json(&summary)?,
            _ => render_summary_text(&summary),
        };
        return Ok(CliOutcome { stdout, exit_code });
    }
    let id: IdentityId = args.id.parse().map_err(usage)?;
    let report = identities::verify(id, &grid);
    let exit_code = if report.pass() { 0 } else { 1 };
    let stdout = match args.format {
        Format::Json => to_json(&report)?,
        _ => render_report_text(&report),
    };
    Ok(CliOutcome { stdout, exit_code })
}

fn params_inline(params: &std::collections::BTreeMap<String, identities::ParamValue>) -> String {
    let parts: Vec<String> = params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    parts.join(", ")
}

fn render_report_text(report: &VerificationReport) -> String {
    let mut out = format!(
        "{} [{}]: {}\n",
        report.identity,
        params_inline(&report.params),
        if report.pass() { "PASS" } else { "FAIL" }
    );
    if let Some(w) = report.first_witness() {
        out.push_str(&format!(
            "  first failing point: {}\n  difference = {}\n  failing points: {}\n",
            params_inline(&w.params),
            w.difference_string(),
            report.witnesses.len()
        ));
    }
    out
}

fn render_summary_text(summary: &VerificationSummary) -> String {
    let mut out = String::new();
    for report in &summary.reports {
        out.push_str(&render_report_text(report));
    }
    match summary.eq35_adjudication {
        Some(id) => out.push_str(&format!(
            "eq35 adjudication: {id} is the exact identity ({})\n",
            id.description()
        )),
        None => out.push_str("eq35 adjudication: variants indistinguishable on this grid\n"),
    }
    out.push_str(&format!(
        "aggregate: {}\n",
        if summary.aggregate_pass { "PASS" } else { "FAIL" }
    ));
    out
}

fn run_eval(args: &EvalArgs) -> Result<CliOutcome, CliError> {
    let family = family_from_flags(args.family, args.k, args.r)?;
    let value = families::member(&family, args.n).eval_lambda(&args.lambda).eval(&args.x);
    Ok(CliOutcome { stdout: format!("{value}\n"), exit_code: 0 })
}

/// Basis selector grammar: `name[:key=value[,key=value]]`.
#[derive(Clone, Copy)]
enum BasisSpec {
    Pair(Family),
    /// The λ-falling factorials, i.e. the pair (1, t).
    Falling,
}

impl BasisSpec {
    fn parse(s: &str) -> Result<BasisSpec, CliError> {
        let (name, rest) = match s.split_once(':') {
            Some((n, r)) => (n, Some(r)),
            None => (s, None),
        };
        let mut k: Option<i64> = None;
        let mut r: Option<u32> = None;
        if let Some(rest) = rest {
            for kv in rest.split(',') {
                let (key, value) = kv
                    .split_once('=')
                    .ok_or_else(|| usage(format!("malformed basis parameter `{kv}`")))?;
                match key {
                    "k" => {
                        k = Some(value.parse().map_err(|_| {
                            usage(format!("`{value}` is not an integer"))
                        })?)
                    }
                    "r" => {
                        r = Some(value.parse().map_err(|_| {
                            usage(format!("`{value}` is not a positive integer"))
                        })?)
                    }
                    _ => return Err(usage(format!("unknown basis parameter `{key}`"))),
                }
            }
        }
        match name {
            "falling" => {
                if k.is_some() || r.is_some() {
                    return Err(usage("`falling` takes no parameters"));
                }
                Ok(BasisSpec::Falling)
            }
            "poly-bernoulli" => Ok(BasisSpec::Pair(Family::PolyBernoulli {
                k: k.ok_or_else(|| usage("poly-bernoulli basis requires `:k=<integer>`"))?,
            })),
            "bernoulli" => {
                let r = r.ok_or_else(|| usage("bernoulli basis requires `:r=<order>`"))?;
                if r == 0 {
                    return Err(usage("order r must be positive"));
                }
                Ok(BasisSpec::Pair(Family::BernoulliOrder { r }))
            }
            "derangement" => {
                let r = r.ok_or_else(|| usage("derangement basis requires `:r=<order>`"))?;
                if r == 0 {
                    return Err(usage("order r must be positive"));
                }
                Ok(BasisSpec::Pair(Family::DerangementOrder { r }))
            }
            other => Err(usage(format!(
                "unknown basis `{other}`; expected poly-bernoulli, bernoulli, derangement, or falling"
            ))),
        }
    }

    fn pair(&self, precision: usize) -> ShefferPair {
        match self {
            BasisSpec::Falling => ShefferPair::falling_lambda(precision),
            BasisSpec::Pair(Family::PolyBernoulli { k }) => {
                ShefferPair::poly_bernoulli(*k, precision)
            }
            BasisSpec::Pair(Family::BernoulliOrder { r }) => {
                ShefferPair::bernoulli_order(*r, precision)
            }
            BasisSpec::Pair(Family::DerangementOrder { r }) => {
                ShefferPair::derangement(*r, precision)
            }
        }
    }
}

#[derive(Serialize)]
struct BasisDoc<'a> {
    from: &'a str,
    to: &'a str,
    n: usize,
    coefficients: Vec<LPoly>,
}

fn run_basis(args: &BasisArgs) -> Result<CliOutcome, CliError> {
    if args.format == Format::Csv {
        return Err(usage("basis rows support json, latex, and text output"));
    }
    let from = BasisSpec::parse(&args.from)?;
    let to = BasisSpec::parse(&args.to)?;
    let precision = args.n.max(1);
    let matrix = connection_coefficients(&from.pair(precision), &to.pair(precision), args.n)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    let row = matrix.into_iter().nth(args.n).expect("row n exists");

    let stdout = match args.format {
        Format::Json => to_json(&BasisDoc {
            from: &args.from,
            to: &args.to,
            n: args.n,
            coefficients: row,
        })?,
        Format::Latex => {
            let mut out = String::new();
            for (k, c) in row.iter().enumerate() {
                out.push_str(&format!(
                    "C_{{{n},{k}}} = {}\n",
                    lpoly_string(c, Style::Latex),
                    n = args.n
                ));
            }
            out
        }
        _ => {
            let mut out = String::new();
            for (k, c) in row.iter().enumerate() {
                out.push_str(&format!("C[{},{k}] = {}\n", args.n, lpoly_string(c, Style::Text)));
            }
            out
        }
    };
    Ok(CliOutcome { stdout, exit_code: 0 })
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|e| CliError::Internal(format!("JSON serialization failed: {e}")))
}
