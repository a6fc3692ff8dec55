//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 on usage, parse or I/O errors, 2 when the
//! input is well formed but violates a mathematical precondition.

pub mod examples;
pub mod expr;
pub mod report;
pub mod rulefile;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::calculus::Differentiator;
use crate::classify2::{commutator_in_i2, commutes_mod_commutative, match_family, necessary_conditions};
use crate::commrule::CommRule;
use crate::error::Error;
use crate::freealg::{NCPoly, ScalarMatrix};
use crate::optimal::{check_consistent_ideal, check_same_degree_consistency, is_regular, optimal_ideal, Diagnostic};
use report::IdealReport;
use rulefile::{LoadedRule, RuleFile};

/// Most diagnostics printed by `check`.
const MAX_DIAGNOSTICS: usize = 50;

#[derive(Debug, Parser)]
#[command(name = "optcalc", version, about = "Noncommutative first-order differential calculi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the partial derivative D_k(E).
    Derive {
        #[arg(long)]
        rule: PathBuf,
        /// Generator name or 1-based index.
        #[arg(long)]
        var: String,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Print every component of dE.
    Diff {
        #[arg(long)]
        rule: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        expr: String,
    },
    /// Dimensions of the optimal ideal up to a degree.
    Ideal {
        #[arg(long)]
        rule: PathBuf,
        #[arg(long)]
        max_degree: usize,
        /// Include an echelon basis of each component.
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        json: bool,
    },
    /// Whether the ideal generated by relations is consistent with the rule.
    Check {
        #[arg(long)]
        rule: PathBuf,
        /// A file of relations, or an inline list separated by `;`.
        #[arg(long, allow_hyphen_values = true)]
        relations: String,
        #[arg(long)]
        max_degree: Option<usize>,
    },
    /// Classification checks for two-generator rules.
    Classify2 {
        #[arg(long)]
        rule: PathBuf,
    },
    /// Rewrite a rule in new generators z^k = sum_i m[k][i] x^i.
    ChangeBasis {
        #[arg(long)]
        rule: PathBuf,
        /// Rows separated by `;`, entries by `,`.
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// The built-in example rules.
    Examples {
        #[command(subcommand)]
        action: ExamplesCommand,
    },
}

#[derive(Debug, Subcommand)]
enum ExamplesCommand {
    List,
    /// Print the rule file of an example.
    Show { name: String },
    /// Ideal report for an example.
    Run {
        name: String,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[arg(long)]
        basis: bool,
        #[arg(long)]
        json: bool,
    },
}

/// A failed command with its exit code.
#[derive(Debug)]
enum CliError {
    Input(String),
    Math(Error),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Input(_) => 1,
            CliError::Math(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Math(e)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Input(m) => f.write_str(m),
            CliError::Math(e) => write!(f, "{e}"),
        }
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

fn input(msg: impl Into<String>) -> CliError {
    CliError::Input(msg.into())
}

/// Runs the tool on `args` (including the program name) and returns the
/// exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    1
                }
            };
        }
    };
    let mut buf = String::new();
    let result = dispatch(cli.command, &mut buf, err);
    let _ = out.write_all(buf.as_bytes());
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn dispatch(command: Command, out: &mut String, err: &mut dyn Write) -> CliResult<()> {
    match command {
        Command::Derive { rule, var, expr } => {
            let loaded = load_rule(&rule)?;
            let k = resolve_var(&loaded, &var)?;
            let f = parse(&loaded, &expr, "--expr")?;
            let d = Differentiator::new(&loaded.rule).partial(k, &f)?;
            line(out, d.to_expr(&loaded.vars));
        }
        Command::Diff { rule, expr } => {
            let loaded = load_rule(&rule)?;
            let f = parse(&loaded, &expr, "--expr")?;
            let grad = Differentiator::new(&loaded.rule).gradient(&f)?;
            for (name, d) in loaded.vars.iter().zip(&grad) {
                line(out, format!("D_{name} = {}", d.to_expr(&loaded.vars)));
            }
        }
        Command::Ideal { rule, max_degree, basis, json } => {
            let loaded = load_rule(&rule)?;
            ideal_report(out, &loaded.rule, loaded.file, max_degree, basis, json)?;
        }
        Command::Check { rule, relations, max_degree } => {
            let loaded = load_rule(&rule)?;
            check(out, &loaded, &relations, max_degree)?;
        }
        Command::Classify2 { rule } => {
            let loaded = load_rule(&rule)?;
            classify(out, err, &loaded)?;
        }
        Command::ChangeBasis { rule, matrix, out: path } => {
            let loaded = load_rule(&rule)?;
            let m = parse_matrix(&loaded, &matrix)?;
            let changed = loaded.rule.change_basis(&m)?;
            let text = RuleFile::from_rule(&changed, &loaded.vars).to_json();
            fs::write(&path, text + "\n").map_err(|e| input(format!("cannot write {}: {e}", path.display())))?;
            line(out, format!("wrote {}", path.display()));
        }
        Command::Examples { action } => match action {
            ExamplesCommand::List => {
                let width = examples::EXAMPLES.iter().map(|e| e.name.len()).max().unwrap_or(0);
                for e in examples::EXAMPLES {
                    line(out, format!("{:width$}  {}", e.name, e.summary));
                }
            }
            ExamplesCommand::Show { name } => {
                let (rule, file) = example(&name)?;
                debug_assert_eq!(file.load().map(|l| l.rule).ok(), Some(rule));
                line(out, file.to_json());
            }
            ExamplesCommand::Run { name, max_degree, basis, json } => {
                let (rule, file) = example(&name)?;
                ideal_report(out, &rule, file, max_degree, basis, json)?;
            }
        },
    }
    Ok(())
}

fn line(out: &mut String, text: impl AsRef<str>) {
    out.push_str(text.as_ref());
    out.push('\n');
}

fn load_rule(path: &Path) -> CliResult<LoadedRule> {
    let text = fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
    let file = RuleFile::from_json(&text).map_err(|e| input(format!("{}: {e}", path.display())))?;
    file.load().map_err(|e| input(format!("{}: {e}", path.display())))
}

fn parse(loaded: &LoadedRule, text: &str, what: &str) -> CliResult<NCPoly> {
    loaded.parse(text).map_err(|e| input(format!("{what}: {e}")))
}

fn resolve_var(loaded: &LoadedRule, var: &str) -> CliResult<usize> {
    if let Some(k) = loaded.vars.iter().position(|v| v == var) {
        return Ok(k);
    }
    match var.parse::<usize>() {
        Ok(k) if (1..=loaded.vars.len()).contains(&k) => Ok(k - 1),
        _ => Err(input(format!(
            "--var: `{var}` is neither a generator name nor an index in 1..={}",
            loaded.vars.len()
        ))),
    }
}

fn example(name: &str) -> CliResult<(CommRule, RuleFile)> {
    let e = examples::find(name).ok_or_else(|| {
        let names: Vec<&str> = examples::EXAMPLES.iter().map(|e| e.name).collect();
        input(format!("unknown example `{name}` (known: {})", names.join(", ")))
    })?;
    let rule = e.rule()?;
    let file = RuleFile::from_rule(&rule, &NCPoly::default_names(rule.n()));
    Ok((rule, file))
}

fn ideal_report(
    out: &mut String,
    rule: &CommRule,
    file: RuleFile,
    max_degree: usize,
    basis: bool,
    json: bool,
) -> CliResult<()> {
    let filtration = optimal_ideal(rule, max_degree)?;
    let report = IdealReport::new(file, &filtration, basis);
    if json {
        line(out, report.to_json());
    } else {
        out.push_str(&report.to_text());
    }
    Ok(())
}

/// Relations from a file if `source` names one, otherwise from the inline list.
/// Newlines and `;` both separate; blank entries and `#` comments are skipped.
fn read_relations(loaded: &LoadedRule, source: &str) -> CliResult<Vec<NCPoly>> {
    let path = Path::new(source);
    let (text, origin) = if path.is_file() {
        let t = fs::read_to_string(path).map_err(|e| input(format!("cannot read {}: {e}", path.display())))?;
        (t, path.display().to_string())
    } else {
        (source.to_string(), "--relations".to_string())
    };
    let mut out = Vec::new();
    for (lineno, l) in text.lines().enumerate() {
        let l = l.trim();
        if l.starts_with('#') {
            continue;
        }
        for item in l.split(';').map(str::trim).filter(|s| !s.is_empty()) {
            let p = loaded.parse(item).map_err(|e| input(format!("{origin}: line {}: {e}", lineno + 1)))?;
            out.push(p);
        }
    }
    if out.is_empty() {
        return Err(input("--relations: no relations given"));
    }
    Ok(out)
}

fn check(out: &mut String, loaded: &LoadedRule, source: &str, max_degree: Option<usize>) -> CliResult<()> {
    let relations = read_relations(loaded, source)?;
    let mut degrees = Vec::new();
    for r in relations.iter().filter(|r| !r.is_zero()) {
        let d = r.homogeneous_degree().ok_or_else(|| Error::InhomogeneousPolynomial(r.to_expr(&loaded.vars)))?;
        degrees.push(d);
    }
    let top = degrees.iter().copied().max().unwrap_or(0);
    let same_degree = degrees.windows(2).all(|w| w[0] == w[1]);
    let report = match max_degree {
        None if same_degree => {
            line(out, format!("mode: same degree ({top})"));
            check_same_degree_consistency(&loaded.rule, &relations)?
        }
        bound => {
            let bound = bound.unwrap_or(2 * top.max(1));
            line(out, format!("mode: degree bounded (up to {bound})"));
            check_consistent_ideal(&loaded.rule, &relations, bound)?
        }
    };
    let verdict = if report.verdict() { "consistent" } else { "inconsistent" };
    line(out, format!("verdict: {verdict}"));
    for d in report.diagnostics.iter().take(MAX_DIAGNOSTICS) {
        line(out, format!("  {}", describe_diagnostic(d, &loaded.vars)));
    }
    if report.diagnostics.len() > MAX_DIAGNOSTICS {
        line(out, format!("  ... {} more", report.diagnostics.len() - MAX_DIAGNOSTICS));
    }
    Ok(())
}

fn describe_diagnostic(d: &Diagnostic, vars: &[String]) -> String {
    match d {
        Diagnostic::Derivative { degree, k, element, image } => format!(
            "degree {degree}: D_{}({}) = {} is not in the ideal",
            vars[*k],
            element.to_expr(vars),
            image.to_expr(vars)
        ),
        Diagnostic::MatrixEntry { degree, k, i, element, image } => format!(
            "degree {degree}: entry ({}, {}) of A({}) = {} is not in the ideal",
            k + 1,
            i + 1,
            element.to_expr(vars),
            image.to_expr(vars)
        ),
    }
}

fn classify(out: &mut String, err: &mut dyn Write, loaded: &LoadedRule) -> CliResult<()> {
    let rule = &loaded.rule;
    let names = &loaded.vars;
    let violations = necessary_conditions(rule);
    if violations.is_empty() {
        line(out, "necessary conditions: hold");
    } else {
        line(out, format!("necessary conditions: violated ({})", violations.len()));
        for v in &violations {
            line(
                out,
                format!(
                    "  A^{{{}{}}}_{} = {} but {} is required",
                    v.i + 1,
                    v.j + 1,
                    v.k + 1,
                    v.lhs.to_expr(names),
                    v.rhs.to_expr(names)
                ),
            );
        }
    }
    if rule.n() != 2 {
        line(out, format!("classification skipped: it needs two generators, the rule has {}", rule.n()));
        return Ok(());
    }
    if !rule.is_homogeneous() {
        return Err(Error::NonHomogeneousRule.into());
    }
    let yes_no = |b: bool| if b { "yes" } else { "no" };
    line(out, format!("abelianized commutation: {}", yes_no(commutes_mod_commutative(rule)?)));
    let regular = is_regular(rule)?;
    line(out, format!("regular: {}", yes_no(regular)));
    let in_i2 = commutator_in_i2(rule)?;
    line(out, format!("commutator in I_2: {}", yes_no(in_i2)));
    let matches = match_family(rule)?;
    if matches.is_empty() {
        line(out, "family matches: none");
        if regular && in_i2 {
            let _ = writeln!(
                err,
                "WARNING: the rule is regular with the commutator in I_2 but matches no family; \
                 this contradicts the classification and indicates a bug"
            );
        }
    } else {
        line(out, format!("family matches: {}", matches.len()));
        for m in &matches {
            line(out, format!("  {}", m.describe(names)));
        }
    }
    Ok(())
}

/// Parses `"a,b;c,d"` into a square matrix over the rule's field.
fn parse_matrix(loaded: &LoadedRule, text: &str) -> CliResult<ScalarMatrix> {
    let field = loaded.rule.field();
    let rows = text
        .split(';')
        .enumerate()
        .map(|(r, row)| {
            row.split(',')
                .enumerate()
                .map(|(c, cell)| {
                    expr::parse_scalar(cell, &loaded.params, field)
                        .map_err(|e| input(format!("--matrix: row {}, entry {}: {e}", r + 1, c + 1)))
                })
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    let n = loaded.rule.n();
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(input(format!("--matrix: expected {n} rows of {n} entries")));
    }
    Ok(ScalarMatrix::from_rows(field, rows)?)
}
