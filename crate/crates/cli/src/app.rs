//! Argument handling and command dispatch for the `steenrod` binary.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use motivic_steenrod::{
    antipode, classical_multiply, classical_normalize, coproduct, counit, functional_of,
    milnor_basis, op_basis, pairing_matrix, realize, AlgebraError, BaseScalar, Bidegree, CoeffRing,
    Normalizer, OpElement, Preset, Prime, DEFAULT_FUEL,
};
use serde_json::{json, Value};

use crate::grammar::{parse_classical, parse_dual, parse_op, ParseError};
use crate::structured;
use crate::verify::{self, Bounds, Suite};

/// Process exit codes.
pub mod exit {
    pub const OK: i32 = 0;
    pub const USAGE: i32 = 1;
    pub const UNSUPPORTED: i32 = 2;
    pub const VERIFICATION: i32 = 3;
    /// Any other computation error, such as running out of fuel.
    pub const COMPUTATION: i32 = 4;
}

#[derive(Parser, Debug)]
#[command(
    name = "steenrod",
    version,
    about = "Computations in the mod-l motivic Steenrod algebra"
)]
struct Cli {
    /// The prime l.
    #[arg(long, global = true, default_value_t = 2)]
    prime: u32,
    /// Coefficient preset: closed (F_l, or F_2[tau] at l = 2) or universal (F_2[rho, tau]).
    #[arg(long, global = true, default_value = "closed")]
    preset: Preset,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Bound on elementary rewrites per normalization.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL)]
    fuel: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Structured,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Normalized product of two operations.
    Mul {
        left: String,
        right: String,
        /// Work in the classical algebra.
        #[arg(long)]
        classical: bool,
    },
    /// Rewrites an operation to the admissible basis.
    Normalize {
        element: String,
        #[arg(long)]
        classical: bool,
    },
    /// Admissible (or, with --dual, Milnor) monomials by bidegree.
    Basis {
        #[command(flatten)]
        range: Range,
        #[arg(long)]
        dual: bool,
    },
    /// Coproduct of a dual element.
    Coproduct { element: String },
    /// Antipode of a dual element.
    Antipode { element: String },
    /// Counit of a dual element.
    Counit { element: String },
    /// Pairing of an operation with a dual element (closed preset).
    Pair { operation: String, dual: String },
    /// Matrix of the pairing between the two bases (closed preset).
    PairingMatrix {
        #[command(flatten)]
        range: Range,
    },
    /// Specializes coefficients at rho = 0, tau = 1.
    Realize { element: String },
    /// Runs a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        max_degree: Option<i32>,
        #[arg(long)]
        max_p: Option<i32>,
        /// Number of random cases for sampled suites.
        #[arg(long)]
        samples: Option<usize>,
        /// Degree up to which coassoc and antipode check every monomial.
        #[arg(long)]
        exhaustive_degree: Option<i32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Multiplication table of admissible monomials.
    Table {
        #[arg(long, default_value_t = 8)]
        max_degree: i32,
    },
}

#[derive(Args, Debug)]
struct Range {
    /// A single bidegree `P,Q`.
    #[arg(long, value_parser = parse_bidegree, conflicts_with = "max_p")]
    bidegree: Option<Bidegree>,
    /// Every bidegree with degree at most N.
    #[arg(long)]
    max_p: Option<i32>,
}

impl Range {
    fn bidegrees(&self) -> Vec<Bidegree> {
        match (self.bidegree, self.max_p) {
            (Some(b), _) => vec![b],
            (None, max) => {
                let max = max.unwrap_or(6);
                (0..=max)
                    .flat_map(|p| (0..=p).map(move |q| Bidegree::new(p, q)))
                    .collect()
            }
        }
    }
}

fn parse_bidegree(s: &str) -> Result<Bidegree, String> {
    let (p, q) = s.split_once(',').ok_or("expected P,Q")?;
    let p = p.trim().parse().map_err(|_| format!("bad degree `{p}`"))?;
    let q = q.trim().parse().map_err(|_| format!("bad weight `{q}`"))?;
    Ok(Bidegree::new(p, q))
}

/// Everything the binary would write, and the code it would exit with.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Parse(ParseError),
    Algebra(AlgebraError),
}

impl From<AlgebraError> for Failure {
    fn from(e: AlgebraError) -> Self {
        Failure::Algebra(e)
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        Failure::Parse(e)
    }
}

/// Exit code for a library error.
pub fn exit_code(e: &AlgebraError) -> i32 {
    match e {
        AlgebraError::NotPrime(_)
        | AlgebraError::UniversalRequiresTwo(_)
        | AlgebraError::UniversalPairing
        | AlgebraError::RingMismatch { .. } => exit::USAGE,
        AlgebraError::UnsupportedScalarCommutation { .. } => exit::UNSUPPORTED,
        AlgebraError::BasisSizeMismatch { .. } | AlgebraError::NonSquare { .. } => {
            exit::VERIFICATION
        }
        _ => exit::COMPUTATION,
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                exit::USAGE
            } else {
                exit::OK
            };
            let text = e.render().to_string();
            return if code == exit::OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let mut out = Outcome::default();
    match execute(&cli, &mut out) {
        Ok(()) => {}
        Err(Failure::Usage(msg)) => {
            out.code = exit::USAGE;
            out.stderr = format!("error: {msg}\n");
        }
        Err(Failure::Parse(e)) => {
            out.code = exit::USAGE;
            out.stderr = format!("error: {e}\n");
        }
        Err(Failure::Algebra(e)) => {
            out.code = exit_code(&e);
            out.stderr = format!("error: {e}\n");
        }
    }
    out
}

/// Reads `@path` arguments from disk.
fn input(arg: &str) -> Result<String, Failure> {
    match arg.strip_prefix('@') {
        Some(path) => std::fs::read_to_string(path)
            .map(|s| s.trim().to_string())
            .map_err(|e| Failure::Usage(format!("cannot read `{path}`: {e}"))),
        None => Ok(arg.to_string()),
    }
}

fn execute(cli: &Cli, out: &mut Outcome) -> Result<(), Failure> {
    let prime = Prime::new(cli.prime)?;
    let ring = CoeffRing::new(prime, cli.preset)?;
    let normalizer = Normalizer::with_fuel(cli.fuel);
    let structured = cli.format == Format::Structured;
    let mut emit = |text: String, value: Value| {
        out.stdout = if structured {
            structured::render(&value)
        } else {
            text + "\n"
        };
    };
    match &cli.command {
        Command::Mul {
            left,
            right,
            classical: true,
        } => {
            let x = parse_classical(&input(left)?, prime)?;
            let y = parse_classical(&input(right)?, prime)?;
            let p = classical_multiply(&x, &y);
            emit(p.to_string(), structured::classical_element(&p));
        }
        Command::Mul {
            left,
            right,
            classical: false,
        } => {
            let x = parse_op(&input(left)?, ring)?;
            let y = parse_op(&input(right)?, ring)?;
            let p = normalizer.multiply(&x, &y)?;
            emit(p.to_string(), structured::op_element(&p));
        }
        Command::Normalize {
            element,
            classical: true,
        } => {
            let x = classical_normalize(&parse_classical(&input(element)?, prime)?);
            emit(x.to_string(), structured::classical_element(&x));
        }
        Command::Normalize {
            element,
            classical: false,
        } => {
            let x = normalizer.normalize(&parse_op(&input(element)?, ring)?)?;
            emit(x.to_string(), structured::op_element(&x));
        }
        Command::Realize { element } => {
            let x = realize(&parse_op(&input(element)?, ring)?);
            emit(x.to_string(), structured::classical_element(&x));
        }
        Command::Coproduct { element } => {
            let d = coproduct(&parse_dual(&input(element)?, ring)?);
            emit(d.to_string(), structured::tensor_element(&d));
        }
        Command::Antipode { element } => {
            let c = antipode(&parse_dual(&input(element)?, ring)?);
            emit(c.to_string(), structured::dual_element(&c));
        }
        Command::Counit { element } => {
            let e = counit(&parse_dual(&input(element)?, ring)?);
            emit(
                e.to_string(),
                structured::envelope(ring, "scalar", json!({ "value": structured::scalar(&e) })),
            );
        }
        Command::Pair { operation, dual } => {
            let v = pair_elements(
                &parse_op(&input(operation)?, ring)?,
                &parse_dual(&input(dual)?, ring)?,
            )?;
            emit(
                v.to_string(),
                structured::envelope(ring, "scalar", json!({ "value": structured::scalar(&v) })),
            );
        }
        Command::Basis { range, dual } => {
            let (text, value) = basis(ring, range, *dual);
            emit(text, value);
        }
        Command::PairingMatrix { range } => {
            if ring.preset() == Preset::Universal {
                return Err(AlgebraError::UniversalPairing.into());
            }
            let (text, value) = matrices(ring, range)?;
            emit(text, value);
        }
        Command::Table { max_degree } => {
            let (text, value) = table(ring, &normalizer, *max_degree);
            emit(text, value);
        }
        Command::Verify {
            suite,
            max_degree,
            max_p,
            samples,
            exhaustive_degree,
            seed,
        } => {
            let bounds = Bounds {
                max_degree: *max_degree,
                max_p: *max_p,
                samples: *samples,
                exhaustive_degree: *exhaustive_degree,
                seed: *seed,
                fuel: cli.fuel,
            };
            let report = verify::run(*suite, ring, &bounds);
            let passed = report.passed();
            emit(verify_text(&report), verify_value(&report));
            if !passed {
                out.code = exit::VERIFICATION;
            }
        }
    }
    Ok(())
}

fn pair_elements(
    op: &OpElement,
    dual: &motivic_steenrod::GammaElement,
) -> Result<BaseScalar, AlgebraError> {
    let ring = op.ring();
    let mut total = BaseScalar::zero(ring);
    let mut degrees: Vec<i32> = op.terms().map(|(m, _)| m.bidegree().p).collect();
    degrees.dedup();
    for p in degrees {
        let mut part = OpElement::zero(ring);
        for (m, c) in op.terms().filter(|(m, _)| m.bidegree().p == p) {
            part.add_term(c.clone(), m.clone());
        }
        let f = functional_of(&part, p)?;
        for (x, d) in dual.terms() {
            total += &(d * &f.value(x));
        }
    }
    Ok(total)
}

fn basis(ring: CoeffRing, range: &Range, dual: bool) -> (String, Value) {
    let prime = ring.prime();
    let mut text = String::new();
    let mut entries = Vec::new();
    for b in range.bidegrees() {
        let (shown, values): (Vec<String>, Vec<Value>) = if dual {
            milnor_basis(b.p, b.q, prime)
                .iter()
                .map(|m| (m.to_string(), structured::milnor(m)))
                .unzip()
        } else {
            op_basis(b.p, b.q, prime)
                .iter()
                .map(|m| (m.to_string(), structured::word(m)))
                .unzip()
        };
        if shown.is_empty() && range.bidegree.is_none() {
            continue;
        }
        let _ = writeln!(text, "{b}: {}", shown.join(", "));
        entries.push(json!({ "bidegree": [b.p, b.q], "monomials": values }));
    }
    let mode = if dual { "dual" } else { "op" };
    (
        text.trim_end().to_string(),
        structured::envelope(ring, mode, json!({ "bases": entries })),
    )
}

fn matrices(ring: CoeffRing, range: &Range) -> Result<(String, Value), AlgebraError> {
    let prime = ring.prime();
    let mut text = String::new();
    let mut entries = Vec::new();
    for b in range.bidegrees() {
        let rows = op_basis(b.p, b.q, prime);
        let cols = milnor_basis(b.p, b.q, prime);
        if rows.is_empty() && cols.is_empty() && range.bidegree.is_none() {
            continue;
        }
        let m = pairing_matrix(b.p, b.q, prime)?;
        let invertible = m.is_invertible()?;
        let row_labels: Vec<String> = rows.iter().map(|r| r.to_string()).collect();
        let col_labels: Vec<String> = cols.iter().map(|c| c.to_string()).collect();
        let width = row_labels.iter().map(String::len).max().unwrap_or(0);
        let _ = writeln!(
            text,
            "{b} {}x{} invertible={invertible}",
            m.rows(),
            m.cols()
        );
        let _ = writeln!(text, "{:width$}   {}", "", col_labels.join(" ; "));
        let mut values = Vec::new();
        for (i, label) in row_labels.iter().enumerate() {
            let row: Vec<String> = m.row(i).iter().map(u32::to_string).collect();
            let _ = writeln!(text, "{label:width$} : {}", row.join(" "));
            values.push(json!(m.row(i)));
        }
        entries.push(json!({
            "bidegree": [b.p, b.q],
            "rows": rows.iter().map(structured::word).collect::<Vec<_>>(),
            "columns": cols.iter().map(structured::milnor).collect::<Vec<_>>(),
            "entries": values,
            "invertible": invertible,
        }));
    }
    Ok((
        text.trim_end().to_string(),
        structured::envelope(ring, "pairing", json!({ "matrices": entries })),
    ))
}

fn table(ring: CoeffRing, normalizer: &Normalizer, max_degree: i32) -> (String, Value) {
    use motivic_steenrod::op_basis_in_degree;
    let prime = ring.prime();
    let mut text = String::new();
    let mut entries = Vec::new();
    let monomials: Vec<_> = (1..=max_degree)
        .flat_map(|p| op_basis_in_degree(p, prime))
        .collect();
    for x in &monomials {
        for y in &monomials {
            if x.bidegree().p + y.bidegree().p > max_degree {
                continue;
            }
            let ex = OpElement::from_monomial(ring, x.clone());
            let ey = OpElement::from_monomial(ring, y.clone());
            let mut entry = json!({ "left": structured::word(x), "right": structured::word(y) });
            match normalizer.multiply(&ex, &ey) {
                Ok(p) => {
                    let _ = writeln!(text, "({x}) * ({y}) = {p}");
                    entry["product"] = structured::op_terms(&p);
                }
                Err(e) => {
                    let _ = writeln!(text, "({x}) * ({y}) : {e}");
                    entry["error"] = json!(e.to_string());
                }
            }
            entries.push(entry);
        }
    }
    let value = structured::envelope(
        ring,
        "op",
        json!({ "max_degree": max_degree, "products": entries }),
    );
    (text.trim_end().to_string(), value)
}

fn verify_text(r: &verify::Report) -> String {
    let status = if r.passed() { "PASS" } else { "FAIL" };
    let mut text = format!(
        "{} over {}: {status} ({} checked, {} skipped, {} failed)",
        r.suite.name(),
        r.ring,
        r.checked,
        r.skipped,
        r.failures.len()
    );
    for n in &r.notes {
        let _ = write!(text, "\n  {n}");
    }
    for f in r.failures.iter().take(20) {
        let _ = write!(text, "\n  counterexample: {f}");
    }
    if r.failures.len() > 20 {
        let _ = write!(text, "\n  ... {} more", r.failures.len() - 20);
    }
    text
}

fn verify_value(r: &verify::Report) -> Value {
    structured::envelope(
        r.ring,
        "verify",
        json!({
            "suite": r.suite.name(),
            "passed": r.passed(),
            "checked": r.checked,
            "skipped": r.skipped,
            "notes": r.notes,
            "failures": r.failures,
        }),
    )
}
