//! The `solidring` command line.
//!
//! [`run`] takes the full argument vector and returns the exit code with
//! everything that would be written, so tests can drive it in-process.

use std::fmt::Write as _;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use solid_core::elements::{Ambient, ElementLiteral, ProductElementSpec, SolidElement};
use solid_core::engine::{core, hom_exists, solid_form, CoreResult};
use solid_core::expr::RingExpr;
use solid_core::oracle::{
    all_witnesses, build_hom, count_cyclic_homs, coproduct_crosscheck, tensor_grid_core, FiniteProductRing,
};
use solid_core::{Error, ParseError, Prime, SolidData};

#[derive(Debug, Parser)]
#[command(name = "solidring", version, about = "Cores and morphisms of solid commutative rings")]
struct Cli {
    /// Output as `key: value` lines or as one JSON object.
    #[arg(long, value_enum, default_value_t = Format::Lines, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Lines,
    Json,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Core of a ring expression.
    Core { expr: String },
    /// Whether a solid ring maps to the given ring.
    Hom {
        /// A `solid(...)` line or an expression for a solid ring.
        source: String,
        target: String,
    },
    /// Coproduct of solid rings.
    Coprod {
        #[arg(required = true)]
        solids: Vec<String>,
    },
    /// Core of the product of the given rings.
    LimitCore {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Upper bound for the core of the tensor product of the given rings.
    ColimitBound {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Whether two `solid(...)` lines name isomorphic rings.
    Iso { left: String, right: String },
    /// Element arithmetic in a `q = 0` solid ring.
    Elem {
        op: ElemOp,
        #[arg(long)]
        ring: String,
        #[arg(required = true, num_args = 1..=2, allow_hyphen_values = true)]
        elems: Vec<String>,
    },
    /// Whether an element of `L x Prod(p in K) Z/p^e` lies in its core.
    Member { expr: String, elem: String },
    /// Brute-force checks.
    #[command(subcommand)]
    Oracle(OracleCommand),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ElemOp {
    Add,
    Mul,
    Neg,
    Eq,
}

#[derive(Debug, Subcommand)]
enum OracleCommand {
    /// Absolute elements of `Z/n1 x Z/n2 x ...` by enumeration.
    FiniteCore {
        #[arg(value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
    },
    /// Search `Z/n` for `r` with `p r^2 = r` and `p^(a+1) r = p^a`.
    FindR { n: u64, p: u64, a: u64 },
    /// Count ring maps `Z/m -> Z/n`.
    HomCount { m: u64, n: u64 },
    /// Coproduct by exponents versus the expanded tensor product.
    CoprodCheck { left: String, right: String },
}

/// Everything a run produced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl Failure {
    fn parse(input: &str, err: &ParseError) -> Failure {
        let caret = " ".repeat(err.pos);
        Failure::Usage(format!("cannot parse `{input}`: {err}\n  {input}\n  {caret}^"))
    }

    fn from_error(input: &str, err: Error) -> Failure {
        match err {
            Error::Parse(p) => Failure::parse(input, &p),
            e @ (Error::NotPrime(_) | Error::PrimeOutOfRange(_) | Error::BadParameter(_)) => {
                Failure::Usage(format!("`{input}`: {e}"))
            }
            e => Failure::Domain(e.to_string()),
        }
    }
}

type Fields = Vec<(&'static str, String)>;
type Run<T> = Result<T, Failure>;

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

fn domain(err: Error) -> Failure {
    Failure::Domain(err.to_string())
}

fn parse_expr(s: &str) -> Run<RingExpr> {
    s.parse::<RingExpr>().map_err(|e| Failure::parse(s, &e))
}

fn parse_solid(s: &str) -> Run<SolidData> {
    s.parse::<SolidData>().map_err(|e| Failure::from_error(s, e))
}

fn looks_like_solid_line(s: &str) -> bool {
    s.contains("solid(")
}

fn core_of(s: &str) -> Run<CoreResult> {
    core(&parse_expr(s)?).map_err(domain)
}

/// Solid data of an argument that is either a `solid(...)` line or an
/// expression; the flag says whether the argument is itself solid.
fn data_of(s: &str) -> Run<(SolidData, bool)> {
    if looks_like_solid_line(s) {
        return Ok((parse_solid(s)?, true));
    }
    let expr = parse_expr(s)?;
    let is_solid = solid_form(&expr).map_err(domain)?.is_some();
    Ok((core(&expr).map_err(domain)?.data, is_solid))
}

fn solid_source(s: &str) -> Run<SolidData> {
    if looks_like_solid_line(s) {
        return parse_solid(s);
    }
    solid_form(&parse_expr(s)?)
        .map_err(domain)?
        .ok_or_else(|| Failure::Domain(format!("`{s}` is not a solid ring; pass its core instead")))
}

fn elem_literal(s: &str) -> Run<ElementLiteral> {
    s.parse::<ElementLiteral>().map_err(|e| Failure::parse(s, &e))
}

fn prime(n: u64) -> Run<Prime> {
    Prime::new(n).map_err(|e| Failure::Usage(e.to_string()))
}

fn execute(command: &Command) -> Run<Fields> {
    Ok(match command {
        Command::Core { expr } => {
            let result = core_of(expr)?;
            vec![
                ("core", result.data.to_string()),
                ("char", result.characteristic.to_string()),
                ("derivation", result.derivation_text()),
            ]
        }
        Command::Hom { source, target } => {
            let source = solid_source(source)?;
            let target = core_of(target)?;
            vec![("hom", yes_no(hom_exists(&source, &target)))]
        }
        Command::Coprod { solids } => {
            let data = solids.iter().map(|s| parse_solid(s)).collect::<Run<Vec<_>>>()?;
            vec![("coprod", SolidData::coproduct(&data).map_err(domain)?.to_string())]
        }
        Command::LimitCore { exprs } => {
            let data = exprs.iter().map(|s| core_of(s).map(|c| c.data)).collect::<Run<Vec<_>>>()?;
            vec![("limit-core", SolidData::limit_sup(&data).map_err(domain)?.to_string())]
        }
        Command::ColimitBound { exprs } => {
            let members = exprs.iter().map(|s| data_of(s)).collect::<Run<Vec<_>>>()?;
            let all_solid = members.iter().all(|(_, solid)| *solid);
            let bound = SolidData::colimit_bound(members.iter().map(|(d, _)| d), all_solid).map_err(domain)?;
            vec![("colimit-bound", bound.bound.to_string()), ("exact", yes_no(bound.exact))]
        }
        Command::Iso { left, right } => {
            let (l, r) = (parse_solid(left)?, parse_solid(right)?);
            vec![("iso", yes_no(l.iso(&r)))]
        }
        Command::Elem { op, ring, elems } => elem(*op, ring, elems)?,
        Command::Member { expr, elem } => {
            let ambient = Ambient::from_expr(&parse_expr(expr)?).map_err(domain)?;
            let spec = ProductElementSpec::from(elem_literal(elem)?);
            vec![("member", yes_no(ambient.in_core(&spec).map_err(domain)?))]
        }
        Command::Oracle(cmd) => oracle(cmd)?,
    })
}

fn elem(op: ElemOp, ring: &str, elems: &[String]) -> Run<Fields> {
    let ring = parse_solid(ring)?;
    let arity = if op == ElemOp::Neg { 1 } else { 2 };
    if elems.len() != arity {
        return Err(Failure::Usage(format!("`elem {op:?}` takes {arity} element(s), got {}", elems.len()).to_lowercase()));
    }
    let xs = elems
        .iter()
        .map(|s| SolidElement::from_literal(&ring, &elem_literal(s)?).map_err(domain))
        .collect::<Run<Vec<_>>>()?;
    let result = match op {
        ElemOp::Add => xs[0].add(&xs[1]),
        ElemOp::Mul => xs[0].mul(&xs[1]),
        ElemOp::Neg => Ok(xs[0].neg()),
        ElemOp::Eq => return Ok(vec![("eq", yes_no(xs[0].equals(&xs[1]).map_err(domain)?))]),
    };
    Ok(vec![("elem", result.map_err(domain)?.to_string())])
}

fn oracle(cmd: &OracleCommand) -> Run<Fields> {
    Ok(match cmd {
        OracleCommand::FiniteCore { moduli } => {
            let ring = FiniteProductRing::new(moduli.clone()).map_err(domain)?;
            let core = tensor_grid_core(&ring).map_err(domain)?;
            vec![
                ("core-size", core.enumerated.len().to_string()),
                ("lcm", ring.lcm().to_string()),
                ("agree", yes_no(core.agree())),
                ("image-of-z", yes_no(core.enumerated == ring.image_of_integers())),
            ]
        }
        OracleCommand::FindR { n, p, a } => {
            let witnesses = all_witnesses(*n, prime(*p)?, *a).map_err(domain)?;
            match witnesses.first() {
                None => vec![("witness", "none".to_string())],
                Some(w) => {
                    let check = match build_hom(*w).check(3) {
                        Ok(()) => "pass".to_string(),
                        Err(msg) => format!("fail ({msg})"),
                    };
                    vec![
                        ("witness", format!("r={} mod {}", w.r, w.n)),
                        ("unique", yes_no(witnesses.len() == 1)),
                        ("hom-check", check),
                    ]
                }
            }
        }
        OracleCommand::HomCount { m, n } => {
            vec![("hom-count", count_cyclic_homs(*m, *n).map_err(domain)?.to_string())]
        }
        OracleCommand::CoprodCheck { left, right } => {
            let check = coproduct_crosscheck(&parse_solid(left)?, &parse_solid(right)?).map_err(domain)?;
            vec![
                ("by-exponents", check.by_exponents.to_string()),
                ("by-tensor", check.by_tensor.to_string()),
                ("agree", yes_no(check.agree())),
            ]
        }
    })
}

fn render(fields: &Fields, format: Format) -> String {
    match format {
        Format::Lines => fields.iter().fold(String::new(), |mut out, (k, v)| {
            let _ = writeln!(out, "{k}: {v}");
            out
        }),
        Format::Json => {
            let map: Map<String, Value> = fields.iter().map(|(k, v)| (k.to_string(), Value::String(v.clone()))).collect();
            format!("{}\n", Value::Object(map))
        }
    }
}

/// Runs one command line; `args[0]` is the program name.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code, stdout: String::new(), stderr: text }
            } else {
                Outcome { code, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok(fields) => Outcome { code: 0, stdout: render(&fields, cli.format), stderr: String::new() },
        Err(Failure::Usage(msg)) => Outcome { code: 2, stdout: String::new(), stderr: format!("error: {msg}\n") },
        Err(Failure::Domain(msg)) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {msg}\n") },
    }
}
