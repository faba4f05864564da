//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a verified property failed, 2 usage or schema
//! error, 3 relation violated or infinite-dimensional input, 4 size limit.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use loopspace_core::bridge::{phi_in, psi, CommutingTuple};
use loopspace_core::diagrams::hom_space;
use loopspace_core::groebner::buchberger;
use loopspace_core::homotopy::{compare_derived, ChainComplex, Host};
use loopspace_core::polymods::{ext_tor_mod, hom_mod, DerivedFunctor, ModulePresentation};
use loopspace_core::smith::{invariant_factors, smith_normal_form, InvariantFactorForm};
use loopspace_core::MonomialOrder;
use serde_json::{json, Value};

use crate::error::{schema, CliError};
use crate::json::{self, Complex, Context, Object};
use crate::verify::{self, Options, Suite};

#[derive(Debug, Parser)]
#[command(name = "loopspace", version, about = "Commuting matrices, polynomial modules and their derived invariants")]
pub struct Cli {
    /// Default field for inputs without one: Q or a prime p.
    #[arg(long, global = true, default_value = "101")]
    pub field: String,
    /// Monomial order for inputs without one.
    #[arg(long, global = true, default_value = "degrevlex")]
    pub order: String,
    /// Seed for the verification suites.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Number of random trials (per suite).
    #[arg(long, global = true)]
    pub trials: Option<usize>,
    /// Dimension bound for random inputs.
    #[arg(long = "max-dim", global = true)]
    pub max_dim: Option<usize>,
    /// Highest degree for Ext and Tor.
    #[arg(long = "max-degree", global = true, default_value_t = 2)]
    pub max_degree: usize,
    /// Write the result here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Commuting tuple to module presentation.
    Phi { input: Option<PathBuf> },
    /// Finite-dimensional module presentation to commuting tuple.
    Psi { input: Option<PathBuf> },
    /// Compute an invariant of the input.
    Compute { kind: ComputeKind, input: Option<PathBuf> },
    /// Run a property suite on random inputs, or on one input (`-` for standard input).
    Verify { suite: SuiteArg, input: Option<PathBuf> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComputeKind {
    Hom,
    Ext,
    Tor,
    Homology,
    Snf,
    Gb,
    #[value(name = "invariant_factors", alias = "invariant-factors")]
    InvariantFactors,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Roundtrip,
    Homset,
    Derived,
    Swap,
    Explaw,
    Restriction,
    Kernels,
    Koszul,
    Classical,
    All,
}

/// What a command produced: text for standard output and the exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub output: String,
    pub code: i32,
}

/// Parses `args` (program name first), runs the command and returns the
/// exit code, writing to the given streams.
pub fn main_with<I, T>(args: I, stdin: &mut dyn Read, stdout: &mut dyn std::io::Write, stderr: &mut dyn std::io::Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(stdout, "{e}");
                return 0;
            }
            let err = CliError::Usage(e.render().to_string().trim().to_string());
            let _ = writeln!(stderr, "{}", err.to_json());
            return err.exit_code();
        }
    };
    let out_path = cli.out.clone();
    match run(&cli, stdin) {
        Ok(outcome) => {
            let written = match &out_path {
                Some(p) => std::fs::write(p, &outcome.output).map_err(|e| CliError::Io(format!("{}: {e}", p.display()))),
                None => stdout.write_all(outcome.output.as_bytes()).map_err(|e| CliError::Io(e.to_string())),
            };
            match written {
                Ok(()) => outcome.code,
                Err(err) => {
                    let _ = writeln!(stderr, "{}", err.to_json());
                    err.exit_code()
                }
            }
        }
        Err(err) => {
            let _ = writeln!(stderr, "{}", err.to_json());
            err.exit_code()
        }
    }
}

fn read_input(path: &Option<PathBuf>, stdin: &mut dyn Read) -> Result<Value, CliError> {
    let text = match path.as_deref().filter(|p| p.as_os_str() != "-") {
        Some(p) => std::fs::read_to_string(p).map_err(|e| CliError::Io(format!("{}: {e}", p.display())))?,
        None => {
            let mut s = String::new();
            stdin.read_to_string(&mut s).map_err(|e| CliError::Io(e.to_string()))?;
            s
        }
    };
    Ok(serde_json::from_str(&text)?)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn ok(v: Value) -> Result<Outcome, CliError> {
    Ok(Outcome { output: pretty(&v), code: 0 })
}

pub fn run(cli: &Cli, stdin: &mut dyn Read) -> Result<Outcome, CliError> {
    let ctx = Context { field: json::parse_field(&cli.field)?, order: json::parse_order(&cli.order)? };
    match &cli.command {
        Command::Phi { input } => {
            let v = read_input(input, stdin)?;
            match json::decode_object(&v, &ctx)? {
                Object::Tuple(x) => ok(json::encode_presentation(&phi_in(&x, ctx.order))),
                Object::Module(_) => Err(schema("phi expects a commuting tuple")),
            }
        }
        Command::Psi { input } => {
            let v = read_input(input, stdin)?;
            match json::decode_object(&v, &ctx)? {
                Object::Module(m) => ok(json::encode_tuple(&psi(&m)?)),
                Object::Tuple(_) => Err(schema("psi expects a module presentation")),
            }
        }
        Command::Compute { kind, input } => {
            let v = read_input(input, stdin)?;
            ok(compute(*kind, &v, &ctx, cli.max_degree)?)
        }
        Command::Verify { suite, input } => {
            if cli.trials == Some(0) {
                return Err(CliError::Usage("--trials must be at least 1".into()));
            }
            let opts = Options { ctx, seed: cli.seed, trials: cli.trials, max_dim: cli.max_dim, max_degree: cli.max_degree };
            let reports = match (suite, input) {
                (SuiteArg::All, Some(_)) => return Err(CliError::Usage("verify all does not take an input file".into())),
                (SuiteArg::All, None) => verify::run_all(&opts)?,
                (s, None) => vec![verify::run_suite(suite_of(*s), &opts)?],
                (s, Some(_)) => {
                    let v = read_input(input, stdin)?;
                    vec![verify::run_instance(suite_of(*s), &v, &opts)?]
                }
            };
            let mut output = String::new();
            for r in &reports {
                output.push_str(&r.render());
                output.push('\n');
            }
            let failed = reports.iter().filter(|r| !r.passed()).count();
            if reports.len() > 1 {
                let verdict = if failed == 0 { "PASS" } else { "FAIL" };
                output.push_str(&format!("all: {verdict} {}/{} suites\n", reports.len() - failed, reports.len()));
            }
            Ok(Outcome { output, code: if failed == 0 { 0 } else { 1 } })
        }
    }
}

fn suite_of(s: SuiteArg) -> Suite {
    match s {
        SuiteArg::Roundtrip => Suite::Roundtrip,
        SuiteArg::Homset => Suite::Homset,
        SuiteArg::Derived => Suite::Derived,
        SuiteArg::Swap => Suite::Swap,
        SuiteArg::Explaw => Suite::Explaw,
        SuiteArg::Restriction => Suite::Restriction,
        SuiteArg::Kernels => Suite::Kernels,
        SuiteArg::Koszul => Suite::Koszul,
        SuiteArg::Classical => Suite::Classical,
        SuiteArg::All => unreachable!("handled by the caller"),
    }
}

fn factors_json(f: &InvariantFactorForm) -> Value {
    json!({
        "free_rank": f.free_rank,
        "factors": json::encode_polys(&f.factors),
        "dimension": f.dimension(),
    })
}

fn functor_name(f: DerivedFunctor) -> &'static str {
    match f {
        DerivedFunctor::Ext => "ext",
        DerivedFunctor::Tor => "tor",
    }
}

/// The JSON report of `loopspace compute <kind>`.
pub fn compute(kind: ComputeKind, v: &Value, ctx: &Context, max_degree: usize) -> Result<Value, CliError> {
    match kind {
        ComputeKind::Hom => match json::decode_pair(v, ctx)? {
            (Object::Tuple(x), Object::Tuple(y)) => {
                let basis = hom_space(&x.to_diagram(), &y.to_diagram())?;
                let module = hom_mod(&phi_in(&x, ctx.order), &phi_in(&y, ctx.order))?.dim;
                Ok(json!({
                    "dimension": basis.len(),
                    "module_side": module,
                    "basis": basis.iter().map(json::encode_diagram_morphism).collect::<Vec<_>>(),
                }))
            }
            (Object::Module(m), Object::Module(p)) => {
                let h = hom_mod(&m, &p)?;
                Ok(json!({
                    "dimension": h.dim,
                    "basis": h.basis.iter().map(|f| json::encode_poly_matrix(f.matrix())).collect::<Vec<_>>(),
                }))
            }
            _ => Err(schema("hom expects two tuples or two presentations")),
        },
        ComputeKind::Ext | ComputeKind::Tor => {
            let which = if kind == ComputeKind::Ext { DerivedFunctor::Ext } else { DerivedFunctor::Tor };
            match json::decode_pair(v, ctx)? {
                (Object::Module(m), Object::Module(p)) => {
                    let dims = (0..=max_degree)
                        .map(|i| Ok(ext_tor_mod(&m, &p, i, which)?.dimension))
                        .collect::<Result<Vec<usize>, CliError>>()?;
                    Ok(json!({ "functor": functor_name(which), "degrees": (0..=max_degree).collect::<Vec<_>>(), "dims": dims }))
                }
                (Object::Tuple(x), Object::Tuple(y)) => {
                    let rows: Vec<_> = compare_derived(&x, &y, max_degree)?.into_iter().filter(|r| r.functor == which).collect();
                    Ok(json!({
                        "functor": functor_name(which),
                        "degrees": rows.iter().map(|r| r.degree).collect::<Vec<_>>(),
                        "dims": rows.iter().map(|r| r.diagram_side).collect::<Vec<_>>(),
                        "module_side": rows.iter().map(|r| r.module_side).collect::<Vec<_>>(),
                        "agree": rows.iter().all(|r| r.agrees()),
                    }))
                }
                _ => Err(schema("ext and tor expect two tuples or two presentations")),
            }
        }
        ComputeKind::Homology => match json::decode_complex(v, ctx)? {
            Complex::Loops(c) => homology_report(&c, |h| {
                let x = CommutingTuple::from_diagram(h).expect("loop diagram");
                json::encode_tuple(&x)
            }),
            Complex::Modules(c) => homology_report(&c, json::encode_presentation),
        },
        ComputeKind::Snf => {
            let m = serde_json::from_value::<json::SnfJson>(v.clone())?.decode(ctx)?;
            let r = smith_normal_form(&m)?;
            Ok(json!({
                "diagonal": json::encode_polys(&r.diagonal()),
                "u": json::encode_poly_matrix(&r.u),
                "d": json::encode_poly_matrix(&r.d),
                "v": json::encode_poly_matrix(&r.v),
            }))
        }
        ComputeKind::Gb => {
            let (ring, polys) = serde_json::from_value::<json::IdealJson>(v.clone())?.decode(ctx)?;
            let gb = buchberger(&polys, ring.order)?;
            Ok(json!({ "order": json::order_name(ring.order), "basis": json::encode_polys(&gb.polys()) }))
        }
        ComputeKind::InvariantFactors => {
            let m: ModulePresentation = match json::decode_object(v, ctx)? {
                Object::Module(m) => m,
                Object::Tuple(x) => phi_in(&x, MonomialOrder::DegRevLex),
            };
            Ok(factors_json(&invariant_factors(&m)?))
        }
    }
}

fn homology_report<H: Host>(c: &ChainComplex<H>, encode: impl Fn(&H::Object) -> Value) -> Result<Value, CliError> {
    let mut dims = Vec::new();
    let mut objects = Vec::new();
    for i in c.lo()..=c.hi() {
        let h = c.homology(i)?;
        dims.push(c.host().dimension(&h)?);
        objects.push(encode(&h));
    }
    Ok(json!({ "support": [c.lo(), c.hi()], "dims": dims, "homology": objects }))
}
