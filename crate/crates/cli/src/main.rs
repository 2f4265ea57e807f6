use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use modlie::cohomology::{h_dim, CoboundarySolver};
use modlie::contact::build_l;
use modlie::cyc::{build_cyc, verify_claim2};
use modlie::family::{base_algebra, load_cochain, load_family};
use modlie::golden::GoldenStore;
use modlie::massey::{massey, mc_integrate, McStatus};
use modlie::report::{claim1_table, verify, Statement, Verdict, VerifyOptions, COCYCLES_P2, COCYCLES_P3};
use modlie::{Field, LieAlgebra, Module};

#[derive(Parser)]
#[command(name = "modlie", version, about = "Deformations of small modular Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Builtin {
    #[value(name = "o5-p3")]
    O5P3,
    #[value(name = "o51-p2")]
    O51P2,
    Cyc,
    #[value(name = "contact-L")]
    ContactL,
}

#[derive(Clone, Copy, ValueEnum)]
enum Coefficients {
    Adjoint,
    Trivial,
}

#[derive(clap::Args)]
struct FieldArgs {
    /// Characteristic.
    #[arg(long)]
    p: Option<u32>,
    /// Field order (a power of the characteristic).
    #[arg(long)]
    field: Option<usize>,
}

impl FieldArgs {
    fn resolve(&self, default_p: u32) -> Result<Field, String> {
        let field = match (self.field, self.p) {
            (Some(q), _) => Field::with_order(q),
            (None, Some(p)) => Field::prime(p),
            (None, None) => Field::prime(default_p),
        }
        .map_err(|e| e.to_string())?;
        if let Some(p) = self.p {
            if field.p() != p {
                return Err(format!("field of order {} does not have characteristic {p}", field.order()));
            }
        }
        Ok(field)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the structure constants of a builtin algebra as JSON.
    Build {
        algebra: Builtin,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, allow_hyphen_values = true)]
        eps: Option<String>,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        delta: String,
        #[arg(long, allow_hyphen_values = true, default_value = "0")]
        rho: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the checks behind a statement and emit a certificate.
    Verify {
        statement: String,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Certificate path; defaults to <statement>.cert.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Dimension of the cohomology of a shipped algebra or algebra file.
    H2 {
        algebra: String,
        #[arg(long, default_value_t = 2)]
        degree: usize,
        #[arg(long, value_enum, default_value = "adjoint")]
        module: Coefficients,
    },
    /// Print the Massey bracket of two named cochains.
    Massey {
        algebra: String,
        first: String,
        second: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Integrate the Maurer-Cartan equation from named cocycles.
    McIntegrate {
        algebra: String,
        /// Cocycle names; defaults to the full cohomology basis.
        cocycles: Vec<String>,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Specialize a deformation family at a parameter tuple.
    Specialize {
        family: String,
        #[arg(long = "t", value_delimiter = ',', allow_hyphen_values = true, required = true)]
        values: Vec<String>,
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Isomorphism-invariant fingerprint of a shipped algebra or algebra file.
    Fingerprint {
        algebra: String,
    },
    /// Both halves of the rigidity counterexample.
    Counterexample {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Failure {
    Refuted,
    Error(String),
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Refuted) => ExitCode::from(1),
        Err(Failure::Error(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn emit(value: &Value, out: Option<&Path>) -> CmdResult {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Error(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// A golden algebra name or a path to an algebra JSON file.
fn load_algebra(store: &GoldenStore, source: &str) -> Result<LieAlgebra<Field>, Failure> {
    if store.paths().any(|p| p == GoldenStore::algebra_path(source)) {
        return Ok(base_algebra(store, source)?);
    }
    let text = std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?;
    Ok(LieAlgebra::from_json(&serde_json::from_str(&text)?)?)
}

fn run(command: Command) -> CmdResult {
    let store = GoldenStore::from_env()?;
    match command {
        Command::Build { algebra, field, eps, delta, rho, out } => {
            let l = match algebra {
                Builtin::O5P3 => base_algebra(&store, "o5-p3")?,
                Builtin::O51P2 => base_algebra(&store, "o51-p2")?,
                Builtin::Cyc => build_cyc(&field.resolve(3)?)?,
                Builtin::ContactL => {
                    let f = field.resolve(3)?;
                    let eps = eps.ok_or("contact-L needs --eps")?;
                    build_l(&f, f.parse(&eps)?, f.parse(&delta)?, f.parse(&rho)?)?
                }
            };
            emit(&l.to_json(), out.as_deref())
        }
        Command::Verify { statement, field, seed, out } => {
            let statement: Statement = statement.parse()?;
            let opts = VerifyOptions { p: field.p, field: field.field, seed };
            let cert = verify(statement, &opts, &store)?;
            let path = out.unwrap_or_else(|| PathBuf::from(format!("{statement}.cert.json")));
            emit(&cert.to_json(), Some(&path))?;
            println!("{}", cert.summary());
            println!("certificate: {}", path.display());
            match cert.verdict {
                Verdict::Verified => Ok(()),
                Verdict::Refuted => Err(Failure::Refuted),
            }
        }
        Command::H2 { algebra, degree, module } => {
            let l = load_algebra(&store, &algebra)?;
            let module = match module {
                Coefficients::Adjoint => Module::Adjoint,
                Coefficients::Trivial => Module::Trivial,
            };
            println!("dim H^{degree}({algebra}; {}) = {}", module.name(), h_dim(&l, degree, module));
            Ok(())
        }
        Command::Massey { algebra, first, second, out } => {
            let l = base_algebra(&store, &algebra)?;
            let a = load_cochain(&store, &algebra, &first)?;
            let b = load_cochain(&store, &algebra, &second)?;
            let m = massey(&l, &a, &b)?;
            let solver = CoboundarySolver::new(&l, 2, Module::Adjoint);
            let exact = solver.is_coboundary(&m)?;
            println!("[[{first}, {second}]] = {}", m.format(l.basis()));
            println!("coboundary: {exact}");
            if out.is_some() {
                emit(&json!({ "bracket": m.to_json(), "coboundary": exact }), out.as_deref())?;
            }
            Ok(())
        }
        Command::McIntegrate { algebra, cocycles, max_degree, out } => {
            let l = base_algebra(&store, &algebra)?;
            let names: Vec<String> = if cocycles.is_empty() {
                let defaults: &[&str] = if algebra == "o51-p2" { &COCYCLES_P2 } else { &COCYCLES_P3 };
                defaults.iter().map(|s| s.to_string()).collect()
            } else {
                cocycles
            };
            let cs = names.iter().map(|n| load_cochain(&store, &algebra, n)).collect::<Result<Vec<_>, _>>()?;
            let outcome = mc_integrate(&l, &cs, max_degree)?;
            match &outcome.status {
                McStatus::Terminated { degree } => println!("terminated at degree {degree}"),
                McStatus::NotTerminated { residual_monomials } => {
                    println!("not terminated: {} residual obstructions above degree {max_degree}", residual_monomials.len())
                }
                McStatus::Obstructed { monomial } => {
                    println!("obstructed at {:?}", monomial.exponents_upto(names.len()))
                }
            }
            println!("terms: {}", outcome.terms.len());
            if out.is_some() {
                emit(&outcome.to_json(), out.as_deref())?;
            }
            match outcome.status {
                McStatus::Terminated { .. } => Ok(()),
                _ => Err(Failure::Refuted),
            }
        }
        Command::Specialize { family, values, field, out } => {
            let fam = load_family(&store, &family)?;
            let f = field.resolve(fam.base().field().p())?;
            if values.len() != fam.params().len() {
                return Err(Failure::Error(format!("{family} has {} parameters", fam.params().len())));
            }
            let t = values.iter().map(|v| f.parse(v)).collect::<Result<Vec<_>, _>>()?;
            let l = fam.specialize(&f, &t)?;
            let report = l.check_jacobi();
            eprintln!("jacobi violations: {}", report.violations.len());
            emit(&l.to_json(), out.as_deref())
        }
        Command::Fingerprint { algebra } => {
            let l = load_algebra(&store, &algebra)?;
            emit(&serde_json::to_value(l.fingerprint())?, None)
        }
        Command::Counterexample { field, out } => {
            let f = field.resolve(3)?;
            let claim1 = claim1_table(&f)?;
            let claim1_ok = claim1.iter().all(|(_, ok)| *ok);
            let cert = verify_claim2(&f)?;
            let labels = modlie::cyc::basis_labels(f.p() as usize);
            println!("rescaling isomorphism for every admissible a: {claim1_ok}");
            println!("z = {}", cert.z.format(&labels));
            println!("L(z) = {}", f.format(cert.functional_on_z));
            println!("z is a coboundary: {}", cert.full_certificate.is_feasible());
            if out.is_some() {
                emit(
                    &json!({
                        "claim1": claim1.iter().map(|(a, ok)| json!([f.format(*a), ok])).collect::<Vec<_>>(),
                        "claim2": cert.to_json(&labels),
                    }),
                    out.as_deref(),
                )?;
            }
            if claim1_ok && cert.verified() { Ok(()) } else { Err(Failure::Refuted) }
        }
    }
}
