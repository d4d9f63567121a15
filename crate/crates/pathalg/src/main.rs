//! Command-line front end: reads quiver/element/matrix/rep JSON files,
//! dispatches to the library, and prints deterministic JSON (or a flat
//! text rendering of the same data).

use clap::{Args, Parser, Subcommand};
use pathalg::{
    blanchfield, json, ktheory, rep as reps, weak, Error, FieldSpec, Result,
};
use serde_json::Value;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "pathalg", version, about = "Path algebra module and K-theory calculator")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Coefficient field: q or fp:<p>
    #[arg(long, global = true, default_value = "q")]
    field: String,
    /// Output format: json or text
    #[arg(long, global = true, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Quiver inspection
    Quiver {
        #[command(subcommand)]
        cmd: QuiverCmd,
    },
    /// K-groups of the algebras attached to a quiver
    Ktheory(KtheoryArgs),
    /// Finite-dimensional representations
    Rep {
        #[command(subcommand)]
        cmd: RepCmd,
    },
    /// Torsion modules of the localization
    Torsion {
        #[command(subcommand)]
        cmd: TorsionCmd,
    },
    /// Submodules of filtered free modules
    Module {
        #[command(subcommand)]
        cmd: ModuleCmd,
    },
}

#[derive(Subcommand)]
enum QuiverCmd {
    /// Vertices, arrows, sinks, adjacency and incidence data
    Info { quiver: PathBuf },
}

#[derive(Args)]
struct KtheoryArgs {
    quiver: PathBuf,
    #[arg(long, default_value_t = 0)]
    degree: u32,
    /// leavitt, rational, or regular
    #[arg(long, default_value = "leavitt")]
    target: String,
    /// Dimension bound for simple-module enumeration
    #[arg(long, default_value_t = 3)]
    dmax: usize,
}

#[derive(Subcommand)]
enum RepCmd {
    /// Composition factors of a representation
    CompSeries { quiver: PathBuf, rep: PathBuf },
    /// Induced length and kill status of a reversed-side representation
    Induce { quiver: PathBuf, rep: PathBuf },
    /// Enumerate simple reversed-side representations up to a dimension bound
    Simples {
        quiver: PathBuf,
        #[arg(long, default_value_t = 2)]
        dmax: usize,
    },
}

#[derive(Subcommand)]
enum TorsionCmd {
    /// Lattice, length and factors of the cokernel of a localized matrix
    FromSigma { quiver: PathBuf, sigma: PathBuf },
}

#[derive(Subcommand)]
enum ModuleCmd {
    /// Weak basis of the submodule generated by the given vectors
    WeakBasis { quiver: PathBuf, module: PathBuf, generators: PathBuf },
    /// Membership of a vector in the submodule generated by the given vectors
    Member { quiver: PathBuf, module: PathBuf, generators: PathBuf, vector: PathBuf },
    /// Free-summand splitting of the quotient by the given vectors
    ProjectiveSplit { quiver: PathBuf, module: PathBuf, generators: PathBuf },
}

fn read(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("cannot read {}: {e}", path.display())))
}

fn parse_field(s: &str) -> Result<FieldSpec> {
    match s {
        "q" => Ok(FieldSpec::Q),
        _ => match s.strip_prefix("fp:") {
            Some(p) => {
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::Invalid(format!("bad prime in field spec {s:?}")))?;
                FieldSpec::fp(p)
            }
            None => Err(Error::Invalid(format!("unknown field spec {s:?}"))),
        },
    }
}

fn run(cli: &Cli) -> Result<Value> {
    let field = parse_field(&cli.field)?;
    match &cli.cmd {
        Cmd::Quiver { cmd: QuiverCmd::Info { quiver } } => {
            let q = json::parse_quiver(&read(quiver)?)?;
            Ok(json::quiver_info_json(&q))
        }
        Cmd::Ktheory(a) => {
            let q = json::parse_quiver(&read(&a.quiver)?)?;
            let report = match a.target.as_str() {
                "leavitt" => ktheory::k_leavitt_report(&q, field, a.degree)?,
                "rational" => ktheory::k_rational(&q, field, a.degree, a.dmax)?,
                "regular" => ktheory::k_regular(&q, field, a.degree, a.dmax)?,
                t => return Err(Error::Invalid(format!("unknown target {t:?}"))),
            };
            Ok(json::kreport_to_json(&report))
        }
        Cmd::Rep { cmd } => match cmd {
            RepCmd::CompSeries { quiver, rep } => {
                let q = json::parse_quiver(&read(quiver)?)?;
                let r = json::parse_rep(&read(rep)?, field, &q)?;
                let factors = reps::composition_series(&r, &q)?;
                Ok(serde_json::json!({
                    "length": factors.len(),
                    "factors": factors.iter().map(|f| json::rep_to_json(f, &q)).collect::<Vec<_>>(),
                }))
            }
            RepCmd::Induce { quiver, rep } => {
                let q = json::parse_quiver(&read(quiver)?)?;
                let r = json::parse_rep(&read(rep)?, field, &q)?;
                Ok(serde_json::json!({
                    "induced_length": reps::induced_length(&r, &q)?,
                    "killed": reps::is_killed(&r, &q)?,
                    "induced": blanchfield::is_blanchfield_induced(&r, &q),
                }))
            }
            RepCmd::Simples { quiver, dmax } => {
                let q = json::parse_quiver(&read(quiver)?)?;
                let simples = reps::enumerate_simples(&q, *dmax, field)?;
                Ok(serde_json::json!({
                    "dmax": dmax,
                    "simples": simples.iter().map(|s| json::rep_to_json(s, &q)).collect::<Vec<_>>(),
                }))
            }
        },
        Cmd::Torsion { cmd: TorsionCmd::FromSigma { quiver, sigma } } => {
            let q = json::parse_quiver(&read(quiver)?)?;
            let m = json::parse_matrix(&read(sigma)?, field, &q)?;
            let report = blanchfield::sigma_to_lattice(&m, &q)?;
            Ok(json::torsion_report_to_json(&report, &q))
        }
        Cmd::Module { cmd } => match cmd {
            ModuleCmd::WeakBasis { quiver, module, generators } => {
                let q = json::parse_quiver(&read(quiver)?)?;
                let m = json::parse_module(&read(module)?, field, &q)?;
                let gens = json::parse_vectors(&read(generators)?, &m, &q)?;
                let basis = weak::weak_basis(&gens, &m, &q)?;
                Ok(serde_json::json!({
                    "basis": basis.iter().map(|v| json::vector_to_json(v, &m, &q)).collect::<Vec<_>>(),
                }))
            }
            ModuleCmd::Member { quiver, module, generators, vector } => {
                let q = json::parse_quiver(&read(quiver)?)?;
                let m = json::parse_module(&read(module)?, field, &q)?;
                let gens = json::parse_vectors(&read(generators)?, &m, &q)?;
                let v = json::parse_vector(&read(vector)?, &m, &q)?;
                let basis = weak::weak_basis(&gens, &m, &q)?;
                let nf = weak::normal_form(&v, &basis, &m, &q)?;
                Ok(serde_json::json!({
                    "member": nf.is_zero(),
                    "normal_form": json::vector_to_json(&nf, &m, &q),
                }))
            }
            ModuleCmd::ProjectiveSplit { quiver, module, generators } => {
                let q = json::parse_quiver(&read(quiver)?)?;
                let m = json::parse_module(&read(module)?, field, &q)?;
                let gens = json::parse_vectors(&read(generators)?, &m, &q)?;
                let split = weak::projective_split(&m, &gens, &q)?;
                Ok(json::split_to_json(&split, &m, &q))
            }
        },
    }
}

/// Flat text rendering: one `path = value` line per leaf, in key order.
fn render_text(v: &Value, prefix: &str, out: &mut String) {
    match v {
        Value::Object(map) => {
            if map.is_empty() {
                out.push_str(prefix);
                out.push_str(" = {}\n");
            }
            for (k, x) in map {
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                render_text(x, &p, out);
            }
        }
        Value::Array(items) => {
            if items.is_empty() {
                out.push_str(prefix);
                out.push_str(" = []\n");
            }
            for (i, x) in items.iter().enumerate() {
                render_text(x, &format!("{prefix}[{i}]"), out);
            }
        }
        leaf => {
            out.push_str(prefix);
            out.push_str(" = ");
            out.push_str(&leaf.to_string());
            out.push('\n');
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(value) => {
            match cli.format.as_str() {
                "text" => {
                    let mut s = String::new();
                    render_text(&value, "", &mut s);
                    print!("{s}");
                }
                _ => println!("{value}"),
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::UnsupportedDegree(_) | Error::InfiniteFieldUnsupported => {
                    ExitCode::from(2)
                }
                _ => ExitCode::FAILURE,
            }
        }
    }
}
