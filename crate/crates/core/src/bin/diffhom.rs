use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use diffhom::catalog::{
    enum_sigma_bar, enum_sigma_d, verify_finite_generation, verify_minimality,
    verify_model_quotient_basis, verify_quotient_basis, weighted_signature, GeneratorCatalog,
};
use diffhom::harmonic::{
    closed_form_dimension, delta_t, enum_standard_tableaux, mu_k, perp_basis, quotient_dimension,
    verify_block_surjectivity, verify_dcp_equality, verify_spanning, IdealPresentation, Partition,
};
use diffhom::jet::{diff_homog_basis_with, JetContext};
use diffhom::suite::{render, run_suite, Format, SuiteConfig};
use diffhom::tensor::{invariant_tensor_basis_with, verify_wronskian_basis};
use diffhom::{Error, Limits};

#[derive(Parser)]
#[command(name = "diffhom", version, about = "Exact computations with differentially homogeneous polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dimension (and optionally a basis) of diff-homogeneous polynomials.
    Dim {
        #[arg(short = 'n', long = "vars", help = "N, so there are N+1 variables")]
        n: usize,
        #[arg(short, long)]
        d: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        basis: bool,
    },
    /// Invariant tensors of F_k^{⊗d}.
    TensorInv {
        #[arg(short, long)]
        k: usize,
        #[arg(short, long)]
        d: usize,
        #[arg(long)]
        basis: bool,
    },
    /// Perp space of I_k: dimension three ways.
    Harmonic {
        #[arg(short, long)]
        d: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(long)]
        basis: bool,
    },
    /// Compare I_k with the DeConcini-Procesi ideal of μ_k.
    Dcp {
        #[arg(short, long)]
        d: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(long, help = "degree cap, default d(k+1)")]
        cap: Option<u32>,
    },
    /// Standard tableaux of a shape and their Vandermonde products.
    Tableaux {
        #[arg(long, value_delimiter = ',', required = true)]
        shape: Vec<usize>,
    },
    /// Σ_d (without --vars) or the nested index set Σ̄_d.
    Sigma {
        #[arg(short, long)]
        d: usize,
        #[arg(short = 'n', long = "vars")]
        n: Option<usize>,
    },
    /// The generator catalog G_1..G_{k+1}.
    Generators {
        #[arg(short = 'n', long = "vars")]
        n: usize,
        #[arg(short, long)]
        k: usize,
        #[arg(long, conflicts_with = "csv")]
        json: bool,
        #[arg(long)]
        csv: bool,
    },
    /// Run one verification and print its report as JSON.
    Verify {
        #[arg(value_enum)]
        check: Verification,
        #[arg(short = 'n', long = "vars", default_value_t = 1)]
        n: usize,
        #[arg(short, long, default_value_t = 2)]
        d: usize,
        #[arg(short, long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_delimiter = ',', help = "partition for spanning, default μ_k(d)")]
        mu: Option<Vec<usize>>,
        #[arg(long, help = "top degree for finite-generation, default d")]
        d_max: Option<usize>,
    },
    /// Run the whole suite.
    VerifyAll {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum)]
        format: Option<FormatArg>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Verification {
    Wronskian,
    Dcp,
    Spanning,
    Blocks,
    QuotientBasis,
    ModelQuotient,
    FiniteGeneration,
    Minimality,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Text,
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Text => Format::Text,
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

fn json<T: Serialize>(value: &T) -> Result<String, Error> {
    Ok(serde_json::to_string_pretty(value)?)
}

fn report<T: Serialize>(value: &T, passed: bool) -> Result<u8, Error> {
    println!("{}", json(value)?);
    Ok(if passed { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<u8, Error> {
    let limits = Limits::from_env()?;
    match cli.command {
        Command::Dim { n, d, k, basis } => {
            let b = diff_homog_basis_with(&JetContext::new(n, d, k)?, &limits)?;
            println!("{}", b.dimension());
            if basis {
                for p in b.polys() {
                    println!("{p}");
                }
            }
        }
        Command::TensorInv { k, d, basis } => {
            let b = invariant_tensor_basis_with(k, d, &limits)?;
            println!("{}", b.len());
            if basis {
                for t in &b {
                    println!("{t}");
                }
            }
        }
        Command::Harmonic { d, k, basis } => {
            let perp = perp_basis(&IdealPresentation::ik(d, k), k, &limits)?;
            println!("perp dimension: {}", perp.len());
            println!("quotient dimension: {}", quotient_dimension(d, k, &limits)?);
            println!("closed form: {}", closed_form_dimension(d, k));
            println!("mu_k: {}", mu_k(d, k));
            if basis {
                for p in &perp {
                    println!("{p}");
                }
            }
        }
        Command::Dcp { d, k, cap } => {
            let cap = cap.or(limits.membership_cap).unwrap_or((d * (k + 1)) as u32);
            let r = verify_dcp_equality(d, k, cap, &limits)?;
            return report(&r, r.passed);
        }
        Command::Tableaux { shape } => {
            let mu = Partition::new(&shape, shape.iter().sum())?;
            let tableaux = enum_standard_tableaux(&mu, &limits)?;
            println!("{} standard tableaux of shape {mu}", tableaux.len());
            for t in &tableaux {
                println!("{t}    {}", delta_t(t));
            }
        }
        Command::Sigma { d, n: None } => {
            let e = enum_sigma_d(d, &limits)?;
            println!("|Sigma_{d}| = {}", e.elements.len());
            for t in &e.elements {
                println!("{:?} class {}", t.alpha, t.class());
            }
        }
        Command::Sigma { d, n: Some(n) } => {
            let e = enum_sigma_bar(n, d, &limits)?;
            println!("|Sigma-bar_{d}| = {} (N = {n})", e.elements.len());
            for idx in &e.elements {
                match idx.class() {
                    Some(c) => println!("{idx} class {c}"),
                    None => println!("{idx}"),
                }
            }
        }
        Command::Generators { n, k, json: as_json, csv } => {
            let catalog = GeneratorCatalog::build(n, k, &limits)?;
            if as_json {
                println!("{}", serde_json::to_string_pretty(&catalog.to_json())?);
            } else if csv {
                let mut w = csv::Writer::from_writer(std::io::stdout());
                for row in catalog.count_table() {
                    w.serialize(row)?;
                }
                w.flush()?;
            } else {
                println!("weighted signature: {:?}", weighted_signature(n, k));
                for f in &catalog.families {
                    println!("degree {} (order {}): {} generators", f.degree, f.order, f.generators.len());
                    for g in &f.generators {
                        println!("  {}  {}", g.index, g.poly);
                    }
                }
            }
        }
        Command::Verify { check, n, d, k, mu, d_max } => {
            return match check {
                Verification::Wronskian => {
                    let r = verify_wronskian_basis(d, &limits)?;
                    report(&r, r.passed)
                }
                Verification::Dcp => {
                    let cap = limits.membership_cap.unwrap_or((d * (k + 1)) as u32);
                    let r = verify_dcp_equality(d, k, cap, &limits)?;
                    report(&r, r.passed)
                }
                Verification::Spanning => {
                    let mu = match mu {
                        Some(parts) => Partition::new(&parts, parts.iter().sum())?,
                        None => mu_k(d, k),
                    };
                    let r = verify_spanning(&mu, &limits)?;
                    report(&r, r.passed)
                }
                Verification::Blocks => {
                    let r = verify_block_surjectivity(d, k, &limits)?;
                    report(&r, r.passed)
                }
                Verification::QuotientBasis => {
                    let r = verify_quotient_basis(n, d, &limits)?;
                    report(&r, r.passed)
                }
                Verification::ModelQuotient => {
                    let r = verify_model_quotient_basis(d, &limits)?;
                    report(&r, r.passed)
                }
                Verification::FiniteGeneration => {
                    let r = verify_finite_generation(n, k, d_max.unwrap_or(d), &limits)?;
                    report(&r, r.passed)
                }
                Verification::Minimality => {
                    let r = verify_minimality(n, k, &limits)?;
                    report(&r, r.passed)
                }
            };
        }
        Command::VerifyAll { config, out, format } => {
            let mut cfg = match config {
                Some(path) => SuiteConfig::load(&path)?,
                None => SuiteConfig::default(),
            };
            cfg.limits.apply_env()?;
            if let Some(f) = format {
                cfg.format = f.into();
            }
            let r = run_suite(&cfg)?;
            let text = render(&r, cfg.format)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, text)?;
                    let s = r.summary;
                    eprintln!("{} passed, {} failed, {} skipped", s.pass, s.fail, s.skipped);
                }
                None => print!("{text}"),
            }
            return Ok(r.exit_code() as u8);
        }
    }
    Ok(0)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) | Error::InvalidIndex(_) | Error::InvalidComposition(_) | Error::IndexOutOfRange(_) => 2,
                Error::ResourceLimit { .. } => 3,
                _ => 1,
            })
        }
    }
}
