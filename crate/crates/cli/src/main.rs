use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use bddk::counting::{count_models, gen_poly, GenPoly};
use bddk::enumerate::{method1_sieve, method2_enumerate, method3_enumerate};
use bddk::schedule::Schedule;
use bddk::verify::{run_checks, Expectations};
use bddk::{bits_to_string, cnf, oracle, Bdd, NodeId, RowSet};

#[derive(Parser, Debug)]
#[command(name = "bddk", version, about = "Count and enumerate the weight-k models of a BDD")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the number of models.
    Count {
        file: PathBuf,
        /// Also print N_0 .. N_n.
        #[arg(long)]
        per_cardinality: bool,
    },
    /// List the models with exactly k ones.
    Enumerate {
        file: PathBuf,
        #[arg(short)]
        k: usize,
        #[arg(long, default_value_t = 3, value_parser = clap::value_parser!(u8).range(1..=3))]
        method: u8,
        #[arg(long, value_enum, default_value_t = Format::Rows)]
        format: Format,
    },
    /// Cross-check every route against brute force.
    Check {
        file: PathBuf,
        /// Highest weight to enumerate (default: n).
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, default_value_t = oracle::DEFAULT_LIMIT)]
        limit: usize,
        /// Expected total model count.
        #[arg(long)]
        expect_models: Option<String>,
        /// Expected `N_0 .. N_n`, space separated.
        #[arg(long)]
        expect_poly: Option<String>,
    },
    /// Show nodes and their cardinality sets.
    Stats {
        file: PathBuf,
        #[arg(short)]
        k: Option<usize>,
    },
    /// Convert a DIMACS CNF into the BDD file format.
    FromCnf {
        file: PathBuf,
        #[arg(short)]
        output: PathBuf,
    },
    /// Write a reproducible random BDD.
    GenRandom {
        #[arg(short)]
        n: usize,
        #[arg(long)]
        nodes: usize,
        #[arg(long)]
        seed: u64,
        #[arg(short)]
        output: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Rows,
    Bits,
}

fn load(path: &Path) -> Result<Bdd> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text.parse()
        .with_context(|| format!("parsing {}", path.display()))
}

fn count(out: &mut impl Write, bdd: &Bdd, per_cardinality: bool) -> Result<()> {
    writeln!(out, "models={}", count_models(bdd))?;
    if per_cardinality {
        writeln!(out, "{}", gen_poly(bdd))?;
    }
    Ok(())
}

fn write_bits(out: &mut impl Write, k: usize, models: &[Vec<bool>]) -> Result<()> {
    writeln!(out, "k={k} models={}", models.len())?;
    for u in models {
        writeln!(out, "{}", bits_to_string(u))?;
    }
    Ok(())
}

fn enumerate(out: &mut impl Write, bdd: &Bdd, k: usize, method: u8, format: Format) -> Result<()> {
    if k > bdd.nvars() {
        bail!("k = {k} out of range [0, {}]", bdd.nvars());
    }
    let rows: RowSet = match method {
        1 => method1_sieve(bdd, k)?,
        3 => method3_enumerate(bdd, k)?,
        _ => {
            if format == Format::Rows {
                bail!("method 2 lists models one by one; use --format bits");
            }
            let models: Vec<Vec<bool>> = method2_enumerate(bdd, k)?.collect();
            return write_bits(out, k, &models);
        }
    };
    match format {
        Format::Rows => out.write_all(rows.render(k).as_bytes())?,
        Format::Bits => write_bits(out, k, &rows.expand())?,
    }
    Ok(())
}

fn parse_poly(text: &str) -> Result<GenPoly> {
    let coeffs = text
        .split_whitespace()
        .map(|t| t.parse::<bddk::BigUint>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .context("bad --expect-poly")?;
    Ok(GenPoly::from_coeffs(coeffs))
}

fn check(
    out: &mut impl Write,
    bdd: &Bdd,
    kmax: Option<usize>,
    limit: usize,
    expect: Expectations,
) -> Result<bool> {
    let results = run_checks(bdd, kmax.unwrap_or(bdd.nvars()), limit, &expect)?;
    let mut failed = 0;
    for r in &results {
        writeln!(out, "{r}")?;
        if !r.passed() {
            failed += 1;
        }
    }
    writeln!(out, "{} checks, {failed} failed", results.len())?;
    Ok(failed == 0)
}

fn stats(out: &mut impl Write, bdd: &Bdd, k: Option<usize>) -> Result<()> {
    writeln!(out, "n={} s={} root={}", bdd.nvars(), bdd.len(), bdd.name(bdd.root()))?;
    let schedule = Schedule::new(bdd, k.unwrap_or(0))?;
    writeln!(out, "card1(root)={}", schedule.root_card1)?;
    if let Some(k) = k {
        writeln!(out, "k={k} models={}", gen_poly(bdd).coeff(k))?;
    }
    for id in bdd.shelling_from_below() {
        let node = bdd.node(id);
        let i = id.index().unwrap();
        let name = bdd.name(id);
        write!(
            out,
            "{name} var={} lo={} hi={} card1({name})={}",
            node.var,
            bdd.name(node.lo),
            bdd.name(node.hi),
            schedule.card1[i]
        )?;
        if k.is_some() {
            write!(out, " card2({name})={}", schedule.card2[i])?;
        }
        writeln!(out)?;
    }
    Ok(())
}

fn write_file(path: &Path, bdd: &Bdd) -> Result<()> {
    fs::write(path, bdd.to_string()).with_context(|| format!("writing {}", path.display()))
}

fn run(cli: Cli) -> Result<bool> {
    let stdout = io::stdout();
    let mut out = BufWriter::new(stdout.lock());
    let ok = match cli.command {
        Command::Count { file, per_cardinality } => {
            count(&mut out, &load(&file)?, per_cardinality)?;
            true
        }
        Command::Enumerate { file, k, method, format } => {
            enumerate(&mut out, &load(&file)?, k, method, format)?;
            true
        }
        Command::Check { file, kmax, limit, expect_models, expect_poly } => {
            let expect = Expectations {
                models: expect_models
                    .map(|m| m.parse().context("bad --expect-models"))
                    .transpose()?,
                per_weight: expect_poly.as_deref().map(parse_poly).transpose()?,
            };
            check(&mut out, &load(&file)?, kmax, limit, expect)?
        }
        Command::Stats { file, k } => {
            stats(&mut out, &load(&file)?, k)?;
            true
        }
        Command::FromCnf { file, output } => {
            let text = fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let formula = cnf::parse_dimacs(&text)
                .with_context(|| format!("parsing {}", file.display()))?;
            let bdd = cnf::cnf_to_bdd(&formula)?;
            write_file(&output, &bdd)?;
            eprintln!("wrote {} ({} nodes)", output.display(), bdd.len());
            true
        }
        Command::GenRandom { n, nodes, seed, output } => {
            if n == 0 {
                bail!("-n must be at least 1");
            }
            let bdd = oracle::random_bdd(n, nodes, seed);
            write_file(&output, &bdd)?;
            if bdd.root() == NodeId::Bot {
                eprintln!("note: generated the constant-false function");
            }
            true
        }
    };
    out.flush()?;
    Ok(ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
