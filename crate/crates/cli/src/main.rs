use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use perfmat::circulant::{
    lucas_det, matching_poly_identity_check, sequence_monotonicity_check, t_matrix, Sign,
};
use perfmat::classic::embedded;
use perfmat::corpus::{builtin_corpus, load_file, CorpusEntry};
use perfmat::fullerene::{cap, extend_cap, Family};
use perfmat::graph::{make_classic, Classic};
use perfmat::linalg::Matrix;
use perfmat::matching::enumerate_perfect_matchings;
use perfmat::pfaffian::{count_by_pfaffian, count_with_orientation};
use perfmat::report::{run_corpus, to_json, write_csv, Options};
use perfmat::PlanarEmbedding;

#[derive(Parser)]
#[command(name = "perfmat", version, about = "Exact perfect-matching counts and upper bounds")]
struct Cli {
    /// Largest vertex count the enumeration oracle accepts.
    #[arg(long, global = true, default_value_t = 40)]
    max_oracle: usize,
    /// Soundness slack in the log2 domain, scaled by max(1, |bound|).
    #[arg(long, global = true, default_value_t = 1e-9)]
    tolerance: f64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Pfaffian,
    Oracle,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum CapFamily {
    Pentacap,
    Hexacap,
}

impl From<CapFamily> for Family {
    fn from(f: CapFamily) -> Family {
        match f {
            CapFamily::Pentacap => Family::Pentacap,
            CapFamily::Hexacap => Family::Hexacap,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated graph as JSON; planar families carry their embedding.
    Gen {
        #[command(subcommand)]
        family: Gen,
    },
    /// Count perfect matchings of a graph or embedding file.
    Count {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = Method::Both)]
        method: Method,
    },
    /// Evaluate every bound on a file or on the builtin corpus.
    Bounds {
        #[arg(required_unless_present = "corpus", conflicts_with = "corpus")]
        input: Option<PathBuf>,
        #[arg(long)]
        corpus: bool,
    },
    /// Run the circulant determinant and matching-polynomial identities.
    Identities {
        #[arg(value_parser = clap::value_parser!(u64).range(8..))]
        n_max: u64,
    },
}

#[derive(Subcommand)]
enum Gen {
    /// complete N, cycle N, path N, bipartite R, star K, prism N, octahedron, dodecahedron.
    Classic { name: String, size: Option<usize> },
    Pentacap { layers: usize },
    Hexacap { layers: usize },
    /// Leapfrog of a cap fullerene.
    Leapfrog { family: CapFamily, layers: usize },
    /// One extension step applied to a cap fullerene.
    Extend { family: CapFamily, layers: usize },
}

fn classic(name: &str, size: Option<usize>) -> Result<Classic> {
    let sized = |f: fn(usize) -> Classic| -> Result<Classic> {
        size.map(f).with_context(|| format!("{name} needs a size"))
    };
    Ok(match name {
        "complete" => sized(Classic::Complete)?,
        "cycle" => sized(Classic::Cycle)?,
        "path" => sized(Classic::Path)?,
        "bipartite" => sized(Classic::CompleteBipartite)?,
        "star" => sized(Classic::Star)?,
        "prism" => sized(Classic::Prism)?,
        "octahedron" => Classic::Octahedron,
        "dodecahedron" => Classic::Dodecahedron,
        _ => bail!("unknown classic graph {name}"),
    })
}

fn generate(family: &Gen) -> Result<String> {
    let e: PlanarEmbedding = match *family {
        Gen::Classic { ref name, size } => {
            let kind = classic(name, size)?;
            match embedded(kind) {
                Ok(e) => e,
                Err(_) => return Ok(make_classic(kind)?.to_json()),
            }
        }
        Gen::Pentacap { layers } => cap(Family::Pentacap, layers)?.embedding,
        Gen::Hexacap { layers } => cap(Family::Hexacap, layers)?.embedding,
        Gen::Leapfrog { family, layers } => cap(family.into(), layers)?.embedding.leapfrog()?,
        Gen::Extend { family, layers } => {
            let f = cap(family.into(), layers)?;
            extend_cap(&f.embedding, &f.decomposition)?.0
        }
    };
    Ok(e.to_json())
}

fn count(entry: &CorpusEntry, method: Method, max_oracle: usize) -> Result<(String, bool)> {
    let pfaffian = || -> Result<_> {
        match (&entry.embedding, &entry.attested) {
            (Some(e), _) => Ok(count_by_pfaffian(e)?),
            (_, Some(o)) => Ok(count_with_orientation(o)?),
            _ => bail!("{} has no embedding, so no pfaffian count", entry.id),
        }
    };
    let oracle = || enumerate_perfect_matchings(&entry.graph, max_oracle);
    Ok(match method {
        Method::Pfaffian => (format!("{}: pfaffian {}", entry.id, pfaffian()?), true),
        Method::Oracle => (format!("{}: oracle {}", entry.id, oracle()?), true),
        Method::Both => {
            let (p, o) = (pfaffian()?, oracle()?);
            let rel = if p == o { "=" } else { "!=" };
            (format!("{}: pfaffian {p} {rel} oracle {o}", entry.id), p == o)
        }
    })
}

fn identities(n_max: usize, out: &mut dyn Write) -> Result<bool> {
    let mut ok = true;
    let mut line = |out: &mut dyn Write, pass: bool, what: String| -> Result<()> {
        ok &= pass;
        writeln!(out, "{} {what}", if pass { "PASS" } else { "FAIL" })?;
        Ok(())
    };
    for n in 3..=n_max {
        for s in Sign::BOTH {
            let t = t_matrix(n, s)?;
            let direct = Matrix::identity(n).add(&t.matrix().mul(t.matrix()).neg()).determinant();
            let closed = lucas_det(n, s)?;
            line(out, direct == closed, format!("lucas_det n={n} {s:?}: {closed}"))?;
        }
    }
    for n in 3..=n_max.min(16) {
        let c = matching_poly_identity_check(n)?;
        line(out, c.passed(), format!("matching polynomial identities n={n}"))?;
    }
    let m = sequence_monotonicity_check(n_max)?;
    line(out, m.odd_increasing && m.even_decreasing, format!("monotone subsequences up to n={n_max}"))?;
    line(out, m.within_a3_a4, "values lie between a_3 and a_4".into())?;
    line(out, m.max_at_six, "maximum 20^(1/3) attained only at n=6".into())?;
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    let mut out: Box<dyn Write> = match &cli.out {
        Some(p) => Box::new(File::create(p).with_context(|| format!("creating {}", p.display()))?),
        None => Box::new(io::stdout().lock()),
    };
    let opts = Options { max_oracle: cli.max_oracle, tolerance: cli.tolerance };
    let ok = match &cli.command {
        Command::Gen { family } => {
            writeln!(out, "{}", generate(family)?)?;
            true
        }
        Command::Count { input, method } => {
            let entry = load_file(input)?;
            let (text, ok) = count(&entry, *method, cli.max_oracle)?;
            writeln!(out, "{text}")?;
            ok
        }
        Command::Bounds { input, .. } => {
            let entries = match input {
                Some(p) => vec![load_file(p)?],
                None => builtin_corpus()?,
            };
            let mut reports = Vec::new();
            let mut ok = true;
            for (e, r) in entries.iter().zip(run_corpus(&entries, &opts)) {
                match r {
                    Ok(r) => reports.push(r),
                    Err(err) => {
                        ok = false;
                        eprintln!("{}: {err}", e.id);
                    }
                }
            }
            match cli.format {
                Format::Json => writeln!(out, "{}", to_json(&reports)?)?,
                Format::Csv => write_csv(&reports, &mut out)?,
            }
            ok
        }
        Command::Identities { n_max } => identities(*n_max as usize, &mut out)?,
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
