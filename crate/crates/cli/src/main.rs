use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use transjective::laurent::{den_injectivity_check, explore_exchange_graph, Seed};
use transjective::quiver::{classify_diagram, QuiverFile};
use transjective::verify::{self, Subject, Target, VerifyOptions, DEFAULT_SEED};
use transjective::{Error, ExchangeMatrix, NamedQuiver, Report};

const QUIVERS: &str = "Built-in quivers (--type), vertices numbered from 1:
  A2        1 -> 2
  A3        1 -> 2 -> 3
  A4        1 -> 2 -> 3 -> 4
  D4        1 -> 2, 3 -> 2, 4 -> 2   (vertex 2 is the branch point)
  Atilde21  1 -> 2 -> 3 and 1 -> 3

Quiver files (--quiver) are JSON with 1-based vertices:
  {\"vertices\": 3, \"arrows\": [[1, 2], [2, 3]]}

Exit status: 0 when every check passes, 1 when a check fails (the report
carries a witness), 2 on usage or parse errors.";

#[derive(Parser)]
#[command(name = "transjective", version, about = "Cluster algebra and cluster category verification", after_help = QUIVERS)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Mutate the initial seed along a sequence of 1-based directions.
    Mutate {
        #[command(flatten)]
        input: Input,
        /// Directions, e.g. `1 2 1` or `1,2,1`.
        sequence: Vec<String>,
    },
    /// Breadth-first search of the exchange graph.
    Explore {
        #[command(flatten)]
        input: Input,
        /// Depth bound; required for affine and wild quivers.
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Denominator vectors of all cluster variables in the initial cluster.
    Denominators {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Run a verification sweep.
    Verify {
        #[arg(value_enum)]
        target: TargetArg,
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        depth: Option<usize>,
        /// Seed for randomized sweeps.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        /// Number of random sequences for randomized sweeps.
        #[arg(long)]
        count: Option<usize>,
    },
}

#[derive(Args)]
struct Input {
    /// Built-in quiver: A2, A3, A4, D4 or Atilde21.
    #[arg(long = "type", value_name = "TYPE", conflicts_with = "quiver")]
    ty: Option<String>,
    /// JSON quiver file.
    #[arg(long, value_name = "FILE")]
    quiver: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Theorem1,
    Corollary4,
    Corollary5,
    Counterexample,
    Prop8,
    Lemma67,
    Denomhom,
    Oracles,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Theorem1 => Target::Theorem1,
            TargetArg::Corollary4 => Target::Corollary4,
            TargetArg::Corollary5 => Target::Corollary5,
            TargetArg::Counterexample => Target::Counterexample,
            TargetArg::Prop8 => Target::Prop8,
            TargetArg::Lemma67 => Target::Lemma67,
            TargetArg::Denomhom => Target::Denomhom,
            TargetArg::Oracles => Target::Oracles,
        }
    }
}

impl Input {
    fn subject(&self) -> Result<Option<Subject>, Error> {
        if let Some(ty) = &self.ty {
            let q = NamedQuiver::parse(ty)
                .ok_or_else(|| Error::Parse(format!("unknown quiver type '{ty}'")))?;
            return Ok(Some(q.into()));
        }
        if let Some(path) = &self.quiver {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
            let file = QuiverFile::parse(&text)?;
            if !file.relations.is_empty() {
                return Err(Error::Parse(
                    "relations are not supported by this command".into(),
                ));
            }
            return Ok(Some(Subject {
                label: path.display().to_string(),
                quiver: file.quiver()?,
            }));
        }
        Ok(None)
    }

    fn required_subject(&self) -> Result<Subject, Error> {
        self.subject()?
            .ok_or_else(|| Error::Parse("one of --type or --quiver is required".into()))
    }
}

fn parse_sequence(raw: &[String], n: usize) -> Result<Vec<usize>, Error> {
    raw.iter()
        .flat_map(|s| s.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|s| !s.is_empty())
        .map(|s| {
            let k: usize = s
                .parse()
                .map_err(|_| Error::Parse(format!("'{s}' is not a mutation index")))?;
            if k == 0 || k > n {
                Err(Error::Parse(format!("mutation index {k} outside 1..={n}")))
            } else {
                Ok(k - 1)
            }
        })
        .collect()
}

fn mutate(input: &Input, raw: &[String]) -> Result<Report, Error> {
    let s = input.required_subject()?;
    let b = ExchangeMatrix::from_quiver(&s.quiver);
    let seq = parse_sequence(raw, b.n())?;
    let seed = Seed::initial(b).mutate_sequence(&seq)?;
    let mut r = Report::new("mutate").param("type", &s.label).param(
        "sequence",
        seq.iter()
            .map(|k| (k + 1).to_string())
            .collect::<Vec<_>>()
            .join(" "),
    );
    let cluster: Vec<String> = seed.cluster().iter().map(|x| x.render()).collect();
    r.count("steps", seq.len());
    r.set_details(&json!({
        "matrix": seed.matrix().rows(),
        "cluster": cluster,
    }))?;
    Ok(r)
}

fn explore(input: &Input, depth: Option<usize>, denominators: bool) -> Result<Report, Error> {
    let s = input.required_subject()?;
    let b = ExchangeMatrix::from_quiver(&s.quiver);
    let ex = explore_exchange_graph(&b, depth)?;
    let name = if denominators {
        "denominators"
    } else {
        "explore"
    };
    let mut r = Report::new(name).param("type", &s.label);
    if let Some(d) = depth {
        r = r.param("depth", d);
    }
    if s.quiver.is_acyclic() {
        r.note(format!("diagram {}", classify_diagram(&s.quiver)?));
    }
    r.truncated = ex.truncated;
    r.count("seeds", ex.seeds.len());
    r.count("clusters", ex.clusters.len());
    r.count("cluster_variables", ex.variables.len());
    if denominators {
        let vars: Vec<_> = ex.variables.values().cloned().collect();
        if let Some((a, b)) = den_injectivity_check(&vars)? {
            r.fail(format!("{a} and {b} share a denominator vector"));
        }
        let rows = vars
            .iter()
            .map(|x| Ok(json!({"variable": x.render(), "denominator": x.denominator_vector()?.0})))
            .collect::<Result<Vec<_>, Error>>()?;
        r.set_details(&rows)?;
    } else {
        r.set_details(&json!({
            "variables_by_depth": ex.variables_by_depth,
            "variables": ex.variables.keys().collect::<Vec<_>>(),
        }))?;
    }
    Ok(r)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let (format, result) = match &cli.command {
        Command::Mutate { input, sequence } => (input.format, mutate(input, sequence)),
        Command::Explore { input, depth } => (input.format, explore(input, *depth, false)),
        Command::Denominators { input, depth } => (input.format, explore(input, *depth, true)),
        Command::Verify {
            target,
            input,
            depth,
            seed,
            count,
        } => {
            let opts = input.subject().map(|subject| VerifyOptions {
                subject,
                depth: *depth,
                seed: *seed,
                count: *count,
            });
            (
                input.format,
                opts.and_then(|o| verify::run((*target).into(), &o)),
            )
        }
    };
    match result {
        Ok(mut report) => {
            if report.elapsed_micros == 0 {
                report.elapsed_micros = start.elapsed().as_micros() as u64;
            }
            match format {
                Format::Json => println!("{}", report.to_json()),
                Format::Tsv => print!("{}", report.to_tsv()),
            }
            if report.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
