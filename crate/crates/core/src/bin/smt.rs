use std::io::{IsTerminal, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use schubert_smt::cli::{self, Format, RunConfig, EXIT_INVALID};
use schubert_smt::shape::Location;
use schubert_smt::straighten::TermJson;
use schubert_smt::RationalMatrix;

/// Standard monomial theory for Schubert varieties, in exact arithmetic.
#[derive(Parser)]
#[command(name = "smt", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scanning tableau S(T) and scanning paths of a tableau.
    Scan(Inputs),
    /// Key Y(π), and the λ-key Y_λ(π) when a shape is given.
    Key(Inputs),
    /// Whether a tableau is π-Demazure.
    Demtest(Inputs),
    /// Tableaux of a shape, or its π-Demazure tableaux when a chain is given.
    Enum(Inputs),
    /// Rewrites a tabloid or combination in the tableau basis.
    Straighten(Inputs),
    /// Rewrites a tabloid or combination in the π-Demazure basis.
    Reduce(Inputs),
    /// Key polynomial of a shape and chain.
    Keypoly(Inputs),
    /// Bruhat cell of an invertible matrix.
    CellOf(Inputs),
    /// Random point of the cell C(π).
    SampleCell(Inputs),
    /// Point on the degeneration path from C(π) to C(σ_ij π).
    Gamma(Inputs),
    /// Exact rank of π-Demazure monomials at sampled cell points.
    VerifyIndependence(Inputs),
    /// Master determinantal identity at random matrices.
    VerifyMaster(Inputs),
    /// Nonvanishing of the λ-key monomial and vanishing of Z_λ(π).
    VerifyVanishing(Inputs),
}

#[derive(Args)]
struct Inputs {
    /// Output format: json or text.
    #[arg(long, default_value = "text")]
    format: Format,
    /// JSON input file, or - for stdin. Flags override its fields.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    /// Q-set, e.g. 1,2.
    #[arg(long, value_delimiter = ',')]
    q: Option<Vec<usize>>,
    /// Partition parts, e.g. 2,1,0.
    #[arg(long, value_delimiter = ',')]
    shape: Option<Vec<usize>>,
    /// Chain sets separated by semicolons, e.g. "2;2,3".
    #[arg(long)]
    chain: Option<String>,
    /// Tabloid columns as JSON, e.g. [[1,3],[2]].
    #[arg(long)]
    tabloid: Option<String>,
    /// Combination as JSON: [{"tabloid":{"columns":[[1,4],[2,3]]},"coefficient":"1"}].
    #[arg(long)]
    terms: Option<String>,
    /// Matrix as JSON rows of rational strings.
    #[arg(long)]
    matrix: Option<String>,
    /// Region as JSON locations, e.g. [[2,1],[1,2]].
    #[arg(long)]
    region: Option<String>,
    #[arg(long)]
    i: Option<usize>,
    #[arg(long)]
    j: Option<usize>,
    /// Path parameter, a rational in [0, 1/2).
    #[arg(long)]
    t: Option<String>,
    /// Random seed; defaults to the SMT_SEED environment variable.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    samples: Option<usize>,
    /// Print the dimension instead of the polynomial.
    #[arg(long)]
    at_ones: bool,
}

impl Inputs {
    fn has_data(&self) -> bool {
        self.shape.is_some()
            || self.chain.is_some()
            || self.tabloid.is_some()
            || self.terms.is_some()
            || self.matrix.is_some()
    }

    fn to_config(&self) -> Result<RunConfig, String> {
        fn parse_json<T: serde::de::DeserializeOwned>(what: &str, s: &Option<String>) -> Result<Option<T>, String> {
            s.as_deref()
                .map(|s| serde_json::from_str(s).map_err(|e| format!("bad --{what}: {e}")))
                .transpose()
        }
        let chain = self
            .chain
            .as_deref()
            .map(|s| {
                s.split(';')
                    .map(|set| {
                        set.split(',')
                            .filter(|v| !v.trim().is_empty())
                            .map(|v| v.trim().parse::<usize>().map_err(|e| format!("bad --chain: {e}")))
                            .collect::<Result<Vec<_>, _>>()
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .transpose()?;
        let region: Option<Vec<Location>> = parse_json("region", &self.region)?;
        let terms: Option<Vec<TermJson>> = parse_json("terms", &self.terms)?;
        let matrix: Option<RationalMatrix> = parse_json("matrix", &self.matrix)?;
        Ok(RunConfig {
            n: self.n,
            q: self.q.clone(),
            shape: self.shape.clone(),
            columns: parse_json("tabloid", &self.tabloid)?,
            terms,
            chain,
            matrix,
            region: region.map(|r| r.into_iter().map(<[usize; 2]>::from).collect()),
            i: self.i,
            j: self.j,
            t: self.t.clone(),
            seed: self.seed,
            samples: self.samples,
            at_ones: self.at_ones,
            format: self.format,
        })
    }
}

fn read_input(inputs: &Inputs) -> Result<RunConfig, String> {
    let text = match &inputs.input {
        Some(p) if p.as_os_str() == "-" => read_stdin()?,
        Some(p) => std::fs::read_to_string(p).map_err(|e| format!("cannot read {}: {e}", p.display()))?,
        None if !inputs.has_data() && !std::io::stdin().is_terminal() => read_stdin()?,
        None => String::new(),
    };
    if text.trim().is_empty() {
        Ok(RunConfig::default())
    } else {
        RunConfig::from_json(&text)
    }
}

fn read_stdin() -> Result<String, String> {
    let mut s = String::new();
    std::io::stdin()
        .read_to_string(&mut s)
        .map_err(|e| format!("cannot read stdin: {e}"))?;
    Ok(s)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap's own usage errors exit 2, which is reserved for failed verifications
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_INVALID as u8) } else { ExitCode::SUCCESS };
        }
    };
    let (name, inputs) = match &cli.command {
        Command::Scan(a) => ("scan", a),
        Command::Key(a) => ("key", a),
        Command::Demtest(a) => ("demtest", a),
        Command::Enum(a) => ("enum", a),
        Command::Straighten(a) => ("straighten", a),
        Command::Reduce(a) => ("reduce", a),
        Command::Keypoly(a) => ("keypoly", a),
        Command::CellOf(a) => ("cell-of", a),
        Command::SampleCell(a) => ("sample-cell", a),
        Command::Gamma(a) => ("gamma", a),
        Command::VerifyIndependence(a) => ("verify-independence", a),
        Command::VerifyMaster(a) => ("verify-master", a),
        Command::VerifyVanishing(a) => ("verify-vanishing", a),
    };
    let config = match build_config(inputs) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INVALID as u8);
        }
    };
    let outcome = cli::run(name, &config);
    if outcome.code == EXIT_INVALID {
        eprintln!("{}", outcome.output);
    } else {
        println!("{}", outcome.output);
    }
    ExitCode::from(outcome.code as u8)
}

fn build_config(inputs: &Inputs) -> Result<RunConfig, String> {
    let env_seed = match std::env::var("SMT_SEED") {
        Ok(s) => Some(s.trim().parse::<u64>().map_err(|e| format!("bad SMT_SEED: {e}"))?),
        Err(_) => None,
    };
    let base = RunConfig {
        seed: env_seed,
        ..RunConfig::default()
    };
    Ok(base.merged(read_input(inputs)?).merged(inputs.to_config()?))
}
