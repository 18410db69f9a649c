use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use kequal::verify::{DEFAULT_MAX_CELLS, THEOREM1_CSV_HEADER, WORKERS_ENV};
use kequal::{
    betti_vector, build_tree, bw_betti, check_tree, complex_from_file, complex_to_json,
    cross_polytope, cube_boundary, detect_k_dependence, dual_tree, dual_tree_inverse,
    equinumerous_quantities, homology, hypercube, pile_chi_identity, pile_of_cubes,
    random_generic_comb, resolution_added_cell_dim, sweep, tree_size_closed_form,
    verify_comb_theorem, verify_theorem1, ChainComplex, CombConfig, CrossFace, CubeFace, TreeOrder,
    VerifyOptions,
};
use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};

/// Exact verification of spanning-tree and Betti-number identities for
/// cubes, cross-polytopes and piles of cubes.
///
/// Exit status: 0 success, 1 an identity or check failed, 2 invalid input.
#[derive(Parser)]
#[command(name = "kequal", version)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Build a complex and print it in the JSON complex format.
    Build {
        #[command(subcommand)]
        shape: Shape,
        /// Keep only cells up to this dimension.
        #[arg(long, global = true)]
        skeleton: Option<usize>,
    },
    /// Integer homology of a complex file.
    Homology {
        #[arg(long)]
        complex: PathBuf,
        /// A single degree; all degrees when omitted.
        #[arg(long)]
        dim: Option<usize>,
        /// Unreduced homology (reduced is the default).
        #[arg(long)]
        unreduced: bool,
    },
    /// Spanning trees: build, certify, dualize.
    #[command(subcommand)]
    Tree(TreeCommand),
    /// Closed forms and identities.
    #[command(subcommand)]
    Formula(FormulaCommand),
    /// Comb arrangements.
    #[command(subcommand)]
    Comb(CombCommand),
    /// End-to-end identity checks.
    #[command(subcommand)]
    Verify(VerifyCommand),
}

#[derive(Subcommand)]
enum Shape {
    /// The solid n-cube.
    Cube {
        #[arg(long)]
        n: usize,
    },
    /// The boundary sphere of the n-cube.
    CubeBoundary {
        #[arg(long)]
        n: usize,
    },
    /// The boundary of the n-dimensional cross-polytope.
    Cross {
        #[arg(long)]
        n: usize,
    },
    /// A pile of cubes, e.g. `--sizes 2,3,1`.
    Pile {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
    },
}

#[derive(Args)]
struct FacetInput {
    /// Comma-separated cell ids or labels.
    #[arg(
        long,
        value_delimiter = ',',
        conflicts_with = "tree",
        allow_hyphen_values = true
    )]
    facets: Option<Vec<String>>,
    /// JSON file holding an array of cell ids or labels.
    #[arg(long)]
    tree: Option<PathBuf>,
}

#[derive(Subcommand)]
enum TreeCommand {
    /// Greedy spanning tree of the top dimension; prints its labels.
    Build {
        #[arg(long)]
        complex: PathBuf,
        /// Offer facets in a seeded random order instead of label order.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Certify a facet set against every condition of the definition.
    Check {
        #[arg(long)]
        complex: PathBuf,
        #[command(flatten)]
        input: FacetInput,
    },
    /// Complement-dual tree across the cube boundary and cross-polytope.
    Dual {
        #[arg(long)]
        n: usize,
        /// Dimension of the input tree.
        #[arg(long)]
        dim: usize,
        /// Input faces are cross-polytope faces (`-0+`); cube faces (`0*1`)
        /// otherwise.
        #[arg(long)]
        inverse: bool,
        #[command(flatten)]
        input: FacetInput,
    },
}

#[derive(Subcommand)]
enum FormulaCommand {
    /// Betti number of the no-k-equal space (3 <= k <= n).
    Bw {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Closed-form tree size of the cube's k-skeleton.
    TreeSize {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// The four equinumerous tree quantities, computed on complexes.
    Equinumerous {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Euler characteristic identity for a pile of cubes.
    PileChi {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<usize>,
        #[arg(long)]
        k: usize,
    },
    /// Dimension of cells added by the simplicial resolution.
    Resolution {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
}

#[derive(Args)]
struct CombInput {
    /// Offsets: axes separated by `;`, rationals by `,`.
    #[arg(
        long,
        conflicts_with = "sizes",
        required_unless_present = "sizes",
        allow_hyphen_values = true
    )]
    sets: Option<String>,
    /// Draw a generic configuration with these set sizes instead.
    #[arg(long, value_delimiter = ',')]
    sizes: Option<Vec<usize>>,
    /// Seed for `--sizes`.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    k: usize,
}

#[derive(Subcommand)]
enum CombCommand {
    /// Look for a k-dependence; exits 1 when one exists.
    Check(CombInput),
    /// Compute the comb Betti number three ways.
    Verify(CombInput),
}

#[derive(Args)]
struct Caps {
    /// Skip (n, k) whose complexes exceed this many cells.
    #[arg(long, default_value_t = DEFAULT_MAX_CELLS)]
    max_cells: usize,
    /// Wall-clock budget per (n, k), in seconds.
    #[arg(long, default_value_t = 600)]
    max_seconds: u64,
    /// Record elapsed time (makes output vary between runs).
    #[arg(long)]
    timings: bool,
}

impl Caps {
    fn options(&self) -> VerifyOptions {
        VerifyOptions {
            max_cells: self.max_cells,
            max_time: Duration::from_secs(self.max_seconds),
            timings: self.timings,
        }
    }
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// All five quantities for one (n, k).
    Theorem1 {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        caps: Caps,
    },
    /// Every 3 <= k <= n <= n_max, ordered by (n, k).
    Sweep {
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 3)]
        k_min: usize,
        /// Parallel workers; defaults to the available cores.
        #[arg(long, env = WORKERS_ENV)]
        workers: Option<usize>,
        #[command(flatten)]
        caps: Caps,
    },
}

enum Failure {
    Invalid(String),
    /// Output was produced but a check did not hold.
    Verification,
}

impl From<kequal::Error> for Failure {
    fn from(e: kequal::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

struct Output<'a> {
    format: Format,
    path: Option<&'a Path>,
}

impl Output<'_> {
    fn emit<T: Serialize>(&self, value: &T) -> Outcome {
        let value = serde_json::to_value(value).map_err(|e| Failure::Invalid(e.to_string()))?;
        let text = match self.format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
                s.push('\n');
                s
            }
            Format::Csv => to_csv(&value)?,
        };
        self.write(&text)
    }

    fn write(&self, text: &str) -> Outcome {
        match self.path {
            Some(p) => {
                fs::write(p, text).map_err(|e| Failure::Invalid(format!("{}: {e}", p.display())))
            }
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

/// Objects become rows keyed by field; anything nested is written as
/// compact JSON in its cell.
fn to_csv(value: &Value) -> Result<String, Failure> {
    let rows: Vec<&Value> = match value {
        Value::Array(items) => items.iter().collect(),
        other => vec![other],
    };
    let header: Vec<String> = match rows.first() {
        Some(Value::Object(m)) => m.keys().cloned().collect(),
        _ => vec!["value".into()],
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| Failure::Invalid(e.to_string());
    w.write_record(&header).map_err(io)?;
    for row in rows {
        let record: Vec<String> = match row {
            Value::Object(m) => header
                .iter()
                .map(|h| m.get(h).map(cell_text).unwrap_or_default())
                .collect(),
            other => vec![cell_text(other)],
        };
        w.write_record(&record).map_err(io)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Failure::Invalid(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

fn verdict(ok: bool) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn read_facets(input: &FacetInput) -> Result<Vec<String>, Failure> {
    match (&input.facets, &input.tree) {
        (Some(f), _) => Ok(f.clone()),
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
            serde_json::from_str(&text).map_err(|e| {
                Failure::Invalid(format!(
                    "{}: expected a JSON array of strings: {e}",
                    path.display()
                ))
            })
        }
        (None, None) => Err(Failure::Invalid("give --facets or --tree".into())),
    }
}

fn parse_faces<F: std::str::FromStr<Err = kequal::Error>>(
    labels: &[String],
) -> Result<Vec<F>, Failure> {
    labels
        .iter()
        .map(|s| s.parse().map_err(Failure::from))
        .collect()
}

fn labels_of(c: &ChainComplex, ids: &[String]) -> Vec<String> {
    ids.iter()
        .map(|id| {
            c.find(id)
                .map_or_else(|| id.clone(), |(d, p)| c.cell(d, p).label.clone())
        })
        .collect()
}

fn comb_config(input: &CombInput) -> Result<CombConfig, Failure> {
    match (&input.sets, &input.sizes) {
        (Some(sets), _) => Ok(CombConfig::parse(sets, input.k)?),
        (None, Some(sizes)) => Ok(random_generic_comb(sizes, input.k, input.seed)?),
        (None, None) => Err(Failure::Invalid("give --sets or --sizes".into())),
    }
}

fn run(cli: &Cli) -> Outcome {
    let out = Output {
        format: cli.format,
        path: cli.out.as_deref(),
    };
    match &cli.command {
        Command::Build { shape, skeleton } => {
            let mut c = match shape {
                Shape::Cube { n } => hypercube(*n)?,
                Shape::CubeBoundary { n } => cube_boundary(*n)?,
                Shape::Cross { n } => cross_polytope(*n)?,
                Shape::Pile { sizes } => pile_of_cubes(sizes)?,
            };
            if let Some(k) = skeleton {
                c = c.skeleton(*k)?;
            }
            let text = complex_to_json(&c);
            match out.format {
                Format::Json => out.write(&text),
                Format::Csv => {
                    let v: Value = serde_json::from_str(&text).expect("complex JSON parses");
                    out.write(&to_csv(&v["cells"])?)
                }
            }
        }
        Command::Homology {
            complex,
            dim,
            unreduced,
        } => {
            let c = complex_from_file(complex)?;
            match dim {
                Some(i) => out.emit(&homology(&c, *i, !unreduced)?),
                None => out.emit(&betti_vector(&c, !unreduced)),
            }
        }
        Command::Tree(cmd) => run_tree(cmd, &out),
        Command::Formula(cmd) => run_formula(cmd, &out),
        Command::Comb(cmd) => run_comb(cmd, &out),
        Command::Verify(cmd) => run_verify(cmd, &out),
    }
}

fn run_tree(cmd: &TreeCommand, out: &Output) -> Outcome {
    match cmd {
        TreeCommand::Build { complex, seed } => {
            let c = complex_from_file(complex)?;
            let order = seed.map_or(TreeOrder::Lexicographic, TreeOrder::Random);
            out.emit(&labels_of(&c, &build_tree(&c, order)?))
        }
        TreeCommand::Check { complex, input } => {
            let c = complex_from_file(complex)?;
            let cert = check_tree(&c, &read_facets(input)?)?;
            out.emit(&cert)?;
            verdict(cert.valid)
        }
        TreeCommand::Dual {
            n,
            dim,
            inverse,
            input,
        } => {
            let labels = read_facets(input)?;
            let (faces, certificate) = if *inverse {
                let d = dual_tree_inverse(*n, *dim, &parse_faces::<CrossFace>(&labels)?)?;
                (
                    d.faces.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    d.certificate,
                )
            } else {
                let d = dual_tree(*n, *dim, &parse_faces::<CubeFace>(&labels)?)?;
                (
                    d.faces.iter().map(ToString::to_string).collect(),
                    d.certificate,
                )
            };
            let valid = certificate.valid;
            out.emit(&json!({ "faces": faces, "certificate": certificate }))?;
            verdict(valid)
        }
    }
}

fn run_formula(cmd: &FormulaCommand, out: &Output) -> Outcome {
    match cmd {
        FormulaCommand::Bw { n, k } => {
            let v = bw_betti(*n, *k)?;
            out.emit(&json!({ "n": n, "k": k, "bw_betti": number(&v) }))
        }
        FormulaCommand::TreeSize { n, k } => {
            let v = tree_size_closed_form(*n, *k)?;
            out.emit(&json!({ "n": n, "k": k, "tree_size": number(&v) }))
        }
        FormulaCommand::Equinumerous { n, k } => {
            let r = equinumerous_quantities(*n, *k)?;
            out.emit(&r)?;
            verdict(r.all_equal && r.cube_relation_holds)
        }
        FormulaCommand::PileChi { sizes, k } => {
            let r = pile_chi_identity(sizes, *k)?;
            out.emit(&r)?;
            verdict(r.holds)
        }
        FormulaCommand::Resolution { n, k, l } => out.emit(&resolution_added_cell_dim(*n, *k, *l)?),
    }
}

/// JSON number when it fits exactly, decimal string otherwise.
fn number(v: &BigUint) -> Value {
    match u64::try_from(v) {
        Ok(x) if x <= 1 << 53 => json!(x),
        _ => json!(v.to_string()),
    }
}

fn run_comb(cmd: &CombCommand, out: &Output) -> Outcome {
    match cmd {
        CombCommand::Check(input) => {
            let cfg = comb_config(input)?;
            let witness = detect_k_dependence(&cfg);
            let generic = witness.is_none();
            out.emit(&json!({
                "sets": cfg.to_string(),
                "k": cfg.k(),
                "generic": generic,
                "witness": witness,
            }))?;
            verdict(generic)
        }
        CombCommand::Verify(input) => {
            let cfg = comb_config(input)?;
            match verify_comb_theorem(&cfg) {
                Ok(r) => {
                    out.emit(&r)?;
                    verdict(r.is_consistent())
                }
                Err(kequal::Error::Dependent(w)) => {
                    let witness = serde_json::to_string(&*w).expect("witness serializes");
                    Err(Failure::Invalid(format!(
                        "configuration is {}-dependent, witness {witness}",
                        w.pairs.len()
                    )))
                }
                Err(e) => Err(e.into()),
            }
        }
    }
}

fn run_verify(cmd: &VerifyCommand, out: &Output) -> Outcome {
    match cmd {
        VerifyCommand::Theorem1 { n, k, caps } => {
            let r = verify_theorem1(*n, *k, &caps.options())?;
            out.emit(&r)?;
            verdict(r.all_equal)
        }
        VerifyCommand::Sweep {
            n_max,
            k_min,
            workers,
            caps,
        } => {
            let workers = workers.unwrap_or_else(kequal::verify::default_workers);
            let reports = sweep(*n_max, *k_min, &caps.options(), workers)?;
            if out.format == Format::Csv && reports.is_empty() {
                out.write(&format!("{THEOREM1_CSV_HEADER}\n"))?;
            } else {
                out.emit(&reports)?;
            }
            verdict(reports.iter().all(|r| r.all_equal))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Invalid(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
