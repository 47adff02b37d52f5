//! Command dispatch for the `symkit` binary.
//!
//! Exit codes: 0 for success (and all-confirmed verifications), 1 when any
//! verification verdict is violated, 2 for usage or I/O errors.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use symkit::aut::{automorphism_generators, canonical_form, canonical_graph};
use symkit::fixing::{fixing_number_capped, DEFAULT_SOLVE_CAP};
use symkit::graph::Graph;
use symkit::io::{emit, emit_graph6_string, parse, GraphFormat};
use symkit::perm::group_order;
use symkit::products::{composition_capped, corona_capped, corona_iter_capped, ProductGraph};
use symkit::theorems::{scan, ScanConfig, ScanSummary, TheoremId, VerifyLimits};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser)]
#[command(
    name = "symkit",
    version,
    about = "Graph symmetry toolkit: fixing numbers, automorphisms, products, and theorem verification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Graph6,
    Edgelist,
}

impl From<FormatArg> for GraphFormat {
    fn from(f: FormatArg) -> GraphFormat {
        match f {
            FormatArg::Graph6 => GraphFormat::Graph6,
            FormatArg::Edgelist => GraphFormat::EdgeList,
        }
    }
}

#[derive(Args)]
struct InputArgs {
    /// Input file, or '-' for stdin.
    #[arg(default_value = "-")]
    input: String,
    /// Input format.
    #[arg(long, value_enum, default_value = "graph6")]
    format: FormatArg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ProductOp {
    Composition,
    Corona,
    CoronaIter,
}

#[derive(Subcommand)]
enum Command {
    /// Exact fixing number with a minimum witness.
    Fix {
        #[command(flatten)]
        input: InputArgs,
        /// Largest order the exact solver accepts.
        #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
        cap: usize,
        #[arg(long)]
        json: bool,
    },
    /// Automorphism group: generators, group order, orbits.
    Aut {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Orbit partition of the automorphism group.
    Orbits {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Canonical form: isomorphism-invariant bytes and the canonical labeling.
    Canon {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long)]
        json: bool,
    },
    /// Convert between the supported graph formats.
    Convert {
        #[command(flatten)]
        input: InputArgs,
        /// Output format.
        #[arg(long, value_enum)]
        to: FormatArg,
        /// Output file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Construct a composition or corona product of two graphs.
    Product {
        /// Product operation.
        #[arg(long, value_enum)]
        op: ProductOp,
        /// Iteration level for corona-iter.
        #[arg(long, default_value_t = 2)]
        k: usize,
        /// Input format for both factors.
        #[arg(long, value_enum, default_value = "graph6")]
        format: FormatArg,
        #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
        cap: usize,
        /// Output file for the product (graph6); a `.coord.json` sidecar is
        /// written next to it. Stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// First factor (file or '-').
        g1: String,
        /// Second factor (file or '-').
        g2: String,
    },
    /// Scan theorem checks over small-graph corpora.
    Verify(VerifyArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Theorem id, or 'all'.
    #[arg(long)]
    theorem: String,
    /// Largest order for the left factor corpus.
    #[arg(long)]
    g1_max: Option<usize>,
    /// Largest order for the right factor corpus.
    #[arg(long)]
    g2_max: Option<usize>,
    /// Iteration level for corona-iter.
    #[arg(long)]
    k: Option<usize>,
    /// Largest product order the exact solver attempts; bigger instances
    /// report skipped_cap.
    #[arg(long, default_value_t = DEFAULT_SOLVE_CAP)]
    cap: usize,
    /// Worker threads for the scan.
    #[arg(long, default_value_t = 1)]
    jobs: usize,
    /// Deterministic subsample of the corpus.
    #[arg(long)]
    sample: Option<usize>,
    /// Seed for subsampling.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit JSON Lines instead of the table.
    #[arg(long)]
    json: bool,
    /// Write the report stream to a file; stdout when omitted.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

fn read_bytes(path: &str) -> Result<Vec<u8>> {
    if path == "-" {
        let mut buf = Vec::new();
        std::io::stdin()
            .read_to_end(&mut buf)
            .context("reading stdin")?;
        Ok(buf)
    } else {
        fs::read(path).with_context(|| format!("reading {path}"))
    }
}

fn read_graph(path: &str, format: FormatArg) -> Result<Graph> {
    let bytes = read_bytes(path)?;
    parse(format.into(), &bytes).with_context(|| format!("parsing {path}"))
}

fn write_out(output: Option<&Path>, content: &str) -> Result<()> {
    match output {
        Some(path) => {
            fs::write(path, content).with_context(|| format!("writing {}", path.display()))
        }
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn graph6_or_placeholder(g: &Graph) -> String {
    emit_graph6_string(g).unwrap_or_else(|_| format!("(order {}, too large for graph6)", g.order()))
}

fn run_fix(g: &Graph, cap: usize, json: bool) -> Result<()> {
    let result = fixing_number_capped(g, cap)?;
    if json {
        println!(
            "{}",
            serde_json::json!({
                "n": g.order(),
                "edges": g.size(),
                "fix": result.fix_number,
                "witness": result.witness,
                "optimal": result.optimal,
            })
        );
    } else {
        println!("n={} edges={}", g.order(), g.size());
        println!("fix={}", result.fix_number);
        println!("witness={:?}", result.witness);
        println!("optimal={}", result.optimal);
    }
    Ok(())
}

fn run_aut(g: &Graph, json: bool) -> Result<()> {
    let aut = automorphism_generators(g, &[]);
    let order = group_order(&aut.generators);
    if json {
        println!(
            "{}",
            serde_json::json!({
                "n": g.order(),
                "generators": aut.generators.generators(),
                "group_order": order.to_string(),
                "orbits": aut.orbit_partition.cells(),
                "node_count": aut.node_count,
            })
        );
    } else {
        println!("n={} generators={}", g.order(), aut.generators.len());
        for p in aut.generators.generators() {
            println!("  {:?}", p.images());
        }
        println!("group_order={order}");
        println!("orbits={:?}", aut.orbit_partition.cells());
        println!("node_count={}", aut.node_count);
    }
    Ok(())
}

fn run_orbits(g: &Graph, json: bool) -> Result<()> {
    let aut = automorphism_generators(g, &[]);
    let cells = aut.orbit_partition.cells();
    if json {
        println!(
            "{}",
            serde_json::json!({
                "n": g.order(),
                "orbits": cells,
                "fixed_vertices": aut.orbit_partition.singletons(),
            })
        );
    } else {
        for cell in cells {
            println!("{cell:?}");
        }
        println!("fixed_vertices={:?}", aut.orbit_partition.singletons());
    }
    Ok(())
}

fn run_canon(g: &Graph, json: bool) -> Result<()> {
    let bytes = canonical_form(g);
    let hex: String = bytes.iter().map(|b| format!("{b:02x}")).collect();
    let canon_g6 = graph6_or_placeholder(&canonical_graph(g));
    if json {
        println!(
            "{}",
            serde_json::json!({ "canonical_hex": hex, "canonical_graph6": canon_g6 })
        );
    } else {
        println!("canonical_hex={hex}");
        println!("canonical_graph6={canon_g6}");
    }
    Ok(())
}

fn run_convert(g: &Graph, to: FormatArg, output: Option<&Path>) -> Result<()> {
    let mut bytes = emit(to.into(), g)?;
    if !bytes.ends_with(b"\n") {
        bytes.push(b'\n');
    }
    write_out(
        output,
        std::str::from_utf8(&bytes).expect("codecs emit ascii"),
    )
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("coord.json")
}

fn run_product(
    op: ProductOp,
    k: usize,
    g1: &Graph,
    g2: &Graph,
    cap: usize,
    output: Option<&Path>,
) -> Result<()> {
    let product: ProductGraph = match op {
        ProductOp::Composition => composition_capped(g1, g2, cap)?,
        ProductOp::Corona => corona_capped(g1, g2, cap)?,
        ProductOp::CoronaIter => corona_iter_capped(g1, g2, k, cap)?,
    };
    let g6 = graph6_or_placeholder(&product.graph);
    let sidecar = serde_json::to_string(&product.coord_sidecar()).expect("sidecar serializes");
    match output {
        Some(path) => {
            fs::write(path, format!("{g6}\n"))
                .with_context(|| format!("writing {}", path.display()))?;
            let side = sidecar_path(path);
            fs::write(&side, format!("{sidecar}\n"))
                .with_context(|| format!("writing {}", side.display()))?;
        }
        None => {
            println!("{g6}");
            println!("{sidecar}");
        }
    }
    Ok(())
}

fn run_verify(args: &VerifyArgs) -> Result<i32> {
    let ids: Vec<TheoremId> = if args.theorem == "all" {
        TheoremId::ALL.to_vec()
    } else {
        vec![args.theorem.parse().map_err(anyhow::Error::msg)?]
    };
    let mut stream = String::new();
    let mut total = ScanSummary::default();
    for id in ids {
        let mut config = ScanConfig::new(id);
        if let Some(v) = args.g1_max {
            config.g1_max = v;
        }
        if let Some(v) = args.g2_max {
            config.g2_max = v;
        }
        if let Some(v) = args.k {
            config.k = v;
        }
        config.limits = VerifyLimits {
            solve_cap: args.cap,
        };
        config.jobs = args.jobs;
        config.sample = args.sample;
        config.seed = args.seed;
        let (reports, summary) = scan(&config);
        for report in &reports {
            if args.json {
                stream.push_str(&report.to_json_line());
                stream.push('\n');
            } else {
                let numbers: Vec<String> = report
                    .numbers
                    .iter()
                    .map(|(key, value)| format!("{key}={value}"))
                    .collect();
                stream.push_str(&format!(
                    "theorem={} g1={} g2={} k={} verdict={} {}\n",
                    report.theorem_id,
                    report.instance.g1,
                    report.instance.g2.as_deref().unwrap_or("-"),
                    report
                        .instance
                        .k
                        .map(|v| v.to_string())
                        .unwrap_or_else(|| "-".into()),
                    report.verdict,
                    numbers.join(" "),
                ));
            }
        }
        eprintln!("{id}: {summary}");
        total.total += summary.total;
        total.confirmed += summary.confirmed;
        total.violated += summary.violated;
        total.hypothesis_not_met += summary.hypothesis_not_met;
        total.skipped_cap += summary.skipped_cap;
        total.flagged += summary.flagged;
    }
    write_out(args.output.as_deref(), &stream)?;
    eprintln!("overall: {total}");
    Ok(exit_code_for(&total))
}

/// The exit-code contract: any violated verdict turns the run into exit 1.
pub fn exit_code_for(summary: &ScanSummary) -> i32 {
    if summary.violated > 0 {
        EXIT_VIOLATED
    } else {
        EXIT_OK
    }
}

/// Parses argv and runs one command, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            // clap renders --help/--version as "errors" with exit code 0
            let code = if err.use_stderr() {
                EXIT_USAGE
            } else {
                EXIT_OK
            };
            let _ = err.print();
            return code;
        }
    };
    let outcome: Result<i32> = (|| match cli.command {
        Command::Fix { input, cap, json } => {
            run_fix(&read_graph(&input.input, input.format)?, cap, json)?;
            Ok(EXIT_OK)
        }
        Command::Aut { input, json } => {
            run_aut(&read_graph(&input.input, input.format)?, json)?;
            Ok(EXIT_OK)
        }
        Command::Orbits { input, json } => {
            run_orbits(&read_graph(&input.input, input.format)?, json)?;
            Ok(EXIT_OK)
        }
        Command::Canon { input, json } => {
            run_canon(&read_graph(&input.input, input.format)?, json)?;
            Ok(EXIT_OK)
        }
        Command::Convert { input, to, output } => {
            run_convert(
                &read_graph(&input.input, input.format)?,
                to,
                output.as_deref(),
            )?;
            Ok(EXIT_OK)
        }
        Command::Product {
            op,
            k,
            format,
            cap,
            output,
            g1,
            g2,
        } => {
            let g1 = read_graph(&g1, format)?;
            let g2 = read_graph(&g2, format)?;
            run_product(op, k, &g1, &g2, cap, output.as_deref())?;
            Ok(EXIT_OK)
        }
        Command::Verify(args) => run_verify(&args),
    })();
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            EXIT_USAGE
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_code_contract() {
        let mut summary = ScanSummary::default();
        assert_eq!(exit_code_for(&summary), EXIT_OK);
        summary.hypothesis_not_met = 3;
        summary.skipped_cap = 1;
        assert_eq!(exit_code_for(&summary), EXIT_OK);
        summary.violated = 1;
        assert_eq!(exit_code_for(&summary), EXIT_VIOLATED);
    }

    #[test]
    fn sidecar_path_replaces_extension() {
        assert_eq!(
            sidecar_path(Path::new("out.g6")),
            Path::new("out.coord.json")
        );
        assert_eq!(
            sidecar_path(Path::new("dir/product")),
            Path::new("dir/product.coord.json")
        );
    }
}
