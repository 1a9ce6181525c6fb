//! `zigzag` — encode, decode, repair, verify, and explore array codes
//! with low-fragmentation single-node repair.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use zigzag_cli::error::CliError;
use zigzag_cli::report;
use zigzag_cli::specfile::{parse_family_token, FieldFile, LoadedSpec, SpecFile};
use zigzag_cli::stripe::{self, RepairKind};
use zigzag_core::gf2w::FieldSpec;
use zigzag_core::repair::RecoveryCase;
use zigzag_core::search::{search_orderings, SearchMode};
use zigzag_core::verify::mds_check;

/// Array-code toolbox: systematic MDS codes whose single-node repairs read
/// half of each helper column in a handful of contiguous runs.
#[derive(Parser)]
#[command(name = "zigzag", version, about, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

/// Where a command gets its code spec from: a JSON file, or a catalog
/// family named on the command line.
#[derive(Args)]
struct SpecSource {
    /// Path to a JSON spec file (family or fully explicit form).
    #[arg(long, value_name = "PATH")]
    spec: Option<PathBuf>,

    /// Catalog family: A1, A2, A3, B1, or B2. Accepts the token form
    /// FAMILY[:s[:drop]] as well.
    #[arg(long, value_name = "NAME", conflicts_with = "spec")]
    family: Option<String>,

    /// Repetition count for family constructions.
    #[arg(long, value_name = "INT", requires = "family")]
    s: Option<usize>,

    /// Trailing systematic columns to drop from the family code.
    #[arg(long, value_name = "INT", requires = "family")]
    drop: Option<usize>,

    /// Field override: use GF(2^w) instead of the family default.
    #[arg(long, value_name = "INT", requires = "family")]
    field_w: Option<u32>,

    /// Modulus for --field-w, hex-encoded with its top bit
    /// (defaults to the smallest irreducible polynomial of that degree).
    #[arg(long, value_name = "HEX", requires = "field_w")]
    modulus: Option<String>,
}

impl SpecSource {
    fn load(&self) -> Result<LoadedSpec, CliError> {
        match (&self.spec, &self.family) {
            (Some(path), None) => {
                let json =
                    fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
                SpecFile::from_json(&json)?.resolve()
            }
            (None, Some(token)) => {
                let mut file = parse_family_token(token)?;
                if let Some(s) = self.s {
                    file.s = s;
                }
                if let Some(drop) = self.drop {
                    file.drop = drop;
                }
                if let Some(w) = self.field_w {
                    let modulus_hex = match &self.modulus {
                        Some(hex) => hex.clone(),
                        None => format!(
                            "{:#x}",
                            FieldSpec::default_modulus(w).map_err(CliError::usage)?
                        ),
                    };
                    file.field = Some(FieldFile { w, modulus_hex });
                }
                SpecFile::Family(file).resolve()
            }
            _ => Err(CliError::usage("give exactly one of --spec or --family")),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Encode a file into per-node shard directories plus a manifest.
    Encode {
        #[command(flatten)]
        source: SpecSource,
        /// File to encode.
        input: PathBuf,
        /// Directory to fill with node_00/, node_01/, ... and manifest.json.
        #[arg(long, value_name = "DIR")]
        out: PathBuf,
    },
    /// Rebuild the original file from any k intact shards.
    Decode {
        /// Shard directory written by encode.
        dir: PathBuf,
        /// Where to write the restored file.
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Rebuild one node's shard in place, reading as little as possible.
    Repair {
        /// Shard directory written by encode.
        dir: PathBuf,
        /// Node whose shard is lost.
        #[arg(long, value_name = "INT")]
        failed: usize,
    },
    /// Exhaustively verify that every k-subset of nodes can decode.
    Verify {
        #[command(flatten)]
        source: SpecSource,
    },
    /// Search row orderings for subgroup tuples with low skip cost.
    Search {
        /// Group dimension: orderings of 2^m rows.
        #[arg(long, value_name = "INT")]
        m: u32,
        /// Number of distinct subgroups required.
        #[arg(long, value_name = "INT")]
        t: usize,
        /// Visit every ordering (feasible for 2^m <= 8) instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        /// Orderings to sample when not exhaustive.
        #[arg(long, value_name = "INT", default_value_t = 2000)]
        budget: u64,
        /// Seed for the sampled walk.
        #[arg(long, value_name = "INT", default_value_t = 0)]
        seed: u64,
    },
    /// Print the repair-cost table for a selection of catalog codes.
    Report {
        /// Family tokens like A2:2 or A3:5:3; defaults to the standing table.
        tokens: Vec<String>,
    },
}

fn main() {
    let cli = Cli::parse();
    if let Err(err) = run(cli.command) {
        eprintln!("error: {err}");
        std::process::exit(err.exit_code());
    }
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Encode { source, input, out } => {
            let loaded = source.load()?;
            let (_, enc) = stripe::encode_file(&loaded, &input, &out)?;
            let spec = &loaded.spec;
            println!(
                "encoded {} into {} shards under {} ({} stripes of {} rows, {} pad bytes)",
                input.display(),
                spec.n(),
                out.display(),
                enc.stripes,
                spec.rows(),
                enc.padding,
            );
            Ok(())
        }
        Command::Decode { dir, out } => {
            let report = stripe::decode_file(&dir, &out)?;
            println!(
                "decoded {} bytes to {} from shards {:?}",
                report.bytes_written,
                out.display(),
                report.nodes_used,
            );
            Ok(())
        }
        Command::Repair { dir, failed } => {
            let report = stripe::repair_file(&dir, failed)?;
            print_repair(&report);
            Ok(())
        }
        Command::Verify { source } => {
            let loaded = source.load()?;
            let report = mds_check(&loaded.spec);
            match report.failure {
                None => {
                    println!(
                        "ok: all {} node subsets of size {} have full rank",
                        report.node_subsets,
                        loaded.spec.k(),
                    );
                    Ok(())
                }
                Some(subset) => Err(CliError::verification(format!(
                    "nodes {subset:?} cannot decode (subset {} of {})",
                    report.subsets_checked, report.node_subsets,
                ))),
            }
        }
        Command::Search { m, t, exhaustive, budget, seed } => {
            let mode = if exhaustive {
                SearchMode::Exhaustive { prune: true }
            } else {
                SearchMode::Randomized { budget, seed }
            };
            let outcome = search_orderings(m, t, mode).map_err(CliError::usage)?;
            let rows = 1usize << m;
            let cert = &outcome.certificate;
            let value = serde_json::json!({
                "m": m,
                "t": t,
                "max_c": outcome.max_c,
                "c_values": outcome.c_values,
                "ordering": (0..rows)
                    .map(|i| outcome.ordering.elem_at(i).to_string())
                    .collect::<Vec<_>>(),
                "subgroup_checks": outcome.subgroups.iter()
                    .map(|h| format!("{:0width$b}", h.check(), width = m as usize))
                    .collect::<Vec<_>>(),
                "certificate": {
                    "exhaustive": cert.exhaustive,
                    "orderings_total": cert.orderings_total.to_string(),
                    "tuples_per_ordering": cert.tuples_per_ordering.to_string(),
                    "orderings_evaluated": cert.orderings_evaluated,
                    "cases_covered": cert.cases_covered.to_string(),
                    "unachievable": cert.unachievable,
                },
            });
            println!(
                "{}",
                serde_json::to_string_pretty(&value).expect("plain data serializes"),
            );
            Ok(())
        }
        Command::Report { tokens } => {
            let tokens = if tokens.is_empty() { report::default_tokens() } else { tokens };
            let rows = report::build_report(&tokens)?;
            print!("{}", report::render(&rows));
            Ok(())
        }
    }
}

fn print_repair(report: &stripe::RepairFileReport) {
    match &report.kind {
        RepairKind::Planned { case, parity_pair, subgroup, helpers, metrics } => {
            let case = match case {
                RecoveryCase::CrossCoset => "cross-coset",
                RecoveryCase::SameCoset => "same-coset",
            };
            println!(
                "repaired node {} ({} stripes) via parities {:?}, rows of {} ({case})",
                report.failed, report.stripes, parity_pair, subgroup,
            );
            for h in helpers {
                println!(
                    "  helper {:>2}: {} rows/stripe in {} range(s), {} bytes/stripe, skip {}",
                    h.node, h.rows_per_stripe, h.ranges_per_stripe, h.bytes_per_stripe, h.skip,
                );
            }
            println!(
                "total skip {}, rebuilding ratio {}, fragmentation {} per helper / {} overall",
                metrics.total_skip,
                metrics.rebuilding_ratio,
                metrics.rfr_per_helper,
                metrics.rfr_def,
            );
        }
        RepairKind::FullDecode { nodes_read, notice } => {
            println!(
                "repaired node {} ({} stripes) by full decode from {:?}",
                report.failed, report.stripes, nodes_read,
            );
            println!("note: {notice}");
        }
    }
}
