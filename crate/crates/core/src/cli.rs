//! Command-line front end.

use std::fs;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::budget::Budget;
use crate::coloring::{
    chromatic_number_exact, explicit_coloring, is_proper, standard_kneser_coloring, Chromatic,
    ChromaticReport, Coloring, ColoringFile,
};
use crate::error::{Error, Result};
use crate::homology::{afl_lower_bound, reduced_homology, Connectivity, HomologyProfile};
use crate::hypergraph::{HypergraphSpec, InstanceFile, SVector, Variant};
use crate::scomplex::nerve::nerve_iso_check;
use crate::scomplex::tuples::{build_box_complex, build_cs, build_ks};
use crate::scomplex::zp::build_e;
use crate::scomplex::SimplicialComplex;
use crate::sweep::{run_sweep, Family, SweepRow};
use crate::tucker::{verify_tucker_conditions, TuckerParams};

const AFTER_HELP: &str = "\
Sweep CSV columns: instance,lower,exact,upper,theorem_ok
  lower       closed-form lower bound (empty when its hypotheses fail)
  exact       exact chromatic number (\"inf\" with a loop edge)
  upper       colors used by the explicit coloring (empty when none applies)
  theorem_ok  exact equals the claimed value (empty when not claimed)

Exit codes: 0 all checks pass, 1 a claimed bound or identity failed,
2 input error, 3 budget exceeded.

KNESER_LAB_SEED is reserved and ignored; every command is deterministic.";

#[derive(Parser, Debug)]
#[command(name = "kneser-lab", version, about = "Generalized Kneser hypergraphs: colorings, complexes, homology and Tucker certificates", after_help = AFTER_HELP)]
pub struct Cli {
    /// Instance description (JSON)
    #[arg(long, global = true)]
    pub instance: Option<PathBuf>,
    /// Output file (default: stdout)
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Report format (default: csv for sweep, json otherwise)
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[arg(long, global = true, default_value_t = 20_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_vertices: u64,
    #[arg(long, global = true, default_value_t = 2_000_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_faces: u64,
    /// Wall-clock limit in seconds
    #[arg(long, global = true, default_value_t = 600, value_parser = clap::value_parser!(u64).range(1..))]
    pub timeout: u64,
    /// Worker threads for sweeps
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub workers: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    Exact,
    Greedy,
    Standard,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// E_{n-1}(Z_p) on n positions
    E,
    /// Box complex of the instance
    Box,
    Ks,
    Cs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum SweepFamily {
    /// Partition family, r in {2,3}, k in {1,2}, rk <= n <= rk+3, blocks of size <= r
    Partition,
    /// S = (2,...,2), r = 3, k in {1,2}, 2n >= 3k, n <= 5
    Doubled,
    /// kr-1 ones then entries r-1, r in {2,3}, k in {1,2}, kr <= n <= kr+2
    OnesThenTop,
}

#[derive(clap::Args, Debug, Clone)]
pub struct ComplexArgs {
    #[arg(long, value_enum)]
    pub kind: Option<Kind>,
    /// Positions of E (default: n of the instance)
    #[arg(long)]
    pub n: Option<usize>,
    /// Prime of E (default: r of the instance)
    #[arg(long)]
    pub p: Option<u32>,
    /// Part sizes k_1,...,k_r for Ks/Cs (default: k repeated r times)
    #[arg(long, value_delimiter = ',')]
    pub kvec: Option<Vec<usize>>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Formula bound, explicit upper bound and exact chromatic number
    Chromatic,
    /// A proper coloring of the instance
    Color {
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
    },
    /// Facet list of E, the box complex, K_s or C_s
    Complex {
        #[command(flatten)]
        args: ComplexArgs,
    },
    /// Reduced integer homology of a facet-list file or a built complex
    Homology {
        #[arg(long, conflicts_with = "kind")]
        complex: Option<PathBuf>,
        #[command(flatten)]
        args: ComplexArgs,
    },
    /// Checks N(K_s) ≅ C_s for an S-family instance
    NerveCheck {
        #[arg(long, value_delimiter = ',')]
        kvec: Option<Vec<usize>>,
    },
    /// Z_p-Tucker certificate for a coloring of a partition instance (p = r)
    TuckerVerify {
        /// Coloring file (default: the standard coloring)
        #[arg(long)]
        coloring: Option<PathBuf>,
    },
    /// Exact chromatic numbers over a family of instances
    Sweep {
        #[arg(long, value_enum)]
        family: SweepFamily,
    },
}

impl Cli {
    pub fn budget(&self) -> Budget {
        Budget {
            max_vertices: self.max_vertices as usize,
            max_faces: self.max_faces as usize,
            max_nodes: u64::MAX,
            deadline: None,
        }
        .with_timeout(Duration::from_secs(self.timeout))
    }
}

/// Process exit status for a run outcome.
pub fn exit_code(outcome: &Result<bool>) -> u8 {
    match outcome {
        Ok(true) => 0,
        Ok(false) => 1,
        Err(Error::Budget { .. }) => 3,
        Err(_) => 2,
    }
}

/// Executes one command and writes its report. `Ok(false)` means a checked
/// claim failed.
pub fn run(cli: &Cli) -> Result<bool> {
    let budget = cli.budget();
    let format = cli.format.unwrap_or(match cli.command {
        Command::Sweep { .. } => Format::Csv,
        _ => Format::Json,
    });
    if format == Format::Csv && !matches!(cli.command, Command::Chromatic | Command::Sweep { .. }) {
        return Err(Error::input(
            "csv output is available for chromatic and sweep only",
        ));
    }
    match &cli.command {
        Command::Chromatic => {
            let spec = load_instance(cli)?;
            let report = ChromaticReport::build(&spec, &budget)?;
            match format {
                Format::Json => write_json(cli, &report)?,
                Format::Csv => {
                    let row = SweepRow {
                        instance: report.instance.clone(),
                        lower: report.formula_lower,
                        exact: report.exact,
                        upper: report.greedy_upper,
                        theorem_ok: report
                            .formula_lower
                            .map(|l| report.exact == Chromatic::Finite(l)),
                    };
                    write_text(
                        cli,
                        &format!("{}\n{}\n", SweepRow::CSV_HEADER, row.csv_line()),
                    )?;
                }
            }
            Ok(report.consistent)
        }
        Command::Color { method } => {
            let spec = load_instance(cli)?;
            let coloring = match method {
                Method::Exact => chromatic_number_exact(&spec, &budget)?
                    .coloring
                    .ok_or_else(|| {
                        Error::Unsupported("a loop edge admits no proper coloring".into())
                    })?,
                Method::Greedy => explicit_coloring(&spec).ok_or_else(|| {
                    Error::Unsupported(format!("no explicit coloring applies to {spec}"))
                })?,
                Method::Standard => standard_kneser_coloring(&spec)?,
            };
            write_json(cli, &coloring.to_file())?;
            Ok(true)
        }
        Command::Complex { args } => {
            let kind = args
                .kind
                .ok_or_else(|| Error::input("--kind is required"))?;
            let complex = build_complex(cli, kind, args, &budget)?;
            let mut buf = Vec::new();
            complex.write_facet_list(&mut buf)?;
            write_bytes(cli, &buf)?;
            Ok(true)
        }
        Command::Homology { complex, args } => {
            let (cx, box_spec) = match (complex, args.kind) {
                (Some(path), _) => {
                    let file = fs::File::open(path).map_err(|e| io_error(path, e))?;
                    (
                        SimplicialComplex::read_facet_list(BufReader::new(file))?,
                        None,
                    )
                }
                (None, Some(kind)) => {
                    let spec = match kind {
                        Kind::Box => Some(load_instance(cli)?),
                        _ => None,
                    };
                    (build_complex(cli, kind, args, &budget)?, spec)
                }
                (None, None) => return Err(Error::input("give --complex FILE or --kind")),
            };
            let profile = reduced_homology(&cx, &budget)?;
            let mut holds = profile.empty || profile.euler_from_betti() == profile.euler;
            let mut afl = None;
            if let Some(spec) = box_spec {
                let bound = match profile.hconn {
                    Connectivity::Finite(c) => afl_lower_bound(c, spec.r())?,
                    Connectivity::Infinite => afl_lower_bound(-2, spec.r())?,
                };
                let value = match profile.hconn {
                    Connectivity::Finite(_) => Chromatic::Finite(bound.value as usize),
                    Connectivity::Infinite => Chromatic::Infinite,
                };
                if let (Chromatic::Finite(b), true, Some(c)) =
                    (value, bound.prime_hypothesis, explicit_coloring(&spec))
                {
                    holds &= c.used() >= b;
                }
                afl = Some(AflReport {
                    value,
                    prime_hypothesis: bound.prime_hypothesis,
                });
            }
            write_json(cli, &HomologyReport { profile, afl })?;
            Ok(holds)
        }
        Command::NerveCheck { kvec } => {
            let spec = load_instance(cli)?;
            let s = spec.s_vector().ok_or_else(|| {
                Error::Unsupported("nerve-check needs a uniform_s or general_s instance".into())
            })?;
            let kvec = kvec
                .clone()
                .unwrap_or_else(|| vec![spec.k(); spec.r() as usize]);
            check_kvec(&kvec, spec.r())?;
            let report = nerve_iso_check(&kvec, &s, &budget)?;
            write_json(cli, &report)?;
            Ok(report.pass)
        }
        Command::TuckerVerify { coloring } => {
            let spec = load_instance(cli)?;
            let partition = match spec.variant() {
                Variant::PartitionP { partition, .. } => partition.clone(),
                _ => {
                    return Err(Error::Unsupported(
                        "tucker-verify needs a partition instance".into(),
                    ))
                }
            };
            let coloring = match coloring {
                Some(path) => {
                    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
                    let file: ColoringFile = serde_json::from_str(&text)?;
                    Coloring::from_file(&file, spec.n())?
                }
                None => standard_kneser_coloring(&spec)?,
            };
            let params = TuckerParams::new(spec.r(), partition, spec.k(), coloring.t())?;
            let report = verify_tucker_conditions(&params, &coloring, &budget)?;
            write_json(cli, &report)?;
            // an improper coloring is expected to be rejected
            let proper = is_proper(&spec, &coloring)?.is_proper();
            Ok(report.pass == proper)
        }
        Command::Sweep { family } => {
            let family = match family {
                SweepFamily::Partition => Family::Partition,
                SweepFamily::Doubled => Family::Doubled,
                SweepFamily::OnesThenTop => Family::OnesThenTop,
            };
            let rows = run_sweep(family, cli.workers as usize, &budget)?;
            match format {
                Format::Csv => {
                    let mut text = String::from(SweepRow::CSV_HEADER);
                    text.push('\n');
                    for row in &rows {
                        text.push_str(&row.csv_line());
                        text.push('\n');
                    }
                    write_text(cli, &text)?;
                }
                Format::Json => write_json(
                    cli,
                    &SweepReport {
                        schema: 1,
                        family: family.to_string(),
                        rows: &rows,
                    },
                )?,
            }
            Ok(rows.iter().all(SweepRow::ok))
        }
    }
}

#[derive(Serialize)]
struct AflReport {
    value: Chromatic,
    prime_hypothesis: bool,
}

#[derive(Serialize)]
struct HomologyReport {
    #[serde(flatten)]
    profile: HomologyProfile,
    #[serde(skip_serializing_if = "Option::is_none")]
    afl: Option<AflReport>,
}

#[derive(Serialize)]
struct SweepReport<'a> {
    schema: u32,
    family: String,
    rows: &'a [SweepRow],
}

fn io_error(path: &Path, e: io::Error) -> Error {
    Error::Input(format!("{}: {e}", path.display()))
}

fn load_instance(cli: &Cli) -> Result<HypergraphSpec> {
    let path = cli
        .instance
        .as_ref()
        .ok_or_else(|| Error::input("--instance FILE is required"))?;
    let text = fs::read_to_string(path).map_err(|e| io_error(path, e))?;
    let file: InstanceFile = serde_json::from_str(&text)?;
    file.to_spec()
}

fn check_kvec(kvec: &[usize], r: u32) -> Result<()> {
    if kvec.len() != r as usize {
        return Err(Error::input(format!(
            "--kvec has {} entries, r = {r}",
            kvec.len()
        )));
    }
    Ok(())
}

fn build_complex(
    cli: &Cli,
    kind: Kind,
    args: &ComplexArgs,
    budget: &Budget,
) -> Result<SimplicialComplex> {
    match kind {
        Kind::E => {
            let (n, p) = match (args.n, args.p) {
                (Some(n), Some(p)) => (n, p),
                (n, p) => {
                    let spec = load_instance(cli)?;
                    (n.unwrap_or(spec.n()), p.unwrap_or(spec.r()))
                }
            };
            let faces = (p as u128 + 1).checked_pow(n as u32).map(|f| f - 1);
            if faces.is_none_or(|f| f > budget.max_faces as u128) {
                return Err(Error::budget(format!(
                    "E_{}(Z_{p}) exceeds {} faces",
                    n.saturating_sub(1),
                    budget.max_faces
                )));
            }
            build_e(n, p)
        }
        Kind::Box => Ok(build_box_complex(&load_instance(cli)?, budget)?.complex),
        Kind::Ks | Kind::Cs => {
            let spec = load_instance(cli)?;
            let s = match spec.variant() {
                Variant::PartitionP { partition, .. } if partition.max_block() == 1 => {
                    SVector::constant(spec.n(), 1, spec.r())?
                }
                _ => spec.s_vector().ok_or_else(|| {
                    Error::Unsupported("K_s and C_s need an S-family or singleton blocks".into())
                })?,
            };
            let kvec = args
                .kvec
                .clone()
                .unwrap_or_else(|| vec![spec.k(); spec.r() as usize]);
            check_kvec(&kvec, spec.r())?;
            let built = if kind == Kind::Ks {
                build_ks(&kvec, &s, budget)?
            } else {
                build_cs(&kvec, &s, budget)?
            };
            Ok(built.complex)
        }
    }
}

fn write_json<T: Serialize>(cli: &Cli, value: &T) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    write_text(cli, &text)
}

fn write_text(cli: &Cli, text: &str) -> Result<()> {
    write_bytes(cli, text.as_bytes())
}

fn write_bytes(cli: &Cli, bytes: &[u8]) -> Result<()> {
    match &cli.out {
        Some(path) => fs::write(path, bytes).map_err(|e| io_error(path, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}
