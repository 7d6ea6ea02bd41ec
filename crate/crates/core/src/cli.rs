//! `glaisher` command line.
//!
//! Exit status: 0 on success, 1 when `verify` finds a failing check, 2 on a
//! usage or parse error, 3 when a library precondition fails (for example
//! `merge` on a partition with a part divisible by `d`).

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::counting::{to_json_lines, to_tsv};
use crate::verify::inadmissible_k4_fixture;
use crate::{
    apply_forward, apply_inverse, count_table, encode, enumerate_partitions, merge_map, split_map,
    verify_bijection, verify_counts, Error, Partition, PermutationScheme, MAX_ENUMERATION_N,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "glaisher",
    version,
    about = "Glaisher partition bijections and their verification"
)]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Apply the diagonal bijection to a partition.
    Map(MapArgs),
    /// Apply the inverse diagonal bijection.
    Inverse(MapArgs),
    /// Glaisher split map (d-regular -> d-nondivisible).
    Split(PartitionArgs),
    /// Glaisher merge map (d-nondivisible -> d-regular).
    Merge(PartitionArgs),
    /// Show the digit matrices of a partition.
    Matrix(PartitionArgs),
    /// List every partition of n.
    Enumerate(EnumerateArgs),
    /// Tabulate p(n), a(n), b(n), |A_n|, |B_n|.
    Count(CountArgs),
    /// Exhaustively verify a scheme for n = 0..=n-max.
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Tsv,
}

#[derive(Args, Debug)]
pub struct SchemeArgs {
    /// `swap`, `rotate`, `seeded:<u64>`, or `seeded` together with --seed.
    #[arg(long, default_value = "swap")]
    pub scheme: String,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl SchemeArgs {
    fn resolve(&self) -> Result<PermutationScheme, Error> {
        match (self.scheme.trim(), self.seed) {
            ("seeded", Some(seed)) => Ok(PermutationScheme::Seeded(seed)),
            (_, Some(_)) => Err(Error::Parse {
                input: self.scheme.clone(),
                reason: "--seed only applies to --scheme seeded".to_string(),
            }),
            (s, None) => s.parse(),
        }
    }
}

#[derive(Args, Debug)]
pub struct PartitionArgs {
    #[arg(long)]
    pub d: u64,
    /// Parts joined by `+`, e.g. `3+1+1`; `0` is the empty partition.
    #[arg(long)]
    pub partition: String,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct MapArgs {
    #[command(flatten)]
    pub target: PartitionArgs,
    #[command(flatten)]
    pub scheme: SchemeArgs,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Class {
    All,
    Nondivisible,
    Regular,
    /// Some part divisible by d.
    A,
    /// Some part repeated d or more times.
    B,
}

#[derive(Args, Debug)]
pub struct EnumerateArgs {
    #[arg(long)]
    pub n: u64,
    /// Required for every class except `all`.
    #[arg(long)]
    pub d: Option<u64>,
    #[arg(long, value_enum, default_value_t = Class::All)]
    pub class: Class,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct CountArgs {
    #[arg(long)]
    pub d: u64,
    #[arg(long = "n-max")]
    pub n_max: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long, default_value_t = 2)]
    pub d: u64,
    #[command(flatten)]
    pub scheme: SchemeArgs,
    #[arg(long = "n-max", default_value_t = 20)]
    pub n_max: u64,
    /// Verify a single n instead of the range 0..=n-max.
    #[arg(long, conflicts_with = "n_max")]
    pub n: Option<u64>,
    /// Run the built-in inadmissible D(4) fixture instead of --scheme.
    #[arg(long)]
    pub inadmissible_fixture: bool,
    /// Print elapsed time to stderr.
    #[arg(long)]
    pub timing: bool,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

enum Failure {
    Usage(String),
    Precondition(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } | Error::NonPositivePart(_) => Failure::Usage(e.to_string()),
            other => Failure::Precondition(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Precondition(format!("write failed: {e}"))
    }
}

/// Parses `argv` (including the program name) and runs the subcommand.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(rendered.as_bytes())
            } else {
                err.write_all(rendered.as_bytes())
            };
            return code;
        }
    };
    match execute(config.command, out, err) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nusage: glaisher <map|inverse|split|merge|matrix|enumerate|count|verify> [OPTIONS]");
            EXIT_USAGE
        }
        Err(Failure::Precondition(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_PRECONDITION
        }
    }
}

fn unsupported(format: Format, command: &str) -> Failure {
    Failure::Usage(format!("--format {format:?} is not supported by {command}").to_lowercase())
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    match command {
        Command::Map(args) => map_like(args, true, out),
        Command::Inverse(args) => map_like(args, false, out),
        Command::Split(args) => single(args, "split", out, split_map),
        Command::Merge(args) => single(args, "merge", out, merge_map),
        Command::Matrix(args) => {
            let p: Partition = args.partition.parse()?;
            let family = encode(&p, args.d)?;
            match args.format {
                Format::Text => {
                    writeln!(out, "partition {p}")?;
                    out.write_all(family.render_grid().as_bytes())?;
                }
                Format::Json => writeln!(out, "{}", family.to_json())?,
                f => return Err(unsupported(f, "matrix")),
            }
            Ok(EXIT_OK)
        }
        Command::Enumerate(args) => enumerate(args, out),
        Command::Count(args) => {
            let rows = count_table(args.n_max, args.d)?;
            match args.format {
                Format::Text => {
                    writeln!(
                        out,
                        "{:>4} {:>12} {:>12} {:>12} {:>12} {:>12}",
                        "n", "p", "a", "b", "card_A", "card_B"
                    )?;
                    for r in &rows {
                        writeln!(
                            out,
                            "{:>4} {:>12} {:>12} {:>12} {:>12} {:>12}",
                            r.n, r.p_n, r.a_n, r.b_n, r.card_a, r.card_b
                        )?;
                    }
                }
                Format::Tsv => out.write_all(to_tsv(&rows).as_bytes())?,
                Format::Json => out.write_all(to_json_lines(&rows).as_bytes())?,
            }
            Ok(EXIT_OK)
        }
        Command::Verify(args) => verify(args, out, err),
    }
}

fn map_like(args: MapArgs, forward: bool, out: &mut dyn Write) -> Result<i32, Failure> {
    let scheme = args.scheme.resolve()?;
    let p: Partition = args.target.partition.parse()?;
    let d = args.target.d;
    let q = if forward {
        apply_forward(&p, d, &scheme)?
    } else {
        apply_inverse(&p, d, &scheme)?
    };
    match args.target.format {
        Format::Text => writeln!(out, "{q}")?,
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "d": d,
                "scheme": scheme.to_string(),
                "direction": if forward { "forward" } else { "inverse" },
                "input": p.to_string(),
                "output": q.to_string(),
            })
        )?,
        f => return Err(unsupported(f, if forward { "map" } else { "inverse" })),
    }
    Ok(EXIT_OK)
}

fn single(
    args: PartitionArgs,
    name: &str,
    out: &mut dyn Write,
    f: fn(&Partition, u64) -> crate::Result<Partition>,
) -> Result<i32, Failure> {
    let p: Partition = args.partition.parse()?;
    let q = f(&p, args.d)?;
    match args.format {
        Format::Text => writeln!(out, "{q}")?,
        Format::Json => writeln!(
            out,
            "{}",
            json!({ "d": args.d, "map": name, "input": p.to_string(), "output": q.to_string() })
        )?,
        fmt => return Err(unsupported(fmt, name)),
    }
    Ok(EXIT_OK)
}

fn enumerate(args: EnumerateArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    if args.n > MAX_ENUMERATION_N {
        return Err(Error::EnumerationCeiling {
            n: args.n,
            max: MAX_ENUMERATION_N,
        }
        .into());
    }
    let d = match (args.class, args.d) {
        (Class::All, d) => d,
        (_, Some(d)) => Some(d),
        (_, None) => {
            return Err(Failure::Usage(
                "--class other than `all` needs --d".to_string(),
            ))
        }
    };
    if let Some(d) = d {
        crate::check_modulus(d)?;
    }
    let keep = |p: &Partition| -> bool {
        let Some(d) = d else { return true };
        let nondiv = p.is_d_nondivisible(d).expect("modulus checked");
        let regular = p.is_d_regular(d).expect("modulus checked");
        match args.class {
            Class::All => true,
            Class::Nondivisible => nondiv,
            Class::Regular => regular,
            Class::A => !nondiv,
            Class::B => !regular,
        }
    };
    let selected: Vec<Partition> = enumerate_partitions(args.n).filter(|p| keep(p)).collect();
    match args.format {
        Format::Text => {
            for p in &selected {
                writeln!(out, "{p}")?;
            }
        }
        Format::Json => writeln!(
            out,
            "{}",
            serde_json::to_string(&selected).expect("partitions serialize")
        )?,
        f => return Err(unsupported(f, "enumerate")),
    }
    Ok(EXIT_OK)
}

fn verify(args: VerifyArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, Failure> {
    let range: Vec<u64> = match args.n {
        Some(n) => vec![n],
        None => (0..=args.n_max).collect(),
    };
    let mut reports = Vec::with_capacity(range.len());
    if args.inadmissible_fixture {
        let rule = inadmissible_k4_fixture();
        for &n in &range {
            reports.push(verify_bijection(n, args.d, &rule)?);
        }
    } else {
        let scheme = args.scheme.resolve()?;
        for &n in &range {
            reports.push(verify_bijection(n, args.d, &scheme)?);
        }
    }
    let top = range.last().copied().unwrap_or(0);
    let counts = verify_counts(top, args.d)?;
    let passed = reports.iter().all(|r| r.all_passed()) && counts.all_passed();

    match args.format {
        Format::Text => {
            for r in &reports {
                out.write_all(r.render_text().as_bytes())?;
            }
            out.write_all(counts.render_text().as_bytes())?;
            writeln!(
                out,
                "{}",
                if passed {
                    "ALL CHECKS PASSED"
                } else {
                    "SOME CHECKS FAILED"
                }
            )?;
        }
        Format::Json => {
            let scheme = reports
                .first()
                .map(|r| r.scheme.clone())
                .unwrap_or_default();
            let doc = json!({
                "d": args.d,
                "scheme": scheme,
                "passed": passed,
                "reports": reports,
                "counts": counts,
            });
            writeln!(
                out,
                "{}",
                serde_json::to_string_pretty(&doc).expect("reports serialize")
            )?;
        }
        f => return Err(unsupported(f, "verify")),
    }
    if args.timing {
        let total: u128 = reports.iter().map(|r| r.elapsed_ms).sum::<u128>() + counts.elapsed_ms;
        writeln!(err, "elapsed: {total} ms")?;
    }
    Ok(if passed { EXIT_OK } else { EXIT_CHECK_FAILED })
}
