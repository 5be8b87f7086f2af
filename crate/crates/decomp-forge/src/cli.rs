//! Command-line front end: parse truth tables, run the decomposition
//! algorithms and dependency checks, print charts and verification reports.
//! Output is byte-deterministic for a fixed configuration.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;

use crate::chart::Chart;
use crate::decompose::{self, Decomposition, McpMode, MultiDecomposition, WEncoding};
use crate::dependency::{self, DependencyKind, DependencyReport};
use crate::error::{Error, Result};
use crate::relation::Relation;
use crate::text;

pub const REPORT_HEADER: &str = "# decomp-forge v1";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_VERIFICATION: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AlgorithmArg {
    Auto,
    Alpha,
    Beta,
    Gamma,
    Delta,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum McpArg {
    Exact,
    Greedy,
    Enumerate,
}

impl From<McpArg> for McpMode {
    fn from(m: McpArg) -> McpMode {
        match m {
            McpArg::Exact => McpMode::Exact,
            McpArg::Greedy => McpMode::Greedy,
            McpArg::Enumerate => McpMode::Enumerate,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EncodingArg {
    SingleVar,
    BinaryBits,
}

impl From<EncodingArg> for WEncoding {
    fn from(e: EncodingArg) -> WEncoding {
        match e {
            EncodingArg::SingleVar => WEncoding::SingleVar,
            EncodingArg::BinaryBits => WEncoding::BinaryBits,
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "decomp-forge",
    version,
    about = "Information-lossless functional decomposition of truth tables"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Decompose a truth table into W = g(Y) and F = h(W, Z)
    Decompose(DecomposeArgs),
    /// Print the decomposition chart for a bound/free split
    Chart(ChartArgs),
    /// Decide a functional dependency lhs -> rhs
    CheckFd(CheckArgs),
    /// Decide a multi-valued dependency lhs ->> rhs
    CheckMvd(CheckArgs),
    /// Check previously emitted sub-tables against the original table
    Verify(VerifyArgs),
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    /// Truth table file
    pub input: PathBuf,
    /// Bound set as a comma-separated attribute list; repeat the flag for
    /// multiple decomposition
    #[arg(long = "bound", value_name = "ATTRS", required = true)]
    pub bound: Vec<String>,
    /// Free set; defaults to the inputs not in any bound set
    #[arg(long = "free", value_name = "ATTRS")]
    pub free: Option<String>,
    #[arg(long, value_enum, default_value_t = AlgorithmArg::Auto)]
    pub algorithm: AlgorithmArg,
    /// Clique-partition mode for incompletely specified tables
    #[arg(long, value_enum, default_value_t = McpArg::Exact)]
    pub mcp: McpArg,
    #[arg(long, value_enum, default_value_t = EncodingArg::SingleVar)]
    pub encoding: EncodingArg,
    /// Fill missing input rows with `-` outputs
    #[arg(long)]
    pub extend_missing: bool,
    /// Enumerate all non-disjoint merge combinations
    #[arg(long)]
    pub enumerate_gamma: bool,
    /// Cap on enumerated candidates
    #[arg(long, default_value_t = 16)]
    pub limit: usize,
    /// Write the report to a file instead of stdout
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    /// Write the first candidate's g table to a file
    #[arg(long, value_name = "FILE")]
    pub out_g: Option<PathBuf>,
    /// Write the first candidate's h table to a file
    #[arg(long, value_name = "FILE")]
    pub out_h: Option<PathBuf>,
    /// Seed for the randomized merge-order self-test
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Args)]
pub struct ChartArgs {
    pub input: PathBuf,
    #[arg(long = "bound", value_name = "ATTRS")]
    pub bound: String,
    #[arg(long = "free", value_name = "ATTRS")]
    pub free: Option<String>,
    #[arg(long)]
    pub extend_missing: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    pub input: PathBuf,
    #[arg(long, value_name = "ATTRS")]
    pub lhs: String,
    #[arg(long, value_name = "ATTRS")]
    pub rhs: String,
    #[arg(long)]
    pub extend_missing: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// The original table
    pub input: PathBuf,
    #[arg(long = "table-g", value_name = "FILE")]
    pub table_g: PathBuf,
    #[arg(long = "table-h", value_name = "FILE")]
    pub table_h: PathBuf,
    #[arg(long)]
    pub extend_missing: bool,
    #[arg(short, long)]
    pub output: Option<PathBuf>,
}

impl Cli {
    pub fn output_path(&self) -> Option<&PathBuf> {
        match &self.command {
            CliCommand::Decompose(a) => a.output.as_ref(),
            CliCommand::Chart(a) => a.output.as_ref(),
            CliCommand::CheckFd(a) | CliCommand::CheckMvd(a) => a.output.as_ref(),
            CliCommand::Verify(a) => a.output.as_ref(),
        }
    }
}

fn split_attrs(spec: &str) -> Vec<String> {
    spec.split(',')
        .map(|s| s.trim().to_string())
        .filter(|s| !s.is_empty())
        .collect()
}

/// Execute a parsed command line; returns the exit code and the report text.
pub fn run(cli: &Cli) -> (i32, String) {
    match run_inner(cli) {
        Ok(result) => result,
        Err(e) => (EXIT_USAGE, format!("error: {e}\n")),
    }
}

fn run_inner(cli: &Cli) -> Result<(i32, String)> {
    match &cli.command {
        CliCommand::Decompose(args) => run_decompose(args),
        CliCommand::Chart(args) => run_chart(args),
        CliCommand::CheckFd(args) => run_check(args, DependencyKind::Functional),
        CliCommand::CheckMvd(args) => run_check(args, DependencyKind::Multivalued),
        CliCommand::Verify(args) => run_verify(args),
    }
}

fn free_set(relation: &Relation, bounds: &[Vec<String>], free: &Option<String>) -> Vec<String> {
    match free {
        Some(spec) => split_attrs(spec),
        None => relation
            .input_names()
            .into_iter()
            .filter(|n| !bounds.iter().any(|b| b.contains(n)))
            .collect(),
    }
}

fn select_algorithm(
    relation: &Relation,
    bounds: &[Vec<String>],
    free: &[String],
    choice: AlgorithmArg,
) -> Result<AlgorithmArg> {
    if choice != AlgorithmArg::Auto {
        return Ok(choice);
    }
    let overlap = bounds
        .iter()
        .flatten()
        .any(|n| free.contains(n));
    let selected = if relation.has_dontcare() {
        AlgorithmArg::Delta
    } else if overlap {
        AlgorithmArg::Gamma
    } else if bounds.len() > 1 {
        AlgorithmArg::Beta
    } else {
        AlgorithmArg::Alpha
    };
    Ok(selected)
}

fn algorithm_name(a: AlgorithmArg) -> &'static str {
    match a {
        AlgorithmArg::Auto => "auto",
        AlgorithmArg::Alpha => "alpha",
        AlgorithmArg::Beta => "beta",
        AlgorithmArg::Gamma => "gamma",
        AlgorithmArg::Delta => "delta",
    }
}

fn run_decompose(args: &DecomposeArgs) -> Result<(i32, String)> {
    let relation = text::parse_file(&args.input, args.extend_missing)?;
    let bounds: Vec<Vec<String>> = args.bound.iter().map(|b| split_attrs(b)).collect();
    let free = free_set(&relation, &bounds, &args.free);
    let algorithm = select_algorithm(&relation, &bounds, &free, args.algorithm)?;
    let encoding: WEncoding = args.encoding.into();

    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_HEADER}");
    let _ = writeln!(out, "command: decompose");
    let _ = writeln!(out, "input: {}", args.input.display());
    let _ = writeln!(out, "algorithm: {}", algorithm_name(algorithm));
    for b in &bounds {
        let _ = writeln!(out, "bound: {}", b.join(","));
    }
    if free.is_empty() {
        let _ = writeln!(out, "free: (none)");
    } else {
        let _ = writeln!(out, "free: {}", free.join(","));
    }

    let single_bound = || -> Result<&Vec<String>> {
        if bounds.len() == 1 {
            Ok(&bounds[0])
        } else {
            Err(Error::CoverViolation(format!(
                "the {} algorithm takes exactly one bound set",
                algorithm_name(algorithm)
            )))
        }
    };

    let mut candidates: Vec<Decomposition> = Vec::new();
    let mut multi: Option<MultiDecomposition> = None;
    match algorithm {
        AlgorithmArg::Auto => unreachable!("resolved above"),
        AlgorithmArg::Alpha => {
            let y = single_bound()?;
            candidates.push(decompose::fda_alpha_named(&relation, y, &free, "W", encoding)?);
            let chart = Chart::build(&relation, y, &free)?;
            out.push('\n');
            out.push_str(&chart.render("chart M_ZY"));
        }
        AlgorithmArg::Gamma => {
            let y = single_bound()?;
            let overlap = y.iter().any(|n| free.contains(n));
            if !overlap {
                let _ = writeln!(
                    out,
                    "note: bound and free sets are disjoint; using the disjoint algorithm"
                );
            } else {
                let chart = Chart::build(&relation, y, &free)?;
                out.push('\n');
                out.push_str(&chart.render("chart M_ZY (diagonal form)"));
                let intermediate = chart.merge_all_equivalent()?;
                out.push('\n');
                out.push_str(&intermediate.render("intermediate chart M_ZV"));
            }
            let limit = if args.enumerate_gamma { args.limit } else { 1 };
            candidates =
                decompose::fda_gamma_opts(&relation, y, &free, limit, encoding)?;
        }
        AlgorithmArg::Delta => {
            let y = single_bound()?;
            let chart = Chart::build(&relation, y, &free)?;
            out.push('\n');
            out.push_str(&chart.render("chart M_ZY"));
            let dropped = chart.drop_dontcare_columns();
            if !dropped.dropped().is_empty() {
                let names: Vec<String> =
                    dropped.dropped().iter().map(|c| c.name()).collect();
                let _ = writeln!(out, "dropped all-don't-care columns: {}", names.join(", "));
            }
            candidates = decompose::fda_delta_opts(
                &relation,
                y,
                &free,
                args.mcp.into(),
                args.limit,
                encoding,
            )?;
        }
        AlgorithmArg::Beta => {
            if encoding != WEncoding::SingleVar {
                return Err(Error::CoverViolation(
                    "binary-bits encoding is not supported with multiple bound sets".into(),
                ));
            }
            multi = Some(decompose::fda_beta(&relation, &bounds, &free)?);
        }
    }

    let mut all_ok = true;
    if let Some(md) = &multi {
        for (i, part) in md.parts.iter().enumerate() {
            let _ = writeln!(out, "\npart {} (bound {}):", i + 1, part.y_attrs.join(","));
            render_candidate(&mut out, part);
            all_ok &= part.verification.all_ok();
        }
        let _ = writeln!(out, "\njoint table T_h:");
        out.push_str(&text::serialize_relation(&md.table_h));
        let _ = writeln!(out, "\njoint verification:");
        render_dep_line(&mut out, &md.verification.fd_joint, &md.relation_w);
        for m in &md.verification.mvd_parts {
            render_dep_line(&mut out, m, &md.relation_w);
        }
        let _ = writeln!(
            out,
            "  join round-trip: {}",
            ok(md.verification.join_roundtrip)
        );
        let _ = writeln!(
            out,
            "  recomposition: {}",
            ok(md.verification.recomposition)
        );
        all_ok &= md.verification.all_ok();
    } else {
        for (i, d) in candidates.iter().enumerate() {
            if candidates.len() > 1 {
                let _ = writeln!(out, "\ncandidate {}:", i + 1);
            } else {
                out.push('\n');
            }
            render_candidate(&mut out, d);
            all_ok &= d.verification.all_ok();
        }
    }

    // Optional randomized self-test: merging equivalent columns in a
    // shuffled order must reproduce the deterministic final chart.
    if let Some(seed) = args.seed {
        let y = &bounds[0];
        if relation.has_dontcare() {
            let _ = writeln!(
                out,
                "\nmerge-order self-test (seed {seed}): skipped (incompletely specified)"
            );
        } else {
            let zz: Vec<String> = if multi.is_some() {
                relation
                    .input_names()
                    .into_iter()
                    .filter(|n| !y.contains(n))
                    .collect()
            } else {
                free.clone()
            };
            let chart = Chart::build(&relation, y, &zz)?;
            let reference = chart.merge_all_equivalent()?;
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let shuffled = decompose::merge_equivalent_shuffled(&chart, &mut rng)?;
            let same = chart_signature(&reference) == chart_signature(&shuffled);
            let _ = writeln!(
                out,
                "\nmerge-order self-test (seed {seed}): {}",
                if same { "ok" } else { "FAILED" }
            );
            all_ok &= same;
        }
    }

    let _ = writeln!(out, "\nresult: {}", if all_ok { "PASS" } else { "FAIL" });

    // Side outputs for later `verify` runs: first candidate or joint tables.
    let (g_table, h_table) = if let Some(md) = &multi {
        (md.parts.first().map(|p| &p.table_g), Some(&md.table_h))
    } else {
        (
            candidates.first().map(|d| &d.table_g),
            candidates.first().map(|d| &d.table_h),
        )
    };
    if let (Some(path), Some(g)) = (&args.out_g, g_table) {
        std::fs::write(path, text::serialize_relation(g))?;
    }
    if let (Some(path), Some(h)) = (&args.out_h, h_table) {
        std::fs::write(path, text::serialize_relation(h))?;
    }

    Ok((if all_ok { EXIT_OK } else { EXIT_VERIFICATION }, out))
}

fn chart_signature(ch: &Chart) -> Vec<Vec<String>> {
    ch.columns()
        .iter()
        .map(|c| c.labels.iter().map(|l| l.text.clone()).collect())
        .collect()
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

fn render_dep_line(out: &mut String, rep: &DependencyReport, relation: &Relation) {
    let arrow = match rep.kind {
        DependencyKind::Functional => "->",
        DependencyKind::Multivalued => "->>",
    };
    let status = if rep.holds { "ok" } else { "does not hold" };
    let _ = writeln!(
        out,
        "  {} {} {arrow} {}: {status}",
        match rep.kind {
            DependencyKind::Functional => "FD",
            DependencyKind::Multivalued => "MVD",
        },
        rep.lhs.join(","),
        rep.rhs.join(",")
    );
    if let Some(w) = rep.witness {
        let show = |id| match relation.tuple(id) {
            Some(t) => relation.render_tuple(t),
            None => "(missing)".to_string(),
        };
        let _ = writeln!(
            out,
            "  witness: t{} = {} vs t{} = {}",
            w.t1,
            show(w.t1),
            w.t2,
            show(w.t2)
        );
    }
}

fn render_candidate(out: &mut String, d: &Decomposition) {
    out.push_str(&d.final_chart.render("final chart M_ZW"));
    let _ = writeln!(out, "\npi_W: {}", d.bridge_partition);
    let _ = writeln!(out, "W blocks:");
    for (i, (block, labels)) in d
        .bridge_partition
        .blocks()
        .iter()
        .zip(&d.w_block_labels)
        .enumerate()
    {
        let label = if labels.is_empty() {
            "(unconstrained)".to_string()
        } else if labels.iter().any(|t| t.contains(',')) {
            format!("P_{{{}}}", labels.join(" v "))
        } else {
            format!("P_{}", labels.join("v"))
        };
        let members: Vec<String> = block.members.iter().map(|t| format!("t{t}")).collect();
        let _ = writeln!(out, "  W={i} <- {label}: {}", members.join(" "));
    }
    let _ = writeln!(out, "k: {}", d.k);
    let _ = writeln!(out, "bits: {}", d.bits);
    let _ = writeln!(out, "nontrivial: {}", d.nontrivial);
    let _ = writeln!(out, "\ntable T_g:");
    out.push_str(&text::serialize_relation(&d.table_g));
    let _ = writeln!(out, "\ntable T_h:");
    out.push_str(&text::serialize_relation(&d.table_h));
    let _ = writeln!(out, "\nverification:");
    render_dep_line(out, &d.verification.fd_y_w, &d.relation_w);
    render_dep_line(out, &d.verification.fd_wz_f, &d.relation_w);
    render_dep_line(out, &d.verification.mvd_w_y, &d.relation_w);
    let _ = writeln!(out, "  join round-trip: {}", ok(d.verification.join_roundtrip));
    let _ = writeln!(out, "  recomposition: {}", ok(d.verification.recomposition));
    if let Some(m) = d.maximality {
        let _ = writeln!(out, "  maximality (brute force): {}", ok(m));
    }
    if let Some(m) = d.minimality {
        let _ = writeln!(out, "  minimality (brute force): {}", ok(m));
    }
}

fn run_chart(args: &ChartArgs) -> Result<(i32, String)> {
    let relation = text::parse_file(&args.input, args.extend_missing)?;
    let y = split_attrs(&args.bound);
    let bounds = vec![y.clone()];
    let free = free_set(&relation, &bounds, &args.free);
    let chart = Chart::build(&relation, &y, &free)?;
    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_HEADER}");
    let _ = writeln!(out, "command: chart");
    let _ = writeln!(out, "input: {}", args.input.display());
    let _ = writeln!(out, "bound: {}", y.join(","));
    let _ = writeln!(out, "free: {}", free.join(","));
    out.push('\n');
    out.push_str(&chart.render("chart M_ZY"));
    if !chart.c_attrs().is_empty() {
        let groups = chart.subchart_groups()?;
        let _ = writeln!(
            out,
            "diagonal form: {} sub-charts over {}",
            groups.len(),
            chart.c_attrs().join(",")
        );
    }
    Ok((EXIT_OK, out))
}

fn run_check(args: &CheckArgs, kind: DependencyKind) -> Result<(i32, String)> {
    let relation = text::parse_file(&args.input, args.extend_missing)?;
    let lhs = split_attrs(&args.lhs);
    let rhs = split_attrs(&args.rhs);
    let report = match kind {
        DependencyKind::Functional => dependency::holds_fd(&relation, &lhs, &rhs)?,
        DependencyKind::Multivalued => dependency::holds_mvd(&relation, &lhs, &rhs)?,
    };
    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_HEADER}");
    let _ = writeln!(
        out,
        "command: {}",
        match kind {
            DependencyKind::Functional => "check-fd",
            DependencyKind::Multivalued => "check-mvd",
        }
    );
    let _ = writeln!(out, "input: {}", args.input.display());
    render_dep_line(&mut out, &report, &relation);
    let code = if report.holds { EXIT_OK } else { EXIT_VERIFICATION };
    Ok((code, out))
}

fn run_verify(args: &VerifyArgs) -> Result<(i32, String)> {
    let original = text::parse_file(&args.input, args.extend_missing)?;
    let g = text::parse_file(&args.table_g, false)?;
    let h = text::parse_file(&args.table_h, false)?;
    let okay = decompose::verify_tables(&original, &g, &h)?;
    let mut out = String::new();
    let _ = writeln!(out, "{REPORT_HEADER}");
    let _ = writeln!(out, "command: verify");
    let _ = writeln!(out, "original: {}", args.input.display());
    let _ = writeln!(out, "table-g: {}", args.table_g.display());
    let _ = writeln!(out, "table-h: {}", args.table_h.display());
    let _ = writeln!(out, "join round-trip: {}", ok(okay));
    let _ = writeln!(out, "result: {}", if okay { "PASS" } else { "FAIL" });
    Ok((if okay { EXIT_OK } else { EXIT_VERIFICATION }, out))
}
