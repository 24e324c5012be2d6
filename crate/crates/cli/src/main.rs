use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use easyqg::conditions::{category_generators, check_c2, condition_report, Bounds, Status};
use easyqg::fusion::{Family, FusionError, FusionRing};
use easyqg::ktheory::{k_groups, KTheoryError};
use easyqg::linear::{intertwiner_dim, LinearError};
use easyqg::partition::{
    generate_category, k_param, noncrossing_colored, CategoryConfig, Color, ColoredPartition, Corner,
    ParsePartitionError, PartitionCategorySample, PartitionError,
};
use serde::Serialize;
use serde_json::{json, Value};

/// Exact computations for the free easy quantum groups.
#[derive(Parser)]
#[command(name = "easyqg", version)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Write the result here instead of stdout.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on partition literals such as `P(2,0;ww;;{{1,2}})`.
    #[command(subcommand)]
    Partition(PartitionCmd),
    /// Bounded closure of a family's category of partitions.
    Category {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        bound: PointBound,
    },
    /// Fusion rules of a family.
    #[command(subcommand)]
    Fusion(FusionCmd),
    /// Conditions (C1)/(C2) on the fusion ring and (C_P1)/(C_P2) on the category.
    Conditions {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 6, value_parser = positive)]
        degree_cap: usize,
        #[arg(long, default_value_t = 10, value_parser = positive)]
        level_cap: usize,
        #[command(flatten)]
        bound: PointBound,
        /// Matrix size for the direct (C_P1) search.
        #[arg(long, default_value_t = 2, value_parser = positive)]
        n: usize,
    },
    /// Inductive limit of the fusion ring along the fundamental representation.
    Ktheory {
        #[command(flatten)]
        family: FamilyArgs,
        /// Number of connecting steps.
        #[arg(long = "L", default_value_t = 5, value_parser = positive)]
        levels: usize,
        /// Step length in tensor powers; found from (C2) when omitted.
        #[arg(long)]
        k0: Option<usize>,
        /// Exit with status 4 when the limit does not stabilize.
        #[arg(long)]
        strict: bool,
    },
    /// Dimension of `Hom(u^{⊗k}, u^{⊗l})` spanned by the category.
    Intertwiners {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
        #[arg(long, value_parser = positive)]
        n: usize,
        #[command(flatten)]
        bound: PointBound,
    },
}

#[derive(Subcommand)]
enum PartitionCmd {
    /// Stacks the first partition on top of the second.
    Compose { upper: String, lower: String },
    Tensor { left: String, right: String },
    Involute { p: String },
    Rotate {
        p: String,
        #[arg(long, value_enum)]
        corner: CornerArg,
    },
    /// Sizes, colors, noncrossing and projective flags.
    Info { p: String },
    /// Number of noncrossing partitions with all-white points.
    Count {
        k: usize,
        l: usize,
        #[arg(long)]
        pairings: bool,
    },
    /// `k(C)` of a family's category.
    Kparam {
        #[command(flatten)]
        family: FamilyArgs,
        #[command(flatten)]
        bound: PointBound,
    },
}

#[derive(Subcommand)]
enum FusionCmd {
    Decompose {
        #[command(flatten)]
        family: FamilyArgs,
        a: String,
        b: String,
    },
    /// The `l`-th tensor power of the fundamental representation.
    Power {
        #[command(flatten)]
        family: FamilyArgs,
        l: usize,
    },
    Degree {
        #[command(flatten)]
        family: FamilyArgs,
        label: String,
        #[arg(long, default_value_t = 24)]
        level_cap: usize,
    },
    Chaingroup {
        #[command(flatten)]
        family: FamilyArgs,
        #[arg(long, default_value_t = 16, value_parser = positive)]
        level_cap: usize,
    },
    Dim {
        #[command(flatten)]
        family: FamilyArgs,
        label: String,
        #[arg(long)]
        n: usize,
    },
}

#[derive(Args, Clone)]
struct FamilyArgs {
    /// One of O+, S+, U+, H+.
    #[arg(long)]
    family: String,
    /// Modulus of H+.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    s: Option<u32>,
}

#[derive(Args, Clone, Copy)]
struct PointBound {
    #[arg(long, env = "EASYQG_MAX_POINTS", default_value_t = 8, value_parser = positive)]
    max_points: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum CornerArg {
    UpperLeft,
    UpperRight,
    LowerLeft,
    LowerRight,
}

impl From<CornerArg> for Corner {
    fn from(c: CornerArg) -> Self {
        match c {
            CornerArg::UpperLeft => Corner::UpperLeft,
            CornerArg::UpperRight => Corner::UpperRight,
            CornerArg::LowerLeft => Corner::LowerLeft,
            CornerArg::LowerRight => Corner::LowerRight,
        }
    }
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

/// Exit status 2 for unparsable input, 3 for violated preconditions, 4 for
/// a non-stabilizing limit under `--strict`.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn parse(e: impl std::fmt::Display) -> Self {
        Failure { code: 2, message: e.to_string() }
    }

    fn precondition(e: impl std::fmt::Display) -> Self {
        Failure { code: 3, message: e.to_string() }
    }
}

impl From<ParsePartitionError> for Failure {
    fn from(e: ParsePartitionError) -> Self {
        Failure::parse(e)
    }
}

impl From<PartitionError> for Failure {
    fn from(e: PartitionError) -> Self {
        Failure::precondition(e)
    }
}

impl From<FusionError> for Failure {
    fn from(e: FusionError) -> Self {
        match e {
            FusionError::InvalidLabel(_) => Failure::parse(e),
            _ => Failure::precondition(e),
        }
    }
}

impl From<LinearError> for Failure {
    fn from(e: LinearError) -> Self {
        Failure::precondition(e)
    }
}

impl From<KTheoryError> for Failure {
    fn from(e: KTheoryError) -> Self {
        match e {
            KTheoryError::Fusion(f) => f.into(),
            other => Failure::precondition(other),
        }
    }
}

/// A result in both renderings; JSON is the stable one.
struct Output {
    json: Value,
    text: String,
    code: u8,
}

impl Output {
    fn new(json: impl Serialize, text: impl Into<String>) -> Self {
        Output {
            json: serde_json::to_value(json).expect("plain data serializes"),
            text: text.into(),
            code: 0,
        }
    }
}

impl FamilyArgs {
    fn family(&self) -> Result<Family, Failure> {
        if self.family == "H+" && self.s.is_none() {
            return Err(Failure::parse("H+ needs --s"));
        }
        Family::parse(&self.family, self.s).map_err(Failure::parse)
    }

    fn ring(&self) -> Result<FusionRing, Failure> {
        Ok(FusionRing::new(self.family()?))
    }

    fn sample(&self, bound: PointBound) -> Result<PartitionCategorySample, Failure> {
        let gens = category_generators(self.family()?);
        Ok(generate_category(&gens, CategoryConfig::new(bound.max_points))?)
    }
}

fn literal(text: &str) -> Result<ColoredPartition, Failure> {
    Ok(text.parse::<ColoredPartition>()?)
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Holds => "holds",
        Status::Fails => "fails",
        Status::Undetermined => "undetermined",
    }
}

fn partition(cmd: PartitionCmd) -> Result<Output, Failure> {
    Ok(match cmd {
        PartitionCmd::Compose { upper, lower } => {
            let (p, q) = (literal(&upper)?, literal(&lower)?);
            let (qp, b) = q.compose(&p)?;
            Output::new(json!({ "result": qp, "b": b }), format!("{qp}\nb = {b}"))
        }
        PartitionCmd::Tensor { left, right } => {
            let r = literal(&left)?.tensor(&literal(&right)?);
            Output::new(json!({ "result": r }), r.to_string())
        }
        PartitionCmd::Involute { p } => {
            let r = literal(&p)?.involute();
            Output::new(json!({ "result": r }), r.to_string())
        }
        PartitionCmd::Rotate { p, corner } => {
            let r = literal(&p)?.rotate(corner.into())?;
            Output::new(json!({ "result": r }), r.to_string())
        }
        PartitionCmd::Info { p } => {
            let p = literal(&p)?;
            let counts = p.color_counts();
            let info = json!({
                "partition": p,
                "k": p.k(),
                "l": p.l(),
                "blocks": p.blocks().len(),
                "noncrossing": p.is_noncrossing(),
                "projective": p.is_projective(),
                "color_counts": counts,
            });
            let text = format!(
                "{p}\nk = {}, l = {}, blocks = {}\nnoncrossing: {}\nprojective: {}\nc = {} (white {}, black {})",
                p.k(),
                p.l(),
                p.blocks().len(),
                p.is_noncrossing(),
                p.is_projective(),
                counts.c,
                counts.c_white,
                counts.c_black
            );
            Output::new(info, text)
        }
        PartitionCmd::Count { k, l, pairings } => {
            if k + l > 16 {
                return Err(Failure::precondition("at most 16 points"));
            }
            let n = noncrossing_colored(&vec![Color::White; k], &vec![Color::White; l], pairings).len();
            Output::new(json!({ "k": k, "l": l, "pairings": pairings, "count": n }), n.to_string())
        }
        PartitionCmd::Kparam { family, bound } => {
            let sample = family.sample(bound)?;
            let k = k_param(&sample);
            let note = if k.within_bound { " (within bound)" } else { "" };
            Output::new(k, format!("{}{note}", k.value))
        }
    })
}

fn fusion(cmd: FusionCmd) -> Result<Output, Failure> {
    Ok(match cmd {
        FusionCmd::Decompose { family, a, b } => {
            let ring = family.ring()?;
            let v = ring.decompose(&ring.parse_label(&a)?, &ring.parse_label(&b)?)?;
            Output::new(&v, v.to_string())
        }
        FusionCmd::Power { family, l } => {
            let v = family.ring()?.power(l);
            Output::new(&*v, v.to_string())
        }
        FusionCmd::Degree { family, label, level_cap } => {
            let ring = family.ring()?;
            let label = ring.parse_label(&label)?;
            let d = ring.degree(&label, level_cap)?;
            Output::new(json!({ "label": label, "degree": d }), d.to_string())
        }
        FusionCmd::Chaingroup { family, level_cap } => {
            let cg = family.ring()?.chain_group(level_cap);
            let text = if cg.order == 0 {
                format!("undetermined: every level up to {level_cap} opened a new class")
            } else {
                cg.order.to_string()
            };
            Output::new(&cg, text)
        }
        FusionCmd::Dim { family, label, n } => {
            let ring = family.ring()?;
            let label = ring.parse_label(&label)?;
            let d = ring.dim(&label, n)?;
            Output::new(json!({ "label": label, "n": n, "dim": d.to_string() }), d.to_string())
        }
    })
}

fn conditions(
    family: FamilyArgs,
    degree_cap: usize,
    level_cap: usize,
    bound: PointBound,
    n: usize,
) -> Result<Output, Failure> {
    let ring = family.ring()?;
    let sample = family.sample(bound)?;
    let bounds = Bounds {
        degree_cap,
        level_cap,
        max_points: bound.max_points,
    };
    let rep = condition_report(&ring, &sample, bounds, n)?;
    let pair = |n: Option<u64>, k0: Option<u64>| match (n, k0) {
        (Some(n), Some(k0)) => format!(" with (N, k0) = ({n}, {k0})"),
        (None, Some(k0)) => format!(" with k0 = {k0}"),
        _ => String::new(),
    };
    let mut text = format!("{}\n", rep.family);
    writeln!(text, "C1: {}", status(rep.c1.status)).unwrap();
    writeln!(text, "C2: {}{}", status(rep.c2.status), pair(rep.c2.n, rep.c2.k0)).unwrap();
    writeln!(text, "k(C) = {}", rep.cp.k.value).unwrap();
    writeln!(text, "CP1: {}", status(rep.cp.cp1)).unwrap();
    writeln!(text, "CP2: {}{}", status(rep.cp.cp2), pair(rep.cp.n, rep.cp.k0)).unwrap();
    write!(text, "consistent: {}", rep.consistent).unwrap();
    Ok(Output::new(&rep, text))
}

fn ktheory(family: FamilyArgs, levels: usize, k0: Option<usize>, strict: bool) -> Result<Output, Failure> {
    let ring = family.ring()?;
    let k0 = match k0 {
        Some(0) => return Err(Failure::precondition("k0 must be positive")),
        Some(k0) => k0,
        None => {
            let c2 = check_c2(&ring, 12);
            match (c2.status, c2.k0) {
                (Status::Holds, Some(k0)) => k0 as usize,
                _ => {
                    return Err(Failure::precondition(format!(
                        "{} does not satisfy (C2) within 12 levels; pass --k0",
                        ring.family()
                    )))
                }
            }
        }
    };
    let rep = k_groups(&ring, &ring.fundamental(), k0, levels)?;
    let mut text = format!("{} with k0 = {k0}\n", rep.family);
    for lvl in &rep.levels {
        writeln!(
            text,
            "level {}: basis {}, coker {}, ker rank {}",
            lvl.level, lvl.basis_size, lvl.coker, lvl.ker_rank
        )
        .unwrap();
    }
    if let Some(k0_group) = &rep.k0_group {
        let unit: Vec<String> = rep.unit_class.iter().map(|x| x.to_string()).collect();
        writeln!(text, "K0 = {k0_group}, unit class [{}]", unit.join(", ")).unwrap();
    } else {
        writeln!(text, "K0 not stabilized by level {levels}").unwrap();
        if rep.free_increasing {
            writeln!(text, "cokernels free of strictly increasing rank").unwrap();
        }
    }
    write!(text, "K1 = {}", rep.k1).unwrap();
    let mut out = Output::new(&rep, text);
    if strict && rep.non_stabilizing() {
        out.code = 4;
    }
    Ok(out)
}

fn intertwiners(family: FamilyArgs, k: usize, l: usize, n: usize, bound: PointBound) -> Result<Output, Failure> {
    let sample = family.sample(bound)?;
    let space = intertwiner_dim(&sample, k, l, n)?;
    let text = format!("dim = {} ({} candidate partitions)", space.dim, space.candidates);
    Ok(Output::new(&space, text))
}

fn run(command: Command) -> Result<Output, Failure> {
    match command {
        Command::Partition(cmd) => partition(cmd),
        Command::Category { family, bound } => {
            let sample = family.sample(bound)?;
            let k = k_param(&sample);
            let info = json!({
                "family": family.family()?.to_string(),
                "max_points": sample.max_points(),
                "members": sample.len(),
                "saturated": sample.saturated(),
                "passes": sample.passes(),
                "k": k,
            });
            let text = format!(
                "{} members with ≤ {} points, saturated: {}, k(C) = {}",
                sample.len(),
                sample.max_points(),
                sample.saturated(),
                k.value
            );
            Ok(Output::new(info, text))
        }
        Command::Fusion(cmd) => fusion(cmd),
        Command::Conditions {
            family,
            degree_cap,
            level_cap,
            bound,
            n,
        } => conditions(family, degree_cap, level_cap, bound, n),
        Command::Ktheory {
            family,
            levels,
            k0,
            strict,
        } => ktheory(family, levels, k0, strict),
        Command::Intertwiners { family, k, l, n, bound } => intertwiners(family, k, l, n, bound),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = match run(cli.command) {
        Ok(out) => out,
        Err(f) => {
            eprintln!("error: {}", f.message);
            return ExitCode::from(f.code);
        }
    };
    let rendered = match cli.format {
        Format::Json => serde_json::to_string_pretty(&out.json).expect("values serialize") + "\n",
        Format::Text => out.text + "\n",
    };
    match cli.output {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, rendered) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::FAILURE;
            }
        }
        None => print!("{rendered}"),
    }
    ExitCode::from(out.code)
}
