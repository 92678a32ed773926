//! Subcommands. Each returns a [`CliError`] whose [`CliError::code`] is the
//! process exit status.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ncsp_core::mssp::bfs_distances;
use ncsp_core::pathunion::format_result;
use ncsp_core::terminals::{genealogy, normalize};
use ncsp_core::verify::{audit, check_isp_preservation, IspMode};
use ncsp_core::{solve, Mode, MsspError, PlanarEmbedding, RotationOrder, SolveError, Vertex};

use crate::bench::{csv_header, csv_row, measure};
use crate::format::{parse_instance, parse_pairs, write_genealogy, write_instance, write_pairs, FormatError, Instance};
use crate::gen::{generate, GenParams, Kind};
use crate::render::render_svg;
use crate::weights::subdivide_weights;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Invalid(String),
    #[error("audit failed")]
    AuditFailed,
}

impl CliError {
    pub fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Io { .. } => 1,
            CliError::Invalid(_) => 2,
            CliError::AuditFailed => 3,
        }
    }
}

fn invalid(path: &Path, e: impl std::fmt::Display) -> CliError {
    CliError::Invalid(format!("{}: {e}", path.display()))
}

fn solve_error(e: SolveError) -> CliError {
    match e {
        SolveError::Mssp(MsspError::IncrementalUnavailable) => CliError::Usage(e.to_string()),
        other => CliError::Invalid(other.to_string()),
    }
}

#[derive(Parser, Debug)]
#[command(name = "ncsp", version, about = "Non-crossing shortest paths between boundary pairs of plane graphs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Generate a random instance and well-formed pairs.
    Gen(GenArgs),
    /// Solve an instance and write lengths, paths and the union.
    Solve(SolveArgs),
    /// Solve, then audit the result against independent oracles.
    Verify(VerifyArgs),
    /// Time the phases on generated grids and print CSV.
    Bench(BenchArgs),
    /// Replace weighted edges by unit paths.
    Subdivide(SubdivideArgs),
    /// Validate an instance (and pairs) and print a short description.
    Check(CheckArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Reference,
    Incremental,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Reference => Mode::Reference,
            ModeArg::Incremental => Mode::Incremental,
        }
    }
}

#[derive(Args, Debug)]
pub struct InputArgs {
    pub instance: PathBuf,
    pub pairs: PathBuf,
    /// Rotation lists in the instance are clockwise.
    #[arg(long)]
    pub cw_rotations: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    /// `width` x `height` grid.
    Grid,
    /// Random triangulated polygon on `n` vertices.
    Disk,
}

#[derive(Args, Debug)]
pub struct GenArgs {
    #[arg(value_enum)]
    pub kind: GenKind,
    /// `width height` for a grid, `n` for a disk.
    #[arg(required = true, num_args = 1..=2)]
    pub size: Vec<usize>,
    /// Probability of a diagonal in each grid cell.
    #[arg(long, default_value_t = 0.0)]
    pub diagonal: f64,
    #[arg(long, short, default_value_t = 1)]
    pub k: usize,
    /// Allow pairs to share terminals.
    #[arg(long)]
    pub shared: bool,
    /// Add random weights in 1..=W.
    #[arg(long, default_value_t = 1)]
    pub max_weight: i64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Instance file.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Pairs file.
    #[arg(long, short)]
    pub pairs: PathBuf,
}

#[derive(Args, Debug)]
pub struct SolveArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Reference)]
    pub mode: ModeArg,
    /// Result file (stdout if absent).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
    /// Include `path i:` lines.
    #[arg(long)]
    pub paths: bool,
    /// Write an SVG drawing (instance must carry coordinates).
    #[arg(long)]
    pub render: Option<PathBuf>,
    /// Write the genealogy tree as `i parent` lines.
    #[arg(long)]
    pub genealogy: Option<PathBuf>,
    /// Write the subgraph timeline as `edge u v stamp` lines.
    #[arg(long)]
    pub timeline: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub input: InputArgs,
    #[arg(long, value_enum, default_value_t = ModeArg::Reference)]
    pub mode: ModeArg,
    /// Sampled distance-preservation triples.
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Check every vertex pair of every region (n ≤ 200).
    #[arg(long)]
    pub exhaustive_isp: bool,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Grid sides; each grid is side x side.
    #[arg(long, value_delimiter = ',', default_values_t = [100usize, 200, 400, 800])]
    pub sides: Vec<usize>,
    /// `sqrt` for k = ⌈√n⌉, or a fixed number.
    #[arg(long, default_value = "sqrt")]
    pub k_rule: String,
    #[arg(long, value_enum, default_value_t = ModeArg::Reference)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 3)]
    pub reps: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 0.0)]
    pub diagonal: f64,
    /// CSV file (stdout if absent).
    #[arg(long, short)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct SubdivideArgs {
    pub instance: PathBuf,
    #[arg(long)]
    pub cw_rotations: bool,
    /// Most fresh vertices allowed.
    #[arg(long, default_value_t = 10_000_000)]
    pub cap: u64,
    #[arg(long, short)]
    pub out: PathBuf,
    /// Vertex map as `old new` lines.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    pub instance: PathBuf,
    pub pairs: Option<PathBuf>,
    #[arg(long)]
    pub cw_rotations: bool,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_owned(), source })
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => write(p, text),
        None => {
            let _ = std::io::stdout().write_all(text.as_bytes());
            Ok(())
        }
    }
}

fn order(cw: bool) -> RotationOrder {
    if cw {
        RotationOrder::Cw
    } else {
        RotationOrder::Ccw
    }
}

pub fn load_instance(path: &Path, cw: bool) -> Result<(Instance, PlanarEmbedding), CliError> {
    let inst = parse_instance(&read(path)?, order(cw)).map_err(|e| invalid(path, e))?;
    let emb = inst.embed().map_err(|e| invalid(path, FormatError::Embedding(e)))?;
    Ok((inst, emb))
}

fn load(input: &InputArgs) -> Result<(Instance, PlanarEmbedding, Vec<(Vertex, Vertex)>), CliError> {
    let (inst, emb) = load_instance(&input.instance, input.cw_rotations)?;
    let pairs = parse_pairs(&read(&input.pairs)?, emb.num_vertices()).map_err(|e| invalid(&input.pairs, e))?;
    Ok((inst, emb, pairs))
}

pub fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Gen(a) => cmd_gen(a),
        Command::Solve(a) => cmd_solve(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Subdivide(a) => cmd_subdivide(a),
        Command::Check(a) => cmd_check(a),
    }
}

fn cmd_gen(a: GenArgs) -> Result<(), CliError> {
    let kind = match (a.kind, a.size.as_slice()) {
        (GenKind::Grid, &[width, height]) => Kind::Grid { width, height, diagonal: a.diagonal },
        (GenKind::Disk, &[n]) => Kind::Disk { n },
        (GenKind::Grid, _) => return Err(CliError::Usage("grid needs `width height`".into())),
        (GenKind::Disk, _) => return Err(CliError::Usage("disk needs `n`".into())),
    };
    let params = GenParams { kind, k: a.k, shared: a.shared, max_weight: a.max_weight, seed: a.seed };
    let (inst, pairs) = generate(&params).map_err(|e| CliError::Usage(e.to_string()))?;
    write(&a.out, &write_instance(&inst))?;
    write(&a.pairs, &write_pairs(&pairs))
}

fn cmd_solve(a: SolveArgs) -> Result<(), CliError> {
    let (inst, emb, pairs) = load(&a.input)?;
    let sol = solve(&emb, &pairs, a.mode.into()).map_err(solve_error)?;
    if let Some(p) = &a.render {
        let coords = inst.coords.as_ref().ok_or_else(|| CliError::Usage("--render needs a coords section".into()))?;
        write(p, &render_svg(&emb, coords, Some(&sol)))?;
    }
    if let Some(p) = &a.genealogy {
        write(p, &write_genealogy(&sol.instance, &sol.genealogy))?;
    }
    if let Some(p) = &a.timeline {
        write(p, &sol.timeline.dump(&emb))?;
    }
    emit(a.out.as_deref(), &format_result(&emb, &sol.union, &sol.paths, a.paths))
}

fn cmd_verify(a: VerifyArgs) -> Result<(), CliError> {
    let (_, emb, pairs) = load(&a.input)?;
    if a.exhaustive_isp && emb.num_vertices() > 200 {
        return Err(CliError::Usage(format!("--exhaustive-isp is limited to n ≤ 200 (n = {})", emb.num_vertices())));
    }
    let sol = solve(&emb, &pairs, a.mode.into()).map_err(solve_error)?;
    let mut report = audit(&emb, &sol.instance, &sol.genealogy, &sol.union, &sol.paths);
    let steps: Vec<usize> = (1..=sol.instance.len()).collect();
    let mode = if a.exhaustive_isp { IspMode::Exhaustive } else { IspMode::Sampled { samples: a.samples } };
    let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
    report.checks.push(check_isp_preservation(&emb, &sol.timeline, &steps, mode, &mut rng));
    print!("{}", report.summary());
    // Input-order lengths against plain BFS, for the record.
    let lens = sol.input_lengths();
    let mismatched = pairs.iter().zip(&lens).filter(|(&(s, t), &l)| bfs_distances(&emb, s)[t as usize] as usize != l).count();
    println!("lengths {} {}", if mismatched == 0 { "pass" } else { "fail" }, pairs.len());
    if report.passed() && mismatched == 0 {
        Ok(())
    } else {
        Err(CliError::AuditFailed)
    }
}

fn cmd_bench(a: BenchArgs) -> Result<(), CliError> {
    let mut out = csv_header();
    for &side in &a.sides {
        let n = side * side;
        let k = match a.k_rule.as_str() {
            "sqrt" => (n as f64).sqrt().ceil() as usize,
            s => s.parse().map_err(|_| CliError::Usage(format!("bad --k-rule `{s}`")))?,
        };
        let params = GenParams {
            kind: Kind::Grid { width: side, height: side, diagonal: a.diagonal },
            k,
            shared: false,
            max_weight: 1,
            seed: a.seed,
        };
        let (inst, pairs) = generate(&params).map_err(|e| CliError::Usage(e.to_string()))?;
        let emb = inst.embed().expect("generated instance");
        let rec = measure(&emb, &pairs, a.mode.into(), a.reps, &format!("grid{side}"), a.seed).map_err(solve_error)?;
        out.push_str(&csv_row(&rec));
    }
    emit(a.out.as_deref(), &out)
}

fn cmd_subdivide(a: SubdivideArgs) -> Result<(), CliError> {
    let (inst, _) = load_instance(&a.instance, a.cw_rotations)?;
    let sub = subdivide_weights(&inst, a.cap).map_err(|e| invalid(&a.instance, e))?;
    write(&a.out, &write_instance(&sub.instance))?;
    if let Some(p) = &a.map {
        let text: String = sub.map.iter().enumerate().map(|(v, w)| format!("{v} {w}\n")).collect();
        write(p, &text)?;
    }
    Ok(())
}

fn cmd_check(a: CheckArgs) -> Result<(), CliError> {
    let (_, emb) = load_instance(&a.instance, a.cw_rotations)?;
    println!(
        "vertices {} edges {} faces {} boundary {}",
        emb.num_vertices(),
        emb.num_edges(),
        emb.face_count(),
        emb.outer().len()
    );
    if let Some(p) = &a.pairs {
        let pairs = parse_pairs(&read(p)?, emb.num_vertices()).map_err(|e| invalid(p, e))?;
        let inst = normalize(&emb, &pairs).map_err(|e| invalid(p, e))?;
        let gen = genealogy(&inst).map_err(|e| invalid(p, e))?;
        println!("pairs {} well-formed", pairs.len());
        print!("{}", write_genealogy(&inst, &gen));
    }
    Ok(())
}
