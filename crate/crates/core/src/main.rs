use std::fs;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};

use polymin::baseline::douglas_peucker;
use polymin::bench::{bench, to_csv};
use polymin::dp::Compressor;
use polymin::generate::{generate_arc, generate_brownian};
use polymin::io::{parse, serialize};
use polymin::ortho::{rotation_search, solve_ortho, strip_zero_segments};
use polymin::svg::render_svg;
use polymin::{
    compress, CompressedResult, EndpointDirs, Error, Format, OrthoConfig, Polyline,
    PolylineDocument, SolveConfig,
};

#[derive(Parser)]
#[command(name = "polymin", version, about = "Compress polylines onto a lattice of candidate vertices")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Compress every polyline of the input.
    Compress(CompressArgs),
    /// Write a synthetic polyline.
    Generate {
        #[command(subcommand)]
        kind: GenKind,
        #[command(flatten)]
        out: OutArgs,
    },
    /// Time compression of Brownian walks and print CSV records.
    Bench(BenchArgs),
    /// Douglas-Peucker simplification of every polyline of the input.
    BaselineDp {
        #[command(flatten)]
        input: InArgs,
        #[arg(long, short = 't')]
        tolerance: f64,
        #[command(flatten)]
        out: OutArgs,
    },
}

#[derive(Args)]
struct InArgs {
    /// Input file; stdin when absent or "-".
    input: Option<PathBuf>,
    /// Input format; guessed from the extension, otherwise csv.
    #[arg(long)]
    format: Option<Format>,
    /// Treat every input polyline as closed.
    #[arg(long)]
    closed: bool,
}

#[derive(Args)]
struct OutArgs {
    /// Output file; stdout when absent.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    /// Output format; defaults to the input format (csv for generated data).
    #[arg(long, global = true)]
    output_format: Option<Format>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Free,
    Ortho,
    Diag45,
}

#[derive(Clone, Copy, ValueEnum)]
enum Endpoint {
    Four,
    Eight,
}

#[derive(Args)]
struct CompressArgs {
    #[command(flatten)]
    input: InArgs,
    #[arg(long, short = 't')]
    tolerance: f64,
    /// Lattice quantization as a fraction of the tolerance.
    #[arg(long, default_value_t = 0.3)]
    q: f64,
    #[arg(long, value_enum, default_value_t = Mode::Free)]
    mode: Mode,
    /// Directions tabulated for the reversal test (free mode).
    #[arg(long, default_value_t = 64)]
    directions: usize,
    #[arg(long)]
    no_prune: bool,
    /// Endpoint test region (free mode).
    #[arg(long, value_enum, default_value_t = Endpoint::Eight)]
    endpoint_dirs: Endpoint,
    /// Subdivide source segments longer than this first.
    #[arg(long)]
    densify: Option<f64>,
    /// Remove zero-length segments and merge collinear neighbours afterwards.
    #[arg(long)]
    strip_zero_segments: bool,
    /// Rotation search step in degrees (ortho/diag45).
    #[arg(long, default_value_t = 1.0)]
    rotation_step: f64,
    /// Fixed lattice rotation in degrees instead of a search (ortho/diag45).
    #[arg(long)]
    rotation: Option<f64>,
    /// Forbid 135-degree turns in diag45 mode.
    #[arg(long)]
    forbid_sharp: bool,
    /// Also plot the first polyline and its compression to this file.
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Draw the considered locations in the plot (free mode, open input).
    #[arg(long)]
    svg_candidates: bool,
    #[command(flatten)]
    out: OutArgs,
}

#[derive(Subcommand)]
enum GenKind {
    /// Random walk with normal increments.
    Brownian {
        #[arg(long, short = 'n', default_value_t = 10_000)]
        n: usize,
        #[arg(long, default_value_t = 0.25)]
        sigma: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Evenly sampled arc with disk noise.
    Arc {
        #[arg(long, default_value_t = 1.0)]
        radius: f64,
        #[arg(long, default_value_t = 90.0)]
        sweep: f64,
        #[arg(long, short = 'n', default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 0.01)]
        noise: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [1000, 2000, 5000, 10_000])]
    sizes: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [1])]
    seeds: Vec<u64>,
    #[arg(long, short = 't', default_value_t = 1.0)]
    tolerance: f64,
    #[arg(long, default_value_t = 0.3)]
    q: f64,
    #[arg(long, default_value_t = 0.25)]
    sigma: f64,
    #[arg(long)]
    no_prune: bool,
}

fn read_input(args: &InArgs) -> anyhow::Result<(PolylineDocument, Format)> {
    let format = args
        .format
        .or_else(|| args.input.as_deref().and_then(Format::from_path))
        .unwrap_or(Format::Csv);
    let text = match args.input.as_deref() {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
    };
    let mut doc = parse(&text, format)?;
    if args.closed {
        for e in &mut doc.entries {
            if !e.polyline.is_closed() {
                e.polyline = Polyline::closed(e.polyline.vertices().to_vec())?;
            }
        }
    }
    Ok((doc, format))
}

fn write_output(out: &OutArgs, text: &str) -> anyhow::Result<()> {
    match &out.output {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn compress_one(poly: &Polyline, a: &CompressArgs) -> anyhow::Result<CompressedResult> {
    let r = match a.mode {
        Mode::Free => {
            let mut cfg = SolveConfig::new(a.tolerance)
                .with_q(a.q)
                .with_directions(a.directions)
                .with_prune(!a.no_prune)
                .with_endpoint_dirs(match a.endpoint_dirs {
                    Endpoint::Four => EndpointDirs::Four,
                    Endpoint::Eight => EndpointDirs::Eight,
                });
            cfg.densify = a.densify;
            compress(poly, &cfg)?
        }
        Mode::Ortho | Mode::Diag45 => {
            let m = if matches!(a.mode, Mode::Ortho) { 4 } else { 8 };
            let mut cfg = OrthoConfig::new(m, a.tolerance)
                .with_q(a.q)
                .with_forbid_sharp(a.forbid_sharp)
                .with_rotation_step(a.rotation_step);
            cfg.densify = a.densify;
            match a.rotation {
                Some(deg) => solve_ortho(poly, &cfg, deg.to_radians())?,
                None => {
                    let (deg, r) = rotation_search(poly, &cfg)?;
                    eprintln!("rotation {deg} deg");
                    r
                }
            }
        }
    };
    Ok(if a.strip_zero_segments { strip_zero_segments(&r) } else { r })
}

fn run_compress(a: &CompressArgs) -> anyhow::Result<()> {
    let (doc, in_format) = read_input(&a.input)?;
    if doc.is_empty() {
        bail!("input holds no polylines");
    }
    let mut out = PolylineDocument::new();
    for e in &doc.entries {
        let r = compress_one(&e.polyline, a)?;
        eprintln!(
            "{}: {} -> {} vertices",
            e.id.as_deref().unwrap_or("-"),
            e.polyline.len(),
            r.polyline().len()
        );
        out.push(e.id.clone(), r.polyline());
    }
    if let Some(path) = &a.svg {
        let src = &doc.entries[0].polyline;
        let cands = if a.svg_candidates && matches!(a.mode, Mode::Free) && !src.is_closed() {
            let cfg = SolveConfig::new(a.tolerance).with_q(a.q);
            Some(Compressor::new(src.vertices().to_vec(), &cfg)?.candidates().clone())
        } else {
            None
        };
        fs::write(path, render_svg(src, &out.entries[0].polyline, cands.as_ref()))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    write_output(&a.out, &serialize(&out, a.out.output_format.unwrap_or(in_format)))
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.cmd {
        Cmd::Compress(a) => run_compress(&a),
        Cmd::Generate { kind, out } => {
            let poly = match kind {
                GenKind::Brownian { n, sigma, seed } => generate_brownian(n, sigma, seed)?,
                GenKind::Arc { radius, sweep, n, noise, seed } => {
                    generate_arc(radius, sweep, n, noise, seed)?
                }
            };
            let doc = PolylineDocument::single(poly);
            write_output(&out, &serialize(&doc, out.output_format.unwrap_or(Format::Csv)))
        }
        Cmd::Bench(b) => {
            let cfg = SolveConfig::new(b.tolerance).with_q(b.q).with_prune(!b.no_prune);
            let records = bench(&b.sizes, &cfg, &b.seeds, b.sigma)?;
            print!("{}", to_csv(&records));
            Ok(())
        }
        Cmd::BaselineDp { input, tolerance, out } => {
            if !(tolerance > 0.0) {
                bail!(Error::InvalidParameter(format!("tolerance must be positive, got {tolerance}")));
            }
            let (doc, in_format) = read_input(&input)?;
            let mut res = PolylineDocument::new();
            for e in &doc.entries {
                res.push(e.id.clone(), douglas_peucker(&e.polyline, tolerance));
            }
            write_output(&out, &serialize(&res, out.output_format.unwrap_or(in_format)))
        }
    }
}

fn main() -> ExitCode {
    // exit code 2 is reserved for unreadable input data
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::FAILURE } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(Error::Parse { .. }) => ExitCode::from(2),
                Some(Error::NoSolution { .. }) => ExitCode::from(3),
                _ => ExitCode::FAILURE,
            }
        }
    }
}
