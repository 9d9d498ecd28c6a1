//! `fiberscope`: build type-A buildings, scan their induced subcomplexes and
//! emit legal-coset certificates.
//!
//! Exit codes: 0 success, 2 not found / not implied / rejected, 3 budget
//! exceeded, 4 input error.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use fiberscope::building::Building;
use fiberscope::davis_morse::{
    asc_desc_link, assign_heights, commutator_additivity, racg_ball, superlevel_homology,
};
use fiberscope::flag_complex::{complex_hash, parse_complex, write_complex};
use fiberscope::jnw::{
    census, coset_search, estimate_fraction, exact_fraction, move_system_from_coloring,
    pigeonhole_check, verify_certificate, Counting, FiberCertificate, Legality, Mode, MoveSystem,
    Predicate, Strategy, Verdict,
};
use fiberscope::magic_cube::cube_from_panels;
use fiberscope::{families, Error, FlagComplex, VertexSet};

const ESTIMATE_HEADER: &str = "predicate,samples,seed,p_hat,ci_low,ci_high";

#[derive(Parser)]
#[command(name = "fiberscope", version, about = "Legal cosets, buildings and random induced subcomplexes")]
struct Cli {
    /// Worker threads (default: all cores). Results do not depend on this.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build Δ_{k,p} and print a summary.
    Build {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u32,
        /// Write the complex in text form.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Estimate the fraction of states whose induced subcomplex satisfies a predicate.
    Estimate {
        #[command(flatten)]
        source: Source,
        /// not-connected | not-acyclic:K | trivial-top-homology:D | not-chamber-complex:D
        #[arg(long, default_value = "not-connected")]
        predicate: Predicate,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Count all 2^|V| states instead of sampling.
        #[arg(long)]
        exhaustive: bool,
        /// Append the CSV row here instead of printing it.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a legal coset of the colored move system.
    Certify {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        game: Game,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        strategy: StrategyArg,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Replay a certificate from scratch.
    VerifyCertificate { path: PathBuf },
    /// Legality census over all states, with a legal-coset search on the bitmap.
    Census {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 1)]
        m: usize,
        #[arg(long, default_value_t = Mode::Homological)]
        mode: Mode,
        /// Write a certificate here if a legal coset exists.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compare bad-subcomplex counts with 2^(|V| - χ - 1).
    Pigeonhole {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        game: Game,
        #[arg(long, value_enum, default_value_t = StrategyArg::Exhaustive)]
        counting: StrategyArg,
        #[arg(long, default_value_t = 100_000)]
        samples: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Dump the magic cube of a set of panels as CSV.
    Cube {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        p: u32,
        /// Comma-separated panel indices.
        #[arg(long, value_delimiter = ',', conflicts_with = "chamber")]
        panels: Vec<usize>,
        /// Use the panels of this chamber.
        #[arg(long)]
        chamber: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Cayley ball of W_L with the height function of a state.
    Ball {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = 4)]
        radius: usize,
        /// Initial state as hex (default: empty).
        #[arg(long)]
        state: Option<String>,
        /// Superlevel threshold for the homology line.
        #[arg(long, default_value_t = 0)]
        threshold: i64,
        /// Write the element dump here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct Source {
    /// Rank of the building Δ_{k,p}.
    #[arg(long, requires = "p")]
    k: Option<usize>,
    /// Prime field size of the building.
    #[arg(long, requires = "k")]
    p: Option<u32>,
    /// Complex in text form (`n N`, `e U V`, `label I TEXT`).
    #[arg(long)]
    complex_file: Option<PathBuf>,
    /// Named complex: cycle:N, path:N, discrete:N, simplex:N, octahedron.
    #[arg(long)]
    family: Option<String>,
}

#[derive(Args)]
struct Game {
    /// Legality degree: states must be (m-1)-legal.
    #[arg(long, default_value_t = 1)]
    m: usize,
    #[arg(long, default_value_t = Mode::Homological)]
    mode: Mode,
    #[arg(long)]
    sharply: bool,
}

impl Game {
    fn legality(&self) -> Result<Legality> {
        let mut legality = Legality::new(self.m, self.mode)?;
        legality.sharply = self.sharply;
        Ok(legality)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Exhaustive,
    Sampled,
}

/// A complex with its preferred proper coloring.
struct Loaded {
    complex: FlagComplex,
    coloring: Vec<usize>,
}

impl Loaded {
    fn moves(&self) -> Result<MoveSystem> {
        Ok(move_system_from_coloring(&self.complex, &self.coloring)?)
    }
}

fn load(source: &Source) -> Result<Loaded> {
    let given = [source.k.is_some(), source.complex_file.is_some(), source.family.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(input("give exactly one of --k/--p, --complex-file, --family"));
    }
    if let (Some(k), Some(p)) = (source.k, source.p) {
        let b = Building::type_a(k, p)?;
        return Ok(Loaded {
            coloring: b.type_coloring(),
            complex: b.complex().clone(),
        });
    }
    let complex = if let Some(path) = &source.complex_file {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        parse_complex(&text)?
    } else {
        family(source.family.as_deref().unwrap_or_default())?
    };
    let (_, coloring) = complex.chromatic_number();
    Ok(Loaded { complex, coloring })
}

fn family(spec: &str) -> Result<FlagComplex> {
    let (name, arg) = spec.split_once(':').unwrap_or((spec, ""));
    let size = || -> Result<usize> {
        arg.parse().map_err(|_| input(format!("family {name} needs a size, e.g. {name}:4")))
    };
    Ok(match name {
        "cycle" => {
            let n = size()?;
            if n < 3 {
                return Err(input("cycle needs at least 3 vertices"));
            }
            families::cycle(n)
        }
        "path" => families::path(size()?),
        "discrete" => families::discrete(size()?),
        "simplex" => families::simplex(size()?),
        "octahedron" => families::octahedron(),
        _ => return Err(input(format!("unknown family {name:?}"))),
    })
}

/// Marks an error as bad input (exit code 4).
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input(msg: impl Into<String>) -> anyhow::Error {
    anyhow::Error::new(InputError(msg.into()))
}

fn write_or_print(out: Option<&PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_build(k: usize, p: u32, out: Option<PathBuf>) -> Result<ExitCode> {
    let b = Building::type_a(k, p)?;
    let l = b.complex();
    let f: Vec<String> = l.f_vector().iter().map(u64::to_string).collect();
    let (girth, square_free) = l.girth_and_square_free();
    println!("vertices {}", l.vertex_count());
    println!("edges {}", l.edge_count());
    println!("f_vector {}", f.join(","));
    println!("dimension {}", l.dimension());
    println!("chambers {}", b.chamber_count());
    println!("chromatic_number {}", l.chromatic_number().0);
    println!("kappa_2 {}", l.charney_davis(2));
    println!("girth {}", girth.map_or("none".to_string(), |g| g.to_string()));
    println!("square_free {square_free}");
    println!("thickness {}", b.thickness());
    println!("diameter {}", b.diameter());
    println!("complex_hash {}", complex_hash(l));
    if let Some(path) = out {
        write_or_print(Some(&path), &write_complex(l))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_estimate(
    source: Source,
    predicate: Predicate,
    samples: u64,
    seed: u64,
    exhaustive: bool,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let l = load(&source)?.complex;
    let (est, seed_col) = if exhaustive {
        (exact_fraction(&l, predicate)?, "exhaustive".to_string())
    } else {
        if samples == 0 {
            return Err(input("--samples must be positive"));
        }
        (estimate_fraction(&l, predicate, samples, seed), seed.to_string())
    };
    let row = format!(
        "{predicate},{},{seed_col},{},{},{}\n",
        est.samples, est.p_hat, est.ci_low, est.ci_high
    );
    match out {
        Some(path) => {
            let mut text = if path.exists() {
                fs::read_to_string(&path)?
            } else {
                format!("{ESTIMATE_HEADER}\n")
            };
            text.push_str(&row);
            fs::write(&path, text)?;
        }
        None => print!("{ESTIMATE_HEADER}\n{row}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_certify(
    source: Source,
    game: Game,
    strategy: StrategyArg,
    samples: u64,
    seed: u64,
    out: Option<PathBuf>,
) -> Result<ExitCode> {
    let loaded = load(&source)?;
    let moves = loaded.moves()?;
    let strategy = match strategy {
        StrategyArg::Exhaustive => Strategy::Exhaustive,
        StrategyArg::Sampled => Strategy::Sampled { count: samples, seed },
    };
    match coset_search(&loaded.complex, &moves, game.legality()?, strategy)? {
        Some(cert) => {
            verify_certificate(&cert)?;
            let json = cert.to_json()? + "\n";
            match &out {
                Some(path) => {
                    write_or_print(Some(path), &json)?;
                    println!("FOUND rep={} members={}", cert.rep_bits_hex, cert.evidence.len());
                }
                None => print!("{json}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        None => {
            let scope = match strategy {
                Strategy::Exhaustive => "exhaustive".to_string(),
                Strategy::Sampled { count, seed } => format!("sampled count={count} seed={seed}"),
            };
            println!(
                "NOT-FOUND m={} mode={} rank={} vertices={} search={scope}",
                game.m,
                game.mode,
                moves.rank(),
                loaded.complex.vertex_count()
            );
            Ok(ExitCode::from(2))
        }
    }
}

fn cmd_verify(path: PathBuf) -> Result<ExitCode> {
    let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
    let cert = FiberCertificate::from_json(&text).map_err(|e| input(format!("not a certificate: {e}")))?;
    match verify_certificate(&cert) {
        Ok(()) => {
            println!("PASS {} states replayed", cert.evidence.len());
            Ok(ExitCode::SUCCESS)
        }
        Err(e) => {
            println!("FAIL {e}");
            Ok(ExitCode::from(2))
        }
    }
}

fn cmd_census(source: Source, m: usize, mode: Mode, out: Option<PathBuf>) -> Result<ExitCode> {
    let loaded = load(&source)?;
    let l = &loaded.complex;
    let legality = Legality::new(m, mode)?;
    let c = census(l, legality)?;
    let n = l.vertex_count();
    let chi = l.chromatic_number().0;
    println!("vertices {n}");
    println!("states {}", 1u64 << n);
    println!("not_acyclic {}", c.bad_count);
    println!("legal_states {}", c.legal_count);
    let exponent = n as i64 - chi as i64 - 1;
    println!("threshold 2^{exponent}");
    let implied = exponent >= 0 && (c.bad_count as u128) < 1u128 << exponent;
    println!("pigeonhole {}", if implied { "CERTIFIED" } else { "NOT-IMPLIED" });
    let moves = loaded.moves()?;
    match c.find_legal_coset(&moves) {
        Some(rep) => {
            let cert = FiberCertificate::build(l, &moves, &rep, legality)?;
            verify_certificate(&cert)?;
            println!("legal_coset {}", rep.to_hex());
            if let Some(path) = out {
                write_or_print(Some(&path), &(cert.to_json()? + "\n"))?;
            }
        }
        None => println!("legal_coset none"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_pigeonhole(source: Source, game: Game, counting: StrategyArg, samples: u64, seed: u64) -> Result<ExitCode> {
    let l = load(&source)?.complex;
    let counting = match counting {
        StrategyArg::Exhaustive => Counting::Exhaustive,
        StrategyArg::Sampled => Counting::Sampled { samples, seed },
    };
    let report = pigeonhole_check(&l, game.legality()?, counting)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(match report.verdict {
        Verdict::NotImplied => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    })
}

fn cmd_cube(k: usize, p: u32, panels: Vec<usize>, chamber: Option<usize>, out: Option<PathBuf>) -> Result<ExitCode> {
    let b = Building::type_a(k, p)?;
    let panels = match chamber {
        Some(c) => {
            if c >= b.chamber_count() {
                return Err(Error::UnknownChamber(c).into());
            }
            b.chamber_panels(c).to_vec()
        }
        None if panels.is_empty() => return Err(input("give --panels or --chamber")),
        None => panels,
    };
    let cube = cube_from_panels(&b, &panels)?;
    let csv = cube.to_csv();
    match out {
        Some(path) => {
            write_or_print(Some(&path), &csv)?;
            let weight = cube.verify_magic()?;
            let diagonal = cube.positive_diagonal()?;
            let zero = cube.max_zero_block()?;
            println!("n {} t {} N {weight}", cube.dim(), cube.side());
            println!("positive_diagonal {}", diagonal.m);
            println!("zero_block {} exact={}", zero.k, zero.exact);
        }
        None => print!("{csv}"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_ball(source: Source, radius: usize, state: Option<String>, threshold: i64, out: Option<PathBuf>) -> Result<ExitCode> {
    let loaded = load(&source)?;
    let l = &loaded.complex;
    let n = l.vertex_count();
    let sigma0 = match state {
        Some(hex) => VertexSet::from_hex(n, &hex)?,
        None => VertexSet::empty(n),
    };
    let moves = loaded.moves()?;
    let ball = racg_ball(l, radius)?;
    let heights = assign_heights(&ball, &sigma0, &moves)?;
    let interior: Vec<usize> = (0..ball.len()).filter(|&g| ball.length(g) < radius).collect();
    let mut matched = 0;
    for &g in &interior {
        if asc_desc_link(&ball, &heights, g)?.matches_prediction() {
            matched += 1;
        }
    }
    let superlevel = superlevel_homology(&ball, &heights, threshold);
    let ranks: Vec<String> = superlevel
        .profile
        .degrees
        .iter()
        .map(|d| d.free_rank.to_string())
        .collect();
    println!("elements {}", ball.len());
    println!("cubes {}", ball.cubes().len());
    println!("unit_edges {}", heights.edges_are_unit(&ball));
    println!("squares_consistent {}", heights.squares_consistent(&ball));
    println!("links_match {matched}/{}", interior.len());
    println!("commutator_additive {}", commutator_additivity(&ball, &heights));
    println!(
        "superlevel t={threshold} nonempty={} free_ranks={} truncated={}",
        superlevel.profile.nonempty,
        ranks.join(","),
        superlevel.ball_truncated
    );
    if let Some(path) = out {
        write_or_print(Some(&path), &ball.dump(Some(&heights)))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(w) = cli.workers {
        if w == 0 {
            bail!(input("--workers must be positive"));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(w)
            .build_global()
            .map_err(|e| anyhow!("thread pool: {e}"))?;
    }
    match cli.command {
        Command::Build { k, p, out } => cmd_build(k, p, out),
        Command::Estimate {
            source,
            predicate,
            samples,
            seed,
            exhaustive,
            out,
        } => cmd_estimate(source, predicate, samples, seed, exhaustive, out),
        Command::Certify {
            source,
            game,
            strategy,
            samples,
            seed,
            out,
        } => cmd_certify(source, game, strategy, samples, seed, out),
        Command::VerifyCertificate { path } => cmd_verify(path),
        Command::Census { source, m, mode, out } => cmd_census(source, m, mode, out),
        Command::Pigeonhole {
            source,
            game,
            counting,
            samples,
            seed,
        } => cmd_pigeonhole(source, game, counting, samples, seed),
        Command::Cube {
            k,
            p,
            panels,
            chamber,
            out,
        } => cmd_cube(k, p, panels, chamber, out),
        Command::Ball {
            source,
            radius,
            state,
            threshold,
            out,
        } => cmd_ball(source, radius, state, threshold, out),
    }
}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<InputError>().is_some() {
        return 4;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::BudgetExceeded { .. } | Error::TooLarge { .. } | Error::CapExceeded(_)) => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(4) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
