//! Command-line front end: Bessel-zero tables, free-surface traces,
//! streamline figures, structure synthesis and certification.
//!
//! Exit codes: 0 success, 1 runtime or verification failure, 2 usage or
//! schema error.

mod config;
mod doc;
mod emit;

use clap::{Parser, Subcommand};
use emit::{atomic_write, csv_num, CurveStyle, SvgPlot};
use std::path::PathBuf;
use wavetrap::levelset::{
    find_stagnation, free_surface_trace, trace_level_curve, LevelCurve, SearchBox,
    StagnationPoint,
};
use wavetrap::potential::{psi_heave, FieldPoint, ModeParams};
use wavetrap::specfun::{j0_zero, j1_zero, y1};
use wavetrap::structure::synthesize;
use wavetrap::verify::{verify_structure, Tolerances, TruncationDomain};
use wavetrap::WaveError;

/// Samples within this distance of the ring radius are flagged as clipped:
/// the trace diverges logarithmically there, so their values overflow any
/// fixed plot range as the distance shrinks.
const CLIP_NEIGHBORHOOD: f64 = 0.05;
/// Marching step for figure-quality level curves.
const CURVE_STEP: f64 = 0.02;

#[derive(Parser)]
#[command(name = "wavetrap", version, about = "Builds and certifies axisymmetric wave-trapping structures")]
struct Cli {
    /// Key = value config file; command-line flags override its entries
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Tabulate the Bessel zeros that select ring radii, with asymptotics
    Zeros {
        /// Largest mode index to list
        #[arg(long)]
        n_max: Option<u32>,
    },
    /// Sample the free-surface trace of the stream function to CSV
    Trace {
        #[arg(long)]
        m: Option<u32>,
        /// Heave amplitude H of the modified stream function
        #[arg(long, allow_negative_numbers = true)]
        heave: Option<f64>,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        gravity: Option<f64>,
        /// Upper end of the sampled radial range
        #[arg(long, allow_negative_numbers = true)]
        rho_max: Option<f64>,
        #[arg(long)]
        samples: Option<usize>,
        /// Output CSV path
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Trace level curves (streamlines) to CSV files plus a composite SVG
    Curves {
        #[arg(long)]
        m: Option<u32>,
        #[arg(long)]
        heave: Option<f64>,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        gravity: Option<f64>,
        /// Comma-separated list of levels v
        #[arg(long, allow_hyphen_values = true)]
        levels: Option<String>,
        /// Radial extent searched for free-surface seeds
        #[arg(long)]
        rho_max: Option<f64>,
        /// Output directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Synthesize a trapping structure and write its document and figure
    Build {
        #[arg(long)]
        m: Option<u32>,
        /// Comma-separated heave amplitudes, one per body
        #[arg(long, allow_hyphen_values = true)]
        heave: Option<String>,
        #[arg(long)]
        omega: Option<f64>,
        #[arg(long)]
        gravity: Option<f64>,
        /// Output directory
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every certification check against a structure document
    Verify {
        /// Structure document produced by `build`
        structure: Option<PathBuf>,
        /// Output directory for the report
        #[arg(long)]
        out: Option<PathBuf>,
        /// Kinematic-condition tolerance
        #[arg(long)]
        tol_bc: Option<f64>,
        /// Heave motion-equation tolerance (relative)
        #[arg(long)]
        tol_motion: Option<f64>,
    },
}

/// What went wrong, mapped onto the exit-code contract.
enum Failure {
    /// Bad parameters or malformed input document: exit 2.
    Usage(String),
    /// Runtime error: exit 1.
    Run(String),
    /// Checks ran and failed: exit 1 with no extra message.
    CheckFailed,
}

impl From<WaveError> for Failure {
    fn from(e: WaveError) -> Self {
        match e {
            WaveError::Domain(_) => Failure::Usage(e.to_string()),
            _ => Failure::Run(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Run(e.to_string())
    }
}

fn main() {
    let cli = Cli::parse();
    let cfg = match config::Config::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(2);
        }
    };
    let result = match cli.command {
        Command::Zeros { n_max } => cmd_zeros(cfg.fill(n_max, "n-max").unwrap_or(8)),
        Command::Trace {
            m,
            heave,
            omega,
            gravity,
            rho_max,
            samples,
            out,
        } => cmd_trace(
            cfg.fill(m, "m").unwrap_or(1),
            cfg.fill(heave, "heave").unwrap_or(0.0),
            cfg.fill(omega, "omega").unwrap_or(1.0),
            cfg.fill(gravity, "gravity").unwrap_or(1.0),
            cfg.fill(rho_max, "rho-max"),
            cfg.fill(samples, "samples").unwrap_or(2000),
            cfg.fill(out, "out").unwrap_or_else(|| "trace.csv".into()),
        ),
        Command::Curves {
            m,
            heave,
            omega,
            gravity,
            levels,
            rho_max,
            out,
        } => cmd_curves(
            cfg.fill(m, "m").unwrap_or(1),
            cfg.fill(heave, "heave").unwrap_or(0.0),
            cfg.fill(omega, "omega").unwrap_or(1.0),
            cfg.fill(gravity, "gravity").unwrap_or(1.0),
            cfg.fill(levels, "levels"),
            cfg.fill(rho_max, "rho-max"),
            cfg.fill(out, "out").unwrap_or_else(|| "curves".into()),
        ),
        Command::Build {
            m,
            heave,
            omega,
            gravity,
            out,
        } => cmd_build(
            cfg.fill(m, "m").unwrap_or(1),
            cfg.fill(heave, "heave"),
            cfg.fill(omega, "omega").unwrap_or(1.0),
            cfg.fill(gravity, "gravity").unwrap_or(1.0),
            cfg.fill(out, "out").unwrap_or_else(|| "build".into()),
        ),
        Command::Verify {
            structure,
            out,
            tol_bc,
            tol_motion,
        } => cmd_verify(
            cfg.fill(structure, "structure"),
            cfg.fill(out, "out").unwrap_or_else(|| ".".into()),
            cfg.fill(tol_bc, "tol-bc"),
            cfg.fill(tol_motion, "tol-motion"),
        ),
    };
    match result {
        Ok(()) => {}
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(2);
        }
        Err(Failure::Run(msg)) => {
            eprintln!("error: {msg}");
            std::process::exit(1);
        }
        Err(Failure::CheckFailed) => std::process::exit(1),
    }
}

fn cmd_zeros(n_max: u32) -> Result<(), Failure> {
    if n_max < 1 {
        return Err(Failure::Usage("n-max must be at least 1".into()));
    }
    println!(
        "{:>3} {:>12} {:>12} {:>12} {:>10} {:>13} {:>13}",
        "m", "j_1m", "j_0m", "pi(m+1/4)", "gap", "Y1(j_1m)", "asymptotic"
    );
    for m in 1..=n_max {
        let j1m = j1_zero(m);
        let j0m = j0_zero(m);
        let asym = std::f64::consts::PI * (m as f64 + 0.25);
        let y = y1(j1m);
        let ya = if m % 2 == 1 { 1.0 } else { -1.0 }
            * (2.0 / (std::f64::consts::PI.powi(2) * m as f64)).sqrt();
        println!(
            "{m:>3} {j1m:>12.6} {j0m:>12.6} {asym:>12.6} {:>10.2e} {y:>13.6} {ya:>13.6}",
            (j1m - asym).abs()
        );
    }
    Ok(())
}

fn cmd_trace(
    m: u32,
    heave: f64,
    omega: f64,
    gravity: f64,
    rho_max: Option<f64>,
    samples: usize,
    out: PathBuf,
) -> Result<(), Failure> {
    let mp = ModeParams::new(m, omega, gravity)?;
    let rho_max = rho_max.unwrap_or(3.0 * mp.rho_r);
    if !(rho_max > 0.0) {
        return Err(Failure::Usage(format!(
            "rho-max must be positive, got {rho_max}"
        )));
    }
    let rows = free_surface_trace(&mp, heave, rho_max, samples)?;
    let mut csv = String::from("rho,value,clipped\n");
    for (rho, v) in rows {
        csv.push_str(&format!(
            "{},{},{}\n",
            csv_num(rho),
            csv_num(v),
            u8::from((rho - mp.rho_r).abs() < CLIP_NEIGHBORHOOD)
        ));
    }
    atomic_write(&out, &csv)?;
    println!("wrote {}", out.display());
    Ok(())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>, Failure> {
    s.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| Failure::Usage(format!("bad {what} entry {t:?}")))
        })
        .collect()
}

/// Free-surface crossings of the trace with the level `v`, bisected from
/// sign changes between consecutive samples; the ring guard is skipped.
fn surface_seeds(mp: &ModeParams, heave: f64, v: f64, rho_max: f64) -> Vec<FieldPoint> {
    let f = |rho: f64| -> Option<f64> {
        let p = FieldPoint::new(rho, 0.0).ok()?;
        Some(psi_heave(p, mp, heave).ok()? - v)
    };
    let n = 1200;
    let mut seeds = Vec::new();
    let mut prev: Option<(f64, f64)> = None;
    for i in 1..=n {
        let rho = i as f64 * rho_max / n as f64;
        if (rho - mp.rho_r).abs() < 0.06 {
            prev = None;
            continue;
        }
        let Some(fv) = f(rho) else {
            prev = None;
            continue;
        };
        if let Some((r0, f0)) = prev {
            if f0 == 0.0 {
                seeds.push(r0);
            } else if f0 * fv < 0.0 {
                let (mut a, mut b) = (r0, rho);
                let mut fa = f0;
                for _ in 0..60 {
                    let mid = 0.5 * (a + b);
                    let Some(fm) = f(mid) else { break };
                    if fa * fm <= 0.0 {
                        b = mid;
                    } else {
                        a = mid;
                        fa = fm;
                    }
                }
                seeds.push(0.5 * (a + b));
            }
        }
        prev = Some((rho, fv));
    }
    seeds
        .into_iter()
        .filter_map(|r| FieldPoint::new(r, 0.0).ok())
        .collect()
}

/// Seeds on the level `v` found by bisecting along diagonal rays from the
/// stagnation point; picks up separatrix branches that never reach the
/// free surface.
fn ray_seeds(mp: &ModeParams, heave: f64, v: f64, q: FieldPoint) -> Vec<FieldPoint> {
    let mut seeds = Vec::new();
    let s = std::f64::consts::FRAC_1_SQRT_2;
    for dir in [(s, s), (s, -s), (-s, s), (-s, -s)] {
        let f = |t: f64| -> Option<f64> {
            let p = FieldPoint::new((q.rho + t * dir.0).max(0.0), (q.eta + t * dir.1).min(0.0))
                .ok()?;
            Some(psi_heave(p, mp, heave).ok()? - v)
        };
        let mut prev: Option<(f64, f64)> = None;
        for i in 1..=24 {
            let t = 0.025 * i as f64;
            let Some(fv) = f(t) else { break };
            if let Some((t0, f0)) = prev {
                if f0 * fv < 0.0 {
                    let (mut a, mut b) = (t0, t);
                    let mut fa = f0;
                    for _ in 0..60 {
                        let mid = 0.5 * (a + b);
                        let Some(fm) = f(mid) else { break };
                        if fa * fm <= 0.0 {
                            b = mid;
                        } else {
                            a = mid;
                            fa = fm;
                        }
                    }
                    let t = 0.5 * (a + b);
                    if let Ok(p) = FieldPoint::new(
                        (q.rho + t * dir.0).max(0.0),
                        (q.eta + t * dir.1).min(0.0),
                    ) {
                        seeds.push(p);
                    }
                    break;
                }
            }
            prev = Some((t, fv));
        }
    }
    seeds
}

/// Two traces of the same curve from different seeds produce near-identical
/// endpoints; quantized endpoints (either orientation) deduplicate them.
fn curve_key(c: &LevelCurve) -> (i64, i64, i64, i64) {
    let q = |x: f64| (x * 500.0).round() as i64;
    let first = c.points.first().unwrap();
    let last = c.points.last().unwrap();
    let a = (q(first.rho), q(first.eta));
    let b = (q(last.rho), q(last.eta));
    if a <= b {
        (a.0, a.1, b.0, b.1)
    } else {
        (b.0, b.1, a.0, a.1)
    }
}

fn cmd_curves(
    m: u32,
    heave: f64,
    omega: f64,
    gravity: f64,
    levels: Option<String>,
    rho_max: Option<f64>,
    out: PathBuf,
) -> Result<(), Failure> {
    let mp = ModeParams::new(m, omega, gravity)?;
    let levels: Vec<f64> = match levels {
        Some(s) => parse_list(&s, "level")?,
        None => return Err(Failure::Usage("curves needs --levels".into())),
    };
    if levels.is_empty() {
        return Err(Failure::Usage("curves needs a nonempty --levels list".into()));
    }
    let rho_max = rho_max.unwrap_or(3.0 * mp.rho_r);
    if !(rho_max > mp.rho_r) {
        return Err(Failure::Usage(format!(
            "rho-max must exceed the ring radius {}",
            mp.rho_r
        )));
    }
    std::fs::create_dir_all(&out)?;

    let stagnation: Option<StagnationPoint> = SearchBox::new((0.2, rho_max), (-8.0, -0.01))
        .ok()
        .and_then(|sb| find_stagnation(&mp, heave, sb).ok());

    let mut plot = SvgPlot::new();
    plot.marker(mp.rho_r, 0.0);
    if let Some(sp) = &stagnation {
        plot.marker(sp.location.rho, sp.location.eta);
    }
    let mut written = 0usize;
    for (li, &v) in levels.iter().enumerate() {
        let mut seeds = surface_seeds(&mp, heave, v, rho_max);
        let is_critical = stagnation
            .as_ref()
            .map(|sp| (v - sp.level).abs() <= 5e-3 * sp.level.abs().max(1.0))
            .unwrap_or(false);
        if is_critical {
            seeds.extend(ray_seeds(&mp, heave, v, stagnation.as_ref().unwrap().location));
        }
        if seeds.is_empty() {
            eprintln!("level {v}: no seeds found, skipping");
            continue;
        }
        let mut seen = std::collections::HashSet::new();
        for seed in seeds {
            let curve = match trace_level_curve(&mp, heave, v, seed, CURVE_STEP) {
                Ok(c) => c,
                Err(e) => {
                    eprintln!("level {v}: {e}");
                    continue;
                }
            };
            if curve.points.len() < 2 || !seen.insert(curve_key(&curve)) {
                continue;
            }
            let mut csv = String::from("rho,eta\n");
            for p in &curve.points {
                csv.push_str(&format!("{},{}\n", csv_num(p.rho), csv_num(p.eta)));
            }
            let path = out.join(format!("level{li}_curve{}.csv", seen.len() - 1));
            atomic_write(&path, &csv)?;
            written += 1;
            let style = if v == 0.0 {
                CurveStyle::Nodal
            } else if is_critical {
                CurveStyle::Critical
            } else {
                CurveStyle::Ordinary
            };
            plot.curve(
                curve.points.iter().map(|p| (p.rho, p.eta)).collect(),
                style,
            );
        }
    }
    if written == 0 {
        return Err(Failure::Run("no level curve could be traced".into()));
    }
    atomic_write(&out.join("curves.svg"), &plot.render())?;
    println!("wrote {written} curves and curves.svg to {}", out.display());
    Ok(())
}

fn cmd_build(
    m: u32,
    heave: Option<String>,
    omega: f64,
    gravity: f64,
    out: PathBuf,
) -> Result<(), Failure> {
    let heaves: Vec<f64> = match heave {
        Some(s) => parse_list(&s, "heave")?,
        None => return Err(Failure::Usage("build needs --heave (comma list)".into())),
    };
    let mp = ModeParams::new(m, omega, gravity)?;
    let s = synthesize(&mp, &heaves)?;
    std::fs::create_dir_all(&out)?;
    atomic_write(&out.join("structure.txt"), &doc::save(&s))?;

    let mut plot = SvgPlot::new();
    plot.marker(mp.rho_r, 0.0);
    for b in &s.bodies {
        plot.curve(
            b.wetted.points.iter().map(|p| (p.rho, p.eta)).collect(),
            CurveStyle::Ordinary,
        );
    }
    atomic_write(&out.join("structure.svg"), &plot.render())?;

    println!(
        "built {} bodies for mode m = {m} (ring radius {:.4})",
        s.bodies.len(),
        mp.rho_r
    );
    for (k, b) in s.bodies.iter().enumerate() {
        println!(
            "  body {k}: heave {} level {:.6} waterline ({:.4}, {:.4}) draught {:.4}",
            b.heave,
            b.wetted.level,
            b.waterline_radii.0,
            b.waterline_radii.1,
            b.draught()
        );
    }
    println!("wrote structure.txt and structure.svg to {}", out.display());
    Ok(())
}

fn cmd_verify(
    structure: Option<PathBuf>,
    out: PathBuf,
    tol_bc: Option<f64>,
    tol_motion: Option<f64>,
) -> Result<(), Failure> {
    let Some(path) = structure else {
        return Err(Failure::Usage("verify needs a structure document path".into()));
    };
    let text = std::fs::read_to_string(&path)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    let s = doc::load(&text).map_err(|e| Failure::Usage(e.to_string()))?;

    let mut tol = Tolerances::default();
    if let Some(t) = tol_bc {
        tol.kinematic = t;
    }
    if let Some(t) = tol_motion {
        tol.motion_heave = t;
    }
    let domains = [
        TruncationDomain::new(10.0, 5.0).unwrap(),
        TruncationDomain::new(20.0, 10.0).unwrap(),
        TruncationDomain::new(40.0, 20.0).unwrap(),
    ];
    let report = verify_structure(&s, &domains, &tol)?;
    std::fs::create_dir_all(&out)?;
    atomic_write(&out.join("report.txt"), &report.to_string())?;
    atomic_write(&out.join("report.csv"), &report.to_csv())?;
    print!("{report}");
    if report.passed {
        Ok(())
    } else {
        Err(Failure::CheckFailed)
    }
}
