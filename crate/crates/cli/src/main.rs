use std::fs;
use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fractal_cone::blowup::{
    blowup_rescale_2d, blowup_sector_avoidance, check_building_witness, grid_corners, BlowupFrame,
};
use fractal_cone::claims::{
    verify_line_avoids_cone, verify_no_plane, verify_slope_band,
};
use fractal_cone::construction::{
    build_a, build_e, build_f, build_g, build_ftilde, verify_homothety,
};
use fractal_cone::dimension::{csv_header, csv_row, dimension_report};
use fractal_cone::rect::product_rectset;
use fractal_cone::svg::{render_ftilde_line, render_product_band};
use fractal_cone::{Certificate, ConstructionParams, Rational};

/// Exact constructions, certificates and renderings for a family of
/// self-similar planar cones.
#[derive(Parser)]
#[command(name = "fractal-cone", version, disable_help_subcommand = true)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CommonArgs {
    /// Construction parameter as a rational `p/q` in (0, 7).
    #[arg(long, default_value = "1")]
    epsilon: String,
    /// Construction depth.
    #[arg(long, default_value_t = 4)]
    depth: u32,
    /// Output file; stdout when omitted.
    #[arg(short, long)]
    output: Option<String>,
}

#[derive(Clone, Copy, ValueEnum)]
enum SetKind {
    A,
    E,
    F,
    G,
    Ftilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum ClaimKind {
    Homothety,
    LineAvoidsCone,
    SlopeBand,
    NoPlane,
    BuildingWitness,
    BlowupAvoidance,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Scene {
    FtildeLine,
    ProductBand,
}

#[derive(Subcommand)]
enum Command {
    /// Emit one of the constructed sets as JSON.
    Construct {
        #[command(flatten)]
        common: CommonArgs,
        /// Which set to build.
        #[arg(long, value_enum)]
        set: SetKind,
    },
    /// Check a claim and emit its certificate; the exit code reflects the
    /// verdict (0 pass, 1 fail, 2 inconclusive).
    Verify {
        #[command(flatten)]
        common: CommonArgs,
        /// Single claim to check.
        #[arg(long, value_enum, conflicts_with = "all")]
        claim: Option<ClaimKind>,
        /// Check every claim at its default parameters.
        #[arg(long)]
        all: bool,
        /// Slope band `lo:hi` for the band-dependent claims.
        #[arg(long, default_value = "7/5:5")]
        band: String,
        /// Line slope override for the line claim.
        #[arg(long)]
        slope: Option<String>,
    },
    /// Report the box-counting dimension of a factor.
    Dimension {
        #[command(flatten)]
        common: CommonArgs,
        /// Pieces per level: 2 (base set), 4 (planar product), 8 (triple).
        #[arg(long, default_value_t = 2)]
        branches: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Rescale the planar product at a point, or certify sector avoidance
    /// there when a band is given.
    Blowup {
        #[command(flatten)]
        common: CommonArgs,
        /// Center `x,y` with rational coordinates.
        #[arg(long)]
        center: String,
        /// Zoom factor as a positive rational.
        #[arg(long)]
        scale: String,
        /// When given, check avoidance of this open slope band `lo:hi`
        /// instead of emitting the rescaled set.
        #[arg(long)]
        band: Option<String>,
    },
    /// Render a scene to SVG.
    Render {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(long, value_enum)]
        scene: Scene,
        /// Line slope for the layer scene; defaults to the built-in one.
        #[arg(long)]
        slope: Option<String>,
    },
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse().map_err(|e| format!("bad rational `{s}`: {e}"))
}

fn parse_band(s: &str) -> Result<(Rational, Rational), String> {
    let (lo, hi) = s
        .split_once(':')
        .ok_or_else(|| format!("bad band `{s}`: expected lo:hi"))?;
    Ok((parse_rational(lo)?, parse_rational(hi)?))
}

fn parse_point(s: &str) -> Result<(Rational, Rational), String> {
    let (x, y) = s
        .split_once(',')
        .ok_or_else(|| format!("bad point `{s}`: expected x,y"))?;
    Ok((parse_rational(x)?, parse_rational(y)?))
}

fn params_from(common: &CommonArgs) -> Result<ConstructionParams, String> {
    let eps = parse_rational(&common.epsilon)?;
    ConstructionParams::new(eps, common.depth).map_err(|e| e.to_string())
}

fn emit(common: &CommonArgs, text: &str) -> Result<(), String> {
    match &common.output {
        Some(path) => fs::write(path, text).map_err(|e| format!("write {path}: {e}")),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| e.to_string())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

/// Default parameters per claim when run under `--all`: the layer claims use
/// the small ε where the line avoids the cone; the band claims use ε = 1.
fn all_claims(depth: u32) -> Result<Vec<Certificate>, String> {
    let small = ConstructionParams::new(parse_rational("1/8")?, depth).map_err(|e| e.to_string())?;
    let unit = ConstructionParams::new(parse_rational("1")?, depth).map_err(|e| e.to_string())?;
    let band = (parse_rational("7/5")?, parse_rational("5")?);
    let mut certs = Vec::new();
    certs.push(verify_homothety(&small).map_err(|e| e.to_string())?);
    certs.push(verify_line_avoids_cone(&small, None).map_err(|e| e.to_string())?);
    certs.push(verify_slope_band(&unit, &band).map_err(|e| e.to_string())?);
    certs.push(verify_no_plane(&unit, &band).map_err(|e| e.to_string())?);
    certs.push(check_building_witness(&small).map_err(|e| e.to_string())?);
    certs.push(run_blowup_avoidance(&unit, &band)?);
    Ok(certs)
}

/// Avoidance across every grid corner of a shallow product at two zoom
/// scales; the grid depth is capped so the frame count stays tractable.
fn run_blowup_avoidance(
    p: &ConstructionParams,
    band: &(Rational, Rational),
) -> Result<Certificate, String> {
    let grid = p.with_depth(p.depth.min(2));
    let a = build_a(&grid);
    let set = product_rectset(&a, &a);
    let beta = p.beta();
    let scales = [beta.clone(), &beta * &beta];
    let frames: Vec<BlowupFrame> = grid_corners(&grid)
        .into_iter()
        .flat_map(|c| {
            scales.iter().map(move |s| BlowupFrame {
                center: c.clone(),
                scale: s.clone(),
            })
        })
        .collect();
    blowup_sector_avoidance(&set, band, &frames).map_err(|e| e.to_string())
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.command {
        Command::Construct { common, set } => {
            let p = params_from(&common)?;
            let text = match set {
                SetKind::A => to_json(&build_a(&p)),
                SetKind::E => to_json(&build_e(&p)),
                SetKind::F => to_json(&build_f(&p)),
                SetKind::G => to_json(&build_g(&p)),
                SetKind::Ftilde => to_json(&build_ftilde(&p).map_err(|e| e.to_string())?),
            };
            emit(&common, &text)?;
            Ok(0)
        }
        Command::Verify {
            common,
            claim,
            all,
            band,
            slope,
        } => {
            let band = parse_band(&band)?;
            if all {
                let certs = all_claims(common.depth)?;
                let worst = certs.iter().map(|c| c.exit_code()).max().unwrap_or(0);
                emit(&common, &to_json(&certs))?;
                return Ok(worst as u8);
            }
            let p = params_from(&common)?;
            let claim = claim.ok_or("pass --claim or --all")?;
            let cert = match claim {
                ClaimKind::Homothety => verify_homothety(&p).map_err(|e| e.to_string())?,
                ClaimKind::LineAvoidsCone => {
                    let m = slope.as_deref().map(parse_rational).transpose()?;
                    verify_line_avoids_cone(&p, m.as_ref()).map_err(|e| e.to_string())?
                }
                ClaimKind::SlopeBand => verify_slope_band(&p, &band).map_err(|e| e.to_string())?,
                ClaimKind::NoPlane => verify_no_plane(&p, &band).map_err(|e| e.to_string())?,
                ClaimKind::BuildingWitness => {
                    check_building_witness(&p).map_err(|e| e.to_string())?
                }
                ClaimKind::BlowupAvoidance => run_blowup_avoidance(&p, &band)?,
            };
            emit(&common, &to_json(&cert))?;
            Ok(cert.exit_code() as u8)
        }
        Command::Dimension {
            common,
            branches,
            format,
        } => {
            let p = params_from(&common)?;
            let report = dimension_report(branches, &p).map_err(|e| e.to_string())?;
            let text = match format {
                Format::Json => to_json(&report),
                Format::Csv => format!("{}\n{}\n", csv_header(), csv_row(&report)),
            };
            emit(&common, &text)?;
            Ok(0)
        }
        Command::Blowup {
            common,
            center,
            scale,
            band,
        } => {
            let p = params_from(&common)?;
            let center = parse_point(&center)?;
            let scale = parse_rational(&scale)?;
            let a = build_a(&p);
            let set = product_rectset(&a, &a);
            match band {
                None => {
                    let zoomed =
                        blowup_rescale_2d(&set, &center, &scale).map_err(|e| e.to_string())?;
                    emit(&common, &to_json(&zoomed))?;
                    Ok(0)
                }
                Some(band) => {
                    let band = parse_band(&band)?;
                    let frames = [BlowupFrame { center, scale }];
                    let cert = blowup_sector_avoidance(&set, &band, &frames)
                        .map_err(|e| e.to_string())?;
                    emit(&common, &to_json(&cert))?;
                    Ok(cert.exit_code() as u8)
                }
            }
        }
        Command::Render {
            common,
            scene,
            slope,
        } => {
            let p = params_from(&common)?;
            let text = match scene {
                Scene::FtildeLine => {
                    let ft = build_ftilde(&p).map_err(|e| e.to_string())?;
                    let m = match slope.as_deref() {
                        Some(s) => parse_rational(s)?,
                        None => fractal_cone::claims::reference_line_slope(&p.epsilon),
                    };
                    render_ftilde_line(&ft, &m)
                }
                Scene::ProductBand => {
                    let a = build_a(&p);
                    let prod = product_rectset(&a, &a);
                    let slopes = [
                        parse_rational("7/5")?,
                        parse_rational("2")?,
                        parse_rational("5")?,
                    ];
                    render_product_band(&prod, &slopes)
                }
            };
            emit(&common, &text)?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    if let Ok(n) = std::env::var("FRACTAL_CONE_THREADS") {
        if let Ok(n) = n.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    }
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help and version requests are not usage errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 3,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

// unused-dependency guard for test-only crates lives in the integration tests
