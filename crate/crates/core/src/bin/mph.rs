use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use mph_core::complex::{load_pair_any, pair_to_json, save_pair, ParameterPoint, ScalarFiltration, SizePair};
use mph_core::demo::{self, Example};
use mph_core::distance::{multidim_distances, DistanceEstimate, LOWER_BOUND_CAVEAT};
use mph_core::foliation::{make_admissible, pair_through, reduce, slice_grid, GridSpec};
use mph_core::format::{fmt_extended, round_sig, OUTPUT_DIGITS};
use mph_core::persistence::{diagram, diagrams_to_csv, homological_critical_values, PersistenceDiagram};
use mph_core::shapes::{self, Measuring, ShapeKind, ShapeSpec};
use mph_core::{bottleneck, Error, PrimeField, Result};

const EXIT_INPUT: u8 = 1;
const EXIT_VALIDATION: u8 = 2;
const EXIT_DEMO_FAILED: u8 = 3;

/// Multidimensional persistence through one-dimensional slices.
#[derive(Parser, Debug)]
#[command(name = "mph", version)]
struct Cli {
    /// Worker threads for slice-level parallelism (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Prime characteristic of the coefficient field.
    #[arg(long, global = true, default_value_t = 2)]
    field: u64,

    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Persistence diagrams of one leaf (or one component) of a size pair.
    Diagram {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        filtration: FiltrationArgs,
        #[arg(long, default_value = "0..2")]
        degrees: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
        /// Write one `degree<i>.json` file per degree into this directory.
        #[arg(long)]
        output_dir: Option<PathBuf>,
    },
    /// The admissible pair and slice coordinates through `(u, v)`.
    Slice {
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        u: Vec<f64>,
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, required = true)]
        v: Vec<f64>,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Matching distance between two diagram JSON files.
    Bottleneck {
        first: PathBuf,
        second: PathBuf,
    },
    /// Sampled lower bound of the multidimensional matching distance.
    Multidist {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value = "0..2")]
        degrees: String,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Homological critical values of one leaf (or one component).
    Critical {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        filtration: FiltrationArgs,
        #[arg(long, default_value = "0..2")]
        degrees: String,
        #[arg(long, value_enum, default_value_t = TableFormat::Json)]
        format: TableFormat,
    },
    /// Reproduce a reference example and compare with the expected values.
    Demo {
        /// cube_sphere, ellipse, torus or all.
        example: String,
        /// Print the JSON report instead of the table.
        #[arg(long)]
        json: bool,
    },
    /// Generated reference shapes.
    Shapes {
        #[command(subcommand)]
        command: ShapesCommand,
    },
}

#[derive(Subcommand, Debug)]
enum ShapesCommand {
    /// Write a generated shape with a measuring function as a size-pair file.
    Dump {
        /// cube_boundary, sphere, ellipse or torus.
        shape: String,
        #[arg(long)]
        resolution: Option<usize>,
        /// abs_uv, z_negz, ellipse_phi, ellipse_psi or a list such as `x,|y|,-z`.
        #[arg(long, allow_hyphen_values = true)]
        measuring: Option<String>,
        #[arg(long, value_enum, default_value_t = PairFormat::Text)]
        format: PairFormat,
    },
}

#[derive(Args, Debug)]
struct FiltrationArgs {
    /// Leaf direction (normalized); defaults to the central direction.
    #[arg(long, value_delimiter = ',', conflicts_with = "component")]
    l: Option<Vec<f64>>,
    /// Leaf offset (projected to sum zero); defaults to zero.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "component")]
    b: Option<Vec<f64>>,
    /// Use the j-th component (1-based) of the measuring function instead of a leaf.
    #[arg(long)]
    component: Option<usize>,
}

#[derive(Args, Debug)]
struct GridArgs {
    #[arg(long, default_value_t = GridSpec::DEFAULT_DIRECTIONS)]
    directions: usize,
    #[arg(long, default_value_t = GridSpec::DEFAULT_OFFSETS)]
    offsets: usize,
    /// Offsets range over [-R, R]; defaults to half the largest component range.
    #[arg(long)]
    offset_radius: Option<f64>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum TableFormat {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PairFormat {
    Text,
    Json,
}

enum Failure {
    Error(Error),
    DemoFailed,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::DemoFailed) => ExitCode::from(EXIT_DEMO_FAILED),
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_input_error() { EXIT_INPUT } else { EXIT_VALIDATION })
        }
    }
}

fn run(cli: &Cli) -> std::result::Result<(), Failure> {
    let field = PrimeField::new(cli.field)?;
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(Error::Invalid("--jobs must be positive".into()).into());
        }
        builder = builder.num_threads(jobs);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Invalid(format!("cannot start worker pool: {e}")))?;
    pool.install(|| dispatch(cli, field))
}

fn dispatch(cli: &Cli, field: PrimeField) -> std::result::Result<(), Failure> {
    let output = cli.output.as_deref();
    match &cli.command {
        Command::Diagram {
            input,
            filtration,
            degrees,
            format,
            output_dir,
        } => {
            let (lo, hi) = parse_degrees(degrees)?;
            let pair = read_pair(input)?;
            let g = filtration_of(&pair, filtration)?;
            let diagrams = degree_range(&diagram(&pair.complex, &g, hi, field)?, lo, hi);
            if let Some(dir) = output_dir {
                fs::create_dir_all(dir).map_err(Error::from)?;
                for d in &diagrams {
                    write_text(Some(&dir.join(format!("degree{}.json", d.degree))), &(d.to_json() + "\n"))?;
                }
                return Ok(());
            }
            let text = match format {
                TableFormat::Json => diagrams.iter().map(|d| d.to_json() + "\n").collect(),
                TableFormat::Csv => diagrams_to_csv(&diagrams),
            };
            write_text(output, &text)?;
        }
        Command::Slice { u, v, format } => {
            let slice = pair_through(&ParameterPoint::new(u.clone(), v.clone())?);
            let l: Vec<f64> = slice.pair.direction().iter().map(|&x| round_sig(x, OUTPUT_DIGITS)).collect();
            let b: Vec<f64> = slice.pair.offset().iter().map(|&x| round_sig(x, OUTPUT_DIGITS)).collect();
            let (s, t) = (round_sig(slice.s, OUTPUT_DIGITS), round_sig(slice.t, OUTPUT_DIGITS));
            let text = match format {
                TableFormat::Json => to_json_line(&SliceOut { l: &l, b: &b, s, t }),
                TableFormat::Csv => {
                    let n = l.len();
                    let mut header: Vec<String> = (1..=n).map(|j| format!("l{j}")).collect();
                    header.extend((1..=n).map(|j| format!("b{j}")));
                    header.extend(["s".to_string(), "t".to_string()]);
                    let row: Vec<String> = l.iter().chain(&b).chain([&s, &t]).map(|&x| fmt_extended(x)).collect();
                    format!("{}\n{}\n", header.join(","), row.join(","))
                }
            };
            write_text(output, &text)?;
        }
        Command::Bottleneck { first, second } => {
            let a = PersistenceDiagram::from_json(&read_text(first)?)?;
            let b = PersistenceDiagram::from_json(&read_text(second)?)?;
            let distance = bottleneck(&a, &b)?;
            let out = BottleneckOut {
                degree: a.degree,
                distance: round_sig(distance, OUTPUT_DIGITS),
            };
            write_text(output, &to_json_line(&out))?;
        }
        Command::Multidist {
            first,
            second,
            degrees,
            grid,
            format,
        } => {
            let (lo, hi) = parse_degrees(degrees)?;
            let x = read_pair(first)?;
            let y = read_pair(second)?;
            let mut spec = GridSpec::default_for(&[&x.function, &y.function]);
            spec.directions = grid.directions;
            spec.offsets = grid.offsets;
            if let Some(r) = grid.offset_radius {
                spec.offset_radius = r;
            }
            let pairs = slice_grid(x.dimension(), &spec)?;
            let estimates: Vec<DistanceEstimate> = multidim_distances(&x, &y, hi, &pairs, field)?
                .into_iter()
                .skip(lo)
                .map(|e| e.rounded(OUTPUT_DIGITS))
                .collect();
            for e in &estimates {
                eprintln!(
                    "degree {}: {} = {}",
                    e.degree,
                    LOWER_BOUND_CAVEAT,
                    fmt_extended(e.lower_bound)
                );
            }
            let text = match format {
                TableFormat::Json => to_json_line(&MultidistOut {
                    caveat: LOWER_BOUND_CAVEAT,
                    estimates: &estimates,
                }),
                TableFormat::Csv => {
                    let mut out = String::new();
                    for (i, e) in estimates.iter().enumerate() {
                        let csv = e.to_csv();
                        let skip = usize::from(i > 0);
                        for line in csv.lines().skip(skip) {
                            out.push_str(line);
                            out.push('\n');
                        }
                    }
                    out
                }
            };
            write_text(output, &text)?;
        }
        Command::Critical {
            input,
            filtration,
            degrees,
            format,
        } => {
            let (lo, hi) = parse_degrees(degrees)?;
            let pair = read_pair(input)?;
            let g = filtration_of(&pair, filtration)?;
            let diagrams = degree_range(&diagram(&pair.complex, &g, hi, field)?, lo, hi);
            let mut values = homological_critical_values(&diagrams);
            for v in &mut values {
                v.value = round_sig(v.value, OUTPUT_DIGITS);
            }
            let text = match format {
                TableFormat::Json => to_json_line(&values),
                TableFormat::Csv => {
                    let mut out = String::from("value,degrees\n");
                    for v in &values {
                        let degrees: Vec<String> = v.degrees.iter().map(usize::to_string).collect();
                        out.push_str(&format!("{},{}\n", fmt_extended(v.value), degrees.join(";")));
                    }
                    out
                }
            };
            write_text(output, &text)?;
        }
        Command::Demo { example, json } => {
            let examples = if example == "all" {
                Example::ALL.to_vec()
            } else {
                vec![example.parse::<Example>()?]
            };
            let mut all_passed = true;
            let mut text = String::new();
            for e in examples {
                let report = demo::run(e, field)?;
                all_passed &= report.passed();
                if *json {
                    text.push_str(&report.to_json());
                } else {
                    text.push_str(&report.to_string());
                }
                text.push('\n');
            }
            write_text(output, &text)?;
            if !all_passed {
                return Err(Failure::DemoFailed);
            }
        }
        Command::Shapes {
            command:
                ShapesCommand::Dump {
                    shape,
                    resolution,
                    measuring,
                    format,
                },
        } => {
            let kind: ShapeKind = shape.parse()?;
            let spec = ShapeSpec::new(kind, resolution.unwrap_or(kind.default_resolution()));
            let measuring: Measuring = match measuring {
                Some(m) => m.parse()?,
                None => default_measuring(kind),
            };
            let pair = shapes::size_pair(&spec, &measuring)?;
            let text = match format {
                PairFormat::Text => save_pair(&pair),
                PairFormat::Json => pair_to_json(&pair) + "\n",
            };
            write_text(output, &text)?;
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct SliceOut<'a> {
    l: &'a [f64],
    b: &'a [f64],
    s: f64,
    t: f64,
}

#[derive(Serialize)]
struct BottleneckOut {
    degree: usize,
    #[serde(serialize_with = "serialize_extended")]
    distance: f64,
}

#[derive(Serialize)]
struct MultidistOut<'a> {
    caveat: &'static str,
    estimates: &'a [DistanceEstimate],
}

fn serialize_extended<S: serde::Serializer>(x: &f64, ser: S) -> std::result::Result<S::Ok, S::Error> {
    if x.is_finite() {
        ser.serialize_f64(*x)
    } else {
        ser.serialize_str(&fmt_extended(*x))
    }
}

fn default_measuring(kind: ShapeKind) -> Measuring {
    match kind {
        ShapeKind::CubeBoundary | ShapeKind::Sphere => Measuring::AbsUv,
        ShapeKind::Ellipse => Measuring::EllipsePhi,
        ShapeKind::Torus => Measuring::ZNegZ,
    }
}

/// Parses `a..b` (inclusive) or a single degree.
fn parse_degrees(text: &str) -> Result<(usize, usize)> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| Error::Invalid(format!("invalid degree range `{text}`")))
    };
    let (lo, hi) = match text.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b)?),
        None => {
            let d = parse(text)?;
            (d, d)
        }
    };
    if lo > hi {
        return Err(Error::Invalid(format!("empty degree range `{text}`")));
    }
    Ok((lo, hi))
}

/// Diagrams for `lo..=hi`, empty where the complex has no simplices of that dimension.
fn degree_range(diagrams: &[PersistenceDiagram], lo: usize, hi: usize) -> Vec<PersistenceDiagram> {
    (lo..=hi)
        .map(|d| {
            diagrams
                .get(d)
                .cloned()
                .unwrap_or_else(|| PersistenceDiagram::empty(d))
                .rounded(OUTPUT_DIGITS)
        })
        .collect()
}

fn filtration_of(pair: &SizePair, args: &FiltrationArgs) -> Result<ScalarFiltration> {
    if let Some(j) = args.component {
        let n = pair.dimension();
        if j == 0 || j > n {
            return Err(Error::ComponentOutOfRange { index: j, n });
        }
        return Ok(pair.function.component(j - 1));
    }
    let n = pair.dimension();
    let l = args.l.clone().unwrap_or_else(|| vec![1.0; n]);
    let b = args.b.clone().unwrap_or_else(|| vec![0.0; l.len()]);
    let leaf = make_admissible(&l, &b)?;
    reduce(&pair.function, &leaf)
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(Error::from)
}

fn read_pair(path: &Path) -> Result<SizePair> {
    load_pair_any(&read_text(path)?)
}

fn write_text(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(Error::from),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn to_json_line<T: Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("plain data serializes") + "\n"
}
