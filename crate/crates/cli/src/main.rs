//! `bimatch`: command-line access to matching construction, uniqueness
//! tests, classification and witnesses.
//!
//! Exit codes: 0 success, 1 the asked-for property does not hold, 2 bad
//! input, 3 internal invariant failure.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use bimatch::classify::{classify, census_sidedness_relations, is_unique, reference_direction, Verdict};
use bimatch::construct::{
    alternative_matching_via_balanced_line, alternative_matchings_circular, build_matching,
};
use bimatch::cut::{balanced_line_for_matching, chromatic_cut_from_pair};
use bimatch::geom::{format_coord, parse_coord, DirectedLine, Vector};
use bimatch::io::{parse_matching, parse_pointset, render_svg, serialize_matching, serialize_pointset, Overlay};
use bimatch::matching::has_chromatic_cut;
use bimatch::testlab;
use bimatch::{BrMatching, Coord, PointSet};
use clap::{Args, Parser, Subcommand, ValueEnum};

use output::Record;

#[derive(Parser)]
#[command(name = "bimatch", version, about = "Non-crossing bichromatic perfect matchings")]
struct Cli {
    /// Print results as one JSON object instead of `key: value` lines.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a matching by recursive ham-sandwich cuts.
    Build {
        points: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Decide whether the point set has exactly one matching (exit 1 if not).
    Unique { points: PathBuf },
    /// Classify a matching as linear, circular or cut-admitting.
    Classify { points: PathBuf, matching: PathBuf },
    /// Print a chromatic cut of the matching (exit 1 if there is none).
    Cut {
        points: PathBuf,
        matching: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Print a balanced line crossing a segment (exit 1 if there is none).
    BalancedLine {
        points: PathBuf,
        matching: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Write matchings that differ from the given one (exit 1 if it is the
    /// only matching).
    Alternatives {
        points: PathBuf,
        matching: PathBuf,
        #[arg(short, long, num_args = 1..=2, required = true)]
        output: Vec<PathBuf>,
    },
    /// Count the distinct sidedness relations of circular matchings of size n.
    Census { n: usize },
    /// Generate a point set (and its matching).
    Gen(GenArgs),
    /// Draw a point set and optional matching as SVG.
    Render {
        points: PathBuf,
        #[arg(short, long)]
        matching: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OverlayKind::None)]
        overlay: OverlayKind,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Args)]
struct GenArgs {
    #[command(subcommand)]
    family: Family,
    /// Point-set output path; standard output if absent.
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// Also write the generated matching here.
    #[arg(short = 'm', long, global = true)]
    matching: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Family {
    /// Parallel segments with a unique matching.
    Parallel {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 3)]
        spacing: i64,
    },
    /// Segments on rays from the origin.
    Radial {
        #[arg(long)]
        n: usize,
        /// One `0`/`1` flag per segment; all ones gives a circular matching.
        #[arg(long)]
        occupancy: String,
        #[arg(long, default_value = "1")]
        inner: String,
        #[arg(long, default_value = "2")]
        outer: String,
    },
    /// Seeded random points in general position.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        bound: i64,
    },
    /// Give every point of a set a nearby partner of the other color.
    Duplicate {
        input: PathBuf,
        #[arg(long, default_value = "1")]
        dx: String,
        #[arg(long, default_value = "0")]
        dy: String,
        #[arg(long, default_value = "1/1000")]
        dist: String,
    },
    /// A linear matching that admits no parallel drawing.
    Nonpar,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OverlayKind {
    None,
    /// Label segments by their linear or cyclic position.
    Order,
    /// Alias of `order` for circular matchings.
    Cycle,
    Cut,
    Balanced,
}

/// Why a command did not succeed.
enum Failure {
    /// The property asked about does not hold; the record explains.
    Negative(Record),
    Input(String),
    Internal(String),
}

impl From<bimatch::Error> for Failure {
    fn from(e: bimatch::Error) -> Failure {
        if e.is_input_error() {
            Failure::Input(e.to_string())
        } else {
            Failure::Internal(e.to_string())
        }
    }
}

type Outcome = Result<Record, Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_points(path: &Path) -> Result<Arc<PointSet>, Failure> {
    let text = read(path)?;
    parse_pointset(&text).map(Arc::new).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load_matching(path: &Path, ps: &Arc<PointSet>) -> Result<BrMatching, Failure> {
    let text = read(path)?;
    parse_matching(&text, ps).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn coord_arg(name: &str, text: &str) -> Result<Coord, Failure> {
    parse_coord(text).ok_or_else(|| Failure::Input(format!("--{name}: not a number: {text:?}")))
}

fn point_text(v: &Vector) -> String {
    format!("{} {}", format_coord(&v.x), format_coord(&v.y))
}

fn put_line(rec: &mut Record, line: &DirectedLine) {
    rec.put("line_from", point_text(&line.origin));
    rec.put("line_to", point_text(&line.second_point()));
}

fn put_verdict(rec: &mut Record, verdict: &Verdict) {
    rec.put("verdict", verdict.name());
    match verdict {
        Verdict::Linear { order } => rec.put("order", order.clone()),
        Verdict::Circular { cycle } => rec.put("cycle", cycle.clone()),
        Verdict::CutAdmitting { witness } => rec.put("witness", vec![witness.0, witness.1]),
    };
}

fn position_labels(m: &BrMatching, verdict: &Verdict) -> Vec<Overlay> {
    let seq = match verdict {
        Verdict::Linear { order } => order,
        Verdict::Circular { cycle } => cycle,
        Verdict::CutAdmitting { .. } => return vec![Overlay::Caption(verdict.name().into())],
    };
    let labels = seq.iter().enumerate().map(|(rank, &k)| (m.segment(k), rank.to_string())).collect();
    vec![Overlay::SegmentLabels(labels), Overlay::Caption(verdict.name().into())]
}

fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Build { points, output, svg } => {
            let ps = load_points(points)?;
            let m = build_matching(&ps);
            let text = serialize_matching(&m);
            let mut rec = Record::new();
            rec.put("n", ps.n());
            match output {
                Some(path) => {
                    write(path, &text)?;
                    rec.put("matching", path.display().to_string());
                }
                None => {
                    rec.put("segments", m.segments().iter().map(|s| vec![s.white, s.black]).collect::<Vec<_>>());
                }
            }
            if let Some(path) = svg {
                write(path, &render_svg(&ps, Some(&m), &[]))?;
            }
            Ok(rec)
        }
        Command::Unique { points } => {
            let ps = load_points(points)?;
            let report = is_unique(&ps)?;
            let mut rec = Record::new();
            rec.put("unique", report.unique);
            rec.put("n", ps.n());
            put_verdict(&mut rec, &report.verdict);
            if report.unique {
                Ok(rec)
            } else {
                Err(Failure::Negative(rec))
            }
        }
        Command::Classify { points, matching } => {
            let ps = load_points(points)?;
            let m = load_matching(matching, &ps)?;
            let verdict = classify(&m)?;
            let mut rec = Record::new();
            put_verdict(&mut rec, &verdict);
            if let Verdict::Linear { .. } = verdict {
                let u = reference_direction(&m)?;
                rec.put("reference_direction", point_text(&u.direction));
            }
            Ok(rec)
        }
        Command::Cut { points, matching, svg } => {
            let ps = load_points(points)?;
            let m = load_matching(matching, &ps)?;
            let mut rec = Record::new();
            let Some((a, b)) = has_chromatic_cut(&m) else {
                rec.put("cut", "none");
                return Err(Failure::Negative(rec));
            };
            let w = chromatic_cut_from_pair(&m, a, b)?;
            rec.put("segments", vec![a, b]);
            put_line(&mut rec, &w.line);
            if let Some(path) = svg {
                let overlay = Overlay::Line { line: w.line.clone(), label: Some("cut".into()) };
                write(path, &render_svg(&ps, Some(&m), &[overlay]))?;
            }
            Ok(rec)
        }
        Command::BalancedLine { points, matching, svg } => {
            let ps = load_points(points)?;
            let m = load_matching(matching, &ps)?;
            let mut rec = Record::new();
            let Some((a, b)) = has_chromatic_cut(&m) else {
                rec.put("balanced_line", "none");
                return Err(Failure::Negative(rec));
            };
            let bl = balanced_line_for_matching(&m, a, b)?;
            let crossed = m.position_of(bl.crossed).expect("crossed segment belongs to the matching");
            rec.put("crossed_segment", crossed);
            put_line(&mut rec, &bl.line);
            if let Some(path) = svg {
                let overlay = Overlay::Line { line: bl.line.clone(), label: Some("balanced".into()) };
                write(path, &render_svg(&ps, Some(&m), &[overlay]))?;
            }
            Ok(rec)
        }
        Command::Alternatives { points, matching, output } => {
            let ps = load_points(points)?;
            let m = load_matching(matching, &ps)?;
            let verdict = classify(&m)?;
            let mut rec = Record::new();
            rec.put("verdict", verdict.name());
            let found = match &verdict {
                Verdict::Linear { .. } => {
                    rec.put("alternatives", 0);
                    return Err(Failure::Negative(rec));
                }
                Verdict::Circular { .. } => {
                    let (first, second) = alternative_matchings_circular(&m, &verdict)?;
                    vec![first, second]
                }
                Verdict::CutAdmitting { witness: (a, b) } => {
                    let bl = balanced_line_for_matching(&m, *a, *b)?;
                    vec![alternative_matching_via_balanced_line(&ps, &bl)?]
                }
            };
            rec.put("alternatives", found.len());
            let mut written = Vec::new();
            for (alt, path) in found.iter().zip(output) {
                write(path, &serialize_matching(alt))?;
                written.push(path.display().to_string());
            }
            rec.put("written", written);
            Ok(rec)
        }
        Command::Census { n } => {
            let count = census_sidedness_relations(*n)?;
            let mut rec = Record::new();
            rec.put("n", *n);
            rec.put("relations", count);
            Ok(rec)
        }
        Command::Gen(args) => generate(args),
        Command::Render { points, matching, overlay, output } => {
            let ps = load_points(points)?;
            let m = match matching {
                Some(path) => Some(load_matching(path, &ps)?),
                None => None,
            };
            let overlays = match (overlay, &m) {
                (OverlayKind::None, _) => Vec::new(),
                (_, None) => return Err(Failure::Input("overlays need a matching (-m)".into())),
                (OverlayKind::Order | OverlayKind::Cycle, Some(m)) => position_labels(m, &classify(m)?),
                (OverlayKind::Cut, Some(m)) => match has_chromatic_cut(m) {
                    Some((a, b)) => {
                        let w = chromatic_cut_from_pair(m, a, b)?;
                        vec![Overlay::Line { line: w.line, label: Some("cut".into()) }]
                    }
                    None => vec![Overlay::Caption("no chromatic cut".into())],
                },
                (OverlayKind::Balanced, Some(m)) => match has_chromatic_cut(m) {
                    Some((a, b)) => {
                        let bl = balanced_line_for_matching(m, a, b)?;
                        vec![Overlay::Line { line: bl.line, label: Some("balanced".into()) }]
                    }
                    None => vec![Overlay::Caption("no balanced line crosses a segment".into())],
                },
            };
            let svg = render_svg(&ps, m.as_ref(), &overlays);
            let mut rec = Record::new();
            match output {
                Some(path) => {
                    write(path, &svg)?;
                    rec.put("svg", path.display().to_string());
                }
                None => {
                    print!("{svg}");
                    return Ok(Record::new());
                }
            }
            Ok(rec)
        }
    }
}

fn generate(args: &GenArgs) -> Outcome {
    let (ps, m): (Arc<PointSet>, Option<BrMatching>) = match &args.family {
        Family::Parallel { n, spacing } => {
            if *n == 0 || *spacing < 1 {
                return Err(Failure::Input("parallel needs n >= 1 and spacing >= 1".into()));
            }
            let (ps, m) = testlab::gen_parallel(*n, *spacing);
            (ps, Some(m))
        }
        Family::Radial { n, occupancy, inner, outer } => {
            let occ = testlab::parse_occupancy(occupancy)
                .ok_or_else(|| Failure::Input(format!("--occupancy must be a 0/1 string, got {occupancy:?}")))?;
            let (inner, outer) = (coord_arg("inner", inner)?, coord_arg("outer", outer)?);
            let (ps, m) = testlab::gen_radial(*n, &occ, &inner, &outer)?;
            (ps, Some(m))
        }
        Family::Random { n, seed, bound } => {
            if *n == 0 || *bound < 2 || (*bound as f64 + 1.0).powi(2) < 8.0 * *n as f64 {
                return Err(Failure::Input("random needs n >= 1 and a bound large enough for 2n points".into()));
            }
            (Arc::new(testlab::gen_random(*n, *seed, *bound)), None)
        }
        Family::Duplicate { input, dx, dy, dist } => {
            let base = load_points(input)?;
            let dir = Vector::new(coord_arg("dx", dx)?, coord_arg("dy", dy)?);
            let (ps, m) = testlab::gen_duplication(&base, &dir, &coord_arg("dist", dist)?)?;
            (ps, Some(m))
        }
        Family::Nonpar => {
            let (ps, m) = testlab::gen_nonparallelizable();
            (ps, Some(m))
        }
    };
    let mut rec = Record::new();
    rec.put("n", ps.n());
    match &args.output {
        Some(path) => {
            write(path, &serialize_pointset(&ps))?;
            rec.put("points", path.display().to_string());
        }
        None => {
            print!("{}", serialize_pointset(&ps));
            rec = Record::new();
        }
    }
    if let Some(path) = &args.matching {
        let Some(m) = m else {
            return Err(Failure::Input("this family has no designated matching".into()));
        };
        write(path, &serialize_matching(&m))?;
        if args.output.is_some() {
            rec.put("matching", path.display().to_string());
        }
    }
    Ok(rec)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(rec) => {
            print!("{}", rec.render(cli.json));
            ExitCode::SUCCESS
        }
        Err(Failure::Negative(rec)) => {
            print!("{}", rec.render(cli.json));
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(3)
        }
    }
}
