use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use serde::Serialize;

use gqscreen::action::{act, ActionSpec};
use gqscreen::data::{self, DataSource};
use gqscreen::gq::{self, GqError, GqOrder};
use gqscreen::incidence::{self, IncidenceError, IncidenceStructure};
use gqscreen::perm::{GroupSpec, PermError};
use gqscreen::screen::{self, Verdict};
use gqscreen::verify;

#[derive(Parser)]
#[command(name = "gqscreen", version, about = "Screen group actions on finite generalised quadrangles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Subcommand)]
enum Command {
    /// Feasibility of an order (s,t), or every feasible order on v points.
    Params(ParamsArgs),
    /// Subdegrees of a transitive action.
    Subdegrees(SubdegreesArgs),
    /// Screen a candidate table and print verdicts.
    Screen {
        #[arg(long)]
        table: PathBuf,
        #[arg(long, value_enum, default_value = "tsv")]
        format: Format,
    },
    /// Regenerate every table and threshold and compare with the expected data.
    VerifyPaper {
        /// Run only checks whose name contains one of these (or `criterion:N`).
        #[arg(long, value_delimiter = ',')]
        only: Vec<String>,
        /// Directory for report.json and report.txt.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Include per-check runtimes in the reports.
        #[arg(long)]
        timings: bool,
    },
    /// Load, validate and save incidence structures.
    #[command(subcommand)]
    Geometry(GeometryCommand),
}

#[derive(Args)]
struct ParamsArgs {
    #[arg(required_unless_present = "enumerate", requires = "t")]
    s: Option<u64>,
    t: Option<u64>,
    #[arg(long, value_name = "V", conflicts_with_all = ["s", "t"])]
    enumerate: Option<BigUint>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct SubdegreesArgs {
    #[arg(long)]
    group: String,
    #[arg(long)]
    action: String,
    /// Orbits of the stabiliser of two points instead of the subdegrees.
    #[arg(long, num_args = 2, value_names = ["P", "Q"])]
    two_point: Option<Vec<String>>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Subcommand)]
enum GeometryCommand {
    /// Validate a structure file and report its order.
    Load { file: PathBuf },
    /// Write a built-in structure.
    Save {
        #[arg(long, conflicts_with = "grid", required_unless_present = "grid")]
        w2: bool,
        #[arg(long, value_name = "RxC")]
        grid: Option<String>,
        file: PathBuf,
    },
}

enum Failure {
    Check,
    Usage(String),
    Resource(String),
    Other(String),
}

impl From<PermError> for Failure {
    fn from(e: PermError) -> Self {
        match e {
            PermError::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<IncidenceError> for Failure {
    fn from(e: IncidenceError) -> Self {
        match e {
            IncidenceError::ResourceLimit { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Other(e.to_string()),
        }
    }
}

impl From<GqError> for Failure {
    fn from(e: GqError) -> Self {
        Failure::Usage(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Params(a) => cmd_params(a),
        Command::Subdegrees(a) => cmd_subdegrees(a),
        Command::Screen { table, format } => cmd_screen(&table, format),
        Command::VerifyPaper { only, out, timings } => cmd_verify(&only, &out, timings),
        Command::Geometry(g) => cmd_geometry(g),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
        Err(Failure::Other(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
    }
}

fn json<T: Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("serializable")
}

#[derive(Serialize)]
struct ParamsReport {
    s: u64,
    t: u64,
    thick: bool,
    higman: Option<bool>,
    divisibility: Option<bool>,
    feasible: bool,
    #[serde(with = "gqscreen::dec")]
    points: BigUint,
    #[serde(with = "gqscreen::dec")]
    lines: BigUint,
    /// Collinearity valency s(t+1), the neighbourhood size of a point.
    #[serde(with = "gqscreen::dec")]
    k: BigUint,
    srg: Option<String>,
}

fn cmd_params(a: ParamsArgs) -> Result<(), Failure> {
    if let Some(v) = a.enumerate {
        let orders = gq::enumerate_orders(&v);
        match a.format {
            Format::Json => println!("{}", json(&orders)),
            Format::Tsv => {
                println!("s\tt");
                for o in orders {
                    println!("{}\t{}", o.s, o.t);
                }
            }
        }
        return Ok(());
    }
    let (s, t) = (a.s.expect("clap requires s"), a.t.expect("clap requires t"));
    if s == 0 || t == 0 {
        return Err(GqError::Degenerate { s, t }.into());
    }
    let order = GqOrder::new(s, t);
    let thick = order.is_thick();
    let report = ParamsReport {
        s,
        t,
        thick,
        higman: gq::higman_ok(order).ok(),
        divisibility: gq::divisibility_ok(order).ok(),
        feasible: gq::is_feasible(order),
        points: gq::point_count(order),
        lines: gq::line_count(order),
        k: BigUint::from(s) * (t + 1),
        srg: gq::srg_params(order).ok().map(|p| p.to_string()),
    };
    match a.format {
        Format::Json => println!("{}", json(&report)),
        Format::Tsv => {
            let opt = |b: Option<bool>| b.map_or("-".to_string(), |b| b.to_string());
            println!("s\tt\tthick\thigman\tdivisibility\tfeasible\tpoints\tlines\tk\tsrg");
            println!(
                "{s}\t{t}\t{thick}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
                opt(report.higman),
                opt(report.divisibility),
                report.feasible,
                report.points,
                report.lines,
                report.k,
                report.srg.as_deref().unwrap_or("-")
            );
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct TwoPoint<'a> {
    points: [&'a str; 2],
    #[serde(with = "gqscreen::dec::u64_vec")]
    orbits: Vec<u64>,
}

fn cmd_subdegrees(a: SubdegreesArgs) -> Result<(), Failure> {
    let group = GroupSpec::parse(&a.group)?.build()?;
    let spec = ActionSpec::parse(&a.action, group.degree())?;
    let action = act(spec, &group)?;
    if let Some(pq) = &a.two_point {
        let (p, q) = (action.parse_point(&pq[0])?, action.parse_point(&pq[1])?);
        let orbits = action.two_point_stabiliser_orbits(p, q)?;
        match a.format {
            Format::Json => println!("{}", json(&TwoPoint { points: [&pq[0], &pq[1]], orbits })),
            Format::Tsv => {
                println!("p\tq\torbits");
                println!("{}\t{}\t{}", pq[0], pq[1], join(&orbits));
            }
        }
        return Ok(());
    }
    let profile = action.subdegrees()?;
    match a.format {
        Format::Json => println!("{}", json(&profile)),
        Format::Tsv => {
            println!("degree\tsubdegrees\tprovenance");
            println!("{}\t{}\t{}", profile.degree, join(&profile.subdegrees), profile.provenance);
        }
    }
    Ok(())
}

fn join(xs: &[u64]) -> String {
    xs.iter().map(u64::to_string).collect::<Vec<_>>().join(",")
}

fn cmd_screen(table: &Path, format: Format) -> Result<(), Failure> {
    let text = std::fs::read_to_string(table).map_err(|e| Failure::Usage(format!("{}: {e}", table.display())))?;
    let rows = screen::parse_candidates(&text).map_err(Failure::Usage)?;
    let src = DataSource::from_env();
    let screened = screen::screen_table(&rows, &|r| data::resolve_profile(&src, r));
    for r in &screened {
        if let Verdict::Unresolved { missing } = &r.verdict {
            eprintln!("warning: {} / {} unresolved: {missing}", r.row.group, r.row.stabiliser);
        }
    }
    match format {
        Format::Json => println!("{}", json(&screened)),
        Format::Tsv => print!("{}", screen::verdicts_tsv(&screened)),
    }
    Ok(())
}

fn cmd_verify(only: &[String], out: &Path, timings: bool) -> Result<(), Failure> {
    if let Some(bad) = only.iter().find(|tok| !verify::MANIFEST.iter().any(|c| verify::selected(c, std::slice::from_ref(tok)))) {
        return Err(Failure::Usage(format!("--only '{bad}' matches no check")));
    }
    let report = verify::run(DataSource::from_env(), only, timings);
    let text = report.to_text();
    print!("{text}");
    std::fs::create_dir_all(out).map_err(|e| Failure::Other(format!("{}: {e}", out.display())))?;
    for (name, body) in [("report.json", report.to_json()), ("report.txt", text)] {
        let path = out.join(name);
        std::fs::write(&path, body).map_err(|e| Failure::Other(format!("{}: {e}", path.display())))?;
    }
    if report.failed() {
        Err(Failure::Check)
    } else {
        Ok(())
    }
}

#[derive(Serialize)]
struct GeometryReport {
    points: usize,
    lines: usize,
    order: Option<GqOrder>,
    violation: Option<incidence::GqViolation>,
    #[serde(with = "gqscreen::dec::option")]
    automorphism_group_order: Option<BigUint>,
}

fn cmd_geometry(cmd: GeometryCommand) -> Result<(), Failure> {
    match cmd {
        GeometryCommand::Load { file } => {
            let text = std::fs::read_to_string(&file).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let st: IncidenceStructure =
                serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", file.display())))?;
            let (order, violation) = match incidence::validate_gq(&st) {
                Ok(o) => (Some(o), None),
                Err(v) => (None, Some(v)),
            };
            let aut = if order.is_some() && st.point_count() <= incidence::AUTOMORPHISM_POINT_LIMIT {
                Some(incidence::automorphism_group(&st)?.order)
            } else {
                None
            };
            let report = GeometryReport {
                points: st.point_count(),
                lines: st.line_count(),
                order,
                violation,
                automorphism_group_order: aut,
            };
            println!("{}", json(&report));
            if report.violation.is_some() {
                return Err(Failure::Check);
            }
            Ok(())
        }
        GeometryCommand::Save { w2, grid, file } => {
            let st = if w2 {
                incidence::build_w2()
            } else {
                let spec = grid.expect("clap requires --grid");
                let (r, c) = spec
                    .split_once('x')
                    .and_then(|(r, c)| Some((r.parse().ok()?, c.parse().ok()?)))
                    .ok_or_else(|| Failure::Usage(format!("bad grid '{spec}', expected RxC")))?;
                IncidenceStructure::grid(r, c).map_err(|e| Failure::Usage(e.to_string()))?
            };
            std::fs::write(&file, json(&st) + "\n").map_err(|e| Failure::Other(format!("{}: {e}", file.display())))?;
            Ok(())
        }
    }
}
