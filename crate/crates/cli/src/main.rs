use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;
use weyl_toric::fan_oracle::DEFAULT_SEED;
use weyl_toric::{
    class_x, class_y, diagram, enumerate_weyl, intersection_number, triple_number, verify_family,
    BasisRing, Error, Family, Lambda, RootSystemId, TauMonomial, VerifyMode, WeylElement,
    DEFAULT_SIZE_CAP,
};

#[derive(Parser, Debug)]
#[command(
    name = "weyl-toric",
    version,
    about = "Intersection numbers and structure constants for toric manifolds of Weyl chambers"
)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Seed for the oracle's evaluation points and for sampling.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Largest Weyl group the ring and oracle will enumerate.
    #[arg(long, global = true, env = "WEYL_TORIC_SIZE_CAP", default_value_t = DEFAULT_SIZE_CAP)]
    size_cap: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Mode {
    Exhaustive,
    Sampled,
}

#[derive(Args, Debug)]
struct SystemArgs {
    #[arg(long = "type", value_parser = parse_family)]
    family: Family,
    /// Rank; fixed at 2 for G2.
    #[arg(long)]
    rank: Option<usize>,
}

fn parse_family(s: &str) -> Result<Family, String> {
    s.parse::<Family>().map_err(|e| e.to_string())
}

impl SystemArgs {
    fn system(&self) -> Result<RootSystemId, Error> {
        match (self.family, self.rank) {
            (Family::G2, None | Some(2)) => Ok(RootSystemId::g2()),
            (Family::G2, Some(r)) => Err(Error::InvalidSystem(format!(
                "--rank {r}: G2 has fixed rank 2"
            ))),
            (f, Some(r)) => RootSystemId::new(f, r),
            (f, None) => Err(Error::InvalidSystem(format!("type {f} needs --rank"))),
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// ⟨[Y^w][X_u][X_v]⟩ with its Young diagram.
    Triple {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
        #[arg(long)]
        w: String,
    },
    /// Intersection number of a degree-n monomial such as "3;1,2,3,5;1,2,3,5;3".
    Intersect {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, allow_hyphen_values = true)]
        monomial: String,
    },
    /// Expansion of [X_u][X_v] in the basis {[X_w]}.
    Structconst {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Every nonzero structure constant c_{u,v}^w.
    Table {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Nonzero entries of the pairing ⟨[Y^u][X_v]⟩.
    Pairing {
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// Compare the formulas with the localization oracle.
    Verify {
        #[command(flatten)]
        sys: SystemArgs,
        #[arg(long, value_enum, default_value_t = Mode::Exhaustive)]
        mode: Mode,
        /// Chain and non-chain monomials drawn in sampled mode.
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// The G2 class lists and the three G2 intersection values.
    G2Table,
}

#[derive(Serialize)]
struct CoefficientRow {
    #[serde(rename = "type")]
    family: String,
    rank: usize,
    u: String,
    v: String,
    w: String,
    c: i64,
}

fn element(system: RootSystemId, s: &str) -> Result<WeylElement, Error> {
    WeylElement::parse(system, s)
}

fn csv_string<T: Serialize>(rows: &[T]) -> Result<String, Failure> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    for row in rows {
        writer
            .serialize(row)
            .map_err(|e| Failure::Io(e.to_string()))?;
    }
    let bytes = writer
        .into_inner()
        .map_err(|e| Failure::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Failure::Io(e.to_string()))
}

fn csv_header_only(header: &str) -> String {
    format!("{header}\n")
}

fn json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

struct Output {
    body: String,
    /// Nonzero when the command itself reports a failed check.
    status: u8,
}

impl Output {
    fn ok(body: String) -> Self {
        Self { body, status: 0 }
    }
}

fn coefficient_rows(
    system: RootSystemId,
    u: &WeylElement,
    v: &WeylElement,
    ring: &BasisRing,
) -> Result<Vec<CoefficientRow>, Error> {
    Ok(ring
        .structure_constants(u, v)?
        .terms()
        .map(|(w, c)| CoefficientRow {
            family: system.family().to_string(),
            rank: system.rank(),
            u: u.to_string(),
            v: v.to_string(),
            w: w.to_string(),
            c,
        })
        .collect())
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let format = cli.format;
    match &cli.command {
        Command::Triple { sys, u, v, w } => {
            let system = sys.system()?;
            let (u, v, w) = (
                element(system, u)?,
                element(system, v)?,
                element(system, w)?,
            );
            let lambda = diagram::build_lambda(&u, &v, &w)?;
            let value = triple_number(&u, &v, &w)?;
            Ok(Output::ok(match format {
                Format::Text => format!("diagram {lambda}\nvalue {value}\n"),
                Format::Json => json_string(&json!({
                    "type": system.family().to_string(),
                    "rank": system.rank(),
                    "u": u, "v": v, "w": w,
                    "diagram": lambda,
                    "value": value,
                })),
                Format::Csv => csv_string(&[triple_row(system, &u, &v, &w, &lambda, value)])?,
            }))
        }
        Command::Intersect { sys, monomial } => {
            let system = sys.system()?;
            let m = TauMonomial::parse(system, monomial)?;
            let r = intersection_number(&m);
            let reason = serde_json::to_value(r.reason).expect("enum serializes");
            let reason = reason.as_str().unwrap_or_default().to_string();
            Ok(Output::ok(match format {
                Format::Text => format!(
                    "monomial {m}\ndiagram {}\nreason {reason}\nvalue {}\n",
                    r.diagram, r.value
                ),
                Format::Json => json_string(&json!({
                    "type": system.family().to_string(),
                    "rank": system.rank(),
                    "monomial": m,
                    "value": r.value,
                    "diagram": r.diagram,
                    "reason": r.reason,
                })),
                Format::Csv => csv_string(&[IntersectRow {
                    family: system.family().to_string(),
                    rank: system.rank(),
                    monomial: m.to_string(),
                    value: r.value,
                    reason,
                }])?,
            }))
        }
        Command::Structconst { sys, u, v } => {
            let system = sys.system()?;
            let (u, v) = (element(system, u)?, element(system, v)?);
            let ring = BasisRing::new(system, cli.size_cap)?;
            let c = ring.structure_constants(&u, &v)?;
            Ok(Output::ok(match format {
                Format::Text => format!("[X_{u}][X_{v}] = {c}\n"),
                Format::Json => json_string(&json!({
                    "type": system.family().to_string(),
                    "rank": system.rank(),
                    "u": u, "v": v,
                    "terms": c,
                })),
                Format::Csv => {
                    let rows = coefficient_rows(system, &u, &v, &ring)?;
                    if rows.is_empty() {
                        csv_header_only("type,rank,u,v,w,c")
                    } else {
                        csv_string(&rows)?
                    }
                }
            }))
        }
        Command::Table { sys } => {
            let system = sys.system()?;
            let ring = BasisRing::new(system, cli.size_cap)?;
            let elements = ring.elements();
            let pairs: Vec<(usize, usize)> = (0..elements.len())
                .flat_map(|i| (0..elements.len()).map(move |j| (i, j)))
                .collect();
            let rows: Vec<Vec<CoefficientRow>> = pairs
                .par_iter()
                .map(|&(i, j)| coefficient_rows(system, &elements[i], &elements[j], &ring))
                .collect::<Result<_, _>>()?;
            let rows: Vec<CoefficientRow> = rows.into_iter().flatten().collect();
            Ok(Output::ok(match format {
                Format::Text => rows
                    .iter()
                    .map(|r| format!("{} {} {} {}\n", r.u, r.v, r.w, r.c))
                    .collect(),
                Format::Json => json_string(&rows),
                Format::Csv if rows.is_empty() => csv_header_only("type,rank,u,v,w,c"),
                Format::Csv => csv_string(&rows)?,
            }))
        }
        Command::Pairing { sys } => {
            let system = sys.system()?;
            let ring = BasisRing::new(system, cli.size_cap)?;
            let elements = ring.elements();
            let rows: Vec<PairingRow> = (0..elements.len())
                .flat_map(|i| ring.pairing().row(i).iter().map(move |&(j, x)| (i, j, x)))
                .map(|(i, j, x)| PairingRow {
                    family: system.family().to_string(),
                    rank: system.rank(),
                    u: elements[i].to_string(),
                    v: elements[j].to_string(),
                    value: x,
                })
                .collect();
            Ok(Output::ok(match format {
                Format::Text => rows
                    .iter()
                    .map(|r| format!("{} {} {}\n", r.u, r.v, r.value))
                    .collect(),
                Format::Json => json_string(&rows),
                Format::Csv => csv_string(&rows)?,
            }))
        }
        Command::Verify { sys, mode, samples } => {
            let system = sys.system()?;
            let mode = match mode {
                Mode::Exhaustive => VerifyMode::Exhaustive,
                Mode::Sampled => VerifyMode::Sampled,
            };
            let report = verify_family(system, mode, *samples, cli.seed, cli.size_cap)?;
            let status = if report.passed() { 0 } else { 1 };
            let body = match format {
                Format::Text => {
                    let mut s = format!(
                        "system {}\nseed {}\ntotal {}\nmismatches {}\n",
                        report.system,
                        report.seed,
                        report.total,
                        report.mismatches.len()
                    );
                    for m in &report.mismatches {
                        s.push_str(&format!(
                            "  {} formula {} oracle {}\n",
                            m.monomial, m.formula, m.oracle
                        ));
                    }
                    s
                }
                Format::Json => json_string(&report),
                Format::Csv => {
                    let rows: Vec<_> = report
                        .mismatches
                        .iter()
                        .map(|m| MismatchRow {
                            monomial: m.monomial.to_string(),
                            formula: m.formula,
                            oracle: m.oracle,
                        })
                        .collect();
                    if rows.is_empty() {
                        csv_header_only("monomial,formula,oracle")
                    } else {
                        csv_string(&rows)?
                    }
                }
            };
            Ok(Output { body, status })
        }
        Command::G2Table => {
            let g2 = RootSystemId::g2();
            let rows: Vec<G2Row> = enumerate_weyl(g2)
                .iter()
                .map(|u| G2Row {
                    u: u.to_string(),
                    x: unit_as_one(class_x(u)),
                    y: unit_as_one(class_y(u)),
                })
                .collect();
            let values: Vec<(String, i64)> = [vec![2, 1], vec![1, 1], vec![2, 2]]
                .into_iter()
                .map(|rows| {
                    let d = diagram::YoungDiagram::new(rows)?;
                    let value = diagram::intersection_g2(&d)?;
                    Ok((Lambda::Plain(d).to_string(), value))
                })
                .collect::<Result<_, Error>>()?;
            Ok(Output::ok(match format {
                Format::Text => {
                    let mut s = String::new();
                    for r in &rows {
                        s.push_str(&format!("[X_{}] = {}    [Y^{}] = {}\n", r.u, r.x, r.u, r.y));
                    }
                    for (d, v) in &values {
                        s.push_str(&format!("I{d} = {v}\n"));
                    }
                    s
                }
                Format::Json => json_string(&json!({
                    "classes": rows,
                    "values": values.iter().map(|(d, v)| json!({"diagram": d, "value": v})).collect::<Vec<_>>(),
                })),
                Format::Csv => csv_string(&rows)?,
            }))
        }
    }
}

fn triple_row(
    system: RootSystemId,
    u: &WeylElement,
    v: &WeylElement,
    w: &WeylElement,
    lambda: &Lambda,
    value: i64,
) -> TripleRow {
    TripleRow {
        family: system.family().to_string(),
        rank: system.rank(),
        u: u.to_string(),
        v: v.to_string(),
        w: w.to_string(),
        diagram: lambda.to_string(),
        value,
    }
}

#[derive(Serialize)]
struct TripleRow {
    #[serde(rename = "type")]
    family: String,
    rank: usize,
    u: String,
    v: String,
    w: String,
    diagram: String,
    value: i64,
}

#[derive(Serialize)]
struct IntersectRow {
    #[serde(rename = "type")]
    family: String,
    rank: usize,
    monomial: String,
    value: i64,
    reason: String,
}

#[derive(Serialize)]
struct PairingRow {
    #[serde(rename = "type")]
    family: String,
    rank: usize,
    u: String,
    v: String,
    value: i64,
}

#[derive(Serialize)]
struct MismatchRow {
    monomial: String,
    formula: i64,
    oracle: i64,
}

#[derive(Serialize)]
struct G2Row {
    u: String,
    x: String,
    y: String,
}

fn unit_as_one(m: TauMonomial) -> String {
    if m.degree() == 0 {
        "1".into()
    } else {
        m.to_string()
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::SizeCap { .. } => 3,
        Error::InvalidSystem(_)
        | Error::Parse { .. }
        | Error::InvalidElement { .. }
        | Error::InvalidLabel { .. }
        | Error::MixedSystems(..)
        | Error::Domain(_) => 2,
        Error::Consistency(_) | Error::Oracle(_) => 1,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let output = match run(&cli) {
        Ok(o) => o,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::FAILURE;
        }
    };
    let written = match &cli.out {
        Some(path) => File::create(path).and_then(|mut f| f.write_all(output.body.as_bytes())),
        None => io::stdout().lock().write_all(output.body.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::FAILURE;
    }
    ExitCode::from(output.status)
}
