//! `d3kit` command-line interface.
//!
//! Exit codes: 0 success, 1 invalid input, 2 `c1` not torsion (report still printed),
//! 3 unsupported contact surgery coefficient. Error records go to stderr as one JSON
//! object per line.

use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use d3kit::circle_bundle::{obstruction_report, pre_slide_manifold, sweep, ObstructionReport};
use d3kit::invariants::invariant_report;
use d3kit::kirby::{reduce_to_blocks, KirbyError, MarkedForm, Reduction};
use d3kit::surgery::{
    build_four_manifold, parse_diagram, reduce_component, reduce_diagram, ChainConvention,
    ContactDiagram, LegendrianComponent, SurgeryError, Variant,
};
use d3kit::Rat;

#[derive(Parser)]
#[command(
    name = "d3kit",
    version,
    about = "Exact d3 invariants of contact surgery diagrams"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a diagram file and print chi, sigma, c1^2 and d3 as JSON.
    Invariants {
        /// Diagram file (JSON), or `-` for stdin.
        file: PathBuf,
        #[command(flatten)]
        reduction: ReductionOpts,
    },
    /// Show the (+1)/(-1)-surgeries replacing one rational contact surgery.
    Expand {
        /// Contact surgery coefficient, `p/q` or an integer.
        #[arg(long, allow_hyphen_values = true)]
        coeff: String,
        #[arg(long, allow_hyphen_values = true)]
        tb: i64,
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        rot: i64,
        #[command(flatten)]
        reduction: ReductionOpts,
        #[arg(long)]
        json: bool,
    },
    /// Obstruction report for Honda's structure xi_i on the circle bundle Y_{g,n}.
    CircleBundle {
        #[arg(long, allow_hyphen_values = true)]
        g: i64,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Which structure, 0 or 1.
        #[arg(long, value_parser = parse_variant)]
        structure: Variant,
        #[arg(long, default_value_t = ChainConvention::Chain, value_parser = parse_convention)]
        convention: ChainConvention,
    },
    /// Obstruction table over 1 <= g <= g_max, 2g <= n <= n_max, both structures.
    Sweep {
        #[arg(long)]
        g_max: i64,
        #[arg(long)]
        n_max: i64,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        /// Same as `--format json`.
        #[arg(long, conflicts_with_all = ["csv", "format"])]
        json: bool,
        /// Same as `--format csv`.
        #[arg(long, conflicts_with = "format")]
        csv: bool,
    },
    /// Reduce a diagram, then split its intersection form into blocks by handle slides.
    KirbyReduce {
        /// Diagram file (JSON), or `-` for stdin.
        file: PathBuf,
        #[command(flatten)]
        reduction: ReductionOpts,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ReductionOpts {
    /// Stabilization sign choice for rational surgeries, 0 or 1.
    #[arg(long, default_value = "0", value_parser = parse_variant)]
    variant: Variant,
    /// Linking pattern of Legendrian surgery chains.
    #[arg(long, default_value_t = ChainConvention::Chain, value_parser = parse_convention)]
    convention: ChainConvention,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

fn parse_variant(s: &str) -> Result<Variant, String> {
    match s {
        "0" => Ok(Variant::Zero),
        "1" => Ok(Variant::One),
        _ => Err(format!("expected 0 or 1, got {s:?}")),
    }
}

fn parse_convention(s: &str) -> Result<ChainConvention, String> {
    s.parse()
        .map_err(|_| format!("expected chain or parallel, got {s:?}"))
}

/// A failed command, with its exit code and error record.
#[derive(Debug)]
enum Failure {
    Invalid(String),
    Unsupported {
        id: String,
        coeff: Rat,
        message: String,
    },
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Invalid(_) => 1,
            Failure::Unsupported { .. } => 3,
        }
    }

    fn record(&self) -> Value {
        match self {
            Failure::Invalid(message) => json!({
                "error": { "kind": "invalid_input", "message": message }
            }),
            Failure::Unsupported { id, coeff, message } => json!({
                "error": {
                    "kind": "unsupported_coefficient",
                    "component": id,
                    "coeff": coeff,
                    "message": message,
                }
            }),
        }
    }
}

impl From<SurgeryError> for Failure {
    fn from(e: SurgeryError) -> Self {
        match e {
            SurgeryError::UnsupportedCoefficient { ref id, ref coeff } => Failure::Unsupported {
                id: id.clone(),
                coeff: coeff.clone(),
                message: e.to_string(),
            },
            other => Failure::Invalid(other.to_string()),
        }
    }
}

fn invalid(e: impl ToString) -> Failure {
    Failure::Invalid(e.to_string())
}

/// Successful output and exit code (0, or 2 for a non-torsion report).
struct Output {
    text: String,
    code: u8,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// Pretty JSON with sorted keys.
fn to_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

fn read_diagram(path: &PathBuf) -> Result<ContactDiagram, Failure> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(invalid)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| invalid(format!("{}: {e}", path.display())))?
    };
    Ok(parse_diagram(&text)?)
}

fn cmd_invariants(file: &PathBuf, opts: &ReductionOpts) -> Result<Output, Failure> {
    let d = read_diagram(file)?;
    let rd = reduce_diagram(&d, opts.variant, opts.convention)?;
    let fmd = build_four_manifold(&rd)?;
    let report = invariant_report(&fmd).map_err(invalid)?;
    let mut v = serde_json::to_value(&report).expect("serializable");
    let obj = v.as_object_mut().expect("report is an object");
    obj.insert("variant".into(), json!(opts.variant.index()));
    obj.insert("convention".into(), json!(opts.convention.to_string()));
    obj.insert("one_handles".into(), json!(fmd.one_handles));
    obj.insert("intersection_form".into(), json!(fmd.int_form()));
    obj.insert("c1".into(), json!(fmd.c1));
    obj.insert("labels".into(), json!(fmd.labels));
    if !report.torsion {
        obj.insert(
            "note".into(),
            json!("c1 is not torsion on the boundary; d3 is undefined"),
        );
    }
    Ok(Output {
        text: to_json(&v),
        code: if report.torsion { 0 } else { 2 },
    })
}

fn cmd_expand(
    coeff: &str,
    tb: i64,
    rot: i64,
    opts: &ReductionOpts,
    as_json: bool,
) -> Result<Output, Failure> {
    let r: Rat = coeff.parse().map_err(invalid)?;
    if r.is_zero() {
        return Err(SurgeryError::UnsupportedCoefficient {
            id: "K".into(),
            coeff: r,
        }
        .into());
    }
    let c = LegendrianComponent::new("K", tb, rot, r.clone());
    let red = reduce_component(&c, opts.variant, opts.convention)?;
    if as_json {
        let rows: Vec<Value> = red
            .components
            .iter()
            .map(|k| {
                json!({
                    "id": k.id,
                    "tb": k.tb,
                    "rot": k.rot,
                    "coeff": k.coeff,
                    "smooth_framing": k.smooth_framing(),
                    "stabilizations": k.stabilizations,
                })
            })
            .collect();
        let v = json!({
            "input": { "coeff": r, "tb": tb, "rot": rot },
            "variant": opts.variant.index(),
            "convention": opts.convention.to_string(),
            "components": rows,
            "linking": red.linking,
            "q_count": red.q_count,
        });
        return Ok(Output::ok(to_json(&v)));
    }
    let mut s = format!(
        "contact {r}-surgery on (tb {tb}, rot {rot}), variant {}, convention {}\n",
        opts.variant.index(),
        opts.convention
    );
    s += &format!(
        "{:<8} {:>4} {:>4} {:>6} {:>8} {:>6}\n",
        "id", "tb", "rot", "coeff", "framing", "stabs"
    );
    for k in &red.components {
        s += &format!(
            "{:<8} {:>4} {:>4} {:>6} {:>8} {:>6}\n",
            k.id,
            k.tb,
            k.rot,
            k.coeff.to_string(),
            k.smooth_framing().to_string(),
            k.stabilizations
        );
    }
    s += "linking:\n";
    for row in &red.linking {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        s += &format!("  {}\n", cells.join(" "));
    }
    s += &format!("q_count: {}\n", red.q_count);
    Ok(Output::ok(s))
}

fn cmd_circle_bundle(
    g: i64,
    n: i64,
    variant: Variant,
    convention: ChainConvention,
) -> Result<Output, Failure> {
    let report = obstruction_report(g, n, variant);
    let mut v = serde_json::to_value(&report).expect("serializable");
    if report.d3_xi.is_some() {
        let diagram = pre_slide_manifold(g, n, variant, convention)
            .map_err(invalid)
            .and_then(|m| invariant_report(&m).map_err(invalid))?;
        let obj = v.as_object_mut().expect("report is an object");
        obj.insert(
            "diagram".into(),
            json!({
                "convention": convention.to_string(),
                "chi": diagram.chi,
                "sigma": diagram.sigma,
                "c1_squared": diagram.c1_squared,
                "d3": diagram.d3,
                "matches_closed_form": diagram.d3 == report.d3_xi,
            }),
        );
    }
    Ok(Output::ok(to_json(&v)))
}

fn cmd_sweep(g_max: i64, n_max: i64, format: Format) -> Result<Output, Failure> {
    let rows = sweep(g_max, n_max).map_err(invalid)?;
    let text = match format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut s = String::from(ObstructionReport::CSV_HEADER);
            s.push('\n');
            for r in &rows {
                s += &r.csv_row();
                s.push('\n');
            }
            s
        }
    };
    Ok(Output::ok(text))
}

fn form_json(m: &MarkedForm) -> Value {
    json!({ "q": m.q(), "c1": m.c1(), "labels": m.labels() })
}

fn cmd_kirby_reduce(
    file: &PathBuf,
    opts: &ReductionOpts,
    as_json: bool,
) -> Result<Output, Failure> {
    let d = read_diagram(file)?;
    let rd = reduce_diagram(&d, opts.variant, opts.convention)?;
    let fmd = build_four_manifold(&rd)?;
    let start = MarkedForm::from_four_manifold(&fmd);
    let (Reduction { form, script }, complete) = match reduce_to_blocks(&start) {
        Ok(r) => (r, true),
        Err(KirbyError::ReductionIncomplete(r)) => (*r, false),
        Err(e) => return Err(invalid(e)),
    };
    let blocks = form.describe_blocks();
    if as_json {
        let lines: Vec<String> = script.moves().iter().map(ToString::to_string).collect();
        let v = json!({
            "input": form_json(&start),
            "final": form_json(&form),
            "blocks": blocks,
            "complete": complete,
            "script": lines,
        });
        return Ok(Output::ok(to_json(&v)));
    }
    let mut s = String::new();
    s += &format!("labels: {}\n", form.labels().join(" "));
    s += "form:\n";
    for row in form.q() {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        s += &format!("  {}\n", cells.join(" "));
    }
    let c1: Vec<String> = form.c1().iter().map(ToString::to_string).collect();
    s += &format!("c1: {}\n", c1.join(" "));
    match (&blocks, complete) {
        (Some(b), true) => s += &format!("blocks: {b}\n"),
        _ => s += "blocks: incomplete\n",
    }
    s += &format!("script ({} moves):\n", script.len());
    for mv in script.moves() {
        s += &format!("  {mv}\n");
    }
    Ok(Output::ok(s))
}

fn run(cli: Cli) -> Result<Output, Failure> {
    match cli.command {
        Command::Invariants { file, reduction } => cmd_invariants(&file, &reduction),
        Command::Expand {
            coeff,
            tb,
            rot,
            reduction,
            json,
        } => cmd_expand(&coeff, tb, rot, &reduction, json),
        Command::CircleBundle {
            g,
            n,
            structure,
            convention,
        } => cmd_circle_bundle(g, n, structure, convention),
        Command::Sweep {
            g_max,
            n_max,
            format,
            json,
            csv,
        } => {
            let format = match (json, csv) {
                (true, _) => Format::Json,
                (_, true) => Format::Csv,
                _ => format,
            };
            cmd_sweep(g_max, n_max, format)
        }
        Command::KirbyReduce {
            file,
            reduction,
            json,
        } => cmd_kirby_reduce(&file, &reduction, json),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(cli) {
        Ok(out) => {
            let _ = io::stdout().write_all(out.text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(f) => {
            eprintln!("{}", f.record());
            ExitCode::from(f.code())
        }
    }
}
