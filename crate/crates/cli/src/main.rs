use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use cellres::fan::{alternate_chamber, fundamental_sequence, irrelevant_ideal};
use cellres::fixtures::{example, examples};
use cellres::io::{complex_table, complex_to_json, label_table, macaulay2_script, render_svg, FanInput};
use cellres::pipeline::{resolve, Resolution};
use cellres::verify::{cell_labels, run_battery, BatteryOptions};
use cellres::Error;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

const EXIT_SCHEMA: u8 = 2;
const EXIT_FAN: u8 = 3;
const EXIT_VERIFY: u8 = 4;

#[derive(Parser, Debug)]
#[command(name = "cellres", version, about = "Cellular resolutions of the diagonal of smooth projective toric varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Fan JSON file, or `builtin:<name>` for a built-in example.
    #[arg(long, global = true)]
    input: Option<String>,
    /// Deformation vector, comma separated rationals such as `1/10,0,0,1/10`.
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    epsilon: Option<Vec<String>>,
    /// Class group basis as rows of integer combinations of divisors, `0,1,0,0;0,0,1,0`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    basis: Option<String>,
    /// Rays removed for the alternate chamber (1-based), comma separated.
    #[arg(long, global = true, value_delimiter = ',')]
    removed_rays: Option<Vec<usize>>,
    /// Output file or directory; standard output when absent.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Smoothness, completeness and unimodularity of the fan.
    Classify,
    /// Build the complex.
    Resolve,
    /// Run the verification battery; exit 4 on any failed check.
    Verify {
        /// Do not fail on degrees whose homology is killed by the irrelevant ideal.
        #[arg(long)]
        allow_irrelevant_torsion: bool,
    },
    /// Draw the rank 2 quotient arrangement.
    Svg,
    /// Macaulay2 script for an independent check.
    CasScript,
    /// Write the built-in example fans as JSON into the output directory.
    Examples,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
    Svg,
    Cas,
}

#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn schema(message: impl Into<String>) -> Self {
        Failure { code: EXIT_SCHEMA, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::DeformationLength { .. } => EXIT_SCHEMA,
            Error::InvalidFan(_)
            | Error::DependentColumns
            | Error::Torsion(_)
            | Error::InvalidBasis(_)
            | Error::InvalidRemoval(_) => EXIT_FAN,
            _ => 1,
        };
        Failure { code, message: e.to_string() }
    }
}

fn load_input(cli: &Cli) -> Result<FanInput, Failure> {
    let source = cli.input.as_deref().ok_or_else(|| Failure::schema("--input is required"))?;
    let mut input = match source.strip_prefix("builtin:") {
        Some(name) => {
            let e = example(name).ok_or_else(|| Failure::schema(format!("unknown built-in example {name:?}")))?;
            FanInput::from_example(&e)
        }
        None => {
            let text = fs::read_to_string(source).map_err(|e| Failure { code: 1, message: format!("{source}: {e}") })?;
            FanInput::from_json(&text).map_err(|e| Failure::schema(format!("{source}: {e}")))?
        }
    };
    if let Some(eps) = &cli.epsilon {
        input.epsilon = Some(eps.clone());
    }
    if let Some(basis) = &cli.basis {
        input.cl_basis = Some(parse_basis(basis)?);
    }
    if let Some(removed) = &cli.removed_rays {
        if removed.contains(&0) {
            return Err(Failure::schema("--removed-rays is 1-based"));
        }
        input.removed_rays = Some(removed.iter().map(|i| i - 1).collect());
    }
    Ok(input)
}

fn parse_basis(s: &str) -> Result<Vec<Vec<i64>>, Failure> {
    s.split(';')
        .map(|row| row.split(',').map(|x| x.trim().parse::<i64>()).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Failure::schema(format!("--basis: {e}")))
}

fn resolution(input: &FanInput) -> Result<Resolution, Failure> {
    let fan = input.fan()?;
    let eps = input.deformation()?;
    Ok(resolve(&fan, input.cl_basis.as_deref(), &eps)?)
}

fn write_out(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text).map_err(|e| Failure { code: 1, message: format!("{}: {e}", path.display()) }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &impl serde::Serialize) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

fn render(res: &Resolution, format: Format) -> Result<String, Failure> {
    let canonical = res.complex.canonicalize();
    Ok(match format {
        Format::Json => pretty(&complex_to_json(&canonical)),
        Format::Table => complex_table(&canonical),
        Format::Svg => render_svg(&res.qc, &cell_labels(&res.qc))?,
        Format::Cas => macaulay2_script(&canonical),
    })
}

fn run(cli: &Cli) -> Result<(), Failure> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Examples => {
            let dir = out.ok_or_else(|| Failure::schema("examples needs --out <directory>"))?;
            fs::create_dir_all(dir).map_err(|e| Failure { code: 1, message: format!("{}: {e}", dir.display()) })?;
            for e in examples() {
                write_out(Some(&dir.join(format!("{}.json", e.name))), &pretty(&FanInput::from_example(&e)))?;
            }
            Ok(())
        }
        Command::Classify => {
            let input = load_input(cli)?;
            let fan = input.fan()?;
            let c = fan.classify();
            let ideal = irrelevant_ideal(&fan);
            let mut doc = json!({
                "n": fan.n(),
                "m": fan.m,
                "complete": c.complete,
                "smooth": c.smooth,
                "simplicial": c.simplicial,
                "unimodular": c.unimodular,
                "irrelevant_ideal": ideal.generator_strings('x'),
                "irrelevant_components": ideal.intersection_form(false),
            });
            if c.smooth {
                let seq = fundamental_sequence(&fan, input.cl_basis.as_deref())?;
                doc["class_group_rank"] = json!(seq.n() - seq.m());
            }
            write_out(out, &pretty(&doc))
        }
        Command::Resolve => {
            let res = resolution(&load_input(cli)?)?;
            write_out(out, &render(&res, cli.format.unwrap_or(Format::Json))?)
        }
        Command::Svg => {
            let res = resolution(&load_input(cli)?)?;
            write_out(out, &render(&res, cli.format.unwrap_or(Format::Svg))?)
        }
        Command::CasScript => {
            let res = resolution(&load_input(cli)?)?;
            write_out(out, &render(&res, cli.format.unwrap_or(Format::Cas))?)
        }
        Command::Verify { allow_irrelevant_torsion } => {
            let input = load_input(cli)?;
            let res = resolution(&input)?;
            let cones = match &input.removed_rays {
                Some(removed) => Some(alternate_chamber(&res.fan, removed)?.cones),
                None => None,
            };
            let opts = BatteryOptions { seed: cli.seed, cones, ..BatteryOptions::default() };
            let report = run_battery(&res, &opts)?;
            let text = match cli.format.unwrap_or(Format::Json) {
                Format::Table => {
                    let mut s = label_table(&res.complex.canonicalize());
                    for c in &report.checks {
                        s.push_str(&format!("{:<28} {}\n", c.name, if c.passed { "pass" } else { "FAIL" }));
                    }
                    s
                }
                _ => pretty(&report),
            };
            write_out(out, &text)?;
            let tolerated = |name: &str| *allow_irrelevant_torsion && name == "acyclicity";
            let failed: Vec<&str> = report.failed().into_iter().filter(|n| !tolerated(n)).collect();
            if failed.is_empty() {
                Ok(())
            } else {
                Err(Failure { code: EXIT_VERIFY, message: format!("failed checks: {}", failed.join(", ")) })
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_SCHEMA } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
