use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use qalu::ir::{cancel_adjacent_pairs, gate_counts, lower, validate_connectivity, Circuit};
use qalu::layout::AdderVariant;
use qalu::oracle::{encode_twos, twos_value, BitVec};
use qalu::units::{adder_unit, build, load_inputs, Params, Unit};
use qalu::verify::{verify_unit, DEFAULT_TRIALS};
use qalu::{text, State};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "qalu",
    version,
    about = "Nearest-neighbour quantum arithmetic circuits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build a unit, lower it and write it in the text format.
    Build {
        unit: String,
        #[command(flatten)]
        size: SizeArgs,
        /// Remove adjacent self-inverse pairs before writing.
        #[arg(long)]
        cancel: bool,
        /// Output file (stdout when omitted).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simulate a circuit file on a basis input and print its output ports.
    Run {
        file: PathBuf,
        /// Input port value, e.g. `--set A=3` or `--set B=-2`.
        #[arg(long = "set", value_name = "NAME=VALUE")]
        set: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Exhaustively verify a unit against the classical oracle.
    Verify {
        unit: String,
        #[command(flatten)]
        size: SizeArgs,
        /// Seed for the random superpositions of the linearity check.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random superpositions.
        #[arg(long, default_value_t = DEFAULT_TRIALS)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Print gate counts and depth of a unit after lowering.
    Count {
        unit: String,
        #[command(flatten)]
        size: SizeArgs,
        /// Remove adjacent self-inverse pairs before counting.
        #[arg(long)]
        cancel: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Check that every two-qubit gate of a circuit file acts on grid neighbours.
    CheckLayout {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args)]
struct SizeArgs {
    /// Operand width N.
    #[arg(long, default_value_t = 1)]
    n: usize,
    /// Divisor width M (divider only; defaults to N).
    #[arg(long)]
    m: Option<usize>,
    /// Adder wiring for the ripple adders p1/p2/p3.
    #[arg(long, value_enum)]
    variant: Option<Variant>,
    /// Divider: add the zero-divisor flag bit.
    #[arg(long)]
    zero_safe: bool,
    /// Divider: keep the remainder.
    #[arg(long)]
    with_remainder: bool,
}

#[allow(clippy::upper_case_acronyms)]
#[derive(Clone, Copy, ValueEnum)]
enum Variant {
    #[value(name = "I")]
    I,
    #[value(name = "II")]
    II,
    #[value(name = "III")]
    III,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

impl SizeArgs {
    fn resolve(&self, unit: &str) -> Result<(Unit, Params)> {
        let mut unit: Unit = unit.parse()?;
        if let Some(v) = self.variant {
            if !matches!(unit, Unit::P1 | Unit::P2 | Unit::P3) {
                bail!("--variant applies only to the ripple adders p1, p2 and p3");
            }
            unit = adder_unit(match v {
                Variant::I => AdderVariant::I,
                Variant::II => AdderVariant::II,
                Variant::III => AdderVariant::III,
            });
        }
        let params = Params {
            n: self.n,
            m: self.m.unwrap_or(self.n),
            zero_safe: self.zero_safe,
            with_remainder: self.with_remainder,
        };
        Ok((unit, params))
    }
}

fn emitted(unit: Unit, params: &Params, cancel: bool) -> Result<Circuit> {
    let c = lower(&build(unit, params)?);
    Ok(if cancel { cancel_adjacent_pairs(&c) } else { c })
}

fn read_circuit(path: &PathBuf) -> Result<Circuit> {
    let source = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    text::parse(&source).with_context(|| format!("parsing {}", path.display()))
}

/// Decimal (optionally negative), `0b…` or `0x…`.
fn parse_value(s: &str) -> Result<i128> {
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s),
    };
    let magnitude = if let Some(b) = body.strip_prefix("0b") {
        i128::from_str_radix(b, 2)
    } else if let Some(h) = body.strip_prefix("0x") {
        i128::from_str_radix(h, 16)
    } else {
        body.parse()
    };
    let magnitude = magnitude.map_err(|_| anyhow!("bad value `{s}`"))?;
    Ok(if neg { -magnitude } else { magnitude })
}

fn assignments(c: &Circuit, set: &[String]) -> Result<Vec<(String, u128)>> {
    set.iter()
        .map(|item| {
            let (name, value) = item
                .split_once('=')
                .ok_or_else(|| anyhow!("expected NAME=VALUE, got `{item}`"))?;
            let port = c
                .ports
                .iter()
                .find(|p| p.name == name && p.role.is_input())
                .ok_or_else(|| anyhow!("no input port named `{name}`"))?;
            let value = parse_value(value)?;
            let pattern = if value < 0 {
                if !port.signed {
                    bail!("port {name} is unsigned but got {value}");
                }
                encode_twos(value, port.width())?.unsigned()
            } else {
                value as u128
            };
            Ok((name.to_string(), pattern))
        })
        .collect()
}

fn cmd_run(file: &PathBuf, set: &[String], format: Format) -> Result<ExitCode> {
    let c = read_circuit(file)?;
    let inputs = assignments(&c, set)?;
    let index = load_inputs(&c, &inputs)?;
    let out = qalu::sim::run(&c, &State::basis_state(c.qubit_count, index)?)?;
    let mut ok = true;
    let mut lines = Vec::new();
    let mut values = serde_json::Map::new();
    for port in c.ports.iter().filter(|p| p.role.is_output()) {
        match out.read_qubits(&port.qubits) {
            Ok(pattern) => {
                let bits = BitVec::from_unsigned(pattern, port.width())?;
                let value = if port.signed {
                    twos_value(&bits)
                } else {
                    pattern as i128
                };
                lines.push(format!("{} = {value} ({bits})", port.name));
                values.insert(
                    port.name.clone(),
                    json!({ "value": value.to_string(), "bits": bits.to_string() }),
                );
            }
            Err(_) => {
                ok = false;
                lines.push(format!("{} = <not definite>", port.name));
                values.insert(port.name.clone(), serde_json::Value::Null);
            }
        }
    }
    match format {
        Format::Text => {
            for line in lines {
                println!("{line}");
            }
            println!("support = {}", out.support());
        }
        Format::Json => {
            let doc = json!({ "outputs": values, "support": out.support() });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn cmd_check_layout(file: &PathBuf, format: Format) -> Result<ExitCode> {
    let c = read_circuit(file)?;
    let violations = validate_connectivity(&c)?;
    let two_qubit = c.gates.iter().filter(|g| g.is_two_qubit()).count();
    match format {
        Format::Text => {
            for v in &violations {
                println!(
                    "gate {}: {:?} {:?} -> {} between ({}, {}) and ({}, {})",
                    v.gate_index,
                    v.gate.kind,
                    v.gate.control,
                    v.gate.target,
                    v.control_at.row,
                    v.control_at.col,
                    v.target_at.row,
                    v.target_at.col
                );
            }
            println!(
                "{} two-qubit gates, {} violations",
                two_qubit,
                violations.len()
            );
        }
        Format::Json => {
            let doc = json!({ "two_qubit_gates": two_qubit, "violations": violations });
            println!("{}", serde_json::to_string_pretty(&doc)?);
        }
    }
    Ok(if violations.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    })
}

fn main() -> Result<ExitCode> {
    let cli = Cli::parse();
    match cli.command {
        Command::Build {
            unit,
            size,
            cancel,
            output,
        } => {
            let (unit, params) = size.resolve(&unit)?;
            let rendered = text::print(&emitted(unit, &params, cancel)?)?;
            match output {
                Some(path) => fs::write(&path, rendered)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{rendered}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Run { file, set, format } => cmd_run(&file, &set, format),
        Command::Verify {
            unit,
            size,
            seed,
            trials,
            format,
        } => {
            let (unit, params) = size.resolve(&unit)?;
            let report = verify_unit(unit, &params, trials, seed)?;
            match format {
                Format::Text => println!("{report}"),
                Format::Json => println!("{}", serde_json::to_string_pretty(&report)?),
            }
            Ok(if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
        Command::Count {
            unit,
            size,
            cancel,
            format,
        } => {
            let (unit, params) = size.resolve(&unit)?;
            let c = emitted(unit, &params, cancel)?;
            let g = gate_counts(&c);
            match format {
                Format::Text => {
                    let kinds: Vec<String> = [("X", g.x), ("CNOT", g.cnot), ("CSX", g.csx)]
                        .into_iter()
                        .filter(|(_, k)| *k > 0)
                        .map(|(name, k)| format!("{name} {k}"))
                        .collect();
                    println!("{}", kinds.join(", "));
                    println!(
                        "two-qubit {}, total {}, depth {}, qubits {}",
                        g.two_qubit_total,
                        g.total(),
                        g.depth,
                        c.qubit_count
                    );
                }
                Format::Json => {
                    let doc = json!({ "unit": unit.name(), "params": params, "qubits": c.qubit_count, "counts": g });
                    println!("{}", serde_json::to_string_pretty(&doc)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckLayout { file, format } => cmd_check_layout(&file, format),
    }
}
