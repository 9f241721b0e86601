mod input;
mod render;

use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use cobordia::algebra::trace_composition;
use cobordia::evaluation::{evaluate_bounded, DEFAULT_MAX_LEGS};
use cobordia::laws::{run_suite, SuiteId, DEFAULT_MAX_CIRCLES};
use cobordia::{
    cir_formula, compose, dual_morphism, enumerate_pairings_bounded, morphism_to_json,
    tensor_morphisms, DiagMorphism, Error, ObjWord, Semiring,
};

use input::{check_single_stdin, read_morphism};

const EXIT_LAW_FAILURE: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_RESOURCE: u8 = 3;

/// Error carrying the exit status it should produce.
pub struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_resource_bound() {
            EXIT_RESOURCE
        } else {
            EXIT_INPUT
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

#[derive(Parser)]
#[command(name = "cobordia", version)]
#[command(about = "Compose, dualize, evaluate and check pairing diagrams with circle counts")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compose morphisms in diagrammatic order: the first argument is applied first.
    ///
    /// `compose G H` prints H∘G. Each argument is inline JSON, a file path, or `-` for stdin.
    Compose {
        #[arg(required = true, num_args = 2..)]
        morphisms: Vec<String>,
        /// Also print the traced loop count and the section-count formula for each step
        #[arg(long)]
        show_circles: bool,
    },
    /// Tensor morphisms left to right.
    Tensor {
        #[arg(required = true, num_args = 2..)]
        morphisms: Vec<String>,
    },
    /// Dual of a morphism.
    Dual { morphism: String },
    /// Evaluate a morphism as an array over a semiring.
    Eval {
        morphism: String,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        dim: u64,
        #[arg(long, value_enum, default_value_t = SemiringArg::Int)]
        semiring: SemiringArg,
        #[arg(long, value_enum, default_value_t = EvalFormat::Json)]
        format: EvalFormat,
        /// Largest number of array legs (domain plus codomain points)
        #[arg(long, default_value_t = DEFAULT_MAX_LEGS)]
        max_legs: usize,
    },
    /// Count and list all pairings between two objects.
    Enumerate {
        #[arg(long, allow_hyphen_values = true)]
        from: String,
        #[arg(long, allow_hyphen_values = true)]
        to: String,
        /// Largest total number of boundary points
        #[arg(long, env = "COBORDIA_MAX_POINTS", default_value_t = cobordia::diagrams::DEFAULT_MAX_POINTS)]
        max_points: usize,
    },
    /// Run law suites and print one JSON report per line.
    Laws {
        /// Suite name, or `all`
        #[arg(long, default_value = "all")]
        suite: String,
        /// Longest boundary word for exhaustive checks (defaults per suite)
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_MAX_CIRCLES)]
        max_circles: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Count diagnostic reports as failures
        #[arg(long)]
        strict_diagnostics: bool,
    },
    /// Draw a morphism as Graphviz DOT or plain text.
    Render {
        morphism: String,
        #[arg(long, value_enum, default_value_t = RenderFormat::Dot)]
        format: RenderFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SemiringArg {
    Int,
    Nat,
    Rational,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvalFormat {
    /// Array with its legs, dimension and semiring
    Json,
    /// Rows indexed by codomain, columns by domain
    Matrix,
}

#[derive(Clone, Copy, ValueEnum)]
enum RenderFormat {
    Dot,
    Ascii,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = String::new();
    let status = run(cli.command, &mut out);
    let _ = io::stdout().write_all(out.as_bytes());
    match status {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn read_all(args: &[String]) -> Result<Vec<DiagMorphism>, Failure> {
    check_single_stdin(args)?;
    args.iter().map(|a| read_morphism(a)).collect()
}

fn run(command: Command, out: &mut String) -> Result<u8, Failure> {
    match command {
        Command::Compose {
            morphisms,
            show_circles,
        } => {
            let ms = read_all(&morphisms)?;
            let mut acc = ms[0].clone();
            let mut steps = Vec::new();
            for (i, next) in ms[1..].iter().enumerate() {
                if show_circles {
                    let traced = trace_composition(next, &acc)?.closed_loops;
                    let formula = cir_formula(next, &acc)?;
                    steps.push(
                        json!({ "step": i + 1, "traced_loops": traced, "cir_formula": formula }),
                    );
                }
                acc = compose(next, &acc)?;
            }
            push_line(out, &morphism_to_json(&acc));
            for s in steps {
                push_line(out, &s.to_string());
            }
        }
        Command::Tensor { morphisms } => {
            let ms = read_all(&morphisms)?;
            let mut acc = ms[0].clone();
            for next in &ms[1..] {
                acc = tensor_morphisms(&acc, next)?;
            }
            push_line(out, &morphism_to_json(&acc));
        }
        Command::Dual { morphism } => {
            let m = read_morphism(&morphism)?;
            push_line(out, &morphism_to_json(&dual_morphism(&m)?));
        }
        Command::Eval {
            morphism,
            dim,
            semiring,
            format,
            max_legs,
        } => {
            let m = read_morphism(&morphism)?;
            let dim = usize::try_from(dim).map_err(|_| Failure::input("dimension too large"))?;
            let text = match semiring {
                SemiringArg::Int => eval_text::<i64>(&m, dim, max_legs, format)?,
                SemiringArg::Nat => eval_text::<u64>(&m, dim, max_legs, format)?,
                SemiringArg::Rational => eval_text::<BigRational>(&m, dim, max_legs, format)?,
                SemiringArg::Float => eval_text::<f64>(&m, dim, max_legs, format)?,
            };
            push_line(out, &text);
        }
        Command::Enumerate {
            from,
            to,
            max_points,
        } => {
            let dom = ObjWord::parse(&from)?;
            let cod = ObjWord::parse(&to)?;
            let pairings = enumerate_pairings_bounded(&dom, &cod, max_points)?;
            push_line(out, &pairings.len().to_string());
            for p in pairings {
                let m = DiagMorphism::new(dom.clone(), cod.clone(), p, 0)?;
                push_line(out, &morphism_to_json(&m));
            }
        }
        Command::Laws {
            suite,
            max_len,
            max_circles,
            seed,
            strict_diagnostics,
        } => {
            let ids: Vec<SuiteId> = if suite == "all" {
                SuiteId::ALL.to_vec()
            } else {
                vec![suite.parse()?]
            };
            let mut failed = false;
            for id in ids {
                let reports = run_suite(
                    id,
                    max_len.unwrap_or(id.default_max_len()),
                    max_circles,
                    seed,
                )?;
                for r in reports {
                    failed |= r.is_failure() || (strict_diagnostics && !r.passed);
                    push_line(out, &r.to_json_line());
                }
            }
            if failed {
                return Ok(EXIT_LAW_FAILURE);
            }
        }
        Command::Render { morphism, format } => {
            let m = read_morphism(&morphism)?;
            out.push_str(&match format {
                RenderFormat::Dot => render::to_dot(&m),
                RenderFormat::Ascii => render::to_ascii(&m),
            });
        }
    }
    Ok(0)
}

fn eval_text<S: Semiring>(
    m: &DiagMorphism,
    dim: usize,
    max_legs: usize,
    format: EvalFormat,
) -> Result<String, Failure> {
    let array = evaluate_bounded::<S>(m, dim, max_legs)?;
    if let Some(x) = array.as_scalar() {
        return Ok(x.to_json().to_string());
    }
    Ok(match format {
        EvalFormat::Json => array.to_json_string(),
        EvalFormat::Matrix => Value::Array(
            array
                .matrix_rows()
                .iter()
                .map(|r| Value::Array(r.iter().map(S::to_json).collect()))
                .collect(),
        )
        .to_string(),
    })
}

fn push_line(out: &mut String, line: &str) {
    out.push_str(line);
    out.push('\n');
}
