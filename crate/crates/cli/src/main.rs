//! Command-line front end for the matroid-adjoint toolkit.
//!
//! Usage:
//!   matroid-adjoint <command> <matroid-spec> [options]
//!
//! Exit codes: 0 success, 1 mathematical refutation (a guaranteed
//! property failed on this input, with a structured witness), 2 usage or
//! resource errors.

mod commands;
mod dot;
mod input;

use std::process::ExitCode;
use std::time::Instant;

use matroid_adjoint::derived::EpsilonVariant;
use matroid_adjoint::Error;
use serde_json::json;

const USAGE: &str = "matroid-adjoint <command> <matroid-spec> [options]

commands:
  info <spec>                     size, rank, backend, loops, connectivity
  flats <spec>                    all flats by rank
  hyperplanes <spec>              rank-(r-1) flats in canonical order
  circuits <spec>                 minimal dependent sets
  modular <spec>                  pairwise modularity + hyperplane count
  sigma <spec>                    type I adjoint with hyperplane labels
  sigma-seq <spec>                iterate sigma and classify the sequence
        [--max-iter N] [--size-cap N]
  check-adjoint <spec>            verify an adjoint certificate
        [--candidate sigma|FILE] [--labeling i,j,...]
  derived-ow <spec>               vector derived matroid of circuit vectors
  derived-comb <spec>             combinatorial derived matroid
        [--epsilon-variant all|one]
  ext-lattice <spec>              linear subclasses and the lambda map
  iso <specA> <specB>             rank-preserving bijection search
  dot <spec>                      Hasse diagram as DOT
        [--which flats|opposite|extension]
  conjecture71 [<spec>...]        derived-rank experiment records

options:
  --format json|text    report format (default text)
  --out FILE            write the report to FILE instead of stdout

a <spec> is a catalogue name (fano, nonfano, vamos, pg:D,Q, u:R,N[:p=P],
sums with +) or a path to a matroid JSON file";

struct Options {
    positionals: Vec<String>,
    candidate: String,
    labeling: Option<String>,
    max_iter: usize,
    size_cap: usize,
    which: String,
    epsilon: EpsilonVariant,
    json: bool,
    out: Option<String>,
}

fn parse_options(args: &[String]) -> Result<Options, Error> {
    let mut opts = Options {
        positionals: Vec::new(),
        candidate: "sigma".to_string(),
        labeling: None,
        max_iter: matroid_adjoint::adjoint::DEFAULT_MAX_ITER,
        size_cap: matroid_adjoint::adjoint::DEFAULT_SIZE_CAP,
        which: "flats".to_string(),
        epsilon: EpsilonVariant::AllWitnesses,
        json: false,
        out: None,
    };
    let mut it = args.iter();
    while let Some(arg) = it.next() {
        let mut take = |name: &str| {
            it.next()
                .cloned()
                .ok_or_else(|| Error::Invalid(format!("{name} needs a value")))
        };
        match arg.as_str() {
            "--candidate" => opts.candidate = take("--candidate")?,
            "--labeling" => opts.labeling = Some(take("--labeling")?),
            "--max-iter" => {
                opts.max_iter = take("--max-iter")?
                    .parse()
                    .map_err(|_| Error::Invalid("--max-iter needs an integer".into()))?
            }
            "--size-cap" => {
                opts.size_cap = take("--size-cap")?
                    .parse()
                    .map_err(|_| Error::Invalid("--size-cap needs an integer".into()))?
            }
            "--which" => opts.which = take("--which")?,
            "--epsilon-variant" => {
                opts.epsilon = match take("--epsilon-variant")?.as_str() {
                    "all" => EpsilonVariant::AllWitnesses,
                    "one" => EpsilonVariant::OneWitness,
                    other => {
                        return Err(Error::Invalid(format!(
                            "unknown epsilon variant '{other}': expected all or one"
                        )))
                    }
                }
            }
            "--format" => {
                opts.json = match take("--format")?.as_str() {
                    "json" => true,
                    "text" => false,
                    other => {
                        return Err(Error::Invalid(format!(
                            "unknown format '{other}': expected json or text"
                        )))
                    }
                }
            }
            "--out" => opts.out = Some(take("--out")?),
            flag if flag.starts_with("--") => {
                return Err(Error::Invalid(format!("unknown option '{flag}'")))
            }
            positional => opts.positionals.push(positional.to_string()),
        }
    }
    Ok(opts)
}

fn positional<'a>(opts: &'a Options, index: usize, what: &str) -> Result<&'a str, Error> {
    opts.positionals
        .get(index)
        .map(|s| s.as_str())
        .ok_or_else(|| Error::Invalid(format!("missing argument: {what}")))
}

fn dispatch(command: &str, opts: &Options) -> Result<commands::CommandOutput, Error> {
    match command {
        "info" => commands::info(positional(opts, 0, "matroid spec")?),
        "flats" => commands::flats(positional(opts, 0, "matroid spec")?),
        "hyperplanes" => commands::hyperplanes(positional(opts, 0, "matroid spec")?),
        "circuits" => commands::circuits(positional(opts, 0, "matroid spec")?),
        "modular" => commands::modular(positional(opts, 0, "matroid spec")?),
        "sigma" => commands::sigma_cmd(positional(opts, 0, "matroid spec")?),
        "sigma-seq" => {
            commands::sigma_seq(positional(opts, 0, "matroid spec")?, opts.max_iter, opts.size_cap)
        }
        "check-adjoint" => commands::check_adjoint(
            positional(opts, 0, "matroid spec")?,
            &opts.candidate,
            opts.labeling.as_deref(),
        ),
        "derived-ow" => commands::derived_ow(positional(opts, 0, "matroid spec")?),
        "derived-comb" => {
            commands::derived_comb(positional(opts, 0, "matroid spec")?, opts.epsilon)
        }
        "ext-lattice" => commands::ext_lattice(positional(opts, 0, "matroid spec")?),
        "iso" => commands::iso(
            positional(opts, 0, "first matroid spec")?,
            positional(opts, 1, "second matroid spec")?,
        ),
        "dot" => commands::dot(positional(opts, 0, "matroid spec")?, &opts.which),
        "conjecture71" => commands::conjecture71(&opts.positionals),
        other => Err(Error::Invalid(format!("unknown command '{other}'"))),
    }
}

fn emit(payload: &str, out: &Option<String>) -> Result<(), Error> {
    match out {
        None => {
            print!("{payload}");
            Ok(())
        }
        Some(path) => std::fs::write(path, payload)
            .map_err(|e| Error::Invalid(format!("writing {path}: {e}"))),
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if args.is_empty() || args[0] == "--help" || args[0] == "help" {
        println!("{USAGE}");
        return ExitCode::SUCCESS;
    }
    let command = args[0].clone();
    let opts = match parse_options(&args[1..]) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}\n\n{USAGE}");
            return ExitCode::from(2);
        }
    };
    let started = Instant::now();
    match dispatch(&command, &opts) {
        Ok(output) => {
            let payload = if opts.json {
                let report = json!({
                    "command": command,
                    "input": opts.positionals,
                    "result": output.result,
                    "witnesses": output.witnesses,
                    "timings": {"wall_ms": started.elapsed().as_millis() as u64},
                });
                format!("{report}\n")
            } else {
                output.text.clone()
            };
            if let Err(e) = emit(&payload, &opts.out) {
                eprintln!("error: {e}");
                return ExitCode::from(2);
            }
            if output.refuted {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(Error::Refuted(msg)) => {
            eprintln!("refutation: {msg}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
