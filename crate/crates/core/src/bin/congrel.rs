use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::json;

use congrel::dsl::{check_statement, parse};
use congrel::relations::{parse_congruence_spec, parse_relation_spec};
use congrel::theorems::{
    check_hypothesis, check_modularity_subsquares, search_counterexample, sweep_theorem,
    witness_chain, CheckReport, Strategy, Theorem, WitnessOutcome,
};
use congrel::{corpus, FiniteAlgebra, Limits};

/// Check relational identities on finite algebras.
///
/// An <ALGEBRA> is a path to an algebra JSON file or `builtin:<name>`.
/// Exit status: 0 when every check holds, 1 when a violation is found,
/// 2 on usage or input errors.
#[derive(Parser)]
#[command(name = "congrel", version)]
struct Cli {
    /// Emit JSON reports, one document per line
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads (default: available parallelism)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Report elapsed time as 0 so output is reproducible byte for byte
    #[arg(long, global = true)]
    no_timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check β(γ;δ;γ) <= βγ + δ on every 4-generated subalgebra of A×A
    CheckHypothesis {
        algebra: String,
        /// Only use the first N elements of A×A as generators
        #[arg(long)]
        seed_limit: Option<usize>,
    },
    /// Check modularity of every 4-generated subalgebra of A×A
    CheckModularity {
        algebra: String,
        #[arg(long)]
        seed_limit: Option<usize>,
    },
    /// Sweep the relational conclusions over congruences and relations
    Verify {
        algebra: String,
        /// subrel, subrelpiu, wtip or rr; all four when omitted
        #[arg(long)]
        theorem: Option<Theorem>,
        /// exhaust, principal, sample or principal+sample
        #[arg(long, default_value = "principal+sample")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random relations drawn by the sampling strategies
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Build the alternating chain for a α c, a R b, b S c
    Witness {
        algebra: String,
        /// Congruence: `cg:x,y` or a relation spec
        #[arg(long)]
        alpha: String,
        /// The elements a,b,c
        #[arg(long)]
        abc: String,
        /// Relation: JSON literal, `principal:x,y`, `diag` or `full`
        #[arg(long = "R")]
        r: String,
        #[arg(long = "S")]
        s: String,
    },
    /// Randomly search for a violation of the relational conclusions
    Search {
        algebra: String,
        #[arg(long, default_value_t = 10_000)]
        budget: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a statement such as "forall a:Cong, T:Tol . a & T* = (a & T)*"
    Eval {
        statement: String,
        algebra: String,
        #[arg(long, default_value = "principal+sample")]
        strategy: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
    },
    /// Built-in algebras
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand)]
enum CorpusAction {
    /// List built-in algebra names
    List,
}

struct Output {
    json: bool,
    no_timing: bool,
    failed: bool,
}

impl Output {
    fn report(&mut self, mut report: CheckReport) -> io::Result<()> {
        if self.no_timing {
            report.elapsed = Duration::ZERO;
        }
        self.failed |= !report.holds();
        let mut out = io::stdout().lock();
        if self.json {
            writeln!(out, "{}", report.to_json())?;
        } else {
            writeln!(out, "{report}")?;
        }
        out.flush()
    }
}

fn strategy(name: &str, samples: usize) -> congrel::Result<Strategy> {
    match name {
        "sample" => Ok(Strategy::Sample(samples)),
        "principal+sample" => Ok(Strategy::PrincipalSample(samples)),
        other => other.parse(),
    }
}

fn triple(text: &str) -> congrel::Result<(usize, usize, usize)> {
    let parts: Vec<usize> = text
        .split(',')
        .map(|p| p.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| congrel::Error::Precondition(format!("expected a,b,c but got '{text}'")))?;
    match parts[..] {
        [a, b, c] => Ok((a, b, c)),
        _ => Err(congrel::Error::Precondition(format!(
            "expected a,b,c but got '{text}'"
        ))),
    }
}

fn load(spec: &str) -> congrel::Result<FiniteAlgebra> {
    corpus::resolve(spec).map_err(|e| match e {
        congrel::Error::Io(io) => {
            congrel::Error::Precondition(format!("cannot read '{spec}': {io}"))
        }
        other => other,
    })
}

fn run(cli: Cli) -> congrel::Result<bool> {
    let limits = Limits::from_env();
    let mut out = Output {
        json: cli.json,
        no_timing: cli.no_timing,
        failed: false,
    };
    match cli.command {
        Command::CheckHypothesis {
            algebra,
            seed_limit,
        } => {
            let a = load(&algebra)?;
            out.report(check_hypothesis(&a, seed_limit, &limits)?)?;
        }
        Command::CheckModularity {
            algebra,
            seed_limit,
        } => {
            let a = load(&algebra)?;
            out.report(check_modularity_subsquares(&a, seed_limit, &limits)?)?;
        }
        Command::Verify {
            algebra,
            theorem,
            strategy: name,
            seed,
            samples,
        } => {
            let a = load(&algebra)?;
            let strategy = strategy(&name, samples)?;
            let theorems = match theorem {
                Some(t) => vec![t],
                None => Theorem::CONCLUSIONS.to_vec(),
            };
            for t in theorems {
                out.report(sweep_theorem(&a, t, strategy, seed, &limits)?)?;
            }
        }
        Command::Witness {
            algebra,
            alpha,
            abc,
            r,
            s,
        } => {
            let alg = load(&algebra)?;
            let n = alg.size();
            let alpha = parse_congruence_spec(&alpha, &alg)?;
            let (a, b, c) = triple(&abc)?;
            let r = parse_relation_spec(&r, n)?;
            let s = parse_relation_spec(&s, n)?;
            let outcome = witness_chain(&alg, &alpha, a, b, c, &r, &s)?;
            match &outcome {
                WitnessOutcome::Chain(chain) => {
                    if out.json {
                        let links: Vec<&str> = chain
                            .links
                            .iter()
                            .map(|k| match k {
                                congrel::theorems::LinkKind::YStep => "y",
                                congrel::theorems::LinkKind::XStep => "x",
                            })
                            .collect();
                        let doc = json!({
                            "algebra": alg.name(),
                            "result": "chain",
                            "abc": [a, b, c],
                            "subsquare": chain.subsquare.pairs(),
                            "chain": chain.chain,
                            "links": links,
                            "certificate_walk": chain.certificate_walk(),
                        });
                        println!("{doc}");
                    } else {
                        println!("{chain}");
                    }
                }
                WitnessOutcome::Disconnected {
                    subsquare,
                    reachable,
                } => {
                    out.failed = true;
                    if out.json {
                        let doc = json!({
                            "algebra": alg.name(),
                            "result": "disconnected",
                            "abc": [a, b, c],
                            "subsquare": subsquare.pairs(),
                            "reachable": reachable,
                        });
                        println!("{doc}");
                    } else {
                        println!(
                            "(c,c) is not reachable from (a,a): {reachable} of {} pairs of B connected; \
                             the hypothesis fails on this subalgebra",
                            subsquare.len()
                        );
                    }
                }
            }
        }
        Command::Search {
            algebra,
            budget,
            seed,
        } => {
            let a = load(&algebra)?;
            let found = search_counterexample(&a, budget, seed, &limits)?;
            out.failed = found.is_some();
            if out.json {
                let doc = json!({
                    "algebra": a.name(),
                    "budget": budget,
                    "seed": seed,
                    "violation": found,
                });
                println!("{doc}");
            } else {
                match found {
                    Some(v) => println!("{}: counterexample found\n{v}", a.name()),
                    None => println!("{}: no counterexample in {budget} draws", a.name()),
                }
            }
        }
        Command::Eval {
            statement,
            algebra,
            strategy: name,
            seed,
            samples,
        } => {
            let stmt = parse(&statement)?;
            let a = load(&algebra)?;
            let strategy = strategy(&name, samples)?;
            if !out.json {
                println!("{stmt}");
            }
            out.report(check_statement(&a, &stmt, strategy, seed, &limits)?)?;
        }
        Command::Corpus {
            action: CorpusAction::List,
        } => {
            if out.json {
                println!("{}", json!(corpus::NAMES));
            } else {
                for name in corpus::NAMES {
                    let a = corpus::builtin(name)?;
                    println!("{name:<10} {a}");
                }
            }
        }
    }
    Ok(out.failed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(cli) {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
