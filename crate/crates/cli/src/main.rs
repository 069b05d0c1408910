//! `mpca`: synthesis, modeling, generation and analysis of 90/150 automata.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mpca::automata::{
    ca_char_poly, concat_double, enumerate_cycles_with, evolve, synthesize_ca_with_bound, CaState,
    CensusOptions, RuleVector, StateClass, DEFAULT_SYNTHESIS_BOUND,
};
use mpca::gf2::{berlekamp_massey, irreducible_power, min_period, BitSequence, Poly};
use mpca::modeler::{default_control_poly, model_ccsg, model_shrinking_generator, verify_model};
use mpca::registers::{
    ccsg_generate, lfsr_bits, shrink, CcsgConfig, Lfsr, RegisterState, ShrinkConfig,
};

const DEFAULT_COUNT_CAP: usize = 1 << 26;

#[derive(Parser, Debug)]
#[command(
    name = "mpca",
    version,
    about = "Linear cellular-automaton models of shrinking generators"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Kv,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Ascii,
    Pgm,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Pair of 90/150 automata with an irreducible characteristic polynomial.
    Synth {
        #[arg(long)]
        poly: Poly,
        /// Largest degree searched.
        #[arg(long, default_value_t = DEFAULT_SYNTHESIS_BOUND)]
        bound: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Doubling concatenation of a rule vector.
    Concat {
        #[arg(long)]
        rule: RuleVector,
        /// Number of doublings.
        #[arg(long, default_value_t = 1)]
        times: u32,
    },
    /// Characteristic polynomial of a rule vector.
    Charpoly {
        #[arg(long)]
        rule: RuleVector,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Builds and verifies the automaton model of a shrinking generator.
    ModelSg {
        /// Length of SR1.
        #[arg(long)]
        l1: u32,
        /// Characteristic polynomial of SR2.
        #[arg(long)]
        p2: Poly,
        /// SR1 polynomial (default: the largest primitive one of degree l1).
        #[arg(long)]
        p1: Option<Poly>,
        #[arg(long)]
        s1: Option<RegisterState>,
        #[arg(long)]
        s2: Option<RegisterState>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Measures a clock-controlled shrinking generator and builds its model.
    ModelCcsg {
        #[command(flatten)]
        regs: RegisterArgs,
        #[command(flatten)]
        df: DecimationArgs,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Keystream generation.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Linear complexity, minimal polynomial and period of a bit stream.
    Analyze {
        /// File of '0'/'1' characters, or "-" for stdin.
        #[arg(long)]
        bits: String,
        /// The period is searched among the divisors of this bound.
        #[arg(long)]
        period_bound: Option<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Cycle census of an automaton over all of its states.
    Cycles {
        #[arg(long)]
        rule: RuleVector,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Longest automaton accepted.
        #[arg(long, default_value_t = 24)]
        max_len: usize,
    },
    /// Space-time diagram of an automaton, time flowing downward.
    Render {
        #[arg(long)]
        rule: RuleVector,
        #[arg(long)]
        state: CaState,
        /// Number of rows, the initial state included.
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        steps: u64,
        #[arg(long, value_enum, default_value_t = RenderFormat::Ascii)]
        format: RenderFormat,
    },
    /// Checks a shrinking generator against an automaton.
    Verify {
        #[command(flatten)]
        regs: RegisterArgs,
        /// Automaton to test (default: the modeled one).
        #[arg(long)]
        rule: Option<RuleVector>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Args, Debug, Clone)]
struct RegisterArgs {
    #[arg(long)]
    p1: Poly,
    /// SR1 seed, stage 1 first (default all ones).
    #[arg(long)]
    s1: Option<RegisterState>,
    #[arg(long)]
    p2: Poly,
    #[arg(long)]
    s2: Option<RegisterState>,
}

#[derive(Args, Debug, Clone)]
struct DecimationArgs {
    /// SR1 stages read by the decimation function, lowest weight first.
    #[arg(long, value_delimiter = ',')]
    df_stages: Vec<usize>,
    #[arg(long, default_value_t = 1)]
    df_base: u64,
}

#[derive(Args, Debug, Clone)]
struct CountArg {
    /// Number of output bits.
    #[arg(long)]
    count: usize,
}

#[derive(Subcommand, Debug)]
enum GenKind {
    /// Single LFSR.
    Lfsr {
        #[arg(long)]
        poly: Poly,
        #[arg(long)]
        seed: Option<RegisterState>,
        #[command(flatten)]
        count: CountArg,
    },
    /// Shrinking generator.
    Sg {
        #[command(flatten)]
        regs: RegisterArgs,
        #[command(flatten)]
        count: CountArg,
    },
    /// Clock-controlled shrinking generator.
    Ccsg {
        #[command(flatten)]
        regs: RegisterArgs,
        #[command(flatten)]
        df: DecimationArgs,
        #[command(flatten)]
        count: CountArg,
    },
}

enum Failure {
    Usage(String),
    Compute(String),
    /// Verification ran; the report goes to stdout.
    Verdict(String),
}

fn compute<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Compute(e.to_string())
}

fn kv_lines(pairs: &[(&str, String)]) -> String {
    pairs.iter().map(|(k, v)| format!("{k}={v}\n")).collect()
}

fn check_count(n: usize) -> Result<usize, Failure> {
    if n > DEFAULT_COUNT_CAP {
        return Err(Failure::Usage(format!(
            "--count {n} exceeds the cap of {DEFAULT_COUNT_CAP} bits"
        )));
    }
    Ok(n)
}

fn shrink_config(r: &RegisterArgs) -> Result<ShrinkConfig, Failure> {
    ShrinkConfig::from_parts(r.p1.clone(), r.s1.clone(), r.p2.clone(), r.s2.clone())
        .map_err(compute)
}

fn ccsg_config(r: &RegisterArgs, df: &DecimationArgs) -> Result<CcsgConfig, Failure> {
    CcsgConfig::from_parts(
        r.p1.clone(),
        r.s1.clone(),
        r.p2.clone(),
        r.s2.clone(),
        df.df_stages.clone(),
        df.df_base,
    )
    .map_err(compute)
}

fn read_bits(path: &str) -> Result<BitSequence, Failure> {
    let mut text = String::new();
    if path == "-" {
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::Usage(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))?;
    }
    text.parse()
        .map_err(|e| Failure::Usage(format!("{path}: {e}")))
}

fn run(cmd: Cmd) -> Result<String, Failure> {
    let mut out = String::new();
    match cmd {
        Cmd::Synth {
            poly,
            bound,
            format,
        } => {
            let (a, b) = synthesize_ca_with_bound(&poly, bound).map_err(compute)?;
            match format {
                Format::Text => out = format!("{a}\n{b}\n"),
                Format::Kv => out = kv_lines(&[("ca1", a.to_string()), ("ca2", b.to_string())]),
            }
        }
        Cmd::Concat { rule, times } => {
            let mut d = rule;
            for _ in 0..times {
                d = concat_double(&d);
            }
            writeln!(out, "{d}").unwrap();
        }
        Cmd::Charpoly { rule, format } => {
            let q = ca_char_poly(&rule);
            let split = irreducible_power(&q).ok();
            match format {
                Format::Text => {
                    writeln!(out, "{q}").unwrap();
                    if let Some((base, k)) = split {
                        writeln!(out, "= ({base})^{k}").unwrap();
                    }
                }
                Format::Kv => {
                    let (base, k) = split
                        .map(|(b, k)| (b.to_string(), k.to_string()))
                        .unwrap_or_else(|| ("none".into(), "none".into()));
                    out = kv_lines(&[("charpoly", q.to_string()), ("basic_poly", base), ("p", k)]);
                }
            }
        }
        Cmd::ModelSg {
            l1,
            p2,
            p1,
            s1,
            s2,
            format,
        } => {
            let model = model_shrinking_generator(l1, &p2).map_err(compute)?;
            let p1 = match p1 {
                Some(p) => p,
                None => default_control_poly(l1).map_err(compute)?,
            };
            if p1.deg() != Some(l1 as usize) {
                return Err(Failure::Usage(format!(
                    "--p1 {p1} does not have degree --l1 {l1}"
                )));
            }
            let cfg = ShrinkConfig::from_parts(p1, s1, p2, s2).map_err(compute)?;
            let report = verify_model(&cfg, &model.ca1).map_err(compute)?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Kv => report.to_kv(),
            };
            if !report.verdict {
                return Err(Failure::Verdict(text));
            }
            out = text;
        }
        Cmd::ModelCcsg { regs, df, format } => {
            let cfg = ccsg_config(&regs, &df)?;
            let model = model_ccsg(&cfg).map_err(compute)?;
            let text = match format {
                Format::Text => model.to_text(),
                Format::Kv => model.to_kv(),
            };
            if !model.report.verdict {
                return Err(Failure::Verdict(text));
            }
            out = text;
        }
        Cmd::Gen { kind } => {
            let bits = match kind {
                GenKind::Lfsr { poly, seed, count } => {
                    let n = check_count(count.count)?;
                    let seed = seed.unwrap_or_else(|| RegisterState::ones(poly.deg().unwrap_or(0)));
                    let mut r = Lfsr::new(poly, &seed).map_err(compute)?;
                    lfsr_bits(&mut r, n)
                }
                GenKind::Sg { regs, count } => {
                    let n = check_count(count.count)?;
                    shrink(&shrink_config(&regs)?, n).map_err(compute)?
                }
                GenKind::Ccsg { regs, df, count } => {
                    let n = check_count(count.count)?;
                    ccsg_generate(&ccsg_config(&regs, &df)?, n).map_err(compute)?
                }
            };
            writeln!(out, "{bits}").unwrap();
        }
        Cmd::Analyze {
            bits,
            period_bound,
            format,
        } => {
            let s = read_bits(&bits)?;
            let lc = berlekamp_massey(&s);
            let period = match period_bound {
                Some(b) => Some(min_period(&s, b).map_err(compute)?),
                None => None,
            };
            let period = period.map_or_else(|| "none".to_string(), |t| t.to_string());
            match format {
                Format::Text => writeln!(
                    out,
                    "period={period} lc={} minimal_poly={}",
                    lc.lc, lc.charpoly
                )
                .unwrap(),
                Format::Kv => {
                    out = kv_lines(&[
                        ("length", s.len().to_string()),
                        ("period", period),
                        ("lc", lc.lc.to_string()),
                        ("minimal_poly", lc.charpoly.to_string()),
                    ])
                }
            }
        }
        Cmd::Cycles {
            rule,
            jobs,
            max_len,
        } => {
            if jobs == 0 {
                return Err(Failure::Usage("--jobs must be at least 1".into()));
            }
            let rows =
                enumerate_cycles_with(&rule, CensusOptions { max_len, jobs }).map_err(compute)?;
            let mut cycles = 0;
            let mut states = 0;
            let mut per_class = [0u64; 5];
            for r in &rows {
                writeln!(out, "{r}").unwrap();
                cycles += r.count_of_cycles;
                states += r.total_states;
                for (acc, c) in per_class.iter_mut().zip(r.class_counts) {
                    *acc += c;
                }
            }
            for (class, n) in StateClass::ALL.iter().zip(per_class) {
                writeln!(out, "class={class} states={n}").unwrap();
            }
            writeln!(out, "total cycles={cycles} states={states}").unwrap();
        }
        Cmd::Render {
            rule,
            state,
            steps,
            format,
        } => {
            let rows = evolve(&rule, &state, steps as usize - 1).map_err(compute)?;
            match format {
                RenderFormat::Ascii => {
                    for s in &rows {
                        let line: String = s
                            .bits()
                            .iter()
                            .map(|&b| if b == 1 { '#' } else { '.' })
                            .collect();
                        writeln!(out, "{line}").unwrap();
                    }
                }
                RenderFormat::Pgm => {
                    writeln!(out, "P2\n{} {}\n1", rule.len(), rows.len()).unwrap();
                    for s in &rows {
                        let line: Vec<String> = s.bits().iter().map(|b| b.to_string()).collect();
                        writeln!(out, "{}", line.join(" ")).unwrap();
                    }
                }
            }
        }
        Cmd::Verify { regs, rule, format } => {
            let cfg = shrink_config(&regs)?;
            let d = match rule {
                Some(d) => d,
                None => {
                    model_shrinking_generator(cfg.l1() as u32, &regs.p2)
                        .map_err(compute)?
                        .ca1
                }
            };
            let report = verify_model(&cfg, &d).map_err(compute)?;
            let text = match format {
                Format::Text => report.to_text(),
                Format::Kv => report.to_kv(),
            };
            if !report.verdict {
                return Err(Failure::Verdict(text));
            }
            out = text;
        }
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(cli.cmd);
    let stdout = io::stdout();
    let mut stdout = stdout.lock();
    match result {
        Ok(text) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::SUCCESS
        }
        Err(Failure::Verdict(text)) => {
            let _ = stdout.write_all(text.as_bytes());
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Compute(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
