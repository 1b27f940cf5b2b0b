use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use monoidforge::automata::verify::{language, multiplier, synchronized_multiplier};
use monoidforge::automata::{verify_biautomatic, Multiplication, Side, DEFAULT_STATE_CAP};
use monoidforge::chinese::{chinese_t, ChineseStaircase};
use monoidforge::checks::run_checks;
use monoidforge::hypoplactic::{decomposition_json, hypoplactic_t, tableau_diagram};
use monoidforge::sylvester::{sylvester_system, Bst};
use monoidforge::{monoid, Error, Letter, MonoidId, MonoidKind, Strategy, Word};

const SCHEMA: u32 = 1;
const STATE_CAP_VAR: &str = "MONOIDFORGE_STATE_CAP";

// Writes to stdout, ignoring a closed pipe.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($t)*);
    }};
}

macro_rules! outp {
    ($($t:tt)*) => {{
        use std::io::Write;
        let _ = write!(std::io::stdout(), $($t)*);
    }};
}

#[derive(Parser)]
#[command(name = "monoidforge", version, about = "Normal forms and biautomatic structures for Chinese, hypoplactic and sylvester monoids")]
struct Cli {
    /// chinese, hypoplactic or sylvester
    #[arg(long, global = true, default_value = "sylvester")]
    monoid: MonoidKind,
    /// Rank of the monoid.
    #[arg(long, global = true, default_value_t = 3)]
    n: u32,
    #[arg(long, global = true, default_value_t = 2024)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of a word.
    Nf {
        word: String,
        /// Print every rewriting step.
        #[arg(long)]
        trace: bool,
        /// Also print the staircase, tableau or tree.
        #[arg(long)]
        diagram: bool,
    },
    /// Whether two words represent the same element.
    Eq { u: String, v: String },
    /// Build and export an automaton.
    Automaton {
        #[command(subcommand)]
        machine: Machine,
    },
    /// Exhaustive checks of normal forms, multiplication and the automata.
    Verify {
        #[arg(long, default_value_t = 5)]
        max_len: usize,
    },
    /// Dump the complete rewriting system.
    Rules,
    /// Congruence class of a word by closure under the defining relations.
    Class {
        word: String,
        #[arg(long, default_value_t = 1_000_000)]
        fuel: usize,
    },
}

#[derive(Subcommand)]
enum Machine {
    /// Language of normal forms.
    NormalForms,
    /// Multiplier for right multiplication by a generator.
    RightMult(MultArgs),
    /// Multiplier for left multiplication by a generator.
    LeftMult(MultArgs),
}

#[derive(clap::Args)]
struct MultArgs {
    gamma: u32,
    /// Padding side of the synchronized automaton.
    #[arg(long, default_value = "R")]
    side: Side,
    /// Emit the transducer instead of its synchronization.
    #[arg(long)]
    raw: bool,
}

enum Failure {
    Usage(String),
    Resource(String),
    Negative(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::StateCap { .. }
            | Error::RankCap { .. }
            | Error::IncompleteClass { .. }
            | Error::FuelExhausted { .. }
            | Error::DelayExceeded { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Negative(msg)) => {
            if !msg.is_empty() {
                eprintln!("{msg}");
            }
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Resource(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}

fn state_cap() -> Result<usize, Failure> {
    match std::env::var(STATE_CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| Failure::Usage(format!("{STATE_CAP_VAR} must be a positive integer, got {v:?}"))),
        Err(_) => Ok(DEFAULT_STATE_CAP),
    }
}

fn print_json(mut v: Value) {
    if let Value::Object(map) = &mut v {
        map.insert("schema".into(), json!(SCHEMA));
    }
    out!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
}

fn run(cli: &Cli) -> Outcome {
    let m = MonoidId::new(cli.monoid, cli.n)?;
    let word = |s: &str| Word::parse(s, m.rank);
    match &cli.command {
        Command::Nf { word: w, trace, diagram } => nf(cli, m, &word(w)?, *trace, *diagram),
        Command::Eq { u, v } => {
            let (u, v) = (word(u)?, word(v)?);
            let (nu, nv) = (monoid::normal_form(m, &u)?, monoid::normal_form(m, &v)?);
            let equal = nu == nv;
            if cli.format == Format::Json {
                print_json(json!({
                    "monoid": m.kind, "rank": m.rank,
                    "u": u.render(m.rank), "v": v.render(m.rank),
                    "nf_u": nu.render(m.rank), "nf_v": nv.render(m.rank),
                    "equal": equal,
                }));
            } else {
                out!("{}", if equal { "equal" } else { "not-equal" });
            }
            if equal {
                Ok(())
            } else {
                Err(Failure::Negative(String::new()))
            }
        }
        Command::Automaton { machine } => automaton(cli, m, machine),
        Command::Verify { max_len } => verify(cli, m, *max_len),
        Command::Rules => {
            let text = match m.kind {
                MonoidKind::Chinese => chinese_t(m.rank).to_text(),
                MonoidKind::Hypoplactic => hypoplactic_t(m.rank)?.to_text(),
                MonoidKind::Sylvester => sylvester_system(m.rank).to_text(),
            };
            if cli.format == Format::Json {
                print_json(json!({"monoid": m.kind, "rank": m.rank, "rules": text.lines().collect::<Vec<_>>()}));
            } else {
                outp!("{text}");
            }
            Ok(())
        }
        Command::Class { word: w, fuel } => {
            let w = word(w)?;
            let class = monoid::presentation(m).congruence_class(&w, *fuel)?;
            let members: Vec<String> = class.iter().map(|x| x.render(m.rank)).collect();
            let normal: Vec<String> = class
                .iter()
                .filter(|x| monoid::is_normal_form(m, x))
                .map(|x| x.render(m.rank))
                .collect();
            if cli.format == Format::Json {
                print_json(json!({
                    "monoid": m.kind, "rank": m.rank, "word": w.render(m.rank),
                    "size": members.len(), "members": members, "normal_forms": normal,
                }));
            } else {
                for x in &members {
                    out!("{x}");
                }
                eprintln!("{} words, normal form {}", members.len(), normal.join(" "));
            }
            Ok(())
        }
    }
}

fn nf(cli: &Cli, m: MonoidId, w: &Word, trace: bool, diagram: bool) -> Outcome {
    let n = m.rank;
    let nf = monoid::normal_form(m, w)?;
    let steps = if trace {
        Some(monoid::rewriting_trace(m, w, Strategy::Leftmost)?)
    } else {
        None
    };
    match cli.format {
        Format::Json => {
            let structure = match m.kind {
                MonoidKind::Chinese => serde_json::to_value(ChineseStaircase::from_staircase_word(&nf, n)?),
                MonoidKind::Hypoplactic => serde_json::to_value(decomposition_json(&nf, n)),
                MonoidKind::Sylvester => Ok(Bst::from_word(&w.0).to_json()),
            }
            .expect("serializable");
            let mut v = json!({
                "monoid": m.kind, "rank": n,
                "input": w.render(n), "normal_form": nf.render(n), "structure": structure,
            });
            if let Some(steps) = steps {
                v["trace"] = json!(steps);
            }
            print_json(v);
        }
        Format::Dot => {
            if m.kind != MonoidKind::Sylvester {
                return Err(Failure::Usage("dot output of a normal form needs --monoid sylvester".into()));
            }
            outp!("{}", Bst::from_word(&w.0).to_dot());
        }
        Format::Text => {
            for s in steps.iter().flatten() {
                out!("  {s}");
            }
            out!("{}", nf.render(n));
            if diagram {
                match m.kind {
                    MonoidKind::Chinese => outp!("{}", ChineseStaircase::from_staircase_word(&nf, n)?.diagram()),
                    MonoidKind::Hypoplactic => outp!("{}", tableau_diagram(&nf)?),
                    MonoidKind::Sylvester => outp!("{}", Bst::from_word(&w.0).to_dot()),
                }
            }
        }
    }
    Ok(())
}

fn emit(cli: &Cli, json: Value, dot: String, counts: (usize, usize), extra: Value) -> Outcome {
    eprintln!("{} states, {} transitions", counts.0, counts.1);
    match cli.format {
        Format::Dot => outp!("{dot}"),
        _ => {
            let mut v = json;
            if let (Value::Object(map), Value::Object(extra)) = (&mut v, extra) {
                map.extend(extra);
            }
            print_json(v);
        }
    }
    Ok(())
}

fn automaton(cli: &Cli, m: MonoidId, machine: &Machine) -> Outcome {
    let cap = state_cap()?;
    let n = m.rank;
    let info = json!({"monoid": m.kind, "rank": n});
    let (args, mult) = match machine {
        Machine::NormalForms => {
            let f = language(m, cap)?.minimize(cap)?;
            let extra = json!({"monoid": m.kind, "rank": n, "machine": "normal-forms"});
            return emit(cli, f.to_json(n), f.to_dot(n), (f.num_states(), f.num_transitions()), extra);
        }
        Machine::RightMult(a) => (a, Multiplication::Right),
        Machine::LeftMult(a) => (a, Multiplication::Left),
    };
    let gamma = Letter::new(args.gamma, n)?;
    let mut extra = info;
    extra["gamma"] = json!(gamma.value());
    extra["multiplication"] = json!(mult);
    if args.raw {
        let t = multiplier(m, gamma, mult, cap)?;
        extra["machine"] = json!("transducer");
        emit(cli, t.to_json(n), t.to_dot(n), (t.num_states(), t.num_transitions()), extra)
    } else {
        let (f, delay) = synchronized_multiplier(m, gamma, mult, args.side, cap)?;
        extra["machine"] = json!("synchronized");
        extra["side"] = json!(args.side.to_string());
        extra["delay"] = json!(delay);
        emit(cli, f.to_json(n), f.to_dot(n), (f.num_states(), f.num_transitions()), extra)
    }
}

fn verify(cli: &Cli, m: MonoidId, max_len: usize) -> Outcome {
    let cap = state_cap()?;
    if max_len == 0 {
        return Err(Failure::Usage("--max-len must be positive".into()));
    }
    let checks = run_checks(m, max_len, cli.seed)?;
    let report = verify_biautomatic(m, max_len, cap)?;
    let failed_check = checks.iter().find(|c| c.gating && !c.pass);
    let pass = report.pass && failed_check.is_none();
    if cli.format == Format::Json {
        print_json(json!({
            "monoid": m.kind, "rank": m.rank, "max_len": max_len, "seed": cli.seed,
            "checks": checks, "automata": report, "pass": pass,
        }));
    } else {
        for c in &checks {
            let status = match (c.pass, c.gating) {
                (true, _) => "PASS",
                (false, true) => "FAIL",
                (false, false) => "NOTE",
            };
            out!("{status} {} ({} cases){}", c.name, c.checked, witness_suffix(c.witness.as_deref()));
        }
        let l = &report.language;
        out!(
            "{} normal-form language: {} states, {} words",
            if l.pass { "PASS" } else { "FAIL" },
            l.states,
            l.expected
        );
        for f in &report.families {
            out!(
                "{} {}: delay {}, {} transducer states, {} states, {} pairs",
                if f.pass { "PASS" } else { "FAIL" },
                f.family,
                f.delay,
                f.transducer_states,
                f.states,
                f.expected
            );
        }
        out!("{}", if pass { "verified" } else { "FAILED" });
    }
    if pass {
        return Ok(());
    }
    let witness = match failed_check {
        Some(c) => format!("{}: {}", c.name, c.witness.as_deref().unwrap_or("")),
        None => match report.first_counterexample() {
            Some((family, c)) => format!("{family}: {} pair ({:?}, {:?})", c.kind, c.u, c.v),
            None => "verification failed".into(),
        },
    };
    Err(Failure::Negative(format!("counterexample {witness}")))
}

fn witness_suffix(w: Option<&str>) -> String {
    w.map(|w| format!(": {w}")).unwrap_or_default()
}
