//! Command-line front end: parsing, membership, bounded enumeration,
//! conversions, decision checks, reduction generation, and the self-test
//! suite.
//!
//! Exit codes: 0 = positive verdict / success, 1 = negative verdict or
//! failed selftest, 2 = usage or parse error, 3 = a brute-force or
//! construction cap was exceeded.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use jumpshuf::deciders::{
    is_commutative_regular, is_perm_closed_bounded, jfa_disjointness_bounded,
    jfa_membership_of_regular, Verdict,
};
use jumpshuf::expr::{
    alpha_shuf_to_regex, is_alpha_shuf, is_regular, parse_expr, print_expr, regex_to_alpha_shuf,
    Expr,
};
use jumpshuf::machine::{machine_to_regex, thompson_machine, Machine};
use jumpshuf::reductions::{
    binary_wrap, brute_ebc2, brute_sat, build_noncommutativity_nfa, build_nonregularity_jfa,
    ebc2_fixed_machine, ebc2_to_word, sat_fixed_gjfa, sat_to_gjfa_word, sat_to_jfa,
    stockmeyer_meyer_expr, stockmeyer_meyer_window, CnfFormula, Ebc2Instance, SatGjfaLayout,
};
use jumpshuf::semilinear::{
    alpha_shuf_to_semilinear, nfa_to_semilinear, print_semilinear, semilinear_to_normalform,
};
use jumpshuf::{Alphabet, Error, Word};

#[derive(Parser)]
#[command(name = "jumpshuf", about = "Jumping automata and shuffle expressions")]
struct Cli {
    /// RNG seed for randomized suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Length bound for bounded enumeration and bounded checks.
    #[arg(long, global = true, default_value_t = 6)]
    bound: usize,

    /// Per-coordinate box bound for semilinear comparisons.
    #[arg(long = "box", global = true, default_value_t = 6)]
    box_bound: u64,

    /// Brute-force caps as `sat-vars,ebc2-blocks,sm-vars`.
    #[arg(long, global = true, default_value = "20,8,6", value_name = "S,E,M")]
    caps: String,

    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Fa,
    Jfa,
    Gjfa,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum From {
    Regex,
    AlphaShuf,
    Machine,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum To {
    Regex,
    AlphaShuf,
    Machine,
    Semilinear,
    NormalForm,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum What {
    Commutative,
    PermClosed,
    JfaAndReg,
    Disjoint,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    SatJfa,
    SatNonreg,
    SatNoncomm,
    SatGjfa,
    Ebc2,
    SmExpr,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Args)]
struct ExprInput {
    /// Expression text (requires --alphabet).
    #[arg(long)]
    expr: Option<String>,

    /// Alphabet tokens for --expr, whitespace-separated (e.g. "a b c").
    #[arg(long)]
    alphabet: Option<String>,

    /// Machine file.
    #[arg(short = 'm', long)]
    machine: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide membership of a word under FA/JFA/GJFA semantics.
    Member {
        #[arg(long, value_enum)]
        mode: Mode,
        #[arg(short = 'm', long)]
        machine: PathBuf,
        /// Word literal (`a,b,c`; `@` for ε).
        #[arg(short = 'w', long)]
        word: String,
    },
    /// Enumerate the bounded language of a machine or expression.
    Enumerate {
        #[arg(long, value_enum, default_value = "jfa")]
        mode: Mode,
        #[command(flatten)]
        input: ExprInput,
    },
    /// Convert between expression flavors, machines, and semilinear sets.
    Convert {
        #[arg(long, value_enum)]
        from: From,
        #[arg(long, value_enum)]
        to: To,
        #[command(flatten)]
        input: ExprInput,
    },
    /// Run a decision procedure (exact or bounded).
    Check {
        #[arg(long, value_enum)]
        what: What,
        #[arg(short = 'm', long)]
        machine: PathBuf,
        /// Second machine (for --what disjoint).
        #[arg(long)]
        machine2: Option<PathBuf>,
        /// Slice semantics for --what perm-closed.
        #[arg(long, value_enum, default_value = "jfa")]
        mode: Mode,
    },
    /// Generate a hardness-reduction gadget from an instance file.
    Reduce {
        #[arg(long, value_enum)]
        kind: Kind,
        /// DIMACS formula or block-cover instance file.
        #[arg(short = 'i', long)]
        input: PathBuf,
        /// Also emit the binary-alphabet encoding (GJFA gadgets only).
        #[arg(long)]
        binary: bool,
        /// Output directory for the gadget files.
        #[arg(short = 'o', long, default_value = ".")]
        out: PathBuf,
    },
    /// Run the self-test suites.
    Selftest {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
    },
}

struct Caps {
    sat: usize,
    ebc2: usize,
    sm: usize,
}

fn parse_caps(text: &str) -> Result<Caps, String> {
    let parts: Vec<&str> = text.split(',').collect();
    let [s, e, m] = parts[..] else {
        return Err(format!("--caps expects three comma-separated numbers, got `{text}`"));
    };
    let num = |t: &str| t.trim().parse::<usize>().map_err(|_| format!("bad cap `{t}`"));
    Ok(Caps {
        sat: num(s)?,
        ebc2: num(e)?,
        sm: num(m)?,
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(CliError { message, code }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

struct CliError {
    message: String,
    code: u8,
}

impl CliError {
    fn usage(message: impl Into<String>) -> CliError {
        CliError {
            message: message.into(),
            code: 2,
        }
    }
}

impl std::convert::From<Error> for CliError {
    fn from(e: Error) -> CliError {
        let code = match e {
            Error::CapExceeded(_) => 3,
            _ => 2,
        };
        CliError {
            message: e.to_string(),
            code,
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))
}

fn load_machine(path: &Path) -> CliResult<Machine> {
    Ok(Machine::parse(&read_file(path)?)?)
}

fn load_expr(input: &ExprInput) -> CliResult<Expr> {
    let (Some(text), Some(tokens)) = (&input.expr, &input.alphabet) else {
        return Err(CliError::usage("expression input needs --expr and --alphabet"));
    };
    let alphabet = Alphabet::new(tokens.split_whitespace())?;
    Ok(parse_expr(text, &alphabet)?)
}

fn verdict_exit(verdict: &Verdict) -> ExitCode {
    println!("{verdict}");
    if verdict.is_positive() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    let caps = parse_caps(&cli.caps).map_err(CliError::usage)?;
    match cli.cmd {
        Cmd::Member {
            mode,
            machine,
            word,
        } => {
            let m = load_machine(&machine)?;
            let w = m.alphabet().parse_word(&word)?;
            let accepted = match mode {
                Mode::Fa => m.fa_accepts(&w)?,
                Mode::Jfa => m.jfa_accepts(&w)?,
                Mode::Gjfa => m.gjfa_accepts(&w)?,
            };
            println!("{}", if accepted { "yes" } else { "no" });
            Ok(if accepted {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            })
        }

        Cmd::Enumerate { mode, input } => {
            let lang = match (&input.machine, &input.expr) {
                (Some(path), None) => {
                    let m = load_machine(path)?;
                    match mode {
                        Mode::Fa => m.fa_language_upto(cli.bound),
                        Mode::Jfa => m.jfa_language_upto(cli.bound)?,
                        Mode::Gjfa => m.gjfa_language_upto(cli.bound),
                    }
                }
                (None, Some(_)) => jumpshuf::expr::eval_upto(&load_expr(&input)?, cli.bound),
                _ => {
                    return Err(CliError::usage(
                        "enumerate needs exactly one of -m FILE or --expr TEXT",
                    ))
                }
            };
            print!("# bound: {}\n{}", cli.bound, lang.to_file_string());
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Convert { from, to, input } => {
            let text = convert(from, to, &input, cli.box_bound)?;
            print!("{text}");
            Ok(ExitCode::SUCCESS)
        }

        Cmd::Check {
            what,
            machine,
            machine2,
            mode,
        } => {
            let m = load_machine(&machine)?;
            let verdict = match what {
                What::Commutative => is_commutative_regular(&m)?,
                What::JfaAndReg => jfa_membership_of_regular(&m)?,
                What::PermClosed => {
                    let slice = match mode {
                        Mode::Fa => m.fa_language_upto(cli.bound),
                        Mode::Jfa => m.jfa_language_upto(cli.bound)?,
                        Mode::Gjfa => m.gjfa_language_upto(cli.bound),
                    };
                    println!("# bound: {}", cli.bound);
                    is_perm_closed_bounded(&slice, cli.bound)
                }
                What::Disjoint => {
                    let path = machine2
                        .ok_or_else(|| CliError::usage("--what disjoint needs --machine2"))?;
                    println!("# bound: {}", cli.bound);
                    jfa_disjointness_bounded(&m, &load_machine(&path)?, cli.bound)?
                }
            };
            Ok(verdict_exit(&verdict))
        }

        Cmd::Reduce {
            kind,
            input,
            binary,
            out,
        } => reduce(kind, &input, binary, &out, &caps),

        Cmd::Selftest { level } => {
            let (report, ok) = jumpshuf::selftest::run(cli.seed, level == Level::Full);
            print!("{report}");
            Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn convert(from: From, to: To, input: &ExprInput, box_bound: u64) -> CliResult<String> {
    let header = |src: &str, dst: &str| format!("# convert: {src} -> {dst}\n");
    let flavor_err = |need: &str| {
        CliError::from(Error::FlavorMismatch(format!(
            "input is not a {need} expression; convert it first"
        )))
    };
    let _ = box_bound;
    match from {
        From::Machine => {
            let path = input
                .machine
                .as_ref()
                .ok_or_else(|| CliError::usage("--from machine needs -m FILE"))?;
            let m = load_machine(path)?;
            match to {
                To::Regex => Ok(header("machine", "regex") + &print_expr(&machine_to_regex(&m)) + "\n"),
                To::AlphaShuf => {
                    let e = regex_to_alpha_shuf(&machine_to_regex(&m))?;
                    Ok(header("machine", "alpha-shuf") + &print_expr(&e) + "\n")
                }
                To::Semilinear => {
                    let s = nfa_to_semilinear(&m)?;
                    Ok(header("machine", "semilinear") + &print_semilinear(&s, m.alphabet()))
                }
                To::NormalForm => {
                    let s = nfa_to_semilinear(&m)?;
                    let nf = semilinear_to_normalform(&s, m.alphabet())?;
                    Ok(header("machine", "normal-form") + &print_expr(&nf) + "\n")
                }
                To::Machine => Err(CliError::usage("machine -> machine is a no-op")),
            }
        }
        From::Regex => {
            let e = load_expr(input)?;
            if !is_regular(&e) {
                return Err(flavor_err("Regular"));
            }
            match to {
                To::AlphaShuf => {
                    Ok(header("regex", "alpha-shuf") + &print_expr(&regex_to_alpha_shuf(&e)?) + "\n")
                }
                To::Machine => Ok(header("regex", "machine") + &thompson_machine(&e).print()),
                To::Semilinear => {
                    let s = alpha_shuf_to_semilinear(&regex_to_alpha_shuf(&e)?)?;
                    Ok(header("regex", "semilinear") + &print_semilinear(&s, e.alphabet()))
                }
                To::NormalForm | To::Regex => {
                    Err(CliError::usage("regex converts to alpha-shuf, machine, or semilinear"))
                }
            }
        }
        From::AlphaShuf => {
            let e = load_expr(input)?;
            if !is_alpha_shuf(&e) {
                return Err(flavor_err("alpha-SHUF"));
            }
            match to {
                To::Regex => Ok(header("alpha-shuf", "regex") + &print_expr(&alpha_shuf_to_regex(&e)?) + "\n"),
                To::Machine => Ok(header("alpha-shuf", "machine") + &thompson_machine(&e).print()),
                To::Semilinear => {
                    let s = alpha_shuf_to_semilinear(&e)?;
                    Ok(header("alpha-shuf", "semilinear") + &print_semilinear(&s, e.alphabet()))
                }
                To::NormalForm => {
                    let s = alpha_shuf_to_semilinear(&e)?;
                    let nf = semilinear_to_normalform(&s, e.alphabet())?;
                    Ok(header("alpha-shuf", "normal-form") + &print_expr(&nf) + "\n")
                }
                To::AlphaShuf => Err(CliError::usage("alpha-shuf -> alpha-shuf is a no-op")),
            }
        }
    }
}

fn reduce(kind: Kind, input: &Path, binary: bool, out: &Path, caps: &Caps) -> CliResult<ExitCode> {
    std::fs::create_dir_all(out)
        .map_err(|e| CliError::usage(format!("cannot create {}: {e}", out.display())))?;
    let write = |name: &str, contents: &str| -> CliResult<()> {
        let path = out.join(name);
        std::fs::write(&path, contents)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display())))?;
        println!("wrote {}", path.display());
        Ok(())
    };
    let text = read_file(input)?;
    let mut manifest = String::new();

    if kind == Kind::Ebc2 {
        let inst = Ebc2Instance::parse(&text)?;
        let machine = ebc2_fixed_machine();
        let word = ebc2_to_word(&inst);
        let _ = writeln!(manifest, "kind: ebc2\ncap: {} blocks", caps.ebc2);
        let verdict = brute_ebc2(&inst, caps.ebc2)?;
        let _ = writeln!(
            manifest,
            "oracle: {}",
            if verdict.is_some() { "coverable" } else { "not-coverable" }
        );
        emit_machine_word(&machine, &word, binary, &mut manifest, &write)?;
        write("manifest.txt", &manifest)?;
        return Ok(ExitCode::SUCCESS);
    }

    let phi = CnfFormula::parse_dimacs(&text)?;
    let oracle = |manifest: &mut String| -> CliResult<()> {
        let verdict = brute_sat(&phi, caps.sat)?;
        let _ = writeln!(
            manifest,
            "oracle: {}",
            if verdict.is_some() { "satisfiable" } else { "unsatisfiable" }
        );
        Ok(())
    };
    match kind {
        Kind::SatJfa => {
            let (machine, word) = sat_to_jfa(&phi)?;
            let _ = writeln!(manifest, "kind: sat-jfa\ncap: {} vars", caps.sat);
            oracle(&mut manifest)?;
            write("machine.txt", &machine.print())?;
            write("word.txt", &(word.literal() + "\n"))?;
        }
        Kind::SatGjfa => {
            let machine = sat_fixed_gjfa();
            let layout = SatGjfaLayout::from_formula(&phi)?;
            let word = sat_to_gjfa_word(&phi, &layout)?;
            let _ = writeln!(manifest, "kind: sat-gjfa\ncap: {} vars", caps.sat);
            oracle(&mut manifest)?;
            emit_machine_word(&machine, &word, binary, &mut manifest, &write)?;
        }
        Kind::SatNonreg => {
            let machine = build_nonregularity_jfa(&phi, caps.sm)?;
            let _ = writeln!(manifest, "kind: sat-nonreg\ncap: {} vars", caps.sm);
            oracle(&mut manifest)?;
            write("machine.txt", &machine.print())?;
        }
        Kind::SatNoncomm => {
            let machine = build_noncommutativity_nfa(&phi, caps.sm)?;
            let _ = writeln!(manifest, "kind: sat-noncomm\ncap: {} vars", caps.sm);
            oracle(&mut manifest)?;
            write("machine.txt", &machine.print())?;
        }
        Kind::SmExpr => {
            let e = stockmeyer_meyer_expr(&phi, caps.sm)?;
            let _ = writeln!(
                manifest,
                "kind: sm-expr\ncap: {} vars\nperiod-window: {}",
                caps.sm,
                stockmeyer_meyer_window(&phi)
            );
            oracle(&mut manifest)?;
            write("expr.txt", &(print_expr(&e) + "\n"))?;
        }
        Kind::Ebc2 => unreachable!("handled above"),
    }
    write("manifest.txt", &manifest)?;
    Ok(ExitCode::SUCCESS)
}

fn emit_machine_word(
    machine: &Machine,
    word: &Word,
    binary: bool,
    manifest: &mut String,
    write: &dyn Fn(&str, &str) -> CliResult<()>,
) -> CliResult<()> {
    write("machine.txt", &machine.print())?;
    write("word.txt", &(word.literal() + "\n"))?;
    if binary {
        let (m2, w2, h) = binary_wrap(machine, word)?;
        let _ = writeln!(manifest, "binary-stretch: {}", h.max_stretch());
        write("machine-binary.txt", &m2.print())?;
        write("word-binary.txt", &(w2.literal() + "\n"))?;
    }
    Ok(())
}
