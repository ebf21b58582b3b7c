//! The `hexfa` command line: render, transform and enumerate pictures, run
//! and convert automata, compare languages, and print the symmetry group.
//!
//! [`dispatch`] is the whole program; `main` only wires it to the process.
//! Exit codes: 0 accept / equal / success, 1 reject / not equal, 2 usage
//! error, 3 unreadable or malformed input.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use hexfa::automata::{parse_automaton, serialize_automaton};
use hexfa::hexgrid::{parse_picture, render_ascii, serialize_picture};
use hexfa::langtools::{self, bounded_equivalent, Equivalence, SizeBound};
use hexfa::transforms;
use hexfa::{
    apply_op, compose, normal_form, DirectionMode, HexAutomaton, HexPicture, Symbol, SymmetryOp,
};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hexfa", version, about = "Hexagonal picture automata toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Draw a picture as a hexagon of symbols.
    Render {
        /// Picture file (%HXP), or `-` for standard input.
        picture: PathBuf,
        /// Surround the picture with its `#` ring.
        #[arg(long)]
        border: bool,
    },
    /// Apply a group element to a picture.
    Transform {
        #[arg(long)]
        op: SymmetryOp,
        picture: PathBuf,
    },
    /// Run an automaton on a picture; exit 0 on accept, 1 on reject.
    Run {
        #[arg(long)]
        automaton: PathBuf,
        /// Direction code such as `B:R0` or `R:r3`; defaults to the
        /// automaton's own direction, else the canonical one.
        #[arg(long)]
        direction: Option<DirectionMode>,
        /// Print one line per consumed symbol before the verdict.
        #[arg(long)]
        trace: bool,
        picture: PathBuf,
    },
    /// Subset construction.
    Determinize(Convert),
    /// Convert a boustrophedon automaton to a returning one.
    ToRfa(Convert),
    /// Build a returning automaton for the r0-, r3- or R3-image.
    Mirror {
        #[arg(long, value_parser = ["r0", "r3", "R3"])]
        target: String,
        #[command(flatten)]
        convert: Convert,
    },
    /// List every picture over an alphabet with all sides up to a bound.
    Enum {
        /// Comma separated symbols.
        #[arg(long, value_delimiter = ',', required = true)]
        alphabet: Vec<String>,
        #[arg(long)]
        max_side: u32,
        #[arg(long)]
        count_only: bool,
    },
    /// Compare L(a2, d2) with op(L(a1, d1)) on all pictures up to a bound.
    Equiv {
        #[arg(long)]
        a1: PathBuf,
        #[arg(long)]
        d1: Option<DirectionMode>,
        #[arg(long)]
        a2: PathBuf,
        #[arg(long)]
        d2: Option<DirectionMode>,
        #[arg(long, default_value = "R0")]
        op: SymmetryOp,
        #[arg(long, default_value_t = 2)]
        max_side: u32,
        /// Defaults to the union of both automata's alphabets.
        #[arg(long, value_delimiter = ',')]
        alphabet: Option<Vec<String>>,
    },
    /// Group table, normal forms and products.
    #[command(group = clap::ArgGroup::new("query").required(true))]
    Group {
        #[arg(long, group = "query")]
        table: bool,
        #[arg(long, group = "query", value_name = "OP")]
        normal_form: Option<SymmetryOp>,
        #[arg(long, group = "query", num_args = 2, value_names = ["G", "H"])]
        compose: Option<Vec<SymmetryOp>>,
    },
}

#[derive(Debug, Args)]
struct Convert {
    #[arg(long)]
    automaton: PathBuf,
    /// Output file, or `-` for standard output.
    #[arg(short = 'o', long = "output")]
    output: PathBuf,
}

/// A failure that ends the command with a one-line diagnostic.
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl ToString) -> Failure {
        Failure {
            code: EXIT_USAGE,
            message: message.to_string(),
        }
    }

    fn input(path: &Path, message: impl ToString) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: format!("{}: {}", path.display(), message.to_string()),
        }
    }
}

type Outcome = Result<i32, Failure>;

/// Parses `args` (including the program name) and runs the command.
pub fn dispatch<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let text = e.render().to_string();
                    let head: Vec<&str> = text
                        .lines()
                        .take_while(|l| !l.trim().is_empty())
                        .map(str::trim)
                        .collect();
                    let _ = writeln!(err, "{}", head.join(" "));
                    EXIT_USAGE
                }
            };
        }
    };
    let mut buffer = String::new();
    let result = execute(cli.command, &mut buffer);
    let io = out.write_all(buffer.as_bytes()).and_then(|_| out.flush());
    match (result, io) {
        (Ok(code), Ok(())) => code,
        (Ok(_), Err(e)) => {
            let _ = writeln!(err, "error: writing output: {e}");
            EXIT_INPUT
        }
        (Err(f), _) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn read_text(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut text = String::new();
        io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Failure::input(path, e))?;
        return Ok(text);
    }
    fs::read_to_string(path).map_err(|e| Failure::input(path, e))
}

fn load_picture(path: &Path) -> Result<HexPicture, Failure> {
    parse_picture(&read_text(path)?).map_err(|e| Failure::input(path, e))
}

fn load_automaton(path: &Path) -> Result<HexAutomaton, Failure> {
    let a = parse_automaton(&read_text(path)?).map_err(|e| Failure::input(path, e))?;
    if let Err(diagnostics) = a.validate() {
        let joined: Vec<String> = diagnostics.iter().map(ToString::to_string).collect();
        return Err(Failure::input(path, joined.join("; ")));
    }
    Ok(a)
}

fn store(path: &Path, text: &str, out: &mut String) -> Result<(), Failure> {
    if path == Path::new("-") {
        out.push_str(text);
        return Ok(());
    }
    fs::write(path, text).map_err(|e| Failure::input(path, e))
}

fn symbols(tokens: &[String]) -> Result<Vec<Symbol>, Failure> {
    let mut alphabet: Vec<Symbol> = Vec::new();
    for t in tokens {
        let s = Symbol::new(t.trim()).map_err(Failure::usage)?;
        if !alphabet.contains(&s) {
            alphabet.push(s);
        }
    }
    if alphabet.is_empty() {
        return Err(Failure::usage("the alphabet is empty"));
    }
    Ok(alphabet)
}

fn direction_for(a: &HexAutomaton, given: Option<DirectionMode>) -> Result<DirectionMode, Failure> {
    let mode = given
        .or(a.direction())
        .unwrap_or_else(|| DirectionMode::canonical(a.kind()));
    if mode.kind != a.kind() {
        return Err(Failure::usage(format!(
            "direction {mode} does not fit a {} automaton",
            a.kind()
        )));
    }
    Ok(mode)
}

fn execute(command: Command, out: &mut String) -> Outcome {
    match command {
        Command::Render { picture, border } => {
            out.push_str(&render_ascii(&load_picture(&picture)?, border));
            Ok(EXIT_OK)
        }
        Command::Transform { op, picture } => {
            out.push_str(&serialize_picture(&apply_op(op, &load_picture(&picture)?)));
            Ok(EXIT_OK)
        }
        Command::Run {
            automaton,
            direction,
            trace,
            picture,
        } => {
            let a = load_automaton(&automaton)?;
            let p = load_picture(&picture)?;
            let mode = direction_for(&a, direction)?;
            let accepted = if trace {
                let t = a
                    .run_traced(&p, mode)
                    .map_err(|e| Failure::input(&picture, e))?;
                for (i, step) in t.steps.iter().enumerate() {
                    let frontier: Vec<&str> = step
                        .after
                        .frontier
                        .iter()
                        .map(|&s| a.state_name(s))
                        .collect();
                    let _ = writeln!(
                        out,
                        "{} {} {} {{{}}} {}",
                        i + 1,
                        step.after.mode,
                        step.consumed,
                        frontier.join(","),
                        t.snapshot(&p, i + 1)
                    );
                }
                t.accepted
            } else {
                a.run(&p, mode).map_err(|e| Failure::input(&picture, e))?
            };
            out.push_str(if accepted { "ACCEPT\n" } else { "REJECT\n" });
            Ok(if accepted { EXIT_OK } else { EXIT_NEGATIVE })
        }
        Command::Determinize(c) => {
            let a = load_automaton(&c.automaton)?;
            let d = a
                .determinize()
                .map_err(|e| Failure::input(&c.automaton, e))?;
            store(&c.output, &serialize_automaton(&d), out)?;
            Ok(EXIT_OK)
        }
        Command::ToRfa(c) => {
            let a = load_automaton(&c.automaton)?;
            let r = transforms::hbfa_to_hrfa(&a).map_err(|e| Failure::input(&c.automaton, e))?;
            store(&c.output, &serialize_automaton(&r.automaton), out)?;
            Ok(EXIT_OK)
        }
        Command::Mirror { target, convert } => {
            let a = load_automaton(&convert.automaton)?;
            let op: SymmetryOp = target.parse().map_err(Failure::usage)?;
            let r = transforms::family_normalizer(&a, op)
                .map_err(|e| Failure::input(&convert.automaton, e))?;
            store(&convert.output, &serialize_automaton(&r.automaton), out)?;
            Ok(EXIT_OK)
        }
        Command::Enum {
            alphabet,
            max_side,
            count_only,
        } => {
            let alphabet = symbols(&alphabet)?;
            if max_side == 0 {
                return Err(Failure::usage("--max-side must be at least 1"));
            }
            let bound = SizeBound::up_to(max_side);
            if count_only {
                let _ = writeln!(out, "{}", bound.picture_count(alphabet.len()));
                return Ok(EXIT_OK);
            }
            let pictures =
                langtools::enumerate_pictures(&alphabet, &bound).map_err(Failure::usage)?;
            for (i, p) in pictures.enumerate() {
                if i > 0 {
                    out.push('\n');
                }
                out.push_str(&serialize_picture(&p));
            }
            Ok(EXIT_OK)
        }
        Command::Equiv {
            a1,
            d1,
            a2,
            d2,
            op,
            max_side,
            alphabet,
        } => {
            let (x, y) = (load_automaton(&a1)?, load_automaton(&a2)?);
            let (m1, m2) = (direction_for(&x, d1)?, direction_for(&y, d2)?);
            if max_side == 0 {
                return Err(Failure::usage("--max-side must be at least 1"));
            }
            let alphabet = match alphabet {
                Some(tokens) => symbols(&tokens)?,
                None => {
                    let mut all = x.alphabet().to_vec();
                    all.extend(
                        y.alphabet()
                            .iter()
                            .filter(|s| !x.alphabet().contains(s))
                            .cloned(),
                    );
                    if all.is_empty() {
                        return Err(Failure::usage(
                            "both automata have empty alphabets; pass --alphabet",
                        ));
                    }
                    all
                }
            };
            let verdict =
                bounded_equivalent(&x, m1, &y, m2, &alphabet, &SizeBound::up_to(max_side), op)
                    .map_err(Failure::usage)?;
            match verdict {
                Equivalence::Equal => {
                    out.push_str("EQUAL\n");
                    Ok(EXIT_OK)
                }
                Equivalence::Counterexample(p) => {
                    out.push_str("NOT EQUAL\n");
                    out.push_str(&serialize_picture(&p));
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Command::Group {
            table,
            normal_form: nf,
            compose: pair,
        } => {
            if table {
                out.push_str(&group_table());
            } else if let Some(g) = nf {
                let _ = writeln!(out, "{}", normal_form(g));
            } else if let Some(pair) = pair {
                let _ = writeln!(out, "{}", compose(pair[0], pair[1]));
            }
            Ok(EXIT_OK)
        }
    }
}

/// The Cayley table: the entry in row `g`, column `h` is `g ∘ h`.
pub fn group_table() -> String {
    let mut text = String::from("o ");
    for h in SymmetryOp::ALL {
        let _ = write!(text, " {h}");
    }
    text.push('\n');
    for g in SymmetryOp::ALL {
        let _ = write!(text, "{g}");
        for h in SymmetryOp::ALL {
            let _ = write!(text, " {}", compose(g, h));
        }
        text.push('\n');
    }
    text
}
