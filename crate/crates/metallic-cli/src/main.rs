//! `metallic`: command-line front end for metallic codes, metallic trees and
//! navigation in the tilings {p,4} and {p+2,3}.
//!
//! Exit status: 0 on success, 1 when a verification run finds a failure, 2 on
//! usage errors (bad flags, malformed codes, out-of-range operands).

mod render;

use std::error::Error;
use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use metallic::arithmetic::{add, compare, decrement, increment, subtract};
use metallic::navigation::{
    father, father_black, neighbors_black, neighbors_white, path_black, path_bottom_up, path_top_down,
    path_via_strips, PathTrace,
};
use metallic::numeration::{decode, encode, seq_b, seq_big_m, seq_m};
use metallic::oracle::verify;
use metallic::sampling::measure;
use metallic::trees::{
    classify, format_son_word, level_of, preferred_son, sons_signature_word, successor, SuccessorPlace,
};
use metallic::{Execution, Grade, MetallicCode, Tiling, TreeKind};
use num_bigint::BigUint;

#[derive(Debug, Parser)]
#[command(name = "metallic", version, about = "Metallic codes, metallic trees and hyperbolic tiling navigation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SeqKind {
    /// White metallic sequence m_n (level sizes of the white tree).
    #[value(name = "m")]
    White,
    /// Black metallic sequence b_n (level sizes of the black tree).
    #[value(name = "b")]
    Black,
    /// Partial sums M_n (rightmost node of each white level).
    #[value(name = "M")]
    Sums,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Tree {
    White,
    Black,
}

impl From<Tree> for TreeKind {
    fn from(tree: Tree) -> Self {
        match tree {
            Tree::White => TreeKind::White,
            Tree::Black => TreeKind::Black,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum TilingArg {
    P4,
    P23,
}

impl From<TilingArg> for Tiling {
    fn from(tiling: TilingArg) -> Self {
        match tiling {
            TilingArg::P4 => Tiling::P4,
            TilingArg::P23 => Tiling::P23,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Algo {
    Bottomup,
    Topdown,
    Black,
    Strips,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Dot,
    Svg,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print a metallic sequence, one value per line.
    Seq {
        #[arg(long)]
        p: Grade,
        #[arg(long, value_enum)]
        kind: SeqKind,
        #[arg(long)]
        upto: u64,
    },
    /// Metallic code of a decimal number.
    Encode {
        #[arg(long)]
        p: Grade,
        n: BigUint,
    },
    /// Decimal value of a code (canonical or not).
    Decode {
        #[arg(long)]
        p: Grade,
        code: String,
    },
    /// Sum of two codes.
    Add {
        #[arg(long)]
        p: Grade,
        a: String,
        b: String,
    },
    /// Difference of two codes (a ≥ b).
    Sub {
        #[arg(long)]
        p: Grade,
        a: String,
        b: String,
    },
    /// Compare two codes.
    Cmp {
        #[arg(long)]
        p: Grade,
        a: String,
        b: String,
    },
    /// Code of n+1.
    Inc {
        #[arg(long)]
        p: Grade,
        a: String,
    },
    /// Code of n-1.
    Dec {
        #[arg(long)]
        p: Grade,
        a: String,
    },
    /// Describe a tree node.
    Node {
        #[arg(long)]
        p: Grade,
        #[arg(long, value_enum)]
        tree: Tree,
        code: String,
    },
    /// Neighbours of a tile, side by side.
    Neighbors {
        #[arg(long)]
        p: Grade,
        #[arg(long, value_enum)]
        tiling: TilingArg,
        #[arg(long, value_enum)]
        tree: Tree,
        /// Strip of a black code (0 is led by the sector's leading tile).
        #[arg(long, default_value_t = 0)]
        strip: u64,
        code: String,
    },
    /// Path from the leading tile to a tile.
    Path {
        #[arg(long)]
        p: Grade,
        #[arg(long, value_enum)]
        algo: Algo,
        code: String,
    },
    /// Build explicit trees and cross-check every formula against them.
    Verify {
        #[arg(long)]
        p: Grade,
        #[arg(long)]
        levels: u32,
        /// Run the checks on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Mean digit-visit counts of the path algorithms on random codes.
    Bench {
        #[arg(long)]
        p: Grade,
        #[arg(long)]
        len: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Measure the samples on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
    /// Schematic tree diagram.
    Render {
        #[arg(long)]
        p: Grade,
        #[arg(long, value_enum, default_value = "white")]
        tree: Tree,
        #[arg(long)]
        levels: u32,
        #[arg(long, value_enum)]
        format: Format,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut out = io::stdout().lock();
    match run(cli.command, &mut out).and_then(|code| Ok(out.flush().map(|()| code)?)) {
        Ok(code) => code,
        // A closed pipe (e.g. `| head`) ends the output early; that is not an error.
        Err(err) if err.downcast_ref::<io::Error>().is_some_and(|e| e.kind() == io::ErrorKind::BrokenPipe) => {
            ExitCode::SUCCESS
        }
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(2)
        }
    }
}

type CliResult<T> = Result<T, Box<dyn Error>>;

fn execution(sequential: bool) -> Execution {
    if sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    }
}

fn run(command: Command, out: &mut impl Write) -> CliResult<ExitCode> {
    let code = |grade: Grade, text: &str| MetallicCode::parse(grade, text);
    match command {
        Command::Seq { p, kind, upto } => {
            for n in 0..=upto {
                let value = match kind {
                    SeqKind::White => seq_m(p, n as i64),
                    SeqKind::Black => seq_b(p, n),
                    SeqKind::Sums => seq_big_m(p, n as i64),
                };
                writeln!(out, "{value}")?;
            }
        }
        Command::Encode { p, n } => writeln!(out, "{}", encode(p, &n))?,
        Command::Decode { p, code: text } => {
            let digits = metallic::Representation::new(p, parse_digits(p, &text)?);
            writeln!(out, "{}", decode(p, digits.digits()))?;
        }
        Command::Add { p, a, b } => writeln!(out, "{}", add(&code(p, &a)?, &code(p, &b)?)?)?,
        Command::Sub { p, a, b } => writeln!(out, "{}", subtract(&code(p, &a)?, &code(p, &b)?)?)?,
        Command::Cmp { p, a, b } => {
            let ordering = compare(&code(p, &a)?, &code(p, &b)?)?;
            writeln!(out, "{}", match ordering {
                std::cmp::Ordering::Less => "less",
                std::cmp::Ordering::Equal => "equal",
                std::cmp::Ordering::Greater => "greater",
            })?;
        }
        Command::Inc { p, a } => writeln!(out, "{}", increment(&code(p, &a)?))?,
        Command::Dec { p, a } => writeln!(out, "{}", decrement(&code(p, &a)?)?)?,
        Command::Node { p, tree, code: text } => describe_node(out, p, tree.into(), &code(p, &text)?)?,
        Command::Neighbors { p, tiling, tree, strip, code: text } => {
            let c = code(p, &text)?;
            let set = match tree {
                Tree::White => neighbors_white(tiling.into(), &c)?,
                Tree::Black => neighbors_black(tiling.into(), &c, strip)?,
            };
            for (side, entry) in set.entries.iter().enumerate() {
                writeln!(out, "{}: {entry}", side + 1)?;
            }
        }
        Command::Path { p, algo, code: text } => {
            let c = code(p, &text)?;
            let trace = match algo {
                Algo::Bottomup => path_bottom_up(&c)?,
                Algo::Topdown => path_top_down(&c)?,
                Algo::Black => path_black(&c)?,
                Algo::Strips => path_via_strips(&c)?,
            };
            print_trace(out, p, &trace)?;
        }
        Command::Verify { p, levels, sequential } => {
            let report = verify(p, levels, execution(sequential))?;
            write!(out, "{report}")?;
            if !report.passed() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::Bench { p, len, samples, seed, sequential } => {
            if len == 0 {
                return Err(metallic::Error::Parse { input: "0".into(), reason: "--len must be at least 1".into() }.into());
            }
            let stats = measure(p, len, samples, seed, execution(sequential))?;
            writeln!(out, "p={} len={} samples={} seed={}", p.p(), stats.len, stats.samples, seed)?;
            writeln!(out, "bottomup mean visits: {:.1}", stats.mean_bottom_up)?;
            writeln!(out, "topdown mean visits: {:.1} (max {})", stats.mean_top_down, stats.max_top_down)?;
            writeln!(out, "black mean visits: {:.1} (max {})", stats.mean_black, stats.max_black)?;
        }
        Command::Render { p, tree, levels, format } => {
            let diagram = render::Diagram::build(p, tree.into(), levels)?;
            match format {
                Format::Dot => write!(out, "{}", diagram.to_dot())?,
                Format::Svg => write!(out, "{}", diagram.to_svg())?,
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// Digits in the text format, without the canonicity check.
fn parse_digits(grade: Grade, text: &str) -> metallic::Result<Vec<u32>> {
    let err = |reason: &str| metallic::Error::Parse { input: text.to_string(), reason: reason.to_string() };
    let text = text.trim();
    if text.is_empty() {
        return Err(err("empty string"));
    }
    if text.contains('.') || grade.p() > 13 {
        text.split('.').map(|part| part.parse::<u32>().map_err(|_| err("expected decimal digit values joined by '.'"))).collect()
    } else {
        text.chars().map(|ch| ch.to_digit(13).ok_or_else(|| err("unexpected character"))).collect()
    }
}

fn describe_node(out: &mut impl Write, grade: Grade, kind: TreeKind, code: &MetallicCode) -> CliResult<()> {
    let class = classify(kind, code)?;
    let number = code.value();
    writeln!(out, "tree: {kind}")?;
    writeln!(out, "number: {number}")?;
    writeln!(out, "level: {}", level_of(grade, kind, &number))?;
    writeln!(out, "class: {class}")?;
    writeln!(out, "signature: {}", class.signature)?;
    writeln!(out, "sons: {}", format_son_word(&sons_signature_word(grade, &class)))?;
    let dad = match kind {
        TreeKind::White => father(code),
        TreeKind::Black => father_black(code),
    };
    match dad {
        Ok(f) => writeln!(out, "father: {f} ({})", f.value())?,
        Err(metallic::Error::LeadingTile) => writeln!(out, "father: none (leading tile)")?,
        Err(e) => return Err(e.into()),
    }
    match kind {
        TreeKind::White => {
            let ps = preferred_son(code)?;
            writeln!(out, "preferred son: {} ({}), son {} of {}", ps.code, ps.code.value(), ps.position, ps.son_count)?;
        }
        TreeKind::Black => {
            let s = successor(code)?;
            let place = match s.place {
                SuccessorPlace::LeftmostSonOfNext => "leftmost son of the next node",
                SuccessorPlace::RightmostOfNextLevel => "rightmost node of the next level",
            };
            writeln!(out, "successor: {} ({}), {place}", s.code, s.code.value())?;
        }
    }
    Ok(())
}

fn print_trace(out: &mut impl Write, grade: Grade, trace: &PathTrace) -> io::Result<()> {
    let numbers = trace.numbers();
    writeln!(out, "0 root {} {}", MetallicCode::one(grade), numbers[0])?;
    for (i, (step, number)) in trace.steps.iter().zip(&numbers[1..]).enumerate() {
        writeln!(out, "{} {} {} {} {}", i + 1, step.node_type, step.signature, encode(grade, number), number)?;
    }
    writeln!(out, "digit visits: {}", trace.digit_visits)
}
