//! Command-line front end for exact group-operad computations.

mod expr;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

use group_operads::monad::{u_embed, PointedAlphabet};
use group_operads::operad::quotient::SubOperad;
use group_operads::operad::{Bounds, Family};

use expr::{Context, Value};

#[derive(Parser)]
#[command(
    name = "gops",
    about = "exact arithmetic for group operads: permutations, braids, ribbons, bar constructions and free-monoid factorization",
    version
)]
struct Cli {
    /// Seed for every sampled check; output is bit-identical per seed.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Emit newline-delimited JSON records instead of text.
    #[arg(long, global = true)]
    json: bool,

    /// Sampling bounds: a profile (`default`, `quick`) or explicit
    /// `arity=A,size=S,samples=N`.
    #[arg(long, global = true, default_value = "default")]
    bounds: String,

    /// Non-basepoint letters of the pointed alphabet (basepoint is '*').
    #[arg(long, global = true, default_value = "xyz")]
    alphabet: String,

    /// Restrict per-family suites to one family tag (J|S|B|P|R|Zn|hyperoct).
    #[arg(long, global = true)]
    family: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Normal form of an expression (braids print as D^p | factors).
    Nf { expr: String },
    /// Product of two same-kind expressions.
    Compose { left: String, right: String },
    /// Operadic composition gamma(outer; inner...).
    Gamma { outer: String, inners: Vec<String> },
    /// Projection to permutations (levelwise on simplices and classes).
    Pi { expr: String },
    /// Abelianization: the exponent sum of a braid (plus total framing).
    Abel { expr: String },
    /// Cabling: strand substitution on braids.
    Cable { outer: String, inners: Vec<String> },
    /// Unique factorization of a monad element into irreducibles.
    Factor { expr: String },
    /// The induced map of universal groups, braid side to symmetric side.
    Upi { expr: String },
    /// Kernel membership of a free word under the induced map.
    #[command(name = "kernel?", alias = "kernel")]
    Kernel { expr: String },
    /// Fundamental-group realization checks on bar constructions.
    #[command(name = "pi1-bar")]
    Pi1Bar {
        /// group/subgroup pair: S3/A3, S4/V4, S3/S3, S3/1, or a family tag
        #[arg(long, default_value = "S")]
        target: String,
        #[arg(long, default_value_t = 3)]
        max_arity: usize,
    },
    /// Run every verification suite; exit 0 when all expectations hold.
    Verify,
}

fn bounds_profile(name: &str) -> Result<Bounds, String> {
    match name {
        "default" => return Ok(Bounds::default_profile()),
        "quick" => return Ok(Bounds::quick()),
        _ => {}
    }
    let mut bounds = Bounds::default_profile();
    for part in name.split(',') {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("bad bounds component {part:?}"))?;
        let value: usize = value
            .trim()
            .parse()
            .map_err(|_| format!("bad bounds value {value:?}"))?;
        match key.trim() {
            "arity" => bounds.max_arity = value,
            "size" => bounds.size = value,
            "samples" => bounds.samples = value,
            other => return Err(format!("unknown bounds key {other:?}")),
        }
    }
    Ok(bounds)
}

/// Expression arguments accept `-` for standard input.
fn resolve_input(arg: &str) -> Result<String, String> {
    if arg == "-" {
        let mut buf = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut buf)
            .map_err(|e| format!("reading standard input: {e}"))?;
        Ok(buf.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let alphabet = match PointedAlphabet::with_base(&cli.alphabet) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("bad alphabet: {e}");
            return ExitCode::FAILURE;
        }
    };
    let ctx = Context { alphabet };
    let bounds = match bounds_profile(&cli.bounds) {
        Ok(b) => b,
        Err(e) => {
            eprintln!("bad bounds: {e}");
            return ExitCode::FAILURE;
        }
    };

    let emit = |text: String, json: bool| {
        if json {
            println!(
                "{}",
                serde_json::json!({ "value": text })
            );
        } else {
            println!("{text}");
        }
    };

    let eval_or_exit = |source: &str| -> Result<Value, String> {
        let source = resolve_input(source)?;
        expr::eval(&ctx, &source).map_err(|e| e.render(&source))
    };

    let outcome: Result<(), String> = (|| {
        match &cli.command {
            Command::Nf { expr: src } => {
                let v = eval_or_exit(src)?;
                match &v {
                    Value::El { family: Family::Braid | Family::PureBraid, elem } => {
                        if let group_operads::operad::Element::Braid(b) = elem {
                            emit(b.normal_form().to_string(), cli.json);
                        }
                    }
                    other => {
                        let canon = match other.clone() {
                            Value::El { family, elem } => {
                                let elem = family.canonical(&elem);
                                Value::El { family, elem }
                            }
                            v => v,
                        };
                        emit(canon.to_string(), cli.json);
                    }
                }
                Ok(())
            }
            Command::Compose { left, right } => {
                let l = eval_or_exit(left)?;
                let r = eval_or_exit(right)?;
                let v = expr::eval_product(l, r).map_err(|e| e.to_string())?;
                emit(v.to_string(), cli.json);
                Ok(())
            }
            Command::Gamma { outer, inners } | Command::Cable { outer, inners } => {
                let head = if matches!(cli.command, Command::Cable { .. }) {
                    "cable"
                } else {
                    "gamma"
                };
                let outer = resolve_input(outer)?;
                let joined = format!("{head}({outer}; {})", inners.join(", "));
                let v = eval_or_exit(&joined)?;
                emit(v.to_string(), cli.json);
                Ok(())
            }
            Command::Pi { expr: src } => {
                let src = resolve_input(src)?;
                let v = eval_or_exit(&format!("pi({src})"))?;
                emit(v.to_string(), cli.json);
                Ok(())
            }
            Command::Abel { expr: src } => {
                let v = eval_or_exit(src)?;
                match v {
                    Value::El { elem: group_operads::operad::Element::Braid(b), .. } => {
                        emit(b.exponent_sum().to_string(), cli.json);
                        Ok(())
                    }
                    Value::El { elem: group_operads::operad::Element::Ribbon(r), .. } => {
                        let framing: i64 = r.framings.iter().sum();
                        emit(
                            format!("exponent={} framing={framing}", r.braid.exponent_sum()),
                            cli.json,
                        );
                        Ok(())
                    }
                    other => Err(format!("abel applies to braids, got {}", other.kind())),
                }
            }
            Command::Factor { expr: src } => {
                let v = eval_or_exit(src)?;
                match v {
                    Value::Mel(m) => {
                        let word = u_embed(&m).map_err(|e| e.to_string())?;
                        emit(word.to_string(), cli.json);
                        Ok(())
                    }
                    other => Err(format!("factor applies to monad elements, got {}", other.kind())),
                }
            }
            Command::Upi { expr: src } => {
                let src = resolve_input(src)?;
                let v = eval_or_exit(&format!("upi({src})"))?;
                emit(v.to_string(), cli.json);
                Ok(())
            }
            Command::Kernel { expr: src } => {
                let v = eval_or_exit(src)?;
                let w = match v {
                    Value::Word(w) => w,
                    Value::Mel(m) => u_embed(&m).map_err(|e| e.to_string())?,
                    other => return Err(format!("kernel? expects a free word, got {}", other.kind())),
                };
                let member =
                    group_operads::monad::kernel_membership(&w).map_err(|e| e.to_string())?;
                emit(member.to_string(), cli.json);
                Ok(())
            }
            Command::Pi1Bar { target, max_arity } => {
                let report = pi1_bar(target, *max_arity, bounds, cli.seed)?;
                if cli.json {
                    print!("{}", report.to_json_lines());
                } else {
                    print!("{report}");
                }
                if report.all_passed() {
                    Ok(())
                } else {
                    Err("pi1 checks failed".into())
                }
            }
            Command::Verify => {
                let outcome = verify::run_verify(cli.seed, bounds, cli.family.as_deref());
                if cli.json {
                    print!("{}", outcome.json_lines());
                } else {
                    print!("{}", outcome.text());
                }
                if outcome.ok() {
                    Ok(())
                } else {
                    Err("verification failed".into())
                }
            }
        }
    })();

    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}

fn pi1_bar(
    target: &str,
    max_arity: usize,
    bounds: Bounds,
    seed: u64,
) -> Result<group_operads::operad::Report, String> {
    use group_operads::bar::{operad_pi1_check, pi1_iso_check};
    use group_operads::fingroup::FiniteGroup;

    if let Some((g, h)) = target.split_once('/') {
        let group = |name: &str| -> Result<FiniteGroup, String> {
            match name {
                "S3" => Ok(FiniteGroup::symmetric(3)),
                "S4" => Ok(FiniteGroup::symmetric(4)),
                "A3" => Ok(FiniteGroup::alternating(3)),
                "A4" => Ok(FiniteGroup::alternating(4)),
                "V4" => Ok(FiniteGroup::klein_four()),
                "1" => Err("degree needed; use the pair notation like S3/1".into()),
                other => Err(format!("unknown group {other:?}")),
            }
        };
        let gg = group(g)?;
        let hh = if h == "1" {
            FiniteGroup::trivial(gg.degree())
        } else if h == g {
            gg.clone()
        } else {
            group(h)?
        };
        return Ok(pi1_iso_check(&gg, &hh));
    }

    let family = Family::from_tag(target).ok_or_else(|| format!("unknown family {target:?}"))?;
    // crossed families other than the symmetric one divide by their pure
    // kernel, which keeps the coset keys computable
    let sub = match family {
        Family::Braid | Family::Ribbon => SubOperad::KernelPi,
        _ => SubOperad::Whole,
    };
    Ok(operad_pi1_check(&family, sub, max_arity, bounds, seed))
}
