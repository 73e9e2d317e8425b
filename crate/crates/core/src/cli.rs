//! The `parafact` command line.
//!
//! Exit codes: 0 success, 1 a check or condition failed, 2 input error,
//! 3 enumeration limit reached.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::cayley::{export_dot, CayleyError, ElementId, Side, DEFAULT_EXPRESSION_CAP};
use crate::group::Group;
use crate::parabolic::{
    all_factorizations, coset_report, factorize, format_scan, scan_json, uniqueness_scan,
    ParabolicSubset,
};
use crate::perm::{Permutation, PermutationMap};
use crate::presentation::Presentation;
use crate::quiver::{quiver_to_presentation, Quiver};
use crate::reproduce;
use crate::todd_coxeter::{todd_coxeter, EnumerationError, EnumerationLimits};
use crate::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "parafact",
    version,
    about = "Length functions and parabolic factorisations of finitely presented groups"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Maximum number of cosets allocated during enumeration.
    #[arg(
        long,
        global = true,
        env = "PARAFACT_MAX_COSETS",
        default_value_t = 100_000
    )]
    pub max_cosets: usize,

    /// Maximum number of enumeration steps.
    #[arg(long, global = true, default_value_t = 10_000_000)]
    pub max_steps: u64,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    pub output: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report the involution and even-length conditions.
    Check { input: PathBuf },
    /// Group order, or the index of the subgroup generated by `--subgroup` words.
    Order {
        input: PathBuf,
        #[arg(long)]
        subgroup: Vec<String>,
    },
    /// Dump the standardised coset table.
    Table {
        input: PathBuf,
        #[arg(long)]
        subgroup: Vec<String>,
    },
    /// Length and canonical reduced word of every element.
    Lengths { input: PathBuf },
    /// All reduced expressions of an element.
    Reduced {
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Left and right descent sets of an element.
    Descents {
        input: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Greedy and exhaustive factorisations `w = ab`, `a ∈ G^I`, `b ∈ G_I`.
    Factorize {
        input: PathBuf,
        #[arg(long = "I", alias = "subset")]
        subset: String,
        #[arg(long)]
        word: String,
    },
    /// The coset `wG_I`, its minimal-length members and `wG_I ∩ G^I`.
    Coset {
        input: PathBuf,
        #[arg(long = "I", alias = "subset")]
        subset: String,
        #[arg(long)]
        word: String,
    },
    /// Count factorisations for every subset and element.
    Scan { input: PathBuf },
    /// Cayley graph in DOT format.
    Dot {
        input: PathBuf,
        /// Permutation images per generator, e.g. "(1,2);(2,3);(2,4)".
        #[arg(long)]
        images: Option<String>,
    },
    /// Cluster group presentation of a quiver file.
    Quiver { input: PathBuf },
    /// Re-derive the A3 cluster group results and the Klein four-group example.
    Reproduce {
        #[arg(long, hide = true)]
        corrupt_fixture: bool,
    },
}

/// Result of one command: exit code and the text for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn with_code(code: i32, stdout: String) -> Self {
        Outcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Enumeration(EnumerationError::LimitExceeded { .. }) => 3,
        _ => 2,
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

fn load(path: &Path) -> Result<Presentation, Error> {
    Ok(Presentation::parse(&read(path)?)?)
}

struct Ctx {
    limits: EnumerationLimits,
    format: Format,
}

impl Ctx {
    fn group(&self, path: &Path) -> Result<Group, Error> {
        Ok(Group::new(load(path)?, self.limits)?)
    }

    fn emit(&self, text: String, value: serde_json::Value) -> String {
        match self.format {
            Format::Text => text,
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&value).expect("json values serialise");
                s.push('\n');
                s
            }
        }
    }
}

fn element_arg(g: &Group, text: &str) -> Result<ElementId, Error> {
    let w = g.presentation.parse_word(text)?;
    g.graph.eval_word(&w).map_err(|e: CayleyError| e.into())
}

fn name_list(p: &Presentation, gens: &[usize]) -> String {
    if gens.is_empty() {
        return "-".to_owned();
    }
    gens.iter()
        .map(|&x| p.name(x))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Runs a parsed command line. Output is not written anywhere; see [`main`].
pub fn run(cli: &Cli) -> Outcome {
    let limits = match EnumerationLimits::new(cli.max_cosets, cli.max_steps) {
        Ok(l) => l,
        Err(e) => {
            return Outcome {
                code: 2,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            }
        }
    };
    let ctx = Ctx {
        limits,
        format: cli.format,
    };
    match dispatch(&ctx, &cli.command) {
        Ok(outcome) => outcome,
        Err(e) => Outcome {
            code: exit_code(&e),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}

fn dispatch(ctx: &Ctx, command: &Command) -> Result<Outcome, Error> {
    match command {
        Command::Check { input } => cmd_check(ctx, input),
        Command::Order { input, subgroup } => cmd_order(ctx, input, subgroup),
        Command::Table { input, subgroup } => cmd_table(ctx, input, subgroup),
        Command::Lengths { input } => cmd_lengths(ctx, input),
        Command::Reduced { input, word } => cmd_reduced(ctx, input, word),
        Command::Descents { input, word } => cmd_descents(ctx, input, word),
        Command::Factorize {
            input,
            subset,
            word,
        } => cmd_factorize(ctx, input, subset, word),
        Command::Coset {
            input,
            subset,
            word,
        } => cmd_coset(ctx, input, subset, word),
        Command::Scan { input } => cmd_scan(ctx, input),
        Command::Dot { input, images } => cmd_dot(ctx, input, images.as_deref()),
        Command::Quiver { input } => cmd_quiver(ctx, input),
        Command::Reproduce { corrupt_fixture } => Ok(cmd_reproduce(ctx, *corrupt_fixture)),
    }
}

fn cmd_check(ctx: &Ctx, input: &Path) -> Result<Outcome, Error> {
    let p = load(input)?;
    let c = p.conditions();
    let mut text = String::new();
    let _ = writeln!(
        text,
        "generators: {}",
        name_list(&p, &(0..p.generator_count()).collect::<Vec<_>>())
    );
    for (i, r) in p.relators().iter().enumerate() {
        let _ = writeln!(
            text,
            "relator {}: {} (length {})",
            i + 1,
            p.format_word(r),
            r.len()
        );
    }
    let _ = writeln!(text, "involutions: {}", c.involutions);
    let _ = writeln!(text, "even: {}", c.even);
    let value = json!({
        "generators": p.generators().iter().map(|g| &g.name).collect::<Vec<_>>(),
        "relators": p.relators().iter().map(|r| json!({"word": p.format_word(r), "length": r.len()})).collect::<Vec<_>>(),
        "involutions": c.involutions,
        "even": c.even,
    });
    let code = if c.both() { 0 } else { 1 };
    Ok(Outcome::with_code(code, ctx.emit(text, value)))
}

fn subgroup_words(p: &Presentation, words: &[String]) -> Result<Vec<crate::Word>, Error> {
    Ok(words
        .iter()
        .map(|w| p.parse_word(w))
        .collect::<Result<_, _>>()?)
}

fn cmd_order(ctx: &Ctx, input: &Path, subgroup: &[String]) -> Result<Outcome, Error> {
    let p = load(input)?;
    let h = subgroup_words(&p, subgroup)?;
    let t = todd_coxeter(&p, &h, ctx.limits)?;
    let (text, value) = if h.is_empty() {
        (
            format!("order: {}\n", t.rows()),
            json!({ "order": t.rows() }),
        )
    } else {
        (
            format!("index: {}\n", t.rows()),
            json!({ "index": t.rows(), "subgroup": subgroup }),
        )
    };
    Ok(Outcome::ok(ctx.emit(text, value)))
}

fn cmd_table(ctx: &Ctx, input: &Path, subgroup: &[String]) -> Result<Outcome, Error> {
    let p = load(input)?;
    let h = subgroup_words(&p, subgroup)?;
    let t = todd_coxeter(&p, &h, ctx.limits)?;
    let rows: Vec<Vec<usize>> = (0..t.rows())
        .map(|r| {
            (0..t.column_count())
                .map(|c| t.act(r, t.letter_of_column(c)))
                .collect()
        })
        .collect();
    Ok(Outcome::ok(ctx.emit(t.dump(), json!({ "rows": rows }))))
}

fn cmd_lengths(ctx: &Ctx, input: &Path) -> Result<Outcome, Error> {
    let g = ctx.group(input)?;
    let gr = &g.graph;
    let mut text = String::new();
    let mut distribution: BTreeMap<usize, usize> = BTreeMap::new();
    let mut rows = Vec::new();
    for e in gr.elements() {
        let _ = writeln!(text, "{} {} {}", e.0, gr.length(e), g.format(e));
        *distribution.entry(gr.length(e)).or_default() += 1;
        rows.push(json!({"id": e.0, "length": gr.length(e), "word": g.format(e)}));
    }
    let dist: Vec<String> = distribution
        .iter()
        .map(|(l, c)| format!("{l}:{c}"))
        .collect();
    let _ = writeln!(text, "distribution: {}", dist.join(" "));
    let value = json!({
        "elements": rows,
        "distribution": distribution.iter().map(|(l, c)| json!({"length": l, "count": c})).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(ctx.emit(text, value)))
}

fn cmd_reduced(ctx: &Ctx, input: &Path, word: &str) -> Result<Outcome, Error> {
    let g = ctx.group(input)?;
    let e = element_arg(&g, word)?;
    let words = g.graph.reduced_expressions(e, DEFAULT_EXPRESSION_CAP)?;
    let formatted: Vec<String> = words
        .iter()
        .map(|w| g.presentation.format_word(w))
        .collect();
    let mut text = format!(
        "element: {}\nlength: {}\ncount: {}\n",
        g.format(e),
        g.graph.length(e),
        words.len()
    );
    for w in &formatted {
        let _ = writeln!(text, "{w}");
    }
    let value = json!({
        "element": g.format(e),
        "length": g.graph.length(e),
        "count": words.len(),
        "expressions": formatted,
    });
    Ok(Outcome::ok(ctx.emit(text, value)))
}

fn cmd_descents(ctx: &Ctx, input: &Path, word: &str) -> Result<Outcome, Error> {
    let g = ctx.group(input)?;
    let e = element_arg(&g, word)?;
    let left = g.graph.descents(e, Side::Left);
    let right = g.graph.descents(e, Side::Right);
    let p = &g.presentation;
    let text = format!(
        "element: {}\nleft: {}\nright: {}\n",
        g.format(e),
        name_list(p, &left),
        name_list(p, &right)
    );
    let names = |v: &[usize]| v.iter().map(|&x| p.name(x).to_owned()).collect::<Vec<_>>();
    let value = json!({"element": g.format(e), "left": names(&left), "right": names(&right)});
    Ok(Outcome::ok(ctx.emit(text, value)))
}

fn cmd_factorize(ctx: &Ctx, input: &Path, subset: &str, word: &str) -> Result<Outcome, Error> {
    let g = ctx.group(input)?;
    let gr = &g.graph;
    let i = ParabolicSubset::parse(&g.presentation, subset)?;
    let w = element_arg(&g, word)?;
    let pair = |a: ElementId, b: ElementId| {
        format!(
            "a = {}, b = {} ({}+{})",
            g.format(a),
            g.format(b),
            gr.length(a),
            gr.length(b)
        )
    };
    let pair_json = |a: ElementId, b: ElementId| json!({"a": g.format(a), "b": g.format(b), "length_a": gr.length(a), "length_b": gr.length(b)});
    let mut text = format!(
        "w: {} (length {})\nI: {}\n",
        g.format(w),
        gr.length(w),
        i.format(&g.presentation)
    );
    let greedy = factorize(gr, i, w);
    let greedy_json = match &greedy {
        Ok(f) => {
            let _ = writeln!(text, "greedy: {}", pair(f.a, f.b));
            pair_json(f.a, f.b)
        }
        Err(e) => {
            let _ = writeln!(text, "greedy: failed: {e}");
            json!({ "error": e.to_string() })
        }
    };
    let all = all_factorizations(gr, i, w);
    let _ = writeln!(text, "all ({}):", all.len());
    for f in &all {
        let _ = writeln!(text, "  {}", pair(f.a, f.b));
    }
    let value = json!({
        "w": g.format(w),
        "length": gr.length(w),
        "I": i.iter().map(|x| g.presentation.name(x)).collect::<Vec<_>>(),
        "greedy": greedy_json,
        "all": all.iter().map(|f| pair_json(f.a, f.b)).collect::<Vec<_>>(),
    });
    let code = if greedy.is_ok() { 0 } else { 1 };
    Ok(Outcome::with_code(code, ctx.emit(text, value)))
}

fn cmd_coset(ctx: &Ctx, input: &Path, subset: &str, word: &str) -> Result<Outcome, Error> {
    let g = ctx.group(input)?;
    let i = ParabolicSubset::parse(&g.presentation, subset)?;
    let w = element_arg(&g, word)?;
    let report = coset_report(&g.graph, i, w);
    let list = |v: &[ElementId]| v.iter().map(|&e| g.format(e)).collect::<Vec<_>>();
    let mut text = format!(
        "w: {}\nI: {}\ncoset ({}):\n",
        g.format(w),
        i.format(&g.presentation),
        report.coset.len()
    );
    for e in &report.coset {
        let _ = writeln!(text, "  {} (length {})", g.format(*e), g.graph.length(*e));
    }
    let _ = writeln!(
        text,
        "minimal: {}",
        list(&report.min_length_elements).join(", ")
    );
    let _ = writeln!(
        text,
        "intersection with G^I: {}",
        list(&report.intersection_with_upper).join(", ")
    );
    let value = json!({
        "w": g.format(w),
        "I": i.iter().map(|x| g.presentation.name(x)).collect::<Vec<_>>(),
        "coset": list(&report.coset),
        "minimal": list(&report.min_length_elements),
        "intersection_with_upper": list(&report.intersection_with_upper),
    });
    Ok(Outcome::ok(ctx.emit(text, value)))
}

fn cmd_scan(ctx: &Ctx, input: &Path) -> Result<Outcome, Error> {
    let g = ctx.group(input)?;
    let report = uniqueness_scan(&g.graph, &g.presentation);
    let text = format_scan(&report, &g.graph, &g.presentation);
    let value = scan_json(&report, &g.graph, &g.presentation);
    let code = if report.violations.is_empty() { 0 } else { 1 };
    Ok(Outcome::with_code(code, ctx.emit(text, value)))
}

fn parse_images(p: &Presentation, text: &str) -> Result<PermutationMap, Error> {
    let parts: Vec<&str> = text.split(';').map(str::trim).collect();
    if parts.len() != p.generator_count() {
        return Err(crate::perm::PermError::WrongImageCount {
            expected: p.generator_count(),
            got: parts.len(),
        }
        .into());
    }
    let degree = parts
        .iter()
        .flat_map(|s| s.split(|c: char| !c.is_ascii_digit()))
        .filter_map(|n| n.parse::<usize>().ok())
        .max()
        .unwrap_or(1);
    let images = parts
        .iter()
        .map(|s| Permutation::parse_cycles(degree, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(PermutationMap::new(images)?)
}

fn cmd_dot(ctx: &Ctx, input: &Path, images: Option<&str>) -> Result<Outcome, Error> {
    let g = ctx.group(input)?;
    let images = images
        .map(|s| parse_images(&g.presentation, s))
        .transpose()?;
    Ok(Outcome::ok(export_dot(
        &g.graph,
        &g.presentation,
        images.as_ref(),
    )))
}

fn cmd_quiver(ctx: &Ctx, input: &Path) -> Result<Outcome, Error> {
    let q = Quiver::parse(&read(input)?)?;
    let p = quiver_to_presentation(&q)?;
    let value = json!({
        "generators": p.generators().iter().map(|g| &g.name).collect::<Vec<_>>(),
        "relators": p.relators().iter().map(|r| p.format_word(r)).collect::<Vec<_>>(),
    });
    Ok(Outcome::ok(ctx.emit(p.to_string(), value)))
}

fn cmd_reproduce(ctx: &Ctx, corrupt: bool) -> Outcome {
    let t = reproduce::run(reproduce::Options {
        corrupt_pi: corrupt,
    });
    let value = serde_json::to_value(&t).expect("transcript serialises");
    let code = if t.passed { 0 } else { 1 };
    Outcome::with_code(code, ctx.emit(t.to_text(), value))
}

/// Parses arguments, runs the command, writes output, and returns the exit code.
pub fn main() -> i32 {
    let cli = Cli::parse();
    let outcome = run(&cli);
    eprint!("{}", outcome.stderr);
    match &cli.output {
        Some(path) => {
            if !outcome.stdout.is_empty() {
                if let Err(e) = std::fs::write(path, &outcome.stdout) {
                    eprintln!("error: {}: {e}", path.display());
                    return 2;
                }
            }
        }
        None => print!("{}", outcome.stdout),
    }
    outcome.code
}
