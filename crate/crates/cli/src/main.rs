//! `kmon`: batch front end. Exit 0 = success or true, 1 = false, 2 = error.

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use kmonoid::catalog::catalog_names;
use kmonoid::geometry::render_boxes;
use kmonoid::tilings::{effectiveness_evidence, Report};
use kmonoid::{
    catalog, Effectiveness, Element, Error, Grade, GroupElement, PartialTable, PrefixCode, Presentation,
};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "kmon", version, about = "Arithmetic in k-monoids, prefix codes and their groups")]
struct Cli {
    /// Treat the presentation as effective even without a rigidity guarantee.
    #[arg(long, global = true)]
    assume_effective: bool,
    #[command(subcommand)]
    command: Command,
}

/// A presentation file, or a catalog name such as `power2-2`.
#[derive(Args)]
struct Pres {
    presentation: String,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a presentation and report its flags.
    Validate(Pres),
    /// Normal form of a word.
    Normalize {
        #[command(flatten)]
        p: Pres,
        word: String,
    },
    Mul {
        #[command(flatten)]
        p: Pres,
        a: String,
        b: String,
    },
    /// Factor s = prefix·suffix with d(prefix) = GRADE.
    Split {
        #[command(flatten)]
        p: Pres,
        s: String,
        grade: String,
    },
    /// Minimal common extensions of two elements.
    Join {
        #[command(flatten)]
        p: Pres,
        a: String,
        b: String,
    },
    Comparable {
        #[command(flatten)]
        p: Pres,
        a: String,
        b: String,
    },
    #[command(subcommand)]
    Code(CodeCmd),
    #[command(subcommand)]
    Group(GroupCmd),
    #[command(subcommand)]
    Bisect(BisectCmd),
    /// Bounded search for incomparability witnesses.
    Effectiveness {
        #[command(flatten)]
        p: Pres,
        #[arg(long)]
        pair_bound: String,
        #[arg(long)]
        witness_bound: String,
    },
    /// Brick geometry of a code as JSON, optionally also as SVG.
    Render {
        #[command(flatten)]
        p: Pres,
        #[arg(long)]
        code: PathBuf,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    #[command(subcommand)]
    Catalog(CatalogCmd),
}

#[derive(Subcommand)]
enum CodeCmd {
    /// Whether the elements are pairwise incomparable.
    Check {
        #[command(flatten)]
        p: Pres,
        code: PathBuf,
    },
    Maximal {
        #[command(flatten)]
        p: Pres,
        code: PathBuf,
    },
    Concrete {
        #[command(flatten)]
        p: Pres,
        code: PathBuf,
    },
    /// The uniform code C_m.
    Enum {
        #[command(flatten)]
        p: Pres,
        grade: String,
    },
    /// Replace x by x·D.
    Expand {
        #[command(flatten)]
        p: Pres,
        code: PathBuf,
        x: String,
        expander: PathBuf,
    },
    /// Replace x·D by x.
    Reduce {
        #[command(flatten)]
        p: Pres,
        code: PathBuf,
        x: String,
        reducer: PathBuf,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// f∘g, applying g first.
    Compose {
        #[command(flatten)]
        p: Pres,
        f: PathBuf,
        g: PathBuf,
    },
    Invert {
        #[command(flatten)]
        p: Pres,
        f: PathBuf,
    },
    Eq {
        #[command(flatten)]
        p: Pres,
        f: PathBuf,
        g: PathBuf,
    },
    Act {
        #[command(flatten)]
        p: Pres,
        f: PathBuf,
        word: String,
    },
    Simplify {
        #[command(flatten)]
        p: Pres,
        f: PathBuf,
    },
    /// Smallest n ≤ bound with fⁿ = 1, or null.
    Order {
        #[command(flatten)]
        p: Pres,
        f: PathBuf,
        #[arg(long, default_value_t = 32)]
        bound: u32,
    },
}

#[derive(Subcommand)]
enum BisectCmd {
    Compose {
        #[command(flatten)]
        p: Pres,
        s: PathBuf,
        t: PathBuf,
    },
    Eq {
        #[command(flatten)]
        p: Pres,
        s: PathBuf,
        t: PathBuf,
    },
    Meet {
        #[command(flatten)]
        p: Pres,
        s: PathBuf,
        t: PathBuf,
    },
}

#[derive(Subcommand)]
enum CatalogCmd {
    List,
    Dump { name: String },
}

enum Output {
    Value(Value),
    Truth(bool),
    // stdout already written; carries the verdict
    Printed(bool),
}

type Run = Result<Output, Error>;

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn raw(text: &str) -> Value {
    serde_json::from_str(text).expect("library emits valid JSON")
}

impl Pres {
    fn load(&self, assume: bool) -> Result<Arc<Presentation>, Error> {
        let path = Path::new(&self.presentation);
        let p = if path.exists() {
            Presentation::from_json(&read(path)?)?
        } else {
            catalog(&self.presentation)?
        };
        let p = if assume && !p.effectiveness().permits_equality() {
            p.with_effectiveness(Effectiveness::UserAsserted)
        } else {
            p
        };
        Ok(p.into_arc())
    }
}

fn grade(p: &Presentation, text: &str) -> Result<Grade, Error> {
    let g: Grade = text.parse()?;
    if g.k() != p.k() {
        return Err(Error::Parse(format!("grade {g} has {} components, expected {}", g.k(), p.k())));
    }
    Ok(g)
}

fn code(p: &Arc<Presentation>, path: &Path) -> Result<PrefixCode, Error> {
    PrefixCode::from_json(p, &read(path)?)
}

fn group(p: &Arc<Presentation>, path: &Path) -> Result<GroupElement, Error> {
    GroupElement::from_json(p, &read(path)?)
}

fn table(p: &Arc<Presentation>, path: &Path) -> Result<PartialTable, Error> {
    PartialTable::from_json(p, &read(path)?)
}

fn text(e: &Element) -> Value {
    Value::String(e.to_string())
}

fn run(cli: &Cli) -> Run {
    let a = cli.assume_effective;
    match &cli.command {
        Command::Validate(p) => {
            let p = p.load(a)?;
            Ok(Output::Value(json!({
                "k": p.k(),
                "alphabet_sizes": p.alphabet_sizes(),
                "right_rigid": p.is_right_rigid(),
                "left_rigid": p.is_left_rigid(),
                "effectiveness": p.effectiveness().to_string(),
            })))
        }
        Command::Normalize { p, word } => {
            let p = p.load(a)?;
            Ok(Output::Value(text(&Element::parse(&p, word)?)))
        }
        Command::Mul { p, a: x, b: y } => {
            let p = p.load(a)?;
            let prod = Element::parse(&p, x)?.multiply(&Element::parse(&p, y)?)?;
            Ok(Output::Value(text(&prod)))
        }
        Command::Split { p, s, grade: g } => {
            let p = p.load(a)?;
            let (head, tail) = Element::parse(&p, s)?.split(&grade(&p, g)?)?;
            Ok(Output::Value(json!([head.to_string(), tail.to_string()])))
        }
        Command::Join { p, a: x, b: y } => {
            let p = p.load(a)?;
            let j = Element::parse(&p, x)?.join(&Element::parse(&p, y)?);
            Ok(Output::Value(Value::Array(j.iter().map(text).collect())))
        }
        Command::Comparable { p, a: x, b: y } => {
            let p = p.load(a)?;
            Ok(Output::Truth(Element::parse(&p, x)?.comparable(&Element::parse(&p, y)?)))
        }
        Command::Code(cmd) => run_code(cmd, a),
        Command::Group(cmd) => run_group(cmd, a),
        Command::Bisect(cmd) => run_bisect(cmd, a),
        Command::Effectiveness {
            p,
            pair_bound,
            witness_bound,
        } => {
            let p = p.load(a)?;
            let report = effectiveness_evidence(&p, &grade(&p, pair_bound)?, &grade(&p, witness_bound)?);
            let value = match &report {
                Report::VerifiedUpTo {
                    pair_bound,
                    witness_bound,
                } => json!({
                    "verified": true,
                    "pair_bound": pair_bound.to_string(),
                    "witness_bound": witness_bound.to_string(),
                    "status": report.apply(&p).effectiveness().to_string(),
                }),
                Report::FailedPair(x, y) => json!({
                    "verified": false,
                    "failed_pair": [x.to_string(), y.to_string()],
                }),
            };
            println!("{value}");
            Ok(Output::Printed(report.is_verified()))
        }
        Command::Render { p, code: c, svg } => {
            let p = p.load(a)?;
            let geometry = render_boxes(&code(&p, c)?)?;
            println!("{}", geometry.to_json()?);
            if let Some(out) = svg {
                let picture = geometry.to_svg()?;
                std::fs::write(out, picture).map_err(|e| Error::Parse(format!("{}: {e}", out.display())))?;
            }
            Ok(Output::Printed(true))
        }
        Command::Catalog(CatalogCmd::List) => Ok(Output::Value(json!(catalog_names()))),
        Command::Catalog(CatalogCmd::Dump { name }) => Ok(Output::Value(raw(&catalog(name)?.to_json()))),
    }
}

fn run_code(cmd: &CodeCmd, a: bool) -> Run {
    match cmd {
        CodeCmd::Check { p, code: c } => {
            let p = p.load(a)?;
            let elems: Vec<String> =
                serde_json::from_str(&read(c)?).map_err(|e| Error::Parse(e.to_string()))?;
            let elems = elems
                .iter()
                .map(|s| Element::parse(&p, s))
                .collect::<Result<Vec<_>, _>>()?;
            let mut sorted = elems.clone();
            sorted.sort();
            let distinct = sorted.windows(2).all(|w| w[0] != w[1]);
            Ok(Output::Truth(distinct && kmonoid::codes::is_prefix_code(&elems)))
        }
        CodeCmd::Maximal { p, code: c } => {
            let p = p.load(a)?;
            Ok(Output::Truth(code(&p, c)?.is_maximal()))
        }
        CodeCmd::Concrete { p, code: c } => {
            let p = p.load(a)?;
            Ok(Output::Truth(code(&p, c)?.is_concrete()?))
        }
        CodeCmd::Enum { p, grade: g } => {
            let p = p.load(a)?;
            Ok(Output::Value(raw(&PrefixCode::homogeneous(&p, &grade(&p, g)?).to_json())))
        }
        CodeCmd::Expand { p, code: c, x, expander } => {
            let p = p.load(a)?;
            let out = code(&p, c)?.expansion(&Element::parse(&p, x)?, &code(&p, expander)?)?;
            Ok(Output::Value(raw(&out.to_json())))
        }
        CodeCmd::Reduce { p, code: c, x, reducer } => {
            let p = p.load(a)?;
            let out = code(&p, c)?.reduction(&Element::parse(&p, x)?, &code(&p, reducer)?)?;
            Ok(Output::Value(raw(&out.to_json())))
        }
    }
}

fn run_group(cmd: &GroupCmd, a: bool) -> Run {
    let value = |g: GroupElement| Ok(Output::Value(raw(&g.to_json())));
    match cmd {
        GroupCmd::Compose { p, f, g } => {
            let p = p.load(a)?;
            value(group(&p, f)?.compose(&group(&p, g)?)?)
        }
        GroupCmd::Invert { p, f } => {
            let p = p.load(a)?;
            value(group(&p, f)?.inverse())
        }
        GroupCmd::Eq { p, f, g } => {
            let p = p.load(a)?;
            Ok(Output::Truth(group(&p, f)?.equals(&group(&p, g)?)?))
        }
        GroupCmd::Act { p, f, word } => {
            let p = p.load(a)?;
            Ok(Output::Value(text(&group(&p, f)?.act(&Element::parse(&p, word)?)?)))
        }
        GroupCmd::Simplify { p, f } => {
            let p = p.load(a)?;
            value(group(&p, f)?.simplify())
        }
        GroupCmd::Order { p, f, bound } => {
            let p = p.load(a)?;
            Ok(Output::Value(json!(group(&p, f)?.element_order(*bound)?)))
        }
    }
}

fn run_bisect(cmd: &BisectCmd, a: bool) -> Run {
    match cmd {
        BisectCmd::Compose { p, s, t } => {
            let p = p.load(a)?;
            Ok(Output::Value(raw(&table(&p, s)?.compose(&table(&p, t)?)?.to_json())))
        }
        BisectCmd::Eq { p, s, t } => {
            let p = p.load(a)?;
            Ok(Output::Truth(table(&p, s)?.equivalent(&table(&p, t)?)?))
        }
        BisectCmd::Meet { p, s, t } => {
            let p = p.load(a)?;
            Ok(Output::Value(raw(&table(&p, s)?.meet(&table(&p, t)?)?.to_json())))
        }
    }
}

fn verdict(t: bool) -> ExitCode {
    if t {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Output::Value(v)) => {
            println!("{v}");
            ExitCode::SUCCESS
        }
        Ok(Output::Truth(t)) => {
            println!("{t}");
            verdict(t)
        }
        Ok(Output::Printed(t)) => verdict(t),
        Err(e) => {
            eprintln!("kmon: {e}");
            ExitCode::from(2)
        }
    }
}
