use std::io::{Read, Write};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use keypos::apps::{
    immanant_key_expansion, logconcavity_difference, product_key_expansion, SkewPair,
};
use keypos::crystal::{Crystal, CrystalGraph, TableauCrystal};
use keypos::demazure::{axiom_report, decompose, demazure_subset, ComponentKey, Members};
use keypos::jt::flagged_skew_schur_det;
use keypos::tableau::{flagged_schur, FlaggedSet, Shape, SkewShape, Tableau};
use keypos::tl::TLDiagram;
use keypos::{key_expand, key_polynomial, Composition, Error, Flag, IntPoly, KeyExpansion, Partition};

#[derive(Parser)]
#[command(name = "keypos", version, about = "Key positivity computations for flagged Schur polynomials")]
struct Cli {
    /// Human-readable output instead of JSON.
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct ShapeArgs {
    /// Outer partition of the (first) skew shape, e.g. 3,2.
    #[arg(long)]
    lambda: String,
    /// Inner partition of the first shape.
    #[arg(long, default_value = "")]
    mu: String,
    /// Outer partition of a second shape; makes the shape a shuffle.
    #[arg(long)]
    nu: Option<String>,
    /// Inner partition of the second shape.
    #[arg(long, default_value = "")]
    rho: String,
}

#[derive(Subcommand)]
enum Command {
    /// Flagged skew Schur polynomial by tableaux and by determinant.
    Schur {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        flag: String,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Key expansion of a polynomial read from stdin.
    KeyExpand {
        #[arg(long, default_value_t = 0)]
        vars: usize,
        #[arg(long)]
        assert_positive: bool,
    },
    /// The key polynomial of a weak composition.
    Key {
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        vars: Option<usize>,
    },
    /// Key expansion of a Temperley-Lieb immanant of a flagged Jacobi-Trudi matrix.
    Immanant {
        #[arg(long)]
        lambda: String,
        #[arg(long)]
        mu: String,
        #[arg(long)]
        flag: String,
        /// Diagram as a pair list, e.g. "[[L1,L2],[L3,L4],[R1,R2],[R3,R4]]".
        #[arg(long)]
        tau: String,
        #[arg(long)]
        vars: Option<usize>,
        #[arg(long)]
        assert_positive: bool,
    },
    /// Key expansion of a product of two flagged skew Schur polynomials.
    Product {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        assert_positive: bool,
    },
    /// Key expansion of the log-concavity difference.
    Logconcave {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        assert_positive: bool,
    },
    /// Demazure axiom checks on a flagged tableau set or a Demazure subset.
    DemazureCheck {
        #[command(flatten)]
        source: SetArgs,
        /// Also run the exhaustive path search for the ideal axiom.
        #[arg(long)]
        direct_ideal: bool,
    },
    /// Crystal graph of a (flagged) tableau set; `--text` gives a graph description.
    CrystalGraph {
        #[command(flatten)]
        source: SetArgs,
    },
    /// Greedy lowest weight search on each component.
    Lowest {
        #[command(flatten)]
        source: SetArgs,
    },
}

#[derive(Args, Clone)]
struct PairArgs {
    #[arg(long)]
    lambda: String,
    #[arg(long, default_value = "")]
    mu: String,
    #[arg(long)]
    nu: String,
    #[arg(long, default_value = "")]
    rho: String,
    #[arg(long)]
    flag: String,
    #[arg(long)]
    vars: Option<usize>,
}

#[derive(Args, Clone)]
struct SetArgs {
    #[command(flatten)]
    shape: ShapeArgs,
    /// Row flag; omitted means entries bounded only by `--max-entry`.
    #[arg(long)]
    flag: Option<String>,
    /// Reduced word; selects the Demazure subset of a straight shape instead.
    #[arg(long)]
    word: Option<String>,
    /// Largest entry (crystal rank + 1); defaults to the largest flag value.
    #[arg(long)]
    max_entry: Option<u32>,
}

fn parse<T: std::str::FromStr<Err = Error>>(what: &str, s: &str) -> Result<T, Error> {
    s.parse().map_err(|e| match e {
        Error::Parse(m) => Error::Parse(format!("--{what}: {m}")),
        other => other,
    })
}

impl ShapeArgs {
    fn first(&self) -> Result<SkewShape, Error> {
        SkewShape::new(parse("lambda", &self.lambda)?, parse("mu", &self.mu)?)
    }

    fn build(&self) -> Result<Arc<Shape>, Error> {
        let first = self.first()?;
        Ok(match &self.nu {
            None => Shape::skew(first),
            Some(nu) => Shape::shuffle(first, SkewShape::new(parse("nu", nu)?, parse("rho", &self.rho)?)?),
        })
    }
}

impl PairArgs {
    fn build(&self) -> Result<(SkewPair, Flag, usize), Error> {
        let first = SkewShape::new(parse("lambda", &self.lambda)?, parse("mu", &self.mu)?)?;
        let second = SkewShape::new(parse("nu", &self.nu)?, parse("rho", &self.rho)?)?;
        let flag: Flag = parse("flag", &self.flag)?;
        let vars = self.vars.unwrap_or(flag.max_bound() as usize);
        Ok((SkewPair::new(first, second), flag, vars))
    }
}

struct Built {
    crystal: TableauCrystal,
    members: Members<Tableau>,
    shape: Arc<Shape>,
}

impl SetArgs {
    fn build(&self) -> Result<Built, Error> {
        let shape = self.shape.build()?;
        if let Some(word) = &self.word {
            let n = self
                .max_entry
                .ok_or_else(|| Error::Parse("--word needs --max-entry".into()))?;
            if self.shape.nu.is_some() || !self.shape.mu.trim().is_empty() {
                return Err(Error::Parse("--word applies to straight shapes only".into()));
            }
            let lambda: Partition = parse("lambda", &self.shape.lambda)?;
            let word: Vec<usize> = keypos::combinat::parse_list(word)?.into_iter().map(|i| i as usize).collect();
            return Ok(Built {
                crystal: TableauCrystal::new(n),
                members: demazure_subset(&lambda, &word, n)?,
                shape,
            });
        }
        let flag: Option<Flag> = self.flag.as_deref().map(|f| parse("flag", f)).transpose()?;
        let n = match (self.max_entry, &flag) {
            (Some(n), _) => n,
            (None, Some(f)) => f.max_bound(),
            (None, None) => return Err(Error::Parse("give --flag or --max-entry".into())),
        };
        let flag = flag.unwrap_or_else(|| Flag::constant(n, shape.flag_rows().max(1)));
        let members = FlaggedSet::new(shape.clone(), &flag, n)?.elements().into_iter().collect();
        Ok(Built {
            crystal: TableauCrystal::new(n),
            members,
            shape,
        })
    }
}

fn fmt_rows(t: &Tableau) -> String {
    format!("{:?}", t.rows()).replace(' ', "")
}

fn expansion_json(e: &KeyExpansion) -> Value {
    json!({
        "expansion": e.to_json(),
        "key_positive": e.is_key_positive(),
        "witnesses": e.witnesses().iter().map(|(alpha, lambda, w)| json!({
            "alpha": alpha.parts(), "lambda": lambda.parts(), "w": w.images(),
        })).collect::<Vec<_>>(),
    })
}

fn component_json(k: &TableauCrystal, c: &ComponentKey<Tableau>) -> Value {
    json!({
        "top": c.top.to_json(),
        "highest_weight": c.lambda.parts(),
        "alpha": c.alpha.parts(),
        "lowest": c.greedy.lowest.to_json(),
        "chain": c.greedy.chain.to_json(),
        "notation": c.greedy.chain.notation(),
        "steps": c.greedy.steps.iter().map(|s| json!({
            "index": s.index, "a": s.a, "weight": k.weight(&s.element).parts(), "element": s.element.to_json(),
        })).collect::<Vec<_>>(),
        "size": c.size,
        "valid": c.valid(),
    })
}

/// What a subcommand produced, plus whether a requested positivity assertion failed.
struct Output {
    json: Value,
    text: String,
    positivity_failed: bool,
}

impl Output {
    fn new(json: Value, text: String) -> Self {
        Output {
            json,
            text,
            positivity_failed: false,
        }
    }
}

fn run(cmd: &Command, stdin: &mut dyn Read) -> Result<Output, Error> {
    let out = match cmd {
        Command::Schur { shape, flag, vars } => {
            if shape.nu.is_some() {
                return Err(Error::Parse("schur takes a single skew shape".into()));
            }
            let flag: Flag = parse("flag", flag)?;
            let vars = vars.unwrap_or(flag.max_bound() as usize);
            let s = shape.first()?;
            let by_tableaux: IntPoly = flagged_schur(&Shape::skew(s.clone()), &flag, vars)?;
            let flag_n = if flag.len() >= s.rows() {
                flag.clone()
            } else {
                Flag::new((0..s.rows()).map(|i| flag.bound(i)).collect())?
            };
            let by_det: IntPoly = flagged_skew_schur_det(s.outer(), s.inner(), &flag_n, vars)?;
            Output::new(
                json!({
                    "tableaux": by_tableaux.to_canonical(),
                    "determinant": by_det.to_canonical(),
                    "agree": by_tableaux == by_det,
                }),
                format!("{}\nagree: {}", by_tableaux.pretty(), by_tableaux == by_det),
            )
        }
        Command::KeyExpand { vars, assert_positive } => {
            let mut input = String::new();
            stdin
                .read_to_string(&mut input)
                .map_err(|e| Error::Parse(format!("stdin: {e}")))?;
            let p = IntPoly::parse(input.trim(), *vars)?;
            let e = key_expand(&p)?;
            let mut o = Output::new(expansion_json(&e), e.to_text());
            o.positivity_failed = *assert_positive && !e.is_key_positive();
            o
        }
        Command::Key { alpha, vars } => {
            let alpha: Composition = parse("alpha", alpha)?;
            let vars = vars.unwrap_or(alpha.len());
            let k: IntPoly = key_polynomial(&alpha, vars)?;
            Output::new(
                json!({ "alpha": alpha.parts(), "polynomial": k.to_canonical(), "pretty": k.pretty() }),
                k.pretty(),
            )
        }
        Command::Immanant { lambda, mu, flag, tau, vars, assert_positive } => {
            let lambda: Partition = parse("lambda", lambda)?;
            let mu: Partition = parse("mu", mu)?;
            let flag: Flag = parse("flag", flag)?;
            let tau: TLDiagram = parse("tau", tau)?;
            let vars = vars.unwrap_or(flag.max_bound() as usize);
            let e = immanant_key_expansion(&lambda, &mu, &flag, &tau, vars)?;
            let mut j = expansion_json(&e);
            j["input"] = json!({
                "lambda": lambda.parts(), "mu": mu.parts(), "flag": flag.bounds(),
                "tau": tau.to_json(), "vars": vars,
            });
            j["hypotheses"] = json!({ "lambda_strict": lambda.padded(flag.len()).windows(2).all(|w| w[0] > w[1]) });
            let mut o = Output::new(j, e.to_text());
            o.positivity_failed = *assert_positive && !e.is_key_positive();
            o
        }
        Command::Product { pair, assert_positive } => {
            let (p, flag, vars) = pair.build()?;
            let r = product_key_expansion(&p, &flag, vars)?;
            let mut j = r.to_json();
            j["input"] = json!({ "pair": p.to_json(), "flag": flag.bounds(), "vars": vars });
            let mut o = Output::new(j, r.direct.to_text());
            o.positivity_failed = *assert_positive && !r.direct.is_key_positive();
            o
        }
        Command::Logconcave { pair, assert_positive } => {
            let (p, flag, vars) = pair.build()?;
            let e = logconcavity_difference(&p, &flag, vars)?;
            let mut j = expansion_json(&e);
            j["input"] = json!({ "pair": p.to_json(), "flag": flag.bounds(), "vars": vars });
            j["hypotheses"] = p.hypotheses().to_json();
            let mut o = Output::new(j, e.to_text());
            o.positivity_failed = *assert_positive && !e.is_key_positive();
            o
        }
        Command::DemazureCheck { source, direct_ideal } => {
            let b = source.build()?;
            let report = axiom_report(&b.crystal, &b.members, *direct_ideal);
            let parts = decompose(&b.crystal, &b.members);
            let mut text = vec![format!("elements: {}", b.members.len())];
            for (name, c) in [
                ("extremal", &report.extremal),
                ("ideal", &report.ideal),
                ("ideal (decomposed)", &report.ideal_decomposed),
                ("principal", &report.principal),
                ("extension", &report.extension),
                ("gluing", &report.gluing),
            ] {
                text.push(format!("{name}: {} ({} case{})", if c.passed { "pass" } else { "FAIL" }, c.cases, if c.cases == 1 { "" } else { "s" }));
            }
            for c in &parts {
                text.push(format!("component {} -> key {} ({})", c.lambda, c.alpha, if c.valid() { "valid" } else { "invalid" }));
            }
            Output::new(
                json!({
                    "shape": b.shape.descriptor(),
                    "size": b.members.len(),
                    "report": report.to_json(),
                    "components": parts.iter().map(|c| component_json(&b.crystal, c)).collect::<Vec<_>>(),
                }),
                text.join("\n"),
            )
        }
        Command::CrystalGraph { source } => {
            let b = source.build()?;
            let g = CrystalGraph::induced(&b.crystal, b.members.iter().cloned());
            Output::new(g.to_json(&b.crystal), g.to_dot())
        }
        Command::Lowest { source } => {
            let b = source.build()?;
            let parts = decompose(&b.crystal, &b.members);
            let mut text = Vec::new();
            for c in &parts {
                text.push(format!("top {} weight ({})", fmt_rows(&c.top), c.lambda));
                for s in &c.greedy.steps {
                    text.push(format!(
                        "  i={} a={} -> weight ({})",
                        s.index,
                        s.a,
                        b.crystal.weight(&s.element)
                    ));
                }
                text.push(format!("  lowest {} weight ({}) via {}", fmt_rows(&c.greedy.lowest), c.alpha, c.greedy.chain.notation()));
            }
            Output::new(
                json!({ "components": parts.iter().map(|c| component_json(&b.crystal, c)).collect::<Vec<_>>() }),
                text.join("\n"),
            )
        }
    };
    Ok(out)
}

/// Exit code plus what goes to stdout and stderr.
struct Outcome {
    code: u8,
    stdout: String,
    stderr: String,
}

fn execute<I, T>(args: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: 1, stdout: String::new(), stderr: rendered }
            } else {
                Outcome { code: 0, stdout: rendered, stderr: String::new() }
            };
        }
    };
    match run(&cli.command, stdin) {
        Ok(out) => {
            let mut stdout = if cli.text {
                out.text
            } else {
                serde_json::to_string_pretty(&out.json).expect("serializable")
            };
            stdout.push('\n');
            if out.positivity_failed {
                Outcome { code: 2, stdout, stderr: "error: expansion is not key positive\n".into() }
            } else {
                Outcome { code: 0, stdout, stderr: String::new() }
            }
        }
        Err(e) => Outcome { code: 1, stdout: String::new(), stderr: format!("error: {e}\n") },
    }
}

fn main() -> ExitCode {
    let out = execute(std::env::args_os(), &mut std::io::stdin());
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = std::io::stdout().lock().write_all(out.stdout.as_bytes());
    let _ = std::io::stderr().lock().write_all(out.stderr.as_bytes());
    ExitCode::from(out.code)
}
