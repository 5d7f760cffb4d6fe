use std::collections::BTreeMap;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use f2orbits::blocks::{path_lemma_check, predicted_orbit};
use f2orbits::classify::Classifier;
use f2orbits::cosets::{brute_coset_partition, classify_coset, CosetProblem};
use f2orbits::document::FormDocument;
use f2orbits::fixtures::{self, FIXTURE_NAMES};
use f2orbits::moves::recognize;
use f2orbits::orbits::{orbit, orbit_partition, v0, v000, DeltaOracle, Domain};
use f2orbits::report::{Check, Report};
use f2orbits::verify::{verify_document, Level};
use f2orbits::{Error, Subspace};

/// Classes listed individually before the listing is truncated.
const LISTED_CLASSES: usize = 256;
/// Largest coset enumerated for the oracle cross-check.
const ORACLE_COSET_DIM: usize = 16;

#[derive(Parser)]
#[command(name = "f2orbits", version, about = "Orbits of transvection groups over GF(2)")]
struct Cli {
    /// Emit the structured report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Orbit partition of the span, the whole space, or a coset.
    Orbits {
        #[arg(long)]
        input: String,
        /// span, all, or coset:VEC
        #[arg(long, default_value = "span")]
        domain: String,
    },
    /// Orbit label, d value and Q value of a vector.
    Classify {
        #[arg(long)]
        input: String,
        #[arg(long)]
        vector: String,
    },
    /// Move-equivalence class of the generating set.
    Recognize {
        #[arg(long)]
        input: String,
    },
    /// d(x) from the closed formula, optionally against the exact oracle.
    D {
        #[arg(long)]
        input: String,
        #[arg(long)]
        vector: String,
        #[arg(long)]
        oracle: bool,
    },
    /// Basis of V000.
    V000 {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = Method::Brute)]
        method: Method,
    },
    /// Orbits on the coset VEC + span(B).
    Coset {
        #[arg(long)]
        input: String,
        #[arg(long)]
        vector: String,
    },
    /// Predicted orbit for a document with declared blocks.
    Blocks {
        #[arg(long)]
        input: String,
        #[arg(long)]
        vector: String,
    },
    /// Property suites applicable to the document.
    Verify {
        #[arg(long)]
        input: String,
        #[arg(long, value_enum, default_value_t = VerifyLevel::Quick)]
        level: VerifyLevel,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lists built-in documents, or prints one.
    Fixtures { name: Option<String> },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    Brute,
    Subgraphs,
}

#[derive(Clone, Copy, ValueEnum)]
enum VerifyLevel {
    Quick,
    Full,
}

fn load(input: &str) -> Result<FormDocument, Error> {
    if Path::new(input).is_file() {
        let text = std::fs::read_to_string(input).map_err(|e| Error::Semantic(format!("cannot read `{input}`: {e}")))?;
        return FormDocument::parse(&text);
    }
    fixtures::fixture(input).map_err(|e| match e {
        Error::Semantic(msg) if msg.starts_with("unknown fixture") => {
            Error::Semantic(format!("`{input}` is neither a readable file nor a fixture; known fixtures: {}", FIXTURE_NAMES.join(", ")))
        }
        other => other,
    })
}

fn basis_json(doc: &FormDocument, s: &Subspace) -> Value {
    json!(s.basis().iter().map(|v| doc.describe(v)).collect::<Vec<_>>())
}

fn run(cli: &Cli) -> Result<Report, Error> {
    match &cli.command {
        Command::Orbits { input, domain } => {
            let doc = load(input)?;
            let b = doc.generating_set()?;
            let domain = match domain.as_str() {
                "span" => Domain::span_of(&b),
                "all" => Domain::Whole,
                other => match other.strip_prefix("coset:") {
                    Some(vec) => Domain::Coset { offset: doc.parse_vector(vec)?, space: b.span() },
                    None => return Err(Error::Semantic(format!("unknown domain `{other}`; expected span, all or coset:VEC"))),
                },
            };
            let part = orbit_partition(&b, &domain)?;
            let mut sizes: BTreeMap<usize, usize> = BTreeMap::new();
            for c in part.classes() {
                *sizes.entry(c.size).or_default() += 1;
            }
            let classes: Vec<Value> = part
                .classes()
                .iter()
                .take(LISTED_CLASSES)
                .map(|c| json!({ "representative": doc.describe(&c.representative), "size": c.size }))
                .collect();
            let result = json!({
                "domain": domain.describe(),
                "domain_size": part.domain_size(),
                "classes": part.len(),
                "singletons": part.singleton_count(),
                "sizes": sizes.iter().map(|(s, n)| json!({ "size": s, "count": n })).collect::<Vec<_>>(),
                "listed": classes.len(),
                "orbits": classes,
            });
            Ok(Report::new("orbits", input.as_str(), result))
        }
        Command::Classify { input, vector } => {
            let doc = load(input)?;
            let b = doc.generating_set()?;
            let x = doc.parse_vector(vector)?;
            let c = Classifier::new(&b)?;
            let label = c.orbit_label(&x)?;
            let d = match label {
                f2orbits::classify::OrbitLabel::Moving { d } => json!(d),
                f2orbits::classify::OrbitLabel::Fixed => Value::Null,
            };
            let result = json!({
                "vector": doc.describe(&x),
                "class": c.label().kind.to_string(),
                "orbit": label.to_string(),
                "d": d,
                "q": c.quadratic().eval(&x)? as u8,
                "orbit_size": orbit(&b, &x)?.len(),
            });
            Ok(Report::new("classify", input.as_str(), result))
        }
        Command::Recognize { input } => {
            let doc = load(input)?;
            let label = recognize(&doc.generating_set()?)?;
            let w = label.witness;
            let result = json!({
                "class": label.kind.to_string(),
                "d_type": label.is_dtype(),
                "dim": w.dim,
                "dim_v0": w.dim_v0,
                "dim_v000": w.dim_v000,
                "q_on_v0_nonzero": w.q_radical_nontrivial,
                "arf": w.arf.map(|a| a as u8),
                "contains_e6": w.contains_e6,
            });
            Ok(Report::new("recognize", input.as_str(), result))
        }
        Command::D { input, vector, oracle } => {
            let doc = load(input)?;
            let b = doc.generating_set()?;
            let x = doc.parse_vector(vector)?;
            let c = Classifier::new(&b)?;
            let formula = c.d_formula(&x)?;
            let rep = c.minimal_representative(&x)?;
            let mut result = json!({
                "vector": doc.describe(&x),
                "minimal_representative": doc.describe(&rep),
                "formula": formula,
            });
            let mut checks = Vec::new();
            if *oracle {
                let (d, parts) = DeltaOracle::new(&b)?.d(&x)?;
                result["oracle"] = json!(d);
                result["decomposition"] = json!(parts.iter().map(|p| doc.describe(p)).collect::<Vec<_>>());
                checks.push(Check::new("formula-equals-oracle", d == formula, format!("formula {formula}, oracle {d}")));
            }
            Ok(Report::new("d", input.as_str(), result).with_checks(checks))
        }
        Command::V000 { input, method } => {
            let doc = load(input)?;
            let b = doc.generating_set()?;
            let (name, space) = match method {
                Method::Brute => ("brute", v000(&b)?),
                Method::Subgraphs => ("subgraphs", Classifier::new(&b)?.v000_from_subgraphs()?),
            };
            let result = json!({
                "method": name,
                "dim_v0": v0(&b)?.dim(),
                "dim": space.dim(),
                "basis": basis_json(&doc, &space),
            });
            Ok(Report::new("v000", input.as_str(), result))
        }
        Command::Coset { input, vector } => {
            let doc = load(input)?;
            let b = doc.generating_set()?;
            let v = doc.parse_vector(vector)?;
            let problem = CosetProblem::new(b.clone(), v)?;
            let report = classify_coset(&problem)?;
            let result = json!({
                "offset": doc.describe(&v),
                "branch": report.branch.name(),
                "witness": report.witness.map(|w| doc.describe(&w)),
                "fixed_points": report.fixed_points.iter().map(|f| doc.describe(f)).collect::<Vec<_>>(),
                "classes": report.classes.iter().map(|c| json!({
                    "representative": doc.describe(&c.representative()),
                    "size": c.size(),
                    "description": c.description,
                })).collect::<Vec<_>>(),
            });
            let mut checks = Vec::new();
            if b.span().dim() <= ORACLE_COSET_DIM {
                let brute = brute_coset_partition(&b, &v)?;
                checks.push(Check::new(
                    "agrees-with-closure",
                    report.agrees_with(&brute),
                    format!("{} classes, closure {}", report.classes.len(), brute.len()),
                ));
            }
            Ok(Report::new("coset", input.as_str(), result).with_checks(checks))
        }
        Command::Blocks { input, vector } => {
            let doc = load(input)?;
            let d = doc.block_decomposition()?.ok_or_else(|| Error::InvalidBlocks("the document declares no blocks".into()))?;
            let b = d.generating_set().clone();
            let x = doc.parse_vector(vector)?;
            let p = predicted_orbit(&d, &x)?;
            let brute = orbit(&b, &x)?;
            let lemma: Vec<Value> = (0..b.len())
                .map(|t| {
                    path_lemma_check(&b, &x, t).map(|r| {
                        json!({
                            "target": b.labels()[t],
                            "path": r.path.iter().map(|&i| b.labels()[i].as_str()).collect::<Vec<_>>(),
                            "hypotheses_hold": r.hypotheses_hold,
                            "in_orbit": r.in_orbit,
                        })
                    })
                })
                .collect::<Result<_, _>>()?;
            let result = json!({
                "vector": doc.describe(&x),
                "first_active_block": p.block + 1,
                "base": doc.describe(&p.base),
                "anchor": p.anchor.map(|a| doc.describe(&a)),
                "block_orbit_size": p.block_orbit.len(),
                "predicted_size": p.members.len(),
                "path_lemma_reading": "Omega restricted to the span of the path vertices",
                "path_lemma": lemma,
            });
            let lemma_ok = (0..b.len()).all(|t| path_lemma_check(&b, &x, t).map(|r| r.in_orbit != Some(false)).unwrap_or(false));
            let checks = vec![
                Check::new("prediction-equals-orbit", p.members == brute, format!("predicted {}, closure {}", p.members.len(), brute.len())),
                Check::new("path-lemma", lemma_ok, "every hypothesis-true case lies in the orbit"),
            ];
            Ok(Report::new("blocks", input.as_str(), result).with_checks(checks))
        }
        Command::Verify { input, level, seed } => {
            let doc = load(input)?;
            let level = match level {
                VerifyLevel::Quick => Level::Quick,
                VerifyLevel::Full => Level::Full,
            };
            let checks = verify_document(&doc, level, *seed)?;
            let result = json!({
                "level": if level == Level::Full { "full" } else { "quick" },
                "seed": seed,
                "parallel": f2orbits::par::is_parallel(),
                "checks_run": checks.len(),
            });
            Ok(Report::new("verify", input.as_str(), result).with_checks(checks))
        }
        Command::Fixtures { name: None } => {
            Ok(Report::new("fixtures", "", json!({ "fixtures": FIXTURE_NAMES })))
        }
        Command::Fixtures { name: Some(name) } => {
            let doc = fixtures::fixture(name)?;
            Ok(Report::new("fixtures", name.as_str(), json!({ "document": doc.render() })))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let raw_document = matches!(cli.command, Command::Fixtures { name: Some(_) }) && !cli.json;
            if raw_document {
                print!("{}", report.result["document"].as_str().unwrap_or_default());
            } else if cli.json {
                println!("{}", report.render_json());
            } else {
                print!("{}", report.render_text());
            }
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
