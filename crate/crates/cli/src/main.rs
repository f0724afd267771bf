use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use qhh_core::complex::{center, CochainComplex, Stratum};
use qhh_core::dualext::DualExtension;
use qhh_core::fundgroup::{extended_tree, relative_parade, theta, verify_pullback, TreeOrder};
use qhh_core::lie::{bracket_raw, LiePresentation};
use qhh_core::parse::parse_input;
use qhh_core::relative::RelativeHh1;
use qhh_core::suites::{run_suite, Suite, DEFAULT_SEED};
use qhh_core::{Error, Field, FieldSpec, PrimeField, Rationals, VertexId};

/// Hochschild cohomology in degree one for monomial quiver algebras and their subalgebras.
#[derive(Parser, Debug)]
#[command(name = "qhh", version)]
struct Cli {
    /// Coefficient field: `q` or `fp:<prime>`
    #[arg(long, global = true, default_value = "q")]
    field: FieldSpec,
    /// Seed for property runs
    #[arg(long, global = true, env = "QHH_SEED", default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Compact single-line JSON instead of pretty-printed
    #[arg(long, global = true)]
    json: bool,
    /// Write the report here instead of stdout
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Relation-avoiding path basis
    Basis { file: PathBuf },
    /// HH⁰ and HH¹ of the algebra with its Lie structure
    Hh1 { file: PathBuf },
    /// HH¹(A|B) and its embedding into HH¹(A)
    Hh1rel { file: PathBuf },
    /// Structure constants of HH¹(A) (or HH¹(A|B) with --relative)
    Lie {
        file: PathBuf,
        #[arg(long)]
        relative: bool,
    },
    /// Closed form for radical-square-zero pairs, cross-checked
    Radzero { file: PathBuf },
    /// Dual extension Λ(B, A^op)
    Dualext { file_b: PathBuf, file_a: PathBuf },
    /// Betti numbers, contracted rank and θ-map checks
    Pi1 {
        file: PathBuf,
        #[arg(long)]
        basepoint: Option<VertexId>,
        /// Root of the component of Q_B containing v, as `v=root`
        #[arg(long = "root", value_parser = parse_root)]
        roots: Vec<(VertexId, VertexId)>,
    },
    /// θ of one contracted generator (index or arrow name)
    Theta {
        file: PathBuf,
        #[arg(long)]
        generator: String,
        #[arg(long)]
        basepoint: Option<VertexId>,
        #[arg(long = "root", value_parser = parse_root)]
        roots: Vec<(VertexId, VertexId)>,
    },
    /// Seeded property suite: jacobi, theoremA, theoremB, dualmain, contracted, radzero
    Proptest {
        suite: Suite,
        #[arg(long, default_value_t = 200)]
        cases: usize,
    },
}

fn parse_root(s: &str) -> Result<(VertexId, VertexId), String> {
    let (v, r) = s.split_once('=').ok_or("expected v=root")?;
    let p = |t: &str| t.trim().parse::<VertexId>().map_err(|e| format!("'{t}': {e}"));
    Ok((p(v)?, p(r)?))
}

enum Failure {
    Io(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn to_value<T: Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("reports serialize")
}

fn run<F: Field>(field: &F, cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Basis { file } => {
            let input = parse_input(&read(file)?)?;
            let a = input.algebra();
            let q = a.quiver();
            Ok((
                json!({
                    "algebra": a.name(),
                    "dim": a.dim(),
                    "vertices": q.vertices(),
                    "arrows": q.arrows().iter().map(|x| json!({"name": x.name, "source": x.source, "target": x.target})).collect::<Vec<_>>(),
                    "relations": a.relations().iter().map(|r| r.label(q)).collect::<Vec<_>>(),
                    "dropped_relations": a.dropped_relations().iter().map(|r| r.label(q)).collect::<Vec<_>>(),
                    "basis": a.basis().iter().map(|p| a.path_label(p)).collect::<Vec<_>>(),
                }),
                true,
            ))
        }
        Command::Hh1 { file } => {
            let input = parse_input(&read(file)?)?;
            let a = input.algebra();
            let c = CochainComplex::new(a, field);
            let hh = c.hh1()?;
            let labels = (0..hh.dim()).map(|k| format!("h{k}")).collect();
            let lie = LiePresentation::from_subquotient(&hh, labels, |x, y| bracket_raw(&c, x, y))?;
            Ok((
                json!({
                    "algebra": a.name(),
                    "field": field.spec().to_string(),
                    "dim_algebra": a.dim(),
                    "dim_hh0": center(a, field).dim(),
                    "dim_hh1": hh.dim(),
                    "dim_ker_d1": c.ker_d1().dim(),
                    "dim_im_d0": c.im_d0().dim(),
                    "graded_dims": c.graded_hh1_dims(),
                    "representatives": hh.representatives().iter().map(|v| c.terms(Stratum::Arrows, v)).collect::<Vec<_>>(),
                    "lie": lie.report()?,
                }),
                true,
            ))
        }
        Command::Hh1rel { file } => {
            let pair = parse_input(&read(file)?)?.into_pair()?;
            let rel = RelativeHh1::new(&pair, field)?;
            Ok((to_value(&rel.report()?), true))
        }
        Command::Lie { file, relative } => {
            let pair = parse_input(&read(file)?)?.into_pair()?;
            let rel = RelativeHh1::new(&pair, field)?;
            let lie = if *relative { rel.lie()? } else { rel.absolute_lie()? };
            let n = lie.dim();
            let mut brackets = Vec::new();
            for i in 0..n {
                for j in (i + 1)..n {
                    let terms: Vec<Value> = (0..n)
                        .filter_map(|k| {
                            let c = lie.structure_constant(i, j, k);
                            (!field.is_zero(&c)).then(|| json!([k, field.format(&c)]))
                        })
                        .collect();
                    if !terms.is_empty() {
                        brackets.push(json!({"i": i, "j": j, "terms": terms}));
                    }
                }
            }
            Ok((
                json!({
                    "field": field.spec().to_string(),
                    "labels": lie.labels(),
                    "brackets": brackets,
                    "antisymmetric": lie.is_antisymmetric(),
                    "jacobi": lie.satisfies_jacobi(),
                    "report": lie.report()?,
                }),
                true,
            ))
        }
        Command::Radzero { file } => {
            if field.characteristic() != 0 {
                return Err(Error::UnsupportedField(field.characteristic()).into());
            }
            let pair = parse_input(&read(file)?)?.into_pair()?;
            let r = qhh_core::radzero::report(&pair)?;
            let ok = r.crosscheck.is_ok();
            Ok((to_value(&r), ok))
        }
        Command::Dualext { file_b, file_a } => {
            let b = parse_input(&read(file_b)?)?.into_algebra();
            let a = parse_input(&read(file_a)?)?.into_algebra();
            let de = DualExtension::new(&b, &a)?;
            let r = de.analyze(field)?.report()?;
            let ok = r.checks.all();
            Ok((to_value(&r), ok))
        }
        Command::Pi1 { file, basepoint, roots } => {
            let pair = parse_input(&read(file)?)?.into_pair()?;
            let roots: BTreeMap<_, _> = roots.iter().copied().collect();
            let r = verify_pullback(&pair, field, &roots, *basepoint)?;
            let ok = r.pullback_checks.all();
            Ok((to_value(&r), ok))
        }
        Command::Theta {
            file,
            generator,
            basepoint,
            roots,
        } => {
            let pair = parse_input(&read(file)?)?.into_pair()?;
            let roots: BTreeMap<_, _> = roots.iter().copied().collect();
            let data = extended_tree(&pair, TreeOrder::Bfs, &roots)?;
            let q = pair.ambient().quiver();
            let g = match generator.parse::<usize>() {
                Ok(k) => k,
                Err(_) => q
                    .arrow_index(generator)
                    .and_then(|a| data.generator_id(a))
                    .ok_or_else(|| Error::Validation(format!("'{generator}' is not a contracted generator")))?,
            };
            if g >= data.rank() {
                return Err(Error::Validation(format!(
                    "generator {g} out of range, the contracted group has rank {}",
                    data.rank()
                ))
                .into());
            }
            let parade = relative_parade(&pair, &data, *basepoint)?;
            let rel = RelativeHh1::new(&pair, field)?;
            let v = theta(&rel, &data, &parade, g)?;
            Ok((
                json!({
                    "generator": g,
                    "arrow": q.arrow(data.generators[g]).name,
                    "terms": rel.complex().terms(Stratum::Arrows, &v),
                }),
                true,
            ))
        }
        Command::Proptest { suite, cases } => {
            let s = run_suite(*suite, *cases, cli.seed);
            let ok = s.all_passed();
            Ok((to_value(&s), ok))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.field {
        FieldSpec::Rationals => run(&Rationals, &cli),
        FieldSpec::Prime(p) => match PrimeField::new(p) {
            Ok(f) => run(&f, &cli),
            Err(e) => Err(e.into()),
        },
    };
    let (value, ok) = match result {
        Ok(r) => r,
        Err(Failure::Io(m)) => {
            eprintln!("error: {m}");
            return ExitCode::from(1);
        }
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            return ExitCode::from(if e.is_input_error() { 2 } else { 3 });
        }
    };
    let mut text = if cli.json {
        serde_json::to_string(&value)
    } else {
        serde_json::to_string_pretty(&value)
    }
    .expect("json");
    text.push('\n');
    match &cli.output {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("error: {}: {e}", p.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("error: verification failed");
        ExitCode::from(3)
    }
}
