use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use fvw_core::autfile::{AutFile, DefaultObjects};
use fvw_core::catkit::{AssocAlgebras, Groups, QuasiHom, Representations, Semigroups, VarietyTag};
use fvw_core::config::DEFAULT_SEED;
use fvw_core::groupalg::RepVector;
use fvw_core::ncpoly::{DerivedSig, NcPoly, Orientation};
use fvw_core::parse::{parse_expr, parse_field, parse_poly, parse_rep_point, parse_scalar};
use fvw_core::reps::{End1Elem, RepPoint};
use fvw_core::scalars::Scalar;
use fvw_core::solver::{ActionLaw, SemCarrier};
use fvw_core::suites::{action_kernel_report, decompose, enumerate_sem_report};
use fvw_core::{run_suite, Error, Report, SessionConfig};

#[derive(Parser)]
#[command(name = "fvw", version, about = "Derived structures and automorphisms of free objects")]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    cmd: Command,
}

#[derive(Args)]
struct Global {
    /// Master seed. FVW_SEED, when set, takes precedence.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of sampled cases per check.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Coefficient field: Q or Q(sqrt d).
    #[arg(long, global = true, default_value = "Q")]
    field: String,
    #[arg(long, global = true, value_enum, default_value_t = VarietyArg::Assoc)]
    variety: VarietyArg,
    #[arg(long, global = true)]
    max_degree: Option<usize>,
    #[arg(long, global = true)]
    max_terms: Option<usize>,
    #[arg(long, global = true)]
    max_word_len: Option<usize>,
    #[arg(long, global = true)]
    max_gens: Option<u32>,
}

#[derive(Clone, Copy, ValueEnum)]
enum VarietyArg {
    Sem,
    Group,
    Assoc,
    Rep,
}

impl From<VarietyArg> for VarietyTag {
    fn from(v: VarietyArg) -> Self {
        match v {
            VarietyArg::Sem => VarietyTag::Semigroup,
            VarietyArg::Group => VarietyTag::Group,
            VarietyArg::Assoc => VarietyTag::AssocAlgebra,
            VarietyArg::Rep => VarietyTag::Representation,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OrientArg {
    Straight,
    Dual,
}

impl From<OrientArg> for Orientation {
    fn from(o: OrientArg) -> Self {
        match o {
            OrientArg::Straight => Orientation::Straight,
            OrientArg::Dual => Orientation::Dual,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum LawArg {
    Standard,
    Mirror,
}

#[derive(Clone, Copy, ValueEnum)]
enum CarrierArg {
    Free,
    Commutative,
    FreeCommutativeLaw,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an expression and print its canonical form.
    Parse { expr: String },
    /// Apply the standard homomorphism given by generator images.
    ApplyHom {
        /// e.g. "x1 -> x1*x2, x2 -> x2 + 1"; unnamed generators are fixed.
        #[arg(long)]
        map: String,
        expr: String,
    },
    /// Derived operations for a new zero and unit.
    DerivedOps {
        #[arg(long, allow_hyphen_values = true)]
        zero: String,
        #[arg(long, allow_hyphen_values = true)]
        one: String,
        #[arg(long)]
        dual: bool,
        #[arg(long, allow_hyphen_values = true)]
        p: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
    },
    /// Rederive the derived ring operations by elimination.
    SolveDerived,
    /// Enumerate binary semigroup words and keep the admissible ones.
    EnumerateSem {
        #[arg(long)]
        max_len: usize,
        #[arg(long, value_enum, default_value_t = CarrierArg::Free)]
        carrier: CarrierArg,
    },
    /// Search a Laurent window for multipliers satisfying an action law.
    ActionKernel {
        /// Exponent window, e.g. -2..2.
        #[arg(long, default_value = "-2..2", allow_hyphen_values = true)]
        window: String,
        #[arg(long, default_value = "-1,0,1,2", allow_hyphen_values = true)]
        coeffs: String,
        #[arg(long, value_enum, default_value_t = OrientArg::Straight)]
        rho: OrientArg,
        #[arg(long, value_enum, default_value_t = LawArg::Standard)]
        law: LawArg,
    },
    /// Endomorphisms of the monogenic free representation.
    Endo1 {
        #[command(subcommand)]
        cmd: Endo1Cmd,
    },
    /// Run a named check suite.
    Check {
        #[arg(long)]
        suite: String,
    },
    /// Factor an automorphism presentation read from a JSON file.
    Decompose {
        #[arg(long)]
        aut: PathBuf,
    },
}

#[derive(Subcommand)]
enum Endo1Cmd {
    /// Compose two points "(y1*(w) ; x1^n)", read as ν_(w, xⁿ).
    Compose { a: String, b: String },
    /// Run the End₁ law checks.
    Check,
}

/// What a command produced: a checked report, or plain output.
enum Outcome {
    Report(Report),
    Value(serde_json::Value),
}

fn session(g: &Global) -> Result<SessionConfig, Error> {
    let seed = match std::env::var("FVW_SEED") {
        Ok(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Precondition(format!("FVW_SEED must be an unsigned integer, got {s:?}")))?,
        Err(_) => g.seed,
    };
    let mut cfg = SessionConfig {
        field: parse_field(&g.field)?,
        variety: g.variety.into(),
        seed,
        samples: g.samples,
        ..SessionConfig::default()
    };
    let b = &mut cfg.bounds;
    if let Some(v) = g.max_degree {
        b.max_degree = v;
    }
    if let Some(v) = g.max_terms {
        b.max_terms = v;
    }
    if let Some(v) = g.max_word_len {
        b.max_word_len = v;
    }
    if let Some(v) = g.max_gens {
        b.max_gens = v;
    }
    cfg.validate()?;
    Ok(cfg)
}

fn parse_map(text: &str) -> Result<BTreeMap<String, String>, Error> {
    let mut out = BTreeMap::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (name, expr) = part
            .split_once("->")
            .ok_or_else(|| Error::Syntax { pos: 0, msg: format!("expected `name -> expr`, got {part:?}") })?;
        if out.insert(name.trim().to_string(), expr.trim().to_string()).is_some() {
            return Err(Error::Presentation(format!("{} is mapped twice", name.trim())));
        }
    }
    Ok(out)
}

fn apply_hom<V: DefaultObjects>(map: &BTreeMap<String, String>, expr: &str, sqrt: Option<i64>) -> Result<serde_json::Value, Error> {
    let e = V::parse_elem(expr, sqrt)?;
    let mut found = None;
    for s in V::candidate_objects() {
        if !V::contains(&s, &e) {
            continue;
        }
        match V::parse_images(&s, map, sqrt) {
            Ok(images) => {
                found = Some((s, images));
                break;
            }
            Err(Error::UnboundGenerator(_)) => continue,
            Err(err) => return Err(err),
        }
    }
    let (source, images) = found.ok_or_else(|| Error::Precondition("no free object holds the map and the expression".into()))?;
    let target = V::candidate_objects()
        .into_iter()
        .find(|t| images.iter().all(|i| V::contains(t, i)))
        .ok_or_else(|| Error::Precondition("no free object holds the images".into()))?;
    let hom = QuasiHom::<V>::standard(source.clone(), target.clone(), images.clone())?;
    let value = hom.apply(&e)?;
    Ok(json!({
        "variety": V::TAG,
        "source": source.to_string(),
        "target": target.to_string(),
        "images": images.iter().map(|i| i.to_string()).collect::<Vec<_>>(),
        "input": e.to_string(),
        "result": value.to_string(),
    }))
}

fn end1_point(text: &str, sqrt: Option<i64>) -> Result<End1Elem<Scalar>, Error> {
    let p = parse_rep_point(text, sqrt)?;
    if p.v.max_basis() > 1 {
        return Err(Error::DomainMismatch(format!("{p} is not in the monogenic representation")));
    }
    End1Elem::from_word(p.v.get(1), &p.g)
}

fn end1_text(e: &End1Elem<Scalar>) -> String {
    RepPoint::new(RepVector::component(1, e.w.clone()), e.g()).to_string()
}

fn window(text: &str) -> Result<(i64, i64), Error> {
    let bad = || Error::Syntax { pos: 0, msg: format!("window must look like A..B, got {text:?}") };
    let (a, b) = text.split_once("..").ok_or_else(bad)?;
    let a = a.trim().parse().map_err(|_| bad())?;
    let b = b.trim().parse().map_err(|_| bad())?;
    if a > b {
        return Err(Error::Precondition(format!("empty window {a}..{b}")));
    }
    Ok((a, b))
}

fn run(cli: &Cli) -> Result<Outcome, Error> {
    let cfg = session(&cli.global)?;
    let sqrt = cfg.field;
    Ok(match &cli.cmd {
        Command::Parse { expr } => {
            let e = parse_expr(expr, cfg.variety, sqrt)?;
            let canonical = e.to_string();
            let again = parse_expr(&canonical, cfg.variety, sqrt)?;
            Outcome::Value(json!({
                "input": expr,
                "variety": cfg.variety,
                "kind": e.kind(),
                "canonical": canonical,
                "roundtrip": again == e,
            }))
        }
        Command::ApplyHom { map, expr } => {
            let map = parse_map(map)?;
            Outcome::Value(match cfg.variety {
                VarietyTag::Semigroup => apply_hom::<Semigroups>(&map, expr, sqrt)?,
                VarietyTag::Group => apply_hom::<Groups>(&map, expr, sqrt)?,
                VarietyTag::AssocAlgebra => apply_hom::<AssocAlgebras>(&map, expr, sqrt)?,
                VarietyTag::Representation => apply_hom::<Representations>(&map, expr, sqrt)?,
            })
        }
        Command::DerivedOps { zero, one, dual, p, q } => {
            let orientation = if *dual { Orientation::Dual } else { Orientation::Straight };
            let sig = DerivedSig::new(parse_scalar(zero, sqrt)?, parse_scalar(one, sqrt)?, orientation)?;
            let x = |i| NcPoly::<Scalar>::generator(i);
            let mut out = json!({
                "zero": sig.z0().to_string(),
                "one": sig.z1().to_string(),
                "orientation": orientation.to_string(),
                "k": sig.k().to_string(),
                "x1 ⊥ x2": sig.derived_add(&x(1), &x(2)).to_string(),
                "x1 ⊙ x2": sig.derived_mul(&x(1), &x(2)).to_string(),
                "central_map": sig.central_map(&x(1)).to_string(),
            });
            if let (Some(p), Some(q)) = (p, q) {
                let (p, q) = (parse_poly(p, sqrt)?, parse_poly(q, sqrt)?);
                out["p ⊥ q"] = json!(sig.derived_add(&p, &q).to_string());
                out["p ⊙ q"] = json!(sig.derived_mul(&p, &q).to_string());
            } else if p.is_some() || q.is_some() {
                return Err(Error::Precondition("--p and --q go together".into()));
            }
            Outcome::Value(out)
        }
        Command::SolveDerived => Outcome::Report(run_suite("elimination-reproduction", &cfg)?),
        Command::EnumerateSem { max_len, carrier } => {
            let carrier = match carrier {
                CarrierArg::Free => SemCarrier::Free,
                CarrierArg::Commutative => SemCarrier::Commutative,
                CarrierArg::FreeCommutativeLaw => SemCarrier::FreeCommutativeLaw,
            };
            Outcome::Report(enumerate_sem_report(*max_len, carrier, &cfg)?)
        }
        Command::ActionKernel { window: w, coeffs, rho, law } => {
            let coeffs = coeffs
                .split(',')
                .map(|c| parse_scalar(c.trim(), sqrt))
                .collect::<Result<Vec<_>, _>>()?;
            let law = match law {
                LawArg::Standard => ActionLaw::Standard,
                LawArg::Mirror => ActionLaw::Mirror,
            };
            Outcome::Report(action_kernel_report(window(w)?, &coeffs, (*rho).into(), law, &cfg)?)
        }
        Command::Endo1 { cmd: Endo1Cmd::Compose { a, b } } => {
            let (ea, eb) = (end1_point(a, sqrt)?, end1_point(b, sqrt)?);
            Outcome::Value(json!({
                "a": end1_text(&ea),
                "b": end1_text(&eb),
                "a∘b": end1_text(&ea.compose(&eb)),
            }))
        }
        Command::Endo1 { cmd: Endo1Cmd::Check } => Outcome::Report(run_suite("end1-suite", &cfg)?),
        Command::Check { suite } => Outcome::Report(run_suite(suite, &cfg)?),
        Command::Decompose { aut } => {
            let text = std::fs::read_to_string(aut).map_err(|e| Error::Presentation(format!("{}: {e}", aut.display())))?;
            Outcome::Report(decompose(&AutFile::from_json(&text)?, &cfg)?)
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Report(r)) => {
            println!("{}", r.to_json());
            eprintln!("{}", r.summary());
            ExitCode::from(r.exit_code() as u8)
        }
        Ok(Outcome::Value(v)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("output serialises"));
            ExitCode::SUCCESS
        }
        Err(e) => {
            println!("{}", serde_json::to_string_pretty(&json!({"error": e.to_string()})).expect("error serialises"));
            eprintln!("fvw: {e}");
            ExitCode::from(2)
        }
    }
}
