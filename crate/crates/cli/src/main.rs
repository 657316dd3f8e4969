use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use toric_cobordism::chern::{chern_numbers, generalized_todd_genus, todd_genus};
use toric_cobordism::classifier::classify;
use toric_cobordism::constructions::{Family, FamilySpec};
use toric_cobordism::face_vectors::{
    fan_g_vector, fan_h_vector, g_to_f, g_to_h, g_violation, obstruction_system,
};
use toric_cobordism::fan::DEFAULT_FM_BUDGET;
use toric_cobordism::intersection::{Localizer, RayMonomial, RingReducer, DEFAULT_ORACLE_BUDGET};
use toric_cobordism::ktheory::{derive_divisibility_lattice, hattori_stong_check, HattoriStong};
use toric_cobordism::linalg::Rat;
use toric_cobordism::{golden, ChernVector, Cone, Error, Fan, PolytopeH};

const EXIT_VALIDATION: u8 = 2;
const EXIT_USAGE: u8 = 64;

/// Invariants and cobordism classification of smooth projective toric varieties.
#[derive(Parser, Debug)]
#[command(name = "tcw", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Debug)]
struct FanInput {
    /// read the fan JSON from this file instead of stdin
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the fan of a family member: cpn N | kleinschmidt N A1.. | sigma_a A | delta_ab A B | polytope
    Gen {
        family: String,
        #[arg(allow_negative_numbers = true)]
        params: Vec<i64>,
        /// polytope JSON file for `gen polytope` (default: stdin)
        #[arg(long)]
        file: Option<PathBuf>,
    },
    /// Validate a fan and report regularity, completeness and projectivity
    Check(FanInput),
    /// Chern numbers of a fan
    Chern {
        #[command(flatten)]
        input: FanInput,
        #[arg(long)]
        dim: Option<usize>,
        /// also print the Todd genus and the χ_y coefficients
        #[arg(long)]
        genus: bool,
    },
    /// f-, h- and g-vectors of a fan
    Gvector(FanInput),
    /// Evaluate a monomial in the ray divisors, e.g. --rays 0,0,3
    EvalMonomial {
        #[command(flatten)]
        input: FanInput,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        rays: Vec<usize>,
        /// evaluate by rewriting in the cohomology ring instead of localization
        #[arg(long)]
        ring: bool,
    },
    /// Star-subdivide a cone (default: the lexicographically first maximal cone)
    Blowup {
        #[command(flatten)]
        input: FanInput,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        cone: Option<Vec<usize>>,
    },
    /// Test a g-vector against the g-theorem
    Gcheck {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        g: Vec<i64>,
    },
    /// Chern-number relations of toric varieties, optionally for a given g-vector
    Obstructions {
        #[arg(long)]
        dim: usize,
        #[arg(long, value_delimiter = ',', num_args = 1..)]
        g: Option<Vec<i64>>,
    },
    /// Integrality of the K-theory characteristic numbers
    HattoriStong {
        #[arg(long)]
        dim: usize,
        /// Chern numbers JSON (default: stdin)
        #[arg(long)]
        chern: Option<String>,
    },
    /// Congruences cutting out the Chern vectors of stably complex manifolds
    Divisibility {
        #[arg(long)]
        dim: usize,
    },
    /// Decide whether a cobordism class contains a smooth projective toric variety
    Classify {
        #[arg(long)]
        dim: usize,
        /// Chern numbers JSON (default: stdin)
        #[arg(long)]
        chern: Option<String>,
    },
    /// Run the built-in reference checks
    Selftest,
}

enum Failure {
    Validation(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Validation(e)
    }
}

type Outcome = Result<(Value, bool), Failure>;

fn read_text(file: &Option<PathBuf>) -> Result<String, Failure> {
    let mut s = String::new();
    match file {
        Some(p) => {
            s = std::fs::read_to_string(p)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", p.display())))?
        }
        None => {
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| Failure::Usage(format!("cannot read stdin: {e}")))?;
        }
    }
    Ok(s)
}

fn read_fan(input: &FanInput) -> Result<Fan, Failure> {
    Ok(Fan::from_json_str(&read_text(&input.file)?)?)
}

fn read_chern(arg: &Option<String>, dim: usize) -> Result<ChernVector, Failure> {
    let text = match arg {
        Some(s) => s.clone(),
        None => read_text(&None)?,
    };
    let v: Value =
        serde_json::from_str(&text).map_err(|e| Error::InvalidInput(format!("Chern JSON: {e}")))?;
    Ok(ChernVector::from_json(&v, Some(dim))?)
}

fn budget(default: usize) -> Result<usize, Failure> {
    match std::env::var("TCW_BUDGET") {
        Ok(s) => s.trim().parse().map_err(|_| {
            Failure::Usage(format!(
                "TCW_BUDGET must be a nonnegative integer, got {s:?}"
            ))
        }),
        Err(_) => Ok(default),
    }
}

fn rat_json(r: &Rat) -> Value {
    if r.is_integer() {
        match i64::try_from(r.to_integer()) {
            Ok(x) => json!(x),
            Err(_) => json!(r.to_integer().to_string()),
        }
    } else {
        json!(r.to_string())
    }
}

fn fan_json(fan: &Fan) -> Value {
    serde_json::to_value(fan.to_json()).expect("fan serializes")
}

fn run(cmd: Command) -> Outcome {
    let ok = |v: Value| Ok((v, true));
    match cmd {
        Command::Gen {
            family,
            params,
            file,
        } => {
            if family == "polytope" {
                let p = PolytopeH::from_json_str(&read_text(&file)?)?;
                return ok(fan_json(&p.normal_fan()?));
            }
            let spec = FamilySpec::new(Family::parse(&family, &params)?);
            ok(fan_json(&spec.build()?))
        }
        Command::Check(input) => {
            let fan = read_fan(&input)?;
            let b = budget(DEFAULT_FM_BUDGET)?;
            ok(json!({
                "valid": true,
                "dim": fan.dim(),
                "rays": fan.num_rays(),
                "max_cones": fan.max_cones().len(),
                "regular": fan.is_regular(),
                "complete": fan.is_complete()?,
                "projective": fan.is_projective_with_budget(b)?,
            }))
        }
        Command::Chern { input, dim, genus } => {
            let fan = read_fan(&input)?;
            if let Some(d) = dim {
                if d != fan.dim() {
                    return Err(Error::InvalidInput(format!(
                        "--dim {d} but the fan has dimension {}",
                        fan.dim()
                    ))
                    .into());
                }
            }
            let cv = chern_numbers(&fan)?;
            if !genus {
                return ok(cv.to_json());
            }
            let chi: Vec<Value> = generalized_todd_genus(&cv).iter().map(rat_json).collect();
            ok(json!({ "chern": cv.to_json(), "todd": rat_json(&todd_genus(&cv)), "chi_y": chi }))
        }
        Command::Gvector(input) => {
            let fan = read_fan(&input)?;
            ok(
                json!({ "f": fan.face_count_vector(), "h": fan_h_vector(&fan), "g": fan_g_vector(&fan) }),
            )
        }
        Command::EvalMonomial { input, rays, ring } => {
            let fan = read_fan(&input)?;
            if let Some(&bad) = rays.iter().find(|&&r| r >= fan.num_rays()) {
                return Err(Error::InvalidInput(format!("ray index {bad} out of range")).into());
            }
            let m = RayMonomial::from_rays(&rays);
            let value = if ring {
                RingReducer::new(&fan, budget(DEFAULT_ORACLE_BUDGET)?)?.evaluate(&m)?
            } else {
                Localizer::new(&fan)?.evaluate(&m)?
            };
            ok(
                json!({ "value": value.to_string().parse::<i64>().map(Value::from).unwrap_or(json!(value.to_string())) }),
            )
        }
        Command::Blowup { input, cone } => {
            let fan = read_fan(&input)?;
            let cone = match cone {
                Some(c) => Cone::new(c),
                None => fan.max_cones()[0].clone(),
            };
            ok(fan_json(&fan.star_subdivide(&cone)?))
        }
        Command::Gcheck { dim, g } => {
            let violation = g_violation(&g, dim);
            let mut v = json!({ "valid": violation.is_none() });
            match violation {
                Some(why) => v["violation"] = json!(why),
                None => {
                    v["h"] = json!(g_to_h(&g, dim)?);
                    v["f"] = json!(g_to_f(&g, dim)?);
                }
            }
            ok(v)
        }
        Command::Obstructions { dim, g } => {
            let system = obstruction_system(dim);
            let relations: Vec<String> = match &g {
                None => system.iter().map(|r| r.to_string()).collect(),
                Some(g) => {
                    if g.len() != dim / 2 + 1 {
                        return Err(Error::InvalidInput(format!(
                            "g-vector needs {} entries",
                            dim / 2 + 1
                        ))
                        .into());
                    }
                    system.iter().map(|r| r.specialize(g).to_string()).collect()
                }
            };
            ok(json!({ "dim": dim, "relations": relations }))
        }
        Command::HattoriStong { dim, chern } => {
            let cv = read_chern(&chern, dim)?;
            match hattori_stong_check(&cv) {
                HattoriStong::Pass => ok(json!({ "passed": true })),
                HattoriStong::Fail(bad) => {
                    let failures: Vec<Value> = bad
                        .iter()
                        .map(|(omega, x)| json!({ "omega": omega.parts(), "value": rat_json(x) }))
                        .collect();
                    ok(json!({ "passed": false, "failures": failures }))
                }
            }
        }
        Command::Divisibility { dim } => {
            let lattice = derive_divisibility_lattice(dim)?;
            let congruences: Vec<String> =
                lattice.congruences.iter().map(|c| c.to_string()).collect();
            ok(
                json!({ "dim": dim, "index": lattice.index().to_string(), "congruences": congruences }),
            )
        }
        Command::Classify { dim, chern } => {
            let cv = read_chern(&chern, dim)?;
            ok(classify(&cv)?.to_json())
        }
        Command::Selftest => {
            let cases = golden::run_all();
            let passed = cases.iter().filter(|c| c.passed).count();
            let failed = cases.len() - passed;
            let report: Vec<Value> = cases
                .iter()
                .map(|c| {
                    let mut v = json!({ "name": c.name, "passed": c.passed });
                    if !c.passed {
                        v["detail"] = json!(c.detail);
                    }
                    v
                })
                .collect();
            Ok((
                json!({ "passed": passed, "failed": failed, "cases": report }),
                failed == 0,
            ))
        }
    }
}

fn main() -> ExitCode {
    env_logger::init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    log::debug!("{:?}", cli.command);
    match run(cli.command) {
        Ok((v, success)) => {
            println!("{v}");
            if success {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            }
        }
        Err(Failure::Validation(e)) => {
            println!("{}", json!({ "code": e.code(), "message": e.to_string() }));
            ExitCode::from(EXIT_VALIDATION)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("tcw: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
