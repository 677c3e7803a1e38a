mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use seamtqft::cobordism::{BuildOptions, Cobordism, Meom};
use seamtqft::evaluation::{eval, eval_omega, EvalError, EvalMode};
use seamtqft::frobenius::{classify_quadratic, BaseRing, Frobenius};
use seamtqft::poly::GaussPoly;
use seamtqft::surface::SurfaceError;
use seamtqft::universal::{induced_matrix, standard_spanning, StateSpace, UniversalError};
use seamtqft::verify::{self, VerifyError};

/// Exit status 1: bad input or a failed check. Exit status 2: an internal
/// assertion (polynomiality, parity) tripped.
#[derive(Debug)]
pub enum Failure {
    Input(String),
    Checks(String),
    Internal(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Input(_) | Failure::Checks(_) => 1,
            Failure::Internal(_) => 2,
        }
    }
}

impl From<EvalError> for Failure {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::Internal(_) | EvalError::Coloring(SurfaceError::ParityViolation(_)) => {
                Failure::Internal(e.to_string())
            }
            EvalError::Invalid(ref errs) if errs.iter().any(|x| matches!(x, SurfaceError::ParityViolation(_))) => {
                Failure::Internal(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

impl From<UniversalError> for Failure {
    fn from(e: UniversalError) -> Self {
        match e {
            UniversalError::Eval(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::Eval(inner) => inner.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

#[derive(Parser)]
#[command(name = "seamtqft", version, about = "Evaluations of seamed surfaces and their state spaces")]
struct Cli {
    /// Emit machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a closed surface (facets and seams, or a word from ∅ to ∅).
    Eval {
        file: String,
        /// Print the twisted evaluation.
        #[arg(long)]
        omega: bool,
    },
    /// Print the closed surface of a word from ∅ to ∅ as JSON.
    Close { file: String },
    /// Gram matrix of spanning words bounding a meom.
    Gram {
        meom: String,
        words: String,
        #[arg(long)]
        omega: bool,
    },
    /// Rank and graded rank of the span of words bounding a meom.
    Rank {
        meom: String,
        words: String,
        #[arg(long)]
        omega: bool,
    },
    /// Matrix of a cobordism between two bases; a basis file may be `std`
    /// for the standard cup basis of an unmarked meom.
    Induced {
        cobordism: String,
        source: String,
        target: String,
        #[arg(long)]
        omega: bool,
    },
    /// Check local relations in random closed contexts.
    Verify {
        /// `all` or a relation id.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Build σ pieces with reversed co-orientation.
        #[arg(long)]
        mutate_sigma: bool,
    },
    /// Classify y² − a₁y + a₂ over ℚ (char 0) or 𝔽_p.
    Classify {
        #[arg(long = "char", default_value_t = 0)]
        characteristic: u64,
        #[arg(long, allow_hyphen_values = true)]
        a1: String,
        #[arg(long, allow_hyphen_values = true)]
        a2: String,
    },
    /// Run the identity suite of a Frobenius extension.
    Frob {
        /// R, R_alpha, R_D, R_alphaD (suffix _w adjoins ω), or `all`.
        #[arg(long, default_value = "all")]
        ring: String,
        /// `all` or the name of one identity.
        #[arg(long, default_value = "all")]
        check: String,
    },
}

fn mode(omega: bool) -> EvalMode {
    if omega {
        EvalMode::Omega
    } else {
        EvalMode::Plain
    }
}

fn matrix_text(m: &[Vec<GaussPoly>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| format!("[{}]", r.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(",")))
        .collect();
    format!("[{}]", rows.join(","))
}

fn matrix_json(m: &[Vec<GaussPoly>]) -> Value {
    Value::Array(m.iter().map(|r| Value::Array(r.iter().map(|e| json!(e.to_string())).collect())).collect())
}

fn pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("JSON values serialize")
}

fn basis(file: &str, boundary: &Meom) -> Result<Vec<Cobordism>, Failure> {
    if file == "std" {
        Ok(standard_spanning(boundary)?)
    } else {
        input::read_words(file)
    }
}

fn span(meom: &str, words: &str, omega: bool, with_matrix: bool, json: bool) -> Result<String, Failure> {
    let boundary = input::read_meom(meom)?;
    let spanning = input::read_words(words)?;
    let space = StateSpace::new(&boundary, spanning, mode(omega))?;
    let rank = space.rank();
    let graded = space.graded_rank().to_string();
    let det = (!space.gram.is_empty()).then(|| space.det().to_string());
    if json {
        let mut out = json!({ "rank": rank, "graded_rank": graded });
        if with_matrix {
            out["matrix"] = matrix_json(&space.gram);
            out["det"] = json!(det);
        }
        return Ok(pretty(&out));
    }
    let mut lines = vec![];
    if with_matrix {
        lines.push(matrix_text(&space.gram));
        if let Some(d) = det {
            lines.push(format!("det: {d}"));
        }
    }
    lines.push(format!("rank: {rank}"));
    lines.push(format!("graded rank: {graded}"));
    Ok(lines.join("\n"))
}

fn run(cli: Cli) -> Result<String, Failure> {
    let json = cli.json;
    match cli.command {
        Command::Eval { file, omega } => {
            let surface = input::read_surface(&file)?;
            let plain = eval(&surface)?;
            let twisted = eval_omega(&surface)?;
            if json {
                Ok(pretty(&json!({
                    "value": plain.value.to_string(),
                    "degree": plain.degree,
                    "omega": twisted.value.to_string(),
                })))
            } else if omega {
                Ok(twisted.value.to_string())
            } else {
                Ok(plain.value.to_string())
            }
        }
        Command::Close { file } => {
            let cob = input::read_word(&file)?;
            let surface = cob.close().map_err(|e| Failure::Input(format!("{file}: {e}")))?;
            Ok(serde_json::to_string_pretty(&surface).expect("surfaces serialize"))
        }
        Command::Gram { meom, words, omega } => span(&meom, &words, omega, true, json),
        Command::Rank { meom, words, omega } => span(&meom, &words, omega, false, json),
        Command::Induced { cobordism, source, target, omega } => {
            let w = input::read_word(&cobordism)?;
            let b0 = basis(&source, &w.bottom)?;
            let b1 = basis(&target, &w.top)?;
            let m = induced_matrix(&w, &b0, &b1, mode(omega))?;
            if json {
                let entries: Vec<Vec<String>> =
                    m.entries.iter().map(|r| r.iter().map(|e| e.to_string()).collect()).collect();
                Ok(pretty(&json!({ "matrix": entries, "integral": m.is_integral() })))
            } else {
                Ok(m.to_string())
            }
        }
        Command::Verify { suite, trials, seed, mutate_sigma } => {
            let opts = BuildOptions { mutate_sigma };
            let rels: Vec<verify::Relation> = if suite == "all" {
                verify::registry().to_vec()
            } else {
                vec![verify::relation(&suite)?.clone()]
            };
            let report = verify::suite_of(&rels, seed, trials, opts)?;
            let text = pretty(&report.to_json());
            for r in &report.relations {
                let tag = if r.passed == r.trials { "PASS" } else { "FAIL" };
                eprintln!("{tag} {} {:?} {}/{}", r.id, r.mode, r.passed, r.trials);
            }
            if report.all_passed() {
                Ok(text)
            } else {
                println!("{text}");
                Err(Failure::Checks(format!("{} relation checks failed", report.failed().len())))
            }
        }
        Command::Classify { characteristic, a1, a2 } => {
            let c = classify_quadratic(characteristic, &a1, &a2).map_err(|e| Failure::Input(e.to_string()))?;
            let v = serde_json::to_value(&c).expect("classifications serialize");
            if json {
                Ok(pretty(&v))
            } else {
                let kind = v["kind"].as_str().unwrap_or_default().to_string();
                let mut line = format!("{kind} (discriminant {})", c.discriminant);
                if let Some([r1, r2]) = &c.roots {
                    line.push_str(&format!(", roots {r1}, {r2}"));
                }
                Ok(line)
            }
        }
        Command::Frob { ring, check } => {
            let rings: Vec<BaseRing> = if ring == "all" {
                [false, true]
                    .iter()
                    .flat_map(|&w| BaseRing::ALL.iter().map(move |&t| BaseRing::new(t, w)))
                    .collect()
            } else {
                vec![BaseRing::parse(&ring).map_err(|e| Failure::Input(e.to_string()))?]
            };
            let mut rows = vec![];
            for r in rings {
                let ids = Frobenius::new(r).identities();
                let picked: Vec<(String, bool)> =
                    ids.into_iter().filter(|(name, _)| check == "all" || *name == check).collect();
                if picked.is_empty() {
                    return Err(Failure::Input(format!("no identity named {check:?} for {r}")));
                }
                rows.extend(picked.into_iter().map(|(name, ok)| (r.to_string(), name, ok)));
            }
            let failed = rows.iter().filter(|(_, _, ok)| !ok).count();
            let text = if json {
                pretty(&Value::Array(
                    rows.iter().map(|(r, n, ok)| json!({ "ring": r, "identity": n, "holds": ok })).collect(),
                ))
            } else {
                rows.iter()
                    .map(|(r, n, ok)| format!("{} {r} {n}", if *ok { "ok" } else { "FAIL" }))
                    .collect::<Vec<_>>()
                    .join("\n")
            };
            if failed == 0 {
                Ok(text)
            } else {
                println!("{text}");
                Err(Failure::Checks(format!("{failed} identities failed")))
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(f) => {
            let (Failure::Input(m) | Failure::Checks(m) | Failure::Internal(m)) = &f;
            eprintln!("error: {m}");
            ExitCode::from(f.code())
        }
    }
}
