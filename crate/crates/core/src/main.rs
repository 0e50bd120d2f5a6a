//! Command-line front-end: element arithmetic, family validation,
//! endomorphism operations, the bounded classification search, and the
//! verification oracle suite.
//!
//! Exit codes: 0 for a result or passing verdict, 1 for a failing verdict,
//! 2 for usage errors (bad flags or unparsable/invalid inputs).

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use bomega::{
    enumerate_monoid_endos, normalize_bicyclic_word, verify_classification_f3,
    verify_composition_monoid, verify_fixed_point_criterion, verify_non_extension, Element,
    EndoSpec, Nat, OmegaClosedFamily, SearchBounds,
};

#[derive(Parser)]
#[command(
    name = "bomega",
    version,
    about = "Bicyclic monoid extensions over ω-closed families: arithmetic, endomorphisms, classification"
)]
struct Cli {
    /// Emit a canonical JSON envelope {"status", "payload"} instead of text
    #[arg(long, global = true)]
    json: bool,

    /// Also write the JSON envelope to this file
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FamilyArg {
    /// Family of inductive sets as comma-separated lower bounds,
    /// with an optional trailing `,empty` (e.g. `0,1,2` or `0,empty`)
    #[arg(long, default_value = "0,1,2")]
    family: String,
}

#[derive(Subcommand)]
enum Command {
    /// Multiply two elements of the monoid over a family
    Mul {
        #[command(flatten)]
        family: FamilyArg,
        /// Left factor, e.g. `(1,1,0)` or `zero`
        x: String,
        /// Right factor
        y: String,
    },
    /// Invert an element (swap its coordinates)
    Inv {
        #[command(flatten)]
        family: FamilyArg,
        x: String,
    },
    /// Compare two elements in the natural partial order
    Order {
        #[command(flatten)]
        family: FamilyArg,
        x: String,
        y: String,
    },
    /// Validate or normalize families of lower bounds
    Family {
        #[command(subcommand)]
        action: FamilyAction,
    },
    /// Apply, compose, verify, or inspect endomorphism specs
    Endo {
        #[command(subcommand)]
        action: EndoAction,
    },
    /// Bounded search for injective monoid endomorphisms
    Classify {
        #[command(flatten)]
        family: FamilyArg,
        /// Largest coordinate allowed in generator images
        #[arg(long, default_value_t = 4)]
        image_bound: Nat,
        /// Verification window for the homomorphism/injectivity checks
        #[arg(long = "window", default_value_t = 6)]
        window: Nat,
    },
    /// Run the four verification oracles and print a pass/fail table
    Theorems {
        /// Largest coordinate allowed in generator images
        #[arg(long, default_value_t = 4)]
        image_bound: Nat,
        /// Verification window
        #[arg(long = "window", default_value_t = 6)]
        window: Nat,
        /// Largest scale exercised by the composition and fixed-point oracles
        #[arg(long, default_value_t = 6)]
        max_k: Nat,
    },
    /// Reduce a word over p,q to the normal form q^k p^l
    Word {
        /// The word, e.g. `qqpp`
        word: String,
    },
}

#[derive(Subcommand)]
enum FamilyAction {
    /// Check ω-closure; failures report the witness triple
    Check {
        /// Family spec (validated by this command rather than up front)
        family: String,
    },
    /// Shift the bounds so the least becomes 0, reporting the shift
    Normalize {
        #[command(flatten)]
        family: FamilyArg,
    },
}

#[derive(Subcommand)]
enum EndoAction {
    /// Apply a spec to an element
    Apply {
        /// `alpha_bracket:K`, `alpha:K,P`, `beta:K,P`, or a JSON table spec
        #[arg(long)]
        spec: String,
        x: String,
    },
    /// Compose two specs: `first` is applied first, then `second`
    Compose {
        #[arg(long)]
        first: String,
        #[arg(long)]
        second: String,
    },
    /// Run the identity/homomorphism/injectivity window checks
    Verify {
        #[arg(long)]
        spec: String,
        #[arg(long = "window", default_value_t = 6)]
        window: Nat,
    },
    /// List the fixed points of a spec within a window
    Fixed {
        #[arg(long)]
        spec: String,
        #[arg(long = "window", default_value_t = 6)]
        window: Nat,
    },
}

/// Verdict carried by the envelope; decides the exit code.
#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Pass,
    Fail,
    Result,
}

impl Status {
    fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Result => "result",
        }
    }

    fn exit_code(self) -> ExitCode {
        match self {
            Status::Pass | Status::Result => ExitCode::SUCCESS,
            Status::Fail => ExitCode::from(1),
        }
    }
}

/// A command outcome: the machine payload plus the human rendering.
struct Outcome {
    status: Status,
    payload: Value,
    text: String,
}

/// Unparsable or invalid input; rendered on stderr with exit code 2.
struct UsageError(String);

macro_rules! usage_from {
    ($($ty:ty),* $(,)?) => {$(
        impl From<$ty> for UsageError {
            fn from(err: $ty) -> Self {
                UsageError(err.to_string())
            }
        }
    )*};
}

usage_from!(
    bomega::ParseError,
    bomega::AlgebraError,
    bomega::EndoError,
    bomega::ClassifyError,
    bomega::WordError,
    serde_json::Error,
);

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match run(cli.command) {
        Ok(outcome) => outcome,
        Err(UsageError(message)) => {
            eprintln!("error: {message}");
            return ExitCode::from(2);
        }
    };
    let envelope = json!({ "status": outcome.status.as_str(), "payload": outcome.payload });
    if let Some(path) = &cli.out {
        if let Err(err) = std::fs::write(path, format!("{envelope}\n")) {
            eprintln!("error: cannot write {}: {err}", path.display());
            return ExitCode::from(2);
        }
    }
    if cli.json {
        println!("{envelope}");
    } else {
        println!("{}", outcome.text);
    }
    outcome.status.exit_code()
}

fn run(command: Command) -> Result<Outcome, UsageError> {
    match command {
        Command::Mul { family, x, y } => {
            let family: OmegaClosedFamily = family.family.parse()?;
            let x: Element = x.parse()?;
            let y: Element = y.parse()?;
            let product = family.multiply(x, y)?;
            Ok(result(json!(product), product.to_string()))
        }
        Command::Inv { family, x } => {
            let family: OmegaClosedFamily = family.family.parse()?;
            let x: Element = x.parse()?;
            if !family.contains_element(x) {
                return Err(UsageError(format!("element {x} is not in the monoid over {family}")));
            }
            let inverse = x.invert();
            Ok(result(json!(inverse), inverse.to_string()))
        }
        Command::Order { family, x, y } => {
            let family: OmegaClosedFamily = family.family.parse()?;
            let x: Element = x.parse()?;
            let y: Element = y.parse()?;
            let leq = family.natural_leq(x, y)?;
            let geq = family.natural_leq(y, x)?;
            let relation = match (leq, geq) {
                (true, true) => "equal",
                (true, false) => "below",
                (false, true) => "above",
                (false, false) => "incomparable",
            };
            Ok(result(
                json!({ "x": x, "y": y, "leq": leq, "geq": geq, "relation": relation }),
                format!("{x} ≼ {y}: {leq}\n{y} ≼ {x}: {geq}\nrelation: {relation}"),
            ))
        }
        Command::Family { action } => run_family(action),
        Command::Endo { action } => run_endo(action),
        Command::Classify { family, image_bound, window } => {
            let family: OmegaClosedFamily = family.family.parse()?;
            let bounds = SearchBounds::new(image_bound, window)?;
            let report = enumerate_monoid_endos(&family, bounds)?;
            let mut text = format!(
                "family: {family}\nbounds: imageBound={image_bound} windowN={window}\ncandidates: {}\n",
                report.candidates.len()
            );
            for candidate in &report.candidates {
                let name = candidate
                    .matched
                    .map(|named| named.to_string())
                    .unwrap_or_else(|| "(unmatched)".to_string());
                let images: Vec<String> = candidate
                    .spec
                    .img_e()
                    .iter()
                    .map(|(a, image)| format!("e[{a}]={image}"))
                    .collect();
                text.push_str(&format!(
                    "  {name}  plus={} minus={} {}\n",
                    candidate.spec.img_plus(),
                    candidate.spec.img_minus(),
                    images.join(" ")
                ));
            }
            let pruned: Vec<String> = report
                .pruned_counts
                .iter()
                .map(|(rule, count)| format!("{}={count}", rule.code()))
                .collect();
            text.push_str(&format!("pruned: {}\n", pruned.join(" ")));
            text.push_str(&format!("elapsed: {} ms", report.elapsed.as_millis()));
            Ok(result(serde_json::to_value(&report)?, text))
        }
        Command::Theorems { image_bound, window, max_k } => run_theorems(image_bound, window, max_k),
        Command::Word { word } => {
            let normal = normalize_bicyclic_word(&word)?;
            Ok(result(json!({ "q": normal.k, "p": normal.l }), normal.to_string()))
        }
    }
}

fn run_family(action: FamilyAction) -> Result<Outcome, UsageError> {
    match action {
        FamilyAction::Check { family } => {
            let (bounds, contains_empty) = bomega::parse_family_spec(&family)?;
            match OmegaClosedFamily::new(&bounds, contains_empty) {
                Ok(validated) => Ok(Outcome {
                    status: Status::Pass,
                    payload: json!({ "family": validated }),
                    text: format!("ω-closed: {validated}"),
                }),
                Err(err) => {
                    let witness = match err {
                        bomega::FamilyError::NotOmegaClosed { a, b, n, missing } => {
                            json!({ "a": a, "b": b, "n": n, "missing": missing })
                        }
                        bomega::FamilyError::NoSets => Value::Null,
                    };
                    Ok(Outcome {
                        status: Status::Fail,
                        payload: json!({ "message": err.to_string(), "witness": witness }),
                        text: err.to_string(),
                    })
                }
            }
        }
        FamilyAction::Normalize { family } => {
            let family: OmegaClosedFamily = family.family.parse()?;
            let (normalized, shift) = family.normalized();
            Ok(result(
                json!({ "family": normalized, "shift": shift }),
                format!("{normalized} (shift {shift})"),
            ))
        }
    }
}

fn run_endo(action: EndoAction) -> Result<Outcome, UsageError> {
    match action {
        EndoAction::Apply { spec, x } => {
            let spec: EndoSpec = spec.parse()?;
            let x: Element = x.parse()?;
            let image = spec.apply(x)?;
            Ok(result(json!(image), image.to_string()))
        }
        EndoAction::Compose { first, second } => {
            let first: EndoSpec = first.parse()?;
            let second: EndoSpec = second.parse()?;
            let composite = EndoSpec::compose(&first, &second)?;
            Ok(result(json!(composite), composite.to_string()))
        }
        EndoAction::Verify { spec, window } => {
            let spec: EndoSpec = spec.parse()?;
            let preserves_identity = spec.preserves_identity();
            let homomorphism = spec.check_homomorphism_on_window(window);
            let injective = spec.check_injective_on_window(window);
            let pass = preserves_identity && homomorphism.is_none() && injective.is_none();
            let hom_json = homomorphism.map(|w| {
                json!({ "x": w.x, "y": w.y, "productImage": w.product_image, "imageProduct": w.image_product })
            });
            let inj_json = injective
                .map(|w| json!({ "first": w.first, "second": w.second, "image": w.image }));
            let text = format!(
                "spec: {spec}\nwindow: {window}\npreserves identity: {}\nhomomorphism: {}\ninjective: {}\nverdict: {}",
                if preserves_identity { "yes" } else { "no" },
                homomorphism.map(|w| format!("violated ({w})")).unwrap_or_else(|| "ok".into()),
                injective.map(|w| format!("violated ({w})")).unwrap_or_else(|| "ok".into()),
                if pass { "pass" } else { "fail" },
            );
            Ok(Outcome {
                status: if pass { Status::Pass } else { Status::Fail },
                payload: json!({
                    "spec": spec,
                    "window": window,
                    "preservesIdentity": preserves_identity,
                    "homomorphism": hom_json,
                    "injective": inj_json,
                }),
                text,
            })
        }
        EndoAction::Fixed { spec, window } => {
            let spec: EndoSpec = spec.parse()?;
            let fixed = spec.fixed_points_in_window(window);
            let mut text = format!("fixed points in window {window}: {}", fixed.len());
            for x in &fixed {
                text.push_str(&format!("\n  {x}"));
            }
            Ok(result(json!({ "count": fixed.len(), "fixedPoints": fixed }), text))
        }
    }
}

fn run_theorems(image_bound: Nat, window: Nat, max_k: Nat) -> Result<Outcome, UsageError> {
    let bounds = SearchBounds::new(image_bound, window)?;
    let classification = verify_classification_f3(bounds)?;
    let composition = verify_composition_monoid(max_k);
    let non_extension = verify_non_extension(bounds)?;
    let fixed_point = verify_fixed_point_criterion(max_k, window);

    let rows = [
        (
            "classification_f3",
            classification.pass,
            format!("imageBound={image_bound} windowN={window}"),
        ),
        ("composition_monoid", composition, format!("maxK={max_k}")),
        (
            "non_extension",
            non_extension.pass,
            format!("imageBound={image_bound} windowN={window}"),
        ),
        ("fixed_point_criterion", fixed_point, format!("maxK={max_k} windowN={window}")),
    ];
    let pass = rows.iter().all(|(_, ok, _)| *ok);

    let mut text = String::new();
    for (name, ok, params) in &rows {
        text.push_str(&format!(
            "{name:<24} {}  ({params})\n",
            if *ok { "pass" } else { "FAIL" }
        ));
    }
    text.push_str(&format!("{:<24} {}", "overall", if pass { "pass" } else { "FAIL" }));

    let results: Vec<Value> = rows
        .iter()
        .map(|(name, ok, params)| json!({ "name": name, "pass": ok, "params": params }))
        .collect();
    Ok(Outcome {
        status: if pass { Status::Pass } else { Status::Fail },
        payload: json!({ "results": results, "pass": pass }),
        text,
    })
}

fn result(payload: Value, text: String) -> Outcome {
    Outcome { status: Status::Result, payload, text }
}
