//! Compact text formats: parsing for elements, families, and endomorphism
//! specs, plus the matching display forms.
//!
//! - elements: `(i,j,a)` or `zero`
//! - families: comma-separated lower bounds with an optional trailing
//!   `empty` marker, e.g. `0,1,2` or `0,1,empty`
//! - endomorphism specs: `alpha_bracket:K`, `alpha:K,P`, `beta:K,P`, or an
//!   inline JSON object (anything starting with `{`)

use std::str::FromStr;

use crate::algebra::{Element, Nat};
use crate::endo::EndoSpec;
use crate::family::OmegaClosedFamily;

/// Failure to parse one of the text formats. The message carries the
/// offending input and a reason.
#[derive(Clone, PartialEq, Eq, Debug, thiserror::Error)]
pub enum ParseError {
    #[error("invalid element {input:?}: {reason}")]
    Element { input: String, reason: String },
    #[error("invalid family {input:?}: {reason}")]
    Family { input: String, reason: String },
    #[error("invalid endomorphism spec {input:?}: {reason}")]
    Endo { input: String, reason: String },
}

impl FromStr for Element {
    type Err = ParseError;

    /// Accepts `zero` or `(i,j,a)` with optional whitespace around every
    /// token; `a` is the lower bound of the inductive set `[a)`.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let fail = |reason: &str| ParseError::Element {
            input: s.to_string(),
            reason: reason.to_string(),
        };
        let trimmed = s.trim();
        if trimmed == "zero" {
            return Ok(Element::Zero);
        }
        let inner = trimmed
            .strip_prefix('(')
            .and_then(|rest| rest.strip_suffix(')'))
            .ok_or_else(|| fail("expected `zero` or `(i,j,a)`"))?;
        let parts: Vec<&str> = inner.split(',').collect();
        if parts.len() != 3 {
            return Err(fail("expected three comma-separated numbers"));
        }
        let mut nums = [0 as Nat; 3];
        for (slot, part) in nums.iter_mut().zip(&parts) {
            *slot = part.trim().parse::<Nat>().map_err(|e| {
                fail(&format!("bad number {:?}: {e}", part.trim()))
            })?;
        }
        Ok(Element::triple(nums[0], nums[1], nums[2]))
    }
}

/// Split a family spec into its lower bounds and the empty-set marker
/// without validating ω-closure, so callers can run the validator themselves
/// and report its witness.
pub fn parse_family_spec(input: &str) -> Result<(Vec<Nat>, bool), ParseError> {
    let fail = |reason: String| ParseError::Family { input: input.to_string(), reason };
    let mut tokens: Vec<&str> = input.split(',').map(str::trim).collect();
    let contains_empty = tokens.last() == Some(&"empty");
    if contains_empty {
        tokens.pop();
    }
    if tokens.is_empty() || tokens == [""] {
        return Err(fail("expected at least one lower bound".to_string()));
    }
    let mut bounds = Vec::with_capacity(tokens.len());
    for token in tokens {
        bounds.push(
            token
                .parse::<Nat>()
                .map_err(|e| fail(format!("bad lower bound {token:?}: {e}")))?,
        );
    }
    Ok((bounds, contains_empty))
}

impl FromStr for OmegaClosedFamily {
    type Err = ParseError;

    /// Parses the display form and validates ω-closure.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let (bounds, contains_empty) = parse_family_spec(s)?;
        OmegaClosedFamily::new(&bounds, contains_empty).map_err(|e| ParseError::Family {
            input: s.to_string(),
            reason: e.to_string(),
        })
    }
}

impl FromStr for EndoSpec {
    type Err = ParseError;

    /// Accepts the compact named forms (`alpha_bracket:K`, `alpha:K,P`,
    /// `beta:K,P`) or a JSON endomorphism-spec object.
    fn from_str(s: &str) -> Result<Self, ParseError> {
        let fail = |reason: String| ParseError::Endo { input: s.to_string(), reason };
        let trimmed = s.trim();
        if trimmed.starts_with('{') {
            return serde_json::from_str(trimmed).map_err(|e| fail(e.to_string()));
        }
        let (name, args) = trimmed
            .split_once(':')
            .ok_or_else(|| fail("expected `name:args` or a JSON object".to_string()))?;
        let parse_nat = |token: &str| {
            token
                .trim()
                .parse::<Nat>()
                .map_err(|e| fail(format!("bad number {:?}: {e}", token.trim())))
        };
        let spec = match name.trim() {
            "alpha_bracket" => {
                EndoSpec::alpha_bracket(parse_nat(args)?).map_err(|e| fail(e.to_string()))?
            }
            "alpha" | "beta" => {
                let (k, p) = args
                    .split_once(',')
                    .ok_or_else(|| fail("expected two comma-separated numbers".to_string()))?;
                let (k, p) = (parse_nat(k)?, parse_nat(p)?);
                let built = if name.trim() == "alpha" {
                    EndoSpec::alpha(k, p)
                } else {
                    EndoSpec::beta(k, p)
                };
                built.map_err(|e| fail(e.to_string()))?
            }
            other => {
                return Err(fail(format!(
                    "unknown endomorphism {other:?}; use alpha_bracket, alpha, or beta"
                )))
            }
        };
        Ok(spec)
    }
}

impl std::fmt::Display for EndoSpec {
    /// Named specs print in their compact form; tables print as a
    /// single-line JSON object.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EndoSpec::AlphaBracket { k } => write!(f, "alpha_bracket:{k}"),
            EndoSpec::Alpha { k, p } => write!(f, "alpha:{k},{p}"),
            EndoSpec::Beta { k, p } => write!(f, "beta:{k},{p}"),
            EndoSpec::Table(_) => {
                let json = serde_json::to_string(self).map_err(|_| std::fmt::Error)?;
                f.write_str(&json)
            }
        }
    }
}
