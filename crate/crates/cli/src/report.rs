//! Human and JSON rendering of decomposition, scoring and factoring results.

use serde::Serialize;

use msdecomp_core::{
    DecompositionResult, IrreducibleReason, PlacementOutcome, SparsePolynomial,
    is_provably_irreducible,
};

/// JSON mirror of [`DecompositionResult`]; multisets appear in the flat text
/// format. The schema is documented in the repository README.
#[derive(Debug, Serialize)]
#[serde(tag = "outcome", rename_all = "snake_case")]
pub enum OutcomeJson {
    Found {
        factor: String,
        cofactor: String,
        divisor: u64,
        iterations: u64,
        verified: bool,
    },
    Irreducible {
        reason: &'static str,
    },
    ProbablyIrreducible {
        attempts: Vec<AttemptJson>,
    },
    TrivialShift {
        offset: u64,
        splits_into_unit_shifts: bool,
        core: Box<OutcomeJson>,
    },
}

#[derive(Debug, Serialize)]
pub struct AttemptJson {
    pub divisor: u64,
    pub iterations: u64,
}

#[derive(Debug, Serialize)]
pub struct DecomposeJson {
    pub input: String,
    pub cardinality: u64,
    pub mode: &'static str,
    pub elapsed_s: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_iterations: Option<u64>,
    pub result: OutcomeJson,
}

fn reason_name(reason: IrreducibleReason) -> &'static str {
    match reason {
        IrreducibleReason::Identity => "identity",
        IrreducibleReason::PrimeCardinality => "prime_cardinality",
        IrreducibleReason::ExhaustedEnumeration => "exhausted_enumeration",
    }
}

pub fn outcome_to_json(result: &DecompositionResult) -> OutcomeJson {
    match result {
        DecompositionResult::Found {
            factor,
            cofactor,
            divisor,
            iterations,
        } => OutcomeJson::Found {
            factor: factor.to_string(),
            cofactor: cofactor.to_string(),
            divisor: *divisor,
            iterations: *iterations,
            verified: true,
        },
        DecompositionResult::Irreducible { reason } => OutcomeJson::Irreducible {
            reason: reason_name(*reason),
        },
        DecompositionResult::ProbablyIrreducible { attempts } => OutcomeJson::ProbablyIrreducible {
            attempts: attempts
                .iter()
                .map(|a| AttemptJson {
                    divisor: a.divisor,
                    iterations: a.iterations,
                })
                .collect(),
        },
        DecompositionResult::TrivialShift { offset, core } => OutcomeJson::TrivialShift {
            offset: *offset,
            splits_into_unit_shifts: *offset >= 2,
            core: Box::new(outcome_to_json(core)),
        },
    }
}

fn push_indented(out: &mut String, indent: usize, line: &str) {
    out.push_str(&"  ".repeat(indent));
    out.push_str(line);
    out.push('\n');
}

pub fn render_outcome(result: &DecompositionResult, indent: usize, out: &mut String) {
    match result {
        DecompositionResult::Found {
            factor,
            cofactor,
            divisor,
            iterations,
        } => {
            push_indented(
                out,
                indent,
                &format!(
                    "reducible: found a factor pair (cardinality {divisor}, {iterations} iteration{})",
                    if *iterations == 1 { "" } else { "s" }
                ),
            );
            push_indented(out, indent, &format!("A = {factor}"));
            push_indented(out, indent, &format!("B = {cofactor}"));
            push_indented(out, indent, "verified: A + B reproduces the input");
        }
        DecompositionResult::Irreducible { reason } => {
            let text = match reason {
                IrreducibleReason::Identity => "irreducible: the identity {0} has no factor pair",
                IrreducibleReason::PrimeCardinality => {
                    "irreducible: prime cardinality admits no factor pair"
                }
                IrreducibleReason::ExhaustedEnumeration => {
                    "irreducible: exhaustive enumeration found no factor pair"
                }
            };
            push_indented(out, indent, text);
        }
        DecompositionResult::ProbablyIrreducible { attempts } => {
            let divisors: Vec<String> = attempts.iter().map(|a| a.divisor.to_string()).collect();
            let budget = attempts.first().map(|a| a.iterations).unwrap_or(0);
            push_indented(
                out,
                indent,
                &format!(
                    "probably irreducible: no factor found within {budget} iterations for cardinalities [{}]",
                    divisors.join(", ")
                ),
            );
        }
        DecompositionResult::TrivialShift { offset, core } => {
            push_indented(
                out,
                indent,
                &format!("input does not contain 0: input = {{{offset}}} + core"),
            );
            if *offset >= 2 {
                push_indented(
                    out,
                    indent,
                    &format!(
                        "note: the offset {{{offset}}} further splits into {offset} unit shifts"
                    ),
                );
            }
            push_indented(out, indent, "core result:");
            render_outcome(core, indent + 1, out);
        }
    }
}

#[derive(Debug, Serialize)]
pub struct ScoreJson {
    pub target: String,
    pub candidate: String,
    pub score: u64,
    pub max_score: u64,
    pub multipliers: Vec<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<String>,
}

pub fn render_score(
    target_cardinality: u64,
    candidate: &str,
    outcome: &PlacementOutcome,
) -> String {
    let mut out = String::new();
    out.push_str(&format!("candidate: {candidate}\n"));
    out.push_str(&format!(
        "score: {} / {}\n",
        outcome.score, target_cardinality
    ));
    let multipliers: Vec<String> = outcome.multipliers.iter().map(|m| m.to_string()).collect();
    out.push_str(&format!("multipliers: {}\n", multipliers.join(",")));
    match &outcome.quotient {
        Some(q) => out.push_str(&format!("quotient: {q}\n")),
        None => out.push_str("quotient: none (candidate is not a factor)\n"),
    }
    out
}

#[derive(Debug, Serialize)]
pub struct FactorPartJson {
    pub polynomial: String,
    pub provably_irreducible: bool,
}

#[derive(Debug, Serialize)]
pub struct FactorJson {
    pub input: String,
    pub complete: bool,
    pub factored: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
    pub factors: Vec<FactorPartJson>,
}

pub fn factor_parts(parts: &[SparsePolynomial]) -> Vec<FactorPartJson> {
    parts
        .iter()
        .map(|p| FactorPartJson {
            polynomial: p.to_string(),
            provably_irreducible: is_provably_irreducible(p),
        })
        .collect()
}

/// `(1 + x)(1 + x^2 + x^4)` style product line.
pub fn render_product(parts: &[SparsePolynomial]) -> String {
    parts
        .iter()
        .map(|p| format!("({p})"))
        .collect::<Vec<_>>()
        .join("")
}
