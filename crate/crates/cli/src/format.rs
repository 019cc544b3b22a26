//! Query output: line-oriented key/value text by default, a stable JSON
//! schema behind `--format json`. Every numeric value is rounded to nine
//! significant digits first so identical inputs produce byte-identical
//! output.

use serde::Serialize;

/// Round to nine significant digits.
pub fn sig9(value: f64) -> f64 {
    if !value.is_finite() {
        return value;
    }
    format!("{value:.8e}").parse().expect("formatted float parses")
}

/// Render a value for the text format. Infinity prints as `inf`.
pub fn fmt_value(value: f64) -> String {
    if value == f64::INFINITY {
        "inf".to_string()
    } else if value == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        format!("{value:.9}")
    }
}

/// The headline value of a query: a finite number or infinity. JSON
/// renders infinity as the string `"inf"` because JSON numbers cannot
/// carry it.
#[derive(Serialize)]
#[serde(untagged)]
pub enum ReportValue {
    Number(f64),
    Infinity(&'static str),
}

impl From<f64> for ReportValue {
    fn from(value: f64) -> Self {
        if value.is_infinite() {
            ReportValue::Infinity(if value > 0.0 { "inf" } else { "-inf" })
        } else {
            ReportValue::Number(sig9(value))
        }
    }
}

#[derive(Serialize)]
pub struct SenseLine {
    pub sense: usize,
    pub sense_probability: f64,
    pub probability: f64,
}

#[derive(Serialize)]
pub struct CorrelationDetails {
    pub total: f64,
    pub quantum: Option<f64>,
    pub classical: Option<f64>,
    pub converged: Option<bool>,
    pub solver_iterations: Option<usize>,
}

#[derive(Serialize)]
pub struct TopkLine {
    pub rank: usize,
    pub word: String,
    pub value: f64,
}

/// One query result. Serializes to JSON in declared field order.
#[derive(Serialize)]
pub struct QueryReport {
    pub measure: &'static str,
    pub args: Vec<String>,
    pub lexicon_hash: String,
    pub seed: u64,
    pub value: ReportValue,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub senses: Option<Vec<SenseLine>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub correlation: Option<CorrelationDetails>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub topk: Option<Vec<TopkLine>>,
}

impl QueryReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("measure {}\n", self.measure));
        out.push_str(&format!("args {}\n", self.args.join(" ")));
        out.push_str(&format!("lexicon_hash {}\n", self.lexicon_hash));
        out.push_str(&format!("seed {}\n", self.seed));
        let value = match self.value {
            ReportValue::Number(v) => fmt_value(v),
            ReportValue::Infinity(s) => s.to_string(),
        };
        out.push_str(&format!("value {value}\n"));

        if let Some(senses) = &self.senses {
            for s in senses {
                out.push_str(&format!(
                    "sense {} sense_probability {} probability {}\n",
                    s.sense,
                    fmt_value(s.sense_probability),
                    fmt_value(s.probability)
                ));
            }
        }
        if let Some(c) = &self.correlation {
            out.push_str(&format!("total {}\n", fmt_value(c.total)));
            match (c.quantum, c.classical) {
                (Some(quantum), Some(classical)) => {
                    out.push_str(&format!("quantum {}\n", fmt_value(quantum)));
                    out.push_str(&format!("classical {}\n", fmt_value(classical)));
                }
                _ => out.push_str("quantum omitted (subsystem dims exceed the solver cap)\n"),
            }
            if let Some(converged) = c.converged {
                out.push_str(&format!("converged {converged}\n"));
            }
            if let Some(iterations) = c.solver_iterations {
                out.push_str(&format!("solver_iterations {iterations}\n"));
            }
        }
        if let Some(topk) = &self.topk {
            for line in topk {
                out.push_str(&format!(
                    "rank {} word {} value {}\n",
                    line.rank,
                    line.word,
                    fmt_value(line.value)
                ));
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}
