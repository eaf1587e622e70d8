//! File formats and report serialization (default `f64` precision).
//!
//! Cone files carry any subset of `generators` / `inequalities` /
//! `equalities`. Absent lists mean "no rows of that kind": a file with only
//! an empty generator list is the origin, a file with no constraint rows is
//! all of space. Generators are rays (`x = Σ λ_i g_i, λ >= 0`); inequality
//! rows `a` mean `a·x <= 0`; equality rows mean `a·x = 0`. When both
//! representations are present they are cross-checked at load time.
//!
//! Process files are either a raw graph cone in dimension `2n` (coordinates
//! `(x, y)`, `x` first) or the affine convenience form
//! `{A, input_cone, state_constraint}` meaning `H(x) = Ax + K` for
//! `x` in the state cone.

use serde::{Deserialize, Serialize};

use crate::functions::ConeFunction;
use crate::geometry::{HRep, PolyCone, VRep};
use crate::process::ConvexProcess;
use crate::report::{VerificationReport, VerifyVerdict, Witness};
use crate::Config;

#[derive(Debug, thiserror::Error)]
pub enum IoError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("io: {0}")]
    File(#[from] std::io::Error),
    #[error("invalid {what}: {detail}")]
    Invalid { what: &'static str, detail: String },
}

fn invalid(what: &'static str, detail: impl ToString) -> IoError {
    IoError::Invalid { what, detail: detail.to_string() }
}

/// Cone file schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ConeJson {
    pub dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub inequalities: Option<Vec<Vec<f64>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub equalities: Option<Vec<Vec<f64>>>,
}

impl ConeJson {
    pub fn to_cone(&self, cfg: Config) -> Result<PolyCone<f64>, IoError> {
        let v = self.generators.as_ref().map(|g| VRep { rays: g.clone(), lineality: Vec::new() });
        let h = if self.inequalities.is_some() || self.equalities.is_some() {
            Some(HRep {
                inequalities: self.inequalities.clone().unwrap_or_default(),
                equalities: self.equalities.clone().unwrap_or_default(),
            })
        } else {
            None
        };
        if v.is_none() && h.is_none() {
            return Ok(PolyCone::full_space(self.dim).with_cfg(cfg));
        }
        PolyCone::from_parts(self.dim, v, h, cfg).map_err(|e| invalid("cone", e))
    }

    /// Canonical emission: both representations, lineality as `±` pairs in
    /// the generator list.
    pub fn from_cone(cone: &PolyCone<f64>) -> Result<Self, IoError> {
        let canon = cone.canon().map_err(|e| invalid("cone", e))?;
        let scrub = |rows: &[Vec<f64>]| -> Vec<Vec<f64>> {
            // Map -0.0 to 0.0 for stable, readable output.
            rows.iter()
                .map(|r| r.iter().map(|&v| if v == 0.0 { 0.0 } else { v }).collect())
                .collect()
        };
        let mut generators = scrub(&canon.v.rays);
        for l in &canon.v.lineality {
            generators.push(l.iter().map(|&v| if v == 0.0 { 0.0 } else { v }).collect());
            generators.push(l.iter().map(|&v| if v == 0.0 { 0.0 } else { -v }).collect());
        }
        Ok(ConeJson {
            dim: cone.dim(),
            generators: Some(generators),
            inequalities: Some(scrub(&canon.h.inequalities)),
            equalities: Some(scrub(&canon.h.equalities)),
        })
    }
}

/// Process file schema: raw graph or affine convenience form.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ProcessJson {
    Graph {
        n: usize,
        graph: ConeJson,
    },
    Affine {
        #[serde(rename = "A")]
        a: Vec<Vec<f64>>,
        input_cone: ConeJson,
        #[serde(skip_serializing_if = "Option::is_none")]
        state_constraint: Option<ConeJson>,
    },
}

impl ProcessJson {
    pub fn to_process(&self, cfg: Config) -> Result<ConvexProcess<f64>, IoError> {
        match self {
            ProcessJson::Graph { n, graph } => {
                if graph.dim != 2 * n {
                    return Err(invalid(
                        "process",
                        format!("graph dimension {} is not 2n = {}", graph.dim, 2 * n),
                    ));
                }
                let cone = graph.to_cone(cfg)?;
                ConvexProcess::new(*n, cone).map_err(|e| invalid("process", e))
            }
            ProcessJson::Affine { a, input_cone, state_constraint } => {
                let k = input_cone.to_cone(cfg)?;
                let state = match state_constraint {
                    Some(s) => Some(s.to_cone(cfg)?),
                    None => None,
                };
                ConvexProcess::from_affine_map(a, &k, state.as_ref())
                    .map_err(|e| invalid("process", e))
            }
        }
    }
}

/// Function file schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum FunctionJson {
    QuadOnCone {
        #[serde(rename = "Q")]
        q: Vec<Vec<f64>>,
        cone: ConeJson,
    },
    ScaledDistSq {
        alpha: f64,
        cone: ConeJson,
    },
}

impl FunctionJson {
    pub fn to_function(&self, cfg: Config) -> Result<ConeFunction<f64>, IoError> {
        match self {
            FunctionJson::QuadOnCone { q, cone } => {
                let n = q.len();
                if q.iter().any(|r| r.len() != n) || cone.dim != n {
                    return Err(invalid("function", "Q must be square and match the cone"));
                }
                for i in 0..n {
                    for j in 0..n {
                        if (q[i][j] - q[j][i]).abs() > 1e-12 {
                            return Err(invalid("function", "Q must be symmetric"));
                        }
                    }
                }
                Ok(ConeFunction::QuadOnCone { q: q.clone(), cone: cone.to_cone(cfg)? })
            }
            FunctionJson::ScaledDistSq { alpha, cone } => {
                if *alpha <= 0.0 {
                    return Err(invalid("function", "alpha must be positive"));
                }
                Ok(ConeFunction::scaled_dist_sq(*alpha, cone.to_cone(cfg)?))
            }
        }
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &std::path::Path) -> Result<T, IoError> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Serializable mirror of a verification report.
#[derive(Clone, Debug, Serialize)]
pub struct ReportJson {
    pub name: String,
    pub verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma_margin: Option<f64>,
    pub checked_points: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessJson>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub sub_reports: Vec<ReportJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WitnessJson {
    pub state: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub successor: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ray: Option<Vec<f64>>,
    pub detail: String,
}

pub fn verdict_str(v: &VerifyVerdict) -> &'static str {
    match v {
        VerifyVerdict::HoldsSampled => "holds_sampled",
        VerifyVerdict::Fails => "fails",
        VerifyVerdict::HypothesisNotMet => "hypothesis_not_met",
        VerifyVerdict::Inconclusive => "inconclusive",
    }
}

/// Exit code contract: 0 holds/completed, 1 fails, 2 hypothesis not met,
/// 3 inconclusive.
pub fn verdict_exit_code(v: &VerifyVerdict) -> i32 {
    match v {
        VerifyVerdict::HoldsSampled => 0,
        VerifyVerdict::Fails => 1,
        VerifyVerdict::HypothesisNotMet => 2,
        VerifyVerdict::Inconclusive => 3,
    }
}

impl ReportJson {
    pub fn from_report(r: &VerificationReport<f64>) -> Self {
        ReportJson {
            name: r.name.clone(),
            verdict: verdict_str(&r.verdict).to_string(),
            gamma_margin: r.gamma_margin,
            checked_points: r.checked_points,
            witness: r.witness.as_ref().map(WitnessJson::from_witness),
            notes: r.notes.clone(),
            sub_reports: r.sub_reports.iter().map(ReportJson::from_report).collect(),
        }
    }

    /// Aligned human rendering.
    pub fn render_text(&self, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent);
        out.push_str(&format!("{pad}{:<40} {}\n", self.name, self.verdict));
        if let Some(m) = self.gamma_margin {
            out.push_str(&format!("{pad}  gamma_margin   = {m}\n"));
        }
        if self.checked_points > 0 {
            out.push_str(&format!("{pad}  checked_points = {}\n", self.checked_points));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("{pad}  witness at {:?}: {}\n", w.state, w.detail));
            if let Some(r) = &w.ray {
                out.push_str(&format!("{pad}    escape ray {r:?}\n"));
            }
            if let Some(s) = &w.successor {
                out.push_str(&format!("{pad}    successor  {s:?}\n"));
            }
        }
        for n in &self.notes {
            out.push_str(&format!("{pad}  note: {n}\n"));
        }
        for sub in &self.sub_reports {
            sub.render_text(indent + 1, out);
        }
    }
}

impl WitnessJson {
    fn from_witness(w: &Witness<f64>) -> Self {
        WitnessJson {
            state: w.state.clone(),
            successor: w.successor.clone(),
            ray: w.ray.clone(),
            detail: w.detail.clone(),
        }
    }
}
