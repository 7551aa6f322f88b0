//! Problem files and reports. A problem is one JSON object tagged with its
//! kind; a report carries a verdict, kind-specific witnesses, and timing.
//! Exit codes: 0 pass, 1 fail, 2 invalid input, 3 indeterminate.

use crate::bundle::{build_charts, build_transitions, check_cocycle, check_regularity,
    global_sections, BuildOutcome};
use crate::error::Result;
use crate::filtration::{check_condition_k, KOutcome};
use crate::linalg::format_rational;
use crate::rees::{fiber_at_one, filtered_hom_dim, graded_hom_dim, rees};
use crate::schema::{matrix_strings, multi_filtration, FanDto, FiltrationDto, LieDto};
use crate::spherical::{check_condition_c, is_neutralizable, FilteredRep, LatticeInclusion};
use serde::Deserialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum ProblemFile {
    ConditionK {
        dim: usize,
        filtrations: BTreeMap<String, FiltrationDto>,
        #[serde(default)]
        cone: Option<Vec<String>>,
    },
    ConditionC {
        w_dim: usize,
        lie: LieDto,
        filtrations: BTreeMap<String, FiltrationDto>,
    },
    Rees {
        dim: usize,
        filtration: FiltrationDto,
    },
    Hom {
        source: FiltrationDto,
        target: FiltrationDto,
    },
    Neutralizable {
        generators: Vec<Vec<i64>>,
    },
    Bundle {
        dim: usize,
        fan: FanDto,
        filtrations: BTreeMap<String, FiltrationDto>,
    },
    Sections {
        dim: usize,
        fan: FanDto,
        filtrations: BTreeMap<String, FiltrationDto>,
    },
}

impl ProblemFile {
    pub fn kind(&self) -> &'static str {
        match self {
            ProblemFile::ConditionK { .. } => "condition-k",
            ProblemFile::ConditionC { .. } => "condition-c",
            ProblemFile::Rees { .. } => "rees",
            ProblemFile::Hom { .. } => "hom",
            ProblemFile::Neutralizable { .. } => "neutralizable",
            ProblemFile::Bundle { .. } => "bundle",
            ProblemFile::Sections { .. } => "sections",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Indeterminate,
}

#[derive(Clone, Debug, serde::Serialize)]
pub struct Report {
    pub kind: String,
    pub verdict: Verdict,
    pub witnesses: Value,
    pub timing_ms: u64,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Indeterminate => 3,
        }
    }

    /// Key-aligned text with the same verdict and witnesses as the JSON form.
    pub fn text(&self) -> String {
        format!(
            "kind       {}\nverdict    {}\nwitnesses  {}\ntiming_ms  {}\n",
            self.kind,
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "fail",
                Verdict::Indeterminate => "indeterminate",
            },
            self.witnesses,
            self.timing_ms
        )
    }
}

fn piece_dims_value(piece_dims: &[(Vec<i64>, usize)]) -> Value {
    Value::Array(
        piece_dims
            .iter()
            .map(|(tuple, dim)| json!({"tuple": tuple, "dim": dim}))
            .collect(),
    )
}

pub fn run_problem(p: &ProblemFile) -> Result<Report> {
    let start = Instant::now();
    let kind = p.kind().to_string();
    let (verdict, witnesses) = match p {
        ProblemFile::ConditionK { dim, filtrations, cone } => {
            let mf = multi_filtration(*dim, filtrations)?;
            let cone_rays: Vec<String> = match cone {
                Some(c) => c.clone(),
                None => filtrations.keys().cloned().collect(),
            };
            match check_condition_k(&mf, &cone_rays)? {
                KOutcome::Satisfied(g) => {
                    let pieces: Vec<Value> = g
                        .pieces()
                        .iter()
                        .map(|(tuple, space)| {
                            json!({
                                "tuple": tuple,
                                "dim": space.dim(),
                                "basis": matrix_strings(space.basis()),
                            })
                        })
                        .collect();
                    (Verdict::Pass, json!({ "pieces": pieces }))
                }
                KOutcome::Failed(f) => (
                    Verdict::Fail,
                    json!({
                        "piece_dims": piece_dims_value(&f.piece_dims),
                        "total": f.total,
                        "dim": f.ambient_dim,
                    }),
                ),
                KOutcome::Indeterminate(ind) => (
                    Verdict::Indeterminate,
                    json!({
                        "piece_dims": piece_dims_value(&ind.piece_dims),
                        "detail": ind.detail,
                    }),
                ),
            }
        }
        ProblemFile::ConditionC { w_dim, lie, filtrations } => {
            let lie_data = lie.to_domain(*w_dim)?;
            let mf = multi_filtration(*w_dim, filtrations)?;
            let rep = FilteredRep::new(*w_dim, lie_data, mf)?;
            let (ok, violations) = check_condition_c(&rep)?;
            let vs: Vec<Value> = violations
                .iter()
                .map(|v| {
                    json!({
                        "ray": v.ray,
                        "lie_level": v.lie_level,
                        "level": v.w_level,
                        "witness": v.witness.iter().map(format_rational).collect::<Vec<_>>(),
                    })
                })
                .collect();
            (
                if ok { Verdict::Pass } else { Verdict::Fail },
                json!({ "violations": vs }),
            )
        }
        ProblemFile::Rees { dim, filtration } => {
            let f = filtration.to_domain()?;
            let (module, basis) = rees(*dim, &f)?;
            let back = fiber_at_one(&module, &basis)?;
            let ok = back == f;
            (
                if ok { Verdict::Pass } else { Verdict::Fail },
                json!({
                    "levels": module.levels(),
                    "basis": matrix_strings(&basis),
                    "round_trip": ok,
                }),
            )
        }
        ProblemFile::Hom { source, target } => {
            let f = source.to_domain()?;
            let g = target.to_domain()?;
            let filtered = filtered_hom_dim(&f, &g)?;
            let (mf_mod, _) = rees(f.ambient_dim(), &f)?;
            let (mg_mod, _) = rees(g.ambient_dim(), &g)?;
            let graded = graded_hom_dim(&mf_mod, &mg_mod);
            (
                if filtered == graded { Verdict::Pass } else { Verdict::Fail },
                json!({ "filtered_dim": filtered, "graded_dim": graded }),
            )
        }
        ProblemFile::Neutralizable { generators } => {
            let m = crate::linalg::IntegerMatrix::from_i64_rows(generators)?;
            let inc = LatticeInclusion::new(m)?;
            let (ok, divisors) = is_neutralizable(&inc);
            let ds: Vec<String> = divisors.iter().map(|d| d.to_string()).collect();
            (
                if ok { Verdict::Pass } else { Verdict::Fail },
                json!({ "divisors": ds }),
            )
        }
        ProblemFile::Bundle { dim, fan, filtrations } => {
            let fan = fan.to_domain()?;
            let mf = multi_filtration(*dim, filtrations)?;
            match build_charts(&fan, &mf)? {
                BuildOutcome::Failed { cone, failure } => (
                    Verdict::Fail,
                    json!({
                        "cone": cone.ray_ids,
                        "piece_dims": piece_dims_value(&failure.piece_dims),
                        "total": failure.total,
                        "dim": failure.ambient_dim,
                    }),
                ),
                BuildOutcome::Indeterminate { cone, detail } => (
                    Verdict::Indeterminate,
                    json!({ "cone": cone.ray_ids, "detail": detail }),
                ),
                BuildOutcome::Charts(charts) => {
                    let transitions = build_transitions(&charts)?;
                    let cocycle = check_cocycle(&transitions);
                    let (regular, _) = check_regularity(&fan, &transitions)?;
                    let (h0, _) = global_sections(&fan, &mf)?;
                    let ok = cocycle && regular;
                    (
                        if ok { Verdict::Pass } else { Verdict::Fail },
                        json!({
                            "charts": charts.len(),
                            "transitions": transitions.len(),
                            "cocycle": cocycle,
                            "regular": regular,
                            "h0": h0,
                        }),
                    )
                }
            }
        }
        ProblemFile::Sections { dim, fan, filtrations } => {
            let fan = fan.to_domain()?;
            let mf = multi_filtration(*dim, filtrations)?;
            let (h0, characters) = global_sections(&fan, &mf)?;
            (Verdict::Pass, json!({ "h0": h0, "characters": characters }))
        }
    };
    Ok(Report {
        kind,
        verdict,
        witnesses,
        timing_ms: start.elapsed().as_millis() as u64,
    })
}

/// Parse and run one problem given as JSON text. The error string carries a
/// line/column diagnostic for malformed JSON or the validation failure.
pub fn run_json_str(text: &str) -> std::result::Result<Report, String> {
    let problem: ProblemFile =
        serde_json::from_str(text).map_err(|e| format!("invalid problem: {e}"))?;
    run_problem(&problem).map_err(|e| format!("invalid problem: {e}"))
}

pub fn run_path(path: &Path) -> std::result::Result<Report, String> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
    run_json_str(&text)
}

#[derive(Clone, Debug)]
pub struct SuiteEntry {
    pub file: PathBuf,
    pub outcome: std::result::Result<Report, String>,
}

impl SuiteEntry {
    pub fn exit_code(&self) -> i32 {
        match &self.outcome {
            Ok(r) => r.exit_code(),
            Err(_) => 2,
        }
    }
}

/// Run every `*.json` file in the directory, in file-name order. The
/// aggregate exit code is the maximum of the per-file codes; an empty
/// directory passes with zero cases.
pub fn run_suite(dir: &Path, parallel: bool) -> std::result::Result<(Vec<SuiteEntry>, i32), String> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| format!("cannot read directory {}: {e}", dir.display()))?
        .filter_map(|entry| entry.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    let entries: Vec<SuiteEntry> = if parallel {
        use rayon::prelude::*;
        paths
            .par_iter()
            .map(|p| SuiteEntry { file: p.clone(), outcome: run_path(p) })
            .collect()
    } else {
        paths
            .iter()
            .map(|p| SuiteEntry { file: p.clone(), outcome: run_path(p) })
            .collect()
    };
    let code = entries.iter().map(|e| e.exit_code()).max().unwrap_or(0);
    Ok((entries, code))
}
