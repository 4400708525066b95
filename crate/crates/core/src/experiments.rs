//! Whole-space ECA classification and the conjecture reports built on it.

use std::fmt::{self, Write as _};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::busy_beaver::{default_cutoff, search};
use crate::coefficient::{
    normalize_schedule, transition_series, CoefficientError, EcaSystem, DEFAULT_N, DEFAULT_SCHEDULE,
};
use crate::compressor::COMPRESSOR_VERSION;
use crate::eca::EcaRule;
use crate::turing::{TmSystem, TuringMachine};

pub const BLANK_RUN_LIMIT: u64 = 1_000_000;

pub const CLUSTERS: usize = 4;

/// Universal rule 110 and its three mirror/complement equivalents.
pub const UNIVERSAL_CLASS: [u8; 4] = [110, 124, 137, 193];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoefficientParams {
    pub n: usize,
    pub schedule: Vec<u64>,
}

impl Default for CoefficientParams {
    fn default() -> Self {
        CoefficientParams {
            n: DEFAULT_N,
            schedule: DEFAULT_SCHEDULE.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Parameters {
    pub n: usize,
    pub schedule: Vec<u64>,
    pub compressor: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Entry {
    pub rule: u8,
    pub coefficient: f64,
    /// 1-based position in the descending ranking.
    pub rank: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub parameters: Parameters,
    /// Sorted by coefficient, largest first; ties by rule number.
    pub entries: Vec<Entry>,
    /// Rule numbers in ranking order, split into [`CLUSTERS`] groups.
    pub partition: Vec<Vec<u8>>,
    /// Fewer than three positive gaps were available to cut at.
    pub degenerate: bool,
}

/// Transition coefficient of every rule, then the ranking and partition.
pub fn classify_all(n: usize, schedule: &[u64]) -> Result<ClassificationReport, CoefficientError> {
    let schedule = normalize_schedule(schedule)?;
    let rules: Vec<EcaRule> = EcaRule::all().collect();
    let values = rules
        .par_iter()
        .map(|&rule| {
            let c = transition_series(&EcaSystem(rule), n, &schedule)?.coefficient()?;
            Ok((rule.number(), c.value()))
        })
        .collect::<Result<Vec<_>, CoefficientError>>()?;
    Ok(ClassificationReport::from_values(
        values,
        Parameters {
            n,
            schedule,
            compressor: COMPRESSOR_VERSION.to_string(),
        },
    ))
}

/// Indices `i` such that the ranking is cut between positions `i` and `i + 1`:
/// the `cuts` largest strictly positive gaps, earlier gaps winning ties.
pub fn largest_gap_cuts(descending: &[f64], cuts: usize) -> Vec<usize> {
    let mut gaps: Vec<(usize, f64)> = descending
        .windows(2)
        .enumerate()
        .map(|(i, w)| (i, w[0] - w[1]))
        .filter(|&(_, g)| g > 0.0)
        .collect();
    gaps.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    let mut chosen: Vec<usize> = gaps.into_iter().take(cuts).map(|(i, _)| i).collect();
    chosen.sort_unstable();
    chosen
}

impl ClassificationReport {
    pub fn from_values(mut values: Vec<(u8, f64)>, parameters: Parameters) -> Self {
        values.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let entries: Vec<Entry> = values
            .iter()
            .enumerate()
            .map(|(i, &(rule, coefficient))| Entry {
                rule,
                coefficient,
                rank: i + 1,
            })
            .collect();
        let sorted: Vec<f64> = values.iter().map(|v| v.1).collect();
        let cuts = largest_gap_cuts(&sorted, CLUSTERS - 1);
        let mut partition = vec![Vec::new(); CLUSTERS];
        let mut cluster = 0;
        for (i, e) in entries.iter().enumerate() {
            partition[cluster].push(e.rule);
            if cuts.contains(&i) {
                cluster += 1;
            }
        }
        ClassificationReport {
            parameters,
            degenerate: cuts.len() < CLUSTERS - 1,
            entries,
            partition,
        }
    }

    pub fn entry(&self, rule: u8) -> Option<&Entry> {
        self.entries.iter().find(|e| e.rule == rule)
    }

    pub fn coefficient(&self, rule: u8) -> Option<f64> {
        self.entry(rule).map(|e| e.coefficient)
    }

    pub fn rank(&self, rule: u8) -> Option<usize> {
        self.entry(rule).map(|e| e.rank)
    }

    /// Index of the cluster holding `rule`.
    pub fn cluster_of(&self, rule: u8) -> Option<usize> {
        self.partition.iter().position(|c| c.contains(&rule))
    }

    pub fn rank_distance(&self, a: u8, b: u8) -> Option<usize> {
        Some(self.rank(a)?.abs_diff(self.rank(b)?))
    }

    /// `rank,rule,coefficient` with one row per rule.
    pub fn ranking_csv(&self) -> String {
        let mut out = String::from("rank,rule,coefficient\n");
        for e in &self.entries {
            writeln!(out, "{},{},{:e}", e.rank, e.rule, e.coefficient).unwrap();
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Claim {
    pub name: String,
    pub holds: bool,
    pub detail: String,
}

/// The ordinal statements about the ranking that the measure is meant to
/// reproduce, each checked against `report`.
pub fn ordinal_claims(report: &ClassificationReport) -> Vec<Claim> {
    let c = |r| report.coefficient(r).unwrap_or(f64::NAN);
    let rank = |r| report.rank(r).unwrap_or(usize::MAX);
    let top = &report.entries[0];
    let decile = report.entries.len().div_ceil(10);
    let d_122_89 = report.rank_distance(122, 89).unwrap_or(usize::MAX);
    let d_110_54 = report.rank_distance(110, 54).unwrap_or(usize::MAX);
    vec![
        Claim {
            name: "rule 22 has the largest coefficient".into(),
            holds: top.rule == 22,
            detail: format!(
                "max is rule {} ({:e}); rule 22 ranks {}",
                top.rule,
                top.coefficient,
                rank(22)
            ),
        },
        Claim {
            name: "rules 122 and 89 adjacent in the top decile".into(),
            holds: d_122_89 <= 3 && rank(122) <= decile && rank(89) <= decile,
            detail: format!(
                "ranks {} and {}; top decile is 1..={decile}",
                rank(122),
                rank(89)
            ),
        },
        Claim {
            name: "rule 110 positive".into(),
            holds: c(110) > 0.0,
            detail: format!("C(110) = {:e}", c(110)),
        },
        Claim {
            name: "rule 0 non-positive and smaller in magnitude than rule 110".into(),
            holds: c(0) <= 0.0 && c(0).abs() < c(110).abs(),
            detail: format!("C(0) = {:e}, C(110) = {:e}", c(0), c(110)),
        },
        Claim {
            name: "rules 110 and 54 within 10 ranks".into(),
            holds: d_110_54 <= 10,
            detail: format!("ranks {} and {}", rank(110), rank(54)),
        },
    ]
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RuleFlag {
    pub rule: u8,
    pub coefficient: f64,
    pub rank: usize,
    pub positive: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conjecture1Report {
    pub parameters: Parameters,
    pub universal_class: Vec<RuleFlag>,
    pub rule_54: RuleFlag,
    pub rank_distance_110_54: usize,
    pub rule_0: RuleFlag,
    /// `C(0) <= 0` and `|C(0)| < |C(110)|`.
    pub rule_0_near_zero: bool,
}

pub fn conjecture1_report(report: &ClassificationReport) -> Conjecture1Report {
    let flag = |rule: u8| {
        let e = report.entry(rule).expect("report covers all 256 rules");
        RuleFlag {
            rule,
            coefficient: e.coefficient,
            rank: e.rank,
            positive: e.coefficient > 0.0,
        }
    };
    let rule_0 = flag(0);
    let c110 = flag(110).coefficient;
    Conjecture1Report {
        parameters: report.parameters.clone(),
        universal_class: UNIVERSAL_CLASS.iter().map(|&r| flag(r)).collect(),
        rule_54: flag(54),
        rank_distance_110_54: report.rank_distance(110, 54).unwrap_or(usize::MAX),
        rule_0_near_zero: rule_0.coefficient <= 0.0 && rule_0.coefficient.abs() < c110.abs(),
        rule_0,
    }
}

impl fmt::Display for Conjecture1Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |f: &mut fmt::Formatter<'_>, r: &RuleFlag| {
            writeln!(
                f,
                "rule {:>3}  rank {:>3}  C = {:+e}  {}",
                r.rule,
                r.rank,
                r.coefficient,
                if r.positive {
                    "positive"
                } else {
                    "non-positive"
                }
            )
        };
        writeln!(f, "universal class")?;
        for r in &self.universal_class {
            row(f, r)?;
        }
        row(f, &self.rule_54)?;
        writeln!(f, "rank distance 110-54: {}", self.rank_distance_110_54)?;
        row(f, &self.rule_0)?;
        writeln!(f, "rule 0 near zero: {}", self.rule_0_near_zero)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sign {
    Positive,
    Zero,
    Negative,
}

impl Sign {
    pub fn of(x: f64) -> Sign {
        if x > 0.0 {
            Sign::Positive
        } else if x < 0.0 {
            Sign::Negative
        } else {
            Sign::Zero
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MachineRow {
    pub states: u8,
    pub machine: TuringMachine,
    /// Blank-tape run, capped at [`BLANK_RUN_LIMIT`] steps.
    pub halted: bool,
    pub steps: u64,
    pub ones: u64,
    pub series: Vec<(u64, f64)>,
    pub coefficient: f64,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Conjecture3Report {
    pub parameters: Parameters,
    pub rows: Vec<MachineRow>,
}

/// Coefficient of a single machine on a blank background.
pub fn machine_row(
    machine: &TuringMachine,
    params: &CoefficientParams,
) -> Result<MachineRow, CoefficientError> {
    let result = crate::turing::run(machine, crate::turing::TapeState::blank(), BLANK_RUN_LIMIT);
    let system = TmSystem::new(machine.clone(), machine.compact());
    let series = transition_series(&system, params.n, &params.schedule)?;
    let coefficient = series.coefficient()?.value();
    Ok(MachineRow {
        states: machine.states(),
        machine: machine.clone(),
        halted: result.halted,
        steps: result.steps,
        ones: result.ones,
        series: series.samples,
        coefficient,
        sign: Sign::of(coefficient),
    })
}

/// Runs the coefficient pipeline on every shift champion with up to `n_max`
/// states. Champions come from an exact search, so they all halt.
pub fn conjecture3_report(
    n_max: u8,
    params: &CoefficientParams,
) -> Result<Conjecture3Report, CoefficientError> {
    assert!(
        (1..=3).contains(&n_max),
        "champion search supports 1..=3 states"
    );
    let schedule = normalize_schedule(&params.schedule)?;
    let params = CoefficientParams {
        n: params.n,
        schedule,
    };
    let mut rows = Vec::new();
    for states in 1..=n_max {
        let record = search(states, default_cutoff(states));
        for m in &record.shift_champions {
            rows.push(machine_row(m, &params)?);
        }
    }
    Ok(Conjecture3Report {
        parameters: Parameters {
            n: params.n,
            schedule: params.schedule,
            compressor: COMPRESSOR_VERSION.to_string(),
        },
        rows,
    })
}

impl fmt::Display for Conjecture3Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(
                f,
                "{} states  {}  S = {}  C = {:+e}  {:?}",
                r.states,
                r.machine.compact(),
                r.steps,
                r.coefficient,
                r.sign
            )?;
        }
        Ok(())
    }
}
