//! Engine against oracle over a grid of constructible groups and prime sets.
//!
//! Each cell (group, σ′) with 2 ≤ |σ′| ≤ pi_size runs the rule engine and the
//! pairwise-criterion check, whose solvable-Hall search is the ground truth.

use std::fmt::Write as _;
use std::time::Instant;

use hall_core::arith::{is_prime, PrimeSet};
use hall_core::catalog::{prime_spectrum, GroupDescriptor};
use hall_core::constructions::build_group;
use hall_core::criteria::{decide_solvable_hall, Decision, RuleId, Verdict};
use hall_core::oracle::{theorem1_check, OracleError, Theorem1Report};
use serde::Serialize;

use crate::{CliError, Settings, SCHEMA_VERSION};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum GridFamily {
    Alt,
    Sym,
    Psl2,
}

impl GridFamily {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        match text.to_ascii_lowercase().as_str() {
            "alt" => Ok(GridFamily::Alt),
            "sym" => Ok(GridFamily::Sym),
            "psl2" => Ok(GridFamily::Psl2),
            _ => Err(CliError::Usage(format!("unknown grid family `{text}` (Alt, Sym, PSL2)"))),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Grid {
    pub family: GridFamily,
    /// Inclusive range of n (Alt, Sym) or q (PSL2).
    pub lo: u64,
    pub hi: u64,
    pub pi_size: usize,
}

/// Parses `A..B` (inclusive) or a single integer.
pub fn parse_range(text: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("invalid range `{text}`, expected A..B"));
    let (a, b) = match text.split_once("..") {
        Some((a, b)) => (a, b.strip_prefix('=').unwrap_or(b)),
        None => (text, text),
    };
    let a: u64 = a.parse().map_err(|_| bad())?;
    let b: u64 = b.parse().map_err(|_| bad())?;
    if a > b {
        return Err(bad());
    }
    Ok((a, b))
}

impl Grid {
    pub fn descriptors(&self) -> Result<Vec<GroupDescriptor>, CliError> {
        let texts: Vec<String> = match self.family {
            GridFamily::Alt => (self.lo.max(3)..=self.hi).map(|n| format!("Alt:{n}")).collect(),
            GridFamily::Sym => (self.lo.max(1)..=self.hi).map(|n| format!("Sym:{n}")).collect(),
            GridFamily::Psl2 => (self.lo.max(5)..=self.hi)
                .filter(|&q| is_prime(q))
                .map(|q| format!("PSL+:2:{q}"))
                .collect(),
        };
        Ok(texts.iter().map(|t| GroupDescriptor::parse(t)).collect::<Result<_, _>>()?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CellStatus {
    Agree,
    EngineUnknown,
    Mismatch,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct Cell {
    pub descriptor: String,
    pub sigma: PrimeSet,
    pub engine: Decision,
    pub rule: RuleId,
    /// Ground truth: a solvable σ-Hall subgroup exists.
    pub oracle: Option<bool>,
    pub all_pairs_found: Option<bool>,
    pub biconditional_holds: Option<bool>,
    pub status: CellStatus,
    /// Full engine trace, kept for mismatches only.
    pub trace: Option<Verdict>,
    pub oracle_report: Option<Theorem1Report>,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub cells: usize,
    pub agree: usize,
    pub engine_unknown: usize,
    pub mismatches: usize,
    pub violations: usize,
    pub inconclusive: usize,
}

impl Summary {
    pub fn unknown_rate(&self) -> f64 {
        if self.cells == 0 {
            0.0
        } else {
            self.engine_unknown as f64 / self.cells as f64
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CrosscheckReport {
    pub schema_version: u32,
    pub grid: Grid,
    pub cells: Vec<Cell>,
    pub summary: Summary,
    pub total_ms: f64,
}

impl CrosscheckReport {
    /// 3 on any mismatch or violation, 2 on an inconclusive cell, 0 otherwise.
    pub fn exit_code(&self) -> u8 {
        if self.summary.mismatches > 0 || self.summary.violations > 0 {
            3
        } else if self.summary.inconclusive > 0 {
            2
        } else {
            0
        }
    }
}

pub fn run_cell(d: &GroupDescriptor, g: &hall_core::permgrp::PermGroup, sigma: &PrimeSet, settings: &Settings) -> Result<Cell, CliError> {
    let started = Instant::now();
    let verdict = decide_solvable_hall(d, sigma)?;
    let (report, holds) = match theorem1_check(g, sigma, &settings.search_options()) {
        Ok(r) => (Some(r), Some(true)),
        Err(OracleError::BiconditionalViolation(r)) => (Some(*r), Some(false)),
        Err(OracleError::Inconclusive { .. }) => (None, None),
        Err(e) => return Err(e.into()),
    };
    let oracle = report.as_ref().map(|r| r.solvable_hall);
    let status = match (verdict.decision, oracle) {
        (_, None) => CellStatus::Inconclusive,
        (Decision::Unknown, _) => CellStatus::EngineUnknown,
        (decision, Some(truth)) if (decision == Decision::Yes) == truth => CellStatus::Agree,
        _ => CellStatus::Mismatch,
    };
    let keep = status == CellStatus::Mismatch || holds == Some(false);
    Ok(Cell {
        descriptor: d.to_string(),
        sigma: sigma.clone(),
        engine: verdict.decision,
        rule: verdict.trace[0].rule_id,
        oracle,
        all_pairs_found: report.as_ref().map(|r| r.all_pairs_found),
        biconditional_holds: holds,
        status,
        trace: keep.then(|| verdict.clone()),
        oracle_report: if keep { report } else { None },
        elapsed_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

/// Runs every cell of the grid; `progress` sees each cell as it completes.
pub fn crosscheck(grid: &Grid, settings: &Settings, mut progress: impl FnMut(&Cell)) -> Result<CrosscheckReport, CliError> {
    let started = Instant::now();
    let mut cells = Vec::new();
    let mut summary = Summary::default();
    for d in grid.descriptors()? {
        let g = build_group(&d, &settings.limits)?;
        let spectrum = prime_spectrum(&d)?;
        for sigma in spectrum.subsets(2, grid.pi_size) {
            let cell = run_cell(&d, &g, &sigma, settings)?;
            summary.cells += 1;
            match cell.status {
                CellStatus::Agree => summary.agree += 1,
                CellStatus::EngineUnknown => summary.engine_unknown += 1,
                CellStatus::Mismatch => summary.mismatches += 1,
                CellStatus::Inconclusive => summary.inconclusive += 1,
            }
            if cell.biconditional_holds == Some(false) {
                summary.violations += 1;
            }
            progress(&cell);
            cells.push(cell);
        }
    }
    Ok(CrosscheckReport {
        schema_version: SCHEMA_VERSION,
        grid: grid.clone(),
        cells,
        summary,
        total_ms: started.elapsed().as_secs_f64() * 1e3,
    })
}

fn opt_bool(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "yes",
        Some(false) => "no",
        None => "?",
    }
}

pub fn render_text(report: &CrosscheckReport) -> String {
    let mut out = format!(
        "{:<12} {:<14} {:<8} {:<16} {:<7} {:<6} {:<6} {}\n",
        "group", "σ", "engine", "rule", "oracle", "pairs", "iff", "status"
    );
    for c in &report.cells {
        let _ = writeln!(
            out,
            "{:<12} {:<14} {:<8} {:<16} {:<7} {:<6} {:<6} {:?}",
            c.descriptor,
            c.sigma.to_string(),
            c.engine.to_string(),
            c.rule.to_string(),
            opt_bool(c.oracle),
            opt_bool(c.all_pairs_found),
            opt_bool(c.biconditional_holds),
            c.status
        );
    }
    for c in report.cells.iter().filter(|c| c.trace.is_some()) {
        let _ = writeln!(out, "\n{} σ={} ({:?})", c.descriptor, c.sigma, c.status);
        out += &crate::render_verdict(c.trace.as_ref().unwrap());
    }
    let s = &report.summary;
    let _ = writeln!(
        out,
        "\ncells {}  agree {}  engine unknown {} ({:.1}%)  mismatches {}  violations {}  inconclusive {}",
        s.cells,
        s.agree,
        s.engine_unknown,
        100.0 * s.unknown_rate(),
        s.mismatches,
        s.violations,
        s.inconclusive
    );
    out
}

pub fn render_csv(report: &CrosscheckReport) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| CliError::Usage(e.to_string());
    w.write_record(["group", "sigma", "engine", "rule", "oracle", "all_pairs_found", "biconditional", "status"])
        .map_err(io)?;
    for c in &report.cells {
        w.write_record([
            c.descriptor.clone(),
            c.sigma.to_string(),
            c.engine.to_string(),
            c.rule.to_string(),
            opt_bool(c.oracle).to_string(),
            opt_bool(c.all_pairs_found).to_string(),
            opt_bool(c.biconditional_holds).to_string(),
            format!("{:?}", c.status),
        ])
        .map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}
