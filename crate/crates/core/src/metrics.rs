//! Per-process and aggregate statistics over a finished trace.
//!
//! Averages are exact rationals. [`truncate`] gives the integer rendering
//! (towards zero) used when lining results up against published integer
//! tables.

use std::fmt::Write as _;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::MetricsError;
use crate::model::{Millis, Pid, Policy, ScheduleTrace};

pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProcessMetrics {
    pub pid: Pid,
    pub arrival: Millis,
    pub burst: Millis,
    pub completion: Millis,
    /// `turnaround - burst`
    pub waiting: Millis,
    /// `completion - arrival`
    pub turnaround: Millis,
    /// `first dispatch - arrival`
    pub response: Millis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricsReport {
    pub per_process: Vec<ProcessMetrics>,
    pub avg_waiting: Rational,
    pub avg_turnaround: Rational,
    pub context_switches: u64,
    pub dispatches: usize,
    /// Completed processes per ms.
    pub throughput: Rational,
    /// Last completion minus first arrival.
    pub makespan: Millis,
    pub n: usize,
}

impl MetricsReport {
    pub fn get(&self, pid: Pid) -> Option<&ProcessMetrics> {
        self.per_process.iter().find(|m| m.pid == pid)
    }

    fn workload_key(&self) -> Vec<(Pid, Millis, Millis)> {
        let mut key: Vec<_> = self
            .per_process
            .iter()
            .map(|m| (m.pid, m.arrival, m.burst))
            .collect();
        key.sort();
        key
    }
}

pub fn truncate(r: Rational) -> u64 {
    r.to_integer()
}

pub fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn mean(sum: u64, n: usize) -> Rational {
    if n == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new(sum, n as u64)
    }
}

pub fn compute_metrics(trace: &ScheduleTrace) -> Result<MetricsReport, MetricsError> {
    let mut per_process = Vec::with_capacity(trace.taskset.len());
    for p in &trace.taskset {
        let pid = p.pid();
        let completion = *trace
            .completions
            .get(&pid)
            .ok_or(MetricsError::Unfinished(pid))?;
        let first = *trace
            .first_dispatch
            .get(&pid)
            .ok_or(MetricsError::Unfinished(pid))?;
        let turnaround = completion - p.arrival();
        per_process.push(ProcessMetrics {
            pid,
            arrival: p.arrival(),
            burst: p.burst(),
            completion,
            waiting: turnaround - p.burst(),
            turnaround,
            response: first - p.arrival(),
        });
    }

    let n = per_process.len();
    let makespan = match (
        per_process.iter().map(|m| m.completion).max(),
        per_process.iter().map(|m| m.arrival).min(),
    ) {
        (Some(end), Some(start)) => end - start,
        _ => 0,
    };
    let throughput = if makespan == 0 {
        Rational::from_integer(0)
    } else {
        Rational::new(n as u64, makespan)
    };

    Ok(MetricsReport {
        avg_waiting: mean(per_process.iter().map(|m| m.waiting).sum(), n),
        avg_turnaround: mean(per_process.iter().map(|m| m.turnaround).sum(), n),
        context_switches: trace.context_switches,
        dispatches: trace.dispatch_count(),
        throughput,
        makespan,
        n,
        per_process,
    })
}

/// How an integer reference value relates to an exact average.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Agreement {
    Exact,
    /// Reference equals the average truncated towards zero.
    Truncated,
    /// Reference equals the average rounded up.
    RoundedUp,
    Mismatch,
}

impl Agreement {
    pub fn classify(exact: Rational, reference: u64) -> Self {
        if exact == Rational::from_integer(reference) {
            Agreement::Exact
        } else if exact.floor().to_integer() == reference {
            Agreement::Truncated
        } else if exact.ceil().to_integer() == reference {
            Agreement::RoundedUp
        } else {
            Agreement::Mismatch
        }
    }

    pub fn is_consistent(self) -> bool {
        self != Agreement::Mismatch
    }
}

/// Externally reported integer averages for one policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ReferenceValues {
    pub avg_waiting: u64,
    pub avg_turnaround: u64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonRow {
    pub policy: Policy,
    pub avg_waiting: Rational,
    pub avg_turnaround: Rational,
    pub context_switches: u64,
    pub dispatches: usize,
    pub throughput: Rational,
    pub reference: Option<ReferenceValues>,
}

impl ComparisonRow {
    /// `(waiting, turnaround)` agreement with the attached reference, if any.
    pub fn agreement(&self) -> Option<(Agreement, Agreement)> {
        self.reference.map(|r| {
            (
                Agreement::classify(self.avg_waiting, r.avg_waiting),
                Agreement::classify(self.avg_turnaround, r.avg_turnaround),
            )
        })
    }
}

/// Row index holding the best value of each column; ties go to the earliest row.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BestColumns {
    pub avg_waiting: usize,
    pub avg_turnaround: usize,
    pub context_switches: usize,
    pub dispatches: usize,
    pub throughput: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComparisonTable {
    pub rows: Vec<ComparisonRow>,
    pub best: BestColumns,
}

fn first_min_by<T: Ord>(rows: &[ComparisonRow], key: impl Fn(&ComparisonRow) -> T) -> usize {
    let mut best = 0;
    for (i, row) in rows.iter().enumerate().skip(1) {
        if key(row) < key(&rows[best]) {
            best = i;
        }
    }
    best
}

pub fn compare(reports: &[(Policy, MetricsReport)]) -> Result<ComparisonTable, MetricsError> {
    if reports.len() < 2 {
        return Err(MetricsError::TooFewReports(reports.len()));
    }
    let key = reports[0].1.workload_key();
    if reports.iter().any(|(_, r)| r.workload_key() != key) {
        return Err(MetricsError::TasksetMismatch);
    }

    let rows: Vec<ComparisonRow> = reports
        .iter()
        .map(|(policy, r)| ComparisonRow {
            policy: *policy,
            avg_waiting: r.avg_waiting,
            avg_turnaround: r.avg_turnaround,
            context_switches: r.context_switches,
            dispatches: r.dispatches,
            throughput: r.throughput,
            reference: None,
        })
        .collect();
    let best = BestColumns {
        avg_waiting: first_min_by(&rows, |r| r.avg_waiting),
        avg_turnaround: first_min_by(&rows, |r| r.avg_turnaround),
        context_switches: first_min_by(&rows, |r| r.context_switches),
        dispatches: first_min_by(&rows, |r| r.dispatches),
        throughput: first_min_by(&rows, |r| std::cmp::Reverse(r.throughput)),
    };
    Ok(ComparisonTable { rows, best })
}

impl ComparisonTable {
    /// Attaches reference averages to every row with a matching policy.
    pub fn with_reference(mut self, policy: Policy, reference: ReferenceValues) -> Self {
        for row in self.rows.iter_mut().filter(|r| r.policy == policy) {
            row.reference = Some(reference);
        }
        self
    }

    pub fn row(&self, policy: Policy) -> Option<&ComparisonRow> {
        self.rows.iter().find(|r| r.policy == policy)
    }

    /// Plain-text table. Best values carry a `*`.
    pub fn render_text(&self) -> String {
        let has_ref = self.rows.iter().any(|r| r.reference.is_some());
        let mut out = String::new();
        let _ = write!(
            out,
            "{:<6} {:>14} {:>14} {:>9} {:>10} {:>12}",
            "policy", "avg_waiting", "avg_turnaround", "switches", "dispatches", "throughput"
        );
        if has_ref {
            let _ = write!(out, "  {:>9} {:>9}  agreement", "ref_wait", "ref_tat");
        }
        out.push('\n');

        let mark = |i: usize, best: usize| if i == best { "*" } else { " " };
        for (i, row) in self.rows.iter().enumerate() {
            let cell = |r: Rational, best| format!("{} ({}){}", r, truncate(r), mark(i, best));
            let _ = write!(
                out,
                "{:<6} {:>14} {:>14} {:>9} {:>10} {:>12}",
                row.policy.name(),
                cell(row.avg_waiting, self.best.avg_waiting),
                cell(row.avg_turnaround, self.best.avg_turnaround),
                format!(
                    "{}{}",
                    row.context_switches,
                    mark(i, self.best.context_switches)
                ),
                format!("{}{}", row.dispatches, mark(i, self.best.dispatches)),
                format!("{}{}", row.throughput, mark(i, self.best.throughput)),
            );
            if let (Some(r), Some((w, t))) = (row.reference, row.agreement()) {
                let _ = write!(
                    out,
                    "  {:>9} {:>9}  {}/{}",
                    r.avg_waiting,
                    r.avg_turnaround,
                    agreement_name(w),
                    agreement_name(t)
                );
                if !(w.is_consistent() && t.is_consistent()) {
                    out.push_str("  NOT REPRODUCED");
                }
            }
            out.push('\n');
        }
        out
    }
}

fn agreement_name(a: Agreement) -> &'static str {
    match a {
        Agreement::Exact => "exact",
        Agreement::Truncated => "truncated",
        Agreement::RoundedUp => "rounded_up",
        Agreement::Mismatch => "mismatch",
    }
}
