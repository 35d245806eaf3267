//! Trace and comparison output.
//!
//! JSON key order follows the struct field order below and numbers are
//! formatted by `serde_json`, so the same trace always yields the same bytes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::its::compute_its;
use crate::metrics::{to_f64, truncate, Agreement, ComparisonTable, MetricsReport, Rational};
use crate::model::{
    ItsBreakdown, Millis, Pid, Policy, PolicyConfig, ScheduleTrace, TimelineSegment,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceFormat {
    Json,
    Csv,
}

#[derive(Serialize)]
struct Average {
    exact: String,
    decimal: f64,
    truncated: u64,
}

impl From<Rational> for Average {
    fn from(r: Rational) -> Self {
        Average {
            exact: r.to_string(),
            decimal: to_f64(r),
            truncated: truncate(r),
        }
    }
}

#[derive(Serialize)]
struct Ratio {
    exact: String,
    decimal: f64,
}

impl From<Rational> for Ratio {
    fn from(r: Rational) -> Self {
        Ratio {
            exact: r.to_string(),
            decimal: to_f64(r),
        }
    }
}

#[derive(Serialize)]
struct ProcessRow {
    pid: Pid,
    completion: Millis,
    waiting: Millis,
    turnaround: Millis,
    response: Millis,
}

#[derive(Serialize)]
struct Aggregate {
    n: usize,
    avg_waiting: Average,
    avg_turnaround: Average,
    context_switches: u64,
    dispatches: usize,
    throughput: Ratio,
    makespan: Millis,
}

#[derive(Serialize)]
struct TraceDocument<'a> {
    policy: Policy,
    config: &'a PolicyConfig,
    segments: &'a [TimelineSegment],
    #[serde(skip_serializing_if = "Option::is_none")]
    its_table: Option<Vec<ItsBreakdown>>,
    per_process: Vec<ProcessRow>,
    aggregate: Aggregate,
}

fn aggregate(m: &MetricsReport) -> Aggregate {
    Aggregate {
        n: m.n,
        avg_waiting: m.avg_waiting.into(),
        avg_turnaround: m.avg_turnaround.into(),
        context_switches: m.context_switches,
        dispatches: m.dispatches,
        throughput: m.throughput.into(),
        makespan: m.makespan,
    }
}

pub fn emit_trace(trace: &ScheduleTrace, metrics: &MetricsReport, format: TraceFormat) -> String {
    match format {
        TraceFormat::Csv => {
            let mut out = String::from("pid,start,end\n");
            for s in &trace.segments {
                let _ = writeln!(out, "{},{},{}", s.pid.get(), s.start, s.end);
            }
            out
        }
        TraceFormat::Json => {
            let its_table = (trace.config.policy() == Policy::Its).then(|| {
                trace
                    .taskset
                    .iter()
                    .map(|p| compute_its(p, &trace.config))
                    .collect()
            });
            let doc = TraceDocument {
                policy: trace.config.policy(),
                config: &trace.config,
                segments: &trace.segments,
                its_table,
                per_process: metrics
                    .per_process
                    .iter()
                    .map(|m| ProcessRow {
                        pid: m.pid,
                        completion: m.completion,
                        waiting: m.waiting,
                        turnaround: m.turnaround,
                        response: m.response,
                    })
                    .collect(),
                aggregate: aggregate(metrics),
            };
            let mut text = serde_json::to_string_pretty(&doc).expect("trace serializes");
            text.push('\n');
            text
        }
    }
}

#[derive(Serialize)]
struct ComparisonEntry {
    policy: Policy,
    avg_waiting: Average,
    avg_turnaround: Average,
    context_switches: u64,
    dispatches: usize,
    throughput: Ratio,
    #[serde(skip_serializing_if = "Option::is_none")]
    reference: Option<ReferenceEntry>,
}

#[derive(Serialize)]
struct ReferenceEntry {
    avg_waiting: u64,
    avg_turnaround: u64,
    waiting_agreement: Agreement,
    turnaround_agreement: Agreement,
}

#[derive(Serialize)]
struct BestEntry {
    avg_waiting: Policy,
    avg_turnaround: Policy,
    context_switches: Policy,
    dispatches: Policy,
    throughput: Policy,
}

#[derive(Serialize)]
struct ComparisonDocument {
    rows: Vec<ComparisonEntry>,
    best: BestEntry,
}

pub fn emit_comparison_json(table: &ComparisonTable) -> String {
    let policy_at = |i: usize| table.rows[i].policy;
    let doc = ComparisonDocument {
        rows: table
            .rows
            .iter()
            .map(|r| ComparisonEntry {
                policy: r.policy,
                avg_waiting: r.avg_waiting.into(),
                avg_turnaround: r.avg_turnaround.into(),
                context_switches: r.context_switches,
                dispatches: r.dispatches,
                throughput: r.throughput.into(),
                reference: r
                    .reference
                    .zip(r.agreement())
                    .map(|(v, (w, t))| ReferenceEntry {
                        avg_waiting: v.avg_waiting,
                        avg_turnaround: v.avg_turnaround,
                        waiting_agreement: w,
                        turnaround_agreement: t,
                    }),
            })
            .collect(),
        best: BestEntry {
            avg_waiting: policy_at(table.best.avg_waiting),
            avg_turnaround: policy_at(table.best.avg_turnaround),
            context_switches: policy_at(table.best.context_switches),
            dispatches: policy_at(table.best.dispatches),
            throughput: policy_at(table.best.throughput),
        },
    };
    let mut text = serde_json::to_string_pretty(&doc).expect("comparison serializes");
    text.push('\n');
    text
}
