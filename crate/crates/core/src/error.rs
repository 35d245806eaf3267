use thiserror::Error;

use crate::model::Pid;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("invalid pid {0}: pids must be positive")]
    InvalidPid(i64),
    #[error("duplicate pid {}", .0.get())]
    DuplicatePid(Pid),
    #[error("pid {}: non-positive burst {burst}", .pid.get())]
    NonPositiveBurst { pid: Pid, burst: i64 },
    #[error("pid {}: negative arrival {arrival}", .pid.get())]
    NegativeArrival { pid: Pid, arrival: i64 },
    #[error("pid {}: priority {priority} is below 1", .pid.get())]
    InvalidPriority { pid: Pid, priority: i64 },
    #[error("quantum must be at least 1 ms")]
    InvalidQuantum,
    #[error("shortness threshold must be at least 1 ms")]
    InvalidScThreshold,
    #[error("priority component table may not contain priority 0")]
    InvalidPcPriority,
    #[error("priority component for priority {priority} exceeds that of a higher priority")]
    NonMonotonePcMap { priority: u32 },
    #[error("unknown policy {0:?} (expected rr, srr or its)")]
    UnknownPolicy(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolicyError {
    #[error("{0} is already queued")]
    AlreadyQueued(Pid),
    #[error("{0} has already finished")]
    AlreadyFinished(Pid),
    #[error("{0} was never admitted")]
    UnknownPid(Pid),
    #[error("ready queue is empty")]
    EmptyQueue,
    #[error("{0} has no remaining burst and cannot be requeued")]
    NothingRemaining(Pid),
    #[error("{pid} cannot run {requested} ms with only {remaining} ms remaining")]
    Overrun {
        pid: Pid,
        requested: u64,
        remaining: u64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("{0} never completed")]
    Unfinished(Pid),
    #[error("comparison needs at least two reports, got {0}")]
    TooFewReports(usize),
    #[error("reports were computed over different tasksets")]
    TasksetMismatch,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WorkloadError {
    #[error("invalid {what} range [{lo}, {hi}]")]
    InvalidRange {
        what: &'static str,
        lo: u64,
        hi: u64,
    },
    #[error("process count {0} does not fit in a pid")]
    TooManyProcesses(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line 1: expected header `pid,arrival,burst,priority`, found {0:?}")]
    Header(String),
    #[error("line {line}: {reason}")]
    Malformed { line: usize, reason: String },
    #[error("line {line}: {source}")]
    Invalid { line: usize, source: ModelError },
}
