#![allow(dead_code)]

use std::path::PathBuf;
use std::process::{Command, Output};

use rrsched::metrics::MetricsReport;
use rrsched::{validate_taskset, Millis, Pid, ProcessSpec, ScheduleTrace, Taskset};

pub const TABLE_CSV: &str =
    "pid,arrival,burst,priority\n1,0,25,2\n2,0,5,3\n3,0,15,1\n4,0,8,2\n5,0,10,1\n";

pub fn table() -> Taskset {
    validate_taskset(
        [(1, 25, 2), (2, 5, 3), (3, 15, 1), (4, 8, 2), (5, 10, 1)]
            .iter()
            .map(|&(pid, burst, prio)| ProcessSpec::new(pid, 0, burst, prio).unwrap())
            .collect(),
    )
    .unwrap()
}

// Hand-derived dispatch sequences for the five-process table at quantum 4.

pub const RR_SEGMENTS: [(u32, Millis, Millis); 18] = [
    (1, 0, 4),
    (2, 4, 8),
    (3, 8, 12),
    (4, 12, 16),
    (5, 16, 20),
    (1, 20, 24),
    (2, 24, 25),
    (3, 25, 29),
    (4, 29, 33),
    (5, 33, 37),
    (1, 37, 41),
    (3, 41, 45),
    (5, 45, 47),
    (1, 47, 51),
    (3, 51, 54),
    (1, 54, 58),
    (1, 58, 62),
    (1, 62, 63),
];

pub const SRR_SEGMENTS: [(u32, Millis, Millis); 18] = [
    (2, 0, 4),
    (4, 4, 8),
    (5, 8, 12),
    (3, 12, 16),
    (1, 16, 20),
    (2, 20, 21),
    (4, 21, 25),
    (5, 25, 29),
    (3, 29, 33),
    (1, 33, 37),
    (5, 37, 39),
    (3, 39, 43),
    (1, 43, 47),
    (3, 47, 50),
    (1, 50, 54),
    (1, 54, 58),
    (1, 58, 62),
    (1, 62, 63),
];

pub const ITS_SEGMENTS: [(u32, Millis, Millis); 14] = [
    (1, 0, 4),
    (2, 4, 9),
    (3, 9, 14),
    (4, 14, 22),
    (5, 22, 27),
    (1, 27, 31),
    (3, 31, 36),
    (5, 36, 41),
    (1, 41, 45),
    (3, 45, 50),
    (1, 50, 54),
    (1, 54, 58),
    (1, 58, 62),
    (1, 62, 63),
];

pub fn segments(trace: &ScheduleTrace) -> Vec<(u32, Millis, Millis)> {
    trace
        .segments
        .iter()
        .map(|s| (s.pid.get(), s.start, s.end))
        .collect()
}

pub fn completions(trace: &ScheduleTrace) -> Vec<(u32, Millis)> {
    trace
        .completions
        .iter()
        .map(|(p, &c)| (p.get(), c))
        .collect()
}

pub fn pid(n: u32) -> Pid {
    Pid::new(n).unwrap()
}

/// Metrics identities, recomputed from the trace and taskset alone.
pub fn check_metrics(trace: &ScheduleTrace, report: &MetricsReport) -> Result<(), String> {
    let n = trace.taskset.len() as u64;
    let (mut sum_w, mut sum_t, mut sum_b) = (0u64, 0u64, 0u64);
    for p in &trace.taskset {
        let m = report
            .get(p.pid())
            .ok_or_else(|| format!("{} missing from report", p.pid()))?;
        let completion = trace.completions[&p.pid()];
        let first = trace.first_dispatch[&p.pid()];
        if m.turnaround != completion - p.arrival()
            || m.waiting + p.burst() != m.turnaround
            || m.response != first - p.arrival()
        {
            return Err(format!("identity broken for {}: {m:?}", p.pid()));
        }
        sum_w += m.waiting;
        sum_t += m.turnaround;
        sum_b += p.burst();
    }
    if sum_t != sum_w + sum_b {
        return Err("sum of turnarounds != sum of waits + sum of bursts".into());
    }
    if n > 0 {
        if report.avg_waiting * n != rrsched::Rational::from_integer(sum_w)
            || report.avg_turnaround * n != rrsched::Rational::from_integer(sum_t)
        {
            return Err("averages are not exact sums over n".into());
        }
        if trace.taskset.iter().all(|p| p.arrival() == 0)
            && report.per_process.iter().map(|m| m.response).min() != Some(0)
        {
            return Err("no process was dispatched at time 0".into());
        }
    }
    if report.context_switches != trace.context_switches {
        return Err("context switches not copied".into());
    }
    Ok(())
}

pub fn bin() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_rrsched"))
}

pub fn run_cli(args: &[&str]) -> Output {
    Command::new(bin())
        .args(args)
        .output()
        .expect("spawn rrsched")
}

pub fn write_table(dir: &tempfile::TempDir) -> String {
    let path = dir.path().join("table41.csv");
    std::fs::write(&path, TABLE_CSV).unwrap();
    path.to_string_lossy().into_owned()
}
