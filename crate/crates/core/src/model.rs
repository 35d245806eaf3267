//! Domain types shared by every part of the simulator.
//!
//! Time is integer milliseconds throughout. All values are immutable once
//! constructed; constructors reject anything that would break an invariant.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::ModelError;

/// Integer milliseconds.
pub type Millis = u64;

/// Process identifier. Always positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Pid(u32);

impl Pid {
    pub fn new(raw: u32) -> Result<Self, ModelError> {
        if raw == 0 {
            return Err(ModelError::InvalidPid(raw as i64));
        }
        Ok(Pid(raw))
    }

    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for Pid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}", self.0)
    }
}

/// Admission record of one task: when it arrives, how much CPU it declares
/// and its priority number (1 is the highest priority).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct ProcessSpec {
    pid: Pid,
    arrival: Millis,
    burst: Millis,
    priority: u32,
}

impl ProcessSpec {
    /// Builds a process from raw signed fields, so that out-of-range input
    /// (negative arrival, zero burst, ...) is reported against its pid.
    pub fn new(pid: i64, arrival: i64, burst: i64, priority: i64) -> Result<Self, ModelError> {
        let pid = u32::try_from(pid)
            .ok()
            .filter(|&p| p > 0)
            .ok_or(ModelError::InvalidPid(pid))?;
        let id = Pid(pid);
        if burst < 1 {
            return Err(ModelError::NonPositiveBurst { pid: id, burst });
        }
        if arrival < 0 {
            return Err(ModelError::NegativeArrival { pid: id, arrival });
        }
        let priority = u32::try_from(priority)
            .ok()
            .filter(|&p| p >= 1)
            .ok_or(ModelError::InvalidPriority { pid: id, priority })?;
        Ok(ProcessSpec {
            pid: id,
            arrival: arrival as Millis,
            burst: burst as Millis,
            priority,
        })
    }

    pub fn pid(&self) -> Pid {
        self.pid
    }

    pub fn arrival(&self) -> Millis {
        self.arrival
    }

    /// Declared CPU burst. Also serves as the assumed burst when computing
    /// intelligent time slices.
    pub fn burst(&self) -> Millis {
        self.burst
    }

    pub fn priority(&self) -> u32 {
        self.priority
    }
}

#[derive(Deserialize)]
struct RawProcess {
    pid: i64,
    arrival: i64,
    burst: i64,
    priority: i64,
}

impl<'de> Deserialize<'de> for ProcessSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = RawProcess::deserialize(d)?;
        ProcessSpec::new(raw.pid, raw.arrival, raw.burst, raw.priority)
            .map_err(serde::de::Error::custom)
    }
}

/// A validated set of processes, ordered by `(arrival, pid)` with unique pids.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct Taskset(Vec<ProcessSpec>);

impl Taskset {
    pub fn processes(&self) -> &[ProcessSpec] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, ProcessSpec> {
        self.0.iter()
    }

    pub fn get(&self, pid: Pid) -> Option<&ProcessSpec> {
        self.0.iter().find(|p| p.pid == pid)
    }

    pub fn total_burst(&self) -> Millis {
        self.0.iter().map(|p| p.burst).sum()
    }
}

impl<'a> IntoIterator for &'a Taskset {
    type Item = &'a ProcessSpec;
    type IntoIter = std::slice::Iter<'a, ProcessSpec>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

/// Checks pid uniqueness and returns the processes ordered by `(arrival, pid)`.
pub fn validate_taskset(specs: Vec<ProcessSpec>) -> Result<Taskset, ModelError> {
    let mut seen = BTreeSet::new();
    for p in &specs {
        if !seen.insert(p.pid) {
            return Err(ModelError::DuplicatePid(p.pid));
        }
    }
    let mut specs = specs;
    specs.sort_by_key(|p| (p.arrival, p.pid));
    Ok(Taskset(specs))
}

/// Queue discipline selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Policy {
    /// Classic round robin: FCFS queue, fixed quantum.
    Rr,
    /// Shortest round robin: admission sorted by declared burst, fixed quantum.
    Srr,
    /// Round robin with a per-process intelligent time slice.
    Its,
}

impl Policy {
    pub const ALL: [Policy; 3] = [Policy::Rr, Policy::Srr, Policy::Its];

    pub fn name(self) -> &'static str {
        match self {
            Policy::Rr => "rr",
            Policy::Srr => "srr",
            Policy::Its => "its",
        }
    }
}

impl fmt::Display for Policy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Policy {
    type Err = ModelError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "rr" => Ok(Policy::Rr),
            "srr" => Ok(Policy::Srr),
            "its" => Ok(Policy::Its),
            _ => Err(ModelError::UnknownPolicy(s.to_string())),
        }
    }
}

pub const DEFAULT_SC_THRESHOLD: Millis = 10;

/// Scheduler parameters.
///
/// `quantum` is the original time slice handed to any process that deserves
/// no special consideration. The priority and shortness components only
/// matter for [`Policy::Its`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct PolicyConfig {
    policy: Policy,
    quantum: Millis,
    sc_threshold: Millis,
    pc_map: BTreeMap<u32, Millis>,
    count_self_redispatch_as_switch: bool,
    switch_overhead: Millis,
}

impl PolicyConfig {
    /// Default parameters: SC threshold 10 ms, priority 1 gets a 1 ms
    /// priority component, no switch overhead.
    pub fn new(policy: Policy, quantum: Millis) -> Result<Self, ModelError> {
        if quantum < 1 {
            return Err(ModelError::InvalidQuantum);
        }
        Ok(PolicyConfig {
            policy,
            quantum,
            sc_threshold: DEFAULT_SC_THRESHOLD,
            pc_map: BTreeMap::from([(1, 1)]),
            count_self_redispatch_as_switch: false,
            switch_overhead: 0,
        })
    }

    pub fn with_sc_threshold(mut self, threshold: Millis) -> Result<Self, ModelError> {
        if threshold < 1 {
            return Err(ModelError::InvalidScThreshold);
        }
        self.sc_threshold = threshold;
        Ok(self)
    }

    /// Replaces the priority-component table. Priorities missing from the
    /// table get 0; the resulting function must be non-increasing in the
    /// priority number.
    pub fn with_pc_map(mut self, map: BTreeMap<u32, Millis>) -> Result<Self, ModelError> {
        check_pc_monotone(&map)?;
        self.pc_map = map;
        Ok(self)
    }

    pub fn with_self_redispatch_as_switch(mut self, yes: bool) -> Self {
        self.count_self_redispatch_as_switch = yes;
        self
    }

    /// Time the processor spends on every counted context switch before the
    /// next process starts running.
    pub fn with_switch_overhead(mut self, overhead: Millis) -> Self {
        self.switch_overhead = overhead;
        self
    }

    /// Same parameters under a different policy.
    pub fn for_policy(&self, policy: Policy) -> Self {
        PolicyConfig {
            policy,
            ..self.clone()
        }
    }

    pub fn policy(&self) -> Policy {
        self.policy
    }

    pub fn quantum(&self) -> Millis {
        self.quantum
    }

    pub fn sc_threshold(&self) -> Millis {
        self.sc_threshold
    }

    pub fn pc_map(&self) -> &BTreeMap<u32, Millis> {
        &self.pc_map
    }

    pub fn count_self_redispatch_as_switch(&self) -> bool {
        self.count_self_redispatch_as_switch
    }

    pub fn switch_overhead(&self) -> Millis {
        self.switch_overhead
    }
}

fn check_pc_monotone(map: &BTreeMap<u32, Millis>) -> Result<(), ModelError> {
    // Walk priorities in increasing number; gaps between keys are 0.
    let mut prev = Millis::MAX;
    let mut next_expected = 1u32;
    for (&prio, &pc) in map {
        if prio == 0 {
            return Err(ModelError::InvalidPcPriority);
        }
        if prio > next_expected {
            prev = 0;
        }
        if pc > prev {
            return Err(ModelError::NonMonotonePcMap { priority: prio });
        }
        prev = pc;
        next_expected = prio.saturating_add(1);
    }
    Ok(())
}

/// Decomposition of one process's intelligent time slice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ItsBreakdown {
    pub pid: Pid,
    pub ots: Millis,
    pub pc: Millis,
    pub sc: Millis,
    /// Computed component: `ots + pc + sc`.
    pub cc: Millis,
    /// Declared burst minus `cc`; negative when the process needs less than `cc`.
    pub balance: i64,
    pub csc: Millis,
    pub its: Millis,
}

/// One contiguous run of a process on the processor, `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TimelineSegment {
    pub pid: Pid,
    pub start: Millis,
    pub end: Millis,
}

impl TimelineSegment {
    pub fn duration(&self) -> Millis {
        self.end - self.start
    }
}

/// Result of simulating one policy over one taskset.
///
/// Every dispatch produces exactly one segment, so `segments.len()` is the
/// dispatch count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScheduleTrace {
    pub config: PolicyConfig,
    pub taskset: Taskset,
    pub segments: Vec<TimelineSegment>,
    pub completions: BTreeMap<Pid, Millis>,
    pub first_dispatch: BTreeMap<Pid, Millis>,
    pub context_switches: u64,
}

impl ScheduleTrace {
    pub fn dispatch_count(&self) -> usize {
        self.segments.len()
    }

    pub fn segments_of(&self, pid: Pid) -> impl Iterator<Item = &TimelineSegment> + '_ {
        self.segments.iter().filter(move |s| s.pid == pid)
    }

    /// Checks the structural invariants every complete trace must satisfy.
    pub fn verify(&self) -> Result<(), String> {
        let mut prev_end = 0;
        for (i, seg) in self.segments.iter().enumerate() {
            if seg.end <= seg.start {
                return Err(format!("segment {i} is empty or reversed: {seg:?}"));
            }
            if i > 0 && seg.start < prev_end {
                return Err(format!("segment {i} overlaps its predecessor: {seg:?}"));
            }
            prev_end = seg.end;
            let Some(proc) = self.taskset.get(seg.pid) else {
                return Err(format!("segment {i} names unknown {}", seg.pid));
            };
            if seg.start < proc.arrival() {
                return Err(format!("{} runs before its arrival", seg.pid));
            }
        }

        for proc in &self.taskset {
            let pid = proc.pid();
            let mut segs = self.segments_of(pid).peekable();
            let first = segs.peek().map(|s| s.start);
            let (work, last) = segs.fold((0, None), |(w, _), s| (w + s.duration(), Some(s.end)));
            if work != proc.burst() {
                return Err(format!(
                    "{pid} received {work} ms, declared {}",
                    proc.burst()
                ));
            }
            if self.completions.get(&pid).copied() != last {
                return Err(format!("{pid} completion does not match its last segment"));
            }
            if self.first_dispatch.get(&pid).copied() != first {
                return Err(format!(
                    "{pid} first dispatch does not match its first segment"
                ));
            }
        }
        if self.completions.len() != self.taskset.len() {
            return Err("completion records name processes outside the taskset".into());
        }

        if self.config.switch_overhead() == 0 {
            self.verify_work_conserving()?;
        }
        Ok(())
    }

    fn verify_work_conserving(&self) -> Result<(), String> {
        let mut clock = 0;
        for seg in &self.segments {
            if seg.start > clock {
                // Idle gap [clock, seg.start): no process may be ready in it.
                let waiting = self.taskset.iter().find(|p| {
                    p.arrival() < seg.start
                        && self.completions.get(&p.pid()).is_some_and(|&c| c > clock)
                });
                if let Some(p) = waiting {
                    return Err(format!(
                        "processor idle in [{clock}, {}) while {} was ready",
                        seg.start,
                        p.pid()
                    ));
                }
            }
            clock = seg.end;
        }
        Ok(())
    }
}
