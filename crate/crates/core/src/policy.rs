//! Ready-queue disciplines.
//!
//! A policy decides two things: where a newly admitted process enters the
//! ready queue, and how long a slice it gets on each dispatch. Preempted
//! processes always go back to the tail, so every policy serves the queue
//! cyclically once a process has had its first turn.

use std::collections::{BTreeMap, VecDeque};

use crate::error::PolicyError;
use crate::its::compute_its;
use crate::model::{Millis, Pid, Policy, PolicyConfig, ProcessSpec};

/// A ready-queue entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct QueueEntry {
    pub pid: Pid,
    pub burst: Millis,
    /// Set once the process has been dispatched and preempted at least once.
    pub cycled: bool,
}

/// Queue discipline plus per-dispatch slice length.
pub trait Discipline: Send + Sync {
    /// Position at which a newly admitted process joins `queue`.
    fn admission_index(&self, queue: &VecDeque<QueueEntry>, proc: &ProcessSpec) -> usize;

    /// Slice granted to `proc` on every dispatch.
    fn slice(&self, proc: &ProcessSpec) -> Millis;
}

/// FCFS admission, fixed quantum.
#[derive(Debug, Clone)]
pub struct RoundRobin {
    pub quantum: Millis,
}

impl Discipline for RoundRobin {
    fn admission_index(&self, queue: &VecDeque<QueueEntry>, _proc: &ProcessSpec) -> usize {
        queue.len()
    }

    fn slice(&self, _proc: &ProcessSpec) -> Millis {
        self.quantum
    }
}

/// Admission sorted ascending by declared burst (ties by pid), fixed quantum.
///
/// The queue is a sorted prefix of never-preempted processes followed by the
/// cycled tail in FIFO order. New arrivals are placed inside the prefix; the
/// tail is never reordered.
#[derive(Debug, Clone)]
pub struct ShortestRoundRobin {
    pub quantum: Millis,
}

impl Discipline for ShortestRoundRobin {
    fn admission_index(&self, queue: &VecDeque<QueueEntry>, proc: &ProcessSpec) -> usize {
        let key = (proc.burst(), proc.pid());
        queue.partition_point(|e| !e.cycled && (e.burst, e.pid) < key)
    }

    fn slice(&self, _proc: &ProcessSpec) -> Millis {
        self.quantum
    }
}

/// FCFS admission, per-process intelligent time slice.
#[derive(Debug, Clone)]
pub struct IntelligentRoundRobin {
    pub config: PolicyConfig,
}

impl Discipline for IntelligentRoundRobin {
    fn admission_index(&self, queue: &VecDeque<QueueEntry>, _proc: &ProcessSpec) -> usize {
        queue.len()
    }

    fn slice(&self, proc: &ProcessSpec) -> Millis {
        compute_its(proc, &self.config).its
    }
}

pub fn discipline_for(config: &PolicyConfig) -> Box<dyn Discipline> {
    match config.policy() {
        Policy::Rr => Box::new(RoundRobin {
            quantum: config.quantum(),
        }),
        Policy::Srr => Box::new(ShortestRoundRobin {
            quantum: config.quantum(),
        }),
        Policy::Its => Box::new(IntelligentRoundRobin {
            config: config.clone(),
        }),
    }
}

/// A dispatch decision: run `pid` for at most `slice` ms.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Dispatch {
    pub pid: Pid,
    pub slice: Millis,
}

#[derive(Debug, Clone)]
struct Slot {
    spec: ProcessSpec,
    remaining: Millis,
    slice: Millis,
}

/// Ready queue and remaining-burst bookkeeping for one simulation.
pub struct PolicyState {
    discipline: Box<dyn Discipline>,
    queue: VecDeque<QueueEntry>,
    slots: BTreeMap<Pid, Slot>,
}

impl PolicyState {
    pub fn new(config: &PolicyConfig) -> Self {
        PolicyState {
            discipline: discipline_for(config),
            queue: VecDeque::new(),
            slots: BTreeMap::new(),
        }
    }

    /// Enqueues an arrived process. The slice is fixed here and never
    /// recomputed.
    pub fn admit(&mut self, proc: &ProcessSpec) -> Result<(), PolicyError> {
        let pid = proc.pid();
        if let Some(slot) = self.slots.get(&pid) {
            return Err(if slot.remaining == 0 {
                PolicyError::AlreadyFinished(pid)
            } else {
                PolicyError::AlreadyQueued(pid)
            });
        }
        let entry = QueueEntry {
            pid,
            burst: proc.burst(),
            cycled: false,
        };
        let at = self.discipline.admission_index(&self.queue, proc);
        self.queue.insert(at, entry);
        self.slots.insert(
            pid,
            Slot {
                spec: *proc,
                remaining: proc.burst(),
                slice: self.discipline.slice(proc),
            },
        );
        Ok(())
    }

    /// Pops the head of the queue.
    pub fn next_dispatch(&mut self) -> Result<Dispatch, PolicyError> {
        let entry = self.queue.pop_front().ok_or(PolicyError::EmptyQueue)?;
        let slice = self.slots[&entry.pid].slice;
        Ok(Dispatch {
            pid: entry.pid,
            slice,
        })
    }

    /// Charges `ms` of CPU to `pid` and returns what is left of its burst.
    pub fn charge(&mut self, pid: Pid, ms: Millis) -> Result<Millis, PolicyError> {
        let slot = self
            .slots
            .get_mut(&pid)
            .ok_or(PolicyError::UnknownPid(pid))?;
        if ms > slot.remaining {
            return Err(PolicyError::Overrun {
                pid,
                requested: ms,
                remaining: slot.remaining,
            });
        }
        slot.remaining -= ms;
        Ok(slot.remaining)
    }

    /// Puts a preempted process back at the tail.
    pub fn requeue_preempted(&mut self, pid: Pid) -> Result<(), PolicyError> {
        let slot = self.slots.get(&pid).ok_or(PolicyError::UnknownPid(pid))?;
        if slot.remaining == 0 {
            return Err(PolicyError::NothingRemaining(pid));
        }
        if self.queue.iter().any(|e| e.pid == pid) {
            return Err(PolicyError::AlreadyQueued(pid));
        }
        self.queue.push_back(QueueEntry {
            pid,
            burst: slot.spec.burst(),
            cycled: true,
        });
        Ok(())
    }

    pub fn remaining(&self, pid: Pid) -> Option<Millis> {
        self.slots.get(&pid).map(|s| s.remaining)
    }

    pub fn slice_of(&self, pid: Pid) -> Option<Millis> {
        self.slots.get(&pid).map(|s| s.slice)
    }

    pub fn queued(&self) -> impl Iterator<Item = Pid> + '_ {
        self.queue.iter().map(|e| e.pid)
    }

    pub fn is_empty(&self) -> bool {
        self.queue.is_empty()
    }
}
