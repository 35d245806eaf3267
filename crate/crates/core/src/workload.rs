//! Seeded synthetic tasksets.
//!
//! The generator is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. For pid 1..=n, in order, it draws arrival, then
//! burst, then priority, each uniformly from its inclusive range with
//! `Rng::gen_range`. Changing any of this changes every stored corpus, so
//! don't.

use std::ops::RangeInclusive;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::WorkloadError;
use crate::model::{validate_taskset, Millis, ProcessSpec, Taskset};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WorkloadSpec {
    pub n: usize,
    pub burst: RangeInclusive<Millis>,
    pub priority: RangeInclusive<u32>,
    pub arrival: RangeInclusive<Millis>,
}

impl Default for WorkloadSpec {
    fn default() -> Self {
        WorkloadSpec {
            n: 10,
            burst: 1..=50,
            priority: 1..=5,
            arrival: 0..=100,
        }
    }
}

fn check(what: &'static str, lo: u64, hi: u64) -> Result<(), WorkloadError> {
    if lo > hi {
        Err(WorkloadError::InvalidRange { what, lo, hi })
    } else {
        Ok(())
    }
}

pub fn generate_taskset(spec: &WorkloadSpec, seed: u64) -> Result<Taskset, WorkloadError> {
    let (b_lo, b_hi) = (*spec.burst.start(), *spec.burst.end());
    let (p_lo, p_hi) = (*spec.priority.start(), *spec.priority.end());
    let (a_lo, a_hi) = (*spec.arrival.start(), *spec.arrival.end());
    check("burst", b_lo, b_hi)?;
    check("priority", p_lo as u64, p_hi as u64)?;
    check("arrival", a_lo, a_hi)?;
    if b_lo < 1 {
        return Err(WorkloadError::InvalidRange {
            what: "burst",
            lo: b_lo,
            hi: b_hi,
        });
    }
    if p_lo < 1 {
        return Err(WorkloadError::InvalidRange {
            what: "priority",
            lo: p_lo as u64,
            hi: p_hi as u64,
        });
    }
    // Fields pass through i64 in the process constructor.
    if b_hi > i64::MAX as u64 || a_hi > i64::MAX as u64 {
        return Err(WorkloadError::InvalidRange {
            what: "burst/arrival",
            lo: 0,
            hi: u64::MAX,
        });
    }
    if spec.n > u32::MAX as usize {
        return Err(WorkloadError::TooManyProcesses(spec.n));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let procs = (1..=spec.n)
        .map(|pid| {
            let arrival = rng.gen_range(a_lo..=a_hi);
            let burst = rng.gen_range(b_lo..=b_hi);
            let priority = rng.gen_range(p_lo..=p_hi);
            ProcessSpec::new(pid as i64, arrival as i64, burst as i64, priority as i64)
                .expect("ranges were checked")
        })
        .collect();
    Ok(validate_taskset(procs).expect("pids are 1..=n"))
}
