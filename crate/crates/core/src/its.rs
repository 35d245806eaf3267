//! Intelligent time slice computation.
//!
//! Each process gets its own slice once, at admission:
//!
//! ```text
//! its = ots + pc + sc + csc
//! cc  = ots + pc + sc
//! balance = burst - cc
//! csc = balance   if 0 < balance < ots
//!       0         otherwise
//! ```
//!
//! `pc` comes from the configured priority table and `sc` is a 1 ms bonus for
//! bursts shorter than the configured threshold. A positive `csc` stretches
//! the slice to exactly the declared burst, so that process finishes in one
//! dispatch instead of being preempted with a short remainder.

use crate::model::{ItsBreakdown, Millis, PolicyConfig, ProcessSpec};

/// Priority component. Priorities missing from the table get 0.
pub fn priority_component(priority: u32, config: &PolicyConfig) -> Millis {
    config.pc_map().get(&priority).copied().unwrap_or(0)
}

/// Shortness component: 1 ms when `burst` is below the threshold, capped so
/// it always stays strictly below the burst.
pub fn shortness_component(burst: Millis, config: &PolicyConfig) -> Millis {
    if burst < config.sc_threshold() {
        1.min(burst.saturating_sub(1))
    } else {
        0
    }
}

/// Returns `(balance, csc)` for a process with declared `burst` and computed
/// component `cc`.
pub fn context_switch_component(burst: Millis, cc: Millis, config: &PolicyConfig) -> (i64, Millis) {
    let balance = burst as i64 - cc as i64;
    let csc = if balance > 0 && (balance as Millis) < config.quantum() {
        balance as Millis
    } else {
        0
    };
    (balance, csc)
}

pub fn compute_its(proc: &ProcessSpec, config: &PolicyConfig) -> ItsBreakdown {
    let ots = config.quantum();
    let pc = priority_component(proc.priority(), config);
    let sc = shortness_component(proc.burst(), config);
    let cc = ots + pc + sc;
    let (balance, csc) = context_switch_component(proc.burst(), cc, config);
    ItsBreakdown {
        pid: proc.pid(),
        ots,
        pc,
        sc,
        cc,
        balance,
        csc,
        its: cc + csc,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Policy;

    fn cfg() -> PolicyConfig {
        PolicyConfig::new(Policy::Its, 4).unwrap()
    }

    fn proc(pid: i64, burst: i64, priority: i64) -> ProcessSpec {
        ProcessSpec::new(pid, 0, burst, priority).unwrap()
    }

    #[test]
    fn priority_component_default_table() {
        assert_eq!(priority_component(1, &cfg()), 1);
        assert_eq!(priority_component(2, &cfg()), 0);
        assert_eq!(priority_component(99, &cfg()), 0);
    }

    #[test]
    fn shortness_component_threshold() {
        assert_eq!(shortness_component(5, &cfg()), 1);
        assert_eq!(shortness_component(10, &cfg()), 0);
        assert_eq!(shortness_component(8, &cfg()), 1);
        // capped below the burst
        assert_eq!(shortness_component(1, &cfg()), 0);
    }

    #[test]
    fn context_switch_component_cases() {
        assert_eq!(context_switch_component(8, 5, &cfg()), (3, 3));
        assert_eq!(context_switch_component(5, 5, &cfg()), (0, 0));
        assert_eq!(context_switch_component(25, 4, &cfg()), (21, 0));
        assert_eq!(context_switch_component(3, 5, &cfg()), (-2, 0));
        // balance equal to the quantum is not a context switch component
        assert_eq!(context_switch_component(9, 5, &cfg()), (4, 0));
    }

    #[test]
    fn breakdown_rows() {
        let row = |pid, burst, prio| {
            let b = compute_its(&proc(pid, burst, prio), &cfg());
            (b.pc, b.sc, b.cc, b.balance, b.csc, b.its)
        };
        assert_eq!(row(4, 8, 2), (0, 1, 5, 3, 3, 8));
        assert_eq!(row(3, 15, 1), (1, 0, 5, 10, 0, 5));
        assert_eq!(row(1, 25, 2), (0, 0, 4, 21, 0, 4));
        assert_eq!(row(2, 5, 3), (0, 1, 5, 0, 0, 5));
        assert_eq!(row(5, 10, 1), (1, 0, 5, 5, 0, 5));
    }
}
