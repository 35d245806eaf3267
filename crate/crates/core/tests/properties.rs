mod common;

use std::collections::BTreeMap;

use proptest::prelude::*;
use rrsched::io::{emit_taskset, parse_taskset_file};
use rrsched::{
    compute_its, compute_metrics, simulate, tick_simulate, validate_taskset, Policy, PolicyConfig,
    ProcessSpec, Taskset,
};

fn taskset_strategy(max_n: usize) -> impl Strategy<Value = Taskset> {
    prop::collection::vec((0i64..=100, 1i64..=50, 1i64..=5), 0..=max_n).prop_map(|rows| {
        let specs = rows
            .into_iter()
            .enumerate()
            .map(|(i, (a, b, p))| ProcessSpec::new(i as i64 + 1, a, b, p).unwrap())
            .collect();
        validate_taskset(specs).unwrap()
    })
}

fn pc_map_strategy() -> impl Strategy<Value = BTreeMap<u32, u64>> {
    // Non-increasing values for priorities 1..=k.
    prop::collection::vec(0u64..=4, 0..=5).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v.into_iter()
            .enumerate()
            .map(|(i, pc)| (i as u32 + 1, pc))
            .collect()
    })
}

fn config_strategy() -> impl Strategy<Value = PolicyConfig> {
    (
        prop::sample::select(Policy::ALL.to_vec()),
        1u64..=12,
        1u64..=30,
        pc_map_strategy(),
        any::<bool>(),
    )
        .prop_map(|(policy, q, sc, pc, self_switch)| {
            PolicyConfig::new(policy, q)
                .unwrap()
                .with_sc_threshold(sc)
                .unwrap()
                .with_pc_map(pc)
                .unwrap()
                .with_self_redispatch_as_switch(self_switch)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn engine_matches_tick_oracle(ts in taskset_strategy(15), cfg in config_strategy()) {
        let trace = simulate(&ts, &cfg);
        prop_assert_eq!(&trace, &tick_simulate(&ts, &cfg));
        prop_assert_eq!(trace.verify(), Ok(()));
        let report = compute_metrics(&trace).unwrap();
        prop_assert_eq!(common::check_metrics(&trace, &report), Ok(()));
    }

    #[test]
    fn engine_matches_oracle_with_overhead(ts in taskset_strategy(10), cfg in config_strategy(), oh in 1u64..=3) {
        let cfg = cfg.with_switch_overhead(oh);
        let trace = simulate(&ts, &cfg);
        prop_assert_eq!(&trace, &tick_simulate(&ts, &cfg));
        prop_assert_eq!(trace.verify(), Ok(()));
    }

    #[test]
    fn segments_never_exceed_slice(ts in taskset_strategy(15), cfg in config_strategy()) {
        let trace = simulate(&ts, &cfg);
        for seg in &trace.segments {
            let p = ts.get(seg.pid).unwrap();
            let slice = match cfg.policy() {
                Policy::Its => compute_its(p, &cfg).its,
                _ => cfg.quantum(),
            };
            prop_assert!(seg.duration() <= slice);
            if seg.duration() < slice {
                prop_assert_eq!(trace.completions[&seg.pid], seg.end);
            }
        }
    }

    #[test]
    fn its_breakdown_invariants(burst in 1i64..=500, prio in 1i64..=8, cfg in config_strategy()) {
        let p = ProcessSpec::new(1, 0, burst, prio).unwrap();
        let b = compute_its(&p, &cfg);
        prop_assert_eq!(b.cc, b.ots + b.pc + b.sc);
        prop_assert_eq!(b.its, b.cc + b.csc);
        prop_assert!(b.its >= b.ots);
        prop_assert!(b.csc < b.ots);
        prop_assert!(b.sc < p.burst());
        if b.csc > 0 {
            prop_assert_eq!(b.its, p.burst());
        }
    }

    #[test]
    fn higher_priority_never_shrinks_slice(burst in 1i64..=200, prio in 2i64..=6, q in 1u64..=10) {
        let cfg = PolicyConfig::new(Policy::Its, q).unwrap();
        let lower = compute_its(&ProcessSpec::new(1, 0, burst, prio).unwrap(), &cfg);
        let higher = compute_its(&ProcessSpec::new(1, 0, burst, prio - 1).unwrap(), &cfg);
        prop_assert!(higher.its >= lower.its);
    }

    #[test]
    fn taskset_csv_round_trip(ts in taskset_strategy(30)) {
        prop_assert_eq!(parse_taskset_file(&emit_taskset(&ts)).unwrap(), ts);
    }

    #[test]
    fn averages_invariant_under_relabeling(ts in taskset_strategy(12), cfg in config_strategy()) {
        // Shifting every pid by a constant keeps tie order intact.
        let shifted = validate_taskset(
            ts.iter()
                .map(|p| ProcessSpec::new(p.pid().get() as i64 + 1000, p.arrival() as i64, p.burst() as i64, p.priority() as i64).unwrap())
                .collect(),
        ).unwrap();
        let a = compute_metrics(&simulate(&ts, &cfg)).unwrap();
        let b = compute_metrics(&simulate(&shifted, &cfg)).unwrap();
        prop_assert_eq!(a.avg_waiting, b.avg_waiting);
        prop_assert_eq!(a.avg_turnaround, b.avg_turnaround);
    }

    #[test]
    fn rr_serves_ready_processes_once_between_turns(ts in taskset_strategy(10), q in 1u64..=6) {
        let cfg = PolicyConfig::new(Policy::Rr, q).unwrap();
        let trace = simulate(&ts, &cfg);
        let segs = &trace.segments;
        for (i, seg) in segs.iter().enumerate() {
            let Some(j) = segs[i + 1..].iter().position(|s| s.pid == seg.pid).map(|k| i + 1 + k) else {
                continue;
            };
            let between = &segs[i + 1..j];
            for other in &ts {
                let o = other.pid();
                if o == seg.pid {
                    continue;
                }
                // continuously ready over the whole gap: arrived by seg.end and not done before segs[j].start
                let ready = other.arrival() <= seg.end && trace.completions[&o] > segs[j].start;
                if ready {
                    let count = between.iter().filter(|s| s.pid == o).count();
                    prop_assert_eq!(count, 1, "{} served {} times between turns of {}", o, count, seg.pid);
                }
            }
        }
    }

    #[test]
    fn srr_first_cycle_ascending(bursts in prop::collection::btree_set(1i64..=60, 1..=10), q in 1u64..=6) {
        let specs = bursts
            .iter()
            .rev()
            .enumerate()
            .map(|(i, &b)| ProcessSpec::new(i as i64 + 1, 0, b, 1).unwrap())
            .collect();
        let ts = validate_taskset(specs).unwrap();
        let trace = simulate(&ts, &PolicyConfig::new(Policy::Srr, q).unwrap());
        let mut first_order = Vec::new();
        for seg in &trace.segments {
            if !first_order.contains(&seg.pid) {
                first_order.push(seg.pid);
            }
        }
        let order: Vec<i64> = first_order.iter().map(|p| ts.get(*p).unwrap().burst() as i64).collect();
        let sorted: Vec<i64> = bursts.iter().copied().collect();
        prop_assert_eq!(order, sorted);
    }

    #[test]
    fn replay_is_identical(ts in taskset_strategy(15), cfg in config_strategy()) {
        prop_assert_eq!(simulate(&ts, &cfg), simulate(&ts, &cfg));
    }
}
