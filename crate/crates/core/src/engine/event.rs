use std::collections::BTreeMap;

use crate::model::{Millis, Pid, PolicyConfig, ScheduleTrace, Taskset, TimelineSegment};
use crate::policy::PolicyState;

/// Runs `taskset` under `config` and returns the full trace.
pub fn simulate(taskset: &Taskset, config: &PolicyConfig) -> ScheduleTrace {
    let procs = taskset.processes();
    let mut state = PolicyState::new(config);
    let mut segments = Vec::new();
    let mut completions = BTreeMap::new();
    let mut first_dispatch = BTreeMap::new();
    let mut context_switches = 0;
    let mut last_run: Option<Pid> = None;
    let mut next_arrival = 0;
    let mut now: Millis = 0;

    let admit_until = |state: &mut PolicyState, next: &mut usize, t: Millis| {
        while *next < procs.len() && procs[*next].arrival() <= t {
            state
                .admit(&procs[*next])
                .expect("validated taskset admits each pid once");
            *next += 1;
        }
    };

    loop {
        admit_until(&mut state, &mut next_arrival, now);
        if state.is_empty() {
            match procs.get(next_arrival) {
                Some(p) => {
                    now = now.max(p.arrival());
                    continue;
                }
                None => break,
            }
        }

        let dispatch = state.next_dispatch().expect("queue is non-empty");
        let pid = dispatch.pid;
        let switched = match last_run {
            None => false,
            Some(prev) if prev == pid => config.count_self_redispatch_as_switch(),
            Some(_) => true,
        };
        if switched {
            context_switches += 1;
            now += config.switch_overhead();
        }
        last_run = Some(pid);

        let remaining = state.remaining(pid).expect("dispatched pid was admitted");
        let run = dispatch.slice.min(remaining);
        let start = now;
        now += run;
        segments.push(TimelineSegment {
            pid,
            start,
            end: now,
        });
        first_dispatch.entry(pid).or_insert(start);

        let left = state.charge(pid, run).expect("run never exceeds remaining");
        if left == 0 {
            completions.insert(pid, now);
            admit_until(&mut state, &mut next_arrival, now);
        } else {
            admit_until(&mut state, &mut next_arrival, now);
            state
                .requeue_preempted(pid)
                .expect("preempted process has work left");
        }
    }

    ScheduleTrace {
        config: config.clone(),
        taskset: taskset.clone(),
        segments,
        completions,
        first_dispatch,
        context_switches,
    }
}
