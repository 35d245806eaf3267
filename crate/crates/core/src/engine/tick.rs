use std::collections::BTreeMap;

use crate::its::compute_its;
use crate::model::{Millis, Pid, Policy, PolicyConfig, ScheduleTrace, Taskset, TimelineSegment};

#[derive(Clone, Copy)]
struct Ready {
    pid: Pid,
    burst: Millis,
    cycled: bool,
}

struct Running {
    pid: Pid,
    dispatch: usize,
    slice_left: Millis,
    overhead_left: Millis,
}

/// Reference simulator: advances the clock 1 ms per step with an explicit
/// slice countdown. Slow, but shares no queue code with [`super::simulate`].
pub fn tick_simulate(taskset: &Taskset, config: &PolicyConfig) -> ScheduleTrace {
    let procs = taskset.processes();
    let slice: BTreeMap<Pid, Millis> = procs
        .iter()
        .map(|p| {
            let s = match config.policy() {
                Policy::Rr | Policy::Srr => config.quantum(),
                Policy::Its => compute_its(p, config).its,
            };
            (p.pid(), s)
        })
        .collect();
    let mut remaining: BTreeMap<Pid, Millis> = procs.iter().map(|p| (p.pid(), p.burst())).collect();

    let mut ready: Vec<Ready> = Vec::new();
    let mut next = 0;
    let admit = |ready: &mut Vec<Ready>, next: &mut usize, t: Millis| {
        while *next < procs.len() && procs[*next].arrival() <= t {
            let p = &procs[*next];
            ready.push(Ready {
                pid: p.pid(),
                burst: p.burst(),
                cycled: false,
            });
            *next += 1;
        }
        if config.policy() == Policy::Srr {
            let (mut fresh, cycled): (Vec<Ready>, Vec<Ready>) =
                ready.drain(..).partition(|r| !r.cycled);
            fresh.sort_by_key(|r| (r.burst, r.pid));
            ready.extend(fresh);
            ready.extend(cycled);
        }
    };

    let mut ticks: Vec<(usize, Pid, Millis)> = Vec::new();
    let mut completions = BTreeMap::new();
    let mut context_switches = 0;
    let mut last_run: Option<Pid> = None;
    let mut dispatches = 0;
    let mut running: Option<Running> = None;
    let mut t: Millis = 0;

    admit(&mut ready, &mut next, t);
    while completions.len() < procs.len() {
        if running.is_none() && !ready.is_empty() {
            let head = ready.remove(0);
            let switched = match last_run {
                None => false,
                Some(prev) => prev != head.pid || config.count_self_redispatch_as_switch(),
            };
            if switched {
                context_switches += 1;
            }
            last_run = Some(head.pid);
            dispatches += 1;
            running = Some(Running {
                pid: head.pid,
                dispatch: dispatches,
                slice_left: slice[&head.pid],
                overhead_left: if switched {
                    config.switch_overhead()
                } else {
                    0
                },
            });
        }

        if let Some(r) = running.as_mut() {
            if r.overhead_left > 0 {
                r.overhead_left -= 1;
            } else {
                ticks.push((r.dispatch, r.pid, t));
                *remaining.get_mut(&r.pid).unwrap() -= 1;
                r.slice_left -= 1;
            }
        }
        t += 1;

        let mut preempted = None;
        if let Some(r) = &running {
            if remaining[&r.pid] == 0 {
                completions.insert(r.pid, t);
                running = None;
            } else if r.slice_left == 0 {
                preempted = Some(r.pid);
                running = None;
            }
        }
        admit(&mut ready, &mut next, t);
        if let Some(pid) = preempted {
            let burst = taskset.get(pid).unwrap().burst();
            ready.push(Ready {
                pid,
                burst,
                cycled: true,
            });
        }
    }

    let mut segments: Vec<TimelineSegment> = Vec::new();
    let mut current = None;
    for (dispatch, pid, at) in ticks {
        match segments.last_mut() {
            Some(seg) if current == Some(dispatch) => seg.end = at + 1,
            _ => {
                segments.push(TimelineSegment {
                    pid,
                    start: at,
                    end: at + 1,
                });
                current = Some(dispatch);
            }
        }
    }
    let mut first_dispatch = BTreeMap::new();
    for seg in &segments {
        first_dispatch.entry(seg.pid).or_insert(seg.start);
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
