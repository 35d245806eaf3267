//! Fixed-width text Gantt chart.
//!
//! One lane. Each dispatch is a cell `|P<pid>` padded to at least its
//! length in ms; idle gaps show as `|-`. The line below carries the start
//! time of every cell and the final end time.
//!
//! ```text
//! |P1  |P2  |P3  |P4  |P5  |
//! 0    4    8    12   16   20
//! ```

use crate::model::ScheduleTrace;

pub fn emit_gantt(trace: &ScheduleTrace) -> String {
    let mut cells: Vec<(String, u64)> = Vec::new();
    let mut clock = 0;
    let mut end = 0;
    for seg in &trace.segments {
        if seg.start > clock {
            cells.push(("-".to_string(), clock));
        }
        cells.push((format!("P{}", seg.pid.get()), seg.start));
        clock = seg.end;
        end = seg.end;
    }

    let mut bars = String::new();
    let mut axis = String::new();
    let mut starts = cells.iter().map(|c| c.1).skip(1).chain([end]);
    for (label, start) in &cells {
        let next = starts.next().unwrap_or(end);
        let stamp = start.to_string();
        let width = ((next - start) as usize).max(label.len()).max(stamp.len());
        bars.push('|');
        bars.push_str(&format!("{label:<width$}"));
        axis.push_str(&format!("{stamp:<w$}", w = width + 1));
    }
    bars.push('|');
    axis.push_str(&end.to_string());
    format!("{bars}\n{axis}\n")
}
