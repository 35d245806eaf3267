//! File formats and text renderings.

mod gantt;
mod report;
mod taskset;

pub use gantt::emit_gantt;
pub use report::{emit_comparison_json, emit_trace, TraceFormat};
pub use taskset::{emit_taskset, parse_taskset_file, TASKSET_HEADER};
