//! Deterministic simulator for three round-robin family CPU schedulers:
//!
//! * classic round robin (FCFS ready queue, fixed quantum),
//! * shortest round robin (admission sorted by declared burst),
//! * intelligent time slice round robin (per-process slice built from a
//!   priority component, a shortness component and a context switch
//!   component, see [`its`]).
//!
//! ```
//! use rrsched::{compute_metrics, simulate, validate_taskset, Policy, PolicyConfig, ProcessSpec};
//!
//! let taskset = validate_taskset(vec![
//!     ProcessSpec::new(1, 0, 25, 2).unwrap(),
//!     ProcessSpec::new(2, 0, 5, 3).unwrap(),
//! ])
//! .unwrap();
//! let trace = simulate(&taskset, &PolicyConfig::new(Policy::Its, 4).unwrap());
//! let report = compute_metrics(&trace).unwrap();
//! assert_eq!(report.makespan, 30);
//! ```

pub mod cli;
pub mod engine;
pub mod error;
pub mod io;
pub mod its;
pub mod metrics;
pub mod model;
pub mod policy;
pub mod workload;

pub use engine::{simulate, tick_simulate};
pub use error::{MetricsError, ModelError, ParseError, PolicyError, WorkloadError};
pub use its::compute_its;
pub use metrics::{compare, compute_metrics, ComparisonTable, MetricsReport, Rational};
pub use model::{
    validate_taskset, ItsBreakdown, Millis, Pid, Policy, PolicyConfig, ProcessSpec, ScheduleTrace,
    Taskset, TimelineSegment,
};
pub use workload::{generate_taskset, WorkloadSpec};
