//! Simulation drivers.
//!
//! [`simulate`] jumps from event to event (arrival, slice expiry,
//! completion). [`tick_simulate`] walks the clock one millisecond at a time
//! with its own ready list and serves as a reference: both must produce the
//! same trace for every input.
//!
//! Ordering at a single instant: completions, then arrivals, then the
//! requeue of a preempted process, then the next dispatch. A context switch
//! is counted whenever the dispatched pid differs from the last pid that ran
//! (the very first dispatch is not a switch). Redispatching the same pid
//! counts only when the config asks for it.

mod event;
mod tick;

pub use event::simulate;
pub use tick::tick_simulate;
