//! Command-line front end.
//!
//! Exit statuses:
//!
//! | status | meaning                                            |
//! |--------|----------------------------------------------------|
//! | 0      | success                                            |
//! | 2      | usage error (unknown flag, bad flag value)         |
//! | 3      | taskset file could not be read                     |
//! | 4      | taskset file failed to parse or validate           |
//! | 5      | invalid scheduler or generator parameters          |

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::engine::{simulate, tick_simulate};
use crate::io::{
    emit_comparison_json, emit_gantt, emit_taskset, emit_trace, parse_taskset_file, TraceFormat,
};
use crate::metrics::{compare, compute_metrics, ReferenceValues};
use crate::model::{Millis, Policy, PolicyConfig, Taskset};
use crate::workload::{generate_taskset, WorkloadSpec};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;
pub const EXIT_TASKSET: i32 = 4;
pub const EXIT_CONFIG: i32 = 5;

#[derive(Parser, Debug)]
#[command(
    name = "rrsched",
    version,
    about = "Round-robin family CPU scheduling simulator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Simulate one policy on a taskset file
    Run {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "rr")]
        policy: PolicyArg,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: RunFormat,
        /// Use the 1 ms tick reference simulator
        #[arg(long)]
        oracle: bool,
    },
    /// Simulate all three policies and tabulate the results
    Compare {
        file: PathBuf,
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long, value_enum, default_value = "table")]
        format: CompareFormat,
        /// Reference integer averages, e.g. "rr:31:44,its:25:37" (policy:waiting:turnaround)
        #[arg(long)]
        reference: Option<String>,
    },
    /// Generate a random taskset in CSV form
    Gen {
        #[arg(long, default_value_t = 10)]
        count: usize,
        #[arg(long, default_value_t = 1)]
        burst_min: Millis,
        #[arg(long, default_value_t = 50)]
        burst_max: Millis,
        #[arg(long, default_value_t = 1)]
        priority_min: u32,
        #[arg(long, default_value_t = 5)]
        priority_max: u32,
        #[arg(long, default_value_t = 0)]
        arrival_min: Millis,
        #[arg(long, default_value_t = 100)]
        arrival_max: Millis,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Check a taskset file
    Validate { file: PathBuf },
}

#[derive(Args, Debug)]
struct ConfigArgs {
    /// Original time slice in ms
    #[arg(long, default_value_t = 4)]
    quantum: Millis,
    /// Bursts below this get a 1 ms shortness component
    #[arg(long, default_value_t = crate::model::DEFAULT_SC_THRESHOLD)]
    sc_threshold: Millis,
    /// Priority component table, e.g. "1:1,2:0"
    #[arg(long)]
    pc_map: Option<String>,
    /// Time charged for every context switch
    #[arg(long, default_value_t = 0)]
    switch_overhead: Millis,
    /// Count redispatching the same process as a context switch
    #[arg(long)]
    count_self_switch: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PolicyArg {
    Rr,
    Srr,
    Its,
}

impl From<PolicyArg> for Policy {
    fn from(p: PolicyArg) -> Self {
        match p {
            PolicyArg::Rr => Policy::Rr,
            PolicyArg::Srr => Policy::Srr,
            PolicyArg::Its => Policy::Its,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum RunFormat {
    Json,
    Csv,
    Gantt,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CompareFormat {
    Table,
    Json,
}

struct Failure {
    status: i32,
    message: String,
}

fn fail(status: i32, message: impl std::fmt::Display) -> Failure {
    Failure {
        status,
        message: message.to_string(),
    }
}

/// Splits `"a:b,c:d"` into `[["a", "b"], ["c", "d"]]`.
fn parse_pairs(text: &str, what: &str) -> Result<Vec<Vec<String>>, Failure> {
    let items: Vec<Vec<String>> = text
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|item| item.split(':').map(|s| s.trim().to_string()).collect())
        .collect();
    if items.is_empty() {
        return Err(fail(EXIT_CONFIG, format!("empty {what}")));
    }
    Ok(items)
}

fn parse_pc_map(text: &str) -> Result<BTreeMap<u32, Millis>, Failure> {
    let mut map = BTreeMap::new();
    for item in parse_pairs(text, "--pc-map")? {
        let bad = || {
            fail(
                EXIT_CONFIG,
                format!("bad --pc-map entry {:?}", item.join(":")),
            )
        };
        let [prio, pc] = item.as_slice() else {
            return Err(bad());
        };
        let prio: u32 = prio.parse().map_err(|_| bad())?;
        let pc: Millis = pc.parse().map_err(|_| bad())?;
        map.insert(prio, pc);
    }
    Ok(map)
}

fn parse_reference(text: &str) -> Result<Vec<(Policy, ReferenceValues)>, Failure> {
    parse_pairs(text, "--reference")?
        .into_iter()
        .map(|item| {
            let bad = || {
                fail(
                    EXIT_CONFIG,
                    format!("bad --reference entry {:?}", item.join(":")),
                )
            };
            let [policy, waiting, turnaround] = item.as_slice() else {
                return Err(bad());
            };
            Ok((
                policy.parse::<Policy>().map_err(|_| bad())?,
                ReferenceValues {
                    avg_waiting: waiting.parse().map_err(|_| bad())?,
                    avg_turnaround: turnaround.parse().map_err(|_| bad())?,
                },
            ))
        })
        .collect()
}

impl ConfigArgs {
    fn build(&self, policy: Policy) -> Result<PolicyConfig, Failure> {
        let config_err = |e| fail(EXIT_CONFIG, e);
        let mut cfg = PolicyConfig::new(policy, self.quantum)
            .and_then(|c| c.with_sc_threshold(self.sc_threshold))
            .map_err(config_err)?;
        if let Some(text) = &self.pc_map {
            cfg = cfg.with_pc_map(parse_pc_map(text)?).map_err(config_err)?;
        }
        Ok(cfg
            .with_switch_overhead(self.switch_overhead)
            .with_self_redispatch_as_switch(self.count_self_switch))
    }
}

fn load(path: &Path) -> Result<Taskset, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    parse_taskset_file(&text).map_err(|e| fail(EXIT_TASKSET, format!("{}: {e}", path.display())))
}

fn execute(command: Command) -> Result<String, Failure> {
    match command {
        Command::Run {
            file,
            policy,
            config,
            format,
            oracle,
        } => {
            let cfg = config.build(policy.into())?;
            let taskset = load(&file)?;
            let trace = if oracle {
                tick_simulate(&taskset, &cfg)
            } else {
                simulate(&taskset, &cfg)
            };
            let metrics = compute_metrics(&trace).map_err(|e| fail(EXIT_TASKSET, e))?;
            Ok(match format {
                RunFormat::Json => emit_trace(&trace, &metrics, TraceFormat::Json),
                RunFormat::Csv => emit_trace(&trace, &metrics, TraceFormat::Csv),
                RunFormat::Gantt => emit_gantt(&trace),
            })
        }
        Command::Compare {
            file,
            config,
            format,
            reference,
        } => {
            let configs = Policy::ALL
                .iter()
                .map(|&p| config.build(p))
                .collect::<Result<Vec<_>, _>>()?;
            let references = reference.as_deref().map(parse_reference).transpose()?;
            let taskset = load(&file)?;
            let reports = std::thread::scope(|s| {
                let handles: Vec<_> = configs
                    .iter()
                    .map(|cfg| {
                        let taskset = &taskset;
                        s.spawn(move || {
                            compute_metrics(&simulate(taskset, cfg)).map(|m| (cfg.policy(), m))
                        })
                    })
                    .collect();
                handles
                    .into_iter()
                    .map(|h| h.join().expect("simulation thread panicked"))
                    .collect::<Result<Vec<_>, _>>()
            })
            .map_err(|e| fail(EXIT_TASKSET, e))?;
            let mut table = compare(&reports).map_err(|e| fail(EXIT_TASKSET, e))?;
            for (policy, values) in references.unwrap_or_default() {
                table = table.with_reference(policy, values);
            }
            Ok(match format {
                CompareFormat::Table => table.render_text(),
                CompareFormat::Json => emit_comparison_json(&table),
            })
        }
        Command::Gen {
            count,
            burst_min,
            burst_max,
            priority_min,
            priority_max,
            arrival_min,
            arrival_max,
            seed,
        } => {
            let spec = WorkloadSpec {
                n: count,
                burst: burst_min..=burst_max,
                priority: priority_min..=priority_max,
                arrival: arrival_min..=arrival_max,
            };
            let taskset = generate_taskset(&spec, seed).map_err(|e| fail(EXIT_CONFIG, e))?;
            Ok(emit_taskset(&taskset))
        }
        Command::Validate { file } => {
            let taskset = load(&file)?;
            Ok(format!(
                "ok: {} processes, total burst {} ms\n",
                taskset.len(),
                taskset.total_burst()
            ))
        }
    }
}

/// Runs the CLI with `args` (including the program name), writing results to
/// `out` and diagnostics to `err`. Returns the process exit status.
pub fn cli_main<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = err.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = out.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match execute(cli.command) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.status
        }
    }
}
