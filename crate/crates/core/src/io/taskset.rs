//! Taskset CSV: header `pid,arrival,burst,priority`, one integer row per
//! process. Blank lines are ignored.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use crate::error::{ModelError, ParseError};
use crate::model::{validate_taskset, ProcessSpec, Taskset};

pub const TASKSET_HEADER: &str = "pid,arrival,burst,priority";

pub fn parse_taskset_file(text: &str) -> Result<Taskset, ParseError> {
    let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim()));
    match lines.next() {
        Some((_, header)) if header.replace(' ', "") == TASKSET_HEADER => {}
        Some((_, header)) => return Err(ParseError::Header(header.to_string())),
        None => return Err(ParseError::Header(String::new())),
    }

    let mut specs = Vec::new();
    let mut seen = BTreeSet::new();
    for (line, row) in lines {
        if row.is_empty() {
            continue;
        }
        let fields: Vec<&str> = row.split(',').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(ParseError::Malformed {
                line,
                reason: format!("expected 4 fields, found {}", fields.len()),
            });
        }
        let mut values = [0i64; 4];
        for (slot, (name, raw)) in values
            .iter_mut()
            .zip(["pid", "arrival", "burst", "priority"].iter().zip(&fields))
        {
            *slot = raw.parse().map_err(|_| ParseError::Malformed {
                line,
                reason: format!("{name} {raw:?} is not an integer"),
            })?;
        }
        let spec = ProcessSpec::new(values[0], values[1], values[2], values[3])
            .map_err(|source| ParseError::Invalid { line, source })?;
        if !seen.insert(spec.pid()) {
            return Err(ParseError::Invalid {
                line,
                source: ModelError::DuplicatePid(spec.pid()),
            });
        }
        specs.push(spec);
    }
    // Duplicates were rejected per line above.
    Ok(validate_taskset(specs).expect("pids are unique"))
}

pub fn emit_taskset(taskset: &Taskset) -> String {
    let mut out = String::from(TASKSET_HEADER);
    out.push('\n');
    for p in taskset {
        let _ = writeln!(
            out,
            "{},{},{},{}",
            p.pid().get(),
            p.arrival(),
            p.burst(),
            p.priority()
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Pid;

    const TABLE: &str =
        "pid,arrival,burst,priority\n1,0,25,2\n2,0,5,3\n3,0,15,1\n4,0,8,2\n5,0,10,1\n";

    #[test]
    fn parses_table() {
        let ts = parse_taskset_file(TABLE).unwrap();
        assert_eq!(ts.len(), 5);
        let p1 = ts.get(Pid::new(1).unwrap()).unwrap();
        assert_eq!((p1.burst(), p1.priority()), (25, 2));
        assert_eq!(emit_taskset(&ts), TABLE);
    }

    #[test]
    fn header_only_is_empty() {
        assert!(parse_taskset_file("pid,arrival,burst,priority\n")
            .unwrap()
            .is_empty());
    }

    #[test]
    fn negative_burst_reports_line() {
        let err = parse_taskset_file("pid,arrival,burst,priority\n1,0,-5,2\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                line: 2,
                source: ModelError::NonPositiveBurst { .. }
            }
        ));
        assert!(err.to_string().starts_with("line 2:"), "{err}");
    }

    #[test]
    fn header_mismatch() {
        assert!(matches!(
            parse_taskset_file("id,burst\n1,2\n"),
            Err(ParseError::Header(_))
        ));
        assert!(matches!(parse_taskset_file(""), Err(ParseError::Header(_))));
    }

    #[test]
    fn malformed_rows() {
        let err = parse_taskset_file("pid,arrival,burst,priority\n1,0,5\n").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 2, .. }));
        let err =
            parse_taskset_file("pid,arrival,burst,priority\n1,0,5,2\n\n2,x,5,2\n").unwrap_err();
        assert!(matches!(err, ParseError::Malformed { line: 4, .. }));
    }

    #[test]
    fn duplicate_reports_second_line() {
        let err = parse_taskset_file("pid,arrival,burst,priority\n3,0,5,2\n3,1,5,2\n").unwrap_err();
        assert!(matches!(
            err,
            ParseError::Invalid {
                line: 3,
                source: ModelError::DuplicatePid(_)
            }
        ));
    }
}
