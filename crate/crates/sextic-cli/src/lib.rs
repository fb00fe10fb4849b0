//! Scenario runner for the `sextic` command line tool: loads a scenario,
//! executes its commands in order and assembles a deterministic text report.

pub mod commands;
pub mod scenario;

pub use commands::{parse_command, Command, Options, Section, Session, Status};
pub use scenario::{load, LoadError, Scenario};

/// Exit code and report of one run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub report: String,
}

/// Run the scenario given as text.
pub fn run_text(text: &str, options: &Options) -> Outcome {
    let mut report = String::new();
    report.push_str(&format!("seed {}\n", options.seed));
    report.push_str(&format!("strict {}\n", if options.strict { "yes" } else { "no" }));
    let scenario = match load(text, options.strict) {
        Ok(s) => s,
        Err(e) => {
            report.push_str(&format!("{}\n", e));
            return Outcome { code: e.exit_code(), report };
        }
    };
    for f in &scenario.ignored_facts {
        report.push_str(&format!("assumed fact ignored in strict mode: {}\n", f));
    }
    let mut parsed = Vec::new();
    for (i, line) in scenario.commands.iter().enumerate() {
        match parse_command(line) {
            Ok(c) => parsed.push(c),
            Err(e) => {
                report.push_str(&format!("parse error: command {} '{}': {}\n", i + 1, line, e));
                return Outcome { code: 2, report };
            }
        }
    }
    let mut session = Session::new(&scenario, options);
    let (mut errors, mut blocked) = (0, 0);
    for (i, (line, cmd)) in scenario.commands.iter().zip(&parsed).enumerate() {
        let sec = session.execute(cmd);
        report.push_str(&format!("== {}. {}\n", i + 1, line.split_whitespace().collect::<Vec<_>>().join(" ")));
        for l in &sec.lines {
            report.push_str(&format!("{}\n", l));
        }
        if sec.assumed.is_empty() {
            report.push_str("assumed facts relied upon: none\n");
        } else {
            report.push_str("assumed facts relied upon:\n");
            for a in &sec.assumed {
                report.push_str(&format!("  {}\n", a));
            }
        }
        match &sec.status {
            Status::Ok => report.push_str("status ok\n"),
            Status::Error(e) => {
                errors += 1;
                report.push_str(&format!("status error: {}\n", e));
            }
            Status::Blocked(b) => {
                blocked += 1;
                report.push_str(&format!("status blocked in strict mode: {}\n", b));
            }
        }
    }
    let code = if errors > 0 {
        3
    } else if blocked > 0 {
        4
    } else {
        0
    };
    Outcome { code, report }
}

/// Run a scenario file; an unreadable file is a parse error.
pub fn run_file(path: &std::path::Path, options: &Options) -> Outcome {
    match std::fs::read_to_string(path) {
        Ok(text) => run_text(&text, options),
        Err(e) => Outcome { code: 2, report: format!("parse error: cannot read {}: {}\n", path.display(), e) },
    }
}
