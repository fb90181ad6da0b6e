mod args;
mod commands;
mod output;

use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Value};

use args::{Cli, Command, Format};
use commands::Outcome;

fn config_and_name(cmd: &Command) -> (&'static str, Value) {
    fn v<T: serde::Serialize>(t: &T) -> Value {
        serde_json::to_value(t).expect("arguments serialize")
    }
    match cmd {
        Command::Eval(a) => ("eval", v(a)),
        Command::Dderiv(a) => ("dderiv", v(a)),
        Command::Divisor(a) => ("divisor", v(a)),
        Command::CheckDivEq(a) => ("check-div-eq", v(a)),
        Command::Linearize(a) => ("linearize", v(a)),
        Command::RealizationEval(a) => ("realization-eval", v(a)),
        Command::DetRatio(a) => ("det-ratio", v(a)),
        Command::DivisorSplit(a) => ("divisor-split", v(a)),
        Command::GenPath(a) => ("gen-path", v(a)),
        Command::Concat(a) => ("concat", v(a)),
        Command::Continue(a) => ("continue", v(a)),
        Command::LoopPhi(a) => ("loop-phi", v(a)),
        Command::Quantize(a) => ("quantize", v(a)),
        Command::Integrality(a) => ("integrality", v(a)),
        Command::TraceEquiv(a) => ("trace-equiv", v(a)),
        Command::Suite(a) => ("suite", v(a)),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // clap already uses 2 for usage errors and 0 for --help
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let seed = cli.global.seed;
    let (name, config) = config_and_name(&cli.command);
    let mut suite_lines = Vec::new();
    let outcome = match &cli.command {
        Command::Eval(a) => commands::eval(a),
        Command::Dderiv(a) => commands::dderiv(a),
        Command::Divisor(a) => commands::divisor(a),
        Command::CheckDivEq(a) => commands::check_div_eq(a, seed),
        Command::Linearize(a) => commands::linearize(a, seed),
        Command::RealizationEval(a) => commands::realization_eval(a, seed),
        Command::DetRatio(a) => commands::det_ratio(a, seed),
        Command::DivisorSplit(a) => commands::divisor_split(a, seed),
        Command::GenPath(a) => commands::gen_path(a),
        Command::Concat(a) => commands::concat(a),
        Command::Continue(a) => commands::continue_germ(a),
        Command::LoopPhi(a) => commands::loop_phi(a),
        Command::Quantize(a) => commands::quantize(a),
        Command::Integrality(a) => commands::integrality(a),
        Command::TraceEquiv(a) => commands::trace_equiv(a),
        Command::Suite(a) => commands::run_suite(a, seed).map(|(o, lines)| {
            suite_lines = lines;
            o
        }),
    };

    let mut report = json!({ "command": name, "config": config, "seed": seed });
    let code = match outcome {
        Ok(Outcome { raw: Some(doc), .. }) => {
            emit(&doc, cli.global.format, &[]);
            return ExitCode::SUCCESS;
        }
        Ok(Outcome { result, passed, .. }) => {
            report["result"] = result;
            let (status, code) = match passed {
                None => ("ok", 0),
                Some(true) => ("pass", 0),
                Some(false) => ("fail", 3),
            };
            report["status"] = json!(status);
            code
        }
        Err(f) => {
            eprintln!("nc {name}: {}", f.message());
            report["status"] = json!("error");
            report["error"] = json!({ "kind": f.kind(), "message": f.message() });
            f.exit_code()
        }
    };
    emit(&report, cli.global.format, &suite_lines);
    ExitCode::from(code as u8)
}

fn emit(doc: &Value, format: Format, lines: &[String]) {
    let text = match format {
        Format::Json => output::to_json(doc),
        Format::Text if !lines.is_empty() => {
            let mut s = lines.join("\n");
            s.push('\n');
            s
        }
        Format::Text => output::to_text(doc),
    };
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes());
}
