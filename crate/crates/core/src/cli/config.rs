//! `--config FILE` support: a TOML file of `flag = value` pairs.
//!
//! Keys are long flag names without the dashes (`N = 3`, `x = "1.0,1.0"`,
//! `alternating = true`). Values are spliced in right after the subcommand,
//! so flags given on the command line win.

use std::ffi::OsString;
use std::fs;
use std::path::Path;

use toml::Value;

pub const SUBCOMMANDS: [&str; 4] = ["eval", "verify", "table", "plot-data"];

fn render(key: &str, value: &Value, out: &mut Vec<OsString>) -> Result<(), String> {
    let flag = format!("--{key}");
    match value {
        Value::Boolean(true) => out.push(flag.into()),
        Value::Boolean(false) => {}
        Value::Integer(i) => {
            out.push(flag.into());
            out.push(i.to_string().into());
        }
        Value::Float(f) => {
            out.push(flag.into());
            out.push(f.to_string().into());
        }
        Value::String(s) => {
            out.push(flag.into());
            out.push(s.clone().into());
        }
        Value::Array(items) => {
            for item in items {
                render(key, item, out)?;
            }
        }
        other => return Err(format!("config key `{key}` has unsupported value {other}")),
    }
    Ok(())
}

pub fn config_to_args(text: &str) -> Result<Vec<OsString>, String> {
    let table: toml::Table = text
        .parse()
        .map_err(|e| format!("config parse error: {e}"))?;
    let mut out = Vec::new();
    for (key, value) in &table {
        if key == "config" {
            return Err("config files cannot include other config files".into());
        }
        render(key, value, &mut out)?;
    }
    Ok(out)
}

/// Removes `--config PATH` / `--config=PATH` from `args` and splices the
/// file's flags in after the subcommand.
pub fn expand_config(args: Vec<OsString>) -> Result<Vec<OsString>, String> {
    let mut rest = Vec::with_capacity(args.len());
    let mut path = None;
    let mut iter = args.into_iter();
    while let Some(arg) = iter.next() {
        let s = arg.to_string_lossy();
        if s == "--config" {
            let p = iter.next().ok_or("--config needs a file path")?;
            path = Some(p);
        } else if let Some(p) = s.strip_prefix("--config=") {
            path = Some(OsString::from(p));
        } else {
            rest.push(arg);
        }
    }
    let Some(path) = path else {
        return Ok(rest);
    };
    let text = fs::read_to_string(Path::new(&path))
        .map_err(|e| format!("cannot read config {}: {e}", path.to_string_lossy()))?;
    let injected = config_to_args(&text)?;
    let at = rest
        .iter()
        .position(|a| SUBCOMMANDS.contains(&a.to_string_lossy().as_ref()))
        .ok_or("--config needs a subcommand")?;
    rest.splice(at + 1..at + 1, injected);
    Ok(rest)
}
