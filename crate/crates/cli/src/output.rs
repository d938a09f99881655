//! Number formatting and output sinks.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use crate::CliError;

/// Twelve significant digits, printed in the shortest form that parses back
/// to the rounded value.
pub fn sig12(x: f64) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if rounded == 0.0 {
        "0".into()
    } else {
        rounded.to_string()
    }
}

/// Writes `bytes` to `out`, or to standard output when absent. An unwritable
/// path is reported as a usage error.
pub fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), CliError> {
    match out {
        Some(path) => {
            fs::write(path, bytes).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = io::stdout().lock();
            stdout
                .write_all(bytes)
                .and_then(|_| stdout.flush())
                .map_err(|e| CliError::Failed(format!("stdout: {e}")))
        }
    }
}
