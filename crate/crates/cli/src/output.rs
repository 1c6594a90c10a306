//! Deterministic output plumbing: provenance headers, fixed-width float
//! formatting, file/stdout dispatch, and gnuplot script emission.

use std::io::Write;
use std::path::{Path, PathBuf};

use crate::CliError;

pub fn version() -> &'static str {
    env!("CARGO_PKG_VERSION")
}

/// Scientific notation with a fixed digit count so identical invocations
/// produce byte-identical files.
pub fn fmt(x: f64) -> String {
    format!("{x:.12e}")
}

/// `# key = value` comment block carrying the full parameter provenance.
pub fn provenance(command: &str, entries: &[(&str, String)]) -> String {
    let mut s = format!("# tool = fosc {}\n# command = {command}\n", version());
    for (k, v) in entries {
        s.push_str(&format!("# {k} = {v}\n"));
    }
    s
}

/// Resolves an output path against `$FOSC_OUT_DIR` for relative paths.
pub fn resolve_path(path: &Path) -> PathBuf {
    if path.is_relative() {
        if let Ok(base) = std::env::var("FOSC_OUT_DIR") {
            if !base.is_empty() {
                return PathBuf::from(base).join(path);
            }
        }
    }
    path.to_path_buf()
}

/// Writes `content` to the file given by `out`, or to stdout.
pub fn write_output(out: Option<&Path>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => {
            let path = resolve_path(path);
            if let Some(dir) = path.parent() {
                if !dir.as_os_str().is_empty() {
                    std::fs::create_dir_all(dir).map_err(|e| {
                        CliError::Msg(format!("cannot create {}: {e}", dir.display()))
                    })?;
                }
            }
            std::fs::write(&path, content)
                .map_err(|e| CliError::Msg(format!("cannot write {}: {e}", path.display())))
        }
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::Msg(format!("cannot write stdout: {e}")))
        }
    }
}

/// Columns to plot, 1-indexed as gnuplot counts them.
pub struct PlotSpec {
    pub title: &'static str,
    pub xlabel: &'static str,
    pub ylabel: &'static str,
    pub x_col: usize,
    pub y_col: usize,
    /// Column whose distinct values separate the curves.
    pub curve_col: usize,
}

/// Emits a small gnuplot script that renders the CSV written to `data`.
pub fn write_plot_script(
    script: &Path,
    data: Option<&Path>,
    spec: &PlotSpec,
) -> Result<(), CliError> {
    let data = data.ok_or_else(|| {
        CliError::Msg("--plot-script requires --out so the script has data to read".into())
    })?;
    let data = resolve_path(data);
    let content = format!(
        "set datafile separator ','\n\
         set datafile commentschars '#'\n\
         set key autotitle columnheader\n\
         set title '{title}'\n\
         set xlabel '{xlabel}'\n\
         set ylabel '{ylabel}'\n\
         set grid\n\
         plot for [c in system(\"awk -F, '!/^#/ && NR > 1 {{ print ${curve} }}' '{data}' | sort -u\")] \\\n\
         \x20  '{data}' using {x}:(strcol({curve}) eq c ? ${y} : NaN) with lines title c\n",
        title = spec.title,
        xlabel = spec.xlabel,
        ylabel = spec.ylabel,
        data = data.display(),
        x = spec.x_col,
        y = spec.y_col,
        curve = spec.curve_col,
    );
    std::fs::write(resolve_path(script), content)
        .map_err(|e| CliError::Msg(format!("cannot write plot script: {e}")))
}
