//! Command-line driver.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, ValueEnum};

use crate::diagram::{diagram_diff, diagram_equal};
use crate::engine::{compute_persistence, EngineOptions};
use crate::field::FieldSpec;
use crate::io::{format_diagram, read_filtration, read_points, write_diagram};
use crate::oracle;
use crate::rips::build_rips;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_INTERNAL: i32 = 2;
pub const EXIT_ORACLE_MISMATCH: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum InputFormat {
    Points,
    Filtration,
}

/// Persistence diagrams of filtered simplicial complexes over Z_p.
#[derive(Debug, Clone, Parser)]
#[command(name = "camcoh", version)]
pub struct Cli {
    /// Input file (point cloud or filtration).
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, value_enum, default_value = "filtration")]
    pub format: InputFormat,
    /// Prime characteristic of the coefficient field.
    #[arg(long, default_value_t = 2)]
    pub field: u64,
    /// Largest edge length of the Rips complex (points input).
    #[arg(long)]
    pub rips_max_edge: Option<f64>,
    /// Largest simplex dimension of the Rips complex (points input).
    #[arg(long)]
    pub max_dim: Option<usize>,
    /// Defer creator insertions until a coface needs them (default).
    #[arg(long, overrides_with = "no_lazy")]
    pub lazy: bool,
    #[arg(long)]
    pub no_lazy: bool,
    /// Reorder equal-valued simplices before insertion (default).
    #[arg(long, overrides_with = "no_reorder")]
    pub reorder: bool,
    #[arg(long)]
    pub no_reorder: bool,
    /// Report run statistics to `<output>.stats`, or stderr without --output.
    #[arg(long)]
    pub stats: bool,
    /// Cross-check the diagram against boundary-matrix reduction.
    #[arg(long)]
    pub oracle: bool,
    /// Diagram output file; stdout when absent.
    #[arg(long)]
    pub output: Option<PathBuf>,
    /// Keep pairs whose birth equals their death.
    #[arg(long)]
    pub emit_zero_length: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CliConfig {
    pub input_path: PathBuf,
    pub input_format: InputFormat,
    pub field_p: u64,
    pub rips_max_edge: Option<f64>,
    pub max_dim: Option<usize>,
    pub lazy: bool,
    pub reorder: bool,
    pub stats: bool,
    pub oracle_check: bool,
    pub output_path: Option<PathBuf>,
    pub emit_zero_length: bool,
}

impl From<Cli> for CliConfig {
    fn from(c: Cli) -> Self {
        CliConfig {
            input_path: c.input,
            input_format: c.format,
            field_p: c.field,
            rips_max_edge: c.rips_max_edge,
            max_dim: c.max_dim,
            lazy: !c.no_lazy,
            reorder: !c.no_reorder,
            stats: c.stats,
            oracle_check: c.oracle,
            output_path: c.output,
            emit_zero_length: c.emit_zero_length,
        }
    }
}

/// Runs one invocation; diagnostics go to `err`, the diagram to the output
/// file or `out`. Returns the process exit code.
pub fn run(config: &CliConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let field = match FieldSpec::new(config.field_p) {
        Ok(f) => f,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let complex = match config.input_format {
        InputFormat::Filtration => read_filtration(&config.input_path),
        InputFormat::Points => {
            let (Some(rho), Some(dim)) = (config.rips_max_edge, config.max_dim) else {
                let _ = writeln!(err, "error: points input requires --rips-max-edge and --max-dim");
                return EXIT_INPUT;
            };
            read_points(&config.input_path).and_then(|pc| build_rips(&pc, rho, dim))
        }
    };
    let complex = match complex {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };

    let opts = EngineOptions {
        lazy: config.lazy,
        reorder: config.reorder,
        record_stats: config.stats,
        emit_zero_length: config.emit_zero_length,
        check_invariants: false,
    };
    let (diagram, stats) = match compute_persistence(&complex, field, opts) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "internal error: {e}");
            return EXIT_INTERNAL;
        }
    };

    let written = match &config.output_path {
        Some(path) => write_diagram(&diagram, path).map_err(|e| e.to_string()),
        None => out.write_all(format_diagram(&diagram).as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        let _ = writeln!(err, "error: cannot write diagram: {e}");
        return EXIT_INPUT;
    }

    if config.stats {
        let text = stats.to_key_values();
        match &config.output_path {
            Some(path) => {
                let mut p = path.clone().into_os_string();
                p.push(".stats");
                if let Err(e) = std::fs::write(&p, text) {
                    let _ = writeln!(err, "error: cannot write stats: {e}");
                    return EXIT_INPUT;
                }
            }
            None => {
                let _ = err.write_all(text.as_bytes());
            }
        }
    }

    if config.oracle_check {
        let reference = oracle::reduce_with(&complex, &field, config.emit_zero_length);
        if !diagram_equal(&diagram, &reference) {
            let _ = writeln!(err, "oracle mismatch (- engine only, + oracle only):");
            let _ = err.write_all(diagram_diff(&diagram, &reference).as_bytes());
            return EXIT_ORACLE_MISMATCH;
        }
    }
    EXIT_OK
}
