//! Command implementations behind the `xxdeficit` binary: single-point
//! evaluation, λ sweeps written as CSV, and closed-form vs oracle validation.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::deficit::{deficit_for_lambda, minimize_over_z3, oracle_full_measurement};
use crate::xstate::XStateParams;
use crate::xxmodel::{classify_phase, correlators, ground_state_correlators, Lambda, Phase};

/// Largest accepted `|closed form - oracle|` in validation runs.
pub const VALIDATION_TOL: f64 = 1e-4;

pub const CSV_HEADER: &str = "lambda,deficit,pre_entropy,post_entropy,min_z3,phase";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot write {path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("validation failed: max discrepancy {max:e} exceeds {tol:e}")]
    Validation { max: f64, tol: f64 },
    #[error(transparent)]
    Model(#[from] crate::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::Model(_) => 1,
            CliError::Io { .. } => 2,
            CliError::Validation { .. } => 3,
        }
    }
}

fn parse_lambda(value: f64) -> Result<Lambda, CliError> {
    Lambda::new(value).map_err(|e| CliError::Usage(e.to_string()))
}

/// Human-readable report for a single field value.
pub fn cmd_point(lambda: f64) -> Result<String, CliError> {
    let lambda = parse_lambda(lambda)?;
    let phase = classify_phase(lambda);
    let k = ground_state_correlators(lambda);
    let d = deficit_for_lambda(lambda)?;
    let rows: [(&str, String); 9] = [
        ("lambda", format!("{:.6}", lambda.value())),
        ("phase", phase.to_string()),
        ("r", format!("{:.6}", k.sigma_z)),
        ("c", format!("{:.6}", k.xx)),
        ("c3", format!("{:.6}", k.zz)),
        ("pre_entropy", format!("{:.6}", d.pre_entropy)),
        ("post_entropy", format!("{:.6}", d.post_entropy)),
        ("min_z3", format!("{:.6}", d.minimizing_z3)),
        ("deficit", format!("{:.6}", d.value)),
    ];
    let mut out = String::new();
    for (key, value) in rows {
        out.push_str(&format!("{key:<13} {value:>10}\n"));
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub lambda_min: f64,
    pub lambda_max: f64,
    pub points: usize,
    pub output_path: PathBuf,
    pub validate_with_oracle: bool,
    pub oracle_resolution: usize,
    /// Optional whitespace-separated `lambda deficit` file.
    pub plot_path: Option<PathBuf>,
}

impl SweepConfig {
    pub fn check(&self) -> Result<(), CliError> {
        if !(self.lambda_min >= 0.0
            && self.lambda_min < self.lambda_max
            && self.lambda_max.is_finite())
        {
            return Err(CliError::Usage(format!(
                "need 0 <= min < max, got min = {}, max = {}",
                self.lambda_min, self.lambda_max
            )));
        }
        if self.points < 2 {
            return Err(CliError::Usage(format!(
                "need at least 2 points, got {}",
                self.points
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub lambda: f64,
    pub deficit: f64,
    pub pre_entropy: f64,
    pub post_entropy: f64,
    pub minimizing_z3: f64,
    pub phase: Phase,
    /// `|closed form - oracle|`, when the oracle was run.
    pub oracle_abs_diff: Option<f64>,
}

/// Uniform, endpoint-inclusive grid.
pub fn lambda_grid(min: f64, max: f64, points: usize) -> Vec<f64> {
    let last = points.saturating_sub(1).max(1) as f64;
    (0..points)
        .map(|i| {
            if i + 1 == points {
                max
            } else {
                min + (max - min) * i as f64 / last
            }
        })
        .collect()
}

/// Evaluates every grid point; rows come back in λ order.
pub fn sweep(config: &SweepConfig) -> Result<Vec<SweepRecord>, CliError> {
    config.check()?;
    lambda_grid(config.lambda_min, config.lambda_max, config.points)
        .into_par_iter()
        .map(|l| {
            let lambda = parse_lambda(l)?;
            let d = deficit_for_lambda(lambda)?;
            let oracle_abs_diff = if config.validate_with_oracle {
                let p = ground_state_correlators(lambda).to_xstate()?;
                let oracle = oracle_full_measurement(&p, config.oracle_resolution)?;
                Some((oracle.value - d.value).abs())
            } else {
                None
            };
            Ok(SweepRecord {
                lambda: l,
                deficit: d.value,
                pre_entropy: d.pre_entropy,
                post_entropy: d.post_entropy,
                minimizing_z3: d.minimizing_z3,
                phase: classify_phase(lambda),
                oracle_abs_diff,
            })
        })
        .collect()
}

pub fn write_csv<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    let with_oracle = records.iter().any(|r| r.oracle_abs_diff.is_some());
    writeln!(
        out,
        "# xxdeficit {}; entropies in bits (log base 2)",
        env!("CARGO_PKG_VERSION")
    )?;
    if with_oracle {
        writeln!(out, "{CSV_HEADER},oracle_abs_diff")?;
    } else {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for r in records {
        write!(
            out,
            "{:.12e},{:.12e},{:.12e},{:.12e},{:.12e},{}",
            r.lambda, r.deficit, r.pre_entropy, r.post_entropy, r.minimizing_z3, r.phase
        )?;
        if with_oracle {
            write!(out, ",{:.12e}", r.oracle_abs_diff.unwrap_or(f64::NAN))?;
        }
        writeln!(out)?;
    }
    out.flush()
}

/// Two columns, `lambda deficit`, for direct plotting.
pub fn write_plot_data<W: Write>(records: &[SweepRecord], mut out: W) -> io::Result<()> {
    writeln!(out, "# lambda deficit (bits)")?;
    for r in records {
        writeln!(out, "{:.12e} {:.12e}", r.lambda, r.deficit)?;
    }
    out.flush()
}

fn write_file<F>(path: &Path, body: F) -> Result<(), CliError>
where
    F: FnOnce(BufWriter<File>) -> io::Result<()>,
{
    let io_err = |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    };
    let file = File::create(path).map_err(io_err)?;
    body(BufWriter::new(file)).map_err(io_err)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSummary {
    pub rows: usize,
    pub max_oracle_diff: Option<f64>,
}

/// Runs the sweep and writes its outputs. Fails with
/// [`CliError::Validation`] after writing if any oracle row disagrees.
pub fn cmd_sweep(config: &SweepConfig) -> Result<SweepSummary, CliError> {
    let records = sweep(config)?;
    write_file(&config.output_path, |w| write_csv(&records, w))?;
    if let Some(path) = &config.plot_path {
        write_file(path, |w| write_plot_data(&records, w))?;
    }
    let max_oracle_diff = records
        .iter()
        .filter_map(|r| r.oracle_abs_diff)
        .reduce(f64::max);
    if let Some(max) = max_oracle_diff {
        if !(max <= VALIDATION_TOL) {
            return Err(CliError::Validation {
                max,
                tol: VALIDATION_TOL,
            });
        }
    }
    Ok(SweepSummary {
        rows: records.len(),
        max_oracle_diff,
    })
}

/// Deterministic validation inputs: boundary cases first (λ = 0, pure
/// `|↑↑⟩`, maximally mixed, λ = 0.99), then XX states at stratified
/// λ ∈ (0, 0.99).
pub fn validation_params(count: usize) -> Vec<(String, XStateParams)> {
    let xx = |l: f64| {
        correlators(Lambda::new(l).expect("non-negative"))
            .and_then(|k| k.to_xstate())
            .expect("critical-phase states are valid")
    };
    let mut cases = vec![
        ("lambda=0".to_string(), xx(0.0)),
        ("pure".to_string(), XStateParams::pure_up_up()),
        ("mixed".to_string(), XStateParams::maximally_mixed()),
        ("lambda=0.99".to_string(), xx(0.99)),
    ];
    let strata = count.saturating_sub(cases.len());
    for i in 0..strata {
        let l = 0.99 * (i as f64 + 0.5) / strata as f64;
        cases.push((format!("lambda={l:.6}"), xx(l)));
    }
    cases.truncate(count);
    cases
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationRow {
    pub label: String,
    pub closed_form: f64,
    pub oracle: f64,
}

impl ValidationRow {
    pub fn discrepancy(&self) -> f64 {
        (self.closed_form - self.oracle).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub rows: Vec<ValidationRow>,
    pub max_discrepancy: f64,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.max_discrepancy <= VALIDATION_TOL
    }
}

pub fn validate_cases(
    cases: &[(String, XStateParams)],
    oracle_resolution: usize,
) -> Result<ValidationReport, CliError> {
    let rows = cases
        .par_iter()
        .map(|(label, p)| {
            let closed = minimize_over_z3(p);
            let oracle = oracle_full_measurement(p, oracle_resolution)?;
            Ok(ValidationRow {
                label: label.clone(),
                closed_form: closed.value,
                oracle: oracle.value,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let max_discrepancy = rows
        .iter()
        .map(ValidationRow::discrepancy)
        .fold(0.0, f64::max);
    Ok(ValidationReport {
        rows,
        max_discrepancy,
    })
}

/// Closed form vs oracle over [`validation_params`]; returns the printable
/// report, or [`CliError::Validation`] carrying the worst discrepancy.
pub fn cmd_validate(seed_count: usize, oracle_resolution: usize) -> Result<String, CliError> {
    if seed_count == 0 {
        return Err(CliError::Usage("count must be at least 1".into()));
    }
    let report = validate_cases(&validation_params(seed_count), oracle_resolution)?;
    let mut out = format!(
        "{:<18} {:>14} {:>14} {:>12}\n",
        "case", "closed_form", "oracle", "abs_diff"
    );
    for row in &report.rows {
        out.push_str(&format!(
            "{:<18} {:>14.9} {:>14.9} {:>12.3e}\n",
            row.label,
            row.closed_form,
            row.oracle,
            row.discrepancy()
        ));
    }
    out.push_str(&format!(
        "max discrepancy {:.3e} (tolerance {:.0e})\n",
        report.max_discrepancy, VALIDATION_TOL
    ));
    if report.passed() {
        Ok(out)
    } else {
        print!("{out}");
        Err(CliError::Validation {
            max: report.max_discrepancy,
            tol: VALIDATION_TOL,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_round_values() {
        let g = lambda_grid(0.0, 1.5, 151);
        assert_eq!(g.len(), 151);
        assert_eq!(g[0], 0.0);
        assert_eq!(g[60], 0.6);
        assert_eq!(g[100], 1.0);
        assert_eq!(g[150], 1.5);
        assert_eq!(lambda_grid(1.0, 1.5, 6), vec![1.0, 1.1, 1.2, 1.3, 1.4, 1.5]);
    }

    #[test]
    fn config_checks() {
        let mut cfg = SweepConfig {
            lambda_min: 0.0,
            lambda_max: 1.5,
            points: 151,
            output_path: PathBuf::from("unused.csv"),
            validate_with_oracle: false,
            oracle_resolution: 64,
            plot_path: None,
        };
        assert!(cfg.check().is_ok());
        cfg.points = 1;
        assert!(matches!(cfg.check(), Err(CliError::Usage(_))));
        cfg.points = 10;
        cfg.lambda_min = 2.0;
        assert!(matches!(cfg.check(), Err(CliError::Usage(_))));
        cfg.lambda_min = -0.5;
        assert!(matches!(cfg.check(), Err(CliError::Usage(_))));
    }

    #[test]
    fn point_report() {
        let out = cmd_point(0.6).unwrap();
        assert!(
            out.lines()
                .any(|l| l.starts_with("deficit") && l.contains("0.418314")),
            "{out}"
        );
        let out = cmd_point(1.5).unwrap();
        assert!(out.contains("Polarized"));
        assert!(out
            .lines()
            .any(|l| l.starts_with("deficit") && l.ends_with("0.000000")));
        let err = cmd_point(-0.3).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn validation_case_order() {
        let cases = validation_params(1);
        assert_eq!(cases.len(), 1);
        assert_eq!(cases[0].0, "lambda=0");
        let cases = validation_params(20);
        assert_eq!(cases.len(), 20);
        assert_eq!(cases[1].1, XStateParams::pure_up_up());
        assert_eq!(cases[2].1, XStateParams::maximally_mixed());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage(String::new()).exit_code(), 1);
        let io = CliError::Io {
            path: "x".into(),
            source: io::Error::other("boom"),
        };
        assert_eq!(io.exit_code(), 2);
        assert!(io.to_string().contains('x'));
        assert_eq!(
            CliError::Validation {
                max: 1.0,
                tol: 1e-4
            }
            .exit_code(),
            3
        );
    }
}
