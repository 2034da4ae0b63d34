use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::Duration;

use fbclab_core::bounds::{
    self, emit_table2, emit_table3, BoundOutcome, CodeParams, TABLE3_DEFAULT_COLUMNS,
};
use fbclab_core::codecheck::{double_simplex, simplex, verify, Status, VerifyOptions};
use fbclab_core::counting::{theta, theta_direct, theta_egf};
use fbclab_core::{BoundId, GeneratorMatrix, Verdict};

use crate::table_csv::{self, TableCsv};
use crate::{exit, matrix_file, CliError, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ThetaMethod {
    Direct,
    Rec,
    Egf,
}

pub fn theta_value(n: usize, t: usize, r: usize, method: ThetaMethod) -> Result<String> {
    if r == 0 {
        return Err(CliError::Usage("--r must be at least 1".into()));
    }
    let v = match method {
        ThetaMethod::Direct => theta_direct(n, t, r),
        ThetaMethod::Rec => theta(n, t, r),
        ThetaMethod::Egf => theta_egf(n, t, r),
    };
    Ok(v.to_string())
}

pub fn min_n(k: u32, t: usize, r: usize, bound: BoundId) -> Result<BoundOutcome> {
    let p = CodeParams::new(k, t, r)?;
    Ok(match bound {
        BoundId::ExactTheta => {
            let n = bounds::min_n_exact(p);
            BoundOutcome {
                bound,
                rhs: None,
                min_n: n,
                raw_min_n: n,
                applicability_floor: 0,
                clamped: false,
                vacuous: false,
            }
        }
        BoundId::Thm6 => bounds::min_n_thm6(p),
        BoundId::Cor1 => bounds::min_n_cor1(p),
        BoundId::Thm7 => bounds::min_n_thm7(p),
        BoundId::Thm8 => bounds::min_n_thm8(k, t),
        BoundId::Baseline23 => bounds::min_n_baseline23(k, t),
    })
}

/// `min_n` on the first line, details on the second.
pub fn format_outcome(o: &BoundOutcome) -> String {
    let mut out = format!(
        "{}\nbound={} raw={} floor={}",
        o.min_n, o.bound, o.raw_min_n, o.applicability_floor
    );
    if let Some(rhs) = o.rhs {
        write!(out, " rhs={rhs:.4}").unwrap();
    }
    if o.clamped {
        out.push_str(" clamped");
    }
    if o.vacuous {
        out.push_str(" vacuous");
    }
    out.push('\n');
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Which {
    Two { k_max: u32 },
    Three { k_min: u32, k_max: u32 },
}

pub fn table(which: Which) -> Result<TableCsv> {
    Ok(match which {
        Which::Two { k_max } => table_csv::table2(&emit_table2(k_max)?),
        Which::Three { k_min, k_max } => {
            if k_min > k_max {
                return Err(CliError::Usage(format!("empty k range {k_min}..={k_max}")));
            }
            let rows = emit_table3(k_min..=k_max, &TABLE3_DEFAULT_COLUMNS)?;
            table_csv::table3(&rows, &TABLE3_DEFAULT_COLUMNS)
        }
    })
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Construction {
    Simplex,
    Double,
}

pub fn construct(which: Construction, k: u32) -> Result<GeneratorMatrix> {
    Ok(match which {
        Construction::Simplex => simplex(k)?,
        Construction::Double => double_simplex(k)?,
    })
}

/// Parses `simplex:K` or `double:K`.
pub fn parse_construct_spec(spec: &str) -> Result<(Construction, u32)> {
    let bad = || {
        CliError::Usage(format!(
            "--construct expects simplex:K or double:K, got {spec:?}"
        ))
    };
    let (name, k) = spec.split_once(':').ok_or_else(bad)?;
    let which = match name {
        "simplex" => Construction::Simplex,
        "double" => Construction::Double,
        _ => return Err(bad()),
    };
    Ok((which, k.parse().map_err(|_| bad())?))
}

pub fn read_matrix(path: &Path) -> Result<GeneratorMatrix> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    matrix_file::parse(&text).map_err(|source| CliError::Matrix {
        path: path.to_owned(),
        source,
    })
}

pub fn write_output(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|source| CliError::Io {
            path: p.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub struct VerifyRequest {
    pub t: usize,
    pub r: usize,
    pub jobs: usize,
    pub budget_seconds: Option<f64>,
    pub max_batches: Option<u64>,
    pub deterministic: bool,
    pub quick_screen: bool,
}

pub fn run_verify(g: &GeneratorMatrix, req: &VerifyRequest) -> Result<Verdict> {
    let time_budget = match req.budget_seconds {
        Some(s) if !(s.is_finite() && s >= 0.0) => {
            return Err(CliError::Usage(format!(
                "budget {s} is not a non-negative number of seconds"
            )))
        }
        s => s.map(Duration::from_secs_f64),
    };
    let opts = VerifyOptions {
        jobs: req.jobs,
        deterministic: req.deterministic,
        quick_screen: req.quick_screen,
        time_budget,
        batch_budget: req.max_batches,
    };
    Ok(verify(g, req.t, req.r, &opts)?)
}

/// Report text and exit code for a verdict. `pretty` prints queries as
/// coordinate strings instead of integers.
pub fn format_verdict(v: &Verdict, pretty: bool) -> (String, u8) {
    let (word, code) = match v.status {
        Status::Holds => ("holds", exit::OK),
        Status::Fails => ("fails", exit::FAILS),
        Status::Undecided => ("undecided", exit::UNDECIDED),
    };
    let mut out = format!("{word}\n");
    if let Some(batch) = &v.counterexample {
        let qs: Vec<String> = batch
            .queries()
            .iter()
            .map(|q| {
                if pretty {
                    q.vector().to_string()
                } else {
                    q.to_string()
                }
            })
            .collect();
        writeln!(out, "{}", qs.join(" ")).unwrap();
    }
    if pretty {
        writeln!(
            out,
            "checked {} of {} batches in {:.2?}",
            v.batches_checked, v.total_batches, v.wall_time
        )
        .unwrap();
    }
    (out, code)
}
