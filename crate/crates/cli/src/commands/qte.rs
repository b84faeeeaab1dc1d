use std::time::Instant;

use simplex_core::cocycle::{solve_coboundary, CoboundaryVerdict};
use simplex_core::format::write_operator;
use simplex_core::quantum::{check_qte, gauge_equivalent, permutation_operator, twisted_operator};

use super::cocycle::certificate_summary;
use crate::report::list;
use crate::{load_cocycle, load_potential, load_rmap, write_output, CliError, CliResult, Output, QteAction, RunReport};

pub(super) fn run(action: &QteAction, echo: String) -> CliResult<Output> {
    let mut report = RunReport::new(echo);
    match action {
        QteAction::Verify { rmap, cocycle, export } => {
            let r = load_rmap(&mut report, rmap)?;
            let op = match cocycle {
                Some(path) => {
                    let phi = load_cocycle(&mut report, "cocycle", path)?;
                    twisted_operator(&r, &phi)?
                }
                None => permutation_operator(&r, 1)?,
            };
            report
                .field("colors", op.colors())
                .field("modulus", op.modulus())
                .field("twisted", cocycle.is_some())
                .field("invertible", op.is_invertible());
            let start = Instant::now();
            let c = check_qte(&op)?;
            report.time("check", start.elapsed());
            report.field("basis_tuples", c.checked).field("holds", c.holds());
            if let Some(cx) = &c.counterexample {
                report.field(
                    "counterexample",
                    format!(
                        "input={} lhs={}|{} rhs={}|{}",
                        list(cx.input),
                        list(cx.lhs.0),
                        cx.lhs.1,
                        list(cx.rhs.0),
                        cx.rhs.1
                    ),
                );
            }
            if let Some(path) = export {
                let digest = write_output(path, &write_operator(&op))?;
                report.field("operator_file", format!("{} sha256={digest}", path.display()));
            }
            report.verdict(c.holds());
        }
        QteAction::Gauge {
            rmap,
            cocycle,
            cocycle2,
            psi,
        } => {
            let r = load_rmap(&mut report, rmap)?;
            let a = load_cocycle(&mut report, "cocycle", cocycle)?;
            let b = load_cocycle(&mut report, "cocycle2", cocycle2)?;
            if a.modulus() != b.modulus() || a.colors() != b.colors() {
                return Err(CliError::usage("the two cocycles live on different color sets or moduli"));
            }
            let psi = match psi {
                Some(path) => {
                    report.field("psi_source", "file");
                    load_potential(&mut report, path)?
                }
                None => {
                    report.field("psi_source", "solved");
                    match solve_coboundary(&r, &b.add(&a.scale(-1))?)? {
                        CoboundaryVerdict::Coboundary(psi) => psi,
                        CoboundaryVerdict::NotCoboundary(cert) => {
                            report
                                .field("cohomologous", false)
                                .field("certificate", certificate_summary(&cert));
                            report.verdict(false);
                            return Ok(report.into());
                        }
                    }
                }
            };
            report.field("psi", list(psi.table()));
            let verdict = gauge_equivalent(&twisted_operator(&r, &a)?, &twisted_operator(&r, &b)?, &psi)?;
            report.field("equivalent", verdict.equivalent);
            if let Some(reason) = &verdict.reason {
                report.field("reason", reason);
            }
            report.verdict(verdict.equivalent);
        }
    }
    Ok(report.into())
}
