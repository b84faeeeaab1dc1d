use simplex_core::cocycle::{check_cocycle, fixed_point_obstruction, solve_coboundary, CoboundaryVerdict};
use simplex_core::format::write_potential;
use simplex_core::modular::Certificate;

use crate::report::list;
use crate::{load_cocycle, load_rmap, write_output, CliResult, CocycleAction, CocycleFiles, Output, RunReport};

fn load(files: &CocycleFiles, echo: String) -> CliResult<(RunReport, simplex_core::relation::RMap, simplex_core::cocycle::Cocycle)> {
    let mut report = RunReport::new(echo);
    let r = load_rmap(&mut report, &files.rmap)?;
    let phi = load_cocycle(&mut report, "cocycle", &files.cocycle)?;
    report
        .field("colors", phi.colors())
        .field("modulus", phi.modulus());
    Ok((report, r, phi))
}

pub(crate) fn certificate_summary(cert: &Certificate) -> String {
    let terms: Vec<String> = cert
        .combination
        .iter()
        .map(|(row, c)| format!("{c}*eq{row}"))
        .collect();
    format!("residue={} combination={}", cert.residue, terms.join("+"))
}

pub(super) fn run(action: &CocycleAction, echo: String) -> CliResult<Output> {
    match action {
        CocycleAction::Check(files) => {
            let (mut report, r, phi) = load(files, echo)?;
            let c = check_cocycle(&r, &phi)?;
            report.field("checked", c.checked).field("holds", c.holds());
            if let Some(cx) = &c.counterexample {
                report.field(
                    "counterexample",
                    format!("input={} left={} right={}", list(cx.input), cx.left, cx.right),
                );
            }
            report.verdict(c.holds());
            Ok(report.into())
        }
        CocycleAction::Solve { files, out } => {
            let (mut report, r, phi) = load(files, echo)?;
            match solve_coboundary(&r, &phi)? {
                CoboundaryVerdict::Coboundary(psi) => {
                    report.field("coboundary", true).field("potential", list(psi.table()));
                    if let Some(path) = out {
                        let digest = write_output(path, &write_potential(&psi))?;
                        report.field("potential_file", format!("{} sha256={digest}", path.display()));
                    }
                    report.verdict(true);
                }
                CoboundaryVerdict::NotCoboundary(cert) => {
                    report
                        .field("coboundary", false)
                        .field("certificate", certificate_summary(&cert));
                    report.verdict(false);
                }
            }
            Ok(report.into())
        }
        CocycleAction::Obstruct(files) => {
            let (mut report, r, phi) = load(files, echo)?;
            let w = fixed_point_obstruction(&r, &phi)?;
            report
                .field("witnesses", w.len())
                .field("nontrivial_by_fixed_point", !w.is_empty());
            for (i, t) in w.iter().enumerate() {
                report.field(format!("witness.{i}"), format!("{} value={}", list(t), phi.at(t)));
            }
            Ok(report.into())
        }
    }
}
