use std::path::Path;
use std::time::Instant;

use simplex_core::faces::{absolutely_outgoing_faces, direction_slot};
use simplex_core::relation::{check_n_simplex, check_n_simplex_composition, propagate as propagate_colors, Mode};
use simplex_core::Color;

use crate::report::list;
use crate::{load_rmap, CliError, CliResult, Output, RunReport, VerifyMode};

pub(super) fn verify(rmap: &Path, mode: VerifyMode, strict: bool, echo: String) -> CliResult<Output> {
    let mut report = RunReport::new(echo);
    let r = load_rmap(&mut report, rmap)?;
    report
        .field("arity", r.arity())
        .field("colors", r.colors())
        .field("bijective", r.is_bijective());

    let start = Instant::now();
    let consistency = || -> CliResult<(bool, u64, Option<String>)> {
        let c = check_n_simplex(&r)?;
        let cx = c.counterexample.as_ref().map(|cx| {
            format!(
                "assignment={} face={} cells={},{} colors={},{} subcube={}",
                list(&cx.assignment),
                cx.conflict.face,
                cx.conflict.first_cell,
                cx.conflict.second_cell,
                cx.conflict.first,
                cx.conflict.second,
                cx.conflict.subcube()
            )
        });
        Ok((c.holds(), c.checked, cx))
    };
    let composition = || -> CliResult<(bool, u64, Option<String>)> {
        let c = check_n_simplex_composition(&r)?;
        let cx = c
            .counterexample
            .as_ref()
            .map(|cx| format!("input={} lhs={} rhs={}", list(&cx.input), list(&cx.lhs), list(&cx.rhs)));
        Ok((c.holds(), c.checked, cx))
    };
    let (primary, other): (&dyn Fn() -> CliResult<_>, &dyn Fn() -> CliResult<_>) = match mode {
        VerifyMode::Consistency => (&consistency, &composition),
        VerifyMode::Composition => (&composition, &consistency),
    };
    let (holds, checked, cx) = primary()?;
    report.time("check", start.elapsed());
    report
        .field("mode", format!("{mode:?}").to_lowercase())
        .field("checked", checked)
        .field("holds", holds);
    if let Some(cx) = cx {
        report.field("counterexample", cx);
    }
    if strict {
        let (again, _, _) = other()?;
        report.field("other_formulation_holds", again);
        if again != holds {
            return Err(CliError::invariant(format!(
                "the consistency and composition formulations disagree ({holds} vs {again})"
            )));
        }
    }
    report.verdict(holds);
    Ok(report.into())
}

pub(super) fn propagate(rmap: &Path, dim: usize, input: &str, strict: bool, echo: String) -> CliResult<Output> {
    let mut report = RunReport::new(echo);
    let r = load_rmap(&mut report, rmap)?;
    let colors: Vec<Color> = input
        .split(',')
        .map(|s| s.trim().parse())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::usage(format!("--input must be comma-separated colors, got {input:?}")))?;
    let mode = if strict { Mode::Strict } else { Mode::Fast };
    let c = propagate_colors(&r, dim, &colors, mode)?;
    let mut outgoing = absolutely_outgoing_faces(dim, r.arity())?;
    outgoing.sort_by_key(direction_slot);
    let out_colors: Vec<Color> = outgoing.iter().map(|f| c.color_of(f).expect("face is colored")).collect();
    report
        .field("dim", dim)
        .field("arity", r.arity())
        .field("mode", if strict { "strict" } else { "fast" })
        .field("incoming", list(&colors))
        .field("outgoing", list(&out_colors))
        .field("permitted", c.is_permitted(&r));
    for (face, color) in c.iter() {
        report.field(format!("color.{face}"), color);
    }
    Ok(report.into())
}
