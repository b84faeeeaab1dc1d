use std::path::Path;
use std::time::Instant;

use simplex_core::chain::{
    cohomology, convention_audit, format_signs, homology as homology_report, CocycleBasis, Complex, HomologyOptions,
    HomologyReport,
};
use simplex_core::format::write_matrix;

use crate::report::list;
use crate::{load_rmap, write_output, CliResult, Context, HomologyArgs, Output, RunReport};

fn rows(report: &mut RunReport, h: &HomologyReport) {
    for row in &h.rows {
        let opt = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        report.field(
            format!("degree.{}", row.degree),
            format!(
                "dim={} rank_d={} rank_d_next={} betti={}",
                row.dim,
                row.rank_out,
                opt(row.rank_in),
                opt(row.betti)
            ),
        );
    }
    report.field("euler_consistent", h.euler_consistent());
}

pub(super) fn homology(
    args: &HomologyArgs,
    cocycle_degree: Option<usize>,
    dual: bool,
    ctx: Context,
    echo: String,
) -> CliResult<Output> {
    let mut report = RunReport::new(echo);
    let r = load_rmap(&mut report, &args.rmap)?;
    let opts = HomologyOptions {
        field: args.field,
        convention: args.convention,
        normalization: args.normalized,
        limits: ctx.limits,
    };
    report
        .field("arity", r.arity())
        .field("colors", r.colors())
        .field("field", opts.field)
        .field("convention", opts.convention)
        .field(
            "normalization",
            opts.normalization.map_or("none".to_string(), |n| n.to_string()),
        )
        .field("cohomological", dual);

    let start = Instant::now();
    if dual {
        let co = cohomology(&r, args.max_dim, &opts, cocycle_degree)?;
        rows(&mut report, &co.report);
        if let Some((degree, kept, basis)) = co.cocycles {
            report.field("cocycles.degree", degree).field("cocycles.dim", basis.len());
            let vectors: Vec<Vec<String>> = match &basis {
                CocycleBasis::Rational(vs) => vs
                    .iter()
                    .map(|v| v.iter().enumerate().map(|(i, x)| (i, x.to_string())).filter(|(_, x)| x != "0").map(|(i, x)| format!("{}:{x}", kept[i])).collect())
                    .collect(),
                CocycleBasis::Prime(_, vs) => vs
                    .iter()
                    .map(|v| v.iter().enumerate().filter(|(_, &x)| x != 0).map(|(i, x)| format!("{}:{x}", kept[i])).collect())
                    .collect(),
            };
            for (i, v) in vectors.iter().enumerate() {
                report.field(format!("cocycle.{i}"), v.join(","));
            }
        }
    } else {
        let h = homology_report(&r, args.max_dim, &opts)?;
        rows(&mut report, &h);
    }
    report.time("ranks", start.elapsed());

    if let Some(dir) = &args.export_dir {
        let complex = Complex::build(&r, args.max_dim, &opts)?;
        for degree in complex.min_degree + 1..=complex.max_degree() {
            let d = complex.boundary(degree).expect("degree in range");
            let path = dir.join(format!("d_{degree}.mtx"));
            let digest = write_output(&path, &write_matrix(d))?;
            report.field(format!("export.d_{degree}"), format!("{} sha256={digest}", path.display()));
        }
    }
    Ok(report.into())
}

pub(super) fn audit(rmap: &Path, max_dim: usize, samples: usize, ctx: Context, echo: String) -> CliResult<Output> {
    let mut report = RunReport::new(echo);
    let r = load_rmap(&mut report, rmap)?;
    let start = Instant::now();
    let a = convention_audit(&r, max_dim, samples, ctx.limits)?;
    report.time("audit", start.elapsed());
    let patterns = |ps: &[Vec<i64>]| {
        if ps.is_empty() {
            "none".to_string()
        } else {
            ps.iter().map(|p| format_signs(p)).collect::<Vec<_>>().join(" ")
        }
    };
    let named = |n: usize| {
        let m = a.named_matches(n);
        if m.is_empty() {
            "none".to_string()
        } else {
            list(m)
        }
    };
    report
        .field("d3.samples", a.d3_samples)
        .field("d3.matching_front_signs", patterns(&a.d3_patterns))
        .field("d3.matching_conventions", named(3))
        .field("d4.samples", a.d4_samples)
        .field("d4.matching_front_signs", patterns(&a.d4_patterns))
        .field("d4.matching_conventions", named(4));
    let show = |v: Option<bool>| v.map_or("unknown(cap)".to_string(), |b| b.to_string());
    for s in &a.squares {
        report.field(
            format!("d_squared.{}.N{}", s.convention, s.ambient),
            format!("over_z={} mod_2={}", show(s.over_z), show(s.mod_2)),
        );
    }
    Ok(report.into())
}
