use simplex_core::electric::{
    characters, electric_cocycles, electric_rmap, nontriviality_report, Character, ResidueColorSet, Verdict,
};
use simplex_core::format::{write_cocycle, write_rmap};

use super::cocycle::certificate_summary;
use crate::report::{list, sha256_hex};
use crate::{write_output, CharacterChoice, CliError, CliResult, ElectricAction, ElectricArgs, Output, RunReport};

fn select(chars: Vec<Character>, choice: CharacterChoice) -> CliResult<Vec<Character>> {
    match choice {
        CharacterChoice::All => Ok(chars),
        CharacterChoice::Index(i) => {
            let count = chars.len();
            chars
                .into_iter()
                .nth(i)
                .map(|c| vec![c])
                .ok_or_else(|| CliError::usage(format!("character {i} out of range, there are {count}")))
        }
    }
}

pub(crate) fn verdict_summary(v: &Verdict) -> String {
    let evidence = match (&v.potential, &v.certificate) {
        (Some(psi), _) => format!("potential={}", list(psi.table())),
        (None, Some(cert)) => certificate_summary(cert),
        (None, None) => String::new(),
    };
    format!(
        "{} witnesses={} {evidence}",
        if v.nontrivial() { "nontrivial" } else { "coboundary" },
        v.witnesses.len()
    )
}

pub(super) fn run(args: &ElectricArgs, echo: String) -> CliResult<Output> {
    let mut report = RunReport::new(echo);
    let cs = ResidueColorSet::new(args.p, args.k, args.epsilon)?;
    let r = electric_rmap(&cs)?;
    report
        .field("p", cs.p())
        .field("k", cs.k())
        .field("epsilon", cs.epsilon())
        .field("modulus", cs.modulus())
        .field("colors", cs.len())
        .field("elements", list(cs.elements()));
    match &args.action {
        ElectricAction::EmitRmap { out } => {
            let text = write_rmap(&r);
            match out {
                None => {
                    return Ok(Output {
                        report,
                        raw: Some(text),
                    })
                }
                Some(path) => {
                    let digest = write_output(path, &text)?;
                    report.field("rmap_file", format!("{} sha256={digest}", path.display()));
                }
            }
        }
        ElectricAction::EmitCocycles { character, out_dir } => {
            for eta in select(characters(&cs)?, *character)? {
                let (c1, c2) = electric_cocycles(&cs, &r, &eta)?;
                for (name, phi) in [("c1", c1), ("c2", c2)] {
                    let path = out_dir.join(format!("{name}_eta{}.cocycle", eta.index));
                    let digest = write_output(&path, &write_cocycle(&phi))?;
                    report.field(format!("{name}.eta{}", eta.index), format!("{} sha256={digest}", path.display()));
                }
            }
        }
        ElectricAction::Characters => {
            let chars = characters(&cs)?;
            report.field("characters", chars.len());
            for eta in chars {
                report.field(format!("eta{}", eta.index), &eta);
            }
        }
        ElectricAction::Report { character } => {
            report.field("rmap_sha256", sha256_hex(write_rmap(&r).as_bytes()));
            for eta in select(characters(&cs)?, *character)? {
                let rep = nontriviality_report(&cs, &r, &eta)?;
                report
                    .field(format!("eta{}", eta.index), &eta)
                    .field(format!("eta{}.c1", eta.index), verdict_summary(&rep.c1))
                    .field(format!("eta{}.c2", eta.index), verdict_summary(&rep.c2));
            }
        }
    }
    Ok(report.into())
}
