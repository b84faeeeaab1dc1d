//! `reproduce-paper`: the Z/25 and Z/8 pipelines against embedded golden
//! values (emit R → STTE → characters → cocycles → nontriviality → QTE).

use std::path::Path;
use std::time::Instant;

use simplex_core::cocycle::{check_cocycle, coboundary_system};
use simplex_core::electric::{
    characters, electric_cocycles, electric_rmap, nontriviality_report, reduced_form_z25, reduced_form_z8,
    ResidueColorSet,
};
use simplex_core::format::{write_cocycle, write_rmap};
use simplex_core::modular::verify_certificate;
use simplex_core::quantum::{check_qte, permutation_operator, twisted_operator};
use simplex_core::relation::{check_n_simplex, check_n_simplex_composition, RMap};

use crate::report::{list, sha256_hex};
use crate::{write_output, CliResult, RunReport};

/// Expected values, in report order.
pub const GOLDEN: &[(&str, &str)] = &[
    ("z25.epsilon", "2"),
    ("z25.colors", "5"),
    ("z25.rmap_sha256", "b2c8bd7d7004fb0b309cfcc0bcb02772d5e91e2c5612bcbc03692236c5071096"),
    ("z25.bijective", "true"),
    ("z25.reduced_form_agreement", "125/125"),
    ("z25.stte.consistency", "true checked=15625"),
    ("z25.stte.composition", "true checked=15625"),
    ("z25.characters", "20"),
    ("z25.c1.cocycles", "20/20"),
    ("z25.c2.cocycles", "20/20"),
    ("z25.eta7_nonzero", "1,2,3,5,6,7,9,10,11,13,14,15,17,18,19"),
    ("z25.c1.nontrivial", "1,2,3,5,6,7,9,10,11,13,14,15,17,18,19"),
    ("z25.c1.witness_counts", "25"),
    ("z25.c1.witnesses_are_n1_1_n3", "true"),
    ("z25.c1.certificates_verified", "15/15"),
    ("z25.c2.nontrivial", "1,2,3,5,6,7,9,10,11,13,14,15,17,18,19"),
    ("z25.qte.untwisted", "true"),
    ("z25.qte.twisted_c1", "20/20"),
    ("z25.qte.perturbation_rejected", "true"),
    ("z8.colors", "4"),
    ("z8.rmap_sha256", "bb877169bf0b7e96cae083ea7efdb26680a91b4f89c470320fbe278d5c4f6fd3"),
    ("z8.bijective", "true"),
    ("z8.reduced_form_agreement", "64/64"),
    ("z8.stte.consistency", "true checked=4096"),
    ("z8.stte.composition", "true checked=4096"),
    ("z8.characters", "4"),
    ("z8.character_names", "eta0[7->0,5->0] mod 2;eta1[7->0,5->1] mod 2;eta2[7->1,5->0] mod 2;eta3[7->1,5->1] mod 2"),
    ("z8.c1.cocycles", "4/4"),
    ("z8.c2.cocycles", "4/4"),
    ("z8.c1.nontrivial", "1,2,3"),
    ("z8.c1.witness_counts", "0"),
    ("z8.c2.nontrivial", "1,2,3"),
    ("z8.c2.witness_counts", "0"),
    ("z8.certificates_verified", "6/6"),
    ("z8.qte.untwisted", "true"),
    ("z8.qte.twisted", "8/8"),
];

struct Observed(Vec<(String, String)>);

impl Observed {
    fn put(&mut self, key: &str, value: impl ToString) {
        self.0.push((key.to_string(), value.to_string()));
    }
}

fn distinct<T: PartialEq + ToString>(items: &[T]) -> String {
    let mut out: Vec<&T> = Vec::new();
    for i in items {
        if !out.contains(&i) {
            out.push(i);
        }
    }
    list(out.iter().map(|t| t.to_string()))
}

fn stte(obs: &mut Observed, prefix: &str, r: &RMap) -> CliResult<()> {
    let c = check_n_simplex(r)?;
    obs.put(&format!("{prefix}.stte.consistency"), format!("{} checked={}", c.holds(), c.checked));
    let c = check_n_simplex_composition(r)?;
    obs.put(&format!("{prefix}.stte.composition"), format!("{} checked={}", c.holds(), c.checked));
    Ok(())
}

fn emit(out_dir: Option<&Path>, name: &str, text: &str) -> CliResult<()> {
    if let Some(dir) = out_dir {
        write_output(&dir.join(name), text)?;
    }
    Ok(())
}

fn z25(obs: &mut Observed, out_dir: Option<&Path>) -> CliResult<()> {
    let cs = ResidueColorSet::new(5, 2, Some(2))?;
    let r = electric_rmap(&cs)?;
    let text = write_rmap(&r);
    emit(out_dir, "z25.rmap", &text)?;
    obs.put("z25.epsilon", cs.epsilon());
    obs.put("z25.colors", cs.len());
    obs.put("z25.rmap_sha256", sha256_hex(text.as_bytes()));
    obs.put("z25.bijective", r.is_bijective());
    let agree = (0..r.len())
        .filter(|&i| {
            let t = r.input(i);
            let reduced = reduced_form_z25(t[0] as u64, t[1] as u64, t[2] as u64);
            r.image(i).iter().zip(reduced).all(|(&c, x)| c as u64 == x)
        })
        .count();
    obs.put("z25.reduced_form_agreement", format!("{agree}/{}", r.len()));
    stte(obs, "z25", &r)?;

    let chars = characters(&cs)?;
    obs.put("z25.characters", chars.len());
    let system = coboundary_system(&r);
    let (mut ok1, mut ok2, mut qte_ok, mut certified) = (0, 0, 0, 0);
    let (mut seven, mut nontrivial1, mut nontrivial2, mut counts) = (vec![], vec![], vec![], vec![]);
    let mut shape = true;
    let mut perturbation_rejected = true;
    for eta in &chars {
        let (c1, c2) = electric_cocycles(&cs, &r, eta)?;
        emit(out_dir, &format!("c1_eta{}.cocycle", eta.index), &write_cocycle(&c1))?;
        emit(out_dir, &format!("c2_eta{}.cocycle", eta.index), &write_cocycle(&c2))?;
        ok1 += check_cocycle(&r, &c1)?.holds() as usize;
        ok2 += check_cocycle(&r, &c2)?.holds() as usize;
        if eta.eval(7)? != 0 {
            seven.push(eta.index);
        }
        let rep = nontriviality_report(&cs, &r, eta)?;
        if rep.c1.nontrivial() {
            nontrivial1.push(eta.index);
            counts.push(rep.c1.witnesses.len());
            shape &= rep.c1.witnesses.iter().all(|w| w[1] == 1 && cs.element(w[1]) == 7);
            if let Some(cert) = &rep.c1.certificate {
                let rhs: Vec<i64> = c1.table().iter().map(|&e| e as i64).collect();
                certified += verify_certificate(&system, &rhs, c1.modulus(), cert) as usize;
            }
            // A single-entry perturbation must break the twisted equation.
            let bumped = c1.with_entry([0, 0, 0], (c1.get(0, 0, 0) + 1) % c1.modulus());
            perturbation_rejected &= !check_qte(&twisted_operator(&r, &bumped)?)?.holds();
        }
        if rep.c2.nontrivial() {
            nontrivial2.push(eta.index);
        }
        qte_ok += check_qte(&twisted_operator(&r, &c1)?)?.holds() as usize;
    }
    obs.put("z25.c1.cocycles", format!("{ok1}/{}", chars.len()));
    obs.put("z25.c2.cocycles", format!("{ok2}/{}", chars.len()));
    obs.put("z25.eta7_nonzero", list(&seven));
    obs.put("z25.c1.nontrivial", list(&nontrivial1));
    obs.put("z25.c1.witness_counts", distinct(&counts));
    obs.put("z25.c1.witnesses_are_n1_1_n3", shape);
    obs.put("z25.c1.certificates_verified", format!("{certified}/{}", nontrivial1.len()));
    obs.put("z25.c2.nontrivial", list(&nontrivial2));
    obs.put("z25.qte.untwisted", check_qte(&permutation_operator(&r, 1)?)?.holds());
    obs.put("z25.qte.twisted_c1", format!("{qte_ok}/{}", chars.len()));
    obs.put("z25.qte.perturbation_rejected", perturbation_rejected);
    Ok(())
}

fn z8(obs: &mut Observed, out_dir: Option<&Path>) -> CliResult<()> {
    let cs = ResidueColorSet::new(2, 3, None)?;
    let r = electric_rmap(&cs)?;
    let text = write_rmap(&r);
    emit(out_dir, "z8.rmap", &text)?;
    obs.put("z8.colors", cs.len());
    obs.put("z8.rmap_sha256", sha256_hex(text.as_bytes()));
    obs.put("z8.bijective", r.is_bijective());
    let agree = (0..r.len())
        .filter(|&i| {
            let t = r.input(i);
            let reduced = reduced_form_z8(t[0] as u64, t[1] as u64, t[2] as u64);
            r.image(i).iter().zip(reduced).all(|(&c, x)| c as u64 == x)
        })
        .count();
    obs.put("z8.reduced_form_agreement", format!("{agree}/{}", r.len()));
    stte(obs, "z8", &r)?;

    let chars = characters(&cs)?;
    obs.put("z8.characters", chars.len());
    obs.put("z8.character_names", chars.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(";"));
    let system = coboundary_system(&r);
    let (mut ok1, mut ok2, mut qte_ok, mut certified, mut nontrivial_total) = (0, 0, 0, 0, 0);
    let (mut n1, mut n2, mut w1, mut w2) = (vec![], vec![], vec![], vec![]);
    for eta in &chars {
        let (c1, c2) = electric_cocycles(&cs, &r, eta)?;
        emit(out_dir, &format!("z8_c1_eta{}.cocycle", eta.index), &write_cocycle(&c1))?;
        emit(out_dir, &format!("z8_c2_eta{}.cocycle", eta.index), &write_cocycle(&c2))?;
        ok1 += check_cocycle(&r, &c1)?.holds() as usize;
        ok2 += check_cocycle(&r, &c2)?.holds() as usize;
        let rep = nontriviality_report(&cs, &r, eta)?;
        for (verdict, phi, names, witnesses) in [(&rep.c1, &c1, &mut n1, &mut w1), (&rep.c2, &c2, &mut n2, &mut w2)] {
            witnesses.push(verdict.witnesses.len());
            if verdict.nontrivial() {
                names.push(eta.index);
                nontrivial_total += 1;
                if let Some(cert) = &verdict.certificate {
                    let rhs: Vec<i64> = phi.table().iter().map(|&e| e as i64).collect();
                    certified += verify_certificate(&system, &rhs, phi.modulus(), cert) as usize;
                }
            }
            qte_ok += check_qte(&twisted_operator(&r, phi)?)?.holds() as usize;
        }
    }
    obs.put("z8.c1.cocycles", format!("{ok1}/{}", chars.len()));
    obs.put("z8.c2.cocycles", format!("{ok2}/{}", chars.len()));
    obs.put("z8.c1.nontrivial", list(&n1));
    obs.put("z8.c1.witness_counts", distinct(&w1));
    obs.put("z8.c2.nontrivial", list(&n2));
    obs.put("z8.c2.witness_counts", distinct(&w2));
    obs.put("z8.certificates_verified", format!("{certified}/{nontrivial_total}"));
    obs.put("z8.qte.untwisted", check_qte(&permutation_operator(&r, 1)?)?.holds());
    obs.put("z8.qte.twisted", format!("{qte_ok}/{}", 2 * chars.len()));
    Ok(())
}

/// Runs both pipelines; the verdict is false on any mismatch, each listed
/// as `mismatch.<key>`.
pub fn reproduce(out_dir: Option<&Path>, echo: String) -> CliResult<RunReport> {
    let mut report = RunReport::new(echo);
    let mut obs = Observed(Vec::new());
    let start = Instant::now();
    z25(&mut obs, out_dir)?;
    report.time("z25", start.elapsed());
    let start = Instant::now();
    z8(&mut obs, out_dir)?;
    report.time("z8", start.elapsed());

    let mut mismatches = Vec::new();
    for (key, value) in &obs.0 {
        report.field(key.clone(), value);
        match GOLDEN.iter().find(|(k, _)| k == key) {
            Some((_, expected)) if expected == value => {}
            Some((_, expected)) => mismatches.push(format!("{key}: expected {expected:?}, got {value:?}")),
            None => mismatches.push(format!("{key}: no golden value")),
        }
    }
    for (key, _) in GOLDEN {
        if !obs.0.iter().any(|(k, _)| k == key) {
            mismatches.push(format!("{key}: not computed"));
        }
    }
    report.field("golden_checked", GOLDEN.len()).field("mismatches", mismatches.len());
    for (i, m) in mismatches.iter().enumerate() {
        report.field(format!("mismatch.{i}"), m);
    }
    report.verdict(mismatches.is_empty());
    Ok(report)
}
