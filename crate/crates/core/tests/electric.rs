mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use simplex_core::cocycle::{check_cocycle, coboundary_of, coboundary_system};
use simplex_core::electric::*;
use simplex_core::modular::verify_certificate;
use simplex_core::relation::{check_n_simplex, check_n_simplex_composition};
use simplex_core::Error;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

#[test]
fn color_sets() {
    let cs = ResidueColorSet::new(5, 2, None).unwrap();
    assert_eq!((cs.epsilon(), cs.len(), cs.modulus()), (2, 5, 25));
    assert_eq!(cs.elements(), [2, 7, 12, 17, 22]);
    assert_eq!(ResidueColorSet::new(13, 2, None).unwrap().epsilon(), 5);
    assert_eq!(ResidueColorSet::new(2, 3, None).unwrap().elements(), [1, 3, 5, 7]);
    assert!(ResidueColorSet::new(7, 2, None).is_err(), "7 is not 1 mod 4");
    assert!(ResidueColorSet::new(5, 1, None).is_err());
    assert!(ResidueColorSet::new(5, 2, Some(1)).is_err(), "1 is not a square root of -1");
}

#[test]
fn closure_and_bijectivity() {
    for (p, k) in [(5, 2), (13, 2), (2, 3), (2, 4), (5, 3)] {
        let cs = ResidueColorSet::new(p, k, None).unwrap();
        let r = electric_rmap(&cs).unwrap();
        assert_eq!(r.colors(), p.pow(k - 1) as usize);
        assert!(r.is_bijective(), "p={p} k={k}");
        for idx in 0..r.len() {
            let t = r.input(idx);
            let w = electric_apply_mod(cs.element(t[0]), cs.element(t[1]), cs.element(t[2]), cs.modulus()).unwrap();
            assert_eq!(w.1 % p, cs.epsilon() % p, "y' stays in the class of epsilon");
        }
    }
}

#[test]
fn electric_solutions_pass_both_checks() {
    for (p, k) in [(5, 2), (2, 3), (2, 4)] {
        let cs = ResidueColorSet::new(p, k, None).unwrap();
        let r = electric_rmap(&cs).unwrap();
        assert!(check_n_simplex(&r).unwrap().holds(), "p={p} k={k}");
        assert!(check_n_simplex_composition(&r).unwrap().holds(), "p={p} k={k}");
    }
}

#[test]
fn reduced_forms_agree_with_direct_evaluation() {
    let (_, r25) = common::z25();
    for idx in 0..125 {
        let t = r25.input(idx);
        let reduced = reduced_form_z25(t[0] as u64, t[1] as u64, t[2] as u64);
        let direct: Vec<u64> = r25.apply(&t).iter().map(|&c| c as u64).collect();
        assert_eq!(reduced.to_vec(), direct, "{t:?}");
    }
    assert_eq!(reduced_form_z25(0, 1, 0), [0, 1, 0]);
    assert_eq!(reduced_form_z25(0, 0, 0), [3, 2, 3]);

    let (_, r8) = common::z8();
    for idx in 0..64 {
        let t = r8.input(idx);
        let reduced = reduced_form_z8(t[0] as u64, t[1] as u64, t[2] as u64);
        let direct: Vec<u64> = r8.apply(&t).iter().map(|&c| c as u64).collect();
        assert_eq!(reduced.to_vec(), direct, "{t:?}");
    }
    assert_eq!(reduced_form_z8(0, 0, 0), [1, 1, 1]);
}

#[test]
fn rational_evaluation() {
    let one = q(1, 1);
    assert_eq!(electric_apply_rational(&one, &one, &one).unwrap(), (q(1, 3), q(3, 1), q(1, 3)));
    let zero = q(0, 1);
    let (x, y) = (q(-4, 9), q(11, 2));
    assert_eq!(electric_apply_rational(&x, &y, &zero).unwrap(), (y.clone(), x.clone(), zero.clone()));
    assert!(matches!(
        electric_apply_rational(&one, &q(-2, 1), &one),
        Err(Error::Singular(_))
    ));
    assert!(matches!(electric_apply_mod(5, 1, 5, 25), Err(Error::Singular(_))));
}

#[test]
fn character_groups() {
    for ((p, k), count) in [((5, 2), 20), ((2, 3), 4), ((2, 4), 8), ((5, 3), 100), ((13, 2), 156)] {
        let cs = ResidueColorSet::new(p, k, None).unwrap();
        let chars = characters(&cs).unwrap();
        assert_eq!(chars.len(), count, "p={p} k={k}");
        assert!(chars.iter().all(Character::is_homomorphism));
        assert_eq!(chars.iter().filter(|c| c.is_trivial()).count(), 1);
        // Distinct homomorphisms.
        let units: Vec<u64> = (1..cs.modulus()).filter(|u| u % p != 0).collect();
        let mut tables: Vec<Vec<u64>> = chars.iter().map(|c| units.iter().map(|&u| c.eval(u).unwrap()).collect()).collect();
        tables.sort();
        tables.dedup();
        assert_eq!(tables.len(), count);
    }
    let cs = ResidueColorSet::new(5, 2, Some(2)).unwrap();
    for (j, eta) in characters(&cs).unwrap().iter().enumerate() {
        assert_eq!(eta.exponent, 20);
        assert_eq!(eta.eval(2).unwrap(), j as u64);
        assert_eq!(eta.eval(7).unwrap(), (5 * j as u64) % 20);
        assert!(eta.eval(5).is_err());
    }
    let names: Vec<String> = characters(&ResidueColorSet::new(2, 3, None).unwrap())
        .unwrap()
        .iter()
        .map(ToString::to_string)
        .collect();
    assert_eq!(names, ["eta0[7->0,5->0] mod 2", "eta1[7->0,5->1] mod 2", "eta2[7->1,5->0] mod 2", "eta3[7->1,5->1] mod 2"]);
}

#[test]
fn electric_cocycles_are_cocycles_with_closed_products() {
    let (cs, r) = common::z25();
    let chars = characters(&cs).unwrap();
    for eta in &chars {
        let (c1, c2) = electric_cocycles(&cs, &r, eta).unwrap();
        // c2 evaluates eta at y' = x + z + xyz computed in the ring.
        for idx in 0..125 {
            let t = r.input(idx);
            let [x, y, z] = [t[0], t[1], t[2]].map(|c| cs.element(c));
            assert_eq!(c1.get(t[0], t[1], t[2]), eta.eval(y).unwrap());
            assert_eq!(c2.get(t[0], t[1], t[2]), eta.eval((x + z + x * y * z) % 25).unwrap());
        }
        assert!(check_cocycle(&r, &c1).unwrap().holds(), "{eta}");
        assert!(check_cocycle(&r, &c2).unwrap().holds(), "{eta}");
        if eta.is_trivial() {
            assert!(c1.table().iter().chain(c2.table()).all(|&e| e == 0));
        }
    }
    let (c1, c2) = electric_cocycles(&cs, &r, &chars[3]).unwrap();
    for (i, j) in [(1, 1), (2, -1), (-3, 5), (7, 0)] {
        let product = c1.scale(i).add(&c2.scale(j)).unwrap();
        assert!(check_cocycle(&r, &product).unwrap().holds(), "c1^{i} c2^{j}");
    }
}

#[test]
fn z25_nontriviality_verdicts() {
    let (cs, r) = common::z25();
    let system = coboundary_system(&r);
    let mut nontrivial = Vec::new();
    for eta in characters(&cs).unwrap() {
        let report = nontriviality_report(&cs, &r, &eta).unwrap();
        let seven = eta.eval(7).unwrap();
        let (c1, c2) = electric_cocycles(&cs, &r, &eta).unwrap();
        for (verdict, phi) in [(&report.c1, &c1), (&report.c2, &c2)] {
            match (&verdict.potential, &verdict.certificate) {
                (Some(psi), None) => assert_eq!(&coboundary_of(&r, psi).unwrap(), phi),
                (None, Some(cert)) => {
                    let rhs: Vec<i64> = phi.table().iter().map(|&e| e as i64).collect();
                    assert!(verify_certificate(&system, &rhs, 20, cert));
                }
                _ => panic!("exactly one of potential and certificate"),
            }
        }
        if seven != 0 {
            assert!(report.c1.nontrivial());
            let mut expected: Vec<[u32; 3]> = (0..5).flat_map(|a| (0..5).map(move |c| [a, 1, c])).collect();
            expected.sort();
            let mut witnesses = report.c1.witnesses.clone();
            witnesses.sort();
            assert_eq!(witnesses, expected, "witnesses are (n1, 1, n3), y = y' = 7");
            nontrivial.push(eta.index);
        } else {
            assert!(!report.c1.nontrivial());
            assert!(report.c1.witnesses.is_empty());
        }
        // Computed finding: c2 is nontrivial for exactly the same characters.
        assert_eq!(report.c2.nontrivial(), seven != 0);
    }
    assert_eq!(nontrivial.len(), 15);
}

#[test]
fn z8_verdicts_are_certified_without_fixed_points() {
    let (cs, r) = common::z8();
    let system = coboundary_system(&r);
    for eta in characters(&cs).unwrap() {
        let report = nontriviality_report(&cs, &r, &eta).unwrap();
        assert!(report.c1.witnesses.is_empty());
        assert!(report.c2.witnesses.is_empty());
        assert_eq!(report.c1.nontrivial(), !eta.is_trivial(), "{eta}");
        assert_eq!(report.c2.nontrivial(), !eta.is_trivial(), "{eta}");
        let (c1, _) = electric_cocycles(&cs, &r, &eta).unwrap();
        if let Some(cert) = &report.c1.certificate {
            let rhs: Vec<i64> = c1.table().iter().map(|&e| e as i64).collect();
            assert!(verify_certificate(&system, &rhs, 2, cert));
        }
    }
}
