//! Multiplicative tetrahedral 3-cocycles in exponent form.
//!
//! A cocycle assigns to every triple of colors an exponent `e ∈ Z/m`; the
//! multiplicative value is `ζ^e` for a fixed primitive m-th root of unity.
//! Products of values become sums of exponents, so all checks are exact.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::modular::{self, Certificate, LinearSolution};
use crate::relation::{index_tuple, tetrahedron_slots, tuple_index, RMap};
use crate::{Check, Color};

fn check_modulus(modulus: u64) -> Result<()> {
    if modulus < 1 {
        return Err(Error::domain("modulus must be positive"));
    }
    Ok(())
}

/// Exponents `X³ → Z/m`, row-major in the input triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cocycle {
    colors: usize,
    modulus: u64,
    table: Vec<u64>,
}

impl Cocycle {
    pub fn new(colors: usize, modulus: u64, table: Vec<u64>) -> Result<Self> {
        check_modulus(modulus)?;
        if table.len() != colors.pow(3) {
            return Err(Error::domain(format!(
                "cocycle over {colors} colors needs {} entries, got {}",
                colors.pow(3),
                table.len()
            )));
        }
        let table = table.into_iter().map(|e| e % modulus).collect();
        Ok(Cocycle {
            colors,
            modulus,
            table,
        })
    }

    pub fn zero(colors: usize, modulus: u64) -> Result<Self> {
        Self::new(colors, modulus, vec![0; colors.pow(3)])
    }

    pub fn from_fn(colors: usize, modulus: u64, mut f: impl FnMut(Color, Color, Color) -> u64) -> Result<Self> {
        let mut t = [0 as Color; 3];
        let table = (0..colors.pow(3))
            .map(|i| {
                index_tuple(colors, 3, i, &mut t);
                f(t[0], t[1], t[2])
            })
            .collect();
        Self::new(colors, modulus, table)
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn get(&self, a: Color, b: Color, c: Color) -> u64 {
        self.table[tuple_index(self.colors, &[a, b, c])]
    }

    pub fn at(&self, triple: &[Color]) -> u64 {
        self.table[tuple_index(self.colors, triple)]
    }

    /// Pointwise product of values (sum of exponents).
    pub fn add(&self, other: &Cocycle) -> Result<Cocycle> {
        self.same_shape(other)?;
        let table = self
            .table
            .iter()
            .zip(&other.table)
            .map(|(a, b)| (a + b) % self.modulus)
            .collect();
        Cocycle::new(self.colors, self.modulus, table)
    }

    /// Integer power of values (multiple of exponents).
    pub fn scale(&self, k: i64) -> Cocycle {
        let k = modular::reduce(k, self.modulus);
        Cocycle {
            colors: self.colors,
            modulus: self.modulus,
            table: self
                .table
                .iter()
                .map(|&e| modular::mul_mod(e, k, self.modulus))
                .collect(),
        }
    }

    /// The same table with one entry changed.
    pub fn with_entry(&self, triple: [Color; 3], exponent: u64) -> Cocycle {
        let mut out = self.clone();
        out.table[tuple_index(self.colors, &triple)] = exponent % self.modulus;
        out
    }

    fn same_shape(&self, other: &Cocycle) -> Result<()> {
        if self.colors != other.colors || self.modulus != other.modulus {
            return Err(Error::domain("cocycles over different color sets or moduli"));
        }
        Ok(())
    }

    fn fits(&self, r: &RMap) -> Result<()> {
        if r.arity() != 3 {
            return Err(Error::domain("cocycles are defined for arity-3 maps"));
        }
        if r.colors() != self.colors {
            return Err(Error::domain(format!(
                "R-map has {} colors, cocycle has {}",
                r.colors(),
                self.colors
            )));
        }
        Ok(())
    }
}

/// Per-color exponents `ψ: X → Z/m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Potential {
    modulus: u64,
    table: Vec<u64>,
}

impl Potential {
    pub fn new(modulus: u64, table: Vec<u64>) -> Result<Self> {
        check_modulus(modulus)?;
        Ok(Potential {
            modulus,
            table: table.into_iter().map(|e| e % modulus).collect(),
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn table(&self) -> &[u64] {
        &self.table
    }

    pub fn colors(&self) -> usize {
        self.table.len()
    }

    pub fn get(&self, color: Color) -> u64 {
        self.table[color as usize]
    }

    pub fn negate(&self) -> Potential {
        Potential {
            modulus: self.modulus,
            table: self.table.iter().map(|&e| (self.modulus - e) % self.modulus).collect(),
        }
    }
}

/// Which side of the cocycle identity: `Left` applies `R_123` first, then
/// `R_145, R_246, R_356`; `Right` applies them in reverse order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Accumulated exponent along one side for the 6-tuple `a`.
pub fn twisted_product_trace(r: &RMap, phi: &Cocycle, side: Side, a: &[Color; 6]) -> Result<u64> {
    phi.fits(r)?;
    if a.iter().any(|&c| c as usize >= r.colors()) {
        return Err(Error::domain("color outside the color set"));
    }
    Ok(trace(r, phi, side, a).0)
}

fn trace(r: &RMap, phi: &Cocycle, side: Side, a: &[Color; 6]) -> (u64, [Color; 6]) {
    let seq = tetrahedron_slots();
    let steps = match side {
        Side::Left => &seq.lhs,
        Side::Right => &seq.rhs,
    };
    let mut state = *a;
    let mut acc = 0u64;
    for slots in steps {
        let input = [state[slots[0]], state[slots[1]], state[slots[2]]];
        acc = (acc + phi.at(&input)) % phi.modulus;
        let out = r.apply(&input);
        for (&s, &c) in slots.iter().zip(out) {
            state[s] = c;
        }
    }
    (acc, state)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleCounterexample {
    pub input: [Color; 6],
    pub left: u64,
    pub right: u64,
}

/// Checks the eight-factor identity on every `(a_1..a_6) ∈ X^6`. Meaningful
/// when `R` solves the tetrahedron equation.
pub fn check_cocycle(r: &RMap, phi: &Cocycle) -> Result<Check<CocycleCounterexample>> {
    phi.fits(r)?;
    let m = r.colors();
    let total = m.pow(6);
    let counterexample = (0..total).into_par_iter().find_first(|&i| {
        let mut a = [0 as Color; 6];
        index_tuple(m, 6, i, &mut a);
        trace(r, phi, Side::Left, &a).0 != trace(r, phi, Side::Right, &a).0
    });
    Ok(Check {
        checked: total as u64,
        counterexample: counterexample.map(|i| {
            let mut a = [0 as Color; 6];
            index_tuple(m, 6, i, &mut a);
            CocycleCounterexample {
                input: a,
                left: trace(r, phi, Side::Left, &a).0,
                right: trace(r, phi, Side::Right, &a).0,
            }
        }),
    })
}

/// `δψ(a,b,c) = ψ(a)+ψ(b)+ψ(c) − ψ(a′)−ψ(b′)−ψ(c′)`.
pub fn coboundary_of(r: &RMap, psi: &Potential) -> Result<Cocycle> {
    if r.arity() != 3 || psi.colors() != r.colors() {
        return Err(Error::domain("potential and R-map disagree on the color set"));
    }
    let m = psi.modulus;
    Cocycle::from_fn(r.colors(), m, |a, b, c| {
        let image = r.apply(&[a, b, c]);
        let plus = psi.get(a) + psi.get(b) + psi.get(c);
        let minus: u64 = image.iter().map(|&x| psi.get(x)).sum();
        (plus + 3 * m - minus) % m
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoboundaryVerdict {
    /// `φ = δψ` for the returned potential.
    Coboundary(Potential),
    /// No potential exists; the certificate combines the per-triple equations.
    NotCoboundary(Certificate),
}

/// Coefficient rows of the system `δψ = φ`, one per triple, one column per color.
pub fn coboundary_system(r: &RMap) -> Vec<Vec<i64>> {
    (0..r.len())
        .map(|i| {
            let mut row = vec![0i64; r.colors()];
            for &x in &r.input(i) {
                row[x as usize] += 1;
            }
            for &x in r.image(i) {
                row[x as usize] -= 1;
            }
            row
        })
        .collect()
}

/// Decides whether `φ` is a coboundary by solving `δψ = φ` over `Z/m`.
pub fn solve_coboundary(r: &RMap, phi: &Cocycle) -> Result<CoboundaryVerdict> {
    phi.fits(r)?;
    if phi.modulus < 2 {
        return Err(Error::domain(format!(
            "modulus must be at least 2, got {}",
            phi.modulus
        )));
    }
    let rows = coboundary_system(r);
    let rhs: Vec<i64> = phi.table.iter().map(|&e| e as i64).collect();
    match modular::solve_mod(&rows, &rhs, phi.modulus)? {
        LinearSolution::Solution(psi) => {
            let psi = Potential::new(phi.modulus, psi)?;
            if &coboundary_of(r, &psi)? != phi {
                return Err(Error::invariant("solver returned a wrong potential"));
            }
            Ok(CoboundaryVerdict::Coboundary(psi))
        }
        LinearSolution::Inconsistent(cert) => Ok(CoboundaryVerdict::NotCoboundary(cert)),
    }
}

/// Fixed triples of `R` where `φ` is nonzero. Every coboundary vanishes on
/// fixed points, so any witness proves `φ` is not a coboundary.
pub fn fixed_point_obstruction(r: &RMap, phi: &Cocycle) -> Result<Vec<[Color; 3]>> {
    phi.fits(r)?;
    Ok((0..r.len())
        .filter(|&i| phi.table[i] != 0 && r.image(i) == r.input(i).as_slice())
        .map(|i| {
            let t = r.input(i);
            [t[0], t[1], t[2]]
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::relation::check_n_simplex;

    /// A small tetrahedron solution with fixed points: swap of colors 0,1 in every slot.
    fn swap_map() -> RMap {
        RMap::from_fn(3, 3, |t| {
            t.iter()
                .map(|&c| match c {
                    0 => 1,
                    1 => 0,
                    c => c,
                })
                .collect()
        })
        .unwrap()
    }

    #[test]
    fn zero_and_coboundaries_are_cocycles() {
        let r = swap_map();
        assert!(check_n_simplex(&r).unwrap().holds());
        assert!(check_cocycle(&r, &Cocycle::zero(3, 6).unwrap()).unwrap().holds());
        let psi = Potential::new(6, vec![1, 4, 5]).unwrap();
        let phi = coboundary_of(&r, &psi).unwrap();
        assert!(check_cocycle(&r, &phi).unwrap().holds());
        match solve_coboundary(&r, &phi).unwrap() {
            CoboundaryVerdict::Coboundary(found) => assert_eq!(coboundary_of(&r, &found).unwrap(), phi),
            other => panic!("{other:?}"),
        }
        assert!(fixed_point_obstruction(&r, &phi).unwrap().is_empty());
    }

    #[test]
    fn constant_potential_has_zero_coboundary() {
        let r = swap_map();
        let phi = coboundary_of(&r, &Potential::new(7, vec![3, 3, 3]).unwrap()).unwrap();
        assert_eq!(phi, Cocycle::zero(3, 7).unwrap());
    }

    #[test]
    fn fixed_point_witness_agrees_with_solver() {
        // Triples of color 2 only are fixed by the swap map.
        let r = swap_map();
        let phi = Cocycle::from_fn(3, 4, |a, b, c| u64::from(a == 2 && b == 2 && c == 2)).unwrap();
        assert_eq!(fixed_point_obstruction(&r, &phi).unwrap(), vec![[2, 2, 2]]);
        match solve_coboundary(&r, &phi).unwrap() {
            CoboundaryVerdict::NotCoboundary(cert) => assert_ne!(cert.residue, 0),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn traces_agree_iff_cocycle() {
        let r = swap_map();
        let phi = Cocycle::zero(3, 5).unwrap().with_entry([0, 1, 2], 1);
        let check = check_cocycle(&r, &phi).unwrap();
        let ce = check.counterexample.expect("single bump is not a cocycle");
        assert_eq!(twisted_product_trace(&r, &phi, Side::Left, &ce.input).unwrap(), ce.left);
        assert_eq!(twisted_product_trace(&r, &phi, Side::Right, &ce.input).unwrap(), ce.right);
        assert_ne!(ce.left, ce.right);
    }

    #[test]
    fn rejects_trivial_modulus() {
        let r = swap_map();
        assert!(solve_coboundary(&r, &Cocycle::zero(3, 1).unwrap()).is_err());
        assert!(Cocycle::zero(3, 0).is_err());
    }
}
