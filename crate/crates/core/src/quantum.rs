//! Monomial operators: `e_t ↦ ζ^{phase(t)} e_{perm(t)}` on `V^{⊗L}`, `V = k[X]`.
//!
//! Operators act on basis tuples indexed row-major (first tensor slot
//! slowest). Products follow operator notation: in `A·B`, `B` acts first.

use rayon::prelude::*;

use crate::cocycle::{Cocycle, Potential};
use crate::error::{Error, Result};
use crate::relation::{checked_pow, index_tuple, tetrahedron_slots, tuple_index, RMap};
use crate::{Check, Color};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonomialOperator {
    arity: usize,
    colors: usize,
    modulus: u64,
    perm: Vec<usize>,
    phase: Vec<u64>,
}

impl MonomialOperator {
    pub fn new(arity: usize, colors: usize, modulus: u64, perm: Vec<usize>, phase: Vec<u64>) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::domain("modulus must be positive"));
        }
        let len = checked_pow(colors, arity).ok_or_else(|| Error::domain("operator too large"))?;
        if perm.len() != len || phase.len() != len {
            return Err(Error::domain(format!("operator on X^{arity} needs {len} entries")));
        }
        if perm.iter().any(|&p| p >= len) {
            return Err(Error::domain("basis index out of range"));
        }
        Ok(MonomialOperator {
            arity,
            colors,
            modulus,
            perm,
            phase: phase.into_iter().map(|e| e % modulus).collect(),
        })
    }

    pub fn identity(arity: usize, colors: usize, modulus: u64) -> Result<Self> {
        let len = checked_pow(colors, arity).ok_or_else(|| Error::domain("operator too large"))?;
        Self::new(arity, colors, modulus, (0..len).collect(), vec![0; len])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn phase(&self) -> &[u64] {
        &self.phase
    }

    /// Image of basis vector `t`: `(perm(t), phase(t))`.
    pub fn apply(&self, t: usize) -> (usize, u64) {
        (self.perm[t], self.phase[t])
    }

    pub fn is_diagonal(&self) -> bool {
        self.perm.iter().enumerate().all(|(i, &p)| i == p)
    }

    pub fn is_invertible(&self) -> bool {
        let mut seen = vec![false; self.perm.len()];
        self.perm.iter().all(|&p| !std::mem::replace(&mut seen[p], true))
    }

    fn same_space(&self, other: &MonomialOperator) -> Result<()> {
        if (self.arity, self.colors, self.modulus) != (other.arity, other.colors, other.modulus) {
            return Err(Error::domain("operators act on different spaces"));
        }
        Ok(())
    }

    /// `self · first`: apply `first`, then `self`.
    pub fn after(&self, first: &MonomialOperator) -> Result<MonomialOperator> {
        self.same_space(first)?;
        let (perm, phase) = (0..self.perm.len())
            .map(|t| {
                let (u, a) = first.apply(t);
                let (v, b) = self.apply(u);
                (v, (a + b) % self.modulus)
            })
            .unzip();
        Ok(MonomialOperator {
            perm,
            phase,
            ..*self
        })
    }

    pub fn inverse(&self) -> Result<MonomialOperator> {
        if !self.is_invertible() {
            return Err(Error::domain("permutation part is not a bijection"));
        }
        let m = self.modulus;
        let mut perm = vec![0; self.perm.len()];
        let mut phase = vec![0; self.perm.len()];
        for (t, (&u, &e)) in self.perm.iter().zip(&self.phase).enumerate() {
            perm[u] = t;
            phase[u] = (m - e) % m;
        }
        Ok(MonomialOperator {
            perm,
            phase,
            ..*self
        })
    }

    /// `D_ψ · self · D_ψ^{-1}` with `D_ψ = A^{⊗L}`, `A e_x = ζ^{ψ(x)} e_x`.
    pub fn conjugate_diagonal(&self, psi: &Potential) -> Result<MonomialOperator> {
        if psi.modulus() != self.modulus || psi.colors() != self.colors {
            return Err(Error::domain("potential does not match the operator"));
        }
        let m = self.modulus;
        let weight = |t: usize| -> u64 {
            let mut tuple = vec![0 as Color; self.arity];
            index_tuple(self.colors, self.arity, t, &mut tuple);
            tuple.iter().map(|&x| psi.get(x)).sum::<u64>() % m
        };
        let phase = (0..self.perm.len())
            .map(|t| (self.phase[t] + weight(self.perm[t]) + m - weight(t)) % m)
            .collect();
        Ok(MonomialOperator {
            perm: self.perm.clone(),
            phase,
            ..*self
        })
    }

    /// Phase as a point on the unit circle, for display only.
    pub fn render_phase(&self, t: usize) -> (f64, f64) {
        let angle = std::f64::consts::TAU * self.phase[t] as f64 / self.modulus as f64;
        (angle.cos(), angle.sin())
    }
}

/// `Φ(e_x⊗e_y⊗e_z) = e_{x′}⊗e_{y′}⊗e_{z′}`, phases in `Z/modulus` all zero.
pub fn permutation_operator(r: &RMap, modulus: u64) -> Result<MonomialOperator> {
    if r.arity() != 3 {
        return Err(Error::domain("tetrahedron operators have arity 3"));
    }
    let perm = (0..r.len()).map(|i| tuple_index(r.colors(), r.image(i))).collect();
    MonomialOperator::new(3, r.colors(), modulus, perm, vec![0; r.len()])
}

/// `Φ_φ(e_x⊗e_y⊗e_z) = ζ^{φ(x,y,z)} e_{x′}⊗e_{y′}⊗e_{z′}`.
pub fn twisted_operator(r: &RMap, phi: &Cocycle) -> Result<MonomialOperator> {
    if phi.colors() != r.colors() {
        return Err(Error::domain("cocycle and R-map disagree on the color set"));
    }
    let base = permutation_operator(r, phi.modulus())?;
    MonomialOperator::new(3, r.colors(), phi.modulus(), base.perm, phi.table().to_vec())
}

/// `Φ` acting on tensor slots `slots` (0-based) of `V^{⊗len}`, identity elsewhere.
pub fn embed_on_slots(op: &MonomialOperator, slots: &[usize], len: usize) -> Result<MonomialOperator> {
    if slots.len() != op.arity {
        return Err(Error::domain(format!("{} slots for an arity-{} operator", slots.len(), op.arity)));
    }
    let mut sorted = slots.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != slots.len() || sorted.last().is_some_and(|&s| s >= len) {
        return Err(Error::domain(format!("slots {slots:?} must be distinct and below {len}")));
    }
    let total = checked_pow(op.colors, len).ok_or_else(|| Error::domain("operator too large"))?;
    let mut state = vec![0 as Color; len];
    let mut sub = vec![0 as Color; op.arity];
    let (perm, phase) = (0..total)
        .map(|t| {
            index_tuple(op.colors, len, t, &mut state);
            for (s, &slot) in sub.iter_mut().zip(slots) {
                *s = state[slot];
            }
            let (u, e) = op.apply(tuple_index(op.colors, &sub));
            index_tuple(op.colors, op.arity, u, &mut sub);
            for (&slot, &c) in slots.iter().zip(sub.iter()) {
                state[slot] = c;
            }
            (tuple_index(op.colors, &state), e)
        })
        .unzip();
    MonomialOperator::new(len, op.colors, op.modulus, perm, phase)
}

/// Applies `op` on three slots of a 6-tuple, returning the phase gained.
fn act(op: &MonomialOperator, slots: &[usize], state: &mut [Color; 6]) -> u64 {
    let input = [state[slots[0]], state[slots[1]], state[slots[2]]];
    let (u, e) = op.apply(tuple_index(op.colors, &input));
    let mut out = [0 as Color; 3];
    index_tuple(op.colors, 3, u, &mut out);
    for (&s, &c) in slots.iter().zip(&out) {
        state[s] = c;
    }
    e
}

/// Image of `e_a` under one side of `Φ₁₂₃Φ₁₄₅Φ₂₄₆Φ₃₅₆ = Φ₃₅₆Φ₂₄₆Φ₁₄₅Φ₁₂₃`.
/// The left product lets `Φ₃₅₆` act first.
pub fn tetrahedron_image(op: &MonomialOperator, left: bool, a: &[Color; 6]) -> ([Color; 6], u64) {
    let seq = tetrahedron_slots();
    // seq.lhs lists 123,145,246,356; the operator product acts right to left.
    let order = if left { &seq.rhs } else { &seq.lhs };
    let mut state = *a;
    let phase = order
        .iter()
        .fold(0, |acc, slots| (acc + act(op, slots, &mut state)) % op.modulus);
    (state, phase)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QteCounterexample {
    pub input: [Color; 6],
    pub lhs: ([Color; 6], u64),
    pub rhs: ([Color; 6], u64),
}

/// Compares both sides of the quantum tetrahedron equation on every basis
/// vector of `V^{⊗6}`: same target vector and same phase.
pub fn check_qte(op: &MonomialOperator) -> Result<Check<QteCounterexample>> {
    if op.arity != 3 {
        return Err(Error::domain("the tetrahedron equation needs an arity-3 operator"));
    }
    let m = op.colors;
    let total = checked_pow(m, 6).ok_or_else(|| Error::domain("state space overflows"))?;
    let decode = |i: usize| {
        let mut a = [0 as Color; 6];
        index_tuple(m, 6, i, &mut a);
        a
    };
    let counterexample = (0..total).into_par_iter().find_first(|&i| {
        let a = decode(i);
        tetrahedron_image(op, true, &a) != tetrahedron_image(op, false, &a)
    });
    Ok(Check {
        checked: total as u64,
        counterexample: counterexample.map(|i| {
            let a = decode(i);
            QteCounterexample {
                input: a,
                lhs: tetrahedron_image(op, true, &a),
                rhs: tetrahedron_image(op, false, &a),
            }
        }),
    })
}

/// Both sides of the equation as explicit operators on `V^{⊗6}`.
pub fn tetrahedron_sides(op: &MonomialOperator) -> Result<(MonomialOperator, MonomialOperator)> {
    let seq = tetrahedron_slots();
    let embedded: Vec<MonomialOperator> = seq
        .lhs
        .iter()
        .map(|s| embed_on_slots(op, s, 6))
        .collect::<Result<_>>()?;
    // Φ₁₂₃·(Φ₁₄₅·(Φ₂₄₆·Φ₃₅₆)) and Φ₃₅₆·(Φ₂₄₆·(Φ₁₄₅·Φ₁₂₃)).
    let lhs = embedded[..3]
        .iter()
        .rev()
        .try_fold(embedded[3].clone(), |acc, e| e.after(&acc))?;
    let rhs = embedded[1..]
        .iter()
        .try_fold(embedded[0].clone(), |acc, e| e.after(&acc))?;
    Ok((lhs, rhs))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeVerdict {
    pub equivalent: bool,
    /// First basis triple where the phases disagree, or why comparison failed.
    pub reason: Option<String>,
}

/// Whether `phase′(t) = phase(t) + ψ(x)+ψ(y)+ψ(z) − ψ(x′)−ψ(y′)−ψ(z′)` for
/// all triples, i.e. `Φ′ = D_{−ψ} Φ D_{−ψ}^{-1}`.
pub fn gauge_equivalent(phi: &MonomialOperator, phi2: &MonomialOperator, psi: &Potential) -> Result<GaugeVerdict> {
    if phi.perm != phi2.perm {
        return Ok(GaugeVerdict {
            equivalent: false,
            reason: Some("permutation parts differ; diagonal conjugation cannot relate them".into()),
        });
    }
    phi.same_space(phi2)?;
    let expected = phi.conjugate_diagonal(&psi.negate())?;
    let bad = (0..phi.perm.len()).find(|&t| expected.phase[t] != phi2.phase[t]);
    Ok(GaugeVerdict {
        equivalent: bad.is_none(),
        reason: bad.map(|t| {
            let mut tuple = vec![0 as Color; phi.arity];
            index_tuple(phi.colors, phi.arity, t, &mut tuple);
            format!(
                "phase at {tuple:?} is {}, expected {}",
                phi2.phase[t], expected.phase[t]
            )
        }),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cocycle::coboundary_of;
    use crate::relation::apply_on_slots;

    fn swap_map() -> RMap {
        RMap::from_fn(3, 3, |t| t.iter().map(|&c| [1, 0, 2][c as usize]).collect()).unwrap()
    }

    #[test]
    fn identity_and_inverse() {
        let r = swap_map();
        let op = twisted_operator(&r, &Cocycle::from_fn(3, 5, |a, b, c| (a + 2 * b + c) as u64).unwrap()).unwrap();
        let id = MonomialOperator::identity(3, 3, 5).unwrap();
        assert_eq!(op.after(&id).unwrap(), op);
        assert_eq!(id.after(&op).unwrap(), op);
        assert_eq!(op.inverse().unwrap().after(&op).unwrap(), id);
        assert!(permutation_operator(&RMap::identity(3, 2), 3).unwrap().is_diagonal());
    }

    #[test]
    fn embedding_matches_slot_application() {
        let r = swap_map();
        let op = permutation_operator(&r, 1).unwrap();
        let e = embed_on_slots(&op, &[2, 4, 5], 6).unwrap();
        let mut a = [0 as Color; 6];
        for t in 0..3usize.pow(6) {
            index_tuple(3, 6, t, &mut a);
            let expected = apply_on_slots(&r, &a, &[2, 4, 5]).unwrap();
            assert_eq!(e.perm()[t], tuple_index(3, &expected));
        }
        assert!(embed_on_slots(&op, &[1, 1, 2], 6).is_err());
        assert!(embed_on_slots(&op, &[1, 2, 6], 6).is_err());
    }

    #[test]
    fn explicit_sides_agree_with_pointwise_images() {
        let r = swap_map();
        let phi = Cocycle::from_fn(3, 4, |a, _, c| (a * c) as u64).unwrap();
        let op = twisted_operator(&r, &phi).unwrap();
        let (lhs, rhs) = tetrahedron_sides(&op).unwrap();
        let mut a = [0 as Color; 6];
        for t in 0..3usize.pow(6) {
            index_tuple(3, 6, t, &mut a);
            for (side, left) in [(&lhs, true), (&rhs, false)] {
                let (state, phase) = tetrahedron_image(&op, left, &a);
                assert_eq!(side.apply(t), (tuple_index(3, &state), phase));
            }
        }
    }

    #[test]
    fn gauge_by_coboundary() {
        let r = swap_map();
        let phi = Cocycle::zero(3, 6).unwrap();
        let psi = Potential::new(6, vec![1, 5, 2]).unwrap();
        let phi2 = phi.add(&coboundary_of(&r, &psi).unwrap()).unwrap();
        let a = twisted_operator(&r, &phi).unwrap();
        let b = twisted_operator(&r, &phi2).unwrap();
        assert!(gauge_equivalent(&a, &b, &psi).unwrap().equivalent);
        assert!(gauge_equivalent(&a, &a, &Potential::new(6, vec![0; 3]).unwrap()).unwrap().equivalent);
        let other = permutation_operator(&RMap::identity(3, 3), 6).unwrap();
        let v = gauge_equivalent(&a, &other, &psi).unwrap();
        assert!(!v.equivalent && v.reason.is_some());
    }
}
