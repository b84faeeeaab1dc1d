//! The electric solution `(x,y,z) ↦ (xy/w, w, yz/w)`, `w = x + z + xyz`,
//! restricted to `X = {x ∈ Z/p^k : x ≡ ε (mod p)}` with `ε² ≡ −1 (mod p)`.

use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Zero;

use crate::cocycle::{fixed_point_obstruction, solve_coboundary, CoboundaryVerdict, Cocycle, Potential};
use crate::error::{Error, Result};
use crate::modular::{inverse_mod, is_prime, mul_mod, primitive_root};
use crate::modular::Certificate;
use crate::relation::RMap;
use crate::Color;

/// The color set `X ⊂ Z/p^k`, colors numbered by ascending representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueColorSet {
    p: u64,
    k: u32,
    epsilon: u64,
    modulus: u64,
}

impl ResidueColorSet {
    /// `epsilon = None` picks the smallest square root of −1 mod `p` (1 for `p = 2`).
    pub fn new(p: u64, k: u32, epsilon: Option<u64>) -> Result<Self> {
        if !is_prime(p) || !(p == 2 || p % 4 == 1) {
            return Err(Error::domain(format!("p = {p} must be 2 or a prime ≡ 1 mod 4")));
        }
        if k < 2 {
            return Err(Error::domain(format!("k = {k} must be at least 2")));
        }
        let modulus = p
            .checked_pow(k)
            .filter(|&q| q <= 1 << 20)
            .ok_or_else(|| Error::domain(format!("{p}^{k} is too large a ring")))?;
        let is_root = |e: u64| (e * e + 1).is_multiple_of(p);
        let epsilon = match epsilon {
            Some(e) if e < p && is_root(e) => e,
            Some(e) => {
                return Err(Error::domain(format!(
                    "ε = {e} is not a square root of −1 in 0..{p}"
                )))
            }
            None => (0..p).find(|&e| is_root(e)).expect("−1 is a square mod p"),
        };
        Ok(ResidueColorSet {
            p,
            k,
            epsilon,
            modulus,
        })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn epsilon(&self) -> u64 {
        self.epsilon
    }

    /// `p^k`.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn len(&self) -> usize {
        (self.modulus / self.p) as usize
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Ring element of color `t`: `ε + p·t`.
    pub fn element(&self, color: Color) -> u64 {
        self.epsilon + self.p * color as u64
    }

    pub fn color_of(&self, x: u64) -> Option<Color> {
        let x = x % self.modulus;
        (x % self.p == self.epsilon).then(|| ((x - self.epsilon) / self.p) as Color)
    }

    pub fn elements(&self) -> Vec<u64> {
        (0..self.len() as Color).map(|c| self.element(c)).collect()
    }
}

/// The electric map in `Z/modulus`; fails when `x + z + xyz` is not a unit.
pub fn electric_apply_mod(x: u64, y: u64, z: u64, modulus: u64) -> Result<(u64, u64, u64)> {
    let (x, y, z) = (x % modulus, y % modulus, z % modulus);
    let w = (x + z + mul_mod(mul_mod(x, y, modulus), z, modulus)) % modulus;
    let inv = inverse_mod(w, modulus).ok_or_else(|| {
        Error::Singular(format!("x + z + xyz = {w} is not invertible mod {modulus}"))
    })?;
    Ok((
        mul_mod(mul_mod(x, y, modulus), inv, modulus),
        w,
        mul_mod(mul_mod(y, z, modulus), inv, modulus),
    ))
}

/// The electric map over Q; fails on the singular locus `x + z + xyz = 0`.
pub fn electric_apply_rational(
    x: &BigRational,
    y: &BigRational,
    z: &BigRational,
) -> Result<(BigRational, BigRational, BigRational)> {
    let w = x + z + x * y * z;
    if w.is_zero() {
        return Err(Error::Singular(format!("x + z + xyz = 0 at ({x}, {y}, {z})")));
    }
    Ok((x * y / &w, w.clone(), y * z / &w))
}

/// The restriction to `X³` as an R-map on colors `0..|X|`.
pub fn electric_rmap(cs: &ResidueColorSet) -> Result<RMap> {
    let mut failure = None;
    let r = RMap::from_fn(3, cs.len(), |t| {
        let [x, y, z] = [t[0], t[1], t[2]].map(|c| cs.element(c));
        let out = electric_apply_mod(x, y, z, cs.modulus())
            .and_then(|(a, b, c)| {
                [a, b, c]
                    .iter()
                    .map(|&v| cs.color_of(v))
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| Error::invariant(format!("image of ({x},{y},{z}) leaves X")))
            });
        out.unwrap_or_else(|e| {
            failure.get_or_insert(e);
            vec![0; 3]
        })
    })?;
    if let Some(e) = failure {
        return Err(e);
    }
    if !r.is_bijective() {
        return Err(Error::invariant("electric map is not a bijection of X³"));
    }
    Ok(r)
}

/// `(n₁+2n₂−2, 2−n₂, n₃+2n₂−2) mod 5`, the Z/25, ε = 2 map in the coordinate `x = 2+5n`.
pub fn reduced_form_z25(n1: u64, n2: u64, n3: u64) -> [u64; 3] {
    let m = |v: i64| v.rem_euclid(5) as u64;
    let (n1, n2, n3) = (n1 as i64, n2 as i64, n3 as i64);
    [m(n1 + 2 * n2 - 2), m(2 - n2), m(n3 + 2 * n2 - 2)]
}

/// The Z/8 map on odd residues in the coordinate `x = 2n+1`, mod 4.
pub fn reduced_form_z8(n1: u64, n2: u64, n3: u64) -> [u64; 3] {
    let s = n1 * n2 + n1 * n3 + n2 * n3;
    [
        (n1 + 1 + 2 * (n2 + n3 + s)) % 4,
        (n2 + 1 + 2 * (n1 + n3 + s)) % 4,
        (n3 + 1 + 2 * (n1 + n2 + s)) % 4,
    ]
}

/// `(Z/p^k)^*` as a product of cyclic groups on fixed generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitGroup {
    modulus: u64,
    /// `(generator, order)`.
    generators: Vec<(u64, u64)>,
    /// Group exponent: characters take values in `Z/exponent`.
    exponent: u64,
    /// Per residue: exponent vector on the generators (`None` for non-units).
    coordinates: Vec<Option<Vec<u64>>>,
}

impl UnitGroup {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        let modulus = p.pow(k);
        let generators = if p == 2 && k >= 3 {
            vec![(modulus - 1, 2), (5, modulus / 4)]
        } else {
            let g = primitive_root(modulus)
                .ok_or_else(|| Error::invariant(format!("(Z/{modulus})^* should be cyclic")))?;
            vec![(g, modulus / p * (p - 1))]
        };
        let exponent = generators.iter().fold(1, |l, &(_, o)| l.lcm(&o));
        let mut coordinates = vec![None; modulus as usize];
        let mut frontier = vec![(1u64 % modulus, vec![0u64; generators.len()])];
        while let Some((u, coords)) = frontier.pop() {
            if coordinates[u as usize].is_some() {
                continue;
            }
            coordinates[u as usize] = Some(coords.clone());
            for (i, &(g, order)) in generators.iter().enumerate() {
                let next = mul_mod(u, g, modulus);
                let mut c = coords.clone();
                c[i] = (c[i] + 1) % order;
                if coordinates[next as usize].is_none() {
                    frontier.push((next, c));
                }
            }
        }
        let units = coordinates.iter().filter(|c| c.is_some()).count() as u64;
        let order: u64 = generators.iter().map(|&(_, o)| o).product();
        if units != order {
            return Err(Error::invariant(format!(
                "generators of (Z/{modulus})^* reach {units} units, expected {order}"
            )));
        }
        Ok(UnitGroup {
            modulus,
            generators,
            exponent,
            coordinates,
        })
    }

    pub fn generators(&self) -> &[(u64, u64)] {
        &self.generators
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn order(&self) -> u64 {
        self.generators.iter().map(|&(_, o)| o).product()
    }

    pub fn units(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.modulus).filter(|&u| self.coordinates[u as usize].is_some())
    }

    /// All characters, generator images enumerated with the first generator slowest.
    pub fn characters(&self) -> Vec<Character> {
        let choices: Vec<Vec<u64>> = self
            .generators
            .iter()
            .map(|&(_, order)| {
                let step = self.exponent / order;
                (0..order).map(|j| j * step).collect()
            })
            .collect();
        let mut out = Vec::new();
        let mut images = vec![0u64; choices.len()];
        let total: usize = choices.iter().map(Vec::len).product();
        for index in 0..total {
            let mut rest = index;
            for i in (0..choices.len()).rev() {
                images[i] = choices[i][rest % choices[i].len()];
                rest /= choices[i].len();
            }
            let table = self
                .coordinates
                .iter()
                .map(|c| {
                    c.as_ref().map(|c| {
                        c.iter()
                            .zip(&images)
                            .fold(0, |acc, (&e, &v)| (acc + e * v) % self.exponent)
                    })
                })
                .collect();
            out.push(Character {
                index,
                modulus: self.modulus,
                exponent: self.exponent,
                generators: self.generators.iter().map(|&(g, _)| g).collect(),
                images: images.clone(),
                table,
            });
        }
        out
    }
}

/// A homomorphism `η: (Z/p^k)^* → Z/m` in exponent form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Character {
    pub index: usize,
    pub modulus: u64,
    /// `m`, the exponent of the unit group.
    pub exponent: u64,
    pub generators: Vec<u64>,
    /// `η(generator_i)`.
    pub images: Vec<u64>,
    table: Vec<Option<u64>>,
}

impl Character {
    pub fn eval(&self, u: u64) -> Result<u64> {
        self.table[(u % self.modulus) as usize]
            .ok_or_else(|| Error::domain(format!("{u} is not a unit mod {}", self.modulus)))
    }

    pub fn is_trivial(&self) -> bool {
        self.images.iter().all(|&v| v == 0)
    }

    /// Checks `η(uv) = η(u) + η(v)` on all pairs of units.
    pub fn is_homomorphism(&self) -> bool {
        let units: Vec<u64> = (0..self.modulus)
            .filter(|&u| self.table[u as usize].is_some())
            .collect();
        units.iter().all(|&u| {
            units.iter().all(|&v| {
                let uv = mul_mod(u, v, self.modulus);
                self.table[uv as usize]
                    == Some((self.table[u as usize].unwrap() + self.table[v as usize].unwrap()) % self.exponent)
            })
        })
    }
}

impl std::fmt::Display for Character {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "eta{}[", self.index)?;
        for (i, (g, v)) in self.generators.iter().zip(&self.images).enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}->{v}")?;
        }
        write!(f, "] mod {}", self.exponent)
    }
}

pub fn characters(cs: &ResidueColorSet) -> Result<Vec<Character>> {
    Ok(UnitGroup::new(cs.p(), cs.k())?.characters())
}

/// `c₁(a,b,c) = η(b)` and `c₂(a,b,c) = η(b′)` with `b′ = R(a,b,c)₂`.
pub fn electric_cocycles(cs: &ResidueColorSet, r: &RMap, eta: &Character) -> Result<(Cocycle, Cocycle)> {
    if eta.modulus != cs.modulus() {
        return Err(Error::domain("character belongs to a different ring"));
    }
    if r.arity() != 3 || r.colors() != cs.len() {
        return Err(Error::domain("R-map does not live on this color set"));
    }
    let m = eta.exponent;
    let c1 = Cocycle::from_fn(cs.len(), m, |_, b, _| eta.eval(cs.element(b)).expect("X consists of units"))?;
    let c2 = Cocycle::from_fn(cs.len(), m, |a, b, c| {
        eta.eval(cs.element(r.apply(&[a, b, c])[1])).expect("X consists of units")
    })?;
    Ok((c1, c2))
}

/// Whether a cocycle is a coboundary, with the evidence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    /// Fixed triples with nonzero value; each alone proves nontriviality.
    pub witnesses: Vec<[Color; 3]>,
    pub potential: Option<Potential>,
    pub certificate: Option<Certificate>,
}

impl Verdict {
    pub fn nontrivial(&self) -> bool {
        self.potential.is_none()
    }
}

pub fn classify(r: &RMap, phi: &Cocycle) -> Result<Verdict> {
    let witnesses = fixed_point_obstruction(r, phi)?;
    let (potential, certificate) = match solve_coboundary(r, phi)? {
        CoboundaryVerdict::Coboundary(psi) => (Some(psi), None),
        CoboundaryVerdict::NotCoboundary(cert) => (None, Some(cert)),
    };
    if !witnesses.is_empty() && potential.is_some() {
        return Err(Error::invariant(
            "a fixed-point witness exists but the solver found a potential",
        ));
    }
    Ok(Verdict {
        witnesses,
        potential,
        certificate,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NontrivialityReport {
    pub character: Character,
    pub c1: Verdict,
    pub c2: Verdict,
}

pub fn nontriviality_report(cs: &ResidueColorSet, r: &RMap, eta: &Character) -> Result<NontrivialityReport> {
    let (c1, c2) = electric_cocycles(cs, r, eta)?;
    Ok(NontrivialityReport {
        character: eta.clone(),
        c1: classify(r, &c1)?,
        c2: classify(r, &c2)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rational_examples() {
        let one = q(1, 1);
        assert_eq!(
            electric_apply_rational(&one, &one, &one).unwrap(),
            (q(1, 3), q(3, 1), q(1, 3))
        );
        let (x, y) = (q(2, 7), q(-5, 3));
        assert_eq!(
            electric_apply_rational(&x, &y, &q(0, 1)).unwrap(),
            (y.clone(), x.clone(), q(0, 1))
        );
        assert!(matches!(
            electric_apply_rational(&q(1, 1), &q(-2, 1), &q(1, 1)),
            Err(Error::Singular(_))
        ));
    }

    #[test]
    fn color_sets() {
        let cs = ResidueColorSet::new(5, 2, None).unwrap();
        assert_eq!(cs.epsilon(), 2);
        assert_eq!(cs.elements(), vec![2, 7, 12, 17, 22]);
        assert_eq!(cs.color_of(17), Some(3));
        assert_eq!(cs.color_of(3), None);
        assert_eq!(ResidueColorSet::new(13, 2, None).unwrap().epsilon(), 5);
        assert_eq!(ResidueColorSet::new(2, 3, None).unwrap().elements(), vec![1, 3, 5, 7]);
        assert!(ResidueColorSet::new(7, 2, None).is_err());
        assert!(ResidueColorSet::new(5, 1, None).is_err());
        assert!(ResidueColorSet::new(5, 2, Some(1)).is_err());
    }

    #[test]
    fn reduced_forms_examples() {
        assert_eq!(reduced_form_z25(0, 1, 0), [0, 1, 0]);
        assert_eq!(reduced_form_z25(0, 0, 0), [3, 2, 3]);
        assert_eq!(reduced_form_z8(0, 0, 0), [1, 1, 1]);
    }

    #[test]
    fn unit_groups() {
        let g = UnitGroup::new(5, 2).unwrap();
        assert_eq!(g.generators(), &[(2, 20)]);
        assert_eq!(g.exponent(), 20);
        let g8 = UnitGroup::new(2, 3).unwrap();
        assert_eq!(g8.generators(), &[(7, 2), (5, 2)]);
        assert_eq!(g8.exponent(), 2);
        assert_eq!(g8.characters().len(), 4);
        let g16 = UnitGroup::new(2, 4).unwrap();
        assert_eq!((g16.order(), g16.exponent()), (8, 4));
        let g4 = UnitGroup::new(2, 2).unwrap();
        assert_eq!(g4.generators(), &[(3, 2)]);
    }

    #[test]
    fn z25_characters_on_seven() {
        let cs = ResidueColorSet::new(5, 2, Some(2)).unwrap();
        let chars = characters(&cs).unwrap();
        assert_eq!(chars.len(), 20);
        for eta in &chars {
            assert_eq!(eta.eval(7).unwrap(), 5 * eta.index as u64 % 20);
            assert!(eta.is_homomorphism());
        }
        assert!(chars[0].is_trivial());
        assert!(chars[3].eval(5).is_err());
    }
}
