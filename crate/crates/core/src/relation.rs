//! Finite R-maps, the set-theoretic n-simplex equation and permitted colorings.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::faces::{
    absolutely_incoming_faces, binomial, direction_slot, enumerate_faces, EquationGraph,
    FaceCode, FaceGraph, Symbol,
};
use crate::{Check, Color};

/// Row-major index of a tuple over `0..colors` (first entry varies slowest).
pub fn tuple_index(colors: usize, tuple: &[Color]) -> usize {
    tuple
        .iter()
        .fold(0usize, |acc, &c| acc * colors + c as usize)
}

/// Inverse of [`tuple_index`].
pub fn index_tuple(colors: usize, len: usize, mut index: usize, out: &mut [Color]) {
    for slot in (0..len).rev() {
        out[slot] = (index % colors) as Color;
        index /= colors;
    }
}

pub fn checked_pow(base: usize, exp: usize) -> Option<usize> {
    (0..exp).try_fold(1usize, |acc, _| acc.checked_mul(base))
}

/// A map `X^n -> X^n` on colors `0..m`, stored as an explicit table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RMap {
    arity: usize,
    colors: usize,
    table: Vec<Color>,
}

impl RMap {
    /// Builds an R-map from a flat table of `m^n` output tuples in row-major
    /// input order.
    pub fn new(arity: usize, colors: usize, table: Vec<Color>) -> Result<Self> {
        if arity < 2 {
            return Err(Error::domain(format!("arity must be at least 2, got {arity}")));
        }
        if colors == 0 {
            return Err(Error::domain("color set must be non-empty"));
        }
        let rows = checked_pow(colors, arity)
            .ok_or_else(|| Error::domain("table size overflows"))?;
        if table.len() != rows * arity {
            return Err(Error::domain(format!(
                "table has {} entries, expected {}",
                table.len(),
                rows * arity
            )));
        }
        if let Some(bad) = table.iter().find(|&&c| c as usize >= colors) {
            return Err(Error::domain(format!("color {bad} is outside 0..{colors}")));
        }
        Ok(RMap {
            arity,
            colors,
            table,
        })
    }

    pub fn from_fn(
        arity: usize,
        colors: usize,
        mut f: impl FnMut(&[Color]) -> Vec<Color>,
    ) -> Result<Self> {
        let rows = checked_pow(colors, arity)
            .ok_or_else(|| Error::domain("table size overflows"))?;
        let mut table = Vec::with_capacity(rows * arity);
        let mut input = vec![0; arity];
        for idx in 0..rows {
            index_tuple(colors, arity, idx, &mut input);
            let out = f(&input);
            if out.len() != arity {
                return Err(Error::domain(format!(
                    "image of {input:?} has length {}, expected {arity}",
                    out.len()
                )));
            }
            table.extend(out);
        }
        RMap::new(arity, colors, table)
    }

    pub fn identity(arity: usize, colors: usize) -> Self {
        RMap::from_fn(arity, colors, |t| t.to_vec()).expect("identity table is well formed")
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn colors(&self) -> usize {
        self.colors
    }

    /// Number of input tuples, `m^n`.
    pub fn len(&self) -> usize {
        self.table.len() / self.arity
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn table(&self) -> &[Color] {
        &self.table
    }

    /// Image of the input tuple with the given row-major index.
    pub fn image(&self, index: usize) -> &[Color] {
        &self.table[index * self.arity..(index + 1) * self.arity]
    }

    pub fn apply(&self, input: &[Color]) -> &[Color] {
        self.image(tuple_index(self.colors, input))
    }

    pub fn input(&self, index: usize) -> Vec<Color> {
        let mut t = vec![0; self.arity];
        index_tuple(self.colors, self.arity, index, &mut t);
        t
    }

    /// True iff every tuple is hit exactly once.
    pub fn is_bijective(&self) -> bool {
        let mut seen = vec![false; self.len()];
        (0..self.len()).all(|i| {
            let j = tuple_index(self.colors, self.image(i));
            !std::mem::replace(&mut seen[j], true)
        })
    }

    /// Applies the map in place to the entries of `state` at `slots`.
    pub(crate) fn apply_at(&self, state: &mut [Color], slots: &[usize]) {
        let idx = slots
            .iter()
            .fold(0usize, |acc, &s| acc * self.colors + state[s] as usize);
        let image = self.image(idx);
        for (&s, &c) in slots.iter().zip(image) {
            state[s] = c;
        }
    }
}

pub fn check_bijective(r: &RMap) -> bool {
    r.is_bijective()
}

/// Applies `r` to the sub-tuple of `state` at `slots` (0-based, taken in the
/// given order) and leaves the other entries unchanged.
pub fn apply_on_slots(r: &RMap, state: &[Color], slots: &[usize]) -> Result<Vec<Color>> {
    if slots.len() != r.arity() {
        return Err(Error::domain(format!(
            "{} slots given for an R-map of arity {}",
            slots.len(),
            r.arity()
        )));
    }
    for (i, &s) in slots.iter().enumerate() {
        if s >= state.len() {
            return Err(Error::domain(format!(
                "slot {s} outside a state of length {}",
                state.len()
            )));
        }
        if slots[..i].contains(&s) {
            return Err(Error::domain(format!("slot {s} repeated")));
        }
    }
    if let Some(bad) = state.iter().find(|&&c| c as usize >= r.colors()) {
        return Err(Error::domain(format!("color {bad} outside 0..{}", r.colors())));
    }
    let mut out = state.to_vec();
    r.apply_at(&mut out, slots);
    Ok(out)
}

/// Applies a sequence of slot applications in order.
pub fn apply_sequence(r: &RMap, state: &mut [Color], sequence: &[Vec<usize>]) {
    for slots in sequence {
        r.apply_at(state, slots);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Each face color is derived once, from its first producer.
    Fast,
    /// Every producer derives the color and all derivations must agree.
    Strict,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Facet {
    /// `x_k = 0`.
    Front,
    /// `x_k = 1`.
    Rear,
}

impl Facet {
    pub fn symbol(self) -> Symbol {
        match self {
            Facet::Front => Symbol::Zero,
            Facet::Rear => Symbol::One,
        }
    }
}

#[derive(Clone, Debug)]
struct Step {
    cell: FaceCode,
    inputs: Vec<usize>,
    outputs: Vec<usize>,
}

/// Two derivations of one face color that disagree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub face: FaceCode,
    pub first_cell: FaceCode,
    pub second_cell: FaceCode,
    pub first: Color,
    pub second: Color,
}

impl Conflict {
    /// The (n+1)-face spanned by the two disagreeing n-faces.
    pub fn subcube(&self) -> FaceCode {
        let mut cube = self.face.clone();
        for cell in [&self.first_cell, &self.second_cell] {
            for pos in cell.star_positions() {
                cube = cube.with_symbol(pos, Symbol::Star);
            }
        }
        cube
    }
}

const UNSET: u32 = u32::MAX;

/// Precomputed propagation schedule for permitted colorings of `I^N`.
///
/// Cells are visited in the topological order of the face graph, so every
/// incoming face is colored before the cell that consumes it.
#[derive(Clone, Debug)]
pub struct Propagator {
    ambient: usize,
    arity: usize,
    walls: Vec<FaceCode>,
    sources: Vec<usize>,
    strict_plan: Vec<Step>,
    fast_plan: Vec<(usize, Vec<usize>)>,
}

impl Propagator {
    pub fn new(arity: usize, ambient: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::domain(format!("arity must be at least 2, got {arity}")));
        }
        if ambient + 1 < arity {
            return Err(Error::domain(format!(
                "colorings of I^{ambient} by {}-faces are empty",
                arity - 1
            )));
        }
        if ambient + 1 == arity {
            return Ok(Propagator {
                ambient,
                arity,
                walls: vec![FaceCode::full(ambient)],
                sources: vec![0],
                strict_plan: Vec::new(),
                fast_plan: Vec::new(),
            });
        }
        let graph = FaceGraph::build(ambient, arity)?;
        let sources = absolutely_incoming_faces(ambient, arity)?
            .iter()
            .map(|f| {
                graph
                    .wall_index(f)
                    .ok_or_else(|| Error::invariant(format!("{f} is not a wall")))
            })
            .collect::<Result<Vec<_>>>()?;
        let order = graph.cell_order();
        let strict_plan: Vec<Step> = order
            .iter()
            .map(|&c| Step {
                cell: graph.cells()[c].clone(),
                inputs: graph.incoming(c).to_vec(),
                outputs: graph.outgoing(c).to_vec(),
            })
            .collect();
        let mut claimed = vec![false; graph.walls().len()];
        let mut fast_plan = Vec::new();
        for (step, plan) in strict_plan.iter().enumerate() {
            let fresh: Vec<usize> = plan
                .outputs
                .iter()
                .enumerate()
                .filter(|(_, &w)| !std::mem::replace(&mut claimed[w], true))
                .map(|(k, _)| k)
                .collect();
            if !fresh.is_empty() {
                fast_plan.push((step, fresh));
            }
        }
        let colored = claimed.iter().filter(|c| **c).count() + sources.len();
        if colored != graph.walls().len() {
            return Err(Error::invariant(format!(
                "propagation on I^{ambient} leaves {} faces uncolored",
                graph.walls().len() - colored
            )));
        }
        Ok(Propagator {
            ambient,
            arity,
            walls: graph.walls().to_vec(),
            sources,
            strict_plan,
            fast_plan,
        })
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// All (n-1)-faces of `I^N`, lexicographic.
    pub fn walls(&self) -> &[FaceCode] {
        &self.walls
    }

    /// Wall indices of the absolutely incoming faces, in slot order.
    pub fn sources(&self) -> &[usize] {
        &self.sources
    }

    pub fn slot_count(&self) -> usize {
        self.sources.len()
    }

    pub fn wall_index(&self, face: &FaceCode) -> Option<usize> {
        self.walls.binary_search(face).ok()
    }

    /// Fills `colors` (one entry per wall) from the source colors.
    pub fn propagate_into(
        &self,
        r: &RMap,
        incoming: &[Color],
        colors: &mut [Color],
        mode: Mode,
    ) -> std::result::Result<(), Conflict> {
        debug_assert_eq!(colors.len(), self.walls.len());
        let mut input = [0 as Color; 16];
        let input = &mut input[..self.arity];
        match mode {
            Mode::Fast => {
                for (&w, &c) in self.sources.iter().zip(incoming) {
                    colors[w] = c;
                }
                for (step, fresh) in &self.fast_plan {
                    let plan = &self.strict_plan[*step];
                    for (slot, &w) in input.iter_mut().zip(&plan.inputs) {
                        *slot = colors[w];
                    }
                    let image = r.apply(input);
                    for &k in fresh {
                        colors[plan.outputs[k]] = image[k];
                    }
                }
                Ok(())
            }
            Mode::Strict => {
                colors.fill(UNSET);
                for (&w, &c) in self.sources.iter().zip(incoming) {
                    colors[w] = c;
                }
                let mut owner = vec![usize::MAX; colors.len()];
                for (step, plan) in self.strict_plan.iter().enumerate() {
                    for (slot, &w) in input.iter_mut().zip(&plan.inputs) {
                        *slot = colors[w];
                    }
                    let image = r.apply(input);
                    for (&w, &c) in plan.outputs.iter().zip(image) {
                        if colors[w] == UNSET {
                            colors[w] = c;
                            owner[w] = step;
                        } else if colors[w] != c {
                            return Err(Conflict {
                                face: self.walls[w].clone(),
                                first_cell: self.strict_plan[owner[w]].cell.clone(),
                                second_cell: plan.cell.clone(),
                                first: colors[w],
                                second: c,
                            });
                        }
                    }
                }
                Ok(())
            }
        }
    }

    fn validate(&self, r: &RMap, incoming: &[Color]) -> Result<()> {
        if r.arity() != self.arity {
            return Err(Error::domain(format!(
                "R-map has arity {}, propagator expects {}",
                r.arity(),
                self.arity
            )));
        }
        if r.arity() > 16 {
            return Err(Error::domain("arity above 16 is not supported"));
        }
        if incoming.len() != self.sources.len() {
            return Err(Error::domain(format!(
                "{} incoming colors given, I^{} has {} absolutely incoming faces",
                incoming.len(),
                self.ambient,
                self.sources.len()
            )));
        }
        if let Some(bad) = incoming.iter().find(|&&c| c as usize >= r.colors()) {
            return Err(Error::domain(format!("color {bad} outside 0..{}", r.colors())));
        }
        Ok(())
    }

    pub fn propagate(&self, r: &RMap, incoming: &[Color], mode: Mode) -> Result<PermittedColoring> {
        self.validate(r, incoming)?;
        let mut colors = vec![0; self.walls.len()];
        self.propagate_into(r, incoming, &mut colors, mode)
            .map_err(|c| Error::SimplexViolation {
                arity: self.arity,
                subcube: c.subcube(),
                face: c.face.clone(),
                first: c.first,
                second: c.second,
            })?;
        Ok(PermittedColoring {
            ambient: self.ambient,
            arity: self.arity,
            walls: self.walls.clone(),
            colors,
        })
    }
}

/// The unique permitted coloring of `I^N` with the given colors on the
/// absolutely incoming faces (slot order).
pub fn propagate(
    r: &RMap,
    ambient: usize,
    incoming: &[Color],
    mode: Mode,
) -> Result<PermittedColoring> {
    Propagator::new(r.arity(), ambient)?.propagate(r, incoming, mode)
}

/// A coloring of every (n-1)-face of `I^N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermittedColoring {
    ambient: usize,
    arity: usize,
    walls: Vec<FaceCode>,
    colors: Vec<Color>,
}

impl PermittedColoring {
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn faces(&self) -> &[FaceCode] {
        &self.walls
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn iter(&self) -> impl Iterator<Item = (&FaceCode, Color)> {
        self.walls.iter().zip(self.colors.iter().copied())
    }

    pub fn color_of(&self, face: &FaceCode) -> Option<Color> {
        self.walls.binary_search(face).ok().map(|i| self.colors[i])
    }

    /// Colors of the absolutely incoming faces, in slot order.
    pub fn incoming_colors(&self) -> Vec<Color> {
        absolutely_incoming_faces(self.ambient, self.arity)
            .expect("coloring dimensions are valid")
            .iter()
            .map(|f| self.color_of(f).expect("absolutely incoming face is colored"))
            .collect()
    }

    /// Checks the R-condition on every n-face.
    pub fn is_permitted(&self, r: &RMap) -> bool {
        if self.ambient < self.arity {
            return true;
        }
        enumerate_faces(self.ambient, self.arity)
            .expect("dimensions are valid")
            .iter()
            .all(|cell| {
                let ins: Vec<Color> = cell
                    .incoming_subfaces()
                    .iter()
                    .map(|f| self.color_of(f).expect("subface is colored"))
                    .collect();
                let outs: Vec<Color> = cell
                    .outgoing_subfaces()
                    .iter()
                    .map(|f| self.color_of(f).expect("subface is colored"))
                    .collect();
                r.apply(&ins) == outs.as_slice()
            })
    }

    /// Restriction to the facet `x_direction = 0` (front) or `1` (rear),
    /// identified with `I^{N-1}` by deleting that coordinate.
    pub fn restrict(&self, direction: usize, facet: Facet) -> Result<PermittedColoring> {
        if self.ambient < self.arity {
            return Err(Error::domain(format!(
                "I^{} has no facets carrying {}-faces",
                self.ambient,
                self.arity - 1
            )));
        }
        if direction >= self.ambient {
            return Err(Error::domain(format!(
                "direction {direction} outside 0..{}",
                self.ambient
            )));
        }
        let walls = enumerate_faces(self.ambient - 1, self.arity - 1)?;
        let colors = walls
            .iter()
            .map(|w| {
                self.color_of(&w.insert(direction, facet.symbol()))
                    .expect("facet face is colored")
            })
            .collect();
        Ok(PermittedColoring {
            ambient: self.ambient - 1,
            arity: self.arity,
            walls,
            colors,
        })
    }
}

/// A failing input of the geometric n-simplex check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplexCounterexample {
    /// Colors of the absolutely incoming faces of `I^{n+1}`, slot order.
    pub assignment: Vec<Color>,
    pub conflict: Conflict,
}

/// Checks the n-simplex equation by propagating every coloring of the
/// absolutely incoming faces of `I^{n+1}` and requiring every face color to
/// be derived consistently.
pub fn check_n_simplex(r: &RMap) -> Result<Check<SimplexCounterexample>> {
    let n = r.arity();
    let propagator = Propagator::new(n, n + 1)?;
    let slots = propagator.slot_count();
    let total = checked_pow(r.colors(), slots)
        .ok_or_else(|| Error::domain("assignment space overflows"))?;
    let walls = propagator.walls().len();
    let counterexample = (0..total)
        .into_par_iter()
        .map_init(
            || (vec![0; slots], vec![0; walls]),
            |(assignment, colors), idx| {
                index_tuple(r.colors(), slots, idx, assignment);
                propagator
                    .propagate_into(r, assignment, colors, Mode::Strict)
                    .err()
                    .map(|conflict| SimplexCounterexample {
                        assignment: assignment.clone(),
                        conflict,
                    })
            },
        )
        .find_first(Option::is_some)
        .flatten();
    Ok(Check {
        checked: total as u64,
        counterexample,
    })
}

/// Slot sequences of the two sides of the n-simplex equation on the state
/// space `X^{C(n+1,2)}`, each side listed in application order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SlotSequences {
    pub lhs: Vec<Vec<usize>>,
    pub rhs: Vec<Vec<usize>>,
}

/// The tetrahedron equation slots `123, 145, 246, 356` (0-based).
pub fn tetrahedron_slots() -> SlotSequences {
    let lhs = vec![vec![0, 1, 2], vec![0, 3, 4], vec![1, 3, 5], vec![2, 4, 5]];
    let rhs = lhs.iter().rev().cloned().collect();
    SlotSequences { lhs, rhs }
}

/// Slot sequences read off the equation graph: each n-face of `I^{n+1}`
/// acts on the slots of its incoming faces' directions.
pub fn composition_slots(arity: usize) -> Result<SlotSequences> {
    let graph = EquationGraph::build(arity)?;
    let slots_of = |cell: &FaceCode| -> Vec<usize> {
        cell.incoming_subfaces().iter().map(direction_slot).collect()
    };
    Ok(SlotSequences {
        lhs: graph.lhs_application_order().iter().map(slots_of).collect(),
        rhs: graph.rhs_application_order().iter().map(slots_of).collect(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionCounterexample {
    pub input: Vec<Color>,
    pub lhs: Vec<Color>,
    pub rhs: Vec<Color>,
}

/// Checks the n-simplex equation as equality of two compositions of R on
/// `X^{C(n+1,2)}`. Arity 3 uses the fixed tetrahedron slots.
pub fn check_n_simplex_composition(r: &RMap) -> Result<Check<CompositionCounterexample>> {
    let seq = if r.arity() == 3 {
        tetrahedron_slots()
    } else {
        composition_slots(r.arity())?
    };
    let len = binomial(r.arity() + 1, 2);
    let total = checked_pow(r.colors(), len)
        .ok_or_else(|| Error::domain("state space overflows"))?;
    let counterexample = (0..total)
        .into_par_iter()
        .map_init(
            || (vec![0; len], vec![0; len]),
            |(left, right), idx| {
                index_tuple(r.colors(), len, idx, left);
                right.copy_from_slice(left);
                let input = left.clone();
                apply_sequence(r, left, &seq.lhs);
                apply_sequence(r, right, &seq.rhs);
                (left != right).then(|| CompositionCounterexample {
                    input,
                    lhs: left.clone(),
                    rhs: right.clone(),
                })
            },
        )
        .find_first(Option::is_some)
        .flatten();
    Ok(Check {
        checked: total as u64,
        counterexample,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn face(s: &str) -> FaceCode {
        s.parse().unwrap()
    }

    #[test]
    fn table_validation() {
        assert!(RMap::new(3, 2, vec![0; 23]).is_err());
        assert!(RMap::new(3, 2, vec![2; 24]).is_err());
        assert!(RMap::new(1, 2, vec![0, 1]).is_err());
        assert!(RMap::new(2, 2, vec![0; 8]).is_ok());
    }

    #[test]
    fn bijectivity() {
        assert!(RMap::identity(3, 3).is_bijective());
        let constant = RMap::from_fn(3, 2, |_| vec![0, 0, 0]).unwrap();
        assert!(!constant.is_bijective());
        let swap = RMap::from_fn(2, 3, |t| vec![t[1], t[0]]).unwrap();
        assert!(check_bijective(&swap));
    }

    #[test]
    fn slot_application() {
        let shift = RMap::from_fn(3, 7, |t| t.iter().map(|c| (c + 1) % 7).collect()).unwrap();
        let state = [0, 1, 2, 3, 4, 5];
        assert_eq!(apply_on_slots(&shift, &state, &[2, 4, 5]).unwrap(), [0, 1, 3, 3, 5, 6]);
        assert_eq!(
            apply_on_slots(&RMap::identity(3, 7), &state, &[0, 1, 2]).unwrap(),
            state
        );
        assert!(apply_on_slots(&shift, &state, &[2, 2, 5]).is_err());
        assert!(apply_on_slots(&shift, &state, &[2, 4, 6]).is_err());
        assert!(apply_on_slots(&shift, &state, &[2, 4]).is_err());
    }

    #[test]
    fn generic_slots_reproduce_tetrahedron() {
        assert_eq!(composition_slots(3).unwrap(), tetrahedron_slots());
        let yb = composition_slots(2).unwrap();
        assert_eq!(yb.lhs, vec![vec![0, 1], vec![0, 2], vec![1, 2]]);
        assert_eq!(yb.rhs, vec![vec![1, 2], vec![0, 2], vec![0, 1]]);
    }

    #[test]
    fn single_face_propagation() {
        let r = RMap::from_fn(3, 4, |t| vec![(t[0] + t[1]) % 4, t[1], (t[2] + 3) % 4]).unwrap();
        let c = propagate(&r, 3, &[1, 2, 3], Mode::Strict).unwrap();
        assert_eq!(c.color_of(&face("0**")), Some(1));
        assert_eq!(c.color_of(&face("*1*")), Some(2));
        assert_eq!(c.color_of(&face("**0")), Some(3));
        assert_eq!(c.color_of(&face("1**")), Some(3));
        assert_eq!(c.color_of(&face("*0*")), Some(2));
        assert_eq!(c.color_of(&face("**1")), Some(2));
        assert_eq!(c.incoming_colors(), [1, 2, 3]);
    }

    #[test]
    fn degenerate_cube_propagation() {
        let r = RMap::identity(3, 2);
        let c = propagate(&r, 2, &[1], Mode::Fast).unwrap();
        assert_eq!(c.faces(), [face("**")]);
        assert_eq!(c.colors(), [1]);
        assert!(c.restrict(0, Facet::Front).is_err());
    }

    #[test]
    fn propagation_validates_input() {
        let r = RMap::identity(3, 2);
        assert!(propagate(&r, 4, &[0, 1], Mode::Fast).is_err());
        assert!(propagate(&r, 4, &[0, 1, 0, 1, 0, 2], Mode::Fast).is_err());
        assert!(propagate(&r, 1, &[0], Mode::Fast).is_err());
    }

    #[test]
    fn identity_solves_small_cases() {
        for n in 2..=4 {
            for m in 1..=3 {
                if n == 4 && m == 3 {
                    continue;
                }
                let r = RMap::identity(n, m);
                assert!(check_n_simplex(&r).unwrap().holds(), "n={n} m={m}");
                assert!(check_n_simplex_composition(&r).unwrap().holds(), "n={n} m={m}");
            }
        }
    }

    fn swapped_identity() -> RMap {
        // Identity on two colors with (0,0,0) and (0,0,1) exchanged.
        RMap::from_fn(3, 2, |t| match t {
            [0, 0, 0] => vec![0, 0, 1],
            [0, 0, 1] => vec![0, 0, 0],
            _ => t.to_vec(),
        })
        .unwrap()
    }

    #[test]
    fn single_swap_counterexample() {
        let r = swapped_identity();
        let comp = check_n_simplex_composition(&r).unwrap();
        assert_eq!(
            comp.counterexample,
            Some(CompositionCounterexample {
                input: vec![0; 6],
                lhs: vec![0, 0, 1, 0, 1, 1],
                rhs: vec![0, 0, 1, 0, 1, 0],
            })
        );
        let geo = check_n_simplex(&r).unwrap();
        let ce = geo.counterexample.expect("not a solution");
        assert_eq!(ce.assignment, vec![0; 6]);
        assert_eq!(ce.conflict.subcube(), face("****"));
        // The conflicting face is absolutely outgoing with the slot-6 direction.
        assert_eq!(ce.conflict.face, face("**11"));
        let err = propagate(&r, 4, &ce.assignment, Mode::Strict).unwrap_err();
        assert!(matches!(err, Error::SimplexViolation { arity: 3, .. }));
    }

    #[test]
    fn flipping_one_output_is_a_solution() {
        let r = RMap::from_fn(3, 2, |t| vec![1 - t[0], t[1], t[2]]).unwrap();
        assert!(check_n_simplex(&r).unwrap().holds());
    }
}
