//! Faces of the cube `I^N` and the incidence structure that drives colorings.
//!
//! A face is a word over `{0, 1, *}`; stars mark free coordinates. For an
//! n-face with stars at `j_1 < ... < j_n`, the codimension-1 subface obtained
//! by fixing `j_k` is *incoming* when the fixed digit equals the alternating
//! pattern `0, 1, 0, ...` at rank `k`, and *outgoing* otherwise.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Symbol {
    Zero,
    One,
    Star,
}

impl Symbol {
    pub fn digit(bit: bool) -> Symbol {
        if bit {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }

    /// The digit an incoming subface carries at a star of the given rank.
    pub fn alternating(rank: usize) -> Symbol {
        Symbol::digit(rank % 2 == 1)
    }

    pub fn flipped(self) -> Symbol {
        match self {
            Symbol::Zero => Symbol::One,
            Symbol::One => Symbol::Zero,
            Symbol::Star => Symbol::Star,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Symbol::Zero => '0',
            Symbol::One => '1',
            Symbol::Star => '*',
        }
    }
}

/// A face of `I^N`, leftmost coordinate first.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FaceCode(Vec<Symbol>);

impl FaceCode {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::domain("a face code needs at least one coordinate"));
        }
        Ok(FaceCode(symbols))
    }

    /// The whole cube `I^N`.
    pub fn full(ambient: usize) -> Self {
        FaceCode(vec![Symbol::Star; ambient])
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn ambient_dim(&self) -> usize {
        self.0.len()
    }

    pub fn dim(&self) -> usize {
        self.0.iter().filter(|s| **s == Symbol::Star).count()
    }

    pub fn star_positions(&self) -> Vec<usize> {
        self.positions(|s| s == Symbol::Star)
    }

    pub fn fixed_positions(&self) -> Vec<usize> {
        self.positions(|s| s != Symbol::Star)
    }

    fn positions(&self, pred: impl Fn(Symbol) -> bool) -> Vec<usize> {
        self.0
            .iter()
            .enumerate()
            .filter(|(_, s)| pred(**s))
            .map(|(i, _)| i)
            .collect()
    }

    /// Number of stars strictly left of `pos`.
    pub fn stars_before(&self, pos: usize) -> usize {
        self.0[..pos].iter().filter(|s| **s == Symbol::Star).count()
    }

    /// True when `other` is a (not necessarily proper) subface of `self`.
    pub fn contains(&self, other: &FaceCode) -> bool {
        self.0.len() == other.0.len()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| *a == Symbol::Star || a == b)
    }

    pub fn with_symbol(&self, pos: usize, symbol: Symbol) -> FaceCode {
        let mut symbols = self.0.clone();
        symbols[pos] = symbol;
        FaceCode(symbols)
    }

    /// Deletes coordinate `pos`, identifying a facet of `I^N` with `I^{N-1}`.
    pub fn remove(&self, pos: usize) -> FaceCode {
        let mut symbols = self.0.clone();
        symbols.remove(pos);
        FaceCode(symbols)
    }

    /// Inverse of [`FaceCode::remove`]: embeds a face of `I^{N-1}` into the
    /// facet `x_pos = symbol` of `I^N`.
    pub fn insert(&self, pos: usize, symbol: Symbol) -> FaceCode {
        let mut symbols = self.0.clone();
        symbols.insert(pos, symbol);
        FaceCode(symbols)
    }

    /// Codimension-1 subfaces fixing each star to its incoming digit, in
    /// order of the fixed coordinate.
    pub fn incoming_subfaces(&self) -> Vec<FaceCode> {
        self.star_positions()
            .into_iter()
            .enumerate()
            .map(|(rank, pos)| self.with_symbol(pos, Symbol::alternating(rank)))
            .collect()
    }

    /// Codimension-1 subfaces fixing each star to its outgoing digit, in
    /// order of the fixed coordinate.
    pub fn outgoing_subfaces(&self) -> Vec<FaceCode> {
        self.star_positions()
            .into_iter()
            .enumerate()
            .map(|(rank, pos)| self.with_symbol(pos, Symbol::alternating(rank).flipped()))
            .collect()
    }
}

impl fmt::Display for FaceCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for FaceCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let symbols = s
            .chars()
            .enumerate()
            .map(|(i, c)| match c {
                '0' => Ok(Symbol::Zero),
                '1' => Ok(Symbol::One),
                '*' => Ok(Symbol::Star),
                other => Err(Error::Parse {
                    line: 1,
                    column: i + 1,
                    message: format!("unexpected face symbol {other:?}"),
                }),
            })
            .collect::<Result<Vec<_>>>()?;
        FaceCode::new(symbols)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FaceRole {
    Incoming,
    Outgoing,
}

/// All `k`-faces of `I^N` in lexicographic order (`0 < 1 < *`).
pub fn enumerate_faces(ambient: usize, k: usize) -> Result<Vec<FaceCode>> {
    if ambient == 0 {
        return Err(Error::domain("ambient dimension must be positive"));
    }
    if k > ambient {
        return Err(Error::domain(format!(
            "no {k}-faces in a cube of dimension {ambient}"
        )));
    }
    fn walk(prefix: &mut Vec<Symbol>, remaining: usize, stars: usize, out: &mut Vec<FaceCode>) {
        if remaining == 0 {
            out.push(FaceCode(prefix.clone()));
            return;
        }
        for sym in [Symbol::Zero, Symbol::One, Symbol::Star] {
            let left = match sym {
                Symbol::Star if stars == 0 => continue,
                Symbol::Star => stars - 1,
                _ if stars == remaining => continue,
                _ => stars,
            };
            prefix.push(sym);
            walk(prefix, remaining - 1, left, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    walk(&mut Vec::with_capacity(ambient), ambient, k, &mut out);
    Ok(out)
}

/// Classifies `g` as an incoming or outgoing facet of `f`.
pub fn classify_subface(f: &FaceCode, g: &FaceCode) -> Result<FaceRole> {
    let not_facet = || Error::domain(format!("{g} is not a codimension-1 subface of {f}"));
    if f.ambient_dim() != g.ambient_dim() || g.dim() + 1 != f.dim() || !f.contains(g) {
        return Err(not_facet());
    }
    let pos = f
        .symbols()
        .iter()
        .zip(g.symbols())
        .position(|(a, b)| a != b)
        .ok_or_else(not_facet)?;
    if g.symbols()[pos] == Symbol::alternating(f.stars_before(pos)) {
        Ok(FaceRole::Incoming)
    } else {
        Ok(FaceRole::Outgoing)
    }
}

/// Number of n-faces containing the (n-1)-face `g` for which `g` is incoming.
pub fn face_order(g: &FaceCode, arity: usize) -> Result<usize> {
    if g.dim() + 1 != arity {
        return Err(Error::domain(format!(
            "face {g} has dimension {}, expected {}",
            g.dim(),
            arity.saturating_sub(1)
        )));
    }
    Ok(g.fixed_positions()
        .into_iter()
        .filter(|&pos| g.symbols()[pos] == Symbol::alternating(g.stars_before(pos)))
        .count())
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn walk(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            walk(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        walk(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn check_slot_range(ambient: usize, arity: usize) -> Result<()> {
    if arity < 2 {
        return Err(Error::domain(format!("arity must be at least 2, got {arity}")));
    }
    if ambient + 1 < arity {
        return Err(Error::domain(format!(
            "cube I^{ambient} has no {}-faces",
            arity - 1
        )));
    }
    Ok(())
}

fn extreme_faces(ambient: usize, arity: usize, incoming: bool) -> Result<Vec<FaceCode>> {
    check_slot_range(ambient, arity)?;
    let fixed_count = ambient + 1 - arity;
    Ok(combinations(ambient, fixed_count)
        .into_iter()
        .map(|fixed| {
            let mut face = FaceCode::full(ambient);
            for &pos in &fixed {
                face.0[pos] = Symbol::Zero;
            }
            for &pos in &fixed {
                let digit = Symbol::alternating(face.stars_before(pos));
                face.0[pos] = if incoming { digit } else { digit.flipped() };
            }
            face
        })
        .collect())
}

/// The absolutely incoming (n-1)-faces of `I^N`, one per direction.
///
/// Slot order: directions are ranked lexicographically by their set of fixed
/// coordinates. For `N = n + 1` this labels the six 2-faces of `I^4` so that the
/// four 3-faces act on slots `{1,2,3}, {1,4,5}, {2,4,6}, {3,5,6}`.
pub fn absolutely_incoming_faces(ambient: usize, arity: usize) -> Result<Vec<FaceCode>> {
    extreme_faces(ambient, arity, true)
}

pub fn absolutely_outgoing_faces(ambient: usize, arity: usize) -> Result<Vec<FaceCode>> {
    extreme_faces(ambient, arity, false)
}

/// Slot index of an (n-1)-face's direction within the order used by
/// [`absolutely_incoming_faces`].
pub fn direction_slot(face: &FaceCode) -> usize {
    let n = face.ambient_dim();
    let fixed = face.fixed_positions();
    let k = fixed.len();
    let mut rank = 0;
    let mut prev = 0;
    for (i, &c) in fixed.iter().enumerate() {
        for j in prev..c {
            rank += binomial(n - 1 - j, k - 1 - i);
        }
        prev = c + 1;
    }
    rank
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    /// An n-face.
    Cell(usize),
    /// An (n-1)-face.
    Wall(usize),
}

/// The directed incidence graph between n-faces ("cells") and (n-1)-faces
/// ("walls") of `I^N`: cell → wall for outgoing walls, wall → cell for
/// incoming ones.
#[derive(Clone, Debug)]
pub struct FaceGraph {
    ambient: usize,
    arity: usize,
    cells: Vec<FaceCode>,
    walls: Vec<FaceCode>,
    wall_index: HashMap<FaceCode, usize>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
    producers: Vec<Vec<usize>>,
    consumers: Vec<Vec<usize>>,
    order: Vec<Vertex>,
}

impl FaceGraph {
    pub fn build(ambient: usize, arity: usize) -> Result<Self> {
        if arity < 2 || arity > ambient {
            return Err(Error::domain(format!(
                "face graph needs 2 <= n <= N, got n={arity}, N={ambient}"
            )));
        }
        let cells = enumerate_faces(ambient, arity)?;
        let walls = enumerate_faces(ambient, arity - 1)?;
        let wall_index: HashMap<FaceCode, usize> = walls
            .iter()
            .enumerate()
            .map(|(i, w)| (w.clone(), i))
            .collect();
        let lookup = |faces: Vec<FaceCode>| -> Vec<usize> {
            faces.iter().map(|f| wall_index[f]).collect()
        };
        let incoming: Vec<Vec<usize>> = cells.iter().map(|c| lookup(c.incoming_subfaces())).collect();
        let outgoing: Vec<Vec<usize>> = cells.iter().map(|c| lookup(c.outgoing_subfaces())).collect();

        let mut producers = vec![Vec::new(); walls.len()];
        let mut consumers = vec![Vec::new(); walls.len()];
        for (c, (ins, outs)) in incoming.iter().zip(&outgoing).enumerate() {
            for &w in ins {
                consumers[w].push(c);
            }
            for &w in outs {
                producers[w].push(c);
            }
        }

        let mut graph = FaceGraph {
            ambient,
            arity,
            cells,
            walls,
            wall_index,
            incoming,
            outgoing,
            producers,
            consumers,
            order: Vec::new(),
        };
        graph.order = graph.sort_topologically()?;
        Ok(graph)
    }

    /// Kahn's algorithm; ready vertices are taken in lexicographic face order.
    fn sort_topologically(&self) -> Result<Vec<Vertex>> {
        let mut all: Vec<(&FaceCode, Vertex)> = self
            .cells
            .iter()
            .enumerate()
            .map(|(i, f)| (f, Vertex::Cell(i)))
            .chain(self.walls.iter().enumerate().map(|(i, f)| (f, Vertex::Wall(i))))
            .collect();
        all.sort();
        let mut global = HashMap::with_capacity(all.len());
        for (g, (_, v)) in all.iter().enumerate() {
            global.insert(*v, g);
        }
        let mut indegree: Vec<usize> = all
            .iter()
            .map(|(_, v)| match *v {
                Vertex::Cell(_) => self.arity,
                Vertex::Wall(w) => self.producers[w].len(),
            })
            .collect();
        let mut heap: BinaryHeap<Reverse<usize>> = indegree
            .iter()
            .enumerate()
            .filter(|(_, d)| **d == 0)
            .map(|(g, _)| Reverse(g))
            .collect();
        let mut order = Vec::with_capacity(all.len());
        while let Some(Reverse(g)) = heap.pop() {
            let v = all[g].1;
            order.push(v);
            for succ in self.successors(v) {
                let gs = global[&succ];
                indegree[gs] -= 1;
                if indegree[gs] == 0 {
                    heap.push(Reverse(gs));
                }
            }
        }
        if order.len() != all.len() {
            return Err(Error::invariant(format!(
                "face graph of I^{} (n={}) has a directed cycle",
                self.ambient, self.arity
            )));
        }
        Ok(order)
    }

    pub fn successors(&self, v: Vertex) -> Vec<Vertex> {
        match v {
            Vertex::Cell(c) => self.outgoing[c].iter().map(|&w| Vertex::Wall(w)).collect(),
            Vertex::Wall(w) => self.consumers[w].iter().map(|&c| Vertex::Cell(c)).collect(),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn cells(&self) -> &[FaceCode] {
        &self.cells
    }

    pub fn walls(&self) -> &[FaceCode] {
        &self.walls
    }

    pub fn wall_index(&self, face: &FaceCode) -> Option<usize> {
        self.wall_index.get(face).copied()
    }

    pub fn face(&self, v: Vertex) -> &FaceCode {
        match v {
            Vertex::Cell(c) => &self.cells[c],
            Vertex::Wall(w) => &self.walls[w],
        }
    }

    /// Incoming walls of a cell, ordered by fixed coordinate.
    pub fn incoming(&self, cell: usize) -> &[usize] {
        &self.incoming[cell]
    }

    /// Outgoing walls of a cell, ordered by fixed coordinate.
    pub fn outgoing(&self, cell: usize) -> &[usize] {
        &self.outgoing[cell]
    }

    /// Cells for which the wall is outgoing.
    pub fn producers(&self, wall: usize) -> &[usize] {
        &self.producers[wall]
    }

    pub fn edge_count(&self) -> usize {
        2 * self.arity * self.cells.len()
    }

    pub fn topological_order(&self) -> &[Vertex] {
        &self.order
    }

    /// Cells in topological order.
    pub fn cell_order(&self) -> Vec<usize> {
        self.order
            .iter()
            .filter_map(|v| match v {
                Vertex::Cell(c) => Some(*c),
                Vertex::Wall(_) => None,
            })
            .collect()
    }

    /// Walls with no producing cell.
    pub fn sources(&self) -> Vec<usize> {
        (0..self.walls.len())
            .filter(|&w| self.producers[w].is_empty())
            .collect()
    }

    /// Walls with no consuming cell.
    pub fn sinks(&self) -> Vec<usize> {
        (0..self.walls.len())
            .filter(|&w| self.consumers[w].is_empty())
            .collect()
    }

    /// Whether a directed path leads from `from` to `to`.
    pub fn reaches(&self, from: Vertex, to: Vertex) -> bool {
        let mut seen = std::collections::HashSet::new();
        let mut stack = vec![from];
        while let Some(v) = stack.pop() {
            if v == to {
                return true;
            }
            if seen.insert(v) {
                stack.extend(self.successors(v));
            }
        }
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EquationEdge {
    pub from: FaceCode,
    pub to: FaceCode,
    pub via: FaceCode,
}

/// The graph on the n-faces of `I^{n+1}` whose edges are (n-1)-faces that are
/// outgoing for one n-face and incoming for the other.
#[derive(Clone, Debug)]
pub struct EquationGraph {
    arity: usize,
    lhs: Vec<FaceCode>,
    rhs: Vec<FaceCode>,
    edges: Vec<EquationEdge>,
}

impl EquationGraph {
    pub fn build(arity: usize) -> Result<Self> {
        if arity < 2 {
            return Err(Error::domain(format!("arity must be at least 2, got {arity}")));
        }
        let ambient = arity + 1;
        let faces = enumerate_faces(ambient, arity)?;
        let fixed = |f: &FaceCode| f.fixed_positions()[0];
        let on_lhs = |f: &FaceCode| {
            let pos = fixed(f);
            f.symbols()[pos] == Symbol::alternating(pos)
        };
        let mut lhs: Vec<FaceCode> = faces.iter().filter(|f| on_lhs(f)).cloned().collect();
        let mut rhs: Vec<FaceCode> = faces.iter().filter(|f| !on_lhs(f)).cloned().collect();
        lhs.sort_by_key(|f| fixed(f));
        rhs.sort_by_key(|f| fixed(f));

        let mut edges = Vec::new();
        for a in &faces {
            for b in &faces {
                let (pa, pb) = (fixed(a), fixed(b));
                if pa == pb {
                    continue;
                }
                let via = a.with_symbol(pb, b.symbols()[pb]);
                if classify_subface(a, &via)? == FaceRole::Outgoing
                    && classify_subface(b, &via)? == FaceRole::Incoming
                {
                    edges.push(EquationEdge {
                        from: a.clone(),
                        to: b.clone(),
                        via,
                    });
                }
            }
        }
        Ok(EquationGraph {
            arity,
            lhs,
            rhs,
            edges,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Left-hand component, smallest first.
    pub fn lhs(&self) -> &[FaceCode] {
        &self.lhs
    }

    /// Right-hand component, largest first (`(1**..) > (*0*..) > ...`).
    pub fn rhs(&self) -> &[FaceCode] {
        &self.rhs
    }

    pub fn edges(&self) -> &[EquationEdge] {
        &self.edges
    }

    pub fn has_edge(&self, from: &FaceCode, to: &FaceCode) -> bool {
        self.edges.iter().any(|e| &e.from == from && &e.to == to)
    }

    /// The lhs faces in the order their R-operators are applied.
    pub fn lhs_application_order(&self) -> Vec<FaceCode> {
        self.lhs.clone()
    }

    /// The rhs faces in the order their R-operators are applied.
    pub fn rhs_application_order(&self) -> Vec<FaceCode> {
        self.rhs.iter().rev().cloned().collect()
    }
}
