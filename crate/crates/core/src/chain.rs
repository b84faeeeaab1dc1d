//! The n-simplicial chain complex in the absolutely-incoming basis.
//!
//! A basis element of `C_N` is a tuple of colors on the absolutely incoming
//! faces of `I^N`. The boundary of a basis element propagates it to a full
//! permitted coloring, restricts to each of the `2N` facets and reads off the
//! incoming tuple of every restriction. Those `2N` row indices per column are
//! computed once ([`RestrictionTable`]) and then weighted by a sign
//! convention.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::faces::{absolutely_incoming_faces, binomial};
use crate::linalg::{kernel_mod_p, kernel_rational, rank_oriented, Field, Orientation, SparseMatrix};
use crate::relation::{checked_pow, index_tuple, tuple_index, Facet, Mode, Propagator, RMap};
use crate::Color;

/// Default cap on stored restriction entries (and hence matrix nonzeros).
pub const DEFAULT_MAX_NNZ: u128 = 10_000_000;

/// Environment variable overriding [`DEFAULT_MAX_NNZ`].
pub const MAX_NNZ_ENV: &str = "SIMPLEX_MAX_NNZ";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub max_nnz: u128,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_nnz: DEFAULT_MAX_NNZ,
        }
    }
}

impl Limits {
    /// Default limits, with the cap taken from the environment when set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(MAX_NNZ_ENV) {
            Ok(v) => v
                .trim()
                .parse()
                .map(|max_nnz| Limits { max_nnz })
                .map_err(|_| Error::domain(format!("{MAX_NNZ_ENV}={v:?} is not a count"))),
            Err(_) => Ok(Limits::default()),
        }
    }
}

/// Signs of the facet restrictions in the boundary.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SignConvention {
    /// `Σ (-1)^k (front_k - rear_k)`; the default, `d² = 0` over Z.
    Alternating,
    /// `Σ (front_k - rear_k)` as printed in the definition of the complex.
    PaperLiteral,
    /// `Σ (-1)^(k-1) (front_k - rear_k)`, the negative of `Alternating`.
    IncomingPositive,
}

impl SignConvention {
    pub const ALL: [SignConvention; 3] = [
        SignConvention::Alternating,
        SignConvention::PaperLiteral,
        SignConvention::IncomingPositive,
    ];

    /// Front-facet weight per direction `k = 1..=N` (rear weight is its negative).
    pub fn signs(self, ambient: usize) -> Vec<i64> {
        (1..=ambient)
            .map(|k| {
                let alt = if k % 2 == 0 { 1 } else { -1 };
                match self {
                    SignConvention::Alternating => alt,
                    SignConvention::PaperLiteral => 1,
                    SignConvention::IncomingPositive => -alt,
                }
            })
            .collect()
    }

    pub fn name(self) -> &'static str {
        match self {
            SignConvention::Alternating => "alt",
            SignConvention::PaperLiteral => "paper",
            SignConvention::IncomingPositive => "inpos",
        }
    }
}

impl fmt::Display for SignConvention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SignConvention {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        SignConvention::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::domain(format!("unknown convention {s:?}, expected alt|paper|inpos")))
    }
}

/// Basis of `C_N`: colorings of the absolutely incoming faces, slot 1 slowest.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ChainBasis {
    pub ambient: usize,
    pub arity: usize,
    pub colors: usize,
    pub slots: usize,
    pub dim: usize,
}

impl ChainBasis {
    pub fn new(arity: usize, colors: usize, ambient: usize) -> Result<Self> {
        if arity < 2 || ambient + 1 < arity {
            return Err(Error::domain(format!(
                "the complex for arity {arity} starts in degree {}",
                arity.saturating_sub(1)
            )));
        }
        let slots = binomial(ambient, arity - 1);
        let dim = checked_pow(colors, slots).ok_or_else(|| Error::Resource {
            what: format!("dim C_{ambient}"),
            requested: u128::MAX,
            cap: usize::MAX as u128,
        })?;
        Ok(ChainBasis {
            ambient,
            arity,
            colors,
            slots,
            dim,
        })
    }

    pub fn index(&self, tuple: &[Color]) -> usize {
        tuple_index(self.colors, tuple)
    }

    pub fn tuple(&self, index: usize) -> Vec<Color> {
        let mut out = vec![0; self.slots];
        index_tuple(self.colors, self.slots, index, &mut out);
        out
    }
}

/// For every basis element of `C_N`, the basis indices in `C_{N-1}` of its
/// front and rear restrictions in each direction.
#[derive(Clone, Debug)]
pub struct RestrictionTable {
    pub domain: ChainBasis,
    pub codomain: ChainBasis,
    /// Per column: `[front_1, rear_1, front_2, rear_2, …]`.
    data: Vec<usize>,
}

impl RestrictionTable {
    pub fn build(r: &RMap, ambient: usize, limits: Limits) -> Result<Self> {
        let n = r.arity();
        if ambient < n {
            return Err(Error::domain(format!(
                "boundary d_{ambient} leaves the complex (starts in degree {})",
                n - 1
            )));
        }
        let domain = ChainBasis::new(n, r.colors(), ambient)?;
        let codomain = ChainBasis::new(n, r.colors(), ambient - 1)?;
        let requested = domain.dim as u128 * 2 * ambient as u128;
        if requested > limits.max_nnz {
            return Err(Error::Resource {
                what: format!("boundary d_{ambient} ({} columns)", domain.dim),
                requested,
                cap: limits.max_nnz,
            });
        }
        let prop = Propagator::new(n, ambient)?;
        let sub_sources = absolutely_incoming_faces(ambient - 1, n)?;
        // Wall indices of each facet's absolutely incoming faces, slot order.
        let facet_walls: Vec<Vec<usize>> = (0..ambient)
            .flat_map(|k| [Facet::Front, Facet::Rear].map(|side| (k, side)))
            .map(|(k, side)| {
                sub_sources
                    .iter()
                    .map(|f| {
                        prop.wall_index(&f.insert(k, side.symbol()))
                            .ok_or_else(|| Error::invariant("facet face is not a wall"))
                    })
                    .collect()
            })
            .collect::<Result<_>>()?;
        let width = 2 * ambient;
        let mut data = vec![0usize; domain.dim * width];
        const CHUNK: usize = 256;
        data.par_chunks_mut(CHUNK * width)
            .enumerate()
            .for_each_init(
                || {
                    (
                        vec![0 as Color; prop.walls().len()],
                        vec![0 as Color; domain.slots],
                        vec![0 as Color; codomain.slots],
                    )
                },
                |(colors, input, sub), (chunk, out)| {
                    for (offset, row) in out.chunks_mut(width).enumerate() {
                        let col = chunk * CHUNK + offset;
                        index_tuple(domain.colors, domain.slots, col, input);
                        prop.propagate_into(r, input, colors, Mode::Fast)
                            .expect("fast propagation never conflicts");
                        for (slot, walls) in row.iter_mut().zip(&facet_walls) {
                            for (s, &w) in sub.iter_mut().zip(walls) {
                                *s = colors[w];
                            }
                            *slot = codomain.index(sub);
                        }
                    }
                },
            );
        Ok(RestrictionTable {
            domain,
            codomain,
            data,
        })
    }

    pub fn ambient(&self) -> usize {
        self.domain.ambient
    }

    /// Restriction indices of column `col` in direction `k` (0-based).
    pub fn facet(&self, col: usize, k: usize, side: Facet) -> usize {
        let width = 2 * self.domain.ambient;
        self.data[col * width + 2 * k + usize::from(side == Facet::Rear)]
    }

    fn column(&self, col: usize) -> &[usize] {
        let width = 2 * self.domain.ambient;
        &self.data[col * width..(col + 1) * width]
    }

    /// Boundary matrix with front weights `signs[k]` and rear weights `-signs[k]`.
    pub fn boundary_with_signs(&self, signs: &[i64]) -> Result<SparseMatrix> {
        if signs.len() != self.domain.ambient {
            return Err(Error::domain("one sign per direction required"));
        }
        let columns = (0..self.domain.dim)
            .map(|col| {
                self.column(col)
                    .chunks(2)
                    .zip(signs)
                    .flat_map(|(pair, &s)| [(pair[0], s), (pair[1], -s)])
                    .collect()
            })
            .collect();
        SparseMatrix::from_columns(self.codomain.dim, columns)
    }

    pub fn boundary(&self, convention: SignConvention) -> Result<SparseMatrix> {
        self.boundary_with_signs(&convention.signs(self.domain.ambient))
    }

    pub fn is_degenerate(&self, col: usize, normalization: Normalization) -> bool {
        let c = self.column(col);
        match normalization {
            Normalization::Opposite => c.chunks(2).any(|pair| pair[0] == pair[1]),
            Normalization::AnyPair => {
                let mut sorted = c.to_vec();
                sorted.sort_unstable();
                sorted.windows(2).any(|w| w[0] == w[1])
            }
        }
    }
}

/// `d_N` for a fixed convention.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub ambient: usize,
    pub convention: SignConvention,
    pub matrix: SparseMatrix,
}

/// `d_N : C_N → C_{N-1}`. The caller is responsible for `R` solving the
/// n-simplex equation; otherwise propagation silently picks one derivation.
pub fn boundary_matrix(
    r: &RMap,
    ambient: usize,
    convention: SignConvention,
    limits: Limits,
) -> Result<BoundaryMatrix> {
    let table = RestrictionTable::build(r, ambient, limits)?;
    Ok(BoundaryMatrix {
        ambient,
        convention,
        matrix: table.boundary(convention)?,
    })
}

fn product_vanishes(lower: &SparseMatrix, upper: &SparseMatrix, modulus: Option<u64>) -> Result<bool> {
    let product = lower.multiply(upper)?;
    Ok(match modulus {
        None => product.is_zero(),
        Some(p) => product.reduce_mod(p).is_zero(),
    })
}

/// `d_{N-1} d_N = 0` over Z.
pub fn verify_d_squared(r: &RMap, ambient: usize, convention: SignConvention, limits: Limits) -> Result<bool> {
    verify_d_squared_in(r, ambient, convention, None, limits)
}

/// `d_{N-1} d_N ≡ 0` modulo `p`.
pub fn verify_d_squared_mod(
    r: &RMap,
    ambient: usize,
    convention: SignConvention,
    p: u64,
    limits: Limits,
) -> Result<bool> {
    verify_d_squared_in(r, ambient, convention, Some(p), limits)
}

fn verify_d_squared_in(
    r: &RMap,
    ambient: usize,
    convention: SignConvention,
    modulus: Option<u64>,
    limits: Limits,
) -> Result<bool> {
    if ambient < r.arity() + 1 {
        return Err(Error::domain(format!(
            "d_{} d_{ambient} needs N ≥ n+1 = {}",
            ambient.saturating_sub(1),
            r.arity() + 1
        )));
    }
    let upper = boundary_matrix(r, ambient, convention, limits)?.matrix;
    let lower = boundary_matrix(r, ambient - 1, convention, limits)?.matrix;
    product_vanishes(&lower, &upper, modulus)
}

/// Which basis colorings span the degenerate subcomplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Normalization {
    /// Front and rear restriction in one direction coincide.
    Opposite,
    /// Any two of the `2N` facet restrictions coincide.
    AnyPair,
}

impl fmt::Display for Normalization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Normalization::Opposite => "opposite",
            Normalization::AnyPair => "any-pair",
        })
    }
}

impl FromStr for Normalization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "opposite" => Ok(Normalization::Opposite),
            "any-pair" => Ok(Normalization::AnyPair),
            _ => Err(Error::domain(format!("unknown normalization {s:?}, expected opposite|any-pair"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HomologyOptions {
    pub field: Field,
    pub convention: SignConvention,
    pub normalization: Option<Normalization>,
    pub limits: Limits,
}

impl Default for HomologyOptions {
    fn default() -> Self {
        HomologyOptions {
            field: Field::Rational,
            convention: SignConvention::Alternating,
            normalization: None,
            limits: Limits::default(),
        }
    }
}

/// The (possibly normalized) complex in degrees `n-1..=N_max`.
#[derive(Clone, Debug)]
pub struct Complex {
    pub min_degree: usize,
    /// Basis indices kept in each degree (all of them unless normalized).
    pub kept: Vec<Vec<usize>>,
    /// `boundaries[i]` is `d_{min_degree + i + 1}` on kept bases.
    pub boundaries: Vec<SparseMatrix>,
}

impl Complex {
    pub fn build(r: &RMap, max_degree: usize, options: &HomologyOptions) -> Result<Self> {
        let n = r.arity();
        if max_degree < n {
            return Err(Error::domain(format!("max degree must be at least n = {n}")));
        }
        let tables: Vec<RestrictionTable> = (n..=max_degree)
            .map(|d| RestrictionTable::build(r, d, options.limits))
            .collect::<Result<_>>()?;
        let bottom = ChainBasis::new(n, r.colors(), n - 1)?;
        let mut kept = vec![(0..bottom.dim).collect::<Vec<_>>()];
        for t in &tables {
            kept.push(match options.normalization {
                None => (0..t.domain.dim).collect(),
                Some(norm) => (0..t.domain.dim).filter(|&c| !t.is_degenerate(c, norm)).collect(),
            });
        }
        let mut boundaries = Vec::with_capacity(tables.len());
        for (i, t) in tables.iter().enumerate() {
            let full = t.boundary(options.convention)?;
            if options.normalization.is_none() {
                boundaries.push(full);
                continue;
            }
            let (rows, cols) = (&kept[i], &kept[i + 1]);
            let mut row_pos = vec![usize::MAX; t.codomain.dim];
            for (pos, &r) in rows.iter().enumerate() {
                row_pos[r] = pos;
            }
            let is_kept_col = {
                let mut flags = vec![false; t.domain.dim];
                cols.iter().for_each(|&c| flags[c] = true);
                flags
            };
            // The degenerate span must be a subcomplex for the quotient to exist.
            for c in (0..t.domain.dim).filter(|&c| !is_kept_col[c]) {
                if let Some((row, _)) = full.column(c).find(|&(row, _)| row_pos[row] != usize::MAX) {
                    return Err(Error::Precondition(format!(
                        "degenerate colorings do not form a subcomplex: d_{} of degenerate basis element {c} hits nondegenerate element {row}",
                        t.ambient()
                    )));
                }
            }
            let columns = cols
                .iter()
                .map(|&c| {
                    full.column(c)
                        .filter(|&(row, _)| row_pos[row] != usize::MAX)
                        .map(|(row, v)| (row_pos[row], v))
                        .collect()
                })
                .collect();
            boundaries.push(SparseMatrix::from_columns(rows.len(), columns)?);
        }
        Ok(Complex {
            min_degree: n - 1,
            kept,
            boundaries,
        })
    }

    pub fn max_degree(&self) -> usize {
        self.min_degree + self.boundaries.len()
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.kept[degree - self.min_degree].len()
    }

    /// `d_degree`; `None` for the zero map out of the bottom degree.
    pub fn boundary(&self, degree: usize) -> Option<&SparseMatrix> {
        degree
            .checked_sub(self.min_degree + 1)
            .and_then(|i| self.boundaries.get(i))
    }

    /// Whether every consecutive product vanishes (over Z, or mod `p`).
    pub fn d_squared_vanishes(&self, modulus: Option<u64>) -> Result<bool> {
        for pair in self.boundaries.windows(2) {
            if !product_vanishes(&pair[0], &pair[1], modulus)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeRow {
    pub degree: usize,
    pub dim: usize,
    /// Rank of `d_degree` (out of this degree).
    pub rank_out: usize,
    /// Rank of `d_{degree+1}`; unknown in the top degree.
    pub rank_in: Option<usize>,
    pub betti: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyReport {
    pub field: Field,
    pub convention: SignConvention,
    pub normalization: Option<Normalization>,
    pub cohomological: bool,
    pub rows: Vec<DegreeRow>,
}

impl HomologyReport {
    /// Euler characteristic identity for the truncated complex:
    /// `Σ (-1)^N b_N = Σ (-1)^N dim C_N - (-1)^(M-1) rank d_M` over `N < M`.
    pub fn euler_consistent(&self) -> bool {
        let sign = |d: usize| if d.is_multiple_of(2) { 1i128 } else { -1 };
        let (body, top) = self.rows.split_at(self.rows.len() - 1);
        let top = &top[0];
        let betti: i128 = body.iter().map(|r| sign(r.degree) * r.betti.unwrap_or(0) as i128).sum();
        let dims: i128 = body.iter().map(|r| sign(r.degree) * r.dim as i128).sum();
        betti == dims - sign(top.degree - 1) * top.rank_out as i128
    }

    pub fn betti(&self, degree: usize) -> Option<usize> {
        self.rows.iter().find(|r| r.degree == degree).and_then(|r| r.betti)
    }
}

fn ranks(complex: &Complex, field: Field, transpose: bool) -> Result<Vec<usize>> {
    complex
        .boundaries
        .iter()
        .map(|d| {
            if transpose {
                rank_oriented(&d.transpose(), field, Orientation::Columns)
            } else {
                rank_oriented(d, field, Orientation::Columns)
            }
        })
        .collect()
}

fn assemble(complex: &Complex, ranks: &[usize], options: &HomologyOptions, cohomological: bool) -> HomologyReport {
    let rank_of = |degree: usize| -> usize {
        degree
            .checked_sub(complex.min_degree + 1)
            .and_then(|i| ranks.get(i).copied())
            .unwrap_or(0)
    };
    let rows = (complex.min_degree..=complex.max_degree())
        .map(|degree| {
            let dim = complex.dim(degree);
            let rank_out = rank_of(degree);
            let rank_in = (degree < complex.max_degree()).then(|| rank_of(degree + 1));
            DegreeRow {
                degree,
                dim,
                rank_out,
                rank_in,
                betti: rank_in.map(|ri| dim - rank_out - ri),
            }
        })
        .collect();
    HomologyReport {
        field: options.field,
        convention: options.convention,
        normalization: options.normalization,
        cohomological,
        rows,
    }
}

fn check_complex(complex: &Complex, options: &HomologyOptions) -> Result<()> {
    let modulus = match options.field {
        Field::Rational => None,
        Field::Prime(p) => Some(p),
    };
    if !complex.d_squared_vanishes(modulus)? {
        return Err(Error::Precondition(format!(
            "d² ≠ 0 over {} under the {} convention",
            options.field, options.convention
        )));
    }
    Ok(())
}

/// Homology in degrees `n-1..N_max-1` (the top row carries only `rank d_{N_max}`).
pub fn homology(r: &RMap, max_degree: usize, options: &HomologyOptions) -> Result<HomologyReport> {
    let options = HomologyOptions {
        field: options.field.validate()?,
        ..*options
    };
    let complex = Complex::build(r, max_degree, &options)?;
    check_complex(&complex, &options)?;
    let ranks = ranks(&complex, options.field, false)?;
    Ok(assemble(&complex, &ranks, &options, false))
}

/// Cocycle space basis in one degree, in the kept basis of that degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CocycleBasis {
    Rational(Vec<Vec<BigInt>>),
    Prime(u64, Vec<Vec<u64>>),
}

impl CocycleBasis {
    pub fn len(&self) -> usize {
        match self {
            CocycleBasis::Rational(v) => v.len(),
            CocycleBasis::Prime(_, v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Clone, Debug)]
pub struct CohomologyReport {
    pub report: HomologyReport,
    /// `(degree, kept basis indices, kernel of d_{degree+1}^T)`.
    pub cocycles: Option<(usize, Vec<usize>, CocycleBasis)>,
}

/// Cohomology via ranks of transposed differentials (eliminating along the
/// opposite side from [`homology`]), optionally with an explicit basis of
/// the cocycle space in `cocycle_degree < N_max`.
pub fn cohomology(
    r: &RMap,
    max_degree: usize,
    options: &HomologyOptions,
    cocycle_degree: Option<usize>,
) -> Result<CohomologyReport> {
    let options = HomologyOptions {
        field: options.field.validate()?,
        ..*options
    };
    let complex = Complex::build(r, max_degree, &options)?;
    check_complex(&complex, &options)?;
    let ranks = ranks(&complex, options.field, true)?;
    let report = assemble(&complex, &ranks, &options, true);
    let cocycles = match cocycle_degree {
        None => None,
        Some(deg) => {
            if deg < complex.min_degree || deg >= complex.max_degree() {
                return Err(Error::domain(format!(
                    "cocycle degree {deg} outside {}..{}",
                    complex.min_degree,
                    complex.max_degree()
                )));
            }
            let dt = complex.boundary(deg + 1).expect("degree in range").transpose();
            let basis = match options.field {
                Field::Rational => CocycleBasis::Rational(kernel_rational(&dt)?),
                Field::Prime(p) => CocycleBasis::Prime(p, kernel_mod_p(&dt, p)?),
            };
            Some((deg, complex.kept[deg - complex.min_degree].clone(), basis))
        }
    };
    Ok(CohomologyReport { report, cocycles })
}

/// Whether the functional `f` on `C_{N-1}` vanishes on the image of `d`
/// (`f·d = 0`), over Z or modulo `modulus`.
pub fn annihilates(d: &SparseMatrix, f: &[i64], modulus: Option<u64>) -> Result<bool> {
    if f.len() != d.rows() {
        return Err(Error::domain(format!(
            "functional has {} values, boundary has {} rows",
            f.len(),
            d.rows()
        )));
    }
    Ok((0..d.cols()).all(|c| {
        let s: i128 = d.column(c).map(|(r, v)| v as i128 * f[r] as i128).sum();
        match modulus {
            None => s == 0,
            Some(m) => s.rem_euclid(m as i128) == 0,
        }
    }))
}

/// Formal integer combination of basis tuples, zero terms removed.
pub type FormalSum = BTreeMap<Vec<Color>, i64>;

fn add_term(sum: &mut FormalSum, tuple: Vec<Color>, coefficient: i64) {
    let entry = sum.entry(tuple.clone()).or_insert(0);
    *entry += coefficient;
    if *entry == 0 {
        sum.remove(&tuple);
    }
}

/// The printed `d_3((a,b,c)) = (a)+(b)+(c)-(R_1)-(R_2)-(R_3)`.
pub fn d3_paper_oracle(r: &RMap, a: [Color; 3]) -> Result<FormalSum> {
    if r.arity() != 3 {
        return Err(Error::domain("the printed formula is for arity 3"));
    }
    let image = r.apply(&a);
    let mut sum = FormalSum::new();
    for &x in &a {
        add_term(&mut sum, vec![x], 1);
    }
    for &x in image {
        add_term(&mut sum, vec![x], -1);
    }
    Ok(sum)
}

/// The printed eight-term `d_4(a_1,…,a_6)`, nested exactly as displayed.
pub fn d4_paper_oracle(r: &RMap, a: [Color; 6]) -> Result<FormalSum> {
    if r.arity() != 3 {
        return Err(Error::domain("the printed formula is for arity 3"));
    }
    let [a1, a2, a3, a4, a5, a6] = a;
    let rc = |i: usize, x: Color, y: Color, z: Color| r.apply(&[x, y, z])[i - 1];
    let r3_356 = rc(3, a3, a5, a6);
    let r2_246 = rc(2, a2, a4, r3_356);
    let r2_356 = rc(2, a3, a5, a6);
    let r1_123 = rc(1, a1, a2, a3);
    let r2_123 = rc(2, a1, a2, a3);
    let r2_145 = rc(2, r1_123, a4, a5);
    let terms: [(i64, [Color; 3]); 8] = [
        (1, [a1, a2, a3]),
        (1, [a3, a5, a6]),
        (
            -1,
            [
                rc(1, a1, r2_246, r2_356),
                rc(1, a2, a4, r3_356),
                rc(1, a3, a5, a6),
            ],
        ),
        (
            -1,
            [
                rc(3, a1, a2, a3),
                rc(3, r1_123, a4, a5),
                rc(3, r2_123, r2_145, a6),
            ],
        ),
        (1, [a1, r2_246, r2_356]),
        (-1, [a2, a4, r3_356]),
        (1, [r2_123, r2_145, a6]),
        (-1, [r1_123, a4, a5]),
    ];
    let mut sum = FormalSum::new();
    for (c, t) in terms {
        add_term(&mut sum, t.to_vec(), c);
    }
    Ok(sum)
}

fn column_as_sum(table: &RestrictionTable, col: usize, signs: &[i64]) -> FormalSum {
    let mut sum = FormalSum::new();
    for k in 0..table.ambient() {
        for (side, s) in [(Facet::Front, signs[k]), (Facet::Rear, -signs[k])] {
            add_term(&mut sum, table.codomain.tuple(table.facet(col, k, side)), s);
        }
    }
    sum
}

/// All `2^N` sign vectors over `{+1,-1}`, first direction slowest, `+` first.
pub fn sign_patterns(ambient: usize) -> Vec<Vec<i64>> {
    (0..1usize << ambient)
        .map(|bits| {
            (0..ambient)
                .map(|k| if bits >> (ambient - 1 - k) & 1 == 0 { 1 } else { -1 })
                .collect()
        })
        .collect()
}

pub fn format_signs(signs: &[i64]) -> String {
    signs.iter().map(|&s| if s > 0 { '+' } else { '-' }).collect()
}

fn matching_patterns(
    table: &RestrictionTable,
    samples: &[usize],
    oracle: impl Fn(usize) -> Result<FormalSum>,
) -> Result<Vec<Vec<i64>>> {
    let expected: Vec<FormalSum> = samples.iter().map(|&c| oracle(c)).collect::<Result<_>>()?;
    Ok(sign_patterns(table.ambient())
        .into_iter()
        .filter(|signs| {
            samples
                .iter()
                .zip(&expected)
                .all(|(&c, e)| &column_as_sum(table, c, signs) == e)
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareOutcome {
    pub convention: SignConvention,
    pub ambient: usize,
    /// `None` when the size cap prevented the computation.
    pub over_z: Option<bool>,
    pub mod_2: Option<bool>,
}

/// Comparison of the printed low-degree formulas with the computed boundary.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConventionAudit {
    pub d3_samples: usize,
    /// Per-direction front signs reproducing the printed `d_3` on every sample.
    pub d3_patterns: Vec<Vec<i64>>,
    pub d4_samples: usize,
    pub d4_patterns: Vec<Vec<i64>>,
    pub squares: Vec<SquareOutcome>,
}

impl ConventionAudit {
    /// Named conventions whose sign vector reproduces the printed formula.
    pub fn named_matches(&self, ambient: usize) -> Vec<SignConvention> {
        let patterns = if ambient == 3 { &self.d3_patterns } else { &self.d4_patterns };
        SignConvention::ALL
            .into_iter()
            .filter(|c| patterns.contains(&c.signs(ambient)))
            .collect()
    }
}

/// Audits the printed formulas against all sign patterns, and records
/// `d² = 0` for every named convention in degrees `n+1..=max_degree`.
/// Degrees exceeding the cap are recorded as unknown. At most
/// `max_samples` basis elements per degree are compared (evenly spaced).
pub fn convention_audit(r: &RMap, max_degree: usize, max_samples: usize, limits: Limits) -> Result<ConventionAudit> {
    if r.arity() != 3 {
        return Err(Error::domain("the convention audit compares arity-3 formulas"));
    }
    let spread = |dim: usize| -> Vec<usize> {
        if dim <= max_samples {
            (0..dim).collect()
        } else {
            (0..max_samples).map(|i| i * dim / max_samples).collect()
        }
    };
    let t3 = RestrictionTable::build(r, 3, limits)?;
    let s3 = spread(t3.domain.dim);
    let d3_patterns = matching_patterns(&t3, &s3, |c| {
        let t = t3.domain.tuple(c);
        d3_paper_oracle(r, [t[0], t[1], t[2]])
    })?;
    let t4 = RestrictionTable::build(r, 4, limits)?;
    let s4 = spread(t4.domain.dim);
    let d4_patterns = matching_patterns(&t4, &s4, |c| {
        let t = t4.domain.tuple(c);
        d4_paper_oracle(r, [t[0], t[1], t[2], t[3], t[4], t[5]])
    })?;
    let mut squares = Vec::new();
    for ambient in r.arity() + 1..=max_degree {
        for convention in SignConvention::ALL {
            let outcome = |m| match verify_d_squared_in(r, ambient, convention, m, limits) {
                Ok(v) => Ok(Some(v)),
                Err(Error::Resource { .. }) => Ok(None),
                Err(e) => Err(e),
            };
            squares.push(SquareOutcome {
                convention,
                ambient,
                over_z: outcome(None)?,
                mod_2: outcome(Some(2))?,
            });
        }
    }
    Ok(ConventionAudit {
        d3_samples: s3.len(),
        d3_patterns,
        d4_samples: s4.len(),
        d4_patterns,
        squares,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Limits {
        Limits::default()
    }

    #[test]
    fn convention_names_round_trip() {
        for c in SignConvention::ALL {
            assert_eq!(c.name().parse::<SignConvention>().unwrap(), c);
        }
        assert_eq!(SignConvention::Alternating.signs(4), vec![-1, 1, -1, 1]);
        assert!("x".parse::<SignConvention>().is_err());
    }

    #[test]
    fn dimensions_follow_the_basis_theorem() {
        for (ambient, dim) in [(2, 2), (3, 8), (4, 64), (5, 1024)] {
            assert_eq!(ChainBasis::new(3, 2, ambient).unwrap().dim, dim);
        }
        assert!(ChainBasis::new(3, 2, 1).is_err());
    }

    #[test]
    fn d3_column_of_a_generic_map() {
        // Shift every color: R(a,b,c) = (a+1, b+2, c+3) mod 5.
        let r = RMap::from_fn(3, 5, |t| vec![(t[0] + 1) % 5, (t[1] + 2) % 5, (t[2] + 3) % 5]).unwrap();
        let d = boundary_matrix(&r, 3, SignConvention::Alternating, small()).unwrap().matrix;
        let basis = ChainBasis::new(3, 5, 3).unwrap();
        let col = basis.index(&[0, 1, 2]);
        let (a, b, c) = (0usize, 1usize, 2usize);
        let (a1, b1, c1) = (1usize, 3usize, 0usize);
        let mut expected = BTreeMap::new();
        for (row, v) in [(a, -1), (a1, 1), (b1, 1), (b, -1), (c, -1), (c1, 1)] {
            *expected.entry(row).or_insert(0) += v;
        }
        expected.retain(|_, v| *v != 0);
        let got: BTreeMap<usize, i64> = d.column(col).collect();
        assert_eq!(got, expected);
    }

    #[test]
    fn single_color_complex_is_trivial() {
        let r = RMap::identity(3, 1);
        for ambient in 3..=6 {
            let d = boundary_matrix(&r, ambient, SignConvention::PaperLiteral, small()).unwrap();
            assert!(d.matrix.is_zero());
        }
        let report = homology(&r, 6, &HomologyOptions::default()).unwrap();
        for row in &report.rows[..report.rows.len() - 1] {
            assert_eq!(row.betti, Some(1));
        }
        assert!(report.euler_consistent());
    }

    #[test]
    fn alternating_squares_to_zero_for_identity() {
        let r = RMap::identity(3, 2);
        for ambient in 4..=5 {
            assert!(verify_d_squared(&r, ambient, SignConvention::Alternating, small()).unwrap());
            assert!(verify_d_squared(&r, ambient, SignConvention::IncomingPositive, small()).unwrap());
            assert!(verify_d_squared_mod(&r, ambient, SignConvention::PaperLiteral, 2, small()).unwrap());
        }
    }

    #[test]
    fn resource_cap_reports_size() {
        let r = RMap::identity(3, 2);
        let err = boundary_matrix(&r, 5, SignConvention::Alternating, Limits { max_nnz: 100 }).unwrap_err();
        match err {
            Error::Resource { requested, cap, .. } => {
                assert_eq!(requested, 1024 * 10);
                assert_eq!(cap, 100);
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn oracle_formulas_vanish_for_identity() {
        let r = RMap::identity(3, 3);
        assert!(d4_paper_oracle(&r, [0, 1, 2, 0, 1, 2]).unwrap().is_empty());
        let one = RMap::identity(3, 1);
        assert!(d4_paper_oracle(&one, [0; 6]).unwrap().is_empty());
        assert!(d3_paper_oracle(&one, [0; 3]).unwrap().is_empty());
    }

    #[test]
    fn homology_and_cohomology_agree() {
        let r = RMap::identity(3, 2);
        for field in [Field::Rational, Field::Prime(2), Field::Prime(3)] {
            let options = HomologyOptions {
                field,
                ..HomologyOptions::default()
            };
            let h = homology(&r, 5, &options).unwrap();
            let c = cohomology(&r, 5, &options, Some(3)).unwrap();
            assert!(h.euler_consistent());
            for (a, b) in h.rows.iter().zip(&c.report.rows) {
                assert_eq!((a.dim, a.rank_out, a.betti), (b.dim, b.rank_out, b.betti));
            }
            let (_, kept, basis) = c.cocycles.unwrap();
            let rank_in = h.rows.iter().find(|r| r.degree == 4).unwrap().rank_out;
            assert_eq!(basis.len(), kept.len() - rank_in);
        }
    }

    #[test]
    fn normalized_complex_is_a_quotient() {
        let r = RMap::identity(3, 2);
        for norm in [Normalization::Opposite, Normalization::AnyPair] {
            let options = HomologyOptions {
                normalization: Some(norm),
                ..HomologyOptions::default()
            };
            match homology(&r, 5, &options) {
                Ok(report) => assert!(report.euler_consistent()),
                Err(Error::Precondition(_)) => assert_eq!(norm, Normalization::AnyPair),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn annihilation_of_coboundaries() {
        let r = RMap::identity(3, 2);
        let d4 = boundary_matrix(&r, 4, SignConvention::Alternating, small()).unwrap().matrix;
        let d3 = boundary_matrix(&r, 3, SignConvention::Alternating, small()).unwrap().matrix;
        // δg = g∘d_3 for any functional g on C_2.
        let g = [5i64, -2];
        let f: Vec<i64> = (0..d3.cols())
            .map(|c| d3.column(c).map(|(row, v)| v * g[row]).sum())
            .collect();
        assert!(annihilates(&d4, &f, None).unwrap());
        assert!(annihilates(&d4, &f, Some(7)).unwrap());
    }
}
