//! Sparse integer matrices and exact rank/kernel computations.
//!
//! Ranks over Q use fraction-free elimination: vectors are kept primitive
//! (content divided out) and eliminated by cross-multiplication, in `i128`
//! until an operation overflows, then in `BigInt`. Ranks over `F_p` use plain
//! elimination with a normalized pivot. Both are incremental: vectors are fed
//! one at a time into an echelon basis keyed by leading position.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::modular::{inverse_mod, is_prime, mul_mod};

/// Integer matrix in compressed sparse column form, rows sorted per column.
#[derive(Clone, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    col_ptr: Vec<usize>,
    row_idx: Vec<usize>,
    values: Vec<i64>,
}

impl fmt::Debug for SparseMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SparseMatrix({}x{}, nnz={})", self.rows, self.cols, self.nnz())
    }
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            col_ptr: vec![0; cols + 1],
            row_idx: Vec::new(),
            values: Vec::new(),
        }
    }

    /// Builds from per-column entry lists; duplicates are summed and zeros dropped.
    pub fn from_columns(rows: usize, columns: Vec<Vec<(usize, i64)>>) -> Result<Self> {
        let cols = columns.len();
        let mut col_ptr = Vec::with_capacity(cols + 1);
        let mut row_idx = Vec::new();
        let mut values = Vec::new();
        col_ptr.push(0);
        for mut column in columns {
            column.sort_unstable_by_key(|&(r, _)| r);
            let mut iter = column.into_iter().peekable();
            while let Some((r, mut v)) = iter.next() {
                if r >= rows {
                    return Err(Error::domain(format!("row {r} outside 0..{rows}")));
                }
                while let Some(&(r2, v2)) = iter.peek() {
                    if r2 != r {
                        break;
                    }
                    v = v
                        .checked_add(v2)
                        .ok_or_else(|| Error::domain("matrix entry overflows i64"))?;
                    iter.next();
                }
                if v != 0 {
                    row_idx.push(r);
                    values.push(v);
                }
            }
            col_ptr.push(row_idx.len());
        }
        Ok(SparseMatrix {
            rows,
            cols,
            col_ptr,
            row_idx,
            values,
        })
    }

    pub fn from_triples(rows: usize, cols: usize, triples: &[(usize, usize, i64)]) -> Result<Self> {
        let mut columns = vec![Vec::new(); cols];
        for &(r, c, v) in triples {
            if c >= cols {
                return Err(Error::domain(format!("column {c} outside 0..{cols}")));
            }
            columns[c].push((r, v));
        }
        Self::from_columns(rows, columns)
    }

    pub fn from_dense(dense: &[Vec<i64>]) -> Self {
        let rows = dense.len();
        let cols = dense.first().map_or(0, Vec::len);
        let columns = (0..cols)
            .map(|c| (0..rows).map(|r| (r, dense[r][c])).collect())
            .collect();
        Self::from_columns(rows, columns).expect("dense input is in range")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.values.len()
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    /// Nonzero entries `(row, value)` of column `c`, rows ascending.
    pub fn column(&self, c: usize) -> impl Iterator<Item = (usize, i64)> + '_ {
        let span = self.col_ptr[c]..self.col_ptr[c + 1];
        self.row_idx[span.clone()]
            .iter()
            .copied()
            .zip(self.values[span].iter().copied())
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        let span = self.col_ptr[c]..self.col_ptr[c + 1];
        match self.row_idx[span.clone()].binary_search(&r) {
            Ok(k) => self.values[span.start + k],
            Err(_) => 0,
        }
    }

    /// `(row, col, value)` sorted by `(col, row)`.
    pub fn triples(&self) -> Vec<(usize, usize, i64)> {
        (0..self.cols)
            .flat_map(|c| self.column(c).map(move |(r, v)| (r, c, v)))
            .collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut dense = vec![vec![0; self.cols]; self.rows];
        for (r, c, v) in self.triples() {
            dense[r][c] = v;
        }
        dense
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut columns = vec![Vec::new(); self.rows];
        for (r, c, v) in self.triples() {
            columns[r].push((c, v));
        }
        Self::from_columns(self.cols, columns).expect("transpose stays in range")
    }

    /// Exact product `self * rhs`.
    pub fn multiply(&self, rhs: &SparseMatrix) -> Result<SparseMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut acc = vec![0i128; self.rows];
        let mut touched = Vec::new();
        let mut columns = Vec::with_capacity(rhs.cols);
        for c in 0..rhs.cols {
            for (k, b) in rhs.column(c) {
                for (r, a) in self.column(k) {
                    if acc[r] == 0 {
                        touched.push(r);
                    }
                    acc[r] += a as i128 * b as i128;
                }
            }
            let mut column = Vec::with_capacity(touched.len());
            for r in touched.drain(..) {
                let v = std::mem::take(&mut acc[r]);
                if v != 0 {
                    let v = i64::try_from(v)
                        .map_err(|_| Error::domain("product entry overflows i64"))?;
                    column.push((r, v));
                }
            }
            columns.push(column);
        }
        Self::from_columns(self.rows, columns)
    }

    /// Entries reduced into `0..p`, zero entries dropped.
    pub fn reduce_mod(&self, p: u64) -> SparseMatrix {
        let columns = (0..self.cols)
            .map(|c| {
                self.column(c)
                    .map(|(r, v)| (r, v.rem_euclid(p as i64)))
                    .collect()
            })
            .collect();
        Self::from_columns(self.rows, columns).expect("reduction stays in range")
    }
}

/// Coefficient field for ranks and kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn validate(self) -> Result<Self> {
        match self {
            Field::Prime(p) if !is_prime(p) => Err(Error::domain(format!("{p} is not prime"))),
            Field::Prime(p) if p > u32::MAX as u64 => {
                Err(Error::domain(format!("prime {p} above 2^32 is not supported")))
            }
            f => Ok(f),
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F{p}"),
        }
    }
}

impl std::str::FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "q" | "Q" => Ok(Field::Rational),
            _ => s
                .strip_prefix("fp:")
                .and_then(|p| p.parse().ok())
                .map(Field::Prime)
                .ok_or_else(|| Error::domain(format!("unknown field {s:?}, expected q or fp:<p>")))?
                .validate(),
        }
    }
}

/// Whether elimination runs over column vectors or row vectors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Orientation {
    Columns,
    Rows,
    /// Whichever side gives the shorter vectors.
    Auto,
}

// ---------------------------------------------------------------------------
// Echelon bases

/// Echelon basis over `F_p`, pivots normalized to 1.
struct ModEchelon {
    p: u64,
    pivot_row: Vec<Option<usize>>,
    basis: Vec<Vec<u64>>,
}

impl ModEchelon {
    fn new(len: usize, p: u64) -> Self {
        ModEchelon {
            p,
            pivot_row: vec![None; len],
            basis: Vec::new(),
        }
    }

    /// Reduces `v`; keeps it if independent. Returns whether it was kept.
    fn insert(&mut self, mut v: Vec<u64>) -> bool {
        let p = self.p;
        let mut lead = 0;
        loop {
            while lead < v.len() && v[lead] == 0 {
                lead += 1;
            }
            if lead == v.len() {
                return false;
            }
            match self.pivot_row[lead] {
                Some(b) => {
                    let factor = v[lead];
                    let row = &self.basis[b];
                    for (x, &y) in v[lead..].iter_mut().zip(&row[lead..]) {
                        if y != 0 {
                            *x = (*x + p - mul_mod(factor, y, p)) % p;
                        }
                    }
                }
                None => {
                    let inv = inverse_mod(v[lead], p).expect("nonzero mod prime");
                    for x in v[lead..].iter_mut() {
                        *x = mul_mod(*x, inv, p);
                    }
                    self.pivot_row[lead] = Some(self.basis.len());
                    self.basis.push(v);
                    return true;
                }
            }
        }
    }

    /// Reduced row echelon form: rows ordered by pivot, pivot columns cleared.
    fn into_rref(self) -> Vec<(usize, Vec<u64>)> {
        let p = self.p;
        let mut rows: Vec<(usize, Vec<u64>)> = self
            .pivot_row
            .iter()
            .enumerate()
            .filter_map(|(col, b)| b.map(|b| (col, self.basis[b].clone())))
            .collect();
        for i in (0..rows.len()).rev() {
            let (pc, pivot) = rows[i].clone();
            for (_, row) in rows[..i].iter_mut() {
                let factor = row[pc];
                if factor != 0 {
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + p - mul_mod(factor, y, p)) % p;
                    }
                }
            }
        }
        rows
    }
}

trait Scalar: Clone + Sized {
    fn is_zero(&self) -> bool;
    /// `a*x - b*y`, `None` on overflow.
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self>;
    fn content(v: &[Self]) -> Self;
    fn div_exact(&mut self, d: &Self);
    fn is_unit(&self) -> bool;
}

impl Scalar for i128 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        a.checked_mul(*x)?.checked_sub(b.checked_mul(*y)?)
    }
    fn content(v: &[Self]) -> Self {
        v.iter().fold(0i128, |g, x| g.gcd(x))
    }
    fn div_exact(&mut self, d: &Self) {
        *self /= *d;
    }
    fn is_unit(&self) -> bool {
        self.abs() == 1
    }
}

impl Scalar for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn cross(a: &Self, x: &Self, b: &Self, y: &Self) -> Option<Self> {
        Some(a * x - b * y)
    }
    fn content(v: &[Self]) -> Self {
        v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
    }
    fn div_exact(&mut self, d: &Self) {
        *self /= d;
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
}

struct Overflow;

/// Fraction-free echelon basis over Z (spanning the same Q-space).
struct IntEchelon<T> {
    pivot_row: Vec<Option<usize>>,
    basis: Vec<Vec<T>>,
}

impl<T: Scalar> IntEchelon<T> {
    fn new(len: usize) -> Self {
        IntEchelon {
            pivot_row: vec![None; len],
            basis: Vec::new(),
        }
    }

    fn make_primitive(v: &mut [T]) {
        let g = T::content(v);
        if !g.is_zero() && !g.is_unit() {
            for x in v.iter_mut() {
                x.div_exact(&g);
            }
        }
    }

    fn insert(&mut self, mut v: Vec<T>) -> std::result::Result<bool, (Overflow, Vec<T>)> {
        let mut lead = 0;
        loop {
            while lead < v.len() && v[lead].is_zero() {
                lead += 1;
            }
            if lead == v.len() {
                return Ok(false);
            }
            match self.pivot_row[lead] {
                Some(b) => {
                    let row = &self.basis[b];
                    let (a, c) = (row[lead].clone(), v[lead].clone());
                    let mut next = Vec::with_capacity(v.len());
                    next.extend(v[..lead].iter().cloned());
                    for (x, y) in v[lead..].iter().zip(&row[lead..]) {
                        match T::cross(&a, x, &c, y) {
                            Some(z) => next.push(z),
                            None => return Err((Overflow, v)),
                        }
                    }
                    v = next;
                    Self::make_primitive(&mut v);
                }
                None => {
                    Self::make_primitive(&mut v);
                    self.pivot_row[lead] = Some(self.basis.len());
                    self.basis.push(v);
                    return Ok(true);
                }
            }
        }
    }

    fn rank(&self) -> usize {
        self.basis.len()
    }
}

/// Echelon over Z that starts in `i128` and promotes itself to `BigInt`.
enum ZEchelon {
    Small(IntEchelon<i128>),
    Big(IntEchelon<BigInt>),
}

impl ZEchelon {
    fn new(len: usize) -> Self {
        ZEchelon::Small(IntEchelon::new(len))
    }

    fn insert(&mut self, v: Vec<i128>) -> bool {
        if let ZEchelon::Small(e) = self {
            match e.insert(v) {
                Ok(kept) => return kept,
                Err((Overflow, v)) => {
                    let big = IntEchelon {
                        pivot_row: e.pivot_row.clone(),
                        basis: e
                            .basis
                            .iter()
                            .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                            .collect(),
                    };
                    *self = ZEchelon::Big(big);
                    return self.insert_big(v.into_iter().map(BigInt::from).collect());
                }
            }
        }
        self.insert_big(v.into_iter().map(BigInt::from).collect())
    }

    fn insert_big(&mut self, v: Vec<BigInt>) -> bool {
        match self {
            ZEchelon::Big(e) => e.insert(v).unwrap_or_else(|_| unreachable!("BigInt never overflows")),
            ZEchelon::Small(_) => unreachable!("promoted before big insert"),
        }
    }

    fn rank(&self) -> usize {
        match self {
            ZEchelon::Small(e) => e.rank(),
            ZEchelon::Big(e) => e.rank(),
        }
    }

    fn basis_big(&self) -> Vec<Vec<BigInt>> {
        match self {
            ZEchelon::Small(e) => e
                .basis
                .iter()
                .map(|row| row.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            ZEchelon::Big(e) => e.basis.clone(),
        }
    }
}

fn oriented(m: &SparseMatrix, orientation: Orientation) -> std::borrow::Cow<'_, SparseMatrix> {
    let rows_side = match orientation {
        Orientation::Columns => false,
        Orientation::Rows => true,
        Orientation::Auto => m.cols < m.rows,
    };
    if rows_side {
        std::borrow::Cow::Owned(m.transpose())
    } else {
        std::borrow::Cow::Borrowed(m)
    }
}

/// Exact rank with an explicit choice of elimination vectors.
pub fn rank_oriented(m: &SparseMatrix, field: Field, orientation: Orientation) -> Result<usize> {
    let field = field.validate()?;
    let m = oriented(m, orientation);
    let len = m.rows();
    let full = len.min(m.cols());
    match field {
        Field::Prime(p) => {
            let mut ech = ModEchelon::new(len, p);
            let mut rank = 0;
            for c in 0..m.cols() {
                if rank == full {
                    break;
                }
                let mut v = vec![0u64; len];
                for (r, x) in m.column(c) {
                    v[r] = x.rem_euclid(p as i64) as u64;
                }
                rank += usize::from(ech.insert(v));
            }
            Ok(rank)
        }
        Field::Rational => {
            let mut ech = ZEchelon::new(len);
            for c in 0..m.cols() {
                if ech.rank() == full {
                    break;
                }
                let mut v = vec![0i128; len];
                for (r, x) in m.column(c) {
                    v[r] = x as i128;
                }
                ech.insert(v);
            }
            Ok(ech.rank())
        }
    }
}

pub fn rank(m: &SparseMatrix, field: Field) -> Result<usize> {
    rank_oriented(m, field, Orientation::Auto)
}

/// Textbook Gaussian elimination over Q on a dense copy. Independent of the
/// fraction-free path; meant as a test oracle for small matrices.
pub fn rank_rational_dense(m: &SparseMatrix) -> usize {
    let mut a: Vec<Vec<BigRational>> = m
        .to_dense()
        .into_iter()
        .map(|row| row.into_iter().map(|x| BigRational::from_integer(x.into())).collect())
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    for c in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !a[r][c].is_zero()) else {
            continue;
        };
        a.swap(rank, pivot);
        let pivot_row = a[rank].clone();
        for row in a.iter_mut().skip(rank + 1) {
            if row[c].is_zero() {
                continue;
            }
            let factor = &row[c] / &pivot_row[c];
            for (x, y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x -= &factor * y;
            }
        }
        rank += 1;
    }
    rank
}

/// Basis of `{x : m x = 0}` over `F_p`.
pub fn kernel_mod_p(m: &SparseMatrix, p: u64) -> Result<Vec<Vec<u64>>> {
    Field::Prime(p).validate()?;
    let rows = m.transpose();
    let mut ech = ModEchelon::new(m.cols(), p);
    for r in 0..rows.cols() {
        let mut v = vec![0u64; m.cols()];
        for (c, x) in rows.column(r) {
            v[c] = x.rem_euclid(p as i64) as u64;
        }
        ech.insert(v);
    }
    let rref = ech.into_rref();
    let pivots: Vec<usize> = rref.iter().map(|(c, _)| *c).collect();
    Ok((0..m.cols())
        .filter(|c| pivots.binary_search(c).is_err())
        .map(|free| {
            let mut x = vec![0u64; m.cols()];
            x[free] = 1;
            for (pc, row) in &rref {
                x[*pc] = (p - row[free]) % p;
            }
            x
        })
        .collect())
}

/// Basis of `{x : m x = 0}` over Q, as primitive integer vectors.
pub fn kernel_rational(m: &SparseMatrix) -> Result<Vec<Vec<BigInt>>> {
    // Row space by fraction-free elimination, then a small rational RREF.
    let rows = m.transpose();
    let mut ech = ZEchelon::new(m.cols());
    for r in 0..rows.cols() {
        let mut v = vec![0i128; m.cols()];
        for (c, x) in rows.column(r) {
            v[c] = x as i128;
        }
        ech.insert(v);
    }
    let mut basis: Vec<Vec<BigRational>> = ech
        .basis_big()
        .into_iter()
        .map(|row| row.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let lead = |row: &[BigRational]| row.iter().position(|x| !x.is_zero()).unwrap_or(usize::MAX);
    basis.sort_by_key(|row| lead(row));
    let pivots: Vec<usize> = basis.iter().map(|row| lead(row)).collect();
    for i in 0..basis.len() {
        let pc = pivots[i];
        let inv = basis[i][pc].recip();
        for x in basis[i].iter_mut() {
            *x *= &inv;
        }
        let pivot = basis[i].clone();
        for (j, row) in basis.iter_mut().enumerate() {
            if j != i && !row[pc].is_zero() {
                let factor = row[pc].clone();
                for (x, y) in row.iter_mut().zip(&pivot) {
                    *x -= &factor * y;
                }
            }
        }
    }
    Ok((0..m.cols())
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut x = vec![BigRational::zero(); m.cols()];
            x[free] = BigRational::one();
            for (row, &pc) in basis.iter().zip(&pivots) {
                x[pc] = -row[free].clone();
            }
            let denom = x.iter().fold(BigInt::one(), |l, q| l.lcm(q.denom()));
            let ints: Vec<BigInt> = x.iter().map(|q| q.numer() * (&denom / q.denom())).collect();
            let g = ints.iter().fold(BigInt::zero(), |g, v| g.gcd(v));
            ints.into_iter().map(|v| v / &g).collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};

    fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize, rank_hint: usize) -> SparseMatrix {
        // Product of random rows x k and k x cols factors, so the rank is at most k.
        let left: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..rank_hint).map(|_| rng.gen_range(-3..4)).collect())
            .collect();
        let right: Vec<Vec<i64>> = (0..rank_hint)
            .map(|_| (0..cols).map(|_| rng.gen_range(-3..4)).collect())
            .collect();
        if rank_hint == 0 {
            return SparseMatrix::zeros(rows, cols);
        }
        SparseMatrix::from_dense(&left)
            .multiply(&SparseMatrix::from_dense(&right))
            .unwrap()
    }

    #[test]
    fn construction_and_access() {
        let m = SparseMatrix::from_triples(2, 3, &[(0, 0, 1), (1, 2, -2), (0, 0, 2), (1, 1, 0)])
            .unwrap();
        assert_eq!(m.nnz(), 2);
        assert_eq!(m.get(0, 0), 3);
        assert_eq!(m.get(1, 2), -2);
        assert_eq!(m.get(1, 1), 0);
        assert_eq!(m.transpose().get(2, 1), -2);
        assert_eq!(m.triples(), vec![(0, 0, 3), (1, 2, -2)]);
        assert!(SparseMatrix::from_triples(2, 3, &[(2, 0, 1)]).is_err());
    }

    #[test]
    fn multiply_matches_dense() {
        let a = SparseMatrix::from_dense(&[vec![1, 2], vec![0, -1], vec![3, 0]]);
        let b = SparseMatrix::from_dense(&[vec![2, 0, 1], vec![1, 1, 0]]);
        assert_eq!(
            a.multiply(&b).unwrap().to_dense(),
            vec![vec![4, 2, 1], vec![-1, -1, 0], vec![6, 0, 3]]
        );
        assert!(a.multiply(&a).is_err());
    }

    #[test]
    fn field_parsing() {
        assert_eq!("q".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("fp:7".parse::<Field>().unwrap(), Field::Prime(7));
        assert!("fp:8".parse::<Field>().is_err());
        assert!("z".parse::<Field>().is_err());
    }

    #[test]
    fn rank_depends_on_characteristic() {
        // det = 2: full rank over Q and F_3, rank 1 over F_2.
        let m = SparseMatrix::from_dense(&[vec![1, 1], vec![1, -1]]);
        assert_eq!(rank(&m, Field::Rational).unwrap(), 2);
        assert_eq!(rank(&m, Field::Prime(3)).unwrap(), 2);
        assert_eq!(rank(&m, Field::Prime(2)).unwrap(), 1);
    }

    #[test]
    fn strategies_agree_on_random_matrices() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..60 {
            let rows = rng.gen_range(1..12);
            let cols = rng.gen_range(1..12);
            let k = rng.gen_range(0..6);
            let m = random_matrix(&mut rng, rows, cols, k);
            let oracle = rank_rational_dense(&m);
            assert!(oracle <= k);
            for o in [Orientation::Columns, Orientation::Rows, Orientation::Auto] {
                assert_eq!(rank_oriented(&m, Field::Rational, o).unwrap(), oracle);
            }
            let mod_p = rank(&m, Field::Prime(1_000_003)).unwrap();
            assert_eq!(mod_p, oracle);
            assert_eq!(
                rank_oriented(&m, Field::Prime(5), Orientation::Columns).unwrap(),
                rank_oriented(&m, Field::Prime(5), Orientation::Rows).unwrap()
            );
        }
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        // Hilbert-like integer matrix with huge intermediate cross products.
        let n = 12;
        let dense: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 720720 / (i + j + 1) as i64 * (1 + i as i64).pow(9)).collect())
            .collect();
        let m = SparseMatrix::from_dense(&dense);
        assert_eq!(rank(&m, Field::Rational).unwrap(), rank_rational_dense(&m));
    }

    #[test]
    fn kernels_are_annihilated() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..30 {
            let rows = rng.gen_range(1..8);
            let cols = rng.gen_range(1..10);
            let k = rng.gen_range(0..5);
            let m = random_matrix(&mut rng, rows, cols, k);
            let r = rank_rational_dense(&m);
            let kq = kernel_rational(&m).unwrap();
            assert_eq!(kq.len(), cols - r);
            for x in &kq {
                for row in m.to_dense() {
                    let s: BigInt = row.iter().zip(x).map(|(&a, b)| BigInt::from(a) * b).sum();
                    assert!(Zero::is_zero(&s));
                }
            }
            let p = 7;
            let kp = kernel_mod_p(&m, p).unwrap();
            assert_eq!(kp.len(), cols - rank(&m, Field::Prime(p)).unwrap());
            for x in &kp {
                for row in m.to_dense() {
                    let s = row
                        .iter()
                        .zip(x)
                        .map(|(&a, &b)| a.rem_euclid(p as i64) as u64 * b)
                        .sum::<u64>();
                    assert_eq!(s % p, 0);
                }
            }
        }
    }
}
