//! Residue arithmetic and linear systems over `Z/m`.
//!
//! Systems are solved one prime power at a time. Over `Z/p^e` every nonzero
//! element is `p^v` times a unit, so pivoting on an entry of minimal valuation
//! diagonalizes the matrix without division by zero divisors. Solutions are
//! glued by the Chinese remainder theorem; an unsolvable system yields an
//! explicit integer combination of equations that is `0` on the left and
//! nonzero on the right.

use num_integer::Integer;

use crate::error::{Error, Result};

pub fn reduce(x: i64, modulus: u64) -> u64 {
    x.rem_euclid(modulus as i64) as u64
}

pub fn mul_mod(a: u64, b: u64, modulus: u64) -> u64 {
    ((a as u128 * b as u128) % modulus as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, modulus: u64) -> u64 {
    let mut acc = 1 % modulus;
    base %= modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, modulus);
        }
        base = mul_mod(base, base, modulus);
        exp >>= 1;
    }
    acc
}

pub fn inverse_mod(a: u64, modulus: u64) -> Option<u64> {
    let ext = (a as i128).extended_gcd(&(modulus as i128));
    (ext.gcd == 1).then(|| ext.x.rem_euclid(modulus as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Prime factorization by trial division, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        let mut e = 0;
        while n.is_multiple_of(d) {
            n /= d;
            e += 1;
        }
        if e > 0 {
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

pub fn euler_phi(n: u64) -> u64 {
    factorize(n)
        .iter()
        .fold(n, |acc, &(p, _)| acc / p * (p - 1))
}

/// Multiplicative order of a unit.
pub fn order_mod(a: u64, modulus: u64) -> u64 {
    let phi = euler_phi(modulus);
    let mut order = phi;
    for (q, _) in factorize(phi) {
        while order.is_multiple_of(q) && pow_mod(a, order / q, modulus) == 1 {
            order /= q;
        }
    }
    order
}

/// Smallest generator of `(Z/modulus)^*`, when that group is cyclic.
pub fn primitive_root(modulus: u64) -> Option<u64> {
    if modulus <= 2 {
        return Some(1 % modulus.max(1));
    }
    let phi = euler_phi(modulus);
    (2..modulus).find(|&g| g.gcd(&modulus) == 1 && order_mod(g, modulus) == phi)
}

/// p-adic valuation of a nonzero residue below `p^e`; `e` for zero.
fn valuation(mut x: u64, p: u64, e: u32) -> u32 {
    if x == 0 {
        return e;
    }
    let mut v = 0;
    while x.is_multiple_of(p) {
        x /= p;
        v += 1;
    }
    v
}

/// Sparse integer combination of equations, by equation index.
pub type Combination = Vec<(usize, u64)>;

/// Proof that `A x = b (mod m)` has no solution: `Σ c_i A_i = 0` and
/// `Σ c_i b_i = residue ≠ 0 (mod m)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub combination: Combination,
    pub residue: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Solution(Vec<u64>),
    Inconsistent(Certificate),
}

fn combine(target: &mut Combination, source: &Combination, factor: u64, q: u64) {
    // target -= factor * source
    for &(idx, c) in source {
        let delta = mul_mod(factor, c, q);
        match target.binary_search_by_key(&idx, |&(i, _)| i) {
            Ok(pos) => {
                let v = (target[pos].1 + q - delta) % q;
                if v == 0 {
                    target.remove(pos);
                } else {
                    target[pos].1 = v;
                }
            }
            Err(pos) => {
                if delta != 0 {
                    target.insert(pos, (idx, (q - delta) % q));
                }
            }
        }
    }
}

/// Solves over `Z/p^e`; on failure returns a combination mod `p^e`.
fn solve_prime_power(
    rows: &[Vec<i64>],
    rhs: &[i64],
    cols: usize,
    p: u64,
    e: u32,
) -> std::result::Result<Vec<u64>, Combination> {
    let q = p.pow(e);
    let mut a: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| reduce(x, q)).collect())
        .collect();
    let mut b: Vec<u64> = rhs.iter().map(|&x| reduce(x, q)).collect();
    let mut combos: Vec<Combination> = (0..rows.len()).map(|i| vec![(i, 1 % q)]).collect();
    let mut v_mat: Vec<Vec<u64>> = (0..cols)
        .map(|i| (0..cols).map(|j| u64::from(i == j)).collect())
        .collect();

    let limit = rows.len().min(cols);
    let mut rank = 0;
    let mut pivots = Vec::new();
    for t in 0..limit {
        let mut best: Option<(u32, usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 {
                    let v = valuation(x, p, e);
                    if best.is_none_or(|(bv, _, _)| v < bv) {
                        best = Some((v, i, j));
                    }
                }
            }
            if matches!(best, Some((0, _, _))) {
                break;
            }
        }
        let Some((v, pi, pj)) = best else { break };
        a.swap(t, pi);
        b.swap(t, pi);
        combos.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        for row in v_mat.iter_mut() {
            row.swap(t, pj);
        }
        let pv = p.pow(v);
        let unit = a[t][t] / pv;
        let unit_inv = inverse_mod(unit, q).expect("pivot cofactor is a unit");
        let pivot_row = a[t].clone();
        let pivot_combo = combos[t].clone();
        for i in t + 1..a.len() {
            if a[i][t] == 0 {
                continue;
            }
            let factor = mul_mod(a[i][t] / pv, unit_inv, q);
            for j in t..cols {
                a[i][j] = (a[i][j] + q - mul_mod(factor, pivot_row[j], q)) % q;
            }
            b[i] = (b[i] + q - mul_mod(factor, b[t], q)) % q;
            combine(&mut combos[i], &pivot_combo, factor, q);
        }
        for j in t + 1..cols {
            if a[t][j] == 0 {
                continue;
            }
            let factor = mul_mod(a[t][j] / pv, unit_inv, q);
            a[t][j] = 0;
            for row in v_mat.iter_mut() {
                row[j] = (row[j] + q - mul_mod(factor, row[t], q)) % q;
            }
        }
        pivots.push((v, unit_inv));
        rank += 1;
    }

    let mut y = vec![0u64; cols];
    for (t, &(v, unit_inv)) in pivots.iter().enumerate() {
        if valuation(b[t], p, e) < v {
            let mut cert = combos[t].clone();
            let scale = p.pow(e - v);
            for entry in cert.iter_mut() {
                entry.1 = mul_mod(entry.1, scale, q);
            }
            cert.retain(|&(_, c)| c != 0);
            return Err(cert);
        }
        y[t] = mul_mod(b[t] / p.pow(v), unit_inv, q);
    }
    if let Some(t) = (rank..a.len()).find(|&t| b[t] != 0) {
        return Err(combos[t].clone());
    }
    Ok((0..cols)
        .map(|i| {
            (0..cols).fold(0, |acc, j| (acc + mul_mod(v_mat[i][j], y[j], q)) % q)
        })
        .collect())
}

/// Solves `A x = b (mod modulus)` for a dense integer matrix.
pub fn solve_mod(rows: &[Vec<i64>], rhs: &[i64], modulus: u64) -> Result<LinearSolution> {
    if modulus < 2 {
        return Err(Error::domain(format!("modulus must be at least 2, got {modulus}")));
    }
    if rows.len() != rhs.len() {
        return Err(Error::domain("row count and right-hand side length differ"));
    }
    let cols = rows.first().map_or(0, Vec::len);
    if rows.iter().any(|r| r.len() != cols) {
        return Err(Error::domain("ragged coefficient matrix"));
    }
    let mut solution = vec![0u64; cols];
    for (p, e) in factorize(modulus) {
        let q = p.pow(e);
        let cofactor = modulus / q;
        match solve_prime_power(rows, rhs, cols, p, e) {
            Ok(local) => {
                // CRT basis element: 1 mod q, 0 mod cofactor.
                let lift = mul_mod(
                    cofactor,
                    inverse_mod(cofactor % q, q).expect("coprime factors"),
                    modulus,
                );
                for (s, l) in solution.iter_mut().zip(local) {
                    *s = (*s + mul_mod(lift, l, modulus)) % modulus;
                }
            }
            Err(local) => {
                let combination: Combination = local
                    .into_iter()
                    .map(|(i, c)| (i, mul_mod(c, cofactor, modulus)))
                    .filter(|&(_, c)| c != 0)
                    .collect();
                let residue = combination
                    .iter()
                    .fold(0, |acc, &(i, c)| (acc + mul_mod(c, reduce(rhs[i], modulus), modulus)) % modulus);
                let cert = Certificate {
                    combination,
                    residue,
                };
                if !verify_certificate(rows, rhs, modulus, &cert) {
                    return Err(Error::invariant("inconsistency certificate failed to verify"));
                }
                return Ok(LinearSolution::Inconsistent(cert));
            }
        }
    }
    Ok(LinearSolution::Solution(solution))
}

/// Checks a certificate directly against the system.
pub fn verify_certificate(rows: &[Vec<i64>], rhs: &[i64], modulus: u64, cert: &Certificate) -> bool {
    let cols = rows.first().map_or(0, Vec::len);
    let lhs_zero = (0..cols).all(|j| {
        cert.combination.iter().fold(0, |acc, &(i, c)| {
            (acc + mul_mod(c, reduce(rows[i][j], modulus), modulus)) % modulus
        }) == 0
    });
    let residue = cert
        .combination
        .iter()
        .fold(0, |acc, &(i, c)| (acc + mul_mod(c, reduce(rhs[i], modulus), modulus)) % modulus);
    lhs_zero && residue == cert.residue && residue != 0
}

#[cfg(test)]
mod tests {
    use super::*;

    fn satisfies(rows: &[Vec<i64>], rhs: &[i64], m: u64, x: &[u64]) -> bool {
        rows.iter().zip(rhs).all(|(row, &b)| {
            let lhs = row
                .iter()
                .zip(x)
                .fold(0, |acc, (&a, &xi)| (acc + mul_mod(reduce(a, m), xi, m)) % m);
            lhs == reduce(b, m)
        })
    }

    #[test]
    fn number_theory() {
        assert_eq!(factorize(20), vec![(2, 2), (5, 1)]);
        assert_eq!(euler_phi(25), 20);
        assert_eq!(primitive_root(25), Some(2));
        assert_eq!(primitive_root(13), Some(2));
        assert_eq!(primitive_root(8), None);
        assert_eq!(inverse_mod(7, 25), Some(18));
        assert_eq!(inverse_mod(5, 25), None);
        assert_eq!(order_mod(7, 25), 4);
        assert!(is_prime(13) && !is_prime(25) && !is_prime(1));
    }

    #[test]
    fn solves_with_zero_divisors() {
        // 2x = 4 (mod 6) is solvable; 2x = 3 (mod 6) is not.
        let rows = vec![vec![2]];
        match solve_mod(&rows, &[4], 6).unwrap() {
            LinearSolution::Solution(x) => assert!(satisfies(&rows, &[4], 6, &x)),
            other => panic!("{other:?}"),
        }
        match solve_mod(&rows, &[3], 6).unwrap() {
            LinearSolution::Inconsistent(cert) => {
                assert!(verify_certificate(&rows, &[3], 6, &cert));
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn contradictory_equations() {
        let rows = vec![vec![1, 1], vec![1, 1]];
        let rhs = [1, 2];
        let LinearSolution::Inconsistent(cert) = solve_mod(&rows, &rhs, 25).unwrap() else {
            panic!("expected inconsistency");
        };
        assert!(verify_certificate(&rows, &rhs, 25, &cert));
    }

    #[test]
    fn rejects_trivial_modulus() {
        assert!(solve_mod(&[vec![1]], &[0], 1).is_err());
        assert!(solve_mod(&[vec![1]], &[0], 0).is_err());
    }

    #[test]
    fn random_consistent_systems() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for &m in &[2u64, 8, 12, 20, 25, 36, 97] {
            for _ in 0..50 {
                let rows_n = rng.gen_range(1..8);
                let cols = rng.gen_range(1..5);
                let rows: Vec<Vec<i64>> = (0..rows_n)
                    .map(|_| (0..cols).map(|_| rng.gen_range(-3..4)).collect())
                    .collect();
                let x0: Vec<u64> = (0..cols).map(|_| rng.gen_range(0..m)).collect();
                let rhs: Vec<i64> = rows
                    .iter()
                    .map(|r| {
                        r.iter()
                            .zip(&x0)
                            .map(|(&a, &x)| a * x as i64)
                            .sum::<i64>()
                    })
                    .collect();
                match solve_mod(&rows, &rhs, m).unwrap() {
                    LinearSolution::Solution(x) => assert!(satisfies(&rows, &rhs, m, &x)),
                    other => panic!("consistent system reported {other:?}"),
                }
            }
        }
    }

    #[test]
    fn random_systems_verdicts_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for &m in &[4u64, 6, 9, 10, 12] {
            for _ in 0..60 {
                let rows_n = rng.gen_range(1..5);
                let cols = rng.gen_range(1..3);
                let rows: Vec<Vec<i64>> = (0..rows_n)
                    .map(|_| (0..cols).map(|_| rng.gen_range(-4..5)).collect())
                    .collect();
                let rhs: Vec<i64> = (0..rows_n).map(|_| rng.gen_range(0..m as i64)).collect();
                let brute = (0..m.pow(cols as u32)).any(|code| {
                    let x: Vec<u64> = (0..cols).map(|j| code / m.pow(j as u32) % m).collect();
                    satisfies(&rows, &rhs, m, &x)
                });
                match solve_mod(&rows, &rhs, m).unwrap() {
                    LinearSolution::Solution(x) => {
                        assert!(brute);
                        assert!(satisfies(&rows, &rhs, m, &x));
                    }
                    LinearSolution::Inconsistent(cert) => {
                        assert!(!brute);
                        assert!(verify_certificate(&rows, &rhs, m, &cert));
                    }
                }
            }
        }
    }
}
