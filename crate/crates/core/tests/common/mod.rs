//! Independent oracles shared by the integration tests. Nothing here calls
//! into the library's own algorithms for the quantity being checked.

#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Determinant by Laplace expansion along the first row.
pub fn laplace_det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0] as i128;
    }
    let mut total = 0i128;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != c)
                    .map(|(_, &v)| v)
                    .collect()
            })
            .collect();
        let term = m[0][c] as i128 * laplace_det(&minor);
        total += if c % 2 == 0 { term } else { -term };
    }
    total
}

/// Rank over the rationals by plain Gaussian elimination.
pub fn rational_rank(rows: &[Vec<i64>]) -> usize {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| BigRational::from_integer(BigInt::from(v)))
                .collect()
        })
        .collect();
    let width = a.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..width {
        let Some(p) = (rank..a.len()).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(rank, p);
        for r in 0..a.len() {
            if r != rank && !a[r][col].is_zero() {
                let f = &a[r][col] / &a[rank][col];
                let pivot = a[rank].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot).skip(col) {
                    *x -= p * &f;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// All permutations of `0..n` (Heap's algorithm).
pub fn for_each_permutation(n: usize, mut f: impl FnMut(&[usize])) {
    let mut p: Vec<usize> = (0..n).collect();
    let mut c = vec![0usize; n];
    f(&p);
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                p.swap(0, i);
            } else {
                p.swap(c[i], i);
            }
            f(&p);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Every tuple in `lo..=hi` of length `len`.
pub fn for_each_tuple(len: usize, lo: i64, hi: i64, mut f: impl FnMut(&[i64])) {
    if lo > hi {
        return;
    }
    let mut t = vec![lo; len];
    loop {
        f(&t);
        let mut k = 0;
        loop {
            if k == len {
                return;
            }
            if t[k] < hi {
                t[k] += 1;
                break;
            }
            t[k] = lo;
            k += 1;
        }
    }
}

/// Solutions of `x_1 + ... + x_n = k` with every `x_i` in `1..=d`.
pub fn tau_brute(n: usize, k: i64, d: i64) -> BigInt {
    let mut count = 0u64;
    for_each_tuple(n, 1, d, |t| count += u64::from(t.iter().sum::<i64>() == k));
    BigInt::from(count)
}

/// Tuples in `[l,m]^(a+b)` with `|sum of first a - sum of last b| = k`.
pub fn balance_brute(a: usize, b: usize, k: i64, l: i64, m: i64) -> BigInt {
    let mut count = 0u64;
    for_each_tuple(a + b, l, m, |t| {
        let s: i64 = t[..a].iter().sum::<i64>() - t[a..].iter().sum::<i64>();
        count += u64::from(s.abs() == k);
    });
    BigInt::from(count)
}

/// Every `k`-subset of `0..n`, lexicographic.
pub fn for_each_subset(n: usize, k: usize, mut f: impl FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for x in start..n {
            if n - x < k - cur.len() {
                break;
            }
            cur.push(x);
            rec(x + 1, n, k, cur, f);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut f);
}

/// Coefficient column of `α_{i,j}` in `A_n`, built from the difference
/// `ε_i − ε_j` written in the simple-root basis.
pub fn root_column(i: usize, j: usize, n: usize) -> Vec<i64> {
    // α_k = ε_k − ε_{k+1}; ε_i − ε_j = α_i + ... + α_{j-1}
    let mut c = vec![0i64; n];
    for k in i..j {
        c[k - 1] += 1;
    }
    c
}

/// `n!` as a `BigInt`.
pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// Brute-force count of `z ∈ Z_q^r` with `z · c ≢ b (mod q)` for every
/// column, iterating the full grid.
pub fn grid_count(columns: &[Vec<i64>], rhs: &[i64], q: i64) -> u64 {
    let r = columns[0].len();
    let mut count = 0;
    for_each_tuple(r, 0, q - 1, |z| {
        let ok = columns.iter().zip(rhs).all(|(c, b)| {
            let dot: i64 = c.iter().zip(z).map(|(x, y)| x * y).sum();
            (dot - b).rem_euclid(q) != 0
        });
        count += u64::from(ok);
    });
    count
}
