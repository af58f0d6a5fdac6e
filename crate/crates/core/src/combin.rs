//! Counting helpers and the deterministic k-subset enumeration shared by the
//! census, base and period enumerations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

/// `C(x, y)`, zero when `y < 0`, `x < 0` or `x < y`.
pub fn binomial(x: i64, y: i64) -> BigInt {
    if y < 0 || x < 0 || x < y {
        return BigInt::zero();
    }
    let y = y.min(x - y);
    let mut acc = BigInt::one();
    for t in 0..y {
        acc *= x - t;
        acc /= t + 1;
    }
    acc
}

pub fn binomial_u64(x: u64, y: u64) -> u64 {
    if y > x {
        return 0;
    }
    let y = y.min(x - y);
    let mut acc: u128 = 1;
    for t in 0..y {
        acc = acc * u128::from(x - t) / u128::from(t + 1);
    }
    u64::try_from(acc).expect("binomial exceeds u64")
}

pub fn factorial(n: u64) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

/// `lcm{1, 2, ..., n}`; 1 for `n <= 0`.
pub fn lcm_up_to(n: i64) -> BigInt {
    (1..=n.max(0)).fold(BigInt::one(), |acc, k| acc.lcm(&BigInt::from(k)))
}

/// Advances `c` to the next k-subset of `0..n` in lexicographic order.
pub fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    let mut i = k;
    while i > 0 {
        i -= 1;
        if c[i] < n - k + i {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Visits every k-subset of `0..n` whose smallest element is `first`.
fn visit_block<S>(
    n: usize,
    k: usize,
    first: usize,
    state: &mut S,
    visit: &impl Fn(&mut S, &[usize]),
) {
    let mut c: Vec<usize> = (first..first + k).collect();
    loop {
        visit(state, &c);
        if !next_combination(&mut c[1..], n) {
            break;
        }
    }
}

/// Enumerates all k-subsets of `0..n` in lexicographic order, split into
/// blocks by smallest element.
///
/// Each block folds into its own state from `make`; the states come back in
/// block order whatever the schedule, so merging them gives the same result
/// for any worker count. `workers == 0` uses every available core.
pub fn fold_combinations<S, M, F>(n: usize, k: usize, workers: usize, make: M, visit: F) -> Vec<S>
where
    S: Send,
    M: Fn() -> S + Sync,
    F: Fn(&mut S, &[usize]) + Sync,
{
    if k > n {
        return Vec::new();
    }
    if k == 0 {
        let mut s = make();
        visit(&mut s, &[]);
        return vec![s];
    }
    let block = |first: usize| {
        let mut s = make();
        visit_block(n, k, first, &mut s, &visit);
        s
    };
    run_blocks(n - k + 1, workers, block)
}

/// Runs `job(0..count)` on up to `workers` threads and returns the outputs
/// in index order.
pub fn run_blocks<S, J>(count: usize, workers: usize, job: J) -> Vec<S>
where
    S: Send,
    J: Fn(usize) -> S + Sync,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        if workers != 1 {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(workers).build();
            if let Ok(pool) = pool {
                return pool.install(|| (0..count).into_par_iter().map(&job).collect());
            }
        }
    }
    let _ = workers;
    (0..count).map(job).collect()
}
