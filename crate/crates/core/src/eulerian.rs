//! Classical and cyclic Eulerian numbers.

use num_bigint::BigInt;
use num_traits::{One, Zero};

/// Row `n` of the Eulerian triangle, `⟨n,0⟩ .. ⟨n,n-1⟩`; empty for `n = 0`.
pub fn eulerian_row(n: usize) -> Vec<BigInt> {
    if n == 0 {
        return Vec::new();
    }
    let mut row = vec![BigInt::one()];
    for m in 2..=n {
        // ⟨m,k⟩ = (k+1)⟨m-1,k⟩ + (m-k)⟨m-1,k-1⟩
        let next = (0..m)
            .map(|k| {
                let keep = row.get(k).map_or_else(BigInt::zero, |v| v * (k + 1));
                let grow = if k > 0 {
                    &row[k - 1] * (m - k)
                } else {
                    BigInt::zero()
                };
                keep + grow
            })
            .collect();
        row = next;
    }
    row
}

/// Number of permutations of `[n]` with exactly `k` descents; 0 outside
/// `0 <= k <= n-1`.
pub fn eulerian(n: usize, k: usize) -> BigInt {
    eulerian_row(n).get(k).cloned().unwrap_or_else(BigInt::zero)
}

/// Number of permutations of `[n]` with exactly `k` cyclic descents,
/// `n ⟨n-1,k-1⟩`; 0 outside `1 <= k <= n-1`.
pub fn cyclic_eulerian(n: usize, k: usize) -> BigInt {
    if k == 0 || k + 1 > n {
        return BigInt::zero();
    }
    eulerian(n - 1, k - 1) * n
}

/// Both triangles for rows `1..=max_n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerianTable {
    /// `classical[n-1][k] = ⟨n,k⟩` for `0 <= k <= n-1`.
    pub classical: Vec<Vec<BigInt>>,
    /// `cyclic[n-1][k-1]` is the cyclic number for `1 <= k <= n-1`.
    pub cyclic: Vec<Vec<BigInt>>,
}

impl EulerianTable {
    pub fn new(max_n: usize) -> Self {
        let classical: Vec<Vec<BigInt>> = (1..=max_n).map(eulerian_row).collect();
        let cyclic = (1..=max_n)
            .map(|n| (1..n).map(|k| &classical[n - 2][k - 1] * n).collect())
            .collect();
        EulerianTable { classical, cyclic }
    }

    pub fn classical_row(&self, n: usize) -> &[BigInt] {
        &self.classical[n - 1]
    }

    pub fn cyclic_row(&self, n: usize) -> &[BigInt] {
        &self.cyclic[n - 1]
    }
}

/// Descents of a sequence.
pub fn descents<T: Ord>(seq: &[T]) -> usize {
    seq.windows(2).filter(|w| w[0] > w[1]).count()
}

/// Cyclic ascents and cyclic descents of a sequence read around a circle.
pub fn cyclic_ascents_descents<T: Ord>(seq: &[T]) -> (usize, usize) {
    let len = seq.len();
    let mut asc = 0;
    let mut dsc = 0;
    for i in 0..len {
        let (x, y) = (&seq[i], &seq[(i + 1) % len]);
        if x < y {
            asc += 1;
        } else if x > y {
            dsc += 1;
        }
    }
    (asc, dsc)
}
