//! Positive roots of type `A_n` and their graph model.
//!
//! The root `α_{i,j} = ε_i − ε_j` is the edge `{i,j}` of the complete graph
//! on `n+1` vertices; in the simple-root basis it is the column with ones in
//! rows `i..j-1`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;

/// The positive root `α_{i,j}` with `1 <= i < j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PositiveRoot {
    i: usize,
    j: usize,
}

impl PositiveRoot {
    /// Validates `1 <= i < j <= n+1`.
    pub fn new(i: usize, j: usize, n: usize) -> Result<Self> {
        if n == 0 || i == 0 || i >= j || j > n + 1 {
            return Err(Error::InvalidRoot { i, j, n });
        }
        Ok(PositiveRoot { i, j })
    }

    pub fn i(&self) -> usize {
        self.i
    }

    pub fn j(&self) -> usize {
        self.j
    }

    /// Coefficients with respect to the simple roots of `A_n`.
    pub fn coefficients(&self, n: usize) -> Vec<i64> {
        (1..=n)
            .map(|k| i64::from(self.i <= k && k < self.j))
            .collect()
    }

    /// Position in the lexicographic enumeration of `Φ+` of `A_n`.
    pub fn index(&self, n: usize) -> usize {
        let v = n + 1;
        // roots (i', _) with i' < i come first
        let before: usize = (1..self.i).map(|r| v - r).sum();
        before + (self.j - self.i - 1)
    }
}

impl fmt::Display for PositiveRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.i, self.j)
    }
}

/// All `n(n+1)/2` positive roots of `A_n` in lexicographic `(i,j)` order.
pub fn positive_roots(n: usize) -> Result<Vec<PositiveRoot>> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    Ok((1..=n)
        .flat_map(|i| (i + 1..=n + 1).map(move |j| PositiveRoot { i, j }))
        .collect())
}

pub fn root_count(n: usize) -> usize {
    n * (n + 1) / 2
}

/// An ordered tuple of positive roots of `A_n`; repeats are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootTuple {
    n: usize,
    roots: Vec<PositiveRoot>,
}

impl RootTuple {
    pub fn new(n: usize, roots: Vec<PositiveRoot>) -> Result<Self> {
        if n == 0 {
            return Err(Error::ZeroRank);
        }
        for r in &roots {
            PositiveRoot::new(r.i, r.j, n)?;
        }
        Ok(RootTuple { n, roots })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self> {
        let roots = pairs
            .iter()
            .map(|&(i, j)| PositiveRoot::new(i, j, n))
            .collect::<Result<Vec<_>>>()?;
        RootTuple::new(n, roots)
    }

    /// Parses the `"i,j;i,j;..."` form.
    pub fn parse(n: usize, text: &str) -> Result<Self> {
        let mut pairs = Vec::new();
        for part in text.split(';').map(str::trim).filter(|p| !p.is_empty()) {
            let (a, b) = part.split_once(',').ok_or_else(|| Error::Parse {
                what: "root",
                detail: format!("expected \"i,j\", got {part:?}"),
            })?;
            let num = |s: &str| {
                usize::from_str(s.trim()).map_err(|e| Error::Parse {
                    what: "root",
                    detail: format!("{part:?}: {e}"),
                })
            };
            pairs.push((num(a)?, num(b)?));
        }
        Self::from_pairs(n, &pairs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn roots(&self) -> &[PositiveRoot] {
        &self.roots
    }

    pub fn len(&self) -> usize {
        self.roots.len()
    }

    pub fn is_empty(&self) -> bool {
        self.roots.is_empty()
    }

    /// The `n x r` coefficient matrix, one column per root.
    pub fn coefficient_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<i64>> = self.roots.iter().map(|r| r.coefficients(self.n)).collect();
        IntMatrix::from_columns(self.n, &cols).expect("n >= 1 and columns have length n")
    }

    pub fn to_graph(&self) -> RootGraph {
        RootGraph {
            vertex_count: self.n + 1,
            edges: self.roots.iter().map(|r| (r.i, r.j)).collect(),
        }
    }

    /// Tuple with the `k`-th root (0-based) removed.
    pub fn without(&self, k: usize) -> RootTuple {
        let mut roots = self.roots.clone();
        roots.remove(k);
        RootTuple { n: self.n, roots }
    }
}

impl fmt::Display for RootTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(ToString::to_string).collect();
        f.write_str(&parts.join(";"))
    }
}

/// Multigraph on the vertices `1..=vertex_count`, one edge per tuple entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootGraph {
    pub vertex_count: usize,
    pub edges: Vec<(usize, usize)>,
}

impl RootGraph {
    /// Number of connected components, isolated vertices included.
    pub fn component_count(&self) -> usize {
        let mut uf = UnionFind::new(self.vertex_count + 1);
        let mut c = self.vertex_count;
        for &(u, v) in &self.edges {
            if uf.union(u, v) {
                c -= 1;
            }
        }
        c
    }

    /// `e − v + c`.
    pub fn circuit_rank(&self) -> usize {
        self.edges.len() + self.component_count() - self.vertex_count
    }

    pub fn is_forest(&self) -> bool {
        self.circuit_rank() == 0
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() == 1
    }

    /// Vertex sequence of the only cycle when the circuit rank is exactly 1.
    ///
    /// A pair of parallel edges comes back as the 2-cycle `[u, v]`.
    pub fn unique_cycle(&self) -> Option<Vec<usize>> {
        if self.circuit_rank() != 1 {
            return None;
        }
        let mut uf = UnionFind::new(self.vertex_count + 1);
        let mut closing = None;
        let mut tree_edges = Vec::with_capacity(self.edges.len());
        for &(u, v) in &self.edges {
            if uf.union(u, v) {
                tree_edges.push((u, v));
            } else {
                closing = Some((u, v));
            }
        }
        let (u, v) = closing?;
        // the tree path u..v plus the closing edge v-u is the cycle
        Some(tree_path(self.vertex_count, &tree_edges, u, v))
    }
}

/// Vertices on the path from `from` to `to` in a forest.
pub(crate) fn tree_path(
    vertex_count: usize,
    edges: &[(usize, usize)],
    from: usize,
    to: usize,
) -> Vec<usize> {
    let mut adj = vec![Vec::new(); vertex_count + 1];
    for &(a, b) in edges {
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut parent = vec![usize::MAX; vertex_count + 1];
    parent[from] = from;
    let mut stack = vec![from];
    while let Some(x) = stack.pop() {
        if x == to {
            break;
        }
        for &y in &adj[x] {
            if parent[y] == usize::MAX {
                parent[y] = x;
                stack.push(y);
            }
        }
    }
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

#[derive(Debug, Clone)]
pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
        }
    }

    pub(crate) fn reset(&mut self) {
        for (i, p) in self.parent.iter_mut().enumerate() {
            *p = i;
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false when `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}
