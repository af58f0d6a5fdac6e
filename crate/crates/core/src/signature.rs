//! Signatures of `(n+1)`-tuples of positive roots and their census.
//!
//! The signature of `S = (β_1, ..., β_{n+1})` is the unordered pair counting
//! the `+1` and `−1` values among the cofactors `d_k = (−1)^k det(S_k)`. Two
//! independent routes compute it: the cofactor determinants directly, and
//! the cyclic ascents/descents of the unique cycle of the root graph.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::combin::{binomial, binomial_u64, fold_combinations};
use crate::error::{Error, Result};
use crate::eulerian::{cyclic_ascents_descents, eulerian};
use crate::json::big_to_json;
use crate::roots::{positive_roots, root_count, tree_path, RootTuple, UnionFind};

/// Unordered pair `{a, b}`, stored with `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Signature {
    a: usize,
    b: usize,
}

impl Signature {
    pub fn new(x: usize, y: usize) -> Self {
        Signature {
            a: x.min(y),
            b: x.max(y),
        }
    }

    pub const DEGENERATE: Signature = Signature { a: 0, b: 0 };

    pub fn a(&self) -> usize {
        self.a
    }

    pub fn b(&self) -> usize {
        self.b
    }

    pub fn is_degenerate(&self) -> bool {
        *self == Self::DEGENERATE
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("a".into(), self.a.into());
        m.insert("b".into(), self.b.into());
        Value::Object(m)
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{},{}}}", self.a, self.b)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Method {
    Cofactor,
    #[default]
    Graph,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cofactor" => Ok(Method::Cofactor),
            "graph" => Ok(Method::Graph),
            _ => Err(Error::Parse {
                what: "method",
                detail: format!("{s:?} is not one of graph, cofactor"),
            }),
        }
    }
}

fn check_length(s: &RootTuple) -> Result<()> {
    if s.len() != s.n() + 1 {
        return Err(Error::WrongTupleLength {
            expected: s.n() + 1,
            got: s.len(),
        });
    }
    Ok(())
}

/// Signature from the `n+1` cofactor determinants.
pub fn signature_cofactor(s: &RootTuple) -> Result<Signature> {
    check_length(s)?;
    let cs = s.coefficient_matrix();
    Ok(cofactor_kernel(&cs.columns(), s.n()))
}

fn cofactor_kernel(columns: &[Vec<i64>], n: usize) -> Signature {
    let mut plus = 0;
    let mut minus = 0;
    let mut minor: Vec<Vec<i64>> = Vec::with_capacity(n);
    for k in 0..columns.len() {
        minor.clear();
        minor.extend(
            columns
                .iter()
                .enumerate()
                .filter(|&(c, _)| c != k)
                .map(|(_, v)| v.clone()),
        );
        let m = crate::linalg::IntMatrix::from_columns(n, &minor).expect("n x n minor");
        let det = m
            .determinant_i128()
            .expect("minors of root matrices are in {-1,0,1}");
        // k is 0-based, so the sign (−1)^(k+1)
        let d = if k % 2 == 0 { -det } else { det };
        match d {
            1 => plus += 1,
            -1 => minus += 1,
            _ => {}
        }
    }
    Signature::new(plus, minus)
}

/// Signature from the cyclic ascents and descents of the unique cycle of
/// the root graph; `{0,0}` when the graph has two or more independent
/// cycles.
pub fn signature_graph(s: &RootTuple) -> Result<Signature> {
    check_length(s)?;
    let edges: Vec<(usize, usize)> = s.roots().iter().map(|r| (r.i(), r.j())).collect();
    let mut scratch = GraphScratch::new(s.n() + 1);
    Ok(scratch.signature(&edges))
}

/// Reusable buffers for the graph kernel.
struct GraphScratch {
    vertex_count: usize,
    uf: UnionFind,
    tree: Vec<(usize, usize)>,
}

impl GraphScratch {
    fn new(vertex_count: usize) -> Self {
        GraphScratch {
            vertex_count,
            uf: UnionFind::new(vertex_count + 1),
            tree: Vec::with_capacity(vertex_count),
        }
    }

    fn signature(&mut self, edges: &[(usize, usize)]) -> Signature {
        self.uf.reset();
        self.tree.clear();
        let mut closing = None;
        for &(u, v) in edges {
            if self.uf.union(u, v) {
                self.tree.push((u, v));
            } else if closing.is_some() {
                return Signature::DEGENERATE;
            } else {
                closing = Some((u, v));
            }
        }
        let Some((u, v)) = closing else {
            // a forest: only possible for tuples shorter than n+1
            return Signature::DEGENERATE;
        };
        let cycle = tree_path(self.vertex_count, &self.tree, u, v);
        let (asc, dsc) = cyclic_ascents_descents(&cycle);
        Signature::new(asc, dsc)
    }
}

pub fn signature(s: &RootTuple, method: Method) -> Result<Signature> {
    match method {
        Method::Cofactor => signature_cofactor(s),
        Method::Graph => signature_graph(s),
    }
}

/// Default largest rank accepted by [`census_bruteforce`].
pub const DEFAULT_CENSUS_CAP: usize = 8;

#[derive(Debug, Clone, Copy)]
pub struct CensusOptions {
    pub method: Method,
    /// 0 means every available core.
    pub workers: usize,
    pub cap: usize,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions {
            method: Method::Graph,
            workers: 0,
            cap: DEFAULT_CENSUS_CAP,
        }
    }
}

/// Counts of signatures over all `(n+1)`-subsets of distinct positive roots.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureCensus {
    pub n: usize,
    /// Nonzero signatures only.
    pub counts: BTreeMap<Signature, u64>,
    /// Subsets with signature `{0,0}`.
    pub degenerate: u64,
}

impl SignatureCensus {
    pub fn get(&self, a: usize, b: usize) -> u64 {
        self.counts.get(&Signature::new(a, b)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> u64 {
        self.counts.values().sum::<u64>() + self.degenerate
    }

    pub fn table(&self) -> SignatureTable {
        let mut entries: Vec<(Signature, BigInt)> = valid_pairs(self.n)
            .into_iter()
            .map(|s| (s, BigInt::from(self.get(s.a, s.b))))
            .collect();
        // anything outside the valid range would be a bug, but keep it visible
        for (s, &c) in &self.counts {
            if !entries.iter().any(|(t, _)| t == s) {
                entries.push((*s, BigInt::from(c)));
            }
        }
        SignatureTable {
            n: self.n,
            entries,
            degenerate: BigInt::from(self.degenerate),
        }
    }
}

/// All `{a,b}` with `1 <= a <= b` and `a + b <= n + 1`, row by row.
pub fn valid_pairs(n: usize) -> Vec<Signature> {
    let mut out = Vec::new();
    for a in 1..=n + 1 {
        for b in a..=n + 1 {
            if a + b <= n + 1 {
                out.push(Signature { a, b });
            }
        }
    }
    out
}

/// Exhaustive census over all `C(n(n+1)/2, n+1)` subsets, lexicographic in
/// root index and split into blocks by smallest root index.
pub fn census_bruteforce(n: usize, opts: &CensusOptions) -> Result<SignatureCensus> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if n > opts.cap {
        return Err(Error::CapExceeded {
            what: "census rank n",
            value: n as u64,
            cap: opts.cap as u64,
            hint: " (raise it with --cap-override)",
        });
    }
    let roots = positive_roots(n)?;
    let k = n + 1;
    let slots = k + 1;

    #[derive(Clone)]
    struct Tally {
        grid: Vec<u64>,
        degenerate: u64,
    }

    let edges: Vec<(usize, usize)> = roots.iter().map(|r| (r.i(), r.j())).collect();
    let coeffs: Vec<Vec<i64>> = roots.iter().map(|r| r.coefficients(n)).collect();
    let method = opts.method;

    let parts = fold_combinations(
        roots.len(),
        k,
        opts.workers,
        || {
            (
                Tally {
                    grid: vec![0; slots * slots],
                    degenerate: 0,
                },
                GraphScratch::new(n + 1),
                Vec::with_capacity(k),
                Vec::with_capacity(k),
            )
        },
        |(tally, scratch, chosen_edges, chosen_cols), combo| {
            let sig = match method {
                Method::Graph => {
                    chosen_edges.clear();
                    chosen_edges.extend(combo.iter().map(|&c| edges[c]));
                    scratch.signature(chosen_edges)
                }
                Method::Cofactor => {
                    chosen_cols.clear();
                    chosen_cols.extend(combo.iter().map(|&c| coeffs[c].clone()));
                    cofactor_kernel(chosen_cols, n)
                }
            };
            if sig.is_degenerate() {
                tally.degenerate += 1;
            } else {
                tally.grid[sig.a * slots + sig.b] += 1;
            }
        },
    );

    let mut grid = vec![0u64; slots * slots];
    let mut degenerate = 0;
    for (t, ..) in parts {
        for (g, v) in grid.iter_mut().zip(&t.grid) {
            *g += v;
        }
        degenerate += t.degenerate;
    }
    let mut counts = BTreeMap::new();
    for a in 0..slots {
        for b in a..slots {
            let c = grid[a * slots + b];
            if c > 0 {
                counts.insert(Signature { a, b }, c);
            }
        }
    }
    let census = SignatureCensus {
        n,
        counts,
        degenerate,
    };
    debug_assert_eq!(
        census.total(),
        binomial_u64(root_count(n) as u64, (n + 1) as u64)
    );
    Ok(census)
}

/// Closed-form count of `(n+1)`-subsets with signature `{a,b}`.
///
/// With `u = (n+1)^(n+1-a-b) C(n, a+b-1) ⟨a+b-1, a-1⟩` the count is `u` for
/// `a < b`, `u/2` for `a = b > 1` and 0 for `a = b = 1`. The pair is
/// unordered; pairs outside `1 <= a, a + b <= n + 1` give 0.
pub fn s_formula(n: usize, a: usize, b: usize) -> BigInt {
    let (a, b) = (a.min(b), a.max(b));
    if a == 0 || a + b > n + 1 {
        return BigInt::zero();
    }
    if a == 1 && b == 1 {
        return BigInt::zero();
    }
    let len = a + b;
    let u = BigInt::from(n + 1).pow((n + 1 - len) as u32)
        * binomial(n as i64, (len - 1) as i64)
        * eulerian(len - 1, a - 1);
    if a == b {
        u / 2
    } else {
        u
    }
}

/// Ordered list of `s_{a,b}` values plus the `{0,0}` count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignatureTable {
    pub n: usize,
    pub entries: Vec<(Signature, BigInt)>,
    pub degenerate: BigInt,
}

impl SignatureTable {
    /// The closed-form table; the degenerate count is whatever the
    /// nonzero signatures leave of `C(n(n+1)/2, n+1)`.
    pub fn from_formula(n: usize) -> Self {
        let entries: Vec<(Signature, BigInt)> = valid_pairs(n)
            .into_iter()
            .map(|s| (s, s_formula(n, s.a, s.b)))
            .collect();
        let total = binomial(root_count(n) as i64, (n + 1) as i64);
        let nonzero: BigInt = entries.iter().map(|(_, v)| v).sum();
        SignatureTable {
            n,
            entries,
            degenerate: total - nonzero,
        }
    }

    pub fn get(&self, a: usize, b: usize) -> BigInt {
        let key = Signature::new(a, b);
        self.entries
            .iter()
            .find(|(s, _)| *s == key)
            .map(|(_, v)| v.clone())
            .unwrap_or_else(BigInt::zero)
    }

    /// `{"a,b": count, ..., "degenerate": count}` in row order.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (s, v) in &self.entries {
            m.insert(format!("{},{}", s.a, s.b), big_to_json(v));
        }
        m.insert("degenerate".into(), big_to_json(&self.degenerate));
        Value::Object(m)
    }

    /// Upper-triangular layout: row `a`, column `b`, blank outside
    /// `a <= b`, `a + b <= n + 1`.
    pub fn to_text(&self) -> String {
        let n = self.n;
        let cells: Vec<Vec<Option<String>>> = (1..=n + 1)
            .map(|a| {
                (1..=n + 1)
                    .map(|b| (b >= a && a + b <= n + 1).then(|| self.get(a, b).to_string()))
                    .collect()
            })
            .filter(|row: &Vec<Option<String>>| row.iter().any(Option::is_some))
            .collect();
        let ncols = n + 1;
        let widths: Vec<usize> = (0..ncols)
            .map(|c| {
                cells
                    .iter()
                    .filter_map(|row| row[c].as_ref().map(String::len))
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let mut out = String::new();
        for row in &cells {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if widths[c] == 0 {
                    continue;
                }
                if !line.is_empty() {
                    line.push(' ');
                }
                let s = cell.as_deref().unwrap_or("");
                line.push_str(&format!("{s:>w$}", w = widths[c]));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }
}

/// Default largest `n` for [`partition_identity_lhs`] (Bell(12) partitions).
pub const DEFAULT_PARTITION_CAP: usize = 12;

/// `Σ_λ x^{#λ} Π_{B∈λ} (#B)^{#B-1}` over all set partitions `λ` of `[n]`.
///
/// The empty set has one partition with no blocks, so `n = 0` gives 1.
pub fn partition_identity_lhs(n: usize, x: i64, cap: usize) -> Result<BigInt> {
    if n > cap {
        return Err(Error::CapExceeded {
            what: "partition size n",
            value: n as u64,
            cap: cap as u64,
            hint: "",
        });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let x = BigInt::from(x);
    // restricted growth strings: rgs[i] <= 1 + max(rgs[..i])
    let mut rgs = vec![0usize; n];
    let mut total = BigInt::zero();
    loop {
        let blocks = rgs.iter().max().map_or(0, |m| m + 1);
        let mut sizes = vec![0u32; blocks];
        for &b in &rgs {
            sizes[b] += 1;
        }
        let weight: BigInt = sizes.iter().map(|&s| BigInt::from(s).pow(s - 1)).product();
        total += x.pow(blocks as u32) * weight;

        let mut i = n - 1;
        loop {
            if i == 0 {
                return Ok(total);
            }
            let prefix_max = rgs[..i].iter().max().copied().unwrap_or(0);
            if rgs[i] <= prefix_max {
                rgs[i] += 1;
                for r in &mut rgs[i + 1..] {
                    *r = 0;
                }
                break;
            }
            i -= 1;
        }
    }
}

/// `x (x+n)^{n-1}`, with the value 1 at `n = 0`.
pub fn partition_identity_rhs(n: usize, x: i64) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    BigInt::from(x) * BigInt::from(x + n as i64).pow((n - 1) as u32)
}
