//! Tutte and arithmetic Tutte evaluations at `(1,1)` of deformation cones.
//!
//! `T(1,1)` counts the bases of the column matroid and `T^arith(1,1)` sums
//! their arithmetic multiplicities `|det B|`. Both are computed by
//! exhaustive base enumeration and, for uniform windows `[l,m]`, by a
//! closed formula split along three kinds of base:
//!
//! 1. the base contains the cone column;
//! 2. no cone column, and two columns share a root part;
//! 3. no cone column, all root parts distinct (a unicyclic root graph).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde_json::{Map, Value};

use crate::combin::{binomial, fold_combinations};
use crate::deformation::DeformationMatrix;
use crate::error::{Error, Result};
use crate::json::big_to_json;
use crate::signature::{s_formula, valid_pairs};

/// Number of labelled trees on `n+1` vertices, `(n+1)^(n-1)`; this is the
/// number of independent `n`-subsets of `Φ+`.
pub fn delta(n: usize) -> BigInt {
    if n == 0 {
        return BigInt::one();
    }
    BigInt::from(n + 1).pow((n - 1) as u32)
}

/// Number of solutions of `y_1 + ... + y_n = k` with every `y_i` in
/// `1..=d`, by inclusion–exclusion.
pub fn tau(n: usize, k: i64, d: i64) -> BigInt {
    let nn = n as i64;
    if n == 0 {
        return if k == 0 {
            BigInt::one()
        } else {
            BigInt::zero()
        };
    }
    if d < 1 || k < nn || k > nn * d {
        return BigInt::zero();
    }
    let top = (k - nn) / d;
    let mut acc = BigInt::zero();
    for i in 0..=top {
        let term = binomial(nn, i) * binomial(k - i * d - 1, nn - 1);
        if i % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc
}

/// Number of `(x_1, ..., x_{a+b})` in `[l,m]^{a+b}` with
/// `|x_1 + ... + x_a − x_{a+1} − ... − x_{a+b}| = k`, for `k >= 1`.
pub fn abs_balance_count(a: usize, b: usize, k: i64, l: i64, m: i64) -> BigInt {
    if k < 1 || l > m {
        return BigInt::zero();
    }
    let d = m - l + 1;
    let (ai, bi) = (a as i64, b as i64);
    let k1 = k + ai * (1 - l) + bi * (m + 1);
    let k2 = k + bi * (1 - l) + ai * (m + 1);
    tau(a + b, k1, d) + tau(a + b, k2, d)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseCase {
    Cone = 1,
    Duplicate = 2,
    Unicyclic = 3,
}

impl BaseCase {
    pub fn number(self) -> usize {
        self as usize
    }
}

/// One base of a deformation matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseRecord {
    /// Sorted column indices, `n+1` of them.
    pub column_indices: Vec<usize>,
    /// `|det B|`.
    pub multiplicity: u64,
    pub case: BaseCase,
}

fn check_full_rank(m: &DeformationMatrix) -> Result<()> {
    let rank = m.matrix().rank();
    let rows = m.matrix().rows();
    if rank != rows {
        return Err(Error::RankDeficient { rank, rows });
    }
    Ok(())
}

struct BaseScanner {
    columns: Vec<Vec<i64>>,
    rows: usize,
    cone: usize,
}

impl BaseScanner {
    fn new(m: &DeformationMatrix) -> Self {
        BaseScanner {
            columns: m.matrix().columns(),
            rows: m.matrix().rows(),
            cone: m.cone_index(),
        }
    }

    fn classify(&self, combo: &[usize], buf: &mut Vec<Vec<i64>>) -> Option<(u64, BaseCase)> {
        buf.clear();
        buf.extend(combo.iter().map(|&c| self.columns[c].clone()));
        let m = crate::linalg::IntMatrix::from_columns(self.rows, buf).expect("square selection");
        let det = match m.determinant_i128() {
            Some(d) => d,
            None => {
                let d = m.determinant().expect("square");
                i128::try_from(d).expect("base multiplicity fits in i128")
            }
        };
        if det == 0 {
            return None;
        }
        let mult = u64::try_from(det.unsigned_abs()).expect("base multiplicity fits in u64");
        let n = self.rows - 1;
        let case = if combo.contains(&self.cone) {
            BaseCase::Cone
        } else {
            let dup = combo.iter().enumerate().any(|(x, &c)| {
                combo[x + 1..]
                    .iter()
                    .any(|&e| self.columns[c][..n] == self.columns[e][..n])
            });
            if dup {
                BaseCase::Duplicate
            } else {
                BaseCase::Unicyclic
            }
        };
        Some((mult, case))
    }
}

/// Every base, in lexicographic order of column indices.
pub fn enumerate_bases(m: &DeformationMatrix, workers: usize) -> Result<Vec<BaseRecord>> {
    check_full_rank(m)?;
    let scanner = BaseScanner::new(m);
    let parts = fold_combinations(
        m.column_count(),
        m.n() + 1,
        workers,
        || (Vec::new(), Vec::new()),
        |(out, buf): &mut (Vec<BaseRecord>, Vec<Vec<i64>>), combo| {
            if let Some((multiplicity, case)) = scanner.classify(combo, buf) {
                out.push(BaseRecord {
                    column_indices: combo.to_vec(),
                    multiplicity,
                    case,
                });
            }
        },
    );
    Ok(parts.into_iter().flat_map(|(v, _)| v).collect())
}

/// Base count and multiplicity sum of one case.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CaseTally {
    pub bases: BigInt,
    pub arith: BigInt,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// The formula with the cone-column term `δ_n`, as published.
    Paper,
    /// Cone-column term `δ_n d^n`: every tree edge also picks a shift.
    #[default]
    Corrected,
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(Mode::Paper),
            "corrected" => Ok(Mode::Corrected),
            _ => Err(Error::Parse {
                what: "mode",
                detail: format!("{s:?} is not one of paper, corrected"),
            }),
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Paper => "paper",
            Mode::Corrected => "corrected",
        })
    }
}

/// Where a [`TutteEval`] came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Source {
    Formula(Mode),
    Bruteforce,
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Source::Formula(m) => m.fmt(f),
            Source::Bruteforce => f.write_str("bruteforce"),
        }
    }
}

/// `(T(1,1), T^arith(1,1))` with the per-case split.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteEval {
    pub base_count: BigInt,
    pub arith_sum: BigInt,
    /// Indexed by case number minus one.
    pub cases: [CaseTally; 3],
    pub source: Source,
}

impl TutteEval {
    fn from_cases(cases: [CaseTally; 3], source: Source) -> Self {
        TutteEval {
            base_count: cases.iter().map(|c| &c.bases).sum(),
            arith_sum: cases.iter().map(|c| &c.arith).sum(),
            cases,
            source,
        }
    }

    pub fn case(&self, case: BaseCase) -> &CaseTally {
        &self.cases[case.number() - 1]
    }

    /// Same values, ignoring where they came from.
    pub fn same_values(&self, other: &TutteEval) -> bool {
        self.base_count == other.base_count
            && self.arith_sum == other.arith_sum
            && self.cases == other.cases
    }

    pub fn to_json(&self) -> Value {
        let mut cases = Map::new();
        for (i, c) in self.cases.iter().enumerate() {
            let mut tally = Map::new();
            tally.insert("bases".into(), big_to_json(&c.bases));
            tally.insert("arith".into(), big_to_json(&c.arith));
            cases.insert((i + 1).to_string(), Value::Object(tally));
        }
        let mut m = Map::new();
        m.insert("t11".into(), big_to_json(&self.base_count));
        m.insert("arith11".into(), big_to_json(&self.arith_sum));
        m.insert("cases".into(), Value::Object(cases));
        m.insert("mode".into(), Value::String(self.source.to_string()));
        Value::Object(m)
    }
}

/// Exhaustive evaluation over all `(n+1)`-subsets of columns.
pub fn tutte11_bruteforce(m: &DeformationMatrix, workers: usize) -> Result<TutteEval> {
    check_full_rank(m)?;
    let scanner = BaseScanner::new(m);
    let parts = fold_combinations(
        m.column_count(),
        m.n() + 1,
        workers,
        || ([(0u64, 0u64); 3], Vec::new()),
        |(tally, buf): &mut ([(u64, u64); 3], Vec<Vec<i64>>), combo| {
            if let Some((mult, case)) = scanner.classify(combo, buf) {
                let t = &mut tally[case.number() - 1];
                t.0 += 1;
                t.1 += mult;
            }
        },
    );
    let mut cases: [CaseTally; 3] = Default::default();
    for (tally, _) in parts {
        for (c, (b, a)) in cases.iter_mut().zip(tally) {
            c.bases += b;
            c.arith += a;
        }
    }
    Ok(TutteEval::from_cases(cases, Source::Bruteforce))
}

/// Closed-form evaluation for the uniform window `[l, m]`, `|l| <= m`.
///
/// With `d = m − l + 1`:
/// - cone bases: a spanning tree plus one shift per tree edge,
///   `δ_n d^n` (or `δ_n` in [`Mode::Paper`]), each of multiplicity 1;
/// - duplicate bases: `n δ_n d^(n-1) Σ_{k=1}^{m-l} (d−k)`, multiplicity `k`;
/// - unicyclic bases: `Σ_{a,b} d^(n+1-a-b) s_{a,b} Σ_{k=1}^{mn-l} N_{a,b}(k)`
///   with `N_{a,b}(k)` from [`abs_balance_count`], multiplicity `k`.
pub fn tutte11_formula(n: usize, l: i64, m: i64, mode: Mode) -> Result<TutteEval> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if l.abs() > m {
        return Err(Error::Hypothesis(format!(
            "need |l| <= m, got l = {l}, m = {m}"
        )));
    }
    let d = m - l + 1;
    let dn = BigInt::from(d);
    let nn = n as i64;
    let delta_n = delta(n);

    let cone = match mode {
        Mode::Paper => delta_n.clone(),
        Mode::Corrected => &delta_n * dn.pow(n as u32),
    };
    let case1 = CaseTally {
        bases: cone.clone(),
        arith: cone,
    };

    let dup_factor = BigInt::from(n) * &delta_n * dn.pow((n - 1) as u32);
    let mut case2 = CaseTally::default();
    for k in 1..=(m - l) {
        case2.bases += &dup_factor * (d - k);
        case2.arith += &dup_factor * (d - k) * k;
    }

    let mut case3 = CaseTally::default();
    for sig in valid_pairs(n) {
        let (a, b) = (sig.a(), sig.b());
        let s = s_formula(n, a, b);
        if s.is_zero() {
            continue;
        }
        let weight = dn.pow((n + 1 - a - b) as u32) * s;
        for k in 1..=(m * nn - l) {
            let count = abs_balance_count(a, b, k, l, m);
            case3.bases += &weight * &count;
            case3.arith += &weight * count * k;
        }
    }

    Ok(TutteEval::from_cases(
        [case1, case2, case3],
        Source::Formula(mode),
    ))
}
