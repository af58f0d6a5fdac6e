//! Characteristic quasi-polynomials of integral arrangements.
//!
//! For an integer matrix with columns `c_j`, the count of
//! `z ∈ (Z/qZ)^rows` with `z · c_j ≢ 0 (mod q)` for every column is a
//! quasi-polynomial in `q`. Its minimum period is the lcm period: the lcm
//! over all nonempty column subsets of the largest elementary divisor.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde_json::{Map, Value};

use crate::combin::{lcm_up_to, run_blocks};
use crate::deformation::{DeformationMatrix, DeformationSpec};
use crate::error::{Error, Result};
use crate::json::big_to_json;
use crate::linalg::IntMatrix;
use crate::tutte::enumerate_bases;

/// `#{z ∈ Z_q^rows : z·c_j ≢ 0 (mod q) for all j}`.
pub fn complement_count(m: &IntMatrix, q: u64, workers: usize) -> u64 {
    let rhs = vec![0; m.cols()];
    count_points(m, &rhs, q, workers)
}

/// `#{z ∈ Z_q^rows : z·c_j ≢ b_j (mod q) for all j}`.
pub fn complement_count_affine(m: &IntMatrix, rhs: &[i64], q: u64, workers: usize) -> u64 {
    assert_eq!(rhs.len(), m.cols(), "one right-hand side per column");
    count_points(m, rhs, q, workers)
}

fn count_points(m: &IntMatrix, rhs: &[i64], q: u64, workers: usize) -> u64 {
    assert!(q >= 1, "q must be positive");
    let qi = q as i64;
    let rows = m.rows();
    let cols = m.cols();
    // coeff[r][j] = c_{r,j} mod q
    let coeff: Vec<Vec<u64>> = (0..rows)
        .map(|r| m.row(r).iter().map(|&v| v.rem_euclid(qi) as u64).collect())
        .collect();
    let target: Vec<u64> = rhs.iter().map(|&v| v.rem_euclid(qi) as u64).collect();

    // slice the leading coordinate
    let parts = run_blocks(q as usize, workers, |z0| {
        let mut acc: Vec<u64> = coeff[0].iter().map(|&c| (c * z0 as u64) % q).collect();
        if rows == 1 {
            return u64::from(acc.iter().zip(&target).all(|(v, t)| v != t));
        }
        let mut scratch = vec![vec![0u64; cols]; rows];
        descend(&coeff, &target, q, 1, &mut acc, &mut scratch)
    });
    parts.into_iter().sum()
}

/// Counts completions of the coordinates `level..` given the partial dot
/// products `acc`.
fn descend(
    coeff: &[Vec<u64>],
    target: &[u64],
    q: u64,
    level: usize,
    acc: &mut Vec<u64>,
    scratch: &mut Vec<Vec<u64>>,
) -> u64 {
    let last = level + 1 == coeff.len();
    let step = &coeff[level];
    let mut cur = std::mem::take(&mut scratch[level]);
    cur.clone_from(acc);
    let mut total = 0;
    for _ in 0..q {
        if last {
            if cur.iter().zip(target).all(|(v, t)| v != t) {
                total += 1;
            }
        } else {
            total += descend(coeff, target, q, level + 1, &mut cur, scratch);
        }
        for (v, &s) in cur.iter_mut().zip(step) {
            *v += s;
            if *v >= q {
                *v -= q;
            }
        }
    }
    scratch[level] = cur;
    total
}

/// Default largest column count for [`lcm_period_exact`].
pub const DEFAULT_PERIOD_COLUMN_CAP: usize = 22;

/// `lcm` of the largest elementary divisor over all nonempty column
/// subsets.
pub fn lcm_period_exact(m: &IntMatrix, cap: usize, workers: usize) -> Result<BigInt> {
    let p = m.cols();
    if p > cap {
        return Err(Error::CapExceeded {
            what: "column count",
            value: p as u64,
            cap: cap as u64,
            hint: "; use the mu bound (period --no-exact) instead",
        });
    }
    if p == 0 {
        return Ok(BigInt::one());
    }
    let total: u64 = 1 << p;
    let chunks: u64 = 64.min(total);
    let per = total.div_ceil(chunks);
    let parts = run_blocks(chunks as usize, workers, |c| {
        let lo = (c as u64 * per).max(1);
        let hi = ((c as u64 + 1) * per).min(total);
        let mut acc = BigInt::one();
        let mut idx = Vec::with_capacity(p);
        for mask in lo..hi {
            idx.clear();
            idx.extend((0..p).filter(|&j| mask >> j & 1 == 1));
            if let Some(e) = m.select_columns(&idx).largest_elementary_divisor() {
                if !acc.is_multiple_of(&e) {
                    acc = acc.lcm(&e);
                }
            }
        }
        acc
    });
    Ok(parts.iter().fold(BigInt::one(), |a, b| a.lcm(b)))
}

/// `lcm` of the multiplicities of all bases, a period that the minimum
/// period divides.
pub fn mu_period_bound(m: &DeformationMatrix, workers: usize) -> Result<BigInt> {
    let bases = enumerate_bases(m, workers)?;
    Ok(bases.iter().fold(BigInt::one(), |acc, b| {
        acc.lcm(&BigInt::from(b.multiplicity))
    }))
}

/// `lcm{1, ..., mn − l}` for the `[l,m]` cone, under `|l| <= m` and
/// `m + 1 >= n l`.
pub fn period_formula(n: usize, l: i64, m: i64) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    if l.abs() > m {
        return Err(Error::Hypothesis(format!(
            "need |l| <= m, got l = {l}, m = {m}"
        )));
    }
    let nn = n as i64;
    if m + 1 < nn * l {
        return Err(Error::Hypothesis(format!(
            "need m + 1 >= n*l, got m + 1 = {} < n*l = {}",
            m + 1,
            nn * l
        )));
    }
    Ok(lcm_up_to(m * nn - l))
}

/// `lcm{1, ..., n}` for the Ish cone.
pub fn period_formula_ish(n: usize) -> Result<BigInt> {
    if n == 0 {
        return Err(Error::ZeroRank);
    }
    Ok(lcm_up_to(n as i64))
}

/// Period computations for one deformation, side by side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodReport {
    /// `None` when the column count is over the cap.
    pub rho_exact: Option<BigInt>,
    pub mu_bound: BigInt,
    /// `None` when no closed form applies.
    pub formula_value: Option<BigInt>,
    /// Why the closed form does not apply, if it does not.
    pub formula_note: Option<String>,
}

impl PeriodReport {
    pub fn rho_divides_mu(&self) -> Option<bool> {
        self.rho_exact
            .as_ref()
            .map(|r| self.mu_bound.is_multiple_of(r))
    }

    pub fn formula_agrees(&self) -> Option<bool> {
        let f = self.formula_value.as_ref()?;
        Some(match &self.rho_exact {
            Some(r) => r == f && &self.mu_bound == f,
            None => &self.mu_bound == f,
        })
    }

    /// True unless some computed value contradicts another.
    pub fn consistent(&self) -> bool {
        self.rho_divides_mu().unwrap_or(true) && self.formula_agrees().unwrap_or(true)
    }

    pub fn to_json(&self) -> Value {
        let opt = |v: &Option<BigInt>| v.as_ref().map_or(Value::Null, big_to_json);
        let flag = |v: Option<bool>| v.map_or(Value::Null, Value::Bool);
        let mut m = Map::new();
        m.insert("rho_exact".into(), opt(&self.rho_exact));
        m.insert("mu_bound".into(), big_to_json(&self.mu_bound));
        m.insert("formula".into(), opt(&self.formula_value));
        if let Some(note) = &self.formula_note {
            m.insert("formula_note".into(), Value::String(note.clone()));
        }
        m.insert("rho_divides_mu".into(), flag(self.rho_divides_mu()));
        m.insert("formula_agrees".into(), flag(self.formula_agrees()));
        Value::Object(m)
    }
}

/// Exact period (when under `cap`), mu bound and closed form for `spec`.
pub fn period_report(spec: &DeformationSpec, cap: usize, workers: usize) -> Result<PeriodReport> {
    let m = spec.build()?;
    let rho_exact = if m.column_count() <= cap {
        Some(lcm_period_exact(m.matrix(), cap, workers)?)
    } else {
        None
    };
    let mu_bound = mu_period_bound(&m, workers)?;
    let (formula_value, formula_note) = match spec {
        DeformationSpec::Ish { n } => (Some(period_formula_ish(*n)?), None),
        DeformationSpec::General { .. } => {
            (None, Some("no closed form for general shift sets".into()))
        }
        _ => {
            let (l, mm) = spec.window().expect("uniform family");
            match period_formula(spec.n(), l, mm) {
                Ok(v) => (Some(v), None),
                Err(e) => (None, Some(e.to_string())),
            }
        }
    };
    Ok(PeriodReport {
        rho_exact,
        mu_bound,
        formula_value,
        formula_note,
    })
}

/// A quasi-polynomial with integer constituents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiPolynomial {
    pub period: u64,
    /// Largest sampled `q` where a constituent disagreed with the count
    /// (0 if none did).
    pub q0: u64,
    /// `constituents[k-1]` governs `q ≡ k (mod period)`; coefficients in
    /// ascending degree.
    pub constituents: Vec<Vec<BigInt>>,
}

impl QuasiPolynomial {
    pub fn constituent(&self, q: u64) -> &[BigInt] {
        let k = ((q + self.period - 1) % self.period) as usize;
        &self.constituents[k]
    }

    pub fn evaluate(&self, q: u64) -> BigInt {
        eval_poly(self.constituent(q), &BigInt::from(q))
    }

    /// Smallest divisor of the period under which the constituents still
    /// agree class by class.
    pub fn minimum_period(&self) -> u64 {
        let rho = self.period;
        (1..=rho)
            .filter(|&d| rho.is_multiple_of(d))
            .find(|&d| {
                (0..rho as usize).all(|k| self.constituents[k] == self.constituents[k % d as usize])
            })
            .unwrap_or(rho)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("period".into(), self.period.into());
        m.insert("q0".into(), self.q0.into());
        m.insert(
            "constituents".into(),
            Value::Array(
                self.constituents
                    .iter()
                    .map(|c| Value::Array(c.iter().map(big_to_json).collect()))
                    .collect(),
            ),
        );
        Value::Object(m)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (k, c) in self.constituents.iter().enumerate() {
            let _ = writeln!(
                out,
                "q = {} (mod {}): {}",
                k + 1,
                self.period,
                format_poly(c, "q")
            );
        }
        let _ = writeln!(out, "q0 = {}", self.q0);
        out
    }
}

fn eval_poly(coeffs: &[BigInt], x: &BigInt) -> BigInt {
    coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Human-readable polynomial, highest degree first.
pub fn format_poly(coeffs: &[BigInt], var: &str) -> String {
    let mut out = String::new();
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mag = c.abs();
        if out.is_empty() {
            if c.is_negative() {
                out.push('-');
            }
        } else {
            out.push_str(if c.is_negative() { " - " } else { " + " });
        }
        let show_coeff = deg == 0 || !mag.is_one();
        if show_coeff {
            out.push_str(&mag.to_string());
        }
        match deg {
            0 => {}
            1 => out.push_str(var),
            _ => {
                let _ = write!(out, "{var}^{deg}");
            }
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Exact Lagrange interpolation; coefficients in ascending degree.
pub fn interpolate(points: &[(BigInt, BigInt)]) -> Vec<BigRational> {
    let n = points.len();
    let mut result = vec![BigRational::zero(); n];
    for (i, (xi, yi)) in points.iter().enumerate() {
        // basis polynomial Π_{j≠i} (t − x_j) / (x_i − x_j)
        let mut basis = vec![BigRational::one()];
        let mut denom = BigInt::one();
        for (j, (xj, _)) in points.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut next = vec![BigRational::zero(); basis.len() + 1];
            for (d, c) in basis.iter().enumerate() {
                next[d + 1] += c;
                next[d] -= c * BigRational::from_integer(xj.clone());
            }
            basis = next;
            denom *= xi - xj;
        }
        let scale = BigRational::new(yi.clone(), denom);
        for (r, b) in result.iter_mut().zip(&basis) {
            *r += b * &scale;
        }
    }
    result
}

/// Fits one integer polynomial per residue class mod `rho` through exact
/// counts for `q = 1..=q_max`.
///
/// Each class is interpolated through its largest `rows + 1` samples (the
/// constituents are monic of degree `rows`) and checked downward; `q0` is
/// the largest `q` where some constituent misses the count. Every class
/// must keep at least `rows + 2` agreeing samples above `q0`.
pub fn fit_quasipolynomial(
    m: &IntMatrix,
    rho: u64,
    q_max: u64,
    workers: usize,
) -> Result<QuasiPolynomial> {
    if rho == 0 {
        return Err(Error::Hypothesis("period must be positive".into()));
    }
    let degree = m.rows();
    let counts: Vec<BigInt> = (1..=q_max)
        .map(|q| BigInt::from(complement_count(m, q, workers)))
        .collect();
    fit_counts(&counts, degree, rho)
}

/// As [`fit_quasipolynomial`] for precomputed counts, `counts[q-1]`.
pub fn fit_counts(counts: &[BigInt], degree: usize, rho: u64) -> Result<QuasiPolynomial> {
    let q_max = counts.len() as u64;
    let mut constituents = Vec::with_capacity(rho as usize);
    let mut q0 = 0;
    for k in 1..=rho {
        let err = |detail: String| Error::Fit {
            residue: k,
            period: rho,
            detail,
        };
        let qs: Vec<u64> = (k..=q_max).step_by(rho as usize).collect();
        if qs.len() < degree + 2 {
            return Err(err(format!(
                "{} samples up to q = {q_max}, need at least {}; raise qmax",
                qs.len(),
                degree + 2
            )));
        }
        let top: Vec<(BigInt, BigInt)> = qs[qs.len() - degree - 1..]
            .iter()
            .map(|&q| (BigInt::from(q), counts[(q - 1) as usize].clone()))
            .collect();
        let fitted = interpolate(&top);
        let mut coeffs = Vec::with_capacity(fitted.len());
        for (deg, c) in fitted.iter().enumerate() {
            if !c.is_integer() {
                return Err(err(format!(
                    "coefficient of degree {deg} is {c}, not an integer; wrong period or q0 above qmax"
                )));
            }
            coeffs.push(c.to_integer());
        }
        if !coeffs[degree].is_one() {
            return Err(err(format!(
                "leading coefficient is {}, not 1; wrong period or q0 above qmax",
                coeffs[degree]
            )));
        }
        let miss = qs
            .iter()
            .rev()
            .find(|&&q| eval_poly(&coeffs, &BigInt::from(q)) != counts[(q - 1) as usize])
            .copied()
            .unwrap_or(0);
        let agreeing = qs.iter().filter(|&&q| q > miss).count();
        if agreeing < degree + 2 {
            return Err(err(format!(
                "only {agreeing} samples above q = {miss} agree, need {}; raise qmax",
                degree + 2
            )));
        }
        q0 = q0.max(miss);
        constituents.push(coeffs);
    }
    Ok(QuasiPolynomial {
        period: rho,
        q0,
        constituents,
    })
}

/// Converts a small exact value to `u64`, for periods used as loop bounds.
pub fn period_as_u64(v: &BigInt) -> Result<u64> {
    v.to_u64()
        .ok_or_else(|| Error::Hypothesis(format!("period {v} is too large to sample")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::deformation::{build_ish, build_uniform};

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn shi_a2_counts() {
        let d = build_uniform(2, 0, 1).unwrap();
        assert_eq!(complement_count(d.matrix(), 5, 1), 16);
        assert_eq!(complement_count(d.matrix(), 6, 2), 44);
        assert_eq!(complement_count(d.matrix(), 1, 1), 0);
    }

    #[test]
    fn counts_match_naive_loop() {
        let d = build_ish(2).unwrap();
        let m = d.matrix();
        for q in 1..=9u64 {
            let mut naive = 0;
            for a in 0..q as i64 {
                for b in 0..q as i64 {
                    for c in 0..q as i64 {
                        let z = [a, b, c];
                        let ok = m.columns().iter().all(|col| {
                            col.iter()
                                .zip(z)
                                .map(|(x, y)| x * y)
                                .sum::<i64>()
                                .rem_euclid(q as i64)
                                != 0
                        });
                        naive += u64::from(ok);
                    }
                }
            }
            assert_eq!(complement_count(m, q, 1), naive, "q = {q}");
        }
    }

    #[test]
    fn exact_periods() {
        let root_only = crate::deformation::build_general(2, &vec![vec![0]; 3]).unwrap();
        assert_eq!(
            lcm_period_exact(root_only.matrix(), 22, 1).unwrap(),
            BigInt::one()
        );
        let shi = build_uniform(2, 0, 1).unwrap();
        assert_eq!(
            lcm_period_exact(shi.matrix(), 22, 2).unwrap(),
            BigInt::from(2)
        );
        assert_eq!(mu_period_bound(&shi, 2).unwrap(), BigInt::from(2));
        assert_eq!(
            mu_period_bound(&build_ish(2).unwrap(), 1).unwrap(),
            BigInt::from(2)
        );
        let err = lcm_period_exact(shi.matrix(), 6, 1).unwrap_err();
        assert!(err.to_string().contains("mu bound"), "{err}");
    }

    #[test]
    fn formula_values_and_hypotheses() {
        assert_eq!(period_formula(2, 0, 1).unwrap(), BigInt::from(2));
        assert_eq!(period_formula(2, -1, 1).unwrap(), BigInt::from(6));
        assert_eq!(period_formula_ish(4).unwrap(), BigInt::from(12));
        let e = period_formula(2, -2, 1).unwrap_err();
        assert!(e.to_string().contains("|l| <= m"));
        // Linial [1,1] at n = 3: m + 1 = 2 < n l = 3
        let e = period_formula(3, 1, 1).unwrap_err();
        assert!(e.to_string().contains("m + 1 >= n*l"), "{e}");
    }

    #[test]
    fn interpolation_recovers_cubic() {
        // (q-1)(q-3)^2 = q^3 - 7q^2 + 15q - 9
        let pts: Vec<(BigInt, BigInt)> = [1i64, 3, 5, 7]
            .iter()
            .map(|&q| (BigInt::from(q), BigInt::from((q - 1) * (q - 3) * (q - 3))))
            .collect();
        let c = interpolate(&pts);
        let ints_c: Vec<BigInt> = c.iter().map(|r| r.to_integer()).collect();
        assert_eq!(ints_c, ints(&[-9, 15, -7, 1]));
    }

    #[test]
    fn fit_rejects_short_runs_and_wrong_periods() {
        let shi = build_uniform(2, 0, 1).unwrap();
        let e = fit_quasipolynomial(shi.matrix(), 2, 8, 1).unwrap_err();
        assert!(matches!(e, Error::Fit { .. }));
        // period 1 cannot fit the alternating counts
        let e = fit_quasipolynomial(shi.matrix(), 1, 20, 1).unwrap_err();
        assert!(
            matches!(
                e,
                Error::Fit {
                    residue: 1,
                    period: 1,
                    ..
                }
            ),
            "{e}"
        );
    }

    #[test]
    fn poly_formatting() {
        assert_eq!(
            format_poly(&ints(&[-9, 15, -7, 1]), "q"),
            "q^3 - 7q^2 + 15q - 9"
        );
        assert_eq!(format_poly(&ints(&[0, -1]), "t"), "-t");
        assert_eq!(format_poly(&ints(&[0]), "t"), "0");
    }
}
