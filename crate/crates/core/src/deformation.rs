//! Deformation matrices of `A_n` and the named cone families.
//!
//! Columns are ordered by root (lexicographic `(i,j)`), then by shift
//! ascending, with the cone column `(0, ..., 0, 1)` last.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::linalg::IntMatrix;
use crate::roots::{positive_roots, root_count, PositiveRoot};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Uniform,
    Shi,
    Catalan,
    Linial,
    Ish,
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "uniform" => Family::Uniform,
            "shi" => Family::Shi,
            "catalan" => Family::Catalan,
            "linial" => Family::Linial,
            "ish" => Family::Ish,
            _ => {
                return Err(Error::Parse {
                    what: "family",
                    detail: format!("{s:?} is not one of uniform, shi, catalan, linial, ish"),
                })
            }
        })
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Uniform => "uniform",
            Family::Shi => "shi",
            Family::Catalan => "catalan",
            Family::Linial => "linial",
            Family::Ish => "ish",
        })
    }
}

/// What to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DeformationSpec {
    /// Every root gets the shift window `[l, m]`.
    Uniform {
        n: usize,
        l: i64,
        m: i64,
    },
    /// `[1-m, m]`.
    Shi {
        n: usize,
        m: i64,
    },
    /// `[-m, m]`.
    Catalan {
        n: usize,
        m: i64,
    },
    /// `[1, m]`.
    Linial {
        n: usize,
        m: i64,
    },
    Ish {
        n: usize,
    },
    /// One shift set per positive root, in lexicographic root order.
    General {
        n: usize,
        sets: Vec<Vec<i64>>,
    },
}

impl DeformationSpec {
    /// Named family from the usual `(n, l, m)` parameters; `l` is only read
    /// for the uniform family and `m` is ignored for Ish.
    pub fn from_family(family: Family, n: usize, l: i64, m: i64) -> Self {
        match family {
            Family::Uniform => DeformationSpec::Uniform { n, l, m },
            Family::Shi => DeformationSpec::Shi { n, m },
            Family::Catalan => DeformationSpec::Catalan { n, m },
            Family::Linial => DeformationSpec::Linial { n, m },
            Family::Ish => DeformationSpec::Ish { n },
        }
    }

    pub fn n(&self) -> usize {
        match self {
            DeformationSpec::Uniform { n, .. }
            | DeformationSpec::Shi { n, .. }
            | DeformationSpec::Catalan { n, .. }
            | DeformationSpec::Linial { n, .. }
            | DeformationSpec::Ish { n }
            | DeformationSpec::General { n, .. } => *n,
        }
    }

    /// The uniform window `[l, m]`, if this is a uniform deformation.
    pub fn window(&self) -> Option<(i64, i64)> {
        match *self {
            DeformationSpec::Uniform { l, m, .. } => Some((l, m)),
            DeformationSpec::Shi { m, .. } => Some((1 - m, m)),
            DeformationSpec::Catalan { m, .. } => Some((-m, m)),
            DeformationSpec::Linial { m, .. } => Some((1, m)),
            _ => None,
        }
    }

    pub fn build(&self) -> Result<DeformationMatrix> {
        match self {
            DeformationSpec::Ish { n } => build_ish(*n),
            DeformationSpec::General { n, sets } => build_general(*n, sets),
            DeformationSpec::Shi { m, .. }
            | DeformationSpec::Catalan { m, .. }
            | DeformationSpec::Linial { m, .. }
                if *m < 1 =>
            {
                Err(Error::Hypothesis(format!(
                    "named families need m >= 1, got m = {m}"
                )))
            }
            _ => {
                let (l, m) = self.window().expect("uniform families have a window");
                build_uniform(self.n(), l, m)
            }
        }
    }
}

/// Label of one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ColumnLabel {
    /// `(root, -shift)`.
    Root {
        root: PositiveRoot,
        shift: i64,
    },
    Cone,
}

impl ColumnLabel {
    pub fn to_json(&self) -> Value {
        match self {
            ColumnLabel::Root { root, shift } => {
                json!({"root": [root.i(), root.j()], "shift": shift})
            }
            ColumnLabel::Cone => Value::String("cone".into()),
        }
    }
}

/// An `(n+1) x p` deformation matrix with labelled columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeformationMatrix {
    n: usize,
    matrix: IntMatrix,
    labels: Vec<ColumnLabel>,
}

impl DeformationMatrix {
    fn from_labels(n: usize, labels: Vec<ColumnLabel>) -> Self {
        let columns: Vec<Vec<i64>> = labels
            .iter()
            .map(|label| match label {
                ColumnLabel::Root { root, shift } => {
                    let mut c = root.coefficients(n);
                    c.push(-shift);
                    c
                }
                ColumnLabel::Cone => {
                    let mut c = vec![0; n];
                    c.push(1);
                    c
                }
            })
            .collect();
        let matrix = IntMatrix::from_columns(n + 1, &columns).expect("columns have n+1 entries");
        DeformationMatrix { n, matrix, labels }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn labels(&self) -> &[ColumnLabel] {
        &self.labels
    }

    pub fn column_count(&self) -> usize {
        self.matrix.cols()
    }

    pub fn cone_index(&self) -> usize {
        self.labels
            .iter()
            .position(|l| *l == ColumnLabel::Cone)
            .expect("every deformation has a cone column")
    }

    /// Whether each column has coprime entries.
    pub fn is_primitive(&self) -> bool {
        self.matrix
            .columns()
            .iter()
            .all(|c| c.iter().fold(0i64, |g, &v| g.gcd(&v)) == 1)
    }

    /// The non-central arrangement the cone was built from: the `n x (p-1)`
    /// root part and the right-hand sides `b_j`, one hyperplane
    /// `z · c_j = b_j` per non-cone column.
    pub fn affine_part(&self) -> (IntMatrix, Vec<i64>) {
        let cone = self.cone_index();
        let keep: Vec<usize> = (0..self.column_count()).filter(|&c| c != cone).collect();
        let sub = self.matrix.select_columns(&keep);
        let top = sub
            .select_rows(&(0..self.n).collect::<Vec<_>>())
            .expect("n >= 1");
        let rhs = sub.row(self.n).iter().map(|&v| -v).collect();
        (top, rhs)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("n".into(), self.n.into());
        m.insert("p".into(), self.column_count().into());
        m.insert("rows".into(), self.matrix.rows().into());
        m.insert("entries".into(), self.matrix.entries().to_vec().into());
        m.insert(
            "labels".into(),
            Value::Array(self.labels.iter().map(ColumnLabel::to_json).collect()),
        );
        Value::Object(m)
    }

    /// One line per matrix row.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for r in 0..self.matrix.rows() {
            let cells: Vec<String> = self.matrix.row(r).iter().map(ToString::to_string).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }
}

/// `A_n^{[l,m]}`.
pub fn build_uniform(n: usize, l: i64, m: i64) -> Result<DeformationMatrix> {
    if l > m {
        return Err(Error::Hypothesis(format!(
            "need l <= m, got l = {l} > m = {m}"
        )));
    }
    let sets = vec![(l..=m).collect::<Vec<_>>(); root_count(n)];
    build_general(n, &sets)
}

pub fn build_shi(n: usize, m: i64) -> Result<DeformationMatrix> {
    DeformationSpec::Shi { n, m }.build()
}

pub fn build_catalan(n: usize, m: i64) -> Result<DeformationMatrix> {
    DeformationSpec::Catalan { n, m }.build()
}

pub fn build_linial(n: usize, m: i64) -> Result<DeformationMatrix> {
    DeformationSpec::Linial { n, m }.build()
}

/// `A_n^E` for one shift set per root.
///
/// Sets are deduplicated and sorted. The Ish cone is not of this form: it
/// changes root parts, not shift sets.
pub fn build_general(n: usize, sets: &[Vec<i64>]) -> Result<DeformationMatrix> {
    let roots = positive_roots(n)?;
    if sets.len() != roots.len() {
        return Err(Error::ShiftSetCount {
            expected: roots.len(),
            got: sets.len(),
        });
    }
    let mut labels = Vec::new();
    for (root, set) in roots.iter().zip(sets) {
        if set.is_empty() {
            return Err(Error::EmptyShiftSet {
                root: root.to_string(),
            });
        }
        let mut xs = set.clone();
        xs.sort_unstable();
        xs.dedup();
        labels.extend(
            xs.into_iter()
                .map(|shift| ColumnLabel::Root { root: *root, shift }),
        );
    }
    labels.push(ColumnLabel::Cone);
    Ok(DeformationMatrix::from_labels(n, labels))
}

/// Cone over the Ish arrangement: the `[0,1]` deformation with each column
/// `(α_{i,j}, −1)` replaced in place by `(α_{1,j}, −i)`.
pub fn build_ish(n: usize) -> Result<DeformationMatrix> {
    let roots = positive_roots(n)?;
    let mut labels = Vec::with_capacity(2 * roots.len() + 1);
    for root in roots {
        labels.push(ColumnLabel::Root { root, shift: 0 });
        let head = PositiveRoot::new(1, root.j(), n)?;
        labels.push(ColumnLabel::Root {
            root: head,
            shift: root.i() as i64,
        });
    }
    labels.push(ColumnLabel::Cone);
    Ok(DeformationMatrix::from_labels(n, labels))
}
