//! Finite metric spaces with exact rational distances.

use std::fmt;

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{ensure_positive, Rational};

/// A labeled finite point set with a full symmetric distance matrix.
///
/// Construction only checks the structure (square matrix, distinct labels,
/// nonnegative entries). Whether the matrix is actually a metric is reported by
/// [`FiniteMetricSpace::validate`]; spaces produced by the extension operations are
/// metric by construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteMetricSpace {
    labels: Vec<String>,
    rows: Vec<Vec<Rational>>,
}

/// A metric axiom failure together with the points that witness it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    Asymmetric {
        i: usize,
        j: usize,
    },
    NonzeroDiagonal {
        i: usize,
    },
    ZeroOffDiagonal {
        i: usize,
        j: usize,
    },
    /// `d(i,k) > d(i,j) + d(j,k)`.
    Triangle {
        i: usize,
        j: usize,
        k: usize,
    },
}

/// Result of [`FiniteMetricSpace::validate`]: empty iff the space is metric.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// Human readable lines, one per violation, using the space's labels.
    pub fn describe(&self, space: &FiniteMetricSpace) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| match *v {
                Violation::Asymmetric { i, j } => format!(
                    "symmetry ({}, {}): {} != {}",
                    space.label(i),
                    space.label(j),
                    space.dist(i, j),
                    space.dist(j, i)
                ),
                Violation::NonzeroDiagonal { i } => {
                    format!("identity ({}): d = {}", space.label(i), space.dist(i, i))
                }
                Violation::ZeroOffDiagonal { i, j } => {
                    format!("identity ({}, {}): d = 0", space.label(i), space.label(j))
                }
                Violation::Triangle { i, j, k } => format!(
                    "triangle ({}, {}, {}): {} > {} + {}",
                    space.label(i),
                    space.label(j),
                    space.label(k),
                    space.dist(i, k),
                    space.dist(i, j),
                    space.dist(j, k)
                ),
            })
            .collect()
    }
}

impl FiniteMetricSpace {
    /// Builds a space from labels and a full matrix.
    pub fn new(labels: Vec<String>, rows: Vec<Vec<Rational>>) -> Result<Self> {
        if rows.len() != labels.len() {
            return Err(Error::Structural(format!(
                "{} labels but {} rows",
                labels.len(),
                rows.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != labels.len() {
                return Err(Error::Structural(format!(
                    "row {i} has {} entries, expected {}",
                    row.len(),
                    labels.len()
                )));
            }
            if let Some(v) = row.iter().find(|v| v.is_negative()) {
                return Err(Error::Structural(format!("row {i} has negative entry {v}")));
            }
        }
        for (i, l) in labels.iter().enumerate() {
            if labels[..i].contains(l) {
                return Err(Error::Structural(format!("duplicate label {l:?}")));
            }
            if l.is_empty() || l.chars().any(char::is_whitespace) {
                return Err(Error::Structural(format!("invalid label {l:?}")));
            }
        }
        Ok(FiniteMetricSpace { labels, rows })
    }

    /// The one-point space.
    pub fn singleton(label: impl Into<String>) -> Self {
        FiniteMetricSpace {
            labels: vec![label.into()],
            rows: vec![vec![Rational::zero()]],
        }
    }

    /// Builds a space from a distance function over `n` labeled points.
    pub fn from_fn(
        labels: Vec<String>,
        mut dist: impl FnMut(usize, usize) -> Rational,
    ) -> Result<Self> {
        let n = labels.len();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { Rational::zero() } else { dist(i, j) })
                    .collect()
            })
            .collect();
        Self::new(labels, rows)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn dist(&self, i: usize, j: usize) -> &Rational {
        &self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.rows[i]
    }

    /// Largest pairwise distance (0 for fewer than two points).
    pub fn diameter(&self) -> Rational {
        self.rows
            .iter()
            .flat_map(|r| r.iter())
            .max()
            .cloned()
            .unwrap_or_else(Rational::zero)
    }

    /// Largest distance between two points of `subset`.
    pub fn subset_diameter(&self, subset: &[usize]) -> Rational {
        let mut best = Rational::zero();
        for &a in subset {
            for &b in subset {
                if self.rows[a][b] > best {
                    best = self.rows[a][b].clone();
                }
            }
        }
        best
    }

    /// A label not yet used in the space, of the form `{prefix}{k}`.
    pub fn fresh_label(&self, prefix: &str) -> String {
        (self.len()..)
            .map(|k| format!("{prefix}{k}"))
            .find(|l| self.index_of(l).is_none())
            .expect("unbounded search")
    }

    /// Appends a point with the given distances to the existing points.
    ///
    /// No metric check is done here; callers go through
    /// [`crate::amalgam::realize_point`] when they need one.
    pub(crate) fn push_point(&mut self, label: String, dists: Vec<Rational>) {
        debug_assert_eq!(dists.len(), self.len());
        for (row, d) in self.rows.iter_mut().zip(&dists) {
            row.push(d.clone());
        }
        let mut new_row = dists;
        new_row.push(Rational::zero());
        self.rows.push(new_row);
        self.labels.push(label);
    }

    /// The subspace on `points`, in the given order.
    pub fn restrict(&self, points: &[usize]) -> FiniteMetricSpace {
        FiniteMetricSpace {
            labels: points.iter().map(|&p| self.labels[p].clone()).collect(),
            rows: points
                .iter()
                .map(|&a| points.iter().map(|&b| self.rows[a][b].clone()).collect())
                .collect(),
        }
    }

    /// Checks every metric axiom exhaustively and lists all violations.
    pub fn validate(&self) -> ValidationReport {
        let n = self.len();
        let mut violations = Vec::new();
        for i in 0..n {
            if !self.rows[i][i].is_zero() {
                violations.push(Violation::NonzeroDiagonal { i });
            }
            for j in (i + 1)..n {
                if self.rows[i][j] != self.rows[j][i] {
                    violations.push(Violation::Asymmetric { i, j });
                }
                if self.rows[i][j].is_zero() {
                    violations.push(Violation::ZeroOffDiagonal { i, j });
                }
            }
        }
        for i in 0..n {
            for k in (i + 1)..n {
                for j in 0..n {
                    if j == i || j == k {
                        continue;
                    }
                    if self.rows[i][k] > &self.rows[i][j] + &self.rows[j][k] {
                        violations.push(Violation::Triangle { i, j, k });
                    }
                }
            }
        }
        ValidationReport { violations }
    }

    pub fn is_metric(&self) -> bool {
        self.validate().is_valid()
    }
}

impl fmt::Display for FiniteMetricSpace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::format::write_ums(self))
    }
}

/// An open ball `B(center, radius)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ball {
    pub center: usize,
    pub radius: Rational,
}

impl Ball {
    pub fn new(center: usize, radius: Rational) -> Result<Self> {
        ensure_positive(&radius, "ball radius")?;
        Ok(Ball { center, radius })
    }

    /// Strict membership.
    pub fn contains(&self, space: &FiniteMetricSpace, p: usize) -> bool {
        space.dist(self.center, p) < &self.radius
    }

    /// `r - d(p, center)`: positive exactly for points inside.
    pub fn depth(&self, space: &FiniteMetricSpace, p: usize) -> Rational {
        &self.radius - space.dist(self.center, p)
    }

    pub(crate) fn require_inside(
        &self,
        space: &FiniteMetricSpace,
        p: usize,
        what: &str,
    ) -> Result<()> {
        if self.contains(space, p) {
            Ok(())
        } else {
            Err(Error::pre(format!(
                "{what} {} is not strictly inside B({}, {}) (distance {})",
                space.label(p),
                space.label(self.center),
                self.radius,
                space.dist(self.center, p)
            )))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn labels(names: &[&str]) -> Vec<String> {
        names.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn singleton_is_valid() {
        assert!(FiniteMetricSpace::singleton("a").is_metric());
    }

    #[test]
    fn triangle_violation_is_reported_with_witness() {
        let d = [[0, 1, 3], [1, 0, 1], [3, 1, 0]];
        let space =
            FiniteMetricSpace::from_fn(labels(&["a", "b", "c"]), |i, j| int(d[i][j])).unwrap();
        let report = space.validate();
        assert_eq!(
            report.violations,
            vec![Violation::Triangle { i: 0, j: 1, k: 2 }]
        );
        assert_eq!(
            report.describe(&space),
            vec!["triangle (a, b, c): 3 > 1 + 1"]
        );
    }

    #[test]
    fn structural_errors() {
        let rows = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        assert!(matches!(
            FiniteMetricSpace::new(labels(&["a"]), rows.clone()),
            Err(Error::Structural(_))
        ));
        assert!(matches!(
            FiniteMetricSpace::new(labels(&["a", "a"]), rows),
            Err(Error::Structural(_))
        ));
    }

    #[test]
    fn asymmetry_and_zero_distance() {
        let rows = vec![vec![int(0), int(1)], vec![int(2), int(0)]];
        let space = FiniteMetricSpace::new(labels(&["a", "b"]), rows).unwrap();
        assert_eq!(
            space.validate().violations,
            vec![Violation::Asymmetric { i: 0, j: 1 }]
        );
        let rows = vec![vec![int(0), int(0)], vec![int(0), int(0)]];
        let space = FiniteMetricSpace::new(labels(&["a", "b"]), rows).unwrap();
        assert_eq!(
            space.validate().violations,
            vec![Violation::ZeroOffDiagonal { i: 0, j: 1 }]
        );
    }

    #[test]
    fn fresh_labels_do_not_collide() {
        let space = FiniteMetricSpace::from_fn(labels(&["y2", "b"]), |_, _| int(1)).unwrap();
        let l = space.fresh_label("y");
        assert!(space.index_of(&l).is_none());
    }
}
