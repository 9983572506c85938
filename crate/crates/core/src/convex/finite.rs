//! Finite, generally nonconvex point sets. Demo carrier for the laws where
//! convexity is the load-bearing hypothesis.

use crate::error::Error;

/// A nonempty finite set of distinct points in R^1 or R^2.
#[derive(Debug, Clone, PartialEq)]
pub struct FinitePointSet {
    points: Vec<Vec<f64>>,
}

impl FinitePointSet {
    pub fn new(points: Vec<Vec<f64>>) -> Result<Self, Error> {
        if points.is_empty() {
            return Err(Error::EmptyPointList);
        }
        let dim = points[0].len();
        if dim == 0 || dim > 2 {
            return Err(Error::UnsupportedDimension { dim });
        }
        for p in &points {
            if p.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: p.len(),
                });
            }
            if p.iter().any(|c| !c.is_finite()) {
                return Err(Error::invalid_set("point coordinates must be finite"));
            }
        }
        let mut deduped = points;
        deduped.sort_by(|a, b| {
            a.iter()
                .zip(b)
                .map(|(x, y)| x.total_cmp(y))
                .find(|o| o.is_ne())
                .unwrap_or(std::cmp::Ordering::Equal)
        });
        deduped.dedup();
        Ok(FinitePointSet { points: deduped })
    }

    pub fn from_scalars(xs: &[f64]) -> Result<Self, Error> {
        FinitePointSet::new(xs.iter().map(|x| vec![*x]).collect())
    }

    pub fn dim(&self) -> usize {
        self.points[0].len()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // constructor rejects empty input
    }

    pub fn points(&self) -> &[Vec<f64>] {
        &self.points
    }

    pub fn scale(&self, lambda: f64) -> Self {
        let points = self
            .points
            .iter()
            .map(|p| p.iter().map(|c| lambda * c).collect())
            .collect();
        FinitePointSet::new(points).expect("scaling keeps points finite")
    }

    /// Exhaustive Minkowski sum: all pairwise point sums.
    pub fn minkowski_sum(&self, other: &FinitePointSet) -> Result<Self, Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        let mut sums = Vec::with_capacity(self.len() * other.len());
        for a in &self.points {
            for b in &other.points {
                sums.push(a.iter().zip(b).map(|(x, y)| x + y).collect());
            }
        }
        FinitePointSet::new(sums)
    }

    fn dist_to(&self, p: &[f64]) -> f64 {
        self.points
            .iter()
            .map(|q| {
                q.iter()
                    .zip(p)
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt()
            })
            .fold(f64::INFINITY, f64::min)
    }

    /// True iff every point of `other` is within `tol` of some point of self.
    pub fn contains(&self, other: &FinitePointSet, tol: f64) -> bool {
        other.points.iter().all(|p| self.dist_to(p) <= tol)
    }

    /// Hausdorff distance by exhaustive enumeration.
    pub fn hausdorff(&self, other: &FinitePointSet) -> f64 {
        let d1 = self
            .points
            .iter()
            .map(|p| other.dist_to(p))
            .fold(0.0f64, f64::max);
        let d2 = other
            .points
            .iter()
            .map(|p| self.dist_to(p))
            .fold(0.0f64, f64::max);
        d1.max(d2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sums_enumerate_all_pairs() {
        let a = FinitePointSet::from_scalars(&[0.0, 1.0]).unwrap();
        let s = a.minkowski_sum(&a).unwrap();
        assert_eq!(s.points(), &[vec![0.0], vec![1.0], vec![2.0]]);
    }

    #[test]
    fn duplicates_are_collapsed() {
        let a = FinitePointSet::from_scalars(&[1.0, 1.0, 0.0]).unwrap();
        assert_eq!(a.len(), 2);
    }

    #[test]
    fn containment_and_hausdorff_by_enumeration() {
        let a = FinitePointSet::from_scalars(&[0.0, 1.0, 2.0]).unwrap();
        let b = FinitePointSet::from_scalars(&[0.0, 2.0]).unwrap();
        assert!(a.contains(&b, 0.0));
        assert!(!b.contains(&a, 0.0));
        assert_eq!(b.hausdorff(&a), 1.0);
    }
}
