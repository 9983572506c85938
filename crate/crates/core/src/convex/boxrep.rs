//! Axis-aligned interval boxes in R^1 and R^2.

use crate::error::Error;
use super::polytope::{Point2, VPolytope2};

/// A nonempty compact box `[lo_1, hi_1] x ... x [lo_d, hi_d]`, d in {1, 2}.
#[derive(Debug, Clone, PartialEq)]
pub struct IntervalBox {
    lo: Vec<f64>,
    hi: Vec<f64>,
}

impl IntervalBox {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>) -> Result<Self, Error> {
        if lo.len() != hi.len() {
            return Err(Error::DimensionMismatch {
                expected: lo.len(),
                got: hi.len(),
            });
        }
        if lo.is_empty() || lo.len() > 2 {
            return Err(Error::UnsupportedDimension { dim: lo.len() });
        }
        for i in 0..lo.len() {
            if !lo[i].is_finite() || !hi[i].is_finite() {
                return Err(Error::invalid_set("box endpoints must be finite"));
            }
            if lo[i] > hi[i] {
                return Err(Error::invalid_set(format!(
                    "box is empty in coordinate {i}: lo {} > hi {}",
                    lo[i], hi[i]
                )));
            }
        }
        Ok(IntervalBox { lo, hi })
    }

    /// The 1-D interval `[lo, hi]`.
    pub fn interval(lo: f64, hi: f64) -> Result<Self, Error> {
        IntervalBox::new(vec![lo], vec![hi])
    }

    pub fn singleton(coords: &[f64]) -> Result<Self, Error> {
        IntervalBox::new(coords.to_vec(), coords.to_vec())
    }

    pub fn dim(&self) -> usize {
        self.lo.len()
    }

    pub fn lo(&self) -> &[f64] {
        &self.lo
    }

    pub fn hi(&self) -> &[f64] {
        &self.hi
    }

    pub fn support(&self, u: &[f64]) -> f64 {
        (0..self.dim())
            .map(|i| (u[i] * self.lo[i]).max(u[i] * self.hi[i]))
            .sum()
    }

    pub fn scale(&self, lambda: f64) -> Self {
        let (lo, hi): (Vec<f64>, Vec<f64>) = if lambda >= 0.0 {
            (
                self.lo.iter().map(|v| lambda * v).collect(),
                self.hi.iter().map(|v| lambda * v).collect(),
            )
        } else {
            (
                self.hi.iter().map(|v| lambda * v).collect(),
                self.lo.iter().map(|v| lambda * v).collect(),
            )
        };
        IntervalBox { lo, hi }
    }

    pub fn minkowski_sum(&self, other: &IntervalBox) -> Self {
        let lo = self
            .lo
            .iter()
            .zip(&other.lo)
            .map(|(a, b)| a + b)
            .collect();
        let hi = self
            .hi
            .iter()
            .zip(&other.hi)
            .map(|(a, b)| a + b)
            .collect();
        IntervalBox { lo, hi }
    }

    pub fn translate(&self, t: &[f64]) -> Self {
        IntervalBox {
            lo: self.lo.iter().zip(t).map(|(v, s)| v + s).collect(),
            hi: self.hi.iter().zip(t).map(|(v, s)| v + s).collect(),
        }
    }

    /// Corner points; 2 for an interval, 4 for a planar box.
    pub fn corners(&self) -> Vec<Vec<f64>> {
        match self.dim() {
            1 => vec![vec![self.lo[0]], vec![self.hi[0]]],
            _ => vec![
                vec![self.lo[0], self.lo[1]],
                vec![self.hi[0], self.lo[1]],
                vec![self.hi[0], self.hi[1]],
                vec![self.lo[0], self.hi[1]],
            ],
        }
    }

    pub fn centroid(&self) -> Vec<f64> {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| 0.5 * (l + h))
            .collect()
    }

    pub fn diam(&self) -> f64 {
        self.lo
            .iter()
            .zip(&self.hi)
            .map(|(l, h)| (h - l) * (h - l))
            .sum::<f64>()
            .sqrt()
    }

    pub fn dist_point(&self, p: &[f64]) -> f64 {
        (0..self.dim())
            .map(|i| {
                let c = p[i].clamp(self.lo[i], self.hi[i]);
                (p[i] - c) * (p[i] - c)
            })
            .sum::<f64>()
            .sqrt()
    }

    pub fn to_poly2(&self) -> VPolytope2 {
        debug_assert_eq!(self.dim(), 2);
        let pts: Vec<Point2> = self
            .corners()
            .into_iter()
            .map(|c| Point2::new(c[0], c[1]))
            .collect();
        VPolytope2::from_points(&pts).expect("box corners form a valid polytope")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_inverted_or_nonfinite_endpoints() {
        assert!(IntervalBox::interval(2.0, 1.0).is_err());
        assert!(IntervalBox::interval(0.0, f64::INFINITY).is_err());
        assert!(IntervalBox::new(vec![0.0, 0.0, 0.0], vec![1.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn support_of_unit_square() {
        let b = IntervalBox::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(b.support(&[1.0, 0.0]), 1.0);
        assert_eq!(b.support(&[-1.0, 0.0]), 0.0);
        let r = 1.0 / 2f64.sqrt();
        assert!((b.support(&[r, r]) - 2.0 * r).abs() < 1e-12);
    }

    #[test]
    fn scale_reflects_for_negative_factor() {
        let b = IntervalBox::interval(0.0, 2.0).unwrap();
        let r = b.scale(-1.0);
        assert_eq!(r.lo(), &[-2.0]);
        assert_eq!(r.hi(), &[0.0]);
    }

    #[test]
    fn interval_sum_adds_endpoints() {
        let a = IntervalBox::interval(0.0, 1.0).unwrap();
        let b = IntervalBox::interval(2.0, 5.0).unwrap();
        let s = a.minkowski_sum(&b);
        assert_eq!((s.lo()[0], s.hi()[0]), (2.0, 6.0));
    }

    #[test]
    fn distance_clamps_to_box() {
        let b = IntervalBox::new(vec![0.0, 0.0], vec![1.0, 1.0]).unwrap();
        assert_eq!(b.dist_point(&[0.5, 0.5]), 0.0);
        assert!((b.dist_point(&[2.0, 2.0]) - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn degenerate_box_to_poly() {
        let b = IntervalBox::new(vec![0.0, 1.0], vec![0.0, 3.0]).unwrap();
        let p = b.to_poly2();
        assert_eq!(p.vertices().len(), 2);
    }
}
