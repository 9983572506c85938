//! Sampled support functions: a compact convex set carried as its support
//! values on a fixed fan of unit directions.
//!
//! The represented set is the polyhedron `P = { y : <u_k, y> <= v_k }`. A
//! grid is *tight* when every stored value is the true support value of `P`;
//! all constructors here produce tight grids, so containment tests against a
//! grid and vertex enumeration of a grid are exact.

use crate::error::Error;
use super::polytope::{hull2, Point2, VPolytope2};

/// Default direction count for planar grids: 1 degree spacing.
pub const DEFAULT_DIRECTIONS: usize = 360;

const TIGHTEN_MAX_SWEEPS: usize = 1024;

/// Support samples of a nonempty compact convex set.
///
/// For `dim == 1` the directions are `{+1, -1}` and `values = [sup S, -inf S]`.
/// For `dim == 2` there are `M` directions `(cos(2 pi k / M), sin(2 pi k / M))`
/// with `M` a multiple of 4, so that reflections permute the fan and the axis
/// directions of boxes are represented exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct SupportGrid {
    dim: usize,
    values: Vec<f64>,
}

impl SupportGrid {
    /// Wraps raw support samples, tightening them to the induced polyhedron
    /// and rejecting inconsistent (empty) data.
    pub fn from_values(dim: usize, mut values: Vec<f64>) -> Result<Self, Error> {
        match dim {
            1 => {
                if values.len() != 2 {
                    return Err(Error::GridMismatch {
                        reason: format!("1-D grid needs exactly 2 values, got {}", values.len()),
                    });
                }
            }
            2 => {
                if values.len() < 4 || values.len() % 4 != 0 {
                    return Err(Error::GridMismatch {
                        reason: format!(
                            "2-D grid needs a multiple of 4 directions, got {}",
                            values.len()
                        ),
                    });
                }
            }
            d => return Err(Error::UnsupportedDimension { dim: d }),
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid_set("support values must be finite"));
        }
        tighten(dim, &mut values);
        let m = values.len();
        for k in 0..m / 2 {
            if values[k] + values[k + m / 2] < -1e-9 {
                return Err(Error::invalid_set(
                    "support values describe an empty polyhedron",
                ));
            }
        }
        Ok(SupportGrid { dim, values })
    }

    /// Exact support sampling of a box or polytope (tight by construction,
    /// since the sampled set realizes each value).
    pub(super) fn sample<F: Fn(&[f64]) -> f64>(dim: usize, m: usize, support: F) -> Self {
        let values = match dim {
            1 => vec![support(&[1.0]), support(&[-1.0])],
            _ => (0..m)
                .map(|k| {
                    let (s, c) = direction_angle(k, m).sin_cos();
                    support(&[c, s])
                })
                .collect(),
        };
        SupportGrid { dim, values }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn num_directions(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn direction(&self, k: usize) -> Vec<f64> {
        match self.dim {
            1 => vec![if k == 0 { 1.0 } else { -1.0 }],
            _ => {
                let (s, c) = direction_angle(k, self.values.len()).sin_cos();
                vec![c, s]
            }
        }
    }

    /// Support value in direction `u`; exact at grid directions, wedge
    /// interpolation (intersection of the two bracketing tangent lines)
    /// elsewhere.
    pub fn support(&self, u: &[f64]) -> f64 {
        if self.dim == 1 {
            return if u[0] >= 0.0 {
                u[0] * self.values[0]
            } else {
                -u[0] * self.values[1]
            };
        }
        let m = self.values.len();
        let phi = u[1].atan2(u[0]).rem_euclid(std::f64::consts::TAU);
        let step = std::f64::consts::TAU / m as f64;
        let k = ((phi / step).floor() as usize).min(m - 1);
        let frac = phi - k as f64 * step;
        if frac.abs() < 1e-12 {
            return self.values[k];
        }
        let p = self.crossing(k, (k + 1) % m);
        u[0] * p.x + u[1] * p.y
    }

    /// Vertex of the induced polyhedron where constraints `j` and `k` meet.
    fn crossing(&self, j: usize, k: usize) -> Point2 {
        let m = self.values.len();
        let (sj, cj) = direction_angle(j, m).sin_cos();
        let (sk, ck) = direction_angle(k, m).sin_cos();
        let det = cj * sk - sj * ck;
        let x = (self.values[j] * sk - self.values[k] * sj) / det;
        let y = (cj * self.values[k] - ck * self.values[j]) / det;
        Point2::new(x, y)
    }

    pub fn scale(&self, lambda: f64) -> Self {
        if lambda == 0.0 {
            return SupportGrid {
                dim: self.dim,
                values: vec![0.0; self.values.len()],
            };
        }
        let m = self.values.len();
        let values = if lambda > 0.0 {
            self.values.iter().map(|v| lambda * v).collect()
        } else {
            // h_{lambda S}(u) = |lambda| h_S(-u): reflection rotates the fan
            // by half a turn.
            (0..m)
                .map(|k| -lambda * self.values[(k + m / 2) % m])
                .collect()
        };
        SupportGrid {
            dim: self.dim,
            values,
        }
    }

    pub fn minkowski_sum(&self, other: &SupportGrid) -> Result<Self, Error> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: other.dim,
            });
        }
        if self.values.len() != other.values.len() {
            return Err(Error::GridMismatch {
                reason: format!(
                    "direction counts differ: {} vs {}",
                    self.values.len(),
                    other.values.len()
                ),
            });
        }
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| a + b)
            .collect();
        Ok(SupportGrid {
            dim: self.dim,
            values,
        })
    }

    pub fn translate(&self, t: &[f64]) -> Self {
        let m = self.values.len();
        let values = (0..m)
            .map(|k| {
                let u = self.direction(k);
                self.values[k] + u.iter().zip(t).map(|(a, b)| a * b).sum::<f64>()
            })
            .collect();
        SupportGrid {
            dim: self.dim,
            values,
        }
    }

    /// Discrete Steiner point: the support-weighted average of directions.
    /// Lies in the represented set (up to quadrature error) and is additive
    /// under Minkowski sums, which makes it a reproducible anchor choice.
    pub fn steiner_point(&self) -> Vec<f64> {
        match self.dim {
            1 => vec![0.5 * (self.values[0] - self.values[1])],
            _ => {
                let m = self.values.len();
                let mut s = [0.0f64; 2];
                for k in 0..m {
                    let u = self.direction(k);
                    s[0] += u[0] * self.values[k];
                    s[1] += u[1] * self.values[k];
                }
                vec![2.0 * s[0] / m as f64, 2.0 * s[1] / m as f64]
            }
        }
    }

    /// Maximum width over the sampled directions. Lower bound on the
    /// diameter; used as the diameter proxy for grid operands.
    pub fn width_max(&self) -> f64 {
        let m = self.values.len();
        (0..m / 2)
            .map(|k| self.values[k] + self.values[k + m / 2])
            .fold(0.0f64, f64::max)
    }

    /// Exact vertex enumeration of the induced polyhedron: consecutive
    /// constraint crossings, hulled. For tight grids every constraint is
    /// active, so this loses nothing.
    ///
    /// Several consecutive tangent lines through one polyhedron vertex yield
    /// a cluster of crossings that coincide up to rounding; clusters are
    /// merged to their mean so the hull does not keep microscopic vertices.
    pub fn to_poly2(&self) -> VPolytope2 {
        debug_assert_eq!(self.dim, 2);
        let m = self.values.len();
        let pts: Vec<Point2> = (0..m).map(|k| self.crossing(k, (k + 1) % m)).collect();
        let snap = 1e-9 * (1.0 + self.width_max());

        let mut clusters: Vec<Vec<Point2>> = Vec::new();
        for p in pts {
            match clusters.last_mut() {
                Some(c) if c[0].dist(p) <= snap => c.push(p),
                _ => clusters.push(vec![p]),
            }
        }
        // The fan wraps around: the last cluster may continue the first.
        if clusters.len() > 1 {
            let first = clusters[0][0];
            if clusters.last().unwrap()[0].dist(first) <= snap {
                let tail = clusters.pop().unwrap();
                clusters[0].extend(tail);
            }
        }
        let merged: Vec<Point2> = clusters
            .into_iter()
            .map(|c| {
                let n = c.len() as f64;
                let mut s = Point2::new(0.0, 0.0);
                for p in c {
                    s = s.add(p);
                }
                s.scale(1.0 / n)
            })
            .collect();
        hull2(&merged).expect("tight grid crossings are finite")
    }

    /// The 1-D polyhedron as an interval `[-v_minus, v_plus]`.
    pub fn to_interval(&self) -> (f64, f64) {
        debug_assert_eq!(self.dim, 1);
        (-self.values[1], self.values[0])
    }
}

fn direction_angle(k: usize, m: usize) -> f64 {
    std::f64::consts::TAU * k as f64 / m as f64
}

/// Shrinks raw support samples to the support function of the polyhedron
/// they induce. A value exceeding the cap set by its angular neighbours is
/// redundant (its halfplane does not touch the polyhedron) and is lowered to
/// the cap; sweeps repeat until the data is stable.
fn tighten(dim: usize, values: &mut [f64]) {
    if dim == 1 {
        return; // both constraints of a nonempty interval are always active
    }
    let m = values.len();
    let two_cos = 2.0 * (std::f64::consts::TAU / m as f64).cos();
    for _ in 0..TIGHTEN_MAX_SWEEPS {
        let mut changed = false;
        for k in 0..m {
            let cap = (values[(k + m - 1) % m] + values[(k + 1) % m]) / two_cos;
            if values[k] > cap {
                values[k] = cap;
                changed = true;
            }
        }
        if !changed {
            break;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square_grid(m: usize) -> SupportGrid {
        // Unit square [0,1]^2 sampled exactly.
        SupportGrid::sample(2, m, |u| u[0].max(0.0) + u[1].max(0.0))
    }

    #[test]
    fn sample_hits_axis_directions() {
        let g = square_grid(360);
        assert_eq!(g.values()[0], 1.0); // angle 0 is exact
        assert!((g.values()[90] - 1.0).abs() < 1e-15);
        assert!(g.values()[180].abs() < 1e-15);
        assert!(g.values()[270].abs() < 1e-15);
    }

    #[test]
    fn roundtrip_square_through_grid_is_exact() {
        let g = square_grid(360);
        let p = g.to_poly2();
        let verts = p.vertices();
        assert_eq!(verts.len(), 4, "vertices: {verts:?}");
        for (v, (x, y)) in verts.iter().zip([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]) {
            assert!((v.x - x).abs() < 1e-9 && (v.y - y).abs() < 1e-9, "{v:?}");
        }
    }

    #[test]
    fn steiner_point_of_singleton_recovers_it() {
        let g = SupportGrid::sample(2, 360, |u| 5.0 * u[0] - 3.0 * u[1]);
        let s = g.steiner_point();
        assert!((s[0] - 5.0).abs() < 1e-9 && (s[1] + 3.0).abs() < 1e-9, "{s:?}");
    }

    #[test]
    fn reflection_rotates_fan() {
        let g = square_grid(360);
        let r = g.scale(-1.0);
        assert_eq!(r.values()[180], 1.0);
        assert!(r.values()[0].abs() < 1e-15);
    }

    #[test]
    fn tighten_caps_redundant_constraint() {
        let mut values = vec![0.0; 360];
        // Tight samples of the unit disc...
        for v in values.iter_mut() {
            *v = 1.0;
        }
        // ...with one inflated, hence redundant, sample.
        values[17] = 1.5;
        let g = SupportGrid::from_values(2, values).unwrap();
        let cap = 1.0 / (std::f64::consts::TAU / 360.0).cos();
        assert!(g.values()[17] <= cap + 1e-12, "v17 = {}", g.values()[17]);
        // Neighbours stay put.
        assert_eq!(g.values()[16], 1.0);
        assert_eq!(g.values()[18], 1.0);
    }

    #[test]
    fn inconsistent_values_rejected() {
        // sup < inf in direction pair 0/180 after tightening.
        let mut values = vec![-10.0; 360];
        values[180] = -10.0;
        assert!(SupportGrid::from_values(2, values).is_err());
    }

    #[test]
    fn one_dimensional_grid_is_an_interval() {
        let g = SupportGrid::from_values(1, vec![3.0, -1.0]).unwrap();
        assert_eq!(g.to_interval(), (1.0, 3.0));
        assert_eq!(g.support(&[1.0]), 3.0);
        // h(-1) = -inf S
        assert_eq!(g.support(&[-1.0]), -1.0);
    }

    #[test]
    fn wedge_interpolation_matches_disc_support() {
        let g = SupportGrid::sample(2, 360, |_| 1.0); // unit disc samples
        let phi = 0.5f64.to_radians() + 1.0f64.to_radians() * 7.0; // between grid dirs
        let h = g.support(&[phi.cos(), phi.sin()]);
        let expected = 1.0 / (0.5f64.to_radians()).cos();
        assert!((h - expected).abs() < 1e-12, "h = {h}, expected {expected}");
    }
}
