//! Nonempty compact convex subsets of R^1 and R^2 under three
//! representations, with Minkowski arithmetic, inclusion tests and the
//! Hausdorff metric.
//!
//! Mixed-representation arithmetic coerces to the finer common carrier:
//! boxes meet polytopes as polytopes, and anything meets a support grid as a
//! support grid. Box/polytope paths are exact; grid paths are exact at the
//! sampled directions.

mod boxrep;
mod finite;
mod grid;
mod literal;
mod polytope;

pub use boxrep::IntervalBox;
pub use finite::FinitePointSet;
pub use grid::{SupportGrid, DEFAULT_DIRECTIONS};
pub use literal::SetLiteral;
pub use polytope::{dist_point_segment, hull2, orient, Point2, VPolytope2};

use crate::error::Error;

/// A point of R^1 or R^2, used both for domain arguments of set-valued maps
/// and for geometric witnesses.
#[derive(Debug, Clone, PartialEq)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, Error> {
        if coords.is_empty() || coords.len() > 2 {
            return Err(Error::UnsupportedDimension { dim: coords.len() });
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(Error::invalid_set("point coordinates must be finite"));
        }
        Ok(Point { coords })
    }

    pub fn zero(dim: usize) -> Self {
        Point {
            coords: vec![0.0; dim],
        }
    }

    pub fn scalar(x: f64) -> Self {
        Point { coords: vec![x] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn scale(&self, s: f64) -> Point {
        Point {
            coords: self.coords.iter().map(|c| s * c).collect(),
        }
    }

    pub fn add(&self, other: &Point) -> Point {
        Point {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn neg(&self) -> Point {
        self.scale(-1.0)
    }
}

impl std::fmt::Display for Point {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| format!("{c}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// A nonempty compact convex set in one of three carriers.
#[derive(Debug, Clone, PartialEq)]
pub enum ConvexSet {
    Box(IntervalBox),
    Poly(VPolytope2),
    Grid(SupportGrid),
}

impl From<IntervalBox> for ConvexSet {
    fn from(b: IntervalBox) -> Self {
        ConvexSet::Box(b)
    }
}

impl From<VPolytope2> for ConvexSet {
    fn from(p: VPolytope2) -> Self {
        ConvexSet::Poly(p)
    }
}

impl From<SupportGrid> for ConvexSet {
    fn from(g: SupportGrid) -> Self {
        ConvexSet::Grid(g)
    }
}

impl ConvexSet {
    /// The singleton `{coords}`.
    pub fn singleton(coords: &[f64]) -> Result<Self, Error> {
        Ok(ConvexSet::Box(IntervalBox::singleton(coords)?))
    }

    /// The singleton `{0}` in the given ambient dimension.
    pub fn origin(dim: usize) -> Result<Self, Error> {
        ConvexSet::singleton(&vec![0.0; dim])
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self, Error> {
        Ok(ConvexSet::Box(IntervalBox::interval(lo, hi)?))
    }

    pub fn dim(&self) -> usize {
        match self {
            ConvexSet::Box(b) => b.dim(),
            ConvexSet::Poly(_) => 2,
            ConvexSet::Grid(g) => g.dim(),
        }
    }

    /// Support value `sup { <u, y> : y in S }` for a unit direction `u`.
    pub fn support_value(&self, u: &[f64]) -> Result<f64, Error> {
        if u.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: u.len(),
            });
        }
        let norm = u.iter().map(|c| c * c).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::NonUnitDirection { norm });
        }
        Ok(self.support_unchecked(u))
    }

    fn support_unchecked(&self, u: &[f64]) -> f64 {
        match self {
            ConvexSet::Box(b) => b.support(u),
            ConvexSet::Poly(p) => p.support(Point2::new(u[0], u[1])),
            ConvexSet::Grid(g) => g.support(u),
        }
    }

    /// The scalar multiple `{lambda y : y in S}`; `lambda = 0` collapses to
    /// the singleton `{0}`, negative factors reflect.
    pub fn scale(&self, lambda: f64) -> ConvexSet {
        match self {
            ConvexSet::Box(b) => ConvexSet::Box(b.scale(lambda)),
            ConvexSet::Poly(p) => ConvexSet::Poly(p.scale(lambda)),
            ConvexSet::Grid(g) => ConvexSet::Grid(g.scale(lambda)),
        }
    }

    pub fn translate(&self, t: &[f64]) -> Result<ConvexSet, Error> {
        if t.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: t.len(),
            });
        }
        Ok(match self {
            ConvexSet::Box(b) => ConvexSet::Box(b.translate(t)),
            ConvexSet::Poly(p) => ConvexSet::Poly(p.translate(Point2::new(t[0], t[1]))),
            ConvexSet::Grid(g) => ConvexSet::Grid(g.translate(t)),
        })
    }

    /// Minkowski sum. Exact for box+box and for planar box/polytope
    /// combinations; when a support grid is involved both operands are
    /// sampled on its fan and the values add.
    pub fn minkowski_sum(&self, other: &ConvexSet) -> Result<ConvexSet, Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        match (self, other) {
            (ConvexSet::Grid(a), ConvexSet::Grid(b)) => Ok(ConvexSet::Grid(a.minkowski_sum(b)?)),
            (ConvexSet::Grid(g), b) => {
                let b = b.to_grid(g.num_directions());
                Ok(ConvexSet::Grid(g.minkowski_sum(&b)?))
            }
            (a, ConvexSet::Grid(g)) => {
                let a = a.to_grid(g.num_directions());
                Ok(ConvexSet::Grid(a.minkowski_sum(g)?))
            }
            (ConvexSet::Box(a), ConvexSet::Box(b)) => Ok(ConvexSet::Box(a.minkowski_sum(b))),
            (a, b) => {
                let (pa, pb) = (a.to_poly2(), b.to_poly2());
                Ok(ConvexSet::Poly(pa.minkowski_sum(&pb)))
            }
        }
    }

    /// How far `inner` sticks out of `self`: zero iff `inner` is contained.
    ///
    /// Against a grid the gap is the largest support violation over the fan
    /// (exact, since any operand's support is sampled exactly); against a box
    /// or polytope it is the largest Euclidean distance from a vertex of
    /// `inner` to `self`.
    pub fn inclusion_gap(&self, inner: &ConvexSet) -> Result<f64, Error> {
        if self.dim() != inner.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: inner.dim(),
            });
        }
        match self {
            ConvexSet::Grid(g) => {
                let m = g.num_directions();
                if let ConvexSet::Grid(h) = inner {
                    if h.num_directions() != m {
                        return Err(Error::GridMismatch {
                            reason: format!(
                                "direction counts differ: {} vs {}",
                                m,
                                h.num_directions()
                            ),
                        });
                    }
                }
                let mut gap = 0.0f64;
                for k in 0..m {
                    let u = g.direction(k);
                    gap = gap.max(inner.support_unchecked(&u) - g.values()[k]);
                }
                Ok(gap)
            }
            _ => {
                let mut gap = 0.0f64;
                for v in inner.vertex_points() {
                    gap = gap.max(self.dist_point(&v));
                }
                Ok(gap)
            }
        }
    }

    /// True iff `inner` is a subset of `self` within slack `tol`.
    pub fn contains(&self, inner: &ConvexSet, tol: f64) -> Result<bool, Error> {
        if tol < 0.0 {
            return Err(Error::invalid_parameter("tol", "must be nonnegative"));
        }
        Ok(self.inclusion_gap(inner)? <= tol)
    }

    /// Hausdorff distance. Exact for boxes and polytopes (maximised at
    /// extreme points); with a grid operand both sets are compared on the
    /// grid fan, the sup-metric of the sampled support functions.
    pub fn hausdorff(&self, other: &ConvexSet) -> Result<f64, Error> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                got: other.dim(),
            });
        }
        match (self, other) {
            (ConvexSet::Grid(a), ConvexSet::Grid(b)) => {
                if a.num_directions() != b.num_directions() {
                    return Err(Error::GridMismatch {
                        reason: format!(
                            "direction counts differ: {} vs {}",
                            a.num_directions(),
                            b.num_directions()
                        ),
                    });
                }
                Ok(a.values()
                    .iter()
                    .zip(b.values())
                    .map(|(x, y)| (x - y).abs())
                    .fold(0.0f64, f64::max))
            }
            (ConvexSet::Grid(g), b) => {
                let b = b.to_grid(g.num_directions());
                ConvexSet::Grid(g.clone()).hausdorff(&ConvexSet::Grid(b))
            }
            (a, ConvexSet::Grid(g)) => {
                let a = a.to_grid(g.num_directions());
                ConvexSet::Grid(a).hausdorff(other)
            }
            (a, b) => {
                let d1 = b
                    .vertex_points()
                    .into_iter()
                    .map(|v| a.dist_point(&v))
                    .fold(0.0f64, f64::max);
                let d2 = a
                    .vertex_points()
                    .into_iter()
                    .map(|v| b.dist_point(&v))
                    .fold(0.0f64, f64::max);
                Ok(d1.max(d2))
            }
        }
    }

    /// Euclidean distance from a point to the set (zero inside).
    pub fn dist_point(&self, p: &[f64]) -> f64 {
        match self {
            ConvexSet::Box(b) => b.dist_point(p),
            ConvexSet::Poly(poly) => poly.dist_point(Point2::new(p[0], p[1])),
            ConvexSet::Grid(g) => match g.dim() {
                1 => {
                    let (lo, hi) = g.to_interval();
                    (p[0] - p[0].clamp(lo, hi)).abs()
                }
                _ => g.to_poly2().dist_point(Point2::new(p[0], p[1])),
            },
        }
    }

    /// Extreme points: corners, vertices, or the exact vertex enumeration of
    /// a grid's polyhedron.
    pub fn vertex_points(&self) -> Vec<Vec<f64>> {
        match self {
            ConvexSet::Box(b) => b.corners(),
            ConvexSet::Poly(p) => p.vertices().iter().map(|v| vec![v.x, v.y]).collect(),
            ConvexSet::Grid(g) => match g.dim() {
                1 => {
                    let (lo, hi) = g.to_interval();
                    vec![vec![lo], vec![hi]]
                }
                _ => g
                    .to_poly2()
                    .vertices()
                    .iter()
                    .map(|v| vec![v.x, v.y])
                    .collect(),
            },
        }
    }

    pub fn diam(&self) -> f64 {
        match self {
            ConvexSet::Box(b) => b.diam(),
            ConvexSet::Poly(p) => p.diam(),
            ConvexSet::Grid(g) => g.width_max(),
        }
    }

    /// Deterministic representative point used as a normalisation anchor:
    /// centroid for boxes, vertex average for polytopes, discrete Steiner
    /// point for grids. Always lies in the set (up to grid quadrature).
    pub fn anchor_point(&self) -> Vec<f64> {
        match self {
            ConvexSet::Box(b) => b.centroid(),
            ConvexSet::Poly(p) => {
                let a = p.vertex_average();
                vec![a.x, a.y]
            }
            ConvexSet::Grid(g) => g.steiner_point(),
        }
    }

    /// Sample onto a support grid with `m` directions (planar case); a grid
    /// operand is passed through unchanged.
    pub fn to_grid(&self, m: usize) -> SupportGrid {
        match self {
            ConvexSet::Grid(g) => g.clone(),
            _ => SupportGrid::sample(self.dim(), m, |u| self.support_unchecked(u)),
        }
    }

    /// Planar sets as V-polytopes; exact for all three carriers.
    pub fn to_poly2(&self) -> VPolytope2 {
        debug_assert_eq!(self.dim(), 2);
        match self {
            ConvexSet::Box(b) => b.to_poly2(),
            ConvexSet::Poly(p) => p.clone(),
            ConvexSet::Grid(g) => g.to_poly2(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square(side: f64) -> ConvexSet {
        ConvexSet::Box(IntervalBox::new(vec![0.0, 0.0], vec![side, side]).unwrap())
    }

    fn triangle() -> ConvexSet {
        ConvexSet::Poly(
            VPolytope2::from_points(&[
                Point2::new(0.0, 0.0),
                Point2::new(1.0, 0.0),
                Point2::new(0.0, 1.0),
            ])
            .unwrap(),
        )
    }

    #[test]
    fn support_examples() {
        // Axis-aligned unit square.
        assert_eq!(square(1.0).support_value(&[1.0, 0.0]).unwrap(), 1.0);
        // Triangle along the diagonal.
        let r = 1.0 / 2f64.sqrt();
        let h = triangle().support_value(&[r, r]).unwrap();
        assert!((h - r).abs() < 1e-12);
        // Singleton support is linear.
        let s = ConvexSet::singleton(&[5.0, -3.0]).unwrap();
        for u in [[1.0, 0.0], [0.0, 1.0], [r, r], [-r, r]] {
            let h = s.support_value(&u).unwrap();
            assert!((h - (5.0 * u[0] - 3.0 * u[1])).abs() < 1e-12);
        }
    }

    #[test]
    fn support_rejects_non_unit_direction() {
        assert!(matches!(
            square(1.0).support_value(&[1.0, 1.0]),
            Err(Error::NonUnitDirection { .. })
        ));
    }

    #[test]
    fn scale_identity_annihilation_reflection() {
        let a = ConvexSet::interval(3.0, 7.0).unwrap();
        assert_eq!(a.scale(1.0), a);
        assert_eq!(a.scale(0.0), ConvexSet::singleton(&[0.0]).unwrap());
        let b = ConvexSet::interval(0.0, 2.0).unwrap();
        assert_eq!(b.scale(-1.0), ConvexSet::interval(-2.0, 0.0).unwrap());
    }

    #[test]
    fn sum_neutral_element_and_intervals() {
        let a = triangle();
        let zero = ConvexSet::origin(2).unwrap();
        let s = a.minkowski_sum(&zero).unwrap();
        assert!(s.hausdorff(&a).unwrap() <= 1e-12);

        let i = ConvexSet::interval(0.0, 1.0).unwrap();
        let j = ConvexSet::interval(2.0, 5.0).unwrap();
        assert_eq!(
            i.minkowski_sum(&j).unwrap(),
            ConvexSet::interval(2.0, 6.0).unwrap()
        );
    }

    #[test]
    fn sum_dimension_mismatch_errors() {
        let i = ConvexSet::interval(0.0, 1.0).unwrap();
        assert!(matches!(
            i.minkowski_sum(&square(1.0)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn contains_examples() {
        let a = square(2.0);
        assert!(a.contains(&a, 0.0).unwrap());
        let small = ConvexSet::interval(0.0, 1.0).unwrap();
        let big = ConvexSet::interval(0.0, 2.0).unwrap();
        assert!(big.contains(&small, 0.0).unwrap());
        assert!(!small.contains(&big, 0.0).unwrap());
        let h = ConvexSet::Poly(
            VPolytope2::from_points(&[Point2::new(1.0, 1.0), Point2::new(2.0, 0.0)]).unwrap(),
        );
        assert!(a.contains(&h, 0.0).unwrap());
    }

    #[test]
    fn hausdorff_examples() {
        let t = triangle();
        assert_eq!(t.hausdorff(&t).unwrap(), 0.0);
        let i = ConvexSet::interval(0.0, 1.0).unwrap();
        let j = ConvexSet::interval(2.0, 5.0).unwrap();
        assert_eq!(i.hausdorff(&j).unwrap(), 4.0);
        let d = square(1.0).hausdorff(&square(2.0)).unwrap();
        assert!((d - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn hausdorff_square_agrees_with_dense_direction_sampling() {
        // Independent oracle: sup over many directions of the support gap.
        let a = square(1.0);
        let b = square(2.0);
        let mut sup = 0.0f64;
        let n = 20_000;
        for k in 0..n {
            let phi = std::f64::consts::TAU * k as f64 / n as f64;
            let u = [phi.cos(), phi.sin()];
            let gap = (a.support_value(&u).unwrap() - b.support_value(&u).unwrap()).abs();
            sup = sup.max(gap);
        }
        let d = a.hausdorff(&b).unwrap();
        assert!((d - sup).abs() < 1e-6, "vertex {d} vs sampled {sup}");
    }

    #[test]
    fn grid_coercion_paths() {
        let t = triangle();
        let g = ConvexSet::Grid(t.to_grid(360));
        // Sum against a grid lands on the grid carrier.
        let s = g.minkowski_sum(&square(1.0)).unwrap();
        assert!(matches!(s, ConvexSet::Grid(_)));
        // Grid roundtrip stays close to the original triangle.
        let back = ConvexSet::Poly(t.to_grid(360).to_poly2());
        assert!(t.hausdorff(&back).unwrap() < 1e-2);
        // Containment against a grid is exact: the triangle fits its grid.
        assert!(g.contains(&t, 1e-12).unwrap());
        assert!(t.contains(&back, 1e-2).unwrap());
    }
}
