//! 2-D V-polytopes: convex polygons stored as counter-clockwise vertex lists
//! in which every vertex is extreme.

use crate::error::Error;
/// A point in the plane. Vertex carrier for [`VPolytope2`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point2 {
    pub x: f64,
    pub y: f64,
}

impl Point2 {
    pub fn new(x: f64, y: f64) -> Self {
        Point2 { x, y }
    }

    pub fn dot(self, other: Point2) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn sub(self, other: Point2) -> Point2 {
        Point2::new(self.x - other.x, self.y - other.y)
    }

    pub fn add(self, other: Point2) -> Point2 {
        Point2::new(self.x + other.x, self.y + other.y)
    }

    pub fn scale(self, s: f64) -> Point2 {
        Point2::new(s * self.x, s * self.y)
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Point2) -> f64 {
        self.sub(other).norm()
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

/// Exact orientation sign of the triple (a, b, c): positive iff the triple
/// turns counter-clockwise, zero iff collinear.
pub fn orient(a: Point2, b: Point2, c: Point2) -> f64 {
    robust::orient2d(
        robust::Coord { x: a.x, y: a.y },
        robust::Coord { x: b.x, y: b.y },
        robust::Coord { x: c.x, y: c.y },
    )
}

/// Distance from `p` to the segment [a, b].
pub fn dist_point_segment(p: Point2, a: Point2, b: Point2) -> f64 {
    let ab = b.sub(a);
    let len2 = ab.dot(ab);
    if len2 == 0.0 {
        return p.dist(a);
    }
    let t = (p.sub(a).dot(ab) / len2).clamp(0.0, 1.0);
    p.dist(a.add(ab.scale(t)))
}

/// A nonempty compact convex polygon. Degenerate cases are allowed: a single
/// vertex is a point, two vertices a segment.
#[derive(Debug, Clone, PartialEq)]
pub struct VPolytope2 {
    vertices: Vec<Point2>,
}

impl VPolytope2 {
    /// Validating constructor: vertices must be finite, distinct, in CCW
    /// order starting at the lexicographically smallest, and all extreme.
    pub fn new(vertices: Vec<Point2>) -> Result<Self, Error> {
        let hull = hull2(&vertices)?;
        if hull.vertices != vertices {
            return Err(Error::invalid_set(
                "vertices must be the CCW extreme points starting at the lexicographic minimum",
            ));
        }
        Ok(hull)
    }

    /// Convex hull constructor; accepts any nonempty finite point cloud.
    pub fn from_points(points: &[Point2]) -> Result<Self, Error> {
        hull2(points)
    }

    pub fn vertices(&self) -> &[Point2] {
        &self.vertices
    }

    pub fn support(&self, u: Point2) -> f64 {
        self.vertices
            .iter()
            .map(|v| v.dot(u))
            .fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn scale(&self, lambda: f64) -> Self {
        if lambda == 0.0 {
            return VPolytope2 {
                vertices: vec![Point2::new(0.0, 0.0)],
            };
        }
        let scaled: Vec<Point2> = self.vertices.iter().map(|v| v.scale(lambda)).collect();
        // Reflection reverses orientation; re-hulling restores every invariant.
        hull2(&scaled).expect("scaling a valid polytope stays valid")
    }

    pub fn translate(&self, t: Point2) -> Self {
        let moved: Vec<Point2> = self.vertices.iter().map(|v| v.add(t)).collect();
        hull2(&moved).expect("translating a valid polytope stays valid")
    }

    /// Minkowski sum as the hull of all pairwise vertex sums. Exact, and at
    /// desk scale (tens of vertices) the O(nm log nm) cost is irrelevant.
    pub fn minkowski_sum(&self, other: &VPolytope2) -> Self {
        let mut sums = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                sums.push(a.add(*b));
            }
        }
        hull2(&sums).expect("pairwise sums of finite vertices are finite")
    }

    pub fn diam(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.dist(*b));
            }
        }
        d
    }

    /// Arithmetic mean of the vertices; lies in the polytope by convexity.
    pub fn vertex_average(&self) -> Point2 {
        let n = self.vertices.len() as f64;
        let mut s = Point2::new(0.0, 0.0);
        for v in &self.vertices {
            s = s.add(*v);
        }
        s.scale(1.0 / n)
    }

    /// Euclidean distance from a point to the polygon (zero inside).
    pub fn dist_point(&self, p: Point2) -> f64 {
        let n = self.vertices.len();
        match n {
            1 => p.dist(self.vertices[0]),
            2 => dist_point_segment(p, self.vertices[0], self.vertices[1]),
            _ => {
                let inside = (0..n).all(|i| {
                    orient(self.vertices[i], self.vertices[(i + 1) % n], p) >= 0.0
                });
                if inside {
                    return 0.0;
                }
                (0..n)
                    .map(|i| dist_point_segment(p, self.vertices[i], self.vertices[(i + 1) % n]))
                    .fold(f64::INFINITY, f64::min)
            }
        }
    }

    pub fn contains_point(&self, p: Point2, tol: f64) -> bool {
        self.dist_point(p) <= tol
    }
}

/// Strict convex hull: CCW order, collinear interior points dropped,
/// deterministic start at the lexicographically smallest vertex.
pub fn hull2(points: &[Point2]) -> Result<VPolytope2, Error> {
    if points.is_empty() {
        return Err(Error::EmptyPointList);
    }
    if let Some(bad) = points.iter().find(|p| !p.is_finite()) {
        return Err(Error::invalid_set(format!(
            "non-finite vertex ({}, {})",
            bad.x, bad.y
        )));
    }
    let mut pts = points.to_vec();
    pts.sort_by(|a, b| a.x.total_cmp(&b.x).then(a.y.total_cmp(&b.y)));
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    if pts.len() == 1 {
        return Ok(VPolytope2 { vertices: pts });
    }

    let mut hull: Vec<Point2> = Vec::with_capacity(2 * pts.len());
    for &p in &pts {
        while hull.len() >= 2 && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0 {
            hull.pop();
        }
        hull.push(p);
    }
    let lower_len = hull.len() + 1;
    for &p in pts.iter().rev().skip(1) {
        while hull.len() >= lower_len && orient(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0.0
        {
            hull.pop();
        }
        hull.push(p);
    }
    hull.pop();
    Ok(VPolytope2 { vertices: hull })
}
