//! JSON set literals: the wire schema for configuration files and reports.
//!
//! ```json
//! {"type": "box", "lo": [0.0], "hi": [1.0]}
//! {"type": "poly2", "vertices": [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]}
//! {"type": "point", "coords": [2.0, -1.0]}
//! ```

use serde::{Deserialize, Serialize};

use super::{ConvexSet, IntervalBox, Point2, VPolytope2};
use crate::error::Error;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
pub enum SetLiteral {
    Box { lo: Vec<f64>, hi: Vec<f64> },
    Poly2 { vertices: Vec<[f64; 2]> },
    Point { coords: Vec<f64> },
}

impl SetLiteral {
    pub fn to_set(&self) -> Result<ConvexSet, Error> {
        match self {
            SetLiteral::Box { lo, hi } => {
                Ok(ConvexSet::Box(IntervalBox::new(lo.clone(), hi.clone())?))
            }
            SetLiteral::Poly2 { vertices } => {
                let pts: Vec<Point2> = vertices.iter().map(|v| Point2::new(v[0], v[1])).collect();
                Ok(ConvexSet::Poly(VPolytope2::from_points(&pts)?))
            }
            SetLiteral::Point { coords } => ConvexSet::singleton(coords),
        }
    }

    /// Canonical literal for a set. Grids are exported through their exact
    /// vertex enumeration, degenerate boxes as points.
    pub fn from_set(s: &ConvexSet) -> SetLiteral {
        match s {
            ConvexSet::Box(b) => {
                if b.lo() == b.hi() {
                    SetLiteral::Point {
                        coords: b.lo().to_vec(),
                    }
                } else {
                    SetLiteral::Box {
                        lo: b.lo().to_vec(),
                        hi: b.hi().to_vec(),
                    }
                }
            }
            ConvexSet::Poly(p) => SetLiteral::Poly2 {
                vertices: p.vertices().iter().map(|v| [v.x, v.y]).collect(),
            },
            ConvexSet::Grid(g) => match g.dim() {
                1 => {
                    let (lo, hi) = g.to_interval();
                    SetLiteral::Box {
                        lo: vec![lo],
                        hi: vec![hi],
                    }
                }
                _ => SetLiteral::Poly2 {
                    vertices: g.to_poly2().vertices().iter().map(|v| [v.x, v.y]).collect(),
                },
            },
        }
    }
}

impl TryFrom<&SetLiteral> for ConvexSet {
    type Error = Error;

    fn try_from(l: &SetLiteral) -> Result<Self, Error> {
        l.to_set()
    }
}

impl From<&ConvexSet> for SetLiteral {
    fn from(s: &ConvexSet) -> Self {
        SetLiteral::from_set(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_three_shapes() {
        let b: SetLiteral = serde_json::from_str(r#"{"type":"box","lo":[0.0],"hi":[1.0]}"#).unwrap();
        assert_eq!(b.to_set().unwrap(), ConvexSet::interval(0.0, 1.0).unwrap());

        let p: SetLiteral =
            serde_json::from_str(r#"{"type":"poly2","vertices":[[0,0],[1,0],[0,1]]}"#).unwrap();
        assert!(matches!(p.to_set().unwrap(), ConvexSet::Poly(_)));

        let s: SetLiteral = serde_json::from_str(r#"{"type":"point","coords":[2.0,-1.0]}"#).unwrap();
        assert_eq!(
            s.to_set().unwrap(),
            ConvexSet::singleton(&[2.0, -1.0]).unwrap()
        );
    }

    #[test]
    fn malformed_literal_is_an_error() {
        let r: Result<SetLiteral, _> = serde_json::from_str(r#"{"type":"blob","lo":[0]}"#);
        assert!(r.is_err());
        // Parses but is semantically invalid: inverted interval.
        let bad: SetLiteral = serde_json::from_str(r#"{"type":"box","lo":[2.0],"hi":[1.0]}"#).unwrap();
        assert!(bad.to_set().is_err());
    }

    #[test]
    fn singleton_boxes_export_as_points() {
        let s = ConvexSet::singleton(&[1.5]).unwrap();
        assert_eq!(
            SetLiteral::from_set(&s),
            SetLiteral::Point { coords: vec![1.5] }
        );
    }
}
