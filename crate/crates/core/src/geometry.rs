//! Exact planar points, rotations, and circle intersections.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};

use crate::exactnum::{rat, sqrt_rational, ExactError, QNum, Rat};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("circle centers coincide")]
    CoincidentCenters,
    #[error("circles do not meet (squared center distance {0})")]
    NoIntersection(String),
    #[error("intersection needs the square root of an irrational value ({0})")]
    UnsupportedRadicand(String),
    #[error("not a unit vector: {0}")]
    NotUnit(String),
    #[error("cannot parse point {0:?}")]
    Parse(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
}

impl GeometryError {
    pub fn code(&self) -> &'static str {
        match self {
            GeometryError::CoincidentCenters => "E_COINCIDENT_CENTERS",
            GeometryError::NoIntersection(_) => "E_NO_INTERSECTION",
            GeometryError::UnsupportedRadicand(_) => "E_UNSUPPORTED_RADICAND",
            GeometryError::NotUnit(_) => "E_NOT_UNIT",
            GeometryError::Parse(_) => "E_PARSE",
            GeometryError::Exact(e) => e.code(),
        }
    }
}

/// Exact point in the plane.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct EPoint {
    pub x: QNum,
    pub y: QNum,
}

impl EPoint {
    pub fn new(x: impl Into<QNum>, y: impl Into<QNum>) -> Self {
        EPoint {
            x: x.into(),
            y: y.into(),
        }
    }

    pub fn origin() -> Self {
        EPoint::new(QNum::zero(), QNum::zero())
    }

    pub fn from_rats(x: Rat, y: Rat) -> Self {
        EPoint::new(x, y)
    }

    pub fn translate(&self, v: &UnitVector) -> EPoint {
        EPoint {
            x: &self.x + &v.ux,
            y: &self.y + &v.uy,
        }
    }

    pub fn approx(&self) -> (f64, f64) {
        (self.x.approx(), self.y.approx())
    }
}

impl std::ops::Add for &EPoint {
    type Output = EPoint;
    fn add(self, rhs: &EPoint) -> EPoint {
        EPoint {
            x: &self.x + &rhs.x,
            y: &self.y + &rhs.y,
        }
    }
}

impl std::ops::Sub for &EPoint {
    type Output = EPoint;
    fn sub(self, rhs: &EPoint) -> EPoint {
        EPoint {
            x: &self.x - &rhs.x,
            y: &self.y - &rhs.y,
        }
    }
}

impl fmt::Display for EPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.x, self.y)
    }
}

impl fmt::Debug for EPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "EPoint{self}")
    }
}

impl FromStr for EPoint {
    type Err = GeometryError;

    /// Parses `(x; y)` where both coordinates use the exact number text form.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GeometryError::Parse(s.to_string());
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(bad)?;
        let (x, y) = inner.split_once(';').ok_or_else(bad)?;
        Ok(EPoint {
            x: x.parse()?,
            y: y.parse()?,
        })
    }
}

/// Direction with `ux² + uy² = 1` exactly.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct UnitVector {
    pub ux: QNum,
    pub uy: QNum,
}

impl UnitVector {
    pub fn new(ux: QNum, uy: QNum) -> Result<Self, GeometryError> {
        let norm = ux.square() + uy.square();
        if norm != QNum::one() {
            return Err(GeometryError::NotUnit(format!("({ux}; {uy})")));
        }
        Ok(UnitVector { ux, uy })
    }

    pub fn as_point(&self) -> EPoint {
        EPoint {
            x: self.ux.clone(),
            y: self.uy.clone(),
        }
    }

    /// Rotation by 60°, `(1/2, √3/2)`.
    pub fn sixty_degrees() -> Self {
        UnitVector {
            ux: QNum::from_rat(rat(1, 2)),
            uy: QNum::term(rat(1, 2), 3),
        }
    }
}

pub fn sq_dist(p: &EPoint, q: &EPoint) -> QNum {
    let dx = &p.x - &q.x;
    let dy = &p.y - &q.y;
    dx.square() + dy.square()
}

pub fn is_unit(p: &EPoint, q: &EPoint) -> bool {
    sq_dist(p, q) == QNum::one()
}

/// Rational point `((1−t²)/(1+t²), 2t/(1+t²))` on the unit circle.
pub fn pyth_unit_vector(t: &Rat) -> UnitVector {
    let t2 = t * t;
    let den = Rat::one() + &t2;
    UnitVector {
        ux: QNum::from_rat((Rat::one() - &t2) / &den),
        uy: QNum::from_rat((t + t) / den),
    }
}

/// Rotates `p` about the origin by the angle of `u` (complex multiplication).
pub fn rotate(p: &EPoint, u: &UnitVector) -> EPoint {
    EPoint {
        x: &p.x * &u.ux - &p.y * &u.uy,
        y: &p.x * &u.uy + &p.y * &u.ux,
    }
}

/// Intersections of the circle of squared radius `r1_sq` about `c1` with the
/// circle of squared radius `r2_sq` about `c2`.
///
/// With `e = c2 − c1` and `d² = |e|²`, the points are
/// `c1 + a·e ± h·perp(e)` where `a = (r1² − r2² + d²) / (2d²)` and
/// `h = √(r1²/d² − a²)`. Only rational `d²` and a rational radicand are
/// supported. The first point uses the +90° perpendicular.
pub fn circle_intersection(
    c1: &EPoint,
    r1_sq: &Rat,
    c2: &EPoint,
    r2_sq: &Rat,
) -> Result<(EPoint, EPoint), GeometryError> {
    let e = c2 - c1;
    let d2 = sq_dist(c1, c2);
    if d2.is_zero() {
        return Err(GeometryError::CoincidentCenters);
    }
    let d2 = d2
        .as_rat()
        .ok_or_else(|| GeometryError::UnsupportedRadicand(format!("squared distance {d2}")))?;
    let a = (r1_sq - r2_sq + &d2) / (&d2 + &d2);
    let radicand = r1_sq / &d2 - &a * &a;
    if radicand < Rat::zero() {
        return Err(GeometryError::NoIntersection(d2.to_string()));
    }
    let h = sqrt_rational(&radicand)?;
    let a = QNum::from_rat(a);
    let base = EPoint {
        x: &c1.x + &a * &e.x,
        y: &c1.y + &a * &e.y,
    };
    // perp(e) = (−e.y, e.x)
    let off = EPoint {
        x: -(&h * &e.y),
        y: &h * &e.x,
    };
    Ok((&base + &off, &base - &off))
}

/// The two points at unit distance from both `a` and `b`.
///
/// Coincide exactly when `|a − b| = 2`.
pub fn unit_circle_pair(a: &EPoint, b: &EPoint) -> Result<(EPoint, EPoint), GeometryError> {
    circle_intersection(a, &Rat::one(), b, &Rat::one())
}
