//! Named unit-distance graphs and product constructions.

use num_traits::One;

use crate::exactnum::{rat, rat_int, QNum, Rat};
use crate::geometry::{circle_intersection, pyth_unit_vector, rotate, EPoint, UnitVector};
use crate::graph::{GraphError, UdGraph};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("translated vertex {translated} collides with original vertex {original}")]
    VertexCollision { original: usize, translated: usize },
    #[error("graph has no geometry")]
    NotGeometric,
    #[error("unknown graph name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

impl CatalogError {
    pub fn code(&self) -> &'static str {
        match self {
            CatalogError::VertexCollision { .. } => "E_VERTEX_COLLISION",
            CatalogError::NotGeometric => "E_NOT_GEOMETRIC",
            CatalogError::UnknownName(_) => "E_UNKNOWN_GRAPH",
            CatalogError::Graph(e) => e.code(),
        }
    }
}

fn half_sqrt3() -> QNum {
    QNum::term(rat(1, 2), 3)
}

fn build(points: Vec<EPoint>) -> UdGraph {
    UdGraph::from_points(points).expect("catalog points are distinct")
}

/// The rotation taking the Moser rhombus tip `(3/2, √3/2)` to unit distance
/// from itself: `cos θ = 5/6`, so `|T − T'|² = 2·3·(1 − 5/6) = 1`.
pub fn moser_rotation() -> UnitVector {
    UnitVector::new(QNum::from_rat(rat(5, 6)), QNum::term(rat(1, 6), 11))
        .expect("(5/6)² + 11/36 = 1")
}

/// Unit equilateral triangle on `(0,0)`, `(1,0)`, `(1/2, √3/2)`.
pub fn triangle() -> UdGraph {
    build(vec![
        EPoint::origin(),
        EPoint::from_rats(rat_int(1), rat_int(0)),
        EPoint::new(QNum::from_rat(rat(1, 2)), half_sqrt3()),
    ])
}

pub fn single_vertex() -> UdGraph {
    build(vec![EPoint::origin()])
}

/// Two unit rhombi hinged at the origin; vertex order
/// `A, B, C, T, B', C', T'`.
pub fn moser_spindle() -> UdGraph {
    let a = EPoint::origin();
    let b = EPoint::from_rats(rat_int(1), rat_int(0));
    let c = EPoint::new(QNum::from_rat(rat(1, 2)), half_sqrt3());
    let t = EPoint::new(QNum::from_rat(rat(3, 2)), half_sqrt3());
    let u = moser_rotation();
    let rotated: Vec<EPoint> = [&b, &c, &t].iter().map(|p| rotate(p, &u)).collect();
    let mut pts = vec![a, b, c, t];
    pts.extend(rotated);
    build(pts)
}

/// Wheel on a unit hexagon plus a unit triangle hinged to every other rim vertex.
///
/// Vertex order: center, hexagon `H0..H5` at multiples of 60°, then the
/// triangle `T0, T1, T2` with `Tk` at unit distance from `H(2k)`. `T0` is the
/// intersection of the unit circle about `H0` with the circle of squared
/// radius 1/3 (the triangle's circumradius) about the center; `T1`, `T2`
/// follow by rotation through 120° and 240°.
pub fn golomb_graph() -> UdGraph {
    let center = EPoint::origin();
    let sixty = UnitVector::sixty_degrees();
    let mut hex = vec![EPoint::from_rats(rat_int(1), rat_int(0))];
    for k in 1..6 {
        hex.push(rotate(&hex[k - 1], &sixty));
    }
    let (t0, _) = circle_intersection(&center, &rat(1, 3), &hex[0], &Rat::one())
        .expect("circles of radius 1/√3 and 1 at distance 1 meet");
    let onetwenty = UnitVector::new(QNum::from_rat(rat(-1, 2)), half_sqrt3()).expect("unit");
    let t1 = rotate(&t0, &onetwenty);
    let t2 = rotate(&t1, &onetwenty);
    let mut pts = vec![center];
    pts.extend(hex);
    pts.extend([t0, t1, t2]);
    build(pts)
}

/// Union of `g` and its translate by `u`; vertex `i + n` is the translate of `i`.
pub fn minkowski_sum(g: &UdGraph, u: &UnitVector) -> Result<UdGraph, CatalogError> {
    let pts = g.points().ok_or(CatalogError::NotGeometric)?;
    let moved: Vec<EPoint> = pts.iter().map(|p| p.translate(u)).collect();
    for (j, q) in moved.iter().enumerate() {
        if let Some(i) = pts.iter().position(|p| p == q) {
            return Err(CatalogError::VertexCollision {
                original: i,
                translated: j,
            });
        }
    }
    let mut all = pts.to_vec();
    all.extend(moved);
    Ok(UdGraph::from_points(all)?)
}

/// Hexagonal patch of the triangular lattice, `i·(1,0) + j·(1/2, √3/2)` with
/// `|i|, |j|, |i+j| ≤ radius`, listed by `(i, j)` lexicographically.
pub fn triangular_patch(radius: u32) -> UdGraph {
    build(
        lattice_coords(radius)
            .into_iter()
            .map(|(i, j)| lattice_point(i, j))
            .collect(),
    )
}

pub fn lattice_coords(radius: u32) -> Vec<(i64, i64)> {
    let r = radius as i64;
    let mut out = Vec::new();
    for i in -r..=r {
        for j in -r..=r {
            if (i + j).abs() <= r {
                out.push((i, j));
            }
        }
    }
    out
}

pub fn lattice_point(i: i64, j: i64) -> EPoint {
    let x = rat_int(i) + rat(j, 2);
    let y = if j == 0 {
        QNum::zero()
    } else {
        QNum::term(rat(j, 2), 3)
    };
    EPoint::new(x, y)
}

/// Directions of the two-step product that refutes the degree-3 lemma.
pub fn lemma_directions() -> (Rat, Rat) {
    (rat(1, 2), rat(1, 3))
}

/// `C3 ⊕ pyth(1/2)`: a 3-regular triangular prism.
pub fn c3_mink1() -> UdGraph {
    let (t1, _) = lemma_directions();
    minkowski_sum(&triangle(), &pyth_unit_vector(&t1)).expect("no collision")
}

/// `(C3 ⊕ pyth(1/2)) ⊕ pyth(1/3)`: 12 vertices, minimum degree 4.
pub fn c3_mink2() -> UdGraph {
    let (_, t2) = lemma_directions();
    minkowski_sum(&c3_mink1(), &pyth_unit_vector(&t2)).expect("no collision")
}

/// Catalog names, in listing order.
pub const NAMES: &[&str] = &[
    "k1", "c3", "moser", "golomb", "c3_mink1", "c3_mink2", "patch1", "patch2",
];

pub fn lookup(name: &str) -> Result<UdGraph, CatalogError> {
    Ok(match name {
        "k1" => single_vertex(),
        "c3" => triangle(),
        "moser" | "moser_spindle" => moser_spindle(),
        "golomb" | "golomb_graph" => golomb_graph(),
        "c3_mink1" => c3_mink1(),
        "c3_mink2" => c3_mink2(),
        "patch1" => triangular_patch(1),
        "patch2" => triangular_patch(2),
        other => return Err(CatalogError::UnknownName(other.to_string())),
    })
}
