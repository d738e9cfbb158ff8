//! Colorings of the whole plane: the periodic hexagonal 7-coloring and the
//! 2-coloring of the rational points.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exactnum::{rat, Rat};
use crate::geometry::pyth_unit_vector;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PlaneError {
    #[error("non-finite coordinate ({0}, {1})")]
    NonFiniteInput(f64, f64),
    #[error("invalid hexagon scheme: {0}")]
    InvalidScheme(String),
}

impl PlaneError {
    pub fn code(&self) -> &'static str {
        match self {
            PlaneError::NonFiniteInput(..) => "E_NON_FINITE_INPUT",
            PlaneError::InvalidScheme(_) => "E_INVALID_SCHEME",
        }
    }
}

const SQRT3: f64 = 1.732_050_807_568_877_2;

/// Default hexagon side; the cell diameter is `2 · side = 0.9`.
pub const DEFAULT_SIDE: f64 = 0.45;
/// Same-color cells are scanned out to this hex distance from the origin cell.
pub const WINDOW_SCAN_RADIUS: i64 = 5;
/// Samples closer than this to a cell boundary are redrawn.
pub const BOUNDARY_GUARD: f64 = 1e-9;
const SAMPLE_BOX: f64 = 50.0;
const CHUNK: u64 = 1 << 16;

/// Axial neighbor offsets of a cell.
const NEIGHBORS: [(i64, i64); 6] = [(1, 0), (1, -1), (0, -1), (-1, 0), (-1, 1), (0, 1)];

fn hex_distance(i: i64, j: i64) -> i64 {
    (i.abs() + j.abs() + (i + j).abs()) / 2
}

/// Center of cell `(i, j)` for unit side: `i·(3/2, √3/2) + j·(0, √3)`.
fn unit_center(i: i64, j: i64) -> (f64, f64) {
    (1.5 * i as f64, SQRT3 / 2.0 * i as f64 + SQRT3 * j as f64)
}

fn unit_hexagon(center: (f64, f64)) -> [(f64, f64); 6] {
    std::array::from_fn(|k| {
        let a = std::f64::consts::FRAC_PI_3 * k as f64;
        (center.0 + a.cos(), center.1 + a.sin())
    })
}

fn point_segment_distance(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0);
    let (cx, cy) = (a.0 + t * dx - p.0, a.1 + t * dy - p.1);
    (cx * cx + cy * cy).sqrt()
}

/// Distance between two disjoint (or touching) convex polygons.
fn polygon_distance(a: &[(f64, f64)], b: &[(f64, f64)]) -> f64 {
    let edges = |poly: &[(f64, f64)]| -> Vec<((f64, f64), (f64, f64))> {
        (0..poly.len())
            .map(|k| (poly[k], poly[(k + 1) % poly.len()]))
            .collect()
    };
    let mut best = f64::INFINITY;
    for &(s, t) in &edges(b) {
        for &p in a {
            best = best.min(point_segment_distance(p, s, t));
        }
    }
    for &(s, t) in &edges(a) {
        for &p in b {
            best = best.min(point_segment_distance(p, s, t));
        }
    }
    best
}

fn color_of(alpha: u32, beta: u32, i: i64, j: i64) -> u8 {
    (alpha as i64 * i + beta as i64 * j).rem_euclid(7) as u8
}

fn distinct_flower(alpha: u32, beta: u32) -> bool {
    let mut seen = [false; 7];
    seen[color_of(alpha, beta, 0, 0) as usize] = true;
    for (i, j) in NEIGHBORS {
        let c = color_of(alpha, beta, i, j) as usize;
        if seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

/// Open interval of hexagon sides for which the coloring with coefficients
/// `(alpha, beta)` avoids monochromatic unit pairs.
///
/// The upper end is 1/2 (cell diameter below one). The lower end is `1/D`,
/// where `D` is the smallest boundary-to-boundary distance between the unit
/// origin cell and a same-colored unit cell within the scan radius; cells of
/// side `s` are then `s·D` apart. An empty window comes back with `lo >= hi`.
pub fn validity_window(alpha: u32, beta: u32) -> (f64, f64) {
    let origin = unit_hexagon((0.0, 0.0));
    let r = WINDOW_SCAN_RADIUS;
    let mut min_gap = f64::INFINITY;
    for i in -r..=r {
        for j in -r..=r {
            if (i, j) == (0, 0) || hex_distance(i, j) > r || color_of(alpha, beta, i, j) != 0 {
                continue;
            }
            let other = unit_hexagon(unit_center(i, j));
            min_gap = min_gap.min(polygon_distance(&origin, &other));
        }
    }
    (1.0 / min_gap, 0.5)
}

/// The canonical scheme's validity window.
pub fn hex7_validity_window() -> (f64, f64) {
    let s = HexScheme::canonical();
    validity_window(s.alpha, s.beta)
}

/// Flat-top hexagonal tiling with cell `(i, j)` colored `(α·i + β·j) mod 7`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HexScheme {
    pub side: f64,
    pub alpha: u32,
    pub beta: u32,
}

impl HexScheme {
    pub fn new(side: f64, alpha: u32, beta: u32) -> Result<Self, PlaneError> {
        if !(side.is_finite() && side > 0.0 && 2.0 * side < 1.0) {
            return Err(PlaneError::InvalidScheme(format!(
                "side {side} must satisfy 0 < 2·side < 1"
            )));
        }
        if !distinct_flower(alpha, beta) {
            return Err(PlaneError::InvalidScheme(format!(
                "coefficients ({alpha}, {beta}) repeat a color around a cell"
            )));
        }
        let (lo, hi) = validity_window(alpha, beta);
        if !(lo < side && side < hi) {
            return Err(PlaneError::InvalidScheme(format!(
                "side {side} outside validity window ({lo}, {hi})"
            )));
        }
        Ok(HexScheme { side, alpha, beta })
    }

    /// Side 0.45 with the lexicographically smallest valid `(α, β)`.
    pub fn canonical() -> Self {
        Self::with_side(DEFAULT_SIDE).expect("side 0.45 admits a valid scheme")
    }

    pub fn with_side(side: f64) -> Result<Self, PlaneError> {
        let mut last = None;
        for alpha in 0..7 {
            for beta in 0..7 {
                match HexScheme::new(side, alpha, beta) {
                    Ok(s) => return Ok(s),
                    Err(e) => last = Some(e),
                }
            }
        }
        Err(last.expect("at least one candidate tried"))
    }

    /// Axial cell containing `(x, y)`, by cube rounding.
    pub fn cell(&self, x: f64, y: f64) -> Result<(i64, i64), PlaneError> {
        if !(x.is_finite() && y.is_finite()) {
            return Err(PlaneError::NonFiniteInput(x, y));
        }
        let q = (2.0 / 3.0 * x) / self.side;
        let r = (-x / 3.0 + SQRT3 / 3.0 * y) / self.side;
        let s = -q - r;
        let (mut rq, mut rr, rs) = (q.round(), r.round(), s.round());
        let (dq, dr, ds) = ((rq - q).abs(), (rr - r).abs(), (rs - s).abs());
        if dq > dr && dq > ds {
            rq = -rr - rs;
        } else if dr > ds {
            rr = -rq - rs;
        }
        Ok((rq as i64, rr as i64))
    }

    pub fn center(&self, (i, j): (i64, i64)) -> (f64, f64) {
        let (x, y) = unit_center(i, j);
        (x * self.side, y * self.side)
    }

    pub fn color(&self, x: f64, y: f64) -> Result<u8, PlaneError> {
        let (i, j) = self.cell(x, y)?;
        Ok(color_of(self.alpha, self.beta, i, j))
    }

    /// Distance from `(x, y)` to the boundary of its own cell.
    pub fn boundary_distance(&self, x: f64, y: f64) -> Result<f64, PlaneError> {
        let (cx, cy) = self.center(self.cell(x, y)?);
        let apothem = SQRT3 / 2.0 * self.side;
        let reach = (0..6)
            .map(|k| {
                let a = std::f64::consts::PI / 6.0 + std::f64::consts::FRAC_PI_3 * k as f64;
                (x - cx) * a.cos() + (y - cy) * a.sin()
            })
            .fold(f64::NEG_INFINITY, f64::max);
        Ok(apothem - reach)
    }

    /// Two translation vectors spanning the same-color sublattice.
    pub fn period_vectors(&self) -> [(f64, f64); 2] {
        let mut offsets: Vec<(i64, i64)> = Vec::new();
        for i in -7..=7 {
            for j in -7..=7 {
                if (i, j) != (0, 0) && color_of(self.alpha, self.beta, i, j) == 0 {
                    offsets.push((i, j));
                }
            }
        }
        offsets.sort_by_key(|&(i, j)| (hex_distance(i, j), i, j));
        let a = offsets[0];
        let b = *offsets
            .iter()
            .find(|&&(i, j)| (a.0 * j - a.1 * i).abs() == 7)
            .expect("index-7 sublattice has a basis");
        [self.center(a), self.center(b)]
    }

    /// Samples `samples` unit-distance pairs with the given seed.
    ///
    /// Work is cut into fixed chunks of 2^16 samples; chunk `c` draws from a
    /// ChaCha8 stream seeded with `seed + c`, so the report does not depend on
    /// how many worker threads run. Each sample also probes a point at a
    /// random distance in `[0.5, 1.5)` along the same direction to record the
    /// closest observed pair of same-colored points in different cells.
    pub fn verify(&self, samples: u64, seed: u64) -> HexVerifyReport {
        let chunks = samples.div_ceil(CHUNK);
        let parts: Vec<ChunkStats> = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let n = CHUNK.min(samples - c * CHUNK);
                self.verify_chunk(n, seed.wrapping_add(c))
            })
            .collect();
        let mut report = HexVerifyReport {
            scheme: *self,
            window: validity_window(self.alpha, self.beta),
            seed,
            samples,
            failures: 0,
            regenerated: 0,
            min_same_color_distance: None,
        };
        for p in parts {
            report.failures += p.failures;
            report.regenerated += p.regenerated;
            report.min_same_color_distance = match (report.min_same_color_distance, p.min_same) {
                (Some(a), Some(b)) => Some(a.min(b)),
                (a, b) => a.or(b),
            };
        }
        report
    }

    fn verify_chunk(&self, n: u64, seed: u64) -> ChunkStats {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut stats = ChunkStats::default();
        let mut done = 0;
        while done < n {
            let x = rng.gen_range(-SAMPLE_BOX..SAMPLE_BOX);
            let y = rng.gen_range(-SAMPLE_BOX..SAMPLE_BOX);
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            let probe = rng.gen_range(0.5..1.5);
            let (dx, dy) = (theta.cos(), theta.sin());
            let (qx, qy) = (x + dx, y + dy);
            let near_edge = |px: f64, py: f64| {
                self.boundary_distance(px, py).expect("finite sample") < BOUNDARY_GUARD
            };
            if near_edge(x, y) || near_edge(qx, qy) {
                stats.regenerated += 1;
                continue;
            }
            done += 1;
            let cp = self.color(x, y).expect("finite sample");
            if cp == self.color(qx, qy).expect("finite sample") {
                stats.failures += 1;
            }
            let (rx, ry) = (x + probe * dx, y + probe * dy);
            if self.cell(x, y).ok() != self.cell(rx, ry).ok()
                && self.color(rx, ry).ok() == Some(cp)
            {
                stats.min_same = Some(stats.min_same.map_or(probe, |m: f64| m.min(probe)));
            }
        }
        stats
    }
}

#[derive(Default)]
struct ChunkStats {
    failures: u64,
    regenerated: u64,
    min_same: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HexVerifyReport {
    pub scheme: HexScheme,
    pub window: (f64, f64),
    pub seed: u64,
    pub samples: u64,
    pub failures: u64,
    pub regenerated: u64,
    pub min_same_color_distance: Option<f64>,
}

/// Color under the canonical hexagonal scheme.
pub fn hex7_color(x: f64, y: f64) -> Result<u8, PlaneError> {
    HexScheme::canonical().color(x, y)
}

/// Point with rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint { x, y }
    }

    pub fn sq_dist(&self, other: &RatPoint) -> Rat {
        let dx = &self.x - &other.x;
        let dy = &self.y - &other.y;
        &dx * &dx + &dy * &dy
    }

    pub fn is_unit(&self, other: &RatPoint) -> bool {
        self.sq_dist(other).is_one()
    }
}

/// Splits `x` into its dyadic part `c/2^k ∈ [0, 1)` and an odd-denominator rest.
///
/// For `x = p / (2^k·q)` with `q` odd, `c ≡ p·q⁻¹ (mod 2^k)` makes
/// `p − c·q` divisible by `2^k`, so `x − c/2^k = (p − c·q)/(2^k·q)` reduces to
/// an odd denominator.
pub fn dyadic_split(x: &Rat) -> (Rat, Rat) {
    let p = x.numer();
    let mut q = x.denom().clone();
    let two = BigInt::from(2);
    let mut k = 0u32;
    while q.is_even() {
        q /= &two;
        k += 1;
    }
    if k == 0 {
        return (Rat::zero(), x.clone());
    }
    let modulus = BigInt::one() << k;
    let inv = mod_inverse(&q, &modulus);
    let c = (p * inv).mod_floor(&modulus);
    let dyadic = Rat::new(c, modulus);
    let rest = x - &dyadic;
    (dyadic, rest)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> BigInt {
    let e = a.extended_gcd(m);
    debug_assert!(e.gcd.is_one());
    e.x.mod_floor(m)
}

/// Parity of an odd-denominator rational, `a mod 2` for `a/b` with `b` odd.
fn odd_parity(r: &Rat) -> u8 {
    debug_assert!(r.denom().is_odd());
    u8::from(r.numer().is_odd())
}

/// Proper 2-coloring of the unit-distance graph on ℚ².
///
/// A rational unit vector is `(a/c, b/c)` with `c` odd and exactly one of
/// `a`, `b` odd. Stripping the dyadic parts leaves coordinates in the ring of
/// odd-denominator rationals, where reduction mod 2 is a ring map; a unit
/// step therefore changes `par(x) + par(y)` by `a + b ≡ 1 (mod 2)`.
pub fn rational2_color(p: &RatPoint) -> u8 {
    let (_, ox) = dyadic_split(&p.x);
    let (_, oy) = dyadic_split(&p.y);
    (odd_parity(&ox) + odd_parity(&oy)) % 2
}

/// Random base point plus a random rational unit step.
pub fn random_unit_rational_pair<R: Rng + ?Sized>(rng: &mut R) -> (RatPoint, RatPoint) {
    let base = RatPoint::new(random_small_rat(rng), random_small_rat(rng));
    let t = rat(rng.gen_range(-30..=30), rng.gen_range(1..=30));
    let u = pyth_unit_vector(&t);
    let mut ux = u.ux.as_rat().expect("rational unit vector");
    let mut uy = u.uy.as_rat().expect("rational unit vector");
    if rng.gen_bool(0.5) {
        ux = -ux;
    }
    if rng.gen_bool(0.5) {
        std::mem::swap(&mut ux, &mut uy);
    }
    let step = RatPoint::new(&base.x + ux, &base.y + uy);
    (base, step)
}

/// [`random_unit_rational_pair`] from a fresh ChaCha8 stream.
pub fn random_unit_rational_pair_seeded(seed: u64) -> (RatPoint, RatPoint) {
    random_unit_rational_pair(&mut ChaCha8Rng::seed_from_u64(seed))
}

fn random_small_rat<R: Rng + ?Sized>(rng: &mut R) -> Rat {
    let den = if rng.gen_bool(0.5) {
        1i64 << rng.gen_range(0..6)
    } else {
        rng.gen_range(1..=24)
    };
    let r = rat(rng.gen_range(-60..=60), den);
    if rng.gen_bool(0.1) {
        r.abs()
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::rat_int;

    #[test]
    fn canonical_scheme() {
        let s = HexScheme::canonical();
        assert_eq!((s.side, s.alpha, s.beta), (0.45, 1, 3));
        assert_eq!(hex7_color(0.0, 0.0).unwrap(), 0);
    }

    #[test]
    fn flower_has_seven_colors() {
        let s = HexScheme::canonical();
        let mut colors: Vec<u8> = std::iter::once((0, 0))
            .chain(NEIGHBORS)
            .map(|(i, j)| color_of(s.alpha, s.beta, i, j))
            .collect();
        colors.sort();
        assert_eq!(colors, (0..7).collect::<Vec<_>>());
    }

    #[test]
    fn cells_round_trip_centers() {
        let s = HexScheme::canonical();
        for i in -4..=4 {
            for j in -4..=4 {
                let (x, y) = s.center((i, j));
                assert_eq!(s.cell(x, y).unwrap(), (i, j));
                let apothem = SQRT3 / 2.0 * s.side;
                assert!((s.boundary_distance(x, y).unwrap() - apothem).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn periodicity() {
        let s = HexScheme::canonical();
        let [a, b] = s.period_vectors();
        for (x, y) in [(0.1, 0.2), (3.3, -1.7), (-10.0, 4.25)] {
            let c = s.color(x, y).unwrap();
            assert_eq!(s.color(x + a.0, y + a.1).unwrap(), c);
            assert_eq!(s.color(x + b.0, y + b.1).unwrap(), c);
        }
    }

    #[test]
    fn non_finite_rejected() {
        assert!(matches!(
            hex7_color(f64::NAN, 0.0),
            Err(PlaneError::NonFiniteInput(..))
        ));
        assert!(hex7_color(0.0, f64::INFINITY).is_err());
    }

    #[test]
    fn window_edges() {
        let (lo, hi) = hex7_validity_window();
        assert!(lo < 0.45 && 0.45 < hi);
        assert!(HexScheme::new(0.5, 1, 3).is_err());
        assert!(HexScheme::new(0.1, 1, 3).is_err());
        assert!(HexScheme::new(0.45, 1, 1).is_err());
        let (lo, hi) = validity_window(1, 0);
        assert!(lo >= hi);
    }

    #[test]
    fn small_verification_run() {
        let s = HexScheme::canonical();
        let r = s.verify(10_000, 7);
        assert_eq!(r.failures, 0);
        assert_eq!(r.samples, 10_000);
        assert_eq!(r, s.verify(10_000, 7));
        let m = r.min_same_color_distance.unwrap();
        assert!(m > 1.0 && m < 1.5);
    }

    #[test]
    fn dyadic_parts() {
        let (d, o) = dyadic_split(&rat(1, 2));
        assert_eq!((d, o), (rat(1, 2), rat_int(0)));
        let (d, o) = dyadic_split(&rat(-3, 4));
        assert_eq!(d, rat(1, 4));
        assert_eq!(o, rat_int(-1));
        let (d, o) = dyadic_split(&rat(7, 12));
        assert!(d >= rat_int(0) && d < rat_int(1));
        assert!(o.denom().is_odd());
        assert_eq!(d + o, rat(7, 12));
    }

    #[test]
    fn rational_colors() {
        let c = |x, y| rational2_color(&RatPoint::new(x, y));
        assert_eq!(c(rat_int(0), rat_int(0)), 0);
        assert_eq!(c(rat(3, 5), rat(4, 5)), 1);
        assert_eq!(c(rat(1, 2), rat_int(0)), 0);
        assert_eq!(c(rat_int(1), rat_int(0)), 1);
    }

    #[test]
    fn seeded_pairs_are_unit() {
        for seed in 0..50 {
            let (a, b) = random_unit_rational_pair_seeded(seed);
            assert!(a.is_unit(&b));
            assert_ne!(rational2_color(&a), rational2_color(&b));
        }
        assert_eq!(
            random_unit_rational_pair_seeded(3),
            random_unit_rational_pair_seeded(3)
        );
    }
}
