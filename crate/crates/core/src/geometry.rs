//! Centroids and tiles of the recursive triangular subdivision.
//!
//! The initial triangle has circumradius `R0`, is centered at the origin and
//! has its apex at 90°. Corner subtriangles are labelled `1`, `2`, `4` (towards
//! 330°, 90° and 210°) and the central, inverted one is labelled `7`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::basis::{Digit, Word};
use crate::error::{Error, Result};
use crate::symmetry::Perm;

/// Default circumradius of the initial triangle.
pub const DEFAULT_R0: f64 = 1.0;

const HALF_SQRT3: f64 = 0.866_025_403_784_438_6;

#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    pub const fn new(x: f64, y: f64) -> Vec2 {
        Vec2 { x, y }
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn dist(self, other: Vec2) -> f64 {
        (self - other).norm()
    }

    pub fn cross(self, other: Vec2) -> f64 {
        self.x * other.y - self.y * other.x
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    fn add(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x + o.x, self.y + o.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    fn sub(self, o: Vec2) -> Vec2 {
        Vec2::new(self.x - o.x, self.y - o.y)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    fn mul(self, s: f64) -> Vec2 {
        Vec2::new(self.x * s, self.y * s)
    }
}

/// `v(1)` at 330°, `v(2)` at 90°, `v(4)` at 210°, `v(7) = 0`.
pub fn elementary_vector(d: Digit) -> Vec2 {
    match d {
        Digit::I => Vec2::new(HALF_SQRT3, -0.5),
        Digit::J => Vec2::new(0.0, 1.0),
        Digit::K => Vec2::new(-HALF_SQRT3, -0.5),
        Digit::E => Vec2::ZERO,
    }
}

fn check_scale(scale: f64) -> Result<()> {
    if scale.is_finite() && scale > 0.0 {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "scale must be a positive finite number, got {scale}"
        )))
    }
}

/// Centroid `P(b) = Σ σ_r d_r v(b_r)` with `d_r = d1 / 2^(r-1)`.
///
/// `σ_r` flips once for every 7 seen before position `r`: a 7 selects the
/// central, inverted subtriangle and reverses all later steps.
pub fn centroid(b: Word, d1: f64) -> Result<Vec2> {
    check_scale(d1)?;
    let mut p = Vec2::ZERO;
    let mut step = d1;
    let mut flipped = false;
    for d in b.digits() {
        let v = elementary_vector(d) * step;
        p = if flipped { p - v } else { p + v };
        flipped ^= d.is_central();
        step *= 0.5;
    }
    Ok(p)
}

/// Upward iff `N124(b) ≡ n (mod 2)`, i.e. an even number of 7s.
pub fn orientation(b: Word) -> bool {
    (b.len() - b.n124()).is_multiple_of(2)
}

/// A tile of the depth-`n` subdivision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TriTile {
    pub word: Word,
    pub centroid: Vec2,
    pub upward: bool,
    pub depth: usize,
    pub circumradius_scale: f64,
}

impl TriTile {
    pub fn new(word: Word, r0: f64) -> Result<TriTile> {
        Ok(TriTile {
            word,
            centroid: centroid(word, r0 / 2.0)?,
            upward: orientation(word),
            depth: word.len(),
            circumradius_scale: r0,
        })
    }

    /// `R0 / 2^n`.
    pub fn circumradius(&self) -> f64 {
        self.circumradius_scale / f64::powi(2.0, self.depth as i32)
    }

    pub fn polygon(&self) -> [Vec2; 3] {
        triangle(self.centroid, self.circumradius(), self.upward)
    }
}

fn triangle(center: Vec2, radius: f64, upward: bool) -> [Vec2; 3] {
    let dirs = [Digit::J, Digit::K, Digit::I].map(elementary_vector);
    let s = if upward { radius } else { -radius };
    dirs.map(|v| center + v * s)
}

/// The depth-0 triangle: circumradius `R0`, apex at 90°.
pub fn initial_triangle(r0: f64) -> Result<[Vec2; 3]> {
    check_scale(r0)?;
    Ok(triangle(Vec2::ZERO, r0, true))
}

/// Vertices of the tile labelled `b`, apex-first.
pub fn tile_polygon(b: Word, r0: f64) -> Result<[Vec2; 3]> {
    Ok(TriTile::new(b, r0)?.polygon())
}

/// Unsigned area.
pub fn triangle_area(t: &[Vec2; 3]) -> f64 {
    ((t[1] - t[0]).cross(t[2] - t[0]) / 2.0).abs()
}

/// True when `p` lies inside `t` by more than `margin` from every edge.
pub fn strictly_inside(p: Vec2, t: &[Vec2; 3], margin: f64) -> bool {
    let orient = (t[1] - t[0]).cross(t[2] - t[0]).signum();
    (0..3).all(|i| {
        let (a, b) = (t[i], t[(i + 1) % 3]);
        orient * (b - a).cross(p - a) / (b - a).norm() > margin
    })
}

/// A linear symmetry of the plane as a row-major 2×2 matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DihedralMap {
    pub m: [[f64; 2]; 2],
}

impl DihedralMap {
    pub fn apply(&self, v: Vec2) -> Vec2 {
        Vec2::new(
            self.m[0][0] * v.x + self.m[0][1] * v.y,
            self.m[1][0] * v.x + self.m[1][1] * v.y,
        )
    }

    pub fn det(&self) -> f64 {
        self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0]
    }

    /// Max entry of `|MᵀM - I|`.
    pub fn orthogonality_defect(&self) -> f64 {
        let m = &self.m;
        let g = [
            [
                m[0][0] * m[0][0] + m[1][0] * m[1][0],
                m[0][0] * m[0][1] + m[1][0] * m[1][1],
            ],
            [
                m[0][1] * m[0][0] + m[1][1] * m[1][0],
                m[0][1] * m[0][1] + m[1][1] * m[1][1],
            ],
        ];
        [
            (g[0][0] - 1.0).abs(),
            g[0][1].abs(),
            g[1][0].abs(),
            (g[1][1] - 1.0).abs(),
        ]
        .into_iter()
        .fold(0.0, f64::max)
    }
}

/// `ρ(π)`: the linear map with `ρ(π) v(a) = v(π(a))`.
///
/// With `v(1)` at 330° and `v(2)` at 90°, the cycle `1 -> 2 -> 4` comes out
/// as the counter-clockwise rotation by +120°.
pub fn rho(pi: &Perm) -> DihedralMap {
    // solve M [v1 v2] = [v(π1) v(π2)]
    let (u1, u2) = (elementary_vector(Digit::I), elementary_vector(Digit::J));
    let (w1, w2) = (
        elementary_vector(pi.apply(Digit::I)),
        elementary_vector(pi.apply(Digit::J)),
    );
    let det = u1.x * u2.y - u2.x * u1.y;
    let inv = [[u2.y / det, -u2.x / det], [-u1.y / det, u1.x / det]];
    let m = [
        [
            w1.x * inv[0][0] + w2.x * inv[1][0],
            w1.x * inv[0][1] + w2.x * inv[1][1],
        ],
        [
            w1.y * inv[0][0] + w2.y * inv[1][0],
            w1.y * inv[0][1] + w2.y * inv[1][1],
        ],
    ];
    DihedralMap { m }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TOL: f64 = 1e-12;

    fn w(s: &str) -> Word {
        Word::parse(s).unwrap()
    }

    fn close(a: Vec2, b: Vec2) -> bool {
        a.dist(b) <= TOL
    }

    #[test]
    fn elementary_vectors() {
        assert_eq!(elementary_vector(Digit::J), Vec2::new(0.0, 1.0));
        assert_eq!(elementary_vector(Digit::E), Vec2::ZERO);
        let sum = Digit::CORNERS
            .iter()
            .fold(Vec2::ZERO, |acc, d| acc + elementary_vector(*d));
        assert!(sum.norm() < 1e-15);
        for d in Digit::CORNERS {
            assert!((elementary_vector(d).norm() - 1.0).abs() < 1e-15);
        }
        let deg = |a: f64| Vec2::new(a.to_radians().cos(), a.to_radians().sin());
        assert!(close(elementary_vector(Digit::I), deg(330.0)));
        assert!(close(elementary_vector(Digit::K), deg(210.0)));
    }

    #[test]
    fn centroid_examples() {
        let d1 = 0.5;
        assert_eq!(centroid(w("7777"), d1).unwrap(), Vec2::ZERO);
        let expected = elementary_vector(Digit::I) * (-d1 / 2.0);
        assert!(close(centroid(w("71"), d1).unwrap(), expected));
        assert!(centroid(w("1"), 0.0).is_err());
        assert!(centroid(w("1"), f64::NAN).is_err());
    }

    #[test]
    fn orientation_examples() {
        assert!(orientation(w("124")));
        assert!(orientation(w("77")));
        assert!(!orientation(w("777")));
        assert!(!orientation(w("17")));
    }

    #[test]
    fn apex_tile_shares_parent_vertex() {
        let r0 = 1.0;
        let t = tile_polygon(w("2"), r0).unwrap();
        assert!(t.iter().any(|v| close(*v, Vec2::new(0.0, r0))));
    }

    #[test]
    fn central_tile_is_medial_triangle() {
        let r0 = 2.0;
        let parent = initial_triangle(r0).unwrap();
        let mids: Vec<Vec2> = (0..3)
            .map(|i| (parent[i] + parent[(i + 1) % 3]) * 0.5)
            .collect();
        let central = tile_polygon(w("7"), r0).unwrap();
        for m in &mids {
            assert!(
                central.iter().any(|v| close(*v, *m)),
                "{m:?} not a vertex of {central:?}"
            );
        }
    }

    #[test]
    fn depth_one_partitions_parent() {
        let r0 = 1.0;
        let parent = initial_triangle(r0).unwrap();
        let tiles: Vec<_> = Word::all(1)
            .unwrap()
            .map(|b| tile_polygon(b, r0).unwrap())
            .collect();
        let total: f64 = tiles.iter().map(triangle_area).sum();
        assert!((total - triangle_area(&parent)).abs() < 1e-9);
        for t in &tiles {
            let c = (t[0] + t[1] + t[2]) * (1.0 / 3.0);
            assert!(strictly_inside(c, &parent, 0.0));
            for v in t {
                assert!(strictly_inside(*v, &parent, -1e-9));
            }
        }
    }

    #[test]
    fn rho_examples() {
        let id = rho(&Perm::identity());
        assert_eq!(id.m, [[1.0, 0.0], [0.0, 1.0]]);
        let r = rho(&Perm::rotation());
        assert!(close(
            r.apply(elementary_vector(Digit::I)),
            elementary_vector(Digit::J)
        ));
        let c = 120f64.to_radians();
        assert!((r.m[0][0] - c.cos()).abs() < TOL && (r.m[1][0] - c.sin()).abs() < TOL);
        let s = rho(&Perm::reflection(Digit::I).unwrap());
        assert!((s.det() + 1.0).abs() < TOL);
        assert!(close(
            s.apply(elementary_vector(Digit::I)),
            elementary_vector(Digit::I)
        ));
        for p in Perm::all() {
            let m = rho(&p);
            assert!(m.orthogonality_defect() < TOL);
            let expected = if p.is_even() { 1.0 } else { -1.0 };
            assert!((m.det() - expected).abs() < TOL);
        }
    }
}
