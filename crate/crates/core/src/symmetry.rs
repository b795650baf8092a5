//! Digitwise `S3` actions on words and elements.
//!
//! A [`Perm`] permutes the corner digits `{1,2,4}` in every position and
//! always fixes `7`. Even permutations are algebra automorphisms and odd ones
//! (the reflections `τ_a`) are anti-automorphisms, so `τ_a(XY) = τ_a(Y)τ_a(X)`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::algebra::{Element, FloatElement};
use crate::basis::{Digit, Sign, Word};
use crate::error::{Error, Result};
use crate::geometry::{centroid, Vec2};

fn corner_index(d: Digit) -> Option<usize> {
    match d {
        Digit::I => Some(0),
        Digit::J => Some(1),
        Digit::K => Some(2),
        Digit::E => None,
    }
}

/// A permutation of `{1,2,4}`, stored as its images of `1`, `2` and `4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Perm {
    images: [Digit; 3],
    even: bool,
}

impl Perm {
    pub fn from_images(images: [Digit; 3]) -> Result<Perm> {
        let idx: Vec<usize> = images
            .iter()
            .map(|d| {
                corner_index(*d)
                    .ok_or_else(|| Error::Parse("7 is fixed by every permutation".into()))
            })
            .collect::<Result<_>>()?;
        if idx.iter().collect::<BTreeSet<_>>().len() != 3 {
            return Err(Error::Parse(format!("{idx:?} is not a permutation")));
        }
        let inversions = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .filter(|&(i, j)| idx[i] > idx[j])
            .count();
        Ok(Perm {
            images,
            even: inversions % 2 == 0,
        })
    }

    pub fn identity() -> Perm {
        Perm {
            images: Digit::CORNERS,
            even: true,
        }
    }

    /// The 3-cycle `1 -> 2 -> 4 -> 1`.
    pub fn rotation() -> Perm {
        Perm {
            images: [Digit::J, Digit::K, Digit::I],
            even: true,
        }
    }

    /// `τ_a`: the transposition fixing `axis` and swapping the other two
    /// corner digits.
    pub fn reflection(axis: Digit) -> Result<Perm> {
        let images = match axis {
            Digit::I => [Digit::I, Digit::K, Digit::J],
            Digit::J => [Digit::K, Digit::J, Digit::I],
            Digit::K => [Digit::J, Digit::I, Digit::K],
            Digit::E => {
                return Err(Error::Precondition(
                    "reflection axis must be 1, 2 or 4".into(),
                ))
            }
        };
        Ok(Perm {
            images,
            even: false,
        })
    }

    /// All six elements: identity, the two rotations, the three reflections.
    pub fn all() -> [Perm; 6] {
        let r = Perm::rotation();
        let refl = |a| Perm::reflection(a).expect("corner axis");
        [
            Perm::identity(),
            r,
            r.compose(&r),
            refl(Digit::I),
            refl(Digit::J),
            refl(Digit::K),
        ]
    }

    /// Parses `"124->241"` (images listed under their sources, letters also
    /// accepted), the bare image list `"241"`, or one of the aliases `id`, `rot`, `rot2`, `swap24`,
    /// `swap14`, `swap12`.
    pub fn parse(text: &str) -> Result<Perm> {
        let text = text.trim();
        let alias = match text {
            "id" | "identity" => Some(Perm::identity()),
            "rot" => Some(Perm::rotation()),
            "rot2" => Some(Perm::rotation().compose(&Perm::rotation())),
            "swap24" | "swapjk" => Some(Perm::reflection(Digit::I)?),
            "swap14" | "swapik" => Some(Perm::reflection(Digit::J)?),
            "swap12" | "swapij" => Some(Perm::reflection(Digit::K)?),
            _ => None,
        };
        if let Some(p) = alias {
            return Ok(p);
        }
        let (from, to) = match text.split_once("->") {
            Some(pair) => pair,
            None if text.chars().count() == 3 => ("124", text),
            None => return Err(Error::Parse(format!("unknown permutation {text:?}"))),
        };
        let from: Vec<Digit> = from
            .trim()
            .chars()
            .map(Digit::from_char)
            .collect::<Result<_>>()?;
        let to: Vec<Digit> = to
            .trim()
            .chars()
            .map(Digit::from_char)
            .collect::<Result<_>>()?;
        if from.len() != 3 || to.len() != 3 {
            return Err(Error::Parse(format!(
                "permutation {text:?} must list three digits on each side"
            )));
        }
        let mut images = [Digit::E; 3];
        for (src, dst) in from.iter().zip(&to) {
            let slot =
                corner_index(*src).ok_or_else(|| Error::Parse("7 cannot be permuted".into()))?;
            images[slot] = *dst;
        }
        if images.contains(&Digit::E) {
            return Err(Error::Parse(format!(
                "permutation {text:?} must list each of 1,2,4 once"
            )));
        }
        Perm::from_images(images)
    }

    pub fn apply(&self, d: Digit) -> Digit {
        corner_index(d).map_or(Digit::E, |i| self.images[i])
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        let images = Digit::CORNERS.map(|d| self.apply(other.apply(d)));
        Perm {
            images,
            even: self.even == other.even,
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = [Digit::E; 3];
        for d in Digit::CORNERS {
            images[corner_index(self.apply(d)).expect("corner image")] = d;
        }
        Perm {
            images,
            even: self.even,
        }
    }

    pub fn is_even(&self) -> bool {
        self.even
    }

    /// Parity as `±1`.
    pub fn sign(&self) -> Sign {
        Sign::from_parity(!self.even)
    }

    pub fn images(&self) -> [Digit; 3] {
        self.images
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = f.alternate();
        for d in Digit::CORNERS {
            write!(f, "{}", d.to_char(letters))?;
        }
        f.write_str("->")?;
        for d in self.images {
            write!(f, "{}", d.to_char(letters))?;
        }
        Ok(())
    }
}

impl FromStr for Perm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Perm> {
        Perm::parse(s)
    }
}

/// `γ_ab = τ_a ∘ τ_b`.
pub fn gamma(a: Digit, b: Digit) -> Result<Perm> {
    Ok(Perm::reflection(a)?.compose(&Perm::reflection(b)?))
}

pub fn apply_perm_word(pi: &Perm, b: Word) -> Word {
    b.map_digits(|d| pi.apply(d))
}

pub fn apply_perm_element(pi: &Perm, x: &Element) -> Element {
    x.relabel(|w| apply_perm_word(pi, w))
}

pub fn apply_perm_float(pi: &Perm, x: &FloatElement) -> FloatElement {
    x.relabel(|w| apply_perm_word(pi, w))
}

/// `τ_a(X) = X`, exactly.
pub fn is_axis_symmetric(x: &Element, axis: Digit) -> Result<bool> {
    let tau = Perm::reflection(axis)?;
    Ok(apply_perm_element(&tau, x) == *x)
}

/// `τ_a(X) = X` coefficient-wise within `tol`.
pub fn is_axis_symmetric_approx(x: &FloatElement, axis: Digit, tol: f64) -> Result<bool> {
    let tau = Perm::reflection(axis)?;
    Ok(apply_perm_float(&tau, x).max_abs_diff(x) <= tol)
}

/// For `τ_a(X) = X` and `τ_b(Y) = Y`, decides whether `XY = γ_ab(Y) X`,
/// which holds exactly when `XY` is symmetric about the `a` axis.
///
/// The symmetry preconditions are verified; an unmet one is an error.
pub fn twisted_commute_check(x: &Element, y: &Element, a: Digit, b: Digit) -> Result<bool> {
    if !is_axis_symmetric(x, a)? {
        return Err(Error::Precondition(format!(
            "first factor is not symmetric about the {a} axis"
        )));
    }
    if !is_axis_symmetric(y, b)? {
        return Err(Error::Precondition(format!(
            "second factor is not symmetric about the {b} axis"
        )));
    }
    let xy = x.mul(y)?;
    let twisted = apply_perm_element(&gamma(a, b)?, y).mul(x)?;
    Ok(xy == twisted)
}

/// `S_E(n)`: the sum of all corner-only words `{1,2,4}^n`.
pub fn sierpinski_support(n: usize) -> Result<Element> {
    Element::sum_of(n, Word::all(n)?.filter(|w| w.n124() == n))
}

/// A set of 1-based coordinates of a word of order `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoordSubset {
    order: usize,
    positions: BTreeSet<usize>,
}

impl CoordSubset {
    pub fn new(order: usize, positions: impl IntoIterator<Item = usize>) -> Result<CoordSubset> {
        let positions: BTreeSet<usize> = positions.into_iter().collect();
        if let Some(bad) = positions.iter().find(|&&r| r == 0 || r > order) {
            return Err(Error::Precondition(format!(
                "coordinate {bad} outside 1..={order}"
            )));
        }
        Ok(CoordSubset { order, positions })
    }

    pub fn full(order: usize) -> CoordSubset {
        CoordSubset {
            order,
            positions: (1..=order).collect(),
        }
    }

    /// Parses `"1,3,4"` or `"all"`.
    pub fn parse(order: usize, text: &str) -> Result<CoordSubset> {
        if text.trim() == "all" {
            return Ok(CoordSubset::full(order));
        }
        let positions = text
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad coordinate {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        CoordSubset::new(order, positions)
    }

    pub fn contains(&self, position: usize) -> bool {
        self.positions.contains(&position)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn positions(&self) -> impl Iterator<Item = usize> + '_ {
        self.positions.iter().copied()
    }
}

/// `γ_S`: the cycle `1 -> 2 -> 4 -> 1` applied in the coordinates of `S`.
pub fn cycle_coords(b: Word, subset: &CoordSubset) -> Result<Word> {
    if subset.order() != b.len() {
        return Err(Error::LengthMismatch {
            expected: subset.order(),
            found: b.len(),
        });
    }
    let rot = Perm::rotation();
    Ok(subset
        .positions()
        .fold(b, |w, r| w.with_digit(r - 1, rot.apply(w.digit(r - 1)))))
}

/// `(P(b), P(γ_S b), P(γ_S² b))`, the vertices of an equilateral triangle.
///
/// Requires a non-7 digit of `b` inside `S`; otherwise the three points
/// coincide and the call is rejected.
pub fn cyclic_orbit_points(b: Word, subset: &CoordSubset, d1: f64) -> Result<[Vec2; 3]> {
    if subset.order() != b.len() {
        return Err(Error::LengthMismatch {
            expected: subset.order(),
            found: b.len(),
        });
    }
    if subset.positions().all(|r| b.digit(r - 1).is_central()) {
        return Err(Error::Precondition(
            "no non-7 digit at a selected coordinate".into(),
        ));
    }
    let b1 = cycle_coords(b, subset)?;
    let b2 = cycle_coords(b1, subset)?;
    Ok([centroid(b, d1)?, centroid(b1, d1)?, centroid(b2, d1)?])
}
