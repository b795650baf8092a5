//! Test-only oracles, independent of the XNOR/AND kernel.
#![allow(dead_code)]

use floretion::algebra::{rational, Element, Rational};
use floretion::{Digit, Sign, SignedWord, Word};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::Rng;

/// The quaternion multiplication table, written out by hand in the
/// `i, j, k, e` row/column order.
pub fn table(x: Digit, y: Digit) -> (i8, Digit) {
    use Digit::*;
    let idx = |d: Digit| match d {
        I => 0,
        J => 1,
        K => 2,
        E => 3,
    };
    const T: [[(i8, Digit); 4]; 4] = [
        [(-1, E), (1, K), (-1, J), (1, I)],
        [(-1, K), (-1, E), (1, I), (1, J)],
        [(1, J), (-1, I), (-1, E), (1, K)],
        [(1, I), (1, J), (1, K), (1, E)],
    ];
    T[idx(x)][idx(y)]
}

/// Word product from the literal table, position by position.
pub fn table_mul(a: Word, b: Word) -> (i8, Word) {
    let mut sign = 1i8;
    let mut digits = Vec::new();
    for (x, y) in a.digits().zip(b.digits()) {
        let (s, d) = table(x, y);
        sign *= s;
        digits.push(d);
    }
    (sign, Word::new(&digits).unwrap())
}

pub fn signed_table_mul(a: (i8, Word), b: (i8, Word)) -> (i8, Word) {
    let (s, w) = table_mul(a.1, b.1);
    (a.0 * b.0 * s, w)
}

pub fn as_pair(s: SignedWord) -> (i8, Word) {
    (s.sign.value(), s.word)
}

pub fn sign_of(v: i8) -> Sign {
    if v < 0 {
        Sign::Minus
    } else {
        Sign::Plus
    }
}

/// All `2·4^n` signed words.
pub fn signed_group(n: usize) -> Vec<(i8, Word)> {
    Word::all(n)
        .unwrap()
        .flat_map(|w| [(1, w), (-1, w)])
        .collect()
}

pub fn random_word(rng: &mut StdRng, n: usize) -> Word {
    let digits: Vec<Digit> = (0..n).map(|_| Digit::ALL[rng.gen_range(0..4)]).collect();
    Word::new(&digits).unwrap()
}

pub fn random_rational(rng: &mut StdRng) -> Rational {
    rational(rng.gen_range(-9..=9), rng.gen_range(1..=6))
}

/// Random element with `support` random terms (duplicates accumulate).
pub fn random_element(rng: &mut StdRng, n: usize, support: usize) -> Element {
    let terms: Vec<_> = (0..support)
        .map(|_| (random_word(rng, n), random_rational(rng)))
        .collect();
    Element::from_terms(n, terms).unwrap()
}

pub fn word_strategy(n: usize) -> impl Strategy<Value = Word> {
    proptest::collection::vec(0usize..4, n).prop_map(|v| {
        let digits: Vec<Digit> = v.into_iter().map(|i| Digit::ALL[i]).collect();
        Word::new(&digits).unwrap()
    })
}

pub fn rational_strategy() -> impl Strategy<Value = Rational> {
    (-12i64..=12, 1i64..=8).prop_map(|(p, q)| rational(p, q))
}

pub fn element_strategy(n: usize, max_support: usize) -> impl Strategy<Value = Element> {
    proptest::collection::vec((word_strategy(n), rational_strategy()), 0..=max_support)
        .prop_map(move |terms| Element::from_terms(n, terms).unwrap())
}

/// Element product computed through the literal table.
pub fn table_elem_mul(x: &Element, y: &Element) -> Element {
    let mut terms = Vec::new();
    for (b, q) in x.terms() {
        for (c, r) in y.terms() {
            let (s, w) = table_mul(b, c);
            let coeff = q * r;
            terms.push((w, if s < 0 { -coeff } else { coeff }));
        }
    }
    Element::from_terms(x.order(), terms).unwrap()
}
