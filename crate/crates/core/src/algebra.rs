//! Exact linear combinations of basis words.
//!
//! An [`Element`] is a finite map from words of one order to exact rational
//! coefficients. Zero coefficients are never stored, so structural equality
//! is algebraic equality. Terms are kept in canonical packed-word order.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::basis::{check_order, fast_mul, Sign, SignedWord, Word};
use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Default number of series terms for [`FloatElement::exp_truncated`].
pub const DEFAULT_EXP_TERMS: usize = 20;

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn parse_rational(text: &str) -> Result<Rational> {
    let text = text.trim();
    let bad = || Error::Parse(format!("invalid rational {text:?}"));
    match text.split_once('/') {
        Some((num, den)) => {
            let num: BigInt = num.trim().parse().map_err(|_| bad())?;
            let den: BigInt = den.trim().parse().map_err(|_| bad())?;
            if den.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {text:?}")));
            }
            Ok(Rational::new(num, den))
        }
        None => Ok(Rational::from_integer(text.parse().map_err(|_| bad())?)),
    }
}

fn signed(sign: Sign, q: Rational) -> Rational {
    match sign {
        Sign::Plus => q,
        Sign::Minus => -q,
    }
}

/// A member of the real algebra spanned by the words of order `n`, with
/// exact rational coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Element {
    order: usize,
    terms: BTreeMap<Word, Rational>,
}

impl Element {
    pub fn zero(order: usize) -> Result<Element> {
        check_order(order)?;
        Ok(Element {
            order,
            terms: BTreeMap::new(),
        })
    }

    /// `1 · e_n`.
    pub fn identity(order: usize) -> Result<Element> {
        Ok(Element::from_word(Word::identity(order)?))
    }

    pub fn from_word(word: Word) -> Element {
        Element::from_signed(SignedWord::positive(word))
    }

    pub fn from_signed(word: SignedWord) -> Element {
        let coeff = signed(word.sign, Rational::one());
        Element {
            order: word.word.len(),
            terms: BTreeMap::from([(word.word, coeff)]),
        }
    }

    /// Sums the given terms; repeated words accumulate.
    pub fn from_terms(
        order: usize,
        terms: impl IntoIterator<Item = (Word, Rational)>,
    ) -> Result<Element> {
        let mut out = Element::zero(order)?;
        for (word, coeff) in terms {
            out.check_word(word)?;
            out.accumulate(word, coeff);
        }
        Ok(out)
    }

    /// Sum of the given words, each with coefficient one.
    pub fn sum_of(order: usize, words: impl IntoIterator<Item = Word>) -> Result<Element> {
        Element::from_terms(order, words.into_iter().map(|w| (w, Rational::one())))
    }

    /// Parses a compact term list such as `"1/2*ij, -kk, 3*77"`.
    pub fn parse_terms(text: &str) -> Result<Element> {
        let mut parsed = Vec::new();
        for raw in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (coeff, word) = match raw.rsplit_once('*') {
                Some((c, w)) => (parse_rational(c)?, w.trim()),
                None => match raw.strip_prefix('-') {
                    Some(w) => (-Rational::one(), w.trim()),
                    None => (Rational::one(), raw.strip_prefix('+').unwrap_or(raw).trim()),
                },
            };
            parsed.push((Word::parse(word)?, coeff));
        }
        let order = parsed
            .first()
            .map(|(w, _)| w.len())
            .ok_or_else(|| Error::Parse("empty term list".into()))?;
        Element::from_terms(order, parsed)
    }

    fn check_word(&self, word: Word) -> Result<()> {
        if word.len() != self.order {
            return Err(Error::LengthMismatch {
                expected: self.order,
                found: word.len(),
            });
        }
        Ok(())
    }

    fn check_same_order(&self, other: &Element) -> Result<()> {
        if self.order != other.order {
            return Err(Error::LengthMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        Ok(())
    }

    fn accumulate(&mut self, word: Word, coeff: Rational) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(word).or_insert_with(Rational::zero);
        *slot += coeff;
        if slot.is_zero() {
            self.terms.remove(&word);
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn support_len(&self) -> usize {
        self.terms.len()
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Word, &Rational)> {
        self.terms.iter().map(|(w, q)| (*w, q))
    }

    pub fn support(&self) -> impl Iterator<Item = Word> + '_ {
        self.terms.keys().copied()
    }

    pub fn coeff_of(&self, word: Word) -> Result<Rational> {
        self.check_word(word)?;
        Ok(self
            .terms
            .get(&word)
            .cloned()
            .unwrap_or_else(Rational::zero))
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        self.check_same_order(other)?;
        let mut out = self.clone();
        for (w, q) in &other.terms {
            out.accumulate(*w, q.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Element {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, factor: &Rational) -> Element {
        if factor.is_zero() {
            return Element {
                order: self.order,
                terms: BTreeMap::new(),
            };
        }
        let terms = self.terms.iter().map(|(w, q)| (*w, q * factor)).collect();
        Element {
            order: self.order,
            terms,
        }
    }

    /// Bilinear product over the word basis.
    pub fn mul(&self, other: &Element) -> Result<Element> {
        self.check_same_order(other)?;
        let mut out = Element {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (b, q) in &self.terms {
            for (c, r) in &other.terms {
                let bc = fast_mul(*b, *c)?;
                out.accumulate(bc.word, signed(bc.sign, q * r));
            }
        }
        Ok(out)
    }

    /// `X^m` by square-and-multiply; `X^0 = e_n`.
    pub fn pow(&self, mut exponent: u32) -> Element {
        let mut result = Element::identity(self.order).expect("order already validated");
        let mut base = self.clone();
        while exponent > 0 {
            if exponent & 1 == 1 {
                result = result.mul(&base).expect("same order");
            }
            exponent >>= 1;
            if exponent > 0 {
                base = base.mul(&base).expect("same order");
            }
        }
        result
    }

    /// Digitwise quaternionic conjugation: `b -> (-1)^{N124(b)} b`.
    pub fn kappa(&self) -> Element {
        let terms = self
            .terms
            .iter()
            .map(|(w, q)| (*w, signed(w.square_sign(), q.clone())))
            .collect();
        Element {
            order: self.order,
            terms,
        }
    }

    /// Splits by the parity of `N124` on each word: `(even, odd)`.
    pub fn parity_split(&self) -> (Element, Element) {
        let (odd, even): (BTreeMap<_, _>, BTreeMap<_, _>) = self
            .terms
            .iter()
            .map(|(w, q)| (*w, q.clone()))
            .partition(|(w, _)| w.n124() % 2 == 1);
        (
            Element {
                order: self.order,
                terms: even,
            },
            Element {
                order: self.order,
                terms: odd,
            },
        )
    }

    pub fn even_part(&self) -> Element {
        self.parity_split().0
    }

    pub fn odd_part(&self) -> Element {
        self.parity_split().1
    }

    /// `X^2` via the pair decomposition: diagonal terms `q_c^2 c^2` plus
    /// `2 q_c q_d cd` for each unordered pair that commutes. Anticommuting
    /// pairs cancel and are skipped.
    pub fn square_by_pairs(&self) -> Element {
        let mut out = Element {
            order: self.order,
            terms: BTreeMap::new(),
        };
        let terms: Vec<(Word, &Rational)> = self.terms().collect();
        for (idx, (c, qc)) in terms.iter().enumerate() {
            let square = SignedWord::new(
                c.square_sign(),
                Word::identity(self.order).expect("valid order"),
            );
            out.accumulate(square.word, signed(square.sign, *qc * *qc));
            for (d, qd) in &terms[idx + 1..] {
                let cd = fast_mul(*c, *d).expect("same order");
                let dc = fast_mul(*d, *c).expect("same order");
                if cd.sign == dc.sign {
                    let two = Rational::from_integer(BigInt::from(2));
                    out.accumulate(cd.word, signed(cd.sign, two * *qc * *qd));
                }
            }
        }
        out
    }

    /// Renames every word through `f`, carrying coefficients along.
    pub fn relabel(&self, mut f: impl FnMut(Word) -> Word) -> Element {
        let mut out = Element {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (w, q) in &self.terms {
            out.accumulate(f(*w), q.clone());
        }
        out
    }

    pub fn to_float(&self) -> FloatElement {
        let terms = self
            .terms
            .iter()
            .map(|(w, q)| (*w, q.to_f64().unwrap_or(f64::NAN)))
            .collect();
        FloatElement {
            order: self.order,
            terms,
        }
    }

    pub fn to_json(&self, letters: bool) -> String {
        serde_json::to_string_pretty(&self.to_json_value(letters)).expect("plain data serializes")
    }

    pub fn to_json_value(&self, letters: bool) -> serde_json::Value {
        let doc = ElementJson {
            order: self.order,
            terms: self
                .terms
                .iter()
                .map(|(w, q)| TermJson {
                    word: if letters {
                        w.to_letters()
                    } else {
                        w.to_string()
                    },
                    coeff: q.to_string(),
                })
                .collect(),
        };
        serde_json::to_value(doc).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Element> {
        let doc: ElementJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        let terms = doc
            .terms
            .iter()
            .map(|t| Ok((Word::parse(&t.word)?, parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        Element::from_terms(doc.order, terms)
    }
}

impl fmt::Display for Element {
    /// `3/2*124 + -1*777`; `{:#}` spells words with letters. Zero prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (idx, (w, q)) in self.terms.iter().enumerate() {
            if idx > 0 {
                f.write_str(" + ")?;
            }
            if f.alternate() {
                write!(f, "{q}*{w:#}")?;
            } else {
                write!(f, "{q}*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Element[{}]({})", self.order, self)
    }
}

#[derive(Serialize, Deserialize)]
struct ElementJson {
    order: usize,
    terms: Vec<TermJson>,
}

#[derive(Serialize, Deserialize)]
struct TermJson {
    word: String,
    coeff: String,
}

/// Double-precision counterpart of [`Element`], used for the exponential.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatElement {
    order: usize,
    terms: BTreeMap<Word, f64>,
}

impl FloatElement {
    pub fn zero(order: usize) -> Result<FloatElement> {
        check_order(order)?;
        Ok(FloatElement {
            order,
            terms: BTreeMap::new(),
        })
    }

    pub fn identity(order: usize) -> Result<FloatElement> {
        let mut out = FloatElement::zero(order)?;
        out.terms.insert(Word::identity(order)?, 1.0);
        Ok(out)
    }

    pub fn from_terms(
        order: usize,
        terms: impl IntoIterator<Item = (Word, f64)>,
    ) -> Result<FloatElement> {
        let mut out = FloatElement::zero(order)?;
        for (w, x) in terms {
            if w.len() != order {
                return Err(Error::LengthMismatch {
                    expected: order,
                    found: w.len(),
                });
            }
            *out.terms.entry(w).or_insert(0.0) += x;
        }
        Ok(out)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, word: Word) -> f64 {
        self.terms.get(&word).copied().unwrap_or(0.0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Word, f64)> + '_ {
        self.terms.iter().map(|(w, x)| (*w, *x))
    }

    pub fn scale(&self, factor: f64) -> FloatElement {
        let terms = self.terms.iter().map(|(w, x)| (*w, x * factor)).collect();
        FloatElement {
            order: self.order,
            terms,
        }
    }

    pub fn add(&self, other: &FloatElement) -> Result<FloatElement> {
        if self.order != other.order {
            return Err(Error::LengthMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        let mut out = self.clone();
        for (w, x) in &other.terms {
            *out.terms.entry(*w).or_insert(0.0) += x;
        }
        Ok(out)
    }

    pub fn mul(&self, other: &FloatElement) -> Result<FloatElement> {
        if self.order != other.order {
            return Err(Error::LengthMismatch {
                expected: self.order,
                found: other.order,
            });
        }
        let mut out = FloatElement {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (b, x) in &self.terms {
            for (c, y) in &other.terms {
                let bc = fast_mul(*b, *c)?;
                *out.terms.entry(bc.word).or_insert(0.0) += f64::from(bc.sign.value()) * x * y;
            }
        }
        Ok(out)
    }

    /// `sum_{m < terms} X^m / m!`.
    pub fn exp_truncated(&self, terms: usize) -> Result<FloatElement> {
        if terms == 0 {
            return Err(Error::Precondition(
                "exponential needs at least one term".into(),
            ));
        }
        let mut power = FloatElement::identity(self.order)?;
        let mut sum = power.clone();
        for m in 1..terms {
            power = power.mul(self)?.scale(1.0 / m as f64);
            sum = sum.add(&power)?;
        }
        Ok(sum)
    }

    pub fn relabel(&self, mut f: impl FnMut(Word) -> Word) -> FloatElement {
        let mut out = FloatElement {
            order: self.order,
            terms: BTreeMap::new(),
        };
        for (w, x) in &self.terms {
            *out.terms.entry(f(*w)).or_insert(0.0) += x;
        }
        out
    }

    /// Largest coefficient-wise absolute difference.
    pub fn max_abs_diff(&self, other: &FloatElement) -> f64 {
        self.terms
            .keys()
            .chain(other.terms.keys())
            .map(|w| (self.get(*w) - other.get(*w)).abs())
            .fold(0.0, f64::max)
    }
}
