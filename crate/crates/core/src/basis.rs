//! Digits, words and the signed basis group.
//!
//! A word of order `n` is a string of `n` digits over `{1,2,4,7}`, spelled
//! interchangeably with the quaternionic letters `i,j,k,e`. Each digit carries
//! a two-bit code `(a,b)`:
//!
//! | digit | letter | code |
//! |-------|--------|------|
//! | 1     | i      | 00   |
//! | 2     | j      | 01   |
//! | 4     | k      | 10   |
//! | 7     | e      | 11   |
//!
//! Two digits multiply by the XNOR/AND rule: the unsigned result is
//! `(a⊙c, b⊙d)` and the sign is `(-1)^(m+1)` with
//! `m = (b&c) + ((a⊙b)&d) + (a&(c⊙d))`. Words multiply position by position
//! and the local signs are collected into one global sign.
//!
//! Words are stored packed, two bits per digit. Position 1 (the leftmost
//! digit) sits in the least-significant lane, and within a lane the `a` bit is
//! the high bit, so the lane value is `2a + b`: `1 -> 0`, `2 -> 1`, `4 -> 2`,
//! `7 -> 3`.

use std::fmt;
use std::ops::{Mul, Neg};
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest supported order: 32 digits fill the 64-bit lane field.
pub const MAX_ORDER: usize = 32;

/// Low bit of every lane.
const LANE_LO: u64 = 0x5555_5555_5555_5555;

/// One of the four basis symbols of the quaternions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(u8)]
pub enum Digit {
    I = 1,
    J = 2,
    K = 4,
    E = 7,
}

impl Digit {
    pub const ALL: [Digit; 4] = [Digit::I, Digit::J, Digit::K, Digit::E];
    /// The three non-central digits, which label the corner subtriangles.
    pub const CORNERS: [Digit; 3] = [Digit::I, Digit::J, Digit::K];

    pub fn value(self) -> u8 {
        self as u8
    }

    /// The two-bit code `(a, b)`.
    pub fn code(self) -> (u8, u8) {
        match self {
            Digit::I => (0, 0),
            Digit::J => (0, 1),
            Digit::K => (1, 0),
            Digit::E => (1, 1),
        }
    }

    pub fn from_code(a: u8, b: u8) -> Digit {
        match (a & 1, b & 1) {
            (0, 0) => Digit::I,
            (0, 1) => Digit::J,
            (1, 0) => Digit::K,
            _ => Digit::E,
        }
    }

    fn lane(self) -> u64 {
        let (a, b) = self.code();
        u64::from(2 * a + b)
    }

    fn from_lane(lane: u64) -> Digit {
        Digit::from_code(((lane >> 1) & 1) as u8, (lane & 1) as u8)
    }

    pub fn from_value(value: u8) -> Result<Digit> {
        match value {
            1 => Ok(Digit::I),
            2 => Ok(Digit::J),
            4 => Ok(Digit::K),
            7 => Ok(Digit::E),
            _ => Err(Error::InvalidDigit(char::from(b'0' + value.min(9)))),
        }
    }

    /// Accepts both spellings: `1247` and `ijke`.
    pub fn from_char(c: char) -> Result<Digit> {
        match c {
            '1' | 'i' => Ok(Digit::I),
            '2' | 'j' => Ok(Digit::J),
            '4' | 'k' => Ok(Digit::K),
            '7' | 'e' => Ok(Digit::E),
            other => Err(Error::InvalidDigit(other)),
        }
    }

    pub fn to_char(self, letters: bool) -> char {
        match (self, letters) {
            (Digit::I, false) => '1',
            (Digit::J, false) => '2',
            (Digit::K, false) => '4',
            (Digit::E, false) => '7',
            (Digit::I, true) => 'i',
            (Digit::J, true) => 'j',
            (Digit::K, true) => 'k',
            (Digit::E, true) => 'e',
        }
    }

    pub fn is_central(self) -> bool {
        self == Digit::E
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_char(f.alternate()))
    }
}

/// A global sign, always `+1` or `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[repr(i8)]
pub enum Sign {
    Minus = -1,
    Plus = 1,
}

impl Sign {
    pub fn value(self) -> i8 {
        self as i8
    }

    /// `(-1)^k` for a count `k` of the given parity.
    pub fn from_parity(odd: bool) -> Sign {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn is_negative(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self != rhs)
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Bitwise XNOR of two single bits.
fn xnor(x: u8, y: u8) -> u8 {
    !(x ^ y) & 1
}

/// Local product of two digits by the XNOR/AND rule.
pub fn local_mul(x: Digit, y: Digit) -> (Sign, Digit) {
    let (a, b) = x.code();
    let (c, d) = y.code();
    let m = (b & c) + (xnor(a, b) & d) + (a & xnor(c, d));
    let sign = Sign::from_parity((m + 1) % 2 == 1);
    (sign, Digit::from_code(xnor(a, c), xnor(b, d)))
}

/// Mask covering the `2n` low bits that hold a word of order `n`.
pub(crate) fn lane_mask(n: usize) -> u64 {
    if n >= 32 {
        u64::MAX
    } else {
        (1u64 << (2 * n)) - 1
    }
}

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n == 0 {
        Err(Error::EmptyWord)
    } else if n > MAX_ORDER {
        Err(Error::OrderTooLarge(n))
    } else {
        Ok(())
    }
}

/// A positive basis word of fixed order.
///
/// Ordering is by packed value, which is the canonical term order used for
/// serialization.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    bits: u64,
    len: u8,
}

impl Word {
    pub fn new(digits: &[Digit]) -> Result<Word> {
        check_order(digits.len())?;
        let bits = digits
            .iter()
            .enumerate()
            .fold(0u64, |acc, (r, d)| acc | (d.lane() << (2 * r)));
        Ok(Word {
            bits,
            len: digits.len() as u8,
        })
    }

    /// The all-7 word `e_n`.
    pub fn identity(n: usize) -> Result<Word> {
        check_order(n)?;
        Ok(Word {
            bits: lane_mask(n),
            len: n as u8,
        })
    }

    pub fn parse(text: &str) -> Result<Word> {
        let digits = text
            .trim()
            .chars()
            .map(Digit::from_char)
            .collect::<Result<Vec<_>>>()?;
        Word::new(&digits)
    }

    pub fn from_packed(packed: PackedWord, n: usize) -> Result<Word> {
        check_order(n)?;
        if packed.0 & !lane_mask(n) != 0 {
            return Err(Error::StrayBits { lanes: 2 * n });
        }
        Ok(Word {
            bits: packed.0,
            len: n as u8,
        })
    }

    pub(crate) fn from_bits_unchecked(bits: u64, n: usize) -> Word {
        Word { bits, len: n as u8 }
    }

    pub fn packed(self) -> PackedWord {
        PackedWord(self.bits)
    }

    pub fn len(self) -> usize {
        usize::from(self.len)
    }

    pub fn is_empty(self) -> bool {
        self.len == 0
    }

    /// Digit at zero-based position `index` (position 1 of the word is index 0).
    pub fn digit(self, index: usize) -> Digit {
        assert!(index < self.len(), "digit index {index} out of range");
        Digit::from_lane((self.bits >> (2 * index)) & 3)
    }

    pub fn digits(self) -> impl DoubleEndedIterator<Item = Digit> + ExactSizeIterator {
        (0..self.len()).map(move |r| self.digit(r))
    }

    pub fn with_digit(self, index: usize, digit: Digit) -> Word {
        assert!(index < self.len(), "digit index {index} out of range");
        let shift = 2 * index;
        let bits = (self.bits & !(3 << shift)) | (digit.lane() << shift);
        Word {
            bits,
            len: self.len,
        }
    }

    /// Applies `f` at every position.
    pub fn map_digits(self, mut f: impl FnMut(Digit) -> Digit) -> Word {
        let digits: Vec<Digit> = self.digits().map(&mut f).collect();
        Word::new(&digits).expect("length is preserved")
    }

    /// Number of non-central digits, `N124`.
    pub fn n124(self) -> usize {
        // a lane equals 3 exactly when both of its bits are set
        let both = (self.bits >> 1) & self.bits & LANE_LO & lane_mask(self.len());
        self.len() - both.count_ones() as usize
    }

    pub fn is_identity(self) -> bool {
        self.bits == lane_mask(self.len())
    }

    /// `b * b = (-1)^{N124(b)} e_n`; this is the sign.
    pub fn square_sign(self) -> Sign {
        Sign::from_parity(self.n124() % 2 == 1)
    }

    /// All `4^n` words of order `n` in canonical (packed) order.
    pub fn all(n: usize) -> Result<impl Iterator<Item = Word>> {
        check_order(n)?;
        if n > 31 {
            return Err(Error::ScanTooLarge { order: n, cap: 31 });
        }
        Ok((0..(1u64 << (2 * n))).map(move |bits| Word { bits, len: n as u8 }))
    }

    pub fn to_letters(self) -> String {
        format!("{self:#}")
    }
}

impl fmt::Display for Word {
    /// Octal digits by default; `{:#}` spells the word with letters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letters = f.alternate();
        for d in self.digits() {
            write!(f, "{}", d.to_char(letters))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({self})")
    }
}

impl FromStr for Word {
    type Err = Error;

    fn from_str(s: &str) -> Result<Word> {
        Word::parse(s)
    }
}

/// `e_n`, the all-7 word.
pub fn identity_word(n: usize) -> Result<Word> {
    Word::identity(n)
}

/// An element `±b` of the signed basis group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedWord {
    pub sign: Sign,
    pub word: Word,
}

impl SignedWord {
    pub fn new(sign: Sign, word: Word) -> SignedWord {
        SignedWord { sign, word }
    }

    pub fn positive(word: Word) -> SignedWord {
        SignedWord {
            sign: Sign::Plus,
            word,
        }
    }

    /// Optional leading `-` or `+`, then a word.
    pub fn parse(text: &str) -> Result<SignedWord> {
        let text = text.trim();
        let (sign, rest) = match text.strip_prefix('-') {
            Some(rest) => (Sign::Minus, rest),
            None => (Sign::Plus, text.strip_prefix('+').unwrap_or(text)),
        };
        Ok(SignedWord {
            sign,
            word: Word::parse(rest)?,
        })
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, rhs: SignedWord) -> Result<SignedWord> {
        let product = word_mul(self.word, rhs.word)?;
        Ok(SignedWord {
            sign: self.sign * rhs.sign * product.sign,
            ..product
        })
    }

    /// `b^{-1} = (-1)^{N124(b)} b`, since `b b = (-1)^{N124(b)} e_n`.
    pub fn inverse(self) -> SignedWord {
        SignedWord {
            sign: self.sign * self.word.square_sign(),
            word: self.word,
        }
    }
}

impl Neg for SignedWord {
    type Output = SignedWord;

    fn neg(self) -> SignedWord {
        SignedWord {
            sign: -self.sign,
            word: self.word,
        }
    }
}

impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sign.is_negative() {
            f.write_str("-")?;
        }
        fmt::Display::fmt(&self.word, f)
    }
}

impl FromStr for SignedWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<SignedWord> {
        SignedWord::parse(s)
    }
}

/// Reference product: local rule at each position, local signs collected.
pub fn word_mul(a: Word, b: Word) -> Result<SignedWord> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let mut sign = Sign::Plus;
    let mut digits = Vec::with_capacity(a.len());
    for (x, y) in a.digits().zip(b.digits()) {
        let (s, d) = local_mul(x, y);
        sign = sign * s;
        digits.push(d);
    }
    Ok(SignedWord {
        sign,
        word: Word::new(&digits)?,
    })
}

/// Raw two-bits-per-digit encoding of a word, without its length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PackedWord(pub u64);

/// Lane-parallel XNOR/AND product of all `n` positions at once.
///
/// The product word is `!(a ^ b)` on the `2n` active bits. Each lane
/// contributes `m_r + 1` to the sign exponent, so the global sign is
/// `(-1)^(n + parity(M))` where `M` is the XOR of the three AND-term masks.
#[inline]
pub(crate) fn mul_lanes(x: u64, y: u64, n: usize) -> (Sign, u64) {
    let mask = lane_mask(n);
    let lo = LANE_LO & mask;
    let (a, b) = ((x >> 1) & lo, x & lo);
    let (c, d) = ((y >> 1) & lo, y & lo);
    let ab = !(a ^ b) & lo;
    let cd = !(c ^ d) & lo;
    let m = (b & c) ^ (ab & d) ^ (a & cd);
    let odd = (m.count_ones() as usize + n) & 1 == 1;
    (Sign::from_parity(odd), !(x ^ y) & mask)
}

/// Product of two packed words of order `n`.
pub fn packed_mul(a: PackedWord, b: PackedWord, n: usize) -> Result<(Sign, PackedWord)> {
    check_order(n)?;
    let mask = lane_mask(n);
    if (a.0 | b.0) & !mask != 0 {
        return Err(Error::StrayBits { lanes: 2 * n });
    }
    let (sign, bits) = mul_lanes(a.0, b.0, n);
    Ok((sign, PackedWord(bits)))
}

/// Packed product of two words, returned as a signed word.
pub fn fast_mul(a: Word, b: Word) -> Result<SignedWord> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            expected: a.len(),
            found: b.len(),
        });
    }
    let (sign, bits) = mul_lanes(a.bits, b.bits, a.len());
    Ok(SignedWord {
        sign,
        word: Word::from_bits_unchecked(bits, a.len()),
    })
}
