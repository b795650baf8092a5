//! Coefficient streams of powers and exact linear-recurrence detection.
//!
//! Over order two the algebra complexifies to 4×4 matrices, so every basis
//! coefficient of `X^m` obeys a linear recurrence of order at most four.

use std::fmt;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::algebra::{Element, Rational};
use crate::basis::Word;
use crate::error::{Error, Result};

/// Exact values `a_1, a_2, ...`, indexed from `m = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoeffSeq {
    pub label: String,
    pub values: Vec<Rational>,
}

impl CoeffSeq {
    pub fn new(label: impl Into<String>, values: Vec<Rational>) -> CoeffSeq {
        CoeffSeq {
            label: label.into(),
            values,
        }
    }

    /// `a_m` for `m >= 1`.
    pub fn get(&self, m: usize) -> Option<&Rational> {
        m.checked_sub(1).and_then(|i| self.values.get(i))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scaled(&self, factor: &Rational) -> CoeffSeq {
        CoeffSeq {
            label: format!("{factor}*({})", self.label),
            values: self.values.iter().map(|v| v * factor).collect(),
        }
    }

    /// OEIS b-file: `index value` per line, first index `offset`. Only
    /// integer streams can be exported this way.
    pub fn to_bfile(&self, offset: i64) -> Result<String> {
        if let Some((i, v)) = self
            .values
            .iter()
            .enumerate()
            .find(|(_, v)| !v.is_integer())
        {
            return Err(Error::Precondition(format!(
                "term {} is {v}, not an integer; export numerators and denominators separately",
                i as i64 + offset
            )));
        }
        Ok(bfile_lines(
            self.values.iter().map(|v| v.to_integer()),
            offset,
        ))
    }

    /// Two b-files, numerators and denominators, for rational streams.
    pub fn to_bfile_parts(&self, offset: i64) -> (String, String) {
        (
            bfile_lines(self.values.iter().map(|v| v.numer().clone()), offset),
            bfile_lines(self.values.iter().map(|v| v.denom().clone()), offset),
        )
    }
}

fn bfile_lines<T: fmt::Display>(values: impl Iterator<Item = T>, offset: i64) -> String {
    let mut out = String::new();
    for (i, v) in values.enumerate() {
        writeln!(out, "{} {v}", i as i64 + offset).expect("writing to a String");
    }
    out
}

/// Coefficient of `b` in `X^1, ..., X^m_max`.
pub fn coeff_stream(x: &Element, b: Word, m_max: usize) -> Result<CoeffSeq> {
    Ok(coeff_streams(x, &[b], m_max)?.remove(0))
}

/// One stream per word of `words`, sharing the powers of `x`.
pub fn coeff_streams(x: &Element, words: &[Word], m_max: usize) -> Result<Vec<CoeffSeq>> {
    if let Some(b) = words.iter().find(|b| b.len() != x.order()) {
        return Err(Error::LengthMismatch {
            expected: x.order(),
            found: b.len(),
        });
    }
    let mut values = vec![Vec::with_capacity(m_max); words.len()];
    let mut power = x.clone();
    for m in 1..=m_max {
        for (stream, b) in values.iter_mut().zip(words) {
            stream.push(power.coeff_of(*b)?);
        }
        if m < m_max {
            power = power.mul(x)?;
        }
    }
    Ok(words
        .iter()
        .zip(values)
        .map(|(b, v)| CoeffSeq::new(format!("[{b}]X^m"), v))
        .collect())
}

/// `a_m = c_1 a_{m-1} + ... + c_k a_{m-k}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recurrence {
    pub coeffs: Vec<Rational>,
}

impl Recurrence {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    /// The term following `history`, whose last entry is `a_{m-1}`.
    pub fn next_term(&self, history: &[Rational]) -> Rational {
        self.coeffs
            .iter()
            .zip(history.iter().rev())
            .fold(Rational::zero(), |acc, (c, a)| acc + c * a)
    }

    /// True when every term past the first `order` values follows the rule.
    pub fn holds_on(&self, values: &[Rational]) -> bool {
        (self.order()..values.len())
            .all(|m| self.next_term(&values[m - self.order()..m]) == values[m])
    }

    /// Extends `values` by `count` further terms.
    pub fn extend(&self, values: &[Rational], count: usize) -> Vec<Rational> {
        let mut out = values.to_vec();
        for _ in 0..count {
            let start = out.len().saturating_sub(self.order());
            let next = self.next_term(&out[start..]);
            out.push(next);
        }
        out
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("a(m) = ")?;
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{c}*a(m-{})", i + 1)?;
        }
        Ok(())
    }
}

/// Solves `A c = rhs` exactly; free variables are set to zero. `None` when
/// the system is inconsistent.
fn lcm(a: &BigInt, b: &BigInt) -> BigInt {
    a / a.gcd(b) * b
}

/// Scales a rational row to coprime integers.
fn integer_row(row: &[Rational]) -> Vec<BigInt> {
    let denom = row
        .iter()
        .fold(BigInt::one(), |acc, q| lcm(&acc, q.denom()));
    let mut out: Vec<BigInt> = row
        .iter()
        .map(|q| q.numer() * (&denom / q.denom()))
        .collect();
    reduce_row(&mut out);
    out
}

fn reduce_row(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Exact solve of an overdetermined augmented system `[A | y]` with
/// `unknowns` columns in `A`: fraction-free elimination over the integers,
/// then rational back-substitution. Free variables are set to zero; an
/// inconsistent system gives `None`.
fn solve_exact(rows: Vec<Vec<Rational>>, unknowns: usize) -> Option<Vec<Rational>> {
    let mut rows: Vec<Vec<BigInt>> = rows.iter().map(|r| integer_row(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let (head, tail) = rows.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut().filter(|row| !row[col].is_zero()) {
            let (p, f) = (pivot_row[col].clone(), row[col].clone());
            for j in col..=unknowns {
                row[j] = &row[j] * &p - &pivot_row[j] * &f;
            }
            reduce_row(row);
        }
        pivots.push(col);
        r += 1;
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut solution = vec![Rational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate().rev() {
        let row = &rows[i];
        let mut acc = Rational::from_integer(row[unknowns].clone());
        for &other in &pivots[i + 1..] {
            acc -= Rational::from_integer(row[other].clone()) * &solution[other];
        }
        solution[col] = acc / Rational::from_integer(row[col].clone());
    }
    Some(solution)
}

/// Minimal-order exact recurrence (order at most `max_order`) satisfied by
/// every supplied term.
///
/// Orders are tried in increasing sequence; at each order `k` the
/// overdetermined Hankel system `a_m = Σ c_i a_{m-i}`, `m > k`, is solved
/// exactly. An all-zero stream yields the order-0 recurrence `a(m) = 0`.
/// `Ok(None)` means no recurrence of order `<= max_order` fits.
pub fn find_recurrence(seq: &CoeffSeq, max_order: usize) -> Result<Option<Recurrence>> {
    let values = &seq.values;
    let needed = 2 * max_order + 2;
    if values.len() < needed {
        return Err(Error::Precondition(format!(
            "need at least {needed} terms for max order {max_order}, got {}",
            values.len()
        )));
    }
    if values.iter().all(Zero::is_zero) {
        return Ok(Some(Recurrence { coeffs: Vec::new() }));
    }
    for k in 1..=max_order {
        let rows: Vec<Vec<Rational>> = (k..values.len())
            .map(|m| {
                let mut row: Vec<Rational> = (1..=k).map(|i| values[m - i].clone()).collect();
                row.push(values[m].clone());
                row
            })
            .collect();
        if let Some(coeffs) = solve_exact(rows, k) {
            let rec = Recurrence { coeffs };
            debug_assert!(rec.holds_on(values));
            return Ok(Some(rec));
        }
    }
    Ok(None)
}

fn quarter_sum(order: usize, words: &[(&str, i64)]) -> Result<Element> {
    let terms = words
        .iter()
        .map(|(w, q)| Ok((Word::parse(w)?, Rational::new((*q).into(), 4.into()))))
        .collect::<Result<Vec<_>>>()?;
    Element::from_terms(order, terms)
}

/// `E' = ¼(ie+ei+ii+jj+kk+jk+kj+ee)`, `X = A·ei + B·ej + C·ek`, `Z = E'X`.
///
/// `Z³ + A Z² + BC Z = 0`, so every coefficient stream of `Z` obeys
/// `a_m = -A a_{m-1} - BC a_{m-2}`.
pub fn build_fibonacci_pair(
    a: &Rational,
    b: &Rational,
    c: &Rational,
) -> Result<(Element, Element, Element)> {
    let e_prime = quarter_sum(
        2,
        &[
            ("ie", 1),
            ("ei", 1),
            ("ii", 1),
            ("jj", 1),
            ("kk", 1),
            ("jk", 1),
            ("kj", 1),
            ("ee", 1),
        ],
    )?;
    let x = Element::from_terms(
        2,
        [
            (Word::parse("ei")?, a.clone()),
            (Word::parse("ej")?, b.clone()),
            (Word::parse("ek")?, c.clone()),
        ],
    )?;
    let z = e_prime.mul(&x)?;
    Ok((e_prime, x, z))
}

/// `E = ¼(3ee+ii+jj-kk)`, `X = ½(ie+ij+ik-je+ji+kj)`, `Y = EX`, with
/// `Y⁴ = Y² + Y`.
pub fn build_padovan_pair() -> Result<(Element, Element, Element)> {
    let e = quarter_sum(2, &[("ee", 3), ("ii", 1), ("jj", 1), ("kk", -1)])?;
    let x = quarter_sum(
        2,
        &[
            ("ie", 2),
            ("ij", 2),
            ("ik", 2),
            ("je", -2),
            ("ji", 2),
            ("kj", 2),
        ],
    )?;
    let y = e.mul(&x)?;
    Ok((e, x, y))
}
