//! Centralizer tiles of basis words.
//!
//! For a word `b`, the tiles that commute with it split into `plus` and
//! `minus` by the sign of the common product `cb = bc`. The split is by the
//! sign of that product, not commutation versus anticommutation: every tile in
//! either set commutes with `b`.

use std::thread;

use crate::algebra::Element;
use crate::basis::{fast_mul, mul_lanes, Sign, Word};
use crate::error::{Error, Result};

/// Largest order for which a full scan over `4^n` words is allowed.
pub const SCAN_CAP: usize = 12;

/// `c` centralizes `b` iff `bc` and `cb` carry the same sign; the underlying
/// words always agree, so otherwise `bc = -cb`.
pub fn commutes(b: Word, c: Word) -> Result<bool> {
    Ok(fast_mul(b, c)?.sign == fast_mul(c, b)?.sign)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralizerTiles {
    pub base: Word,
    /// Commuting tiles whose product with `base` is positive, canonical order.
    pub plus: Vec<Word>,
    /// Commuting tiles whose product with `base` is negative, canonical order.
    pub minus: Vec<Word>,
}

impl CentralizerTiles {
    pub fn len(&self) -> usize {
        self.plus.len() + self.minus.len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, c: Word) -> bool {
        self.plus.binary_search(&c).is_ok() || self.minus.binary_search(&c).is_ok()
    }
}

fn check_scan(b: Word) -> Result<()> {
    if b.len() > SCAN_CAP {
        return Err(Error::ScanTooLarge {
            order: b.len(),
            cap: SCAN_CAP,
        });
    }
    Ok(())
}

/// Scans `[lo, hi)` of packed words; calls `sink(bits, sign)` for every
/// commuting word.
fn scan_range(b: Word, lo: u64, hi: u64, mut sink: impl FnMut(u64, Sign)) {
    let n = b.len();
    let bb = b.packed().0;
    for c in lo..hi {
        let (s1, _) = mul_lanes(c, bb, n);
        let (s2, _) = mul_lanes(bb, c, n);
        if s1 == s2 {
            sink(c, s1);
        }
    }
}

/// Splits `0..4^n` into `threads` contiguous shards and runs `work` on each;
/// results come back in shard order.
fn sharded<T: Send>(n: usize, threads: usize, work: impl Fn(u64, u64) -> T + Sync) -> Vec<T> {
    let total = 1u64 << (2 * n);
    let threads = threads.clamp(1, 64) as u64;
    let chunk = total.div_ceil(threads);
    let bounds: Vec<(u64, u64)> = (0..threads)
        .map(|t| (t * chunk, ((t + 1) * chunk).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect();
    if bounds.len() == 1 {
        return vec![work(bounds[0].0, bounds[0].1)];
    }
    thread::scope(|s| {
        let handles: Vec<_> = bounds
            .iter()
            .map(|&(lo, hi)| {
                let work = &work;
                s.spawn(move || work(lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    })
}

pub fn centralizer_tiles(b: Word) -> Result<CentralizerTiles> {
    centralizer_tiles_with_threads(b, 1)
}

/// Full enumeration, sharded over `threads` workers. The output does not
/// depend on the worker count.
pub fn centralizer_tiles_with_threads(b: Word, threads: usize) -> Result<CentralizerTiles> {
    check_scan(b)?;
    let n = b.len();
    let shards = sharded(n, threads, |lo, hi| {
        let (mut plus, mut minus) = (Vec::new(), Vec::new());
        scan_range(b, lo, hi, |c, s| {
            let w = Word::from_bits_unchecked(c, n);
            match s {
                Sign::Plus => plus.push(w),
                Sign::Minus => minus.push(w),
            }
        });
        (plus, minus)
    });
    let (mut plus, mut minus) = (Vec::new(), Vec::new());
    for (p, m) in shards {
        plus.extend(p);
        minus.extend(m);
    }
    Ok(CentralizerTiles {
        base: b,
        plus,
        minus,
    })
}

/// `(|plus|, |minus|)` without materializing the sets.
pub fn centralizer_counts(b: Word, threads: usize) -> Result<(u64, u64)> {
    check_scan(b)?;
    let shards = sharded(b.len(), threads, |lo, hi| {
        let (mut plus, mut minus) = (0u64, 0u64);
        scan_range(b, lo, hi, |_, s| match s {
            Sign::Plus => plus += 1,
            Sign::Minus => minus += 1,
        });
        (plus, minus)
    });
    Ok(shards
        .into_iter()
        .fold((0, 0), |(p, m), (dp, dm)| (p + dp, m + dm)))
}

/// Order of the centralizer of `b` in the signed group: each commuting tile
/// `c` contributes both `c` and `-c`, giving `4^n` for `b != e_n`.
///
/// The identity word is central; that case is reported as
/// [`Error::CentralWord`] carrying the full group order `2·4^n`.
pub fn signed_centralizer_order(b: Word) -> Result<u128> {
    if b.is_identity() {
        return Err(Error::CentralWord {
            group_order: 2u128 << (2 * b.len()),
        });
    }
    let (plus, minus) = centralizer_counts(b, 1)?;
    Ok(2 * u128::from(plus + minus))
}

/// `(Σ_+(b), Σ_-(b))`: the plus and minus tiles summed with unit coefficients.
pub fn sigma_sums(b: Word) -> Result<(Element, Element)> {
    let tiles = centralizer_tiles(b)?;
    Ok((
        Element::sum_of(b.len(), tiles.plus)?,
        Element::sum_of(b.len(), tiles.minus)?,
    ))
}

/// For `b² = e_n`, checks `Σ_-Σ_+ = 0` and `Σ_+Σ_- = 0` exactly.
pub fn check_vanishing(b: Word) -> Result<bool> {
    if b.n124() % 2 == 1 {
        return Err(Error::Precondition(format!(
            "{b}² = -e_n; vanishing needs b² = e_n"
        )));
    }
    let (plus, minus) = sigma_sums(b)?;
    Ok(minus.mul(&plus)?.is_zero() && plus.mul(&minus)?.is_zero())
}
