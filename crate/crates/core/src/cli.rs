//! Command-line front end.
//!
//! [`run`] executes a parsed [`Cli`] and returns the text meant for stdout;
//! files requested with `--output`, `--svg` or `--bfile` are written as a side
//! effect. The binary is a thin wrapper that maps errors to a one-line
//! diagnostic and a nonzero exit code.

use std::fmt::Write as _;
use std::fs;
use std::hint::black_box;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::algebra::{parse_rational, Element, Rational};
use crate::basis::{packed_mul, word_mul, Digit, SignedWord, Word, MAX_ORDER};
use crate::centralizer::{centralizer_counts, centralizer_tiles_with_threads, check_vanishing};
use crate::error::{Error, Result};
use crate::geometry::{centroid, orientation};
use crate::sequences::{
    build_fibonacci_pair, build_padovan_pair, coeff_stream, find_recurrence, CoeffSeq,
};
use crate::svg::{render_tiling, Highlight, SvgOptions};
use crate::symmetry::{
    apply_perm_element, apply_perm_word, cyclic_orbit_points, is_axis_symmetric, CoordSubset, Perm,
};

/// Deepest tiling the `render` command will draw.
pub const RENDER_DEPTH_CAP: usize = 8;

#[derive(Parser, Debug)]
#[command(
    name = "floretion",
    version,
    about = "Word-basis arithmetic, tilings and centralizers for H^{⊗n}"
)]
pub struct Cli {
    /// Declared order n; every word argument must have this length.
    #[arg(long, global = true)]
    pub order: Option<usize>,

    /// Circumradius R0 of the initial triangle (centroid scale d1 = R0/2).
    #[arg(long, global = true, default_value_t = 1.0)]
    pub r0: f64,

    /// Spell words with i,j,k,e instead of 1,2,4,7.
    #[arg(long, global = true)]
    pub letters: bool,

    /// Print coefficients as floating-point numbers instead of fractions.
    #[arg(long = "float", global = true)]
    pub float: bool,

    /// Output format for elements.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    /// Write the main output to this file instead of stdout.
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    /// Worker threads for exhaustive scans.
    #[arg(long, global = true, default_value_t = 1)]
    pub threads: usize,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone)]
pub struct ElementInput {
    /// Element JSON file.
    #[arg(long, conflicts_with = "terms")]
    pub json: Option<PathBuf>,

    /// Inline term list, e.g. "1/2*ij, -kk, 3*ee".
    #[arg(long)]
    pub terms: Option<String>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Multiply signed words left to right.
    Mul {
        #[arg(num_args = 2.., required = true, allow_hyphen_values = true)]
        words: Vec<String>,
    },
    /// Power of an element.
    Pow {
        #[command(flatten)]
        input: ElementInput,
        #[arg(long)]
        m: u32,
    },
    /// Coefficient of a word in X^m.
    Coeff {
        #[command(flatten)]
        input: ElementInput,
        #[arg(long)]
        word: String,
        #[arg(long, default_value_t = 1)]
        power: u32,
    },
    /// Even and odd parity parts.
    Split {
        #[command(flatten)]
        input: ElementInput,
    },
    /// Digitwise S3 actions.
    Symmetry {
        #[command(subcommand)]
        action: SymmetryAction,
    },
    /// Tile centroid and orientation of a word.
    Centroid { word: String },
    /// SVG of the full depth-n tiling.
    Render {
        n: usize,
        /// Highlight the words in {a,7}^n, the tiles on the a-axis.
        #[arg(long)]
        highlight_axis: Option<String>,
        /// Label every tile with its word.
        #[arg(long)]
        labels: bool,
    },
    /// Centralizer tiles of a word, split by product sign.
    Centralizer {
        word: String,
        #[arg(long)]
        count_only: bool,
        /// Also write an SVG with plus and minus tiles highlighted.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Check that the signed centralizer sums annihilate each other.
    Vanishing { word: String },
    /// Coefficient stream of powers, with optional recurrence and b-file.
    Seq {
        /// Built-in example element.
        #[arg(long, value_enum, conflicts_with_all = ["json", "terms"])]
        appendix: Option<Appendix>,
        /// A,B,C for the Fibonacci example.
        #[arg(long, default_value = "-1,1,-1")]
        abc: String,
        #[command(flatten)]
        input: ElementInput,
        #[arg(long)]
        word: String,
        #[arg(long)]
        mmax: usize,
        /// Multiply every term by this rational.
        #[arg(long)]
        scale: Option<String>,
        /// Search for a recurrence up to this order.
        #[arg(long)]
        recurrence: Option<usize>,
        /// Write an OEIS b-file (integer streams only).
        #[arg(long)]
        bfile: Option<PathBuf>,
        /// Index of the first term in the b-file.
        #[arg(long, default_value_t = 1)]
        offset: i64,
    },
    /// Throughput of the packed kernel against the digitwise reference.
    Bench {
        n: usize,
        #[arg(long, default_value_t = 1_000_000)]
        iterations: usize,
        #[arg(long, default_value_t = 0x5eed)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Appendix {
    Fib,
    Padovan,
}

#[derive(Subcommand, Debug)]
pub enum SymmetryAction {
    /// Apply a permutation to a word or an element.
    Apply {
        #[arg(long)]
        perm: String,
        word: Option<String>,
        #[command(flatten)]
        input: ElementInput,
    },
    /// Is the element fixed by the reflection about an axis?
    Check {
        #[arg(long)]
        axis: String,
        #[command(flatten)]
        input: ElementInput,
    },
    /// Centroids of b, γ_S b, γ_S² b.
    Orbit {
        word: String,
        /// Coordinates (1-based, comma separated) or "all".
        #[arg(long, default_value = "all")]
        subset: String,
    },
}

struct Ctx<'a> {
    cli: &'a Cli,
}

impl Ctx<'_> {
    fn check_len(&self, len: usize) -> Result<()> {
        match self.cli.order {
            Some(n) if n != len => Err(Error::LengthMismatch {
                expected: n,
                found: len,
            }),
            _ => Ok(()),
        }
    }

    fn word(&self, text: &str) -> Result<Word> {
        let w = Word::parse(text)?;
        self.check_len(w.len())?;
        Ok(w)
    }

    fn signed_word(&self, text: &str) -> Result<SignedWord> {
        let w = SignedWord::parse(text)?;
        self.check_len(w.word.len())?;
        Ok(w)
    }

    fn element(&self, input: &ElementInput) -> Result<Element> {
        let x = match (&input.json, &input.terms) {
            (Some(path), _) => Element::from_json(&fs::read_to_string(path)?)?,
            (None, Some(terms)) => Element::parse_terms(terms)?,
            (None, None) => {
                return Err(Error::Parse(
                    "an element is required: pass --json FILE or --terms".into(),
                ))
            }
        };
        self.check_len(x.order())?;
        Ok(x)
    }

    fn show_word(&self, w: impl std::fmt::Display) -> String {
        self.show_word_as(w, self.cli.letters)
    }

    fn show_word_as(&self, w: impl std::fmt::Display, letters: bool) -> String {
        if letters {
            format!("{w:#}")
        } else {
            format!("{w}")
        }
    }

    fn show_coeff(&self, q: &Rational) -> String {
        if self.cli.float {
            format!("{}", q.to_f64().unwrap_or(f64::NAN))
        } else {
            q.to_string()
        }
    }

    fn show_element(&self, x: &Element) -> String {
        if self.cli.format == Format::Json {
            return x.to_json(self.cli.letters);
        }
        if x.is_zero() {
            return "0".into();
        }
        x.terms()
            .map(|(w, q)| format!("{}*{}", self.show_coeff(q), self.show_word(w)))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Words typed as `ijke` are echoed back the same way.
fn spelled_in_letters(text: &str) -> bool {
    text.chars().any(|c| matches!(c, 'i' | 'j' | 'k' | 'e'))
}

fn axis_digit(text: &str) -> Result<Digit> {
    let mut chars = text.trim().chars();
    match (chars.next(), chars.next()) {
        (Some(c), None) => Digit::from_char(c),
        _ => Err(Error::Parse(format!(
            "axis must be a single digit, got {text:?}"
        ))),
    }
}

/// Runs a command and returns its stdout text. When `--output` is set the
/// text goes to that file instead and an empty string is returned.
pub fn run(cli: &Cli) -> Result<String> {
    let text = dispatch(cli)?;
    match &cli.output {
        Some(path) => {
            fs::write(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn dispatch(cli: &Cli) -> Result<String> {
    let ctx = Ctx { cli };
    match &cli.command {
        Command::Mul { words } => {
            let mut acc = ctx.signed_word(&words[0])?;
            for w in &words[1..] {
                acc = acc.mul(ctx.signed_word(w)?)?;
            }
            let letters = cli.letters || words.iter().all(|w| spelled_in_letters(w));
            Ok(format!("{}\n", ctx.show_word_as(acc, letters)))
        }
        Command::Pow { input, m } => Ok(format!(
            "{}\n",
            ctx.show_element(&ctx.element(input)?.pow(*m))
        )),
        Command::Coeff { input, word, power } => {
            let x = ctx.element(input)?;
            let w = ctx.word(word)?;
            Ok(format!("{}\n", ctx.show_coeff(&x.pow(*power).coeff_of(w)?)))
        }
        Command::Split { input } => {
            let (even, odd) = ctx.element(input)?.parity_split();
            if cli.format == Format::Json {
                let doc = serde_json::json!({
                    "even": even.to_json_value(cli.letters),
                    "odd": odd.to_json_value(cli.letters),
                });
                return Ok(format!(
                    "{}\n",
                    serde_json::to_string_pretty(&doc).expect("plain data serializes")
                ));
            }
            Ok(format!(
                "even: {}\nodd: {}\n",
                ctx.show_element(&even),
                ctx.show_element(&odd)
            ))
        }
        Command::Symmetry { action } => symmetry(&ctx, action),
        Command::Centroid { word } => {
            let b = ctx.word(word)?;
            let p = centroid(b, cli.r0 / 2.0)?;
            let dir = if orientation(b) { "up" } else { "down" };
            Ok(format!(
                "centroid: {:.12} {:.12}\norientation: {dir}\n",
                p.x, p.y
            ))
        }
        Command::Render {
            n,
            highlight_axis,
            labels,
        } => {
            if *n == 0 || *n > RENDER_DEPTH_CAP {
                return Err(Error::Precondition(format!(
                    "render depth must be in 1..={RENDER_DEPTH_CAP}"
                )));
            }
            ctx.check_len(*n)?;
            let axis = highlight_axis.as_deref().map(axis_digit).transpose()?;
            if axis == Some(Digit::E) {
                return Err(Error::Precondition("axis must be 1, 2 or 4".into()));
            }
            let opts = SvgOptions {
                r0: cli.r0,
                labels: *labels,
                letters: cli.letters,
            };
            render_tiling(*n, &opts, |w| match axis {
                Some(a) if w.digits().all(|d| d == a || d.is_central()) => Highlight::Plus,
                _ => Highlight::None,
            })
        }
        Command::Centralizer {
            word,
            count_only,
            svg,
        } => centralizer(&ctx, word, *count_only, svg.as_ref()),
        Command::Vanishing { word } => {
            let b = ctx.word(word)?;
            Ok(format!("{}\n", check_vanishing(b)?))
        }
        Command::Seq {
            appendix,
            abc,
            input,
            word,
            mmax,
            scale,
            recurrence,
            bfile,
            offset,
        } => {
            let x = match appendix {
                Some(Appendix::Fib) => {
                    let parts = abc
                        .split(',')
                        .map(parse_rational)
                        .collect::<Result<Vec<_>>>()?;
                    let [a, b, c] = parts.as_slice() else {
                        return Err(Error::Parse("--abc needs three values A,B,C".into()));
                    };
                    build_fibonacci_pair(a, b, c)?.2
                }
                Some(Appendix::Padovan) => build_padovan_pair()?.2,
                None => ctx.element(input)?,
            };
            let w = ctx.word(word)?;
            let mut seq = coeff_stream(&x, w, *mmax)?;
            if let Some(s) = scale {
                seq = seq.scaled(&parse_rational(s)?);
            }
            sequence_output(&ctx, &seq, *recurrence, bfile.as_ref(), *offset)
        }
        Command::Bench {
            n,
            iterations,
            seed,
        } => bench(*n, *iterations, *seed),
    }
}

fn symmetry(ctx: &Ctx<'_>, action: &SymmetryAction) -> Result<String> {
    match action {
        SymmetryAction::Apply { perm, word, input } => {
            let pi = Perm::parse(perm)?;
            match word {
                Some(w) => Ok(format!(
                    "{}\n",
                    ctx.show_word_as(
                        apply_perm_word(&pi, ctx.word(w)?),
                        ctx.cli.letters || spelled_in_letters(w)
                    )
                )),
                None => Ok(format!(
                    "{}\n",
                    ctx.show_element(&apply_perm_element(&pi, &ctx.element(input)?))
                )),
            }
        }
        SymmetryAction::Check { axis, input } => {
            let x = ctx.element(input)?;
            Ok(format!("{}\n", is_axis_symmetric(&x, axis_digit(axis)?)?))
        }
        SymmetryAction::Orbit { word, subset } => {
            let b = ctx.word(word)?;
            let s = CoordSubset::parse(b.len(), subset)?;
            let pts = cyclic_orbit_points(b, &s, ctx.cli.r0 / 2.0)?;
            let mut out = String::new();
            for p in &pts {
                writeln!(out, "{:.12} {:.12}", p.x, p.y).expect("string write");
            }
            let sides = [
                pts[0].dist(pts[1]),
                pts[1].dist(pts[2]),
                pts[2].dist(pts[0]),
            ];
            writeln!(
                out,
                "sides: {:.12} {:.12} {:.12}",
                sides[0], sides[1], sides[2]
            )
            .expect("string write");
            Ok(out)
        }
    }
}

fn centralizer(
    ctx: &Ctx<'_>,
    word: &str,
    count_only: bool,
    svg: Option<&PathBuf>,
) -> Result<String> {
    let b = ctx.word(word)?;
    let threads = ctx.cli.threads;
    let mut out = String::new();
    if count_only && svg.is_none() {
        let (plus, minus) = centralizer_counts(b, threads)?;
        writeln!(out, "plus: {plus}\nminus: {minus}\ntotal: {}", plus + minus)
            .expect("string write");
        return Ok(out);
    }
    let tiles = centralizer_tiles_with_threads(b, threads)?;
    let listing = |set: &[Word]| {
        let mut names: Vec<String> = set.iter().map(|w| ctx.show_word(w)).collect();
        names.sort();
        names.join(" ")
    };
    writeln!(out, "base: {}", ctx.show_word(b)).expect("string write");
    if count_only {
        writeln!(
            out,
            "plus: {}\nminus: {}",
            tiles.plus.len(),
            tiles.minus.len()
        )
        .expect("string write");
    } else {
        writeln!(out, "plus ({}): {}", tiles.plus.len(), listing(&tiles.plus))
            .expect("string write");
        writeln!(
            out,
            "minus ({}): {}",
            tiles.minus.len(),
            listing(&tiles.minus)
        )
        .expect("string write");
    }
    writeln!(out, "total: {}", tiles.len()).expect("string write");
    if let Some(path) = svg {
        let opts = SvgOptions {
            r0: ctx.cli.r0,
            labels: false,
            letters: ctx.cli.letters,
        };
        let doc = render_tiling(b.len(), &opts, |w| {
            if tiles.plus.binary_search(&w).is_ok() {
                Highlight::Plus
            } else if tiles.minus.binary_search(&w).is_ok() {
                Highlight::Minus
            } else {
                Highlight::None
            }
        })?;
        fs::write(path, doc)?;
    }
    Ok(out)
}

fn sequence_output(
    ctx: &Ctx<'_>,
    seq: &CoeffSeq,
    recurrence: Option<usize>,
    bfile: Option<&PathBuf>,
    offset: i64,
) -> Result<String> {
    let mut out = seq
        .values
        .iter()
        .map(|v| ctx.show_coeff(v))
        .collect::<Vec<_>>()
        .join(" ");
    out.push('\n');
    if let Some(max_order) = recurrence {
        match find_recurrence(seq, max_order)? {
            Some(rec) => writeln!(out, "{rec}").expect("string write"),
            None => writeln!(out, "no recurrence of order <= {max_order}").expect("string write"),
        }
    }
    if let Some(path) = bfile {
        fs::write(path, seq.to_bfile(offset)?)?;
    }
    Ok(out)
}

const BENCH_POOL: usize = 4096;

fn bench(n: usize, iterations: usize, seed: u64) -> Result<String> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::OrderTooLarge(n));
    }
    let mut rng = StdRng::seed_from_u64(seed);
    let mask = crate::basis::lane_mask(n);
    // a cache-resident pool, so the timing reflects the kernels, not memory
    let pool: Vec<Word> = (0..BENCH_POOL)
        .map(|_| {
            Word::from_packed(crate::basis::PackedWord(rng.gen::<u64>() & mask), n).expect("masked")
        })
        .collect();
    let iterations = iterations.max(1);
    let pair = |i: usize| {
        let j = i.wrapping_mul(0x9E37_79B9) >> 7;
        (pool[i % BENCH_POOL], pool[j % BENCH_POOL])
    };

    let mut mismatches = 0usize;
    for i in 0..iterations {
        let (a, b) = pair(i);
        let (s, c) = packed_mul(a.packed(), b.packed(), n)?;
        let r = word_mul(a, b)?;
        if r.sign != s || r.word.packed() != c {
            mismatches += 1;
        }
    }

    let start = Instant::now();
    let mut acc = 0u64;
    for i in 0..iterations {
        let (a, b) = pair(i);
        let (s, c) = packed_mul(black_box(a.packed()), black_box(b.packed()), n)?;
        acc ^= c.0 ^ s.value() as u64;
    }
    black_box(acc);
    let packed_secs = start.elapsed().as_secs_f64().max(1e-9);

    let start = Instant::now();
    for i in 0..iterations {
        let (a, b) = pair(i);
        let r = word_mul(black_box(a), black_box(b))?;
        acc ^= r.word.packed().0;
    }
    black_box(acc);
    let word_secs = start.elapsed().as_secs_f64().max(1e-9);

    let count = iterations as f64;
    let (packed_rate, word_rate) = (count / packed_secs, count / word_secs);
    let mut out = String::new();
    writeln!(out, "order: {n}").expect("string write");
    writeln!(out, "iterations: {iterations}").expect("string write");
    writeln!(out, "packed_mul: {packed_rate:.0} products/s").expect("string write");
    writeln!(out, "word_mul: {word_rate:.0} products/s").expect("string write");
    writeln!(out, "ratio: {:.2}", packed_rate / word_rate).expect("string write");
    writeln!(out, "mismatches: {mismatches}").expect("string write");
    if mismatches > 0 {
        return Err(Error::Precondition(format!(
            "packed and reference kernels disagree on {mismatches} pairs"
        )));
    }
    Ok(out)
}
