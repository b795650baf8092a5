//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Run with `cargo test -p floretion --test acceptance`.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::Parser;
use common::*;
use floretion::algebra::{rational, Element, Rational};
use floretion::basis::{local_mul, packed_mul, word_mul};
use floretion::centralizer::{
    centralizer_counts, centralizer_tiles, check_vanishing, sigma_sums, signed_centralizer_order,
};
use floretion::cli::{run, Cli};
use floretion::geometry::{centroid, initial_triangle, rho, tile_polygon, triangle_area};
use floretion::sequences::{
    build_fibonacci_pair, build_padovan_pair, coeff_stream, coeff_streams, find_recurrence,
};
use floretion::symmetry::{
    apply_perm_element, apply_perm_word, cyclic_orbit_points, CoordSubset, Perm,
};
use floretion::{Digit, Word};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Check = fn() -> Outcome;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn within(elapsed: Duration, budget: Duration) -> bool {
    elapsed < budget
}

fn w(s: &str) -> Word {
    Word::parse(s).unwrap()
}

fn c1_table() -> Outcome {
    let start = Instant::now();
    let mut bad = 0;
    for x in Digit::ALL {
        for y in Digit::ALL {
            let (s, d) = local_mul(x, y);
            if (s.value(), d) != table(x, y) {
                bad += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(
        bad == 0 && within(t, Duration::from_millis(1)),
        format!("16 entries, {bad} mismatches, {t:?}"),
    )
}

fn c2_worked_product() -> Outcome {
    let out = run(&Cli::parse_from(["floretion", "mul", "iji", "jek"])).unwrap();
    let direct = word_mul(w("iji"), w("jek")).unwrap();
    let pass = out == "-kjj\n" && direct.to_string() == "-422";
    outcome(pass, format!("mul iji jek = {}", out.trim()))
}

fn c3_kernel() -> Outcome {
    let start = Instant::now();
    let agree = |a: Word, b: Word| {
        let r = word_mul(a, b).unwrap();
        packed_mul(a.packed(), b.packed(), a.len()).unwrap() == (r.sign, r.word.packed())
    };
    let (mut exhaustive, mut random, mut bad) = (0u64, 0u64, 0u64);
    for n in 1..=4 {
        for a in Word::all(n).unwrap() {
            for b in Word::all(n).unwrap() {
                exhaustive += 1;
                bad += u64::from(!agree(a, b));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0xC3);
    for i in 0..1_000_000 {
        let n = 4 + i % 5;
        random += 1;
        bad += u64::from(!agree(random_word(&mut rng, n), random_word(&mut rng, n)));
    }
    let t = start.elapsed();
    outcome(
        bad == 0 && within(t, Duration::from_secs(30)),
        format!("{exhaustive} exhaustive + {random} random pairs, {bad} mismatches, {t:?}"),
    )
}

fn c4_equivariance() -> Outcome {
    let start = Instant::now();
    let mut worst = 0.0f64;
    for n in 1..=5 {
        for p in Perm::all() {
            let m = rho(&p);
            for b in Word::all(n).unwrap() {
                let lhs = centroid(apply_perm_word(&p, b), 0.5).unwrap();
                worst = worst.max(lhs.dist(m.apply(centroid(b, 0.5).unwrap())));
            }
        }
    }
    let t = start.elapsed();
    outcome(
        worst <= 1e-12 && within(t, Duration::from_secs(10)),
        format!("max deviation {worst:.3e}, {t:?}"),
    )
}

fn c5_no_cancellation() -> Outcome {
    let mut min = f64::INFINITY;
    let mut zero_at_nonidentity = 0;
    for n in 1..=6 {
        for b in Word::all(n).unwrap().filter(|b| !b.is_identity()) {
            let r = centroid(b, 0.5).unwrap().norm();
            if r == 0.0 {
                zero_at_nonidentity += 1;
            }
            min = min.min(r);
        }
    }
    outcome(
        zero_at_nonidentity == 0 && min > 0.0,
        format!("minimum |P(b)| over b != e_n, n <= 6: {min:.6e}"),
    )
}

fn c6_dispatch() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xC6);
    let mut bad = 0;
    for _ in 0..100 {
        let (x, y) = (
            random_element(&mut rng, 3, 8),
            random_element(&mut rng, 3, 8),
        );
        let xy = x.mul(&y).unwrap();
        for p in Perm::all() {
            let (px, py) = (apply_perm_element(&p, &x), apply_perm_element(&p, &y));
            let expected = if p.is_even() {
                px.mul(&py)
            } else {
                py.mul(&px)
            }
            .unwrap();
            if apply_perm_element(&p, &xy) != expected {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0,
        format!("100 pairs x 6 permutations, {bad} failures"),
    )
}

fn c7_counts() -> Outcome {
    let start = Instant::now();
    let mut bad = 0;
    for n in 1..=4 {
        let total = 4u64.pow(n as u32);
        for b in Word::all(n).unwrap().filter(|b| !b.is_identity()) {
            let (p, m) = centralizer_counts(b, 1).unwrap();
            let signed = signed_centralizer_order(b).unwrap();
            if p + m != total / 2 || signed != u128::from(total) {
                bad += 1;
            }
        }
    }
    let t = start.elapsed();
    outcome(
        bad == 0 && within(t, Duration::from_secs(60)),
        format!("all b != e_n for n <= 4, {bad} failures, {t:?}"),
    )
}

fn c8_example_ii() -> Outcome {
    let sorted = |list: &[&str]| {
        let mut v: Vec<Word> = list.iter().map(|s| w(s)).collect();
        v.sort();
        v
    };
    let tiles = centralizer_tiles(w("ii")).unwrap();
    let (plus, minus) = sigma_sums(w("ii")).unwrap();
    let pass = tiles.plus == sorted(&["ii", "jj", "kk", "ee"])
        && tiles.minus == sorted(&["ie", "jk", "kj", "ei"])
        && minus.mul(&plus).unwrap().is_zero();
    outcome(
        pass,
        "plus {ii,jj,kk,ee}, minus {ie,jk,kj,ei}, product zero",
    )
}

fn c9_vanishing() -> Outcome {
    let mut checked = 0;
    let mut bad = 0;
    for n in 1..=3 {
        for b in Word::all(n).unwrap().filter(|b| b.n124() % 2 == 0) {
            checked += 1;
            if !check_vanishing(b).unwrap() {
                bad += 1;
            }
        }
    }
    outcome(
        bad == 0,
        format!("{checked} words with b^2 = e_n, {bad} failures"),
    )
}

fn c10_parity_identity() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xC10);
    let two = rational(2, 1);
    let mut bad = 0;
    for i in 0..100 {
        let x = random_element(&mut rng, 1 + i % 3, 10);
        let lhs = x.mul(&x).unwrap().odd_part();
        let rhs = x.mul(&x.odd_part()).unwrap().odd_part().scale(&two);
        if lhs != rhs {
            bad += 1;
        }
    }
    outcome(bad == 0, format!("100 random elements, {bad} failures"))
}

fn c11_orbits() -> Outcome {
    let spread = |p: [floretion::geometry::Vec2; 3]| {
        let d = [p[0].dist(p[1]), p[1].dist(p[2]), p[0].dist(p[2])];
        let hi = d.iter().cloned().fold(f64::MIN, f64::max);
        let lo = d.iter().cloned().fold(f64::MAX, f64::min);
        (hi - lo, lo)
    };
    let mut worst = 0.0f64;
    let mut degenerate = 0;
    let mut cases = 0;
    for n in 1..=4 {
        for b in Word::all(n).unwrap().filter(|b| !b.is_identity()) {
            for mask in 1u32..(1 << n) {
                let s = CoordSubset::new(n, (1..=n).filter(|r| mask >> (r - 1) & 1 == 1)).unwrap();
                if s.positions().all(|r| b.digit(r - 1).is_central()) {
                    continue;
                }
                let (dev, side) = spread(cyclic_orbit_points(b, &s, 0.5).unwrap());
                worst = worst.max(dev);
                degenerate += usize::from(side == 0.0);
                cases += 1;
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(0xC11);
    let mut random = 0;
    while random < 1000 {
        let n = rng.gen_range(1..=6);
        let b = random_word(&mut rng, n);
        let s = CoordSubset::new(n, (1..=n).filter(|_| rng.gen_bool(0.5))).unwrap();
        if s.positions().all(|r| b.digit(r - 1).is_central()) {
            continue;
        }
        let (dev, side) = spread(cyclic_orbit_points(b, &s, 0.5).unwrap());
        worst = worst.max(dev);
        degenerate += usize::from(side == 0.0);
        random += 1;
    }
    outcome(
        worst <= 1e-12 && degenerate == 0,
        format!("{cases} exhaustive + {random} random orbits, max side spread {worst:.3e}"),
    )
}

fn c12_fibonacci() -> Outcome {
    let (a, b, c) = (rational(-1, 1), rational(1, 1), rational(-1, 1));
    let z = build_fibonacci_pair(&a, &b, &c).unwrap().2;
    let stream = coeff_stream(&z, w("ij"), 6).unwrap();
    let expected: Vec<Rational> = [(1, 2), (1, 2), (1, 1), (3, 2), (5, 2), (4, 1)]
        .iter()
        .map(|&(p, q)| rational(p, q))
        .collect();
    let rec = find_recurrence(&stream, 2).unwrap();
    let pass = stream.values == expected
        && rec
            .as_ref()
            .is_some_and(|r| r.coeffs == vec![rational(1, 1), rational(1, 1)]);
    let rec_text = rec.map_or("none".to_string(), |r| r.to_string());
    outcome(
        pass,
        format!("[ij]Z^m = {}; {rec_text}", join(&stream.values)),
    )
}

fn join(values: &[Rational]) -> String {
    values
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn c13_padovan() -> Outcome {
    let y = build_padovan_pair().unwrap().2;
    let stream = coeff_stream(&y, w("ik"), 11)
        .unwrap()
        .scaled(&rational(4, 1));
    let expected: Vec<Rational> = [1, 1, 1, 2, 2, 3, 4, 5, 7, 9, 12]
        .iter()
        .map(|&v| rational(v, 1))
        .collect();
    let quartic = y.pow(4) == y.pow(2).add(&y).unwrap();
    let mut rng = StdRng::seed_from_u64(0xC13);
    let mut cubic_bad = 0;
    for _ in 0..20 {
        let (a, b, c) = (
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        let z = build_fibonacci_pair(&a, &b, &c).unwrap().2;
        let lhs = z
            .pow(3)
            .add(&z.pow(2).scale(&a))
            .unwrap()
            .add(&z.scale(&(&b * &c)))
            .unwrap();
        if !lhs.is_zero() {
            cubic_bad += 1;
        }
    }
    outcome(
        stream.values == expected && quartic && cubic_bad == 0,
        format!(
            "4[ik]Y^m = {}; Y^4 = Y^2 + Y: {quartic}; cubic failures {cubic_bad}/20",
            join(&stream.values)
        ),
    )
}

fn c14_cayley_hamilton() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0xC14);
    let mut worst = 0;
    let mut bad = 0;
    for _ in 0..50 {
        let terms: Vec<(Word, Rational)> = Word::all(2)
            .unwrap()
            .map(|b| (b, random_rational(&mut rng)))
            .collect();
        let x = Element::from_terms(2, terms).unwrap();
        let words: Vec<Word> = Word::all(2).unwrap().collect();
        for s in coeff_streams(&x, &words, 20).unwrap() {
            match find_recurrence(&s, 4).unwrap() {
                Some(r) if r.holds_on(&s.values) => worst = worst.max(r.order()),
                _ => bad += 1,
            }
        }
    }
    outcome(
        bad == 0,
        format!("50 elements x 16 streams, max order {worst}, {bad} without recurrence"),
    )
}

fn c15_tiling() -> Outcome {
    let mut worst = 0.0f64;
    let root = triangle_area(&initial_triangle(1.0).unwrap());
    for n in 0..5 {
        let parents: Vec<Option<Word>> = if n == 0 {
            vec![None]
        } else {
            Word::all(n).unwrap().map(Some).collect()
        };
        for parent in parents {
            let (area, prefix): (f64, Vec<Digit>) = match parent {
                None => (root, Vec::new()),
                Some(p) => (
                    triangle_area(&tile_polygon(p, 1.0).unwrap()),
                    p.digits().collect(),
                ),
            };
            let children: f64 = Digit::ALL
                .iter()
                .map(|&d| {
                    let mut digits = prefix.clone();
                    digits.push(d);
                    triangle_area(&tile_polygon(Word::new(&digits).unwrap(), 1.0).unwrap())
                })
                .sum();
            worst = worst.max((children - area).abs());
        }
    }
    let level5: f64 = Word::all(5)
        .unwrap()
        .map(|b| triangle_area(&tile_polygon(b, 1.0).unwrap()))
        .sum();
    worst = worst.max((level5 - root).abs());
    let svg = run(&Cli::parse_from([
        "floretion",
        "render",
        "3",
        "--highlight-axis",
        "1",
    ]))
    .unwrap();
    let highlighted = svg.matches("highlight-plus\"").count();
    outcome(
        worst <= 1e-9 && highlighted == 8,
        format!("max area defect {worst:.3e}; {{1,7}}^3 highlight: {highlighted} tiles"),
    )
}

fn c16_performance() -> Outcome {
    let bench = run(&Cli::parse_from([
        "floretion",
        "bench",
        "8",
        "--iterations",
        "1000000",
    ]))
    .unwrap();
    let ratio: f64 = bench
        .lines()
        .find_map(|l| l.strip_prefix("ratio: "))
        .and_then(|r| r.parse().ok())
        .unwrap_or(0.0);
    let start = Instant::now();
    let (p, m) = centralizer_counts(Word::parse("1247124712").unwrap(), 1).unwrap();
    let scan = start.elapsed();
    outcome(
        ratio >= 10.0 && scan < Duration::from_secs(10) && p + m == 1 << 19,
        format!(
            "packed/word throughput ratio at n=8: {ratio:.1}x; n=10 scan: {scan:?} (report only)"
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, Check); 16] = [
        (1, "table fidelity", c1_table),
        (2, "worked product", c2_worked_product),
        (3, "kernel oracle", c3_kernel),
        (4, "equivariance", c4_equivariance),
        (5, "no cancellation", c5_no_cancellation),
        (6, "anti-automorphism dispatch", c6_dispatch),
        (7, "centralizer counts", c7_counts),
        (8, "example ii", c8_example_ii),
        (9, "vanishing", c9_vanishing),
        (10, "parity identity", c10_parity_identity),
        (11, "equilateral orbits", c11_orbits),
        (12, "fibonacci stream", c12_fibonacci),
        (13, "padovan stream", c13_padovan),
        (14, "cayley-hamilton bound", c14_cayley_hamilton),
        (15, "tiling partition", c15_tiling),
        (16, "performance budget", c16_performance),
    ];
    let mut failed = 0;
    for (id, name, check) in criteria {
        let start = Instant::now();
        let result = check();
        let took = start.elapsed();
        let tag = match (result.pass, id) {
            (true, _) => "PASS",
            (false, 16) => "INFO",
            (false, _) => {
                failed += 1;
                "FAIL"
            }
        };
        println!(
            "{tag} criterion {id:>2} ({name}): {} [{took:.2?}]",
            result.detail
        );
    }
    println!("acceptance: {} of 15 blocking criteria passed", 15 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
