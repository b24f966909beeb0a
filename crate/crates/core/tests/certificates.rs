mod common;

use std::collections::{BTreeMap, BTreeSet};

use dispersion::certify::{verify_certificate, Certificate, Verdict};
use dispersion::fourier_motzkin::{Feasibility, System};
use dispersion::graph::Graph;
use dispersion::point::{Metric, Point};
use dispersion::Rational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn r(n: i64, d: i64) -> Rational {
    Rational::frac(n, d)
}

/// Every grid vector in `[0, 1]^vars` with step `1/q`.
fn grid_feasible(sys: &System, q: i64) -> bool {
    let vars = sys.vars();
    let mut x = vec![0i64; vars];
    loop {
        let point: Vec<Rational> = x.iter().map(|&k| r(k, q)).collect();
        if sys.satisfied_by(&point) {
            return true;
        }
        let mut i = 0;
        while i < vars && x[i] == q {
            x[i] = 0;
            i += 1;
        }
        if i == vars {
            return false;
        }
        x[i] += 1;
    }
}

#[test]
fn fourier_motzkin_matches_grid_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let (mut feasible, mut infeasible) = (0, 0);
    for _ in 0..600 {
        let vars = rng.gen_range(1..=4);
        let b = rng.gen_range(1..=3);
        let mut sys = System::new(vars);
        for i in 0..vars {
            sys.add_ge(&[(i, Rational::ONE)], Rational::ZERO);
            sys.add_le(&[(i, Rational::ONE)], Rational::ONE);
        }
        for _ in 0..rng.gen_range(1..=6) {
            let i = rng.gen_range(0..vars);
            let si = if rng.gen_bool(0.5) { Rational::ONE } else { -Rational::ONE };
            let rhs = r(rng.gen_range(-b..=2 * b), b);
            let j = rng.gen_range(0..vars);
            if j != i && rng.gen_bool(0.7) {
                let sj = if rng.gen_bool(0.5) { Rational::ONE } else { -Rational::ONE };
                sys.add_le(&[(i, si), (j, sj)], rhs);
            } else {
                sys.add_le(&[(i, si)], rhs);
            }
        }
        // two-variable rows with unit coefficients have half-integral vertices
        let expected = grid_feasible(&sys, 4 * b);
        let got = sys.feasibility().unwrap() == Feasibility::Feasible;
        assert_eq!(got, expected, "{:?}", sys.rows());
        if got {
            feasible += 1;
        } else {
            infeasible += 1;
        }
    }
    assert!(feasible > 100 && infeasible > 100, "{feasible} / {infeasible}");
}

/// Whether points realising the certificate exist, with every interior
/// block laid out at spacing `δ` from a grid offset at each end.
fn placement_exists(g: &Graph, delta: Rational, cert: &Certificate, q: i64) -> bool {
    let m = Metric::new(g);
    let fixed: Vec<Point> = cert.w.iter().map(|&v| Point::Vertex(v)).collect();
    let edges: Vec<(usize, u64)> = cert.counts.iter().map(|(&e, &n)| (e, n)).filter(|&(_, n)| n > 0).collect();
    let mut ends = vec![(0i64, 0i64); edges.len()];
    loop {
        let mut pts = fixed.clone();
        let mut fits = true;
        for (&(e, n), &(a, b)) in edges.iter().zip(&ends) {
            let (xa, xb) = (r(a, q), r(b, q));
            let span = delta * Rational::integer(n as i64 - 1);
            if xa + span + xb > Rational::ONE {
                fits = false;
                break;
            }
            for i in 0..n as i64 {
                let off = if i == n as i64 - 1 { Rational::ONE - xb } else { xa + delta * Rational::integer(i) };
                pts.push(Point::on_edge(g, e, off).unwrap());
            }
        }
        if fits && (0..pts.len()).all(|i| (i + 1..pts.len()).all(|j| m.distance(&pts[i], &pts[j]) >= delta)) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == 2 * edges.len() {
                return false;
            }
            let slot = if i % 2 == 0 { &mut ends[i / 2].0 } else { &mut ends[i / 2].1 };
            if *slot < q {
                *slot += 1;
                break;
            }
            *slot = 0;
            i += 1;
        }
    }
}

#[test]
fn verifier_agrees_with_explicit_placement() {
    let mut rng = ChaCha8Rng::seed_from_u64(32);
    let deltas = [r(1, 2), r(2, 3), Rational::ONE, r(3, 2), Rational::integer(2), Rational::integer(3)];
    let (mut accepted, mut rejected) = (0, 0);
    for _ in 0..400 {
        let n = rng.gen_range(2..=5);
        let g = random_connected(&mut rng, n, 0.4);
        let delta = deltas[rng.gen_range(0..deltas.len())];
        let cap = (Rational::ONE.checked_div(&delta).unwrap().floor() + 1) as u64;
        let w: BTreeSet<usize> = (0..g.vertex_count()).filter(|_| rng.gen_bool(0.3)).collect();
        let mut counts = BTreeMap::new();
        for _ in 0..rng.gen_range(0..=2) {
            counts.insert(rng.gen_range(0..g.edge_count()), rng.gen_range(1..=cap));
        }
        let cert = Certificate { w, counts };
        let k = cert.total();
        let verdict = verify_certificate(&g, delta, &cert, k).unwrap();
        let expected = placement_exists(&g, delta, &cert, 4 * delta.denom());
        assert_eq!(verdict == Verdict::Accept, expected, "{:?} at {delta}: {cert:?} -> {verdict:?}", g.edges());
        if expected {
            accepted += 1;
        } else {
            rejected += 1;
        }
    }
    assert!(accepted > 50 && rejected > 50, "{accepted} / {rejected}");
}

#[test]
fn file_format_round_trip_and_errors() {
    let cert = Certificate { w: BTreeSet::from([0, 4]), counts: BTreeMap::from([(2, 1), (5, 3)]) };
    let text = cert.to_text(6);
    assert_eq!(text, "6\nW: 0 4\n2 1\n5 3\n");
    assert_eq!(Certificate::parse(&text).unwrap(), (6, cert));
    assert_eq!(Certificate::parse("2\nW:\n").unwrap().1.total(), 0);
    for bad in ["", "x\nW:\n", "1\n0 1\n", "1\nW: a\n", "1\nW:\n3\n", "1\nW: 1 1\n"] {
        assert!(Certificate::parse(bad).is_err(), "{bad:?}");
    }
}
