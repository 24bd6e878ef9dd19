//! Cross-checks the residue engine against sums evaluated exactly over the
//! rationals and reduced only at the end.

use num_traits::{One, Zero};
use supercong_core::arith::{binomial_i64, primes_between, ratio, reduce_rational, Integer, PrimePower, Rational, Residue};
use supercong_core::outcome::Value;
use supercong_core::sequences::{euler_numbers, euler_polynomial};
use supercong_core::suite::{congruence_registry, find_congruence, two_squares, Engine};

fn c(k: i64) -> Rational {
    Rational::from_integer(binomial_i64(2 * k, k))
}

fn s(n: i64) -> Rational {
    (0..=n).map(|k| num_traits::pow(c(k) * c(n - k), 2)).sum()
}

fn h2(k: i64) -> Rational {
    (1..=k).map(|j| ratio(1, j * j)).sum()
}

fn pw(base: i64, k: i64) -> Rational {
    Rational::from_integer(num_traits::pow(Integer::from(base), k as usize))
}

fn int(v: i64) -> Rational {
    ratio(v, 1)
}

/// Exact `(lhs, rhs)` of every single-instance congruence at `p`.
fn oracle(id: &str, p: i64) -> (Rational, Rational) {
    let half = (p - 1) / 2;
    let sgn = int(if half % 2 == 0 { 1 } else { -1 });
    let e = Rational::from_integer(euler_numbers(p as usize - 3).get(p as usize - 3).clone());
    let pp = |j| pw(p, j);
    let rv = |lo: i64, hi: i64| -> Rational { (lo..=hi).map(|k| c(k) * c(k) / pw(16, k)).sum() };
    let cubic = |hi: i64| -> Rational {
        (0..=hi).map(|k| int(3 * k + 1) * c(k) * c(k) * c(k) / pw(-8, k)).sum()
    };
    let a: Rational = (0..p).map(|n| int(n + 1) * s(n) / pw(8, n)).sum();
    let b: Rational = (0..p).map(|n| int(2 * n + 1) * s(n) / pw(-16, n)).sum();
    match id {
        "rv" => (rv(0, p - 1), sgn),
        "rv_half_equiv" => (rv(0, p - 1), rv(0, half)),
        "sun_half" => (rv(0, half), sgn + pp(2) * &e),
        "sun_tail" => (rv(half + 1, p - 1), int(-2) * pp(2) * &e),
        "cxh" => (cubic(p - 1), sgn * pp(1) + pp(3) * &e),
        "mao_half" => {
            let sign8 = int(if ((p * p - 1) / 8) % 2 == 0 { 1 } else { -1 });
            let eq = euler_polynomial(&euler_numbers(p as usize), p as usize - 3, &ratio(1, 4));
            (cubic(half), sgn * pp(1) + sign8 * pp(3) / int(4) * eq)
        }
        "sun_x_8" | "sun_x_16" => {
            let lhs: Rational = if id == "sun_x_8" {
                (0..=half).map(|k| int(k + 1) * c(k) * c(k) / pw(8, k)).sum()
            } else {
                (0..=half).map(|k| int(2 * k + 1) * c(k) * c(k) / pw(-16, k)).sum()
            };
            let x = two_squares(p as u64).unwrap().x;
            let sign4 = if ((p - 1) / 4) % 2 == 0 { 1 } else { -1 };
            (lhs, int(sign4 * x))
        }
        "sun8_p3" => (a, sgn * pp(1)),
        "sun16_p3" => (b, sgn * pp(1)),
        "den8" => (a, sgn * pp(1) + int(5) * pp(3) * &e),
        "den16" => (b, sgn * pp(1) + int(3) * pp(3) * &e),
        "mao_cao_32" => (
            (0..p).map(|n| int(n) * s(n) / pw(32, n)).sum(),
            int(-2) * pp(3) * &e,
        ),
        "suncon3_half" | "suncon3_full" => {
            let hi = if id == "suncon3_half" { half } else { p - 1 };
            (
                (0..=hi).map(|k| c(k) * c(k) * h2(k) / pw(16, k)).sum(),
                int(-4) * &e,
            )
        }
        "key1_mod_p5" => (
            b,
            pp(1) * (0..p)
                .map(|k| c(k) * c(k) / pw(16, k) * (Rational::one() - pp(2) * h2(k)))
                .sum::<Rational>(),
        ),
        "key_star" => (a, int(2) * b - cubic(p - 1)),
        other => panic!("no oracle for {other}"),
    }
}

fn residue(v: &Value) -> Residue {
    match v {
        Value::Residue(r) => r.clone(),
        other => panic!("expected residue, got {other:?}"),
    }
}

#[test]
fn engine_matches_exact_oracle() {
    let engine = Engine::new(23);
    for p in primes_between(5, 23) {
        let ctx = engine.context(p).unwrap();
        for spec in congruence_registry() {
            if !spec.filter.admits(p) || spec.id == "prod_binom" {
                continue;
            }
            let o = &spec.evaluate(&ctx)[0];
            let m = PrimePower::new(p, spec.exponent).unwrap();
            let (lhs, rhs) = oracle(&spec.id, p as i64);
            assert_eq!(residue(&o.lhs), reduce_rational(&lhs, &m).unwrap(), "{} lhs p={p}", spec.id);
            assert_eq!(residue(&o.rhs), reduce_rational(&rhs, &m).unwrap(), "{} rhs p={p}", spec.id);
            assert!(o.pass, "{} p={p}", spec.id);
        }
    }
}

#[test]
fn prod_binom_matches_product_form() {
    // C(p-1,k) C(p+k,k) = (-1)^k prod_{j<=k} (1 - p^2/j^2) exactly
    for p in [5i64, 7, 11, 13] {
        for k in 0..p {
            let lhs = Rational::from_integer(binomial_i64(p - 1, k) * binomial_i64(p + k, k));
            let prod: Rational = (1..=k).map(|j| Rational::one() - ratio(p * p, j * j)).product();
            let sign = int(if k % 2 == 0 { 1 } else { -1 });
            assert_eq!(lhs, sign * prod, "p={p} k={k}");
        }
    }
}

#[test]
fn key_star_consistency() {
    // 2 * rhs(den16) - rhs(cxh) = rhs(den8) and the engine's key_star agrees.
    let engine = Engine::new(199);
    let get = |id: &str| find_congruence(id).unwrap();
    let (den8, den16, cxh, star) = (get("den8"), get("den16"), get("cxh"), get("key_star"));
    for p in primes_between(5, 199) {
        let ctx = engine.context(p).unwrap();
        let [d8, d16, cx, ks] = [&den8, &den16, &cxh, &star].map(|s| s.evaluate(&ctx).remove(0));
        let implied = &(&residue(&d16.rhs) + &residue(&d16.rhs)) - &residue(&cx.rhs);
        assert_eq!(implied, residue(&d8.rhs), "p={p}");
        assert_eq!(residue(&ks.lhs), residue(&d8.lhs), "p={p}");
        assert_eq!(d8.pass, d16.pass && cx.pass && ks.pass, "p={p}");
    }
}

#[test]
fn euler_residues_have_dyadic_denominators() {
    let t = euler_numbers(196);
    for p in primes_between(5, 199) {
        let v = euler_polynomial(&t, p as usize - 3, &ratio(1, 4));
        let d = v.denom();
        assert!((d & (d - Integer::one())).is_zero(), "p={p}");
    }
}

#[test]
fn engine_runs_are_deterministic() {
    let primes = primes_between(5, 97);
    let engine = Engine::new(97);
    let a = engine.run(&congruence_registry(), &primes, 1);
    let b = engine.run(&congruence_registry(), &primes, 4);
    let c = Engine::new(97).run(&congruence_registry(), &primes, 3);
    assert_eq!(a, b);
    assert_eq!(a, c);
}
