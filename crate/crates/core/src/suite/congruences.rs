//! Registered congruences and the engine that checks them prime by prime.
//!
//! Every sum is evaluated directly in `Z / p^e Z`: integer terms are computed
//! exactly and reduced, and `1 / b^k` is a running power of `b^{-1}`.

use std::fmt;
use std::ops::RangeInclusive;
use std::sync::Arc;

use num_traits::One;

use crate::arith::{
    binomial_i64, is_power_of_two, is_prime, mod_inverse, ratio, reduce_rational,
    CentralBinomials, Integer, PrimePower, Rational, Residue,
};
use crate::error::{Error, Result};
use crate::hypergeo::convolution_table;
use crate::outcome::{sort_outcomes, CheckOutcome, Instance, Value};
use crate::sequences::{euler_numbers, euler_polynomial, harmonic2_prefix, EulerTable};

use super::two_squares::two_squares;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PrimeFilter {
    /// Every odd prime.
    Odd,
    /// Every prime `p > 3`.
    AboveThree,
    /// Primes `p = 1 (mod 4)`.
    OneModFour,
}

impl PrimeFilter {
    pub fn admits(self, p: u64) -> bool {
        is_prime(p)
            && match self {
                PrimeFilter::Odd => p > 2,
                PrimeFilter::AboveThree => p > 3,
                PrimeFilter::OneModFour => p % 4 == 1,
            }
    }
}

impl fmt::Display for PrimeFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PrimeFilter::Odd => "odd primes",
            PrimeFilter::AboveThree => "primes p > 3",
            PrimeFilter::OneModFour => "primes p = 1 mod 4",
        })
    }
}

pub type SideFn = Arc<dyn Fn(&PrimeContext<'_>, &PrimePower) -> Result<Residue> + Send + Sync>;
pub type IndexedSideFn =
    Arc<dyn Fn(&PrimeContext<'_>, &PrimePower, u64) -> Result<Residue> + Send + Sync>;

#[derive(Clone)]
pub enum Sides {
    /// One comparison per prime.
    Single { lhs: SideFn, rhs: SideFn },
    /// One comparison per `(p, index)`, with `index` in `0..count(p)`.
    PerIndex {
        index: &'static str,
        count: fn(u64) -> u64,
        lhs: IndexedSideFn,
        rhs: IndexedSideFn,
    },
}

/// A congruence `lhs(p) = rhs(p) (mod p^exponent)` for admissible primes.
#[derive(Clone)]
pub struct CongruenceSpec {
    pub id: String,
    pub exponent: u32,
    pub filter: PrimeFilter,
    pub sides: Sides,
}

impl fmt::Debug for CongruenceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CongruenceSpec")
            .field("id", &self.id)
            .field("exponent", &self.exponent)
            .field("filter", &self.filter)
            .finish_non_exhaustive()
    }
}

impl CongruenceSpec {
    fn single(
        id: &str,
        exponent: u32,
        filter: PrimeFilter,
        lhs: impl Fn(&PrimeContext<'_>, &PrimePower) -> Result<Residue> + Send + Sync + 'static,
        rhs: impl Fn(&PrimeContext<'_>, &PrimePower) -> Result<Residue> + Send + Sync + 'static,
    ) -> Self {
        Self {
            id: id.to_string(),
            exponent,
            filter,
            sides: Sides::Single {
                lhs: Arc::new(lhs),
                rhs: Arc::new(rhs),
            },
        }
    }

    /// Same check with `delta` added to the right side. Used to exercise the
    /// failure path of reports and exit codes.
    pub fn perturbed(&self, delta: i64) -> Self {
        let sides = match &self.sides {
            Sides::Single { lhs, rhs } => {
                let rhs = rhs.clone();
                Sides::Single {
                    lhs: lhs.clone(),
                    rhs: Arc::new(move |ctx, m| Ok(rhs(ctx, m)? + Residue::from_i64(delta, m))),
                }
            }
            Sides::PerIndex { index, count, lhs, rhs } => {
                let rhs = rhs.clone();
                Sides::PerIndex {
                    index,
                    count: *count,
                    lhs: lhs.clone(),
                    rhs: Arc::new(move |ctx, m, k| {
                        Ok(rhs(ctx, m, k)? + Residue::from_i64(delta, m))
                    }),
                }
            }
        };
        Self {
            id: self.id.clone(),
            exponent: self.exponent,
            filter: self.filter,
            sides,
        }
    }

    /// Number of outcomes this spec yields for an admissible prime.
    pub fn instance_count(&self, p: u64) -> u64 {
        match &self.sides {
            Sides::Single { .. } => 1,
            Sides::PerIndex { count, .. } => count(p),
        }
    }

    /// Evaluates both sides at every instance for `ctx.p()`. Evaluation errors
    /// become failed outcomes.
    pub fn evaluate(&self, ctx: &PrimeContext<'_>) -> Vec<CheckOutcome> {
        let p = ctx.p();
        let m = ctx.modulus(self.exponent);
        let side = |r: Result<Residue>| match r {
            Ok(v) => Value::Residue(v),
            Err(e) => Value::Error(e.to_string()),
        };
        match &self.sides {
            Sides::Single { lhs, rhs } => vec![CheckOutcome::compare(
                &self.id,
                Instance::prime(p),
                Some(m.clone()),
                side(lhs(ctx, &m)),
                side(rhs(ctx, &m)),
            )],
            Sides::PerIndex { index, count, lhs, rhs } => (0..count(p))
                .map(|k| {
                    CheckOutcome::compare(
                        &self.id,
                        Instance::new(&[("p", p as i64), (index, k as i64)]),
                        Some(m.clone()),
                        side(lhs(ctx, &m, k)),
                        side(rhs(ctx, &m, k)),
                    )
                })
                .collect(),
        }
    }
}

/// Per-prime data shared by every spec: `S(n)` and `H_k^{(2)}` for
/// `n, k < p`, plus the run-wide binomial memo and Euler table.
pub struct PrimeContext<'a> {
    p: u64,
    central: &'a CentralBinomials,
    euler: &'a EulerTable,
    conv: Vec<Integer>,
    harmonic: Vec<Rational>,
}

impl PrimeContext<'_> {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn modulus(&self, e: u32) -> PrimePower {
        PrimePower::new(self.p, e).expect("context prime was validated")
    }

    pub fn half(&self) -> u64 {
        (self.p - 1) / 2
    }

    /// `C(2k, k)`.
    pub fn central(&self, k: u64) -> &Integer {
        self.central.get(k as usize)
    }

    /// `S(n)` for `n < p`.
    pub fn conv(&self, n: u64) -> &Integer {
        &self.conv[n as usize]
    }

    /// `H_k^{(2)}` for `k < p`.
    pub fn harmonic2(&self, k: u64) -> &Rational {
        &self.harmonic[k as usize]
    }

    /// `E_{p-3}`.
    pub fn euler(&self) -> &Integer {
        self.euler.get(self.p as usize - 3)
    }

    /// `E_{p-3}(1/4)`.
    pub fn euler_quarter(&self) -> Rational {
        euler_polynomial(self.euler, self.p as usize - 3, &ratio(1, 4))
    }

    /// `(-1)^{(p-1)/2}`.
    pub fn sign_half(&self) -> i64 {
        if self.half().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn p_pow(&self, e: u32) -> Integer {
        num_traits::pow(Integer::from(self.p), e as usize)
    }
}

/// Reduces a rational whose denominator must be a power of two.
pub fn reduce_dyadic(r: &Rational, m: &PrimePower) -> Result<Residue> {
    if !is_power_of_two(r.denom()) {
        return Err(Error::PreconditionViolated(format!(
            "denominator of {r} is not a power of 2"
        )));
    }
    reduce_rational(r, m)
}

/// `sum_{k in range} term(k) / base^k (mod m)`.
fn series(
    m: &PrimePower,
    base: i64,
    range: RangeInclusive<u64>,
    term: impl Fn(u64) -> Integer,
) -> Result<Residue> {
    let inv = mod_inverse(&Integer::from(base), m)?;
    let mut weight = inv.pow(*range.start());
    let mut total = Residue::zero(m);
    for k in range {
        total += &weight.scale(&term(k));
        weight *= &inv;
    }
    Ok(total)
}

/// Like [`series`] for rational terms with denominators prime to `p`.
fn series_rational(
    m: &PrimePower,
    base: i64,
    range: RangeInclusive<u64>,
    term: impl Fn(u64) -> Rational,
) -> Result<Residue> {
    let inv = mod_inverse(&Integer::from(base), m)?;
    let mut weight = inv.pow(*range.start());
    let mut total = Residue::zero(m);
    for k in range {
        total += &(&weight * &reduce_rational(&term(k), m)?);
        weight *= &inv;
    }
    Ok(total)
}

fn int_residue(v: Integer, m: &PrimePower) -> Residue {
    Residue::new(&v, m)
}

// Building blocks shared by several specs.

/// `sum_{k in range} C(2k,k)^2 / 16^k`.
fn rv_sum(ctx: &PrimeContext<'_>, m: &PrimePower, range: RangeInclusive<u64>) -> Result<Residue> {
    series(m, 16, range, |k| ctx.central(k) * ctx.central(k))
}

/// `sum_{k in range} (3k+1) C(2k,k)^3 / (-8)^k`.
fn cubic_sum(ctx: &PrimeContext<'_>, m: &PrimePower, range: RangeInclusive<u64>) -> Result<Residue> {
    series(m, -8, range, |k| {
        let c = ctx.central(k);
        c * c * c * (3 * k + 1)
    })
}

/// `A = sum_{n<p} (n+1) S(n) / 8^n`.
fn sum_a(ctx: &PrimeContext<'_>, m: &PrimePower) -> Result<Residue> {
    series(m, 8, 0..=ctx.p() - 1, |n| ctx.conv(n) * (n + 1))
}

/// `B = sum_{n<p} (2n+1) S(n) / (-16)^n`.
fn sum_b(ctx: &PrimeContext<'_>, m: &PrimePower) -> Result<Residue> {
    series(m, -16, 0..=ctx.p() - 1, |n| ctx.conv(n) * (2 * n + 1))
}

/// `sum_{k in range} C(2k,k)^2 H_k^{(2)} / 16^k`.
fn harmonic_sum(ctx: &PrimeContext<'_>, m: &PrimePower, range: RangeInclusive<u64>) -> Result<Residue> {
    series_rational(m, 16, range, |k| {
        let c = ctx.central(k);
        Rational::from_integer(c * c) * ctx.harmonic2(k)
    })
}

/// `s + c * p^j * E_{p-3}` with `s = (-1)^{(p-1)/2} * p^i` (`i = 0` or `1`).
fn sign_plus_euler(ctx: &PrimeContext<'_>, m: &PrimePower, i: u32, c: i64, j: u32) -> Residue {
    let value = ctx.p_pow(i) * ctx.sign_half() + ctx.p_pow(j) * c * ctx.euler();
    int_residue(value, m)
}

fn euler_multiple(ctx: &PrimeContext<'_>, m: &PrimePower, c: i64, j: u32) -> Residue {
    int_residue(ctx.p_pow(j) * c * ctx.euler(), m)
}

/// `(-1)^{(p-1)/4} x` where `p = x^2 + y^2`, `x = 1 (mod 4)`.
fn signed_x(ctx: &PrimeContext<'_>, m: &PrimePower) -> Result<Residue> {
    let t = two_squares(ctx.p())?;
    let sign = if ((ctx.p() - 1) / 4).is_multiple_of(2) { 1 } else { -1 };
    Ok(Residue::from_i64(sign * t.x, m))
}

/// Every registered congruence, in a fixed order.
pub fn congruence_registry() -> Vec<CongruenceSpec> {
    use PrimeFilter::*;
    let mut specs = vec![
        CongruenceSpec::single(
            "rv",
            2,
            Odd,
            |ctx, m| rv_sum(ctx, m, 0..=ctx.p() - 1),
            |ctx, m| Ok(Residue::from_i64(ctx.sign_half(), m)),
        ),
        CongruenceSpec::single(
            "rv_half_equiv",
            2,
            Odd,
            |ctx, m| rv_sum(ctx, m, 0..=ctx.p() - 1),
            |ctx, m| rv_sum(ctx, m, 0..=ctx.half()),
        ),
        CongruenceSpec::single(
            "sun_half",
            3,
            AboveThree,
            |ctx, m| rv_sum(ctx, m, 0..=ctx.half()),
            |ctx, m| Ok(sign_plus_euler(ctx, m, 0, 1, 2)),
        ),
        CongruenceSpec::single(
            "sun_tail",
            3,
            AboveThree,
            |ctx, m| rv_sum(ctx, m, ctx.half() + 1..=ctx.p() - 1),
            |ctx, m| Ok(euler_multiple(ctx, m, -2, 2)),
        ),
        CongruenceSpec::single(
            "cxh",
            4,
            AboveThree,
            |ctx, m| cubic_sum(ctx, m, 0..=ctx.p() - 1),
            |ctx, m| Ok(sign_plus_euler(ctx, m, 1, 1, 3)),
        ),
        CongruenceSpec::single(
            "mao_half",
            4,
            AboveThree,
            |ctx, m| cubic_sum(ctx, m, 0..=ctx.half()),
            |ctx, m| {
                let p = ctx.p();
                let sign = if ((p * p - 1) / 8) % 2 == 0 { 1 } else { -1 };
                let tail = Rational::new(ctx.p_pow(3) * sign, Integer::from(4)) * ctx.euler_quarter();
                let value = Rational::from_integer(ctx.p_pow(1) * ctx.sign_half()) + tail;
                reduce_dyadic(&value, m)
            },
        ),
        CongruenceSpec::single(
            "sun_x_8",
            2,
            OneModFour,
            |ctx, m| {
                series(m, 8, 0..=ctx.half(), |k| ctx.central(k) * ctx.central(k) * (k + 1))
            },
            signed_x,
        ),
        CongruenceSpec::single(
            "sun_x_16",
            2,
            OneModFour,
            |ctx, m| {
                series(m, -16, 0..=ctx.half(), |k| {
                    ctx.central(k) * ctx.central(k) * (2 * k + 1)
                })
            },
            signed_x,
        ),
        CongruenceSpec::single("sun8_p3", 3, Odd, sum_a, |ctx, m| {
            Ok(int_residue(ctx.p_pow(1) * ctx.sign_half(), m))
        }),
        CongruenceSpec::single("sun16_p3", 3, Odd, sum_b, |ctx, m| {
            Ok(int_residue(ctx.p_pow(1) * ctx.sign_half(), m))
        }),
        CongruenceSpec::single("den8", 4, AboveThree, sum_a, |ctx, m| {
            Ok(sign_plus_euler(ctx, m, 1, 5, 3))
        }),
        CongruenceSpec::single("den16", 4, AboveThree, sum_b, |ctx, m| {
            Ok(sign_plus_euler(ctx, m, 1, 3, 3))
        }),
        CongruenceSpec::single(
            "mao_cao_32",
            4,
            AboveThree,
            |ctx, m| series(m, 32, 0..=ctx.p() - 1, |n| ctx.conv(n) * n),
            |ctx, m| Ok(euler_multiple(ctx, m, -2, 3)),
        ),
        CongruenceSpec::single(
            "suncon3_half",
            1,
            AboveThree,
            |ctx, m| harmonic_sum(ctx, m, 0..=ctx.half()),
            |ctx, m| Ok(euler_multiple(ctx, m, -4, 0)),
        ),
        CongruenceSpec::single(
            "suncon3_full",
            1,
            AboveThree,
            |ctx, m| harmonic_sum(ctx, m, 0..=ctx.p() - 1),
            |ctx, m| Ok(euler_multiple(ctx, m, -4, 0)),
        ),
        CongruenceSpec::single(
            "key1_mod_p5",
            5,
            AboveThree,
            sum_b,
            |ctx, m| {
                let p2 = Rational::from_integer(ctx.p_pow(2));
                let inner = series_rational(m, 16, 0..=ctx.p() - 1, |k| {
                    let c = ctx.central(k);
                    Rational::from_integer(c * c) * (Rational::one() - &p2 * ctx.harmonic2(k))
                })?;
                Ok(inner.scale(&ctx.p_pow(1)))
            },
        ),
        CongruenceSpec::single("key_star", 4, AboveThree, sum_a, |ctx, m| {
            let b = sum_b(ctx, m)?;
            let c = cubic_sum(ctx, m, 0..=ctx.p() - 1)?;
            Ok(&(&b + &b) - &c)
        }),
    ];
    specs.push(CongruenceSpec {
        id: "prod_binom".to_string(),
        exponent: 4,
        filter: AboveThree,
        sides: Sides::PerIndex {
            index: "k",
            count: |p| p,
            lhs: Arc::new(|ctx, m, k| {
                let p = ctx.p() as i64;
                let k = k as i64;
                Ok(int_residue(binomial_i64(p - 1, k) * binomial_i64(p + k, k), m))
            }),
            rhs: Arc::new(|ctx, m, k| {
                let sign = if k % 2 == 0 { 1 } else { -1 };
                let value = (Rational::one()
                    - Rational::from_integer(ctx.p_pow(2)) * ctx.harmonic2(k))
                    * ratio(sign, 1);
                reduce_rational(&value, m)
            }),
        },
    });
    specs
}

/// Run-wide tables sized for the largest prime to be checked.
pub struct Engine {
    central: CentralBinomials,
    euler: EulerTable,
    max_prime: u64,
}

impl Engine {
    pub fn new(max_prime: u64) -> Self {
        Self {
            central: CentralBinomials::new(max_prime.max(1) as usize),
            euler: euler_numbers(max_prime.saturating_sub(3) as usize),
            max_prime,
        }
    }

    pub fn euler_table(&self) -> &EulerTable {
        &self.euler
    }

    pub fn context(&self, p: u64) -> Result<PrimeContext<'_>> {
        if !is_prime(p) || p < 3 {
            return Err(Error::PreconditionViolated(format!("{p} is not an odd prime")));
        }
        if p > self.max_prime {
            return Err(Error::PreconditionViolated(format!(
                "prime {p} exceeds the engine bound {}",
                self.max_prime
            )));
        }
        Ok(PrimeContext {
            p,
            central: &self.central,
            euler: &self.euler,
            conv: convolution_table(p as usize - 1, &self.central),
            harmonic: harmonic2_prefix(p - 1),
        })
    }

    /// Checks every spec at every admissible prime, fanning primes out over
    /// `jobs` worker threads. Output is sorted by (check id, instance).
    pub fn run(&self, specs: &[CongruenceSpec], primes: &[u64], jobs: usize) -> Vec<CheckOutcome> {
        let per_prime = |&p: &u64| -> Vec<CheckOutcome> {
            let admitted: Vec<&CongruenceSpec> =
                specs.iter().filter(|s| s.filter.admits(p)).collect();
            if admitted.is_empty() {
                return Vec::new();
            }
            match self.context(p) {
                Ok(ctx) => admitted.iter().flat_map(|s| s.evaluate(&ctx)).collect(),
                Err(e) => admitted
                    .iter()
                    .map(|s| {
                        CheckOutcome::failed(&s.id, Instance::prime(p), None, e.to_string())
                    })
                    .collect(),
            }
        };
        let mut out: Vec<CheckOutcome> = crate::parallel::map_concat(jobs, primes, per_prime);
        sort_outcomes(&mut out);
        out
    }
}

pub fn find_congruence(id: &str) -> Option<CongruenceSpec> {
    congruence_registry().into_iter().find(|s| s.id == id)
}

/// Checks one spec at one prime.
pub fn run_congruence(spec: &CongruenceSpec, p: u64) -> Result<Vec<CheckOutcome>> {
    if !spec.filter.admits(p) {
        return Err(Error::PreconditionViolated(format!(
            "{} is restricted to {}, got {p}",
            spec.id, spec.filter
        )));
    }
    let engine = Engine::new(p);
    Ok(spec.evaluate(&engine.context(p)?))
}

/// Every `(spec, prime)` pair for the given ids, single-threaded.
pub fn run_suite(primes: &[u64], ids: &[&str]) -> Result<Vec<CheckOutcome>> {
    let specs = ids
        .iter()
        .map(|id| find_congruence(id).ok_or_else(|| Error::UnknownCheck(id.to_string())))
        .collect::<Result<Vec<_>>>()?;
    let max = primes.iter().copied().max().unwrap_or(0);
    Ok(Engine::new(max).run(&specs, primes, 1))
}
