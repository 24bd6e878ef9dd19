//! Exact identities, each with a finite parameter domain scaled by a bound.

use std::collections::BTreeMap;

use num_traits::One;

use crate::arith::{binomial_i64, ratio, Integer, Rational};
use crate::error::Result;
use crate::hypergeo::{
    chaundy_bullard_value, convolution_direct, convolution_series, convolution_via_id1,
    convolution_via_sun, sample_points, transform_sides, TransformParams,
};
use crate::outcome::{sort_outcomes, CheckOutcome, Instance, Value};

type Sides = Result<(Value, Value)>;

#[derive(Debug, Clone, Copy)]
pub struct IdentitySpec {
    pub id: &'static str,
    /// Human-readable domain at bound `N`.
    pub domain: &'static str,
    instances: fn(u64) -> Vec<Instance>,
    sides: fn(&[i64]) -> Sides,
    /// Parameter whose value groups instances into one summary record.
    group_by: Option<&'static str>,
}

impl IdentitySpec {
    /// Every instance of the declared domain at bound `bound`.
    pub fn instances(&self, bound: u64) -> Vec<Instance> {
        (self.instances)(bound)
    }

    pub fn group_by(&self) -> Option<&'static str> {
        self.group_by
    }

    /// Exact comparison at one instance.
    pub fn run(&self, instance: &Instance) -> CheckOutcome {
        let values: Vec<i64> = instance.params().iter().map(|&(_, v)| v).collect();
        match (self.sides)(&values) {
            Ok((lhs, rhs)) => CheckOutcome::compare(self.id, instance.clone(), None, lhs, rhs),
            Err(e) => CheckOutcome::failed(self.id, instance.clone(), None, e.to_string()),
        }
    }

    /// Report units at `bound`: one per instance, or one per value of the
    /// grouping parameter.
    fn units(&self, bound: u64) -> Vec<Vec<Instance>> {
        let all = self.instances(bound);
        match self.group_by {
            None => all.into_iter().map(|i| vec![i]).collect(),
            Some(name) => {
                let mut groups: BTreeMap<i64, Vec<Instance>> = BTreeMap::new();
                for inst in all {
                    let key = inst
                        .params()
                        .iter()
                        .find(|(n, _)| *n == name)
                        .map(|&(_, v)| v)
                        .expect("group parameter present");
                    groups.entry(key).or_default().push(inst);
                }
                groups.into_values().collect()
            }
        }
    }

    /// Outcomes for one unit. Grouped units give a summary record
    /// (`lhs` = cases that held, `rhs` = cases checked) plus one full record
    /// per failing case.
    fn report_unit(&self, unit: &[Instance]) -> Vec<CheckOutcome> {
        let Some(name) = self.group_by else {
            return unit.iter().map(|i| self.run(i)).collect();
        };
        let outcomes: Vec<CheckOutcome> = unit.iter().map(|i| self.run(i)).collect();
        let key = unit[0]
            .params()
            .iter()
            .find(|(n, _)| *n == name)
            .map(|&(_, v)| v)
            .expect("group parameter present");
        let held = outcomes.iter().filter(|o| o.pass).count() as u64;
        let mut out = vec![CheckOutcome::compare(
            self.id,
            Instance::new(&[(name, key)]),
            None,
            Value::Count(held),
            Value::Count(outcomes.len() as u64),
        )];
        out.extend(outcomes.into_iter().filter(|o| !o.pass));
        out
    }
}

fn exact(lhs: Rational, rhs: Rational) -> Sides {
    Ok((Value::Exact(lhs), Value::Exact(rhs)))
}

fn int(v: Integer) -> Rational {
    Rational::from_integer(v)
}

fn sign(e: i64) -> i64 {
    if e.rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

fn pow(base: i64, e: i64) -> Integer {
    num_traits::pow(Integer::from(base), e as usize)
}

fn range1(name: &'static str, lo: i64, hi: i64) -> Vec<Instance> {
    (lo..=hi).map(|v| Instance::new(&[(name, v)])).collect()
}

fn central(k: i64) -> Integer {
    binomial_i64(2 * k, k)
}

fn id1(v: &[i64]) -> Sides {
    let n = v[0] as u64;
    exact(int(convolution_direct(n)), convolution_via_id1(n))
}

fn id2(v: &[i64]) -> Sides {
    let (k, l) = (v[0], v[1]);
    let lhs: Integer = (k..=l)
        .map(|n| binomial_i64(n + k, 2 * k) * (sign(n) * (2 * n + 1)))
        .sum();
    let rhs = binomial_i64(l + k + 1, 2 * k) * (sign(l) * (l - k + 1));
    exact(int(lhs), int(rhs))
}

fn id3(v: &[i64]) -> Sides {
    let k = v[0];
    let lhs: Integer = (0..=k).map(|n| binomial_i64(n + k, n) * pow(2, n)).sum();
    let alt: Integer = (0..=k).map(|n| binomial_i64(n + k, n) * sign(n)).sum();
    let rhs = Integer::from(sign(k + 1)) - pow(-2, k + 1) * alt;
    exact(int(lhs), int(rhs))
}

fn id4(v: &[i64]) -> Sides {
    let k = v[0];
    let lhs: Integer = (0..k).map(|n| binomial_i64(-k, n) * (2 * n + k)).sum();
    let rhs = int(central(k) * (sign(k - 1) * k)) * ratio(1, 2);
    exact(int(lhs), rhs)
}

fn id5(v: &[i64]) -> Sides {
    let k = v[0];
    let lhs: Integer = (0..k)
        .map(|n| pow(-2, n) * (n - k + 1) * binomial_i64(-k, n))
        .sum();
    let inner: Integer = (0..k).map(|n| binomial_i64(-k, n) * (2 * n - 2 * k + 1)).sum();
    let rhs = Integer::from(sign(k + 1) * (3 * k - 1)) - pow(-2, k) * inner;
    exact(int(lhs), int(rhs))
}

fn id6(v: &[i64]) -> Sides {
    let k = v[0];
    let lhs: Integer = (0..=k)
        .map(|n| pow(-2, n) * (n + k + 1) * binomial_i64(k, n))
        .sum();
    exact(int(lhs), int(Integer::from(sign(k) * (3 * k + 1))))
}

fn id7(v: &[i64]) -> Sides {
    let k = v[0];
    let lhs: Integer = (0..=k).map(|n| binomial_i64(k, n) * (2 * n + 2 * k + 1)).sum();
    exact(int(lhs), int(pow(2, k) * (3 * k + 1)))
}

/// `sum_{n<m} (2n+1) S(n) / (-16)^n`.
pub fn key1_lhs(m: i64) -> Rational {
    (0..m)
        .map(|n| Rational::new(convolution_direct(n as u64) * (2 * n + 1), pow(-16, n)))
        .sum()
}

/// `m sum_{k<m} C(2k,k)^2 C(m-1,k) C(m+k,k) / (-16)^k`.
pub fn key1_rhs(m: i64) -> Rational {
    let inner: Rational = (0..m)
        .map(|k| {
            let c = central(k);
            Rational::new(
                &c * &c * binomial_i64(m - 1, k) * binomial_i64(m + k, k),
                pow(-16, k),
            )
        })
        .sum();
    inner * ratio(m, 1)
}

fn key1_exact(v: &[i64]) -> Sides {
    exact(key1_lhs(v[0]), key1_rhs(v[0]))
}

fn key8_exact(v: &[i64]) -> Sides {
    let m = v[0];
    let lhs: Rational = (0..m)
        .map(|n| Rational::new(convolution_direct(n as u64) * (n + 1), pow(8, n)))
        .sum();
    let rhs: Rational = (0..m)
        .map(|k| {
            let c = central(k);
            let inner: Integer = (0..m - k)
                .map(|n| pow(-2, n) * (n + k + 1) * binomial_i64(k, n))
                .sum();
            Rational::new(&c * &c * &c * inner, pow(8, k))
        })
        .sum();
    exact(lhs, rhs)
}

fn sumtohyper(v: &[i64]) -> Sides {
    let n = v[0];
    let c = central(n);
    let series = convolution_series(n as u64).evaluate()?;
    exact(int(convolution_direct(n as u64)), int(&c * &c) * series)
}

fn suntransform(v: &[i64]) -> Sides {
    let n = v[0] as u64;
    exact(int(convolution_direct(n)), int(convolution_via_sun(n)))
}

fn transform_4f3(v: &[i64]) -> Sides {
    let n = v[0] as u64;
    let sides = transform_sides(n, &TransformParams::convolution(n))?;
    let rhs = sides.rhs();
    exact(sides.lhs, rhs)
}

/// The transformed side written back as `16^n / C(2n,n)^2 * sum_k ...`.
fn transform_closed(v: &[i64]) -> Sides {
    let n = v[0];
    let sides = transform_sides(n as u64, &TransformParams::convolution(n as u64))?;
    let c = central(n);
    let closed = convolution_via_id1(n as u64) / int(&c * &c);
    exact(sides.rhs(), closed)
}

fn chaundy_bullard(v: &[i64]) -> Sides {
    let (n, m) = (v[0] as u64, v[1] as u64);
    let points = sample_points((n + m + 2) as usize);
    let held = points
        .iter()
        .filter(|x| chaundy_bullard_value(n, m, x).is_one())
        .count() as u64;
    Ok((Value::Count(held), Value::Count(points.len() as u64)))
}

/// Every registered identity.
pub fn identity_registry() -> Vec<IdentitySpec> {
    vec![
        IdentitySpec {
            id: "id1",
            domain: "0 <= n <= N",
            instances: |b| range1("n", 0, b as i64),
            sides: id1,
            group_by: None,
        },
        IdentitySpec {
            id: "id2",
            domain: "0 <= k <= l <= N, summarized per l",
            instances: |b| {
                let b = b as i64;
                (0..=b)
                    .flat_map(|l| (0..=l).map(move |k| Instance::new(&[("k", k), ("l", l)])))
                    .collect()
            },
            sides: id2,
            group_by: Some("l"),
        },
        IdentitySpec {
            id: "id3",
            domain: "0 <= k <= N",
            instances: |b| range1("k", 0, b as i64),
            sides: id3,
            group_by: None,
        },
        IdentitySpec {
            id: "id4",
            domain: "1 <= k <= N",
            instances: |b| range1("k", 1, b as i64),
            sides: id4,
            group_by: None,
        },
        IdentitySpec {
            id: "id5",
            domain: "1 <= k <= N",
            instances: |b| range1("k", 1, b as i64),
            sides: id5,
            group_by: None,
        },
        IdentitySpec {
            id: "id6",
            domain: "0 <= k <= N",
            instances: |b| range1("k", 0, b as i64),
            sides: id6,
            group_by: None,
        },
        IdentitySpec {
            id: "id7",
            domain: "0 <= k <= N",
            instances: |b| range1("k", 0, b as i64),
            sides: id7,
            group_by: None,
        },
        IdentitySpec {
            id: "key1_exact",
            // For even m the two sides differ by the sign (-1)^{m-1}.
            domain: "odd m, 1 <= m <= min(N, 40)",
            instances: |b| {
                (1..=b.min(40) as i64)
                    .step_by(2)
                    .map(|m| Instance::new(&[("m", m)]))
                    .collect()
            },
            sides: key1_exact,
            group_by: None,
        },
        IdentitySpec {
            id: "key8_exact",
            domain: "1 <= m <= min(N, 40)",
            instances: |b| range1("m", 1, b.min(40) as i64),
            sides: key8_exact,
            group_by: None,
        },
        IdentitySpec {
            id: "sumtohyper",
            domain: "0 <= n <= min(N, 40)",
            instances: |b| range1("n", 0, b.min(40) as i64),
            sides: sumtohyper,
            group_by: None,
        },
        IdentitySpec {
            id: "suntransform",
            domain: "0 <= n <= N",
            instances: |b| range1("n", 0, b as i64),
            sides: suntransform,
            group_by: None,
        },
        IdentitySpec {
            id: "transform_4f3",
            domain: "0 <= n <= min(N, 25)",
            instances: |b| range1("n", 0, b.min(25) as i64),
            sides: transform_4f3,
            group_by: None,
        },
        IdentitySpec {
            id: "transform_closed",
            domain: "0 <= n <= min(N, 25)",
            instances: |b| range1("n", 0, b.min(25) as i64),
            sides: transform_closed,
            group_by: None,
        },
        IdentitySpec {
            id: "chaundy_bullard",
            domain: "0 <= n, m <= min(N, 12)",
            instances: |b| {
                let b = b.min(12) as i64;
                (0..=b)
                    .flat_map(|n| (0..=b).map(move |m| Instance::new(&[("n", n), ("m", m)])))
                    .collect()
            },
            sides: chaundy_bullard,
            group_by: None,
        },
    ]
}

pub fn find_identity(id: &str) -> Option<IdentitySpec> {
    identity_registry().into_iter().find(|s| s.id == id)
}

pub fn run_identity(spec: &IdentitySpec, instance: &Instance) -> CheckOutcome {
    spec.run(instance)
}

/// Runs every spec over its domain at `bound`, sorted by (check id, instance).
pub fn run_identities(specs: &[IdentitySpec], bound: u64, jobs: usize) -> Vec<CheckOutcome> {
    let units: Vec<(&IdentitySpec, Vec<Instance>)> = specs
        .iter()
        .flat_map(|s| s.units(bound).into_iter().map(move |u| (s, u)))
        .collect();
    let mut out = crate::parallel::map_concat(jobs, &units, |(spec, unit)| spec.report_unit(unit));
    sort_outcomes(&mut out);
    out
}

/// Number of report records `spec` yields at `bound` when every case holds.
pub fn record_count(spec: &IdentitySpec, bound: u64) -> usize {
    spec.units(bound).len()
}
