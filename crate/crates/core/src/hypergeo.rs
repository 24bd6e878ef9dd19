//! Truncated hypergeometric series over the rationals, the three routes to
//! the convolution `S(n) = sum_k C(2k,k)^2 C(2n-2k,n-k)^2`, and checkers for
//! the terminating balanced 4F3 transformation and the Chaundy-Bullard
//! polynomial identity.

use num_traits::{One, Signed, Zero};

use crate::arith::{binomial_i64, pochhammer, ratio, CentralBinomials, Integer, Rational};
use crate::error::{Error, Result};
use crate::outcome::{CheckOutcome, Instance, Value};

/// Parameters of `nF_{n-1}[upper; lower | z]_m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HypergeometricSpec {
    upper: Vec<Rational>,
    lower: Vec<Rational>,
    argument: Rational,
    truncation: u64,
}

/// First `k < truncation` with `y + k = 0`, i.e. where `(y)_{k+1}` vanishes.
fn vanishing_index(y: &Rational, truncation: u64) -> Option<u64> {
    if !y.is_integer() || y.is_positive() {
        return None;
    }
    let k = u64::try_from(-y.to_integer()).ok()?;
    (k < truncation).then_some(k + 1)
}

impl HypergeometricSpec {
    pub fn new(
        upper: Vec<Rational>,
        lower: Vec<Rational>,
        argument: Rational,
        truncation: u64,
    ) -> Result<Self> {
        if upper.len() != lower.len() + 1 {
            return Err(Error::ParameterCount {
                upper: upper.len(),
                lower: lower.len(),
                expected: lower.len() + 1,
            });
        }
        for y in &lower {
            if let Some(k) = vanishing_index(y, truncation) {
                return Err(Error::ZeroLowerPochhammer {
                    param: y.to_string(),
                    k,
                });
            }
        }
        Ok(Self::new_unchecked(upper, lower, argument, truncation))
    }

    /// Skips the parameter checks; [`HypergeometricSpec::evaluate`] still
    /// reports a vanishing lower Pochhammer symbol.
    pub fn new_unchecked(
        upper: Vec<Rational>,
        lower: Vec<Rational>,
        argument: Rational,
        truncation: u64,
    ) -> Self {
        Self {
            upper,
            lower,
            argument,
            truncation,
        }
    }

    pub fn upper(&self) -> &[Rational] {
        &self.upper
    }

    pub fn lower(&self) -> &[Rational] {
        &self.lower
    }

    pub fn argument(&self) -> &Rational {
        &self.argument
    }

    pub fn truncation(&self) -> u64 {
        self.truncation
    }

    /// Exact value of the truncated series, summed with the term ratio
    /// `prod(x_i + k) / prod(y_j + k) * z / (k + 1)`.
    pub fn evaluate(&self) -> Result<Rational> {
        let mut term = Rational::one();
        let mut total = Rational::one();
        for k in 0..self.truncation {
            let shift = Rational::from_integer(Integer::from(k));
            let mut num = self.argument.clone();
            for x in &self.upper {
                num *= x + &shift;
            }
            if num.is_zero() {
                // An upper parameter hit a nonpositive integer: every later term is 0.
                break;
            }
            let mut den = Rational::from_integer(Integer::from(k + 1));
            for y in &self.lower {
                let factor = y + &shift;
                if factor.is_zero() {
                    return Err(Error::ZeroLowerPochhammer {
                        param: y.to_string(),
                        k: k + 1,
                    });
                }
                den *= factor;
            }
            term = term * num / den;
            total += &term;
        }
        Ok(total)
    }
}

pub fn evaluate_truncated(spec: &HypergeometricSpec) -> Result<Rational> {
    spec.evaluate()
}

/// `S(n)` straight from its definition, using a memo that reaches index `n`.
pub fn convolution_direct_with(n: usize, central: &CentralBinomials) -> Integer {
    (0..=n)
        .map(|k| {
            let prod = central.get(k) * central.get(n - k);
            &prod * &prod
        })
        .sum()
}

pub fn convolution_direct(n: u64) -> Integer {
    convolution_direct_with(n as usize, &CentralBinomials::new(n as usize))
}

/// `S(0), ..., S(max_n)`.
pub fn convolution_table(max_n: usize, central: &CentralBinomials) -> Vec<Integer> {
    (0..=max_n)
        .map(|n| convolution_direct_with(n, central))
        .collect()
}

/// `16^n sum_k C(n+k,k) C(n,k) C(2k,k)^2 / (-16)^k`.
pub fn convolution_via_id1(n: u64) -> Rational {
    let n = n as i64;
    let mut total = Rational::zero();
    let mut denom = Integer::one();
    for k in 0..=n {
        let c = binomial_i64(2 * k, k);
        let num = binomial_i64(n + k, k) * binomial_i64(n, k) * &c * &c;
        total += Rational::new(num, denom.clone());
        denom *= -16;
    }
    total * Rational::from_integer(num_traits::pow(Integer::from(16), n as usize))
}

/// `sum_k C(2k,k)^3 C(k, n-k) (-16)^{n-k}`.
pub fn convolution_via_sun(n: u64) -> Integer {
    let n = n as i64;
    (0..=n)
        .map(|k| {
            let c = binomial_i64(2 * k, k);
            let weight = num_traits::pow(Integer::from(-16), (n - k) as usize);
            &c * &c * &c * binomial_i64(k, n - k) * weight
        })
        .sum()
}

/// `4F3[1/2, 1/2, -n, -n; 1, 1/2-n, 1/2-n | 1]_n`, which times `C(2n,n)^2` is `S(n)`.
pub fn convolution_series(n: u64) -> HypergeometricSpec {
    let half = ratio(1, 2);
    let minus_n = ratio(-(n as i64), 1);
    let half_minus_n = &half + &minus_n;
    HypergeometricSpec::new(
        vec![half.clone(), half, minus_n.clone(), minus_n],
        vec![ratio(1, 1), half_minus_n.clone(), half_minus_n],
        ratio(1, 1),
        n,
    )
    .expect("half-integer lower parameters never vanish")
}

/// Parameters `a..f` of the balanced terminating 4F3 transformation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformParams {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
    pub f: Rational,
}

impl TransformParams {
    /// `a = c = 1/2, b = -n, d = 1, e = f = 1/2 - n`, which turns the left side
    /// into the series for `S(n) / C(2n,n)^2`.
    pub fn convolution(n: u64) -> Self {
        let half_minus_n = ratio(1, 2) - ratio(n as i64, 1);
        Self {
            a: ratio(1, 2),
            b: ratio(-(n as i64), 1),
            c: ratio(1, 2),
            d: ratio(1, 1),
            e: half_minus_n.clone(),
            f: half_minus_n,
        }
    }

    fn is_balanced(&self, n: u64) -> bool {
        &self.a + &self.b + &self.c - ratio(n as i64, 1) + ratio(1, 1)
            == &self.d + &self.e + &self.f
    }
}

/// Both sides of the transformation at truncation `n`.
pub struct TransformSides {
    pub lhs: Rational,
    pub prefactor: Rational,
    pub transformed: Rational,
}

impl TransformSides {
    pub fn rhs(&self) -> Rational {
        &self.prefactor * &self.transformed
    }
}

/// Evaluates
/// `4F3[-n,a,b,c; d,e,f | 1]` and
/// `(e-a)_n (f-a)_n / ((e)_n (f)_n) * 4F3[-n,a,d-b,d-c; d,a+1-n-e,a+1-n-f | 1]`.
///
/// Besides the balancing condition, every lower parameter on both sides must
/// keep its Pochhammer symbol nonzero up to `n`. That second requirement is
/// stricter than necessary for the identity itself.
pub fn transform_sides(n: u64, params: &TransformParams) -> Result<TransformSides> {
    let TransformParams { a, b, c, d, e, f } = params;
    if !params.is_balanced(n) {
        return Err(Error::PreconditionViolated(format!(
            "a+b+c-n+1 != d+e+f for n={n}"
        )));
    }
    let minus_n = ratio(-(n as i64), 1);
    let shift = a + ratio(1, 1) - ratio(n as i64, 1);
    let new_e = &shift - e;
    let new_f = &shift - f;
    for (name, y) in [("d", d), ("e", e), ("f", f), ("a+1-n-e", &new_e), ("a+1-n-f", &new_f)] {
        if pochhammer(y, n).is_zero() {
            return Err(Error::PreconditionViolated(format!(
                "lower parameter {name} = {y} has ({y})_{n} = 0"
            )));
        }
    }
    let left = HypergeometricSpec::new(
        vec![minus_n.clone(), a.clone(), b.clone(), c.clone()],
        vec![d.clone(), e.clone(), f.clone()],
        ratio(1, 1),
        n,
    )?;
    let right = HypergeometricSpec::new(
        vec![minus_n, a.clone(), d - b, d - c],
        vec![d.clone(), new_e, new_f],
        ratio(1, 1),
        n,
    )?;
    let prefactor = pochhammer(&(e - a), n) * pochhammer(&(f - a), n)
        / (pochhammer(e, n) * pochhammer(f, n));
    Ok(TransformSides {
        lhs: left.evaluate()?,
        prefactor,
        transformed: right.evaluate()?,
    })
}

pub fn check_transform(n: u64, params: &TransformParams) -> Result<CheckOutcome> {
    let sides = transform_sides(n, params)?;
    Ok(CheckOutcome::exact(
        "transform_4f3",
        Instance::new(&[("n", n as i64)]),
        sides.lhs.clone(),
        sides.rhs(),
    ))
}

/// Distinct sample points `2, -1, 1/3, 3/7, 5, -2/9`, then
/// `(-1)^j (j+2)/(2j+3)` for `j = 1, 2, ...`.
pub fn sample_points(count: usize) -> Vec<Rational> {
    let mut points = vec![
        ratio(2, 1),
        ratio(-1, 1),
        ratio(1, 3),
        ratio(3, 7),
        ratio(5, 1),
        ratio(-2, 9),
    ];
    let mut j: i64 = 1;
    while points.len() < count {
        let sign = if j % 2 == 0 { 1 } else { -1 };
        let candidate = ratio(sign * (j + 2), 2 * j + 3);
        if !points.contains(&candidate) {
            points.push(candidate);
        }
        j += 1;
    }
    points.truncate(count);
    points
}

/// Right side of the Chaundy-Bullard identity at `x`:
/// `(1-x)^{n+1} sum_{k<=m} C(n+k,k) x^k + x^{m+1} sum_{k<=n} C(m+k,k) (1-x)^k`.
pub fn chaundy_bullard_value(n: u64, m: u64, x: &Rational) -> Rational {
    let one_minus = ratio(1, 1) - x;
    let partial = |top: u64, len: u64, t: &Rational| -> Rational {
        let mut acc = Rational::zero();
        let mut power = Rational::one();
        for k in 0..=len {
            acc += Rational::from_integer(binomial_i64((top + k) as i64, k as i64)) * &power;
            power *= t;
        }
        acc
    };
    let first = num_traits::pow(one_minus.clone(), (n + 1) as usize) * partial(n, m, x);
    let second = num_traits::pow(x.clone(), (m + 1) as usize) * partial(m, n, &one_minus);
    first + second
}

/// The right side has degree at most `n+m+1`, so agreement with the constant
/// 1 at `n+m+2` distinct points proves the identity for this `(n, m)`.
pub fn check_chaundy_bullard(n: u64, m: u64) -> CheckOutcome {
    let points = sample_points((n + m + 2) as usize);
    let held = points
        .iter()
        .filter(|x| chaundy_bullard_value(n, m, x).is_one())
        .count() as u64;
    CheckOutcome::compare(
        "chaundy_bullard",
        Instance::new(&[("n", n as i64), ("m", m as i64)]),
        None,
        Value::Count(held),
        Value::Count(points.len() as u64),
    )
}
