//! Euler numbers, Euler polynomials and second-order harmonic numbers.

use num_traits::{One, Zero};

use crate::arith::{binomial_i64, ratio, Integer, Rational};

/// Euler numbers `E_0..=E_max` from the even-index recurrence
/// `sum_{k even} C(n, k) E_{n-k} = 0` for `n >= 1`, with `E_0 = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EulerTable {
    values: Vec<Integer>,
}

impl EulerTable {
    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `E_n`. Panics beyond `max_index`.
    pub fn get(&self, n: usize) -> &Integer {
        &self.values[n]
    }

    pub fn values(&self) -> &[Integer] {
        &self.values
    }
}

pub fn euler_numbers(max_index: usize) -> EulerTable {
    let mut values: Vec<Integer> = Vec::with_capacity(max_index + 1);
    values.push(Integer::one());
    for n in 1..=max_index {
        // The k = 0 term is E_n itself.
        let rest: Integer = (2..=n)
            .step_by(2)
            .map(|k| binomial_i64(n as i64, k as i64) * &values[n - k])
            .sum();
        values.push(-rest);
    }
    EulerTable { values }
}

/// `E_n(x) = sum_k C(n, k) (E_k / 2^k) (x - 1/2)^{n-k}`.
///
/// Panics if `table` does not reach index `n`.
pub fn euler_polynomial(table: &EulerTable, n: usize, x: &Rational) -> Rational {
    assert!(n <= table.max_index(), "Euler table too short for E_{n}(x)");
    let shift = x - ratio(1, 2);
    let mut shift_pow = Rational::one();
    let mut acc = Rational::zero();
    // Walk k downward so the power of (x - 1/2) grows by one per step.
    for k in (0..=n).rev() {
        let two_k = Integer::one() << k;
        let coeff = Rational::new(binomial_i64(n as i64, k as i64) * table.get(k), two_k);
        acc += coeff * &shift_pow;
        shift_pow *= &shift;
    }
    acc
}

/// `H_k^{(2)} = sum_{j=1}^k 1/j^2`.
pub fn harmonic2(k: u64) -> Rational {
    (1..=k).fold(Rational::zero(), |acc, j| {
        acc + Rational::new(Integer::one(), Integer::from(j * j))
    })
}

/// `[H_0^{(2)}, ..., H_max^{(2)}]`, built incrementally.
pub fn harmonic2_prefix(max: u64) -> Vec<Rational> {
    let mut out = Vec::with_capacity(max as usize + 1);
    let mut acc = Rational::zero();
    out.push(acc.clone());
    for j in 1..=max {
        acc += Rational::new(Integer::one(), Integer::from(j * j));
        out.push(acc.clone());
    }
    out
}
