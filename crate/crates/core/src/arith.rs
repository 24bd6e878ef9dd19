//! Exact integer and rational arithmetic, binomials, Pochhammer symbols,
//! primes, and residue rings modulo prime powers.
//!
//! [`Integer`] and [`Rational`] are the `num` big-number types. A
//! [`Rational`] is always stored in lowest terms with a positive
//! denominator, so the invertibility test in [`reduce_rational`] only has to
//! look at the stored denominator.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Integer = BigInt;
pub type Rational = BigRational;

/// Shorthand for building a [`Rational`] from small parts.
pub fn ratio(numer: i64, denom: i64) -> Rational {
    Rational::new(Integer::from(numer), Integer::from(denom))
}

pub fn factorial(n: u64) -> Integer {
    (2..=n).fold(Integer::one(), |acc, j| acc * j)
}

/// Generalized binomial coefficient `x(x-1)...(x-n+1)/n!` for any integer
/// upper index. Negative `n` gives 0.
pub fn binomial(x: &Integer, n: i64) -> Integer {
    if n < 0 {
        return Integer::zero();
    }
    let mut n = n as u64;
    if !x.is_negative() {
        if *x < Integer::from(n) {
            return Integer::zero();
        }
        // C(x, n) = C(x, x - n)
        let complement = x - Integer::from(n);
        if complement < Integer::from(n) {
            n = u64::try_from(&complement).expect("complement is below n");
        }
    }
    let mut acc = Integer::one();
    for i in 0..n {
        // acc = C(x, i) here, so the division is exact.
        acc = acc * (x - i) / (i + 1);
    }
    acc
}

pub fn binomial_i64(x: i64, n: i64) -> Integer {
    binomial(&Integer::from(x), n)
}

/// Rising factorial `(x)_k`.
pub fn pochhammer(x: &Rational, k: u64) -> Rational {
    let mut acc = Rational::one();
    let mut factor = x.clone();
    for _ in 0..k {
        if factor.is_zero() {
            return Rational::zero();
        }
        acc *= &factor;
        factor += Integer::one();
    }
    acc
}

/// Memo of central binomial coefficients `C(2k, k)` for `k <= max_index`.
#[derive(Debug, Clone)]
pub struct CentralBinomials {
    values: Vec<Integer>,
}

impl CentralBinomials {
    pub fn new(max_index: usize) -> Self {
        let mut values = Vec::with_capacity(max_index + 1);
        values.push(Integer::one());
        for k in 0..max_index {
            let next = &values[k] * (2 * (2 * k as u64 + 1)) / (k as u64 + 1);
            values.push(next);
        }
        Self { values }
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }

    /// `C(2k, k)`. Panics if `k` exceeds the memoized range.
    pub fn get(&self, k: usize) -> &Integer {
        &self.values[k]
    }
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every `n < 2^64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// All primes in `[lo, hi]`, ascending. Segmented sieve over the window.
pub fn primes_between(lo: u64, hi: u64) -> Vec<u64> {
    if hi < 2 || lo > hi {
        return Vec::new();
    }
    let lo = lo.max(2);
    let root = hi.isqrt();
    let mut small = vec![true; root as usize + 1];
    let mut base = Vec::new();
    for i in 2..=root as usize {
        if small[i] {
            base.push(i as u64);
            let mut j = i * i;
            while j <= root as usize {
                small[j] = false;
                j += i;
            }
        }
    }
    let mut window = vec![true; (hi - lo + 1) as usize];
    for &q in &base {
        let start = (q * q).max(lo.div_ceil(q) * q);
        let mut j = start;
        while j <= hi {
            window[(j - lo) as usize] = false;
            j += q;
        }
    }
    window
        .iter()
        .enumerate()
        .filter(|(_, &keep)| keep)
        .map(|(i, _)| lo + i as u64)
        .collect()
}

/// A modulus `p^e` with `p` prime and `e >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimePower {
    p: u64,
    e: u32,
    m: Integer,
}

impl PrimePower {
    pub fn new(p: u64, e: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if e == 0 {
            return Err(Error::ZeroExponent);
        }
        Ok(Self {
            p,
            e,
            m: num_traits::pow(Integer::from(p), e as usize),
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn exponent(&self) -> u32 {
        self.e
    }

    pub fn modulus(&self) -> &Integer {
        &self.m
    }
}

impl fmt::Display for PrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.e)
    }
}

/// An element of `Z / p^e Z`, held as its representative in `[0, p^e)`.
///
/// Binary operators panic when the two operands carry different moduli;
/// use [`Residue::try_add`] and friends when that is not known statically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Residue {
    value: Integer,
    modulus: PrimePower,
}

impl Residue {
    pub fn new(value: &Integer, modulus: &PrimePower) -> Self {
        Self {
            value: value.mod_floor(&modulus.m),
            modulus: modulus.clone(),
        }
    }

    pub fn from_i64(value: i64, modulus: &PrimePower) -> Self {
        Self::new(&Integer::from(value), modulus)
    }

    pub fn zero(modulus: &PrimePower) -> Self {
        Self {
            value: Integer::zero(),
            modulus: modulus.clone(),
        }
    }

    pub fn one(modulus: &PrimePower) -> Self {
        Self::from_i64(1, modulus)
    }

    pub fn value(&self) -> &Integer {
        &self.value
    }

    pub fn modulus(&self) -> &PrimePower {
        &self.modulus
    }

    /// Representative in `(-m/2, m/2]`.
    pub fn signed(&self) -> Integer {
        let m = &self.modulus.m;
        if &self.value * 2 > *m {
            &self.value - m
        } else {
            self.value.clone()
        }
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    pub fn pow(&self, exp: u64) -> Self {
        Self {
            value: self.value.modpow(&Integer::from(exp), &self.modulus.m),
            modulus: self.modulus.clone(),
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        mod_inverse(&self.value, &self.modulus)
    }

    pub fn scale(&self, k: &Integer) -> Self {
        Self::new(&(&self.value * k), &self.modulus)
    }

    fn check_modulus(&self, other: &Self) -> Result<()> {
        if self.modulus == other.modulus {
            Ok(())
        } else {
            Err(Error::ModulusMismatch(
                self.modulus.to_string(),
                other.modulus.to_string(),
            ))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        Ok(Self::new(&(&self.value + &other.value), &self.modulus))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        Ok(Self::new(&(&self.value - &other.value), &self.modulus))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_modulus(other)?;
        Ok(Self::new(&(&self.value * &other.value), &self.modulus))
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} (= {}) mod {}",
            self.value,
            self.signed(),
            self.modulus
        )
    }
}

macro_rules! residue_binop {
    ($trait:ident, $method:ident, $try:ident, $assign_trait:ident, $assign:ident) => {
        impl $trait<&Residue> for &Residue {
            type Output = Residue;
            fn $method(self, rhs: &Residue) -> Residue {
                self.$try(rhs).expect("residue moduli must match")
            }
        }
        impl $trait<Residue> for Residue {
            type Output = Residue;
            fn $method(self, rhs: Residue) -> Residue {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Residue> for Residue {
            type Output = Residue;
            fn $method(self, rhs: &Residue) -> Residue {
                (&self).$method(rhs)
            }
        }
        impl $assign_trait<&Residue> for Residue {
            fn $assign(&mut self, rhs: &Residue) {
                *self = (&*self).$method(rhs);
            }
        }
    };
}

residue_binop!(Add, add, try_add, AddAssign, add_assign);
residue_binop!(Sub, sub, try_sub, SubAssign, sub_assign);
residue_binop!(Mul, mul, try_mul, MulAssign, mul_assign);

impl Neg for &Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        Residue::new(&-&self.value, &self.modulus)
    }
}

impl Neg for Residue {
    type Output = Residue;
    fn neg(self) -> Residue {
        -&self
    }
}

/// `a^{-1} mod p^e` by the extended Euclidean algorithm.
pub fn mod_inverse(a: &Integer, m: &PrimePower) -> Result<Residue> {
    let a = a.mod_floor(&m.m);
    let ext = a.extended_gcd(&m.m);
    if !ext.gcd.is_one() {
        return Err(Error::NotInvertible {
            value: a.to_string(),
            modulus: m.to_string(),
        });
    }
    Ok(Residue::new(&ext.x, m))
}

/// Image of a rational in `Z / p^e Z`; the denominator must be prime to `p`.
pub fn reduce_rational(r: &Rational, m: &PrimePower) -> Result<Residue> {
    let inv = mod_inverse(r.denom(), m).map_err(|_| Error::NotInvertible {
        value: r.to_string(),
        modulus: m.to_string(),
    })?;
    Ok(inv.scale(r.numer()))
}

/// `true` when `n` is `2^j` for some `j >= 0`.
pub fn is_power_of_two(n: &Integer) -> bool {
    n.is_positive() && (n & (n - 1u32)).is_zero()
}
