use crate::arith::is_prime;
use crate::error::{Error, Result};

/// `p = x^2 + y^2` normalized with `x = 1 (mod 4)` and `y` even and positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TwoSquares {
    pub p: u64,
    pub x: i64,
    pub y: i64,
}

/// Exhaustive search over even `y`; fine for the small primes we check.
pub fn two_squares(p: u64) -> Result<TwoSquares> {
    if p % 4 != 1 {
        return Err(Error::NotOneModFour(p));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let mut y: u64 = 2;
    while y * y < p {
        let rest = p - y * y;
        let root = rest.isqrt();
        if root * root == rest {
            let x = root as i64;
            let x = if x % 4 == 1 { x } else { -x };
            return Ok(TwoSquares { p, x, y: y as i64 });
        }
        y += 2;
    }
    unreachable!("every prime 1 mod 4 is a sum of two squares")
}
