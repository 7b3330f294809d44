//! Arithmetic in the prime field F_p.
//!
//! Elements are plain `u64` values reduced into `[0, p)`. The modulus is
//! capped below 2^31 so products fit in `u64` without overflow.

use crate::error::{Error, Result};

pub const DEFAULT_PRIME: u64 = 101;
pub const MAX_PRIME: u64 = 1 << 31;

/// A prime field F_p, passed by value (it is just the modulus).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p >= MAX_PRIME {
            return Err(Error::BadParameter(format!(
                "field characteristic {p} out of range [2, 2^31)"
            )));
        }
        if !is_prime(p) {
            return Err(Error::BadParameter(format!("{p} is not prime")));
        }
        Ok(Fp { p })
    }

    #[inline]
    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        let m = self.p as i64;
        (((v % m) + m) % m) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1u64;
        base %= self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            exp >>= 1;
        }
        acc
    }

    /// Inverse by Fermat; panics on zero, which is always a caller bug.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    pub fn div(&self, a: u64, b: u64) -> u64 {
        self.mul(a, self.inv(b))
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        if n == q {
            return true;
        }
        if n % q == 0 {
            return false;
        }
    }
    let mut d = 37u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops_mod_101() {
        let f = Fp::new(101).unwrap();
        assert_eq!(f.add(100, 5), 4);
        assert_eq!(f.sub(3, 7), 97);
        assert_eq!(f.mul(50, 50), 2500 % 101);
        assert_eq!(f.mul(7, f.inv(7)), 1);
        assert_eq!(f.reduce_i64(-1), 100);
    }

    #[test]
    fn rejects_composite_and_huge() {
        assert!(Fp::new(1).is_err());
        assert!(Fp::new(91).is_err());
        assert!(Fp::new(1 << 32).is_err());
        assert!(Fp::new(2).is_ok());
    }
}
