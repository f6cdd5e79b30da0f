//! Integer helpers shared by the group, form and elimination code.

use num_integer::Integer;

use crate::error::{Error, Result};

/// Least nonnegative residue of `a` modulo `m`.
#[inline]
pub fn modp(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// `a * b mod m` without intermediate overflow.
#[inline]
pub fn mulmod(a: i64, b: i64, m: i64) -> i64 {
    ((a as i128 * b as i128).rem_euclid(m as i128)) as i64
}

/// Extended Euclid with reproducible coefficients.
///
/// Returns `(g, x, y)` with `x*a + y*b = g = gcd(a, b) >= 0`. When `b != 0`
/// the coefficient `x` is normalized into `[0, |b/g|)`.
pub fn bezout(a: i64, b: i64) -> Result<(i64, i64, i64)> {
    if a == 0 && b == 0 {
        return Err(Error::ZeroBezout);
    }
    let ext = a.extended_gcd(&b);
    let (mut g, mut x, mut y) = (ext.gcd, ext.x, ext.y);
    if g < 0 {
        g = -g;
        x = -x;
        y = -y;
    }
    if b != 0 {
        let step = (b / g).abs();
        let x0 = x.rem_euclid(step);
        // x*a + y*b stays fixed when x moves by b/g and y by -a/g.
        let shifts = (x0 - x) / step;
        let sign = if b / g > 0 { 1 } else { -1 };
        x = x0;
        y -= shifts * sign * (a / g);
    }
    debug_assert_eq!(x as i128 * a as i128 + y as i128 * b as i128, g as i128);
    Ok((g, x, y))
}

/// Multiplicative inverse of `u` modulo `m`, if it exists.
pub fn inv_mod(u: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let ext = modp(u, m).extended_gcd(&m);
    if ext.gcd.abs() != 1 {
        return None;
    }
    Some(modp(ext.x * ext.gcd, m))
}

/// Distinct prime divisors of `n > 0`.
pub fn prime_divisors(mut n: i64) -> Vec<i64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime-power factorization of `n > 0` as `(p, e)` pairs.
pub fn factorize(mut n: i64) -> Vec<(i64, u32)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Finds `k` with `gcd(a + k*b, n) = gcd(a, b, n)`.
pub fn gcd_shift(a: i64, b: i64, n: i64) -> i64 {
    let d = a.gcd(&b).gcd(&n);
    if d == 0 {
        return 0;
    }
    let (a, n) = (a / d, n / d);
    // Product of the primes of n that do not divide a.
    prime_divisors(n.abs().max(1))
        .into_iter()
        .filter(|p| a % p != 0)
        .product()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bezout_examples() {
        assert_eq!(bezout(4, 6).unwrap().0, 2);
        assert_eq!(bezout(1, 0).unwrap(), (1, 1, 0));
        let (g, x, y) = bezout(35, 15).unwrap();
        assert_eq!((g, x, y), (5, 1, -2));
        assert_eq!(35 * x + 15 * y, 5);
        assert_eq!(bezout(0, 0), Err(Error::ZeroBezout));
    }

    #[test]
    fn bezout_normalization_range() {
        for a in -30..30 {
            for b in -30..30 {
                if a == 0 && b == 0 {
                    continue;
                }
                let (g, x, y) = bezout(a, b).unwrap();
                assert_eq!(g, a.gcd(&b));
                assert_eq!(x * a + y * b, g);
                if b != 0 {
                    assert!(0 <= x && x < (b / g).abs(), "{a} {b} -> {x}");
                }
            }
        }
    }

    #[test]
    fn gcd_shift_reaches_target() {
        for n in 1..40 {
            for a in 0..n {
                for b in 0..n {
                    let k = gcd_shift(a, b, n);
                    assert_eq!((a + k * b).gcd(&n), a.gcd(&b).gcd(&n), "a={a} b={b} n={n}");
                }
            }
        }
    }

    #[test]
    fn inverse_mod() {
        assert_eq!(inv_mod(3, 4), Some(3));
        assert_eq!(inv_mod(2, 4), None);
        assert_eq!(inv_mod(5, 6), Some(5));
    }
}
