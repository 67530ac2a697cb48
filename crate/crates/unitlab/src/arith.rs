//! Integer helpers: gcd/lcm, primality, factorization, modular arithmetic.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Least common multiple; panics on overflow (callers keep inputs far below u64::MAX).
pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

pub fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u128, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mod_mul(acc, base, m);
        }
        base = mod_mul(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for u64 (the base set below is exact for all 64-bit inputs).
pub fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if x == p {
            return true;
        }
        if x.is_multiple_of(p) {
            return false;
        }
    }
    let mut d = x - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut y = mod_pow(a, d as u128, x);
        if y == 1 || y == x - 1 {
            continue;
        }
        for _ in 1..s {
            y = mod_mul(y, y, x);
            if y == x - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const TRIAL_DIVISION_BOUND: u64 = 1 << 20;

/// Factorization outcome: complete prime-power list, plus an unfactored
/// composite cofactor when the input defeats trial division.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub factors: Vec<(u64, u32)>,
    pub cofactor: Option<u64>,
}

impl Factorization {
    pub fn is_complete(&self) -> bool {
        self.cofactor.is_none()
    }
}

fn integer_nth_root(x: u64, n: u32) -> u64 {
    if x == 0 {
        return 0;
    }
    let mut r = (x as f64).powf(1.0 / n as f64) as u64;
    // float estimate can be off by one in either direction
    while r.checked_pow(n).is_none_or(|v| v > x) {
        r -= 1;
    }
    while (r + 1).checked_pow(n).is_some_and(|v| v <= x) {
        r += 1;
    }
    r
}

/// Trial division up to 2^20, then probable-prime and perfect-power detection
/// on the cofactor. Anything still composite is returned unfactored.
pub fn factor(x: u64) -> Factorization {
    assert!(x >= 1, "factor(0) undefined");
    let mut factors = Vec::new();
    let mut rest = x;
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_BOUND && d * d <= rest {
        if rest.is_multiple_of(d) {
            let mut e = 0u32;
            while rest.is_multiple_of(d) {
                rest /= d;
                e += 1;
            }
            factors.push((d, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if rest > 1 {
        if rest <= TRIAL_DIVISION_BOUND * TRIAL_DIVISION_BOUND || is_prime(rest) {
            // trial division reached sqrt(rest), so rest is prime
            factors.push((rest, 1));
        } else {
            let mut split = None;
            for e in (2..=3u32).rev() {
                let r = integer_nth_root(rest, e);
                if r.pow(e) == rest && is_prime(r) {
                    split = Some((r, e));
                    break;
                }
            }
            match split {
                Some((p, e)) => factors.push((p, e)),
                None => return Factorization { factors, cofactor: Some(rest) },
            }
        }
    }
    factors.sort_unstable();
    Factorization { factors, cofactor: None }
}

/// Complete factorization or None when trial division gives up.
pub fn factor_complete(x: u64) -> Option<Vec<(u64, u32)>> {
    let f = factor(x);
    f.is_complete().then_some(f.factors)
}

/// Writes q as p^k for prime p, if possible.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = factor_complete(q)?;
    match f.as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

pub fn checked_pow_u128(base: u128, exp: u32) -> Option<u128> {
    base.checked_pow(exp)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        assert!(is_prime(2));
        assert!(is_prime(97));
        assert!(is_prime(4294967311)); // first prime above 2^32
        assert!(!is_prime(1));
        assert!(!is_prime(561)); // Carmichael
        assert!(!is_prime((1 << 20) + 1));
    }

    #[test]
    fn factors_small() {
        assert_eq!(factor_complete(1), Some(vec![]));
        assert_eq!(factor_complete(12), Some(vec![(2, 2), (3, 1)]));
        assert_eq!(factor_complete(960), Some(vec![(2, 6), (3, 1), (5, 1)]));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(32), Some((2, 5)));
        assert_eq!(prime_power(12), None);
    }

    #[test]
    fn factors_large_prime_square() {
        let p = 4294967311u64; // > 2^32, beyond trial division
        let f = factor(p * 2);
        assert_eq!(f.factors, vec![(2, 1), (p, 1)]);
        assert!(f.is_complete());
        // perfect power of a large prime
        let big = 2147483659u64; // prime > 2^31
        assert_eq!(prime_power(big * big), Some((big, 2)));
    }

    #[test]
    fn factor_gives_up_cleanly() {
        let a = 2147483659u64;
        let b = 2147483693u64;
        let f = factor(a * b);
        assert_eq!(f.cofactor, Some(a * b));
    }

    #[test]
    fn gcd_lcm() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(gcd(0, 7), 7);
    }
}
