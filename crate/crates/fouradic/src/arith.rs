//! Machine-word modular arithmetic and primality testing.
//!
//! Everything here operates on `u64` with `u128` intermediates, which covers
//! every modulus the library meets outside the big-integer engine (residues
//! mod pq, candidate divisors 2pq+1 / 6pq+1, cofactor divisors 1 + 2*lambda*pq).

pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    (a as u128 * b as u128 % n as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, n);
        }
        base = mul_mod(base, base, n);
        exp >>= 1;
    }
    acc
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Modular inverse of `a` mod `n` for coprime inputs.
pub(crate) fn inv_mod(a: u64, n: u64) -> u64 {
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    debug_assert_eq!(old_r, 1, "inputs must be coprime");
    old_s.rem_euclid(n as i128) as u64
}

/// Deterministic Miller-Rabin. The base set is exact for all 64-bit inputs.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Prime factors of `n` (without multiplicity), by trial division.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Multiplicative order of `a` modulo `n`, given a multiple of the order.
pub(crate) fn order_dividing(a: u64, n: u64, group_order: u64) -> u64 {
    debug_assert_eq!(pow_mod(a, group_order, n), 1);
    let mut ord = group_order;
    for p in prime_factors(group_order) {
        while ord.is_multiple_of(p) && pow_mod(a, ord / p, n) == 1 {
            ord /= p;
        }
    }
    ord
}

pub(crate) fn is_primitive_root(g: u64, p: u64) -> bool {
    if g.is_multiple_of(p) {
        return false;
    }
    order_dividing(g % p, p, p - 1) == p - 1
}

/// Primes up to `limit` inclusive, by sieve.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_primality() {
        let primes = [2u64, 3, 5, 13, 41, 89, 1117, 2729, 131, 2671, 409891];
        for p in primes {
            assert!(is_prime(p), "{p} should be prime");
        }
        let composites = [1u64, 4, 9, 91, 391, 411, 871, 25326001];
        for c in composites {
            assert!(!is_prime(c), "{c} should be composite");
        }
    }

    #[test]
    fn primality_agrees_with_sieve() {
        let sieve = primes_up_to(10_000);
        let mut idx = 0;
        for n in 0..=10_000u64 {
            let in_sieve = idx < sieve.len() && sieve[idx] == n;
            assert_eq!(is_prime(n), in_sieve, "disagreement at {n}");
            if in_sieve {
                idx += 1;
            }
        }
    }

    #[test]
    fn pow_and_inverse() {
        assert_eq!(pow_mod(4, 65, 131), 1);
        assert_eq!(pow_mod(2, 10, 1000), 24);
        for a in [2u64, 3, 27, 64] {
            let inv = inv_mod(a, 65);
            assert_eq!(mul_mod(a, inv, 65), 1);
        }
    }

    #[test]
    fn order_computation() {
        // 2 is a primitive root of both 5 and 13
        assert_eq!(order_dividing(2, 5, 4), 4);
        assert_eq!(order_dividing(2, 13, 12), 12);
        // 4 = 2^2 has half the order
        assert_eq!(order_dividing(4, 13, 12), 6);
    }

    #[test]
    fn factor_list() {
        assert_eq!(prime_factors(2728), vec![2, 11, 31]);
        assert_eq!(prime_factors(1), Vec::<u64>::new());
        assert_eq!(prime_factors(97), vec![97]);
    }
}
