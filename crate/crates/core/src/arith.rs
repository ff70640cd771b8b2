//! Integer arithmetic helpers: primality testing, factoring, and modular
//! exponentiation at the sizes the field tower needs (orders up to `u128`).

use std::collections::BTreeMap;

pub fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn mulmod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn powmod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod_u64(acc, base, m);
        }
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for `u64` (the usual 12-base certificate).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Brent-cycle Pollard rho; returns a nontrivial factor of a composite `n`.
fn pollard_rho(n: u64) -> u64 {
    if n % 2 == 0 {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| (mulmod_u64(x, x, n) + c) % n;
        let mut x = 2u64;
        let mut y = 2u64;
        let mut d = 1u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u64(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Full factorization of a `u64` into prime powers.
pub fn factor_u64(n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut stack = vec![n];
    while let Some(mut v) = stack.pop() {
        if v <= 1 {
            continue;
        }
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
            while v % p == 0 {
                *out.entry(p).or_insert(0) += 1;
                v /= p;
            }
        }
        if v == 1 {
            continue;
        }
        if is_prime_u64(v) {
            *out.entry(v).or_insert(0) += 1;
        } else {
            let d = pollard_rho(v);
            stack.push(d);
            stack.push(v / d);
        }
    }
    out
}

pub fn checked_pow_u128(base: u64, exp: u32) -> Option<u128> {
    let mut acc: u128 = 1;
    for _ in 0..exp {
        acc = acc.checked_mul(base as u128)?;
    }
    Some(acc)
}

fn divisors(n: u32) -> Vec<u32> {
    let mut out: Vec<u32> = (1..=n).filter(|d| n % d == 0).collect();
    out.sort_unstable();
    out
}

/// Factors `p^n - 1` by splitting it into the values `Phi_d(p)` of the
/// cyclotomic polynomials for `d | n` and factoring each value separately.
/// Every `Phi_d(p)` must fit in a `u64`; beyond that the field order is out
/// of the supported range and `None` is returned.
pub fn factor_prime_power_minus_one(p: u64, n: u32) -> Option<BTreeMap<u128, u32>> {
    let mut phi: BTreeMap<u32, u128> = BTreeMap::new();
    for d in divisors(n) {
        let mut val = checked_pow_u128(p, d)? - 1;
        for (&e, &phi_e) in &phi {
            if d % e == 0 {
                debug_assert_eq!(val % phi_e, 0);
                val /= phi_e;
            }
        }
        phi.insert(d, val);
    }
    let mut out: BTreeMap<u128, u32> = BTreeMap::new();
    for (_, val) in phi {
        let small: u64 = val.try_into().ok()?;
        if small <= 1 {
            continue;
        }
        for (prime, mult) in factor_u64(small) {
            *out.entry(prime as u128).or_insert(0) += mult;
        }
    }
    Some(out)
}

/// Multiplicative order of `a` modulo `m` (requires `gcd(a, m) = 1`).
pub fn multiplicative_order_mod(a: u64, m: u64) -> Option<u32> {
    if m < 2 || gcd_u64(a % m, m) != 1 {
        return None;
    }
    let mut x = a % m;
    for t in 1..=m {
        if x == 1 {
            return Some(t as u32);
        }
        x = mulmod_u64(x, a, m);
    }
    None
}

pub fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)?;
        acc /= (i + 1) as u128;
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_small_and_large() {
        let primes = [2u64, 3, 5, 7, 13, 17, 23, 47, 104729, 2147483647];
        for p in primes {
            assert!(is_prime_u64(p), "{p} should be prime");
        }
        for c in [1u64, 4, 9, 25, 49, 91, 561, 104730] {
            assert!(!is_prime_u64(c), "{c} should be composite");
        }
    }

    #[test]
    fn factoring_recovers_products() {
        let f = factor_u64(2u64.pow(12) - 1); // 4095 = 3^2 * 5 * 7 * 13
        assert_eq!(f.get(&3), Some(&2));
        assert_eq!(f.get(&5), Some(&1));
        assert_eq!(f.get(&7), Some(&1));
        assert_eq!(f.get(&13), Some(&1));
        let n = 600851475143u64;
        let f = factor_u64(n);
        let back: u64 = f.iter().map(|(p, e)| p.pow(*e)).product();
        assert_eq!(back, n);
        for p in f.keys() {
            assert!(is_prime_u64(*p));
        }
    }

    #[test]
    fn cyclotomic_factoring_matches_direct() {
        for (p, n) in [(2u64, 12u32), (3, 8), (5, 6), (7, 4), (5, 22)] {
            let via_phi = factor_prime_power_minus_one(p, n).unwrap();
            let order = checked_pow_u128(p, n).unwrap() - 1;
            let back: u128 = via_phi
                .iter()
                .map(|(q, e)| {
                    let mut acc: u128 = 1;
                    for _ in 0..*e {
                        acc *= q;
                    }
                    acc
                })
                .product();
            assert_eq!(back, order, "p={p} n={n}");
        }
    }

    #[test]
    fn orders_mod_small_primes() {
        assert_eq!(multiplicative_order_mod(4, 13), Some(6));
        assert_eq!(multiplicative_order_mod(5, 3), Some(2));
        assert_eq!(multiplicative_order_mod(2, 7), Some(3));
        assert_eq!(multiplicative_order_mod(3, 7), Some(6));
        assert_eq!(multiplicative_order_mod(7, 7), None);
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial_u128(13, 6), Some(1716));
        assert_eq!(binomial_u128(17, 5), Some(6188));
        assert_eq!(binomial_u128(5, 0), Some(1));
        assert_eq!(binomial_u128(4, 9), Some(0));
    }
}
