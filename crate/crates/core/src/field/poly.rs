//! Polynomial arithmetic over prime fields on raw coefficient vectors
//! (ascending order, entries reduced mod p). Used to define extension
//! fields and to search for canonical defining polynomials.

use crate::arith::{mulmod_u64, powmod_u64};

pub fn trim(mut v: Vec<u64>) -> Vec<u64> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

pub fn degree(v: &[u64]) -> Option<usize> {
    v.iter().rposition(|&c| c != 0)
}

pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + y) % p;
    }
    trim(out)
}

pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for i in 0..n {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        out[i] = (x + p - y) % p;
    }
    trim(out)
}

pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod_u64(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Remainder of `a` divided by a monic `m`.
pub fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    let md = degree(m).expect("modulus must be nonzero");
    assert_eq!(m[md], 1, "modulus must be monic");
    let mut r: Vec<u64> = a.to_vec();
    while let Some(rd) = degree(&r) {
        if rd < md {
            break;
        }
        let c = r[rd];
        let shift = rd - md;
        for i in 0..=md {
            r[shift + i] = (r[shift + i] + p - mulmod_u64(c, m[i], p)) % p;
        }
    }
    trim(r)
}

pub fn mulrem(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
    rem(&mul(a, b, p), m, p)
}

pub fn powrem(base: &[u64], mut exp: u128, m: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, m, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulrem(&acc, &b, m, p);
        }
        b = mulrem(&b, &b, m, p);
        exp >>= 1;
    }
    acc
}

fn make_monic(a: &[u64], p: u64) -> Vec<u64> {
    match degree(a) {
        None => Vec::new(),
        Some(d) => {
            let inv = powmod_u64(a[d], p - 2, p);
            trim(a.iter().map(|&c| mulmod_u64(c, inv, p)).collect())
        }
    }
}

pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut x = trim(a.to_vec());
    let mut y = make_monic(b, p);
    while !y.is_empty() {
        let r = rem(&x, &y, p);
        x = y;
        y = make_monic(&r, p);
    }
    make_monic(&x, p)
}

/// Rabin irreducibility test for a monic degree-n polynomial over F_p:
/// `X^(p^n) = X (mod f)` and `gcd(X^(p^(n/l)) - X, f) = 1` for each prime
/// divisor `l` of `n`.
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let n = match degree(f) {
        Some(0) | None => return false,
        Some(n) => n,
    };
    if f[n] != 1 {
        return false;
    }
    if n == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut prime_divs = Vec::new();
    let mut m = n;
    let mut d = 2usize;
    while d * d <= m {
        if m % d == 0 {
            prime_divs.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        prime_divs.push(m);
    }
    for l in prime_divs {
        let e = crate::arith::checked_pow_u128(p, (n / l) as u32).expect("exponent in range");
        let xpe = powrem(&x, e, f, p);
        let g = gcd(&sub(&xpe, &x, p), f, p);
        if degree(&g) != Some(0) {
            return false;
        }
    }
    let e = crate::arith::checked_pow_u128(p, n as u32).expect("exponent in range");
    powrem(&x, e, f, p) == x
}

/// Whether the class of X generates the multiplicative group mod `f`,
/// given the prime factorization of `p^n - 1`. `f` must be irreducible.
pub fn class_of_x_is_primitive(f: &[u64], p: u64, order_factors: &[(u128, u32)]) -> bool {
    let n = degree(f).expect("nonzero");
    if f[0] == 0 && n >= 1 {
        return false; // X divides f, so X is zero or a zero divisor mod f
    }
    let order = crate::arith::checked_pow_u128(p, n as u32).expect("in range") - 1;
    let x = vec![0u64, 1];
    for (q, _) in order_factors {
        if powrem(&x, order / q, f, p) == vec![1u64] {
            return false;
        }
    }
    true
}

/// The least monic primitive polynomial of degree `n` over F_p, where
/// "least" orders the non-leading coefficient vectors `(c_0, .., c_{n-1})`
/// by their value `sum c_i p^i`.
pub fn least_primitive_poly(p: u64, n: u32, order_factors: &[(u128, u32)]) -> Vec<u64> {
    let n = n as usize;
    let mut coeffs = vec![0u64; n + 1];
    coeffs[n] = 1;
    loop {
        if is_irreducible(&coeffs, p) && class_of_x_is_primitive(&coeffs, p, order_factors) {
            return coeffs;
        }
        let mut i = 0;
        loop {
            assert!(i < n, "no primitive polynomial of degree {n} over F_{p}");
            coeffs[i] += 1;
            if coeffs[i] < p {
                break;
            }
            coeffs[i] = 0;
            i += 1;
        }
    }
}
