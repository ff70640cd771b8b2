//! Canonical defining polynomials for the fields used by the constructions.
//!
//! Small fields carry their published Conway polynomial so that element
//! representations (and therefore printed generator matrices) are stable
//! across toolkits. Field shapes outside the table fall back to a
//! deterministic search: the least monic primitive polynomial of the right
//! degree, with degree one canonicalised as `x - g` for the least
//! primitive root `g`.

use super::poly;

/// Conway polynomials, ascending coefficients, monic coefficient last.
const TABLE: &[(u64, u32, &[u64])] = &[
    (2, 1, &[1, 1]),
    (2, 2, &[1, 1, 1]),
    (2, 3, &[1, 1, 0, 1]),
    (2, 4, &[1, 1, 0, 0, 1]),
    (2, 5, &[1, 0, 1, 0, 0, 1]),
    (3, 1, &[1, 1]),
    (3, 2, &[2, 2, 1]),
    (3, 3, &[1, 2, 0, 1]),
    (5, 1, &[3, 1]),
    (5, 2, &[2, 4, 1]),
    (7, 1, &[4, 1]),
    (7, 2, &[3, 6, 1]),
    (11, 1, &[9, 1]),
    (13, 1, &[11, 1]),
    (17, 1, &[14, 1]),
    (19, 1, &[17, 1]),
    (23, 1, &[18, 1]),
    (29, 1, &[27, 1]),
    (31, 1, &[28, 1]),
    (37, 1, &[35, 1]),
    (41, 1, &[35, 1]),
    (43, 1, &[40, 1]),
    (47, 1, &[42, 1]),
];

pub fn lookup(p: u64, n: u32) -> Option<Vec<u64>> {
    TABLE
        .iter()
        .find(|&&(tp, tn, _)| tp == p && tn == n)
        .map(|&(_, _, c)| c.to_vec())
}

/// The canonical modulus for F_{p^n}: the table entry when present,
/// otherwise the deterministic fallback.
pub fn canonical_modulus(p: u64, n: u32, order_factors: &[(u128, u32)]) -> Vec<u64> {
    if let Some(c) = lookup(p, n) {
        return c;
    }
    if n == 1 {
        let g = least_primitive_root(p, order_factors);
        return vec![(p - g) % p, 1]; // x - g
    }
    poly::least_primitive_poly(p, n, order_factors)
}

fn least_primitive_root(p: u64, order_factors: &[(u128, u32)]) -> u64 {
    let order = (p - 1) as u128;
    'candidate: for g in 1..p {
        for (q, _) in order_factors {
            let e = (order / q) as u64;
            if crate::arith::powmod_u64(g, e, p) == 1 {
                continue 'candidate;
            }
        }
        return g;
    }
    unreachable!("every prime has a primitive root");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::factor_prime_power_minus_one;

    fn factors(p: u64, n: u32) -> Vec<(u128, u32)> {
        factor_prime_power_minus_one(p, n)
            .unwrap()
            .into_iter()
            .collect()
    }

    #[test]
    fn table_entries_are_primitive_polynomials() {
        for &(p, n, coeffs) in TABLE {
            let f = coeffs.to_vec();
            assert!(
                poly::is_irreducible(&f, p),
                "table entry for ({p},{n}) is reducible"
            );
            assert!(
                poly::class_of_x_is_primitive(&f, p, &factors(p, n)),
                "table entry for ({p},{n}) is not primitive"
            );
        }
    }

    #[test]
    fn table_entries_are_norm_compatible_with_prime_subfield() {
        // For the degree-n entries over F_p the norm of X down to F_p is
        // (-1)^n * f(0), and it must equal the degree-one table root.
        for &(p, n, coeffs) in TABLE {
            if n == 1 || p == 2 {
                continue;
            }
            let base_root = p - lookup(p, 1).unwrap()[0]; // x - g stored as x + (p-g)
            let norm = if n % 2 == 0 {
                coeffs[0]
            } else {
                (p - coeffs[0]) % p
            };
            assert_eq!(
                norm, base_root,
                "norm of X in ({p},{n}) should be the canonical root of F_{p}"
            );
        }
    }

    #[test]
    fn fallback_degrees_match_table_shape() {
        // (3,4) is off the table; the fallback must still be primitive.
        let f = canonical_modulus(3, 4, &factors(3, 4));
        assert_eq!(f.len(), 5);
        assert!(poly::is_irreducible(&f, 3));
        assert!(poly::class_of_x_is_primitive(&f, 3, &factors(3, 4)));
        // Degree-one fallback for a prime beyond the table: x - 2 over F_53.
        let f = canonical_modulus(53, 1, &factors(53, 1));
        assert_eq!(f, vec![51, 1]);
    }

    #[test]
    fn lookup_misses_cleanly() {
        assert_eq!(lookup(2, 6), None);
        assert_eq!(lookup(53, 1), None);
    }
}
