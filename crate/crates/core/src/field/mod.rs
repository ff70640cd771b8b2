//! Exact finite-field arithmetic for the three-field tower used by the
//! constructions: the character-source field F_{r^m}, the code alphabet
//! F_q, and a splitting field F_{q^t} large enough to contain r-th roots
//! of unity.
//!
//! Extension fields are represented as F_p[x]/(f) for a monic irreducible
//! `f`; elements store their coefficient vector (ascending, length equal
//! to the extension degree). Elements are enumerated by the integer
//! `sum c_i p^i`, which for prime fields is just the residue itself.

mod conway;
mod embed;
mod poly;

pub use embed::Embedding;

use crate::arith;
use crate::{Error, Result};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Shared, immutable description of one finite field.
#[derive(Debug)]
pub struct FieldDescriptor {
    characteristic: u64,
    degree: u32,
    modulus: Vec<u64>,
    order: u128,
    order_factors: Vec<(u128, u32)>,
    primitive: OnceLock<Vec<u64>>,
}

pub type Field = Arc<FieldDescriptor>;

impl PartialEq for FieldDescriptor {
    fn eq(&self, other: &Self) -> bool {
        self.characteristic == other.characteristic
            && self.degree == other.degree
            && self.modulus == other.modulus
    }
}

impl Eq for FieldDescriptor {}

impl fmt::Display for FieldDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.order)
    }
}

impl Serialize for FieldDescriptor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FieldDescriptor", 3)?;
        st.serialize_field("char", &self.characteristic)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("modulus", &self.modulus)?;
        st.end()
    }
}

fn field_cache() -> &'static Mutex<HashMap<(u64, u32, Vec<u64>), Field>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u32, Vec<u64>), Field>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// F_{p^n} with its canonical defining polynomial.
pub fn make_field(p: u64, n: u32) -> Result<Field> {
    validate_shape(p, n)?;
    let factors = order_factor_list(p, n)?;
    let modulus = conway::canonical_modulus(p, n, &factors);
    build_field(p, n, modulus, factors)
}

/// F_{p^n} defined by a caller-supplied monic irreducible polynomial
/// (ascending coefficients, length n + 1).
pub fn make_field_with_modulus(p: u64, n: u32, modulus: &[u64]) -> Result<Field> {
    validate_shape(p, n)?;
    let reduced: Vec<u64> = modulus.iter().map(|&c| c % p).collect();
    if reduced.len() != n as usize + 1 || reduced.last() != Some(&1) {
        return Err(Error::BadModulus { p, expected: n });
    }
    if !poly::is_irreducible(&reduced, p) {
        return Err(Error::ReducibleModulus(p));
    }
    let factors = order_factor_list(p, n)?;
    build_field(p, n, reduced, factors)
}

fn validate_shape(p: u64, n: u32) -> Result<()> {
    if !arith::is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    if n == 0 || arith::checked_pow_u128(p, n).is_none() {
        return Err(Error::FieldTooLarge(p, n));
    }
    Ok(())
}

fn order_factor_list(p: u64, n: u32) -> Result<Vec<(u128, u32)>> {
    arith::factor_prime_power_minus_one(p, n)
        .map(|m| m.into_iter().collect())
        .ok_or(Error::FieldTooLarge(p, n))
}

fn build_field(p: u64, n: u32, modulus: Vec<u64>, factors: Vec<(u128, u32)>) -> Result<Field> {
    let key = (p, n, modulus.clone());
    let mut cache = field_cache().lock().expect("field cache poisoned");
    if let Some(f) = cache.get(&key) {
        return Ok(f.clone());
    }
    let field = Arc::new(FieldDescriptor {
        characteristic: p,
        degree: n,
        modulus,
        order: arith::checked_pow_u128(p, n).expect("validated"),
        order_factors: factors,
        primitive: OnceLock::new(),
    });
    cache.insert(key, field.clone());
    Ok(field)
}

impl FieldDescriptor {
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// Prime factorization of the multiplicative group order `|F| - 1`.
    pub fn order_factors(&self) -> &[(u128, u32)] {
        &self.order_factors
    }

    pub fn zero(self: &Arc<Self>) -> FieldElement {
        FieldElement {
            field: self.clone(),
            rep: vec![0; self.degree as usize],
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElement {
        self.from_int(1)
    }

    /// The image of the integer `v` under the ring map Z -> F.
    pub fn from_int(self: &Arc<Self>, v: u64) -> FieldElement {
        let mut rep = vec![0; self.degree as usize];
        rep[0] = v % self.characteristic;
        FieldElement {
            field: self.clone(),
            rep,
        }
    }

    /// Builds an element from raw coefficients (ascending); shorter vectors
    /// are padded, entries are reduced mod p.
    pub fn element_from_rep(self: &Arc<Self>, rep: &[u64]) -> Result<FieldElement> {
        if rep.len() > self.degree as usize {
            return Err(Error::BadInput(format!(
                "representation has {} coefficients but {} has degree {}",
                rep.len(),
                self,
                self.degree
            )));
        }
        let mut full = vec![0; self.degree as usize];
        for (i, &c) in rep.iter().enumerate() {
            full[i] = c % self.characteristic;
        }
        Ok(FieldElement {
            field: self.clone(),
            rep: full,
        })
    }

    /// The element at position `index` in enumeration order, i.e. with
    /// coefficients given by the base-p digits of `index`.
    pub fn element_at(self: &Arc<Self>, index: u128) -> Option<FieldElement> {
        if index >= self.order {
            return None;
        }
        let p = self.characteristic as u128;
        let mut rep = vec![0; self.degree as usize];
        let mut v = index;
        for c in rep.iter_mut() {
            *c = (v % p) as u64;
            v /= p;
        }
        Some(FieldElement {
            field: self.clone(),
            rep,
        })
    }

    /// All field elements in enumeration order. Lazy, so callers may take
    /// a prefix even for very large fields.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElement> {
        let field = self.clone();
        (0..self.order).map(move |i| field.element_at(i).expect("index < order"))
    }

    /// The least element in enumeration order that generates the
    /// multiplicative group.
    pub fn primitive_element(self: &Arc<Self>) -> FieldElement {
        let rep = self.primitive.get_or_init(|| {
            for cand in self.elements().skip(1) {
                if cand.multiplicative_order().expect("nonzero") == self.order - 1 {
                    return cand.rep;
                }
            }
            unreachable!("finite field has a primitive element")
        });
        FieldElement {
            field: self.clone(),
            rep: rep.clone(),
        }
    }
}

/// One element of a specific field. Arithmetic between elements of
/// different fields is a programming error and panics; use
/// [`Embedding`] to move between fields of the tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FieldElement {
    field: Field,
    rep: Vec<u64>,
}

impl FieldElement {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rep(&self) -> &[u64] {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.iter().all(|&c| c == 0)
    }

    /// Position in enumeration order: `sum c_i p^i`.
    pub fn index(&self) -> u128 {
        let p = self.field.characteristic as u128;
        self.rep
            .iter()
            .rev()
            .fold(0u128, |acc, &c| acc * p + c as u128)
    }

    fn check_same_field(&self, other: &FieldElement) {
        assert!(
            self.field == other.field,
            "elements of {} and {} cannot be combined",
            self.field,
            other.field
        );
    }

    fn from_raw(field: &Field, raw: Vec<u64>) -> FieldElement {
        let mut rep = raw;
        rep.resize(field.degree as usize, 0);
        FieldElement {
            field: field.clone(),
            rep,
        }
    }

    pub fn pow(&self, mut exp: u128) -> FieldElement {
        let mut acc = self.field.one();
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            exp >>= 1;
        }
        acc
    }

    pub fn inv(&self) -> Result<FieldElement> {
        if self.is_zero() {
            return Err(Error::NotInvertible(format!("0 in {}", self.field)));
        }
        Ok(self.pow(self.field.order - 2))
    }

    /// Order in the multiplicative group; errors on zero.
    pub fn multiplicative_order(&self) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::NotInvertible(format!("0 in {}", self.field)));
        }
        let mut n = self.field.order - 1;
        for &(q, e) in &self.field.order_factors {
            for _ in 0..e {
                if n % q == 0 && self.pow(n / q).is_one() {
                    n /= q;
                } else {
                    break;
                }
            }
        }
        Ok(n)
    }

    pub fn is_one(&self) -> bool {
        self.rep.first() == Some(&1) && self.rep[1..].iter().all(|&c| c == 0)
    }

    /// Absolute trace down to the prime field, returned as a residue
    /// in `0..p`: `x + x^p + ... + x^(p^(n-1))`.
    pub fn trace_to_prime(&self) -> u64 {
        let p = self.field.characteristic;
        let mut acc = self.field.zero();
        let mut term = self.clone();
        for _ in 0..self.field.degree {
            acc = &acc + &term;
            term = term.pow(p as u128);
        }
        debug_assert!(acc.rep[1..].iter().all(|&c| c == 0), "trace lies in F_p");
        acc.rep[0]
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 {
            return write!(f, "{}", self.rep[0]);
        }
        let mut terms = Vec::new();
        for (i, &c) in self.rep.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let t = match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "x".to_string(),
                (1, _) => format!("{c}x"),
                (_, 1) => format!("x^{i}"),
                (_, _) => format!("{c}x^{i}"),
            };
            terms.push(t);
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join("+"))
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.rep.serialize(s)
    }
}

impl std::ops::Add for &FieldElement {
    type Output = FieldElement;
    fn add(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        let raw = poly::add(&self.rep, &rhs.rep, self.field.characteristic);
        FieldElement::from_raw(&self.field, raw)
    }
}

impl std::ops::Sub for &FieldElement {
    type Output = FieldElement;
    fn sub(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        let raw = poly::sub(&self.rep, &rhs.rep, self.field.characteristic);
        FieldElement::from_raw(&self.field, raw)
    }
}

impl std::ops::Mul for &FieldElement {
    type Output = FieldElement;
    fn mul(self, rhs: &FieldElement) -> FieldElement {
        self.check_same_field(rhs);
        let raw = poly::mulrem(
            &self.rep,
            &rhs.rep,
            &self.field.modulus,
            self.field.characteristic,
        );
        FieldElement::from_raw(&self.field, raw)
    }
}

impl std::ops::Neg for &FieldElement {
    type Output = FieldElement;
    fn neg(self) -> FieldElement {
        let raw = poly::sub(&[], &self.rep, self.field.characteristic);
        FieldElement::from_raw(&self.field, raw)
    }
}

pub(crate) fn eval_raw_poly(coeffs: &[u64], at: &FieldElement) -> FieldElement {
    let field = at.field();
    coeffs.iter().rev().fold(field.zero(), |acc, &c| {
        &(&acc * at) + &field.from_int(c)
    })
}

/// Degree of the smallest extension of F_q containing r-th roots of
/// unity: the multiplicative order of q modulo r.
pub fn splitting_degree(q: u128, r: u64) -> Result<u32> {
    if r < 2 {
        return Err(Error::BadInput(format!("splitting degree needs r >= 2, got {r}")));
    }
    let q_red = (q % r as u128) as u64;
    arith::multiplicative_order_mod(q_red, r).ok_or_else(|| {
        Error::Inadmissible(format!("q = {q} shares a factor with r = {r}"))
    })
}

/// The splitting field F_{q^t} for r-th roots of unity over the alphabet
/// field, together with t. When t = 1 the alphabet field itself is
/// returned (preserving any custom modulus).
pub fn splitting_field(alphabet: &Field, r: u64) -> Result<(Field, u32)> {
    let t = splitting_degree(alphabet.order(), r)?;
    if t == 1 {
        return Ok((alphabet.clone(), 1));
    }
    let p = alphabet.characteristic();
    let degree = alphabet
        .degree()
        .checked_mul(t)
        .ok_or(Error::FieldTooLarge(p, u32::MAX))?;
    let field = make_field(p, degree)?;
    Ok((field, t))
}

/// The multiplicative generators fixed for one construction: `alpha` for
/// the character-source field, `beta` for the alphabet, `gamma` for the
/// splitting field.
#[derive(Debug, Clone)]
pub struct GeneratorChoice {
    pub alpha: FieldElement,
    pub beta: FieldElement,
    pub gamma: FieldElement,
}

impl GeneratorChoice {
    /// Least primitive elements of all three fields.
    pub fn canonical(source: &Field, alphabet: &Field, splitting: &Field) -> Self {
        GeneratorChoice {
            alpha: source.primitive_element(),
            beta: alphabet.primitive_element(),
            gamma: splitting.primitive_element(),
        }
    }

    /// Canonical generators with any subset replaced; replacements must
    /// generate the multiplicative group of their field.
    pub fn with_overrides(
        source: &Field,
        alphabet: &Field,
        splitting: &Field,
        alpha: Option<FieldElement>,
        beta: Option<FieldElement>,
        gamma: Option<FieldElement>,
    ) -> Result<Self> {
        let mut choice = Self::canonical(source, alphabet, splitting);
        for (slot, field, name, value) in [
            (&mut choice.alpha, source, "alpha", alpha),
            (&mut choice.beta, alphabet, "beta", beta),
            (&mut choice.gamma, splitting, "gamma", gamma),
        ] {
            let Some(v) = value else { continue };
            if v.field() != field {
                return Err(Error::FieldMismatch(
                    v.field().to_string(),
                    field.to_string(),
                ));
            }
            if v.multiplicative_order()? != field.order() - 1 {
                return Err(Error::BadInput(format!(
                    "{name} = {v} does not generate the multiplicative group of {field}"
                )));
            }
            *slot = v;
        }
        Ok(choice)
    }
}
