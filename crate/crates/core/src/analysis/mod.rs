//! Code-level views of a generator matrix: hull dimension and basis,
//! the dual code, full weight distributions, and minimum distance.

mod distance;

pub use distance::DEFAULT_DISTANCE_BUDGET;

use crate::field::{Field, FieldElement};
use crate::matrix::MatrixGF;
use crate::{Error, Result};
use serde::ser::{Serialize, SerializeStruct, Serializer};
use std::collections::BTreeMap;

/// Full weight enumeration walks all q^k messages; refuse beyond this.
pub const WEIGHT_ENUM_CAP: u128 = 1 << 24;

/// Largest alphabet for which the flat operation tables are built.
pub const TABLE_FIELD_CAP: u128 = 512;

/// A linear code presented by a full-rank generator matrix.
#[derive(Debug, Clone)]
pub struct LinearCode {
    field: Field,
    g: MatrixGF,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HullClass {
    Lcd,
    OneDimensional,
    Other(usize),
}

impl HullClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            HullClass::Lcd => "LCD",
            HullClass::OneDimensional => "one-dimensional",
            HullClass::Other(_) => "other",
        }
    }
}

impl Serialize for HullClass {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

/// The intersection of a code with its dual, reduced to a canonical
/// (RREF) basis.
#[derive(Debug, Clone, serde::Serialize)]
pub struct HullReport {
    pub dimension: usize,
    pub classification: HullClass,
    pub basis: MatrixGF,
}

/// What the distance search established: exact when `lower == upper`,
/// otherwise a certified interval. `work` counts enumerated candidates.
#[derive(Debug, Clone)]
pub struct DistanceResult {
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
    pub witness: Option<Vec<FieldElement>>,
    pub work: u128,
}

impl DistanceResult {
    pub fn contains(&self, d: usize) -> bool {
        self.lower <= d && d <= self.upper
    }
}

impl Serialize for DistanceResult {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("DistanceResult", 5)?;
        st.serialize_field("lower", &self.lower)?;
        st.serialize_field("upper", &self.upper)?;
        st.serialize_field("exact", &self.exact)?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("work", &self.work)?;
        st.end()
    }
}

impl LinearCode {
    pub fn new(g: MatrixGF) -> Result<LinearCode> {
        let k = g.nrows();
        let n = g.ncols();
        if k == 0 || n == 0 {
            return Err(Error::BadInput("empty generator matrix".into()));
        }
        if k > n {
            return Err(Error::BadInput(format!(
                "generator matrix has more rows ({k}) than columns ({n})"
            )));
        }
        let mut probe = g.clone();
        probe.row_reduce();
        if probe.rank() != k {
            return Err(Error::BadInput(
                "generator matrix rows are linearly dependent".into(),
            ));
        }
        let field = g.field().clone();
        Ok(LinearCode { field, g })
    }

    /// The code generated by [I | P].
    pub fn systematic(parity: &MatrixGF) -> Result<LinearCode> {
        let id = MatrixGF::identity(parity.field(), parity.nrows());
        LinearCode::new(id.augment(parity)?)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn generator(&self) -> &MatrixGF {
        &self.g
    }

    pub fn n(&self) -> usize {
        self.g.ncols()
    }

    pub fn k(&self) -> usize {
        self.g.nrows()
    }

    pub fn gram(&self) -> Result<MatrixGF> {
        self.g.mul(&self.g.transpose())
    }

    /// Hull basis rows are the messages in the nullspace of G G^T pushed
    /// through G, then row reduced so the basis is canonical.
    pub fn hull(&self) -> Result<HullReport> {
        let gram = self.gram()?;
        let null = gram.nullspace();
        let dimension = null.nrows();
        let basis = if dimension == 0 {
            MatrixGF::zeros(&self.field, 0, self.n())
        } else {
            let mut b = null.mul(&self.g)?;
            b.row_reduce();
            b
        };
        let classification = match dimension {
            0 => HullClass::Lcd,
            1 => HullClass::OneDimensional,
            d => HullClass::Other(d),
        };
        Ok(HullReport {
            dimension,
            classification,
            basis,
        })
    }

    /// The dual code. For a systematic generator [I | P] the canonical
    /// nullspace basis is exactly [-P^T | I].
    pub fn dual(&self) -> Result<LinearCode> {
        LinearCode::new(self.g.nullspace())
    }

    /// Counts codewords by Hamming weight over all q^k messages.
    pub fn weight_distribution(&self, cap: Option<u128>) -> Result<BTreeMap<usize, u128>> {
        let cap = cap.unwrap_or(WEIGHT_ENUM_CAP);
        let table = SmallFieldTable::new(&self.field)?;
        let total = (table.q() as u128)
            .checked_pow(self.k() as u32)
            .ok_or(Error::BudgetExhausted {
                budget: cap,
                spent: u128::MAX,
            })?;
        if total > cap {
            return Err(Error::BudgetExhausted {
                budget: cap,
                spent: total,
            });
        }
        let rows = table.encode_matrix(&self.g);
        let mut hist: BTreeMap<usize, u128> = BTreeMap::new();
        for_each_codeword(&table, &rows, |c| {
            let w = c.iter().filter(|x| **x != 0).count();
            *hist.entry(w).or_insert(0) += 1;
        });
        Ok(hist)
    }

    pub fn min_distance(&self, budget: Option<u128>) -> Result<DistanceResult> {
        distance::min_distance(self, budget)
    }
}

/// Flat add/mul/neg/inv tables over a small field, indexed by element
/// enumeration index, so inner loops run on u16 values.
pub struct SmallFieldTable {
    field: Field,
    q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl SmallFieldTable {
    pub fn new(field: &Field) -> Result<SmallFieldTable> {
        let order = field.order();
        if order > TABLE_FIELD_CAP {
            return Err(Error::AlphabetTooLarge(order));
        }
        let q = order as usize;
        let els: Vec<FieldElement> = field.elements().collect();
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        let mut neg = vec![0u16; q];
        let mut inv = vec![0u16; q];
        for (i, a) in els.iter().enumerate() {
            neg[i] = (-a).index() as u16;
            if i != 0 {
                inv[i] = a.inv()?.index() as u16;
            }
            for (j, b) in els.iter().enumerate() {
                add[i * q + j] = (a + b).index() as u16;
                mul[i * q + j] = (a * b).index() as u16;
            }
        }
        Ok(SmallFieldTable {
            field: field.clone(),
            q,
            add,
            mul,
            neg,
            inv,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn q(&self) -> usize {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u16, b: u16) -> u16 {
        self.add[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u16, b: u16) -> u16 {
        self.mul[a as usize * self.q + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u16) -> u16 {
        self.neg[a as usize]
    }

    /// Multiplicative inverse; index 0 maps to 0.
    #[inline]
    pub fn inv(&self, a: u16) -> u16 {
        self.inv[a as usize]
    }

    pub fn encode(&self, e: &FieldElement) -> u16 {
        e.index() as u16
    }

    pub fn decode(&self, i: u16) -> FieldElement {
        self.field
            .element_at(i as u128)
            .expect("table index within field order")
    }

    pub fn encode_row(&self, row: &[FieldElement]) -> Vec<u16> {
        row.iter().map(|e| self.encode(e)).collect()
    }

    pub fn encode_matrix(&self, m: &MatrixGF) -> Vec<Vec<u16>> {
        (0..m.nrows()).map(|i| self.encode_row(m.row(i))).collect()
    }
}

/// Visits every codeword once (the zero word first), updating the
/// current word incrementally as a mixed-radix odometer over messages.
/// Each generator row is expanded by the p-power scalar basis so that
/// every digit increment is a single row addition; the coefficients
/// still sweep each row's scalar through the whole field in enumeration
/// order.
pub(crate) fn for_each_codeword<F: FnMut(&[u16])>(
    table: &SmallFieldTable,
    rows: &[Vec<u16>],
    mut f: F,
) {
    let k = rows.len();
    let n = rows.first().map_or(0, Vec::len);
    let p = table.field().characteristic() as u16;
    let e = table.field().degree();
    let mut expanded = Vec::with_capacity(k * e as usize);
    for row in rows {
        let mut scalar = 1u16;
        for _ in 0..e {
            expanded.push(row.iter().map(|r| table.mul(scalar, *r)).collect::<Vec<u16>>());
            scalar = (scalar as u64 * p as u64) as u16;
        }
    }
    let mut digits = vec![0u16; expanded.len()];
    let mut word = vec![0u16; n];
    f(&word);
    let total = (table.q() as u128).pow(k as u32);
    for _ in 1..total {
        let mut i = 0;
        loop {
            digits[i] += 1;
            for (w, r) in word.iter_mut().zip(&expanded[i]) {
                *w = table.add(*w, *r);
            }
            if digits[i] < p {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
        f(&word);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::{ConstructionParams, Ordering};
    use crate::field::make_field;

    fn code(r: u64, m: u32, n: u64, qp: u64, qd: u32, v: Option<u64>) -> LinearCode {
        let alphabet = make_field(qp, qd).unwrap();
        let v = v.map(|x| alphabet.from_int(x));
        let params = ConstructionParams::new(r, m, n, &alphabet, Ordering::Natural, v).unwrap();
        LinearCode::systematic(&params.build_p().unwrap()).unwrap()
    }

    #[test]
    fn operation_tables_agree_with_field_arithmetic() {
        let f25 = make_field(5, 2).unwrap();
        let t = SmallFieldTable::new(&f25).unwrap();
        for a in f25.elements() {
            let ia = t.encode(&a);
            assert_eq!(t.decode(t.neg(ia)), -&a);
            if !a.is_zero() {
                assert_eq!(t.decode(t.inv(ia)), a.inv().unwrap());
            }
            for b in f25.elements() {
                let ib = t.encode(&b);
                assert_eq!(t.decode(t.add(ia, ib)), &a + &b);
                assert_eq!(t.decode(t.mul(ia, ib)), &a * &b);
            }
        }
        let f625 = make_field(5, 4).unwrap();
        assert!(matches!(
            SmallFieldTable::new(&f625),
            Err(Error::AlphabetTooLarge(625))
        ));
    }

    #[test]
    fn hull_of_the_smallest_lcd_code_is_trivial() {
        let c = code(3, 1, 2, 5, 1, None);
        assert_eq!((c.n(), c.k()), (6, 3));
        let hull = c.hull().unwrap();
        assert_eq!(hull.dimension, 0);
        assert_eq!(hull.classification, HullClass::Lcd);
        assert_eq!(hull.basis.nrows(), 0);
    }

    #[test]
    fn one_dimensional_hull_bases_are_the_expected_rows() {
        let c = code(13, 1, 3, 2, 2, Some(1));
        let hull = c.hull().unwrap();
        assert_eq!(hull.dimension, 1);
        assert_eq!(hull.classification, HullClass::OneDimensional);
        let one = c.field().one();
        for j in 0..26 {
            assert_eq!(hull.basis.get(0, j), &one, "column {j}");
        }

        // r^m = 9, N = 2 over F_49 with v = y^12: the hull row is
        // (1, ..., 1, v, ..., v).
        let f49 = make_field(7, 2).unwrap();
        let v = f49.primitive_element().pow(12);
        let params =
            ConstructionParams::new(3, 2, 2, &f49, Ordering::Natural, Some(v.clone())).unwrap();
        let c = LinearCode::systematic(&params.build_p().unwrap()).unwrap();
        let hull = c.hull().unwrap();
        assert_eq!(hull.dimension, 1);
        for j in 0..9 {
            assert_eq!(hull.basis.get(0, j), &c.field().one(), "column {j}");
            assert_eq!(hull.basis.get(0, 9 + j), &v, "column {}", 9 + j);
        }
    }

    #[test]
    fn dual_of_a_systematic_code_is_minus_p_transpose_with_identity() {
        let c = code(3, 1, 2, 5, 1, None);
        let dual = c.dual().unwrap();
        assert_eq!((dual.n(), dual.k()), (6, 3));
        let p = c.generator().submatrix(&[0, 1, 2], &[3, 4, 5]);
        let expect = p.transpose().neg().augment(&MatrixGF::identity(c.field(), 3)).unwrap();
        assert_eq!(dual.generator(), &expect);
        assert!(c
            .generator()
            .mul(&dual.generator().transpose())
            .unwrap()
            .is_zero());
    }

    #[test]
    fn weight_distribution_of_the_diagonal_search_code() {
        let c = code(2, 2, 3, 5, 2, Some(4));
        let hist = c.weight_distribution(None).unwrap();
        let expect: [(usize, u128); 6] = [
            (0, 1),
            (4, 48),
            (5, 1152),
            (6, 13728),
            (7, 93888),
            (8, 281808),
        ];
        assert_eq!(hist.len(), expect.len());
        for (w, count) in expect {
            assert_eq!(hist.get(&w), Some(&count), "weight {w}");
        }
        assert_eq!(hist.values().sum::<u128>(), 25u128.pow(4));
    }

    #[test]
    fn weight_distribution_respects_its_cap() {
        let c = code(13, 1, 3, 2, 2, Some(1));
        let err = c.weight_distribution(Some(1000)).unwrap_err();
        assert!(matches!(
            err,
            Error::BudgetExhausted {
                budget: 1000,
                spent,
            } if spent == 4u128.pow(13)
        ));
    }

    #[test]
    fn rejects_dependent_generator_rows() {
        let f5 = make_field(5, 1).unwrap();
        let rows = vec![
            vec![f5.from_int(1), f5.from_int(2), f5.from_int(3)],
            vec![f5.from_int(2), f5.from_int(4), f5.from_int(1)],
            vec![f5.from_int(3), f5.from_int(1), f5.from_int(4)],
        ];
        let g = MatrixGF::from_rows(&f5, rows).unwrap();
        assert!(matches!(LinearCode::new(g), Err(Error::BadInput(_))));
    }
}
