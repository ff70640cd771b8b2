//! Minimum-distance search. For half-and-half generators (n = 2k) the
//! engine enumerates low-weight message patterns against two disjoint
//! information sets, so after finishing weight level w every unseen
//! codeword weighs at least 2(w + 1). When no such pair of sets exists
//! it falls back to full enumeration when that fits the budget, and to
//! a single information set otherwise.

use super::{for_each_codeword, DistanceResult, LinearCode, SmallFieldTable};
use crate::matrix::MatrixGF;
use crate::Result;

pub const DEFAULT_DISTANCE_BUDGET: u128 = 1 << 27;

/// One information set: `rows[i]` is the restriction of the adapted
/// generator row i to the complementary columns.
struct Side {
    rows: Vec<Vec<u16>>,
    cols_id: Vec<usize>,
    cols_rest: Vec<usize>,
}

struct SearchState {
    n: usize,
    q: u16,
    budget: u128,
    work: u128,
    d_best: usize,
    best: Option<Vec<u16>>,
    aborted: bool,
}

impl SearchState {
    fn new(n: usize, q: u16, budget: u128) -> SearchState {
        SearchState {
            n,
            q,
            budget,
            work: 0,
            d_best: usize::MAX,
            best: None,
            aborted: false,
        }
    }

    /// Records a codeword of the given weight, keeping the
    /// lexicographically least normalized witness on ties.
    fn offer(&mut self, table: &SmallFieldTable, weight: usize, word: &[u16]) {
        if weight > self.d_best || weight == 0 {
            return;
        }
        let mut w = word.to_vec();
        if let Some(first) = w.iter().position(|x| *x != 0) {
            let scale = table.inv(w[first]);
            if scale != 1 {
                for x in w.iter_mut() {
                    *x = table.mul(scale, *x);
                }
            }
        }
        if weight < self.d_best || self.best.as_ref().map_or(true, |b| w < *b) {
            self.d_best = weight;
            self.best = Some(w);
        }
    }

    fn finish(self, table: &SmallFieldTable, lower: usize, exact: bool) -> DistanceResult {
        let upper = self.d_best.min(self.n);
        let lower = lower.min(upper).max(1);
        DistanceResult {
            lower,
            upper,
            exact: exact || lower == upper,
            witness: self
                .best
                .map(|w| w.iter().map(|i| table.decode(*i)).collect()),
            work: self.work,
        }
    }
}

/// Enumerates the weight-w messages of one side by depth-first search
/// over supports, with the leading coefficient pinned to 1 and partial
/// row sums kept per depth.
fn dfs_level(
    table: &SmallFieldTable,
    side: &Side,
    state: &mut SearchState,
    w: usize,
    depth: usize,
    start: usize,
    partial: &mut Vec<Vec<u16>>,
    support: &mut Vec<usize>,
    coeffs: &mut Vec<u16>,
) {
    if state.aborted {
        return;
    }
    if depth == w {
        state.work += 1;
        if state.work > state.budget {
            state.aborted = true;
            return;
        }
        let rest = &partial[depth];
        let weight = w + rest.iter().filter(|x| **x != 0).count();
        if weight <= state.d_best {
            let mut word = vec![0u16; state.n];
            for (pos, c) in support.iter().zip(coeffs.iter()) {
                word[side.cols_id[*pos]] = *c;
            }
            for (col, val) in side.cols_rest.iter().zip(rest.iter()) {
                word[*col] = *val;
            }
            state.offer(table, weight, &word);
        }
        return;
    }
    let k = side.rows.len();
    for pos in start..=k - (w - depth) {
        support[depth] = pos;
        let coeff_max = if depth == 0 { 1 } else { state.q - 1 };
        for c in 1..=coeff_max {
            coeffs[depth] = c;
            let row = &side.rows[pos];
            let (lo, hi) = {
                let (a, b) = partial.split_at_mut(depth + 1);
                (&a[depth], &mut b[0])
            };
            for (h, (p, r)) in hi.iter_mut().zip(lo.iter().zip(row.iter())) {
                *h = table.add(*p, table.mul(c, *r));
            }
            dfs_level(
                table, side, state, w, depth + 1, pos + 1, partial, support, coeffs,
            );
            if state.aborted {
                return;
            }
        }
    }
}

fn run_levels(
    table: &SmallFieldTable,
    sides: &[Side],
    n: usize,
    k: usize,
    budget: u128,
) -> DistanceResult {
    let q = table.q() as u16;
    let mut state = SearchState::new(n, q, budget);
    let per_level = sides.len();
    for w in 1..=k {
        // Levels below w are complete on every side, so any codeword not
        // yet seen weighs at least sides * w.
        if state.d_best <= per_level * w {
            return state.finish(table, per_level * w, true);
        }
        for side in sides {
            let rest_len = side.cols_rest.len();
            let mut partial = vec![vec![0u16; rest_len]; w + 1];
            let mut support = vec![0usize; w];
            let mut coeffs = vec![0u16; w];
            dfs_level(
                table,
                side,
                &mut state,
                w,
                0,
                0,
                &mut partial,
                &mut support,
                &mut coeffs,
            );
            if state.aborted {
                let lower = (per_level * w).min(state.d_best);
                return state.finish(table, lower, false);
            }
        }
    }
    // Every message pattern was enumerated.
    let d = state.d_best;
    state.finish(table, d, true)
}

/// Adapts the generator to the information set `cols_a` and returns the
/// two sides of the split, or None when either submatrix is singular.
fn try_partition(
    g: &MatrixGF,
    table: &SmallFieldTable,
    cols_a: Vec<usize>,
    cols_b: Vec<usize>,
) -> Option<(Side, Side)> {
    let k = g.nrows();
    let all_rows: Vec<usize> = (0..k).collect();
    let a = g.submatrix(&all_rows, &cols_a);
    let a_inv = a.inverse().ok()?;
    let adapted = a_inv.mul(g).ok()?;
    let b1 = adapted.submatrix(&all_rows, &cols_b);
    let b1_inv = b1.inverse().ok()?;
    let side_a = Side {
        rows: table.encode_matrix(&b1),
        cols_id: cols_a.clone(),
        cols_rest: cols_b.clone(),
    };
    let side_b = Side {
        rows: table.encode_matrix(&b1_inv),
        cols_id: cols_b,
        cols_rest: cols_a,
    };
    Some((side_a, side_b))
}

/// Half partitions in a fixed order: the plain halves first, then every
/// single swap of position i on the left for position k + j on the
/// right. For the matrices built here a valid pair always exists among
/// these when the parity block has corank at most one.
fn find_half_partition(g: &MatrixGF, table: &SmallFieldTable) -> Option<(Side, Side)> {
    let k = g.nrows();
    let left: Vec<usize> = (0..k).collect();
    let right: Vec<usize> = (k..2 * k).collect();
    if let Some(pair) = try_partition(g, table, left.clone(), right.clone()) {
        return Some(pair);
    }
    for i in 0..k {
        for j in 0..k {
            let mut cols_a: Vec<usize> = left.iter().copied().filter(|c| *c != i).collect();
            cols_a.push(k + j);
            let mut cols_b = vec![i];
            cols_b.extend(right.iter().copied().filter(|c| *c != k + j));
            if let Some(pair) = try_partition(g, table, cols_a, cols_b) {
                return Some(pair);
            }
        }
    }
    None
}

fn full_enumeration(
    code: &LinearCode,
    table: &SmallFieldTable,
    total: u128,
) -> DistanceResult {
    let rows = table.encode_matrix(code.generator());
    let mut state = SearchState::new(code.n(), table.q() as u16, u128::MAX);
    for_each_codeword(table, &rows, |word| {
        state.work += 1;
        let weight = word.iter().filter(|x| **x != 0).count();
        if weight > 0 && weight <= state.d_best {
            state.offer(table, weight, word);
        }
    });
    debug_assert_eq!(state.work, total);
    let d = state.d_best;
    state.finish(table, d, true)
}

fn single_information_set(code: &LinearCode, table: &SmallFieldTable) -> Side {
    let mut reduced = code.generator().clone();
    let pivots = reduced.row_reduce();
    let k = code.k();
    let all_rows: Vec<usize> = (0..k).collect();
    let cols_rest: Vec<usize> = (0..code.n()).filter(|c| !pivots.contains(c)).collect();
    let rest = reduced.submatrix(&all_rows, &cols_rest);
    Side {
        rows: table.encode_matrix(&rest),
        cols_id: pivots,
        cols_rest,
    }
}

pub(super) fn min_distance(code: &LinearCode, budget: Option<u128>) -> Result<DistanceResult> {
    let budget = budget.unwrap_or(DEFAULT_DISTANCE_BUDGET);
    let table = SmallFieldTable::new(code.field())?;
    let n = code.n();
    let k = code.k();
    if n == 2 * k {
        if let Some((side_a, side_b)) = find_half_partition(code.generator(), &table) {
            return Ok(run_levels(&table, &[side_a, side_b], n, k, budget));
        }
    }
    if let Some(total) = (table.q() as u128).checked_pow(k as u32) {
        if total <= budget {
            return Ok(full_enumeration(code, &table, total));
        }
    }
    let side = single_information_set(code, &table);
    Ok(run_levels(&table, &[side], n, k, budget))
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

    fn weight(w: &[crate::field::FieldElement]) -> usize {
        w.iter().filter(|e| !e.is_zero()).count()
    }

    #[test]
    fn exact_distance_of_a_singular_parity_block() {
        // v = 0 makes the all-ones vector a kernel vector of P, so the
        // plain half split fails and a swapped pair must be used.
        let c = code(3, 1, 2, 5, 1, None);
        let d = c.min_distance(None).unwrap();
        assert!(d.exact);
        assert_eq!((d.lower, d.upper), (3, 3));
        let w = d.witness.unwrap();
        assert_eq!(weight(&w), 3);
        assert!(w.iter().find(|e| !e.is_zero()).unwrap().is_one());
    }

    #[test]
    fn exact_distances_match_full_enumeration() {
        for (r, m, n, qp, qd, v) in [
            (3u64, 1u32, 2u64, 5u64, 1u32, None),
            (3, 1, 2, 7, 1, None),
            (7, 1, 3, 2, 2, None),
            (7, 1, 3, 2, 2, Some(1)),
            (2, 2, 3, 5, 2, Some(4)),
            (5, 1, 2, 7, 1, None),
            (5, 1, 4, 13, 1, None),
            (7, 1, 2, 3, 2, None),
        ] {
            let c = code(r, m, n, qp, qd, v);
            let d = c.min_distance(None).unwrap();
            assert!(d.exact, "({r},{m},{n},{qp}^{qd})");
            let hist = c.weight_distribution(None).unwrap();
            let enum_min = *hist.keys().find(|w| **w > 0).unwrap();
            assert_eq!(d.upper, enum_min, "({r},{m},{n},{qp}^{qd})");
            let w = d.witness.unwrap();
            assert_eq!(weight(&w), d.upper);
        }
    }

    #[test]
    fn witness_is_a_codeword() {
        let c = code(7, 1, 3, 2, 2, Some(1));
        let d = c.min_distance(None).unwrap();
        let w = d.witness.unwrap();
        // For a systematic generator the first k coordinates are the
        // message; re-encode and compare.
        let msg = &w[..c.k()];
        let encoded = crate::matrix::row_times_matrix(msg, c.generator()).unwrap();
        assert_eq!(encoded, w);
    }

    #[test]
    fn tiny_budget_yields_a_certified_interval() {
        let c = code(13, 1, 3, 2, 2, Some(1));
        let d = c.min_distance(Some(20)).unwrap();
        assert!(!d.exact);
        assert!(d.lower <= 8 && 8 <= d.upper, "{}..{}", d.lower, d.upper);
        assert!(d.work <= 21);
    }

    #[test]
    fn dual_distance_uses_the_identity_on_the_right() {
        let c = code(3, 1, 2, 5, 1, None).dual().unwrap();
        let d = c.min_distance(None).unwrap();
        assert!(d.exact);
        assert_eq!(d.upper, 3);
    }

    #[test]
    fn short_codes_fall_back_to_full_enumeration() {
        // A [6,2] code: not half-split, enumerable.
        let f5 = make_field(5, 1).unwrap();
        let rows = vec![
            vec![
                f5.one(),
                f5.zero(),
                f5.from_int(1),
                f5.from_int(2),
                f5.from_int(3),
                f5.from_int(4),
            ],
            vec![
                f5.zero(),
                f5.one(),
                f5.from_int(2),
                f5.from_int(4),
                f5.from_int(1),
                f5.from_int(3),
            ],
        ];
        let g = MatrixGF::from_rows(&f5, rows).unwrap();
        let c = LinearCode::new(g).unwrap();
        let d = c.min_distance(None).unwrap();
        assert!(d.exact);
        let hist = c.weight_distribution(None).unwrap();
        assert_eq!(d.upper, *hist.keys().find(|w| **w > 0).unwrap());
        assert_eq!(d.work, 25);
    }
}
