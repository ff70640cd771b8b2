//! Acceptance gate for the whole crate. Each test covers one criterion
//! and prints a single PASS/FAIL line (visible with --nocapture); the
//! assertions behind the line are the actual gate.

use std::panic::{catch_unwind, UnwindSafe};

use hull_codes::analysis::LinearCode;
use hull_codes::arith;
use hull_codes::bounds::{self, ConjectureScanConfig, ConjectureStatus};
use hull_codes::catalog::{self, admissible_tuples, HullBasisShape, SweepTuple};
use hull_codes::charsum;
use hull_codes::construct::{ConstructionParams, Ordering};
use hull_codes::field::make_field;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn conclude<F>(criterion: &str, body: F)
where
    F: FnOnce() -> String + UnwindSafe,
{
    match catch_unwind(body) {
        Ok(detail) => println!("criterion {criterion}: PASS — {detail}"),
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panic without message".into());
            println!("criterion {criterion}: FAIL — {msg}");
            panic!("criterion {criterion} failed: {msg}");
        }
    }
}

fn build_tuple(t: &SweepTuple, ordering: Ordering) -> ConstructionParams {
    let alphabet = make_field(t.q_char, t.q_deg).unwrap();
    ConstructionParams::new(t.r, t.m, t.n, &alphabet, ordering, None).unwrap()
}

#[test]
fn criterion_1_worked_examples_reproduce_exactly() {
    conclude("1", || {
        let mut dual_checks = 0;
        for ex in catalog::EXAMPLES.iter() {
            let real = catalog::realize(&ex.row).unwrap();
            let code = real.params.build_code().unwrap();
            let hull = code.hull().unwrap();
            let d = code.min_distance(None).unwrap();
            assert!(d.exact, "{}: distance search did not finish", ex.label);
            let [n, k, dd] = ex.row.expected;
            assert_eq!(
                (code.n(), code.k(), d.lower, hull.dimension),
                (n, k, dd, ex.row.hull_dim),
                "{}",
                ex.label
            );
            if let Some(dual_d) = ex.dual_distance {
                let dual = code.dual().unwrap();
                let dr = dual.min_distance(None).unwrap();
                assert!(
                    dr.exact && dr.lower == dual_d,
                    "{}: dual distance {} != {}",
                    ex.label,
                    dr.lower,
                    dual_d
                );
                dual_checks += 1;
            }
        }
        format!(
            "{} worked examples match [n,k,d] and hull dimension exactly ({} dual distances included)",
            catalog::EXAMPLES.len(),
            dual_checks
        )
    });
}

#[test]
fn criterion_2_table_rows_reproduce_exactly() {
    conclude("2", || {
        for row in catalog::TABLE1.iter() {
            let label = format!(
                "row (r={}, m={}, N={}, q={}^{})",
                row.r, row.m, row.n, row.q_char, row.q_deg
            );
            let real = catalog::realize(row).unwrap();
            let code = real.params.build_code().unwrap();
            let hull = code.hull().unwrap();
            let d = code.min_distance(None).unwrap();
            let [n, k, dd] = row.expected;
            assert_eq!((code.n(), code.k()), (n, k), "{label}");
            assert_eq!(hull.dimension, row.hull_dim, "{label}");
            assert!(
                real.certificates.iter().any(|c| c.key == row.certificate),
                "{label}: no {} certificate",
                row.certificate
            );
            if let Some(ix) = row.v_index {
                assert_eq!(real.params.v().index(), ix, "{label}: diagonal");
            }
            assert!(
                d.exact,
                "{label}: interval [{},{}] left after default budget",
                d.lower, d.upper
            );
            assert_eq!(d.lower, dd, "{label}: distance");
        }
        format!(
            "all {} table rows reproduce [n,k,d], hull class, certificate, and diagonal exactly",
            catalog::TABLE1.len()
        )
    });
}

#[test]
fn criterion_3_hull_bases_are_recovered() {
    conclude("3", || {
        let mut shapes = 0;
        for ex in catalog::EXAMPLES.iter() {
            let Some(shape) = ex.hull_basis else { continue };
            let real = catalog::realize(&ex.row).unwrap();
            let code = real.params.build_code().unwrap();
            let hull = code.hull().unwrap();
            assert_eq!(hull.dimension, 1, "{}", ex.label);
            assert_eq!(hull.basis.nrows(), 1, "{}", ex.label);
            let basis = hull.basis.row(0);
            let n = code.n();
            let one = real.params.alphabet().one();
            match shape {
                HullBasisShape::AllOnes => {
                    assert!(
                        basis.iter().all(|e| *e == one),
                        "{}: basis is not all ones",
                        ex.label
                    );
                }
                HullBasisShape::OnesThenV => {
                    let v = real.params.v();
                    assert!(
                        basis[..n / 2].iter().all(|e| *e == one),
                        "{}: left half is not all ones",
                        ex.label
                    );
                    assert!(
                        basis[n / 2..].iter().all(|e| e == v),
                        "{}: right half is not the diagonal value",
                        ex.label
                    );
                }
            }
            shapes += 1;
        }
        assert_eq!(shapes, 2);
        "both pinned hull generators recovered exactly: the all-ones row and (1,…,1,β^12,…,β^12)"
            .into()
    });
}

#[test]
fn criterion_4_identity_suite_over_the_full_sweep() {
    conclude("4", || {
        let start = std::time::Instant::now();
        let tuples = admissible_tuples(27, 49);
        let mut checked: u64 = 0;
        for t in &tuples {
            let params = build_tuple(t, Ordering::Natural);
            let report = charsum::verify_identities(
                params.source(),
                params.alphabet(),
                params.splitting(),
                params.n(),
                params.generators(),
            )
            .unwrap();
            assert_eq!(
                report.total_failures(),
                0,
                "identity failures at (r={}, m={}, N={}, q={}^{})",
                t.r,
                t.m,
                t.n,
                t.q_char,
                t.q_deg
            );
            checked += report
                .identities
                .iter()
                .map(|c| c.checked_count)
                .sum::<u64>();
            // rank crosscheck errors out on any eigenvalue/corank mismatch
            params.eigen_rank_crosscheck().unwrap();
        }
        let elapsed = start.elapsed();
        assert!(
            elapsed.as_secs() < 120,
            "sweep took {elapsed:?}, over the two-minute budget"
        );
        format!(
            "{} admissible tuples, {checked} identity checks, zero failures in {elapsed:.1?}",
            tuples.len()
        )
    });
}

#[test]
fn criterion_5_distance_engine_agrees_with_full_enumeration() {
    conclude("5", || {
        let mut codes = 0;
        for t in admissible_tuples(27, 49) {
            let rm = t.r.pow(t.m);
            let q = t.q_char.pow(t.q_deg);
            let message_space = match arith::checked_pow_u128(q, rm as u32) {
                Some(s) if s <= 1 << 24 => s,
                _ => continue,
            };
            let params = build_tuple(&t, Ordering::Natural);
            let code = params.build_code().unwrap();
            let engine = code.min_distance(None).unwrap();
            assert!(engine.exact, "engine gave an interval on q^k = {message_space}");
            let dist = code.weight_distribution(None).unwrap();
            let enumerated = dist
                .iter()
                .find(|(w, c)| **w > 0 && **c > 0)
                .map(|(w, _)| *w)
                .unwrap();
            assert_eq!(
                engine.lower, enumerated,
                "engine vs enumeration at (r={}, m={}, N={}, q={})",
                t.r, t.m, t.n, q
            );
            codes += 1;
        }
        assert!(codes >= 30, "only {codes} codes were enumerable");
        format!("two-information-set engine equals enumerated minimum on all {codes} codes with q^k <= 2^24")
    });
}

#[test]
fn criterion_6_bound_soundness_and_conjecture_window() {
    conclude("6", || {
        // soundness: the certified bound never exceeds the measured
        // distance on the default scan window (N = 2, v = 0, p > 3)
        let mut sound = 0;
        for t in admissible_tuples(13, 13) {
            if t.n != 2 || t.q_char <= 3 {
                continue;
            }
            let params = build_tuple(&t, Ordering::SquaresFirst);
            let families = bounds::mu_nu_families(&params).unwrap();
            let rep = bounds::independence_level(&families, None, None).unwrap();
            let measured = params.build_code().unwrap().min_distance(None).unwrap();
            assert!(measured.exact);
            assert!(
                rep.certified_lower_bound <= measured.lower,
                "(r={}, m={}, q={}): certified {} exceeds measured {}",
                t.r,
                t.m,
                t.q_char.pow(t.q_deg),
                rep.certified_lower_bound,
                measured.lower
            );
            sound += 1;
        }
        assert!(sound >= 15, "only {sound} soundness instances");

        let rows = bounds::conjecture_scan(&ConjectureScanConfig::default()).unwrap();
        let pin = |rm: u64, q: u128, d: usize| {
            let row = rows
                .iter()
                .find(|r| r.rm == rm && r.q == q && r.v.is_zero())
                .unwrap_or_else(|| panic!("no scan row for r^m={rm}, q={q}"));
            assert_eq!(row.status, ConjectureStatus::Match, "r^m={rm}, q={q}");
            assert_eq!(row.predicted, Some(d));
            assert_eq!(row.measured.as_ref().unwrap().lower, d);
        };
        pin(3, 5, 3);
        pin(5, 7, 5);
        pin(13, 5, 9);
        let mismatches: Vec<String> = rows
            .iter()
            .filter(|r| r.status == ConjectureStatus::Mismatch)
            .map(|r| format!("(r^m={}, q={}, v index {})", r.rm, r.q, r.v.index()))
            .collect();
        // mismatches elsewhere in the window are findings, not failures
        for m in &mismatches {
            println!("criterion 6 finding: conjectured and measured distance differ at {m}");
        }
        format!(
            "certified bound <= measured d on {sound} instances; conjecture matches at r^m=3,5,13; {} finding(s) recorded",
            mismatches.len()
        )
    });
}

#[test]
fn criterion_7_certificates_match_measured_hulls() {
    conclude("7", || {
        let pool = admissible_tuples(27, 49);
        let mut rng = ChaCha8Rng::seed_from_u64(0x0DD5_EED5);
        let mut claims = 0;
        let mut attempts = 0;
        while claims < 100 && attempts < 1000 {
            attempts += 1;
            let t = pool[rng.gen_range(0..pool.len())];
            let base = build_tuple(&t, Ordering::Natural);
            // pick a route at random; fall back to the zero diagonal
            // when the tuple does not admit the chosen one
            let (params, expected_hull) = match rng.gen_range(0..3u32) {
                0 => match base.find_one_dim_hull_v() {
                    Ok(choice) if choice.certificate.is_some() => {
                        (base.with_v(choice.v).unwrap(), Some(1))
                    }
                    _ => (base, None),
                },
                1 => match base.find_construction_b_v() {
                    Ok(choice) => (base.with_v(choice.v).unwrap(), Some(0)),
                    Err(_) => (base, None),
                },
                _ => {
                    let lcd_certified = !base.check_thm_a(None).unwrap().is_empty();
                    (base, lcd_certified.then_some(0))
                }
            };
            let Some(expected) = expected_hull else { continue };
            let hull = params.build_code().unwrap().hull().unwrap();
            assert_eq!(
                hull.dimension,
                expected,
                "certificate disagrees with measured hull at (r={}, m={}, N={}, q={}^{}), v index {}",
                t.r,
                t.m,
                t.n,
                t.q_char,
                t.q_deg,
                params.v().index()
            );
            claims += 1;
        }
        assert!(claims >= 100, "only {claims} certified samples in {attempts} attempts");
        format!("{claims} randomized certificates all agree with the measured hull dimension")
    });
}
