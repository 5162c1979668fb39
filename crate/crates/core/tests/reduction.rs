mod common;

use proptest::prelude::*;
use rand::Rng;
use residual_core::oracle::{brute_common_divisor, SearchBudget};
use residual_core::ridm::{find_common_divisor, intdeg, is_ridm, ridm_reduce};
use residual_core::{dual, invariant, Error, FpPoly, PolyMatrix, RingContext, ZprPoly};

fn budget() -> SearchBudget {
    SearchBudget::new(16, 50_000_000).unwrap()
}

/// A random code with a monic factor forced into one row and then hidden by
/// a unimodular transform.
fn non_ridm_code(seed: u64) -> PolyMatrix {
    let g = common::random_code(seed);
    let ctx = g.context();
    let mut rng = common::rng(seed ^ 0xfeed);
    let d = rng.gen_range(1..=2);
    let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..ctx.modulus())).collect();
    c.push(1);
    let q = ZprPoly::new(ctx, c);
    let mut scaled = g.clone();
    scaled.row_mul(0, &q);
    let t = common::random_unimodular(&mut rng, ctx, g.rows(), 3);
    t.mat_mul(&scaled).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn common_divisor_matches_brute_force(seed in any::<u64>(), forced in any::<bool>()) {
        let g = if forced { non_ridm_code(seed) } else { common::random_code(seed) };
        let minors = g.maximal_minors().unwrap();
        let fast = find_common_divisor(&minors).unwrap().map(|q| q.into_poly());
        prop_assert_eq!(fast, brute_common_divisor(&minors, budget()).unwrap());
    }

    #[test]
    fn reduction_contract(seed in any::<u64>(), forced in any::<bool>()) {
        let g = if forced { non_ridm_code(seed) } else { common::random_code(seed) };
        let (reduced, trace) = match ridm_reduce(&g) {
            Err(Error::GuaranteeViolated { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        let start = intdeg(&g).unwrap();
        prop_assert!(trace.len() <= start);
        for step in &trace.steps {
            prop_assert_eq!(step.intdeg_before - step.intdeg_after, step.divisor.deg().unwrap());
            prop_assert!(step.transform.is_unimodular().unwrap());
        }
        prop_assert!(is_ridm(&reduced).unwrap());
        prop_assert_eq!(brute_common_divisor(&reduced.maximal_minors().unwrap(), budget()).unwrap(), None);
        prop_assert_eq!(trace.reconstruct(&reduced).unwrap(), g);
        prop_assert!(ridm_reduce(&reduced).unwrap().1.is_empty());
    }

    #[test]
    fn parity_check_is_orthogonal_ridm(seed in any::<u64>()) {
        let g = common::random_code(seed);
        let h = match ridm_reduce(&g).and_then(|(r, _)| dual::parity_check(&r)) {
            Err(Error::GuaranteeViolated { .. }) => return Ok(()),
            other => other.unwrap(),
        };
        prop_assert_eq!(h.rows(), g.cols() - g.rows());
        prop_assert!(dual::verify_orthogonality(&g, &h).unwrap());
        prop_assert_eq!(h.project_matrix().rank(), h.rows());
        prop_assert!(is_ridm(&h).unwrap());
    }
}

#[test]
fn field_case_reduces_to_basic() {
    for seed in 0..40 {
        let mut rng = common::rng(seed);
        let p = if seed % 2 == 0 { 2 } else { 3 };
        let ctx = RingContext::new(p, 1).unwrap();
        let n = rng.gen_range(2..=4);
        let k = rng.gen_range(1..n);
        let g = common::random_matrix(&mut rng, ctx, k, n, 3);
        let (reduced, _) = ridm_reduce(&g).unwrap();
        assert!(invariant::delta_of_ridm(&reduced).unwrap().is_one());
    }
}

fn z8() -> RingContext {
    RingContext::new(2, 3).unwrap()
}

fn parse_rows(ctx: RingContext, text: &str) -> PolyMatrix {
    let rows: Vec<Vec<ZprPoly>> = text
        .lines()
        .map(|line| {
            line.split('|')
                .map(|e| ZprPoly::new(ctx, e.trim().split(',').map(|c| c.parse().unwrap()).collect()))
                .collect()
        })
        .collect();
    let n = rows[0].len();
    PolyMatrix::from_rows(ctx, n, rows).unwrap()
}

fn eval(f: &ZprPoly, x: u64) -> u64 {
    let ctx = f.context();
    f.coeffs().iter().rev().fold(0, |acc, &c| ctx.add(ctx.mul(acc, x), c))
}

/// Both `D+1` and `D+5` divide every maximal minor, yet no vector with a unit
/// entry annihilates the matrix modulo either of them, so no row operation
/// exposes a row divisible by a common divisor.
#[test]
fn common_divisor_without_primitive_annihilator() {
    let ctx = z8();
    let h = parse_rows(
        ctx,
        "1,2,4,3,0,1,5 | 6,0,4,3,5 | 6,7,7,3,0,7 | 2,3,4,3 | 6,7,0,7\n\
         2,6,2,1,3,4,3,3 | 6,6,3,6,4,3 | 0,1,4,3,5,4,1 | 1,1,0,5,5 | 7,6,0,3,6",
    );
    let minors = h.maximal_minors().unwrap();
    assert_eq!(find_common_divisor(&minors).unwrap().map(|q| q.into_poly()), Some(ZprPoly::from_coeffs(ctx, &[1, 1])));
    for root in [7u64, 3] {
        // Z/8[D]/(D - root) is Z/8 with D acting as `root`.
        let values: Vec<Vec<u64>> = (0..2).map(|i| (0..5).map(|j| eval(h.get(i, j), root)).collect()).collect();
        for a in 0..8u64 {
            for b in 0..8u64 {
                if a % 2 == 0 && b % 2 == 0 {
                    continue;
                }
                let annihilates = (0..5).all(|j| ctx.add(ctx.mul(a, values[0][j]), ctx.mul(b, values[1][j])) == 0);
                assert!(!annihilates, "({a}, {b}) annihilates at D = {root}");
            }
        }
    }
    assert!(matches!(ridm_reduce(&h), Err(Error::GuaranteeViolated { .. })));
}

/// Two parity-check matrices of the same code, both free of common minor
/// divisors and each in the other's span, whose projected minor gcds differ.
#[test]
fn equivalent_ridm_encoders_with_different_delta() {
    let z4 = RingContext::new(2, 2).unwrap();
    let g = parse_rows(z4, "2 | 1,0,2 | 3,2,3 | 0,3,1,3 | 3\n0 | 2,1,2,1 | 0 | 0 | 3,3");
    let h1 = parse_rows(
        z4,
        "0 | 2,3,1 | 2 | 3,1 | 0,0,1,0,1\n\
         0 | 3,0,1 | 1,1,1 | 0 | 2,1,3,1,1\n\
         1 | 0,2 | 2,2 | 0 | 0,0,2,2",
    );
    let h2 = parse_rows(
        z4,
        "0,1 | 0,2 | 0,1,1,1,2 | 3,2,1,2 | 0,0,2,2\n\
         1,2,1,2 | 0,0,2 | 2,0,3,1,3 | 0,3,2,1 | 0,0,0,2,2\n\
         0 | 1,2,1 | 3,3,0,0,0,1 | 2,1,1,1,3 | 2,3,3,3,1",
    );
    for h in [&h1, &h2] {
        assert!(dual::verify_orthogonality(&g, h).unwrap());
        assert_eq!(h.project_matrix().rank(), 3);
        assert_eq!(brute_common_divisor(&h.maximal_minors().unwrap(), budget()).unwrap(), None);
    }
    for i in 0..3 {
        assert!(dual::in_row_span(&h1, h2.row(i)).unwrap());
        assert!(dual::in_row_span(&h2, h1.row(i)).unwrap());
    }
    assert_eq!(invariant::delta_of_ridm(&h1).unwrap().poly(), &FpPoly::from_coeffs(2, &[1, 1]));
    assert_eq!(invariant::delta_of_ridm(&h2).unwrap().poly(), &FpPoly::from_coeffs(2, &[1, 0, 1]));
    assert_eq!(invariant::delta_of_ridm(&g).unwrap().poly(), &FpPoly::from_coeffs(2, &[1, 1]));
}

/// Reducing `M G` for a square `M` with regular determinant can land on a RIDM
/// encoder of the same span whose delta differs from that of `G`.
#[test]
fn regular_transform_changes_delta() {
    let z4 = RingContext::new(2, 2).unwrap();
    let g = parse_rows(z4, "3 | 2,2,3 | 0\n2 | 1,1 | 0,2");
    let m = parse_rows(z4, "3,1,1 | 0,3\n3,2 | 2,0,1");
    let (reduced, _) = ridm_reduce(&m.mat_mul(&g).unwrap()).unwrap();
    assert_eq!(reduced, parse_rows(z4, "0,2 | 1,0,3 | 0,2,2\n1,2,2 | 0,0,2,3 | 0,0,0,2"));
    for x in [&g, &reduced] {
        assert_eq!(brute_common_divisor(&x.maximal_minors().unwrap(), budget()).unwrap(), None);
    }
    for i in 0..2 {
        assert!(dual::in_row_span(&g, reduced.row(i)).unwrap());
        assert!(dual::in_row_span(&reduced, g.row(i)).unwrap());
    }
    assert_eq!(invariant::delta_of_ridm(&g).unwrap().poly(), &FpPoly::from_coeffs(2, &[1, 1]));
    assert_eq!(invariant::delta_of_ridm(&reduced).unwrap().poly(), &FpPoly::from_coeffs(2, &[1, 0, 1]));
}
