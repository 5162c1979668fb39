//! The acceptance criteria, each reported as one PASS/FAIL line.
//!
//! Run with `cargo test -p residual-cli --test acceptance -- --nocapture`.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use residual_cli::commands::windowed_encoding;
use residual_cli::generate::random_matrix;
use residual_cli::{parse_code_file, random_code, RandomSpec};
use residual_core::dual::{duality_check, in_row_span, parity_check, verify_orthogonality};
use residual_core::invariant::{classify_code, delta_of_code, delta_of_ridm, encode, encoder_is_catastrophic};
use residual_core::matrix::combinations;
use residual_core::oracle::{brute_common_divisor, brute_kernel, det_perm, kernel_generators, massey_sain_fp, SearchBudget};
use residual_core::ridm::{find_common_divisor, intdeg, is_ridm, ridm_reduce};
use residual_core::{
    CatastrophicityVerdict, Error, FpPoly, PolyMatrix, RingContext, WeightClassification, ZprPoly, ZprRational,
};

const RINGS: [(u64, u32); 6] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)];
const CORPUS: u64 = 240;
const MAX_DEGREE: usize = 3;
const KERNEL_BOUND: usize = 3;
const BRUTE_KERNEL_STATES: u64 = 2_000_000;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn spec_for(seed: u64, rings: &[(u64, u32)]) -> RandomSpec {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    let (p, r) = rings[rng.gen_range(0..rings.len())];
    let n = rng.gen_range(2..=5);
    let k = rng.gen_range(1..n);
    RandomSpec { p, r, k, n, max_degree: MAX_DEGREE }
}

fn corpus_code(seed: u64) -> PolyMatrix {
    random_code(spec_for(seed, &RINGS), seed).expect("generator")
}

fn z4() -> RingContext {
    RingContext::new(2, 2).unwrap()
}

fn f2(c: &[u64]) -> FpPoly {
    FpPoly::from_coeffs(2, c)
}

fn two_row_example() -> PolyMatrix {
    parse_code_file("p=2 r=2 k=2 n=3\nrow: 1,1 | 1,1 | 2\nrow: 2,1 | 1 | 1,1\n").unwrap().1
}

/// Collects per-case failures; the criterion passes when there are none.
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Self { cases: 0, failures: Vec::new() }
    }

    fn record(&mut self, label: impl FnOnce() -> String, result: Result<bool, Error>) {
        self.cases += 1;
        match result {
            Ok(true) => {}
            Ok(false) => self.failures.push(label()),
            Err(e) => self.failures.push(format!("{}: {e}", label())),
        }
    }

    fn finish(self, what: &str) -> Outcome {
        if self.failures.is_empty() {
            Ok(format!("{} {what}", self.cases))
        } else {
            let shown: Vec<&str> = self.failures.iter().take(5).map(|s| s.lines().next().unwrap_or("")).collect();
            Err(format!("{}/{} {what} failed; first: {}", self.failures.len(), self.cases, shown.join("; ")))
        }
    }
}

fn ensure(cond: bool, msg: &str) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.to_string())
    }
}

fn criterion_1() -> Outcome {
    let g = two_row_example();
    let e = |e: Error| e.to_string();
    ensure(is_ridm(&g).map_err(e)?, "not RIDM")?;
    let delta = delta_of_ridm(&g).map_err(e)?;
    ensure(delta.poly() == &f2(&[1, 0, 1]), &format!("delta = {delta}"))?;
    ensure(classify_code(&g).map_err(e)?.is_catastrophic(), "not catastrophic")?;
    Ok(format!("delta = {delta}, catastrophic"))
}

fn criterion_2() -> Outcome {
    let g = two_row_example();
    let e = |e: Error| e.to_string();
    let h = parity_check(&g).map_err(e)?;
    ensure(verify_orthogonality(&g, &h).map_err(e)?, "G H^T != 0")?;
    ensure(h.rows() == 1 && h.is_full_row_rank(), "rank of H is not 1")?;
    let delta = delta_of_ridm(&h).map_err(e)?;
    ensure(delta.poly() == &f2(&[1, 0, 1]), &format!("delta(H) = {delta}"))?;
    let known = PolyMatrix::from_coeff_rows(z4(), &[&[&[3, 2, 1], &[3, 0, 3], &[3, 2, 3]]]).unwrap();
    ensure(in_row_span(&h, known.row(0)).map_err(e)?, "known H outside the span")?;
    ensure(duality_check(&g).map_err(e)?.equal, "duality check not EQUAL")?;
    Ok(format!("H = {}", h.row_vecs()[0].iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ")))
}

fn criterion_3() -> Outcome {
    let g = PolyMatrix::from_coeff_rows(z4(), &[&[&[1, 1], &[3, 1]]]).unwrap();
    let e = |e: Error| e.to_string();
    ensure(is_ridm(&g).map_err(e)?, "not RIDM")?;
    let delta = delta_of_ridm(&g).map_err(e)?;
    ensure(delta.poly() == &f2(&[1, 1]), &format!("delta = {delta}"))?;
    let CatastrophicityVerdict::Catastrophic { witness, .. } = classify_code(&g).map_err(e)? else {
        return Err("not catastrophic".into());
    };
    let expected = ZprRational::new(ZprPoly::constant(z4(), 2), ZprPoly::new(z4(), vec![1, 1])).map_err(e)?;
    ensure(witness.input[0] == expected, &format!("input = {}", witness.input[0]))?;
    let product = encode(&g, &witness.input).map_err(e)?;
    ensure(
        product.iter().zip(&witness.output).all(|(a, b)| a.as_poly() == Some(b)),
        "product differs from the stated output",
    )?;
    ensure(!witness.input_weight_cert.is_finite(), "input certificate is finite")?;
    ensure(witness.output_weight <= 2, &format!("output weight {}", witness.output_weight))?;
    Ok(format!("input {} -> output weight {}", witness.input[0], witness.output_weight))
}

fn criterion_4() -> Outcome {
    let mut delta = Tally::new();
    let mut corollary = Tally::new();
    for seed in 0..CORPUS {
        let g = corpus_code(seed);
        let label = || format!("seed {seed}");
        match duality_check(&g) {
            Ok(report) => {
                delta.record(label, Ok(report.equal));
                let both = classify_code(&report.pair.g).and_then(|c| Ok((c, classify_code(&report.pair.h)?)));
                corollary.record(label, both.map(|(a, b)| a.is_catastrophic() == b.is_catastrophic()));
            }
            Err(err) => {
                delta.record(label, Err(err.clone()));
                corollary.record(label, Err(err));
            }
        }
    }
    let a = delta.finish("codes with equal deltas");
    let b = corollary.finish("catastrophic iff dual catastrophic");
    match (a, b) {
        (Ok(a), Ok(b)) => Ok(format!("{a}; {b}")),
        (a, b) => Err(format!("{}; {}", a.unwrap_or_else(|e| e), b.unwrap_or_else(|e| e))),
    }
}

fn random_poly(rng: &mut ChaCha8Rng, ctx: RingContext, max_deg: usize) -> ZprPoly {
    let d = rng.gen_range(0..=max_deg);
    ZprPoly::new(ctx, (0..=d).map(|_| rng.gen_range(0..ctx.modulus())).collect())
}

fn random_unimodular(rng: &mut ChaCha8Rng, ctx: RingContext, k: usize) -> PolyMatrix {
    let mut t = PolyMatrix::identity(ctx, k);
    for _ in 0..4 {
        if k >= 2 {
            let a = rng.gen_range(0..k);
            let b = (a + rng.gen_range(1..k)) % k;
            if rng.gen_bool(0.3) {
                t.row_swap(a, b);
            } else {
                t.row_axpy(a, b, &random_poly(rng, ctx, 2)).unwrap();
            }
        }
        let u = loop {
            let u = rng.gen_range(1..ctx.modulus());
            if ctx.is_unit(u) {
                break u;
            }
        };
        t.row_mul(rng.gen_range(0..k), &ZprPoly::constant(ctx, u));
    }
    t
}

fn criterion_5() -> Outcome {
    let mut unimodular = Tally::new();
    let mut regular = Tally::new();
    for seed in 0..CORPUS {
        let g = corpus_code(seed);
        let ctx = g.context();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x7a11);
        let base = delta_of_code(&g);
        let t = random_unimodular(&mut rng, ctx, g.rows());
        let label = || format!("seed {seed}");
        unimodular.record(label, base.clone().and_then(|d| Ok(delta_of_code(&t.mat_mul(&g)?)? == d)));
        if seed % 2 == 0 {
            let m = random_matrix(&mut rng, ctx, g.rows(), g.rows(), 2).expect("regular square matrix");
            let after = m.mat_mul(&g).and_then(|mg| ridm_reduce(&mg)).and_then(|(r, _)| delta_of_ridm(&r));
            regular.record(label, base.and_then(|d| Ok(after? == d)));
        }
    }
    let a = unimodular.finish("unimodular transforms preserve delta");
    let b = regular.finish("regular transforms preserve delta after reduction");
    match (a, b) {
        (Ok(a), Ok(b)) => Ok(format!("{a}; {b}")),
        (a, b) => Err(format!("{}; {}", a.unwrap_or_else(|e| e), b.unwrap_or_else(|e| e))),
    }
}

/// A corpus code with row 0 multiplied by a monic linear factor, so that it
/// is never RIDM.
fn hidden_factor_code(seed: u64) -> PolyMatrix {
    let mut g = corpus_code(seed);
    let ctx = g.context();
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xfac7);
    let factor = ZprPoly::new(ctx, vec![rng.gen_range(0..ctx.modulus()), 1]);
    g.row_mul(0, &factor);
    g
}

fn contract_holds(g: &PolyMatrix) -> Result<bool, Error> {
    let start = intdeg(g)?;
    let (reduced, trace) = ridm_reduce(g)?;
    let steps_ok = trace.len() <= start
        && trace.steps.iter().all(|s| s.intdeg_before - s.intdeg_after == s.divisor.deg().unwrap_or(0));
    let chained = trace.steps.windows(2).all(|w| w[0].intdeg_after == w[1].intdeg_before);
    Ok(steps_ok
        && chained
        && is_ridm(&reduced)?
        && brute_common_divisor(&reduced.maximal_minors()?, SearchBudget::default())?.is_none()
        && &trace.reconstruct(&reduced)? == g)
}

fn criterion_6() -> Outcome {
    let mut tally = Tally::new();
    for seed in 0..CORPUS {
        let g = if seed % 2 == 0 { corpus_code(seed) } else { hidden_factor_code(seed) };
        tally.record(|| format!("seed {seed}"), contract_holds(&g));
    }
    tally.finish("reductions meet the contract")
}

fn criterion_7() -> Outcome {
    let mut tally = Tally::new();
    for seed in 0..120 {
        let spec = spec_for(seed, &[(2, 1), (3, 1), (5, 1)]);
        let g = random_code(spec, seed).expect("generator");
        tally.record(|| format!("seed {seed}"), delta_of_code(&g).map(|d| d.is_one()));
    }
    tally.finish("field-case codes have delta 1")
}

fn criterion_8() -> Outcome {
    let mut tally = Tally::new();
    for seed in 0..CORPUS {
        let g = if seed % 3 == 0 { hidden_factor_code(seed) } else { corpus_code(seed) };
        tally.record(
            || format!("seed {seed}"),
            (|| Ok(encoder_is_catastrophic(&g)? == massey_sain_fp(&g.project_matrix())?))(),
        );
    }
    tally.finish("encoders agree with the field criterion")
}

fn divisors_agree(g: &PolyMatrix) -> Result<bool, Error> {
    let minors = g.maximal_minors()?;
    let fast = find_common_divisor(&minors)?.map(|d| d.into_poly());
    Ok(fast == brute_common_divisor(&minors, SearchBudget::default())?)
}

fn determinants_agree(g: &PolyMatrix) -> Result<bool, Error> {
    for cols in combinations(g.cols(), g.rows()) {
        let sub = g.select_columns(&cols);
        if sub.det()? != det_perm(&sub)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn kernel_in_span(g: &PolyMatrix) -> Result<bool, Error> {
    let (reduced, _) = ridm_reduce(g)?;
    let h = parity_check(&reduced)?;
    let states = (g.context().modulus() as f64).powi((g.cols() * (KERNEL_BOUND + 1)) as i32);
    let vectors = if states <= BRUTE_KERNEL_STATES as f64 {
        brute_kernel(g, KERNEL_BOUND, SearchBudget::new(KERNEL_BOUND, BRUTE_KERNEL_STATES)?)?
    } else {
        kernel_generators(g, KERNEL_BOUND)
    };
    for v in &vectors {
        if v.iter().any(|e| !e.is_zero()) && !in_row_span(&h, v)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn criterion_9() -> Outcome {
    let mut divisors = Tally::new();
    let mut dets = Tally::new();
    let mut spans = Tally::new();
    for seed in 0..CORPUS {
        let label = || format!("seed {seed}");
        let g = corpus_code(seed);
        let hidden = hidden_factor_code(seed);
        divisors.record(label, divisors_agree(&g));
        divisors.record(label, divisors_agree(&hidden));
        dets.record(label, determinants_agree(&g));
        spans.record(label, kernel_in_span(&g));
    }
    let parts = [
        divisors.finish("divisor searches agree"),
        dets.finish("determinant checks agree"),
        spans.finish("kernels lie in the span of H"),
    ];
    let text: Vec<String> = parts.iter().map(|p| p.clone().unwrap_or_else(|e| e)).collect();
    if parts.iter().all(Result::is_ok) {
        Ok(text.join("; "))
    } else {
        Err(text.join("; "))
    }
}

fn witness_behaves(g: &PolyMatrix) -> Result<Option<bool>, Error> {
    let CatastrophicityVerdict::Catastrophic { witness, .. } = classify_code(g)? else { return Ok(None) };
    let WeightClassification::Infinite { preperiod, period, block, .. } = &witness.input_weight_cert else {
        return Ok(Some(false));
    };
    let per_period = block.iter().filter(|&&c| c != 0).count() as i64;
    let out_deg = witness.output.iter().filter_map(ZprPoly::deg).max().unwrap_or(0) as i64;
    let mut weights = Vec::new();
    for n in [8i64, 16, 32] {
        let win = windowed_encoding(g, &witness.input, 0, n).map_err(|e| Error::VerificationFailed(e.to_string()))?;
        let component = win.inputs[witness.component].weight() as i64;
        let floor = (n - preperiod).max(0) / *period as i64 * per_period;
        if component < floor {
            return Ok(Some(false));
        }
        if n > out_deg && win.output_weight() != witness.output_weight {
            return Ok(Some(false));
        }
        weights.push(win.input_weight());
    }
    Ok(Some(weights[2] > weights[0] && out_deg < 32))
}

fn criterion_10() -> Outcome {
    let mut tally = Tally::new();
    for seed in 0..CORPUS {
        let g = corpus_code(seed);
        match witness_behaves(&g) {
            Ok(None) => {}
            Ok(Some(ok)) => tally.record(|| format!("seed {seed}"), Ok(ok)),
            Err(e) => tally.record(|| format!("seed {seed}"), Err(e)),
        }
    }
    ensure(tally.cases > 0, "no catastrophic codes in the corpus")?;
    tally.finish("catastrophic witnesses behave over windows 8, 16, 32")
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("worked two-row example", criterion_1),
        ("worked dual example", criterion_2),
        ("one-row catastrophic example", criterion_3),
        ("duality on random codes", criterion_4),
        ("invariance under transforms", criterion_5),
        ("RIDM reduction contract", criterion_6),
        ("field case", criterion_7),
        ("projection criterion", criterion_8),
        ("oracle equivalence", criterion_9),
        ("witness windows", criterion_10),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match &outcome {
            Ok(detail) => println!("criterion {:>2} PASS {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                println!("criterion {:>2} FAIL {name}: {detail} ({secs:.1}s)", i + 1);
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
