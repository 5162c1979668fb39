//! One function per subcommand; each returns the text printed on stdout.

use residual_core::dual::{duality_check, in_row_span, parity_check, verify_orthogonality};
use residual_core::invariant::{classify_code, delta_of_ridm, encode as encode_exact};
use residual_core::laurent::{expand, LaurentWindow};
use residual_core::matrix::combinations;
use residual_core::oracle::{brute_common_divisor, brute_kernel, det_perm, kernel_generators, massey_sain_fp, SearchBudget};
use residual_core::ridm::{is_ridm, ridm_reduce};
use residual_core::{CatastrophicityVerdict, Error, FpPoly, PolyMatrix, ZprRational};

use crate::format::{parse_code_file, print_code_file};
use crate::generate::{random_code, RandomSpec};
use crate::CliError;

fn as_comments(text: &str) -> String {
    text.lines().map(|l| format!("# {l}\n")).collect()
}

fn failed(msg: impl Into<String>) -> CliError {
    Error::VerificationFailed(msg.into()).into()
}

fn verify_ridm_by_oracles(g: &PolyMatrix, out: &mut String) -> Result<(), CliError> {
    let minors = g.maximal_minors()?;
    if let Some(q) = brute_common_divisor(&minors, SearchBudget::default())? {
        return Err(failed(format!("brute-force search finds common divisor {q}")));
    }
    for cols in combinations(g.cols(), g.rows()) {
        let sub = g.select_columns(&cols);
        if sub.det()? != det_perm(&sub)? {
            return Err(failed(format!("determinant of columns {cols:?} disagrees with the permutation expansion")));
        }
    }
    out.push_str("verify: no common divisor by brute force\n");
    out.push_str("verify: minors agree with the permutation expansion\n");
    Ok(())
}

pub fn delta(g: &PolyMatrix, verify: bool) -> Result<String, CliError> {
    let (reduced, _) = ridm_reduce(g)?;
    let d = delta_of_ridm(&reduced)?;
    let mut out = format!("delta = {d}\n");
    if verify {
        verify_ridm_by_oracles(&reduced, &mut out)?;
    }
    Ok(out)
}

/// Input windows and the encoder output on `[lo, hi)`, the output obtained by
/// convolving the expanded inputs with the encoder coefficients.
#[derive(Clone, Debug)]
pub struct WindowedEncoding {
    pub lo: i64,
    pub hi: i64,
    pub inputs: Vec<LaurentWindow>,
    pub outputs: Vec<Vec<u64>>,
}

impl WindowedEncoding {
    pub fn input_weight(&self) -> usize {
        self.inputs.iter().map(LaurentWindow::weight).sum()
    }

    pub fn output_weight(&self) -> usize {
        self.outputs.iter().flatten().filter(|&&c| c != 0).count()
    }
}

pub fn windowed_encoding(g: &PolyMatrix, input: &[ZprRational], lo: i64, hi: i64) -> Result<WindowedEncoding, CliError> {
    if input.len() != g.rows() {
        return Err(CliError::Usage(format!("input has {} entries, encoder has {} rows", input.len(), g.rows())));
    }
    let ctx = g.context();
    let r = i64::from(ctx.r());
    // A series u = a/b starts no lower than -r deg(b).
    let floor = input.iter().map(|u| -r * u.den().deg().unwrap_or(0) as i64).min().unwrap_or(0);
    let max_deg = g.max_degree().finite().unwrap_or(0) as i64;
    let start = floor.min(lo - max_deg);
    let full: Vec<LaurentWindow> = input.iter().map(|u| expand(u, start, hi)).collect::<Result<_, _>>()?;
    let mut outputs = vec![vec![0u64; (hi - lo) as usize]; g.cols()];
    for (j, out) in outputs.iter_mut().enumerate() {
        for (e, slot) in (lo..hi).zip(out.iter_mut()) {
            let mut acc = 0;
            for (i, u) in full.iter().enumerate() {
                for (t, &c) in g.get(i, j).coeffs().iter().enumerate() {
                    let x = u.coeff(e - t as i64).unwrap_or(0);
                    acc = ctx.add(acc, ctx.mul(c, x));
                }
            }
            *slot = acc;
        }
    }
    let inputs = input.iter().map(|u| expand(u, lo, hi)).collect::<Result<_, _>>()?;
    Ok(WindowedEncoding { lo, hi, inputs, outputs })
}

pub fn classify(g: &PolyMatrix, verify: bool) -> Result<String, CliError> {
    let verdict = classify_code(g)?;
    let mut out = format!("{verdict}\n");
    if verify {
        let (reduced, _) = ridm_reduce(g)?;
        let independent = massey_sain_fp(&reduced.project_matrix())?;
        if independent != verdict.is_catastrophic() {
            return Err(failed("field criterion on the reduced encoder disagrees with the verdict"));
        }
        out.push_str("verify: field criterion on the reduced encoder agrees\n");
        if let CatastrophicityVerdict::Catastrophic { witness, .. } = &verdict {
            let deg = witness.output.iter().filter_map(|v| v.deg()).max().unwrap_or(0) as i64;
            let win = windowed_encoding(g, &witness.input, 0, deg + 32)?;
            for (v, w) in witness.output.iter().zip(&win.outputs) {
                if (0..w.len()).any(|e| w[e] != v.coeff(e)) {
                    return Err(failed("windowed encoding of the witness disagrees with its output"));
                }
            }
            out.push_str("verify: windowed encoding reproduces the witness output\n");
        }
    }
    Ok(out)
}

pub fn ridm(g: &PolyMatrix, verify: bool) -> Result<String, CliError> {
    let (reduced, trace) = ridm_reduce(g)?;
    let mut out = print_code_file(&reduced);
    for step in &trace.steps {
        out.push_str(&format!("# {step}\n"));
        for row in step.transform.row_vecs() {
            let entries: Vec<String> = row.iter().map(ToString::to_string).collect();
            out.push_str(&format!("#   T: {}\n", entries.join(" | ")));
        }
    }
    if verify {
        let mut checks = String::new();
        verify_ridm_by_oracles(&reduced, &mut checks)?;
        if &trace.reconstruct(&reduced)? != g {
            return Err(failed("trace does not reconstruct the input"));
        }
        checks.push_str("verify: trace reconstructs the input\n");
        out.push_str(&as_comments(&checks));
    }
    Ok(out)
}

const KERNEL_BOUND: usize = 3;

pub fn dual(g: &PolyMatrix, verify: bool) -> Result<String, CliError> {
    let (reduced, _) = ridm_reduce(g)?;
    let h = parity_check(&reduced)?;
    let mut out = print_code_file(&h);
    out.push_str(&format!("# orthogonal: {}\n", verify_orthogonality(g, &h)?));
    if h.rows() > 0 {
        out.push_str(&format!("# delta(Cperp) = {}\n", delta_of_ridm(&h)?));
    }
    if verify {
        let generators = kernel_generators(g, KERNEL_BOUND);
        for v in &generators {
            if !in_row_span(&h, v)? {
                return Err(failed("a kernel generator lies outside the span of H"));
            }
        }
        let mut checks =
            format!("verify: {} kernel generators of degree <= {KERNEL_BOUND} lie in the span\n", generators.len());
        let vectors = brute_kernel(g, 1, SearchBudget::default())?;
        for v in &vectors {
            if !in_row_span(&h, v)? {
                return Err(failed("an enumerated kernel vector lies outside the span of H"));
            }
        }
        checks.push_str(&format!("verify: {} enumerated kernel vectors of degree <= 1 lie in the span\n", vectors.len()));
        out.push_str(&as_comments(&checks));
    }
    Ok(out)
}

pub fn verify_duality(g: &PolyMatrix, verify: bool) -> Result<String, CliError> {
    let report = duality_check(g)?;
    let verdict = if report.equal { "EQUAL" } else { "NOT EQUAL" };
    let mut out = format!("delta(C)={} delta(Cperp)={} {verdict}\n", report.delta_code, report.delta_dual);
    out.push_str(&format!(
        "minor ratios: proportional={} constant={}\n",
        report.ratios.proportional, report.ratios.constant
    ));
    if verify {
        for m in [&report.pair.g, &report.pair.h] {
            if m.rows() > 0 {
                verify_ridm_by_oracles(m, &mut out)?;
            }
        }
        if !verify_orthogonality(&report.pair.g, &report.pair.h)? {
            return Err(failed("G H^T is not zero"));
        }
        out.push_str("verify: G H^T = 0\n");
    }
    Ok(out)
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" | ")
}

pub fn encode(g: &PolyMatrix, input: &[ZprRational], window: Option<(i64, i64)>, verify: bool) -> Result<String, CliError> {
    let output = encode_exact(g, input)?;
    let mut out = match output.iter().map(ZprRational::as_poly).collect::<Option<Vec<_>>>() {
        Some(polys) => format!("codeword: {}\n", join(&polys)),
        None => format!("output: {}\n", join(&output)),
    };
    if let Some((lo, hi)) = window {
        if lo >= hi {
            return Err(CliError::Usage(format!("empty window {lo}:{hi}")));
        }
        let win = windowed_encoding(g, input, lo, hi)?;
        out.push_str(&format!("window [{lo}, {hi})\n"));
        for (i, u) in win.inputs.iter().enumerate() {
            out.push_str(&format!("u{i}: {}\n", join(u.coeffs())));
        }
        for (j, v) in win.outputs.iter().enumerate() {
            out.push_str(&format!("v{j}: {}\n", join(v)));
        }
        out.push_str(&format!("input_weight={} output_weight={}\n", win.input_weight(), win.output_weight()));
        if verify {
            for (j, v) in output.iter().enumerate() {
                if expand(v, lo, hi)?.coeffs() != win.outputs[j].as_slice() {
                    return Err(failed(format!("component {j}: convolution disagrees with the exact expansion")));
                }
            }
            out.push_str("verify: convolution agrees with the exact expansion\n");
        }
    }
    Ok(out)
}

pub fn random(spec: RandomSpec, seed: u64) -> Result<String, CliError> {
    let g = random_code(spec, seed)?;
    Ok(format!("# seed={seed} max_degree={}\n{}", spec.max_degree, print_code_file(&g)))
}

const TWO_ROW_EXAMPLE: &str = "p=2 r=2 k=2 n=3\nrow: 1,1 | 1,1 | 2\nrow: 2,1 | 1 | 1,1\n";
const TWO_ROW_DUAL: &str = "p=2 r=2 k=1 n=3\nrow: 3,2,1 | 3,0,3 | 3,2,3\n";
const ONE_ROW_EXAMPLE: &str = "p=2 r=2 k=1 n=2\nrow: 1,1 | 3,1\n";

fn check(out: &mut String, all: &mut bool, name: &str, result: Result<bool, CliError>) {
    match result {
        Ok(true) => out.push_str(&format!("ok   {name}\n")),
        Ok(false) => {
            *all = false;
            out.push_str(&format!("FAIL {name}\n"));
        }
        Err(e) => {
            *all = false;
            out.push_str(&format!("FAIL {name}: {e}\n"));
        }
    }
}

/// Replays the worked examples; the flag is true iff every check passes.
pub fn selftest() -> (String, bool) {
    let mut out = String::new();
    let mut all = true;
    let g = || parse_code_file(TWO_ROW_EXAMPLE).map(|(_, g)| g);
    let f2 = |c: &[u64]| FpPoly::from_coeffs(2, c);
    check(&mut out, &mut all, "two-row example is RIDM", g().and_then(|g| Ok(is_ridm(&g)?)));
    check(&mut out, &mut all, "two-row example has delta 1+D^2", g().and_then(|g| Ok(delta_of_ridm(&g)?.poly() == &f2(&[1, 0, 1]))));
    check(&mut out, &mut all, "two-row example is catastrophic", g().and_then(|g| Ok(classify_code(&g)?.is_catastrophic())));
    check(
        &mut out,
        &mut all,
        "parity check is orthogonal, rank one, delta 1+D^2",
        g().and_then(|g| {
            let h = parity_check(&g)?;
            Ok(verify_orthogonality(&g, &h)? && h.rows() == 1 && delta_of_ridm(&h)?.poly() == &f2(&[1, 0, 1]))
        }),
    );
    check(
        &mut out,
        &mut all,
        "known parity check lies in the computed span",
        g().and_then(|g| {
            let h = parity_check(&g)?;
            let (_, known) = parse_code_file(TWO_ROW_DUAL)?;
            Ok(verify_orthogonality(&g, &known)? && in_row_span(&h, known.row(0))?)
        }),
    );
    check(&mut out, &mut all, "duality check reports equal", g().and_then(|g| Ok(duality_check(&g)?.equal)));
    let one = || parse_code_file(ONE_ROW_EXAMPLE).map(|(_, g)| g);
    check(
        &mut out,
        &mut all,
        "one-row example is RIDM with delta 1+D",
        one().and_then(|g| Ok(is_ridm(&g)? && delta_of_ridm(&g)?.poly() == &f2(&[1, 1]))),
    );
    check(
        &mut out,
        &mut all,
        "one-row example has a verified witness",
        one().and_then(|g| match classify_code(&g)? {
            CatastrophicityVerdict::Catastrophic { witness, .. } => {
                let product = encode_exact(&g, &witness.input)?;
                let exact = product.iter().zip(&witness.output).all(|(a, b)| a.as_poly() == Some(b));
                Ok(exact && !witness.input_weight_cert.is_finite() && witness.output_weight <= 2)
            }
            CatastrophicityVerdict::NonCatastrophic { .. } => Ok(false),
        }),
    );
    (out, all)
}
