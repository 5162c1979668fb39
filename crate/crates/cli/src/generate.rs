//! Seeded random encoders.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use residual_core::{PolyMatrix, RingContext, ZprPoly};

use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomSpec {
    pub p: u64,
    pub r: u32,
    pub k: usize,
    pub n: usize,
    pub max_degree: usize,
}

const MAX_ATTEMPTS: usize = 10_000;

fn random_poly(rng: &mut ChaCha8Rng, ctx: RingContext, max_degree: usize) -> ZprPoly {
    let d = rng.gen_range(0..=max_degree);
    ZprPoly::new(ctx, (0..=d).map(|_| rng.gen_range(0..ctx.modulus())).collect())
}

/// Draws entries uniformly (degree, then coefficients) until the encoder has
/// full row rank.
pub fn random_matrix(rng: &mut ChaCha8Rng, ctx: RingContext, k: usize, n: usize, max_degree: usize) -> Option<PolyMatrix> {
    for _ in 0..MAX_ATTEMPTS {
        let rows = (0..k).map(|_| (0..n).map(|_| random_poly(rng, ctx, max_degree)).collect()).collect();
        let g = PolyMatrix::from_rows(ctx, n, rows).expect("consistent shape");
        if g.is_full_row_rank() {
            return Some(g);
        }
    }
    None
}

pub fn random_code(spec: RandomSpec, seed: u64) -> Result<PolyMatrix, CliError> {
    let ctx = RingContext::new(spec.p, spec.r)?;
    if spec.k == 0 || spec.k > spec.n {
        return Err(CliError::Usage(format!("need 1 <= k <= n, got k={} n={}", spec.k, spec.n)));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_matrix(&mut rng, ctx, spec.k, spec.n, spec.max_degree)
        .ok_or_else(|| CliError::Usage(format!("no full-rank encoder found in {MAX_ATTEMPTS} draws")))
}
