#![allow(dead_code)]

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use residual_core::{PolyMatrix, RingContext, ZprPoly};

pub const RINGS: [(u64, u32); 6] = [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (3, 3)];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_poly(rng: &mut ChaCha8Rng, ctx: RingContext, max_deg: usize) -> ZprPoly {
    let d = rng.gen_range(0..=max_deg);
    let coeffs: Vec<u64> = (0..=d).map(|_| rng.gen_range(0..ctx.modulus())).collect();
    ZprPoly::new(ctx, coeffs)
}

pub fn random_matrix(rng: &mut ChaCha8Rng, ctx: RingContext, k: usize, n: usize, max_deg: usize) -> PolyMatrix {
    loop {
        let rows = (0..k).map(|_| (0..n).map(|_| random_poly(rng, ctx, max_deg)).collect()).collect();
        let g = PolyMatrix::from_rows(ctx, n, rows).unwrap();
        if g.is_full_row_rank() {
            return g;
        }
    }
}

/// A random full-rank code: ring, shape and entries all drawn from `seed`.
pub fn random_code(seed: u64) -> PolyMatrix {
    let mut r = rng(seed);
    let (p, e) = RINGS[r.gen_range(0..RINGS.len())];
    let ctx = RingContext::new(p, e).unwrap();
    let n = r.gen_range(2..=5);
    let k = r.gen_range(1..n);
    random_matrix(&mut r, ctx, k, n, 3)
}

/// Product of random elementary row operations, a permutation and unit
/// constant scalings.
pub fn random_unimodular(rng: &mut ChaCha8Rng, ctx: RingContext, k: usize, ops: usize) -> PolyMatrix {
    let mut t = PolyMatrix::identity(ctx, k);
    for _ in 0..ops {
        if k >= 2 {
            let a = rng.gen_range(0..k);
            let mut b = rng.gen_range(0..k - 1);
            if b >= a {
                b += 1;
            }
            match rng.gen_range(0..3) {
                0 => t.row_swap(a, b),
                _ => {
                    let f = random_poly(rng, ctx, 2);
                    t.row_axpy(a, b, &f).unwrap();
                }
            }
        }
        let i = rng.gen_range(0..k);
        let mut u = rng.gen_range(1..ctx.modulus());
        while !ctx.is_unit(u) {
            u = rng.gen_range(1..ctx.modulus());
        }
        t.row_mul(i, &ZprPoly::constant(ctx, u));
    }
    t
}
