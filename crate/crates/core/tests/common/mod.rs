#![allow(dead_code)]

use gbk_core::fano::screen_weight;
use gbk_core::weyl::{binomial, block_rank};
use gbk_core::{BlockWeight, BundleExpr, GrassContext};
use num_bigint::BigUint;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn ctx(k: usize, n: usize) -> GrassContext {
    GrassContext::new(k, n).unwrap()
}

pub fn beta(k: usize, n: usize, first: &[i64]) -> BlockWeight {
    BlockWeight::from_first(ctx(k, n), first.to_vec()).unwrap()
}

fn nonincreasing(k: usize, cap: i64, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    if prefix.len() == k {
        out.push(prefix.clone());
        return;
    }
    let top = prefix.last().copied().unwrap_or(cap);
    for x in 0..=top {
        prefix.push(x);
        nonincreasing(k, cap, prefix, out);
        prefix.pop();
    }
}

/// Globally generated irreducible `β = (β_1…β_k | 0…0)` on `Gr(k, n)` with
/// `2 ≤ k ≤ k_max`, `n − k ≥ 2`, `n ≤ n_max`, rank at most `max_rank`,
/// passing the Fano/dimension/exclusion screen.
///
/// Fano forces `β_k < n`, and a weight with `β_1 − β_k = d` has rank at
/// least `d + 1`, so both entries are bounded.
pub fn sweep_grid(k_max: usize, n_max: usize, max_rank: u32) -> Vec<BlockWeight> {
    let mut grid = Vec::new();
    for k in 2..=k_max {
        for n in k + 2..=n_max {
            let mut all = Vec::new();
            nonincreasing(k, max_rank as i64 + n as i64, &mut Vec::new(), &mut all);
            for b in all {
                if b.iter().all(|&x| x == 0) || b[0] - b[k - 1] >= max_rank as i64 || b[k - 1] >= n as i64 {
                    continue;
                }
                let w = beta(k, n, &b);
                if block_rank(&w).unwrap() > BigUint::from(max_rank) {
                    continue;
                }
                if screen_weight(&w).unwrap().passes() {
                    grid.push(w);
                }
            }
        }
    }
    grid
}

/// Random bundle expression of bounded depth on `ctx`.
pub fn random_expr(rng: &mut ChaCha8Rng, ctx: GrassContext, depth: u32) -> BundleExpr {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..5) {
            0 => BundleExpr::Q,
            1 => BundleExpr::S,
            2 => BundleExpr::Theta,
            3 => BundleExpr::LineO(rng.gen_range(-3..=3)),
            _ => {
                let mut first: Vec<i64> = (0..ctx.k()).map(|_| rng.gen_range(-2..=2)).collect();
                let mut second: Vec<i64> = (0..ctx.m()).map(|_| rng.gen_range(-2..=2)).collect();
                first.sort_unstable_by(|a, b| b.cmp(a));
                second.sort_unstable_by(|a, b| b.cmp(a));
                BundleExpr::Irr(BlockWeight::new(ctx, first, second).unwrap())
            }
        };
    }
    let inner = random_expr(rng, ctx, depth - 1);
    match rng.gen_range(0..6) {
        0 => BundleExpr::dual(inner),
        1 => BundleExpr::twist(inner, rng.gen_range(-4..=4)),
        2 => BundleExpr::wedge(rng.gen_range(0..=3), inner),
        3 => BundleExpr::sym(rng.gen_range(0..=2), inner),
        4 => BundleExpr::tensor(inner, random_expr(rng, ctx, depth - 1)),
        _ => BundleExpr::sum(inner, random_expr(rng, ctx, depth - 1)),
    }
}

/// Rank of an expression from the rank formulas alone, without decomposing.
pub fn expr_rank(ctx: GrassContext, e: &BundleExpr) -> BigUint {
    let k = ctx.k() as u64;
    let m = ctx.m() as u64;
    match e {
        BundleExpr::Irr(w) => block_rank(w).unwrap(),
        BundleExpr::Q => k.into(),
        BundleExpr::S => m.into(),
        BundleExpr::Theta => (k * m).into(),
        BundleExpr::LineO(_) => 1u32.into(),
        BundleExpr::Wedge(p, a) => binomial(small(expr_rank(ctx, a)), *p as u64),
        BundleExpr::Sym(p, a) => {
            let r = small(expr_rank(ctx, a));
            if r == 0 {
                BigUint::from((*p == 0) as u32)
            } else {
                binomial(r + *p as u64 - 1, *p as u64)
            }
        }
        BundleExpr::Dual(a) | BundleExpr::Twist(a, _) => expr_rank(ctx, a),
        BundleExpr::Tensor(a, b) => expr_rank(ctx, a) * expr_rank(ctx, b),
        BundleExpr::DirectSum(a, b) => expr_rank(ctx, a) + expr_rank(ctx, b),
    }
}

fn small(r: BigUint) -> u64 {
    u64::try_from(r).expect("rank fits in u64")
}
