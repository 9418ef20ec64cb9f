mod common;

use std::collections::BTreeSet;

use common::{beta, ctx, sweep_grid};
use gbk_core::bott::bott_irreducible;
use gbk_core::fano::{enumerate_lemma54, screen_weight, witnesses_41};
use gbk_core::koszul::{analyze, build_table, euler_restriction, TargetKind, Verdict};
use gbk_core::schur::{gt_weights, irreducible_character, Decomposition};
use gbk_core::theorem::{check_theorem1, check_theorem2, TheoremVerdict};
use gbk_core::weight::Shape;
use gbk_core::weyl::{block_rank, gl_dim, sl_dim};
use gbk_core::{cohomology, BlockWeight, BundleExpr, Engine, GrassContext};
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use proptest::prelude::*;

fn nonincreasing(len: usize, lo: i64, hi: i64) -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(lo..=hi, len).prop_map(|mut v| {
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    })
}

fn small_ctx() -> impl Strategy<Value = GrassContext> {
    (2usize..=5).prop_flat_map(|n| (1..n).prop_map(move |k| ctx(k, n)))
}

fn block_weight(lo: i64, hi: i64) -> impl Strategy<Value = BlockWeight> {
    small_ctx().prop_flat_map(move |g| {
        (nonincreasing(g.k(), lo, hi), nonincreasing(g.m(), lo, hi))
            .prop_map(move |(a, b)| BlockWeight::new(g, a, b).unwrap())
    })
}

/// Globally generated: the whole vector is nonincreasing.
fn gg_weight() -> impl Strategy<Value = BlockWeight> {
    small_ctx()
        .prop_flat_map(|g| nonincreasing(g.n(), 0, 2).prop_map(move |v| BlockWeight::from_entries(g, &v).unwrap()))
}

fn is_gg(w: &[i64]) -> bool {
    w.windows(2).all(|p| p[0] >= p[1])
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn powers_of_globally_generated_stay_globally_generated(w in gg_weight(), p in 0usize..4) {
        let engine = Engine::new();
        let d = Decomposition::from_block_weight(&w).unwrap();
        for series in [engine.wedge(&d, p).unwrap(), engine.sym(&d, p.min(3)).unwrap()] {
            for weight in series.terms().keys() {
                prop_assert!(is_gg(weight), "{:?} in a power of {}", weight, w);
            }
        }
    }

    #[test]
    fn rank_is_gt_mass_and_dual_twist_invariant(w in block_weight(-2, 3), r in -4i64..5) {
        let rank = block_rank(&w).unwrap();
        let mass = gt_weights(w.first(), w.ctx().k()).unwrap().mass()
            * gt_weights(w.second(), w.ctx().m()).unwrap().mass();
        prop_assert_eq!(&rank, &mass);
        prop_assert_eq!(&rank, &block_rank(&w.dual()).unwrap());
        prop_assert_eq!(&rank, &block_rank(&w.twist(r)).unwrap());
    }

    #[test]
    fn top_wedge_is_the_determinant(w in block_weight(0, 2)) {
        let g = w.ctx();
        let d = Decomposition::from_block_weight(&w).unwrap();
        let rank = u64::try_from(d.dim()).unwrap();
        prop_assume!(rank <= 40);
        let top = Engine::new().wedge(&d, rank as usize).unwrap();
        let (k, m) = (g.k() as i64, g.m() as i64);
        let a = rank as i64 * w.first().iter().sum::<i64>();
        let b = rank as i64 * w.second().iter().sum::<i64>();
        prop_assert_eq!(a % k, 0);
        prop_assert_eq!(b % m, 0);
        let mut det = vec![a / k; g.k()];
        det.extend(vec![b / m; g.m()]);
        prop_assert_eq!(top, Decomposition::irreducible(g.shape(), det).unwrap());
    }

    #[test]
    fn bott_gives_at_most_one_degree(w in block_weight(-4, 4)) {
        let h = bott_irreducible(&w.full()).unwrap();
        prop_assert!(h.dims().len() <= 1);
        if is_gg(&w.entries()) {
            prop_assert_eq!(h.get(0), sl_dim(&w.entries(), w.ctx().n()).unwrap());
        }
    }

    #[test]
    fn character_of_irreducible_has_rank_mass(w in nonincreasing(3, -2, 3)) {
        let ch = irreducible_character(Shape::gl(3), &w).unwrap();
        prop_assert_eq!(ch.mass(), gl_dim(&w).unwrap());
    }
}

fn koszul_instance() -> impl Strategy<Value = (GrassContext, BundleExpr, BundleExpr)> {
    (2usize..=5)
        .prop_flat_map(|n| (1..n).prop_map(move |k| ctx(k, n)))
        .prop_flat_map(|g| {
            let e = prop_oneof![
                (-4i64..=4).prop_map(BundleExpr::LineO),
                (-3i64..=3).prop_map(|r| BundleExpr::twist(BundleExpr::Q, r)),
                (-3i64..=3).prop_map(|r| BundleExpr::twist(BundleExpr::dual(BundleExpr::S), r)),
                Just(BundleExpr::Theta),
            ];
            let f = prop_oneof![
                (1i64..=4).prop_map(BundleExpr::LineO),
                (1usize..=3).prop_map(|p| BundleExpr::sym(p, BundleExpr::Q)),
                Just(BundleExpr::Q),
                Just(BundleExpr::sum(BundleExpr::Q, BundleExpr::LineO(1))),
            ];
            (Just(g), e, f)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn koszul_verdicts_are_sound((g, e, f) in koszul_instance()) {
        let engine = Engine::new();
        let t = build_table(&engine, g, &e, &f).unwrap();
        let r = t.rank() as i64;
        prop_assert_eq!(t.column(0), &cohomology(&engine, g, &e).unwrap());
        for kind in [TargetKind::Restriction, TargetKind::Ideal] {
            let (q_lo, shift) = match kind {
                TargetKind::Restriction => (0, 0),
                TargetKind::Ideal => (1, -1),
            };
            let mut alternating = BigInt::zero();
            let mut all_exact = true;
            for i in -r - 1..=g.dim() as i64 + 1 {
                let diagonal: BigUint = (q_lo..=r).map(|q| t.get(q, q + i + shift)).sum();
                let v = analyze(&t, kind, i);
                match &v {
                    Verdict::Vanishes => prop_assert!(diagonal.is_zero()),
                    Verdict::Exact { dim } => {
                        prop_assert!(!dim.is_zero(), "Exact(0) must be Vanishes");
                        prop_assert_eq!(dim, &diagonal);
                    }
                    Verdict::Bounds { lo, hi } => {
                        prop_assert!(lo <= hi);
                        prop_assert_eq!(hi, &diagonal);
                    }
                }
                match v.exact() {
                    Some(d) if i % 2 == 0 => alternating += BigInt::from(d),
                    Some(d) => alternating -= BigInt::from(d),
                    None => all_exact = false,
                }
            }
            if all_exact && kind == TargetKind::Restriction {
                prop_assert_eq!(&alternating, &euler_restriction(&engine, g, &e, &f).unwrap());
            }
        }
        let higher_vanish = (1..=t.rank()).all(|q| t.column(q).is_zero());
        if higher_vanish && t.rank() < g.dim() {
            for i in 0..=g.dim() {
                let exact = analyze(&t, TargetKind::Restriction, i as i64).exact();
                prop_assert_eq!(exact, Some(t.column(0).get(i)));
            }
        }
    }
}

/// Brute force over every dominant `β ≥ 0` in a box: the enumerator emits
/// exactly those with `|β| ≥ 3` and some admissible `n`, with tight ranges.
#[test]
fn small_weight_enumeration_is_closed() {
    for k in 2..=6usize {
        let emitted: BTreeSet<(Vec<i64>, usize, usize)> = enumerate_lemma54(k)
            .unwrap()
            .into_iter()
            .map(|e| (e.beta, e.n_min, e.n_max))
            .collect();
        let mut expected = BTreeSet::new();
        let mut stack = vec![Vec::<i64>::new()];
        while let Some(prefix) = stack.pop() {
            if prefix.len() == k {
                let size: i64 = prefix.iter().sum();
                if size < 3 {
                    continue;
                }
                let det = gl_dim(&prefix).unwrap() * BigUint::from(size as u64);
                let fano = |n: usize| det < BigUint::from(n * k);
                let ns: Vec<usize> = (k + 1..=2 * k).filter(|&n| fano(n)).collect();
                if let (Some(&lo), Some(&hi)) = (ns.first(), ns.last()) {
                    assert_eq!(ns.len(), hi - lo + 1, "{prefix:?}: admissible n not an interval");
                    assert!(!fano(lo - 1) || lo - 1 == k, "{prefix:?}: n_min not tight");
                    expected.insert((prefix, lo, hi));
                }
                continue;
            }
            let top = prefix.last().copied().unwrap_or(2 * k as i64);
            for x in 0..=top {
                let mut next = prefix.clone();
                next.push(x);
                stack.push(next);
            }
        }
        assert_eq!(emitted, expected, "k = {k}");
    }
}

/// For Fano `β`, every chain witness also satisfies the rank bound.
#[test]
fn chain_witnesses_satisfy_the_rank_bound_when_fano() {
    let engine = Engine::new();
    let mut checked = 0;
    for k in 2..=4usize {
        for n in k + 2..=8 {
            let mut stack = vec![Vec::<i64>::new()];
            while let Some(prefix) = stack.pop() {
                if prefix.len() == k {
                    let b = beta(k, n, &prefix);
                    let s = screen_weight(&b).unwrap();
                    if !s.is_fano || s.rank > BigUint::from(20u32) {
                        continue;
                    }
                    for w in witnesses_41(&engine, &b).unwrap() {
                        assert_ne!(w.bound_holds, Some(false), "{b}: {w:?}");
                        checked += 1;
                    }
                    continue;
                }
                let top = prefix.last().copied().unwrap_or(n as i64 - 1);
                for x in 0..=top {
                    let mut next = prefix.clone();
                    next.push(x);
                    stack.push(next);
                }
            }
        }
    }
    // the implication is not vacuous on this range
    assert!(checked > 0);
}

#[test]
fn fail_verdicts_are_exactly_those_with_witnesses() {
    let engine = Engine::new();
    let mut instances: Vec<BlockWeight> = sweep_grid(3, 7, 12);
    instances.extend([
        beta(2, 5, &[3, 0]),
        beta(1, 4, &[4]),
        beta(1, 4, &[3]),
        beta(2, 4, &[2, 0]),
        beta(2, 6, &[4, 0]),
        beta(3, 6, &[2, 1, 0]),
    ]);
    for b in instances {
        let f = [BundleExpr::Irr(b.clone())];
        for report in [
            check_theorem1(&engine, b.ctx(), &f).unwrap(),
            check_theorem2(&engine, b.ctx(), &f).unwrap(),
        ] {
            assert_eq!(
                report.verdict == TheoremVerdict::Fail,
                !report.witnesses.is_empty(),
                "{b}"
            );
            assert_eq!(
                report.checks.iter().any(|c| !c.pass),
                !report.witnesses.is_empty(),
                "{b}"
            );
            let screen = screen_weight(&b).unwrap();
            if report.witnesses.is_empty() {
                let want = if screen.passes() {
                    TheoremVerdict::Pass
                } else {
                    TheoremVerdict::NotApplicable
                };
                assert_eq!(report.verdict, want, "{b}");
            }
        }
    }
}
