//! Evaluation of bundle expressions into decompositions, with memoization.

use std::collections::HashMap;
use std::sync::Arc;

use parking_lot::Mutex;

use super::decomposition::Decomposition;
use super::lr::lr_tensor;
use super::plethysm::{self, Backend, PowerKind};
use crate::cache::{CacheKey, CacheStore};
use crate::error::{Error, Result};
use crate::expr::BundleExpr;
use crate::weight::GrassContext;

type Series = Arc<Vec<Decomposition>>;

/// Evaluator shared by all higher layers. Memo tables are lock-protected;
/// values are computed outside the lock, so concurrent callers may compute
/// the same entry twice but always store identical results.
#[derive(Debug)]
pub struct Engine {
    backend: Backend,
    exprs: Mutex<HashMap<String, Arc<Decomposition>>>,
    series: Mutex<HashMap<(String, PowerKind), Series>>,
    cache: Option<Arc<CacheStore>>,
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new()
    }
}

impl Engine {
    pub fn new() -> Self {
        Engine::with_backend(Backend::Fast)
    }

    pub fn with_backend(backend: Backend) -> Self {
        Engine {
            backend,
            exprs: Mutex::new(HashMap::new()),
            series: Mutex::new(HashMap::new()),
            cache: None,
        }
    }

    pub fn with_cache(mut self, cache: Arc<CacheStore>) -> Self {
        self.cache = Some(cache);
        self
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }

    pub fn cache(&self) -> Option<&CacheStore> {
        self.cache.as_deref()
    }

    /// Decompose `e` on `Gr(k, n)` into irreducible homogeneous bundles.
    pub fn evaluate(&self, ctx: GrassContext, e: &BundleExpr) -> Result<Arc<Decomposition>> {
        let key = CacheKey::new("evaluate", format!("{ctx}:{e}"));
        if let Some(cache) = &self.cache {
            if let Some(d) = cache.get::<Decomposition>(&key) {
                if d.shape() == ctx.shape() {
                    return Ok(Arc::new(d));
                }
            }
        }
        let d = self.eval_node(ctx, e)?;
        if let Some(cache) = &self.cache {
            cache.put(&key, d.as_ref());
        }
        Ok(d)
    }

    fn eval_node(&self, ctx: GrassContext, e: &BundleExpr) -> Result<Arc<Decomposition>> {
        let key = format!("{ctx}:{e}");
        if let Some(d) = self.exprs.lock().get(&key) {
            return Ok(d.clone());
        }
        let shape = ctx.shape();
        let (k, m) = (ctx.k(), ctx.m());
        let d = match e {
            BundleExpr::Irr(w) => {
                if w.ctx() != ctx {
                    return Err(Error::Structural(format!(
                        "weight {w} used on Gr({},{})",
                        ctx.k(),
                        ctx.n()
                    )));
                }
                Decomposition::from_block_weight(w)?
            }
            BundleExpr::Q => {
                let mut w = vec![0; k + m];
                w[0] = 1;
                Decomposition::irreducible(shape, w)?
            }
            BundleExpr::S => {
                let mut w = vec![0; k + m];
                w[k] = 1;
                Decomposition::irreducible(shape, w)?
            }
            BundleExpr::Theta => {
                let mut w = vec![0; k + m];
                w[0] = 1;
                w[k + m - 1] = -1;
                Decomposition::irreducible(shape, w)?
            }
            BundleExpr::LineO(r) => {
                let w = (0..k + m).map(|i| if i < k { *r } else { 0 }).collect();
                Decomposition::irreducible(shape, w)?
            }
            BundleExpr::Wedge(p, inner) => {
                let d = self.eval_node(ctx, inner)?;
                self.power(&d, *p, PowerKind::Wedge)?
            }
            BundleExpr::Sym(p, inner) => {
                let d = self.eval_node(ctx, inner)?;
                self.power(&d, *p, PowerKind::Sym)?
            }
            BundleExpr::Dual(inner) => self.eval_node(ctx, inner)?.dual(),
            BundleExpr::Twist(inner, r) => self.eval_node(ctx, inner)?.twist(*r),
            BundleExpr::Tensor(a, b) => {
                let (a, b) = (self.eval_node(ctx, a)?, self.eval_node(ctx, b)?);
                lr_tensor(&a, &b)?
            }
            BundleExpr::DirectSum(a, b) => {
                let mut d = (*self.eval_node(ctx, a)?).clone();
                d.merge(self.eval_node(ctx, b)?.as_ref())?;
                d
            }
        };
        let d = Arc::new(d);
        self.exprs.lock().insert(key, d.clone());
        Ok(d)
    }

    /// `p`-th exterior or symmetric power.
    pub fn power(&self, d: &Decomposition, p: usize, kind: PowerKind) -> Result<Decomposition> {
        Ok(self.powers(d, p, kind)?[p].clone())
    }

    pub fn wedge(&self, d: &Decomposition, p: usize) -> Result<Decomposition> {
        self.power(d, p, PowerKind::Wedge)
    }

    pub fn sym(&self, d: &Decomposition, p: usize) -> Result<Decomposition> {
        self.power(d, p, PowerKind::Sym)
    }

    /// Powers of degree `0..=p` (at least; the cached series may be longer).
    pub fn powers(&self, d: &Decomposition, p: usize, kind: PowerKind) -> Result<Series> {
        let key = (d.canonical(), kind);
        if let Some(s) = self.series.lock().get(&key) {
            if s.len() > p {
                return Ok(s.clone());
            }
        }
        let s: Vec<Decomposition> = match self.backend {
            Backend::Fast => plethysm::fast_powers(d, p, kind)?,
            Backend::Oracle => (0..=p)
                .map(|q| plethysm::power(d, q, kind, Backend::Oracle))
                .collect::<Result<_>>()?,
        };
        let s = Arc::new(s);
        let mut memo = self.series.lock();
        let entry = memo.entry(key).or_insert_with(|| s.clone());
        if entry.len() < s.len() {
            *entry = s.clone();
        }
        Ok(s)
    }

    pub fn tensor(&self, a: &Decomposition, b: &Decomposition) -> Result<Decomposition> {
        lr_tensor(a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_expr;
    use crate::weight::Shape;
    use num_bigint::BigUint;

    fn gr(k: usize, n: usize) -> GrassContext {
        GrassContext::new(k, n).unwrap()
    }

    fn eval(text: &str, ctx: GrassContext) -> Decomposition {
        let e = parse_expr(text, ctx).unwrap();
        (*Engine::new().evaluate(ctx, &e).unwrap()).clone()
    }

    fn single(ctx: GrassContext, w: &[i64]) -> Decomposition {
        Decomposition::irreducible(ctx.shape(), w.to_vec()).unwrap()
    }

    #[test]
    fn atoms() {
        let ctx = gr(2, 5);
        assert_eq!(eval("Theta", ctx), single(ctx, &[1, 0, 0, 0, -1]));
        assert_eq!(eval("Q", ctx), single(ctx, &[1, 0, 0, 0, 0]));
        assert_eq!(eval("S", ctx), single(ctx, &[0, 0, 1, 0, 0]));
        assert_eq!(eval("O(-2)", ctx), single(ctx, &[-2, -2, 0, 0, 0]));
    }

    #[test]
    fn tangent_is_q_tensor_dual_s() {
        for (k, n) in [(1, 3), (2, 5), (3, 5), (2, 4)] {
            let ctx = gr(k, n);
            assert_eq!(eval("tensor(Q,dual(S))", ctx), eval("Theta", ctx));
        }
    }

    #[test]
    fn wehler_bundle() {
        let ctx = gr(2, 5);
        assert_eq!(
            eval("twist(dual(wedge(3,sym(3,Q))),2)", ctx),
            single(ctx, &[-1, -4, 0, 0, 0])
        );
    }

    #[test]
    fn rank_is_conserved() {
        let ctx = gr(2, 4);
        let d = eval("tensor(sym(2,Q),wedge(2,sum(Q,S)))", ctx);
        assert_eq!(d.dim(), BigUint::from(3u32 * 6));
        let d = eval("sym(2,Theta)", ctx);
        assert_eq!(d.dim(), BigUint::from(10u32));
    }

    #[test]
    fn backends_agree_on_expressions() {
        let ctx = gr(2, 4);
        let e = parse_expr("wedge(3,tensor(Q,sum(S,O(1))))", ctx).unwrap();
        let fast = Engine::new().evaluate(ctx, &e).unwrap();
        let oracle = Engine::with_backend(Backend::Oracle).evaluate(ctx, &e).unwrap();
        assert_eq!(fast, oracle);
    }

    #[test]
    fn foreign_weight_is_rejected() {
        let e = parse_expr("irr[1,0]", gr(2, 5)).unwrap();
        assert!(Engine::new().evaluate(gr(2, 4), &e).is_err());
        let bad = parse_expr("irr[0,1]", gr(2, 5)).unwrap();
        assert!(matches!(Engine::new().evaluate(gr(2, 5), &bad), Err(Error::Domain(_))));
    }

    #[test]
    fn persistent_cache_is_transparent() {
        let dir = tempfile::tempdir().unwrap();
        let store = Arc::new(CacheStore::open(dir.path()));
        let ctx = gr(2, 5);
        let e = parse_expr("wedge(2,sym(3,Q))", ctx).unwrap();
        let cold = Engine::new().with_cache(store.clone()).evaluate(ctx, &e).unwrap();
        let warm = Engine::new().with_cache(store).evaluate(ctx, &e).unwrap();
        assert_eq!(cold, warm);
        assert_eq!(cold.shape(), Shape::new(2, 3));
    }
}
