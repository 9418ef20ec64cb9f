//! Bott's theorem on `Gr(k, n)`.
//!
//! For an irreducible bundle with highest weight `γ`, put
//! `α = γ + ρ` with `ρ = (n, n−1, …, 1)`. The cohomology vanishes in every
//! degree if `α` has a repeated entry; otherwise it is concentrated in the
//! degree `p` equal to the number of pairs `i < j` with `α_i < α_j`, where
//! it is the `GL(n)` irreducible with highest weight `sort↓(α) − ρ`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cache::CacheKey;
use crate::error::{Error, Result};
use crate::expr::BundleExpr;
use crate::schur::{Decomposition, Engine};
use crate::weight::{FullWeight, GrassContext};
use crate::weyl::sl_dim;

/// `α = γ + ρ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BottVector {
    ctx: GrassContext,
    alpha: Vec<i64>,
}

impl BottVector {
    pub fn rho(ctx: GrassContext) -> Vec<i64> {
        (1..=ctx.n() as i64).rev().collect()
    }

    pub fn new(gamma: &FullWeight) -> Self {
        let ctx = gamma.ctx();
        let alpha = gamma
            .entries()
            .iter()
            .zip(BottVector::rho(ctx))
            .map(|(g, r)| g + r)
            .collect();
        BottVector { ctx, alpha }
    }

    pub fn alpha(&self) -> &[i64] {
        &self.alpha
    }

    /// `γ = α − ρ`.
    pub fn gamma(&self) -> FullWeight {
        let entries = self
            .alpha
            .iter()
            .zip(BottVector::rho(self.ctx))
            .map(|(a, r)| a - r)
            .collect();
        FullWeight::new(self.ctx, entries).expect("length n")
    }

    pub fn is_regular(&self) -> bool {
        let mut v = self.alpha.clone();
        v.sort_unstable();
        v.windows(2).all(|w| w[0] != w[1])
    }

    /// Number of pairs `i < j` with `α_i < α_j`.
    pub fn inversions(&self) -> usize {
        let a = &self.alpha;
        (0..a.len())
            .flat_map(|i| (i + 1..a.len()).map(move |j| (i, j)))
            .filter(|&(i, j)| a[i] < a[j])
            .count()
    }
}

/// Cohomological degree ↦ dimension; absent degrees vanish.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, String>", into = "BTreeMap<String, String>")]
pub struct CohomologyProfile {
    dims: BTreeMap<usize, BigUint>,
}

impl CohomologyProfile {
    pub fn new() -> Self {
        CohomologyProfile::default()
    }

    pub fn single(p: usize, dim: BigUint) -> Self {
        let mut c = CohomologyProfile::new();
        c.add(p, dim);
        c
    }

    pub fn add(&mut self, p: usize, dim: BigUint) {
        if !dim.is_zero() {
            *self.dims.entry(p).or_default() += dim;
        }
    }

    pub fn merge(&mut self, other: &CohomologyProfile) {
        for (p, d) in &other.dims {
            self.add(*p, d.clone());
        }
    }

    pub fn scaled(&self, m: &BigUint) -> CohomologyProfile {
        let mut c = CohomologyProfile::new();
        for (p, d) in &self.dims {
            c.add(*p, d * m);
        }
        c
    }

    pub fn get(&self, p: usize) -> BigUint {
        self.dims.get(&p).cloned().unwrap_or_default()
    }

    pub fn dims(&self) -> &BTreeMap<usize, BigUint> {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `χ = Σ (−1)^p h^p`.
    pub fn euler(&self) -> BigInt {
        self.dims
            .iter()
            .map(|(p, d)| {
                let d = BigInt::from(d.clone());
                if p % 2 == 0 {
                    d
                } else {
                    -d
                }
            })
            .sum()
    }
}

impl fmt::Display for CohomologyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (p, d)) in self.dims.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}: {d}")?;
        }
        f.write_str("}")
    }
}

impl From<CohomologyProfile> for BTreeMap<String, String> {
    fn from(c: CohomologyProfile) -> Self {
        c.dims
            .into_iter()
            .map(|(p, d)| (p.to_string(), d.to_string()))
            .collect()
    }
}

impl TryFrom<BTreeMap<String, String>> for CohomologyProfile {
    type Error = Error;

    fn try_from(m: BTreeMap<String, String>) -> Result<Self> {
        let mut c = CohomologyProfile::new();
        for (p, d) in m {
            let p: usize = p
                .parse()
                .map_err(|e| Error::Structural(format!("bad degree `{p}`: {e}")))?;
            let d: BigUint = d
                .parse()
                .map_err(|e| Error::Structural(format!("bad dimension `{d}`: {e}")))?;
            c.add(p, d);
        }
        Ok(c)
    }
}

/// Cohomology of the irreducible bundle with highest weight `gamma`.
pub fn bott_irreducible(gamma: &FullWeight) -> Result<CohomologyProfile> {
    let ctx = gamma.ctx();
    if !ctx.shape().is_dominant(gamma.entries()) {
        return Err(Error::Domain(format!(
            "{:?} is not dominant per block on Gr({},{})",
            gamma.entries(),
            ctx.k(),
            ctx.n()
        )));
    }
    let bv = BottVector::new(gamma);
    if !bv.is_regular() {
        return Ok(CohomologyProfile::new());
    }
    let p = bv.inversions();
    let mut sorted = bv.alpha.clone();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let lambda: Vec<i64> = sorted.iter().zip(BottVector::rho(ctx)).map(|(a, r)| a - r).collect();
    Ok(CohomologyProfile::single(p, sl_dim(&lambda, ctx.n())?))
}

/// Summand-wise Bott over a decomposition on `ctx`.
pub fn profile_of(ctx: GrassContext, d: &Decomposition) -> Result<CohomologyProfile> {
    if d.shape() != ctx.shape() {
        return Err(Error::Structural(format!(
            "decomposition of shape {:?} on Gr({},{})",
            d.shape(),
            ctx.k(),
            ctx.n()
        )));
    }
    let parts: Vec<CohomologyProfile> = d
        .terms()
        .par_iter()
        .map(|(w, m)| {
            let gamma = FullWeight::new(ctx, w.clone())?;
            Ok(bott_irreducible(&gamma)?.scaled(m))
        })
        .collect::<Result<_>>()?;
    let mut total = CohomologyProfile::new();
    for p in &parts {
        total.merge(p);
    }
    Ok(total)
}

/// Cohomology of `e` on `ctx`, memoized in the engine's persistent cache.
pub fn cohomology(engine: &Engine, ctx: GrassContext, e: &BundleExpr) -> Result<CohomologyProfile> {
    let key = CacheKey::new("cohomology", format!("{ctx}:{e}"));
    if let Some(hit) = engine.cache().and_then(|c| c.get::<CohomologyProfile>(&key)) {
        return Ok(hit);
    }
    let profile = profile_of(ctx, engine.evaluate(ctx, e)?.as_ref())?;
    if let Some(cache) = engine.cache() {
        cache.put(&key, &profile);
    }
    Ok(profile)
}
