//! Numerical screens for zero loci `X ⊂ Gr(k, n)`: the Fano and dimension
//! conditions, the excluded weights, the inequality systems that any
//! nonvanishing cohomology group must satisfy, and the enumeration of small
//! highest weights.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::koszul::{rank_of, require_globally_generated};
use crate::schur::{lr_tensor, Decomposition, Engine, PowerKind};
use crate::weight::{BlockWeight, GrassContext};
use crate::weyl::gl_dim;

/// Weights set aside before the theorems are applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Exclusion {
    /// `β = (1,0,…,0)`: `X = Gr(k, n−1)`.
    #[serde(rename = "(i) X=Gr(k,n-1)")]
    Hyperplane,
    /// `β = (2,0,…,0)` with `2k ≤ n`: `X` is homogeneous, two copies if `2k = n`.
    #[serde(rename = "(ii) X homogeneous")]
    Quadric,
    /// `β = (2,0,…,0)` or `(1,1,0,…,0)` with `2k > n`: `X` is empty.
    #[serde(rename = "(iii) X empty")]
    Empty,
}

impl fmt::Display for Exclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Exclusion::Hyperplane => "(i) X=Gr(k,n-1)",
            Exclusion::Quadric => "(ii) X homogeneous",
            Exclusion::Empty => "(iii) X empty",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScreenReport {
    pub is_fano: bool,
    pub dim_x: i64,
    pub excluded: Option<Exclusion>,
    /// `c₁(F)` as a multiple of the Plücker class.
    #[serde(with = "crate::serde_util::decimal")]
    pub det_coefficient: BigRational,
    #[serde(with = "crate::serde_util::decimal")]
    pub rank: BigUint,
}

impl ScreenReport {
    pub fn passes(&self) -> bool {
        self.is_fano && self.dim_x > 0 && self.excluded.is_none()
    }
}

/// `c₁` of an irreducible bundle with highest weight `(λ | μ)`, in units of `O(1)`.
fn det_coefficient(ctx: GrassContext, w: &[i64], mult: &BigUint) -> Result<BigRational> {
    let (first, second) = ctx.shape().split(w);
    let rk = BigInt::from(gl_dim(first)? * gl_dim(second)? * mult);
    let a = BigRational::new(first.iter().sum::<i64>().into(), (ctx.k() as i64).into());
    let b = BigRational::new(second.iter().sum::<i64>().into(), (ctx.m() as i64).into());
    Ok((a - b) * BigRational::from_integer(rk))
}

fn exclusion(ctx: GrassContext, f: &Decomposition) -> Option<Exclusion> {
    let mut terms = f.terms().iter();
    let (w, m) = terms.next()?;
    if terms.next().is_some() || *m != BigUint::from(1u32) {
        return None;
    }
    let (first, second) = ctx.shape().split(w);
    if second.iter().any(|&x| x != 0) {
        return None;
    }
    let unit = |prefix: &[i64]| first[..prefix.len()] == *prefix && first[prefix.len()..].iter().all(|&x| x == 0);
    let (k, n) = (ctx.k(), ctx.n());
    if unit(&[1]) {
        Some(Exclusion::Hyperplane)
    } else if unit(&[2]) {
        Some(if 2 * k <= n {
            Exclusion::Quadric
        } else {
            Exclusion::Empty
        })
    } else if k >= 2 && unit(&[1, 1]) && 2 * k > n {
        Some(Exclusion::Empty)
    } else {
        None
    }
}

/// Fano, dimension and exclusion screen for `F` given as a decomposition.
pub fn screen(ctx: GrassContext, f: &Decomposition) -> Result<ScreenReport> {
    require_globally_generated(f)?;
    let mut coefficient = BigRational::zero();
    for (w, m) in f.terms() {
        coefficient += det_coefficient(ctx, w, m)?;
    }
    let rank = f.dim();
    let dim_x = ctx.dim() as i64
        - rank
            .to_i64()
            .ok_or_else(|| Error::Domain("rank of F exceeds i64".into()))?;
    Ok(ScreenReport {
        is_fano: BigRational::from_integer((ctx.n() as i64).into()) > coefficient,
        dim_x,
        excluded: exclusion(ctx, f),
        det_coefficient: coefficient,
        rank,
    })
}

pub fn screen_weight(beta: &BlockWeight) -> Result<ScreenReport> {
    screen(beta.ctx(), &Decomposition::from_block_weight(beta)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum System {
    #[serde(rename = "4.1")]
    Chain41,
    #[serde(rename = "a")]
    A,
    #[serde(rename = "b")]
    B,
    #[serde(rename = "b'")]
    BPrime,
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Chain41 => "4.1",
            System::A => "a",
            System::B => "b",
            System::BPrime => "b'",
        })
    }
}

impl System {
    /// Wedge degree of `F` whose summands are searched.
    pub fn wedge_degree(self, ctx: GrassContext, s: usize) -> Option<usize> {
        let base = s * ctx.m();
        match self {
            System::Chain41 | System::A => Some(base),
            System::B => base.checked_sub(1),
            System::BPrime => base.checked_sub(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionWitness {
    pub system: System,
    pub s: usize,
    /// Twist, for the `4.1` chain only.
    pub r: Option<i64>,
    /// Wedge degree `p` the weight was drawn from.
    pub p: usize,
    pub weight: Vec<i64>,
    /// Whether the system's rank/`n` bound holds; `None` when `|β| = 1`.
    pub bound_holds: Option<bool>,
}

impl ConditionWitness {
    /// Re-check the displayed inequalities.
    pub fn validate(&self, ctx: GrassContext) -> bool {
        satisfies(ctx, self.system, self.s, self.r.unwrap_or(0), &self.weight)
    }
}

/// First-block chain conditions of each system; `b` is dominant.
#[allow(clippy::int_plus_one)]
fn satisfies(ctx: GrassContext, system: System, s: usize, r: i64, b: &[i64]) -> bool {
    let (k, n) = (ctx.k(), ctx.n() as i64);
    let nk = ctx.m() as i64;
    let si = s as i64;
    if s == 0 || s >= k || b.len() != k || !crate::weight::is_nonincreasing(b) {
        return false;
    }
    // b is 0-indexed: b[j] is the (j+1)-th entry
    let at = |j: usize| b[j - 1];
    let tail_le = |from: usize, bound: i64| (from..=k).all(|j| at(j) <= bound);
    match system {
        System::Chain41 => n - 1 >= at(1) && at(s) >= nk + r + si && at(k) >= 0 && at(s + 1) <= r + si,
        System::A => n - 1 >= at(1) && at(s) >= nk + si && at(s + 1) <= si,
        System::B => n - 1 >= at(1) && at(s) >= nk + si + 1 && tail_le(s + 2, si) && at(s + 1) <= si + 1,
        System::BPrime => {
            n - 1 >= at(1)
                && (s < 2 || at(s - 1) >= nk + si)
                && (nk + si - 1..=nk + si).contains(&at(s))
                && tail_le(s + 2, si)
                && at(s + 1) <= si + 1
        }
    }
}

/// `rk|β| < k²(k−1)/(s(|β|−1)) + k²`.
pub fn bound_42(k: usize, s: usize, rank: &BigUint, size: i64) -> Option<bool> {
    if size <= 1 {
        return None;
    }
    let k = BigInt::from(k);
    let lhs = BigRational::from_integer(BigInt::from(rank.clone()) * size);
    let rhs = BigRational::new(&k * &k * (&k - 1), BigInt::from(s) * (size - 1)) + BigRational::from_integer(&k * &k);
    Some(lhs < rhs)
}

/// `n ≤ (s(k−s) + |β|(sk+1) − s + 1) / (s(|β|−1))`.
pub fn bound_52(n: usize, k: usize, s: usize, size: i64) -> Option<bool> {
    if size <= 1 {
        return None;
    }
    let (n, k, s) = (n as i64, k as i64, s as i64);
    let num = s * (k - s) + size * (s * k + 1) - s + 1;
    Some(BigRational::from_integer(n.into()) <= BigRational::new(num.into(), (s * (size - 1)).into()))
}

/// `n ≤ (s(k−s) + 2 − k + |β|sk + 2|β|) / (s(|β|−1))`.
pub fn bound_53(n: usize, k: usize, s: usize, size: i64) -> Option<bool> {
    if size <= 1 {
        return None;
    }
    let (n, k, s) = (n as i64, k as i64, s as i64);
    let num = s * (k - s) + 2 - k + size * s * k + 2 * size;
    Some(BigRational::from_integer(n.into()) <= BigRational::new(num.into(), (s * (size - 1)).into()))
}

fn irreducible_input(engine: &Engine, beta: &BlockWeight) -> Result<(Decomposition, usize)> {
    if !beta.has_trivial_second_block() {
        return Err(Error::Domain(format!(
            "witness systems take β with trivial second block, got {beta}"
        )));
    }
    let f = Decomposition::from_block_weight(beta)?;
    require_globally_generated(&f)?;
    let rank = rank_of(&f)?;
    // warm the wedge series once for every system
    engine.powers(&f, rank, PowerKind::Wedge)?;
    Ok((f, rank))
}

/// Every chain-system witness, ordered by `(s, r, weight)`.
pub fn witnesses_41(engine: &Engine, beta: &BlockWeight) -> Result<Vec<ConditionWitness>> {
    let ctx = beta.ctx();
    let (f, rank) = irreducible_input(engine, beta)?;
    let frank = f.dim();
    let mut out = Vec::new();
    for s in 1..ctx.k() {
        let p = s * ctx.m();
        if p > rank {
            continue;
        }
        let wedge = engine.wedge(&f, p)?;
        let max_entry = wedge.terms().keys().map(|w| w[0]).max().unwrap_or(0);
        for r in 0..(s as i64 + max_entry.max(0)) {
            for w in wedge.terms().keys() {
                let b = &w[..ctx.k()];
                if satisfies(ctx, System::Chain41, s, r, b) {
                    out.push(ConditionWitness {
                        system: System::Chain41,
                        s,
                        r: Some(r),
                        p,
                        weight: b.to_vec(),
                        bound_holds: bound_42(ctx.k(), s, &frank, beta.size()),
                    });
                }
            }
        }
    }
    Ok(out)
}

pub fn find_witness_41(engine: &Engine, beta: &BlockWeight) -> Result<Option<ConditionWitness>> {
    Ok(witnesses_41(engine, beta)?.into_iter().next())
}

/// Every witness of system `a`, `b` or `b'`, ordered by `(s, weight)`.
pub fn witnesses_5(engine: &Engine, beta: &BlockWeight, system: System) -> Result<Vec<ConditionWitness>> {
    if system == System::Chain41 {
        return witnesses_41(engine, beta);
    }
    let ctx = beta.ctx();
    let (f, rank) = irreducible_input(engine, beta)?;
    let mut out = Vec::new();
    for s in 1..ctx.k() {
        let Some(p) = system.wedge_degree(ctx, s) else {
            continue;
        };
        if p > rank {
            continue;
        }
        let wedge = engine.wedge(&f, p)?;
        let searched = if system == System::A {
            lr_tensor(&f.dual(), &wedge)?
        } else {
            wedge
        };
        let bound = match system {
            System::BPrime => bound_53(ctx.n(), ctx.k(), s, beta.size()),
            _ => bound_52(ctx.n(), ctx.k(), s, beta.size()),
        };
        for w in searched.terms().keys() {
            let b = &w[..ctx.k()];
            if satisfies(ctx, system, s, 0, b) {
                out.push(ConditionWitness {
                    system,
                    s,
                    r: None,
                    p,
                    weight: b.to_vec(),
                    bound_holds: bound,
                });
            }
        }
    }
    Ok(out)
}

pub fn find_witness_5(engine: &Engine, beta: &BlockWeight, system: System) -> Result<Option<ConditionWitness>> {
    Ok(witnesses_5(engine, beta, system)?.into_iter().next())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    I,
    Ii,
    Iii,
    Iv,
    V,
    Vi,
    Vii,
    Unclassified,
}

impl Family {
    pub fn classify(beta: &[i64]) -> Family {
        let k = beta.len();
        let ones_then =
            |head: i64, tail: i64| k >= 2 && beta[..k - 1].iter().all(|&x| x == head) && beta[k - 1] == tail;
        let first_then = |head: i64, rest: i64| k >= 2 && beta[0] == head && beta[1..].iter().all(|&x| x == rest);
        let ones = |count: usize| beta.iter().take(count).all(|&x| x == 1) && beta[count..].iter().all(|&x| x == 0);
        if beta.iter().all(|&x| x == beta[0]) {
            Family::I
        } else if first_then(2, 1) {
            Family::Ii
        } else if ones_then(2, 1) {
            Family::Iii
        } else if ones_then(1, 0) {
            Family::Iv
        } else if k == 5 && ones(3) {
            Family::V
        } else if k == 6 && ones(3) {
            Family::Vi
        } else if k == 6 && ones(4) {
            Family::Vii
        } else {
            Family::Unclassified
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaEntry {
    pub beta: Vec<i64>,
    pub n_min: usize,
    pub n_max: usize,
    pub family: Family,
}

fn partitions(max_size: usize, max_parts: usize, max_part: usize, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
    out.push(prefix.clone());
    if prefix.len() == max_parts {
        return;
    }
    for part in 1..=max_part.min(max_size) {
        prefix.push(part as i64);
        partitions(max_size - part, max_parts, part, prefix, out);
        prefix.pop();
    }
}

/// All dominant `β ≥ 0` with `|β| ≥ 3` admitting some `n` with
/// `rk(β)|β|/k < n ≤ 2k` and `n > k`, with their exact `n`-ranges.
///
/// Writing `β = t·(1,…,1) + λ` with `λ_k = 0`, any `λ ≠ 0` has `rk ≥ k`, so
/// `|β| < 2k` forces `t ≤ 1`; for `λ = 0` the rank is one and `t < 2k`.
pub fn enumerate_lemma54(k: usize) -> Result<Vec<LemmaEntry>> {
    if k < 2 {
        return Err(Error::Domain(format!("k = {k} < 2")));
    }
    let n_max = 2 * k;
    let mut lambdas = Vec::new();
    partitions(2 * k - 1, k - 1, 2 * k - 1, &mut Vec::new(), &mut lambdas);
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for t in 1..2 * k as i64 {
        candidates.push(vec![t; k]);
    }
    for lambda in lambdas.into_iter().filter(|l| !l.is_empty()) {
        for t in 0..=1 {
            let mut beta: Vec<i64> = lambda.iter().map(|x| x + t).collect();
            beta.resize(k, t);
            candidates.push(beta);
        }
    }
    let mut out: Vec<LemmaEntry> = candidates
        .into_par_iter()
        .map(|beta| -> Result<Option<LemmaEntry>> {
            let size: i64 = beta.iter().sum();
            if size < 3 {
                return Ok(None);
            }
            let rk = gl_dim(&beta)?;
            // smallest n with n·k > rk·|β|
            let bound = rk * BigUint::from(size as u64) / BigUint::from(k as u64);
            let n_min = match bound.to_usize() {
                Some(b) => (b + 1).max(k + 1),
                None => return Ok(None),
            };
            Ok((n_min <= n_max).then(|| LemmaEntry {
                family: Family::classify(&beta),
                beta,
                n_min,
                n_max,
            }))
        })
        .filter_map(|r| r.transpose())
        .collect::<Result<_>>()?;
    out.sort_by(|a, b| (a.family, &a.beta).cmp(&(b.family, &b.beta)));
    out.dedup();
    Ok(out)
}
