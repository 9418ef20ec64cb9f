//! Parabolic weights on the Grassmannian `Gr(k, n)` of `k`-dimensional quotients.
//!
//! A homogeneous bundle comes from a representation of the Levi factor
//! `GL(k) x GL(n-k)` of the parabolic subgroup, so its highest weight is an
//! integer vector split into a `k`-block (the quotient side) and an
//! `(n-k)`-block (the sub-bundle side).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The pair `(k, n)` with `1 <= k < n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "(usize, usize)", into = "(usize, usize)")]
pub struct GrassContext {
    k: usize,
    n: usize,
}

impl GrassContext {
    pub fn new(k: usize, n: usize) -> Result<Self> {
        if k == 0 || k >= n {
            return Err(Error::Structural(format!("Gr(k,n) needs 1 <= k < n, got k={k}, n={n}")));
        }
        Ok(GrassContext { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Size of the second (sub-bundle) block, `n - k`.
    pub fn m(&self) -> usize {
        self.n - self.k
    }

    /// `dim Gr(k, n) = k (n - k)`.
    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    /// `N` in the Plücker embedding `Gr(k, n) ⊂ P^N`, i.e. `C(n, k) - 1`.
    pub fn ambient_n(&self) -> BigUint {
        crate::weyl::binomial(self.n as u64, self.k as u64) - 1u32
    }

    pub fn shape(&self) -> Shape {
        Shape::new(self.k, self.n - self.k)
    }
}

impl TryFrom<(usize, usize)> for GrassContext {
    type Error = Error;

    fn try_from((k, n): (usize, usize)) -> Result<Self> {
        GrassContext::new(k, n)
    }
}

impl From<GrassContext> for (usize, usize) {
    fn from(ctx: GrassContext) -> Self {
        (ctx.k, ctx.n)
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.k, self.n)
    }
}

impl FromStr for GrassContext {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (k, n) = s
            .split_once(',')
            .ok_or_else(|| Error::Structural(format!("expected `k,n`, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|e| Error::Structural(format!("bad integer `{t}`: {e}")))
        };
        GrassContext::new(parse(k)?, parse(n)?)
    }
}

/// Block sizes of a Levi factor `GL(first) x GL(second)`; `second` may be 0
/// for plain `GL(k)` computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Shape {
    pub first: usize,
    pub second: usize,
}

impl Shape {
    pub fn new(first: usize, second: usize) -> Self {
        Shape { first, second }
    }

    pub fn gl(k: usize) -> Self {
        Shape::new(k, 0)
    }

    pub fn len(&self) -> usize {
        self.first + self.second
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The two blocks of a full-length vector.
    pub fn split<'a, T>(&self, v: &'a [T]) -> (&'a [T], &'a [T]) {
        v.split_at(self.first)
    }

    /// Nonincreasing within each block.
    pub fn is_dominant(&self, v: &[i64]) -> bool {
        let (a, b) = self.split(v);
        is_nonincreasing(a) && is_nonincreasing(b)
    }
}

pub(crate) fn is_nonincreasing(v: &[i64]) -> bool {
    v.windows(2).all(|w| w[0] >= w[1])
}

/// A weight for the Levi factor of `P_k`, stored block-split.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockWeight {
    ctx: GrassContext,
    first: Vec<i64>,
    second: Vec<i64>,
}

impl BlockWeight {
    pub fn new(ctx: GrassContext, first: Vec<i64>, second: Vec<i64>) -> Result<Self> {
        if first.len() != ctx.k() || second.len() != ctx.m() {
            return Err(Error::Structural(format!(
                "weight blocks of length {}|{} do not fit Gr({},{})",
                first.len(),
                second.len(),
                ctx.k(),
                ctx.n()
            )));
        }
        Ok(BlockWeight { ctx, first, second })
    }

    /// A weight with vanishing second block, the usual form of a bundle
    /// coming from a representation of the quotient side only.
    pub fn from_first(ctx: GrassContext, first: Vec<i64>) -> Result<Self> {
        BlockWeight::new(ctx, first, vec![0; ctx.m()])
    }

    /// Rebuild from a concatenated vector of length `n`.
    pub fn from_entries(ctx: GrassContext, entries: &[i64]) -> Result<Self> {
        if entries.len() != ctx.n() {
            return Err(Error::Structural(format!(
                "weight of length {} does not fit Gr({},{})",
                entries.len(),
                ctx.k(),
                ctx.n()
            )));
        }
        let (a, b) = entries.split_at(ctx.k());
        BlockWeight::new(ctx, a.to_vec(), b.to_vec())
    }

    pub fn ctx(&self) -> GrassContext {
        self.ctx
    }

    pub fn first(&self) -> &[i64] {
        &self.first
    }

    pub fn second(&self) -> &[i64] {
        &self.second
    }

    pub fn entries(&self) -> Vec<i64> {
        let mut v = self.first.clone();
        v.extend_from_slice(&self.second);
        v
    }

    /// `|β| = β_1 + … + β_k`.
    pub fn size(&self) -> i64 {
        self.first.iter().sum()
    }

    pub fn is_dominant(&self) -> bool {
        is_nonincreasing(&self.first) && is_nonincreasing(&self.second)
    }

    pub fn has_trivial_second_block(&self) -> bool {
        self.second.iter().all(|&b| b == 0)
    }

    pub fn full(&self) -> FullWeight {
        full_weight(self)
    }

    pub fn dual(&self) -> BlockWeight {
        dual_weight(self)
    }

    pub fn twist(&self, r: i64) -> BlockWeight {
        twist(self, r)
    }

    /// Canonical text form `k,n:[a1,…,ak|b1,…,b_{n-k}]`.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for BlockWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:[", self.ctx)?;
        write_list(f, &self.first)?;
        f.write_str("|")?;
        write_list(f, &self.second)?;
        f.write_str("]")
    }
}

fn write_list(f: &mut fmt::Formatter<'_>, v: &[i64]) -> fmt::Result {
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    Ok(())
}

impl FromStr for BlockWeight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Structural(format!("expected `k,n:[a..|b..]`, got `{s}`"));
        let (ctx, rest) = s.split_once(':').ok_or_else(bad)?;
        let ctx: GrassContext = ctx.parse()?;
        let body = rest
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (a, b) = body.split_once('|').ok_or_else(bad)?;
        BlockWeight::new(ctx, parse_list(a)?, parse_list(b)?)
    }
}

fn parse_list(s: &str) -> Result<Vec<i64>> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| {
            t.parse::<i64>()
                .map_err(|e| Error::Structural(format!("bad integer `{t}`: {e}")))
        })
        .collect()
}

impl Serialize for BlockWeight {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.canonical())
    }
}

impl<'de> Deserialize<'de> for BlockWeight {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The concatenated length-`n` form fed to Bott's theorem.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FullWeight {
    ctx: GrassContext,
    entries: Vec<i64>,
}

impl FullWeight {
    pub fn new(ctx: GrassContext, entries: Vec<i64>) -> Result<Self> {
        if entries.len() != ctx.n() {
            return Err(Error::Structural(format!(
                "full weight of length {} on Gr({},{})",
                entries.len(),
                ctx.k(),
                ctx.n()
            )));
        }
        Ok(FullWeight { ctx, entries })
    }

    pub fn ctx(&self) -> GrassContext {
        self.ctx
    }

    pub fn entries(&self) -> &[i64] {
        &self.entries
    }
}

/// True iff the full `n`-vector is nonincreasing.
pub fn is_globally_generated(w: &BlockWeight) -> bool {
    is_nonincreasing(&w.entries())
}

/// Highest weight of the dual bundle: each block reversed and negated.
pub fn dual_weight(w: &BlockWeight) -> BlockWeight {
    let rev = |v: &[i64]| v.iter().rev().map(|x| -x).collect::<Vec<_>>();
    BlockWeight {
        ctx: w.ctx,
        first: rev(&w.first),
        second: rev(&w.second),
    }
}

/// Tensor with `O(r)`, i.e. add `r` to every first-block entry.
pub fn twist(w: &BlockWeight, r: i64) -> BlockWeight {
    BlockWeight {
        ctx: w.ctx,
        first: w.first.iter().map(|x| x + r).collect(),
        second: w.second.clone(),
    }
}

pub fn full_weight(w: &BlockWeight) -> FullWeight {
    FullWeight {
        ctx: w.ctx,
        entries: w.entries(),
    }
}
