//! Koszul spectral sequences for the zero locus `X = Z(s)` of a general
//! section of a globally generated bundle `F`.
//!
//! The table holds `h^p(Gr, E ⊗ ∧^q F*)` for `q ∈ [0, R]`, `R = rank F`.
//! Entries on the diagonal `p − q = i` abut to `H^i(X, E|_X)`; entries with
//! `q ≥ 1` on the diagonal `p − q = i − 1` abut to `H^i(Gr, E ⊗ J_X)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bott::{profile_of, CohomologyProfile};
use crate::error::{Error, Result};
use crate::expr::{parse_expr, BundleExpr};
use crate::schur::{lr_tensor, Decomposition, Engine, PowerKind};
use crate::weight::{is_nonincreasing, GrassContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TargetKind {
    /// `H^i(X, E|_X)`.
    Restriction,
    /// `H^i(Gr, E ⊗ J_X)`.
    Ideal,
}

impl FromStr for TargetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "restriction" => Ok(TargetKind::Restriction),
            "ideal" => Ok(TargetKind::Ideal),
            other => Err(Error::Structural(format!(
                "unknown target `{other}` (expected restriction or ideal)"
            ))),
        }
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TargetKind::Restriction => "restriction",
            TargetKind::Ideal => "ideal",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Verdict {
    Vanishes,
    Exact {
        #[serde(with = "crate::serde_util::decimal")]
        dim: BigUint,
    },
    Bounds {
        #[serde(with = "crate::serde_util::decimal")]
        lo: BigUint,
        #[serde(with = "crate::serde_util::decimal")]
        hi: BigUint,
    },
}

impl Verdict {
    /// Exact dimension, if known.
    pub fn exact(&self) -> Option<BigUint> {
        match self {
            Verdict::Vanishes => Some(BigUint::zero()),
            Verdict::Exact { dim } => Some(dim.clone()),
            Verdict::Bounds { .. } => None,
        }
    }

    pub fn upper(&self) -> BigUint {
        match self {
            Verdict::Vanishes => BigUint::zero(),
            Verdict::Exact { dim } => dim.clone(),
            Verdict::Bounds { hi, .. } => hi.clone(),
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Vanishes => f.write_str("Vanishes"),
            Verdict::Exact { dim } => write!(f, "Exact({dim})"),
            Verdict::Bounds { lo, hi } => write!(f, "Bounds({lo}, {hi})"),
        }
    }
}

/// E₁ page of the Koszul spectral sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KoszulTable {
    ctx: GrassContext,
    e: BundleExpr,
    f: BundleExpr,
    columns: Vec<CohomologyProfile>,
}

impl KoszulTable {
    pub fn ctx(&self) -> GrassContext {
        self.ctx
    }

    pub fn e(&self) -> &BundleExpr {
        &self.e
    }

    pub fn f(&self) -> &BundleExpr {
        &self.f
    }

    /// `R = rank F`.
    pub fn rank(&self) -> usize {
        self.columns.len() - 1
    }

    /// `h^p(E ⊗ ∧^q F*)`, zero outside the grid.
    pub fn get(&self, q: i64, p: i64) -> BigUint {
        if q < 0 || p < 0 || q as usize >= self.columns.len() {
            return BigUint::zero();
        }
        self.columns[q as usize].get(p as usize)
    }

    pub fn column(&self, q: usize) -> &CohomologyProfile {
        &self.columns[q]
    }

    /// Nonzero cells as `(q, p, dim)`, ordered by `q` then `p`.
    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, &BigUint)> {
        self.columns
            .iter()
            .enumerate()
            .flat_map(|(q, c)| c.dims().iter().map(move |(p, d)| (q, *p, d)))
    }

    /// `Σ_q (−1)^q χ(Gr, E ⊗ ∧^q F*)`.
    pub fn euler(&self) -> BigInt {
        self.columns
            .iter()
            .enumerate()
            .map(|(q, c)| if q % 2 == 0 { c.euler() } else { -c.euler() })
            .sum()
    }
}

#[derive(Serialize, Deserialize)]
struct CellRepr {
    q: usize,
    p: usize,
    #[serde(with = "crate::serde_util::decimal")]
    dim: BigUint,
}

#[derive(Serialize, Deserialize)]
struct TableRepr {
    grass: GrassContext,
    #[serde(rename = "E")]
    e: String,
    #[serde(rename = "F")]
    f: String,
    #[serde(rename = "R")]
    rank: usize,
    cells: Vec<CellRepr>,
}

impl Serialize for KoszulTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TableRepr {
            grass: self.ctx,
            e: self.e.to_string(),
            f: self.f.to_string(),
            rank: self.rank(),
            cells: self
                .cells()
                .map(|(q, p, d)| CellRepr { q, p, dim: d.clone() })
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for KoszulTable {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = TableRepr::deserialize(d)?;
        let e = parse_expr(&repr.e, repr.grass).map_err(D::Error::custom)?;
        let f = parse_expr(&repr.f, repr.grass).map_err(D::Error::custom)?;
        let mut columns = vec![CohomologyProfile::new(); repr.rank + 1];
        for c in repr.cells {
            let col = columns
                .get_mut(c.q)
                .ok_or_else(|| D::Error::custom(format!("cell q={} beyond R={}", c.q, repr.rank)))?;
            col.add(c.p, c.dim);
        }
        Ok(KoszulTable {
            ctx: repr.grass,
            e,
            f,
            columns,
        })
    }
}

/// Reject `F` unless every irreducible summand is globally generated.
pub(crate) fn require_globally_generated(f: &Decomposition) -> Result<()> {
    match f.terms().keys().find(|w| !is_nonincreasing(w)) {
        Some(w) => Err(Error::Domain(format!("summand {w:?} of F is not globally generated"))),
        None => Ok(()),
    }
}

/// Rank of a decomposition as a machine integer.
pub(crate) fn rank_of(d: &Decomposition) -> Result<usize> {
    usize::try_from(d.dim()).map_err(|_| Error::Domain("rank of F exceeds usize".into()))
}

fn columns(engine: &Engine, ctx: GrassContext, e: &Decomposition, f: &Decomposition) -> Result<Vec<CohomologyProfile>> {
    require_globally_generated(f)?;
    let rank = rank_of(f)?;
    if rank >= ctx.dim() {
        log::warn!(
            "rank {rank} of F is at least dim Gr({},{}) = {}; X is empty or finite",
            ctx.k(),
            ctx.n(),
            ctx.dim()
        );
    }
    let wedges = engine.powers(f, rank, PowerKind::Wedge)?;
    (0..=rank)
        .into_par_iter()
        .map(|q| profile_of(ctx, &lr_tensor(e, &wedges[q].dual())?))
        .collect()
}

pub fn build_table(engine: &Engine, ctx: GrassContext, e: &BundleExpr, f: &BundleExpr) -> Result<KoszulTable> {
    let ed = engine.evaluate(ctx, e)?;
    let fd = engine.evaluate(ctx, f)?;
    Ok(KoszulTable {
        ctx,
        e: e.clone(),
        f: f.clone(),
        columns: columns(engine, ctx, &ed, &fd)?,
    })
}

/// Sound verdict on `H^i` of the target from the E₁ page alone.
pub fn analyze(t: &KoszulTable, kind: TargetKind, i: i64) -> Verdict {
    let rank = t.rank() as i64;
    let top = t.ctx.dim() as i64;
    let (q_lo, shift) = match kind {
        TargetKind::Restriction => (0, i),
        TargetKind::Ideal => (1, i - 1),
    };
    let contributing: Vec<(i64, i64, BigUint)> = (q_lo..=rank)
        .filter_map(|q| {
            let p = q + shift;
            let d = t.get(q, p);
            (!d.is_zero()).then_some((q, p, d))
        })
        .collect();
    if contributing.is_empty() {
        return Verdict::Vanishes;
    }
    let total: BigUint = contributing.iter().map(|(_, _, d)| d).sum();
    let isolated = contributing.iter().all(|&(q, p, _)| {
        let outgoing = (1..=rank - q).all(|r| p + r - 1 > top || t.get(q + r, p + r - 1).is_zero());
        let incoming = (1..=q - q_lo).all(|r| p - r + 1 < 0 || t.get(q - r, p - r + 1).is_zero());
        outgoing && incoming
    });
    if isolated {
        Verdict::Exact { dim: total }
    } else {
        Verdict::Bounds {
            lo: BigUint::zero(),
            hi: total,
        }
    }
}

/// `χ(X, E|_X)`.
pub fn euler_restriction(engine: &Engine, ctx: GrassContext, e: &BundleExpr, f: &BundleExpr) -> Result<BigInt> {
    Ok(build_table(engine, ctx, e, f)?.euler())
}

/// `χ(O_X(r))` for `r ∈ [lo, hi]`.
pub fn hilbert_series(
    engine: &Engine,
    ctx: GrassContext,
    f: &BundleExpr,
    lo: i64,
    hi: i64,
) -> Result<Vec<(i64, BigInt)>> {
    if lo > hi {
        return Err(Error::Structural(format!("empty range {lo}..{hi}")));
    }
    let fd = engine.evaluate(ctx, f)?;
    (lo..=hi)
        .into_par_iter()
        .map(|r| {
            let e = Decomposition::trivial(ctx.shape()).twist(r);
            let chi = columns(engine, ctx, &e, &fd)?
                .iter()
                .enumerate()
                .map(|(q, c)| if q % 2 == 0 { c.euler() } else { -c.euler() })
                .sum();
            Ok((r, chi))
        })
        .collect()
}
