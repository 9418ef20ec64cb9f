//! Machine checks of the vanishing theorems on explicit instances.
//!
//! Theorem 1 needs `H^p(∧^p F*(r)) = 0` for `p > 0`, `r ≥ 0`. Theorem 2
//! needs `H^p(F ⊗ ∧^p F*) = 0` for `p ≥ 1` (group `5.1a`) and
//! `H^{p+1}(Θ ⊗ ∧^p F*) = 0` for `p ≥ 0` (group `5.1b`). Each scan applies
//! Bott's theorem to every irreducible summand, so a failing group is
//! reported together with the summands that carry it.
//!
//! The twist range of the Theorem 1 scan is finite: every first-block entry
//! of a weight of `∧^p F` lies in `[0, p·β_max]`, so for `r ≥ p·β_max` the
//! dual twisted weights have nonnegative, nonincreasing first blocks sitting
//! above a nonpositive second block, and the shifted vector `α` is strictly
//! decreasing. Such summands only have `H⁰`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bott::{bott_irreducible, CohomologyProfile};
use crate::error::{Error, Result};
use crate::expr::{parse_expr, BundleExpr};
use crate::fano::{screen, witnesses_41, witnesses_5, ConditionWitness, ScreenReport, System};
use crate::koszul::{analyze, build_table, rank_of, require_globally_generated, TargetKind};
use crate::schur::{lr_tensor, Decomposition, Engine, PowerKind};
use crate::weight::{BlockWeight, FullWeight, GrassContext};
use crate::weyl::binomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Group {
    #[serde(rename = "thm1")]
    Thm1,
    #[serde(rename = "5.1a")]
    A51,
    #[serde(rename = "5.1b")]
    B51,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Group::Thm1 => "thm1",
            Group::A51 => "5.1a",
            Group::B51 => "5.1b",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Theorem {
    #[serde(rename = "thm1")]
    One,
    #[serde(rename = "thm2")]
    Two,
    #[serde(rename = "thm3")]
    Three,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TheoremVerdict {
    Pass,
    Fail,
    NotApplicable,
}

impl fmt::Display for TheoremVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremVerdict::Pass => "pass",
            TheoremVerdict::Fail => "fail",
            TheoremVerdict::NotApplicable => "not-applicable",
        })
    }
}

/// One scanned cohomology group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupCheck {
    pub group: Group,
    pub p: usize,
    /// Twist `r` for Theorem 1 groups, zero otherwise.
    pub r: i64,
    /// Cohomological degree that must vanish.
    pub degree: usize,
    pub profile: CohomologyProfile,
    pub pass: bool,
}

impl GroupCheck {
    pub fn description(&self) -> String {
        match self.group {
            Group::Thm1 => format!("H^{}(wedge^{} F*({}))", self.degree, self.p, self.r),
            Group::A51 => format!("H^{}(F ⊗ wedge^{} F*)", self.degree, self.p),
            Group::B51 => format!("H^{}(Theta ⊗ wedge^{} F*)", self.degree, self.p),
        }
    }
}

/// A nonvanishing summand of a scanned group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub group: Group,
    pub p: usize,
    pub r: i64,
    pub degree: usize,
    /// Highest weight of the summand carrying the cohomology.
    pub weight: Vec<i64>,
    #[serde(with = "crate::serde_util::decimal")]
    pub dim: BigUint,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Instance {
    pub grass: GrassContext,
    #[serde(rename = "F")]
    pub f: Vec<String>,
    pub theorem: Theorem,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub instance: Instance,
    pub screen: ScreenReport,
    pub verdict: TheoremVerdict,
    /// Whether the theorem's hypotheses hold (Fano, positive dimension, not excluded).
    pub applicable: bool,
    pub witnesses: Vec<Witness>,
    pub checks: Vec<GroupCheck>,
    #[serde(rename = "ambient_N")]
    pub ambient_n: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub projectively_normal: Option<bool>,
    #[serde(
        default,
        skip_serializing_if = "Option::is_none",
        with = "crate::serde_util::decimal_opt"
    )]
    pub connected_components_h0: Option<BigUint>,
}

impl TheoremReport {
    pub fn passed(&self) -> bool {
        self.verdict == TheoremVerdict::Pass
    }
}

/// `F` with its decomposition, rank and wedge series.
struct Prepared {
    ctx: GrassContext,
    exprs: Vec<BundleExpr>,
    f: Decomposition,
    rank: usize,
    beta_max: i64,
    wedge_duals: Vec<Decomposition>,
}

impl Prepared {
    fn new(engine: &Engine, ctx: GrassContext, summands: &[BundleExpr]) -> Result<Prepared> {
        let sum = BundleExpr::sum_of(summands.to_vec())
            .ok_or_else(|| Error::Structural("F needs at least one summand".into()))?;
        let f = (*engine.evaluate(ctx, &sum)?).clone();
        require_globally_generated(&f)?;
        let rank = rank_of(&f)?;
        let beta_max = f.terms().keys().map(|w| w[0]).max().unwrap_or(0);
        let wedge_duals = engine
            .powers(&f, rank, PowerKind::Wedge)?
            .iter()
            .take(rank + 1)
            .map(Decomposition::dual)
            .collect();
        Ok(Prepared {
            ctx,
            exprs: summands.to_vec(),
            f,
            rank,
            beta_max,
            wedge_duals,
        })
    }

    fn sum_expr(&self) -> BundleExpr {
        BundleExpr::sum_of(self.exprs.clone()).expect("nonempty")
    }

    fn instance(&self, theorem: Theorem) -> Instance {
        Instance {
            grass: self.ctx,
            f: self.exprs.iter().map(ToString::to_string).collect(),
            theorem,
        }
    }
}

fn scan_group(
    ctx: GrassContext,
    group: Group,
    p: usize,
    r: i64,
    degree: usize,
    d: &Decomposition,
) -> Result<(GroupCheck, Vec<Witness>)> {
    let mut profile = CohomologyProfile::new();
    let mut witnesses = Vec::new();
    for (w, m) in d.terms() {
        let part = bott_irreducible(&FullWeight::new(ctx, w.clone())?)?.scaled(m);
        let dim = part.get(degree);
        if !dim.is_zero() {
            witnesses.push(Witness {
                group,
                p,
                r,
                degree,
                weight: w.clone(),
                dim,
            });
        }
        profile.merge(&part);
    }
    let check = GroupCheck {
        group,
        p,
        r,
        degree,
        pass: witnesses.is_empty(),
        profile,
    };
    Ok((check, witnesses))
}

type Scan = (Vec<GroupCheck>, Vec<Witness>);

fn collect(parts: Vec<(GroupCheck, Vec<Witness>)>) -> Scan {
    let mut checks = Vec::with_capacity(parts.len());
    let mut witnesses = Vec::new();
    for (c, w) in parts {
        checks.push(c);
        witnesses.extend(w);
    }
    (checks, witnesses)
}

/// `H^p(∧^p F*(r))` for `p ∈ [1, R]`, `r ∈ [r_lo(p), r_hi(p)]`.
fn scan_thm1_range(f: &Prepared, range: impl Fn(usize) -> (i64, i64) + Sync) -> Result<Scan> {
    let cells: Vec<(usize, i64)> = (1..=f.rank)
        .flat_map(|p| {
            let (lo, hi) = range(p);
            (lo..=hi).map(move |r| (p, r))
        })
        .collect();
    let parts = cells
        .into_par_iter()
        .map(|(p, r)| scan_group(f.ctx, Group::Thm1, p, r, p, &f.wedge_duals[p].twist(r)))
        .collect::<Result<Vec<_>>>()?;
    Ok(collect(parts))
}

fn scan_thm1(f: &Prepared) -> Result<Scan> {
    let bmax = f.beta_max;
    scan_thm1_range(f, |p| (0, p as i64 * bmax))
}

fn scan_thm2(engine: &Engine, f: &Prepared) -> Result<Scan> {
    let theta = engine.evaluate(f.ctx, &BundleExpr::Theta)?;
    let mut cells: Vec<(Group, usize)> = (1..=f.rank).map(|p| (Group::A51, p)).collect();
    cells.extend((0..=f.rank).map(|p| (Group::B51, p)));
    let parts = cells
        .into_par_iter()
        .map(|(group, p)| {
            let dual = &f.wedge_duals[p];
            match group {
                Group::A51 => scan_group(f.ctx, group, p, 0, p, &lr_tensor(&f.f, dual)?),
                _ => scan_group(f.ctx, group, p, 0, p + 1, &lr_tensor(&theta, dual)?),
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(collect(parts))
}

fn sort_witnesses(w: &mut [Witness]) {
    w.sort_by(|a, b| (a.p, a.r, &a.weight, a.group).cmp(&(b.p, b.r, &b.weight, b.group)));
}

fn assemble(f: &Prepared, theorem: Theorem, (checks, mut witnesses): Scan) -> Result<TheoremReport> {
    sort_witnesses(&mut witnesses);
    let screen = screen(f.ctx, &f.f)?;
    let applicable = screen.passes();
    let verdict = if !witnesses.is_empty() {
        TheoremVerdict::Fail
    } else if !applicable {
        TheoremVerdict::NotApplicable
    } else {
        TheoremVerdict::Pass
    };
    let ambient_n = (binomial(f.ctx.n() as u64, f.ctx.k() as u64) - 1u32)
        .to_u64()
        .ok_or_else(|| Error::Domain("Plücker ambient dimension exceeds u64".into()))?;
    Ok(TheoremReport {
        instance: f.instance(theorem),
        screen,
        verdict,
        applicable,
        witnesses,
        checks,
        ambient_n,
        projectively_normal: None,
        connected_components_h0: None,
    })
}

fn warn_scope(f: &Prepared) {
    let non_line =
        f.f.terms()
            .keys()
            .filter(|w| {
                let (a, b) = f.ctx.shape().split(w);
                a.iter().any(|&x| x != a[0]) || b.iter().any(|&x| x != 0)
            })
            .count();
    if non_line > 1 {
        log::warn!("F has {non_line} summands that are not line bundles; the theorems assume at most one");
    }
}

/// Connectedness and projective normality via the Koszul tables.
fn annotate_thm1(engine: &Engine, f: &Prepared, report: &mut TheoremReport) -> Result<()> {
    let sum = f.sum_expr();
    let structure = build_table(engine, f.ctx, &BundleExpr::LineO(0), &sum)?;
    report.connected_components_h0 = analyze(&structure, TargetKind::Restriction, 0).exact();
    let r_max = f.rank as i64 * f.beta_max;
    let normal = (1..=r_max.max(1))
        .into_par_iter()
        .map(|r| {
            let t = build_table(engine, f.ctx, &BundleExpr::LineO(r), &sum)?;
            Ok(analyze(&t, TargetKind::Ideal, 1) == crate::koszul::Verdict::Vanishes)
        })
        .collect::<Result<Vec<bool>>>()?;
    report.projectively_normal = Some(normal.into_iter().all(|x| x));
    Ok(())
}

pub fn check_theorem1(engine: &Engine, ctx: GrassContext, summands: &[BundleExpr]) -> Result<TheoremReport> {
    let f = Prepared::new(engine, ctx, summands)?;
    warn_scope(&f);
    let mut report = assemble(&f, Theorem::One, scan_thm1(&f)?)?;
    annotate_thm1(engine, &f, &mut report)?;
    Ok(report)
}

pub fn check_theorem2(engine: &Engine, ctx: GrassContext, summands: &[BundleExpr]) -> Result<TheoremReport> {
    let f = Prepared::new(engine, ctx, summands)?;
    warn_scope(&f);
    assemble(&f, Theorem::Two, scan_thm2(engine, &f)?)
}

/// Both scans on a fully reducible `F`.
pub fn check_theorem3(engine: &Engine, ctx: GrassContext, summands: &[BundleExpr]) -> Result<TheoremReport> {
    let f = Prepared::new(engine, ctx, summands)?;
    let dim_x = ctx.dim() as i64 - f.rank as i64;
    if dim_x <= 0 {
        log::warn!(
            "rank {} of F is at least dim Gr; X is empty or finite, nothing to scan",
            f.rank
        );
        let mut report = assemble(&f, Theorem::Three, (Vec::new(), Vec::new()))?;
        report.verdict = TheoremVerdict::NotApplicable;
        report.applicable = false;
        return Ok(report);
    }
    if dim_x != 4 {
        log::warn!("dim X = {dim_x}; the rigidity statement concerns fourfolds");
    }
    let (mut checks, mut witnesses) = scan_thm1(&f)?;
    let (c2, w2) = scan_thm2(engine, &f)?;
    checks.extend(c2);
    witnesses.extend(w2);
    let mut report = assemble(&f, Theorem::Three, (checks, witnesses))?;
    if dim_x != 4 && report.verdict == TheoremVerdict::Pass {
        report.verdict = TheoremVerdict::NotApplicable;
        report.applicable = false;
    }
    annotate_thm1(engine, &f, &mut report)?;
    Ok(report)
}

/// Nonvanishing groups just beyond the truncation bound: for each `p`,
/// `H^q(∧^p F*(r))` with `q > 0` and `r ∈ (p·β_max, p·β_max + n]`.
/// Soundness of the Theorem 1 scan range means this is always empty.
pub fn truncation_margin(engine: &Engine, ctx: GrassContext, summands: &[BundleExpr]) -> Result<Vec<Witness>> {
    let f = Prepared::new(engine, ctx, summands)?;
    let n = ctx.n() as i64;
    let bmax = f.beta_max;
    let (checks, _) = scan_thm1_range(&f, |p| (p as i64 * bmax + 1, p as i64 * bmax + n))?;
    let mut out: Vec<Witness> = checks
        .into_iter()
        .flat_map(|c| {
            c.profile
                .dims()
                .iter()
                .filter(|(q, _)| **q > 0)
                .map(|(q, d)| Witness {
                    group: Group::Thm1,
                    p: c.p,
                    r: c.r,
                    degree: *q,
                    weight: Vec::new(),
                    dim: d.clone(),
                })
                .collect::<Vec<_>>()
        })
        .collect();
    sort_witnesses(&mut out);
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CrossReport {
    pub beta: BlockWeight,
    pub failures: Vec<Witness>,
    pub witnesses: Vec<ConditionWitness>,
    pub mismatches: Vec<String>,
}

impl CrossReport {
    pub fn consistent(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Whether a scan failure and a condition-system witness describe the same group.
fn matches(failure: &Witness, w: &ConditionWitness) -> bool {
    match (failure.group, w.system) {
        (Group::Thm1, System::Chain41) => failure.p == w.p && Some(failure.r) == w.r,
        (Group::A51, System::A) => failure.p == w.p,
        (Group::B51, System::B | System::BPrime) => failure.p == w.p,
        _ => false,
    }
}

/// Compare the full Bott scans with the condition systems, listing every
/// unmatched failure or witness.
pub fn cross_validate(engine: &Engine, beta: &BlockWeight) -> Result<CrossReport> {
    let ctx = beta.ctx();
    let f = Prepared::new(engine, ctx, &[BundleExpr::Irr(beta.clone())])?;
    let (_, mut failures) = scan_thm1(&f)?;
    failures.extend(scan_thm2(engine, &f)?.1);
    sort_witnesses(&mut failures);
    let mut witnesses = witnesses_41(engine, beta)?;
    for system in [System::A, System::B, System::BPrime] {
        witnesses.extend(witnesses_5(engine, beta, system)?);
    }
    let mut mismatches = Vec::new();
    for fl in &failures {
        if !witnesses.iter().any(|w| matches(fl, w)) {
            mismatches.push(format!(
                "{} failure H^{} at p={} r={} weight {:?} dim {} has no matching condition-system witness",
                fl.group, fl.degree, fl.p, fl.r, fl.weight, fl.dim
            ));
        }
    }
    for w in &witnesses {
        if !failures.iter().any(|fl| matches(fl, w)) {
            let r = w.r.map(|r| format!(" r={r}")).unwrap_or_default();
            mismatches.push(format!(
                "system {} witness s={}{} p={} weight {:?} has no matching scan failure",
                w.system, w.s, r, w.p, w.weight
            ));
        }
    }
    Ok(CrossReport {
        beta: beta.clone(),
        failures,
        witnesses,
        mismatches,
    })
}

/// Parse a comma-separated list of summand expressions.
pub fn parse_summands(text: &str, ctx: GrassContext) -> Result<Vec<BundleExpr>> {
    crate::expr::split_top_level(text)
        .into_iter()
        .map(|part| {
            // parts are subslices of `text`
            let offset = part.as_ptr() as usize - text.as_ptr() as usize;
            parse_expr(part, ctx).map_err(|e| match e {
                Error::Parse { offset: o, message } => Error::Parse {
                    offset: o + offset,
                    message,
                },
                other => other,
            })
        })
        .collect()
}
