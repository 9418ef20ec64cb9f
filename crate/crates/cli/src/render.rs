//! JSON and plain-table rendering of subcommand results.

use std::fmt::Write as _;
use std::io::{self, Write};

use clap::ValueEnum;
use gbk_core::bott::CohomologyProfile;
use gbk_core::fano::{LemmaEntry, ScreenReport};
use gbk_core::koszul::{KoszulTable, TargetKind, Verdict};
use gbk_core::theorem::{CrossReport, TheoremReport, TheoremVerdict};
use gbk_core::{Decomposition, GrassContext};
use num_bigint::{BigInt, BigUint};
use serde::Serialize;
use serde_json::json;

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Table,
}

pub enum Output {
    Rank {
        grass: GrassContext,
        expr: String,
        rank: BigUint,
    },
    Decomposition {
        grass: GrassContext,
        expr: String,
        decomposition: Decomposition,
    },
    Profile(CohomologyProfile),
    Koszul {
        table: KoszulTable,
        target: TargetKind,
        degree: i64,
        verdict: Verdict,
    },
    Euler {
        euler: BigInt,
    },
    Hilbert(Vec<(i64, BigInt)>),
    Theorem(Box<TheoremReport>),
    Screen(ScreenReport),
    Lemma(Vec<LemmaEntry>),
    Cross(CrossReport),
}

impl Output {
    /// Whether the process should exit with the check-failed status.
    pub fn is_failure(&self) -> bool {
        matches!(self, Output::Theorem(r) if r.verdict == TheoremVerdict::Fail)
    }

    pub fn print(&self, format: Format) -> anyhow::Result<()> {
        let text = match format {
            Format::Json => self.json()?,
            Format::Table => self.table(),
        };
        let mut out = io::stdout().lock();
        out.write_all(text.as_bytes())?;
        out.flush()?;
        Ok(())
    }

    fn json(&self) -> serde_json::Result<String> {
        fn doc<T: Serialize + ?Sized>(v: &T) -> serde_json::Result<String> {
            Ok(serde_json::to_string_pretty(v)? + "\n")
        }
        match self {
            Output::Rank { grass, expr, rank } => doc(&json!({
                "grass": grass,
                "expr": expr,
                "rank": rank.to_string(),
            })),
            Output::Decomposition {
                grass,
                expr,
                decomposition,
            } => doc(&json!({
                "grass": grass,
                "expr": expr,
                "decomposition": decomposition,
            })),
            Output::Profile(p) => doc(p),
            Output::Koszul {
                table,
                target,
                degree,
                verdict,
            } => doc(&json!({
                "target": target,
                "degree": degree,
                "verdict": verdict,
                "table": table,
            })),
            Output::Euler { euler } => doc(&json!({ "euler": euler.to_string() })),
            Output::Hilbert(series) => doc(&series
                .iter()
                .map(|(r, chi)| json!({ "r": r, "chi": chi.to_string() }))
                .collect::<Vec<_>>()),
            Output::Theorem(r) => doc(r),
            Output::Screen(r) => doc(r),
            Output::Lemma(entries) => {
                let mut s = String::new();
                for e in entries {
                    s.push_str(&serde_json::to_string(e)?);
                    s.push('\n');
                }
                Ok(s)
            }
            Output::Cross(r) => doc(r),
        }
    }

    fn table(&self) -> String {
        let mut s = String::new();
        // writing to a String cannot fail
        let _ = self.write_table(&mut s);
        s
    }

    fn write_table(&self, s: &mut String) -> std::fmt::Result {
        match self {
            Output::Rank { grass, expr, rank } => writeln!(s, "rank of {expr} on Gr({grass}) = {rank}"),
            Output::Decomposition {
                grass,
                expr,
                decomposition,
            } => {
                writeln!(s, "{expr} on Gr({grass}): {} summands", decomposition.terms().len())?;
                writeln!(s, "{:<32} {:>12}", "weight", "mult")?;
                for (w, m) in decomposition.terms() {
                    let (a, b) = w.split_at(decomposition.shape().first);
                    writeln!(s, "{:<32} {:>12}", format!("({} | {})", ints(a), ints(b)), m)?;
                }
                Ok(())
            }
            Output::Profile(p) => writeln!(s, "{p}"),
            Output::Koszul {
                table,
                target,
                degree,
                verdict,
            } => {
                writeln!(
                    s,
                    "E = {}, F = {}, R = {} on Gr({})",
                    table.e(),
                    table.f(),
                    table.rank(),
                    table.ctx()
                )?;
                writeln!(s, "{:>4} {:>4} {:>12}", "q", "p", "dim")?;
                for (q, p, d) in table.cells() {
                    writeln!(s, "{q:>4} {p:>4} {d:>12}")?;
                }
                writeln!(s, "H^{degree} ({target}): {verdict}")
            }
            Output::Euler { euler } => writeln!(s, "chi = {euler}"),
            Output::Hilbert(series) => {
                writeln!(s, "{:>6} {:>16}", "r", "chi")?;
                for (r, chi) in series {
                    writeln!(s, "{r:>6} {chi:>16}")?;
                }
                Ok(())
            }
            Output::Theorem(r) => theorem_table(s, r),
            Output::Screen(r) => screen_table(s, r),
            Output::Lemma(entries) => {
                writeln!(s, "{:<8} {:<28} {:>5} {:>5}", "family", "beta", "n_min", "n_max")?;
                for e in entries {
                    let family = serde_json::to_value(e.family)
                        .ok()
                        .and_then(|v| v.as_str().map(str::to_string))
                        .unwrap_or_default();
                    writeln!(
                        s,
                        "{:<8} {:<28} {:>5} {:>5}",
                        family,
                        format!("({})", ints(&e.beta)),
                        e.n_min,
                        e.n_max
                    )?;
                }
                Ok(())
            }
            Output::Cross(r) => {
                writeln!(s, "beta {}", r.beta)?;
                writeln!(s, "scan failures: {}", r.failures.len())?;
                for w in &r.failures {
                    writeln!(
                        s,
                        "  {} H^{} p={} r={} weight ({}) dim {}",
                        w.group,
                        w.degree,
                        w.p,
                        w.r,
                        ints(&w.weight),
                        w.dim
                    )?;
                }
                writeln!(s, "condition-system witnesses: {}", r.witnesses.len())?;
                for w in &r.witnesses {
                    let twist = w.r.map(|r| format!(" r={r}")).unwrap_or_default();
                    let bound = match w.bound_holds {
                        Some(b) => b.to_string(),
                        None => "n/a".into(),
                    };
                    writeln!(
                        s,
                        "  system {} s={}{} p={} weight ({}) bound {}",
                        w.system,
                        w.s,
                        twist,
                        w.p,
                        ints(&w.weight),
                        bound
                    )?;
                }
                writeln!(s, "mismatches: {}", r.mismatches.len())?;
                for m in &r.mismatches {
                    writeln!(s, "  {m}")?;
                }
                Ok(())
            }
        }
    }
}

fn ints(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn screen_table(s: &mut String, r: &ScreenReport) -> std::fmt::Result {
    writeln!(s, "is_fano          {}", r.is_fano)?;
    writeln!(s, "dim_x            {}", r.dim_x)?;
    writeln!(s, "rank             {}", r.rank)?;
    writeln!(s, "det_coefficient  {}", r.det_coefficient)?;
    match r.excluded {
        Some(x) => writeln!(s, "excluded         {x}"),
        None => writeln!(s, "excluded         none"),
    }
}

fn theorem_table(s: &mut String, r: &TheoremReport) -> std::fmt::Result {
    let theorem = serde_json::to_value(r.instance.theorem)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default();
    writeln!(
        s,
        "{theorem} on Gr({}) with F = {}",
        r.instance.grass,
        r.instance.f.join(", ")
    )?;
    writeln!(s, "verdict          {}", r.verdict)?;
    writeln!(s, "applicable       {}", r.applicable)?;
    writeln!(s, "ambient_N        {}", r.ambient_n)?;
    if let Some(pn) = r.projectively_normal {
        writeln!(s, "proj. normal     {pn}")?;
    }
    if let Some(h0) = &r.connected_components_h0 {
        writeln!(s, "h0(O_X)          {h0}")?;
    }
    screen_table(s, &r.screen)?;
    writeln!(s, "witnesses: {}", r.witnesses.len())?;
    writeln!(
        s,
        "  {:<6} {:>4} {:>4} {:>6} {:<28} {:>10}",
        "group", "p", "r", "degree", "weight", "dim"
    )?;
    for w in &r.witnesses {
        writeln!(
            s,
            "  {:<6} {:>4} {:>4} {:>6} {:<28} {:>10}",
            w.group.to_string(),
            w.p,
            w.r,
            w.degree,
            format!("({})", ints(&w.weight)),
            w.dim
        )?;
    }
    writeln!(s, "checks: {}", r.checks.len())?;
    for c in &r.checks {
        writeln!(
            s,
            "  {:<4} {:<36} {}",
            if c.pass { "ok" } else { "FAIL" },
            c.description(),
            c.profile
        )?;
    }
    Ok(())
}
