//! Exterior and symmetric powers.
//!
//! Two independent routes are provided:
//!
//! * [`Backend::Oracle`] expands the weight multiset and counts `p`-subsets
//!   (or `p`-multisets) by their weight sum, then peels the resulting
//!   character into irreducibles.
//! * [`Backend::Fast`] works on irreducibles only: Newton's identities
//!   express `p·e_p` and `p·h_p` through the Adams operations `ψ^j`, and each
//!   product `e_{p-j} · ψ^j(χ)` is formed by Brauer–Klimyk straightening.
//!   Reducible inputs are split with `∧^p(A⊕B) = ⊕ ∧^i A ⊗ ∧^{p-i} B`
//!   (likewise for `Sym`).

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::One;

use super::character::{irreducible_character, Character};
use super::decomposition::{decompose_character, Decomposition, VirtualDecomposition};
use super::lr::lr_tensor;
use crate::error::Result;
use crate::weight::Shape;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Backend {
    Oracle,
    Fast,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PowerKind {
    Wedge,
    Sym,
}

pub fn wedge_power(d: &Decomposition, p: usize, backend: Backend) -> Result<Decomposition> {
    power(d, p, PowerKind::Wedge, backend)
}

pub fn sym_power(d: &Decomposition, p: usize, backend: Backend) -> Result<Decomposition> {
    power(d, p, PowerKind::Sym, backend)
}

pub fn power(d: &Decomposition, p: usize, kind: PowerKind, backend: Backend) -> Result<Decomposition> {
    match backend {
        Backend::Oracle => oracle_power(d, p, kind),
        Backend::Fast => Ok(fast_powers(d, p, kind)?.pop().expect("degree p present")),
    }
}

/// All powers of degree `0..=p` by the fast route.
pub fn fast_powers(d: &Decomposition, p: usize, kind: PowerKind) -> Result<Vec<Decomposition>> {
    let shape = d.shape();
    let mut acc = unit_series(shape, p);
    for (w, m) in d.terms() {
        let series = irreducible_powers(shape, w, p, kind)?;
        let mut copies = m.clone();
        while copies >= BigUint::one() {
            acc = convolve(&acc, &series, p)?;
            copies -= 1u32;
        }
    }
    Ok(acc)
}

fn unit_series(shape: Shape, p: usize) -> Vec<Decomposition> {
    let mut s = vec![Decomposition::new(shape); p + 1];
    s[0] = Decomposition::trivial(shape);
    s
}

fn convolve(a: &[Decomposition], b: &[Decomposition], p: usize) -> Result<Vec<Decomposition>> {
    let shape = a[0].shape();
    let mut out = vec![Decomposition::new(shape); p + 1];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_empty() {
            continue;
        }
        for (j, bj) in b.iter().enumerate().take(p + 1 - i) {
            if bj.is_empty() {
                continue;
            }
            out[i + j].merge(&lr_tensor(ai, bj)?)?;
        }
    }
    Ok(out)
}

/// `e_0..e_p` (or `h_0..h_p`) of a single irreducible via Newton's identities:
/// `q·e_q = Σ_{j=1..q} (−1)^{j−1} e_{q−j} ψ^j`, `q·h_q = Σ_{j=1..q} h_{q−j} ψ^j`.
pub fn irreducible_powers(shape: Shape, weight: &[i64], p: usize, kind: PowerKind) -> Result<Vec<Decomposition>> {
    let chi = irreducible_character(shape, weight)?;
    let adams: Vec<Vec<(Vec<i64>, BigInt)>> = (1..=p)
        .map(|j| {
            chi.adams(j as i64)
                .table()
                .iter()
                .map(|(w, m)| (w.clone(), BigInt::from_biguint(Sign::Plus, m.clone())))
                .collect()
        })
        .collect();
    let mut series = unit_series(shape, p);
    for q in 1..=p {
        let mut acc = VirtualDecomposition::default();
        for j in 1..=q {
            let negative = kind == PowerKind::Wedge && j % 2 == 0;
            let prev = VirtualDecomposition::from_decomposition(&series[q - j]);
            for (lambda, m) in prev.iter() {
                let coeff = if negative { -m.clone() } else { m.clone() };
                acc.add_product(shape, lambda, &coeff, &adams[j - 1]);
            }
        }
        series[q] = acc.into_decomposition(shape, q as u64)?;
    }
    Ok(series)
}

/// Count `p`-element sub-multisets of the weight list by their sum, then peel.
fn oracle_power(d: &Decomposition, p: usize, kind: PowerKind) -> Result<Decomposition> {
    let shape = d.shape();
    let weights = d.character()?.weight_list();
    let zero = vec![0i64; shape.len()];
    let mut layers: Vec<HashMap<Vec<i64>, BigUint>> = vec![HashMap::new(); p + 1];
    layers[0].insert(zero, BigUint::one());
    for w in &weights {
        match kind {
            // each basis vector used at most once
            PowerKind::Wedge => {
                for j in (1..=p).rev() {
                    extend_layer(&mut layers, j, w);
                }
            }
            // each basis vector used any number of times
            PowerKind::Sym => {
                for j in 1..=p {
                    extend_layer(&mut layers, j, w);
                }
            }
        }
    }
    let mut ch = Character::new(shape);
    for (w, m) in layers.swap_remove(p) {
        ch.add(w, m);
    }
    decompose_character(&ch)
}

fn extend_layer(layers: &mut [HashMap<Vec<i64>, BigUint>], j: usize, w: &[i64]) {
    let (lower, upper) = layers.split_at_mut(j);
    let src = &lower[j - 1];
    let dst = &mut upper[0];
    for (s, c) in src {
        let key: Vec<i64> = s.iter().zip(w).map(|(a, b)| a + b).collect();
        *dst.entry(key).or_default() += c;
    }
}
