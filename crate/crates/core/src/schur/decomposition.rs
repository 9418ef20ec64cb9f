//! Multisets of dominant highest weights.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::character::{irreducible_character, Character};
use crate::error::{Error, Result};
use crate::weight::{BlockWeight, GrassContext, Shape};
use crate::weyl::gl_dim;

/// A fully reducible representation: dominant weight ↦ multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DecompositionRepr", into = "DecompositionRepr")]
pub struct Decomposition {
    shape: Shape,
    terms: BTreeMap<Vec<i64>, BigUint>,
}

impl Decomposition {
    pub fn new(shape: Shape) -> Self {
        Decomposition {
            shape,
            terms: BTreeMap::new(),
        }
    }

    /// The trivial one-dimensional representation.
    pub fn trivial(shape: Shape) -> Self {
        let mut d = Decomposition::new(shape);
        d.terms.insert(vec![0; shape.len()], BigUint::from(1u32));
        d
    }

    pub fn irreducible(shape: Shape, weight: Vec<i64>) -> Result<Self> {
        let mut d = Decomposition::new(shape);
        d.add(weight, BigUint::from(1u32))?;
        Ok(d)
    }

    pub fn from_block_weight(w: &BlockWeight) -> Result<Self> {
        Decomposition::irreducible(w.ctx().shape(), w.entries())
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn terms(&self) -> &BTreeMap<Vec<i64>, BigUint> {
        &self.terms
    }

    pub fn add(&mut self, weight: Vec<i64>, mult: BigUint) -> Result<()> {
        if weight.len() != self.shape.len() {
            return Err(Error::Structural(format!(
                "weight {weight:?} does not fit shape {:?}",
                self.shape
            )));
        }
        if !self.shape.is_dominant(&weight) {
            return Err(Error::Domain(format!("{weight:?} is not dominant per block")));
        }
        if !mult.is_zero() {
            *self.terms.entry(weight).or_default() += mult;
        }
        Ok(())
    }

    /// Direct sum.
    pub fn merge(&mut self, other: &Decomposition) -> Result<()> {
        self.check_shape(other)?;
        for (w, m) in &other.terms {
            *self.terms.entry(w.clone()).or_default() += m;
        }
        Ok(())
    }

    pub(crate) fn check_shape(&self, other: &Decomposition) -> Result<()> {
        if self.shape != other.shape {
            return Err(Error::Structural(format!(
                "block sizes {:?} and {:?} differ",
                self.shape, other.shape
            )));
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of irreducible summands counted with multiplicity.
    pub fn summand_count(&self) -> BigUint {
        self.terms.values().sum()
    }

    /// Σ mult · dim(key).
    pub fn dim(&self) -> BigUint {
        self.terms.iter().map(|(w, m)| m * weight_dim(self.shape, w)).sum()
    }

    pub fn dual(&self) -> Decomposition {
        self.map_weights(|w| {
            let (a, b) = self.shape.split(w);
            a.iter().rev().chain(b.iter().rev()).map(|x| -x).collect()
        })
    }

    /// Add `r` to every first-block entry.
    pub fn twist(&self, r: i64) -> Decomposition {
        let k = self.shape.first;
        self.map_weights(|w| {
            w.iter()
                .enumerate()
                .map(|(i, x)| if i < k { x + r } else { *x })
                .collect()
        })
    }

    /// Apply a dominance-preserving map to every key.
    fn map_weights(&self, f: impl Fn(&[i64]) -> Vec<i64>) -> Decomposition {
        let mut out = Decomposition::new(self.shape);
        for (w, m) in &self.terms {
            *out.terms.entry(f(w)).or_default() += m;
        }
        out
    }

    /// Full weight multiset.
    pub fn character(&self) -> Result<Character> {
        let mut ch = Character::new(self.shape);
        for (w, m) in &self.terms {
            for (v, mv) in irreducible_character(self.shape, w)?.table() {
                ch.add(v.clone(), m * mv);
            }
        }
        Ok(ch)
    }

    pub fn block_weights(&self, ctx: GrassContext) -> Result<Vec<(BlockWeight, BigUint)>> {
        if ctx.shape() != self.shape {
            return Err(Error::Structural(format!(
                "decomposition of shape {:?} read on Gr({},{})",
                self.shape,
                ctx.k(),
                ctx.n()
            )));
        }
        self.terms
            .iter()
            .map(|(w, m)| Ok((BlockWeight::from_entries(ctx, w)?, m.clone())))
            .collect()
    }

    /// Stable text form used in memo keys.
    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

pub(crate) fn weight_dim(shape: Shape, w: &[i64]) -> BigUint {
    let (a, b) = shape.split(w);
    // keys are dominant by construction
    gl_dim(a).expect("dominant key") * gl_dim(b).expect("dominant key")
}

impl fmt::Display for Decomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (w, m)) in self.terms.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            let (a, b) = self.shape.split(w);
            write!(f, "({}", join(a))?;
            if self.shape.second > 0 {
                write!(f, " | {}", join(b))?;
            }
            write!(f, "):{m}")?;
        }
        f.write_str("}")
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

#[derive(Serialize, Deserialize)]
struct DecompositionRepr {
    shape: (usize, usize),
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    weight: Vec<i64>,
    mult: String,
}

impl From<Decomposition> for DecompositionRepr {
    fn from(d: Decomposition) -> Self {
        DecompositionRepr {
            shape: (d.shape.first, d.shape.second),
            terms: d
                .terms
                .into_iter()
                .map(|(weight, m)| TermRepr {
                    weight,
                    mult: m.to_string(),
                })
                .collect(),
        }
    }
}

impl TryFrom<DecompositionRepr> for Decomposition {
    type Error = Error;

    fn try_from(r: DecompositionRepr) -> Result<Self> {
        let mut d = Decomposition::new(Shape::new(r.shape.0, r.shape.1));
        for t in r.terms {
            let m: BigUint = t
                .mult
                .parse()
                .map_err(|e| Error::Structural(format!("bad multiplicity `{}`: {e}", t.mult)))?;
            d.add(t.weight, m)?;
        }
        Ok(d)
    }
}

/// Peel a character into irreducibles: repeatedly take the lexicographically
/// largest weight, record it, and subtract that irreducible's character.
pub fn decompose_character(c: &Character) -> Result<Decomposition> {
    let shape = c.shape();
    let mut rest = c.clone();
    let mut out = Decomposition::new(shape);
    while let Some((top, mult)) = rest.table().iter().next_back() {
        let (top, mult) = (top.clone(), mult.clone());
        if !shape.is_dominant(&top) {
            return Err(Error::NotACharacter(format!(
                "largest remaining weight {top:?} is not dominant"
            )));
        }
        for (w, m) in irreducible_character(shape, &top)?.table() {
            rest.sub(w, &(m * &mult))?;
        }
        out.add(top, mult)?;
    }
    Ok(out)
}

/// Reflect `v + ρ` into the dominant chamber of each block.
///
/// Returns `None` when `v + ρ` has a repeated entry within a block (the
/// Weyl-character of `v` vanishes), else the sign of the sorting permutation
/// and the dominant weight `sort(v + ρ) − ρ`.
pub fn straighten(shape: Shape, v: &[i64]) -> Option<(bool, Vec<i64>)> {
    let mut out = Vec::with_capacity(v.len());
    let mut negative = false;
    let (a, b) = shape.split(v);
    for block in [a, b] {
        let len = block.len();
        let mut shifted: Vec<i64> = block
            .iter()
            .enumerate()
            .map(|(i, x)| x + (len - 1 - i) as i64)
            .collect();
        // insertion sort, descending, tracking parity
        for i in 1..len {
            let mut j = i;
            while j > 0 && shifted[j - 1] < shifted[j] {
                shifted.swap(j - 1, j);
                negative = !negative;
                j -= 1;
            }
            if j > 0 && shifted[j - 1] == shifted[j] {
                return None;
            }
        }
        out.extend(shifted.iter().enumerate().map(|(i, x)| x - (len - 1 - i) as i64));
    }
    Some((negative, out))
}

/// A signed combination of irreducibles, used by the Newton recursions.
#[derive(Debug, Clone, Default)]
pub(crate) struct VirtualDecomposition {
    terms: BTreeMap<Vec<i64>, BigInt>,
}

impl VirtualDecomposition {
    pub(crate) fn add(&mut self, w: Vec<i64>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(w).or_default();
        *e += c;
    }

    /// `self += sign · V_λ ⊗ X` for a Weyl-symmetric virtual character `X`
    /// given by its weight table, via Brauer–Klimyk straightening.
    pub(crate) fn add_product(&mut self, shape: Shape, lambda: &[i64], coeff: &BigInt, x: &[(Vec<i64>, BigInt)]) {
        for (w, m) in x {
            let v: Vec<i64> = lambda.iter().zip(w).map(|(a, b)| a + b).collect();
            if let Some((neg, dom)) = straighten(shape, &v) {
                let c = coeff * m;
                self.add(dom, if neg { -c } else { c });
            }
        }
    }

    /// Divide every coefficient by `p` and convert to a genuine decomposition.
    pub(crate) fn into_decomposition(self, shape: Shape, p: u64) -> Result<Decomposition> {
        let mut out = Decomposition::new(shape);
        let p = BigInt::from(p);
        for (w, c) in self.terms {
            if c.is_zero() {
                continue;
            }
            if c.is_negative() || !(&c % &p).is_zero() {
                return Err(Error::NotACharacter(format!(
                    "Newton recursion produced coefficient {c}/{p} at {w:?}"
                )));
            }
            let (_, mag) = (c / &p).into_parts();
            out.add(w, mag)?;
        }
        Ok(out)
    }

    pub(crate) fn from_decomposition(d: &Decomposition) -> Self {
        VirtualDecomposition {
            terms: d
                .terms
                .iter()
                .map(|(w, m)| (w.clone(), BigInt::from_biguint(Sign::Plus, m.clone())))
                .collect(),
        }
    }

    pub(crate) fn iter(&self) -> impl Iterator<Item = (&Vec<i64>, &BigInt)> {
        self.terms.iter()
    }
}
