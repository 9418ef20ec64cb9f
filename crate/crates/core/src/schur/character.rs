//! Weight multisets of Levi-factor representations.

use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::weight::{is_nonincreasing, Shape};

/// Weight multiset of a representation: weight vector ↦ multiplicity.
/// Keys have length `shape.len()`; zero multiplicities are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Character {
    shape: Shape,
    table: BTreeMap<Vec<i64>, BigUint>,
}

impl Character {
    pub fn new(shape: Shape) -> Self {
        Character {
            shape,
            table: BTreeMap::new(),
        }
    }

    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn table(&self) -> &BTreeMap<Vec<i64>, BigUint> {
        &self.table
    }

    pub fn get(&self, w: &[i64]) -> BigUint {
        self.table.get(w).cloned().unwrap_or_default()
    }

    pub fn add(&mut self, w: Vec<i64>, mult: BigUint) {
        debug_assert_eq!(w.len(), self.shape.len());
        if mult.is_zero() {
            return;
        }
        *self.table.entry(w).or_default() += mult;
    }

    /// Subtract `mult` at `w`; fails if the multiplicity would go negative.
    pub(crate) fn sub(&mut self, w: &[i64], mult: &BigUint) -> Result<()> {
        let entry = self
            .table
            .get_mut(w)
            .ok_or_else(|| Error::NotACharacter(format!("weight {w:?} missing while subtracting")))?;
        if *entry < *mult {
            return Err(Error::NotACharacter(format!(
                "multiplicity of {w:?} would become negative"
            )));
        }
        *entry -= mult;
        if entry.is_zero() {
            self.table.remove(w);
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Σ multiplicities, the dimension of the representation.
    pub fn mass(&self) -> BigUint {
        self.table.values().sum()
    }

    /// Pointwise product of weight multisets (tensor product).
    pub fn product(&self, other: &Character) -> Result<Character> {
        if self.shape != other.shape {
            return Err(Error::Structural(format!(
                "character shapes {:?} and {:?} differ",
                self.shape, other.shape
            )));
        }
        let mut out = Character::new(self.shape);
        for (a, ma) in &self.table {
            for (b, mb) in &other.table {
                let w = a.iter().zip(b).map(|(x, y)| x + y).collect();
                out.add(w, ma * mb);
            }
        }
        Ok(out)
    }

    /// `ψ^j`: every weight scaled by `j`.
    pub fn adams(&self, j: i64) -> Character {
        let mut out = Character::new(self.shape);
        for (w, m) in &self.table {
            out.add(w.iter().map(|x| x * j).collect(), m.clone());
        }
        out
    }

    /// Expand into a flat list with one entry per weight occurrence.
    pub fn weight_list(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        for (w, m) in &self.table {
            let mut c = m.clone();
            while !c.is_zero() {
                out.push(w.clone());
                c -= 1u32;
            }
        }
        out
    }

    /// The multiset is stable under permutations within each block.
    pub fn is_weyl_symmetric(&self) -> bool {
        let (k, m) = (self.shape.first, self.shape.second);
        self.table.iter().all(|(w, mult)| {
            let transpositions = (0..k.saturating_sub(1))
                .map(|i| (i, i + 1))
                .chain((k..k + m.saturating_sub(1)).map(|i| (i, i + 1)));
            transpositions.into_iter().all(|(i, j)| {
                let mut v = w.clone();
                v.swap(i, j);
                self.get(&v) == *mult
            })
        })
    }
}

/// Gelfand–Tsetlin enumeration of the `GL(k)` irreducible `lambda`.
///
/// Entries may be negative: the row is shifted to be nonnegative, enumerated,
/// and every weight shifted back.
pub fn gt_weights(lambda: &[i64], k: usize) -> Result<Character> {
    if lambda.len() != k {
        return Err(Error::Structural(format!(
            "highest weight {lambda:?} does not have length {k}"
        )));
    }
    if !is_nonincreasing(lambda) {
        return Err(Error::Domain(format!("{lambda:?} is not dominant")));
    }
    let mut ch = Character::new(Shape::gl(k));
    for (w, m) in block_table(lambda) {
        ch.add(w, m);
    }
    Ok(ch)
}

/// Character of the irreducible `(λ | μ)` of `GL(first) x GL(second)`.
pub fn irreducible_character(shape: Shape, weight: &[i64]) -> Result<Character> {
    if weight.len() != shape.len() {
        return Err(Error::Structural(format!(
            "weight {weight:?} does not fit shape {shape:?}"
        )));
    }
    if !shape.is_dominant(weight) {
        return Err(Error::Domain(format!("{weight:?} is not dominant per block")));
    }
    let (a, b) = shape.split(weight);
    let ta = block_table(a);
    let tb = block_table(b);
    let mut ch = Character::new(shape);
    for (u, mu) in &ta {
        for (v, mv) in &tb {
            let mut w = u.clone();
            w.extend_from_slice(v);
            ch.add(w, mu * mv);
        }
    }
    Ok(ch)
}

fn block_table(lambda: &[i64]) -> Vec<(Vec<i64>, BigUint)> {
    if lambda.is_empty() {
        return vec![(Vec::new(), BigUint::one())];
    }
    let shift = (-lambda.iter().copied().min().unwrap_or(0)).max(0);
    let row: Vec<i64> = lambda.iter().map(|x| x + shift).collect();
    let mut memo = HashMap::new();
    let table = gt_rec(&row, &mut memo);
    table
        .iter()
        .map(|(w, m)| (w.iter().map(|x| x - shift).collect(), m.clone()))
        .collect()
}

type Table = Rc<BTreeMap<Vec<i64>, BigUint>>;

/// Weights of the patterns below `row`; coordinate `i` is the difference
/// of row sums at lengths `i + 1` and `i`.
fn gt_rec(row: &[i64], memo: &mut HashMap<Vec<i64>, Table>) -> Table {
    if let Some(t) = memo.get(row) {
        return t.clone();
    }
    let mut out = BTreeMap::new();
    if row.len() == 1 {
        out.insert(vec![row[0]], BigUint::one());
    } else {
        let total: i64 = row.iter().sum();
        let mut sub = row[1..].to_vec();
        loop {
            let below = gt_rec(&sub, memo);
            let last = total - sub.iter().sum::<i64>();
            for (w, m) in below.iter() {
                let mut key = w.clone();
                key.push(last);
                *out.entry(key).or_insert_with(BigUint::zero) += m;
            }
            // odometer over row[i+1] <= sub[i] <= row[i]
            let mut i = 0;
            loop {
                if i == sub.len() {
                    let t = Rc::new(out);
                    memo.insert(row.to_vec(), t.clone());
                    return t;
                }
                if sub[i] < row[i] {
                    sub[i] += 1;
                    break;
                }
                sub[i] = row[i + 1];
                i += 1;
            }
        }
    }
    let t = Rc::new(out);
    memo.insert(row.to_vec(), t.clone());
    t
}
