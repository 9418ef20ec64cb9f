//! Littlewood–Richardson products.

use std::collections::BTreeMap;

use num_bigint::BigUint;

use super::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::weight::is_nonincreasing;

/// `c^ν_{λμ}` for all `ν` with at most `k = λ.len()` rows.
///
/// Both inputs are dominant of equal length and may contain negative
/// entries; each factor is shifted by a power of the determinant to become a
/// partition, multiplied, and the result shifted back.
pub fn lr_block(lambda: &[i64], mu: &[i64]) -> Result<BTreeMap<Vec<i64>, u64>> {
    if lambda.len() != mu.len() {
        return Err(Error::Structural(format!(
            "LR product of {lambda:?} and {mu:?}: block sizes differ"
        )));
    }
    if !is_nonincreasing(lambda) || !is_nonincreasing(mu) {
        return Err(Error::Domain(format!("{lambda:?} or {mu:?} not dominant")));
    }
    let k = lambda.len();
    if k == 0 {
        return Ok(BTreeMap::from([(Vec::new(), 1)]));
    }
    let shift = |v: &[i64]| (-v[k - 1]).max(0);
    let (sl, sm) = (shift(lambda), shift(mu));
    let lam: Vec<i64> = lambda.iter().map(|x| x + sl).collect();
    let mu_p: Vec<i64> = mu.iter().map(|x| x + sm).collect();
    // fewer letters means fewer strips: put the smaller partition second
    let (outer, content) = if lam.iter().sum::<i64>() >= mu_p.iter().sum::<i64>() {
        (lam, mu_p)
    } else {
        (mu_p, lam)
    };
    let mut out = BTreeMap::new();
    let mut filler = Filler {
        k,
        content: content.into_iter().filter(|&x| x > 0).collect(),
        counts: Vec::new(),
        out: &mut out,
    };
    filler.counts = vec![vec![0; filler.content.len()]; k];
    filler.letter(0, outer);
    let back = sl + sm;
    Ok(out
        .into_iter()
        .map(|(nu, c)| (nu.into_iter().map(|x| x - back).collect(), c))
        .collect())
}

/// Builds LR tableaux one letter at a time: letter `i` occupies a
/// horizontal strip of `content[i]` boxes, subject to the lattice condition
/// `#(i+1) in rows ≤ r  ≤  #i in rows < r`.
struct Filler<'a> {
    k: usize,
    content: Vec<i64>,
    /// counts[row][letter]
    counts: Vec<Vec<i64>>,
    out: &'a mut BTreeMap<Vec<i64>, u64>,
}

impl Filler<'_> {
    fn letter(&mut self, i: usize, shape: Vec<i64>) {
        if i == self.content.len() {
            *self.out.entry(shape).or_insert(0) += 1;
            return;
        }
        if i >= self.k {
            return;
        }
        let above_prev = if i == 0 {
            0
        } else {
            (0..i).map(|r| self.counts[r][i - 1]).sum()
        };
        let mut next = shape.clone();
        self.row(i, i, self.content[i], &shape, &mut next, above_prev, 0);
    }

    /// Distribute the remaining boxes of letter `i` over rows `r..k`.
    /// `above_prev` / `upto_cur` are the running totals of letters `i-1` (rows
    /// strictly above `r`) and `i` (rows above `r`).
    #[allow(clippy::too_many_arguments)]
    fn row(
        &mut self,
        i: usize,
        r: usize,
        remaining: i64,
        old: &[i64],
        next: &mut Vec<i64>,
        above_prev: i64,
        upto_cur: i64,
    ) {
        if remaining == 0 {
            let shape = next.clone();
            self.letter(i + 1, shape);
            return;
        }
        if r >= self.k {
            return;
        }
        let strip_cap = if r == 0 { i64::MAX } else { old[r - 1] - old[r] };
        let lattice_cap = if i == 0 { i64::MAX } else { above_prev - upto_cur };
        let cap = remaining.min(strip_cap).min(lattice_cap);
        let prev_here = if i == 0 { 0 } else { self.counts[r][i - 1] };
        for c in (0..=cap).rev() {
            self.counts[r][i] = c;
            next[r] = old[r] + c;
            self.row(i, r + 1, remaining - c, old, next, above_prev + prev_here, upto_cur + c);
        }
        self.counts[r][i] = 0;
        next[r] = old[r];
    }
}

/// Tensor product of two decompositions of the same block shape, computed
/// blockwise by the Littlewood–Richardson rule.
pub fn lr_tensor(a: &Decomposition, b: &Decomposition) -> Result<Decomposition> {
    a.check_shape(b)?;
    let shape = a.shape();
    let mut out = Decomposition::new(shape);
    for (wa, ma) in a.terms() {
        let (a1, a2) = shape.split(wa);
        for (wb, mb) in b.terms() {
            let (b1, b2) = shape.split(wb);
            let first = lr_block(a1, b1)?;
            let second = lr_block(a2, b2)?;
            let m = ma * mb;
            for (nu1, c1) in &first {
                for (nu2, c2) in &second {
                    let mut w = nu1.clone();
                    w.extend_from_slice(nu2);
                    out.add(w, &m * BigUint::from(c1 * c2))?;
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schur::decomposition::decompose_character;
    use crate::weight::Shape;
    use proptest::prelude::*;

    fn irr(k: usize, w: &[i64]) -> Decomposition {
        Decomposition::irreducible(Shape::gl(k), w.to_vec()).unwrap()
    }

    fn oracle(a: &Decomposition, b: &Decomposition) -> Decomposition {
        let ch = a.character().unwrap().product(&b.character().unwrap()).unwrap();
        decompose_character(&ch).unwrap()
    }

    #[test]
    fn small_products() {
        let q = irr(2, &[1, 0]);
        let sq = lr_tensor(&q, &q).unwrap();
        let mut expect = irr(2, &[2, 0]);
        expect.merge(&irr(2, &[1, 1])).unwrap();
        assert_eq!(sq, expect);
        assert_eq!(lr_tensor(&irr(2, &[2, 0]), &irr(2, &[1, 1])).unwrap(), irr(2, &[3, 1]));
        assert_eq!(oracle(&irr(2, &[2, 0]), &irr(2, &[1, 1])), irr(2, &[3, 1]));
    }

    #[test]
    fn classic_coefficient() {
        // s21 * s21 on three rows: s42 + s411 + s33 + 2 s321 + s222
        let t = lr_block(&[2, 1, 0], &[2, 1, 0]).unwrap();
        assert_eq!(t.get(&vec![3, 2, 1]), Some(&2));
        assert_eq!(t.get(&vec![4, 2, 0]), Some(&1));
        assert_eq!(t.get(&vec![2, 2, 2]), Some(&1));
        assert_eq!(t.values().sum::<u64>(), 6);
    }

    #[test]
    fn negative_entries_and_mismatch() {
        // Q ⊗ Q* = adjoint ⊕ trivial
        let t = lr_tensor(&irr(3, &[1, 0, 0]), &irr(3, &[0, 0, -1])).unwrap();
        let mut expect = irr(3, &[1, 0, -1]);
        expect.merge(&irr(3, &[0, 0, 0])).unwrap();
        assert_eq!(t, expect);
        assert!(matches!(
            lr_tensor(&irr(2, &[1, 0]), &irr(3, &[1, 0, 0])),
            Err(Error::Structural(_))
        ));
    }

    fn small_weight(k: usize) -> impl Strategy<Value = Vec<i64>> {
        proptest::collection::vec(-1i64..3, k).prop_map(|mut v| {
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn agrees_with_character_oracle(
            (a, b) in (1usize..5).prop_flat_map(|k| (small_weight(k), small_weight(k)))
        ) {
            let k = a.len();
            let (da, db) = (irr(k, &a), irr(k, &b));
            prop_assert_eq!(lr_tensor(&da, &db).unwrap(), oracle(&da, &db));
        }

        #[test]
        fn commutative_associative(
            (a, b, c) in (1usize..5).prop_flat_map(|k| (small_weight(k), small_weight(k), small_weight(k)))
        ) {
            let k = a.len();
            let (da, db, dc) = (irr(k, &a), irr(k, &b), irr(k, &c));
            let ab = lr_tensor(&da, &db).unwrap();
            prop_assert_eq!(&ab, &lr_tensor(&db, &da).unwrap());
            let left = lr_tensor(&ab, &dc).unwrap();
            let right = lr_tensor(&da, &lr_tensor(&db, &dc).unwrap()).unwrap();
            prop_assert_eq!(&left, &right);
            prop_assert_eq!(left.dim(), da.dim() * db.dim() * dc.dim());
        }
    }
}
