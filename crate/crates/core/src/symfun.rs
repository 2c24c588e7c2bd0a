//! Conversion from the Schur basis to the elementary basis.
//!
//! The Schur function of shape `lambda` is the determinant
//! `det[e_(lambda'_i - i + j)]` of a `lambda_1 x lambda_1` matrix
//! (Jacobi-Trudi). [`jacobi_trudi`] expands that determinant over
//! permutations into signed elementary words; [`s_to_e`] pushes a whole
//! Schur expansion through it. The e-basis is multiplicative, so expansions
//! of disconnected orders are products of the expansions of their
//! components.

use std::collections::BTreeMap;

use itertools::Itertools;

use crate::orders::NUIOrder;
use crate::tableaux::{schur_expansion, Partition, SExpansion};
use crate::TPoly;

/// A product of elementary generators with a sign, `±e_(k1) e_(k2) ...`,
/// with the subscripts in partition form (zeros already dropped).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SignedEWord {
    pub parts: Partition,
    pub sign: i8,
}

/// Leibniz expansion of the Jacobi-Trudi determinant of `shape`: one signed
/// word per permutation whose product does not vanish (no negative
/// subscript). Costs `lambda_1!` terms; the shapes arising from unit
/// interval orders keep `lambda_1` at the bounce number, so this stays tiny.
pub fn jacobi_trudi(shape: &Partition) -> Vec<SignedEWord> {
    let conjugate = shape.conjugate();
    let k = conjugate.len();
    if k == 0 {
        return vec![SignedEWord {
            parts: Partition::new(Vec::new()),
            sign: 1,
        }];
    }
    let mut words = Vec::new();
    'perm: for perm in (0..k).permutations(k) {
        let mut subscripts = Vec::with_capacity(k);
        #[allow(clippy::needless_range_loop)]
        for i in 0..k {
            let sub = conjugate.parts()[i] as i64 - i as i64 + perm[i] as i64;
            if sub < 0 {
                continue 'perm;
            }
            if sub > 0 {
                subscripts.push(sub as usize);
            }
        }
        subscripts.sort_unstable_by(|a, b| b.cmp(a));
        words.push(SignedEWord {
            parts: Partition::new(subscripts),
            sign: if parity(&perm) { -1 } else { 1 },
        });
    }
    words
}

// True for odd permutations.
fn parity(perm: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 1
}

/// Elementary-basis expansion `X_G = sum C_lambda(t) e_lambda`: a map from
/// partitions of `n` to nonzero coefficient polynomials. Equality is exact
/// map equality; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct EExpansion {
    n: usize,
    map: BTreeMap<Partition, TPoly>,
}

impl EExpansion {
    pub fn from_map(n: usize, mut map: BTreeMap<Partition, TPoly>) -> Self {
        map.retain(|_, poly| !poly.is_zero());
        EExpansion { n, map }
    }

    /// The empty expansion of degree zero, identity for [`product`](Self::product).
    pub fn scalar_one() -> Self {
        let mut map = BTreeMap::new();
        map.insert(Partition::new(Vec::new()), TPoly::one());
        EExpansion { n: 0, map }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, shape: &Partition) -> Option<&TPoly> {
        self.map.get(shape)
    }

    /// Coefficient of `e_lambda`, zero when absent.
    pub fn coeff(&self, shape: &Partition) -> TPoly {
        self.map.get(shape).cloned().unwrap_or_else(TPoly::zero)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Partition, &TPoly)> {
        self.map.iter()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Largest `t`-degree over all coefficients; `None` for the empty map.
    pub fn max_degree(&self) -> Option<usize> {
        self.map.values().filter_map(|p| p.degree()).max()
    }

    /// Product in the e-basis: `e_lambda e_mu = e_(sorted union)`.
    pub fn product(&self, other: &EExpansion) -> EExpansion {
        let mut map: BTreeMap<Partition, TPoly> = BTreeMap::new();
        for (left, p) in &self.map {
            for (right, q) in &other.map {
                let mut parts = left.parts().to_vec();
                parts.extend_from_slice(right.parts());
                parts.sort_unstable_by(|a, b| b.cmp(a));
                let key = Partition::new(parts);
                let term = p * q;
                let entry = map.entry(key).or_insert_with(TPoly::zero);
                *entry = &*entry + &term;
            }
        }
        EExpansion::from_map(self.n + other.n, map)
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (shape, poly) in &self.map {
            obj.insert(shape.to_string(), serde_json::to_value(poly).unwrap());
        }
        serde_json::Value::Object(obj)
    }
}

/// Pushes a Schur expansion through Jacobi-Trudi:
/// `C_mu = sum_lambda B_lambda * (signed multiplicity of e_mu)`.
pub fn s_to_e(schur: &SExpansion) -> EExpansion {
    let mut map: BTreeMap<Partition, TPoly> = BTreeMap::new();
    for (shape, coeff) in schur.iter() {
        for word in jacobi_trudi(shape) {
            let entry = map.entry(word.parts).or_insert_with(TPoly::zero);
            *entry = if word.sign > 0 {
                &*entry + coeff
            } else {
                &*entry - coeff
            };
        }
    }
    EExpansion::from_map(schur.n(), map)
}

/// Elementary-basis expansion of `X_G` for the order: the tableau pipeline
/// pushed through Jacobi-Trudi, component by component (the generating
/// function of a disconnected graph is the product over its components).
pub fn e_expansion(order: &NUIOrder) -> EExpansion {
    let mut acc = EExpansion::scalar_one();
    for component in order.components() {
        acc = acc.product(&s_to_e(&schur_expansion(&component)));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    use crate::poly::{q_factorial, q_int};

    fn order(m: &[usize]) -> NUIOrder {
        NUIOrder::new(m.to_vec()).unwrap()
    }

    fn shape(parts: &[usize]) -> Partition {
        Partition::new(parts.to_vec())
    }

    fn signed_set(words: Vec<SignedEWord>) -> BTreeMap<Partition, i64> {
        let mut map = BTreeMap::new();
        for w in words {
            *map.entry(w.parts).or_insert(0) += w.sign as i64;
        }
        map.retain(|_, c| *c != 0);
        map
    }

    #[test]
    fn jacobi_trudi_columns_and_hooks() {
        for n in 2..=8 {
            let column = signed_set(jacobi_trudi(&shape(&vec![1; n])));
            assert_eq!(column, BTreeMap::from([(shape(&[n]), 1)]));

            let mut parts = vec![2];
            parts.extend(vec![1; n - 2]);
            let domino = signed_set(jacobi_trudi(&shape(&parts)));
            assert_eq!(
                domino,
                BTreeMap::from([(shape(&[n - 1, 1]), 1), (shape(&[n]), -1)])
            );
        }
    }

    #[test]
    fn jacobi_trudi_two_columns() {
        for n in 4..=8 {
            for l in 2..=n / 2 {
                let two_col = Partition::two_column(l, n).unwrap();
                let words = signed_set(jacobi_trudi(&two_col));
                assert_eq!(
                    words,
                    BTreeMap::from([
                        (Partition::two_row(n - l, l), 1),
                        (Partition::two_row(n - l + 1, l - 1), -1),
                    ])
                );
            }
        }
    }

    #[test]
    fn jacobi_trudi_three_one_hook() {
        let words = signed_set(jacobi_trudi(&shape(&[3, 1, 1, 1])));
        assert_eq!(
            words,
            BTreeMap::from([
                (shape(&[4, 1, 1]), 1),
                (shape(&[4, 2]), -1),
                (shape(&[5, 1]), -1),
                (shape(&[6]), 1),
            ])
        );
    }

    // Independent dimension check: evaluating the signed e-words at
    // x_1 = ... = x_N = 1 must reproduce the hook content formula for
    // s_lambda(1^N).
    #[test]
    fn jacobi_trudi_dimension_check() {
        fn binomial(n: usize, k: usize) -> BigInt {
            if k > n {
                return BigInt::from(0);
            }
            let mut acc = BigInt::from(1);
            for i in 0..k {
                acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
            }
            acc
        }
        fn hook_content(lambda: &Partition, vars: usize) -> BigInt {
            let conj = lambda.conjugate();
            let mut num = BigInt::from(1);
            let mut den = BigInt::from(1);
            for (i, &len) in lambda.parts().iter().enumerate() {
                for j in 0..len {
                    num *= BigInt::from(vars as i64 + j as i64 - i as i64);
                    let hook = (len - j) + (conj.parts()[j] - i) - 1;
                    den *= BigInt::from(hook);
                }
            }
            num / den
        }
        for n in 1..=6 {
            for lambda in Partition::partitions_of(n) {
                let mut total = BigInt::from(0);
                for word in jacobi_trudi(&lambda) {
                    let mut prod = BigInt::from(word.sign);
                    for &part in word.parts.parts() {
                        prod *= binomial(n, part);
                    }
                    total += prod;
                }
                assert_eq!(total, hook_content(&lambda, n), "shape {lambda}");
            }
        }
    }

    #[test]
    fn path_expansion_golden() {
        let e = e_expansion(&order(&[2, 3, 4]));
        assert_eq!(e.len(), 3);
        assert_eq!(e.coeff(&shape(&[4])), q_int(4));
        assert_eq!(e.coeff(&shape(&[3, 1])), TPoly::from_ints(&[0, 1, 1]));
        assert_eq!(e.coeff(&shape(&[2, 2])), TPoly::from_ints(&[0, 1, 1]));
    }

    #[test]
    fn kchain_expansion_golden() {
        let e = e_expansion(&order(&[3, 3, 4]));
        assert_eq!(e.len(), 2);
        assert_eq!(e.coeff(&shape(&[4])), &q_int::<BigInt>(2) * &q_int(4));
        let t22 = (&q_int::<BigInt>(2) * &q_int(2)).shift(1);
        assert_eq!(e.coeff(&shape(&[3, 1])), t22);
    }

    #[test]
    fn single_column_passthrough() {
        let s = schur_expansion(&order(&[4, 4, 4]));
        let e = s_to_e(&s);
        assert_eq!(e.len(), 1);
        assert_eq!(e.coeff(&shape(&[4])), q_factorial(4));
    }

    #[test]
    fn single_element_and_disconnected_orders() {
        let single = e_expansion(&NUIOrder::new(vec![]).unwrap());
        assert_eq!(single.len(), 1);
        assert_eq!(single.coeff(&shape(&[1])), TPoly::one());

        let disconnected = e_expansion(&order(&[2, 2]));
        assert_eq!(disconnected.len(), 1);
        assert_eq!(
            disconnected.coeff(&shape(&[2, 1])),
            TPoly::from_ints(&[1, 1])
        );
    }

    #[test]
    fn product_merges_sorted_parts() {
        let a = EExpansion::from_map(
            3,
            BTreeMap::from([(shape(&[2, 1]), TPoly::from_ints(&[0, 1]))]),
        );
        let b = EExpansion::from_map(
            2,
            BTreeMap::from([(shape(&[2]), TPoly::from_ints(&[1, 1]))]),
        );
        let ab = a.product(&b);
        assert_eq!(ab.n(), 5);
        assert_eq!(ab.coeff(&shape(&[2, 2, 1])), TPoly::from_ints(&[0, 1, 1]));
    }
}
