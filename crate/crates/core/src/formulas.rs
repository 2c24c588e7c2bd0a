//! Closed-form e-expansions for the order families that admit them.
//!
//! Every coefficient is assembled from q-integers and exact q-factorial
//! ratios; a division that leaves a remainder aborts immediately, which
//! catches transcription errors in the formulas. The `4.2` / `4.3` / `4.4`
//! identifiers match the `--which` selector of the CLI.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Error;
use crate::orders::{ClassTag, NUIOrder};
use crate::poly::{q_factorial, q_int, q_ratio_factorial};
use crate::symfun::EExpansion;
use crate::tableaux::Partition;
use crate::{Center, TPoly};

/// Parameters `(n, r, s)` of a patterned order family.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct ClassParams {
    pub n: usize,
    pub r: usize,
    pub s: usize,
}

impl ClassParams {
    pub fn new(n: usize, r: usize, s: usize) -> Self {
        ClassParams { n, r, s }
    }
}

/// Coefficient of `e_n`: `[n]_t * prod_(i=2..n) [b_i]_t` over the incoming
/// degree sequence of the incomparability graph. Vanishes exactly on
/// disconnected orders (some `b_i = 0`).
pub fn coeff_en_product(order: &NUIOrder) -> TPoly {
    let graph = order.inc_graph();
    let mut acc: TPoly = q_int(order.n());
    for b in graph.b_sequence() {
        acc = &acc * &q_int(b);
    }
    acc
}

/// Center of symmetry of the whole expansion: `|E|/2`.
pub fn center_of_symmetry(order: &NUIOrder) -> Center {
    Center::new(order.inc_graph().edge_count() as i64, 2)
}

/// m-sequence of the `4.2` pattern: `s` copies of `r`, then `n`.
pub fn m_sequence_4_2(n: usize, r: usize, s: usize) -> Vec<usize> {
    let mut m = vec![r; s];
    m.extend(vec![n; n - 1 - s]);
    m
}

/// m-sequence of the `4.4` pattern: `r`, then `s - 1` copies of `n - 1`,
/// then `n`.
pub fn m_sequence_4_4(n: usize, r: usize, s: usize) -> Vec<usize> {
    let mut m = vec![r];
    m.extend(vec![n - 1; s - 1]);
    m.extend(vec![n; n - 1 - s]);
    m
}

/// Two-row expansion of the pattern `(r^s, n^(n-1-s))` for
/// `1 <= s <= r - 1`, `r <= n - 1`:
///
/// `C_(n-l,l) = t^((r-s)l) [n-r]! [s]! [r-l-1]! [n-s-l-1]! [n-2l]
///              / ([n-r-l]! [s-l]! [r-s-1]!)`
///
/// for `l = 0 ..= min(n-r, s)`. The boundary `s = r` is rejected: it makes
/// the factorial `[r-s-1]!` meaningless and the graph disconnected.
pub fn formula_4_2(params: ClassParams) -> Result<EExpansion, Error> {
    let ClassParams { n, r, s } = params;
    if s < 1 || s + 1 > r || r + 1 > n {
        return Err(Error::InvalidParams(format!(
            "need 1 <= s <= r-1 and r <= n-1, got n={n} r={r} s={s}"
        )));
    }
    let mut map = BTreeMap::new();
    for l in 0..=(n - r).min(s) {
        let ratio = q_ratio_factorial(
            &[n - r, s, r - l - 1, n - s - l - 1],
            &[n - r - l, s - l, r - s - 1],
        )?;
        let coeff = (&ratio * &q_int(n - 2 * l)).shift((r - s) * l);
        map.insert(Partition::two_row(n - l, l), coeff);
    }
    Ok(EExpansion::from_map(n, map))
}

/// One-line case `(r, n, ..., n)` for `2 <= r <= n - 1`:
/// `[n-2]! ([n][r-1] e_n + t^(r-1) [n-r] e_(n-1,1))`.
pub fn formula_4_3(n: usize, r: usize) -> Result<EExpansion, Error> {
    if r < 2 || r + 1 > n {
        return Err(Error::InvalidParams(format!(
            "need 2 <= r <= n-1, got n={n} r={r}"
        )));
    }
    let head = q_factorial(n - 2);
    let mut map = BTreeMap::new();
    map.insert(
        Partition::two_row(n, 0),
        &head * &(&q_int(n) * &q_int(r - 1)),
    );
    map.insert(
        Partition::two_row(n - 1, 1),
        (&head * &q_int(n - r)).shift(r - 1),
    );
    Ok(EExpansion::from_map(n, map))
}

/// Three-coefficient expansion of the pattern `(r, (n-1)^(s-1), n^(n-1-s))`
/// for `2 <= s <= r <= n - 2`:
///
/// `X = [n-4]! (c_n e_n + c_(n-1,1) e_(n-1,1) + c_(n-2,2) e_(n-2,2))` with
///
/// - `c_n = [n][n-3][r-1][n-s-1]`
/// - `c_(n-1,1) = [n-2] (t^(n-s-1)[n-3] + t^(n-s)[r-2][s-1]
///                       + t^(r-1)[n-r-1][n-s-2])`
/// - `c_(n-2,2) = t^(n+r-s-3) [2][n-r-1][s-1]`
///
/// The middle coefficient is built from the integer-coefficient three-term
/// form; its equality with the reflection-symmetrized half-sum form is
/// asserted internally.
pub fn formula_4_4(params: ClassParams) -> Result<EExpansion, Error> {
    let ClassParams { n, r, s } = params;
    if s < 2 || s > r || r + 2 > n {
        return Err(Error::InvalidParams(format!(
            "need 2 <= s <= r <= n-2, got n={n} r={r} s={s}"
        )));
    }
    let head = q_factorial::<num_bigint::BigInt>(n - 4);

    let c_full = &(&q_int(n) * &q_int(n - 3)) * &(&q_int(r - 1) * &q_int(n - s - 1));

    let middle = &(&q_int(n - 3).shift(n - s - 1) + &(&q_int(r - 2) * &q_int(s - 1)).shift(n - s))
        + &(&q_int(n - r - 1) * &q_int(n - s - 2)).shift(r - 1);
    // Reflection symmetry (r, s) <-> (n-s, n-r) makes the doubled middle
    // term equal its symmetrized companion form.
    let symmetrized = &(&(&q_int(n - 3).shift(r - 1) + &q_int(n - 3).shift(n - s - 1))
        + &(&(&q_int(2) * &q_int(r - 2)) * &q_int(s - 1)).shift(n - s - 1))
        + &(&(&q_int(2) * &q_int(n - r - 1)) * &q_int(n - s - 2)).shift(r - 1);
    assert_eq!(
        &middle + &middle,
        symmetrized,
        "three-term middle coefficient lost its reflection symmetry (n={n} r={r} s={s})"
    );
    let c_middle = &q_int(n - 2) * &middle;

    let c_square = (&(&q_int(2) * &q_int(n - r - 1)) * &q_int(s - 1)).shift(n + r - s - 3);

    let mut map = BTreeMap::new();
    map.insert(Partition::two_row(n, 0), &head * &c_full);
    map.insert(Partition::two_row(n - 1, 1), &head * &c_middle);
    map.insert(Partition::two_row(n - 2, 2), &head * &c_square);
    Ok(EExpansion::from_map(n, map))
}

/// Identifier of a closed formula, matching the CLI `--which` selector.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum FormulaId {
    F42,
    F43,
    F44,
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FormulaId::F42 => "4.2",
            FormulaId::F43 => "4.3",
            FormulaId::F44 => "4.4",
        })
    }
}

/// Picks the most specific closed formula whose pattern matches and whose
/// parameters are in range; `None` when only the tableau pipeline applies.
pub fn closed_form(order: &NUIOrder) -> Option<(FormulaId, EExpansion)> {
    let n = order.n();
    let tags = order.classify();
    for tag in &tags {
        if let ClassTag::Formula44 { r, s } = *tag {
            if let Ok(e) = formula_4_4(ClassParams::new(n, r, s)) {
                return Some((FormulaId::F44, e));
            }
        }
    }
    for tag in &tags {
        if let ClassTag::Formula43 { r } = *tag {
            if let Ok(e) = formula_4_3(n, r) {
                return Some((FormulaId::F43, e));
            }
        }
    }
    for tag in &tags {
        if let ClassTag::KChain { r } = *tag {
            if let Ok(e) = formula_4_2(ClassParams::new(n, r, r - 1)) {
                return Some((FormulaId::F42, e));
            }
        }
    }
    for tag in &tags {
        if let ClassTag::Formula42 { r, s } = *tag {
            if let Ok(e) = formula_4_2(ClassParams::new(n, r, s)) {
                return Some((FormulaId::F42, e));
            }
        }
    }
    None
}
