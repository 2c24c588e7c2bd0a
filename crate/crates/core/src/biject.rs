//! The insertion-witness model behind the two-column e-expansion.
//!
//! For orders in the first e-positive class (`m_1 = r < n`, `m_{r+1} = n`),
//! the tableaux of shape `2^l 1^(n-2l)` split by whether some row `s >= l+2`
//! dominates every first-column entry strictly between the paired rows and
//! itself: such a witness row, when it exists, is unique. Witnessed tableaux
//! are in an inversion-preserving bijection with the tableaux of shape
//! `2^(l+1) 1^(n-2l-2)` ([`split_pair`] / [`merge_pair`]); what remains, the
//! unwitnessed tableaux, carries the coefficient of `e_(n-l, l)`
//! ([`unwitnessed_coeff`]). The coefficient differences telescope, which is
//! exactly e-positivity for this class.

use std::collections::BTreeMap;

use crate::error::Error;
use crate::orders::{ClassTag, NUIOrder};
use crate::symfun::EExpansion;
use crate::tableaux::{ptableaux, shape_inv_gf, PTableau, Partition};
use crate::TPoly;

/// Result of the witness scan on a tableau of shape `2^l 1^(n-2l)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WitnessCertificate {
    /// 1-based row index of the unique witness, when one exists.
    pub witness: Option<usize>,
}

impl WitnessCertificate {
    pub fn is_witnessed(&self) -> bool {
        self.witness.is_some()
    }
}

fn expect_shape(tableau: &PTableau, level: usize, n: usize) -> Result<Partition, Error> {
    let wanted = Partition::two_column(level, n).ok_or_else(|| Error::ShapeMismatch {
        expected: format!("2^{level} 1^({n}-2*{level})"),
        got: tableau.shape().to_string(),
    })?;
    if tableau.shape() != wanted {
        return Err(Error::ShapeMismatch {
            expected: wanted.to_string(),
            got: tableau.shape().to_string(),
        });
    }
    Ok(wanted)
}

/// Scans a tableau of shape `2^level 1^(n-2*level)` for the witness row:
/// the smallest `s >= level+2` whose first-column entry dominates (in the
/// order) every first-column entry in rows `level+1 ..= s-1`.
///
/// Debug builds keep scanning past the first hit to confirm uniqueness.
pub fn insertion_witness(
    order: &NUIOrder,
    tableau: &PTableau,
    level: usize,
) -> Result<WitnessCertificate, Error> {
    expect_shape(tableau, level, order.n())?;
    let column: Vec<usize> = tableau.rows().iter().map(|row| row[0]).collect();
    let mut witness = None;
    for s in level + 2..=column.len() {
        if (level + 1..s).all(|i| order.lt(column[i - 1], column[s - 1])) {
            if witness.is_none() {
                witness = Some(s);
                if !cfg!(debug_assertions) {
                    break;
                }
            } else {
                debug_assert!(false, "second witness {s} after {witness:?} in {tableau:?}");
            }
        }
    }
    Ok(WitnessCertificate { witness })
}

/// Splits the bottom pair of a tableau of shape `2^(level+1) 1^(n-2*level-2)`:
/// its right cell is removed and inserted into the first column directly
/// above the earliest row that does not dominate it (at the bottom when all
/// rows do). The image has shape `2^level 1^(n-2*level)` and is witnessed.
///
/// The order must be in the first e-positive class; witness uniqueness and
/// validity of the image both depend on it.
pub fn split_pair(order: &NUIOrder, tableau: &PTableau, level: usize) -> Result<PTableau, Error> {
    expect_shape(tableau, level + 1, order.n())?;
    let rows = tableau.rows();
    let moved = rows[level][1];
    let mut column: Vec<usize> = rows.iter().map(|row| row[0]).collect();
    // 1-based row index of the insertion slot.
    let mut slot = column.len() + 1;
    for i in level + 2..=column.len() {
        if !order.lt(column[i - 1], moved) {
            slot = i;
            break;
        }
    }
    column.insert(slot - 1, moved);
    let result = rebuild(&column, rows, level);
    debug_assert!(result.is_valid(order), "split image invalid: {result:?}");
    debug_assert_eq!(
        insertion_witness(order, &result, level).unwrap().witness,
        Some(slot),
        "split image not witnessed at the insertion slot"
    );
    Ok(result)
}

/// Inverse of [`split_pair`]: extracts the witness row's first-column entry
/// and re-attaches it as the right cell of row `level+1`. Fails with
/// [`Error::MissingWitness`] on unwitnessed tableaux.
pub fn merge_pair(order: &NUIOrder, tableau: &PTableau, level: usize) -> Result<PTableau, Error> {
    let certificate = insertion_witness(order, tableau, level)?;
    let s = certificate.witness.ok_or(Error::MissingWitness)?;
    let mut column: Vec<usize> = tableau.rows().iter().map(|row| row[0]).collect();
    let moved = column.remove(s - 1);
    let mut rows: Vec<Vec<usize>> = Vec::with_capacity(column.len());
    for (i, &head) in column.iter().enumerate() {
        if i < level {
            rows.push(vec![head, tableau.rows()[i][1]]);
        } else if i == level {
            rows.push(vec![head, moved]);
        } else {
            rows.push(vec![head]);
        }
    }
    let result = PTableau::new(rows);
    debug_assert!(result.is_valid(order), "merge image invalid: {result:?}");
    Ok(result)
}

fn rebuild(column: &[usize], old_rows: &[Vec<usize>], pairs: usize) -> PTableau {
    let rows = column
        .iter()
        .enumerate()
        .map(|(i, &head)| {
            if i < pairs {
                vec![head, old_rows[i][1]]
            } else {
                vec![head]
            }
        })
        .collect();
    PTableau::new(rows)
}

fn require_class_one(order: &NUIOrder) -> Result<(), Error> {
    let class_one = order
        .classify()
        .iter()
        .any(|tag| matches!(tag, ClassTag::EposClass1 { .. }));
    if class_one {
        Ok(())
    } else {
        Err(Error::NotClassOne)
    }
}

/// Coefficient of `e_(n-level, level)` for a first-class order: the sum of
/// `t^inv` over unwitnessed tableaux of shape `2^level 1^(n-2*level)`.
/// Zero whenever the shape does not exist or admits no tableaux.
pub fn unwitnessed_coeff(order: &NUIOrder, level: usize) -> Result<TPoly, Error> {
    require_class_one(order)?;
    let Some(shape) = Partition::two_column(level, order.n()) else {
        return Ok(TPoly::zero());
    };
    let graph = order.inc_graph();
    let mut histogram = vec![0i64; graph.edge_count() + 1];
    for tableau in ptableaux(order, &shape) {
        let certificate = insertion_witness(order, &tableau, level)?;
        if !certificate.is_witnessed() {
            histogram[crate::tableaux::inv_count(&graph, &tableau)] += 1;
        }
    }
    Ok(TPoly::from_ints(&histogram))
}

/// Number of unwitnessed tableaux of shape `2^level 1^(n-2*level)`.
pub fn unwitnessed_count(order: &NUIOrder, level: usize) -> Result<usize, Error> {
    use num_traits::ToPrimitive;
    let total = unwitnessed_coeff(order, level)?.eval_one();
    Ok(total.to_usize().expect("tableau counts fit usize"))
}

/// The four nonzero e-coefficients of a second-class order, assembled from
/// the Schur coefficients of the four admissible shapes:
///
/// - `C_(n-2,1,1) = B_(3,1^(n-3))`
/// - `C_(n-2,2)   = B_(2^2,1^(n-4)) - B_(3,1^(n-3))`
/// - `C_(n-1,1)   = B_(2,1^(n-2)) - B_(2^2,1^(n-4)) - B_(3,1^(n-3))`
/// - `C_n         = B_(1^n) - B_(2,1^(n-2)) + B_(3,1^(n-3))`
pub fn second_class_coeffs(order: &NUIOrder) -> Result<EExpansion, Error> {
    let class_two = order
        .classify()
        .iter()
        .any(|tag| matches!(tag, ClassTag::EposClass2 { .. }));
    if !class_two {
        return Err(Error::NotClassTwo);
    }
    let n = order.n();
    let graph = order.inc_graph();
    let coeff = |head: &[usize]| {
        let mut parts = head.to_vec();
        parts.extend(vec![1; n - head.iter().sum::<usize>()]);
        shape_inv_gf(order, &graph, &Partition::new(parts))
    };
    let b_column = coeff(&[]);
    let b_domino = coeff(&[2]);
    let b_square = coeff(&[2, 2]);
    let b_hook = coeff(&[3]);

    let mut map = BTreeMap::new();
    map.insert(Partition::new(vec![n - 2, 1, 1]), b_hook.clone());
    map.insert(Partition::two_row(n - 2, 2), &b_square - &b_hook);
    map.insert(
        Partition::two_row(n - 1, 1),
        &(&b_domino - &b_square) - &b_hook,
    );
    map.insert(Partition::two_row(n, 0), &(&b_column - &b_domino) + &b_hook);
    Ok(EExpansion::from_map(n, map))
}
