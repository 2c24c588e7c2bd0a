//! P-tableaux and the Schur expansion of `X_G(x, t)`.
//!
//! A P-tableau of shape `lambda` (a partition of `n`) fills the Young
//! diagram with every element of the order exactly once so that rows
//! increase strictly in the order relation and no cell is dominated by the
//! cell directly below it. Summing `t^inv` over all tableaux of a shape
//! gives the Schur coefficient `B_lambda(t)`, where an inversion is a graph
//! edge `{i, j}`, `i < j`, with `i` in a lower row than `j`.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::orders::{IncGraph, NUIOrder};
use crate::TPoly;

/// An integer partition: weakly decreasing positive parts.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Panics unless the parts are weakly decreasing and positive.
    pub fn new(parts: Vec<usize>) -> Self {
        assert!(
            parts.windows(2).all(|w| w[0] >= w[1]),
            "parts must be weakly decreasing"
        );
        assert!(parts.iter().all(|&p| p >= 1), "parts must be positive");
        Partition { parts }
    }

    /// `(a, b)` with a zero second part dropped; used for the two-row keys
    /// `(n - l, l)`.
    pub fn two_row(a: usize, b: usize) -> Self {
        assert!(a >= b && a >= 1);
        if b == 0 {
            Partition::new(vec![a])
        } else {
            Partition::new(vec![a, b])
        }
    }

    /// The two-column shape `2^l 1^(n-2l)`, if `2l <= n`.
    pub fn two_column(l: usize, n: usize) -> Option<Self> {
        if 2 * l > n {
            return None;
        }
        let mut parts = vec![2; l];
        parts.extend(std::iter::repeat_n(1, n - 2 * l));
        Some(Partition { parts })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// `conjugate()[j] = #{ i : parts[i] >= j+1 }`.
    pub fn conjugate(&self) -> Partition {
        let cols = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=cols)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// All partitions of `n` in descending lexicographic order, `(n)` first.
    pub fn partitions_of(n: usize) -> Vec<Partition> {
        fn rec(
            remaining: usize,
            max_part: usize,
            stack: &mut Vec<usize>,
            out: &mut Vec<Partition>,
        ) {
            if remaining == 0 {
                out.push(Partition {
                    parts: stack.clone(),
                });
                return;
            }
            for k in (1..=remaining.min(max_part)).rev() {
                stack.push(k);
                rec(remaining - k, k, stack, out);
                stack.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

/// A filling of a Young diagram by poset elements, rows top to bottom.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
#[serde(transparent)]
pub struct PTableau {
    rows: Vec<Vec<usize>>,
}

impl PTableau {
    /// Panics unless the row lengths form a partition.
    pub fn new(rows: Vec<Vec<usize>>) -> Self {
        assert!(
            rows.windows(2).all(|w| w[0].len() >= w[1].len()),
            "row lengths must be weakly decreasing"
        );
        assert!(rows.iter().all(|r| !r.is_empty()), "rows must be nonempty");
        PTableau { rows }
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }

    pub fn shape(&self) -> Partition {
        Partition::new(self.rows.iter().map(|r| r.len()).collect())
    }

    /// Checks the three defining conditions against the order: every element
    /// appears once, rows increase in the order, and no cell is dominated by
    /// the cell right below it.
    pub fn is_valid(&self, order: &NUIOrder) -> bool {
        let n = order.n();
        let mut seen = vec![false; n + 1];
        let mut count = 0;
        for row in &self.rows {
            for &v in row {
                if v == 0 || v > n || seen[v] {
                    return false;
                }
                seen[v] = true;
                count += 1;
            }
        }
        if count != n {
            return false;
        }
        for (r, row) in self.rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                if c + 1 < row.len() && !order.lt(v, row[c + 1]) {
                    return false;
                }
                if r + 1 < self.rows.len() {
                    if let Some(&below) = self.rows[r + 1].get(c) {
                        if order.lt(below, v) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Number of graph inversions of `tableau`: edges `{i, j}` with `i < j` and
/// `i` strictly below `j`. The tableau must contain each of `1..=n` once.
pub fn inv_count(graph: &IncGraph, tableau: &PTableau) -> usize {
    let n = graph.n();
    let mut row_of = vec![usize::MAX; n + 1];
    for (r, row) in tableau.rows.iter().enumerate() {
        for &v in row {
            assert!(v >= 1 && v <= n, "element {v} out of range");
            assert!(row_of[v] == usize::MAX, "element {v} repeated");
            row_of[v] = r;
        }
    }
    assert!(
        row_of[1..].iter().all(|&r| r != usize::MAX),
        "tableau must contain every element of 1..=n"
    );
    graph
        .edges()
        .iter()
        .filter(|&&(i, j)| row_of[i] > row_of[j])
        .count()
}

/// Lazily enumerates every P-tableau of the given shape, by backtracking
/// over cells in row-major order with candidates tried in increasing order.
pub fn ptableaux<'a>(order: &'a NUIOrder, shape: &Partition) -> PTableauIter<'a> {
    PTableauIter::new(order, shape)
}

pub struct PTableauIter<'a> {
    order: &'a NUIOrder,
    cells: Vec<(usize, usize)>,
    grid: Vec<Vec<usize>>,
    used: Vec<bool>,
    cursor: Vec<usize>,
    depth: usize,
    exhausted: bool,
}

impl<'a> PTableauIter<'a> {
    fn new(order: &'a NUIOrder, shape: &Partition) -> Self {
        let mut cells = Vec::with_capacity(shape.size());
        for (r, &len) in shape.parts().iter().enumerate() {
            for c in 0..len {
                cells.push((r, c));
            }
        }
        let cursor = vec![1; cells.len()];
        PTableauIter {
            order,
            grid: shape.parts().iter().map(|&len| vec![0; len]).collect(),
            used: vec![false; order.n() + 1],
            cursor,
            depth: 0,
            // Shapes of the wrong total size admit no filling.
            exhausted: shape.size() != order.n() || cells.is_empty(),
            cells,
        }
    }

    fn admissible(&self, r: usize, c: usize, v: usize) -> bool {
        if self.used[v] {
            return false;
        }
        if c > 0 && !self.order.lt(self.grid[r][c - 1], v) {
            return false;
        }
        // The cell above always exists when r > 0: row lengths weakly
        // decrease. The constraint reads upward: v may not precede it.
        if r > 0 && self.order.lt(v, self.grid[r - 1][c]) {
            return false;
        }
        true
    }

    fn retreat(&mut self) -> bool {
        if self.depth == 0 {
            return false;
        }
        self.depth -= 1;
        let (r, c) = self.cells[self.depth];
        self.used[self.grid[r][c]] = false;
        self.grid[r][c] = 0;
        true
    }

    /// Steps to the next complete filling without materializing it; while
    /// this returns true, [`grid`](Self::grid) holds the filling.
    pub(crate) fn advance(&mut self) -> bool {
        if self.exhausted {
            return false;
        }
        if self.depth == self.cells.len() && !self.retreat() {
            self.exhausted = true;
            return false;
        }
        let n = self.order.n();
        loop {
            let (r, c) = self.cells[self.depth];
            let mut v = self.cursor[self.depth];
            let mut placed = false;
            while v <= n {
                if self.admissible(r, c, v) {
                    self.grid[r][c] = v;
                    self.used[v] = true;
                    self.cursor[self.depth] = v + 1;
                    self.depth += 1;
                    if self.depth < self.cells.len() {
                        self.cursor[self.depth] = 1;
                    }
                    placed = true;
                    break;
                }
                v += 1;
            }
            if placed {
                if self.depth == self.cells.len() {
                    return true;
                }
            } else if !self.retreat() {
                self.exhausted = true;
                return false;
            }
        }
    }

    pub(crate) fn grid(&self) -> &[Vec<usize>] {
        &self.grid
    }
}

impl Iterator for PTableauIter<'_> {
    type Item = PTableau;

    fn next(&mut self) -> Option<PTableau> {
        if self.advance() {
            Some(PTableau {
                rows: self.grid.clone(),
            })
        } else {
            None
        }
    }
}

/// Schur expansion `X_G = sum B_lambda(t) s_lambda`: a map from partitions
/// of `n` to nonzero coefficient polynomials.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SExpansion {
    n: usize,
    map: BTreeMap<Partition, TPoly>,
}

impl SExpansion {
    pub(crate) fn from_map(n: usize, map: BTreeMap<Partition, TPoly>) -> Self {
        debug_assert!(map.values().all(|p| !p.is_zero()));
        SExpansion { n, map }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, shape: &Partition) -> Option<&TPoly> {
        self.map.get(shape)
    }

    /// Coefficient of `s_lambda`, zero when absent.
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

    /// Total number of P-tableaux, i.e. the coefficient mass at `t = 1`.
    pub fn tableau_count(&self) -> num_bigint::BigInt {
        let mut acc = num_bigint::BigInt::from(0);
        for poly in self.map.values() {
            acc += poly.eval_one();
        }
        acc
    }

    pub fn to_json(&self) -> serde_json::Value {
        let mut obj = serde_json::Map::new();
        for (shape, poly) in &self.map {
            obj.insert(shape.to_string(), serde_json::to_value(poly).unwrap());
        }
        serde_json::Value::Object(obj)
    }
}

/// `B_lambda(t) = sum over P-tableaux of shape lambda of t^inv`, for every
/// shape with at least one tableau. Shapes are enumerated independently in
/// parallel; the map is assembled afterwards by the single owner.
pub fn schur_expansion(order: &NUIOrder) -> SExpansion {
    let graph = order.inc_graph();
    let per_shape: Vec<(Partition, TPoly)> = Partition::partitions_of(order.n())
        .into_par_iter()
        .map(|shape| {
            let poly = shape_inv_gf(order, &graph, &shape);
            (shape, poly)
        })
        .collect();
    let mut map = BTreeMap::new();
    for (shape, poly) in per_shape {
        if !poly.is_zero() {
            map.insert(shape, poly);
        }
    }
    SExpansion::from_map(order.n(), map)
}

pub(crate) fn shape_inv_gf(order: &NUIOrder, graph: &IncGraph, shape: &Partition) -> TPoly {
    let mut iter = ptableaux(order, shape);
    let mut histogram = vec![0i64; graph.edge_count() + 1];
    let mut row_of = vec![0usize; order.n() + 1];
    while iter.advance() {
        for (r, row) in iter.grid().iter().enumerate() {
            for &v in row {
                row_of[v] = r;
            }
        }
        let inv = graph
            .edges()
            .iter()
            .filter(|&&(i, j)| row_of[i] > row_of[j])
            .count();
        histogram[inv] += 1;
    }
    TPoly::from_ints(&histogram)
}
