//! Ground-truth computation of `X_G(x, t)` straight from its definition.
//!
//! [`coloring_table`] enumerates every proper coloring in a bounded palette
//! and tallies `t^#ascents` per monomial; no symmetry tricks, no pruning
//! beyond properness, so the result is trustworthy enough to check the
//! basis pipelines against. With `N >= n` colors the elementary monomials
//! of degree `n` stay linearly independent, so agreement of the tables is
//! agreement of the symmetric functions.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::error::Error;
use crate::orders::IncGraph;
use crate::symfun::{s_to_e, EExpansion};
use crate::tableaux::SExpansion;
use crate::TPoly;

/// Map from exponent vectors (length = palette size, entries summing to
/// `n`) to coefficient polynomials in `t`. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MonomialTable {
    vars: usize,
    map: BTreeMap<Vec<u8>, TPoly>,
}

impl MonomialTable {
    fn from_map(vars: usize, mut map: BTreeMap<Vec<u8>, TPoly>) -> Self {
        map.retain(|_, poly| !poly.is_zero());
        MonomialTable { vars, map }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, exponents: &[u8]) -> Option<&TPoly> {
        self.map.get(exponents)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Vec<u8>, &TPoly)> {
        self.map.iter()
    }

    /// First monomial on which the two tables disagree, reading both
    /// missing entries as zero.
    pub fn first_difference<'a>(
        &'a self,
        other: &'a MonomialTable,
    ) -> Option<(&'a [u8], TPoly, TPoly)> {
        for (exp, poly) in &self.map {
            let theirs = other.map.get(exp).cloned().unwrap_or_else(TPoly::zero);
            if *poly != theirs {
                return Some((exp, poly.clone(), theirs));
            }
        }
        for (exp, poly) in &other.map {
            if !self.map.contains_key(exp) {
                return Some((exp, TPoly::zero(), poly.clone()));
            }
        }
        None
    }
}

/// Number of ascents of a proper coloring: edges `{i, j}` with `i < j` and
/// `coloring[i] < coloring[j]`. Colors are positive integers, one per
/// vertex in element order.
pub fn ascent_count(graph: &IncGraph, coloring: &[usize]) -> Result<usize, Error> {
    assert_eq!(coloring.len(), graph.n(), "one color per vertex");
    let mut ascents = 0;
    for &(i, j) in graph.edges() {
        if coloring[i - 1] == coloring[j - 1] {
            return Err(Error::ImproperColoring(i, j));
        }
        if coloring[i - 1] < coloring[j - 1] {
            ascents += 1;
        }
    }
    Ok(ascents)
}

/// Tallies `t^#ascents * x_coloring` over every proper coloring with the
/// palette `1..=colors`. The search is split by the color of vertex 1 and
/// the partial tables merged.
pub fn coloring_table(graph: &IncGraph, colors: usize) -> MonomialTable {
    let maps: Vec<BTreeMap<Vec<u8>, Vec<i64>>> = (1..=colors)
        .into_par_iter()
        .map(|first| {
            let mut map = BTreeMap::new();
            let mut assignment = vec![0usize; graph.n()];
            assignment[0] = first;
            extend_coloring(graph, colors, &mut assignment, 1, 0, &mut map);
            map
        })
        .collect();
    let mut merged: BTreeMap<Vec<u8>, Vec<i64>> = BTreeMap::new();
    for map in maps {
        for (exp, hist) in map {
            merge_histogram(merged.entry(exp).or_default(), &hist);
        }
    }
    let polys = merged
        .into_iter()
        .map(|(exp, hist)| (exp, TPoly::from_ints(&hist)))
        .collect();
    MonomialTable::from_map(colors, polys)
}

fn merge_histogram(into: &mut Vec<i64>, from: &[i64]) {
    if into.len() < from.len() {
        into.resize(from.len(), 0);
    }
    for (slot, value) in into.iter_mut().zip(from) {
        *slot += value;
    }
}

fn extend_coloring(
    graph: &IncGraph,
    colors: usize,
    assignment: &mut Vec<usize>,
    next: usize,
    ascents: usize,
    out: &mut BTreeMap<Vec<u8>, Vec<i64>>,
) {
    let n = graph.n();
    if next == n {
        let mut exponents = vec![0u8; colors];
        for &c in assignment.iter() {
            exponents[c - 1] += 1;
        }
        let hist = out.entry(exponents).or_default();
        if hist.len() <= ascents {
            hist.resize(ascents + 1, 0);
        }
        hist[ascents] += 1;
        return;
    }
    let v = next + 1;
    'color: for c in 1..=colors {
        let mut gained = 0;
        for u in 1..v {
            if graph.is_edge(u, v) {
                if assignment[u - 1] == c {
                    continue 'color;
                }
                if assignment[u - 1] < c {
                    gained += 1;
                }
            }
        }
        assignment[next] = c;
        extend_coloring(graph, colors, assignment, next + 1, ascents + gained, out);
    }
}

/// Expands an e-expansion into monomials in `vars` variables:
/// `e_lambda = prod_i e_(lambda_i)` multiplied out exactly.
pub fn expand_e_to_monomials(expansion: &EExpansion, vars: usize) -> MonomialTable {
    let mut out: BTreeMap<Vec<u8>, TPoly> = BTreeMap::new();
    for (shape, coeff) in expansion.iter() {
        for (exp, mult) in e_product_table(shape.parts(), vars) {
            let term = &TPoly::from_ints(&[mult]) * coeff;
            let entry = out.entry(exp).or_insert_with(TPoly::zero);
            *entry = &*entry + &term;
        }
    }
    MonomialTable::from_map(vars, out)
}

/// Expands a Schur expansion into monomials, realized through its e-basis
/// image.
pub fn expand_s_to_monomials(expansion: &SExpansion, vars: usize) -> MonomialTable {
    expand_e_to_monomials(&s_to_e(expansion), vars)
}

// Monomials of e_(k1) e_(k2) ... with integer multiplicities.
fn e_product_table(parts: &[usize], vars: usize) -> BTreeMap<Vec<u8>, i64> {
    let mut acc = BTreeMap::from([(vec![0u8; vars], 1i64)]);
    for &k in parts {
        let factor = subsets_of_size(k, vars);
        let mut next = BTreeMap::new();
        for (exp, mult) in &acc {
            for mask in &factor {
                let mut merged = exp.clone();
                for (slot, bit) in merged.iter_mut().zip(mask) {
                    *slot += bit;
                }
                *next.entry(merged).or_insert(0) += mult;
            }
        }
        acc = next;
    }
    acc
}

fn subsets_of_size(k: usize, vars: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    if k > vars {
        return out;
    }
    let mut choice: Vec<usize> = (0..k).collect();
    loop {
        let mut mask = vec![0u8; vars];
        for &i in &choice {
            mask[i] = 1;
        }
        out.push(mask);
        // Next combination in lexicographic order.
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if choice[i] != i + vars - k {
                break;
            }
        }
        choice[i] += 1;
        for j in i + 1..k {
            choice[j] = choice[j - 1] + 1;
        }
    }
}

/// True iff the table is a symmetric function: every exponent vector
/// carries the same polynomial as its sorted rearrangement, and each
/// rearrangement class is fully populated.
pub fn check_symmetry(table: &MonomialTable) -> bool {
    let mut classes: BTreeMap<Vec<u8>, (&TPoly, u128)> = BTreeMap::new();
    for (exp, poly) in table.iter() {
        let mut sorted = exp.clone();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        match classes.get_mut(&sorted) {
            Some((canonical, count)) => {
                if *canonical != poly {
                    return false;
                }
                *count += 1;
            }
            None => {
                classes.insert(sorted, (poly, 1));
            }
        }
    }
    classes
        .iter()
        .all(|(sorted, &(_, count))| count == distinct_rearrangements(sorted))
}

fn distinct_rearrangements(sorted: &[u8]) -> u128 {
    let factorial = |k: u128| (1..=k).product::<u128>();
    let mut result = factorial(sorted.len() as u128);
    let mut run = 1u128;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            result /= factorial(run);
            run = 1;
        }
    }
    result / factorial(run)
}
