//! Natural unit interval orders `P(m)`, their incomparability graphs, and
//! the Catalan-path encoding.
//!
//! An order on `[n]` is given by a weakly increasing sequence
//! `m = (m_1, ..., m_{n-1})` with `i <= m_i <= n`; the relation is
//! `i < j` in `P(m)` iff `j > m_i`. The incomparability graph joins `{i, j}`
//! with `i < j` iff `j <= m_i`. Orders encode bijectively as lattice paths
//! from `(0,0)` to `(n,n)` weakly above the diagonal, which carry the bounce
//! statistic and the reflection involution.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// A validated natural unit interval order on `{1, ..., n}`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NUIOrder {
    n: usize,
    m: Vec<usize>,
}

impl NUIOrder {
    /// Validates an m-sequence; the ground set size is `m.len() + 1`.
    pub fn new(m: Vec<usize>) -> Result<Self, Error> {
        let n = m.len() + 1;
        for (idx, &v) in m.iter().enumerate() {
            let i = idx + 1;
            if v < i {
                return Err(Error::InvalidMSequence(format!("m_{i} = {v} < {i}")));
            }
            if v > n {
                return Err(Error::InvalidMSequence(format!("m_{i} = {v} > n = {n}")));
            }
            if idx > 0 && m[idx - 1] > v {
                return Err(Error::InvalidMSequence(format!(
                    "m_{} = {} > m_{i} = {v}",
                    i - 1,
                    m[idx - 1]
                )));
            }
        }
        Ok(NUIOrder { n, m })
    }

    fn new_unchecked(n: usize, m: Vec<usize>) -> Self {
        debug_assert_eq!(n, m.len() + 1);
        NUIOrder { n, m }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> &[usize] {
        &self.m
    }

    /// The order relation, with index checking. Elements are 1-based.
    pub fn less_than(&self, i: usize, j: usize) -> Result<bool, Error> {
        for v in [i, j] {
            if v == 0 || v > self.n {
                return Err(Error::OutOfRange(v, self.n));
            }
        }
        Ok(self.lt(i, j))
    }

    /// Unchecked order relation for enumeration loops; `i` and `j` must be
    /// in `1..=n`.
    pub(crate) fn lt(&self, i: usize, j: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        i < self.n && j > self.m[i - 1]
    }

    pub fn inc_graph(&self) -> IncGraph {
        let mut edges = Vec::new();
        for i in 1..self.n {
            for j in i + 1..=self.m[i - 1] {
                edges.push((i, j));
            }
        }
        IncGraph::from_edges(self.n, &edges).expect("edges from a valid order are in range")
    }

    /// True iff `m_i > i` for all `i`; equivalent to connectivity of the
    /// incomparability graph, and to the Catalan path meeting the diagonal
    /// only at its endpoints.
    pub fn is_connected(&self) -> bool {
        self.m.iter().enumerate().all(|(idx, &v)| v > idx + 1)
    }

    /// Splits at every diagonal touch `m_i = i` into the orders induced on
    /// the vertex blocks, relabeled from 1. Connected orders return
    /// themselves.
    pub fn components(&self) -> Vec<NUIOrder> {
        let mut comps = Vec::new();
        let mut lo = 0;
        for i in 1..self.n {
            if self.m[i - 1] == i {
                comps.push(self.block(lo, i));
                lo = i;
            }
        }
        comps.push(self.block(lo, self.n));
        comps
    }

    // Order induced on vertices lo+1..=hi. Within the block every m_i <= hi,
    // so the shifted sequence is valid.
    fn block(&self, lo: usize, hi: usize) -> NUIOrder {
        let m = (lo + 1..hi).map(|i| self.m[i - 1] - lo).collect();
        NUIOrder::new_unchecked(hi - lo, m)
    }

    /// The lattice-path encoding: the i-th east step lies on `y = m_i`, the
    /// last on `y = n`.
    pub fn to_catalan(&self) -> CatalanPath {
        let mut steps = Vec::with_capacity(2 * self.n);
        let mut height = 0;
        for i in 1..=self.n {
            let target = if i < self.n { self.m[i - 1] } else { self.n };
            while height < target {
                steps.push(Step::N);
                height += 1;
            }
            steps.push(Step::E);
        }
        CatalanPath { steps }
    }

    /// The order whose Catalan path is the reflection of this one about the
    /// antidiagonal `y = n - x`. An involution that preserves the edge count
    /// and the whole expansion.
    pub fn reflect(&self) -> NUIOrder {
        self.to_catalan().reflect().to_order()
    }

    /// All m-sequence patterns the order matches, with extracted parameters.
    ///
    /// Tags record raw pattern matches; the closed formulas re-validate
    /// their parameter domains before evaluating (e.g. the `4.4` pattern can
    /// match with `s > r`, outside that formula's domain).
    pub fn classify(&self) -> BTreeSet<ClassTag> {
        let mut tags = BTreeSet::new();
        let (n, m) = (self.n, &self.m);
        if n < 2 {
            return tags;
        }
        let r = m[0];

        // First e-positive class: m_1 = r < n and m_{r+1} = n; the second
        // condition is vacuous when r = n - 1.
        if r < n && (r + 1 > n - 1 || m[r] == n) {
            tags.insert(ClassTag::EposClass1 { r });
        }

        // Two-block pattern r^s n^(n-1-s).
        if r < n {
            let s = m.iter().take_while(|&&v| v == r).count();
            if s < n - 1 && m[s] == n {
                tags.insert(ClassTag::Formula42 { r, s });
            }
        }

        // One-line pattern (r, n, ..., n).
        if r < n && n >= 3 && m[1] == n {
            tags.insert(ClassTag::Formula43 { r });
        }

        // K-chain pattern r^(r-1) n^(n-r); for r = 2 this coincides with the
        // one-line pattern, which takes precedence.
        if r >= 3 && r < n && m[..r - 1].iter().all(|&v| v == r) && m[r - 1] == n {
            tags.insert(ClassTag::KChain { r });
        }

        // Sandwich pattern (r, (n-1)^(s-1), n^(n-1-s)).
        if n >= 4 && m[1] == n - 1 {
            let s = 1 + m[1..].iter().take_while(|&&v| v == n - 1).count();
            if s < n - 1 && m[s] == n {
                tags.insert(ClassTag::Formula44 { r, s });
                // Second e-positive class: same pattern with r < s.
                if n >= 5 && r >= 2 && r < s {
                    tags.insert(ClassTag::EposClass2 { r, s });
                }
            }
        }

        tags
    }
}

impl fmt::Display for NUIOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.m.iter().map(|v| v.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl fmt::Debug for NUIOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({self})")
    }
}

impl FromStr for NUIOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let mut m = Vec::new();
        for part in s.split(',') {
            let v: usize = part
                .trim()
                .parse()
                .map_err(|_| Error::InvalidMSequence(format!("cannot parse {part:?}")))?;
            m.push(v);
        }
        NUIOrder::new(m)
    }
}

/// Class membership tags returned by [`NUIOrder::classify`].
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum ClassTag {
    /// `m_1 = r < n`, `m_{r+1} = n`: two overlapping cliques.
    EposClass1 { r: usize },
    /// `(r, (n-1)^(s-1), n^(n-1-s))` with `r < s < n-1`: a clique on
    /// `{2..n-1}` plus the end vertices.
    EposClass2 { r: usize, s: usize },
    /// `(r^s, n^(n-1-s))`.
    Formula42 { r: usize, s: usize },
    /// `(r, n, ..., n)`.
    Formula43 { r: usize },
    /// `(r, (n-1)^(s-1), n^(n-1-s))`.
    Formula44 { r: usize, s: usize },
    /// `(r^(r-1), n^(n-r))`: concatenation of two complete graphs.
    KChain { r: usize },
}

impl fmt::Display for ClassTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTag::EposClass1 { r } => write!(f, "class1(r={r})"),
            ClassTag::EposClass2 { r, s } => write!(f, "class2(r={r},s={s})"),
            ClassTag::Formula42 { r, s } => write!(f, "formula4.2(r={r},s={s})"),
            ClassTag::Formula43 { r } => write!(f, "formula4.3(r={r})"),
            ClassTag::Formula44 { r, s } => write!(f, "formula4.4(r={r},s={s})"),
            ClassTag::KChain { r } => write!(f, "kchain(r={r})"),
        }
    }
}

/// Incomparability graph on vertices `1..=n`.
#[derive(Clone, PartialEq, Eq)]
pub struct IncGraph {
    n: usize,
    adj: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

impl IncGraph {
    /// Builds a graph from unordered pairs. Not restricted to unit interval
    /// graphs; the oracle uses arbitrary edge sets as negative controls.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut adj = vec![false; n * n];
        let mut normalized = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            for v in [a, b] {
                if v == 0 || v > n {
                    return Err(Error::OutOfRange(v, n));
                }
            }
            let (i, j) = (a.min(b), a.max(b));
            if i == j || adj[(i - 1) * n + (j - 1)] {
                continue;
            }
            adj[(i - 1) * n + (j - 1)] = true;
            adj[(j - 1) * n + (i - 1)] = true;
            normalized.push((i, j));
        }
        normalized.sort_unstable();
        Ok(IncGraph {
            n,
            adj,
            edges: normalized,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn is_edge(&self, i: usize, j: usize) -> bool {
        debug_assert!(i >= 1 && i <= self.n && j >= 1 && j <= self.n);
        self.adj[(i - 1) * self.n + (j - 1)]
    }

    /// `b_i = #{ {j, i} in E : j < i }` for `i = 2..=n`.
    pub fn b_sequence(&self) -> Vec<usize> {
        (2..=self.n)
            .map(|i| (1..i).filter(|&j| self.is_edge(j, i)).count())
            .collect()
    }

    /// Graph-search connectivity, used to cross-check the `m_i > i`
    /// criterion.
    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return true;
        }
        let mut seen = vec![false; self.n + 1];
        let mut stack = vec![1];
        seen[1] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            #[allow(clippy::needless_range_loop)]
            for u in 1..=self.n {
                if u != v && self.is_edge(v, u) && !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }
}

impl fmt::Debug for IncGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IncGraph(n={}, edges={:?})", self.n, self.edges)
    }
}

/// A lattice-path step.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Step {
    N,
    E,
}

/// A path from `(0,0)` to `(n,n)` in `N`/`E` steps, weakly above `y = x`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CatalanPath {
    steps: Vec<Step>,
}

impl CatalanPath {
    pub fn new(steps: Vec<Step>) -> Result<Self, Error> {
        if !steps.len().is_multiple_of(2) {
            return Err(Error::InvalidPath("odd number of steps".into()));
        }
        let (mut north, mut east) = (0usize, 0usize);
        for s in &steps {
            match s {
                Step::N => north += 1,
                Step::E => east += 1,
            }
            if east > north {
                return Err(Error::InvalidPath("path dips below the diagonal".into()));
            }
        }
        if north != east {
            return Err(Error::InvalidPath("unbalanced step counts".into()));
        }
        if steps.is_empty() {
            return Err(Error::InvalidPath("empty path".into()));
        }
        Ok(CatalanPath { steps })
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn n(&self) -> usize {
        self.steps.len() / 2
    }

    /// Heights of the east steps, in order; the i-th entry is `m_i` and the
    /// last is always `n`.
    pub fn heights(&self) -> Vec<usize> {
        let mut heights = Vec::with_capacity(self.n());
        let mut y = 0;
        for s in &self.steps {
            match s {
                Step::N => y += 1,
                Step::E => heights.push(y),
            }
        }
        heights
    }

    /// Inverse of [`NUIOrder::to_catalan`].
    pub fn to_order(&self) -> NUIOrder {
        let mut heights = self.heights();
        heights.pop();
        NUIOrder::new(heights).expect("heights of a valid Catalan path form a valid m-sequence")
    }

    /// Bounce statistic: travel north along the path from `(0,0)` until the
    /// start of an east step, turn east to the diagonal, turn north along
    /// the path's column again, and so on; one less than the number of
    /// diagonal touches.
    pub fn bounce_number(&self) -> usize {
        let heights = self.heights();
        let n = self.n();
        let mut bounces = 0;
        let mut x = 0;
        while x < n {
            // Travelling north along column x, the first east step reached
            // is the (x+1)-st, which starts at height `heights[x]`.
            x = heights[x];
            bounces += 1;
        }
        bounces
    }

    /// Reflection about `y = n - x`: reverse the steps and swap N with E.
    pub fn reflect(&self) -> CatalanPath {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| match s {
                Step::N => Step::E,
                Step::E => Step::N,
            })
            .collect();
        CatalanPath { steps }
    }
}

impl fmt::Display for CatalanPath {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            f.write_str(match s {
                Step::N => "N",
                Step::E => "E",
            })?;
        }
        Ok(())
    }
}

impl FromStr for CatalanPath {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let steps = s
            .chars()
            .map(|c| match c {
                'N' | 'n' => Ok(Step::N),
                'E' | 'e' => Ok(Step::E),
                other => Err(Error::InvalidPath(format!("unexpected symbol {other:?}"))),
            })
            .collect::<Result<Vec<_>, _>>()?;
        CatalanPath::new(steps)
    }
}

/// All orders of size `n` with connected incomparability graph (`m_i > i`),
/// in lexicographic m-sequence order. There are `Catalan(n-1)` of them.
pub fn enumerate_prime_orders(n: usize) -> OrderIter {
    OrderIter::new(n, 1)
}

/// All orders of size `n`, in lexicographic m-sequence order. There are
/// `Catalan(n)` of them.
pub fn enumerate_orders(n: usize) -> OrderIter {
    OrderIter::new(n, 0)
}

/// Lazily yields m-sequences in lexicographic order; restartable by
/// constructing a fresh iterator.
pub struct OrderIter {
    n: usize,
    excess: usize,
    state: Option<Vec<usize>>,
}

impl OrderIter {
    fn new(n: usize, excess: usize) -> Self {
        assert!(n >= 1, "orders need at least one element");
        // Minimal sequence: m_i = i + excess.
        let initial = (1..n).map(|i| i + excess).collect();
        OrderIter {
            n,
            excess,
            state: Some(initial),
        }
    }
}

impl Iterator for OrderIter {
    type Item = NUIOrder;

    fn next(&mut self) -> Option<NUIOrder> {
        let current = self.state.take()?;
        let mut next = current.clone();
        let bump = next.iter().rposition(|&v| v < self.n);
        if let Some(k) = bump {
            next[k] += 1;
            for j in k + 1..next.len() {
                next[j] = next[j - 1].max(j + 1 + self.excess);
            }
            self.state = Some(next);
        }
        Some(NUIOrder::new_unchecked(self.n, current))
    }
}
