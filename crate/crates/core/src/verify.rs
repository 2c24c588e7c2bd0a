//! Positivity, palindromicity and unimodality checkers, and the exhaustive
//! survey over all prime orders of a given size.
//!
//! Theorem-backed properties (e-positivity inside the two proven classes,
//! palindromicity everywhere) are implementation bug detectors. The
//! unimodality checks are conjecture-level outside the explicit-formula
//! families: the survey records them as observations and never aborts on
//! them, since a genuine failure would be a mathematical finding and far
//! more likely a bug.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::json;

use crate::error::Error;
use crate::formulas::closed_form;
use crate::orders::{enumerate_prime_orders, ClassTag, NUIOrder};
use crate::symfun::{e_expansion, EExpansion};
use crate::Center;

/// Everything the survey records about one order.
#[derive(Clone, Debug)]
pub struct Verdict {
    pub m: Vec<usize>,
    pub edges: usize,
    pub class_tags: BTreeSet<ClassTag>,
    pub e_positive: bool,
    pub palindromic: bool,
    /// Every coefficient unimodal and palindromic about the common center
    /// `|E|/2` - sufficient for e-unimodality, stronger than the conjecture.
    pub e_unimodal_sufficient: bool,
    /// The literal conjecture: consecutive t-slice differences up to the
    /// center are e-positive.
    pub unimodal_conjecture: bool,
    pub center: Center,
    pub elapsed: Duration,
}

impl Verdict {
    /// JSON line for the survey stream. Timings stay out of it so that
    /// output is byte-deterministic for fixed arguments.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "m": self.m,
            "edges": self.edges,
            "class_tags": self.class_tags.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "e_positive": self.e_positive,
            "palindromic": self.palindromic,
            "e_unimodal_sufficient": self.e_unimodal_sufficient,
            "unimodal_conjecture": self.unimodal_conjecture,
            "center": self.center.to_string(),
        })
    }

    pub fn csv_header() -> &'static str {
        "m_sequence,edges,class_tags,e_positive,palindromic,unimodal_sufficient,unimodal_conjecture"
    }

    pub fn csv_row(&self) -> String {
        let m: Vec<String> = self.m.iter().map(|v| v.to_string()).collect();
        let tags: Vec<String> = self.class_tags.iter().map(|t| t.to_string()).collect();
        format!(
            "\"{}\",{},\"{}\",{},{},{},{}",
            m.join(","),
            self.edges,
            tags.join(";"),
            self.e_positive,
            self.palindromic,
            self.e_unimodal_sufficient,
            self.unimodal_conjecture
        )
    }
}

/// Computes the e-expansion (cross-checked against the closed form whenever
/// one applies) and evaluates all predicates against the center `|E|/2`.
pub fn check_expansion(order: &NUIOrder) -> Verdict {
    let start = Instant::now();
    let expansion = e_expansion(order);
    if let Some((id, closed)) = closed_form(order) {
        assert_eq!(
            closed, expansion,
            "closed form {id} disagrees with the tableau pipeline on P({order})"
        );
    }
    let edges = order.inc_graph().edge_count();
    let center = Center::new(edges as i64, 2);
    let e_positive = expansion.iter().all(|(_, c)| c.is_nonnegative());
    let palindromic = expansion.iter().all(|(_, c)| c.is_palindromic(center));
    let e_unimodal_sufficient = palindromic && expansion.iter().all(|(_, c)| c.is_unimodal());
    let unimodal_conjecture = unimodality_conjecture_check(&expansion, center);
    Verdict {
        m: order.m().to_vec(),
        edges,
        class_tags: order.classify(),
        e_positive,
        palindromic,
        e_unimodal_sufficient,
        unimodal_conjecture,
        center,
        elapsed: start.elapsed(),
    }
}

/// The conjecture statement itself: with `X = sum_i a_i(x) t^i`, checks
/// that `a_(i+1) - a_i` is e-positive for all `0 <= i < center - 1/2`,
/// where slice differences are componentwise differences of coefficient
/// vectors over partitions.
pub fn unimodality_conjecture_check(expansion: &EExpansion, center: Center) -> bool {
    let half = Center::new(1, 2);
    let mut i: usize = 0;
    while Center::from_integer(i as i64) < center - half {
        for (_, coeff) in expansion.iter() {
            if coeff.coeff(i + 1) < coeff.coeff(i) {
                return false;
            }
        }
        i += 1;
    }
    true
}

/// Aggregate counts over one survey run.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Census {
    pub total: usize,
    pub class1: usize,
    pub class2_only: usize,
    pub e_positive_failures: Vec<String>,
    pub palindromic_failures: Vec<String>,
    pub unimodal_conjecture_failures: Vec<String>,
}

impl Census {
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "total": self.total,
            "class1": self.class1,
            "class2_only": self.class2_only,
            "e_positive_failures": self.e_positive_failures,
            "palindromic_failures": self.palindromic_failures,
            "unimodal_conjecture_failures": self.unimodal_conjecture_failures,
        })
    }
}

/// Survey results in enumeration order plus the census.
#[derive(Clone, Debug)]
pub struct SurveyReport {
    pub verdicts: Vec<Verdict>,
    pub census: Census,
}

/// Sizes above this need an explicit budget; enumeration is Catalan-sized
/// and each order costs a full tableau sweep.
pub const DEFAULT_SURVEY_BUDGET: usize = 9;

/// Environment variable read for the survey worker count.
pub const WORKERS_ENV: &str = "CQF_WORKERS";

pub fn survey(n: usize) -> Result<SurveyReport, Error> {
    survey_with_budget(n, DEFAULT_SURVEY_BUDGET, |_| {})
}

/// Runs [`check_expansion`] over every prime order of size `n` on a worker
/// pool (size from `CQF_WORKERS` when set). Verdicts are delivered to
/// `sink` incrementally in enumeration order, then collected in the report.
pub fn survey_with_budget(
    n: usize,
    budget: usize,
    mut sink: impl FnMut(&Verdict),
) -> Result<SurveyReport, Error> {
    if n > budget {
        return Err(Error::BudgetExceeded {
            requested: n,
            budget,
        });
    }
    let orders: Vec<NUIOrder> = enumerate_prime_orders(n).collect();
    let pool = worker_pool();
    let mut verdicts = Vec::with_capacity(orders.len());
    for chunk in orders.chunks(64) {
        let chunk_verdicts: Vec<Verdict> = match &pool {
            Some(pool) => pool.install(|| chunk.par_iter().map(check_expansion).collect()),
            None => chunk.par_iter().map(check_expansion).collect(),
        };
        for verdict in chunk_verdicts {
            sink(&verdict);
            verdicts.push(verdict);
        }
    }
    let census = census_of(&verdicts);
    Ok(SurveyReport { verdicts, census })
}

fn worker_pool() -> Option<rayon::ThreadPool> {
    let workers: usize = std::env::var(WORKERS_ENV).ok()?.parse().ok()?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers.max(1))
        .build()
        .ok()
}

fn census_of(verdicts: &[Verdict]) -> Census {
    let mut census = Census {
        total: verdicts.len(),
        class1: 0,
        class2_only: 0,
        e_positive_failures: Vec::new(),
        palindromic_failures: Vec::new(),
        unimodal_conjecture_failures: Vec::new(),
    };
    for v in verdicts {
        let in_class1 = v
            .class_tags
            .iter()
            .any(|t| matches!(t, ClassTag::EposClass1 { .. }));
        let in_class2 = v
            .class_tags
            .iter()
            .any(|t| matches!(t, ClassTag::EposClass2 { .. }));
        if in_class1 {
            census.class1 += 1;
        }
        if in_class2 && !in_class1 {
            census.class2_only += 1;
        }
        let name = || {
            let m: Vec<String> = v.m.iter().map(|x| x.to_string()).collect();
            m.join(",")
        };
        if !v.e_positive {
            census.e_positive_failures.push(name());
        }
        if !v.palindromic {
            census.palindromic_failures.push(name());
        }
        if !v.unimodal_conjecture {
            census.unimodal_conjecture_failures.push(name());
        }
    }
    census
}
