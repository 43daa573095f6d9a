//! Brute-force ground truth by truth-table enumeration.
//!
//! Nothing here reads probabilities off a BDD: measures are tallied directly
//! from assignment counts. Under uniform weights the tallies are exact integer
//! counts and become floating point only at the entropy step.

use std::collections::{HashMap, HashSet};
use std::ops::{AddAssign, Sub};

use itertools::Itertools;
use thiserror::Error;

use crate::bdd::{BddError, BddManager, NodeRef, VarId, MAX_TRUTH_VECTOR_VARS};
use crate::measures::{Counts, MeasureReport, SetEntropy, VarMeasure, VarProbabilities};
use crate::par::{self, Execution};

/// Largest variable count accepted by [`best_order_exhaustive`].
pub const MAX_ORDER_SEARCH_VARS: usize = 8;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error("{n} variables exceed the oracle limit of {max}")]
    TooManyVars { n: usize, max: usize },
    #[error("truth table has {len} entries, expected 2^{n}")]
    BadLength { len: usize, n: usize },
    #[error("invalid truth table character {0:?}")]
    BadChar(char),
    #[error("tables disagree on variable count")]
    Mismatched,
    #[error(transparent)]
    Bdd(#[from] BddError),
}

/// `bits[i]` is the value on the assignment whose binary digits are
/// `(x_0, …, x_{n-1})`, `x_0` most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    bits: Vec<bool>,
}

impl TruthTable {
    pub fn new(n: usize, bits: Vec<bool>) -> Result<Self, OracleError> {
        if n > MAX_TRUTH_VECTOR_VARS {
            return Err(OracleError::TooManyVars {
                n,
                max: MAX_TRUTH_VECTOR_VARS,
            });
        }
        if bits.len() != 1 << n {
            return Err(OracleError::BadLength { len: bits.len(), n });
        }
        Ok(TruthTable { n, bits })
    }

    /// Parses a `0`/`1` string whose length is a power of two.
    pub fn parse(s: &str) -> Result<Self, OracleError> {
        let bits = s
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                c => Err(OracleError::BadChar(c)),
            })
            .collect::<Result<Vec<_>, _>>()?;
        if !bits.len().is_power_of_two() {
            return Err(OracleError::BadLength {
                len: bits.len(),
                n: bits.len().ilog2() as usize,
            });
        }
        TruthTable::new(bits.len().ilog2() as usize, bits)
    }

    /// Table of `index` read as `2^n` bits, low bit first.
    pub fn from_index(n: usize, index: u64) -> Self {
        assert!(n <= 6);
        let bits = (0..1usize << n).map(|i| index >> i & 1 == 1).collect();
        TruthTable { n, bits }
    }

    pub fn num_vars(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits[i]
    }

    /// Value of variable `x` in assignment `i`.
    pub fn var_bit(&self, i: usize, x: usize) -> bool {
        i >> (self.n - 1 - x) & 1 == 1
    }

    /// `k`: the number of assignments.
    pub fn total(&self) -> u64 {
        self.bits.len() as u64
    }

    /// `k|f=1`.
    pub fn ones(&self) -> u64 {
        self.bits.iter().filter(|&&b| b).count() as u64
    }

    /// Fresh BDD of this table under `order`, with the result registered as a root.
    pub fn to_bdd(&self, order: &[VarId]) -> Result<(BddManager, NodeRef), OracleError> {
        let mut m = BddManager::with_order(order)?;
        let f = m.build_from_truth_vector(&self.bits)?;
        m.register_root(f)?;
        Ok((m, f))
    }
}

impl std::fmt::Display for TruthTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for &b in &self.bits {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

/// Evaluates `root` on every assignment.
pub fn enumerate(mgr: &BddManager, root: NodeRef) -> Result<TruthTable, OracleError> {
    let n = mgr.num_vars();
    if n > MAX_TRUTH_VECTOR_VARS {
        return Err(OracleError::TooManyVars {
            n,
            max: MAX_TRUTH_VECTOR_VARS,
        });
    }
    let mut assignment = vec![false; n];
    let mut bits = Vec::with_capacity(1 << n);
    for i in 0..1usize << n {
        for (x, a) in assignment.iter_mut().enumerate() {
            *a = i >> (n - 1 - x) & 1 == 1;
        }
        bits.push(mgr.eval(root, &assignment)?);
    }
    Ok(TruthTable { n, bits })
}

trait Mass: Copy + Default + AddAssign + Sub<Output = Self> + PartialOrd {
    fn to_f64(self) -> f64;
}

impl Mass for u64 {
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Mass for f64 {
    fn to_f64(self) -> f64 {
        self
    }
}

/// `(group mass, group mass with f=1)` for every assignment to `vars`.
fn tally<M: Mass>(tt: &TruthTable, vars: &[usize], weight: &impl Fn(usize) -> M) -> Vec<(M, M)> {
    let mut groups = vec![(M::default(), M::default()); 1 << vars.len()];
    for i in 0..tt.bits.len() {
        let g = vars.iter().fold(0usize, |g, &x| (g << 1) | tt.var_bit(i, x) as usize);
        let w = weight(i);
        groups[g].0 += w;
        if tt.bits[i] {
            groups[g].1 += w;
        }
    }
    groups
}

/// `-Σ p(f=b, S=a)·log2 p(f=b | S=a)` over a tally normalized by `norm`.
fn conditional_entropy_of<M: Mass>(groups: &[(M, M)], norm: f64) -> f64 {
    let mut h = 0.0;
    for &(total, ones) in groups {
        let total_f = total.to_f64();
        for c in [ones, total - ones] {
            let c = c.to_f64();
            if c > 0.0 {
                h += c / norm * (total_f / c).log2();
            }
        }
    }
    h
}

fn measures_from<M: Mass>(
    tt: &TruthTable,
    norm: f64,
    weight: impl Fn(usize) -> M,
    w: &VarProbabilities,
    given: Option<&[VarId]>,
) -> MeasureReport {
    let all = tally(tt, &[], &weight);
    let sat = all[0].1.to_f64() / norm;
    let h = conditional_entropy_of(&all, norm);
    let vars = (0..tt.n)
        .map(|x| {
            let groups = tally(tt, &[x], &weight);
            let joint = [groups[0].1.to_f64() / norm, groups[1].1.to_f64() / norm];
            let conditional = [0, 1].map(|b| {
                let total = groups[b].0.to_f64();
                (total > 0.0 && w.p(VarId::from(x), b == 1) > 0.0).then(|| groups[b].1.to_f64() / total)
            });
            let cond_entropy = conditional_entropy_of(&groups, norm);
            VarMeasure {
                var: VarId::from(x),
                joint,
                conditional,
                cond_entropy,
                mutual_information: h - cond_entropy,
            }
        })
        .collect();
    let set_entropy = given.map(|set| {
        let mut idx: Vec<usize> = set.iter().map(|v| v.index()).collect();
        idx.sort_unstable();
        idx.dedup();
        SetEntropy {
            vars: set.to_vec(),
            bits: conditional_entropy_of(&tally(tt, &idx, &weight), norm),
        }
    });
    MeasureReport {
        sat,
        entropy: h,
        vars,
        set_entropy,
        counts: Some(Counts {
            total: tt.total(),
            ones: tt.ones(),
        }),
    }
}

/// Every measure of the table, computed from assignment tallies.
pub fn exact_measures(tt: &TruthTable, w: &VarProbabilities, given: Option<&[VarId]>) -> MeasureReport {
    assert_eq!(w.len(), tt.n, "weights must cover every variable");
    if w.is_uniform() {
        measures_from(tt, tt.total() as f64, |_| 1u64, w, given)
    } else {
        let n = tt.n;
        let weight = |i: usize| -> f64 { (0..n).map(|x| w.p(VarId::from(x), i >> (n - 1 - x) & 1 == 1)).product() };
        measures_from(tt, 1.0, weight, w, given)
    }
}

/// Size-minimizing order over all `n!` permutations for a single function.
pub fn best_order_exhaustive(tt: &TruthTable) -> Result<(Vec<VarId>, usize), OracleError> {
    best_order_exhaustive_multi(std::slice::from_ref(tt), Execution::default())
}

/// Shared-size-minimizing order for several functions over the same inputs,
/// found by scoring all `n!` orders. Ties go to the lexicographically smallest
/// order.
pub fn best_order_exhaustive_multi(tables: &[TruthTable], exec: Execution) -> Result<(Vec<VarId>, usize), OracleError> {
    let n = tables.first().map_or(0, |t| t.n);
    if tables.iter().any(|t| t.n != n) {
        return Err(OracleError::Mismatched);
    }
    if n > MAX_ORDER_SEARCH_VARS {
        return Err(OracleError::TooManyVars {
            n,
            max: MAX_ORDER_SEARCH_VARS,
        });
    }
    let counts = level_counts(tables, n, exec);
    let orders: Vec<Vec<VarId>> = (0..n).map(VarId::from).permutations(n).collect();
    let sizes = par::map(exec, &orders, |order| {
        let mut mask = 0usize;
        let mut size = 0;
        for v in order {
            size += counts[mask * n + v.index()];
            mask |= 1 << v.index();
        }
        size
    });
    let best = sizes.iter().position_min().expect("at least one order");
    Ok((orders[best].clone(), sizes[best]))
}

/// `counts[s * n + v]` is the number of distinct subfunctions, obtained by
/// fixing the variables in bitmask `s`, that still depend on `v`. In a reduced
/// diagram these are exactly the nodes labelled `v` when the variables of `s`
/// are the ones above it, so an order's size is a sum of `n` entries.
fn level_counts(tables: &[TruthTable], n: usize, exec: Execution) -> Vec<usize> {
    let per_mask = par::map_range(exec, 1 << n, |s| {
        // Bit position of variable x in an assignment index.
        let pos = |x: usize| n - 1 - x;
        let fixed: usize = (0..n).filter(|&x| s >> x & 1 == 1).map(|x| 1 << pos(x)).sum();
        let free: Vec<usize> = (0..n).filter(|&x| s >> x & 1 == 0).collect();
        let mut distinct: HashSet<Vec<bool>> = HashSet::new();
        for t in tables {
            let mut groups: HashMap<usize, Vec<bool>> = HashMap::new();
            for (i, &b) in t.bits.iter().enumerate() {
                groups.entry(i & fixed).or_default().push(b);
            }
            distinct.extend(groups.into_values());
        }
        // Within a group, free variables keep their relative significance.
        (0..n)
            .map(|v| match free.iter().position(|&x| x == v) {
                None => 0,
                Some(r) => {
                    let bit = 1 << (free.len() - 1 - r);
                    distinct
                        .iter()
                        .filter(|g| (0..g.len()).any(|j| j & bit == 0 && g[j] != g[j | bit]))
                        .count()
                }
            })
            .collect::<Vec<usize>>()
    });
    per_mask.into_iter().flatten().collect()
}

/// Shared node count of `tables` built under `order`.
pub fn size_under(tables: &[TruthTable], order: &[VarId]) -> Result<usize, OracleError> {
    let mut m = BddManager::with_order(order)?;
    let roots = tables
        .iter()
        .map(|t| m.build_from_truth_vector(&t.bits))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(m.count_nodes(&roots))
}

/// One disagreement between a BDD-derived and an enumeration-derived report.
#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub quantity: String,
    pub bdd: Option<f64>,
    pub oracle: Option<f64>,
}

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: bdd={:?} oracle={:?}", self.quantity, self.bdd, self.oracle)
    }
}

/// Every quantity of `bdd` that differs from `oracle` by more than `tol`.
pub fn compare_reports(bdd: &MeasureReport, oracle: &MeasureReport, tol: f64) -> Vec<Mismatch> {
    let mut out = Vec::new();
    let mut check = |quantity: String, a: Option<f64>, b: Option<f64>| {
        let ok = match (a, b) {
            (Some(a), Some(b)) => (a - b).abs() <= tol,
            (None, None) => true,
            _ => false,
        };
        if !ok {
            out.push(Mismatch {
                quantity,
                bdd: a,
                oracle: b,
            });
        }
    };
    check("p(f=1)".into(), Some(bdd.sat), Some(oracle.sat));
    check("H(f)".into(), Some(bdd.entropy), Some(oracle.entropy));
    if bdd.vars.len() != oracle.vars.len() {
        check(
            "variable count".into(),
            Some(bdd.vars.len() as f64),
            Some(oracle.vars.len() as f64),
        );
        return out;
    }
    for (a, b) in bdd.vars.iter().zip(&oracle.vars) {
        let x = a.var.0;
        for v in 0..2 {
            check(format!("p(f=1,x{x}={v})"), Some(a.joint[v]), Some(b.joint[v]));
            check(format!("p(f=1|x{x}={v})"), a.conditional[v], b.conditional[v]);
        }
        check(format!("H(f|x{x})"), Some(a.cond_entropy), Some(b.cond_entropy));
        check(
            format!("I(f;x{x})"),
            Some(a.mutual_information),
            Some(b.mutual_information),
        );
    }
    match (&bdd.set_entropy, &oracle.set_entropy) {
        (Some(a), Some(b)) => check("H(f|S)".into(), Some(a.bits), Some(b.bits)),
        (None, None) => {}
        (a, b) => check("H(f|S)".into(), a.as_ref().map(|s| s.bits), b.as_ref().map(|s| s.bits)),
    }
    out
}
