//! Output probabilities and Shannon information measures computed on a BDD.
//!
//! Every node carries the probability that its subfunction evaluates to 1
//! under independent input weights: `p(v) = p(x=0)·p(lo) + p(x=1)·p(hi)` with
//! `p(1) = 1` and `p(0) = 0` at the leaves. A second, top-down pass assigns each
//! node the probability mass of the root-to-node paths (`reach`). Together the
//! two passes yield every per-variable joint and conditional probability of
//! the output without further traversals.
//!
//! Both recursions skip levels silently, which is only correct because each
//! variable's weight pair sums to 1; [`VarProbabilities`] enforces that.

use std::collections::HashMap;

use thiserror::Error;

use crate::bdd::{BddError, BddManager, NodeRef, VarId};

/// Allowed deviation of `p(x=0) + p(x=1)` from 1.
pub const WEIGHT_SUM_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MeasureError {
    #[error("weights for variable {var} sum to {sum}, expected 1")]
    WeightSum { var: u32, sum: f64 },
    #[error("weight for variable {var} is outside [0, 1]")]
    WeightRange { var: u32 },
    #[error("weights cover {got} variables, manager has {expected}")]
    WeightCount { expected: usize, got: usize },
    #[error(transparent)]
    Bdd(#[from] BddError),
}

/// Independent input distribution: `(p(x=0), p(x=1))` per variable.
#[derive(Clone, Debug, PartialEq)]
pub struct VarProbabilities {
    pairs: Vec<(f64, f64)>,
}

impl VarProbabilities {
    pub fn uniform(n: usize) -> Self {
        VarProbabilities {
            pairs: vec![(0.5, 0.5); n],
        }
    }

    pub fn from_pairs(pairs: Vec<(f64, f64)>) -> Result<Self, MeasureError> {
        for (i, &(p0, p1)) in pairs.iter().enumerate() {
            check_pair(i as u32, p0, p1)?;
        }
        Ok(VarProbabilities { pairs })
    }

    /// Sets `p(x=1) = p1` and `p(x=0) = 1 - p1`.
    pub fn with_one_probability(mut self, var: VarId, p1: f64) -> Result<Self, MeasureError> {
        self.set(var, 1.0 - p1, p1)?;
        Ok(self)
    }

    pub fn set(&mut self, var: VarId, p0: f64, p1: f64) -> Result<(), MeasureError> {
        check_pair(var.0, p0, p1)?;
        match self.pairs.get_mut(var.index()) {
            Some(pair) => {
                *pair = (p0, p1);
                Ok(())
            }
            None => Err(MeasureError::WeightCount {
                expected: var.index() + 1,
                got: self.pairs.len(),
            }),
        }
    }

    /// Copy with `var` forced to `value`.
    pub fn forced(&self, var: VarId, value: bool) -> Self {
        let mut out = self.clone();
        out.pairs[var.index()] = if value { (0.0, 1.0) } else { (1.0, 0.0) };
        out
    }

    pub fn get(&self, var: VarId) -> (f64, f64) {
        self.pairs[var.index()]
    }

    pub fn p(&self, var: VarId, value: bool) -> f64 {
        let (p0, p1) = self.pairs[var.index()];
        if value {
            p1
        } else {
            p0
        }
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn is_uniform(&self) -> bool {
        self.pairs.iter().all(|&(p0, p1)| p0 == 0.5 && p1 == 0.5)
    }

    fn check_for(&self, mgr: &BddManager) -> Result<(), MeasureError> {
        if self.pairs.len() != mgr.num_vars() {
            return Err(MeasureError::WeightCount {
                expected: mgr.num_vars(),
                got: self.pairs.len(),
            });
        }
        Ok(())
    }
}

fn check_pair(var: u32, p0: f64, p1: f64) -> Result<(), MeasureError> {
    if !(0.0..=1.0).contains(&p0) || !(0.0..=1.0).contains(&p1) {
        return Err(MeasureError::WeightRange { var });
    }
    let sum = p0 + p1;
    if (sum - 1.0).abs() > WEIGHT_SUM_TOLERANCE {
        return Err(MeasureError::WeightSum { var, sum });
    }
    Ok(())
}

/// `-p·log2 p - (1-p)·log2(1-p)` with `0·log 0 = 0`.
pub fn binary_entropy(p: f64) -> f64 {
    let p = p.clamp(0.0, 1.0);
    let term = |q: f64| if q > 0.0 { -q * q.log2() } else { 0.0 };
    term(p) + term(1.0 - p)
}

/// Per-node satisfaction probabilities for the reachable part of one or more roots.
struct SatTable {
    /// Reachable internal nodes, parents before children.
    nodes: Vec<NodeRef>,
    index: HashMap<NodeRef, usize>,
    sat: Vec<f64>,
}

impl SatTable {
    fn build(mgr: &BddManager, roots: &[NodeRef], w: &VarProbabilities) -> Result<Self, MeasureError> {
        w.check_for(mgr)?;
        let nodes = mgr.reachable(roots);
        let index: HashMap<NodeRef, usize> = nodes.iter().enumerate().map(|(i, &r)| (r, i)).collect();
        let mut table = SatTable {
            sat: vec![0.0; nodes.len()],
            nodes,
            index,
        };
        for i in (0..table.nodes.len()).rev() {
            let node = mgr.node(table.nodes[i])?.expect("reachable nodes are internal");
            let (p0, p1) = w.get(node.var);
            table.sat[i] = p0 * table.of(node.lo) + p1 * table.of(node.hi);
        }
        Ok(table)
    }

    fn of(&self, r: NodeRef) -> f64 {
        if r.is_one() {
            1.0
        } else if r.is_zero() {
            0.0
        } else {
            self.sat[self.index[&r]]
        }
    }
}

/// Top-down path masses over `table.nodes`, seeded with `seeds`. Terminal
/// masses are returned separately as `(zero, one)`.
fn propagate_reach(
    mgr: &BddManager,
    table: &SatTable,
    seeds: &[(NodeRef, f64)],
    w: &VarProbabilities,
) -> Result<(Vec<f64>, [f64; 2]), MeasureError> {
    let mut reach = vec![0.0; table.nodes.len()];
    let mut terminals = [0.0; 2];
    let mut add = |reach: &mut Vec<f64>, r: NodeRef, mass: f64| {
        if r.is_terminal() {
            terminals[r.is_one() as usize] += mass;
        } else {
            reach[table.index[&r]] += mass;
        }
    };
    for &(r, mass) in seeds {
        add(&mut reach, r, mass);
    }
    for i in 0..table.nodes.len() {
        if reach[i] == 0.0 {
            continue;
        }
        let node = mgr.node(table.nodes[i])?.expect("reachable nodes are internal");
        let (p0, p1) = w.get(node.var);
        let mass = reach[i];
        add(&mut reach, node.lo, mass * p0);
        add(&mut reach, node.hi, mass * p1);
    }
    Ok((reach, terminals))
}

/// Probability that `root` evaluates to 1 under `w`.
pub fn weighted_sat_probability(mgr: &BddManager, root: NodeRef, w: &VarProbabilities) -> Result<f64, MeasureError> {
    let table = SatTable::build(mgr, &[root], w)?;
    Ok(table.of(root))
}

/// Path mass from `root` to every reachable node, terminals included.
pub fn reach_probabilities(
    mgr: &BddManager,
    root: NodeRef,
    w: &VarProbabilities,
) -> Result<HashMap<NodeRef, f64>, MeasureError> {
    let table = SatTable::build(mgr, &[root], w)?;
    let (reach, [zero, one]) = propagate_reach(mgr, &table, &[(root, 1.0)], w)?;
    let mut out: HashMap<NodeRef, f64> = table.nodes.iter().copied().zip(reach).collect();
    if !root.is_terminal() {
        out.insert(mgr.zero(), zero);
        out.insert(mgr.one(), one);
    } else {
        out.insert(root, 1.0);
    }
    Ok(out)
}

/// Joint and conditional output probabilities with respect to one variable.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VarProbability {
    /// `p(f=1, x=b)` indexed by `b`.
    pub joint: [f64; 2],
    /// `p(f=1 | x=b)`, `None` when `p(x=b) = 0`.
    pub conditional: [Option<f64>; 2],
}

#[derive(Clone, Debug)]
pub struct ProbabilityProfile {
    /// `p(f=1)`.
    pub sat: f64,
    /// Indexed by variable.
    pub vars: Vec<VarProbability>,
    /// Path mass of every reachable node and both terminals.
    pub reach: HashMap<NodeRef, f64>,
}

impl ProbabilityProfile {
    pub fn joint(&self, var: VarId, value: bool) -> f64 {
        self.vars[var.index()].joint[value as usize]
    }

    pub fn conditional(&self, var: VarId, value: bool) -> Option<f64> {
        self.vars[var.index()].conditional[value as usize]
    }

    /// `H(f|x) = Σ_b p(x=b)·h(p(f=1|x=b))`.
    pub fn conditional_entropy(&self, var: VarId, w: &VarProbabilities) -> f64 {
        [false, true]
            .iter()
            .map(|&b| match self.conditional(var, b) {
                Some(p) => w.p(var, b) * binary_entropy(p),
                None => 0.0,
            })
            .sum()
    }
}

/// All per-variable joint and conditional probabilities from one bottom-up
/// and one top-down pass.
pub fn all_joint_probabilities(
    mgr: &BddManager,
    root: NodeRef,
    w: &VarProbabilities,
) -> Result<ProbabilityProfile, MeasureError> {
    let table = SatTable::build(mgr, &[root], w)?;
    let (reach, [zero, one]) = propagate_reach(mgr, &table, &[(root, 1.0)], w)?;
    let sat = table.of(root);
    let n = mgr.num_vars();

    // Per variable: Σ reach·sat(v), Σ reach·sat(lo), Σ reach·sat(hi) over nodes labeled x.
    let mut through = vec![0.0; n];
    let mut via_lo = vec![0.0; n];
    let mut via_hi = vec![0.0; n];
    for (i, &r) in table.nodes.iter().enumerate() {
        let node = mgr.node(r)?.expect("reachable nodes are internal");
        let x = node.var.index();
        through[x] += reach[i] * table.sat[i];
        via_lo[x] += reach[i] * table.of(node.lo);
        via_hi[x] += reach[i] * table.of(node.hi);
    }
    let vars = (0..n)
        .map(|x| {
            let (p0, p1) = w.get(VarId::from(x));
            // Paths that skip x carry it with its ambient distribution.
            let skipped = sat - through[x];
            let joint = [p0 * (via_lo[x] + skipped), p1 * (via_hi[x] + skipped)];
            let conditional = [(p0 > 0.0).then(|| joint[0] / p0), (p1 > 0.0).then(|| joint[1] / p1)];
            VarProbability { joint, conditional }
        })
        .collect();

    let mut reach_map: HashMap<NodeRef, f64> = table.nodes.iter().copied().zip(reach).collect();
    if root.is_terminal() {
        reach_map.insert(root, 1.0);
    } else {
        reach_map.insert(mgr.zero(), zero);
        reach_map.insert(mgr.one(), one);
    }
    Ok(ProbabilityProfile {
        sat,
        vars,
        reach: reach_map,
    })
}

/// `H(f)` in bits.
pub fn entropy(mgr: &BddManager, root: NodeRef, w: &VarProbabilities) -> Result<f64, MeasureError> {
    Ok(binary_entropy(weighted_sat_probability(mgr, root, w)?))
}

/// `H(f|x) = p(x=0)·H(f|x=0) + p(x=1)·H(f|x=1)`, using the two cofactors.
pub fn conditional_entropy_var(
    mgr: &mut BddManager,
    root: NodeRef,
    x: VarId,
    w: &VarProbabilities,
) -> Result<f64, MeasureError> {
    w.check_for(mgr)?;
    let f0 = mgr.cofactor(root, x, false)?;
    let f1 = mgr.cofactor(root, x, true)?;
    let (p0, p1) = w.get(x);
    Ok(p0 * entropy(mgr, f0, w)? + p1 * entropy(mgr, f1, w)?)
}

/// `H(f|x)` for every variable at once, read off [`all_joint_probabilities`]
/// without building cofactors.
pub fn conditional_entropies(mgr: &BddManager, root: NodeRef, w: &VarProbabilities) -> Result<Vec<f64>, MeasureError> {
    let profile = all_joint_probabilities(mgr, root, w)?;
    Ok((0..mgr.num_vars())
        .map(|x| profile.conditional_entropy(VarId::from(x), w))
        .collect())
}

/// `H(f|S)`: the weighted average of `H(f|S=a)` over all assignments `a` to `S`.
pub fn conditional_entropy_set(
    mgr: &mut BddManager,
    root: NodeRef,
    set: &[VarId],
    w: &VarProbabilities,
) -> Result<f64, MeasureError> {
    w.check_for(mgr)?;
    let mut vars = set.to_vec();
    vars.sort();
    vars.dedup();
    let mut memo = HashMap::new();
    set_entropy_rec(mgr, root, &vars, w, &mut memo)
}

fn set_entropy_rec(
    mgr: &mut BddManager,
    f: NodeRef,
    vars: &[VarId],
    w: &VarProbabilities,
    memo: &mut HashMap<(NodeRef, usize), f64>,
) -> Result<f64, MeasureError> {
    if f.is_terminal() {
        return Ok(0.0);
    }
    let Some((&x, rest)) = vars.split_first() else {
        return entropy(mgr, f, w);
    };
    if let Some(&h) = memo.get(&(f, vars.len())) {
        return Ok(h);
    }
    let (p0, p1) = w.get(x);
    let mut h = 0.0;
    for (value, p) in [(false, p0), (true, p1)] {
        if p > 0.0 {
            let g = mgr.cofactor(f, x, value)?;
            h += p * set_entropy_rec(mgr, g, rest, w, memo)?;
        }
    }
    memo.insert((f, vars.len()), h);
    Ok(h)
}

/// `I(f;x) = H(f) - H(f|x)`.
pub fn mutual_information(
    mgr: &mut BddManager,
    root: NodeRef,
    x: VarId,
    w: &VarProbabilities,
) -> Result<f64, MeasureError> {
    Ok(entropy(mgr, root, w)? - conditional_entropy_var(mgr, root, x, w)?)
}

/// `H(f | prefix ∪ {x})` for every variable `x` below `prefix_levels`, where
/// the levels `0..prefix_levels` hold the conditioning prefix.
///
/// Each subfunction hanging below the prefix is weighted by the mass of the
/// prefix paths leading to it; terminals reached inside the prefix contribute
/// nothing. Returned as `(var, bits)` in level order.
pub fn prefix_conditional_entropies(
    mgr: &BddManager,
    root: NodeRef,
    prefix_levels: usize,
    w: &VarProbabilities,
) -> Result<Vec<(VarId, f64)>, MeasureError> {
    let n = mgr.num_vars();
    let candidates: Vec<VarId> = (prefix_levels..n).map(|l| mgr.var_at_level(l)).collect();
    let table = SatTable::build(mgr, &[root], w)?;

    // Mass entering each subfunction rooted at or below `prefix_levels`.
    let mut frontier: Vec<(NodeRef, f64)> = Vec::new();
    let mut frontier_index: HashMap<NodeRef, usize> = HashMap::new();
    let mut enter = |r: NodeRef, mass: f64| {
        if r.is_terminal() || mass == 0.0 {
            return;
        }
        let i = *frontier_index.entry(r).or_insert_with(|| {
            frontier.push((r, 0.0));
            frontier.len() - 1
        });
        frontier[i].1 += mass;
    };
    if mgr.level(root) >= prefix_levels {
        enter(root, 1.0);
    } else {
        let (reach, _) = propagate_reach(mgr, &table, &[(root, 1.0)], w)?;
        for (i, &r) in table.nodes.iter().enumerate() {
            if mgr.level(r) >= prefix_levels {
                break;
            }
            let node = mgr.node(r)?.expect("reachable nodes are internal");
            let (p0, p1) = w.get(node.var);
            for (child, p) in [(node.lo, p0), (node.hi, p1)] {
                if mgr.level(child) >= prefix_levels {
                    enter(child, reach[i] * p);
                }
            }
        }
    }

    let mut scores = vec![0.0; candidates.len()];
    for &(g, mass) in &frontier {
        let profile = all_joint_probabilities(mgr, g, w)?;
        for (score, &x) in scores.iter_mut().zip(&candidates) {
            *score += mass * profile.conditional_entropy(x, w);
        }
    }
    Ok(candidates.into_iter().zip(scores).collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct VarMeasure {
    pub var: VarId,
    pub joint: [f64; 2],
    pub conditional: [Option<f64>; 2],
    /// `H(f|x)` in bits.
    pub cond_entropy: f64,
    /// `I(f;x)` in bits.
    pub mutual_information: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SetEntropy {
    pub vars: Vec<VarId>,
    pub bits: f64,
}

/// Assignment counts behind an enumeration-derived report.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Counts {
    /// Total assignments `k`.
    pub total: u64,
    /// Assignments with `f = 1`.
    pub ones: u64,
}

/// Information measures of one output.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasureReport {
    pub sat: f64,
    /// `H(f)` in bits.
    pub entropy: f64,
    pub vars: Vec<VarMeasure>,
    pub set_entropy: Option<SetEntropy>,
    pub counts: Option<Counts>,
}

impl MeasureReport {
    pub fn var(&self, x: VarId) -> &VarMeasure {
        &self.vars[x.index()]
    }
}

/// Full report for `root`, with `H(f|x)` from cofactors and, when `given` is
/// set, `H(f|given)`.
pub fn measure_report(
    mgr: &mut BddManager,
    root: NodeRef,
    w: &VarProbabilities,
    given: Option<&[VarId]>,
) -> Result<MeasureReport, MeasureError> {
    let profile = all_joint_probabilities(mgr, root, w)?;
    let h = binary_entropy(profile.sat);
    let mut vars = Vec::with_capacity(mgr.num_vars());
    for x in 0..mgr.num_vars() {
        let var = VarId::from(x);
        let cond_entropy = conditional_entropy_var(mgr, root, var, w)?;
        vars.push(VarMeasure {
            var,
            joint: profile.vars[x].joint,
            conditional: profile.vars[x].conditional,
            cond_entropy,
            mutual_information: h - cond_entropy,
        });
    }
    let set_entropy = match given {
        Some(set) => Some(SetEntropy {
            vars: set.to_vec(),
            bits: conditional_entropy_set(mgr, root, set, w)?,
        }),
        None => None,
    };
    Ok(MeasureReport {
        sat: profile.sat,
        entropy: h,
        vars,
        set_entropy,
        counts: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    const X1: VarId = VarId(0);
    const X2: VarId = VarId(1);
    const X3: VarId = VarId(2);

    fn example() -> (BddManager, NodeRef) {
        let mut m = BddManager::new(3);
        let bits: Vec<bool> = "10001111".chars().map(|c| c == '1').collect();
        let f = m.build_from_truth_vector(&bits).unwrap();
        (m, f)
    }

    #[test]
    fn weights_must_sum_to_one() {
        assert!(matches!(
            VarProbabilities::from_pairs(vec![(0.5, 0.5), (0.3, 0.3)]),
            Err(MeasureError::WeightSum { var: 1, .. })
        ));
        assert!(matches!(
            VarProbabilities::from_pairs(vec![(1.5, -0.5)]),
            Err(MeasureError::WeightRange { var: 0 })
        ));
        let mut w = VarProbabilities::uniform(2);
        assert!(w.set(VarId(0), 0.25, 0.75).is_ok());
        assert!(w.set(VarId(0), 0.25, 0.5).is_err());
    }

    #[test]
    fn weight_count_must_match_manager() {
        let (m, f) = example();
        assert!(matches!(
            weighted_sat_probability(&m, f, &VarProbabilities::uniform(2)),
            Err(MeasureError::WeightCount { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn output_probability_of_example() {
        let (m, f) = example();
        let w = VarProbabilities::uniform(3);
        assert_eq!(weighted_sat_probability(&m, f, &w).unwrap(), 0.625);
        assert_eq!(weighted_sat_probability(&m, f, &w.forced(X2, false)).unwrap(), 0.75);
        assert_eq!(weighted_sat_probability(&m, f, &w.forced(X2, true)).unwrap(), 0.5);
        assert_eq!(weighted_sat_probability(&m, m.one(), &w).unwrap(), 1.0);
    }

    #[test]
    fn reach_of_example() {
        let (m, f) = example();
        let w = VarProbabilities::uniform(3);
        let reach = reach_probabilities(&m, f, &w).unwrap();
        assert_eq!(reach[&f], 1.0);
        assert_eq!(reach[&m.one()], 0.625);
        assert_eq!(reach[&m.zero()], 0.375);
        let x3_node = m.reachable(&[f]).into_iter().find(|&r| m.level(r) == 2).unwrap();
        assert_eq!(reach[&x3_node], 0.25);
    }

    #[test]
    fn joints_of_example() {
        let (m, f) = example();
        let w = VarProbabilities::uniform(3);
        let p = all_joint_probabilities(&m, f, &w).unwrap();
        assert_eq!(p.joint(X2, true), 0.25);
        assert_eq!(p.conditional(X2, true), Some(0.5));
        assert_eq!(p.conditional(X2, false), Some(0.75));
        assert_eq!(p.conditional(X1, true), Some(1.0));
        for x in 0..3 {
            let v = VarId(x);
            assert_abs_diff_eq!(p.joint(v, false) + p.joint(v, true), p.sat, epsilon = 1e-12);
        }
    }

    #[test]
    fn conditional_is_undefined_on_impossible_branch() {
        let (m, f) = example();
        let w = VarProbabilities::uniform(3).forced(X3, true);
        let p = all_joint_probabilities(&m, f, &w).unwrap();
        assert_eq!(p.conditional(X3, false), None);
        assert_eq!(p.conditional(X3, true), Some(0.5));
    }

    #[test]
    fn independent_variable_joint() {
        let mut m = BddManager::new(3);
        let a = m.var(X1).unwrap();
        let b = m.var(X2).unwrap();
        let f = m.or(a, b).unwrap();
        let w = VarProbabilities::uniform(3).with_one_probability(X3, 0.3).unwrap();
        let p = all_joint_probabilities(&m, f, &w).unwrap();
        assert_abs_diff_eq!(p.joint(X3, true), 0.3 * 0.75, epsilon = 1e-15);
        assert_abs_diff_eq!(p.joint(X3, false), 0.7 * 0.75, epsilon = 1e-15);
    }

    #[test]
    fn entropies_of_example() {
        let (mut m, f) = example();
        let w = VarProbabilities::uniform(3);
        assert_abs_diff_eq!(entropy(&m, f, &w).unwrap(), 0.954434, epsilon = 1e-6);
        assert_abs_diff_eq!(
            conditional_entropy_var(&mut m, f, X1, &w).unwrap(),
            0.405639,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            conditional_entropy_var(&mut m, f, X2, &w).unwrap(),
            0.905639,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            conditional_entropy_var(&mut m, f, X3, &w).unwrap(),
            0.905639,
            epsilon = 1e-6
        );
        assert_abs_diff_eq!(
            conditional_entropy_set(&mut m, f, &[X1, X2], &w).unwrap(),
            0.25,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(mutual_information(&mut m, f, X1, &w).unwrap(), 0.548795, epsilon = 1e-6);
    }

    #[test]
    fn two_routes_to_conditional_entropy_agree() {
        let (mut m, f) = example();
        let w = VarProbabilities::from_pairs(vec![(0.3, 0.7), (0.9, 0.1), (0.5, 0.5)]).unwrap();
        let fast = conditional_entropies(&m, f, &w).unwrap();
        for (x, h) in fast.into_iter().enumerate() {
            let slow = conditional_entropy_var(&mut m, f, VarId::from(x), &w).unwrap();
            assert_abs_diff_eq!(h, slow, epsilon = 1e-12);
        }
    }

    #[test]
    fn trivial_entropies() {
        let mut m = BddManager::new(2);
        let w = VarProbabilities::uniform(2);
        assert_eq!(entropy(&m, m.zero(), &w).unwrap(), 0.0);
        assert_eq!(entropy(&m, m.one(), &w).unwrap(), 0.0);
        let x = m.var(X1).unwrap();
        assert_eq!(entropy(&m, x, &w).unwrap(), 1.0);
        assert_eq!(conditional_entropy_var(&mut m, x, X1, &w).unwrap(), 0.0);
        assert_eq!(conditional_entropy_var(&mut m, x, X2, &w).unwrap(), 1.0);
        assert_eq!(mutual_information(&mut m, x, X1, &w).unwrap(), 1.0);
        assert_eq!(mutual_information(&mut m, x, X2, &w).unwrap(), 0.0);
        assert_eq!(conditional_entropy_set(&mut m, x, &[], &w).unwrap(), 1.0);
        assert_eq!(conditional_entropy_set(&mut m, x, &[X1, X2], &w).unwrap(), 0.0);
    }

    #[test]
    fn prefix_scores_reduce_to_conditional_entropy_at_top() {
        let (m, f) = example();
        let w = VarProbabilities::uniform(3);
        let scores = prefix_conditional_entropies(&m, f, 0, &w).unwrap();
        let direct = conditional_entropies(&m, f, &w).unwrap();
        for (x, h) in scores {
            assert_abs_diff_eq!(h, direct[x.index()], epsilon = 1e-15);
        }
    }

    #[test]
    fn prefix_scores_match_set_entropy() {
        let (mut m, f) = example();
        let w = VarProbabilities::uniform(3);
        let scores = prefix_conditional_entropies(&m, f, 1, &w).unwrap();
        for (x, h) in scores {
            let set = conditional_entropy_set(&mut m, f, &[X1, x], &w).unwrap();
            assert_abs_diff_eq!(h, set, epsilon = 1e-12);
        }
    }

    #[test]
    fn binary_entropy_edges() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert_eq!(binary_entropy(0.5), 1.0);
    }
}
