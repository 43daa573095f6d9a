//! Reduced ordered BDD manager.
//!
//! Nodes live in a single arena owned by [`BddManager`]. Every internal node is
//! one Shannon expansion `f = !x·f|x=0 + x·f|x=1`, stored as `(var, lo, hi)` and
//! interned in a per-variable unique table, so for a fixed order every Boolean
//! function has exactly one handle. There are no complement edges: the two
//! terminals are distinct nodes and negation is an ordinary cached recursion.
//!
//! The variable order is explicit (`level -> var`) and can be changed in place
//! with [`BddManager::swap_adjacent_levels`]. A swap rewrites nodes of the upper
//! variable in place, so every outstanding handle keeps denoting the same
//! function. Nodes that drop out of use are reclaimed only by an explicit
//! [`BddManager::collect_garbage`], which keeps the registered roots alive.

use std::collections::HashMap;
use std::fmt;
use std::sync::atomic::{AtomicU32, Ordering};

use thiserror::Error;

static NEXT_MANAGER_TAG: AtomicU32 = AtomicU32::new(1);

const ZERO: u32 = 0;
const ONE: u32 = 1;
const TERMINAL_VAR: u32 = u32::MAX;
const FREE_VAR: u32 = u32::MAX - 1;

/// Largest truth vector accepted by [`BddManager::build_from_truth_vector`].
pub const MAX_TRUTH_VECTOR_VARS: usize = 24;

/// Input variable index. `VarId(0)` is the first declared input.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub u32);

impl VarId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for VarId {
    fn from(i: usize) -> Self {
        VarId(i as u32)
    }
}

/// Handle to a node of one particular manager.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NodeRef {
    tag: u32,
    id: u32,
}

impl NodeRef {
    pub fn is_zero(self) -> bool {
        self.id == ZERO
    }

    pub fn is_one(self) -> bool {
        self.id == ONE
    }

    pub fn is_terminal(self) -> bool {
        self.id <= ONE
    }

    /// Raw arena index, stable until the node is garbage collected.
    pub fn raw(self) -> u32 {
        self.id
    }
}

impl fmt::Debug for NodeRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.id {
            ZERO => write!(f, "@0"),
            ONE => write!(f, "@1"),
            id => write!(f, "@n{id}"),
        }
    }
}

/// A decoded internal node.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BddNode {
    pub var: VarId,
    /// Cofactor at `var = 0`.
    pub lo: NodeRef,
    /// Cofactor at `var = 1`.
    pub hi: NodeRef,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BoolOp {
    And,
    Or,
    Xor,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BddError {
    #[error("node handle belongs to a different manager")]
    ForeignHandle,
    #[error("node handle refers to a collected node")]
    StaleHandle,
    #[error("variable {var} out of range: manager has {count} variables")]
    UnknownVariable { var: u32, count: usize },
    #[error("ordering violation: variable {var} at level {var_level} cannot sit above a child at level {child_level}")]
    OrderViolation {
        var: u32,
        var_level: usize,
        child_level: usize,
    },
    #[error("truth vector of length {len} does not match 2^{vars}")]
    BadTruthVectorLength { len: usize, vars: usize },
    #[error("level {level} cannot be swapped with its successor: manager has {count} levels")]
    LevelOutOfRange { level: usize, count: usize },
    #[error("variable order is not a permutation of 0..{0}")]
    InvalidOrder(usize),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Slot {
    var: u32,
    lo: u32,
    hi: u32,
}

#[derive(Clone, Debug)]
pub struct BddManager {
    tag: u32,
    nodes: Vec<Slot>,
    free: Vec<u32>,
    order: Vec<VarId>,
    level_of: Vec<usize>,
    unique: Vec<HashMap<(u32, u32), u32>>,
    apply_cache: HashMap<(BoolOp, u32, u32), u32>,
    not_cache: HashMap<u32, u32>,
    roots: Vec<NodeRef>,
}

impl BddManager {
    /// Manager over `n` variables with the identity order.
    pub fn new(n: usize) -> Self {
        let terminal = Slot {
            var: TERMINAL_VAR,
            lo: ZERO,
            hi: ZERO,
        };
        BddManager {
            tag: NEXT_MANAGER_TAG.fetch_add(1, Ordering::Relaxed),
            nodes: vec![terminal, terminal],
            free: Vec::new(),
            order: (0..n).map(VarId::from).collect(),
            level_of: (0..n).collect(),
            unique: vec![HashMap::new(); n],
            apply_cache: HashMap::new(),
            not_cache: HashMap::new(),
            roots: Vec::new(),
        }
    }

    /// Manager whose level `i` holds `order[i]`.
    pub fn with_order(order: &[VarId]) -> Result<Self, BddError> {
        let n = order.len();
        let mut seen = vec![false; n];
        for v in order {
            if v.index() >= n || seen[v.index()] {
                return Err(BddError::InvalidOrder(n));
            }
            seen[v.index()] = true;
        }
        let mut m = BddManager::new(n);
        m.order = order.to_vec();
        for (level, v) in order.iter().enumerate() {
            m.level_of[v.index()] = level;
        }
        Ok(m)
    }

    pub fn num_vars(&self) -> usize {
        self.order.len()
    }

    /// Variable at each level, top first.
    pub fn order(&self) -> &[VarId] {
        &self.order
    }

    pub fn var_at_level(&self, level: usize) -> VarId {
        self.order[level]
    }

    pub fn level_of_var(&self, var: VarId) -> usize {
        self.level_of[var.index()]
    }

    /// Level of the node's variable; terminals sit at level `n`.
    pub fn level(&self, r: NodeRef) -> usize {
        self.level_id(r.id)
    }

    pub fn zero(&self) -> NodeRef {
        self.handle(ZERO)
    }

    pub fn one(&self) -> NodeRef {
        self.handle(ONE)
    }

    pub fn constant(&self, value: bool) -> NodeRef {
        if value {
            self.one()
        } else {
            self.zero()
        }
    }

    /// The literal `x`.
    pub fn var(&mut self, x: VarId) -> Result<NodeRef, BddError> {
        self.check_var(x)?;
        let id = self.mk(x.0, ZERO, ONE);
        Ok(self.handle(id))
    }

    /// The literal `!x`.
    pub fn nvar(&mut self, x: VarId) -> Result<NodeRef, BddError> {
        self.check_var(x)?;
        let id = self.mk(x.0, ONE, ZERO);
        Ok(self.handle(id))
    }

    /// Decodes an internal node; `None` for terminals.
    pub fn node(&self, r: NodeRef) -> Result<Option<BddNode>, BddError> {
        let id = self.check(r)?;
        if id <= ONE {
            return Ok(None);
        }
        let s = self.nodes[id as usize];
        Ok(Some(BddNode {
            var: VarId(s.var),
            lo: self.handle(s.lo),
            hi: self.handle(s.hi),
        }))
    }

    /// Interns `(var, lo, hi)`, applying the reduction rule.
    pub fn mk_node(&mut self, var: VarId, lo: NodeRef, hi: NodeRef) -> Result<NodeRef, BddError> {
        self.check_var(var)?;
        let lo = self.check(lo)?;
        let hi = self.check(hi)?;
        let var_level = self.level_of[var.index()];
        for child in [lo, hi] {
            let child_level = self.level_id(child);
            if child_level <= var_level {
                return Err(BddError::OrderViolation {
                    var: var.0,
                    var_level,
                    child_level,
                });
            }
        }
        let id = self.mk(var.0, lo, hi);
        Ok(self.handle(id))
    }

    pub fn apply(&mut self, op: BoolOp, a: NodeRef, b: NodeRef) -> Result<NodeRef, BddError> {
        let a = self.check(a)?;
        let b = self.check(b)?;
        let id = self.apply_rec(op, a, b);
        Ok(self.handle(id))
    }

    pub fn and(&mut self, a: NodeRef, b: NodeRef) -> Result<NodeRef, BddError> {
        self.apply(BoolOp::And, a, b)
    }

    pub fn or(&mut self, a: NodeRef, b: NodeRef) -> Result<NodeRef, BddError> {
        self.apply(BoolOp::Or, a, b)
    }

    pub fn xor(&mut self, a: NodeRef, b: NodeRef) -> Result<NodeRef, BddError> {
        self.apply(BoolOp::Xor, a, b)
    }

    pub fn negate(&mut self, a: NodeRef) -> Result<NodeRef, BddError> {
        let a = self.check(a)?;
        let id = self.not_rec(a);
        Ok(self.handle(id))
    }

    /// `a` restricted to `x = value`.
    pub fn cofactor(&mut self, a: NodeRef, x: VarId, value: bool) -> Result<NodeRef, BddError> {
        self.check_var(x)?;
        let a = self.check(a)?;
        let mut memo = HashMap::new();
        let id = self.cofactor_rec(a, x.0, self.level_of[x.index()], value, &mut memo);
        Ok(self.handle(id))
    }

    /// Builds the function whose value on assignment `i` is `bits[i]`, where the
    /// binary digits of `i` give `(x_0, …, x_{n-1})` with `x_0` most significant.
    pub fn build_from_truth_vector(&mut self, bits: &[bool]) -> Result<NodeRef, BddError> {
        let n = self.num_vars();
        if n > MAX_TRUTH_VECTOR_VARS || bits.len() != 1usize << n {
            return Err(BddError::BadTruthVectorLength {
                len: bits.len(),
                vars: n,
            });
        }
        let identity = self.order.iter().enumerate().all(|(l, v)| v.index() == l);
        let mut layer: Vec<u32> = if identity {
            bits.iter().map(|&b| if b { ONE } else { ZERO }).collect()
        } else {
            // Re-index so that the bit of the level-0 variable is most significant.
            let shifts: Vec<usize> = self.order.iter().map(|v| n - 1 - v.index()).collect();
            (0..bits.len())
                .map(|j| {
                    let mut i = 0usize;
                    for (l, s) in shifts.iter().enumerate() {
                        if j >> (n - 1 - l) & 1 == 1 {
                            i |= 1 << s;
                        }
                    }
                    if bits[i] {
                        ONE
                    } else {
                        ZERO
                    }
                })
                .collect()
        };
        for level in (0..n).rev() {
            let var = self.order[level].0;
            layer = layer
                .chunks_exact(2)
                .map(|pair| self.mk(var, pair[0], pair[1]))
                .collect();
        }
        Ok(self.handle(layer[0]))
    }

    /// Evaluates `a` on an assignment indexed by variable.
    pub fn eval(&self, a: NodeRef, assignment: &[bool]) -> Result<bool, BddError> {
        let mut id = self.check(a)?;
        while id > ONE {
            let s = self.nodes[id as usize];
            id = if assignment[s.var as usize] { s.hi } else { s.lo };
        }
        Ok(id == ONE)
    }

    /// Adds `r` to the set of roots kept alive by garbage collection and
    /// measured by [`BddManager::shared_size`].
    pub fn register_root(&mut self, r: NodeRef) -> Result<(), BddError> {
        self.check(r)?;
        if !self.roots.contains(&r) {
            self.roots.push(r);
        }
        Ok(())
    }

    pub fn roots(&self) -> &[NodeRef] {
        &self.roots
    }

    pub fn clear_roots(&mut self) {
        self.roots.clear();
    }

    /// Number of distinct internal nodes reachable from any of `roots`.
    pub fn count_nodes(&self, roots: &[NodeRef]) -> usize {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<u32> = roots.iter().filter(|r| r.tag == self.tag).map(|r| r.id).collect();
        let mut count = 0;
        while let Some(id) = stack.pop() {
            if id <= ONE || seen[id as usize] {
                continue;
            }
            seen[id as usize] = true;
            count += 1;
            let s = self.nodes[id as usize];
            stack.push(s.lo);
            stack.push(s.hi);
        }
        count
    }

    /// Shared node count of the registered roots.
    pub fn shared_size(&self) -> usize {
        self.count_nodes(&self.roots)
    }

    /// Reachable internal nodes of `roots`, sorted by level then handle, so
    /// parents always precede their children.
    pub fn reachable(&self, roots: &[NodeRef]) -> Vec<NodeRef> {
        let mut seen = vec![false; self.nodes.len()];
        let mut stack: Vec<u32> = roots.iter().filter(|r| r.tag == self.tag).map(|r| r.id).collect();
        let mut out = Vec::new();
        while let Some(id) = stack.pop() {
            if id <= ONE || seen[id as usize] {
                continue;
            }
            seen[id as usize] = true;
            out.push(id);
            let s = self.nodes[id as usize];
            stack.push(s.lo);
            stack.push(s.hi);
        }
        out.sort_by_key(|&id| (self.level_id(id), id));
        out.into_iter().map(|id| self.handle(id)).collect()
    }

    /// Reachable node count per level.
    pub fn level_profile(&self, roots: &[NodeRef]) -> Vec<usize> {
        let mut profile = vec![0; self.num_vars()];
        for r in self.reachable(roots) {
            profile[self.level(r)] += 1;
        }
        profile
    }

    /// Support of `a` as a sorted list of variables.
    pub fn support(&self, a: NodeRef) -> Vec<VarId> {
        let mut vars: Vec<VarId> = self
            .reachable(&[a])
            .into_iter()
            .map(|r| VarId(self.nodes[r.id as usize].var))
            .collect();
        vars.sort();
        vars.dedup();
        vars
    }

    /// Internal nodes currently allocated, live or dead.
    pub fn allocated_nodes(&self) -> usize {
        self.unique.iter().map(HashMap::len).sum()
    }

    /// Exchanges the variables at `level` and `level + 1`.
    ///
    /// Only nodes of the two affected variables change. Upper-variable nodes
    /// that depend on the lower variable are rewritten in place, so all handles
    /// keep their meaning. Operation caches are cleared.
    pub fn swap_adjacent_levels(&mut self, level: usize) -> Result<(), BddError> {
        let n = self.num_vars();
        if level + 1 >= n {
            return Err(BddError::LevelOutOfRange { level, count: n });
        }
        let a = self.order[level].0;
        let b = self.order[level + 1].0;
        let mut rewrite: Vec<u32> = self.unique[a as usize]
            .values()
            .copied()
            .filter(|&id| {
                let s = self.nodes[id as usize];
                self.nodes[s.lo as usize].var == b || self.nodes[s.hi as usize].var == b
            })
            .collect();
        rewrite.sort_unstable();
        for &id in &rewrite {
            let s = self.nodes[id as usize];
            self.unique[a as usize].remove(&(s.lo, s.hi));
        }
        self.order.swap(level, level + 1);
        self.level_of[a as usize] = level + 1;
        self.level_of[b as usize] = level;

        for id in rewrite {
            let s = self.nodes[id as usize];
            let (f00, f01) = self.split_on(s.lo, b);
            let (f10, f11) = self.split_on(s.hi, b);
            let lo = self.mk(a, f00, f10);
            let hi = self.mk(a, f01, f11);
            debug_assert_ne!(lo, hi);
            self.nodes[id as usize] = Slot { var: b, lo, hi };
            let previous = self.unique[b as usize].insert((lo, hi), id);
            debug_assert!(previous.is_none());
        }
        self.clear_caches();
        Ok(())
    }

    /// Frees every node not reachable from the registered roots or `extra`.
    /// Returns the number of freed nodes. Handles to freed nodes become stale.
    pub fn collect_garbage(&mut self, extra: &[NodeRef]) -> usize {
        let mut marked = vec![false; self.nodes.len()];
        let mut stack: Vec<u32> = self
            .roots
            .iter()
            .chain(extra)
            .filter(|r| r.tag == self.tag)
            .map(|r| r.id)
            .collect();
        while let Some(id) = stack.pop() {
            if id <= ONE || marked[id as usize] {
                continue;
            }
            marked[id as usize] = true;
            let s = self.nodes[id as usize];
            stack.push(s.lo);
            stack.push(s.hi);
        }
        let mut freed = Vec::new();
        for table in &mut self.unique {
            table.retain(|_, id| {
                let keep = marked[*id as usize];
                if !keep {
                    freed.push(*id);
                }
                keep
            });
        }
        freed.sort_unstable();
        for &id in &freed {
            self.nodes[id as usize].var = FREE_VAR;
        }
        let count = freed.len();
        // Lowest indices get reused first.
        freed.reverse();
        self.free.extend(freed);
        self.free.sort_unstable_by(|x, y| y.cmp(x));
        self.clear_caches();
        count
    }

    pub fn clear_caches(&mut self) {
        self.apply_cache.clear();
        self.not_cache.clear();
    }

    fn handle(&self, id: u32) -> NodeRef {
        NodeRef { tag: self.tag, id }
    }

    fn check(&self, r: NodeRef) -> Result<u32, BddError> {
        if r.tag != self.tag {
            return Err(BddError::ForeignHandle);
        }
        match self.nodes.get(r.id as usize) {
            Some(s) if s.var != FREE_VAR => Ok(r.id),
            _ => Err(BddError::StaleHandle),
        }
    }

    fn check_var(&self, x: VarId) -> Result<(), BddError> {
        if x.index() < self.num_vars() {
            Ok(())
        } else {
            Err(BddError::UnknownVariable {
                var: x.0,
                count: self.num_vars(),
            })
        }
    }

    fn level_id(&self, id: u32) -> usize {
        if id <= ONE {
            self.num_vars()
        } else {
            self.level_of[self.nodes[id as usize].var as usize]
        }
    }

    fn mk(&mut self, var: u32, lo: u32, hi: u32) -> u32 {
        if lo == hi {
            return lo;
        }
        if let Some(&id) = self.unique[var as usize].get(&(lo, hi)) {
            return id;
        }
        let slot = Slot { var, lo, hi };
        let id = match self.free.pop() {
            Some(id) => {
                self.nodes[id as usize] = slot;
                id
            }
            None => {
                self.nodes.push(slot);
                (self.nodes.len() - 1) as u32
            }
        };
        self.unique[var as usize].insert((lo, hi), id);
        id
    }

    /// Children of `id` with respect to `var`, or `(id, id)` if `id` is not labeled `var`.
    fn split_on(&self, id: u32, var: u32) -> (u32, u32) {
        let s = self.nodes[id as usize];
        if id > ONE && s.var == var {
            (s.lo, s.hi)
        } else {
            (id, id)
        }
    }

    fn apply_rec(&mut self, op: BoolOp, a: u32, b: u32) -> u32 {
        match op {
            BoolOp::And => {
                if a == ZERO || b == ZERO {
                    return ZERO;
                }
                if a == ONE || a == b {
                    return b;
                }
                if b == ONE {
                    return a;
                }
            }
            BoolOp::Or => {
                if a == ONE || b == ONE {
                    return ONE;
                }
                if a == ZERO || a == b {
                    return b;
                }
                if b == ZERO {
                    return a;
                }
            }
            BoolOp::Xor => {
                if a == b {
                    return ZERO;
                }
                if a == ZERO {
                    return b;
                }
                if b == ZERO {
                    return a;
                }
                if a == ONE {
                    return self.not_rec(b);
                }
                if b == ONE {
                    return self.not_rec(a);
                }
            }
        }
        let (a, b) = if a <= b { (a, b) } else { (b, a) };
        if let Some(&r) = self.apply_cache.get(&(op, a, b)) {
            return r;
        }
        let top = self.level_id(a).min(self.level_id(b));
        let var = self.order[top].0;
        let (a0, a1) = self.split_on(a, var);
        let (b0, b1) = self.split_on(b, var);
        let lo = self.apply_rec(op, a0, b0);
        let hi = self.apply_rec(op, a1, b1);
        let r = self.mk(var, lo, hi);
        self.apply_cache.insert((op, a, b), r);
        r
    }

    fn not_rec(&mut self, a: u32) -> u32 {
        match a {
            ZERO => return ONE,
            ONE => return ZERO,
            _ => {}
        }
        if let Some(&r) = self.not_cache.get(&a) {
            return r;
        }
        let s = self.nodes[a as usize];
        let lo = self.not_rec(s.lo);
        let hi = self.not_rec(s.hi);
        let r = self.mk(s.var, lo, hi);
        self.not_cache.insert(a, r);
        self.not_cache.insert(r, a);
        r
    }

    fn cofactor_rec(&mut self, a: u32, var: u32, var_level: usize, value: bool, memo: &mut HashMap<u32, u32>) -> u32 {
        if self.level_id(a) > var_level {
            return a;
        }
        let s = self.nodes[a as usize];
        if s.var == var {
            return if value { s.hi } else { s.lo };
        }
        if let Some(&r) = memo.get(&a) {
            return r;
        }
        let lo = self.cofactor_rec(s.lo, var, var_level, value, memo);
        let hi = self.cofactor_rec(s.hi, var, var_level, value, memo);
        let r = self.mk(s.var, lo, hi);
        memo.insert(a, r);
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Example function `!x3·!x2 + x1` over (x1, x2, x3) = VarId(0..3).
    fn example(m: &mut BddManager) -> NodeRef {
        let bits: Vec<bool> = "10001111".chars().map(|c| c == '1').collect();
        m.build_from_truth_vector(&bits).unwrap()
    }

    fn table(m: &BddManager, f: NodeRef) -> String {
        let n = m.num_vars();
        (0..1usize << n)
            .map(|i| {
                let a: Vec<bool> = (0..n).map(|v| i >> (n - 1 - v) & 1 == 1).collect();
                if m.eval(f, &a).unwrap() {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    #[test]
    fn redundant_test_is_reduced() {
        let mut m = BddManager::new(3);
        let x = m.var(VarId(2)).unwrap();
        assert_eq!(m.mk_node(VarId(0), x, x).unwrap(), x);
        let one = m.one();
        assert_eq!(m.mk_node(VarId(1), one, one).unwrap(), one);
    }

    #[test]
    fn literal_is_interned() {
        let mut m = BddManager::new(2);
        let (zero, one) = (m.zero(), m.one());
        let a = m.mk_node(VarId(0), zero, one).unwrap();
        let b = m.mk_node(VarId(0), zero, one).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, m.var(VarId(0)).unwrap());
        assert_ne!(m.zero(), m.one());
    }

    #[test]
    fn mk_node_rejects_order_violation() {
        let mut m = BddManager::new(2);
        let x0 = m.var(VarId(0)).unwrap();
        let one = m.one();
        let err = m.mk_node(VarId(1), x0, one).unwrap_err();
        assert!(matches!(err, BddError::OrderViolation { var: 1, .. }));
        assert!(m.mk_node(VarId(0), x0, one).is_err());
    }

    #[test]
    fn example_function_has_three_nodes() {
        let mut m = BddManager::new(3);
        let f = example(&mut m);
        assert_eq!(m.count_nodes(&[f]), 3);
        assert_eq!(table(&m, f), "10001111");
    }

    #[test]
    fn example_function_via_apply() {
        let mut m = BddManager::new(3);
        let nx2 = m.nvar(VarId(1)).unwrap();
        let nx3 = m.nvar(VarId(2)).unwrap();
        let x1 = m.var(VarId(0)).unwrap();
        let t = m.and(nx3, nx2).unwrap();
        let f = m.or(t, x1).unwrap();
        assert_eq!(table(&m, f), "10001111");
        assert_eq!(f, example(&mut m));
    }

    #[test]
    fn apply_identities() {
        let mut m = BddManager::new(3);
        let f = example(&mut m);
        let one = m.one();
        assert_eq!(m.and(f, one).unwrap(), f);
        assert_eq!(m.xor(f, f).unwrap(), m.zero());
        let nf = m.negate(f).unwrap();
        assert_eq!(m.or(f, nf).unwrap(), one);
        assert_eq!(m.xor(f, one).unwrap(), nf);
    }

    #[test]
    fn negation_is_an_involution() {
        let mut m = BddManager::new(3);
        let zero = m.zero();
        assert_eq!(m.negate(zero).unwrap(), m.one());
        let f = example(&mut m);
        let nf = m.negate(f).unwrap();
        assert_eq!(table(&m, nf), "01110000");
        assert_eq!(m.negate(nf).unwrap(), f);
    }

    #[test]
    fn cofactors_of_example() {
        let mut m = BddManager::new(3);
        let f = example(&mut m);
        assert_eq!(m.cofactor(f, VarId(0), true).unwrap(), m.one());
        let f0 = m.cofactor(f, VarId(0), false).unwrap();
        let nx2 = m.nvar(VarId(1)).unwrap();
        let nx3 = m.nvar(VarId(2)).unwrap();
        assert_eq!(f0, m.and(nx2, nx3).unwrap());
        let one = m.one();
        assert_eq!(m.cofactor(one, VarId(1), false).unwrap(), one);
        assert!(matches!(
            m.cofactor(f, VarId(7), true),
            Err(BddError::UnknownVariable { var: 7, count: 3 })
        ));
    }

    #[test]
    fn cofactor_on_absent_variable_is_identity() {
        let mut m = BddManager::new(3);
        let x = m.var(VarId(0)).unwrap();
        assert_eq!(m.cofactor(x, VarId(2), true).unwrap(), x);
    }

    #[test]
    fn truth_vector_length_is_checked() {
        let mut m = BddManager::new(3);
        assert!(matches!(
            m.build_from_truth_vector(&[true; 4]),
            Err(BddError::BadTruthVectorLength { len: 4, vars: 3 })
        ));
        assert_eq!(m.build_from_truth_vector(&[false; 8]).unwrap(), m.zero());
    }

    #[test]
    fn truth_vector_under_permuted_order() {
        let mut m = BddManager::with_order(&[VarId(2), VarId(0), VarId(1)]).unwrap();
        let f = example(&mut m);
        assert_eq!(table(&m, f), "10001111");
    }

    #[test]
    fn swap_twice_restores() {
        let mut m = BddManager::new(3);
        let f = example(&mut m);
        m.register_root(f).unwrap();
        m.swap_adjacent_levels(1).unwrap();
        assert_eq!(m.order(), &[VarId(0), VarId(2), VarId(1)]);
        assert_eq!(m.shared_size(), 3);
        assert_eq!(table(&m, f), "10001111");
        m.swap_adjacent_levels(1).unwrap();
        assert_eq!(m.order(), &[VarId(0), VarId(1), VarId(2)]);
        assert_eq!(m.shared_size(), 3);
        assert_eq!(table(&m, f), "10001111");
    }

    #[test]
    fn swap_of_unrelated_levels_keeps_subgraph() {
        let mut m = BddManager::new(4);
        let a = m.var(VarId(0)).unwrap();
        let b = m.var(VarId(1)).unwrap();
        let f = m.and(a, b).unwrap();
        let before = m.reachable(&[f]);
        m.swap_adjacent_levels(2).unwrap();
        assert_eq!(m.reachable(&[f]), before);
    }

    #[test]
    fn swap_level_range() {
        let mut m = BddManager::new(2);
        assert!(m.swap_adjacent_levels(1).is_err());
        assert!(m.swap_adjacent_levels(0).is_ok());
    }

    #[test]
    fn shared_counting() {
        let mut m = BddManager::new(3);
        let one = m.one();
        assert_eq!(m.count_nodes(&[one]), 0);
        let a = m.var(VarId(1)).unwrap();
        let b = m.var(VarId(2)).unwrap();
        let g = m.and(a, b).unwrap();
        let c = m.var(VarId(0)).unwrap();
        let f1 = m.or(c, g).unwrap();
        let f2 = m.xor(c, g).unwrap();
        let separate = m.count_nodes(&[f1]) + m.count_nodes(&[f2]);
        let shared = m.count_nodes(&[f1, f2]);
        assert_eq!(m.count_nodes(&[f1]), 3);
        assert_eq!(m.count_nodes(&[f2]), 5);
        assert_eq!(shared, 6);
        assert!(shared < separate);
    }

    #[test]
    fn handles_are_manager_scoped() {
        let mut m1 = BddManager::new(2);
        let mut m2 = BddManager::new(2);
        let a = m1.var(VarId(0)).unwrap();
        let b = m2.var(VarId(0)).unwrap();
        assert_eq!(m1.and(a, b), Err(BddError::ForeignHandle));
        assert_eq!(m2.negate(a), Err(BddError::ForeignHandle));
    }

    #[test]
    fn garbage_collection_keeps_roots() {
        let mut m = BddManager::new(3);
        let f = example(&mut m);
        let x = m.var(VarId(2)).unwrap();
        let g = m.xor(f, x).unwrap();
        m.register_root(f).unwrap();
        let freed = m.collect_garbage(&[]);
        assert!(freed > 0);
        assert_eq!(m.allocated_nodes(), 3);
        assert_eq!(m.negate(g), Err(BddError::StaleHandle));
        assert_eq!(table(&m, f), "10001111");
        // Reuse of freed slots still yields canonical handles.
        let g2 = m.xor(f, x).unwrap_err();
        assert_eq!(g2, BddError::StaleHandle);
        let x = m.var(VarId(2)).unwrap();
        let g3 = m.xor(f, x).unwrap();
        let nx = m.negate(x).unwrap();
        let g4 = m.xor(f, nx).unwrap();
        assert_eq!(m.negate(g3).unwrap(), g4);
    }
}
