//! Forcing edges from projective characters, iterated to a fixed point.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::checks::vertex_multiplicities;
use super::{find, TreeError, TreeProblem};
use crate::projective::ProjectiveChar;

/// Runs the forcing rules until nothing changes:
/// * dominance: if `P` has multiplicity `m_i` at `v_i` and the positive
///   multiplicities of the other candidates of `v_i`, leaving out `v_j`,
///   sum to less than `m_i`, then `v_i - v_j` is an edge;
/// * every forced edge sum joins the pool;
/// * candidates closing a cycle of forced edges are dropped;
/// * a candidate edge whose removal disconnects the candidate graph is
///   forced;
/// * with an involution, candidate edges must map to candidate edges,
///   forced edges force their images, and a fixed vertex keeps at most two
///   fixed neighbours.
///
/// Returns the newly forced edges in the order found.
pub fn force_edges_from_projectives(
    p: &mut TreeProblem,
    pool: &[ProjectiveChar],
) -> Result<Vec<(usize, usize)>, TreeError> {
    let mut mults: Vec<Vec<BigInt>> = Vec::with_capacity(pool.len());
    for proj in pool {
        match vertex_multiplicities(&p.vertices, &proj.coords) {
            Some(m) => mults.push(m),
            None => {
                return Err(TreeError::Contradiction(format!(
                    "projective {} has unequal exceptional multiplicities",
                    proj.provenance
                )))
            }
        }
    }
    let base = mults.len();
    let mut added = Vec::new();
    let mut state = Forcing {
        p,
        added: &mut added,
    };
    loop {
        let before = (state.p.forced_edges.len(), candidate_count(state.p));
        mults.truncate(base);
        let n = state.p.vertices.len();
        mults.extend(state.p.forced_edges.iter().map(|&(a, b)| edge_sum(n, a, b)));
        state.check()?;
        for m in &mults {
            state.dominance(m)?;
        }
        state.prune_cycles()?;
        state.involution_rules()?;
        state.force_bridges()?;
        if (state.p.forced_edges.len(), candidate_count(state.p)) == before {
            break;
        }
    }
    state.check()?;
    Ok(added)
}

fn edge_sum(n: usize, a: usize, b: usize) -> Vec<BigInt> {
    let mut m = vec![BigInt::zero(); n];
    m[a] = BigInt::from(1);
    m[b] = BigInt::from(1);
    m
}

fn candidate_count(p: &TreeProblem) -> usize {
    p.candidates.iter().map(BTreeSet::len).sum()
}

struct Forcing<'a> {
    p: &'a mut TreeProblem,
    added: &'a mut Vec<(usize, usize)>,
}

impl Forcing<'_> {
    fn contradiction(&self, msg: String) -> TreeError {
        TreeError::Contradiction(msg)
    }

    fn label(&self, v: usize) -> String {
        self.p.vertices[v].label()
    }

    fn force(&mut self, a: usize, b: usize) -> Result<(), TreeError> {
        let e = (a.min(b), a.max(b));
        if self.p.forced_edges.contains(&e) {
            return Ok(());
        }
        if !self.p.candidates[a].contains(&b) {
            return Err(self.contradiction(format!(
                "edge {} - {} is forced but not admissible",
                self.label(a),
                self.label(b)
            )));
        }
        self.p.forced_edges.insert(e);
        self.added.push(e);
        Ok(())
    }

    fn remove(&mut self, a: usize, b: usize) {
        self.p.candidates[a].remove(&b);
        self.p.candidates[b].remove(&a);
    }

    fn components(&self) -> Vec<usize> {
        let n = self.p.vertices.len();
        let mut comp: Vec<usize> = (0..n).collect();
        for &(a, b) in &self.p.forced_edges {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            comp[ra] = rb;
        }
        (0..n).map(|v| find(&mut comp, v)).collect()
    }

    fn check(&self) -> Result<(), TreeError> {
        let n = self.p.vertices.len();
        if self.p.forced_edges.len() > self.p.e {
            return Err(self.contradiction(format!(
                "{} forced edges exceed e = {}",
                self.p.forced_edges.len(),
                self.p.e
            )));
        }
        let mut comp: Vec<usize> = (0..n).collect();
        for &(a, b) in &self.p.forced_edges {
            let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
            if ra == rb {
                return Err(self.contradiction("forced edges contain a cycle".into()));
            }
            comp[ra] = rb;
        }
        if n > 1 {
            if let Some(v) = (0..n).find(|&v| self.p.candidates[v].is_empty()) {
                return Err(self.contradiction(format!(
                    "vertex {} has no admissible neighbour",
                    self.label(v)
                )));
            }
        }
        Ok(())
    }

    fn dominance(&mut self, m: &[BigInt]) -> Result<(), TreeError> {
        let n = self.p.vertices.len();
        for i in 0..n {
            if !m[i].is_positive() {
                continue;
            }
            let support: Vec<usize> = self.p.candidates[i]
                .iter()
                .copied()
                .filter(|&j| m[j].is_positive())
                .collect();
            if support.is_empty() {
                return Err(self.contradiction(format!(
                    "a projective has multiplicity {} at {} but none at its neighbours",
                    m[i],
                    self.label(i)
                )));
            }
            let total: BigInt = support.iter().map(|&j| &m[j]).sum();
            for &j in &support {
                if &total - &m[j] < m[i] {
                    self.force(i, j)?;
                }
            }
        }
        Ok(())
    }

    fn prune_cycles(&mut self) -> Result<(), TreeError> {
        let comp = self.components();
        let full = self.p.forced_edges.len() == self.p.e;
        for (a, b) in self.p.candidate_edges() {
            if self.p.forced_edges.contains(&(a, b)) {
                continue;
            }
            if full || comp[a] == comp[b] {
                self.remove(a, b);
            }
        }
        Ok(())
    }

    /// Edges whose removal disconnects the candidate graph lie in every
    /// spanning tree.
    fn force_bridges(&mut self) -> Result<(), TreeError> {
        let n = self.p.vertices.len();
        let edges = self.p.candidate_edges();
        if !connected(n, &edges, None) {
            return Err(self.contradiction("candidate graph is disconnected".into()));
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            if !self.p.forced_edges.contains(&(a, b)) && !connected(n, &edges, Some(i)) {
                self.force(a, b)?;
            }
        }
        Ok(())
    }

    fn involution_rules(&mut self) -> Result<(), TreeError> {
        let Some(inv) = self.p.involution.clone() else {
            return Ok(());
        };
        for (a, b) in self.p.candidate_edges() {
            if !self.p.candidates[inv[a]].contains(&inv[b]) {
                self.remove(a, b);
            }
        }
        for (a, b) in self.p.forced_edges.clone() {
            self.force(inv[a], inv[b])?;
        }
        let fixed = |v: usize| inv[v] == v;
        for v in (0..inv.len()).filter(|&v| fixed(v)) {
            let forced_fixed = self
                .p
                .forced_edges
                .iter()
                .filter(|&&(a, b)| (a == v && fixed(b)) || (b == v && fixed(a)))
                .count();
            if forced_fixed > 2 {
                return Err(self.contradiction(format!(
                    "fixed vertex {} has {forced_fixed} fixed neighbours",
                    self.label(v)
                )));
            }
            if forced_fixed == 2 {
                let drop: Vec<usize> = self.p.candidates[v]
                    .iter()
                    .copied()
                    .filter(|&w| fixed(w) && !self.p.forced_edges.contains(&(v.min(w), v.max(w))))
                    .collect();
                for w in drop {
                    self.remove(v, w);
                }
            }
        }
        Ok(())
    }
}

fn connected(n: usize, edges: &[(usize, usize)], skip: Option<usize>) -> bool {
    let mut comp: Vec<usize> = (0..n).collect();
    let mut parts = n;
    for (i, &(a, b)) in edges.iter().enumerate() {
        if Some(i) == skip {
            continue;
        }
        let (ra, rb) = (find(&mut comp, a), find(&mut comp, b));
        if ra != rb {
            comp[ra] = rb;
            parts -= 1;
        }
    }
    parts <= 1
}
