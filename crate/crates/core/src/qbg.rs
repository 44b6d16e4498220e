//! Parabolic quantum Bruhat graphs, QLS paths, and their relation to the
//! semi-infinite Bruhat graph.
//!
//! Two chain rules share one graph. The plain rule asks `a⟨γ^∨, λ⟩ ∈ ℤ` on
//! every edge. The rule for `A_{2ℓ}^{(2)}` asks for `2ℤ` instead on quantum
//! edges whose label is short, matching the doubled labels `2wγ + δ`.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cartan::{Coords, Weight, ZERO};
use crate::paths::SilsPath;
use crate::sibg::{a_integral, EdgeClass, SiBruhatGraph, SibEdge};
use crate::weyl::{ElemId, Parabolic};
use crate::{Error, Result, Q};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum QbgKind {
    Bruhat,
    Quantum,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QbgEdge {
    pub source: ElemId,
    pub target: ElemId,
    /// Index of `γ ∈ Δ^+ \ Δ_J^+`.
    pub label: usize,
    pub kind: QbgKind,
}

/// Which integrality rule a-chains follow.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ChainRule {
    Plain,
    Parity,
}

/// `2⟨ρ^∨ - ρ_J^∨, γ⟩` for a positive root.
pub fn quantum_drop(ctx: &Parabolic, k: usize) -> i64 {
    let d = ctx.datum();
    let gd = d.root_dynkin(k);
    let rho_j: i64 = ctx.pos_j().iter().map(|&a| d.pair_dynkin(a, gd)).sum();
    2 * d.height(k) - rho_j
}

/// The graph `QBG^J` on `W^J`.
#[derive(Debug)]
pub struct Qbg {
    ctx: Arc<Parabolic>,
    edges: Vec<QbgEdge>,
    out: HashMap<ElemId, Vec<usize>>,
}

impl Qbg {
    pub fn new(ctx: Arc<Parabolic>) -> Self {
        let weyl = ctx.system().weyl();
        let mut edges = Vec::new();
        for &w in ctx.min_reps() {
            let lw = weyl.length(w) as i64;
            for &k in ctx.pos_not_j() {
                let v = ctx.min_coset_rep(weyl.mul(w, weyl.reflection(k)));
                let lv = weyl.length(v) as i64;
                if lv == lw + 1 {
                    edges.push(QbgEdge { source: w, target: v, label: k, kind: QbgKind::Bruhat });
                } else if lv == lw - quantum_drop(&ctx, k) + 1 {
                    edges.push(QbgEdge { source: w, target: v, label: k, kind: QbgKind::Quantum });
                }
            }
        }
        edges.sort();
        let mut out: HashMap<ElemId, Vec<usize>> = HashMap::new();
        for (n, e) in edges.iter().enumerate() {
            out.entry(e.source).or_default().push(n);
        }
        Qbg { ctx, edges, out }
    }

    pub fn ctx(&self) -> &Arc<Parabolic> {
        &self.ctx
    }

    pub fn edges(&self) -> &[QbgEdge] {
        &self.edges
    }

    pub fn out_edges(&self, w: ElemId) -> impl Iterator<Item = &QbgEdge> {
        self.out.get(&w).into_iter().flatten().map(move |&n| &self.edges[n])
    }

    pub fn contains(&self, e: &QbgEdge) -> bool {
        self.out_edges(e.source).any(|f| f == e)
    }

    pub fn rule(&self) -> ChainRule {
        if self.ctx.datum().affine_type().is_a2l2() {
            ChainRule::Parity
        } else {
            ChainRule::Plain
        }
    }

    /// Whether the edge may appear in an a-chain for `λ` (given by the
    /// Dynkin labels of its classical part).
    pub fn admissible(&self, e: &QbgEdge, lambda: &Coords, a: Q) -> bool {
        let d = self.ctx.datum();
        let p = d.pair_dynkin(e.label, lambda);
        let doubled = self.rule() == ChainRule::Parity && e.kind == QbgKind::Quantum && d.is_short(e.label);
        a_integral(a, p, if doubled { 2 } else { 1 })
    }

    /// Shortest a-chain from `w` to `v` as a list of edges.
    pub fn a_chain(&self, w: ElemId, v: ElemId, a: Q, lambda: &Coords) -> Result<Option<Vec<QbgEdge>>> {
        if a <= Q::zero() || a > Q::one() {
            return Err(Error::Precondition(format!("a = {a} is not in (0, 1]")));
        }
        if !self.ctx.is_min_rep(w) || !self.ctx.is_min_rep(v) {
            return Err(Error::Precondition("chain endpoints must lie in W^J".into()));
        }
        let mut parent: HashMap<ElemId, QbgEdge> = HashMap::new();
        let mut queue = VecDeque::from([w]);
        while let Some(u) = queue.pop_front() {
            if u == v {
                let mut chain = Vec::new();
                let mut cur = v;
                while cur != w {
                    let e = parent[&cur];
                    chain.push(e);
                    cur = e.source;
                }
                chain.reverse();
                return Ok(Some(chain));
            }
            for e in self.out_edges(u) {
                if e.target != w && !parent.contains_key(&e.target) && self.admissible(e, lambda, a) {
                    parent.insert(e.target, *e);
                    queue.push_back(e.target);
                }
            }
        }
        Ok(None)
    }

    /// For each vertex, the set of vertices reachable by a-chains, as indices
    /// into `min_reps()`.
    fn reach_table(&self, a: Q, lambda: &Coords) -> Vec<Vec<bool>> {
        let reps = self.ctx.min_reps();
        let pos: HashMap<ElemId, usize> = reps.iter().enumerate().map(|(i, &w)| (w, i)).collect();
        let n = reps.len();
        let mut reach = vec![vec![false; n]; n];
        for (i, &w) in reps.iter().enumerate() {
            let mut queue = VecDeque::from([w]);
            reach[i][i] = true;
            while let Some(u) = queue.pop_front() {
                for e in self.out_edges(u) {
                    let t = pos[&e.target];
                    if !reach[i][t] && self.admissible(e, lambda, a) {
                        reach[i][t] = true;
                        queue.push_back(e.target);
                    }
                }
            }
        }
        reach
    }

    /// The QBG edge underlying a semi-infinite edge.
    pub fn from_sib(&self, g: &SiBruhatGraph, e: &SibEdge) -> Result<QbgEdge> {
        let (w, _) = g
            .ctx()
            .decompose(&e.source)
            .ok_or_else(|| Error::Precondition("edge source is not a Peterson representative".into()))?;
        let (class, k) = g
            .classify(&e.source, &e.label)?
            .ok_or_else(|| Error::Precondition(format!("label {:?} has no admissible shape", e.label)))?;
        let (v, _) = g
            .ctx()
            .decompose(&e.target)
            .ok_or_else(|| Error::Precondition("edge target is not a Peterson representative".into()))?;
        let kind = if class == EdgeClass::Bruhat { QbgKind::Bruhat } else { QbgKind::Quantum };
        let q = QbgEdge { source: w, target: v, label: k, kind };
        if !self.contains(&q) {
            return Err(Error::Internal(format!("{q:?} is not a QBG edge")));
        }
        Ok(q)
    }

    /// The semi-infinite edge out of `w z_ξ t_ξ` lying over a QBG edge.
    pub fn to_sib(&self, g: &SiBruhatGraph, e: &QbgEdge, xi: &Coords) -> Result<SibEdge> {
        let x = g.ctx().compose(e.source, xi)?;
        let beta = g.label_for(e.source, e.label);
        if !g.is_edge(&x, &beta)? {
            return Err(Error::Internal(format!("{e:?} does not lift at {xi:?}")));
        }
        let target = g.target(&x, &beta)?;
        let (v, _) = g.ctx().decompose(&target).unwrap();
        if v != e.target {
            return Err(Error::Internal(format!("{e:?} lifts to the wrong coset")));
        }
        Ok(SibEdge { source: x, label: beta, target })
    }
}

/// A QLS path `(w_1, …, w_s; a_0, …, a_s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QlsPath {
    pub ws: Vec<ElemId>,
    pub cuts: Vec<Q>,
}

impl QlsPath {
    pub fn validate(&self, qbg: &Qbg, lambda: &Coords) -> Result<()> {
        let s = self.ws.len();
        if s == 0 || self.cuts.len() != s + 1 {
            return Err(Error::Precondition("malformed QLS path".into()));
        }
        if self.cuts[0] != Q::zero() || self.cuts[s] != Q::one() || self.cuts.windows(2).any(|c| c[0] >= c[1]) {
            return Err(Error::Precondition("cuts must increase strictly from 0 to 1".into()));
        }
        for m in 1..s {
            let (hi, lo) = (self.ws[m - 1], self.ws[m]);
            if hi == lo || qbg.a_chain(lo, hi, self.cuts[m], lambda)?.is_none() {
                return Err(Error::Precondition(format!("no {}-chain at cut {m}", self.cuts[m])));
            }
        }
        Ok(())
    }
}

/// Keeps the `W^J` parts of a semi-infinite LS path. Neighbours with equal
/// parts are merged.
pub fn project_to_qls(g: &SiBruhatGraph, eta: &SilsPath) -> Result<QlsPath> {
    let mut ws: Vec<ElemId> = Vec::new();
    let mut cuts = vec![Q::zero()];
    for (m, x) in eta.xs.iter().enumerate() {
        let (w, _) = g
            .ctx()
            .decompose(x)
            .ok_or_else(|| Error::Precondition(format!("{x:?} is not a Peterson representative")))?;
        if ws.last() == Some(&w) {
            *cuts.last_mut().unwrap() = eta.cuts[m + 1];
        } else {
            ws.push(w);
            cuts.push(eta.cuts[m + 1]);
        }
    }
    Ok(QlsPath { ws, cuts })
}

/// Lifts a QLS path to a semi-infinite LS path, building translations from
/// the last entry (translation 0) backwards along QBG chains.
pub fn lift_qls(qbg: &Qbg, g: &SiBruhatGraph, pi: &QlsPath, lambda: &Weight) -> Result<SilsPath> {
    let s = pi.ws.len();
    let mut xs = vec![g.ctx().compose(pi.ws[s - 1], &ZERO)?];
    for m in (1..s).rev() {
        let chain = qbg
            .a_chain(pi.ws[m], pi.ws[m - 1], pi.cuts[m], &lambda.dynkin)?
            .ok_or_else(|| Error::Precondition(format!("no chain at cut {m}")))?;
        let mut x = *xs.last().unwrap();
        for e in &chain {
            let (_, zeta) = g.ctx().decompose(&x).unwrap();
            x = qbg.to_sib(g, e, &zeta)?.target;
        }
        xs.push(x);
    }
    xs.reverse();
    Ok(SilsPath { xs, cuts: pi.cuts.clone() })
}

/// All QLS paths of shape λ whose cuts lie in `(1/den)ℤ`, sorted.
pub fn enumerate_qls(qbg: &Qbg, lambda: &Coords, den: i64) -> Vec<QlsPath> {
    let reps = qbg.ctx().min_reps().to_vec();
    // reach[k][i][j]: an (k/den)-chain from reps[i] to reps[j].
    let reach: Vec<Vec<Vec<bool>>> = (1..den).map(|k| qbg.reach_table(Q::new(k, den), lambda)).collect();
    let mut out = Vec::new();
    // Build right to left: (indices w_m..w_s, numerators of a_m..a_s).
    let mut stack: Vec<(Vec<usize>, Vec<i64>)> = (0..reps.len()).map(|i| (vec![i], vec![den])).collect();
    while let Some((idx, nums)) = stack.pop() {
        let mut cuts = vec![Q::zero()];
        cuts.extend(nums.iter().map(|&k| Q::new(k, den)));
        out.push(QlsPath { ws: idx.iter().map(|&i| reps[i]).collect(), cuts });
        let (first, a) = (idx[0], nums[0]);
        for k in 1..a {
            for (j, ok) in reach[(k - 1) as usize][first].iter().enumerate() {
                if *ok && j != first {
                    let mut i2 = vec![j];
                    i2.extend(&idx);
                    let mut n2 = vec![k];
                    n2.extend(&nums);
                    stack.push((i2, n2));
                }
            }
        }
    }
    out.sort();
    out
}

/// Cut denominator bounding every QLS path of shape λ: `2 max ⟨γ^∨, λ⟩`.
pub fn qls_denominator(ctx: &Parabolic, lambda: &Coords) -> i64 {
    let d = ctx.datum();
    2 * (0..d.n_pos()).map(|k| d.pair_dynkin(k, lambda)).max().unwrap_or(0).max(1)
}

/// Positive roots with `ℓ(s_γ) = 2⟨ρ^∨, γ⟩ - 1`, i.e. labels of quantum edges
/// for `J = ∅`.
pub fn quantum_eligible_roots(ctx: &Parabolic) -> Vec<usize> {
    let d = ctx.datum();
    let weyl = ctx.system().weyl();
    (0..d.n_pos())
        .filter(|&k| weyl.length(weyl.reflection(k)) as i64 == 2 * d.height(k) - 1)
        .collect()
}

/// `ℓ(z_ξ) = -2⟨ρ_J^∨, ξ⟩` and `ℓ(w z_ξ) = ℓ(w) + ℓ(z_ξ)` for `w ∈ W^J`.
pub fn z_length_identity(ctx: &Parabolic, xi: &Coords) -> Result<bool> {
    let weyl = ctx.system().weyl();
    let z = ctx.z_xi(xi)?;
    let lz = weyl.length(z) as i64;
    if lz != -ctx.datum().two_rho_j_pairing(ctx.j(), xi) {
        return Ok(false);
    }
    Ok(ctx
        .min_reps()
        .iter()
        .all(|&w| weyl.length(weyl.mul(w, z)) as i64 == weyl.length(w) as i64 + lz))
}


#[cfg(test)]
mod correspondence_tests {
    use super::*;
    use crate::cartan::{AffineType, Family};
    use crate::weyl::AffineSystem;

    #[test]
    fn edges_and_qls_lifts() {
        for (f, l, m) in [
            (Family::A2l2, 1, vec![2]),
            (Family::A2l2, 2, vec![1, 1]),
            (Family::A2l2, 2, vec![0, 2]),
            (Family::Dlp12, 2, vec![2, 0]),
            (Family::Dlp12, 3, vec![1, 0, 1]),
            (Family::D43, 2, vec![1, 1]),
            (Family::A2lm12, 3, vec![0, 1, 0]),
        ] {
            let s = AffineSystem::new(AffineType::new(f, l).unwrap()).unwrap();
            let lam = s.datum().level_zero_weight(&m).unwrap();
            let j: u8 = (0..l).filter(|&i| m[i] == 0).map(|i| 1u8 << i).sum();
            let c = Arc::new(Parabolic::new(s.clone(), j).unwrap());
            let g = SiBruhatGraph::new(c.clone());
            let q = Qbg::new(c.clone());
            for xi in c.adjusted_in_box(2) {
                for e in q.edges() {
                    let se = q.to_sib(&g, e, &xi).unwrap();
                    assert_eq!(q.from_sib(&g, &se).unwrap(), *e);
                }
            }
            for x in c.peterson_in_box(2).unwrap() {
                for e in g.out_edges(&x).unwrap().iter() {
                    let qe = q.from_sib(&g, e).unwrap();
                    assert_eq!(q.to_sib(&g, &qe, &x.xi).unwrap(), *e);
                }
            }
            let den = qls_denominator(&c, &lam.dynkin);
            let all = enumerate_qls(&q, &lam.dynkin, den);
            for pi in &all {
                pi.validate(&q, &lam.dynkin).unwrap();
                let eta = lift_qls(&q, &g, pi, &lam).unwrap();
                eta.validate(&g, &lam).unwrap();
                assert_eq!(&project_to_qls(&g, &eta).unwrap(), pi);
            }
            eprintln!("{f:?} {l} {m:?}: {} QLS paths", all.len());
        }
    }
}
