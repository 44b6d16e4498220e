//! The parabolic semi-infinite Bruhat graph and a-chains of shape λ.
//!
//! Vertices are Peterson representatives `w z_ξ t_ξ`; there is an edge
//! `x → s_β x` for a positive real root `β` when `s_β x` is again a Peterson
//! representative one step higher in semi-infinite length.
//!
//! Out-edges are enumerated from the short list of admissible label shapes
//! (one per root of `Δ^+ \ Δ_J^+`); the exhaustive scans in this module check
//! that list against every positive real root up to a δ-bound.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::cartan::{sub, AffineRoot, Coords, Weight};
use crate::weyl::{AffineSystem, AffineWeylElement, Parabolic};
use crate::{Error, Result, Q};

/// Shape of an edge label relative to the decomposition `x = w z_ξ t_ξ`:
/// `β = wγ`, `β = wγ + c_γ δ` (or `wγ + δ`), or `β = 2wγ + δ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    Bruhat,
    Quantum,
    QuantumDoubled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SibEdge {
    pub source: AffineWeylElement,
    pub label: AffineRoot,
    pub target: AffineWeylElement,
}

/// Whether `a · num / den` is an integer.
pub fn a_integral(a: Q, num: i64, den: i64) -> bool {
    (a.numer() * num) % (a.denom() * den) == 0
}

fn check_cut(a: Q) -> Result<()> {
    if a <= Q::zero() || a > Q::one() {
        return Err(Error::Precondition(format!("a = {a} is not in (0, 1]")));
    }
    Ok(())
}

/// An explicit a-chain `y_0 → y_1 → … → y_k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChainWitness {
    pub vertices: Vec<AffineWeylElement>,
    pub labels: Vec<AffineRoot>,
    #[serde(serialize_with = "crate::json::ser_q")]
    pub a: Q,
}

impl ChainWitness {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Re-checks every edge and the integrality condition.
    pub fn validate(&self, g: &SiBruhatGraph, lambda: &Weight) -> Result<()> {
        if self.vertices.len() != self.labels.len() + 1 {
            return Err(Error::Internal("malformed chain witness".into()));
        }
        for (m, beta) in self.labels.iter().enumerate() {
            let (y0, y1) = (&self.vertices[m], &self.vertices[m + 1]);
            if !g.is_edge(y0, beta)? || g.target(y0, beta)? != *y1 {
                return Err(Error::Internal(format!("step {m} of the chain is not an edge")));
            }
            if !g.admissible(y0, beta, lambda, self.a)? {
                return Err(Error::Internal(format!("step {m} violates integrality")));
            }
        }
        Ok(())
    }
}

/// The graph `∞/2 BG^J` with a cache of out-edges.
#[derive(Debug)]
pub struct SiBruhatGraph {
    ctx: Arc<Parabolic>,
    edges: RwLock<HashMap<AffineWeylElement, Arc<Vec<SibEdge>>>>,
}

impl SiBruhatGraph {
    pub fn new(ctx: Arc<Parabolic>) -> Self {
        SiBruhatGraph {
            ctx,
            edges: RwLock::new(HashMap::new()),
        }
    }

    pub fn ctx(&self) -> &Arc<Parabolic> {
        &self.ctx
    }

    pub fn system(&self) -> &AffineSystem {
        self.ctx.system()
    }

    fn require_member(&self, x: &AffineWeylElement) -> Result<()> {
        if self.ctx.is_peterson(x) {
            Ok(())
        } else {
            Err(Error::Precondition(format!(
                "{x:?} is not a Peterson coset representative"
            )))
        }
    }

    /// `s_β x`.
    pub fn target(&self, x: &AffineWeylElement, beta: &AffineRoot) -> Result<AffineWeylElement> {
        let s = self.system();
        Ok(s.mul(&s.reflection(beta)?, x))
    }

    /// Whether `x → s_β x` is an edge.
    pub fn is_edge(&self, x: &AffineWeylElement, beta: &AffineRoot) -> Result<bool> {
        self.require_member(x)?;
        let d = self.system().datum();
        d.validate_root(beta)?;
        if !d.is_positive(beta) {
            return Err(Error::Precondition(format!("{beta:?} is not positive")));
        }
        let y = self.target(x, beta)?;
        let s = self.system();
        Ok(self.ctx.is_peterson(&y) && s.si_length(&y) == s.si_length(x) + 1)
    }

    /// Label of the shape singled out by the sign of `wγ`, for the root of
    /// `Δ^+ \ Δ_J^+` with index `k`.
    pub fn label_for(&self, w: u32, k: usize) -> AffineRoot {
        let s = self.system();
        let d = s.datum();
        let img = s.weyl().act_root(w, k);
        let alpha = *d.root(img);
        if d.is_positive_root(img) {
            AffineRoot::finite(alpha)
        } else if d.affine_type().is_a2l2() && d.is_short(img) {
            AffineRoot::new(alpha, 2, 1)
        } else {
            AffineRoot::new(alpha, 1, d.delta_step(img))
        }
    }

    /// Candidate labels of out-edges of `x = w z_ξ t_ξ`: one per root of
    /// `Δ^+ \ Δ_J^+`. Every out-edge label is among them.
    pub fn candidate_labels(&self, x: &AffineWeylElement) -> Result<Vec<AffineRoot>> {
        let (w, _) = self.ctx.decompose(x).ok_or_else(|| {
            Error::Precondition(format!("{x:?} is not a Peterson coset representative"))
        })?;
        Ok(self
            .ctx
            .pos_not_j()
            .iter()
            .map(|&k| self.label_for(w, k))
            .collect())
    }

    /// All out-edges of `x`, sorted by (class, γ).
    pub fn out_edges(&self, x: &AffineWeylElement) -> Result<Arc<Vec<SibEdge>>> {
        if let Some(e) = self.edges.read().unwrap().get(x) {
            return Ok(e.clone());
        }
        let mut out = Vec::new();
        for beta in self.candidate_labels(x)? {
            if self.is_edge(x, &beta)? {
                let target = self.target(x, &beta)?;
                // The J^c-part of the translation never decreases along an edge.
                let diff = self.ctx.project(&sub(&target.xi, &x.xi));
                if diff.iter().any(|&c| c < 0) {
                    return Err(Error::Internal(format!(
                        "edge {x:?} -> {target:?} lowers the translation part"
                    )));
                }
                out.push(SibEdge {
                    source: *x,
                    label: beta,
                    target,
                });
            }
        }
        out.sort_by_key(|e| (self.classify(x, &e.label).ok().flatten(), e.label.gamma));
        let out = Arc::new(out);
        self.edges.write().unwrap().insert(*x, out.clone());
        Ok(out)
    }

    /// Out-edges found by scanning every positive real root with δ-coefficient
    /// at most `max_delta`.
    pub fn scan_out_edges(&self, x: &AffineWeylElement, max_delta: i64) -> Result<Vec<SibEdge>> {
        let d = self.system().datum();
        let mut out = Vec::new();
        for beta in d.positive_real_roots(max_delta) {
            if self.is_edge(x, &beta)? {
                out.push(SibEdge {
                    source: *x,
                    label: beta,
                    target: self.target(x, &beta)?,
                });
            }
        }
        Ok(out)
    }

    /// Classifies a label at `x = w z_ξ t_ξ`; returns the class and the index
    /// of `γ = w⁻¹α ∈ Δ^+ \ Δ_J^+`, or `None` if the label has none of the
    /// admissible shapes.
    pub fn classify(
        &self,
        x: &AffineWeylElement,
        beta: &AffineRoot,
    ) -> Result<Option<(EdgeClass, usize)>> {
        let (w, _) = self.ctx.decompose(x).ok_or_else(|| {
            Error::Precondition(format!("{x:?} is not a Peterson coset representative"))
        })?;
        let s = self.system();
        let d = s.datum();
        let a = d.validate_root(beta)?;
        let k = s.weyl().act_root(s.weyl().inverse(w), a);
        if !d.is_positive_root(k) || d.in_subsystem(k, self.ctx.j()) {
            return Ok(None);
        }
        let pos = d.is_positive_root(a);
        let class = match (beta.mult, beta.delta) {
            (1, 0) if pos => Some(EdgeClass::Bruhat),
            (1, dd) if !pos && dd == d.delta_step(a) && !(d.affine_type().is_a2l2() && d.is_short(a)) => {
                Some(EdgeClass::Quantum)
            }
            (2, 1) if !pos => Some(EdgeClass::QuantumDoubled),
            _ => None,
        };
        Ok(class.map(|c| (c, k)))
    }

    /// `⟨β^∨, yλ⟩`.
    pub fn shape_pairing(&self, y: &AffineWeylElement, beta: &AffineRoot, lambda: &Weight) -> Result<Q> {
        let s = self.system();
        let ylam = s.act_weight(y, lambda);
        s.datum().coroot_pairing(beta, &ylam)
    }

    /// `a⟨β^∨, yλ⟩ ∈ ℤ`.
    pub fn admissible(&self, y: &AffineWeylElement, beta: &AffineRoot, lambda: &Weight, a: Q) -> Result<bool> {
        let p = self.shape_pairing(y, beta, lambda)?;
        Ok(a_integral(a, *p.numer(), *p.denom()))
    }

    /// Breadth-first search for an a-chain of shape λ from `x` to `y`.
    ///
    /// Every edge raises the semi-infinite length by one and never lowers the
    /// `J^c`-part of the translation, so the search is confined to a finite
    /// region and ends at depth `ℓ(y) - ℓ(x)`.
    pub fn find_a_chain(
        &self,
        x: &AffineWeylElement,
        y: &AffineWeylElement,
        a: Q,
        lambda: &Weight,
    ) -> Result<Option<ChainWitness>> {
        check_cut(a)?;
        self.require_member(x)?;
        self.require_member(y)?;
        let s = self.system();
        let depth = s.si_length(y) - s.si_length(x);
        if depth < 0 {
            return Ok(None);
        }
        if x == y {
            return Ok(Some(ChainWitness {
                vertices: vec![*x],
                labels: vec![],
                a,
            }));
        }
        let target_proj = self.ctx.project(&y.xi);
        let below = |v: &AffineWeylElement| -> bool {
            let p: Coords = self.ctx.project(&v.xi);
            (0..p.len()).all(|i| p[i] <= target_proj[i])
        };
        if !below(x) {
            return Ok(None);
        }
        let mut parent: HashMap<AffineWeylElement, (AffineWeylElement, AffineRoot)> = HashMap::new();
        let mut frontier = vec![*x];
        for _ in 0..depth {
            let mut next = Vec::new();
            for v in &frontier {
                for e in self.out_edges(v)?.iter() {
                    if parent.contains_key(&e.target) || !below(&e.target) {
                        continue;
                    }
                    if !self.admissible(v, &e.label, lambda, a)? {
                        continue;
                    }
                    parent.insert(e.target, (*v, e.label));
                    next.push(e.target);
                }
            }
            if next.is_empty() {
                return Ok(None);
            }
            frontier = next;
        }
        if !parent.contains_key(y) {
            return Ok(None);
        }
        let mut vertices = vec![*y];
        let mut labels = Vec::new();
        let mut cur = *y;
        while cur != *x {
            let (p, b) = parent[&cur];
            vertices.push(p);
            labels.push(b);
            cur = p;
        }
        vertices.reverse();
        labels.reverse();
        Ok(Some(ChainWitness { vertices, labels, a }))
    }

    /// A label `β = -γ + c_γδ` (or `-γ + δ`, `-2γ + δ`) with `[γ]_{J^c} = α_i`
    /// such that `s_β z_ξ t_ξ → z_ξ t_ξ` is an edge. Returns the edge.
    pub fn in_edge_at_translation(&self, i: usize, xi: &Coords) -> Result<Option<SibEdge>> {
        let ctx = &self.ctx;
        if ctx.j() & (1 << i) != 0 {
            return Err(Error::Precondition(format!("node {} lies in J", i + 1)));
        }
        let s = self.system();
        let d = s.datum();
        let x = ctx.translation_element(xi)?;
        let mut unit = crate::cartan::ZERO;
        unit[i] = 1;
        for &k in ctx.pos_not_j() {
            if ctx.project(d.root(k)) != unit {
                continue;
            }
            let neg = crate::cartan::scale(-1, d.root(k));
            let mut forms = Vec::new();
            if d.affine_type().is_a2l2() {
                forms.push(AffineRoot::new(neg, 1, 1));
                if d.is_short(k) {
                    forms.push(AffineRoot::new(neg, 2, 1));
                }
            } else {
                forms.push(AffineRoot::new(neg, 1, d.delta_step(k)));
            }
            for beta in forms {
                if d.validate_root(&beta).is_err() {
                    continue;
                }
                let y = self.target(&x, &beta)?;
                if ctx.is_peterson(&y) && self.is_edge(&y, &beta)? && self.target(&y, &beta)? == x {
                    return Ok(Some(SibEdge {
                        source: y,
                        label: beta,
                        target: x,
                    }));
                }
            }
        }
        Ok(None)
    }

    /// Labels of edges out of `z_ξ t_ξ` (found by exhaustive scan) that are not
    /// simple roots `α_i` with `i ∉ J`.
    pub fn non_simple_translation_edges(&self, xi: &Coords, max_delta: i64) -> Result<Vec<AffineRoot>> {
        let x = self.ctx.translation_element(xi)?;
        let d = self.system().datum();
        Ok(self
            .scan_out_edges(&x, max_delta)?
            .into_iter()
            .map(|e| e.label)
            .filter(|b| {
                !(0..d.rank()).any(|i| self.ctx.j() & (1 << i) == 0 && d.simple_affine_root(i + 1).is_ok_and(|a| a == *b))
            })
            .collect())
    }

    /// Edges out of `x` found by exhaustive scan whose label is not of an
    /// admissible shape, or which the candidate enumeration misses.
    pub fn out_of_form_edges(&self, x: &AffineWeylElement, max_delta: i64) -> Result<Vec<SibEdge>> {
        let listed = self.out_edges(x)?;
        let mut bad = Vec::new();
        for e in self.scan_out_edges(x, max_delta)? {
            if self.classify(x, &e.label)?.is_none() || !listed.contains(&e) {
                bad.push(e);
            }
        }
        Ok(bad)
    }

    /// Peterson representatives with `‖ξ‖∞ ≤ r` and the edges among them.
    pub fn box_subgraph(&self, r: i64) -> Result<(Vec<AffineWeylElement>, Vec<SibEdge>)> {
        let mut verts = self.ctx.peterson_in_box(r)?;
        verts.sort();
        let set: std::collections::HashSet<_> = verts.iter().copied().collect();
        let mut edges = Vec::new();
        for v in &verts {
            for e in self.out_edges(v)?.iter() {
                if set.contains(&e.target) {
                    edges.push(*e);
                }
            }
        }
        Ok((verts, edges))
    }
}
