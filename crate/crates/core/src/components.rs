//! Translation paths, the arithmetic membership test for them, and special
//! elements indexing connected components.
//!
//! A translation path `(z_{ξ_1}t_{ξ_1}, …, z_{ξ_s}t_{ξ_s}; a)` is a
//! semi-infinite LS path exactly when every interior cut lies in `Turn(λ)` and
//! every step `[ξ_m - ξ_{m+1}]_{J^c}` is a nonzero nonnegative combination of
//! simple roots `α_i` with `a_m m_i ∈ ℤ`. [`characterization`] evaluates that
//! arithmetic test; [`oracle`] and [`Region`] decide membership by searching
//! chains in the semi-infinite Bruhat graph.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cartan::{sub, sup_norm, AffineRoot, Coords, NodeSet, RootDatum, Weight, ZERO};
use crate::paths::{Op, SilsPath};
use crate::sibg::{a_integral, EdgeClass, SiBruhatGraph};
use crate::weyl::{box_points, AffineWeylElement, Parabolic};
use crate::{Error, Result, Q};

/// Index sets attached to a level-zero dominant weight `λ = Σ m_i ϖ_i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Bookkeeping {
    pub m: Vec<i64>,
    /// `⟨α_i^∨, λ⟩`; differs from `m_i` only at `i = ℓ` in `A_{2ℓ}^{(2)}`.
    pub pairing: Vec<i64>,
}

impl Bookkeeping {
    pub fn new(d: &RootDatum, m: &[i64]) -> Result<Self> {
        let lam = d.level_zero_weight(m)?;
        if m.iter().all(|&x| x == 0) {
            return Err(Error::Precondition("λ must be nonzero".into()));
        }
        Ok(Bookkeeping {
            m: m.to_vec(),
            pairing: lam.dynkin[..m.len()].to_vec(),
        })
    }

    /// `J_λ = {i : m_i = 0}`.
    pub fn j_lambda(&self) -> NodeSet {
        (0..self.m.len()).filter(|&i| self.m[i] == 0).fold(0, |s, i| s | (1 << i))
    }

    pub fn jc_lambda(&self) -> NodeSet {
        (0..self.m.len()).filter(|&i| self.m[i] != 0).fold(0, |s, i| s | (1 << i))
    }

    /// `Turn(λ) = {k/m_i : i ∉ J_λ, 0 ≤ k ≤ m_i}`, sorted.
    pub fn turn_set(&self) -> Vec<Q> {
        let mut t: Vec<Q> = self
            .m
            .iter()
            .filter(|&&mi| mi > 0)
            .flat_map(|&mi| (0..=mi).map(move |k| Q::new(k, mi)))
            .collect();
        t.sort();
        t.dedup();
        t
    }

    pub fn in_turn(&self, a: Q) -> bool {
        self.m.iter().any(|&mi| mi > 0 && (a * Q::from(mi)).is_integer())
    }

    /// `J^c(λ; a) = {i ∉ J_λ : a m_i ∈ ℤ}`.
    pub fn jc(&self, a: Q) -> NodeSet {
        self.select(a, &self.m)
    }

    /// The variant using `a⟨α_i^∨, λ⟩ ∈ ℤ`.
    pub fn jc_overline(&self, a: Q) -> NodeSet {
        self.select(a, &self.pairing)
    }

    /// `I(λ; a) = J_λ ⊔ J^c(λ; a)`.
    pub fn i_of_a(&self, a: Q) -> NodeSet {
        self.j_lambda() | self.jc(a)
    }

    fn select(&self, a: Q, v: &[i64]) -> NodeSet {
        (0..self.m.len())
            .filter(|&i| self.m[i] != 0 && (a * Q::from(v[i])).is_integer())
            .fold(0, |s, i| s | (1 << i))
    }

    /// `2 lcm{m_i : m_i > 0}`.
    pub fn cut_denominator(&self) -> i64 {
        2 * self.m.iter().filter(|&&x| x > 0).fold(1i64, |acc, &x| acc.lcm(&x))
    }
}

/// `(z_{ξ_1}t_{ξ_1}, …, z_{ξ_s}t_{ξ_s}; a_0, …, a_s)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TranslationPath {
    pub xis: Vec<Coords>,
    pub cuts: Vec<Q>,
}

impl TranslationPath {
    fn check(&self, ctx: &Parabolic) -> Result<()> {
        let s = self.xis.len();
        if s == 0 || self.cuts.len() != s + 1 {
            return Err(Error::Precondition("malformed translation path".into()));
        }
        if self.cuts[0] != Q::zero() || self.cuts[s] != Q::one() || self.cuts.windows(2).any(|c| c[0] >= c[1]) {
            return Err(Error::Precondition("cuts must increase strictly from 0 to 1".into()));
        }
        if let Some(xi) = self.xis.iter().find(|xi| !ctx.is_adjusted(xi)) {
            return Err(Error::Precondition(format!("{xi:?} is not adjusted")));
        }
        Ok(())
    }

    pub fn to_sils(&self, ctx: &Parabolic) -> Result<SilsPath> {
        self.check(ctx)?;
        Ok(SilsPath {
            xs: self.xis.iter().map(|xi| ctx.translation_element(xi)).collect::<Result<_>>()?,
            cuts: self.cuts.clone(),
        })
    }

    /// Reads a semi-infinite LS path all of whose entries are translation
    /// elements.
    pub fn from_sils(ctx: &Parabolic, eta: &SilsPath) -> Option<Self> {
        let xis = eta
            .xs
            .iter()
            .map(|x| match ctx.decompose(x) {
                Some((0, xi)) => Some(xi),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()?;
        Some(TranslationPath { xis, cuts: eta.cuts.clone() })
    }
}

/// The arithmetic step condition between consecutive translations:
/// `[ξ - ζ]_{J^c}` is nonzero, nonnegative and supported in `J^c(λ; a)`.
pub fn step_condition(ctx: &Parabolic, book: &Bookkeeping, zeta: &Coords, xi: &Coords, a: Q) -> bool {
    let diff = ctx.project(&sub(xi, zeta));
    let allowed = book.jc(a);
    diff != ZERO
        && book.in_turn(a)
        && (0..book.m.len()).all(|i| diff[i] >= 0 && (diff[i] == 0 || allowed & (1 << i) != 0))
}

/// Membership of a translation path by the arithmetic test alone.
pub fn characterization(ctx: &Parabolic, book: &Bookkeeping, path: &TranslationPath) -> Result<bool> {
    path.check(ctx)?;
    Ok((1..path.xis.len()).all(|m| step_condition(ctx, book, &path.xis[m], &path.xis[m - 1], path.cuts[m])))
}

/// Membership of a translation path by chain search in the graph.
pub fn oracle(g: &SiBruhatGraph, lambda: &Weight, path: &TranslationPath) -> Result<bool> {
    let eta = path.to_sils(g.ctx())?;
    for m in 1..eta.xs.len() {
        let (hi, lo) = (&eta.xs[m - 1], &eta.xs[m]);
        if hi == lo || g.find_a_chain(lo, hi, eta.cuts[m], lambda)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Small fixed-width bitset.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(n: usize) -> Self {
        Bits(vec![0; n.div_ceil(64)])
    }
    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }
    fn get(&self, i: usize) -> bool {
        self.0[i / 64] >> (i % 64) & 1 == 1
    }
    fn union(&mut self, o: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&o.0) {
            *a |= b;
        }
    }
    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

#[derive(Clone, Copy, Debug)]
struct RegionEdge {
    source: usize,
    target: usize,
    label: AffineRoot,
    doubled: bool,
}

/// The part of the semi-infinite Bruhat graph through which chains between
/// translation elements with `‖ξ‖∞ ≤ r` can pass: Peterson representatives
/// `w z_η t_η` with `[η]_{J^c}` in the box of radius `r`. Edges are found by
/// scanning all positive real roots up to a δ-bound.
#[derive(Debug)]
pub struct Region {
    ctx: Arc<Parabolic>,
    verts: Vec<AffineWeylElement>,
    edges: Vec<RegionEdge>,
    /// Translation vertices `z_ξ t_ξ` with `‖ξ‖∞ ≤ r`, and their vertex ids.
    trans: Vec<Coords>,
    trans_vertex: Vec<usize>,
    /// Edges whose target lowers the `J^c`-part; should be none.
    pub monotonicity_violations: Vec<String>,
}

impl Region {
    pub fn new(ctx: Arc<Parabolic>, r: i64, max_delta: i64) -> Result<Self> {
        let sys = ctx.system().clone();
        let d = sys.datum();
        let mut verts = Vec::new();
        for p in box_points(d.rank(), r, ctx.jc()) {
            let (eta, _) = ctx.adjust(&p)?;
            for &w in ctx.min_reps() {
                verts.push(ctx.compose(w, &eta)?);
            }
        }
        verts.sort_by_key(|x| (sys.si_length(x), *x));
        let index: HashMap<AffineWeylElement, usize> = verts.iter().enumerate().map(|(i, x)| (*x, i)).collect();
        let g = SiBruhatGraph::new(ctx.clone());
        let roots = d.positive_real_roots(max_delta);
        let mut edges = Vec::new();
        let mut violations = Vec::new();
        for (i, x) in verts.iter().enumerate() {
            for beta in &roots {
                if !g.is_edge(x, beta)? {
                    continue;
                }
                let y = g.target(x, beta)?;
                let step = ctx.project(&sub(&y.xi, &x.xi));
                if step.iter().any(|&c| c < 0) {
                    violations.push(format!("{x:?} --{beta:?}--> {y:?}"));
                }
                if let Some(&j) = index.get(&y) {
                    edges.push(RegionEdge { source: i, target: j, label: *beta, doubled: beta.mult == 2 });
                }
            }
        }
        let mut trans: Vec<Coords> = ctx.adjusted_in_box(r);
        trans.sort();
        let trans_vertex = trans
            .iter()
            .map(|xi| index[&ctx.translation_element(xi).unwrap()])
            .collect();
        Ok(Region {
            ctx,
            verts,
            edges,
            trans,
            trans_vertex,
            monotonicity_violations: violations,
        })
    }

    pub fn ctx(&self) -> &Arc<Parabolic> {
        &self.ctx
    }

    pub fn n_vertices(&self) -> usize {
        self.verts.len()
    }

    pub fn n_edges(&self) -> usize {
        self.edges.len()
    }

    /// Translation vectors of the box, sorted.
    pub fn translations(&self) -> &[Coords] {
        &self.trans
    }

    fn admissible(&self, lambda: &Weight, a: Q) -> Vec<bool> {
        let sys = self.ctx.system();
        let d = sys.datum();
        let images: Vec<Weight> = self.verts.iter().map(|x| sys.act_weight(x, lambda)).collect();
        self.edges
            .iter()
            .map(|e| {
                let p = d.coroot_pairing(&e.label, &images[e.source]).unwrap();
                a_integral(a, *p.numer(), *p.denom())
            })
            .collect()
    }

    /// `table[i]` holds the translations reachable by nonempty a-chains from
    /// translation `i`, as a bitset over [`Region::translations`].
    fn closure(&self, ok: &[bool]) -> (Vec<Bits>, Vec<Bits>) {
        let n = self.verts.len();
        let t = self.trans.len();
        let mut own = vec![None; n];
        for (k, &v) in self.trans_vertex.iter().enumerate() {
            own[v] = Some(k);
        }
        let mut out: Vec<Vec<usize>> = vec![Vec::new(); n];
        let mut inn: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (k, e) in self.edges.iter().enumerate() {
            if ok[k] {
                out[e.source].push(e.target);
                inn[e.target].push(e.source);
            }
        }
        // Vertices are sorted by semi-infinite length and every edge raises
        // it by one, so index order is a topological order.
        let mut down = vec![Bits::new(t); n];
        for v in (0..n).rev() {
            let mut b = Bits::new(t);
            if let Some(k) = own[v] {
                b.set(k);
            }
            for &w in &out[v] {
                b.union(&down[w]);
            }
            down[v] = b;
        }
        let mut up = vec![Bits::new(t); n];
        for v in 0..n {
            let mut b = Bits::new(t);
            if let Some(k) = own[v] {
                b.set(k);
            }
            for &w in &inn[v] {
                b.union(&up[w]);
            }
            up[v] = b;
        }
        (down, up)
    }

    /// `reach[i][j]`: a nonempty a-chain of shape λ runs from translation `i`
    /// to translation `j`.
    pub fn chain_table(&self, lambda: &Weight, a: Q) -> Vec<Vec<bool>> {
        let ok = self.admissible(lambda, a);
        let (down, _) = self.closure(&ok);
        let t = self.trans.len();
        (0..t)
            .map(|i| (0..t).map(|j| i != j && down[self.trans_vertex[i]].get(j)).collect())
            .collect()
    }

    /// Admissible doubled-label edges lying on some chain between two box
    /// translations.
    pub fn doubled_edges_on_chains(&self, lambda: &Weight, a: Q) -> Vec<(AffineWeylElement, AffineRoot)> {
        let ok = self.admissible(lambda, a);
        let (down, up) = self.closure(&ok);
        self.edges
            .iter()
            .enumerate()
            .filter(|(k, e)| ok[*k] && e.doubled && !up[e.source].is_empty() && !down[e.target].is_empty())
            .map(|(_, e)| (self.verts[e.source], e.label))
            .collect()
    }
}

/// Result of comparing the arithmetic test with the chain search.
#[derive(Clone, Debug, Default, Serialize)]
pub struct MembershipReport {
    pub lambda: Vec<i64>,
    pub translations: usize,
    pub cut_denominator: i64,
    pub paths_checked: u64,
    pub members: u64,
    /// Members with at least two entries.
    pub proper_members: u64,
    pub mismatches: u64,
    pub examples: Vec<String>,
    pub crosschecked_pairs: u64,
    pub crosscheck_mismatches: u64,
}

/// Compares [`characterization`] with chain reachability on every translation
/// path with at most `s_max` entries, entries from the region's box and
/// interior cuts `k/den`. Pairs with both entries in the box of radius
/// `cross_r` are also re-decided by [`SiBruhatGraph::find_a_chain`].
pub fn membership_equivalence(
    region: &Region,
    lambda: &Weight,
    book: &Bookkeeping,
    s_max: usize,
    cross_r: i64,
) -> Result<MembershipReport> {
    let ctx = region.ctx();
    let den = book.cut_denominator();
    let trans = region.translations();
    let t = trans.len();
    let cuts: Vec<Q> = (1..den).map(|k| Q::new(k, den)).collect();
    // Pair tables indexed [cut][ζ][ξ]: a chain from ζ to ξ.
    let oracle_t: Vec<Vec<Vec<bool>>> = cuts.iter().map(|&a| region.chain_table(lambda, a)).collect();
    let char_t: Vec<Vec<Vec<bool>>> = cuts
        .iter()
        .map(|&a| {
            (0..t)
                .map(|i| (0..t).map(|j| step_condition(ctx, book, &trans[i], &trans[j], a)).collect())
                .collect()
        })
        .collect();
    let mut rep = MembershipReport {
        lambda: book.m.clone(),
        translations: t,
        cut_denominator: den,
        ..Default::default()
    };
    let note = |rep: &mut MembershipReport, c: bool, o: bool, desc: &dyn Fn() -> String| {
        rep.paths_checked += 1;
        if o {
            rep.members += 1;
        }
        if c != o {
            rep.mismatches += 1;
            if rep.examples.len() < 10 {
                rep.examples.push(format!("{} (arithmetic {c}, chains {o})", desc()));
            }
        }
    };
    for _ in 0..t {
        note(&mut rep, true, true, &|| String::new());
    }
    let singles = rep.members;
    if s_max >= 2 {
        for (k, a) in cuts.iter().enumerate() {
            for z in 0..t {
                for x in 0..t {
                    let (c, o) = (char_t[k][z][x], oracle_t[k][z][x]);
                    note(&mut rep, c, o, &|| format!("({:?}, {:?}; {a})", trans[x], trans[z]));
                }
            }
        }
    }
    if s_max >= 3 {
        for k1 in 0..cuts.len() {
            for k2 in k1 + 1..cuts.len() {
                // (ξ_1, ξ_2, ξ_3; 0, a1, a2, 1): chains ξ_2 → ξ_1 at a1, ξ_3 → ξ_2 at a2.
                for x2 in 0..t {
                    for x1 in 0..t {
                        let (c1, o1) = (char_t[k1][x2][x1], oracle_t[k1][x2][x1]);
                        for x3 in 0..t {
                            let c = c1 && char_t[k2][x3][x2];
                            let o = o1 && oracle_t[k2][x3][x2];
                            note(&mut rep, c, o, &|| {
                                format!("({:?}, {:?}, {:?}; {}, {})", trans[x1], trans[x2], trans[x3], cuts[k1], cuts[k2])
                            });
                        }
                    }
                }
            }
        }
    }
    rep.proper_members = rep.members - singles;
    // Independent re-decision of small pairs by the candidate-label search.
    let g = SiBruhatGraph::new(ctx.clone());
    let small: Vec<usize> = (0..t).filter(|&i| sup_norm(&trans[i]) <= cross_r).collect();
    for (k, &a) in cuts.iter().enumerate() {
        for &z in &small {
            for &x in &small {
                if z == x {
                    continue;
                }
                let (xz, xx) = (ctx.translation_element(&trans[z])?, ctx.translation_element(&trans[x])?);
                let found = g.find_a_chain(&xz, &xx, a, lambda)?;
                if let Some(w) = &found {
                    w.validate(&g, lambda)?;
                }
                rep.crosschecked_pairs += 1;
                if found.is_some() != oracle_t[k][z][x] {
                    rep.crosscheck_mismatches += 1;
                }
            }
        }
    }
    Ok(rep)
}

/// Report of the parity mechanism for `A_{2ℓ}^{(2)}` at cuts
/// `a = q/(2m_ℓ)`, `q` odd.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ParityReport {
    pub lambda: Vec<i64>,
    pub cuts: Vec<String>,
    /// Ordered pairs of distinct box translations examined, over all cuts.
    pub pairs_examined: u64,
    pub reachable_pairs: u64,
    pub witnesses: u64,
    pub violations: Vec<String>,
}

/// For every cut `a = q/(2m_ℓ)` with `q` odd: no admissible doubled-label
/// edge lies on a chain between box translations; `ℓ` is outside the support
/// of `[ξ - ζ]_{J^c}` for every chain `ζ → ξ`; every witness found by
/// [`SiBruhatGraph::find_a_chain`] has no doubled labels and satisfies
/// `ξ - ζ = Σ_{quantum steps} z^{-1}γ`.
pub fn parity_check(region: &Region, lambda: &Weight, book: &Bookkeeping, witness_r: i64) -> Result<ParityReport> {
    let ctx = region.ctx();
    let sys = ctx.system();
    let d = sys.datum();
    let l = d.rank();
    let ml = book.m[l - 1];
    let mut rep = ParityReport { lambda: book.m.clone(), ..Default::default() };
    if !d.affine_type().is_a2l2() || ml == 0 {
        return Ok(rep);
    }
    let g = SiBruhatGraph::new(ctx.clone());
    let trans = region.translations();
    for q in (1..2 * ml).step_by(2) {
        let a = Q::new(q, 2 * ml);
        rep.cuts.push(crate::json::q_string(&a));
        for (x, beta) in region.doubled_edges_on_chains(lambda, a) {
            rep.violations.push(format!("doubled edge {x:?} --{beta:?}--> on a chain at a = {a}"));
        }
        let table = region.chain_table(lambda, a);
        for (z, row) in table.iter().enumerate() {
            for (x, &reach) in row.iter().enumerate() {
                rep.pairs_examined += (x != z) as u64;
                if !reach {
                    continue;
                }
                rep.reachable_pairs += 1;
                let diff = ctx.project(&sub(&trans[x], &trans[z]));
                if diff[l - 1] != 0 {
                    rep.violations.push(format!("{:?} -> {:?} at a = {a} moves α_ℓ", trans[z], trans[x]));
                }
                if sup_norm(&trans[z]) > witness_r || sup_norm(&trans[x]) > witness_r {
                    continue;
                }
                let (xz, xx) = (ctx.translation_element(&trans[z])?, ctx.translation_element(&trans[x])?);
                let w = g
                    .find_a_chain(&xz, &xx, a, lambda)?
                    .ok_or_else(|| Error::Internal("chain search disagrees with the region".into()))?;
                rep.witnesses += 1;
                let mut total = ZERO;
                for (m, beta) in w.labels.iter().enumerate() {
                    let src = &w.vertices[m];
                    let (class, k) = g
                        .classify(src, beta)?
                        .ok_or_else(|| Error::Internal("witness label of no admissible shape".into()))?;
                    if class == EdgeClass::QuantumDoubled {
                        rep.violations.push(format!("witness uses doubled label {beta:?} at a = {a}"));
                    }
                    if class != EdgeClass::Bruhat {
                        let (_, eta) = ctx.decompose(src).unwrap();
                        let z = sys.weyl().inverse(ctx.z_xi(&eta)?);
                        total = crate::cartan::add(&total, &sys.weyl().act_lattice(z, d.root(k)));
                    }
                }
                if total != sub(&trans[x], &trans[z]) {
                    rep.violations.push(format!("quantum steps do not sum to ξ - ζ for {:?} -> {:?}", trans[z], trans[x]));
                }
            }
        }
    }
    Ok(rep)
}

/// Special elements `(z_{ξ_1}t_{ξ_1}, …, z_{ξ_{s-1}}t_{ξ_{s-1}}, e; a)` passing
/// the arithmetic test, with `‖ξ_m‖∞ ≤ r` and cuts in `Turn(λ)`. Sorted.
pub fn special_elements_in_box(ctx: &Parabolic, book: &Bookkeeping, r: i64) -> Vec<TranslationPath> {
    let adjusted = ctx.adjusted_in_box(r);
    let turn: Vec<Q> = book.turn_set().into_iter().filter(|a| !a.is_zero() && *a != Q::one()).collect();
    let mut out = Vec::new();
    // Partial paths built from the right: (ξ_m, …, ξ_s = 0) with a_m, …, a_s.
    let mut stack = vec![(vec![ZERO], vec![Q::one()])];
    while let Some((xis, cuts)) = stack.pop() {
        let mut full = vec![Q::zero()];
        full.extend(&cuts);
        out.push(TranslationPath { xis: xis.clone(), cuts: full });
        for &a in turn.iter().filter(|&&a| a < cuts[0]) {
            for xi in &adjusted {
                if step_condition(ctx, book, &xis[0], xi, a) {
                    let mut x2 = vec![*xi];
                    x2.extend(&xis);
                    let mut c2 = vec![a];
                    c2.extend(&cuts);
                    stack.push((x2, c2));
                }
            }
        }
    }
    out.sort();
    out
}

/// Result of closing a special element under root operators.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ProbeReport {
    pub reached: usize,
    pub other_special: Vec<String>,
    pub invalid: Vec<String>,
}

/// Applies all `e_i`, `f_i` up to `depth` times, validating each element and
/// recording any other special element met on the way.
pub fn component_orbit_probe(
    g: &SiBruhatGraph,
    lambda: &Weight,
    special: &TranslationPath,
    depth: usize,
) -> Result<ProbeReport> {
    let ctx = g.ctx();
    let start = special.to_sils(ctx)?;
    let rank = ctx.datum().rank();
    let mut seen = HashSet::from([start.clone()]);
    let mut layer = vec![start.clone()];
    let mut rep = ProbeReport::default();
    for _ in 0..depth {
        let mut next = Vec::new();
        for eta in &layer {
            for i in 0..=rank {
                for op in [Op::E, Op::F] {
                    if let Some(r) = eta.apply(g, lambda, op, i)? {
                        if seen.insert(r.clone()) {
                            next.push(r);
                        }
                    }
                }
            }
        }
        layer = next;
    }
    rep.reached = seen.len();
    let mut all: Vec<_> = seen.into_iter().collect();
    all.sort();
    for eta in &all {
        if let Err(e) = eta.validate(g, lambda) {
            rep.invalid.push(format!("{eta:?}: {e}"));
        }
        if *eta != start {
            if let Some(tp) = TranslationPath::from_sils(ctx, eta) {
                if tp.xis.last() == Some(&ZERO) {
                    rep.other_special.push(format!("{tp:?}"));
                }
            }
        }
    }
    Ok(rep)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{AffineType, Family};
    use crate::weyl::AffineSystem;

    fn setup(f: Family, l: usize, m: &[i64]) -> (Arc<Parabolic>, Bookkeeping, Weight) {
        let s = AffineSystem::new(AffineType::new(f, l).unwrap()).unwrap();
        let book = Bookkeeping::new(s.datum(), m).unwrap();
        let lam = s.datum().level_zero_weight(m).unwrap();
        (Arc::new(Parabolic::new(s, book.j_lambda()).unwrap()), book, lam)
    }

    #[test]
    fn turn_and_index_sets() {
        let (_, b, _) = setup(Family::Dlp12, 2, &[2, 1]);
        assert_eq!(b.turn_set(), vec![Q::zero(), Q::new(1, 2), Q::one()]);
        let (_, b, _) = setup(Family::A2l2, 2, &[0, 1]);
        assert_eq!(b.turn_set(), vec![Q::zero(), Q::one()]);
        assert_eq!(b.jc(Q::new(1, 2)), 0);
        assert_eq!(b.jc_overline(Q::new(1, 2)), 0b10);
        assert_eq!(b.cut_denominator(), 2);
        let s = AffineSystem::new(AffineType::new(Family::A2l2, 1).unwrap()).unwrap();
        assert!(Bookkeeping::new(s.datum(), &[0]).is_err());
    }

    #[test]
    fn two_step_examples() {
        let (ctx, book, lam) = setup(Family::Dlp12, 2, &[2, 0]);
        let g = SiBruhatGraph::new(ctx.clone());
        let (xi, _) = ctx.adjust(&[1, 0, 0, 0]).unwrap();
        let p = TranslationPath { xis: vec![xi, ZERO], cuts: vec![Q::zero(), Q::new(1, 2), Q::one()] };
        assert!(characterization(&ctx, &book, &p).unwrap());
        assert!(oracle(&g, &lam, &p).unwrap());
        let bad = TranslationPath { xis: vec![xi, ZERO], cuts: vec![Q::zero(), Q::new(1, 3), Q::one()] };
        assert!(!characterization(&ctx, &book, &bad).unwrap());
        assert!(!oracle(&g, &lam, &bad).unwrap());
    }

    #[test]
    fn special_elements_of_a_fundamental_weight() {
        let (ctx, book, _) = setup(Family::A2l2, 2, &[1, 0]);
        let sp = special_elements_in_box(&ctx, &book, 2);
        assert_eq!(sp.len(), 1);
        assert_eq!(sp[0].xis, vec![ZERO]);
        let (ctx, book, _) = setup(Family::Dlp12, 2, &[2, 0]);
        assert_eq!(special_elements_in_box(&ctx, &book, 0).len(), 1);
        assert!(special_elements_in_box(&ctx, &book, 1).len() > 1);
    }

    #[test]
    fn region_matches_chain_search_in_rank_one() {
        let (ctx, book, lam) = setup(Family::A2l2, 1, &[2]);
        let region = Region::new(ctx, 2, 3).unwrap();
        assert!(region.monotonicity_violations.is_empty());
        let rep = membership_equivalence(&region, &lam, &book, 3, 2).unwrap();
        assert_eq!(rep.mismatches, 0, "{:?}", rep.examples);
        assert_eq!(rep.crosscheck_mismatches, 0);
        let par = parity_check(&region, &lam, &book, 2).unwrap();
        assert!(par.violations.is_empty(), "{:?}", par.violations);
    }
}
