//! The level-zero weight poset `BG_0(λ)`, LS paths, semi-infinite LS paths and
//! the root operators on both.
//!
//! A path is a list of directions with cuts `0 = a_0 < … < a_s = 1`; the
//! direction `ν_m` is followed on `[a_{m-1}, a_m]`. Root operators return
//! `None` for the formal zero element.

use std::cell::RefCell;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::cartan::{AffineRoot, Coords, RatWeight, Weight};
use crate::sibg::{a_integral, SiBruhatGraph};
use crate::weyl::{AffineSystem, AffineWeylElement};
use crate::{Error, Result, Q};

/// One family of raising steps out of an orbit point: labels
/// `mult·γ + dδ` for `d = first, first + stride, …`, each lowering the
/// δ-coefficient by `coeff · d`.
#[derive(Clone, Copy, Debug)]
struct StepFamily {
    target: usize,
    gamma: usize,
    mult: u8,
    first: i64,
    stride: i64,
    coeff: i64,
}

/// `BG_0(λ)` restricted to what is needed for comparisons: the order, `dist`,
/// edges and a-chains. Memoised, hence not `Sync`; build one per thread.
#[derive(Debug)]
pub struct Poset {
    sys: Arc<AffineSystem>,
    lambda: Weight,
    orbit: Vec<Coords>,
    index: HashMap<Coords, usize>,
    steps: Vec<Vec<StepFamily>>,
    memo: RefCell<HashMap<(usize, usize, i64), Option<u32>>>,
}

impl Poset {
    pub fn new(sys: Arc<AffineSystem>, lambda: Weight) -> Result<Self> {
        let d = sys.datum();
        let weyl = sys.weyl();
        let mut orbit: Vec<Coords> = weyl.elements().map(|w| weyl.act_dynkin(w, &lambda.dynkin)).collect();
        orbit.sort();
        orbit.dedup();
        let index: HashMap<Coords, usize> = orbit.iter().enumerate().map(|(i, c)| (*c, i)).collect();
        let a2l2 = d.affine_type().is_a2l2();
        let mut steps = Vec::with_capacity(orbit.len());
        for mu in &orbit {
            let mut fam = Vec::new();
            for k in 0..d.n_roots() {
                let pd = d.pair_dynkin(k, mu);
                if pd <= 0 {
                    continue;
                }
                let beta = AffineRoot::finite(*d.root(k));
                let target = index[&d.reflect_weight(&beta, &Weight { dynkin: *mu, delta: 0 })?.dynkin];
                let step = d.delta_step(k);
                fam.push(StepFamily {
                    target,
                    gamma: k,
                    mult: 1,
                    first: if d.is_positive_root(k) { 0 } else { step },
                    stride: step,
                    coeff: pd,
                });
                if a2l2 && d.is_short(k) && pd % 2 == 0 {
                    fam.push(StepFamily {
                        target,
                        gamma: k,
                        mult: 2,
                        first: 1,
                        stride: 2,
                        coeff: pd / 2,
                    });
                }
            }
            steps.push(fam);
        }
        Ok(Poset {
            sys,
            lambda,
            orbit,
            index,
            steps,
            memo: RefCell::new(HashMap::new()),
        })
    }

    pub fn lambda(&self) -> &Weight {
        &self.lambda
    }

    pub fn system(&self) -> &Arc<AffineSystem> {
        &self.sys
    }

    /// Classical parts of `W_af λ`, sorted.
    pub fn orbit(&self) -> &[Coords] {
        &self.orbit
    }

    fn locate(&self, mu: &Weight) -> Result<usize> {
        self.index
            .get(&mu.dynkin)
            .copied()
            .ok_or_else(|| Error::Precondition(format!("{mu:?} is not in the orbit of λ")))
    }

    fn longest(&self, i: usize, j: usize, budget: i64) -> Option<u32> {
        if budget < 0 {
            return None;
        }
        if let Some(&v) = self.memo.borrow().get(&(i, j, budget)) {
            return v;
        }
        let mut best = if i == j && budget == 0 { Some(0) } else { None };
        for f in &self.steps[i] {
            let mut d = f.first;
            while f.coeff * d <= budget {
                if let Some(l) = self.longest(f.target, j, budget - f.coeff * d) {
                    best = Some(best.map_or(l + 1, |b: u32| b.max(l + 1)));
                }
                d += f.stride;
            }
        }
        self.memo.borrow_mut().insert((i, j, budget), best);
        best
    }

    /// Length of the longest raising chain from `mu` to `nu`, if `mu ≤ nu`.
    pub fn dist(&self, mu: &Weight, nu: &Weight) -> Result<Option<u32>> {
        let (i, j) = (self.locate(mu)?, self.locate(nu)?);
        Ok(self.longest(i, j, mu.delta - nu.delta))
    }

    pub fn leq(&self, mu: &Weight, nu: &Weight) -> Result<bool> {
        Ok(self.dist(mu, nu)?.is_some())
    }

    /// `⟨β^∨, μ⟩ > 0` and `dist(μ, s_βμ) = 1`.
    pub fn is_edge(&self, mu: &Weight, beta: &AffineRoot) -> Result<bool> {
        let d = self.sys.datum();
        let p = d.coroot_pairing(beta, mu)?;
        if p <= Q::zero() || !d.is_positive(beta) {
            return Ok(false);
        }
        let nu = d.reflect_weight(beta, mu)?;
        Ok(self.dist(mu, &nu)? == Some(1))
    }

    /// Raising steps out of `mu` that lower the δ-coefficient by at most
    /// `budget`, as `(label, target)`.
    fn steps_within(&self, mu: &Weight, budget: i64) -> Result<Vec<(AffineRoot, Weight)>> {
        let d = self.sys.datum();
        let i = self.locate(mu)?;
        let mut out = Vec::new();
        for f in &self.steps[i] {
            let mut dd = f.first;
            while f.coeff * dd <= budget {
                let beta = AffineRoot::new(*d.root(f.gamma), f.mult, dd);
                let nu = Weight {
                    dynkin: self.orbit[f.target],
                    delta: mu.delta - f.coeff * dd,
                };
                out.push((beta, nu));
                dd += f.stride;
            }
        }
        out.sort_by_key(|(b, _)| (b.delta, b.mult, b.gamma));
        Ok(out)
    }

    /// Out-edges of `mu` in `BG_0(λ)` whose target lies below `bound`.
    pub fn edges_below(&self, mu: &Weight, bound: &Weight) -> Result<Vec<(AffineRoot, Weight)>> {
        let mut out = Vec::new();
        for (beta, nu) in self.steps_within(mu, mu.delta - bound.delta)? {
            if self.dist(mu, &nu)? == Some(1) && self.leq(&nu, bound)? {
                out.push((beta, nu));
            }
        }
        Ok(out)
    }

    /// Whether an a-chain from `mu` to `nu` exists in `BG_0(λ)`.
    pub fn has_a_chain(&self, mu: &Weight, nu: &Weight, a: Q) -> Result<bool> {
        if a <= Q::zero() || a > Q::one() {
            return Err(Error::Precondition(format!("a = {a} is not in (0, 1]")));
        }
        if !self.leq(mu, nu)? {
            return Ok(false);
        }
        let d = self.sys.datum();
        let mut seen = HashSet::from([*mu]);
        let mut queue = VecDeque::from([*mu]);
        while let Some(v) = queue.pop_front() {
            if v == *nu {
                return Ok(true);
            }
            for (beta, w) in self.edges_below(&v, nu)? {
                let p = d.coroot_pairing(&beta, &v)?;
                if a_integral(a, *p.numer(), *p.denom()) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        Ok(false)
    }
}

fn check_cuts(cuts: &[Q], s: usize) -> Result<()> {
    if s == 0 || cuts.len() != s + 1 {
        return Err(Error::Precondition("a path needs s ≥ 1 directions and s + 1 cuts".into()));
    }
    if cuts[0] != Q::zero() || cuts[s] != Q::one() || cuts.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Precondition("cuts must increase strictly from 0 to 1".into()));
    }
    Ok(())
}

/// Values of `H` at the cuts, given the slope on each segment.
pub fn heights(slopes: &[i64], cuts: &[Q]) -> Vec<Q> {
    let mut h = vec![Q::zero()];
    for (m, &k) in slopes.iter().enumerate() {
        let last = h[m];
        h.push(last + Q::from(k) * (cuts[m + 1] - cuts[m]));
    }
    h
}

/// Raising or lowering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Op {
    E,
    F,
}

/// The root operator on a path with arbitrary payload, given the slope of
/// `H_i` along each direction and the action of `s_i`. `None` is the formal
/// zero.
pub fn root_operator<T, S, R>(
    items: &[T],
    cuts: &[Q],
    op: Op,
    slope: S,
    reflect: R,
) -> Result<Option<(Vec<T>, Vec<Q>)>>
where
    T: Clone + PartialEq + std::fmt::Debug,
    S: Fn(&T) -> Result<i64>,
    R: Fn(&T) -> Result<T>,
{
    let s = items.len();
    check_cuts(cuts, s)?;
    let slopes = items.iter().map(&slope).collect::<Result<Vec<_>>>()?;
    let h = heights(&slopes, cuts);
    let m = h.iter().copied().min().unwrap();
    if !m.is_integer() {
        return Err(Error::Internal(format!("minimum {m} of H is not an integer")));
    }
    let target = m + Q::one();
    // Largest (E) or smallest (F) parameter on segment k where H = m + 1.
    let hit = |k: usize, largest: bool| -> Option<Q> {
        let (h0, h1) = (h[k], h[k + 1]);
        if slopes[k] == 0 {
            return (h0 == target).then(|| if largest { cuts[k + 1] } else { cuts[k] });
        }
        let (lo, hi) = if h0 < h1 { (h0, h1) } else { (h1, h0) };
        (lo <= target && target <= hi).then(|| cuts[k] + (target - h0) / Q::from(slopes[k]))
    };
    // Segments as (payload, start, end); zero-length ones are dropped below.
    let mut seg: Vec<(T, Q, Q)> = Vec::with_capacity(s + 1);
    let junction;
    match op {
        Op::E => {
            if m.is_zero() {
                return Ok(None);
            }
            let q = (1..=s).find(|&k| h[k] == m).unwrap();
            let t1 = cuts[q];
            let mut t0 = None;
            for k in (0..q).rev() {
                if let Some(t) = hit(k, true) {
                    t0 = Some(t.min(t1));
                    break;
                }
            }
            let t0 = t0.ok_or_else(|| Error::Internal("no level m + 1 before t_1".into()))?;
            // p is the 1-based segment with a_{p-1} ≤ t0 < a_p.
            let p = (1..=q).find(|&k| cuts[k - 1] <= t0 && t0 < cuts[k]).unwrap();
            if (p - 1..q).any(|k| slopes[k] >= 0) {
                return Err(Error::Internal("H is not strictly decreasing on [t_0, t_1]".into()));
            }
            for k in 0..s {
                let (a0, a1) = (cuts[k], cuts[k + 1]);
                if k + 1 == p {
                    seg.push((items[k].clone(), a0, t0));
                    seg.push((reflect(&items[k])?, t0, a1));
                } else if k + 1 > p && k < q {
                    seg.push((reflect(&items[k])?, a0, a1));
                } else {
                    seg.push((items[k].clone(), a0, a1));
                }
            }
            junction = t1;
        }
        Op::F => {
            if (h[s] - m).is_zero() {
                return Ok(None);
            }
            let p = (0..s).rev().find(|&k| h[k] == m).unwrap();
            let t0 = cuts[p];
            let mut found = None;
            for k in p..s {
                if let Some(t) = hit(k, false) {
                    found = Some((k, t.max(t0)));
                    break;
                }
            }
            let (k1, t1) = found.ok_or_else(|| Error::Internal("no level m + 1 after t_0".into()))?;
            // Segment k1 (0-based) is segment q + 1 in 1-based numbering.
            if (p..=k1).any(|k| slopes[k] <= 0) {
                return Err(Error::Internal("H is not strictly increasing on [t_0, t_1]".into()));
            }
            for k in 0..s {
                let (a0, a1) = (cuts[k], cuts[k + 1]);
                if k == k1 {
                    seg.push((reflect(&items[k])?, a0, t1));
                    seg.push((items[k].clone(), t1, a1));
                } else if k >= p && k < k1 {
                    seg.push((reflect(&items[k])?, a0, a1));
                } else {
                    seg.push((items[k].clone(), a0, a1));
                }
            }
            junction = t0;
        }
    }
    seg.retain(|(_, a0, a1)| a0 < a1);
    // Merge equal neighbours meeting at the junction only.
    if let Some(k) = (1..seg.len()).find(|&k| seg[k].1 == junction && seg[k - 1].0 == seg[k].0) {
        seg[k - 1].2 = seg[k].2;
        seg.remove(k);
    }
    if seg.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::Internal("root operator produced equal adjacent directions".into()));
    }
    let mut out_cuts = vec![Q::zero()];
    out_cuts.extend(seg.iter().map(|x| x.2));
    Ok(Some((seg.into_iter().map(|x| x.0).collect(), out_cuts)))
}

/// `Σ (a_m - a_{m-1}) ν_m`.
pub fn weighted_sum(dirs: &[Weight], cuts: &[Q]) -> RatWeight {
    let mut w = RatWeight::zero();
    for (m, nu) in dirs.iter().enumerate() {
        w.add_scaled(cuts[m + 1] - cuts[m], nu);
    }
    w
}

/// `(-m_i, H_i(1) - m_i)`, the closed forms of `ε_i` and `φ_i`.
fn eps_phi(slopes: &[i64], cuts: &[Q]) -> Result<(i64, i64)> {
    let h = heights(slopes, cuts);
    let m = h.iter().copied().min().unwrap();
    let end = h[h.len() - 1];
    if !m.is_integer() || !end.is_integer() {
        return Err(Error::Internal("non-integral height function".into()));
    }
    Ok((-m.to_integer(), (end - m).to_integer()))
}

/// An LS path `(ν_1, …, ν_s; a_0, …, a_s)` of shape λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LsPath {
    pub nus: Vec<Weight>,
    pub cuts: Vec<Q>,
}

impl LsPath {
    /// The straight-line path `(μ; 0, 1)`.
    pub fn straight(mu: Weight) -> Self {
        LsPath {
            nus: vec![mu],
            cuts: vec![Q::zero(), Q::one()],
        }
    }

    pub fn validate(&self, poset: &Poset) -> Result<()> {
        check_cuts(&self.cuts, self.nus.len())?;
        for nu in &self.nus {
            poset.locate(nu)?;
        }
        for m in 1..self.nus.len() {
            let (hi, lo) = (&self.nus[m - 1], &self.nus[m]);
            if hi == lo || !poset.has_a_chain(lo, hi, self.cuts[m])? {
                return Err(Error::Precondition(format!(
                    "no {}-chain from direction {} to direction {}",
                    self.cuts[m],
                    m + 1,
                    m
                )));
            }
        }
        Ok(())
    }

    fn slopes(&self, sys: &AffineSystem, i: usize) -> Vec<i64> {
        self.nus.iter().map(|nu| sys.datum().node_pairing_int(i, &nu.dynkin)).collect()
    }

    /// `H_i` at `t`.
    pub fn height(&self, sys: &AffineSystem, i: usize, t: Q) -> Q {
        let slopes = self.slopes(sys, i);
        let h = heights(&slopes, &self.cuts);
        let k = (0..self.nus.len()).find(|&k| t <= self.cuts[k + 1]).unwrap_or(self.nus.len() - 1);
        h[k] + Q::from(slopes[k]) * (t - self.cuts[k])
    }

    /// `m_i`, the minimum of `H_i`.
    pub fn min_height(&self, sys: &AffineSystem, i: usize) -> Q {
        heights(&self.slopes(sys, i), &self.cuts).into_iter().min().unwrap()
    }

    pub fn apply(&self, sys: &AffineSystem, op: Op, i: usize) -> Result<Option<LsPath>> {
        let d = sys.datum();
        let si = d.simple_affine_root(i)?;
        let r = root_operator(
            &self.nus,
            &self.cuts,
            op,
            |nu| Ok(d.node_pairing_int(i, &nu.dynkin)),
            |nu| d.reflect_weight(&si, nu),
        )?;
        Ok(r.map(|(nus, cuts)| LsPath { nus, cuts }))
    }

    pub fn e(&self, sys: &AffineSystem, i: usize) -> Result<Option<LsPath>> {
        self.apply(sys, Op::E, i)
    }

    pub fn f(&self, sys: &AffineSystem, i: usize) -> Result<Option<LsPath>> {
        self.apply(sys, Op::F, i)
    }

    pub fn wt(&self) -> RatWeight {
        weighted_sum(&self.nus, &self.cuts)
    }

    pub fn eps(&self, sys: &AffineSystem, i: usize) -> Result<i64> {
        Ok(eps_phi(&self.slopes(sys, i), &self.cuts)?.0)
    }

    pub fn phi(&self, sys: &AffineSystem, i: usize) -> Result<i64> {
        Ok(eps_phi(&self.slopes(sys, i), &self.cuts)?.1)
    }
}

/// A semi-infinite LS path `(x_1, …, x_s; a_0, …, a_s)` of shape λ.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SilsPath {
    pub xs: Vec<AffineWeylElement>,
    pub cuts: Vec<Q>,
}

impl SilsPath {
    /// `(x; 0, 1)`.
    pub fn straight(x: AffineWeylElement) -> Self {
        SilsPath {
            xs: vec![x],
            cuts: vec![Q::zero(), Q::one()],
        }
    }

    /// Membership in the set of semi-infinite LS paths of shape λ, where the
    /// graph is built for `J = J_λ`.
    pub fn validate(&self, g: &SiBruhatGraph, lambda: &Weight) -> Result<()> {
        check_cuts(&self.cuts, self.xs.len())?;
        for x in &self.xs {
            if !g.ctx().is_peterson(x) {
                return Err(Error::Precondition(format!("{x:?} is not a Peterson representative")));
            }
        }
        for m in 1..self.xs.len() {
            let (hi, lo) = (&self.xs[m - 1], &self.xs[m]);
            if hi == lo || g.find_a_chain(lo, hi, self.cuts[m], lambda)?.is_none() {
                return Err(Error::Precondition(format!(
                    "no {}-chain from entry {} to entry {}",
                    self.cuts[m],
                    m + 1,
                    m
                )));
            }
        }
        Ok(())
    }

    /// `(x_1λ, …, x_sλ; a)`.
    pub fn project(&self, sys: &AffineSystem, lambda: &Weight) -> LsPath {
        LsPath {
            nus: self.xs.iter().map(|x| sys.act_weight(x, lambda)).collect(),
            cuts: self.cuts.clone(),
        }
    }

    fn slopes(&self, sys: &AffineSystem, lambda: &Weight, i: usize) -> Vec<i64> {
        self.xs
            .iter()
            .map(|x| sys.datum().node_pairing_int(i, &sys.act_weight(x, lambda).dynkin))
            .collect()
    }

    /// The root operator lifted through the projection: directions change by
    /// left multiplication by `s_i`.
    pub fn apply(&self, g: &SiBruhatGraph, lambda: &Weight, op: Op, i: usize) -> Result<Option<SilsPath>> {
        let sys = g.system();
        let d = sys.datum();
        let si = sys.simple_reflection(i)?;
        let r = root_operator(
            &self.xs,
            &self.cuts,
            op,
            |x| Ok(d.node_pairing_int(i, &sys.act_weight(x, lambda).dynkin)),
            |x| {
                let y = sys.mul(&si, x);
                if g.ctx().is_peterson(&y) {
                    Ok(y)
                } else {
                    Err(Error::Internal(format!("s_{i} {x:?} left the Peterson representatives")))
                }
            },
        )?;
        Ok(r.map(|(xs, cuts)| SilsPath { xs, cuts }))
    }

    pub fn e(&self, g: &SiBruhatGraph, lambda: &Weight, i: usize) -> Result<Option<SilsPath>> {
        self.apply(g, lambda, Op::E, i)
    }

    pub fn f(&self, g: &SiBruhatGraph, lambda: &Weight, i: usize) -> Result<Option<SilsPath>> {
        self.apply(g, lambda, Op::F, i)
    }

    pub fn wt(&self, sys: &AffineSystem, lambda: &Weight) -> RatWeight {
        self.project(sys, lambda).wt()
    }

    pub fn eps(&self, sys: &AffineSystem, lambda: &Weight, i: usize) -> Result<i64> {
        Ok(eps_phi(&self.slopes(sys, lambda, i), &self.cuts)?.0)
    }

    pub fn phi(&self, sys: &AffineSystem, lambda: &Weight, i: usize) -> Result<i64> {
        Ok(eps_phi(&self.slopes(sys, lambda, i), &self.cuts)?.1)
    }
}


#[cfg(test)]
mod orbit_tests {
    use super::*;
    use crate::cartan::{AffineType, Family};
    use crate::weyl::Parabolic;

    fn orbit_check(f: Family, l: usize, m: &[i64], depth: usize) -> usize {
        let s = AffineSystem::new(AffineType::new(f, l).unwrap()).unwrap();
        let lam = s.datum().level_zero_weight(m).unwrap();
        let j: u8 = (0..l).filter(|&i| m[i] == 0).map(|i| 1u8 << i).sum();
        let g = SiBruhatGraph::new(Arc::new(Parabolic::new(s.clone(), j).unwrap()));
        let poset = Poset::new(s.clone(), lam).unwrap();
        let mut seen = HashSet::from([SilsPath::straight(s.identity())]);
        let mut layer = vec![SilsPath::straight(s.identity())];
        for _ in 0..depth {
            let mut next = Vec::new();
            for eta in &layer {
                let pi = eta.project(&s, &lam);
                for i in 0..=l {
                    for op in [Op::E, Op::F] {
                        let r = eta.apply(&g, &lam, op, i).unwrap();
                        let rp = pi.apply(&s, op, i).unwrap();
                        assert_eq!(r.as_ref().map(|x| x.project(&s, &lam)), rp, "{eta:?} {op:?} {i}");
                        if let Some(r) = r {
                            r.validate(&g, &lam).unwrap();
                            r.project(&s, &lam).validate(&poset).unwrap();
                            let back = match op {
                                Op::E => r.f(&g, &lam, i),
                                Op::F => r.e(&g, &lam, i),
                            };
                            assert_eq!(back.unwrap().as_ref(), Some(eta));
                            if seen.insert(r.clone()) {
                                next.push(r);
                            }
                        }
                    }
                }
            }
            layer = next;
        }
        seen.len()
    }

    #[test]
    fn orbits_are_stable() {
        for (f, l, m) in [
            (Family::A2l2, 1, vec![2]),
            (Family::A2l2, 2, vec![1, 1]),
            (Family::Dlp12, 2, vec![2, 0]),
            (Family::Dlp12, 3, vec![1, 0, 1]),
            (Family::A2lm12, 3, vec![0, 1, 1]),
            (Family::D43, 2, vec![1, 1]),
        ] {
            let n = orbit_check(f, l, &m, 4);
            assert!(n > 5);
        }
    }
}
