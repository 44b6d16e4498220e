//! Exhaustive verification suites over bounded boxes, producing JSON-ready
//! reports. Each suite runs for one affine type.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::cartan::{AffineType, Family, Weight};
use crate::components::{parity_check, special_elements_in_box, membership_equivalence, Bookkeeping, Region};
use crate::morphisms::TypeMap;
use crate::paths::{Op, Poset, SilsPath};
use crate::qbg::{enumerate_qls, lift_qls, project_to_qls, qls_denominator, quantum_eligible_roots, z_length_identity, Qbg};
use crate::sibg::SiBruhatGraph;
use crate::weyl::{AffineSystem, Parabolic};
use crate::{Error, Result};

/// Suite names accepted by [`run`]; `sublemma` is the membership-test comparison.
pub const SUITES: [&str; 7] = ["sublemma", "comparison", "reduction", "crystal", "quantum", "parity", "shapes"];

/// Bounds shared by all suites.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct Bounds {
    /// Sup-norm radius for translation parts.
    pub boxr: i64,
    /// δ-coefficient bound for exhaustive label scans.
    pub max_delta: i64,
    /// Weights `λ = Σ m_i ϖ_i` with `1 ≤ Σ m_i ≤ lambda_total`.
    pub lambda_total: i64,
    /// Root-operator depth for crystal checks.
    pub depth: usize,
    /// Radius for the special elements seeding crystal checks.
    pub special_box: i64,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            boxr: 2,
            max_delta: 3,
            lambda_total: 3,
            depth: 4,
            special_box: 1,
        }
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    #[serde(rename = "type")]
    pub type_name: String,
    pub rank: usize,
    pub checked: u64,
    pub failed: u64,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: &str, sys: &AffineSystem) -> Self {
        let ty = sys.datum().affine_type();
        SuiteReport {
            suite: suite.into(),
            type_name: ty.name(),
            rank: ty.rank,
            ..Default::default()
        }
    }

    pub fn passed(&self) -> bool {
        self.failed == 0
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, what: String) {
        self.failed += 1;
        if self.failures.len() < 50 {
            self.failures.push(what);
        }
    }

    fn absorb(&mut self, other: SuiteReport) {
        self.checked += other.checked;
        self.failed += other.failed;
        for f in other.failures {
            if self.failures.len() < 50 {
                self.failures.push(f);
            }
        }
        self.notes.extend(other.notes);
    }
}

/// All `m` with `1 ≤ Σ m_i ≤ total`, in lexicographic order.
pub fn lambdas(rank: usize, total: i64) -> Vec<Vec<i64>> {
    let mut out: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..rank {
        out = out
            .into_iter()
            .flat_map(|v| {
                let used: i64 = v.iter().sum();
                (0..=total - used).map(move |k| {
                    let mut w = v.clone();
                    w.push(k);
                    w
                })
            })
            .collect();
    }
    out.retain(|v| v.iter().sum::<i64>() > 0);
    out
}

struct Shape {
    m: Vec<i64>,
    book: Bookkeeping,
    lambda: Weight,
    ctx: Arc<Parabolic>,
}

fn shape(sys: &Arc<AffineSystem>, m: &[i64]) -> Result<Shape> {
    let book = Bookkeeping::new(sys.datum(), m)?;
    Ok(Shape {
        m: m.to_vec(),
        lambda: sys.datum().level_zero_weight(m)?,
        ctx: Arc::new(Parabolic::new(sys.clone(), book.j_lambda())?),
        book,
    })
}

fn merge(suite: &str, sys: &AffineSystem, parts: Vec<Result<SuiteReport>>) -> Result<SuiteReport> {
    let mut rep = SuiteReport::new(suite, sys);
    for p in parts {
        rep.absorb(p?);
    }
    Ok(rep)
}

/// The arithmetic membership test for translation paths against chain search.
pub fn membership(sys: &Arc<AffineSystem>, b: &Bounds) -> Result<SuiteReport> {
    let parts = lambdas(sys.rank(), b.lambda_total)
        .into_par_iter()
        .map(|m| {
            let sh = shape(sys, &m)?;
            let region = Region::new(sh.ctx.clone(), b.boxr, b.max_delta)?;
            let cross = if sys.rank() <= 2 { b.boxr } else { b.boxr.min(1) };
            let r = membership_equivalence(&region, &sh.lambda, &sh.book, 3, cross)?;
            let mut rep = SuiteReport::new("sublemma", sys);
            for v in &region.monotonicity_violations {
                rep.fail(format!("translation part decreases along {v}"));
            }
            rep.checked += r.paths_checked + r.crosschecked_pairs;
            rep.failed += r.mismatches + r.crosscheck_mismatches;
            rep.failures.extend(r.examples.iter().map(|e| format!("λ = {m:?}: {e}")));
            rep.notes.push(format!(
                "λ = {m:?}: {} paths, {} multi-entry members, denominator {}",
                r.paths_checked, r.proper_members, r.cut_denominator
            ));
            Ok(rep)
        })
        .collect();
    merge("sublemma", sys, parts)
}

/// Edges of the semi-infinite graph versus edges of the level-zero weight
/// poset, in both directions, plus the simple-root case.
pub fn comparison(sys: &Arc<AffineSystem>, b: &Bounds) -> Result<SuiteReport> {
    let d = sys.datum();
    let roots = d.positive_real_roots(b.max_delta);
    let parts = lambdas(sys.rank(), b.lambda_total)
        .into_par_iter()
        .map(|m| {
            let sh = shape(sys, &m)?;
            let g = SiBruhatGraph::new(sh.ctx.clone());
            let poset = Poset::new(sys.clone(), sh.lambda)?;
            let mut rep = SuiteReport::new("comparison", sys);
            for x in sh.ctx.peterson_in_box(b.boxr)? {
                let mu = sys.act_weight(&x, &sh.lambda);
                for beta in g.candidate_labels(&x)? {
                    let (e1, e2) = (g.is_edge(&x, &beta)?, poset.is_edge(&mu, &beta)?);
                    rep.check(e1 == e2, || format!("λ = {m:?}, {x:?}, {beta:?}: graph {e1}, poset {e2}"));
                }
                for beta in &roots {
                    if poset.is_edge(&mu, beta)? {
                        let e1 = g.is_edge(&x, beta)?;
                        rep.check(e1, || format!("λ = {m:?}, {x:?}, {beta:?}: poset edge not in graph"));
                    }
                }
                for i in 0..=d.rank() {
                    let ai = d.simple_affine_root(i)?;
                    let p = d.node_pairing_int(i, &mu.dynkin);
                    let up = g.is_edge(&x, &ai)?;
                    rep.check(up == (p > 0), || format!("λ = {m:?}, {x:?}: simple edge {i} vs pairing {p}"));
                    let y = sys.mul(&sys.simple_reflection(i)?, &x);
                    let down = sh.ctx.is_peterson(&y) && g.is_edge(&y, &ai)?;
                    rep.check(down == (p < 0), || format!("λ = {m:?}, {x:?}: simple in-edge {i} vs pairing {p}"));
                }
            }
            Ok(rep)
        })
        .collect();
    merge("comparison", sys, parts)
}

/// The reduction map applies to all Peterson representatives, graphs and
/// posets in the box.
pub fn reduction(sys: &Arc<AffineSystem>, b: &Bounds) -> Result<SuiteReport> {
    let map = TypeMap::for_source(sys.clone())?;
    let rank = sys.rank();
    let mut rep = SuiteReport::new("reduction", sys);
    rep.notes.push(format!("target {}", map.target().datum().affine_type().kac_name()));
    let js: Vec<u8> = (0..=sys.datum().all_nodes()).collect();
    let coset: Vec<_> = js
        .par_iter()
        .map(|&j| -> Result<_> { Ok((j, map.check_coset(j, b.boxr, b.max_delta)?, map.check_sib(j, b.boxr, b.max_delta)?)) })
        .collect();
    for c in coset {
        let (j, a, s) = c?;
        rep.checked += (a.checked + s.checked) as u64;
        for v in a.violations.iter().chain(&s.violations) {
            rep.fail(format!("J = {j:#b}: {v}"));
        }
    }
    let posets: Vec<_> = lambdas(rank, b.lambda_total)
        .into_par_iter()
        .map(|m| map.check_poset(&m, b.boxr, b.max_delta).map(|r| (m, r)))
        .collect();
    for p in posets {
        let (m, r) = p?;
        rep.checked += r.checked as u64;
        for v in &r.violations {
            rep.fail(format!("λ = {m:?}: {v}"));
        }
    }
    Ok(rep)
}

/// Crystal axioms, stability of the semi-infinite LS paths under root
/// operators, and compatibility with the projection, on everything reachable
/// from special elements.
pub fn crystal(sys: &Arc<AffineSystem>, b: &Bounds) -> Result<SuiteReport> {
    let parts = lambdas(sys.rank(), b.lambda_total)
        .into_par_iter()
        .map(|m| {
            let sh = shape(sys, &m)?;
            let g = SiBruhatGraph::new(sh.ctx.clone());
            let poset = Poset::new(sys.clone(), sh.lambda)?;
            let mut rep = SuiteReport::new("crystal", sys);
            let specials = special_elements_in_box(&sh.ctx, &sh.book, b.special_box);
            let mut seen = std::collections::HashSet::new();
            let mut layer: Vec<SilsPath> = Vec::new();
            for sp in &specials {
                let eta = sp.to_sils(&sh.ctx)?;
                if seen.insert(eta.clone()) {
                    layer.push(eta);
                }
            }
            for eta in &layer {
                rep.check(eta.validate(&g, &sh.lambda).is_ok(), || format!("λ = {m:?}: special {eta:?} invalid"));
            }
            for _ in 0..b.depth {
                let mut next = Vec::new();
                for eta in &layer {
                    for r in check_operators(sys, &g, &poset, &sh, eta, &mut rep)? {
                        if seen.insert(r.clone()) {
                            next.push(r);
                        }
                    }
                }
                layer = next;
            }
            rep.notes.push(format!("λ = {m:?}: {} specials, {} paths", specials.len(), seen.len()));
            Ok(rep)
        })
        .collect();
    merge("crystal", sys, parts)
}

fn check_operators(
    sys: &AffineSystem,
    g: &SiBruhatGraph,
    poset: &Poset,
    sh: &Shape,
    eta: &SilsPath,
    rep: &mut SuiteReport,
) -> Result<Vec<SilsPath>> {
    let d = sys.datum();
    let lam = &sh.lambda;
    let m = &sh.m;
    let pi = eta.project(sys, lam);
    let wt = eta.wt(sys, lam);
    let mut out = Vec::new();
    for i in 0..=d.rank() {
        let (eps, phi) = (eta.eps(sys, lam, i)?, eta.phi(sys, lam, i)?);
        let pairing = d.node_pairing(i, &wt);
        rep.check(pairing == (phi - eps).into(), || format!("λ = {m:?}: φ - ε ≠ ⟨α_{i}^∨, wt⟩ at {eta:?}"));
        for op in [Op::E, Op::F] {
            let r = eta.apply(g, lam, op, i)?;
            let rp = pi.apply(sys, op, i)?;
            let proj = r.as_ref().map(|x| x.project(sys, lam));
            rep.check(proj == rp, || format!("λ = {m:?}: projection does not commute with {op:?}_{i} at {eta:?}"));
            let count = if op == Op::E { eps } else { phi };
            rep.check(r.is_some() == (count > 0), || format!("λ = {m:?}: {op:?}_{i} zero-ness vs {count} at {eta:?}"));
            let Some(r) = r else { continue };
            let valid = r.validate(g, lam);
            rep.check(valid.is_ok(), || format!("λ = {m:?}: {op:?}_{i} {eta:?} = {r:?} is not a member: {valid:?}"));
            let ls_valid = r.project(sys, lam).validate(poset);
            rep.check(ls_valid.is_ok(), || format!("λ = {m:?}: projection of {r:?} is not an LS path"));
            let back = match op {
                Op::E => r.f(g, lam, i)?,
                Op::F => r.e(g, lam, i)?,
            };
            rep.check(back.as_ref() == Some(eta), || format!("λ = {m:?}: {op:?}_{i} has no inverse at {eta:?}"));
            let mut expect = wt;
            let sign = if op == Op::E { 1 } else { -1 };
            expect.add_scaled(sign.into(), &d.simple_root_weight(i));
            rep.check(r.wt(sys, lam) == expect, || format!("λ = {m:?}: weight of {op:?}_{i} at {eta:?}"));
            let (e2, p2) = (r.eps(sys, lam, i)?, r.phi(sys, lam, i)?);
            let shift = if op == Op::E { (-1, 1) } else { (1, -1) };
            rep.check((e2, p2) == (eps + shift.0, phi + shift.1), || format!("λ = {m:?}: ε/φ of {op:?}_{i} at {eta:?}"));
            out.push(r);
        }
    }
    Ok(out)
}

/// The quantum Bruhat graph correspondence, the length identity for `z_ξ`,
/// and lifting of QLS paths.
pub fn quantum(sys: &Arc<AffineSystem>, b: &Bounds) -> Result<SuiteReport> {
    let d = sys.datum();
    let js: Vec<u8> = (0..=d.all_nodes()).collect();
    let mut parts: Vec<Result<SuiteReport>> = js
        .par_iter()
        .map(|&j| {
            let ctx = Arc::new(Parabolic::new(sys.clone(), j)?);
            let g = SiBruhatGraph::new(ctx.clone());
            let q = Qbg::new(ctx.clone());
            let mut rep = SuiteReport::new("quantum", sys);
            for xi in ctx.adjusted_in_box(b.boxr) {
                for e in q.edges() {
                    let ok = q.to_sib(&g, e, &xi).and_then(|se| q.from_sib(&g, &se)).map(|back| back == *e);
                    rep.check(matches!(ok, Ok(true)), || format!("J = {j:#b}: {e:?} at {xi:?}: {ok:?}"));
                }
            }
            for x in ctx.peterson_in_box(b.boxr)? {
                for e in g.out_edges(&x)?.iter() {
                    let ok = q.from_sib(&g, e).and_then(|qe| q.to_sib(&g, &qe, &x.xi)).map(|back| back == *e);
                    rep.check(matches!(ok, Ok(true)), || format!("J = {j:#b}: {e:?}: {ok:?}"));
                }
            }
            for xi in ctx.adjusted_in_box(b.boxr + 1) {
                rep.check(z_length_identity(&ctx, &xi)?, || format!("J = {j:#b}: length identity fails at {xi:?}"));
            }
            Ok(rep)
        })
        .collect();
    parts.extend(
        lambdas(sys.rank(), b.lambda_total)
            .into_par_iter()
            .map(|m| {
                let sh = shape(sys, &m)?;
                let g = SiBruhatGraph::new(sh.ctx.clone());
                let q = Qbg::new(sh.ctx.clone());
                let mut rep = SuiteReport::new("quantum", sys);
                let den = qls_denominator(&sh.ctx, &sh.lambda.dynkin);
                let all = enumerate_qls(&q, &sh.lambda.dynkin, den);
                for pi in &all {
                    let ok = (|| -> Result<bool> {
                        pi.validate(&q, &sh.lambda.dynkin)?;
                        let eta = lift_qls(&q, &g, pi, &sh.lambda)?;
                        eta.validate(&g, &sh.lambda)?;
                        Ok(project_to_qls(&g, &eta)? == *pi)
                    })();
                    rep.check(matches!(ok, Ok(true)), || format!("λ = {m:?}: {pi:?}: {ok:?}"));
                }
                rep.notes.push(format!("λ = {m:?}: {} QLS paths with cuts in (1/{den})ℤ", all.len()));
                Ok(rep)
            })
            .collect::<Vec<_>>(),
    );
    merge("quantum", sys, parts)
}

/// For `A_{2ℓ}^{(2)}`: chains at cuts `q/(2m_ℓ)`, `q` odd, never use doubled
/// labels or move `α_ℓ`; eligible long quantum roots avoid `α_ℓ`.
pub fn parity(sys: &Arc<AffineSystem>, b: &Bounds) -> Result<SuiteReport> {
    let d = sys.datum();
    if !d.affine_type().is_a2l2() {
        return Err(Error::Precondition("the parity suite applies to A2l2 only".into()));
    }
    let l = d.rank();
    let mut rep = SuiteReport::new("parity", sys);
    let ctx0 = Parabolic::new(sys.clone(), 0)?;
    for k in quantum_eligible_roots(&ctx0) {
        if d.is_long(k) {
            rep.check(d.root(k)[l - 1] == 0, || format!("eligible long root {:?} involves α_ℓ", d.root(k)));
        }
    }
    let parts: Vec<_> = lambdas(l, b.lambda_total)
        .into_par_iter()
        .filter(|m| m[l - 1] != 0)
        .map(|m| -> Result<SuiteReport> {
            let sh = shape(sys, &m)?;
            let region = Region::new(sh.ctx.clone(), b.boxr, b.max_delta)?;
            let p = parity_check(&region, &sh.lambda, &sh.book, b.boxr)?;
            let mut r = SuiteReport::new("parity", sys);
            r.checked += p.pairs_examined + p.witnesses;
            for v in p.violations {
                r.fail(format!("λ = {m:?}: {v}"));
            }
            r.notes.push(format!(
                "λ = {m:?}: cuts {:?}, {} pairs examined, {} chain pairs, {} witnesses",
                p.cuts, p.pairs_examined, p.reachable_pairs, p.witnesses
            ));
            Ok(r)
        })
        .collect();
    for p in parts {
        rep.absorb(p?);
    }
    Ok(rep)
}

/// Label shapes of out-edges, out-edges of translation elements, and in-edges
/// of translation elements, by exhaustive scan.
pub fn shapes(sys: &Arc<AffineSystem>, b: &Bounds) -> Result<SuiteReport> {
    let js: Vec<u8> = (0..=sys.datum().all_nodes()).collect();
    let parts = js
        .par_iter()
        .map(|&j| {
            let ctx = Arc::new(Parabolic::new(sys.clone(), j)?);
            let g = SiBruhatGraph::new(ctx.clone());
            let mut rep = SuiteReport::new("shapes", sys);
            for x in ctx.peterson_in_box(b.boxr)? {
                let bad = g.out_of_form_edges(&x, b.max_delta)?;
                rep.check(bad.is_empty(), || format!("J = {j:#b}: out-of-shape edges {bad:?}"));
            }
            for xi in ctx.adjusted_in_box(b.boxr) {
                let bad = g.non_simple_translation_edges(&xi, b.max_delta)?;
                rep.check(bad.is_empty(), || format!("J = {j:#b}, ξ = {xi:?}: non-simple labels {bad:?}"));
                for i in 0..sys.rank() {
                    if j & (1 << i) == 0 {
                        let w = g.in_edge_at_translation(i, &xi)?;
                        rep.check(w.is_some(), || format!("J = {j:#b}, ξ = {xi:?}: no in-edge for node {}", i + 1));
                    }
                }
            }
            Ok(rep)
        })
        .collect();
    merge("shapes", sys, parts)
}

/// Runs one suite by name, or every applicable suite for `"all"`.
pub fn run(suite: &str, ty: AffineType, b: &Bounds) -> Result<Vec<SuiteReport>> {
    let sys = AffineSystem::new(ty)?;
    let names: Vec<&str> = if suite == "all" {
        SUITES
            .iter()
            .copied()
            .filter(|s| match *s {
                "parity" => ty.is_a2l2(),
                "reduction" | "quantum" | "sublemma" | "crystal" => ty.is_twisted(),
                _ => true,
            })
            .collect()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(Error::Precondition(format!("unknown suite {suite}")));
    };
    names
        .into_iter()
        .map(|s| match s {
            "sublemma" => membership(&sys, b),
            "comparison" => comparison(&sys, b),
            "reduction" => reduction(&sys, b),
            "crystal" => crystal(&sys, b),
            "quantum" => quantum(&sys, b),
            "parity" => parity(&sys, b),
            _ => shapes(&sys, b),
        })
        .collect()
}

/// Types covered by the default acceptance runs.
pub fn small_twisted_types() -> Vec<AffineType> {
    [
        (Family::A2l2, 1),
        (Family::A2l2, 2),
        (Family::Dlp12, 2),
        (Family::Dlp12, 3),
        (Family::A2lm12, 3),
        (Family::D43, 2),
    ]
    .into_iter()
    .map(|(f, l)| AffineType::new(f, l).unwrap())
    .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::paths::LsPath;

    #[test]
    fn lambda_enumeration() {
        assert_eq!(lambdas(1, 3), vec![vec![1], vec![2], vec![3]]);
        assert_eq!(lambdas(2, 1), vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(lambdas(3, 3).len(), 19);
    }

    #[test]
    fn all_suites_in_rank_one() {
        let ty = AffineType::new(Family::A2l2, 1).unwrap();
        let b = Bounds { depth: 2, ..Default::default() };
        for r in run("all", ty, &b).unwrap() {
            assert!(r.passed(), "{}: {:?}", r.suite, r.failures);
        }
    }

    #[test]
    fn straight_ls_path_is_valid() {
        let sys = AffineSystem::new(AffineType::new(Family::Dlp12, 2).unwrap()).unwrap();
        let lam = sys.datum().level_zero_weight(&[1, 1]).unwrap();
        let poset = Poset::new(sys.clone(), lam).unwrap();
        LsPath::straight(lam).validate(&poset).unwrap();
    }
}
