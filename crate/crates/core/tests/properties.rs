//! Randomized checks of structural invariants across all supported types.

use std::sync::Arc;

use proptest::prelude::*;
use sils::cartan::{coords, AffineRoot, AffineType, Family, FiniteFamily, RatWeight, Weight};
use sils::components::Bookkeeping;
use sils::morphisms::TypeMap;
use sils::paths::{LsPath, Op, SilsPath};
use sils::qbg::{Qbg, QbgKind};
use sils::sibg::SiBruhatGraph;
use sils::weyl::{AffineSystem, Parabolic};
use sils::Q;

fn types() -> Vec<AffineType> {
    let v = vec![
        (Family::A2l2, 1),
        (Family::A2l2, 2),
        (Family::A2l2, 3),
        (Family::Dlp12, 2),
        (Family::Dlp12, 3),
        (Family::A2lm12, 3),
        (Family::D43, 2),
        (Family::E62, 4),
        (Family::Untwisted(FiniteFamily::B), 3),
        (Family::Untwisted(FiniteFamily::C), 2),
        (Family::Untwisted(FiniteFamily::G2), 2),
    ];
    v.into_iter().map(|(f, l)| AffineType::new(f, l).unwrap()).collect()
}

fn small_twisted() -> Vec<AffineType> {
    sils::verify::small_twisted_types()
}

fn sys(t: AffineType) -> Arc<AffineSystem> {
    AffineSystem::new(t).unwrap()
}

fn pick<T: Clone>(v: &[T], k: usize) -> T {
    v[k % v.len()].clone()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn delta_step_is_weyl_invariant(t in 0usize..11, w in 0usize..2000, k in 0usize..100) {
        let s = sys(pick(&types(), t));
        let d = s.datum();
        let w = (w % s.weyl().order()) as u32;
        let k = k % d.n_roots();
        prop_assert_eq!(d.delta_step(s.weyl().act_root(w, k)), d.delta_step(k));
    }

    #[test]
    fn real_roots_closed_and_delta_is_null(t in 0usize..11, b in 0usize..400, i in 0usize..5) {
        let s = sys(pick(&types(), t));
        let d = s.datum();
        let roots = d.positive_real_roots(3);
        let beta = pick(&roots, b);
        let i = i % (d.rank() + 1);
        let si = s.simple_reflection(i).unwrap();
        let img = s.act_root(&si, &beta).unwrap();
        prop_assert!(d.validate_root(&img).is_ok());
        prop_assert_eq!(img.mult, beta.mult);
        // s_i fixes δ: shifting β by 6δ (a multiple of every δ-step) shifts the image by the same amount.
        let shifted = AffineRoot::new(beta.gamma, beta.mult, beta.delta + 6);
        let img2 = s.act_root(&si, &shifted).unwrap();
        prop_assert_eq!(img2, AffineRoot::new(img.gamma, img.mult, img.delta + 6));
        prop_assert_eq!(s.act_root(&si, &img).unwrap(), beta);
    }

    #[test]
    fn doubled_coroot_pairs_by_half(l in 1usize..4, k in 0usize..30, n in 1i64..4, m in prop::collection::vec(0i64..4, 4), w in 0usize..48, dl in -3i64..4) {
        let s = sys(AffineType::new(Family::A2l2, l).unwrap());
        let d = s.datum();
        let k = k % d.n_roots();
        prop_assume!(d.is_short(k));
        let lam = d.level_zero_weight(&m[..l]).unwrap();
        let mu = Weight { dynkin: s.weyl().act_dynkin((w % s.weyl().order()) as u32, &lam.dynkin), delta: dl };
        let doubled = AffineRoot::new(*d.root(k), 2, 2 * n - 1);
        let plain = AffineRoot::finite(*d.root(k));
        let half = d.coroot_pairing(&plain, &mu).unwrap() / Q::from(2);
        prop_assert_eq!(d.coroot_pairing(&doubled, &mu).unwrap(), half);
        let r = d.reflect_weight(&doubled, &mu).unwrap();
        prop_assert_eq!(d.reflect_weight(&doubled, &r).unwrap(), mu);
    }

    #[test]
    fn peterson_factorization_lengths(t in 0usize..6, j in 0u8..16, w in 0usize..400, x in 0usize..400) {
        let s = sys(pick(&small_twisted(), t));
        let j = j & s.datum().all_nodes();
        let ctx = Parabolic::new(s.clone(), j).unwrap();
        let w = pick(ctx.min_reps(), w);
        let xi = pick(&ctx.adjusted_in_box(2), x);
        let z = ctx.z_xi(&xi).unwrap();
        let wg = s.weyl();
        prop_assert_eq!(wg.length(wg.mul(w, z)), wg.length(w) + wg.length(z));
        let el = ctx.compose(w, &xi).unwrap();
        prop_assert!(ctx.is_peterson(&el));
        prop_assert_eq!(
            s.si_length(&el),
            wg.length(w) as i64 + wg.length(z) as i64 + s.datum().two_rho_pairing(&xi)
        );
        prop_assert_eq!(ctx.decompose(&el), Some((w, xi)));
    }

    #[test]
    fn adjusted_vectors_determined_by_projection(t in 0usize..6, j in 0u8..16) {
        let s = sys(pick(&small_twisted(), t));
        let ctx = Parabolic::new(s.clone(), j & s.datum().all_nodes()).unwrap();
        let adj = ctx.adjusted_in_box(2);
        let mut proj: Vec<_> = adj.iter().map(|xi| ctx.project(xi)).collect();
        proj.sort();
        proj.dedup();
        prop_assert_eq!(proj.len(), adj.len());
    }

    #[test]
    fn edges_raise_semi_infinite_length_by_one(t in 0usize..6, j in 0u8..16, x in 0usize..5000) {
        let s = sys(pick(&small_twisted(), t));
        let ctx = Arc::new(Parabolic::new(s.clone(), j & s.datum().all_nodes()).unwrap());
        let g = SiBruhatGraph::new(ctx.clone());
        let x = pick(&ctx.peterson_in_box(1).unwrap(), x);
        for e in g.scan_out_edges(&x, 3).unwrap() {
            prop_assert_eq!(s.si_length(&e.target), s.si_length(&x) + 1);
        }
    }

    #[test]
    fn ls_crystal_axioms_along_random_walks(
        t in 0usize..6,
        m in prop::collection::vec(0i64..3, 4),
        walk in prop::collection::vec((0usize..5, any::<bool>()), 0..10),
    ) {
        let s = sys(pick(&small_twisted(), t));
        let d = s.datum();
        let m = &m[..d.rank()];
        prop_assume!(m.iter().any(|&x| x > 0));
        let lam = d.level_zero_weight(m).unwrap();
        let mut pi = LsPath::straight(lam);
        for (i, up) in walk {
            let i = i % (d.rank() + 1);
            let (eps, phi) = (pi.eps(&s, i).unwrap(), pi.phi(&s, i).unwrap());
            // ε is the number of times e_i applies; φ is the height at 1 minus the minimum.
            let mut n = 0;
            let mut q = pi.clone();
            while let Some(r) = q.e(&s, i).unwrap() {
                n += 1;
                q = r;
            }
            prop_assert_eq!(eps, n);
            prop_assert_eq!(Q::from(phi), pi.height(&s, i, Q::from(1)) - pi.min_height(&s, i));
            prop_assert_eq!(Q::from(-eps), pi.min_height(&s, i));
            let op = if up { Op::E } else { Op::F };
            if let Some(r) = pi.apply(&s, op, i).unwrap() {
                let back = match op { Op::E => r.f(&s, i).unwrap(), Op::F => r.e(&s, i).unwrap() };
                prop_assert_eq!(back.as_ref(), Some(&pi));
                let mut expect = pi.wt();
                expect.add_scaled(if up { Q::from(1) } else { Q::from(-1) }, &d.simple_root_weight(i));
                prop_assert_eq!(r.wt(), expect);
                pi = r;
            }
        }
    }

    #[test]
    fn sils_operators_commute_with_projection(
        t in 0usize..6,
        m in prop::collection::vec(0i64..3, 4),
        start in prop::collection::vec(-1i64..2, 4),
        walk in prop::collection::vec((0usize..5, any::<bool>()), 0..8),
    ) {
        let s = sys(pick(&small_twisted(), t));
        let d = s.datum();
        let m = &m[..d.rank()];
        prop_assume!(m.iter().any(|&x| x > 0));
        let book = Bookkeeping::new(d, m).unwrap();
        let lam = d.level_zero_weight(m).unwrap();
        let ctx = Arc::new(Parabolic::new(s.clone(), book.j_lambda()).unwrap());
        let g = SiBruhatGraph::new(ctx.clone());
        let xi = ctx.adjust(&coords(&start[..d.rank()])).unwrap().0;
        let mut eta = SilsPath::straight(ctx.translation_element(&xi).unwrap());
        for (i, up) in walk {
            let i = i % (d.rank() + 1);
            let op = if up { Op::E } else { Op::F };
            let r = eta.apply(&g, &lam, op, i).unwrap();
            let lhs = r.as_ref().map(|p| p.project(&s, &lam));
            prop_assert_eq!(lhs, eta.project(&s, &lam).apply(&s, op, i).unwrap());
            let pairing = d.node_pairing(i, &eta.wt(&s, &lam));
            let diff = eta.phi(&s, &lam, i).unwrap() - eta.eps(&s, &lam, i).unwrap();
            prop_assert_eq!(pairing, Q::from(diff));
            if let Some(r) = r {
                prop_assert!(r.validate(&g, &lam).is_ok());
                eta = r;
            }
        }
    }

    #[test]
    fn reduction_preserves_the_parabolic_subset(t in 0usize..6, m in prop::collection::vec(0i64..3, 4)) {
        let s = sys(pick(&small_twisted(), t));
        let map = TypeMap::for_source(s.clone()).unwrap();
        let m = &m[..s.rank()];
        prop_assume!(m.iter().any(|&x| x > 0));
        let a = Bookkeeping::new(s.datum(), m).unwrap();
        let b = Bookkeeping::new(map.target().datum(), m).unwrap();
        prop_assert_eq!(a.j_lambda(), b.j_lambda());
        let (ls, lt) = map.weights(m).unwrap();
        prop_assert_eq!(&ls.dynkin[..s.rank()].iter().map(|&x| x > 0).collect::<Vec<_>>(),
                        &lt.dynkin[..s.rank()].iter().map(|&x| x > 0).collect::<Vec<_>>());
    }

    #[test]
    fn quantum_edge_parity_matches_lifted_label(
        l in 1usize..3,
        m in prop::collection::vec(0i64..4, 2),
        x in 0usize..100,
        e in 0usize..200,
        p in 1i64..12,
        q in 1i64..12,
    ) {
        let s = sys(AffineType::new(Family::A2l2, l).unwrap());
        let d = s.datum();
        let m = &m[..l];
        prop_assume!(m.iter().any(|&v| v > 0) && p <= q);
        let book = Bookkeeping::new(d, m).unwrap();
        let lam = d.level_zero_weight(m).unwrap();
        let ctx = Arc::new(Parabolic::new(s.clone(), book.j_lambda()).unwrap());
        let g = SiBruhatGraph::new(ctx.clone());
        let qbg = Qbg::new(ctx.clone());
        let edge = pick(qbg.edges(), e);
        let xi = pick(&ctx.adjusted_in_box(2), x);
        let se = qbg.to_sib(&g, &edge, &xi).unwrap();
        let a = Q::new(p, q);
        prop_assert_eq!(g.admissible(&se.source, &se.label, &lam, a).unwrap(), qbg.admissible(&edge, &lam.dynkin, a));
        let doubled = edge.kind == QbgKind::Quantum && d.is_short(edge.label);
        prop_assert_eq!(se.label.mult == 2, doubled);
    }
}

#[test]
fn rational_weights_accumulate() {
    let s = sys(AffineType::new(Family::Dlp12, 2).unwrap());
    let lam = s.datum().level_zero_weight(&[1, 1]).unwrap();
    let mut w = RatWeight::from_weight(&lam);
    w.add_scaled(Q::new(1, 2), &lam);
    w.add_scaled(Q::new(-1, 2), &lam);
    assert_eq!(w, RatWeight::from_weight(&lam));
}
