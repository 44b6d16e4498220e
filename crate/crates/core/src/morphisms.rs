//! Reduction maps between affine types that identify Peterson representatives,
//! semi-infinite graphs and level-zero weight posets.
//!
//! * The dual map sends `D_{ℓ+1}^{(2)}`, `A_{2ℓ-1}^{(2)}`, `E_6^{(2)}`,
//!   `D_4^{(3)}` to the untwisted type with transposed Cartan matrix. It keeps
//!   reduced words and translation coordinates, and sends `γ + n c_γ δ` to
//!   `γ^∨ + n δ`.
//! * The folding map sends `A_{2ℓ}^{(2)}` to `D_{ℓ+1}^{(2)}` (to `A_1^{(1)}` in
//!   rank one). It keeps words and translations, and sends `γ + nδ` to
//!   `γ + 2nδ` and `2γ + (2n-1)δ` to `γ + (2n-1)δ`.

use std::sync::Arc;

use serde::Serialize;

use crate::cartan::{AffineRoot, AffineType, Family, FiniteFamily, Weight};
use crate::paths::Poset;
use crate::sibg::SiBruhatGraph;
use crate::weyl::{box_points, AffineSystem, AffineWeylElement, Parabolic};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Reduction {
    Dual,
    Fold,
}

/// A reduction map between two affine systems of the same rank.
#[derive(Debug, Clone)]
pub struct TypeMap {
    kind: Reduction,
    source: Arc<AffineSystem>,
    target: Arc<AffineSystem>,
}

/// Outcome of an exhaustive comparison.
#[derive(Clone, Debug, Default, Serialize)]
pub struct CheckReport {
    pub checked: usize,
    pub violations: Vec<String>,
}

impl CheckReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.violations.len() < 20 {
            self.violations.push(what());
        }
    }
}

impl TypeMap {
    /// The reduction applicable to `source`.
    pub fn for_source(source: Arc<AffineSystem>) -> Result<Self> {
        let ty = source.datum().affine_type();
        let (kind, tty) = match ty.family {
            Family::A2l2 if ty.rank == 1 => (Reduction::Fold, AffineType::new(Family::Untwisted(FiniteFamily::B), 1)?),
            Family::A2l2 => (Reduction::Fold, AffineType::new(Family::Dlp12, ty.rank)?),
            Family::Untwisted(_) => {
                return Err(Error::Precondition(format!("{} has no reduction map", ty.name())));
            }
            _ => (
                Reduction::Dual,
                AffineType::new(Family::Untwisted(ty.finite_family().transpose()), ty.rank)?,
            ),
        };
        Ok(TypeMap {
            kind,
            source,
            target: AffineSystem::new(tty)?,
        })
    }

    pub fn kind(&self) -> Reduction {
        self.kind
    }

    pub fn source(&self) -> &Arc<AffineSystem> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AffineSystem> {
        &self.target
    }

    fn transport(from: &AffineSystem, to: &AffineSystem, x: &AffineWeylElement) -> AffineWeylElement {
        let word: Vec<usize> = from.weyl().word(x.w).iter().map(|&i| i as usize).collect();
        AffineWeylElement {
            w: to.weyl().from_word(&word).expect("ranks agree"),
            xi: x.xi,
        }
    }

    pub fn map_element(&self, x: &AffineWeylElement) -> AffineWeylElement {
        Self::transport(&self.source, &self.target, x)
    }

    pub fn unmap_element(&self, x: &AffineWeylElement) -> AffineWeylElement {
        Self::transport(&self.target, &self.source, x)
    }

    pub fn map_root(&self, beta: &AffineRoot) -> Result<AffineRoot> {
        let sd = self.source.datum();
        let td = self.target.datum();
        let k = sd.validate_root(beta)?;
        match self.kind {
            Reduction::Dual => {
                let c = sd.delta_step(k);
                let t = (0..td.n_roots())
                    .find(|&t| *td.coroot(t) == beta.gamma)
                    .ok_or_else(|| Error::Internal("no dual root".into()))?;
                Ok(AffineRoot::new(*td.root(t), 1, beta.delta / c))
            }
            Reduction::Fold => Ok(match beta.mult {
                1 => AffineRoot::new(beta.gamma, 1, 2 * beta.delta),
                _ => AffineRoot::new(beta.gamma, 1, beta.delta),
            }),
        }
    }

    pub fn unmap_root(&self, beta: &AffineRoot) -> Result<AffineRoot> {
        let sd = self.source.datum();
        let td = self.target.datum();
        let t = td.validate_root(beta)?;
        match self.kind {
            Reduction::Dual => {
                let gamma = *td.coroot(t);
                let k = sd.expect_root(&gamma)?;
                Ok(AffineRoot::new(gamma, 1, beta.delta * sd.delta_step(k)))
            }
            Reduction::Fold => {
                let k = sd.expect_root(&beta.gamma)?;
                if beta.delta % 2 == 0 {
                    Ok(AffineRoot::new(beta.gamma, 1, beta.delta / 2))
                } else if sd.is_short(k) {
                    Ok(AffineRoot::new(beta.gamma, 2, beta.delta))
                } else {
                    Err(Error::Internal("odd δ-part over a long root".into()))
                }
            }
        }
    }

    /// Level-zero weights with the same coefficients `m_i` on both sides.
    pub fn weights(&self, m: &[i64]) -> Result<(Weight, Weight)> {
        Ok((
            self.source.datum().level_zero_weight(m)?,
            self.target.datum().level_zero_weight(m)?,
        ))
    }

    /// Peterson membership, semi-infinite length, root equivariance and
    /// invertibility on all `(w, ξ)` with `‖ξ‖∞ ≤ r`.
    pub fn check_coset(&self, j: u8, r: i64, max_delta: i64) -> Result<CheckReport> {
        let sp = Parabolic::new(self.source.clone(), j)?;
        let tp = Parabolic::new(self.target.clone(), j)?;
        let sd = self.source.datum();
        let roots = sd.positive_real_roots(max_delta);
        let mut rep = CheckReport::default();
        for xi in box_points(sd.rank(), r, sd.all_nodes()) {
            for w in self.source.weyl().elements() {
                let x = AffineWeylElement { w, xi };
                let y = self.map_element(&x);
                rep.record(sp.is_peterson(&x) == tp.is_peterson(&y), || format!("membership differs at {x:?}"));
                rep.record(self.source.si_length(&x) == self.target.si_length(&y), || {
                    format!("semi-infinite length differs at {x:?}")
                });
                rep.record(self.unmap_element(&y) == x, || format!("no round trip at {x:?}"));
                if xi.iter().all(|c| c.abs() <= 1) {
                    for beta in &roots {
                        let lhs = self.map_root(&self.source.act_root(&x, beta)?)?;
                        let rhs = self.target.act_root(&y, &self.map_root(beta)?)?;
                        rep.record(lhs == rhs, || format!("root action differs at {x:?}, {beta:?}"));
                    }
                }
            }
        }
        for beta in &roots {
            rep.record(self.unmap_root(&self.map_root(beta)?)? == *beta, || format!("root {beta:?} does not round trip"));
        }
        Ok(rep)
    }

    /// Edges of the semi-infinite graphs agree, scanning labels with
    /// δ-coefficient at most `max_delta` on either side.
    pub fn check_sib(&self, j: u8, r: i64, max_delta: i64) -> Result<CheckReport> {
        let sg = SiBruhatGraph::new(Arc::new(Parabolic::new(self.source.clone(), j)?));
        let tg = SiBruhatGraph::new(Arc::new(Parabolic::new(self.target.clone(), j)?));
        let mut rep = CheckReport::default();
        let sroots = self.source.datum().positive_real_roots(max_delta);
        let troots = self.target.datum().positive_real_roots(max_delta);
        for x in sg.ctx().peterson_in_box(r)? {
            let y = self.map_element(&x);
            for beta in &sroots {
                let b2 = self.map_root(beta)?;
                rep.record(sg.is_edge(&x, beta)? == tg.is_edge(&y, &b2)?, || {
                    format!("edge {x:?} --{beta:?}--> differs")
                });
            }
            for beta in &troots {
                let b1 = self.unmap_root(beta)?;
                rep.record(sg.is_edge(&x, &b1)? == tg.is_edge(&y, beta)?, || {
                    format!("image edge {y:?} --{beta:?}--> differs")
                });
            }
        }
        Ok(rep)
    }

    /// Edges `xλ → s_β xλ` of the level-zero weight posets agree, for `λ`
    /// with coefficients `m` and Peterson `x` with `‖ξ‖∞ ≤ r`.
    pub fn check_poset(&self, m: &[i64], r: i64, max_delta: i64) -> Result<CheckReport> {
        let (sl, tl) = self.weights(m)?;
        let j: u8 = (0..m.len()).filter(|&i| m[i] == 0).map(|i| 1u8 << i).sum();
        let sp = Parabolic::new(self.source.clone(), j)?;
        let sposet = Poset::new(self.source.clone(), sl)?;
        let tposet = Poset::new(self.target.clone(), tl)?;
        let mut rep = CheckReport::default();
        let sroots = self.source.datum().positive_real_roots(max_delta);
        let troots = self.target.datum().positive_real_roots(max_delta);
        for x in sp.peterson_in_box(r)? {
            let y = self.map_element(&x);
            let (mu, nu) = (self.source.act_weight(&x, &sl), self.target.act_weight(&y, &tl));
            for beta in &sroots {
                let b2 = self.map_root(beta)?;
                rep.record(sposet.is_edge(&mu, beta)? == tposet.is_edge(&nu, &b2)?, || {
                    format!("poset edge at {mu:?} along {beta:?} differs")
                });
            }
            for beta in &troots {
                let b1 = self.unmap_root(beta)?;
                rep.record(sposet.is_edge(&mu, &b1)? == tposet.is_edge(&nu, beta)?, || {
                    format!("image poset edge at {nu:?} along {beta:?} differs")
                });
            }
        }
        Ok(rep)
    }
}
