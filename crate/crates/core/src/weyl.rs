//! Finite and affine Weyl groups, semi-infinite length and Peterson coset
//! representatives.
//!
//! The finite Weyl group is enumerated once by breadth-first search over right
//! multiplication by simple reflections, so every stored word is reduced. An
//! affine element is a pair `(w, ξ)` standing for `w t_ξ`, with `ξ` in the root
//! lattice (twisted types) or the coroot lattice (untwisted types).

use std::collections::{HashMap, VecDeque};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::cartan::{
    add, scale, AffineRoot, AffineType, Coords, NodeSet, RootDatum, Weight, MAX_RANK, ZERO,
};
use crate::{Error, Result};

pub type Mat = [[i64; MAX_RANK]; MAX_RANK];

/// Index of a finite Weyl group element.
pub type ElemId = u32;

fn identity_mat(rank: usize) -> Mat {
    let mut m = [[0; MAX_RANK]; MAX_RANK];
    for (i, row) in m.iter_mut().enumerate().take(rank) {
        row[i] = 1;
    }
    m
}

fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let mut c = [[0; MAX_RANK]; MAX_RANK];
    for i in 0..MAX_RANK {
        for k in 0..MAX_RANK {
            if a[i][k] != 0 {
                for j in 0..MAX_RANK {
                    c[i][j] += a[i][k] * b[k][j];
                }
            }
        }
    }
    c
}

pub fn mat_vec(a: &Mat, v: &Coords) -> Coords {
    std::array::from_fn(|i| (0..MAX_RANK).map(|j| a[i][j] * v[j]).sum())
}

/// The finite Weyl group with its multiplication tables.
#[derive(Debug)]
pub struct WeylGroup {
    rank: usize,
    root_mats: Vec<Mat>,
    lat_mats: Vec<Mat>,
    wt_mats: Vec<Mat>,
    words: Vec<Vec<u8>>,
    lengths: Vec<u32>,
    inverses: Vec<ElemId>,
    rmul: Vec<[ElemId; MAX_RANK]>,
    lmul: Vec<[ElemId; MAX_RANK]>,
    root_perm: Vec<Vec<u16>>,
    index: HashMap<Mat, ElemId>,
    refl: Vec<ElemId>,
}

impl WeylGroup {
    pub fn new(d: &RootDatum) -> Result<Self> {
        let rank = d.rank();
        let c = |i: usize, j: usize| d.cartan(i, j);
        let id = identity_mat(rank);
        let mut s_root = Vec::new();
        let mut s_coroot = Vec::new();
        let mut s_wt = Vec::new();
        for i in 0..rank {
            let mut a = id;
            let mut b = id;
            let mut w = id;
            for j in 0..rank {
                a[i][j] -= c(i, j);
                b[i][j] -= c(j, i);
                w[j][i] -= c(j, i);
            }
            s_root.push(a);
            s_coroot.push(b);
            s_wt.push(w);
        }
        let twisted = d.affine_type().is_twisted();

        let mut root_mats = vec![id];
        let mut lat_mats = vec![id];
        let mut wt_mats = vec![id];
        let mut words: Vec<Vec<u8>> = vec![vec![]];
        let mut index = HashMap::new();
        index.insert(id, 0u32);
        let mut queue = VecDeque::from([0usize]);
        while let Some(e) = queue.pop_front() {
            for i in 0..rank {
                let m = mat_mul(&root_mats[e], &s_root[i]);
                if index.contains_key(&m) {
                    continue;
                }
                let id_new = root_mats.len() as ElemId;
                index.insert(m, id_new);
                root_mats.push(m);
                let lat_gen = if twisted { &s_root[i] } else { &s_coroot[i] };
                lat_mats.push(mat_mul(&lat_mats[e], lat_gen));
                wt_mats.push(mat_mul(&wt_mats[e], &s_wt[i]));
                let mut word = words[e].clone();
                word.push(i as u8);
                words.push(word);
                queue.push_back(id_new as usize);
            }
            if root_mats.len() > 100_000 {
                return Err(Error::Internal("Weyl group too large".into()));
            }
        }
        let n = root_mats.len();
        let lengths: Vec<u32> = words.iter().map(|w| w.len() as u32).collect();
        let mut rmul = vec![[0; MAX_RANK]; n];
        let mut lmul = vec![[0; MAX_RANK]; n];
        for e in 0..n {
            for i in 0..rank {
                rmul[e][i] = index[&mat_mul(&root_mats[e], &s_root[i])];
                lmul[e][i] = index[&mat_mul(&s_root[i], &root_mats[e])];
            }
        }
        let mut inverses = vec![0; n];
        for e in 0..n {
            let mut x = 0u32;
            for &i in words[e].iter().rev() {
                x = rmul[x as usize][i as usize];
            }
            inverses[e] = x;
        }
        let mut root_perm = Vec::with_capacity(n);
        for m in &root_mats {
            let perm: Vec<u16> = (0..d.n_roots())
                .map(|k| d.expect_root(&mat_vec(m, d.root(k))).map(|r| r as u16))
                .collect::<Result<_>>()?;
            root_perm.push(perm);
        }
        let mut refl = Vec::with_capacity(d.n_roots());
        for k in 0..d.n_roots() {
            // s_γ(v) = v - ⟨γ^∨, v⟩ γ on root coordinates.
            let mut m = id;
            let co = d.coroot(k);
            let g = d.root(k);
            for col in 0..rank {
                let p: i64 = (0..rank).map(|i| co[i] * c(i, col)).sum();
                for row in 0..rank {
                    m[row][col] -= p * g[row];
                }
            }
            refl.push(
                *index
                    .get(&m)
                    .ok_or_else(|| Error::Internal("reflection not found".into()))?,
            );
        }
        Ok(WeylGroup {
            rank,
            root_mats,
            lat_mats,
            wt_mats,
            words,
            lengths,
            inverses,
            rmul,
            lmul,
            root_perm,
            index,
            refl,
        })
    }

    pub fn order(&self) -> usize {
        self.root_mats.len()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn identity(&self) -> ElemId {
        0
    }

    pub fn length(&self, w: ElemId) -> u32 {
        self.lengths[w as usize]
    }

    /// Reduced word over internal finite indices.
    pub fn word(&self, w: ElemId) -> &[u8] {
        &self.words[w as usize]
    }

    pub fn inverse(&self, w: ElemId) -> ElemId {
        self.inverses[w as usize]
    }

    pub fn simple(&self, i: usize) -> ElemId {
        self.rmul[0][i]
    }

    pub fn rmul_simple(&self, w: ElemId, i: usize) -> ElemId {
        self.rmul[w as usize][i]
    }

    pub fn lmul_simple(&self, i: usize, w: ElemId) -> ElemId {
        self.lmul[w as usize][i]
    }

    pub fn mul(&self, a: ElemId, b: ElemId) -> ElemId {
        self.words[b as usize]
            .iter()
            .fold(a, |x, &i| self.rmul[x as usize][i as usize])
    }

    pub fn from_word(&self, word: &[usize]) -> Result<ElemId> {
        let mut x = 0;
        for &i in word {
            if i >= self.rank {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    limit: self.rank,
                });
            }
            x = self.rmul[x as usize][i];
        }
        Ok(x)
    }

    /// Image of the root with index `k`.
    pub fn act_root(&self, w: ElemId, k: usize) -> usize {
        self.root_perm[w as usize][k] as usize
    }

    /// Action on the translation lattice.
    pub fn act_lattice(&self, w: ElemId, xi: &Coords) -> Coords {
        mat_vec(&self.lat_mats[w as usize], xi)
    }

    /// Action on Dynkin labels of weights.
    pub fn act_dynkin(&self, w: ElemId, d: &Coords) -> Coords {
        mat_vec(&self.wt_mats[w as usize], d)
    }

    pub fn root_matrix(&self, w: ElemId) -> &Mat {
        &self.root_mats[w as usize]
    }

    pub fn lookup(&self, m: &Mat) -> Option<ElemId> {
        self.index.get(m).copied()
    }

    /// Reflection in the finite root with index `k`.
    pub fn reflection(&self, k: usize) -> ElemId {
        self.refl[k]
    }

    pub fn elements(&self) -> impl Iterator<Item = ElemId> {
        0..self.order() as ElemId
    }
}

/// `w t_ξ` in the affine Weyl group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineWeylElement {
    pub w: ElemId,
    pub xi: Coords,
}

/// A root datum together with its finite Weyl group.
#[derive(Debug)]
pub struct AffineSystem {
    datum: RootDatum,
    weyl: WeylGroup,
}

impl AffineSystem {
    pub fn new(ty: AffineType) -> Result<Arc<Self>> {
        let datum = RootDatum::new(ty)?;
        let weyl = WeylGroup::new(&datum)?;
        Ok(Arc::new(AffineSystem { datum, weyl }))
    }

    pub fn datum(&self) -> &RootDatum {
        &self.datum
    }

    pub fn weyl(&self) -> &WeylGroup {
        &self.weyl
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn identity(&self) -> AffineWeylElement {
        AffineWeylElement { w: 0, xi: ZERO }
    }

    pub fn translation(&self, xi: Coords) -> AffineWeylElement {
        AffineWeylElement { w: 0, xi }
    }

    pub fn finite(&self, w: ElemId) -> AffineWeylElement {
        AffineWeylElement { w, xi: ZERO }
    }

    /// Simple reflection of node `i ∈ I_af`.
    pub fn simple_reflection(&self, i: usize) -> Result<AffineWeylElement> {
        let beta = self.datum.simple_affine_root(i)?;
        self.reflection(&beta)
    }

    /// Reflection in a real affine root, `s_β = s_γ t_κ`.
    pub fn reflection(&self, beta: &AffineRoot) -> Result<AffineWeylElement> {
        let k = self.datum.validate_root(beta)?;
        let kappa = self.datum.reflection_translation(beta)?;
        Ok(AffineWeylElement {
            w: self.weyl.reflection(k),
            xi: kappa,
        })
    }

    /// `(w t_ξ)(v t_ζ) = wv t_{v⁻¹ξ + ζ}`.
    pub fn mul(&self, x: &AffineWeylElement, y: &AffineWeylElement) -> AffineWeylElement {
        let vinv = self.weyl.inverse(y.w);
        AffineWeylElement {
            w: self.weyl.mul(x.w, y.w),
            xi: add(&self.weyl.act_lattice(vinv, &x.xi), &y.xi),
        }
    }

    pub fn inverse(&self, x: &AffineWeylElement) -> AffineWeylElement {
        AffineWeylElement {
            w: self.weyl.inverse(x.w),
            xi: scale(-1, &self.weyl.act_lattice(x.w, &x.xi)),
        }
    }

    /// Product of affine simple reflections.
    pub fn from_affine_word(&self, word: &[usize]) -> Result<AffineWeylElement> {
        let mut x = self.identity();
        for &i in word {
            x = self.mul(&x, &self.simple_reflection(i)?);
        }
        Ok(x)
    }

    /// `x(mult·γ + dδ) = mult·wγ + (d - mult·(ξ,γ))δ`.
    pub fn act_root(&self, x: &AffineWeylElement, beta: &AffineRoot) -> Result<AffineRoot> {
        let k = self.datum.validate_root(beta)?;
        let img = self.weyl.act_root(x.w, k);
        Ok(AffineRoot {
            gamma: *self.datum.root(img),
            mult: beta.mult,
            delta: beta.delta - beta.mult as i64 * self.datum.translation_pairing(&x.xi, k),
        })
    }

    /// `w t_ξ μ = w μ - (ξ, μ) δ` on level-zero weights.
    pub fn act_weight(&self, x: &AffineWeylElement, mu: &Weight) -> Weight {
        Weight {
            dynkin: self.weyl.act_dynkin(x.w, &mu.dynkin),
            delta: mu.delta - self.datum.translation_pairing_weight(&x.xi, &mu.dynkin),
        }
    }

    /// Semi-infinite length `ℓ(w) + 2⟨ρ^∨, ξ⟩`.
    pub fn si_length(&self, x: &AffineWeylElement) -> i64 {
        self.weyl.length(x.w) as i64 + self.datum.two_rho_pairing(&x.xi)
    }

    /// Reduced word of the finite part as affine node numbers `1..=ℓ`.
    pub fn finite_word(&self, w: ElemId) -> Vec<usize> {
        self.weyl.word(w).iter().map(|&i| i as usize + 1).collect()
    }
}

/// All vectors supported on `mask` with entries in `[-r, r]`.
pub fn box_points(rank: usize, r: i64, mask: NodeSet) -> Vec<Coords> {
    let mut out = vec![ZERO];
    for i in 0..rank {
        if mask & (1 << i) == 0 {
            continue;
        }
        let mut next = Vec::with_capacity(out.len() * (2 * r as usize + 1));
        for v in &out {
            for c in -r..=r {
                let mut u = *v;
                u[i] = c;
                next.push(u);
            }
        }
        out = next;
    }
    out
}

/// Parabolic data for a subset `J ⊆ I`.
#[derive(Debug)]
pub struct Parabolic {
    sys: Arc<AffineSystem>,
    j: NodeSet,
    pos_j: Vec<usize>,
    pos_not_j: Vec<usize>,
    w_j: Vec<ElemId>,
    in_w_j: Vec<bool>,
    min_reps: Vec<ElemId>,
    is_min_rep: Vec<bool>,
    z_cache: RwLock<HashMap<Coords, ElemId>>,
}

impl Parabolic {
    pub fn new(sys: Arc<AffineSystem>, j: NodeSet) -> Result<Self> {
        let d = sys.datum();
        if j & !d.all_nodes() != 0 {
            return Err(Error::Precondition("J is not a subset of I".into()));
        }
        let pos_j: Vec<usize> = (0..d.n_pos()).filter(|&k| d.in_subsystem(k, j)).collect();
        let pos_not_j: Vec<usize> = (0..d.n_pos()).filter(|&k| !d.in_subsystem(k, j)).collect();
        let weyl = sys.weyl();
        let n = weyl.order();
        let mut in_w_j = vec![false; n];
        let mut is_min_rep = vec![true; n];
        for w in weyl.elements() {
            // w ∈ W_J iff all inversions lie in Δ_J; w ∈ W^J iff wΔ_J^+ > 0.
            let inversions_in_j = (0..d.n_pos())
                .filter(|&k| !d.is_positive_root(weyl.act_root(w, k)))
                .all(|k| d.in_subsystem(k, j));
            in_w_j[w as usize] = inversions_in_j;
            is_min_rep[w as usize] = pos_j
                .iter()
                .all(|&k| d.is_positive_root(weyl.act_root(w, k)));
        }
        let w_j = weyl.elements().filter(|&w| in_w_j[w as usize]).collect();
        let min_reps = weyl.elements().filter(|&w| is_min_rep[w as usize]).collect();
        Ok(Parabolic {
            sys,
            j,
            pos_j,
            pos_not_j,
            w_j,
            in_w_j,
            min_reps,
            is_min_rep,
            z_cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn system(&self) -> &Arc<AffineSystem> {
        &self.sys
    }

    pub fn datum(&self) -> &RootDatum {
        self.sys.datum()
    }

    pub fn j(&self) -> NodeSet {
        self.j
    }

    pub fn jc(&self) -> NodeSet {
        self.datum().all_nodes() & !self.j
    }

    /// `Δ_J^+` as root indices.
    pub fn pos_j(&self) -> &[usize] {
        &self.pos_j
    }

    /// `Δ^+ \ Δ_J^+` as root indices.
    pub fn pos_not_j(&self) -> &[usize] {
        &self.pos_not_j
    }

    pub fn w_j(&self) -> &[ElemId] {
        &self.w_j
    }

    pub fn in_w_j(&self, w: ElemId) -> bool {
        self.in_w_j[w as usize]
    }

    /// `W^J`, sorted by element index (hence by length).
    pub fn min_reps(&self) -> &[ElemId] {
        &self.min_reps
    }

    pub fn is_min_rep(&self, w: ElemId) -> bool {
        self.is_min_rep[w as usize]
    }

    /// `⌊w⌋^J`.
    pub fn min_coset_rep(&self, mut w: ElemId) -> ElemId {
        let d = self.datum();
        let weyl = self.sys.weyl();
        'outer: loop {
            for i in 0..d.rank() {
                if self.j & (1 << i) != 0
                    && !d.is_positive_root(weyl.act_root(w, d.simple_root_index(i)))
                {
                    w = weyl.rmul_simple(w, i);
                    continue 'outer;
                }
            }
            return w;
        }
    }

    /// `[ξ]_{J^c}`.
    pub fn project(&self, xi: &Coords) -> Coords {
        crate::cartan::project_out(xi, self.j)
    }

    pub fn is_adjusted(&self, xi: &Coords) -> bool {
        let d = self.datum();
        self.pos_j.iter().all(|&k| {
            let p = d.lattice_pairing(xi, k);
            p == 0 || p == -1
        })
    }

    /// The unique J-adjusted `η = ξ + φ` with `φ ∈ Q_J` (or `Q_J^∨`).
    pub fn adjust(&self, xi: &Coords) -> Result<(Coords, Coords)> {
        if self.j == 0 {
            return Ok((*xi, ZERO));
        }
        let d = self.datum();
        let bound = 1 + self
            .pos_j
            .iter()
            .map(|&k| d.lattice_pairing(xi, k).abs())
            .max()
            .unwrap_or(0);
        // The initial bound is too small in some F4 cases, so the box grows until
        // a hit appears.
        let mut r = bound;
        loop {
            let mut hits = Vec::new();
            for phi in box_points(d.rank(), r, self.j) {
                let eta = add(xi, &phi);
                if self.is_adjusted(&eta) {
                    hits.push((eta, phi));
                }
            }
            match hits.len() {
                1 => return Ok(hits[0]),
                0 if r < 4 * bound + 8 => r *= 2,
                0 => {
                    return Err(Error::Internal(format!(
                        "no J-adjusted shift of {xi:?} within the search bound {r}"
                    )))
                }
                _ => {
                    return Err(Error::Internal(format!(
                        "several J-adjusted shifts of {xi:?}"
                    )))
                }
            }
        }
    }

    /// `z_ξ ∈ W_J` for J-adjusted `ξ`, found by brute force over `W_J`.
    pub fn z_xi(&self, xi: &Coords) -> Result<ElemId> {
        if let Some(&z) = self.z_cache.read().unwrap().get(xi) {
            return Ok(z);
        }
        if !self.is_adjusted(xi) {
            return Err(Error::Precondition(format!("{xi:?} is not J-adjusted")));
        }
        let d = self.datum();
        let weyl = self.sys.weyl();
        let pairings: Vec<(usize, i64)> = self
            .pos_j
            .iter()
            .map(|&k| (k, d.lattice_pairing(xi, k)))
            .collect();
        let mut found = None;
        for &z in &self.w_j {
            let ok = pairings
                .iter()
                .all(|&(k, p)| d.is_positive_root(weyl.act_root(z, k)) == (p == 0));
            if ok {
                if found.is_some() {
                    return Err(Error::Internal("z_ξ is not unique".into()));
                }
                found = Some(z);
            }
        }
        let z = found.ok_or_else(|| Error::Internal("no z_ξ found".into()))?;
        self.z_cache.write().unwrap().insert(*xi, z);
        Ok(z)
    }

    /// `w z_ξ t_ξ`.
    pub fn compose(&self, w: ElemId, xi: &Coords) -> Result<AffineWeylElement> {
        let z = self.z_xi(xi)?;
        Ok(AffineWeylElement {
            w: self.sys.weyl().mul(w, z),
            xi: *xi,
        })
    }

    /// `z_ξ t_ξ`.
    pub fn translation_element(&self, xi: &Coords) -> Result<AffineWeylElement> {
        self.compose(0, xi)
    }

    /// Membership in `(W^J)_af` by the defining positivity test on a generating
    /// set of the positive roots of the parabolic affine subsystem.
    pub fn is_peterson(&self, x: &AffineWeylElement) -> bool {
        let d = self.datum();
        let weyl = self.sys.weyl();
        let a2l2 = d.affine_type().is_a2l2();
        let positive = |img: usize, delta: i64| {
            delta > 0 || (delta == 0 && d.is_positive_root(img))
        };
        for &k in &self.pos_j {
            let tp = d.translation_pairing(&x.xi, k);
            let up = weyl.act_root(x.w, k);
            let down = weyl.act_root(x.w, d.negate(k));
            if !positive(up, -tp) || !positive(down, d.delta_step(k) + tp) {
                return false;
            }
            if a2l2 && d.is_short(k) && (!positive(up, 1 - 2 * tp) || !positive(down, 1 + 2 * tp))
            {
                return false;
            }
        }
        true
    }

    /// Factorisation `x = w z_ξ t_ξ` with `w ∈ W^J` and `ξ` J-adjusted, if `x`
    /// is a Peterson representative.
    pub fn decompose(&self, x: &AffineWeylElement) -> Option<(ElemId, Coords)> {
        if !self.is_adjusted(&x.xi) {
            return None;
        }
        let weyl = self.sys.weyl();
        let w = self.min_coset_rep(x.w);
        let z = weyl.mul(weyl.inverse(w), x.w);
        let zx = self.z_xi(&x.xi).ok()?;
        (z == zx).then_some((w, x.xi))
    }

    /// Whether `x ∈ (W_J)_af = W_J ⋉ Q_J`.
    pub fn in_parabolic_af(&self, x: &AffineWeylElement) -> bool {
        self.in_w_j(x.w) && self.project(&x.xi) == ZERO
    }

    /// `Π^J(x)`: the Peterson factor of `x ∈ (W^J)_af · (W_J)_af`.
    pub fn pi_j(&self, x: &AffineWeylElement) -> Result<AffineWeylElement> {
        let weyl = self.sys.weyl();
        let w = self.min_coset_rep(x.w);
        let u_j = weyl.mul(weyl.inverse(w), x.w);
        // x = w · t_{u_J ξ} · u_J and Π^J(t_ζ) = z_η t_η with η = adjust(ζ).
        let zeta = weyl.act_lattice(u_j, &x.xi);
        let (eta, _) = self.adjust(&zeta)?;
        self.compose(w, &eta)
    }

    /// J-adjusted vectors with sup norm at most `r`.
    pub fn adjusted_in_box(&self, r: i64) -> Vec<Coords> {
        let d = self.datum();
        box_points(d.rank(), r, d.all_nodes())
            .into_iter()
            .filter(|xi| self.is_adjusted(xi))
            .collect()
    }

    /// J-adjusted vectors whose `J^c` projection has sup norm at most `r`.
    pub fn adjusted_by_projection(&self, r: i64) -> Result<Vec<Coords>> {
        box_points(self.datum().rank(), r, self.jc())
            .into_iter()
            .map(|p| self.adjust(&p).map(|(eta, _)| eta))
            .collect()
    }

    /// Peterson representatives `w z_ξ t_ξ` with `ξ` adjusted and `‖ξ‖∞ ≤ r`.
    pub fn peterson_in_box(&self, r: i64) -> Result<Vec<AffineWeylElement>> {
        let mut out = Vec::new();
        for xi in self.adjusted_in_box(r) {
            for &w in &self.min_reps {
                out.push(self.compose(w, &xi)?);
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{coords, Family};
    use proptest::prelude::*;

    fn sys(f: Family, l: usize) -> Arc<AffineSystem> {
        AffineSystem::new(AffineType::new(f, l).unwrap()).unwrap()
    }

    fn all_systems() -> Vec<Arc<AffineSystem>> {
        vec![
            sys(Family::A2l2, 1),
            sys(Family::A2l2, 2),
            sys(Family::A2l2, 3),
            sys(Family::Dlp12, 2),
            sys(Family::Dlp12, 3),
            sys(Family::A2lm12, 3),
            sys(Family::D43, 2),
            sys(Family::E62, 4),
            sys(Family::Untwisted(crate::cartan::FiniteFamily::C), 3),
            sys(Family::Untwisted(crate::cartan::FiniteFamily::G2Dual), 2),
        ]
    }

    #[test]
    fn group_orders() {
        assert_eq!(sys(Family::A2l2, 1).weyl().order(), 2);
        assert_eq!(sys(Family::Dlp12, 2).weyl().order(), 8);
        assert_eq!(sys(Family::Dlp12, 3).weyl().order(), 48);
        assert_eq!(sys(Family::D43, 2).weyl().order(), 12);
        assert_eq!(sys(Family::E62, 4).weyl().order(), 1152);
    }

    #[test]
    fn length_is_inversion_count_and_form_is_invariant() {
        for s in all_systems() {
            let d = s.datum();
            let wg = s.weyl();
            for w in wg.elements() {
                let inv = (0..d.n_pos())
                    .filter(|&k| !d.is_positive_root(wg.act_root(w, k)))
                    .count() as u32;
                assert_eq!(inv, wg.length(w));
                for a in 0..d.n_pos() {
                    for b in 0..d.n_pos() {
                        let wa = d.root(wg.act_root(w, a));
                        let wb = d.root(wg.act_root(w, b));
                        assert_eq!(d.form(wa, wb), d.form(d.root(a), d.root(b)));
                    }
                }
            }
        }
    }

    #[test]
    fn simple_affine_reflections() {
        let s = sys(Family::A2l2, 1);
        let s0 = s.simple_reflection(0).unwrap();
        assert_eq!(s0, AffineWeylElement { w: s.weyl().simple(0), xi: coords(&[-1]) });
        assert_eq!(s.mul(&s0, &s0), s.identity());
        let s1 = s.simple_reflection(1).unwrap();
        assert_eq!(s1.xi, ZERO);
        assert!(s.simple_reflection(2).is_err());
        for sy in all_systems() {
            for i in 0..=sy.rank() {
                let r = sy.simple_reflection(i).unwrap();
                assert_eq!(sy.mul(&r, &r), sy.identity());
            }
        }
    }

    #[test]
    fn reflection_product_formulas() {
        let b = sys(Family::Dlp12, 3);
        let d = b.datum();
        for k in 0..d.n_roots() {
            let g = *d.root(k);
            let c = d.c_alpha(&g).unwrap();
            let r = b.reflection(&AffineRoot::new(g, 1, c)).unwrap();
            assert_eq!(r.xi, g);
        }
        let a = sys(Family::A2l2, 2);
        let d = a.datum();
        for k in 0..d.n_roots() {
            let g = *d.root(k);
            let r = a.reflection(&AffineRoot::new(g, 1, 1)).unwrap();
            if d.is_short(k) {
                assert_eq!(r.xi, scale(2, &g));
                let r2 = a.reflection(&AffineRoot::new(g, 2, 1)).unwrap();
                assert_eq!(r2.xi, g);
            } else {
                assert_eq!(r.xi, g);
            }
        }
    }

    #[test]
    fn semi_infinite_length_examples() {
        let s = sys(Family::A2l2, 1);
        assert_eq!(s.si_length(&s.identity()), 0);
        assert_eq!(s.si_length(&s.translation(coords(&[1]))), 2);
        let x = AffineWeylElement { w: s.weyl().simple(0), xi: coords(&[-1]) };
        assert_eq!(s.si_length(&x), -1);
    }

    #[test]
    fn min_coset_rep_against_brute_force() {
        for s in all_systems().into_iter().take(7) {
            let d = s.datum();
            for j in 0..=d.all_nodes() {
                let p = Parabolic::new(s.clone(), j).unwrap();
                for w in s.weyl().elements() {
                    let coset: Vec<ElemId> =
                        p.w_j().iter().map(|&u| s.weyl().mul(w, u)).collect();
                    let best = *coset
                        .iter()
                        .min_by_key(|&&u| s.weyl().length(u))
                        .unwrap();
                    let m = p.min_coset_rep(w);
                    assert_eq!(m, best);
                    assert!(p.is_min_rep(m));
                }
                assert_eq!(p.min_reps().len() * p.w_j().len(), s.weyl().order());
            }
        }
    }

    #[test]
    fn b2_examples() {
        let s = sys(Family::Dlp12, 2);
        let w = s.weyl();
        let p = Parabolic::new(s.clone(), 0b10).unwrap();
        let s2s1 = w.from_word(&[1, 0]).unwrap();
        assert_eq!(p.min_coset_rep(s2s1), s2s1);
        let p1 = Parabolic::new(s.clone(), 0b01).unwrap();
        assert_eq!(p1.min_coset_rep(w.simple(0)), 0);
        // s_1 t_0 is not a Peterson representative for J = {1}.
        assert!(!p1.is_peterson(&s.finite(w.simple(0))));
        // adjusting α_1 for J = {1}
        let (eta, phi) = p1.adjust(&coords(&[1, 0])).unwrap();
        assert!(p1.is_adjusted(&eta));
        assert_eq!(p1.project(&eta), p1.project(&coords(&[1, 0])));
        assert_eq!(phi[1], 0);
        // an adjusted vector pairing to -1 with α_1^∨ has z_ξ = s_1
        let xi = p1
            .adjusted_in_box(2)
            .into_iter()
            .find(|x| s.datum().lattice_pairing(x, s.datum().simple_root_index(0)) == -1)
            .unwrap();
        assert_eq!(p1.z_xi(&xi).unwrap(), w.simple(0));
    }

    #[test]
    fn decomposition_matches_defining_test() {
        for s in all_systems().into_iter().take(7) {
            let d = s.datum();
            for j in 0..=d.all_nodes() {
                let p = Parabolic::new(s.clone(), j).unwrap();
                for xi in box_points(d.rank(), 2, d.all_nodes()) {
                    for w in s.weyl().elements() {
                        let x = AffineWeylElement { w, xi };
                        let by_test = p.is_peterson(&x);
                        let by_factor = p.decompose(&x).is_some();
                        assert_eq!(by_test, by_factor, "{:?} J={j:b} {x:?}", d.affine_type());
                    }
                }
            }
        }
    }

    #[test]
    fn adjusted_vectors_and_length_of_z() {
        for s in all_systems() {
            let d = s.datum();
            if d.rank() > 3 {
                continue;
            }
            for j in 0..=d.all_nodes() {
                let p = Parabolic::new(s.clone(), j).unwrap();
                let adj = p.adjusted_in_box(3);
                let mut seen = HashMap::new();
                for xi in &adj {
                    assert!(seen.insert(p.project(xi), *xi).is_none(), "projection collision");
                    let z = p.z_xi(xi).unwrap();
                    assert_eq!(
                        s.weyl().length(z) as i64,
                        -d.two_rho_j_pairing(j, xi),
                        "ℓ(z_ξ) for {xi:?}"
                    );
                    let x = p.translation_element(xi).unwrap();
                    assert!(p.is_peterson(&x));
                    for &w in p.min_reps() {
                        let y = p.compose(w, xi).unwrap();
                        assert_eq!(
                            s.weyl().length(y.w),
                            s.weyl().length(w) + s.weyl().length(z)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn adjust_search_bound_suffices() {
        for s in all_systems() {
            let d = s.datum();
            let r = if d.rank() > 3 { 1 } else { 3 };
            for j in 0..=d.all_nodes() {
                let p = Parabolic::new(s.clone(), j).unwrap();
                for xi in box_points(d.rank(), r, d.all_nodes()) {
                    let (eta, phi) = p.adjust(&xi).unwrap();
                    assert_eq!(add(&xi, &phi), eta);
                    assert_eq!(p.project(&phi), ZERO);
                }
            }
        }
    }

    #[test]
    fn peterson_membership_stable_under_translation_elements() {
        for s in all_systems().into_iter().take(5) {
            let d = s.datum();
            for j in 0..=d.all_nodes() {
                let p = Parabolic::new(s.clone(), j).unwrap();
                let adj = p.adjusted_in_box(1);
                for x_xi in box_points(d.rank(), 1, d.all_nodes()) {
                    for w in s.weyl().elements() {
                        let x = AffineWeylElement { w, xi: x_xi };
                        let member = p.is_peterson(&x);
                        for xi in &adj {
                            let y = s.mul(&x, &p.translation_element(xi).unwrap());
                            assert_eq!(p.is_peterson(&y), member);
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn pi_j_properties() {
        for s in all_systems().into_iter().take(6) {
            let d = s.datum();
            for j in 0..=d.all_nodes() {
                let p = Parabolic::new(s.clone(), j).unwrap();
                for xi in box_points(d.rank(), 1, d.all_nodes()) {
                    for w in s.weyl().elements() {
                        let x = AffineWeylElement { w, xi };
                        let y = p.pi_j(&x).unwrap();
                        assert!(p.is_peterson(&y));
                        assert!(p.in_parabolic_af(&s.mul(&s.inverse(&y), &x)));
                        assert_eq!(p.pi_j(&y).unwrap(), y);
                        for i in 0..d.rank() {
                            if j & (1 << i) != 0 {
                                let xs = s.mul(&x, &s.simple_reflection(i + 1).unwrap());
                                assert_eq!(p.pi_j(&xs).unwrap(), y);
                            }
                        }
                    }
                }
                // Π^J(t_ξ) = z_η t_η with η the adjusted shift of ξ.
                for xi in box_points(d.rank(), 2, d.all_nodes()) {
                    let (eta, _) = p.adjust(&xi).unwrap();
                    assert_eq!(p.pi_j(&s.translation(xi)).unwrap(), p.translation_element(&eta).unwrap());
                }
            }
        }
    }

    fn affine_word(rank: usize) -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(0..=rank, 0..=12)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn group_axioms(a in affine_word(3), b in affine_word(3), c in affine_word(3)) {
            for s in [sys(Family::Dlp12, 3), sys(Family::A2l2, 3), sys(Family::A2lm12, 3)] {
                let x = s.from_affine_word(&a).unwrap();
                let y = s.from_affine_word(&b).unwrap();
                let z = s.from_affine_word(&c).unwrap();
                prop_assert_eq!(s.mul(&s.mul(&x, &y), &z), s.mul(&x, &s.mul(&y, &z)));
                prop_assert_eq!(s.mul(&x, &s.inverse(&x)), s.identity());
                let ab: Vec<usize> = a.iter().chain(b.iter()).copied().collect();
                prop_assert_eq!(s.from_affine_word(&ab).unwrap(), s.mul(&x, &y));
                // action on weights is compatible with the product
                let lam = s.datum().level_zero_weight(&vec![1; s.rank()]).unwrap();
                prop_assert_eq!(
                    s.act_weight(&s.mul(&x, &y), &lam),
                    s.act_weight(&x, &s.act_weight(&y, &lam))
                );
                // semi-infinite length shifts by 2⟨ρ^∨, ζ⟩ under right translation
                let t = s.translation(coords(&[1, -1, 2]));
                prop_assert_eq!(
                    s.si_length(&s.mul(&x, &t)),
                    s.si_length(&x) + s.datum().two_rho_pairing(&t.xi)
                );
            }
        }

        #[test]
        fn root_action_is_equivariant(a in affine_word(2), k in 0usize..8, d in 0i64..3) {
            let s = sys(Family::A2l2, 2);
            let dt = s.datum();
            let x = s.from_affine_word(&a).unwrap();
            let g = *dt.root(k);
            let beta = AffineRoot::new(g, 1, d);
            // x s_β x⁻¹ = s_{xβ}
            let lhs = s.mul(&s.mul(&x, &s.reflection(&beta).unwrap()), &s.inverse(&x));
            let rhs = s.reflection(&s.act_root(&x, &beta).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}
