//! Root data of the supported affine types.
//!
//! Every affine type is described through its finite part (a root system of
//! type B, C, F4 or G2), an integer Gram matrix on the finite root lattice and
//! the shape of its affine simple root `α_0`. Finite simple roots are numbered
//! as in Bourbaki; internally they are indexed from 0, while affine nodes use
//! `0` for `α_0` and `k + 1` for the finite simple root with internal index `k`.
//!
//! Normalisation of the invariant form:
//!
//! * dual untwisted types (`A2lm12`, `Dlp12`, `E62`, `D43`): short roots have
//!   `(α,α) = 2`, long roots `(α,α) = 2c` with `c = 3` for `D43` and `c = 2`
//!   otherwise, so that `c_α = max(1, (α,α)/2)`;
//! * `A2l2`: short roots `(α,α) = 1`, long roots `(α,α) = 2`, so that every
//!   `c_α` equals 1;
//! * untwisted targets: short roots `(α,α) = 2`. The form is only used to
//!   classify lengths and to convert roots into coroots there.

use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Q};

/// Largest supported rank of the finite part.
pub const MAX_RANK: usize = 4;

/// Integer coordinates over simple roots, simple coroots or fundamental
/// weights, padded with zeros beyond the rank.
pub type Coords = [i64; MAX_RANK];

pub const ZERO: Coords = [0; MAX_RANK];

/// Set of finite nodes as a bit mask: bit `k` stands for the simple root with
/// internal index `k`.
pub type NodeSet = u8;

pub fn coords(v: &[i64]) -> Coords {
    assert!(v.len() <= MAX_RANK, "vector longer than MAX_RANK");
    let mut c = ZERO;
    c[..v.len()].copy_from_slice(v);
    c
}

pub fn add(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|i| a[i] + b[i])
}

pub fn sub(a: &Coords, b: &Coords) -> Coords {
    std::array::from_fn(|i| a[i] - b[i])
}

pub fn scale(k: i64, a: &Coords) -> Coords {
    std::array::from_fn(|i| k * a[i])
}

pub fn dot(a: &Coords, b: &Coords) -> i64 {
    (0..MAX_RANK).map(|i| a[i] * b[i]).sum()
}

pub fn sup_norm(a: &Coords) -> i64 {
    a.iter().map(|x| x.abs()).max().unwrap_or(0)
}

/// Restriction of a vector to the nodes outside `j`.
pub fn project_out(a: &Coords, j: NodeSet) -> Coords {
    std::array::from_fn(|i| if j & (1 << i) != 0 { 0 } else { a[i] })
}

/// Finite root systems that occur as finite parts or as reduction targets.
/// `F4Dual` and `G2Dual` are F4 and G2 with the long and short simple roots
/// interchanged, i.e. the transposed Cartan matrix in the same numbering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum FiniteFamily {
    B,
    C,
    F4,
    F4Dual,
    G2,
    G2Dual,
}

impl FiniteFamily {
    pub fn transpose(self) -> Self {
        match self {
            FiniteFamily::B => FiniteFamily::C,
            FiniteFamily::C => FiniteFamily::B,
            FiniteFamily::F4 => FiniteFamily::F4Dual,
            FiniteFamily::F4Dual => FiniteFamily::F4,
            FiniteFamily::G2 => FiniteFamily::G2Dual,
            FiniteFamily::G2Dual => FiniteFamily::G2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Family {
    /// `A_{2ℓ}^{(2)}`, finite part `B_ℓ`.
    A2l2,
    /// `A_{2ℓ-1}^{(2)}`, finite part `C_ℓ`.
    A2lm12,
    /// `D_{ℓ+1}^{(2)}`, finite part `B_ℓ`.
    Dlp12,
    /// `E_6^{(2)}`, finite part `F_4`.
    E62,
    /// `D_4^{(3)}`, finite part `G_2`.
    D43,
    /// Untwisted affinization of a finite root system.
    Untwisted(FiniteFamily),
}

/// Which lattice the translations of the affine Weyl group live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LatticeMode {
    /// Twisted types: translations by the root lattice, paired through the
    /// invariant form.
    Roots,
    /// Untwisted types: translations by the coroot lattice.
    Coroots,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AffineType {
    pub family: Family,
    pub rank: usize,
}

impl AffineType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ty = AffineType { family, rank };
        let fail = |reason| {
            Err(Error::UnsupportedType {
                name: ty.name(),
                rank,
                reason,
            })
        };
        if rank == 0 {
            return fail("rank must be positive");
        }
        if rank > MAX_RANK {
            return fail("rank exceeds the supported maximum of 4");
        }
        match family {
            Family::A2lm12 if rank < 3 => fail("A2lm12 requires rank at least 3"),
            Family::Dlp12 if rank < 2 => fail("Dlp12 requires rank at least 2"),
            Family::E62 if rank != 4 => fail("E62 has rank 4"),
            Family::D43 if rank != 2 => fail("D43 has rank 2"),
            Family::Untwisted(FiniteFamily::C) if rank < 2 => {
                fail("untwisted C requires rank at least 2")
            }
            Family::Untwisted(FiniteFamily::F4 | FiniteFamily::F4Dual) if rank != 4 => {
                fail("F4 has rank 4")
            }
            Family::Untwisted(FiniteFamily::G2 | FiniteFamily::G2Dual) if rank != 2 => {
                fail("G2 has rank 2")
            }
            _ => Ok(ty),
        }
    }

    /// Parses a family name. `rank` may be omitted for the exceptional types.
    ///
    /// Accepted names: `A2l2`, `A2lm12`, `Dlp12`, `E62`, `D43` and the
    /// untwisted targets `B1`, `C1`, `F41`, `F41T`, `G21`, `G21T`.
    pub fn parse(name: &str, rank: Option<usize>) -> Result<Self> {
        let family = match name {
            "A2l2" => Family::A2l2,
            "A2lm12" => Family::A2lm12,
            "Dlp12" => Family::Dlp12,
            "E62" => Family::E62,
            "D43" => Family::D43,
            "B1" => Family::Untwisted(FiniteFamily::B),
            "C1" => Family::Untwisted(FiniteFamily::C),
            "F41" => Family::Untwisted(FiniteFamily::F4),
            "F41T" => Family::Untwisted(FiniteFamily::F4Dual),
            "G21" => Family::Untwisted(FiniteFamily::G2),
            "G21T" => Family::Untwisted(FiniteFamily::G2Dual),
            _ => return Err(Error::UnknownType(name.to_string())),
        };
        let default = match family {
            Family::E62 | Family::Untwisted(FiniteFamily::F4 | FiniteFamily::F4Dual) => Some(4),
            Family::D43 | Family::Untwisted(FiniteFamily::G2 | FiniteFamily::G2Dual) => Some(2),
            _ => None,
        };
        let rank = rank
            .or(default)
            .ok_or_else(|| Error::Precondition(format!("type {name} needs an explicit rank")))?;
        AffineType::new(family, rank)
    }

    pub fn name(&self) -> String {
        match self.family {
            Family::A2l2 => "A2l2".into(),
            Family::A2lm12 => "A2lm12".into(),
            Family::Dlp12 => "Dlp12".into(),
            Family::E62 => "E62".into(),
            Family::D43 => "D43".into(),
            Family::Untwisted(f) => match f {
                FiniteFamily::B => "B1".into(),
                FiniteFamily::C => "C1".into(),
                FiniteFamily::F4 => "F41".into(),
                FiniteFamily::F4Dual => "F41T".into(),
                FiniteFamily::G2 => "G21".into(),
                FiniteFamily::G2Dual => "G21T".into(),
            },
        }
    }

    /// Kac's notation, e.g. `A_4^(2)` for `A2l2` of rank 2.
    pub fn kac_name(&self) -> String {
        let l = self.rank;
        match self.family {
            Family::A2l2 => format!("A_{}^(2)", 2 * l),
            Family::A2lm12 => format!("A_{}^(2)", 2 * l - 1),
            Family::Dlp12 => format!("D_{}^(2)", l + 1),
            Family::E62 => "E_6^(2)".into(),
            Family::D43 => "D_4^(3)".into(),
            Family::Untwisted(f) => match f {
                FiniteFamily::B if l == 1 => "A_1^(1)".into(),
                FiniteFamily::B => format!("B_{l}^(1)"),
                FiniteFamily::C => format!("C_{l}^(1)"),
                FiniteFamily::F4 => "F_4^(1)".into(),
                FiniteFamily::F4Dual => "F_4^(1) (reversed numbering)".into(),
                FiniteFamily::G2 => "G_2^(1)".into(),
                FiniteFamily::G2Dual => "G_2^(1) (reversed numbering)".into(),
            },
        }
    }

    pub fn is_twisted(&self) -> bool {
        !matches!(self.family, Family::Untwisted(_))
    }

    pub fn is_a2l2(&self) -> bool {
        self.family == Family::A2l2
    }

    pub fn is_dual_untwisted(&self) -> bool {
        self.is_twisted() && !self.is_a2l2()
    }

    pub fn finite_family(&self) -> FiniteFamily {
        match self.family {
            Family::A2l2 | Family::Dlp12 => FiniteFamily::B,
            Family::A2lm12 => FiniteFamily::C,
            Family::E62 => FiniteFamily::F4,
            Family::D43 => FiniteFamily::G2,
            Family::Untwisted(f) => f,
        }
    }

    pub fn lattice_mode(&self) -> LatticeMode {
        if self.is_twisted() {
            LatticeMode::Roots
        } else {
            LatticeMode::Coroots
        }
    }
}

impl fmt::Display for AffineType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {})", self.kac_name(), self.rank)
    }
}

/// Gram matrix of the finite part under the normalisation described in the
/// module documentation.
fn finite_gram(ty: &AffineType) -> [[i64; MAX_RANK]; MAX_RANK] {
    let l = ty.rank;
    let mut g = [[0i64; MAX_RANK]; MAX_RANK];
    let link = |g: &mut [[i64; MAX_RANK]; MAX_RANK], i: usize, j: usize, v: i64| {
        g[i][j] = v;
        g[j][i] = v;
    };
    match ty.finite_family() {
        FiniteFamily::B => {
            // Long roots 2s, short root α_ℓ of norm s.
            let s = if ty.is_a2l2() { 1 } else { 2 };
            for i in 0..l {
                g[i][i] = if i + 1 == l { s } else { 2 * s };
            }
            for i in 0..l.saturating_sub(1) {
                link(&mut g, i, i + 1, -s);
            }
        }
        FiniteFamily::C => {
            for i in 0..l {
                g[i][i] = if i + 1 == l { 4 } else { 2 };
            }
            for i in 0..l - 1 {
                link(&mut g, i, i + 1, if i + 2 == l { -2 } else { -1 });
            }
        }
        FiniteFamily::F4 => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        FiniteFamily::F4Dual => {
            g[0][0] = 2;
            g[1][1] = 2;
            g[2][2] = 4;
            g[3][3] = 4;
            link(&mut g, 0, 1, -1);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -2);
        }
        FiniteFamily::G2 => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
        FiniteFamily::G2Dual => {
            g[0][0] = 6;
            g[1][1] = 2;
            link(&mut g, 0, 1, -3);
        }
    }
    g
}

/// Length class of a finite root.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LengthClass {
    Short,
    Long,
}

/// A real affine root `mult·γ + delta·δ`, with `γ` a finite root in simple-root
/// coordinates. `mult = 2` only occurs for the doubled roots `2γ + (2n-1)δ`
/// of `A2l2`, `γ` short.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct AffineRoot {
    pub gamma: Coords,
    pub mult: u8,
    pub delta: i64,
}

impl AffineRoot {
    pub fn new(gamma: Coords, mult: u8, delta: i64) -> Self {
        AffineRoot { gamma, mult, delta }
    }

    /// Finite root with no δ part.
    pub fn finite(gamma: Coords) -> Self {
        AffineRoot::new(gamma, 1, 0)
    }
}

/// Integral level-zero weight: Dynkin labels of its classical part plus the
/// coefficient of δ. The pairing with the canonical central element vanishes
/// identically on such weights.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight {
    pub dynkin: Coords,
    pub delta: i64,
}

/// Level-zero weight with rational coefficients, e.g. the weight of a path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RatWeight {
    pub dynkin: [Q; MAX_RANK],
    pub delta: Q,
}

impl RatWeight {
    pub fn zero() -> Self {
        RatWeight {
            dynkin: [Q::zero(); MAX_RANK],
            delta: Q::zero(),
        }
    }

    pub fn from_weight(w: &Weight) -> Self {
        RatWeight {
            dynkin: std::array::from_fn(|i| Q::from(w.dynkin[i])),
            delta: Q::from(w.delta),
        }
    }

    pub fn add_scaled(&mut self, k: Q, w: &Weight) {
        for i in 0..MAX_RANK {
            self.dynkin[i] += k * Q::from(w.dynkin[i]);
        }
        self.delta += k * Q::from(w.delta);
    }

    pub fn sub(&self, other: &RatWeight) -> RatWeight {
        RatWeight {
            dynkin: std::array::from_fn(|i| self.dynkin[i] - other.dynkin[i]),
            delta: self.delta - other.delta,
        }
    }
}

/// Immutable tables for one affine type.
#[derive(Clone, Debug)]
pub struct RootDatum {
    ty: AffineType,
    rank: usize,
    gram: [[i64; MAX_RANK]; MAX_RANK],
    cartan: [[i64; MAX_RANK]; MAX_RANK],
    /// Positive roots first (sorted by height), then their negatives in the
    /// same order.
    roots: Vec<Coords>,
    index: HashMap<Coords, usize>,
    coroots: Vec<Coords>,
    norms: Vec<i64>,
    dynkin: Vec<Coords>,
    /// `lattice_pairing(ξ, γ) = dot(lat_pair[γ], ξ)`.
    lat_pair: Vec<Coords>,
    /// `translation_pairing(ξ, γ) = dot(trans_pair[γ], ξ)`.
    trans_pair: Vec<Coords>,
    two_rho: Coords,
    theta0: usize,
    m0: i64,
    min_norm: i64,
    max_norm: i64,
    labels: Vec<i64>,
    labels_dual: Vec<i64>,
    affine_cartan: Vec<Vec<i64>>,
}

impl RootDatum {
    pub fn new(ty: AffineType) -> Result<Self> {
        let ty = AffineType::new(ty.family, ty.rank)?;
        let rank = ty.rank;
        let gram = finite_gram(&ty);
        let mut cartan = [[0i64; MAX_RANK]; MAX_RANK];
        for i in 0..rank {
            for j in 0..rank {
                let num = 2 * gram[i][j];
                if num % gram[i][i] != 0 {
                    return Err(Error::Internal("non-integral Cartan entry".into()));
                }
                cartan[i][j] = num / gram[i][i];
            }
        }

        // Closure of the simple roots under simple reflections.
        let reflect = |i: usize, v: &Coords| -> Coords {
            let p: i64 = (0..rank).map(|j| cartan[i][j] * v[j]).sum();
            let mut out = *v;
            out[i] -= p;
            out
        };
        let mut seen: HashMap<Coords, ()> = HashMap::new();
        let mut stack: Vec<Coords> = Vec::new();
        for i in 0..rank {
            let mut e = ZERO;
            e[i] = 1;
            seen.insert(e, ());
            stack.push(e);
        }
        while let Some(v) = stack.pop() {
            for i in 0..rank {
                let u = reflect(i, &v);
                if seen.insert(u, ()).is_none() {
                    stack.push(u);
                }
            }
        }
        let mut pos: Vec<Coords> = seen
            .keys()
            .filter(|v| v.iter().all(|&x| x >= 0))
            .copied()
            .collect();
        if pos.len() * 2 != seen.len() {
            return Err(Error::Internal("root system is not symmetric".into()));
        }
        pos.sort_by_key(|v| (v.iter().sum::<i64>(), *v));
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|v| scale(-1, v)));
        let index: HashMap<Coords, usize> =
            roots.iter().enumerate().map(|(k, v)| (*v, k)).collect();

        let norm_of = |v: &Coords| -> i64 {
            let mut s = 0;
            for i in 0..rank {
                for j in 0..rank {
                    s += v[i] * gram[i][j] * v[j];
                }
            }
            s
        };
        let norms: Vec<i64> = roots.iter().map(norm_of).collect();
        let min_norm = *norms.iter().min().unwrap();
        let max_norm = *norms.iter().max().unwrap();
        let mut coroots = Vec::with_capacity(roots.len());
        for (v, &n) in roots.iter().zip(&norms) {
            let mut c = ZERO;
            for i in 0..rank {
                let num = v[i] * gram[i][i];
                if num % n != 0 {
                    return Err(Error::Internal("non-integral coroot".into()));
                }
                c[i] = num / n;
            }
            coroots.push(c);
        }
        let dynkin: Vec<Coords> = roots
            .iter()
            .map(|v| std::array::from_fn(|i| (0..rank).map(|j| cartan[i][j] * v[j]).sum()))
            .collect();

        let mode = ty.lattice_mode();
        let mut lat_pair = Vec::with_capacity(roots.len());
        let mut trans_pair = Vec::with_capacity(roots.len());
        for k in 0..roots.len() {
            match mode {
                LatticeMode::Roots => {
                    // ⟨γ^∨, ξ⟩ = Σ_i γ^∨_i ⟨α_i^∨, ξ⟩ and (ξ, γ) = ξᵀGγ.
                    let lp: Coords = std::array::from_fn(|c| {
                        (0..rank).map(|i| coroots[k][i] * cartan[i][c]).sum()
                    });
                    let tp: Coords = std::array::from_fn(|c| {
                        (0..rank).map(|j| gram[c][j] * roots[k][j]).sum()
                    });
                    lat_pair.push(lp);
                    trans_pair.push(tp);
                }
                LatticeMode::Coroots => {
                    // ⟨ξ, γ⟩ with ξ over simple coroots is ξ · (Dynkin labels of γ).
                    lat_pair.push(dynkin[k]);
                    trans_pair.push(dynkin[k]);
                }
            }
        }
        let n = pos.len();
        let mut two_rho = ZERO;
        for lp in &lat_pair[..n] {
            two_rho = add(&two_rho, lp);
        }

        // Highest short root for twisted types, highest root otherwise.
        let (theta0, m0) = if ty.is_twisted() {
            let t = (0..n)
                .filter(|&k| norms[k] == min_norm)
                .max_by_key(|&k| roots[k].iter().sum::<i64>())
                .unwrap();
            (t, if ty.is_a2l2() { 2 } else { 1 })
        } else {
            let t = (0..n).max_by_key(|&k| roots[k].iter().sum::<i64>()).unwrap();
            (t, 1)
        };

        let mut labels = vec![1i64];
        let mut labels_dual = vec![m0];
        for i in 0..rank {
            labels.push(m0 * roots[theta0][i]);
            labels_dual.push(coroots[theta0][i]);
        }

        // Affine Cartan matrix, ⟨α_i^∨, α_j⟩ over I_af.
        let theta_dyn = dynkin[theta0];
        let theta_co = coroots[theta0];
        let mut affine_cartan = vec![vec![0i64; rank + 1]; rank + 1];
        affine_cartan[0][0] = 2;
        for j in 0..rank {
            // ⟨α_0^∨, α_j⟩ = -⟨θ0^∨, α_j⟩ / m0
            let p: i64 = (0..rank).map(|i| theta_co[i] * cartan[i][j]).sum();
            if p % m0 != 0 {
                return Err(Error::Internal("non-integral affine Cartan entry".into()));
            }
            affine_cartan[0][j + 1] = -p / m0;
            affine_cartan[j + 1][0] = -m0 * theta_dyn[j];
            for i in 0..rank {
                affine_cartan[i + 1][j + 1] = cartan[i][j];
            }
        }

        Ok(RootDatum {
            ty,
            rank,
            gram,
            cartan,
            roots,
            index,
            coroots,
            norms,
            dynkin,
            lat_pair,
            trans_pair,
            two_rho,
            theta0,
            m0,
            min_norm,
            max_norm,
            labels,
            labels_dual,
            affine_cartan,
        })
    }

    pub fn affine_type(&self) -> AffineType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn lattice_mode(&self) -> LatticeMode {
        self.ty.lattice_mode()
    }

    pub fn gram(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    /// `⟨α_i^∨, α_j⟩` for finite indices.
    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i][j]
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| self.cartan[i][..self.rank].to_vec())
            .collect()
    }

    /// `⟨α_i^∨, α_j⟩` for `i, j ∈ I_af` (node 0 is the affine node).
    pub fn affine_cartan(&self) -> &[Vec<i64>] {
        &self.affine_cartan
    }

    /// Labels `a_i` with `δ = Σ a_i α_i`.
    pub fn labels(&self) -> &[i64] {
        &self.labels
    }

    /// Labels `a_i^∨` with `K = Σ a_i^∨ α_i^∨`.
    pub fn labels_dual(&self) -> &[i64] {
        &self.labels_dual
    }

    /// Number of positive roots.
    pub fn n_pos(&self) -> usize {
        self.roots.len() / 2
    }

    pub fn n_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn root(&self, k: usize) -> &Coords {
        &self.roots[k]
    }

    pub fn roots(&self) -> &[Coords] {
        &self.roots
    }

    pub fn positive_roots(&self) -> &[Coords] {
        &self.roots[..self.n_pos()]
    }

    pub fn root_index(&self, v: &Coords) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn expect_root(&self, v: &Coords) -> Result<usize> {
        self.root_index(v)
            .ok_or_else(|| Error::NotARoot(v[..self.rank].to_vec()))
    }

    pub fn negate(&self, k: usize) -> usize {
        let n = self.n_pos();
        if k < n {
            k + n
        } else {
            k - n
        }
    }

    pub fn is_positive_root(&self, k: usize) -> bool {
        k < self.n_pos()
    }

    pub fn simple_root_index(&self, i: usize) -> usize {
        let mut e = ZERO;
        e[i] = 1;
        self.index[&e]
    }

    pub fn norm(&self, k: usize) -> i64 {
        self.norms[k]
    }

    /// `(u, v)` for vectors in simple-root coordinates.
    pub fn form(&self, u: &Coords, v: &Coords) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            for j in 0..self.rank {
                s += u[i] * self.gram[i][j] * v[j];
            }
        }
        s
    }

    pub fn length_class(&self, k: usize) -> LengthClass {
        if self.norms[k] == self.max_norm && self.max_norm != self.min_norm {
            LengthClass::Long
        } else {
            LengthClass::Short
        }
    }

    pub fn is_short(&self, k: usize) -> bool {
        self.length_class(k) == LengthClass::Short
    }

    pub fn is_long(&self, k: usize) -> bool {
        self.length_class(k) == LengthClass::Long
    }

    /// Coroot of a root in simple-coroot coordinates.
    pub fn coroot(&self, k: usize) -> &Coords {
        &self.coroots[k]
    }

    /// Dynkin labels `⟨α_i^∨, γ⟩` of a root.
    pub fn root_dynkin(&self, k: usize) -> &Coords {
        &self.dynkin[k]
    }

    pub fn height(&self, k: usize) -> i64 {
        self.roots[k].iter().sum()
    }

    /// Support of a root as a node set.
    pub fn support(&self, v: &Coords) -> NodeSet {
        (0..self.rank)
            .filter(|&i| v[i] != 0)
            .fold(0, |acc, i| acc | (1 << i))
    }

    /// `c_γ = max(1, (γ,γ)/2)`; only meaningful for twisted types.
    pub fn c_alpha(&self, gamma: &Coords) -> Result<i64> {
        let k = self.expect_root(gamma)?;
        if !self.ty.is_twisted() {
            return Err(Error::Precondition(
                "c_alpha is defined for twisted types only".into(),
            ));
        }
        Ok(std::cmp::max(1, self.norms[k] / 2))
    }

    /// Smallest positive δ-coefficient of a multiplicity-one real root over `γ`.
    pub fn delta_step(&self, k: usize) -> i64 {
        if self.ty.is_dual_untwisted() {
            std::cmp::max(1, self.norms[k] / 2)
        } else {
            1
        }
    }

    /// Highest short root (twisted types).
    pub fn theta_s(&self) -> Result<Coords> {
        if !self.ty.is_twisted() {
            return Err(Error::Precondition("theta_s is used for twisted types".into()));
        }
        Ok(self.roots[self.theta0])
    }

    /// Root `θ0` with `α_0 = δ - m0·θ0`.
    pub fn theta0(&self) -> usize {
        self.theta0
    }

    pub fn m0(&self) -> i64 {
        self.m0
    }

    /// `⟨γ^∨, μ⟩` for a finite root and a weight given by Dynkin labels.
    pub fn pair_dynkin(&self, k: usize, d: &Coords) -> i64 {
        dot(&self.coroots[k], d)
    }

    /// The pairing between a lattice vector and a root that decides
    /// J-adjustedness: `⟨γ^∨, ξ⟩` for twisted types, `⟨ξ, γ⟩` for untwisted.
    pub fn lattice_pairing(&self, xi: &Coords, k: usize) -> i64 {
        dot(&self.lat_pair[k], xi)
    }

    /// The pairing governing the δ-shift of translations on roots:
    /// `t_ξ(γ) = γ - translation_pairing(ξ, γ)·δ`.
    pub fn translation_pairing(&self, xi: &Coords, k: usize) -> i64 {
        dot(&self.trans_pair[k], xi)
    }

    /// Same pairing against a level-zero weight: `t_ξ μ = μ - (ξ, μ) δ`.
    pub fn translation_pairing_weight(&self, xi: &Coords, d: &Coords) -> i64 {
        match self.lattice_mode() {
            LatticeMode::Roots => {
                // (α_i, μ) = (α_i,α_i)/2 · ⟨α_i^∨, μ⟩
                let twice: i64 = (0..self.rank).map(|i| xi[i] * self.gram[i][i] * d[i]).sum();
                assert!(twice % 2 == 0, "half-integral translation pairing");
                twice / 2
            }
            LatticeMode::Coroots => dot(xi, d),
        }
    }

    /// `2⟨ρ^∨, ξ⟩` (twisted) or `2⟨ξ, ρ⟩` (untwisted).
    pub fn two_rho_pairing(&self, xi: &Coords) -> i64 {
        dot(&self.two_rho, xi)
    }

    /// `2⟨ρ_J^∨, ξ⟩` for the parabolic subsystem on `j`.
    pub fn two_rho_j_pairing(&self, j: NodeSet, xi: &Coords) -> i64 {
        (0..self.n_pos())
            .filter(|&k| self.in_subsystem(k, j))
            .map(|k| self.lattice_pairing(xi, k))
            .sum()
    }

    /// `ρ^∨ = ½ Σ_{α>0} α^∨` in simple-coroot coordinates.
    pub fn rho_dual(&self) -> [Q; MAX_RANK] {
        let mut s = ZERO;
        for k in 0..self.n_pos() {
            s = add(&s, &self.coroots[k]);
        }
        std::array::from_fn(|i| Q::new(s[i], 2))
    }

    /// Whether root `k` lies in the span of the simple roots in `j`.
    pub fn in_subsystem(&self, k: usize, j: NodeSet) -> bool {
        self.support(&self.roots[k]) & !j == 0
    }

    pub fn all_nodes(&self) -> NodeSet {
        ((1u16 << self.rank) - 1) as NodeSet
    }

    // ---- real affine roots -------------------------------------------------

    /// Checks that `beta` is a real affine root and returns the index of its
    /// finite part.
    pub fn validate_root(&self, beta: &AffineRoot) -> Result<usize> {
        let k = self.expect_root(&beta.gamma)?;
        let ok = match beta.mult {
            1 => beta.delta % self.delta_step(k) == 0,
            2 => self.ty.is_a2l2() && self.is_short(k) && beta.delta.rem_euclid(2) == 1,
            _ => false,
        };
        if ok {
            Ok(k)
        } else {
            Err(Error::Precondition(format!("not a real affine root: {beta:?}")))
        }
    }

    pub fn is_positive(&self, beta: &AffineRoot) -> bool {
        beta.delta > 0 || (beta.delta == 0 && beta.gamma.iter().all(|&x| x >= 0))
    }

    /// Coefficient of δ in units of `c_γ` (dual untwisted) or raw.
    pub fn delta_units(&self, beta: &AffineRoot) -> Result<i64> {
        let k = self.validate_root(beta)?;
        Ok(if beta.mult == 1 {
            beta.delta / self.delta_step(k)
        } else {
            beta.delta
        })
    }

    /// Simple affine root of node `i` (`0` is the affine node).
    pub fn simple_affine_root(&self, i: usize) -> Result<AffineRoot> {
        if i > self.rank {
            return Err(Error::IndexOutOfRange {
                index: i,
                limit: self.rank + 1,
            });
        }
        Ok(if i == 0 {
            AffineRoot::new(scale(-1, &self.roots[self.theta0]), self.m0 as u8, 1)
        } else {
            let mut e = ZERO;
            e[i - 1] = 1;
            AffineRoot::finite(e)
        })
    }

    /// `⟨β^∨, μ⟩` for a level-zero weight.
    pub fn coroot_pairing(&self, beta: &AffineRoot, mu: &Weight) -> Result<Q> {
        let k = self.validate_root(beta)?;
        Ok(Q::new(self.pair_dynkin(k, &mu.dynkin), beta.mult as i64))
    }

    /// `⟨α_i^∨, μ⟩` for a node of `I_af`, rational weights allowed.
    pub fn node_pairing(&self, i: usize, mu: &RatWeight) -> Q {
        if i == 0 {
            let co = &self.coroots[self.theta0];
            let p: Q = (0..self.rank).map(|c| Q::from(co[c]) * mu.dynkin[c]).sum();
            -p / Q::from(self.m0)
        } else {
            mu.dynkin[i - 1]
        }
    }

    /// `⟨α_i^∨, μ⟩` for integral weights; an integer for weights in `P_af`.
    pub fn node_pairing_int(&self, i: usize, d: &Coords) -> i64 {
        if i == 0 {
            let p = dot(&self.coroots[self.theta0], d);
            assert!(p % self.m0 == 0, "non-integral pairing with α_0^∨");
            -p / self.m0
        } else {
            d[i - 1]
        }
    }

    /// `s_β μ = μ - ⟨β^∨, μ⟩ β`.
    pub fn reflect_weight(&self, beta: &AffineRoot, mu: &Weight) -> Result<Weight> {
        let k = self.validate_root(beta)?;
        let p = self.pair_dynkin(k, &mu.dynkin);
        let m = beta.mult as i64;
        if p % m != 0 {
            return Err(Error::Precondition(
                "weight pairs non-integrally with the coroot".into(),
            ));
        }
        let c = p / m;
        Ok(Weight {
            dynkin: sub(&mu.dynkin, &scale(c * m, &self.dynkin[k])),
            delta: mu.delta - c * beta.delta,
        })
    }

    /// Simple affine root `α_i` as a weight.
    pub fn simple_root_weight(&self, i: usize) -> Weight {
        if i == 0 {
            Weight {
                dynkin: scale(-self.m0, &self.dynkin[self.theta0]),
                delta: 1,
            }
        } else {
            Weight {
                dynkin: self.dynkin[self.simple_root_index(i - 1)],
                delta: 0,
            }
        }
    }

    /// Dynkin labels of the classical part of the level-zero fundamental
    /// weight `ϖ_i`, `i ∈ I` given by internal index.
    pub fn fundamental_weight(&self, i: usize) -> Coords {
        let mut d = ZERO;
        d[i] = if self.ty.is_a2l2() && i + 1 == self.rank {
            2
        } else {
            1
        };
        d
    }

    /// `λ = Σ m_i ϖ_i` as a level-zero weight.
    pub fn level_zero_weight(&self, m: &[i64]) -> Result<Weight> {
        if m.len() != self.rank {
            return Err(Error::Precondition(format!(
                "expected {} coefficients, got {}",
                self.rank,
                m.len()
            )));
        }
        if m.iter().any(|&x| x < 0) {
            return Err(Error::Precondition("coefficients must be nonnegative".into()));
        }
        let mut d = ZERO;
        for (i, &mi) in m.iter().enumerate() {
            d = add(&d, &scale(mi, &self.fundamental_weight(i)));
        }
        Ok(Weight { dynkin: d, delta: 0 })
    }

    /// Translation part of the reflection in `beta`: `s_β = s_γ t_κ`.
    pub fn reflection_translation(&self, beta: &AffineRoot) -> Result<Coords> {
        let k = self.validate_root(beta)?;
        Ok(match self.lattice_mode() {
            LatticeMode::Roots => {
                let den = beta.mult as i64 * self.norms[k];
                let mut out = ZERO;
                for i in 0..self.rank {
                    let num = 2 * beta.delta * beta.gamma[i];
                    if num % den != 0 {
                        return Err(Error::Internal("non-integral reflection translation".into()));
                    }
                    out[i] = num / den;
                }
                out
            }
            LatticeMode::Coroots => scale(beta.delta, &self.coroots[k]),
        })
    }

    /// All positive real roots with δ-coefficient at most `max_delta`, sorted.
    pub fn positive_real_roots(&self, max_delta: i64) -> Vec<AffineRoot> {
        let mut out = Vec::new();
        for k in 0..self.n_roots() {
            let gamma = self.roots[k];
            let step = self.delta_step(k);
            let mut d = if self.is_positive_root(k) { 0 } else { step };
            while d <= max_delta {
                out.push(AffineRoot::new(gamma, 1, d));
                d += step;
            }
            if self.ty.is_a2l2() && self.is_short(k) {
                let mut d = 1;
                while d <= max_delta {
                    out.push(AffineRoot::new(gamma, 2, d));
                    d += 2;
                }
            }
        }
        out.sort_by_key(|b| (b.delta, b.mult, b.gamma));
        out
    }

    pub fn summary(&self) -> DatumSummary {
        DatumSummary {
            family: self.ty.name(),
            kac_name: self.ty.kac_name(),
            rank: self.rank,
            cartan: self.cartan_matrix(),
            affine_cartan: self.affine_cartan.clone(),
            labels: self.labels.clone(),
            labels_dual: self.labels_dual.clone(),
            gram: (0..self.rank)
                .map(|i| self.gram[i][..self.rank].to_vec())
                .collect(),
            positive_roots: (0..self.n_pos())
                .map(|k| RootSummary {
                    coords: self.roots[k][..self.rank].to_vec(),
                    length: self.length_class(k),
                    norm: self.norms[k],
                })
                .collect(),
            theta0: self.roots[self.theta0][..self.rank].to_vec(),
            rho_dual: self
                .rho_dual()
                .iter()
                .take(self.rank)
                .map(|q| q.to_string())
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RootSummary {
    pub coords: Vec<i64>,
    pub length: LengthClass,
    pub norm: i64,
}

/// JSON view of a root datum.
#[derive(Clone, Debug, Serialize)]
pub struct DatumSummary {
    pub family: String,
    pub kac_name: String,
    pub rank: usize,
    pub cartan: Vec<Vec<i64>>,
    pub affine_cartan: Vec<Vec<i64>>,
    pub labels: Vec<i64>,
    pub labels_dual: Vec<i64>,
    pub gram: Vec<Vec<i64>>,
    pub positive_roots: Vec<RootSummary>,
    pub theta0: Vec<i64>,
    pub rho_dual: Vec<String>,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn datum(f: Family, l: usize) -> RootDatum {
        RootDatum::new(AffineType::new(f, l).unwrap()).unwrap()
    }

    fn twisted_types() -> Vec<RootDatum> {
        vec![
            datum(Family::A2l2, 1),
            datum(Family::A2l2, 2),
            datum(Family::A2l2, 3),
            datum(Family::Dlp12, 2),
            datum(Family::Dlp12, 3),
            datum(Family::A2lm12, 3),
            datum(Family::A2lm12, 4),
            datum(Family::E62, 4),
            datum(Family::D43, 2),
        ]
    }

    #[test]
    fn positive_root_counts() {
        assert_eq!(datum(Family::Dlp12, 2).n_pos(), 4);
        assert_eq!(datum(Family::Dlp12, 3).n_pos(), 9);
        assert_eq!(datum(Family::A2lm12, 3).n_pos(), 9);
        assert_eq!(datum(Family::A2l2, 1).n_pos(), 1);
        assert_eq!(datum(Family::E62, 4).n_pos(), 24);
        assert_eq!(datum(Family::D43, 2).n_pos(), 6);
    }

    #[test]
    fn rank_constraints() {
        assert!(AffineType::new(Family::A2lm12, 2).is_err());
        assert!(AffineType::new(Family::Dlp12, 1).is_err());
        assert!(AffineType::new(Family::E62, 3).is_err());
        assert!(AffineType::new(Family::A2l2, 5).is_err());
        assert!(AffineType::parse("D43", None).is_ok());
        assert!(AffineType::parse("A2l2", None).is_err());
    }

    #[test]
    fn dual_labels() {
        for d in twisted_types() {
            assert_eq!(d.labels()[0], 1);
            let expect = if d.affine_type().is_a2l2() { 2 } else { 1 };
            assert_eq!(d.labels_dual()[0], expect, "{}", d.affine_type());
        }
    }

    #[test]
    fn delta_is_null_and_central_element_kills_weights() {
        for d in twisted_types() {
            let a = d.affine_cartan();
            let n = d.rank() + 1;
            for i in 0..n {
                let s: i64 = (0..n).map(|j| a[i][j] * d.labels()[j]).sum();
                assert_eq!(s, 0, "⟨α_i^∨, δ⟩ for {}", d.affine_type());
                let t: i64 = (0..n).map(|j| d.labels_dual()[j] * a[j][i]).sum();
                assert_eq!(t, 0, "⟨K, α_i⟩ for {}", d.affine_type());
            }
        }
    }

    #[test]
    fn c_alpha_table() {
        let g = datum(Family::D43, 2);
        for k in 0..g.n_roots() {
            let c = g.c_alpha(g.root(k)).unwrap();
            assert_eq!(c, if g.is_long(k) { 3 } else { 1 });
        }
        let b = datum(Family::Dlp12, 3);
        for k in 0..b.n_roots() {
            assert_eq!(b.c_alpha(b.root(k)).unwrap(), if b.is_long(k) { 2 } else { 1 });
        }
        let a = datum(Family::A2l2, 3);
        for k in 0..a.n_roots() {
            assert_eq!(a.c_alpha(a.root(k)).unwrap(), 1);
        }
        assert!(a.c_alpha(&coords(&[1, -1, 0])).is_err());
    }

    #[test]
    fn theta_s_examples() {
        assert_eq!(datum(Family::A2l2, 1).theta_s().unwrap(), coords(&[1]));
        assert_eq!(datum(Family::Dlp12, 2).theta_s().unwrap(), coords(&[1, 1]));
        // G2 with α1 short: θ_s = 2α1 + α2.
        assert_eq!(datum(Family::D43, 2).theta_s().unwrap(), coords(&[2, 1]));
    }

    #[test]
    fn a2l2_pairing_with_last_fundamental_weight() {
        let d = datum(Family::A2l2, 3);
        let lam = d.level_zero_weight(&[1, 0, 2]).unwrap();
        assert_eq!(d.node_pairing_int(3, &lam.dynkin), 4);
        let lam = d.level_zero_weight(&[0, 0, 1]).unwrap();
        // ⟨α_0^∨, ϖ_ℓ⟩ = -a_ℓ^∨ ⟨α_ℓ^∨,ϖ_ℓ⟩/a_0^∨ keeps ⟨K, ϖ_ℓ⟩ = 0.
        let k: i64 = (0..=3)
            .map(|i| d.labels_dual()[i] * d.node_pairing_int(i, &lam.dynkin))
            .sum();
        assert_eq!(k, 0);
    }

    #[test]
    fn doubled_root_reflection_matches_translation_action() {
        // A_2^(2): s_{2α1+δ} ϖ_1 = s_1 t_{α1} ϖ_1 = s_1 ϖ_1 - (α1, ϖ_1) δ.
        let d = datum(Family::A2l2, 1);
        let w1 = d.level_zero_weight(&[1]).unwrap();
        let beta = AffineRoot::new(coords(&[1]), 2, 1);
        let r = d.reflect_weight(&beta, &w1).unwrap();
        let kappa = d.reflection_translation(&beta).unwrap();
        assert_eq!(kappa, coords(&[1]));
        let shift = d.translation_pairing_weight(&kappa, &w1.dynkin);
        let s1 = d
            .reflect_weight(&AffineRoot::finite(coords(&[1])), &w1)
            .unwrap();
        assert_eq!(r.dynkin, s1.dynkin);
        assert_eq!(r.delta, -shift);
        assert_eq!(r.delta, -1);
        // Classical part is ϖ_1 - 2α_1 = -cl(ϖ_1).
        assert_eq!(r.dynkin, coords(&[-2]));
    }

    #[test]
    fn cartan_from_form() {
        for d in twisted_types() {
            for i in 0..d.rank() {
                for j in 0..d.rank() {
                    let si = d.simple_root_index(i);
                    let sj = d.simple_root_index(j);
                    assert_eq!(d.pair_dynkin(si, d.root_dynkin(sj)), d.cartan(i, j));
                }
            }
        }
    }

    #[test]
    fn real_roots_closed_under_simple_reflections() {
        for d in twisted_types() {
            let roots = d.positive_real_roots(3);
            for beta in &roots {
                for i in 0..=d.rank() {
                    // s_i β = β - ⟨α_i^∨, β⟩ α_i, evaluated on the finite part.
                    let k = d.validate_root(beta).unwrap();
                    let bw = Weight {
                        dynkin: scale(beta.mult as i64, d.root_dynkin(k)),
                        delta: beta.delta,
                    };
                    let p = d.node_pairing_int(i, &bw.dynkin);
                    let aw = d.simple_root_weight(i);
                    let img_dyn = sub(&bw.dynkin, &scale(p, &aw.dynkin));
                    let img_delta = bw.delta - p * aw.delta;
                    // Recover γ from the Dynkin labels of mult·γ.
                    let found = (0..d.n_roots()).find(|&g| {
                        scale(beta.mult as i64, d.root_dynkin(g)) == img_dyn
                    });
                    let g = found.expect("image is a multiple of a root");
                    let img = AffineRoot::new(*d.root(g), beta.mult, img_delta);
                    assert!(d.validate_root(&img).is_ok(), "{img:?}");
                }
            }
        }
    }
}
