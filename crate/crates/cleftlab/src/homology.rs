//! Projective covers, minimal resolutions, projective/injective dimensions,
//! Ext and Tor.
//!
//! All dimension computations are certified or honest about not being so:
//!
//! * `Finite(n)` means a minimal resolution terminated after exactly n
//!   steps.
//! * `Infinite` means some syzygy was certified isomorphic to an earlier one
//!   (including the module itself), so the minimal resolution is eventually
//!   periodic and never terminates.
//! * `Unknown` means the cutoff was reached with neither certificate; callers
//!   must propagate the uncertainty rather than guess.

use crate::algebra::Algebra;
use crate::error::{Error, Result};
use crate::exactlinalg::{Matrix, Subspace};
use crate::modules::{
    hom_basis, iso_test, tensor_map, tensor_module_bimodule, Bimodule, IsoOutcome, ModuleMap,
    RightModule, TensorData,
};
use std::sync::Arc;

/// Number of random Hom samples used when testing syzygies for repetition.
pub const ISO_SAMPLES: usize = 200;

/// Baseline syzygy-size budget for `projective_dimension`: once a syzygy
/// outgrows the budget the search stops with `Unknown`. Repetition can only
/// certify infinitude when syzygy sizes stabilize; strictly growing
/// resolutions (rad-square-zero algebras with several arrows at a vertex
/// grow exponentially) would otherwise exhaust memory without ever
/// producing a certificate.
pub const SYZYGY_DIM_BUDGET: usize = 128;

/// A homological dimension: certified finite, certified infinite, or
/// undetermined within the cutoff.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Dimension {
    Finite(usize),
    Infinite,
    Unknown,
}

impl Dimension {
    /// Shift by an integer, clamping at zero (homological dimensions of
    /// nonzero modules are nonnegative). Infinity and uncertainty absorb.
    pub fn shift(self, delta: i64) -> Dimension {
        match self {
            Dimension::Finite(n) => Dimension::Finite((n as i64 + delta).max(0) as usize),
            other => other,
        }
    }

    /// Maximum, with `Unknown` contagious unless the other side is already
    /// infinite.
    pub fn max(self, other: Dimension) -> Dimension {
        match (self, other) {
            (Dimension::Infinite, _) | (_, Dimension::Infinite) => Dimension::Infinite,
            (Dimension::Unknown, _) | (_, Dimension::Unknown) => Dimension::Unknown,
            (Dimension::Finite(a), Dimension::Finite(b)) => Dimension::Finite(a.max(b)),
        }
    }

    /// Whether `self ≤ other` is certified.
    pub fn certified_le(self, other: Dimension) -> Option<bool> {
        match (self, other) {
            (Dimension::Unknown, _) | (_, Dimension::Unknown) => None,
            (_, Dimension::Infinite) => Some(true),
            (Dimension::Infinite, Dimension::Finite(_)) => Some(false),
            (Dimension::Finite(a), Dimension::Finite(b)) => Some(a <= b),
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Dimension::Finite(_))
    }

    pub fn finite_value(self) -> Option<usize> {
        match self {
            Dimension::Finite(n) => Some(n),
            _ => None,
        }
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => write!(f, "infinite"),
            Dimension::Unknown => write!(f, "unknown"),
        }
    }
}

/// A projective cover P(M) ↠ M, with P(M) = ⊕_t (e_t·A)^{n_t}.
#[derive(Clone, Debug)]
pub struct ProjectiveCover {
    pub cover: RightModule,
    /// Surjection cover → M with kernel inside cover·rad.
    pub map: ModuleMap,
    /// Multiplicity n_t of each indecomposable projective e_t·A.
    pub multiplicities: Vec<usize>,
}

/// The indecomposable projective e_t·A as a submodule of the regular module,
/// together with its inclusion.
pub fn indecomposable_projective(algebra: &Arc<Algebra>, t: usize) -> (RightModule, ModuleMap) {
    let reg = RightModule::regular(algebra.clone());
    let span = reg.submodule_generated(&[algebra.idempotents()[t].to_vec()]);
    reg.submodule(&span).expect("right ideals are submodules")
}

/// Compute the projective cover of a right module.
pub fn projective_cover(m: &RightModule) -> ProjectiveCover {
    let algebra = m.algebra().clone();
    let f = algebra.field();
    let (top, proj) = m.top();
    // Preimages in M of a basis of top(M)·e_t give generators in M·e_t.
    let mut summands: Vec<(RightModule, ModuleMap)> = Vec::new();
    let mut columns: Vec<Matrix> = Vec::new();
    let mut multiplicities = vec![0usize; algebra.idempotents().len()];
    for (t, e_t) in algebra.idempotents().iter().enumerate() {
        let image = top.action_of(e_t).column_space();
        multiplicities[t] = image.dim();
        if image.dim() == 0 {
            continue;
        }
        let (proj_t, incl_t) = indecomposable_projective(&algebra, t);
        for v in 0..image.dim() {
            let target_vec = image.basis().row(v);
            // Solve proj(m) = v, then project the preimage onto M·e_t.
            let rhs = Matrix::column(f, target_vec);
            let pre = proj
                .matrix()
                .solve(&rhs)
                .expect("top projection is surjective")
                .col_vec(0);
            let gen = m.action_of(e_t).apply(&pre);
            // Map e_t·A → M, u ↦ gen·u; the basis of e_t·A sits inside A.
            let mut block = Matrix::zero(f, m.dim(), proj_t.dim());
            for j in 0..proj_t.dim() {
                let u = incl_t.matrix().col_vec(j);
                let out = m.action_of(&u).apply(&gen);
                for r in 0..m.dim() {
                    block.set(r, j, out[r]);
                }
            }
            columns.push(block);
            summands.push((proj_t.clone(), incl_t.clone()));
        }
    }
    let parts: Vec<&RightModule> = summands.iter().map(|(p, _)| p).collect();
    let cover = RightModule::direct_sum(&algebra, &parts);
    let mut mat = Matrix::zero(f, m.dim(), cover.dim());
    let mut off = 0;
    for block in &columns {
        for c in 0..block.cols() {
            for r in 0..m.dim() {
                mat.set(r, off + c, block.get(r, c));
            }
        }
        off += block.cols();
    }
    let map = ModuleMap::new_unchecked(cover.clone(), m.clone(), mat);
    debug_assert!(map.is_surjective(), "projective cover must surject (Nakayama)");
    ProjectiveCover { cover, map, multiplicities }
}

/// A minimal projective resolution computed up to a step bound:
/// covers[i]: P_i ↠ Ω^i(M), syzygies[i] = Ω^{i+1}(M), inclusions[i]:
/// Ω^{i+1} ↪ P_i. `complete` records whether a zero syzygy was reached.
#[derive(Clone, Debug)]
pub struct MinimalResolution {
    pub module: RightModule,
    pub covers: Vec<ProjectiveCover>,
    pub syzygies: Vec<RightModule>,
    pub inclusions: Vec<ModuleMap>,
    pub complete: bool,
}

impl MinimalResolution {
    /// The differential d_i: P_i → P_{i−1} for i ≥ 1 (cover followed by the
    /// syzygy inclusion).
    pub fn differential(&self, i: usize) -> ModuleMap {
        assert!(i >= 1 && i < self.covers.len());
        self.inclusions[i - 1].compose(&self.covers[i].map)
    }

    /// P_i, or a zero module past the end of a complete resolution.
    pub fn projective_at(&self, i: usize) -> RightModule {
        if i < self.covers.len() {
            self.covers[i].cover.clone()
        } else {
            RightModule::zero(self.module.algebra().clone())
        }
    }
}

/// Compute a minimal resolution with at most `steps` covers (or fewer if a
/// zero syzygy appears).
pub fn minimal_resolution(m: &RightModule, steps: usize) -> MinimalResolution {
    let mut covers = Vec::new();
    let mut syzygies = Vec::new();
    let mut inclusions = Vec::new();
    let mut current = m.clone();
    let mut complete = current.is_zero();
    for _ in 0..steps {
        if current.is_zero() {
            complete = true;
            break;
        }
        let cover = projective_cover(&current);
        let (ker, incl) = cover.map.kernel();
        covers.push(cover);
        syzygies.push(ker.clone());
        inclusions.push(incl);
        current = ker;
        if current.is_zero() {
            complete = true;
            break;
        }
    }
    MinimalResolution { module: m.clone(), covers, syzygies, inclusions, complete }
}

/// Projective dimension with syzygy-repetition certification of infinitude.
///
/// Ω⁰ = M itself participates in the comparisons, so Ω-periodic modules are
/// detected at the first repeat. Syzygies that outgrow the size budget end
/// the search with `Unknown`: a strictly growing resolution can never
/// trigger the repetition certificate, so continuing would only burn memory.
pub fn projective_dimension(m: &RightModule, cutoff: usize, seed: u64) -> Dimension {
    if m.is_zero() {
        return Dimension::Finite(0);
    }
    let budget = SYZYGY_DIM_BUDGET.max(16 * m.dim().max(m.algebra().dim()));
    let mut seen: Vec<RightModule> = vec![m.clone()];
    let mut current = m.clone();
    for step in 0..cutoff {
        let cover = projective_cover(&current);
        let (ker, _) = cover.map.kernel();
        if ker.is_zero() {
            return Dimension::Finite(step);
        }
        if ker.dim() > budget {
            return Dimension::Unknown;
        }
        for earlier in &seen {
            if iso_test(earlier, &ker, seed, ISO_SAMPLES) == IsoOutcome::Isomorphic {
                return Dimension::Infinite;
            }
        }
        seen.push(ker.clone());
        current = ker;
    }
    Dimension::Unknown
}

/// Injective dimension, computed as the projective dimension of the k-dual
/// over the opposite algebra.
pub fn injective_dimension(m: &RightModule, cutoff: usize, seed: u64) -> Dimension {
    let op = Arc::new(m.algebra().opposite());
    let dual = m.dual(&op).expect("dual over the freshly built opposite");
    projective_dimension(&dual, cutoff, seed)
}

/// Whether M is projective (its first syzygy vanishes).
pub fn is_projective(m: &RightModule) -> bool {
    if m.is_zero() {
        return true;
    }
    projective_cover(m).map.kernel().0.is_zero()
}

/// dim_k Ext^n_A(X, Y) for n = 0, …, window.
pub fn ext_dims(x: &RightModule, y: &RightModule, window: usize) -> Vec<usize> {
    let res = minimal_resolution(x, window + 2);
    let f = x.algebra().field();
    // Hom(P_i, Y) as subspaces of vec'd matrix space, plus the induced maps
    // δ_i: Hom(P_{i−1}, Y) → Hom(P_i, Y).
    let mut hom_spaces: Vec<Subspace> = Vec::new();
    let mut projectives: Vec<RightModule> = Vec::new();
    for i in 0..=window + 1 {
        let p_i = res.projective_at(i);
        let basis = hom_basis(&p_i, y);
        let vecs: Vec<Vec<u64>> = basis.iter().map(|h| h.vec_cm()).collect();
        hom_spaces.push(Subspace::from_vectors(f, y.dim() * p_i.dim(), &vecs));
        projectives.push(p_i);
    }
    let delta = |i: usize| -> Matrix {
        // δ_i(h) = h ∘ d_i, in the chosen Hom bases.
        let src = &hom_spaces[i - 1];
        let dst = &hom_spaces[i];
        let mut mat = Matrix::zero(f, dst.dim(), src.dim());
        if src.dim() == 0 || projectives[i].dim() == 0 {
            return mat;
        }
        let d_i = res.differential(i);
        for c in 0..src.dim() {
            let h = Matrix::unvec_cm(f, src.basis().row(c), y.dim(), projectives[i - 1].dim());
            let hd = h.mul(d_i.matrix());
            let coords = dst.coords(&hd.vec_cm()).expect("composition stays a module map");
            for r in 0..dst.dim() {
                mat.set(r, c, coords[r]);
            }
        }
        mat
    };
    let mut out = Vec::with_capacity(window + 1);
    let mut prev_rank = 0usize; // rank of δ_0 = 0
    for n in 0..=window {
        let next_rank = delta(n + 1).rank();
        out.push(hom_spaces[n].dim() - next_rank - prev_rank);
        prev_rank = next_rank;
    }
    out
}

/// The Tor groups Tor_n^A(X, M) for n = 0, …, window, as right modules over
/// the right-hand algebra of the bimodule M.
pub fn tor_modules(x: &RightModule, m: &Bimodule, window: usize) -> Result<Vec<RightModule>> {
    if !Algebra::compatible(x.algebra(), m.left_algebra()) {
        return Err(Error::InputError("Tor arguments do not share the middle algebra".into()));
    }
    let res = minimal_resolution(x, window + 2);
    // Chain complex T_i = P_i ⊗_A M with ∂_i = d_i ⊗ id.
    let mut chain: Vec<(RightModule, TensorData)> = Vec::new();
    for i in 0..=window + 1 {
        chain.push(tensor_module_bimodule(&res.projective_at(i), m)?);
    }
    let boundary = |i: usize| -> ModuleMap {
        if chain[i].0.dim() == 0 || chain[i - 1].0.dim() == 0 {
            return ModuleMap::zero(&chain[i].0, &chain[i - 1].0);
        }
        tensor_map(&res.differential(i), m, &chain[i], &chain[i - 1])
    };
    let mut out = Vec::with_capacity(window + 1);
    for n in 0..=window {
        let t_n = &chain[n].0;
        let incoming = boundary(n + 1);
        let (kernel, kernel_incl) = if n == 0 {
            (t_n.clone(), ModuleMap::identity(t_n))
        } else {
            boundary(n).kernel()
        };
        // Image of ∂_{n+1} expressed in kernel coordinates.
        let mut image_rows = Vec::new();
        let span = Subspace::from_rows(&kernel_incl.matrix().transpose());
        for c in 0..incoming.matrix().cols() {
            let w = incoming.matrix().col_vec(c);
            let coords = span.coords(&w).expect("boundaries land in cycles");
            image_rows.push(coords);
        }
        let image = Subspace::from_vectors(x.algebra().field(), kernel.dim(), &image_rows);
        let (h, _) = kernel.quotient(&image)?;
        out.push(h);
    }
    Ok(out)
}

/// dim_k Tor_n^A(X, M) for n = 0, …, window.
pub fn tor_dims(x: &RightModule, m: &Bimodule, window: usize) -> Result<Vec<usize>> {
    Ok(tor_modules(x, m, window)?.iter().map(|h| h.dim()).collect())
}

/// Global dimension: the maximum of pd S_t over all simples.
pub fn global_dimension(algebra: &Arc<Algebra>, cutoff: usize, seed: u64) -> Dimension {
    let mut out = Dimension::Finite(0);
    for t in 0..algebra.idempotents().len() {
        let s = RightModule::simple(algebra.clone(), t);
        out = out.max(projective_dimension(&s, cutoff, seed));
    }
    out
}

/// Certify that every supplied idempotent is primitive: top(e_t·A) must be
/// one-dimensional.
pub fn check_primitive_idempotents(algebra: &Arc<Algebra>) -> Result<()> {
    for t in 0..algebra.idempotents().len() {
        let (p_t, _) = indecomposable_projective(algebra, t);
        let (top, _) = p_t.top();
        if top.dim() != 1 {
            return Err(Error::InputError(format!(
                "idempotent {t} is not primitive: top(e·A) has dimension {}",
                top.dim()
            )));
        }
    }
    Ok(())
}

/// Default resolution cutoff for a module of this dimension.
pub fn default_cutoff(module_dim: usize) -> usize {
    2 * module_dim + 4
}
