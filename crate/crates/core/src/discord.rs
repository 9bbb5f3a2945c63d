//! Total, classical and quantum correlations of bipartite states.
//!
//! Discord is measured with rank-1 orthogonal projectors on a qubit. For a
//! measured side `A` and unmeasured side `B`:
//!
//! - `I = H(A) + H(B) - H(AB)`
//! - `H̃(B|A) = min Σ_j p_j H(ρ_{B|j})` over projector axes
//! - `J = H(B) - H̃(B|A)` and `D = I - J`
//!
//! The minimization runs a coarse `(θ, φ)` grid over the Bloch sphere and
//! refines the best grid points with Nelder-Mead in tangent-plane
//! coordinates, so it never suffers from the pole singularity of the angle
//! chart.

use alloc::{format, vec, vec::Vec};
use core::f64::consts::{FRAC_PI_2, PI, TAU};

use num_traits::{Euclid, Float};

use crate::dqc1::Dqc1State;
use crate::linalg::{gates, simultaneous_eigenbasis, ComplexMatrix, ONE};
use crate::state::{
    matrix_entropy, measurement_update, permute_subsystems, projected_branches, trace_out_first,
    trace_out_second, DensityMatrix,
};
use crate::{Error, Result};

/// Relative commutator tolerance of the classicality tests.
pub const COMMUTATOR_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

/// Split of a state into `A ⊗ B` and the side that is measured.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bipartition {
    pub d_a: usize,
    pub d_b: usize,
    pub measured: Side,
}

impl Bipartition {
    pub fn new(d_a: usize, d_b: usize, measured: Side) -> Result<Self> {
        if d_a < 2 || d_b < 2 {
            return Err(Error::InvalidArgument(format!(
                "bipartition {d_a}x{d_b} needs both sides >= 2"
            )));
        }
        Ok(Self { d_a, d_b, measured })
    }

    fn check(&self, rho: &DensityMatrix) -> Result<()> {
        if self.d_a * self.d_b != rho.dim() {
            return Err(Error::InvalidArgument(format!(
                "bipartition {}x{} does not match state dimension {}",
                self.d_a,
                self.d_b,
                rho.dim()
            )));
        }
        Ok(())
    }

    fn dim_of(&self, side: Side) -> usize {
        match side {
            Side::A => self.d_a,
            Side::B => self.d_b,
        }
    }
}

/// Direction of a qubit projector pair `(I ± n·σ)/2`, in Bloch angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlochAxis {
    pub theta: f64,
    pub phi: f64,
}

impl BlochAxis {
    pub fn new(theta: f64, phi: f64) -> Self {
        Self { theta, phi }
    }

    /// Axis in the X–Y plane: the observable `cos φ X + sin φ Y`.
    pub fn equatorial(phi: f64) -> Self {
        Self {
            theta: FRAC_PI_2,
            phi,
        }
    }

    pub fn vector(&self) -> [f64; 3] {
        let s = self.theta.sin();
        [s * self.phi.cos(), s * self.phi.sin(), self.theta.cos()]
    }

    fn from_vector(v: [f64; 3]) -> Self {
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        let theta = (v[2] / r).clamp(-1.0, 1.0).acos();
        let mut phi = v[1].atan2(v[0]);
        if phi < 0.0 {
            phi += TAU;
        }
        Self { theta, phi }
    }

    /// The two rank-1 projectors of this axis.
    pub fn projectors(&self) -> [ComplexMatrix; 2] {
        let [x, y, z] = self.vector();
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        let n = &(&gates::pauli_x().scale_real(x) + &gates::pauli_y().scale_real(y))
            + &gates::pauli_z().scale_real(z);
        let n = n.scale_real(0.5);
        [&half + &n, &half - &n]
    }
}

/// Result of a discord computation.
#[derive(Debug, Clone)]
pub struct DiscordReport {
    pub mutual_information: f64,
    pub classical_correlations: f64,
    pub discord: f64,
    /// Bloch angles `(θ, φ)` of the optimal projector axis.
    pub optimal_angles: (f64, f64),
    /// `(φ, I - J_φ)` samples; filled only by X–Y plane scans.
    pub scan_curve: Vec<(f64, f64)>,
    /// Smallest `I - J` on the coarse full-sphere grid, when it was computed
    /// as a cross-check of a plane scan.
    pub sphere_grid_discord: Option<f64>,
    /// False when refinement hit its iteration cap; the best value found is
    /// still reported.
    pub converged: bool,
}

/// Grid and refinement settings for the projector search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordOptions {
    /// Intervals in the polar angle over `[0, π]`.
    pub theta_steps: usize,
    /// Samples in the azimuth over `[0, 2π)`.
    pub phi_steps: usize,
    /// Number of best grid points used as refinement starts.
    pub refine_starts: usize,
    /// Spread of simplex values at which refinement stops.
    pub objective_tol: f64,
}

impl Default for DiscordOptions {
    fn default() -> Self {
        Self {
            theta_steps: 32,
            phi_steps: 64,
            refine_starts: 3,
            objective_tol: 1e-8,
        }
    }
}

/// A bipartite state prepared for repeated conditional-entropy evaluation.
#[derive(Debug, Clone)]
pub struct DiscordProblem {
    /// The state with the measured factor first.
    arranged: ComplexMatrix,
    d_measured: usize,
    h_measured: f64,
    h_unmeasured: f64,
    mutual_information: f64,
}

impl DiscordProblem {
    pub fn new(rho: &DensityMatrix, split: Bipartition) -> Result<Self> {
        split.check(rho)?;
        let d_measured = split.dim_of(split.measured);
        if d_measured != 2 {
            return Err(Error::UnsupportedDimension(d_measured));
        }
        let two = rho.with_dims(vec![split.d_a, split.d_b])?;
        let m = two.matrix();
        let h_a = matrix_entropy(&trace_out_second(m, split.d_a, split.d_b))?;
        let h_b = matrix_entropy(&trace_out_first(m, split.d_a, split.d_b))?;
        let h_ab = matrix_entropy(m)?;
        let mi = h_a + h_b - h_ab;
        if mi < -1e-9 {
            return Err(Error::Inconsistent(format!(
                "negative mutual information {mi:e}"
            )));
        }
        let (arranged, h_measured, h_unmeasured) = match split.measured {
            Side::A => (m.clone(), h_a, h_b),
            Side::B => (permute_subsystems(&two, &[1, 0])?.into_matrix(), h_b, h_a),
        };
        Ok(Self {
            arranged,
            d_measured,
            h_measured,
            h_unmeasured,
            mutual_information: mi.max(0.0),
        })
    }

    pub fn mutual_information(&self) -> f64 {
        self.mutual_information
    }

    /// Entropy of the measured side, the upper bound on discord.
    pub fn measured_entropy(&self) -> f64 {
        self.h_measured
    }

    pub fn unmeasured_entropy(&self) -> f64 {
        self.h_unmeasured
    }

    /// `Σ_j p_j H(ρ_{rest|j})` for the projector pair along `axis`.
    /// Degenerate branches carry no weight and are skipped.
    pub fn conditional_entropy(&self, axis: BlochAxis) -> f64 {
        projected_branches(&self.arranged, self.d_measured, &axis.projectors())
            .into_iter()
            .filter_map(|(p, m)| m.map(|m| p * matrix_entropy(&m).unwrap_or(0.0)))
            .sum()
    }

    /// `I - J` for one axis; its minimum over axes is the discord.
    pub fn gap(&self, axis: BlochAxis) -> f64 {
        self.gap_from_conditional(self.conditional_entropy(axis))
    }

    fn gap_from_conditional(&self, cond: f64) -> f64 {
        self.mutual_information - (self.h_unmeasured - cond)
    }

    /// Axes of the coarse spherical grid, poles sampled once.
    pub fn grid_axes(opts: &DiscordOptions) -> Vec<BlochAxis> {
        let mut axes = vec![BlochAxis::new(0.0, 0.0)];
        for i in 1..opts.theta_steps {
            let theta = PI * i as f64 / opts.theta_steps as f64;
            for j in 0..opts.phi_steps {
                axes.push(BlochAxis::new(
                    theta,
                    TAU * j as f64 / opts.phi_steps as f64,
                ));
            }
        }
        axes.push(BlochAxis::new(PI, 0.0));
        axes
    }

    /// Finishes a discord computation from conditional entropies already
    /// evaluated on [`DiscordProblem::grid_axes`] (in that order).
    pub fn report_from_grid(
        &self,
        axes: &[BlochAxis],
        conditional: &[f64],
        opts: &DiscordOptions,
    ) -> DiscordReport {
        let mut order: Vec<usize> = (0..axes.len()).collect();
        order.sort_by(|&i, &j| conditional[i].total_cmp(&conditional[j]).then(i.cmp(&j)));
        let mut best_axis = axes[order[0]];
        let mut best = conditional[order[0]];
        let mut converged = true;
        let step = PI / opts.theta_steps.max(1) as f64;
        for &start in order.iter().take(opts.refine_starts.max(1)) {
            let r = refine(
                |a| self.conditional_entropy(a),
                axes[start],
                conditional[start],
                step,
                opts.objective_tol,
            );
            if r.value < best {
                best = r.value;
                best_axis = r.axis;
            }
            converged &= r.converged;
        }
        self.finish(best, best_axis, Vec::new(), None, converged)
    }

    fn finish(
        &self,
        min_conditional: f64,
        axis: BlochAxis,
        scan_curve: Vec<(f64, f64)>,
        sphere_grid_discord: Option<f64>,
        converged: bool,
    ) -> DiscordReport {
        let i = self.mutual_information;
        let j = (self.h_unmeasured - min_conditional).clamp(0.0, i);
        DiscordReport {
            mutual_information: i,
            classical_correlations: j,
            discord: i - j,
            optimal_angles: (axis.theta, axis.phi),
            scan_curve,
            sphere_grid_discord,
            converged,
        }
    }

    /// Azimuths of an X–Y plane scan.
    pub fn xy_angles(samples: usize) -> Vec<f64> {
        (0..samples)
            .map(|i| TAU * i as f64 / samples as f64)
            .collect()
    }

    /// Finishes a plane scan from conditional entropies on
    /// [`DiscordProblem::xy_angles`] and on the sphere grid.
    pub fn report_from_xy_scan(
        &self,
        phis: &[f64],
        conditional: &[f64],
        sphere_conditional: &[f64],
    ) -> DiscordReport {
        let n = phis.len();
        let mut best = 0;
        for k in 1..n {
            if conditional[k] < conditional[best] {
                best = k;
            }
        }
        let step = TAU / n as f64;
        let center = phis[best];
        let (phi_star, value) = golden_section(
            |phi| self.conditional_entropy(BlochAxis::equatorial(phi)),
            center - step,
            center + step,
            1e-10,
        );
        let (phi_star, value) = if value < conditional[best] {
            (Euclid::rem_euclid(&phi_star, &TAU), value)
        } else {
            (center, conditional[best])
        };
        let curve = phis
            .iter()
            .zip(conditional)
            .map(|(&phi, &c)| (phi, self.gap_from_conditional(c)))
            .collect();
        let sphere_min = sphere_conditional
            .iter()
            .copied()
            .fold(f64::INFINITY, f64::min);
        let sphere_gap = if sphere_min.is_finite() {
            Some(self.gap_from_conditional(sphere_min).max(0.0))
        } else {
            None
        };
        self.finish(
            value,
            BlochAxis::equatorial(phi_star),
            curve,
            sphere_gap,
            true,
        )
    }
}

/// Mutual information `H(A) + H(B) - H(AB)` in bits, clipped at zero.
pub fn mutual_information(rho: &DensityMatrix, split: Bipartition) -> Result<f64> {
    split.check(rho)?;
    let two = rho.with_dims(vec![split.d_a, split.d_b])?;
    let m = two.matrix();
    let mi = matrix_entropy(&trace_out_second(m, split.d_a, split.d_b))?
        + matrix_entropy(&trace_out_first(m, split.d_a, split.d_b))?
        - matrix_entropy(m)?;
    if mi < -1e-9 {
        return Err(Error::Inconsistent(format!(
            "negative mutual information {mi:e}"
        )));
    }
    Ok(mi.max(0.0))
}

/// `Σ_j p_j H(ρ_{rest|j})` after measuring the qubit side along `axis`.
pub fn conditional_entropy_measured(
    rho: &DensityMatrix,
    split: Bipartition,
    axis: BlochAxis,
) -> Result<f64> {
    split.check(rho)?;
    let dm = split.dim_of(split.measured);
    if dm != 2 {
        return Err(Error::UnsupportedDimension(dm));
    }
    let two = rho.with_dims(vec![split.d_a, split.d_b])?;
    let side = match split.measured {
        Side::A => 0,
        Side::B => 1,
    };
    let outcomes = measurement_update(&two, &[side], &axis.projectors())?;
    let mut h = 0.0;
    for o in outcomes.iter().filter(|o| !o.degenerate) {
        h += o.probability * matrix_entropy(o.state.matrix())?;
    }
    Ok(h)
}

/// Quantum discord with the default search settings.
pub fn discord(rho: &DensityMatrix, split: Bipartition) -> Result<DiscordReport> {
    discord_with(rho, split, &DiscordOptions::default())
}

pub fn discord_with(
    rho: &DensityMatrix,
    split: Bipartition,
    opts: &DiscordOptions,
) -> Result<DiscordReport> {
    let problem = DiscordProblem::new(rho, split)?;
    let axes = DiscordProblem::grid_axes(opts);
    let values: Vec<f64> = axes
        .iter()
        .map(|&a| problem.conditional_entropy(a))
        .collect();
    Ok(problem.report_from_grid(&axes, &values, opts))
}

/// Scans `I - J_φ` for measurements `cos φ X + sin φ Y` on the clean qubit
/// over `samples` uniform azimuths, and cross-checks the plane minimum
/// against the coarse full-sphere grid.
pub fn discord_scan_xy(state: &Dqc1State, samples: usize) -> Result<DiscordReport> {
    let (problem, phis) = xy_scan_problem(state, samples)?;
    let conditional: Vec<f64> = phis
        .iter()
        .map(|&p| problem.conditional_entropy(BlochAxis::equatorial(p)))
        .collect();
    let sphere: Vec<f64> = DiscordProblem::grid_axes(&DiscordOptions::default())
        .into_iter()
        .map(|a| problem.conditional_entropy(a))
        .collect();
    Ok(problem.report_from_xy_scan(&phis, &conditional, &sphere))
}

/// Problem and azimuths for a plane scan of a circuit state.
pub fn xy_scan_problem(state: &Dqc1State, samples: usize) -> Result<(DiscordProblem, Vec<f64>)> {
    if samples < 16 {
        return Err(Error::InvalidArgument(format!(
            "plane scan needs at least 16 samples, got {samples}"
        )));
    }
    let split = Bipartition::new(2, state.register_dim(), Side::A)?;
    Ok((
        DiscordProblem::new(&state.dense(), split)?,
        DiscordProblem::xy_angles(samples),
    ))
}

struct Refined {
    axis: BlochAxis,
    value: f64,
    converged: bool,
}

/// Nelder-Mead on the sphere, in tangent coordinates around a moving centre.
fn refine(
    f: impl Fn(BlochAxis) -> f64,
    start: BlochAxis,
    start_value: f64,
    step: f64,
    ftol: f64,
) -> Refined {
    let mut center = start.vector();
    let mut best = start_value;
    let mut h = step;
    let mut converged = false;
    for _restart in 0..6 {
        let (e1, e2) = tangent_basis(center);
        let at = |p: [f64; 2]| -> [f64; 3] {
            [
                center[0] + p[0] * e1[0] + p[1] * e2[0],
                center[1] + p[0] * e1[1] + p[1] * e2[1],
                center[2] + p[0] * e1[2] + p[1] * e2[2],
            ]
        };
        let g = |p: [f64; 2]| f(BlochAxis::from_vector(at(p)));
        let (p, v, ok) = nelder_mead(&g, [[0.0, 0.0], [h, 0.0], [0.0, h]], best, ftol);
        let improved = best - v;
        if v < best {
            best = v;
            center = normalize(at(p));
        }
        if ok && improved <= ftol {
            converged = true;
            break;
        }
        h = (h * 0.1).max(1e-6);
    }
    Refined {
        axis: BlochAxis::from_vector(center),
        value: best,
        converged,
    }
}

fn normalize(v: [f64; 3]) -> [f64; 3] {
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / r, v[1] / r, v[2] / r]
}

fn tangent_basis(n: [f64; 3]) -> ([f64; 3], [f64; 3]) {
    let helper = if n[2].abs() < 0.9 {
        [0.0, 0.0, 1.0]
    } else {
        [1.0, 0.0, 0.0]
    };
    let dot = helper[0] * n[0] + helper[1] * n[1] + helper[2] * n[2];
    let e1 = normalize([
        helper[0] - dot * n[0],
        helper[1] - dot * n[1],
        helper[2] - dot * n[2],
    ]);
    let e2 = [
        n[1] * e1[2] - n[2] * e1[1],
        n[2] * e1[0] - n[0] * e1[2],
        n[0] * e1[1] - n[1] * e1[0],
    ];
    (e1, e2)
}

/// Minimizes `g` from an initial simplex whose first vertex value is known.
/// Returns the best vertex, its value and whether the tolerances were met.
fn nelder_mead(
    g: &impl Fn([f64; 2]) -> f64,
    init: [[f64; 2]; 3],
    v0: f64,
    ftol: f64,
) -> ([f64; 2], f64, bool) {
    let mut pts = init;
    let mut vals = [v0, g(init[1]), g(init[2])];
    let lin =
        |a: [f64; 2], b: [f64; 2], t: f64| [a[0] + t * (b[0] - a[0]), a[1] + t * (b[1] - a[1])];
    for _ in 0..400 {
        let mut idx = [0usize, 1, 2];
        idx.sort_by(|&i, &j| vals[i].total_cmp(&vals[j]));
        let (lo, mid, hi) = (idx[0], idx[1], idx[2]);
        let diam = (0..3)
            .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
            .map(|(i, j)| (pts[i][0] - pts[j][0]).hypot(pts[i][1] - pts[j][1]))
            .fold(0.0, f64::max);
        if (vals[hi] - vals[lo] <= ftol && diam <= 1e-5) || diam <= 1e-10 {
            return (pts[lo], vals[lo], true);
        }
        let centroid = [
            (pts[lo][0] + pts[mid][0]) / 2.0,
            (pts[lo][1] + pts[mid][1]) / 2.0,
        ];
        let refl = lin(centroid, pts[hi], -1.0);
        let vr = g(refl);
        if vr < vals[lo] {
            let exp = lin(centroid, pts[hi], -2.0);
            let ve = g(exp);
            if ve < vr {
                pts[hi] = exp;
                vals[hi] = ve;
            } else {
                pts[hi] = refl;
                vals[hi] = vr;
            }
        } else if vr < vals[mid] {
            pts[hi] = refl;
            vals[hi] = vr;
        } else {
            let (target, vt) = if vr < vals[hi] {
                (refl, vr)
            } else {
                (pts[hi], vals[hi])
            };
            let con = lin(centroid, target, 0.5);
            let vc = g(con);
            if vc < vt {
                pts[hi] = con;
                vals[hi] = vc;
            } else {
                for k in [mid, hi] {
                    pts[k] = lin(pts[lo], pts[k], 0.5);
                    vals[k] = g(pts[k]);
                }
            }
        }
    }
    let mut lo = 0;
    for k in 1..3 {
        if vals[k] < vals[lo] {
            lo = k;
        }
    }
    (pts[lo], vals[lo], false)
}

fn golden_section(f: impl Fn(f64) -> f64, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let r = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while b - a > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    if fc <= fd {
        (c, fc)
    } else {
        (d, fd)
    }
}

/// Hermitian generators of the block family `T_kl = ⟨k|ρ|l⟩_other`, which act
/// on the tested side. `arranged` has the other side first.
fn block_family(
    arranged: &ComplexMatrix,
    d_other: usize,
    d_side: usize,
) -> (Vec<ComplexMatrix>, Vec<ComplexMatrix>) {
    let mut blocks = Vec::new();
    let mut family = Vec::new();
    for k in 0..d_other {
        for l in k..d_other {
            let t = arranged.block(k * d_side, l * d_side, d_side, d_side);
            if k == l {
                family.push(t.hermitian_part());
            } else if t.max_abs() > 0.0 {
                family.push(t.hermitian_part());
                family.push(t.skew_hermitian_part());
            }
            blocks.push(t);
        }
    }
    family.retain(|m| m.max_abs() > 0.0);
    (blocks, family)
}

fn family_commutes(family: &[ComplexMatrix]) -> bool {
    let norms: Vec<f64> = family.iter().map(|m| m.frobenius_norm()).collect();
    for i in 0..family.len() {
        for j in i + 1..family.len() {
            let c = family[i].commutator(&family[j]).max_abs();
            if c > COMMUTATOR_TOL * norms[i] * norms[j] {
                return false;
            }
        }
    }
    true
}

fn witness_basis(
    blocks: &[ComplexMatrix],
    family: &[ComplexMatrix],
    d_side: usize,
) -> Result<ComplexMatrix> {
    if family.is_empty() {
        return Ok(ComplexMatrix::identity(d_side));
    }
    let w = simultaneous_eigenbasis(family, 1e-9);
    let wa = w.adjoint();
    for t in blocks {
        let off = (&(&wa * t) * &w).off_diagonal_max();
        if off > 1e-9 {
            return Err(Error::Inconsistent(format!(
                "commuting block family not diagonalized by its joint eigenbasis (off-diagonal {off:e})"
            )));
        }
    }
    Ok(w)
}

/// Tests whether `ρ = Σ_j q_j ρ_j ⊗ |j⟩⟨j|` for some orthonormal basis of
/// `side`, returning that basis (as columns) when it exists.
///
/// Decided on the blocks `T_kl` of `ρ` indexed by the other side: the state is
/// classical on `side` exactly when these form a commuting family of normal
/// matrices. The test is basis-free, so degenerate marginals are handled.
pub fn is_classical_on(
    rho: &DensityMatrix,
    split: Bipartition,
    side: Side,
) -> Result<Option<ComplexMatrix>> {
    split.check(rho)?;
    let two = rho.with_dims(vec![split.d_a, split.d_b])?;
    let (arranged, d_other, d_side) = match side {
        Side::B => (two.into_matrix(), split.d_a, split.d_b),
        Side::A => (
            permute_subsystems(&two, &[1, 0])?.into_matrix(),
            split.d_b,
            split.d_a,
        ),
    };
    let (blocks, family) = block_family(&arranged, d_other, d_side);
    if !family_commutes(&family) {
        return Ok(None);
    }
    witness_basis(&blocks, &family, d_side).map(Some)
}

/// Largest qubit count accepted by [`is_concordant`].
pub const CONCORDANCE_MAX_QUBITS: usize = 6;

/// Tests whether a multi-qubit state is diagonal in a product basis and
/// returns the local bases (one 2x2 unitary per qubit) when it is.
///
/// Each qubit is tested for classicality against the rest. A qubit whose
/// blocks are all multiples of the identity accepts any basis. The product of
/// the local witnesses must then diagonalize `ρ` to 1e-9.
pub fn is_concordant(rho: &DensityMatrix) -> Result<Option<Vec<ComplexMatrix>>> {
    let n = rho.dims().len();
    if let Some(&d) = rho.dims().iter().find(|&&d| d != 2) {
        return Err(Error::UnsupportedDimension(d));
    }
    if n > CONCORDANCE_MAX_QUBITS {
        return Err(Error::SizeLimit {
            what: "qubit count",
            value: n,
            limit: CONCORDANCE_MAX_QUBITS,
        });
    }
    if n == 1 {
        let e = crate::linalg::EigenDecomposition::hermitian(rho.matrix())?;
        return Ok(Some(vec![e.eigenvectors]));
    }
    let mut locals = Vec::with_capacity(n);
    for q in 0..n {
        let mut order: Vec<usize> = (0..n).filter(|&i| i != q).collect();
        order.push(q);
        let arranged = permute_subsystems(rho, &order)?.into_matrix();
        let (blocks, family) = block_family(&arranged, rho.dim() / 2, 2);
        let scalar = family.iter().all(|m| {
            let s = m.trace() / 2.0;
            m.approx_eq(
                &ComplexMatrix::identity(2).scale(s),
                COMMUTATOR_TOL * m.frobenius_norm().max(1e-300),
            )
        });
        if scalar {
            locals.push(ComplexMatrix::identity(2));
            continue;
        }
        if !family_commutes(&family) {
            return Ok(None);
        }
        match witness_basis(&blocks, &family, 2) {
            Ok(w) => locals.push(w),
            Err(_) => return Ok(None),
        }
    }
    let product = product_basis(&locals);
    let rotated = &(&product.adjoint() * rho.matrix()) * &product;
    Ok(if rotated.off_diagonal_max() < 1e-9 {
        Some(locals)
    } else {
        None
    })
}

/// `W_0 ⊗ W_1 ⊗ ...`.
pub fn product_basis(locals: &[ComplexMatrix]) -> ComplexMatrix {
    let mut out = ComplexMatrix::from_rows(&[[ONE]]);
    for w in locals {
        out = out.kron(w);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dqc1::{build_state, Dqc1Config};
    use crate::linalg::{haar_random_unitary, ZERO};
    use crate::state::von_neumann_entropy;
    use num_complex::Complex64;

    fn bell() -> DensityMatrix {
        let s = core::f64::consts::FRAC_1_SQRT_2;
        DensityMatrix::pure(
            vec![2, 2],
            &[Complex64::new(s, 0.0), ZERO, ZERO, Complex64::new(s, 0.0)],
        )
        .unwrap()
    }

    fn random_state(dim: usize, seed: u64) -> DensityMatrix {
        let u = haar_random_unitary(dim, seed).unwrap();
        let w = haar_random_unitary(dim, seed ^ 0xabcdef).unwrap();
        let probs: Vec<Complex64> = (0..dim)
            .map(|j| Complex64::new(w[(0, j)].norm_sqr(), 0.0))
            .collect();
        let m = &(&u * &ComplexMatrix::diagonal(&probs)) * &u.adjoint();
        DensityMatrix::new(vec![dim], m.hermitian_part()).unwrap()
    }

    fn standard(u: ComplexMatrix) -> DensityMatrix {
        build_state(Dqc1Config::standard(u).unwrap()).dense()
    }

    fn split(d_a: usize, d_b: usize) -> Bipartition {
        Bipartition::new(d_a, d_b, Side::A).unwrap()
    }

    #[test]
    fn mutual_information_examples() {
        let prod = random_state(2, 1).tensor(&random_state(3, 2));
        assert!(mutual_information(&prod, split(2, 3)).unwrap().abs() < 1e-12);
        assert!((mutual_information(&bell(), split(2, 2)).unwrap() - 2.0).abs() < 1e-12);
        assert!(mutual_information(&bell(), split(2, 3)).is_err());
    }

    #[test]
    fn mutual_information_matches_general_partial_traces() {
        let rho = standard(haar_random_unitary(16, 4).unwrap());
        let h = |keep: &[usize]| {
            von_neumann_entropy(&crate::state::partial_trace(&rho, keep).unwrap()).unwrap()
        };
        let expect = h(&[0]) + h(&[1, 2, 3, 4]) - von_neumann_entropy(&rho).unwrap();
        assert!((mutual_information(&rho, split(2, 16)).unwrap() - expect).abs() < 1e-12);
    }

    #[test]
    fn conditional_entropy_examples() {
        let b = random_state(3, 8);
        let prod = random_state(2, 7).tensor(&b);
        let hb = von_neumann_entropy(&b).unwrap();
        for axis in [BlochAxis::new(0.3, 1.2), BlochAxis::new(2.0, 5.0)] {
            let h = conditional_entropy_measured(&prod, split(2, 3), axis).unwrap();
            assert!((h - hb).abs() < 1e-12);
            assert!(
                conditional_entropy_measured(&bell(), split(2, 2), axis)
                    .unwrap()
                    .abs()
                    < 1e-12
            );
        }
        let z = standard(gates::pauli_z());
        let h = conditional_entropy_measured(&z, split(2, 2), BlochAxis::new(0.0, 0.0)).unwrap();
        assert!((h - 1.0).abs() < 1e-12);
        let qutrit = Bipartition::new(3, 2, Side::A).unwrap();
        let rho = random_state(6, 3);
        assert_eq!(
            conditional_entropy_measured(&rho, qutrit, BlochAxis::new(0.0, 0.0)),
            Err(Error::UnsupportedDimension(3))
        );
        assert!(matches!(
            discord(&rho, qutrit),
            Err(Error::UnsupportedDimension(3))
        ));
    }

    #[test]
    fn problem_objective_matches_measurement_route() {
        let rho = random_state(6, 31);
        let sp = Bipartition::new(2, 3, Side::A).unwrap();
        let p = DiscordProblem::new(&rho, sp).unwrap();
        let axis = BlochAxis::new(1.1, 0.4);
        let direct = conditional_entropy_measured(&rho, sp, axis).unwrap();
        assert!((p.conditional_entropy(axis) - direct).abs() < 1e-13);
        let sp_b = Bipartition::new(3, 2, Side::B).unwrap();
        let pb = DiscordProblem::new(&rho, sp_b).unwrap();
        let direct_b = conditional_entropy_measured(&rho, sp_b, axis).unwrap();
        assert!((pb.conditional_entropy(axis) - direct_b).abs() < 1e-13);
    }

    #[test]
    fn discord_anchor_values() {
        let prod = random_state(2, 11).tensor(&random_state(2, 12));
        let r = discord(&prod, split(2, 2)).unwrap();
        assert!(r.discord < 1e-9, "product discord {}", r.discord);
        let r = discord(&bell(), split(2, 2)).unwrap();
        assert!((r.discord - 1.0).abs() < 1e-6);
        let r = discord(&standard(gates::pauli_z()), split(2, 2)).unwrap();
        assert!(r.discord < 1e-9, "U = Z discord {}", r.discord);
        let r = discord(&standard(gates::phase()), split(2, 2)).unwrap();
        assert!(r.discord > 1e-3, "U = P discord {}", r.discord);
        assert!((r.mutual_information - r.classical_correlations - r.discord).abs() < 1e-12);
    }

    #[test]
    fn pure_state_discord_is_entanglement_entropy() {
        let u = haar_random_unitary(4, 5).unwrap();
        let psi = u.column(0);
        let rho = DensityMatrix::pure(vec![2, 2], &psi).unwrap();
        let ent = von_neumann_entropy(&crate::state::partial_trace(&rho, &[0]).unwrap()).unwrap();
        let r = discord(&rho, split(2, 2)).unwrap();
        assert!((r.discord - ent).abs() < 1e-6);
    }

    #[test]
    fn xy_scan_examples() {
        let z = build_state(Dqc1Config::standard(gates::pauli_z()).unwrap());
        let r = discord_scan_xy(&z, 64).unwrap();
        assert_eq!(r.scan_curve.len(), 64);
        // I - J_φ = h((1 + cos φ)/2): zero only for φ ∈ {0, π}
        assert!(r.discord < 1e-9 && (r.optimal_angles.1 % PI).abs() < 1e-6);
        assert!(r.scan_curve[0].1.abs() < 1e-12 && r.scan_curve[32].1.abs() < 1e-12);
        assert!((r.scan_curve[16].1 - 1.0).abs() < 1e-12);
        let p = build_state(Dqc1Config::standard(gates::phase()).unwrap());
        let r = discord_scan_xy(&p, 64).unwrap();
        let grid_min = r
            .scan_curve
            .iter()
            .map(|c| c.1)
            .fold(f64::INFINITY, f64::min);
        assert!(grid_min > 1e-3);
        assert!(r.discord <= grid_min + 1e-15);
        assert!(r.discord <= r.sphere_grid_discord.unwrap() + 1e-6);
        assert!(discord_scan_xy(&p, 15).is_err());
    }

    #[test]
    fn classicality_examples() {
        let u = haar_random_unitary(8, 2).unwrap();
        let rho = standard(u.clone());
        let sp = split(2, 8);
        let w = is_classical_on(&rho, sp, Side::B)
            .unwrap()
            .expect("DQC1 states are classical on B");
        // witness columns are eigenvectors of U
        let d = &(&w.adjoint() * &u) * &w;
        assert!(d.off_diagonal_max() < 1e-9);
        let p = standard(gates::phase());
        assert!(is_classical_on(&p, split(2, 2), Side::A).unwrap().is_none());
        assert!(is_classical_on(&p, split(2, 2), Side::B).unwrap().is_some());
        let diag = DensityMatrix::new(
            vec![2, 2],
            ComplexMatrix::diagonal(&[0.1, 0.2, 0.3, 0.4].map(|x| Complex64::new(x, 0.0))),
        )
        .unwrap();
        assert!(is_classical_on(&diag, split(2, 2), Side::A)
            .unwrap()
            .is_some());
        assert!(is_classical_on(&diag, split(2, 2), Side::B)
            .unwrap()
            .is_some());
        assert!(is_classical_on(&bell(), split(2, 2), Side::A)
            .unwrap()
            .is_none());
    }

    fn cq_state(plus: &DensityMatrix, minus: &DensityMatrix) -> DensityMatrix {
        let p0 = DensityMatrix::pure(vec![2], &[ONE, ZERO]).unwrap();
        let p1 = DensityMatrix::pure(vec![2], &[ZERO, ONE]).unwrap();
        p0.tensor(plus).mix(&p1.tensor(minus), 0.5).unwrap()
    }

    #[test]
    fn concordance_examples() {
        let diag = DensityMatrix::new(
            vec![2, 2, 2],
            ComplexMatrix::diagonal(
                &[0.05, 0.1, 0.15, 0.2, 0.1, 0.1, 0.2, 0.1].map(|x| Complex64::new(x, 0.0)),
            ),
        )
        .unwrap();
        assert!(is_concordant(&diag).unwrap().is_some());
        assert!(is_concordant(&bell()).unwrap().is_none());
        let mixed = DensityMatrix::maximally_mixed(vec![2, 2]).unwrap();
        assert!(is_concordant(&mixed).unwrap().is_some());
        // rotated product of diagonal states is concordant with a non-trivial basis
        let a = random_state(2, 40);
        let b = random_state(2, 41);
        let ab = a.tensor(&b);
        let locals = is_concordant(&ab).unwrap().unwrap();
        let w = product_basis(&locals);
        assert!((&(&w.adjoint() * ab.matrix()) * &w).off_diagonal_max() < 1e-9);
        let qutrit = DensityMatrix::maximally_mixed(vec![3, 2]).unwrap();
        assert!(matches!(
            is_concordant(&qutrit),
            Err(Error::UnsupportedDimension(3))
        ));
        let big = DensityMatrix::maximally_mixed(vec![2; 7]).unwrap();
        assert!(matches!(is_concordant(&big), Err(Error::SizeLimit { .. })));
    }

    /// Smallest off-diagonal mass of `(W_a ⊗ W_b)† ρ (W_a ⊗ W_b)` over a grid of
    /// local bases parametrized by Bloch angles.
    fn brute_force_product_offdiag(rho: &DensityMatrix, steps: usize) -> f64 {
        let local = |theta: f64, phi: f64| {
            let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
            let e = Complex64::from_polar(1.0, phi);
            ComplexMatrix::from_rows(&[
                [Complex64::new(c, 0.0), -e.conj() * s],
                [e * s, Complex64::new(c, 0.0)],
            ])
        };
        let mut best = f64::INFINITY;
        for i in 0..=steps {
            for j in 0..2 * steps {
                let wa = local(PI * i as f64 / steps as f64, PI * j as f64 / steps as f64);
                for k in 0..=steps {
                    for l in 0..2 * steps {
                        let wb = local(PI * k as f64 / steps as f64, PI * l as f64 / steps as f64);
                        let w = wa.kron(&wb);
                        let off = (&(&w.adjoint() * rho.matrix()) * &w).off_diagonal_max();
                        best = best.min(off);
                    }
                }
            }
        }
        best
    }

    #[test]
    fn noncommuting_conditional_states_are_not_concordant() {
        let plus = DensityMatrix::new(
            vec![2],
            ComplexMatrix::from_real(2, 2, &[0.8, 0.0, 0.0, 0.2]).unwrap(),
        )
        .unwrap();
        let minus = DensityMatrix::new(
            vec![2],
            ComplexMatrix::from_real(2, 2, &[0.5, 0.3, 0.3, 0.5]).unwrap(),
        )
        .unwrap();
        assert!(plus.matrix().commutator(minus.matrix()).max_abs() > 1e-3);
        let rho = cq_state(&plus, &minus);
        assert!(is_concordant(&rho).unwrap().is_none());
        assert!(brute_force_product_offdiag(&rho, 12) > 1e-3);
        // commuting conditional states: concordant, and the oracle agrees
        let minus_c = DensityMatrix::new(
            vec![2],
            ComplexMatrix::from_real(2, 2, &[0.3, 0.0, 0.0, 0.7]).unwrap(),
        )
        .unwrap();
        let rho_c = cq_state(&plus, &minus_c);
        assert!(is_concordant(&rho_c).unwrap().is_some());
        assert!(brute_force_product_offdiag(&rho_c, 4) < 1e-12);
    }
}
