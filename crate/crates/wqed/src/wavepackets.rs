//! Frequency grids, normalized pulse shapes, and quadrature.
//!
//! Every other module works on the types defined here: amplitudes sampled on
//! a uniform frequency grid with an odd number of nodes, integrated with
//! composite Simpson weights. The odd node count guarantees that the grid
//! center is itself a node and that the Simpson rule applies without a
//! correction panel. All frequencies and rates are dimensionless: the
//! reference waveguide coupling is the unit of frequency throughout.
//!
//! One-photon amplitudes `f(k)` are normalized so that `∫ |f(k)|² dk = 1`.
//! Two-photon amplitudes `g(k, p)` are bosonically symmetric and belong to
//! the state `(1/√2) ∫∫ g(k,p) a†_k a†_p |0⟩ dk dp`, whose squared norm is
//! the plain double integral `∫∫ |g|² dk dp`.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

/// Relative tolerance of the grid-doubling convergence test.
pub const CONVERGENCE_TOL: f64 = 1e-4;

/// Relative symmetry tolerance enforced on two-photon amplitudes.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Uniform frequency grid with an odd number of nodes.
///
/// Nodes are reproducible bit-exactly from `(center, half_width, n_points)`:
/// node `i` is `center + (i - (n_points-1)/2) * spacing`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FrequencyGrid {
    center: f64,
    half_width: f64,
    n_points: usize,
}

impl FrequencyGrid {
    /// Build a grid centered on `center` covering `center ± half_width`.
    ///
    /// `n_points` must be odd and at least 3; `half_width` must be positive.
    pub fn new(center: f64, half_width: f64, n_points: usize) -> Result<Self> {
        if !(half_width > 0.0) || !half_width.is_finite() || !center.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "grid half_width must be finite and positive, got {half_width}"
            )));
        }
        if n_points < 3 || n_points % 2 == 0 {
            return Err(Error::InvalidArgument(format!(
                "grid n_points must be odd and >= 3, got {n_points}"
            )));
        }
        Ok(Self { center, half_width, n_points })
    }

    pub fn center(&self) -> f64 {
        self.center
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    /// Node spacing `2 half_width / (n_points - 1)`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.n_points - 1) as f64
    }

    /// Frequency of node `i`.
    pub fn node(&self, i: usize) -> f64 {
        let mid = ((self.n_points - 1) / 2) as isize;
        self.center + (i as isize - mid) as f64 * self.spacing()
    }

    /// All node frequencies in order.
    pub fn nodes(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.node(i)).collect()
    }

    pub fn min(&self) -> f64 {
        self.node(0)
    }

    pub fn max(&self) -> f64 {
        self.node(self.n_points - 1)
    }

    /// True when `[lo, hi]` lies inside the grid support.
    pub fn covers(&self, lo: f64, hi: f64) -> bool {
        self.min() <= lo && hi <= self.max()
    }

    /// Composite Simpson weight of node `i`.
    pub fn weight(&self, i: usize) -> f64 {
        let h = self.spacing();
        let w = if i == 0 || i == self.n_points - 1 {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        w * h / 3.0
    }

    /// All Simpson weights.
    pub fn weights(&self) -> Array1<f64> {
        Array1::from_iter((0..self.n_points).map(|i| self.weight(i)))
    }

    /// Same support, half the spacing (`2 n - 1` nodes).
    pub fn refined(&self) -> Self {
        Self {
            center: self.center,
            half_width: self.half_width,
            n_points: 2 * self.n_points - 1,
        }
    }

    /// Twice the support at (nearly) the same spacing (`2 n - 1` nodes).
    pub fn extended(&self) -> Self {
        Self {
            center: self.center,
            half_width: 2.0 * self.half_width,
            n_points: 2 * self.n_points - 1,
        }
    }

    /// Quadrature of a complex-valued function sampled at the nodes.
    pub fn integrate<F>(&self, f: F) -> C64
    where
        F: Fn(usize, f64) -> C64,
    {
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..self.n_points {
            acc += self.weight(i) * f(i, self.node(i));
        }
        acc
    }
}

/// Gaussian pulse specification: carrier frequency and spectral width σ.
///
/// The one-photon spectral amplitude is `f(k) ∝ exp(-(k - carrier)² / 4σ²)`,
/// so `|f(k)|²` is a Gaussian of standard deviation σ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPulse {
    carrier: f64,
    width: f64,
}

impl GaussianPulse {
    pub fn new(carrier: f64, width: f64) -> Result<Self> {
        if !(width > 0.0) || !width.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "pulse width must be positive, got {width}"
            )));
        }
        Ok(Self { carrier, width })
    }

    pub fn carrier(&self) -> f64 {
        self.carrier
    }

    pub fn width(&self) -> f64 {
        self.width
    }

    /// Standard deviation of the position-space envelope `|ψ(x)|²` (c = 1).
    pub fn position_std(&self) -> f64 {
        1.0 / (2.0 * self.width)
    }
}

/// One-photon spectral amplitude on a [`FrequencyGrid`].
#[derive(Debug, Clone, PartialEq)]
pub struct OnePhotonAmplitude {
    grid: FrequencyGrid,
    values: Array1<C64>,
}

impl OnePhotonAmplitude {
    /// Wrap raw node values.
    pub fn new(grid: FrequencyGrid, values: Array1<C64>) -> Result<Self> {
        if values.len() != grid.n_points() {
            return Err(Error::InvalidArgument(format!(
                "amplitude has {} values for a grid of {} nodes",
                values.len(),
                grid.n_points()
            )));
        }
        Ok(Self { grid, values })
    }

    /// Normalized Gaussian pulse on `grid`.
    ///
    /// Fails with a convergence error when the grid does not cover at least
    /// ±8σ around the carrier or does not resolve the pulse (spacing > σ/2):
    /// in either case the truncated or undersampled norm would silently bias
    /// every downstream figure.
    pub fn gaussian(pulse: &GaussianPulse, grid: &FrequencyGrid) -> Result<Self> {
        let (c, s) = (pulse.carrier(), pulse.width());
        if !grid.covers(c - 8.0 * s, c + 8.0 * s) {
            return Err(Error::ConvergenceFailure(format!(
                "grid [{:.<3}, {:.3}] does not cover carrier ± 8σ = [{:.3}, {:.3}]",
                grid.min(),
                grid.max(),
                c - 8.0 * s,
                c + 8.0 * s
            )));
        }
        if grid.spacing() > s / 2.0 {
            return Err(Error::ConvergenceFailure(format!(
                "grid spacing {:.3e} does not resolve pulse width σ = {:.3e}",
                grid.spacing(),
                s
            )));
        }
        let values = Array1::from_iter((0..grid.n_points()).map(|i| {
            let d = grid.node(i) - c;
            C64::new((-d * d / (4.0 * s * s)).exp(), 0.0)
        }));
        let mut out = Self { grid: *grid, values };
        let n = out.norm_sq().sqrt();
        out.values.mapv_inplace(|v| v / n);
        Ok(out)
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &Array1<C64> {
        &self.values
    }

    /// New amplitude with values `f(k, v)` applied node-wise.
    pub fn map_with_k<F>(&self, f: F) -> Self
    where
        F: Fn(f64, C64) -> C64,
    {
        let values = Array1::from_iter(
            (0..self.grid.n_points()).map(|i| f(self.grid.node(i), self.values[i])),
        );
        Self { grid: self.grid, values }
    }

    /// Squared norm `∫ |f|² dk` under the grid quadrature.
    pub fn norm_sq(&self) -> f64 {
        (0..self.grid.n_points())
            .map(|i| self.grid.weight(i) * self.values[i].norm_sqr())
            .sum()
    }

    /// Inner product `⟨self, other⟩ = ∫ conj(self) · other dk`,
    /// conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        Ok((0..self.grid.n_points())
            .map(|i| self.grid.weight(i) * self.values[i].conj() * other.values[i])
            .sum())
    }

    /// Copy rescaled to unit norm.
    pub fn normalized(&self) -> Self {
        let n = self.norm_sq().sqrt();
        Self { grid: self.grid, values: self.values.mapv(|v| v / n) }
    }
}

/// Two-photon spectral amplitude `g(k, p)` on the tensor grid of a
/// [`FrequencyGrid`]; bosonically symmetric.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoPhotonAmplitude {
    grid: FrequencyGrid,
    values: Array2<C64>,
}

impl TwoPhotonAmplitude {
    /// Wrap raw values, enforcing bosonic symmetry to [`SYMMETRY_TOL`].
    pub fn new(grid: FrequencyGrid, values: Array2<C64>) -> Result<Self> {
        let n = grid.n_points();
        if values.dim() != (n, n) {
            return Err(Error::InvalidArgument(format!(
                "two-photon amplitude has shape {:?} for a grid of {} nodes",
                values.dim(),
                n
            )));
        }
        let scale = values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if scale > 0.0 {
            for i in 0..n {
                for j in (i + 1)..n {
                    if (values[(i, j)] - values[(j, i)]).norm() > SYMMETRY_TOL * scale {
                        return Err(Error::InvalidArgument(format!(
                            "two-photon amplitude is not symmetric at ({i}, {j})"
                        )));
                    }
                }
            }
        }
        Ok(Self { grid, values })
    }

    /// Internal constructor for values symmetric by construction.
    pub(crate) fn from_symmetric_unchecked(grid: FrequencyGrid, values: Array2<C64>) -> Self {
        Self { grid, values }
    }

    /// Product state `g(k,p) = f(k) f(p)` of two identical photons.
    pub fn product(f: &OnePhotonAmplitude) -> Self {
        let n = f.grid().n_points();
        let mut values = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                values[(i, j)] = f.values()[i] * f.values()[j];
            }
        }
        Self { grid: *f.grid(), values }
    }

    pub fn grid(&self) -> &FrequencyGrid {
        &self.grid
    }

    pub fn values(&self) -> &Array2<C64> {
        &self.values
    }

    /// New amplitude with `f(k, p, v)` applied node-wise. The caller must
    /// keep the result symmetric; this is checked in debug builds.
    pub fn map_with_kp<F>(&self, f: F) -> Self
    where
        F: Fn(f64, f64, C64) -> C64,
    {
        let n = self.grid.n_points();
        let mut values = Array2::zeros((n, n));
        for i in 0..n {
            let k = self.grid.node(i);
            for j in 0..n {
                values[(i, j)] = f(k, self.grid.node(j), self.values[(i, j)]);
            }
        }
        debug_assert!({
            let scale = values.iter().map(|v: &C64| v.norm()).fold(0.0, f64::max);
            (0..n).all(|i| {
                (i..n).all(|j| (values[(i, j)] - values[(j, i)]).norm() <= 1e-10 * scale.max(1e-300))
            })
        });
        Self { grid: self.grid, values }
    }

    /// Squared norm `∫∫ |g|² dk dp`.
    pub fn norm_sq(&self) -> f64 {
        let n = self.grid.n_points();
        let w = self.grid.weights();
        let mut acc = 0.0;
        for i in 0..n {
            let wi = w[i];
            for j in 0..n {
                acc += wi * w[j] * self.values[(i, j)].norm_sqr();
            }
        }
        acc
    }

    /// Inner product `∫∫ conj(self) · other dk dp`, conjugate-linear in `self`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.grid != other.grid {
            return Err(Error::GridMismatch);
        }
        let n = self.grid.n_points();
        let w = self.grid.weights();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            let wi = w[i];
            for j in 0..n {
                acc += wi * w[j] * self.values[(i, j)].conj() * other.values[(i, j)];
            }
        }
        Ok(acc)
    }
}

/// Outcome of the grid-doubling convergence test of a scalar figure.
#[derive(Debug, Clone, Copy)]
pub struct ConvergenceReport {
    /// Value on the base grid.
    pub base: f64,
    /// Value with the spacing halved.
    pub refined: f64,
    /// Value with the support doubled.
    pub extended: f64,
    /// Relative change under refinement.
    pub rel_change_refined: f64,
    /// Relative change under extension.
    pub rel_change_extended: f64,
}

impl ConvergenceReport {
    /// Largest of the two relative changes.
    pub fn rel_change(&self) -> f64 {
        self.rel_change_refined.max(self.rel_change_extended)
    }

    /// True when both changes are below [`CONVERGENCE_TOL`].
    pub fn passed(&self) -> bool {
        self.rel_change() < CONVERGENCE_TOL
    }
}

fn rel_change(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 {
        0.0
    } else {
        d / b.abs().max(a.abs()).max(f64::MIN_POSITIVE)
    }
}

/// Re-run `eval` on the refined and extended versions of `grid` and compare.
///
/// A figure is accepted only when halving the spacing and doubling the
/// support both move it by less than [`CONVERGENCE_TOL`] relative.
pub fn convergence_check<F>(grid: &FrequencyGrid, eval: F) -> Result<ConvergenceReport>
where
    F: Fn(&FrequencyGrid) -> Result<f64>,
{
    let base = eval(grid)?;
    let refined = eval(&grid.refined())?;
    let extended = eval(&grid.extended())?;
    Ok(ConvergenceReport {
        base,
        refined,
        extended,
        rel_change_refined: rel_change(base, refined),
        rel_change_extended: rel_change(base, extended),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use proptest::prelude::*;

    #[test]
    fn grid_nodes_match_definition() {
        let g = FrequencyGrid::new(0.0, 10.0, 5).unwrap();
        assert_eq!(g.nodes(), vec![-10.0, -5.0, 0.0, 5.0, 10.0]);
        let g = FrequencyGrid::new(1.0, 1.0, 3).unwrap();
        assert_eq!(g.nodes(), vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn grid_rejects_bad_arguments() {
        assert!(FrequencyGrid::new(0.0, 10.0, 4).is_err());
        assert!(FrequencyGrid::new(0.0, -1.0, 5).is_err());
        assert!(FrequencyGrid::new(0.0, 10.0, 1).is_err());
    }

    #[test]
    fn grid_center_is_a_node() {
        let g = FrequencyGrid::new(3.7, 2.1, 257).unwrap();
        assert_eq!(g.node((g.n_points() - 1) / 2), 3.7);
    }

    #[test]
    fn simpson_integrates_cubics_exactly() {
        let g = FrequencyGrid::new(1.0, 2.0, 9).unwrap();
        // Monomials up to degree 3 are exact; degree 4 is not.
        for p in 0..=3 {
            let num = g.integrate(|_, k| C64::new(k.powi(p), 0.0)).re;
            let hi: f64 = g.max();
            let lo: f64 = g.min();
            let exact = (hi.powi(p + 1) - lo.powi(p + 1)) / f64::from(p + 1);
            assert_abs_diff_eq!(num, exact, epsilon = 1e-12 * exact.abs().max(1.0));
        }
        let num4 = g.integrate(|_, k| C64::new(k.powi(4), 0.0)).re;
        let exact4 = (g.max().powi(5) - g.min().powi(5)) / 5.0;
        assert!((num4 - exact4).abs() > 1e-6);
    }

    #[test]
    fn gaussian_is_normalized_and_peaked_at_carrier() {
        let pulse = GaussianPulse::new(0.5, 0.36).unwrap();
        let grid = FrequencyGrid::new(0.5, 6.0, 801).unwrap();
        let f = OnePhotonAmplitude::gaussian(&pulse, &grid).unwrap();
        assert_abs_diff_eq!(f.norm_sq(), 1.0, epsilon = 1e-9);
        let argmax = (0..grid.n_points())
            .max_by(|&a, &b| f.values()[a].norm().total_cmp(&f.values()[b].norm()))
            .unwrap();
        assert_eq!(grid.node(argmax), 0.5);
    }

    #[test]
    fn gaussian_intensity_std_matches_width() {
        let pulse = GaussianPulse::new(0.0, 0.36).unwrap();
        let grid = FrequencyGrid::new(0.0, 6.0, 1025).unwrap();
        let f = OnePhotonAmplitude::gaussian(&pulse, &grid).unwrap();
        let mean = grid.integrate(|i, k| C64::new(k, 0.0) * f.values()[i].norm_sqr()).re;
        let var = grid
            .integrate(|i, k| C64::new((k - mean) * (k - mean), 0.0) * f.values()[i].norm_sqr())
            .re;
        assert_relative_eq!(var.sqrt(), 0.36, max_relative = 1e-3);
    }

    #[test]
    fn gaussian_rejects_truncating_or_coarse_grids() {
        let pulse = GaussianPulse::new(0.0, 1.0).unwrap();
        let narrow = FrequencyGrid::new(0.0, 4.0, 257).unwrap();
        assert!(matches!(
            OnePhotonAmplitude::gaussian(&pulse, &narrow),
            Err(Error::ConvergenceFailure(_))
        ));
        let coarse = FrequencyGrid::new(0.0, 10.0, 11).unwrap();
        assert!(OnePhotonAmplitude::gaussian(&pulse, &coarse).is_err());
    }

    #[test]
    fn product_state_is_symmetric_and_normalized() {
        let pulse = GaussianPulse::new(0.0, 0.5).unwrap();
        let grid = FrequencyGrid::new(0.0, 8.0, 401).unwrap();
        let f = OnePhotonAmplitude::gaussian(&pulse, &grid).unwrap();
        let g = TwoPhotonAmplitude::product(&f);
        assert_abs_diff_eq!(g.norm_sq(), 1.0, epsilon = 1e-9);
        for i in (0..grid.n_points()).step_by(37) {
            for j in (0..grid.n_points()).step_by(41) {
                assert_eq!(g.values()[(i, j)], g.values()[(j, i)]);
            }
        }
    }

    #[test]
    fn product_of_narrow_pulse_concentrates_on_diagonal() {
        let pulse = GaussianPulse::new(2.0, 0.05).unwrap();
        let grid = FrequencyGrid::new(2.0, 2.0, 401).unwrap();
        let f = OnePhotonAmplitude::gaussian(&pulse, &grid).unwrap();
        let g = TwoPhotonAmplitude::product(&f);
        // Mass within |k - 2| , |p - 2| < 5σ.
        let n = grid.n_points();
        let w = grid.weights();
        let mut inside = 0.0;
        for i in 0..n {
            for j in 0..n {
                if (grid.node(i) - 2.0).abs() < 0.25 && (grid.node(j) - 2.0).abs() < 0.25 {
                    inside += w[i] * w[j] * g.values()[(i, j)].norm_sqr();
                }
            }
        }
        assert!(inside > 1.0 - 1e-9);
    }

    #[test]
    fn inner_products_are_hermitian() {
        let grid = FrequencyGrid::new(0.0, 5.0, 201).unwrap();
        let a = OnePhotonAmplitude::gaussian(&GaussianPulse::new(0.3, 0.4).unwrap(), &grid)
            .unwrap()
            .map_with_k(|k, v| v * C64::new(0.0, 0.2 * k).exp());
        let b =
            OnePhotonAmplitude::gaussian(&GaussianPulse::new(-0.2, 0.5).unwrap(), &grid).unwrap();
        let ab = a.inner(&b).unwrap();
        let ba = b.inner(&a).unwrap();
        assert_abs_diff_eq!(ab.re, ba.conj().re, epsilon = 1e-12);
        assert_abs_diff_eq!(ab.im, ba.conj().im, epsilon = 1e-12);
        assert_abs_diff_eq!(a.inner(&a).unwrap().re, 1.0, epsilon = 1e-9);
    }

    #[test]
    fn inner_product_rejects_mismatched_grids() {
        let g1 = FrequencyGrid::new(0.0, 5.0, 201).unwrap();
        let g2 = FrequencyGrid::new(0.0, 5.0, 203).unwrap();
        let pulse = GaussianPulse::new(0.0, 0.5).unwrap();
        let a = OnePhotonAmplitude::gaussian(&pulse, &g1).unwrap();
        let b = OnePhotonAmplitude::gaussian(&pulse, &g2).unwrap();
        assert!(matches!(a.inner(&b), Err(Error::GridMismatch)));
    }

    #[test]
    fn offset_gaussian_overlap_matches_analytic_value() {
        // |⟨f_c1, f_c2⟩| = exp(-Δ²/8σ²) for equal widths; the reference value
        // is the closed Gaussian integral evaluated by high-resolution
        // quadrature on an independent fine grid.
        let s = 0.7;
        let delta = 0.9;
        let grid = FrequencyGrid::new(0.0, 12.0, 2049).unwrap();
        let a = OnePhotonAmplitude::gaussian(&GaussianPulse::new(-delta / 2.0, s).unwrap(), &grid)
            .unwrap();
        let b = OnePhotonAmplitude::gaussian(&GaussianPulse::new(delta / 2.0, s).unwrap(), &grid)
            .unwrap();
        let overlap = a.inner(&b).unwrap();
        let expected = (-delta * delta / (8.0 * s * s)).exp();
        assert_abs_diff_eq!(overlap.norm(), expected, epsilon = 1e-6);
    }

    #[test]
    fn norm_convention_matches_bosonic_contraction() {
        // On a tiny grid, expand (1/√2)Σ g_ij b_i† b_j† |0⟩ in the Fock basis
        // and compare the explicit contraction with the quadrature norm.
        let grid = FrequencyGrid::new(0.0, 1.0, 5).unwrap();
        let n = grid.n_points();
        let mut vals = Array2::zeros((n, n));
        for i in 0..n {
            for j in 0..n {
                let (x, y) = (grid.node(i), grid.node(j));
                vals[(i, j)] = C64::new(1.0 + x * y, 0.3 * (x + y));
            }
        }
        let g = TwoPhotonAmplitude::new(grid, vals.clone()).unwrap();
        // Explicit double-sum contraction: (1/2) Σ_{ijkl} conj(g_kl) g_ij
        // (δ_ki δ_lj + δ_kj δ_li) w_i w_j  =  Σ_ij w_i w_j |g_ij|².
        let w = grid.weights();
        let mut contraction = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                contraction += 0.5
                    * w[i]
                    * w[j]
                    * (vals[(i, j)].conj() * vals[(i, j)] + vals[(j, i)].conj() * vals[(i, j)]);
            }
        }
        assert_relative_eq!(contraction.re, g.norm_sq(), max_relative = 1e-12);
    }

    #[test]
    fn convergence_check_passes_on_resolved_norm() {
        let grid = FrequencyGrid::new(0.0, 8.0, 1025).unwrap();
        let report = convergence_check(&grid, |g| {
            let pulse = GaussianPulse::new(0.0, 0.36).unwrap();
            let f = OnePhotonAmplitude::gaussian(&pulse, g)?;
            // Second moment of the intensity: a smooth figure of the grid.
            Ok(g.integrate(|i, k| C64::new(k * k, 0.0) * f.values()[i].norm_sqr()).re)
        })
        .unwrap();
        assert!(report.passed(), "rel change {:.3e}", report.rel_change());
    }

    #[test]
    fn convergence_check_flags_truncated_support() {
        // half_width < 2σ truncates Gaussian mass; extension moves the value.
        let grid = FrequencyGrid::new(0.0, 1.5, 257).unwrap();
        let report = convergence_check(&grid, |g| {
            Ok(g.integrate(|_, k| C64::new((-k * k / 2.0).exp(), 0.0)).re)
        })
        .unwrap();
        assert!(!report.passed());
        assert!(report.rel_change_extended > CONVERGENCE_TOL);
    }

    #[test]
    fn convergence_check_is_exact_for_constant() {
        let grid = FrequencyGrid::new(0.0, 2.0, 101).unwrap();
        let report =
            convergence_check(&grid, |g| Ok(g.integrate(|_, _| C64::new(2.5, 0.0)).re / (2.0 * g.half_width())))
                .unwrap();
        assert_eq!(report.rel_change(), 0.0);
    }

    #[test]
    fn grid_refinement_converges_at_order_two_or_better() {
        // Norm error of a Gaussian under refinement should shrink at least
        // quadratically in the spacing.
        let pulse = GaussianPulse::new(0.0, 0.3).unwrap();
        let norm_at = |n: usize| {
            let grid = FrequencyGrid::new(0.0, 4.0, n).unwrap();
            let v = Array1::from_iter((0..n).map(|i| {
                let d = grid.node(i);
                C64::new((-d * d / (4.0 * 0.3 * 0.3)).exp(), 0.0)
            }));
            OnePhotonAmplitude::new(grid, v).unwrap().norm_sq()
        };
        let _ = pulse;
        let reference = norm_at(4097);
        let e1 = (norm_at(65) - reference).abs();
        let e2 = (norm_at(129) - reference).abs();
        let order = (e1 / e2).log2();
        assert!(order >= 2.0, "observed order {order:.2}");
    }

    proptest! {
        #[test]
        fn prop_gaussian_norm_is_one(
            carrier in -2.0f64..2.0,
            width in 0.1f64..1.5,
        ) {
            let pulse = GaussianPulse::new(carrier, width).unwrap();
            let hw = 10.0 * width + carrier.abs();
            let grid = FrequencyGrid::new(carrier, hw, 801).unwrap();
            let f = OnePhotonAmplitude::gaussian(&pulse, &grid).unwrap();
            prop_assert!((f.norm_sq() - 1.0).abs() < 1e-9);
        }

        #[test]
        fn prop_product_symmetry_exact(
            carrier in -1.0f64..1.0,
            width in 0.2f64..1.0,
        ) {
            let pulse = GaussianPulse::new(carrier, width).unwrap();
            let grid = FrequencyGrid::new(carrier, 12.0 * width, 129).unwrap();
            let f = OnePhotonAmplitude::gaussian(&pulse, &grid).unwrap();
            let g = TwoPhotonAmplitude::product(&f);
            for i in 0..grid.n_points() {
                for j in 0..grid.n_points() {
                    prop_assert_eq!(g.values()[(i, j)], g.values()[(j, i)]);
                }
            }
        }
    }
}
