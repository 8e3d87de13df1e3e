//! Single-turn inductance basis: the magnetic core of the model.
//!
//! Everything downstream (winding assembly, fault injection, the circuit
//! solver) consumes two tables of single-turn inductances sampled over one
//! mechanical revolution:
//!
//! * `exc[k][i][j]` — flux linked by a one-turn coil on tooth `i` per
//!   ampere in a one-turn coil on tooth `j`, with the rotor at grid angle
//!   `theta_k`, for the excitation-side self/mutual matrix (N x N);
//! * `sig[k][i][j]` — the same quantity for signal-side coil `i` against
//!   excitation-side coil `j` (N x N).
//!
//! These tables can come from an external field solution via the basis
//! file loader, or from [`generate_synthetic_basis`], which replaces the
//! field solver with a lumped permeance network:
//!
//! ```text
//!   yoke ──P_0── rotor ──P_1── yoke      P_i = mu0 * A_tooth / g(phi_i, theta)
//!                 │ ...
//!                 └──P_{N-1}── yoke
//! ```
//!
//! Every tooth `i` connects the (infinitely permeable) stator yoke to the
//! (infinitely permeable) rotor body through its air-gap permeance `P_i`,
//! where `A_tooth` is the tooth-face area and `g` the local gap length.
//! Driving one ampere-turn on tooth `j` and solving the single rotor node
//! gives the closed form implemented here:
//!
//! ```text
//!   L[j][j] =  P_j * (sum(P) - P_j) / sum(P)
//!   L[i][j] = -P_i * P_j / sum(P)        (i != j)
//! ```
//!
//! i.e. `L = diag(P) - P Pᵀ / sum(P)`. Three structural properties follow
//! and are frozen in the tests below: the matrix is exactly symmetric,
//! every column sums to zero (all flux entering the rotor leaves it), and
//! each entry is band-limited to spatial order `pole_count` in the rotor
//! angle. For tooth-coil machines the signal and excitation coils sit on
//! the same teeth, so the generator emits identical `exc` and `sig`
//! tables; externally supplied sets are free to differ.

use alloc::vec;
use alloc::vec::Vec;

use crate::geometry::{AirgapKind, Geometry, GeometryError};
use crate::math;

/// Permeability of free space, H/m.
pub const VACUUM_PERMEABILITY: f64 = 4.0e-7 * math::PI;

/// A sequence of equally-sized dense matrices, one per rotor grid angle.
///
/// Storage is sample-major, then row-major:
/// `data[(k * rows + i) * cols + j]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSeries {
    samples: usize,
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl MatrixSeries {
    /// An all-zero series of `samples` matrices of shape `rows x cols`.
    pub fn zeros(samples: usize, rows: usize, cols: usize) -> Self {
        MatrixSeries { samples, rows, cols, data: vec![0.0; samples * rows * cols] }
    }

    /// Number of grid angles.
    pub fn samples(&self) -> usize {
        self.samples
    }

    /// Matrix row count.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Matrix column count.
    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry `(i, j)` of the matrix at grid index `k`.
    #[inline]
    pub fn get(&self, k: usize, i: usize, j: usize) -> f64 {
        debug_assert!(k < self.samples && i < self.rows && j < self.cols);
        self.data[(k * self.rows + i) * self.cols + j]
    }

    /// Overwrites entry `(i, j)` of the matrix at grid index `k`.
    #[inline]
    pub fn set(&mut self, k: usize, i: usize, j: usize, value: f64) {
        debug_assert!(k < self.samples && i < self.rows && j < self.cols);
        self.data[(k * self.rows + i) * self.cols + j] = value;
    }

    /// Largest absolute entry over the whole series.
    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0_f64, |m, &v| m.max(math::abs(v)))
    }

    /// Worst symmetry violation `|a_ij - a_ji|` across all samples,
    /// normalised by the largest absolute entry of the series.
    ///
    /// Returns 0 for an all-zero series. Panics if the matrices are not
    /// square.
    pub fn max_relative_asymmetry(&self) -> f64 {
        assert_eq!(self.rows, self.cols, "asymmetry is only defined for square matrices");
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        let mut worst = 0.0_f64;
        for k in 0..self.samples {
            for i in 0..self.rows {
                for j in (i + 1)..self.cols {
                    worst = worst.max(math::abs(self.get(k, i, j) - self.get(k, j, i)));
                }
            }
        }
        worst / scale
    }
}

/// Geometry plus the two sampled single-turn inductance tables.
///
/// Fields are public so that file loaders and tests can build instances
/// directly; run [`BasisSet::validate`] before using one.
#[derive(Debug, Clone, PartialEq)]
pub struct BasisSet {
    /// The machine the tables were sampled from.
    pub geometry: Geometry,
    /// Rotor grid angles, the canonical uniform grid `2*pi*k/K` in
    /// `[0, 2*pi)`.
    pub angle_grid: Vec<f64>,
    /// Excitation-side single-turn matrix per grid angle, N x N.
    pub exc: MatrixSeries,
    /// Signal-to-excitation single-turn matrix per grid angle, N x N
    /// (row: signal tooth, column: excitation tooth).
    pub sig: MatrixSeries,
}

/// Failure to build or validate a [`BasisSet`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BasisError {
    /// The embedded geometry is invalid.
    Geometry(GeometryError),
    /// The angular grid is too coarse for the gap harmonic content.
    TooFewSamples {
        /// Minimum accepted `samples_per_rev`.
        required: usize,
        /// What was asked for.
        actual: usize,
    },
    /// The gap has no angular variation, so the synthetic network would
    /// produce constant tables that carry no rotor-angle information.
    NoSaliency,
    /// Table shapes disagree with each other or with the geometry.
    DimensionMismatch,
    /// The angle grid is not the canonical uniform grid `2*pi*k/K`.
    NonUniformGrid,
}

impl core::fmt::Display for BasisError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Self::Geometry(e) => write!(f, "invalid geometry: {e}"),
            Self::TooFewSamples { required, actual } => write!(
                f,
                "angular grid too coarse: {actual} samples per revolution, need at least {required}"
            ),
            Self::NoSaliency => {
                write!(f, "air gap has no angular variation; the synthetic basis would be constant")
            }
            Self::DimensionMismatch => {
                write!(f, "basis table shapes disagree with each other or with the geometry")
            }
            Self::NonUniformGrid => {
                write!(f, "angle grid must be the uniform grid 2*pi*k/K starting at zero")
            }
        }
    }
}

impl core::error::Error for BasisError {
    fn source(&self) -> Option<&(dyn core::error::Error + 'static)> {
        match self {
            Self::Geometry(e) => Some(e),
            _ => None,
        }
    }
}

impl BasisSet {
    /// Checks shapes and the grid convention.
    pub fn validate(&self) -> Result<(), BasisError> {
        self.geometry.validate().map_err(BasisError::Geometry)?;
        let n = self.geometry.slot_count;
        let k_count = self.angle_grid.len();
        if k_count == 0
            || self.exc.samples() != k_count
            || self.sig.samples() != k_count
            || self.exc.rows() != n
            || self.exc.cols() != n
            || self.sig.rows() != n
            || self.sig.cols() != n
        {
            return Err(BasisError::DimensionMismatch);
        }
        for (k, &theta) in self.angle_grid.iter().enumerate() {
            let expected = math::TAU * k as f64 / k_count as f64;
            if math::abs(theta - expected) > 1e-9 {
                return Err(BasisError::NonUniformGrid);
            }
        }
        Ok(())
    }

    /// Number of rotor grid angles.
    pub fn angle_count(&self) -> usize {
        self.angle_grid.len()
    }
}

/// Tooth-face area in m² implied by the geometry: axial stack length times
/// the tooth's share of the bore circumference.
fn tooth_face_area_m2(geometry: &Geometry) -> f64 {
    let pitch_m = math::PI * (geometry.stator_inner_diameter_mm * 1e-3)
        / geometry.slot_count as f64;
    (geometry.stack_length_mm * 1e-3) * geometry.tooth_span_fraction * pitch_m
}

/// Gap permeance of every tooth at rotor angle `theta`, in henries
/// (per turn squared).
fn tooth_permeances(geometry: &Geometry, theta: f64) -> Vec<f64> {
    let area = tooth_face_area_m2(geometry);
    (0..geometry.slot_count)
        .map(|i| {
            let gap_m = geometry.airgap_length_mm(geometry.tooth_angle(i), theta) * 1e-3;
            VACUUM_PERMEABILITY * area / gap_m
        })
        .collect()
}

/// Builds the single-turn inductance tables from the lumped permeance
/// network described in the module documentation.
///
/// `samples_per_rev` is the number of rotor grid angles `K`; the grid is
/// `theta_k = 2*pi*k/K`. It must be at least `2*pole_count + 2` so that
/// harmonic fits up to the gap order stay well-posed. The geometry must
/// be salient (`g_min < g_max`): a uniform gap yields angle-independent
/// tables that cannot encode the rotor position, and is rejected as
/// [`BasisError::NoSaliency`].
pub fn generate_synthetic_basis(
    geometry: &Geometry,
    samples_per_rev: usize,
) -> Result<BasisSet, BasisError> {
    geometry.validate().map_err(BasisError::Geometry)?;
    let required = 2 * geometry.pole_count as usize + 2;
    if samples_per_rev < required {
        return Err(BasisError::TooFewSamples { required, actual: samples_per_rev });
    }
    let salient = matches!(geometry.airgap_kind, AirgapKind::SinusoidalSalient);
    if !salient || geometry.g_min_mm == geometry.g_max_mm {
        return Err(BasisError::NoSaliency);
    }

    let n = geometry.slot_count;
    let mut angle_grid = Vec::with_capacity(samples_per_rev);
    let mut exc = MatrixSeries::zeros(samples_per_rev, n, n);
    for k in 0..samples_per_rev {
        let theta = math::TAU * k as f64 / samples_per_rev as f64;
        angle_grid.push(theta);
        let p = tooth_permeances(geometry, theta);
        let p_sum: f64 = p.iter().sum();
        for j in 0..n {
            for i in 0..n {
                let value = if i == j {
                    p[j] * (p_sum - p[j]) / p_sum
                } else {
                    // Exactly symmetric: the product commutes bit-for-bit.
                    -(p[i] * p[j]) / p_sum
                };
                exc.set(k, i, j, value);
            }
        }
    }

    let sig = exc.clone();
    Ok(BasisSet { geometry: geometry.clone(), angle_grid, exc, sig })
}
