use serde::{Deserialize, Serialize};

use super::ccr::{CanonicalPair, Interior};
use super::iota::IotaSpec;
use crate::error::{Error, Result};
use crate::hspace::{HMatrix, HVector};
use crate::quat::Quaternion;

/// Largest amplitude allowed on the two outermost points at each end.
pub const SUPPORT_TOLERANCE: f64 = 1e-10;

const MIN_POINTS: usize = 8;
const SUPPORT_WIDTH: usize = 2;
/// Rows closer than this to either end are excluded from grid comparisons.
const INTERIOR_MARGIN: usize = 4;

/// Uniform 1-d grid `xᵢ = origin + i·spacing`, open at both ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub n_points: usize,
    pub spacing: f64,
    pub origin: f64,
}

impl GridSpec {
    pub fn new(n_points: usize, spacing: f64, origin: f64) -> Result<Self> {
        if n_points < MIN_POINTS {
            return Err(Error::InvalidArgument(format!("grid needs at least {MIN_POINTS} points, got {n_points}")));
        }
        if !(spacing > 0.0 && spacing.is_finite()) || !origin.is_finite() {
            return Err(Error::InvalidArgument(format!("invalid grid spacing {spacing} or origin {origin}")));
        }
        Ok(GridSpec { n_points, spacing, origin })
    }

    /// A grid symmetric about zero.
    pub fn centered(n_points: usize, spacing: f64) -> Result<Self> {
        Self::new(n_points, spacing, -0.5 * (n_points as f64 - 1.0) * spacing)
    }

    /// Same extent at half the spacing.
    pub fn refined(&self) -> Self {
        let n = 2 * self.n_points - 1;
        GridSpec { n_points: n, spacing: 0.5 * self.spacing, origin: self.origin }
    }

    pub fn x(&self, i: usize) -> f64 {
        self.origin + i as f64 * self.spacing
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.x(i)).collect()
    }

    pub fn sample(&self, f: impl Fn(f64) -> Quaternion) -> HVector {
        HVector::new((0..self.n_points).map(|i| f(self.x(i))).collect()).expect("n_points >= 8")
    }

    pub fn interior_rows(&self) -> Vec<usize> {
        (INTERIOR_MARGIN..self.n_points - INTERIOR_MARGIN).collect()
    }

    /// `diag(x)`.
    pub fn position(&self) -> HMatrix {
        let xs: Vec<Quaternion> = self.points().into_iter().map(Quaternion::real).collect();
        HMatrix::diagonal(&xs)
    }

    /// Central difference `(ψᵢ₊₁ − ψᵢ₋₁)/2h`, with zero outside the grid.
    pub fn derivative(&self) -> HMatrix {
        let n = self.n_points;
        let c = 0.5 / self.spacing;
        HMatrix::from_fn(n, n, |i, j| {
            if j == i + 1 {
                Quaternion::real(c)
            } else if i == j + 1 {
                Quaternion::real(-c)
            } else {
                Quaternion::ZERO
            }
        })
    }

    /// `P = −ι·D`.
    pub fn momentum(&self, iota: IotaSpec) -> HMatrix {
        iota.apply(&self.derivative()).scale(-1.0)
    }

    /// Normalized probes `u(x)·q` for `u ∈ {1, x}` and `q ∈ {1, e₁, e₂, e₃}`.
    pub fn affine_probes(&self) -> Vec<HVector> {
        let mut out = Vec::with_capacity(8);
        for u in [|_: f64| 1.0, |x: f64| x] {
            for q in Quaternion::BASIS {
                let v = self.sample(|x| q * u(x));
                out.push(v.normalized().expect("nonzero probe"));
            }
        }
        out
    }

    /// `(Q, P)` whose commutator is `ι` on affine states away from the ends.
    ///
    /// The matrix commutator `[diag(x), D]` has a zero diagonal, so the
    /// relation cannot hold as a matrix identity on any grid.
    pub fn canonical_pair(&self, iota: IotaSpec) -> Result<CanonicalPair> {
        let rows = (1..self.n_points - 1).collect();
        CanonicalPair::new(
            vec![self.position()],
            vec![self.momentum(iota)],
            iota,
            Interior::Probes { states: self.affine_probes(), rows },
        )
    }

    fn check_support(&self, psi: &HVector) -> Result<()> {
        let n = self.n_points;
        if psi.len() != n {
            return Err(Error::DimensionMismatch { expected: n.to_string(), found: psi.len().to_string() });
        }
        let edge = (0..SUPPORT_WIDTH)
            .chain(n - SUPPORT_WIDTH..n)
            .map(|i| psi[i].norm())
            .fold(0.0, f64::max);
        if edge > SUPPORT_TOLERANCE {
            return Err(Error::BoundarySupport { amplitude: edge });
        }
        Ok(())
    }

    /// Fourth-order central difference on rows `2..n−2`; zero elsewhere.
    fn reference_derivative(&self, psi: &HVector) -> HVector {
        let n = self.n_points;
        let mut out = HVector::zeros(n);
        let c = 1.0 / (12.0 * self.spacing);
        for i in 2..n - 2 {
            out[i] = (psi[i - 2] - psi[i + 2] + (psi[i + 1] - psi[i - 1]) * 8.0) * c;
        }
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct MomentumGridReport {
    pub n_points: usize,
    pub spacing: f64,
    /// `max |ι(Pψ) − ψ′|` over interior rows.
    pub deviation: f64,
    /// `deviation / spacing²`.
    pub scaled: f64,
    /// `max |ι(Pψ) − Dψ|`, zero up to rounding.
    pub identity_residual: f64,
}

/// Compares `ι(Pψ)` with the derivative of `ψ` on interior rows.
///
/// Without `exact_derivative` the reference is a fourth-order stencil, so
/// the deviation measures the second-order error of `P`.
pub fn momentum_grid_check(
    grid: &GridSpec,
    iota: IotaSpec,
    psi: &HVector,
    exact_derivative: Option<&HVector>,
) -> Result<MomentumGridReport> {
    grid.check_support(psi)?;
    let p = grid.momentum(iota);
    let ip = iota.apply(&p);
    let ip_psi = ip.apply(psi)?;
    let d_psi = grid.derivative().apply(psi)?;
    let reference = match exact_derivative {
        Some(d) if d.len() != psi.len() => {
            return Err(Error::DimensionMismatch { expected: psi.len().to_string(), found: d.len().to_string() })
        }
        Some(d) => d.clone(),
        None => grid.reference_derivative(psi),
    };
    let mut deviation: f64 = 0.0;
    let mut identity_residual: f64 = 0.0;
    for i in grid.interior_rows() {
        deviation = deviation.max((ip_psi[i] - reference[i]).norm());
        identity_residual = identity_residual.max((ip_psi[i] - d_psi[i]).norm());
    }
    Ok(MomentumGridReport {
        n_points: grid.n_points,
        spacing: grid.spacing,
        deviation,
        scaled: deviation / (grid.spacing * grid.spacing),
        identity_residual,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RichardsonReport {
    pub coarse: MomentumGridReport,
    pub fine: MomentumGridReport,
    /// `coarse.deviation / fine.deviation`; 4 for second-order convergence.
    pub ratio: f64,
}

/// Runs [`momentum_grid_check`] on `grid` and on its refinement.
pub fn momentum_richardson(
    grid: &GridSpec,
    iota: IotaSpec,
    f: impl Fn(f64) -> Quaternion,
    df: Option<&dyn Fn(f64) -> Quaternion>,
) -> Result<RichardsonReport> {
    let run = |g: &GridSpec| {
        let psi = g.sample(&f);
        let exact = df.map(|d| g.sample(d));
        momentum_grid_check(g, iota, &psi, exact.as_ref())
    };
    let coarse = run(grid)?;
    let fine = run(&grid.refined())?;
    Ok(RichardsonReport { coarse, fine, ratio: coarse.deviation / fine.deviation })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlaneWaveReport {
    /// `max |Pψ − ψk|` on rows away from the ends.
    pub deviation: f64,
    /// `max |Pψ − ψ·sin(kh)/h|`, the exact discrete eigenvalue.
    pub discrete_residual: f64,
}

/// `ψ(x) = exp(η k x)`, for which `Pψ = ψ·sin(kh)/h` away from the ends.
pub fn plane_wave_check(grid: &GridSpec, iota: IotaSpec, k: f64) -> Result<PlaneWaveReport> {
    let eta = iota.eta();
    let psi = grid.sample(|x| Quaternion::exp_polar(1.0, eta, k * x));
    let p_psi = grid.momentum(iota).apply(&psi)?;
    let discrete = (k * grid.spacing).sin() / grid.spacing;
    let mut deviation: f64 = 0.0;
    let mut discrete_residual: f64 = 0.0;
    for i in 1..grid.n_points - 1 {
        deviation = deviation.max((p_psi[i] - psi[i] * k).norm());
        discrete_residual = discrete_residual.max((p_psi[i] - psi[i] * discrete).norm());
    }
    Ok(PlaneWaveReport { deviation, discrete_residual })
}
