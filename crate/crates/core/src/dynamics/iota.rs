use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hspace::HMatrix;
use crate::quat::{Quaternion, UnitQuaternion};

/// Residual bound for Hermiticity and `[ι, δW] = 0` in a [`Generator`].
pub const GENERATOR_TOLERANCE: f64 = 1e-12;

/// Largest `|[ι, X]|` entry accepted for Hamiltonians and canonical pairs.
pub const SUPERSELECTION_TOLERANCE: f64 = 1e-10;

/// `ι = η·I` for a constant unit pure-imaginary `η`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "UnitQuaternion", into = "UnitQuaternion")]
pub struct IotaSpec {
    eta: UnitQuaternion,
}

impl TryFrom<UnitQuaternion> for IotaSpec {
    type Error = Error;

    fn try_from(eta: UnitQuaternion) -> Result<Self> {
        IotaSpec::new(eta)
    }
}

impl From<IotaSpec> for UnitQuaternion {
    fn from(i: IotaSpec) -> Self {
        i.eta
    }
}

impl Default for IotaSpec {
    fn default() -> Self {
        IotaSpec { eta: UnitQuaternion::E1 }
    }
}

impl IotaSpec {
    pub fn new(eta: UnitQuaternion) -> Result<Self> {
        let real = eta.get().w;
        if real != 0.0 {
            return Err(Error::NotPureImaginary { real });
        }
        Ok(IotaSpec { eta })
    }

    /// From the imaginary components `[x, y, z]`, which must have unit length.
    pub fn from_components(v: [f64; 3]) -> Result<Self> {
        Self::new(UnitQuaternion::new(Quaternion::pure(v[0], v[1], v[2]))?)
    }

    pub fn eta(&self) -> UnitQuaternion {
        self.eta
    }

    pub fn operator(&self, n: usize) -> HMatrix {
        HMatrix::scalar(n, self.eta.get())
    }

    /// `ι·X`.
    pub fn apply(&self, x: &HMatrix) -> HMatrix {
        x.scale_left(self.eta.get())
    }

    /// `max |η X_ij − X_ij η|`.
    pub fn commutator_residual(&self, x: &HMatrix) -> f64 {
        let eta = self.eta.get();
        x.as_slice().iter().map(|&q| eta.commutator(q).norm()).fold(0.0, f64::max)
    }

    pub fn check_superselection(&self, x: &HMatrix) -> Result<()> {
        let residual = self.commutator_residual(x);
        if !(residual <= SUPERSELECTION_TOLERANCE) {
            return Err(Error::SuperselectionViolated { residual });
        }
        Ok(())
    }
}

/// An infinitesimal unitary `I + G` with `G = ι·δW`.
#[derive(Clone, Debug, PartialEq)]
pub struct Generator {
    dw: HMatrix,
    iota: IotaSpec,
}

impl Generator {
    pub fn new(dw: HMatrix, iota: IotaSpec) -> Result<Self> {
        if !dw.is_square() {
            return Err(Error::DimensionMismatch {
                expected: "square".into(),
                found: crate::error::dims(dw.rows(), dw.cols()),
            });
        }
        let residual = dw.hermitian_residual();
        if !(residual <= GENERATOR_TOLERANCE) {
            return Err(Error::NotHermitian { residual });
        }
        let residual = iota.commutator_residual(&dw);
        if !(residual <= GENERATOR_TOLERANCE) {
            return Err(Error::SuperselectionViolated { residual });
        }
        Ok(Generator { dw, iota })
    }

    pub fn dw(&self) -> &HMatrix {
        &self.dw
    }

    pub fn iota(&self) -> IotaSpec {
        self.iota
    }

    pub fn g(&self) -> HMatrix {
        self.iota.apply(&self.dw)
    }

    /// `max |(I+G)†(I+G) − I|`, which is `O(|G|²)`.
    pub fn first_order_unitarity_defect(&self) -> f64 {
        let n = self.dw.rows();
        let u = &HMatrix::identity(n) + &self.g();
        (&u.adjoint() * &u).max_abs_diff(&HMatrix::identity(n))
    }
}

/// `δX = [G, X]`.
pub fn induced_variation(x: &HMatrix, g: &Generator) -> Result<HMatrix> {
    g.g().commutator(x)
}
