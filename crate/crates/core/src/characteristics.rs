//! Roe-averaged interface frames and the projections between conservative
//! and characteristic variables.
//!
//! Both projections are written out as explicit four-term column sums.
//! Which terms get grouped first is what decides whether mirror-paired
//! interfaces produce bit-identical results, so the grouping is part of the
//! contract of each function, not an implementation detail:
//!
//! * `U -> W` in symmetry-preserving mode evaluates
//!   `l1*rho + (l2*rho_u + l3*rho_v) + l4*E`, so exchanging the two momentum
//!   columns (diagonal mirror) only commutes one addition.
//! * `W -> U` always sums columns left to right; in symmetry-preserving
//!   ordering the two acoustic columns `(u-c, u+c)` come first, so the
//!   y-axis mirror (which swaps them) again only commutes one addition.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::{velocity_squared, Axis, ConservedState, GasModel, PrimitiveState};

/// Arrangement of the eigenvectors inside `L` and `R`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EigenOrdering {
    /// `(u-c, u, u+c, u_perp)` with plain left-to-right sums.
    Natural,
    /// `(u-c, u+c, u, u_perp)` with the momentum pair bracketed in `U -> W`.
    #[default]
    SymmetryPreserving,
}

/// One characteristic family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Wave {
    /// `u - c`
    Minus,
    /// `u` (entropy)
    Contact,
    /// `u + c`
    Plus,
    /// `u` (shear, transverse momentum)
    Shear,
}

impl Wave {
    /// Position in the natural ordering `(u-c, u, u+c, u_perp)`.
    pub fn natural_index(self) -> usize {
        match self {
            Wave::Minus => 0,
            Wave::Contact => 1,
            Wave::Plus => 2,
            Wave::Shear => 3,
        }
    }
}

impl EigenOrdering {
    /// Families in row order of `L` (column order of `R`).
    pub fn waves(self) -> [Wave; 4] {
        match self {
            EigenOrdering::Natural => [Wave::Minus, Wave::Contact, Wave::Plus, Wave::Shear],
            EigenOrdering::SymmetryPreserving => {
                [Wave::Minus, Wave::Plus, Wave::Contact, Wave::Shear]
            }
        }
    }

    /// Slot of `wave` in this ordering.
    pub fn slot(self, wave: Wave) -> usize {
        match (self, wave) {
            (_, Wave::Minus) => 0,
            (EigenOrdering::Natural, Wave::Contact) => 1,
            (EigenOrdering::Natural, Wave::Plus) => 2,
            (EigenOrdering::SymmetryPreserving, Wave::Plus) => 1,
            (EigenOrdering::SymmetryPreserving, Wave::Contact) => 2,
            (_, Wave::Shear) => 3,
        }
    }
}

/// Characteristic components in the owning frame's ordering.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct CharacteristicQuad<T> {
    pub w: [T; 4],
}

/// Primitive state of one side of an interface together with its total
/// enthalpy `H = (E + p) / rho`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct FrameInput<T> {
    pub prim: PrimitiveState<T>,
    pub enthalpy: T,
}

impl<T: Real> FrameInput<T> {
    pub fn new(prim: PrimitiveState<T>, enthalpy: T) -> Self {
        Self { prim, enthalpy }
    }

    pub fn from_conserved(u: &ConservedState<T>, gas: &GasModel<T>) -> Result<Self> {
        let prim = crate::state::primitive_from_conserved(u, gas)?;
        Ok(Self {
            prim,
            enthalpy: crate::state::enthalpy(&prim, u),
        })
    }
}

/// Left/right eigenvector matrices frozen at one cell interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InterfaceFrame<T> {
    pub u: T,
    pub v: T,
    pub h: T,
    pub c: T,
    pub b1: T,
    pub b2: T,
    pub axis: Axis,
    pub ordering: EigenOrdering,
    /// `left[k]` is the row of wave `ordering.waves()[k]`; columns are
    /// `(rho, rho u, rho v, E)`.
    pub left: [[T; 4]; 4],
    /// `right[m][k]`: conserved component `m` of the eigenvector of wave
    /// `ordering.waves()[k]`.
    pub right: [[T; 4]; 4],
}

/// `(sqrt(rhoL) qL + sqrt(rhoR) qR) / (sqrt(rhoL) + sqrt(rhoR))`.
pub fn roe_average<T: Real>(rho_l: T, rho_r: T, q_l: T, q_r: T) -> Result<T> {
    for rho in [rho_l, rho_r] {
        if !(rho > T::zero()) {
            return Err(Error::NonPositiveDensity {
                rho: rho.to_f64_lossless(),
            });
        }
    }
    Ok(roe_weighted(rho_l.sqrt(), rho_r.sqrt(), q_l, q_r))
}

#[inline(always)]
fn roe_weighted<T: Real>(sl: T, sr: T, q_l: T, q_r: T) -> T {
    (sl * q_l + sr * q_r) / (sl + sr)
}

/// Lab-frame column of the normal / transverse momentum.
#[inline(always)]
fn momentum_columns(axis: Axis) -> (usize, usize) {
    match axis {
        Axis::X => (1, 2),
        Axis::Y => (2, 1),
    }
}

impl<T: Real> InterfaceFrame<T> {
    /// Builds the frame from Roe averages of `u`, `v` and `H`; the sound
    /// speed follows from `c^2 = (gamma-1) (H - (u^2+v^2)/2)`.
    pub fn build(
        left: &FrameInput<T>,
        right: &FrameInput<T>,
        axis: Axis,
        ordering: EigenOrdering,
        gas: &GasModel<T>,
    ) -> Result<Self> {
        for rho in [left.prim.rho, right.prim.rho] {
            if !(rho > T::zero()) {
                return Err(Error::NonPositiveDensity {
                    rho: rho.to_f64_lossless(),
                });
            }
        }
        let sl = left.prim.rho.sqrt();
        let sr = right.prim.rho.sqrt();
        let u = roe_weighted(sl, sr, left.prim.u, right.prim.u);
        let v = roe_weighted(sl, sr, left.prim.v, right.prim.v);
        let h = roe_weighted(sl, sr, left.enthalpy, right.enthalpy);
        Self::from_averages(u, v, h, axis, ordering, gas)
    }

    /// Builds the frame directly from averaged `u`, `v`, `H`.
    pub fn from_averages(
        u: T,
        v: T,
        h: T,
        axis: Axis,
        ordering: EigenOrdering,
        gas: &GasModel<T>,
    ) -> Result<Self> {
        let half = T::lit(0.5);
        let gm1 = gas.gamma - T::one();
        let ke = velocity_squared(u, v) * half;
        let c2 = gm1 * (h - ke);
        if !(c2 > T::zero()) {
            return Err(Error::ImaginarySoundSpeed {
                c2: c2.to_f64_lossless(),
            });
        }
        let c = c2.sqrt();
        let b2 = gm1 / c2;
        let b1 = ke * b2;
        let inv_c = T::one() / c;

        let (vn, vt) = match axis {
            Axis::X => (u, v),
            Axis::Y => (v, u),
        };
        let (n, t) = momentum_columns(axis);

        // Natural-order rows, expressed through (vn, vt) so the x and y
        // frames share one expression shape.
        let mut l_nat = [[T::zero(); 4]; 4];
        l_nat[0][0] = half * (b1 + vn * inv_c);
        l_nat[0][n] = -half * (inv_c + b2 * vn);
        l_nat[0][t] = -half * b2 * vt;
        l_nat[0][3] = half * b2;

        l_nat[1][0] = T::one() - b1;
        l_nat[1][n] = b2 * vn;
        l_nat[1][t] = b2 * vt;
        l_nat[1][3] = -b2;

        l_nat[2][0] = half * (b1 - vn * inv_c);
        l_nat[2][n] = half * (inv_c - b2 * vn);
        l_nat[2][t] = -half * b2 * vt;
        l_nat[2][3] = half * b2;

        l_nat[3][0] = -vt;
        l_nat[3][n] = T::zero();
        l_nat[3][t] = T::one();
        l_nat[3][3] = T::zero();

        // Natural-order columns of R.
        let vnc = vn * c;
        let mut r_nat = [[T::zero(); 4]; 4];
        let cols: [[T; 4]; 4] = {
            let mut minus = [T::zero(); 4];
            minus[0] = T::one();
            minus[n] = vn - c;
            minus[t] = vt;
            minus[3] = h - vnc;
            let mut contact = [T::zero(); 4];
            contact[0] = T::one();
            contact[n] = vn;
            contact[t] = vt;
            contact[3] = ke;
            let mut plus = [T::zero(); 4];
            plus[0] = T::one();
            plus[n] = vn + c;
            plus[t] = vt;
            plus[3] = h + vnc;
            let mut shear = [T::zero(); 4];
            shear[t] = T::one();
            shear[3] = vt;
            [minus, contact, plus, shear]
        };
        for (k, col) in cols.iter().enumerate() {
            for m in 0..4 {
                r_nat[m][k] = col[m];
            }
        }

        let mut left = [[T::zero(); 4]; 4];
        let mut right = [[T::zero(); 4]; 4];
        for (k, wave) in ordering.waves().iter().enumerate() {
            let src = wave.natural_index();
            left[k] = l_nat[src];
            for m in 0..4 {
                right[m][k] = r_nat[m][src];
            }
        }

        Ok(Self {
            u,
            v,
            h,
            c,
            b1,
            b2,
            axis,
            ordering,
            left,
            right,
        })
    }

    /// `W = L U`.
    #[inline]
    pub fn to_characteristic(&self, s: &ConservedState<T>) -> CharacteristicQuad<T> {
        let mut w = [T::zero(); 4];
        match self.ordering {
            EigenOrdering::SymmetryPreserving => {
                for (k, row) in self.left.iter().enumerate() {
                    w[k] = row[0] * s.rho + (row[1] * s.mx + row[2] * s.my) + row[3] * s.energy;
                }
            }
            EigenOrdering::Natural => {
                for (k, row) in self.left.iter().enumerate() {
                    w[k] = row[0] * s.rho + row[1] * s.mx + row[2] * s.my + row[3] * s.energy;
                }
            }
        }
        CharacteristicQuad { w }
    }

    /// `U = R W`, columns summed left to right in the frame's ordering.
    #[inline]
    pub fn to_conservative(&self, q: &CharacteristicQuad<T>) -> ConservedState<T> {
        let w = &q.w;
        let mut out = [T::zero(); 4];
        for (m, row) in self.right.iter().enumerate() {
            out[m] = row[0] * w[0] + row[1] * w[1] + row[2] * w[2] + row[3] * w[3];
        }
        ConservedState::from_array(out)
    }

    /// Maximum entrywise deviation of `L R` from the identity.
    pub fn inverse_defect(&self) -> T {
        let mut worst = T::zero();
        for i in 0..4 {
            for j in 0..4 {
                let mut s = T::zero();
                for k in 0..4 {
                    s = s + self.left[i][k] * self.right[k][j];
                }
                let target = if i == j { T::one() } else { T::zero() };
                worst = worst.max((s - target).abs());
            }
        }
        worst
    }
}
