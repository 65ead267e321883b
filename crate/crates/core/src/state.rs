//! Conserved and primitive states, the ideal-gas closure and the physical
//! flux vectors.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Sweep direction of a dimension-wise operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    X,
    Y,
}

/// Which formulation a kernel evaluates.
///
/// `Original` is the textbook evaluation order; `Symmetric` is the
/// mirror-safe one. Both are mathematically identical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Variant {
    Original,
    #[default]
    Symmetric,
}

impl Variant {
    pub fn id(self) -> &'static str {
        match self {
            Variant::Original => "original",
            Variant::Symmetric => "symmetric",
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

impl std::str::FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "original" => Ok(Variant::Original),
            "symmetric" => Ok(Variant::Symmetric),
            _ => Err(Error::InvalidConfig(format!("unknown variant '{s}' (original|symmetric)"))),
        }
    }
}

/// `U = (rho, rho u, rho v, E)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ConservedState<T> {
    pub rho: T,
    pub mx: T,
    pub my: T,
    pub energy: T,
}

/// `(rho, u, v, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct PrimitiveState<T> {
    pub rho: T,
    pub u: T,
    pub v: T,
    pub p: T,
}

/// Ideal gas with a constant ratio of specific heats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GasModel<T> {
    pub gamma: T,
}

impl<T: Real> GasModel<T> {
    pub fn new(gamma: T) -> Result<Self> {
        if !(gamma > T::one()) {
            return Err(Error::InvalidConfig(format!(
                "gamma must exceed 1, got {gamma}"
            )));
        }
        Ok(Self { gamma })
    }

    /// `gamma = 1.4`.
    pub fn air() -> Self {
        Self { gamma: T::lit(1.4) }
    }

    /// `gamma = 5/3`.
    pub fn monatomic() -> Self {
        Self {
            gamma: T::lit(5.0) / T::lit(3.0),
        }
    }
}

impl<T: Real> ConservedState<T> {
    pub fn new(rho: T, mx: T, my: T, energy: T) -> Self {
        Self { rho, mx, my, energy }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn to_array(self) -> [T; 4] {
        [self.rho, self.mx, self.my, self.energy]
    }

    pub fn from_array(a: [T; 4]) -> Self {
        Self::new(a[0], a[1], a[2], a[3])
    }

    /// Momentum normal to the sweep direction.
    #[inline(always)]
    pub fn normal_momentum(&self, axis: Axis) -> T {
        match axis {
            Axis::X => self.mx,
            Axis::Y => self.my,
        }
    }

    /// y-axis mirror image: `rho u -> -rho u`.
    pub fn mirror_x_momentum(self) -> Self {
        Self::new(self.rho, -self.mx, self.my, self.energy)
    }

    /// x-axis mirror image: `rho v -> -rho v`.
    pub fn mirror_y_momentum(self) -> Self {
        Self::new(self.rho, self.mx, -self.my, self.energy)
    }

    /// Diagonal mirror image: `rho u <-> rho v`.
    pub fn swap_momenta(self) -> Self {
        Self::new(self.rho, self.my, self.mx, self.energy)
    }

    pub fn is_finite(&self) -> bool {
        self.rho.is_finite() && self.mx.is_finite() && self.my.is_finite() && self.energy.is_finite()
    }
}

impl<T: Real> PrimitiveState<T> {
    pub fn new(rho: T, u: T, v: T, p: T) -> Self {
        Self { rho, u, v, p }
    }

    fn validate(&self) -> Result<()> {
        if !(self.rho > T::zero()) {
            return Err(Error::NonPositiveDensity {
                rho: self.rho.to_f64_lossless(),
            });
        }
        if !(self.p > T::zero()) {
            return Err(Error::NonPositivePressure {
                p: self.p.to_f64_lossless(),
            });
        }
        Ok(())
    }

    /// Velocity normal to the sweep direction.
    #[inline(always)]
    pub fn normal_velocity(&self, axis: Axis) -> T {
        match axis {
            Axis::X => self.u,
            Axis::Y => self.v,
        }
    }

    /// Velocity tangential to the sweep direction.
    #[inline(always)]
    pub fn transverse_velocity(&self, axis: Axis) -> T {
        match axis {
            Axis::X => self.v,
            Axis::Y => self.u,
        }
    }
}

/// `(u*u + v*v)`; the two squares are rounded before the single
/// commutative addition, so swapping `u` and `v` cannot change the result.
#[inline(always)]
pub fn velocity_squared<T: Real>(u: T, v: T) -> T {
    u * u + v * v
}

/// `1/2 * rho * (u*u + v*v)`.
#[inline(always)]
pub fn kinetic_energy<T: Real>(rho: T, u: T, v: T) -> T {
    T::lit(0.5) * rho * velocity_squared(u, v)
}

/// Inverts the EOS: `p = (gamma-1) (E - 1/2 rho (u^2+v^2))`.
#[inline]
pub fn primitive_from_conserved<T: Real>(
    state: &ConservedState<T>,
    gas: &GasModel<T>,
) -> Result<PrimitiveState<T>> {
    if !(state.rho > T::zero()) {
        return Err(Error::NonPositiveDensity {
            rho: state.rho.to_f64_lossless(),
        });
    }
    let u = state.mx / state.rho;
    let v = state.my / state.rho;
    let p = (gas.gamma - T::one()) * (state.energy - kinetic_energy(state.rho, u, v));
    if !(p > T::zero()) {
        return Err(Error::NonPositivePressure {
            p: p.to_f64_lossless(),
        });
    }
    Ok(PrimitiveState { rho: state.rho, u, v, p })
}

/// `E = p/(gamma-1) + 1/2 rho (u^2+v^2)`.
#[inline]
pub fn conserved_from_primitive<T: Real>(
    q: &PrimitiveState<T>,
    gas: &GasModel<T>,
) -> Result<ConservedState<T>> {
    q.validate()?;
    Ok(ConservedState {
        rho: q.rho,
        mx: q.rho * q.u,
        my: q.rho * q.v,
        energy: q.p / (gas.gamma - T::one()) + kinetic_energy(q.rho, q.u, q.v),
    })
}

/// `c = sqrt(gamma p / rho)`.
#[inline]
pub fn sound_speed<T: Real>(q: &PrimitiveState<T>, gas: &GasModel<T>) -> Result<T> {
    q.validate()?;
    Ok(sound_speed_unchecked(q, gas))
}

#[inline(always)]
pub(crate) fn sound_speed_unchecked<T: Real>(q: &PrimitiveState<T>, gas: &GasModel<T>) -> T {
    (gas.gamma * q.p / q.rho).sqrt()
}

/// Specific total enthalpy `H = (E + p) / rho`.
#[inline(always)]
pub fn enthalpy<T: Real>(q: &PrimitiveState<T>, u: &ConservedState<T>) -> T {
    (u.energy + q.p) / q.rho
}

/// Physical flux `F(U)` (axis X) or `G(U)` (axis Y).
///
/// Every component is built from the normal velocity `vn` and the
/// transverse velocity `vt` with one expression shape, so the
/// transverse-momentum flux is `(rho vt) vn` in both directions:
/// `F3 = (rho v) u` and `G2 = (rho u) v`.
#[inline]
pub fn physical_flux<T: Real>(
    q: &PrimitiveState<T>,
    u: &ConservedState<T>,
    axis: Axis,
) -> ConservedState<T> {
    let vn = q.normal_velocity(axis);
    let vt = q.transverse_velocity(axis);
    let mass = q.rho * vn;
    let normal = q.rho * vn * vn + q.p;
    let transverse = q.rho * vt * vn;
    let energy = (u.energy + q.p) * vn;
    assemble(axis, mass, normal, transverse, energy)
}

/// Physical flux in the textbook lab-frame form where the transverse
/// momentum flux is `(rho u) v` for both `F3` and `G2`.
#[inline]
pub fn physical_flux_original<T: Real>(
    q: &PrimitiveState<T>,
    u: &ConservedState<T>,
    axis: Axis,
) -> ConservedState<T> {
    match axis {
        Axis::X => ConservedState::new(
            q.rho * q.u,
            q.rho * q.u * q.u + q.p,
            q.rho * q.u * q.v,
            (u.energy + q.p) * q.u,
        ),
        Axis::Y => ConservedState::new(
            q.rho * q.v,
            q.rho * q.u * q.v,
            q.rho * q.v * q.v + q.p,
            (u.energy + q.p) * q.v,
        ),
    }
}

/// Places (mass, normal, transverse, energy) into lab-frame slots.
#[inline(always)]
pub(crate) fn assemble<T: Real>(axis: Axis, mass: T, normal: T, transverse: T, energy: T) -> ConservedState<T> {
    match axis {
        Axis::X => ConservedState::new(mass, normal, transverse, energy),
        Axis::Y => ConservedState::new(mass, transverse, normal, energy),
    }
}

impl<T: Real> Add for ConservedState<T> {
    type Output = Self;
    #[inline(always)]
    fn add(self, o: Self) -> Self {
        Self::new(self.rho + o.rho, self.mx + o.mx, self.my + o.my, self.energy + o.energy)
    }
}

impl<T: Real> Sub for ConservedState<T> {
    type Output = Self;
    #[inline(always)]
    fn sub(self, o: Self) -> Self {
        Self::new(self.rho - o.rho, self.mx - o.mx, self.my - o.my, self.energy - o.energy)
    }
}

impl<T: Real> Mul<T> for ConservedState<T> {
    type Output = Self;
    #[inline(always)]
    fn mul(self, s: T) -> Self {
        Self::new(self.rho * s, self.mx * s, self.my * s, self.energy * s)
    }
}

impl<T: Real> Neg for ConservedState<T> {
    type Output = Self;
    #[inline(always)]
    fn neg(self) -> Self {
        Self::new(-self.rho, -self.mx, -self.my, -self.energy)
    }
}
