//! HLLC approximate Riemann solver with PVRS wave-speed estimates.

use crate::error::{Error, Result};
use crate::scalar::{sgn, Real};
use crate::state::{
    assemble, physical_flux, physical_flux_original, primitive_from_conserved,
    sound_speed_unchecked, Axis, ConservedState, GasModel, PrimitiveState, Variant,
};

/// Wave-fan estimate of one Riemann problem.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WaveSpeeds<T> {
    pub s_l: T,
    pub s_r: T,
    pub s_star: T,
    pub p_star: T,
}

#[inline(always)]
fn pressure_factor<T: Real>(p_star: T, p: T, gas: &GasModel<T>) -> T {
    let one = T::one();
    if p_star <= p {
        one
    } else {
        let g = gas.gamma;
        (one + (g + one) / (T::lit(2.0) * g) * (p_star / p - one)).sqrt()
    }
}

fn check<T: Real>(q: &PrimitiveState<T>) -> Result<()> {
    if !(q.rho > T::zero()) {
        return Err(Error::NonPositiveDensity {
            rho: q.rho.to_f64_lossless(),
        });
    }
    if !(q.p > T::zero()) {
        return Err(Error::NonPositivePressure {
            p: q.p.to_f64_lossless(),
        });
    }
    Ok(())
}

/// Outer speeds from the PVRS pressure and the contact speed.
///
/// `Symmetric` groups the two momentum terms of the contact-speed numerator
/// so that swapping and reflecting the two states negates `s_star` exactly.
pub fn estimate_waves<T: Real>(
    ql: &PrimitiveState<T>,
    qr: &PrimitiveState<T>,
    axis: Axis,
    gas: &GasModel<T>,
    variant: Variant,
) -> Result<WaveSpeeds<T>> {
    check(ql)?;
    check(qr)?;
    let half = T::lit(0.5);
    let ul = ql.normal_velocity(axis);
    let ur = qr.normal_velocity(axis);
    let cl = sound_speed_unchecked(ql, gas);
    let cr = sound_speed_unchecked(qr, gas);
    let rho_bar = half * (ql.rho + qr.rho);
    let c_bar = half * (cl + cr);
    let p_pvrs = half * (ql.p + qr.p) - half * (ur - ul) * rho_bar * c_bar;
    let p_star = p_pvrs.max(T::zero());
    let s_l = ul - cl * pressure_factor(p_star, ql.p, gas);
    let s_r = ur + cr * pressure_factor(p_star, qr.p, gas);

    let ml = ql.rho * ul * (s_l - ul);
    let mr = qr.rho * ur * (s_r - ur);
    let num = match variant {
        Variant::Symmetric => (qr.p - ql.p) + (ml - mr),
        Variant::Original => qr.p - ql.p + ml - mr,
    };
    let den = ql.rho * (s_l - ul) - qr.rho * (s_r - ur);
    Ok(WaveSpeeds {
        s_l,
        s_r,
        s_star: num / den,
        p_star,
    })
}

/// Star-region state on side `K` of the contact.
pub fn intermediate_state<T: Real>(
    q: &PrimitiveState<T>,
    u: &ConservedState<T>,
    s_k: T,
    s_star: T,
    axis: Axis,
) -> Result<ConservedState<T>> {
    if s_k == s_star {
        return Err(Error::DegenerateWaveFan {
            speed: s_k.to_f64_lossless(),
        });
    }
    let vn = q.normal_velocity(axis);
    let vt = q.transverse_velocity(axis);
    let factor = (s_k - vn) / (s_k - s_star);
    let mass = factor * q.rho;
    let normal = factor * (q.rho * s_star);
    let transverse = factor * (q.rho * vt);
    let energy = factor * (u.energy + (s_star - vn) * (q.rho * s_star + q.p / (s_k - vn)));
    Ok(assemble(axis, mass, normal, transverse, energy))
}

/// HLLC flux between the conserved states `ul` and `ur` across a face
/// normal to `axis`.
///
/// `Symmetric` blends the two star fluxes with `(1 ± sgn s*)/2`, which
/// averages them when `s* = 0`, and builds every flux component from the
/// normal and transverse velocities with one expression shape.
/// `Original` takes `F*L` at `s* = 0` and uses the lab-frame flux.
pub fn hllc_flux<T: Real>(
    ul: &ConservedState<T>,
    ur: &ConservedState<T>,
    axis: Axis,
    gas: &GasModel<T>,
    variant: Variant,
) -> Result<ConservedState<T>> {
    let ql = primitive_from_conserved(ul, gas)?;
    let qr = primitive_from_conserved(ur, gas)?;
    hllc_flux_primitive(&ql, ul, &qr, ur, axis, gas, variant)
}

/// [`hllc_flux`] for callers that already hold both representations.
#[inline]
pub fn hllc_flux_primitive<T: Real>(
    ql: &PrimitiveState<T>,
    ul: &ConservedState<T>,
    qr: &PrimitiveState<T>,
    ur: &ConservedState<T>,
    axis: Axis,
    gas: &GasModel<T>,
    variant: Variant,
) -> Result<ConservedState<T>> {
    let w = estimate_waves(ql, qr, axis, gas, variant)?;
    match variant {
        Variant::Symmetric => {
            let fl = physical_flux(ql, ul, axis);
            let fr = physical_flux(qr, ur, axis);
            let one = T::one();
            let half = T::lit(0.5);
            let sg = sgn(w.s_star);
            let s_minus = w.s_l.min(T::zero());
            let s_plus = w.s_r.max(T::zero());
            let left = if sg >= T::zero() {
                let star = if s_minus == T::zero() {
                    fl
                } else {
                    fl + (intermediate_state(ql, ul, w.s_l, w.s_star, axis)? - *ul) * s_minus
                };
                Some(star * ((one + sg) * half))
            } else {
                None
            };
            let right = if sg <= T::zero() {
                let star = if s_plus == T::zero() {
                    fr
                } else {
                    fr + (intermediate_state(qr, ur, w.s_r, w.s_star, axis)? - *ur) * s_plus
                };
                Some(star * ((one - sg) * half))
            } else {
                None
            };
            Ok(match (left, right) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (None, None) => unreachable!(),
            })
        }
        Variant::Original => {
            if T::zero() <= w.s_l {
                Ok(physical_flux_original(ql, ul, axis))
            } else if T::zero() <= w.s_star {
                let f = physical_flux_original(ql, ul, axis);
                Ok(f + (intermediate_state(ql, ul, w.s_l, w.s_star, axis)? - *ul) * w.s_l)
            } else if T::zero() <= w.s_r {
                let f = physical_flux_original(qr, ur, axis);
                Ok(f + (intermediate_state(qr, ur, w.s_r, w.s_star, axis)? - *ur) * w.s_r)
            } else {
                Ok(physical_flux_original(qr, ur, axis))
            }
        }
    }
}
