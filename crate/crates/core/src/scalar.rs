//! Scalar abstraction shared by every numerical kernel.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating point type the solver is generic over (`f32` or `f64`).
///
/// All kernels evaluate their expressions in a fixed, written-out order.
/// Nothing here ever uses fused multiply-add, so the rounding of every
/// operation is the plain IEEE-754 rounding of the chosen type.
pub trait Real:
    Float + FloatConst + FromPrimitive + Debug + Display + Default + Send + Sync + 'static
{
    /// Converts an `f64` literal to `Self` (rounding to nearest for `f32`).
    fn lit(x: f64) -> Self;

    /// Widens to `f64` for reporting and serialization.
    fn to_f64_lossless(self) -> f64;
}

impl Real for f64 {
    #[inline(always)]
    fn lit(x: f64) -> Self {
        x
    }

    #[inline(always)]
    fn to_f64_lossless(self) -> f64 {
        self
    }
}

impl Real for f32 {
    #[inline(always)]
    fn lit(x: f64) -> Self {
        x as f32
    }

    #[inline(always)]
    fn to_f64_lossless(self) -> f64 {
        self as f64
    }
}

/// Sign function with `sgn(0) = 0` (and `sgn(-0) = 0`).
#[inline(always)]
pub fn sgn<T: Real>(x: T) -> T {
    if x > T::zero() {
        T::one()
    } else if x < T::zero() {
        -T::one()
    } else {
        T::zero()
    }
}

/// `tanh` evaluated on `|x|` with the sign re-applied, so that
/// `odd_tanh(-x) == -odd_tanh(x)` holds bit for bit regardless of the
/// platform math library.
#[inline(always)]
pub fn odd_tanh<T: Real>(x: T) -> T {
    if x < T::zero() {
        -(-x).tanh()
    } else {
        x.tanh()
    }
}

/// Formats an `f64` as a C99-style hexadecimal float (`0x1.8p+1`).
///
/// The mantissa is printed in full (13 hex digits, trailing zeros trimmed)
/// so the text is an exact image of the bits.
pub fn hex_float(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    let bits = x.to_bits();
    let sign = if bits >> 63 == 1 { "-" } else { "" };
    let exp_bits = ((bits >> 52) & 0x7ff) as i64;
    let mantissa = bits & 0x000f_ffff_ffff_ffff;
    if exp_bits == 0 && mantissa == 0 {
        return format!("{sign}0x0p+0");
    }
    let (lead, exp) = if exp_bits == 0 {
        (0, -1022)
    } else {
        (1, exp_bits - 1023)
    };
    let mut digits = format!("{mantissa:013x}");
    while digits.ends_with('0') {
        digits.pop();
    }
    if digits.is_empty() {
        format!("{sign}0x{lead}p{exp:+}")
    } else {
        format!("{sign}0x{lead}.{digits}p{exp:+}")
    }
}
