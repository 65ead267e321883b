//! Candidate reconstructions (fourth-degree polynomial and two THINC
//! functions) and the two-stage boundary-variation-diminishing selector.
//!
//! Boundary values are returned as `(plus, minus)`: `plus` is the value of
//! cell `i`'s reconstruction at its right face `x_{i+1/2}` (the left-side
//! state of that face) and `minus` is its value at the left face
//! `x_{i-1/2}` (the right-side state of that face).

use crate::error::{Error, Result};
use crate::scalar::{odd_tanh, sgn, Real};
use crate::state::Variant;

/// Steepness of the smoother THINC candidate.
pub const BETA_SMALL: f64 = 1.1;
/// Steepness of the sharper THINC candidate.
pub const BETA_LARGE: f64 = 1.6;
/// Regularisation constant of the original THINC jump parameter.
pub const THINC_EPSILON: f64 = 1e-20;
/// Monotonicity threshold of the symmetric THINC function.
pub const THINC_MONOTONE_THRESHOLD: f64 = 1e-20;

/// Cells needed to pin down both sides of one interface:
/// `i-5 ..= i+6` around the interface `x_{i+1/2}`.
pub const WINDOW: usize = 12;
/// Window index of the cell left of the target interface.
pub const WINDOW_LEFT: usize = 5;

/// Five cell averages `q_{i-2} ..= q_{i+2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Stencil5<T>(pub [T; 5]);

/// Reconstruction function picked for one cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
#[repr(u8)]
pub enum SelectionLabel {
    #[default]
    P4 = 0,
    Ts = 1,
    Tl = 2,
}

impl SelectionLabel {
    pub fn code(self) -> u8 {
        self as u8
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(Self::P4),
            1 => Some(Self::Ts),
            2 => Some(Self::Tl),
            _ => None,
        }
    }
}

/// Boundary values of one cell for all three candidates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CandidateValues<T> {
    pub p4: (T, T),
    pub ts: (T, T),
    pub tl: (T, T),
}

/// `(plus, minus)` of the fourth-degree polynomial.
///
/// `Original` sums both faces in ascending cell order. `Symmetric`
/// evaluates the left face with the stencil reversed, so that flipping the
/// stencil maps one face onto the other term by term.
#[inline(always)]
pub fn p4_boundary_values<T: Real>(s: &Stencil5<T>, variant: Variant) -> (T, T) {
    let [a, b, c, d, e] = s.0;
    let c2 = T::lit(2.0);
    let c3 = T::lit(3.0);
    let c13 = T::lit(13.0);
    let c27 = T::lit(27.0);
    let c47 = T::lit(47.0);
    let c60 = T::lit(60.0);
    let plus = (c2 * a - c13 * b + c47 * c + c27 * d - c3 * e) / c60;
    let minus = match variant {
        Variant::Symmetric => (c2 * e - c13 * d + c47 * c + c27 * b - c3 * a) / c60,
        Variant::Original => (-(c3 * a) + c27 * b + c47 * c - c13 * d + c2 * e) / c60,
    };
    (plus, minus)
}

/// Precomputed constants of one THINC candidate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thinc<T> {
    pub beta: T,
    tanh_half_beta: T,
    tanh_beta: T,
    cosh_beta: T,
}

impl<T: Real> Thinc<T> {
    pub fn new(beta: T) -> Self {
        Self {
            beta,
            tanh_half_beta: (beta * T::lit(0.5)).tanh(),
            tanh_beta: beta.tanh(),
            cosh_beta: beta.cosh(),
        }
    }

    /// Original formulation: baseline `min(q_{i-1}, q_{i+1})`, jump
    /// parameter regularised by `epsilon`.
    #[inline]
    pub fn original(&self, qm: T, qc: T, qp: T) -> (T, T) {
        if !((qc - qm) * (qp - qc) > T::zero()) {
            return (qc, qc);
        }
        let eps = T::lit(THINC_EPSILON);
        let one = T::one();
        let half = T::lit(0.5);
        let qmin = qm.min(qp);
        let dq = (qp - qm).abs();
        let theta = sgn(qp - qm);
        let alpha = theta * (T::lit(2.0) * (qc - qmin + eps) / (dq + eps) - one);
        let a = ((alpha * self.beta).exp() / self.cosh_beta - one) / self.tanh_beta;
        let half_dq = dq * half;
        let plus = qmin + half_dq * (one + theta * (self.tanh_beta + a) / (one + a * self.tanh_beta));
        let minus = qmin + half_dq * (one + theta * a);
        (plus, minus)
    }

    /// Mirror-safe formulation centred on the cell with baseline
    /// `(q_{i-1} + q_{i+1}) / 2`; boundary values come straight from the
    /// closed form (no logarithm of the jump location is ever taken).
    #[inline]
    pub fn symmetric(&self, qm: T, qc: T, qp: T) -> (T, T) {
        if !((qc - qm) * (qp - qc) > T::lit(THINC_MONOTONE_THRESHOLD)) {
            return (qc, qc);
        }
        let one = T::one();
        let half = T::lit(0.5);
        let qa = (qp + qm) * half;
        let qd = (qp - qm) * half;
        let alpha = (qc - qa) / qd;
        let t1 = self.tanh_half_beta;
        let t2 = odd_tanh(alpha * self.beta * half);
        let ratio = t2 / t1;
        let plus = qa + qd * ((t1 + ratio) / (one + t2));
        let minus = qa - qd * ((t1 - ratio) / (one - t2));
        (plus, minus)
    }

    #[inline(always)]
    pub fn eval(&self, qm: T, qc: T, qp: T, variant: Variant) -> (T, T) {
        match variant {
            Variant::Original => self.original(qm, qc, qp),
            Variant::Symmetric => self.symmetric(qm, qc, qp),
        }
    }
}

/// THINC boundary values, original formulation.
pub fn thinc_boundary_values_original<T: Real>(qm: T, qc: T, qp: T, beta: T) -> (T, T) {
    Thinc::new(beta).original(qm, qc, qp)
}

/// THINC boundary values, symmetric formulation.
pub fn thinc_boundary_values_symmetric<T: Real>(qm: T, qc: T, qp: T, beta: T) -> (T, T) {
    Thinc::new(beta).symmetric(qm, qc, qp)
}

/// Total boundary variation of a cell from the `(left state, right state)`
/// pairs at its two faces.
#[inline(always)]
pub fn tbv<T: Real>(left_face: (T, T), right_face: (T, T)) -> T {
    (left_face.0 - left_face.1).abs() + (right_face.0 - right_face.1).abs()
}

/// Mirror test applied by [`sf_si_check`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MirrorCheck {
    /// Stencil flipping: `Q(s)` at `x_{i+1/2}` equals `Q(rev s)` at
    /// `x_{i-1/2}` and vice versa.
    StencilFlip,
    /// Sign inversion: `Q(s) = -Q(-s)` at both faces.
    SignInversion,
}

/// Checks a `(plus, minus)` reconstruction for exact stencil-flip or
/// sign-inversion symmetry on one stencil.
pub fn sf_si_check<T, F>(reconstruct: F, s: &[T], mode: MirrorCheck) -> bool
where
    T: Real,
    F: Fn(&[T]) -> (T, T),
{
    let (plus, minus) = reconstruct(s);
    match mode {
        MirrorCheck::StencilFlip => {
            let flipped: Vec<T> = s.iter().rev().copied().collect();
            let (fp, fm) = reconstruct(&flipped);
            plus == fm && minus == fp
        }
        MirrorCheck::SignInversion => {
            let inverted: Vec<T> = s.iter().map(|&q| -q).collect();
            let (ip, im) = reconstruct(&inverted);
            plus == -ip && minus == -im
        }
    }
}

/// Cell averages of one characteristic component around one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReconWindow<T>(pub [T; WINDOW]);

impl<T: Real> ReconWindow<T> {
    pub fn from_slice(q: &[T]) -> Result<Self> {
        if q.len() != WINDOW {
            return Err(Error::WindowTooSmall {
                expected: WINDOW,
                got: q.len(),
            });
        }
        let mut w = [T::zero(); WINDOW];
        w.copy_from_slice(q);
        Ok(Self(w))
    }
}

/// Result of the selector at one interface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BvdOutcome<T> {
    /// Left-side state of the interface (from the left cell).
    pub left: T,
    /// Right-side state of the interface (from the right cell).
    pub right: T,
    /// Final choice for the left and right cell.
    pub labels: [SelectionLabel; 2],
}

/// P4 / THINC(small beta) / THINC(large beta) with the two-stage selection.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BvdScheme<T> {
    pub variant: Variant,
    pub small: Thinc<T>,
    pub large: Thinc<T>,
}

impl<T: Real> BvdScheme<T> {
    pub fn new(variant: Variant) -> Self {
        Self {
            variant,
            small: Thinc::new(T::lit(BETA_SMALL)),
            large: Thinc::new(T::lit(BETA_LARGE)),
        }
    }

    /// All three candidates for the centre cell of a 5-stencil.
    pub fn candidates(&self, s: &Stencil5<T>) -> CandidateValues<T> {
        let [_, qm, qc, qp, _] = s.0;
        CandidateValues {
            p4: p4_boundary_values(s, self.variant),
            ts: self.small.eval(qm, qc, qp, self.variant),
            tl: self.large.eval(qm, qc, qp, self.variant),
        }
    }

    /// Two-stage selection for the interface between window cells 5 and 6.
    ///
    /// Stage 1 runs the P4-vs-THINC(small) test on every cell whose total
    /// boundary variation is determined by the window; a successful test on
    /// cell `k` switches cells `k-1, k, k+1`. Stage 2 then tests the stage-1
    /// function against THINC(large) on the two cells adjacent to the
    /// interface. Comparisons are strict, so ties keep the incumbent.
    #[inline]
    pub fn select(&self, w: &ReconWindow<T>) -> BvdOutcome<T> {
        let q = &w.0;
        let v = self.variant;
        let zero = (T::zero(), T::zero());

        // Candidates on cells 2..=9.
        let mut p4 = [zero; WINDOW];
        let mut ts = [zero; WINDOW];
        for k in 2..=9 {
            p4[k] = p4_boundary_values(&Stencil5([q[k - 2], q[k - 1], q[k], q[k + 1], q[k + 2]]), v);
            ts[k] = self.small.eval(q[k - 1], q[k], q[k + 1], v);
        }

        // Stage 1 tests on cells 3..=8.
        let mut switch = [false; WINDOW];
        for k in 3..=8 {
            let t_p4 = tbv((p4[k - 1].0, p4[k].1), (p4[k].0, p4[k + 1].1));
            let t_ts = tbv((ts[k - 1].0, ts[k].1), (ts[k].0, ts[k + 1].1));
            switch[k] = t_ts < t_p4;
        }

        // Stage-1 function and THINC(large) on cells 4..=7.
        let mut stage1 = [zero; WINDOW];
        let mut stage1_label = [SelectionLabel::P4; WINDOW];
        let mut tl = [zero; WINDOW];
        for k in 4..=7 {
            if switch[k - 1] || switch[k] || switch[k + 1] {
                stage1[k] = ts[k];
                stage1_label[k] = SelectionLabel::Ts;
            } else {
                stage1[k] = p4[k];
            }
            tl[k] = self.large.eval(q[k - 1], q[k], q[k + 1], v);
        }

        // Stage 2 on the two cells adjacent to the interface.
        let mut fin = [zero; 2];
        let mut labels = [SelectionLabel::P4; 2];
        for (slot, k) in [WINDOW_LEFT, WINDOW_LEFT + 1].into_iter().enumerate() {
            let t_i = tbv((stage1[k - 1].0, stage1[k].1), (stage1[k].0, stage1[k + 1].1));
            let t_l = tbv((tl[k - 1].0, tl[k].1), (tl[k].0, tl[k + 1].1));
            if t_l < t_i {
                fin[slot] = tl[k];
                labels[slot] = SelectionLabel::Tl;
            } else {
                fin[slot] = stage1[k];
                labels[slot] = stage1_label[k];
            }
        }

        BvdOutcome {
            left: fin[0].0,
            right: fin[1].1,
            labels,
        }
    }
}

/// Convenience wrapper around [`BvdScheme::select`] for arbitrary slices.
pub fn bvd_select<T: Real>(window: &[T], variant: Variant) -> Result<BvdOutcome<T>> {
    let w = ReconWindow::from_slice(window)?;
    Ok(BvdScheme::new(variant).select(&w))
}
