//! Grid-refinement study on the periodic 1D smooth wave.
//!
//! The wave `1 + 0.2 sin(2 pi x)` is advected at unit speed for one period,
//! so the exact cell values at `t = 1` are the initial ones. To keep the
//! third-order time error below the fifth-order spatial error the CFL step
//! is scaled by `(dx / dx_ref)^(2/3)`.

use crate::benchmarks::{BenchmarkName, BenchmarkSpec};
use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::solver::{compute_dt, ssp_rk3_step, RunConfig};
use crate::state::Variant;

pub const DEFAULT_GRIDS: [usize; 4] = [32, 64, 128, 256];
pub const DX_REF: f64 = 1.0 / 32.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRow {
    pub n: usize,
    pub l1_error: f64,
    /// `log2(E_coarser / E_this)`; absent on the first grid.
    pub order: Option<f64>,
}

/// L1 density error of the smooth wave on `n` cells after one period.
pub fn smooth_wave_error<T: Real>(n: usize, cfl: T, variant: Variant) -> Result<T> {
    if n == 0 {
        return Err(Error::InvalidConfig("grid size must be positive".into()));
    }
    let spec = BenchmarkSpec::<T>::new(BenchmarkName::SmoothWave);
    let initial = spec.initial_grid(n, 1, Variant::Symmetric)?;
    let mut cfg: RunConfig<T> = spec.run_config(variant);
    cfg.cfl = cfl;
    cfg.validate()?;

    let scale = (initial.dx / T::lit(DX_REF)).powf(T::lit(2.0 / 3.0));
    let mut g = initial.clone();
    let mut t = T::zero();
    while t < cfg.t_end {
        let mut dt = compute_dt(&g, &cfg)? * scale;
        let last = t + dt >= cfg.t_end;
        if last {
            dt = cfg.t_end - t;
        }
        g = ssp_rk3_step(&g, dt, &cfg)?;
        t = if last { cfg.t_end } else { t + dt };
    }

    let mut err = T::zero();
    for i in 0..n {
        err = err + (g.get(i, 0).rho - initial.get(i, 0).rho).abs();
    }
    Ok(err * g.dx)
}

/// Errors and observed orders over a list of grids, in the given order.
pub fn convergence_study(grids: &[usize], cfl: f64, variant: Variant) -> Result<Vec<ConvergenceRow>> {
    if grids.is_empty() {
        return Err(Error::InvalidConfig("no grids given".into()));
    }
    let mut rows: Vec<ConvergenceRow> = Vec::with_capacity(grids.len());
    for &n in grids {
        let e = smooth_wave_error::<f64>(n, cfl, variant)?;
        let order = rows.last().map(|prev| (prev.l1_error / e).log2());
        rows.push(ConvergenceRow { n, l1_error: e, order });
    }
    Ok(rows)
}
