//! Dimension-wise finite-volume right-hand side, CFL time step and
//! third-order SSP Runge-Kutta integration.

use rayon::prelude::*;

use crate::characteristics::{CharacteristicQuad, EigenOrdering, FrameInput, InterfaceFrame};
use crate::error::{Error, Result};
use crate::grid::{BoundaryKind, Grid2D, GHOST};
use crate::hllc::hllc_flux;
use crate::reconstruction::{BvdScheme, ReconWindow, SelectionLabel, WINDOW, WINDOW_LEFT};
use crate::scalar::Real;
use crate::state::{primitive_from_conserved, sound_speed, Axis, ConservedState, GasModel, Variant};

/// Everything a run needs apart from the initial grid.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig<T> {
    pub cfl: T,
    pub t_end: T,
    pub gas: GasModel<T>,
    pub variant: Variant,
    /// Constant body acceleration along `y` (signed); adds
    /// `(0, 0, rho g, rho v g)` to the right-hand side.
    pub gravity: Option<T>,
    /// Worker threads for the right-hand side; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Output interval in simulated time; steps are shortened to land on
    /// every multiple of it.
    pub snapshot_every: Option<T>,
    /// Hard cap on the number of steps.
    pub max_steps: Option<usize>,
}

impl<T: Real> RunConfig<T> {
    pub fn new(t_end: T, gas: GasModel<T>, variant: Variant) -> Self {
        Self {
            cfl: T::lit(0.6),
            t_end,
            gas,
            variant,
            gravity: None,
            threads: None,
            snapshot_every: None,
            max_steps: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cfl > T::zero() && self.cfl < T::one()) {
            return Err(Error::InvalidConfig(format!("cfl must lie in (0, 1), got {}", self.cfl)));
        }
        if !(self.t_end >= T::zero()) {
            return Err(Error::InvalidConfig(format!("t_end must be non-negative, got {}", self.t_end)));
        }
        if let Some(s) = self.snapshot_every {
            if !(s > T::zero()) {
                return Err(Error::InvalidConfig("snapshot interval must be positive".into()));
            }
        }
        if self.threads == Some(0) {
            return Err(Error::InvalidConfig("thread count must be positive".into()));
        }
        Ok(())
    }

    pub fn ordering(&self) -> EigenOrdering {
        match self.variant {
            Variant::Original => EigenOrdering::Natural,
            Variant::Symmetric => EigenOrdering::SymmetryPreserving,
        }
    }
}

fn unphysical(i: usize, j: usize, e: Error) -> Error {
    match e {
        Error::UnphysicalState { .. } => e,
        other => Error::UnphysicalState {
            i,
            j,
            step: 0,
            source: Box::new(other),
        },
    }
}

fn with_step(e: Error, step: usize) -> Error {
    match e {
        Error::UnphysicalState { i, j, source, .. } => Error::UnphysicalState { i, j, step, source },
        other => other,
    }
}

/// `dt = cfl · min(dx, dy) / max(max(|u|, |v|) + c)` over interior cells.
pub fn compute_dt<T: Real>(grid: &Grid2D<T>, cfg: &RunConfig<T>) -> Result<T> {
    let mut smax = T::zero();
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let u = grid.get(i, j);
            let q = primitive_from_conserved(&u, &cfg.gas).map_err(|e| unphysical(i, j, e))?;
            let c = sound_speed(&q, &cfg.gas).map_err(|e| unphysical(i, j, e))?;
            smax = smax.max(q.u.abs().max(q.v.abs()) + c);
        }
    }
    Ok(cfg.cfl * grid.dx.min(grid.dy) / smax)
}

/// Selected reconstruction per interior cell and characteristic family,
/// in the natural family order `(u-c, u, u+c, u_perp)`.
///
/// A cell's label is the larger (P4 < Ts < Tl) of the choices made for it
/// in the frames of its two faces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelMaps {
    pub nx: usize,
    pub ny: usize,
    /// Labels from the x sweep, row-major.
    pub x: Vec<[SelectionLabel; 4]>,
    /// Labels from the y sweep, row-major.
    pub y: Vec<[SelectionLabel; 4]>,
}

impl LabelMaps {
    pub fn axis(&self, axis: Axis) -> &[[SelectionLabel; 4]] {
        match axis {
            Axis::X => &self.x,
            Axis::Y => &self.y,
        }
    }
}

struct LineKernel<'a, T> {
    gas: &'a GasModel<T>,
    variant: Variant,
    ordering: EigenOrdering,
    scheme: BvdScheme<T>,
    axis: Axis,
}

impl<T: Real> LineKernel<'_, T> {
    /// Fluxes at the `n + 1` faces of a padded line holding `n` interior
    /// cells, optionally with the per-cell labels (natural order).
    /// Errors carry the interior position along the line.
    fn fluxes(
        &self,
        line: &[ConservedState<T>],
        mut labels: Option<&mut [[SelectionLabel; 4]]>,
    ) -> std::result::Result<Vec<ConservedState<T>>, (usize, Error)> {
        let n = line.len() - 2 * GHOST;
        let at = |k: usize| k.saturating_sub(GHOST).min(n - 1);
        let mut inputs = Vec::with_capacity(line.len());
        for (k, u) in line.iter().enumerate() {
            inputs.push(FrameInput::from_conserved(u, self.gas).map_err(|e| (at(k), e))?);
        }
        let waves = self.ordering.waves();
        let mut out = Vec::with_capacity(n + 1);
        for k in GHOST - 1..GHOST + n {
            let frame = InterfaceFrame::build(&inputs[k], &inputs[k + 1], self.axis, self.ordering, self.gas)
                .map_err(|e| (at(k), e))?;
            let base = k - WINDOW_LEFT;
            let mut w = [[T::zero(); WINDOW]; 4];
            for m in 0..WINDOW {
                let q = frame.to_characteristic(&line[base + m]).w;
                for c in 0..4 {
                    w[c][m] = q[c];
                }
            }
            let mut left = [T::zero(); 4];
            let mut right = [T::zero(); 4];
            for c in 0..4 {
                let o = self.scheme.select(&ReconWindow(w[c]));
                left[c] = o.left;
                right[c] = o.right;
                if let Some(lab) = labels.as_deref_mut() {
                    let nat = waves[c].natural_index();
                    if k >= GHOST {
                        let cell = &mut lab[k - GHOST][nat];
                        *cell = (*cell).max(o.labels[0]);
                    }
                    if k + 1 < GHOST + n {
                        let cell = &mut lab[k + 1 - GHOST][nat];
                        *cell = (*cell).max(o.labels[1]);
                    }
                }
            }
            let mut ul = frame.to_conservative(&CharacteristicQuad { w: left });
            let mut ur = frame.to_conservative(&CharacteristicQuad { w: right });
            // Negative density or pressure in either face state: fall back
            // to the cell averages for this face. The test is invariant
            // under every mirror, so the fallback is too.
            if !(is_physical(&ul, self.gas) && is_physical(&ur, self.gas)) {
                ul = line[k];
                ur = line[k + 1];
            }
            out.push(hllc_flux(&ul, &ur, self.axis, self.gas, self.variant).map_err(|e| (at(k), e))?);
        }
        Ok(out)
    }
}

#[inline(always)]
fn is_physical<T: Real>(u: &ConservedState<T>, gas: &GasModel<T>) -> bool {
    primitive_from_conserved(u, gas).is_ok()
}

/// `-(F_{i+1/2} - F_{i-1/2}) / h` for each interior cell of the line.
fn flux_difference<T: Real>(f: &[ConservedState<T>], h: T) -> Vec<ConservedState<T>> {
    f.windows(2)
        .map(|p| {
            let d = p[1] - p[0];
            ConservedState::new(-d.rho / h, -d.mx / h, -d.my / h, -d.energy / h)
        })
        .collect()
}

/// A sweep along a line of length one with wrap-around or zero-gradient
/// ends sees a constant state, so its flux difference vanishes.
fn sweep_is_trivial<T>(n: usize, lo: BoundaryKind<T>, hi: BoundaryKind<T>) -> bool {
    let passive = |b: BoundaryKind<T>| matches!(b, BoundaryKind::Periodic | BoundaryKind::ZeroGradient);
    n == 1 && passive(lo) && passive(hi)
}

/// Semi-discrete right-hand side on the interior (row-major); ghost cells
/// must be up to date.
pub fn compute_rhs<T: Real>(grid: &Grid2D<T>, cfg: &RunConfig<T>) -> Result<Vec<ConservedState<T>>> {
    rhs_impl(grid, cfg, false).map(|(r, _)| r)
}

/// [`compute_rhs`] together with the reconstruction labels of both sweeps.
pub fn compute_rhs_with_labels<T: Real>(
    grid: &Grid2D<T>,
    cfg: &RunConfig<T>,
) -> Result<(Vec<ConservedState<T>>, LabelMaps)> {
    rhs_impl(grid, cfg, true).map(|(r, l)| (r, l.unwrap()))
}

fn rhs_impl<T: Real>(
    grid: &Grid2D<T>,
    cfg: &RunConfig<T>,
    want_labels: bool,
) -> Result<(Vec<ConservedState<T>>, Option<LabelMaps>)> {
    let (nx, ny) = (grid.nx, grid.ny);
    let kernel = |axis| LineKernel {
        gas: &cfg.gas,
        variant: cfg.variant,
        ordering: cfg.ordering(),
        scheme: BvdScheme::new(cfg.variant),
        axis,
    };
    let kx = kernel(Axis::X);
    let ky = kernel(Axis::Y);
    let blank = [SelectionLabel::P4; 4];

    type LineOut<T> = std::result::Result<(Vec<ConservedState<T>>, Vec<[SelectionLabel; 4]>), (usize, Error)>;

    let skip_x = sweep_is_trivial(nx, grid.bc.left, grid.bc.right);
    let rows: Vec<LineOut<T>> = (0..ny)
        .into_par_iter()
        .map(|j| {
            if skip_x {
                return Ok((vec![ConservedState::zero(); nx], vec![blank; nx]));
            }
            let mut lab = vec![blank; if want_labels { nx } else { 0 }];
            let f = kx.fluxes(grid.padded_row(j + GHOST), want_labels.then_some(&mut lab[..]))?;
            Ok((flux_difference(&f, grid.dx), lab))
        })
        .collect();

    let skip_y = sweep_is_trivial(ny, grid.bc.bottom, grid.bc.top);
    let cols: Vec<LineOut<T>> = (0..nx)
        .into_par_iter()
        .map(|i| {
            if skip_y {
                return Ok((vec![ConservedState::zero(); ny], vec![blank; ny]));
            }
            let data = grid.padded();
            let stride = grid.stride();
            let line: Vec<ConservedState<T>> =
                (0..ny + 2 * GHOST).map(|pj| data[pj * stride + i + GHOST]).collect();
            let mut lab = vec![blank; if want_labels { ny } else { 0 }];
            let f = ky.fluxes(&line, want_labels.then_some(&mut lab[..]))?;
            Ok((flux_difference(&f, grid.dy), lab))
        })
        .collect();

    let mut xparts = Vec::with_capacity(ny);
    let mut xlabels = Vec::with_capacity(ny);
    for (j, r) in rows.into_iter().enumerate() {
        let (p, l) = r.map_err(|(i, e)| unphysical(i, j, e))?;
        xparts.push(p);
        xlabels.push(l);
    }
    let mut yparts = Vec::with_capacity(nx);
    let mut ylabels = Vec::with_capacity(nx);
    for (i, c) in cols.into_iter().enumerate() {
        let (p, l) = c.map_err(|(j, e)| unphysical(i, j, e))?;
        yparts.push(p);
        ylabels.push(l);
    }

    let g_y = cfg.gravity;
    let mut rhs = Vec::with_capacity(nx * ny);
    for j in 0..ny {
        for i in 0..nx {
            let mut r = xparts[j][i] + yparts[i][j];
            if let Some(gy) = g_y {
                let u = grid.get(i, j);
                r.my = r.my + u.rho * gy;
                r.energy = r.energy + u.my * gy;
            }
            rhs.push(r);
        }
    }

    let labels = want_labels.then(|| {
        let mut x = Vec::with_capacity(nx * ny);
        let mut y = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                x.push(if skip_x { blank } else { xlabels[j][i] });
                y.push(if skip_y { blank } else { ylabels[i][j] });
            }
        }
        LabelMaps { nx, ny, x, y }
    });
    Ok((rhs, labels))
}

/// One SSP-RK3 step; boundaries are refreshed before every stage.
pub fn ssp_rk3_step<T: Real>(grid: &Grid2D<T>, dt: T, cfg: &RunConfig<T>) -> Result<Grid2D<T>> {
    let c34 = T::lit(0.75);
    let c14 = T::lit(0.25);
    let c13 = T::one() / T::lit(3.0);
    let c23 = T::lit(2.0) / T::lit(3.0);

    let u0 = grid.interior();
    let mut g = grid.clone();
    g.apply_boundary(&cfg.gas)?;
    let l0 = compute_rhs(&g, cfg)?;
    let u1: Vec<_> = u0.iter().zip(&l0).map(|(u, l)| *u + *l * dt).collect();

    g.set_interior(&u1)?;
    g.apply_boundary(&cfg.gas)?;
    let l1 = compute_rhs(&g, cfg)?;
    let u2: Vec<_> = u0
        .iter()
        .zip(u1.iter().zip(&l1))
        .map(|(u, (v, l))| *u * c34 + (*v + *l * dt) * c14)
        .collect();

    g.set_interior(&u2)?;
    g.apply_boundary(&cfg.gas)?;
    let l2 = compute_rhs(&g, cfg)?;
    let u3: Vec<_> = u0
        .iter()
        .zip(u2.iter().zip(&l2))
        .map(|(u, (v, l))| *u * c13 + (*v + *l * dt) * c23)
        .collect();

    g.set_interior(&u3)?;
    g.apply_boundary(&cfg.gas)?;
    Ok(g)
}

/// The same three stages for a scalar ODE `du/dt = l(u)`.
pub fn ssp_rk3_scalar<T: Real>(u: T, dt: T, l: impl Fn(T) -> T) -> T {
    let u1 = u + l(u) * dt;
    let u2 = u * T::lit(0.75) + (u1 + l(u1) * dt) * T::lit(0.25);
    u * (T::one() / T::lit(3.0)) + (u2 + l(u2) * dt) * (T::lit(2.0) / T::lit(3.0))
}

/// Totals recorded after every step.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConservationRecord<T> {
    pub step: usize,
    pub t: T,
    pub dt: T,
    pub totals: [T; 4],
}

/// State handed to the observer after the initial setup and every step.
pub struct StepEvent<'a, T> {
    pub step: usize,
    pub t: T,
    pub dt: T,
    pub grid: &'a Grid2D<T>,
    /// True when `t` is a multiple of the snapshot interval, and at the end.
    pub output: bool,
    pub finished: bool,
}

#[derive(Debug, Clone)]
pub struct RunOutput<T> {
    pub grid: Grid2D<T>,
    pub t: T,
    pub steps: usize,
    pub history: Vec<ConservationRecord<T>>,
}

/// Advances to `t_end`, shortening steps to land exactly on snapshot times
/// and on `t_end`.
pub fn run<T: Real>(
    grid: Grid2D<T>,
    cfg: &RunConfig<T>,
    observer: &mut (dyn FnMut(&StepEvent<'_, T>) -> Result<()> + Send),
) -> Result<RunOutput<T>> {
    cfg.validate()?;
    match cfg.threads {
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidConfig(e.to_string()))?;
            pool.install(|| run_loop(grid, cfg, observer))
        }
        None => run_loop(grid, cfg, observer),
    }
}

fn run_loop<T: Real>(
    mut grid: Grid2D<T>,
    cfg: &RunConfig<T>,
    observer: &mut (dyn FnMut(&StepEvent<'_, T>) -> Result<()> + Send),
) -> Result<RunOutput<T>> {
    grid.apply_boundary(&cfg.gas)?;
    compute_dt(&grid, cfg)?;
    let mut t = T::zero();
    let mut step = 0usize;
    let mut history = vec![ConservationRecord {
        step,
        t,
        dt: T::zero(),
        totals: grid.totals(),
    }];
    let done = |t: T, step: usize| t >= cfg.t_end || cfg.max_steps.is_some_and(|m| step >= m);
    observer(&StepEvent {
        step,
        t,
        dt: T::zero(),
        grid: &grid,
        output: true,
        finished: done(t, step),
    })?;
    let mut next_snap = 1usize;
    while !done(t, step) {
        let mut stop = cfg.t_end;
        let mut snap_stop = false;
        if let Some(every) = cfg.snapshot_every {
            let ts = T::from_usize(next_snap).unwrap() * every;
            if ts < stop {
                stop = ts;
                snap_stop = true;
            }
        }
        let mut dt = compute_dt(&grid, cfg).map_err(|e| with_step(e, step))?;
        let landed = t + dt >= stop;
        if landed {
            dt = stop - t;
        }
        grid = ssp_rk3_step(&grid, dt, cfg).map_err(|e| with_step(e, step))?;
        step += 1;
        t = if landed { stop } else { t + dt };
        if landed && snap_stop {
            next_snap += 1;
        }
        history.push(ConservationRecord {
            step,
            t,
            dt,
            totals: grid.totals(),
        });
        let finished = done(t, step);
        observer(&StepEvent {
            step,
            t,
            dt,
            grid: &grid,
            output: (landed && snap_stop) || finished,
            finished,
        })?;
    }
    compute_dt(&grid, cfg).map_err(|e| with_step(e, step))?;
    Ok(RunOutput { grid, t, steps: step, history })
}
