//! Initial conditions of the test problems.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grid::{Boundaries, BoundaryKind, Grid2D};
use crate::scalar::Real;
use crate::solver::RunConfig;
use crate::state::{conserved_from_primitive, sound_speed, ConservedState, GasModel, PrimitiveState, Variant};

/// Offset of the quadrant boundaries in both Riemann configurations.
pub const RIEMANN_EPSILON: f64 = 1e-15;
/// Offset of the diamond edge in the implosion problem.
pub const IMPLOSION_EPSILON: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BenchmarkName {
    Riemann3,
    Riemann12,
    Rti,
    Implosion,
    SmoothWave,
}

impl BenchmarkName {
    pub const ALL: [BenchmarkName; 5] = [
        BenchmarkName::Riemann3,
        BenchmarkName::Riemann12,
        BenchmarkName::Rti,
        BenchmarkName::Implosion,
        BenchmarkName::SmoothWave,
    ];

    /// Stable command-line identifier.
    pub fn id(self) -> &'static str {
        match self {
            BenchmarkName::Riemann3 => "riemann3",
            BenchmarkName::Riemann12 => "riemann12",
            BenchmarkName::Rti => "rti",
            BenchmarkName::Implosion => "implosion",
            BenchmarkName::SmoothWave => "smoothwave",
        }
    }
}

impl fmt::Display for BenchmarkName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for BenchmarkName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.id() == s)
            .ok_or_else(|| Error::InvalidConfig(format!("unknown benchmark '{s}'")))
    }
}

/// Domain, default resolution, end time, gas and boundaries of one problem.
#[derive(Debug, Clone, PartialEq)]
pub struct BenchmarkSpec<T> {
    pub name: BenchmarkName,
    pub x: (T, T),
    pub y: (T, T),
    pub resolution: (usize, usize),
    pub t_end: T,
    pub gas: GasModel<T>,
    pub bc: Boundaries<T>,
    pub epsilon: T,
    pub gravity: Option<T>,
}

impl<T: Real> BenchmarkSpec<T> {
    pub fn new(name: BenchmarkName) -> Self {
        let l = T::lit;
        let zg = Boundaries::uniform(BoundaryKind::ZeroGradient);
        match name {
            BenchmarkName::Riemann3 | BenchmarkName::Riemann12 => Self {
                name,
                x: (l(-0.5), l(0.5)),
                y: (l(-0.5), l(0.5)),
                resolution: (200, 200),
                t_end: if name == BenchmarkName::Riemann3 { l(0.8) } else { l(0.25) },
                gas: GasModel::air(),
                bc: zg,
                epsilon: l(RIEMANN_EPSILON),
                gravity: None,
            },
            BenchmarkName::Rti => Self {
                name,
                x: (l(0.0), l(0.25)),
                y: (l(0.0), l(1.0)),
                resolution: (64, 256),
                t_end: l(1.95),
                gas: GasModel::monatomic(),
                bc: Boundaries {
                    left: BoundaryKind::Reflective,
                    right: BoundaryKind::Reflective,
                    bottom: BoundaryKind::Fixed(PrimitiveState::new(l(2.0), l(0.0), l(0.0), l(1.0))),
                    top: BoundaryKind::Fixed(PrimitiveState::new(l(1.0), l(0.0), l(0.0), l(2.5))),
                },
                epsilon: l(0.0),
                gravity: Some(l(1.0)),
            },
            BenchmarkName::Implosion => Self {
                name,
                x: (l(-0.3), l(0.3)),
                y: (l(-0.3), l(0.3)),
                resolution: (200, 200),
                t_end: l(2.5),
                gas: GasModel::air(),
                bc: Boundaries::uniform(BoundaryKind::Reflective),
                epsilon: l(IMPLOSION_EPSILON),
                gravity: None,
            },
            BenchmarkName::SmoothWave => Self {
                name,
                x: (l(0.0), l(1.0)),
                y: (l(0.0), l(1.0)),
                resolution: (64, 64),
                t_end: l(1.0),
                gas: GasModel::air(),
                bc: Boundaries::uniform(BoundaryKind::Periodic),
                epsilon: l(0.0),
                gravity: None,
            },
        }
    }

    /// Empty grid over the problem's domain. A smooth-wave grid with
    /// `ny == 1` is the one-dimensional variant and spans `dy = dx`.
    pub fn grid(&self, nx: usize, ny: usize) -> Result<Grid2D<T>> {
        if self.name == BenchmarkName::SmoothWave && ny == 1 && nx > 0 {
            let dx = (self.x.1 - self.x.0) / T::from_usize(nx).unwrap();
            return Grid2D::new(nx, 1, self.x, (self.y.0, self.y.0 + dx), self.bc);
        }
        Grid2D::new(nx, ny, self.x, self.y, self.bc)
    }

    /// Initialised grid; `perturbation` only affects the RTI problem.
    pub fn initial_grid(&self, nx: usize, ny: usize, perturbation: Variant) -> Result<Grid2D<T>> {
        let mut g = self.grid(nx, ny)?;
        match self.name {
            BenchmarkName::Riemann3 => init_riemann(3, &mut g, &self.gas)?,
            BenchmarkName::Riemann12 => init_riemann(12, &mut g, &self.gas)?,
            BenchmarkName::Rti => init_rti(&mut g, &self.gas, perturbation)?,
            BenchmarkName::Implosion => init_implosion(&mut g, &self.gas)?,
            BenchmarkName::SmoothWave => init_smooth_wave(&mut g, &self.gas)?,
        }
        g.apply_boundary(&self.gas)?;
        Ok(g)
    }

    pub fn run_config(&self, variant: Variant) -> RunConfig<T> {
        let mut cfg = RunConfig::new(self.t_end, self.gas, variant);
        cfg.gravity = self.gravity;
        cfg
    }
}

fn fill_primitive<T: Real>(
    grid: &mut Grid2D<T>,
    gas: &GasModel<T>,
    f: impl Fn(T, T) -> Result<PrimitiveState<T>>,
) -> Result<()> {
    let mut cells = Vec::with_capacity(grid.nx * grid.ny);
    for j in 0..grid.ny {
        for i in 0..grid.nx {
            let (x, y) = grid.cell_center(i, j);
            cells.push(conserved_from_primitive(&f(x, y)?, gas)?);
        }
    }
    grid.set_interior(&cells)
}

fn riemann_state<T: Real>(which: u8, x: T, y: T) -> Result<PrimitiveState<T>> {
    let l = T::lit;
    let eps = l(RIEMANN_EPSILON);
    let (s, states) = match which {
        3 => (
            l(0.3),
            [
                (1.5, 0.0, 0.0, 1.5),
                (0.5323, 1.206, 0.0, 0.3),
                (0.138, 1.206, 1.206, 0.029),
                (0.5323, 0.0, 1.206, 0.3),
            ],
        ),
        12 => (
            l(0.0),
            [
                (0.5313, 0.0, 0.0, 0.4),
                (1.0, 0.7276, 0.0, 1.0),
                (0.8, 0.0, 0.0, 1.0),
                (1.0, 0.0, 0.7276, 1.0),
            ],
        ),
        _ => return Err(Error::InvalidConfig(format!("unknown Riemann configuration {which}"))),
    };
    let (lo, hi) = (s - eps, s + eps);
    let k = if x > lo && y > lo {
        0
    } else if x < lo && y > hi {
        1
    } else if x < hi && y < hi {
        2
    } else if x > hi && y < lo {
        3
    } else {
        2
    };
    let (r, u, v, p) = states[k];
    Ok(PrimitiveState::new(l(r), l(u), l(v), l(p)))
}

/// Four-quadrant data of configuration 3 or 12, tested quadrant by
/// quadrant in the order 1, 2, 3, 4.
pub fn init_riemann<T: Real>(which: u8, grid: &mut Grid2D<T>, gas: &GasModel<T>) -> Result<()> {
    riemann_state::<T>(which, T::zero(), T::zero())?;
    fill_primitive(grid, gas, |x, y| riemann_state(which, x, y))
}

/// `cos(8 pi x)`; the symmetric form evaluates the right half of
/// `[0, 0.25]` at the reflected abscissa.
pub fn rti_cosine<T: Real>(x: T, perturbation: Variant) -> T {
    let k = T::lit(8.0) * T::PI();
    match perturbation {
        Variant::Original => (k * x).cos(),
        Variant::Symmetric => {
            if x < T::lit(0.125) {
                (k * x).cos()
            } else {
                (k * (T::lit(0.25) - x)).cos()
            }
        }
    }
}

/// Hydrostatic two-layer column with a cosine velocity perturbation scaled
/// by the local sound speed.
pub fn init_rti<T: Real>(grid: &mut Grid2D<T>, gas: &GasModel<T>, perturbation: Variant) -> Result<()> {
    let l = T::lit;
    fill_primitive(grid, gas, |x, y| {
        let (rho, p) = if y < l(0.5) {
            (l(2.0), l(2.0) * y + l(1.0))
        } else {
            (l(1.0), y + l(1.5))
        };
        let c = sound_speed(&PrimitiveState::new(rho, l(0.0), l(0.0), p), gas)?;
        let v = -l(0.025) * c * rti_cosine(x, perturbation);
        Ok(PrimitiveState::new(rho, l(0.0), v, p))
    })
}

/// Low-pressure diamond `|x + y| < 0.15 + eps`, `|y - x| < 0.15 + eps`.
pub fn init_implosion<T: Real>(grid: &mut Grid2D<T>, gas: &GasModel<T>) -> Result<()> {
    let l = T::lit;
    let r = l(0.15) + l(IMPLOSION_EPSILON);
    fill_primitive(grid, gas, |x, y| {
        Ok(if (y + x).abs() < r && (y - x).abs() < r {
            PrimitiveState::new(l(0.125), l(0.0), l(0.0), l(0.14))
        } else {
            PrimitiveState::new(l(1.0), l(0.0), l(0.0), l(1.0))
        })
    })
}

/// Density wave advected diagonally at unit speed; with `ny == 1` the
/// one-dimensional wave `1 + 0.2 sin(2 pi x)` moving in `x`.
pub fn init_smooth_wave<T: Real>(grid: &mut Grid2D<T>, gas: &GasModel<T>) -> Result<()> {
    let l = T::lit;
    let one_d = grid.ny == 1;
    fill_primitive(grid, gas, |x, y| {
        Ok(if one_d {
            PrimitiveState::new(smooth_wave_density(x), l(1.0), l(0.0), l(1.0))
        } else {
            PrimitiveState::new(smooth_wave_density(x + y), l(1.0), l(1.0), l(1.0))
        })
    })
}

/// `1 + 0.2 sin(2 pi s)`.
pub fn smooth_wave_density<T: Real>(s: T) -> T {
    T::one() + T::lit(0.2) * (T::lit(2.0) * T::PI() * s).sin()
}

/// Conserved state of the 1D smooth wave at `x`.
pub fn smooth_wave_state<T: Real>(x: T, gas: &GasModel<T>) -> Result<ConservedState<T>> {
    conserved_from_primitive(
        &PrimitiveState::new(smooth_wave_density(x), T::one(), T::zero(), T::one()),
        gas,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::primitive_from_conserved;

    fn prim_at(g: &Grid2D<f64>, gas: &GasModel<f64>, i: usize, j: usize) -> PrimitiveState<f64> {
        primitive_from_conserved(&g.get(i, j), gas).unwrap()
    }

    #[test]
    fn names_round_trip() {
        for b in BenchmarkName::ALL {
            assert_eq!(b.id().parse::<BenchmarkName>().unwrap(), b);
        }
        assert!("sod".parse::<BenchmarkName>().is_err());
    }

    #[test]
    fn riemann_quadrants() {
        let q = riemann_state::<f64>(3, 0.4, 0.4).unwrap();
        assert_eq!(q, PrimitiveState::new(1.5, 0.0, 0.0, 1.5));
        let q = riemann_state::<f64>(12, -0.25, 0.25).unwrap();
        assert_eq!(q, PrimitiveState::new(1.0, 0.7276, 0.0, 1.0));
        let q = riemann_state::<f64>(12, 0.25, -0.25).unwrap();
        assert_eq!(q, PrimitiveState::new(1.0, 0.0, 0.7276, 1.0));
        let q = riemann_state::<f64>(3, -0.2, -0.2).unwrap();
        assert_eq!(q, PrimitiveState::new(0.138, 1.206, 1.206, 0.029));
        assert!(riemann_state::<f64>(5, 0.0, 0.0).is_err());
    }

    #[test]
    fn riemann_classification_is_diagonal_symmetric() {
        for which in [3u8, 12] {
            for a in -50..50 {
                for b in -50..50 {
                    let (x, y) = (a as f64 * 0.01 + 1e-15 * (a % 3) as f64, b as f64 * 0.01);
                    let p = riemann_state::<f64>(which, x, y).unwrap();
                    let q = riemann_state::<f64>(which, y, x).unwrap();
                    assert_eq!((p.rho, p.u, p.v, p.p), (q.rho, q.v, q.u, q.p));
                }
            }
        }
    }

    #[test]
    fn rti_profile() {
        let spec = BenchmarkSpec::<f64>::new(BenchmarkName::Rti);
        let gas = spec.gas;
        let l = rti_cosine(0.0, Variant::Symmetric);
        assert_eq!(l, 1.0);
        let g = spec.initial_grid(64, 256, Variant::Symmetric).unwrap();
        let q = prim_at(&g, &gas, 0, 63);
        let y = g.cell_center(0, 63).1;
        assert_eq!(q.rho, 2.0);
        assert!((q.p - (2.0 * y + 1.0)).abs() < 1e-14);
        let c = (5.0 / 3.0 * q.p / 2.0f64).sqrt();
        let x = g.cell_center(0, 63).0;
        assert!((q.v + 0.025 * c * (8.0 * std::f64::consts::PI * x).cos()).abs() < 1e-15);

        // y = 0.25 with the cosine at 1.
        let gas = GasModel::<f64>::monatomic();
        let c = sound_speed(&PrimitiveState::new(2.0, 0.0, 0.0, 1.5), &gas).unwrap();
        assert!((c - (5.0f64 / 3.0 * 1.5 / 2.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn rti_symmetric_perturbation_mirrors_exactly() {
        for n in [64usize, 128] {
            let dx = 0.25 / n as f64;
            for i in 0..n {
                let x = (i as f64 + 0.5) * dx;
                let xm = (((n - 1 - i) as f64) + 0.5) * dx;
                assert_eq!(rti_cosine(x, Variant::Symmetric), rti_cosine(xm, Variant::Symmetric));
            }
        }
    }

    #[test]
    fn rti_original_perturbation_is_asymmetric_somewhere() {
        let found = [64usize, 128, 256, 1024].iter().any(|&n| {
            let dx = 0.25 / n as f64;
            (0..n).any(|i| {
                let x = (i as f64 + 0.5) * dx;
                let xm = (((n - 1 - i) as f64) + 0.5) * dx;
                rti_cosine(x, Variant::Original) != rti_cosine(xm, Variant::Original)
            })
        });
        assert!(found);
    }

    #[test]
    fn implosion_states() {
        let spec = BenchmarkSpec::<f64>::new(BenchmarkName::Implosion);
        let gas = spec.gas;
        let g = spec.initial_grid(200, 200, Variant::Symmetric).unwrap();
        let inner = prim_at(&g, &gas, 100, 100);
        assert_eq!((inner.rho, inner.p), (0.125, 0.14));
        let corner = prim_at(&g, &gas, 196, 196);
        assert_eq!((corner.rho, corner.p), (1.0, 1.0));
        for (a, b) in [(30usize, 120usize), (80, 101), (49, 150), (10, 10)] {
            let n = 199;
            let s = g.get(a, b);
            for (i, j) in [(b, a), (n - a, b), (a, n - b), (n - a, n - b)] {
                assert_eq!(g.get(i, j), s);
            }
        }
    }

    #[test]
    fn smooth_wave_profiles() {
        let spec = BenchmarkSpec::<f64>::new(BenchmarkName::SmoothWave);
        let g = spec.initial_grid(16, 16, Variant::Symmetric).unwrap();
        for j in 0..16 {
            for i in 0..16 {
                assert_eq!(g.get(i, j), g.get(j, i).swap_momenta());
            }
        }
        let g1 = spec.initial_grid(32, 1, Variant::Symmetric).unwrap();
        assert_eq!(g1.dy, g1.dx);
        let q = prim_at(&g1, &spec.gas, 3, 0);
        assert_eq!(q.v, 0.0);
        assert_eq!(q.rho, smooth_wave_density(g1.cell_center(3, 0).0));
    }
}
