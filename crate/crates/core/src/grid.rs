//! Uniform Cartesian grid with ghost layers and boundary conditions.

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::state::{conserved_from_primitive, Axis, ConservedState, GasModel, PrimitiveState};

/// Ghost layers on every side. The selector of the first interior face
/// reads six cells past it.
pub const GHOST: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum BoundaryKind<T> {
    /// Copies the nearest interior cell.
    ZeroGradient,
    /// Mirrors interior cells across the wall, negating the wall-normal
    /// momentum.
    Reflective,
    /// Prescribed primitive state in every ghost layer.
    Fixed(PrimitiveState<T>),
    /// Wraps around to the opposite side.
    Periodic,
}

/// One boundary kind per side.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Boundaries<T> {
    pub left: BoundaryKind<T>,
    pub right: BoundaryKind<T>,
    pub bottom: BoundaryKind<T>,
    pub top: BoundaryKind<T>,
}

impl<T> Boundaries<T>
where
    BoundaryKind<T>: Copy,
{
    pub fn uniform(kind: BoundaryKind<T>) -> Self {
        Self {
            left: kind,
            right: kind,
            bottom: kind,
            top: kind,
        }
    }
}

/// Cell averages on `nx × ny` interior cells plus [`GHOST`] layers,
/// stored row-major (x fastest).
#[derive(Debug, Clone, PartialEq)]
pub struct Grid2D<T> {
    pub nx: usize,
    pub ny: usize,
    pub dx: T,
    pub dy: T,
    pub x0: T,
    pub y0: T,
    pub bc: Boundaries<T>,
    data: Vec<ConservedState<T>>,
}

impl<T: Real> Grid2D<T> {
    /// Grid covering `[x0, x1] × [y0, y1]`.
    pub fn new(nx: usize, ny: usize, x: (T, T), y: (T, T), bc: Boundaries<T>) -> Result<Self> {
        if nx == 0 || ny == 0 {
            return Err(Error::InvalidConfig(format!("grid needs at least one cell, got {nx}x{ny}")));
        }
        if !(x.1 > x.0) || !(y.1 > y.0) {
            return Err(Error::InvalidConfig("domain extents must be positive".into()));
        }
        let dx = (x.1 - x.0) / T::from_usize(nx).unwrap();
        let dy = (y.1 - y.0) / T::from_usize(ny).unwrap();
        Ok(Self::with_spacing(nx, ny, dx, dy, x.0, y.0, bc))
    }

    pub fn with_spacing(nx: usize, ny: usize, dx: T, dy: T, x0: T, y0: T, bc: Boundaries<T>) -> Self {
        let len = (nx + 2 * GHOST) * (ny + 2 * GHOST);
        Self {
            nx,
            ny,
            dx,
            dy,
            x0,
            y0,
            bc,
            data: vec![ConservedState::zero(); len],
        }
    }

    /// Padded row length.
    #[inline(always)]
    pub fn stride(&self) -> usize {
        self.nx + 2 * GHOST
    }

    /// Index into the padded storage from padded coordinates.
    #[inline(always)]
    pub fn padded_index(&self, pi: usize, pj: usize) -> usize {
        pj * self.stride() + pi
    }

    #[inline(always)]
    fn at(&self, i: usize, j: usize) -> usize {
        self.padded_index(i + GHOST, j + GHOST)
    }

    /// Interior cell `(i, j)`.
    #[inline(always)]
    pub fn get(&self, i: usize, j: usize) -> ConservedState<T> {
        self.data[self.at(i, j)]
    }

    #[inline(always)]
    pub fn set(&mut self, i: usize, j: usize, u: ConservedState<T>) {
        let k = self.at(i, j);
        self.data[k] = u;
    }

    pub fn padded(&self) -> &[ConservedState<T>] {
        &self.data
    }

    pub fn padded_mut(&mut self) -> &mut [ConservedState<T>] {
        &mut self.data
    }

    /// Padded row `pj` (ghost columns included).
    pub fn padded_row(&self, pj: usize) -> &[ConservedState<T>] {
        let s = self.stride();
        &self.data[pj * s..(pj + 1) * s]
    }

    /// Cell centre `(x0 + (i + 1/2) dx, y0 + (j + 1/2) dy)`.
    #[inline]
    pub fn cell_center(&self, i: usize, j: usize) -> (T, T) {
        let half = T::lit(0.5);
        (
            self.x0 + (T::from_usize(i).unwrap() + half) * self.dx,
            self.y0 + (T::from_usize(j).unwrap() + half) * self.dy,
        )
    }

    /// Interior cells, row-major.
    pub fn interior(&self) -> Vec<ConservedState<T>> {
        let mut out = Vec::with_capacity(self.nx * self.ny);
        for j in 0..self.ny {
            for i in 0..self.nx {
                out.push(self.get(i, j));
            }
        }
        out
    }

    /// Overwrites the interior from a row-major vector.
    pub fn set_interior(&mut self, cells: &[ConservedState<T>]) -> Result<()> {
        if cells.len() != self.nx * self.ny {
            return Err(Error::ShapeMismatch(format!(
                "expected {} cells, got {}",
                self.nx * self.ny,
                cells.len()
            )));
        }
        for j in 0..self.ny {
            for i in 0..self.nx {
                self.set(i, j, cells[j * self.nx + i]);
            }
        }
        Ok(())
    }

    /// Samples `f(x, y)` at every cell centre.
    pub fn fill<F>(&mut self, mut f: F)
    where
        F: FnMut(T, T) -> ConservedState<T>,
    {
        for j in 0..self.ny {
            for i in 0..self.nx {
                let (x, y) = self.cell_center(i, j);
                self.set(i, j, f(x, y));
            }
        }
    }

    /// Interior totals of each conserved component, summed in row-major
    /// order.
    pub fn totals(&self) -> [T; 4] {
        let mut s = [T::zero(); 4];
        for j in 0..self.ny {
            for i in 0..self.nx {
                let u = self.get(i, j).to_array();
                for k in 0..4 {
                    s[k] = s[k] + u[k];
                }
            }
        }
        s
    }

    /// Fills every ghost layer from the interior and the boundary kinds.
    pub fn apply_boundary(&mut self, gas: &GasModel<T>) -> Result<()> {
        let g = GHOST;
        let (nx, ny) = (self.nx, self.ny);
        let fixed = |kind: BoundaryKind<T>| -> Result<Option<ConservedState<T>>> {
            match kind {
                BoundaryKind::Fixed(q) => conserved_from_primitive(&q, gas).map(Some),
                _ => Ok(None),
            }
        };
        let (fl, fr, fb, ft) = (fixed(self.bc.left)?, fixed(self.bc.right)?, fixed(self.bc.bottom)?, fixed(self.bc.top)?);

        for pj in g..g + ny {
            for k in 0..g {
                let dst = self.padded_index(g - 1 - k, pj);
                self.data[dst] = match self.bc.left {
                    BoundaryKind::ZeroGradient => self.data[self.padded_index(g, pj)],
                    BoundaryKind::Reflective => reflect(self.data[self.padded_index(g + fold(k, nx).0, pj)], fold(k, nx).1, Axis::X),
                    BoundaryKind::Periodic => self.data[self.padded_index(g + nx - 1 - k % nx, pj)],
                    BoundaryKind::Fixed(_) => fl.unwrap(),
                };
                let dst = self.padded_index(g + nx + k, pj);
                self.data[dst] = match self.bc.right {
                    BoundaryKind::ZeroGradient => self.data[self.padded_index(g + nx - 1, pj)],
                    BoundaryKind::Reflective => {
                        let (m, flip) = fold(k, nx);
                        reflect(self.data[self.padded_index(g + nx - 1 - m, pj)], flip, Axis::X)
                    }
                    BoundaryKind::Periodic => self.data[self.padded_index(g + k % nx, pj)],
                    BoundaryKind::Fixed(_) => fr.unwrap(),
                };
            }
        }
        for pi in g..g + nx {
            for k in 0..g {
                let dst = self.padded_index(pi, g - 1 - k);
                self.data[dst] = match self.bc.bottom {
                    BoundaryKind::ZeroGradient => self.data[self.padded_index(pi, g)],
                    BoundaryKind::Reflective => reflect(self.data[self.padded_index(pi, g + fold(k, ny).0)], fold(k, ny).1, Axis::Y),
                    BoundaryKind::Periodic => self.data[self.padded_index(pi, g + ny - 1 - k % ny)],
                    BoundaryKind::Fixed(_) => fb.unwrap(),
                };
                let dst = self.padded_index(pi, g + ny + k);
                self.data[dst] = match self.bc.top {
                    BoundaryKind::ZeroGradient => self.data[self.padded_index(pi, g + ny - 1)],
                    BoundaryKind::Reflective => {
                        let (m, flip) = fold(k, ny);
                        reflect(self.data[self.padded_index(pi, g + ny - 1 - m)], flip, Axis::Y)
                    }
                    BoundaryKind::Periodic => self.data[self.padded_index(pi, g + k % ny)],
                    BoundaryKind::Fixed(_) => ft.unwrap(),
                };
            }
        }
        Ok(())
    }
}

/// Interior offset seen by the `k`-th ghost of a reflective wall on a
/// line of `n` cells, and whether the image is mirrored (odd number of
/// reflections). Only lines shorter than the ghost width reflect twice.
fn fold(k: usize, n: usize) -> (usize, bool) {
    let r = k % (2 * n);
    if r < n {
        (r, true)
    } else {
        (2 * n - 1 - r, false)
    }
}

fn reflect<T: Real>(u: ConservedState<T>, mirrored: bool, axis: Axis) -> ConservedState<T> {
    match (mirrored, axis) {
        (false, _) => u,
        (true, Axis::X) => u.mirror_x_momentum(),
        (true, Axis::Y) => u.mirror_y_momentum(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid(bc: Boundaries<f64>) -> Grid2D<f64> {
        let mut g = Grid2D::new(4, 3, (0.0, 1.0), (0.0, 0.75), bc).unwrap();
        g.fill(|x, y| ConservedState::new(1.0 + x, x - 0.3, y + 0.1, 3.0 + y));
        g
    }

    #[test]
    fn geometry() {
        let g = grid(Boundaries::uniform(BoundaryKind::ZeroGradient));
        assert_eq!(g.dx, 0.25);
        assert_eq!(g.dy, 0.25);
        assert_eq!(g.cell_center(0, 0), (0.125, 0.125));
        assert_eq!(g.cell_center(3, 2), (0.875, 0.625));
        assert!(Grid2D::<f64>::new(0, 3, (0.0, 1.0), (0.0, 1.0), Boundaries::uniform(BoundaryKind::Periodic)).is_err());
    }

    #[test]
    fn zero_gradient_copies_edge_cells() {
        let mut g = grid(Boundaries::uniform(BoundaryKind::ZeroGradient));
        g.apply_boundary(&GasModel::air()).unwrap();
        for k in 0..GHOST {
            let pj = GHOST + 1;
            assert_eq!(g.padded()[g.padded_index(k, pj)], g.get(0, 1));
            assert_eq!(g.padded()[g.padded_index(GHOST + 4 + k, pj)], g.get(3, 1));
            assert_eq!(g.padded()[g.padded_index(GHOST + 2, k)], g.get(2, 0));
        }
    }

    #[test]
    fn reflective_negates_normal_momentum() {
        let mut g = grid(Boundaries::uniform(BoundaryKind::Reflective));
        g.apply_boundary(&GasModel::air()).unwrap();
        let pj = GHOST;
        for k in 0..4 {
            let ghost = g.padded()[g.padded_index(GHOST - 1 - k, pj)];
            let inner = g.get(k, 0);
            assert_eq!(ghost, ConservedState::new(inner.rho, -inner.mx, inner.my, inner.energy));
        }
        let ghost = g.padded()[g.padded_index(GHOST, GHOST + 3)];
        let inner = g.get(0, 2);
        assert_eq!(ghost, inner.mirror_y_momentum());
    }

    #[test]
    fn periodic_wraps() {
        let mut g = grid(Boundaries::uniform(BoundaryKind::Periodic));
        g.apply_boundary(&GasModel::air()).unwrap();
        assert_eq!(g.padded()[g.padded_index(GHOST - 1, GHOST)], g.get(3, 0));
        assert_eq!(g.padded()[g.padded_index(GHOST + 4, GHOST)], g.get(0, 0));
        assert_eq!(g.padded()[g.padded_index(GHOST + 1, GHOST - 1)], g.get(1, 2));
    }

    #[test]
    fn fixed_writes_conserved_image() {
        let q = PrimitiveState::new(1.0, 0.0, 0.0, 2.5);
        let mut bc = Boundaries::uniform(BoundaryKind::Reflective);
        bc.top = BoundaryKind::Fixed(q);
        let mut g = grid(bc);
        g.apply_boundary(&GasModel::monatomic()).unwrap();
        for k in 0..GHOST {
            let u = g.padded()[g.padded_index(GHOST + 1, GHOST + 3 + k)];
            assert_eq!((u.rho, u.mx, u.my), (1.0, 0.0, 0.0));
            assert!((u.energy - 3.75).abs() < 1e-15);
        }
    }

    #[test]
    fn totals_sum_interior_only() {
        let mut g = Grid2D::new(2, 2, (0.0, 1.0), (0.0, 1.0), Boundaries::uniform(BoundaryKind::ZeroGradient)).unwrap();
        g.fill(|_, _| ConservedState::new(1.0, 2.0, 3.0, 4.0));
        g.apply_boundary(&GasModel::air()).unwrap();
        assert_eq!(g.totals(), [4.0, 8.0, 12.0, 16.0]);
    }

    #[test]
    fn short_lines_wrap_and_reflect_repeatedly() {
        let gas = GasModel::air();
        let mut p = Grid2D::new(2, 1, (0.0, 1.0), (0.0, 0.5), Boundaries::uniform(BoundaryKind::Periodic)).unwrap();
        p.set(0, 0, ConservedState::new(1.0, 0.5, 0.0, 3.0));
        p.set(1, 0, ConservedState::new(2.0, 0.5, 0.0, 3.0));
        p.apply_boundary(&gas).unwrap();
        let row: Vec<f64> = p.padded_row(GHOST).iter().map(|u| u.rho).collect();
        assert_eq!(row, [1.0, 2.0, 1.0, 2.0, 1.0, 2.0, 1.0, 2.0, 1.0, 2.0, 1.0, 2.0, 1.0, 2.0]);

        let mut r = Grid2D::new(2, 1, (0.0, 1.0), (0.0, 0.5), Boundaries::uniform(BoundaryKind::Reflective)).unwrap();
        r.set(0, 0, ConservedState::new(1.0, 0.5, 0.0, 3.0));
        r.set(1, 0, ConservedState::new(2.0, 0.25, 0.0, 3.0));
        r.apply_boundary(&gas).unwrap();
        let row: Vec<(f64, f64)> = r.padded_row(GHOST).iter().map(|u| (u.rho, u.mx)).collect();
        // innermost ghost first: cell 0 mirrored, cell 1 mirrored, cell 1, cell 0, ...
        let left: Vec<_> = row[..GHOST].iter().rev().copied().collect();
        assert_eq!(left, [(1.0, -0.5), (2.0, -0.25), (2.0, 0.25), (1.0, 0.5), (1.0, -0.5), (2.0, -0.25)]);
        assert_eq!(&row[GHOST + 2..], &[(2.0, -0.25), (1.0, -0.5), (1.0, 0.5), (2.0, 0.25), (2.0, -0.25), (1.0, -0.5)][..]);
    }
}
