//! Binary field and selection-map files.
//!
//! Both formats share a 36-byte little-endian header:
//!
//! | offset | type   | content |
//! |--------|--------|---------|
//! | 0      | [u8;4] | magic `SFV1` |
//! | 4      | u32    | nx |
//! | 8      | u32    | ny |
//! | 12     | f64    | time |
//! | 20     | f64    | dx |
//! | 28     | f64    | dy |
//!
//! A field dump continues with four arrays (rho, rho u, rho v, E) of
//! `nx * ny` f64 each, row-major over the interior cells. A selection dump
//! continues with four arrays of `nx * ny` bytes, one per characteristic
//! component in the order (u-c, u, u+c, u_perp), holding 0 (P4), 1 (THINC
//! small beta) or 2 (THINC large beta).

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::Grid2D;
use crate::reconstruction::SelectionLabel;
use crate::scalar::Real;
use crate::state::ConservedState;

pub const MAGIC: &[u8; 4] = b"SFV1";
pub const HEADER_LEN: usize = 36;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DumpHeader {
    pub nx: usize,
    pub ny: usize,
    pub time: f64,
    pub dx: f64,
    pub dy: f64,
}

impl DumpHeader {
    pub fn cells(&self) -> usize {
        self.nx * self.ny
    }

    fn write(&self, out: &mut Vec<u8>) -> Result<()> {
        let dim = |n: usize| u32::try_from(n).map_err(|_| Error::InvalidConfig(format!("dimension {n} exceeds u32")));
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&dim(self.nx)?.to_le_bytes());
        out.extend_from_slice(&dim(self.ny)?.to_le_bytes());
        for v in [self.time, self.dx, self.dy] {
            out.extend_from_slice(&v.to_le_bytes());
        }
        Ok(())
    }

    /// Parses the header and checks that the payload has `bytes_per_cell`
    /// bytes for every cell.
    fn read(bytes: &[u8], bytes_per_cell: usize) -> Result<(Self, &[u8])> {
        if bytes.len() < HEADER_LEN {
            return Err(Error::MalformedDump(format!("{} bytes, header needs {HEADER_LEN}", bytes.len())));
        }
        if &bytes[..4] != MAGIC {
            return Err(Error::MalformedDump(format!("bad magic {:?}", &bytes[..4])));
        }
        let u32_at = |o: usize| u32::from_le_bytes(bytes[o..o + 4].try_into().unwrap()) as usize;
        let f64_at = |o: usize| f64::from_le_bytes(bytes[o..o + 8].try_into().unwrap());
        let h = DumpHeader {
            nx: u32_at(4),
            ny: u32_at(8),
            time: f64_at(12),
            dx: f64_at(20),
            dy: f64_at(28),
        };
        let expected = h
            .cells()
            .checked_mul(bytes_per_cell)
            .and_then(|n| n.checked_add(HEADER_LEN))
            .ok_or_else(|| Error::MalformedDump("dimensions overflow".into()))?;
        if bytes.len() != expected {
            return Err(Error::MalformedDump(format!(
                "{} bytes, expected {expected} for {}x{}",
                bytes.len(),
                h.nx,
                h.ny
            )));
        }
        Ok((h, &bytes[HEADER_LEN..]))
    }
}

/// Interior conserved fields, stored as f64 whatever the solver precision.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldDump {
    pub header: DumpHeader,
    /// rho, rho u, rho v, E; each `nx * ny`, row-major.
    pub fields: [Vec<f64>; 4],
}

impl FieldDump {
    pub fn from_grid<T: Real>(grid: &Grid2D<T>, time: T) -> Self {
        let cells = grid.interior();
        let mut fields: [Vec<f64>; 4] = Default::default();
        for f in fields.iter_mut() {
            f.reserve_exact(cells.len());
        }
        for u in &cells {
            for (f, v) in fields.iter_mut().zip(u.to_array()) {
                f.push(v.to_f64_lossless());
            }
        }
        FieldDump {
            header: DumpHeader {
                nx: grid.nx,
                ny: grid.ny,
                time: time.to_f64_lossless(),
                dx: grid.dx.to_f64_lossless(),
                dy: grid.dy.to_f64_lossless(),
            },
            fields,
        }
    }

    /// Row-major conserved states.
    pub fn cells(&self) -> Vec<ConservedState<f64>> {
        (0..self.header.cells())
            .map(|k| {
                ConservedState::new(self.fields[0][k], self.fields[1][k], self.fields[2][k], self.fields[3][k])
            })
            .collect()
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let n = self.header.cells();
        if self.fields.iter().any(|f| f.len() != n) {
            return Err(Error::ShapeMismatch(format!("field arrays must hold {n} values")));
        }
        let mut out = Vec::with_capacity(HEADER_LEN + 32 * n);
        self.header.write(&mut out)?;
        for f in &self.fields {
            for v in f {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (header, body) = DumpHeader::read(bytes, 32)?;
        let n = header.cells();
        let mut fields: [Vec<f64>; 4] = Default::default();
        for (c, f) in fields.iter_mut().enumerate() {
            *f = body[c * 8 * n..(c + 1) * 8 * n]
                .chunks_exact(8)
                .map(|b| f64::from_le_bytes(b.try_into().unwrap()))
                .collect();
        }
        Ok(FieldDump { header, fields })
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_bytes()?)?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }
}

/// Per-cell selected reconstruction for each characteristic component.
#[derive(Debug, Clone, PartialEq)]
pub struct SelectionDump {
    pub header: DumpHeader,
    /// Components in the order (u-c, u, u+c, u_perp); each `nx * ny`.
    pub labels: [Vec<SelectionLabel>; 4],
}

impl SelectionDump {
    /// Builds from per-cell label quadruples (row-major).
    pub fn from_cells(header: DumpHeader, cells: &[[SelectionLabel; 4]]) -> Result<Self> {
        if cells.len() != header.cells() {
            return Err(Error::ShapeMismatch(format!(
                "{} label cells for {}x{}",
                cells.len(),
                header.nx,
                header.ny
            )));
        }
        let mut labels: [Vec<SelectionLabel>; 4] = Default::default();
        for (c, l) in labels.iter_mut().enumerate() {
            *l = cells.iter().map(|q| q[c]).collect();
        }
        Ok(SelectionDump { header, labels })
    }

    pub fn to_bytes(&self) -> Result<Vec<u8>> {
        let n = self.header.cells();
        if self.labels.iter().any(|l| l.len() != n) {
            return Err(Error::ShapeMismatch(format!("label arrays must hold {n} values")));
        }
        let mut out = Vec::with_capacity(HEADER_LEN + 4 * n);
        self.header.write(&mut out)?;
        for l in &self.labels {
            out.extend(l.iter().map(|s| s.code()));
        }
        Ok(out)
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        let (header, body) = DumpHeader::read(bytes, 4)?;
        let n = header.cells();
        let mut labels: [Vec<SelectionLabel>; 4] = Default::default();
        for (c, l) in labels.iter_mut().enumerate() {
            *l = body[c * n..(c + 1) * n]
                .iter()
                .map(|&b| {
                    SelectionLabel::from_code(b).ok_or_else(|| Error::MalformedDump(format!("label byte {b}")))
                })
                .collect::<Result<_>>()?;
        }
        Ok(SelectionDump { header, labels })
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        fs::write(path, self.to_bytes()?)?;
        Ok(())
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_bytes(&fs::read(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{BoundaryKind, Boundaries};

    fn sample_grid() -> Grid2D<f64> {
        let mut g = Grid2D::new(3, 2, (0.0, 0.3), (0.0, 0.2), Boundaries::uniform(BoundaryKind::ZeroGradient)).unwrap();
        g.fill(|x, y| ConservedState::new(1.0 + x, x - y, -0.0, 2.5 + 1e-17 * y));
        g
    }

    #[test]
    fn field_layout() {
        let d = FieldDump::from_grid(&sample_grid(), 0.25);
        let b = d.to_bytes().unwrap();
        assert_eq!(b.len(), HEADER_LEN + 32 * 6);
        assert_eq!(&b[..4], b"SFV1");
        assert_eq!(u32::from_le_bytes(b[4..8].try_into().unwrap()), 3);
        assert_eq!(u32::from_le_bytes(b[8..12].try_into().unwrap()), 2);
        assert_eq!(f64::from_le_bytes(b[12..20].try_into().unwrap()), 0.25);
        // second cell of the first row, rho
        let rho1 = f64::from_le_bytes(b[HEADER_LEN + 8..HEADER_LEN + 16].try_into().unwrap());
        assert_eq!(rho1, sample_grid().get(1, 0).rho);
    }

    #[test]
    fn field_round_trip_is_bit_identical() {
        let d = FieldDump::from_grid(&sample_grid(), 0.1);
        let b = d.to_bytes().unwrap();
        let back = FieldDump::from_bytes(&b).unwrap();
        assert_eq!(back.to_bytes().unwrap(), b);
        // -0.0 survives
        assert!(back.fields[2].iter().all(|v| v.to_bits() == (-0.0f64).to_bits()));
    }

    #[test]
    fn malformed_inputs() {
        let b = FieldDump::from_grid(&sample_grid(), 0.0).to_bytes().unwrap();
        assert!(matches!(FieldDump::from_bytes(&b[..b.len() - 1]), Err(Error::MalformedDump(_))));
        assert!(matches!(FieldDump::from_bytes(&b[..10]), Err(Error::MalformedDump(_))));
        let mut bad = b.clone();
        bad[0] = b'X';
        assert!(matches!(FieldDump::from_bytes(&bad), Err(Error::MalformedDump(_))));
    }

    #[test]
    fn selection_round_trip() {
        use SelectionLabel::*;
        let h = DumpHeader { nx: 2, ny: 1, time: 1.0, dx: 0.5, dy: 0.5 };
        let cells = [[P4, Ts, Tl, P4], [Tl, Tl, P4, Ts]];
        let d = SelectionDump::from_cells(h, &cells).unwrap();
        let b = d.to_bytes().unwrap();
        assert_eq!(&b[HEADER_LEN..], &[0, 2, 1, 2, 2, 0, 0, 1]);
        assert_eq!(SelectionDump::from_bytes(&b).unwrap(), d);
        let mut bad = b.clone();
        bad[HEADER_LEN] = 3;
        assert!(SelectionDump::from_bytes(&bad).is_err());
    }
}
