//! Binary snapshot files and their JSON manifest.
//!
//! Layout (all little-endian, verified through the endianness tag):
//!
//! ```text
//! u32   endianness tag 0x01020304
//! u32   dimension (1 or 2)
//! u64   node count per axis            (dimension entries)
//! f64   axis min, f64 axis max         (dimension pairs)
//! f64   time stamp
//! f64   re, f64 im per node, row-major (axis 0 outer, axis 1 inner)
//! ```

use std::io::{Read, Write};
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::GridError;
use crate::grid::{Boundary, GridState};
use crate::GridGeometry;

pub const SNAPSHOT_FORMAT_VERSION: u32 = 1;
const ENDIAN_TAG: u32 = 0x0102_0304;

pub fn write_snapshot<W: Write>(state: &GridState, mut w: W) -> Result<(), GridError> {
    let g = &state.geometry;
    w.write_all(&ENDIAN_TAG.to_le_bytes())?;
    w.write_all(&(g.dimension() as u32).to_le_bytes())?;
    for axis in 0..g.dimension() {
        w.write_all(&(g.points(axis) as u64).to_le_bytes())?;
    }
    for axis in 0..g.dimension() {
        let [min, max] = g.extents(axis);
        w.write_all(&min.to_le_bytes())?;
        w.write_all(&max.to_le_bytes())?;
    }
    w.write_all(&state.t.to_le_bytes())?;
    let mut buf = Vec::with_capacity(state.psi.len() * 16);
    for p in &state.psi {
        buf.extend_from_slice(&p.re.to_le_bytes());
        buf.extend_from_slice(&p.im.to_le_bytes());
    }
    w.write_all(&buf)?;
    Ok(())
}

pub fn write_snapshot_file(state: &GridState, path: &Path) -> Result<(), GridError> {
    let file = std::fs::File::create(path)?;
    write_snapshot(state, std::io::BufWriter::new(file))
}

/// Read a snapshot back. The boundary kind is not part of the binary
/// header; it travels in the manifest.
pub fn read_snapshot<R: Read>(mut r: R, boundary: Boundary) -> Result<GridState, GridError> {
    let tag = read_u32(&mut r)?;
    if tag != ENDIAN_TAG {
        return Err(GridError::BadSnapshot(format!(
            "endianness tag {tag:#010x}, expected {ENDIAN_TAG:#010x}"
        )));
    }
    let dimension = read_u32(&mut r)? as usize;
    if dimension != 1 && dimension != 2 {
        return Err(GridError::BadSnapshot(format!("dimension {dimension}")));
    }
    let mut points = [1usize; 2];
    for p in points.iter_mut().take(dimension) {
        let n = read_u64(&mut r)?;
        *p = usize::try_from(n).map_err(|_| GridError::BadSnapshot(format!("count {n}")))?;
    }
    let mut extents = [[0.0, 1.0]; 2];
    for e in extents.iter_mut().take(dimension) {
        *e = [read_f64(&mut r)?, read_f64(&mut r)?];
    }
    let t = read_f64(&mut r)?;
    let geometry = if dimension == 1 {
        GridGeometry::new_1d(extents[0][0], extents[0][1], points[0], boundary)?
    } else {
        GridGeometry::new_2d(extents, points, boundary)?
    };
    let total = geometry.len();
    let mut buf = vec![0u8; total * 16];
    r.read_exact(&mut buf)?;
    let psi = buf
        .chunks_exact(16)
        .map(|c| {
            Complex64::new(
                f64::from_le_bytes(c[0..8].try_into().unwrap()),
                f64::from_le_bytes(c[8..16].try_into().unwrap()),
            )
        })
        .collect();
    GridState::new(geometry, psi, t)
}

pub fn read_snapshot_file(path: &Path, boundary: Boundary) -> Result<GridState, GridError> {
    let file = std::fs::File::open(path)?;
    read_snapshot(std::io::BufReader::new(file), boundary)
}

fn read_u32<R: Read>(r: &mut R) -> Result<u32, GridError> {
    let mut b = [0u8; 4];
    r.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_u64<R: Read>(r: &mut R) -> Result<u64, GridError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(u64::from_le_bytes(b))
}

fn read_f64<R: Read>(r: &mut R) -> Result<f64, GridError> {
    let mut b = [0u8; 8];
    r.read_exact(&mut b)?;
    Ok(f64::from_le_bytes(b))
}

/// JSON manifest listing the snapshots of one propagation run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SnapshotManifest {
    pub format_version: u32,
    pub dimension: usize,
    pub boundary: Boundary,
    pub mass: f64,
    pub hbar: f64,
    pub axes: Vec<AxisMeta>,
    pub times: Vec<f64>,
    pub files: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AxisMeta {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl SnapshotManifest {
    pub fn new(geometry: &GridGeometry, mass: f64, hbar: f64) -> Self {
        Self {
            format_version: SNAPSHOT_FORMAT_VERSION,
            dimension: geometry.dimension(),
            boundary: geometry.boundary(),
            mass,
            hbar,
            axes: (0..geometry.dimension())
                .map(|a| {
                    let [min, max] = geometry.extents(a);
                    AxisMeta {
                        min,
                        max,
                        points: geometry.points(a),
                    }
                })
                .collect(),
            times: Vec::new(),
            files: Vec::new(),
        }
    }

    pub fn push(&mut self, t: f64, file: String) {
        self.times.push(t);
        self.files.push(file);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::initialize_grid;
    use crate::{GaussianParams, SuperpositionSpec};

    #[test]
    fn roundtrip_bit_exact() {
        let g = GridGeometry::new_1d(-20.0, 20.0, 64, Boundary::Periodic).unwrap();
        let spec =
            SuperpositionSpec::single(GaussianParams::new_1d(1.0, 1.0, 1.5, 0.0, 0.3).unwrap());
        let s = initialize_grid(&spec, &g).unwrap();
        let mut buf = Vec::new();
        write_snapshot(&s, &mut buf).unwrap();
        let back = read_snapshot(buf.as_slice(), Boundary::Periodic).unwrap();
        assert_eq!(back.geometry, s.geometry);
        assert_eq!(back.t, s.t);
        assert_eq!(back.psi, s.psi);
    }

    #[test]
    fn header_layout_golden() {
        let g = GridGeometry::new_1d(-1.0, 1.0, 16, Boundary::Periodic).unwrap();
        let psi = vec![Complex64::new(0.5, -0.25); 16];
        let s = GridState::new(g, psi, 2.5).unwrap();
        let mut buf = Vec::new();
        write_snapshot(&s, &mut buf).unwrap();
        assert_eq!(&buf[0..4], &[0x04, 0x03, 0x02, 0x01]); // LE tag
        assert_eq!(&buf[4..8], &1u32.to_le_bytes()); // dimension
        assert_eq!(&buf[8..16], &16u64.to_le_bytes()); // points
        assert_eq!(&buf[16..24], &(-1.0f64).to_le_bytes()); // min
        assert_eq!(&buf[24..32], &1.0f64.to_le_bytes()); // max
        assert_eq!(&buf[32..40], &2.5f64.to_le_bytes()); // t
        assert_eq!(&buf[40..48], &0.5f64.to_le_bytes()); // first re
        assert_eq!(&buf[48..56], &(-0.25f64).to_le_bytes()); // first im
        assert_eq!(buf.len(), 40 + 16 * 16);
    }

    #[test]
    fn rejects_bad_tag() {
        let buf = vec![0xFFu8; 64];
        assert!(matches!(
            read_snapshot(buf.as_slice(), Boundary::Periodic),
            Err(GridError::BadSnapshot(_))
        ));
    }
}
