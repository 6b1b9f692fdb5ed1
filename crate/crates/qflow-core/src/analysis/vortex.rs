//! Phase-singularity (quantum vortex) detection on 2D grids.
//!
//! The winding number of each grid plaquette is the sum of the phase
//! differences around its four edges, each wrapped to (-pi, pi]. The sum
//! telescopes to an exact integer multiple of 2 pi; nonzero totals mark
//! singularities. Working on the phase of psi directly avoids global
//! unwrapping entirely.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::grid::GridState;
use crate::Pos;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Vortex {
    /// Plaquette-center position.
    pub position: Pos,
    /// Winding number (nonzero integer).
    pub winding: i32,
    /// Circulation of the velocity field around the singularity,
    /// measured on an expanded loop; quantized to `winding * 2 pi
    /// hbar / m`.
    pub circulation: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VortexReport {
    pub vortices: Vec<Vortex>,
    /// One circulation quantum, `2 pi hbar / m`.
    pub quantum: f64,
}

/// Detect phase singularities in a 2D state. Plaquettes containing nodes
/// with density below `floor_rel` times the peak are skipped (the phase
/// is meaningless there).
pub fn detect_vortices(state: &GridState, mass: f64, hbar: f64, floor_rel: f64) -> VortexReport {
    let g = &state.geometry;
    assert_eq!(g.dimension(), 2, "vortex detection needs a 2D state");
    let nx = g.points(0);
    let ny = g.points(1);
    let peak = state.psi.iter().map(|p| p.norm_sqr()).fold(0.0, f64::max);
    let floor = floor_rel * peak;
    let quantum = 2.0 * std::f64::consts::PI * hbar / mass;

    let at = |ix: usize, iy: usize| state.psi[ix * ny + iy];
    let ok = |p: Complex64| p.norm_sqr() > floor;

    // First pass: plaquette windings.
    let mut found: Vec<(usize, usize, i32)> = Vec::new();
    for ix in 0..nx - 1 {
        for iy in 0..ny - 1 {
            let a = at(ix, iy);
            let b = at(ix + 1, iy);
            let c = at(ix + 1, iy + 1);
            let d = at(ix, iy + 1);
            if !(ok(a) && ok(b) && ok(c) && ok(d)) {
                continue;
            }
            let total = wrapped(b, a) + wrapped(c, b) + wrapped(d, c) + wrapped(a, d);
            let winding = (total / (2.0 * std::f64::consts::PI)).round();
            if winding == 0.0 {
                continue;
            }
            debug_assert!(
                (total - winding * 2.0 * std::f64::consts::PI).abs() < 1e-6,
                "winding sum {total} not an integer multiple of 2 pi"
            );
            found.push((ix, iy, winding as i32));
        }
    }

    // Second pass: circulation on the widest loop that stays on the
    // grid, avoids floored density, and encloses no other singularity.
    let vortices = found
        .iter()
        .map(|&(ix, iy, winding)| {
            let isolated = |r: usize| {
                found.iter().all(|&(jx, jy, _)| {
                    (jx == ix && jy == iy)
                        || (jx as isize - ix as isize).unsigned_abs() > r
                        || (jy as isize - iy as isize).unsigned_abs() > r
                })
            };
            let circulation = (0..=3usize)
                .rev()
                .filter(|&r| r == 0 || isolated(r))
                .find_map(|r| loop_circulation(state, ix, iy, r, mass, hbar, floor))
                .unwrap_or(winding as f64 * quantum);
            Vortex {
                position: [
                    0.5 * (g.coord(0, ix) + g.coord(0, ix + 1)),
                    0.5 * (g.coord(1, iy) + g.coord(1, iy + 1)),
                ],
                winding,
                circulation,
            }
        })
        .collect();
    VortexReport { vortices, quantum }
}

/// Phase increment from `from` to `to`, wrapped to (-pi, pi].
fn wrapped(to: Complex64, from: Complex64) -> f64 {
    (to * from.conj()).arg()
}

/// Circulation of `v = grad S / m` around a square loop of half-width
/// `r` plaquettes centered on plaquette `(ix, iy)`: the line integral of
/// the phase gradient accumulated from wrapped node-to-node increments,
/// times `hbar / m`. Returns `None` when the loop leaves the grid or
/// touches floored density.
fn loop_circulation(
    state: &GridState,
    ix: usize,
    iy: usize,
    r: usize,
    mass: f64,
    hbar: f64,
    floor: f64,
) -> Option<f64> {
    let g = &state.geometry;
    let ny = g.points(1);
    let nx = g.points(0);
    let (cx, cy) = (ix as isize, iy as isize);
    let r = r as isize;
    let (x0, x1) = (cx - r, cx + 1 + r);
    let (y0, y1) = (cy - r, cy + 1 + r);
    if x0 < 0 || y0 < 0 || x1 >= nx as isize || y1 >= ny as isize {
        return None;
    }
    // Counterclockwise ring of nodes.
    let mut ring = Vec::new();
    for x in x0..=x1 {
        ring.push((x, y0));
    }
    for y in y0 + 1..=y1 {
        ring.push((x1, y));
    }
    for x in (x0..x1).rev() {
        ring.push((x, y1));
    }
    for y in (y0 + 1..y1).rev() {
        ring.push((x0, y));
    }
    let mut total = 0.0;
    for w in 0..ring.len() {
        let (ax, ay) = ring[w];
        let (bx, by) = ring[(w + 1) % ring.len()];
        let pa = state.psi[ax as usize * ny + ay as usize];
        let pb = state.psi[bx as usize * ny + by as usize];
        if pa.norm_sqr() <= floor || pb.norm_sqr() <= floor {
            return None;
        }
        total += wrapped(pb, pa);
    }
    Some(hbar / mass * total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::Boundary;
    use crate::GridGeometry;
    use approx::assert_relative_eq;

    fn geometry() -> GridGeometry {
        GridGeometry::new_2d([[-5.0, 5.0], [-5.0, 5.0]], [128, 128], Boundary::Periodic).unwrap()
    }

    fn charged_state(g: &GridGeometry, charge: i32) -> GridState {
        // Gaussian envelope times e^{i charge theta} around the origin.
        let psi = (0..g.len())
            .map(|i| {
                let p = g.position(i);
                let r2 = p[0] * p[0] + p[1] * p[1];
                let theta = p[1].atan2(p[0]);
                Complex64::from_polar((-r2 / 4.0).exp(), charge as f64 * theta)
            })
            .collect();
        GridState::new(g.clone(), psi, 0.0).unwrap()
    }

    #[test]
    fn unit_charge_detected() {
        let g = geometry();
        let report = detect_vortices(&charged_state(&g, 1), 1.0, 1.0, 1e-12);
        // Exactly one singularity, winding +1, at the origin plaquette.
        assert_eq!(report.vortices.len(), 1);
        let v = &report.vortices[0];
        assert_eq!(v.winding, 1);
        assert!(v.position[0].abs() < 0.1 && v.position[1].abs() < 0.1);
        assert_relative_eq!(v.circulation, report.quantum, max_relative = 1e-9);
    }

    #[test]
    fn negative_double_charge() {
        let g = geometry();
        let report = detect_vortices(&charged_state(&g, -2), 1.0, 1.0, 1e-12);
        let total: i32 = report.vortices.iter().map(|v| v.winding).sum();
        assert_eq!(total, -2);
        for v in &report.vortices {
            assert_relative_eq!(
                v.circulation,
                v.winding as f64 * report.quantum,
                max_relative = 0.01
            );
        }
    }

    #[test]
    fn real_state_has_no_vortices() {
        let g = geometry();
        let psi = (0..g.len())
            .map(|i| {
                let p = g.position(i);
                Complex64::new((-(p[0] * p[0] + p[1] * p[1]) / 4.0).exp(), 0.0)
            })
            .collect();
        let s = GridState::new(g, psi, 0.0).unwrap();
        let report = detect_vortices(&s, 1.0, 1.0, 1e-12);
        assert!(report.vortices.is_empty());
    }
}
