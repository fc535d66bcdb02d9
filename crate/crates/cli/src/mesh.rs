//! Triangle meshes over parameter grids, written as Wavefront OBJ.

use std::io::{self, Write};

use wlab_core::vec3::Vec3;
use wlab_core::weierstrass::Immersion;
use wlab_core::{Result, C64};

pub struct Mesh {
    pub vertices: Vec<Vec3>,
    /// Zero-based vertex indices, counter-clockwise in the parameter plane.
    pub faces: Vec<[usize; 3]>,
    /// Grid cells left out because a corner lies near a branch point.
    pub dropped: usize,
}

/// Mesh of the immersion over a row-major `rows × cols` grid.
///
/// Columns wrap around (the angular direction is periodic). Every grid
/// point becomes a vertex; a cell with a corner within `clearance` of a
/// point in `avoid` is dropped, which cuts small disks around the branch
/// points out of the surface without changing the vertex count.
pub fn build_mesh(
    s: &dyn Immersion,
    grid: &[C64],
    rows: usize,
    cols: usize,
    avoid: &[C64],
    clearance: f64,
) -> Result<Mesh> {
    assert_eq!(grid.len(), rows * cols, "grid shape mismatch");
    let vertices = grid.iter().map(|&z| s.position(z)).collect::<Result<Vec<_>>>()?;
    let near = |k: usize| avoid.iter().any(|p| (grid[k] - p).norm() < clearance);
    let mut faces = Vec::with_capacity(2 * rows * cols);
    let mut dropped = 0;
    for i in 0..rows.saturating_sub(1) {
        for j in 0..cols {
            let a = i * cols + j;
            let b = i * cols + (j + 1) % cols;
            let c = (i + 1) * cols + (j + 1) % cols;
            let d = (i + 1) * cols + j;
            if [a, b, c, d].into_iter().any(near) {
                dropped += 1;
                continue;
            }
            faces.push([a, b, c]);
            faces.push([a, c, d]);
        }
    }
    Ok(Mesh {
        vertices,
        faces,
        dropped,
    })
}

pub fn write_obj<W: Write>(mesh: &Mesh, mut w: W) -> io::Result<()> {
    for v in &mesh.vertices {
        writeln!(w, "v {:.17e} {:.17e} {:.17e}", v[0], v[1], v[2])?;
    }
    for f in &mesh.faces {
        writeln!(w, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1)?;
    }
    w.flush()
}
