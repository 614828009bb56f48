use num_complex::Complex64;
use rayon::prelude::*;

use super::DomainSpec;
use crate::contour::Integrator;
use crate::error::{Error, Result};
use crate::surface::{sample_at, Frame, SurfaceSample, Vec3, WeierstrassData, DEFAULT_STEP};

/// Triangulated surface with per-vertex samples; `samples[k]` belongs to `vertices[k]`.
#[derive(Debug, Clone, PartialEq)]
pub struct MeshData {
    pub vertices: Vec<Vec3>,
    pub faces: Vec<[usize; 3]>,
    pub samples: Vec<SurfaceSample>,
}

impl MeshData {
    pub fn zetas(&self) -> Vec<Complex64> {
        self.samples.iter().map(|s| s.zeta).collect()
    }
}

/// Mesh of `data` over `spec` with the default integrator and step.
pub fn build_mesh(data: &WeierstrassData, spec: &DomainSpec, frame: &Frame) -> Result<MeshData> {
    build_mesh_with(&Integrator::default(), data, spec, frame, DEFAULT_STEP)
}

/// Positions come from one antiderivative field over the grid; attributes
/// are then evaluated node by node in parallel.
pub fn build_mesh_with(
    integrator: &Integrator,
    data: &WeierstrassData,
    spec: &DomainSpec,
    frame: &Frame,
    h: f64,
) -> Result<MeshData> {
    let data = data.with_domain(spec.clone())?;
    if !spec.contains(frame.basepoint) {
        return Err(Error::DomainViolation(frame.basepoint));
    }
    let grid = spec.sample()?;
    if grid.is_empty() {
        return Err(Error::InvalidDomain("every node is excluded".into()));
    }
    let poles = data.pole_locations();
    let field = integrator.field_with(|w| data.integrands(w, frame.phi_sign), frame.basepoint, &grid, &poles)?;

    let samples = (0..grid.len())
        .into_par_iter()
        .map(|k| {
            let v = field.value(k);
            let o = frame.offsets;
            let position = [o[0] + v[0].re, o[1] + v[1].re, o[2] + v[2].re];
            sample_at(integrator, &data, frame, grid.node(k), position, h)
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(MeshData {
        vertices: samples.iter().map(|s| s.position).collect(),
        faces: grid.triangles(),
        samples,
    })
}
