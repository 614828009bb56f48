//! Text formats. Numbers are written with 17 significant digits so that
//! every `f64` survives a round trip.
//!
//! OBJ files carry the timelike coordinate φ as the third vertex
//! coordinate; viewers will treat it as a Euclidean height.

use std::fmt::Write as _;

use super::{MeshData, VerificationReport};
use crate::error::{Error, Result};
use crate::surface::SurfaceSample;

pub const CSV_HEADER: &str = "re_zeta,im_zeta,x,y,phi,lambda_sq,H,N1,N2,N3";

fn num(out: &mut String, v: f64) {
    write!(out, "{v:.16e}").expect("writing to a String");
}

pub fn export_obj(mesh: &MeshData) -> Vec<u8> {
    let mut out = String::from("# maxsurf mesh: v x y phi (phi is timelike)\n");
    for v in &mesh.vertices {
        out.push('v');
        for c in v {
            out.push(' ');
            num(&mut out, *c);
        }
        out.push('\n');
    }
    for f in &mesh.faces {
        writeln!(out, "f {} {} {}", f[0] + 1, f[1] + 1, f[2] + 1).expect("writing to a String");
    }
    out.into_bytes()
}

pub fn export_csv(samples: &[SurfaceSample]) -> Vec<u8> {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for s in samples {
        let row = [
            s.zeta.re,
            s.zeta.im,
            s.position[0],
            s.position[1],
            s.position[2],
            s.conformal_factor_sq,
            s.mean_curvature,
            s.normal[0],
            s.normal[1],
            s.normal[2],
        ];
        for (k, v) in row.iter().enumerate() {
            if k > 0 {
                out.push(',');
            }
            num(&mut out, *v);
        }
        out.push('\n');
    }
    out.into_bytes()
}

/// Serialises a report as TOML; reports without rows are rejected.
pub fn export_report(report: &VerificationReport) -> Result<Vec<u8>> {
    if report.rows.is_empty() {
        return Err(Error::EmptyReport);
    }
    toml::to_string(report)
        .map(String::into_bytes)
        .map_err(|e| Error::InvalidData(format!("report serialisation failed: {e}")))
}

fn bad(line: usize, msg: &str) -> Error {
    Error::InvalidData(format!("line {}: {msg}", line + 1))
}

/// Reads the vertices and triangular faces of an OBJ file.
pub fn parse_obj(text: &str) -> Result<(Vec<[f64; 3]>, Vec<[usize; 3]>)> {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("v") => {
                let mut v = [0.0; 3];
                for c in v.iter_mut() {
                    *c = parts
                        .next()
                        .and_then(|p| p.parse().ok())
                        .ok_or_else(|| bad(ln, "bad vertex"))?;
                }
                vertices.push(v);
            }
            Some("f") => {
                let mut f = [0usize; 3];
                for c in f.iter_mut() {
                    let i: usize = parts
                        .next()
                        .and_then(|p| p.split('/').next())
                        .and_then(|p| p.parse().ok())
                        .ok_or_else(|| bad(ln, "bad face"))?;
                    if i == 0 {
                        return Err(bad(ln, "face indices are 1-based"));
                    }
                    *c = i - 1;
                }
                faces.push(f);
            }
            _ => {}
        }
    }
    Ok((vertices, faces))
}

/// Reads the rows of a sample table written by [`export_csv`].
pub fn parse_csv(text: &str) -> Result<Vec<[f64; 10]>> {
    let mut lines = text.lines();
    if lines.next() != Some(CSV_HEADER) {
        return Err(Error::InvalidData("missing sample table header".into()));
    }
    lines
        .enumerate()
        .map(|(ln, line)| {
            let mut row = [0.0; 10];
            let mut fields = line.split(',');
            for c in row.iter_mut() {
                *c = fields
                    .next()
                    .and_then(|p| p.parse().ok())
                    .ok_or_else(|| bad(ln + 1, "bad field"))?;
            }
            if fields.next().is_some() {
                return Err(bad(ln + 1, "too many fields"));
            }
            Ok(row)
        })
        .collect()
}
