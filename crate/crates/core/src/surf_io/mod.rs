//! Domain sampling, triangulated meshes and the OBJ / CSV / report formats.

mod domain;
mod export;
mod mesh;
mod report;

pub use domain::{sample_domain, DomainSpec, SampleGrid, Side};
pub use export::{export_csv, export_obj, export_report, parse_csv, parse_obj, CSV_HEADER};
pub use mesh::{build_mesh, build_mesh_with, MeshData};
pub use report::{ReportMetadata, ReportRow, VerificationReport};
