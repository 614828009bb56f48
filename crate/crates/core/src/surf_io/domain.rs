use std::f64::consts::TAU;
use std::fmt;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contour::PathSpec;
use crate::error::{Error, Result};

const EDGE_TOL: f64 = 1e-12;

/// An annular sector of the ζ-plane with optional excluded disks.
#[derive(Debug, Clone, PartialEq)]
pub struct DomainSpec {
    pub r_min: f64,
    pub r_max: f64,
    pub angle_min: f64,
    pub angle_max: f64,
    /// `(center, radius)` disks removed from the domain.
    pub exclusions: Vec<(Complex64, f64)>,
    pub n_r: usize,
    pub n_angle: usize,
}

/// Which side of the unit circle a domain lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Inside,
    Outside,
}

impl DomainSpec {
    pub fn sector(r_min: f64, r_max: f64, angle_min: f64, angle_max: f64, n_r: usize, n_angle: usize) -> Self {
        DomainSpec { r_min, r_max, angle_min, angle_max, exclusions: Vec::new(), n_r, n_angle }
    }

    pub fn with_resolution(&self, n_r: usize, n_angle: usize) -> Self {
        DomainSpec { n_r, n_angle, ..self.clone() }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidDomain(msg));
        let finite = [self.r_min, self.r_max, self.angle_min, self.angle_max].iter().all(|v| v.is_finite());
        if !finite {
            return bad("non-finite bounds".into());
        }
        if !(self.r_min > 0.0 && self.r_min < self.r_max) {
            return bad(format!("need 0 < r_min < r_max, got [{}, {}]", self.r_min, self.r_max));
        }
        if self.r_min <= 1.0 && 1.0 <= self.r_max {
            return bad(format!("radial range [{}, {}] contains the unit circle", self.r_min, self.r_max));
        }
        if !(self.angle_min < self.angle_max) || self.angle_max - self.angle_min > TAU + EDGE_TOL {
            return bad(format!("angle range [{}, {}] must be increasing and span at most 2π", self.angle_min, self.angle_max));
        }
        if self.n_r < 2 || self.n_angle < 2 {
            return bad(format!("need at least 2 rings and 2 spokes, got {}×{}", self.n_r, self.n_angle));
        }
        if self.exclusions.iter().any(|(c, r)| !(*r > 0.0) || !c.re.is_finite() || !c.im.is_finite()) {
            return bad("exclusion disks need finite centres and positive radii".into());
        }
        Ok(())
    }

    pub fn side(&self) -> Side {
        if self.r_max < 1.0 {
            Side::Inside
        } else {
            Side::Outside
        }
    }

    /// Distance between the radial range and the unit circle.
    pub fn unit_circle_margin(&self) -> f64 {
        match self.side() {
            Side::Inside => 1.0 - self.r_max,
            Side::Outside => self.r_min - 1.0,
        }
    }

    /// Angle of `z` shifted by a multiple of 2π into the sector, if possible.
    pub fn sector_angle(&self, z: Complex64) -> Option<f64> {
        let base = z.arg();
        let k = ((self.angle_min - EDGE_TOL - base) / TAU).ceil();
        let theta = base + k * TAU;
        (theta <= self.angle_max + EDGE_TOL).then_some(theta)
    }

    /// Membership in the closed sector, ignoring exclusion disks.
    pub fn in_sector(&self, z: Complex64) -> bool {
        let r = z.norm();
        r >= self.r_min * (1.0 - EDGE_TOL) && r <= self.r_max * (1.0 + EDGE_TOL) && self.sector_angle(z).is_some()
    }

    pub fn excluded(&self, z: Complex64) -> bool {
        self.exclusions.iter().any(|(c, r)| (z - c).norm() < *r)
    }

    pub fn contains(&self, z: Complex64) -> bool {
        self.in_sector(z) && !self.excluded(z)
    }

    /// Geometric-mean radius at the middle angle.
    pub fn center(&self) -> Complex64 {
        Complex64::from_polar((self.r_min * self.r_max).sqrt(), 0.5 * (self.angle_min + self.angle_max))
    }

    /// `n` points drawn uniformly in `(log r, angle)` from the kept part of the domain.
    pub fn random_points(&self, n: usize, seed: u64) -> Result<Vec<Complex64>> {
        self.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (lo, hi) = (self.r_min.ln(), self.r_max.ln());
        let mut out = Vec::with_capacity(n);
        let mut attempts = 0usize;
        while out.len() < n {
            attempts += 1;
            if attempts > 1000 * n.max(1) {
                return Err(Error::InvalidDomain("exclusions cover almost the whole domain".into()));
            }
            let z = Complex64::from_polar(rng.gen_range(lo..hi).exp(), rng.gen_range(self.angle_min..self.angle_max));
            if self.contains(z) {
                out.push(z);
            }
        }
        Ok(out)
    }

    /// A path inside the sector: an arc at `|a|` to the angle of `b`, then radially to `b`.
    pub fn path_between(&self, a: Complex64, b: Complex64) -> Result<PathSpec> {
        let ta = self.sector_angle(a).ok_or(Error::DomainViolation(a))?;
        let tb = self.sector_angle(b).ok_or(Error::DomainViolation(b))?;
        let ra = a.norm();
        let mut parts = Vec::new();
        if ta != tb {
            parts.push(PathSpec::Arc { center: Complex64::default(), radius: ra, start_angle: ta, end_angle: tb });
        }
        let corner = Complex64::from_polar(ra, tb);
        parts.push(PathSpec::segment(if ta != tb { corner } else { a }, b));
        Ok(PathSpec::Composite(parts))
    }

    /// Tensor grid: radii geometrically spaced, angles linearly spaced,
    /// both endpoints included; nodes inside exclusion disks are dropped.
    pub fn sample(&self) -> Result<SampleGrid> {
        self.validate()?;
        let ratio = self.r_max / self.r_min;
        let radii: Vec<f64> = (0..self.n_r)
            .map(|i| {
                if i + 1 == self.n_r {
                    self.r_max
                } else {
                    self.r_min * ratio.powf(i as f64 / (self.n_r - 1) as f64)
                }
            })
            .collect();
        let span = self.angle_max - self.angle_min;
        let angles: Vec<f64> = (0..self.n_angle)
            .map(|j| self.angle_min + span * j as f64 / (self.n_angle - 1) as f64)
            .collect();
        let mut slots = Vec::with_capacity(self.n_r * self.n_angle);
        let mut nodes = Vec::new();
        let mut coords = Vec::new();
        for (i, r) in radii.iter().enumerate() {
            for (j, a) in angles.iter().enumerate() {
                let z = Complex64::from_polar(*r, *a);
                if self.excluded(z) {
                    slots.push(None);
                } else {
                    slots.push(Some(nodes.len()));
                    nodes.push(z);
                    coords.push((i, j));
                }
            }
        }
        if nodes.is_empty() {
            return Err(Error::InvalidDomain("every node is excluded".into()));
        }
        Ok(SampleGrid {
            n_r: self.n_r,
            n_angle: self.n_angle,
            slots,
            nodes,
            coords,
            layout: Layout::Sector { radii, angles },
        })
    }
}

impl fmt::Display for DomainSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "r=[{:?},{:?}] angle=[{:?},{:?}] n={}x{}",
            self.r_min, self.r_max, self.angle_min, self.angle_max, self.n_r, self.n_angle
        )?;
        for (c, r) in &self.exclusions {
            write!(f, " exclude=({:?}{:+?}i;{:?})", c.re, c.im, r)?;
        }
        Ok(())
    }
}

/// Sample the domain, see [`DomainSpec::sample`].
pub fn sample_domain(spec: &DomainSpec) -> Result<SampleGrid> {
    spec.sample()
}

#[derive(Debug, Clone, PartialEq)]
enum Layout {
    Sector { radii: Vec<f64>, angles: Vec<f64> },
    /// Points joined in order by straight segments.
    Chain,
}

/// Sample nodes with their grid connectivity.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleGrid {
    n_r: usize,
    n_angle: usize,
    /// Row-major `(ring, spoke)` slots; `None` for dropped nodes.
    slots: Vec<Option<usize>>,
    nodes: Vec<Complex64>,
    coords: Vec<(usize, usize)>,
    layout: Layout,
}

impl SampleGrid {
    /// A single ring of arbitrary points connected in order.
    pub fn from_points(points: Vec<Complex64>) -> Self {
        let n = points.len();
        SampleGrid {
            n_r: 1,
            n_angle: n,
            slots: (0..n).map(Some).collect(),
            coords: (0..n).map(|j| (0, j)).collect(),
            nodes: points,
            layout: Layout::Chain,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, k: usize) -> Complex64 {
        self.nodes[k]
    }

    pub fn nodes(&self) -> &[Complex64] {
        &self.nodes
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.n_r, self.n_angle)
    }

    /// Node index at `(ring, spoke)`, if that node was kept.
    pub fn slot(&self, ring: usize, spoke: usize) -> Option<usize> {
        if ring < self.n_r && spoke < self.n_angle {
            self.slots[ring * self.n_angle + spoke]
        } else {
            None
        }
    }

    pub fn coords(&self, k: usize) -> (usize, usize) {
        self.coords[k]
    }

    pub fn neighbors(&self, k: usize) -> Vec<usize> {
        let (i, j) = self.coords[k];
        let mut out = Vec::with_capacity(4);
        if i > 0 {
            out.extend(self.slot(i - 1, j));
        }
        out.extend(self.slot(i + 1, j));
        if j > 0 {
            out.extend(self.slot(i, j - 1));
        }
        out.extend(self.slot(i, j + 1));
        out
    }

    /// Path along the grid edge between two neighbouring nodes: an arc for
    /// nodes on the same ring of a sector grid, a segment otherwise.
    pub fn edge_path(&self, a: usize, b: usize) -> PathSpec {
        let (ia, ja) = self.coords[a];
        let (ib, jb) = self.coords[b];
        match &self.layout {
            Layout::Sector { radii, angles } if ia == ib && ja != jb => PathSpec::Arc {
                center: Complex64::default(),
                radius: radii[ia],
                start_angle: angles[ja],
                end_angle: angles[jb],
            },
            _ => PathSpec::segment(self.nodes[a], self.nodes[b]),
        }
    }

    /// Triangles (two per complete grid cell), as node indices.
    pub fn triangles(&self) -> Vec<[usize; 3]> {
        let mut faces = Vec::new();
        if matches!(self.layout, Layout::Chain) {
            return faces;
        }
        for i in 0..self.n_r.saturating_sub(1) {
            for j in 0..self.n_angle.saturating_sub(1) {
                let a = self.slot(i, j);
                let b = self.slot(i + 1, j);
                let c = self.slot(i + 1, j + 1);
                let d = self.slot(i, j + 1);
                if let (Some(a), Some(b), Some(c)) = (a, b, c) {
                    faces.push([a, b, c]);
                }
                if let (Some(a), Some(c), Some(d)) = (a, c, d) {
                    faces.push([a, c, d]);
                }
            }
        }
        faces
    }
}
