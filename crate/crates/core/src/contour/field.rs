use std::collections::VecDeque;

use num_complex::Complex64;
use rayon::prelude::*;

use super::{Integrator, PathSpec};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::surf_io::SampleGrid;

/// Accumulated integrals over the nodes of a sample grid.
///
/// Nodes are connected to the basepoint through a breadth-first spanning
/// tree of grid edges; each node's value is its parent's value plus the
/// integral along the connecting edge.
#[derive(Debug, Clone)]
pub struct AntiderivativeField<const N: usize = 1> {
    basepoint: Complex64,
    root: usize,
    values: Vec<[Complex64; N]>,
    parent: Vec<Option<usize>>,
}

impl<const N: usize> AntiderivativeField<N> {
    pub fn basepoint(&self) -> Complex64 {
        self.basepoint
    }

    /// Node closest to the basepoint; it is joined to the basepoint by a segment.
    pub fn root(&self) -> usize {
        self.root
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[[Complex64; N]] {
        &self.values
    }

    pub fn value(&self, node: usize) -> [Complex64; N] {
        self.values[node]
    }

    /// Spanning-tree parent, `None` for the root.
    pub fn parent(&self, node: usize) -> Option<usize> {
        self.parent[node]
    }
}

impl AntiderivativeField<1> {
    pub fn scalar(&self, node: usize) -> Complex64 {
        self.values[node][0]
    }
}

/// Antiderivative of `expr` over `grid`, zero at `basepoint`.
pub fn antiderivative_grid(expr: &Expr, basepoint: Complex64, grid: &SampleGrid) -> Result<AntiderivativeField<1>> {
    Integrator::default().field_with(|w| Ok([expr.eval(w)?]), basepoint, grid, &[])
}

impl Integrator {
    pub fn field_with<const N: usize, F>(
        &self,
        f: F,
        basepoint: Complex64,
        grid: &SampleGrid,
        singularities: &[Complex64],
    ) -> Result<AntiderivativeField<N>>
    where
        F: Fn(Complex64) -> Result<[Complex64; N]> + Sync,
    {
        let n = grid.len();
        if n == 0 {
            return Err(Error::InvalidArgument("grid has no nodes".into()));
        }
        let root = (0..n)
            .min_by(|a, b| {
                let da = (grid.node(*a) - basepoint).norm();
                let db = (grid.node(*b) - basepoint).norm();
                da.total_cmp(&db)
            })
            .expect("non-empty grid");

        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::from([root]);
        seen[root] = true;
        while let Some(k) = queue.pop_front() {
            order.push(k);
            for nb in grid.neighbors(k) {
                if !seen[nb] {
                    seen[nb] = true;
                    parent[nb] = Some(k);
                    queue.push_back(nb);
                }
            }
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            return Err(Error::DisconnectedGrid(missing));
        }

        let zero = [Complex64::default(); N];
        let root_value = if grid.node(root) == basepoint {
            zero
        } else {
            self.integrate_with(&f, &PathSpec::segment(basepoint, grid.node(root)), singularities)?
        };

        let edges: Vec<Result<[Complex64; N]>> = order[1..]
            .par_iter()
            .map(|&k| {
                let p = parent[k].expect("non-root nodes have parents");
                self.integrate_with(&f, &grid.edge_path(p, k), singularities)
            })
            .collect();

        let mut values = vec![zero; n];
        values[root] = root_value;
        for (&k, edge) in order[1..].iter().zip(edges) {
            let edge = edge?;
            let base = values[parent[k].expect("non-root nodes have parents")];
            let mut v = base;
            for c in 0..N {
                v[c] += edge[c];
            }
            values[k] = v;
        }
        Ok(AntiderivativeField { basepoint, root, values, parent })
    }
}
