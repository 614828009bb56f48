//! Fourth-order central finite differences on a 5-point (or 5×5) stencil.

use num_complex::Complex64;

/// Values that can be combined linearly with real weights.
pub(crate) trait Lin: Copy {
    fn zero() -> Self;
    fn axpy(self, w: f64, x: Self) -> Self;
}

impl Lin for f64 {
    fn zero() -> Self {
        0.0
    }
    fn axpy(self, w: f64, x: Self) -> Self {
        self + w * x
    }
}

impl Lin for Complex64 {
    fn zero() -> Self {
        Complex64::default()
    }
    fn axpy(self, w: f64, x: Self) -> Self {
        self + x * w
    }
}

impl Lin for [f64; 3] {
    fn zero() -> Self {
        [0.0; 3]
    }
    fn axpy(self, w: f64, x: Self) -> Self {
        [self[0] + w * x[0], self[1] + w * x[1], self[2] + w * x[2]]
    }
}

pub(crate) const OFFSETS: [i32; 5] = [-2, -1, 0, 1, 2];
const D1: [f64; 5] = [1.0 / 12.0, -8.0 / 12.0, 0.0, 8.0 / 12.0, -1.0 / 12.0];
const D2: [f64; 5] = [-1.0 / 12.0, 16.0 / 12.0, -30.0 / 12.0, 16.0 / 12.0, -1.0 / 12.0];

/// Values sampled at `(i·h, j·h)` for `i, j ∈ −2..=2`.
pub(crate) struct Grid5<T> {
    pub values: [[T; 5]; 5],
    pub h: f64,
}

impl<T: Lin> Grid5<T> {
    pub fn sample<E>(h: f64, mut f: impl FnMut(i32, i32) -> Result<T, E>) -> Result<Self, E> {
        let mut values = [[T::zero(); 5]; 5];
        for (a, i) in OFFSETS.iter().enumerate() {
            for (b, j) in OFFSETS.iter().enumerate() {
                values[a][b] = f(*i, *j)?;
            }
        }
        Ok(Grid5 { values, h })
    }

    pub fn center(&self) -> T {
        self.values[2][2]
    }

    pub fn d1(&self) -> T {
        (0..5).fold(T::zero(), |acc, a| acc.axpy(D1[a] / self.h, self.values[a][2]))
    }

    pub fn d2(&self) -> T {
        (0..5).fold(T::zero(), |acc, b| acc.axpy(D1[b] / self.h, self.values[2][b]))
    }

    pub fn d11(&self) -> T {
        let s = self.h * self.h;
        (0..5).fold(T::zero(), |acc, a| acc.axpy(D2[a] / s, self.values[a][2]))
    }

    pub fn d22(&self) -> T {
        let s = self.h * self.h;
        (0..5).fold(T::zero(), |acc, b| acc.axpy(D2[b] / s, self.values[2][b]))
    }

    pub fn d12(&self) -> T {
        let s = self.h * self.h;
        let mut acc = T::zero();
        for a in 0..5 {
            for b in 0..5 {
                let w = D1[a] * D1[b];
                if w != 0.0 {
                    acc = acc.axpy(w / s, self.values[a][b]);
                }
            }
        }
        acc
    }
}

/// Fourth-order first derivative of a one-dimensional function.
pub(crate) fn derivative<T: Lin, E>(h: f64, mut f: impl FnMut(f64) -> Result<T, E>) -> Result<T, E> {
    let mut acc = T::zero();
    for (k, i) in OFFSETS.iter().enumerate() {
        if D1[k] != 0.0 {
            acc = acc.axpy(D1[k] / h, f(*i as f64 * h)?);
        }
    }
    Ok(acc)
}
