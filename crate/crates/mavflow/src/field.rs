//! Dense per-pixel grids: depth, building IDs, masks, validity, flow.
//!
//! All grids are row-major with `(i, j)` = (row, column). Flow vectors
//! store `(d_row, d_col)` in pixels, i.e. the first component moves along
//! image rows and the second along columns.

use nalgebra::Vector2;

use crate::error::{Error, Result};

/// Row-major `height x width` grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T: Clone> Grid<T> {
    pub fn filled(width: usize, height: usize, value: T) -> Self {
        Self {
            width,
            height,
            data: vec![value; width * height],
        }
    }

    /// Builds a grid by evaluating `f(i, j)` at every pixel.
    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(width * height);
        for i in 0..height {
            for j in 0..width {
                data.push(f(i, j));
            }
        }
        Self {
            width,
            height,
            data,
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn same_dims<U>(&self, other: &Grid<U>) -> bool {
        self.width == other.width && self.height == other.height
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.width + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: T) {
        self.data[i * self.width + j] = value;
    }

    /// Row-major iteration as `(i, j, &value)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &T)> {
        let w = self.width;
        self.data
            .iter()
            .enumerate()
            .map(move |(k, v)| (k / w, k % w, v))
    }

    pub fn as_slice(&self) -> &[T] {
        &self.data
    }
}

/// Depth along the optical axis in meters; sky encoded as `f64::INFINITY`.
pub type DepthMap = Grid<f64>;

/// Per-pixel building id of the nearest hit, `None` for sky.
pub type IdBuffer = Grid<Option<u32>>;

/// Marks pixels carrying meaningful data (finite depth, usable flow).
pub type ValidityMask = Grid<bool>;

/// Binary obstacle mask: `true` = pixel belongs to the building of concern.
pub type ObstacleMask = Grid<bool>;

impl ObstacleMask {
    /// Number of set pixels.
    pub fn count(&self) -> usize {
        self.as_slice().iter().filter(|&&m| m).count()
    }
}

/// Per-pixel 2-vectors `(d_row, d_col)` in pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowField {
    grid: Grid<Vector2<f64>>,
}

impl FlowField {
    pub fn zeros(width: usize, height: usize) -> Self {
        Self {
            grid: Grid::filled(width, height, Vector2::zeros()),
        }
    }

    pub fn from_fn(width: usize, height: usize, f: impl FnMut(usize, usize) -> Vector2<f64>) -> Self {
        Self {
            grid: Grid::from_fn(width, height, f),
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.grid.width()
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.grid.height()
    }

    pub fn same_dims_flow(&self, other: &FlowField) -> bool {
        self.grid.same_dims(&other.grid)
    }

    pub fn same_dims<U>(&self, other: &Grid<U>) -> bool {
        self.grid.same_dims(other)
    }

    /// Flow vector `(d_row, d_col)` at pixel `(i, j)`.
    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Vector2<f64> {
        *self.grid.get(i, j)
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Vector2<f64>) {
        self.grid.set(i, j, v);
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Vector2<f64>)> {
        self.grid.iter()
    }

    pub fn is_finite(&self) -> bool {
        self.grid.as_slice().iter().all(|v| v.x.is_finite() && v.y.is_finite())
    }

    pub(crate) fn expect_same_dims(&self, other: &FlowField, what: &str) -> Result<()> {
        if !self.same_dims_flow(other) {
            return Err(Error::dims(format!(
                "{what}: {}x{} vs {}x{}",
                self.height(),
                self.width(),
                other.height(),
                other.width()
            )));
        }
        Ok(())
    }
}
