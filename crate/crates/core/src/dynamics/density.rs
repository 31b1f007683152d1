use crate::error::{Error, Result};
use crate::model::{SpatialGrid, WavefunctionField};

/// Spatiotemporal density `|ψ(x, t)|²` on a downsampled grid.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMap {
    grid: SpatialGrid,
    stride: usize,
    pub times: Vec<f64>,
    pub x: Vec<f64>,
    /// `rows[i][j]` is the density at `times[i]`, `x[j]`.
    pub rows: Vec<Vec<f64>>,
}

impl DensityMap {
    /// Empty map keeping every `stride`-th grid point.
    pub fn new(grid: SpatialGrid, stride: usize) -> Result<Self> {
        if stride == 0 || !grid.n_points().is_multiple_of(stride) {
            return Err(Error::domain(
                "density_stride",
                format!(
                    "must divide {} and be positive, got {stride}",
                    grid.n_points()
                ),
            ));
        }
        let x = (0..grid.n_points())
            .step_by(stride)
            .map(|j| grid.x(j))
            .collect();
        Ok(DensityMap {
            grid,
            stride,
            times: Vec::new(),
            x,
            rows: Vec::new(),
        })
    }

    pub fn from_snapshots(snapshots: &[(f64, WavefunctionField)], stride: usize) -> Result<Self> {
        let grid = match snapshots.first() {
            Some((_, f)) => *f.grid(),
            None => SpatialGrid::default(),
        };
        let mut map = DensityMap::new(grid, stride)?;
        for (t, f) in snapshots {
            map.push(*t, f)?;
        }
        Ok(map)
    }

    pub fn push(&mut self, t: f64, field: &WavefunctionField) -> Result<()> {
        if *field.grid() != self.grid {
            return Err(Error::domain(
                "snapshot",
                "grid differs from the density map grid",
            ));
        }
        self.times.push(t);
        self.rows.push(
            field
                .amplitudes()
                .iter()
                .step_by(self.stride)
                .map(|z| z.norm_sqr())
                .collect(),
        );
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Spacing of the retained points.
    pub fn dx(&self) -> f64 {
        self.grid.dx() * self.stride as f64
    }

    /// `∫ |ψ|² dx` of slice `i` on the retained points.
    pub fn slice_integral(&self, i: usize) -> f64 {
        self.rows[i].iter().sum::<f64>() * self.dx()
    }

    /// Position of the largest density sample in slice `i`.
    pub fn peak_position(&self, i: usize) -> f64 {
        let j = self.rows[i]
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map_or(0, |(j, _)| j);
        self.x[j]
    }

    /// Pearson correlation between slices `i` and `j`.
    pub fn correlation(&self, i: usize, j: usize) -> f64 {
        pearson(&self.rows[i], &self.rows[j])
    }

    /// `(t, x, density)` triples in time-major order.
    pub fn triples(&self) -> impl Iterator<Item = (f64, f64, f64)> + '_ {
        self.times
            .iter()
            .zip(&self.rows)
            .flat_map(move |(&t, row)| self.x.iter().zip(row).map(move |(&x, &d)| (t, x, d)))
    }
}

fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let (mut sab, mut saa, mut sbb) = (0.0, 0.0, 0.0);
    for (x, y) in a.iter().zip(b) {
        sab += (x - ma) * (y - mb);
        saa += (x - ma).powi(2);
        sbb += (y - mb).powi(2);
    }
    sab / (saa * sbb).sqrt()
}
