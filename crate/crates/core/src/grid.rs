//! Output grids on the sphere and mode search.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::sphere::{angle_between, dot, normalize, SpherePoint};

#[derive(Debug, Clone, Copy, PartialEq)]
enum Layout {
    /// Angles 2π(k+½)/n on S^1.
    Circle { n: usize },
    /// `rings` bands uniform in x_0 times `sectors` uniform azimuths on S^2.
    Bands { rings: usize, sectors: usize },
    /// Arbitrary points; neighbours are all points within `radius`.
    Scattered { radius: f64 },
}

/// Points at which a density is reported.
#[derive(Debug, Clone)]
pub struct EvaluationGrid {
    points: Vec<SpherePoint>,
    layout: Layout,
}

impl EvaluationGrid {
    /// `resolution` equally spaced angles on the circle.
    pub fn circle(resolution: usize) -> Result<Self> {
        check_resolution(resolution)?;
        let points = (0..resolution)
            .map(|k| {
                let a = 2.0 * PI * (k as f64 + 0.5) / resolution as f64;
                SpherePoint::new(vec![a.cos(), a.sin()])
            })
            .collect::<Result<_>>()?;
        Ok(EvaluationGrid {
            points,
            layout: Layout::Circle { n: resolution },
        })
    }

    /// Equal-area grid on S^2: `resolution` bands of equal height in x_0,
    /// each with `2·resolution` cells of equal azimuth. Points are cell centres.
    pub fn equal_area(resolution: usize) -> Result<Self> {
        check_resolution(resolution)?;
        let sectors = 2 * resolution;
        let mut points = Vec::with_capacity(resolution * sectors);
        for i in 0..resolution {
            let t = 1.0 - 2.0 * (i as f64 + 0.5) / resolution as f64;
            let s = (1.0 - t * t).sqrt();
            for j in 0..sectors {
                let a = 2.0 * PI * (j as f64 + 0.5) / sectors as f64;
                points.push(SpherePoint::new(vec![t, s * a.cos(), s * a.sin()])?);
            }
        }
        Ok(EvaluationGrid {
            points,
            layout: Layout::Bands {
                rings: resolution,
                sectors,
            },
        })
    }

    /// User-supplied points (any d ≥ 2). Points within `neighbour_radius`
    /// radians of each other count as neighbours for [`Self::local_maxima`].
    pub fn from_points(points: Vec<SpherePoint>, neighbour_radius: f64) -> Result<Self> {
        let Some(first) = points.first() else {
            return Err(Error::config("point grid is empty"));
        };
        let d = first.dim();
        if let Some(p) = points.iter().find(|p| p.dim() != d) {
            return Err(Error::config(format!(
                "grid point of dimension {} in a dimension-{d} grid",
                p.dim()
            )));
        }
        if !(neighbour_radius > 0.0) {
            return Err(Error::config("neighbour radius must be positive"));
        }
        Ok(EvaluationGrid {
            points,
            layout: Layout::Scattered {
                radius: neighbour_radius,
            },
        })
    }

    /// The default grid for dimension d: a circle for d = 2, the equal-area
    /// grid for d = 3. Higher dimensions need explicit points.
    pub fn for_dim(d: usize, resolution: usize) -> Result<Self> {
        match d {
            2 => Self::circle(resolution),
            3 => Self::equal_area(resolution),
            _ => Err(Error::config(format!(
                "no built-in grid for d = {d}; supply grid points"
            ))),
        }
    }

    pub fn dim(&self) -> usize {
        self.points[0].dim()
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[SpherePoint] {
        &self.points
    }

    fn neighbours(&self, k: usize) -> Vec<usize> {
        match self.layout {
            Layout::Circle { n } => vec![(k + n - 1) % n, (k + 1) % n],
            Layout::Bands { rings, sectors } => {
                let (i, j) = (k / sectors, k % sectors);
                let mut out = Vec::with_capacity(8);
                for di in [-1i64, 0, 1] {
                    let ii = i as i64 + di;
                    if ii < 0 || ii >= rings as i64 {
                        continue;
                    }
                    let ii = ii as usize;
                    if (ii == 0 || ii == rings - 1) && di != 0 {
                        // The polar caps touch every cell of the adjacent band.
                        out.extend((0..sectors).map(|jj| ii * sectors + jj));
                        continue;
                    }
                    if ii == i && (i == 0 || i == rings - 1) {
                        out.extend((0..sectors).filter(|&jj| jj != j).map(|jj| ii * sectors + jj));
                        continue;
                    }
                    for dj in [sectors - 1, 0, 1] {
                        let jj = (j + dj) % sectors;
                        if di == 0 && dj == 0 {
                            continue;
                        }
                        out.push(ii * sectors + jj);
                    }
                }
                out
            }
            Layout::Scattered { radius } => (0..self.points.len())
                .filter(|&m| m != k && angle_between(&self.points[k], &self.points[m]) <= radius)
                .collect(),
        }
    }

    /// Indices of strict-or-tied local maxima of `values` (one value per grid
    /// point), sorted by decreasing value. Ties are broken by index so a flat
    /// plateau yields a single maximum.
    pub fn local_maxima(&self, values: &[f64]) -> Result<Vec<usize>> {
        if values.len() != self.points.len() {
            return Err(Error::config(format!(
                "{} values for a grid of {} points",
                values.len(),
                self.points.len()
            )));
        }
        let mut maxima: Vec<usize> = (0..values.len())
            .filter(|&k| {
                self.neighbours(k).iter().all(|&m| {
                    values[k] > values[m] || (values[k] == values[m] && k < m)
                })
            })
            .collect();
        maxima.sort_by(|&a, &b| values[b].total_cmp(&values[a]).then(a.cmp(&b)));
        Ok(maxima)
    }
}

fn check_resolution(resolution: usize) -> Result<()> {
    if resolution < 4 {
        return Err(Error::config(format!(
            "grid resolution must be >= 4, got {resolution}"
        )));
    }
    Ok(())
}

/// Orthonormal basis of the tangent space at `p`.
fn tangent_basis(p: &[f64]) -> Vec<Vec<f64>> {
    let d = p.len();
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d - 1);
    for axis in 0..d {
        if basis.len() == d - 1 {
            break;
        }
        let mut v = vec![0.0; d];
        v[axis] = 1.0;
        let c = dot(&v, p);
        v.iter_mut().zip(p).for_each(|(vi, pi)| *vi -= c * pi);
        for e in &basis {
            let c = dot(&v, e);
            v.iter_mut().zip(e).for_each(|(vi, ei)| *vi -= c * ei);
        }
        let n = dot(&v, &v).sqrt();
        if n > 1e-6 {
            v.iter_mut().for_each(|vi| *vi /= n);
            basis.push(v);
        }
    }
    basis
}

/// Compass search for a local maximum of `f` on the sphere, starting at
/// `start` with geodesic step `step` and stopping once the step is below `tol`.
pub fn refine_mode<F: Fn(&[f64]) -> f64>(f: F, start: &SpherePoint, step: f64, tol: f64) -> SpherePoint {
    let mut best = start.clone();
    let mut value = f(&best);
    let mut step = step;
    while step > tol {
        let mut moved = false;
        for e in tangent_basis(&best) {
            for sign in [1.0, -1.0] {
                let candidate: Vec<f64> = best
                    .iter()
                    .zip(&e)
                    .map(|(p, ei)| p * step.cos() + sign * ei * step.sin())
                    .collect();
                let Ok(candidate) = normalize(&candidate) else {
                    continue;
                };
                let v = f(&candidate);
                if v > value {
                    value = v;
                    best = candidate;
                    moved = true;
                    break;
                }
            }
            if moved {
                break;
            }
        }
        if !moved {
            step /= 2.0;
        }
    }
    best
}

/// Local maxima of `f` found on `grid` and refined by [`refine_mode`],
/// keeping those whose value is at least `relative_floor` times the largest
/// and dropping refined points within `merge_radius` of a better one.
pub fn find_modes<F: Fn(&[f64]) -> f64 + Sync>(
    f: F,
    grid: &EvaluationGrid,
    relative_floor: f64,
    merge_radius: f64,
) -> Result<Vec<(SpherePoint, f64)>> {
    use rayon::prelude::*;
    let values: Vec<f64> = grid.points().par_iter().map(|p| f(p)).collect();
    let maxima = grid.local_maxima(&values)?;
    let top = maxima.first().map(|&k| values[k]).unwrap_or(0.0);
    if top <= 0.0 {
        return Ok(Vec::new());
    }
    let spacing = typical_spacing(grid);
    let mut refined: Vec<(SpherePoint, f64)> = maxima
        .into_iter()
        .filter(|&k| values[k] >= relative_floor * top)
        .map(|k| {
            let p = refine_mode(&f, &grid.points()[k], spacing / 2.0, 1e-4);
            let v = f(&p);
            (p, v)
        })
        .collect();
    refined.sort_by(|a, b| b.1.total_cmp(&a.1));
    let mut out: Vec<(SpherePoint, f64)> = Vec::new();
    for (p, v) in refined {
        if out.iter().all(|(q, _)| q.angle_to(&p) > merge_radius) {
            out.push((p, v));
        }
    }
    Ok(out)
}

fn typical_spacing(grid: &EvaluationGrid) -> f64 {
    match grid.layout {
        Layout::Circle { n } => 2.0 * PI / n as f64,
        Layout::Bands { rings, .. } => PI / rings as f64,
        Layout::Scattered { radius } => radius,
    }
}
