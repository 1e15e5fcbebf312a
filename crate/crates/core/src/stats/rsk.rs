//! RSK shapes and the rescaled height function of a Young diagram.

use crate::error::{Error, Result};
use crate::limits::omega;
use crate::partition::Partition;
use crate::perm::Permutation;

/// Shape of the insertion tableau under row insertion.
pub fn rsk_shape(sigma: &Permutation) -> Partition {
    let mut rows: Vec<Vec<u32>> = Vec::new();
    for &v in sigma.as_zero_based() {
        let mut x = v;
        let mut placed = false;
        for row in rows.iter_mut() {
            let k = row.partition_point(|&y| y < x);
            if k == row.len() {
                row.push(x);
                placed = true;
                break;
            }
            std::mem::swap(&mut row[k], &mut x);
        }
        if !placed {
            rows.push(vec![x]);
        }
    }
    Partition::from_unsorted(rows.iter().map(Vec::len).collect())
}

/// The boundary of a Young diagram drawn in rotated coordinates `u = x − y`, `v = x + y`
/// (unit boxes, first row along the `x` axis). Outside its breakpoints it equals `|u|`.
#[derive(Debug, Clone, PartialEq)]
pub struct HeightFunction {
    shape: Partition,
    breakpoints: Vec<(i64, i64)>,
}

impl HeightFunction {
    pub fn new(shape: &Partition) -> Self {
        let parts = shape.parts();
        let l = parts.len() as i64;
        let mut pts = vec![(-l, l)];
        let (mut x, mut y) = (0i64, l);
        for k in (0..parts.len()).rev() {
            let target = parts[k] as i64;
            if target > x {
                x = target;
                pts.push((x - y, x + y));
            }
            y -= 1;
            pts.push((x - y, x + y));
        }
        Self { shape: shape.clone(), breakpoints: pts }
    }

    pub fn shape(&self) -> &Partition {
        &self.shape
    }

    /// Corners `(u, v)` of the boundary path, from `(−ℓ, ℓ)` to `(λ₁, λ₁)`.
    pub fn breakpoints(&self) -> &[(i64, i64)] {
        &self.breakpoints
    }

    /// Unscaled height at `u`.
    pub fn eval(&self, u: f64) -> f64 {
        let pts = &self.breakpoints;
        let (u0, _) = pts[0];
        let (u1, _) = pts[pts.len() - 1];
        if u <= u0 as f64 || u >= u1 as f64 {
            return u.abs();
        }
        let k = pts.partition_point(|&(pu, _)| (pu as f64) <= u);
        let (a, va) = pts[k - 1];
        let (b, vb) = pts[k];
        va as f64 + (u - a as f64) * (vb - va) as f64 / (b - a) as f64
    }

    /// The diagram rescaled to total area ½ above `|s|`, matching the Ω curve:
    /// `s ↦ L(2√n·s)/(2√n)`.
    pub fn scaled(&self, s: f64) -> f64 {
        let c = 2.0 * (self.shape.size() as f64).sqrt();
        self.eval(c * s) / c
    }

    /// Area between the unscaled profile and `|u|`, in units of boxes.
    pub fn area(&self) -> f64 {
        let pts = &self.breakpoints;
        let trapezoid: f64 = pts
            .windows(2)
            .map(|w| {
                let ((a, va), (b, vb)) = (w[0], w[1]);
                let abs_int = |u: f64| u * u.abs() / 2.0;
                ((va + vb) as f64 / 2.0) * (b - a) as f64 - (abs_int(b as f64) - abs_int(a as f64))
            })
            .sum();
        trapezoid / 2.0
    }
}

/// sup_s |L(2√n·s)/(2√n) − Ω(s)|.
///
/// On each linear piece the profile has slope ±1 while |Ω′| < 1, so the difference is
/// monotone there and the supremum is attained at a breakpoint.
pub fn height_sup_distance(shape: &Partition, n: usize) -> Result<f64> {
    if shape.size() != n || n == 0 {
        return Err(Error::SizeMismatch { left: n, right: shape.size() });
    }
    let h = HeightFunction::new(shape);
    let c = 2.0 * (n as f64).sqrt();
    Ok(h.breakpoints()
        .iter()
        .map(|&(u, v)| {
            let s = u as f64 / c;
            (v as f64 / c - omega(s)).abs()
        })
        .fold(0.0, f64::max))
}
