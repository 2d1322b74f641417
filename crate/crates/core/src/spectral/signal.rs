use num_complex::Complex;

use crate::error::{invalid, Result};
use crate::scalar::{cst, Real};

/// A finitely supported function on the integers: `values[i]` sits at `offset + i`.
#[derive(Debug, Clone)]
pub struct Signal<T: Real> {
    offset: i64,
    values: Vec<Complex<T>>,
}

impl<T: Real> Signal<T> {
    pub fn new(offset: i64, values: Vec<Complex<T>>) -> Self {
        if values.is_empty() {
            return Self::empty();
        }
        Self { offset, values }
    }

    pub fn empty() -> Self {
        Self { offset: 0, values: Vec::new() }
    }

    pub fn from_real(offset: i64, values: &[T]) -> Self {
        Self::new(offset, values.iter().map(|&v| Complex::new(v, T::zero())).collect())
    }

    /// The unit mass at `at`.
    pub fn delta(at: i64) -> Self {
        Self::new(at, vec![Complex::new(T::one(), T::zero())])
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn values(&self) -> &[Complex<T>] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Half-open index range `[offset, offset + len)`.
    pub fn range(&self) -> std::ops::Range<i64> {
        self.offset..self.offset + self.values.len() as i64
    }

    pub fn get(&self, x: i64) -> Complex<T> {
        let i = x - self.offset;
        if i < 0 || i >= self.values.len() as i64 {
            Complex::new(T::zero(), T::zero())
        } else {
            self.values[i as usize]
        }
    }

    /// Drops exact zeros at both ends.
    pub fn trimmed(&self) -> Self {
        let zero = Complex::new(T::zero(), T::zero());
        let Some(first) = self.values.iter().position(|v| *v != zero) else {
            return Self::empty();
        };
        let last = self.values.iter().rposition(|v| *v != zero).unwrap();
        Self::new(self.offset + first as i64, self.values[first..=last].to_vec())
    }

    /// Width of the trimmed support.
    pub fn support_width(&self) -> usize {
        self.trimmed().len()
    }

    pub fn translate(&self, h: i64) -> Self {
        Self::new(self.offset + h, self.values.clone())
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self::new(self.offset, self.values.iter().map(|v| v * c).collect())
    }

    pub fn map(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Self {
        Self::new(self.offset, self.values.iter().map(|&v| f(v)).collect())
    }

    pub fn l2_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc + v.norm_sqr()).sqrt()
    }

    pub fn sup_norm(&self) -> T {
        self.values.iter().fold(T::zero(), |acc, v| acc.max(v.norm()))
    }

    /// `max_x |self(x) - other(x)|` over the union of supports.
    pub fn max_abs_diff(&self, other: &Self) -> T {
        let lo = self.offset.min(other.offset);
        let hi = self.range().end.max(other.range().end);
        (lo..hi).fold(T::zero(), |acc, x| acc.max((self.get(x) - other.get(x)).norm()))
    }

    /// Restriction to `[lo, hi)`.
    pub fn window(&self, lo: i64, hi: i64) -> Self {
        Self::new(lo, (lo..hi).map(|x| self.get(x)).collect())
    }
}

impl<T: Real> PartialEq for Signal<T> {
    fn eq(&self, other: &Self) -> bool {
        let (a, b) = (self.trimmed(), other.trimmed());
        a.offset == b.offset && a.values == b.values
    }
}

/// Provenance of a [`LambdaGrid`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridProvenance {
    Uniform(usize),
    Dyadic { j_min: u32, j_max: u32, per_slab: usize },
    Explicit,
}

/// A finite, strictly increasing set of modulation parameters in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaGrid<T: Real> {
    points: Vec<T>,
    provenance: GridProvenance,
}

impl<T: Real> LambdaGrid<T> {
    /// `k/n` for `k = 0..n`.
    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("uniform grid needs n >= 1");
        }
        let nn = cst::<T>(n as f64);
        let points = (0..n).map(|k| cst::<T>(k as f64) / nn).collect();
        Ok(Self { points, provenance: GridProvenance::Uniform(n) })
    }

    /// `per_slab` geometrically spaced points in each slab `[2^{-j-1}, 2^{-j})`, `j_min <= j <= j_max`.
    pub fn dyadic(j_min: u32, j_max: u32, per_slab: usize) -> Result<Self> {
        if j_min > j_max || per_slab == 0 || j_max > 1000 {
            return invalid("dyadic grid needs j_min <= j_max <= 1000 and per_slab >= 1");
        }
        let mut points = Vec::new();
        for j in (j_min..=j_max).rev() {
            for i in 0..per_slab {
                let e = -(j as f64) - 1.0 + i as f64 / per_slab as f64;
                points.push(cst(2f64.powf(e)));
            }
        }
        Ok(Self { points, provenance: GridProvenance::Dyadic { j_min, j_max, per_slab } })
    }

    /// The default grid: eight points per dyadic slab down to `2^{-j_max-1}`.
    pub fn dyadic_default(j_max: u32) -> Result<Self> {
        Self::dyadic(0, j_max, 8)
    }

    pub fn explicit(points: Vec<T>) -> Result<Self> {
        if points.iter().any(|p| !(*p >= T::zero() && *p <= T::one())) {
            return invalid("grid points must lie in [0, 1]");
        }
        if points.windows(2).any(|w| !(w[0] < w[1])) {
            return invalid("grid points must be strictly increasing");
        }
        Ok(Self { points, provenance: GridProvenance::Explicit })
    }

    pub fn points(&self) -> &[T] {
        &self.points
    }

    pub fn provenance(&self) -> GridProvenance {
        self.provenance
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// The grid with twice the resolution, used to certify stability of a discretised sup.
    pub fn refine(&self) -> Result<Self> {
        match self.provenance {
            GridProvenance::Uniform(n) => Self::uniform(2 * n),
            GridProvenance::Dyadic { j_min, j_max, per_slab } => Self::dyadic(j_min, j_max, 2 * per_slab),
            GridProvenance::Explicit => {
                let mut pts = Vec::with_capacity(2 * self.points.len());
                for w in self.points.windows(2) {
                    pts.push(w[0]);
                    pts.push((w[0] + w[1]) * cst(0.5));
                }
                pts.extend(self.points.last().copied());
                Self::explicit(pts)
            }
        }
    }

    /// Points satisfying `keep`, as an explicit grid (possibly empty).
    pub fn filter(&self, keep: impl Fn(T) -> bool) -> Self {
        Self { points: self.points.iter().copied().filter(|&p| keep(p)).collect(), provenance: GridProvenance::Explicit }
    }
}
