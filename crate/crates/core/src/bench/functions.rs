//! Self-contained benchmark suite: classic base functions composed with a
//! random shift of the optimum and an optional random rotation, so the
//! whole suite is reproducible from a seed with the optimum value pinned at
//! zero by construction.

use std::f64::consts::{E, TAU};

use crate::rng::RngStream;
use crate::{Problem, Scalar};

/// Where Schwefel 2.26 attains its minimum in every coordinate.
const SCHWEFEL_OPT: f64 = 420.968746;
const SCHWEFEL_NORM: f64 = 418.9828872724338;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseFunction {
    Sphere,
    Rosenbrock,
    Rastrigin,
    Ackley,
    Griewank,
    Schwefel226,
    RotatedEllipsoid,
}

impl BaseFunction {
    pub const ALL: [BaseFunction; 7] = [
        BaseFunction::Sphere,
        BaseFunction::Rosenbrock,
        BaseFunction::Rastrigin,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::Schwefel226,
        BaseFunction::RotatedEllipsoid,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            BaseFunction::Sphere => "sphere",
            BaseFunction::Rosenbrock => "rosenbrock",
            BaseFunction::Rastrigin => "rastrigin",
            BaseFunction::Ackley => "ackley",
            BaseFunction::Griewank => "griewank",
            BaseFunction::Schwefel226 => "schwefel",
            BaseFunction::RotatedEllipsoid => "rotated-ellipsoid",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|b| b.name() == name)
    }

    /// Conventional symmetric search domain per base.
    pub fn bounds(&self) -> (f64, f64) {
        match self {
            BaseFunction::Sphere | BaseFunction::RotatedEllipsoid => (-100.0, 100.0),
            BaseFunction::Rosenbrock => (-30.0, 30.0),
            BaseFunction::Rastrigin => (-5.12, 5.12),
            BaseFunction::Ackley => (-32.768, 32.768),
            BaseFunction::Griewank => (-600.0, 600.0),
            BaseFunction::Schwefel226 => (-500.0, 500.0),
        }
    }

    /// The point where the raw base function is minimal.
    pub fn optimum_point<T: Scalar>(&self, dim: usize) -> Vec<T> {
        let c = match self {
            BaseFunction::Rosenbrock => 1.0,
            BaseFunction::Schwefel226 => SCHWEFEL_OPT,
            _ => 0.0,
        };
        vec![T::from_f64_c(c); dim]
    }

    /// Raw base value at z (before shift/rotation composition).
    pub fn raw<T: Scalar>(&self, z: &[T]) -> T {
        match self {
            BaseFunction::Sphere => z.iter().fold(T::zero(), |a, &v| a + v * v),
            BaseFunction::Rosenbrock => {
                let c100 = T::from_f64_c(100.0);
                let mut acc = T::zero();
                for w in z.windows(2) {
                    let gap = w[1] - w[0] * w[0];
                    let off = T::one() - w[0];
                    acc = acc + c100 * gap * gap + off * off;
                }
                acc
            }
            BaseFunction::Rastrigin => {
                let ten = T::from_f64_c(10.0);
                let tau = T::from_f64_c(TAU);
                let mut acc = ten * T::from_usize_c(z.len());
                for &v in z {
                    acc = acc + v * v - ten * (tau * v).cos();
                }
                acc
            }
            BaseFunction::Ackley => {
                let d = T::from_usize_c(z.len());
                let sum_sq = z.iter().fold(T::zero(), |a, &v| a + v * v);
                let sum_cos = z
                    .iter()
                    .fold(T::zero(), |a, &v| a + (T::from_f64_c(TAU) * v).cos());
                let c20 = T::from_f64_c(20.0);
                -c20 * (-T::from_f64_c(0.2) * (sum_sq / d).sqrt()).exp() - (sum_cos / d).exp()
                    + c20
                    + T::from_f64_c(E)
            }
            BaseFunction::Griewank => {
                let sum = z.iter().fold(T::zero(), |a, &v| a + v * v) / T::from_f64_c(4000.0);
                let mut product = T::one();
                for (j, &v) in z.iter().enumerate() {
                    product = product * (v / T::from_f64_c(((j + 1) as f64).sqrt())).cos();
                }
                sum - product + T::one()
            }
            BaseFunction::Schwefel226 => {
                let norm = T::from_f64_c(SCHWEFEL_NORM);
                let limit = T::from_f64_c(500.0);
                let mut acc = T::zero();
                for &v in z {
                    let contribution = if v.abs() <= limit {
                        v * v.abs().sqrt().sin()
                    } else {
                        // outside the classic domain the oscillation is
                        // replaced by a penalty so the minimum stays inside
                        let over = v.abs() - limit;
                        -over * over / T::from_f64_c(1e4)
                    };
                    acc = acc + norm - contribution;
                }
                acc
            }
            BaseFunction::RotatedEllipsoid => {
                let d = z.len();
                let mut acc = T::zero();
                for (j, &v) in z.iter().enumerate() {
                    let exponent = if d > 1 { 6.0 * j as f64 / (d as f64 - 1.0) } else { 0.0 };
                    acc = acc + T::from_f64_c(10f64.powf(exponent)) * v * v;
                }
                acc
            }
        }
    }
}

/// A benchmark instance: base function, shifted optimum, optional rotation.
/// Evaluation maps x through z = R (x - shift) + z_base and reports
/// raw(z) - raw(z_base), so the optimum value is exactly zero at x = shift.
#[derive(Debug, Clone)]
pub struct BenchFunction<T: Scalar> {
    base: BaseFunction,
    dim: usize,
    shift: Vec<T>,
    rotation: Option<Vec<Vec<T>>>,
    label: String,
}

impl<T: Scalar> BenchFunction<T> {
    pub fn new(
        base: BaseFunction,
        dim: usize,
        shift: Option<Vec<T>>,
        rotation: Option<Vec<Vec<T>>>,
    ) -> Self {
        assert!(dim >= 1);
        let tag = match (&shift, &rotation) {
            (None, None) => "",
            (Some(_), None) => "-s",
            (None, Some(_)) => "-r",
            (Some(_), Some(_)) => "-sr",
        };
        let shift = shift.unwrap_or_else(|| base.optimum_point(dim));
        if let Some(r) = &rotation {
            assert_eq!(r.len(), dim);
        }
        Self {
            label: format!("{}{}", base.name(), tag),
            base,
            dim,
            shift,
            rotation,
        }
    }

    /// Build an instance from a seeded stream: the shift is uniform within
    /// the central 80% of the domain, the rotation (when requested) comes
    /// from QR-orthogonalizing a Gaussian matrix.
    pub fn make(
        base: BaseFunction,
        dim: usize,
        shifted: bool,
        rotated: bool,
        rng: &mut RngStream,
    ) -> Self {
        assert!(dim >= 2);
        let (lo, hi) = base.bounds();
        let margin = 0.1 * (hi - lo);
        let shift = shifted.then(|| {
            (0..dim)
                .map(|_| rng.uniform_in(T::from_f64_c(lo + margin), T::from_f64_c(hi - margin)))
                .collect()
        });
        let rotation = rotated.then(|| random_rotation(dim, rng));
        Self::new(base, dim, shift, rotation)
    }

    pub fn base(&self) -> BaseFunction {
        self.base
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn shift(&self) -> &[T] {
        &self.shift
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn evaluate(&self, x: &[T]) -> T {
        debug_assert_eq!(x.len(), self.dim);
        let centered: Vec<T> = x.iter().zip(&self.shift).map(|(&a, &s)| a - s).collect();
        let z_opt = self.base.optimum_point::<T>(self.dim);
        let mut z = match &self.rotation {
            Some(r) => apply_rotation(r, &centered),
            None => centered,
        };
        for (zj, opt) in z.iter_mut().zip(&z_opt) {
            *zj = *zj + *opt;
        }
        self.base.raw(&z) - self.base.raw(&z_opt)
    }

    pub fn to_problem(&self) -> Problem<T> {
        let (lo, hi) = self.base.bounds();
        let instance = self.clone();
        Problem::with_uniform_bounds(
            self.label.clone(),
            self.dim,
            T::from_f64_c(lo),
            T::from_f64_c(hi),
            T::zero(),
            move |x| instance.evaluate(x),
        )
    }
}

/// Random orthogonal matrix: modified Gram-Schmidt on a Gaussian matrix.
pub fn random_rotation<T: Scalar>(dim: usize, rng: &mut RngStream) -> Vec<Vec<T>> {
    loop {
        let mut rows: Vec<Vec<T>> =
            (0..dim).map(|_| (0..dim).map(|_| rng.normal()).collect()).collect();
        let mut ok = true;
        'gram_schmidt: for i in 0..dim {
            for k in 0..i {
                let proj = dot(&rows[i], &rows[k]);
                // split borrow: copy the already-normalized row
                let prev = rows[k].clone();
                for (a, &b) in rows[i].iter_mut().zip(&prev) {
                    *a = *a - proj * b;
                }
            }
            let norm = dot(&rows[i], &rows[i]).sqrt();
            if norm.as_f64() < 1e-8 {
                // numerically degenerate draw; retry with fresh randomness
                ok = false;
                break 'gram_schmidt;
            }
            for a in rows[i].iter_mut() {
                *a = *a / norm;
            }
        }
        if ok {
            return rows;
        }
    }
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (&x, &y)| acc + x * y)
}

fn apply_rotation<T: Scalar>(r: &[Vec<T>], x: &[T]) -> Vec<T> {
    r.iter().map(|row| dot(row, x)).collect()
}
