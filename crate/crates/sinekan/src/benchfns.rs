//! Benchmark function catalog: five 1D functions on `(0, 1]` and two 2D
//! functions on the plane.
//!
//! The 1D functions stress different failure modes of global sinusoidal
//! bases: essential singularities at the origin (`f1`, `f3`), rapid growth
//! with high-frequency oscillation (`f2`), and limited regularity (`f4`,
//! `f5`). The 2D functions are a double Gaussian well on a paraboloid
//! (`gauss2d`) and the Rosenbrock function (`rosenbrock`).
//!
//! Functions are identified by stable string names (`f1`..`f5`, `gauss2d`,
//! `rosenbrock`) used in CLI arguments and CSV output.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum BenchFnError {
    /// The formula is singular or undefined at the requested point.
    #[error("x = {x} is outside the domain of {func} (requires x > 0)")]
    OutsideDomain { func: &'static str, x: f64 },
    /// `f2`/`f3` sum at least one term.
    #[error("k_terms must be at least 1")]
    ZeroTerms,
    /// Gaussian well widths divide an exponent; zero or negative widths are
    /// rejected at construction.
    #[error("gauss2d requires positive well widths, got c = {c}, d = {d}")]
    NonPositiveWidth { c: f64, d: f64 },
    #[error("unknown benchmark function `{0}`")]
    UnknownFunction(String),
}

/// Which of the five 1D benchmark functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func1dId {
    /// `e^(-1/x) sin(1/x)`: tiny magnitude, essential singularity at 0.
    Func1,
    /// `sum_k e^(kx/pi) sin(kx)`: rapid growth, high-frequency oscillation.
    Func2,
    /// `sum_k e^(-1/x) sin(kx + pi/k)`: linearly spaced phase shifts under a
    /// vanishing envelope.
    Func3,
    /// `x^(1/5) sin(1/x)`: slowly decaying envelope, wild oscillation near 0.
    Func4,
    /// `x^(4/5) sin(1/x)`: faster-decaying envelope, same oscillation.
    Func5,
}

/// A 1D benchmark function. `k_terms` sets the number of summands for `f2`
/// and `f3` (the sums have no canonical upper limit; 5 is the default used
/// throughout) and is ignored by the others.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchFunction1D {
    pub id: Func1dId,
    pub k_terms: u32,
}

pub const DEFAULT_K_TERMS: u32 = 5;

impl BenchFunction1D {
    pub fn new(id: Func1dId, k_terms: u32) -> Result<Self, BenchFnError> {
        if k_terms == 0 {
            return Err(BenchFnError::ZeroTerms);
        }
        Ok(Self { id, k_terms })
    }

    pub fn f1() -> Self {
        Self { id: Func1dId::Func1, k_terms: DEFAULT_K_TERMS }
    }

    pub fn f2() -> Self {
        Self { id: Func1dId::Func2, k_terms: DEFAULT_K_TERMS }
    }

    pub fn f3() -> Self {
        Self { id: Func1dId::Func3, k_terms: DEFAULT_K_TERMS }
    }

    pub fn f4() -> Self {
        Self { id: Func1dId::Func4, k_terms: DEFAULT_K_TERMS }
    }

    pub fn f5() -> Self {
        Self { id: Func1dId::Func5, k_terms: DEFAULT_K_TERMS }
    }

    /// Look up a function by its stable name (`f1`..`f5`).
    pub fn from_name(name: &str, k_terms: u32) -> Result<Self, BenchFnError> {
        let id = match name {
            "f1" => Func1dId::Func1,
            "f2" => Func1dId::Func2,
            "f3" => Func1dId::Func3,
            "f4" => Func1dId::Func4,
            "f5" => Func1dId::Func5,
            other => return Err(BenchFnError::UnknownFunction(other.to_string())),
        };
        Self::new(id, k_terms)
    }

    pub fn name(&self) -> &'static str {
        match self.id {
            Func1dId::Func1 => "f1",
            Func1dId::Func2 => "f2",
            Func1dId::Func3 => "f3",
            Func1dId::Func4 => "f4",
            Func1dId::Func5 => "f5",
        }
    }

    /// Evaluate at `x`.
    ///
    /// `f1`, `f3`, `f4`, and `f5` are singular at the origin and defined here
    /// only for `x > 0`; `f2` is entire and evaluates everywhere. Near
    /// `x = 0.01` the `e^(-1/x)` envelope is around `e^(-100) ~ 4e-44`:
    /// ordinary double arithmetic handles it, and gradual underflow to zero
    /// is the correct limit.
    pub fn eval(&self, x: f64) -> Result<f64, BenchFnError> {
        let singular = !matches!(self.id, Func1dId::Func2);
        if singular && x <= 0.0 {
            return Err(BenchFnError::OutsideDomain { func: self.name(), x });
        }
        let k_max = self.k_terms;
        Ok(match self.id {
            Func1dId::Func1 => (-x.recip()).exp() * x.recip().sin(),
            Func1dId::Func2 => (1..=k_max)
                .map(|k| {
                    let k = k as f64;
                    (k * x / std::f64::consts::PI).exp() * (k * x).sin()
                })
                .sum(),
            Func1dId::Func3 => {
                let envelope = (-x.recip()).exp();
                let oscillation: f64 = (1..=k_max)
                    .map(|k| {
                        let k = k as f64;
                        (k * x + std::f64::consts::PI / k).sin()
                    })
                    .sum();
                envelope * oscillation
            }
            Func1dId::Func4 => x.powf(0.2) * x.recip().sin(),
            Func1dId::Func5 => x.powf(0.8) * x.recip().sin(),
        })
    }
}

/// Which of the two 2D benchmark functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Func2dId {
    /// `x^2 + y^2 - a e^(-((x-1)^2+y^2)/c) - b e^(-((x+1)^2+y^2)/d)`.
    GaussianWells,
    /// `(a-x)^2 + b (y-x^2)^2`.
    Rosenbrock,
}

/// A 2D benchmark function with its shape parameters. `c` and `d` are the
/// Gaussian well widths and are unused by Rosenbrock.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BenchFunction2D {
    pub id: Func2dId,
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl BenchFunction2D {
    /// The double-well surface with the standard parameters
    /// `a = 3/2, b = 1, c = d = 1/2`.
    pub fn gaussian_wells() -> Self {
        Self { id: Func2dId::GaussianWells, a: 1.5, b: 1.0, c: 0.5, d: 0.5 }
    }

    /// Rosenbrock with `a = 1, b = 2`.
    pub fn rosenbrock() -> Self {
        Self { id: Func2dId::Rosenbrock, a: 1.0, b: 2.0, c: 0.0, d: 0.0 }
    }

    pub fn with_params(id: Func2dId, a: f64, b: f64, c: f64, d: f64) -> Result<Self, BenchFnError> {
        if id == Func2dId::GaussianWells && (c <= 0.0 || d <= 0.0) {
            return Err(BenchFnError::NonPositiveWidth { c, d });
        }
        Ok(Self { id, a, b, c, d })
    }

    /// Look up a function by its stable name (`gauss2d` or `rosenbrock`),
    /// with the standard parameters.
    pub fn from_name(name: &str) -> Result<Self, BenchFnError> {
        match name {
            "gauss2d" => Ok(Self::gaussian_wells()),
            "rosenbrock" => Ok(Self::rosenbrock()),
            other => Err(BenchFnError::UnknownFunction(other.to_string())),
        }
    }

    pub fn name(&self) -> &'static str {
        match self.id {
            Func2dId::GaussianWells => "gauss2d",
            Func2dId::Rosenbrock => "rosenbrock",
        }
    }

    /// Evaluate at `(x, y)`. Both formulas are entire, so there is no domain
    /// restriction.
    pub fn eval(&self, x: f64, y: f64) -> f64 {
        match self.id {
            Func2dId::GaussianWells => {
                x * x + y * y
                    - self.a * (-((x - 1.0) * (x - 1.0) + y * y) / self.c).exp()
                    - self.b * (-((x + 1.0) * (x + 1.0) + y * y) / self.d).exp()
            }
            Func2dId::Rosenbrock => {
                let u = self.a - x;
                let v = y - x * x;
                u * u + self.b * v * v
            }
        }
    }
}

/// The five 1D functions with default `k_terms`.
pub fn all_1d() -> [BenchFunction1D; 5] {
    [
        BenchFunction1D::f1(),
        BenchFunction1D::f2(),
        BenchFunction1D::f3(),
        BenchFunction1D::f4(),
        BenchFunction1D::f5(),
    ]
}

/// The two 2D functions with standard parameters.
pub fn all_2d() -> [BenchFunction2D; 2] {
    [BenchFunction2D::gaussian_wells(), BenchFunction2D::rosenbrock()]
}
