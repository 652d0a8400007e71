//! Gaussian deblurring substrate: banded Toeplitz blur factor, the
//! Kronecker blur operator, PGM image I/O and the Tikhonov-preconditioned
//! restoration pipeline.

mod blur;
mod deblur;
mod pgm;

pub use blur::{blur_matrix, build_blur_factor, BlurOperator, DENSE_BLUR_MAX_N};
pub use deblur::{deblur_atp, test_pattern};
pub use pgm::{read_pgm, write_pgm};

use crate::la::Vector;
use crate::solvers::SolverError;

/// Errors from the imaging pipeline.
#[derive(Debug)]
pub enum ImagingError {
    /// Blur or image parameters outside their domain.
    InvalidSpec(String),
    /// The dense normal-equations path is capped at `N = n^2 <= 4096`.
    TooLargeForDense { n_sq: usize, max: usize },
    Io(std::io::Error),
    MalformedHeader(String),
    TruncatedPayload,
    /// Only 8-bit grayscale PGMs are supported.
    UnsupportedMaxval(u32),
    NotSquare { width: usize, height: usize },
    Solver(SolverError),
}

impl std::fmt::Display for ImagingError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ImagingError::InvalidSpec(s) => write!(f, "invalid blur spec: {s}"),
            ImagingError::TooLargeForDense { n_sq, max } => {
                write!(f, "image has N = {n_sq} pixels; dense restoration caps at {max}")
            }
            ImagingError::Io(e) => write!(f, "i/o error: {e}"),
            ImagingError::MalformedHeader(s) => write!(f, "malformed PGM header: {s}"),
            ImagingError::TruncatedPayload => write!(f, "PGM payload shorter than header promises"),
            ImagingError::UnsupportedMaxval(v) => {
                write!(f, "unsupported PGM maxval {v} (only <= 255)")
            }
            ImagingError::NotSquare { width, height } => {
                write!(f, "image must be square, got {width}x{height}")
            }
            ImagingError::Solver(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for ImagingError {}

impl From<std::io::Error> for ImagingError {
    fn from(e: std::io::Error) -> Self {
        ImagingError::Io(e)
    }
}

impl From<SolverError> for ImagingError {
    fn from(e: SolverError) -> Self {
        ImagingError::Solver(e)
    }
}

/// Gaussian point-spread blur parameters: image side `n`, half-bandwidth
/// `q` of the Toeplitz factor, and the PSF width `sigma` in pixels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlurSpec {
    pub n: usize,
    pub q: usize,
    pub sigma: f64,
}

impl BlurSpec {
    pub fn new(n: usize, q: usize, sigma: f64) -> Result<Self, ImagingError> {
        if n == 0 || q == 0 || q > n {
            return Err(ImagingError::InvalidSpec(format!(
                "need 1 <= q <= n, got q = {q}, n = {n}"
            )));
        }
        if !(sigma > 0.0) {
            return Err(ImagingError::InvalidSpec(format!(
                "need sigma > 0, got {sigma}"
            )));
        }
        Ok(Self { n, q, sigma })
    }
}

/// Square grayscale image with pixels in `[0, 1]`, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct GrayImage {
    n: usize,
    pixels: Vec<f64>,
}

impl GrayImage {
    /// Builds from in-range pixels; panics when a value leaves `[0, 1]`.
    pub fn new(n: usize, pixels: Vec<f64>) -> Self {
        assert_eq!(pixels.len(), n * n, "pixel count must be n^2");
        assert!(
            pixels.iter().all(|p| (0.0..=1.0).contains(p)),
            "pixels must lie in [0, 1]"
        );
        Self { n, pixels }
    }

    /// Builds from arbitrary reals, clamping into `[0, 1]`. Solver
    /// iterates are clamped only here, on output.
    pub fn from_vector_clamped(n: usize, v: &Vector) -> Self {
        assert_eq!(v.len(), n * n);
        Self {
            n,
            pixels: v.as_slice().iter().map(|p| p.clamp(0.0, 1.0)).collect(),
        }
    }

    pub fn side(&self) -> usize {
        self.n
    }

    pub fn pixels(&self) -> &[f64] {
        &self.pixels
    }

    #[inline]
    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.pixels[row * self.n + col]
    }

    /// Row-major vectorization `vec(X)`.
    pub fn to_vector(&self) -> Vector {
        Vector::from_vec(self.pixels.clone())
    }
}
