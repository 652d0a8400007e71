//! Solvers and analysis tools for ill-conditioned linear systems `Ax = b`
//! whose singular values decay gradually to zero (discrete ill-posed
//! problems), built around a two-phase idea: solve a regularized system
//! once, then reconstruct the unregularized solution by evaluating the
//! matrix function `f(z) = 1 + lambda/z` with the Arnoldi method.
//!
//! The crate provides:
//!
//! * [`la`] — a minimal dense linear-algebra kernel (LU, Cholesky, QR,
//!   Jacobi eigensolver, condition estimation);
//! * [`problems`] — generators for classical ill-posed test problems,
//!   a reproducible Gaussian noise model and regularization operators;
//! * [`krylov`] — Arnoldi factorization engines (modified Gram-Schmidt
//!   and Householder) over abstract linear operators;
//! * [`solvers`] — the ASP (shift-preconditioned) and ATP (Tikhonov-
//!   preconditioned) Arnoldi reconstruction methods plus GMRES baselines;
//! * [`analysis`] — filter factors, error bounds, decay diagnostics and
//!   shift-selection heuristics;
//! * [`imaging`] — a Gaussian-blur deblurring pipeline with PGM I/O.
//!
//! # Storage convention
//!
//! All dense matrices are stored **row-major**: entry `(i, j)` of an
//! `rows x cols` matrix lives at `data[i * cols + j]`. Every routine in
//! this crate consumes and produces that layout.
//!
//! # Reproducibility
//!
//! All randomness flows through [`rng::Rng64`], a fixed xorshift64*
//! generator seeded explicitly, so any run is reproducible bit for bit
//! from its seed.

pub mod analysis;
pub mod imaging;
pub mod krylov;
pub mod la;
pub mod problems;
pub mod rng;
pub mod solvers;
