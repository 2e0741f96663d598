//! Pilot design and least-squares channel estimation.
//!
//! Pilots are constellation-valued columns whose rows form an orthogonal
//! set, so the Gram matrix is `T_p I` and the LS estimate
//! `H_hat = Y_p X_p^H (X_p X_p^H)^{-1}` reduces to a scaled correlation.
//! Pilots travel through the same impairment chain as data, so the estimate
//! absorbs whatever bias the front ends introduce.

use num_complex::Complex64;

use crate::constellation::SymbolBook;
use crate::linalg::{ls_solve, ComplexMatrix};
use crate::{Error, Result};

/// Transmitted pilot matrix and the matching received block.
#[derive(Debug, Clone)]
pub struct PilotBlock {
    x_p: ComplexMatrix,
    y_p: ComplexMatrix,
}

impl PilotBlock {
    pub fn new(x_p: ComplexMatrix, y_p: ComplexMatrix) -> Result<Self> {
        if x_p.cols() != y_p.cols() {
            return Err(Error::invalid(format!(
                "pilot matrices disagree on slot count: {} vs {}",
                x_p.cols(),
                y_p.cols()
            )));
        }
        if x_p.cols() < x_p.rows() {
            return Err(Error::invalid(format!(
                "need at least Nt = {} pilot slots, got {}",
                x_p.rows(),
                x_p.cols()
            )));
        }
        Ok(PilotBlock { x_p, y_p })
    }

    pub fn x_p(&self) -> &ComplexMatrix {
        &self.x_p
    }

    pub fn y_p(&self) -> &ComplexMatrix {
        &self.y_p
    }
}

/// Builds an `Nt x T_p` orthogonal pilot matrix from the first constellation
/// point and a Hadamard sign pattern: `X_p X_p^H = T_p I`.
///
/// The sign pattern repeats an `Nt x Nt` Sylvester block, so `Nt` must be a
/// power of two and `T_p` a multiple of `Nt`.
pub fn make_pilots(book: &SymbolBook, nt: usize, t_p: usize) -> Result<ComplexMatrix> {
    if nt != book.nt() {
        return Err(Error::invalid(format!(
            "pilot antenna count {nt} does not match the symbol book ({})",
            book.nt()
        )));
    }
    if t_p < nt {
        return Err(Error::invalid(format!(
            "need at least Nt = {nt} pilot slots, got {t_p}"
        )));
    }
    if t_p % nt != 0 {
        return Err(Error::invalid(format!(
            "pilot length {t_p} must be a multiple of Nt = {nt}"
        )));
    }
    if !nt.is_power_of_two() {
        return Err(Error::invalid(format!(
            "orthogonal sign patterns exist only for power-of-two antenna counts, got {nt}"
        )));
    }
    let base = book.alphabet()[0];
    let negated = book
        .alphabet()
        .iter()
        .position(|a| (a + base).norm() < 1e-12)
        .ok_or_else(|| Error::invalid("constellation lacks the negated base point"))?;
    let neg = book.alphabet()[negated];
    Ok(ComplexMatrix::from_fn(nt, t_p, |r, c| {
        if sylvester_sign(r, c % nt) {
            base
        } else {
            neg
        }
    }))
}

/// Entry sign of the Sylvester Hadamard matrix: `+` iff `popcount(r & c)` is
/// even.
fn sylvester_sign(r: usize, c: usize) -> bool {
    (r & c).count_ones() % 2 == 0
}

/// Least-squares channel estimate `Y_p X_p^H (X_p X_p^H)^{-1}`.
pub fn ls_estimate(block: &PilotBlock) -> Result<ComplexMatrix> {
    ls_solve(block.x_p(), block.y_p())
}
