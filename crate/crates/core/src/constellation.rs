//! Modulation alphabet and the enumerated symbol-vector set.
//!
//! A [`SymbolBook`] holds the unit-energy constellation and every
//! length-`Nt` symbol vector over it, indexed lexicographically with antenna
//! 0 as the most significant digit. Indices are 0-based throughout the crate
//! and run over `0..K` with `K = M^Nt`.

use num_complex::Complex64;

use crate::linalg::ComplexVector;
use crate::{Error, Result};

const MAX_VECTOR_SET: usize = 1 << 24;

/// Constellation plus the enumerated symbol-vector set.
#[derive(Debug, Clone)]
pub struct SymbolBook {
    alphabet: Vec<Complex64>,
    nt: usize,
    vectors: Vec<ComplexVector>,
}

impl SymbolBook {
    fn new(alphabet: Vec<Complex64>, nt: usize) -> Result<Self> {
        if nt == 0 {
            return Err(Error::invalid("need at least one transmit antenna"));
        }
        let m = alphabet.len();
        let k = m
            .checked_pow(nt as u32)
            .filter(|&k| k <= MAX_VECTOR_SET)
            .ok_or_else(|| {
                Error::invalid(format!("symbol-vector set {m}^{nt} is too large to enumerate"))
            })?;
        let vectors = (0..k)
            .map(|idx| {
                ComplexVector::from_fn(nt, |antenna| {
                    alphabet[digit_at(idx, m, nt, antenna)]
                })
            })
            .collect();
        Ok(SymbolBook {
            alphabet,
            nt,
            vectors,
        })
    }

    /// 4-QAM over `nt` antennas: alphabet `{(+-1 +- j)/sqrt(2)}`, `K = 4^nt`.
    pub fn make_qam4(nt: usize) -> Result<Self> {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let alphabet = vec![
            Complex64::new(s, s),
            Complex64::new(s, -s),
            Complex64::new(-s, s),
            Complex64::new(-s, -s),
        ];
        SymbolBook::new(alphabet, nt)
    }

    pub fn alphabet(&self) -> &[Complex64] {
        &self.alphabet
    }

    pub fn modulation_order(&self) -> usize {
        self.alphabet.len()
    }

    pub fn nt(&self) -> usize {
        self.nt
    }

    /// Number of symbol vectors, `K = M^Nt`.
    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn index_to_vector(&self, k: usize) -> Result<&ComplexVector> {
        self.vectors
            .get(k)
            .ok_or_else(|| Error::invalid(format!("symbol index {k} out of range 0..{}", self.len())))
    }

    /// Unchecked lookup for hot loops; `k` must be in `0..K`.
    pub fn vector(&self, k: usize) -> &ComplexVector {
        &self.vectors[k]
    }

    pub fn vectors(&self) -> &[ComplexVector] {
        &self.vectors
    }

    pub fn vector_to_index(&self, x: &ComplexVector) -> Result<usize> {
        if x.len() != self.nt {
            return Err(Error::invalid(format!(
                "vector length {} does not match Nt = {}",
                x.len(),
                self.nt
            )));
        }
        let m = self.alphabet.len();
        let mut idx = 0usize;
        for antenna in 0..self.nt {
            let entry = x[antenna];
            let digit = self
                .alphabet
                .iter()
                .position(|a| (a - entry).norm() < 1e-12)
                .ok_or_else(|| {
                    Error::invalid(format!("entry {entry} is not a constellation point"))
                })?;
            idx = idx * m + digit;
        }
        Ok(idx)
    }

    /// Number of antenna positions where the two indexed vectors differ.
    pub fn symbol_errors(&self, k_true: usize, k_hat: usize) -> usize {
        debug_assert!(k_true < self.len() && k_hat < self.len());
        let m = self.alphabet.len();
        let mut diff = 0;
        let (mut a, mut b) = (k_true, k_hat);
        for _ in 0..self.nt {
            if a % m != b % m {
                diff += 1;
            }
            a /= m;
            b /= m;
        }
        diff
    }
}

fn digit_at(idx: usize, m: usize, nt: usize, antenna: usize) -> usize {
    // Antenna 0 is the most significant base-M digit.
    let shift = nt - 1 - antenna;
    (idx / m.pow(shift as u32)) % m
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn qam4_sizes() {
        assert_eq!(SymbolBook::make_qam4(1).unwrap().len(), 4);
        assert_eq!(SymbolBook::make_qam4(2).unwrap().len(), 16);
    }

    #[test]
    fn qam4_has_unit_average_energy() {
        let book = SymbolBook::make_qam4(1).unwrap();
        for a in book.alphabet() {
            assert!((a.norm_sqr() - 1.0).abs() < 1e-15);
        }
        let mean: f64 = book.alphabet().iter().map(|a| a.norm_sqr()).sum::<f64>()
            / book.modulation_order() as f64;
        assert!((mean - 1.0).abs() < 1e-15);
    }

    #[test]
    fn index_vector_round_trip_all_k() {
        let book = SymbolBook::make_qam4(2).unwrap();
        for k in 0..book.len() {
            let v = book.index_to_vector(k).unwrap().clone();
            assert_eq!(book.vector_to_index(&v).unwrap(), k);
        }
    }

    #[test]
    fn lexicographic_endpoints() {
        let book = SymbolBook::make_qam4(2).unwrap();
        let first = book.index_to_vector(0).unwrap();
        let a0 = book.alphabet()[0];
        assert_eq!(first[0], a0);
        assert_eq!(first[1], a0);
        let last = book.index_to_vector(book.len() - 1).unwrap();
        let am = book.alphabet()[3];
        assert_eq!(last[0], am);
        assert_eq!(last[1], am);
    }

    #[test]
    fn out_of_range_and_foreign_entries_rejected() {
        let book = SymbolBook::make_qam4(2).unwrap();
        assert!(book.index_to_vector(16).is_err());
        let bad = ComplexVector::from_vec(vec![
            Complex64::new(0.3, 0.3),
            Complex64::new(0.3, 0.3),
        ])
        .unwrap();
        assert!(book.vector_to_index(&bad).is_err());
    }

    #[test]
    fn symbol_error_counts() {
        let book = SymbolBook::make_qam4(2).unwrap();
        assert_eq!(book.symbol_errors(5, 5), 0);
        // Indices 0 and 1 share the antenna-0 digit and differ on antenna 1.
        assert_eq!(book.symbol_errors(0, 1), 1);
        // 0 = (a0, a0) and 5 = (a1, a1) differ everywhere.
        assert_eq!(book.symbol_errors(0, 5), 2);
        // Cross-check against the vector definition.
        for k1 in 0..book.len() {
            for k2 in 0..book.len() {
                let v1 = book.vector(k1);
                let v2 = book.vector(k2);
                let direct = (0..2).filter(|&i| v1[i] != v2[i]).count();
                assert_eq!(book.symbol_errors(k1, k2), direct);
            }
        }
    }
}
