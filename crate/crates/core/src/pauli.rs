//! Real Hamiltonians written as sums of Pauli strings on `n` qubits.
//!
//! Basis state `b` has site `i` in bit `i`; bit 0 is spin up (`σᶻ = +1`).
//! Only strings with an even number of `σʸ` factors are real, and only those
//! are accepted.

use std::collections::HashMap;

use nalgebra::DMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Term {
    coeff: f64,
    /// sites flipped by σˣ or σʸ
    flip: u32,
    /// sites contributing (-1)^bit, from σᶻ or σʸ
    sign: u32,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PauliSum {
    n_sites: usize,
    terms: Vec<Term>,
    index: HashMap<(u32, u32), usize>,
}

impl PauliSum {
    pub fn new(n_sites: usize) -> Self {
        assert!(n_sites <= 30, "at most 30 sites");
        PauliSum {
            n_sites,
            terms: Vec::new(),
            index: HashMap::new(),
        }
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        1 << self.n_sites
    }

    pub fn n_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_identity(&mut self, coeff: f64) -> &mut Self {
        self.push(coeff, 0, 0)
    }

    /// Adds `coeff · ⊗ ops`. Sites must be distinct.
    ///
    /// # Panics
    ///
    /// On repeated or out-of-range sites, or an odd number of `σʸ`.
    pub fn add(&mut self, coeff: f64, ops: &[(usize, Pauli)]) -> &mut Self {
        let mut flip = 0u32;
        let mut sign = 0u32;
        let mut seen = 0u32;
        let mut n_y = 0;
        for &(site, op) in ops {
            assert!(site < self.n_sites, "site {site} out of range");
            let bit = 1u32 << site;
            assert!(seen & bit == 0, "site {site} repeated in one string");
            seen |= bit;
            match op {
                Pauli::X => flip |= bit,
                Pauli::Z => sign |= bit,
                Pauli::Y => {
                    flip |= bit;
                    sign |= bit;
                    n_y += 1;
                }
            }
        }
        assert!(n_y % 2 == 0, "odd number of σʸ gives a non-real string");
        // σʸ = i σˣσᶻ, so an even count contributes i^{n_y} = (-1)^{n_y/2}
        let phase = if n_y % 4 == 0 { 1.0 } else { -1.0 };
        self.push(phase * coeff, flip, sign)
    }

    fn push(&mut self, coeff: f64, flip: u32, sign: u32) -> &mut Self {
        match self.index.get(&(flip, sign)) {
            Some(&i) => self.terms[i].coeff += coeff,
            None => {
                self.index.insert((flip, sign), self.terms.len());
                self.terms.push(Term { coeff, flip, sign });
            }
        }
        self
    }

    /// `out = H v`.
    pub fn apply(&self, v: &[f64], out: &mut [f64]) {
        assert_eq!(v.len(), self.dim());
        assert_eq!(out.len(), self.dim());
        out.iter_mut().for_each(|x| *x = 0.0);
        for t in &self.terms {
            if t.coeff == 0.0 {
                continue;
            }
            for (b, &x) in v.iter().enumerate() {
                if x == 0.0 {
                    continue;
                }
                let parity = (b as u32 & t.sign).count_ones() & 1;
                let c = if parity == 0 { t.coeff } else { -t.coeff };
                out[b ^ t.flip as usize] += c * x;
            }
        }
    }

    pub fn to_dense(&self) -> DMatrix<f64> {
        let dim = self.dim();
        let mut m = DMatrix::zeros(dim, dim);
        for t in &self.terms {
            for b in 0..dim {
                let parity = (b as u32 & t.sign).count_ones() & 1;
                let c = if parity == 0 { t.coeff } else { -t.coeff };
                m[(b ^ t.flip as usize, b)] += c;
            }
        }
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_site_matrices() {
        let mut z = PauliSum::new(1);
        z.add(1.0, &[(0, Pauli::Z)]);
        assert_eq!(
            z.to_dense(),
            DMatrix::from_row_slice(2, 2, &[1.0, 0.0, 0.0, -1.0])
        );
        let mut x = PauliSum::new(1);
        x.add(1.0, &[(0, Pauli::X)]);
        assert_eq!(x.to_dense(), DMatrix::from_row_slice(2, 2, &[0.0, 1.0, 1.0, 0.0]));
    }

    #[test]
    fn yy_matches_kronecker_product() {
        // σʸ⊗σʸ with site 0 as the low bit: |b1 b0⟩ ordering
        let mut yy = PauliSum::new(2);
        yy.add(1.0, &[(0, Pauli::Y), (1, Pauli::Y)]);
        let expected = DMatrix::from_row_slice(
            4,
            4,
            &[
                0.0, 0.0, 0.0, -1.0, 0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0, -1.0, 0.0, 0.0, 0.0,
            ],
        );
        assert_eq!(yy.to_dense(), expected);
    }

    #[test]
    fn xx_plus_yy_hops() {
        let mut h = PauliSum::new(2);
        h.add(1.0, &[(0, Pauli::X), (1, Pauli::X)]);
        h.add(1.0, &[(0, Pauli::Y), (1, Pauli::Y)]);
        let m = h.to_dense();
        assert_eq!(m[(1, 2)], 2.0);
        assert_eq!(m[(2, 1)], 2.0);
        assert_eq!(m[(0, 3)], 0.0);
        assert_eq!(h.n_terms(), 2);
    }

    #[test]
    fn apply_matches_dense() {
        let mut h = PauliSum::new(3);
        h.add(0.7, &[(0, Pauli::X), (2, Pauli::X)]);
        h.add(-0.3, &[(1, Pauli::Y), (2, Pauli::Y)]);
        h.add(1.1, &[(1, Pauli::Z)]);
        h.add_identity(0.5);
        let v: Vec<f64> = (0..8).map(|i| (i as f64 * 0.37).sin()).collect();
        let mut out = vec![0.0; 8];
        h.apply(&v, &mut out);
        let dense = h.to_dense() * nalgebra::DVector::from_vec(v);
        for (a, b) in out.iter().zip(dense.iter()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn like_terms_merge() {
        let mut h = PauliSum::new(2);
        h.add(1.0, &[(0, Pauli::Z), (1, Pauli::Z)]);
        h.add(-1.0, &[(1, Pauli::Z), (0, Pauli::Z)]);
        assert_eq!(h.n_terms(), 1);
        assert!(h.to_dense().iter().all(|x| *x == 0.0));
    }

    #[test]
    #[should_panic]
    fn odd_y_rejected() {
        PauliSum::new(1).add(1.0, &[(0, Pauli::Y)]);
    }
}
