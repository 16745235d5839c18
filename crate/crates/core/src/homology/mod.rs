//! Betti numbers, Poincaré polynomials and the graded Euler characteristic.

mod poly;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::complex::{homological_degree, quantum_degree, BigradedComplex, Bigrading};
use crate::diagram::{State, TangleDiagram};
use crate::linalg::Field;

pub use poly::{LaurentPoly1, LaurentPoly2, PolyParseError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BettiTable {
    /// Nonzero `dim H^{k,q}` only.
    pub dims: BTreeMap<Bigrading, usize>,
    pub n_plus: usize,
    pub n_minus: usize,
    pub field: Field,
}

impl BettiTable {
    pub fn get(&self, k: i32, q: i32) -> usize {
        self.dims.get(&(k, q)).copied().unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.dims.values().sum()
    }
}

/// `dim H^{k,q} = dim C^{k,q} - rank d^{k,q} - rank d^{k-1,q}`.
pub fn betti(c: &BigradedComplex) -> BettiTable {
    let ranks: BTreeMap<Bigrading, usize> = c
        .differentials()
        .keys()
        .copied()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|(k, q)| ((k, q), c.rank(k, q)))
        .collect();
    let rank = |k: i32, q: i32| ranks.get(&(k, q)).copied().unwrap_or(0);
    let dims = c
        .dimensions()
        .into_iter()
        .map(|((k, q), dim)| ((k, q), dim - rank(k, q) - rank(k - 1, q)))
        .filter(|&(_, h)| h > 0)
        .collect();
    BettiTable { dims, n_plus: c.n_plus, n_minus: c.n_minus, field: c.field }
}

pub fn poincare_polynomial(b: &BettiTable) -> LaurentPoly2 {
    LaurentPoly2::from_terms(b.dims.iter().map(|(&kq, &d)| (kq, d as i64)))
}

/// Substitutes `x = -1`.
pub fn jones_specialization(p: &LaurentPoly2) -> LaurentPoly1 {
    p.at_x_minus_one()
}

/// `Σ_s (-1)^k y^(k + n₊ - n₋) (y + y⁻¹)^circles y^(-arcs)` with `k = ℓ(s) - n₋`,
/// straight from the resolutions.
pub fn graded_euler_state_sum(d: &TangleDiagram) -> LaurentPoly1 {
    let (n_plus, n_minus) = d.crossing_counts();
    let loop_value = &LaurentPoly1::monomial(1, 1) + &LaurentPoly1::monomial(1, -1);
    State::all(d.crossing_count())
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|s| {
            let r = d.resolve_unchecked(&s);
            let k = homological_degree(&s, n_minus);
            let sign = if k.rem_euclid(2) == 0 { 1 } else { -1 };
            let shift = quantum_degree(k, n_plus, n_minus, -(r.arcs.len() as i32));
            &LaurentPoly1::monomial(sign, shift) * &loop_value.pow(r.circle_count as u32)
        })
        .reduce(LaurentPoly1::zero, |a, b| &a + &b)
}

/// Brute-force Poincaré polynomial of a diagram.
pub fn poincare_of(d: &TangleDiagram, field: Field) -> Result<LaurentPoly2, crate::complex::ComplexError> {
    Ok(poincare_polynomial(&betti(&BigradedComplex::build(d, field)?)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(text: &str) -> LaurentPoly2 {
        poincare_of(&TangleDiagram::parse(text).unwrap(), Field::Rational).unwrap()
    }

    #[test]
    fn small_poincare_polynomials() {
        assert_eq!(poly("O").to_string(), "y^-1 + y");
        assert_eq!(poly("A p q").to_string(), "y^-1");
        assert_eq!(poly("X+ a b c d").to_string(), "y^-1 + x");
        assert_eq!(poly("X- a b c d").to_string(), "x^-1y^-4 + y^-3");
        assert_eq!(poly("X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3").to_string(), "x^-3y^-9 + x^-2y^-5 + y^-3 + y^-1");
    }

    #[test]
    fn euler_identity_small() {
        for text in ["O", "A p q", "X+ a b c d", "X 1 4 2 5\nX 3 6 4 1\nX 5 2 6 3"] {
            let d = TangleDiagram::parse(text).unwrap();
            assert_eq!(jones_specialization(&poly(text)), graded_euler_state_sum(&d), "{text}");
        }
        let d = TangleDiagram::parse("X+ a b c d").unwrap();
        assert_eq!(graded_euler_state_sum(&d).to_string(), "y^-1 - 1");
    }
}
