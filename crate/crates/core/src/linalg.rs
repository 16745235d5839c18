//! Exact sparse linear algebra over ℚ and GF(2).
//!
//! Only what homology needs: rank by sparse Gaussian elimination with a
//! Markowitz pivot choice, products, and an elimination record `L·U = A`
//! for testing.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Coefficient field used for a computation.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Field {
    #[default]
    Rational,
    Gf2,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Rational => "Q",
            Field::Gf2 => "GF2",
        }
    }
}

impl std::str::FromStr for Field {
    type Err = String;
    fn from_str(s: &str) -> Result<Field, String> {
        match s {
            "Q" | "q" | "QQ" | "rational" => Ok(Field::Rational),
            "GF2" | "gf2" | "F2" | "Z2" => Ok(Field::Gf2),
            _ => Err(format!("unknown field `{s}` (expected Q or GF2)")),
        }
    }
}

pub trait FieldScalar:
    Clone + Debug + PartialEq + Send + Sync + Add<Output = Self> + Sub<Output = Self> + Mul<Output = Self> + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    /// Multiplicative inverse; callers never invert zero.
    fn inv(&self) -> Self;
    fn from_i64(v: i64) -> Self;
}

/// Exact rational, always in lowest terms with positive denominator.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(pub BigRational);

impl Rational {
    pub fn new(num: i64, den: i64) -> Rational {
        Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, o: Rational) -> Rational {
        Rational(self.0 + o.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, o: Rational) -> Rational {
        Rational(self.0 - o.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, o: Rational) -> Rational {
        Rational(self.0 * o.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl FieldScalar for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn inv(&self) -> Self {
        Rational(self.0.recip())
    }
    fn from_i64(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }
}

/// Element of the two-element field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Gf2(pub bool);

impl Add for Gf2 {
    type Output = Gf2;
    fn add(self, o: Gf2) -> Gf2 {
        Gf2(self.0 != o.0)
    }
}

impl Sub for Gf2 {
    type Output = Gf2;
    fn sub(self, o: Gf2) -> Gf2 {
        Gf2(self.0 != o.0)
    }
}

impl Mul for Gf2 {
    type Output = Gf2;
    fn mul(self, o: Gf2) -> Gf2 {
        Gf2(self.0 && o.0)
    }
}

impl Neg for Gf2 {
    type Output = Gf2;
    fn neg(self) -> Gf2 {
        self
    }
}

impl FieldScalar for Gf2 {
    fn zero() -> Self {
        Gf2(false)
    }
    fn one() -> Self {
        Gf2(true)
    }
    fn is_zero(&self) -> bool {
        !self.0
    }
    fn inv(&self) -> Self {
        assert!(self.0, "inverse of zero in GF(2)");
        *self
    }
    fn from_i64(v: i64) -> Self {
        Gf2(v.rem_euclid(2) == 1)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch: {left_cols} columns against {right_rows} rows")]
    DimensionMismatch { left_cols: usize, right_rows: usize },
    #[error("entry ({row}, {col}) outside a {rows}x{cols} matrix")]
    OutOfRange { row: usize, col: usize, rows: usize, cols: usize },
}

/// Sparse matrix with no stored zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix<T> {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), T>,
}

impl<T: Clone> SparseMatrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn get(&self, row: usize, col: usize) -> Option<&T> {
        self.entries.get(&(row, col))
    }

    /// Entries in row-major order.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &T)> + '_ {
        self.entries.iter().map(|(&(r, c), v)| (r, c, v))
    }

    pub fn transpose(&self) -> SparseMatrix<T> {
        SparseMatrix {
            rows: self.cols,
            cols: self.rows,
            entries: self.entries.iter().map(|(&(r, c), v)| ((c, r), v.clone())).collect(),
        }
    }
}

impl SparseMatrix<i64> {
    pub fn zeros_int(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn from_dense_int(rows: &[Vec<i64>]) -> Self {
        let mut m = Self::zeros_int(rows.len(), rows.first().map_or(0, Vec::len));
        for (r, row) in rows.iter().enumerate() {
            for (c, &v) in row.iter().enumerate() {
                m.add_int(r, c, v);
            }
        }
        m
    }

    /// Adds `v` to an entry, dropping it if it cancels.
    pub fn add_int(&mut self, row: usize, col: usize, v: i64) {
        assert!(row < self.rows && col < self.cols, "entry ({row}, {col}) out of range");
        let e = self.entries.entry((row, col)).or_insert(0);
        *e += v;
        if *e == 0 {
            self.entries.remove(&(row, col));
        }
    }

    /// Image of an integer matrix in a field.
    pub fn to_field<F: FieldScalar>(&self) -> SparseMatrix<F> {
        SparseMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .map(|(&k, &v)| (k, F::from_i64(v)))
                .filter(|(_, v)| !v.is_zero())
                .collect(),
        }
    }
}

impl<F: FieldScalar> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix { rows, cols, entries: BTreeMap::new() }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries.insert((i, i), F::one());
        }
        m
    }

    pub fn from_triplets(
        rows: usize,
        cols: usize,
        triplets: impl IntoIterator<Item = (usize, usize, F)>,
    ) -> Result<Self, LinalgError> {
        let mut m = Self::zeros(rows, cols);
        for (r, c, v) in triplets {
            if r >= rows || c >= cols {
                return Err(LinalgError::OutOfRange { row: r, col: c, rows, cols });
            }
            m.add_to(r, c, v);
        }
        Ok(m)
    }

    pub fn from_dense(rows: &[Vec<F>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let triplets = rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().enumerate().map(move |(c, v)| (r, c, v.clone())));
        Self::from_triplets(rows.len(), cols, triplets).expect("dense input is rectangular")
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        let mut out = vec![vec![F::zero(); self.cols]; self.rows];
        for (&(r, c), v) in &self.entries {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn add_to(&mut self, row: usize, col: usize, v: F) {
        let sum = match self.entries.remove(&(row, col)) {
            Some(old) => old + v,
            None => v,
        };
        if !sum.is_zero() {
            self.entries.insert((row, col), sum);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    /// `self · rhs`.
    pub fn mul(&self, rhs: &SparseMatrix<F>) -> Result<SparseMatrix<F>, LinalgError> {
        if self.cols != rhs.rows {
            return Err(LinalgError::DimensionMismatch { left_cols: self.cols, right_rows: rhs.rows });
        }
        let mut rhs_rows: Vec<Vec<(usize, &F)>> = vec![Vec::new(); rhs.rows];
        for (&(r, c), v) in &rhs.entries {
            rhs_rows[r].push((c, v));
        }
        let mut out = SparseMatrix::zeros(self.rows, rhs.cols);
        for (&(r, k), a) in &self.entries {
            for &(c, b) in &rhs_rows[k] {
                out.add_to(r, c, a.clone() * b.clone());
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        Eliminator::new(self).run(false).rank
    }

    /// Row elimination record: `lower · upper == self`, where `upper` has one
    /// pivot row per unit of rank and `lower` is unit lower-triangular up to
    /// the pivot order.
    pub fn eliminate(&self) -> Elimination<F> {
        let out = Eliminator::new(self).run(true);
        let mut lower = SparseMatrix::identity(self.rows);
        for (r, p, f) in out.multipliers {
            lower.add_to(r, p, f);
        }
        let mut upper = SparseMatrix::zeros(self.rows, self.cols);
        for (r, row) in out.final_rows.into_iter().enumerate() {
            for (c, v) in row {
                upper.entries.insert((r, c), v);
            }
        }
        Elimination { rank: out.rank, lower, upper }
    }
}

/// Rank of a matrix over its field.
pub fn rank<F: FieldScalar>(m: &SparseMatrix<F>) -> usize {
    m.rank()
}

/// True iff `a · b` is the zero matrix, i.e. `b` followed by `a` vanishes.
pub fn compose_check<F: FieldScalar>(a: &SparseMatrix<F>, b: &SparseMatrix<F>) -> Result<bool, LinalgError> {
    Ok(a.mul(b)?.is_zero())
}

#[derive(Clone, Debug)]
pub struct Elimination<F> {
    pub rank: usize,
    pub lower: SparseMatrix<F>,
    pub upper: SparseMatrix<F>,
}

struct EliminationOutput<F> {
    rank: usize,
    multipliers: Vec<(usize, usize, F)>,
    final_rows: Vec<BTreeMap<usize, F>>,
}

struct Eliminator<F> {
    rows: Vec<BTreeMap<usize, F>>,
    col_rows: Vec<BTreeSet<usize>>,
    active: BTreeSet<usize>,
}

impl<F: FieldScalar> Eliminator<F> {
    fn new(m: &SparseMatrix<F>) -> Self {
        let mut rows = vec![BTreeMap::new(); m.rows];
        let mut col_rows = vec![BTreeSet::new(); m.cols];
        for (&(r, c), v) in &m.entries {
            rows[r].insert(c, v.clone());
            col_rows[c].insert(r);
        }
        let active = (0..m.rows).filter(|&r| !rows[r].is_empty()).collect();
        Eliminator { rows, col_rows, active }
    }

    /// Markowitz choice: minimise (row count - 1) * (column count - 1).
    fn pick_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, usize)> = None;
        for &r in &self.active {
            let row_cost = self.rows[r].len() - 1;
            if best.is_some_and(|(cost, _, _)| row_cost == 0 && cost == 0) {
                break;
            }
            for &c in self.rows[r].keys() {
                let cost = row_cost * (self.col_rows[c].len() - 1);
                if best.is_none_or(|(b, _, _)| cost < b) {
                    best = Some((cost, r, c));
                    if cost == 0 {
                        return Some((r, c));
                    }
                }
            }
        }
        best.map(|(_, r, c)| (r, c))
    }

    fn run(mut self, record: bool) -> EliminationOutput<F> {
        let mut rank = 0;
        let mut multipliers = Vec::new();
        while let Some((pr, pc)) = self.pick_pivot() {
            rank += 1;
            self.active.remove(&pr);
            let pivot_row = self.rows[pr].clone();
            for &c in pivot_row.keys() {
                self.col_rows[c].remove(&pr);
            }
            let pivot_inv = pivot_row[&pc].inv();
            let targets: Vec<usize> = self.col_rows[pc].iter().copied().collect();
            for r in targets {
                let factor = self.rows[r][&pc].clone() * pivot_inv.clone();
                for (&c, v) in &pivot_row {
                    let updated = match self.rows[r].remove(&c) {
                        Some(old) => old - factor.clone() * v.clone(),
                        None => -(factor.clone() * v.clone()),
                    };
                    if updated.is_zero() {
                        self.col_rows[c].remove(&r);
                    } else {
                        self.rows[r].insert(c, updated);
                        self.col_rows[c].insert(r);
                    }
                }
                if record {
                    multipliers.push((r, pr, factor));
                }
                if self.rows[r].is_empty() {
                    self.active.remove(&r);
                }
            }
        }
        EliminationOutput { rank, multipliers, final_rows: self.rows }
    }
}

impl std::fmt::Display for Rational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.denom().is_one() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl Rational {
    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }
}
