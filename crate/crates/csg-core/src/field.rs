//! Exact fields, sparse vectors and matrices, and incremental row reduction.
//!
//! A [`Field`] is a context value: `Rationals` or `PrimeField(p)`. Elements
//! live in `F::Elem` and all arithmetic goes through the context, so the
//! modulus never has to travel inside each element.

use alloc::collections::BTreeMap;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub trait Field: Clone + fmt::Debug + PartialEq {
    type Elem: Clone + PartialEq + fmt::Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` for zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn from_i64(&self, n: i64) -> Self::Elem;
    /// Integers and `p/q` fractions.
    fn parse(&self, s: &str) -> Result<Self::Elem>;
    fn format(&self, a: &Self::Elem) -> String;
    /// 0 for ℚ.
    fn characteristic(&self) -> u64;
    /// `"Q"` or `"F5"`.
    fn name(&self) -> String;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn parse(&self, s: &str) -> Result<BigRational> {
        let s = s.trim();
        let r: BigRational = s.parse().map_err(|_| Error::Parse(alloc::format!("`{s}` is not a rational number")))?;
        Ok(r)
    }
    fn format(&self, a: &BigRational) -> String {
        if a.is_integer() {
            a.numer().to_string()
        } else {
            alloc::format!("{}/{}", a.numer(), a.denom())
        }
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn name(&self) -> String {
        "Q".into()
    }
}

/// `F_p` with elements stored as residues in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || p > u32::MAX as u64 || !is_prime(p) {
            return Err(Error::Invalid(alloc::format!("{p} is not a supported prime")));
        }
        Ok(Self { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

fn is_prime(p: u64) -> bool {
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn neg(&self, a: &u64) -> u64 {
        (self.p - a) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        // a^{p-2}
        let (mut base, mut e, mut acc) = (*a, self.p - 2, 1u64);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.p;
            }
            base = base * base % self.p;
            e >>= 1;
        }
        Some(acc)
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn from_i64(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
    fn parse(&self, s: &str) -> Result<u64> {
        let r = Rationals.parse(s)?;
        let num = self.reduce_big(r.numer());
        let den = self.reduce_big(r.denom());
        let den = self
            .inv(&den)
            .ok_or_else(|| Error::Parse(alloc::format!("denominator of `{s}` vanishes mod {}", self.p)))?;
        Ok(self.mul(&num, &den))
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn name(&self) -> String {
        alloc::format!("F{}", self.p)
    }
}

impl PrimeField {
    fn reduce_big(&self, n: &BigInt) -> u64 {
        let p = BigInt::from(self.p);
        let r = ((n % &p) + &p) % &p;
        let (_, digits) = r.abs().to_u64_digits();
        digits.first().copied().unwrap_or(0)
    }
}

/// A sparse vector: `(index, nonzero value)` pairs sorted by index.
pub type SparseVec<E> = Vec<(usize, E)>;

/// `acc += c·v`, keeping `acc` sorted and free of zeros.
pub fn axpy<F: Field>(f: &F, acc: &mut BTreeMap<usize, F::Elem>, c: &F::Elem, v: &[(usize, F::Elem)]) {
    if f.is_zero(c) {
        return;
    }
    for (i, x) in v {
        let t = f.mul(c, x);
        match acc.get_mut(i) {
            Some(y) => {
                *y = f.add(y, &t);
                if f.is_zero(y) {
                    acc.remove(i);
                }
            }
            None => {
                acc.insert(*i, t);
            }
        }
    }
}

pub fn to_sparse<F: Field>(f: &F, acc: BTreeMap<usize, F::Elem>) -> SparseVec<F::Elem> {
    acc.into_iter().filter(|(_, x)| !f.is_zero(x)).collect()
}

/// A sparse matrix stored by columns. Column `j` is the image of the `j`-th
/// basis vector, which is how linear maps are built here.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    columns: Vec<SparseVec<E>>,
}

impl<E: Clone + PartialEq + fmt::Debug> Matrix<E> {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self { rows, columns: alloc::vec![Vec::new(); cols] }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        Self { rows: n, columns: (0..n).map(|i| alloc::vec![(i, f.one())]).collect() }
    }

    /// Columns must be sorted and free of explicit zeros.
    pub fn from_columns(rows: usize, columns: Vec<SparseVec<E>>) -> Self {
        debug_assert!(columns.iter().all(|c| c.windows(2).all(|w| w[0].0 < w[1].0)));
        debug_assert!(columns.iter().all(|c| c.iter().all(|(i, _)| *i < rows)));
        Self { rows, columns }
    }

    pub fn from_dense<F: Field<Elem = E>>(f: &F, dense: &[Vec<E>]) -> Result<Self> {
        let rows = dense.len();
        let cols = dense.first().map_or(0, |r| r.len());
        if dense.iter().any(|r| r.len() != cols) {
            return Err(Error::Invalid("ragged matrix".into()));
        }
        let columns = (0..cols)
            .map(|j| (0..rows).filter(|&i| !f.is_zero(&dense[i][j])).map(|i| (i, dense[i][j].clone())).collect())
            .collect();
        Ok(Self { rows, columns })
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, f: &F) -> Vec<Vec<E>> {
        let mut out = alloc::vec![alloc::vec![f.zero(); self.cols()]; self.rows];
        for (j, col) in self.columns.iter().enumerate() {
            for (i, x) in col {
                out[*i][j] = x.clone();
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, j: usize) -> &[(usize, E)] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[SparseVec<E>] {
        &self.columns
    }

    pub fn entry<F: Field<Elem = E>>(&self, f: &F, i: usize, j: usize) -> E {
        self.columns[j].iter().find(|(r, _)| *r == i).map_or_else(|| f.zero(), |(_, x)| x.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| c.is_empty())
    }

    pub fn nnz(&self) -> usize {
        self.columns.iter().map(|c| c.len()).sum()
    }

    pub fn apply<F: Field<Elem = E>>(&self, f: &F, v: &[(usize, E)]) -> SparseVec<E> {
        let mut acc = BTreeMap::new();
        for (j, c) in v {
            axpy(f, &mut acc, c, &self.columns[*j]);
        }
        to_sparse(f, acc)
    }

    /// `self · rhs`.
    pub fn mul<F: Field<Elem = E>>(&self, f: &F, rhs: &Matrix<E>) -> Result<Matrix<E>> {
        if self.cols() != rhs.rows {
            return Err(Error::Mismatch(alloc::format!(
                "cannot multiply {}×{} by {}×{}",
                self.rows,
                self.cols(),
                rhs.rows,
                rhs.cols()
            )));
        }
        Ok(Matrix { rows: self.rows, columns: rhs.columns.iter().map(|c| self.apply(f, c)).collect() })
    }

    pub fn scale<F: Field<Elem = E>>(&self, f: &F, c: &E) -> Matrix<E> {
        if f.is_zero(c) {
            return Matrix::zero(self.rows, self.cols());
        }
        let columns = self.columns.iter().map(|col| col.iter().map(|(i, x)| (*i, f.mul(c, x))).collect()).collect();
        Matrix { rows: self.rows, columns }
    }

    pub fn add<F: Field<Elem = E>>(&self, f: &F, rhs: &Matrix<E>) -> Result<Matrix<E>> {
        if (self.rows, self.cols()) != (rhs.rows, rhs.cols()) {
            return Err(Error::Mismatch("matrix sizes differ".into()));
        }
        let columns = self
            .columns
            .iter()
            .zip(&rhs.columns)
            .map(|(a, b)| {
                let mut acc: BTreeMap<usize, E> = a.iter().cloned().collect();
                axpy(f, &mut acc, &f.one(), b);
                to_sparse(f, acc)
            })
            .collect();
        Ok(Matrix { rows: self.rows, columns })
    }

    pub fn rank<F: Field<Elem = E>>(&self, f: &F) -> usize {
        let mut ech = Echelon::new();
        self.columns.iter().filter(|c| ech.insert(f, c)).count()
    }
}

/// Row-reduced basis of a growing subspace. Every stored row has leading
/// coefficient 1 at its pivot and no entries before it.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    rows: BTreeMap<usize, SparseVec<E>>,
}

impl<E: Clone + PartialEq + fmt::Debug> Default for Echelon<E> {
    fn default() -> Self {
        Self { rows: BTreeMap::new() }
    }
}

impl<E: Clone + PartialEq + fmt::Debug> Echelon<E> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.rows.contains_key(&i)
    }

    /// A basis of the span, by pivot.
    pub fn rows(&self) -> impl Iterator<Item = &SparseVec<E>> {
        self.rows.values()
    }

    /// The representative of `v` modulo the span with no pivot entries.
    pub fn reduce<F: Field<Elem = E>>(&self, f: &F, v: &[(usize, E)]) -> SparseVec<E> {
        let mut work: BTreeMap<usize, E> = v.iter().filter(|(_, x)| !f.is_zero(x)).cloned().collect();
        let mut out = Vec::new();
        while let Some((i, c)) = work.pop_first() {
            match self.rows.get(&i) {
                Some(row) => axpy(f, &mut work, &f.neg(&c), &row[1..]),
                None => out.push((i, c)),
            }
        }
        out
    }

    /// Adds `v`; returns whether the span grew.
    pub fn insert<F: Field<Elem = E>>(&mut self, f: &F, v: &[(usize, E)]) -> bool {
        let r = self.reduce(f, v);
        let Some((p, lead)) = r.first().cloned() else { return false };
        let s = f.inv(&lead).expect("nonzero leading entry");
        let row = r.into_iter().map(|(i, x)| (i, f.mul(&s, &x))).collect();
        self.rows.insert(p, row);
        true
    }
}
