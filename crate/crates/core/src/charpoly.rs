//! Exact characteristic polynomials of adjacency matrices.
//!
//! `det(xI - A)` is computed with the Faddeev-LeVerrier recurrence
//!
//! ```text
//! M_0 = 0,  c_n = 1
//! M_k = A M_{k-1} + c_{n-k+1} I
//! c_{n-k} = -tr(A M_k) / k
//! ```
//!
//! Every division is exact over the integers and is asserted as such. The
//! recurrence first runs on checked `i128` and is redone over `BigInt` when an
//! intermediate overflows. Because `A` is a 0/1 matrix, `A M` is a sum of rows
//! of `M` and costs `2m * n` additions.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CharPolyError {
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("degree {degree} is too small; at least {needed} is required")]
    DegreeTooSmall { degree: usize, needed: usize },
    #[error("coefficient of x^{power} is {value}, which no adjacency matrix produces")]
    NotAdjacency { power: usize, value: BigInt },
}

/// Monic integer polynomial, coefficients stored lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

impl CharPoly {
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<CharPoly, CharPolyError> {
        if coeffs.last().is_none_or(|c| !c.is_one()) {
            return Err(CharPolyError::NotMonic);
        }
        Ok(CharPoly { coeffs })
    }

    pub fn from_i64(coeffs: &[i64]) -> Result<CharPoly, CharPolyError> {
        CharPoly::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> CharPoly {
        CharPoly { coeffs: vec![BigInt::one()] }
    }

    /// `x - root`.
    pub fn linear(root: i64) -> CharPoly {
        CharPoly { coeffs: vec![BigInt::from(-root), BigInt::one()] }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficients `c_0, c_1, ..., c_n`.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^power`; zero beyond the degree.
    pub fn coeff(&self, power: usize) -> BigInt {
        self.coeffs.get(power).cloned().unwrap_or_default()
    }

    pub fn pow(&self, e: u32) -> CharPoly {
        (0..e).fold(CharPoly::one(), |acc, _| &acc * self)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    /// Formal derivative evaluated at `x`.
    pub fn derivative_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(0.0, |acc, (k, c)| acc * x + k as f64 * c.to_f64().unwrap_or(f64::NAN))
    }

    /// Edge count, read off as `-c_{n-2}`.
    pub fn edges(&self) -> Result<u64, CharPolyError> {
        let n = self.degree();
        if n < 2 {
            return Ok(0);
        }
        let c = &self.coeffs[n - 2];
        (-c).to_u64().ok_or_else(|| CharPolyError::NotAdjacency { power: n - 2, value: c.clone() })
    }

    /// Triangle count, read off as `-c_{n-3} / 2`.
    pub fn triangles(&self) -> Result<u64, CharPolyError> {
        let n = self.degree();
        if n < 3 {
            return Err(CharPolyError::DegreeTooSmall { degree: n, needed: 3 });
        }
        let c = &self.coeffs[n - 3];
        let bad = || CharPolyError::NotAdjacency { power: n - 3, value: c.clone() };
        if c.is_positive() || (c % 2u32) != BigInt::zero() {
            return Err(bad());
        }
        (-c / 2u32).to_u64().ok_or_else(bad)
    }
}

impl Mul for &CharPoly {
    type Output = CharPoly;

    fn mul(self, rhs: &CharPoly) -> CharPoly {
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CharPoly { coeffs: out }
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            let show_mag = !mag.is_one() || k == 0;
            match (show_mag, k) {
                (true, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}x")?,
                (true, _) => write!(f, "{mag}x^{k}")?,
                (false, 1) => write!(f, "x")?,
                (false, _) => write!(f, "x^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Serialises as a JSON array of decimal integers, lowest degree first.
impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.coeffs.len()))?;
        for c in &self.coeffs {
            let num: serde_json::Number = c.to_string().parse().map_err(serde::ser::Error::custom)?;
            seq.serialize_element(&num)?;
        }
        seq.end()
    }
}

trait Exact: Clone {
    fn nil() -> Self;
    fn from_i64(v: i64) -> Self;
    /// `self += other`; `None` on overflow.
    fn add_assign(&mut self, other: &Self) -> Option<()>;
    fn neg(&self) -> Option<Self>;
    /// Exact quotient; panics if `k` does not divide `self`.
    fn div_exact(&self, k: i64) -> Self;
    fn into_big(self) -> BigInt;
}

impl Exact for i128 {
    fn nil() -> Self {
        0
    }
    fn from_i64(v: i64) -> Self {
        v as i128
    }
    fn add_assign(&mut self, other: &Self) -> Option<()> {
        *self = self.checked_add(*other)?;
        Some(())
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn div_exact(&self, k: i64) -> Self {
        let k = k as i128;
        assert_eq!(self % k, 0, "Faddeev-LeVerrier division by {k} is not exact");
        self / k
    }
    fn into_big(self) -> BigInt {
        BigInt::from(self)
    }
}

impl Exact for BigInt {
    fn nil() -> Self {
        Zero::zero()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn add_assign(&mut self, other: &Self) -> Option<()> {
        *self += other;
        Some(())
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, k: i64) -> Self {
        let k = BigInt::from(k);
        assert!((self % &k).is_zero(), "Faddeev-LeVerrier division by {k} is not exact");
        self / k
    }
    fn into_big(self) -> BigInt {
        self
    }
}

/// `A M` for the adjacency matrix `A`, with `adj[i]` the neighbours of `i`.
fn adj_times<T: Exact>(adj: &[Vec<usize>], m: &[T], out: &mut [T]) -> Option<()> {
    let n = adj.len();
    for (i, nbrs) in adj.iter().enumerate() {
        let row = &mut out[i * n..(i + 1) * n];
        row.iter_mut().for_each(|x| *x = T::nil());
        for &l in nbrs {
            for (x, y) in row.iter_mut().zip(&m[l * n..(l + 1) * n]) {
                x.add_assign(y)?;
            }
        }
    }
    Some(())
}

fn faddeev_leverrier<T: Exact>(adj: &[Vec<usize>]) -> Option<Vec<BigInt>> {
    let n = adj.len();
    let mut coeffs: Vec<T> = vec![T::nil(); n + 1];
    coeffs[n] = T::from_i64(1);
    let mut m: Vec<T> = vec![T::nil(); n * n];
    let mut next: Vec<T> = vec![T::nil(); n * n];
    for k in 1..=n {
        adj_times(adj, &m, &mut next)?;
        std::mem::swap(&mut m, &mut next);
        let shift = coeffs[n - k + 1].clone();
        for i in 0..n {
            m[i * n + i].add_assign(&shift)?;
        }
        // tr(A M) = sum over edges (i, l) of M[l][i]
        let mut trace = T::nil();
        for (i, nbrs) in adj.iter().enumerate() {
            for &l in nbrs {
                trace.add_assign(&m[l * n + i])?;
            }
        }
        coeffs[n - k] = trace.div_exact(k as i64).neg()?;
    }
    // Cayley-Hamilton: A M_n + c_0 I = 0
    adj_times(adj, &m, &mut next)?;
    for i in 0..n {
        for j in 0..n {
            let mut v = next[i * n + j].clone();
            if i == j {
                v.add_assign(&coeffs[0])?;
            }
            let v = v.into_big();
            assert!(v.is_zero(), "Cayley-Hamilton residual at ({i}, {j}) is {v}");
        }
    }
    Some(coeffs.into_iter().map(Exact::into_big).collect())
}

/// `det(xI - A)` for the adjacency matrix of `g`.
pub fn char_poly(g: &Graph) -> CharPoly {
    let adj: Vec<Vec<usize>> = (0..g.n_vertices()).map(|v| g.neighbors(v).collect()).collect();
    let coeffs = faddeev_leverrier::<i128>(&adj)
        .or_else(|| faddeev_leverrier::<BigInt>(&adj))
        .expect("BigInt arithmetic cannot overflow");
    CharPoly { coeffs }
}

/// Exact cospectrality: equal characteristic polynomials.
pub fn are_cospectral(g: &Graph, h: &Graph) -> bool {
    g.n_vertices() == h.n_vertices()
        && g.edge_count() == h.edge_count()
        && g.triangle_count() == h.triangle_count()
        && char_poly(g) == char_poly(h)
}

pub fn edges_from_charpoly(p: &CharPoly) -> Result<u64, CharPolyError> {
    p.edges()
}

pub fn triangles_from_charpoly(p: &CharPoly) -> Result<u64, CharPolyError> {
    p.triangles()
}

/// BigInt-only route, for cross-checking the overflow fallback.
#[doc(hidden)]
pub fn char_poly_bigint(g: &Graph) -> CharPoly {
    let adj: Vec<Vec<usize>> = (0..g.n_vertices()).map(|v| g.neighbors(v).collect()).collect();
    CharPoly { coeffs: faddeev_leverrier::<BigInt>(&adj).unwrap() }
}
