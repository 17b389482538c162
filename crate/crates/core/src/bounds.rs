//! Period bounds: inside-out vertex denominators and lcm of subdeterminants.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::combin::{binomial, for_each_subset};
use crate::error::{Error, Result};
use crate::geometry::{BoardPolygon, MoveSet};
use crate::linalg::{det, solve};

/// Default cap on candidate vertex systems for [`denominator`].
pub const DEFAULT_SYSTEM_BUDGET: u128 = 10_000_000;
/// Default cap on minors for [`lcmd_direct`].
pub const DEFAULT_MINOR_BUDGET: u128 = 1_000_000;

/// All equations determining inside-out vertices for `q` pieces:
/// attack rows `A'` over boundary rows (`B` once per piece).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrandMatrix {
    pub q: usize,
    /// Row `(pair {i,j}, move r)`: `m_r⊥` in piece-`i` columns, `-m_r⊥` in piece-`j` columns.
    pub top: Vec<Vec<i64>>,
    /// Boundary rows, integer-scaled, with right-hand sides.
    pub bottom: Vec<Vec<i64>>,
    pub rhs: Vec<BigInt>,
}

impl GrandMatrix {
    pub fn cols(&self) -> usize {
        2 * self.q
    }

    pub fn rows(&self) -> usize {
        self.top.len() + self.bottom.len()
    }

    fn row(&self, k: usize) -> (&[i64], BigInt) {
        if k < self.top.len() {
            (&self.top[k], BigInt::zero())
        } else {
            let b = k - self.top.len();
            (&self.bottom[b], self.rhs[b].clone())
        }
    }
}

/// The `q x C(q,2)` incidence matrix of the complete graph: column `{i<j}` has `+1` at `i`, `-1` at `j`.
pub fn complete_incidence(q: usize) -> Vec<Vec<i64>> {
    let mut cols = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            let mut c = alloc::vec![0; q];
            c[i] = 1;
            c[j] = -1;
            cols.push(c);
        }
    }
    (0..q).map(|v| cols.iter().map(|c| c[v]).collect()).collect()
}

pub fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let cols = a.first().map_or(0, Vec::len);
    (0..cols).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

pub fn kronecker(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for ra in a {
        for rb in b {
            out.push(ra.iter().flat_map(|&x| rb.iter().map(move |&y| x * y)).collect());
        }
    }
    out
}

/// Rows `m_r⊥ = (d_r, -c_r)`.
pub fn move_matrix(ms: &MoveSet) -> Vec<Vec<i64>> {
    ms.moves()
        .iter()
        .map(|m| {
            let (a, b) = m.perp();
            alloc::vec![a, b]
        })
        .collect()
}

/// The attack block `A'` alone.
pub fn attack_matrix(ms: &MoveSet, q: usize) -> Vec<Vec<i64>> {
    let m = move_matrix(ms);
    let mut out = Vec::new();
    for i in 0..q {
        for j in i + 1..q {
            for r in &m {
                let mut row = alloc::vec![0; 2 * q];
                row[2 * i] = r[0];
                row[2 * i + 1] = r[1];
                row[2 * j] = -r[0];
                row[2 * j + 1] = -r[1];
                out.push(row);
            }
        }
    }
    out
}

pub fn grand_matrix(ms: &MoveSet, board: &BoardPolygon, q: usize) -> Result<GrandMatrix> {
    let mut bottom = Vec::new();
    let mut rhs = Vec::new();
    for i in 0..q {
        for ineq in board.inequalities() {
            let den = ineq.beta.denom();
            let scale = i64::try_from(den).map_err(|_| Error::InvalidBoard("boundary denominator too large".into()))?;
            let (a, b) = match (ineq.a.checked_mul(scale), ineq.b.checked_mul(scale)) {
                (Some(a), Some(b)) => (a, b),
                _ => return Err(Error::InvalidBoard("boundary coefficients too large".into())),
            };
            let mut row = alloc::vec![0; 2 * q];
            row[2 * i] = a;
            row[2 * i + 1] = b;
            bottom.push(row);
            rhs.push(ineq.beta.numer().clone());
        }
    }
    Ok(GrandMatrix { q, top: attack_matrix(ms, q), bottom, rhs })
}

fn check_budget(what: &str, needed: BigUint, budget: u128) -> Result<()> {
    if needed > BigUint::from(budget) {
        let needed = u128::try_from(needed).unwrap_or(u128::MAX);
        return Err(Error::Capacity { what: what.into(), needed, budget });
    }
    Ok(())
}

/// A vertex of the inside-out polytope with the rows that cut it out.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub rows: Vec<usize>,
    pub point: Vec<BigRational>,
}

/// Visits every nonsingular `2q`-row system whose solution lies in the closed `B^q`.
pub fn for_each_vertex(gm: &GrandMatrix, board: &BoardPolygon, budget: u128, mut f: impl FnMut(Vertex)) -> Result<()> {
    let n = gm.cols();
    check_budget("denominator", binomial(gm.rows() as u64, n as u64), budget)?;
    let mut a = alloc::vec![0i64; n * n];
    let mut b = alloc::vec![BigInt::zero(); n];
    for_each_subset(gm.rows(), n, |rows| {
        for (k, &r) in rows.iter().enumerate() {
            let (row, rhs) = gm.row(r);
            a[k * n..(k + 1) * n].copy_from_slice(row);
            b[k] = rhs;
        }
        let Some(x) = solve(&a, &b, n) else { return };
        let inside = (0..gm.q).all(|i| {
            board.inequalities().iter().all(|ineq| {
                let lhs = &x[2 * i] * BigRational::from_integer(ineq.a.into())
                    + &x[2 * i + 1] * BigRational::from_integer(ineq.b.into());
                lhs <= ineq.beta
            })
        });
        if inside {
            f(Vertex { rows: rows.to_vec(), point: x });
        }
    });
    Ok(())
}

/// `D`: lcm of the coordinate denominators of all inside-out vertices.
pub fn denominator(ms: &MoveSet, board: &BoardPolygon, q: usize, budget: u128) -> Result<BigUint> {
    let gm = grand_matrix(ms, board, q)?;
    let mut acc = BigInt::one();
    for_each_vertex(&gm, board, budget, |v| {
        for c in &v.point {
            acc = acc.lcm(c.denom());
        }
    })?;
    Ok(acc.magnitude().clone())
}

/// lcm of `|minor|` over all nonzero minors of order `1..=s`.
pub fn lcmd_direct(matrix: &[Vec<i64>], s: usize, budget: u128) -> Result<BigUint> {
    let rows = matrix.len();
    let cols = matrix.first().map_or(0, Vec::len);
    let s = s.min(rows).min(cols);
    let total: BigUint = (1..=s).map(|k| binomial(rows as u64, k as u64) * binomial(cols as u64, k as u64)).sum();
    check_budget("lcmd_direct", total, budget)?;
    let mut acc = BigInt::one();
    let mut buf = Vec::new();
    for k in 1..=s {
        for_each_subset(rows, k, |rs| {
            for_each_subset(cols, k, |cs| {
                buf.clear();
                for &r in rs {
                    buf.extend(cs.iter().map(|&c| matrix[r][c]));
                }
                let d = det(&buf, k);
                if !d.is_zero() {
                    acc = acc.lcm(&d.abs());
                }
            });
        });
    }
    Ok(acc.magnitude().clone())
}

/// lcm over all minors of every order.
pub fn lcmd(matrix: &[Vec<i64>], budget: u128) -> Result<BigUint> {
    lcmd_direct(matrix, usize::MAX, budget)
}

/// `lcm((lcmd M)^(q-1), LCM_{p=1..q/2} |det M^(p)|^floor(q/2p))`, where `M^(p)` raises each
/// entry of the two-row move matrix to the `p`-th power. Zero determinants contribute nothing.
pub fn lcmd_closed_form_two_moves(ms: &MoveSet, q: usize) -> Result<BigUint> {
    if ms.len() != 2 {
        return Err(Error::NotTwoMoves(ms.len()));
    }
    if q == 0 {
        return Ok(BigUint::one());
    }
    let m = move_matrix(ms);
    let lcmd_m = lcmd(&m, u128::MAX)?;
    let mut acc = num_traits::pow(lcmd_m, q - 1);
    for p in 1..=q / 2 {
        let pw = |x: i64| num_traits::pow(BigInt::from(x), p);
        let d = (pw(m[0][0]) * pw(m[1][1]) - pw(m[0][1]) * pw(m[1][0])).magnitude().clone();
        if !d.is_zero() {
            acc = acc.lcm(&num_traits::pow(d, q / (2 * p)));
        }
    }
    Ok(acc)
}
