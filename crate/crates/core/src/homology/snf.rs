//! Smith normal form over the integers.
//!
//! Runs on `i64` with checked arithmetic and restarts on `BigInt` at the first
//! overflow. Pivot: smallest nonzero absolute value, ties by lowest row then
//! lowest column.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::IntegerMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rank: usize,
    /// Invariant factors `d_1 | d_2 | ... | d_rank`, all positive.
    pub divisors: Vec<BigInt>,
}

impl SmithForm {
    /// Invariant factors greater than one (the torsion part of a cokernel).
    pub fn nontrivial_divisors(&self) -> impl Iterator<Item = &BigInt> {
        self.divisors.iter().filter(|d| **d > BigInt::from(1))
    }
}

trait Entry: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn less_abs(&self, other: &Self) -> bool;
    fn quotient(&self, pivot: &Self) -> Self;
    fn is_multiple_of(&self, pivot: &Self) -> bool;
    /// `self - q * other`, `None` on overflow.
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self>;
    fn add(&self, other: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Entry for i64 {
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn less_abs(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn quotient(&self, pivot: &Self) -> Self {
        // truncated division; |remainder| < |pivot|
        self.checked_div(*pivot).unwrap_or(0)
    }
    fn is_multiple_of(&self, pivot: &Self) -> bool {
        self.checked_rem(*pivot).is_none_or(|r| r == 0)
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        self.checked_sub(q.checked_mul(*other)?)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        self.checked_add(*other)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Entry for BigInt {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn less_abs(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }
    fn quotient(&self, pivot: &Self) -> Self {
        self / pivot
    }
    fn is_multiple_of(&self, pivot: &Self) -> bool {
        Integer::is_multiple_of(self, pivot)
    }
    fn sub_mul(&self, q: &Self, other: &Self) -> Option<Self> {
        Some(self - q * other)
    }
    fn add(&self, other: &Self) -> Option<Self> {
        Some(self + other)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Work<T> {
    rows: usize,
    cols: usize,
    a: Vec<T>,
}

impl<T: Entry> Work<T> {
    #[inline]
    fn at(&self, i: usize, j: usize) -> &T {
        &self.a[i * self.cols + j]
    }

    fn swap_rows(&mut self, i: usize, k: usize) {
        if i == k {
            return;
        }
        for j in 0..self.cols {
            self.a.swap(i * self.cols + j, k * self.cols + j);
        }
    }

    fn swap_cols(&mut self, j: usize, k: usize) {
        if j == k {
            return;
        }
        for i in 0..self.rows {
            self.a.swap(i * self.cols + j, i * self.cols + k);
        }
    }

    /// row_i -= q * row_k
    fn row_sub(&mut self, i: usize, k: usize, q: &T, from: usize) -> Option<()> {
        for j in from..self.cols {
            let src = &self.a[k * self.cols + j];
            if src.is_zero() {
                continue;
            }
            let v = self.a[i * self.cols + j].sub_mul(q, src)?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }

    /// col_j -= q * col_k
    fn col_sub(&mut self, j: usize, k: usize, q: &T, from: usize) -> Option<()> {
        for i in from..self.rows {
            let src = &self.a[i * self.cols + k];
            if src.is_zero() {
                continue;
            }
            let v = self.a[i * self.cols + j].sub_mul(q, src)?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }

    fn row_add(&mut self, i: usize, k: usize, from: usize) -> Option<()> {
        for j in from..self.cols {
            let v = self.a[i * self.cols + j].add(&self.a[k * self.cols + j])?;
            self.a[i * self.cols + j] = v;
        }
        Some(())
    }

    /// Smallest nonzero |entry| in the block `[t.., t..]`, ties lowest row then column.
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = self.at(i, j);
                if v.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if !v.less_abs(self.at(bi, bj)) => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(mut self) -> Option<(usize, Vec<BigInt>)> {
        let mut t = 0;
        let mut divisors = Vec::new();
        while t < self.rows.min(self.cols) {
            let Some((pi, pj)) = self.pivot(t) else {
                break;
            };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                let p = self.at(t, t).clone();
                for i in (t + 1)..self.rows {
                    if self.at(i, t).is_zero() {
                        continue;
                    }
                    let q = self.at(i, t).quotient(&p);
                    self.row_sub(i, t, &q, t)?;
                    if !self.at(i, t).is_zero() {
                        clean = false;
                    }
                }
                for j in (t + 1)..self.cols {
                    if self.at(t, j).is_zero() {
                        continue;
                    }
                    let q = self.at(t, j).quotient(&p);
                    self.col_sub(j, t, &q, t)?;
                    if !self.at(t, j).is_zero() {
                        clean = false;
                    }
                }
                if !clean {
                    // move the smallest remainder in row/column t onto the diagonal
                    let mut best = (t, t);
                    for i in (t + 1)..self.rows {
                        let v = self.at(i, t);
                        if !v.is_zero() && v.less_abs(self.at(best.0, best.1)) {
                            best = (i, t);
                        }
                    }
                    for j in (t + 1)..self.cols {
                        let v = self.at(t, j);
                        if !v.is_zero() && v.less_abs(self.at(best.0, best.1)) {
                            best = (t, j);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility of the remaining block by the pivot
                let mut offender = None;
                'scan: for i in (t + 1)..self.rows {
                    for j in (t + 1)..self.cols {
                        if !self.at(i, j).is_multiple_of(&p) {
                            offender = Some(i);
                            break 'scan;
                        }
                    }
                }
                match offender {
                    Some(i) => self.row_add(t, i, t)?,
                    None => break,
                }
            }
            let p = self.at(t, t).clone();
            let p = if p.is_negative() { p.neg()? } else { p };
            divisors.push(p.to_big());
            t += 1;
        }
        Some((t, divisors))
    }
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SmithForm {
    let (rows, cols) = (m.rows(), m.cols());
    if let Some(small) = m.as_i64() {
        let work = Work {
            rows,
            cols,
            a: small.to_vec(),
        };
        if let Some((rank, divisors)) = work.run() {
            return SmithForm { rank, divisors };
        }
    }
    let work = Work {
        rows,
        cols,
        a: m.to_big_entries(),
    };
    let (rank, divisors) = work.run().expect("BigInt arithmetic cannot overflow");
    SmithForm { rank, divisors }
}

/// Forces the arbitrary-precision path; used to cross-check the escalation logic.
pub fn smith_normal_form_big(m: &IntegerMatrix) -> SmithForm {
    let work = Work {
        rows: m.rows(),
        cols: m.cols(),
        a: m.to_big_entries(),
    };
    let (rank, divisors) = work.run().expect("BigInt arithmetic cannot overflow");
    SmithForm { rank, divisors }
}
