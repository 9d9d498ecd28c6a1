//! Subspaces of `F_p^n` in reduced row echelon form.

use std::fmt;

use crate::error::{Error, Result};

/// A subspace of `F_p^ambient` stored as its RREF basis. Equal subspaces have
/// identical representations, so derived `Eq`/`Hash`/`Ord` are canonical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    p: u32,
    ambient: usize,
    rows: Vec<Vec<u32>>,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u32) -> Result<()> {
    if is_prime(p as u64) {
        Ok(())
    } else {
        Err(Error::NotPrime(p as u64))
    }
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat: a^(p-2)
    let (mut base, mut exp, mut acc) = (a as u64 % p as u64, p as u64 - 2, 1u64);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p as u64;
        }
        base = base * base % p as u64;
        exp >>= 1;
    }
    acc as u32
}

/// In-place RREF; returns the nonzero rows.
fn rref(p: u32, ambient: usize, mut rows: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let pm = p as u64;
    let mut r = 0;
    for c in 0..ambient {
        let Some(pivot) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(r, pivot);
        let inv = inv_mod(rows[r][c], p) as u64;
        for x in rows[r].iter_mut() {
            *x = (*x as u64 * inv % pm) as u32;
        }
        for i in 0..rows.len() {
            if i == r || rows[i][c] == 0 {
                continue;
            }
            let f = rows[i][c] as u64;
            for j in 0..ambient {
                let sub = f * rows[r][j] as u64 % pm;
                rows[i][j] = ((rows[i][j] as u64 + pm - sub) % pm) as u32;
            }
        }
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    rows
}

impl Subspace {
    /// Span of the given vectors (entries reduced mod `p`).
    pub fn span(p: u32, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        check_prime(p)?;
        let mut rows = Vec::with_capacity(vectors.len());
        for v in vectors {
            if v.len() != ambient {
                return Err(Error::WidthMismatch {
                    expected: ambient,
                    found: v.len(),
                });
            }
            rows.push(v.iter().map(|&x| x % p).collect());
        }
        Ok(Subspace {
            p,
            ambient,
            rows: rref(p, ambient, rows),
        })
    }

    pub fn zero(p: u32, ambient: usize) -> Self {
        Subspace {
            p,
            ambient,
            rows: Vec::new(),
        }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.rows
    }

    fn pivot(row: &[u32]) -> usize {
        row.iter().position(|&x| x != 0).expect("RREF rows are nonzero")
    }

    pub fn contains_vector(&self, v: &[u32]) -> bool {
        let pm = self.p as u64;
        let mut rest: Vec<u64> = v.iter().map(|&x| (x % self.p) as u64).collect();
        for row in &self.rows {
            let c = Self::pivot(row);
            let f = rest[c];
            if f == 0 {
                continue;
            }
            for (x, &r) in rest.iter_mut().zip(row) {
                *x = (*x + pm - f * r as u64 % pm) % pm;
            }
        }
        rest.iter().all(|&x| x == 0)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.dim() <= other.dim() && self.rows.iter().all(|r| other.contains_vector(r))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.rows.clone();
        rows.extend(other.rows.iter().cloned());
        Subspace {
            p: self.p,
            ambient: self.ambient,
            rows: rref(self.p, self.ambient, rows),
        }
    }

    /// `dim(U ∩ W) = dim U + dim W - dim(U + W)`.
    pub fn intersection_dim(&self, other: &Subspace) -> usize {
        self.dim() + other.dim() - self.sum(other).dim()
    }

    /// Every subspace of dimension `d`, in lexicographic order of RREF bases.
    pub fn all_of_dim(p: u32, ambient: usize, d: usize) -> Result<Vec<Subspace>> {
        check_prime(p)?;
        let mut out = Vec::new();
        if d > ambient {
            return Ok(out);
        }
        let mut pivots: Vec<usize> = (0..d).collect();
        loop {
            // free positions: (row, col) with col > pivot[row] and col not a pivot
            let free: Vec<(usize, usize)> = (0..d)
                .flat_map(|r| {
                    let piv = &pivots;
                    ((piv[r] + 1)..ambient)
                        .filter(move |c| !piv.contains(c))
                        .map(move |c| (r, c))
                })
                .collect();
            let mut digits = vec![0u32; free.len()];
            loop {
                let mut rows = vec![vec![0u32; ambient]; d];
                for (r, &c) in pivots.iter().enumerate() {
                    rows[r][c] = 1;
                }
                for (&(r, c), &x) in free.iter().zip(&digits) {
                    rows[r][c] = x;
                }
                out.push(Subspace { p, ambient, rows });
                let mut i = 0;
                while i < digits.len() {
                    digits[i] += 1;
                    if digits[i] < p {
                        break;
                    }
                    digits[i] = 0;
                    i += 1;
                }
                if i == digits.len() {
                    break;
                }
            }
            // next pivot combination
            let Some(i) = (0..d).rev().find(|&i| pivots[i] < ambient - d + i) else {
                break;
            };
            pivots[i] += 1;
            for j in (i + 1)..d {
                pivots[j] = pivots[j - 1] + 1;
            }
        }
        out.sort();
        Ok(out)
    }

    /// Compact label such as `dim2 1,0,2;0,1,1`.
    pub fn label(&self) -> String {
        let rows: Vec<String> = self
            .rows
            .iter()
            .map(|r| r.iter().map(u32::to_string).collect::<Vec<_>>().join(","))
            .collect();
        format!("dim{} {}", self.dim(), rows.join(";"))
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.label())
    }
}

/// Gaussian binomial `[n choose d]_p`, saturating at `u128::MAX`.
pub fn gaussian_binomial(n: u32, d: u32, p: u64) -> u128 {
    if d > n {
        return 0;
    }
    let p = p as u128;
    // row[j] = [m choose j]_p, built by the q-Pascal rule
    let mut row = vec![0u128; d as usize + 1];
    row[0] = 1;
    for m in 1..=n {
        for j in (1..=d.min(m) as usize).rev() {
            let pj = p.checked_pow(j as u32).unwrap_or(u128::MAX);
            row[j] = row[j - 1].saturating_add(pj.saturating_mul(row[j]));
        }
    }
    row[d as usize]
}
