//! Fixed-width vertex subsets.
//!
//! A [`VertexSet`] is a state of the legal-coset game and at the same time an
//! element of the elementary abelian group `(Z/2)^n`; symmetric difference is
//! the group operation.

use std::fmt;

use crate::error::{Error, Result};

const WORD: usize = 64;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexSet {
    width: usize,
    words: Vec<u64>,
}

impl VertexSet {
    pub fn empty(width: usize) -> Self {
        VertexSet {
            width,
            words: vec![0; width.div_ceil(WORD)],
        }
    }

    pub fn full(width: usize) -> Self {
        let mut s = Self::empty(width);
        for w in s.words.iter_mut() {
            *w = u64::MAX;
        }
        s.trim();
        s
    }

    pub fn from_indices(width: usize, indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut s = Self::empty(width);
        for i in indices {
            if i >= width {
                return Err(Error::IndexOutOfRange {
                    index: i,
                    len: width,
                });
            }
            s.insert(i);
        }
        Ok(s)
    }

    /// Builds a set of width at most 64 from a bit mask; bits above `width` are dropped.
    pub fn from_mask(width: usize, mask: u64) -> Self {
        assert!(width <= WORD, "from_mask requires width <= 64");
        let mut s = Self::empty(width);
        if width > 0 {
            s.words[0] = mask;
            s.trim();
        }
        s
    }

    /// Low 64 bits; exact when `width <= 64`.
    pub fn to_mask(&self) -> u64 {
        self.words.first().copied().unwrap_or(0)
    }

    pub fn from_words(width: usize, words: Vec<u64>) -> Self {
        let mut words = words;
        words.resize(width.div_ceil(WORD), 0);
        let mut s = VertexSet { width, words };
        s.trim();
        s
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    fn trim(&mut self) {
        let rem = self.width % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        i < self.width && (self.words[i / WORD] >> (i % WORD)) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    #[inline]
    pub fn toggle(&mut self, i: usize) {
        debug_assert!(i < self.width);
        self.words[i / WORD] ^= 1 << (i % WORD);
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn first(&self) -> Option<usize> {
        self.words
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(k, w)| k * WORD + w.trailing_zeros() as usize)
    }

    pub fn iter(&self) -> Ones<'_> {
        Ones {
            words: &self.words,
            index: 0,
            current: self.words.first().copied().unwrap_or(0),
        }
    }

    fn check_width(&self, other: &VertexSet) -> Result<()> {
        if self.width != other.width {
            return Err(Error::WidthMismatch {
                expected: self.width,
                found: other.width,
            });
        }
        Ok(())
    }

    /// Group operation of `(Z/2)^n`.
    pub fn symmetric_difference(&self, other: &VertexSet) -> Result<VertexSet> {
        self.check_width(other)?;
        let mut out = self.clone();
        out.xor_assign(other);
        Ok(out)
    }

    /// In-place symmetric difference; widths must agree.
    pub fn xor_assign(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn intersection(&self, other: &VertexSet) -> Result<VertexSet> {
        self.check_width(other)?;
        let mut out = self.clone();
        out.and_assign(other);
        Ok(out)
    }

    pub fn and_assign(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn or_assign(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Removes every element of `other`.
    pub fn difference_assign(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.width, other.width);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    /// Clears every index `<= v`.
    pub fn clear_through(&mut self, v: usize) {
        let word = v / WORD;
        for w in self.words.iter_mut().take(word) {
            *w = 0;
        }
        if let Some(w) = self.words.get_mut(word) {
            let bit = v % WORD;
            *w &= if bit == WORD - 1 { 0 } else { !((2u64 << bit) - 1) };
        }
    }

    pub fn union(&self, other: &VertexSet) -> Result<VertexSet> {
        self.check_width(other)?;
        let mut out = self.clone();
        out.or_assign(other);
        Ok(out)
    }

    pub fn complement(&self) -> VertexSet {
        let mut out = self.clone();
        for w in out.words.iter_mut() {
            *w = !*w;
        }
        out.trim();
        out
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.width == other.width && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Lowercase hex of the integer `sum 2^i`, zero-padded to `ceil(width / 4)` digits.
    pub fn to_hex(&self) -> String {
        let digits = self.width.div_ceil(4).max(1);
        let mut out = String::with_capacity(digits);
        for d in (0..digits).rev() {
            let bit = d * 4;
            let word = bit / WORD;
            let nibble = if word < self.words.len() {
                (self.words[word] >> (bit % WORD)) & 0xf
            } else {
                0
            };
            out.push(char::from_digit(nibble as u32, 16).unwrap());
        }
        out
    }

    pub fn from_hex(width: usize, hex: &str) -> Result<VertexSet> {
        let mut s = VertexSet::empty(width);
        for (pos, ch) in hex.chars().rev().enumerate() {
            let nibble = ch.to_digit(16).ok_or_else(|| Error::Parse {
                line: 0,
                msg: format!("invalid hex digit {ch:?}"),
            })? as u64;
            for b in 0..4 {
                if (nibble >> b) & 1 == 1 {
                    let i = pos * 4 + b;
                    if i >= width {
                        return Err(Error::IndexOutOfRange { index: i, len: width });
                    }
                    s.insert(i);
                }
            }
        }
        Ok(s)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Ones<'a> {
    words: &'a [u64],
    index: usize,
    current: u64,
}

impl Iterator for Ones<'_> {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        loop {
            if self.current != 0 {
                let tz = self.current.trailing_zeros() as usize;
                self.current &= self.current - 1;
                return Some(self.index * WORD + tz);
            }
            self.index += 1;
            if self.index >= self.words.len() {
                return None;
            }
            self.current = self.words[self.index];
        }
    }
}
