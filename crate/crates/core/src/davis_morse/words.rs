//! Words in right-angled Coxeter groups.

use std::collections::{BTreeSet, HashSet, VecDeque};

use crate::flag_complex::FlagComplex;

fn commute(l: &FlagComplex, a: u8, b: u8) -> bool {
    l.adjacent(a as usize, b as usize)
}

/// `w · v` for a reduced word `w`, again reduced: the last `v` is cancelled
/// when every later letter commutes with it, otherwise `v` is appended.
pub fn multiply_letter(l: &FlagComplex, w: &[u8], v: u8) -> Vec<u8> {
    let mut out = w.to_vec();
    if let Some(i) = w.iter().rposition(|&x| x == v) {
        if w[i + 1..].iter().all(|&x| commute(l, x, v)) {
            out.remove(i);
            return out;
        }
    }
    out.push(v);
    out
}

/// Lexicographically least rearrangement of a reduced word by commutations:
/// repeatedly emit the smallest letter that commutes with everything before it.
pub fn lex_normal_form(l: &FlagComplex, w: &[u8]) -> Vec<u8> {
    let mut rest = w.to_vec();
    let mut out = Vec::with_capacity(w.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            let x = rest[i];
            if best.is_some_and(|b| rest[b] <= x) {
                continue;
            }
            if rest[..i].iter().all(|&y| y != x && commute(l, x, y)) {
                best = Some(i);
            }
        }
        out.push(rest.remove(best.expect("the first letter is always movable")));
    }
    out
}

/// Normal form of an arbitrary word.
pub fn normal_form(l: &FlagComplex, word: &[usize]) -> Vec<u8> {
    let mut w = Vec::new();
    for &v in word {
        w = multiply_letter(l, &w, v as u8);
    }
    lex_normal_form(l, &w)
}

/// Canonical form by exhaustive rewriting: explore every word reachable by
/// deleting a pair of equal adjacent letters or swapping adjacent commuting
/// letters, and return the lexicographically least among the shortest.
/// Exponential; meant for short words.
pub fn exhaustive_canonical(l: &FlagComplex, word: &[usize]) -> Vec<u8> {
    let start: Vec<u8> = word.iter().map(|&v| v as u8).collect();
    let mut seen: HashSet<Vec<u8>> = HashSet::from([start.clone()]);
    let mut queue = VecDeque::from([start]);
    let mut shortest: BTreeSet<Vec<u8>> = BTreeSet::new();
    let mut best_len = usize::MAX;
    while let Some(w) = queue.pop_front() {
        if w.len() < best_len {
            best_len = w.len();
            shortest.clear();
        }
        if w.len() == best_len {
            shortest.insert(w.clone());
        }
        for i in 0..w.len().saturating_sub(1) {
            let (a, b) = (w[i], w[i + 1]);
            let mut next = w.clone();
            if a == b {
                next.drain(i..i + 2);
            } else if commute(l, a, b) {
                next.swap(i, i + 1);
            } else {
                continue;
            }
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    shortest.into_iter().next().unwrap_or_default()
}
