//! Magic cubes induced by projections onto panels, with zero-block bounds,
//! positive diagonals and searches for independent and opposite chambers.

mod avoidance;

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::building::Building;
use crate::error::{Error, Result};

pub use avoidance::{avoidance_probability, brute_p_mn, placement_count};

/// Dense storage is used up to this many entries.
pub const DENSE_LIMIT: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Weights {
    Dense(Vec<u64>),
    Sparse(BTreeMap<Vec<usize>, u64>),
}

/// A nonnegative weight on `{0..t}^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MagicCube {
    n: usize,
    t: usize,
    weights: Weights,
    /// `axis_labels[i][x]`: the chamber of the `i`-th panel star labelled `x`
    /// (empty for cubes not built from a building).
    pub axis_labels: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZeroBlock {
    pub k: usize,
    /// Whether `k` is the exact maximum or a greedy lower bound.
    pub exact: bool,
    /// Index sets of size `k` on every axis spanning a zero-weight block.
    pub axes: Vec<Vec<usize>>,
    /// `k / t < n^2 / (1 + n^2)`.
    pub bound_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagonal {
    /// `perms[i][j]` is `σ_i(j)`.
    pub perms: Vec<Vec<usize>>,
    /// Entries `(σ_1(j), ..., σ_n(j))` have positive weight for `j < m`.
    pub m: usize,
}

/// `⌈t / (1 + n^2)⌉`.
pub fn diagonal_bound(t: usize, n: usize) -> usize {
    t.div_ceil(1 + n * n)
}

impl MagicCube {
    pub fn zeros(n: usize, t: usize) -> Self {
        let size = (t as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
        let weights = if size <= DENSE_LIMIT {
            Weights::Dense(vec![0; size as usize])
        } else {
            Weights::Sparse(BTreeMap::new())
        };
        MagicCube {
            n,
            t,
            weights,
            axis_labels: Vec::new(),
        }
    }

    pub fn constant(n: usize, t: usize, c: u64) -> Self {
        let mut cube = Self::zeros(n, t);
        for x in cube.all_indices() {
            cube.set(&x, c);
        }
        cube
    }

    /// Cube counting points `y` by `(f_1(y), ..., f_n(y))`; `maps[i][y] = f_i(y)`.
    pub fn from_maps(t: usize, maps: &[Vec<usize>]) -> Self {
        let n = maps.len();
        let mut cube = Self::zeros(n, t);
        let points = maps.first().map_or(0, Vec::len);
        let mut x = vec![0; n];
        for y in 0..points {
            for i in 0..n {
                x[i] = maps[i][y];
            }
            cube.add(&x, 1);
        }
        cube
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn side(&self) -> usize {
        self.t
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.weights, Weights::Dense(_))
    }

    fn linear(&self, x: &[usize]) -> usize {
        x.iter().fold(0, |acc, &xi| acc * self.t + xi)
    }

    fn all_indices(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut x = vec![0; self.n];
        if self.t == 0 {
            return out;
        }
        loop {
            out.push(x.clone());
            let mut i = self.n;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                x[i] += 1;
                if x[i] < self.t {
                    break;
                }
                x[i] = 0;
            }
        }
    }

    pub fn get(&self, x: &[usize]) -> u64 {
        match &self.weights {
            Weights::Dense(d) => d[self.linear(x)],
            Weights::Sparse(m) => m.get(x).copied().unwrap_or(0),
        }
    }

    pub fn set(&mut self, x: &[usize], w: u64) {
        assert!(x.len() == self.n && x.iter().all(|&xi| xi < self.t), "index out of cube");
        let idx = self.is_dense().then(|| self.linear(x));
        match &mut self.weights {
            Weights::Dense(d) => d[idx.expect("dense index")] = w,
            Weights::Sparse(m) => {
                if w == 0 {
                    m.remove(x);
                } else {
                    m.insert(x.to_vec(), w);
                }
            }
        }
    }

    pub fn add(&mut self, x: &[usize], w: u64) {
        let cur = self.get(x);
        self.set(x, cur + w);
    }

    /// Nonzero entries in lexicographic order of their index tuples.
    pub fn entries(&self) -> Vec<(Vec<usize>, u64)> {
        match &self.weights {
            Weights::Dense(d) => {
                let mut out = Vec::new();
                let mut x = vec![0; self.n];
                for &w in d {
                    if w > 0 {
                        out.push((x.clone(), w));
                    }
                    for i in (0..self.n).rev() {
                        x[i] += 1;
                        if x[i] < self.t {
                            break;
                        }
                        x[i] = 0;
                    }
                }
                out
            }
            Weights::Sparse(m) => m.iter().map(|(k, &w)| (k.clone(), w)).collect(),
        }
    }

    pub fn total(&self) -> u64 {
        self.entries().iter().map(|(_, w)| w).sum()
    }

    /// Common slice mass `N`, checked over every axis and index.
    pub fn verify_magic(&self) -> Result<u64> {
        let mut sums = vec![vec![0u64; self.t]; self.n];
        for (x, w) in self.entries() {
            for (i, &xi) in x.iter().enumerate() {
                sums[i][xi] += w;
            }
        }
        let expected = sums.first().and_then(|s| s.first()).copied().unwrap_or(0);
        for (axis, row) in sums.iter().enumerate() {
            for (index, &observed) in row.iter().enumerate() {
                if observed != expected {
                    return Err(Error::NotMagic {
                        axis,
                        index,
                        observed,
                        expected,
                    });
                }
            }
        }
        Ok(expected)
    }

    /// Pushforward along per-axis permutations: entry `x` moves to `(σ_1(x_1), ...)`.
    pub fn permuted(&self, perms: &[Vec<usize>]) -> MagicCube {
        let mut out = Self::zeros(self.n, self.t);
        let mut y = vec![0; self.n];
        for (x, w) in self.entries() {
            for i in 0..self.n {
                y[i] = perms[i][x[i]];
            }
            out.set(&y, w);
        }
        out.axis_labels = self
            .axis_labels
            .iter()
            .zip(perms)
            .map(|(labels, p)| {
                let mut relabeled = labels.clone();
                for (x, &c) in labels.iter().enumerate() {
                    relabeled[p[x]] = c;
                }
                relabeled
            })
            .collect();
        out
    }

    /// Mass of the block `A_1 × ... × A_n` given by per-axis membership masks.
    fn block_mass(&self, entries: &[(Vec<usize>, u64)], members: &[Vec<bool>]) -> u64 {
        entries
            .iter()
            .filter(|(x, _)| x.iter().enumerate().all(|(i, &xi)| members[i][xi]))
            .map(|(_, w)| w)
            .sum()
    }

    /// Largest `k` admitting `k`-subsets `A_1, ..., A_n` of the axes with
    /// `μ(A_1 × ... × A_n) = 0`. Exact when `t <= 8` and `n <= 3`, otherwise a
    /// greedy lower bound.
    pub fn max_zero_block(&self) -> Result<ZeroBlock> {
        if self.total() == 0 {
            return Err(Error::ZeroWeightCube);
        }
        let entries = self.entries();
        let (k, exact, axes) = if self.t <= 8 && self.n <= 3 {
            let (k, axes) = self.exact_zero_block(&entries);
            (k, true, axes)
        } else {
            let (k, axes) = self.greedy_zero_block(&entries);
            (k, false, axes)
        };
        let n2 = (self.n * self.n) as u128;
        let bound_holds = (k as u128) * (1 + n2) < (self.t as u128) * n2;
        Ok(ZeroBlock {
            k,
            exact,
            axes,
            bound_holds,
        })
    }

    fn exact_zero_block(&self, entries: &[(Vec<usize>, u64)]) -> (usize, Vec<Vec<usize>>) {
        let t = self.t;
        let n = self.n;
        let full = (1u32 << t) - 1;
        let bits = |m: u32| -> Vec<usize> { (0..t).filter(|&i| m >> i & 1 == 1).collect() };
        if n == 1 {
            let zeros: u32 = (0..t).filter(|&x| self.get(&[x]) == 0).fold(0, |m, x| m | 1 << x);
            let k = zeros.count_ones() as usize;
            return (k, vec![bits(zeros)]);
        }
        let mut best = (0usize, vec![Vec::new(); n]);
        // fix subsets of the first n-1 axes; the last axis gets every index
        // whose fibre over the fixed block is empty
        let combos = 1u64 << (t * (n - 1));
        for code in 0..combos {
            let masks: Vec<u32> = (0..n - 1).map(|i| ((code >> (i * t)) as u32) & full).collect();
            let smallest = masks.iter().map(|m| m.count_ones() as usize).min().unwrap();
            if smallest <= best.0 {
                continue;
            }
            let mut last = full;
            for (x, _) in entries {
                if (0..n - 1).all(|i| masks[i] >> x[i] & 1 == 1) {
                    last &= !(1 << x[n - 1]);
                }
            }
            let k = smallest.min(last.count_ones() as usize);
            if k > best.0 {
                let mut axes: Vec<Vec<usize>> = masks.iter().map(|&m| bits(m)[..k].to_vec()).collect();
                axes.push(bits(last)[..k].to_vec());
                best = (k, axes);
            }
        }
        best
    }

    fn greedy_zero_block(&self, entries: &[(Vec<usize>, u64)]) -> (usize, Vec<Vec<usize>>) {
        let mut members = vec![vec![true; self.t]; self.n];
        let mut sizes = vec![self.t; self.n];
        while self.block_mass(entries, &members) > 0 {
            // shrink the largest axis (lowest index on ties) by its heaviest index
            let axis = (0..self.n).max_by_key(|&i| (sizes[i], std::cmp::Reverse(i))).unwrap();
            let mut mass = vec![0u64; self.t];
            for (x, w) in entries {
                if x.iter().enumerate().all(|(i, &xi)| members[i][xi]) {
                    mass[x[axis]] += w;
                }
            }
            let drop = (0..self.t)
                .filter(|&x| members[axis][x])
                .max_by_key(|&x| (mass[x], std::cmp::Reverse(x)))
                .unwrap();
            members[axis][drop] = false;
            sizes[axis] -= 1;
        }
        let k = *sizes.iter().min().unwrap();
        let axes = members
            .iter()
            .map(|m| (0..self.t).filter(|&x| m[x]).take(k).collect())
            .collect();
        (k, axes)
    }

    /// Axis permutations whose first `m` diagonal entries are positive, with
    /// `m >= ⌈t / (1 + n^2)⌉`. The greedy pass stops only when the unused
    /// block has zero mass, which is what the bound needs.
    pub fn positive_diagonal(&self) -> Result<Diagonal> {
        if self.total() == 0 {
            return Err(Error::ZeroWeightCube);
        }
        let entries = self.entries();
        let mut used = vec![vec![false; self.t]; self.n];
        let mut picked: Vec<Vec<usize>> = Vec::new();
        for (x, _) in &entries {
            if x.iter().enumerate().all(|(i, &xi)| !used[i][xi]) {
                for (i, &xi) in x.iter().enumerate() {
                    used[i][xi] = true;
                }
                picked.push(x.clone());
            }
        }
        let target = diagonal_bound(self.t, self.n);
        if picked.len() < target {
            if let Some(found) = transversal_search(&entries, self.n, self.t, target) {
                picked = found;
            }
        }
        Ok(self.diagonal_from(&picked))
    }

    fn diagonal_from(&self, picked: &[Vec<usize>]) -> Diagonal {
        let perms = (0..self.n)
            .map(|i| {
                let mut perm: Vec<usize> = picked.iter().map(|x| x[i]).collect();
                let rest: Vec<usize> = (0..self.t).filter(|v| !perm.contains(v)).collect();
                perm.extend(rest);
                perm
            })
            .collect();
        Diagonal {
            perms,
            m: picked.len(),
        }
    }

    /// Weight of the `j`-th diagonal entry under `perms`.
    pub fn diagonal_weight(&self, perms: &[Vec<usize>], j: usize) -> u64 {
        let x: Vec<usize> = perms.iter().map(|p| p[j]).collect();
        self.get(&x)
    }

    /// CSV: header `# n=<n> t=<t> N=<N>`, then one `i_1,...,i_n,weight` row per nonzero entry.
    pub fn to_csv(&self) -> String {
        let n_weight = self.verify_magic().map_or_else(|_| "?".to_string(), |w| w.to_string());
        let mut out = format!("# n={} t={} N={}\n", self.n, self.t, n_weight);
        for (x, w) in self.entries() {
            let idx: Vec<String> = x.iter().map(usize::to_string).collect();
            out.push_str(&format!("{},{}\n", idx.join(","), w));
        }
        out
    }
}

/// Depth-first search for `target` positive entries with distinct coordinates on every axis.
fn transversal_search(entries: &[(Vec<usize>, u64)], n: usize, t: usize, target: usize) -> Option<Vec<Vec<usize>>> {
    fn go(
        entries: &[(Vec<usize>, u64)],
        from: usize,
        used: &mut Vec<Vec<bool>>,
        picked: &mut Vec<Vec<usize>>,
        target: usize,
    ) -> bool {
        if picked.len() == target {
            return true;
        }
        for e in from..entries.len() {
            let x = &entries[e].0;
            if x.iter().enumerate().any(|(i, &xi)| used[i][xi]) {
                continue;
            }
            for (i, &xi) in x.iter().enumerate() {
                used[i][xi] = true;
            }
            picked.push(x.clone());
            if go(entries, e + 1, used, picked, target) {
                return true;
            }
            picked.pop();
            for (i, &xi) in x.iter().enumerate() {
                used[i][xi] = false;
            }
        }
        false
    }
    let mut used = vec![vec![false; t]; n];
    let mut picked = Vec::new();
    go(entries, 0, &mut used, &mut picked, target).then_some(picked)
}

/// The cube of projections onto the given panels (indices into `b.panels()`).
pub fn cube_from_panels(b: &Building, panels: &[usize]) -> Result<MagicCube> {
    let mut seen = HashSet::new();
    for &p in panels {
        if p >= b.panels().len() {
            return Err(Error::IndexOutOfRange {
                index: p,
                len: b.panels().len(),
            });
        }
        if !seen.insert(p) {
            return Err(Error::DuplicatePanel(p));
        }
    }
    let t = b.thickness();
    let labels: Vec<Vec<usize>> = panels.iter().map(|&p| b.panel_star(p).to_vec()).collect();
    let position: Vec<HashMap<usize, usize>> = labels
        .iter()
        .map(|l| l.iter().enumerate().map(|(x, &c)| (c, x)).collect())
        .collect();
    let mut maps = vec![Vec::with_capacity(b.chamber_count()); panels.len()];
    for d in 0..b.chamber_count() {
        for (i, &p) in panels.iter().enumerate() {
            let e = b.project_to_panel(p, d)?;
            maps[i].push(position[i][&e]);
        }
    }
    let mut cube = MagicCube::from_maps(t, &maps);
    cube.axis_labels = labels;
    Ok(cube)
}

/// Chambers `D_1..D_m` whose projections onto every listed panel are pairwise distinct.
pub fn independent_chambers(b: &Building, panels: &[usize], m: usize) -> Result<Vec<usize>> {
    let cube = cube_from_panels(b, panels)?;
    let n = panels.len();
    let t = cube.side();
    let entries = cube.entries();
    let diag = cube.positive_diagonal()?;
    let picked: Vec<Vec<usize>> = if m <= diag.m {
        (0..m).map(|j| diag.perms.iter().map(|p| p[j]).collect()).collect()
    } else {
        match transversal_search(&entries, n, t, m) {
            Some(found) => found,
            None => return Err(Error::NotFound { achieved: diag.m }),
        }
    };
    // first chamber realising each tuple
    let mut realiser: HashMap<Vec<usize>, usize> = HashMap::new();
    for d in 0..b.chamber_count() {
        let mut x = Vec::with_capacity(n);
        for (i, &p) in panels.iter().enumerate() {
            let e = b.project_to_panel(p, d)?;
            x.push(cube.axis_labels[i].iter().position(|&c| c == e).expect("projection lies in the star"));
        }
        realiser.entry(x).or_insert(d);
    }
    let chosen: Vec<usize> = picked.iter().map(|x| realiser[x]).collect();
    for &p in panels {
        let mut images = HashSet::new();
        for &d in &chosen {
            if !images.insert(b.project_to_panel(p, d)?) {
                return Err(Error::NotFound { achieved: 0 });
            }
        }
    }
    Ok(chosen)
}

/// Every simplex (as a sorted vertex list) of the union of the given chambers.
fn faces_of(b: &Building, chambers: &[usize]) -> HashSet<Vec<usize>> {
    let mut out = HashSet::new();
    for &c in chambers {
        let flag = &b.chambers()[c];
        for mask in 1u32..(1 << flag.len()) {
            out.insert(
                flag.iter()
                    .enumerate()
                    .filter(|&(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &v)| v)
                    .collect(),
            );
        }
    }
    out
}

fn hull_union(b: &Building, es: &[usize], d: usize) -> Result<Vec<usize>> {
    let mut all = Vec::new();
    for &e in es {
        all.extend(b.convex_hull(e, d)?);
    }
    all.sort_unstable();
    all.dedup();
    Ok(all)
}

/// Whether `(∪ conv(E_i, D)) ∩ (∪ conv(E_i, D'))` is exactly the subcomplex `∪ E_i`.
pub fn hulls_meet_in(b: &Building, es: &[usize], d: usize, d2: usize) -> Result<bool> {
    let a = faces_of(b, &hull_union(b, es, d)?);
    let c = faces_of(b, &hull_union(b, es, d2)?);
    let target = faces_of(b, es);
    let meet: HashSet<Vec<usize>> = a.intersection(&c).cloned().collect();
    Ok(meet == target)
}

/// `l` chambers opposite every `E_i` whose hull unions pairwise meet only in `∪ E_i`.
/// Candidates are scanned by total distance to `es` descending, then by index.
pub fn opposite_spread(b: &Building, es: &[usize], l: usize) -> Result<Vec<usize>> {
    for &e in es {
        b.gallery_distance(e, e)?;
    }
    let mut candidates: Vec<usize> = (0..b.chamber_count())
        .filter(|&d| es.iter().all(|&e| b.gallery_distance(e, d).expect("checked") == b.diameter()))
        .collect();
    let total = |d: usize| -> usize { es.iter().map(|&e| b.gallery_distance(e, d).expect("checked")).sum() };
    candidates.sort_by_key(|&d| (std::cmp::Reverse(total(d)), d));

    let target = faces_of(b, es);
    let mut chosen: Vec<(usize, HashSet<Vec<usize>>)> = Vec::new();
    for d in candidates {
        if chosen.len() == l {
            break;
        }
        let faces = faces_of(b, &hull_union(b, es, d)?);
        let compatible = chosen
            .iter()
            .all(|(_, other)| faces.intersection(other).cloned().collect::<HashSet<_>>() == target);
        if compatible {
            chosen.push((d, faces));
        }
    }
    let out: Vec<usize> = chosen.into_iter().map(|(d, _)| d).collect();
    if out.len() < l {
        return Err(Error::NotFound { achieved: out.len() });
    }
    for (i, &d) in out.iter().enumerate() {
        for &d2 in &out[i + 1..] {
            assert!(hulls_meet_in(b, es, d, d2)?, "spread verification failed");
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests;
