//! Exact chromatic number by DSATUR branch and bound.

use super::FlagComplex;

impl FlagComplex {
    /// Exact chromatic number of the 1-skeleton with a witness coloring
    /// (`coloring[v]` in `0..chi`). The empty complex has chromatic number 0.
    pub fn chromatic_number(&self) -> (usize, Vec<usize>) {
        let n = self.n;
        if n == 0 {
            return (0, Vec::new());
        }
        let mut best = greedy_dsatur(self);
        let mut best_k = best.iter().max().map_or(0, |&c| c + 1);
        let lower = self.clique_number();
        if best_k > lower {
            let mut colors = vec![usize::MAX; n];
            let mut search = Search {
                g: self,
                colors: &mut colors,
                best: &mut best,
                best_k: &mut best_k,
                lower,
            };
            search.run(0, 0);
        }
        (best_k, best)
    }
}

/// Saturation degree of `v`: number of distinct colors among colored neighbours.
fn saturation(g: &FlagComplex, colors: &[usize], v: usize) -> (usize, u128) {
    let mut seen: u128 = 0;
    let mut count = 0;
    for w in g.adj[v].iter() {
        let c = colors[w];
        if c != usize::MAX {
            if c < 128 {
                if seen & (1 << c) == 0 {
                    seen |= 1 << c;
                    count += 1;
                }
            } else {
                count += 1;
            }
        }
    }
    (count, seen)
}

/// Next vertex: max saturation, then max degree, ties by lowest index.
fn pick(g: &FlagComplex, colors: &[usize]) -> Option<usize> {
    let mut best: Option<(usize, usize, usize)> = None;
    for v in 0..g.n {
        if colors[v] != usize::MAX {
            continue;
        }
        let (sat, _) = saturation(g, colors, v);
        let deg = g.degree(v);
        let better = match best {
            None => true,
            Some((bs, bd, _)) => sat > bs || (sat == bs && deg > bd),
        };
        if better {
            best = Some((sat, deg, v));
        }
    }
    best.map(|(_, _, v)| v)
}

fn greedy_dsatur(g: &FlagComplex) -> Vec<usize> {
    let mut colors = vec![usize::MAX; g.n];
    while let Some(v) = pick(g, &colors) {
        let mut c = 0;
        while g.adj[v].iter().any(|w| colors[w] == c) {
            c += 1;
        }
        colors[v] = c;
    }
    colors
}

struct Search<'a> {
    g: &'a FlagComplex,
    colors: &'a mut Vec<usize>,
    best: &'a mut Vec<usize>,
    best_k: &'a mut usize,
    lower: usize,
}

impl Search<'_> {
    fn run(&mut self, colored: usize, used: usize) {
        if *self.best_k == self.lower {
            return;
        }
        if colored == self.g.n {
            if used < *self.best_k {
                *self.best_k = used;
                self.best.clone_from(self.colors);
            }
            return;
        }
        let v = pick(self.g, self.colors).expect("uncolored vertex");
        // colors 0..used, then one fresh color if it can still improve
        let limit = (used + 1).min(*self.best_k - 1);
        for c in 0..limit {
            if self.g.adj[v].iter().any(|w| self.colors[w] == c) {
                continue;
            }
            self.colors[v] = c;
            self.run(colored + 1, used.max(c + 1));
            self.colors[v] = usize::MAX;
            if *self.best_k == self.lower {
                return;
            }
        }
    }
}
