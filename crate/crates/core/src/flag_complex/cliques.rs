//! Clique (simplex) enumeration.

use super::{FlagComplex, Simplex};
use crate::vertex_set::VertexSet;

impl FlagComplex {
    /// Visits every nonempty clique in lexicographic order of sorted vertex lists.
    pub fn for_each_clique(&self, mut visit: impl FnMut(&[usize])) {
        let mut stack = Vec::new();
        for v in 0..self.n {
            let mut later = self.adj[v].clone();
            clear_up_to(&mut later, v);
            stack.push(v);
            self.extend_clique(&mut stack, &later, &mut visit);
            stack.pop();
        }
    }

    fn extend_clique(
        &self,
        stack: &mut Vec<usize>,
        candidates: &VertexSet,
        visit: &mut impl FnMut(&[usize]),
    ) {
        visit(stack);
        for w in candidates.iter() {
            let mut next = candidates.clone();
            next.and_assign(&self.adj[w]);
            clear_up_to(&mut next, w);
            stack.push(w);
            self.extend_clique(stack, &next, visit);
            stack.pop();
        }
    }

    /// All simplices of dimension `k`, in lexicographic order.
    pub fn simplices(&self, k: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        self.for_each_clique_of_size(k + 1, |c| out.push(Simplex(c.to_vec())));
        out
    }

    /// Visits cliques with exactly `size` vertices, lexicographically, pruning deeper branches.
    pub fn for_each_clique_of_size(&self, size: usize, mut visit: impl FnMut(&[usize])) {
        if size == 0 {
            visit(&[]);
            return;
        }
        let mut stack = Vec::with_capacity(size);
        for v in 0..self.n {
            let mut later = self.adj[v].clone();
            clear_up_to(&mut later, v);
            stack.push(v);
            self.sized_rec(&mut stack, &later, size, &mut visit);
            stack.pop();
        }
    }

    fn sized_rec(
        &self,
        stack: &mut Vec<usize>,
        candidates: &VertexSet,
        size: usize,
        visit: &mut impl FnMut(&[usize]),
    ) {
        if stack.len() == size {
            visit(stack);
            return;
        }
        if stack.len() + candidates.len() < size {
            return;
        }
        for w in candidates.iter() {
            let mut next = candidates.clone();
            next.and_assign(&self.adj[w]);
            clear_up_to(&mut next, w);
            stack.push(w);
            self.sized_rec(stack, &next, size, visit);
            stack.pop();
        }
    }

    /// Maximal cliques via pivoting Bron-Kerbosch over a degeneracy ordering,
    /// returned in lexicographic order.
    pub fn maximal_cliques(&self) -> Vec<Simplex> {
        let mut out = Vec::new();
        let order = self.degeneracy_order();
        let mut rank = vec![0usize; self.n];
        for (i, &v) in order.iter().enumerate() {
            rank[v] = i;
        }
        for &v in &order {
            let mut p = VertexSet::empty(self.n);
            let mut x = VertexSet::empty(self.n);
            for w in self.adj[v].iter() {
                if rank[w] > rank[v] {
                    p.insert(w);
                } else {
                    x.insert(w);
                }
            }
            let mut r = vec![v];
            self.bron_kerbosch(&mut r, p, x, &mut out);
        }
        for c in out.iter_mut() {
            c.0.sort_unstable();
        }
        out.sort();
        out
    }

    fn bron_kerbosch(
        &self,
        r: &mut Vec<usize>,
        mut p: VertexSet,
        mut x: VertexSet,
        out: &mut Vec<Simplex>,
    ) {
        if p.is_empty() {
            if x.is_empty() {
                out.push(Simplex(r.clone()));
            }
            return;
        }
        // pivot maximising |P ∩ N(u)| over P ∪ X
        let mut pivot = None;
        let mut best = 0usize;
        for u in p.iter().chain(x.iter()) {
            let mut c = p.clone();
            c.and_assign(&self.adj[u]);
            let count = c.len();
            if pivot.is_none() || count > best {
                best = count;
                pivot = Some(u);
            }
        }
        let mut branch = p.clone();
        if let Some(u) = pivot {
            branch.difference_assign(&self.adj[u]);
        }
        for v in branch.iter() {
            let mut np = p.clone();
            np.and_assign(&self.adj[v]);
            let mut nx = x.clone();
            nx.and_assign(&self.adj[v]);
            r.push(v);
            self.bron_kerbosch(r, np, nx, out);
            r.pop();
            p.remove(v);
            x.insert(v);
        }
    }

    /// Vertices in a degeneracy ordering (repeatedly remove a minimum-degree
    /// vertex, lowest index first).
    pub fn degeneracy_order(&self) -> Vec<usize> {
        let mut degree: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        let mut removed = vec![false; self.n];
        let mut order = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            let v = (0..self.n)
                .filter(|&v| !removed[v])
                .min_by_key(|&v| (degree[v], v))
                .expect("vertex remaining");
            removed[v] = true;
            order.push(v);
            for w in self.adj[v].iter() {
                if !removed[w] {
                    degree[w] -= 1;
                }
            }
        }
        order
    }

    /// Size of a largest clique (0 for the empty complex).
    pub fn clique_number(&self) -> usize {
        let mut best = 0;
        let mut stack = Vec::new();
        for v in 0..self.n {
            let mut later = self.adj[v].clone();
            clear_up_to(&mut later, v);
            stack.push(v);
            self.max_clique_rec(&mut stack, &later, &mut best);
            stack.pop();
        }
        best
    }

    fn max_clique_rec(&self, stack: &mut Vec<usize>, candidates: &VertexSet, best: &mut usize) {
        if stack.len() > *best {
            *best = stack.len();
        }
        if stack.len() + candidates.len() <= *best {
            return;
        }
        for w in candidates.iter() {
            let mut next = candidates.clone();
            next.and_assign(&self.adj[w]);
            clear_up_to(&mut next, w);
            stack.push(w);
            self.max_clique_rec(stack, &next, best);
            stack.pop();
        }
    }
}

fn clear_up_to(s: &mut VertexSet, v: usize) {
    s.clear_through(v);
}
