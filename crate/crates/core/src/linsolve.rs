//! Depth-first search for bounded integer solutions of a sparse linear system.
//!
//! Variables are assigned in index order. When the last variable of an equation is
//! reached its value is forced; interval bounds on the unassigned part of every equation
//! prune the rest. Optional groups allow at most one nonzero member (the quad condition).

#[derive(Clone, Debug, Default)]
pub struct BoundedSystem {
    n_vars: usize,
    equations: Vec<Vec<(usize, i64)>>,
    rhs: Vec<i64>,
    lower: Vec<i64>,
    upper: Vec<i64>,
    groups: Vec<Vec<usize>>,
}

impl BoundedSystem {
    /// `n_vars` variables, each in `0..=upper`.
    pub fn new(n_vars: usize, upper: i64) -> BoundedSystem {
        BoundedSystem { n_vars, lower: vec![0; n_vars], upper: vec![upper; n_vars], ..Default::default() }
    }

    pub fn n_vars(&self) -> usize {
        self.n_vars
    }

    /// Adds `Σ coeff · x[var] = rhs`; repeated variables are merged.
    pub fn add_equation(&mut self, terms: &[(usize, i64)], rhs: i64) {
        let mut merged: Vec<(usize, i64)> = Vec::with_capacity(terms.len());
        for &(v, c) in terms {
            match merged.iter_mut().find(|(w, _)| *w == v) {
                Some(slot) => slot.1 += c,
                None => merged.push((v, c)),
            }
        }
        merged.retain(|&(_, c)| c != 0);
        merged.sort_unstable();
        self.equations.push(merged);
        self.rhs.push(rhs);
    }

    pub fn set_bounds(&mut self, var: usize, lower: i64, upper: i64) {
        self.lower[var] = lower;
        self.upper[var] = upper;
    }

    pub fn fix(&mut self, var: usize, value: i64) {
        self.set_bounds(var, value, value);
    }

    pub fn upper(&self, var: usize) -> i64 {
        self.upper[var]
    }

    /// At most one variable of `members` may be nonzero.
    pub fn add_exclusive_group(&mut self, members: Vec<usize>) {
        self.groups.push(members);
    }

    /// Calls `visit` on every solution in lexicographic order; stops early when it returns `false`.
    pub fn for_each_solution(&self, mut visit: impl FnMut(&[i64]) -> bool) {
        if self.lower.iter().zip(&self.upper).any(|(l, u)| l > u) {
            return;
        }
        for (eq, &rhs) in self.equations.iter().zip(&self.rhs) {
            if eq.is_empty() && rhs != 0 {
                return;
            }
        }
        let mut forcing: Vec<Vec<usize>> = vec![Vec::new(); self.n_vars];
        let mut touching: Vec<Vec<(usize, i64)>> = vec![Vec::new(); self.n_vars];
        for (k, eq) in self.equations.iter().enumerate() {
            if let Some(&(last, _)) = eq.last() {
                forcing[last].push(k);
            }
            for &(v, c) in eq {
                touching[v].push((k, c));
            }
        }
        let mut group_of: Vec<Vec<usize>> = vec![Vec::new(); self.n_vars];
        for (g, members) in self.groups.iter().enumerate() {
            for &v in members {
                group_of[v].push(g);
            }
        }
        // remaining range of each equation over unassigned variables
        let mut rem_min = vec![0i64; self.equations.len()];
        let mut rem_max = vec![0i64; self.equations.len()];
        for (k, eq) in self.equations.iter().enumerate() {
            for &(v, c) in eq {
                let (a, b) = (c * self.lower[v], c * self.upper[v]);
                rem_min[k] += a.min(b);
                rem_max[k] += a.max(b);
            }
        }
        let mut state = Search {
            sys: self,
            forcing,
            touching,
            group_of,
            group_used: vec![0; self.groups.len()],
            partial: vec![0; self.equations.len()],
            rem_min,
            rem_max,
            x: vec![0; self.n_vars],
            stop: false,
        };
        state.dfs(0, &mut visit);
    }

    pub fn solutions(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::new();
        self.for_each_solution(|x| {
            out.push(x.to_vec());
            true
        });
        out
    }

    pub fn first_solution(&self) -> Option<Vec<i64>> {
        let mut out = None;
        self.for_each_solution(|x| {
            out = Some(x.to_vec());
            false
        });
        out
    }
}

struct Search<'a> {
    sys: &'a BoundedSystem,
    forcing: Vec<Vec<usize>>,
    touching: Vec<Vec<(usize, i64)>>,
    group_of: Vec<Vec<usize>>,
    group_used: Vec<u32>,
    partial: Vec<i64>,
    rem_min: Vec<i64>,
    rem_max: Vec<i64>,
    x: Vec<i64>,
    stop: bool,
}

impl Search<'_> {
    fn dfs(&mut self, var: usize, visit: &mut impl FnMut(&[i64]) -> bool) {
        if self.stop {
            return;
        }
        if var == self.sys.n_vars {
            if !visit(&self.x) {
                self.stop = true;
            }
            return;
        }
        let (lo, hi) = (self.sys.lower[var], self.sys.upper[var]);
        let mut range = (lo, hi);
        for &k in &self.forcing[var] {
            let c = self.sys.equations[k].last().expect("nonempty").1;
            let need = self.sys.rhs[k] - self.partial[k];
            if need % c != 0 {
                return;
            }
            let v = need / c;
            if v < range.0 || v > range.1 {
                return;
            }
            range = (v, v);
        }
        let grouped = !self.group_of[var].is_empty();
        for value in range.0..=range.1 {
            if value != 0 && grouped && self.group_of[var].iter().any(|&g| self.group_used[g] > 0) {
                break;
            }
            if self.assign(var, value) {
                self.dfs(var + 1, visit);
            }
            self.unassign(var, value);
            if self.stop {
                return;
            }
        }
    }

    /// Assigns `x[var] = value` and reports whether every equation stays feasible.
    fn assign(&mut self, var: usize, value: i64) -> bool {
        self.x[var] = value;
        if value != 0 {
            for &g in &self.group_of[var] {
                self.group_used[g] += 1;
            }
        }
        let (lo, hi) = (self.sys.lower[var], self.sys.upper[var]);
        let mut ok = true;
        for &(k, c) in &self.touching[var] {
            let (a, b) = (c * lo, c * hi);
            self.rem_min[k] -= a.min(b);
            self.rem_max[k] -= a.max(b);
            self.partial[k] += c * value;
            let need = self.sys.rhs[k] - self.partial[k];
            if need < self.rem_min[k] || need > self.rem_max[k] {
                ok = false;
            }
        }
        ok
    }

    fn unassign(&mut self, var: usize, value: i64) {
        if value != 0 {
            for &g in &self.group_of[var] {
                self.group_used[g] -= 1;
            }
        }
        let (lo, hi) = (self.sys.lower[var], self.sys.upper[var]);
        for &(k, c) in &self.touching[var] {
            let (a, b) = (c * lo, c * hi);
            self.rem_min[k] += a.min(b);
            self.rem_max[k] += a.max(b);
            self.partial[k] -= c * value;
        }
        self.x[var] = 0;
    }
}
