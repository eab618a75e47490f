//! Brute-force relative Hochschild cohomology from multilinear maps on index
//! tuples, over GF(p) with plain `i64` arithmetic. Nothing here touches the
//! library's tensor or linear-algebra code; only the final dimensions are compared.

// shared by several test crates, each using a subset
#![allow(dead_code)]

/// Structure constants `mul[i][j][k]` mod `p` and a basis of the subalgebra as vectors.
pub struct Oracle {
    pub p: i64,
    pub n: usize,
    pub mul: Vec<Vec<Vec<i64>>>,
    pub sub: Vec<Vec<i64>>,
}

fn md(x: i64, p: i64) -> i64 {
    x.rem_euclid(p)
}

fn inv(a: i64, p: i64) -> i64 {
    let (mut r, mut base, mut e) = (1, md(a, p), p - 2);
    while e > 0 {
        if e & 1 == 1 {
            r = r * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    r
}

/// Row-reduces in place and returns the pivot columns.
fn reduce(rows: &mut Vec<Vec<i64>>, p: i64) -> Vec<usize> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(k) = (r..rows.len()).find(|&k| rows[k][c] != 0) else { continue };
        rows.swap(r, k);
        let s = inv(rows[r][c], p);
        for x in rows[r].iter_mut() {
            *x = *x * s % p;
        }
        for k in 0..rows.len() {
            if k != r && rows[k][c] != 0 {
                let f = rows[k][c];
                for j in 0..cols {
                    rows[k][j] = md(rows[k][j] - f * rows[r][j], p);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

fn rank(mut rows: Vec<Vec<i64>>, p: i64) -> usize {
    reduce(&mut rows, p).len()
}

/// Basis of `{x : rows·x = 0}` in a space of dimension `cols`.
fn kernel(mut rows: Vec<Vec<i64>>, cols: usize, p: i64) -> Vec<Vec<i64>> {
    if rows.is_empty() {
        return (0..cols).map(|i| (0..cols).map(|j| i64::from(i == j)).collect()).collect();
    }
    let pivots = reduce(&mut rows, p);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![0; cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = md(-rows[r][f], p);
            }
            v
        })
        .collect()
}

impl Oracle {
    fn prod(&self, x: &[i64], y: &[i64]) -> Vec<i64> {
        let mut out = vec![0; self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if x[i] != 0 && y[j] != 0 {
                    for k in 0..self.n {
                        out[k] = md(out[k] + x[i] * y[j] % self.p * self.mul[i][j][k], self.p);
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<i64> {
        (0..self.n).map(|j| i64::from(i == j)).collect()
    }

    /// Tuple of basis indices for a flat input index of arity `k`.
    fn tuple(&self, mut idx: usize, k: usize) -> Vec<usize> {
        let mut t = vec![0; k];
        for slot in t.iter_mut().rev() {
            *slot = idx % self.n;
            idx /= self.n;
        }
        t
    }

    /// Evaluates a cochain of arity `k` (coordinates `input*n + out`) on vectors, multilinearly.
    fn eval(&self, f: &[i64], args: &[Vec<i64>]) -> Vec<i64> {
        let k = args.len();
        let mut out = vec![0; self.n];
        for input in 0..self.n.pow(k as u32) {
            let t = self.tuple(input, k);
            let mut c = 1;
            for (a, &i) in args.iter().zip(&t) {
                c = c * a[i] % self.p;
                if c == 0 {
                    break;
                }
            }
            if c != 0 {
                for o in 0..self.n {
                    out[o] = md(out[o] + c * f[input * self.n + o], self.p);
                }
            }
        }
        out
    }

    fn space(&self, k: usize) -> usize {
        self.n.pow(k as u32) * self.n
    }

    /// The Hochschild coboundary of a cochain of arity `k`.
    fn coboundary(&self, f: &[i64], k: usize) -> Vec<i64> {
        let mut g = vec![0; self.space(k + 1)];
        for input in 0..self.n.pow(k as u32 + 1) {
            let t = self.tuple(input, k + 1);
            let a: Vec<Vec<i64>> = t.iter().map(|&i| self.unit(i)).collect();
            let mut acc = self.prod(&a[0], &self.eval(f, &a[1..]));
            for i in 0..k {
                let mut args: Vec<Vec<i64>> = a[..i].to_vec();
                args.push(self.prod(&a[i], &a[i + 1]));
                args.extend(a[i + 2..].iter().cloned());
                let v = self.eval(f, &args);
                let s = if i % 2 == 0 { -1 } else { 1 };
                for o in 0..self.n {
                    acc[o] = md(acc[o] + s * v[o], self.p);
                }
            }
            let last = self.prod(&self.eval(f, &a[..k]), &a[k]);
            let s = if k % 2 == 0 { -1 } else { 1 };
            for o in 0..self.n {
                acc[o] = md(acc[o] + s * last[o], self.p);
                g[input * self.n + o] = acc[o];
            }
        }
        g
    }

    /// Linear conditions cutting the relative cochains out of all multilinear maps.
    fn relative_constraints(&self, k: usize) -> Vec<Vec<i64>> {
        let dim = self.space(k);
        let mut rows: Vec<Vec<i64>> = Vec::new();
        let basis_cochain = |c: usize| -> Vec<i64> { (0..dim).map(|j| i64::from(j == c)).collect() };
        // each condition is a linear functional of f; probe it on the basis cochains
        let mut push = |cond: &dyn Fn(&[i64]) -> Vec<i64>| {
            let images: Vec<Vec<i64>> = (0..dim).map(|c| cond(&basis_cochain(c))).collect();
            let len = images.first().map_or(0, Vec::len);
            for r in 0..len {
                rows.push(images.iter().map(|im| im[r]).collect());
            }
        };
        for b in &self.sub {
            if k == 0 {
                push(&|f: &[i64]| {
                    let (l, r) = (self.prod(b, f), self.prod(f, b));
                    l.iter().zip(&r).map(|(x, y)| md(x - y, self.p)).collect()
                });
                continue;
            }
            for input in 0..self.n.pow(k as u32) {
                let a: Vec<Vec<i64>> = self.tuple(input, k).iter().map(|&i| self.unit(i)).collect();
                push(&|f: &[i64]| {
                    let mut moved = a.clone();
                    moved[0] = self.prod(b, &a[0]);
                    let x = self.eval(f, &moved);
                    let y = self.prod(b, &self.eval(f, &a));
                    x.iter().zip(&y).map(|(x, y)| md(x - y, self.p)).collect()
                });
                push(&|f: &[i64]| {
                    let mut moved = a.clone();
                    moved[k - 1] = self.prod(&a[k - 1], b);
                    let x = self.eval(f, &moved);
                    let y = self.prod(&self.eval(f, &a), b);
                    x.iter().zip(&y).map(|(x, y)| md(x - y, self.p)).collect()
                });
                for i in 0..k - 1 {
                    push(&|f: &[i64]| {
                        let mut l = a.clone();
                        l[i] = self.prod(&a[i], b);
                        let mut r = a.clone();
                        r[i + 1] = self.prod(b, &a[i + 1]);
                        let x = self.eval(f, &l);
                        let y = self.eval(f, &r);
                        x.iter().zip(&y).map(|(x, y)| md(x - y, self.p)).collect()
                    });
                }
            }
        }
        rows.retain(|r| r.iter().any(|&x| x != 0));
        rows
    }

    pub fn cohomology(&self, max: usize) -> Vec<usize> {
        let mut spaces = Vec::new();
        let mut ranks = Vec::new();
        for k in 0..=max {
            let s = kernel(self.relative_constraints(k), self.space(k), self.p);
            let images: Vec<Vec<i64>> = s.iter().map(|f| self.coboundary(f, k)).collect();
            ranks.push(rank(images, self.p));
            spaces.push(s.len());
        }
        (0..=max)
            .map(|k| spaces[k] - ranks[k] - if k > 0 { ranks[k - 1] } else { 0 })
            .collect()
    }
}

/// `k[x]/(x^m)` over `k`.
pub fn truncated(p: i64, m: usize) -> Oracle {
    let mul = (0..m)
        .map(|i| (0..m).map(|j| (0..m).map(|k| i64::from(i + j < m && k == i + j)).collect()).collect())
        .collect();
    Oracle { p, n: m, mul, sub: vec![(0..m).map(|k| i64::from(k == 0)).collect()] }
}

/// `n×n` matrices on `e_ij` at `i*n + j` (or only `i ≤ j` when triangular).
pub fn matrices(p: i64, n: usize, triangular: bool, over_diagonal: bool) -> Oracle {
    let idx: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|(i, j)| !triangular || i <= j)
        .collect();
    let d = idx.len();
    let pos = |i: usize, j: usize| idx.iter().position(|&x| x == (i, j));
    let mut mul = vec![vec![vec![0; d]; d]; d];
    for (a, &(i, j)) in idx.iter().enumerate() {
        for (b, &(k, l)) in idx.iter().enumerate() {
            if j == k {
                mul[a][b][pos(i, l).unwrap()] = 1;
            }
        }
    }
    let sub = if over_diagonal {
        (0..n).map(|i| (0..d).map(|c| i64::from(c == pos(i, i).unwrap())).collect()).collect()
    } else {
        vec![(0..n).fold(vec![0; d], |mut v, i| {
            v[pos(i, i).unwrap()] = 1;
            v
        })]
    };
    Oracle { p, n: d, mul, sub }
}

