//! Type-A quivers, their representations over `F_p`, and the module-category
//! computations built on them: Hom, Ext¹, traces, quotients, Krull-Schmidt
//! decomposition and the Serre closure test.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exactlin::{self, gauss, solve_columns, Matrix};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    /// `i -> i+1`, written `>`.
    Right,
    /// `i+1 -> i`, written `<`.
    Left,
}

/// A quiver of type A_n. Vertices are 1..n in the textual form and 0..n-1
/// internally.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quiver {
    edges: Vec<Orientation>,
}

impl Quiver {
    pub fn new(edges: Vec<Orientation>) -> Self {
        Quiver { edges }
    }

    /// Linearly oriented `1>2>...>n`.
    pub fn linear(n: usize) -> Self {
        assert!(n >= 1);
        Quiver { edges: vec![Orientation::Right; n - 1] }
    }

    pub fn parse(spec: &str) -> Result<Self> {
        spec.parse()
    }

    pub fn n(&self) -> usize {
        self.edges.len() + 1
    }

    pub fn edges(&self) -> &[Orientation] {
        &self.edges
    }

    /// Source and target (0-based) of arrow `e`, which joins `e` and `e+1`.
    pub fn arrow(&self, e: usize) -> (usize, usize) {
        match self.edges[e] {
            Orientation::Right => (e, e + 1),
            Orientation::Left => (e + 1, e),
        }
    }

    pub fn arrows(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.edges.len()).map(|e| self.arrow(e))
    }

    /// All `2^(n-1)` orientations of A_n.
    pub fn all_orientations(n: usize) -> Vec<Quiver> {
        (0..1u32 << (n - 1))
            .map(|mask| Quiver {
                edges: (0..n - 1)
                    .map(|e| if mask >> e & 1 == 0 { Orientation::Right } else { Orientation::Left })
                    .collect(),
            })
            .collect()
    }

    /// All intervals, ordered lexicographically by `(lo, hi)`.
    pub fn intervals(&self) -> Vec<Interval> {
        let n = self.n();
        (1..=n).flat_map(|lo| (lo..=n).map(move |hi| Interval { lo, hi })).collect()
    }

    /// The indecomposable projective at a 0-based vertex: everything reachable
    /// from `v` along arrows.
    pub fn projective_at(&self, v: usize) -> Interval {
        let mut hi = v;
        while hi + 1 < self.n() && self.edges[hi] == Orientation::Right {
            hi += 1;
        }
        let mut lo = v;
        while lo > 0 && self.edges[lo - 1] == Orientation::Left {
            lo -= 1;
        }
        Interval { lo: lo + 1, hi: hi + 1 }
    }

    pub fn is_projective(&self, iv: Interval) -> bool {
        (iv.lo - 1..iv.hi).any(|v| self.projective_at(v) == iv)
    }

    /// Vertices of `iv` (0-based) not hit by an arrow inside `iv`.
    pub fn tops(&self, iv: Interval) -> Vec<usize> {
        (iv.lo - 1..iv.hi)
            .filter(|&v| !self.arrows().any(|(s, t)| t == v && iv.contains(s) && iv.contains(t)))
            .collect()
    }

    /// Loewy-style name, e.g. `4/3/2` or `13/2`.
    pub fn alias(&self, iv: Interval) -> String {
        let verts: Vec<usize> = (iv.lo - 1..iv.hi).collect();
        let mut layer = vec![0usize; self.n()];
        // Longest path inside the interval ending at each vertex; a few sweeps
        // suffice on a path graph.
        for _ in 0..verts.len() {
            for (s, t) in self.arrows() {
                if iv.contains(s) && iv.contains(t) {
                    layer[t] = layer[t].max(layer[s] + 1);
                }
            }
        }
        let depth = verts.iter().map(|&v| layer[v]).max().unwrap_or(0);
        (0..=depth)
            .map(|d| verts.iter().filter(|&&v| layer[v] == d).map(|v| (v + 1).to_string()).collect::<String>())
            .collect::<Vec<_>>()
            .join("/")
    }
}

impl FromStr for Quiver {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        let s = spec.trim();
        if s.is_empty() {
            return Err(Error::parse(spec, "empty quiver spec"));
        }
        let mut edges = Vec::new();
        let mut expected = 1usize;
        let mut rest = s;
        loop {
            let digits = rest.chars().take_while(|c| c.is_ascii_digit()).count();
            if digits == 0 {
                let tok: String = rest.chars().take(1).collect();
                return Err(Error::parse(if tok.is_empty() { s.to_string() } else { tok }, "expected a vertex number"));
            }
            let (num, tail) = rest.split_at(digits);
            let v: usize = num.parse().map_err(|_| Error::parse(num, "bad vertex"))?;
            if v != expected {
                return Err(Error::parse(num, format!("vertices must be consecutive, expected {expected}")));
            }
            expected += 1;
            let mut chars = tail.chars();
            match chars.next() {
                None => break,
                Some('>') => edges.push(Orientation::Right),
                Some('<') => edges.push(Orientation::Left),
                Some(c) => return Err(Error::parse(c.to_string(), "expected '<' or '>'")),
            }
            rest = chars.as_str();
        }
        Ok(Quiver { edges })
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1")?;
        for (e, o) in self.edges.iter().enumerate() {
            let c = if *o == Orientation::Right { '>' } else { '<' };
            write!(f, "{c}{}", e + 2)?;
        }
        Ok(())
    }
}

/// The interval module `M[lo,hi]` (1-based, inclusive).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
}

impl Interval {
    pub fn new(lo: usize, hi: usize) -> Self {
        assert!(1 <= lo && lo <= hi, "bad interval [{lo},{hi}]");
        Interval { lo, hi }
    }

    pub fn simple(v: usize) -> Self {
        Interval { lo: v, hi: v }
    }

    /// Whether the 0-based vertex `v` is in the support.
    pub fn contains(&self, v: usize) -> bool {
        self.lo <= v + 1 && v < self.hi
    }

    pub fn len(&self) -> usize {
        self.hi - self.lo + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dims(&self, n: usize) -> Vec<usize> {
        (0..n).map(|v| self.contains(v) as usize).collect()
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M[{},{}]", self.lo, self.hi)
    }
}

impl FromStr for Interval {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix("M[")
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(t, "expected M[lo,hi]"))?;
        let (a, b) = inner.split_once(',').ok_or_else(|| Error::parse(t, "expected M[lo,hi]"))?;
        let lo: usize = a.trim().parse().map_err(|_| Error::parse(a, "bad lower bound"))?;
        let hi: usize = b.trim().parse().map_err(|_| Error::parse(b, "bad upper bound"))?;
        if lo == 0 || lo > hi {
            return Err(Error::parse(t, "need 1 <= lo <= hi"));
        }
        Ok(Interval { lo, hi })
    }
}

/// A representation: a vector space per vertex and a matrix per arrow
/// (rows = target dimension, columns = source dimension).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rep {
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix>,
}

impl Rep {
    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }
}

/// A family of linear maps, one per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub comps: Vec<Matrix>,
}

impl Morphism {
    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Matrix::is_zero)
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        Morphism { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn scale(&self, s: u32) -> Morphism {
        Morphism { comps: self.comps.iter().map(|a| a.scale(s)).collect() }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism { comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.mul(b)).collect() }
    }
}

/// A subrepresentation given by a column basis at each vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubRep {
    pub basis: Vec<Matrix>,
}

impl SubRep {
    pub fn dims(&self) -> Vec<usize> {
        self.basis.iter().map(Matrix::cols).collect()
    }

    pub fn total_dim(&self) -> usize {
        self.dims().iter().sum()
    }
}

/// The outcome of a factorization test for `X ∈ A * B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleFactorization {
    pub sub: Vec<Interval>,
    pub quotient: Vec<Interval>,
}

/// The path algebra `F_p Q` of a type-A quiver with cached interval modules.
#[derive(Clone, Debug)]
pub struct PathAlgebra {
    quiver: Quiver,
    p: u32,
    intervals: Vec<Interval>,
    reps: Vec<Rep>,
}

impl PathAlgebra {
    pub fn new(quiver: Quiver, p: u32) -> Result<Self> {
        if !exactlin::is_prime(p) {
            return Err(Error::Contract(format!("{p} is not prime")));
        }
        let intervals = quiver.intervals();
        let mut alg = PathAlgebra { quiver, p, intervals, reps: Vec::new() };
        alg.reps = alg.intervals.iter().map(|&iv| alg.build_interval(iv)).collect();
        Ok(alg)
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.quiver.n()
    }

    /// All indecomposables in `(lo, hi)` order.
    pub fn all_indecomposables(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn index_of(&self, iv: Interval) -> Option<usize> {
        self.intervals.binary_search(&iv).ok()
    }

    fn build_interval(&self, iv: Interval) -> Rep {
        let dims = iv.dims(self.n());
        let maps = self
            .quiver
            .arrows()
            .map(|(s, t)| {
                let mut m = Matrix::zeros(self.p, dims[t], dims[s]);
                if dims[s] == 1 && dims[t] == 1 {
                    m.set(0, 0, 1);
                }
                m
            })
            .collect();
        Rep { dims, maps }
    }

    pub fn realize(&self, iv: Interval) -> Rep {
        match self.index_of(iv) {
            Some(i) => self.reps[i].clone(),
            None => panic!("{iv} is not an indecomposable of {}", self.quiver),
        }
    }

    pub fn realize_sum(&self, parts: &[Interval]) -> Rep {
        parts.iter().fold(self.zero_rep(), |acc, &iv| self.direct_sum(&acc, &self.realize(iv)))
    }

    pub fn zero_rep(&self) -> Rep {
        Rep {
            dims: vec![0; self.n()],
            maps: self.quiver.arrows().map(|_| Matrix::zeros(self.p, 0, 0)).collect(),
        }
    }

    pub fn direct_sum(&self, a: &Rep, b: &Rep) -> Rep {
        Rep {
            dims: a.dims.iter().zip(&b.dims).map(|(x, y)| x + y).collect(),
            maps: a.maps.iter().zip(&b.maps).map(|(x, y)| x.block_diag(y)).collect(),
        }
    }

    pub fn is_rep(&self, x: &Rep) -> bool {
        x.dims.len() == self.n()
            && x.maps.len() == self.n() - 1
            && self.quiver.arrows().zip(&x.maps).all(|((s, t), m)| m.rows() == x.dims[t] && m.cols() == x.dims[s] && m.p() == self.p)
    }

    /// Matrix of `δ(φ)_a = N_a φ_s − φ_t M_a`. Its kernel is Hom(M,N) and its
    /// cokernel is Ext¹(M,N). Unknown `φ_v[i][j]` sits at
    /// `offset_v + i * M_v + j`.
    pub fn hom_system(&self, m: &Rep, n: &Rep) -> Matrix {
        let nv = self.n();
        let mut off = vec![0usize; nv + 1];
        for v in 0..nv {
            off[v + 1] = off[v] + n.dims[v] * m.dims[v];
        }
        let rows: usize = self.quiver.arrows().map(|(s, t)| n.dims[t] * m.dims[s]).sum();
        let mut sys = Matrix::zeros(self.p, rows, off[nv]);
        let mut r0 = 0;
        for (e, (s, t)) in self.quiver.arrows().enumerate() {
            let (ma, na) = (&m.maps[e], &n.maps[e]);
            for i in 0..n.dims[t] {
                for j in 0..m.dims[s] {
                    let row = r0 + i * m.dims[s] + j;
                    for k in 0..n.dims[s] {
                        let c = off[s] + k * m.dims[s] + j;
                        sys.set(row, c, (sys.get(row, c) + na.get(i, k)) % self.p);
                    }
                    for l in 0..m.dims[t] {
                        let c = off[t] + i * m.dims[t] + l;
                        let neg = (self.p - ma.get(l, j)) % self.p;
                        sys.set(row, c, (sys.get(row, c) + neg) % self.p);
                    }
                }
            }
            r0 += n.dims[t] * m.dims[s];
        }
        sys
    }

    /// Unpacks a solution vector of [`hom_system`](Self::hom_system).
    pub fn unpack(&self, m: &Rep, n: &Rep, v: &[u32]) -> Morphism {
        let mut comps = Vec::with_capacity(self.n());
        let mut pos = 0;
        for vtx in 0..self.n() {
            let (r, c) = (n.dims[vtx], m.dims[vtx]);
            let mut mat = Matrix::zeros(self.p, r, c);
            for i in 0..r {
                for j in 0..c {
                    mat.set(i, j, v[pos]);
                    pos += 1;
                }
            }
            comps.push(mat);
        }
        Morphism { comps }
    }

    pub fn hom_basis(&self, m: &Rep, n: &Rep) -> Vec<Morphism> {
        let red = gauss(&self.hom_system(m, n));
        red.nullspace.iter().map(|v| self.unpack(m, n, v)).collect()
    }

    pub fn hom_dim(&self, m: &Rep, n: &Rep) -> usize {
        let sys = self.hom_system(m, n);
        sys.cols() - sys.rank()
    }

    pub fn euler(&self, d: &[usize], e: &[usize]) -> i64 {
        let diag: i64 = d.iter().zip(e).map(|(a, b)| (a * b) as i64).sum();
        let arrows: i64 = self.quiver.arrows().map(|(s, t)| (d[s] * e[t]) as i64).sum();
        diag - arrows
    }

    pub fn ext1_dim(&self, m: &Rep, n: &Rep) -> usize {
        let v = self.hom_dim(m, n) as i64 - self.euler(&m.dims, &n.dims);
        debug_assert!(v >= 0);
        v as usize
    }

    pub fn hom(&self, a: Interval, b: Interval) -> usize {
        self.hom_dim(&self.realize(a), &self.realize(b))
    }

    pub fn ext1(&self, a: Interval, b: Interval) -> usize {
        self.ext1_dim(&self.realize(a), &self.realize(b))
    }

    pub fn is_morphism(&self, f: &Morphism, m: &Rep, n: &Rep) -> bool {
        f.comps.len() == self.n()
            && f.comps.iter().enumerate().all(|(v, c)| c.rows() == n.dims[v] && c.cols() == m.dims[v])
            && self
                .quiver
                .arrows()
                .enumerate()
                .all(|(e, (s, t))| n.maps[e].mul(&f.comps[s]) == f.comps[t].mul(&m.maps[e]))
    }

    pub fn identity(&self, x: &Rep) -> Morphism {
        Morphism { comps: x.dims.iter().map(|&d| Matrix::identity(self.p, d)).collect() }
    }

    pub fn zero_morphism(&self, m: &Rep, n: &Rep) -> Morphism {
        Morphism { comps: (0..self.n()).map(|v| Matrix::zeros(self.p, n.dims[v], m.dims[v])).collect() }
    }

    /// Whether a per-vertex family of subspaces is carried into itself.
    pub fn is_subrep(&self, x: &Rep, sub: &SubRep) -> bool {
        self.quiver.arrows().enumerate().all(|(e, (s, t))| {
            let img = x.maps[e].mul(&sub.basis[s]);
            img.cols() == 0 || img.is_zero() || solve_columns(&sub.basis[t], &img).is_some()
        })
    }

    /// The subrepresentation as a representation in its own basis.
    pub fn restrict(&self, x: &Rep, sub: &SubRep) -> Rep {
        let dims = sub.dims();
        let maps = self
            .quiver
            .arrows()
            .enumerate()
            .map(|(e, (s, t))| {
                let img = x.maps[e].mul(&sub.basis[s]);
                solve_columns(&sub.basis[t], &img).expect("subspace family not closed under arrows")
            })
            .collect();
        Rep { dims, maps }
    }

    /// `X / sub`, together with the projection `X -> X/sub`.
    pub fn quotient(&self, x: &Rep, sub: &SubRep) -> (Rep, Morphism) {
        let nv = self.n();
        let mut fulls = Vec::with_capacity(nv);
        let mut comps = Vec::with_capacity(nv);
        let mut qdims = Vec::with_capacity(nv);
        for v in 0..nv {
            let b = &sub.basis[v];
            let comp = exactlin::complement(self.p, x.dims[v], &b.columns());
            let cm = Matrix::from_columns(self.p, x.dims[v], &comp);
            let full = b.hstack(&cm);
            let inv = full.inverse().expect("complement must complete a basis");
            let k = b.cols();
            let q = x.dims[v] - k;
            comps.push(inv.submatrix(k, 0, q, x.dims[v]));
            fulls.push(cm);
            qdims.push(q);
        }
        let maps = self
            .quiver
            .arrows()
            .enumerate()
            .map(|(e, (s, t))| comps[t].mul(&x.maps[e]).mul(&fulls[s]))
            .collect();
        (Rep { dims: qdims, maps }, Morphism { comps })
    }

    pub fn image(&self, f: &Morphism, target: &Rep) -> SubRep {
        SubRep {
            basis: (0..self.n())
                .map(|v| Matrix::from_columns(self.p, target.dims[v], &gauss(&f.comps[v]).colspace))
                .collect(),
        }
    }

    pub fn kernel(&self, f: &Morphism, source: &Rep) -> SubRep {
        SubRep {
            basis: (0..self.n())
                .map(|v| Matrix::from_columns(self.p, source.dims[v], &gauss(&f.comps[v]).nullspace))
                .collect(),
        }
    }

    pub fn zero_sub(&self, x: &Rep) -> SubRep {
        SubRep { basis: x.dims.iter().map(|&d| Matrix::zeros(self.p, d, 0)).collect() }
    }

    pub fn full_sub(&self, x: &Rep) -> SubRep {
        SubRep { basis: x.dims.iter().map(|&d| Matrix::identity(self.p, d)).collect() }
    }

    /// Sum of the images of all morphisms from members of `s` into `x`.
    pub fn trace(&self, s: &[Interval], x: &Rep) -> SubRep {
        let mut cols: Vec<Vec<Vec<u32>>> = vec![Vec::new(); self.n()];
        for &iv in s {
            for f in self.hom_basis(&self.realize(iv), x) {
                for (v, c) in f.comps.iter().enumerate() {
                    cols[v].extend(c.columns());
                }
            }
        }
        SubRep {
            basis: (0..self.n())
                .map(|v| Matrix::from_columns(self.p, x.dims[v], &exactlin::span_basis(self.p, x.dims[v], &cols[v])))
                .collect(),
        }
    }

    pub fn trace_quotient(&self, s: &[Interval], x: &Rep) -> (SubRep, Rep) {
        let t = self.trace(s, x);
        let (q, _) = self.quotient(x, &t);
        (t, q)
    }

    /// Krull-Schmidt decomposition into interval modules, sorted.
    pub fn decompose(&self, x: &Rep) -> Vec<Interval> {
        let mut order: Vec<usize> = (0..self.intervals.len()).collect();
        order.sort_by_key(|&i| (std::cmp::Reverse(self.intervals[i].len()), self.intervals[i]));
        let mut parts = Vec::new();
        let mut cur = x.clone();
        'outer: while !cur.is_zero() {
            for &i in &order {
                let iv = self.intervals[i];
                if !(iv.lo - 1..iv.hi).all(|v| cur.dims[v] > 0) {
                    continue;
                }
                let irep = &self.reps[i];
                let fs = self.hom_basis(irep, &cur);
                if fs.is_empty() {
                    continue;
                }
                let gs = self.hom_basis(&cur, irep);
                for g in &gs {
                    if fs.iter().any(|f| !g.compose(f).is_zero()) {
                        parts.push(iv);
                        let k = self.kernel(g, &cur);
                        cur = self.restrict(&cur, &k);
                        continue 'outer;
                    }
                }
            }
            unreachable!("no interval summand split off a nonzero representation");
        }
        parts.sort();
        parts
    }

    /// Whether every summand of `x` lies in `set`.
    pub fn in_add(&self, x: &Rep, set: &BTreeSet<Interval>) -> bool {
        self.decompose(x).iter().all(|iv| set.contains(iv))
    }

    /// `X ∈ A * B` through the trace of `A`. Exact when `Hom(A, B) = 0`.
    pub fn factor_by_trace(&self, a: &BTreeSet<Interval>, b: &BTreeSet<Interval>, x: &Rep) -> Option<ModuleFactorization> {
        let av: Vec<Interval> = a.iter().copied().collect();
        let t = self.trace(&av, x);
        let sub = self.decompose(&self.restrict(x, &t));
        if !sub.iter().all(|iv| a.contains(iv)) {
            return None;
        }
        let (q, _) = self.quotient(x, &t);
        let quotient = self.decompose(&q);
        quotient.iter().all(|iv| b.contains(iv)).then_some(ModuleFactorization { sub, quotient })
    }

    /// Every subrepresentation of `x`. Refuses above `max_total` total dimension.
    pub fn all_subreps(&self, x: &Rep, max_total: usize) -> Result<Vec<SubRep>> {
        if x.total_dim() > max_total {
            return Err(Error::Refused(format!(
                "subrepresentation enumeration needs total dimension <= {max_total}, got {}",
                x.total_dim()
            )));
        }
        let spaces: Vec<Vec<Matrix>> = x.dims.iter().map(|&d| exactlin::subspaces(self.p, d)).collect();
        let mut out = Vec::new();
        let mut chosen: Vec<Matrix> = Vec::new();
        self.subrep_search(x, &spaces, &mut chosen, &mut out);
        Ok(out)
    }

    fn subrep_search(&self, x: &Rep, spaces: &[Vec<Matrix>], chosen: &mut Vec<Matrix>, out: &mut Vec<SubRep>) {
        let v = chosen.len();
        if v == self.n() {
            out.push(SubRep { basis: chosen.clone() });
            return;
        }
        for cand in &spaces[v] {
            chosen.push(cand.clone());
            // Arrows between v and v-1 are now fully determined.
            let ok = v == 0 || {
                let e = v - 1;
                let (s, t) = self.quiver.arrow(e);
                let img = x.maps[e].mul(&chosen[s]);
                img.cols() == 0 || img.is_zero() || solve_columns(&chosen[t], &img).is_some()
            };
            if ok {
                self.subrep_search(x, spaces, chosen, out);
            }
            chosen.pop();
        }
    }

    /// `X ∈ A * B` by scanning every subrepresentation.
    pub fn factor_exhaustive(
        &self,
        a: &BTreeSet<Interval>,
        b: &BTreeSet<Interval>,
        x: &Rep,
        max_total: usize,
    ) -> Result<Option<ModuleFactorization>> {
        for sub in self.all_subreps(x, max_total)? {
            let s = self.decompose(&self.restrict(x, &sub));
            if !s.iter().all(|iv| a.contains(iv)) {
                continue;
            }
            let (q, _) = self.quotient(x, &sub);
            let qd = self.decompose(&q);
            if qd.iter().all(|iv| b.contains(iv)) {
                return Ok(Some(ModuleFactorization { sub: s, quotient: qd }));
            }
        }
        Ok(None)
    }

    /// Middle term of the extension `0 -> n -> E -> m -> 0` given by a cocycle
    /// (one block `Hom(m_s, n_t)` per arrow, packed as in `hom_system` rows).
    pub fn extension(&self, m: &Rep, n: &Rep, cocycle: &[u32]) -> Rep {
        let mut pos = 0;
        let dims: Vec<usize> = (0..self.n()).map(|v| n.dims[v] + m.dims[v]).collect();
        let maps = self
            .quiver
            .arrows()
            .enumerate()
            .map(|(e, (s, t))| {
                let mut c = Matrix::zeros(self.p, n.dims[t], m.dims[s]);
                for i in 0..n.dims[t] {
                    for j in 0..m.dims[s] {
                        c.set(i, j, cocycle[pos]);
                        pos += 1;
                    }
                }
                let mut big = Matrix::zeros(self.p, dims[t], dims[s]);
                big.paste(0, 0, &n.maps[e]);
                big.paste(0, n.dims[s], &c);
                big.paste(n.dims[t], n.dims[s], &m.maps[e]);
                big
            })
            .collect();
        Rep { dims, maps }
    }

    /// Representatives of every nonzero class in Ext¹(m, n): all nonzero
    /// combinations of a basis complementary to the coboundaries.
    pub fn nonsplit_extensions(&self, m: &Rep, n: &Rep) -> Vec<Rep> {
        let sys = self.hom_system(m, n);
        let red = gauss(&sys);
        let comp = exactlin::complement(self.p, sys.rows(), &red.colspace);
        exactlin::all_vectors(self.p, comp.len())
            .filter(|c| c.iter().any(|&x| x != 0))
            .map(|c| {
                let mut v = vec![0u32; sys.rows()];
                for (coef, basis) in c.iter().zip(&comp) {
                    for (slot, &b) in v.iter_mut().zip(basis) {
                        *slot = (*slot + coef * b) % self.p;
                    }
                }
                self.extension(m, n, &v)
            })
            .collect()
    }

    /// Whether `add S` is closed under subobjects, quotients and extensions.
    /// On failure returns a description of the escaping object.
    pub fn serre_witness(&self, s: &BTreeSet<Interval>) -> Option<String> {
        for &x in s {
            let xr = self.realize(x);
            for &iv in &self.intervals {
                let ir = self.realize(iv);
                for g in self.hom_basis(&xr, &ir) {
                    let ker = self.restrict(&xr, &self.kernel(&g, &xr));
                    let img = self.restrict(&ir, &self.image(&g, &ir));
                    for (what, obj) in [("kernel", ker), ("image", img)] {
                        if let Some(bad) = self.decompose(&obj).into_iter().find(|d| !s.contains(d)) {
                            return Some(format!("{bad} is a summand of the {what} of a map {x} -> {iv}"));
                        }
                    }
                }
                for f in self.hom_basis(&ir, &xr) {
                    let img = self.restrict(&xr, &self.image(&f, &xr));
                    let (coker, _) = self.quotient(&xr, &self.image(&f, &xr));
                    for (what, obj) in [("image", img), ("cokernel", coker)] {
                        if let Some(bad) = self.decompose(&obj).into_iter().find(|d| !s.contains(d)) {
                            return Some(format!("{bad} is a summand of the {what} of a map {iv} -> {x}"));
                        }
                    }
                }
            }
        }
        for &x in s {
            for &y in s {
                let (xr, yr) = (self.realize(x), self.realize(y));
                for e in self.nonsplit_extensions(&xr, &yr) {
                    if let Some(bad) = self.decompose(&e).into_iter().find(|d| !s.contains(d)) {
                        return Some(format!("{bad} is a summand of an extension of {x} by {y}"));
                    }
                }
            }
        }
        None
    }

    pub fn serre_check(&self, s: &BTreeSet<Interval>) -> bool {
        self.serre_witness(s).is_none()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(lo: usize, hi: usize) -> Interval {
        Interval::new(lo, hi)
    }

    fn a2() -> PathAlgebra {
        PathAlgebra::new(Quiver::parse("1>2").unwrap(), 2).unwrap()
    }

    #[test]
    fn parse_quiver_examples() {
        let q = Quiver::parse("1>2<3<4").unwrap();
        assert_eq!(q.n(), 4);
        assert_eq!(q.arrows().collect::<Vec<_>>(), vec![(0, 1), (2, 1), (3, 2)]);
        assert_eq!(q.to_string(), "1>2<3<4");
        assert_eq!(Quiver::parse("1>2").unwrap().arrows().collect::<Vec<_>>(), vec![(0, 1)]);
        match Quiver::parse("1>>2") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, ">"),
            other => panic!("{other:?}"),
        }
        assert!(Quiver::parse("1>3").is_err());
        assert_eq!(Quiver::parse("1").unwrap().n(), 1);
    }

    #[test]
    fn indecomposable_counts() {
        for n in 1..=5 {
            assert_eq!(Quiver::linear(n).intervals().len(), n * (n + 1) / 2);
        }
        assert_eq!(a2().all_indecomposables(), &[iv(1, 1), iv(1, 2), iv(2, 2)]);
    }

    #[test]
    fn a2_homs_and_exts() {
        let a = a2();
        assert_eq!(a.hom(iv(2, 2), iv(1, 2)), 1);
        assert_eq!(a.hom(iv(1, 2), iv(2, 2)), 0);
        assert_eq!(a.hom(iv(1, 2), iv(1, 1)), 1);
        assert_eq!(a.ext1(iv(1, 1), iv(2, 2)), 1);
        assert_eq!(a.ext1(iv(2, 2), iv(1, 1)), 0);
    }

    #[test]
    fn projectives_of_a4() {
        let q = Quiver::parse("1>2<3<4").unwrap();
        assert_eq!(q.projective_at(0), iv(1, 2));
        assert_eq!(q.projective_at(1), iv(2, 2));
        assert_eq!(q.projective_at(2), iv(2, 3));
        assert_eq!(q.projective_at(3), iv(2, 4));
        assert_eq!(q.alias(iv(2, 4)), "4/3/2");
        assert_eq!(q.alias(iv(3, 4)), "4/3");
    }

    #[test]
    fn trace_examples() {
        let a = a2();
        let x = a.realize(iv(1, 2));
        let (t, q) = a.trace_quotient(&[iv(2, 2)], &x);
        assert_eq!(t.dims(), vec![0, 1]);
        assert_eq!(a.decompose(&q), vec![iv(1, 1)]);
        let (t, q) = a.trace_quotient(&[iv(1, 1)], &x);
        assert_eq!(t.total_dim(), 0);
        assert_eq!(a.decompose(&q), vec![iv(1, 2)]);
        let all = a.all_indecomposables().to_vec();
        let (t, q) = a.trace_quotient(&all, &x);
        assert_eq!(t.dims(), x.dims);
        assert!(q.is_zero());
    }

    #[test]
    fn decompose_examples() {
        let a = a2();
        let zero_map = Rep { dims: vec![1, 1], maps: vec![Matrix::zeros(2, 1, 1)] };
        assert_eq!(a.decompose(&zero_map), vec![iv(1, 1), iv(2, 2)]);
        let id = Rep { dims: vec![1, 1], maps: vec![Matrix::identity(2, 1)] };
        assert_eq!(a.decompose(&id), vec![iv(1, 2)]);
        let col = Rep { dims: vec![1, 2], maps: vec![Matrix::from_rows(2, &[vec![1], vec![0]])] };
        assert_eq!(a.decompose(&col), vec![iv(1, 2), iv(2, 2)]);
    }

    #[test]
    fn serre_examples() {
        let a = a2();
        assert!(a.serre_check(&[iv(2, 2)].into()));
        assert!(!a.serre_check(&[iv(1, 2), iv(1, 1)].into()));
        assert!(a.serre_check(&a.all_indecomposables().iter().copied().collect()));
        // Extension closure: {S1, S2} is not closed (P1 is a middle term).
        assert!(!a.serre_check(&[iv(1, 1), iv(2, 2)].into()));
    }

    #[test]
    fn extension_of_s1_by_s2_is_p1() {
        let a = a2();
        let ext = a.nonsplit_extensions(&a.realize(iv(1, 1)), &a.realize(iv(2, 2)));
        assert_eq!(ext.len(), 1);
        assert_eq!(a.decompose(&ext[0]), vec![iv(1, 2)]);
    }

    #[test]
    fn subrep_counts() {
        let a = a2();
        // M[1,2]: subreps 0, S2, M[1,2].
        assert_eq!(a.all_subreps(&a.realize(iv(1, 2)), 12).unwrap().len(), 3);
        let big = a.realize_sum(&[iv(1, 2); 7]);
        assert!(matches!(a.all_subreps(&big, 12), Err(Error::Refused(_))));
    }
}
