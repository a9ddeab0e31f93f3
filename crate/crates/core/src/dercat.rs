//! The bounded derived category of a type-A path algebra.
//!
//! Indecomposables are shifted interval modules `M[lo,hi]@n` (the object
//! `M[n]`, with cohomology in degree `-n`). Hom spaces come from module Hom and
//! Ext¹; cones are computed honestly on complexes of projectives and split into
//! shifted cohomology, which is valid because the algebra is hereditary.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{self, gauss, solve_columns, Matrix};
use crate::quiver::{Interval, Morphism, PathAlgebra, Rep, SubRep};
use crate::torspairs::{AtomSet, Category, Factorization};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct DAtom {
    pub module: Interval,
    pub shift: i32,
}

impl DAtom {
    pub fn new(module: Interval, shift: i32) -> Self {
        DAtom { module, shift }
    }

    pub fn shifted(self, k: i32) -> DAtom {
        DAtom { shift: self.shift + k, ..self }
    }
}

impl Ord for DAtom {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.shift, self.module).cmp(&(other.shift, other.module))
    }
}

impl PartialOrd for DAtom {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for DAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.module, self.shift)
    }
}

impl FromStr for DAtom {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t.split_once('@') {
            Some((m, n)) => {
                let shift = n.trim().parse().map_err(|_| Error::parse(n, "bad shift"))?;
                Ok(DAtom { module: m.parse()?, shift })
            }
            None => Ok(DAtom { module: t.parse()?, shift: 0 }),
        }
    }
}

/// A finite direct sum of atoms, kept sorted by `(shift, lo, hi)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DObj {
    atoms: Vec<DAtom>,
}

impl DObj {
    pub fn new(mut atoms: Vec<DAtom>) -> Self {
        atoms.sort();
        DObj { atoms }
    }

    pub fn zero() -> Self {
        DObj::default()
    }

    pub fn atoms(&self) -> &[DAtom] {
        &self.atoms
    }

    pub fn is_zero(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn shifted(&self, k: i32) -> DObj {
        DObj { atoms: self.atoms.iter().map(|a| a.shifted(k)).collect() }
    }

    pub fn sum(&self, other: &DObj) -> DObj {
        DObj::new(self.atoms.iter().chain(&other.atoms).copied().collect())
    }
}

impl fmt::Display for DObj {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.atoms.iter().map(|a| a.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// A bounded complex of representations: `terms[k]` sits in degree
/// `start + k`, and `diffs[k]` maps `terms[k] -> terms[k+1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Complex {
    pub start: i32,
    pub terms: Vec<Rep>,
    pub diffs: Vec<Morphism>,
}

pub type ProjComplex = Complex;

impl Complex {
    pub fn end(&self) -> i32 {
        self.start + self.terms.len() as i32 - 1
    }
}

/// Degreewise components of a chain map over a common degree range.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    pub start: i32,
    pub comps: Vec<Morphism>,
}

/// A distinguished triangle `u -> x -> v -> u[1]`. `coeffs[k]` are the
/// coordinates of the component on the `k`-th summand of `u` in the canonical
/// basis of homotopy classes, so the cone can be recomputed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleWitness {
    pub u: DObj,
    pub x: DAtom,
    pub v: DObj,
    pub coeffs: Vec<Vec<u32>>,
}

type ConeKey = (Interval, Vec<(Interval, i32)>, Vec<Vec<u32>>);

/// `D^b(mod kQ)` with cached resolutions, Hom tables and cones.
pub struct DerivedCategory {
    alg: PathAlgebra,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    resolutions: Vec<(Rep, Rep, Morphism)>,
    chain_bases: Mutex<HashMap<(Interval, i32, Interval), Arc<Vec<ChainMap>>>>,
    cones: Mutex<HashMap<ConeKey, DObj>>,
}

impl fmt::Debug for DerivedCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DerivedCategory({}, p={})", self.alg.quiver(), self.alg.p())
    }
}

impl DerivedCategory {
    pub fn new(alg: PathAlgebra) -> Self {
        let ivs = alg.all_indecomposables().to_vec();
        let hom = ivs.iter().map(|&a| ivs.iter().map(|&b| alg.hom(a, b)).collect()).collect();
        let ext = ivs.iter().map(|&a| ivs.iter().map(|&b| alg.ext1(a, b)).collect()).collect();
        let resolutions = ivs.iter().map(|&iv| resolve(&alg, iv)).collect();
        DerivedCategory {
            alg,
            hom,
            ext,
            resolutions,
            chain_bases: Mutex::new(HashMap::new()),
            cones: Mutex::new(HashMap::new()),
        }
    }

    pub fn algebra(&self) -> &PathAlgebra {
        &self.alg
    }

    fn idx(&self, iv: Interval) -> usize {
        self.alg.index_of(iv).unwrap_or_else(|| panic!("{iv} is not an indecomposable"))
    }

    pub fn module_hom(&self, a: Interval, b: Interval) -> usize {
        self.hom[self.idx(a)][self.idx(b)]
    }

    pub fn module_ext(&self, a: Interval, b: Interval) -> usize {
        self.ext[self.idx(a)][self.idx(b)]
    }

    /// `dim Hom(a, b)`: module Hom at equal shifts, Ext¹ one step up, else 0.
    pub fn hom_dim_d(&self, a: DAtom, b: DAtom) -> usize {
        match b.shift - a.shift {
            0 => self.module_hom(a.module, b.module),
            1 => self.module_ext(a.module, b.module),
            _ => 0,
        }
    }

    /// The two-term projective resolution `P1 -> P0` of an interval module.
    pub fn resolution(&self, iv: Interval) -> &(Rep, Rep, Morphism) {
        &self.resolutions[self.idx(iv)]
    }

    fn zero_complex(&self, lo: i32, hi: i32) -> Complex {
        let len = (hi - lo + 1).max(0) as usize;
        let z = self.alg.zero_rep();
        Complex {
            start: lo,
            terms: vec![z.clone(); len],
            diffs: vec![self.alg.zero_morphism(&z, &z); len.saturating_sub(1)],
        }
    }

    /// Complex of projectives for one atom, padded with zeros to `[lo, hi]`.
    pub fn atom_complex(&self, a: DAtom, lo: i32, hi: i32) -> Complex {
        let (p1, p0, d) = self.resolution(a.module);
        let c = Complex { start: -a.shift - 1, terms: vec![p1.clone(), p0.clone()], diffs: vec![d.clone()] };
        self.align(&c, lo, hi)
    }

    pub fn proj_complex(&self, x: &DObj) -> Complex {
        if x.is_zero() {
            return self.zero_complex(0, 0);
        }
        let lo = x.atoms.iter().map(|a| -a.shift - 1).min().unwrap();
        let hi = x.atoms.iter().map(|a| -a.shift).max().unwrap();
        x.atoms
            .iter()
            .map(|&a| self.atom_complex(a, lo, hi))
            .reduce(|acc, c| self.complex_sum(&acc, &c))
            .unwrap()
    }

    /// Pads or trims (only zero terms may be trimmed) to the degree range.
    pub fn align(&self, c: &Complex, lo: i32, hi: i32) -> Complex {
        let z = self.alg.zero_rep();
        let term = |i: i32| -> Rep {
            if i >= c.start && i <= c.end() {
                c.terms[(i - c.start) as usize].clone()
            } else {
                z.clone()
            }
        };
        for i in c.start..=c.end() {
            assert!((lo..=hi).contains(&i) || c.terms[(i - c.start) as usize].is_zero(), "alignment drops a term");
        }
        let terms: Vec<Rep> = (lo..=hi).map(term).collect();
        let diffs = (lo..hi)
            .map(|i| {
                if i >= c.start && i < c.end() {
                    c.diffs[(i - c.start) as usize].clone()
                } else {
                    self.alg.zero_morphism(&terms[(i - lo) as usize], &terms[(i - lo + 1) as usize])
                }
            })
            .collect();
        Complex { start: lo, terms, diffs }
    }

    /// Direct sum of two complexes on the same degree range.
    pub fn complex_sum(&self, a: &Complex, b: &Complex) -> Complex {
        assert_eq!((a.start, a.terms.len()), (b.start, b.terms.len()));
        Complex {
            start: a.start,
            terms: a.terms.iter().zip(&b.terms).map(|(x, y)| self.alg.direct_sum(x, y)).collect(),
            diffs: a
                .diffs
                .iter()
                .zip(&b.diffs)
                .map(|(x, y)| Morphism { comps: x.comps.iter().zip(&y.comps).map(|(p, q)| p.block_diag(q)).collect() })
                .collect(),
        }
    }

    pub fn is_complex(&self, c: &Complex) -> bool {
        c.diffs.windows(2).all(|w| w[1].compose(&w[0]).is_zero())
            && c.diffs.iter().enumerate().all(|(k, d)| self.alg.is_morphism(d, &c.terms[k], &c.terms[k + 1]))
    }

    pub fn is_chain_map(&self, f: &ChainMap, src: &Complex, tgt: &Complex) -> bool {
        if f.start != src.start || src.start != tgt.start || f.comps.len() != src.terms.len() || tgt.terms.len() != src.terms.len() {
            return false;
        }
        let n = src.terms.len();
        (0..n).all(|k| self.alg.is_morphism(&f.comps[k], &src.terms[k], &tgt.terms[k]))
            && (0..n.saturating_sub(1))
                .all(|k| tgt.diffs[k].compose(&f.comps[k]) == f.comps[k + 1].compose(&src.diffs[k]))
    }

    /// Representatives of a basis of chain maps modulo null-homotopy between
    /// two complexes on the same degree range.
    pub fn chain_hom_basis(&self, src: &Complex, tgt: &Complex) -> Vec<ChainMap> {
        assert_eq!((src.start, src.terms.len()), (tgt.start, tgt.terms.len()));
        let p = self.alg.p();
        let nv = self.alg.n();
        let len = src.terms.len();
        // Unknown layout: degree blocks, each laid out like `hom_system`.
        let mut off = vec![0usize; len + 1];
        let mut voff = vec![vec![0usize; nv]; len];
        for k in 0..len {
            let mut acc = off[k];
            for v in 0..nv {
                voff[k][v] = acc;
                acc += tgt.terms[k].dims[v] * src.terms[k].dims[v];
            }
            off[k + 1] = acc;
        }
        let unknowns = off[len];
        let mut rows: Vec<Vec<u32>> = Vec::new();
        for k in 0..len {
            let sys = self.alg.hom_system(&src.terms[k], &tgt.terms[k]);
            for r in 0..sys.rows() {
                let mut row = vec![0u32; unknowns];
                row[off[k]..off[k + 1]].copy_from_slice(sys.row(r));
                rows.push(row);
            }
        }
        for k in 0..len.saturating_sub(1) {
            // d_tgt f^k - f^{k+1} d_src = 0, vertex by vertex.
            for v in 0..nv {
                let (dt, ds) = (&tgt.diffs[k].comps[v], &src.diffs[k].comps[v]);
                let (sk, tk, sk1, tk1) =
                    (src.terms[k].dims[v], tgt.terms[k].dims[v], src.terms[k + 1].dims[v], tgt.terms[k + 1].dims[v]);
                for r in 0..tk1 {
                    for c in 0..sk {
                        let mut row = vec![0u32; unknowns];
                        for q in 0..tk {
                            let idx = voff[k][v] + q * sk + c;
                            row[idx] = (row[idx] + dt.get(r, q)) % p;
                        }
                        for l in 0..sk1 {
                            let idx = voff[k + 1][v] + r * sk1 + l;
                            row[idx] = (row[idx] + p - ds.get(l, c)) % p;
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let sys = if rows.is_empty() {
            Matrix::zeros(p, 0, unknowns)
        } else {
            Matrix::from_rows(p, &rows.iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect::<Vec<_>>())
        };
        let cycles = if unknowns == 0 { Vec::new() } else { gauss(&sys).nullspace };

        let pack = |maps: &[(usize, Morphism)]| -> Vec<u32> {
            let mut vec = vec![0u32; unknowns];
            for (k, m) in maps {
                for v in 0..nv {
                    let c = &m.comps[v];
                    for i in 0..c.rows() {
                        for j in 0..c.cols() {
                            let idx = voff[*k][v] + i * c.cols() + j;
                            vec[idx] = (vec[idx] + c.get(i, j)) % p;
                        }
                    }
                }
            }
            vec
        };
        let mut boundaries = Vec::new();
        for k in 1..len {
            for h in self.alg.hom_basis(&src.terms[k], &tgt.terms[k - 1]) {
                let at_k = tgt.diffs[k - 1].compose(&h);
                let at_km1 = h.compose(&src.diffs[k - 1]);
                boundaries.push(pack(&[(k, at_k), (k - 1, at_km1)]));
            }
        }
        let mut span = exactlin::span_basis(p, unknowns, &boundaries);
        let mut reps = Vec::new();
        for z in cycles {
            if !exactlin::in_span(p, unknowns, &span, &z) {
                span.push(z.clone());
                reps.push(ChainMap {
                    start: src.start,
                    comps: (0..len).map(|k| self.alg.unpack(&src.terms[k], &tgt.terms[k], &z[off[k]..off[k + 1]])).collect(),
                });
            }
        }
        reps
    }

    /// `dim Hom(a, b)` computed from chain maps between projective complexes.
    pub fn chain_hom_dim(&self, a: DAtom, b: DAtom) -> usize {
        let lo = (-a.shift - 1).min(-b.shift - 1);
        let hi = (-a.shift).max(-b.shift);
        self.chain_hom_basis(&self.atom_complex(a, lo, hi), &self.atom_complex(b, lo, hi)).len()
    }

    /// Mapping cone of `f: src -> tgt` (all on the same degree range).
    pub fn cone(&self, f: &ChainMap, src: &Complex, tgt: &Complex) -> Complex {
        let nv = self.alg.n();
        let (lo, hi) = (src.start, src.end());
        let z = self.alg.zero_rep();
        let p_term = |i: i32| if i >= lo && i <= hi { src.terms[(i - lo) as usize].clone() } else { z.clone() };
        let q_term = |i: i32| if i >= lo && i <= hi { tgt.terms[(i - lo) as usize].clone() } else { z.clone() };
        let p_diff = |i: i32, v: usize, r: usize, c: usize| -> Matrix {
            if i >= lo && i < hi {
                src.diffs[(i - lo) as usize].comps[v].clone()
            } else {
                Matrix::zeros(self.alg.p(), r, c)
            }
        };
        let q_diff = |i: i32, v: usize, r: usize, c: usize| -> Matrix {
            if i >= lo && i < hi {
                tgt.diffs[(i - lo) as usize].comps[v].clone()
            } else {
                Matrix::zeros(self.alg.p(), r, c)
            }
        };
        let f_at = |i: i32, v: usize, r: usize, c: usize| -> Matrix {
            if i >= lo && i <= hi {
                f.comps[(i - lo) as usize].comps[v].clone()
            } else {
                Matrix::zeros(self.alg.p(), r, c)
            }
        };
        let terms: Vec<Rep> = (lo - 1..=hi).map(|i| self.alg.direct_sum(&p_term(i + 1), &q_term(i))).collect();
        let diffs = (lo - 1..hi)
            .map(|i| {
                let (p1, q0, p2, q1) = (p_term(i + 1), q_term(i), p_term(i + 2), q_term(i + 1));
                Morphism {
                    comps: (0..nv)
                        .map(|v| {
                            let (a, b, c, d) = (p1.dims[v], q0.dims[v], p2.dims[v], q1.dims[v]);
                            let mut m = Matrix::zeros(self.alg.p(), c + d, a + b);
                            m.paste(0, 0, &p_diff(i + 1, v, c, a).neg());
                            m.paste(c, 0, &f_at(i + 1, v, d, a));
                            m.paste(c, a, &q_diff(i, v, d, b));
                            m
                        })
                        .collect(),
                }
            })
            .collect();
        Complex { start: lo - 1, terms, diffs }
    }

    /// Cohomology representations, as `(degree, H^degree)` for nonzero ones.
    pub fn cohomology(&self, c: &Complex) -> Vec<(i32, Rep)> {
        let mut out = Vec::new();
        for k in 0..c.terms.len() {
            let term = &c.terms[k];
            if term.is_zero() {
                continue;
            }
            let ker = if k < c.diffs.len() { self.alg.kernel(&c.diffs[k], term) } else { self.alg.full_sub(term) };
            let kr = self.alg.restrict(term, &ker);
            let h = if k > 0 {
                let img = self.alg.image(&c.diffs[k - 1], term);
                let inside = SubRep {
                    basis: (0..self.alg.n())
                        .map(|v| solve_columns(&ker.basis[v], &img.basis[v]).expect("boundaries are cycles"))
                        .collect(),
                };
                self.alg.quotient(&kr, &inside).0
            } else {
                kr
            };
            if !h.is_zero() {
                out.push((c.start + k as i32, h));
            }
        }
        out
    }

    /// `⊕ H^i[-i]` of a complex.
    pub fn split(&self, c: &Complex) -> DObj {
        DObj::new(
            self.cohomology(c)
                .into_iter()
                .flat_map(|(deg, h)| self.alg.decompose(&h).into_iter().map(move |iv| DAtom::new(iv, -deg)))
                .collect(),
        )
    }

    pub fn cone_decompose(&self, f: &ChainMap, src: &Complex, tgt: &Complex) -> Result<DObj> {
        if !self.is_chain_map(f, src, tgt) {
            return Err(Error::Contract("cone_decompose needs a chain map".into()));
        }
        Ok(self.split(&self.cone(f, src, tgt)))
    }

    /// Basis of homotopy classes `a -> x` with `x` normalized to shift 0 and
    /// both complexes on degrees `[-1, 1]`.
    fn rel_basis(&self, a: Interval, rel: i32, x: Interval) -> Arc<Vec<ChainMap>> {
        let key = (a, rel, x);
        if let Some(b) = self.chain_bases.lock().unwrap().get(&key) {
            return b.clone();
        }
        let src = self.atom_complex(DAtom::new(a, rel), -1, 1);
        let tgt = self.atom_complex(DAtom::new(x, 0), -1, 1);
        let basis = Arc::new(self.chain_hom_basis(&src, &tgt));
        self.chain_bases.lock().unwrap().insert(key, basis.clone());
        basis
    }

    /// Cone of `⊕ u_k -> x` with x at shift 0, each component the combination
    /// `coeffs[k]` of the canonical basis.
    fn rel_cone(&self, x: Interval, parts: &[(Interval, i32)], coeffs: &[Vec<u32>]) -> DObj {
        let key = (x, parts.to_vec(), coeffs.to_vec());
        if let Some(c) = self.cones.lock().unwrap().get(&key) {
            return c.clone();
        }
        let out = self.rel_cone_uncached(x, parts, coeffs);
        self.cones.lock().unwrap().insert(key, out.clone());
        out
    }

    fn rel_cone_uncached(&self, x: Interval, parts: &[(Interval, i32)], coeffs: &[Vec<u32>]) -> DObj {
        let p = self.alg.p();
        let tgt = self.atom_complex(DAtom::new(x, 0), -1, 1);
        let mut src: Option<Complex> = None;
        let mut f: Option<ChainMap> = None;
        for (&(a, rel), c) in parts.iter().zip(coeffs) {
            let basis = self.rel_basis(a, rel, x);
            let comp = self.atom_complex(DAtom::new(a, rel), -1, 1);
            let mut g = ChainMap {
                start: -1,
                comps: (0..3).map(|k| self.alg.zero_morphism(&comp.terms[k], &tgt.terms[k])).collect(),
            };
            for (coef, b) in c.iter().zip(basis.iter()) {
                for k in 0..3 {
                    g.comps[k] = g.comps[k].add(&b.comps[k].scale(*coef % p));
                }
            }
            src = Some(match src {
                None => comp,
                Some(s) => self.complex_sum(&s, &comp),
            });
            f = Some(match f {
                None => g,
                Some(prev) => ChainMap {
                    start: -1,
                    comps: prev
                        .comps
                        .iter()
                        .zip(&g.comps)
                        .map(|(a, b)| Morphism { comps: a.comps.iter().zip(&b.comps).map(|(x, y)| x.hstack(y)).collect() })
                        .collect(),
                },
            });
        }
        let src = src.unwrap_or_else(|| self.zero_complex(-1, 1));
        let f = f.unwrap_or_else(|| ChainMap {
            start: -1,
            comps: (0..3).map(|k| self.alg.zero_morphism(&src.terms[k], &tgt.terms[k])).collect(),
        });
        self.split(&self.cone(&f, &src, &tgt))
    }

    /// Searches a triangle `u -> x -> v -> u[1]` with `u ∈ add(left)` and
    /// every summand of `v` accepted by `in_right`. Candidates are tried by
    /// increasing number of summands, then lexicographically.
    pub fn triangle_search(&self, x: DAtom, left: &[DAtom], in_right: &dyn Fn(DAtom) -> bool) -> Option<TriangleWitness> {
        if in_right(x) {
            return Some(TriangleWitness { u: DObj::zero(), x, v: DObj::new(vec![x]), coeffs: vec![] });
        }
        if left.contains(&x) {
            return Some(TriangleWitness { u: DObj::new(vec![x]), x, v: DObj::zero(), coeffs: vec![vec![1]] });
        }
        let mut cands: Vec<DAtom> = left
            .iter()
            .copied()
            .filter(|a| a.shift == x.shift || a.shift == x.shift - 1)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .flat_map(|a| std::iter::repeat_n(a, self.hom_dim_d(a, x)))
            .collect();
        cands.sort();
        for k in 1..=cands.len() {
            for comb in exactlin::combinations(cands.len(), k) {
                let parts: Vec<(Interval, i32)> = comb.iter().map(|&i| (cands[i].module, cands[i].shift - x.shift)).collect();
                let dims: Vec<usize> = parts.iter().map(|&(a, r)| self.rel_basis(a, r, x.module).len()).collect();
                let choices: Vec<Vec<Vec<u32>>> = dims
                    .iter()
                    .map(|&d| exactlin::all_vectors(self.alg.p(), d).filter(|v| v.iter().any(|&c| c != 0)).collect())
                    .collect();
                if choices.iter().any(|c| c.is_empty()) {
                    continue;
                }
                let mut idx = vec![0usize; k];
                'coeffs: loop {
                    let coeffs: Vec<Vec<u32>> = idx.iter().zip(&choices).map(|(&i, c)| c[i].clone()).collect();
                    let v = self.rel_cone(x.module, &parts, &coeffs).shifted(x.shift);
                    if v.atoms().iter().all(|&a| in_right(a)) {
                        let u = DObj::new(comb.iter().map(|&i| cands[i]).collect());
                        return Some(TriangleWitness { u, x, v, coeffs });
                    }
                    let mut pos = k;
                    loop {
                        if pos == 0 {
                            break 'coeffs;
                        }
                        pos -= 1;
                        idx[pos] += 1;
                        if idx[pos] < choices[pos].len() {
                            continue 'coeffs;
                        }
                        idx[pos] = 0;
                    }
                }
            }
        }
        None
    }

    /// Recomputes the cone of a witness and compares it with the recorded `v`.
    pub fn recheck(&self, w: &TriangleWitness) -> bool {
        if w.u.is_zero() {
            return w.v == DObj::new(vec![w.x]);
        }
        let parts: Vec<(Interval, i32)> = w.u.atoms().iter().map(|a| (a.module, a.shift - w.x.shift)).collect();
        if parts.iter().any(|&(_, r)| !(-1..=0).contains(&r)) || parts.len() != w.coeffs.len() {
            return false;
        }
        self.rel_cone_uncached(w.x.module, &parts, &w.coeffs).shifted(w.x.shift) == w.v
    }
}

fn resolve(alg: &PathAlgebra, iv: Interval) -> (Rep, Rep, Morphism) {
    let q = alg.quiver();
    let tops = q.tops(iv);
    let target = alg.realize(iv);
    let projs: Vec<Interval> = tops.iter().map(|&v| q.projective_at(v)).collect();
    let p0 = alg.realize_sum(&projs);
    // The cover P0 -> M: on each P(v) the unique map hitting the top at v.
    let mut comps: Vec<Matrix> = (0..alg.n()).map(|v| Matrix::zeros(alg.p(), target.dims[v], 0)).collect();
    for &pv in &projs {
        let basis = alg.hom_basis(&alg.realize(pv), &target);
        assert_eq!(basis.len(), 1, "Hom(P, M) of an interval is one-dimensional");
        for v in 0..alg.n() {
            comps[v] = comps[v].hstack(&basis[0].comps[v]);
        }
    }
    let cover = Morphism { comps };
    let ker = alg.kernel(&cover, &p0);
    let p1 = alg.restrict(&p0, &ker);
    let incl = Morphism { comps: ker.basis.clone() };
    (p1, p0, incl)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i32,
    pub hi: i32,
}

impl Window {
    pub fn new(lo: i32, hi: i32) -> Result<Self> {
        if lo >= hi {
            return Err(Error::Rejected(format!("window needs lo < hi, got [{lo}, {hi}]")));
        }
        Ok(Window { lo, hi })
    }

    pub fn contains(&self, shift: i32) -> bool {
        self.lo <= shift && shift <= self.hi
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Class {
    Torsion,
    Free,
    Neither,
}

/// A pair of atom classes on a window. Atoms above the window count as
/// torsion, atoms below as free.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct WindowPair {
    pub window: Window,
    pub torsion: BTreeSet<DAtom>,
    pub free: BTreeSet<DAtom>,
}

#[derive(Serialize, Deserialize)]
struct WindowPairJson {
    window: Window,
    torsion: Vec<String>,
    free: Vec<String>,
}

impl WindowPair {
    pub fn new(window: Window, torsion: BTreeSet<DAtom>, free: BTreeSet<DAtom>) -> Result<Self> {
        Window::new(window.lo, window.hi)?;
        if let Some(a) = torsion.iter().chain(&free).find(|a| !window.contains(a.shift)) {
            return Err(Error::Rejected(format!("{a} lies outside the window [{}, {}]", window.lo, window.hi)));
        }
        if let Some(a) = torsion.intersection(&free).next() {
            return Err(Error::Rejected(format!("{a} is classified both torsion and free")));
        }
        Ok(WindowPair { window, torsion, free })
    }

    pub fn classify(&self, a: DAtom) -> Class {
        if a.shift > self.window.hi || self.torsion.contains(&a) {
            Class::Torsion
        } else if a.shift < self.window.lo || self.free.contains(&a) {
            Class::Free
        } else {
            Class::Neither
        }
    }

    /// Every atom in the top row torsion, every atom in the bottom row free.
    pub fn check_buffer(&self, modules: &[Interval]) -> Result<()> {
        for &m in modules {
            let top = DAtom::new(m, self.window.hi);
            if self.classify(top) != Class::Torsion {
                return Err(Error::Buffer(format!("{top} must be torsion")));
            }
            let bottom = DAtom::new(m, self.window.lo);
            if self.classify(bottom) != Class::Free {
                return Err(Error::Buffer(format!("{bottom} must be free")));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(WindowPairJson {
            window: self.window,
            torsion: self.torsion.iter().map(|a| a.to_string()).collect(),
            free: self.free.iter().map(|a| a.to_string()).collect(),
        })
        .expect("serializable")
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let raw: WindowPairJson = serde_json::from_value(v.clone()).map_err(|e| Error::parse(v.to_string(), e.to_string()))?;
        let parse = |xs: &[String]| xs.iter().map(|s| s.parse()).collect::<Result<BTreeSet<DAtom>>>();
        WindowPair::new(raw.window, parse(&raw.torsion)?, parse(&raw.free)?)
    }
}

static NEXT_ID: AtomicU64 = AtomicU64::new(1);

pub(crate) fn fresh_id() -> u64 {
    NEXT_ID.fetch_add(1, Ordering::Relaxed)
}

type FactorKey = (usize, u128, u128);

/// The atoms of `D^b` with shift in a window, as a finite category.
/// Factorizations only use atoms inside the window.
pub struct DerivedWindow {
    id: u64,
    cat: Arc<DerivedCategory>,
    window: Window,
    atoms: Vec<DAtom>,
    index: HashMap<DAtom, usize>,
    left_relevant: Vec<AtomSet>,
    right_relevant: Vec<AtomSet>,
    factors: Mutex<HashMap<FactorKey, Option<Factorization>>>,
}

impl fmt::Debug for DerivedWindow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DerivedWindow({:?}, [{}, {}])", self.cat, self.window.lo, self.window.hi)
    }
}

impl DerivedWindow {
    pub fn new(cat: Arc<DerivedCategory>, window: Window) -> Result<Self> {
        Window::new(window.lo, window.hi)?;
        let modules = cat.algebra().all_indecomposables().to_vec();
        let atoms: Vec<DAtom> =
            (window.lo..=window.hi).flat_map(|s| modules.iter().map(move |&m| DAtom::new(m, s))).collect();
        if atoms.len() > 128 {
            return Err(Error::Refused(format!("{} atoms in window; at most 128 supported", atoms.len())));
        }
        let index = atoms.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let left_relevant = atoms
            .iter()
            .map(|&x| {
                AtomSet::from_indices(
                    atoms.iter().enumerate().filter(|(_, &a)| (a.shift == x.shift || a.shift + 1 == x.shift) && cat.hom_dim_d(a, x) > 0).map(|(i, _)| i),
                )
            })
            .collect();
        let right_relevant = atoms
            .iter()
            .map(|&x| AtomSet::from_indices(atoms.iter().enumerate().filter(|(_, &a)| a.shift == x.shift || a.shift == x.shift + 1).map(|(i, _)| i)))
            .collect();
        Ok(DerivedWindow {
            id: fresh_id(),
            cat,
            window,
            atoms,
            index,
            left_relevant,
            right_relevant,
            factors: Mutex::new(HashMap::new()),
        })
    }

    pub fn category(&self) -> &DerivedCategory {
        &self.cat
    }

    pub fn shared_category(&self) -> Arc<DerivedCategory> {
        self.cat.clone()
    }

    pub fn window(&self) -> Window {
        self.window
    }

    pub fn atoms(&self) -> &[DAtom] {
        &self.atoms
    }

    pub fn atom(&self, i: usize) -> DAtom {
        self.atoms[i]
    }

    pub fn index_of(&self, a: DAtom) -> Option<usize> {
        self.index.get(&a).copied()
    }

    pub fn set_of<'a>(&self, atoms: impl IntoIterator<Item = &'a DAtom>) -> Result<AtomSet> {
        let mut s = AtomSet::EMPTY;
        for a in atoms {
            let i = self.index_of(*a).ok_or_else(|| Error::Contract(format!("{a} is outside the window")))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn filter(&self, pred: impl Fn(DAtom) -> bool) -> AtomSet {
        AtomSet::from_indices(self.atoms.iter().enumerate().filter(|(_, &a)| pred(a)).map(|(i, _)| i))
    }

    pub fn atoms_of(&self, s: AtomSet) -> Vec<DAtom> {
        s.iter().map(|i| self.atoms[i]).collect()
    }

    /// `{a[k] : a ∈ s}` restricted to the window.
    pub fn shift_set(&self, s: AtomSet, k: i32) -> AtomSet {
        AtomSet::from_indices(s.iter().filter_map(|i| self.index_of(self.atoms[i].shifted(k))))
    }

    /// `(torsion, free)` atom sets of a pair, tails included.
    pub fn pair_sets(&self, p: &WindowPair) -> (AtomSet, AtomSet) {
        (self.filter(|a| p.classify(a) == Class::Torsion), self.filter(|a| p.classify(a) == Class::Free))
    }

    pub fn to_pair(&self, torsion: AtomSet, free: AtomSet) -> WindowPair {
        WindowPair {
            window: self.window,
            torsion: self.atoms_of(torsion).into_iter().collect(),
            free: self.atoms_of(free).into_iter().collect(),
        }
    }

    pub fn check_buffer(&self, torsion: AtomSet, free: AtomSet) -> Result<()> {
        let pair = self.to_pair(torsion, free);
        pair.check_buffer(self.cat.algebra().all_indecomposables())
    }

    pub fn triangle_search_sets(&self, x: DAtom, left: AtomSet, right: AtomSet) -> Option<TriangleWitness> {
        let l = self.atoms_of(left);
        self.cat.triangle_search(x, &l, &|a| self.index_of(a).is_some_and(|i| right.contains(i)))
    }
}

impl Category for DerivedWindow {
    fn id(&self) -> u64 {
        self.id
    }

    fn len(&self) -> usize {
        self.atoms.len()
    }

    fn label(&self, i: usize) -> String {
        self.atoms[i].to_string()
    }

    fn hom0(&self, a: usize, b: usize) -> usize {
        self.cat.hom_dim_d(self.atoms[a], self.atoms[b])
    }

    fn neg1(&self, a: usize, b: usize) -> usize {
        self.cat.hom_dim_d(self.atoms[a], self.atoms[b].shifted(-1))
    }

    fn factor(&self, x: usize, left: AtomSet, right: AtomSet) -> Option<Factorization> {
        let key = (x, left.intersect(self.left_relevant[x]).0, right.intersect(self.right_relevant[x]).0);
        if let Some(r) = self.factors.lock().unwrap().get(&key) {
            return r.clone();
        }
        let xa = self.atoms[x];
        let out = if left.contains(x) {
            Some(Factorization { sub: vec![x], quotient: vec![] })
        } else if right.contains(x) {
            Some(Factorization { sub: vec![], quotient: vec![x] })
        } else {
            self.triangle_search_sets(xa, AtomSet(key.1), AtomSet(key.2)).map(|w| Factorization {
                sub: w.u.atoms().iter().map(|a| self.index[a]).collect(),
                quotient: w.v.atoms().iter().map(|a| self.index[a]).collect(),
            })
        };
        self.factors.lock().unwrap().insert(key, out.clone());
        out
    }

    fn preceq_alternative(&self, u1: AtomSet, u2: AtomSet) -> Option<bool> {
        // With tails, U1[1] ⊆ U2 is checked on in-window atoms whose shift
        // stays in the window; the top row is torsion on both sides.
        Some(u1.is_subset(u2) && self.shift_set(u1, 1).is_subset(u2))
    }
}

/// Verification report for a pair on a window.
#[derive(Clone, Debug)]
pub struct DerivedPairReport {
    pub is_torsion: bool,
    pub is_s_torsion: bool,
    /// `Some(b)` when a t-structure check was requested.
    pub is_t_structure: Option<bool>,
    pub failure: Option<String>,
}

/// Checks a window pair by Hom vanishing and triangle search; on request
/// also the s-condition and the shift-closure of the aisle.
pub fn is_torsion_pair_d(dw: &DerivedWindow, p: &WindowPair, s_flag: bool, t_flag: bool) -> Result<DerivedPairReport> {
    let (u, v) = dw.pair_sets(p);
    dw.check_buffer(u, v)?;
    let ctx = crate::torspairs::Context::full(dw);
    let rec = crate::torspairs::is_torsion_pair(&ctx, ctx.subcat(u)?, ctx.subcat(v)?)?;
    let s = rec.is_torsion && rec.is_s_torsion;
    let t = t_flag.then(|| {
        let closed = dw.shift_set(u, 1).is_subset(u);
        s && closed
    });
    Ok(DerivedPairReport {
        is_torsion: rec.is_torsion,
        is_s_torsion: if s_flag { s } else { rec.is_s_torsion },
        is_t_structure: t,
        failure: rec.failure.clone(),
    })
}

/// `(τ≤n X, τ≥n+1 X)` for a pair encoding a t-structure `(U, V[1])`.
pub fn truncate(dw: &DerivedWindow, t: &WindowPair, x: &DObj, n: i32) -> Result<(DObj, DObj)> {
    let rep = is_torsion_pair_d(dw, t, true, true)?;
    if rep.is_t_structure != Some(true) {
        return Err(Error::Rejected("truncation needs a pair encoding a t-structure".into()));
    }
    let (u, v) = dw.pair_sets(t);
    let mut left = Vec::new();
    let mut right = Vec::new();
    for &a in x.atoms() {
        let b = a.shifted(n);
        match t.classify(b) {
            Class::Torsion => left.push(a),
            Class::Free => right.push(a),
            Class::Neither => {
                let w = dw.triangle_search_sets(b, u, v).ok_or_else(|| {
                    Error::verification("truncation", format!("{b} has no triangle for the pair"))
                })?;
                left.extend(w.u.shifted(-n).atoms());
                right.extend(w.v.shifted(-n).atoms());
            }
        }
    }
    Ok((DObj::new(left), DObj::new(right)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn iv(lo: usize, hi: usize) -> Interval {
        Interval::new(lo, hi)
    }

    fn at(lo: usize, hi: usize, s: i32) -> DAtom {
        DAtom::new(iv(lo, hi), s)
    }

    fn a2() -> DerivedCategory {
        DerivedCategory::new(PathAlgebra::new(Quiver::parse("1>2").unwrap(), 2).unwrap())
    }

    #[test]
    fn atom_literals() {
        assert_eq!("M[1,2]@-3".parse::<DAtom>().unwrap(), at(1, 2, -3));
        assert_eq!("M[2,2]".parse::<DAtom>().unwrap(), at(2, 2, 0));
        assert!("M[2,2]@x".parse::<DAtom>().is_err());
        assert_eq!(at(1, 1, -1).to_string(), "M[1,1]@-1");
    }

    #[test]
    fn derived_hom_examples() {
        let d = a2();
        assert_eq!(d.hom_dim_d(at(1, 2, 0), at(1, 1, 0)), 1);
        assert_eq!(d.hom_dim_d(at(1, 1, 0), at(2, 2, 1)), 1);
        assert_eq!(d.hom_dim_d(at(1, 1, 0), at(2, 2, 2)), 0);
        assert_eq!(d.hom_dim_d(at(1, 1, 1), at(2, 2, 0)), 0);
    }

    #[test]
    fn resolutions_are_exact() {
        let q = Quiver::parse("1>2<3<4").unwrap();
        let d = DerivedCategory::new(PathAlgebra::new(q, 2).unwrap());
        for &m in d.algebra().all_indecomposables() {
            let c = d.atom_complex(DAtom::new(m, 0), -1, 0);
            assert!(d.is_complex(&c));
            assert_eq!(d.split(&c), DObj::new(vec![DAtom::new(m, 0)]), "{m}");
        }
    }

    #[test]
    fn cone_examples() {
        let d = a2();
        let (s2, p1) = (at(2, 2, 0), at(1, 2, 0));
        let src = d.atom_complex(s2, -1, 0);
        let tgt = d.atom_complex(p1, -1, 0);
        let basis = d.chain_hom_basis(&src, &tgt);
        assert_eq!(basis.len(), 1);
        assert_eq!(d.cone_decompose(&basis[0], &src, &tgt).unwrap(), DObj::new(vec![at(1, 1, 0)]));

        let zero = ChainMap { start: -1, comps: (0..2).map(|k| d.algebra().zero_morphism(&src.terms[k], &tgt.terms[k])).collect() };
        assert_eq!(d.cone_decompose(&zero, &src, &tgt).unwrap(), DObj::new(vec![p1, s2.shifted(1)]));

        let id = d.chain_hom_basis(&tgt, &tgt);
        assert_eq!(id.len(), 1);
        assert!(d.cone_decompose(&id[0], &tgt, &tgt).unwrap().is_zero());
    }

    #[test]
    fn non_chain_map_is_rejected() {
        let d = a2();
        let src = d.atom_complex(at(1, 1, 0), -1, 0);
        let tgt = d.atom_complex(at(1, 1, 0), -1, 0);
        // Identity on P1 only, zero on P0: does not commute with the differential.
        let mut f = d.chain_hom_basis(&src, &tgt)[0].clone();
        f.comps[1] = d.algebra().zero_morphism(&src.terms[1], &tgt.terms[1]);
        assert!(matches!(d.cone_decompose(&f, &src, &tgt), Err(Error::Contract(_))));
    }

    #[test]
    fn triangle_search_examples() {
        let d = a2();
        let w = d.triangle_search(at(1, 2, 0), &[at(2, 2, 0)], &|a| a == at(1, 1, 0)).unwrap();
        assert_eq!(w.u, DObj::new(vec![at(2, 2, 0)]));
        assert_eq!(w.v, DObj::new(vec![at(1, 1, 0)]));
        assert!(d.recheck(&w));

        let w = d.triangle_search(at(1, 1, 0), &[at(1, 1, 0)], &|_| false).unwrap();
        assert!(w.v.is_zero());

        assert!(d.triangle_search(at(1, 1, 0), &[at(2, 2, 0)], &|a| a == at(1, 2, 0)).is_none());
    }

    #[test]
    fn window_pair_buffer() {
        let w = Window::new(-1, 1).unwrap();
        let d = a2();
        let ms = d.algebra().all_indecomposables().to_vec();
        let torsion: BTreeSet<DAtom> = ms.iter().flat_map(|&m| [DAtom::new(m, 0), DAtom::new(m, 1)]).collect();
        let free: BTreeSet<DAtom> = ms.iter().map(|&m| DAtom::new(m, -1)).collect();
        let p = WindowPair::new(w, torsion.clone(), free).unwrap();
        assert!(p.check_buffer(&ms).is_ok());
        let bad = WindowPair::new(w, torsion, BTreeSet::new()).unwrap();
        assert!(matches!(bad.check_buffer(&ms), Err(Error::Buffer(_))));
        assert_eq!(WindowPair::from_json(&p.to_json()).unwrap(), p);
    }
}
