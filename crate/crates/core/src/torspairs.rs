//! Torsion pairs over a finite set of indecomposable atoms.
//!
//! Everything here is generic over [`Category`]: the module category of a
//! type-A quiver and a shift window of its derived category both implement
//! it. A [`Context`] restricts a category to a sub-universe, which is how the
//! heart of an interval becomes a category of its own.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::dercat::fresh_id;
use crate::error::{Error, Result};
use crate::quiver::{Interval, PathAlgebra};

/// A set of atom indices (at most 128 atoms).
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AtomSet(pub u128);

impl AtomSet {
    pub const EMPTY: AtomSet = AtomSet(0);

    pub fn full(n: usize) -> AtomSet {
        assert!(n <= 128);
        if n == 128 {
            AtomSet(u128::MAX)
        } else {
            AtomSet((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> AtomSet {
        AtomSet(1 << i)
    }

    pub fn from_indices(it: impl IntoIterator<Item = usize>) -> AtomSet {
        let mut s = AtomSet::EMPTY;
        for i in it {
            s.insert(i);
        }
        s
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn insert(&mut self, i: usize) {
        self.0 |= 1 << i;
    }

    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1 << i);
    }

    pub fn union(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 | o.0)
    }

    pub fn intersect(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 & o.0)
    }

    pub fn minus(self, o: AtomSet) -> AtomSet {
        AtomSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: AtomSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(i)
            }
        })
    }

    /// The subset of `self` selected by the low bits of `mask`, in index order.
    pub fn select(self, mask: u64) -> AtomSet {
        AtomSet::from_indices(self.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, i)| i))
    }
}

impl fmt::Debug for AtomSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Summands of the two ends of a conflation/triangle `sub -> X -> quotient`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub sub: Vec<usize>,
    pub quotient: Vec<usize>,
}

/// A Krull-Schmidt category with finitely many atoms in view.
pub trait Category: Sync {
    /// Distinguishes categories so that subcategories cannot be mixed.
    fn id(&self) -> u64;
    fn len(&self) -> usize;
    fn is_empty(&self) -> bool {
        self.len() == 0
    }
    fn label(&self, i: usize) -> String;
    fn hom0(&self, a: usize, b: usize) -> usize;
    /// Dimension of the negative first extension `E⁻¹(a, b)`.
    fn neg1(&self, a: usize, b: usize) -> usize;
    /// Tests `X ∈ add(left) * add(right)` and returns the two ends.
    fn factor(&self, x: usize, left: AtomSet, right: AtomSet) -> Option<Factorization>;
    /// An independent formulation of `⪯` between torsion classes, if the
    /// category has one.
    fn preceq_alternative(&self, _u1: AtomSet, _u2: AtomSet) -> Option<bool> {
        None
    }
}

type ModuleFactorKey = (usize, u128, u128);

/// `mod kQ` for a type-A quiver. Atoms are the interval modules.
pub struct ModuleCategory {
    id: u64,
    alg: PathAlgebra,
    atoms: Vec<Interval>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    factors: Mutex<HashMap<ModuleFactorKey, Option<Factorization>>>,
}

impl fmt::Debug for ModuleCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleCategory({}, p={})", self.alg.quiver(), self.alg.p())
    }
}

/// Largest total dimension for exhaustive subrepresentation scans.
pub const SUBREP_SCAN_CAP: usize = 12;

impl ModuleCategory {
    pub fn new(alg: PathAlgebra) -> Self {
        let atoms = alg.all_indecomposables().to_vec();
        let hom = atoms.iter().map(|&a| atoms.iter().map(|&b| alg.hom(a, b)).collect()).collect();
        let ext = atoms.iter().map(|&a| atoms.iter().map(|&b| alg.ext1(a, b)).collect()).collect();
        ModuleCategory { id: fresh_id(), alg, atoms, hom, ext, factors: Mutex::new(HashMap::new()) }
    }

    pub fn algebra(&self) -> &PathAlgebra {
        &self.alg
    }

    pub fn atoms(&self) -> &[Interval] {
        &self.atoms
    }

    pub fn atom(&self, i: usize) -> Interval {
        self.atoms[i]
    }

    pub fn set_of<'a>(&self, ivs: impl IntoIterator<Item = &'a Interval>) -> Result<AtomSet> {
        let mut s = AtomSet::EMPTY;
        for iv in ivs {
            let i = self.alg.index_of(*iv).ok_or_else(|| Error::Contract(format!("{iv} is not a module of this quiver")))?;
            s.insert(i);
        }
        Ok(s)
    }

    pub fn intervals_of(&self, s: AtomSet) -> BTreeSet<Interval> {
        s.iter().map(|i| self.atoms[i]).collect()
    }

    fn hom_vanishes(&self, a: AtomSet, b: AtomSet) -> bool {
        a.iter().all(|i| b.iter().all(|j| self.hom[i][j] == 0))
    }

    /// Decides `X ∈ A * B` by scanning every subrepresentation of X. Only
    /// meaningful over `F_2`.
    pub fn star_oracle(&self, a: AtomSet, b: AtomSet, x: usize) -> Result<bool> {
        if self.alg.p() != 2 {
            return Err(Error::Contract("the subrepresentation oracle runs over F_2".into()));
        }
        let (sa, sb) = (self.intervals_of(a), self.intervals_of(b));
        Ok(self.alg.factor_exhaustive(&sa, &sb, &self.alg.realize(self.atoms[x]), SUBREP_SCAN_CAP)?.is_some())
    }

    pub fn serre_check(&self, s: AtomSet) -> bool {
        self.alg.serre_check(&self.intervals_of(s))
    }

    fn to_factorization(&self, f: crate::quiver::ModuleFactorization) -> Factorization {
        let ix = |v: Vec<Interval>| v.into_iter().map(|iv| self.alg.index_of(iv).unwrap()).collect();
        Factorization { sub: ix(f.sub), quotient: ix(f.quotient) }
    }
}

impl Category for ModuleCategory {
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
        self.hom[a][b]
    }

    fn neg1(&self, a: usize, b: usize) -> usize {
        self.ext[a][b]
    }

    fn factor(&self, x: usize, left: AtomSet, right: AtomSet) -> Option<Factorization> {
        if left.contains(x) {
            return Some(Factorization { sub: vec![x], quotient: vec![] });
        }
        if right.contains(x) {
            return Some(Factorization { sub: vec![], quotient: vec![x] });
        }
        let key = (x, left.0, right.0);
        if let Some(r) = self.factors.lock().unwrap().get(&key) {
            return r.clone();
        }
        let (sa, sb) = (self.intervals_of(left), self.intervals_of(right));
        let xr = self.alg.realize(self.atoms[x]);
        let out = if self.hom_vanishes(left, right) {
            self.alg.factor_by_trace(&sa, &sb, &xr)
        } else {
            self.alg
                .factor_exhaustive(&sa, &sb, &xr, usize::MAX)
                .expect("uncapped scan cannot refuse")
        };
        let out = out.map(|f| self.to_factorization(f));
        self.factors.lock().unwrap().insert(key, out.clone());
        out
    }
}

/// Wraps a category and logs every factorization query with its answer.
pub struct Recording<'a> {
    inner: &'a dyn Category,
    pub log: Mutex<Vec<(usize, AtomSet, AtomSet, bool)>>,
}

impl<'a> Recording<'a> {
    pub fn new(inner: &'a dyn Category) -> Self {
        Recording { inner, log: Mutex::new(Vec::new()) }
    }

    pub fn take(&self) -> Vec<(usize, AtomSet, AtomSet, bool)> {
        std::mem::take(&mut self.log.lock().unwrap())
    }
}

impl Category for Recording<'_> {
    fn id(&self) -> u64 {
        self.inner.id()
    }
    fn len(&self) -> usize {
        self.inner.len()
    }
    fn label(&self, i: usize) -> String {
        self.inner.label(i)
    }
    fn hom0(&self, a: usize, b: usize) -> usize {
        self.inner.hom0(a, b)
    }
    fn neg1(&self, a: usize, b: usize) -> usize {
        self.inner.neg1(a, b)
    }
    fn factor(&self, x: usize, left: AtomSet, right: AtomSet) -> Option<Factorization> {
        let r = self.inner.factor(x, left, right);
        self.log.lock().unwrap().push((x, left, right, r.is_some()));
        r
    }
    fn preceq_alternative(&self, u1: AtomSet, u2: AtomSet) -> Option<bool> {
        self.inner.preceq_alternative(u1, u2)
    }
}

/// A category restricted to a universe of atoms. Factorizations inside a
/// context only use atoms of the universe.
#[derive(Clone)]
pub struct Context<'a> {
    cat: &'a dyn Category,
    universe: AtomSet,
    hom_out: Arc<Vec<AtomSet>>,
    neg_out: Arc<Vec<AtomSet>>,
}

/// A subcategory `add(atoms)` tagged with the category it lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Subcat {
    pub cat_id: u64,
    pub atoms: AtomSet,
}

impl<'a> Context<'a> {
    pub fn full(cat: &'a dyn Category) -> Self {
        let n = cat.len();
        let hom_out = (0..n).map(|a| AtomSet::from_indices((0..n).filter(|&b| cat.hom0(a, b) != 0))).collect();
        let neg_out = (0..n).map(|a| AtomSet::from_indices((0..n).filter(|&b| cat.neg1(a, b) != 0))).collect();
        Context { cat, universe: AtomSet::full(n), hom_out: Arc::new(hom_out), neg_out: Arc::new(neg_out) }
    }

    pub fn restrict(&self, atoms: AtomSet) -> Result<Context<'a>> {
        if !atoms.is_subset(self.universe) {
            return Err(Error::Contract("restriction leaves the context".into()));
        }
        Ok(Context { universe: atoms, ..self.clone() })
    }

    pub fn category(&self) -> &'a dyn Category {
        self.cat
    }

    pub fn universe(&self) -> AtomSet {
        self.universe
    }

    pub fn is_full(&self) -> bool {
        self.universe == AtomSet::full(self.cat.len())
    }

    pub fn subcat(&self, atoms: AtomSet) -> Result<Subcat> {
        if !atoms.is_subset(self.universe) {
            let bad = atoms.minus(self.universe).iter().next().unwrap();
            return Err(Error::Contract(format!("{} is not in the context", self.cat.label(bad))));
        }
        Ok(Subcat { cat_id: self.cat.id(), atoms })
    }

    fn own(&self, s: Subcat) -> Result<AtomSet> {
        if s.cat_id != self.cat.id() {
            return Err(Error::Contract("subcategory belongs to a different context".into()));
        }
        if !s.atoms.is_subset(self.universe) {
            return Err(Error::Contract("subcategory is not contained in the context".into()));
        }
        Ok(s.atoms)
    }

    pub fn labels(&self, s: AtomSet) -> Vec<String> {
        s.iter().map(|i| self.cat.label(i)).collect()
    }

    /// First pair `(a, b)` with `Hom(a, b) != 0`.
    pub fn hom_witness(&self, a: AtomSet, b: AtomSet) -> Option<(usize, usize)> {
        a.iter().find_map(|i| self.hom_out[i].intersect(b).iter().next().map(|j| (i, j)))
    }

    /// First pair `(a, b)` with `E⁻¹(a, b) != 0`.
    pub fn neg_witness(&self, a: AtomSet, b: AtomSet) -> Option<(usize, usize)> {
        a.iter().find_map(|i| self.neg_out[i].intersect(b).iter().next().map(|j| (i, j)))
    }

    /// `{x : Hom(u, x) = 0}` inside the universe.
    pub fn right_perp(&self, u: AtomSet) -> AtomSet {
        u.iter().fold(self.universe, |acc, i| acc.minus(self.hom_out[i]))
    }

    /// `{x : Hom(x, v) = 0}` inside the universe.
    pub fn left_perp(&self, v: AtomSet) -> AtomSet {
        AtomSet::from_indices(self.universe.iter().filter(|&i| self.hom_out[i].intersect(v).is_empty()))
    }

    /// `(add a) * (add b)` restricted to the universe.
    pub fn star(&self, a: AtomSet, b: AtomSet) -> AtomSet {
        let (a, b) = (a.intersect(self.universe), b.intersect(self.universe));
        AtomSet::from_indices(self.universe.iter().filter(|&x| self.cat.factor(x, a, b).is_some()))
    }

    pub fn star3(&self, a: AtomSet, b: AtomSet, c: AtomSet) -> AtomSet {
        self.star(self.star(a, b), c)
    }

    fn describe(&self, (a, b): (usize, usize), what: &str) -> String {
        format!("{what}({}, {}) != 0", self.cat.label(a), self.cat.label(b))
    }
}

#[derive(Clone, Debug)]
pub struct TorsionPairRecord {
    pub torsion: Subcat,
    pub free: Subcat,
    pub is_torsion: bool,
    pub is_s_torsion: bool,
    pub witnesses: Vec<(usize, Factorization)>,
    pub failure: Option<String>,
}

impl TorsionPairRecord {
    pub fn u(&self) -> AtomSet {
        self.torsion.atoms
    }

    pub fn v(&self) -> AtomSet {
        self.free.atoms
    }

    pub fn same_pair(&self, other: &TorsionPairRecord) -> bool {
        self.u() == other.u() && self.v() == other.v()
    }
}

/// Checks Hom(U, V) = 0 and U * V = C inside the context, then the s-condition.
pub fn is_torsion_pair(ctx: &Context, u: Subcat, v: Subcat) -> Result<TorsionPairRecord> {
    let (ua, va) = (ctx.own(u)?, ctx.own(v)?);
    let mut rec = TorsionPairRecord {
        torsion: u,
        free: v,
        is_torsion: false,
        is_s_torsion: false,
        witnesses: Vec::new(),
        failure: None,
    };
    if let Some(w) = ctx.hom_witness(ua, va) {
        rec.failure = Some(ctx.describe(w, "Hom"));
        return Ok(rec);
    }
    for x in ctx.universe.iter() {
        match ctx.cat.factor(x, ua, va) {
            Some(f) => rec.witnesses.push((x, f)),
            None => {
                rec.failure = Some(format!("{} is not in U * V", ctx.cat.label(x)));
                return Ok(rec);
            }
        }
    }
    rec.is_torsion = true;
    match ctx.neg_witness(ua, va) {
        Some(w) => rec.failure = Some(ctx.describe(w, "E^-1")),
        None => rec.is_s_torsion = true,
    }
    Ok(rec)
}

/// Default cap on the number of atoms for subset enumeration.
pub const ENUMERATION_CAP: usize = 24;

/// Candidate torsion classes `U` with `U = ⊥(U^⊥)` among subsets of
/// `free_atoms`, each joined with `base`.
fn closed_candidates(ctx: &Context, base: AtomSet, free_atoms: AtomSet) -> Vec<(AtomSet, AtomSet)> {
    let k = free_atoms.len();
    let mut out = Vec::new();
    for mask in 0..(1u64 << k) {
        let u = base.union(free_atoms.select(mask));
        let v = ctx.right_perp(u);
        if ctx.left_perp(v) == u {
            out.push((u, v));
        }
    }
    out
}

fn sort_records(recs: &mut [TorsionPairRecord]) {
    recs.sort_by_key(|r| (std::cmp::Reverse(r.u().len()), r.u().iter().collect::<Vec<_>>()));
}

/// All torsion pairs of the context (s-torsion only on request).
pub fn enumerate_torsion_pairs(ctx: &Context, s_only: bool) -> Result<Vec<TorsionPairRecord>> {
    if ctx.universe.len() > ENUMERATION_CAP {
        return Err(Error::Refused(format!(
            "{} atoms exceed the enumeration cap of {ENUMERATION_CAP}",
            ctx.universe.len()
        )));
    }
    let mut out = Vec::new();
    for (u, v) in closed_candidates(ctx, AtomSet::EMPTY, ctx.universe) {
        let rec = is_torsion_pair(ctx, ctx.subcat(u)?, ctx.subcat(v)?)?;
        if rec.is_torsion && (!s_only || rec.is_s_torsion) {
            out.push(rec);
        }
    }
    sort_records(&mut out);
    Ok(out)
}

/// `t1 ⪯ t2`: `Hom(U1, V2) = 0` and `E⁻¹(U1, V2) = 0`. Where the category
/// offers a second formulation it must agree.
pub fn rel_preceq(ctx: &Context, t1: &TorsionPairRecord, t2: &TorsionPairRecord) -> Result<bool> {
    let (u1, v2, u2) = (ctx.own(t1.torsion)?, ctx.own(t2.free)?, ctx.own(t2.torsion)?);
    let main = ctx.hom_witness(u1, v2).is_none() && ctx.neg_witness(u1, v2).is_none();
    if ctx.is_full() && t1.is_torsion && t2.is_torsion {
        if let Some(alt) = ctx.cat.preceq_alternative(u1, u2) {
            if alt != main {
                return Err(Error::verification(
                    "preceq-forms-agree",
                    format!("vanishing form says {main}, inclusion form says {alt}"),
                ));
            }
        }
    }
    Ok(main)
}

fn preceq_violation(ctx: &Context, t1: &TorsionPairRecord, t2: &TorsionPairRecord) -> String {
    if let Some(w) = ctx.hom_witness(t1.u(), t2.v()) {
        ctx.describe(w, "Hom")
    } else if let Some(w) = ctx.neg_witness(t1.u(), t2.v()) {
        ctx.describe(w, "E^-1")
    } else {
        "no violation".into()
    }
}

#[derive(Clone, Debug)]
pub struct IntervalSpec {
    pub t1: TorsionPairRecord,
    pub t2: TorsionPairRecord,
    pub heart: Subcat,
}

/// Builds `[t1, t2]` with heart `U2 ∩ V1`, checking that every object of
/// `U2` lies in `U1 * H` and every object of `V1` in `H * V2`.
pub fn heart_of_interval(ctx: &Context, t1: &TorsionPairRecord, t2: &TorsionPairRecord) -> Result<IntervalSpec> {
    if !t1.is_torsion || !t2.is_torsion {
        return Err(Error::Contract("interval endpoints must be verified torsion pairs".into()));
    }
    if !rel_preceq(ctx, t1, t2)? {
        return Err(Error::Rejected(format!("t1 ⪯ t2 fails: {}", preceq_violation(ctx, t1, t2))));
    }
    let h = t2.u().intersect(t1.v());
    for x in t2.u().iter() {
        if ctx.cat.factor(x, t1.u(), h).is_none() {
            return Err(Error::verification("U2 = U1 * H", format!("{} has no factorization", ctx.cat.label(x))));
        }
    }
    for x in t1.v().iter() {
        if ctx.cat.factor(x, h, t2.v()).is_none() {
            return Err(Error::verification("V1 = H * V2", format!("{} has no factorization", ctx.cat.label(x))));
        }
    }
    Ok(IntervalSpec { t1: t1.clone(), t2: t2.clone(), heart: ctx.subcat(h)? })
}

/// `E⁻¹(T, V2) = 0` and `E⁻¹(U1, F) = 0`; returns the first violation.
pub fn admissibility_violation(ctx: &Context, spec: &IntervalSpec, t: AtomSet, f: AtomSet) -> Option<String> {
    ctx.neg_witness(t, spec.t2.v())
        .or_else(|| ctx.neg_witness(spec.t1.u(), f))
        .map(|w| ctx.describe(w, "E^-1"))
}

/// `(U ∩ V1, V ∩ U2)` as a torsion pair of the heart.
pub fn phi(ctx: &Context, spec: &IntervalSpec, t: &TorsionPairRecord) -> Result<TorsionPairRecord> {
    if !rel_preceq(ctx, &spec.t1, t)? {
        return Err(Error::Rejected(format!("t1 ⪯ t fails: {}", preceq_violation(ctx, &spec.t1, t))));
    }
    if !rel_preceq(ctx, t, &spec.t2)? {
        return Err(Error::Rejected(format!("t ⪯ t2 fails: {}", preceq_violation(ctx, t, &spec.t2))));
    }
    let hctx = ctx.restrict(spec.heart.atoms)?;
    let tt = t.u().intersect(spec.t1.v());
    let ff = t.v().intersect(spec.t2.u());
    let rec = is_torsion_pair(&hctx, hctx.subcat(tt)?, hctx.subcat(ff)?)?;
    if !rec.is_torsion {
        return Err(Error::verification("phi-image-is-torsion-pair", rec.failure.unwrap_or_default()));
    }
    if let Some(w) = admissibility_violation(ctx, spec, tt, ff) {
        return Err(Error::verification("phi-image-condition", w));
    }
    Ok(rec)
}

/// `(U1 * T, F * V2)` for a torsion pair `(T, F)` of the heart.
pub fn psi(ctx: &Context, spec: &IntervalSpec, tf: &TorsionPairRecord) -> Result<TorsionPairRecord> {
    let (t, f) = (tf.u(), tf.v());
    if !t.union(f).is_subset(spec.heart.atoms) || tf.torsion.cat_id != ctx.cat.id() {
        return Err(Error::Contract("psi needs a pair inside the heart".into()));
    }
    if let Some(w) = admissibility_violation(ctx, spec, t, f) {
        return Err(Error::Rejected(format!("pair outside the admissible set: {w}")));
    }
    let u = ctx.star(spec.t1.u(), t);
    let v = ctx.star(f, spec.t2.v());
    let rec = is_torsion_pair(ctx, ctx.subcat(u)?, ctx.subcat(v)?)?;
    if !rec.is_torsion {
        return Err(Error::verification("psi-image-is-torsion-pair", rec.failure.unwrap_or_default()));
    }
    Ok(rec)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Option<String>,
}

impl Check {
    pub fn new(name: &str, failure: Option<String>) -> Check {
        Check { name: name.to_string(), pass: failure.is_none(), witness: failure }
    }
}

/// Hasse diagram of a finite poset; edges point from the larger element to
/// the element it covers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseGraph {
    pub labels: Vec<String>,
    pub boxed: Vec<bool>,
    pub edges: Vec<(usize, usize)>,
}

impl HasseGraph {
    /// `less(i, j)` means `i < j` strictly.
    pub fn from_order(labels: Vec<String>, boxed: Vec<bool>, less: impl Fn(usize, usize) -> bool) -> Self {
        let n = labels.len();
        let mut edges = Vec::new();
        for hi in 0..n {
            for lo in 0..n {
                if less(lo, hi) && !(0..n).any(|k| less(lo, k) && less(k, hi)) {
                    edges.push((hi, lo));
                }
            }
        }
        HasseGraph { labels, boxed, edges }
    }

    /// Covers of strict inclusion of atom sets.
    pub fn from_sets(sets: &[AtomSet], labels: Vec<String>, boxed: Vec<bool>) -> Self {
        Self::from_order(labels, boxed, |i, j| sets[i] != sets[j] && sets[i].is_subset(sets[j]))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.edges.iter().any(|&(_, t)| t == i)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| !self.edges.iter().any(|&(s, _)| s == i)).collect()
    }

    pub fn edge_set(&self) -> BTreeSet<(usize, usize)> {
        self.edges.iter().copied().collect()
    }

    /// Whether `map` (node of self -> node of other) is a digraph isomorphism.
    pub fn is_isomorphism(&self, other: &HasseGraph, map: &[usize]) -> bool {
        if self.len() != other.len() || self.edges.len() != other.edges.len() || map.len() != self.len() {
            return false;
        }
        let image: BTreeSet<usize> = map.iter().copied().collect();
        if image.len() != map.len() || image.iter().any(|&i| i >= other.len()) {
            return false;
        }
        let theirs = other.edge_set();
        self.edges.iter().all(|&(s, t)| theirs.contains(&(map[s], map[t])))
    }

    /// Some isomorphism onto `other`, found by backtracking.
    pub fn isomorphism(&self, other: &HasseGraph) -> Option<Vec<usize>> {
        if self.len() != other.len() || self.edges.len() != other.edges.len() {
            return None;
        }
        let n = self.len();
        let deg = |g: &HasseGraph, i: usize| {
            (g.edges.iter().filter(|e| e.0 == i).count(), g.edges.iter().filter(|e| e.1 == i).count())
        };
        let mine = self.edge_set();
        let theirs = other.edge_set();
        fn go(
            i: usize,
            n: usize,
            map: &mut Vec<usize>,
            used: &mut Vec<bool>,
            ok: &dyn Fn(usize, usize, &[usize]) -> bool,
        ) -> bool {
            if i == n {
                return true;
            }
            for j in 0..n {
                if !used[j] && ok(i, j, map) {
                    map.push(j);
                    used[j] = true;
                    if go(i + 1, n, map, used, ok) {
                        return true;
                    }
                    used[j] = false;
                    map.pop();
                }
            }
            false
        }
        let ok = |i: usize, j: usize, map: &[usize]| {
            deg(self, i) == deg(other, j)
                && (0..i).all(|k| {
                    mine.contains(&(k, i)) == theirs.contains(&(map[k], j))
                        && mine.contains(&(i, k)) == theirs.contains(&(j, map[k]))
                })
        };
        let mut map = Vec::new();
        let mut used = vec![false; n];
        go(0, n, &mut map, &mut used, &ok).then_some(map)
    }

    pub fn to_dot(&self, name: &str) -> String {
        let mut s = format!("digraph \"{name}\" {{\n  rankdir=TB;\n");
        for (i, l) in self.labels.iter().enumerate() {
            let shape = if self.boxed[i] { "box" } else { "ellipse" };
            s.push_str(&format!("  n{i} [label=\"{l}\", shape={shape}, boxed={}];\n", self.boxed[i]));
        }
        for &(a, b) in &self.edges {
            s.push_str(&format!("  n{a} -> n{b};\n"));
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Clone, Debug)]
pub struct IntervalReport {
    /// Members of the interval, sorted like an enumeration.
    pub interval: Vec<TorsionPairRecord>,
    /// Admissible torsion pairs of the heart, sorted the same way.
    pub heart: Vec<TorsionPairRecord>,
    /// `(interval index, heart index)` pairs of the bijection.
    pub bijection: Vec<(usize, usize)>,
    pub interval_hasse: HasseGraph,
    pub heart_hasse: HasseGraph,
    pub checks: Vec<Check>,
}

impl IntervalReport {
    pub fn s_counts(&self) -> (usize, usize) {
        (
            self.interval.iter().filter(|r| r.is_s_torsion).count(),
            self.heart.iter().filter(|r| r.is_s_torsion).count(),
        )
    }
}

/// Largest `|U2 \ U1|` for the brute-force completeness scan.
pub const BRUTE_FORCE_CAP: usize = 24;

/// Enumerates the heart, maps it through Ψ, and checks the bijection against
/// a direct enumeration of the interval. Any failed check is an error.
pub fn enumerate_interval(ctx: &Context, spec: &IntervalSpec, s_only: bool) -> Result<IntervalReport> {
    let hctx = ctx.restrict(spec.heart.atoms)?;
    let all_heart = enumerate_torsion_pairs(&hctx, false)?;
    let mut checks = Vec::new();
    let heart_pairs: Vec<TorsionPairRecord> =
        all_heart.iter().filter(|r| admissibility_violation(ctx, spec, r.u(), r.v()).is_none()).cloned().collect();
    if spec.t1.is_s_torsion && spec.t2.is_s_torsion {
        let removed = all_heart.len() - heart_pairs.len();
        checks.push(Check::new(
            "filter-removes-nothing-between-s-torsion-endpoints",
            (removed > 0).then(|| format!("{removed} heart pairs removed")),
        ));
    }

    let mut images = Vec::with_capacity(heart_pairs.len());
    for tf in &heart_pairs {
        images.push(psi(ctx, spec, tf)?);
    }
    let mut chain_failure = None;
    for (tf, t) in heart_pairs.iter().zip(&images) {
        if !rel_preceq(ctx, &spec.t1, t)? || !rel_preceq(ctx, t, &spec.t2)? {
            chain_failure.get_or_insert_with(|| format!("image of T = {:?} is outside the interval", ctx.labels(tf.u())));
        }
    }
    checks.push(Check::new("psi-lands-in-interval", chain_failure));

    let mut roundtrip = None;
    for (tf, t) in heart_pairs.iter().zip(&images) {
        let back = phi(ctx, spec, t)?;
        if !back.same_pair(tf) {
            roundtrip.get_or_insert_with(|| format!("phi(psi(T)) != T for T = {:?}", ctx.labels(tf.u())));
        }
    }
    checks.push(Check::new("phi-after-psi-is-identity", roundtrip));

    // Direct enumeration of {t : t1 ⪯ t ⪯ t2}.
    let between = spec.t2.u().minus(spec.t1.u());
    let mut direct = Vec::new();
    if spec.t1.u().is_subset(spec.t2.u()) && between.len() <= BRUTE_FORCE_CAP {
        for (u, v) in closed_candidates(ctx, spec.t1.u(), between) {
            let rec = is_torsion_pair(ctx, ctx.subcat(u)?, ctx.subcat(v)?)?;
            if rec.is_torsion && rel_preceq(ctx, &spec.t1, &rec)? && rel_preceq(ctx, &rec, &spec.t2)? {
                direct.push(rec);
            }
        }
        let imgs: BTreeSet<(AtomSet, AtomSet)> = images.iter().map(|r| (r.u(), r.v())).collect();
        let dirs: BTreeSet<(AtomSet, AtomSet)> = direct.iter().map(|r| (r.u(), r.v())).collect();
        let diff = imgs.symmetric_difference(&dirs).next().map(|(u, _)| format!("torsion class {:?}", ctx.labels(*u)));
        checks.push(Check::new("interval-equals-psi-image", diff));
        let mut inverse = None;
        for t in &direct {
            let tf = phi(ctx, spec, t)?;
            let again = psi(ctx, spec, &tf)?;
            if !again.same_pair(t) {
                inverse.get_or_insert_with(|| format!("psi(phi(t)) != t for U = {:?}", ctx.labels(t.u())));
            }
        }
        checks.push(Check::new("psi-after-phi-is-identity", inverse));
    } else if !spec.t1.u().is_subset(spec.t2.u()) {
        checks.push(Check::new("interval-equals-psi-image", Some("U1 is not contained in U2".into())));
    }

    let n = heart_pairs.len();
    let mut order = None;
    let mut heart_pres = None;
    for i in 0..n {
        for j in 0..n {
            let a = heart_pairs[i].u().is_subset(heart_pairs[j].u());
            let b = images[i].u().is_subset(images[j].u());
            if a != b {
                order.get_or_insert_with(|| format!("pairs {i} and {j}"));
            }
            if i != j && rel_preceq(ctx, &images[i], &images[j])? {
                // H of [a_i, a_j] against H of [Φ a_i, Φ a_j] inside the heart.
                let big = images[j].u().intersect(images[i].v());
                let small = heart_pairs[j].u().intersect(heart_pairs[i].v());
                if big != small {
                    heart_pres.get_or_insert_with(|| format!("pairs {i} and {j}"));
                }
            }
        }
    }
    checks.push(Check::new("order-preserved", order));
    checks.push(Check::new("interval-hearts-preserved", heart_pres));
    let s_mismatch = (0..n).find(|&i| heart_pairs[i].is_s_torsion != images[i].is_s_torsion);
    checks.push(Check::new("s-torsion-preserved", s_mismatch.map(|i| format!("pair {i}"))));

    // Informational: does ⪯ agree with strict inclusion on distinct members?
    let mut disagree = None;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let incl = images[i].u().is_subset(images[j].u());
                if incl != rel_preceq(ctx, &images[i], &images[j])? {
                    disagree.get_or_insert_with(|| format!("pairs {i} and {j}"));
                }
            }
        }
    }
    let info = Check {
        name: "preceq-vs-inclusion".into(),
        pass: true,
        witness: Some(match disagree {
            Some(w) => format!("informational: differs at {w}"),
            None => "informational: agrees".into(),
        }),
    };

    let keep: Vec<usize> = (0..n).filter(|&i| !s_only || images[i].is_s_torsion).collect();
    let mut heart_order = keep.clone();
    heart_order.sort_by_key(|&i| (std::cmp::Reverse(heart_pairs[i].u().len()), heart_pairs[i].u().iter().collect::<Vec<_>>()));
    let mut int_order = keep.clone();
    int_order.sort_by_key(|&i| (std::cmp::Reverse(images[i].u().len()), images[i].u().iter().collect::<Vec<_>>()));
    let heart_list: Vec<TorsionPairRecord> = heart_order.iter().map(|&i| heart_pairs[i].clone()).collect();
    let int_list: Vec<TorsionPairRecord> = int_order.iter().map(|&i| images[i].clone()).collect();
    let bijection: Vec<(usize, usize)> = int_order
        .iter()
        .enumerate()
        .map(|(a, &i)| (a, heart_order.iter().position(|&k| k == i).unwrap()))
        .collect();
    let graph = |list: &[TorsionPairRecord]| {
        let sets: Vec<AtomSet> = list.iter().map(|r| r.u()).collect();
        HasseGraph::from_sets(
            &sets,
            list.iter().map(|r| ctx.labels(r.u()).join(", ")).collect(),
            list.iter().map(|r| r.is_s_torsion).collect(),
        )
    };
    let interval_hasse = graph(&int_list);
    let heart_hasse = graph(&heart_list);
    let mut map = vec![0; bijection.len()];
    for &(a, b) in &bijection {
        map[a] = b;
    }
    checks.push(Check::new(
        "hasse-graphs-isomorphic-via-bijection",
        (!interval_hasse.is_isomorphism(&heart_hasse, &map)).then(|| "edge mismatch".to_string()),
    ));

    if let Some(bad) = checks.iter().find(|c| !c.pass) {
        return Err(Error::verification(bad.name.clone(), bad.witness.clone().unwrap_or_default()));
    }
    checks.push(info);
    Ok(IntervalReport { interval: int_list, heart: heart_list, bijection, interval_hasse, heart_hasse, checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn module(spec: &str) -> ModuleCategory {
        ModuleCategory::new(PathAlgebra::new(Quiver::parse(spec).unwrap(), 2).unwrap())
    }

    fn set(c: &ModuleCategory, ivs: &[(usize, usize)]) -> AtomSet {
        c.set_of(&ivs.iter().map(|&(a, b)| Interval::new(a, b)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn atomset_basics() {
        let s = AtomSet::from_indices([1, 5, 7]);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 5, 7]);
        assert_eq!(s.select(0b101), AtomSet::from_indices([1, 7]));
        assert!(AtomSet::singleton(5).is_subset(s));
        assert_eq!(AtomSet::full(128).len(), 128);
    }

    #[test]
    fn a2_pairs() {
        let c = module("1>2");
        let ctx = Context::full(&c);
        let r = is_torsion_pair(&ctx, ctx.subcat(set(&c, &[(2, 2)])).unwrap(), ctx.subcat(set(&c, &[(1, 1)])).unwrap()).unwrap();
        assert!(r.is_torsion && r.is_s_torsion);
        let r = is_torsion_pair(
            &ctx,
            ctx.subcat(set(&c, &[(1, 1)])).unwrap(),
            ctx.subcat(set(&c, &[(1, 2), (2, 2)])).unwrap(),
        )
        .unwrap();
        assert!(r.is_torsion && !r.is_s_torsion);
        let all = enumerate_torsion_pairs(&ctx, false).unwrap();
        assert_eq!(all.len(), 5);
        assert_eq!(all.iter().filter(|r| r.is_s_torsion).count(), 3);
    }

    #[test]
    fn small_counts() {
        let c = module("1");
        assert_eq!(enumerate_torsion_pairs(&Context::full(&c), false).unwrap().len(), 2);
        let c = module("1>2>3");
        assert_eq!(enumerate_torsion_pairs(&Context::full(&c), false).unwrap().len(), 14);
    }

    #[test]
    fn cross_context_is_an_error() {
        let (a, b) = (module("1>2"), module("1>2"));
        let (ca, cb) = (Context::full(&a), Context::full(&b));
        let s = cb.subcat(AtomSet::singleton(0)).unwrap();
        assert!(matches!(is_torsion_pair(&ca, s, s), Err(Error::Contract(_))));
    }

    #[test]
    fn preceq_is_not_reflexive_at_extremes() {
        let c = module("1>2");
        let ctx = Context::full(&c);
        let all = AtomSet::full(3);
        let top = is_torsion_pair(&ctx, ctx.subcat(all).unwrap(), ctx.subcat(AtomSet::EMPTY).unwrap()).unwrap();
        let bottom = is_torsion_pair(&ctx, ctx.subcat(AtomSet::EMPTY).unwrap(), ctx.subcat(all).unwrap()).unwrap();
        assert!(!rel_preceq(&ctx, &top, &bottom).unwrap());
        assert!(rel_preceq(&ctx, &bottom, &top).unwrap());
    }

    #[test]
    fn oracle_examples() {
        let c = module("1>2");
        let x = c.algebra().index_of(Interval::new(1, 2)).unwrap();
        assert!(c.star_oracle(set(&c, &[(2, 2)]), set(&c, &[(1, 1)]), x).unwrap());
        assert!(!c.star_oracle(set(&c, &[(1, 1)]), set(&c, &[(2, 2)]), x).unwrap());
        assert!(c.star_oracle(set(&c, &[(1, 2)]), AtomSet::EMPTY, x).unwrap());
    }

    #[test]
    fn hasse_of_a_chain_and_a_diamond() {
        let sets = [AtomSet(0b11), AtomSet(0b01), AtomSet(0b10), AtomSet(0)];
        let g = HasseGraph::from_sets(&sets, vec!["".into(); 4], vec![false; 4]);
        assert_eq!(g.edge_set(), [(0, 1), (0, 2), (1, 3), (2, 3)].into());
        assert_eq!(g.sources(), vec![0]);
        assert_eq!(g.sinks(), vec![3]);
        assert!(g.isomorphism(&g).is_some());
        let chain = HasseGraph::from_sets(&[AtomSet(0b11), AtomSet(0b01), AtomSet(0)], vec!["".into(); 3], vec![false; 3]);
        assert!(g.isomorphism(&chain).is_none());
    }

    #[test]
    fn degenerate_interval() {
        let c = module("1>2");
        let ctx = Context::full(&c);
        let s = enumerate_torsion_pairs(&ctx, true).unwrap();
        let t = &s[1];
        let spec = heart_of_interval(&ctx, t, t).unwrap();
        assert!(spec.heart.atoms.is_empty());
        let rep = enumerate_interval(&ctx, &spec, false).unwrap();
        assert_eq!(rep.interval.len(), 1);
        assert!(rep.interval[0].same_pair(t));
    }
}
