//! Extended hearts of a t-structure on a derived window, the correspondence
//! between t-structures between `U[m]` and `U` and s-torsion pairs of the
//! m-extended heart, tilting on extended hearts, and extension of
//! t-structures from a subcategory.
//!
//! A t-structure is stored in s-torsion form `(X, Y)`: `X` is the aisle
//! `U≤0` and `Y = U≥1`, so the coaisle is `Y[1]`. Above the window every atom
//! is in `X`, below it every atom is in `Y`.

use crate::dercat::{DAtom, DerivedWindow, WindowPair};
use crate::error::{Error, Result};
use crate::torspairs::{
    enumerate_torsion_pairs, is_torsion_pair, AtomSet, Check, Context, HasseGraph, TorsionPairRecord,
};

/// An m-extended heart inside a window, with the t-structure it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtendedHeart {
    pub m: i32,
    pub atoms: AtomSet,
    pub source: Option<(AtomSet, AtomSet)>,
}

pub struct Hrs<'a> {
    dw: &'a DerivedWindow,
    ctx: Context<'a>,
    x: AtomSet,
    y: AtomSet,
    x_m: AtomSet,
    m: i32,
    heart: AtomSet,
}

impl<'a> Hrs<'a> {
    /// The standard t-structure: aisle = shifts ≥ 0.
    pub fn standard(dw: &'a DerivedWindow, m: i32) -> Result<Self> {
        let x = dw.filter(|a| a.shift >= 0);
        let y = dw.filter(|a| a.shift < 0);
        Self::new(dw, &dw.to_pair(x, y), m)
    }

    pub fn new(dw: &'a DerivedWindow, base: &WindowPair, m: i32) -> Result<Self> {
        if m < 1 {
            return Err(Error::Contract(format!("extension width must be positive, got {m}")));
        }
        let rep = crate::dercat::is_torsion_pair_d(dw, base, true, true)?;
        if rep.is_t_structure != Some(true) {
            return Err(Error::Rejected(format!(
                "base pair does not encode a t-structure: {}",
                rep.failure.unwrap_or_else(|| "aisle not closed under [1]".into())
            )));
        }
        let (x, y) = dw.pair_sets(base);
        let ctx = Context::full(dw);
        let mut h = Hrs { dw, ctx, x, y, x_m: AtomSet::EMPTY, m, heart: AtomSet::EMPTY };
        h.x_m = dw.filter(|a| h.in_x(a.shifted(-m)));
        h.heart = h.heart_of(x, y, m);
        let w = dw.window();
        let modules = dw.category().algebra().all_indecomposables().to_vec();
        for s in w.hi + 1..=w.hi + m {
            for &md in &modules {
                let a = DAtom::new(md, s);
                if h.in_x(a) && h.in_y(a.shifted(-m)) {
                    let need_hi = s + m + 1;
                    return Err(Error::WindowTooNarrow { lo: w.lo, hi: w.hi, need_lo: w.lo, need_hi });
                }
            }
        }
        h.require_margin(h.heart, m + 1)?;
        // The m-extended heart is H[m-1] * ... * H for the ordinary heart H.
        let h1 = h.heart_of(x, y, 1);
        let mut chain = dw.shift_set(h1, m - 1);
        for k in (0..m - 1).rev() {
            chain = h.ctx.star(chain, dw.shift_set(h1, k));
        }
        if chain != h.heart {
            return Err(Error::verification(
                "extended-heart-is-iterated-extension",
                format!("{:?} vs {:?}", h.labels(chain), h.labels(h.heart)),
            ));
        }
        Ok(h)
    }

    pub fn window(&self) -> &DerivedWindow {
        self.dw
    }

    pub fn context(&self) -> &Context<'a> {
        &self.ctx
    }

    pub fn m(&self) -> i32 {
        self.m
    }

    pub fn aisle(&self) -> AtomSet {
        self.x
    }

    pub fn free(&self) -> AtomSet {
        self.y
    }

    /// The aisle of `U[m]`, i.e. `U≤-m`.
    pub fn shifted_aisle(&self) -> AtomSet {
        self.x_m
    }

    pub fn heart(&self) -> AtomSet {
        self.heart
    }

    pub fn heart_context(&self) -> Context<'a> {
        self.ctx.restrict(self.heart).expect("heart lies in the window")
    }

    pub fn labels(&self, s: AtomSet) -> Vec<String> {
        self.ctx.labels(s)
    }

    fn member(&self, s: AtomSet, a: DAtom, above: bool) -> bool {
        let w = self.dw.window();
        if a.shift > w.hi {
            above
        } else if a.shift < w.lo {
            !above
        } else {
            s.contains(self.dw.index_of(a).unwrap())
        }
    }

    fn in_x(&self, a: DAtom) -> bool {
        self.member(self.x, a, true)
    }

    fn in_y(&self, a: DAtom) -> bool {
        self.member(self.y, a, false)
    }

    /// `{a : a ∈ X', a[-k] ∈ Y'}`, the k-extended heart of `(X', Y')`.
    pub fn heart_of(&self, xa: AtomSet, ya: AtomSet, k: i32) -> AtomSet {
        self.dw.filter(|a| self.member(xa, a, true) && self.member(ya, a.shifted(-k), false))
    }

    fn shift(&self, s: AtomSet, k: i32) -> Result<AtomSet> {
        let out = self.dw.shift_set(s, k);
        if out.len() != s.len() {
            let w = self.dw.window();
            return Err(Error::WindowTooNarrow { lo: w.lo, hi: w.hi, need_lo: w.lo.min(w.lo - k), need_hi: w.hi.max(w.hi + k) });
        }
        Ok(out)
    }

    /// Errors unless every atom of `s` sits at least `margin` rows inside.
    fn require_margin(&self, s: AtomSet, margin: i32) -> Result<()> {
        let shifts: Vec<i32> = s.iter().map(|i| self.dw.atom(i).shift).collect();
        let (Some(&lo), Some(&hi)) = (shifts.iter().min(), shifts.iter().max()) else {
            return Ok(());
        };
        let w = self.dw.window();
        if lo - margin < w.lo || hi + margin > w.hi {
            return Err(Error::WindowTooNarrow { lo: w.lo, hi: w.hi, need_lo: lo - margin, need_hi: hi + margin });
        }
        Ok(())
    }

    /// Whether `(xa, ya)` is an s-torsion pair of the window, i.e. encodes a
    /// t-structure.
    pub fn is_t_structure(&self, xa: AtomSet, ya: AtomSet) -> Result<bool> {
        let rep = crate::dercat::is_torsion_pair_d(self.dw, &self.dw.to_pair(xa, ya), true, true)?;
        Ok(rep.is_t_structure == Some(true))
    }

    /// s-torsion pairs of the m-extended heart.
    pub fn stors(&self) -> Result<Vec<TorsionPairRecord>> {
        enumerate_torsion_pairs(&self.heart_context(), true)
    }

    /// t-structures with `X[m] ⊆ X' ⊆ X`, found by brute force.
    pub fn tstr_interval(&self) -> Result<Vec<(AtomSet, AtomSet)>> {
        let free = self.x.minus(self.x_m);
        if free.len() > crate::torspairs::ENUMERATION_CAP {
            return Err(Error::Refused(format!("{} candidate atoms exceed the cap", free.len())));
        }
        let mut out = Vec::new();
        for mask in 0..(1u64 << free.len()) {
            let xa = self.x_m.union(free.select(mask));
            let ya = self.ctx.right_perp(xa);
            if self.ctx.left_perp(ya) != xa || self.dw.check_buffer(xa, ya).is_err() {
                continue;
            }
            if self.is_t_structure(xa, ya)? {
                out.push((xa, ya));
            }
        }
        out.sort_by_key(|(xa, _)| (std::cmp::Reverse(xa.len()), xa.iter().collect::<Vec<_>>()));
        Ok(out)
    }

    fn check_domain(&self, xa: AtomSet) -> Result<()> {
        if let Some(i) = self.x_m.minus(xa).iter().next() {
            return Err(Error::Rejected(format!("U≤-m ⊆ V≤0 fails at {}", self.dw.atom(i))));
        }
        if let Some(i) = xa.minus(self.x).iter().next() {
            return Err(Error::Rejected(format!("V≤0 ⊆ U≤0 fails at {}", self.dw.atom(i))));
        }
        Ok(())
    }

    /// `(V≤0 ∩ U≥1-m, V≥1 ∩ U≤0)` as an s-torsion pair of the extended heart.
    pub fn heartward(&self, xa: AtomSet, ya: AtomSet) -> Result<TorsionPairRecord> {
        self.check_domain(xa)?;
        let t = xa.intersect(self.dw.filter(|a| self.in_y(a.shifted(-self.m))));
        let f = ya.intersect(self.x);
        if !f.is_subset(self.heart) {
            return Err(Error::verification("heartward-lands-in-heart", format!("{:?}", self.labels(f.minus(self.heart)))));
        }
        let hctx = self.heart_context();
        let rec = is_torsion_pair(&hctx, hctx.subcat(t)?, hctx.subcat(f)?)?;
        if !rec.is_s_torsion {
            return Err(Error::verification("heartward-is-s-torsion", rec.failure.clone().unwrap_or_default()));
        }
        Ok(rec)
    }

    fn check_heart_pair(&self, rec: &TorsionPairRecord) -> Result<()> {
        if !rec.u().union(rec.v()).is_subset(self.heart) {
            return Err(Error::Rejected("pair is not inside the extended heart".into()));
        }
        let hctx = self.heart_context();
        let again = is_torsion_pair(&hctx, hctx.subcat(rec.u())?, hctx.subcat(rec.v())?)?;
        if !again.is_s_torsion {
            return Err(Error::Rejected(format!(
                "not an s-torsion pair of the extended heart: {}",
                again.failure.unwrap_or_default()
            )));
        }
        Ok(())
    }

    /// `(U≤-m * T, F * U≥1)`, verified as a t-structure.
    pub fn tstructureward(&self, rec: &TorsionPairRecord) -> Result<(AtomSet, AtomSet)> {
        self.check_heart_pair(rec)?;
        let xa = self.ctx.star(self.x_m, rec.u());
        let ya = self.ctx.star(rec.v(), self.y);
        if !self.is_t_structure(xa, ya)? {
            return Err(Error::verification("tstructureward-is-t-structure", format!("aisle {:?}", self.labels(xa))));
        }
        Ok((xa, ya))
    }

    /// `F[m] * T`, certified against the extended heart of the matching
    /// t-structure.
    pub fn tilt(&self, rec: &TorsionPairRecord) -> Result<ExtendedHeart> {
        self.check_heart_pair(rec)?;
        let e = self.ctx.star(self.shift(rec.v(), self.m)?, rec.u());
        let (xa, ya) = self.tstructureward(rec)?;
        let certified = self.heart_of(xa, ya, self.m);
        if e != certified {
            return Err(Error::verification(
                "tilt-matches-extended-heart",
                format!("{:?} vs {:?}", self.labels(e), self.labels(certified)),
            ));
        }
        Ok(ExtendedHeart { m: self.m, atoms: e, source: Some((xa, ya)) })
    }

    /// `(H ∩ E, H ∩ E[-m])` for an extended heart `E ≤ H`.
    pub fn untilt(&self, e: &ExtendedHeart) -> Result<TorsionPairRecord> {
        if e.m != self.m {
            return Err(Error::Contract(format!("width {} differs from {}", e.m, self.m)));
        }
        let h = ExtendedHeart { m: self.m, atoms: self.heart, source: None };
        if !self.leq(e, &h)? {
            return Err(Error::Rejected("E ≤ H fails for the given extended heart".into()));
        }
        let t = self.heart.intersect(e.atoms);
        let f = self.heart.intersect(self.shift(e.atoms, -self.m)?);
        let hctx = self.heart_context();
        let rec = is_torsion_pair(&hctx, hctx.subcat(t)?, hctx.subcat(f)?)?;
        if !rec.is_s_torsion {
            return Err(Error::verification("untilt-is-s-torsion", rec.failure.clone().unwrap_or_default()));
        }
        Ok(rec)
    }

    /// `E1 ≤ E2`: `E1 ⊆ E2[m] * E2` and `E2 ⊆ E1 * E1[-m]`.
    pub fn leq(&self, e1: &ExtendedHeart, e2: &ExtendedHeart) -> Result<bool> {
        if e1.m != e2.m {
            return Err(Error::Contract(format!("widths {} and {} differ", e1.m, e2.m)));
        }
        let m = e1.m;
        let cat = self.ctx.category();
        let (e2m, e1m) = (self.shift(e2.atoms, m)?, self.shift(e1.atoms, -m)?);
        Ok(e1.atoms.iter().all(|x| cat.factor(x, e2m, e2.atoms).is_some())
            && e2.atoms.iter().all(|x| cat.factor(x, e1.atoms, e1m).is_some()))
    }

    /// The four identities satisfied by an m-extended heart.
    pub fn lemma43_check(&self, e: &ExtendedHeart) -> Result<Vec<Check>> {
        let m = e.m;
        self.require_margin(e.atoms, 2 * m + 1)?;
        let h = e.atoms;
        let sh = |k: i32| self.shift(h, k);
        let mut checks = Vec::new();
        for k in 0..=2 {
            let w = self.ctx.hom_witness(h, sh(-m - k)?);
            checks.push(Check::new(
                &format!("hom-vanishing-k{k}"),
                w.map(|(a, b)| format!("Hom({}, {}) != 0", self.dw.atom(a), self.dw.atom(b))),
            ));
        }
        let s = self.ctx.star3(sh(-1)?, sh(-m - 1)?, h);
        let w = self.ctx.hom_witness(sh(m)?, s);
        checks.push(Check::new(
            "hom-vanishing-against-triple-extension",
            w.map(|(a, b)| format!("Hom({}, {}) != 0", self.dw.atom(a), self.dw.atom(b))),
        ));
        let left = self.ctx.star(sh(m)?, h);
        let right = self.ctx.star(h, sh(-m)?);
        let i3 = left.intersect(right);
        checks.push(Check::new(
            "two-sided-intersection-is-heart",
            (i3 != h).then(|| format!("{:?}", self.labels(i3))),
        ));
        let l4 = self.ctx.star3(sh(m)?, h, sh(-m)?);
        let r4 = self.ctx.star3(h, sh(-m)?, sh(-2 * m)?);
        let i4 = l4.intersect(r4);
        checks.push(Check::new(
            "three-fold-intersection",
            (i4 != right).then(|| format!("{:?} vs {:?}", self.labels(i4), self.labels(right))),
        ));
        Ok(checks)
    }
}

/// Everything computed for the width-m interval of a t-structure.
#[derive(Clone, Debug)]
pub struct HrsEnumeration {
    pub stors: Vec<TorsionPairRecord>,
    pub hearts: Vec<ExtendedHeart>,
    pub tstructures: Vec<(AtomSet, AtomSet)>,
    pub stors_hasse: HasseGraph,
    pub hearts_hasse: HasseGraph,
    pub tstr_hasse: HasseGraph,
    pub checks: Vec<Check>,
}

/// Enumerates s-torsion pairs of the extended heart, tilts each, matches
/// them with brute-forced t-structures and checks every round trip. Any
/// failed check is an error.
pub fn enumerate_hrs(h: &Hrs) -> Result<HrsEnumeration> {
    let stors = h.stors()?;
    let mut hearts = Vec::new();
    let mut tstructures = Vec::new();
    for rec in &stors {
        let e = h.tilt(rec)?;
        tstructures.push(e.source.unwrap());
        hearts.push(e);
    }
    let mut checks = Vec::new();
    let distinct: std::collections::BTreeSet<AtomSet> = hearts.iter().map(|e| e.atoms).collect();
    checks.push(Check::new("hearts-distinct", (distinct.len() != hearts.len()).then(|| "repeated heart".into())));

    let brute = h.tstr_interval()?;
    let mine: std::collections::BTreeSet<(AtomSet, AtomSet)> = tstructures.iter().copied().collect();
    let theirs: std::collections::BTreeSet<(AtomSet, AtomSet)> = brute.iter().copied().collect();
    checks.push(Check::new(
        "tstructures-match-brute-force",
        (mine != theirs).then(|| format!("{} via tilting, {} by brute force", mine.len(), theirs.len())),
    ));

    let mut heartward = None;
    let mut untilt = None;
    for (i, rec) in stors.iter().enumerate() {
        let (xa, ya) = tstructures[i];
        if !h.heartward(xa, ya)?.same_pair(rec) {
            heartward.get_or_insert(format!("pair {i}"));
        }
        if !h.untilt(&hearts[i])?.same_pair(rec) {
            untilt.get_or_insert(format!("pair {i}"));
        }
    }
    checks.push(Check::new("heartward-after-tstructureward", heartward));
    checks.push(Check::new("untilt-after-tilt", untilt));
    let mut back = None;
    for (xa, ya) in &brute {
        let rec = h.heartward(*xa, *ya)?;
        if h.tstructureward(&rec)? != (*xa, *ya) {
            back.get_or_insert(format!("aisle {:?}", h.labels(*xa)));
        }
        let e = ExtendedHeart { m: h.m(), atoms: h.heart_of(*xa, *ya, h.m()), source: None };
        if h.tilt(&h.untilt(&e)?)?.atoms != e.atoms {
            back.get_or_insert(format!("heart {:?}", h.labels(e.atoms)));
        }
    }
    checks.push(Check::new("tstructureward-after-heartward", back));

    let n = stors.len();
    let mut leq = vec![vec![false; n]; n];
    for i in 0..n {
        for j in 0..n {
            leq[i][j] = h.leq(&hearts[i], &hearts[j])?;
        }
    }
    let mut po = None;
    for i in 0..n {
        if !leq[i][i] {
            po.get_or_insert(format!("not reflexive at {i}"));
        }
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                po.get_or_insert(format!("not antisymmetric at {i}, {j}"));
            }
            for k in 0..n {
                if leq[i][j] && leq[j][k] && !leq[i][k] {
                    po.get_or_insert(format!("not transitive at {i}, {j}, {k}"));
                }
            }
        }
    }
    checks.push(Check::new("heart-order-is-partial-order", po));
    let mut mono = None;
    for i in 0..n {
        for j in 0..n {
            let a = stors[i].u().is_subset(stors[j].u());
            let b = tstructures[i].0.is_subset(tstructures[j].0);
            let c = leq[i][j];
            if a != b || a != c {
                mono.get_or_insert(format!("pairs {i}, {j}"));
            }
        }
    }
    checks.push(Check::new("bijections-preserve-order", mono));
    let hm = ExtendedHeart { m: h.m(), atoms: h.heart(), source: None };
    let mut in_range = None;
    for (i, e) in hearts.iter().enumerate() {
        if !h.leq(e, &hm)? {
            in_range.get_or_insert(format!("heart {i}"));
        }
    }
    checks.push(Check::new("tilts-lie-below-heart", in_range));

    let labels = |sets: &[AtomSet]| sets.iter().map(|s| h.labels(*s).join(", ")).collect::<Vec<_>>();
    let boxed = vec![true; n];
    let tsets: Vec<AtomSet> = stors.iter().map(|r| r.u()).collect();
    let stors_hasse = HasseGraph::from_sets(&tsets, labels(&tsets), boxed.clone());
    let hsets: Vec<AtomSet> = hearts.iter().map(|e| e.atoms).collect();
    let hearts_hasse = HasseGraph::from_order(labels(&hsets), boxed.clone(), |i, j| i != j && leq[i][j]);
    let asets: Vec<AtomSet> = tstructures.iter().map(|t| t.0).collect();
    let tstr_hasse = HasseGraph::from_sets(&asets, labels(&asets), boxed);
    let id: Vec<usize> = (0..n).collect();
    checks.push(Check::new(
        "hasse-graphs-isomorphic",
        (!stors_hasse.is_isomorphism(&hearts_hasse, &id) || !stors_hasse.is_isomorphism(&tstr_hasse, &id))
            .then(|| "edge mismatch".into()),
    ));
    if let Some(bad) = checks.iter().find(|c| !c.pass) {
        return Err(Error::verification(bad.name.clone(), bad.witness.clone().unwrap_or_default()));
    }
    Ok(HrsEnumeration { stors, hearts, tstructures, stors_hasse, hearts_hasse, tstr_hasse, checks })
}

/// Restriction and extension of t-structures between the window and a
/// subcategory `S` given by a set of atoms.
pub struct Extension<'h, 'a> {
    hrs: &'h Hrs<'a>,
    s: AtomSet,
    sctx: Context<'a>,
}

impl<'h, 'a> Extension<'h, 'a> {
    pub fn new(hrs: &'h Hrs<'a>, s: AtomSet) -> Result<Self> {
        if let Some(i) = hrs.heart.minus(s).iter().next() {
            return Err(Error::Rejected(format!("the heart is not contained in S: {} is missing", hrs.dw.atom(i))));
        }
        let sctx = hrs.ctx.restrict(s)?;
        let rec = is_torsion_pair(&sctx, sctx.subcat(s.intersect(hrs.x))?, sctx.subcat(s.intersect(hrs.y))?)?;
        if !rec.is_s_torsion {
            return Err(Error::Rejected(format!(
                "restricted t-structure is not a t-structure on S: {}",
                rec.failure.unwrap_or_default()
            )));
        }
        Ok(Extension { hrs, s, sctx })
    }

    pub fn is_whole_window(&self) -> bool {
        self.s == AtomSet::full(self.hrs.dw.atoms().len())
    }

    pub fn subcategory(&self) -> AtomSet {
        self.s
    }

    fn check_s_domain(&self, ya: AtomSet) -> Result<()> {
        let h = self.hrs;
        if let Some(i) = self.s.intersect(h.x_m).minus(ya).iter().next() {
            return Err(Error::Rejected(format!("S ∩ U≤-m ⊆ Y≤0 fails at {}", h.dw.atom(i))));
        }
        if let Some(i) = ya.minus(self.s.intersect(h.x)).iter().next() {
            return Err(Error::Rejected(format!("Y≤0 ⊆ S ∩ U≤0 fails at {}", h.dw.atom(i))));
        }
        Ok(())
    }

    fn is_s_t_structure(&self, ya: AtomSet, yf: AtomSet) -> Result<bool> {
        Ok(is_torsion_pair(&self.sctx, self.sctx.subcat(ya)?, self.sctx.subcat(yf)?)?.is_s_torsion)
    }

    /// t-structures on S between `U_S[m]` and `U_S`.
    pub fn tstr_on_s(&self) -> Result<Vec<(AtomSet, AtomSet)>> {
        let h = self.hrs;
        let base = self.s.intersect(h.x_m);
        let free = self.s.intersect(h.x).minus(base);
        let mut out = Vec::new();
        for mask in 0..(1u64 << free.len()) {
            let ya = base.union(free.select(mask));
            let yf = self.sctx.right_perp(ya);
            if self.sctx.left_perp(yf) == ya && self.is_s_t_structure(ya, yf)? {
                out.push((ya, yf));
            }
        }
        out.sort_by_key(|(xa, _)| (std::cmp::Reverse(xa.len()), xa.iter().collect::<Vec<_>>()));
        Ok(out)
    }

    /// `(S ∩ X≤0, S ∩ X≥1)`.
    pub fn lambda(&self, xa: AtomSet, ya: AtomSet) -> Result<(AtomSet, AtomSet)> {
        self.hrs.check_domain(xa)?;
        let out = (self.s.intersect(xa), self.s.intersect(ya));
        if !self.is_s_t_structure(out.0, out.1)? {
            return Err(Error::verification("restriction-is-t-structure", format!("{:?}", self.hrs.labels(out.0))));
        }
        Ok(out)
    }

    /// `(U≤-m * Y≤0, Y≥1 * U≥1)`.
    pub fn mu(&self, ya: AtomSet, yf: AtomSet) -> Result<(AtomSet, AtomSet)> {
        self.check_s_domain(ya)?;
        let h = self.hrs;
        let out = (h.ctx.star(h.x_m, ya), h.ctx.star(yf, h.y));
        if !h.is_t_structure(out.0, out.1)? {
            return Err(Error::verification("extension-is-t-structure", format!("{:?}", h.labels(out.0))));
        }
        Ok(out)
    }

    /// The heartward map computed inside S.
    pub fn heartward_in_s(&self, ya: AtomSet, yf: AtomSet) -> Result<TorsionPairRecord> {
        self.check_s_domain(ya)?;
        let h = self.hrs;
        let t = ya.intersect(h.heart);
        let f = yf.intersect(h.x);
        let hctx = h.heart_context();
        let rec = is_torsion_pair(&hctx, hctx.subcat(t)?, hctx.subcat(f.intersect(h.heart))?)?;
        if !f.is_subset(h.heart) || !rec.is_s_torsion {
            return Err(Error::verification("heartward-in-s", format!("{:?}", h.labels(f))));
        }
        Ok(rec)
    }

    /// Round trips of λ and μ plus agreement of μ with the composite through
    /// the extended heart, over every t-structure on both sides.
    pub fn verify(&self) -> Result<Vec<Check>> {
        let h = self.hrs;
        let on_d = h.tstr_interval()?;
        let on_s = self.tstr_on_s()?;
        let mut lm = None;
        let mut ml = None;
        let mut composite = None;
        for &(xa, ya) in &on_d {
            let (a, b) = self.lambda(xa, ya)?;
            if self.mu(a, b)? != (xa, ya) {
                ml.get_or_insert(format!("aisle {:?}", h.labels(xa)));
            }
        }
        for &(ya, yf) in &on_s {
            let (a, b) = self.mu(ya, yf)?;
            if self.lambda(a, b)? != (ya, yf) {
                lm.get_or_insert(format!("aisle {:?}", h.labels(ya)));
            }
            let via = h.tstructureward(&self.heartward_in_s(ya, yf)?)?;
            if via != (a, b) {
                composite.get_or_insert(format!("aisle {:?}", h.labels(ya)));
            }
        }
        let mut checks = vec![
            Check::new(
                "same-count-on-both-sides",
                (on_d.len() != on_s.len()).then(|| format!("{} on the window, {} on S", on_d.len(), on_s.len())),
            ),
            Check::new("mu-after-lambda-is-identity", ml),
            Check::new("lambda-after-mu-is-identity", lm),
            Check::new("mu-equals-composite-through-heart", composite),
        ];
        if !self.is_whole_window() {
            checks.push(Check {
                name: "s-is-a-shift-band".into(),
                pass: true,
                witness: Some("S is a band of shifts inside the window, not a triangulated subcategory".into()),
            });
        }
        Ok(checks)
    }
}
