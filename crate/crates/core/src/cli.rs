//! The `tpcalc` command line. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests.

use std::collections::BTreeSet;
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Map, Value};

use crate::dercat::{DAtom, DerivedCategory, DerivedWindow, Window};
use crate::error::{Error, Result};
use crate::hrs::{enumerate_hrs, Extension, Hrs};
use crate::literal;
use crate::quiver::{Interval, PathAlgebra, Quiver};
use crate::torspairs::{
    enumerate_interval, enumerate_torsion_pairs, heart_of_interval, is_torsion_pair, AtomSet, Category, Check,
    Context, HasseGraph, ModuleCategory, TorsionPairRecord,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "tpcalc", version, about = "Torsion pairs, s-torsion pairs and t-structures for type-A quivers")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Characteristic of the ground field.
    #[arg(long, global = true, default_value_t = 2)]
    prime: u32,
    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Subcommand, Debug)]
enum Verb {
    /// List the indecomposable modules.
    Indecs {
        #[arg(long)]
        quiver: String,
    },
    /// Hom, Ext¹ and Euler form between indecomposables.
    Homtable {
        #[arg(long)]
        quiver: String,
    },
    /// Enumerate torsion pairs of the module category.
    Tors {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        s_only: bool,
    },
    /// Interval of module torsion pairs and its heart.
    Interval {
        #[arg(long)]
        quiver: String,
        /// `U = [...]; V = [...]`, JSON, or `@file`.
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
    },
    /// Interval of torsion pairs on a derived window.
    DerivedInterval {
        #[arg(long)]
        quiver: String,
        /// Window pair JSON or `@file`.
        #[arg(long)]
        t1: String,
        #[arg(long)]
        t2: String,
    },
    /// Extended hearts of the standard t-structure.
    Hrs {
        #[arg(long)]
        quiver: String,
        #[arg(long, default_value_t = 1)]
        m: i32,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i32>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i32>,
        #[command(subcommand)]
        action: HrsAction,
    },
    /// Restrict and extend t-structures through a shift band of the window.
    Extend {
        #[arg(long)]
        quiver: String,
        #[arg(long, default_value_t = 1)]
        m: i32,
        #[arg(long, allow_hyphen_values = true)]
        lo: Option<i32>,
        #[arg(long, allow_hyphen_values = true)]
        hi: Option<i32>,
        /// Lowest shift of S (defaults to the window).
        #[arg(long, allow_hyphen_values = true)]
        s_lo: Option<i32>,
        #[arg(long, allow_hyphen_values = true)]
        s_hi: Option<i32>,
    },
    /// Randomized cross-checks of the core computations.
    Check {
        #[arg(long)]
        quiver: String,
        #[arg(long, default_value_t = 40)]
        samples: usize,
    },
}

#[derive(Subcommand, Debug)]
enum HrsAction {
    /// All s-torsion pairs of the extended heart with their tilts and t-structures.
    Enumerate,
    /// Tilt at an s-torsion pair `U = [...]; V = [...]` of the extended heart.
    Tilt {
        #[arg(long)]
        pair: String,
    },
    /// Recover the s-torsion pair from an extended heart `{m, atoms}`.
    Untilt {
        #[arg(long)]
        heart: String,
    },
    /// Check the structural identities of the extended heart.
    Identities,
}

/// Exit code and the text for standard output and standard error.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Report {
    inputs: Value,
    results: Value,
    checks: Vec<Check>,
    graphs: Vec<(String, HasseGraph)>,
}

pub fn run<I, S>(argv: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    match dispatch(&cli).and_then(|r| render(&cli, r)) {
        Ok(stdout) => Outcome { code: 0, stdout, stderr: String::new() },
        Err(e) => {
            let code = if e.is_usage() { 2 } else { 1 };
            let body = json!({ "error": error_json(&e) });
            Outcome { code, stdout: String::new(), stderr: format!("{}\n", serde_json::to_string_pretty(&body).unwrap()) }
        }
    }
}

fn error_json(e: &Error) -> Value {
    let kind = match e {
        Error::Parse { .. } => "parse",
        Error::Contract(_) => "contract",
        Error::Rejected(_) => "rejected",
        Error::Verification { .. } => "verification",
        Error::Refused(_) => "refused",
        Error::WindowTooNarrow { .. } => "window-too-narrow",
        Error::Buffer(_) => "buffer",
        Error::Io(_) => "io",
        Error::Json(_) => "json",
    };
    let mut v = json!({ "kind": kind, "message": e.to_string() });
    if let Error::Verification { check, counterexample } = e {
        v["check"] = json!(check);
        v["counterexample"] = json!(counterexample);
    }
    v
}

fn render(cli: &Cli, r: Report) -> Result<String> {
    match cli.format {
        Format::Json => {
            let checks: Vec<Value> = r.checks.iter().map(check_json).collect();
            let v = json!({ "inputs": r.inputs, "results": r.results, "checks": checks });
            Ok(format!("{}\n", serde_json::to_string_pretty(&v).unwrap()))
        }
        Format::Dot => {
            if r.graphs.is_empty() {
                return Err(Error::parse("--format dot", "this verb produces no graph"));
            }
            Ok(r.graphs.iter().map(|(n, g)| g.to_dot(n)).collect::<Vec<_>>().join("\n"))
        }
        Format::Text => {
            let mut out = String::new();
            text_lines(&mut out, "", &r.results);
            for c in &r.checks {
                let tag = if c.pass { "PASS" } else { "FAIL" };
                match &c.witness {
                    Some(w) => out.push_str(&format!("{tag} {}: {w}\n", c.name)),
                    None => out.push_str(&format!("{tag} {}\n", c.name)),
                }
            }
            Ok(out)
        }
    }
}

fn check_json(c: &Check) -> Value {
    let mut v = json!({ "name": c.name, "pass": c.pass });
    if let Some(w) = &c.witness {
        v["witness"] = json!(w);
    }
    v
}

fn text_lines(out: &mut String, prefix: &str, v: &Value) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                if k == "dot" {
                    continue;
                }
                let p = if prefix.is_empty() { k.clone() } else { format!("{prefix}.{k}") };
                text_lines(out, &p, x);
            }
        }
        Value::Array(xs) if xs.iter().all(|x| !x.is_object() && !x.is_array()) => {
            let items: Vec<String> = xs.iter().map(scalar).collect();
            out.push_str(&format!("{prefix}: [{}]\n", items.join(", ")));
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                text_lines(out, &format!("{prefix}[{i}]"), x);
            }
        }
        x => out.push_str(&format!("{prefix}: {}\n", scalar(x))),
    }
}

fn scalar(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        x => x.to_string(),
    }
}

fn algebra(quiver: &str, p: u32) -> Result<PathAlgebra> {
    PathAlgebra::new(quiver.parse::<Quiver>()?, p)
}

fn dispatch(cli: &Cli) -> Result<Report> {
    let p = cli.prime;
    match &cli.verb {
        Verb::Indecs { quiver } => indecs(&algebra(quiver, p)?),
        Verb::Homtable { quiver } => homtable(&algebra(quiver, p)?),
        Verb::Tors { quiver, s_only } => tors(algebra(quiver, p)?, *s_only),
        Verb::Interval { quiver, t1, t2 } => module_interval(algebra(quiver, p)?, t1, t2),
        Verb::DerivedInterval { quiver, t1, t2 } => derived_interval(algebra(quiver, p)?, t1, t2),
        Verb::Hrs { quiver, m, lo, hi, action } => {
            let dw = hrs_window(algebra(quiver, p)?, *m, *lo, *hi)?;
            let h = Hrs::standard(&dw, *m)?;
            let mut r = match action {
                HrsAction::Enumerate => hrs_enumerate(&h)?,
                HrsAction::Tilt { pair } => hrs_tilt(&h, pair)?,
                HrsAction::Untilt { heart } => hrs_untilt(&h, heart)?,
                HrsAction::Identities => hrs_identities(&h)?,
            };
            r.inputs = json!({ "quiver": quiver, "prime": p, "m": m, "window": dw.window(), "action": r.inputs });
            Ok(r)
        }
        Verb::Extend { quiver, m, lo, hi, s_lo, s_hi } => {
            let dw = hrs_window(algebra(quiver, p)?, *m, *lo, *hi)?;
            extend(&dw, quiver, p, *m, *s_lo, *s_hi)
        }
        Verb::Check { quiver, samples } => check(&algebra(quiver, p)?, cli.seed, *samples),
    }
}

fn modules_json(alg: &PathAlgebra) -> Value {
    json!({ "quiver": alg.quiver().to_string(), "prime": alg.p() })
}

fn indecs(alg: &PathAlgebra) -> Result<Report> {
    let q = alg.quiver();
    let atoms: Vec<Value> = alg
        .all_indecomposables()
        .iter()
        .map(|&iv| {
            json!({
                "name": iv.to_string(),
                "alias": q.alias(iv),
                "dims": iv.dims(q.n()),
                "projective": q.is_projective(iv),
            })
        })
        .collect();
    let checks = vec![Check::new(
        "count-is-n(n+1)/2",
        (atoms.len() != q.n() * (q.n() + 1) / 2).then(|| format!("{} atoms", atoms.len())),
    )];
    Ok(Report { inputs: modules_json(alg), results: json!({ "count": atoms.len(), "atoms": atoms }), checks, graphs: vec![] })
}

fn homtable(alg: &PathAlgebra) -> Result<Report> {
    let ivs = alg.all_indecomposables();
    let n = alg.n();
    let mut hom = Vec::new();
    let mut ext = Vec::new();
    let mut euler = Vec::new();
    let mut bad = None;
    for &a in ivs {
        let (mut h, mut e, mut x) = (Vec::new(), Vec::new(), Vec::new());
        for &b in ivs {
            let (hv, ev) = (alg.hom(a, b), alg.ext1(a, b));
            let chi = alg.euler(&a.dims(n), &b.dims(n));
            if hv as i64 - ev as i64 != chi {
                bad.get_or_insert(format!("({a}, {b})"));
            }
            h.push(hv);
            e.push(ev);
            x.push(chi);
        }
        hom.push(h);
        ext.push(e);
        euler.push(x);
    }
    let names: Vec<String> = ivs.iter().map(|iv| iv.to_string()).collect();
    Ok(Report {
        inputs: modules_json(alg),
        results: json!({ "atoms": names, "hom": hom, "ext1": ext, "euler": euler }),
        checks: vec![Check::new("hom-minus-ext-equals-euler", bad)],
        graphs: vec![],
    })
}

fn pair_json(ctx: &Context, r: &TorsionPairRecord) -> Value {
    json!({ "U": ctx.labels(r.u()), "V": ctx.labels(r.v()), "s_torsion": r.is_s_torsion })
}

fn tors(alg: PathAlgebra, s_only: bool) -> Result<Report> {
    let inputs = json!({ "quiver": alg.quiver().to_string(), "prime": alg.p(), "s_only": s_only });
    let cat = ModuleCategory::new(alg);
    let ctx = Context::full(&cat);
    let pairs = enumerate_torsion_pairs(&ctx, s_only)?;
    let sets: Vec<AtomSet> = pairs.iter().map(|r| r.u()).collect();
    let labels = sets.iter().map(|s| ctx.labels(*s).join(", ")).collect();
    let g = HasseGraph::from_sets(&sets, labels, pairs.iter().map(|r| r.is_s_torsion).collect());
    let s_count = pairs.iter().filter(|r| r.is_s_torsion).count();
    let results = json!({
        "count": pairs.len(),
        "s_count": s_count,
        "pairs": pairs.iter().map(|r| pair_json(&ctx, r)).collect::<Vec<_>>(),
        "hasse": g.edges,
        "dot": g.to_dot("tors"),
    });
    Ok(Report { inputs, results, checks: vec![], graphs: vec![("tors".into(), g)] })
}

fn record(ctx: &Context, u: AtomSet, v: AtomSet, which: &str) -> Result<TorsionPairRecord> {
    let rec = is_torsion_pair(ctx, ctx.subcat(u)?, ctx.subcat(v)?)?;
    if !rec.is_torsion {
        return Err(Error::Rejected(format!("{which} is not a torsion pair: {}", rec.failure.unwrap_or_default())));
    }
    Ok(rec)
}

fn interval_report(ctx: &Context, t1: &TorsionPairRecord, t2: &TorsionPairRecord, inputs: Value) -> Result<Report> {
    let spec = heart_of_interval(ctx, t1, t2)?;
    let rep = enumerate_interval(ctx, &spec, false)?;
    let (s_int, s_heart) = rep.s_counts();
    let results = json!({
        "heart": ctx.labels(spec.heart.atoms),
        "interval": rep.interval.iter().map(|r| pair_json(ctx, r)).collect::<Vec<_>>(),
        "heart_pairs": rep.heart.iter().map(|r| pair_json(ctx, r)).collect::<Vec<_>>(),
        "bijection": rep.bijection,
        "counts": {
            "interval": rep.interval.len(),
            "interval_s_torsion": s_int,
            "heart": rep.heart.len(),
            "heart_s_torsion": s_heart,
        },
        "dot": {
            "interval": rep.interval_hasse.to_dot("interval"),
            "heart": rep.heart_hasse.to_dot("heart"),
        },
    });
    Ok(Report {
        inputs,
        results,
        checks: rep.checks,
        graphs: vec![("interval".into(), rep.interval_hasse), ("heart".into(), rep.heart_hasse)],
    })
}

fn module_interval(alg: PathAlgebra, a1: &str, a2: &str) -> Result<Report> {
    let (l1, l2) = (literal::module_pair(a1)?, literal::module_pair(a2)?);
    let inputs = json!({ "quiver": alg.quiver().to_string(), "prime": alg.p(), "t1": l1, "t2": l2 });
    let cat = ModuleCategory::new(alg);
    let ctx = Context::full(&cat);
    let set = |s: &BTreeSet<Interval>| cat.set_of(s);
    let ((u1, v1), (u2, v2)) = (l1.modules()?, l2.modules()?);
    let t1 = record(&ctx, set(&u1)?, set(&v1)?, "t1")?;
    let t2 = record(&ctx, set(&u2)?, set(&v2)?, "t2")?;
    interval_report(&ctx, &t1, &t2, inputs)
}

fn derived_interval(alg: PathAlgebra, a1: &str, a2: &str) -> Result<Report> {
    let (p1, p2) = (literal::window_pair(a1)?, literal::window_pair(a2)?);
    if p1.window != p2.window {
        return Err(Error::Rejected("t1 and t2 use different windows".into()));
    }
    let inputs = json!({ "quiver": alg.quiver().to_string(), "prime": alg.p(), "t1": p1.to_json(), "t2": p2.to_json() });
    let dw = DerivedWindow::new(Arc::new(DerivedCategory::new(alg)), p1.window)?;
    let ctx = Context::full(&dw);
    let (u1, v1) = dw.pair_sets(&p1);
    let (u2, v2) = dw.pair_sets(&p2);
    dw.check_buffer(u1, v1)?;
    dw.check_buffer(u2, v2)?;
    let t1 = record(&ctx, u1, v1, "t1")?;
    let t2 = record(&ctx, u2, v2, "t2")?;
    interval_report(&ctx, &t1, &t2, inputs)
}

fn hrs_window(alg: PathAlgebra, m: i32, lo: Option<i32>, hi: Option<i32>) -> Result<DerivedWindow> {
    let w = Window::new(lo.unwrap_or(-3 * m - 1), hi.unwrap_or(3 * m + 1))?;
    DerivedWindow::new(Arc::new(DerivedCategory::new(alg)), w)
}

fn tstr_json(dw: &DerivedWindow, t: (AtomSet, AtomSet)) -> Value {
    dw.to_pair(t.0, t.1).to_json()
}

fn hrs_enumerate(h: &Hrs) -> Result<Report> {
    let dw = h.window();
    let ctx = h.context();
    let en = enumerate_hrs(h)?;
    let rows: Vec<Value> = (0..en.stors.len()).map(|i| json!({ "stors": i, "heart": i, "tstructure": i })).collect();
    let results = json!({
        "extended_heart": ctx.labels(h.heart()),
        "counts": {
            "stors": en.stors.len(),
            "hearts": en.hearts.len(),
            "tstructures": en.tstructures.len(),
        },
        "stors": en.stors.iter().map(|r| pair_json(ctx, r)).collect::<Vec<_>>(),
        "hearts": en.hearts.iter().map(|e| literal::heart_to_json(dw, e)).collect::<Vec<_>>(),
        "tstructures": en.tstructures.iter().map(|&t| tstr_json(dw, t)).collect::<Vec<_>>(),
        "bijection": rows,
        "hasse": {
            "stors": en.stors_hasse.edges,
            "hearts": en.hearts_hasse.edges,
            "tstructures": en.tstr_hasse.edges,
        },
        "dot": {
            "stors": en.stors_hasse.to_dot("stors"),
            "hearts": en.hearts_hasse.to_dot("hearts"),
            "tstructures": en.tstr_hasse.to_dot("tstructures"),
        },
    });
    Ok(Report {
        inputs: json!("enumerate"),
        results,
        checks: en.checks,
        graphs: vec![
            ("stors".into(), en.stors_hasse),
            ("hearts".into(), en.hearts_hasse),
            ("tstructures".into(), en.tstr_hasse),
        ],
    })
}

fn hrs_tilt(h: &Hrs, arg: &str) -> Result<Report> {
    let dw = h.window();
    let lit = literal::module_pair(arg)?;
    let atoms = |xs: &[String]| -> Result<AtomSet> {
        let v = xs.iter().map(|t| t.parse::<DAtom>()).collect::<Result<Vec<_>>>()?;
        dw.set_of(&v)
    };
    let hctx = h.heart_context();
    let (t, f) = (atoms(&lit.u)?, atoms(&lit.v)?);
    let rec = is_torsion_pair(&hctx, hctx.subcat(t)?, hctx.subcat(f)?)?;
    let e = h.tilt(&rec)?;
    let back = h.untilt(&e)?;
    let results = json!({
        "heart": literal::heart_to_json(dw, &e),
        "source_tstructure": tstr_json(dw, e.source.unwrap()),
    });
    let checks = vec![Check::new("untilt-recovers-pair", (!back.same_pair(&rec)).then(|| "different pair".into()))];
    Ok(Report { inputs: json!({ "tilt": lit }), results, checks, graphs: vec![] })
}

fn hrs_untilt(h: &Hrs, arg: &str) -> Result<Report> {
    let dw = h.window();
    let e = literal::extended_heart(dw, arg)?;
    let rec = h.untilt(&e)?;
    let again = h.tilt(&rec)?;
    let results = json!({ "pair": pair_json(h.context(), &rec) });
    let checks = vec![Check::new("tilt-recovers-heart", (again.atoms != e.atoms).then(|| "different heart".into()))];
    Ok(Report { inputs: json!({ "untilt": literal::heart_to_json(dw, &e) }), results, checks, graphs: vec![] })
}

fn hrs_identities(h: &Hrs) -> Result<Report> {
    let e = crate::hrs::ExtendedHeart { m: h.m(), atoms: h.heart(), source: None };
    let checks = h.lemma43_check(&e)?;
    let results = json!({ "extended_heart": h.context().labels(h.heart()) });
    Ok(Report { inputs: json!("identities"), results, checks, graphs: vec![] })
}

fn extend(dw: &DerivedWindow, quiver: &str, p: u32, m: i32, s_lo: Option<i32>, s_hi: Option<i32>) -> Result<Report> {
    let w = dw.window();
    let (lo, hi) = (s_lo.unwrap_or(w.lo), s_hi.unwrap_or(w.hi));
    let h = Hrs::standard(dw, m)?;
    let s = dw.filter(|a| lo <= a.shift && a.shift <= hi);
    let ext = Extension::new(&h, s)?;
    let checks = ext.verify()?;
    let on_s = ext.tstr_on_s()?;
    let mut pairs = Vec::new();
    for &(ya, yf) in &on_s {
        let up = ext.mu(ya, yf)?;
        pairs.push(json!({ "on_s": tstr_json(dw, (ya, yf)), "extended": tstr_json(dw, up) }));
    }
    let results = json!({
        "s_band": { "lo": lo, "hi": hi },
        "s_is_whole_window": ext.is_whole_window(),
        "count": on_s.len(),
        "pairs": pairs,
    });
    let inputs = json!({ "quiver": quiver, "prime": p, "m": m, "window": w });
    Ok(Report { inputs, results, checks, graphs: vec![] })
}

fn check(alg: &PathAlgebra, seed: u64, samples: usize) -> Result<Report> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ivs = alg.all_indecomposables().to_vec();
    let n = alg.n();
    let mut checks = Vec::new();

    let euler = ivs.iter().flat_map(|&a| ivs.iter().map(move |&b| (a, b))).find(|&(a, b)| {
        alg.hom(a, b) as i64 - alg.ext1(a, b) as i64 != alg.euler(&a.dims(n), &b.dims(n))
    });
    checks.push(Check::new("euler-identity", euler.map(|(a, b)| format!("({a}, {b})"))));

    let mut decomp = None;
    for _ in 0..samples {
        let k = rng.random_range(1..=3);
        let mut parts: Vec<Interval> = (0..k).map(|_| ivs[rng.random_range(0..ivs.len())]).collect();
        let got = alg.decompose(&alg.realize_sum(&parts));
        parts.sort();
        if got != parts {
            decomp.get_or_insert(format!("{parts:?} decomposed as {got:?}"));
        }
    }
    checks.push(Check::new("decompose-round-trip", decomp));

    if alg.p() == 2 {
        let cat = ModuleCategory::new(alg.clone());
        let mut oracle = None;
        for _ in 0..samples {
            let a = AtomSet(rng.random::<u128>() & AtomSet::full(ivs.len()).0);
            let b = AtomSet(rng.random::<u128>() & AtomSet::full(ivs.len()).0).minus(a);
            let x = rng.random_range(0..ivs.len());
            let fast = cat.factor(x, a, b).is_some();
            if fast != cat.star_oracle(a, b, x)? {
                oracle.get_or_insert(format!("{} in {:?} * {:?}", ivs[x], cat.intervals_of(a), cat.intervals_of(b)));
            }
        }
        checks.push(Check::new("factorization-matches-oracle", oracle));
    }

    let dc = DerivedCategory::new(alg.clone());
    let mut dhom = None;
    for _ in 0..samples {
        let a = DAtom::new(ivs[rng.random_range(0..ivs.len())], rng.random_range(-2..=2));
        let b = DAtom::new(ivs[rng.random_range(0..ivs.len())], rng.random_range(-2..=2));
        if dc.hom_dim_d(a, b) != dc.chain_hom_dim(a, b) {
            dhom.get_or_insert(format!("Hom({a}, {b})"));
        }
    }
    checks.push(Check::new("derived-hom-matches-chain-maps", dhom));

    let inputs = json!({ "quiver": alg.quiver().to_string(), "prime": alg.p(), "seed": seed, "samples": samples });
    let mut results = Map::new();
    results.insert("failed".into(), json!(checks.iter().filter(|c| !c.pass).count()));
    if let Some(c) = checks.iter().find(|c| !c.pass) {
        return Err(Error::verification(c.name.clone(), c.witness.clone().unwrap_or_default()));
    }
    Ok(Report { inputs, results: Value::Object(results), checks, graphs: vec![] })
}
