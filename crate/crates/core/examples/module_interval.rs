// The interval between two s-torsion pairs over 1 -> 2 <- 3 <- 4 and the
// torsion pairs of its heart.
use torsion_pairs::literal::module_pair;
use torsion_pairs::quiver::{PathAlgebra, Quiver};
use torsion_pairs::torspairs::{enumerate_interval, heart_of_interval, is_torsion_pair, Context, ModuleCategory};

fn main() -> torsion_pairs::Result<()> {
    let dir = env!("CARGO_MANIFEST_DIR");
    let cat = ModuleCategory::new(PathAlgebra::new(Quiver::parse("1>2<3<4")?, 2)?);
    let ctx = Context::full(&cat);
    let mut ends = Vec::new();
    for f in ["ex312-t1.json", "ex312-t2.json"] {
        let (u, v) = module_pair(&format!("@{dir}/examples/{f}"))?.modules()?;
        ends.push(is_torsion_pair(&ctx, ctx.subcat(cat.set_of(&u)?)?, ctx.subcat(cat.set_of(&v)?)?)?);
    }
    let spec = heart_of_interval(&ctx, &ends[0], &ends[1])?;
    println!("heart: {:?}", ctx.labels(spec.heart.atoms));
    let rep = enumerate_interval(&ctx, &spec, false)?;
    for (i, j) in &rep.bijection {
        let (t, h) = (&rep.interval[*i], &rep.heart[*j]);
        println!("{:?}  <->  T = {:?}{}", ctx.labels(t.u()), ctx.labels(h.u()), if t.is_s_torsion { "  [s]" } else { "" });
    }
    let (a, b) = rep.s_counts();
    println!("{} pairs in the interval, {} in the heart; s-torsion {a} and {b}", rep.interval.len(), rep.heart.len());
    print!("{}", rep.interval_hasse.to_dot("interval"));
    Ok(())
}
