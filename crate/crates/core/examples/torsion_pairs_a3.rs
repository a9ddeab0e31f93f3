use torsion_pairs::quiver::{PathAlgebra, Quiver};
use torsion_pairs::torspairs::{enumerate_torsion_pairs, Context, HasseGraph, ModuleCategory};

fn main() -> torsion_pairs::Result<()> {
    let spec = std::env::args().nth(1).unwrap_or_else(|| "1>2>3".into());
    let cat = ModuleCategory::new(PathAlgebra::new(Quiver::parse(&spec)?, 2)?);
    let ctx = Context::full(&cat);
    let pairs = enumerate_torsion_pairs(&ctx, false)?;
    for r in &pairs {
        let tag = if r.is_s_torsion { "s" } else { " " };
        println!("{tag} U = {:?}  V = {:?}", ctx.labels(r.u()), ctx.labels(r.v()));
    }
    let s = pairs.iter().filter(|r| r.is_s_torsion).count();
    println!("{} torsion pairs, {s} s-torsion", pairs.len());

    let sets: Vec<_> = pairs.iter().map(|r| r.u()).collect();
    let labels = sets.iter().map(|u| ctx.labels(*u).join(" ")).collect();
    let g = HasseGraph::from_sets(&sets, labels, pairs.iter().map(|r| r.is_s_torsion).collect());
    eprint!("{}", g.to_dot("tors"));
    Ok(())
}
