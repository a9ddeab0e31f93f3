// An interval of torsion pairs in D^b(mod kA2) on the window [-3, 2].
use std::sync::Arc;

use torsion_pairs::dercat::{DerivedCategory, DerivedWindow};
use torsion_pairs::literal::window_pair;
use torsion_pairs::quiver::{PathAlgebra, Quiver};
use torsion_pairs::torspairs::{enumerate_interval, heart_of_interval, is_torsion_pair, Context};

fn main() -> torsion_pairs::Result<()> {
    let dir = env!("CARGO_MANIFEST_DIR");
    let p1 = window_pair(&format!("@{dir}/examples/ex313-t1.json"))?;
    let p2 = window_pair(&format!("@{dir}/examples/ex313-t2.json"))?;
    let dc = Arc::new(DerivedCategory::new(PathAlgebra::new(Quiver::parse("1>2")?, 2)?));
    let dw = DerivedWindow::new(dc, p1.window)?;
    let ctx = Context::full(&dw);
    let rec = |p| {
        let (u, v) = dw.pair_sets(p);
        is_torsion_pair(&ctx, ctx.subcat(u)?, ctx.subcat(v)?)
    };
    let (t1, t2) = (rec(&p1)?, rec(&p2)?);
    println!("t1 torsion: {}, s-torsion: {}", t1.is_torsion, t1.is_s_torsion);
    println!("t2 torsion: {}, s-torsion: {}", t2.is_torsion, t2.is_s_torsion);

    let spec = heart_of_interval(&ctx, &t1, &t2)?;
    println!("heart: {:?}", ctx.labels(spec.heart.atoms));
    let rep = enumerate_interval(&ctx, &spec, false)?;
    for (i, j) in &rep.bijection {
        let (a, b) = (&rep.interval[*i], &rep.heart[*j]);
        println!("\n{}pair {i}", if a.is_s_torsion { "s-torsion " } else { "" });
        println!("  U = {:?}", ctx.labels(a.u()));
        println!("  T = {:?}, F = {:?}", ctx.labels(b.u()), ctx.labels(b.v()));
    }
    Ok(())
}
