// s-torsion pairs of the 2-extended standard heart over A2, their tilts and
// the t-structures between U[2] and U.
use std::sync::Arc;

use torsion_pairs::dercat::{DerivedCategory, DerivedWindow, Window};
use torsion_pairs::hrs::{enumerate_hrs, ExtendedHeart, Hrs};
use torsion_pairs::quiver::{PathAlgebra, Quiver};

fn main() -> torsion_pairs::Result<()> {
    let m: i32 = std::env::args().nth(1).map(|s| s.parse().expect("m")).unwrap_or(2);
    let dc = Arc::new(DerivedCategory::new(PathAlgebra::new(Quiver::parse("1>2")?, 2)?));
    let dw = DerivedWindow::new(dc, Window::new(-3 * m - 1, 3 * m + 1)?)?;
    let h = Hrs::standard(&dw, m)?;
    let ctx = h.context();
    println!("{m}-extended heart: {:?}", ctx.labels(h.heart()));

    let en = enumerate_hrs(&h)?;
    for (i, (rec, e)) in en.stors.iter().zip(&en.hearts).enumerate() {
        println!("{i:2}: T = {:?}", ctx.labels(rec.u()));
        println!("    tilt = {:?}", ctx.labels(e.atoms));
    }
    for c in &en.checks {
        println!("{} {}", if c.pass { "ok  " } else { "FAIL" }, c.name);
    }
    let top = ExtendedHeart { m, atoms: h.heart(), source: None };
    for c in h.lemma43_check(&top)? {
        println!("{} {}", if c.pass { "ok  " } else { "FAIL" }, c.name);
    }
    print!("{}", en.hearts_hasse.to_dot("hearts"));
    Ok(())
}
