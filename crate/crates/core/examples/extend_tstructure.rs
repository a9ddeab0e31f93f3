use std::sync::Arc;

use torsion_pairs::dercat::{DerivedCategory, DerivedWindow, Window};
use torsion_pairs::hrs::{Extension, Hrs};
use torsion_pairs::quiver::{PathAlgebra, Quiver};
use torsion_pairs::torspairs::AtomSet;

fn main() -> torsion_pairs::Result<()> {
    let m = 2;
    let dc = Arc::new(DerivedCategory::new(PathAlgebra::new(Quiver::parse("1>2")?, 2)?));
    let dw = DerivedWindow::new(dc, Window::new(-7, 7)?)?;
    let h = Hrs::standard(&dw, m)?;

    let whole = Extension::new(&h, AtomSet::full(dw.atoms().len()))?;
    println!("S = the window");
    for c in whole.verify()? {
        println!("  {} {}", if c.pass { "ok  " } else { "FAIL" }, c.name);
    }

    // A band of shifts is not triangulated; the maps are still defined.
    let band = dw.filter(|a| (-3..=4).contains(&a.shift));
    match Extension::new(&h, band).and_then(|e| e.verify()) {
        Ok(checks) => {
            println!("S = shifts -3..4");
            for c in checks {
                let w = c.witness.map(|w| format!(" ({w})")).unwrap_or_default();
                println!("  {} {}{w}", if c.pass { "ok  " } else { "FAIL" }, c.name);
            }
        }
        Err(e) => println!("S = shifts -3..4: {e}"),
    }
    Ok(())
}
