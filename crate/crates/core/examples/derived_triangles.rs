use torsion_pairs::dercat::{DAtom, DerivedCategory, DObj};
use torsion_pairs::quiver::{PathAlgebra, Quiver};

fn main() -> torsion_pairs::Result<()> {
    let dc = DerivedCategory::new(PathAlgebra::new(Quiver::parse("1>2")?, 2)?);
    let atoms: Vec<DAtom> = ["M[2,2]", "M[1,2]", "M[1,1]", "M[2,2]@1"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;

    println!("derived Hom dimensions");
    for &a in &atoms {
        let row: Vec<String> = atoms.iter().map(|&b| dc.hom_dim_d(a, b).to_string()).collect();
        println!("  {a:10} {}", row.join(" "));
    }

    // Cone of the nonzero map M[2,2] -> M[1,2].
    let (s, t) = (atoms[0], atoms[1]);
    let src = dc.proj_complex(&DObj::new(vec![s]));
    let tgt = dc.proj_complex(&DObj::new(vec![t]));
    let (src, tgt) = (dc.align(&src, -2, 1), dc.align(&tgt, -2, 1));
    for f in dc.chain_hom_basis(&src, &tgt) {
        println!("cone({s} -> {t}) = {}", dc.cone_decompose(&f, &src, &tgt)?);
    }

    // M[1,2] sits in a triangle M[2,2] -> M[1,2] -> M[1,1] -> M[2,2][1].
    let w = dc.triangle_search(t, &[s], &|a| a == atoms[2]);
    match w {
        Some(w) => println!("triangle: {} -> {} -> {}", w.u, w.x, w.v),
        None => println!("no triangle"),
    }
    Ok(())
}
