use torsion_pairs::quiver::{PathAlgebra, Quiver};

fn main() -> torsion_pairs::Result<()> {
    let q: Quiver = std::env::args().nth(1).unwrap_or_else(|| "1>2<3<4".into()).parse()?;
    let alg = PathAlgebra::new(q.clone(), 2)?;
    let ivs = alg.all_indecomposables();
    println!("{q}: {} indecomposables", ivs.len());
    for &iv in ivs {
        let proj = if q.is_projective(iv) { " projective" } else { "" };
        println!("  {iv:8} {:10} dims {:?}{proj}", q.alias(iv), iv.dims(q.n()));
    }

    println!("\nHom / Ext1");
    print!("{:8}", "");
    for b in ivs {
        print!("{:>8}", b.to_string());
    }
    println!();
    for &a in ivs {
        print!("{:8}", a.to_string());
        for &b in ivs {
            print!("{:>8}", format!("{}/{}", alg.hom(a, b), alg.ext1(a, b)));
        }
        println!();
    }
    Ok(())
}
