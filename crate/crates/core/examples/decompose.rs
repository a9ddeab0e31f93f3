// Krull-Schmidt decomposition and trace factorizations of representations.
use std::collections::BTreeSet;

use torsion_pairs::quiver::{Interval, PathAlgebra, Quiver};

fn main() -> torsion_pairs::Result<()> {
    let alg = PathAlgebra::new(Quiver::parse("1>2>3")?, 3)?;
    let parts = [Interval::new(1, 3), Interval::new(2, 2), Interval::new(2, 3), Interval::new(2, 2)];
    let x = alg.realize_sum(&parts);
    println!("dims of the sum: {:?}", x.dims);
    println!("decomposes as:   {:?}", alg.decompose(&x).iter().map(|i| i.to_string()).collect::<Vec<_>>());

    // M[1,3] as an extension of a quotient by a submodule class.
    let a: BTreeSet<_> = [Interval::new(2, 3), Interval::new(3, 3)].into();
    let b: BTreeSet<_> = [Interval::new(1, 1)].into();
    let m = alg.realize(Interval::new(1, 3));
    match alg.factor_by_trace(&a, &b, &m) {
        Some(f) => {
            let show = |v: &[Interval]| v.iter().map(|i| i.to_string()).collect::<Vec<_>>().join(" + ");
            println!("M[1,3]: sub {}, quotient {}", show(&f.sub), show(&f.quotient));
        }
        None => println!("M[1,3] is not in add A * add B"),
    }
    println!("Serre subcategory {{M[1,1]}}: {}", alg.serre_check(&b));
    println!("Serre subcategory {{M[2,3], M[3,3]}}: {}", alg.serre_check(&a));
    Ok(())
}
