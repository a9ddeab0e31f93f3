use torsion_pairs::exactlin::{gauss, solve, Matrix};

fn main() {
    for p in [2, 3] {
        let a = Matrix::from_rows(p, &[vec![1, 1, 0, 1], vec![0, 1, 1, 1], vec![1, 0, 1, 0]]);
        let r = gauss(&a);
        println!("over F_{p}: rank {}, pivots {:?}", r.rank, r.pivots);
        for v in &r.nullspace {
            assert!(a.mul_vec(v).iter().all(|&x| x == 0));
            println!("  kernel vector {v:?}");
        }
        match solve(&a, &[1, 1, 0]) {
            Some(x) => println!("  A x = (1,1,0) solved by {x:?}"),
            None => println!("  A x = (1,1,0) has no solution"),
        }
    }
}
