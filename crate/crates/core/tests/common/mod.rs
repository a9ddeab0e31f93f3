#![allow(dead_code)]

use std::collections::BTreeSet;
use std::sync::Arc;

use torsion_pairs::dercat::{DAtom, DerivedCategory, DerivedWindow, Window};
use torsion_pairs::quiver::{Interval, PathAlgebra, Quiver, Rep};

pub fn alg(spec: &str, p: u32) -> PathAlgebra {
    PathAlgebra::new(Quiver::parse(spec).unwrap(), p).unwrap()
}

pub fn window(spec: &str, p: u32, lo: i32, hi: i32) -> DerivedWindow {
    let dc = Arc::new(DerivedCategory::new(alg(spec, p)));
    DerivedWindow::new(dc, Window::new(lo, hi).unwrap()).unwrap()
}

pub fn iv(s: &str) -> Interval {
    s.parse().unwrap()
}

pub fn at(s: &str) -> DAtom {
    s.parse().unwrap()
}

pub fn ivs(xs: &[&str]) -> BTreeSet<Interval> {
    xs.iter().map(|s| iv(s)).collect()
}

/// Hom and Ext¹ over F_2 by listing every vertexwise family of matrices,
/// applying the arrow differential by hand and counting. Exponential; only
/// for tiny dimension vectors.
pub fn brute_hom_ext(q: &Quiver, m: &Rep, n: &Rep) -> (usize, usize) {
    let nv = q.n();
    let mut slots = Vec::new();
    for v in 0..nv {
        for i in 0..n.dims[v] {
            for j in 0..m.dims[v] {
                slots.push((v, i, j));
            }
        }
    }
    assert!(slots.len() <= 16, "oracle is exponential in {} unknowns", slots.len());
    let arrows: Vec<(usize, usize)> = q.arrows().collect();
    let target_bits: usize = arrows.iter().map(|&(s, t)| n.dims[t] * m.dims[s]).sum();
    let mut kernel = 0usize;
    let mut image = BTreeSet::new();
    for mask in 0u32..(1 << slots.len()) {
        let mut phi: Vec<Vec<Vec<u8>>> = (0..nv).map(|v| vec![vec![0u8; m.dims[v]]; n.dims[v]]).collect();
        for (k, &(v, i, j)) in slots.iter().enumerate() {
            phi[v][i][j] = (mask >> k & 1) as u8;
        }
        let mut out = Vec::with_capacity(target_bits);
        for (e, &(s, t)) in arrows.iter().enumerate() {
            // N_a φ_s - φ_t M_a, entrywise mod 2
            for r in 0..n.dims[t] {
                for c in 0..m.dims[s] {
                    let mut x = 0u8;
                    for k in 0..n.dims[s] {
                        x ^= (n.maps[e].get(r, k) as u8 & 1) & phi[s][k][c];
                    }
                    for k in 0..m.dims[t] {
                        x ^= phi[t][r][k] & (m.maps[e].get(k, c) as u8 & 1);
                    }
                    out.push(x);
                }
            }
        }
        if out.iter().all(|&b| b == 0) {
            kernel += 1;
        }
        image.insert(out);
    }
    let log2 = |x: usize| x.trailing_zeros() as usize;
    (log2(kernel), target_bits - log2(image.len()))
}

/// Derived Hom between stalk atoms from module Hom and Ext¹ alone.
pub fn derived_hom_formula(alg: &PathAlgebra, a: DAtom, b: DAtom) -> usize {
    match b.shift - a.shift {
        0 => alg.hom(a.module, b.module),
        1 => alg.ext1(a.module, b.module),
        _ => 0,
    }
}

// Expected data for A2 = 1 -> 2 with m = 2. Heart positions are the
// Auslander-Reiten order M[2,2], M[1,2], M[1,1], repeated per shift.

pub const AR_ORDER: [&str; 3] = ["M[2,2]", "M[1,2]", "M[1,1]"];

/// Position `k` of a row as an atom.
pub fn ar_atom(k: usize) -> DAtom {
    DAtom::new(iv(AR_ORDER[k % 3]), (k / 3) as i32)
}

/// s-torsion pairs of the 2-extended heart: T, F or N per heart atom.
pub const STORS_ROWS: [&str; 12] = [
    "TTTTTT", "FTTTTT", "TNFTTT", "FFTTTT", "FFFTTT", "FTNFTT", "TNFTNF", "FFFFTT", "FFTNFT", "FFFTNF", "FFFFFT",
    "FFFFFF",
];

/// 2-extended hearts over shifts 0..3.
pub const HEART_ROWS: [&str; 12] = [
    "111111000000",
    "011111100000",
    "100111001000",
    "001111110000",
    "000111111000",
    "010011100100",
    "100100001001",
    "000011111100",
    "001001110010",
    "000100111001",
    "000001111110",
    "000000111111",
];

/// Aisles over shifts 0..2; every atom of shift at least 3 is in the aisle
/// and none of negative shift.
pub const AISLE_ROWS: [&str; 12] = [
    "111111111",
    "011111111",
    "100111111",
    "001111111",
    "000111111",
    "010011111",
    "100100111",
    "000011111",
    "001001111",
    "000100111",
    "000001111",
    "000000111",
];

/// Hasse arrows shared by the three posets, 1-based row numbers.
pub const HASSE_EDGES: [(usize, usize); 16] = [
    (1, 2),
    (1, 3),
    (2, 4),
    (2, 6),
    (3, 5),
    (3, 7),
    (4, 5),
    (4, 9),
    (5, 8),
    (5, 10),
    (6, 8),
    (7, 10),
    (8, 11),
    (9, 11),
    (10, 12),
    (11, 12),
];

pub fn row_atoms(row: &str, c: char) -> BTreeSet<DAtom> {
    row.chars().enumerate().filter(|&(_, x)| x == c).map(|(k, _)| ar_atom(k)).collect()
}

// The four-member interval on the window [-3, 2]: torsion, free, and the remaining
// in-window atoms are neither.

pub struct Classified {
    pub name: &'static str,
    pub torsion: &'static [&'static str],
    pub free: &'static [&'static str],
    pub s_torsion: bool,
}

pub const WINDOW_A: [Classified; 4] = [
    Classified {
        name: "a1",
        torsion: &["M[2,2]@0", "M[1,2]@0", "M[1,1]@0", "M[2,2]@1", "M[1,2]@1", "M[1,1]@1", "M[2,2]@2", "M[1,2]@2", "M[1,1]@2"],
        free: &["M[2,2]@-3", "M[1,2]@-3", "M[1,1]@-3", "M[2,2]@-2", "M[1,2]@-2", "M[1,1]@-2", "M[2,2]@-1", "M[1,2]@-1", "M[1,1]@-1"],
        s_torsion: true,
    },
    Classified {
        name: "a2",
        torsion: &["M[2,2]@-2", "M[2,2]@0", "M[1,2]@0", "M[1,1]@0", "M[2,2]@1", "M[1,2]@1", "M[1,1]@1", "M[2,2]@2", "M[1,2]@2", "M[1,1]@2"],
        free: &["M[2,2]@-3", "M[1,2]@-3", "M[1,1]@-3", "M[1,1]@-2", "M[2,2]@-1", "M[1,2]@-1", "M[1,1]@-1"],
        s_torsion: false,
    },
    Classified {
        name: "a3",
        torsion: &["M[2,2]@-1", "M[2,2]@0", "M[1,2]@0", "M[1,1]@0", "M[2,2]@1", "M[1,2]@1", "M[1,1]@1", "M[2,2]@2", "M[1,2]@2", "M[1,1]@2"],
        free: &["M[2,2]@-3", "M[1,2]@-3", "M[1,1]@-3", "M[2,2]@-2", "M[1,2]@-2", "M[1,1]@-2", "M[1,1]@-1"],
        s_torsion: true,
    },
    Classified {
        name: "a4",
        torsion: &["M[2,2]@-2", "M[2,2]@-1", "M[2,2]@0", "M[1,2]@0", "M[1,1]@0", "M[2,2]@1", "M[1,2]@1", "M[1,1]@1", "M[2,2]@2", "M[1,2]@2", "M[1,1]@2"],
        free: &["M[2,2]@-3", "M[1,2]@-3", "M[1,1]@-3", "M[1,1]@-2", "M[1,1]@-1"],
        s_torsion: true,
    },
];

pub const WINDOW_B: [Classified; 4] = [
    Classified {
        name: "b1",
        torsion: &["M[2,2]@1"],
        free: &["M[2,2]@-2", "M[1,2]@-2", "M[1,1]@-2", "M[2,2]@-1"],
        s_torsion: true,
    },
    Classified {
        name: "b2",
        torsion: &["M[2,2]@-2", "M[2,2]@1"],
        free: &["M[1,1]@-2", "M[2,2]@-1"],
        s_torsion: false,
    },
    Classified {
        name: "b3",
        torsion: &["M[2,2]@-1", "M[2,2]@1"],
        free: &["M[2,2]@-2", "M[1,2]@-2", "M[1,1]@-2"],
        s_torsion: true,
    },
    Classified {
        name: "b4",
        torsion: &["M[2,2]@-2", "M[2,2]@-1", "M[2,2]@1"],
        free: &["M[1,1]@-2"],
        s_torsion: true,
    },
];

pub const WINDOW_HEART: [&str; 5] = ["M[2,2]@-2", "M[1,2]@-2", "M[1,1]@-2", "M[2,2]@-1", "M[2,2]@1"];

pub fn datoms(xs: &[&str]) -> BTreeSet<DAtom> {
    xs.iter().map(|s| at(s)).collect()
}
