//! Three bijections with decorated permutations and how they commute:
//! Φ₂ sends a Le-diagram to its cell (shape w, subexpression x), Φ₁ sends a
//! cell to a decorated permutation, and Φ₃ goes there directly.  Type A
//! (rectangles) lands on decorated permutations with a fixed number of
//! "north-east" positions; type B (shifted staircases) on decorated signed
//! permutations.
//!
//!     cargo run --example decorated_permutations

use std::collections::HashSet;

use cominuscule::decorated::{
    count_decorated_a, count_decorated_b, phi1_a, phi1_b, phi2, phi2_inverse, phi3_a, phi3_b,
};
use cominuscule::diagram::OPlusDiagram;
use cominuscule::poset::CominusculePoset;
use cominuscule::weyl::Family;

fn main() {
    // A worked rectangle: (A_7, 4) is the Grassmannian of 4-planes in 8-space.
    let poset = CominusculePoset::new(Family::A, 7, 4).unwrap();
    let d = OPlusDiagram::parse(&poset, "0+/000/+++0").unwrap();
    let cell = phi2(&d);
    println!("{} on {}:", d.to_inline(), poset.type_name());
    println!("  cell: x = {:?}, w = {:?}", cell.x().one_line(), cell.w().one_line());
    println!("  dimension = {} (the number of +s)", cell.dimension());
    println!("  phi3 directly:      {}", phi3_a(&d).unwrap());
    println!("  phi1 of the cell:   {}", phi1_a(&cell).unwrap());
    assert_eq!(phi3_a(&d).unwrap(), phi1_a(&cell).unwrap());
    assert_eq!(phi2_inverse(&cell), d);
    println!("  (the triangle commutes; '~' marks clockwise fixed points)\n");

    // A worked shifted staircase: (B_3, 3) with the same machinery, signed.
    let poset = CominusculePoset::new(Family::B, 3, 3).unwrap();
    let d = OPlusDiagram::parse(&poset, "+/00/+").unwrap();
    println!("{} on {}:", d.to_inline(), poset.type_name());
    println!("  phi3 directly:      {}", phi3_b(&d).unwrap());
    println!("  phi1 of the cell:   {}", phi1_b(&phi2(&d)).unwrap());
    assert_eq!(phi3_b(&d).unwrap(), phi1_b(&phi2(&d)).unwrap());
    println!();

    // Over a whole rectangle the map is a bijection onto decorated
    // permutations of [m] with exactly j north-east positions.
    let (rank, j) = (4, 2);
    let poset = CominusculePoset::new(Family::A, rank, j).unwrap();
    let mut seen: HashSet<String> = HashSet::new();
    for ideal in poset.ideals() {
        let positions = ideal.present();
        for local in 0u64..1 << positions.len() {
            let mut mask = 0u64;
            for (k, &p) in positions.iter().enumerate() {
                mask |= (local >> k & 1) << p;
            }
            let d = OPlusDiagram::new(ideal.clone(), mask).unwrap();
            if d.is_pds() {
                assert!(seen.insert(phi3_a(&d).unwrap().to_string()));
            }
        }
    }
    println!(
        "(A_{rank}, {j}): {} Le-diagrams -> {} distinct decorated permutations (formula: {})",
        seen.len(),
        seen.len(),
        count_decorated_a(rank + 1, j)
    );
    assert_eq!(seen.len() as u64, count_decorated_a(rank + 1, j));

    // The same count for shifted staircases satisfies B(n) = 2n B(n-1) + 1.
    for n in 1..=5 {
        println!("(B_{n}, {n}) has {} cells", count_decorated_b(n));
    }
}
