//! Preference functions (words where every value 1..=max occurs) and their
//! two bijections: α matches them with non-excedant signed permutations, and
//! the path construction Ψ matches the atomic ones with Le-fillings of a
//! triangular grid — the combinatorics of the maximal cell in the even
//! orthogonal Grassmannian.
//!
//!     cargo run --example preference_functions

use cominuscule::counting::fubini;
use cominuscule::preference::{
    all_preference_functions, alpha, alpha_inverse, phi_d_grid, psi, psi_traced,
    PreferenceFunction,
};

fn main() {
    // α⁻¹ sends a preference function to a signed permutation w with
    // w(i) <= i everywhere; α recovers it.  There are Fubini-many of each.
    let p = PreferenceFunction::parse("4 6 3 1 7 5 7 2 1").unwrap();
    let w = alpha_inverse(&p);
    println!("f = {p}");
    println!("alpha_inverse(f) = {w}");
    println!("alpha back       = {}", alpha(&w).unwrap());
    assert_eq!(alpha(&w).unwrap(), p);
    for n in 1..=6 {
        let all = all_preference_functions(n);
        assert_eq!(fubini(n).to_string(), all.len().to_string());
        let atomic = all.iter().filter(|p| p.is_atomic()).count();
        println!("length {n}: {:>5} preference functions, {:>5} atomic", all.len(), atomic);
    }
    println!();

    // Ψ builds a staircase grid wire by wire (here for a short function,
    // with the full trace); its output satisfies the Le conditions.
    let p = PreferenceFunction::parse("2 3 1 2").unwrap();
    assert!(p.is_atomic());
    let (grid, trace) = psi_traced(&p).unwrap();
    println!("the path construction on {p}:");
    print!("{trace}");
    assert!(grid.satisfies_le_conditions());

    // Φ reads the wiring of a grid back off; on Le grids it inverts Ψ.
    let back = phi_d_grid(&grid).unwrap();
    println!("wire map recovers: {back}");
    assert_eq!(back, p);

    // The inverse pair sweeps cleanly at small length.
    for n in 1..=5 {
        for p in all_preference_functions(n) {
            if p.is_atomic() {
                assert_eq!(phi_d_grid(&psi(&p).unwrap()).unwrap(), p);
            }
        }
    }
    println!("psi then phi is the identity on all atomic functions of length <= 5");
}
