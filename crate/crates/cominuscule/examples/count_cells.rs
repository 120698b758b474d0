//! Counting cells: graded censuses computed by brute force over all
//! fillings agree with closed forms and with Bruhat-interval ranks.
//!
//!     cargo run --example count_cells

use num_bigint::BigInt;

use cominuscule::counting::{
    bhat_q, big_b, bruhat_rank_poly, census, le_census_q, t_census, t_poly, Grading, Scope,
};
use cominuscule::poset::CominusculePoset;
use cominuscule::weyl::Family;

fn main() {
    // The maximal cells of odd quadrics, graded by dimension: the recurrence
    // bhat(n) = (1+q) bhat(n-1) + q^2 bhat(n-2) counts them.
    println!("maximal-shape census of (B_n, 1), graded by the number of +s:");
    for n in 1..=6 {
        let censused = census(Family::B, n, 1, Scope::Maximal, Grading::ByPlus).unwrap();
        assert_eq!(censused, bhat_q(n));
        println!("  n = {n}: {censused}");
    }
    println!();

    // Each shape individually: the graded Le count equals the rank
    // generating function of the Bruhat interval below the shape element.
    let poset = CominusculePoset::new(Family::D, 4, 4).unwrap();
    println!("per-shape graded counts in {}:", poset.type_name());
    for ideal in poset.ideals() {
        let censused = le_census_q(&ideal);
        assert_eq!(censused, bruhat_rank_poly(&ideal));
        println!("  rows {:?}: {censused}", ideal.row_counts());
    }
    println!();

    // Totals over all shapes of the shifted staircase follow
    // B(n) = 2n B(n-1) + 1.
    println!("all-shapes totals for (B_n, n):");
    for n in 1..=4 {
        let censused = census(Family::B, n, n, Scope::AllShapes, Grading::Plain)
            .unwrap()
            .eval_one();
        assert_eq!(censused, big_b(n));
        println!("  n = {n}: {censused}");
    }
    println!();

    // The two-variable tableau count has the closed form
    // (y+1)^n (x+1)(x+2)...(x+n-1), and 2^n n! tableaux in total.
    let one = BigInt::from(1);
    for n in 1..=4 {
        let censused = t_census(n).unwrap();
        assert_eq!(censused, t_poly(n));
        println!("T_{n}(x, y) = {censused}");
        println!("T_{n}(1, 1) = {}", censused.eval(&one, &one));
    }
}
