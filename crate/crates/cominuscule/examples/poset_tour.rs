//! A tour of the cominuscule posets: build one pair from each family,
//! render it, and count its order ideals (= shapes = Schubert cells).
//!
//!     cargo run --example poset_tour

use cominuscule::poset::CominusculePoset;
use cominuscule::render::{render_ideal, render_poset};
use cominuscule::weyl::Family;

fn main() {
    // (family, n, j): rectangles, shifted staircases, a column, the even
    // staircase and the two exceptional pairs.
    let pairs = [
        (Family::A, 4, 2),
        (Family::B, 3, 3),
        (Family::B, 3, 1),
        (Family::D, 4, 4),
        (Family::D, 4, 1),
        (Family::E6, 6, 6),
        (Family::E7, 7, 7),
    ];
    for (family, n, j) in pairs {
        let poset = CominusculePoset::new(family, n, j).unwrap();
        let ideals = poset.ideals();
        println!(
            "{}: {} boxes, {} order ideals",
            poset.type_name(),
            poset.num_boxes(),
            ideals.len()
        );
        // each box is labelled by the simple generator it carries
        print!("{}", render_poset(&poset, false));
        println!();
    }

    // Order ideals are the diagram shapes; they are listed by size, then
    // lexicographically by row counts.  The ideal's Weyl element w indexes
    // the Schubert cell O_w, and its length is the number of boxes.
    let poset = CominusculePoset::new(Family::B, 3, 3).unwrap();
    println!("all shapes inside {}:", poset.type_name());
    for ideal in poset.ideals() {
        let w = ideal.element();
        println!(
            "rows {:?} -> w = {:?} (length {})",
            ideal.row_counts(),
            w.reduced_word(),
            w.length()
        );
    }
    println!();

    // A single shape, drawn in English convention (top-left origin) and in
    // French convention (bottom-left origin).
    let ideal = poset.ideals().into_iter().find(|i| i.row_counts() == [1, 2, 1]).unwrap();
    println!("the shape [1, 2, 1], English and French:");
    println!("{}", render_ideal(&ideal, false));
    println!("{}", render_ideal(&ideal, true));
}
