//! Le-diagrams two ways: the positive-distinguished-subexpression (PDS)
//! test, which works in every type, and the forbidden-pattern predicate on
//! the filling, which characterises the same diagrams in the classical
//! families.
//!
//!     cargo run --example pattern_check

use cominuscule::diagram::OPlusDiagram;
use cominuscule::pattern::{first_violation, satisfies_pattern};
use cominuscule::poset::CominusculePoset;
use cominuscule::render::render_diagram;
use cominuscule::weyl::Family;

fn main() {
    let poset = CominusculePoset::new(Family::B, 3, 3).unwrap();

    // A filling assigns 0 or + to every box of a shape; inline syntax lists
    // the rows top to bottom, '/'-separated.
    for text in ["+/00/+", "0+0/+0/0", "00+/0+/+"] {
        let d = OPlusDiagram::parse(&poset, text).unwrap();
        println!("{} on {}:", d.to_inline(), poset.type_name());
        print!("{}", render_diagram(&d, false));
        // every box of an ⊕-diagram carries a simple generator; reading the
        // 0-boxes in order spells the subexpression, whose product is the
        // diagram's value x
        println!("value x = {:?}", d.value().reduced_word());
        println!("PDS test:          {}", d.is_pds());
        println!("pattern predicate: {}", satisfies_pattern(&d).unwrap());
        if let Some(why) = first_violation(&d).unwrap() {
            println!("violation: {why}");
        }
        println!();
    }

    // The two characterisations agree on every filling of every shape.
    let mut diagrams = 0u64;
    let mut le = 0u64;
    for ideal in poset.ideals() {
        let positions = ideal.present();
        for local in 0u64..1 << positions.len() {
            let mut mask = 0u64;
            for (k, &p) in positions.iter().enumerate() {
                mask |= (local >> k & 1) << p;
            }
            let d = OPlusDiagram::new(ideal.clone(), mask).unwrap();
            assert_eq!(d.is_pds(), satisfies_pattern(&d).unwrap());
            diagrams += 1;
            if d.is_pds() {
                le += 1;
            }
        }
    }
    println!("swept all {diagrams} fillings of {}: {le} are Le-diagrams", poset.type_name());
}
