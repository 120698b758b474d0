//! The Le-game: local moves that rewrite any ⊕-diagram, preserving its
//! value, until the unique Le-diagram of the same cell remains.
//!
//!     cargo run --example le_game

use cominuscule::diagram::{leify_direct, OPlusDiagram};
use cominuscule::moves::{enumerate_templates, play, verify_template, Strategy};
use cominuscule::poset::CominusculePoset;
use cominuscule::weyl::Family;

fn main() {
    let poset = CominusculePoset::new(Family::B, 3, 3).unwrap();

    // Move templates are enumerated per poset: each names a box y that a +
    // leaves, a box x where a + appears, and interior boxes with required
    // contents.  Every template is certified by the root criterion: the
    // product of the interval's reflections must send the root of x to the
    // root of y.
    let templates = enumerate_templates(&poset).unwrap();
    println!("{} has {} move templates:", poset.type_name(), templates.len());
    for t in &templates {
        assert!(verify_template(&poset, t));
        println!("  {t}");
    }
    println!("all pass the root criterion\n");

    // Play the game from a non-Le filling.  The deterministic strategy picks
    // the latest applicable y; the seeded strategy picks uniformly at random.
    let start = OPlusDiagram::parse(&poset, "0+0/+0/0").unwrap();
    println!("start: {} (Le: {})", start.to_inline(), start.is_pds());
    let (end, log) = play(&start, &templates, Strategy::Deterministic);
    for (k, step) in log.iter().enumerate() {
        println!(
            "  move {}: {}  ->  {}",
            k + 1,
            templates[step.template],
            step.after.to_inline()
        );
    }
    println!("end:   {} (Le: {})", end.to_inline(), end.is_pds());

    // However the game is played, it ends at the direct Le-ification of the
    // start's cell: same shape, same value, now a PDS.
    let direct = leify_direct(start.ideal(), &start.value()).unwrap();
    assert_eq!(end, direct);
    for seed in 0..5 {
        let (randomized, _) = play(&start, &templates, Strategy::SeededRandom(seed));
        assert_eq!(randomized, direct);
    }
    println!("deterministic and five seeded games all reach {}", direct.to_inline());
}
