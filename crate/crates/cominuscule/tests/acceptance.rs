//! The acceptance gate: seven exhaustive cross-validation sweeps, one test
//! per criterion, each ending in a single `PASS criterion N` line (visible
//! with `cargo test --test acceptance -- --nocapture`).
//!
//! 1. Forbidden-pattern predicate ⇔ PDS test on every filling of every ideal.
//! 2. Graded Le-diagram census = Bruhat interval rank polynomial per ideal.
//! 3. The Le-game (two strategies) always ends at the direct Le-ification.
//! 4. The decorated-permutation triangles commute and are bijections.
//! 5. Every counting formula matches its brute-force census.
//! 6. Preference-function bijections round-trip; the worked trace is
//!    reproduced byte for byte; counts match.
//! 7. Every move template passes the root-criterion verifier; a corrupted
//!    template fails it.

use std::collections::HashSet;
use std::sync::Arc;

use num_bigint::BigInt;
use rayon::prelude::*;

use cominuscule::counting::{
    b_staircase_q, bhat_q, big_b, bruhat_rank_poly, census, dhat_q, fubini, le_census_q, t_census,
    t_poly, Grading, Scope,
};
use cominuscule::decorated::{
    count_decorated_a, count_decorated_b, phi1_a, phi1_b, phi2, phi2_inverse, phi3_a, phi3_b,
};
use cominuscule::diagram::{leify_direct, Filling, OPlusDiagram};
use cominuscule::moves::{enumerate_templates, play, verify_template, Requirement, Strategy};
use cominuscule::pattern::satisfies_pattern;
use cominuscule::poset::{CominusculePoset, OrderIdeal};
use cominuscule::preference::{
    all_preference_functions, alpha, alpha_inverse, is_nonexcedant, phi_d_grid, psi, psi_traced,
    PreferenceFunction, StairGrid,
};
use cominuscule::weyl::Family;

/// The classical pairs at the acceptance scale: `(A_{n-1}, j)` for `n <= 6`
/// (Weyl rank <= 5) and all `j`; `(B_n, n)`, `(B_n, 1)`, `(D_n, n)`,
/// `(D_n, 1)` for `n <= 5`.
fn acceptance_posets() -> Vec<Arc<CominusculePoset>> {
    let mut out = Vec::new();
    for r in 1..=5 {
        for j in 1..=r {
            out.push(CominusculePoset::new(Family::A, r, j).unwrap());
        }
    }
    for n in 1..=5 {
        out.push(CominusculePoset::new(Family::B, n, n).unwrap());
        if n >= 2 {
            out.push(CominusculePoset::new(Family::B, n, 1).unwrap());
        }
    }
    for n in 4..=5 {
        out.push(CominusculePoset::new(Family::D, n, n).unwrap());
        out.push(CominusculePoset::new(Family::D, n, 1).unwrap());
    }
    out
}

/// Apply `check` to every filling of `ideal` in parallel; returns the number
/// of fillings on success and the first failure message otherwise.
fn sweep_fillings<F>(ideal: &OrderIdeal, check: F) -> Result<u64, String>
where
    F: Fn(&OPlusDiagram) -> Result<(), String> + Sync,
{
    let positions = ideal.present();
    let size = positions.len();
    assert!(size < 64);
    (0u64..1 << size)
        .into_par_iter()
        .try_for_each(|local| {
            let mut mask = 0u64;
            for (k, &p) in positions.iter().enumerate() {
                mask |= (local >> k & 1) << p;
            }
            check(&OPlusDiagram::new(ideal.clone(), mask).unwrap())
        })
        .map(|()| 1u64 << size)
}

/// Every Le-diagram of the poset: all ideals, all PDS fillings.
fn all_le_diagrams(poset: &Arc<CominusculePoset>) -> Vec<OPlusDiagram> {
    let mut out = Vec::new();
    for ideal in poset.ideals() {
        let positions = ideal.present();
        for local in 0u64..1 << positions.len() {
            let mut mask = 0u64;
            for (k, &p) in positions.iter().enumerate() {
                mask |= (local >> k & 1) << p;
            }
            let d = OPlusDiagram::new(ideal.clone(), mask).unwrap();
            if d.is_pds() {
                out.push(d);
            }
        }
    }
    out
}

#[test]
fn criterion_1_pattern_predicate_equals_pds() {
    let posets = acceptance_posets();
    let mut fillings = 0u64;
    for poset in &posets {
        for ideal in poset.ideals() {
            fillings += sweep_fillings(&ideal, |d| {
                let pat = satisfies_pattern(d).map_err(|e| e.to_string())?;
                if pat == d.is_pds() {
                    Ok(())
                } else {
                    Err(format!(
                        "{} {}: pattern={pat}, pds={}",
                        poset.type_name(),
                        d.to_inline(),
                        d.is_pds()
                    ))
                }
            })
            .unwrap_or_else(|e| panic!("criterion 1 counterexample: {e}"));
        }
    }
    println!(
        "PASS criterion 1: pattern predicate == PDS test on {fillings} fillings across {} posets",
        posets.len()
    );
}

#[test]
fn criterion_2_graded_counts_match_bruhat_intervals() {
    let posets = acceptance_posets();
    let mut ideals = 0u64;
    for poset in &posets {
        for ideal in poset.ideals() {
            let censused = le_census_q(&ideal);
            let ranks = bruhat_rank_poly(&ideal);
            assert_eq!(
                censused,
                ranks,
                "criterion 2 counterexample: {} rows={:?}",
                poset.type_name(),
                ideal.row_counts()
            );
            ideals += 1;
        }
    }
    println!(
        "PASS criterion 2: graded Le-census == Bruhat rank polynomial on {ideals} ideals \
         across {} posets",
        posets.len()
    );
}

#[test]
fn criterion_3_le_game_reaches_the_le_ification() {
    let mut posets = 0u64;
    let mut fillings = 0u64;
    for poset in acceptance_posets() {
        // the full type D game sweep is limited to n <= 4
        if poset.family() == Family::D && poset.n() > 4 {
            continue;
        }
        posets += 1;
        let templates = enumerate_templates(&poset).unwrap();
        for ideal in poset.ideals() {
            fillings += sweep_fillings(&ideal, |d| {
                let direct = leify_direct(d.ideal(), &d.value()).map_err(|e| e.to_string())?;
                for strategy in [Strategy::Deterministic, Strategy::SeededRandom(7)] {
                    let (end, _) = play(d, &templates, strategy);
                    if end != direct {
                        return Err(format!(
                            "{} {}: game ({strategy:?}) ends at {}, direct gives {}",
                            poset.type_name(),
                            d.to_inline(),
                            end.to_inline(),
                            direct.to_inline()
                        ));
                    }
                }
                Ok(())
            })
            .unwrap_or_else(|e| panic!("criterion 3 counterexample: {e}"));
        }
    }
    println!(
        "PASS criterion 3: Le-game (both strategies) == direct Le-ification on {fillings} \
         fillings across {posets} posets"
    );
}

#[test]
fn criterion_4_decorated_permutation_triangles() {
    // the worked rectangle conversion
    let poset = CominusculePoset::new(Family::A, 7, 4).unwrap();
    let d = OPlusDiagram::parse(&poset, "0+/000/+++0").unwrap();
    let cell = phi2(&d);
    assert_eq!(cell.x().one_line(), vec![1, 3, 6, 2, 4, 5, 8, 7]);
    assert_eq!(cell.w().one_line(), vec![1, 4, 6, 8, 2, 3, 5, 7]);
    assert_eq!(phi3_a(&d).unwrap().to_string(), "~1 4 5 3 8 ~6 7 2");
    // the worked shifted conversion
    let poset = CominusculePoset::new(Family::B, 3, 3).unwrap();
    let d = OPlusDiagram::parse(&poset, "+/00/+").unwrap();
    assert_eq!(phi3_b(&d).unwrap().to_string(), "~1 3 -2");

    // the type A triangle commutes and is a bijection, n <= 6 (rank <= 5)
    let mut a_total = 0u64;
    for r in 1..=5usize {
        for j in 1..=r {
            let poset = CominusculePoset::new(Family::A, r, j).unwrap();
            let mut seen: HashSet<String> = HashSet::new();
            for d in all_le_diagrams(&poset) {
                let direct = phi3_a(&d).unwrap();
                let via_cell = phi1_a(&phi2(&d)).unwrap();
                assert_eq!(direct, via_cell, "(A_{r}, {j}) {}", d.to_inline());
                assert!(
                    seen.insert(direct.to_string()),
                    "(A_{r}, {j}): {direct} hit twice"
                );
                // and the triangle inverts through the cell map
                assert_eq!(phi2_inverse(&phi2(&d)), d);
            }
            assert_eq!(
                seen.len() as u64,
                count_decorated_a(r + 1, j),
                "(A_{r}, {j}) cardinality"
            );
            a_total += seen.len() as u64;
        }
    }
    // the type B triangle commutes and is a bijection, n <= 4
    let mut b_total = 0u64;
    for n in 1..=4usize {
        let poset = CominusculePoset::new(Family::B, n, n).unwrap();
        let mut seen: HashSet<String> = HashSet::new();
        for d in all_le_diagrams(&poset) {
            let direct = phi3_b(&d).unwrap();
            let via_cell = phi1_b(&phi2(&d)).unwrap();
            assert_eq!(direct, via_cell, "(B_{n}, {n}) {}", d.to_inline());
            assert!(
                seen.insert(direct.to_string()),
                "(B_{n}, {n}): {direct} hit twice"
            );
        }
        assert_eq!(seen.len() as u64, count_decorated_b(n), "(B_{n}, {n}) cardinality");
        b_total += seen.len() as u64;
    }
    println!(
        "PASS criterion 4: both triangles commute and biject ({a_total} type A + {b_total} \
         type B Le-diagrams); worked conversions reproduced"
    );
}

#[test]
fn criterion_5_enumeration_formulas_match_censuses() {
    assert_eq!(bhat_q(2).to_string(), "1+2q+2q^2+q^3");
    for n in 1..=7usize {
        assert_eq!(
            bhat_q(n),
            census(Family::B, n, 1, Scope::Maximal, Grading::ByPlus).unwrap(),
            "bhat({n})"
        );
    }
    for n in 4..=6usize {
        assert_eq!(
            dhat_q(n),
            census(Family::D, n, 1, Scope::Maximal, Grading::ByPlus).unwrap(),
            "dhat({n})"
        );
    }
    for n in 1..=4usize {
        let censused = census(Family::B, n, n, Scope::AllShapes, Grading::Plain)
            .unwrap()
            .eval_one();
        assert_eq!(censused, big_b(n), "B({n}) vs census");
        assert_eq!(censused, BigInt::from(count_decorated_b(n)), "B({n}) vs decorated");
    }
    for n in 1..=5usize {
        assert_eq!(t_census(n).unwrap(), t_poly(n), "T_{n} vs census");
        assert_eq!(
            b_staircase_q(n),
            census(Family::B, n, n, Scope::Maximal, Grading::ByPlus).unwrap(),
            "staircase b({n}) vs census"
        );
    }
    let mut two_n_factorial = BigInt::from(1);
    for n in 1..=6usize {
        two_n_factorial *= 2 * n as i64;
        assert_eq!(
            t_poly(n).eval(&BigInt::from(1), &BigInt::from(1)),
            two_n_factorial,
            "T_{n}(1,1) = 2^n n!"
        );
    }
    println!(
        "PASS criterion 5: bhat (n<=7), dhat (n<=6), B (n<=4), T (n<=5, evaluation n<=6) and \
         staircase b (n<=5) all match their censuses"
    );
}

/// The worked length-9 path construction, copied glyph for glyph.
const WORKED_TRACE: &str = include_str!("fixtures/worked_trace.txt");

/// Counts of Le-fillings of the complete triangular grid, i.e. atomic
/// preference functions, for n = 1..=6.
const ATOMIC: [u64; 6] = [1, 2, 8, 48, 368, 3376];

#[test]
fn criterion_6_preference_function_bijections() {
    // alpha is a bijection: every preference function of length <= 5 round-trips
    let mut prefs = 0u64;
    for n in 1..=5usize {
        let all = all_preference_functions(n);
        assert_eq!(BigInt::from(all.len()), fubini(n), "|preference functions({n})|");
        for p in all {
            let w = alpha_inverse(&p);
            assert!(is_nonexcedant(&w), "alpha_inverse({p}) = {w}");
            assert_eq!(alpha(&w).unwrap(), p, "alpha round trip at {p}");
            prefs += 1;
        }
    }

    // the worked length-9 construction reproduces all nine grids byte for byte
    let p = PreferenceFunction::parse("4,6,3,1,7,5,7,2,1").unwrap();
    let (_, trace) = psi_traced(&p).unwrap();
    assert_eq!(trace, WORKED_TRACE, "worked path-construction trace");

    // the path construction and the wire map invert each other at n <= 5
    for n in 1..=5usize {
        let mut atomic = 0u64;
        for p in all_preference_functions(n) {
            if !p.is_atomic() {
                continue;
            }
            atomic += 1;
            let g = psi(&p).unwrap();
            assert_eq!(phi_d_grid(&g).unwrap(), p, "phi(psi({p}))");
        }
        assert_eq!(atomic, ATOMIC[n - 1], "atomic preference functions at n={n}");
        let boxes: Vec<(usize, usize)> = StairGrid::new(n).boxes().collect();
        let mut le_grids = 0u64;
        for mask in 0u64..1 << boxes.len() {
            let mut g = StairGrid::new(n);
            for (k, &(a, b)) in boxes.iter().enumerate() {
                g.set(a, b, if mask >> k & 1 == 1 { Filling::Plus } else { Filling::Zero });
            }
            let f = phi_d_grid(&g).unwrap();
            assert!(f.is_atomic(), "wire map must land on atomic functions");
            if g.satisfies_le_conditions() {
                le_grids += 1;
                assert_eq!(psi(&f).unwrap(), g, "psi(phi(grid)) at n={n} mask={mask}");
            }
        }
        assert_eq!(le_grids, ATOMIC[n - 1], "Le grids at n={n}");
    }

    // cardinalities up to n = 6: maximal (D_n, n) Le-diagrams are counted by
    // atomic preference functions, maximal (B_n, n) Le-diagrams by twice the
    // preference functions
    for n in 4..=6usize {
        let poset = CominusculePoset::new(Family::D, n, n).unwrap();
        assert_eq!(
            le_census_q(&poset.maximal_ideal()).eval_one(),
            BigInt::from(ATOMIC[n - 1]),
            "maximal (D_{n}, {n}) Le count"
        );
    }
    for n in 1..=6usize {
        let poset = CominusculePoset::new(Family::B, n, n).unwrap();
        assert_eq!(
            le_census_q(&poset.maximal_ideal()).eval_one(),
            BigInt::from(2) * fubini(n),
            "maximal (B_{n}, {n}) Le count"
        );
    }
    println!(
        "PASS criterion 6: alpha round-trips {prefs} preference functions; the worked trace \
         matches byte for byte; psi/phi invert each other (n<=5); Le counts match atomic and \
         Fubini numbers (n<=6)"
    );
}

#[test]
fn criterion_7_move_templates_verify() {
    let mut total = 0u64;
    let posets = acceptance_posets();
    for poset in &posets {
        for t in enumerate_templates(poset).unwrap() {
            assert!(
                verify_template(poset, &t),
                "{} {t}: root criterion fails",
                poset.type_name()
            );
            total += 1;
        }
    }
    // a deliberately corrupted template must fail the verifier: flipping an
    // interior requirement changes the interval product and breaks the root
    // identity
    let poset = CominusculePoset::new(Family::A, 4, 2).unwrap();
    let templates = enumerate_templates(&poset).unwrap();
    let mut corrupted_fails = false;
    'outer: for t in &templates {
        for k in 0..t.interior.len() {
            let mut bad = t.clone();
            bad.interior[k].1 = match bad.interior[k].1 {
                Requirement::Zero => Requirement::Plus,
                Requirement::Plus => Requirement::Zero,
                Requirement::Any => continue,
            };
            if !verify_template(&poset, &bad) {
                corrupted_fails = true;
                break 'outer;
            }
        }
    }
    assert!(corrupted_fails, "no corrupted template failed the verifier");
    println!(
        "PASS criterion 7: all {total} move templates across {} posets pass the root \
         criterion; a corrupted template fails it",
        posets.len()
    );
}
