//! The Le-game: local moves that transform any `⊕`-diagram into the unique
//! Le-diagram with the same value.
//!
//! A move is a triple `(x, y, S)`: two boxes `x < y` of the poset and a
//! partial filling `S` of the open interval `(x, y)` using `0`, `+`, and
//! "don't care".  The move applies to a diagram `D` when `D(y) = 0` and `D`
//! agrees with `S` on the interval; it then sets `D(y) := +` and toggles
//! `D(x)`.  Correctness of a template — that every application preserves the
//! value `v(D)` — reduces to a root-system identity
//! `v(S') · α_{label(x)} = α_{label(y)}` for every filling `S'` compatible
//! with `S`, which [`verify_template`] checks exhaustively.
//!
//! Each cominuscule family has its own list of templates (rectangles for
//! type A, extra diagonal and mirrored shapes for the shifted staircases,
//! conjugate-pair moves for the quadrics); the exceptional posets have none.

use crate::diagram::{Filling, OPlusDiagram};
use crate::poset::CominusculePoset;
use crate::weyl::Family;
use crate::{Error, Result};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::sync::Arc;

/// Which shape of move a template instantiates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum MoveFamily {
    /// Rectangle move (all types with two-dimensional shapes).
    S0,
    /// Staircase move touching the diagonal (shifted shapes).
    S1,
    /// Mirrored staircase move with an interior row choice (type D shifted
    /// shapes only).
    S2,
    /// Conjugate-pair move (the one- and two-row quadric posets).
    Conjugate,
}

/// Required content of one interior box of a move template.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Requirement {
    Zero,
    Plus,
    Any,
}

/// A Le-move template on a fixed poset: boxes are reading-order indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveTemplate {
    pub family: MoveFamily,
    /// The lower box, toggled by the move.
    pub x: usize,
    /// The upper box, which must hold `0` and becomes `+`.
    pub y: usize,
    /// Requirements on the open interval `(x, y)`, sorted by box index,
    /// one entry per interval box.
    pub interior: Vec<(usize, Requirement)>,
}

impl fmt::Display for MoveTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?} move y=#{} x=#{} interior[", self.family, self.y, self.x)?;
        for (k, (b, req)) in self.interior.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            let c = match req {
                Requirement::Zero => '0',
                Requirement::Plus => '+',
                Requirement::Any => '?',
            };
            write!(f, "#{b}:{c}")?;
        }
        write!(f, "]")
    }
}

impl MoveTemplate {
    /// Whether the move applies to `d`: `y` holds `0` (which also forces the
    /// whole closed interval into the shape) and the interval matches.
    pub fn is_performable(&self, d: &OPlusDiagram) -> bool {
        if d.filling(self.y) != Some(Filling::Zero) {
            return false;
        }
        self.interior.iter().all(|&(b, req)| match req {
            Requirement::Any => true,
            Requirement::Zero => d.filling(b) == Some(Filling::Zero),
            Requirement::Plus => d.filling(b) == Some(Filling::Plus),
        })
    }

    /// Perform the move: `y` becomes `+` and `x` toggles.  Panics if the
    /// move is not performable.
    pub fn apply(&self, d: &OPlusDiagram) -> OPlusDiagram {
        assert!(self.is_performable(d), "move not performable");
        let toggled = match d.filling(self.x).expect("x below y, hence in shape") {
            Filling::Zero => Filling::Plus,
            Filling::Plus => Filling::Zero,
        };
        d.with_filling(self.y, Filling::Plus).with_filling(self.x, toggled)
    }
}

/// Box indices of the open poset interval `(x, y)`, ascending.
fn open_interval(poset: &CominusculePoset, x: usize, y: usize) -> Vec<usize> {
    (0..poset.num_boxes())
        .filter(|&z| z != x && z != y && poset.box_leq(x, z) && poset.box_leq(z, y))
        .collect()
}

/// Helper collecting a template from `(row, col) -> Requirement` assignments;
/// interval boxes not mentioned default to `Zero`.
fn template(
    poset: &CominusculePoset,
    family: MoveFamily,
    x: (usize, usize),
    y: (usize, usize),
    plus: &[(usize, usize)],
    any: &[(usize, usize)],
) -> MoveTemplate {
    let bx = poset.box_at(x.0, x.1).expect("template x box exists");
    let by = poset.box_at(y.0, y.1).expect("template y box exists");
    let interior: Vec<(usize, Requirement)> = open_interval(poset, bx, by)
        .into_iter()
        .map(|b| {
            let pb = poset.boxes()[b];
            let rc = (pb.row, pb.col);
            let req = if plus.contains(&rc) {
                Requirement::Plus
            } else if any.contains(&rc) {
                Requirement::Any
            } else {
                Requirement::Zero
            };
            (b, req)
        })
        .collect();
    // every announced + and ? must actually lie in the open interval
    debug_assert_eq!(
        plus.len() + any.len(),
        interior
            .iter()
            .filter(|(_, r)| *r != Requirement::Zero)
            .count(),
        "template cells outside the open interval"
    );
    MoveTemplate {
        family,
        x: bx,
        y: by,
        interior,
    }
}

/// All Le-move templates of a poset, canonically ordered.  Errors for the
/// exceptional posets, which have no local-move description.
pub fn enumerate_templates(poset: &Arc<CominusculePoset>) -> Result<Vec<MoveTemplate>> {
    let n = poset.n();
    let mut out: Vec<MoveTemplate> = Vec::new();
    match (poset.family(), poset.j()) {
        (Family::A, j) => {
            let width = n + 1 - j;
            for r1 in 1..=j {
                for r2 in r1 + 1..=j {
                    for c1 in 1..=width {
                        for c2 in c1 + 1..=width {
                            out.push(template(
                                poset,
                                MoveFamily::S0,
                                (r2, c1),
                                (r1, c2),
                                &[(r1, c1), (r2, c2)],
                                &[],
                            ));
                        }
                    }
                }
            }
        }
        (Family::B, j) if j == n => {
            // rectangles clipped by the staircase: need the SE corner present
            for r1 in 1..=n {
                for r2 in r1 + 1..=n {
                    for c1 in 1..=(n + 1 - r2) {
                        for c2 in c1 + 1..=(n + 1 - r2) {
                            out.push(template(
                                poset,
                                MoveFamily::S0,
                                (r2, c1),
                                (r1, c2),
                                &[(r1, c1), (r2, c2)],
                                &[],
                            ));
                        }
                    }
                }
            }
            // diagonal moves between two diagonal boxes
            for r1 in 1..=n {
                for r2 in r1 + 1..=n {
                    out.push(template(
                        poset,
                        MoveFamily::S1,
                        (r2, n + 1 - r2),
                        (r1, n + 1 - r1),
                        &[(r1, n + 1 - r2)],
                        &[],
                    ));
                }
            }
        }
        (Family::D, j) if j == n => {
            for r1 in 1..n {
                for r2 in r1 + 1..n {
                    for c1 in 1..=(n - r2) {
                        for c2 in c1 + 1..=(n - r2) {
                            out.push(template(
                                poset,
                                MoveFamily::S0,
                                (r2, c1),
                                (r1, c2),
                                &[(r1, c1), (r2, c2)],
                                &[],
                            ));
                        }
                    }
                }
            }
            // staircase moves across the (absent) diagonal: y at distance
            // dist from the boundary, x at least dist+2 rows lower
            for (ry, cy, rx, cx) in staircase_pairs(n) {
                let dist = n - ry - cy;
                let k = (rx - ry) - (dist + 1);
                let mirror = rx - k; // = ry + dist + 1
                let any: Vec<(usize, usize)> = std::iter::once((mirror, cy - k))
                    .chain(
                        (ry..mirror)
                            .flat_map(|r| (cx..cy - k).map(move |c| (r, c)))
                            .filter(|&(r, c)| r + c <= n && (r, c) != (ry, cy - k)),
                    )
                    .filter(|&(r, c)| (r, c) != (rx, cx))
                    .collect();
                out.push(template(
                    poset,
                    MoveFamily::S1,
                    (rx, cx),
                    (ry, cy),
                    &[(ry, cy - k), (mirror, cx)],
                    &any,
                ));
                // mirrored variants: pick an interior row t strictly between
                // y's row and the mirror row
                if dist >= 1 {
                    for t in ry + 1..=ry + dist {
                        let plus = [
                            (ry, cy - k),
                            (mirror, cy - k),
                            (t, cy - k),
                            (t, cx),
                        ];
                        let any: Vec<(usize, usize)> = (ry..t)
                            .flat_map(|r| (cx..cy - k).map(move |c| (r, c)))
                            .filter(|&(r, c)| r + c <= n && !plus.contains(&(r, c)))
                            .chain((t + 1..=ry + dist).map(|r| (r, cy - k)))
                            .filter(|&(r, c)| (r, c) != (rx, cx) && (r, c) != (ry, cy))
                            .collect();
                        out.push(template(
                            poset,
                            MoveFamily::S2,
                            (rx, cx),
                            (ry, cy),
                            &plus,
                            &any,
                        ));
                    }
                }
            }
        }
        (Family::B, 1) => {
            for i in 1..=n - 1 {
                let (lo, hi) = (i + 1, 2 * n - i - 1);
                let plus: Vec<(usize, usize)> = if lo == hi {
                    vec![(1, lo)]
                } else {
                    vec![(1, lo), (1, hi)]
                };
                let any: Vec<(usize, usize)> = (lo + 1..hi).map(|c| (1, c)).collect();
                out.push(template(
                    poset,
                    MoveFamily::Conjugate,
                    (1, i),
                    (1, 2 * n - i),
                    &plus,
                    &any,
                ));
            }
        }
        (Family::D, 1) => {
            for i in 1..=n - 2 {
                let x = (2, i);
                let y = (1, 2 * n - 3 - i);
                if i == n - 2 {
                    // the open interval is exactly the two middle boxes
                    out.push(template(
                        poset,
                        MoveFamily::Conjugate,
                        x,
                        y,
                        &[(2, n - 1), (1, n - 2)],
                        &[],
                    ));
                } else {
                    let plus = [(2, i + 1), (1, 2 * n - 4 - i)];
                    let any: Vec<(usize, usize)> = (i + 2..=n - 1)
                        .map(|c| (2, c))
                        .chain((n - 2..2 * n - 4 - i).map(|c| (1, c)))
                        .collect();
                    out.push(template(poset, MoveFamily::Conjugate, x, y, &plus, &any));
                }
            }
        }
        _ => {
            return Err(Error::UnsupportedType(format!(
                "no local-move description for {}",
                poset.type_name()
            )))
        }
    }
    out.sort_by(|a, b| {
        (a.y, a.x, a.family, &a.interior).cmp(&(b.y, b.x, b.family, &b.interior))
    });
    Ok(out)
}

/// `(ry, cy, rx, cx)` quadruples for the type-D staircase moves: `y` strictly
/// off the diagonal boundary, `x` strictly below the mirrored row.
fn staircase_pairs(n: usize) -> Vec<(usize, usize, usize, usize)> {
    let mut out = Vec::new();
    for ry in 1..n {
        for cy in 1..=(n - ry) {
            let dist = n - ry - cy;
            for rx in ry + dist + 2..n {
                for cx in 1..=(n - rx) {
                    out.push((ry, cy, rx, cx));
                }
            }
        }
    }
    out
}

/// Exhaustively verify the value-preservation identity of one template:
/// for every compatible filling `S'` of the open interval,
/// `v(S') · α_{label(x)} = α_{label(y)}` in the root system.
pub fn verify_template(poset: &Arc<CominusculePoset>, t: &MoveTemplate) -> bool {
    let system = poset.system();
    let boxes = poset.boxes();
    let alpha_x = system.simple_index(boxes[t.x].label) as u32;
    let alpha_y = system.simple_index(boxes[t.y].label) as u32;
    let wild: Vec<usize> = t
        .interior
        .iter()
        .filter(|(_, r)| *r == Requirement::Any)
        .map(|(b, _)| *b)
        .collect();
    assert!(wild.len() <= 24, "wildcard count too large to sweep");
    for bits in 0u64..(1 << wild.len()) {
        let mut v = system.identity();
        // word order = reverse reading order = descending box index
        for &(b, req) in t.interior.iter().rev() {
            let zero = match req {
                Requirement::Zero => true,
                Requirement::Plus => false,
                Requirement::Any => {
                    let k = wild.iter().position(|&w| w == b).expect("wildcard");
                    bits & (1 << k) == 0
                }
            };
            if zero {
                v = v.mul_simple_right(boxes[b].label);
            }
        }
        if v.apply_root(alpha_x) != alpha_y {
            return false;
        }
    }
    true
}

/// How the game chooses among performable moves.
#[derive(Debug, Clone, Copy)]
pub enum Strategy {
    /// Always the move whose `y` is latest in reading order, breaking ties by
    /// smallest `x` and then by template order.
    Deterministic,
    /// Uniformly random among performable moves, from a seeded generator.
    SeededRandom(u64),
}

/// One step of a played game.
#[derive(Debug, Clone)]
pub struct PlayedMove {
    /// Index into the template list passed to [`play`].
    pub template: usize,
    /// Diagram after the move.
    pub after: OPlusDiagram,
}

/// Play the Le-game from `start` until no move applies.  Every step checks
/// that the value is preserved; the terminal diagram of a finished game is
/// the Le-diagram of the start's cell.
pub fn play(
    start: &OPlusDiagram,
    templates: &[MoveTemplate],
    strategy: Strategy,
) -> (OPlusDiagram, Vec<PlayedMove>) {
    let value = start.value();
    let mut rng = match strategy {
        Strategy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        Strategy::Deterministic => None,
    };
    let mut current = start.clone();
    let mut log = Vec::new();
    loop {
        let performable: Vec<usize> = (0..templates.len())
            .filter(|&k| templates[k].is_performable(&current))
            .collect();
        let Some(&pick) = (match &mut rng {
            Some(rng) => performable.choose(rng),
            None => performable
                .iter()
                .max_by_key(|&&k| (templates[k].y, std::cmp::Reverse(templates[k].x), std::cmp::Reverse(k))),
        }) else {
            break;
        };
        current = templates[pick].apply(&current);
        assert_eq!(current.value(), value, "move failed to preserve the value");
        log.push(PlayedMove {
            template: pick,
            after: current.clone(),
        });
    }
    (current, log)
}
