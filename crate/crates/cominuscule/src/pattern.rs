//! Forbidden-pattern characterisations of Le-diagrams.
//!
//! For the classical cominuscule families the PDS condition on an
//! `⊕`-diagram is equivalent to avoiding a short list of local patterns
//! stated purely in terms of the grid.  This module implements those
//! characterisations; the two exceptional posets have no pattern description
//! and are rejected with [`Error::UnsupportedType`].
//!
//! Throughout, "left" means smaller column in the same row and "below" means
//! larger row in the same column (matrix coordinates, row 1 on top).

use crate::diagram::{Filling, OPlusDiagram};
use crate::poset::CominusculePoset;
use crate::weyl::Family;
use crate::{Error, Result};

/// Whether the diagram avoids the forbidden patterns of its type, i.e. is a
/// Le-diagram.  Equivalent to [`OPlusDiagram::is_pds`] for the classical
/// families; errors on the exceptional ones.
pub fn satisfies_pattern(d: &OPlusDiagram) -> Result<bool> {
    Ok(first_violation(d)?.is_none())
}

/// The first forbidden pattern found, as a human-readable description, or
/// `None` when the diagram is a Le-diagram.
pub fn first_violation(d: &OPlusDiagram) -> Result<Option<String>> {
    let poset = d.poset();
    match (poset.family(), poset.j()) {
        (Family::A, _) => Ok(violation_rectangles(d)),
        (Family::B, j) if j == poset.n() => Ok(violation_shifted(d, false)),
        (Family::B, 1) => Ok(violation_one_row(d)),
        (Family::D, j) if j == poset.n() => Ok(violation_shifted(d, true)),
        (Family::D, 1) => Ok(violation_one_row(d)),
        _ => Err(Error::UnsupportedType(format!(
            "no forbidden-pattern characterisation for {}; use the PDS test",
            poset.type_name()
        ))),
    }
}

fn fill(d: &OPlusDiagram, row: usize, col: usize) -> Option<Filling> {
    d.filling_at(row, col)
}

fn is_plus(d: &OPlusDiagram, row: usize, col: usize) -> bool {
    fill(d, row, col) == Some(Filling::Plus)
}

/// Type-A pattern: no `0` having a `+` somewhere below it and a `+` somewhere
/// to its left.
fn violation_rectangles(d: &OPlusDiagram) -> Option<String> {
    let poset = d.poset();
    for b in d.ideal().present() {
        let bx = poset.boxes()[b];
        if d.filling(b) != Some(Filling::Zero) {
            continue;
        }
        let plus_below = (bx.row + 1..=poset.j()).any(|r| is_plus(d, r, bx.col));
        let plus_left = (1..bx.col).any(|c| is_plus(d, bx.row, c));
        if plus_below && plus_left {
            return Some(format!(
                "0 at ({}, {}) has a + below it and a + to its left",
                bx.row, bx.col
            ));
        }
    }
    None
}

/// Shifted-staircase patterns, shared skeleton for `(B_n, n)` and
/// `(D_n, n)`.
///
/// `(B_n, n)` (rows `r` have columns `1..=n+1-r`):
/// 1. a `0` with a `+` below it must have only `0`s to its left;
/// 2. a `0` on the diagonal (`col = n+1-row`) must have only `0`s to its
///    left.
///
/// `(D_n, n)` (rows `r` have columns `1..=n-r`); write `d = n - row - col`
/// for the distance from a box to the diagonal:
/// 1. a `0` with a `+` below it must have only `0`s to its left;
/// 2. no `0` at `(r, c)` with a `+` at `(r, c')`, `c' < c`, and a `+` at
///    `(r + d + 1, c'')` with `c'' < c'`;
/// 3. no `0` at `(r, c)` with `+`s at `(r, c')` and `(r + d + 1, c')` for
///    some `c' < c` and a `+` strictly between those rows and strictly west:
///    at `(t, c'')` with `r < t < r + d + 1` and `c'' < c'`.
fn violation_shifted(d: &OPlusDiagram, type_d: bool) -> Option<String> {
    let poset = d.poset();
    let n = poset.n();
    let max_row = if type_d { n - 1 } else { n };
    for b in d.ideal().present() {
        let bx = poset.boxes()[b];
        if d.filling(b) != Some(Filling::Zero) {
            continue;
        }
        let (r, c) = (bx.row, bx.col);
        let has_plus_left = (1..c).any(|cc| is_plus(d, r, cc));

        // condition (1), and for B the diagonal condition (2)
        let plus_below = (r + 1..=max_row).any(|rr| is_plus(d, rr, c));
        if plus_below && has_plus_left {
            return Some(format!(
                "0 at ({r}, {c}) has a + below it and a + to its left"
            ));
        }
        if !type_d {
            let on_diagonal = c == n + 1 - r;
            if on_diagonal && has_plus_left {
                return Some(format!(
                    "diagonal 0 at ({r}, {c}) has a + to its left"
                ));
            }
            continue;
        }

        // type D conditions (2) and (3); dist = n - r - c, mirror row r+dist+1
        let dist = n - r - c;
        let mirror = r + dist + 1;
        for c1 in 1..c {
            if !is_plus(d, r, c1) {
                continue;
            }
            if let Some(c2) = (1..c1).find(|&cc| is_plus(d, mirror, cc)) {
                return Some(format!(
                    "0 at ({r}, {c}) with + at ({r}, {c1}) and + at ({mirror}, {c2})"
                ));
            }
            if is_plus(d, mirror, c1) {
                for t in r + 1..mirror {
                    if let Some(c3) = (1..c1).find(|&cc| is_plus(d, t, cc)) {
                        return Some(format!(
                            "0 at ({r}, {c}) with +s at ({r}, {c1}), ({mirror}, {c1}) and ({t}, {c3})"
                        ));
                    }
                }
            }
        }
    }
    None
}

/// Quadric patterns, shared skeleton for the one-row `(B_n, 1)` and the
/// two-row `(D_n, 1)` posets: a `0` in a box strictly above both
/// self-or-mutually-conjugate middle boxes forbids any cover `b` of that box
/// from having `+` in both `b` and its conjugate.
fn violation_one_row(d: &OPlusDiagram) -> Option<String> {
    let poset = d.poset();
    for b in d.ideal().present() {
        if d.filling(b) != Some(Filling::Zero) {
            continue;
        }
        if !strictly_above_middles(poset, b) {
            continue;
        }
        for &(lo, hi) in poset.covers() {
            if hi != b {
                continue;
            }
            let conj = poset.conjugate(lo).expect("quadric poset");
            if d.filling(lo) == Some(Filling::Plus) && d.filling(conj) == Some(Filling::Plus) {
                let bx = poset.boxes()[b];
                let lo_bx = poset.boxes()[lo];
                let co_bx = poset.boxes()[conj];
                return Some(format!(
                    "0 at ({}, {}) covers conjugate +s at ({}, {}) and ({}, {})",
                    bx.row, bx.col, lo_bx.row, lo_bx.col, co_bx.row, co_bx.col
                ));
            }
        }
    }
    None
}

/// Whether box `i` is strictly greater (in the box order) than every
/// self-conjugate or middle box — for `(B_n, 1)` the box of column `n`, for
/// `(D_n, 1)` the two incomparable middle boxes.
fn strictly_above_middles(poset: &CominusculePoset, i: usize) -> bool {
    let b = poset.boxes()[i];
    match (poset.family(), poset.j()) {
        (Family::B, 1) => b.col > poset.n(),
        (Family::D, 1) => b.row == 1 && b.col > poset.n() - 2,
        _ => unreachable!("one-row pattern on non-quadric poset"),
    }
}
