//! ASCII rendering of posets and ⊕-diagrams.
//!
//! The default orientation is matrix-style (row 1 at the top); passing
//! `french = true` flips the vertical order so the first row prints at the
//! bottom.  Output is deterministic and ends with a newline.

use crate::diagram::{Filling, OPlusDiagram};
use crate::poset::{CominusculePoset, OrderIdeal};

fn oriented_rows(
    poset: &CominusculePoset,
    french: bool,
) -> (Vec<(usize, usize, usize)>, usize) {
    let mut rows = poset.grid_rows();
    let min_col = rows.iter().map(|&(_, c0, _)| c0).min().unwrap_or(1);
    if french {
        rows.reverse();
    }
    (rows, min_col)
}

/// The poset's boxes with their simple-root labels, one grid row per line.
pub fn render_poset(poset: &CominusculePoset, french: bool) -> String {
    let width = poset
        .boxes()
        .iter()
        .map(|b| b.label.to_string().len())
        .max()
        .unwrap_or(1);
    let (rows, min_col) = oriented_rows(poset, french);
    let mut out = String::new();
    for (row, c0, c1) in rows {
        let mut line = " ".repeat((c0 - min_col) * (width + 1));
        for c in c0..=c1 {
            if c > c0 {
                line.push(' ');
            }
            let label = poset.boxes()[poset.box_at(row, c).unwrap()].label;
            line.push_str(&format!("{label:>width$}"));
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// The shape of an order ideal inside its poset: `#` for boxes of the ideal,
/// `.` for poset boxes outside it.
pub fn render_ideal(ideal: &OrderIdeal, french: bool) -> String {
    let poset = ideal.poset();
    let (rows, min_col) = oriented_rows(poset, french);
    let mut out = String::new();
    for (row, c0, c1) in rows {
        let mut line = " ".repeat(c0 - min_col);
        for c in c0..=c1 {
            line.push(if ideal.contains_at(row, c) { '#' } else { '.' });
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// An ⊕-diagram as its box picture: `0`/`+` glyphs on the ideal, `.` for
/// poset boxes outside the shape.
pub fn render_diagram(d: &OPlusDiagram, french: bool) -> String {
    let poset = d.poset();
    let (rows, min_col) = oriented_rows(poset, french);
    let mut out = String::new();
    for (row, c0, c1) in rows {
        let mut line = " ".repeat(c0 - min_col);
        for c in c0..=c1 {
            line.push(match d.filling_at(row, c) {
                Some(Filling::Zero) => '0',
                Some(Filling::Plus) => '+',
                None => '.',
            });
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}
