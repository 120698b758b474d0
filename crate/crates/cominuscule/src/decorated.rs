//! Decorated permutations and the three bijections between Le-diagrams,
//! cells, and decorated permutations.
//!
//! For the type-A Grassmannian, cells of `(A_n, j)` are labelled by
//! decorated permutations of `[n+1]`: permutations whose fixed points carry
//! a clockwise/counterclockwise decoration, with exactly `j` weak
//! "north-east" positions (`π(i) < i`, or a clockwise fixed point).  For the
//! maximal orthogonal Grassmannian `(B_n, n)` the labels are *signed*
//! permutations of `[n]` with decorations on positive fixed points.
//!
//! Three maps are implemented and cross-checked:
//! * `Φ₂`: Le-diagram → cell `(x, w)` (the value and the shape element) with
//!   inverse the greedy Le-ification;
//! * `Φ₁`: cell → decorated permutation, `π = x · w⁻¹` with fixed points
//!   decorated clockwise exactly when they lie in the "first-`j`" window of
//!   `w`;
//! * `Φ₃`: Le-diagram → decorated permutation directly, by following hook
//!   wires through the `+`es of the diagram.
//!
//! `Φ₃ = Φ₁ ∘ Φ₂` is an acceptance invariant; the type-B versions are
//! obtained by doubling the shifted shape into a square type-A shape.

use crate::diagram::{Cell, Filling, OPlusDiagram};
use crate::poset::{CominusculePoset, OrderIdeal};
use crate::weyl::{element_from_one_line, signed_window_from_word, Family};
use crate::{Error, Result};
use std::fmt;
use std::sync::Arc;

/// A permutation window (entries `±1..±m`, type-A windows all positive) with
/// a clockwise/counterclockwise decoration on each positive fixed point.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct DecoratedPermutation {
    window: Vec<i64>,
    /// Bit `i-1` set iff `π(i) = i > 0` is decorated clockwise.
    cw_mask: u64,
}

impl DecoratedPermutation {
    pub fn new(window: Vec<i64>, clockwise: &[usize]) -> Result<DecoratedPermutation> {
        let m = window.len();
        if m == 0 || m > 64 {
            return Err(Error::InvalidInput("window length out of range".into()));
        }
        let mut seen = vec![false; m + 1];
        for &v in &window {
            let a = v.unsigned_abs() as usize;
            if v == 0 || a > m || seen[a] {
                return Err(Error::InvalidInput(format!(
                    "window is not a signed permutation: {window:?}"
                )));
            }
            seen[a] = true;
        }
        let mut cw_mask = 0u64;
        for &i in clockwise {
            if i == 0 || i > m || window[i - 1] != i as i64 {
                return Err(Error::InvalidInput(format!(
                    "clockwise mark on {i}, which is not a positive fixed point"
                )));
            }
            cw_mask |= 1 << (i - 1);
        }
        Ok(DecoratedPermutation { window, cw_mask })
    }

    /// Parse the display form, e.g. `"~1 3 -2"`: space-separated entries,
    /// `~` marking a clockwise fixed point.
    pub fn parse(text: &str) -> Result<DecoratedPermutation> {
        let mut window = Vec::new();
        let mut clockwise = Vec::new();
        for tok in text.split_whitespace() {
            let (cw, body) = match tok.strip_prefix('~') {
                Some(rest) => (true, rest),
                None => (false, tok),
            };
            let v: i64 = body
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad window entry '{tok}'")))?;
            if cw {
                clockwise.push(window.len() + 1);
            }
            window.push(v);
        }
        DecoratedPermutation::new(window, &clockwise)
    }

    pub fn len(&self) -> usize {
        self.window.len()
    }

    pub fn is_empty(&self) -> bool {
        self.window.is_empty()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `π(i)`, defined for `i ∈ {±1, .., ±m}` by `π(−i) = −π(i)`.
    pub fn apply(&self, i: i64) -> i64 {
        if i > 0 {
            self.window[(i - 1) as usize]
        } else {
            -self.window[(-i - 1) as usize]
        }
    }

    /// Whether `i` is a clockwise-decorated fixed point.
    pub fn is_clockwise(&self, i: usize) -> bool {
        self.cw_mask & (1 << (i - 1)) != 0
    }

    /// Positive fixed points with their decoration (`true` = clockwise).
    pub fn fixed_points(&self) -> Vec<(usize, bool)> {
        (1..=self.len())
            .filter(|&i| self.window[i - 1] == i as i64)
            .map(|i| (i, self.is_clockwise(i)))
            .collect()
    }

    /// "North-east" positions: `π(i) < i`, or a clockwise fixed point.  For
    /// type A these count the Grassmannian index `j`.
    pub fn northeast(&self) -> Vec<usize> {
        (1..=self.len())
            .filter(|&i| self.window[i - 1] < i as i64 || self.is_clockwise(i))
            .collect()
    }
}

impl fmt::Display for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &v) in self.window.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if v == (k + 1) as i64 && self.is_clockwise(k + 1) {
                write!(f, "~{v}")?;
            } else {
                write!(f, "{v}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for DecoratedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DecoratedPermutation[{self}]")
    }
}

/// `Φ₂`: Le-diagram → cell.  Defined on every `⊕`-diagram (the value), but a
/// bijection when restricted to Le-diagrams.
pub fn phi2(d: &OPlusDiagram) -> Cell {
    d.cell()
}

/// `Φ₂⁻¹`: cell → its unique Le-diagram.
pub fn phi2_inverse(cell: &Cell) -> OPlusDiagram {
    cell.le_diagram()
}

/// `Φ₁` for the type-A Grassmannian: `π = x · w⁻¹` on one-line windows, with
/// a fixed point `i` decorated clockwise exactly when `i ∈ {w(1), .., w(j)}`.
pub fn phi1_a(cell: &Cell) -> Result<DecoratedPermutation> {
    let poset = cell.ideal().poset();
    if poset.family() != Family::A {
        return Err(Error::UnsupportedType(format!(
            "type-A decorated permutations are not defined for {}",
            poset.type_name()
        )));
    }
    let wl = cell.w().one_line();
    let vl = cell.x().one_line();
    let m = wl.len();
    let mut winv = vec![0usize; m + 1];
    for (p, &val) in wl.iter().enumerate() {
        winv[val] = p + 1;
    }
    let window: Vec<i64> = (1..=m).map(|i| vl[winv[i] - 1] as i64).collect();
    let j = poset.j();
    let clockwise: Vec<usize> = (1..=m)
        .filter(|&i| window[i - 1] == i as i64 && wl[..j].contains(&i))
        .collect();
    DecoratedPermutation::new(window, &clockwise)
}

/// `Φ₁` for the maximal orthogonal Grassmannian `(B_n, n)`:
/// `π = x · w⁻¹` as signed permutations, with a positive fixed point `i`
/// decorated clockwise exactly when `−i` occurs in the window of `w`.
pub fn phi1_b(cell: &Cell) -> Result<DecoratedPermutation> {
    let poset = cell.ideal().poset();
    if poset.family() != Family::B || poset.j() != poset.n() {
        return Err(Error::UnsupportedType(format!(
            "signed decorated permutations are defined on (B_n, n), not {}",
            poset.type_name()
        )));
    }
    let n = poset.n();
    let w = signed_window_from_word(n, &cell.ideal().word(), false);
    let v = signed_window_from_word(n, &cell.x().reduced_word(), false);
    let pi = v.compose(&w.inverse());
    let clockwise: Vec<usize> = (1..=n)
        .filter(|&i| pi.apply(i as i64) == i as i64 && w.window().contains(&-(i as i64)))
        .collect();
    DecoratedPermutation::new(pi.window().to_vec(), &clockwise)
}

/// `Φ₃` for type A: hook wires through the `+`es of a Le-diagram.
///
/// Rows of the shape have lengths `ℓ_1 ≤ … ≤ ℓ_j` top to bottom; row `r`
/// exits at its vertical label `ℓ_r + r` and column `c` at its horizontal
/// label `c + #{r : ℓ_r < c}`.  The wire of a column with no `+` is a
/// counterclockwise fixed point; otherwise it starts at the lowest `+` of
/// the column and alternates east-jumps (to the nearest `+` strictly east in
/// the same row, exiting at the row label when there is none) with
/// north-jumps (nearest `+` strictly north in the same column, exiting at
/// the column label).  Row wires are dual: an all-`0` row is a clockwise
/// fixed point, and the wire starts at the leftmost `+` of the row and jumps
/// north first.
pub fn phi3_a(d: &OPlusDiagram) -> Result<DecoratedPermutation> {
    let poset = d.poset();
    if poset.family() != Family::A {
        return Err(Error::UnsupportedType(format!(
            "hook wires are defined on type-A shapes, not {}",
            poset.type_name()
        )));
    }
    let j = poset.j();
    let m = poset.n() + 1;
    let lens = d.ideal().row_counts();
    debug_assert_eq!(lens.len(), j);
    let v_label = |r: usize| lens[r - 1] + r;
    let h_label = |c: usize| c + (1..=j).filter(|&r| lens[r - 1] < c).count();
    let plus = |r: usize, c: usize| d.filling_at(r, c) == Some(Filling::Plus);
    // nearest + strictly east of (r, c) in row r
    let east = |r: usize, c: usize| (c + 1..=lens[r - 1]).find(|&cc| plus(r, cc));
    // nearest + strictly north of (r, c) in column c
    let north = |r: usize, c: usize| (1..r).rev().find(|&rr| plus(rr, c));

    let mut window = vec![0i64; m];
    let mut clockwise = Vec::new();
    for r in 1..=j {
        let start = (1..=lens[r - 1]).find(|&c| plus(r, c));
        let label = v_label(r);
        match start {
            None => {
                window[label - 1] = label as i64;
                clockwise.push(label);
            }
            Some(c0) => {
                let (mut r1, mut c1) = (r, c0);
                let exit = loop {
                    // north jump, exiting through the column label
                    match north(r1, c1) {
                        None => break h_label(c1),
                        Some(rr) => r1 = rr,
                    }
                    // east jump, exiting through the row label
                    match east(r1, c1) {
                        None => break v_label(r1),
                        Some(cc) => c1 = cc,
                    }
                };
                window[label - 1] = exit as i64;
            }
        }
    }
    let width = poset.n() + 1 - j;
    for c in 1..=width {
        let start = (1..=j).rev().find(|&r| lens[r - 1] >= c && plus(r, c));
        let label = h_label(c);
        match start {
            None => {
                window[label - 1] = label as i64;
            }
            Some(r0) => {
                let (mut r1, mut c1) = (r0, c);
                let exit = loop {
                    match east(r1, c1) {
                        None => break v_label(r1),
                        Some(cc) => c1 = cc,
                    }
                    match north(r1, c1) {
                        None => break h_label(c1),
                        Some(rr) => r1 = rr,
                    }
                };
                window[label - 1] = exit as i64;
            }
        }
    }
    DecoratedPermutation::new(window, &clockwise)
}

/// Position of signed symbol `v` when the `2n` symbols are ordered
/// `−n, …, −1, 1, …, n`.
fn sym_pos(n: usize, v: i64) -> usize {
    if v > 0 {
        n + v as usize
    } else {
        (n as i64 + 1 + v) as usize
    }
}

/// Symbol at position `p` in the same ordering.
fn pos_sym(n: usize, p: usize) -> i64 {
    if p > n {
        (p - n) as i64
    } else {
        p as i64 - (n as i64 + 1)
    }
}

/// Double a `(B_n, n)` diagram into the `n × n` square shape of
/// `(A_{2n−1}, n)`: box `(r, c)` maps to itself and its reflection
/// `(n+1−c, n+1−r)` across the anti-diagonal.
pub fn double_diagram(d: &OPlusDiagram) -> Result<OPlusDiagram> {
    let poset = d.poset();
    if poset.family() != Family::B || poset.j() != poset.n() {
        return Err(Error::UnsupportedType(format!(
            "doubling is defined on (B_n, n) shapes, not {}",
            poset.type_name()
        )));
    }
    let n = poset.n();
    let square = CominusculePoset::new(Family::A, 2 * n - 1, n)?;
    let mut ideal_mask = 0u64;
    let mut plus_mask = 0u64;
    for b in d.ideal().present() {
        let bx = poset.boxes()[b];
        for (r, c) in [(bx.row, bx.col), (n + 1 - bx.col, n + 1 - bx.row)] {
            let i = square.box_at(r, c).expect("image box in the square");
            ideal_mask |= 1 << i;
            if d.filling(b) == Some(Filling::Plus) {
                plus_mask |= 1 << i;
            }
        }
    }
    let ideal = OrderIdeal::from_mask(&square, ideal_mask)?;
    OPlusDiagram::new(ideal, plus_mask)
}

/// `Φ₃` for `(B_n, n)`: double the diagram, run the type-A hook wires, and
/// read the signed window back through the symbol ordering
/// `−n, …, −1, 1, …, n`.  The two copies of each positive fixed point carry
/// complementary decorations; the signed decoration is the one on the
/// positive copy.
pub fn phi3_b(d: &OPlusDiagram) -> Result<DecoratedPermutation> {
    let poset = d.poset();
    let n = poset.n();
    let doubled = double_diagram(d)?;
    let pi_a = phi3_a(&doubled)?;
    let window: Vec<i64> = (1..=n as i64)
        .map(|i| pos_sym(n, pi_a.apply(sym_pos(n, i) as i64) as usize))
        .collect();
    let mut clockwise = Vec::new();
    for i in 1..=n {
        // the doubled permutation commutes with negation of symbols
        let img_pos = pi_a.apply(sym_pos(n, i as i64) as i64) as usize;
        let img_neg = pi_a.apply(sym_pos(n, -(i as i64)) as i64) as usize;
        assert_eq!(
            pos_sym(n, img_neg),
            -pos_sym(n, img_pos),
            "doubled wires lost the symbol symmetry"
        );
        if window[i - 1] == i as i64 {
            let cw_pos = pi_a.is_clockwise(sym_pos(n, i as i64));
            let cw_neg = pi_a.is_clockwise(sym_pos(n, -(i as i64)));
            assert_ne!(cw_pos, cw_neg, "copies of a fixed point must disagree");
            if cw_pos {
                clockwise.push(i);
            }
        }
    }
    DecoratedPermutation::new(window, &clockwise)
}

/// Recover the shape ideal of a type-A cell from `w`: row `r` (from the
/// top) has length `w(r) − r`, since the row labels `ℓ_r + r` are exactly
/// `w(1) < … < w(j)`.
fn ideal_from_element_a(
    poset: &Arc<CominusculePoset>,
    w_line: &[usize],
) -> Result<OrderIdeal> {
    let j = poset.j();
    let mut counts = Vec::with_capacity(j);
    for r in 1..=j {
        if w_line[r - 1] < r {
            return Err(Error::Domain(
                "window is not a minimal coset representative".into(),
            ));
        }
        counts.push(w_line[r - 1] - r);
    }
    OrderIdeal::from_row_counts(poset, &counts)
}

/// Inverse of `Φ₁` for type A: split `[n+1]` into the north-east set and its
/// complement to recover `w`, then `x = π · w`.
pub fn cell_from_decorated_a(
    poset: &Arc<CominusculePoset>,
    pi: &DecoratedPermutation,
) -> Result<Cell> {
    if poset.family() != Family::A {
        return Err(Error::UnsupportedType(format!(
            "type-A decorated permutations are not defined for {}",
            poset.type_name()
        )));
    }
    let m = poset.n() + 1;
    if pi.len() != m {
        return Err(Error::InvalidInput(format!(
            "window length {} does not match n+1 = {m}",
            pi.len()
        )));
    }
    if pi.window().iter().any(|&v| v < 0) {
        return Err(Error::InvalidInput(
            "type-A decorated permutations have positive windows".into(),
        ));
    }
    let ne = pi.northeast();
    if ne.len() != poset.j() {
        return Err(Error::Domain(format!(
            "decorated permutation has {} north-east positions, shape wants {}",
            ne.len(),
            poset.j()
        )));
    }
    let mut w_line = ne.clone();
    w_line.extend((1..=m).filter(|i| !ne.contains(i)));
    let ideal = ideal_from_element_a(poset, &w_line)?;
    let w = ideal.element();
    debug_assert_eq!(w.one_line(), w_line);
    let x_line: Vec<usize> = w_line.iter().map(|&i| pi.apply(i as i64) as usize).collect();
    let x = element_from_one_line(poset.system(), &x_line)?;
    Cell::new(ideal, x)
}

/// Inverse of `Φ₃`/`Φ₁` for `(B_n, n)`: double the signed decorated
/// permutation into a type-A one, invert there, and fold the resulting
/// (anti-diagonally symmetric) Le-diagram back onto the shifted shape.
pub fn diagram_from_decorated_b(
    poset: &Arc<CominusculePoset>,
    pi: &DecoratedPermutation,
) -> Result<OPlusDiagram> {
    if poset.family() != Family::B || poset.j() != poset.n() {
        return Err(Error::UnsupportedType(format!(
            "signed decorated permutations are defined on (B_n, n), not {}",
            poset.type_name()
        )));
    }
    let n = poset.n();
    if pi.len() != n {
        return Err(Error::InvalidInput(format!(
            "window length {} does not match n = {n}",
            pi.len()
        )));
    }
    let mut window = vec![0i64; 2 * n];
    let mut clockwise = Vec::new();
    for v in (-(n as i64)..=n as i64).filter(|&v| v != 0) {
        let img = pi.apply(v);
        window[sym_pos(n, v) - 1] = sym_pos(n, img) as i64;
        if img == v {
            let cw = if v > 0 {
                pi.is_clockwise(v as usize)
            } else {
                !pi.is_clockwise((-v) as usize)
            };
            if cw {
                clockwise.push(sym_pos(n, v));
            }
        }
    }
    let pi_a = DecoratedPermutation::new(window, &clockwise)?;
    let square = CominusculePoset::new(Family::A, 2 * n - 1, n)?;
    let cell_a = cell_from_decorated_a(&square, &pi_a)?;
    let d_a = cell_a.le_diagram();

    // fold back: keep boxes with row + col <= n+1, asserting symmetry
    let mut ideal_mask = 0u64;
    let mut plus_mask = 0u64;
    for b in d_a.ideal().present() {
        let bx = square.boxes()[b];
        let (mr, mc) = (n + 1 - bx.col, n + 1 - bx.row);
        assert_eq!(
            d_a.filling_at(mr, mc),
            d_a.filling(b),
            "doubled Le-diagram is not anti-diagonally symmetric"
        );
        if bx.row + bx.col <= n + 1 {
            let i = poset
                .box_at(bx.row, bx.col)
                .expect("folded box in the shifted shape");
            ideal_mask |= 1 << i;
            if d_a.filling(b) == Some(Filling::Plus) {
                plus_mask |= 1 << i;
            }
        }
    }
    let ideal = OrderIdeal::from_mask(poset, ideal_mask)?;
    let folded = OPlusDiagram::new(ideal, plus_mask)?;
    debug_assert!(folded.is_pds());
    Ok(folded)
}

/// A permutation tableau of shifted type: a `(B_n, n)` Le-diagram in which
/// every non-empty column contains at least one `+`.
pub fn is_permutation_tableau_b(d: &OPlusDiagram) -> Result<bool> {
    let poset = d.poset();
    if poset.family() != Family::B || poset.j() != poset.n() {
        return Err(Error::UnsupportedType(format!(
            "shifted permutation tableaux live on (B_n, n), not {}",
            poset.type_name()
        )));
    }
    if !d.is_pds() {
        return Ok(false);
    }
    let n = poset.n();
    for c in 1..=n {
        let rows: Vec<usize> = (1..=n)
            .filter(|&r| d.filling_at(r, c).is_some())
            .collect();
        if !rows.is_empty() && rows.iter().all(|&r| d.filling_at(r, c) == Some(Filling::Zero)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Number of signed decorated permutations of `[n]`:
/// `Σ_π 2^{#positive fixed points}` over all signed permutations — the
/// total number of cells of `(B_n, n)`, computed independently of any
/// diagram machinery.
pub fn count_decorated_b(n: usize) -> u64 {
    fn perms(values: &mut Vec<i64>, k: usize, out: &mut Vec<Vec<i64>>) {
        if k == values.len() {
            out.push(values.clone());
            return;
        }
        for i in k..values.len() {
            values.swap(k, i);
            perms(values, k + 1, out);
            values.swap(k, i);
        }
    }
    let mut base: Vec<i64> = (1..=n as i64).collect();
    let mut all = Vec::new();
    perms(&mut base, 0, &mut all);
    let mut total = 0u64;
    for line in &all {
        for signs in 0u64..(1 << n) {
            let fixed = (0..n)
                .filter(|&k| signs & (1 << k) == 0 && line[k] == (k + 1) as i64)
                .count();
            total += 1 << fixed;
        }
    }
    total
}

/// Number of type-A decorated permutations of `[m]` with exactly `j`
/// north-east positions — the total number of cells of `(A_{m−1}, j)`,
/// computed by brute force over permutations and decorations.
pub fn count_decorated_a(m: usize, j: usize) -> u64 {
    fn perms(values: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
        if k == values.len() {
            out.push(values.clone());
            return;
        }
        for i in k..values.len() {
            values.swap(k, i);
            perms(values, k + 1, out);
            values.swap(k, i);
        }
    }
    let mut base: Vec<usize> = (1..=m).collect();
    let mut all = Vec::new();
    perms(&mut base, 0, &mut all);
    let mut total = 0u64;
    for line in &all {
        let anti = (1..=m).filter(|&i| line[i - 1] < i).count();
        let fixed = (1..=m).filter(|&i| line[i - 1] == i).count();
        // each subset of fixed points may be marked clockwise; we need
        // anti-excedances + clockwise marks = j
        if anti <= j && j - anti <= fixed {
            total += binomial(fixed, j - anti);
        }
    }
    total
}

fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let mut r = 1u64;
    for i in 0..k.min(n - k) {
        r = r * (n - i) as u64 / (i + 1) as u64;
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::enumerate_cells;
    use std::collections::HashSet;

    #[test]
    fn display_and_parse_round_trip() {
        for text in ["~1 3 -2", "1 4 5 3 8 6 7 2", "-2 -1", "~1 ~2"] {
            let pi = DecoratedPermutation::parse(text).unwrap();
            assert_eq!(pi.to_string(), text);
        }
        assert!(DecoratedPermutation::parse("1 1").is_err());
        assert!(DecoratedPermutation::parse("~2 1").is_err());
        assert!(DecoratedPermutation::parse("0 1").is_err());
    }

    /// The worked rectangle example: shape rows (0,2,3,4) of (A_7, 4) with
    /// filling 0+/000/+++0.
    #[test]
    fn worked_example_type_a() {
        let poset = CominusculePoset::new(Family::A, 7, 4).unwrap();
        let d = OPlusDiagram::parse(&poset, "0+/000/+++0").unwrap();
        assert!(d.is_pds());
        let cell = phi2(&d);
        assert_eq!(cell.x().one_line(), vec![1, 3, 6, 2, 4, 5, 8, 7]);
        assert_eq!(cell.w().one_line(), vec![1, 4, 6, 8, 2, 3, 5, 7]);
        let pi = phi1_a(&cell).unwrap();
        assert_eq!(pi.to_string(), "~1 4 5 3 8 ~6 7 2");
        assert_eq!(phi3_a(&d).unwrap(), pi);
        // round trip
        let back = cell_from_decorated_a(&poset, &pi).unwrap();
        assert_eq!(phi2_inverse(&back), d);
    }

    /// The worked shifted example: shape rows (1,2,1) of (B_3, 3) with
    /// filling +/00/+.
    #[test]
    fn worked_example_type_b() {
        let poset = CominusculePoset::new(Family::B, 3, 3).unwrap();
        let d = OPlusDiagram::parse(&poset, "+/00/+").unwrap();
        assert!(d.is_pds());
        let cell = phi2(&d);
        let w = signed_window_from_word(3, &cell.ideal().word(), false);
        let v = signed_window_from_word(3, &cell.x().reduced_word(), false);
        assert_eq!(v.window(), &[2, -1, 3]);
        assert_eq!(w.window(), &[-3, -1, 2]);
        // the doubled shape element, as a check on the doubling itself
        let doubled = double_diagram(&d).unwrap();
        assert_eq!(doubled.ideal().element().one_line(), vec![2, 4, 6, 1, 3, 5]);
        assert_eq!(doubled.to_inline(), "+/00/+0+");
        let pi = phi1_b(&cell).unwrap();
        assert_eq!(pi.to_string(), "~1 3 -2");
        assert_eq!(phi3_b(&d).unwrap(), pi);
        let back = diagram_from_decorated_b(&poset, &pi).unwrap();
        assert_eq!(back, d);
    }

    /// The six Le-diagrams on the full (B_2, 2) shape and their labels.
    #[test]
    fn full_b2_table() {
        let poset = CominusculePoset::new(Family::B, 2, 2).unwrap();
        let expect = [
            ("00/0", "~1 ~2"),
            ("0+/0", "-1 ~2"),
            ("++/0", "-2 1"),
            ("00/+", "~1 -2"),
            ("0+/+", "-1 -2"),
            ("++/+", "-2 -1"),
        ];
        for (text, label) in expect {
            let d = OPlusDiagram::parse(&poset, text).unwrap();
            assert!(d.is_pds(), "{text} should be a Le-diagram");
            assert_eq!(phi1_b(&phi2(&d)).unwrap().to_string(), label);
            assert_eq!(phi3_b(&d).unwrap().to_string(), label);
        }
        // and these are *all* the Le-fillings of the full shape
        let full = poset.maximal_ideal();
        let le: Vec<String> = (0u64..8)
            .filter_map(|mask| {
                let d = OPlusDiagram::new(full.clone(), mask).ok()?;
                d.is_pds().then(|| d.to_inline())
            })
            .collect();
        assert_eq!(le.len(), 6);
        for (text, _) in expect {
            assert!(le.contains(&text.to_string()));
        }
    }

    #[test]
    fn phi3_equals_phi1_after_phi2_type_a() {
        for (n, j) in [(3, 1), (3, 2), (4, 2), (5, 2), (5, 3)] {
            let poset = CominusculePoset::new(Family::A, n, j).unwrap();
            let mut seen = HashSet::new();
            let cells = enumerate_cells(&poset);
            for cell in &cells {
                let d = phi2_inverse(cell);
                let pi = phi1_a(cell).unwrap();
                assert_eq!(phi3_a(&d).unwrap(), pi);
                assert!(seen.insert(pi.to_string()), "duplicate image {pi}");
                let back = cell_from_decorated_a(&poset, &pi).unwrap();
                assert_eq!(back.x(), cell.x());
                assert_eq!(back.ideal(), cell.ideal());
            }
            assert_eq!(cells.len() as u64, count_decorated_a(n + 1, j));
        }
    }

    #[test]
    fn phi3_equals_phi1_after_phi2_type_b() {
        for n in [1, 2, 3] {
            let poset = CominusculePoset::new(Family::B, n, n).unwrap();
            let mut seen = HashSet::new();
            let cells = enumerate_cells(&poset);
            for cell in &cells {
                let d = phi2_inverse(cell);
                let pi = phi1_b(cell).unwrap();
                assert_eq!(phi3_b(&d).unwrap(), pi);
                assert!(seen.insert(pi.to_string()), "duplicate image {pi}");
                assert_eq!(diagram_from_decorated_b(&poset, &pi).unwrap(), d);
            }
            assert_eq!(cells.len() as u64, count_decorated_b(n));
        }
    }

    #[test]
    fn decorated_counts() {
        assert_eq!(count_decorated_b(1), 3);
        assert_eq!(count_decorated_b(2), 13);
        // total type-A cells over all j: sum over S_3 of 2^fix = 8 + 3*2 + 2
        let total: u64 = (0..=3).map(|j| count_decorated_a(3, j)).sum();
        assert_eq!(total, 16);
    }

    #[test]
    fn permutation_tableaux_count() {
        // shifted permutation tableaux of (B_n, n) are counted by 2^n n!
        for n in [1, 2, 3] {
            let poset = CominusculePoset::new(Family::B, n, n).unwrap();
            let mut count = 0u64;
            for ideal in poset.ideals() {
                let boxes = ideal.present();
                for bits in 0u64..(1 << boxes.len()) {
                    let mut mask = 0u64;
                    for (k, &b) in boxes.iter().enumerate() {
                        if bits & (1 << k) != 0 {
                            mask |= 1 << b;
                        }
                    }
                    let d = OPlusDiagram::new(ideal.clone(), mask).unwrap();
                    if is_permutation_tableau_b(&d).unwrap() {
                        count += 1;
                    }
                }
            }
            let expected = (1u64 << n) * (1..=n as u64).product::<u64>();
            assert_eq!(count, expected, "n = {n}");
        }
    }
}
