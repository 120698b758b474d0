//! Cominuscule posets and their order ideals.
//!
//! For each cominuscule pair `(W, j)` the heap of the longest minimal coset
//! representative `w_0^j ∈ W^j` is a planar poset of "boxes" drawn in matrix
//! coordinates: row 1 at the top, columns increasing to the right.  A box
//! covers its west neighbour `(r, c-1)` and its south neighbour `(r+1, c)`
//! whenever those exist, so the unique minimal box sits at the bottom left.
//! Every box carries the label of a simple generator; reading the labels of
//! an order ideal bottom-to-top, left-to-right and reversing gives a reduced
//! word, and this sets up a bijection between order ideals and `W^j`.
//!
//! Supported pairs: `(A_n, j)` for any `1 ≤ j ≤ n` (a `j × (n+1-j)`
//! rectangle), `(B_n, n)` (staircase) and `(B_n, 1)` (single row of `2n-1`
//! boxes), `(D_n, n)` (staircase with alternating diagonal labels, `n ≥ 4`)
//! and `(D_n, 1)` (doubled-tail diamond, `n ≥ 4`), and the exceptional
//! minuscule pairs `(E6, 1)`, `(E6, 6)`, `(E7, 7)`.

use crate::weyl::{Family, RootSystem, WeylElement};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// A box of a cominuscule poset: matrix coordinates plus its simple label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PosetBox {
    pub row: usize,
    pub col: usize,
    pub label: usize,
}

/// A cominuscule poset (the shape `Q^j` of all boxes).
pub struct CominusculePoset {
    family: Family,
    n: usize,
    j: usize,
    system: Arc<RootSystem>,
    /// Boxes in canonical reading order: rows bottom-to-top, left-to-right.
    boxes: Vec<PosetBox>,
    index: HashMap<(usize, usize), usize>,
    /// Cover pairs `(lower, upper)` as indices into `boxes`.
    covers: Vec<(usize, usize)>,
    /// `leq[i]` = bitmask of boxes `≤ boxes[i]` (inclusive).
    leq: Vec<u64>,
    /// `geq[i]` = bitmask of boxes `≥ boxes[i]` (inclusive).
    geq: Vec<u64>,
}

/// Row extents of each supported shape: `(row, first_col, last_col)`.
fn row_spans(family: Family, n: usize, j: usize) -> Result<Vec<(usize, usize, usize)>> {
    match (family, j) {
        (Family::A, _) => {
            if n < 1 || j < 1 || j > n {
                return Err(Error::UnsupportedType(format!(
                    "(A_{n}, {j}): need 1 <= j <= n"
                )));
            }
            Ok((1..=j).map(|r| (r, 1, n + 1 - j)).collect())
        }
        (Family::B, _) if j == n => Ok((1..=n).map(|r| (r, 1, n + 1 - r)).collect()),
        (Family::B, 1) => Ok(vec![(1, 1, 2 * n - 1)]),
        (Family::B, _) => Err(Error::UnsupportedType(format!(
            "(B_{n}, {j}): only j = 1 and j = n are cominuscule"
        ))),
        (Family::D, _) if j == n => {
            if n < 4 {
                return Err(Error::UnsupportedType(format!(
                    "(D_{n}, {n}): need n >= 4"
                )));
            }
            Ok((1..=n - 1).map(|r| (r, 1, n - r)).collect())
        }
        (Family::D, 1) => {
            if n < 4 {
                return Err(Error::UnsupportedType(format!("(D_{n}, 1): need n >= 4")));
            }
            Ok(vec![(1, n - 2, 2 * n - 4), (2, 1, n - 1)])
        }
        (Family::D, _) => Err(Error::UnsupportedType(format!(
            "(D_{n}, {j}): only j = 1 and j = n are cominuscule"
        ))),
        (Family::E6, 1) | (Family::E6, 6) => Ok(vec![
            (1, 4, 8),
            (2, 4, 6),
            (3, 3, 5),
            (4, 1, 5),
        ]),
        (Family::E7, 7) => Ok(vec![
            (1, 9, 9),
            (2, 9, 9),
            (3, 9, 9),
            (4, 8, 9),
            (5, 5, 9),
            (6, 5, 9),
            (7, 5, 7),
            (8, 4, 6),
            (9, 1, 6),
        ]),
        (Family::E6, _) => Err(Error::UnsupportedType(format!(
            "(E6, {j}): only j = 1 and j = 6 are cominuscule"
        ))),
        (Family::E7, _) => Err(Error::UnsupportedType(format!(
            "(E7, {j}): only j = 7 is cominuscule"
        ))),
    }
}

fn box_label(family: Family, n: usize, j: usize, row: usize, col: usize) -> usize {
    match (family, j) {
        (Family::A, _) => row + col - 1,
        (Family::B, _) if j == n => row + col - 1,
        (Family::B, 1) => {
            if col <= n {
                col
            } else {
                2 * n - col
            }
        }
        (Family::D, _) if j == n => {
            if col == n - row {
                // diagonal boxes alternate between the two fork labels
                if (n - row) % 2 == 1 {
                    n
                } else {
                    n - 1
                }
            } else {
                row + col - 1
            }
        }
        (Family::D, 1) => {
            if row == 2 {
                col
            } else if col == n - 2 {
                n
            } else {
                2 * n - 3 - col
            }
        }
        (Family::E6, _) => {
            let table: &[(usize, usize, usize)] = &[
                (1, 4, 1), (1, 5, 3), (1, 6, 4), (1, 7, 5), (1, 8, 6),
                (2, 4, 3), (2, 5, 4), (2, 6, 2),
                (3, 3, 2), (3, 4, 4), (3, 5, 5),
                (4, 1, 1), (4, 2, 3), (4, 3, 4), (4, 4, 5), (4, 5, 6),
            ];
            let raw = table
                .iter()
                .find(|&&(r, c, _)| r == row && c == col)
                .map(|&(_, _, l)| l)
                .expect("box outside E6 shape");
            if j == 6 {
                // the diagram automorphism 1<->6, 3<->5 exchanges the two
                // cominuscule nodes of E6
                match raw {
                    1 => 6,
                    6 => 1,
                    3 => 5,
                    5 => 3,
                    other => other,
                }
            } else {
                raw
            }
        }
        (Family::E7, _) => {
            let table: &[(usize, usize, usize)] = &[
                (1, 9, 7),
                (2, 9, 6),
                (3, 9, 5),
                (4, 8, 2), (4, 9, 4),
                (5, 5, 7), (5, 6, 6), (5, 7, 5), (5, 8, 4), (5, 9, 3),
                (6, 5, 6), (6, 6, 5), (6, 7, 4), (6, 8, 3), (6, 9, 1),
                (7, 5, 5), (7, 6, 4), (7, 7, 2),
                (8, 4, 2), (8, 5, 4), (8, 6, 3),
                (9, 1, 7), (9, 2, 6), (9, 3, 5), (9, 4, 4), (9, 5, 3), (9, 6, 1),
            ];
            table
                .iter()
                .find(|&&(r, c, _)| r == row && c == col)
                .map(|&(_, _, l)| l)
                .expect("box outside E7 shape")
        }
        _ => unreachable!(),
    }
}

impl CominusculePoset {
    /// Build the cominuscule poset for `(family, n, j)`.
    ///
    /// `n` is the rank of the Weyl group and `j` the label of the cominuscule
    /// simple generator.
    pub fn new(family: Family, n: usize, j: usize) -> Result<Arc<CominusculePoset>> {
        let spans = row_spans(family, n, j)?;
        let system = RootSystem::new(family, n)?;
        let mut boxes = Vec::new();
        // canonical reading order: bottom row first, left to right
        for &(row, c0, c1) in spans.iter().rev() {
            for col in c0..=c1 {
                boxes.push(PosetBox {
                    row,
                    col,
                    label: box_label(family, n, j, row, col),
                });
            }
        }
        if boxes.len() > 64 {
            return Err(Error::TooLarge(format!(
                "shape with {} boxes exceeds the 64-box limit",
                boxes.len()
            )));
        }
        let index: HashMap<(usize, usize), usize> = boxes
            .iter()
            .enumerate()
            .map(|(i, b)| ((b.row, b.col), i))
            .collect();
        let mut covers = Vec::new();
        for (i, b) in boxes.iter().enumerate() {
            if let Some(&w) = index.get(&(b.row, b.col.wrapping_sub(1))) {
                covers.push((w, i));
            }
            if let Some(&s) = index.get(&(b.row + 1, b.col)) {
                covers.push((s, i));
            }
        }
        // Downward closures in one pass: both covered neighbours of a box
        // come earlier in the reading order.
        let mut leq = vec![0u64; boxes.len()];
        for i in 0..boxes.len() {
            let mut m = 1u64 << i;
            for &(lo, hi) in &covers {
                if hi == i {
                    m |= leq[lo];
                }
            }
            leq[i] = m;
        }
        let mut geq = vec![0u64; boxes.len()];
        for i in (0..boxes.len()).rev() {
            let mut m = 1u64 << i;
            for &(lo, hi) in &covers {
                if lo == i {
                    m |= geq[hi];
                }
            }
            geq[i] = m;
        }
        let poset = CominusculePoset {
            family,
            n,
            j,
            system,
            boxes,
            index,
            covers,
            leq,
            geq,
        };
        // sanity: a unique minimal box, labelled by the cominuscule node
        let minimal: Vec<usize> = (0..poset.boxes.len())
            .filter(|&i| poset.leq[i] == 1u64 << i)
            .collect();
        assert_eq!(minimal.len(), 1, "shape must have a unique minimal box");
        assert_eq!(
            poset.boxes[minimal[0]].label, j,
            "minimal box must carry the cominuscule label"
        );
        Ok(Arc::new(poset))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn j(&self) -> usize {
        self.j
    }

    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    /// Boxes in canonical reading order (rows bottom-to-top, left-to-right).
    pub fn boxes(&self) -> &[PosetBox] {
        &self.boxes
    }

    pub fn num_boxes(&self) -> usize {
        self.boxes.len()
    }

    /// Index of the box at matrix coordinates `(row, col)`, if present.
    pub fn box_at(&self, row: usize, col: usize) -> Option<usize> {
        self.index.get(&(row, col)).copied()
    }

    /// Cover pairs `(lower, upper)` as indices into `boxes()`.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    /// Bitmask of boxes `≤ boxes[i]`, inclusive.
    pub fn leq_mask(&self, i: usize) -> u64 {
        self.leq[i]
    }

    /// Bitmask of boxes `≥ boxes[i]`, inclusive.
    pub fn geq_mask(&self, i: usize) -> u64 {
        self.geq[i]
    }

    /// Whether `boxes[a] ≤ boxes[b]` in the shape order.
    pub fn box_leq(&self, a: usize, b: usize) -> bool {
        self.leq[b] & (1u64 << a) != 0
    }

    /// Grid rows of the shape as `(row, first_col, last_col)`, top to bottom.
    pub fn grid_rows(&self) -> Vec<(usize, usize, usize)> {
        row_spans(self.family, self.n, self.j).expect("validated at construction")
    }

    /// The full shape as an order ideal (the maximal ideal).
    pub fn maximal_ideal(self: &Arc<Self>) -> OrderIdeal {
        OrderIdeal {
            poset: Arc::clone(self),
            mask: if self.boxes.len() == 64 {
                u64::MAX
            } else {
                (1u64 << self.boxes.len()) - 1
            },
        }
    }

    /// All order ideals, sorted by size and then by a canonical key.
    ///
    /// Order ideals are in bijection with the minimal coset representatives
    /// `W^j`.
    pub fn ideals(self: &Arc<Self>) -> Vec<OrderIdeal> {
        let mut out = Vec::new();
        let m = self.boxes.len();
        // boxes are includable only once everything below them is included;
        // processing in reading order makes the leq-prefix check sufficient
        fn rec(poset: &Arc<CominusculePoset>, i: usize, mask: u64, out: &mut Vec<OrderIdeal>) {
            if i == poset.boxes.len() {
                out.push(OrderIdeal {
                    poset: Arc::clone(poset),
                    mask,
                });
                return;
            }
            rec(poset, i + 1, mask, out);
            let below = poset.leq[i] & !(1u64 << i);
            if below & !mask == 0 {
                rec(poset, i + 1, mask | (1u64 << i), out);
            }
        }
        rec(self, 0, 0, &mut out);
        debug_assert!(out.len() <= 1 << m.min(63));
        out.sort_by_key(|ideal| (ideal.size(), ideal.mask));
        out
    }

    /// Description used in error messages and rendered output.
    pub fn type_name(&self) -> String {
        match self.family {
            // the exceptional tags already carry their rank
            Family::E6 | Family::E7 => {
                format!("({}, {})", self.family.tag().to_uppercase(), self.j)
            }
            _ => format!("({}_{}, {})", self.family.tag().to_uppercase(), self.n, self.j),
        }
    }

    /// The conjugation involution on boxes of the two minuscule one-row
    /// posets (odd quadrics `(B_n, 1)` and even quadrics `(D_n, 1)`):
    /// boxes with equal labels are swapped.  `None` for other types.
    pub fn conjugate(&self, i: usize) -> Option<usize> {
        let b = self.boxes[i];
        match (self.family, self.j) {
            (Family::B, 1) => self.box_at(1, 2 * self.n - b.col),
            (Family::D, 1) => {
                let (row, col) = if b.row == 2 { (1, b.col) } else { (2, b.col) };
                self.box_at(row, 2 * self.n - 3 - col)
            }
            _ => None,
        }
    }
}

impl fmt::Debug for CominusculePoset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CominusculePoset{}", self.type_name())
    }
}

/// An order ideal (downward-closed set of boxes) of a cominuscule poset —
/// the shape `O_w` of a Schubert cell, in bijection with `w ∈ W^j`.
#[derive(Clone)]
pub struct OrderIdeal {
    poset: Arc<CominusculePoset>,
    mask: u64,
}

impl OrderIdeal {
    /// Build an ideal from an explicit bitmask over the reading order.
    pub fn from_mask(poset: &Arc<CominusculePoset>, mask: u64) -> Result<OrderIdeal> {
        if mask >> poset.num_boxes() != 0 {
            return Err(Error::InvalidInput("ideal mask has stray bits".into()));
        }
        for i in 0..poset.num_boxes() {
            if mask & (1u64 << i) != 0 && poset.leq[i] & !mask != 0 {
                return Err(Error::InvalidInput(format!(
                    "not downward closed at box ({}, {})",
                    poset.boxes[i].row, poset.boxes[i].col
                )));
            }
        }
        Ok(OrderIdeal {
            poset: Arc::clone(poset),
            mask,
        })
    }

    /// Build an ideal from the number of boxes present in each grid row,
    /// listed top to bottom (shorter rows may be omitted at the top).
    pub fn from_row_counts(poset: &Arc<CominusculePoset>, counts: &[usize]) -> Result<OrderIdeal> {
        let rows = poset.grid_rows();
        if counts.len() > rows.len() {
            return Err(Error::InvalidInput(format!(
                "{} rows given but the shape has only {}",
                counts.len(),
                rows.len()
            )));
        }
        // right-align: omitted leading rows are empty
        let offset = rows.len() - counts.len();
        let mut mask = 0u64;
        for (k, &(row, c0, c1)) in rows.iter().enumerate() {
            let len = if k < offset { 0 } else { counts[k - offset] };
            if len > c1 - c0 + 1 {
                return Err(Error::InvalidInput(format!(
                    "row {row} has at most {} boxes, got {len}",
                    c1 - c0 + 1
                )));
            }
            for c in c0..c0 + len {
                mask |= 1u64 << poset.box_at(row, c).expect("box in span");
            }
        }
        Self::from_mask(poset, mask)
    }

    pub fn poset(&self) -> &Arc<CominusculePoset> {
        &self.poset
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn size(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn contains(&self, box_idx: usize) -> bool {
        self.mask & (1u64 << box_idx) != 0
    }

    /// Number of boxes present in each grid row, top to bottom.
    pub fn row_counts(&self) -> Vec<usize> {
        self.poset
            .grid_rows()
            .iter()
            .map(|&(row, c0, c1)| (c0..=c1).filter(|&c| self.contains_at(row, c)).count())
            .collect()
    }

    pub fn contains_at(&self, row: usize, col: usize) -> bool {
        self.poset
            .box_at(row, col)
            .map(|i| self.contains(i))
            .unwrap_or(false)
    }

    /// The reduced word of the corresponding `w ∈ W^j`: labels of the present
    /// boxes in *reverse* reading order.
    pub fn word(&self) -> Vec<usize> {
        let mut word: Vec<usize> = self
            .poset
            .boxes
            .iter()
            .enumerate()
            .filter(|(i, _)| self.contains(*i))
            .map(|(_, b)| b.label)
            .collect();
        word.reverse();
        word
    }

    /// The minimal coset representative `w ∈ W^j` indexed by this ideal.
    pub fn element(&self) -> WeylElement {
        self.poset.system.from_word(&self.word())
    }

    /// Box indices present, in reading order.
    pub fn present(&self) -> Vec<usize> {
        (0..self.poset.num_boxes())
            .filter(|&i| self.contains(i))
            .collect()
    }
}

impl PartialEq for OrderIdeal {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.poset, &other.poset) && self.mask == other.mask
    }
}

impl Eq for OrderIdeal {}

impl fmt::Debug for OrderIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "OrderIdeal{:?}", self.row_counts())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn poset(f: Family, n: usize, j: usize) -> Arc<CominusculePoset> {
        CominusculePoset::new(f, n, j).unwrap()
    }

    #[test]
    fn box_counts() {
        assert_eq!(poset(Family::A, 4, 2).num_boxes(), 6);
        assert_eq!(poset(Family::B, 4, 4).num_boxes(), 10);
        assert_eq!(poset(Family::B, 4, 1).num_boxes(), 7);
        assert_eq!(poset(Family::D, 5, 5).num_boxes(), 10);
        assert_eq!(poset(Family::D, 5, 1).num_boxes(), 8);
        assert_eq!(poset(Family::E6, 6, 1).num_boxes(), 16);
        assert_eq!(poset(Family::E6, 6, 6).num_boxes(), 16);
        assert_eq!(poset(Family::E7, 7, 7).num_boxes(), 27);
    }

    #[test]
    fn full_ideal_words_are_reduced() {
        for (f, n, j) in [
            (Family::A, 4, 2),
            (Family::A, 5, 3),
            (Family::B, 5, 5),
            (Family::B, 5, 1),
            (Family::D, 5, 5),
            (Family::D, 6, 6),
            (Family::D, 5, 1),
            (Family::E6, 6, 1),
            (Family::E6, 6, 6),
            (Family::E7, 7, 7),
        ] {
            let p = poset(f, n, j);
            let w = p.maximal_ideal().element();
            assert_eq!(
                w.length(),
                p.num_boxes(),
                "full ideal word not reduced for {}",
                p.type_name()
            );
        }
    }

    #[test]
    fn ideal_counts_match_coset_counts() {
        // |W^j| per type
        let binom = |a: usize, b: usize| -> usize {
            (0..b).fold(1, |acc, i| acc * (a - i) / (i + 1))
        };
        assert_eq!(poset(Family::A, 5, 2).ideals().len(), binom(6, 2));
        assert_eq!(poset(Family::A, 5, 3).ideals().len(), binom(6, 3));
        assert_eq!(poset(Family::B, 5, 5).ideals().len(), 32); // 2^n
        assert_eq!(poset(Family::B, 5, 1).ideals().len(), 10); // 2n
        assert_eq!(poset(Family::D, 5, 5).ideals().len(), 16); // 2^{n-1}
        assert_eq!(poset(Family::D, 5, 1).ideals().len(), 10); // 2n
        assert_eq!(poset(Family::E6, 6, 1).ideals().len(), 27);
        assert_eq!(poset(Family::E6, 6, 6).ideals().len(), 27);
        assert_eq!(poset(Family::E7, 7, 7).ideals().len(), 56);
    }

    #[test]
    fn ideal_elements_distinct_and_reduced() {
        for (f, n, j) in [
            (Family::A, 4, 2),
            (Family::B, 4, 4),
            (Family::B, 4, 1),
            (Family::D, 5, 5),
            (Family::D, 5, 1),
            (Family::E6, 6, 1),
        ] {
            let p = poset(f, n, j);
            let ideals = p.ideals();
            let mut seen = HashSet::new();
            for ideal in &ideals {
                let w = ideal.element();
                assert_eq!(w.length(), ideal.size(), "non-reduced ideal word");
                assert!(seen.insert(w), "duplicate coset representative");
            }
        }
    }

    #[test]
    fn a42_full_word() {
        let p = poset(Family::A, 4, 2);
        assert_eq!(p.maximal_ideal().word(), vec![3, 2, 1, 4, 3, 2]);
    }

    #[test]
    fn d5_staircase_labels() {
        let p = poset(Family::D, 5, 5);
        let row = |r: usize| -> Vec<usize> {
            (1..=(5 - r))
                .map(|c| p.boxes()[p.box_at(r, c).unwrap()].label)
                .collect()
        };
        assert_eq!(row(1), vec![1, 2, 3, 4]);
        assert_eq!(row(2), vec![2, 3, 5]);
        assert_eq!(row(3), vec![3, 4]);
        assert_eq!(row(4), vec![5]);
    }

    #[test]
    fn d1_middles_are_incomparable() {
        let p = poset(Family::D, 5, 1);
        let m1 = p.box_at(2, 4).unwrap(); // label n-1
        let m2 = p.box_at(1, 3).unwrap(); // label n
        assert_eq!(p.boxes()[m1].label, 4);
        assert_eq!(p.boxes()[m2].label, 5);
        assert!(!p.box_leq(m1, m2) && !p.box_leq(m2, m1));
        // both are covered by the box just past the middles
        let c = p.box_at(1, 4).unwrap();
        assert!(p.covers().contains(&(m1, c)) && p.covers().contains(&(m2, c)));
    }

    #[test]
    fn row_count_round_trip() {
        let p = poset(Family::B, 4, 4);
        for ideal in p.ideals() {
            let counts = ideal.row_counts();
            let back = OrderIdeal::from_row_counts(&p, &counts).unwrap();
            assert_eq!(back.mask(), ideal.mask());
        }
        // a non-ideal profile must be rejected: row 1 longer than row 2
        assert!(OrderIdeal::from_row_counts(&p, &[2, 1, 0, 0]).is_err());
    }

    #[test]
    fn b1_labels_fold() {
        let p = poset(Family::B, 3, 1);
        let labels: Vec<usize> = p.boxes().iter().map(|b| b.label).collect();
        assert_eq!(labels, vec![1, 2, 3, 2, 1]);
    }
}
