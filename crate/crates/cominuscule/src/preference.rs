//! Preference functions and their bijections with Le-diagrams of maximal
//! staircase shape.
//!
//! A *preference function* of length `n` is a word `p_1 .. p_n` of positive
//! integers in which every value `1 .. k` occurs at least once, where `k` is
//! the maximum of the word (the possible outcomes of a ranking of `n`
//! candidates with ties allowed).  It is *atomic* if no strict leading
//! subword consists of all occurrences of the letters `1 .. j` for some
//! `j` smaller than `k`.
//!
//! This module provides:
//!
//! * the bijection `alpha` between preference functions of length `n` and
//!   signed permutations with no excedance and a negative last entry,
//! * the wiring-diagram bijection [`phi_d`]/[`psi`] between maximal
//!   `(D_n, n)` Le-diagrams and atomic preference functions, including the
//!   case-by-case path-construction algorithm behind `psi`, and
//! * the corresponding map [`max_b_le_to_preference`] for maximal
//!   `(B_n, n)` Le-diagrams whose bottom box is a `+`.

use std::collections::HashMap;
use std::fmt;

use crate::decorated::{diagram_from_decorated_b, phi3_b, DecoratedPermutation};
use crate::diagram::{Filling, OPlusDiagram};
use crate::poset::CominusculePoset;
use crate::weyl::{Family, SignedPermutation};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Preference functions
// ---------------------------------------------------------------------------

/// Does `word` list a valid preference outcome, i.e. do the values `1 ..= k`
/// all occur, where `k` is the maximum value?
pub fn is_preference_function(word: &[usize]) -> bool {
    if word.is_empty() || word.contains(&0) {
        return false;
    }
    let k = *word.iter().max().unwrap();
    (1..=k).all(|v| word.contains(&v))
}

/// A word `p_1 .. p_n` of positive integers in which every value `1 ..= k`
/// occurs for `k = max(p)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PreferenceFunction {
    word: Vec<usize>,
}

impl PreferenceFunction {
    /// Validate and wrap a word.
    pub fn new(word: Vec<usize>) -> Result<PreferenceFunction> {
        if !is_preference_function(&word) {
            return Err(Error::InvalidInput(format!(
                "{word:?} is not a preference function: every value 1..=max must occur"
            )));
        }
        Ok(PreferenceFunction { word })
    }

    /// Parse a whitespace- (or comma-) separated word such as `"4 6 3 1 7 5 7 2 1"`.
    pub fn parse(text: &str) -> Result<PreferenceFunction> {
        let word = text
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidInput(format!("bad preference entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        PreferenceFunction::new(word)
    }

    /// The underlying word.
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// Length of the word.
    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> usize {
        self.word.len()
    }

    /// A preference function is *atomic* when no strict leading subword
    /// contains all occurrences of the letters `1 ..= j` for some `j < k`.
    /// Equivalently: for every strict prefix, some later entry is at most the
    /// prefix maximum.
    pub fn is_atomic(&self) -> bool {
        let mut prefix_max = 0;
        for m in 1..self.word.len() {
            prefix_max = prefix_max.max(self.word[m - 1]);
            if self.word[m..].iter().all(|&v| v > prefix_max) {
                return false;
            }
        }
        true
    }
}

impl fmt::Display for PreferenceFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.word.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Every preference function of length `n`, in lexicographic order.
pub fn all_preference_functions(n: usize) -> Vec<PreferenceFunction> {
    let mut out = Vec::new();
    let mut word = vec![1usize; n];
    if n == 0 {
        return out;
    }
    loop {
        if is_preference_function(&word) {
            out.push(PreferenceFunction { word: word.clone() });
        }
        // next word over the alphabet 1..=n
        let mut pos = n;
        while pos > 0 {
            if word[pos - 1] < n {
                word[pos - 1] += 1;
                break;
            }
            word[pos - 1] = 1;
            pos -= 1;
        }
        if pos == 0 {
            return out;
        }
    }
}

// ---------------------------------------------------------------------------
// The bijection with nonexcedant signed permutations
// ---------------------------------------------------------------------------

/// Is `w` a signed permutation with `w(i) <= i` for every window position and
/// a strictly negative last entry?  These are exactly the signed permutations
/// in the image of the type-B wire map on maximal staircase Le-diagrams whose
/// bottom box is a `+`, and they are counted by the Fubini numbers.
pub fn is_nonexcedant(w: &SignedPermutation) -> bool {
    let n = w.n();
    n > 0
        && w.window().iter().enumerate().all(|(i, &v)| v <= i as i64 + 1)
        && w.window()[n - 1] < 0
}

/// The bijection from nonexcedant signed permutations (negative last entry)
/// to preference functions.
///
/// The negative entries, rank-normalised, fill the first-occurrence
/// positions; each positive entry `w(i)` forces the repeat `p_{i+1} = p_{w(i)}`.
pub fn alpha(w: &SignedPermutation) -> Result<PreferenceFunction> {
    if !is_nonexcedant(w) {
        return Err(Error::Domain(format!(
            "{w} is not nonexcedant with a negative last entry"
        )));
    }
    let n = w.n();
    let win = w.window();
    let positives: Vec<usize> = (1..=n).filter(|&i| win[i - 1] > 0).collect();
    let first_positions: Vec<usize> = (1..=n).filter(|p| !positives.contains(&(p - 1))).collect();
    // Rank-normalise the absolute values of the negative entries, kept in
    // window order.
    let negs: Vec<i64> = win.iter().filter(|&&v| v < 0).map(|&v| -v).collect();
    let mut sorted = negs.clone();
    sorted.sort_unstable();
    let ranks: Vec<usize> = negs
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() + 1)
        .collect();
    debug_assert_eq!(first_positions.len(), ranks.len());
    let mut word = vec![0usize; n];
    for (slot, &pos) in first_positions.iter().enumerate() {
        word[pos - 1] = ranks[slot];
    }
    for &i in &positives {
        // w(i) <= i, so the referenced entry is already set.
        word[i] = word[win[i - 1] as usize - 1];
    }
    PreferenceFunction::new(word)
}

/// Inverse of [`alpha`].
///
/// First-occurrence positions recover the negative entries (rank order), and
/// each repeated value at position `i + 1` pins `w(i)` to the closest equal
/// value on its left.
pub fn alpha_inverse(p: &PreferenceFunction) -> SignedPermutation {
    let n = p.len();
    let word = p.word();
    let mut window = vec![0i64; n];
    let mut last_seen: HashMap<usize, usize> = HashMap::new();
    let mut first_positions: Vec<usize> = Vec::new();
    let mut pinned: Vec<usize> = Vec::new();
    for pos in 1..=n {
        let v = word[pos - 1];
        if let Some(&prev) = last_seen.get(&v) {
            window[pos - 2] = prev as i64;
            pinned.push(prev);
        } else {
            first_positions.push(pos);
        }
        last_seen.insert(v, pos);
    }
    let free: Vec<usize> = (1..=n).filter(|x| !pinned.contains(x)).collect();
    let unfilled: Vec<usize> = (1..=n).filter(|&i| window[i - 1] == 0).collect();
    debug_assert_eq!(unfilled.len(), first_positions.len());
    for (slot, &pos) in unfilled.iter().enumerate() {
        let rank = word[first_positions[slot] - 1];
        window[pos - 1] = -(free[rank - 1] as i64);
    }
    SignedPermutation::new(window).expect("alpha_inverse always yields a signed permutation")
}

// ---------------------------------------------------------------------------
// The staircase wiring grid
// ---------------------------------------------------------------------------

/// Which way a wire is currently travelling through the staircase grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Heading {
    South,
    West,
}

/// Partially filled staircase wiring grid with `n` rows.
///
/// Rows `a = 1 ..= n` run top-down with exits `a_W` on the west border;
/// the fillable boxes are `(a, b)` with `a < b <= n`, displayed with column
/// `b = n` leftmost and column labels decreasing towards the east; the
/// diagonal box `(a, a)` closes row `a` on the east and is drawn as `*`.
/// A `+` (and the diagonal `*`) acts as a pair of wire elbows, a `0` as a
/// crossing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StairGrid {
    n: usize,
    cells: Vec<Option<Filling>>,
}

impl StairGrid {
    /// An empty grid with rows `1 ..= n`.
    pub fn new(n: usize) -> StairGrid {
        StairGrid {
            n,
            cells: vec![None; n * n],
        }
    }

    /// Number of rows.
    pub fn n(&self) -> usize {
        self.n
    }

    fn index(&self, a: usize, b: usize) -> usize {
        debug_assert!(1 <= a && a < b && b <= self.n, "({a}, {b}) is not a box");
        (a - 1) * self.n + (b - 1)
    }

    /// Filling of box `(a, b)`, or `None` while still empty.
    pub fn get(&self, a: usize, b: usize) -> Option<Filling> {
        self.cells[self.index(a, b)]
    }

    /// Fill box `(a, b)`.
    pub fn set(&mut self, a: usize, b: usize, f: Filling) {
        let i = self.index(a, b);
        debug_assert!(self.cells[i].is_none(), "box ({a}, {b}) is already filled");
        self.cells[i] = Some(f);
    }

    /// All fillable boxes `(a, b)` in row-major order.
    pub fn boxes(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (1..=self.n).flat_map(move |a| (a + 1..=self.n).map(move |b| (a, b)))
    }

    /// Are all fillable boxes of row `a` filled?  (Row `n` has no boxes and
    /// counts as complete.)
    pub fn row_complete(&self, a: usize) -> bool {
        (a + 1..=self.n).all(|b| self.get(a, b).is_some())
    }

    /// Are all fillable boxes of column `b` filled?
    pub fn column_complete(&self, b: usize) -> bool {
        (1..b).all(|a| self.get(a, b).is_some())
    }

    fn row_has_plus(&self, a: usize) -> bool {
        (a + 1..=self.n).any(|b| self.get(a, b) == Some(Filling::Plus))
    }

    /// Column of the displayed-rightmost `+` of row `a` (the smallest column
    /// label carrying a `+`).
    fn rightmost_plus(&self, a: usize) -> Option<usize> {
        (a + 1..=self.n).find(|&b| self.get(a, b) == Some(Filling::Plus))
    }

    fn row_filled_with_zeros(&self, a: usize) -> bool {
        (a + 1..=self.n).all(|b| self.get(a, b) == Some(Filling::Zero))
    }

    /// Is every filled box of row `a` a `0` with exactly one box still empty?
    fn row_one_empty_rest_zeros(&self, a: usize) -> bool {
        let mut empty = 0usize;
        for b in a + 1..=self.n {
            match self.get(a, b) {
                None => empty += 1,
                Some(Filling::Zero) => {}
                Some(Filling::Plus) => return false,
            }
        }
        empty == 1
    }

    /// Is the whole grid filled?
    pub fn is_complete(&self) -> bool {
        (1..=self.n).all(|a| self.row_complete(a))
    }

    /// Rows that contain at least one box and are completely filled with
    /// `0`s.  (The boxless row `n` never qualifies: its wire must carry a
    /// negative sign.)
    pub fn zero_rows(&self) -> Vec<usize> {
        (1..self.n).filter(|&a| self.row_filled_with_zeros(a)).collect()
    }

    /// The three forbidden-pattern conditions for maximal `(D_n, n)`
    /// Le-diagrams, phrased on grid coordinates (larger column label = further
    /// west).  Unfilled boxes never participate, so the predicate is also
    /// meaningful for the intermediate states of [`psi`].
    pub fn satisfies_le_conditions(&self) -> bool {
        let plus = |a: usize, b: usize| self.get(a, b) == Some(Filling::Plus);
        let zero = |a: usize, b: usize| self.get(a, b) == Some(Filling::Zero);
        for (a, b) in self.boxes() {
            if !zero(a, b) {
                continue;
            }
            // (1) a 0 with a + anywhere below it in its column and a +
            //     anywhere west of it in its row
            if (a + 1..b).any(|r| plus(r, b)) && (b + 1..=self.n).any(|c| plus(a, c)) {
                return false;
            }
            // (2) a 0 at (a, b), a + west of it at (a, b1), and a + at
            //     (b, b2) with b2 > b1
            // (3) a 0 at (a, b), a + at (a, b1), a + at (b, b1), and a +
            //     at (t, b3) with a < t < b and b3 > b1
            for b1 in b + 1..=self.n {
                if !plus(a, b1) {
                    continue;
                }
                if (b1 + 1..=self.n).any(|b2| plus(b, b2)) {
                    return false;
                }
                if b1 > b
                    && plus(b, b1)
                    && (a + 1..b).any(|t| (b1 + 1..=self.n).any(|b3| plus(t, b3)))
                {
                    return false;
                }
            }
        }
        true
    }

    /// Frozen ASCII rendering: a header of north labels `bN` (west to east),
    /// then one line per row with its west label `aW`, the fillings (`0`,
    /// `+`, or `.` while empty), and the closing diagonal `*`.
    pub fn to_ascii(&self) -> String {
        let mut s = String::from("    ");
        for b in (1..=self.n).rev() {
            s.push_str(&format!("{:>4}", format!("{b}N")));
        }
        s.push('\n');
        for a in 1..=self.n {
            s.push_str(&format!("{:>3} ", format!("{a}W")));
            for b in (a..=self.n).rev() {
                let glyph = if b == a {
                    '*'
                } else {
                    match self.get(a, b) {
                        None => '.',
                        Some(Filling::Zero) => '0',
                        Some(Filling::Plus) => '+',
                    }
                };
                s.push_str(&format!("{glyph:>4}"));
            }
            s.push('\n');
        }
        s
    }

    /// Build a grid from one string per fillable row (rows `1 ..= n-1`,
    /// columns west to east, glyphs `0`, `+`, `.`); `n` is inferred.
    pub fn from_rows(rows: &[&str]) -> Result<StairGrid> {
        let n = rows.len() + 1;
        let mut g = StairGrid::new(n);
        for (a, row) in rows.iter().enumerate().map(|(i, r)| (i + 1, r)) {
            let glyphs: Vec<char> = row.chars().filter(|c| !c.is_whitespace()).collect();
            if glyphs.len() != n - a {
                return Err(Error::InvalidInput(format!(
                    "row {a} has {} glyphs, expected {}",
                    glyphs.len(),
                    n - a
                )));
            }
            for (k, &c) in glyphs.iter().enumerate() {
                let b = n - k;
                match c {
                    '0' => g.set(a, b, Filling::Zero),
                    '+' => g.set(a, b, Filling::Plus),
                    '.' => {}
                    _ => {
                        return Err(Error::InvalidInput(format!(
                            "bad glyph {c:?} in row {a}"
                        )))
                    }
                }
            }
        }
        Ok(g)
    }

    /// View a maximal-shape `(D_n, n)` diagram as a staircase grid
    /// (poset column `c` sits at grid column `b = n + 1 - c`).
    pub fn from_diagram(d: &OPlusDiagram) -> Result<StairGrid> {
        let poset = d.poset();
        if poset.family() != Family::D || poset.j() != poset.n() {
            return Err(Error::UnsupportedType(format!(
                "the staircase wiring grid is defined for (D_n, n), not {}",
                poset.type_name()
            )));
        }
        let n = poset.n();
        if d.ideal().size() != poset.num_boxes() {
            return Err(Error::Domain(
                "the wiring grid needs the maximal (staircase) shape".into(),
            ));
        }
        let mut g = StairGrid::new(n);
        for (i, pb) in poset.boxes().iter().enumerate() {
            g.set(pb.row, n + 1 - pb.col, d.filling(i).unwrap());
        }
        Ok(g)
    }

    /// Materialise a complete grid as a maximal-shape `(D_n, n)` diagram.
    pub fn to_diagram(&self) -> Result<OPlusDiagram> {
        if !self.is_complete() {
            return Err(Error::InvalidInput("the grid is not completely filled".into()));
        }
        let poset = CominusculePoset::new(Family::D, self.n, self.n)?;
        let ideal = poset.maximal_ideal();
        let mut plus_mask = 0u64;
        for (i, pb) in poset.boxes().iter().enumerate() {
            if self.get(pb.row, self.n + 1 - pb.col) == Some(Filling::Plus) {
                plus_mask |= 1 << i;
            }
        }
        OPlusDiagram::new(ideal, plus_mask)
    }
}

// ---------------------------------------------------------------------------
// The forward wire map on grids
// ---------------------------------------------------------------------------

/// Trace the wire entering at `i_W` east through a complete grid to its exit
/// on the north border, treating `+`/`*` as elbows and `0` as a crossing.
fn trace_west_wire(g: &StairGrid, i: usize) -> usize {
    let mut a = i;
    let mut b = g.n() + 1;
    let mut east = true; // otherwise heading north
    loop {
        if east {
            b -= 1;
            if b == a || g.get(a, b) == Some(Filling::Plus) {
                east = false;
            }
        } else {
            a -= 1;
            if a == 0 {
                return b;
            }
            if g.get(a, b) == Some(Filling::Plus) {
                east = true;
            }
        }
    }
}

/// The signed permutation carried by the wires of a complete staircase grid:
/// wires travel from the west border to the north border, and entry `i` is
/// positive exactly when row `i` is a nonempty all-zero row.
pub fn grid_permutation(g: &StairGrid) -> Result<SignedPermutation> {
    if !g.is_complete() {
        return Err(Error::InvalidInput("the grid is not completely filled".into()));
    }
    let n = g.n();
    let zero_rows = g.zero_rows();
    let mut window = vec![0i64; n];
    for i in 1..=n {
        let col = trace_west_wire(g, i) as i64;
        window[i - 1] = if zero_rows.contains(&i) { col } else { -col };
    }
    SignedPermutation::new(window)
}

/// Forward wiring bijection on complete staircase grids: read off the signed
/// permutation and apply [`alpha`].  On Le-diagrams this inverts [`psi`]; on
/// arbitrary complete fillings it is still well-defined (many-to-one) and the
/// image is always atomic.
pub fn phi_d_grid(g: &StairGrid) -> Result<PreferenceFunction> {
    let p = alpha(&grid_permutation(g)?)?;
    debug_assert!(p.is_atomic(), "the wire map must produce atomic words");
    Ok(p)
}

/// Forward bijection from maximal `(D_n, n)` Le-diagrams to atomic preference
/// functions.
pub fn phi_d(d: &OPlusDiagram) -> Result<PreferenceFunction> {
    phi_d_grid(&StairGrid::from_diagram(d)?)
}

// ---------------------------------------------------------------------------
// The inverse path-construction algorithm
// ---------------------------------------------------------------------------

/// Which rule closed the construction of a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum PathCase {
    Z,
    A,
    B,
    C,
}

struct PsiRun {
    grid: StairGrid,
    /// Boxes newly filled by the path currently under construction.
    new_boxes: Vec<(usize, usize)>,
}

impl PsiRun {
    fn new(n: usize) -> PsiRun {
        PsiRun {
            grid: StairGrid::new(n),
            new_boxes: Vec::new(),
        }
    }

    fn fill(&mut self, a: usize, b: usize, f: Filling) {
        self.grid.set(a, b, f);
        self.new_boxes.push((a, b));
    }

    /// Follow the wire from the corner `(a, b)` through the existing grid,
    /// filling boxes it crosses with `0`s, until it exits on the west border;
    /// returns the exit row.
    fn follow_and_fill(&mut self, mut a: usize, mut b: usize, mut heading: Heading) -> usize {
        loop {
            match heading {
                Heading::South => {
                    a += 1;
                    if a == b {
                        heading = Heading::West; // bounced off the diagonal
                        continue;
                    }
                    match self.grid.get(a, b) {
                        None => self.fill(a, b, Filling::Zero),
                        Some(Filling::Zero) => {}
                        Some(Filling::Plus) => heading = Heading::West,
                    }
                }
                Heading::West => {
                    b += 1;
                    if b > self.grid.n() {
                        return a;
                    }
                    match self.grid.get(a, b) {
                        None => self.fill(a, b, Filling::Zero),
                        Some(Filling::Zero) => {}
                        Some(Filling::Plus) => heading = Heading::South,
                    }
                }
            }
        }
    }

    /// Head south from row `a` to row `to` in column `b`, filling empty boxes
    /// with `0`s; the stretch must be free of `+`s.
    fn march_south(&mut self, a: usize, to: usize, b: usize) {
        for r in a + 1..to {
            match self.grid.get(r, b) {
                None => self.fill(r, b, Filling::Zero),
                Some(Filling::Zero) => {}
                Some(Filling::Plus) => {
                    panic!("unexpected + at ({r}, {b}) while heading south to ({to}, {b})")
                }
            }
        }
    }

    /// Head west from column `b` to column `to` in row `a`, filling empty
    /// boxes with `0`s; the stretch must be free of `+`s.
    fn march_west(&mut self, a: usize, b: usize, to: usize) {
        for c in b + 1..to {
            match self.grid.get(a, c) {
                None => self.fill(a, c, Filling::Zero),
                Some(Filling::Zero) => {}
                Some(Filling::Plus) => {
                    panic!("unexpected + at ({a}, {c}) while heading west to ({a}, {to})")
                }
            }
        }
    }

    fn place_plus(&mut self, a: usize, b: usize) {
        assert!(
            self.grid.get(a, b).is_none(),
            "new + at ({a}, {b}) must land on an empty box"
        );
        self.fill(a, b, Filling::Plus);
    }

    /// Construct the path from `i_N`, which must exit at `i_star_W`.
    ///
    /// The path heads south; a new `+` turns it west and an existing corner
    /// `+` turns it back south.  Where the next new `+` goes is decided by
    /// the mutually exclusive cases Z(a)-Z(d), A, B, C and D, tested in that
    /// order.
    fn build_path(&mut self, i: usize, w: &SignedPermutation, w_inv: &SignedPermutation) {
        self.new_boxes.clear();
        let n = self.grid.n();
        let i_star = w_inv.window()[i - 1].unsigned_abs() as usize;
        let mut a = 0usize;
        let mut b = i;
        let mut closing = PathCase::Z;
        loop {
            // Case Z(b): everything below the corner row is complete, so the
            // remaining course is forced by the existing grid.
            if (a + 1..=n).all(|r| self.grid.row_complete(r)) {
                break;
            }
            // The topmost row strictly between the corner row and the
            // diagonal row that already carries a +, and its rightmost +.
            let target = (a + 1..b)
                .find(|&r| self.grid.row_has_plus(r))
                .map(|r| (r, self.grid.rightmost_plus(r).unwrap()));
            if let Some((_, bp)) = target {
                debug_assert!(bp >= b, "a + east of the corner column forces case Z(b)");
            }
            let guard_za = target.is_none() && i_star >= b;
            let guard_zc = target == Some((i_star, b));
            let guard_zd = matches!(target, Some((ap, _))
                if i_star > ap && (ap..=n).all(|r| self.grid.row_complete(r)));
            let guard_a = match target {
                Some((ap, _)) => i_star < ap,
                None => i_star < b,
            };
            let guard_b = target.is_some()
                && i_star == b
                && (w_inv.window()[i - 1] > 0 || self.grid.row_filled_with_zeros(b));
            let guard_c = target.is_some()
                && i_star > b
                && w.window()[b - 1] < 0
                && self.grid.row_one_empty_rest_zeros(b);
            let in_z = guard_za || guard_zc || guard_zd;
            assert!(
                u8::from(in_z) + u8::from(guard_a) + u8::from(guard_b) + u8::from(guard_c) <= 1,
                "the path-construction case guards must be mutually exclusive"
            );
            if in_z {
                // No further new +s; the existing grid routes the wire.
                break;
            } else if guard_a {
                // The last new + goes at (i_star, b) and the wire exits west.
                self.march_south(a, i_star, b);
                self.place_plus(i_star, b);
                a = i_star;
                closing = PathCase::A;
                break;
            } else if guard_b {
                // Straight to the diagonal, then west along row b (filling it
                // with 0s) to the exit.
                closing = PathCase::B;
                break;
            } else if guard_c {
                // To the diagonal, west through the 0s of row b, a + in its
                // unique empty box (sharing the corner's column), then south.
                let (_, bp) = target.unwrap();
                self.march_south(a, b, b);
                assert!(
                    self.grid.get(b, bp).is_none(),
                    "case C: the unique empty box of row {b} must be ({b}, {bp})"
                );
                for c in b + 1..bp {
                    debug_assert_eq!(self.grid.get(b, c), Some(Filling::Zero));
                }
                self.place_plus(b, bp);
                a = b;
                b = bp;
                closing = PathCase::C;
                break;
            } else {
                // Case D: a new + below the corner turns the path west until
                // it reaches the existing corner + and heads south again.
                let (ap, bp) = target.unwrap();
                self.march_south(a, ap, b);
                self.place_plus(ap, b);
                self.march_west(ap, b, bp);
                debug_assert_eq!(self.grid.get(ap, bp), Some(Filling::Plus));
                a = ap;
                b = bp;
            }
        }
        let heading = match closing {
            // A new + stops a south-bound wire (case A) and sends it west; a
            // west-bound wire meeting the special + of case C turns south.
            PathCase::A => Heading::West,
            PathCase::Z | PathCase::B | PathCase::C => Heading::South,
        };
        let exit = self.follow_and_fill(a, b, heading);
        assert_eq!(
            exit, i_star,
            "the path from {i}_N must exit at {i_star}_W, not {exit}_W"
        );
        if closing == PathCase::B {
            assert_eq!(exit, b, "case B must exit along the diagonal row");
        }
        #[cfg(debug_assertions)]
        self.check_invariants(i, closing);
    }

    /// The intermediate-state invariants of the construction, checked after
    /// every completed path (debug builds only).
    #[cfg(debug_assertions)]
    fn check_invariants(&self, i: usize, closing: PathCase) {
        let g = &self.grid;
        let n = g.n();
        let corner = |a: usize, b: usize| {
            g.get(a, b) == Some(Filling::Plus)
                && !g.row_complete(a)
                && g.rightmost_plus(a) == Some(b)
        };
        // At most one new box per row, except for the all-zero row of case B.
        let mut per_row = vec![0usize; n + 1];
        for &(r, _) in &self.new_boxes {
            per_row[r] += 1;
        }
        for (r, &count) in per_row.iter().enumerate().skip(1) {
            assert!(
                count <= 1 || (closing == PathCase::B && g.row_filled_with_zeros(r)),
                "path {i} filled {count} boxes in row {r}"
            );
        }
        // A complete row is all zeros, or everything below it is complete.
        for a in 1..=n {
            if g.row_complete(a) && !g.row_filled_with_zeros(a) {
                assert!(
                    (a + 1..=n).all(|r| g.row_complete(r)),
                    "row {a} is complete but a row below it is not"
                );
            }
        }
        // Column trichotomy: columns east of the last entry are empty; a
        // column has at most one corner +; below a corner + only complete
        // rows, east of it only complete columns; a corner-free column in
        // range is complete.
        for bcol in 1..i {
            assert!(
                (1..bcol).all(|a| g.get(a, bcol).is_none()),
                "column {bcol} east of the current entry must be empty"
            );
        }
        for bcol in 1..=n {
            let corners: Vec<usize> = (1..bcol).filter(|&a| corner(a, bcol)).collect();
            assert!(corners.len() <= 1, "column {bcol} has two corner +s");
            if let Some(&ac) = corners.first() {
                for r in ac + 1..bcol {
                    if g.get(r, bcol).is_some() {
                        assert!(g.row_complete(r), "filled box under a corner + in an incomplete row");
                    }
                }
                for c in ac + 1..bcol {
                    if g.get(ac, c).is_some() {
                        assert!(g.column_complete(c), "filled box east of a corner + in an incomplete column");
                    }
                }
            } else if bcol >= i {
                assert!(
                    g.column_complete(bcol),
                    "corner-free column {bcol} must be complete"
                );
            }
        }
        // Everything strictly north-west of any + is filled, and corner +s
        // run from north-east to south-west.
        let mut corners: Vec<(usize, usize)> = Vec::new();
        for (pa, pb) in g.boxes() {
            if g.get(pa, pb) != Some(Filling::Plus) {
                continue;
            }
            for r in 1..pa {
                for c in pb + 1..=n {
                    assert!(
                        g.get(r, c).is_some(),
                        "box ({r}, {c}) north-west of the + at ({pa}, {pb}) is empty"
                    );
                }
            }
            if corner(pa, pb) {
                corners.push((pa, pb));
            }
        }
        corners.sort_unstable();
        for pair in corners.windows(2) {
            assert!(
                pair[0].1 < pair[1].1,
                "corner +s must descend towards the south-west"
            );
        }
        // The partial grid never violates the Le-diagram conditions.
        assert!(
            g.satisfies_le_conditions(),
            "intermediate grid violates the (D_n, n) pattern conditions"
        );
    }
}

/// Inverse of [`phi_d_grid`]: grow the staircase grid path by path, each wire
/// hugging the north-west border as closely as the existing grid allows.
///
/// Rejects non-atomic input before doing any grid work.
pub fn psi(p: &PreferenceFunction) -> Result<StairGrid> {
    run_psi(p, false).map(|(g, _)| g)
}

/// Like [`psi`], but also returns the trace of every intermediate grid in
/// the frozen ASCII format, labelled from the first path to the last.
pub fn psi_traced(p: &PreferenceFunction) -> Result<(StairGrid, String)> {
    run_psi(p, true).map(|(g, t)| (g, t.unwrap()))
}

fn run_psi(p: &PreferenceFunction, want_trace: bool) -> Result<(StairGrid, Option<String>)> {
    if !p.is_atomic() {
        return Err(Error::Domain(format!(
            "{p} is not atomic: a strict leading subword holds all of 1..=j"
        )));
    }
    let n = p.len();
    let w = alpha_inverse(p);
    let w_inv = w.inverse();
    let mut run = PsiRun::new(n);
    let mut trace = want_trace.then(String::new);
    for i in (1..=n).rev() {
        run.build_path(i, &w, &w_inv);
        if let Some(t) = trace.as_mut() {
            t.push_str(&format!("D_{i}:\n"));
            t.push_str(&run.grid.to_ascii());
        }
    }
    assert!(run.grid.is_complete(), "all wires placed but boxes remain empty");
    debug_assert_eq!(
        run.grid.zero_rows(),
        (1..=n).filter(|&j| w.window()[j - 1] > 0).collect::<Vec<_>>(),
        "all-zero rows must match the positive entries of the signed permutation"
    );
    Ok((run.grid, trace))
}

// ---------------------------------------------------------------------------
// The type-B counterpart
// ---------------------------------------------------------------------------

/// Maximal `(B_n, n)` Le-diagrams whose bottom box is a `+` correspond to
/// preference functions of length `n`: the wire map gives a nonexcedant
/// signed permutation with negative last entry, and [`alpha`] finishes.
pub fn max_b_le_to_preference(d: &OPlusDiagram) -> Result<PreferenceFunction> {
    let poset = d.poset();
    if poset.family() != Family::B || poset.j() != poset.n() {
        return Err(Error::UnsupportedType(format!(
            "expected a (B_n, n) staircase diagram, not {}",
            poset.type_name()
        )));
    }
    let n = poset.n();
    if d.ideal().size() != poset.num_boxes() {
        return Err(Error::Domain("the diagram must have the maximal shape".into()));
    }
    if !d.is_pds() {
        return Err(Error::Domain("the filling is not a Le-diagram".into()));
    }
    let bottom = poset.box_at(n, 1).unwrap();
    if d.filling(bottom) != Some(Filling::Plus) {
        return Err(Error::Domain(
            "the bottom box must be a + for the preference-function bijection".into(),
        ));
    }
    let dec = phi3_b(d)?;
    debug_assert!(
        dec.fixed_points().iter().all(|&(_, cw)| cw),
        "fixed points of maximal-shape images are clockwise"
    );
    let pi = SignedPermutation::new(dec.window().to_vec())?;
    alpha(&pi)
}

/// Inverse of [`max_b_le_to_preference`].
pub fn preference_to_max_b_le(p: &PreferenceFunction) -> Result<OPlusDiagram> {
    let n = p.len();
    let poset = CominusculePoset::new(Family::B, n, n)?;
    let w = alpha_inverse(p);
    let clockwise: Vec<usize> = (1..=n).filter(|&i| w.window()[i - 1] == i as i64).collect();
    let dec = DecoratedPermutation::new(w.window().to_vec(), &clockwise)?;
    let d = diagram_from_decorated_b(&poset, &dec)?;
    debug_assert_eq!(d.ideal().size(), poset.num_boxes());
    debug_assert_eq!(d.filling(poset.box_at(n, 1).unwrap()), Some(Filling::Plus));
    Ok(d)
}

// ---------------------------------------------------------------------------

#[cfg(test)]
mod tests {
    use super::*;

    const FUBINI: [usize; 6] = [1, 3, 13, 75, 541, 4683];
    const ATOMIC: [usize; 6] = [1, 2, 8, 48, 368, 3376];

    fn pf(word: &[usize]) -> PreferenceFunction {
        PreferenceFunction::new(word.to_vec()).unwrap()
    }

    fn signed_permutations(n: usize) -> Vec<SignedPermutation> {
        fn perms(values: &mut Vec<i64>, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
            if values.is_empty() {
                out.push(prefix.clone());
                return;
            }
            for i in 0..values.len() {
                let v = values.remove(i);
                prefix.push(v);
                perms(values, prefix, out);
                prefix.pop();
                values.insert(i, v);
            }
        }
        let mut lines = Vec::new();
        perms(&mut (1..=n as i64).collect(), &mut Vec::new(), &mut lines);
        let mut out = Vec::new();
        for line in lines {
            for mask in 0u32..(1 << n) {
                let window: Vec<i64> = line
                    .iter()
                    .enumerate()
                    .map(|(i, &v)| if mask >> i & 1 == 1 { -v } else { v })
                    .collect();
                out.push(SignedPermutation::new(window).unwrap());
            }
        }
        out
    }

    fn nonexcedant(n: usize) -> Vec<SignedPermutation> {
        signed_permutations(n).into_iter().filter(is_nonexcedant_ref).collect()
    }

    fn is_nonexcedant_ref(w: &SignedPermutation) -> bool {
        is_nonexcedant(w)
    }

    #[test]
    fn preference_validation_and_atomicity() {
        assert!(is_preference_function(&[1, 1, 1]));
        assert!(is_preference_function(&[4, 6, 3, 1, 7, 5, 7, 2, 1]));
        assert!(!is_preference_function(&[2, 2]));
        assert!(!is_preference_function(&[]));
        assert!(pf(&[1]).is_atomic());
        assert!(!pf(&[1, 2]).is_atomic());
        assert!(pf(&[2, 1]).is_atomic());
        assert!(pf(&[1, 1]).is_atomic());
        assert!(pf(&[4, 6, 3, 1, 7, 5, 7, 2, 1]).is_atomic());
        for n in 1..=5 {
            let all = all_preference_functions(n);
            assert_eq!(all.len(), FUBINI[n - 1]);
            let atomic = all.iter().filter(|p| p.is_atomic()).count();
            assert_eq!(atomic, ATOMIC[n - 1]);
        }
    }

    #[test]
    fn display_and_parse_round_trip() {
        let p = pf(&[4, 6, 3, 1, 7, 5, 7, 2, 1]);
        assert_eq!(p.to_string(), "4 6 3 1 7 5 7 2 1");
        assert_eq!(PreferenceFunction::parse("4 6 3 1 7 5 7 2 1").unwrap(), p);
        assert_eq!(PreferenceFunction::parse("4,6,3,1,7,5,7,2,1").unwrap(), p);
        assert!(PreferenceFunction::parse("2 2").is_err());
        assert!(PreferenceFunction::parse("one").is_err());
    }

    #[test]
    fn alpha_worked_example() {
        let w = SignedPermutation::new(vec![-6, -8, -3, -1, -9, 5, -7, 4, -2]).unwrap();
        assert_eq!(alpha(&w).unwrap(), pf(&[4, 6, 3, 1, 7, 5, 7, 2, 1]));
        assert_eq!(alpha_inverse(&pf(&[4, 6, 3, 1, 7, 5, 7, 2, 1])), w);
        let trivial = SignedPermutation::new(vec![-1]).unwrap();
        assert_eq!(alpha(&trivial).unwrap(), pf(&[1]));
        assert_eq!(alpha_inverse(&pf(&[1])), trivial);
        // positive last entry, and an excedance, are both rejected
        assert!(alpha(&SignedPermutation::new(vec![1, -3, 2]).unwrap()).is_err());
        assert!(alpha(&SignedPermutation::new(vec![2, 1, -3]).unwrap()).is_err());
    }

    #[test]
    fn alpha_is_a_bijection_on_small_ranks() {
        for n in 1..=4 {
            let dom = nonexcedant(n);
            assert_eq!(dom.len(), FUBINI[n - 1], "domain count at n = {n}");
            let mut images: Vec<PreferenceFunction> =
                dom.iter().map(|w| alpha(w).unwrap()).collect();
            for (w, p) in dom.iter().zip(&images) {
                assert_eq!(&alpha_inverse(p), w, "alpha_inverse(alpha(w)) = w");
            }
            images.sort();
            images.dedup();
            assert_eq!(images.len(), dom.len(), "alpha is injective");
        }
        for n in 1..=5 {
            for p in all_preference_functions(n) {
                assert_eq!(alpha(&alpha_inverse(&p)).unwrap(), p, "alpha(alpha_inverse(p)) = p");
            }
        }
    }

    #[test]
    fn psi_worked_example() {
        let p = pf(&[4, 6, 3, 1, 7, 5, 7, 2, 1]);
        let (grid, trace) = psi_traced(&p).unwrap();
        let expected = StairGrid::from_rows(&[
            "000+++++",
            "0++0+++",
            "0000+0",
            "0000+",
            "+++0",
            "000",
            "+0",
            "0",
        ])
        .unwrap();
        assert_eq!(grid, expected);
        // Nine intermediate grids, the last path adding nothing new.
        let blocks: Vec<&str> = trace.split("D_").filter(|s| !s.is_empty()).collect();
        assert_eq!(blocks.len(), 9);
        assert!(trace.starts_with("D_9:\n"));
        let filled = |s: &str| s.matches(['0', '+']).count();
        let counts: Vec<usize> = blocks.iter().map(|b| filled(b)).collect();
        assert_eq!(counts, [5, 7, 14, 15, 22, 29, 32, 36, 36]);
        let d2 = blocks[7].strip_prefix("2:\n").unwrap();
        let d1 = blocks[8].strip_prefix("1:\n").unwrap();
        assert_eq!(d2, d1, "the first wire adds no boxes here");
        assert_eq!(d2, expected.to_ascii());
        // Round trip, and the all-zero-row law.
        assert_eq!(phi_d_grid(&grid).unwrap(), p);
        assert_eq!(grid.zero_rows(), vec![6, 8]);
        let w = alpha_inverse(&p);
        assert_eq!(grid_permutation(&grid).unwrap(), w);
    }

    #[test]
    fn psi_round_trips_with_the_wire_map() {
        for n in 1..=5 {
            let mut seen = Vec::new();
            for p in all_preference_functions(n) {
                if !p.is_atomic() {
                    assert!(psi(&p).is_err(), "non-atomic input must be rejected");
                    continue;
                }
                let grid = psi(&p).unwrap();
                assert!(grid.is_complete());
                assert!(grid.satisfies_le_conditions(), "psi output is a Le-diagram");
                let w = alpha_inverse(&p);
                let zero: Vec<usize> =
                    (1..=n).filter(|&jj| w.window()[jj - 1] > 0).collect();
                assert_eq!(grid.zero_rows(), zero);
                assert_eq!(phi_d_grid(&grid).unwrap(), p, "phi_d(psi(p)) = p");
                seen.push(grid);
            }
            assert_eq!(seen.len(), ATOMIC[n - 1]);
            // ... and psi(phi_d(g)) = g on every maximal Le grid.
            let m = n * (n - 1) / 2;
            let mut le_grids = 0usize;
            for mask in 0u64..(1 << m) {
                let mut g = StairGrid::new(n);
                for (k, (a, b)) in g.boxes().collect::<Vec<_>>().into_iter().enumerate() {
                    let f = if mask >> k & 1 == 1 { Filling::Plus } else { Filling::Zero };
                    g.set(a, b, f);
                }
                let p = phi_d_grid(&g).unwrap();
                assert!(p.is_atomic(), "the wire map always lands on atomic words");
                if g.satisfies_le_conditions() {
                    le_grids += 1;
                    assert_eq!(psi(&p).unwrap(), g, "psi(phi_d(g)) = g");
                }
            }
            assert_eq!(le_grids, ATOMIC[n - 1], "Le-grid census at n = {n}");
        }
    }

    #[test]
    fn grid_and_poset_diagrams_agree() {
        let grid = StairGrid::from_rows(&[
            "000+++++",
            "0++0+++",
            "0000+0",
            "0000+",
            "+++0",
            "000",
            "+0",
            "0",
        ])
        .unwrap();
        let d = grid.to_diagram().unwrap();
        assert!(d.is_pds(), "the worked example is a Le-diagram");
        assert!(crate::pattern::satisfies_pattern(&d).unwrap());
        assert_eq!(StairGrid::from_diagram(&d).unwrap(), grid);
        assert_eq!(
            phi_d(&d).unwrap(),
            pf(&[4, 6, 3, 1, 7, 5, 7, 2, 1])
        );
        // psi lands on the same poset diagram.
        let back = psi(&pf(&[4, 6, 3, 1, 7, 5, 7, 2, 1])).unwrap();
        assert_eq!(back.to_diagram().unwrap().plus_mask(), d.plus_mask());
    }

    #[test]
    fn trivial_cases() {
        let one = pf(&[1]);
        let g = psi(&one).unwrap();
        assert_eq!(g.n(), 1);
        assert!(g.is_complete());
        assert_eq!(phi_d_grid(&g).unwrap(), one);
        assert!(psi(&pf(&[1, 2])).is_err());
        // All-ones input crosses the Z(a) boundary (no existing +, exit at
        // the diagonal row) at every step.
        for n in 2..=6 {
            let ones = pf(&vec![1; n]);
            let g = psi(&ones).unwrap();
            assert!(g.zero_rows().len() == n - 1 && g.satisfies_le_conditions());
            assert_eq!(phi_d_grid(&g).unwrap(), ones);
        }
    }

    #[test]
    fn staircase_ascii_format() {
        let mut g = StairGrid::new(3);
        g.set(1, 3, Filling::Zero);
        g.set(2, 3, Filling::Plus);
        assert_eq!(
            g.to_ascii(),
            "      3N  2N  1N\n 1W    0   .   *\n 2W    +   *\n 3W    *\n"
        );
    }

    #[test]
    fn type_b_staircase_bijection() {
        for n in 1..=3 {
            let poset = CominusculePoset::new(Family::B, n, n).unwrap();
            let ideal = poset.maximal_ideal();
            let bottom = poset.box_at(n, 1).unwrap();
            let mut members = Vec::new();
            for mask in 0u64..(1 << poset.num_boxes()) {
                let d = OPlusDiagram::new(ideal.clone(), mask).unwrap();
                if d.is_pds() && d.filling(bottom) == Some(Filling::Plus) {
                    members.push(d);
                }
            }
            assert_eq!(members.len(), FUBINI[n - 1], "bottom-+ Le census at n = {n}");
            let mut images: Vec<PreferenceFunction> = members
                .iter()
                .map(|d| max_b_le_to_preference(d).unwrap())
                .collect();
            for (d, p) in members.iter().zip(&images) {
                let back = preference_to_max_b_le(p).unwrap();
                assert_eq!(back.plus_mask(), d.plus_mask(), "round trip on the staircase");
            }
            images.sort();
            images.dedup();
            assert_eq!(images.len(), FUBINI[n - 1], "the image is all preference functions");
        }
        // n = 1: the unique member is the single + box, mapping to (1).
        let poset = CominusculePoset::new(Family::B, 1, 1).unwrap();
        let plus = OPlusDiagram::new(poset.maximal_ideal(), 1).unwrap();
        assert_eq!(max_b_le_to_preference(&plus).unwrap(), pf(&[1]));
        let zero = OPlusDiagram::new(poset.maximal_ideal(), 0).unwrap();
        assert!(max_b_le_to_preference(&zero).is_err(), "bottom 0 is rejected");
    }
}
