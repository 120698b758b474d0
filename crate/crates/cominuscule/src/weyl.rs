//! Root systems and Weyl groups for types `A`, `B`, `D`, `E6`, `E7`.
//!
//! A Weyl group element is stored as the permutation it induces on the set of
//! all roots.  This makes length, descents, reduced words, and the Bruhat
//! order cheap and uniform across types, and it scales to `W(E7)` elements
//! without ever enumerating that group.
//!
//! Roots are kept in exact integer coordinates: the usual realizations for
//! `A_n` (inside `Z^{n+1}`), `B_n` and `D_n` (inside `Z^n`), and coordinates
//! for `E6`/`E7` doubled so that every entry is an integer.  All pairings
//! `⟨β, α^∨⟩` are computed by exact division, which is asserted.

use crate::{Error, Result};
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

/// The five families of cominuscule Grassmannians handled by this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Family {
    A,
    B,
    D,
    E6,
    E7,
}

impl Family {
    /// Parse a family tag as used by the CLI (`a`, `b`, `d`, `e6`, `e7`).
    pub fn parse(s: &str) -> Result<Family> {
        match s.to_ascii_lowercase().as_str() {
            "a" => Ok(Family::A),
            "b" => Ok(Family::B),
            "d" => Ok(Family::D),
            "e6" => Ok(Family::E6),
            "e7" => Ok(Family::E7),
            other => Err(Error::UnsupportedType(format!(
                "unknown family '{other}' (expected a, b, d, e6, e7)"
            ))),
        }
    }

    /// Lower-case tag used in JSON output and CLI arguments.
    pub fn tag(&self) -> &'static str {
        match self {
            Family::A => "a",
            Family::B => "b",
            Family::D => "d",
            Family::E6 => "e6",
            Family::E7 => "e7",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.tag())
    }
}

/// A crystallographic root system with a fixed indexing of its roots.
///
/// Roots are indexed `0..2m`: indices `0..m` are the positive roots, with the
/// simple roots `α_1, ..., α_rank` at indices `0..rank`, and index `m + r` is
/// `-roots[r]`.  Reflection tables `refl[i][r]` give the index of
/// `s_{i+1}(β_r)` for each simple reflection.
pub struct RootSystem {
    family: Family,
    rank: usize,
    /// Number of positive roots.
    num_positive: usize,
    /// Integer coordinates of every root, `2 * num_positive` entries.
    roots: Vec<Vec<i64>>,
    /// `refl[i][r]` = index of the image of root `r` under `s_{i+1}`.
    refl: Vec<Vec<u32>>,
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// `⟨β, α^∨⟩ = 2 (β, α) / (α, α)`, asserted to be an exact integer.
fn pairing(beta: &[i64], alpha: &[i64]) -> i64 {
    let num = 2 * dot(beta, alpha);
    let den = dot(alpha, alpha);
    assert_eq!(num % den, 0, "non-integral Cartan pairing");
    num / den
}

fn simple_roots(family: Family, rank: usize) -> Result<Vec<Vec<i64>>> {
    let e = |dim: usize, i: usize| -> Vec<i64> {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v
    };
    let diff = |dim: usize, i: usize, k: usize| -> Vec<i64> {
        let mut v = vec![0i64; dim];
        v[i] = 1;
        v[k] = -1;
        v
    };
    match family {
        Family::A => {
            if rank < 1 {
                return Err(Error::UnsupportedType("type A requires rank >= 1".into()));
            }
            Ok((0..rank).map(|i| diff(rank + 1, i, i + 1)).collect())
        }
        Family::B => {
            if rank < 1 {
                return Err(Error::UnsupportedType("type B requires rank >= 1".into()));
            }
            let mut v: Vec<_> = (0..rank.saturating_sub(1))
                .map(|i| diff(rank, i, i + 1))
                .collect();
            v.push(e(rank, rank - 1)); // the short root α_rank
            Ok(v)
        }
        Family::D => {
            if rank < 2 {
                return Err(Error::UnsupportedType("type D requires rank >= 2".into()));
            }
            let mut v: Vec<_> = (0..rank - 1).map(|i| diff(rank, i, i + 1)).collect();
            let mut last = vec![0i64; rank];
            last[rank - 2] = 1;
            last[rank - 1] = 1; // α_rank = e_{rank-1} + e_rank
            v.push(last);
            Ok(v)
        }
        Family::E6 | Family::E7 => {
            // Coordinates doubled so that α_1 is integral; every root then has
            // squared length 8 and all pairings divide exactly.
            let a1 = vec![1, -1, -1, -1, -1, -1, -1, 1];
            let a2 = vec![2, 2, 0, 0, 0, 0, 0, 0];
            let chain = |k: usize| {
                let mut v = vec![0i64; 8];
                v[k - 1] = -2;
                v[k] = 2;
                v
            };
            let take = if family == Family::E6 { 6 } else { 7 };
            if rank != take {
                return Err(Error::UnsupportedType(format!(
                    "type {} has fixed rank {}",
                    family.tag(),
                    take
                )));
            }
            let mut v = vec![a1, a2];
            // α_3 = e_2 - e_1, α_4 = e_3 - e_2, ... (doubled)
            for k in 1..=(take - 2) {
                v.push(chain(k));
            }
            Ok(v)
        }
    }
}

fn expected_positive_count(family: Family, rank: usize) -> usize {
    match family {
        Family::A => rank * (rank + 1) / 2,
        Family::B => rank * rank,
        Family::D => rank * (rank - 1),
        Family::E6 => 36,
        Family::E7 => 63,
    }
}

impl RootSystem {
    /// Build the root system of the given family and rank.
    ///
    /// The rank is the number of simple roots; for `E6`/`E7` it must be 6/7.
    pub fn new(family: Family, rank: usize) -> Result<Arc<RootSystem>> {
        let simples = simple_roots(family, rank)?;
        // Close the simple roots under all simple reflections, tracking the
        // expansion of each root in the simple basis so that positivity is a
        // sign check on coefficients.
        let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut vecs: Vec<Vec<i64>> = Vec::new();
        let mut coeffs: Vec<Vec<i64>> = Vec::new();
        for (i, s) in simples.iter().enumerate() {
            index.insert(s.clone(), i);
            vecs.push(s.clone());
            let mut c = vec![0i64; rank];
            c[i] = 1;
            coeffs.push(c);
        }
        let mut head = 0;
        while head < vecs.len() {
            let v = vecs[head].clone();
            let c = coeffs[head].clone();
            for (i, alpha) in simples.iter().enumerate() {
                let p = pairing(&v, alpha);
                let image: Vec<i64> = v
                    .iter()
                    .zip(alpha)
                    .map(|(x, a)| x - p * a)
                    .collect();
                if !index.contains_key(&image) {
                    let mut ci = c.clone();
                    ci[i] -= p;
                    index.insert(image.clone(), vecs.len());
                    vecs.push(image);
                    coeffs.push(ci);
                }
            }
            head += 1;
        }
        // Partition into positive and negative roots and fix the final order:
        // simples first, then remaining positives by (height, coefficients).
        let mut positives: Vec<(Vec<i64>, Vec<i64>)> = Vec::new();
        for (v, c) in vecs.iter().zip(&coeffs) {
            let pos = c.iter().all(|&x| x >= 0);
            let neg = c.iter().all(|&x| x <= 0);
            assert!(pos != neg, "root with mixed-sign coefficients");
            if pos {
                positives.push((v.clone(), c.clone()));
            }
        }
        let m = positives.len();
        if m != expected_positive_count(family, rank) {
            return Err(Error::UnsupportedType(format!(
                "root closure produced {m} positive roots for {family}{rank}"
            )));
        }
        let height = |c: &[i64]| -> i64 { c.iter().sum() };
        positives.sort_by(|(va, ca), (vb, cb)| {
            let ha = if height(ca) == 1 { (0, position_of_simple(ca)) } else { (1, 0) };
            let hb = if height(cb) == 1 { (0, position_of_simple(cb)) } else { (1, 0) };
            ha.cmp(&hb)
                .then(height(ca).cmp(&height(cb)))
                .then(ca.cmp(cb))
                .then(va.cmp(vb))
        });
        let mut roots: Vec<Vec<i64>> = positives.iter().map(|(v, _)| v.clone()).collect();
        for r in 0..m {
            let negv: Vec<i64> = roots[r].iter().map(|x| -x).collect();
            roots.push(negv);
        }
        let pos_of: HashMap<Vec<i64>, u32> = roots
            .iter()
            .enumerate()
            .map(|(i, v)| (v.clone(), i as u32))
            .collect();
        let mut refl = Vec::with_capacity(rank);
        for alpha in &simples {
            let mut table = Vec::with_capacity(2 * m);
            for v in &roots {
                let p = pairing(v, alpha);
                let image: Vec<i64> =
                    v.iter().zip(alpha).map(|(x, a)| x - p * a).collect();
                table.push(pos_of[&image]);
            }
            refl.push(table);
        }
        Ok(Arc::new(RootSystem {
            family,
            rank,
            num_positive: m,
            roots,
            refl,
        }))
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Number of positive roots.
    pub fn num_positive(&self) -> usize {
        self.num_positive
    }

    /// Integer coordinates of root `r`.
    pub fn root(&self, r: usize) -> &[i64] {
        &self.roots[r]
    }

    /// Index of the simple root `α_label` (labels are 1-based).
    pub fn simple_index(&self, label: usize) -> usize {
        assert!(label >= 1 && label <= self.rank, "bad simple label {label}");
        label - 1
    }

    /// The identity element of the Weyl group.
    pub fn identity(self: &Arc<Self>) -> WeylElement {
        WeylElement {
            system: Arc::clone(self),
            perm: (0..2 * self.num_positive as u32).collect(),
        }
    }

    /// The simple reflection `s_label` (labels are 1-based).
    pub fn simple(self: &Arc<Self>, label: usize) -> WeylElement {
        let i = self.simple_index(label);
        WeylElement {
            system: Arc::clone(self),
            perm: self.refl[i].clone(),
        }
    }

    /// Product `s_{word[0]} s_{word[1]} ···` of simple reflections.
    pub fn from_word(self: &Arc<Self>, word: &[usize]) -> WeylElement {
        let mut w = self.identity();
        for &a in word {
            w = w.mul_simple_right(a);
        }
        w
    }

    /// All elements of the subgroup generated by the given simple labels,
    /// in breadth-first order from the identity.
    ///
    /// Only use this for subgroups known to be small.
    pub fn generate_subgroup(self: &Arc<Self>, labels: &[usize]) -> Vec<WeylElement> {
        let mut seen: HashMap<Vec<u32>, ()> = HashMap::new();
        let mut out = vec![self.identity()];
        seen.insert(out[0].key().to_vec(), ());
        let mut head = 0;
        while head < out.len() {
            let w = out[head].clone();
            for &a in labels {
                let next = w.mul_simple_right(a);
                if !seen.contains_key(next.key()) {
                    seen.insert(next.key().to_vec(), ());
                    out.push(next);
                }
            }
            head += 1;
        }
        out
    }
}

impl fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RootSystem({}{})", self.family, self.rank)
    }
}

fn position_of_simple(c: &[i64]) -> usize {
    c.iter().position(|&x| x == 1).unwrap()
}

/// An element of a Weyl group, stored as its permutation of all roots.
///
/// Equality and hashing use only the images of the simple roots, which
/// determine the element.  Elements of different root systems must never be
/// mixed; the arithmetic operations panic if they are.
#[derive(Clone)]
pub struct WeylElement {
    system: Arc<RootSystem>,
    perm: Vec<u32>,
}

impl WeylElement {
    /// The root system this element belongs to.
    pub fn system(&self) -> &Arc<RootSystem> {
        &self.system
    }

    /// Images of the simple roots — enough to identify the element.
    fn key(&self) -> &[u32] {
        &self.perm[..self.system.rank]
    }

    /// Index of the image of root `r` under this element.
    pub fn apply_root(&self, r: u32) -> u32 {
        self.perm[r as usize]
    }

    /// Coxeter length: the number of positive roots sent to negative roots.
    pub fn length(&self) -> usize {
        let m = self.system.num_positive;
        (0..m).filter(|&r| self.perm[r] as usize >= m).count()
    }

    pub fn is_identity(&self) -> bool {
        self.key()
            .iter()
            .enumerate()
            .all(|(i, &x)| x as usize == i)
    }

    /// Whether `s_label` is a right descent, i.e. `ℓ(w s) < ℓ(w)`.
    pub fn is_right_descent(&self, label: usize) -> bool {
        let i = self.system.simple_index(label);
        self.perm[i] as usize >= self.system.num_positive
    }

    /// `self * other` (so `other` acts first on roots).
    pub fn multiply(&self, other: &WeylElement) -> WeylElement {
        assert!(
            Arc::ptr_eq(&self.system, &other.system),
            "elements of different root systems"
        );
        let perm = other.perm.iter().map(|&r| self.perm[r as usize]).collect();
        WeylElement {
            system: Arc::clone(&self.system),
            perm,
        }
    }

    /// `self * s_label`.
    pub fn mul_simple_right(&self, label: usize) -> WeylElement {
        let i = self.system.simple_index(label);
        let table = &self.system.refl[i];
        let perm = table.iter().map(|&r| self.perm[r as usize]).collect();
        WeylElement {
            system: Arc::clone(&self.system),
            perm,
        }
    }

    /// `s_label * self`.
    pub fn mul_simple_left(&self, label: usize) -> WeylElement {
        let i = self.system.simple_index(label);
        let table = &self.system.refl[i];
        let perm = self.perm.iter().map(|&r| table[r as usize]).collect();
        WeylElement {
            system: Arc::clone(&self.system),
            perm,
        }
    }

    pub fn inverse(&self) -> WeylElement {
        let mut perm = vec![0u32; self.perm.len()];
        for (r, &img) in self.perm.iter().enumerate() {
            perm[img as usize] = r as u32;
        }
        WeylElement {
            system: Arc::clone(&self.system),
            perm,
        }
    }

    /// The lexicographically smallest reduced word (by repeatedly stripping
    /// the smallest right descent).
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut w = self.clone();
        let mut letters = Vec::new();
        'outer: loop {
            for label in 1..=self.system.rank {
                if w.is_right_descent(label) {
                    letters.push(label);
                    w = w.mul_simple_right(label);
                    continue 'outer;
                }
            }
            break;
        }
        debug_assert!(w.is_identity());
        letters.reverse();
        letters
    }

    /// Bruhat order test `self ≤ w`, where `w` is given by any reduced word.
    ///
    /// Scans the word right to left, stripping descents greedily; the result
    /// does not depend on which reduced word is supplied.
    pub fn bruhat_leq_word(&self, word: &[usize]) -> bool {
        let mut u = self.clone();
        for &a in word.iter().rev() {
            if u.is_right_descent(a) {
                u = u.mul_simple_right(a);
            }
        }
        u.is_identity()
    }

    /// Bruhat order test `self ≤ other`.
    pub fn bruhat_leq(&self, other: &WeylElement) -> bool {
        if self.length() > other.length() {
            return false;
        }
        self.bruhat_leq_word(&other.reduced_word())
    }

    /// One-line notation for type `A` elements, as a permutation of
    /// `1..=rank+1`.
    ///
    /// # Panics
    /// Panics if the root system is not of type `A`.
    pub fn one_line(&self) -> Vec<usize> {
        assert_eq!(self.system.family, Family::A, "one_line requires type A");
        let n = self.system.rank + 1;
        let mut line: Vec<usize> = (1..=n).collect();
        for a in self.reduced_word() {
            line.swap(a - 1, a);
        }
        line
    }
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.key() == other.key()
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.key().hash(state);
    }
}

impl PartialOrd for WeylElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for WeylElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.key().cmp(other.key())
    }
}

impl fmt::Debug for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w[")?;
        for (k, a) in self.reduced_word().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// Recover the type `A` element with the given one-line notation.
pub fn element_from_one_line(system: &Arc<RootSystem>, line: &[usize]) -> Result<WeylElement> {
    if system.family() != Family::A || line.len() != system.rank() + 1 {
        return Err(Error::InvalidInput(format!(
            "one-line notation of length {} does not fit {:?}",
            line.len(),
            system
        )));
    }
    let mut seen = vec![false; line.len()];
    for &v in line {
        if v < 1 || v > line.len() || seen[v - 1] {
            return Err(Error::InvalidInput(format!(
                "not a permutation of 1..={}: {line:?}",
                line.len()
            )));
        }
        seen[v - 1] = true;
    }
    // Bubble-sort the line back to the identity, recording the swaps; the
    // reversed swap sequence is a reduced word.
    let mut work = line.to_vec();
    let mut letters = Vec::new();
    loop {
        let mut moved = false;
        for i in 0..work.len() - 1 {
            if work[i] > work[i + 1] {
                work.swap(i, i + 1);
                letters.push(i + 1);
                moved = true;
            }
        }
        if !moved {
            break;
        }
    }
    letters.reverse();
    Ok(system.from_word(&letters))
}

/// A signed permutation `π` of `{±1, ..., ±n}` with `π(-i) = -π(i)`,
/// stored by its window `[π(1), ..., π(n)]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    window: Vec<i64>,
}

impl SignedPermutation {
    pub fn new(window: Vec<i64>) -> Result<SignedPermutation> {
        let n = window.len() as i64;
        let mut seen = vec![false; window.len()];
        for &v in &window {
            if v == 0 || v.abs() > n || seen[(v.abs() - 1) as usize] {
                return Err(Error::InvalidInput(format!(
                    "not a signed permutation window: {window:?}"
                )));
            }
            seen[(v.abs() - 1) as usize] = true;
        }
        Ok(SignedPermutation { window })
    }

    pub fn identity(n: usize) -> SignedPermutation {
        SignedPermutation {
            window: (1..=n as i64).collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    /// `π(i)` for `i ∈ {±1, ..., ±n}`.
    pub fn apply(&self, i: i64) -> i64 {
        assert!(i != 0 && i.unsigned_abs() as usize <= self.window.len());
        if i > 0 {
            self.window[(i - 1) as usize]
        } else {
            -self.window[(-i - 1) as usize]
        }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut window = vec![0i64; self.window.len()];
        for (p, &v) in self.window.iter().enumerate() {
            if v > 0 {
                window[(v - 1) as usize] = (p + 1) as i64;
            } else {
                window[(-v - 1) as usize] = -((p + 1) as i64);
            }
        }
        SignedPermutation { window }
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.n(), other.n());
        SignedPermutation {
            window: (1..=self.n() as i64).map(|i| self.apply(other.apply(i))).collect(),
        }
    }

    /// Number of negative window entries; even-signed permutations realize
    /// type `D`.
    pub fn negative_count(&self) -> usize {
        self.window.iter().filter(|&&v| v < 0).count()
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.window.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// The hyperoctahedral realization of a type `B` Weyl group element as a
/// signed permutation.
///
/// The generator `s_i` for `i < n` transposes the symbols `n-i` and `n+1-i`
/// (together with their negatives), and `s_n` negates the symbol `1`.  With
/// this convention the box labellings of the type `B` posets match the
/// letters of the reduced words read off from order ideals.
pub fn iota_window(w: &WeylElement) -> SignedPermutation {
    assert_eq!(w.system().family(), Family::B, "iota_window requires type B");
    let n = w.system().rank();
    signed_window_from_word(n, &w.reduced_word(), false)
}

/// The even-signed realization of a type `D` Weyl group element.
///
/// Generators `s_i` for `i < n` act as for type `B`; `s_n` maps the symbol
/// `1` to `-2` (and `2` to `-1`).  Every image has an even number of sign
/// changes.  This realization does *not* transport Bruhat order.
pub fn delta_window(w: &WeylElement) -> SignedPermutation {
    assert_eq!(w.system().family(), Family::D, "delta_window requires type D");
    let n = w.system().rank();
    signed_window_from_word(n, &w.reduced_word(), true)
}

/// Apply the letters of a word right-to-left as value maps to the identity
/// window.  `type_d` selects the action of the special letter `n`.
pub fn signed_window_from_word(n: usize, word: &[usize], type_d: bool) -> SignedPermutation {
    let mut window: Vec<i64> = (1..=n as i64).collect();
    for &a in word.iter().rev() {
        let map_value = |v: i64| -> i64 {
            let (abs, sign) = (v.abs(), v.signum());
            let image = if a < n {
                // transposition of symbols (n - a, n + 1 - a)
                let x = (n - a) as i64;
                if abs == x {
                    x + 1
                } else if abs == x + 1 {
                    x
                } else {
                    abs
                }
            } else if type_d {
                match abs {
                    1 => -2,
                    2 => -1,
                    other => other,
                }
            } else {
                // type B: negate the symbol 1
                match abs {
                    1 => -1,
                    other => other,
                }
            };
            sign * image
        };
        for v in window.iter_mut() {
            *v = map_value(*v);
        }
    }
    SignedPermutation { window }
}

/// Embed a signed permutation on `{±1, ..., ±n}` into `S_{2n}` (type
/// `A_{2n-1}`) by ordering the symbols `-n < ... < -1 < 1 < ... < n`.
///
/// For windows of type `B` elements this is a Bruhat embedding.
pub fn signed_to_a_element(
    sp: &SignedPermutation,
    a_system: &Arc<RootSystem>,
) -> Result<WeylElement> {
    let n = sp.n();
    if a_system.family() != Family::A || a_system.rank() != 2 * n - 1 {
        return Err(Error::InvalidInput(format!(
            "embedding a signed permutation on ±1..±{n} needs type A rank {}",
            2 * n - 1
        )));
    }
    let pos = |v: i64| -> usize {
        if v > 0 {
            (n as i64 + v) as usize
        } else {
            (n as i64 + 1 + v) as usize
        }
    };
    let val = |p: usize| -> i64 {
        if p <= n {
            p as i64 - n as i64 - 1
        } else {
            p as i64 - n as i64
        }
    };
    let line: Vec<usize> = (1..=2 * n).map(|p| pos(sp.apply(val(p)))).collect();
    element_from_one_line(a_system, &line)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn sys(f: Family, r: usize) -> Arc<RootSystem> {
        RootSystem::new(f, r).unwrap()
    }

    #[test]
    fn positive_root_counts() {
        for r in 1..=7 {
            assert_eq!(sys(Family::A, r).num_positive(), r * (r + 1) / 2);
        }
        for r in 1..=6 {
            assert_eq!(sys(Family::B, r).num_positive(), r * r);
        }
        for r in 2..=7 {
            assert_eq!(sys(Family::D, r).num_positive(), r * (r - 1));
        }
        assert_eq!(sys(Family::E6, 6).num_positive(), 36);
        assert_eq!(sys(Family::E7, 7).num_positive(), 63);
    }

    /// Coxeter matrix entry from the geometry of two simple roots.
    fn coxeter_order(s: &RootSystem, i: usize, k: usize) -> usize {
        let a = s.root(i - 1);
        let b = s.root(k - 1);
        let c = pairing(a, b) * pairing(b, a);
        match c {
            0 => 2,
            1 => 3,
            2 => 4,
            3 => 6,
            _ => unreachable!("bad Coxeter entry {c}"),
        }
    }

    #[test]
    fn braid_relations() {
        for (f, r) in [
            (Family::A, 5),
            (Family::B, 5),
            (Family::D, 5),
            (Family::E6, 6),
            (Family::E7, 7),
        ] {
            let s = sys(f, r);
            for i in 1..=r {
                let si = s.simple(i);
                assert!(si.multiply(&si).is_identity(), "s_{i}^2 != e in {s:?}");
                for k in (i + 1)..=r {
                    let m = coxeter_order(&s, i, k);
                    let mut w = s.identity();
                    for _ in 0..m {
                        w = w.multiply(&s.simple(i)).multiply(&s.simple(k));
                    }
                    assert!(w.is_identity(), "(s_{i} s_{k})^{m} != e in {s:?}");
                }
            }
        }
    }

    #[test]
    fn a3_lengths_match_inversions() {
        let s = sys(Family::A, 3);
        let all = s.generate_subgroup(&[1, 2, 3]);
        assert_eq!(all.len(), 24);
        for w in &all {
            let line = w.one_line();
            let inv = (0..line.len())
                .flat_map(|i| (i + 1..line.len()).map(move |k| (i, k)))
                .filter(|&(i, k)| line[i] > line[k])
                .count();
            assert_eq!(w.length(), inv);
            // one-line round trip
            let back = element_from_one_line(&s, &line).unwrap();
            assert_eq!(&back, w);
        }
    }

    /// All reflections of a (small) Weyl group: conjugates of the simples.
    fn reflections(all: &[WeylElement], rank: usize, s: &Arc<RootSystem>) -> Vec<WeylElement> {
        let mut set = HashSet::new();
        let mut out = Vec::new();
        for u in all {
            for i in 1..=rank {
                let t = u.multiply(&s.simple(i)).multiply(&u.inverse());
                if set.insert(t.clone()) {
                    out.push(t);
                }
            }
        }
        out
    }

    /// Brute-force Bruhat order via covers `x ⋖ xt` with `t` a reflection.
    fn bruhat_closure(all: &[WeylElement], refl: &[WeylElement]) -> Vec<Vec<bool>> {
        let pos: HashMap<&WeylElement, usize> =
            all.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let n = all.len();
        let mut leq = vec![vec![false; n]; n];
        for (i, leq_i) in leq.iter_mut().enumerate() {
            leq_i[i] = true;
        }
        // longest-first dynamic closure: x ≤ y iff x = y or x ≤ some z ⋖ y
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| all[i].length());
        for &yi in &order {
            let y = &all[yi];
            for t in refl {
                let z = y.multiply(t);
                if z.length() + 1 == y.length() {
                    let zi = pos[&z];
                    for row in leq.iter_mut().take(n) {
                        if row[zi] {
                            row[yi] = true;
                        }
                    }
                }
            }
        }
        leq
    }

    #[test]
    fn bruhat_matches_cover_closure() {
        for (f, r) in [(Family::A, 3), (Family::B, 2), (Family::B, 3)] {
            let s = sys(f, r);
            let labels: Vec<usize> = (1..=r).collect();
            let all = s.generate_subgroup(&labels);
            let refl = reflections(&all, r, &s);
            let leq = bruhat_closure(&all, &refl);
            for (xi, x) in all.iter().enumerate() {
                for (yi, y) in all.iter().enumerate() {
                    assert_eq!(
                        x.bruhat_leq(y),
                        leq[xi][yi],
                        "bruhat mismatch {x:?} vs {y:?} in {s:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn bruhat_is_word_independent() {
        // The greedy subword test must not depend on the reduced word chosen.
        let s = sys(Family::B, 4);
        let all = s.generate_subgroup(&[1, 2, 3, 4]);
        // strip largest descents instead of smallest to get alternative words
        let alt_word = |w: &WeylElement| -> Vec<usize> {
            let mut w = w.clone();
            let mut letters = Vec::new();
            'outer: loop {
                for label in (1..=4).rev() {
                    if w.is_right_descent(label) {
                        letters.push(label);
                        w = w.mul_simple_right(label);
                        continue 'outer;
                    }
                }
                break;
            }
            letters.reverse();
            letters
        };
        for y in all.iter().filter(|y| y.length() >= 5) {
            let w1 = y.reduced_word();
            let w2 = alt_word(y);
            assert_eq!(s.from_word(&w2), *y);
            for x in all.iter().step_by(7) {
                assert_eq!(x.bruhat_leq_word(&w1), x.bruhat_leq_word(&w2));
            }
        }
    }

    #[test]
    fn signed_window_examples() {
        let b3 = sys(Family::B, 3);
        // s_3 s_2 maps the identity window to (2, -1, 3)
        let w = b3.from_word(&[3, 2]);
        assert_eq!(iota_window(&w).window(), &[2, -1, 3]);
        // s_1 transposes the symbols 2 and 3
        assert_eq!(iota_window(&b3.simple(1)).window(), &[1, 3, 2]);
        // s_3 negates the symbol 1
        assert_eq!(iota_window(&b3.simple(3)).window(), &[-1, 2, 3]);
    }

    #[test]
    fn iota_is_faithful_and_preserves_bruhat() {
        let b3 = sys(Family::B, 3);
        let a5 = sys(Family::A, 5);
        let all = b3.generate_subgroup(&[1, 2, 3]);
        assert_eq!(all.len(), 48);
        let embedded: Vec<WeylElement> = all
            .iter()
            .map(|w| signed_to_a_element(&iota_window(w), &a5).unwrap())
            .collect();
        let distinct: HashSet<_> = embedded.iter().collect();
        assert_eq!(distinct.len(), 48, "iota not injective");
        for (x, xe) in all.iter().zip(&embedded) {
            for (y, ye) in all.iter().zip(&embedded) {
                assert_eq!(
                    x.bruhat_leq(y),
                    xe.bruhat_leq(ye),
                    "iota does not preserve Bruhat order at {x:?}, {y:?}"
                );
            }
        }
    }

    #[test]
    fn delta_is_a_faithful_homomorphism_onto_even_windows() {
        let d4 = sys(Family::D, 4);
        let all = d4.generate_subgroup(&[1, 2, 3, 4]);
        assert_eq!(all.len(), 192);
        let windows: Vec<SignedPermutation> = all.iter().map(delta_window).collect();
        let distinct: HashSet<_> = windows.iter().collect();
        assert_eq!(distinct.len(), 192, "delta not injective");
        for sp in &windows {
            assert_eq!(sp.negative_count() % 2, 0, "odd-signed image {sp}");
        }
        // homomorphism spot check on all pairs of generators and a few products
        for (i, x) in all.iter().enumerate().step_by(11) {
            for (k, y) in all.iter().enumerate().step_by(13) {
                let xy = x.multiply(y);
                assert_eq!(
                    delta_window(&xy),
                    windows[i].compose(&windows[k]),
                    "delta not multiplicative"
                );
            }
        }
    }

    #[test]
    fn e6_group_order() {
        let e6 = sys(Family::E6, 6);
        let all = e6.generate_subgroup(&[1, 2, 3, 4, 5, 6]);
        assert_eq!(all.len(), 51840);
    }

    #[test]
    fn signed_permutation_basics() {
        let sp = SignedPermutation::new(vec![2, -1, 3]).unwrap();
        assert_eq!(sp.apply(1), 2);
        assert_eq!(sp.apply(-1), -2);
        assert_eq!(sp.apply(2), -1);
        assert_eq!(sp.inverse().apply(2), 1);
        assert_eq!(sp.inverse().apply(-1), 2);
        let id = SignedPermutation::identity(3);
        assert_eq!(sp.compose(&id), sp);
        assert_eq!(sp.compose(&sp.inverse()), id);
        assert!(SignedPermutation::new(vec![1, 1]).is_err());
        assert!(SignedPermutation::new(vec![3, 1]).is_err());
    }
}
